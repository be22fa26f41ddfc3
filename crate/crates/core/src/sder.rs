//! Tangential and special derivations of the free Lie ring on `X, Y`.
//!
//! A tangential derivation of degree `d` is stored as a pair `(u, v)` of
//! degree-`d` Lie elements acting by `D(X) = [u, X]`, `D(Y) = [v, Y]`; it maps
//! the generators to degree `d + 1`. It is special when `D(X + Y) = 0`. The
//! pair is unique except in degree 1, where `u` and `v` are normalized to have
//! no `X` resp. `Y` coordinate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::freelie::{self, bracket, lyndon_words, standard_factorization, LieElement, LieError};
use crate::zlinalg::{self, IntMatrix, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SderError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("derivation components must be degree-{expected} elements over two letters")]
    BadPair { expected: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("coordinate vector has length {found}, expected {expected}")]
    CoordinateLength { expected: usize, found: usize },
}

const X: u8 = 0;
const Y: u8 = 1;

fn gen(g: u8) -> LieElement {
    LieElement::generator(2, g)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangentialDerivation {
    degree: usize,
    u: LieElement,
    v: LieElement,
}

impl TangentialDerivation {
    pub fn new(u: LieElement, v: LieElement) -> Result<Self, SderError> {
        let degree = u.degree();
        if degree == 0 {
            return Err(SderError::ZeroDegree);
        }
        if u.alphabet_size() != 2 || v.alphabet_size() != 2 || v.degree() != degree {
            return Err(SderError::BadPair { expected: degree });
        }
        let (u, v) = if degree == 1 {
            (
                LieElement::from_coords(2, 1, [(vec![Y], u.coeff(&[Y]))]),
                LieElement::from_coords(2, 1, [(vec![X], v.coeff(&[X]))]),
            )
        } else {
            (u, v)
        };
        Ok(TangentialDerivation { degree, u, v })
    }

    pub fn zero(degree: usize) -> Self {
        TangentialDerivation { degree, u: LieElement::zero(2, degree), v: LieElement::zero(2, degree) }
    }

    /// `ad_{X+Y}`, the degree-1 special derivation.
    pub fn inner_xy() -> Self {
        Self::new(gen(Y), gen(X)).expect("degree-1 pair")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn u(&self) -> &LieElement {
        &self.u
    }

    pub fn v(&self) -> &LieElement {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `D(X) = [u, X]`.
    pub fn on_x(&self) -> Result<LieElement, LieError> {
        bracket(&self.u, &gen(X))
    }

    /// `D(Y) = [v, Y]`.
    pub fn on_y(&self) -> Result<LieElement, LieError> {
        bracket(&self.v, &gen(Y))
    }

    pub fn is_special(&self) -> Result<bool, LieError> {
        Ok(self.on_x()?.try_add(&self.on_y()?)?.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TangentialDerivation { degree: self.degree, u: self.u.scale(k), v: self.v.scale(k) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SderError> {
        Ok(TangentialDerivation { degree: self.degree, u: self.u.try_add(&other.u)?, v: self.v.try_add(&other.v)? })
    }

    /// Length of the normalized pair coordinate vector in this degree.
    pub fn coordinate_dim(degree: usize) -> usize {
        if degree == 1 {
            2
        } else {
            2 * lyndon_words(2, degree).len()
        }
    }

    /// Normalized pair coordinates: `(u_Y, v_X)` in degree 1, otherwise the
    /// Lyndon coordinates of `u` followed by those of `v`.
    pub fn coordinates(&self) -> Vec<BigInt> {
        if self.degree == 1 {
            vec![self.u.coeff(&[Y]), self.v.coeff(&[X])]
        } else {
            let mut c = self.u.to_vector();
            c.extend(self.v.to_vector());
            c
        }
    }

    pub fn from_coordinates(degree: usize, coords: &[BigInt]) -> Result<Self, SderError> {
        if degree == 0 {
            return Err(SderError::ZeroDegree);
        }
        let expected = Self::coordinate_dim(degree);
        if coords.len() != expected {
            return Err(SderError::CoordinateLength { expected, found: coords.len() });
        }
        if degree == 1 {
            return Self::new(
                LieElement::from_coords(2, 1, [(vec![Y], coords[0].clone())]),
                LieElement::from_coords(2, 1, [(vec![X], coords[1].clone())]),
            );
        }
        let half = expected / 2;
        Self::new(
            LieElement::from_vector(2, degree, &coords[..half]),
            LieElement::from_vector(2, degree, &coords[half..]),
        )
    }
}

impl fmt::Debug for TangentialDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TangentialDerivation(deg {}: u = {}, v = {})", self.degree, self.u, self.v)
    }
}

/// Leibniz extension of `D` along the Lyndon bracketings of `a`.
pub fn derivation_apply(d: &TangentialDerivation, a: &LieElement) -> Result<LieElement, SderError> {
    if a.alphabet_size() != 2 {
        return Err(SderError::BadPair { expected: a.degree() });
    }
    let target = a.degree() + d.degree;
    if target > freelie::degree_cap() {
        return Err(LieError::DegreeOverflow { degree: target, cap: freelie::degree_cap() }.into());
    }
    let mut memo = HashMap::new();
    let mut acc = LieElement::zero(2, target);
    for (w, c) in a.coords() {
        acc = acc.try_add(&apply_on_word(d, w, &mut memo)?.scale(c))?;
    }
    Ok(acc)
}

fn apply_on_word(
    d: &TangentialDerivation,
    w: &[u8],
    memo: &mut HashMap<Vec<u8>, LieElement>,
) -> Result<LieElement, LieError> {
    if let Some(r) = memo.get(w) {
        return Ok(r.clone());
    }
    let r = match standard_factorization(w) {
        None if w[0] == X => d.on_x()?,
        None => d.on_y()?,
        Some((l, r)) => {
            let pl = LieElement::basis(2, l.to_vec());
            let pr = LieElement::basis(2, r.to_vec());
            let dl = apply_on_word(d, l, memo)?;
            let dr = apply_on_word(d, r, memo)?;
            bracket(&dl, &pr)?.try_add(&bracket(&pl, &dr)?)?
        }
    };
    memo.insert(w.to_vec(), r.clone());
    Ok(r)
}

/// Commutator `D1 D2 - D2 D1` as a tangential pair:
/// `u = D1(u2) - D2(u1) - [u1, u2]`, likewise for `v`.
pub fn tder_bracket(
    d1: &TangentialDerivation,
    d2: &TangentialDerivation,
) -> Result<TangentialDerivation, SderError> {
    let degree = d1.degree + d2.degree;
    if degree + 1 > freelie::degree_cap() {
        return Err(LieError::DegreeOverflow { degree: degree + 1, cap: freelie::degree_cap() }.into());
    }
    let component = |a1: &LieElement, a2: &LieElement| -> Result<LieElement, SderError> {
        Ok(derivation_apply(d1, a2)?.try_sub(&derivation_apply(d2, a1)?)?.try_sub(&bracket(a1, a2)?)?)
    };
    TangentialDerivation::new(component(&d1.u, &d2.u)?, component(&d1.v, &d2.v)?)
}

/// Matrix of `(u, v) -> [u, X] + [v, Y]` on normalized pair coordinates.
pub fn speciality_matrix(degree: usize) -> Result<IntMatrix, SderError> {
    if degree == 0 {
        return Err(SderError::ZeroDegree);
    }
    let target = lyndon_words(2, degree + 1).len();
    if degree + 1 > freelie::degree_cap() {
        return Err(LieError::DegreeOverflow { degree: degree + 1, cap: freelie::degree_cap() }.into());
    }
    let dim = TangentialDerivation::coordinate_dim(degree);
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::from(1);
        let d = TangentialDerivation::from_coordinates(degree, &e)?;
        let image = d.on_x()?.try_add(&d.on_y()?)?;
        rows.push(image.to_vector());
    }
    Ok(IntMatrix::from_rows(target, rows).expect("rows have basis length"))
}

/// Lattice of special derivations of the given degree, in pair coordinates.
pub fn sder_lattice(degree: usize) -> Result<Lattice, SderError> {
    Ok(zlinalg::kernel_basis(&speciality_matrix(degree)?))
}

/// Basis of the special derivations of degree `d`.
pub fn sder_basis(degree: usize) -> Result<Vec<TangentialDerivation>, SderError> {
    lattice_derivations(degree, &sder_lattice(degree)?)
}

fn lattice_derivations(degree: usize, l: &Lattice) -> Result<Vec<TangentialDerivation>, SderError> {
    l.basis_rows().iter().map(|r| TangentialDerivation::from_coordinates(degree, r)).collect()
}

/// One lattice per degree `1..=max_degree`, in pair coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLattice {
    max_degree: usize,
    per_degree: Vec<Lattice>,
}

impl GradedLattice {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, d: usize) -> &Lattice {
        &self.per_degree[d - 1]
    }

    /// Ranks for degrees `1..=max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(Lattice::rank).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.per_degree.iter().all(Lattice::is_zero)
    }

    /// Lowest degree with a nonzero component.
    pub fn min_degree(&self) -> Option<usize> {
        self.per_degree.iter().position(|l| !l.is_zero()).map(|i| i + 1)
    }

    pub fn derivations(&self, d: usize) -> Result<Vec<TangentialDerivation>, SderError> {
        lattice_derivations(d, self.degree(d))
    }
}

/// Successive derived terms of the graded special derivations, truncated at
/// `max_degree`.
#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub terms: Vec<GradedLattice>,
    /// For each step `t -> t+1`: target degree and number of generator pairs
    /// whose bracket lands above the truncation and was discarded.
    pub dropped: Vec<BTreeMap<usize, usize>>,
}

/// Full graded lattice of special derivations in degrees `1..=max_degree`.
pub fn sder_graded(max_degree: usize, parallel: bool) -> Result<GradedLattice, SderError> {
    let degrees: Vec<usize> = (1..=max_degree).collect();
    let per_degree: Result<Vec<Lattice>, SderError> = if parallel {
        degrees.par_iter().map(|&d| sder_lattice(d)).collect()
    } else {
        degrees.iter().map(|&d| sder_lattice(d)).collect()
    };
    Ok(GradedLattice { max_degree, per_degree: per_degree? })
}

fn bracket_span(prev: &GradedLattice, bases: &[Vec<TangentialDerivation>], d: usize) -> Result<Lattice, SderError> {
    let dim = TangentialDerivation::coordinate_dim(d);
    let mut gens = Vec::new();
    for i in 1..=d / 2 {
        let j = d - i;
        let (bi, bj) = (&bases[i - 1], &bases[j - 1]);
        for (p, a) in bi.iter().enumerate() {
            let start = if i == j { p + 1 } else { 0 };
            for b in &bj[start..] {
                let c = tder_bracket(a, b)?;
                if !c.is_zero() {
                    gens.push(c.coordinates());
                }
            }
        }
    }
    debug_assert_eq!(prev.max_degree, bases.len());
    Ok(zlinalg::span(dim, gens).expect("coordinates have pair dimension"))
}

fn derived_step(prev: &GradedLattice, parallel: bool) -> Result<(GradedLattice, BTreeMap<usize, usize>), SderError> {
    let cap = prev.max_degree;
    let bases: Vec<Vec<TangentialDerivation>> =
        (1..=cap).map(|d| prev.derivations(d)).collect::<Result<_, _>>()?;
    let degrees: Vec<usize> = (1..=cap).collect();
    let per_degree: Result<Vec<Lattice>, SderError> = if parallel {
        degrees.par_iter().map(|&d| bracket_span(prev, &bases, d)).collect()
    } else {
        degrees.iter().map(|&d| bracket_span(prev, &bases, d)).collect()
    };
    let mut dropped = BTreeMap::new();
    for i in 1..=cap {
        for j in i..=cap {
            if i + j <= cap {
                continue;
            }
            let (ni, nj) = (bases[i - 1].len(), bases[j - 1].len());
            let pairs = if i == j { ni * ni.saturating_sub(1) / 2 } else { ni * nj };
            if pairs > 0 {
                *dropped.entry(i + j).or_insert(0) += pairs;
            }
        }
    }
    Ok((GradedLattice { max_degree: cap, per_degree: per_degree? }, dropped))
}

/// Terms `0..=depth` of the derived series of the graded special derivations
/// truncated at `max_degree`.
pub fn derived_series(max_degree: usize, depth: usize, parallel: bool) -> Result<DerivedSeries, SderError> {
    let mut terms = vec![sder_graded(max_degree, parallel)?];
    let mut dropped = Vec::new();
    for _ in 0..depth {
        let (next, lost) = derived_step(terms.last().expect("nonempty"), parallel)?;
        terms.push(next);
        dropped.push(lost);
    }
    Ok(DerivedSeries { terms, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::parse_lie_expression;

    fn lie(s: &str) -> LieElement {
        parse_lie_expression(s, 2).unwrap()
    }

    #[test]
    fn sder_basis_low_degrees() {
        let b1 = sder_basis(1).unwrap();
        assert_eq!(b1, vec![TangentialDerivation::inner_xy()]);
        assert_eq!(b1[0].u(), &lie("Y"));
        assert_eq!(b1[0].v(), &lie("X"));

        assert!(sder_basis(2).unwrap().is_empty());

        let b3 = sder_basis(3).unwrap();
        assert_eq!(b3.len(), 1);
        let d = &b3[0];
        let expected = TangentialDerivation::new(lie("[[X,Y],Y]"), lie("[X,[X,Y]]")).unwrap();
        assert!(d == &expected || d == &expected.scale(&BigInt::from(-1)), "{d:?}");
    }

    #[test]
    fn normalization_kills_pair_kernel() {
        let a = TangentialDerivation::new(lie("X + Y"), lie("X + Y")).unwrap();
        assert_eq!(a, TangentialDerivation::inner_xy());
        assert!(TangentialDerivation::new(lie("X"), lie("Y")).unwrap().is_zero());
    }

    #[test]
    fn apply_examples() {
        let d = TangentialDerivation::inner_xy();
        assert!(derivation_apply(&d, &LieElement::zero(2, 3)).unwrap().is_zero());
        assert_eq!(derivation_apply(&d, &lie("X")).unwrap(), lie("[Y,X]"));
        assert_eq!(derivation_apply(&d, &lie("[X,Y]")).unwrap(), lie("[[Y,X],Y] + [X,[X,Y]]"));
    }

    #[test]
    fn bracket_examples() {
        let d1 = TangentialDerivation::inner_xy();
        assert!(tder_bracket(&d1, &d1).unwrap().is_zero());
        let d3 = sder_basis(3).unwrap().remove(0);
        assert!(tder_bracket(&d3, &d3).unwrap().is_zero());
        let c = tder_bracket(&d1, &d3).unwrap();
        assert_eq!(c.degree(), 4);
        assert!(c.is_special().unwrap());
        assert!(zlinalg::lattice_member(&c.coordinates(), &sder_lattice(4).unwrap()).unwrap());
    }

    #[test]
    fn inner_xy_is_central_in_sder() {
        let d1 = TangentialDerivation::inner_xy();
        for d in 3..=6 {
            for b in sder_basis(d).unwrap() {
                assert!(tder_bracket(&d1, &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let d = TangentialDerivation::new(lie("[X,[X,Y]]"), lie("2*[[X,Y],Y]")).unwrap();
        assert_eq!(TangentialDerivation::from_coordinates(3, &d.coordinates()).unwrap(), d);
        assert!(matches!(
            TangentialDerivation::from_coordinates(3, &[]),
            Err(SderError::CoordinateLength { expected: 4, found: 0 })
        ));
    }

    #[test]
    fn cap_overflow_is_reported() {
        assert!(matches!(sder_basis(12), Err(SderError::Lie(LieError::DegreeOverflow { degree: 13, .. }))));
    }

    #[test]
    fn derived_series_depth_zero_matches_basis() {
        let s = derived_series(5, 0, false).unwrap();
        let dims: Vec<usize> = (1..=5).map(|d| sder_basis(d).unwrap().len()).collect();
        assert_eq!(s.terms[0].dims(), dims);
    }
}
