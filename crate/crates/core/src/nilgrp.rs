//! The tower `Aut0(F/F_{n+1})` of automorphisms of the free nilpotent
//! quotients that conjugate `x` and `y` and fix `xy`.
//!
//! An element at level `n` is stored through the Magnus expansions (cap `n`)
//! of the images of `x` and `y`; by Magnus's theorem these determine it. The
//! group law is `(a ∘ b)(w) = a(b(w))`, computed by substituting the images of
//! `a` into the series of `b`.
//!
//! Optionally an element carries conjugator witnesses `s_x, s_y` with
//! `image_x = s_x (1+X) s_x^-1`, `image_y = s_y (1+Y) s_y^-1`. The witnesses
//! hold the one piece of information the level-1 images cannot: the
//! abelianized conjugator, which is the linking number for string links.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freelie::{self, lyndon_words, standard_factorization, LieElement, LieError};
use crate::sder::{SderError, TangentialDerivation};
use crate::series::{self, magnus, GroupWord, SeriesError, TruncatedSeries, Weight};
use crate::zlinalg::{self, IntMatrix};

/// Longest basic commutator word `sder_to_kernel` will synthesize.
pub const REALIZATION_LENGTH_BOUND: usize = 64;

// Composed witness words longer than this are dropped; the series witness stays.
const WITNESS_WORD_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("images do not fix xy at level {level}")]
    XYFixViolation { level: usize },
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("cannot restrict a level-{level} element to level {requested}")]
    RestrictAbove { requested: usize, level: usize },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("automorphism does not restrict to the identity at level {level}")]
    NotInKernel { level: usize },
    #[error("kernel elements live at level 2 or higher")]
    LevelTooLow,
    #[error("basic commutator of length {length} exceeds the bound {bound}")]
    RealizationOverflow { length: usize, bound: usize },
    #[error("image series is not conjugate to its generator through the witness")]
    WitnessMismatch,
    #[error("deviation {0} is not of the form [u, generator]")]
    NotTangential(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Sder(#[from] SderError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("format error: {0}")]
    Format(String),
}

/// Conjugator data: `image_x = a (1+X) a^-1`, `image_y = b (1+Y) b^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugators {
    pub a: TruncatedSeries,
    pub b: TruncatedSeries,
    /// Group words whose Magnus expansions are `a` and `b`, when known.
    pub words: Option<(GroupWord, GroupWord)>,
}

#[derive(Clone)]
pub struct Aut0Element {
    level: usize,
    image_x: TruncatedSeries,
    image_y: TruncatedSeries,
    witness: Option<Conjugators>,
}

/// Equality is equality of the automorphisms, i.e. of the image series.
impl PartialEq for Aut0Element {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.image_x == other.image_x && self.image_y == other.image_y
    }
}

impl Eq for Aut0Element {}

impl fmt::Debug for Aut0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Aut0Element")
            .field("level", &self.level)
            .field("x", &self.image_x)
            .field("y", &self.image_y)
            .field("witness", &self.witness.is_some())
            .finish()
    }
}

fn gen_series(level: usize, g: u8) -> TruncatedSeries {
    TruncatedSeries::generator(2, level, g)
}

fn conjugate(s: &TruncatedSeries, g: u8) -> TruncatedSeries {
    let inv = s.inverse().expect("conjugator is a unit");
    &(s * &gen_series(s.cap(), g)) * &inv
}

fn check_xy(level: usize, image_x: &TruncatedSeries, image_y: &TruncatedSeries) -> Result<(), NilError> {
    if image_x * image_y != &gen_series(level, 0) * &gen_series(level, 1) {
        return Err(NilError::XYFixViolation { level });
    }
    Ok(())
}

impl Aut0Element {
    pub fn identity(level: usize) -> Self {
        let one = TruncatedSeries::one(2, level);
        Aut0Element {
            level,
            image_x: gen_series(level, 0),
            image_y: gen_series(level, 1),
            witness: Some(Conjugators { a: one.clone(), b: one, words: Some((GroupWord::empty(), GroupWord::empty())) }),
        }
    }

    /// Builds `x -> a x a^-1`, `y -> b y b^-1` from unit series.
    pub fn from_conjugator_series(
        a: TruncatedSeries,
        b: TruncatedSeries,
        level: usize,
    ) -> Result<Self, NilError> {
        if level == 0 {
            return Err(NilError::ZeroLevel);
        }
        let a = a.with_cap(level);
        let b = b.with_cap(level);
        for s in [&a, &b] {
            if !s.constant().is_one() {
                return Err(SeriesError::NotUnit(s.constant().clone()).into());
            }
        }
        let image_x = conjugate(&a, 0);
        let image_y = conjugate(&b, 1);
        check_xy(level, &image_x, &image_y)?;
        Ok(Aut0Element { level, image_x, image_y, witness: Some(Conjugators { a, b, words: None }) })
    }

    /// Builds an element from its image series alone. Only the xy condition
    /// is checked; conjugate shape is taken on trust.
    pub fn from_images(image_x: TruncatedSeries, image_y: TruncatedSeries) -> Result<Self, NilError> {
        let level = image_x.cap();
        if level == 0 {
            return Err(NilError::ZeroLevel);
        }
        if image_y.cap() != level {
            return Err(NilError::LevelMismatch(level, image_y.cap()));
        }
        check_xy(level, &image_x, &image_y)?;
        Ok(Aut0Element { level, image_x, image_y, witness: None })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn image_x(&self) -> &TruncatedSeries {
        &self.image_x
    }

    pub fn image_y(&self) -> &TruncatedSeries {
        &self.image_y
    }

    pub fn witness(&self) -> Option<&Conjugators> {
        self.witness.as_ref()
    }

    pub fn without_witness(mut self) -> Self {
        self.witness = None;
        self
    }

    /// Acts trivially on `F/F_{level+1}`.
    pub fn is_identity(&self) -> bool {
        self.image_x == gen_series(self.level, 0) && self.image_y == gen_series(self.level, 1)
    }

    /// Image of an arbitrary series under the induced algebra map.
    pub fn apply_series(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let one = TruncatedSeries::one(2, self.level);
        let s = s.with_cap(self.level);
        s.substitute(&[&self.image_x - &one, &self.image_y - &one])
    }

    /// The integer attached to the abelianized conjugator of `x`: the `Y`
    /// coefficient of the witness, or at level 2 and above the `YX`
    /// coefficient of `image_x`. It equals the `X` coefficient on the `y` side.
    pub fn linking_integer(&self) -> Option<BigInt> {
        if let Some(w) = &self.witness {
            return Some(w.a.coeff(&[1]));
        }
        (self.level >= 2).then(|| self.image_x.coeff(&[1, 0]))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("aut0 level={}\nimage_x\n{}image_y\n{}", self.level, self.image_x, self.image_y);
        if let Some(w) = &self.witness {
            s.push_str(&format!("conjugator_x\n{}conjugator_y\n{}", w.a, w.b));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, NilError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| NilError::Format("empty input".into()))?;
        let level: usize = header
            .strip_prefix("aut0 level=")
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| NilError::Format("expected `aut0 level=<n>`".into()))?;
        let mut sections: HashMap<&str, String> = HashMap::new();
        let mut current: Option<&str> = None;
        for line in lines {
            match line.trim() {
                key @ ("image_x" | "image_y" | "conjugator_x" | "conjugator_y") => current = Some(key),
                _ => {
                    let key = current.ok_or_else(|| NilError::Format("data before a section header".into()))?;
                    let body = sections.entry(key).or_default();
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let series_of = |key: &str| -> Result<Option<TruncatedSeries>, NilError> {
            sections.get(key).map(|t| TruncatedSeries::parse(t)).transpose().map_err(NilError::from)
        };
        let missing = |k: &str| NilError::Format(format!("missing section {k}"));
        let image_x = series_of("image_x")?.ok_or_else(|| missing("image_x"))?;
        let image_y = series_of("image_y")?.ok_or_else(|| missing("image_y"))?;
        if image_x.cap() != level || image_y.cap() != level {
            return Err(NilError::Format("image caps do not match the level".into()));
        }
        let mut el = Aut0Element::from_images(image_x, image_y)?;
        match (series_of("conjugator_x")?, series_of("conjugator_y")?) {
            (Some(a), Some(b)) => {
                if a.cap() != level || b.cap() != level || !a.constant().is_one() || !b.constant().is_one() {
                    return Err(NilError::WitnessMismatch);
                }
                if conjugate(&a, 0) != el.image_x || conjugate(&b, 1) != el.image_y {
                    return Err(NilError::WitnessMismatch);
                }
                el.witness = Some(Conjugators { a, b, words: None });
            }
            (None, None) => {}
            _ => return Err(NilError::Format("conjugator sections come in pairs".into())),
        }
        Ok(el)
    }
}

/// `x -> a x a^-1`, `y -> b y b^-1` at the given level.
pub fn aut_from_conjugators(a: &GroupWord, b: &GroupWord, level: usize) -> Result<Aut0Element, NilError> {
    let mut el = Aut0Element::from_conjugator_series(magnus(a, level), magnus(b, level), level)?;
    if let Some(w) = el.witness.as_mut() {
        w.words = Some((a.clone(), b.clone()));
    }
    Ok(el)
}

/// Inner automorphism `w -> c w c^-1` (lies in Aut0 exactly when `c` commutes with xy,
/// which holds for `c` a power of `xy`).
pub fn inner(c: &GroupWord, level: usize) -> Result<Aut0Element, NilError> {
    aut_from_conjugators(c, c, level)
}

/// Image of a group word.
pub fn aut_apply(alpha: &Aut0Element, w: &GroupWord) -> TruncatedSeries {
    let inv_x = alpha.image_x.inverse().expect("unit");
    let inv_y = alpha.image_y.inverse().expect("unit");
    let mut acc = TruncatedSeries::one(2, alpha.level);
    for &(g, e) in w.letters() {
        let f = match (g, e > 0) {
            (0, true) => &alpha.image_x,
            (0, false) => &inv_x,
            (_, true) => &alpha.image_y,
            (_, false) => &inv_y,
        };
        acc = &acc * f;
    }
    acc
}

fn word_image(alpha_words: &(GroupWord, GroupWord), w: &GroupWord) -> GroupWord {
    let (a, b) = alpha_words;
    w.substitute(&[GroupWord::x().conjugate_by(a), GroupWord::y().conjugate_by(b)])
}

/// `(alpha ∘ beta)(w) = alpha(beta(w))`.
pub fn aut_compose(alpha: &Aut0Element, beta: &Aut0Element) -> Result<Aut0Element, NilError> {
    if alpha.level != beta.level {
        return Err(NilError::LevelMismatch(alpha.level, beta.level));
    }
    let image_x = alpha.apply_series(&beta.image_x);
    let image_y = alpha.apply_series(&beta.image_y);
    let witness = match (&alpha.witness, &beta.witness) {
        (Some(wa), Some(wb)) => {
            let words = match (&wa.words, &wb.words) {
                (Some(aw), Some((ba, bb))) => {
                    let a = word_image(aw, ba).concat(&aw.0);
                    let b = word_image(aw, bb).concat(&aw.1);
                    (a.len() <= WITNESS_WORD_LIMIT && b.len() <= WITNESS_WORD_LIMIT).then_some((a, b))
                }
                _ => None,
            };
            Some(Conjugators {
                a: &alpha.apply_series(&wb.a) * &wa.a,
                b: &alpha.apply_series(&wb.b) * &wa.b,
                words,
            })
        }
        _ => None,
    };
    Ok(Aut0Element { level: alpha.level, image_x, image_y, witness })
}

/// Inverse, solved degree by degree: the inverse substitution `B` satisfies
/// `B(S) = id` where `S` are the letter images of `alpha`; each pass of
/// `B <- B - (B(S) - id)` fixes one more degree.
pub fn aut_invert(alpha: &Aut0Element) -> Aut0Element {
    let n = alpha.level;
    let one = TruncatedSeries::one(2, n);
    let s = [&alpha.image_x - &one, &alpha.image_y - &one];
    let letters = [TruncatedSeries::letter(2, n, 0), TruncatedSeries::letter(2, n, 1)];
    let mut b = letters.clone();
    for _ in 0..n {
        b = [0, 1].map(|g| &b[g] - &(&b[g].substitute(&s) - &letters[g]));
    }
    let image_x = &one + &b[0];
    let image_y = &one + &b[1];
    let mut inv = Aut0Element { level: n, image_x, image_y, witness: None };
    if let Some(w) = &alpha.witness {
        let a = inv.apply_series(&w.a).inverse().expect("unit");
        let bb = inv.apply_series(&w.b).inverse().expect("unit");
        inv.witness = Some(Conjugators { a, b: bb, words: None });
    }
    debug_assert!(aut_compose(alpha, &inv).map(|c| c.is_identity()).unwrap_or(false));
    inv
}

/// Projection to `Aut0(F/F_{m+1})`.
pub fn aut_restrict(alpha: &Aut0Element, m: usize) -> Result<Aut0Element, NilError> {
    if m > alpha.level {
        return Err(NilError::RestrictAbove { requested: m, level: alpha.level });
    }
    if m == 0 {
        return Err(NilError::ZeroLevel);
    }
    let witness = match &alpha.witness {
        Some(w) => Some(Conjugators { a: w.a.with_cap(m), b: w.b.with_cap(m), words: w.words.clone() }),
        None if m == 1 && alpha.level >= 2 => {
            // degree-2 part of image_x is q(YX - XY) for conjugator 1 + pX + qY
            let q = alpha.image_x.coeff(&[1, 0]);
            Some(Conjugators {
                a: &TruncatedSeries::one(2, 1) + &TruncatedSeries::letter(2, 1, 1).scale(&q),
                b: &TruncatedSeries::one(2, 1) + &TruncatedSeries::letter(2, 1, 0).scale(&q),
                words: None,
            })
        }
        None => None,
    };
    Ok(Aut0Element {
        level: m,
        image_x: alpha.image_x.with_cap(m),
        image_y: alpha.image_y.with_cap(m),
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutDegree {
    Finite(usize),
    ExceedsLevel,
}

impl fmt::Display for AutDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutDegree::Finite(d) => write!(f, "{d}"),
            AutDegree::ExceedsLevel => write!(f, "exceeds level"),
        }
    }
}

/// `[alpha, w] = alpha(w) w^-1` as a series.
pub fn deviation(alpha: &Aut0Element, w: &GroupWord) -> TruncatedSeries {
    &aut_apply(alpha, w) * &magnus(&w.inverse(), alpha.level)
}

/// Largest `i` with `[alpha, x]`, `[alpha, y]` of weight at least `i + 1`.
pub fn aut_degree(alpha: &Aut0Element) -> AutDegree {
    let weights = [GroupWord::x(), GroupWord::y()].map(|w| series::series_weight(&deviation(alpha, &w)));
    match weights.into_iter().min().expect("two generators") {
        Weight::Exactly(d) => AutDegree::Finite(d - 1),
        Weight::ExceedsCap => AutDegree::ExceedsLevel,
    }
}

/// Matrix of `u -> [u, g]` on degree-`n` Lie coordinates (normalized at degree 1).
fn ad_matrix(n: usize, g: u8) -> Result<(IntMatrix, Vec<LieElement>), LieError> {
    let generator = LieElement::generator(2, g);
    let sources: Vec<LieElement> = if n == 1 {
        vec![LieElement::generator(2, 1 - g)]
    } else {
        lyndon_words(2, n).words().iter().map(|w| LieElement::basis(2, w.clone())).collect()
    };
    let cols = lyndon_words(2, n + 1).len();
    let rows = sources
        .iter()
        .map(|u| freelie::bracket(u, &generator).map(|b| b.to_vector()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((IntMatrix::from_rows(cols, rows).expect("basis width"), sources))
}

fn solve_ad(target: &LieElement, g: u8) -> Result<LieElement, NilError> {
    let n = target.degree() - 1;
    let (m, sources) = ad_matrix(n, g)?;
    let x = zlinalg::solve_left(&m, &target.to_vector())
        .expect("dimensions agree")
        .ok_or_else(|| NilError::NotTangential(target.to_string()))?;
    let mut u = LieElement::zero(2, n);
    for (c, s) in x.iter().zip(&sources) {
        u = u.try_add(&s.scale(c))?;
    }
    Ok(u)
}

/// Johnson image of an element of the kernel `K_n` of the projection from
/// level `n+1` to level `n`: `D(X)` is the degree-`(n+1)` part of
/// `image_x - (1+X)`, likewise for `Y`.
pub fn johnson_kernel_to_sder(alpha: &Aut0Element) -> Result<TangentialDerivation, NilError> {
    if alpha.level < 2 {
        return Err(NilError::LevelTooLow);
    }
    let n = alpha.level - 1;
    if !aut_restrict(alpha, n)?.is_identity() {
        return Err(NilError::NotInKernel { level: n });
    }
    let dx = freelie::from_tensor(&alpha.image_x, n + 1)?;
    let dy = freelie::from_tensor(&alpha.image_y, n + 1)?;
    Ok(TangentialDerivation::new(solve_ad(&dx, 0)?, solve_ad(&dy, 1)?)?)
}

/// Group commutator word whose Magnus expansion starts with the bracketing of
/// the Lyndon word `w`.
pub fn basic_commutator(w: &[u8]) -> GroupWord {
    match standard_factorization(w) {
        None => GroupWord::generator(w[0]),
        Some((u, v)) => GroupWord::commutator(&basic_commutator(u), &basic_commutator(v)),
    }
}

fn realize(u: &LieElement, bound: usize) -> Result<GroupWord, NilError> {
    let mut word = GroupWord::empty();
    for (w, c) in u.coords() {
        let base = basic_commutator(w);
        if base.len() > bound {
            return Err(NilError::RealizationOverflow { length: base.len(), bound });
        }
        let e = i64::try_from(c).map_err(|_| NilError::RealizationOverflow { length: usize::MAX, bound })?;
        word = word.concat(&base.pow(e));
    }
    Ok(word)
}

/// An element of `K_n` (level `n+1`) whose Johnson image is the special derivation `d`.
pub fn sder_to_kernel(d: &TangentialDerivation) -> Result<Aut0Element, NilError> {
    sder_to_kernel_bounded(d, REALIZATION_LENGTH_BOUND)
}

pub fn sder_to_kernel_bounded(d: &TangentialDerivation, bound: usize) -> Result<Aut0Element, NilError> {
    let a = realize(d.u(), bound)?;
    let b = realize(d.v(), bound)?;
    aut_from_conjugators(&a, &b, d.degree() + 1)
}

/// Lower bound `inner(xy)`: `x -> (xy) x (xy)^-1`, `y -> (xy) y (xy)^-1`.
pub fn inner_xy(level: usize) -> Aut0Element {
    inner(&GroupWord::parse("x y").expect("literal"), level).expect("xy commutes with xy")
}

/// Total of the absolute coefficients of the two images, a cheap size measure.
pub fn image_weight(alpha: &Aut0Element) -> BigInt {
    let mut t = BigInt::zero();
    for s in [&alpha.image_x, &alpha.image_y] {
        for (_, c) in s.terms() {
            t += if c < &BigInt::zero() { -c } else { c.clone() };
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::parse_lie_expression;
    use crate::sder::sder_basis;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn conjugator_examples() {
        let id = aut_from_conjugators(&GroupWord::empty(), &GroupWord::empty(), 4).unwrap();
        assert!(id.is_identity());
        assert_eq!(id, Aut0Element::identity(4));
        for level in 1..=5 {
            assert!(aut_from_conjugators(&w("x y"), &w("x y"), level).is_ok());
        }
        assert_eq!(
            aut_from_conjugators(&w("y"), &GroupWord::empty(), 2),
            Err(NilError::XYFixViolation { level: 2 })
        );
        // x commutes with x, so (x, 1) is the identity
        assert!(aut_from_conjugators(&w("x"), &GroupWord::empty(), 4).unwrap().is_identity());
    }

    #[test]
    fn apply_examples() {
        let id = Aut0Element::identity(4);
        let word = w("x y^-1 x x y");
        assert_eq!(aut_apply(&id, &word), magnus(&word, 4));
        let a = inner_xy(4);
        assert_eq!(aut_apply(&a, &GroupWord::x()), magnus(&w("x y x y^-1 x^-1"), 4));
        assert_eq!(aut_apply(&a, &w("x y")), magnus(&w("x y"), 4));
    }

    #[test]
    fn compose_and_invert() {
        let a = inner_xy(4);
        let b = sder_to_kernel(&sder_basis(3).unwrap()[0]).unwrap();
        let b = Aut0Element::from_images(b.image_x().clone(), b.image_y().clone()).unwrap();
        let id = Aut0Element::identity(4);
        assert_eq!(aut_compose(&a, &id).unwrap(), a);
        assert!(aut_compose(&a, &aut_invert(&a)).unwrap().is_identity());
        assert!(aut_compose(&aut_invert(&b), &b).unwrap().is_identity());
        assert_eq!(aut_invert(&a), inner(&w("(x y)^-1"), 4).unwrap());
        assert_eq!(aut_compose(&a, &Aut0Element::identity(3)), Err(NilError::LevelMismatch(4, 3)));
        assert!(aut_invert(&Aut0Element::identity(3)).is_identity());
    }

    #[test]
    fn compose_tracks_witnesses() {
        let a = inner_xy(3);
        let c = aut_compose(&a, &a).unwrap();
        assert_eq!(c, inner(&w("(x y)^2"), 3).unwrap());
        let wit = c.witness().unwrap();
        let (wa, wb) = wit.words.as_ref().unwrap();
        assert_eq!(magnus(wa, 3), wit.a);
        assert_eq!(magnus(wb, 3), wit.b);
        assert_eq!(c.linking_integer(), Some(BigInt::from(2)));
    }

    #[test]
    fn restrict_examples() {
        let a = inner_xy(4);
        assert_eq!(aut_restrict(&a, 4).unwrap(), a);
        let r1 = aut_restrict(&a, 1).unwrap();
        assert!(r1.is_identity());
        assert_eq!(r1.linking_integer(), Some(BigInt::one()));
        let c = inner(&w("[x,y]"), 4);
        // [x,y] does not commute with xy, so this is not in Aut0
        assert!(c.is_err());
        let k = sder_to_kernel(&sder_basis(3).unwrap()[0]).unwrap();
        assert_eq!(aut_restrict(&k, 1).unwrap().linking_integer(), Some(BigInt::zero()));
        assert!(matches!(aut_restrict(&a, 5), Err(NilError::RestrictAbove { requested: 5, level: 4 })));
    }

    #[test]
    fn restrict_synthesizes_level_one_witness() {
        let a = inner_xy(3).without_witness();
        assert_eq!(a.linking_integer(), Some(BigInt::one()));
        let r = aut_restrict(&a, 1).unwrap();
        assert_eq!(r.linking_integer(), Some(BigInt::one()));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(aut_degree(&Aut0Element::identity(4)), AutDegree::ExceedsLevel);
        assert_eq!(aut_degree(&inner_xy(4)), AutDegree::Finite(1));
        let k3 = sder_to_kernel(&sder_basis(3).unwrap()[0]).unwrap();
        assert_eq!(aut_degree(&k3), AutDegree::Finite(3));
    }

    #[test]
    fn johnson_examples() {
        let id = Aut0Element::identity(3);
        assert!(johnson_kernel_to_sder(&id).unwrap().is_zero());
        let d = johnson_kernel_to_sder(&inner_xy(2)).unwrap();
        assert_eq!(d, TangentialDerivation::inner_xy());
        assert_eq!(d.on_x().unwrap(), parse_lie_expression("[Y,X]", 2).unwrap());
        assert_eq!(johnson_kernel_to_sder(&inner_xy(3)), Err(NilError::NotInKernel { level: 2 }));
        assert_eq!(johnson_kernel_to_sder(&Aut0Element::identity(1)), Err(NilError::LevelTooLow));
    }

    #[test]
    fn sder_to_kernel_examples() {
        assert!(sder_to_kernel(&TangentialDerivation::zero(3)).unwrap().is_identity());
        assert_eq!(sder_to_kernel(&TangentialDerivation::inner_xy()).unwrap(), inner_xy(2));
        for n in 1..=4 {
            for d in sder_basis(n).unwrap() {
                let k = sder_to_kernel(&d).unwrap();
                assert_eq!(k.level(), n + 1);
                assert!(aut_restrict(&k, n).unwrap().is_identity());
                assert_eq!(johnson_kernel_to_sder(&k).unwrap(), d);
            }
        }
        let d5 = &sder_basis(5).unwrap()[0];
        assert!(matches!(sder_to_kernel_bounded(d5, 10), Err(NilError::RealizationOverflow { bound: 10, .. })));
    }

    #[test]
    fn basic_commutator_leading_terms() {
        for n in 1..=5 {
            for word in lyndon_words(2, n).words() {
                let c = basic_commutator(word);
                let m = magnus(&c, n);
                let lead = freelie::from_tensor(&m, n).unwrap();
                assert_eq!(lead, LieElement::basis(2, word.clone()));
                assert_eq!(series::series_weight(&m), Weight::Exactly(n));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let a = inner_xy(3);
        let t = a.to_text();
        let b = Aut0Element::parse(&t).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.witness().unwrap().a, a.witness().unwrap().a);
        let plain = a.clone().without_witness();
        assert_eq!(Aut0Element::parse(&plain.to_text()).unwrap(), plain);
        let broken = t.replace("conjugator_x\nseries alphabet=2 cap=3\n1 1\n1 X\n1 Y\n1 XY\n", "conjugator_x\nseries alphabet=2 cap=3\n1 1\n");
        assert_eq!(Aut0Element::parse(&broken), Err(NilError::WitnessMismatch));
        assert!(Aut0Element::parse("aut0 level=x").is_err());
    }
}
