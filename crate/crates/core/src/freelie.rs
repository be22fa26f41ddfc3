//! The free graded Lie ring over the integers on `k` generators `X < Y < ...`,
//! in coordinates over the Lyndon basis.
//!
//! Each Lyndon word `w` stands for its standard bracketing `P_w`: a letter is
//! itself, and `w = uv` with `v` the longest proper Lyndon suffix gives
//! `P_w = [P_u, P_v]`. The expansion of `P_w` in the tensor algebra is `w` plus
//! lexicographically larger words of the same length, so a homogeneous Lie
//! polynomial is converted back to Lyndon coordinates by walking the Lyndon
//! words in increasing order and subtracting.

mod expr;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{self, TruncatedSeries};

pub use expr::parse_lie_expression;

pub const DEFAULT_DEGREE_CAP: usize = 12;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Largest Lie degree any operation is allowed to produce.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a Lie polynomial: word {0} is left over after reduction")]
    NotLie(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("inhomogeneous expression at position {position}: degree {left} mixed with degree {right}")]
    Inhomogeneous { position: usize, left: usize, right: usize },
    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },
}

fn check_degree(degree: usize) -> Result<(), LieError> {
    let cap = degree_cap();
    if degree > cap {
        return Err(LieError::DegreeOverflow { degree, cap });
    }
    Ok(())
}

/// True when `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    let n = w.len();
    n > 0 && (1..n).all(|i| w < &[&w[i..], &w[..i]].concat()[..])
}

/// Split `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` part of the free Lie ring on `k` generators:
/// `(1/n) * sum_{d | n} mu(d) k^(n/d)`.
pub fn witt_dimension(alphabet_size: usize, degree: usize) -> usize {
    assert!(degree >= 1, "degree must be positive");
    let k = alphabet_size as i128;
    let total: i128 = (1..=degree)
        .filter(|d| degree % d == 0)
        .map(|d| mobius(d) as i128 * k.pow((degree / d) as u32))
        .sum();
    (total / degree as i128) as usize
}

/// Lyndon words of one length, in lexicographic order, together with the
/// tensor expansions of their standard bracketings.
#[derive(Debug)]
pub struct LyndonBasis {
    alphabet_size: usize,
    degree: usize,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    // sparse expansion of P_w over words of length `degree`, keyed by base-k value
    expansions: Vec<Vec<(usize, i64)>>,
}

impl LyndonBasis {
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, word: &[u8]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Tensor expansion of the bracketing of the `i`-th word, as (word value, coefficient).
    pub fn expansion(&self, i: usize) -> &[(usize, i64)] {
        &self.expansions[i]
    }
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<LyndonBasis>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Duval's generator, restricted to one length.
fn generate_lyndon(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&((k - 1) as u8)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

fn word_value(k: usize, w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &l| acc * k + l as usize)
}

/// The Lyndon basis of degree `degree` over `alphabet_size` letters.
/// Bases are built once per key and shared.
pub fn lyndon_words(alphabet_size: usize, degree: usize) -> Arc<LyndonBasis> {
    assert!(alphabet_size >= 1 && degree >= 1, "alphabet and degree must be positive");
    if let Some(b) = cache().read().expect("basis cache poisoned").get(&(alphabet_size, degree)) {
        return Arc::clone(b);
    }
    let k = alphabet_size;
    let words = generate_lyndon(k, degree);
    let expansions = words
        .iter()
        .map(|w| {
            let dense = dense_expansion(k, w);
            dense
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect()
        })
        .collect();
    let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let basis = Arc::new(LyndonBasis { alphabet_size, degree, words, index, expansions });
    let mut guard = cache().write().expect("basis cache poisoned");
    Arc::clone(guard.entry((alphabet_size, degree)).or_insert(basis))
}

fn dense_expansion(k: usize, w: &[u8]) -> Vec<i64> {
    match standard_factorization(w) {
        None => {
            let mut v = vec![0; k];
            v[w[0] as usize] = 1;
            v
        }
        Some((u, v)) => {
            let bu = lyndon_words(k, u.len());
            let bv = lyndon_words(k, v.len());
            let eu = bu.expansion(bu.position(u).expect("factor is Lyndon"));
            let ev = bv.expansion(bv.position(v).expect("factor is Lyndon"));
            let pu = k.pow(u.len() as u32);
            let pv = k.pow(v.len() as u32);
            let mut out = vec![0i64; pu * pv];
            for &(a, ca) in eu {
                for &(b, cb) in ev {
                    out[a * pv + b] += ca * cb;
                    out[b * pu + a] -= ca * cb;
                }
            }
            out
        }
    }
}

/// Homogeneous element of the free Lie ring in Lyndon coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    alphabet_size: usize,
    degree: usize,
    coords: BTreeMap<Vec<u8>, BigInt>,
}

impl LieElement {
    pub fn zero(alphabet_size: usize, degree: usize) -> Self {
        LieElement { alphabet_size, degree, coords: BTreeMap::new() }
    }

    /// The generator with letter index `g`.
    pub fn generator(alphabet_size: usize, g: u8) -> Self {
        Self::basis(alphabet_size, vec![g])
    }

    /// The bracketing of a single Lyndon word.
    pub fn basis(alphabet_size: usize, word: Vec<u8>) -> Self {
        assert!(is_lyndon(&word), "not a Lyndon word");
        let degree = word.len();
        let mut coords = BTreeMap::new();
        coords.insert(word, BigInt::one());
        LieElement { alphabet_size, degree, coords }
    }

    /// Builds an element from Lyndon coordinates, dropping zeros.
    pub fn from_coords<I>(alphabet_size: usize, degree: usize, coords: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, BigInt)>,
    {
        let mut e = Self::zero(alphabet_size, degree);
        for (w, c) in coords {
            assert!(w.len() == degree && is_lyndon(&w), "coordinate is not a degree-{degree} Lyndon word");
            e.add_term(w, c);
        }
        e
    }

    /// Coordinates against the full Lyndon basis of this degree.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let basis = lyndon_words(self.alphabet_size, self.degree);
        basis.words().iter().map(|w| self.coeff(w)).collect()
    }

    pub fn from_vector(alphabet_size: usize, degree: usize, v: &[BigInt]) -> Self {
        let basis = lyndon_words(alphabet_size, degree);
        assert_eq!(v.len(), basis.len(), "vector length does not match the basis");
        Self::from_coords(alphabet_size, degree, basis.words().iter().cloned().zip(v.iter().cloned()))
    }

    fn add_term(&mut self, w: Vec<u8>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(w).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &BTreeMap<Vec<u8>, BigInt> {
        &self.coords
    }

    pub fn coeff(&self, word: &[u8]) -> BigInt {
        self.coords.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check_same_space(&self, other: &Self) -> Result<(), LieError> {
        if self.alphabet_size != other.alphabet_size {
            return Err(LieError::AlphabetMismatch(self.alphabet_size, other.alphabet_size));
        }
        if self.degree != other.degree {
            return Err(LieError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LieError> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coords {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LieError> {
        self.try_add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.alphabet_size, self.degree);
        for (w, c) in &self.coords {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// Dense homogeneous tensor expansion over words of length `degree`.
    fn dense_tensor(&self) -> Vec<BigInt> {
        let basis = lyndon_words(self.alphabet_size, self.degree);
        let mut out = vec![BigInt::zero(); self.alphabet_size.pow(self.degree as u32)];
        for (w, c) in &self.coords {
            let i = basis.position(w).expect("coordinates are Lyndon words");
            for &(j, e) in basis.expansion(i) {
                out[j] += c * e;
            }
        }
        out
    }

    /// Serializes as lines `<coeff> <lyndon-word>`, sorted by word.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.coords {
            s.push_str(&format!("{} {}\n", c, series::format_word(w)));
        }
        s
    }

    /// Reads `to_text` output. The degree must be supplied for the zero element.
    pub fn from_text(text: &str, alphabet_size: usize, degree: usize) -> Result<Self, LieError> {
        let mut e = Self::zero(alphabet_size, degree);
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let err = |m: &str| LieError::Format { line: i + 1, message: m.to_string() };
            let (c, w) = line.trim().split_once(' ').ok_or_else(|| err("expected `<coeff> <word>`"))?;
            let c: BigInt = c.parse().map_err(|_| err("bad coefficient"))?;
            let w = series::parse_word(w.trim(), alphabet_size).ok_or_else(|| err("bad word"))?;
            if w.len() != degree || !is_lyndon(&w) {
                return Err(err("word is not a Lyndon word of the stated degree"));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement(deg {}: {})", self.degree, self)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coords.iter().map(|(w, c)| format!("{}*{}", c, series::format_word(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Reduces a homogeneous tensor (dense over words of length `degree`) to Lyndon coordinates.
fn reduce_dense(alphabet_size: usize, degree: usize, mut t: Vec<BigInt>) -> Result<LieElement, LieError> {
    let basis = lyndon_words(alphabet_size, degree);
    let mut out = LieElement::zero(alphabet_size, degree);
    for (i, w) in basis.words().iter().enumerate() {
        let c = t[word_value(alphabet_size, w)].clone();
        if c.is_zero() {
            continue;
        }
        for &(j, e) in basis.expansion(i) {
            t[j] -= &c * e;
        }
        out.coords.insert(w.clone(), c);
    }
    if let Some(j) = t.iter().position(|c| !c.is_zero()) {
        let mut w = vec![0u8; degree];
        let mut v = j;
        for slot in w.iter_mut().rev() {
            *slot = (v % alphabet_size) as u8;
            v /= alphabet_size;
        }
        return Err(LieError::NotLie(series::format_word(&w)));
    }
    Ok(out)
}

/// Lie bracket `[a, b]` in Lyndon coordinates.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    if a.alphabet_size != b.alphabet_size {
        return Err(LieError::AlphabetMismatch(a.alphabet_size, b.alphabet_size));
    }
    let k = a.alphabet_size;
    let degree = a.degree + b.degree;
    check_degree(degree)?;
    if a.is_zero() || b.is_zero() {
        return Ok(LieElement::zero(k, degree));
    }
    let ta = a.dense_tensor();
    let tb = b.dense_tensor();
    let pa = ta.len();
    let pb = tb.len();
    let mut out = vec![BigInt::zero(); pa * pb];
    for (i, ca) in ta.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, cb) in tb.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let prod = ca * cb;
            out[i * pb + j] += &prod;
            out[j * pa + i] -= prod;
        }
    }
    reduce_dense(k, degree, out)
}

/// Image of `a` in the tensor algebra, as a series truncated at `cap >= deg(a)`.
pub fn to_tensor(a: &LieElement, cap: usize) -> TruncatedSeries {
    debug_assert!(a.degree <= cap, "element degree exceeds the truncation cap");
    let k = a.alphabet_size;
    let dense = a.dense_tensor();
    let mut s = TruncatedSeries::zero(k, cap);
    if a.degree > cap {
        return s;
    }
    for (j, c) in dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mut w = vec![0u8; a.degree];
        let mut v = j;
        for slot in w.iter_mut().rev() {
            *slot = (v % k) as u8;
            v /= k;
        }
        s.set(&w, c);
    }
    s
}

/// Reads the degree-`degree` component of a series as a Lie element.
pub fn from_tensor(s: &TruncatedSeries, degree: usize) -> Result<LieElement, LieError> {
    let k = s.alphabet();
    let mut dense = vec![BigInt::zero(); k.pow(degree as u32)];
    for (w, c) in s.terms_of_degree(degree) {
        dense[word_value(k, &w)] = c;
    }
    reduce_dense(k, degree, dense)
}
