//! Truncated noncommutative integer power series and the Magnus expansion of
//! free-group words.
//!
//! A series over `k` letters is stored densely: every word of length at most
//! `cap` owns one slot, indexed by length offset plus the base-`k` value of the
//! word. For two letters at cap 10 that is 2047 slots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Letters used when printing words: `X`, `Y`, then the rest of the alphabet.
pub const LETTERS: &[u8] = b"XYZABCDEFGHIJKLMNOPQRSTUVW";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("constant coefficient is {0}, expected 1")]
    NotUnit(BigInt),
    #[error("word syntax error at column {column}: {message}")]
    WordSyntax { column: usize, message: String },
    #[error("series format error on line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A word in the free group on `x, y, ...`, kept freely reduced. Letters are
/// `(generator, exponent)` with exponent `±1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(u8, i8)>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn generator(g: u8) -> Self {
        GroupWord { letters: vec![(g, 1)] }
    }

    pub fn x() -> Self {
        Self::generator(0)
    }

    pub fn y() -> Self {
        Self::generator(1)
    }

    /// Builds a word from `(generator, ±1)` letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = (u8, i8)>>(letters: I) -> Self {
        let mut w = GroupWord::empty();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "exponent must be ±1");
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: u8, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(u8, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// `a self a^-1`.
    pub fn conjugate_by(&self, a: &GroupWord) -> Self {
        a.concat(self).concat(&a.inverse())
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self, gens: usize) -> Vec<i64> {
        let mut out = vec![0; gens];
        for &(g, e) in &self.letters {
            out[g as usize] += e as i64;
        }
        out
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[GroupWord]) -> Self {
        let mut w = GroupWord::empty();
        for &(g, e) in &self.letters {
            let img = &images[g as usize];
            w = if e > 0 { w.concat(img) } else { w.concat(&img.inverse()) };
        }
        w
    }

    /// Parses words in `x` and `y`: `x y x^-1 y^-1`, `x^3`, `[x,y]`, `(x y)^-2`.
    pub fn parse(text: &str) -> Result<Self, SeriesError> {
        let mut p = WordParser { chars: text.char_indices().collect(), pos: 0 };
        let w = p.product()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                let c = (LETTERS[g as usize] as char).to_ascii_lowercase();
                if e > 0 { c.to_string() } else { format!("{c}^-1") }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

struct WordParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl WordParser {
    fn err(&self, message: &str) -> SeriesError {
        let column = self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(i, c)| i + c.len_utf8()),
            |&(i, _)| i,
        );
        SeriesError::WordSyntax { column: column + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn product(&mut self) -> Result<GroupWord, SeriesError> {
        let mut w = GroupWord::empty();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            let atom = self.atom()?;
            let atom = self.exponent(atom)?;
            w = w.concat(&atom);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<GroupWord, SeriesError> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(GroupWord::empty())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(',')?;
                let b = self.product()?;
                self.expect(']')?;
                Ok(GroupWord::commutator(&a, &b))
            }
            Some(c @ ('x' | 'y')) => {
                self.pos += 1;
                Ok(GroupWord::generator(if c == 'x' { 0 } else { 1 }))
            }
            Some(_) => Err(self.err("expected a generator, '(' or '['")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn exponent(&mut self, base: GroupWord) -> Result<GroupWord, SeriesError> {
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some((_, '-' | '+'))) {
            self.pos += 1;
        }
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let n: i64 = digits.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })?;
        Ok(base.pow(n))
    }

    fn expect(&mut self, c: char) -> Result<(), SeriesError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }
}

/// Index arithmetic for words of length at most `cap` over `alphabet` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Layout {
    alphabet: usize,
    cap: usize,
}

impl Layout {
    fn pow(&self, n: usize) -> usize {
        self.alphabet.pow(n as u32)
    }

    fn offset(&self, len: usize) -> usize {
        (0..len).map(|l| self.pow(l)).sum()
    }

    fn size(&self) -> usize {
        self.offset(self.cap + 1)
    }

    fn index(&self, word: &[u8]) -> usize {
        let v = word.iter().fold(0usize, |acc, &l| acc * self.alphabet + l as usize);
        self.offset(word.len()) + v
    }

    /// `(length, base-k value)` of the word at `idx`.
    fn locate(&self, idx: usize) -> (usize, usize) {
        let mut len = 0;
        let mut start = 0;
        loop {
            let block = self.pow(len);
            if idx < start + block {
                return (len, idx - start);
            }
            start += block;
            len += 1;
        }
    }

    fn word(&self, idx: usize) -> Vec<u8> {
        let (len, mut v) = self.locate(idx);
        let mut w = vec![0u8; len];
        for slot in w.iter_mut().rev() {
            *slot = (v % self.alphabet) as u8;
            v /= self.alphabet;
        }
        w
    }
}

/// Integer noncommutative polynomial truncated above degree `cap`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    layout: Layout,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(alphabet: usize, cap: usize) -> Self {
        let layout = Layout { alphabet, cap };
        TruncatedSeries { layout, coeffs: vec![BigInt::zero(); layout.size()] }
    }

    pub fn one(alphabet: usize, cap: usize) -> Self {
        let mut s = Self::zero(alphabet, cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The series consisting of a single letter.
    pub fn letter(alphabet: usize, cap: usize, g: u8) -> Self {
        let mut s = Self::zero(alphabet, cap);
        if cap >= 1 {
            s.set(&[g], BigInt::one());
        }
        s
    }

    /// `1 + letter`, the Magnus image of a generator.
    pub fn generator(alphabet: usize, cap: usize, g: u8) -> Self {
        Self::one(alphabet, cap) + Self::letter(alphabet, cap, g)
    }

    pub fn from_terms<I, W>(alphabet: usize, cap: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (W, BigInt)>,
        W: AsRef<[u8]>,
    {
        let mut s = Self::zero(alphabet, cap);
        for (w, c) in terms {
            let w = w.as_ref();
            if w.len() <= cap {
                let i = s.layout.index(w);
                s.coeffs[i] += c;
            }
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.layout.cap
    }

    pub fn alphabet(&self) -> usize {
        self.layout.alphabet
    }

    pub fn coeff(&self, word: &[u8]) -> BigInt {
        if word.len() > self.layout.cap {
            return BigInt::zero();
        }
        self.coeffs[self.layout.index(word)].clone()
    }

    pub fn set(&mut self, word: &[u8], value: BigInt) {
        assert!(word.len() <= self.layout.cap, "word longer than cap");
        let i = self.layout.index(word);
        self.coeffs[i] = value;
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms ordered by (length, lexicographic word).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u8>, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.layout.word(i), c))
    }

    pub fn terms_of_degree(&self, degree: usize) -> Vec<(Vec<u8>, BigInt)> {
        if degree > self.layout.cap {
            return Vec::new();
        }
        let start = self.layout.offset(degree);
        (start..start + self.layout.pow(degree))
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| (self.layout.word(i), self.coeffs[i].clone()))
            .collect()
    }

    /// Homogeneous component of the given degree, as a series with the same cap.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let mut s = Self::zero(self.alphabet(), self.cap());
        if degree <= self.cap() {
            let start = self.layout.offset(degree);
            let end = start + self.layout.pow(degree);
            s.coeffs[start..end].clone_from_slice(&self.coeffs[start..end]);
        }
        s
    }

    /// Smallest degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.layout.locate(i).0)
    }

    /// Copy truncated (or zero-extended) to a new cap.
    pub fn with_cap(&self, cap: usize) -> Self {
        let layout = Layout { alphabet: self.alphabet(), cap };
        let n = layout.size().min(self.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); layout.size()];
        coeffs[..n].clone_from_slice(&self.coeffs[..n]);
        TruncatedSeries { layout, coeffs }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.alphabet() != other.alphabet() {
            return Err(SeriesError::AlphabetMismatch(self.alphabet(), other.alphabet()));
        }
        if self.cap() != other.cap() {
            return Err(SeriesError::CapMismatch(self.cap(), other.cap()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn nonzero_entries(&self) -> Vec<(usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let (len, v) = self.layout.locate(i);
                (len, v, c)
            })
            .collect()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let layout = self.layout;
        let mut out = Self::zero(layout.alphabet, layout.cap);
        let rhs = other.nonzero_entries();
        for (la, va, ca) in self.nonzero_entries() {
            for &(lb, vb, cb) in &rhs {
                let len = la + lb;
                if len > layout.cap {
                    continue;
                }
                let idx = layout.offset(len) + va * layout.pow(lb) + vb;
                out.coeffs[idx] += ca * cb;
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncatedSeries { layout: self.layout, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Inverse of a series with constant term 1, via the geometric series on `self - 1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.constant().is_one() {
            return Err(SeriesError::NotUnit(self.constant().clone()));
        }
        let one = Self::one(self.alphabet(), self.cap());
        let t = self - &one;
        // 1 - t + t^2 - ... = 1 - t(1 - t(1 - ...)), Horner form
        let mut acc = one.clone();
        for _ in 0..self.cap() {
            acc = &one - &t.mul_unchecked(&acc);
        }
        Ok(acc)
    }

    /// Applies the algebra homomorphism sending letter `g` to `images[g]`.
    /// Images must have zero constant term so the result is well defined.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Self {
        assert_eq!(images.len(), self.alphabet(), "one image per letter");
        for img in images {
            assert_eq!(img.cap(), self.cap(), "image cap mismatch");
            assert!(img.constant().is_zero(), "substituted letters need zero constant term");
        }
        self.horner(&[], images)
    }

    // sum over words w with prefix p of c_w * images(w without p)
    fn horner(&self, prefix: &[u8], images: &[TruncatedSeries]) -> Self {
        let mut acc = Self::zero(self.alphabet(), self.cap());
        acc.coeffs[0] = self.coeff(prefix);
        if prefix.len() == self.cap() {
            return acc;
        }
        let mut next = prefix.to_vec();
        next.push(0);
        for g in 0..self.alphabet() {
            *next.last_mut().unwrap() = g as u8;
            if !self.has_terms_with_prefix(&next) {
                continue;
            }
            let tail = self.horner(&next, images);
            acc = &acc + &images[g].mul_unchecked(&tail);
        }
        acc
    }

    fn has_terms_with_prefix(&self, prefix: &[u8]) -> bool {
        let k = self.alphabet();
        let mut lo = prefix.iter().fold(0usize, |a, &l| a * k + l as usize);
        let mut width = 1;
        for len in prefix.len()..=self.cap() {
            let start = self.layout.offset(len) + lo;
            if self.coeffs[start..start + width].iter().any(|c| !c.is_zero()) {
                return true;
            }
            lo *= k;
            width *= k;
        }
        false
    }

    /// Parses the output of `Display`.
    pub fn parse(text: &str) -> Result<Self, SeriesError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(SeriesError::Format { line: 1, message: "empty input".into() })?;
        let (alphabet, cap) = parse_header(header)?;
        let mut s = Self::zero(alphabet, cap);
        for (i, line) in lines {
            let fmt_err = |message: &str| SeriesError::Format { line: i + 1, message: message.into() };
            let mut parts = line.split_whitespace();
            let coeff: BigInt = parts
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| fmt_err("expected an integer coefficient"))?;
            let word = parts.next().ok_or_else(|| fmt_err("missing word"))?;
            if parts.next().is_some() {
                return Err(fmt_err("trailing text"));
            }
            let word = parse_word(word, alphabet).ok_or_else(|| fmt_err("bad word"))?;
            if word.len() > cap {
                return Err(fmt_err("word longer than cap"));
            }
            s.set(&word, coeff);
        }
        Ok(s)
    }
}

fn parse_header(line: &str) -> Result<(usize, usize), SeriesError> {
    let err = || SeriesError::Format { line: 1, message: "expected `series alphabet=<k> cap=<n>`".into() };
    let mut parts = line.split_whitespace();
    if parts.next() != Some("series") {
        return Err(err());
    }
    let mut alphabet = None;
    let mut cap = None;
    for p in parts {
        match p.split_once('=') {
            Some(("alphabet", v)) => alphabet = v.parse().ok(),
            Some(("cap", v)) => cap = v.parse().ok(),
            _ => return Err(err()),
        }
    }
    Ok((alphabet.ok_or_else(err)?, cap.ok_or_else(err)?))
}

/// Reads a word written with `LETTERS`; `1` is the empty word.
pub fn parse_word(text: &str, alphabet: usize) -> Option<Vec<u8>> {
    if text == "1" {
        return Some(Vec::new());
    }
    text.bytes()
        .map(|b| LETTERS[..alphabet].iter().position(|&l| l == b).map(|p| p as u8))
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|&l| LETTERS[l as usize] as char).collect()
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "series alphabet={} cap={}", self.alphabet(), self.cap())?;
        for (w, c) in self.terms() {
            writeln!(f, "{} {}", c, format_word(&w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                let w = format_word(&w);
                if w == "1" {
                    c.to_string()
                } else if c.is_one() {
                    w
                } else if (-c).is_one() {
                    format!("-{w}")
                } else {
                    format!("{c}*{w}")
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "[{}] (cap {})", body.replace("+ -", "- "), self.cap())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(rhs).expect("incompatible series");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { layout: self.layout, coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(rhs).expect("incompatible series");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { layout: self.layout, coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { layout: self.layout, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("incompatible series")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `a b - b a`.
pub fn commutator(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    &(a * b) - &(b * a)
}

/// Magnus expansion `x_g -> 1 + X_g` of a group word, truncated at `cap`.
pub fn magnus(w: &GroupWord, cap: usize) -> TruncatedSeries {
    magnus_over(2, w, cap)
}

/// Magnus expansion over an alphabet of `alphabet` generators.
pub fn magnus_over(alphabet: usize, w: &GroupWord, cap: usize) -> TruncatedSeries {
    let gens: Vec<TruncatedSeries> =
        (0..alphabet).map(|g| TruncatedSeries::generator(alphabet, cap, g as u8)).collect();
    let invs: Vec<TruncatedSeries> = gens.iter().map(|s| s.inverse().expect("unit")).collect();
    let mut acc = TruncatedSeries::one(alphabet, cap);
    for &(g, e) in w.letters() {
        let factor = if e > 0 { &gens[g as usize] } else { &invs[g as usize] };
        acc = acc.mul_unchecked(factor);
    }
    acc
}

/// Result of `lcs_weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Weight {
    Exactly(usize),
    ExceedsCap,
}

/// Lowest nonconstant degree of `s - 1`.
pub fn series_weight(s: &TruncatedSeries) -> Weight {
    let mut t = s.clone();
    t.coeffs[0] -= 1;
    match t.min_degree() {
        Some(d) => Weight::Exactly(d),
        None => Weight::ExceedsCap,
    }
}

/// Position of `w` in the lower central series as detected by Magnus at `cap`.
pub fn lcs_weight(w: &GroupWord, cap: usize) -> Weight {
    series_weight(&magnus(w, cap))
}

impl Weight {
    /// True when the weight is at least `n` (a weight beyond the cap counts).
    pub fn at_least(self, n: usize) -> bool {
        match self {
            Weight::Exactly(d) => d >= n,
            Weight::ExceedsCap => true,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exactly(d) => write!(f, "{d}"),
            Weight::ExceedsCap => write!(f, "exceeds cap"),
        }
    }
}
