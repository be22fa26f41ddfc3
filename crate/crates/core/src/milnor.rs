//! 2-string links as Morse diagrams, their Wirtinger data, nilpotent
//! longitudes, Milnor invariants and the Artin representation.
//!
//! A diagram is read bottom to top. Strand `j` starts at bottom point `j`
//! and must end at top point `j`. Crossing signs are oriented: `x+` is the
//! right-handed crossing, which for two upward strands means the strand
//! running from lower left to upper right passes over.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::nilgrp::{Aut0Element, NilError};
use crate::series::{magnus, GroupWord, TruncatedSeries};

/// Diagram of the Whitehead string link: linking number 0 and `mu(221;1) = -1`.
pub const WHITEHEAD: &str = include_str!("../data/whitehead.sl");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("event {event}: {message}")]
    Validation { event: usize, message: String },
    #[error("braid word has odd length, so the strands are permuted")]
    OddExponentSum,
    #[error("index word of length {length} needs cap at least {needed}, have {cap}")]
    CapOverflow { length: usize, needed: usize, cap: usize },
    #[error("strand index {0} is not 1 or 2")]
    BadStrand(usize),
    #[error("longitudes did not stabilise after {passes} passes")]
    NotConverged { passes: usize },
    #[error(transparent)]
    Nil(#[from] NilError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    /// Crossing of the points at `position`, `position + 1` with sign `+1` or `-1`.
    Crossing { position: usize, sign: i8 },
    Cup { position: usize },
    Cap { position: usize },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Event::Crossing { position, sign } => {
                write!(f, "x{} {position}", if sign > 0 { '+' } else { '-' })
            }
            Event::Cup { position } => write!(f, "cup {position}"),
            Event::Cap { position } => write!(f, "cap {position}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Boundary(usize),
    Crossing(usize),
    Turn(usize),
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    bottom: End,
    top: End,
}

#[derive(Clone, Copy, Debug)]
struct CrossingInfo {
    sign: i8,
    // segments entering from below at the left/right and leaving above
    lower_left: usize,
    lower_right: usize,
    upper_left: usize,
    upper_right: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Under { over: usize, sign: i8 },
    Plain,
}

/// Strand tracing of a valid diagram.
#[derive(Clone, Debug)]
struct Trace {
    strand: Vec<usize>,
    // per strand: segments in traversal order and the step taken into each
    paths: [Vec<(usize, Step)>; 2],
    crossings: Vec<CrossingInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MorseDiagram {
    events: Vec<Event>,
}

fn invalid(event: usize, message: impl Into<String>) -> MilnorError {
    MilnorError::Validation { event, message: message.into() }
}

fn build_trace(events: &[Event]) -> Result<Trace, MilnorError> {
    let mut segments = vec![
        Segment { bottom: End::Boundary(1), top: End::Boundary(0) },
        Segment { bottom: End::Boundary(2), top: End::Boundary(0) },
    ];
    let mut slots: Vec<usize> = vec![0, 1];
    let mut crossings = Vec::new();
    for (k, ev) in events.iter().enumerate() {
        let k1 = k + 1;
        match *ev {
            Event::Crossing { position: p, sign } => {
                if sign != 1 && sign != -1 {
                    return Err(invalid(k1, "crossing sign must be + or -"));
                }
                if p == 0 || p + 1 > slots.len() {
                    return Err(invalid(k1, format!("crossing at {p} needs points {p} and {}", p + 1)));
                }
                let (a, b) = (slots[p - 1], slots[p]);
                let c = crossings.len();
                let ul = segments.len();
                let ur = ul + 1;
                segments.push(Segment { bottom: End::Crossing(c), top: End::Boundary(0) });
                segments.push(Segment { bottom: End::Crossing(c), top: End::Boundary(0) });
                segments[a].top = End::Crossing(c);
                segments[b].top = End::Crossing(c);
                crossings.push(CrossingInfo { sign, lower_left: a, lower_right: b, upper_left: ul, upper_right: ur });
                slots[p - 1] = ul;
                slots[p] = ur;
            }
            Event::Cup { position: p } => {
                if p == 0 || p > slots.len() + 1 {
                    return Err(invalid(k1, format!("cup at {p} outside 1..={}", slots.len() + 1)));
                }
                let s = segments.len();
                segments.push(Segment { bottom: End::Turn(s + 1), top: End::Boundary(0) });
                segments.push(Segment { bottom: End::Turn(s), top: End::Boundary(0) });
                slots.splice(p - 1..p - 1, [s, s + 1]);
            }
            Event::Cap { position: p } => {
                if p == 0 || p + 1 > slots.len() {
                    return Err(invalid(k1, format!("cap at {p} needs points {p} and {}", p + 1)));
                }
                if slots.len() <= 2 {
                    return Err(invalid(k1, "cap would leave fewer than two points"));
                }
                let (a, b) = (slots[p - 1], slots[p]);
                segments[a].top = End::Turn(b);
                segments[b].top = End::Turn(a);
                slots.drain(p - 1..=p);
            }
        }
    }
    if slots.len() != 2 {
        return Err(invalid(events.len(), format!("diagram ends with {} points, expected 2", slots.len())));
    }
    for (i, &s) in slots.iter().enumerate() {
        segments[s].top = End::Boundary(i + 1);
    }

    let n = segments.len();
    let mut strand = vec![usize::MAX; n];
    let mut dir = vec![0i8; n];
    let mut raw: [Vec<(usize, Option<usize>)>; 2] = [Vec::new(), Vec::new()];
    for j in 0..2 {
        let (mut s, mut up) = (j, true);
        let mut via = None;
        loop {
            if strand[s] != usize::MAX {
                return Err(invalid(events.len(), "strand revisits a segment"));
            }
            strand[s] = j;
            dir[s] = if up { 1 } else { -1 };
            raw[j].push((s, via));
            let end = if up { segments[s].top } else { segments[s].bottom };
            match end {
                End::Boundary(pos) => {
                    if !up {
                        return Err(invalid(events.len(), format!("strand {} returns to the bottom", j + 1)));
                    }
                    if pos != j + 1 {
                        return Err(invalid(events.len(), format!("strand {} ends at top point {pos}", j + 1)));
                    }
                    break;
                }
                End::Turn(t) => {
                    s = t;
                    up = !up;
                    via = None;
                }
                End::Crossing(c) => {
                    let x = &crossings[c];
                    s = match (up, s) {
                        (true, s) if s == x.lower_left => x.upper_right,
                        (true, _) => x.upper_left,
                        (false, s) if s == x.upper_right => x.lower_left,
                        (false, _) => x.lower_right,
                    };
                    via = Some(c);
                }
            }
        }
    }
    if strand.contains(&usize::MAX) {
        return Err(invalid(events.len(), "diagram contains a closed component"));
    }

    // a lower-left strand passes over iff sign * dir_a * dir_b = +1
    let over: Vec<usize> = crossings
        .iter()
        .map(|x| {
            let (a, b) = (x.lower_left, x.lower_right);
            if x.sign * dir[a] * dir[b] == 1 {
                a
            } else {
                b
            }
        })
        .collect();
    let paths = [0, 1].map(|j| {
        raw[j]
            .iter()
            .map(|&(s, via)| {
                let step = match via {
                    Some(c) => {
                        let x = &crossings[c];
                        let mine = [x.lower_left, x.lower_right, x.upper_left, x.upper_right];
                        let over_pair = if over[c] == x.lower_left {
                            [x.lower_left, x.upper_right]
                        } else {
                            [x.lower_right, x.upper_left]
                        };
                        debug_assert!(mine.contains(&s));
                        if over_pair.contains(&s) {
                            Step::Plain
                        } else {
                            Step::Under { over: over[c], sign: x.sign }
                        }
                    }
                    None => Step::Plain,
                };
                (s, step)
            })
            .collect()
    });
    Ok(Trace { strand, paths, crossings })
}

impl MorseDiagram {
    pub fn new(events: Vec<Event>) -> Result<Self, MilnorError> {
        build_trace(&events)?;
        Ok(MorseDiagram { events })
    }

    pub fn trivial() -> Self {
        MorseDiagram::default()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Crossing { .. })).count()
    }

    fn trace(&self) -> Trace {
        build_trace(&self.events).expect("validated on construction")
    }

    pub fn parse(text: &str) -> Result<Self, MilnorError> {
        parse_diagram(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("strands 2\n");
        for e in &self.events {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for MorseDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn parse_diagram(text: &str) -> Result<MorseDiagram, MilnorError> {
    let mut events = Vec::new();
    let mut seen_content = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut col = 0;
        for part in line.split(' ') {
            if !part.trim().is_empty() {
                let lead = part.len() - part.trim_start().len();
                tokens.push((col + lead + 1, part.trim()));
            }
            col += part.len() + 1;
        }
        if tokens.is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| MilnorError::Syntax { line: ln + 1, column, message };
        if tokens.len() != 2 {
            let column = tokens.get(2).map_or(tokens[0].0, |t| t.0);
            return Err(syntax(column, "expected `<event> <position>`".into()));
        }
        let (kc, kind) = tokens[0];
        let (pc, arg) = tokens[1];
        let value: usize = arg.parse().map_err(|_| syntax(pc, format!("`{arg}` is not a position")))?;
        if kind == "strands" {
            if seen_content {
                return Err(syntax(kc, "`strands` header must come first".into()));
            }
            if value != 2 {
                return Err(syntax(pc, format!("only 2 strands are supported, got {value}")));
            }
            seen_content = true;
            continue;
        }
        seen_content = true;
        if value == 0 {
            return Err(syntax(pc, "positions are 1-based".into()));
        }
        events.push(match kind {
            "x+" => Event::Crossing { position: value, sign: 1 },
            "x-" => Event::Crossing { position: value, sign: -1 },
            "cup" => Event::Cup { position: value },
            "cap" => Event::Cap { position: value },
            other => return Err(syntax(kc, format!("unknown event `{other}`"))),
        });
    }
    MorseDiagram::new(events)
}

/// Stacks `t` on top of `s`.
pub fn compose_diagrams(s: &MorseDiagram, t: &MorseDiagram) -> MorseDiagram {
    let mut events = s.events.clone();
    events.extend_from_slice(&t.events);
    MorseDiagram { events }
}

/// Diagram of a word in `sigma_1^{±1}`, given as a list of signs.
pub fn braid_to_diagram(word: &[i8]) -> Result<MorseDiagram, MilnorError> {
    if word.len() % 2 == 1 {
        return Err(MilnorError::OddExponentSum);
    }
    let events = word
        .iter()
        .map(|&s| Event::Crossing { position: 1, sign: if s > 0 { 1 } else { -1 } })
        .collect();
    MorseDiagram::new(events)
}

/// Half the signed count of crossings between different strands.
pub fn linking_number(d: &MorseDiagram) -> i64 {
    let t = d.trace();
    let total: i64 = t
        .crossings
        .iter()
        .filter(|x| t.strand[x.lower_left] != t.strand[x.lower_right])
        .map(|x| x.sign as i64)
        .sum();
    debug_assert!(total % 2 == 0);
    total / 2
}

/// Normalised longitudes of the two strands, as Magnus series at cap `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Longitudes {
    pub level: usize,
    pub lambda1: TruncatedSeries,
    pub lambda2: TruncatedSeries,
}

impl Longitudes {
    pub fn lambda(&self, strand: usize) -> Result<&TruncatedSeries, MilnorError> {
        match strand {
            1 => Ok(&self.lambda1),
            2 => Ok(&self.lambda2),
            j => Err(MilnorError::BadStrand(j)),
        }
    }
}

fn power(m: &TruncatedSeries, m_inv: &TruncatedSeries, sign: i8) -> TruncatedSeries {
    if sign > 0 {
        m.clone()
    } else {
        m_inv.clone()
    }
}

/// One Wirtinger pass: walks each strand, conjugating its meridian at every
/// undercrossing by the over-arc value, and returns the new meridians and
/// raw longitudes `o_k^e_k ... o_1^e_1`.
fn wirtinger_pass(
    t: &Trace,
    meridians: &[TruncatedSeries],
    level: usize,
) -> (Vec<TruncatedSeries>, [TruncatedSeries; 2]) {
    let mut next = meridians.to_vec();
    let one = TruncatedSeries::one(2, level);
    let mut longitudes = [one.clone(), one];
    for j in 0..2 {
        let mut m = TruncatedSeries::generator(2, level, j as u8);
        let mut lambda = longitudes[j].clone();
        for &(s, step) in &t.paths[j] {
            if let Step::Under { over, sign } = step {
                let o = &meridians[over];
                let o_inv = o.inverse().expect("meridian is a unit");
                let (pre, post) = (power(o, &o_inv, sign), power(o, &o_inv, -sign));
                m = &(&pre * &m) * &post;
                lambda = &pre * &lambda;
            }
            next[s] = m.clone();
        }
        longitudes[j] = lambda;
    }
    (next, longitudes)
}

fn zero_frame(lambda: &TruncatedSeries, j: u8) -> TruncatedSeries {
    let k = lambda.coeff(&[j]);
    if k.is_zero() {
        return lambda.clone();
    }
    let level = lambda.cap();
    let g = TruncatedSeries::generator(2, level, j);
    let g_inv = g.inverse().expect("unit");
    let (base, e) = if k > BigInt::zero() { (g_inv, k) } else { (g, -k) };
    let e: u64 = u64::try_from(&e).expect("framing fits in u64");
    let mut out = lambda.clone();
    for _ in 0..e {
        out = &out * &base;
    }
    out
}

fn raw_longitudes(d: &MorseDiagram, level: usize, extra: usize) -> Result<[TruncatedSeries; 2], MilnorError> {
    let t = d.trace();
    let mut meridians: Vec<TruncatedSeries> =
        t.strand.iter().map(|&j| TruncatedSeries::generator(2, level, j as u8)).collect();
    let mut longitudes = None;
    for _ in 0..level + extra {
        let (next, lam) = wirtinger_pass(&t, &meridians, level);
        meridians = next;
        longitudes = Some(lam);
    }
    let (check, lam) = wirtinger_pass(&t, &meridians, level);
    if check != meridians || longitudes.as_ref().is_some_and(|l| *l != lam) {
        return Err(MilnorError::NotConverged { passes: level + extra });
    }
    Ok(lam)
}

/// Chen–Milnor iteration: `level` passes and one verification pass.
pub fn nilpotent_longitudes(d: &MorseDiagram, level: usize) -> Result<Longitudes, MilnorError> {
    longitudes_with_passes(d, level, 0)
}

/// As [`nilpotent_longitudes`] with `extra` additional passes before verification.
pub fn longitudes_with_passes(d: &MorseDiagram, level: usize, extra: usize) -> Result<Longitudes, MilnorError> {
    let [l1, l2] = raw_longitudes(d, level, extra)?;
    Ok(Longitudes { level, lambda1: zero_frame(&l1, 0), lambda2: zero_frame(&l2, 1) })
}

/// `mu(i_1 ... i_k; j)`: coefficient of `X_{i_1} ... X_{i_k}` in the longitude
/// of strand `j`, computed at cap `cap` (which must exceed `k`).
pub fn milnor_mu(d: &MorseDiagram, index: &[usize], target: usize, cap: usize) -> Result<BigInt, MilnorError> {
    if index.len() + 1 > cap {
        return Err(MilnorError::CapOverflow { length: index.len(), needed: index.len() + 1, cap });
    }
    if target != 1 && target != 2 {
        return Err(MilnorError::BadStrand(target));
    }
    let word = index
        .iter()
        .map(|&i| match i {
            1 | 2 => Ok((i - 1) as u8),
            other => Err(MilnorError::BadStrand(other)),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let l = nilpotent_longitudes(d, cap)?;
    Ok(l.lambda(target)?.coeff(&word))
}

/// Parses an index word such as `221` or `2,2,1`.
pub fn parse_index(text: &str) -> Result<Vec<usize>, MilnorError> {
    text.chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            other => Err(MilnorError::BadStrand(other.to_digit(10).map_or(usize::MAX, |d| d as usize))),
        })
        .collect()
}

/// `A_n(d)`: `x -> lambda1 x lambda1^-1`, `y -> lambda2 y lambda2^-1`.
pub fn artin(d: &MorseDiagram, level: usize) -> Result<Aut0Element, MilnorError> {
    let l = nilpotent_longitudes(d, level)?;
    Ok(Aut0Element::from_conjugator_series(l.lambda1, l.lambda2, level)?)
}

/// Artin images of many diagrams, optionally in parallel; output order follows input.
pub fn artin_batch(diagrams: &[MorseDiagram], level: usize, parallel: bool) -> Vec<Result<Aut0Element, MilnorError>> {
    if parallel {
        diagrams.par_iter().map(|d| artin(d, level)).collect()
    } else {
        diagrams.iter().map(|d| artin(d, level)).collect()
    }
}

/// Magnus expansion of `x y`, the boundary element every `A_n` fixes.
pub fn boundary_series(level: usize) -> TruncatedSeries {
    magnus(&GroupWord::parse("x y").expect("literal"), level)
}

/// Random valid diagram with at most `max_events` events, built from
/// crossing pairs at position 1 and zigzags of either strand.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, max_events: usize) -> MorseDiagram {
    let mut events = Vec::new();
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
    loop {
        let room = max_events - events.len();
        if room < 2 || (!events.is_empty() && rng.gen_ratio(1, 4)) {
            break;
        }
        if room >= 4 && rng.gen_bool(0.5) {
            // zigzag: cup, crossings w then w reversed, cap
            let half = rng.gen_range(1..=((room - 2) / 2).min(3));
            let w: Vec<usize> = (0..half).map(|_| rng.gen_range(1..=3)).collect();
            events.push(Event::Cup { position: 2 });
            for &p in w.iter().chain(w.iter().rev()) {
                events.push(Event::Crossing { position: p, sign: sign(rng) });
            }
            events.push(Event::Cap { position: if rng.gen_bool(0.5) { 1 } else { 3 } });
        } else {
            events.push(Event::Crossing { position: 1, sign: sign(rng) });
            events.push(Event::Crossing { position: 1, sign: sign(rng) });
        }
    }
    MorseDiagram::new(events).expect("blocks preserve validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgrp::{aut_compose, aut_restrict, inner_xy};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sigma2() -> MorseDiagram {
        parse_diagram("x+ 1 \n x+ 1").unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(sigma2().events().len(), 2);
        assert!(matches!(parse_diagram("cap 1"), Err(MilnorError::Validation { event: 1, .. })));
        let wh = parse_diagram(WHITEHEAD).unwrap();
        assert_eq!(wh.events().len(), 8);
        assert!(matches!(parse_diagram("x+ 1"), Err(MilnorError::Validation { .. })));
        assert!(matches!(
            parse_diagram("strands 2\nx* 1"),
            Err(MilnorError::Syntax { line: 2, column: 1, .. })
        ));
        assert!(matches!(parse_diagram("x+ q"), Err(MilnorError::Syntax { line: 1, column: 4, .. })));
        assert!(matches!(parse_diagram("strands 3"), Err(MilnorError::Syntax { .. })));
        assert!(matches!(parse_diagram("cup 1\ncap 1"), Err(MilnorError::Validation { .. })));
        // a closed loop beside the strands
        assert!(matches!(parse_diagram("cup 3\ncap 3"), Err(MilnorError::Validation { .. })));
        assert_eq!(parse_diagram("# nothing\n\nstrands 2 # header\n").unwrap(), MorseDiagram::trivial());
    }

    #[test]
    fn round_trip() {
        let wh = parse_diagram(WHITEHEAD).unwrap();
        assert_eq!(parse_diagram(&wh.to_text()).unwrap(), wh);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, 12);
            assert_eq!(parse_diagram(&d.to_text()).unwrap(), d);
        }
    }

    #[test]
    fn compose_and_braids() {
        let s = sigma2();
        assert_eq!(compose_diagrams(&s, &MorseDiagram::trivial()), s);
        let ss = compose_diagrams(&s, &s);
        assert_eq!(ss.crossing_count(), 4);
        assert_eq!(linking_number(&ss), 2);
        assert_eq!(braid_to_diagram(&[]).unwrap(), MorseDiagram::trivial());
        assert_eq!(braid_to_diagram(&[1, 1]).unwrap(), s);
        assert_eq!(braid_to_diagram(&[1]), Err(MilnorError::OddExponentSum));
        let cancel = braid_to_diagram(&[-1, -1, 1, 1]).unwrap();
        assert_eq!(cancel.crossing_count(), 4);
        assert_eq!(linking_number(&cancel), 0);
        for k in 1..=5 {
            for w in [vec![1, 1], vec![2, 2], vec![1, 2], vec![2, 2, 1]] {
                if w.len() < k {
                    assert_eq!(milnor_mu(&cancel, &w, 2, k).unwrap_or_default(), BigInt::zero());
                }
            }
        }
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_number(&MorseDiagram::trivial()), 0);
        assert_eq!(linking_number(&sigma2()), 1);
        assert_eq!(linking_number(&parse_diagram(WHITEHEAD).unwrap()), 0);
        assert_eq!(linking_number(&braid_to_diagram(&[-1, -1]).unwrap()), -1);
    }

    #[test]
    fn longitude_examples() {
        let l = nilpotent_longitudes(&MorseDiagram::trivial(), 3).unwrap();
        assert_eq!(l.lambda1, TruncatedSeries::one(2, 3));
        assert_eq!(l.lambda2, TruncatedSeries::one(2, 3));
        let l = nilpotent_longitudes(&sigma2(), 1).unwrap();
        assert_eq!(l.lambda1.coeff(&[1]), BigInt::from(1));
        let l = nilpotent_longitudes(&sigma2(), 4).unwrap();
        assert_eq!(l.lambda1, magnus(&GroupWord::parse("x y x^-1").unwrap(), 4));
        assert_eq!(l.lambda2, magnus(&GroupWord::x(), 4));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(milnor_mu(&sigma2(), &[2], 1, 2).unwrap(), BigInt::from(1));
        assert_eq!(milnor_mu(&sigma2(), &[1], 2, 2).unwrap(), BigInt::from(1));
        assert_eq!(milnor_mu(&MorseDiagram::trivial(), &[1, 2, 2], 1, 4).unwrap(), BigInt::zero());
        assert!(matches!(milnor_mu(&sigma2(), &[2, 2], 1, 2), Err(MilnorError::CapOverflow { .. })));
        assert_eq!(milnor_mu(&sigma2(), &[2], 3, 2), Err(MilnorError::BadStrand(3)));
        let wh = parse_diagram(WHITEHEAD).unwrap();
        assert_eq!(milnor_mu(&wh, &[2, 2, 1], 1, 4).unwrap(), BigInt::from(-1));
        assert_eq!(parse_index("2,2,1").unwrap(), vec![2, 2, 1]);
        assert!(parse_index("3").is_err());
    }

    #[test]
    fn artin_examples() {
        assert!(artin(&MorseDiagram::trivial(), 3).unwrap().is_identity());
        assert_eq!(artin(&sigma2(), 2).unwrap(), inner_xy(2));
        assert_eq!(artin(&sigma2(), 4).unwrap(), inner_xy(4));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let s = random_diagram(&mut rng, 8);
            let t = random_diagram(&mut rng, 8);
            let st = compose_diagrams(&s, &t);
            for n in 1..=4 {
                let lhs = artin(&st, n).unwrap();
                let rhs = aut_compose(&artin(&s, n).unwrap(), &artin(&t, n).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs.linking_integer(), rhs.linking_integer());
            }
        }
    }

    #[test]
    fn level_one_integer_is_linking_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, 12);
            let a = aut_restrict(&artin(&d, 3).unwrap(), 1).unwrap();
            assert_eq!(a.linking_integer(), Some(BigInt::from(linking_number(&d))));
        }
    }

    #[test]
    fn batch_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ds: Vec<_> = (0..10).map(|_| random_diagram(&mut rng, 12)).collect();
        assert_eq!(artin_batch(&ds, 3, true), artin_batch(&ds, 3, false));
    }
}
