//! The acceptance criteria, runnable from the binary and the test suite.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use milnor_core::freelie::{bracket, lyndon_words, witt_dimension, LieElement};
use milnor_core::milnor::{
    artin, artin_batch, braid_to_diagram, compose_diagrams, linking_number, nilpotent_longitudes, parse_diagram,
    random_diagram, Longitudes, MorseDiagram, WHITEHEAD,
};
use milnor_core::nilgrp::{aut_compose, aut_restrict, deviation, johnson_kernel_to_sder, sder_to_kernel};
use milnor_core::sder::{derived_series, sder_basis, sder_lattice, TangentialDerivation};
use milnor_core::series::{lcs_weight, magnus, GroupWord};

use crate::oracles::{necklace_count, sder_dim_mod_p};
use crate::report::{Report, Status};

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Duration,
    run: fn(bool) -> (bool, Value),
}

pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checks_passed: bool,
    pub within_limit: bool,
    pub detail: Value,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks_passed && self.within_limit
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Witt dimensions agree with Lyndon enumeration and necklace counts", limit: secs(1), run: witt_lyndon },
    Criterion { id: 2, title: "antisymmetry and Jacobi on random homogeneous triples", limit: secs(10), run: lie_laws },
    Criterion { id: 3, title: "sDer dimensions against hand values and a modular-rank oracle", limit: secs(60), run: sder_dims },
    Criterion { id: 4, title: "derived series of sDer nonzero at depth 1 (degree <= 4) and depth 2 (degree <= 8)", limit: secs(600), run: derived_evidence },
    Criterion { id: 5, title: "Magnus multiplicativity and commutator weight filtration", limit: secs(10), run: magnus_laws },
    Criterion { id: 6, title: "exact sequence sDer_n -> K_n -> sDer_n at levels 1..4", limit: secs(60), run: exact_sequence },
    Criterion { id: 7, title: "level-1 Artin integer equals the linking number", limit: secs(10), run: artin_linking },
    Criterion { id: 8, title: "Milnor invariant golden values", limit: secs(30), run: milnor_golden },
    Criterion { id: 9, title: "A_n(s # t) = A_n(s) o A_n(t) on random pairs", limit: secs(60), run: homomorphism_law },
    Criterion { id: 10, title: "kernel commutator identity modulo weight n+2", limit: secs(30), run: kernel_commutator },
    Criterion { id: 11, title: "deterministic structured output and diagram round trip", limit: secs(600), run: determinism },
];

pub fn run_criterion(c: &Criterion, parallel: bool) -> Outcome {
    let start = Instant::now();
    let (checks_passed, detail) = (c.run)(parallel);
    let elapsed = start.elapsed();
    Outcome { id: c.id, title: c.title, checks_passed, within_limit: elapsed <= c.limit, detail, elapsed, limit: c.limit }
}

fn outcome_value(o: &Outcome) -> Value {
    json!({
        "title": o.title,
        "passed": o.passed(),
        "checks_passed": o.checks_passed,
        "within_time_limit": o.within_limit,
        "time_limit_seconds": o.limit.as_secs(),
        "detail": o.detail,
    })
}

fn build_report(outcomes: &[Outcome]) -> Report {
    let mut r = Report::new("selftest");
    let mut failed = vec![];
    for o in outcomes {
        r.result(&format!("criterion_{:02}", o.id), outcome_value(o));
        if !o.passed() {
            failed.push(o.id);
        }
    }
    r.result("failed", json!(failed));
    if !failed.is_empty() {
        let ids: Vec<String> = failed.iter().map(u8::to_string).collect();
        r.fail(Status::Fail, "Selftest", &format!("criteria not met: {}", ids.join(", ")));
    }
    r
}

pub fn report(parallel: bool) -> Report {
    let outcomes: Vec<Outcome> = CRITERIA.iter().map(|c| run_criterion(c, parallel)).collect();
    build_report(&outcomes)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| (rng.gen_range(0..2u8), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

fn random_lie(rng: &mut ChaCha8Rng, degree: usize) -> LieElement {
    let v: Vec<BigInt> = (0..witt_dimension(2, degree)).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
    LieElement::from_vector(2, degree, &v)
}

fn witt_lyndon(_: bool) -> (bool, Value) {
    let expected = [2usize, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335];
    let witt: Vec<usize> = (1..=12).map(|n| witt_dimension(2, n)).collect();
    let lyndon: Vec<usize> = (1..=12).map(|n| lyndon_words(2, n).len()).collect();
    let necklace: Vec<usize> = (1..=12).map(|n| necklace_count(2, n)).collect();
    let ok = witt == expected && lyndon == expected && necklace == expected;
    (ok, json!({ "witt": witt, "lyndon": lyndon, "necklace_oracle": necklace }))
}

fn lie_laws(_: bool) -> (bool, Value) {
    let mut r = rng(2);
    let mut tested = 0;
    let mut ok = true;
    while tested < 120 {
        let (i, j, k) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=3));
        if i + j + k > 8 {
            continue;
        }
        let (a, b, c) = (random_lie(&mut r, i), random_lie(&mut r, j), random_lie(&mut r, k));
        let br = |p: &LieElement, q: &LieElement| bracket(p, q).expect("degree within cap");
        let ab = br(&a, &b);
        ok &= ab == br(&b, &a).neg();
        let jac = br(&a, &br(&b, &c)).try_add(&br(&b, &br(&c, &a))).and_then(|s| s.try_add(&br(&c, &ab)));
        ok &= jac.map(|s| s.is_zero()).unwrap_or(false);
        tested += 1;
    }
    (ok, json!({ "triples": tested, "max_total_degree": 8 }))
}

fn sder_dims(_: bool) -> (bool, Value) {
    let low: Vec<usize> = (1..=3).map(|d| sder_basis(d).map(|b| b.len()).unwrap_or(usize::MAX)).collect();
    let high: Vec<usize> = (4..=8).map(|d| sder_lattice(d).map(|l| l.rank()).unwrap_or(usize::MAX)).collect();
    let oracle: Vec<usize> = (4..=8).map(sder_dim_mod_p).collect();
    let ok = low == [1, 0, 1] && high == oracle;
    (ok, json!({ "degrees_1_to_3": low, "degrees_4_to_8": high, "modular_oracle_4_to_8": oracle }))
}

fn derived_evidence(parallel: bool) -> (bool, Value) {
    let s = match derived_series(8, 2, parallel) {
        Ok(s) => s,
        Err(e) => return (false, json!({ "error": e.to_string() })),
    };
    let dims: Vec<Vec<usize>> = s.terms.iter().map(|t| t.dims()).collect();
    let depth1 = dims[1][..4].iter().any(|&d| d > 0);
    let depth2 = dims[2].iter().any(|&d| d > 0);
    (
        depth1 && depth2,
        json!({
            "dims_by_depth": dims,
            "depth1_nonzero_at_degree_le_4": depth1,
            "depth2_nonzero_at_degree_le_8": depth2,
            "statement": "truncated computation: evidence about the derived series, not a proof of non-solvability",
        }),
    )
}

fn magnus_laws(_: bool) -> (bool, Value) {
    let mut r = rng(5);
    let mut ok = true;
    for _ in 0..200 {
        let (a, b) = (random_word(&mut r, 12), random_word(&mut r, 12));
        ok &= magnus(&a.concat(&b), 6) == &magnus(&a, 6) * &magnus(&b, 6);
    }
    fn nested(r: &mut ChaCha8Rng, weight: usize) -> GroupWord {
        let mut w = random_word(r, 4);
        for _ in 1..weight {
            w = GroupWord::commutator(&w, &random_word(r, 4));
        }
        w
    }
    for _ in 0..100 {
        let (i, j) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (a, b) = (nested(&mut r, i), nested(&mut r, j));
        ok &= lcs_weight(&GroupWord::commutator(&a, &b), 6).at_least(i + j);
    }
    (ok, json!({ "multiplicativity_pairs": 200, "weight_tests": 100, "cap": 6 }))
}

fn exact_sequence(_: bool) -> (bool, Value) {
    let mut ok = true;
    let mut sizes = vec![];
    for n in 1..=4 {
        let basis = sder_basis(n).unwrap_or_default();
        sizes.push(basis.len());
        for d in &basis {
            let Ok(k) = sder_to_kernel(d) else {
                ok = false;
                continue;
            };
            ok &= aut_restrict(&k, n).map(|a| a.is_identity()).unwrap_or(false);
            ok &= johnson_kernel_to_sder(&k).map(|j| &j == d).unwrap_or(false);
        }
    }
    (ok, json!({ "basis_sizes_levels_1_to_4": sizes }))
}

fn artin_linking(parallel: bool) -> (bool, Value) {
    let mut r = rng(7);
    let ds: Vec<MorseDiagram> = (0..50).map(|_| random_diagram(&mut r, 12)).collect();
    let lvl1 = artin_batch(&ds, 1, parallel);
    let lvl3 = artin_batch(&ds, 3, parallel);
    let mut ok = true;
    let mut linking = vec![];
    for ((d, a1), a3) in ds.iter().zip(&lvl1).zip(&lvl3) {
        let lk = BigInt::from(linking_number(d));
        linking.push(linking_number(d));
        let i1 = a1.as_ref().ok().and_then(|a| a.linking_integer());
        let i3 = a3.as_ref().ok().and_then(|a| aut_restrict(a, 1).ok()).and_then(|a| a.linking_integer());
        ok &= i1.as_ref() == Some(&lk) && i3.as_ref() == Some(&lk);
    }
    (ok, json!({ "diagrams": ds.len(), "linking_numbers": linking }))
}

fn all_index_words(max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![];
    for len in 1..=max_len {
        for v in 0..1usize << len {
            out.push((0..len).map(|i| ((v >> i) & 1) as u8).collect());
        }
    }
    out
}

fn all_mu_zero(l: &Longitudes, max_len: usize) -> bool {
    all_index_words(max_len).iter().all(|w| l.lambda1.coeff(w).is_zero() && l.lambda2.coeff(w).is_zero())
}

fn milnor_golden(_: bool) -> (bool, Value) {
    let trivial = nilpotent_longitudes(&MorseDiagram::trivial(), 7).map(|l| all_mu_zero(&l, 6)).unwrap_or(false);
    let s2 = braid_to_diagram(&[1, 1]).expect("even word");
    let mu21 = nilpotent_longitudes(&s2, 2).map(|l| l.lambda1.coeff(&[1])).unwrap_or_default();
    let wh = parse_diagram(WHITEHEAD).expect("corpus parses");
    let wh_lk = linking_number(&wh);
    let wh_mu = nilpotent_longitudes(&wh, 4).map(|l| l.lambda1.coeff(&[1, 1, 0])).unwrap_or_default();
    let cancel = compose_diagrams(&s2, &braid_to_diagram(&[-1, -1]).expect("even word"));
    let cancel_zero = nilpotent_longitudes(&cancel, 6).map(|l| all_mu_zero(&l, 5)).unwrap_or(false);
    let one = BigInt::from(1);
    let ok = trivial && mu21 == one && wh_lk == 0 && (wh_mu == one || wh_mu == -one) && cancel_zero;
    (
        ok,
        json!({
            "trivial_all_mu_len_le_6_zero": trivial,
            "sigma1_squared_mu_2_1": mu21.to_string(),
            "whitehead_linking": wh_lk,
            "whitehead_mu_221_1": wh_mu.to_string(),
            "cancelling_pair_all_mu_len_le_5_zero": cancel_zero,
        }),
    )
}

fn homomorphism_law(_: bool) -> (bool, Value) {
    let mut r = rng(9);
    let mut ok = true;
    for _ in 0..20 {
        let s = random_diagram(&mut r, 10);
        let t = random_diagram(&mut r, 10);
        let st = compose_diagrams(&s, &t);
        for n in 1..=4 {
            let lhs = artin(&st, n);
            let rhs = artin(&s, n).and_then(|a| Ok(aut_compose(&a, &artin(&t, n)?)?));
            ok &= matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r && l.linking_integer() == r.linking_integer());
        }
    }
    (ok, json!({ "pairs": 20, "levels": [1, 2, 3, 4], "order": "t stacked above s" }))
}

fn kernel_commutator(_: bool) -> (bool, Value) {
    let mut r = rng(10);
    let mut ok = true;
    let mut count = 0;
    for n in 1..=4 {
        let basis = sder_basis(n).unwrap_or_default();
        for _ in 0..25 {
            let mut d = TangentialDerivation::zero(n);
            for b in &basis {
                d = d.try_add(&b.scale(&BigInt::from(r.gen_range(-2..=2)))).expect("same degree");
            }
            let Ok(alpha) = sder_to_kernel(&d) else {
                ok = false;
                continue;
            };
            let (a, b) = (random_word(&mut r, 8), random_word(&mut r, 8));
            ok &= deviation(&alpha, &a.concat(&b)) == &deviation(&alpha, &a) * &deviation(&alpha, &b);
            count += 1;
        }
    }
    (ok, json!({ "tests": count, "levels": [1, 2, 3, 4] }))
}

fn determinism(parallel: bool) -> (bool, Value) {
    let run = || {
        let outcomes: Vec<Outcome> = CRITERIA[..10].iter().map(|c| run_criterion(c, parallel)).collect();
        build_report(&outcomes).to_json()
    };
    let (first, second) = (run(), run());
    let identical = first == second;
    let reparsed = Report::from_json(&first).map(|r| r.to_json() == first).unwrap_or(false);
    let mut corpus = vec![parse_diagram(WHITEHEAD).expect("corpus parses"), braid_to_diagram(&[1, 1]).expect("even")];
    let mut r = rng(11);
    corpus.extend((0..20).map(|_| random_diagram(&mut r, 12)));
    let round_trip = corpus.iter().all(|d| parse_diagram(&d.to_text()).as_ref() == Ok(d));
    (
        identical && reparsed && round_trip,
        json!({ "byte_identical": identical, "report_reparses": reparsed, "diagram_round_trip": round_trip }),
    )
}
