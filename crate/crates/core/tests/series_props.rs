use std::collections::HashMap;

use milnor_core::series::{lcs_weight, magnus, GroupWord, TruncatedSeries, Weight};
use num_bigint::BigInt;
use proptest::prelude::*;

// Magnus expansion by multiplying sparse maps letter by letter, using
// (1+X)^-1 = sum (-X)^k.
fn oracle_magnus(w: &GroupWord, cap: usize) -> HashMap<Vec<u8>, i64> {
    let mut acc: HashMap<Vec<u8>, i64> = HashMap::from([(vec![], 1)]);
    for &(g, e) in w.letters() {
        let mut factor: HashMap<Vec<u8>, i64> = HashMap::from([(vec![], 1)]);
        for k in 1..=cap {
            let c = if e > 0 { if k == 1 { 1 } else { 0 } } else if k % 2 == 0 { 1 } else { -1 };
            if c != 0 {
                factor.insert(vec![g; k], c);
            }
        }
        let mut next = HashMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &factor {
                if a.len() + b.len() <= cap {
                    *next.entry([a.as_slice(), b].concat()).or_insert(0) += ca * cb;
                }
            }
        }
        next.retain(|_, c: &mut i64| *c != 0);
        acc = next;
    }
    acc
}

fn word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0u8..2, prop::bool::ANY), 0..max_len)
        .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|(g, p)| (g, if p { 1 } else { -1 }))))
}

// Words of lower central weight at least `i`: nested commutators of random words.
fn weighted(i: usize) -> BoxedStrategy<GroupWord> {
    if i <= 1 {
        word(5).boxed()
    } else {
        (weighted(i - 1), word(4))
            .prop_map(|(a, b)| GroupWord::commutator(&a, &b))
            .boxed()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn magnus_matches_oracle(w in word(10)) {
        let s = magnus(&w, 5);
        let oracle = oracle_magnus(&w, 5);
        for (k, c) in s.terms() {
            prop_assert_eq!(&BigInt::from(*oracle.get(&k).unwrap_or(&0)), c);
        }
        prop_assert_eq!(s.terms().count(), oracle.len());
    }

    #[test]
    fn magnus_is_multiplicative(a in word(12), b in word(12)) {
        prop_assert_eq!(magnus(&a.concat(&b), 6), &magnus(&a, 6) * &magnus(&b, 6));
        prop_assert_eq!(magnus(&a.inverse(), 6), magnus(&a, 6).inverse().unwrap());
    }

    #[test]
    fn series_ring_laws(a in word(6), b in word(6), c in word(6)) {
        let (a, b, c) = (magnus(&a, 4), magnus(&b, 4), magnus(&c, 4));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(TruncatedSeries::parse(&a.to_string()).unwrap(), a);
    }
}

fn weighted_pair() -> impl Strategy<Value = (usize, usize, GroupWord, GroupWord)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(i, j)| (Just(i), Just(j), weighted(i), weighted(j)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commutator_weights_add((i, j, a, b) in weighted_pair()) {
        prop_assert!(lcs_weight(&a, 6).at_least(i));
        prop_assert!(lcs_weight(&b, 6).at_least(j));
        prop_assert!(lcs_weight(&GroupWord::commutator(&a, &b), 6).at_least(i + j));
    }
}

#[test]
fn weight_examples() {
    let c = GroupWord::parse("[[x,y],x]").unwrap();
    assert_eq!(lcs_weight(&c, 6), Weight::Exactly(3));
    assert_eq!(lcs_weight(&GroupWord::empty(), 6), Weight::ExceedsCap);
}
