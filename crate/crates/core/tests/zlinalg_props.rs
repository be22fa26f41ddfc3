use milnor_core::zlinalg::{
    hermite_normal_form, kernel_basis, lattice_member, lattice_sum, rank, solve_left, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

// Rank over the rationals by fraction-free elimination on i128.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = m[i][j] * a - m[r][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, &v| gcd(g, v.abs()));
            if g > 1 {
                m[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()).unwrap()
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
    })
}

proptest! {
    #[test]
    fn rank_matches_rational_oracle((cols, rows) in matrix()) {
        let m = to_matrix(&rows, cols);
        prop_assert_eq!(rank(&m), oracle_rank(&rows));
    }

    #[test]
    fn hnf_is_canonical_and_spans((cols, rows) in matrix()) {
        let m = to_matrix(&rows, cols);
        let h = hermite_normal_form(&m);
        for r in m.row_vecs() {
            prop_assert!(lattice_member(&r, &h).unwrap());
        }
        for r in h.basis_rows() {
            prop_assert!(solve_left(&m, &r).unwrap().is_some());
        }
        prop_assert_eq!(hermite_normal_form(h.basis()), h.clone());
        let pivots = h.pivots();
        for (i, &p) in pivots.iter().enumerate() {
            let piv = h.basis().get(i, p);
            prop_assert!(piv > &BigInt::zero());
            for k in 0..i {
                let e = h.basis().get(k, p);
                prop_assert!(e >= &BigInt::zero() && e < piv);
            }
        }
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kernel_is_exact((cols, rows) in matrix()) {
        let m = to_matrix(&rows, cols);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.rank() + rank(&m), m.rows());
        for v in k.basis_rows() {
            prop_assert!(m.apply_left(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_left_finds_combinations((cols, rows) in matrix(), coeffs in prop::collection::vec(-4i64..=4, 6)) {
        let m = to_matrix(&rows, cols);
        let x: Vec<BigInt> = coeffs[..m.rows()].iter().map(|&c| BigInt::from(c)).collect();
        let b = m.apply_left(&x).unwrap();
        let sol = solve_left(&m, &b).unwrap().expect("b is in the row lattice");
        prop_assert_eq!(m.apply_left(&sol).unwrap(), b);
    }

    #[test]
    fn sum_contains_both((cols, a) in matrix(), b_seed in prop::collection::vec(-5i64..=5, 25)) {
        let b: Vec<Vec<i64>> = b_seed.chunks(cols).take(3).filter(|c| c.len() == cols).map(|c| c.to_vec()).collect();
        let la = hermite_normal_form(&to_matrix(&a, cols));
        let lb = hermite_normal_form(&to_matrix(&b, cols));
        let s = lattice_sum(&la, &lb).unwrap();
        for r in la.basis_rows().into_iter().chain(lb.basis_rows()) {
            prop_assert!(lattice_member(&r, &s).unwrap());
        }
    }
}
