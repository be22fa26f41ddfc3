//! Independent checks used by the selftest. Nothing here calls the Lyndon
//! basis or the lattice code.

/// Primitive necklaces of length `n` over `k` colours by enumerating words
/// and keeping those strictly smaller than all their rotations.
pub fn necklace_count(k: usize, n: usize) -> usize {
    let total = k.pow(n as u32);
    let mut digits = vec![0usize; n];
    let mut count = 0;
    for v in 0..total {
        let mut r = v;
        for d in digits.iter_mut().rev() {
            *d = r % k;
            r /= k;
        }
        if (1..n).all(|s| digits[..] < [&digits[s..], &digits[..s]].concat()[..]) {
            count += 1;
        }
    }
    count
}

pub const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank over `Z/p` of the given vectors.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = powmod(rows[rank][c], PRIME - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| mulmod(v, inv)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f == 0 {
                continue;
            }
            for (x, &pv) in rows[r].iter_mut().zip(&pivot) {
                *x = (*x + PRIME - mulmod(f, pv)) % PRIME;
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn neg(v: u64) -> u64 {
    (PRIME - v) % PRIME
}

/// `[P, g]` for a homogeneous tensor `P` of degree `d`, stored densely by
/// the binary value of each word.
fn bracket_with_letter(p: &[u64], d: usize, g: usize) -> Vec<u64> {
    let mut out = vec![0u64; p.len() * 2];
    for (w, &c) in p.iter().enumerate().filter(|(_, c)| **c != 0) {
        let right = w * 2 + g;
        let left = (g << d) + w;
        out[right] = (out[right] + c) % PRIME;
        out[left] = (out[left] + neg(c)) % PRIME;
    }
    out
}

/// Left-normed brackets of all words of length `d`; they span the degree-`d` Lie elements.
fn left_normed(d: usize) -> Vec<Vec<u64>> {
    (0..1usize << d)
        .map(|w| {
            let first = (w >> (d - 1)) & 1;
            let mut p = vec![0u64; 2];
            p[first] = 1;
            for i in 1..d {
                let g = (w >> (d - 1 - i)) & 1;
                p = bracket_with_letter(&p, i, g);
            }
            p
        })
        .collect()
}

/// Dimension of the Lie elements of degree `d` on two letters.
pub fn lie_dim_mod_p(d: usize) -> usize {
    rank_mod_p(left_normed(d))
}

/// Dimension of pairs `(u, v)` of degree-`d` Lie elements with
/// `[u, X] + [v, Y] = 0`, for `d >= 2`.
pub fn sder_dim_mod_p(d: usize) -> usize {
    assert!(d >= 2, "degree 1 uses a normalised pair space");
    let span: Vec<Vec<u64>> = left_normed(d);
    let lie = rank_mod_p(span.clone());
    let mut image: Vec<Vec<u64>> = span.iter().map(|p| bracket_with_letter(p, d, 0)).collect();
    image.extend(span.iter().map(|p| bracket_with_letter(p, d, 1)));
    2 * lie - rank_mod_p(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklaces() {
        assert_eq!((1..=6).map(|n| necklace_count(2, n)).collect::<Vec<_>>(), [2, 1, 2, 3, 6, 9]);
        assert_eq!(necklace_count(3, 2), 3);
    }

    #[test]
    fn lie_dims_and_small_sder() {
        assert_eq!((1..=6).map(lie_dim_mod_p).collect::<Vec<_>>(), [2, 1, 2, 3, 6, 9]);
        assert_eq!(sder_dim_mod_p(2), 0);
        assert_eq!(sder_dim_mod_p(3), 1);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_mod_p(vec![vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(rank_mod_p(vec![]), 0);
    }
}
