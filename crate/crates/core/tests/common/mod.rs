//! Reference data and brute-force oracles shared by the integration tests.
//! Nothing here calls into the enumeration or sweep code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toda_mass::mass::{rat, ratio, CartanMatrix, MassExpr, Rational};
use toda_mass::pohozaev::MassPair;

/// `((c1, c2), (c1, c2))` for one pair.
type CoeffRow = ((i64, i64), (i64, i64));

/// Admissible pairs as printed coefficient tables, `((c1, c2), (c1, c2))`
/// for `(c1 mu1 + c2 mu2, c1 mu1 + c2 mu2)`, typed in by hand.
pub fn reference_table(k: CartanMatrix) -> Vec<MassPair> {
    let rows: &[CoeffRow] = match k {
        CartanMatrix::A2 => &[
            ((2, 0), (0, 0)),
            ((2, 0), (2, 2)),
            ((2, 2), (2, 2)),
            ((2, 2), (0, 2)),
            ((0, 0), (0, 2)),
        ],
        CartanMatrix::B2 => &[
            ((2, 0), (0, 0)),
            ((2, 0), (4, 2)),
            ((4, 2), (4, 2)),
            ((4, 2), (4, 4)),
            ((0, 0), (0, 2)),
            ((2, 2), (0, 2)),
            ((2, 2), (4, 4)),
        ],
        CartanMatrix::G2 => &[
            ((2, 0), (0, 0)),
            ((2, 0), (6, 2)),
            ((6, 2), (6, 2)),
            ((6, 2), (12, 6)),
            ((8, 4), (12, 6)),
            ((8, 4), (12, 8)),
            ((0, 0), (0, 2)),
            ((2, 2), (0, 2)),
            ((2, 2), (6, 6)),
            ((6, 4), (6, 6)),
            ((6, 4), (12, 8)),
        ],
    };
    rows.iter()
        .map(|&(a, b)| MassPair::from_coeffs(a, b))
        .collect()
}

/// The special pairs, by hand.
pub fn reference_special(k: CartanMatrix) -> MassPair {
    match k {
        CartanMatrix::A2 => MassPair::from_coeffs((2, 2), (2, 2)),
        CartanMatrix::B2 => MassPair::from_coeffs((4, 2), (4, 4)),
        CartanMatrix::G2 => MassPair::from_coeffs((8, 4), (12, 8)),
    }
}

/// The `M_K` matrices in reduced, per-algebra form (an overall scalar
/// removed), expanded by hand, with that scalar.
pub fn reduced_mk(k: CartanMatrix, l: (i64, i64, i64, i64)) -> ([[i64; 2]; 2], i64) {
    let (l11, l12, l21, l22) = l;
    match k {
        CartanMatrix::A2 => (
            [
                [2 * l11 - l21 - 2, 2 * l21 - l11],
                [2 * l12 - l22, 2 * l22 - l12 - 2],
            ],
            -1,
        ),
        CartanMatrix::B2 => (
            [
                [2 * l11 - l21 - 2, l21 - l11],
                [2 * l12 - l22, l22 - l12 - 1],
            ],
            -2,
        ),
        CartanMatrix::G2 => (
            [
                [6 * l11 - 3 * l21 - 6, 2 * l21 - 3 * l11],
                [6 * l12 - 3 * l22, 2 * l22 - 3 * l12 - 2],
            ],
            -1,
        ),
    }
}

pub fn det(m: [[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// The Pohozaev residual `k21 s1^2 + k12 k21 s1 s2 + k12 s2^2 - 2k21 mu1 s1 - 2k12 mu2 s2`
/// evaluated at a point, straight from the formula.
pub fn residual_at(k: CartanMatrix, p: &MassPair, mu1: &Rational, mu2: &Rational) -> Rational {
    let (k12, k21) = (rat(k.k12()), rat(k.k21()));
    let s1 = p.s1.eval(mu1, mu2);
    let s2 = p.s2.eval(mu1, mu2);
    &k21 * &s1 * &s1 + &k12 * &k21 * &s1 * &s2 + &k12 * &s2 * &s2
        - rat(2) * &k21 * mu1 * &s1
        - rat(2) * &k12 * mu2 * &s2
}

pub fn random_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    ratio(
        rng.random_range(-span..=span),
        rng.random_range(1..=max_den),
    )
}

pub fn random_expr(rng: &mut ChaCha8Rng) -> MassExpr {
    MassExpr::new(
        random_rational(rng, 12, 6),
        random_rational(rng, 12, 6),
        random_rational(rng, 12, 6),
    )
}

pub fn random_pair(rng: &mut ChaCha8Rng) -> MassPair {
    MassPair::new(random_expr(rng), random_expr(rng))
}

/// Every value `sum_{t in J} sigma_t + n` (divided by `4 pi`) with
/// `4 pi (sum + n) <= cutoff`, by nested enumeration over subsets, one
/// choice per member, and `n`. `candidates[t]` lists the admissible values
/// of the chosen component at vortex `t`.
pub fn brute_force_over_4pi(candidates: &[Vec<Rational>], cutoff: f64) -> BTreeSet<Rational> {
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut out = BTreeSet::new();
    let v = candidates.len();
    for mask in 0u32..(1 << v) {
        let members: Vec<usize> = (0..v).filter(|t| mask & (1 << t) != 0).collect();
        // Odometer over the choice at each member.
        let mut idx = vec![0usize; members.len()];
        loop {
            let sum: Rational = members
                .iter()
                .zip(&idx)
                .map(|(&t, &i)| candidates[t][i].clone())
                .sum();
            let mut n = 0i64;
            loop {
                let total = &sum + rat(n);
                if four_pi * total.to_f64().unwrap() > cutoff {
                    break;
                }
                out.insert(total);
                n += 1;
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < candidates[members[pos]].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    out
}

/// Same enumeration in floating point, deduplicated at `1e-9`.
pub fn brute_force_values(candidates: &[Vec<f64>], cutoff: f64) -> Vec<f64> {
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut all = Vec::new();
    let v = candidates.len();
    for mask in 0u32..(1 << v) {
        let members: Vec<usize> = (0..v).filter(|t| mask & (1 << t) != 0).collect();
        let mut idx = vec![0usize; members.len()];
        loop {
            let sum: f64 = members
                .iter()
                .zip(&idx)
                .map(|(&t, &i)| candidates[t][i])
                .sum();
            let mut n = 0.0;
            while four_pi * (sum + n) <= cutoff {
                all.push(four_pi * (sum + n));
                n += 1.0;
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < candidates[members[pos]].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    all.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for x in all {
        if out.last().is_none_or(|&y| x - y > 1e-9) {
            out.push(x);
        }
    }
    out
}
