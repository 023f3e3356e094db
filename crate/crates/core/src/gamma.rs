//! The finite set of admissible local-mass pairs: the orbit of `(0, 0)`
//! under the two Pohozaev reflections, with the trivial pair removed.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::mass::{CartanMatrix, Rational};
use crate::pohozaev::{reflect, Component, MassPair};

/// Upper bound on orbit states visited before giving up.
pub const ORBIT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("OrbitOverflow: reflection orbit for {algebra} exceeded {cap} states")]
    OrbitOverflow { algebra: CartanMatrix, cap: usize },
}

impl GammaError {
    pub fn name(&self) -> &'static str {
        match self {
            GammaError::OrbitOverflow { .. } => "OrbitOverflow",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSet {
    pub algebra: CartanMatrix,
    /// Discovery order of the breadth-first walk, first reflection tried first.
    pub pairs: Vec<MassPair>,
}

impl GammaSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, p: &MassPair) -> bool {
        self.pairs.contains(p)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MassPair> {
        self.pairs.iter()
    }
}

/// Breadth-first orbit of `(0, 0)` under both reflections, seed included.
pub fn reflection_orbit(k: CartanMatrix) -> Result<Vec<MassPair>, GammaError> {
    // The orbit is capped at a few dozen states, so a linear scan beats hashing.
    let mut order = vec![MassPair::zero()];
    let mut next = 0;
    while next < order.len() {
        for c in Component::BOTH {
            let q = reflect(&order[next], k, c);
            if !order.contains(&q) {
                if order.len() >= ORBIT_CAP {
                    return Err(GammaError::OrbitOverflow {
                        algebra: k,
                        cap: ORBIT_CAP,
                    });
                }
                order.push(q);
            }
        }
        next += 1;
    }
    Ok(order)
}

pub fn enumerate_gamma(k: CartanMatrix) -> Result<GammaSet, GammaError> {
    let pairs = reflection_orbit(k)?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    Ok(GammaSet { algebra: k, pairs })
}

/// The pair realized by fully bubbling solutions.
pub fn special_pair(k: CartanMatrix) -> MassPair {
    match k {
        CartanMatrix::A2 => MassPair::from_coeffs((2, 2), (2, 2)),
        CartanMatrix::B2 => MassPair::from_coeffs((4, 2), (4, 4)),
        CartanMatrix::G2 => MassPair::from_coeffs((8, 4), (12, 8)),
    }
}

pub fn is_special(p: &MassPair, k: CartanMatrix) -> bool {
    *p == special_pair(k)
}

/// An unordered pair `{a, b}` of set elements; `a == b` is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub first: MassPair,
    pub second: MassPair,
}

/// All unordered `{a, b}` from the set whose values at `(mu1, mu2)` add up
/// to the value of `p`, componentwise. Elements are distinguished by their
/// symbolic form even if two evaluate to the same numbers.
pub fn decompositions(
    p: &MassPair,
    k: CartanMatrix,
    mu1: &Rational,
    mu2: &Rational,
) -> Result<Vec<Decomposition>, GammaError> {
    let gamma = enumerate_gamma(k)?;
    let scaled = ScaledValues::new(&gamma, mu1, mu2);
    let target = scaled.scale(&p.eval(mu1, mu2));
    let hits = match target {
        Some(t) => scaled
            .pair_sums()
            .filter(|(v, _)| *v == t)
            .map(|(_, ij)| ij)
            .collect(),
        None => Vec::new(),
    };
    Ok(materialize(&gamma, &hits))
}

/// Decompositions of every set element at once: one pass over all unordered
/// pairs of the set, bucketed by their summed value.
pub fn decomposition_table(
    k: CartanMatrix,
    mu1: &Rational,
    mu2: &Rational,
) -> Result<Vec<(MassPair, Vec<Decomposition>)>, GammaError> {
    let gamma = enumerate_gamma(k)?;
    let scaled = ScaledValues::new(&gamma, mu1, mu2);
    let mut by_value: HashMap<(BigInt, BigInt), Vec<(usize, usize)>> = HashMap::new();
    for (v, ij) in scaled.pair_sums() {
        by_value.entry(v).or_default().push(ij);
    }
    Ok(gamma
        .pairs
        .iter()
        .zip(&scaled.values)
        .map(|(p, v)| {
            let hits = by_value.get(v).map(Vec::as_slice).unwrap_or_default();
            (p.clone(), materialize(&gamma, hits))
        })
        .collect())
}

fn materialize(gamma: &GammaSet, hits: &[(usize, usize)]) -> Vec<Decomposition> {
    hits.iter()
        .map(|&(i, j)| Decomposition {
            first: gamma.pairs[i].clone(),
            second: gamma.pairs[j].clone(),
        })
        .collect()
}

/// Evaluated set elements over a common denominator, so that sums and
/// comparisons are plain integer arithmetic.
struct ScaledValues {
    denom: BigInt,
    values: Vec<(BigInt, BigInt)>,
}

impl ScaledValues {
    fn new(gamma: &GammaSet, mu1: &Rational, mu2: &Rational) -> Self {
        let raw: Vec<(Rational, Rational)> = gamma.iter().map(|q| q.eval(mu1, mu2)).collect();
        let denom = raw
            .iter()
            .flat_map(|(a, b)| [a.denom(), b.denom()])
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        let mut out = ScaledValues {
            denom,
            values: Vec::with_capacity(raw.len()),
        };
        out.values = raw
            .iter()
            .map(|v| out.scale(v).expect("denominators divide the lcm"))
            .collect();
        out
    }

    /// `v * denom` as integers, or `None` if `v` is not a multiple of `1/denom`.
    fn scale(&self, v: &(Rational, Rational)) -> Option<(BigInt, BigInt)> {
        let one = |q: &Rational| {
            let n = q.numer() * &self.denom;
            let (quot, rem) = n.div_rem(q.denom());
            rem.is_zero().then_some(quot)
        };
        Some((one(&v.0)?, one(&v.1)?))
    }

    /// Sums over unordered index pairs `i <= j`.
    fn pair_sums(&self) -> impl Iterator<Item = ((BigInt, BigInt), (usize, usize))> + '_ {
        let n = self.values.len();
        (0..n).flat_map(move |i| {
            (i..n).map(move |j| {
                let (a, b) = (&self.values[i], &self.values[j]);
                ((&a.0 + &b.0, &a.1 + &b.1), (i, j))
            })
        })
    }
}
