//! The Pohozaev quadratic form for a pair of local masses and the two Vieta
//! reflections that swap one mass for the conjugate root of that form.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::mass::{format_rational, rat, CartanMatrix, MassExpr, Rational};

/// Which mass of a pair a reflection acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::First, Component::Second];

    pub fn from_index(i: u8) -> Option<Component> {
        match i {
            1 => Some(Component::First),
            2 => Some(Component::Second),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Component::First => 1,
            Component::Second => 2,
        }
    }
}

/// A candidate pair of local masses `(sigma1, sigma2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MassPair {
    pub s1: MassExpr,
    pub s2: MassExpr,
}

impl MassPair {
    pub fn new(s1: MassExpr, s2: MassExpr) -> Self {
        MassPair { s1, s2 }
    }

    /// Pair from integer coefficient tuples `(c1, c2)` with zero constants.
    pub fn from_coeffs(s1: (i64, i64), s2: (i64, i64)) -> Self {
        MassPair::new(
            MassExpr::from_ints(s1.0, s1.1, 0),
            MassExpr::from_ints(s2.0, s2.1, 0),
        )
    }

    pub fn zero() -> Self {
        MassPair::default()
    }

    pub fn is_zero(&self) -> bool {
        self.s1.is_zero() && self.s2.is_zero()
    }

    pub fn get(&self, c: Component) -> &MassExpr {
        match c {
            Component::First => &self.s1,
            Component::Second => &self.s2,
        }
    }

    pub fn eval(&self, mu1: &Rational, mu2: &Rational) -> (Rational, Rational) {
        (self.s1.eval(mu1, mu2), self.s2.eval(mu1, mu2))
    }

    pub fn eval_f64(&self, mu1: f64, mu2: f64) -> (f64, f64) {
        (self.s1.eval_f64(mu1, mu2), self.s2.eval_f64(mu1, mu2))
    }
}

impl fmt::Display for MassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s1, self.s2)
    }
}

/// Quadratic polynomial in `mu1, mu2`, stored by the six monomials
/// `mu1^2, mu1*mu2, mu2^2, mu1, mu2, 1` in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    pub coeffs: [Rational; 6],
}

impl QuadPoly {
    pub const MONOMIALS: [&'static str; 6] = ["mu1^2", "mu1*mu2", "mu2^2", "mu1", "mu2", "1"];

    pub fn zero() -> Self {
        QuadPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact product of two affine forms.
    pub fn product(a: &MassExpr, b: &MassExpr) -> Self {
        let (a1, a2, a0) = (a.c1(), a.c2(), a.c0());
        let (b1, b2, b0) = (b.c1(), b.c2(), b.c0());
        QuadPoly {
            coeffs: [
                a1 * b1,
                a1 * b2 + a2 * b1,
                a2 * b2,
                a1 * b0 + a0 * b1,
                a2 * b0 + a0 * b2,
                a0 * b0,
            ],
        }
    }

    pub fn scale(mut self, k: i64) -> Self {
        let k = rat(k);
        for c in &mut self.coeffs {
            *c *= &k;
        }
        self
    }

    pub fn eval(&self, mu1: &Rational, mu2: &Rational) -> Rational {
        let monomials = [
            mu1 * mu1,
            mu1 * mu2,
            mu2 * mu2,
            mu1.clone(),
            mu2.clone(),
            rat(1),
        ];
        self.coeffs
            .iter()
            .zip(monomials.iter())
            .map(|(c, m)| c * m)
            .sum()
    }
}

impl AddAssign<&QuadPoly> for QuadPoly {
    fn add_assign(&mut self, rhs: &QuadPoly) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(mut self, rhs: QuadPoly) -> QuadPoly {
        self += &rhs;
        self
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(QuadPoly::MONOMIALS)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| {
                if m == "1" {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), m)
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Residual of the Pohozaev identity,
/// `k21 s1^2 + k12 k21 s1 s2 + k12 s2^2 - 2 k21 mu1 s1 - 2 k12 mu2 s2`,
/// expanded in `mu1, mu2`. The pair satisfies the identity iff this is zero.
pub fn pi_residual(p: &MassPair, k: CartanMatrix) -> QuadPoly {
    let (k12, k21) = (k.k12(), k.k21());
    let (s1, s2) = (&p.s1, &p.s2);
    let mut r = QuadPoly::product(s1, s1).scale(k21);
    r += &QuadPoly::product(s1, s2).scale(k12 * k21);
    r += &QuadPoly::product(s2, s2).scale(k12);
    r += &QuadPoly::product(&MassExpr::mu1(), s1).scale(-2 * k21);
    r += &QuadPoly::product(&MassExpr::mu2(), s2).scale(-2 * k12);
    r
}

pub fn satisfies_pohozaev(p: &MassPair, k: CartanMatrix) -> bool {
    pi_residual(p, k).is_zero()
}

/// Replaces one mass by the other root of the Pohozaev quadratic in that
/// mass (the other mass held fixed). The Vieta sum gives
/// `s1 -> 2 mu1 - k12 s2 - s1` and `s2 -> 2 mu2 - k21 s1 - s2`.
///
/// Total: defined for any pair, but only meaningful on solutions.
pub fn reflect(p: &MassPair, k: CartanMatrix, component: Component) -> MassPair {
    match component {
        Component::First => {
            let s1 = &(&(2 * &MassExpr::mu1()) - &(k.k12() * &p.s2)) - &p.s1;
            MassPair::new(s1, p.s2.clone())
        }
        Component::Second => {
            let s2 = &(&(2 * &MassExpr::mu2()) - &(k.k21() * &p.s1)) - &p.s2;
            MassPair::new(p.s1.clone(), s2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::ratio;

    fn pair(a: (i64, i64), b: (i64, i64)) -> MassPair {
        MassPair::from_coeffs(a, b)
    }

    #[test]
    fn residual_vanishes_on_listed_pairs() {
        assert!(pi_residual(&pair((2, 0), (0, 0)), CartanMatrix::A2).is_zero());
        assert!(pi_residual(&pair((2, 2), (2, 2)), CartanMatrix::A2).is_zero());
        assert!(pi_residual(&MassPair::zero(), CartanMatrix::G2).is_zero());
    }

    #[test]
    fn residual_nonzero_off_variety() {
        let r = pi_residual(&pair((2, 0), (0, 2)), CartanMatrix::A2);
        assert!(!r.is_zero());
        // For A2 the form is -(s1^2 - s1 s2 + s2^2 - 2 mu1 s1 - 2 mu2 s2);
        // at s = (2, 2), mu = (1, 1) the bracket is 4 - 4 + 4 - 4 - 4 = -4.
        assert_eq!(r.eval(&rat(1), &rat(1)), rat(4));
        // Hand expansion of the bracket: 4mu1^2 - 4mu1mu2 + 4mu2^2 - 4mu1^2 - 4mu2^2.
        assert_eq!(r.coeffs, [rat(0), rat(4), rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn residual_keeps_constant_terms() {
        // (2mu1 + 2, 0) for A2: -(4mu1^2 + 8mu1 + 4) + 2mu1(2mu1 + 2) = -4mu1 - 4.
        let p = MassPair::new(MassExpr::from_ints(2, 0, 2), MassExpr::zero());
        let r = pi_residual(&p, CartanMatrix::A2);
        assert_eq!(r.coeffs, [rat(0), rat(0), rat(0), rat(-4), rat(0), rat(-4)]);
    }

    #[test]
    fn reflect_examples() {
        let a2 = CartanMatrix::A2;
        assert_eq!(
            reflect(&MassPair::zero(), a2, Component::First),
            pair((2, 0), (0, 0))
        );
        assert_eq!(
            reflect(&pair((2, 0), (0, 0)), a2, Component::Second),
            pair((2, 0), (2, 2))
        );
        assert_eq!(
            reflect(&pair((8, 4), (12, 6)), CartanMatrix::G2, Component::Second),
            pair((8, 4), (12, 8))
        );
    }

    #[test]
    fn reflection_is_vieta_conjugate() {
        // With s2 fixed, the quadratic in s1 has roots s1 and reflect(s1); at a
        // numeric point both must zero the form.
        let p = pair((6, 2), (12, 6));
        let k = CartanMatrix::G2;
        let q = reflect(&p, k, Component::First);
        let (mu1, mu2) = (ratio(7, 5), ratio(3, 2));
        assert_eq!(pi_residual(&p, k).eval(&mu1, &mu2), rat(0));
        assert_eq!(pi_residual(&q, k).eval(&mu1, &mu2), rat(0));
        assert_ne!(p, q);
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            pi_residual(&pair((2, 0), (0, 2)), CartanMatrix::A2).to_string(),
            "4*mu1*mu2"
        );
        assert_eq!(QuadPoly::zero().to_string(), "0");
        assert_eq!(
            pair((2, 0), (0, 0)).to_string(),
            "(2*mu1 + 0*mu2 + 0, 0*mu1 + 0*mu2 + 0)"
        );
    }
}
