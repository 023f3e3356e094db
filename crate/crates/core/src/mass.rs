//! Exact symbolic mass expressions `c1*mu1 + c2*mu2 + c0` and the rank-2
//! Cartan matrices that drive every identity in this crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MassError {
    #[error("NotOfForm: {0} is not of the form 2(n1*mu1 + n2*mu2 + n3) with integer n's")]
    NotOfForm(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

impl MassError {
    pub fn name(&self) -> &'static str {
        match self {
            MassError::NotOfForm(_) => "NotOfForm",
            MassError::Parse(_) => "ParseError",
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact rational from `"p"`, `"p/q"`, or a finite decimal such as
/// `"-1.25"` or `"3e-2"`. Decimals are expanded exactly; no float is involved.
pub fn parse_rational(text: &str) -> Result<Rational, MassError> {
    let s = text.trim();
    let bad = || MassError::Parse(format!("not a rational literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(MassError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical literal: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `c1*mu1 + c2*mu2 + c0` with exact rational coefficients.
///
/// The mu's are formal indeterminates (`mu_i = 1 + alpha_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MassExpr {
    c1: Rational,
    c2: Rational,
    c0: Rational,
}

impl MassExpr {
    pub fn new(c1: Rational, c2: Rational, c0: Rational) -> Self {
        MassExpr { c1, c2, c0 }
    }

    pub fn from_ints(c1: i64, c2: i64, c0: i64) -> Self {
        MassExpr::new(rat(c1), rat(c2), rat(c0))
    }

    pub fn zero() -> Self {
        MassExpr::default()
    }

    /// The indeterminate `mu1`.
    pub fn mu1() -> Self {
        MassExpr::from_ints(1, 0, 0)
    }

    /// The indeterminate `mu2`.
    pub fn mu2() -> Self {
        MassExpr::from_ints(0, 1, 0)
    }

    pub fn constant(c0: Rational) -> Self {
        MassExpr::new(Rational::zero(), Rational::zero(), c0)
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    pub fn c0(&self) -> &Rational {
        &self.c0
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero() && self.c0.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        MassExpr::new(&self.c1 * k, &self.c2 * k, &self.c0 * k)
    }

    pub fn eval(&self, mu1: &Rational, mu2: &Rational) -> Rational {
        &self.c1 * mu1 + &self.c2 * mu2 + &self.c0
    }

    pub fn eval_f64(&self, mu1: f64, mu2: f64) -> f64 {
        rational_to_f64(&self.c1) * mu1
            + rational_to_f64(&self.c2) * mu2
            + rational_to_f64(&self.c0)
    }
}

/// Componentwise exact sum.
pub fn mass_add(a: &MassExpr, b: &MassExpr) -> MassExpr {
    MassExpr::new(&a.c1 + &b.c1, &a.c2 + &b.c2, &a.c0 + &b.c0)
}

/// Exact value `c1*mu1 + c2*mu2 + c0`.
pub fn mass_eval(m: &MassExpr, mu1: &Rational, mu2: &Rational) -> Rational {
    m.eval(mu1, mu2)
}

impl Add for &MassExpr {
    type Output = MassExpr;
    fn add(self, rhs: &MassExpr) -> MassExpr {
        mass_add(self, rhs)
    }
}

impl Add for MassExpr {
    type Output = MassExpr;
    fn add(self, rhs: MassExpr) -> MassExpr {
        mass_add(&self, &rhs)
    }
}

impl Sub for &MassExpr {
    type Output = MassExpr;
    fn sub(self, rhs: &MassExpr) -> MassExpr {
        MassExpr::new(&self.c1 - &rhs.c1, &self.c2 - &rhs.c2, &self.c0 - &rhs.c0)
    }
}

impl Sub for MassExpr {
    type Output = MassExpr;
    fn sub(self, rhs: MassExpr) -> MassExpr {
        &self - &rhs
    }
}

impl Neg for &MassExpr {
    type Output = MassExpr;
    fn neg(self) -> MassExpr {
        MassExpr::new(-&self.c1, -&self.c2, -&self.c0)
    }
}

impl Mul<&MassExpr> for i64 {
    type Output = MassExpr;
    fn mul(self, rhs: &MassExpr) -> MassExpr {
        rhs.scale(&rat(self))
    }
}

impl fmt::Display for MassExpr {
    /// Canonical text form `q1*mu1 + q2*mu2 + q0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*mu1 + {}*mu2 + {}",
            format_rational(&self.c1),
            format_rational(&self.c2),
            format_rational(&self.c0)
        )
    }
}

impl FromStr for MassExpr {
    type Err = MassError;

    /// Accepts the canonical form and looser variants such as `2*mu1 - mu2`,
    /// `3/2 mu2 + 1` or `0`.
    fn from_str(s: &str) -> Result<Self, MassError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(MassError::Parse("empty mass expression".into()));
        }
        let mut out = MassExpr::zero();
        for (sign, term) in split_signed_terms(&compact)? {
            let (coef, var) = if let Some(head) = term.strip_suffix("mu1") {
                (head, 1)
            } else if let Some(head) = term.strip_suffix("mu2") {
                (head, 2)
            } else {
                (term, 0)
            };
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let mut q = if var != 0 && coef.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef)?
            };
            if sign {
                q = -q;
            }
            match var {
                1 => out.c1 += q,
                2 => out.c2 += q,
                _ => out.c0 += q,
            }
        }
        Ok(out)
    }
}

impl Serialize for MassExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MassExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits `a+b-c` into `(negated, term)` pairs; a sign run such as `+-`
/// multiplies out. `/`, `.` and exponent signs stay inside their term.
fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>, MassError> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            negative ^= bytes[i] == b'-';
            i += 1;
        }
        let start = i;
        while i < bytes.len() {
            let c = bytes[i];
            let in_exponent = i > start && matches!(bytes[i - 1], b'e' | b'E');
            if (c == b'+' || c == b'-') && !in_exponent {
                break;
            }
            i += 1;
        }
        if start == i {
            return Err(MassError::Parse(format!("dangling sign in {s:?}")));
        }
        terms.push((negative, &s[start..i]));
    }
    Ok(terms)
}

/// Integer witness `(n1, n2, n3)` with `expr = 2(n1*mu1 + n2*mu2 + n3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerFormCertificate {
    pub n1: BigInt,
    pub n2: BigInt,
    pub n3: BigInt,
}

impl IntegerFormCertificate {
    pub fn to_expr(&self) -> MassExpr {
        let two = BigInt::from(2);
        MassExpr::new(
            Rational::from_integer(&self.n1 * &two),
            Rational::from_integer(&self.n2 * &two),
            Rational::from_integer(&self.n3 * &two),
        )
    }
}

/// Certifies the quantized integer form of a local mass.
pub fn integer_form_certificate(m: &MassExpr) -> Result<IntegerFormCertificate, MassError> {
    let half = |q: &Rational| -> Option<BigInt> {
        if !q.is_integer() {
            return None;
        }
        let (quot, rem) = q.numer().div_rem(&BigInt::from(2));
        rem.is_zero().then_some(quot)
    };
    match (half(&m.c1), half(&m.c2), half(&m.c0)) {
        (Some(n1), Some(n2), Some(n3)) => Ok(IntegerFormCertificate { n1, n2, n3 }),
        _ => Err(MassError::NotOfForm(m.to_string())),
    }
}

/// The three rank-2 Cartan matrices `[[2, -1], [k21, 2]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanMatrix {
    A2,
    B2,
    G2,
}

impl CartanMatrix {
    pub const ALL: [CartanMatrix; 3] = [CartanMatrix::A2, CartanMatrix::B2, CartanMatrix::G2];

    pub fn k11(self) -> i64 {
        2
    }

    pub fn k22(self) -> i64 {
        2
    }

    pub fn k12(self) -> i64 {
        -1
    }

    pub fn k21(self) -> i64 {
        match self {
            CartanMatrix::A2 => -1,
            CartanMatrix::B2 => -2,
            CartanMatrix::G2 => -3,
        }
    }

    pub fn entries(self) -> [[i64; 2]; 2] {
        [[self.k11(), self.k12()], [self.k21(), self.k22()]]
    }

    pub fn label(self) -> &'static str {
        match self {
            CartanMatrix::A2 => "A2",
            CartanMatrix::B2 => "B2",
            CartanMatrix::G2 => "G2",
        }
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CartanMatrix {
    type Err = MassError;
    fn from_str(s: &str) -> Result<Self, MassError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A2" => Ok(CartanMatrix::A2),
            "B2" | "C2" => Ok(CartanMatrix::B2),
            "G2" => Ok(CartanMatrix::G2),
            other => Err(MassError::Parse(format!(
                "unknown Cartan matrix {other:?} (expected A2, B2 or G2)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(c1: i64, c2: i64, c0: i64) -> MassExpr {
        MassExpr::from_ints(c1, c2, c0)
    }

    #[test]
    fn add_examples() {
        assert_eq!(mass_add(&m(2, 0, 0), &m(0, 2, 0)), m(2, 2, 0));
        assert_eq!(mass_add(&m(2, 0, 0), &MassExpr::zero()), m(2, 0, 0));
        assert_eq!(mass_add(&m(4, 2, 0), &m(2, 2, 0)), m(6, 4, 0));
    }

    #[test]
    fn eval_examples() {
        let one = rat(1);
        assert_eq!(mass_eval(&m(2, 2, 0), &one, &one), rat(4));
        assert_eq!(mass_eval(&m(6, 2, 0), &one, &one), rat(8));
        assert_eq!(mass_eval(&MassExpr::zero(), &ratio(7, 3), &rat(-5)), rat(0));
    }

    #[test]
    fn certificate_examples() {
        let c = integer_form_certificate(&m(2, 2, 0)).unwrap();
        assert_eq!((c.n1, c.n2, c.n3), (1.into(), 1.into(), 0.into()));
        let c = integer_form_certificate(&m(12, 8, 0)).unwrap();
        assert_eq!((c.n1, c.n2, c.n3), (6.into(), 4.into(), 0.into()));
        assert!(matches!(
            integer_form_certificate(&m(3, 0, 0)),
            Err(MassError::NotOfForm(_))
        ));
        let half = MassExpr::new(ratio(1, 2), rat(0), rat(0));
        assert!(integer_form_certificate(&half).is_err());
        assert_eq!(
            integer_form_certificate(&m(-4, 6, 8)).unwrap().to_expr(),
            m(-4, 6, 8)
        );
    }

    #[test]
    fn cartan_entries() {
        assert_eq!(CartanMatrix::A2.entries(), [[2, -1], [-1, 2]]);
        assert_eq!(CartanMatrix::B2.entries(), [[2, -1], [-2, 2]]);
        assert_eq!(CartanMatrix::G2.entries(), [[2, -1], [-3, 2]]);
        assert_eq!("g2".parse::<CartanMatrix>().unwrap(), CartanMatrix::G2);
        assert!("D2".parse::<CartanMatrix>().is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.1").unwrap(), ratio(-1, 10));
        assert_eq!(parse_rational("2.5e-3").unwrap(), ratio(1, 400));
        assert_eq!(parse_rational("12E2").unwrap(), rat(1200));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_text() {
        let e = MassExpr::new(ratio(-1, 2), rat(3), rat(-1));
        assert_eq!(e.to_string(), "-1/2*mu1 + 3*mu2 + -1");
        assert_eq!(e.to_string().parse::<MassExpr>().unwrap(), e);
        assert_eq!("2*mu1 - mu2".parse::<MassExpr>().unwrap(), m(2, -1, 0));
        assert_eq!(
            "3/2 mu2 + 1".parse::<MassExpr>().unwrap(),
            MassExpr::new(rat(0), ratio(3, 2), rat(1))
        );
        assert_eq!("0".parse::<MassExpr>().unwrap(), MassExpr::zero());
        assert_eq!("mu1+mu1".parse::<MassExpr>().unwrap(), m(2, 0, 0));
        assert!("2*mu3".parse::<MassExpr>().is_err());
        assert!("2*mu1 +".parse::<MassExpr>().is_err());
    }
}
