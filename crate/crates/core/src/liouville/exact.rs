//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every finite `f64` is a dyadic rational, so float coefficients embed
//! exactly. Greatest common divisors and square-free splitting are then
//! exact with respect to the coefficients as given.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn zero() -> Self {
        GaussQ::default()
    }

    pub fn one() -> Self {
        GaussQ {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `None` for non-finite input.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(GaussQ {
            re: BigRational::from_float(z.re)?,
            im: BigRational::from_float(z.im)?,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> GaussQ {
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussQ {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }
}

impl Add for &GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Polynomial over `Q(i)`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<GaussQ>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<GaussQ>) -> Self {
        while coeffs.last().is_some_and(GaussQ::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_complex(coeffs: &[Complex64]) -> Option<Self> {
        Some(QPoly::new(
            coeffs
                .iter()
                .map(|&c| GaussQ::from_complex(c))
                .collect::<Option<Vec<_>>>()?,
        ))
    }

    pub fn one() -> Self {
        QPoly::new(vec![GaussQ::one()])
    }

    pub fn coeffs(&self) -> &[GaussQ] {
        &self.coeffs
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussQ::to_complex).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of leading powers of `z` dividing the polynomial.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussQ::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &GaussQ) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.coeffs.last() {
            Some(lead) => self.scale(&lead.inv()),
            None => QPoly::default(),
        }
    }

    /// `z^d p(1/z)` for `d >= degree`.
    pub fn reversed(&self, d: usize) -> QPoly {
        let mut coeffs = vec![GaussQ::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        QPoly::new(coeffs)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (QPoly::default(), self.clone());
        };
        let mut quot = vec![GaussQ::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &inv_lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&q * d);
            }
            quot[i] = q;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Square-free factors `(P_k, k)` with `self = c * prod P_k^k`, each `P_k`
    /// monic and of positive degree (Yun's algorithm).
    pub fn square_free(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f1 = self.derivative();
        let a0 = self.gcd(&f1);
        let mut b = self.div_rem(&a0).0;
        let c = f1.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), k));
            }
            k += 1;
        }
        out
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GaussQ::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &rhs.scale(&GaussQ::from_int(-1))
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::default();
        }
        let mut out = vec![GaussQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }
}
