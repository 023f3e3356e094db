//! Rational developing maps `f` of the Liouville equation `Δu + e^u = 0`
//! on the plane, with
//!
//! ```text
//! e^u = 8 |f'|^2 / (1 + |f|^2)^2.
//! ```
//!
//! The constant 8 is the one for which `u` solves the equation (compare the
//! standard bubble `log 8λ²/(1+λ²|z|²)²`) and for which the total mass is
//! `8π deg f`. A constant of 4 appears in some statements of this formula
//! but is inconsistent with that mass identity; it would give `4π deg f`.
//!
//! Writing `f = N/D` and `W = N'D - ND'`, the density is
//! `8|W|^2 / (|N|^2 + |D|^2)^2`, which is symmetric in `N, D` and so is
//! evaluated the same way at poles and at zeros of `f`.

pub mod cpoly;
pub mod exact;
pub mod quadrature;
pub mod roots;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use cpoly::CPoly;
use exact::QPoly;
use quadrature::{integrate, Rect};
use roots::{aberth, roots_with_multiplicity, ClusterError, Root};

pub const DEFAULT_REL_TOL: f64 = 1e-6;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
pub const DEFAULT_MAX_CELLS: usize = 200_000;
/// Radius at which the boundary log-slope is measured.
pub const LOG_SLOPE_RADIUS: f64 = 1e3;
const SLOPE_SAMPLES: usize = 64;
const CIRCLE_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiouvilleError {
    #[error("ZeroDenominator: the denominator is identically zero")]
    ZeroDenominator,
    #[error("ConstantMap: f is constant")]
    ConstantMap,
    #[error("InvalidCoefficient: {0}")]
    InvalidCoefficient(String),
    #[error("EvaluationAtUndefinedPoint: {0}")]
    EvaluationAtUndefinedPoint(String),
    #[error("QuadratureNonConvergence: estimate {value} with error {error} after {cells} cells")]
    QuadratureNonConvergence {
        value: f64,
        error: f64,
        cells: usize,
    },
    #[error("RootClusterAmbiguous: roots near {near} cannot be grouped at tolerance {tol:e}")]
    RootClusterAmbiguous { near: Complex64, tol: f64 },
    #[error("NotAVortex: f'({point}) does not vanish (relative size {residual:e})")]
    NotAVortex { point: Complex64, residual: f64 },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl LiouvilleError {
    pub fn name(&self) -> &'static str {
        match self {
            LiouvilleError::ZeroDenominator => "ZeroDenominator",
            LiouvilleError::ConstantMap => "ConstantMap",
            LiouvilleError::InvalidCoefficient(_) => "InvalidCoefficient",
            LiouvilleError::EvaluationAtUndefinedPoint(_) => "EvaluationAtUndefinedPoint",
            LiouvilleError::QuadratureNonConvergence { .. } => "QuadratureNonConvergence",
            LiouvilleError::RootClusterAmbiguous { .. } => "RootClusterAmbiguous",
            LiouvilleError::NotAVortex { .. } => "NotAVortex",
            LiouvilleError::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

impl From<ClusterError> for LiouvilleError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Ambiguous { near, tol } => {
                LiouvilleError::RootClusterAmbiguous { near, tol }
            }
        }
    }
}

/// Numerator, denominator and Wronskian of one chart, in floating point.
#[derive(Debug, Clone, PartialEq)]
struct Chart {
    num: CPoly,
    den: CPoly,
    w: CPoly,
}

impl Chart {
    fn new(num: &QPoly, den: &QPoly) -> Self {
        let w = wronskian(num, den);
        Chart {
            num: CPoly::new(num.to_complex()),
            den: CPoly::new(den.to_complex()),
            w: CPoly::new(w.to_complex()),
        }
    }

    fn density(&self, z: Complex64) -> f64 {
        let s = self.num.eval(z).norm_sqr() + self.den.eval(z).norm_sqr();
        8.0 * self.w.eval(z).norm_sqr() / (s * s)
    }
}

fn wronskian(num: &QPoly, den: &QPoly) -> QPoly {
    &(&num.derivative() * den) - &(num * &den.derivative())
}

/// A non-constant rational map `N/D` in lowest terms. Coefficients are in
/// ascending order, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    num: QPoly,
    den: QPoly,
    w: QPoly,
    degree: usize,
    near: Chart,
    /// `F(w) = f(1/w)`, used for `|z| > 1`.
    far: Chart,
}

impl RationalMap {
    /// Cancels the exact common factor of `num` and `den` (exact with respect
    /// to the given floating-point coefficients).
    pub fn new(num: &[Complex64], den: &[Complex64]) -> Result<Self, LiouvilleError> {
        let bad = || LiouvilleError::InvalidCoefficient("coefficients must be finite".into());
        let n = QPoly::from_complex(num).ok_or_else(bad)?;
        let d = QPoly::from_complex(den).ok_or_else(bad)?;
        RationalMap::from_exact(n, d)
    }

    fn from_exact(n: QPoly, d: QPoly) -> Result<Self, LiouvilleError> {
        if d.is_zero() {
            return Err(LiouvilleError::ZeroDenominator);
        }
        if n.is_zero() {
            return Err(LiouvilleError::ConstantMap);
        }
        let g = n.gcd(&d);
        let (n, d) = (n.div_rem(&g).0, d.div_rem(&g).0);
        // Normalise so the denominator is monic.
        let lead = d.coeffs().last().expect("nonzero").inv();
        let (n, d) = (n.scale(&lead), d.scale(&lead));
        let w = wronskian(&n, &d);
        if w.is_zero() {
            return Err(LiouvilleError::ConstantMap);
        }
        let degree = n.degree().unwrap_or(0).max(d.degree().unwrap_or(0));
        let near = Chart::new(&n, &d);
        let far = Chart::new(&n.reversed(degree), &d.reversed(degree));
        Ok(RationalMap {
            num: n,
            den: d,
            w,
            degree,
            near,
            far,
        })
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self, LiouvilleError> {
        let c = |v: &[f64]| {
            v.iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>()
        };
        RationalMap::new(&c(num), &c(den))
    }

    pub fn polynomial(coeffs: &[Complex64]) -> Result<Self, LiouvilleError> {
        RationalMap::new(coeffs, &[Complex64::new(1.0, 0.0)])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Result<Self, LiouvilleError> {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        RationalMap::from_real(&c, &[1.0])
    }

    /// `1/f`.
    pub fn inverse(&self) -> RationalMap {
        RationalMap::from_exact(self.den.clone(), self.num.clone())
            .expect("1/f of a valid map is valid")
    }

    pub fn numerator(&self) -> Vec<Complex64> {
        self.num.to_complex()
    }

    pub fn denominator(&self) -> Vec<Complex64> {
        self.den.to_complex()
    }

    /// `f' D^2 = N'D - ND'`, in floating point.
    pub fn wronskian(&self) -> Vec<Complex64> {
        self.w.to_complex()
    }

    /// `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        let d = self.near.den.eval(z);
        (d != Complex64::new(0.0, 0.0)).then(|| self.near.num.eval(z) / d)
    }

    /// Local multiplicity of `f` at infinity: the order of `F - F(0)` (or of
    /// `1/F`) at `w = 0`, computed exactly.
    pub fn multiplicity_at_infinity(&self) -> usize {
        let (n, d) = (
            self.num.degree().unwrap_or(0),
            self.den.degree().unwrap_or(0),
        );
        if n != d {
            return n.abs_diff(d);
        }
        // f(inf) = c finite; f - c = (N - cD)/D.
        let c = self.num.coeffs()[n].clone();
        let diff = &self.num - &self.den.scale(&c);
        d - diff.degree().expect("f is not constant")
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &QPoly| {
            p.to_complex()
                .iter()
                .map(|c| format_complex(*c))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "[{}] / [{}]", show(&self.num), show(&self.den))
    }
}

/// `a`, `a+bi` or `a-bi` with shortest round-trip formatting.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `3`, `-2.5e-1`, `2i`, `-i`, `1+2i`, `1.5-0.25j`.
pub fn parse_complex(text: &str) -> Result<Complex64, LiouvilleError> {
    let bad =
        || LiouvilleError::InvalidCoefficient(format!("cannot parse complex number '{text}'"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split before the last sign that is not leading and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let z = Complex64::new(re, im);
    if z.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Comma-separated coefficient list, constant term first.
pub fn parse_coefficients(text: &str) -> Result<Vec<Complex64>, LiouvilleError> {
    text.split(',').map(parse_complex).collect()
}

pub fn degree(f: &RationalMap) -> usize {
    f.degree
}

/// `e^u(z)`. Points with `|z| > 1` are evaluated in the chart at infinity.
pub fn u_density(f: &RationalMap, z: Complex64) -> Result<f64, LiouvilleError> {
    if !z.is_finite() {
        return Err(LiouvilleError::EvaluationAtUndefinedPoint(format!(
            "z = {z}"
        )));
    }
    let rho = if z.norm() <= 1.0 {
        f.near.density(z)
    } else {
        let w = z.inv();
        f.far.density(w) * w.norm_sqr() * w.norm_sqr()
    };
    if rho.is_finite() {
        Ok(rho)
    } else {
        Err(LiouvilleError::EvaluationAtUndefinedPoint(format!(
            "z = {z}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassEstimate {
    pub mass: f64,
    pub error_estimate: f64,
    pub cells: usize,
}

/// `∫ e^u` over the plane: the unit disk in `z` plus the unit disk in
/// `w = 1/z`, each in polar coordinates.
pub fn total_mass(f: &RationalMap, rel_tol: f64) -> Result<MassEstimate, LiouvilleError> {
    total_mass_with_budget(f, rel_tol, DEFAULT_MAX_CELLS)
}

pub fn total_mass_with_budget(
    f: &RationalMap,
    rel_tol: f64,
    max_cells: usize,
) -> Result<MassEstimate, LiouvilleError> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "rel_tol = {rel_tol} must lie in (0, 1e-3]"
        )));
    }
    // x in [0, 1] is the radius in the z chart, x in [2, 3] is 2 + radius in the w chart.
    let integrand = |x: f64, theta: f64| {
        let (chart, r) = if x <= 1.0 {
            (&f.near, x)
        } else {
            (&f.far, x - 2.0)
        };
        r * chart.density(Complex64::from_polar(r, theta))
    };
    let mut rects = Vec::new();
    for x0 in [0.0, 2.0] {
        for i in 0..2 {
            for j in 0..4 {
                let (t0, t1) = (j as f64 * PI / 2.0, (j + 1) as f64 * PI / 2.0);
                rects.push(Rect {
                    x0: x0 + 0.5 * i as f64,
                    x1: x0 + 0.5 * (i + 1) as f64,
                    y0: t0,
                    y1: t1,
                });
            }
        }
    }
    match integrate(integrand, &rects, rel_tol, 0.0, max_cells) {
        Ok(c) => Ok(MassEstimate {
            mass: c.value,
            error_estimate: c.error,
            cells: c.cells,
        }),
        Err(c) => Err(LiouvilleError::QuadratureNonConvergence {
            value: c.value,
            error: c.error,
            cells: c.cells,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassQuantization {
    /// Total mass divided by `4π`.
    pub m: f64,
    pub is_even_integer: bool,
    pub estimate: MassEstimate,
}

pub fn mass_quantization_check(
    f: &RationalMap,
    rel_tol: f64,
) -> Result<MassQuantization, LiouvilleError> {
    let estimate = total_mass(f, rel_tol)?;
    let m = estimate.mass / (4.0 * PI);
    let is_even_integer = (m - 2.0 * (m / 2.0).round()).abs() <= 10.0 * rel_tol * m;
    Ok(MassQuantization {
        m,
        is_even_integer,
        estimate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Vortex {
    #[serde(serialize_with = "ser_complex")]
    pub location: Complex64,
    pub alpha: usize,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamificationProfile {
    pub finite_points: Vec<Vortex>,
    /// `2 deg f - Σ α_j`; the density decays like `|z|^(-2 α_∞)`.
    pub alpha_infinity: i64,
    /// Measured `d u / d log r` at `radius`.
    pub boundary_log_slope: f64,
    pub slope_radius: f64,
    /// Local multiplicity at infinity, computed independently of the roots.
    pub multiplicity_at_infinity: usize,
}

impl RamificationProfile {
    pub fn alpha_sum(&self) -> i64 {
        self.finite_points.iter().map(|v| v.alpha as i64).sum()
    }

    /// `Σ (e_p - 1)` over the sphere, including infinity.
    pub fn riemann_hurwitz_total(&self) -> i64 {
        self.alpha_sum() + self.multiplicity_at_infinity as i64 - 1
    }

    /// Relative deviation of the measured slope from `-2 α_∞`.
    pub fn slope_deviation(&self) -> f64 {
        let expected = -2.0 * self.alpha_infinity as f64;
        (self.boundary_log_slope - expected).abs() / expected.abs()
    }
}

/// Circle average of `u` at radius `r`, by the trapezoid rule.
fn mean_u(f: &RationalMap, r: f64) -> Result<f64, LiouvilleError> {
    let mut acc = 0.0;
    for k in 0..SLOPE_SAMPLES {
        let theta = 2.0 * PI * (k as f64 + 0.5) / SLOPE_SAMPLES as f64;
        acc += u_density(f, Complex64::from_polar(r, theta))?.ln();
    }
    Ok(acc / SLOPE_SAMPLES as f64)
}

/// `(ū(2R) - ū(R)) / log 2` with `ū` the circle average of `u`.
pub fn boundary_log_slope(f: &RationalMap, radius: f64) -> Result<f64, LiouvilleError> {
    Ok((mean_u(f, 2.0 * radius)? - mean_u(f, radius)?) / 2f64.ln())
}

/// Branch points of `f`: zeros of `f'` away from poles and zeros of `(1/f)'`
/// at poles, i.e. the zeros of `W = N'D - ND'`, with `α` the zero order.
pub fn ramification(f: &RationalMap, tol: f64) -> Result<RamificationProfile, LiouvilleError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "tol = {tol} must be positive"
        )));
    }
    let roots = roots_with_multiplicity(&f.w, tol)?;
    let finite_points: Vec<Vortex> = roots
        .iter()
        .map(|r: &Root| Vortex {
            location: r.z,
            alpha: r.multiplicity,
        })
        .collect();
    let alpha_sum: usize = finite_points.iter().map(|v| v.alpha).sum();
    let alpha_infinity = 2 * f.degree as i64 - alpha_sum as i64;
    // Measure well outside every branch point, zero and pole.
    let extent = finite_points
        .iter()
        .map(|v| v.location)
        .chain(aberth(&f.near.num))
        .chain(aberth(&f.near.den))
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let slope_radius = LOG_SLOPE_RADIUS * extent;
    Ok(RamificationProfile {
        finite_points,
        alpha_infinity,
        boundary_log_slope: boundary_log_slope(f, slope_radius)?,
        slope_radius,
        multiplicity_at_infinity: f.multiplicity_at_infinity(),
    })
}

/// The polynomials entering the Schwarzian `{f; z}` in terms of `W` and `D`:
///
/// ```text
/// {f; z} = W''/W - 3/2 (W'/W)^2 - 2 D''/D + 2 (W'/W)(D'/D)
/// ```
///
/// which follows from `f' = W / D^2`.
struct SchwarzianParts {
    w: [CPoly; 3],
    d: [CPoly; 3],
}

impl SchwarzianParts {
    fn new(f: &RationalMap) -> Self {
        let w1 = f.w.derivative();
        let d1 = f.den.derivative();
        let c = |p: &QPoly| CPoly::new(p.to_complex());
        SchwarzianParts {
            w: [c(&f.w), c(&w1), c(&w1.derivative())],
            d: [c(&f.den), c(&d1), c(&d1.derivative())],
        }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let [w, w1, w2] = self.w.each_ref().map(|p| p.eval(z));
        let [d, d1, d2] = self.d.each_ref().map(|p| p.eval(z));
        let lw = w1 / w;
        let ld = d1 / d;
        w2 / w - 1.5 * lw * lw - 2.0 * d2 / d + 2.0 * lw * ld
    }
}

/// Schwarzian derivative `{f; z} = f'''/f' - 3/2 (f''/f')^2`.
pub fn schwarzian(f: &RationalMap, z: Complex64) -> Complex64 {
    SchwarzianParts::new(f).eval(z)
}

/// `lim (z - p)^2 {f; z}` at a branch point `p`, as the mean of
/// `(z - p)^2 {f; z}` over circles around `p` that exclude every other
/// singularity. For a branch point of order `α` this is `-α(α+2)/2`.
pub fn schwarzian_pole_coefficient(
    f: &RationalMap,
    p: Complex64,
) -> Result<Complex64, LiouvilleError> {
    if !p.is_finite() {
        return Err(LiouvilleError::InvalidArgument(format!(
            "p = {p} is not finite"
        )));
    }
    let wf = CPoly::new(f.w.to_complex());
    let scale = wf.eval_abs(p);
    let residual = if scale > 0.0 {
        wf.eval(p).norm() / scale
    } else {
        0.0
    };
    if residual > 1e-8 {
        return Err(LiouvilleError::NotAVortex { point: p, residual });
    }
    // Other singular points of the Schwarzian: zeros of W and poles of f.
    let mut others: Vec<Complex64> = roots_with_multiplicity(&f.w, DEFAULT_CLUSTER_TOL)?
        .iter()
        .map(|r| r.z)
        .collect();
    let den = CPoly::new(f.den.to_complex());
    others.extend(aberth(&den));
    let gap = others
        .iter()
        .map(|z| (z - p).norm())
        .filter(|&d| d > 1e-6 * (1.0 + p.norm()))
        .fold(f64::INFINITY, f64::min);
    let parts = SchwarzianParts::new(f);
    let mut radius = (0.25 * gap).min(0.1 * (1.0 + p.norm()));
    let mut previous: Option<Complex64> = None;
    // Shrink until two successive averages agree.
    for _ in 0..8 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..CIRCLE_SAMPLES {
            let e =
                Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / CIRCLE_SAMPLES as f64);
            acc += e * e * parts.eval(p + e);
        }
        let c = acc / CIRCLE_SAMPLES as f64;
        if let Some(prev) = previous {
            if (c - prev).norm() <= 1e-10 * (1.0 + c.norm()) {
                return Ok(c);
            }
        }
        previous = Some(c);
        radius *= 0.5;
    }
    previous.ok_or_else(|| LiouvilleError::EvaluationAtUndefinedPoint(format!("p = {p}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DichotomyCase {
    NonIntegerBranch,
    IntegerBranch,
    /// Fits both progressions (possible when `α₀` is an integer or half-integer).
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DichotomyVerdict {
    pub case: DichotomyCase,
    /// `m = 2(α₀ + 1) + 2k`.
    pub k: Option<i64>,
    /// `m = 2 k1` with `k1 >= 1`.
    pub k1: Option<i64>,
}

/// Matches a normalized mass `m` against `2(α₀+1) + 2ℤ` and `2ℕ`, within
/// the absolute tolerance `tol`.
pub fn mass_dichotomy_classify(
    alpha0: f64,
    integer_alphas: &[i64],
    m: f64,
    tol: f64,
) -> Result<DichotomyVerdict, LiouvilleError> {
    if !(alpha0.is_finite() && alpha0 > -1.0) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "alpha0 = {alpha0} must exceed -1"
        )));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "m = {m} must be positive"
        )));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "tol = {tol} must be nonnegative"
        )));
    }
    if let Some(a) = integer_alphas.iter().find(|&&a| a < 1) {
        return Err(LiouvilleError::InvalidArgument(format!(
            "integer alpha {a} must be positive"
        )));
    }
    let shift = 2.0 * (alpha0 + 1.0);
    let k = ((m - shift) / 2.0).round();
    let k = ((m - shift - 2.0 * k).abs() <= tol).then_some(k as i64);
    let k1 = (m / 2.0).round();
    let k1 = (k1 >= 1.0 && (m - 2.0 * k1).abs() <= tol).then_some(k1 as i64);
    let case = match (k, k1) {
        (Some(_), Some(_)) => DichotomyCase::Both,
        (Some(_), None) => DichotomyCase::NonIntegerBranch,
        (None, Some(_)) => DichotomyCase::IntegerBranch,
        (None, None) => DichotomyCase::Neither,
    };
    Ok(DichotomyVerdict { case, k, k1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_pow(n: usize) -> RationalMap {
        RationalMap::monomial(n).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&z_pow(1)), 1);
        assert_eq!(degree(&z_pow(2)), 2);
        let m = RationalMap::from_real(&[-1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(degree(&m), 2);
        // (z^2 - 1)/(z - 1) reduces to z + 1.
        let m = RationalMap::from_real(&[-1.0, 0.0, 1.0], &[-1.0, 1.0]).unwrap();
        assert_eq!(degree(&m), 1);
        assert_eq!(
            RationalMap::from_real(&[3.0], &[1.0]),
            Err(LiouvilleError::ConstantMap)
        );
        assert_eq!(
            RationalMap::from_real(&[0.0, 1.0], &[0.0]),
            Err(LiouvilleError::ZeroDenominator)
        );
        assert_eq!(
            RationalMap::from_real(&[0.0, 2.0], &[0.0, 1.0]),
            Err(LiouvilleError::ConstantMap)
        );
    }

    #[test]
    fn density_examples() {
        assert_eq!(u_density(&z_pow(1), c(0.0, 0.0)).unwrap(), 8.0);
        assert_eq!(u_density(&z_pow(2), c(0.0, 0.0)).unwrap(), 0.0);
        let inv = RationalMap::from_real(&[1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(u_density(&inv, c(0.0, 0.0)).unwrap(), 8.0);
        // 8/(1+r^2)^2 at r = 2 through the far chart.
        let v = u_density(&z_pow(1), c(0.0, 2.0)).unwrap();
        assert!((v - 8.0 / 25.0).abs() < 1e-15);
        assert!(u_density(&z_pow(1), c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn masses() {
        for (f, deg) in [
            (z_pow(1), 1.0),
            (z_pow(2), 2.0),
            (
                RationalMap::from_real(&[-1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]).unwrap(),
                2.0,
            ),
        ] {
            let q = mass_quantization_check(&f, 1e-8).unwrap();
            assert!(
                (q.estimate.mass / (8.0 * PI * deg) - 1.0).abs() < 1e-8,
                "{}",
                q.estimate.mass
            );
            assert!(q.is_even_integer);
            assert!((q.m - 2.0 * deg).abs() < 1e-7);
        }
        assert!(matches!(
            total_mass(&z_pow(1), 0.5),
            Err(LiouvilleError::InvalidArgument(_))
        ));
    }

    #[test]
    fn ramification_examples() {
        let r = ramification(&z_pow(1), DEFAULT_CLUSTER_TOL).unwrap();
        assert!(r.finite_points.is_empty());
        assert_eq!(r.alpha_infinity, 2);
        for (n, alpha, ainf) in [(2, 1, 3), (3, 2, 4)] {
            let r = ramification(&z_pow(n), DEFAULT_CLUSTER_TOL).unwrap();
            assert_eq!(r.finite_points.len(), 1);
            assert_eq!(r.finite_points[0].alpha, alpha);
            assert!(r.finite_points[0].location.norm() < 1e-12);
            assert_eq!(r.alpha_infinity, ainf);
            assert!(r.slope_deviation() < 0.05);
            assert_eq!(r.riemann_hurwitz_total(), 2 * n as i64 - 2);
        }
    }

    #[test]
    fn poles_of_higher_order_are_vortices() {
        // f = 1/z^2: branch point at 0 with alpha 1, and at infinity.
        let f = RationalMap::from_real(&[1.0], &[0.0, 0.0, 1.0]).unwrap();
        let r = ramification(&f, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(r.finite_points.len(), 1);
        assert_eq!(r.finite_points[0].alpha, 1);
        assert_eq!(r.alpha_infinity, 3);
        assert_eq!(f.multiplicity_at_infinity(), 2);
    }

    #[test]
    fn schwarzian_examples() {
        for (n, expected) in [(2, -1.5), (3, -4.0), (4, -7.5)] {
            let s = schwarzian_pole_coefficient(&z_pow(n), c(0.0, 0.0)).unwrap();
            assert!((s - c(expected, 0.0)).norm() < 1e-10, "{n}: {s}");
        }
        let e = schwarzian_pole_coefficient(&z_pow(2), c(1.0, 0.0));
        assert!(matches!(e, Err(LiouvilleError::NotAVortex { .. })));
    }

    #[test]
    fn dichotomy_examples() {
        let v = mass_dichotomy_classify(0.5, &[], 3.0, 1e-9).unwrap();
        assert_eq!((v.case, v.k), (DichotomyCase::NonIntegerBranch, Some(0)));
        let v = mass_dichotomy_classify(0.5, &[], 4.0, 1e-9).unwrap();
        assert_eq!((v.case, v.k1), (DichotomyCase::IntegerBranch, Some(2)));
        assert_eq!(
            mass_dichotomy_classify(0.5, &[], 3.7, 1e-9).unwrap().case,
            DichotomyCase::Neither
        );
        assert_eq!(
            mass_dichotomy_classify(1.0, &[2], 6.0, 1e-9).unwrap().case,
            DichotomyCase::Both
        );
        assert!(mass_dichotomy_classify(-1.0, &[], 3.0, 1e-9).is_err());
        assert!(mass_dichotomy_classify(0.5, &[0], 3.0, 1e-9).is_err());
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1.5-0.25j").unwrap(), c(1.5, -0.25));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex(" -2.5e-1 ").unwrap(), c(-0.25, 0.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(
            parse_coefficients("0,1").unwrap(),
            vec![c(0.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(format_complex(c(1.0, -2.0)), "1-2i");
    }
}
