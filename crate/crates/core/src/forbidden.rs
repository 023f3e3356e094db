//! Forbidden parameter sets `Gamma_i` built from vortex data, and the
//! compactness hypotheses that avoid them.
//!
//! `Gamma_i = { 4 pi (sum_{t in J} sigma_{i,t} + n) }` over subsets `J` of the
//! vortices, one admissible pair per vortex in `J`, and `n >= 0`. Values are
//! generated exactly when every strength is rational and in floating point
//! otherwise.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gamma::{enumerate_gamma, GammaError};
use crate::mass::{
    format_rational, parse_rational, rat, rational_to_f64, CartanMatrix, MassError, Rational,
};
use crate::pohozaev::{Component, MassPair};
use crate::rigidity::{q_condition, QVector, RigidityError};

pub const FOUR_PI: f64 = 4.0 * PI;
/// Values closer than this are reported once.
pub const DEDUP_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_VORTICES: usize = 16;
pub const DEFAULT_MAX_PROVENANCE: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForbiddenError {
    #[error("NonPositiveMu: mu = ({0}, {1}) must be positive")]
    NonPositiveMu(String, String),
    #[error("TooManyVortices: {count} vortices exceed the bound {bound}")]
    TooManyVortices { count: usize, bound: usize },
    #[error("InvalidStrength: vortex {index}: {reason}")]
    InvalidStrength { index: usize, reason: String },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("ConfigError: {0}")]
    Config(String),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Mass(#[from] MassError),
}

impl ForbiddenError {
    pub fn name(&self) -> &'static str {
        match self {
            ForbiddenError::NonPositiveMu(..) => "NonPositiveMu",
            ForbiddenError::TooManyVortices { .. } => "TooManyVortices",
            ForbiddenError::InvalidStrength { .. } => "InvalidStrength",
            ForbiddenError::InvalidArgument(_) => "InvalidArgument",
            ForbiddenError::Config(_) => "ConfigError",
            ForbiddenError::Gamma(e) => e.name(),
            ForbiddenError::Rigidity(e) => e.name(),
            ForbiddenError::Mass(e) => e.name(),
        }
    }
}

/// One vortex strength `alpha`: its coordinates in a declared Q-basis plus
/// a numeric value for floating-point evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Strength {
    pub vector: QVector,
    pub numeric: f64,
}

impl Strength {
    pub fn rational(q: Rational) -> Self {
        let numeric = rational_to_f64(&q);
        Strength {
            vector: QVector::rational(q),
            numeric,
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Strength::rational(crate::mass::ratio(n, d))
    }

    /// A strength with irrational parts; `numeric` is its real value.
    pub fn irrational(vector: QVector, numeric: f64) -> Self {
        Strength { vector, numeric }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.vector.as_rational()
    }

    pub fn is_nonnegative_integer(&self) -> bool {
        self.as_rational()
            .is_some_and(|q| q.is_integer() && !q.is_negative())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vortex {
    pub alpha1: Strength,
    pub alpha2: Strength,
}

impl Vortex {
    pub fn new(alpha1: Strength, alpha2: Strength) -> Self {
        Vortex { alpha1, alpha2 }
    }

    pub fn rational(a1: Rational, a2: Rational) -> Self {
        Vortex::new(Strength::rational(a1), Strength::rational(a2))
    }

    pub fn mu_f64(&self) -> (f64, f64) {
        (1.0 + self.alpha1.numeric, 1.0 + self.alpha2.numeric)
    }

    pub fn mu_exact(&self) -> Option<(Rational, Rational)> {
        let one = rat(1);
        Some((
            &one + self.alpha1.as_rational()?,
            &one + self.alpha2.as_rational()?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VortexConfig {
    pub algebra: CartanMatrix,
    pub vortices: Vec<Vortex>,
}

impl VortexConfig {
    /// Checks `alpha > -1` for every strength (exactly for rational ones).
    pub fn new(algebra: CartanMatrix, vortices: Vec<Vortex>) -> Result<Self, ForbiddenError> {
        let minus_one = rat(-1);
        for (index, v) in vortices.iter().enumerate() {
            for s in [&v.alpha1, &v.alpha2] {
                let ok = match s.as_rational() {
                    Some(q) => *q > minus_one,
                    None => s.numeric.is_finite() && s.numeric > -1.0,
                };
                if !ok {
                    return Err(ForbiddenError::InvalidStrength {
                        index,
                        reason: format!("alpha = {} must exceed -1", s.vector),
                    });
                }
            }
        }
        Ok(VortexConfig { algebra, vortices })
    }

    pub fn empty(algebra: CartanMatrix) -> Self {
        VortexConfig {
            algebra,
            vortices: Vec::new(),
        }
    }

    pub fn is_all_rational(&self) -> bool {
        self.vortices.iter().all(|v| v.mu_exact().is_some())
    }

    pub fn from_json(text: &str) -> Result<Self, ForbiddenError> {
        let raw: ConfigJson =
            serde_json::from_str(text).map_err(|e| ForbiddenError::Config(e.to_string()))?;
        raw.into_config()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strength = |s: &Strength| -> serde_json::Value {
            match s.as_rational() {
                Some(q) if s.vector.basis().len() == 1 => {
                    serde_json::Value::String(format_rational(q))
                }
                _ => serde_json::json!({
                    "basis": s.vector.basis(),
                    "coords": s.vector.coords().iter().map(format_rational).collect::<Vec<_>>(),
                    "numeric": s.numeric,
                }),
            }
        };
        serde_json::json!({
            "algebra": self.algebra.label(),
            "vortices": self.vortices.iter().map(|v| serde_json::json!({
                "alpha1": strength(&v.alpha1),
                "alpha2": strength(&v.alpha2),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    algebra: String,
    #[serde(default)]
    vortices: Vec<VortexJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VortexJson {
    alpha1: StrengthJson,
    alpha2: StrengthJson,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalJson {
    Text(String),
    Int(i64),
}

impl RationalJson {
    fn parse(&self) -> Result<Rational, MassError> {
        match self {
            RationalJson::Text(s) => parse_rational(s),
            RationalJson::Int(n) => Ok(rat(*n)),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StrengthJson {
    Literal(RationalJson),
    Vector {
        basis: Vec<String>,
        coords: Vec<RationalJson>,
        numeric: Option<f64>,
    },
}

impl ConfigJson {
    fn into_config(self) -> Result<VortexConfig, ForbiddenError> {
        let algebra: CartanMatrix = self.algebra.parse()?;
        let mut vortices = Vec::with_capacity(self.vortices.len());
        for (index, v) in self.vortices.iter().enumerate() {
            let a1 = strength_from_json(&v.alpha1, index)?;
            let a2 = strength_from_json(&v.alpha2, index)?;
            vortices.push(Vortex::new(a1, a2));
        }
        VortexConfig::new(algebra, vortices)
    }
}

fn strength_from_json(s: &StrengthJson, index: usize) -> Result<Strength, ForbiddenError> {
    match s {
        StrengthJson::Literal(q) => Ok(Strength::rational(q.parse()?)),
        StrengthJson::Vector {
            basis,
            coords,
            numeric,
        } => {
            let coords = coords
                .iter()
                .map(RationalJson::parse)
                .collect::<Result<Vec<_>, _>>()?;
            let vector = QVector::new(basis.clone(), coords)?;
            match (vector.as_rational().cloned(), numeric) {
                (Some(q), None) => Ok(Strength {
                    numeric: rational_to_f64(&q),
                    vector,
                }),
                (Some(q), Some(x)) => {
                    if (rational_to_f64(&q) - x).abs() > 1e-9 * (1.0 + x.abs()) {
                        return Err(ForbiddenError::InvalidStrength {
                            index,
                            reason: format!("numeric {x} disagrees with rational coordinates {q}"),
                        });
                    }
                    Ok(Strength {
                        numeric: rational_to_f64(&q),
                        vector,
                    })
                }
                (None, Some(x)) => Ok(Strength::irrational(vector, *x)),
                (None, None) => Err(ForbiddenError::InvalidStrength {
                    index,
                    reason: "irrational strength needs a \"numeric\" value".into(),
                }),
            }
        }
    }
}

/// Admissible pairs evaluated at a vortex's `(mu1, mu2)`, exactly.
pub fn local_mass_candidates_exact(
    mu1: &Rational,
    mu2: &Rational,
    k: CartanMatrix,
) -> Result<Vec<(Rational, Rational)>, ForbiddenError> {
    if *mu1 <= Rational::zero() || *mu2 <= Rational::zero() {
        return Err(ForbiddenError::NonPositiveMu(
            format_rational(mu1),
            format_rational(mu2),
        ));
    }
    Ok(enumerate_gamma(k)?
        .iter()
        .map(|p| p.eval(mu1, mu2))
        .collect())
}

/// Admissible pairs evaluated at a vortex's `(mu1, mu2)`.
pub fn local_mass_candidates(
    mu1: f64,
    mu2: f64,
    k: CartanMatrix,
) -> Result<Vec<(f64, f64)>, ForbiddenError> {
    if !(mu1 > 0.0 && mu2 > 0.0) {
        return Err(ForbiddenError::NonPositiveMu(
            mu1.to_string(),
            mu2.to_string(),
        ));
    }
    Ok(enumerate_gamma(k)?
        .iter()
        .map(|p| p.eval_f64(mu1, mu2))
        .collect())
}

/// The admissible pair chosen at one vortex of `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaChoice {
    pub vortex: usize,
    pub pair: MassPair,
}

/// How a forbidden value arises: `4 pi (sum over choices + n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Indices of the vortices in `J`, ascending.
    pub subset: Vec<usize>,
    pub choices: Vec<GammaChoice>,
    pub n: u64,
}

impl Provenance {
    /// Recomputes `4 pi (sum + n)` from the configuration alone.
    pub fn recompute(&self, config: &VortexConfig, component: Component) -> f64 {
        let mut sum = 0.0;
        for c in &self.choices {
            let (mu1, mu2) = config.vortices[c.vortex].mu_f64();
            sum += c.pair.get(component).eval_f64(mu1, mu2);
        }
        FOUR_PI * (sum + self.n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForbiddenValue {
    pub value: f64,
    /// `value / (4 pi)` as an exact rational, when generated exactly.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub exact_over_4pi: Option<Rational>,
    /// Up to `max_provenance` realizations, smallest `J` first.
    pub provenance: Vec<Provenance>,
    /// Total number of realizations `(J, choices, n)` merged into this value.
    pub realizations: u64,
}

fn serialize_opt_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForbiddenSet {
    pub component: u8,
    pub cutoff: f64,
    pub exact: bool,
    pub values: Vec<ForbiddenValue>,
}

impl ForbiddenSet {
    pub fn numbers(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.value).collect()
    }

    /// Closest value and its distance to `x`.
    pub fn nearest(&self, x: f64) -> Option<(f64, f64)> {
        self.values
            .iter()
            .map(|v| (v.value, (v.value - x).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForbiddenOptions {
    pub max_vortices: usize,
    pub max_provenance: usize,
}

impl Default for ForbiddenOptions {
    fn default() -> Self {
        ForbiddenOptions {
            max_vortices: DEFAULT_MAX_VORTICES,
            max_provenance: DEFAULT_MAX_PROVENANCE,
        }
    }
}

/// Partial sum reached while sweeping the vortices.
#[derive(Clone)]
struct Partial<V> {
    sum: V,
    provenance: Vec<Provenance>,
    realizations: u64,
}

/// Scalar used for sums: exact rationals or floats.
trait Amount: Clone {
    fn from_u64(n: u64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn to_f64(&self) -> f64;
    fn exact(&self) -> Option<Rational>;
    /// Sorts and merges entries that count as the same value.
    fn merge<T>(items: Vec<(Self, T)>, combine: impl FnMut(&mut T, T)) -> Vec<(Self, T)>;
}

impl Amount for Rational {
    fn from_u64(n: u64) -> Self {
        Rational::from_integer(n.into())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn exact(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn merge<T>(items: Vec<(Self, T)>, mut combine: impl FnMut(&mut T, T)) -> Vec<(Self, T)> {
        let mut map: BTreeMap<Rational, T> = BTreeMap::new();
        for (k, v) in items {
            match map.get_mut(&k) {
                Some(slot) => combine(slot, v),
                None => {
                    map.insert(k, v);
                }
            }
        }
        map.into_iter().collect()
    }
}

impl Amount for f64 {
    fn from_u64(n: u64) -> Self {
        n as f64
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exact(&self) -> Option<Rational> {
        None
    }
    fn merge<T>(mut items: Vec<(Self, T)>, mut combine: impl FnMut(&mut T, T)) -> Vec<(Self, T)> {
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, T)> = Vec::with_capacity(items.len());
        for (k, v) in items {
            match out.last_mut() {
                // Sums here are in units of 4 pi, so scale the tolerance.
                Some(last) if (k - last.0) * FOUR_PI <= DEDUP_TOL => combine(&mut last.1, v),
                _ => out.push((k, v)),
            }
        }
        out
    }
}

fn absorb<V>(max: usize) -> impl FnMut(&mut Partial<V>, Partial<V>) {
    move |slot, other| {
        slot.realizations = slot.realizations.saturating_add(other.realizations);
        let room = max.saturating_sub(slot.provenance.len());
        slot.provenance
            .extend(other.provenance.into_iter().take(room));
    }
}

fn sweep<V: Amount>(
    per_vortex: &[Vec<(V, MassPair)>],
    limit: f64,
    max_provenance: usize,
) -> Vec<(V, Partial<V>)> {
    let seed = Partial {
        sum: V::from_u64(0),
        provenance: vec![Provenance {
            subset: vec![],
            choices: vec![],
            n: 0,
        }],
        realizations: 1,
    };
    let mut states: Vec<(V, Partial<V>)> = vec![(seed.sum.clone(), seed)];
    for (t, options) in per_vortex.iter().enumerate() {
        let mut next = states.clone();
        for (_, partial) in &states {
            for (sigma, pair) in options {
                let sum = partial.sum.plus(sigma);
                if sum.to_f64() * FOUR_PI > limit {
                    continue;
                }
                let provenance = partial
                    .provenance
                    .iter()
                    .map(|p| {
                        let mut p = p.clone();
                        p.subset.push(t);
                        p.choices.push(GammaChoice {
                            vortex: t,
                            pair: pair.clone(),
                        });
                        p
                    })
                    .collect();
                next.push((
                    sum.clone(),
                    Partial {
                        sum,
                        provenance,
                        realizations: partial.realizations,
                    },
                ));
            }
        }
        states = V::merge(next, absorb(max_provenance));
        for (key, partial) in &mut states {
            partial.sum = key.clone();
        }
    }
    states
}

fn finish<V: Amount>(
    bases: Vec<(V, Partial<V>)>,
    component: Component,
    cutoff: f64,
    max_provenance: usize,
) -> ForbiddenSet {
    let mut shifted = Vec::new();
    for (_, base) in bases {
        let mut n = 0u64;
        loop {
            let sum = base.sum.plus(&V::from_u64(n));
            if sum.to_f64() * FOUR_PI > cutoff {
                break;
            }
            let provenance = base
                .provenance
                .iter()
                .map(|p| Provenance { n, ..p.clone() })
                .collect();
            shifted.push((
                sum.clone(),
                Partial {
                    sum,
                    provenance,
                    realizations: base.realizations,
                },
            ));
            n += 1;
        }
    }
    let merged = V::merge(shifted, absorb(max_provenance));
    let exact = merged.first().is_some_and(|(k, _)| k.exact().is_some());
    let values = merged
        .into_iter()
        .map(|(key, partial)| ForbiddenValue {
            value: key.to_f64() * FOUR_PI,
            exact_over_4pi: key.exact(),
            provenance: partial.provenance,
            realizations: partial.realizations,
        })
        .collect();
    ForbiddenSet {
        component: component.index(),
        cutoff,
        exact,
        values,
    }
}

pub fn gamma_i(
    config: &VortexConfig,
    component: Component,
    cutoff: f64,
) -> Result<ForbiddenSet, ForbiddenError> {
    gamma_i_with(config, component, cutoff, ForbiddenOptions::default())
}

/// Every value `4 pi (sum_{t in J} sigma_{i,t} + n) <= cutoff`, sorted and
/// deduplicated, with provenance.
pub fn gamma_i_with(
    config: &VortexConfig,
    component: Component,
    cutoff: f64,
    options: ForbiddenOptions,
) -> Result<ForbiddenSet, ForbiddenError> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(ForbiddenError::InvalidArgument(format!(
            "cutoff must be positive and finite, got {cutoff}"
        )));
    }
    if config.vortices.len() > options.max_vortices {
        return Err(ForbiddenError::TooManyVortices {
            count: config.vortices.len(),
            bound: options.max_vortices,
        });
    }
    let gamma = enumerate_gamma(config.algebra)?;
    // Round-off slack so values sitting exactly on the cutoff are kept.
    let limit = cutoff * (1.0 + 4.0 * f64::EPSILON);

    let mut set = if config.is_all_rational() {
        let per_vortex: Vec<Vec<(Rational, MassPair)>> = config
            .vortices
            .iter()
            .map(|v| {
                let (mu1, mu2) = v.mu_exact().expect("checked rational");
                gamma
                    .iter()
                    .map(|p| (p.get(component).eval(&mu1, &mu2), p.clone()))
                    .collect()
            })
            .collect();
        let bases = sweep(&per_vortex, limit, options.max_provenance);
        let mut set = finish(bases, component, limit, options.max_provenance);
        set.exact = true;
        set
    } else {
        let per_vortex: Vec<Vec<(f64, MassPair)>> = config
            .vortices
            .iter()
            .map(|v| {
                let (mu1, mu2) = v.mu_f64();
                gamma
                    .iter()
                    .map(|p| (p.get(component).eval_f64(mu1, mu2), p.clone()))
                    .collect()
            })
            .collect();
        let bases = sweep(&per_vortex, limit, options.max_provenance);
        let mut set = finish(bases, component, limit, options.max_provenance);
        set.exact = false;
        set
    };
    set.cutoff = cutoff;
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// All strengths are nonnegative integers: the forbidden set is `4 pi N`.
    IntegerAlphas,
    /// Every vortex has `1, alpha1, alpha2` independent over Q.
    QCondition,
    /// Neither hypothesis holds; the verdict makes no claim.
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Nearest {
    pub value: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactnessVerdict {
    pub compact_criterion_met: bool,
    pub regime: Regime,
    /// Per component; `None` in the inapplicable regime.
    pub nearest_forbidden: [Option<Nearest>; 2],
}

/// Nearest point of `4 pi N` (positive multiples only).
pub fn nearest_positive_multiple_of_4pi(rho: f64) -> Nearest {
    let n = (rho / FOUR_PI).round().max(1.0);
    let value = FOUR_PI * n;
    Nearest {
        value,
        distance: (rho - value).abs(),
    }
}

pub fn classify_regime(config: &VortexConfig) -> Result<Regime, ForbiddenError> {
    if config
        .vortices
        .iter()
        .all(|v| v.alpha1.is_nonnegative_integer() && v.alpha2.is_nonnegative_integer())
    {
        return Ok(Regime::IntegerAlphas);
    }
    for v in &config.vortices {
        if !q_condition(&v.alpha1.vector, &v.alpha2.vector)? {
            return Ok(Regime::Inapplicable);
        }
    }
    Ok(Regime::QCondition)
}

pub fn check_compactness(
    config: &VortexConfig,
    rho1: f64,
    rho2: f64,
    tol: f64,
) -> Result<CompactnessVerdict, ForbiddenError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ForbiddenError::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if !(rho1 > 0.0 && rho2 > 0.0 && rho1.is_finite() && rho2.is_finite()) {
        return Err(ForbiddenError::InvalidArgument(format!(
            "rho must be positive, got ({rho1}, {rho2})"
        )));
    }
    let regime = classify_regime(config)?;
    let nearest_forbidden = match regime {
        Regime::IntegerAlphas => [
            Some(nearest_positive_multiple_of_4pi(rho1)),
            Some(nearest_positive_multiple_of_4pi(rho2)),
        ],
        Regime::QCondition => {
            let mut out = [None, None];
            for (slot, (component, rho)) in out
                .iter_mut()
                .zip([(Component::First, rho1), (Component::Second, rho2)])
            {
                let set = gamma_i(config, component, rho + FOUR_PI)?;
                *slot = set
                    .nearest(rho)
                    .map(|(value, distance)| Nearest { value, distance });
            }
            out
        }
        Regime::Inapplicable => [None, None],
    };
    let compact_criterion_met = regime != Regime::Inapplicable
        && nearest_forbidden
            .iter()
            .all(|n| n.is_none_or(|n| n.distance > tol));
    Ok(CompactnessVerdict {
        compact_criterion_met,
        regime,
        nearest_forbidden,
    })
}

pub(crate) fn exact_label(q: &Option<Rational>) -> String {
    q.as_ref().map(format_rational).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::ratio;

    fn irrational(names: &[&str], coords: &[i64], numeric: f64) -> Strength {
        let basis = names.iter().map(|s| s.to_string()).collect();
        Strength::irrational(
            QVector::new(basis, coords.iter().map(|&c| rat(c)).collect()).unwrap(),
            numeric,
        )
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn candidates_examples() {
        let c = local_mass_candidates(1.0, 1.0, CartanMatrix::A2).unwrap();
        let mut c: Vec<_> = c.into_iter().collect();
        c.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            c,
            vec![(0.0, 2.0), (2.0, 0.0), (2.0, 4.0), (4.0, 2.0), (4.0, 4.0)]
        );

        let c = local_mass_candidates_exact(&ratio(3, 2), &rat(1), CartanMatrix::A2).unwrap();
        for want in [(3, 0), (3, 5), (5, 5), (5, 2), (0, 2)] {
            assert!(c.contains(&(rat(want.0), rat(want.1))), "{want:?}");
        }
        let c = local_mass_candidates(1.0, 1.0, CartanMatrix::B2).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.contains(&(6.0, 8.0)) && c.contains(&(6.0, 6.0)));
        assert!(matches!(
            local_mass_candidates(0.0, 1.0, CartanMatrix::A2),
            Err(ForbiddenError::NonPositiveMu(..))
        ));
        assert!(local_mass_candidates_exact(&rat(1), &rat(-1), CartanMatrix::A2).is_err());
    }

    #[test]
    fn empty_config_is_multiples_of_4pi() {
        let set = gamma_i(
            &VortexConfig::empty(CartanMatrix::A2),
            Component::First,
            30.0,
        )
        .unwrap();
        assert!(close(&set.numbers(), &[0.0, FOUR_PI, 2.0 * FOUR_PI]));
        assert!(set.exact);
    }

    #[test]
    fn trivial_vortex_has_many_provenances() {
        let cfg =
            VortexConfig::new(CartanMatrix::A2, vec![Vortex::rational(rat(0), rat(0))]).unwrap();
        let set = gamma_i(&cfg, Component::First, 30.0).unwrap();
        assert!(close(&set.numbers(), &[0.0, FOUR_PI, 2.0 * FOUR_PI]));
        // 8 pi arises from n = 2 alone and from sigma1 = 2mu1 = 2 with n = 0, among others.
        let eight_pi = &set.values[2];
        assert!(eight_pi.realizations > 1);
        for p in &eight_pi.provenance {
            assert!((p.recompute(&cfg, Component::First) - eight_pi.value).abs() < 1e-12);
        }
    }

    #[test]
    fn irrational_vortex_example() {
        let a1 = irrational(&["1", "sqrt2"], &[0, 1], std::f64::consts::SQRT_2);
        let a2 = irrational(&["1", "sqrt2", "sqrt3"], &[0, 0, 1], 3f64.sqrt());
        let cfg = VortexConfig::new(CartanMatrix::A2, vec![Vortex::new(a1, a2)]).unwrap();
        let set = gamma_i(&cfg, Component::First, 40.0).unwrap();
        assert!(!set.exact);
        assert!(close(
            &set.numbers(),
            &[0.0, FOUR_PI, 2.0 * FOUR_PI, 3.0 * FOUR_PI]
        ));
    }

    #[test]
    fn too_many_vortices() {
        let v = Vortex::rational(rat(0), rat(0));
        let cfg = VortexConfig::new(CartanMatrix::A2, vec![v; 17]).unwrap();
        assert!(matches!(
            gamma_i(&cfg, Component::First, 10.0),
            Err(ForbiddenError::TooManyVortices {
                count: 17,
                bound: 16
            })
        ));
        let opts = ForbiddenOptions {
            max_vortices: 20,
            ..Default::default()
        };
        assert!(gamma_i_with(&cfg, Component::First, 10.0, opts).is_ok());
    }

    #[test]
    fn strengths_must_exceed_minus_one() {
        assert!(
            VortexConfig::new(CartanMatrix::A2, vec![Vortex::rational(rat(-1), rat(0))]).is_err()
        );
        assert!(VortexConfig::new(
            CartanMatrix::A2,
            vec![Vortex::rational(ratio(-1, 2), rat(0))]
        )
        .is_ok());
    }

    #[test]
    fn compactness_examples() {
        let cfg =
            VortexConfig::new(CartanMatrix::A2, vec![Vortex::rational(rat(1), rat(2))]).unwrap();
        let v = check_compactness(&cfg, 10.0, 10.0, 1e-6).unwrap();
        assert_eq!(v.regime, Regime::IntegerAlphas);
        assert!(v.compact_criterion_met);
        assert!((v.nearest_forbidden[0].unwrap().distance - (FOUR_PI - 10.0)).abs() < 1e-12);

        let v = check_compactness(&cfg, 8.0 * PI, 10.0, 1e-6).unwrap();
        assert!(!v.compact_criterion_met);

        let cfg = VortexConfig::new(
            CartanMatrix::A2,
            vec![Vortex::rational(ratio(1, 2), ratio(1, 3))],
        )
        .unwrap();
        let v = check_compactness(&cfg, 10.0, 10.0, 1e-6).unwrap();
        assert_eq!(v.regime, Regime::Inapplicable);
        assert!(!v.compact_criterion_met);
        assert!(check_compactness(&cfg, 10.0, 10.0, 0.0).is_err());
    }

    #[test]
    fn q_condition_regime_uses_gamma_i() {
        let a1 = irrational(&["1", "sqrt2", "sqrt3"], &[0, 1, 0], 2f64.sqrt());
        let a2 = irrational(&["1", "sqrt2", "sqrt3"], &[0, 0, 1], 3f64.sqrt());
        let cfg = VortexConfig::new(CartanMatrix::A2, vec![Vortex::new(a1, a2)]).unwrap();
        assert_eq!(classify_regime(&cfg).unwrap(), Regime::QCondition);
        // sigma2 = 2mu2 is admissible, so 4 pi * 2(1 + sqrt3) is forbidden for rho2.
        let rho2 = FOUR_PI * 2.0 * (1.0 + 3f64.sqrt());
        let v = check_compactness(&cfg, 10.0, rho2, 1e-6).unwrap();
        assert!(!v.compact_criterion_met);
        assert!(v.nearest_forbidden[1].unwrap().distance < 1e-9);
        let v = check_compactness(&cfg, 10.0, rho2 + 0.5, 1e-6).unwrap();
        assert!(v.compact_criterion_met);
    }

    #[test]
    fn json_config_round_trip() {
        let text = r#"{"algebra": "B2", "vortices": [
            {"alpha1": "1/2", "alpha2": 0},
            {"alpha1": {"basis": ["1", "sqrt2"], "coords": ["0", "1"], "numeric": 1.4142135623730951},
             "alpha2": {"basis": ["1"], "coords": ["3/4"]}}
        ]}"#;
        let cfg = VortexConfig::from_json(text).unwrap();
        assert_eq!(cfg.algebra, CartanMatrix::B2);
        assert_eq!(cfg.vortices[0].alpha1.as_rational(), Some(&ratio(1, 2)));
        assert_eq!(cfg.vortices[1].alpha2.numeric, 0.75);
        let again = VortexConfig::from_json(&cfg.to_json().to_string()).unwrap();
        assert_eq!(again, cfg);

        assert!(VortexConfig::from_json(r#"{"algebra": "D2", "vortices": []}"#).is_err());
        let missing = r#"{"algebra": "A2", "vortices": [{"alpha1": {"basis": ["1","x"], "coords": [0, 1]}, "alpha2": "0"}]}"#;
        assert!(matches!(
            VortexConfig::from_json(missing),
            Err(ForbiddenError::InvalidStrength { .. })
        ));
    }

    #[test]
    fn exact_labels() {
        assert_eq!(exact_label(&Some(rat(3))), "3");
        assert_eq!(exact_label(&Some(ratio(5, 2))), "5/2");
        assert_eq!(exact_label(&None), "");
    }
}
