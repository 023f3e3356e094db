//! Integer matrices `M_K` whose non-singularity rules out even-integer
//! corrections to a pair of masses, and the exact Q-linear-independence test
//! for vortex strengths.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gamma::{enumerate_gamma, GammaError};
use crate::mass::{format_rational, CartanMatrix, MassExpr, Rational};
use crate::pohozaev::MassPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("SingularFound: M_K is singular for {algebra} at l = {input}")]
    SingularFound {
        algebra: CartanMatrix,
        input: MKInput,
    },
    #[error("BasisMismatch: {0}")]
    BasisMismatch(String),
    #[error("NotIntegral: {0} needs integer mu-coefficients and a zero constant term")]
    NotIntegral(String),
    #[error("InvalidBasis: {0}")]
    InvalidBasis(String),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

impl RigidityError {
    pub fn name(&self) -> &'static str {
        match self {
            RigidityError::SingularFound { .. } => "SingularFound",
            RigidityError::BasisMismatch(_) => "BasisMismatch",
            RigidityError::NotIntegral(_) => "NotIntegral",
            RigidityError::InvalidBasis(_) => "InvalidBasis",
            RigidityError::Gamma(e) => e.name(),
        }
    }
}

/// `s1 = l11 mu1 + l12 mu2`, `s2 = l21 mu1 + l22 mu2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MKInput {
    pub l11: i64,
    pub l12: i64,
    pub l21: i64,
    pub l22: i64,
}

impl MKInput {
    pub fn new(l11: i64, l12: i64, l21: i64, l22: i64) -> Self {
        MKInput { l11, l12, l21, l22 }
    }

    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.l11, self.l12, self.l21, self.l22)
    }
}

impl fmt::Display for MKInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l11, self.l12, self.l21, self.l22)
    }
}

impl TryFrom<&MassPair> for MKInput {
    type Error = RigidityError;

    fn try_from(p: &MassPair) -> Result<Self, RigidityError> {
        fn coeffs(e: &MassExpr) -> Option<(i64, i64)> {
            if !e.c0().is_zero() || !e.c1().is_integer() || !e.c2().is_integer() {
                return None;
            }
            Some((e.c1().to_integer().to_i64()?, e.c2().to_integer().to_i64()?))
        }
        match (coeffs(&p.s1), coeffs(&p.s2)) {
            (Some((l11, l12)), Some((l21, l22))) => Ok(MKInput { l11, l12, l21, l22 }),
            _ => Err(RigidityError::NotIntegral(p.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MKMatrix {
    pub entries: [[i64; 2]; 2],
}

impl MKMatrix {
    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// Nonzero integer vectors `(m1, m2)` with `|m_i| <= bound` that the
    /// matrix annihilates.
    pub fn kernel_in_box(&self, bound: i64) -> Vec<(i64, i64)> {
        let [[a, b], [c, d]] = self.entries;
        let mut out = Vec::new();
        for m1 in -bound..=bound {
            for m2 in -bound..=bound {
                if (m1, m2) != (0, 0) && a * m1 + b * m2 == 0 && c * m1 + d * m2 == 0 {
                    out.push((m1, m2));
                }
            }
        }
        out
    }
}

/// Row 1 collects the `mu1` coefficients and row 2 the `mu2` coefficients
/// of the linear system in the corrections `(m1, m2)`:
///
/// ```text
/// [ 2k21 l11 + k12 k21 l21 - 2k21    2k12 l21 + k12 k21 l11        ]
/// [ 2k21 l12 + k12 k21 l22           2k12 l22 + k12 k21 l12 - 2k12 ]
/// ```
pub fn mk_matrix(input: &MKInput, k: CartanMatrix) -> MKMatrix {
    let (k12, k21) = (k.k12(), k.k21());
    let MKInput { l11, l12, l21, l22 } = *input;
    MKMatrix {
        entries: [
            [
                2 * k21 * l11 + k12 * k21 * l21 - 2 * k21,
                2 * k12 * l21 + k12 * k21 * l11,
            ],
            [
                2 * k21 * l12 + k12 * k21 * l22,
                2 * k12 * l22 + k12 * k21 * l12 - 2 * k12,
            ],
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MKCertificateRow {
    pub pair: MassPair,
    pub input: MKInput,
    pub matrix: MKMatrix,
    pub determinant: i64,
}

/// Determinant of `M_K` for every element of the admissible set; fails with
/// `SingularFound` on the first vanishing determinant.
pub fn mk_nonsingular_certificate(k: CartanMatrix) -> Result<Vec<MKCertificateRow>, RigidityError> {
    let gamma = enumerate_gamma(k)?;
    let mut rows = Vec::with_capacity(gamma.len());
    for pair in gamma.iter() {
        let input = MKInput::try_from(pair)?;
        let matrix = mk_matrix(&input, k);
        let determinant = matrix.determinant();
        if determinant == 0 {
            return Err(RigidityError::SingularFound { algebra: k, input });
        }
        rows.push(MKCertificateRow {
            pair: pair.clone(),
            input,
            matrix,
            determinant,
        });
    }
    Ok(rows)
}

/// Coordinates of a real number in a declared finite Q-basis. The first
/// basis element must be `"1"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QVector {
    basis: Vec<String>,
    coords: Vec<Rational>,
}

impl QVector {
    pub fn new(basis: Vec<String>, coords: Vec<Rational>) -> Result<Self, RigidityError> {
        if basis.first().map(String::as_str) != Some("1") {
            return Err(RigidityError::InvalidBasis(format!(
                "basis must start with \"1\", got {basis:?}"
            )));
        }
        if basis.len() != coords.len() {
            return Err(RigidityError::InvalidBasis(format!(
                "{} basis elements but {} coordinates",
                basis.len(),
                coords.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = basis.iter().find(|b| !seen.insert(b.as_str())) {
            return Err(RigidityError::InvalidBasis(format!(
                "basis element {dup:?} repeated"
            )));
        }
        Ok(QVector { basis, coords })
    }

    /// A rational number, i.e. a multiple of the basis element `1`.
    pub fn rational(q: Rational) -> Self {
        QVector {
            basis: vec!["1".to_string()],
            coords: vec![q],
        }
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `Some(q)` when every non-unit coordinate vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut v = self.coords.clone();
        v.resize(len, Rational::zero());
        v
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .basis
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| {
                if b == "1" {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), b)
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

/// Brings vectors onto a common basis. A basis that is a prefix of another
/// is a sub-basis of it, so its vectors embed by zero padding; anything else
/// is a mismatch.
pub fn common_basis<'a>(
    vectors: &[&'a QVector],
) -> Result<(&'a [String], Vec<Vec<Rational>>), RigidityError> {
    let longest = vectors
        .iter()
        .map(|v| v.basis())
        .max_by_key(|b| b.len())
        .ok_or_else(|| RigidityError::BasisMismatch("no vectors".into()))?;
    for v in vectors {
        if !longest.starts_with(v.basis()) {
            return Err(RigidityError::BasisMismatch(format!(
                "{:?} vs {:?}",
                v.basis(),
                longest
            )));
        }
    }
    Ok((
        longest,
        vectors.iter().map(|v| v.padded(longest.len())).collect(),
    ))
}

/// Rank of a rational matrix by fraction-exact Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::one() / &rows[rank][col];
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// True iff `1, alpha1, alpha2` are linearly independent over Q.
pub fn q_condition(alpha1: &QVector, alpha2: &QVector) -> Result<bool, RigidityError> {
    let (basis, coords) = common_basis(&[alpha1, alpha2])?;
    let mut unit = vec![Rational::zero(); basis.len()];
    unit[0] = Rational::one();
    let mut rows = vec![unit];
    rows.extend(coords);
    Ok(rational_rank(rows) == 3)
}
