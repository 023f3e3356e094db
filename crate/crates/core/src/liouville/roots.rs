//! Polynomial roots: Aberth-Ehrlich simultaneous iteration on square-free
//! factors, Newton polishing, and clustering of nearby roots into points
//! with multiplicity.

use num_complex::Complex64;

use super::cpoly::CPoly;
use super::exact::QPoly;

const MAX_ITER: usize = 500;

/// All roots of `p` (degree >= 1) by Aberth-Ehrlich iteration.
pub fn aberth(p: &CPoly) -> Vec<Complex64> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Vec::new(),
    };
    let c = p.coeffs();
    if n == 1 {
        return vec![-c[0] / c[1]];
    }
    let dp = p.derivative();
    // Starting circle: geometric mean of root moduli, offset so no start is real.
    let lead = c[n].norm();
    let r0 = if c[0].norm() > 0.0 {
        (c[0].norm() / lead).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let r0 = if r0.is_finite() && r0 > 0.0 { r0 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pk = p.eval(z[k]);
            if pk == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pk / dp.eval(z[k]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// A few Newton steps on `p`, stopping when the step stalls.
pub fn polish(p: &CPoly, mut z: Complex64) -> Complex64 {
    let dp = p.derivative();
    for _ in 0..8 {
        let d = dp.eval(z);
        if d == Complex64::new(0.0, 0.0) {
            break;
        }
        let step = p.eval(z) / d;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// A root location with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClusterError {
    /// Two roots within the radius link a group that is wider than it.
    Ambiguous { near: Complex64, tol: f64 },
}

/// Roots of an exact polynomial with multiplicities. Exact repeated factors
/// are split off first; the remaining simple roots are then merged when
/// they lie within `tol * (1 + |z|)` of each other.
pub fn roots_with_multiplicity(p: &QPoly, tol: f64) -> Result<Vec<Root>, ClusterError> {
    let mut raw = Vec::new();
    for (factor, k) in p.square_free() {
        let fp = CPoly::new(factor.to_complex());
        for z in aberth(&fp) {
            raw.push(Root {
                z: polish(&fp, z),
                multiplicity: k,
            });
        }
    }
    cluster(raw, tol)
}

/// Groups roots that are linked by distance `<= tol * (1 + |z|)`. A linked
/// group whose members are not all pairwise within that radius has no
/// single reasonable multiplicity and is rejected.
pub fn cluster(raw: Vec<Root>, tol: f64) -> Result<Vec<Root>, ClusterError> {
    let n = raw.len();
    let close = |a: &Root, b: &Root| (a.z - b.z).norm() <= tol * (1.0 + a.z.norm().max(b.z.norm()));
    let mut group: Vec<usize> = (0..n).collect();
    // Union-find without ranks; n is small.
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if close(&raw[i], &raw[j]) {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Root> = Vec::new();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let g = find(&mut group, i);
        members[g].push(i);
    }
    for m in members.into_iter().filter(|m| !m.is_empty()) {
        for (a, &i) in m.iter().enumerate() {
            for &j in &m[a + 1..] {
                if !close(&raw[i], &raw[j]) {
                    return Err(ClusterError::Ambiguous {
                        near: raw[i].z,
                        tol,
                    });
                }
            }
        }
        let total: usize = m.iter().map(|&i| raw[i].multiplicity).sum();
        let centroid = m
            .iter()
            .map(|&i| raw[i].z * raw[i].multiplicity as f64)
            .sum::<Complex64>()
            / total as f64;
        out.push(Root {
            z: centroid,
            multiplicity: total,
        });
    }
    out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liouville::exact::GaussQ;

    #[test]
    fn aberth_finds_unit_roots() {
        // z^5 - 1
        let p = CPoly::from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let r = aberth(&p);
        assert_eq!(r.len(), 5);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!(p.eval(z).norm() < 1e-12);
        }
    }

    #[test]
    fn multiplicities_from_exact_factors() {
        // (z - 1)^3 (z + 2) expanded: z^4 - z^3 - 3z^2 + 5z - 2
        let p = QPoly::new(
            [-2, 5, -3, -1, 1]
                .iter()
                .map(|&n| GaussQ::from_int(n))
                .collect(),
        );
        let r = roots_with_multiplicity(&p, 1e-7).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].z - Complex64::new(-2.0, 0.0)).norm() < 1e-12 && r[0].multiplicity == 1);
        assert!((r[1].z - Complex64::new(1.0, 0.0)).norm() < 1e-12 && r[1].multiplicity == 3);
    }

    #[test]
    fn nearby_roots_merge_and_chains_are_rejected() {
        let root = |re: f64| Root {
            z: Complex64::new(re, 0.0),
            multiplicity: 1,
        };
        let merged = cluster(vec![root(0.5), root(0.5 + 1e-9)], 1e-7).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].multiplicity, 2);
        let chain = vec![root(0.0), root(0.8e-7), root(1.6e-7)];
        assert!(cluster(chain, 1e-7).is_err());
    }
}
