//! Globally adaptive tensor Gauss-Kronrod (7/15) cubature over rectangles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissae on [0, 1]; odd indices and the centre are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// The 15 nodes on [-1, 1] with Kronrod weight and Gauss weight (0 if not a Gauss node).
fn rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for i in 0..8 {
        let wg = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        out[i] = (-XGK[i], WGK[i], wg);
        out[14 - i] = (XGK[i], WGK[i], wg);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    fn quarters(&self) -> [Rect; 4] {
        let xm = 0.5 * (self.x0 + self.x1);
        let ym = 0.5 * (self.y0 + self.y1);
        [
            Rect {
                x0: self.x0,
                x1: xm,
                y0: self.y0,
                y1: ym,
            },
            Rect {
                x0: xm,
                x1: self.x1,
                y0: self.y0,
                y1: ym,
            },
            Rect {
                x0: self.x0,
                x1: xm,
                y0: ym,
                y1: self.y1,
            },
            Rect {
                x0: xm,
                x1: self.x1,
                y0: ym,
                y1: self.y1,
            },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubature {
    pub value: f64,
    pub error: f64,
    /// Leaf cells in the final partition.
    pub cells: usize,
}

struct Cell {
    id: u64,
    rect: Rect,
    value: f64,
    error: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    // Largest error first; ties broken by creation order for determinism.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

fn apply<F: Fn(f64, f64) -> f64>(f: &F, r: &Rect, nodes: &[(f64, f64, f64); 15]) -> (f64, f64) {
    let (cx, hx) = (0.5 * (r.x0 + r.x1), 0.5 * (r.x1 - r.x0));
    let (cy, hy) = (0.5 * (r.y0 + r.y1), 0.5 * (r.y1 - r.y0));
    let (mut k, mut g) = (0.0, 0.0);
    for &(ny, wky, wgy) in nodes {
        let y = cy + hy * ny;
        let (mut kr, mut gr) = (0.0, 0.0);
        for &(nx, wkx, wgx) in nodes {
            let v = f(cx + hx * nx, y);
            kr += wkx * v;
            gr += wgx * v;
        }
        k += wky * kr;
        g += wgy * gr;
    }
    let area = hx * hy;
    (k * area, ((k - g) * area).abs())
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Integrates `f` over the union of `rects` until the summed error estimate
/// is at most `max(abs_tol, rel_tol * |value|)`. Fails with the partial
/// result once `max_cells` leaves would be exceeded or the integrand is not
/// finite.
pub fn integrate<F: Fn(f64, f64) -> f64>(
    f: F,
    rects: &[Rect],
    rel_tol: f64,
    abs_tol: f64,
    max_cells: usize,
) -> Result<Cubature, Cubature> {
    let nodes = rule();
    let mut next_id = 0u64;
    let mut heap = BinaryHeap::new();
    let (mut total, mut total_err) = (0.0, 0.0);
    let mut splits = 0u64;
    let mut push =
        |heap: &mut BinaryHeap<Cell>, rect: Rect, total: &mut f64, total_err: &mut f64| {
            let (value, error) = apply(&f, &rect, &nodes);
            *total += value;
            *total_err += error;
            heap.push(Cell {
                id: next_id,
                rect,
                value,
                error,
            });
            next_id += 1;
        };
    for r in rects {
        push(&mut heap, *r, &mut total, &mut total_err);
    }
    let finish = |heap: BinaryHeap<Cell>| {
        let mut cells = heap.into_vec();
        cells.sort_by_key(|c| c.id);
        Cubature {
            value: compensated_sum(cells.iter().map(|c| c.value)),
            error: compensated_sum(cells.iter().map(|c| c.error)),
            cells: cells.len(),
        }
    };
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(finish(heap));
        }
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            let out = finish(heap);
            return if out.error <= abs_tol.max(rel_tol * out.value.abs()) {
                Ok(out)
            } else {
                Err(out)
            };
        }
        if heap.len() + 3 > max_cells {
            return Err(finish(heap));
        }
        let worst = heap.pop().expect("heap is never empty");
        total -= worst.value;
        total_err -= worst.error;
        for q in worst.rect.quarters() {
            push(&mut heap, q, &mut total, &mut total_err);
        }
        splits += 1;
        // Incremental totals drift; resynchronise occasionally.
        if splits.is_multiple_of(1024) {
            total = compensated_sum(heap.iter().map(|c| c.value));
            total_err = compensated_sum(heap.iter().map(|c| c.error));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_weights() {
        let n = rule();
        let wk: f64 = n.iter().map(|t| t.1).sum();
        let wg: f64 = n.iter().map(|t| t.2).sum();
        assert!((wk - 2.0).abs() < 1e-14 && (wg - 2.0).abs() < 1e-14);
        // Gauss 7 is exact through degree 13.
        let m12: f64 = n.iter().map(|t| t.2 * t.0.powi(12)).sum();
        assert!((m12 - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_and_peaked_integrands() {
        let unit = [Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
        }];
        let r = integrate(|x, y| x * x * y, &unit, 1e-12, 0.0, 10).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(r.cells, 1);
        // Narrow Gaussian bump, mass pi * 1e-4 up to negligible tails.
        let r = integrate(
            |x, y| (-((x - 0.3).powi(2) + (y - 0.6).powi(2)) / 1e-4).exp(),
            &unit,
            1e-9,
            0.0,
            100_000,
        )
        .unwrap();
        assert!((r.value - std::f64::consts::PI * 1e-4).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let unit = [Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
        }];
        let r = integrate(|x, y| (x * y).sqrt().recip(), &unit, 1e-12, 0.0, 20);
        assert!(r.is_err());
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        assert_eq!(compensated_sum([1e16, 1.0, -1e16]), 1.0);
    }
}
