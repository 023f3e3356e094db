//! Randomized algebraic and numerical invariants.

use num_complex::Complex64;
use proptest::prelude::*;
use toda_mass::forbidden::{gamma_i, Vortex, VortexConfig};
use toda_mass::liouville::{schwarzian, total_mass, u_density, RationalMap};
use toda_mass::mass::{mass_add, ratio, CartanMatrix, MassExpr, Rational};
use toda_mass::pohozaev::{pi_residual, reflect, Component, MassPair};
use toda_mass::rigidity::{q_condition, QVector};

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn expr() -> impl Strategy<Value = MassExpr> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| MassExpr::new(a, b, c))
}

fn pair() -> impl Strategy<Value = MassPair> {
    (expr(), expr()).prop_map(|(a, b)| MassPair::new(a, b))
}

fn algebra() -> impl Strategy<Value = CartanMatrix> {
    prop_oneof![
        Just(CartanMatrix::A2),
        Just(CartanMatrix::B2),
        Just(CartanMatrix::G2)
    ]
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![Just(Component::First), Just(Component::Second)]
}

fn small_complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// `(num, den)` with nonzero leading coefficients, degrees up to 3 and 2.
fn map_coeffs() -> impl Strategy<Value = (Vec<Complex64>, Vec<Complex64>)> {
    (
        prop::collection::vec(small_complex(), 2..=4),
        prop::collection::vec(small_complex(), 1..=3),
    )
        .prop_filter("leading coefficients away from zero", |(n, d)| {
            n.last().unwrap().norm() > 0.2 && d.last().unwrap().norm() > 0.2
        })
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Taylor coefficients of a polynomial about `z`, up to order 3.
fn taylor(c: &[Complex64], z: Complex64) -> [Complex64; 4] {
    let mut work = c.to_vec();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for slot in out.iter_mut() {
        if work.is_empty() {
            break;
        }
        *slot = horner(&work, z);
        // Synthetic division by (x - z).
        let mut q = vec![Complex64::new(0.0, 0.0); work.len() - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for i in (1..work.len()).rev() {
            carry = carry * z + work[i];
            q[i - 1] = carry;
        }
        work = q;
    }
    out
}

/// `{f; z}` from the Taylor series of `N/D` about `z` by power-series division.
fn schwarzian_by_series(num: &[Complex64], den: &[Complex64], z: Complex64) -> Complex64 {
    let n = taylor(num, z);
    let d = taylor(den, z);
    let mut a = [Complex64::new(0.0, 0.0); 4];
    for k in 0..4 {
        let mut s = n[k];
        for j in 0..k {
            s -= a[j] * d[k - j];
        }
        a[k] = s / d[0];
    }
    let (f1, f2, f3) = (a[1], 2.0 * a[2], 6.0 * a[3]);
    f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mass_add_is_commutative_and_associative(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(mass_add(&a, &b), mass_add(&b, &a));
        prop_assert_eq!(mass_add(&mass_add(&a, &b), &c), mass_add(&a, &mass_add(&b, &c)));
    }

    #[test]
    fn evaluation_is_additive(a in expr(), b in expr(), mu1 in rational(), mu2 in rational()) {
        prop_assert_eq!(mass_add(&a, &b).eval(&mu1, &mu2), a.eval(&mu1, &mu2) + b.eval(&mu1, &mu2));
    }

    #[test]
    fn reflection_is_an_involution_preserving_the_residual(p in pair(), k in algebra(), c in component()) {
        let r = reflect(&p, k, c);
        prop_assert_eq!(reflect(&r, k, c), p.clone());
        prop_assert_eq!(pi_residual(&r, k), pi_residual(&p, k));
    }

    #[test]
    fn q_condition_is_symmetric_and_basis_order_free(
        a in prop::collection::vec(rational(), 3),
        b in prop::collection::vec(rational(), 3),
    ) {
        let names = |order: [&str; 3]| order.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let x = QVector::new(names(["1", "sqrt2", "sqrt3"]), a.clone()).unwrap();
        let y = QVector::new(names(["1", "sqrt2", "sqrt3"]), b.clone()).unwrap();
        let verdict = q_condition(&x, &y).unwrap();
        prop_assert_eq!(q_condition(&y, &x).unwrap(), verdict);
        let swap = |v: &[Rational]| vec![v[0].clone(), v[2].clone(), v[1].clone()];
        let xs = QVector::new(names(["1", "sqrt3", "sqrt2"]), swap(&a)).unwrap();
        let ys = QVector::new(names(["1", "sqrt3", "sqrt2"]), swap(&b)).unwrap();
        prop_assert_eq!(q_condition(&xs, &ys).unwrap(), verdict);
    }

    #[test]
    fn forbidden_values_grow_monotonically_with_the_cutoff(
        k in algebra(),
        strengths in prop::collection::vec((0i64..=6, 1i64..=3, 0i64..=6, 1i64..=3), 0..=2),
        c in component(),
        cut in 5.0f64..60.0,
        extra in 1.0f64..40.0,
    ) {
        let vortices = strengths.iter().map(|&(n1, d1, n2, d2)| Vortex::rational(ratio(n1, d1), ratio(n2, d2))).collect();
        let config = VortexConfig::new(k, vortices).unwrap();
        let low = gamma_i(&config, c, cut).unwrap().numbers();
        let high = gamma_i(&config, c, cut + extra).unwrap().numbers();
        let truncated: Vec<f64> = high.iter().copied().filter(|&v| v <= cut).collect();
        prop_assert_eq!(low, truncated);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_is_unchanged_by_inverting_the_map((num, den) in map_coeffs(), z in small_complex()) {
        let f = RationalMap::new(&num, &den).unwrap();
        let g = f.inverse();
        if let (Ok(a), Ok(b)) = (u_density(&f, z), u_density(&g, z)) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} vs {}", a, b);
        }
    }

    #[test]
    fn schwarzian_matches_series_division((num, den) in map_coeffs(), z in small_complex()) {
        let f = RationalMap::new(&num, &den).unwrap();
        let (n, d) = (f.numerator(), f.denominator());
        let w = horner(&f.wronskian(), z);
        let dz = horner(&d, z);
        // Stay clear of poles and branch points, where both sides blow up.
        prop_assume!(w.norm() > 1e-2 && dz.norm() > 1e-2);
        let expected = schwarzian_by_series(&n, &d, z);
        let got = schwarzian(&f, z);
        prop_assert!((got - expected).norm() <= 1e-7 * expected.norm().max(1.0), "{} vs {}", got, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn total_mass_is_eight_pi_times_degree((num, den) in map_coeffs()) {
        let f = RationalMap::new(&num, &den).unwrap();
        let d = toda_mass::liouville::degree(&f) as f64;
        let estimate = total_mass(&f, 1e-6).unwrap();
        let exact = 8.0 * std::f64::consts::PI * d;
        prop_assert!((estimate.mass - exact).abs() <= 1e-5 * exact, "{} vs {}", estimate.mass, exact);
    }
}
