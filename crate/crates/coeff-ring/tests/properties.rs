use coeff_ring::{q, qi, TauPoly, TrigScalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIM: usize = 2;

fn scalar_strategy() -> impl Strategy<Value = TrigScalar> {
    let term = (
        prop::collection::vec(-2i32..=2, DIM),
        any::<bool>(),
        prop::collection::vec((-4i64..=4, 1i64..=3), 1..=2),
    );
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        let mut f = TrigScalar::zero(DIM);
        for (k, is_cos, coeffs) in terms {
            let p = TauPoly::from_coeffs(coeffs.into_iter().map(|(n, d)| q(n, d)).collect());
            if is_cos {
                f.add_cos(&k, p);
            } else {
                f.add_sin(&k, p);
            }
        }
        f
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_commutes_and_distributes(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn partials_commute(f in scalar_strategy()) {
        prop_assert_eq!(f.partial(0).partial(1), f.partial(1).partial(0));
    }

    #[test]
    fn derivatives_have_zero_mean(f in scalar_strategy(), axis in 0usize..DIM) {
        prop_assert_eq!(f.partial(axis).harmonic_part().unwrap(), qi(0));
    }

    #[test]
    fn leibniz_rule(a in scalar_strategy(), b in scalar_strategy(), axis in 0usize..DIM) {
        let lhs = a.mul(&b).partial(axis);
        let rhs = a.partial(axis).mul(&b).add(&a.mul(&b.partial(axis)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_agrees_with_pointwise_product(a in scalar_strategy(), b in scalar_strategy(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let p = [x, y];
        let exact = a.mul(&b).eval_f64(&p);
        let float = a.eval_f64(&p) * b.eval_f64(&p);
        prop_assert!((exact - float).abs() < 1e-6 * (1.0 + float.abs()));
    }
}

/// Central finite difference of a closure in `f64`.
fn numeric_partial(f: impl Fn(&[f64]) -> f64, x: &[f64], axis: usize) -> f64 {
    let h = 1e-6;
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[axis] += h;
    xm[axis] -= h;
    (f(&xp) - f(&xm)) / (2.0 * h)
}

#[test]
fn derivative_matches_numerical_substitution() {
    // sin(2πx₁)cos(2πx₂), differentiated along the second axis.
    let f = TrigScalar::sin(&[1, 0], TauPoly::one()).mul(&TrigScalar::cos(&[0, 1], TauPoly::one()));
    let df = f.partial(1);
    let tau = std::f64::consts::TAU;
    let oracle = |x: &[f64]| (tau * x[0]).sin() * (tau * x[1]).cos();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x = [rng.gen_range(0..97) as f64 / 97.0, rng.gen_range(0..89) as f64 / 89.0];
        let expected = numeric_partial(oracle, &x, 1);
        assert!((df.eval_f64(&x) - expected).abs() < 1e-5, "mismatch at {x:?}");
    }
}

#[test]
fn mean_of_sine_squared_matches_quadrature() {
    let f = TrigScalar::sin(&[1], TauPoly::one()).mul(&TrigScalar::sin(&[1], TauPoly::one()));
    let n = 1000;
    let quad: f64 = (0..n).map(|i| f.eval_f64(&[(i as f64 + 0.5) / n as f64])).sum::<f64>() / n as f64;
    assert!((quad - 0.5).abs() < 1e-9);
    assert_eq!(f.harmonic_part().unwrap(), q(1, 2));
}
