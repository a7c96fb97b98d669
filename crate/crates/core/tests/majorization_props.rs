use covacap::majorization::{
    descending, majorizes, max_prefix_excess, pad, product_distribution, ProbVector,
};
use covacap::rational::{ratio, Rational};
use proptest::prelude::*;

fn exact(len: std::ops::Range<usize>) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(0i64..20, len).prop_filter_map("zero total", |raw| {
        let total: i64 = raw.iter().sum();
        (total > 0).then(|| {
            ProbVector::exact(
                raw.iter()
                    .map(|&x| ratio(x, total))
                    .collect::<Vec<Rational>>(),
            )
            .unwrap()
        })
    })
}

fn float(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len).prop_filter_map("zero total", |raw| {
        let total: f64 = raw.iter().sum();
        (total > 1e-6).then(|| raw.iter().map(|x| x / total).collect())
    })
}

/// Mixes `v` by a random doubly stochastic matrix (a convex combination of permutations).
fn mix(v: &[f64], perms: &[(Vec<usize>, f64)]) -> Vec<f64> {
    let total: f64 = perms.iter().map(|(_, w)| w).sum();
    (0..v.len())
        .map(|i| perms.iter().map(|(p, w)| w / total * v[p[i]]).sum())
        .collect()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn majorization_is_reflexive(p in exact(1..8)) {
        prop_assert!(majorizes(&p, &p));
        prop_assert!(majorizes(&descending(&p), &p));
    }

    #[test]
    fn point_mass_and_uniform_bracket_everything(p in exact(1..8)) {
        let n = p.len();
        let point = ProbVector::exact((0..n).map(|i| ratio(i64::from(i == 0), 1)).collect()).unwrap();
        let uniform = ProbVector::exact(vec![ratio(1, n as i64); n]).unwrap();
        prop_assert!(majorizes(&point, &p));
        prop_assert!(majorizes(&p, &uniform));
    }

    #[test]
    fn majorization_is_transitive(a in exact(4..5), b in exact(4..5), c in exact(4..5)) {
        if majorizes(&a, &b) && majorizes(&b, &c) {
            prop_assert!(majorizes(&a, &c));
        }
    }

    #[test]
    fn doubly_stochastic_mixing_is_majorized(
        (v, perms) in (2usize..7).prop_flat_map(|n| (float(n), prop::collection::vec((permutation(n), 0.01f64..1.0), 1..5)))
    ) {
        let mixed = mix(&v, &perms);
        prop_assert!(max_prefix_excess(&mixed, &v) <= 1e-12);
        // Convex symmetric functions respect the order.
        for phi in [|x: f64| x * x, |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 }, |x: f64| (x - 0.25).max(0.0)] {
            let lhs: f64 = mixed.iter().map(|&x| phi(x)).sum();
            let rhs: f64 = v.iter().map(|&x| phi(x)).sum();
            prop_assert!(lhs <= rhs + 1e-12);
        }
    }

    #[test]
    fn padding_preserves_majorization(p in exact(4..5), q in exact(4..5), zeros in 0usize..4) {
        prop_assert_eq!(majorizes(&p, &q), majorizes(&pad(&p, zeros), &pad(&q, zeros)));
    }

    #[test]
    fn product_distribution_is_a_distribution(p in exact(1..5), q in exact(1..5)) {
        let pq = product_distribution(&p, &q);
        prop_assert_eq!(pq.len(), p.len() * q.len());
        let total: Rational = pq.as_exact().unwrap().iter().sum();
        prop_assert_eq!(total, ratio(1, 1));
    }
}
