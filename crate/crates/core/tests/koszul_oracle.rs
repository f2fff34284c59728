mod common;

use common::{brute_koszul_dim, f101, random_module};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::curve::CurveModel;
use ribbon_core::ff_linalg::{binomial, Poly};
use ribbon_core::graded::algebra_from_sections;
use ribbon_core::koszul::{betti_table_of_module, koszul_cohomology, koszul_differential, koszul_dim};

fn module_strategy() -> impl Strategy<Value = (u64, usize, i64, Vec<usize>)> {
    (any::<u64>(), 1usize..=3, -1i64..=1, prop::collection::vec(0usize..=4, 3..=4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dims_match_the_brute_force_oracle((seed, n, lo, dims) in module_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(f101(), n, lo, &dims, &mut rng);
        prop_assert!(m.actions_commute());
        for q in m.lo()..m.hi() {
            for p in 0..=n {
                let want = brute_koszul_dim(&m, p, q);
                prop_assert_eq!(koszul_dim(&m, p, q).unwrap(), want, "p={} q={}", p, q);
                prop_assert_eq!(koszul_cohomology(&m, p, q).unwrap().dim, want);
            }
        }
    }

    #[test]
    fn differential_squares_to_zero((seed, n, lo, dims) in module_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(f101(), n, lo, &dims, &mut rng);
        for q in m.lo()..m.hi() - 1 {
            for p in 2..=n {
                let d1 = koszul_differential(&m, p, q).unwrap();
                let d2 = koszul_differential(&m, p - 1, q + 1).unwrap();
                prop_assert!(d2.mul(&d1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn group_dim_equals_rank_formula((seed, n, lo, dims) in module_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(f101(), n, lo, &dims, &mut rng);
        for q in m.lo()..m.hi() {
            for p in 0..=n {
                let g = koszul_cohomology(&m, p, q).unwrap();
                prop_assert_eq!(g.cocycles.cols(), g.coboundaries.cols() + g.complement.cols());
                prop_assert_eq!(g.complement.cols(), g.dim);
            }
        }
    }
}

#[test]
fn rational_normal_curves_follow_eagon_northcott() {
    let line = CurveModel::hyperelliptic(Poly::new(f101(), vec![5, 1])).unwrap();
    for n in 1..=6usize {
        let pieces: Vec<_> = (0..=2).map(|q| line.sections((q * n) as i64)).collect();
        let a = algebra_from_sections(&pieces).unwrap();
        let t = betti_table_of_module(&a.as_module(), n, 1).unwrap();
        for p in 1..=n {
            assert_eq!(t.get(p, 1), p * binomial(n, p + 1), "n={n} p={p}");
        }
        assert_eq!(t.get(0, 0), 1);
    }
}
