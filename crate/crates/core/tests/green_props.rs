mod common;

use common::f101;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::curve::CurveModel;
use ribbon_core::green::{build_syzygy_module, green_split_report, lemma_hypotheses, module_koszul_vanishing, phi_map};

/// Every pair `(i, p)` with `i + p <= 2`, on hyperelliptic models of genus
/// two and three: whenever the vanishing hypotheses hold, surjectivity of
/// `Φ_{i,p,1}` and vanishing of `K_{i,1}(M^p)` agree.
#[test]
fn lemma_cross_path_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for (g, ts) in [(2usize, -7i64..=-3), (3, -5..=-2)] {
        let c = CurveModel::random_hyperelliptic(f101(), g, &mut rng).unwrap();
        for t in ts {
            for p in 0..=2usize {
                let m = build_syzygy_module(&c, t, p).unwrap();
                for i in 0..=2 - p {
                    let v = phi_map(&m, i, 1).unwrap();
                    let dim = module_koszul_vanishing(&m, i).unwrap();
                    if lemma_hypotheses(&c, t, p) {
                        assert_eq!(v.surjective, dim == 0, "g={g} t={t} i={i} p={p}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn hyperelliptic_reports_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for (g, t) in [(2usize, -5i64), (2, -6), (3, -5)] {
        let c = CurveModel::random_hyperelliptic(f101(), g, &mut rng).unwrap();
        let r = green_split_report(&c, t).unwrap();
        assert!(r.consistent, "g={g} t={t}: {r:?}");
        if r.gate {
            assert_eq!(r.conditions, [true; 3]);
        }
    }
}

#[test]
fn quartic_report_fails_green_outside_the_gate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let c = CurveModel::random_plane(f101(), 4, &mut rng).unwrap();
    let r = green_split_report(&c, -1).unwrap();
    assert!(!r.gate);
    assert_eq!((r.rcliff, r.lcliff), (Some(2), 4));
    assert!(!r.conditions[0]);
    assert!(r.consistent);
}
