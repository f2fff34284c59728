mod common;

use std::time::Instant;

use common::table_suite;
use ribbon_core::koszul::{duality_check, hilbert_check, rcliff};

#[test]
fn every_suite_table_satisfies_duality_and_hilbert() {
    let t0 = Instant::now();
    let suite = table_suite();
    eprintln!("suite of {} tables in {:?}", suite.len(), t0.elapsed());
    for case in suite {
        let dims = case.ribbon.ring().dims().to_vec();
        assert!(duality_check(&case.table), "{}\n{}", case.label, case.table);
        assert!(hilbert_check(&case.table, &dims), "{}\n{}", case.label, case.table);
    }
}

#[test]
fn ring_pieces_and_genus_formula() {
    for case in table_suite() {
        let r = &case.ribbon;
        let g = r.model().genus() as i64;
        assert_eq!(r.p_a() as i64, 2 * g - 1 - r.conormal_degree(), "{}", case.label);
        for (q, &d) in r.ring().dims().iter().enumerate() {
            assert_eq!(d, r.s_pieces()[q].dim() + r.j_pieces()[q].dim(), "{}", case.label);
        }
    }
}

#[test]
fn rcliff_of_split_ribbons_is_twice_gonality_minus_two_when_the_gate_holds() {
    use ribbon_core::ribbon::hypothesis_gate;
    for case in table_suite() {
        let r = &case.ribbon;
        let (g, m) = (r.model().genus(), r.model().gonality());
        if g >= 1 && hypothesis_gate(g, m, r.p_a()) {
            assert_eq!(rcliff(&case.table).ok(), Some(r.invariants().lcliff), "{}\n{}", case.label, case.table);
        }
    }
}
