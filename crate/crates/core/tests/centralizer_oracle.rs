//! `A_W(s)` and `W^0(s)` against direct enumeration of `W(s)`.

use centsplit::centralizer::{alcove_points, analyze, brute_force_w_of_s, SemisimpleClass};
use centsplit::fundgroup::FundamentalGroup;
use centsplit::{CartanType, RootDatum};

fn sweep(type_name: &str, max_den: i64) {
    let t: CartanType = type_name.parse().unwrap();
    for datum in RootDatum::standard_isogenies(&t).unwrap().all() {
        let fg = FundamentalGroup::new(&datum).unwrap();
        for lambda in alcove_points(&datum, max_den) {
            let s = SemisimpleClass::new(&datum, lambda.clone()).unwrap();
            let data = analyze(&s, &fg).unwrap();
            let oracle = brute_force_w_of_s(&s, 1_000_000).unwrap();
            let case = format!("{} λ={}", datum.name(), lambda);
            assert_eq!(data.w0s_order as u64, oracle.w0_s_order, "{case}");
            assert_eq!(data.a_g_structure(), oracle.invariant_factors, "{case}");
            assert_eq!(
                data.w0s_order as u64 * data.a_w_s.len() as u64,
                oracle.w_s_order,
                "{case}"
            );
        }
    }
}

#[test]
fn classical_small_rank() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "A1xA1", "A1xA2"] {
        sweep(t, 4);
    }
}

#[test]
fn larger_types() {
    for t in ["A5", "B4", "C4", "D5", "F4"] {
        sweep(t, 4);
    }
}

#[test]
fn e6() {
    sweep("E6", 3);
}
