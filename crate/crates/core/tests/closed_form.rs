use sprouts_core::formulas::cs4_nimber_formula;
use sprouts_core::{grundy, CircularState, LocalTable, Nimber};

#[test]
fn four_spot_nimbers_match_closed_form() {
    let table = LocalTable::new();
    let mut mismatches = Vec::new();
    for q in 0..=14u32 {
        for p in 0..=q {
            let brute = grundy(&CircularState::cs4(p, q).unwrap(), &table);
            let formula = cs4_nimber_formula(p.into(), q.into());
            if brute != formula {
                mismatches.push((p, q, brute, formula));
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn four_spot_nimbers_are_positive_once_both_sides_have_tips() {
    // joining the two singleton spots leaves [p,0,1,0] + [1,0,q,0], which is
    // 1 xor 1 = 0 when p >= 1; with p = 0 the left part is dead and the
    // position itself is the zero game
    let table = LocalTable::new();
    assert_eq!(grundy(&CircularState::cs4(0, 0).unwrap(), &table), Nimber(1));
    for q in 1..=14u32 {
        assert_eq!(grundy(&CircularState::cs4(0, q).unwrap(), &table), Nimber(0));
        for p in 1..=q {
            assert!(grundy(&CircularState::cs4(p, q).unwrap(), &table) >= Nimber(1));
        }
    }
}
