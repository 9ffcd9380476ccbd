//! Property-based spot checks of the table algebra on randomly chosen
//! corpus-style inputs.

use proptest::prelude::*;

use loopcore::groups::{abelian, cyclic, semidirect_cyclic};
use loopcore::perm::Perm;
use loopcore::table::{parse_loop_file, render_loop_file};
use loopcore::LoopTable;

fn odd_loop() -> impl Strategy<Value = LoopTable> {
    prop_oneof![
        (1usize..=6).prop_map(|k| cyclic(2 * k + 1).unwrap()),
        (1usize..=3, 1usize..=3)
            .prop_map(|(a, b)| abelian(&[2 * a + 1, 2 * b + 1]).unwrap()),
        Just(semidirect_cyclic(7, 3, 2).unwrap()),
    ]
}

proptest! {
    #[test]
    fn divisions_invert_multiplication(t in odd_loop(), x in 0usize..100, y in 0usize..100) {
        let n = t.n();
        let (x, y) = (x % n, y % n);
        prop_assert_eq!(t.ldiv(x, t.mul(x, y)), y);
        prop_assert_eq!(t.rdiv(t.mul(x, y), y), x);
        prop_assert_eq!(t.mul(x, t.ldiv(x, y)), y);
        prop_assert_eq!(t.mul(t.rdiv(x, y), y), x);
    }

    #[test]
    fn power_addition_within_an_element(t in odd_loop(), x in 0usize..100, j in -20i64..20, k in -20i64..20) {
        // Powers of a single element live in a cyclic subgroup.
        let x = x % t.n();
        prop_assert_eq!(t.mul(t.power(x, j), t.power(x, k)), t.power(x, j + k));
    }

    #[test]
    fn file_roundtrip_is_identity(t in odd_loop()) {
        let text = render_loop_file(&t);
        let back = parse_loop_file(&text, false).unwrap();
        prop_assert!(t.same_table(&back));
    }

    #[test]
    fn translations_are_inverse_consistent(t in odd_loop(), x in 0usize..100) {
        let x = x % t.n();
        let l = t.left_translation(x);
        prop_assert_eq!(l.inverse().then(&l), Perm::identity(t.n()));
        prop_assert_eq!(l.apply(0), x);
        prop_assert_eq!(l.order() % t.element_orders().order(x).unwrap(), 0);
    }
}
