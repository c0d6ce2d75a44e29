//! Structured infinite subsets of ℤ: exact membership, generators and windowed views.

mod family;
pub mod recurrence;
mod tail;
mod wgreedy;

pub use family::{Base, FamilyJson, FamilySpec, Membership, TailClass, parse_window};
pub use recurrence::{
    block_bounds, block_index, block_window, gen_i, gen_j, gen_k, gen_script_i, gen_u,
};
pub use tail::{
    DEFAULT_TAIL_SPAN, MAX_TAIL_EXPONENT, Sign, TailVerdict, bit_length, default_k0,
    earliest_threshold, tail_membership,
};
pub use wgreedy::gen_w_greedy;

use crate::error::Result;
use crate::window::{IntegerWindow, WindowedSet};

pub fn materialize(f: &FamilySpec, w: IntegerWindow) -> Result<WindowedSet> {
    f.materialize(w)
}

pub fn member(f: &FamilySpec, x: i64) -> bool {
    f.member(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(lo: i64, hi: i64) -> IntegerWindow {
        IntegerWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(
            materialize(&FamilySpec::S, w(-16, -1)).unwrap().elements(),
            vec![-15, -10, -6, -4, -2]
        );
        assert_eq!(
            materialize(&FamilySpec::T, w(1, 10)).unwrap().elements(),
            vec![1, 2, 4, 8]
        );
        assert_eq!(
            materialize(&FamilySpec::V, w(-5, 5)).unwrap().elements(),
            vec![-4, -2, -1, 1, 2, 4]
        );
        assert_eq!(
            materialize(&FamilySpec::UAll, w(-70, -1))
                .unwrap()
                .elements(),
            vec![-60, -59, -58, -57, -40, -39, -30, -29, -19, -11, -2, -1]
        );
        assert_eq!(
            materialize(&FamilySpec::I(3), w(-20, -1))
                .unwrap()
                .elements(),
            vec![-15, -10]
        );
        assert!(materialize(&FamilySpec::S, w(0, 100)).unwrap().is_empty());
    }

    #[test]
    fn member_examples() {
        assert!(member(&FamilySpec::S, -2));
        assert!(!member(&FamilySpec::S, -3));
        assert!(member(&FamilySpec::S, -135));
        let shifted = FamilySpec::K(3).shifted(-17);
        assert_eq!(
            materialize(&shifted, w(-20, 0)).unwrap().elements(),
            vec![-15, -10]
        );
        let neg = FamilySpec::S.negated();
        assert_eq!(
            materialize(&neg, w(1, 16)).unwrap().elements(),
            vec![2, 4, 6, 10, 15]
        );
    }

    #[test]
    fn v_is_symmetric_union_of_powers() {
        let win = w(-8, 8);
        let v = materialize(&FamilySpec::V, win).unwrap();
        assert_eq!(v.negate().unwrap(), v);
        let t = materialize(&FamilySpec::T, win).unwrap();
        assert_eq!(t.union(&t.negate().unwrap()).unwrap(), v);
    }

    #[test]
    fn far_windows_use_pointwise_membership() {
        let far = w(-(1 << 40) - 300, -(1 << 40) + 300);
        let s = materialize(&FamilySpec::S, far).unwrap();
        for x in far.iter() {
            assert_eq!(s.contains(x), member(&FamilySpec::S, x));
        }
        let u = materialize(&FamilySpec::UAll, far).unwrap();
        for x in far.iter() {
            assert_eq!(u.contains(x), member(&FamilySpec::UAll, x));
        }
    }

    #[test]
    fn json_and_shorthand() {
        let specs = [
            r#"{"kind":"S"}"#,
            r#"{"kind":"I","n":3}"#,
            r#"{"kind":"U"}"#,
            r#"{"kind":"U","n":4}"#,
            r#"{"kind":"script_I","n":2}"#,
            r#"{"kind":"shift","base":{"kind":"K","n":3},"c":-17}"#,
            r#"{"kind":"minus","base":{"kind":"S"},"removed":[-2]}"#,
            r#"{"kind":"product","factors":[{"kind":"S"},{"kind":"T"}]}"#,
        ];
        for s in specs {
            let f = FamilySpec::parse(s).unwrap();
            assert_eq!(serde_json::to_string(&f).unwrap(), s);
        }
        assert_eq!(FamilySpec::parse("I:3").unwrap(), FamilySpec::I(3));
        assert_eq!(FamilySpec::parse("U").unwrap(), FamilySpec::UAll);
        assert_eq!(FamilySpec::parse("U:4").unwrap(), FamilySpec::U(4));
        assert_eq!(FamilySpec::parse("-S").unwrap(), FamilySpec::S.negated());
        assert!(FamilySpec::parse("Q").is_err());
        assert!(FamilySpec::parse("I").is_err());
        assert!(FamilySpec::parse("I:x").is_err());
        let wg = FamilySpec::parse("W:-16..16").unwrap();
        let back = FamilySpec::parse(&serde_json::to_string(&wg).unwrap()).unwrap();
        assert_eq!(back, wg);
    }

    #[test]
    fn products_materialize_on_boxes() {
        use crate::window::LatticeWindow;
        let p = FamilySpec::Product(vec![FamilySpec::S, FamilySpec::T]);
        let b = LatticeWindow::new(vec![w(-8, -1), w(1, 8)]).unwrap();
        let set = p.materialize_lattice(&b).unwrap();
        assert_eq!(set.len(), 3 * 4);
        for q in set.points() {
            assert!(p.member_point(q));
        }
        assert!(!p.member_point(&[-3, 1]));
        assert!(p.materialize(w(0, 1)).is_err());
    }

    fn arb_family() -> impl Strategy<Value = FamilySpec> {
        let leaf = prop_oneof![
            (0u32..12).prop_map(FamilySpec::J),
            (0u32..12).prop_map(FamilySpec::K),
            (0u32..12).prop_map(FamilySpec::I),
            (0u32..12).prop_map(FamilySpec::ScriptI),
            (0u32..12).prop_map(FamilySpec::U),
            Just(FamilySpec::S),
            Just(FamilySpec::T),
            Just(FamilySpec::UAll),
            Just(FamilySpec::V),
        ];
        leaf.prop_recursive(2, 6, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(FamilySpec::negated),
                (inner.clone(), -500i64..500).prop_map(|(f, c)| f.shifted(c)),
                (inner, proptest::collection::vec(-300i64..300, 0..4))
                    .prop_map(|(f, r)| FamilySpec::minus(f, r)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn member_agrees_with_materialize(f in arb_family(), x in -5000i64..5000, pad in 0i64..200) {
            let win = w(x - pad, x + 3);
            prop_assert_eq!(materialize(&f, win).unwrap().contains(x), member(&f, x));
        }
    }
}
