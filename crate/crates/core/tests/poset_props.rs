mod common;

use finspace::{parse_poset, FinitePoset};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn axioms_hold(p in common::poset(7)) {
        prop_assert!(p.check_axioms().is_ok());
    }

    #[test]
    fn product_order_is_componentwise(p in common::poset(4), q in common::poset(4)) {
        let pq = p.product(&q);
        prop_assert_eq!(pq.len(), p.len() * q.len());
        for a in p.elements() {
            for b in q.elements() {
                for c in p.elements() {
                    for d in q.elements() {
                        let lhs = pq.leq(a * q.len() + b, c * q.len() + d);
                        prop_assert_eq!(lhs, p.leq(a, c) && q.leq(b, d));
                    }
                }
            }
        }
        let maxima = pq.maximal_elements().len();
        prop_assert_eq!(maxima, p.maximal_elements().len() * q.maximal_elements().len());
    }

    #[test]
    fn opposite_reverses(p in common::poset(7)) {
        let op = p.opposite();
        for x in p.elements() {
            for y in p.elements() {
                prop_assert_eq!(op.leq(x, y), p.leq(y, x));
            }
        }
        prop_assert_eq!(op.maximal_elements(), p.minimal_elements());
        prop_assert_eq!(op.opposite(), p);
    }

    #[test]
    fn down_sets_are_smallest_opens(p in common::poset(7), picks in proptest::collection::vec(any::<bool>(), 7)) {
        let seeds: Vec<usize> = p.elements().filter(|&x| picks[x]).collect();
        let d = p.down_set(&seeds);
        for x in p.elements() {
            let expected = seeds.iter().any(|&s| p.leq(x, s));
            prop_assert_eq!(d.contains(x), expected);
        }
    }

    #[test]
    fn linear_extension_respects_order(p in common::poset(7)) {
        let order = p.linear_extension();
        let mut pos = vec![0; p.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        for x in p.elements() {
            for y in p.elements() {
                if p.lt(x, y) {
                    prop_assert!(pos[x] < pos[y]);
                }
            }
        }
    }

    #[test]
    fn text_and_json_round_trip(p in common::poset(7)) {
        let back = parse_poset(&p.to_text()).unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        prop_assert_eq!(&parse_poset(&json).unwrap(), &p);
    }

    #[test]
    fn isomorphic_to_scrambled_copy(
        n in 1usize..7,
        bits in proptest::collection::vec(any::<bool>(), 15),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let ident: Vec<usize> = (0..n).collect();
        let perm: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let p = common::build(n, &bits, &ident);
        let q = common::build(n, &bits, &perm);
        let iso = p.isomorphism_to(&q).expect("same shape");
        for x in p.elements() {
            for y in p.elements() {
                prop_assert_eq!(p.leq(x, y), q.leq(iso[x], iso[y]));
            }
        }
    }
}

#[test]
fn chain_and_antichain_are_not_isomorphic() {
    assert!(!FinitePoset::chain(3).is_isomorphic(&FinitePoset::antichain(3)));
    assert!(FinitePoset::chain(3).is_isomorphic(&FinitePoset::chain(3).opposite()));
}

#[test]
fn parse_errors_carry_lines() {
    let err = parse_poset("element a\nelement b\ncover a < c\n").unwrap_err();
    assert!(matches!(err, finspace::Error::UnknownLabel(_)), "{err:?}");
    let err = parse_poset("element a\nbogus line\n").unwrap_err();
    assert!(matches!(err, finspace::Error::Parse { line: 2, .. }), "{err:?}");
    let err = parse_poset("element a\nelement b\ncover a < b\ncover b < a\n").unwrap_err();
    assert!(matches!(err, finspace::Error::Cycle(..)), "{err:?}");
}
