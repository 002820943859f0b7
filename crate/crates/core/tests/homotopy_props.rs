mod common;

use finspace::homotopy::{
    core, core_with, enumerate_paths, homotopic, homotopy_between, is_contractible, is_order_preserving, is_zigzag,
    null_homotopy, path_space, PosetMap,
};
use finspace::{fence, Elem, FinitePoset, Limits};
use proptest::prelude::*;

/// Zigzags counted by a transfer matrix: alternately sum over `y <= z` and `y >= z`.
fn zigzag_count(p: &FinitePoset, m: usize) -> usize {
    let mut counts = vec![1usize; p.len()];
    for t in 0..m {
        counts = p
            .elements()
            .map(|z| {
                p.elements()
                    .filter(|&y| if t % 2 == 0 { p.leq(y, z) } else { p.leq(z, y) })
                    .map(|y| counts[y])
                    .sum()
            })
            .collect();
    }
    counts.iter().sum()
}

/// Every function `dom -> cod` in base-|cod| counting order, filtered.
fn all_maps_by_brute_force(dom: &FinitePoset, cod: &FinitePoset) -> Vec<Vec<Elem>> {
    let (n, k) = (dom.len(), cod.len());
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % k;
                    code /= k;
                    v
                })
                .collect::<Vec<_>>()
        })
        .filter(|f| is_order_preserving(dom, cod, f))
        .collect()
}

fn component_labels(cod: &FinitePoset, maps: &[Vec<Elem>]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..maps.len()).collect();
    fn find(label: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while label[r] != r {
            r = label[r];
        }
        label[x] = r;
        r
    }
    let le = |f: &[Elem], g: &[Elem]| f.iter().zip(g).all(|(&a, &b)| cod.leq(a, b));
    for i in 0..maps.len() {
        for j in 0..maps.len() {
            if le(&maps[i], &maps[j]) {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    (0..maps.len()).map(|i| find(&mut label, i)).collect()
}

fn is_fence(dom: &FinitePoset, cod: &FinitePoset, maps: &[Vec<Elem>]) -> bool {
    maps.iter().all(|f| is_order_preserving(dom, cod, f))
        && maps.windows(2).all(|w| {
            let le = w[0].iter().zip(&w[1]).all(|(&a, &b)| cod.leq(a, b));
            let ge = w[0].iter().zip(&w[1]).all(|(&a, &b)| cod.leq(b, a));
            le || ge
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn core_does_not_depend_on_removal_order(p in common::poset(7), picks in proptest::collection::vec(any::<usize>(), 8)) {
        let reference = core(&p);
        let mut i = 0;
        let other = core_with(&p, |beats| {
            let pick = picks[i % picks.len()] % beats.len();
            i += 1;
            pick
        });
        prop_assert!(reference.poset.is_isomorphic(&other.poset));
        // A core has no beat points left.
        prop_assert_eq!(core(&reference.poset).poset.len(), reference.poset.len());
    }

    #[test]
    fn retraction_steps_form_a_fence(p in common::poset(7)) {
        let c = core(&p);
        let steps = c.retraction_steps(p.len());
        prop_assert!(is_fence(&p, &p, &steps));
        prop_assert_eq!(steps.last().unwrap(), &c.retraction);
        for x in p.elements() {
            prop_assert!(c.kept.contains(&c.retraction[x]));
        }
    }

    #[test]
    fn path_counts_match_transfer_matrix(p in common::poset(5), m in 0usize..5) {
        let paths = enumerate_paths(&p, m, &Limits::default()).unwrap();
        prop_assert_eq!(paths.len(), zigzag_count(&p, m));
        for path in &paths {
            prop_assert!(is_zigzag(&p, path.values()));
        }
    }

    #[test]
    fn path_space_is_pointwise(p in common::poset(4), m in 0usize..4) {
        let space = path_space(&p, m, &Limits::default()).unwrap();
        let j = fence(m);
        for (i, a) in space.tables.iter().enumerate() {
            prop_assert!(is_order_preserving(&j, &p, a));
            for (k, b) in space.tables.iter().enumerate() {
                let pointwise = a.iter().zip(b).all(|(&x, &y)| p.leq(x, y));
                prop_assert_eq!(space.poset.leq(i, k), pointwise);
            }
        }
    }

    #[test]
    fn homotopy_classes_match_components(dom in common::poset(3), cod in common::poset(4)) {
        let lim = Limits::default();
        let maps = all_maps_by_brute_force(&dom, &cod);
        let comp = component_labels(&cod, &maps);
        for i in 0..maps.len() {
            for j in 0..maps.len() {
                let f = PosetMap::new(&dom, &cod, maps[i].clone()).unwrap();
                let g = PosetMap::new(&dom, &cod, maps[j].clone()).unwrap();
                prop_assert_eq!(homotopic(&dom, &cod, &f, &g, &lim).unwrap(), comp[i] == comp[j]);
                let reduced = homotopy_between(&dom, &cod, &maps[i], &maps[j], &lim).unwrap();
                prop_assert_eq!(reduced.is_some(), comp[i] == comp[j]);
                if let Some(fence_maps) = reduced {
                    prop_assert!(is_fence(&dom, &cod, &fence_maps));
                    prop_assert_eq!(fence_maps.first().unwrap(), &maps[i]);
                    prop_assert_eq!(fence_maps.last().unwrap(), &maps[j]);
                }
            }
        }
    }

    #[test]
    fn null_homotopies_are_fences(dom in common::poset(4), cod in common::poset(5), seed in any::<usize>()) {
        let lim = Limits::default();
        let maps = all_maps_by_brute_force(&dom, &cod);
        let f = &maps[seed % maps.len()];
        let comp = component_labels(&cod, &maps);
        let idx = seed % maps.len();
        let null = maps.iter().enumerate().any(|(j, g)| comp[j] == comp[idx] && g.windows(2).all(|w| w[0] == w[1]));
        let found = null_homotopy(&dom, &cod, f, &lim).unwrap();
        prop_assert_eq!(found.is_some(), null);
        if let Some(fence_maps) = found {
            prop_assert!(is_fence(&dom, &cod, &fence_maps));
            prop_assert_eq!(&fence_maps[0], f);
        }
    }

    #[test]
    fn beat_points_do_not_change_the_core(
        p in common::poset(6),
        x in any::<usize>(),
        above in proptest::collection::vec(any::<usize>(), 0..3),
        dual in any::<bool>(),
    ) {
        let x = x % p.len();
        let above: Vec<Elem> = above.iter().map(|a| a % p.len()).collect();
        let q = common::with_beat_point(&p, x, &above, dual);
        prop_assert!(q.check_axioms().is_ok());
        prop_assert!(core(&p).poset.is_isomorphic(&core(&q).poset));
        prop_assert_eq!(is_contractible(&p), is_contractible(&q));
    }
}

#[test]
fn fences_and_chains_are_contractible() {
    for m in 0..7 {
        assert!(is_contractible(&fence(m)));
    }
    for k in 1..6 {
        assert!(is_contractible(&FinitePoset::chain(k)));
    }
    assert!(!is_contractible(&finspace::corpus::circle()));
}
