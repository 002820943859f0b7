mod common;

use finspace::cohomology::{betti_numbers, CohomologyRing, TensorSquare};
use finspace::homotopy::is_contractible;
use finspace::order_complex::{order_complex, ExportFormat, SimplicialComplex};
use finspace::{FinitePoset, Limits};
use proptest::prelude::*;

/// Sum of `(-1)^(|c|-1)` over nonempty chains, by direct enumeration of
/// subsets.
fn chain_euler(p: &FinitePoset) -> i64 {
    let n = p.len();
    (1u32..1 << n)
        .filter(|&s| {
            let xs: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
            xs.iter().all(|&a| xs.iter().all(|&b| p.comparable(a, b)))
        })
        .map(|s| if s.count_ones() % 2 == 1 { 1 } else { -1 })
        .sum()
}

fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from boundary matrices, on the homology side.
fn homology_betti(k: &SimplicialComplex) -> Vec<usize> {
    let dim = k.dimension().unwrap();
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d > dim {
            return 0;
        }
        let faces = k.simplices(d - 1);
        let rows = k
            .simplices(d)
            .iter()
            .map(|s| {
                faces
                    .iter()
                    .map(|f| f.len() + 1 == s.len() && f.iter().all(|v| s.contains(v)))
                    .collect()
            })
            .collect();
        gf2_rank(rows)
    };
    (0..=dim)
        .map(|d| k.simplices(d).len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complexes_are_closed_chain_complexes(p in common::poset(7)) {
        let k = order_complex(&p, &Limits::default()).unwrap();
        prop_assert!(k.is_closed());
        for d in 0..=k.dimension().unwrap() {
            for s in k.simplices(d) {
                let names: Vec<usize> = s.iter().map(|&v| p.index_of(&k.vertices()[v]).unwrap()).collect();
                prop_assert!(names.windows(2).all(|w| p.lt(w[0], w[1])));
            }
        }
        prop_assert_eq!(k.euler_characteristic(), chain_euler(&p));
    }

    #[test]
    fn betti_numbers_agree_with_homology(p in common::poset(7)) {
        let k = order_complex(&p, &Limits::default()).unwrap();
        let b = betti_numbers(&k);
        prop_assert_eq!(&b, &homology_betti(&k));
        prop_assert_eq!(b[0], p.components().len());
        let alternating: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(alternating, k.euler_characteristic());
        if is_contractible(&p) {
            prop_assert_eq!(k.euler_characteristic(), 1);
            prop_assert!(b.iter().skip(1).all(|&x| x == 0));
        }
    }

    #[test]
    fn ring_axioms(p in common::connected_poset(7)) {
        let k = order_complex(&p, &Limits::default()).unwrap();
        let ring = CohomologyRing::new(&k);
        let n = ring.rank();
        let unit = ring.unit();
        for i in 0..n {
            let mut x = fixedbitset::FixedBitSet::with_capacity(n);
            x.insert(i);
            prop_assert_eq!(&ring.multiply(&unit, &x), &x);
            for j in 0..n {
                prop_assert_eq!(ring.product(i, j), ring.product(j, i));
                let prod = ring.product(i, j);
                for r in prod.ones() {
                    prop_assert_eq!(ring.degree_of(r), ring.degree_of(i) + ring.degree_of(j));
                }
                for l in 0..n {
                    let left = ring.multiply(prod, &single(n, l));
                    let right = ring.multiply(&single(n, i), ring.product(j, l));
                    prop_assert_eq!(left, right);
                }
            }
        }
        let tensor = TensorSquare { ring: &ring };
        for x in ring.positive_basis() {
            prop_assert_eq!(tensor.collapse(&tensor.zero_divisor(x)).count_ones(..), 0);
        }
    }

    #[test]
    fn exports_round_trip(p in common::poset(6)) {
        let k = order_complex(&p, &Limits::default()).unwrap();
        for fmt in [ExportFormat::FacetList, ExportFormat::Structured] {
            let text = k.export(fmt);
            let back = SimplicialComplex::import(&text).unwrap();
            prop_assert_eq!(&back, &k);
            prop_assert_eq!(back.f_vector(), k.f_vector());
        }
    }
}

fn single(n: usize, i: usize) -> fixedbitset::FixedBitSet {
    let mut x = fixedbitset::FixedBitSet::with_capacity(n);
    x.insert(i);
    x
}
