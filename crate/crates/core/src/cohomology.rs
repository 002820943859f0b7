//! Mod-2 simplicial cohomology, Alexander–Whitney cup products and the
//! zero-divisor cup-length of order complexes.
//!
//! Cochains are bitsets over the simplices of one dimension. For each degree
//! the ring keeps cocycle representatives of a basis of `H^k` and a reducer
//! that writes any cocycle in that basis modulo coboundaries.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::is_path_connected;
use crate::order_complex::{order_complex, SimplicialComplex};
use crate::poset::FinitePoset;
use crate::Limits;

pub type Cochain = FixedBitSet;

/// Row echelon form over GF(2) with provenance tags: each stored row records
/// which inserted vectors were combined to produce it. Rows are kept sorted by
/// pivot (lowest set bit), which makes top-down reduction complete.
struct Echelon {
    rows: Vec<(usize, FixedBitSet, FixedBitSet)>,
    tag_width: usize,
}

impl Echelon {
    fn new(tag_width: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            tag_width,
        }
    }

    fn reduce(&self, v: &mut FixedBitSet, tag: &mut FixedBitSet) {
        for (pivot, row, row_tag) in &self.rows {
            if v.contains(*pivot) {
                v.symmetric_difference_with(row);
                tag.symmetric_difference_with(row_tag);
            }
        }
    }

    /// Inserts `v` with provenance bit `tag_bit`. Returns `None` if `v` was
    /// independent, otherwise the tag of the vanishing combination.
    fn insert(&mut self, mut v: FixedBitSet, tag_bit: usize) -> Option<FixedBitSet> {
        let mut tag = FixedBitSet::with_capacity(self.tag_width);
        tag.insert(tag_bit);
        self.reduce(&mut v, &mut tag);
        match v.ones().next() {
            None => Some(tag),
            Some(pivot) => {
                let at = self.rows.partition_point(|(p, _, _)| *p < pivot);
                self.rows.insert(at, (pivot, v, tag));
                None
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Coboundary of the basis cochain of each k-simplex, as a bitset over the
/// (k+1)-simplices.
fn coboundary_columns(k: &SimplicialComplex, deg: usize) -> Vec<FixedBitSet> {
    let lower = k.simplices(deg);
    let upper = k.simplices(deg + 1);
    let index = k.simplex_index(deg);
    let mut cols: Vec<FixedBitSet> = lower.iter().map(|_| FixedBitSet::with_capacity(upper.len())).collect();
    for (j, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            cols[index[face.as_slice()]].insert(j);
        }
    }
    cols
}

/// Coboundary of an arbitrary k-cochain.
pub fn coboundary(k: &SimplicialComplex, deg: usize, c: &Cochain) -> Cochain {
    let cols = coboundary_columns(k, deg);
    let mut out = FixedBitSet::with_capacity(k.simplices(deg + 1).len());
    for i in c.ones() {
        out.symmetric_difference_with(&cols[i]);
    }
    out
}

/// Mod-2 Betti numbers `b_0..b_dim`, from ranks of coboundary maps.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = k.dimension() else {
        return Vec::new();
    };
    let ranks: Vec<usize> = (0..=dim)
        .map(|d| {
            let cols = coboundary_columns(k, d);
            let mut e = Echelon::new(cols.len());
            for (i, c) in cols.into_iter().enumerate() {
                e.insert(c, i);
            }
            e.rank()
        })
        .collect();
    (0..=dim)
        .map(|d| k.simplices(d).len() - ranks[d] - if d == 0 { 0 } else { ranks[d - 1] })
        .collect()
}

/// Alexander–Whitney product of a `p`-cochain and a `q`-cochain: the value on
/// `[v_0..v_{p+q}]` is `alpha[v_0..v_p] * beta[v_p..v_{p+q}]`. Degrees above
/// the top dimension give the zero cochain of that degree.
pub fn cup_product(k: &SimplicialComplex, alpha: &Cochain, p: usize, beta: &Cochain, q: usize) -> Cochain {
    let target = k.simplices(p + q);
    let mut out = FixedBitSet::with_capacity(target.len());
    if target.is_empty() {
        return out;
    }
    let front = k.simplex_index(p);
    let back = k.simplex_index(q);
    for (i, s) in target.iter().enumerate() {
        if alpha.contains(front[&s[..=p]]) && beta.contains(back[&s[p..]]) {
            out.insert(i);
        }
    }
    out
}

struct Degree {
    reps: Vec<Cochain>,
    /// Coboundaries (tags `0..n_prev`) and representatives (tags `n_prev + r`).
    reducer: Echelon,
    n_prev: usize,
    rep_of_tag: Vec<Option<usize>>,
}

/// The mod-2 cohomology ring of a complex with structure constants on a
/// fixed basis. Basis elements are numbered globally, degree by degree.
pub struct CohomologyRing<'k> {
    complex: &'k SimplicialComplex,
    degrees: Vec<Degree>,
    /// `(degree, index within degree)` of each global basis element.
    basis: Vec<(usize, usize)>,
    /// `products[i][j]`: global coordinates of `basis_i * basis_j`.
    products: Vec<Vec<FixedBitSet>>,
}

impl<'k> CohomologyRing<'k> {
    pub fn new(k: &'k SimplicialComplex) -> Self {
        let dim = k.dimension().map_or(0, |d| d + 1);
        let mut degrees = Vec::with_capacity(dim);
        for d in 0..dim {
            let cols = coboundary_columns(k, d);
            let mut kernel_finder = Echelon::new(cols.len());
            let cocycles: Vec<Cochain> = cols
                .into_iter()
                .enumerate()
                .filter_map(|(i, c)| kernel_finder.insert(c, i))
                .collect();
            let prev = if d == 0 { Vec::new() } else { coboundary_columns(k, d - 1) };
            let n_prev = prev.len();
            let mut reducer = Echelon::new(n_prev + cocycles.len());
            for (i, b) in prev.into_iter().enumerate() {
                reducer.insert(b, i);
            }
            let mut reps = Vec::new();
            let mut rep_of_tag = vec![None; n_prev + cocycles.len()];
            for (j, z) in cocycles.into_iter().enumerate() {
                if reducer.insert(z.clone(), n_prev + j).is_none() {
                    rep_of_tag[n_prev + j] = Some(reps.len());
                    reps.push(z);
                }
            }
            degrees.push(Degree {
                reps,
                reducer,
                n_prev,
                rep_of_tag,
            });
        }
        let basis: Vec<(usize, usize)> = degrees
            .iter()
            .enumerate()
            .flat_map(|(d, deg)| (0..deg.reps.len()).map(move |i| (d, i)))
            .collect();
        let mut ring = CohomologyRing {
            complex: k,
            degrees,
            basis,
            products: Vec::new(),
        };
        let n = ring.basis.len();
        ring.products = (0..n)
            .map(|i| (0..n).map(|j| ring.multiply_basis_directly(i, j)).collect())
            .collect();
        ring
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.basis[i].0
    }

    pub fn representative(&self, i: usize) -> &Cochain {
        let (d, j) = self.basis[i];
        &self.degrees[d].reps[j]
    }

    /// Global index of the first basis element of degree `d`.
    fn offset(&self, d: usize) -> usize {
        self.degrees[..d].iter().map(|g| g.reps.len()).sum()
    }

    /// Coordinates (global) of the class of a degree-`d` cocycle.
    pub fn class_of(&self, d: usize, cocycle: &Cochain) -> Result<FixedBitSet> {
        let mut out = FixedBitSet::with_capacity(self.rank());
        let Some(deg) = self.degrees.get(d) else {
            return Ok(out);
        };
        let mut v = cocycle.clone();
        let mut tag = FixedBitSet::with_capacity(deg.n_prev + deg.rep_of_tag.len());
        deg.reducer.reduce(&mut v, &mut tag);
        if v.ones().next().is_some() {
            return Err(Error::Invalid(format!("degree {d} cochain is not a cocycle")));
        }
        let base = self.offset(d);
        for t in tag.ones() {
            if let Some(Some(r)) = deg.rep_of_tag.get(t) {
                out.insert(base + r);
            }
        }
        Ok(out)
    }

    fn multiply_basis_directly(&self, i: usize, j: usize) -> FixedBitSet {
        let (p, q) = (self.basis[i].0, self.basis[j].0);
        if p + q >= self.degrees.len() {
            return FixedBitSet::with_capacity(self.rank());
        }
        let c = cup_product(self.complex, self.representative(i), p, self.representative(j), q);
        self.class_of(p + q, &c).expect("cup of cocycles is a cocycle")
    }

    /// Product of two basis classes from the structure table.
    pub fn product(&self, i: usize, j: usize) -> &FixedBitSet {
        &self.products[i][j]
    }

    /// Product of two classes given by global coordinates.
    pub fn multiply(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.rank());
        for i in a.ones() {
            for j in b.ones() {
                out.symmetric_difference_with(&self.products[i][j]);
            }
        }
        out
    }

    /// The unit: the class of the all-ones 0-cochain.
    pub fn unit(&self) -> FixedBitSet {
        let mut ones = FixedBitSet::with_capacity(self.complex.simplices(0).len());
        ones.insert_range(..);
        self.class_of(0, &ones).expect("constant 0-cochain is a cocycle")
    }

    /// Global indices of the positive-degree basis elements.
    pub fn positive_basis(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.basis[i].0 > 0).collect()
    }
}

/// Elements of `H* (x) H*` as bitsets over basis pairs `i * rank + j`.
pub struct TensorSquare<'r, 'k> {
    pub ring: &'r CohomologyRing<'k>,
}

impl<'r, 'k> TensorSquare<'r, 'k> {
    fn n(&self) -> usize {
        self.ring.rank()
    }

    pub fn zero(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n() * self.n())
    }

    /// `x (x) 1 + 1 (x) x` for a positive-degree basis element `x`.
    pub fn zero_divisor(&self, x: usize) -> FixedBitSet {
        let mut out = self.zero();
        for u in self.ring.unit().ones() {
            out.toggle(x * self.n() + u);
            out.toggle(u * self.n() + x);
        }
        out
    }

    /// `(a (x) b)(c (x) d) = ac (x) bd`; signs vanish mod 2.
    pub fn multiply(&self, lhs: &FixedBitSet, rhs: &FixedBitSet) -> FixedBitSet {
        let n = self.n();
        let mut out = self.zero();
        for l in lhs.ones() {
            for r in rhs.ones() {
                let left = self.ring.product(l / n, r / n);
                let right = self.ring.product(l % n, r % n);
                for a in left.ones() {
                    for b in right.ones() {
                        out.toggle(a * n + b);
                    }
                }
            }
        }
        out
    }

    /// The multiplication map `H* (x) H* -> H*`.
    pub fn collapse(&self, t: &FixedBitSet) -> FixedBitSet {
        let n = self.n();
        let mut out = FixedBitSet::with_capacity(n);
        for l in t.ones() {
            out.symmetric_difference_with(self.ring.product(l / n, l % n));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroDivisorReport {
    pub betti: Vec<usize>,
    /// Longest nonzero product of zero-divisors.
    pub z: usize,
    /// Basis indices `x_1..x_z` whose zero-divisors multiply to a nonzero class.
    pub witness: Vec<usize>,
    /// Whether the witness product was re-expanded on cocycle representatives
    /// and found nonzero and equal to the table result.
    pub verified: bool,
}

/// Zero-divisor cup-length of `K(P)` over GF(2).
///
/// The kernel of `H* (x) H* -> H*` is the ideal generated by the elements
/// `x (x) 1 + 1 (x) x`, `x` running over a basis of positive degree, so its
/// `k`-th power is nonzero exactly when some product of `k` such generators
/// is. The search walks products level by level.
pub fn zero_divisor_cup_length(p: &FinitePoset, limits: &Limits) -> Result<ZeroDivisorReport> {
    if !is_path_connected(p)? {
        return Err(Error::NotPathConnected);
    }
    let complex = order_complex(p, limits)?;
    zero_divisor_cup_length_of(&complex, limits)
}

pub fn zero_divisor_cup_length_of(complex: &SimplicialComplex, limits: &Limits) -> Result<ZeroDivisorReport> {
    let ring = CohomologyRing::new(complex);
    let tensor = TensorSquare { ring: &ring };
    let gens = ring.positive_basis();
    let mut level: Vec<(FixedBitSet, Vec<usize>)> = gens
        .iter()
        .map(|&g| (tensor.zero_divisor(g), vec![g]))
        .collect();
    let mut z = 0;
    let mut witness = Vec::new();
    let top = 2 * complex.dimension().unwrap_or(0);
    while let Some((_, w)) = level.first() {
        z += 1;
        witness = w.clone();
        if z > top {
            break;
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut next = Vec::new();
        for (value, word) in &level {
            for &g in gens.iter().filter(|&&g| g >= *word.last().unwrap()) {
                let prod = tensor.multiply(value, &tensor.zero_divisor(g));
                if prod.ones().next().is_some() && seen.insert(prod.as_slice().to_vec()) {
                    let mut w = word.clone();
                    w.push(g);
                    next.push((prod, w));
                    limits.check("zero-divisor products", next.len())?;
                }
            }
        }
        level = next;
    }
    let verified = witness.is_empty() || expand_on_representatives(&ring, &witness);
    Ok(ZeroDivisorReport {
        betti: ring.betti(),
        z,
        witness,
        verified,
    })
}

/// The cohomological lower bound set against the computed complexity.
#[derive(Clone, Debug, Serialize)]
pub struct TcLowerBoundReport {
    pub betti: Vec<usize>,
    pub z: usize,
    /// `z + 1`, the bound in the convention where contractible spaces have
    /// complexity one.
    pub bound: usize,
    pub cc: usize,
    pub holds: bool,
    /// The bound is strictly below the complexity.
    pub slack: bool,
}

pub fn tc_lower_bound_report(p: &FinitePoset, limits: &Limits) -> Result<TcLowerBoundReport> {
    let zd = zero_divisor_cup_length(p, limits)?;
    let cc = crate::complexity::cc_stable(p, limits)?
        .value
        .expect("stable covers always exist");
    let bound = zd.z + 1;
    Ok(TcLowerBoundReport {
        betti: zd.betti,
        z: zd.z,
        bound,
        cc,
        holds: bound <= cc,
        slack: bound < cc,
    })
}

/// Recomputes the product of the zero-divisors named by `word` from cochain
/// level cup products (bypassing the structure table) and checks it is the
/// same nonzero class the table gives.
fn expand_on_representatives(ring: &CohomologyRing<'_>, word: &[usize]) -> bool {
    let k = ring.complex();
    let mut ones = FixedBitSet::with_capacity(k.simplices(0).len());
    ones.insert_range(..);
    // Each term is a pair of cocycles with their degrees.
    let mut terms: Vec<((usize, Cochain), (usize, Cochain))> = vec![((0, ones.clone()), (0, ones.clone()))];
    for &g in word {
        let d = ring.degree_of(g);
        let x = ring.representative(g).clone();
        let mut next = Vec::with_capacity(terms.len() * 2);
        for ((da, a), (db, b)) in &terms {
            next.push(((da + d, cup_product(k, a, *da, &x, d)), (*db, b.clone())));
            next.push(((*da, a.clone()), (db + d, cup_product(k, b, *db, &x, d))));
        }
        terms = next;
    }
    let tensor = TensorSquare { ring };
    let n = ring.rank();
    let mut expanded = tensor.zero();
    for ((da, a), (db, b)) in &terms {
        let (Ok(ca), Ok(cb)) = (ring.class_of(*da, a), ring.class_of(*db, b)) else {
            return false;
        };
        for i in ca.ones() {
            for j in cb.ones() {
                expanded.toggle(i * n + j);
            }
        }
    }
    let mut from_table = tensor.zero();
    for u in ring.unit().ones() {
        from_table.insert(u * n + u);
    }
    for &g in word {
        from_table = tensor.multiply(&from_table, &tensor.zero_divisor(g));
    }
    expanded.ones().next().is_some() && expanded == from_table
}
