//! Combinatorial homotopy theory of finite spaces.
//!
//! Maps between finite spaces are order-preserving value tables. Two maps are
//! homotopic iff they lie in the same component of the comparability graph of
//! the mapping poset; that graph is searched directly, never materialised
//! unless asked for through [`hom_poset`].

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{Elem, FinitePoset, OpenSet};
use crate::Limits;

/// An order-preserving map from the fence `J_m` into a poset, stored as its
/// values `x_0 <= x_1 >= x_2 <= ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigzagPath {
    values: Vec<Elem>,
}

/// Whether `values` is a zigzag in `p`: even positions below their neighbours.
pub fn is_zigzag(p: &FinitePoset, values: &[Elem]) -> bool {
    !values.is_empty()
        && values.iter().all(|&v| v < p.len())
        && values.windows(2).enumerate().all(|(t, w)| {
            if t % 2 == 0 {
                p.leq(w[0], w[1])
            } else {
                p.leq(w[1], w[0])
            }
        })
}

impl ZigzagPath {
    pub fn new(p: &FinitePoset, values: Vec<Elem>) -> Result<Self> {
        if is_zigzag(p, &values) {
            Ok(ZigzagPath { values })
        } else {
            Err(Error::Invalid(format!("{values:?} is not a zigzag path")))
        }
    }

    pub fn constant(x: Elem, m: usize) -> Self {
        ZigzagPath {
            values: vec![x; m + 1],
        }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// The fence length `m`.
    pub fn length(&self) -> usize {
        self.values.len() - 1
    }

    pub fn endpoints(&self) -> (Elem, Elem) {
        (self.values[0], self.values[self.values.len() - 1])
    }

    /// The same path on `J_{m+1}`, obtained by repeating the last value.
    pub fn extended(&self) -> Self {
        let mut values = self.values.clone();
        values.push(*values.last().unwrap());
        ZigzagPath { values }
    }
}

/// An order-preserving map `dom -> cod` as a value table indexed by `dom` ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetMap {
    values: Vec<Elem>,
}

pub fn is_order_preserving(dom: &FinitePoset, cod: &FinitePoset, values: &[Elem]) -> bool {
    values.len() == dom.len()
        && values.iter().all(|&v| v < cod.len())
        && dom
            .cover_pairs()
            .iter()
            .all(|&(a, b)| cod.leq(values[a], values[b]))
}

impl PosetMap {
    pub fn new(dom: &FinitePoset, cod: &FinitePoset, values: Vec<Elem>) -> Result<Self> {
        if is_order_preserving(dom, cod, &values) {
            Ok(PosetMap { values })
        } else {
            Err(Error::Invalid(format!("{values:?} is not order preserving")))
        }
    }

    pub fn identity(p: &FinitePoset) -> Self {
        PosetMap {
            values: p.elements().collect(),
        }
    }

    pub fn constant(dom: &FinitePoset, c: Elem) -> Self {
        PosetMap {
            values: vec![c; dom.len()],
        }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// A materialised mapping space: the poset together with the value table of
/// each of its elements, sorted lexicographically.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub poset: FinitePoset,
    pub tables: Vec<Vec<Elem>>,
}

fn table_label(p: &FinitePoset, values: &[Elem]) -> String {
    let inner: Vec<&str> = values.iter().map(|&v| p.label(v)).collect();
    format!("[{}]", inner.join(","))
}

fn pointwise_space(cod: &FinitePoset, tables: Vec<Vec<Elem>>) -> MappingSpace {
    let labels = tables.iter().map(|t| table_label(cod, t)).collect();
    let poset = FinitePoset::from_leq_unchecked(labels, |i, j| {
        tables[i].iter().zip(&tables[j]).all(|(&a, &b)| cod.leq(a, b))
    });
    MappingSpace { poset, tables }
}

/// All zigzag paths of length `m` into `p`, in lexicographic order.
pub fn enumerate_paths(p: &FinitePoset, m: usize, limits: &Limits) -> Result<Vec<ZigzagPath>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m + 1);
    for x in p.elements() {
        current.push(x);
        extend_path(p, m, &mut current, &mut out, limits)?;
        current.pop();
    }
    Ok(out)
}

fn extend_path(
    p: &FinitePoset,
    m: usize,
    current: &mut Vec<Elem>,
    out: &mut Vec<ZigzagPath>,
    limits: &Limits,
) -> Result<()> {
    if current.len() == m + 1 {
        limits.check("path space", out.len() + 1)?;
        out.push(ZigzagPath {
            values: current.clone(),
        });
        return Ok(());
    }
    let last = *current.last().unwrap();
    // Position t = len-1 even: next value sits above; odd: below.
    let next = if (current.len() - 1) % 2 == 0 {
        p.up_row(last).clone()
    } else {
        p.down_row(last).clone()
    };
    for y in next.ones() {
        current.push(y);
        extend_path(p, m, current, out, limits)?;
        current.pop();
    }
    Ok(())
}

/// The path space `P^{J_m}` under the pointwise order.
pub fn path_space(p: &FinitePoset, m: usize, limits: &Limits) -> Result<MappingSpace> {
    let tables = enumerate_paths(p, m, limits)?
        .into_iter()
        .map(|z| z.values)
        .collect();
    Ok(pointwise_space(p, tables))
}

/// All order-preserving maps `dom -> cod`, lexicographic by value table.
pub fn enumerate_maps(dom: &FinitePoset, cod: &FinitePoset, limits: &Limits) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(dom.len());
    extend_map(dom, cod, &mut current, &mut out, limits)?;
    Ok(out)
}

fn extend_map(
    dom: &FinitePoset,
    cod: &FinitePoset,
    current: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
    limits: &Limits,
) -> Result<()> {
    let x = current.len();
    if x == dom.len() {
        limits.check("mapping space", out.len() + 1)?;
        out.push(current.clone());
        return Ok(());
    }
    for v in cod.elements() {
        let ok = (0..x).all(|w| {
            (!dom.leq(w, x) || cod.leq(current[w], v)) && (!dom.leq(x, w) || cod.leq(v, current[w]))
        });
        if ok {
            current.push(v);
            extend_map(dom, cod, current, out, limits)?;
            current.pop();
        }
    }
    Ok(())
}

/// The mapping space `cod^dom` of order-preserving maps, pointwise order.
pub fn hom_poset(dom: &FinitePoset, cod: &FinitePoset, limits: &Limits) -> Result<MappingSpace> {
    Ok(pointwise_space(cod, enumerate_maps(dom, cod, limits)?))
}

/// Search over maps `dom -> cod` where neighbours differ at one point by a
/// comparable value. Every pair of comparable maps is joined by such a chain,
/// so reachability here is reachability in the comparability graph of
/// `cod^dom`.
struct MapSearch<'a> {
    dom: &'a FinitePoset,
    cod: &'a FinitePoset,
    lower_covers: Vec<Vec<Elem>>,
    upper_covers: Vec<Vec<Elem>>,
    comparable: Vec<Vec<Elem>>,
}

impl<'a> MapSearch<'a> {
    fn new(dom: &'a FinitePoset, cod: &'a FinitePoset) -> Self {
        let mut lower_covers = vec![Vec::new(); dom.len()];
        let mut upper_covers = vec![Vec::new(); dom.len()];
        for (a, b) in dom.cover_pairs() {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        let comparable = cod
            .elements()
            .map(|v| cod.elements().filter(|&w| w != v && cod.comparable(v, w)).collect())
            .collect();
        MapSearch {
            dom,
            cod,
            lower_covers,
            upper_covers,
            comparable,
        }
    }

    /// Breadth-first search from `start` to the first map accepted by `goal`;
    /// returns the shortest fence of maps.
    fn run(
        &self,
        start: &[Elem],
        goal: impl Fn(&[Elem]) -> bool,
        limits: &Limits,
    ) -> Result<Option<Vec<Vec<Elem>>>> {
        if goal(start) {
            return Ok(Some(vec![start.to_vec()]));
        }
        let mut states: Vec<Vec<Elem>> = vec![start.to_vec()];
        let mut parent: Vec<usize> = vec![usize::MAX];
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        seen.insert(start.to_vec(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            let f = states[idx].clone();
            for x in self.dom.elements() {
                for &v in &self.comparable[f[x]] {
                    let ok = self.lower_covers[x].iter().all(|&y| self.cod.leq(f[y], v))
                        && self.upper_covers[x].iter().all(|&y| self.cod.leq(v, f[y]));
                    if !ok {
                        continue;
                    }
                    let mut g = f.clone();
                    g[x] = v;
                    if seen.contains_key(&g) {
                        continue;
                    }
                    limits.check("homotopy search", states.len() + 1)?;
                    let id = states.len();
                    seen.insert(g.clone(), id);
                    let done = goal(&g);
                    states.push(g);
                    parent.push(idx);
                    if done {
                        let mut path = Vec::new();
                        let mut cur = id;
                        while cur != usize::MAX {
                            path.push(states[cur].clone());
                            cur = parent[cur];
                        }
                        path.reverse();
                        return Ok(Some(path));
                    }
                    queue.push_back(id);
                }
            }
        }
        Ok(None)
    }
}

/// A fence of maps from `f` to `g` (consecutive maps comparable), if the two
/// are homotopic.
pub fn homotopy_fence(
    dom: &FinitePoset,
    cod: &FinitePoset,
    f: &PosetMap,
    g: &PosetMap,
    limits: &Limits,
) -> Result<Option<Vec<PosetMap>>> {
    let target = g.values.clone();
    let found = MapSearch::new(dom, cod).run(&f.values, |h| h == target.as_slice(), limits)?;
    Ok(found.map(|maps| maps.into_iter().map(|values| PosetMap { values }).collect()))
}

pub fn homotopic(
    dom: &FinitePoset,
    cod: &FinitePoset,
    f: &PosetMap,
    g: &PosetMap,
    limits: &Limits,
) -> Result<bool> {
    Ok(homotopy_fence(dom, cod, f, g, limits)?.is_some())
}

pub fn is_path_connected(p: &FinitePoset) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Ok(p.components().len() == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeatKind {
    /// The strict down-set has a maximum.
    Down,
    /// The strict up-set has a minimum.
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeatRemoval {
    pub element: Elem,
    pub kind: BeatKind,
    /// The maximum (down-beat) or minimum (up-beat) the element retracts onto.
    pub target: Elem,
}

/// Result of beat-point reduction.
#[derive(Clone, Debug)]
pub struct Core {
    pub poset: FinitePoset,
    /// Original ids of the surviving elements, ascending; core id `i` is `kept[i]`.
    pub kept: Vec<Elem>,
    pub trace: Vec<BeatRemoval>,
    /// The retraction `P -> P` onto the kept elements, original ids.
    pub retraction: Vec<Elem>,
}

impl Core {
    /// The maps `r_0 = id, r_1, ..., r_k = retraction`, where `r_j` collapses
    /// the first `j` removals. Consecutive maps are comparable.
    pub fn retraction_steps(&self, n: usize) -> Vec<Vec<Elem>> {
        let mut current: Vec<Elem> = (0..n).collect();
        let mut steps = vec![current.clone()];
        for removal in &self.trace {
            for v in current.iter_mut() {
                if *v == removal.element {
                    *v = removal.target;
                }
            }
            steps.push(current.clone());
        }
        steps
    }

    /// Core id of an original element that survived reduction.
    pub fn core_index(&self, x: Elem) -> Option<usize> {
        self.kept.binary_search(&x).ok()
    }
}

fn beat_of(p: &FinitePoset, alive: &FixedBitSet, x: Elem) -> Option<(BeatKind, Elem)> {
    let strict_max = |row: &FixedBitSet, above: bool| -> Option<Elem> {
        let set: Vec<Elem> = row.ones().filter(|&y| y != x && alive.contains(y)).collect();
        set.iter().copied().find(|&c| {
            set.iter()
                .all(|&y| if above { p.leq(c, y) } else { p.leq(y, c) })
        })
    };
    if let Some(t) = strict_max(p.down_row(x), false) {
        return Some((BeatKind::Down, t));
    }
    strict_max(p.up_row(x), true).map(|t| (BeatKind::Up, t))
}

/// Beat-point reduction removing the smallest available id first.
pub fn core(p: &FinitePoset) -> Core {
    core_with(p, |_| 0)
}

/// Beat-point reduction where `choose` picks, from the ascending list of
/// current beat points, the index of the one to remove next.
pub fn core_with(p: &FinitePoset, mut choose: impl FnMut(&[Elem]) -> usize) -> Core {
    let n = p.len();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut trace = Vec::new();
    let mut retraction: Vec<Elem> = (0..n).collect();
    loop {
        let beats: Vec<Elem> = alive
            .ones()
            .filter(|&x| beat_of(p, &alive, x).is_some())
            .collect();
        if beats.is_empty() {
            break;
        }
        let x = beats[choose(&beats).min(beats.len() - 1)];
        let (kind, target) = beat_of(p, &alive, x).unwrap();
        alive.set(x, false);
        for v in retraction.iter_mut() {
            if *v == x {
                *v = target;
            }
        }
        trace.push(BeatRemoval {
            element: x,
            kind,
            target,
        });
    }
    let kept: Vec<Elem> = alive.ones().collect();
    Core {
        poset: p.subposet(&kept),
        kept,
        trace,
        retraction,
    }
}

pub fn is_contractible(p: &FinitePoset) -> bool {
    core(p).poset.len() == 1
}

fn common_bound(cod: &FinitePoset, image: &[Elem], above: bool) -> Option<Elem> {
    let mut acc = FixedBitSet::with_capacity(cod.len());
    acc.insert_range(..);
    for &v in image {
        acc.intersect_with(if above { cod.up_row(v) } else { cod.down_row(v) });
    }
    acc.ones().next()
}

/// A fence of maps from `f` to a constant map, if `f` is null-homotopic.
///
/// Both spaces are first reduced to their cores; the fence found between the
/// cores is lifted back through the beat-point retractions, so every map in
/// the returned fence is a genuine map `dom -> cod`.
pub fn null_homotopy(
    dom: &FinitePoset,
    cod: &FinitePoset,
    f: &[Elem],
    limits: &Limits,
) -> Result<Option<Vec<Vec<Elem>>>> {
    if dom.is_empty() {
        return Err(Error::Invalid("null-homotopy of a map with empty domain".into()));
    }
    debug_assert!(is_order_preserving(dom, cod, f));
    if f.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Some(vec![f.to_vec()]));
    }
    for above in [true, false] {
        if let Some(c) = common_bound(cod, f, above) {
            return Ok(Some(vec![f.to_vec(), vec![c; dom.len()]]));
        }
    }

    let reduction = Reduction::new(dom, cod);
    let search = MapSearch::new(&reduction.dom_core.poset, &reduction.cod_core.poset);
    let Some(core_fence) = search.run(&reduction.reduce(f), |h| h.windows(2).all(|w| w[0] == w[1]), limits)? else {
        return Ok(None);
    };
    let mut fence = reduction.descend(f);
    for h in &core_fence {
        push_distinct(&mut fence, reduction.lift(h));
    }
    Ok(Some(fence))
}

/// A fence of maps from `f` to `g`, if they are homotopic. Found the same way
/// as [`null_homotopy`]: search between the cores, then lift.
pub fn homotopy_between(
    dom: &FinitePoset,
    cod: &FinitePoset,
    f: &[Elem],
    g: &[Elem],
    limits: &Limits,
) -> Result<Option<Vec<Vec<Elem>>>> {
    debug_assert!(is_order_preserving(dom, cod, f) && is_order_preserving(dom, cod, g));
    if f == g {
        return Ok(Some(vec![f.to_vec()]));
    }
    let reduction = Reduction::new(dom, cod);
    let target = reduction.reduce(g);
    let search = MapSearch::new(&reduction.dom_core.poset, &reduction.cod_core.poset);
    let Some(core_fence) = search.run(&reduction.reduce(f), |h| h == target.as_slice(), limits)? else {
        return Ok(None);
    };
    let mut fence = reduction.descend(f);
    for h in &core_fence {
        push_distinct(&mut fence, reduction.lift(h));
    }
    for map in reduction.descend(g).into_iter().rev() {
        push_distinct(&mut fence, map);
    }
    Ok(Some(fence))
}

fn push_distinct(fence: &mut Vec<Vec<Elem>>, map: Vec<Elem>) {
    if fence.last() != Some(&map) {
        fence.push(map);
    }
}

/// Beat-point reductions of a domain and codomain, used to move homotopy
/// searches between the cores.
struct Reduction<'a> {
    dom: &'a FinitePoset,
    cod: &'a FinitePoset,
    dom_core: Core,
    cod_core: Core,
}

impl<'a> Reduction<'a> {
    fn new(dom: &'a FinitePoset, cod: &'a FinitePoset) -> Self {
        Reduction {
            dom,
            cod,
            dom_core: core(dom),
            cod_core: core(cod),
        }
    }

    /// `r . f . i` as a map between the cores, in core ids.
    fn reduce(&self, f: &[Elem]) -> Vec<Elem> {
        self.dom_core
            .kept
            .iter()
            .map(|&x| self.cod_core.core_index(self.cod_core.retraction[f[x]]).unwrap())
            .collect()
    }

    /// The fence `f, ..., r . f, ..., r . f . rho` through the retraction steps.
    fn descend(&self, f: &[Elem]) -> Vec<Vec<Elem>> {
        let mut fence = Vec::new();
        for r in self.cod_core.retraction_steps(self.cod.len()) {
            push_distinct(&mut fence, f.iter().map(|&x| r[x]).collect());
        }
        let g: Vec<Elem> = f.iter().map(|&x| self.cod_core.retraction[x]).collect();
        for r in self.dom_core.retraction_steps(self.dom.len()) {
            push_distinct(&mut fence, r.iter().map(|&z| g[z]).collect());
        }
        fence
    }

    /// A map between the cores, extended to `dom -> cod` through `rho`.
    fn lift(&self, h: &[Elem]) -> Vec<Elem> {
        self.dom
            .elements()
            .map(|z| {
                let k = self.dom_core.core_index(self.dom_core.retraction[z]).unwrap();
                self.cod_core.kept[h[k]]
            })
            .collect()
    }
}

/// Whether the open set `u` is contractible in its ambient space, i.e. the
/// inclusion is homotopic to a constant map.
pub fn is_contractible_in(u: &OpenSet<'_>, limits: &Limits) -> Result<bool> {
    Ok(inclusion_null_homotopy(u, limits)?.is_some())
}

/// Witness for [`is_contractible_in`]: a fence of maps `u -> ambient` from the
/// inclusion to a constant, each indexed by the ascending members of `u`.
pub fn inclusion_null_homotopy(u: &OpenSet<'_>, limits: &Limits) -> Result<Option<Vec<Vec<Elem>>>> {
    if u.is_empty() {
        return Err(Error::Invalid("empty open set".into()));
    }
    let members = u.to_vec();
    null_homotopy(&u.as_subposet(), u.ambient(), &members, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poset::fence;

    fn is_fence_of_maps(dom: &FinitePoset, cod: &FinitePoset, maps: &[Vec<Elem>]) -> bool {
        maps.iter().all(|m| is_order_preserving(dom, cod, m))
            && maps.windows(2).all(|w| {
                let le = w[0].iter().zip(&w[1]).all(|(&a, &b)| cod.leq(a, b));
                let ge = w[0].iter().zip(&w[1]).all(|(&a, &b)| cod.leq(b, a));
                le || ge
            })
    }

    #[test]
    fn zigzag_validation() {
        let p = corpus::circle();
        let (a, b, c) = (0, 1, 2);
        let path = ZigzagPath::new(&p, vec![a, c, b]).unwrap();
        assert_eq!(path.endpoints(), (a, b));
        assert_eq!(path.length(), 2);
        assert!(ZigzagPath::new(&p, vec![c, a]).is_err());
        assert_eq!(ZigzagPath::constant(c, 3).endpoints(), (c, c));
        assert_eq!(path.extended().values(), &[a, c, b, b]);
    }

    #[test]
    fn small_path_spaces() {
        let lim = Limits::default();
        let p = corpus::circle();
        assert!(path_space(&p, 0, &lim).unwrap().poset.is_isomorphic(&p));
        let j1 = path_space(&fence(1), 1, &lim).unwrap();
        assert_eq!(j1.tables, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let (c, d) = (2, 3);
        let paths = enumerate_paths(&p, 2, &lim).unwrap();
        assert!(paths.iter().all(|z| !(z.values()[0] == c && z.values()[2] == d)));
    }

    #[test]
    fn path_space_respects_limit() {
        let err = path_space(&corpus::circle(), 6, &Limits::new(10)).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }

    #[test]
    fn small_hom_posets() {
        let lim = Limits::default();
        let q = corpus::circle();
        let pt = FinitePoset::singleton("*");
        assert!(hom_poset(&pt, &q, &lim).unwrap().poset.is_isomorphic(&q));
        assert_eq!(hom_poset(&fence(1), &fence(1), &lim).unwrap().poset.len(), 3);
        assert_eq!(hom_poset(&q, &pt, &lim).unwrap().poset.len(), 1);
    }

    #[test]
    fn homotopy_of_maps() {
        let lim = Limits::default();
        let p = corpus::circle();
        let id = PosetMap::identity(&p);
        for c in p.elements() {
            assert!(!homotopic(&p, &p, &id, &PosetMap::constant(&p, c), &lim).unwrap());
        }
        let chain = FinitePoset::chain(3);
        let f = PosetMap::new(&chain, &chain, vec![0, 0, 1]).unwrap();
        let g = PosetMap::new(&chain, &chain, vec![1, 2, 2]).unwrap();
        let fence_maps = homotopy_fence(&chain, &chain, &f, &g, &lim).unwrap().unwrap();
        let tables: Vec<Vec<Elem>> = fence_maps.iter().map(|m| m.values().to_vec()).collect();
        assert!(is_fence_of_maps(&chain, &chain, &tables));
        // Maps into a poset with a maximum are all homotopic.
        let f = PosetMap::new(&p, &chain, vec![0, 1, 2, 2]).unwrap();
        assert!(homotopic(&p, &chain, &f, &PosetMap::constant(&p, 0), &lim).unwrap());
    }

    #[test]
    fn path_connectivity() {
        assert!(is_path_connected(&corpus::circle()).unwrap());
        assert!(!is_path_connected(&FinitePoset::antichain(2)).unwrap());
        for m in 0..6 {
            assert!(is_path_connected(&fence(m)).unwrap());
        }
        assert_eq!(is_path_connected(&FinitePoset::antichain(0)), Err(Error::EmptyPoset));
    }

    #[test]
    fn cores() {
        assert_eq!(core(&FinitePoset::chain(5)).poset.len(), 1);
        let c = core(&corpus::circle());
        assert_eq!(c.poset.len(), 4);
        assert!(c.trace.is_empty());
        let f2 = core(&fence(2));
        assert_eq!(f2.kept, vec![2]);
        assert_eq!(f2.trace[0], BeatRemoval { element: 0, kind: BeatKind::Up, target: 1 });
        assert_eq!(f2.trace[1], BeatRemoval { element: 1, kind: BeatKind::Down, target: 2 });
        let steps = f2.retraction_steps(3);
        assert_eq!(steps.first().unwrap(), &vec![0, 1, 2]);
        assert_eq!(steps.last().unwrap(), &vec![2, 2, 2]);
    }

    #[test]
    fn contractibility() {
        for m in 0..7 {
            assert!(is_contractible(&fence(m)));
        }
        assert!(!is_contractible(&corpus::circle()));
        assert!(is_contractible(&FinitePoset::singleton("x")));
    }

    #[test]
    fn contractible_in_ambient() {
        let lim = Limits::default();
        let p = corpus::circle();
        for x in p.elements() {
            assert!(is_contractible_in(&p.down_set(&[x]), &lim).unwrap());
        }
        let all = p.down_set(&p.maximal_elements());
        assert!(!is_contractible_in(&all, &lim).unwrap());
        let q = fence(4);
        let u = q.down_set(&[1, 3]);
        let witness = inclusion_null_homotopy(&u, &lim).unwrap().unwrap();
        assert!(is_fence_of_maps(&u.as_subposet(), &q, &witness));
        assert_eq!(witness[0], u.to_vec());
        assert!(witness.last().unwrap().windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn lifted_null_homotopy_is_a_fence() {
        let lim = Limits::default();
        // Circle with a two-point tail; the open set spanned by one maximum and
        // the end of the tail is disconnected but contractible in the space.
        let p = FinitePoset::from_hasse(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("d", "e"), ("f", "e")],
        )
        .unwrap();
        let u = p.down_set(&[2, 5]);
        let fence_maps = inclusion_null_homotopy(&u, &lim).unwrap().unwrap();
        assert!(is_fence_of_maps(&u.as_subposet(), &p, &fence_maps));
        assert_eq!(fence_maps[0], u.to_vec());
    }

    #[test]
    fn projections_of_square_opens() {
        let lim = Limits::default();
        let p = corpus::circle();
        let sq = p.product(&p);
        let n = p.len();
        let project = |u: &OpenSet<'_>| -> (FinitePoset, Vec<Elem>, Vec<Elem>) {
            let m = u.to_vec();
            (u.as_subposet(), m.iter().map(|&z| z / n).collect(), m.iter().map(|&z| z % n).collect())
        };
        // (c,d) has a maximum below it, so the projections agree up to homotopy.
        let (q, f, g) = project(&sq.down_set(&[2 * n + 3]));
        let maps = homotopy_between(&q, &p, &f, &g, &lim).unwrap().unwrap();
        assert!(is_fence_of_maps(&q, &p, &maps));
        assert_eq!((maps.first().unwrap(), maps.last().unwrap()), (&f, &g));
        // On all of the square they do not, or the circle would have complexity one.
        let (q, f, g) = project(&sq.down_set(&sq.maximal_elements()));
        assert!(homotopy_between(&q, &p, &f, &g, &lim).unwrap().is_none());
        let id = PosetMap::identity(&p);
        assert!(homotopy_between(&p, &p, id.values(), &[0; 4], &lim).unwrap().is_none());
    }
}
