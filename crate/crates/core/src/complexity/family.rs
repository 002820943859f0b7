//! Downward-closed families of feasible subsets and exact minimum covers.
//!
//! Subsets of the ground set (the maximal elements of the ambient space) are
//! `u64` masks, so the ground set holds at most 64 elements.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Limits;

pub type Mask = u64;

type Check<'f, W> = Box<dyn Fn(Mask) -> Result<Option<W>> + Send + Sync + 'f>;

#[derive(Default)]
struct Known<W> {
    results: HashMap<Mask, Option<W>>,
    feasible: Vec<Mask>,
    infeasible: Vec<Mask>,
}

/// A hereditary family over a ground set of `len` elements, decided by a
/// predicate that also produces a witness for feasible sets. Results are
/// cached; feasibility of a set is inferred from a known feasible superset or
/// a known infeasible subset whenever possible.
pub struct FeasibleFamily<'f, W> {
    len: usize,
    check: Check<'f, W>,
    known: Mutex<Known<W>>,
}

pub fn members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full_mask(len: usize) -> Mask {
    if len == 64 {
        Mask::MAX
    } else {
        (1 << len) - 1
    }
}

impl<'f, W: Clone + Send> FeasibleFamily<'f, W> {
    pub fn new(
        len: usize,
        check: impl Fn(Mask) -> Result<Option<W>> + Send + Sync + 'f,
    ) -> Result<Self> {
        if len > 64 {
            return Err(Error::SizeLimit {
                what: "cover ground set",
                needed: len,
                limit: 64,
            });
        }
        Ok(FeasibleFamily {
            len,
            check: Box::new(check),
            known: Mutex::new(Known {
                results: HashMap::new(),
                feasible: Vec::new(),
                infeasible: Vec::new(),
            }),
        })
    }

    pub fn ground_len(&self) -> usize {
        self.len
    }

    fn lookup(&self, mask: Mask) -> Option<bool> {
        let known = self.known.lock().unwrap();
        if let Some(r) = known.results.get(&mask) {
            return Some(r.is_some());
        }
        if known.infeasible.iter().any(|&bad| bad & mask == bad) {
            return Some(false);
        }
        if known.feasible.iter().any(|&good| good & mask == mask) {
            return Some(true);
        }
        None
    }

    fn record(&self, mask: Mask, result: Option<W>) {
        let mut known = self.known.lock().unwrap();
        if known.results.contains_key(&mask) {
            return;
        }
        if result.is_some() {
            known.feasible.retain(|&good| good & mask != good);
            known.feasible.push(mask);
        } else {
            known.infeasible.retain(|&bad| bad & mask != mask);
            known.infeasible.push(mask);
        }
        known.results.insert(mask, result);
    }

    pub fn is_feasible(&self, mask: Mask) -> Result<bool> {
        if mask == 0 {
            return Ok(true);
        }
        if let Some(b) = self.lookup(mask) {
            return Ok(b);
        }
        let result = (self.check)(mask)?;
        let feasible = result.is_some();
        self.record(mask, result);
        Ok(feasible)
    }

    /// The predicate's witness for a feasible set, `None` if infeasible.
    pub fn witness(&self, mask: Mask) -> Result<Option<W>> {
        if let Some(r) = self.known.lock().unwrap().results.get(&mask) {
            return Ok(r.clone());
        }
        let result = (self.check)(mask)?;
        self.record(mask, result.clone());
        Ok(result)
    }

    /// Evaluates the predicate on `masks` in parallel. Results are recorded
    /// in input order, so later queries do not depend on scheduling.
    pub fn prefetch(&self, masks: &[Mask]) -> Result<()> {
        let pending: Vec<Mask> = masks
            .iter()
            .copied()
            .filter(|&m| m != 0 && self.lookup(m).is_none())
            .collect();
        let results: Vec<Result<Option<W>>> = pending.par_iter().map(|&m| (self.check)(m)).collect();
        for (m, r) in pending.into_iter().zip(results) {
            self.record(m, r?);
        }
        Ok(())
    }

    /// All inclusion-maximal feasible sets, ascending.
    pub fn maximal_members(&self, limits: &Limits) -> Result<Vec<Mask>> {
        let mut feasible_sets = Vec::new();
        self.collect_feasible(0, 0, &mut feasible_sets, limits)?;
        let mut maximal: Vec<Mask> = feasible_sets
            .iter()
            .copied()
            .filter(|&s| {
                (0..self.len).all(|i| s >> i & 1 == 1 || !feasible_sets.contains(&(s | 1 << i)))
            })
            .collect();
        maximal.sort_unstable();
        Ok(maximal)
    }

    fn collect_feasible(&self, current: Mask, from: usize, out: &mut Vec<Mask>, limits: &Limits) -> Result<()> {
        limits.check("feasible family", out.len() + 1)?;
        out.push(current);
        for i in from..self.len {
            let next = current | 1 << i;
            if self.is_feasible(next)? {
                self.collect_feasible(next, i + 1, out, limits)?;
            }
        }
        Ok(())
    }

    /// A minimum number of feasible sets covering the ground set, returned as
    /// disjoint parts sorted by their member lists; `None` when some single
    /// element is infeasible (no cover exists).
    pub fn min_cover(&self, limits: &Limits) -> Result<Option<Vec<Mask>>> {
        let n = self.len;
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        let singletons: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        self.prefetch(&singletons)?;
        for &s in &singletons {
            if !self.is_feasible(s)? {
                return Ok(None);
            }
        }
        let full = full_mask(n);
        if self.is_feasible(full)? {
            return Ok(Some(vec![full]));
        }

        let pairs: Vec<Mask> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| 1 << i | 1 << j))
            .collect();
        self.prefetch(&pairs)?;
        let mut incompatible = vec![0 as Mask; n];
        for i in 0..n {
            for j in i + 1..n {
                if !self.is_feasible(1 << i | 1 << j)? {
                    incompatible[i] |= 1 << j;
                    incompatible[j] |= 1 << i;
                }
            }
        }

        let mut best = self.greedy_cover(n, &incompatible)?;
        let mut by_degree: Vec<usize> = (0..n).collect();
        by_degree.sort_by_key(|&i| (std::cmp::Reverse(incompatible[i].count_ones()), i));
        let clique = greedy_clique(&by_degree, &incompatible);
        if clique.len() < best.len() {
            let mut order = clique.clone();
            order.extend(by_degree.iter().filter(|i| !clique.contains(i)));
            let mut search = CoverSearch {
                family: self,
                order: &order,
                incompatible: &incompatible,
                nodes: 0,
                limits,
            };
            let mut parts = Vec::new();
            search.descend(0, &mut parts, &mut best)?;
        }
        best.sort_by_key(|&m| members(m).collect::<Vec<_>>());
        Ok(Some(best))
    }

    fn greedy_cover(&self, n: usize, incompatible: &[Mask]) -> Result<Vec<Mask>> {
        let mut uncovered = full_mask(n);
        let mut parts = Vec::new();
        while uncovered != 0 {
            let first = uncovered.trailing_zeros() as usize;
            let mut part: Mask = 1 << first;
            for j in members(uncovered).filter(|&j| j > first) {
                if part & incompatible[j] == 0 && self.is_feasible(part | 1 << j)? {
                    part |= 1 << j;
                }
            }
            uncovered &= !part;
            parts.push(part);
        }
        Ok(parts)
    }
}

fn greedy_clique(order: &[usize], incompatible: &[Mask]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&c| incompatible[v] >> c & 1 == 1) {
            clique.push(v);
        }
    }
    clique
}

struct CoverSearch<'s, 'f, W> {
    family: &'s FeasibleFamily<'f, W>,
    order: &'s [usize],
    incompatible: &'s [Mask],
    nodes: usize,
    limits: &'s Limits,
}

impl<W: Clone + Send> CoverSearch<'_, '_, W> {
    /// Places `order[pos..]` into parts; improves `best` whenever a complete
    /// placement uses fewer parts.
    fn descend(&mut self, pos: usize, parts: &mut Vec<Mask>, best: &mut Vec<Mask>) -> Result<()> {
        self.nodes += 1;
        self.limits.check("cover search nodes", self.nodes)?;
        if pos == self.order.len() {
            if parts.len() < best.len() {
                *best = parts.clone();
            }
            return Ok(());
        }
        // Elements that clash with every open part each need a new part, and
        // pairwise clashing ones need distinct new parts.
        let forced: Vec<usize> = self.order[pos..]
            .iter()
            .copied()
            .filter(|&e| parts.iter().all(|&p| p & self.incompatible[e] != 0))
            .collect();
        if parts.len() + greedy_clique(&forced, self.incompatible).len() >= best.len() {
            return Ok(());
        }
        let e = self.order[pos];
        let bit: Mask = 1 << e;
        for j in 0..parts.len() {
            if parts[j] & self.incompatible[e] != 0 {
                continue;
            }
            if self.family.is_feasible(parts[j] | bit)? {
                parts[j] |= bit;
                self.descend(pos + 1, parts, best)?;
                parts[j] &= !bit;
            }
        }
        if parts.len() + 1 < best.len() {
            parts.push(bit);
            self.descend(pos + 1, parts, best)?;
            parts.pop();
        }
        Ok(())
    }
}
