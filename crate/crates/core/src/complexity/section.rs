//! Order-preserving sections of the endpoint map `P^{J_m} -> P x P`.
//!
//! A section over an open set `U` of `P x P` is a table `H(u, t)`, one zigzag
//! path per `u`, from `u.0` to `u.1`, monotone in `u`. The search treats every
//! interior cell `H(u, t)` as a variable with domain `P` (a `u64` mask) and
//! every order requirement as a binary `<=` constraint:
//!
//! * along a row, even positions sit below their neighbours;
//! * across rows, `H(u, t) <= H(u', t)` for each covering pair `u < u'` of `U`.
//!
//! Maintaining arc consistency on these constraints plus smallest-domain-first
//! branching decides feasibility exactly.

use crate::error::{Error, Result};
use crate::homotopy::ZigzagPath;
use crate::poset::{Elem, FinitePoset};
use crate::Limits;

/// A section of the endpoint map over `open`: `rows[i]` is the path assigned
/// to `open[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTable {
    pub m: usize,
    pub open: Vec<(Elem, Elem)>,
    pub rows: Vec<ZigzagPath>,
}

/// Down-closure of `seeds` in `P x P`, sorted by `(x, y)`.
pub fn square_down_set(p: &FinitePoset, seeds: &[(Elem, Elem)]) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for x in p.elements() {
        for y in p.elements() {
            if seeds.iter().any(|&(a, b)| p.leq(x, a) && p.leq(y, b)) {
                out.push((x, y));
            }
        }
    }
    out
}

struct Csp {
    up_mask: Vec<u64>,
    down_mask: Vec<u64>,
    /// `below[v]`: variables constrained to be `<=` variable `v`.
    below: Vec<Vec<usize>>,
    /// `above[v]`: variables constrained to be `>=` variable `v`.
    above: Vec<Vec<usize>>,
    nodes: usize,
}

impl Csp {
    fn up_closure(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, v| acc | self.up_mask[v])
    }

    fn down_closure(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, v| acc | self.down_mask[v])
    }

    /// Arc consistency from the variables in `queue`; false on a wipe-out.
    fn propagate(&self, domains: &mut [u64], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; domains.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop() {
            queued[v] = false;
            let down = self.down_closure(domains[v]);
            let up = self.up_closure(domains[v]);
            for (list, allowed) in [(&self.below[v], down), (&self.above[v], up)] {
                for &w in list {
                    let narrowed = domains[w] & allowed;
                    if narrowed != domains[w] {
                        if narrowed == 0 {
                            return false;
                        }
                        domains[w] = narrowed;
                        if !queued[w] {
                            queued[w] = true;
                            queue.push(w);
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self, domains: Vec<u64>, limits: &Limits) -> Result<Option<Vec<u64>>> {
        self.nodes += 1;
        limits.check("section search nodes", self.nodes)?;
        let pick = (0..domains.len())
            .filter(|&v| domains[v].count_ones() > 1)
            .min_by_key(|&v| (domains[v].count_ones(), v));
        let Some(var) = pick else {
            return Ok(Some(domains));
        };
        for value in bits(domains[var]) {
            let mut next = domains.clone();
            next[var] = 1 << value;
            if self.propagate(&mut next, vec![var]) {
                if let Some(done) = self.solve(next, limits)? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        }
    })
}

/// Finds an order-preserving section of the endpoint map over the open set
/// generated by `seeds` in `P x P`, using paths of length `m`.
pub fn section_feasible(
    p: &FinitePoset,
    seeds: &[(Elem, Elem)],
    m: usize,
    limits: &Limits,
) -> Result<Option<SectionTable>> {
    let n = p.len();
    if n > 64 {
        return Err(Error::SizeLimit {
            what: "section search poset",
            needed: n,
            limit: 64,
        });
    }
    let open = square_down_set(p, seeds);
    if m == 0 {
        if open.iter().any(|&(x, y)| x != y) {
            return Ok(None);
        }
        let rows = open.iter().map(|&(x, _)| ZigzagPath::constant(x, 0)).collect();
        return Ok(Some(SectionTable { m, open, rows }));
    }

    let width = m + 1;
    let var = |u: usize, t: usize| u * width + t;
    let count = open.len() * width;
    let mut below = vec![Vec::new(); count];
    let mut above = vec![Vec::new(); count];
    let mut le = |a: usize, b: usize| {
        above[a].push(b);
        below[b].push(a);
    };
    for u in 0..open.len() {
        for t in 0..m {
            if t % 2 == 0 {
                le(var(u, t), var(u, t + 1));
            } else {
                le(var(u, t + 1), var(u, t));
            }
        }
    }
    let position = |pair: (Elem, Elem)| open.binary_search(&pair).ok();
    for (i, &(x, y)) in open.iter().enumerate() {
        // Covering pairs of P x P inside the open set: raise one coordinate
        // along a cover of P.
        for (a, b) in p.cover_pairs() {
            for upper in [(if a == x { Some((b, y)) } else { None }), (if a == y { Some((x, b)) } else { None })]
                .into_iter()
                .flatten()
            {
                if let Some(j) = position(upper) {
                    for t in 1..m {
                        le(var(i, t), var(j, t));
                    }
                }
            }
        }
    }

    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut domains = vec![full; count];
    for (u, &(x, y)) in open.iter().enumerate() {
        domains[var(u, 0)] = 1 << x;
        domains[var(u, m)] = 1 << y;
    }
    let mut csp = Csp {
        up_mask: p.elements().map(|v| p.up_row(v).ones().fold(0, |acc, w| acc | 1 << w)).collect(),
        down_mask: p.elements().map(|v| p.down_row(v).ones().fold(0, |acc, w| acc | 1 << w)).collect(),
        below,
        above,
        nodes: 0,
    };
    if !csp.propagate(&mut domains, (0..count).collect()) {
        return Ok(None);
    }
    let Some(solution) = csp.solve(domains, limits)? else {
        return Ok(None);
    };
    let rows = (0..open.len())
        .map(|u| {
            let values = (0..width).map(|t| solution[var(u, t)].trailing_zeros() as Elem).collect();
            ZigzagPath::new(p, values).expect("solver output is a zigzag")
        })
        .collect();
    Ok(Some(SectionTable { m, open, rows }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const A: Elem = 0;
    const B: Elem = 1;
    const C: Elem = 2;
    const D: Elem = 3;

    fn check_table(p: &FinitePoset, t: &SectionTable) {
        for (u, row) in t.open.iter().zip(&t.rows) {
            assert_eq!(row.endpoints(), *u);
            assert_eq!(row.length(), t.m);
        }
        for (i, u) in t.open.iter().enumerate() {
            for (j, v) in t.open.iter().enumerate() {
                if p.leq(u.0, v.0) && p.leq(u.1, v.1) {
                    for k in 0..=t.m {
                        assert!(p.leq(t.rows[i].values()[k], t.rows[j].values()[k]));
                    }
                }
            }
        }
    }

    #[test]
    fn two_maximal_pairs_never_section_on_the_circle() {
        let p = corpus::circle();
        let lim = Limits::default();
        for m in 0..=6 {
            assert!(section_feasible(&p, &[(C, C), (D, D)], m, &lim).unwrap().is_none());
            assert!(section_feasible(&p, &[(C, D), (D, C)], m, &lim).unwrap().is_none());
        }
    }

    #[test]
    fn length_zero_needs_the_diagonal() {
        let p = corpus::circle();
        let lim = Limits::default();
        assert!(section_feasible(&p, &[(C, D)], 0, &lim).unwrap().is_none());
        let t = section_feasible(&p, &[(A, A)], 0, &lim).unwrap().unwrap();
        assert_eq!(t.open, vec![(A, A)]);
    }

    #[test]
    fn single_off_diagonal_pair_needs_four_steps() {
        let p = corpus::circle();
        let lim = Limits::default();
        let first = (0..=6)
            .find(|&m| section_feasible(&p, &[(C, D)], m, &lim).unwrap().is_some())
            .unwrap();
        // At length 3 the middle value of (c,d) is a or b, which leaves
        // nothing below it for both (c,a) and (c,b).
        assert_eq!(first, 4);
        let t = section_feasible(&p, &[(C, D)], 4, &lim).unwrap().unwrap();
        assert_eq!(t.open.len(), 9);
        check_table(&p, &t);
        assert_eq!(t.open, square_down_set(&p, &[(C, D)]));
        assert!(t.open.contains(&(B, D)));
    }
}
