//! Finite posets viewed as finite T0 (Alexandroff) spaces.
//!
//! Elements are dense ids `0..n` with a label table. The order is stored twice,
//! as up-set rows (`up[i]` holds every `j` with `i <= j`) and down-set rows, so
//! both directions of a comparison are a single bit probe.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from the covering relation of a Hasse diagram. Any
    /// acyclic set of pairs is accepted; the order is its reflexive-transitive
    /// closure.
    pub fn from_hasse<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(labels, &pairs)
    }

    /// Same as [`FinitePoset::from_hasse`] with the relation given by ids.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("pair ({a},{b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Builds a poset from a full order predicate, checking all three axioms.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let p = Self::from_leq_unchecked(labels, leq);
        p.check_axioms()?;
        Ok(p)
    }

    /// Internal constructor for relations that are partial orders by construction
    /// (products, fences, mapping spaces).
    pub(crate) fn from_leq_unchecked(labels: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Self {
        let n = labels.len();
        let up = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if leq(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let p = Self::from_up_rows(labels, up);
        debug_assert!(p.check_axioms().is_ok());
        p
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        FinitePoset { labels, up, down }
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotAnOrder(format!("`{}` is not <= itself", self.labels[i])));
            }
            for j in self.up[i].ones() {
                if j != i && self.leq(j, i) {
                    return Err(Error::Cycle(self.labels[i].clone(), self.labels[j].clone()));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::NotAnOrder(format!(
                        "not transitive through `{}`",
                        self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn singleton(label: &str) -> Self {
        Self::from_leq_unchecked(vec![label.to_string()], |_, _| true)
    }

    /// `k` pairwise incomparable points named `0..k`.
    pub fn antichain(k: usize) -> Self {
        Self::from_leq_unchecked((0..k).map(|i| i.to_string()).collect(), |i, j| i == j)
    }

    /// The chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Self {
        Self::from_leq_unchecked((0..k).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &str) -> Result<Elem> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x <= y}`
    pub fn up_row(&self, x: Elem) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`
    pub fn down_row(&self, x: Elem) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn maximal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.up[x].count_ones(..) == 1).collect()
    }

    pub fn minimal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.down[x].count_ones(..) == 1).collect()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let between = self.up[a]
                    .intersection(&self.down[b])
                    .any(|c| c != a && c != b);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cartesian product with the componentwise order. The pair `(p, q)` gets
    /// id `p * |other| + q`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let w = other.len();
        let labels = self
            .elements()
            .flat_map(|p| other.elements().map(move |q| (p, q)))
            .map(|(p, q)| format!("({},{})", self.label(p), other.label(q)))
            .collect();
        FinitePoset::from_leq_unchecked(labels, |i, j| {
            self.leq(i / w, j / w) && other.leq(i % w, j % w)
        })
    }

    pub fn opposite(&self) -> FinitePoset {
        FinitePoset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Induced subposet on `keep`, in the given order.
    pub fn subposet(&self, keep: &[Elem]) -> FinitePoset {
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        FinitePoset::from_leq_unchecked(labels, |i, j| self.leq(keep[i], keep[j]))
    }

    pub fn relabeled(&self, labels: Vec<String>) -> Result<FinitePoset> {
        if labels.len() != self.len() {
            return Err(Error::Invalid("label count mismatch".into()));
        }
        Ok(FinitePoset {
            labels,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    /// Smallest open set containing `seeds`.
    pub fn down_set(&self, seeds: &[Elem]) -> OpenSet<'_> {
        let mut members = FixedBitSet::with_capacity(self.len());
        for &s in seeds {
            members.union_with(&self.down[s]);
        }
        OpenSet {
            ambient: self,
            members,
        }
    }

    pub fn up_set(&self, seeds: &[Elem]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.len());
        for &s in seeds {
            members.union_with(&self.up[s]);
        }
        members
    }

    /// Elements sorted so that `x < y` implies `x` comes first; ties by id.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let n = self.len();
        let mut indegree: Vec<usize> = (0..n).map(|x| self.down[x].count_ones(..) - 1).collect();
        let mut ready: std::collections::BTreeSet<Elem> =
            (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for y in self.up[x].ones() {
                if y != x {
                    indegree[y] -= 1;
                    if indegree[y] == 0 {
                        ready.insert(y);
                    }
                }
            }
        }
        order
    }

    /// Connected components of the comparability graph, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<Elem>> {
        let n = self.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.up[x].ones().chain(self.down[x].ones()) {
                    if !seen.contains(y) {
                        seen.insert(y);
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// An order isomorphism `self -> other` as an image table, if one exists.
    /// The witness is the lexicographically smallest one.
    pub fn isomorphism_to(&self, other: &FinitePoset) -> Option<Vec<Elem>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &FinitePoset, x: Elem| (p.up[x].count_ones(..), p.down[x].count_ones(..));
        let mut mine: Vec<_> = self.elements().map(|x| sig(self, x)).collect();
        let mut theirs: Vec<_> = other.elements().map(|x| sig(other, x)).collect();
        let candidates: Vec<Vec<Elem>> = self
            .elements()
            .map(|x| other.elements().filter(|&y| theirs[y] == mine[x]).collect())
            .collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return None;
        }
        let mut image = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        if self.extend_iso(other, &candidates, 0, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &FinitePoset,
        candidates: &[Vec<Elem>],
        x: Elem,
        image: &mut [Elem],
        used: &mut FixedBitSet,
    ) -> bool {
        if x == self.len() {
            return true;
        }
        for &y in &candidates[x] {
            if used.contains(y) {
                continue;
            }
            let consistent = (0..x).all(|w| {
                self.leq(w, x) == other.leq(image[w], y) && self.leq(x, w) == other.leq(y, image[w])
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used.insert(y);
            if self.extend_iso(other, candidates, x + 1, image, used) {
                return true;
            }
            used.set(y, false);
        }
        image[x] = usize::MAX;
        false
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Serializes to the line-oriented text format accepted by [`parse_poset`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.labels {
            out.push_str("element ");
            out.push_str(l);
            out.push('\n');
        }
        for (a, b) in self.cover_pairs() {
            out.push_str(&format!("cover {} < {}\n", self.labels[a], self.labels[b]));
        }
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
        }
    }
}

/// A down-closed subset, i.e. an open set of the Alexandroff topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSet<'a> {
    ambient: &'a FinitePoset,
    members: FixedBitSet,
}

impl<'a> OpenSet<'a> {
    /// Wraps `members`, rejecting sets that are not down-closed.
    pub fn new(ambient: &'a FinitePoset, members: FixedBitSet) -> Result<Self> {
        for x in members.ones() {
            if !ambient.down_row(x).is_subset(&members) {
                return Err(Error::Invalid(format!(
                    "set is not down-closed below `{}`",
                    ambient.label(x)
                )));
            }
        }
        Ok(OpenSet { ambient, members })
    }

    pub fn ambient(&self) -> &'a FinitePoset {
        self.ambient
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_subposet(&self) -> FinitePoset {
        self.ambient.subposet(&self.to_vec())
    }
}

/// The fence `0 < 1 > 2 < 3 > ... m`: even positions sit below their odd
/// neighbours.
pub fn fence(m: usize) -> FinitePoset {
    FinitePoset::from_leq_unchecked((0..=m).map(|i| i.to_string()).collect(), |i, j| {
        i == j || (i.abs_diff(j) == 1 && j % 2 == 1)
    })
}

/// Structured mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

fn check_name(name: &str, line: usize) -> Result<()> {
    let bad = name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || "(),[]<>#".contains(c));
    if bad {
        Err(Error::parse(line, format!("invalid element name `{name}`")))
    } else {
        Ok(())
    }
}

/// Parses either format: text directives (`element <name>`,
/// `cover <a> < <b>`, `#` comments) or the JSON object
/// `{"elements": [...], "covers": [[a, b], ...]}`.
pub fn parse_poset(input: &str) -> Result<FinitePoset> {
    if input.trim_start().starts_with('{') {
        let doc: PosetJson =
            serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        for name in &doc.elements {
            check_name(name, 0)?;
        }
        let covers: Vec<(&str, &str)> = doc
            .covers
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let labels: Vec<&str> = doc.elements.iter().map(String::as_str).collect();
        return FinitePoset::from_hasse(&labels, &covers);
    }
    let mut labels: Vec<&str> = Vec::new();
    let mut covers: Vec<(&str, &str)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["element", name] => {
                check_name(name, line_no)?;
                labels.push(name);
            }
            ["cover", a, "<", b] => covers.push((a, b)),
            _ => return Err(Error::parse(line_no, format!("unrecognised directive `{line}`"))),
        }
    }
    FinitePoset::from_hasse(&labels, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> FinitePoset {
        FinitePoset::from_hasse(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    fn names(p: &FinitePoset, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|&x| p.label(x).to_string()).collect()
    }

    #[test]
    fn circle_model_extrema() {
        let p = circle();
        assert_eq!(names(&p, &p.maximal_elements()), ["c", "d"]);
        assert_eq!(names(&p, &p.minimal_elements()), ["a", "b"]);
        assert!(p.leq(0, 2) && !p.leq(2, 0) && !p.comparable(0, 1));
    }

    #[test]
    fn singleton_and_cycle() {
        let p = FinitePoset::from_hasse::<&str>(&["x"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
        let err = FinitePoset::from_hasse(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
        let err = FinitePoset::from_hasse(&["a"], &[("a", "zz")]).unwrap_err();
        assert_eq!(err, Error::UnknownLabel("zz".into()));
        let err = FinitePoset::from_hasse(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinitePoset::from_hasse(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.check_axioms().is_ok());
    }

    #[test]
    fn product_of_circle_with_itself() {
        let p = circle();
        let pp = p.product(&p);
        assert_eq!(pp.len(), 16);
        let max: Vec<_> = names(&pp, &pp.maximal_elements());
        assert_eq!(max, ["(c,c)", "(c,d)", "(d,c)", "(d,d)"]);
        let one = FinitePoset::singleton("*");
        assert!(one.product(&p).is_isomorphic(&p));
    }

    #[test]
    fn opposite_swaps_extrema() {
        let p = circle();
        let op = p.opposite();
        assert_eq!(names(&op, &op.maximal_elements()), ["a", "b"]);
        assert_eq!(op.opposite(), p);
    }

    #[test]
    fn antichain_extrema() {
        let p = FinitePoset::antichain(3);
        assert_eq!(p.maximal_elements(), vec![0, 1, 2]);
        assert_eq!(p.minimal_elements(), vec![0, 1, 2]);
    }

    #[test]
    fn down_sets() {
        let p = circle();
        assert_eq!(names(&p, &p.down_set(&[2]).to_vec()), ["a", "b", "c"]);
        assert!(p.down_set(&[]).is_empty());
        assert_eq!(p.down_set(&p.maximal_elements()).len(), 4);
        let mut bad = FixedBitSet::with_capacity(4);
        bad.insert(2);
        assert!(OpenSet::new(&p, bad).is_err());
    }

    #[test]
    fn fences() {
        assert_eq!(fence(0).len(), 1);
        let f2 = fence(2);
        assert_eq!(f2.maximal_elements(), vec![1]);
        assert_eq!(f2.minimal_elements(), vec![0, 2]);
        let f3 = fence(3);
        let strict: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| f3.lt(i, j))
            .collect();
        assert_eq!(strict, vec![(0, 1), (2, 1), (2, 3)]);
    }

    #[test]
    fn isomorphisms() {
        let p = circle();
        assert_eq!(p.isomorphism_to(&p), Some(vec![0, 1, 2, 3]));
        let f1 = fence(1);
        assert_eq!(f1.isomorphism_to(&f1.opposite()), Some(vec![1, 0]));
        assert_eq!(p.isomorphism_to(&fence(6)), None);
        assert_eq!(p.isomorphism_to(&FinitePoset::chain(4)), None);
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = FinitePoset::from_hasse(&["t", "m", "b"], &[("b", "m"), ("m", "t")]).unwrap();
        assert_eq!(p.linear_extension(), vec![2, 1, 0]);
    }

    #[test]
    fn text_and_json_formats() {
        let text = "# circle\nelement a\nelement b\n\nelement c\nelement d\ncover a < c\ncover a < d # x\ncover b < c\ncover b < d\n";
        let p = parse_poset(text).unwrap();
        assert_eq!(p, circle());
        assert_eq!(parse_poset(&p.to_text()).unwrap(), p);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(parse_poset(&json).unwrap(), p);
        let err = parse_poset("element a\nedge a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_poset("element (a\n").is_err());
    }

    #[test]
    fn components_of_comparability_graph() {
        assert_eq!(circle().components().len(), 1);
        assert_eq!(FinitePoset::antichain(2).components(), vec![vec![0], vec![1]]);
    }
}
