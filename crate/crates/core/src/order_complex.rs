//! Order complexes: the simplicial complex of chains of a poset.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::Limits;

/// A finite simplicial complex on an ordered vertex list. Simplices are
/// ascending vertex-index lists; for an order complex the vertex order is a
/// linear extension of the poset, so every simplex lists its chain bottom up.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// `simplices[k]`: all k-simplices, sorted.
    simplices: Vec<Vec<Vec<usize>>>,
    facets: Vec<Vec<usize>>,
}

/// Complexes are equal when they have the same vertex names and the same
/// facets as sets of names; the vertex order is presentation only.
impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        let names = |k: &SimplicialComplex| -> BTreeSet<BTreeSet<String>> {
            k.facets
                .iter()
                .map(|f| f.iter().map(|&v| k.vertices[v].clone()).collect())
                .collect()
        };
        let vset = |k: &SimplicialComplex| k.vertices.iter().cloned().collect::<BTreeSet<_>>();
        vset(self) == vset(other) && names(self) == names(other)
    }
}

impl Eq for SimplicialComplex {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    /// One facet per line, vertex names separated by spaces.
    FacetList,
    /// `{"vertices": [...], "facets": [[...], ...]}`.
    Structured,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "facet-list" | "facets" => Ok(ExportFormat::FacetList),
            "structured" | "json" => Ok(ExportFormat::Structured),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

/// The order complex `K(P)`: one simplex per nonempty chain.
pub fn order_complex(p: &FinitePoset, limits: &Limits) -> Result<SimplicialComplex> {
    let order = p.linear_extension();
    let vertices = order.iter().map(|&x| p.label(x).to_string()).collect();
    let n = order.len();
    // above[i]: positions j > i whose element lies strictly above order[i].
    let above: Vec<Vec<usize>> = (0..n)
        .map(|i| (i + 1..n).filter(|&j| p.lt(order[i], order[j])).collect())
        .collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut count = 0usize;
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        count += 1;
        limits.check("order complex simplices", count)?;
        let last = *chain.last().unwrap();
        for &j in above[last].iter().rev() {
            if chain.iter().all(|&c| p.lt(order[c], order[j])) {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
        let k = chain.len() - 1;
        if simplices.len() <= k {
            simplices.resize(k + 1, Vec::new());
        }
        simplices[k].push(chain);
    }
    Ok(SimplicialComplex::from_simplices(vertices, simplices))
}

impl SimplicialComplex {
    fn from_simplices(vertices: Vec<String>, mut simplices: Vec<Vec<Vec<usize>>>) -> Self {
        for level in simplices.iter_mut() {
            level.sort();
            level.dedup();
        }
        while simplices.last().is_some_and(|l| l.is_empty()) {
            simplices.pop();
        }
        let mut facets = Vec::new();
        for (k, level) in simplices.iter().enumerate() {
            let next: Option<&Vec<Vec<usize>>> = simplices.get(k + 1);
            for s in level {
                let covered = next.is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    facets.push(s.clone());
                }
            }
        }
        facets.sort();
        SimplicialComplex {
            vertices,
            simplices,
            facets,
        }
    }

    /// The complex generated by `facets` (vertex indices into `vertices`).
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut levels: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::Invalid(format!("bad facet {facet:?}")));
            }
            // Every nonempty subset of the facet.
            let k = f.len();
            if k > 24 {
                return Err(Error::SizeLimit {
                    what: "facet dimension",
                    needed: k,
                    limit: 24,
                });
            }
            for bits in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| bits >> i & 1 == 1).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if levels.len() <= d {
                    levels.resize(d + 1, BTreeSet::new());
                }
                levels[d].insert(face);
            }
        }
        let simplices = levels.into_iter().map(|l| l.into_iter().collect()).collect();
        Ok(Self::from_simplices(vertices, simplices))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// All simplices of dimension `k` (empty beyond the top dimension).
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Index of each k-simplex within `simplices(k)`.
    pub fn simplex_index(&self, k: usize) -> HashMap<&[usize], usize> {
        self.simplices(k)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect()
    }

    /// Face closure: every codimension-one face of every simplex is present.
    pub fn is_closed(&self) -> bool {
        (1..self.simplices.len()).all(|k| {
            let lower = self.simplex_index(k - 1);
            self.simplices[k].iter().all(|s| {
                (0..s.len()).all(|skip| {
                    let face: Vec<usize> =
                        s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    lower.contains_key(face.as_slice())
                })
            })
        })
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::FacetList => {
                let mut out = String::new();
                for f in &self.facets {
                    let names: Vec<&str> = f.iter().map(|&v| self.vertices[v].as_str()).collect();
                    out.push_str(&names.join(" "));
                    out.push('\n');
                }
                out
            }
            ExportFormat::Structured => {
                let doc = ComplexJson {
                    vertices: self.vertices.clone(),
                    facets: self
                        .facets
                        .iter()
                        .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
                        .collect(),
                };
                serde_json::to_string_pretty(&doc).expect("complex serializes") + "\n"
            }
        }
    }

    /// Reads a complex written by [`SimplicialComplex::export`] in either
    /// format.
    pub fn import(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let doc: ComplexJson =
                serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
            let index: HashMap<&str, usize> =
                doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
            let facets = doc
                .facets
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|v| index.get(v.as_str()).copied().ok_or_else(|| Error::UnknownLabel(v.clone())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_facets(doc.vertices, &facets);
        }
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut facets = Vec::new();
        for line in text.lines() {
            let names: Vec<&str> = line.split_whitespace().collect();
            if names.is_empty() {
                continue;
            }
            let facet = names
                .iter()
                .map(|&name| {
                    *index.entry(name.to_string()).or_insert_with(|| {
                        vertices.push(name.to_string());
                        vertices.len() - 1
                    })
                })
                .collect();
            facets.push(facet);
        }
        Self::from_facets(vertices, &facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poset::fence;

    #[test]
    fn circle_is_a_square() {
        let k = order_complex(&corpus::circle(), &Limits::default()).unwrap();
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(k.export(ExportFormat::FacetList), "a c\na d\nb c\nb d\n");
        assert!(k.is_closed());
    }

    #[test]
    fn chain_gives_full_simplex() {
        let k = order_complex(&FinitePoset::chain(4), &Limits::default()).unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 4, 1]);
        assert_eq!(k.facets().len(), 1);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn fence_two_is_a_path() {
        let k = order_complex(&fence(2), &Limits::default()).unwrap();
        assert_eq!(k.f_vector(), vec![3, 2]);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn singleton_exports_one_line() {
        let k = order_complex(&FinitePoset::singleton("x"), &Limits::default()).unwrap();
        assert_eq!(k.export(ExportFormat::FacetList), "x\n");
    }

    #[test]
    fn round_trips() {
        let k = order_complex(&corpus::two_over_five(), &Limits::default()).unwrap();
        for fmt in [ExportFormat::FacetList, ExportFormat::Structured] {
            let back = SimplicialComplex::import(&k.export(fmt)).unwrap();
            assert_eq!(back, k);
            assert_eq!(back.f_vector(), k.f_vector());
        }
        assert_eq!("ply".parse::<ExportFormat>(), Err(Error::UnknownFormat("ply".into())));
    }

    #[test]
    fn chain_limit() {
        let err = order_complex(&FinitePoset::chain(12), &Limits::new(100)).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { .. }));
    }
}
