//! LS-category and combinatorial complexity with certificates.
//!
//! Every open set containing a maximal point contains its down-set, and every
//! point lies below a maximal one, so covers by opens are exactly covers of
//! the maximal elements by the down-sets they generate. Both invariants are
//! therefore minimum covers of a maximal-element set by a hereditary family:
//!
//! * `cat(P)`: subsets `S` of `Max(P)` whose down-set is contractible in `P`;
//! * `CC_m(P)`: subsets `S` of `Max(P x P)` whose down-set carries an
//!   order-preserving section of the endpoint map of `P^{J_m}`;
//! * `CC(P)`: subsets whose down-set carries such a section for some `m`,
//!   which is decided by a homotopy search (see [`cc_stable`]).

pub mod certificate;
pub mod family;
pub mod section;
pub mod verify;

use serde::Serialize;

use crate::cohomology;
use crate::error::{Error, Result};
use crate::homotopy::{homotopy_between, inclusion_null_homotopy, is_contractible, is_path_connected, null_homotopy};
use crate::poset::{Elem, FinitePoset};
use crate::Limits;

pub use certificate::{
    parse_certificate, CatAmbient, CatCertificate, CatPart, Certificate, SectionCertificate, SectionPart,
};
pub use family::{FeasibleFamily, Mask};
pub use section::{section_feasible, square_down_set, SectionTable};
pub use verify::{verify_cat_certificate, verify_certificate, verify_section_certificate, Verdict};

fn require_connected(p: &FinitePoset) -> Result<()> {
    if is_path_connected(p)? {
        Ok(())
    } else {
        Err(Error::NotPathConnected)
    }
}

/// Maximal elements of `P x P` as pairs, sorted.
pub fn square_maxima(p: &FinitePoset) -> Vec<(Elem, Elem)> {
    let max = p.maximal_elements();
    max.iter().flat_map(|&x| max.iter().map(move |&y| (x, y))).collect()
}

#[derive(Clone, Debug)]
pub struct CatValue {
    pub value: usize,
    pub certificate: CatCertificate,
}

fn cat_from_family(
    family: &FeasibleFamily<'_, Vec<Vec<Elem>>>,
    ground: &[Elem],
    ambient: &FinitePoset,
    kind: CatAmbient,
    limits: &Limits,
) -> Result<CatValue> {
    let cover = family
        .min_cover(limits)?
        .ok_or_else(|| Error::Invalid("a prime ideal failed to contract".into()))?;
    let mut parts = Vec::with_capacity(cover.len());
    for mask in cover {
        let subset: Vec<Elem> = family::members(mask).map(|i| ground[i]).collect();
        let fence = family
            .witness(mask)?
            .ok_or_else(|| Error::Invalid("cover part lost its witness".into()))?;
        parts.push(CatPart {
            open: ambient.down_set(&subset).to_vec(),
            subset,
            fence,
        });
    }
    Ok(CatValue {
        value: parts.len(),
        certificate: CatCertificate { ambient: kind, parts },
    })
}

/// `cat(P)`: the least number of opens, each contractible in `P`, covering `P`.
pub fn cat(p: &FinitePoset, limits: &Limits) -> Result<CatValue> {
    require_connected(p)?;
    let ground = p.maximal_elements();
    let family = FeasibleFamily::new(ground.len(), |mask| {
        let seeds: Vec<Elem> = family::members(mask).map(|i| ground[i]).collect();
        inclusion_null_homotopy(&p.down_set(&seeds), limits)
    })?;
    let out = cat_from_family(&family, &ground, p, CatAmbient::Base, limits)?;
    verify_cat_certificate(p, &out.certificate).map_err(|e| Error::Invalid(format!("cat certificate rejected: {e}")))?;
    Ok(out)
}

/// `cat(P x P)`. An open `U` of the square is contractible in it exactly when
/// both projections `U -> P` are null-homotopic, which keeps the homotopy
/// searches inside `P`.
pub fn cat_square(p: &FinitePoset, limits: &Limits) -> Result<CatValue> {
    require_connected(p)?;
    let n = p.len();
    let square = p.product(p);
    let ground = square.maximal_elements();
    let family = FeasibleFamily::new(ground.len(), |mask| {
        let seeds: Vec<Elem> = family::members(mask).map(|i| ground[i]).collect();
        let open = square.down_set(&seeds);
        let members = open.to_vec();
        let sub = open.as_subposet();
        let first: Vec<Elem> = members.iter().map(|&u| u / n).collect();
        let second: Vec<Elem> = members.iter().map(|&u| u % n).collect();
        let Some(h1) = null_homotopy(&sub, p, &first, limits)? else {
            return Ok(None);
        };
        let Some(h2) = null_homotopy(&sub, p, &second, limits)? else {
            return Ok(None);
        };
        // Move the first coordinate with the second held fixed, then the second.
        let mut fence: Vec<Vec<Elem>> = h1
            .iter()
            .map(|f| f.iter().zip(&second).map(|(&a, &b)| a * n + b).collect())
            .collect();
        let c1 = h1.last().unwrap()[0];
        for g in h2.iter().skip(1) {
            fence.push(g.iter().map(|&b| c1 * n + b).collect());
        }
        Ok(Some(fence))
    })?;
    let out = cat_from_family(&family, &ground, &square, CatAmbient::Square, limits)?;
    verify_cat_certificate(p, &out.certificate).map_err(|e| Error::Invalid(format!("cat certificate rejected: {e}")))?;
    Ok(out)
}

/// `CC_m(P)` for one fence length. `value` is `None` when `CC_m(P)` is
/// infinite, i.e. some maximal pair admits no section at length `m`.
#[derive(Clone, Debug)]
pub struct CcAtLength {
    pub m: usize,
    pub value: Option<usize>,
    pub certificate: Option<SectionCertificate>,
}

pub fn cc_m(p: &FinitePoset, m: usize, limits: &Limits) -> Result<CcAtLength> {
    require_connected(p)?;
    let ground = square_maxima(p);
    let family = FeasibleFamily::new(ground.len(), |mask| {
        let seeds: Vec<(Elem, Elem)> = family::members(mask).map(|i| ground[i]).collect();
        section_feasible(p, &seeds, m, limits)
    })?;
    let Some(cover) = family.min_cover(limits)? else {
        return Ok(CcAtLength {
            m,
            value: None,
            certificate: None,
        });
    };
    let mut parts = Vec::with_capacity(cover.len());
    for mask in cover {
        let table = family
            .witness(mask)?
            .ok_or_else(|| Error::Invalid("cover part lost its section".into()))?;
        parts.push(SectionPart {
            subset: family::members(mask).map(|i| ground[i]).collect(),
            open: table.open,
            rows: table.rows.iter().map(|r| r.values().to_vec()).collect(),
        });
    }
    let certificate = SectionCertificate { m, parts };
    verify_section_certificate(p, &certificate)
        .map_err(|e| Error::Invalid(format!("section certificate rejected: {e}")))?;
    Ok(CcAtLength {
        m,
        value: Some(certificate.parts.len()),
        certificate: Some(certificate),
    })
}

/// Spreads a fence of maps (consecutive maps comparable) over `J_m`: column
/// `t` must lie below column `t + 1` for even `t` and above it for odd `t`, so
/// a map is repeated wherever the fence steps the wrong way.
fn zigzag_columns(p: &FinitePoset, maps: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let below = |a: &[Elem], b: &[Elem]| a.iter().zip(b).all(|(&x, &y)| p.leq(x, y));
    let mut columns: Vec<Vec<Elem>> = Vec::with_capacity(maps.len());
    for map in maps {
        if let Some(last) = columns.last() {
            let t = columns.len() - 1;
            let fits = if t % 2 == 0 { below(last, &map) } else { below(&map, last) };
            if !fits {
                columns.push(last.clone());
            }
        }
        columns.push(map);
    }
    columns
}

/// `CC(P)` with no bound on the fence length.
///
/// A section of `q_m` over an open `Q` of `P x P` is the same thing as a
/// zigzag of maps `Q -> P` running from the first projection to the second,
/// so `Q` carries a section for some `m` exactly when the two projections
/// are homotopic. Covering `Max(P x P)` by such opens therefore gives
/// `min_m CC_m(P)`, and the homotopies found give a section certificate at
/// the length `m` reported.
pub fn cc_stable(p: &FinitePoset, limits: &Limits) -> Result<CcAtLength> {
    require_connected(p)?;
    let n = p.len();
    let square = p.product(p);
    let ground = square.maximal_elements();
    let family = FeasibleFamily::new(ground.len(), |mask| {
        let seeds: Vec<Elem> = family::members(mask).map(|i| ground[i]).collect();
        let open = square.down_set(&seeds);
        let members = open.to_vec();
        let first: Vec<Elem> = members.iter().map(|&u| u / n).collect();
        let second: Vec<Elem> = members.iter().map(|&u| u % n).collect();
        let found = homotopy_between(&open.as_subposet(), p, &first, &second, limits)?;
        Ok(found.map(|maps| (members, zigzag_columns(p, maps))))
    })?;
    let cover = family
        .min_cover(limits)?
        .ok_or_else(|| Error::Invalid("a maximal pair has no section".into()))?;
    let mut found = Vec::with_capacity(cover.len());
    for &mask in &cover {
        let (members, columns) = family
            .witness(mask)?
            .ok_or_else(|| Error::Invalid("cover part lost its homotopy".into()))?;
        found.push((mask, members, columns));
    }
    let long = found.iter().map(|(_, _, c)| c.len() - 1).max().unwrap_or(0);
    let mut parts: Vec<SectionPart> = found
        .into_iter()
        .map(|(mask, members, columns)| SectionPart {
            subset: family::members(mask).map(|i| (ground[i] / n, ground[i] % n)).collect(),
            open: members.iter().map(|&u| (u / n, u % n)).collect(),
            rows: (0..members.len())
                .map(|i| (0..=long).map(|t| columns[t.min(columns.len() - 1)][i]).collect())
                .collect(),
        })
        .collect();
    // Sections persist when the length grows, so the shortest length that
    // serves every part of this cover can be found by bisection.
    let sections_at = |m: usize| -> Result<Option<Vec<SectionPart>>> {
        let mut out = Vec::with_capacity(parts.len());
        for part in &parts {
            match section_feasible(p, &part.subset, m, limits)? {
                Some(table) => out.push(SectionPart {
                    subset: part.subset.clone(),
                    open: table.open,
                    rows: table.rows.iter().map(|r| r.values().to_vec()).collect(),
                }),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    let (mut lo, mut hi) = (0, long);
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match sections_at(mid)? {
            Some(found) => {
                hi = mid;
                best = Some(found);
            }
            None => lo = mid + 1,
        }
    }
    let m = lo;
    if let Some(shorter) = best {
        parts = shorter;
    }
    let certificate = SectionCertificate { m, parts };
    verify_section_certificate(p, &certificate)
        .map_err(|e| Error::Invalid(format!("section certificate rejected: {e}")))?;
    Ok(CcAtLength {
        m,
        value: Some(certificate.parts.len()),
        certificate: Some(certificate),
    })
}

/// Lower bounds for `CC(P)`, each established independently.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBound {
    pub cat: usize,
    /// Zero-divisor cup-length plus one, when computed.
    pub zero_divisor: Option<usize>,
    pub contractible: bool,
    /// The homotopy cover number from [`cc_stable`]; this one is sharp.
    pub homotopy: usize,
    pub value: usize,
}

pub fn cc_lower_bound(
    p: &FinitePoset,
    with_cohomology: bool,
    limits: &Limits,
) -> Result<(LowerBound, CatValue, CcAtLength)> {
    let cat_value = cat(p, limits)?;
    let contractible = is_contractible(p);
    let zero_divisor = if with_cohomology {
        Some(cohomology::zero_divisor_cup_length(p, limits)?.z + 1)
    } else {
        None
    };
    let stable = cc_stable(p, limits)?;
    let homotopy = stable.value.expect("stable covers always exist");
    let value = cat_value
        .value
        .max(zero_divisor.unwrap_or(1))
        .max(if contractible { 1 } else { 2 })
        .max(homotopy);
    Ok((
        LowerBound {
            cat: cat_value.value,
            zero_divisor,
            contractible,
            homotopy,
            value,
        },
        cat_value,
        stable,
    ))
}

#[derive(Clone, Copy, Debug)]
pub struct CcOptions {
    /// Largest fence length tried; `None` means `|P|`. The stable certificate
    /// counts toward the upper bound when its length is within the limit, and
    /// always when no limit was given.
    pub m_max: Option<usize>,
    pub with_cohomology: bool,
}

impl Default for CcOptions {
    fn default() -> Self {
        CcOptions {
            m_max: None,
            with_cohomology: true,
        }
    }
}

/// Bracket `lower <= CC(P) <= upper`. `exact` is set only when the two meet.
#[derive(Clone, Debug)]
pub struct CcBracket {
    pub lower: LowerBound,
    pub upper: Option<usize>,
    pub m_at_upper: Option<usize>,
    /// `CC_m(P)` for `m = 0..=m_max`.
    pub trace: Vec<Option<usize>>,
    pub certificate: Option<SectionCertificate>,
    pub cat_certificate: CatCertificate,
    /// The sharp value with its certificate, at whatever length it needs.
    pub stable: CcAtLength,
    pub exact: bool,
}

pub fn cc(p: &FinitePoset, options: CcOptions, limits: &Limits) -> Result<CcBracket> {
    require_connected(p)?;
    let (lower, cat_value, stable) = cc_lower_bound(p, options.with_cohomology, limits)?;
    let m_max = options.m_max.unwrap_or(p.len());
    let mut trace = Vec::with_capacity(m_max + 1);
    let mut best: Option<CcAtLength> = None;
    for m in 0..=m_max {
        let at = cc_m(p, m, limits)?;
        trace.push(at.value);
        let improves = match (&best, at.value) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(b), Some(v)) => b.value.map_or(true, |bv| v < bv),
        };
        if improves {
            best = Some(at);
        }
    }
    let stable_allowed = options.m_max.map_or(true, |limit| stable.m <= limit);
    let stable_better = best
        .as_ref()
        .and_then(|b| b.value)
        .map_or(true, |v| stable.value.is_some_and(|s| s < v));
    if stable_allowed && stable_better {
        best = Some(stable.clone());
    }
    let upper = best.as_ref().and_then(|b| b.value);
    Ok(CcBracket {
        exact: upper == Some(lower.value),
        m_at_upper: best.as_ref().map(|b| b.m),
        certificate: best.and_then(|b| b.certificate),
        upper,
        lower,
        trace,
        cat_certificate: cat_value.certificate,
        stable,
    })
}

/// The chain `cat(P) <= CC(P) <= cat(P x P) <= |Max P|^2`, checked on
/// computed values with the CC bracket standing in for `CC(P)`.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub cat: usize,
    pub cc: CcBracket,
    pub cat_square: usize,
    pub max_count: usize,
    pub max_squared: usize,
    pub checks: Vec<(String, bool)>,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn inequality_report(p: &FinitePoset, options: CcOptions, limits: &Limits) -> Result<InequalityReport> {
    let cc_bracket = cc(p, options, limits)?;
    let cat_value = cc_bracket.lower.cat;
    let cat_sq = cat_square(p, limits)?.value;
    let max_count = p.maximal_elements().len();
    let max_squared = max_count * max_count;
    let mut checks = vec![
        ("cat(P) <= CC(P) lower".to_string(), cat_value <= cc_bracket.lower.value),
        ("CC(P) lower <= cat(PxP)".to_string(), cc_bracket.lower.value <= cat_sq),
        ("cat(PxP) <= |Max P|^2".to_string(), cat_sq <= max_squared),
    ];
    if let Some(upper) = cc_bracket.upper {
        checks.push(("CC(P) lower <= CC(P) upper".to_string(), cc_bracket.lower.value <= upper));
        if cc_bracket.exact {
            checks.push(("CC(P) <= cat(PxP)".to_string(), upper <= cat_sq));
        }
    }
    Ok(InequalityReport {
        cat: cat_value,
        cc: cc_bracket,
        cat_square: cat_sq,
        max_count,
        max_squared,
        checks,
    })
}
