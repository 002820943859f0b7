//! Report assembly and rendering.

use std::fmt;
use std::time::{Duration, Instant};

use finspace::cohomology::{betti_numbers, zero_divisor_cup_length};
use finspace::complexity::{
    cat, cat_square, cc, verify_cat_certificate, verify_section_certificate, CcBracket, CcOptions, LowerBound,
};
use finspace::homotopy::core;
use finspace::order_complex::order_complex;
use finspace::{FinitePoset, Limits};
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

/// A possibly infinite count, written `inf` when infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Count(pub Option<usize>);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_u64(v as u64),
            None => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Serialize)]
pub struct Input {
    pub sha256: String,
    pub elements: usize,
    pub maximal: usize,
    pub minimal: usize,
}

impl Input {
    pub fn new(bytes: &[u8], p: &FinitePoset) -> Self {
        Input {
            sha256: digest(bytes),
            elements: p.len(),
            maximal: p.maximal_elements().len(),
            minimal: p.minimal_elements().len(),
        }
    }
}

#[derive(Serialize)]
pub struct CoreSummary {
    pub size: usize,
    pub contractible: bool,
    pub elements: Vec<String>,
    pub removed: Vec<String>,
}

impl CoreSummary {
    pub fn new(p: &FinitePoset) -> Self {
        let c = core(p);
        CoreSummary {
            size: c.kept.len(),
            contractible: c.kept.len() == 1,
            elements: c.kept.iter().map(|&x| p.label(x).to_string()).collect(),
            removed: c
                .trace
                .iter()
                .map(|r| format!("{} -> {}", p.label(r.element), p.label(r.target)))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ComplexSummary {
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub betti: Vec<usize>,
}

#[derive(Serialize)]
pub struct CatSummary {
    pub value: usize,
    pub verified: bool,
    pub certificate: String,
}

#[derive(Serialize)]
pub struct CcSummary {
    pub lower: LowerBound,
    pub upper: Count,
    pub m_at_upper: Option<usize>,
    pub trace: Vec<Count>,
    pub exact: bool,
    /// Fence length of the certificate for the sharp value.
    pub stable_m: usize,
    pub verified: bool,
    pub certificate: Option<String>,
}

impl CcSummary {
    pub fn new(p: &FinitePoset, b: CcBracket) -> Self {
        let verified = b
            .certificate
            .as_ref()
            .map_or(true, |c| verify_section_certificate(p, c).is_ok());
        CcSummary {
            upper: Count(b.upper),
            m_at_upper: b.m_at_upper,
            trace: b.trace.iter().map(|&v| Count(v)).collect(),
            exact: b.exact,
            stable_m: b.stable.m,
            verified,
            certificate: b.certificate.as_ref().map(|c| c.to_text(p)),
            lower: b.lower,
        }
    }

    pub fn write_text(&self, out: &mut String) {
        let l = &self.lower;
        out.push_str(&format!(
            "CC bracket: [{}, {}]{}\n",
            l.value,
            self.upper,
            if self.exact { " exact" } else { "" }
        ));
        if let Some(m) = self.m_at_upper {
            out.push_str(&format!("upper attained at m = {m}\n"));
        }
        let trace: Vec<String> = self.trace.iter().enumerate().map(|(m, v)| format!("{m}:{v}")).collect();
        out.push_str(&format!("CC_m by m: {}\n", trace.join(" ")));
        let zd = l.zero_divisor.map_or("-".to_string(), |z| z.to_string());
        out.push_str(&format!(
            "lower bounds: cat {}, zero-divisor {}, non-contractible {}, homotopy cover {} (m = {})\n",
            l.cat,
            zd,
            if l.contractible { 1 } else { 2 },
            l.homotopy,
            self.stable_m
        ));
    }
}

#[derive(Serialize)]
pub struct ZeroDivisorSummary {
    pub z: usize,
    pub bound: usize,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub input: Input,
    pub core: CoreSummary,
    pub complex: ComplexSummary,
    pub cat: CatSummary,
    pub cc: CcSummary,
    pub cat_square: CatSummary,
    pub zero_divisor: ZeroDivisorSummary,
    pub max_squared: usize,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub timings: Vec<(&'static str, Duration)>,
}

fn timed<T>(timings: &mut Vec<(&'static str, Duration)>, stage: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((stage, start.elapsed()));
    out
}

impl Report {
    pub fn build(bytes: &[u8], p: &FinitePoset, m_max: Option<usize>, limits: &Limits) -> finspace::Result<Self> {
        let mut timings = Vec::new();
        let core_summary = timed(&mut timings, "core", || CoreSummary::new(p));
        let complex = timed(&mut timings, "order complex", || -> finspace::Result<_> {
            let k = order_complex(p, limits)?;
            Ok(ComplexSummary {
                f_vector: k.f_vector(),
                euler_characteristic: k.euler_characteristic(),
                betti: betti_numbers(&k),
            })
        })?;
        let zd = timed(&mut timings, "zero divisors", || zero_divisor_cup_length(p, limits))?;
        let cat_value = timed(&mut timings, "cat", || cat(p, limits))?;
        let options = CcOptions {
            m_max,
            with_cohomology: true,
        };
        let bracket = timed(&mut timings, "cc", || cc(p, options, limits))?;
        let square = timed(&mut timings, "cat square", || cat_square(p, limits))?;
        let max_squared = p.maximal_elements().len().pow(2);

        let cc_summary = CcSummary::new(p, bracket);
        let lower = cc_summary.lower.value;
        let upper = cc_summary.upper.0;
        let alternating: i64 = complex
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        let cat_verified = verify_cat_certificate(p, &cat_value.certificate).is_ok();
        let square_verified = verify_cat_certificate(p, &square.certificate).is_ok();
        let mut checks = vec![
            ("cat(P) <= CC(P)", cat_value.value <= lower),
            ("z + 1 <= CC(P)", zd.z < lower),
            ("CC(P) <= cat(PxP)", lower <= square.value),
            ("cat(PxP) <= |Max P|^2", square.value <= max_squared),
            ("cat(P) <= |Max P|", cat_value.value <= p.maximal_elements().len()),
            ("euler characteristic = alternating betti sum", alternating == complex.euler_characteristic),
            ("contractible iff CC(P) = 1", core_summary.contractible == (lower == 1)),
            ("zero-divisor product re-expanded", zd.verified),
            ("certificates verify", cat_verified && square_verified && cc_summary.verified),
        ];
        if let Some(u) = upper {
            checks.push(("CC lower <= CC upper", lower <= u));
        }
        Ok(Report {
            input: Input::new(bytes, p),
            core: core_summary,
            complex,
            cat: CatSummary {
                value: cat_value.value,
                verified: cat_verified,
                certificate: cat_value.certificate.to_text(p),
            },
            cc: cc_summary,
            cat_square: CatSummary {
                value: square.value,
                verified: square_verified,
                certificate: square.certificate.to_text(&p.product(p)),
            },
            zero_divisor: ZeroDivisorSummary {
                z: zd.z,
                bound: zd.z + 1,
                verified: zd.verified,
            },
            max_squared,
            checks: checks
                .into_iter()
                .map(|(name, holds)| Check {
                    name: name.to_string(),
                    holds,
                })
                .collect(),
            timings,
        })
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        out.push_str(&format!("input sha256 {}\n", i.sha256));
        out.push_str(&format!(
            "elements {}, maximal {}, minimal {}\n",
            i.elements, i.maximal, i.minimal
        ));
        out.push_str(&format!(
            "core: {} element(s) [{}]{}\n",
            self.core.size,
            self.core.elements.join(" "),
            if self.core.contractible { ", contractible" } else { "" }
        ));
        let c = &self.complex;
        out.push_str(&format!(
            "order complex: f-vector {:?}, euler characteristic {}, mod-2 betti {:?}\n",
            c.f_vector, c.euler_characteristic, c.betti
        ));
        out.push_str(&format!(
            "zero-divisor cup-length {} (bound z + 1 = {})\n",
            self.zero_divisor.z, self.zero_divisor.bound
        ));
        out.push_str(&format!("cat(P) = {}\n", self.cat.value));
        self.cc.write_text(&mut out);
        out.push_str(&format!("cat(PxP) = {}, |Max P|^2 = {}\n", self.cat_square.value, self.max_squared));
        for check in &self.checks {
            out.push_str(&format!("{} {}\n", if check.holds { "ok  " } else { "FAIL" }, check.name));
        }
        for (stage, t) in &self.timings {
            out.push_str(&format!("time {stage}: {:.3} ms\n", t.as_secs_f64() * 1e3));
        }
        out
    }
}

pub fn to_structured<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}
