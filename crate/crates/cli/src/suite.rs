//! The built-in corpus run against the values it is known to have.

use finspace::cohomology::zero_divisor_cup_length;
use finspace::complexity::{cat, cat_square, cc, CcOptions};
use finspace::homotopy::is_contractible;
use finspace::order_complex::order_complex;
use finspace::{corpus, Limits};
use serde::Serialize;

use crate::report::Count;

#[derive(Serialize)]
pub struct Claim {
    pub space: String,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

fn claim(space: &str, what: &str, expected: impl ToString, observed: impl ToString) -> Claim {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    Claim {
        space: space.to_string(),
        claim: what.to_string(),
        ok: expected == observed,
        expected,
        observed,
    }
}

fn check(space: &str, what: &str, holds: bool, observed: impl ToString) -> Claim {
    Claim {
        space: space.to_string(),
        claim: what.to_string(),
        expected: "holds".into(),
        observed: observed.to_string(),
        ok: holds,
    }
}

fn bracket_text(lower: usize, upper: Option<usize>, exact: bool) -> String {
    format!("[{lower}, {}]{}", Count(upper), if exact { " exact" } else { "" })
}

pub fn run(limits: &Limits) -> finspace::Result<Vec<Claim>> {
    let mut out = Vec::new();

    let circle = corpus::circle();
    let b = cc(&circle, CcOptions { m_max: Some(4), with_cohomology: true }, limits)?;
    out.push(claim("circle", "CC bracket with m <= 4", "[4, 4] exact", bracket_text(b.lower.value, b.upper, b.exact)));
    out.push(claim("circle", "cat", 2, cat(&circle, limits)?.value));
    out.push(claim("circle", "cat(PxP)", 4, cat_square(&circle, limits)?.value));
    let k = order_complex(&circle, limits)?;
    out.push(claim("circle", "order complex f-vector", "[4, 4]", format!("{:?}", k.f_vector())));
    out.push(claim("circle", "euler characteristic", 0, k.euler_characteristic()));
    let zd = zero_divisor_cup_length(&circle, limits)?;
    out.push(claim("circle", "mod-2 betti numbers", "[1, 1]", format!("{:?}", zd.betti)));
    out.push(claim("circle", "zero-divisor cup-length", 1, zd.z));
    out.push(check(
        "circle",
        "z + 1 <= CC",
        zd.z + 1 <= b.lower.value,
        format!("{} <= {}", zd.z + 1, b.lower.value),
    ));

    let remark = corpus::two_over_five();
    let op = remark.opposite();
    let cat_p = cat(&remark, limits)?.value;
    let cat_op = cat(&op, limits)?.value;
    out.push(claim("two-over-five", "cat", 2, cat_p));
    out.push(claim("two-over-five-op", "cat", 5, cat_op));
    let b = cc(&remark, CcOptions::default(), limits)?;
    let b_op = cc(&op, CcOptions::default(), limits)?;
    let upper = b.upper.unwrap_or(usize::MAX);
    out.push(check(
        "two-over-five",
        "CC(P) <= 4 < 5 <= cat(P^op) <= CC(P^op)",
        upper <= 4 && 4 < cat_op && cat_op == 5 && cat_op <= b_op.lower.value,
        format!("{} <= 4 < 5 <= {} <= {}", Count(b.upper), cat_op, b_op.lower.value),
    ));

    for ex in corpus::all() {
        if !ex.name.starts_with("fence") && !ex.name.starts_with("chain") {
            continue;
        }
        let b = cc(&ex.poset, CcOptions::default(), limits)?;
        out.push(check(
            &ex.name,
            "contractible with CC = 1",
            is_contractible(&ex.poset) && b.exact && b.upper == Some(1),
            bracket_text(b.lower.value, b.upper, b.exact),
        ));
    }
    Ok(out)
}

pub fn to_text(claims: &[Claim]) -> String {
    let mut out = String::new();
    for c in claims {
        out.push_str(&format!(
            "{} {}: {}: expected {}, observed {}\n",
            if c.ok { "ok  " } else { "FAIL" },
            c.space,
            c.claim,
            c.expected,
            c.observed
        ));
    }
    let failed = claims.iter().filter(|c| !c.ok).count();
    out.push_str(&format!("{} claims, {} failed\n", claims.len(), failed));
    out
}
