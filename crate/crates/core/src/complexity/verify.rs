//! Independent certificate checker. Everything here is re-derived from the
//! order relation of `P`; nothing is shared with the searchers.

use std::collections::HashSet;

use super::certificate::{CatAmbient, CatCertificate, Certificate, SectionCertificate};
use crate::poset::{Elem, FinitePoset};

/// `Ok` if the certificate is valid, otherwise the first failure found.
pub type Verdict = std::result::Result<(), String>;

pub fn verify_certificate(p: &FinitePoset, cert: &Certificate) -> Verdict {
    match cert {
        Certificate::Section(c) => verify_section_certificate(p, c),
        Certificate::Cat(c) => verify_cat_certificate(p, c),
    }
}

fn square_leq(p: &FinitePoset, u: (Elem, Elem), v: (Elem, Elem)) -> bool {
    p.leq(u.0, v.0) && p.leq(u.1, v.1)
}

fn is_square_maximal(p: &FinitePoset, u: (Elem, Elem)) -> bool {
    let n = p.len();
    (0..n).all(|x| (0..n).all(|y| !square_leq(p, u, (x, y)) || (x, y) == u))
}

pub fn verify_section_certificate(p: &FinitePoset, cert: &SectionCertificate) -> Verdict {
    let n = p.len();
    let mut covered: HashSet<(Elem, Elem)> = HashSet::new();
    for (k, part) in cert.parts.iter().enumerate() {
        let part_no = k + 1;
        let open: HashSet<(Elem, Elem)> = part.open.iter().copied().collect();
        if open.len() != part.open.len() {
            return Err(format!("part {part_no}: repeated element in open set"));
        }
        if part.rows.len() != part.open.len() {
            return Err(format!("part {part_no}: {} rows for {} open elements", part.rows.len(), part.open.len()));
        }
        for &u in &part.open {
            if u.0 >= n || u.1 >= n {
                return Err(format!("part {part_no}: element out of range"));
            }
            for x in 0..n {
                for y in 0..n {
                    if square_leq(p, (x, y), u) && !open.contains(&(x, y)) {
                        return Err(format!(
                            "part {part_no}: open set is not down-closed below ({},{})",
                            p.label(u.0),
                            p.label(u.1)
                        ));
                    }
                }
            }
        }
        for s in &part.subset {
            if !open.contains(s) {
                return Err(format!("part {part_no}: subset element outside the open set"));
            }
            if !is_square_maximal(p, *s) {
                return Err(format!("part {part_no}: subset element is not maximal"));
            }
        }
        for (&(x, y), row) in part.open.iter().zip(&part.rows) {
            let where_ = format!("part {part_no}, row ({},{})", p.label(x), p.label(y));
            if row.len() != cert.m + 1 {
                return Err(format!("{where_}: path has {} values, expected {}", row.len(), cert.m + 1));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(format!("{where_}: value out of range"));
            }
            if row[0] != x || row[cert.m] != y {
                return Err(format!("{where_}: endpoints do not match"));
            }
            for t in 0..cert.m {
                let ok = if t % 2 == 0 {
                    p.leq(row[t], row[t + 1])
                } else {
                    p.leq(row[t + 1], row[t])
                };
                if !ok {
                    return Err(format!("{where_}: not a zigzag at position {t}"));
                }
            }
        }
        for (i, &u) in part.open.iter().enumerate() {
            for (j, &v) in part.open.iter().enumerate() {
                if square_leq(p, u, v) && (0..=cert.m).any(|t| !p.leq(part.rows[i][t], part.rows[j][t])) {
                    return Err(format!(
                        "part {part_no}: section not order preserving between ({},{}) and ({},{})",
                        p.label(u.0),
                        p.label(u.1),
                        p.label(v.0),
                        p.label(v.1)
                    ));
                }
            }
        }
        covered.extend(open);
    }
    for x in 0..n {
        for y in 0..n {
            if !covered.contains(&(x, y)) {
                return Err(format!("({},{}) is not covered", p.label(x), p.label(y)));
            }
        }
    }
    Ok(())
}

pub fn verify_cat_certificate(p: &FinitePoset, cert: &CatCertificate) -> Verdict {
    let n = p.len();
    // The ambient order, by definition.
    let (size, leq): (usize, Box<dyn Fn(Elem, Elem) -> bool + '_>) = match cert.ambient {
        CatAmbient::Base => (n, Box::new(|a, b| p.leq(a, b))),
        CatAmbient::Square => (n * n, Box::new(move |a, b| p.leq(a / n, b / n) && p.leq(a % n, b % n))),
    };
    let mut covered = vec![false; size];
    for (k, part) in cert.parts.iter().enumerate() {
        let part_no = k + 1;
        if part.open.is_empty() {
            return Err(format!("part {part_no}: empty open set"));
        }
        if part.open.iter().any(|&u| u >= size) {
            return Err(format!("part {part_no}: element out of range"));
        }
        let open: HashSet<Elem> = part.open.iter().copied().collect();
        if open.len() != part.open.len() {
            return Err(format!("part {part_no}: repeated element in open set"));
        }
        for &u in &part.open {
            if (0..size).any(|x| leq(x, u) && !open.contains(&x)) {
                return Err(format!("part {part_no}: open set is not down-closed"));
            }
        }
        for s in &part.subset {
            if !open.contains(s) {
                return Err(format!("part {part_no}: subset element outside the open set"));
            }
            if (0..size).any(|x| x != *s && leq(*s, x)) {
                return Err(format!("part {part_no}: subset element is not maximal"));
            }
        }
        let Some(first) = part.fence.first() else {
            return Err(format!("part {part_no}: empty homotopy"));
        };
        if first != &part.open {
            return Err(format!("part {part_no}: homotopy does not start at the inclusion"));
        }
        let last = part.fence.last().unwrap();
        if last.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("part {part_no}: homotopy does not end at a constant map"));
        }
        for (s, map) in part.fence.iter().enumerate() {
            if map.len() != part.open.len() || map.iter().any(|&v| v >= size) {
                return Err(format!("part {part_no}, map {}: wrong shape", s + 1));
            }
            for i in 0..part.open.len() {
                for j in 0..part.open.len() {
                    if leq(part.open[i], part.open[j]) && !leq(map[i], map[j]) {
                        return Err(format!("part {part_no}, map {}: not order preserving", s + 1));
                    }
                }
            }
        }
        for (s, w) in part.fence.windows(2).enumerate() {
            let below = w[0].iter().zip(&w[1]).all(|(&a, &b)| leq(a, b));
            let above = w[0].iter().zip(&w[1]).all(|(&a, &b)| leq(b, a));
            if !below && !above {
                return Err(format!("part {part_no}: maps {} and {} are not comparable", s + 1, s + 2));
            }
        }
        for &u in &part.open {
            covered[u] = true;
        }
    }
    if let Some(x) = covered.iter().position(|&c| !c) {
        return Err(format!("element {x} is not covered"));
    }
    Ok(())
}
