//! Certificates for `cat` and `CC_m` values and their text format.
//!
//! ```text
//! certificate section
//! m 3
//! part
//! subset (c,d)
//! open (a,a) (a,b) (a,d) ...
//! (a,a) -> [a, a, a, a]
//! ...
//! end
//! ```
//!
//! and, for categorical covers,
//!
//! ```text
//! certificate cat
//! ambient base
//! part
//! subset c
//! open a b c
//! map [a, b, c]
//! map [c, c, c]
//! end
//! ```
//!
//! Each `map` line of a cat part lists the images of the `open` elements in
//! order; consecutive maps are comparable, the first is the inclusion and the
//! last is constant.

use crate::error::{Error, Result};
use crate::poset::{Elem, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPart {
    pub subset: Vec<(Elem, Elem)>,
    pub open: Vec<(Elem, Elem)>,
    /// One path per element of `open`, each of length `m`.
    pub rows: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCertificate {
    pub m: usize,
    pub parts: Vec<SectionPart>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatAmbient {
    /// Opens of `P` itself.
    Base,
    /// Opens of `P x P`; element ids are product ids `x * |P| + y`.
    Square,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatPart {
    pub subset: Vec<Elem>,
    pub open: Vec<Elem>,
    /// Maps `open -> ambient`, each indexed like `open`.
    pub fence: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatCertificate {
    pub ambient: CatAmbient,
    pub parts: Vec<CatPart>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Section(SectionCertificate),
    Cat(CatCertificate),
}

fn pair_label(p: &FinitePoset, (x, y): (Elem, Elem)) -> String {
    format!("({},{})", p.label(x), p.label(y))
}

fn list_label<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    format!("[{}]", labels.collect::<Vec<_>>().join(", "))
}

impl SectionCertificate {
    pub fn to_text(&self, p: &FinitePoset) -> String {
        let mut out = format!("certificate section\nm {}\n", self.m);
        for part in &self.parts {
            out.push_str("part\nsubset");
            for &s in &part.subset {
                out.push(' ');
                out.push_str(&pair_label(p, s));
            }
            out.push_str("\nopen");
            for &u in &part.open {
                out.push(' ');
                out.push_str(&pair_label(p, u));
            }
            out.push('\n');
            for (&u, row) in part.open.iter().zip(&part.rows) {
                out.push_str(&format!(
                    "{} -> {}\n",
                    pair_label(p, u),
                    list_label(row.iter().map(|&v| p.label(v)))
                ));
            }
            out.push_str("end\n");
        }
        out
    }
}

impl CatCertificate {
    /// `ambient` must be `P` for [`CatAmbient::Base`] and `P x P` for
    /// [`CatAmbient::Square`].
    pub fn to_text(&self, ambient: &FinitePoset) -> String {
        let kind = match self.ambient {
            CatAmbient::Base => "base",
            CatAmbient::Square => "square",
        };
        let mut out = format!("certificate cat\nambient {kind}\n");
        for part in &self.parts {
            let names = |xs: &[Elem]| xs.iter().map(|&x| ambient.label(x)).collect::<Vec<_>>().join(" ");
            out.push_str(&format!("part\nsubset {}\nopen {}\n", names(&part.subset), names(&part.open)));
            for map in &part.fence {
                out.push_str(&format!("map {}\n", list_label(map.iter().map(|&v| ambient.label(v)))));
            }
            out.push_str("end\n");
        }
        out
    }
}

impl Certificate {
    pub fn to_text(&self, p: &FinitePoset) -> String {
        match self {
            Certificate::Section(c) => c.to_text(p),
            Certificate::Cat(c) => match c.ambient {
                CatAmbient::Base => c.to_text(p),
                CatAmbient::Square => c.to_text(&p.product(p)),
            },
        }
    }
}

struct Lines<'t> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'t>>>,
}

impl<'t> Lines<'t> {
    fn new(text: &'t str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
        }
    }

    fn skip_blank(&mut self) {
        while let Some((_, l)) = self.inner.peek() {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Option<(usize, &'t str)> {
        self.skip_blank();
        self.inner.next().map(|(i, l)| (i + 1, l.trim()))
    }

    fn peek(&mut self) -> Option<&'t str> {
        self.skip_blank();
        self.inner.peek().map(|(_, l)| l.trim())
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'t str)> {
        self.next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of certificate, wanted {what}")))
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'t str)> {
        let (no, line) = self.expect(key)?;
        match line.strip_prefix(key) {
            Some(rest) if rest.is_empty() || rest.starts_with(' ') => Ok((no, rest.trim())),
            _ => Err(Error::parse(no, format!("expected `{key}`, found `{line}`"))),
        }
    }
}

fn elem(p: &FinitePoset, name: &str, line: usize) -> Result<Elem> {
    p.index_of(name)
        .ok_or_else(|| Error::parse(line, format!("unknown element `{name}`")))
}

fn parse_pair(p: &FinitePoset, token: &str, line: usize) -> Result<(Elem, Elem)> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(line, format!("expected a pair, found `{token}`")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::parse(line, format!("expected a pair, found `{token}`")))?;
    Ok((elem(p, a.trim(), line)?, elem(p, b.trim(), line)?))
}

fn parse_list(p: &FinitePoset, text: &str, line: usize) -> Result<Vec<Elem>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(line, format!("expected a bracketed list, found `{text}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(inner)
        .into_iter()
        .map(|t| elem(p, t.trim(), line))
        .collect()
}

/// Splits on commas outside parentheses, so pair labels survive.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Reads either certificate kind. Labels are resolved against `p` (and
/// `P x P` for square-ambient cat certificates).
pub fn parse_certificate(text: &str, p: &FinitePoset) -> Result<Certificate> {
    let mut lines = Lines::new(text);
    let (no, kind) = lines.keyword("certificate")?;
    match kind {
        "section" => parse_section(&mut lines, p).map(Certificate::Section),
        "cat" => parse_cat(&mut lines, p).map(Certificate::Cat),
        other => Err(Error::parse(no, format!("unknown certificate kind `{other}`"))),
    }
}

fn parse_section(lines: &mut Lines<'_>, p: &FinitePoset) -> Result<SectionCertificate> {
    let (no, m) = lines.keyword("m")?;
    let m = m
        .parse()
        .map_err(|_| Error::parse(no, format!("bad fence length `{m}`")))?;
    let mut parts = Vec::new();
    while lines.peek().is_some() {
        lines.keyword("part")?;
        let (no, subset) = lines.keyword("subset")?;
        let subset = subset
            .split_whitespace()
            .map(|t| parse_pair(p, t, no))
            .collect::<Result<Vec<_>>>()?;
        let (no, open) = lines.keyword("open")?;
        let open = open
            .split_whitespace()
            .map(|t| parse_pair(p, t, no))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = vec![None; open.len()];
        loop {
            let (no, line) = lines.expect("a section row or `end`")?;
            if line == "end" {
                break;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(no, format!("expected `(x,y) -> [...]`, found `{line}`")))?;
            let at = parse_pair(p, lhs.trim(), no)?;
            let idx = open
                .iter()
                .position(|&u| u == at)
                .ok_or_else(|| Error::parse(no, "row for a pair outside the open set"))?;
            if rows[idx].is_some() {
                return Err(Error::parse(no, "duplicate section row"));
            }
            rows[idx] = Some(parse_list(p, rhs, no)?);
        }
        let rows = rows
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::parse(0, "missing section row"))?;
        parts.push(SectionPart { subset, open, rows });
    }
    Ok(SectionCertificate { m, parts })
}

fn parse_cat(lines: &mut Lines<'_>, p: &FinitePoset) -> Result<CatCertificate> {
    let (no, kind) = lines.keyword("ambient")?;
    let (ambient_kind, square);
    let ambient = match kind {
        "base" => {
            ambient_kind = CatAmbient::Base;
            p
        }
        "square" => {
            ambient_kind = CatAmbient::Square;
            square = p.product(p);
            &square
        }
        other => return Err(Error::parse(no, format!("unknown ambient `{other}`"))),
    };
    let mut parts = Vec::new();
    while lines.peek().is_some() {
        lines.keyword("part")?;
        let (no, subset) = lines.keyword("subset")?;
        let subset = subset
            .split_whitespace()
            .map(|t| elem(ambient, t, no))
            .collect::<Result<Vec<_>>>()?;
        let (no, open) = lines.keyword("open")?;
        let open = open
            .split_whitespace()
            .map(|t| elem(ambient, t, no))
            .collect::<Result<Vec<_>>>()?;
        let mut fence = Vec::new();
        loop {
            let (no, line) = lines.expect("a `map` line or `end`")?;
            if line == "end" {
                break;
            }
            let rest = line
                .strip_prefix("map")
                .ok_or_else(|| Error::parse(no, format!("expected `map`, found `{line}`")))?;
            fence.push(parse_list(ambient, rest, no)?);
        }
        parts.push(CatPart { subset, open, fence });
    }
    Ok(CatCertificate {
        ambient: ambient_kind,
        parts,
    })
}
