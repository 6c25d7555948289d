//! The sectioned input format: parsing and canonical printing.
//!
//! ```text
//! # comment
//! [field]
//! p = 3
//! precision = 40            optional working precision
//!
//! [extension]               f = T^(p^n) + a_(p^n-1) T^(p^n-1) + ... + a_0
//! n = 1
//! a0 = -x
//! a1 = -t^2
//! conjugate = h + t         optional, repeatable: roots other than h
//!
//! [abstract]                instead of [extension]
//! n = 1
//! a0 = -x                   the residue ā₀
//! element = 1 ; 1 ; -1      F_p coordinates ; jump ; u-value (in u, x)
//!
//! [representation]
//! chi = char(0 1 2)         exponents of ζ_q on the group elements in order
//! rho = 2*ind(0 3 6: 0 1 2) - char(0 0 0)
//! auto = wild               wild | induced | all
//! psi0 = 1                  ψ₀(1) = ζ_p^a
//!
//! [triple]
//! delta = 0
//! rank = 1
//! psi0_dim = 1
//! horizontal = 1 0 1        degree swan rank
//! vertical = deligne 1      or: vertical = computed NAME swan_bar rank_bar
//!
//! [options]
//! unramified_base = false
//! coefficients = 0          characteristic of the coefficient field
//! ```

use crate::expr::{eval, parse_expr, HPoly, ParseError, Residue, Series};
use ramcc_core::algebra::RationalFunction;
use ramcc_core::local::{LaurentSeries, EXACT};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub p: u32,
    pub precision: Option<i64>,
    pub extension: Option<Extension>,
    pub abstract_data: Option<Abstract>,
    pub representation: Option<Representation>,
    pub triple: Option<Triple>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    pub n: u32,
    /// a_0, …, a_(p^n - 1).
    pub coeffs: Vec<LaurentSeries>,
    /// Each root as coefficients of a polynomial in h.
    pub conjugates: Vec<Vec<LaurentSeries>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Abstract {
    pub n: u32,
    pub abar0: RationalFunction,
    pub elements: Vec<AbstractElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbstractElement {
    pub coords: Vec<u32>,
    pub jump: i64,
    pub u: RationalFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Auto {
    Wild,
    Induced,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// Exponents on every element of G.
    Char(Vec<u32>),
    /// Subgroup element indices and the exponents on them.
    Ind(Vec<usize>, Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSpec {
    pub mult: i64,
    pub kind: TermKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Representation {
    pub reps: Vec<(String, Vec<TermSpec>)>,
    pub auto: Option<Auto>,
    pub psi0: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertical {
    Deligne(i64),
    Computed { rep: String, swan_bar: i64, rank_bar: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub delta: i64,
    pub rank: i64,
    pub psi0_dim: i64,
    pub horizontal: Vec<(i64, i64, i64)>,
    pub vertical: Vec<Vertical>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub unramified_base: bool,
    pub coefficients: u32,
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    /// Column of the first character of `value`.
    col: usize,
}

struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn perr(line: usize, col: usize, expected: impl Into<String>) -> ParseError {
    ParseError { line, col, expected: expected.into() }
}

fn split(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| perr(line, lead + trimmed.len() + 1, "']'"))?
                .trim()
                .to_string();
            if out.iter().any(|s| s.name == name) {
                return Err(perr(line, lead + 2, format!("a section other than the repeated [{name}]")));
            }
            out.push(Section { name, line, entries: Vec::new() });
            continue;
        }
        let eq = body.find('=').ok_or_else(|| perr(line, lead + 1, "'key = value'"))?;
        let key = body[..eq].trim().to_string();
        let after = &body[eq + 1..];
        let col = eq + 2 + (after.len() - after.trim_start().len());
        let value = after.trim().to_string();
        if value.is_empty() {
            return Err(perr(line, eq + 2, format!("a value for {key}")));
        }
        let sec = out.last_mut().ok_or_else(|| perr(line, lead + 1, "a [section] header"))?;
        sec.entries.push(Entry { key, value, line, col });
    }
    Ok(out)
}

fn int<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T, ParseError> {
    e.value.parse().map_err(|_| perr(e.line, e.col, what))
}

fn ints(e: &Entry, s: &str, offset: usize, count: Option<usize>, what: &str) -> Result<Vec<i64>, ParseError> {
    let v: Vec<i64> = s
        .split_whitespace()
        .map(|w| w.parse::<i64>().map_err(|_| perr(e.line, e.col + offset, what)))
        .collect::<Result<_, _>>()?;
    if count.is_some_and(|c| c != v.len()) {
        return Err(perr(e.line, e.col + offset, what));
    }
    Ok(v)
}

fn unknown(e: &Entry, section: &str) -> ParseError {
    perr(e.line, 1, format!("a known key of [{section}], not '{}'", e.key))
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let sections = split(text)?;
        let field = sections.iter().find(|s| s.name == "field").ok_or_else(|| perr(1, 1, "a [field] section"))?;
        let mut p = None;
        let mut precision = None;
        for e in &field.entries {
            match e.key.as_str() {
                "p" => {
                    let v: u32 = int(e, "a prime")?;
                    ramcc_core::algebra::PrimeField::new(v).map_err(|_| perr(e.line, e.col, "a prime 2 <= p <= 97"))?;
                    p = Some(v);
                }
                "precision" => {
                    let v: i64 = int(e, "a positive precision")?;
                    if v < 2 {
                        return Err(perr(e.line, e.col, "a precision of at least 2"));
                    }
                    precision = Some(v);
                }
                _ => return Err(unknown(e, "field")),
            }
        }
        let p = p.ok_or_else(|| perr(field.line, 1, "p = PRIME in [field]"))?;
        let mut doc = Document {
            p,
            precision,
            extension: None,
            abstract_data: None,
            representation: None,
            triple: None,
            options: Options::default(),
        };
        for s in &sections {
            match s.name.as_str() {
                "field" => {}
                "extension" => doc.extension = Some(parse_extension(p, s)?),
                "abstract" => doc.abstract_data = Some(parse_abstract(p, s)?),
                "representation" => doc.representation = Some(parse_representation(s)?),
                "triple" => doc.triple = Some(parse_triple(s)?),
                "options" => doc.options = parse_options(s)?,
                other => {
                    return Err(perr(
                        s.line,
                        2,
                        format!("one of field, extension, abstract, representation, triple, options; not '{other}'"),
                    ))
                }
            }
        }
        if doc.extension.is_some() && doc.abstract_data.is_some() {
            let s = sections.iter().find(|s| s.name == "abstract").expect("present");
            return Err(perr(s.line, 1, "either [extension] or [abstract], not both"));
        }
        Ok(doc)
    }

    /// Canonical text; `parse(print(d)) == d`.
    pub fn print(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[field]\np = {}", self.p);
        if let Some(prec) = self.precision {
            let _ = writeln!(out, "precision = {prec}");
        }
        if let Some(e) = &self.extension {
            let _ = writeln!(out, "\n[extension]\nn = {}", e.n);
            for (i, a) in e.coeffs.iter().enumerate() {
                if !(a.is_exact() && a.terms().is_empty()) {
                    let _ = writeln!(out, "a{i} = {a}");
                }
            }
            for c in &e.conjugates {
                let _ = writeln!(out, "conjugate = {}", print_hpoly(c));
            }
        }
        if let Some(a) = &self.abstract_data {
            let _ = writeln!(out, "\n[abstract]\nn = {}\na0 = {}", a.n, a.abar0);
            for el in &a.elements {
                let coords: Vec<String> = el.coords.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "element = {} ; {} ; {}", coords.join(" "), el.jump, el.u);
            }
        }
        if let Some(r) = &self.representation {
            let _ = writeln!(out, "\n[representation]");
            for (name, terms) in &r.reps {
                let _ = writeln!(out, "{name} = {}", print_terms(terms));
            }
            if let Some(a) = r.auto {
                let s = match a {
                    Auto::Wild => "wild",
                    Auto::Induced => "induced",
                    Auto::All => "all",
                };
                let _ = writeln!(out, "auto = {s}");
            }
            if let Some(a) = r.psi0 {
                let _ = writeln!(out, "psi0 = {a}");
            }
        }
        if let Some(t) = &self.triple {
            let _ = writeln!(out, "\n[triple]\ndelta = {}\nrank = {}\npsi0_dim = {}", t.delta, t.rank, t.psi0_dim);
            for (d, s, r) in &t.horizontal {
                let _ = writeln!(out, "horizontal = {d} {s} {r}");
            }
            for v in &t.vertical {
                let _ = match v {
                    Vertical::Deligne(x) => writeln!(out, "vertical = deligne {x}"),
                    Vertical::Computed { rep, swan_bar, rank_bar } => {
                        writeln!(out, "vertical = computed {rep} {swan_bar} {rank_bar}")
                    }
                };
            }
        }
        if self.options != Options::default() {
            let _ = writeln!(
                out,
                "\n[options]\nunramified_base = {}\ncoefficients = {}",
                self.options.unramified_base, self.options.coefficients
            );
        }
        out
    }
}

fn print_hpoly(c: &[LaurentSeries]) -> String {
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| !(a.is_exact() && a.terms().is_empty()))
        .map(|(i, a)| match i {
            0 => format!("({a})"),
            1 => format!("({a})*h"),
            _ => format!("({a})*h^{i}"),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_terms(terms: &[TermSpec]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let body = match &t.kind {
            TermKind::Char(v) => format!("char({})", join(v)),
            TermKind::Ind(h, v) => format!("ind({}: {})", join(h), join(v)),
        };
        let m = t.mult.abs();
        let sign = match (i, t.mult < 0) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sign);
        if m != 1 {
            let _ = write!(out, "{m}*");
        }
        out.push_str(&body);
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn level(s: &Section) -> Result<u32, ParseError> {
    let e = s
        .entries
        .iter()
        .find(|e| e.key == "n")
        .ok_or_else(|| perr(s.line, 1, format!("n = LEVEL in [{}]", s.name)))?;
    let n: u32 = int(e, "a positive level n")?;
    if n == 0 || n > 4 {
        return Err(perr(e.line, e.col, "a level 1 <= n <= 4"));
    }
    Ok(n)
}

fn coeff_index(e: &Entry, degree: usize) -> Result<Option<usize>, ParseError> {
    let Some(rest) = e.key.strip_prefix('a') else { return Ok(None) };
    match rest.parse::<usize>() {
        Ok(i) if i < degree => Ok(Some(i)),
        Ok(_) => Err(perr(e.line, 1, format!("a coefficient index below {degree}"))),
        Err(_) => Ok(None),
    }
}

fn parse_extension(p: u32, s: &Section) -> Result<Extension, ParseError> {
    let n = level(s)?;
    let degree = (p as usize).pow(n);
    let mut coeffs = vec![LaurentSeries::zero(p, EXACT); degree];
    let mut seen = vec![false; degree];
    let mut conjugates = Vec::new();
    for e in &s.entries {
        if e.key == "n" {
            continue;
        }
        if let Some(i) = coeff_index(e, degree)? {
            if seen[i] {
                return Err(perr(e.line, 1, format!("a single definition of a{i}")));
            }
            seen[i] = true;
            coeffs[i] = eval(&Series { p }, &parse_expr(&e.value, e.line, e.col)?, e.line)?;
            continue;
        }
        if e.key == "conjugate" {
            conjugates.push(eval(&HPoly { p }, &parse_expr(&e.value, e.line, e.col)?, e.line)?);
            continue;
        }
        return Err(unknown(e, "extension"));
    }
    if !seen[0] {
        return Err(perr(s.line, 1, "a0 = EXPR in [extension]"));
    }
    Ok(Extension { n, coeffs, conjugates })
}

fn parse_abstract(p: u32, s: &Section) -> Result<Abstract, ParseError> {
    let n = level(s)?;
    let mut abar0 = None;
    let mut elements = Vec::new();
    for e in &s.entries {
        match e.key.as_str() {
            "n" => {}
            "a0" => abar0 = Some(eval(&Residue { p, n: 0 }, &parse_expr(&e.value, e.line, e.col)?, e.line)?),
            "element" => {
                let parts: Vec<&str> = e.value.splitn(3, ';').collect();
                if parts.len() != 3 {
                    return Err(perr(e.line, e.col, "'coordinates ; jump ; u-value'"));
                }
                let coords = ints(e, parts[0], 0, Some(n as usize), &format!("{n} coordinates in F_p"))?;
                if coords.iter().any(|&c| c < 0 || c >= p as i64) {
                    return Err(perr(e.line, e.col, format!("coordinates in 0..{p}")));
                }
                let off = parts[0].len() + 1;
                let jump = parts[1].trim().parse().map_err(|_| perr(e.line, e.col + off, "an integer jump"))?;
                let uoff = e.col + off + parts[1].len() + 1;
                let u = eval(&Residue { p, n }, &parse_expr(parts[2], e.line, uoff)?, e.line)?;
                elements.push(AbstractElement { coords: coords.into_iter().map(|c| c as u32).collect(), jump, u });
            }
            _ => return Err(unknown(e, "abstract")),
        }
    }
    let abar0 = abar0.ok_or_else(|| perr(s.line, 1, "a0 = EXPR in [abstract]"))?;
    Ok(Abstract { n, abar0, elements })
}

fn parse_term(e: &Entry, text: &str, off: usize) -> Result<(i64, TermKind), ParseError> {
    let t = text.trim();
    let lead = off + text.len() - text.trim_start().len();
    let (mult, body, boff) = match t.find('*') {
        Some(i) => {
            let m = t[..i].trim().parse().map_err(|_| perr(e.line, e.col + lead, "an integer multiplicity"))?;
            (m, t[i + 1..].trim(), lead + i + 1)
        }
        None => (1, t, lead),
    };
    let open = body.find('(').ok_or_else(|| perr(e.line, e.col + boff, "char(...) or ind(...)"))?;
    let inner = body[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| perr(e.line, e.col + boff + body.len(), "')'"))?;
    let ioff = boff + open + 1;
    let nonneg = |v: Vec<i64>, col: usize| -> Result<Vec<u32>, ParseError> {
        v.into_iter()
            .map(|x| u32::try_from(x).map_err(|_| perr(e.line, e.col + col, "nonnegative integers")))
            .collect()
    };
    match body[..open].trim() {
        "char" => Ok((mult, TermKind::Char(nonneg(ints(e, inner, ioff, None, "exponents")?, ioff)?))),
        "ind" => {
            let colon = inner.find(':').ok_or_else(|| perr(e.line, e.col + ioff, "'subgroup: exponents'"))?;
            let h = nonneg(ints(e, &inner[..colon].replace(',', " "), ioff, None, "element indices")?, ioff)?;
            let v = nonneg(ints(e, &inner[colon + 1..], ioff + colon + 1, Some(h.len()), "one exponent per element")?, ioff)?;
            Ok((mult, TermKind::Ind(h.into_iter().map(|i| i as usize).collect(), v)))
        }
        _ => Err(perr(e.line, e.col + boff, "char(...) or ind(...)")),
    }
}

fn parse_rep(e: &Entry) -> Result<Vec<TermSpec>, ParseError> {
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let mut sign = 1;
    let v = &e.value;
    let push = |from: usize, to: usize, sign: i64, terms: &mut Vec<TermSpec>| -> Result<(), ParseError> {
        let (m, kind) = parse_term(e, &v[from..to], from)?;
        terms.push(TermSpec { mult: sign * m, kind });
        Ok(())
    };
    for (i, c) in v.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if v[start..i].trim().is_empty() {
                    if !terms.is_empty() || start != 0 {
                        return Err(perr(e.line, e.col + i, "a term before the operator"));
                    }
                } else {
                    push(start, i, sign, &mut terms)?;
                }
                sign = if c == '-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, v.len(), sign, &mut terms)?;
    Ok(terms)
}

fn parse_representation(s: &Section) -> Result<Representation, ParseError> {
    let mut r = Representation::default();
    for e in &s.entries {
        match e.key.as_str() {
            "auto" => {
                r.auto = Some(match e.value.as_str() {
                    "wild" => Auto::Wild,
                    "induced" => Auto::Induced,
                    "all" => Auto::All,
                    _ => return Err(perr(e.line, e.col, "wild, induced or all")),
                })
            }
            "psi0" => r.psi0 = Some(int(e, "an exponent a with psi0(1) = zeta_p^a")?),
            name => {
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name.is_empty() {
                    return Err(perr(e.line, 1, "a representation name of letters, digits and '_'"));
                }
                if r.reps.iter().any(|(n, _)| n == name) {
                    return Err(perr(e.line, 1, format!("a single definition of {name}")));
                }
                r.reps.push((name.to_string(), parse_rep(e)?));
            }
        }
    }
    Ok(r)
}

fn parse_triple(s: &Section) -> Result<Triple, ParseError> {
    let get = |k: &str| -> Result<i64, ParseError> {
        let e = s
            .entries
            .iter()
            .find(|e| e.key == k)
            .ok_or_else(|| perr(s.line, 1, format!("{k} = INT in [triple]")))?;
        int(e, "an integer")
    };
    let (delta, rank, psi0_dim) = (get("delta")?, get("rank")?, get("psi0_dim")?);
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for e in &s.entries {
        match e.key.as_str() {
            "delta" | "rank" | "psi0_dim" => {}
            "horizontal" => {
                let v = ints(e, &e.value, 0, Some(3), "'degree swan rank'")?;
                horizontal.push((v[0], v[1], v[2]));
            }
            "vertical" => {
                let words: Vec<&str> = e.value.split_whitespace().collect();
                let bad = || perr(e.line, e.col, "'deligne VALUE' or 'computed NAME SWAN RANK'");
                let num = |w: &str| w.parse::<i64>().map_err(|_| bad());
                vertical.push(match words.as_slice() {
                    ["deligne", v] => Vertical::Deligne(num(v)?),
                    ["computed", rep, sw, rk] => {
                        Vertical::Computed { rep: rep.to_string(), swan_bar: num(sw)?, rank_bar: num(rk)? }
                    }
                    _ => return Err(bad()),
                });
            }
            _ => return Err(unknown(e, "triple")),
        }
    }
    Ok(Triple { delta, rank, psi0_dim, horizontal, vertical })
}

fn parse_options(s: &Section) -> Result<Options, ParseError> {
    let mut o = Options::default();
    for e in &s.entries {
        match e.key.as_str() {
            "unramified_base" => o.unramified_base = int(e, "true or false")?,
            "coefficients" => o.coefficients = int(e, "0 or a prime")?,
            _ => return Err(unknown(e, "options")),
        }
    }
    Ok(o)
}
