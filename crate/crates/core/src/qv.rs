//! The `.qv` presentation format.
//!
//! ```text
//! # comments run to the end of the line
//! field Q                 # or GF(p)
//! quiver
//!   vertices 1 2 3
//!   arrow alpha 1 -> 2
//!   arrow delta 1 -> 1
//! relations
//!   alpha*epsilon - delta*alpha
//!   delta^2
//!   1/2*alpha*beta + 3 alpha*gamma
//! ```
//!
//! Products are written left to right (`alpha*beta` is `alpha` followed by
//! `beta`); `x^n` repeats a loop. Coefficients are integers or fractions and
//! are reduced modulo `p` over a prime field.

use num_bigint::BigInt;

use crate::field::Field;
use crate::quiver::{Element, Path, Quiver};
use crate::Error;

/// A presentation `kQ/I` as read from a file: the field, the quiver and the
/// generating relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Element>,
}

impl AlgebraSpec {
    /// Checks that every relation is nonzero, parallel and supported on paths
    /// of length at least two.
    pub fn validate(&self) -> Result<(), Error> {
        for r in &self.relations {
            check_relation(&self.quiver, r).map_err(Error::Invalid)?;
        }
        Ok(())
    }

    pub fn to_qv(&self) -> String {
        serialize(self)
    }
}

fn check_relation(q: &Quiver, r: &Element) -> Result<(), String> {
    if r.is_zero() {
        return Err("relation is zero".into());
    }
    if r.endpoints().is_none() {
        return Err(format!(
            "relation `{}` is not a combination of parallel paths",
            q.element_string(r)
        ));
    }
    if r.min_length() < 2 {
        return Err(format!(
            "relation `{}` contains a path of length < 2",
            q.element_string(r)
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn perr(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Lexed>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '/' => Some(Tok::Slash),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Lexed {
                tok: Tok::Num(s.parse().expect("digits")),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Parses a linear combination of paths over `quiver`.
///
/// `line` and `col0` locate the text inside a larger document for error
/// messages (both 1-based).
pub fn parse_element(field: Field, quiver: &Quiver, text: &str, line: usize, col0: usize) -> Result<Element, Error> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut pos = 0;
    let mut z = Element::zero();
    if toks.is_empty() {
        return Err(perr(line, col0, "empty expression"));
    }
    let mut first = true;
    while pos < toks.len() {
        let mut negative = false;
        match toks[pos].tok {
            Tok::Plus => pos += 1,
            Tok::Minus => {
                negative = true;
                pos += 1
            }
            _ if first => {}
            _ => return Err(perr(line, toks[pos].col, "expected `+` or `-`")),
        }
        first = false;
        let term_col = toks.get(pos).map_or(end_col, |t| t.col);
        // Coefficient.
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        if let Some(Lexed { tok: Tok::Num(n), .. }) = toks.get(pos) {
            num = n.clone();
            pos += 1;
            if matches!(toks.get(pos), Some(Lexed { tok: Tok::Slash, .. })) {
                pos += 1;
                match toks.get(pos) {
                    Some(Lexed { tok: Tok::Num(d), .. }) => {
                        den = d.clone();
                        pos += 1;
                    }
                    _ => return Err(perr(line, term_col, "expected denominator")),
                }
            }
            if matches!(toks.get(pos), Some(Lexed { tok: Tok::Star, .. })) {
                pos += 1;
            }
        }
        if negative {
            num = -num;
        }
        let coef = field
            .fraction(&num, &den)
            .map_err(|e| perr(line, term_col, e.to_string()))?;
        // Path.
        let mut path: Option<Path> = None;
        loop {
            let Some(Lexed {
                tok: Tok::Ident(name),
                col,
            }) = toks.get(pos)
            else {
                let col = toks.get(pos).map_or(end_col, |t| t.col);
                return Err(perr(line, col, "expected a path"));
            };
            let col = *col;
            pos += 1;
            let mut power = 1usize;
            if matches!(toks.get(pos), Some(Lexed { tok: Tok::Caret, .. })) {
                pos += 1;
                match toks.get(pos) {
                    Some(Lexed { tok: Tok::Num(n), .. }) => {
                        power = usize::try_from(n)
                            .ok()
                            .filter(|&p| (1..=10_000).contains(&p))
                            .ok_or_else(|| perr(line, col, "bad exponent"))?;
                        pos += 1;
                    }
                    _ => return Err(perr(line, col, "expected exponent")),
                }
            }
            let factor = factor_path(quiver, name).ok_or_else(|| perr(line, col, format!("unknown arrow `{name}`")))?;
            if power > 1 && factor.source != factor.target {
                return Err(perr(
                    line,
                    col,
                    format!("`{name}` is not a loop; cannot raise to a power"),
                ));
            }
            for _ in 0..power {
                path = Some(match path {
                    None => factor.clone(),
                    Some(p) => p
                        .compose(&factor)
                        .ok_or_else(|| perr(line, col, format!("path is not composable at `{name}`")))?,
                });
            }
            if matches!(toks.get(pos), Some(Lexed { tok: Tok::Star, .. })) {
                pos += 1;
            } else {
                break;
            }
        }
        z.add_term(path.expect("nonempty"), coef);
    }
    Ok(z)
}

fn factor_path(q: &Quiver, name: &str) -> Option<Path> {
    if let Ok(a) = q.arrow(name) {
        return Some(q.arrow_path(a));
    }
    let v = name.strip_prefix("e_")?;
    q.vertex(v).ok().map(Path::trivial)
}

#[derive(PartialEq)]
enum Section {
    None,
    Quiver,
    Relations,
}

/// Parses a `.qv` document.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, Error> {
    let mut field: Option<Field> = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut quiver: Option<Quiver> = None;
    let mut pending_relations: Vec<(usize, usize, String)> = Vec::new();
    let mut section = Section::None;
    let mut relations_seen = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.chars().count() - trimmed.chars().count();
        let col = indent + 1;
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap_or("");
        match head {
            "field" => {
                if field.is_some() {
                    return Err(perr(line, col, "duplicate field declaration"));
                }
                let rest: String = words.collect::<Vec<_>>().join("");
                field = Some(parse_field(&rest).map_err(|m| perr(line, col, m))?);
                section = Section::None;
                continue;
            }
            "quiver" => {
                if vertices.is_some() {
                    return Err(perr(line, col, "duplicate quiver section"));
                }
                if words.next().is_some() {
                    return Err(perr(line, col, "unexpected text after `quiver`"));
                }
                section = Section::Quiver;
                continue;
            }
            "relations" => {
                if relations_seen {
                    return Err(perr(line, col, "duplicate relations section"));
                }
                if words.next().is_some() {
                    return Err(perr(line, col, "unexpected text after `relations`"));
                }
                relations_seen = true;
                section = Section::Relations;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(perr(line, col, format!("unexpected `{head}` outside a section"))),
            Section::Quiver => match head {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(perr(line, col, "duplicate vertices line"));
                    }
                    let vs: Vec<String> = words.map(str::to_string).collect();
                    let q = Quiver::new(vs.clone(), vec![]).map_err(|e| perr(line, col, e.to_string()))?;
                    vertices = Some(vs);
                    quiver = Some(q);
                }
                "arrow" => {
                    let Some(q) = quiver.as_mut() else {
                        return Err(perr(line, col, "arrow declared before vertices"));
                    };
                    let parts: Vec<&str> = words.collect();
                    if parts.len() != 4 || parts[2] != "->" {
                        return Err(perr(line, col, "expected `arrow NAME SOURCE -> TARGET`"));
                    }
                    let name = parts[0];
                    if !name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                        || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
                        || name.starts_with("e_")
                    {
                        return Err(perr(line, col, format!("invalid arrow name `{name}`")));
                    }
                    q.add_arrow(name, parts[1], parts[3])
                        .map_err(|e| perr(line, col, e.to_string()))?;
                }
                other => return Err(perr(line, col, format!("unexpected `{other}` in quiver section"))),
            },
            Section::Relations => {
                pending_relations.push((line, col, trimmed.trim_end().to_string()));
            }
        }
    }

    let field = field.ok_or_else(|| perr(1, 1, "missing `field` declaration"))?;
    let quiver = quiver.ok_or_else(|| perr(1, 1, "missing quiver section"))?;
    let mut relations = Vec::new();
    for (line, col, text) in pending_relations {
        let z = parse_element(field, &quiver, &text, line, col)?;
        check_relation(&quiver, &z).map_err(|m| perr(line, col, m))?;
        relations.push(z);
    }
    Ok(AlgebraSpec {
        field,
        quiver,
        relations,
    })
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "Q" | "QQ" | "rationals" => return Ok(Field::Rationals),
        _ => {}
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix("GF"))
        .ok_or_else(|| format!("unknown field `{s}`; expected Q or GF(p)"))?;
    let p: u64 = inner
        .trim()
        .parse()
        .map_err(|_| format!("bad characteristic `{inner}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// Canonical text form: relations listed with their terms in descending
/// admissible order.
pub fn serialize(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", spec.field));
    out.push_str("quiver\n");
    out.push_str(&format!("  vertices {}\n", spec.quiver.vertices.join(" ")));
    for a in &spec.quiver.arrows {
        out.push_str(&format!(
            "  arrow {} {} -> {}\n",
            a.name, spec.quiver.vertices[a.source], spec.quiver.vertices[a.target]
        ));
    }
    out.push_str("relations\n");
    for r in &spec.relations {
        out.push_str(&format!("  {}\n", spec.quiver.element_string(r)));
    }
    out
}
