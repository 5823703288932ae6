//! Line-oriented text format for presentations.
//!
//! ```text
//! quiver rf_a3
//! vertices 1 2 3
//! arrow a: 1 -> 2
//! arrow b: 2 -> 3 weight 1
//! relation a*b          # first a, then b
//! ```
//!
//! Products are diagrammatic: `a*b` traverses `a` and then `b`.

use std::fmt::Write as _;

use super::{Presentation, Quiver, WeightGrading};
use crate::error::{Error, Result};
use crate::rewrite::{Element, Word};
use crate::scalar::{parse_rat, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Colon,
    Arrow,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '‾' || c == '\''
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

type Tokens = Vec<(Tok, usize)>;

/// Tokens with their 1-based columns.
fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, col));
            i += 2;
        } else if c == '-' {
            out.push((Tok::Minus, col));
            i += 1;
        } else if c == '+' {
            out.push((Tok::Plus, col));
            i += 1;
        } else if c == '*' {
            out.push((Tok::Star, col));
            i += 1;
        } else if c == ':' {
            out.push((Tok::Colon, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            if i < chars.len() && is_ident_char(chars[i]) {
                // vertex labels such as `1a`
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else {
                out.push((Tok::Num(chars[start..i].iter().collect()), col));
            }
        } else if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Vertex names may be bare numbers.
fn vertex_name(tok: &Tok) -> Option<String> {
    match tok {
        Tok::Ident(s) | Tok::Num(s) if !s.contains('/') => Some(s.clone()),
        _ => None,
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = String::from("unnamed");
    let mut quiver = Quiver::new(Vec::new())?;
    let mut weights: Vec<u64> = Vec::new();
    // (line, tokens, column offset of the tokens)
    let mut raw_relations: Vec<(usize, Tokens, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let body = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let offset = body.chars().count() - trimmed.chars().count();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(k) => (&trimmed[..k], &trimmed[k..]),
            None => (trimmed, ""),
        };
        let rest_offset = offset + keyword.chars().count();
        match keyword {
            "quiver" => {
                let n = rest.trim();
                if n.is_empty() {
                    return Err(syntax(line_no, offset + 1, "`quiver` needs a name"));
                }
                name = n.to_string();
            }
            "vertices" => {
                for (tok, col) in tokenize(rest, line_no)? {
                    let v = vertex_name(&tok)
                        .ok_or_else(|| syntax(line_no, rest_offset + col, "expected a vertex label"))?;
                    quiver.add_vertex(v)?;
                }
            }
            "arrow" => {
                let toks = tokenize(rest, line_no)?;
                let at = |k: usize| toks.get(k).map(|(_, c)| rest_offset + c).unwrap_or(raw.len() + 1);
                let aname = match toks.first() {
                    Some((Tok::Ident(s), _)) => s.clone(),
                    _ => return Err(syntax(line_no, at(0), "expected an arrow name")),
                };
                if toks.get(1).map(|t| &t.0) != Some(&Tok::Colon) {
                    return Err(syntax(line_no, at(1), "expected `:`"));
                }
                let src = toks
                    .get(2)
                    .and_then(|t| vertex_name(&t.0))
                    .ok_or_else(|| syntax(line_no, at(2), "expected a source vertex"))?;
                if toks.get(3).map(|t| &t.0) != Some(&Tok::Arrow) {
                    return Err(syntax(line_no, at(3), "expected `->`"));
                }
                let tgt = toks
                    .get(4)
                    .and_then(|t| vertex_name(&t.0))
                    .ok_or_else(|| syntax(line_no, at(4), "expected a target vertex"))?;
                let mut weight = 1;
                match toks.get(5) {
                    None => {}
                    Some((Tok::Ident(k), _)) if k == "weight" => match toks.get(6) {
                        Some((Tok::Num(n), _)) if toks.len() == 7 => {
                            weight = n
                                .parse()
                                .map_err(|_| syntax(line_no, at(6), "weight must be a nonnegative integer"))?;
                        }
                        _ => return Err(syntax(line_no, at(6), "expected a single weight")),
                    },
                    Some(_) => return Err(syntax(line_no, at(5), "expected `weight <n>` or end of line")),
                }
                quiver.add_arrow(&aname, &src, &tgt)?;
                weights.push(weight);
            }
            "relation" => {
                let toks = tokenize(rest, line_no)?;
                raw_relations.push((line_no, toks, rest_offset));
            }
            other => {
                return Err(syntax(line_no, offset + 1, format!("unknown directive `{other}`")));
            }
        }
    }

    let grading = WeightGrading::from_weights(weights);
    let mut relations = Vec::new();
    for (index, (line_no, toks, rest_offset)) in raw_relations.into_iter().enumerate() {
        let rel = parse_expr(&toks, line_no, rest_offset, &quiver, &grading)?;
        let ends: Vec<_> = rel.terms().map(|(w, _)| (w.source(), w.target())).collect();
        if let Some(first) = ends.first() {
            if ends.iter().any(|e| e != first) {
                return Err(Error::NonUniform {
                    index,
                    reason: format!("line {line_no}: terms start or end at different vertices"),
                });
            }
        }
        relations.push(rel);
    }
    Ok(Presentation {
        name,
        quiver,
        relations,
        grading,
    })
}

fn parse_expr(
    toks: &[(Tok, usize)],
    line: usize,
    offset: usize,
    q: &Quiver,
    g: &WeightGrading,
) -> Result<Element> {
    let mut elem = Element::zero();
    let mut i = 0;
    let col = |k: usize| toks.get(k).map(|(_, c)| offset + c).unwrap_or(offset + 1);
    if toks.is_empty() {
        return Err(syntax(line, offset + 1, "empty relation"));
    }
    let mut first = true;
    while i < toks.len() {
        let mut sign = Rat::from_integer(1.into());
        if !first {
            match toks[i].0 {
                Tok::Plus => {}
                Tok::Minus => sign = -sign,
                _ => return Err(syntax(line, col(i), "expected `+` or `-`")),
            }
            i += 1;
        }
        first = false;
        while let Some((t, _)) = toks.get(i) {
            match t {
                Tok::Minus => sign = -sign,
                Tok::Plus => {}
                _ => break,
            }
            i += 1;
        }
        let mut coeff = sign;
        if let Some((Tok::Num(n), _)) = toks.get(i) {
            let q = parse_rat(n).ok_or_else(|| syntax(line, col(i), format!("bad scalar `{n}`")))?;
            coeff *= q;
            i += 1;
            if let Some((Tok::Star, _)) = toks.get(i) {
                i += 1;
            }
        }
        let mut arrows = Vec::new();
        loop {
            match toks.get(i) {
                Some((Tok::Ident(name), _)) => {
                    let a = q.arrow_index(name).ok_or_else(|| Error::UnknownArrow(name.clone()))?;
                    arrows.push(a);
                    i += 1;
                }
                _ => return Err(syntax(line, col(i), "expected an arrow name")),
            }
            match toks.get(i) {
                Some((Tok::Star, _)) => i += 1,
                _ => break,
            }
        }
        let word = Word::from_arrows(q, g, &arrows)?;
        elem.add_term(word, coeff);
    }
    Ok(elem)
}

/// Renders a presentation in the input format. `parse_presentation` reads
/// the output back to an equal presentation.
pub fn pretty_print(p: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "quiver {}", p.name);
    let _ = writeln!(out, "vertices {}", p.quiver.vertices().join(" "));
    for (i, a) in p.quiver.arrows().iter().enumerate() {
        let _ = write!(
            out,
            "arrow {}: {} -> {}",
            a.name,
            p.quiver.vertices()[a.source],
            p.quiver.vertices()[a.target]
        );
        if p.grading.weight(i) != 1 {
            let _ = write!(out, " weight {}", p.grading.weight(i));
        }
        out.push('\n');
    }
    for r in &p.relations {
        let _ = writeln!(out, "relation {}", r.display(&p.quiver));
    }
    out
}
