//! CPLEX LP text format.
//!
//! The writer emits `Minimize`/`Maximize`, `Subject To`, `Binary` and `End`
//! sections. A `\` comment right after the sense keyword records the problem kind and sizes so the
//! reader can rebuild an identical [`IlpModel`].

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::model::{Cmp, IlpModel, LinearConstraint, Objective, ProblemKind, Sense, VarTag};

const WRAP_AT: usize = 240;

fn render_expr(out: &mut String, indent: usize, model: &IlpModel, terms: &[(usize, i64)]) {
    let mut line_len = indent;
    if terms.is_empty() {
        // an empty expression still needs a variable to be valid LP
        out.push_str("0 V_0");
        return;
    }
    for (k, &(var, coef)) in terms.iter().enumerate() {
        let name = model.variables()[var].to_string();
        let sign = if coef < 0 { "-" } else { "+" };
        let magnitude = coef.unsigned_abs();
        let mut piece = String::new();
        if k == 0 {
            if coef < 0 {
                piece.push_str("- ");
            }
        } else {
            piece.push_str(sign);
            piece.push(' ');
        }
        if magnitude != 1 {
            write!(piece, "{magnitude} ").unwrap();
        }
        piece.push_str(&name);
        if k > 0 {
            if line_len + piece.len() + 1 > WRAP_AT {
                out.push_str("\n   ");
                line_len = 3;
            } else {
                out.push(' ');
                line_len += 1;
            }
        }
        line_len += piece.len();
        out.push_str(&piece);
    }
}

/// Renders the model as LP text. Output is deterministic.
pub fn export_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    out.push_str(match model.objective().sense {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    write!(
        out,
        "\\ subelect kind={} m_prime={}",
        model.kind.as_str(),
        model.m_prime
    )
    .unwrap();
    if let Some(n) = model.n_prime {
        write!(out, " n_prime={n}").unwrap();
    }
    out.push('\n');
    out.push_str(" obj: ");
    render_expr(&mut out, 6, model, &model.objective().terms);
    out.push_str("\nSubject To\n");
    for con in model.constraints() {
        write!(out, " {}: ", con.name).unwrap();
        render_expr(&mut out, con.name.len() + 3, model, &con.terms);
        writeln!(out, " {} {}", con.cmp.symbol(), con.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for tag in model.variables() {
        writeln!(out, " {tag}").unwrap();
    }
    out.push_str("End\n");
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Label(String),
    Number(i64),
    Plus,
    Minus,
    Cmp(Cmp),
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let err = |reason: String| Error::LpParse { line, reason };
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '<' | '>' | '=' => {
                let mut j = i + 1;
                if j < bytes.len() && matches!(bytes[j], b'=' | b'<' | b'>') {
                    j += 1;
                }
                let cmp = match &text[i..j] {
                    "<=" | "<" | "=<" => Cmp::Le,
                    ">=" | ">" | "=>" => Cmp::Ge,
                    "=" => Cmp::Eq,
                    other => return Err(err(format!("bad operator `{other}`"))),
                };
                tokens.push(Token::Cmp(cmp));
                i = j;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| err(format!("bad number `{}`", &text[start..i])))?;
                tokens.push(Token::Number(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = text[start..i].to_string();
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_whitespace() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b':' {
                    tokens.push(Token::Label(word));
                    i = j + 1;
                } else {
                    tokens.push(Token::Name(word));
                }
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

/// Parses `[+|-] [coef] name ...` starting at `pos`, stopping at a comparison
/// operator, a label, or the end of input.
fn parse_expr(
    tokens: &[Token],
    pos: &mut usize,
    resolve: &dyn Fn(&str) -> Result<usize>,
    line: usize,
) -> Result<Vec<(usize, i64)>> {
    let mut terms = Vec::new();
    loop {
        let mut sign = 1;
        let mut seen_sign = false;
        while let Some(tok @ (Token::Plus | Token::Minus)) = tokens.get(*pos) {
            if *tok == Token::Minus {
                sign = -sign;
            }
            seen_sign = true;
            *pos += 1;
        }
        let coef = match tokens.get(*pos) {
            Some(Token::Number(n)) => {
                *pos += 1;
                *n
            }
            _ => 1,
        };
        match tokens.get(*pos) {
            Some(Token::Name(name)) => {
                *pos += 1;
                if coef != 0 {
                    terms.push((resolve(name)?, sign * coef));
                }
            }
            _ if seen_sign || coef != 1 => {
                return Err(Error::LpParse {
                    line,
                    reason: "expected a variable".into(),
                })
            }
            _ => return Ok(terms),
        }
    }
}

/// Reads LP text produced by [`export_lp`] back into a model.
pub fn parse_lp(text: &str) -> Result<IlpModel> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Objective,
        Constraints,
        Binary,
        End,
    }
    let mut section = Section::Preamble;
    let mut meta: Option<(ProblemKind, usize, Option<usize>)> = None;
    let mut sense = None;
    let mut objective_text = String::new();
    let mut objective_line = 0;
    let mut constraint_text = String::new();
    let mut constraint_line = 0;
    let mut names: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('\\') {
            if meta.is_none() {
                meta = parse_meta(comment.trim());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "minimize" | "minimise" | "min" => {
                sense = Some(Sense::Minimize);
                section = Section::Objective;
                objective_line = line_no;
                continue;
            }
            "maximize" | "maximise" | "max" => {
                sense = Some(Sense::Maximize);
                section = Section::Objective;
                objective_line = line_no;
                continue;
            }
            "subject to" | "such that" | "st" | "s.t." => {
                section = Section::Constraints;
                constraint_line = line_no;
                continue;
            }
            "binary" | "binaries" | "bin" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        let target = match section {
            Section::Objective => &mut objective_text,
            Section::Constraints => &mut constraint_text,
            Section::Binary => {
                names.extend(line.split_whitespace().map(str::to_string));
                continue;
            }
            Section::Preamble | Section::End => {
                return Err(Error::LpParse {
                    line: line_no,
                    reason: "content outside of a section".into(),
                })
            }
        };
        target.push_str(line);
        target.push('\n');
    }

    let sense = sense.ok_or(Error::LpParse {
        line: 1,
        reason: "missing objective section".into(),
    })?;
    let (kind, m_prime, n_prime) = meta.ok_or(Error::LpParse {
        line: 1,
        reason: "missing `\\ subelect kind=...` header".into(),
    })?;

    let mut vars = Vec::with_capacity(names.len());
    for name in &names {
        vars.push(VarTag::parse(name).ok_or_else(|| Error::LpParse {
            line: 0,
            reason: format!("unsupported variable name `{name}`"),
        })?);
    }
    let index: std::collections::HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let resolve = |name: &str| -> Result<usize> {
        index.get(name).copied().ok_or_else(|| Error::LpParse {
            line: 0,
            reason: format!("undeclared variable `{name}`"),
        })
    };

    let tokens = tokenize(&objective_text, objective_line)?;
    let mut pos = 0;
    if let Some(Token::Label(_)) = tokens.first() {
        pos = 1;
    }
    let objective_terms = parse_expr(&tokens, &mut pos, &resolve, objective_line)?;
    if pos != tokens.len() {
        return Err(Error::LpParse {
            line: objective_line,
            reason: "trailing tokens in objective".into(),
        });
    }

    let tokens = tokenize(&constraint_text, constraint_line)?;
    let mut pos = 0;
    let mut constraints = Vec::new();
    while pos < tokens.len() {
        let name = match &tokens[pos] {
            Token::Label(l) => {
                pos += 1;
                l.clone()
            }
            _ => format!("c{}", constraints.len()),
        };
        let terms = parse_expr(&tokens, &mut pos, &resolve, constraint_line)?;
        let cmp = match tokens.get(pos) {
            Some(Token::Cmp(c)) => *c,
            _ => {
                return Err(Error::LpParse {
                    line: constraint_line,
                    reason: format!("constraint `{name}` has no operator"),
                })
            }
        };
        pos += 1;
        let mut sign = 1;
        if let Some(Token::Minus) = tokens.get(pos) {
            sign = -1;
            pos += 1;
        } else if let Some(Token::Plus) = tokens.get(pos) {
            pos += 1;
        }
        let rhs = match tokens.get(pos) {
            Some(Token::Number(n)) => sign * n,
            _ => {
                return Err(Error::LpParse {
                    line: constraint_line,
                    reason: format!("constraint `{name}` has no right-hand side"),
                })
            }
        };
        pos += 1;
        constraints.push(LinearConstraint {
            name,
            terms,
            cmp,
            rhs,
        });
    }

    Ok(IlpModel::from_parts(
        kind,
        m_prime,
        n_prime,
        vars,
        constraints,
        Objective {
            sense,
            terms: objective_terms,
        },
    ))
}

fn parse_meta(comment: &str) -> Option<(ProblemKind, usize, Option<usize>)> {
    let rest = comment.strip_prefix("subelect")?;
    let mut kind = None;
    let mut m_prime = None;
    let mut n_prime = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=')?;
        match key {
            "kind" => kind = ProblemKind::parse(value),
            "m_prime" => m_prime = value.parse().ok(),
            "n_prime" => n_prime = value.parse().ok(),
            _ => {}
        }
    }
    Some((kind?, m_prime?, n_prime))
}
