//! Profile readers and writers.
//!
//! The native profile format:
//!
//! ```text
//! m n
//! <m candidate labels, one per line>
//! <n votes, one per line: labels separated by '>', best first>
//! ```
//!
//! Lines starting with `#` are comments. PrefLib strict-complete-order files
//! (`.soc`) are read by [`parse_preflib_soc`].

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::election::Election;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
}

/// Parses the native profile format.
pub fn parse_election(text: &str) -> Result<Election> {
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let (m, n) = parse_header(header)?;

    let mut labels = Vec::with_capacity(m);
    let mut index = HashMap::with_capacity(m);
    for _ in 0..m {
        let (line, label) = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader(format!("expected {m} candidate labels")))?;
        let label = label.trim();
        if label.contains(char::is_whitespace) || label.contains('>') {
            return Err(Error::MalformedLine {
                line,
                reason: format!("invalid candidate label `{label}`"),
            });
        }
        if index.insert(label.to_string(), labels.len()).is_some() {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        labels.push(label.to_string());
    }

    let mut rankings = Vec::with_capacity(n);
    for voter in 0..n {
        let (_, vote) = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader(format!("expected {n} votes, found {voter}")))?;
        let mut ranking = Vec::with_capacity(m);
        for token in vote.split('>') {
            let token = token.trim();
            let c = *index
                .get(token)
                .ok_or_else(|| Error::UnknownCandidate(token.to_string()))?;
            ranking.push(c);
        }
        rankings.push(ranking);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::MalformedLine {
            line,
            reason: format!("trailing content after {n} votes"),
        });
    }
    Election::new(labels, rankings)
}

fn parse_header(header: &str) -> Result<(usize, usize)> {
    let bad = || Error::MalformedHeader(format!("expected `m n`, got `{header}`"));
    let (m, n) = header.split_once(' ').ok_or_else(bad)?;
    let parse = |s: &str| -> Result<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse().map_err(|_| bad())
    };
    let (m, n) = (parse(m)?, parse(n)?);
    if m == 0 || n == 0 {
        return Err(Error::MalformedHeader("m and n must be positive".into()));
    }
    Ok((m, n))
}

/// Renders an election in the native profile format.
///
/// Whitespace and `>` inside labels are replaced by `_`.
pub fn write_election(e: &Election) -> String {
    let labels: Vec<String> = e
        .labels()
        .iter()
        .map(|l| l.replace(|c: char| c.is_whitespace() || c == '>', "_"))
        .collect();
    let mut out = String::new();
    writeln!(out, "{} {}", e.m(), e.n()).unwrap();
    for l in &labels {
        writeln!(out, "{l}").unwrap();
    }
    for ranking in e.rankings() {
        let vote: Vec<&str> = ranking.iter().map(|&c| labels[c].as_str()).collect();
        writeln!(out, "{}", vote.join(" > ")).unwrap();
    }
    out
}

/// Parses a PrefLib SOC file.
///
/// Data lines are `count: i1,i2,...` with 1-based candidate ids, expanded
/// `count` times. Candidate names come from `# ALTERNATIVE NAME i: label`
/// metadata when present. The legacy layout (candidate count, `i,name`
/// lines, a `voters,sum,unique` line, then `count,i1,i2,...`) is accepted too.
pub fn parse_preflib_soc(text: &str) -> Result<Election> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    if first.starts_with('#') {
        parse_soc_modern(text)
    } else {
        parse_soc_legacy(text)
    }
}

fn parse_soc_modern(text: &str) -> Result<Election> {
    let mut names: HashMap<usize, String> = HashMap::new();
    let mut declared_m = None;
    let mut rankings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(rest) = meta.strip_prefix("ALTERNATIVE NAME") {
                let (id, name) = rest.split_once(':').ok_or_else(|| Error::MalformedLine {
                    line: line_no,
                    reason: "alternative name without `:`".into(),
                })?;
                let id = parse_id(id.trim(), line_no)?;
                names.insert(id, name.trim().to_string());
            } else if let Some(rest) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
                declared_m = Some(parse_id(rest.trim(), line_no)?);
            }
            continue;
        }
        let (count, order) = line.split_once(':').ok_or_else(|| Error::MalformedLine {
            line: line_no,
            reason: "expected `count: i1,i2,...`".into(),
        })?;
        push_soc_vote(&mut rankings, count, order, line_no)?;
    }
    let m = declared_m
        .or_else(|| rankings.first().map(Vec::len))
        .ok_or_else(|| Error::MalformedHeader("no votes".into()))?;
    finish_soc(m, &names, rankings)
}

fn parse_soc_legacy(text: &str) -> Result<Election> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, first) = lines.next().expect("checked nonempty");
    let m = parse_id(first, line_no)?;
    let mut names = HashMap::new();
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader(format!("expected {m} candidate lines")))?;
        let (id, name) = line.split_once(',').ok_or_else(|| Error::MalformedLine {
            line: line_no,
            reason: "expected `id,name`".into(),
        })?;
        names.insert(parse_id(id.trim(), line_no)?, name.trim().to_string());
    }
    // voters,sum of counts,unique orders
    lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("missing voter summary line".into()))?;
    let mut rankings = Vec::new();
    for (line_no, line) in lines {
        let (count, order) = line.split_once(',').ok_or_else(|| Error::MalformedLine {
            line: line_no,
            reason: "expected `count,i1,i2,...`".into(),
        })?;
        push_soc_vote(&mut rankings, count, order, line_no)?;
    }
    finish_soc(m, &names, rankings)
}

fn parse_id(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::MalformedLine {
        line,
        reason: format!("expected a non-negative integer, got `{s}`"),
    })
}

fn push_soc_vote(
    rankings: &mut Vec<Vec<usize>>,
    count: &str,
    order: &str,
    line: usize,
) -> Result<()> {
    let count = parse_id(count.trim(), line)?;
    let mut ranking = Vec::new();
    for id in order.split(',') {
        let id = parse_id(id.trim(), line)?;
        if id == 0 {
            return Err(Error::UnknownCandidate("0".into()));
        }
        ranking.push(id - 1);
    }
    for _ in 0..count {
        rankings.push(ranking.clone());
    }
    Ok(())
}

fn finish_soc(
    m: usize,
    names: &HashMap<usize, String>,
    rankings: Vec<Vec<usize>>,
) -> Result<Election> {
    for ranking in &rankings {
        if let Some(&c) = ranking.iter().find(|&&c| c >= m) {
            return Err(Error::UnknownCandidate((c + 1).to_string()));
        }
    }
    let labels = (1..=m)
        .map(|id| names.get(&id).cloned().unwrap_or_else(|| id.to_string()))
        .collect();
    Election::new(labels, rankings)
}
