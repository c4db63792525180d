//! Graph ingestion.
//!
//! * edge list: whitespace separated `u v [w]` lines, `#` starts a comment,
//!   a lone token declares an isolated vertex, `w` defaults to 1;
//! * GML subset: only `node [ id .. label .. ]` and
//!   `edge [ source .. target .. value .. ]` are read, everything else is
//!   skipped;
//! * METIS / DIMACS adjacency files (`%` comments, optional edge weights).
//!
//! Parallel edges are merged by summing their costs.

use std::collections::HashMap;
use std::path::Path;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Gml,
    Metis,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("gml") => Format::Gml,
            Some("graph") | Some("metis") => Format::Metis,
            _ => Format::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty input".into(),
        });
    }
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Gml => parse_gml(text),
        Format::Metis => parse_metis(text),
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_cost(token: &str, line: usize) -> Result<Cost> {
    token
        .parse::<Cost>()
        .map_err(|_| parse_err(line, format!("invalid weight {token:?}")))
}

fn add_edge(builder: &mut GraphBuilder, u: usize, v: usize, cost: Cost, line: usize) -> Result<()> {
    if !cost.is_positive() {
        return Err(Error::Validation(format!(
            "line {line}: non-positive edge cost {cost}"
        )));
    }
    builder.edge(u, v, cost)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut builder = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                builder.vertex(v);
            }
            [u, v] | [u, v, _] => {
                let cost = match tokens.get(2) {
                    Some(w) => parse_cost(w, line)?,
                    None => Cost::one(),
                };
                let u = builder.vertex(u);
                let v = builder.vertex(v);
                add_edge(&mut builder, u, v, cost, line)?;
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("expected `u v [w]`, found {} fields", tokens.len()),
                ))
            }
        }
    }
    Ok(builder.build())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
    Text(String),
}

fn tokenize_gml(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '[' => {
                tokens.push((Token::Open, line));
                chars.next();
            }
            ']' => {
                tokens.push((Token::Close, line));
                chars.next();
            }
            '"' => {
                let start = line;
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') => {
                            line += 1;
                            s.push('\n');
                        }
                        Some(c) => s.push(c),
                        None => return Err(parse_err(start, "unterminated string")),
                    }
                }
                tokens.push((Token::Text(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '[' || c == ']' || c == '"' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                tokens.push((Token::Word(s), line));
            }
        }
    }
    Ok(tokens)
}

/// A parsed GML list: key/value pairs where values are scalars or lists.
#[derive(Debug)]
enum Value {
    Scalar(String, usize),
    List(Vec<(String, Value)>, usize),
}

fn parse_gml_list(tokens: &[(Token, usize)], pos: &mut usize, nested: bool) -> Result<Vec<(String, Value)>> {
    let mut items = Vec::new();
    loop {
        let Some((token, line)) = tokens.get(*pos) else {
            if nested {
                let line = tokens.last().map_or(1, |t| t.1);
                return Err(parse_err(line, "missing `]`"));
            }
            return Ok(items);
        };
        let line = *line;
        match token {
            Token::Close if nested => {
                *pos += 1;
                return Ok(items);
            }
            Token::Word(key) => {
                *pos += 1;
                let value = match tokens.get(*pos) {
                    Some((Token::Open, l)) => {
                        let l = *l;
                        *pos += 1;
                        Value::List(parse_gml_list(tokens, pos, true)?, l)
                    }
                    Some((Token::Word(s), l)) | Some((Token::Text(s), l)) => {
                        *pos += 1;
                        Value::Scalar(s.clone(), *l)
                    }
                    _ => return Err(parse_err(line, format!("key {key:?} has no value"))),
                };
                items.push((key.clone(), value));
            }
            other => return Err(parse_err(line, format!("unexpected token {other:?}"))),
        }
    }
}

fn scalar<'a>(items: &'a [(String, Value)], key: &str) -> Option<(&'a str, usize)> {
    items.iter().find_map(|(k, v)| match v {
        Value::Scalar(s, l) if k == key => Some((s.as_str(), *l)),
        _ => None,
    })
}

fn parse_gml(text: &str) -> Result<Graph> {
    let tokens = tokenize_gml(text)?;
    let mut pos = 0;
    let top = parse_gml_list(&tokens, &mut pos, false)?;
    let (graph_items, _) = top
        .iter()
        .find_map(|(k, v)| match v {
            Value::List(items, l) if k == "graph" => Some((items, *l)),
            _ => None,
        })
        .ok_or_else(|| parse_err(1, "no `graph [ ... ]` block"))?;

    let mut builder = GraphBuilder::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (key, value) in graph_items {
        let Value::List(items, line) = value else { continue };
        if key != "node" {
            continue;
        }
        let (id, _) = scalar(items, "id").ok_or_else(|| parse_err(*line, "node without id"))?;
        if ids.contains_key(id) {
            return Err(parse_err(*line, format!("duplicate node id {id}")));
        }
        let mut label = scalar(items, "label").map_or(id.to_string(), |(l, _)| l.to_string());
        let before = builder.vertex_count();
        let mut v = builder.vertex(&label);
        if builder.vertex_count() == before {
            // label already taken by another node
            label = format!("{label}#{id}");
            v = builder.vertex(&label);
        }
        ids.insert(id.to_string(), v);
    }
    for (key, value) in graph_items {
        let Value::List(items, line) = value else { continue };
        if key != "edge" {
            continue;
        }
        let endpoint = |name: &str| -> Result<usize> {
            let (id, l) = scalar(items, name)
                .ok_or_else(|| parse_err(*line, format!("edge without {name}")))?;
            ids.get(id)
                .copied()
                .ok_or_else(|| parse_err(l, format!("edge {name} {id} is not a node")))
        };
        let u = endpoint("source")?;
        let v = endpoint("target")?;
        let cost = match scalar(items, "value").or_else(|| scalar(items, "weight")) {
            Some((w, l)) => parse_cost(w, l)?,
            None => Cost::one(),
        };
        add_edge(&mut builder, u, v, cost, *line)?;
    }
    Ok(builder.build())
}

fn parse_metis(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 {
        return Err(parse_err(header_line, "header must be `n m [fmt [ncon]]`"));
    }
    let int = |s: &str, line: usize| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| parse_err(line, format!("expected an integer, found {s:?}")))
    };
    let n = int(fields[0], header_line)?;
    let fmt = fields.get(2).copied().unwrap_or("0");
    let fmt_digits: Vec<char> = format!("{fmt:0>3}").chars().collect();
    let has_sizes = fmt_digits[0] == '1';
    let has_vertex_weights = fmt_digits[1] == '1';
    let has_edge_weights = fmt_digits[2] == '1';
    let ncon = match fields.get(3) {
        Some(s) => int(s, header_line)?,
        None => usize::from(has_vertex_weights),
    };

    let mut builder = GraphBuilder::with_vertices(0);
    for v in 1..=n {
        builder.vertex(&v.to_string());
    }
    let mut u = 0;
    for (line, content) in lines {
        if u == n {
            if content.trim().is_empty() {
                continue;
            }
            return Err(parse_err(line, "more adjacency lines than vertices"));
        }
        let mut tokens = content.split_whitespace();
        let skip = usize::from(has_sizes) + if has_vertex_weights { ncon } else { 0 };
        for _ in 0..skip {
            tokens.next();
        }
        while let Some(t) = tokens.next() {
            let v = int(t, line)?;
            if v == 0 || v > n {
                return Err(parse_err(line, format!("neighbor {v} out of range")));
            }
            let cost = if has_edge_weights {
                let w = tokens
                    .next()
                    .ok_or_else(|| parse_err(line, "missing edge weight"))?;
                parse_cost(w, line)?
            } else {
                Cost::one()
            };
            // every edge appears in both adjacency lists
            if u < v - 1 {
                add_edge(&mut builder, u, v - 1, cost, line)?;
            }
        }
        u += 1;
    }
    if u != n {
        return Err(parse_err(header_line, format!("expected {n} adjacency lines, found {u}")));
    }
    Ok(builder.build())
}
