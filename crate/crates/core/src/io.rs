//! Edge-list text format.
//!
//! One edge per line as two whitespace-separated tokens. `#` starts a comment
//! and blank lines are ignored. Vertex ids are assigned in order of first
//! appearance. Two directives, written as comments so that other readers skip
//! them, declare vertices ahead of the edges (this is how isolated vertices
//! and the id order survive a round trip):
//!
//! ```text
//! #!vertices 4     declares tokens "0", "1", "2", "3"
//! #!vertex a       declares the token "a"
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

struct Interner {
    ids: HashMap<String, usize>,
    tokens: Vec<String>,
}

impl Interner {
    fn id(&mut self, tok: &str) -> usize {
        if let Some(&id) = self.ids.get(tok) {
            return id;
        }
        let id = self.tokens.len();
        self.ids.insert(tok.to_string(), id);
        self.tokens.push(tok.to_string());
        id
    }
}

/// Parses the edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut interner = Interner {
        ids: HashMap::new(),
        tokens: Vec::new(),
    };
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(directive) = raw.trim_start().strip_prefix("#!") {
            parse_directive(directive, line, &mut interner)?;
            continue;
        }
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [a, b] => {
                if a == b {
                    return Err(Error::SelfLoop {
                        line,
                        token: a.to_string(),
                    });
                }
                edges.push((interner.id(a), interner.id(b)));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two tokens, found {}", toks.len()),
                })
            }
        }
    }
    let n = interner.tokens.len();
    Graph::from_edges(n, edges)?.with_labels(interner.tokens)
}

fn parse_directive(directive: &str, line: usize, interner: &mut Interner) -> Result<()> {
    let toks: Vec<&str> = directive.split_whitespace().collect();
    let bad = |message: String| Error::Parse { line, message };
    match toks.as_slice() {
        ["vertices", count] => {
            let count: usize = count
                .parse()
                .map_err(|_| bad(format!("bad vertex count `{count}`")))?;
            for i in 0..count {
                interner.id(&i.to_string());
            }
            Ok(())
        }
        ["vertex", tok] => {
            interner.id(tok);
            Ok(())
        }
        _ => Err(bad(format!("unknown directive `#!{}`", directive.trim()))),
    }
}

/// Serializes `g` so that [`parse_edge_list`] reproduces it exactly. The
/// vertex directives are emitted only when the bare edge lines would not.
pub fn to_edge_list(g: &Graph) -> String {
    let mut body = String::new();
    for (u, v) in g.edges() {
        body.push_str(&format!("{} {}\n", g.label(u), g.label(v)));
    }
    if parse_edge_list(&body).is_ok_and(|h| h == *g) {
        return body;
    }
    let mut out = String::new();
    match g.labels() {
        None => out.push_str(&format!("#!vertices {}\n", g.n())),
        Some(labels) => {
            for l in labels {
                out.push_str(&format!("#!vertex {l}\n"));
            }
        }
    }
    out + &body
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s)
    }
}
