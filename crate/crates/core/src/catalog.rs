//! Named graphs and graph-spec tokens.
//!
//! Grammar (case-sensitive, whitespace ignored):
//!
//! ```text
//! spec    := term ('+' term)*            disjoint union
//! term    := K_n | P_n | C_n | K_{a,b} | star_k | grid(a,b) | Q_d
//!          | Petersen | Clebsch | sub_p(spec)
//!          | random_tree(n,seed) | bounded_degree(n,d,seed) | girth5(n,seed)
//!          | apollonian(n,seed) | gnp(n,percent,seed)
//! ```
//!
//! `K_{a,b}` may also be written `K_a,b`; `grid(a,b)` also as `grid_a_b`.

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("C_{n}: cycles need 3 vertices")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges).expect("complete bipartite")
}

/// `K_{1,k}` with the center at id 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// `a × b` grid; vertex `(r, c)` has id `r·b + c`.
pub fn grid(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..a {
        for c in 0..b {
            let v = r * b + c;
            if c + 1 < b {
                edges.push((v, v + 1));
            }
            if r + 1 < a {
                edges.push((v, v + b));
            }
        }
    }
    Graph::from_edges(a * b, edges).expect("grid")
}

/// `d`-dimensional hypercube on bit vectors.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| (0..d).map(move |i| (u, u ^ (1 << i)))).filter(|(u, v)| u < v);
    Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("hypercube")
}

/// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram `5+i – 5+(i+2)%5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("petersen")
}

/// Folded 5-cube: 4-bit vectors adjacent when their XOR has weight 1 or 4.
pub fn clebsch() -> Graph {
    let edges = (0..16usize)
        .flat_map(|u| (u + 1..16).map(move |v| (u, v)))
        .filter(|&(u, v)| matches!((u ^ v).count_ones(), 1 | 4));
    Graph::from_edges(16, edges.collect::<Vec<_>>()).expect("clebsch")
}

/// Resolves a graph-spec token (see the module docs).
pub fn named(spec: &str) -> Result<Graph> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let terms = split_top(&compact, '+');
    let mut acc: Option<Graph> = None;
    for term in terms {
        let g = term_graph(term).map_err(|e| match e {
            Error::UnknownGraph(_) => Error::UnknownGraph(spec.to_string()),
            other => other,
        })?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.disjoint_union(&g),
        });
    }
    acc.ok_or_else(|| Error::UnknownGraph(spec.to_string()))
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn num(s: &str, whole: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::UnknownGraph(whole.to_string()))
}

fn args<'a>(s: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let inner = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(split_top(inner, ','))
}

fn numeric_args(s: &str, head: &str, arity: usize) -> Result<Option<Vec<usize>>> {
    match args(s, head) {
        None => Ok(None),
        Some(a) if a.len() == arity => a.iter().map(|x| num(x, s)).collect::<Result<_>>().map(Some),
        Some(_) => Err(Error::UnknownGraph(s.to_string())),
    }
}

fn term_graph(t: &str) -> Result<Graph> {
    let unknown = || Error::UnknownGraph(t.to_string());
    match t {
        "Petersen" => return Ok(petersen()),
        "Clebsch" => return Ok(clebsch()),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("sub_") {
        let open = rest.find('(').ok_or_else(unknown)?;
        let p = num(&rest[..open], t)?;
        let inner = rest[open..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(unknown)?;
        return Ok(named(inner)?.subdivide(p));
    }
    if let Some(a) = numeric_args(t, "grid", 2)? {
        return Ok(grid(a[0], a[1]));
    }
    if let Some(a) = numeric_args(t, "random_tree", 2)? {
        return Ok(generators::random_tree(a[0], a[1] as u64));
    }
    if let Some(a) = numeric_args(t, "bounded_degree", 3)? {
        return Ok(generators::bounded_degree(a[0], a[1], a[2] as u64));
    }
    if let Some(a) = numeric_args(t, "girth5", 2)? {
        return Ok(generators::girth5(a[0], a[1] as u64));
    }
    if let Some(a) = numeric_args(t, "apollonian", 2)? {
        return Ok(generators::apollonian(a[0], a[1] as u64));
    }
    if let Some(a) = numeric_args(t, "gnp", 3)? {
        if a[1] > 100 {
            return Err(unknown());
        }
        return Ok(generators::gnp(a[0], a[1], a[2] as u64));
    }
    if let Some(rest) = t.strip_prefix("grid_") {
        let (a, b) = rest.split_once('_').ok_or_else(unknown)?;
        return Ok(grid(num(a, t)?, num(b, t)?));
    }
    if let Some(rest) = t.strip_prefix("star_") {
        return Ok(star(num(rest, t)?));
    }
    if let Some(rest) = t.strip_prefix("Q_") {
        let d = num(rest, t)?;
        if d > 16 {
            return Err(Error::InvalidArgument(format!("{t}: dimension too large")));
        }
        return Ok(hypercube(d));
    }
    let (head, rest) = t.split_at(t.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(t.len()));
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    match head {
        "K" => {
            let body = rest
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .unwrap_or(rest);
            match body.split_once(',') {
                Some((a, b)) => Ok(complete_bipartite(num(a, t)?, num(b, t)?)),
                None => Ok(complete(num(body, t)?)),
            }
        }
        "P" => Ok(path(num(rest, t)?)),
        "C" => cycle(num(rest, t)?),
        _ => Err(unknown()),
    }
}
