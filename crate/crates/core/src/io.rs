//! Textual formats: edge-list and graph6 graphs, tree decompositions in the
//! solver-exchange .td layout, minor models as JSON, and the per-instance
//! run reports the fuzz harness emits.
//!
//! Conventions: edge-list and JSON vertices are 0-indexed; .td output is
//! 1-indexed with the root as bag 1, matching the established exchange
//! convention. Emission is canonical (sorted, stable), so parse of emitted
//! text reproduces the emitted value bit for bit.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::certificates::{MinorModel, RootedTreeDecomposition};
use crate::graph::{Graph, VertexId};
use crate::Error;

/// Input encodings for graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    pub fn from_name(name: &str) -> Result<Self, Error> {
        match name {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "graph6" => Ok(GraphFormat::Graph6),
            other => Err(Error::input(format!(
                "unknown graph format {other:?}, expected edge-list or graph6"
            ))),
        }
    }

    /// Guess from a file name: .g6 means graph6, everything else edge-list.
    pub fn from_path(path: &str) -> Self {
        if path.ends_with(".g6") {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn parse_graph(input: &str, format: GraphFormat) -> Result<Graph, Error> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(input),
        GraphFormat::Graph6 => parse_graph6(input),
    }
}

/// Edge-list format: a "n m" header, then one "u v" line per edge,
/// 0-indexed. Blank lines are ignored.
pub fn parse_edge_list(input: &str) -> Result<Graph, Error> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "missing \"n m\" header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::parse(
            format!("line {hline}"),
            format!("header needs two fields \"n m\", got {header:?}"),
        ));
    }
    let n: u32 = parse_int(head[0], hline, "vertex count")?;
    let m: usize = parse_int(head[1], hline, "edge count")?;

    let mut g = Graph::with_vertices(0..n);
    let mut count = 0usize;
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                format!("line {ln}"),
                format!("edge line needs two fields \"u v\", got {line:?}"),
            ));
        }
        let u: u32 = parse_int(fields[0], ln, "vertex")?;
        let v: u32 = parse_int(fields[1], ln, "vertex")?;
        for x in [u, v] {
            if x >= n {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("vertex {x} out of range for {n} vertices"),
                ));
            }
        }
        if u == v {
            return Err(Error::parse(format!("line {ln}"), format!("loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(format!("line {ln}"), format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
        count += 1;
    }
    if count != m {
        return Err(Error::parse(
            "end of input",
            format!("header promises {m} edges, found {count}"),
        ));
    }
    Ok(g)
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, Error> {
    tok.parse()
        .map_err(|_| Error::parse(format!("line {line}"), format!("bad {what} {tok:?}")))
}

/// Canonical edge-list text for a graph on vertices 0..n-1.
pub fn emit_edge_list(g: &Graph) -> String {
    assert_contiguous(g);
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn assert_contiguous(g: &Graph) {
    let n = g.n() as u32;
    assert!(
        g.vertices().zip(0..n).all(|(v, i)| v == i),
        "emission needs vertices labeled 0..n-1"
    );
}

/// graph6: 6-bit ASCII encoding of the upper adjacency triangle, columns
/// left to right. Only single-byte sizes (n <= 62) are supported.
pub fn parse_graph6(input: &str) -> Result<Graph, Error> {
    let text = input.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse("byte 1", "empty graph6 text"));
    }
    if bytes[0] == 126 {
        return Err(Error::parse("byte 1", "graph6 sizes above 62 are not supported"));
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(Error::parse("byte 1", format!("bad size byte {}", bytes[0])));
    }
    let n = (bytes[0] - 63) as u32;
    let pairs = (n as usize) * (n as usize).saturating_sub(1) / 2;
    let body = pairs.div_ceil(6);
    if bytes.len() != 1 + body {
        return Err(Error::parse(
            format!("byte {}", bytes.len()),
            format!("need {} body bytes for {n} vertices, got {}", body, bytes.len() - 1),
        ));
    }
    let mut g = Graph::with_vertices(0..n);
    let mut t = 0usize;
    for (bi, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(format!("byte {}", bi + 2), format!("bad body byte {b}")));
        }
        let bits = b - 63;
        for s in (0..6).rev() {
            let bit = (bits >> s) & 1;
            if t < pairs {
                if bit == 1 {
                    let (i, j) = triangle_pair(t);
                    g.add_edge(i, j);
                }
            } else if bit == 1 {
                return Err(Error::parse(format!("byte {}", bi + 2), "nonzero padding bit"));
            }
            t += 1;
        }
    }
    Ok(g)
}

/// The t-th upper-triangle position in column order: (0,1), (0,2), (1,2),
/// (0,3), ...
fn triangle_pair(t: usize) -> (u32, u32) {
    let mut j = 1u32;
    let mut base = 0usize;
    while base + j as usize <= t {
        base += j as usize;
        j += 1;
    }
    ((t - base) as u32, j)
}

pub fn emit_graph6(g: &Graph) -> Result<String, Error> {
    assert_contiguous(g);
    let n = g.n();
    if n > 62 {
        return Err(Error::Limit(format!("graph6 output supports up to 62 vertices, got {n}")));
    }
    let mut out = vec![63 + n as u8];
    let pairs = n * n.saturating_sub(1) / 2;
    let mut acc = 0u8;
    let mut filled = 0u8;
    for t in 0..pairs {
        let (i, j) = triangle_pair(t);
        acc = (acc << 1) | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push(63 + acc);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).unwrap())
}

/// .td text for a rooted decomposition of a graph on vertices 0..n-1:
/// "s td <#bags> <max bag size> <n>", bag lines, then tree edges. Bags and
/// vertices are 1-indexed; bag 1 is the root; remaining bags keep their
/// order; each edge line is "parent child".
pub fn emit_decomposition(d: &RootedTreeDecomposition, n: usize) -> String {
    let nodes: Vec<usize> = d.nodes().collect();
    let root = nodes
        .iter()
        .copied()
        .find(|&t| d.parent(t).is_none())
        .expect("a rooted tree has a root");
    let mut order = vec![root];
    order.extend(nodes.iter().copied().filter(|&t| t != root));
    let new_id: BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(i, &t)| (t, i + 1)).collect();

    let mut out = format!("s td {} {} {}\n", d.node_count(), d.max_bag_size(), n);
    for &t in &order {
        out.push_str(&format!("b {}", new_id[&t]));
        for &v in d.bag(t) {
            assert!((v as usize) < n, "bag vertex {v} outside 0..{n}");
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &t in &order {
        if let Some(p) = d.parent(t) {
            out.push_str(&format!("{} {}\n", new_id[&p], new_id[&t]));
        }
    }
    out
}

/// Parses .td text; returns the decomposition rooted at bag 1 and the
/// declared vertex count. The declared max bag size is not enforced; wrong
/// sizes are the verifier's finding, not a parse failure.
pub fn parse_decomposition(input: &str) -> Result<(RootedTreeDecomposition, usize), Error> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with("c "));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "missing \"s td\" header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 5 || head[0] != "s" || head[1] != "td" {
        return Err(Error::parse(
            format!("line {hline}"),
            format!("header must read \"s td <bags> <max bag size> <n>\", got {header:?}"),
        ));
    }
    let bag_count: usize = parse_int(head[2], hline, "bag count")?;
    let _declared_max: usize = parse_int(head[3], hline, "max bag size")?;
    let n: usize = parse_int(head[4], hline, "vertex count")?;
    if bag_count == 0 {
        return Err(Error::parse(format!("line {hline}"), "a decomposition needs a bag"));
    }

    let mut bags: Vec<Option<BTreeSet<VertexId>>> = vec![None; bag_count];
    for _ in 0..bag_count {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse("end of input", format!("expected {bag_count} bag lines")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 || fields[0] != "b" {
            return Err(Error::parse(
                format!("line {ln}"),
                format!("expected \"b <id> <vertices...>\", got {line:?}"),
            ));
        }
        let id: usize = parse_int(fields[1], ln, "bag id")?;
        if !(1..=bag_count).contains(&id) {
            return Err(Error::parse(
                format!("line {ln}"),
                format!("bag id {id} out of range 1..={bag_count}"),
            ));
        }
        if bags[id - 1].is_some() {
            return Err(Error::parse(format!("line {ln}"), format!("bag {id} defined twice")));
        }
        let mut bag = BTreeSet::new();
        for tok in &fields[2..] {
            let v: usize = parse_int(tok, ln, "bag vertex")?;
            if !(1..=n).contains(&v) {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("vertex {v} out of range 1..={n}"),
                ));
            }
            if !bag.insert((v - 1) as VertexId) {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("vertex {v} repeated in bag {id}"),
                ));
            }
        }
        bags[id - 1] = Some(bag);
    }
    let bags: Vec<BTreeSet<VertexId>> = bags.into_iter().map(Option::unwrap).collect();

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..bag_count - 1 {
        let (ln, line) = lines.next().ok_or_else(|| {
            Error::parse("end of input", format!("expected {} tree edge lines", bag_count - 1))
        })?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                format!("line {ln}"),
                format!("tree edge line needs two bag ids, got {line:?}"),
            ));
        }
        let a: usize = parse_int(fields[0], ln, "bag id")?;
        let b: usize = parse_int(fields[1], ln, "bag id")?;
        for x in [a, b] {
            if !(1..=bag_count).contains(&x) {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("bag id {x} out of range 1..={bag_count}"),
                ));
            }
        }
        if a == b {
            return Err(Error::parse(format!("line {ln}"), format!("tree edge {a} {b} is a loop")));
        }
        edges.push((a - 1, b - 1));
    }
    if let Some((ln, line)) = lines.next() {
        return Err(Error::parse(format!("line {ln}"), format!("unexpected trailing line {line:?}")));
    }

    // reject forests before the constructor asserts on them
    let mut adj = vec![Vec::new(); bag_count];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; bag_count];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::parse("end of input", "tree edges do not connect all bags"));
    }
    Ok((RootedTreeDecomposition::from_undirected(bags, &edges, 0), n))
}

#[derive(Serialize, Deserialize)]
struct MinorModelText {
    pattern_edges: Vec<(VertexId, VertexId)>,
    branch: BTreeMap<VertexId, Vec<VertexId>>,
}

/// JSON text for a minor model: the pattern's edge list plus the mapping
/// from each pattern vertex to its sorted branch set.
pub fn emit_minor_model(m: &MinorModel) -> String {
    let text = MinorModelText {
        pattern_edges: m.pattern.edges(),
        branch: m
            .branch
            .iter()
            .map(|(&v, set)| (v, set.iter().copied().collect()))
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&text).expect("model serializes");
    out.push('\n');
    out
}

pub fn parse_minor_model(input: &str) -> Result<MinorModel, Error> {
    let text: MinorModelText = serde_json::from_str(input)
        .map_err(|e| Error::parse(format!("json line {}", e.line()), e.to_string()))?;
    let mut branch: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (v, list) in &text.branch {
        if list.is_empty() {
            return Err(Error::parse("json", format!("empty branch set for pattern vertex {v}")));
        }
        let set: BTreeSet<VertexId> = list.iter().copied().collect();
        if set.len() != list.len() {
            return Err(Error::parse(
                "json",
                format!("repeated vertex in branch set of pattern vertex {v}"),
            ));
        }
        branch.insert(*v, set);
    }
    let mut pattern = Graph::with_vertices(branch.keys().copied());
    for &(u, v) in &text.pattern_edges {
        if u == v {
            return Err(Error::parse("json", format!("pattern loop at {u}")));
        }
        for x in [u, v] {
            if !branch.contains_key(&x) {
                return Err(Error::parse(
                    "json",
                    format!("pattern edge endpoint {x} has no branch set"),
                ));
            }
        }
        if pattern.has_edge(u, v) {
            return Err(Error::parse("json", format!("duplicate pattern edge {u} {v}")));
        }
        pattern.add_edge(u, v);
    }
    Ok(MinorModel::new(pattern, branch))
}

/// One fuzz or sweep instance, summarized. Timing stays None under fixed
/// seeds so reports are bit-reproducible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub pattern: String,
    pub outcome: String,
    pub certificate: Option<String>,
    pub verdicts: Vec<String>,
    pub max_bag: Option<usize>,
    pub oracle: Option<String>,
    pub timing_ms: Option<u64>,
}

/// One JSON line per report, sorted by instance id.
pub fn emit_reports(reports: &[RunReport]) -> String {
    let mut sorted: Vec<&RunReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.instance.cmp(&b.instance));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&serde_json::to_string(r).expect("report serializes"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{verify_minor_model, verify_tree_decomposition};
    use crate::oracles::{random_gnp, NamedGraph};

    #[test]
    fn edge_list_parses_a_triangle() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn edge_list_rejects_bad_lines() {
        for (text, needle) in [
            ("2 1\n0 0", "loop"),
            ("2 2\n0 1\n1 0", "duplicate"),
            ("2 1\n0 5", "out of range"),
            ("2 5\n0 1", "promises 5 edges"),
            ("nope", "header"),
            ("3 1\n0 1 2", "two fields"),
        ] {
            let err = parse_edge_list(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn edge_list_round_trips() {
        for seed in 0..20 {
            let g = random_gnp(9, 0.4, seed);
            let back = parse_edge_list(&emit_edge_list(&g)).unwrap();
            assert_eq!(back.vertex_set(), g.vertex_set());
            assert_eq!(back.edges(), g.edges());
        }
    }

    /// Independent reference encoding: adjacency bits packed through string
    /// arithmetic rather than the shift pipeline above.
    fn reference_graph6(g: &Graph) -> String {
        let n = g.n() as u32;
        let mut bits = String::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(if g.has_edge(i, j) { '1' } else { '0' });
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push('0');
        }
        let mut out = String::new();
        out.push((63 + n as u8) as char);
        for chunk in bits.as_bytes().chunks(6) {
            let val = chunk.iter().fold(0u8, |a, &c| (a << 1) | (c - b'0'));
            out.push((63 + val) as char);
        }
        out
    }

    #[test]
    fn graph6_matches_the_reference_encoder() {
        let k3 = NamedGraph::Clique(3).build().unwrap();
        assert_eq!(reference_graph6(&k3), "Bw");
        assert_eq!(emit_graph6(&k3).unwrap(), "Bw");
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        for seed in 0..30 {
            let g = random_gnp(4 + (seed % 10) as u32, 0.45, 900 + seed);
            let enc = emit_graph6(&g).unwrap();
            assert_eq!(enc, reference_graph6(&g));
            let back = parse_graph6(&enc).unwrap();
            assert_eq!(back.vertex_set(), g.vertex_set());
            assert_eq!(back.edges(), g.edges());
        }
    }

    #[test]
    fn graph6_rejects_malformed_text() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("~??").is_err());
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("Bwww").is_err());
        // one extra padding bit set in the last byte
        assert!(parse_graph6("Bx").is_err());
    }

    #[test]
    fn td_emits_the_single_bag_layout() {
        let d = RootedTreeDecomposition::single(BTreeSet::from([0, 1, 2]));
        assert_eq!(emit_decomposition(&d, 3), "s td 1 3 3\nb 1 1 2 3\n");
    }

    #[test]
    fn td_round_trips_and_verifies() {
        let g = NamedGraph::Cycle(5).build().unwrap();
        let d = crate::oracles::exact_treewidth(&g, 8).unwrap().1;
        let text = emit_decomposition(&d, 5);
        let (back, n) = parse_decomposition(&text).unwrap();
        assert_eq!(n, 5);
        assert!(verify_tree_decomposition(&g, &back, None, None).is_accept());
        assert_eq!(emit_decomposition(&back, n), text);
    }

    #[test]
    fn td_rejects_malformed_text() {
        for (text, needle) in [
            ("", "header"),
            ("s td 2 1 3\nb 1 1\nb 1 2\n1 2", "defined twice"),
            ("s td 1 1 3\nb 1 4", "out of range"),
            ("s td 2 1 3\nb 1 1\nb 2 2", "tree edge"),
            ("s td 3 1 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n1 2", "connect all bags"),
            ("s td 1 1 2\nb 1 1\nextra", "trailing"),
        ] {
            let err = parse_decomposition(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn td_parse_ignores_a_wrong_declared_width() {
        let (d, _) = parse_decomposition("s td 1 99 3\nb 1 1 2 3\n").unwrap();
        assert_eq!(d.max_bag_size(), 3);
    }

    #[test]
    fn minor_model_round_trips() {
        let host = NamedGraph::Clique(4).build().unwrap();
        let pattern = NamedGraph::Clique(3).build().unwrap();
        let model = crate::oracles::exact_minor_test(&host, &pattern, 8).unwrap().unwrap();
        assert!(verify_minor_model(&host, &model).is_accept());
        let text = emit_minor_model(&model);
        let back = parse_minor_model(&text).unwrap();
        assert!(verify_minor_model(&host, &back).is_accept());
        assert_eq!(emit_minor_model(&back), text);
    }

    #[test]
    fn minor_model_parse_rejects_empty_branch_sets() {
        let text = r#"{"pattern_edges": [[0, 1]], "branch": {"0": [2], "1": []}}"#;
        let err = parse_minor_model(text).unwrap_err();
        assert!(err.to_string().contains("empty branch set"));
    }

    #[test]
    fn reports_sort_by_instance() {
        let mk = |id: &str| RunReport {
            instance: id.to_string(),
            pattern: "wheel-3".to_string(),
            outcome: "decomposition".to_string(),
            certificate: None,
            verdicts: vec!["accept".to_string()],
            max_bag: Some(3),
            oracle: None,
            timing_ms: None,
        };
        let text = emit_reports(&[mk("b"), mk("a")]);
        let first = text.lines().next().unwrap();
        assert!(first.contains("\"a\""));
    }
}
