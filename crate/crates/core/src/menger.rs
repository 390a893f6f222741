//! Maximum systems of vertex-disjoint paths between vertex sets, and the
//! dual minimum vertex separations.
//!
//! Realized as unit-vertex-capacity flow: each vertex is split into an
//! in-half and an out-half joined by a capacity-1 arc. Arcs into source
//! vertices and out of target vertices are omitted, which forces every flow
//! path to be internally disjoint from both sets without changing the
//! maximum. Every public call re-validates its own output and panics on any
//! violation: a bad path system is a bug, never a value.

use std::collections::BTreeSet;

use crate::graph::{Graph, Separation, VertexId};

/// A family of pairwise vertex-disjoint paths from `sources` to `targets`,
/// each internally disjoint from both sets. A vertex lying in both sets
/// shows up as a single-vertex path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<Vec<VertexId>>,
    pub sources: BTreeSet<VertexId>,
    pub targets: BTreeSet<VertexId>,
}

impl PathSystem {
    pub fn count(&self) -> usize {
        self.paths.len()
    }

    /// All vertices used by some path.
    pub fn support(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }

    /// The path containing v, if any.
    pub fn path_through(&self, v: VertexId) -> Option<&Vec<VertexId>> {
        self.paths.iter().find(|p| p.contains(&v))
    }
}

const INF: u32 = u32::MAX / 2;

struct FlowNet {
    to: Vec<usize>,
    cap: Vec<u32>,
    init: Vec<u32>,
    head: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), init: Vec::new(), head: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: u32) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.init.push(c);
        self.head[u].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.init.push(0);
        self.head[v].push(id + 1);
        id
    }

    fn flow_on(&self, arc: usize) -> u32 {
        self.init[arc] - self.cap[arc]
    }

    /// One round of shortest augmenting path; returns false when none exists.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev_arc: Vec<Option<usize>> = vec![None; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    prev_arc[v] = Some(a);
                    if v == t {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut bottleneck = u32::MAX;
        let mut v = t;
        while let Some(a) = prev_arc[v] {
            bottleneck = bottleneck.min(self.cap[a]);
            v = self.to[a ^ 1];
        }
        let mut v = t;
        while let Some(a) = prev_arc[v] {
            self.cap[a] -= bottleneck;
            self.cap[a ^ 1] += bottleneck;
            v = self.to[a ^ 1];
        }
        true
    }

    /// Nodes reachable from s along positive-residual arcs.
    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        seen
    }
}

/// The solved flow network plus the vertex indexing used to build it.
struct SolvedFlow {
    net: FlowNet,
    order: Vec<VertexId>,
    source_arcs: Vec<(VertexId, usize)>,
    internal_arcs: Vec<usize>,
    s_node: usize,
    t_node: usize,
}

fn solve_flow(g: &Graph, s: &BTreeSet<VertexId>, x: &BTreeSet<VertexId>) -> SolvedFlow {
    let shared: BTreeSet<VertexId> = s.intersection(x).copied().collect();
    let work = g.minus(&shared);
    let s_only: BTreeSet<VertexId> = s.difference(&shared).copied().collect();
    let x_only: BTreeSet<VertexId> = x.difference(&shared).copied().collect();

    let order: Vec<VertexId> = work.vertices().collect();
    let index = |v: VertexId| order.binary_search(&v).expect("vertex indexed");
    let m = order.len();
    let v_in = |i: usize| 2 * i;
    let v_out = |i: usize| 2 * i + 1;
    let s_node = 2 * m;
    let t_node = 2 * m + 1;

    let mut net = FlowNet::new(2 * m + 2);
    let mut internal_arcs = Vec::with_capacity(m);
    for i in 0..m {
        internal_arcs.push(net.add_arc(v_in(i), v_out(i), 1));
    }
    let mut source_arcs = Vec::new();
    for &v in &s_only {
        source_arcs.push((v, net.add_arc(s_node, v_in(index(v)), INF)));
    }
    for &w in &x_only {
        net.add_arc(v_out(index(w)), t_node, INF);
    }
    for (u, v) in work.edges() {
        // no arcs into source vertices, none out of target vertices
        if !s_only.contains(&v) && !x_only.contains(&u) {
            net.add_arc(v_out(index(u)), v_in(index(v)), INF);
        }
        if !s_only.contains(&u) && !x_only.contains(&v) {
            net.add_arc(v_out(index(v)), v_in(index(u)), INF);
        }
    }
    while net.augment(s_node, t_node) {}
    SolvedFlow { net, order, source_arcs, internal_arcs, s_node, t_node }
}

fn extract_paths(g: &Graph, s: &BTreeSet<VertexId>, x: &BTreeSet<VertexId>, f: &SolvedFlow) -> PathSystem {
    let shared: BTreeSet<VertexId> = s.intersection(x).copied().collect();
    let mut paths: Vec<Vec<VertexId>> = shared.iter().map(|&v| vec![v]).collect();
    for &(start, arc) in &f.source_arcs {
        if f.net.flow_on(arc) == 0 {
            continue;
        }
        let mut path = vec![start];
        // each out-half pushes at most one unit, so the walk is forced
        let mut cur_out = f.net.to[f.internal_arcs[f.order.binary_search(&start).unwrap()]];
        loop {
            let next_arc = f.net.head[cur_out]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && f.net.flow_on(a) > 0)
                .expect("flow conservation");
            let nxt = f.net.to[next_arc];
            if nxt == f.t_node {
                break;
            }
            let vertex = f.order[nxt / 2];
            path.push(vertex);
            cur_out = nxt + 1;
        }
        paths.push(path);
    }
    let ps = PathSystem { paths, sources: s.clone(), targets: x.clone() };
    validate_path_system(g, &ps);
    ps
}

/// A maximum-cardinality system of vertex-disjoint paths from s to x.
pub fn max_disjoint_paths(g: &Graph, s: &BTreeSet<VertexId>, x: &BTreeSet<VertexId>) -> PathSystem {
    for v in s.union(x) {
        assert!(g.has_vertex(*v), "path endpoint set contains foreign vertex {v}");
    }
    let f = solve_flow(g, s, x);
    extract_paths(g, s, x, &f)
}

/// A minimum separation (A, B) with s ⊆ A and x ⊆ B, together with a path
/// system of exactly |A ∩ B| paths, each meeting A ∩ B in one vertex.
/// Among minimum cuts, the one closest to s is returned.
pub fn min_vertex_separation(
    g: &Graph,
    s: &BTreeSet<VertexId>,
    x: &BTreeSet<VertexId>,
) -> (Separation, PathSystem) {
    for v in s.union(x) {
        assert!(g.has_vertex(*v), "separation endpoint set contains foreign vertex {v}");
    }
    let f = solve_flow(g, s, x);
    let ps = extract_paths(g, s, x, &f);

    let shared: BTreeSet<VertexId> = s.intersection(x).copied().collect();
    let reach = f.net.residual_reachable(f.s_node);
    let mut a: BTreeSet<VertexId> = shared.clone();
    let mut b: BTreeSet<VertexId> = shared;
    for (i, &v) in f.order.iter().enumerate() {
        let in_r = reach[2 * i];
        let out_r = reach[2 * i + 1];
        if in_r {
            a.insert(v);
        } else {
            b.insert(v);
        }
        if in_r && !out_r {
            b.insert(v);
        }
    }
    let sep = Separation { a, b };
    validate_separation(g, s, x, &sep, &ps);
    (sep, ps)
}

/// Panics unless ps is a valid system of disjoint s-x paths in g.
pub fn validate_path_system(g: &Graph, ps: &PathSystem) {
    let s = &ps.sources;
    let x = &ps.targets;
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for path in &ps.paths {
        assert!(!path.is_empty(), "empty path");
        assert!(s.contains(&path[0]), "path must start in the source set");
        assert!(x.contains(path.last().unwrap()), "path must end in the target set");
        for w in path.windows(2) {
            assert!(g.has_edge(w[0], w[1]), "path step {}-{} not an edge", w[0], w[1]);
        }
        for (i, &v) in path.iter().enumerate() {
            assert!(g.has_vertex(v));
            if i > 0 && i + 1 < path.len() {
                assert!(
                    !s.contains(&v) && !x.contains(&v),
                    "interior vertex {v} lies in an endpoint set"
                );
            }
            assert!(used.insert(v), "vertex {v} on two paths");
        }
    }
}

fn validate_separation(
    g: &Graph,
    s: &BTreeSet<VertexId>,
    x: &BTreeSet<VertexId>,
    sep: &Separation,
    ps: &PathSystem,
) {
    if let Err(e) = sep.validate(g) {
        panic!("invalid separation: {e}");
    }
    assert!(s.is_subset(&sep.a), "sources must lie in the A side");
    assert!(x.is_subset(&sep.b), "targets must lie in the B side");
    let middle = sep.middle();
    assert_eq!(middle.len(), ps.count(), "separation order must match path count");
    for path in &ps.paths {
        let hits = path.iter().filter(|v| middle.contains(v)).count();
        assert_eq!(hits, 1, "path must meet the separator exactly once");
    }
}
