//! Labeled simple undirected graphs, connectivity machinery, and edge
//! contraction with branch-set provenance.
//!
//! Adjacency is kept in ordered maps so every traversal is deterministic:
//! identical inputs replay to identical certificates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::Error;

pub type VertexId = u32;

/// Undirected simple graph: no loops, no parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

/// Serialization shape: explicit vertex list plus sorted edge list.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl From<GraphRepr> for Graph {
    fn from(r: GraphRepr) -> Self {
        let mut g = Graph::with_vertices(r.vertices);
        for (u, v) in r.edges {
            g.add_edge(u, v);
        }
        g
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { vertices: g.vertices().collect(), edges: g.edges() }
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph { adj: BTreeMap::new() }
    }

    /// Graph with vertex set 0..n and the given edges.
    pub fn from_edges(n: u32, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(vs: I) -> Self {
        let mut g = Graph::new();
        for v in vs {
            g.add_vertex(v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Inserts the edge, creating missing endpoints. Loops are rejected as a
    /// caller bug; duplicate insertion is a no-op.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert_ne!(u, v, "loop edge {u}-{v}");
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).map(|s| s.remove(&v));
            }
        }
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.adj.get(&v).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    /// Edges as (u, v) pairs with u < v, in sorted order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (&u, nbrs) in &self.adj {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on s. Vertices of s absent from the graph are ignored.
    pub fn induced(&self, s: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in s {
            if let Some(nbrs) = self.adj.get(&v) {
                g.add_vertex(v);
                for &u in nbrs {
                    if s.contains(&u) && u > v {
                        g.add_edge(v, u);
                    }
                }
            }
        }
        g
    }

    /// The graph minus a vertex set.
    pub fn minus(&self, s: &BTreeSet<VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Graph {
        let mut g = self.clone();
        if let Some(s) = g.adj.get_mut(&u) {
            s.remove(&v);
        }
        if let Some(s) = g.adj.get_mut(&v) {
            s.remove(&u);
        }
        g
    }

    /// Adds all vertices and edges of other into self.
    pub fn union_with(&mut self, other: &Graph) {
        for v in other.vertices() {
            self.add_vertex(v);
        }
        for (u, v) in other.edges() {
            self.add_edge(u, v);
        }
    }

    /// Maximal connected vertex sets, ordered by smallest contained label.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(v, &BTreeSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices reachable from start, never entering forbidden. The start
    /// itself must not be forbidden.
    pub fn reachable_from(&self, start: VertexId, forbidden: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        assert!(self.has_vertex(start) && !forbidden.contains(&start));
        let mut seen = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in self.neighbors(v) {
                if !forbidden.contains(&u) && seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        seen
    }

    /// Shortest path from any source to any target whose internal vertices
    /// avoid sources, targets, and forbidden. Sources and targets must be
    /// disjoint from forbidden; a vertex in both sets yields that single
    /// vertex. Deterministic: sorted scan order throughout.
    pub fn bfs_path(
        &self,
        sources: &BTreeSet<VertexId>,
        targets: &BTreeSet<VertexId>,
        forbidden: &BTreeSet<VertexId>,
    ) -> Option<Vec<VertexId>> {
        if let Some(&v) = sources.intersection(targets).next() {
            return Some(vec![v]);
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut frontier: Vec<VertexId> = Vec::new();
        for &s in sources {
            if self.has_vertex(s) && !forbidden.contains(&s) {
                parent.insert(s, s);
                frontier.push(s);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                for u in self.neighbors(v) {
                    if forbidden.contains(&u) || parent.contains_key(&u) {
                        continue;
                    }
                    parent.insert(u, v);
                    if targets.contains(&u) {
                        let mut path = vec![u];
                        let mut cur = v;
                        while parent[&cur] != cur {
                            path.push(cur);
                            cur = parent[&cur];
                        }
                        path.push(cur);
                        path.reverse();
                        return Some(path);
                    }
                    // internal vertices must avoid the source set too
                    if !sources.contains(&u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        None
    }

    /// Vertices outside s adjacent to some vertex of s.
    pub fn neighborhood_of_set(&self, s: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        for v in s {
            assert!(self.has_vertex(*v), "neighborhood_of_set: {v} not in graph");
        }
        let mut out = BTreeSet::new();
        for &v in s {
            for u in self.neighbors(v) {
                if !s.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// True iff the graph has at least 3 vertices, is connected, and has no
    /// cut vertex.
    pub fn is_2connected(&self) -> bool {
        if self.n() < 3 || !self.is_connected() {
            return false;
        }
        self.blocks_and_cutvertices().1.is_empty()
    }

    /// Standard block / cut-vertex decomposition. Blocks are the vertex sets
    /// of the biconnected components; every edge lies in exactly one block;
    /// an isolated vertex forms a singleton block. Blocks are returned sorted
    /// by their vertex sets.
    pub fn blocks_and_cutvertices(&self) -> (Vec<BTreeSet<VertexId>>, BTreeSet<VertexId>) {
        let mut state = BlockState {
            g: self,
            disc: BTreeMap::new(),
            low: BTreeMap::new(),
            edge_stack: Vec::new(),
            blocks: Vec::new(),
            cuts: BTreeSet::new(),
            clock: 0,
        };
        for v in self.vertices() {
            if !state.disc.contains_key(&v) {
                state.root_dfs(v);
                if self.degree(v) == 0 {
                    state.blocks.push(BTreeSet::from([v]));
                }
            }
        }
        state.blocks.sort();
        (state.blocks, state.cuts)
    }

    /// Contracts the given edges, simplifying away loops and parallels.
    /// Each merged class keeps its smallest label. The returned trace maps
    /// surviving vertices to the original-graph branch sets they stand for,
    /// composed over the input trace.
    pub fn contract_edges(
        &self,
        edges: &[(VertexId, VertexId)],
        trace: &ContractionTrace,
    ) -> Result<(Graph, ContractionTrace), Error> {
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::input(format!("contract_edges: edge {u}-{v} not in graph")));
            }
        }
        // union-find over the contracted edges
        let mut rep: BTreeMap<VertexId, VertexId> = self.vertices().map(|v| (v, v)).collect();
        fn find(rep: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let mut r = v;
            while rep[&r] != r {
                r = rep[&r];
            }
            let mut cur = v;
            while rep[&cur] != r {
                let next = rep[&cur];
                rep.insert(cur, r);
                cur = next;
            }
            r
        }
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut rep, u), find(&mut rep, v));
            if ru != rv {
                // keep the smallest label as the class representative
                let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
                rep.insert(hi, lo);
            }
        }
        let mut classes: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for v in self.vertices() {
            let r = find(&mut rep, v);
            classes.entry(r).or_default().insert(v);
        }
        let class_list: Vec<(VertexId, BTreeSet<VertexId>)> =
            classes.into_iter().filter(|(_, c)| c.len() > 1).collect();
        Ok(self.contract_classes(&class_list, trace))
    }

    /// Contracts each class into its designated representative. Classes must
    /// be disjoint, contain their representative, and induce connected
    /// subgraphs; vertices in no class survive unchanged.
    pub(crate) fn contract_classes(
        &self,
        classes: &[(VertexId, BTreeSet<VertexId>)],
        trace: &ContractionTrace,
    ) -> (Graph, ContractionTrace) {
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (rep, class) in classes {
            assert!(class.contains(rep), "class must contain its representative");
            assert!(
                self.induced(class).is_connected(),
                "contracted class {class:?} must be connected"
            );
            for &v in class {
                assert!(self.has_vertex(v));
                let prev = map.insert(v, *rep);
                assert!(prev.is_none(), "vertex {v} in two contraction classes");
            }
        }
        let proj = |v: VertexId| -> VertexId { *map.get(&v).unwrap_or(&v) };
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(proj(v));
        }
        for (u, v) in self.edges() {
            let (pu, pv) = (proj(u), proj(v));
            if pu != pv {
                g.add_edge(pu, pv);
            }
        }
        let mut branch_of: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for v in self.vertices() {
            let entry = branch_of.entry(proj(v)).or_default();
            entry.extend(trace.branch(v).iter().copied());
        }
        (g, ContractionTrace { branch_of })
    }
}

struct BlockState<'a> {
    g: &'a Graph,
    disc: BTreeMap<VertexId, u32>,
    low: BTreeMap<VertexId, u32>,
    edge_stack: Vec<(VertexId, VertexId)>,
    blocks: Vec<BTreeSet<VertexId>>,
    cuts: BTreeSet<VertexId>,
    clock: u32,
}

impl BlockState<'_> {
    fn root_dfs(&mut self, root: VertexId) {
        let mut root_children = 0;
        self.visit(root, None, &mut root_children);
        if root_children >= 2 {
            self.cuts.insert(root);
        }
    }

    fn visit(&mut self, v: VertexId, parent: Option<VertexId>, root_children: &mut u32) {
        self.clock += 1;
        self.disc.insert(v, self.clock);
        self.low.insert(v, self.clock);
        for u in self.g.neighbors(v).collect::<Vec<_>>() {
            if Some(u) == parent {
                continue;
            }
            if let Some(&du) = self.disc.get(&u) {
                if du < self.disc[&v] {
                    self.edge_stack.push((v, u));
                    let lv = self.low[&v].min(du);
                    self.low.insert(v, lv);
                }
                continue;
            }
            self.edge_stack.push((v, u));
            let depth = self.edge_stack.len();
            if parent.is_none() {
                *root_children += 1;
                self.visit(u, Some(v), root_children);
            } else {
                let mut ignored = 0;
                self.visit(u, Some(v), &mut ignored);
            }
            if self.low[&u] >= self.disc[&v] {
                // v closes a block; pop it off the edge stack
                let mut block = BTreeSet::new();
                while self.edge_stack.len() >= depth {
                    let (a, b) = self.edge_stack.pop().unwrap();
                    block.insert(a);
                    block.insert(b);
                }
                self.blocks.push(block);
                if parent.is_some() {
                    self.cuts.insert(v);
                }
            }
            let lv = self.low[&v].min(self.low[&u]);
            self.low.insert(v, lv);
        }
    }
}

/// Witness that the current graph is a minor of an original graph: each
/// current vertex stands for a connected branch set of original vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionTrace {
    branch_of: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl ContractionTrace {
    /// Identity trace: v stands for {v}.
    pub fn identity(g: &Graph) -> Self {
        ContractionTrace {
            branch_of: g.vertices().map(|v| (v, BTreeSet::from([v]))).collect(),
        }
    }

    pub fn branch(&self, v: VertexId) -> &BTreeSet<VertexId> {
        self.branch_of
            .get(&v)
            .unwrap_or_else(|| panic!("trace has no branch set for vertex {v}"))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.branch_of.keys().copied()
    }

    /// Restricts the trace to the vertices of g (after vertex deletions).
    pub fn restricted_to(&self, g: &Graph) -> ContractionTrace {
        ContractionTrace {
            branch_of: g.vertices().map(|v| (v, self.branch(v).clone())).collect(),
        }
    }

    /// Checks the trace invariants against the original graph: branch sets
    /// nonempty, pairwise disjoint, and connected in original.
    pub fn validate(&self, original: &Graph) -> Result<(), String> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for (v, branch) in &self.branch_of {
            if branch.is_empty() {
                return Err(format!("branch set of {v} is empty"));
            }
            for u in branch {
                if !original.has_vertex(*u) {
                    return Err(format!("branch of {v} contains foreign vertex {u}"));
                }
                if !seen.insert(*u) {
                    return Err(format!("vertex {u} in two branch sets"));
                }
            }
            if !original.induced(branch).is_connected() {
                return Err(format!("branch set of {v} is disconnected"));
            }
        }
        Ok(())
    }
}

/// An ordered separation (A, B): A and B cover the vertex set and no edge
/// joins A - B to B - A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a: BTreeSet<VertexId>,
    pub b: BTreeSet<VertexId>,
}

impl Separation {
    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn middle(&self) -> BTreeSet<VertexId> {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let union: BTreeSet<VertexId> = self.a.union(&self.b).copied().collect();
        if union != g.vertex_set() {
            return Err("A and B do not cover the vertex set".into());
        }
        for (u, v) in g.edges() {
            let u_strict_a = self.a.contains(&u) && !self.b.contains(&u);
            let v_strict_a = self.a.contains(&v) && !self.b.contains(&v);
            let u_strict_b = self.b.contains(&u) && !self.a.contains(&u);
            let v_strict_b = self.b.contains(&v) && !self.a.contains(&v);
            if (u_strict_a && v_strict_b) || (u_strict_b && v_strict_a) {
                return Err(format!("edge {u}-{v} crosses the separation"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[VertexId]) -> BTreeSet<VertexId> {
        vs.iter().copied().collect()
    }

    #[test]
    fn components_two_disjoint_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(g.components(), vec![set(&[0, 1]), set(&[2, 3])]);
    }

    #[test]
    fn components_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(g.components(), vec![set(&[0, 1, 2])]);
    }

    #[test]
    fn components_empty_graph() {
        let g = Graph::new();
        assert!(g.components().is_empty());
    }

    #[test]
    fn blocks_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let (blocks, cuts) = g.blocks_and_cutvertices();
        assert_eq!(blocks, vec![set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(cuts, set(&[1]));
    }

    #[test]
    fn blocks_k4() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let (blocks, cuts) = g.blocks_and_cutvertices();
        assert_eq!(blocks, vec![set(&[0, 1, 2, 3])]);
        assert!(cuts.is_empty());
    }

    #[test]
    fn blocks_two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let (blocks, cuts) = g.blocks_and_cutvertices();
        assert_eq!(blocks, vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
        assert_eq!(cuts, set(&[2]));
    }

    #[test]
    fn blocks_isolated_vertex() {
        let mut g = Graph::from_edges(2, &[(0, 1)]);
        g.add_vertex(7);
        let (blocks, cuts) = g.blocks_and_cutvertices();
        assert_eq!(blocks, vec![set(&[0, 1]), set(&[7])]);
        assert!(cuts.is_empty());
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)],
        );
        let (blocks, _) = g.blocks_and_cutvertices();
        for (u, v) in g.edges() {
            let holders = blocks
                .iter()
                .filter(|b| b.contains(&u) && b.contains(&v))
                .count();
            assert_eq!(holders, 1, "edge {u}-{v}");
        }
        // blocks pairwise intersect in at most one vertex, which is a cut vertex
        let cuts = g.blocks_and_cutvertices().1;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let inter: Vec<_> = blocks[i].intersection(&blocks[j]).collect();
                assert!(inter.len() <= 1);
                if let Some(&&v) = inter.first() {
                    assert!(cuts.contains(&v));
                }
            }
        }
    }

    #[test]
    fn contract_triangle_edge() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let trace = ContractionTrace::identity(&g);
        let (h, t) = g.contract_edges(&[(0, 1)], &trace).unwrap();
        assert_eq!(h.vertex_set(), set(&[0, 2]));
        assert!(h.has_edge(0, 2));
        assert_eq!(t.branch(0), &set(&[0, 1]));
        assert_eq!(t.branch(2), &set(&[2]));
        t.validate(&g).unwrap();
    }

    #[test]
    fn contract_nothing_is_identity() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let trace = ContractionTrace::identity(&g);
        let (h, t) = g.contract_edges(&[], &trace).unwrap();
        assert_eq!(h, g);
        assert_eq!(t, trace);
    }

    #[test]
    fn contract_spanning_tree_of_k4() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let trace = ContractionTrace::identity(&g);
        let (h, t) = g.contract_edges(&[(0, 1), (1, 2), (2, 3)], &trace).unwrap();
        assert_eq!(h.vertex_set(), set(&[0]));
        assert_eq!(h.edge_count(), 0);
        assert_eq!(t.branch(0), &set(&[0, 1, 2, 3]));
    }

    #[test]
    fn contract_missing_edge_is_input_error() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        let trace = ContractionTrace::identity(&g);
        assert!(g.contract_edges(&[(0, 2)], &trace).is_err());
    }

    #[test]
    fn contraction_composes_traces() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let trace = ContractionTrace::identity(&g);
        let (h1, t1) = g.contract_edges(&[(1, 2)], &trace).unwrap();
        let (_h2, t2) = h1.contract_edges(&[(0, 1)], &t1).unwrap();
        assert_eq!(t2.branch(0), &set(&[0, 1, 2]));
        t2.validate(&g).unwrap();
    }

    #[test]
    fn neighborhood_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.neighborhood_of_set(&set(&[1])), set(&[0]));
        assert_eq!(star.neighborhood_of_set(&star.vertex_set()), set(&[]));
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(c4.neighborhood_of_set(&set(&[0])), set(&[1, 3]));
    }

    #[test]
    fn two_connectivity() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(c4.is_2connected());
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!p3.is_2connected());
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert!(!k2.is_2connected());
    }

    #[test]
    fn bfs_path_avoids_forbidden() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = c4
            .bfs_path(&set(&[0]), &set(&[2]), &set(&[1]))
            .expect("path exists");
        assert_eq!(p, vec![0, 3, 2]);
        assert!(c4.bfs_path(&set(&[0]), &set(&[2]), &set(&[1, 3])).is_none());
    }

    #[test]
    fn bfs_path_shared_vertex_is_trivial_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(g.bfs_path(&set(&[1]), &set(&[1, 2]), &set(&[])), Some(vec![1]));
    }

    #[test]
    fn induced_and_minus() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let h = g.induced(&set(&[1, 2, 3]));
        assert_eq!(h.vertex_set(), set(&[1, 2, 3]));
        assert!(h.has_edge(1, 2) && h.has_edge(2, 3) && !h.has_vertex(0));
        let m = g.minus(&set(&[1]));
        assert_eq!(m.vertex_set(), set(&[0, 2, 3]));
        assert!(!m.has_edge(1, 2));
    }

    #[test]
    fn separation_validation() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let good = Separation { a: set(&[0, 1]), b: set(&[1, 2]) };
        assert!(good.validate(&g).is_ok());
        assert_eq!(good.order(), 1);
        let bad = Separation { a: set(&[0]), b: set(&[1, 2]) };
        assert!(bad.validate(&g).is_err());
    }
}
