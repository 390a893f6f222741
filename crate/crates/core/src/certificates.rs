//! Certificate types and their independent verifiers: rooted
//! tree-decompositions, minor models, pattern descriptions, and the attach
//! operation that glues decompositions along equal bags.
//!
//! Verifiers are deliberately naive: they re-check axioms from scratch so a
//! bug in a construction cannot hide behind shared code.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{ContractionTrace, Graph, VertexId};
use crate::Error;

/// Rooted tree-decomposition. Nodes are indices into `bags`; `parent[i]` is
/// `None` exactly for the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTreeDecomposition {
    bags: Vec<BTreeSet<VertexId>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTreeDecomposition {
    pub fn single(bag: BTreeSet<VertexId>) -> Self {
        RootedTreeDecomposition { bags: vec![bag], parent: vec![None], root: 0 }
    }

    pub fn two_node(root_bag: BTreeSet<VertexId>, child_bag: BTreeSet<VertexId>) -> Self {
        RootedTreeDecomposition {
            bags: vec![root_bag, child_bag],
            parent: vec![None, Some(0)],
            root: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_bag(&self) -> &BTreeSet<VertexId> {
        &self.bags[self.root]
    }

    pub fn bag(&self, node: usize) -> &BTreeSet<VertexId> {
        &self.bags[node]
    }

    pub fn bag_mut(&mut self, node: usize) -> &mut BTreeSet<VertexId> {
        &mut self.bags[node]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        0..self.bags.len()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        self.nodes().filter(|&i| self.parent[i] == Some(node)).collect()
    }

    /// All vertices appearing in some bag.
    pub fn covered_vertices(&self) -> BTreeSet<VertexId> {
        self.bags.iter().flatten().copied().collect()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Maximum bag size minus one.
    pub fn width(&self) -> Result<i64, Error> {
        if self.bags.is_empty() {
            return Err(Error::input("width of an empty decomposition"));
        }
        Ok(self.bags.iter().map(|b| b.len() as i64).max().unwrap() - 1)
    }

    /// Appends a new leaf under `parent_node`, returning its index.
    pub fn add_child(&mut self, parent_node: usize, bag: BTreeSet<VertexId>) -> usize {
        assert!(parent_node < self.bags.len());
        self.bags.push(bag);
        self.parent.push(Some(parent_node));
        self.bags.len() - 1
    }

    /// Installs a new root whose only child is the old root. Existing node
    /// indices are unchanged; the new root's index is returned.
    pub fn prepend_root(&mut self, bag: BTreeSet<VertexId>) -> usize {
        self.bags.push(bag);
        self.parent.push(None);
        let new_root = self.bags.len() - 1;
        self.parent[self.root] = Some(new_root);
        self.root = new_root;
        new_root
    }

    /// Copies all of `other` below `parent_node` (other's root becomes a
    /// child of it). Returns the index each node of `other` received.
    pub fn hang(&mut self, parent_node: usize, other: &Self) -> Vec<usize> {
        assert!(parent_node < self.bags.len());
        let offset = self.bags.len();
        let map: Vec<usize> = (0..other.bags.len()).map(|i| offset + i).collect();
        for i in 0..other.bags.len() {
            self.bags.push(other.bags[i].clone());
            self.parent.push(match other.parent[i] {
                Some(p) => Some(map[p]),
                None => Some(parent_node),
            });
        }
        map
    }

    /// Copies `other` into `self` with other's root merged into the existing
    /// node `at`; the two must carry equal bags. Returns the index each node
    /// of `other` received (`at` for other's root).
    pub fn graft_identify(&mut self, at: usize, other: &Self) -> Result<Vec<usize>, Error> {
        if self.bags[at] != other.bags[other.root] {
            return Err(Error::input(format!(
                "graft: bag at node {at} differs from grafted root bag"
            )));
        }
        let mut map = vec![usize::MAX; other.bags.len()];
        map[other.root] = at;
        for (i, bag) in other.bags.iter().enumerate() {
            if i == other.root {
                continue;
            }
            self.bags.push(bag.clone());
            self.parent.push(None); // fixed below once all indices exist
            map[i] = self.bags.len() - 1;
        }
        for i in 0..other.bags.len() {
            if i == other.root {
                continue;
            }
            let p = other.parent[i].expect("non-root node has a parent");
            self.parent[map[i]] = Some(map[p]);
        }
        Ok(map)
    }

    /// Builds a rooted decomposition from bags plus an undirected edge list
    /// over their indices, orienting every edge away from `root`. The edges
    /// must form a tree on all the bags.
    pub fn from_undirected(
        bags: Vec<BTreeSet<VertexId>>,
        edges: &[(usize, usize)],
        root: usize,
    ) -> Self {
        let n = bags.len();
        assert!(root < n, "root index out of range");
        assert_eq!(edges.len() + 1, n, "a tree on {n} nodes needs {} edges", n - 1);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            assert!(a < n && b < n && a != b, "bad tree edge {a}-{b}");
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push(u);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "tree edges do not connect all bags");
        RootedTreeDecomposition { bags, parent, root }
    }

    /// Node indices of the subtree rooted at `node` (inclusive).
    pub fn subtree(&self, node: usize) -> Vec<usize> {
        let mut out = vec![node];
        let mut i = 0;
        while i < out.len() {
            let cur = out[i];
            out.extend(self.children(cur));
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Rebuilds the decomposition with the subtrees rooted at `cut` removed.
    /// The root must survive. Returns the new decomposition and the new index
    /// of each surviving old node.
    pub fn without_subtrees(&self, cut: &BTreeSet<usize>) -> (Self, Vec<Option<usize>>) {
        let mut removed = BTreeSet::new();
        for &c in cut {
            removed.extend(self.subtree(c));
        }
        assert!(!removed.contains(&self.root), "cannot remove the root subtree");
        let mut map = vec![None; self.bags.len()];
        let mut bags = Vec::new();
        let mut parent = Vec::new();
        for (i, bag) in self.bags.iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            map[i] = Some(bags.len());
            bags.push(bag.clone());
            parent.push(self.parent[i]); // old index, remapped below
        }
        for p in parent.iter_mut() {
            *p = p.map(|old| map[old].expect("surviving node's parent survives"));
        }
        let root = map[self.root].unwrap();
        (RootedTreeDecomposition { bags, parent, root }, map)
    }
}

/// Glues each child decomposition below the base: child i's root becomes a
/// new child of base node z_i. Requires the child's root bag to equal the
/// bag at z_i.
pub fn attach(
    base: &RootedTreeDecomposition,
    children: &[(RootedTreeDecomposition, usize)],
) -> Result<RootedTreeDecomposition, Error> {
    let mut out = base.clone();
    for (child, z) in children {
        if *z >= base.node_count() {
            return Err(Error::input(format!("attach: base node {z} out of range")));
        }
        if child.root_bag() != base.bag(*z) {
            return Err(Error::input(format!(
                "attach: root bag {:?} differs from base bag {:?} at node {z}",
                child.root_bag(),
                base.bag(*z)
            )));
        }
        out.hang(*z, child);
    }
    Ok(out)
}

/// Outcome of a verification: acceptance, or the first violated rule with a
/// human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accept,
    Reject(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

impl Verdict {
    pub fn reject(rule: &str, witness: impl Into<String>) -> Self {
        Verdict::Reject(Violation { rule: rule.to_string(), witness: witness.into() })
    }

    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Checks the tree-decomposition axioms of D against G, plus an exact root
/// bag and a bag-size cap when requested.
pub fn verify_tree_decomposition(
    g: &Graph,
    d: &RootedTreeDecomposition,
    required_root_bag: Option<&BTreeSet<VertexId>>,
    max_bag: Option<usize>,
) -> Verdict {
    let n = d.bags.len();
    if n == 0 || d.parent.len() != n || d.root >= n {
        return Verdict::reject("tree-structure", "malformed node arrays");
    }
    for i in 0..n {
        match d.parent[i] {
            None => {
                if i != d.root {
                    return Verdict::reject("tree-structure", format!("second root at node {i}"));
                }
            }
            Some(p) => {
                if p >= n {
                    return Verdict::reject("tree-structure", format!("node {i} parent out of range"));
                }
                if i == d.root {
                    return Verdict::reject("tree-structure", "root has a parent");
                }
            }
        }
        // walking up must reach the root; a cycle would walk forever
        let mut cur = i;
        let mut steps = 0;
        while let Some(p) = d.parent[cur] {
            cur = p;
            steps += 1;
            if steps > n {
                return Verdict::reject("tree-structure", format!("parent cycle through node {i}"));
            }
        }
        if cur != d.root {
            return Verdict::reject("tree-structure", format!("node {i} not connected to root"));
        }
    }
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if !g.has_vertex(v) {
                return Verdict::reject("bag-subset", format!("node {i} holds foreign vertex {v}"));
            }
        }
    }
    let covered = d.covered_vertices();
    for v in g.vertices() {
        if !covered.contains(&v) {
            return Verdict::reject("vertex-cover", format!("vertex {v} in no bag"));
        }
    }
    for (u, v) in g.edges() {
        if !d.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Verdict::reject("edge-cover", format!("edge {u}-{v} in no bag"));
        }
    }
    for v in g.vertices() {
        let holders: BTreeSet<usize> =
            (0..n).filter(|&i| d.bags[i].contains(&v)).collect();
        let &start = holders.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            let mut nbrs: Vec<usize> = d.children(t);
            if let Some(p) = d.parent[t] {
                nbrs.push(p);
            }
            for u in nbrs {
                if holders.contains(&u) && seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        if seen.len() != holders.len() {
            return Verdict::reject(
                "occupancy-connected",
                format!("nodes holding vertex {v} are disconnected"),
            );
        }
    }
    if let Some(req) = required_root_bag {
        if d.root_bag() != req {
            return Verdict::reject(
                "root-bag",
                format!("root bag {:?} differs from required {req:?}", d.root_bag()),
            );
        }
    }
    if let Some(cap) = max_bag {
        for (i, bag) in d.bags.iter().enumerate() {
            if bag.len() > cap {
                return Verdict::reject(
                    "bag-size",
                    format!("node {i} has {} vertices, cap {cap}", bag.len()),
                );
            }
        }
    }
    Verdict::Accept
}

/// Witness that `pattern` is a minor of a host graph: one connected,
/// pairwise-disjoint branch set per pattern vertex, with every pattern edge
/// realized by a host edge between the two branch sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub pattern: Graph,
    pub branch: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl MinorModel {
    pub fn new(pattern: Graph, branch: BTreeMap<VertexId, BTreeSet<VertexId>>) -> Self {
        MinorModel { pattern, branch }
    }

    /// Union of all branch sets.
    pub fn support(&self) -> BTreeSet<VertexId> {
        self.branch.values().flatten().copied().collect()
    }
}

/// Checks every MinorModel invariant against the host graph.
pub fn verify_minor_model(host: &Graph, m: &MinorModel) -> Verdict {
    let keys: BTreeSet<VertexId> = m.branch.keys().copied().collect();
    if keys != m.pattern.vertex_set() {
        return Verdict::reject(
            "branch-keys",
            format!("branch keys {keys:?} differ from pattern vertices"),
        );
    }
    for (x, set) in &m.branch {
        if set.is_empty() {
            return Verdict::reject("branch-nonempty", format!("branch of {x} is empty"));
        }
        for &v in set {
            if !host.has_vertex(v) {
                return Verdict::reject(
                    "branch-subset",
                    format!("branch of {x} holds foreign vertex {v}"),
                );
            }
        }
        if !host.induced(set).is_connected() {
            return Verdict::reject("branch-connected", format!("branch of {x} is disconnected"));
        }
    }
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (x, set) in &m.branch {
        for &v in set {
            if let Some(y) = owner.insert(v, *x) {
                return Verdict::reject(
                    "branch-disjoint",
                    format!("vertex {v} in branches of {y} and {x}"),
                );
            }
        }
    }
    for (x, y) in m.pattern.edges() {
        let bx = &m.branch[&x];
        let by = &m.branch[&y];
        let realized = bx
            .iter()
            .any(|&u| host.neighbors(u).any(|w| by.contains(&w)));
        if !realized {
            return Verdict::reject("edge-realized", format!("pattern edge {x}-{y} unrealized"));
        }
    }
    Verdict::Accept
}

/// Transports a model found in a contracted graph back to the graph the
/// trace originated from: each branch set becomes the union of the trace
/// branch sets of its vertices.
pub fn lift_minor_model(m: &MinorModel, trace: &ContractionTrace) -> MinorModel {
    let branch = m
        .branch
        .iter()
        .map(|(x, set)| {
            let lifted: BTreeSet<VertexId> =
                set.iter().flat_map(|&v| trace.branch(v).iter().copied()).collect();
            (*x, lifted)
        })
        .collect();
    MinorModel { pattern: m.pattern.clone(), branch }
}

/// Description of a target pattern: a tree with an apex added over all of
/// it, or a wheel with k rim vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternSpec {
    ApexForest { forest: Graph },
    Wheel { k: u32 },
}

impl PatternSpec {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            PatternSpec::ApexForest { forest } => {
                if forest.n() == 0 {
                    return Err(Error::input("pattern tree must have at least one vertex"));
                }
                if !forest.is_connected() || forest.edge_count() != forest.n() - 1 {
                    return Err(Error::input("pattern graph is not a tree"));
                }
                Ok(())
            }
            PatternSpec::Wheel { k } => {
                if *k < 3 {
                    return Err(Error::input(format!("wheel size {k} below minimum 3")));
                }
                Ok(())
            }
        }
    }

    /// The concrete pattern graph together with its distinguished vertex
    /// (apex or hub), which is always the highest-numbered vertex.
    pub fn resolved(&self) -> Result<(Graph, VertexId), Error> {
        self.validate()?;
        match self {
            PatternSpec::ApexForest { forest } => {
                let apex = forest.vertices().max().unwrap() + 1;
                let mut g = forest.clone();
                for v in forest.vertex_set() {
                    g.add_edge(v, apex);
                }
                Ok((g, apex))
            }
            PatternSpec::Wheel { k } => {
                let k = *k;
                let mut g = Graph::new();
                for i in 0..k {
                    g.add_edge(i, (i + 1) % k);
                    g.add_edge(i, k);
                }
                Ok((g, k))
            }
        }
    }
}

/// Diagnostic used by tests: every clique of g must sit inside some bag of
/// an accepted decomposition. Exhaustive over vertex subsets, so capped.
pub fn all_cliques_in_bags(g: &Graph, d: &RootedTreeDecomposition) -> Result<bool, Error> {
    let vs: Vec<VertexId> = g.vertices().collect();
    if vs.len() > 16 {
        return Err(Error::Limit(format!("clique scan on {} vertices", vs.len())));
    }
    for mask in 1u32..(1 << vs.len()) {
        let subset: BTreeSet<VertexId> = vs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let is_clique = subset
            .iter()
            .all(|&u| subset.iter().all(|&v| u == v || g.has_edge(u, v)));
        if is_clique && !d.bags.iter().any(|b| subset.is_subset(b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[VertexId]) -> BTreeSet<VertexId> {
        vs.iter().copied().collect()
    }

    #[test]
    fn k3_single_bag_accepts() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let d = RootedTreeDecomposition::single(set(&[0, 1, 2]));
        assert_eq!(verify_tree_decomposition(&g, &d, None, None), Verdict::Accept);
        assert_eq!(d.width().unwrap(), 2);
    }

    #[test]
    fn k3_two_bags_misses_an_edge() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let d = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[1, 2]));
        match verify_tree_decomposition(&g, &d, None, None) {
            Verdict::Reject(v) => {
                assert_eq!(v.rule, "edge-cover");
                assert!(v.witness.contains("0-2"));
            }
            Verdict::Accept => panic!("must reject"),
        }
    }

    #[test]
    fn p4_path_decomposition_accepts() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut d = RootedTreeDecomposition::single(set(&[0, 1]));
        let a = d.add_child(0, set(&[1, 2]));
        d.add_child(a, set(&[2, 3]));
        assert_eq!(verify_tree_decomposition(&g, &d, None, None), Verdict::Accept);
        assert_eq!(d.width().unwrap(), 1);
    }

    #[test]
    fn occupancy_violation_detected() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let mut d = RootedTreeDecomposition::single(set(&[0, 1]));
        let a = d.add_child(0, set(&[1, 2]));
        d.add_child(a, set(&[0, 2])); // vertex 0 occupies nodes 0 and 2 only
        match verify_tree_decomposition(&g, &d, None, None) {
            Verdict::Reject(v) => assert_eq!(v.rule, "occupancy-connected"),
            Verdict::Accept => panic!("must reject"),
        }
    }

    #[test]
    fn root_bag_and_bag_size_options() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let d = RootedTreeDecomposition::single(set(&[0, 1, 2]));
        assert!(verify_tree_decomposition(&g, &d, Some(&set(&[0, 1, 2])), Some(3)).is_accept());
        assert!(!verify_tree_decomposition(&g, &d, Some(&set(&[0])), None).is_accept());
        assert!(!verify_tree_decomposition(&g, &d, None, Some(2)).is_accept());
    }

    #[test]
    fn width_examples() {
        let d = RootedTreeDecomposition::single(set(&[0, 1, 2, 3, 4]));
        assert_eq!(d.width().unwrap(), 4);
        let d = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[1, 2, 3]));
        assert_eq!(d.width().unwrap(), 2);
        let mut d = RootedTreeDecomposition::single(set(&[0]));
        d.add_child(0, set(&[1]));
        assert_eq!(d.width().unwrap(), 0);
    }

    #[test]
    fn attach_nothing_is_identity() {
        let base = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[1, 2]));
        assert_eq!(attach(&base, &[]).unwrap(), base);
    }

    #[test]
    fn from_undirected_orients_away_from_root() {
        let bags = vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3]), set(&[2, 4])];
        let d = RootedTreeDecomposition::from_undirected(bags, &[(2, 3), (0, 1), (1, 2)], 1);
        assert_eq!(d.root(), 1);
        assert_eq!(d.parent(0), Some(1));
        assert_eq!(d.parent(2), Some(1));
        assert_eq!(d.parent(3), Some(2));
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert!(verify_tree_decomposition(&g, &d, Some(&set(&[1, 2])), Some(2)).is_accept());
    }

    #[test]
    #[should_panic(expected = "connect all bags")]
    fn from_undirected_rejects_disconnected_forest() {
        let bags = vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])];
        RootedTreeDecomposition::from_undirected(bags, &[(0, 1), (2, 3), (0, 1)], 0);
    }

    #[test]
    fn attach_single_child_makes_three_node_path() {
        let base = RootedTreeDecomposition::single(set(&[0, 1]));
        let child = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[0, 1, 2]));
        let out = attach(&base, &[(child, 0)]).unwrap();
        assert_eq!(out.node_count(), 3);
        assert_eq!(out.bag(0), &set(&[0, 1]));
        assert_eq!(out.bag(1), &set(&[0, 1]));
        assert_eq!(out.bag(2), &set(&[0, 1, 2]));
        assert_eq!(out.parent(1), Some(0));
        assert_eq!(out.parent(2), Some(1));
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert!(verify_tree_decomposition(&g, &out, Some(&set(&[0, 1])), None).is_accept());
    }

    #[test]
    fn attach_two_children_same_node() {
        let base = RootedTreeDecomposition::single(set(&[0, 1]));
        let c1 = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[0, 1, 2]));
        let c2 = RootedTreeDecomposition::two_node(set(&[0, 1]), set(&[0, 1, 3]));
        let out = attach(&base, &[(c1, 0), (c2, 0)]).unwrap();
        assert_eq!(out.node_count(), 5);
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]);
        assert!(verify_tree_decomposition(&g, &out, None, None).is_accept());
    }

    #[test]
    fn attach_root_bag_mismatch_rejected() {
        let base = RootedTreeDecomposition::single(set(&[0, 1]));
        let child = RootedTreeDecomposition::single(set(&[0, 2]));
        assert!(attach(&base, &[(child, 0)]).is_err());
    }

    #[test]
    fn minor_model_k3_in_k4() {
        let host = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let pattern = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let branch = BTreeMap::from([
            (0, set(&[0])),
            (1, set(&[1])),
            (2, set(&[2])),
        ]);
        let m = MinorModel::new(pattern, branch);
        assert_eq!(verify_minor_model(&host, &m), Verdict::Accept);
    }

    #[test]
    fn minor_model_overlap_rejected() {
        let host = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let pattern = Graph::from_edges(2, &[(0, 1)]);
        let m = MinorModel::new(pattern, BTreeMap::from([(0, set(&[0, 1])), (1, set(&[1, 2]))]));
        match verify_minor_model(&host, &m) {
            Verdict::Reject(v) => assert_eq!(v.rule, "branch-disjoint"),
            Verdict::Accept => panic!("must reject"),
        }
    }

    #[test]
    fn minor_model_unrealized_edge_rejected() {
        let host = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let pattern = Graph::from_edges(2, &[(0, 1)]);
        let m = MinorModel::new(pattern, BTreeMap::from([(0, set(&[0])), (1, set(&[3]))]));
        match verify_minor_model(&host, &m) {
            Verdict::Reject(v) => assert_eq!(v.rule, "edge-realized"),
            Verdict::Accept => panic!("must reject"),
        }
    }

    #[test]
    fn lift_identity_trace_is_identity() {
        let host = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let pattern = Graph::from_edges(2, &[(0, 1)]);
        let m = MinorModel::new(pattern, BTreeMap::from([(0, set(&[0])), (1, set(&[1]))]));
        let lifted = lift_minor_model(&m, &ContractionTrace::identity(&host));
        assert_eq!(lifted, m);
    }

    #[test]
    fn lift_through_one_contraction() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let (h, trace) = k4
            .contract_edges(&[(0, 1)], &ContractionTrace::identity(&k4))
            .unwrap();
        let pattern = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = MinorModel::new(
            pattern,
            BTreeMap::from([(0, set(&[0])), (1, set(&[2])), (2, set(&[3]))]),
        );
        assert!(verify_minor_model(&h, &m).is_accept());
        let lifted = lift_minor_model(&m, &trace);
        assert_eq!(lifted.branch[&0], set(&[0, 1]));
        assert!(verify_minor_model(&k4, &lifted).is_accept());
    }

    #[test]
    fn pattern_spec_resolution() {
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        let spec = PatternSpec::ApexForest { forest: star };
        let (g, apex) = spec.resolved().unwrap();
        assert_eq!(apex, 3);
        assert_eq!(g.n(), 4);
        for v in 0..3 {
            assert!(g.has_edge(v, apex));
        }

        let wheel = PatternSpec::Wheel { k: 4 };
        let (w, hub) = wheel.resolved().unwrap();
        assert_eq!(hub, 4);
        assert_eq!(w.n(), 5);
        assert_eq!(w.edge_count(), 8);
        assert!(w.has_edge(0, 1) && w.has_edge(3, 0) && w.has_edge(2, hub));

        assert!(PatternSpec::Wheel { k: 2 }.resolved().is_err());
        let not_tree = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(PatternSpec::ApexForest { forest: not_tree }.resolved().is_err());
    }

    #[test]
    fn clique_containment_check() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let good = RootedTreeDecomposition::single(set(&[0, 1, 2, 3]));
        assert!(all_cliques_in_bags(&g, &good).unwrap());
        let bad = RootedTreeDecomposition::two_node(set(&[0, 1, 2]), set(&[1, 2, 3]));
        assert!(!all_cliques_in_bags(&g, &bad).unwrap());
    }

    #[test]
    fn prepend_and_without_subtrees() {
        let mut d = RootedTreeDecomposition::single(set(&[0]));
        let a = d.add_child(0, set(&[0, 1]));
        let b = d.add_child(a, set(&[1, 2]));
        d.add_child(b, set(&[2, 3]));
        let r = d.prepend_root(set(&[]));
        assert_eq!(d.root(), r);
        assert_eq!(d.children(r), vec![0]);

        let (trimmed, map) = d.without_subtrees(&BTreeSet::from([b]));
        assert_eq!(trimmed.node_count(), 3);
        assert!(map[b].is_none());
        assert_eq!(trimmed.bag(map[a].unwrap()), &set(&[0, 1]));
    }
}
