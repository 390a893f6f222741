//! Decomposition against wheel patterns: for k >= 3 and a root edge or cycle
//! C with at most k-1 vertices, produce either a V(C)-rooted
//! tree-decomposition with every bag within max{3k/2-3, k} vertices, or a
//! model of the k-wheel (a k-cycle plus a hub seeing all of it).
//!
//! The construction routes a detour path between the ends of one C-edge,
//! fixes a largest component M left aside, and grows M greedily: whenever a
//! structural step needs M to be maximal and is not, the failure is turned
//! into a concrete better path choice and the run restarts. At the fixpoint
//! the graph splits into a small central skeleton plus hanging components,
//! each handled by recursion on a contracted rim cycle.

use std::collections::{BTreeMap, BTreeSet};

use crate::certificates::{
    attach, lift_minor_model, verify_minor_model, verify_tree_decomposition, MinorModel,
    PatternSpec, RootedTreeDecomposition,
};
use crate::graph::{ContractionTrace, Graph, VertexId};
use crate::menger::max_disjoint_paths;
use crate::{wheel_bag_bound, DecomposeOutcome, Error};

/// Root anchor: an edge (two vertices) or a cycle (three or more, in cyclic
/// order). Stored normalized so equal cycles compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    seq: Vec<VertexId>,
}

impl CycleSpec {
    pub fn edge(u: VertexId, v: VertexId) -> Result<Self, Error> {
        if u == v {
            return Err(Error::input("an edge needs two distinct vertices"));
        }
        Ok(CycleSpec { seq: vec![u.min(v), u.max(v)] })
    }

    pub fn cycle(seq: Vec<VertexId>) -> Result<Self, Error> {
        if seq.len() < 3 {
            return Err(Error::input("a cycle needs at least three vertices"));
        }
        let set: BTreeSet<VertexId> = seq.iter().copied().collect();
        if set.len() != seq.len() {
            return Err(Error::input("cycle vertices must be distinct"));
        }
        Ok(CycleSpec { seq: normalize_cycle(&seq) })
    }

    pub fn from_vertices(seq: Vec<VertexId>) -> Result<Self, Error> {
        match seq.len() {
            2 => CycleSpec::edge(seq[0], seq[1]),
            _ => CycleSpec::cycle(seq),
        }
    }

    pub fn seq(&self) -> &[VertexId] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_edge(&self) -> bool {
        self.seq.len() == 2
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.seq.iter().copied().collect()
    }

    /// The root edges: consecutive pairs, plus the closing pair for cycles.
    pub fn c_edges(&self) -> Vec<(VertexId, VertexId)> {
        if self.is_edge() {
            return vec![(self.seq[0], self.seq[1])];
        }
        let mut out: Vec<(VertexId, VertexId)> = self.seq.windows(2).map(|w| (w[0], w[1])).collect();
        out.push((*self.seq.last().unwrap(), self.seq[0]));
        out
    }

    pub fn validate_in(&self, g: &Graph) -> Result<(), Error> {
        for &v in &self.seq {
            if !g.has_vertex(v) {
                return Err(Error::input(format!("root vertex {v} is not in the graph")));
            }
        }
        for (u, v) in self.c_edges() {
            if !g.has_edge(u, v) {
                return Err(Error::input(format!("root edge {u}-{v} is not in the graph")));
            }
        }
        Ok(())
    }

    /// Cyclic order starting at `v1` and ending at `vc`, where (vc, v1) is
    /// the closing edge. `v1` and `vc` must be adjacent on the cycle.
    fn oriented_from_edge(&self, v1: VertexId, vc: VertexId) -> Vec<VertexId> {
        orient_cycle(&self.seq, v1, vc)
    }
}

fn normalize_cycle(seq: &[VertexId]) -> Vec<VertexId> {
    let n = seq.len();
    let start = (0..n).min_by_key(|&i| seq[i]).unwrap();
    let prev = seq[(start + n - 1) % n];
    let next = seq[(start + 1) % n];
    let mut out = Vec::with_capacity(n);
    if next <= prev {
        for i in 0..n {
            out.push(seq[(start + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(seq[(start + n - i) % n]);
        }
    }
    out
}

fn orient_cycle(seq: &[VertexId], v1: VertexId, vc: VertexId) -> Vec<VertexId> {
    let n = seq.len();
    if n == 2 {
        assert!(seq.contains(&v1) && seq.contains(&vc));
        return vec![v1, vc];
    }
    let i = seq.iter().position(|&x| x == v1).expect("v1 on the cycle");
    let forward_next = seq[(i + 1) % n];
    let back_next = seq[(i + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if back_next == vc {
        for d in 0..n {
            out.push(seq[(i + d) % n]);
        }
    } else {
        assert_eq!(forward_next, vc, "the chosen pair must be a cycle edge");
        for d in 0..n {
            out.push(seq[(i + n - d) % n]);
        }
    }
    assert_eq!(out[0], v1);
    assert_eq!(*out.last().unwrap(), vc);
    out
}

/// One detour choice: a C-edge (v1, vc), a path between its ends through the
/// outside, and the largest component M left over.
#[derive(Clone, Debug)]
pub struct PathChoice {
    /// Root vertices ordered v1..vc so that (vc, v1) is the chosen edge.
    pub cycle_order: Vec<VertexId>,
    /// The detour v1 .. vc, internally disjoint from the root.
    pub pprime: Vec<VertexId>,
    /// Largest component of the graph minus root and detour.
    pub m: BTreeSet<VertexId>,
}

pub type ImprovementWitness = PathChoice;

impl PathChoice {
    fn from_parts(g: &Graph, cycle_order: Vec<VertexId>, pprime: Vec<VertexId>) -> PathChoice {
        let c_set: BTreeSet<VertexId> = cycle_order.iter().copied().collect();
        let mut removed = c_set.clone();
        removed.extend(pprime.iter().copied());
        let comps = g.minus(&removed).components();
        let mut best: Option<BTreeSet<VertexId>> = None;
        for comp in comps {
            if best.as_ref().is_none_or(|b| comp.len() > b.len()) {
                best = Some(comp);
            }
        }
        let m = best.expect("an eligible detour leaves something outside");
        let choice = PathChoice { cycle_order, pprime, m };
        choice.validate(g);
        choice
    }

    pub fn v1(&self) -> VertexId {
        self.pprime[0]
    }

    pub fn vc(&self) -> VertexId {
        *self.pprime.last().unwrap()
    }

    /// Interior of the detour (the path P).
    pub fn p_interior(&self) -> &[VertexId] {
        &self.pprime[1..self.pprime.len() - 1]
    }

    pub fn c_set(&self) -> BTreeSet<VertexId> {
        self.cycle_order.iter().copied().collect()
    }

    pub fn p_set(&self) -> BTreeSet<VertexId> {
        self.p_interior().iter().copied().collect()
    }

    fn validate(&self, g: &Graph) {
        let c_set = self.c_set();
        assert!(self.pprime.len() >= 3, "the detour needs an interior");
        assert_eq!(self.pprime[0], self.cycle_order[0]);
        assert_eq!(*self.pprime.last().unwrap(), *self.cycle_order.last().unwrap());
        let distinct: BTreeSet<VertexId> = self.pprime.iter().copied().collect();
        assert_eq!(distinct.len(), self.pprime.len());
        for w in self.pprime.windows(2) {
            assert!(g.has_edge(w[0], w[1]), "detour steps must be edges");
        }
        for &x in self.p_interior() {
            assert!(!c_set.contains(&x), "detour interior must avoid the root");
        }
        for w in self.cycle_order.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        assert!(g.has_edge(self.vc(), self.v1()));
        assert!(!self.m.is_empty());
        assert!(self.m.is_disjoint(&c_set) && self.m.is_disjoint(&self.p_set()));
    }

    /// The witness cycle through root and detour.
    fn big_cycle(&self) -> Vec<VertexId> {
        let mut seq = self.cycle_order.clone();
        seq.extend(self.p_interior().iter().rev().copied());
        seq
    }
}

/// The A-side structure around a fixed choice: the M-attachments on the
/// detour, the gaps between consecutive ones, and their components.
#[derive(Clone, Debug)]
pub struct IntervalStructure {
    pub a_set: BTreeSet<VertexId>,
    /// A-vertex nearest v1 on the detour.
    pub a_near: VertexId,
    /// A-vertex nearest vc on the detour.
    pub a_far: VertexId,
    pub intervals: Vec<OpenInterval>,
    /// The witness cycle through root and detour, in cyclic order.
    pub big_cycle: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct OpenInterval {
    /// The two A-vertices bounding the gap.
    pub ends: (VertexId, VertexId),
    /// Detour vertices strictly inside the gap, in detour order.
    pub interior: Vec<VertexId>,
    /// Component of G - (root ∪ A) containing the gap.
    pub y: BTreeSet<VertexId>,
}

/// Per root vertex, the A-vertices reachable by an M-avoiding path leaving
/// the root immediately (a jump), with one witness path each.
#[derive(Clone, Debug)]
pub struct JumpTable {
    pub targets: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub bad: BTreeSet<VertexId>,
    witnesses: BTreeMap<(VertexId, VertexId), Vec<VertexId>>,
}

impl JumpTable {
    pub fn jump(&self, r: VertexId, x: VertexId) -> &[VertexId] {
        &self.witnesses[&(r, x)]
    }
}

/// Outcome of the detour search: a usable choice, or one of the two direct
/// decompositions that apply when root and detour already span the graph.
#[derive(Clone, Debug)]
pub enum PathStart {
    Choice(PathChoice),
    Direct(RootedTreeDecomposition),
}

/// Subtree result for one hanging component.
#[derive(Clone, Debug)]
pub enum SubtreeOutcome {
    Tree(RootedTreeDecomposition),
    Minor(MinorModel),
}

pub fn decompose_wheel(g: &Graph, c: &CycleSpec, k: u32) -> Result<DecomposeOutcome, Error> {
    if k < 3 {
        return Err(Error::input("wheel order must be at least 3"));
    }
    c.validate_in(g)?;
    if c.len() > (k - 1) as usize {
        return Err(Error::input(format!(
            "root has {} vertices; at most {} allowed for wheel order {k}",
            c.len(),
            k - 1
        )));
    }
    solve(g, c, k)
}

/// Driver without a caller-chosen root: smallest edge, or singleton bags for
/// an edgeless graph.
pub fn decompose_wheel_auto(g: &Graph, k: u32) -> Result<DecomposeOutcome, Error> {
    if k < 3 {
        return Err(Error::input("wheel order must be at least 3"));
    }
    match g.edges().first() {
        Some(&(u, v)) => decompose_wheel(g, &CycleSpec::edge(u, v)?, k),
        None => {
            let mut vs = g.vertices();
            let d = match vs.next() {
                None => RootedTreeDecomposition::single(BTreeSet::new()),
                Some(first) => {
                    let mut d = RootedTreeDecomposition::single(BTreeSet::from([first]));
                    for v in vs {
                        d.add_child(0, BTreeSet::from([v]));
                    }
                    d
                }
            };
            assert!(verify_tree_decomposition(g, &d, None, None).is_accept());
            Ok(DecomposeOutcome::Decomposition(d))
        }
    }
}

fn solve(g: &Graph, c: &CycleSpec, k: u32) -> Result<DecomposeOutcome, Error> {
    let out = solve_inner(g, c, k)?;
    let bound = wheel_bag_bound(k);
    match &out {
        DecomposeOutcome::Decomposition(d) => {
            let verdict = verify_tree_decomposition(g, d, Some(&c.vertex_set()), Some(bound));
            assert!(verdict.is_accept(), "decomposition must verify: {verdict:?}");
        }
        DecomposeOutcome::Minor(m) => {
            let (pattern, _) = PatternSpec::Wheel { k }.resolved().unwrap();
            assert_eq!(m.pattern, pattern, "model must target the k-wheel");
            assert!(verify_minor_model(g, m).is_accept());
        }
    }
    Ok(out)
}

fn solve_inner(g: &Graph, c: &CycleSpec, k: u32) -> Result<DecomposeOutcome, Error> {
    debug_assert!(c.validate_in(g).is_ok());
    let bound = wheel_bag_bound(k);
    if g.n() <= bound {
        let d = RootedTreeDecomposition::two_node(c.vertex_set(), g.vertex_set());
        return Ok(DecomposeOutcome::Decomposition(d));
    }
    if let Some(out) = reduce_connectivity(g, c, k)? {
        return Ok(out);
    }
    debug_assert!(normalized_state_holds(g, c));
    let mut choice = match initial_path(g, c)? {
        PathStart::Direct(d) => return Ok(DecomposeOutcome::Decomposition(d)),
        PathStart::Choice(ch) => ch,
    };
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        assert!(rounds <= g.n() + 1, "the improvement loop must terminate");
        match attempt(g, k, &choice)? {
            Attempt::Done(out) => return Ok(out),
            Attempt::Improved(better) => {
                assert!(better.m.len() > choice.m.len(), "improvements must grow M");
                choice = better;
            }
        }
    }
}

enum Attempt {
    Done(DecomposeOutcome),
    Improved(PathChoice),
}

fn attempt(g: &Graph, k: u32, choice: &PathChoice) -> Result<Attempt, Error> {
    if let Some(better) = check_maximality(g, choice, None) {
        return Ok(Attempt::Improved(better));
    }
    let st = match build_interval_structure(g, choice, k)? {
        StructureOutcome::Minor(m) => return Ok(Attempt::Done(DecomposeOutcome::Minor(m))),
        StructureOutcome::Structure(st) => st,
    };
    if st.a_set.len() >= 2 {
        let jumps = compute_jumps(g, choice, &st);
        if let Some(better) = check_maximality(g, choice, Some((&st, &jumps))) {
            return Ok(Attempt::Improved(better));
        }
        assemble_central(g, choice, &st, Some(&jumps), k).map(Attempt::Done)
    } else {
        assemble_central(g, choice, &st, None, k).map(Attempt::Done)
    }
}

/// Check whether the state already satisfies what the main construction
/// needs; used after the reductions and in tests.
pub fn normalized_state_holds(g: &Graph, c: &CycleSpec) -> bool {
    let c_set = c.vertex_set();
    g.is_2connected()
        && g.minus(&c_set).is_connected()
        && g.n() > c.len()
        && c_set.iter().all(|&v| g.neighbors(v).any(|w| !c_set.contains(&w)))
}

/// The three normalizing reductions: split into blocks (gluing with
/// cut-vertex bags), split the outside into components (identifying roots),
/// and contract a root edge at a root vertex with no outside neighbor.
/// Returns the final outcome when a reduction fired, None when the state is
/// already normalized. Components of a disconnected graph are handled like
/// blocks.
pub fn reduce_connectivity(g: &Graph, c: &CycleSpec, k: u32) -> Result<Option<DecomposeOutcome>, Error> {
    let c_set = c.vertex_set();
    let comps = g.components();
    if comps.len() > 1 {
        let main = comps
            .iter()
            .find(|comp| c_set.is_subset(comp))
            .expect("the root lies in one component")
            .clone();
        let sub = g.induced(&main);
        assert!(sub.n() < g.n());
        let mut combined = match solve(&sub, c, k)? {
            DecomposeOutcome::Minor(m) => return Ok(Some(DecomposeOutcome::Minor(m))),
            DecomposeOutcome::Decomposition(d) => d,
        };
        let root = combined.root();
        for comp in comps {
            if comp == main {
                continue;
            }
            let part = g.induced(&comp);
            let tree = if part.edge_count() == 0 {
                let mut it = comp.iter();
                let mut d = RootedTreeDecomposition::single(BTreeSet::from([*it.next().unwrap()]));
                for &v in it {
                    d.add_child(0, BTreeSet::from([v]));
                }
                d
            } else {
                let (u, v) = part.edges()[0];
                assert!(part.n() < g.n());
                match solve(&part, &CycleSpec::edge(u, v)?, k)? {
                    DecomposeOutcome::Minor(m) => return Ok(Some(DecomposeOutcome::Minor(m))),
                    DecomposeOutcome::Decomposition(d) => d,
                }
            };
            combined.hang(root, &tree);
        }
        return Ok(Some(DecomposeOutcome::Decomposition(combined)));
    }

    if !g.is_2connected() {
        let (blocks, cuts) = g.blocks_and_cutvertices();
        if blocks.len() > 1 {
            return block_reduction(g, c, k, &blocks, &cuts).map(Some);
        }
        // connected with one block yet not 2-connected: tiny graphs, caught
        // by the size base case before this point
        unreachable!("one-block graphs above the size bound are 2-connected");
    }

    let outside = g.minus(&c_set);
    let parts = outside.components();
    assert!(!parts.is_empty(), "the base case handles spanning roots");
    if parts.len() > 1 {
        let mut trees: Vec<RootedTreeDecomposition> = Vec::new();
        for part in &parts {
            let mut keep = c_set.clone();
            keep.extend(part.iter().copied());
            let sub = g.induced(&keep);
            assert!(sub.n() < g.n());
            match solve(&sub, c, k)? {
                DecomposeOutcome::Minor(m) => return Ok(Some(DecomposeOutcome::Minor(m))),
                DecomposeOutcome::Decomposition(d) => trees.push(d),
            }
        }
        let mut combined = trees.remove(0);
        let root = combined.root();
        for tree in &trees {
            combined.graft_identify(root, tree)?;
        }
        return Ok(Some(DecomposeOutcome::Decomposition(combined)));
    }

    let stuck = c_set
        .iter()
        .copied()
        .find(|&v| g.neighbors(v).all(|w| c_set.contains(&w)));
    if let Some(v) = stuck {
        assert!(!c.is_edge(), "a 2-connected graph keeps edge roots attached outside");
        let seq = c.seq();
        let i = seq.iter().position(|&x| x == v).unwrap();
        let partner = seq[(i + 1) % seq.len()];
        let class: BTreeSet<VertexId> = BTreeSet::from([v, partner]);
        let (shrunk, trace) = g.contract_classes(&[(partner, class)], &ContractionTrace::identity(g));
        let mut new_seq: Vec<VertexId> = seq.to_vec();
        new_seq.remove(i);
        let c_v = CycleSpec::from_vertices(new_seq)?;
        assert!(shrunk.n() < g.n());
        return match solve(&shrunk, &c_v, k)? {
            DecomposeOutcome::Minor(m) => {
                let lifted = lift_minor_model(&m, &trace);
                assert!(verify_minor_model(g, &lifted).is_accept());
                Ok(Some(DecomposeOutcome::Minor(lifted)))
            }
            DecomposeOutcome::Decomposition(mut d) => {
                d.prepend_root(c_set.clone());
                Ok(Some(DecomposeOutcome::Decomposition(d)))
            }
        };
    }

    Ok(None)
}

fn block_reduction(
    g: &Graph,
    c: &CycleSpec,
    k: u32,
    blocks: &[BTreeSet<VertexId>],
    cuts: &BTreeSet<VertexId>,
) -> Result<DecomposeOutcome, Error> {
    let c_set = c.vertex_set();
    let mut bags: Vec<BTreeSet<VertexId>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // per block, the index range its bags occupy
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut root = None;
    for block in blocks {
        let sub = g.induced(block);
        assert!(sub.n() < g.n());
        let is_c_block = c_set.is_subset(block);
        let c_b = if is_c_block {
            c.clone()
        } else {
            let (u, v) = sub.edges()[0];
            CycleSpec::edge(u, v)?
        };
        let tree = match solve(&sub, &c_b, k)? {
            DecomposeOutcome::Minor(m) => return Ok(DecomposeOutcome::Minor(m)),
            DecomposeOutcome::Decomposition(d) => d,
        };
        let offset = bags.len();
        for t in tree.nodes() {
            bags.push(tree.bag(t).clone());
            if let Some(p) = tree.parent(t) {
                edges.push((offset + t, offset + p));
            }
        }
        spans.push((offset, bags.len()));
        if is_c_block {
            assert!(root.is_none(), "the root lies in exactly one block");
            root = Some(offset + tree.root());
        }
    }
    for &v in cuts {
        let node = bags.len();
        bags.push(BTreeSet::from([v]));
        for (bi, block) in blocks.iter().enumerate() {
            if block.contains(&v) {
                let (lo, hi) = spans[bi];
                let hit = (lo..hi)
                    .find(|&i| bags[i].contains(&v))
                    .expect("block trees cover their vertices");
                edges.push((node, hit));
            }
        }
    }
    let root = root.expect("the root block was found");
    let d = RootedTreeDecomposition::from_undirected(bags, &edges, root);
    Ok(DecomposeOutcome::Decomposition(d))
}

/// Shortest detour over all root edges, breadth-first through the outside.
/// When root and detour span everything, emits the direct decomposition
/// (pure-cycle case for edge roots, alternating case for cycle roots).
pub fn initial_path(g: &Graph, c: &CycleSpec) -> Result<PathStart, Error> {
    let c_set = c.vertex_set();
    let mut best: Option<(usize, VertexId, VertexId, Vec<VertexId>)> = None;
    for (x, y) in c.c_edges() {
        if let Some(path) = outside_path(g, &c_set, x, y) {
            if best.as_ref().is_none_or(|(len, ..)| path.len() < *len) {
                best = Some((path.len(), x, y, path));
            }
        }
    }
    let (_, x, y, pprime) = best.expect("every root edge has an outside detour after reduction");
    let all: BTreeSet<VertexId> = c_set.union(&pprime.iter().copied().collect()).copied().collect();
    if all != g.vertex_set() {
        let cycle_order = c.oriented_from_edge(x, y);
        return Ok(PathStart::Choice(PathChoice::from_parts(g, cycle_order, pprime)));
    }
    if c.is_edge() {
        return Ok(PathStart::Direct(direct_cycle_decomposition(g, &pprime)));
    }
    Ok(PathStart::Direct(direct_alternating_decomposition(g, c, x, y, &pprime)))
}

/// Shortest x..y path with all interior vertices outside the root set;
/// deterministic breadth-first search.
fn outside_path(g: &Graph, c_set: &BTreeSet<VertexId>, x: VertexId, y: VertexId) -> Option<Vec<VertexId>> {
    let sources: BTreeSet<VertexId> = g.neighbors(x).filter(|v| !c_set.contains(v)).collect();
    let targets: BTreeSet<VertexId> = g.neighbors(y).filter(|v| !c_set.contains(v)).collect();
    if sources.is_empty() || targets.is_empty() {
        return None;
    }
    let mut parent: BTreeMap<VertexId, Option<VertexId>> = sources.iter().map(|&s| (s, None)).collect();
    let mut frontier: Vec<VertexId> = sources.iter().copied().collect();
    let mut hit: Option<VertexId> = frontier.iter().copied().find(|v| targets.contains(v));
    while hit.is_none() && !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for w in g.neighbors(u) {
                if c_set.contains(&w) || parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w, Some(u));
                next.push(w);
            }
        }
        next.sort_unstable();
        next.dedup();
        hit = next.iter().copied().find(|v| targets.contains(v));
        frontier = next;
    }
    let mut cur = hit?;
    let mut inner = vec![cur];
    while let Some(Some(p)) = parent.get(&cur) {
        inner.push(*p);
        cur = *p;
    }
    inner.reverse();
    let mut path = vec![x];
    path.extend(inner);
    path.push(y);
    Some(path)
}

fn direct_cycle_decomposition(g: &Graph, pprime: &[VertexId]) -> RootedTreeDecomposition {
    // the whole graph is the detour cycle plus the root edge
    assert_eq!(g.edge_count(), g.n(), "spanning shortest detour forces a pure cycle");
    let v1 = pprime[0];
    let vc = *pprime.last().unwrap();
    let inner = &pprime[1..pprime.len() - 1];
    let mut d = RootedTreeDecomposition::single(BTreeSet::from([v1, vc]));
    let mut prev = d.add_child(0, BTreeSet::from([v1, inner[0], vc]));
    for w in inner.windows(2) {
        prev = d.add_child(prev, BTreeSet::from([w[0], w[1], vc]));
    }
    let _ = prev;
    assert!(verify_tree_decomposition(g, &d, Some(&BTreeSet::from([v1, vc])), Some(3)).is_accept());
    d
}

fn direct_alternating_decomposition(
    g: &Graph,
    c: &CycleSpec,
    x: VertexId,
    y: VertexId,
    pprime: &[VertexId],
) -> RootedTreeDecomposition {
    let order = c.oriented_from_edge(x, y);
    let c_set = c.vertex_set();
    let inner = &pprime[1..pprime.len() - 1];
    let u1 = inner[0];
    let ul = *inner.last().unwrap();
    assert!(inner.len() >= 2, "spanning detours are long above the size bound");
    assert_eq!(order.len() % 2, 0, "odd roots cannot alternate between two anchors");
    // positions alternate between the two detour ends
    for (idx, &v) in order.iter().enumerate() {
        let outside: BTreeSet<VertexId> = g.neighbors(v).filter(|w| !c_set.contains(w)).collect();
        let expect = if idx % 2 == 0 { u1 } else { ul };
        assert_eq!(outside, BTreeSet::from([expect]), "shortest choice forces unique anchors");
    }
    for (i, &a) in inner.iter().enumerate() {
        for (j, &b) in inner.iter().enumerate() {
            if j > i + 1 {
                assert!(!g.has_edge(a, b), "shortest detours are induced paths");
            }
        }
    }
    let mut bags: Vec<BTreeSet<VertexId>> = Vec::new();
    bags.push(c_set.clone());
    let mut second = c_set.clone();
    second.insert(u1);
    bags.push(second);
    let mut third: BTreeSet<VertexId> = order.iter().skip(1).step_by(2).copied().collect();
    third.insert(u1);
    third.insert(ul);
    bags.push(third);
    for w in inner.windows(2) {
        if w[1] == ul {
            break;
        }
        bags.push(BTreeSet::from([w[0], w[1], ul]));
    }
    let mut d = RootedTreeDecomposition::single(bags[0].clone());
    let mut prev = 0;
    for bag in bags.into_iter().skip(1) {
        prev = d.add_child(prev, bag);
    }
    let _ = prev;
    assert!(verify_tree_decomposition(g, &d, Some(&c_set), Some(c.len() + 1)).is_accept());
    d
}

/// Search for a configuration showing M is not maximal. Without a jump
/// table, looks for crossing connections over the detour; with one, also
/// applies the jump rules (a bad vertex next to a jumping vertex, and a
/// shared target over a root edge).
pub fn check_maximality(
    g: &Graph,
    choice: &PathChoice,
    jumps: Option<(&IntervalStructure, &JumpTable)>,
) -> Option<ImprovementWitness> {
    if let Some(better) = crossing_improvement(g, choice) {
        return Some(better);
    }
    if let Some((st, table)) = jumps {
        if let Some(better) = jump_rule_improvements(g, choice, st, table) {
            return Some(better);
        }
    }
    None
}

fn a_positions(g: &Graph, choice: &PathChoice) -> Vec<usize> {
    choice
        .p_interior()
        .iter()
        .enumerate()
        .filter(|(_, &v)| g.neighbors(v).any(|w| choice.m.contains(&w)))
        .map(|(i, _)| i)
        .collect()
}

fn crossing_improvement(g: &Graph, choice: &PathChoice) -> Option<PathChoice> {
    let pprime = &choice.pprime;
    let pos: BTreeMap<VertexId, usize> = pprime.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // positions of M-attachments, shifted to pprime indexing
    let a_pos: BTreeSet<usize> = a_positions(g, choice).into_iter().map(|i| i + 1).collect();
    let strictly_between = |lo: usize, hi: usize| a_pos.iter().any(|&p| p > lo && p < hi);

    let mut removed = choice.c_set();
    removed.extend(pprime.iter().copied());
    removed.extend(choice.m.iter().copied());
    for comp in g.minus(&removed).components() {
        let att: BTreeSet<usize> = g
            .neighborhood_of_set(&comp)
            .iter()
            .filter_map(|v| pos.get(v).copied())
            .collect();
        if att.len() < 2 {
            continue;
        }
        let lo = *att.iter().next().unwrap();
        let hi = *att.iter().next_back().unwrap();
        if !strictly_between(lo, hi) {
            continue;
        }
        let x = pprime[lo];
        let y = pprime[hi];
        // walk x .. y strictly through the component so the new detour keeps
        // an interior even when x and y are adjacent
        let sources: BTreeSet<VertexId> = g.neighbors(x).filter(|v| comp.contains(v)).collect();
        let targets: BTreeSet<VertexId> = g.neighbors(y).filter(|v| comp.contains(v)).collect();
        let forbidden: BTreeSet<VertexId> =
            g.vertex_set().difference(&comp).copied().collect();
        let through = g
            .bfs_path(&sources, &targets, &forbidden)
            .expect("the component connects its attachments");
        let mut new_pprime: Vec<VertexId> = pprime[..=lo].to_vec();
        new_pprime.extend(through.iter().copied());
        new_pprime.extend(pprime[hi..].iter().copied());
        let better = PathChoice::from_parts(g, choice.cycle_order.clone(), new_pprime);
        assert!(better.m.len() > choice.m.len());
        return Some(better);
    }

    let c_set = choice.c_set();
    for (u, v) in g.edges() {
        let (Some(&pu), Some(&pv)) = (pos.get(&u), pos.get(&v)) else { continue };
        let (lo, hi) = (pu.min(pv), pu.max(pv));
        if hi - lo < 2 || !strictly_between(lo, hi) {
            continue;
        }
        if c_set.contains(&u) && c_set.contains(&v) {
            continue;
        }
        let mut new_pprime: Vec<VertexId> = pprime[..=lo].to_vec();
        new_pprime.extend(pprime[hi..].iter().copied());
        let better = PathChoice::from_parts(g, choice.cycle_order.clone(), new_pprime);
        assert!(better.m.len() > choice.m.len());
        return Some(better);
    }
    None
}

fn jump_rule_improvements(
    g: &Graph,
    choice: &PathChoice,
    st: &IntervalStructure,
    table: &JumpTable,
) -> Option<PathChoice> {
    let anchors = BTreeSet::from([st.a_near, st.a_far]);
    // a bad vertex next to any jumping vertex
    for &r in &table.bad {
        for r2 in c_neighbors(&choice.cycle_order, r) {
            if table.targets[&r2].is_empty() {
                continue;
            }
            let b = *table.targets[&r].difference(&anchors).next().unwrap();
            let b2 = *table.targets[&r2].iter().next().unwrap();
            let mut union = path_graph(table.jump(r, b));
            union.union_with(&path_graph(table.jump(r2, b2)));
            union.union_with(&path_graph(&p_subpath(choice, b, b2)));
            return Some(reroute_over_edge(g, choice, r, r2, &union));
        }
    }
    // a target shared across a root edge
    for (x, y) in edge_pairs(&choice.cycle_order) {
        let common: BTreeSet<VertexId> = table.targets[&x].intersection(&table.targets[&y]).copied().collect();
        if let Some(&t) = common.iter().next() {
            let mut union = path_graph(table.jump(x, t));
            union.union_with(&path_graph(table.jump(y, t)));
            return Some(reroute_over_edge(g, choice, x, y, &union));
        }
    }
    None
}

fn c_neighbors(cycle_order: &[VertexId], r: VertexId) -> Vec<VertexId> {
    let n = cycle_order.len();
    let i = cycle_order.iter().position(|&x| x == r).unwrap();
    if n == 2 {
        return vec![cycle_order[1 - i]];
    }
    let mut out = vec![cycle_order[(i + 1) % n], cycle_order[(i + n - 1) % n]];
    out.sort_unstable();
    out.dedup();
    out
}

fn edge_pairs(cycle_order: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    if cycle_order.len() == 2 {
        return vec![(cycle_order[0], cycle_order[1])];
    }
    let mut out: Vec<(VertexId, VertexId)> = cycle_order.windows(2).map(|w| (w[0], w[1])).collect();
    out.push((*cycle_order.last().unwrap(), cycle_order[0]));
    out
}

fn path_graph(path: &[VertexId]) -> Graph {
    let mut g = Graph::new();
    for &v in path {
        g.add_vertex(v);
    }
    for w in path.windows(2) {
        g.add_edge(w[0], w[1]);
    }
    g
}

fn p_subpath(choice: &PathChoice, b: VertexId, b2: VertexId) -> Vec<VertexId> {
    let inner = choice.p_interior();
    let pb = inner.iter().position(|&v| v == b).unwrap();
    let pb2 = inner.iter().position(|&v| v == b2).unwrap();
    let (lo, hi) = (pb.min(pb2), pb.max(pb2));
    inner[lo..=hi].to_vec()
}

fn reroute_over_edge(
    g: &Graph,
    choice: &PathChoice,
    r: VertexId,
    r2: VertexId,
    union: &Graph,
) -> PathChoice {
    let pstar = union
        .bfs_path(&BTreeSet::from([r]), &BTreeSet::from([r2]), &BTreeSet::new())
        .expect("the jump union connects the edge ends");
    let cycle_order = orient_cycle(&choice.cycle_order, r, r2);
    let better = PathChoice::from_parts(g, cycle_order, pstar);
    assert!(better.m.len() > choice.m.len(), "jump rules must grow M");
    better
}

#[derive(Clone, Debug)]
pub enum StructureOutcome {
    Structure(IntervalStructure),
    Minor(MinorModel),
}

/// Computes the M-attachments on the detour, the gaps between them with
/// their components, and the witness cycle; returns a k-wheel model as soon
/// as M or a gap component sees k or more vertices.
pub fn build_interval_structure(
    g: &Graph,
    choice: &PathChoice,
    k: u32,
) -> Result<StructureOutcome, Error> {
    let c_set = choice.c_set();
    let inner = choice.p_interior();
    let a_idx = a_positions(g, choice);
    assert!(!a_idx.is_empty(), "a connected outside always touches the detour");
    let a_set: BTreeSet<VertexId> = a_idx.iter().map(|&i| inner[i]).collect();
    let a_near = inner[a_idx[0]];
    let a_far = inner[*a_idx.last().unwrap()];
    let big_cycle = choice.big_cycle();

    let hub_nbhd = g.neighborhood_of_set(&choice.m);
    let mut c_and_a = c_set.clone();
    c_and_a.extend(a_set.iter().copied());
    assert!(hub_nbhd.is_subset(&c_and_a), "M attaches only to root and A");
    if hub_nbhd.len() >= k as usize {
        let model = wheel_model_from_hub(g, &choice.m, &big_cycle, k);
        return Ok(StructureOutcome::Minor(model));
    }

    let mut intervals = Vec::new();
    let mut blocked = c_set.clone();
    blocked.extend(a_set.iter().copied());
    for w in a_idx.windows(2) {
        if w[1] - w[0] < 2 {
            continue;
        }
        let interior: Vec<VertexId> = inner[w[0] + 1..w[1]].to_vec();
        let ends = (inner[w[0]], inner[w[1]]);
        let y = g.reachable_from(interior[0], &blocked);
        for &x in &interior {
            assert!(y.contains(&x), "a gap stays within one component");
        }
        assert!(y.is_disjoint(&choice.m), "gap components avoid M at the fixpoint");
        let p_outside: BTreeSet<VertexId> = choice
            .p_set()
            .difference(&interior.iter().copied().collect())
            .copied()
            .collect();
        assert!(y.is_disjoint(&p_outside), "gap components avoid the rest of the detour");
        let mut allowed = c_set.clone();
        allowed.insert(ends.0);
        allowed.insert(ends.1);
        let nbhd = g.neighborhood_of_set(&y);
        assert!(
            nbhd.is_subset(&allowed),
            "gap components attach only to the root and the gap ends"
        );
        assert!(nbhd.len() >= 2, "2-connectivity gives two attachments");
        if nbhd.len() >= k as usize {
            let rim = interval_rim(g, choice, &ends);
            assert!(rim.iter().all(|v| !y.contains(v)));
            let model = wheel_model_from_hub(g, &y, &rim, k);
            return Ok(StructureOutcome::Minor(model));
        }
        intervals.push(OpenInterval { ends, interior, y });
    }

    Ok(StructureOutcome::Structure(IntervalStructure {
        a_set,
        a_near,
        a_far,
        intervals,
        big_cycle,
    }))
}

/// Witness cycle for one gap: the root path, the detour minus the gap, and a
/// bridge through M between the gap ends.
fn interval_rim(g: &Graph, choice: &PathChoice, ends: &(VertexId, VertexId)) -> Vec<VertexId> {
    let inner = choice.p_interior();
    let p0 = inner.iter().position(|&v| v == ends.0).unwrap();
    let p1 = inner.iter().position(|&v| v == ends.1).unwrap();
    assert!(p0 < p1);
    let mut forbidden: BTreeSet<VertexId> = g.vertex_set();
    for &v in &choice.m {
        forbidden.remove(&v);
    }
    forbidden.remove(&ends.0);
    forbidden.remove(&ends.1);
    let bridge = g
        .bfs_path(&BTreeSet::from([ends.0]), &BTreeSet::from([ends.1]), &forbidden)
        .expect("M bridges its two gap ends");
    let mut seq: Vec<VertexId> = choice.cycle_order.clone();
    seq.extend(inner[p1..].iter().rev().copied());
    seq.extend(bridge[1..bridge.len() - 1].iter().rev().copied());
    seq.extend(inner[..=p0].iter().rev().copied());
    seq
}

/// Hub-and-rim k-wheel model: the hub contracts to one branch, the rim cycle
/// splits into k arcs, each holding a hub neighbor (smallest-label first).
fn wheel_model_from_hub(g: &Graph, hub: &BTreeSet<VertexId>, rim: &[VertexId], k: u32) -> MinorModel {
    let hub_nbrs = g.neighborhood_of_set(hub);
    let marks: Vec<bool> = rim.iter().map(|v| hub_nbrs.contains(v)).collect();
    assert!(marks.iter().filter(|&&b| b).count() >= k as usize);
    let start_vertex = rim
        .iter()
        .enumerate()
        .filter(|&(i, _)| marks[i])
        .map(|(_, &v)| v)
        .min()
        .unwrap();
    let start = rim.iter().position(|&v| v == start_vertex).unwrap();
    let n = rim.len();
    let mut arcs: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new()];
    for d in 0..n {
        let i = (start + d) % n;
        if d > 0 && marks[i] && (arcs.len() as u32) < k {
            arcs.push(BTreeSet::new());
        }
        arcs.last_mut().unwrap().insert(rim[i]);
    }
    assert_eq!(arcs.len() as u32, k);
    let (pattern, hub_label) = PatternSpec::Wheel { k }.resolved().unwrap();
    let mut branch: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (i, arc) in arcs.into_iter().enumerate() {
        branch.insert(i as VertexId, arc);
    }
    branch.insert(hub_label, hub.clone());
    let model = MinorModel::new(pattern, branch);
    assert!(verify_minor_model(g, &model).is_accept(), "hub-rim model must verify");
    model
}

/// Exact jump targets per root vertex: breadth-first reachability through
/// the graph minus root, A, and M, started at the root vertex's outside
/// neighbors.
pub fn compute_jumps(g: &Graph, choice: &PathChoice, st: &IntervalStructure) -> JumpTable {
    let c_set = choice.c_set();
    let mut blocked = c_set.clone();
    blocked.extend(st.a_set.iter().copied());
    blocked.extend(choice.m.iter().copied());
    let anchors = BTreeSet::from([st.a_near, st.a_far]);

    let mut targets = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut bad = BTreeSet::new();
    for &r in &c_set {
        let mut s_r: BTreeSet<VertexId> = BTreeSet::new();
        for x in g.neighbors(r) {
            if st.a_set.contains(&x) {
                s_r.insert(x);
                witnesses.entry((r, x)).or_insert_with(|| vec![r, x]);
            }
        }
        let seeds: BTreeSet<VertexId> = g.neighbors(r).filter(|v| !blocked.contains(v)).collect();
        let mut parent: BTreeMap<VertexId, Option<VertexId>> =
            seeds.iter().map(|&s| (s, None)).collect();
        let mut frontier: Vec<VertexId> = seeds.iter().copied().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                for w in g.neighbors(u) {
                    if blocked.contains(&w) || parent.contains_key(&w) {
                        continue;
                    }
                    parent.insert(w, Some(u));
                    next.push(w);
                }
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        for &x in &st.a_set {
            if s_r.contains(&x) {
                continue;
            }
            let door = g.neighbors(x).find(|v| parent.contains_key(v));
            if let Some(mut cur) = door {
                let mut tail = vec![x, cur];
                while let Some(Some(p)) = parent.get(&cur) {
                    tail.push(*p);
                    cur = *p;
                }
                tail.push(r);
                tail.reverse();
                s_r.insert(x);
                witnesses.insert((r, x), tail);
            }
        }
        if !s_r.is_subset(&anchors) {
            bad.insert(r);
        }
        targets.insert(r, s_r);
    }

    assert!(targets[&choice.v1()].contains(&st.a_near), "v1 reaches the near anchor along the detour");
    assert!(targets[&choice.vc()].contains(&st.a_far), "vc reaches the far anchor along the detour");
    let m_nbhd = g.neighborhood_of_set(&choice.m);
    for &r in &c_set {
        if !m_nbhd.contains(&r) {
            assert!(!targets[&r].is_empty(), "vertices away from M always jump somewhere");
        }
    }
    JumpTable { targets, bad, witnesses }
}

enum CompKind {
    MainM,
    Interval(usize),
    Tail { prefix: bool },
    Generic,
}

fn classify_component(
    choice: &PathChoice,
    st: &IntervalStructure,
    comp: &BTreeSet<VertexId>,
) -> CompKind {
    if *comp == choice.m {
        return CompKind::MainM;
    }
    for (i, interval) in st.intervals.iter().enumerate() {
        if comp.contains(&interval.interior[0]) {
            assert_eq!(*comp, interval.y);
            return CompKind::Interval(i);
        }
    }
    let inner = choice.p_interior();
    let on_p: Vec<usize> = inner
        .iter()
        .enumerate()
        .filter(|(_, v)| comp.contains(v))
        .map(|(i, _)| i)
        .collect();
    if on_p.is_empty() {
        return CompKind::Generic;
    }
    let near_pos = inner.iter().position(|&v| v == st.a_near).unwrap();
    let far_pos = inner.iter().position(|&v| v == st.a_far).unwrap();
    if on_p.iter().all(|&i| i < near_pos) {
        assert_eq!(on_p, (0..near_pos).collect::<Vec<_>>(), "a tail fills its whole side");
        CompKind::Tail { prefix: true }
    } else {
        assert!(on_p.iter().all(|&i| i > far_pos), "detour vertices off the gaps sit in one tail");
        assert_eq!(on_p, (far_pos + 1..inner.len()).collect::<Vec<_>>());
        CompKind::Tail { prefix: false }
    }
}

/// Decomposes one gap component by recursing on the contracted rim.
pub fn decompose_interval(
    g: &Graph,
    choice: &PathChoice,
    st: &IntervalStructure,
    idx: usize,
    k: u32,
) -> Result<SubtreeOutcome, Error> {
    let interval = &st.intervals[idx];
    let rim = interval_rim(g, choice, &interval.ends);
    component_recursion(g, &interval.y, &rim, k)
}

/// Shared machinery: hang a component below its neighborhood by contracting
/// the given rim cycle onto the neighborhood and recursing.
fn component_recursion(
    g: &Graph,
    comp: &BTreeSet<VertexId>,
    rim: &[VertexId],
    k: u32,
) -> Result<SubtreeOutcome, Error> {
    let nb = g.neighborhood_of_set(comp);
    let rim_set: BTreeSet<VertexId> = rim.iter().copied().collect();
    assert!(nb.is_subset(&rim_set), "the rim carries the whole neighborhood");
    assert!(comp.is_disjoint(&rim_set), "the rim avoids the hanging component");
    assert!(nb.len() >= 2);
    assert!((nb.len() as u32) < k, "wheel checks ran before the recursion");

    let mut keep: BTreeSet<VertexId> = comp.clone();
    keep.extend(nb.iter().copied());
    let mut host = g.induced(&keep);
    for &v in rim {
        host.add_vertex(v);
    }
    for i in 0..rim.len() {
        host.add_edge(rim[i], rim[(i + 1) % rim.len()]);
    }
    let (classes, order) = cycle_classes(rim, &nb);
    let (shrunk, trace) = host.contract_classes(&classes, &ContractionTrace::identity(&host));
    assert_eq!(shrunk.vertex_set(), keep);
    assert!(shrunk.n() < g.n(), "the recursion drops at least the far side");
    let c_sub = CycleSpec::from_vertices(order)?;
    debug_assert!(c_sub.validate_in(&shrunk).is_ok());
    match solve(&shrunk, &c_sub, k)? {
        DecomposeOutcome::Minor(m) => {
            let lifted = lift_minor_model(&m, &trace);
            assert!(verify_minor_model(g, &lifted).is_accept());
            Ok(SubtreeOutcome::Minor(lifted))
        }
        DecomposeOutcome::Decomposition(d) => {
            assert_eq!(d.root_bag(), &nb);
            Ok(SubtreeOutcome::Tree(d))
        }
    }
}

/// Groups each run of non-kept rim vertices with the preceding kept vertex.
/// Returns the contraction classes and the kept vertices in rim order.
fn cycle_classes(
    rim: &[VertexId],
    keep: &BTreeSet<VertexId>,
) -> (Vec<(VertexId, BTreeSet<VertexId>)>, Vec<VertexId>) {
    let n = rim.len();
    let smallest = keep.iter().next().copied().unwrap();
    let start = rim.iter().position(|&v| v == smallest).unwrap();
    let mut classes: Vec<(VertexId, BTreeSet<VertexId>)> = Vec::new();
    let mut order: Vec<VertexId> = Vec::new();
    for d in 0..n {
        let v = rim[(start + d) % n];
        if keep.contains(&v) {
            classes.push((v, BTreeSet::from([v])));
            order.push(v);
        } else {
            classes.last_mut().expect("walk starts at a kept vertex").1.insert(v);
        }
    }
    let classes = classes.into_iter().filter(|(_, set)| set.len() > 1).collect();
    (classes, order)
}

/// Tail component: detour vertices before the first (or after the last)
/// M-attachment together with everything hanging off them. A neighborhood of
/// two hangs below the contracted open arc as an edge root. For larger
/// neighborhoods the preferred root is a rim that avoids the tail entirely,
/// walking the root cycle and splicing the anchor in through the rest of the
/// graph; such a rim turns an oversized neighborhood directly into a wheel
/// model. When no rim exists the root cycle is closed through the tail
/// itself, which only works while it stays short.
fn tail_recursion(
    g: &Graph,
    choice: &PathChoice,
    st: &IntervalStructure,
    comp: &BTreeSet<VertexId>,
    prefix: bool,
    k: u32,
) -> Result<SubtreeOutcome, Error> {
    let nb = g.neighborhood_of_set(comp);
    let anchor = if prefix { st.a_near } else { st.a_far };
    let mut allowed = choice.c_set();
    allowed.insert(anchor);
    assert!(nb.is_subset(&allowed), "a tail attaches only to the root and its anchor");
    assert!(nb.len() >= 2);

    if nb.len() > 2 {
        let rim =
            tail_rim(g, choice, comp, &nb, anchor).or_else(|| find_cycle_through(g, &nb, comp));
        if let Some(rim) = rim {
            if nb.len() >= k as usize {
                return Ok(SubtreeOutcome::Minor(wheel_model_from_hub(g, comp, &rim, k)));
            }
            return component_recursion(g, comp, &rim, k);
        }
    }
    if nb.len() > (k - 1) as usize {
        // too wide for any root cycle; a split still fits while the
        // neighborhood plus one separating vertex stays within a bag
        if nb.len() < wheel_bag_bound(k) {
            return scattered_split(g, comp, &nb, k);
        }
        return Err(Error::Uncovered(format!(
            "tail neighborhood has {} vertices, above the root limit {} for wheel order {k}, \
             and no rim around the tail exists",
            nb.len(),
            k - 1
        )));
    }

    let big = choice.big_cycle();
    let arc = path_avoiding(&big, comp);
    let arc_set: BTreeSet<VertexId> = arc.iter().copied().collect();
    assert!(nb.is_subset(&arc_set));
    assert!(keeps_ends(&arc, &nb), "arc ends are attachments");

    let mut keep: BTreeSet<VertexId> = comp.clone();
    keep.extend(nb.iter().copied());
    let mut host = g.induced(&keep);
    for &v in &arc {
        host.add_vertex(v);
    }
    for w in arc.windows(2) {
        host.add_edge(w[0], w[1]);
    }
    let (classes, order) = path_classes(&arc, &nb);
    let (shrunk, trace) = host.contract_classes(&classes, &ContractionTrace::identity(&host));
    assert_eq!(shrunk.vertex_set(), keep);
    assert!(shrunk.n() < g.n());

    let c_sub = if order.len() == 2 {
        CycleSpec::edge(order[0], order[1])?
    } else {
        // close the root through the tail; bounded length is required
        let mut forbidden: BTreeSet<VertexId> = g.vertex_set();
        for &v in comp {
            forbidden.remove(&v);
        }
        let (from, to) = (*order.last().unwrap(), order[0]);
        forbidden.remove(&from);
        forbidden.remove(&to);
        let closing = g
            .bfs_path(&BTreeSet::from([from]), &BTreeSet::from([to]), &forbidden)
            .expect("the tail connects its anchor to the root end");
        let mut seq = order.clone();
        seq.extend(closing[1..closing.len() - 1].iter().copied());
        if seq.len() > (k - 1) as usize {
            // the closing runs through the tail, so its vertices stay in the
            // host and the root outgrows the limit; split the tail instead
            return scattered_split(g, comp, &nb, k);
        }
        CycleSpec::cycle(seq)?
    };
    debug_assert!(c_sub.validate_in(&shrunk).is_ok());
    match solve(&shrunk, &c_sub, k)? {
        DecomposeOutcome::Minor(m) => {
            let lifted = lift_minor_model(&m, &trace);
            assert!(verify_minor_model(g, &lifted).is_accept());
            Ok(SubtreeOutcome::Minor(lifted))
        }
        DecomposeOutcome::Decomposition(d) => Ok(SubtreeOutcome::Tree(d)),
    }
}

/// A cycle through the whole tail neighborhood that avoids the tail: an arc
/// of the root cycle covering the root attachments, closed through the
/// anchor over two disjoint paths in the rest of the graph. Rim vertices
/// outside the neighborhood are contracted away by the recursion, so the
/// splices may run through any material except the tail itself.
fn tail_rim(
    g: &Graph,
    choice: &PathChoice,
    comp: &BTreeSet<VertexId>,
    nb: &BTreeSet<VertexId>,
    anchor: VertexId,
) -> Option<Vec<VertexId>> {
    let order = &choice.cycle_order;
    let c = order.len();
    let marked: Vec<usize> =
        (0..c).filter(|&i| nb.contains(&order[i])).collect();
    assert!(!marked.is_empty());

    for len in 1..c {
        for xi in 0..c {
            if marked.iter().any(|&p| (p + c - xi) % c > len) {
                continue;
            }
            let x = order[xi];
            let y = order[(xi + len) % c];
            let mut removed: BTreeSet<VertexId> = comp.clone();
            for d in 1..len {
                removed.insert(order[(xi + d) % c]);
            }
            removed.insert(anchor);
            let open = g.minus(&removed);
            let sources: BTreeSet<VertexId> =
                g.neighbors(anchor).filter(|v| open.has_vertex(*v)).collect();
            if sources.is_empty() {
                continue;
            }
            let targets = BTreeSet::from([x, y]);
            let ps = max_disjoint_paths(&open, &sources, &targets);
            if ps.count() < 2 {
                continue;
            }
            let to_x = ps.paths.iter().find(|p| *p.last().unwrap() == x).unwrap();
            let to_y = ps.paths.iter().find(|p| *p.last().unwrap() == y).unwrap();
            let mut rim = vec![anchor];
            rim.extend(to_x.iter().copied());
            for d in 1..len {
                rim.push(order[(xi + d) % c]);
            }
            rim.extend(to_y.iter().rev().copied());

            let rim_set: BTreeSet<VertexId> = rim.iter().copied().collect();
            assert_eq!(rim_set.len(), rim.len(), "the rim visits each vertex once");
            assert!(nb.is_subset(&rim_set));
            assert!(rim_set.is_disjoint(comp));
            for i in 0..rim.len() {
                assert!(g.has_edge(rim[i], rim[(i + 1) % rim.len()]), "rim steps are edges");
            }
            return Some(rim);
        }
    }
    None
}

/// A cycle through every vertex of `x` avoiding `avoid`, found by trying
/// cyclic orders of `x` and joining consecutive members with breadth-first
/// legs kept disjoint from everything chosen so far. Any returned cycle is
/// valid; None only means the greedy legs found nothing.
fn find_cycle_through(
    g: &Graph,
    x: &BTreeSet<VertexId>,
    avoid: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    let xs: Vec<VertexId> = x.iter().copied().collect();
    let t = xs.len();
    assert!(t >= 3);
    assert!(x.is_disjoint(avoid));
    if t > 8 {
        return None;
    }
    let mut orders: Vec<Vec<VertexId>> = Vec::new();
    let mut rest: Vec<VertexId> = xs[1..].to_vec();
    each_permutation(&mut rest, 0, &mut orders);

    'orders: for perm in &orders {
        // a cycle equals its reversal, so keep one direction of each order
        if perm[0] > *perm.last().unwrap() {
            continue;
        }
        let mut cyc = vec![xs[0]];
        cyc.extend(perm.iter().copied());
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        let mut rim: Vec<VertexId> = Vec::new();
        for i in 0..t {
            let a = cyc[i];
            let b = cyc[(i + 1) % t];
            let mut forb = avoid.clone();
            forb.extend(used.iter().copied());
            for &m in &xs {
                if m != a && m != b {
                    forb.insert(m);
                }
            }
            let leg = match g.bfs_path(&BTreeSet::from([a]), &BTreeSet::from([b]), &forb) {
                Some(p) => p,
                None => continue 'orders,
            };
            rim.extend(leg[..leg.len() - 1].iter().copied());
            used.extend(leg[1..leg.len() - 1].iter().copied());
        }
        let rim_set: BTreeSet<VertexId> = rim.iter().copied().collect();
        assert_eq!(rim_set.len(), rim.len(), "the cycle visits each vertex once");
        assert!(x.is_subset(&rim_set));
        assert!(rim_set.is_disjoint(avoid));
        for i in 0..rim.len() {
            assert!(g.has_edge(rim[i], rim[(i + 1) % rim.len()]));
        }
        return Some(rim);
    }
    None
}

fn each_permutation(items: &mut Vec<VertexId>, fixed: usize, out: &mut Vec<Vec<VertexId>>) {
    if fixed == items.len() {
        out.push(items.clone());
        return;
    }
    for i in fixed..items.len() {
        items.swap(fixed, i);
        each_permutation(items, fixed + 1, out);
        items.swap(fixed, i);
    }
}

/// Hangs one connected piece below its exact neighborhood. An interface of
/// two contracts an outside connecting path into a root edge; a larger one
/// wants a cycle through the interface avoiding the piece; failing both, the
/// piece splits further at a separating vertex.
fn hang_piece(g: &Graph, comp: &BTreeSet<VertexId>, k: u32) -> Result<SubtreeOutcome, Error> {
    let iface = g.neighborhood_of_set(comp);
    assert!(iface.len() >= 2);
    assert!(iface.len() <= (k - 1) as usize);
    if iface.len() == 2 {
        let mut it = iface.iter().copied();
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        if let Some(link) = g.bfs_path(&BTreeSet::from([u]), &BTreeSet::from([v]), comp) {
            return contracted_link_root(g, comp, &link, k);
        }
    } else if let Some(rim) = find_cycle_through(g, &iface, comp) {
        return component_recursion(g, comp, &rim, k);
    }
    scattered_split(g, comp, &iface, k)
}

/// Root-edge recursion for a piece between two interface vertices, with the
/// connecting path outside the piece contracted into the edge.
fn contracted_link_root(
    g: &Graph,
    comp: &BTreeSet<VertexId>,
    link: &[VertexId],
    k: u32,
) -> Result<SubtreeOutcome, Error> {
    let (u, v) = (link[0], *link.last().unwrap());
    let mut keep: BTreeSet<VertexId> = comp.clone();
    keep.insert(u);
    keep.insert(v);
    let mut host = g.induced(&keep);
    for &w in link {
        host.add_vertex(w);
    }
    for w in link.windows(2) {
        host.add_edge(w[0], w[1]);
    }
    let (classes, order) = path_classes(link, &BTreeSet::from([u, v]));
    let (shrunk, trace) = host.contract_classes(&classes, &ContractionTrace::identity(&host));
    assert_eq!(shrunk.vertex_set(), keep);
    assert!(shrunk.n() < g.n());
    let c_sub = CycleSpec::edge(order[0], order[1])?;
    debug_assert!(c_sub.validate_in(&shrunk).is_ok());
    match solve(&shrunk, &c_sub, k)? {
        DecomposeOutcome::Minor(m) => {
            let lifted = lift_minor_model(&m, &trace);
            assert!(verify_minor_model(g, &lifted).is_accept());
            Ok(SubtreeOutcome::Minor(lifted))
        }
        DecomposeOutcome::Decomposition(d) => Ok(SubtreeOutcome::Tree(d)),
    }
}

/// Splits a component that admits no single root cycle: one bag holds the
/// whole interface plus a vertex separating the covering graph, and each
/// side of the separation hangs below it as an independent piece. Interface
/// edges are left out of the covering graph since the bags above already
/// cover them.
fn scattered_split(
    g: &Graph,
    comp: &BTreeSet<VertexId>,
    iface: &BTreeSet<VertexId>,
    k: u32,
) -> Result<SubtreeOutcome, Error> {
    assert_eq!(*iface, g.neighborhood_of_set(comp));
    let bound = wheel_bag_bound(k);
    let mut hv: BTreeSet<VertexId> = comp.clone();
    hv.extend(iface.iter().copied());
    let mut h = Graph::with_vertices(hv.iter().copied());
    for (u, v) in g.induced(&hv).edges() {
        if !(iface.contains(&u) && iface.contains(&v)) {
            h.add_edge(u, v);
        }
    }
    assert!(h.is_connected(), "a component and its neighborhood hold together");

    let (_, cuts) = h.blocks_and_cutvertices();
    let mut last: Option<Error> = None;
    'cuts: for &w in &cuts {
        let sides = h.minus(&BTreeSet::from([w])).components();
        assert!(sides.len() >= 2);
        let mut pieces: Vec<(BTreeSet<VertexId>, BTreeSet<VertexId>)> = Vec::new();
        for side in &sides {
            let sub_comp: BTreeSet<VertexId> = side.intersection(comp).copied().collect();
            if sub_comp.is_empty() {
                // a neighborhood vertex clinging to w alone; the root bag
                // below covers its edge
                continue;
            }
            let sub_iface = g.neighborhood_of_set(&sub_comp);
            let mut allowed = iface.clone();
            allowed.insert(w);
            assert!(sub_iface.is_subset(&allowed), "separation keeps interfaces local");
            assert!(sub_iface.len() >= 2, "two-connected hosts leave no single-contact piece");
            if sub_iface.len() > (k - 1) as usize {
                continue 'cuts;
            }
            pieces.push((sub_comp, sub_iface));
        }
        let mut root_bag = iface.clone();
        root_bag.insert(w);
        assert!(root_bag.len() <= bound);
        let mut tree = RootedTreeDecomposition::single(root_bag);
        let mut failed: Option<Error> = None;
        for (sub_comp, sub_iface) in &pieces {
            match hang_piece(g, sub_comp, k) {
                Ok(SubtreeOutcome::Minor(m)) => return Ok(SubtreeOutcome::Minor(m)),
                Ok(SubtreeOutcome::Tree(d)) => {
                    assert!(sub_iface.is_subset(d.root_bag()));
                    assert!(d.root_bag().difference(sub_iface).all(|e| sub_comp.contains(e)));
                    tree.hang(0, &d);
                }
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        match failed {
            None => return Ok(SubtreeOutcome::Tree(tree)),
            Some(e @ Error::Uncovered(_)) => last = Some(e),
            Some(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        Error::Uncovered(format!(
            "a piece with {} interface vertices stays two-connected with no cycle around it",
            iface.len()
        ))
    }))
}

/// The arc of the cyclic sequence left after removing one contiguous run.
fn path_avoiding(cycle_seq: &[VertexId], avoid: &BTreeSet<VertexId>) -> Vec<VertexId> {
    let n = cycle_seq.len();
    let hit: Vec<bool> = cycle_seq.iter().map(|v| avoid.contains(v)).collect();
    let count = hit.iter().filter(|&&b| b).count();
    assert!(count > 0 && count < n);
    let start = (0..n)
        .find(|&i| !hit[i] && hit[(i + n - 1) % n])
        .expect("the avoided vertices form one contiguous run");
    let out: Vec<VertexId> = (0..n - count).map(|d| cycle_seq[(start + d) % n]).collect();
    assert!(out.iter().all(|v| !avoid.contains(v)));
    out
}

fn keeps_ends(arc: &[VertexId], keep: &BTreeSet<VertexId>) -> bool {
    keep.contains(&arc[0]) && keep.contains(arc.last().unwrap())
}

/// Groups each run of non-kept vertices of an open path with the preceding
/// kept vertex; both ends must be kept.
fn path_classes(
    arc: &[VertexId],
    keep: &BTreeSet<VertexId>,
) -> (Vec<(VertexId, BTreeSet<VertexId>)>, Vec<VertexId>) {
    let mut classes: Vec<(VertexId, BTreeSet<VertexId>)> = Vec::new();
    let mut order = Vec::new();
    for &v in arc {
        if keep.contains(&v) {
            classes.push((v, BTreeSet::from([v])));
            order.push(v);
        } else {
            classes.last_mut().expect("arc starts at a kept vertex").1.insert(v);
        }
    }
    let classes = classes.into_iter().filter(|(_, set)| set.len() > 1).collect();
    (classes, order)
}

/// Builds the central skeleton over root and A, recurses on every hanging
/// component, and attaches the results; or escapes into the one remaining
/// recursion when M already absorbs the whole witness cycle.
pub fn assemble_central(
    g: &Graph,
    choice: &PathChoice,
    st: &IntervalStructure,
    jumps: Option<&JumpTable>,
    k: u32,
) -> Result<DecomposeOutcome, Error> {
    let bound = wheel_bag_bound(k);
    let c_set = choice.c_set();
    let c_len = c_set.len();
    let mut central = c_set.clone();
    central.extend(st.a_set.iter().copied());
    let comps = g.minus(&central).components();
    assert!(comps.contains(&choice.m), "M is one whole hanging component");

    let big_set: BTreeSet<VertexId> = st.big_cycle.iter().copied().collect();
    let m_nbhd = g.neighborhood_of_set(&choice.m);
    if comps.len() == 1 && m_nbhd == big_set {
        // the whole graph is M plus the witness cycle; recurse with the
        // bigger root, which strictly reduces the non-root share
        assert!(st.big_cycle.len() <= (k - 1) as usize);
        assert!(st.big_cycle.len() > c_len);
        let c_big = CycleSpec::cycle(st.big_cycle.clone())?;
        return match solve(g, &c_big, k)? {
            DecomposeOutcome::Minor(m) => Ok(DecomposeOutcome::Minor(m)),
            DecomposeOutcome::Decomposition(mut d) => {
                d.prepend_root(c_set.clone());
                Ok(DecomposeOutcome::Decomposition(d))
            }
        };
    }

    let skeleton = build_skeleton(g, choice, st, jumps, k)?;
    let mut tree = skeleton.tree;

    let mut attach_exact: Vec<(RootedTreeDecomposition, usize)> = Vec::new();
    for comp in &comps {
        let nb = g.neighborhood_of_set(comp);
        let kind = classify_component(choice, st, comp);
        let sub = match kind {
            CompKind::MainM => {
                assert!((nb.len() as u32) < k, "the hub check ran in the structure pass");
                component_recursion(g, comp, &st.big_cycle, k)?
            }
            CompKind::Interval(idx) => decompose_interval(g, choice, st, idx, k)?,
            CompKind::Tail { prefix } => tail_recursion(g, choice, st, comp, prefix, k)?,
            CompKind::Generic => {
                if nb.len() >= k as usize {
                    let model = wheel_model_from_hub(g, comp, &st.big_cycle, k);
                    return Ok(DecomposeOutcome::Minor(model));
                }
                component_recursion(g, comp, &st.big_cycle, k)?
            }
        };
        let subtree = match sub {
            SubtreeOutcome::Minor(m) => return Ok(DecomposeOutcome::Minor(m)),
            SubtreeOutcome::Tree(t) => t,
        };
        let node = (skeleton.pick)(g, choice, st, &nb);
        assert!(
            nb.is_subset(tree.bag(node)),
            "the chosen skeleton bag carries the attachment"
        );
        if subtree.root_bag() == &nb {
            let leaf = tree.add_child(node, nb.clone());
            attach_exact.push((subtree, leaf));
        } else {
            // root cycle closed through the component: its extra root
            // vertices live only inside this subtree, so hanging it under
            // any bag containing the shared neighborhood stays valid
            assert!(nb.is_subset(subtree.root_bag()));
            let extra: BTreeSet<VertexId> = subtree.root_bag().difference(&nb).copied().collect();
            assert!(extra.is_subset(comp));
            tree.hang(node, &subtree);
        }
    }
    let mut combined = attach(&tree, &attach_exact)?;
    if combined.root_bag() != &c_set {
        assert!(c_set.is_subset(combined.root_bag()));
        combined.prepend_root(c_set.clone());
    }
    let verdict = verify_tree_decomposition(g, &combined, Some(&c_set), Some(bound));
    assert!(verdict.is_accept(), "assembled decomposition must verify: {verdict:?}");
    Ok(DecomposeOutcome::Decomposition(combined))
}

/// Chooses the skeleton node a component's subtree hangs below.
type AttachPick = Box<dyn Fn(&Graph, &PathChoice, &IntervalStructure, &BTreeSet<VertexId>) -> usize>;

struct Skeleton {
    tree: RootedTreeDecomposition,
    pick: AttachPick,
}

fn build_skeleton(
    g: &Graph,
    choice: &PathChoice,
    st: &IntervalStructure,
    jumps: Option<&JumpTable>,
    k: u32,
) -> Result<Skeleton, Error> {
    let bound = wheel_bag_bound(k);
    let c_set = choice.c_set();
    let c_len = c_set.len();
    let mut central = c_set.clone();
    central.extend(st.a_set.iter().copied());

    if st.a_set.len() == 1 {
        assert!(central.len() <= k as usize);
        let mut tree = RootedTreeDecomposition::single(c_set.clone());
        let big = tree.add_child(0, central);
        return Ok(Skeleton { tree, pick: Box::new(move |_, _, _, _| big) });
    }

    let table = jumps.expect("multi-anchor skeletons need the jump table");
    let m_nbhd = g.neighborhood_of_set(&choice.m);
    let anchors = BTreeSet::from([st.a_near, st.a_far]);

    for &r in &table.bad {
        for r2 in c_neighbors(&choice.cycle_order, r) {
            assert!(table.targets[&r2].is_empty(), "the jump rules removed adjacent pairs");
        }
    }
    let bad_outside = table.bad.iter().filter(|r| !m_nbhd.contains(r)).count();
    let cap = if k >= 5 { ((k - 4) / 2) as usize } else { 0 };
    assert!(bad_outside <= cap, "the bad-vertex count stays within the assembly budget");

    let heavy: BTreeSet<VertexId> = c_set
        .iter()
        .copied()
        .filter(|r| table.bad.contains(r) || m_nbhd.contains(r))
        .collect();
    let mut t2_bag = c_set.clone();
    t2_bag.extend(anchors.iter().copied());
    let mut t3_bag = heavy.clone();
    t3_bag.extend(anchors.iter().copied());
    let mut t4_bag = heavy.clone();
    t4_bag.extend(st.a_set.iter().copied());

    let standard = k >= 8 || c_len <= (k - 2) as usize;
    let (t1_bag, t2_bag, special) = if standard {
        (c_set.clone(), t2_bag, None)
    } else {
        let trigger = c_set
            .iter()
            .copied()
            .filter(|v| !m_nbhd.contains(v))
            .find_map(|v| {
                let s_v = &table.targets[&v];
                if s_v.len() == 1 && anchors.contains(s_v.iter().next().unwrap()) {
                    Some((v, *s_v.iter().next().unwrap()))
                } else {
                    None
                }
            });
        let Some((v, a2)) = trigger else {
            return Err(Error::Uncovered(format!(
                "no singleton-anchor vertex off M for wheel order {k} with a full root"
            )));
        };
        let mut t1 = c_set.clone();
        t1.insert(a2);
        let mut t2 = c_set.clone();
        t2.extend(anchors.iter().copied());
        t2.remove(&v);
        (t1, t2, Some((v, a2)))
    };

    assert!(t1_bag.len() <= bound && t2_bag.len() <= bound);
    assert!(t3_bag.len() <= bound && t4_bag.len() <= bound);

    let mut tree = RootedTreeDecomposition::single(t1_bag);
    let t2 = tree.add_child(0, t2_bag);
    let t3 = tree.add_child(t2, t3_bag);
    let t4 = tree.add_child(t3, t4_bag);
    if tree.root_bag() != &c_set {
        tree.prepend_root(c_set.clone());
    }
    let central_graph = g.induced(&central);
    let verdict = verify_tree_decomposition(&central_graph, &tree, Some(&c_set), Some(bound));
    assert!(verdict.is_accept(), "skeleton must decompose the central graph: {verdict:?}");

    // nodes were appended in order t1=0, t2, t3, t4; prepending a root above
    // them leaves those indices valid
    let t1 = 0usize;
    let pick_anchors = anchors.clone();
    let pick_c = c_set.clone();
    let pick = Box::new(
        move |_: &Graph, _: &PathChoice, _: &IntervalStructure, nb: &BTreeSet<VertexId>| {
            if let Some((v, _)) = special {
                if nb.contains(&v) {
                    return t1;
                }
            }
            let a_part: BTreeSet<VertexId> =
                nb.iter().copied().filter(|x| !pick_c.contains(x)).collect();
            if a_part.is_subset(&pick_anchors) {
                t2
            } else {
                t4
            }
        },
    );
    Ok(Skeleton { tree, pick })
}
