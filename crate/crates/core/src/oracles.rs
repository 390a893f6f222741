//! Brute-force ground truth at desk scale: exact tree-width with a witness
//! decomposition, exact minor containment with a witness model, exhaustive
//! connected-graph enumeration up to isomorphism, and seeded random graphs.
//!
//! Tree-width is computed twice, by subset dynamic programming and by
//! branch-and-bound over elimination orders with explicit fill-in; on small
//! inputs both always run and a disagreement panics.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::certificates::{verify_minor_model, verify_tree_decomposition, MinorModel, RootedTreeDecomposition};
use crate::graph::{Graph, VertexId};
use crate::Error;

/// Default cap for exact tree-width inputs; configurable upward to the hard cap.
pub const TREEWIDTH_DEFAULT_LIMIT: usize = 16;
pub const TREEWIDTH_HARD_LIMIT: usize = 20;
/// Inputs this small always run both tree-width methods and compare.
const CROSS_CHECK_LIMIT: usize = 10;

/// Default cap for exact minor-test host graphs; configurable upward to the hard cap.
pub const MINOR_HOST_DEFAULT_LIMIT: usize = 12;
pub const MINOR_HOST_HARD_LIMIT: usize = 16;
/// Patterns beyond this size are refused outright.
pub const MINOR_PATTERN_LIMIT: usize = 8;

pub const ENUMERATION_LIMIT: usize = 8;

/// Sorted vertex list and bitmask adjacency rows over positions in it.
fn dense_adjacency(g: &Graph) -> (Vec<VertexId>, Vec<u32>) {
    let order: Vec<VertexId> = g.vertices().collect();
    assert!(order.len() <= 32);
    let index = |v: VertexId| order.binary_search(&v).unwrap();
    let mut adj = vec![0u32; order.len()];
    for (u, v) in g.edges() {
        let (i, j) = (index(u), index(v));
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    (order, adj)
}

/// Number of vertices outside s ∪ {v} reachable from v along paths whose
/// interior lies inside s. Equals v's fill-in degree once s is eliminated.
fn dissolve_cost(adj: &[u32], s: u32, v: usize) -> u32 {
    debug_assert_eq!(s & (1 << v), 0);
    let mut seen = 1u32 << v;
    let mut frontier = adj[v];
    let mut outside = 0u32;
    loop {
        let new = frontier & !seen;
        if new == 0 {
            break;
        }
        seen |= new;
        outside |= new & !s;
        let mut expand = new & s;
        frontier = 0;
        while expand != 0 {
            let i = expand.trailing_zeros() as usize;
            expand &= expand - 1;
            frontier |= adj[i];
        }
    }
    outside.count_ones()
}

/// Subset DP: best_width[s] = cheapest max fill-degree over orders that
/// eliminate exactly the set s, choosing the last-eliminated vertex.
fn treewidth_dp(adj: &[u32]) -> (i64, Vec<VertexId>) {
    let n = adj.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best = vec![i64::MAX; (full as usize) + 1];
    let mut last = vec![u8::MAX; (full as usize) + 1];
    best[0] = -1;
    for s in 1..=full {
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let cost = best[rest as usize].max(dissolve_cost(adj, rest, v) as i64);
            if cost < best[s as usize] {
                best[s as usize] = cost;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order_rev.push(v as VertexId);
        s &= !(1 << v);
    }
    order_rev.reverse();
    (best[full as usize], order_rev)
}

/// Branch-and-bound over elimination orders on an explicit fill graph,
/// seeded with a minimum-degree greedy bound.
fn treewidth_branch_bound(adj: &[u32]) -> i64 {
    let n = adj.len();
    if n == 0 {
        return -1;
    }
    let full: u32 = (1 << n) - 1;

    fn eliminate(fill: &mut [u32], alive: &mut u32, v: usize) -> u32 {
        let nbrs = fill[v] & *alive & !(1 << v);
        let mut m = nbrs;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            fill[u] |= nbrs & !(1 << u);
        }
        *alive &= !(1 << v);
        nbrs.count_ones()
    }

    // greedy: always take a currently-cheapest vertex
    let mut fill = adj.to_vec();
    let mut alive = full;
    let mut greedy = -1i64;
    while alive != 0 {
        let mut pick = usize::MAX;
        let mut pick_deg = u32::MAX;
        let mut m = alive;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (fill[v] & alive & !(1 << v)).count_ones();
            if d < pick_deg {
                pick_deg = d;
                pick = v;
            }
        }
        let cost = eliminate(&mut fill, &mut alive, pick);
        greedy = greedy.max(cost as i64);
    }

    struct Search {
        n: usize,
        full: u32,
        best: i64,
        seen_at: Vec<i64>,
    }
    impl Search {
        fn dfs(&mut self, fill: &[u32], alive: u32, cur: i64) {
            if cur >= self.best {
                return;
            }
            if alive == 0 {
                self.best = cur;
                return;
            }
            let mask_idx = alive as usize;
            if self.seen_at[mask_idx] <= cur {
                return;
            }
            self.seen_at[mask_idx] = cur;
            for v in 0..self.n {
                if alive & (1 << v) == 0 {
                    continue;
                }
                let mut next_fill = fill.to_vec();
                let mut next_alive = alive;
                let cost = eliminate(&mut next_fill, &mut next_alive, v);
                self.dfs(&next_fill, next_alive, cur.max(cost as i64));
            }
        }
    }
    let mut search = Search { n, full, best: greedy, seen_at: vec![i64::MAX; (full as usize) + 1] };
    let _ = search.full;
    search.dfs(adj, full, -1);
    search.best
}

/// Tree-decomposition read off an elimination order by fill-in simulation:
/// the bag of v is v plus its neighborhood at elimination time; its parent is
/// the bag of the earliest-eliminated of those neighbors.
fn witness_from_order(g: &Graph, order: &[VertexId]) -> RootedTreeDecomposition {
    let n = order.len();
    assert!(n > 0);
    let pos: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut h = g.clone();
    let mut bags: Vec<BTreeSet<VertexId>> = Vec::with_capacity(n);
    for &v in order {
        let nbrs: BTreeSet<VertexId> = h.neighbors(v).collect();
        let mut bag = nbrs.clone();
        bag.insert(v);
        bags.push(bag);
        for &a in &nbrs {
            for &b in &nbrs {
                if a < b {
                    h.add_edge(a, b);
                }
            }
        }
        h.remove_vertex(v);
    }
    let mut d = RootedTreeDecomposition::single(bags[n - 1].clone());
    // build top-down: node index in d for elimination step i
    let mut node_of = vec![usize::MAX; n];
    node_of[n - 1] = 0;
    for i in (0..n - 1).rev() {
        let p_step = bags[i]
            .iter()
            .filter(|&&u| u != order[i])
            .map(|&u| pos[&u])
            .min()
            .unwrap_or(i + 1);
        debug_assert!(p_step > i);
        let parent_node = node_of[p_step];
        debug_assert_ne!(parent_node, usize::MAX);
        node_of[i] = d.add_child(parent_node, bags[i].clone());
    }
    d
}

/// Exact tree-width of g with a witness decomposition of that width. The
/// empty graph has width -1, witnessed by a single empty bag.
pub fn exact_treewidth(g: &Graph, max_n: usize) -> Result<(i64, RootedTreeDecomposition), Error> {
    let cap = max_n.min(TREEWIDTH_HARD_LIMIT);
    if g.n() > cap {
        return Err(Error::Limit(format!(
            "exact tree-width needs |V| <= {cap}, got {}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok((-1, RootedTreeDecomposition::single(BTreeSet::new())));
    }
    let (order_map, adj) = dense_adjacency(g);
    let (width, dense_order) = treewidth_dp(&adj);
    if g.n() <= CROSS_CHECK_LIMIT {
        let second = treewidth_branch_bound(&adj);
        assert_eq!(width, second, "tree-width methods disagree on {g:?}");
    }
    let order: Vec<VertexId> = dense_order.iter().map(|&i| order_map[i as usize]).collect();
    let witness = witness_from_order(g, &order);
    assert_eq!(witness.width().unwrap(), width, "witness width off");
    assert!(
        verify_tree_decomposition(g, &witness, None, None).is_accept(),
        "witness decomposition invalid"
    );
    Ok((width, witness))
}

/// Both exact methods on one graph: the subset dynamic program and the
/// branch-and-bound search. Exposed so consistency checks can compare the
/// answers directly rather than trusting a single implementation.
pub fn treewidth_both_methods(g: &Graph, max_n: usize) -> Result<(i64, i64), Error> {
    let cap = max_n.min(TREEWIDTH_HARD_LIMIT);
    if g.n() > cap {
        return Err(Error::Limit(format!(
            "exact tree-width needs |V| <= {cap}, got {}",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok((-1, -1));
    }
    let (_, adj) = dense_adjacency(g);
    Ok((treewidth_dp(&adj).0, treewidth_branch_bound(&adj)))
}

struct MinorSearch {
    host_adj: Vec<u32>,
    host_n: usize,
    pattern_edges: Vec<(usize, usize)>,
    k: usize,
}

impl MinorSearch {
    /// Assign host vertex i to a branch or to the discard pile; undecided
    /// vertices are exactly those with index >= i.
    fn dfs(&self, i: usize, branches: &mut [u32]) -> bool {
        let undecided: u32 = if i >= 32 { 0 } else { (!0u32 << i) & ((1u32 << self.host_n) - 1) };
        let mut empties = 0;
        for &b in branches.iter() {
            if b == 0 {
                empties += 1;
                continue;
            }
            // all assigned vertices of the branch must be joinable inside
            // branch ∪ undecided
            let allowed = b | undecided;
            let start = b.trailing_zeros() as usize;
            let mut seen = 1u32 << start;
            loop {
                let mut grow = 0u32;
                let mut m = seen;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    grow |= self.host_adj[v] & allowed;
                }
                let next = seen | grow;
                if next == seen {
                    break;
                }
                seen = next;
            }
            if b & !seen != 0 {
                return false;
            }
        }
        if empties > self.host_n - i {
            return false;
        }
        for &(a, b) in &self.pattern_edges {
            let ba = branches[a];
            let bb = branches[b];
            let realized = {
                let mut m = ba;
                let mut hit = false;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if self.host_adj[v] & bb != 0 {
                        hit = true;
                        break;
                    }
                }
                hit
            };
            if realized {
                continue;
            }
            let ca = ba | undecided;
            let cb = bb | undecided;
            let mut possible = false;
            let mut m = ca;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.host_adj[v] & cb != 0 {
                    possible = true;
                    break;
                }
            }
            if !possible {
                return false;
            }
        }
        if i == self.host_n {
            return true;
        }
        for j in 0..self.k {
            branches[j] |= 1 << i;
            if self.dfs(i + 1, branches) {
                return true;
            }
            branches[j] &= !(1u32 << i);
        }
        self.dfs(i + 1, branches)
    }
}

/// Exhaustive minor containment: a verified model of h inside g, or None.
pub fn exact_minor_test(g: &Graph, h: &Graph, max_host_n: usize) -> Result<Option<MinorModel>, Error> {
    if h.n() > MINOR_PATTERN_LIMIT {
        return Err(Error::Limit(format!(
            "minor patterns capped at {MINOR_PATTERN_LIMIT} vertices, got {}",
            h.n()
        )));
    }
    let cap = max_host_n.min(MINOR_HOST_HARD_LIMIT);
    if g.n() > cap {
        return Err(Error::Limit(format!(
            "minor hosts capped at {cap} vertices, got {}",
            g.n()
        )));
    }
    if h.n() == 0 {
        return Ok(Some(MinorModel::new(h.clone(), BTreeMap::new())));
    }
    if h.n() > g.n() {
        return Ok(None);
    }
    let (host_order, host_adj) = dense_adjacency(g);
    let pattern_order: Vec<VertexId> = h.vertices().collect();
    let p_index = |v: VertexId| pattern_order.binary_search(&v).unwrap();
    let pattern_edges: Vec<(usize, usize)> =
        h.edges().iter().map(|&(u, v)| (p_index(u), p_index(v))).collect();
    let search = MinorSearch { host_adj, host_n: g.n(), pattern_edges, k: h.n() };
    let mut branches = vec![0u32; h.n()];
    if !search.dfs(0, &mut branches) {
        return Ok(None);
    }
    let branch: BTreeMap<VertexId, BTreeSet<VertexId>> = pattern_order
        .iter()
        .enumerate()
        .map(|(j, &pv)| {
            let set: BTreeSet<VertexId> = (0..g.n())
                .filter(|&i| branches[j] >> i & 1 == 1)
                .map(|i| host_order[i])
                .collect();
            (pv, set)
        })
        .collect();
    let model = MinorModel::new(h.clone(), branch);
    assert!(
        verify_minor_model(g, &model).is_accept(),
        "minor search produced an invalid model"
    );
    Ok(Some(model))
}

/// Packed upper-triangle adjacency bits, minimized over all relabelings that
/// respect the ordering of a cheap isomorphism invariant. The invariant is
/// preserved by every isomorphism, so the minimum is a canonical form.
fn canonical_form(g: &Graph) -> u64 {
    let (order, adj) = dense_adjacency(g);
    let n = order.len();
    assert!(n <= ENUMERATION_LIMIT);
    let mut invariant: Vec<(usize, Vec<usize>, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        let deg = adj[i].count_ones() as usize;
        let mut nbr_degs: Vec<usize> = (0..n)
            .filter(|&j| adj[i] >> j & 1 == 1)
            .map(|j| adj[j].count_ones() as usize)
            .collect();
        nbr_degs.sort_unstable();
        invariant.push((deg, nbr_degs, i));
    }
    let mut by_class = invariant.clone();
    by_class.sort();
    // classes[c] = vertices sharing the c-th invariant value, in index order
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for item in &by_class {
        let key = (&item.0, &item.1);
        match classes.last() {
            Some(last) => {
                let rep = last[0];
                if (&invariant[rep].0, &invariant[rep].1) == key {
                    classes.last_mut().unwrap().push(item.2);
                } else {
                    classes.push(vec![item.2]);
                }
            }
            None => classes.push(vec![item.2]),
        }
    }

    fn pack(adj: &[u32], perm: &[usize]) -> u64 {
        // perm[p] = original vertex placed at position p
        let n = perm.len();
        let mut bits = 0u64;
        let mut bit = 0;
        for p in 0..n {
            for q in p + 1..n {
                if adj[perm[p]] >> perm[q] & 1 == 1 {
                    bits |= 1 << bit;
                }
                bit += 1;
            }
        }
        bits
    }

    let mut best = u64::MAX;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    fn go(
        classes: &[Vec<usize>],
        c: usize,
        remaining: &mut Vec<usize>,
        perm: &mut Vec<usize>,
        adj: &[u32],
        best: &mut u64,
    ) {
        if c == classes.len() {
            *best = (*best).min(pack(adj, perm));
            return;
        }
        if remaining.is_empty() {
            let mut rem: Vec<usize> = classes[c].clone();
            go(classes, c, &mut rem, perm, adj, best);
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            perm.push(v);
            if remaining.is_empty() {
                go(classes, c + 1, &mut Vec::new(), perm, adj, best);
            } else {
                go(classes, c, remaining, perm, adj, best);
            }
            perm.pop();
            remaining.insert(i, v);
        }
    }
    go(&classes, 0, &mut Vec::new(), &mut perm, &adj, &mut best);
    best
}

/// One representative per isomorphism class of connected graphs on n
/// vertices (labeled 0..n-1), in a deterministic order.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, Error> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::Limit(format!(
            "connected-graph enumeration capped at {ENUMERATION_LIMIT} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut reps: Vec<Graph> = vec![Graph::with_vertices([0])];
    for size in 2..=n {
        let new_v = (size - 1) as VertexId;
        let mut seen: BTreeMap<u64, Graph> = BTreeMap::new();
        // every connected graph has a vertex whose removal stays connected,
        // so extending each smaller representative by one vertex attached to
        // every nonempty neighborhood reaches every class
        for base in &reps {
            for mask in 1u32..(1 << (size - 1)) {
                let mut g = base.clone();
                g.add_vertex(new_v);
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u as VertexId, new_v);
                    }
                }
                seen.entry(canonical_form(&g)).or_insert(g);
            }
        }
        reps = seen.into_values().collect();
    }
    Ok(reps)
}

/// G(n, p) with a fixed stream: vertex pairs in lexicographic order, one
/// draw each. Identical seeds replay identical graphs.
pub fn random_gnp(n: u32, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability out of range");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Stock graphs used across tests and the fuzz harness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum NamedGraph {
    Clique(u32),
    Cycle(u32),
    Path(u32),
    Grid(u32, u32),
    Wheel(u32),
    Star(u32),
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph, Error> {
        match *self {
            NamedGraph::Clique(n) => {
                let mut g = Graph::with_vertices(0..n);
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            NamedGraph::Cycle(n) => {
                if n < 3 {
                    return Err(Error::input("cycles need at least 3 vertices"));
                }
                let mut g = Graph::new();
                for v in 0..n {
                    g.add_edge(v, (v + 1) % n);
                }
                Ok(g)
            }
            NamedGraph::Path(n) => {
                let mut g = Graph::with_vertices(0..n);
                for v in 1..n {
                    g.add_edge(v - 1, v);
                }
                Ok(g)
            }
            NamedGraph::Grid(r, c) => {
                let mut g = Graph::with_vertices(0..r * c);
                let id = |i: u32, j: u32| i * c + j;
                for i in 0..r {
                    for j in 0..c {
                        if j + 1 < c {
                            g.add_edge(id(i, j), id(i, j + 1));
                        }
                        if i + 1 < r {
                            g.add_edge(id(i, j), id(i + 1, j));
                        }
                    }
                }
                Ok(g)
            }
            NamedGraph::Wheel(k) => {
                if k < 3 {
                    return Err(Error::input("wheels need at least 3 rim vertices"));
                }
                let mut g = Graph::new();
                for v in 0..k {
                    g.add_edge(v, (v + 1) % k);
                    g.add_edge(v, k);
                }
                Ok(g)
            }
            NamedGraph::Star(leaves) => {
                let mut g = Graph::with_vertices(0..=leaves);
                for v in 1..=leaves {
                    g.add_edge(0, v);
                }
                Ok(g)
            }
        }
    }
}

/// Instance generators for sweeps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GraphFamily {
    ExhaustiveConnected { n: usize },
    Gnp { n: u32, p: f64, seed: u64 },
    Named(NamedGraph),
}

impl GraphFamily {
    pub fn graphs(&self) -> Result<Vec<Graph>, Error> {
        match self {
            GraphFamily::ExhaustiveConnected { n } => enumerate_connected_graphs(*n),
            GraphFamily::Gnp { n, p, seed } => Ok(vec![random_gnp(*n, *p, *seed)]),
            GraphFamily::Named(named) => Ok(vec![named.build()?]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut g = Graph::new();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[test]
    fn treewidth_cliques() {
        for n in 1..=6 {
            let g = NamedGraph::Clique(n).build().unwrap();
            let (w, d) = exact_treewidth(&g, TREEWIDTH_DEFAULT_LIMIT).unwrap();
            assert_eq!(w, n as i64 - 1);
            assert!(verify_tree_decomposition(&g, &d, None, Some(n as usize)).is_accept());
        }
    }

    #[test]
    fn treewidth_cycles_and_paths() {
        for n in 3..=7 {
            let c = NamedGraph::Cycle(n).build().unwrap();
            assert_eq!(exact_treewidth(&c, 16).unwrap().0, 2);
            let p = NamedGraph::Path(n).build().unwrap();
            assert_eq!(exact_treewidth(&p, 16).unwrap().0, 1);
        }
    }

    #[test]
    fn treewidth_grid_and_petersen() {
        let grid = NamedGraph::Grid(3, 3).build().unwrap();
        assert_eq!(exact_treewidth(&grid, 16).unwrap().0, 3);
        assert_eq!(exact_treewidth(&petersen(), 16).unwrap().0, 4);
    }

    #[test]
    fn treewidth_edge_cases() {
        let empty = Graph::new();
        let (w, d) = exact_treewidth(&empty, 16).unwrap();
        assert_eq!(w, -1);
        assert_eq!(d.node_count(), 1);

        let mut scattered = Graph::with_vertices([3, 9]);
        scattered.add_vertex(40);
        assert_eq!(exact_treewidth(&scattered, 16).unwrap().0, 0);

        let big = NamedGraph::Clique(17).build().unwrap();
        assert!(matches!(exact_treewidth(&big, 16), Err(Error::Limit(_))));
    }

    #[test]
    fn minor_triangle_in_cyclic_graphs() {
        let k3 = NamedGraph::Clique(3).build().unwrap();
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let m = exact_minor_test(&c5, &k3, 12).unwrap().expect("cycle holds a triangle minor");
        assert!(verify_minor_model(&c5, &m).is_accept());
        let p4 = NamedGraph::Path(4).build().unwrap();
        assert!(exact_minor_test(&p4, &k3, 12).unwrap().is_none());
    }

    #[test]
    fn minor_k4_absent_from_trees() {
        let k4 = NamedGraph::Clique(4).build().unwrap();
        let star = NamedGraph::Star(5).build().unwrap();
        assert!(exact_minor_test(&star, &k4, 12).unwrap().is_none());
        let path = NamedGraph::Path(8).build().unwrap();
        assert!(exact_minor_test(&path, &k4, 12).unwrap().is_none());
    }

    #[test]
    fn minor_subdivided_wheel() {
        // 4-wheel with every rim edge subdivided: rim 0..4, hub 4, midpoints 5..9
        let mut g = Graph::new();
        for i in 0..4u32 {
            let mid = 5 + i;
            g.add_edge(i, mid);
            g.add_edge(mid, (i + 1) % 4);
            g.add_edge(i, 4);
        }
        let w4 = NamedGraph::Wheel(4).build().unwrap();
        let m = exact_minor_test(&g, &w4, 12).unwrap().expect("subdivision keeps the minor");
        assert!(verify_minor_model(&g, &m).is_accept());
    }

    #[test]
    fn minor_test_is_isomorphism_invariant() {
        let k4 = NamedGraph::Clique(4).build().unwrap();
        let base = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2), (3, 5)]);
        let relabeled = {
            // reverse the labels
            let mut g = Graph::new();
            for v in base.vertices() {
                g.add_vertex(5 - v);
            }
            for (u, v) in base.edges() {
                g.add_edge(5 - u, 5 - v);
            }
            g
        };
        let a = exact_minor_test(&base, &k4, 12).unwrap().is_some();
        let b = exact_minor_test(&relabeled, &k4, 12).unwrap().is_some();
        assert_eq!(a, b);
    }

    #[test]
    fn minor_limits_enforced() {
        let big_pattern = NamedGraph::Clique(9).build().unwrap();
        let host = NamedGraph::Clique(10).build().unwrap();
        assert!(matches!(exact_minor_test(&host, &big_pattern, 12), Err(Error::Limit(_))));
        let big_host = NamedGraph::Clique(13).build().unwrap();
        let k3 = NamedGraph::Clique(3).build().unwrap();
        assert!(matches!(exact_minor_test(&big_host, &k3, 12), Err(Error::Limit(_))));
    }

    #[test]
    fn enumeration_counts() {
        let known = [1usize, 1, 2, 6, 21, 112];
        for (i, &count) in known.iter().enumerate() {
            let n = i + 1;
            let reps = enumerate_connected_graphs(n).unwrap();
            assert_eq!(reps.len(), count, "n = {n}");
            for g in &reps {
                assert_eq!(g.n(), n);
                assert!(g.is_connected());
            }
        }
        assert!(matches!(enumerate_connected_graphs(9), Err(Error::Limit(_))));
    }

    #[test]
    fn enumeration_matches_independent_labeled_count() {
        // all labeled graphs on 4 vertices, grouped by exhaustive isomorphism
        let pairs = [(0u32, 1u32), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let perms: Vec<Vec<u32>> = {
            let mut out = Vec::new();
            let mut items: Vec<u32> = (0..4).collect();
            fn heap(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
                if k == 1 {
                    out.push(items.clone());
                    return;
                }
                for i in 0..k {
                    heap(items, k - 1, out);
                    if k.is_multiple_of(2) {
                        items.swap(i, k - 1);
                    } else {
                        items.swap(0, k - 1);
                    }
                }
            }
            heap(&mut items, 4, &mut out);
            out
        };
        let mut classes: Vec<Graph> = Vec::new();
        'mask: for mask in 0u32..64 {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, &edges);
            if !g.is_connected() {
                continue;
            }
            for rep in &classes {
                if rep.edge_count() != g.edge_count() {
                    continue;
                }
                for perm in &perms {
                    let mapped: Vec<(u32, u32)> =
                        g.edges().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect();
                    let mut h = Graph::with_vertices(0..4);
                    for (u, v) in mapped {
                        h.add_edge(u, v);
                    }
                    if &h == rep {
                        continue 'mask;
                    }
                }
            }
            classes.push(g);
        }
        assert_eq!(classes.len(), 6);
        assert_eq!(enumerate_connected_graphs(4).unwrap().len(), classes.len());
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        let empty = random_gnp(6, 0.0, 1);
        assert_eq!(empty.edge_count(), 0);
        let full = random_gnp(6, 1.0, 1);
        assert_eq!(full.edge_count(), 15);
        let a = random_gnp(9, 0.37, 123456);
        let b = random_gnp(9, 0.37, 123456);
        assert_eq!(a, b);
        let c = random_gnp(9, 0.37, 123457);
        assert_ne!(a, c);
    }

    #[test]
    fn named_graphs_shapes() {
        assert_eq!(NamedGraph::Grid(3, 3).build().unwrap().edge_count(), 12);
        assert_eq!(NamedGraph::Wheel(5).build().unwrap().edge_count(), 10);
        assert_eq!(NamedGraph::Star(4).build().unwrap().edge_count(), 4);
        assert!(NamedGraph::Cycle(2).build().is_err());
    }
}
