//! Simple labeled graphs on vertices 0..n with set-based adjacency, the named
//! constructors used throughout (complete, cycle, join, split graph, the
//! factor-criterion sharpness family), and cut/neighborhood queries.
//!
//! Vertices are 0-based here; file formats and error messages shown to users
//! are 1-based.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::seq::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Loop or out-of-range endpoint.
    InvalidEdge { u: usize, v: usize, reason: &'static str },
    /// Cut query with an empty or full side.
    InvalidCut(String),
    /// A named constructor got parameters admitting no such graph.
    InvalidParams(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidEdge { u, v, reason } => {
                write!(f, "invalid edge ({}, {}): {}", u + 1, v + 1, reason)
            }
            GraphError::InvalidCut(msg) => write!(f, "invalid cut: {msg}"),
            GraphError::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected simple graph: symmetric adjacency sets, no loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

/// One side of a cut together with the crossing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub side_a: BTreeSet<usize>,
    pub crossing_edges: BTreeSet<(usize, usize)>,
    pub size: usize,
}

/// Result of building a graph from an edge list; duplicates collapse but are
/// counted so callers can warn.
#[derive(Debug, Clone)]
pub struct EdgeListGraph {
    pub graph: Graph,
    pub duplicates: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: alloc::vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<EdgeListGraph, GraphError> {
        let mut g = Graph::empty(n);
        let mut duplicates = 0;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::InvalidEdge { u, v, reason: "endpoint out of range" });
            }
            if u == v {
                return Err(GraphError::InvalidEdge { u, v, reason: "loop" });
            }
            if !g.add_edge(u, v) {
                duplicates += 1;
            }
        }
        Ok(EdgeListGraph { graph: g, duplicates })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds an edge; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n() && v < self.n());
        let new = self.adj[u].insert(v);
        self.adj[v].insert(u);
        new
    }

    /// Removes an edge; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// Vertices not adjacent to v, excluding v itself: the complement
    /// neighborhood.
    pub fn non_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&u| u != v && !self.has_edge(u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// All edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().into_iter().collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degs: Vec<usize> = self.adj.iter().map(|s| s.len()).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::from_sorted(degs)
    }

    /// True when vertex labels already satisfy deg(v_0) >= deg(v_1) >= ...
    pub fn is_degree_sorted(&self) -> bool {
        (1..self.n()).all(|i| self.degree(i - 1) >= self.degree(i))
    }

    /// Relabels vertices so degrees are non-increasing (stable on ties).
    /// Returns the new graph and `perm` with `perm[new] = old`.
    pub fn canonicalize(&self) -> (Graph, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
        let mut pos = alloc::vec![0usize; self.n()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        (g, order)
    }

    /// Disjoint union of self and other plus every cross edge.
    pub fn join(&self, other: &Graph) -> Graph {
        let (a, b) = (self.n(), other.n());
        let mut g = Graph::empty(a + b);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    /// Disjoint union without cross edges.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let a = self.n();
        let mut g = Graph::empty(a + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn independent(n: usize) -> Graph {
        Graph::empty(n)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParams(String::from("cycle needs n >= 3")));
        }
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        Ok(g)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::independent(a).join(&Graph::independent(b))
    }

    /// K^s * I^(2t-1): the split graph that makes the colorability bound sharp.
    pub fn split_graph(s: usize, t: usize) -> Result<Graph, GraphError> {
        if s == 0 || t == 0 {
            return Err(GraphError::InvalidParams(String::from("split graph needs s, t >= 1")));
        }
        Ok(Graph::complete(s).join(&Graph::independent(2 * t - 1)))
    }

    /// r-regular circulant on n vertices with consecutive offsets 1..=r/2
    /// (plus the antipodal offset when r is odd, which needs n even).
    pub fn regular_circulant(n: usize, r: usize) -> Result<Graph, GraphError> {
        if r >= n {
            return Err(GraphError::InvalidParams(alloc::format!(
                "no {r}-regular graph on {n} vertices"
            )));
        }
        if r % 2 == 1 && n % 2 == 1 {
            return Err(GraphError::InvalidParams(alloc::format!(
                "parity: {r}-regular on odd n = {n}"
            )));
        }
        let mut g = Graph::empty(n);
        for off in 1..=r / 2 {
            for v in 0..n {
                g.add_edge(v, (v + off) % n);
            }
        }
        if r % 2 == 1 {
            for v in 0..n / 2 {
                g.add_edge(v, v + n / 2);
            }
        }
        debug_assert!((0..n).all(|v| g.degree(v) == r));
        Ok(g)
    }

    /// The family showing the k-factor criterion fails by exactly one:
    /// I^2 * H for even k, K^2 * H for odd k, H a (k-2)-regular graph.
    /// Degree sequence is (k+2, k+2, k, ..., k) on k+4 vertices.
    pub fn sharpness_factor_family(k: usize) -> Result<Graph, GraphError> {
        if k < 2 {
            return Err(GraphError::InvalidParams(String::from(
                "sharpness family needs k >= 2 for a (k-2)-regular part",
            )));
        }
        let (head, h) = if k % 2 == 0 {
            (Graph::independent(2), Graph::regular_circulant(k + 2, k - 2)?)
        } else {
            (Graph::complete(2), Graph::regular_circulant(k + 1, k - 2)?)
        };
        Ok(head.join(&h))
    }

    /// Vertices of X adjacent to some vertex outside X.
    pub fn boundary(&self, x: &BTreeSet<usize>) -> BTreeSet<usize> {
        x.iter()
            .copied()
            .filter(|&v| self.adj[v].iter().any(|u| !x.contains(u)))
            .collect()
    }

    /// Crossing edges of the cut (X, V-X). Both sides must be non-empty.
    pub fn cut(&self, x: &BTreeSet<usize>) -> Result<CutWitness, GraphError> {
        if x.is_empty() || x.len() >= self.n() {
            return Err(GraphError::InvalidCut(alloc::format!(
                "side has {} of {} vertices",
                x.len(),
                self.n()
            )));
        }
        if let Some(&v) = x.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::InvalidCut(alloc::format!("vertex {} out of range", v + 1)));
        }
        let mut crossing = BTreeSet::new();
        for &u in x {
            for &v in &self.adj[u] {
                if !x.contains(&v) {
                    crossing.insert((u.min(v), u.max(v)));
                }
            }
        }
        Ok(CutWitness { side_a: x.clone(), size: crossing.len(), crossing_edges: crossing })
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.n();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = alloc::vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * (n - 1) / 2
    }

    /// True when every vertex has degree exactly r.
    pub fn is_regular(&self, r: usize) -> bool {
        (0..self.n()).all(|v| self.degree(v) == r)
    }

    /// If the graph is a complete bipartite graph, returns its two parts.
    pub fn as_complete_bipartite(&self) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
        if self.n() < 2 || !self.is_connected() {
            return None;
        }
        // 2-color by BFS, then check all cross pairs are edges.
        let mut color = alloc::vec![usize::MAX; self.n()];
        let mut queue = alloc::collections::VecDeque::new();
        color[0] = 0;
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if color[u] == usize::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
        let a: BTreeSet<usize> = (0..self.n()).filter(|&v| color[v] == 0).collect();
        let b: BTreeSet<usize> = (0..self.n()).filter(|&v| color[v] == 1).collect();
        if self.edge_count() == a.len() * b.len() {
            Some((a, b))
        } else {
            None
        }
    }

    /// True when `other` uses the same vertex set and every edge of `other`
    /// is an edge of self.
    pub fn contains_subgraph(&self, other: &Graph) -> bool {
        other.n() == self.n() && other.edges().iter().all(|&(u, v)| self.has_edge(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap().graph
    }

    #[test]
    fn from_edges_examples() {
        assert_eq!(triangle().degree_sequence().degrees(), &[2, 2, 2]);
        let empty = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(empty.graph.edge_count(), 0);
        let dup = Graph::from_edges(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(dup.graph.edge_count(), 1);
        assert_eq!(dup.duplicates, 1);
        assert!(matches!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::InvalidEdge { reason: "loop", .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::InvalidEdge { reason: "endpoint out of range", .. })
        ));
    }

    #[test]
    fn degree_sequences_of_named_graphs() {
        assert_eq!(
            Graph::complete_bipartite(3, 3).degree_sequence().degrees(),
            &[3, 3, 3, 3, 3, 3]
        );
        assert_eq!(
            Graph::split_graph(2, 2).unwrap().degree_sequence().degrees(),
            &[4, 4, 2, 2, 2]
        );
        assert_eq!(Graph::cycle(5).unwrap().degree_sequence().degrees(), &[2, 2, 2, 2, 2]);
    }

    #[test]
    fn join_examples() {
        let star = Graph::independent(2).join(&Graph::independent(1));
        assert_eq!(star.degree_sequence().degrees(), &[2, 1, 1]);
        let k2 = Graph::complete(1).join(&Graph::complete(1));
        assert!(k2.is_complete());
        let g = Graph::complete(2).join(&Graph::independent(3));
        assert_eq!(g.degree_sequence().degrees(), &[4, 4, 2, 2, 2]);
    }

    #[test]
    fn sharpness_family_shape() {
        for k in 2..=6 {
            let g = Graph::sharpness_factor_family(k).unwrap();
            // Two high-degree join vertices over a (k-2)-regular part: k+4
            // vertices for even k, k+3 for odd k.
            let n = if k % 2 == 0 { k + 4 } else { k + 3 };
            assert_eq!(g.n(), n);
            let pi = g.degree_sequence();
            assert_eq!(pi.d(1), k + 2);
            assert_eq!(pi.d(2), k + 2);
            assert!((3..=n).all(|i| pi.d(i) == k));
        }
        assert!(Graph::sharpness_factor_family(1).is_err());
    }

    #[test]
    fn boundary_examples() {
        let t = triangle();
        let x: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(t.boundary(&x), x);
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().graph;
        assert!(two_edges.boundary(&x).is_empty());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().graph;
        assert_eq!(path.boundary(&x), [1].into_iter().collect());
    }

    #[test]
    fn cut_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let adjacent_pair: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(c4.cut(&adjacent_pair).unwrap().size, 2);
        let k4 = Graph::complete(4);
        let single: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(k4.cut(&single).unwrap().size, 3);
        let k33 = Graph::complete_bipartite(3, 3);
        let part: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        assert_eq!(k33.cut(&part).unwrap().size, 9);
        assert!(k4.cut(&BTreeSet::new()).is_err());
    }

    #[test]
    fn complete_bipartite_detection() {
        assert!(Graph::complete_bipartite(3, 3).as_complete_bipartite().is_some());
        assert!(Graph::cycle(4).unwrap().as_complete_bipartite().is_some()); // C4 = K{2,2}
        assert!(Graph::cycle(6).unwrap().as_complete_bipartite().is_none());
        assert!(Graph::complete(4).as_complete_bipartite().is_none());
    }

    #[test]
    fn canonicalize_sorts_degrees() {
        let g = Graph::from_edges(4, &[(3, 2), (3, 1), (3, 0), (2, 1)]).unwrap().graph;
        let (c, _) = g.canonicalize();
        assert!(c.is_degree_sorted());
        assert_eq!(c.degree_sequence(), g.degree_sequence());
    }
}
