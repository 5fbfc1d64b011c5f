//! Edge connectivity and the connectification procedure: repair small cuts
//! by exchanging exchangeable-subgraph edges across the cut, preserving the
//! degree sequence, every edge outside the exchangeable part, and a given
//! proper equitable coloring.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::Coloring;
use crate::graph::{CutWitness, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectError {
    InvalidInput(String),
    /// No valid exchange exists at any violating cut (or the step cap was
    /// hit). Carries the offending cut for archiving.
    RepairStuck { cut: CutWitness, lambda: usize, target: usize },
}

impl fmt::Display for ConnectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            ConnectError::RepairStuck { lambda, target, .. } => {
                write!(f, "connectivity repair stuck at lambda = {lambda}, target = {target}")
            }
        }
    }
}

impl core::error::Error for ConnectError {}

/// Which edge-connectivity a repaired graph must reach, as a function of the
/// minimum degree: delta - 1 for odd delta >= 3, otherwise delta itself
/// (maximally edge-connected).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectTarget {
    pub delta: usize,
    pub target: usize,
    pub odd_case: bool,
}

impl ConnectTarget {
    pub fn for_min_degree(delta: usize) -> Self {
        let odd_case = delta >= 3 && delta % 2 == 1;
        ConnectTarget { delta, target: if odd_case { delta - 1 } else { delta }, odd_case }
    }
}

/// Lambda(G) with a minimum cut witness, by repeated max-flow from a fixed
/// source to every other sink.
pub fn edge_connectivity(g: &Graph) -> Result<(usize, CutWitness), ConnectError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectError::InvalidInput(String::from("edge connectivity needs n >= 2")));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let side = comps[0].clone();
        let witness = g.cut(&side).expect("component is a proper side");
        return Ok((0, witness));
    }
    let mut best: Option<(usize, BTreeSet<usize>)> = None;
    for t in 1..n {
        let (flow, side) = max_flow_unit(g, 0, t);
        if best.as_ref().map_or(true, |(b, _)| flow < *b) {
            best = Some((flow, side));
        }
    }
    let (lambda, side) = best.expect("n >= 2 gives at least one sink");
    let witness = g.cut(&side).expect("min-cut side is proper");
    debug_assert_eq!(witness.size, lambda);
    Ok((lambda, witness))
}

/// Unit-capacity max flow between s and t (each undirected edge carries one
/// unit each way); returns the flow value and the s-side of a minimum cut.
fn max_flow_unit(g: &Graph, s: usize, t: usize) -> (usize, BTreeSet<usize>) {
    let n = g.n();
    let mut cap = alloc::vec![alloc::vec![0i32; n]; n];
    for (u, v) in g.edges() {
        cap[u][v] = 1;
        cap[v][u] = 1;
    }
    let mut flow = 0;
    loop {
        // BFS augmenting path in the residual network.
        let mut parent = alloc::vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            let side: BTreeSet<usize> = (0..n).filter(|&v| parent[v] != usize::MAX).collect();
            return (flow, side);
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Exact minimum-cut count by subset enumeration; feasible for n <= 20.
/// Returns (lambda, number of minimum cuts).
pub fn count_min_cuts(g: &Graph) -> Option<(usize, u64)> {
    let n = g.n();
    if n < 2 || n > 20 {
        return None;
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut lambda = usize::MAX;
    let mut count = 0u64;
    for mask in 0..(1u32 << (n - 1)) {
        let a: u32 = (mask << 1) | 1;
        if a == full {
            continue;
        }
        let size = cut_size_mask(&adj, a, n);
        if size < lambda {
            lambda = size;
            count = 1;
        } else if size == lambda {
            count += 1;
        }
    }
    Some((lambda, count))
}

fn cut_size_mask(adj: &[u32], a: u32, n: usize) -> usize {
    let mut size = 0usize;
    for v in 0..n {
        if (a >> v) & 1 == 1 {
            size += (adj[v] & !a).count_ones() as usize;
        }
    }
    size
}

/// One repair exchange, for the step log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairStep {
    pub lambda: usize,
    pub min_cut_count: Option<u64>,
    pub removed: [(usize, usize); 2],
    pub added: [(usize, usize); 2],
}

#[derive(Debug, Clone)]
pub struct ConnectifyOutcome {
    pub graph: Graph,
    /// The exchangeable classes after repair, in input order.
    pub z_final: Vec<Graph>,
    pub lambda_before: usize,
    pub lambda_after: usize,
    pub steps: Vec<RepairStep>,
}

/// Repairs `g0` to the edge-connectivity target derived from its minimum
/// degree, exchanging only edges of the spanning subgraph `z0`, while the
/// coloring `f` stays proper with unchanged class sizes.
pub fn connectify(g0: &Graph, z0: &Graph, f: &Coloring) -> Result<ConnectifyOutcome, ConnectError> {
    let n = g0.n();
    if z0.n() != n {
        return Err(ConnectError::InvalidInput(String::from("z0 must span the same vertex set")));
    }
    if !g0.contains_subgraph(z0) {
        return Err(ConnectError::InvalidInput(String::from("z0 must be a subgraph of g0")));
    }
    if z0.min_degree() < 1 {
        return Err(ConnectError::InvalidInput(String::from("z0 needs minimum degree 1")));
    }
    if g0.min_degree() == 1 && z0.edge_count() < n - 1 {
        return Err(ConnectError::InvalidInput(alloc::format!(
            "delta(g0) = 1 requires |E(z0)| >= {}, got {}",
            n - 1,
            z0.edge_count()
        )));
    }
    if f.n() != n || !f.is_proper(g0) || !f.is_equitable() {
        return Err(ConnectError::InvalidInput(String::from(
            "coloring must be proper and equitable on g0",
        )));
    }
    let target = ConnectTarget::for_min_degree(g0.min_degree()).target;
    repair_engine(g0, core::slice::from_ref(z0), f, target)
}

/// The shared repair loop. Exchanges stay within a single class of
/// `z_classes` so regular classes remain regular. Callers have checked their
/// own preconditions.
pub(crate) fn repair_engine(
    g0: &Graph,
    z_classes: &[Graph],
    f: &Coloring,
    target: usize,
) -> Result<ConnectifyOutcome, ConnectError> {
    let n = g0.n();
    let mut host = g0.clone();
    let mut zs: Vec<Graph> = z_classes.to_vec();
    let sacred = {
        let mut s = g0.clone();
        for z in &zs {
            for (u, v) in z.edges() {
                s.remove_edge(u, v);
            }
        }
        s
    };
    let (lambda0, _) = edge_connectivity(&host)?;
    let mut steps: Vec<RepairStep> = Vec::new();
    let step_cap = (n * n * n).max(8);
    loop {
        let (lambda, min_cut) = edge_connectivity(&host)?;
        if lambda >= target {
            return Ok(ConnectifyOutcome {
                graph: host,
                z_final: zs,
                lambda_before: lambda0,
                lambda_after: lambda,
                steps,
            });
        }
        if steps.len() >= step_cap {
            return Err(ConnectError::RepairStuck { cut: min_cut, lambda, target });
        }
        let candidates = violating_cuts(&host, target, &min_cut);
        let mut applied = false;
        'cuts: for side in &candidates {
            if let Some((class, (a, ap), (b, bp), pairing)) =
                find_cut_exchange(&host, &zs, f, side)
            {
                let (e1, e2) = pairing;
                host.remove_edge(a, ap);
                host.remove_edge(b, bp);
                host.add_edge(e1.0, e1.1);
                host.add_edge(e2.0, e2.1);
                zs[class].remove_edge(a, ap);
                zs[class].remove_edge(b, bp);
                zs[class].add_edge(e1.0, e1.1);
                zs[class].add_edge(e2.0, e2.1);
                debug_assert_eq!(host.degree_sequence(), g0.degree_sequence());
                debug_assert!(host.contains_subgraph(&sacred));
                debug_assert!(f.is_proper(&host));
                steps.push(RepairStep {
                    lambda,
                    min_cut_count: count_min_cuts(&host).map(|(_, c)| c),
                    removed: [(a, ap), (b, bp)],
                    added: [e1, e2],
                });
                applied = true;
                break 'cuts;
            }
        }
        if !applied {
            return Err(ConnectError::RepairStuck { cut: min_cut, lambda, target });
        }
    }
}

/// Cuts with fewer than `target` crossing edges, smallest first. Exhaustive
/// for n <= 20 (capped), otherwise just the supplied minimum cut.
fn violating_cuts(host: &Graph, target: usize, min_cut: &CutWitness) -> Vec<BTreeSet<usize>> {
    let n = host.n();
    let mut out: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    if n <= 20 {
        let adj: Vec<u32> = (0..n)
            .map(|v| host.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
            .collect();
        let full: u32 = (1u32 << n) - 1;
        for mask in 0..(1u32 << (n - 1)) {
            let a: u32 = (mask << 1) | 1;
            if a == full {
                continue;
            }
            let size = cut_size_mask(&adj, a, n);
            if size < target {
                let side: BTreeSet<usize> = (0..n).filter(|&v| (a >> v) & 1 == 1).collect();
                out.push((size, side));
                if out.len() >= 512 {
                    break;
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    }
    if out.is_empty() {
        out.push((min_cut.size, min_cut.side_a.clone()));
    }
    out.into_iter().map(|(_, s)| s).collect()
}

type CutExchange = (usize, (usize, usize), (usize, usize), ((usize, usize), (usize, usize)));

/// Searches one violating cut for a valid exchange: z-edges aa' inside A and
/// bb' inside B with no host edges between {a,a'} and {b,b'}, plus a pairing
/// that keeps the coloring proper. Since aa' and bb' are host edges, at
/// least one pairing is always color-feasible when the colors allow any.
fn find_cut_exchange(
    host: &Graph,
    zs: &[Graph],
    f: &Coloring,
    side: &BTreeSet<usize>,
) -> Option<CutExchange> {
    for (class, z) in zs.iter().enumerate() {
        let inside_a: Vec<(usize, usize)> = z
            .edges()
            .into_iter()
            .filter(|&(u, v)| side.contains(&u) && side.contains(&v))
            .collect();
        if inside_a.is_empty() {
            continue;
        }
        let inside_b: Vec<(usize, usize)> = z
            .edges()
            .into_iter()
            .filter(|&(u, v)| !side.contains(&u) && !side.contains(&v))
            .collect();
        for &(a, ap) in &inside_a {
            for &(b, bp) in &inside_b {
                if host.has_edge(a, b)
                    || host.has_edge(a, bp)
                    || host.has_edge(ap, b)
                    || host.has_edge(ap, bp)
                {
                    continue;
                }
                // Try the two role assignments of (a, a'); each offers the
                // canonical pairing (a-b', a'-b).
                for (x, xp) in [(a, ap), (ap, a)] {
                    if f.class_of(x) != f.class_of(bp) && f.class_of(xp) != f.class_of(b) {
                        return Some((class, (a, ap), (b, bp), ((x, bp), (xp, b))));
                    }
                    if f.class_of(x) != f.class_of(b) && f.class_of(xp) != f.class_of(bp) {
                        return Some((class, (a, ap), (b, bp), ((x, b), (xp, bp))));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::hs_coloring;

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&Graph::complete(4)).unwrap().0, 3);
        assert_eq!(edge_connectivity(&Graph::cycle(6).unwrap()).unwrap().0, 2);
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(edge_connectivity(&two_triangles).unwrap().0, 0);
        assert!(edge_connectivity(&Graph::empty(1)).is_err());
    }

    #[test]
    fn connect_target_cases() {
        assert_eq!(ConnectTarget::for_min_degree(1).target, 1);
        assert_eq!(ConnectTarget::for_min_degree(2).target, 2);
        assert_eq!(ConnectTarget::for_min_degree(3).target, 2);
        assert_eq!(ConnectTarget::for_min_degree(4).target, 4);
        assert_eq!(ConnectTarget::for_min_degree(5).target, 4);
    }

    #[test]
    fn min_cut_counting_matches_flow() {
        let g = Graph::cycle(5).unwrap();
        let (lambda, count) = count_min_cuts(&g).unwrap();
        assert_eq!(lambda, 2);
        // Every pair of cycle edges separates C5: C(5,2) = 10 cuts.
        assert_eq!(count, 10);
    }

    #[test]
    fn connectify_fixed_point() {
        let g = Graph::complete(4);
        let f = hs_coloring(&g, 4).unwrap();
        let out = connectify(&g, &g, &f).unwrap();
        assert_eq!(out.graph, g);
        assert!(out.steps.is_empty());
    }

    #[test]
    fn connectify_two_k4s() {
        // delta = 3, odd: target is 2-edge-connectivity.
        let g = Graph::complete(4).disjoint_union(&Graph::complete(4));
        let f = hs_coloring(&g, 4).unwrap();
        let out = connectify(&g, &g, &f).unwrap();
        assert!(out.lambda_after >= 2);
        assert_eq!(out.graph.degree_sequence(), g.degree_sequence());
        assert!(f.is_proper(&out.graph));
    }

    #[test]
    fn connectify_two_c4s() {
        // delta = 2, even: must become maximally edge-connected.
        let g = Graph::cycle(4).unwrap().disjoint_union(&Graph::cycle(4).unwrap());
        let f = hs_coloring(&g, 3).unwrap();
        let out = connectify(&g, &g, &f).unwrap();
        assert_eq!(out.lambda_after, 2);
        assert_eq!(out.graph.degree_sequence(), g.degree_sequence());
        assert!(f.is_proper(&out.graph));
        assert!(f.is_equitable());
    }

    #[test]
    fn connectify_preserves_sacred_edges() {
        // g0 = C8 plus chords; z0 = the C8 only. Chords must survive.
        let mut g = Graph::cycle(8).unwrap();
        let z0 = g.clone();
        g.add_edge(0, 4);
        g.add_edge(2, 6);
        let f = hs_coloring(&g, 4).unwrap();
        let out = connectify(&g, &z0, &f).unwrap();
        assert!(out.graph.has_edge(0, 4) && out.graph.has_edge(2, 6));
        assert_eq!(out.graph.degree_sequence(), g.degree_sequence());
    }

    #[test]
    fn connectify_rejects_bad_inputs() {
        let g = Graph::cycle(4).unwrap();
        let f = hs_coloring(&g, 3).unwrap();
        let z_empty = Graph::empty(4);
        assert!(matches!(connectify(&g, &z_empty, &f), Err(ConnectError::InvalidInput(_))));
        // delta(g0) = 1 with too few z0 edges.
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap().graph;
        let z_small = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().graph;
        let fp = hs_coloring(&path, 3).unwrap();
        assert!(matches!(connectify(&path, &z_small, &fp), Err(ConnectError::InvalidInput(_))));
    }
}
