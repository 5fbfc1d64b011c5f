//! Edge-exchange calculus: the classical degree-preserving 2-swap and the
//! generalized colored exchange that additionally preserves a factor
//! decomposition, plus the search for internally disjoint exchanges that
//! powers the coloring local search.
//!
//! Edges carry one of p+2 classes: the leftover of the host, the complement
//! (non-edges), and one class per factor. A colored exchange is an
//! alternating list around two hub vertices whose class rotation keeps every
//! vertex's per-class degree unchanged, so factors stay regular and the host
//! keeps its degree sequence.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::oracle::NodeCounter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    /// 2-swap preconditions violated; carries the offending pair.
    SwapBlocked { u: usize, v: usize, reason: &'static str },
    /// Exchange list does not satisfy the class pattern against this
    /// decomposition.
    InvalidExchange(String),
    /// Host/factor structure is not a valid decomposition.
    InvalidDecomposition(String),
    /// Bounded search could not produce all requested disjoint exchanges.
    SearchFailed { found: usize, requested: usize },
}

impl fmt::Display for ExchangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExchangeError::SwapBlocked { u, v, reason } => {
                write!(f, "swap blocked at ({}, {}): {}", u + 1, v + 1, reason)
            }
            ExchangeError::InvalidExchange(msg) => write!(f, "invalid exchange: {msg}"),
            ExchangeError::InvalidDecomposition(msg) => {
                write!(f, "invalid decomposition: {msg}")
            }
            ExchangeError::SearchFailed { found, requested } => {
                write!(f, "exchange search found {found} of {requested} disjoint lists")
            }
        }
    }
}

impl core::error::Error for ExchangeError {}

/// Class label of a vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeClass {
    /// Host edge belonging to no factor.
    Leftover,
    /// Non-edge of the host.
    Complement,
    /// Edge of factor i.
    Factor(usize),
}

impl EdgeClass {
    pub fn is_real(self) -> bool {
        self != EdgeClass::Complement
    }
}

/// A host graph with pairwise edge-disjoint regular spanning factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorDecomposition {
    host: Graph,
    factors: Vec<Graph>,
}

impl FactorDecomposition {
    pub fn new(host: Graph, factors: Vec<Graph>) -> Result<Self, ExchangeError> {
        let n = host.n();
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, f) in factors.iter().enumerate() {
            if f.n() != n {
                return Err(ExchangeError::InvalidDecomposition(alloc::format!(
                    "factor {} has {} vertices, host has {}",
                    i + 1,
                    f.n(),
                    n
                )));
            }
            let r = f.degree(0);
            if !f.is_regular(r) {
                return Err(ExchangeError::InvalidDecomposition(alloc::format!(
                    "factor {} is not regular",
                    i + 1
                )));
            }
            for e in f.edges() {
                if !host.has_edge(e.0, e.1) {
                    return Err(ExchangeError::InvalidDecomposition(alloc::format!(
                        "factor {} edge ({}, {}) missing from host",
                        i + 1,
                        e.0 + 1,
                        e.1 + 1
                    )));
                }
                if !seen.insert(e) {
                    return Err(ExchangeError::InvalidDecomposition(alloc::format!(
                        "edge ({}, {}) appears in two factors",
                        e.0 + 1,
                        e.1 + 1
                    )));
                }
            }
        }
        Ok(FactorDecomposition { host, factors })
    }

    /// Decomposition with no factors: every host edge is leftover.
    pub fn bare(host: Graph) -> Self {
        FactorDecomposition { host, factors: Vec::new() }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Total number of edge classes: leftover, complement, one per factor.
    pub fn num_classes(&self) -> usize {
        self.factors.len() + 2
    }

    pub fn class_of(&self, u: usize, v: usize) -> EdgeClass {
        if !self.host.has_edge(u, v) {
            return EdgeClass::Complement;
        }
        for (i, f) in self.factors.iter().enumerate() {
            if f.has_edge(u, v) {
                return EdgeClass::Factor(i);
            }
        }
        EdgeClass::Leftover
    }

    /// Host edges belonging to no factor.
    pub fn leftover(&self) -> Graph {
        let mut g = self.host.clone();
        for f in &self.factors {
            for (u, v) in f.edges() {
                g.remove_edge(u, v);
            }
        }
        g
    }

    fn set_class(&mut self, u: usize, v: usize, class: EdgeClass) {
        for f in &mut self.factors {
            f.remove_edge(u, v);
        }
        match class {
            EdgeClass::Complement => {
                self.host.remove_edge(u, v);
            }
            EdgeClass::Leftover => {
                self.host.add_edge(u, v);
            }
            EdgeClass::Factor(i) => {
                self.host.add_edge(u, v);
                self.factors[i].add_edge(u, v);
            }
        }
    }
}

/// The alternating list (v x_0, x_0 u, ..., v x_{q-1}, x_{q-1} u). The class
/// pattern makes applying it swap each pair's classes while every vertex
/// keeps its degree in every class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeList {
    pub hub_v: usize,
    pub hub_u: usize,
    pub internals: Vec<usize>,
}

impl ExchangeList {
    pub fn len(&self) -> usize {
        self.internals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.internals.is_empty()
    }

    /// Internal vertex set X(L).
    pub fn internal_set(&self) -> BTreeSet<usize> {
        self.internals.iter().copied().collect()
    }

    /// The 2q (pair, class) entries in list order.
    pub fn edges(&self, d: &FactorDecomposition) -> Vec<((usize, usize), EdgeClass)> {
        let mut out = Vec::with_capacity(2 * self.internals.len());
        for &x in &self.internals {
            out.push(((self.hub_v, x), d.class_of(self.hub_v, x)));
            out.push(((x, self.hub_u), d.class_of(x, self.hub_u)));
        }
        out
    }

    /// Checks the class pattern against a decomposition. Accepts the list in
    /// either orientation: an exchange is its own inverse, and the inverse
    /// reads the same internals in reverse order.
    pub fn validate(&self, d: &FactorDecomposition) -> Result<(), ExchangeError> {
        let q = self.internals.len();
        if q == 0 {
            return Ok(());
        }
        let n = d.host().n();
        if self.hub_u == self.hub_v || self.hub_u >= n || self.hub_v >= n {
            return Err(ExchangeError::InvalidExchange(String::from("bad hub vertices")));
        }
        let set = self.internal_set();
        if set.len() != q || set.contains(&self.hub_u) || set.contains(&self.hub_v) {
            return Err(ExchangeError::InvalidExchange(String::from(
                "internals must be distinct and avoid the hubs",
            )));
        }
        if let Some(&x) = set.iter().next_back() {
            if x >= n {
                return Err(ExchangeError::InvalidExchange(String::from(
                    "internal vertex out of range",
                )));
            }
        }
        if q > d.num_classes() {
            return Err(ExchangeError::InvalidExchange(alloc::format!(
                "{} internals but only {} classes",
                q,
                d.num_classes()
            )));
        }
        let forward = pattern_holds(&self.internals, self.hub_v, self.hub_u, d);
        if forward {
            return Ok(());
        }
        let mut rev = self.internals.clone();
        rev.reverse();
        if pattern_holds(&rev, self.hub_v, self.hub_u, d) {
            return Ok(());
        }
        Err(ExchangeError::InvalidExchange(String::from(
            "class pattern violated in both orientations",
        )))
    }
}

fn pattern_holds(internals: &[usize], v: usize, u: usize, d: &FactorDecomposition) -> bool {
    let q = internals.len();
    let u_classes: Vec<EdgeClass> = internals.iter().map(|&x| d.class_of(x, u)).collect();
    let mut distinct: BTreeSet<EdgeClass> = BTreeSet::new();
    if !u_classes.iter().all(|&c| distinct.insert(c)) {
        return false;
    }
    (0..q).all(|j| d.class_of(v, internals[(j + 1) % q]) == u_classes[j])
}

/// Petersen's 2-swap: removes edges xy and uv, inserts xu and yv. The
/// pairing is fixed; reorder arguments for the other one.
pub fn two_swap(
    g: &Graph,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<Graph, ExchangeError> {
    let (x, y) = e1;
    let (u, v) = e2;
    let all = [x, y, u, v];
    for i in 0..4 {
        for j in i + 1..4 {
            if all[i] == all[j] {
                return Err(ExchangeError::SwapBlocked {
                    u: all[i],
                    v: all[j],
                    reason: "endpoints not distinct",
                });
            }
        }
    }
    if !g.has_edge(x, y) {
        return Err(ExchangeError::SwapBlocked { u: x, v: y, reason: "not an edge" });
    }
    if !g.has_edge(u, v) {
        return Err(ExchangeError::SwapBlocked { u, v, reason: "not an edge" });
    }
    if g.has_edge(x, u) {
        return Err(ExchangeError::SwapBlocked { u: x, v: u, reason: "replacement already an edge" });
    }
    if g.has_edge(y, v) {
        return Err(ExchangeError::SwapBlocked { u: y, v, reason: "replacement already an edge" });
    }
    let mut h = g.clone();
    h.remove_edge(x, y);
    h.remove_edge(u, v);
    h.add_edge(x, u);
    h.add_edge(y, v);
    Ok(h)
}

/// Applies a colored exchange: each pair (v x_j, x_j u) swaps classes. The
/// result realizes the same degree sequence, every factor stays regular of
/// the same degree, and the leftover keeps its degree sequence.
pub fn apply_colored_exchange(
    d: &FactorDecomposition,
    list: &ExchangeList,
) -> Result<FactorDecomposition, ExchangeError> {
    list.validate(d)?;
    let mut out = d.clone();
    let mut writes: Vec<((usize, usize), EdgeClass)> = Vec::new();
    for &x in &list.internals {
        let cv = d.class_of(list.hub_v, x);
        let cu = d.class_of(x, list.hub_u);
        writes.push(((list.hub_v, x), cu));
        writes.push(((x, list.hub_u), cv));
    }
    for ((a, b), class) in writes {
        out.set_class(a, b, class);
    }
    debug_assert!(
        FactorDecomposition::new(out.host.clone(), out.factors.clone()).is_ok(),
        "colored exchange must preserve decomposition validity"
    );
    Ok(out)
}

/// Search configuration for exchange lists.
struct ListSearch<'a> {
    d: &'a FactorDecomposition,
    hub_v: usize,
    hub_u: usize,
    /// Vertices barred from use as non-anchor internals.
    avoid: &'a BTreeSet<usize>,
    /// Vertices already consumed by other lists.
    used: &'a BTreeSet<usize>,
}

impl<'a> ListSearch<'a> {
    /// Enumerates complete exchange lists anchored at `anchor`, in
    /// deterministic order, invoking `sink` for each until it returns false.
    fn dfs_lists(
        &self,
        anchor: usize,
        counter: &mut NodeCounter,
        sink: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let c0 = self.d.class_of(anchor, self.hub_u);
        debug_assert!(c0.is_real());
        let mut chain = alloc::vec![anchor];
        let mut used_classes: BTreeSet<EdgeClass> = BTreeSet::new();
        used_classes.insert(c0);
        self.extend(c0, &mut chain, &mut used_classes, counter, sink)
    }

    fn extend(
        &self,
        need: EdgeClass,
        chain: &mut Vec<usize>,
        used_classes: &mut BTreeSet<EdgeClass>,
        counter: &mut NodeCounter,
        sink: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if counter.tick().is_err() {
            return false;
        }
        // Candidates carry class `need` on the v side.
        for x in 0..self.d.host().n() {
            if x == self.hub_u
                || x == self.hub_v
                || chain.contains(&x)
                || self.avoid.contains(&x)
                || self.used.contains(&x)
            {
                continue;
            }
            if self.d.class_of(self.hub_v, x) != need {
                continue;
            }
            let cu = self.d.class_of(x, self.hub_u);
            if cu == EdgeClass::Complement {
                chain.push(x);
                let keep_going = sink(chain);
                chain.pop();
                if !keep_going {
                    return false;
                }
            } else if !used_classes.contains(&cu) {
                chain.push(x);
                used_classes.insert(cu);
                let keep_going = self.extend(cu, chain, used_classes, counter, sink);
                used_classes.remove(&cu);
                chain.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds one exchange list anchored at `anchor` between hubs (v gains the
/// anchor, u loses it), with internals after the anchor avoiding `avoid`.
pub fn find_exchange_at(
    d: &FactorDecomposition,
    hub_v: usize,
    hub_u: usize,
    anchor: usize,
    avoid: &BTreeSet<usize>,
) -> Option<ExchangeList> {
    let used = BTreeSet::new();
    let search = ListSearch { d, hub_v, hub_u, avoid, used: &used };
    let mut counter = NodeCounter::new(5_000_000);
    let mut found: Option<ExchangeList> = None;
    search.dfs_lists(anchor, &mut counter, &mut |chain| {
        found = Some(ExchangeList { hub_v, hub_u, internals: chain.to_vec() });
        false
    });
    found
}

/// For X inside N_complement(v) - N_complement(u) and deg(v) >= deg(u),
/// produces |X| pairwise internally disjoint exchange lists, the j-th
/// anchored at the j-th element of X. Searches with backtracking across
/// anchors; exhaustion is reported, never silently weakened.
pub fn find_disjoint_exchanges(
    d: &FactorDecomposition,
    hub_v: usize,
    hub_u: usize,
    anchors: &[usize],
) -> Result<Vec<ExchangeList>, ExchangeError> {
    find_disjoint_exchanges_avoiding(d, hub_v, hub_u, anchors, &BTreeSet::new())
}

/// [`find_disjoint_exchanges`] with an extra constraint: no non-anchor
/// internal may come from `avoid`. The coloring search needs this to keep
/// its recolored classes independent.
pub fn find_disjoint_exchanges_avoiding(
    d: &FactorDecomposition,
    hub_v: usize,
    hub_u: usize,
    anchors: &[usize],
    avoid: &BTreeSet<usize>,
) -> Result<Vec<ExchangeList>, ExchangeError> {
    if anchors.is_empty() {
        return Ok(Vec::new());
    }
    let host = d.host();
    for &x in anchors {
        if host.has_edge(hub_v, x) || !host.has_edge(hub_u, x) {
            return Err(ExchangeError::InvalidExchange(alloc::format!(
                "anchor {} not in N_complement(v) - N_complement(u)",
                x + 1
            )));
        }
    }
    if host.degree(hub_v) < host.degree(hub_u) {
        return Err(ExchangeError::InvalidExchange(String::from(
            "hub v must have degree at least that of hub u",
        )));
    }
    let mut counter = NodeCounter::new(20_000_000);
    let mut best_depth = 0usize;
    let mut result: Option<Vec<ExchangeList>> = None;
    let mut used: BTreeSet<usize> = anchors.iter().copied().collect();
    let mut acc: Vec<ExchangeList> = Vec::new();
    assign_anchors(
        d, hub_v, hub_u, anchors, avoid, 0, &mut used, &mut acc, &mut best_depth, &mut result,
        &mut counter,
    );
    match result {
        Some(lists) => Ok(lists),
        None => Err(ExchangeError::SearchFailed { found: best_depth, requested: anchors.len() }),
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_anchors(
    d: &FactorDecomposition,
    hub_v: usize,
    hub_u: usize,
    anchors: &[usize],
    avoid: &BTreeSet<usize>,
    idx: usize,
    used: &mut BTreeSet<usize>,
    acc: &mut Vec<ExchangeList>,
    best_depth: &mut usize,
    result: &mut Option<Vec<ExchangeList>>,
    counter: &mut NodeCounter,
) -> bool {
    if idx == anchors.len() {
        *result = Some(acc.clone());
        return true;
    }
    *best_depth = (*best_depth).max(idx);
    let anchor = anchors[idx];
    // The anchor is globally reserved already; its tail internals must not
    // collide with other lists.
    let mut done = false;
    let search = ListSearch { d, hub_v, hub_u, avoid, used };
    let mut candidate_chains: Vec<Vec<usize>> = Vec::new();
    search.dfs_lists(anchor, counter, &mut |chain| {
        candidate_chains.push(chain.to_vec());
        candidate_chains.len() < 64
    });
    for chain in candidate_chains {
        let tail: Vec<usize> = chain[1..].to_vec();
        for &t in &tail {
            used.insert(t);
        }
        acc.push(ExchangeList { hub_v, hub_u, internals: chain });
        if assign_anchors(
            d, hub_v, hub_u, anchors, avoid, idx + 1, used, acc, best_depth, result, counter,
        ) {
            done = true;
        }
        acc.pop();
        for t in &tail {
            used.remove(t);
        }
        if done {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_swap_preserves_degrees() {
        let c4 = Graph::cycle(4).unwrap();
        let swapped = two_swap(&c4, (0, 1), (2, 3)).unwrap();
        assert_eq!(swapped.degree_sequence(), c4.degree_sequence());
        assert!(swapped.has_edge(0, 2) && swapped.has_edge(1, 3));
        assert!(!swapped.has_edge(0, 1) && !swapped.has_edge(2, 3));
    }

    #[test]
    fn two_swap_fixed_pairing_on_matching() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().graph;
        let h = two_swap(&g, (0, 1), (2, 3)).unwrap();
        assert!(h.has_edge(0, 2) && h.has_edge(1, 3));
        assert_eq!(h.degree_sequence().degrees(), &[1, 1, 1, 1]);
    }

    #[test]
    fn two_swap_blocked_cases() {
        let k4 = Graph::complete(4);
        assert!(matches!(
            two_swap(&k4, (0, 1), (2, 3)),
            Err(ExchangeError::SwapBlocked { reason: "replacement already an edge", .. })
        ));
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(
            two_swap(&c4, (0, 1), (1, 2)),
            Err(ExchangeError::SwapBlocked { reason: "endpoints not distinct", .. })
        ));
    }

    /// Path 0-1-2-3 with hubs at the two ends: the only exchange is the
    /// plain 2-swap that removes 0-1, 2-3 and inserts 0-2, 1-3.
    #[test]
    fn q2_exchange_is_a_two_swap() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap().graph;
        let d = FactorDecomposition::bare(path.clone());
        let list = find_exchange_at(&d, 0, 3, 2, &BTreeSet::new()).expect("exchange exists");
        assert_eq!(list.internals, alloc::vec![2, 1]);
        let out = apply_colored_exchange(&d, &list).unwrap();
        assert_eq!(out.host().degree_sequence(), path.degree_sequence());
        assert!(out.host().has_edge(0, 2) && out.host().has_edge(1, 3));
        assert!(!out.host().has_edge(2, 3) && !out.host().has_edge(0, 1));
    }

    #[test]
    fn empty_exchange_is_identity() {
        let d = FactorDecomposition::bare(Graph::cycle(5).unwrap());
        let list = ExchangeList { hub_v: 0, hub_u: 1, internals: alloc::vec![] };
        let out = apply_colored_exchange(&d, &list).unwrap();
        assert_eq!(&out, &d);
    }

    /// A length-4 exchange rotating through leftover, two factor classes and
    /// the complement: both factors stay perfect matchings, hub degrees are
    /// preserved, and the same list applied twice is the identity.
    #[test]
    fn factor_preserving_q4_exchange() {
        // v = 0, u = 1, internals 2..=5.
        let f0 = Graph::from_edges(6, &[(1, 2), (0, 3), (4, 5)]).unwrap().graph;
        let f1 = Graph::from_edges(6, &[(1, 3), (0, 4), (2, 5)]).unwrap().graph;
        let mut host = Graph::from_edges(6, &[(0, 2), (1, 5)]).unwrap().graph;
        for g in [&f0, &f1] {
            for (a, b) in g.edges() {
                host.add_edge(a, b);
            }
        }
        let d = FactorDecomposition::new(host.clone(), alloc::vec![f0, f1]).unwrap();
        let list = ExchangeList { hub_v: 0, hub_u: 1, internals: alloc::vec![2, 3, 4, 5] };
        list.validate(&d).unwrap();
        let out = apply_colored_exchange(&d, &list).unwrap();
        assert!(out.factors()[0].is_regular(1) && out.factors()[1].is_regular(1));
        assert_eq!(out.host().degree_sequence(), host.degree_sequence());
        assert!(out.host().has_edge(0, 5) && !out.host().has_edge(0, 4));
        // Leftover degree sequence is preserved too.
        assert_eq!(out.leftover().degree_sequence(), d.leftover().degree_sequence());
        // Involution.
        let back = apply_colored_exchange(&out, &list).unwrap();
        assert_eq!(&back, &d);
    }

    #[test]
    fn disjoint_exchange_edge_cases() {
        let d = FactorDecomposition::bare(Graph::cycle(6).unwrap());
        assert_eq!(find_disjoint_exchanges(&d, 0, 2, &[]).unwrap().len(), 0);
        // K4 minus an edge: u, v the two degree-2 vertices have identical
        // complement neighborhoods, so X is forcibly empty.
        let mut g = Graph::complete(4);
        g.remove_edge(0, 1);
        let d = FactorDecomposition::bare(g);
        assert_eq!(find_disjoint_exchanges(&d, 0, 1, &[]).unwrap().len(), 0);
    }

    #[test]
    fn disjoint_exchanges_on_plain_host() {
        // Host: two triangles sharing no vertex plus a bridge-ish structure
        // where v has spare complement capacity.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap()
            .graph;
        let d = FactorDecomposition::bare(g);
        // v = 0, u = 4: N_comp(0) = {3,4,5}, u-neighbors among them: {3,5}.
        let lists = find_disjoint_exchanges(&d, 0, 4, &[3, 5]).unwrap();
        assert_eq!(lists.len(), 2);
        let x0 = lists[0].internal_set();
        let x1 = lists[1].internal_set();
        assert!(x0.intersection(&x1).next().is_none(), "lists must be internally disjoint");
        // Applying both in sequence is valid.
        let mid = apply_colored_exchange(&d, &lists[0]).unwrap();
        let fin = apply_colored_exchange(&mid, &lists[1]).unwrap();
        assert_eq!(fin.host().degree_sequence(), d.host().degree_sequence());
    }
}
