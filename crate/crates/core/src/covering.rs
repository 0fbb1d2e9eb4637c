//! Covering distances and covering sequences of connected patterns.
//!
//! A covering sequence `(r_1, ..., r_t)` for a pattern on `t + 1` nodes says
//! how far each recursion level of the encoder has to reach: there must be an
//! elimination order `(v_1, ..., v_{t+1})` such that every `v_i` sees all
//! still-present nodes within distance `r_i` inside the subgraph induced by
//! those nodes.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{all_pairs_shortest_paths, bfs_distances, induced_subgraph, Distance, Graph, VertexSet};

/// Largest pattern the brute-force [`admits`] search accepts.
pub const ADMITS_MAX_NODES: usize = 9;

/// Recursion radii `(r_1, ..., r_t)`, `t >= 1`. Not necessarily monotone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringSequence(Vec<usize>);

impl CoveringSequence {
    pub fn new(radii: Vec<usize>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invalid("covering sequence must have at least one radius"));
        }
        Ok(CoveringSequence(radii))
    }

    pub fn radii(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    /// Coordinate-wise `self >= other` on equal lengths.
    pub fn dominates(&self, other: &CoveringSequence) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Appends trailing zeros up to `len`.
    pub fn padded(&self, len: usize) -> CoveringSequence {
        let mut radii = self.0.clone();
        radii.resize(len.max(radii.len()), 0);
        CoveringSequence(radii)
    }
}

impl fmt::Display for CoveringSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Elimination order `(v_1, ..., v_{t+1})` of a pattern's nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCoveringSequence(Vec<usize>);

impl VertexCoveringSequence {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("{order:?} is not a permutation")));
            }
        }
        Ok(VertexCoveringSequence(order))
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }
}

/// `max_{u in s} d(u, v)` measured inside `h(s)`; `None` when some member of
/// `s` is unreachable from `v` there.
pub fn covering_distance(h: &Graph, v: usize, s: &VertexSet) -> Result<Distance> {
    if !s.contains(v) {
        return Err(Error::invalid(format!("node {v} is not in the covering set")));
    }
    let (sub, map) = induced_subgraph(h, s)?;
    let src = map.new_index(v).expect("v is a member");
    Ok(bfs_distances(&sub, src)
        .into_iter()
        .try_fold(0, |acc, d| d.map(|d| acc.max(d))))
}

pub fn is_vertex_covering_sequence(
    h: &Graph,
    order: &VertexCoveringSequence,
    r: &CoveringSequence,
) -> Result<bool> {
    let n = h.node_count();
    if order.order().len() != n || r.len() + 1 != n {
        return Err(Error::invalid(format!(
            "pattern has {n} nodes, order has {}, radii have {} (need n = len(r) + 1)",
            order.order().len(),
            r.len()
        )));
    }
    let mut remaining = VertexSet::all(n);
    for (i, &v) in order.order().iter().enumerate() {
        // The final singleton step is always satisfied.
        if let Some(&radius) = r.radii().get(i) {
            match covering_distance(h, v, &remaining)? {
                Some(d) if d <= radius => {}
                _ => return Ok(false),
            }
        }
        remaining = remaining.without(v);
    }
    Ok(true)
}

/// Exhaustive search for a vertex covering sequence of `h` under `r`.
///
/// Depth-first over elimination orders: a prefix is extended only by nodes
/// satisfying their own radius, which visits exactly the valid permutations.
pub fn admits(h: &Graph, r: &CoveringSequence) -> Result<Option<VertexCoveringSequence>> {
    let n = h.node_count();
    Error::check_size("admits pattern node count", n, ADMITS_MAX_NODES)?;
    if !h.is_connected() {
        return Err(Error::invalid("pattern must be connected"));
    }
    if r.len() + 1 != n {
        return Err(Error::invalid(format!(
            "pattern has {n} nodes but radii have length {}",
            r.len()
        )));
    }
    let mut order = Vec::with_capacity(n);
    if search_order(h, r, VertexSet::all(n), &mut order)? {
        Ok(Some(VertexCoveringSequence(order)))
    } else {
        Ok(None)
    }
}

fn search_order(h: &Graph, r: &CoveringSequence, remaining: VertexSet, order: &mut Vec<usize>) -> Result<bool> {
    let step = order.len();
    if remaining.len() <= 1 {
        order.extend_from_slice(remaining.members());
        return Ok(true);
    }
    for &v in remaining.members() {
        let ok = matches!(covering_distance(h, v, &remaining)?, Some(d) if d <= r.radii()[step]);
        if ok {
            order.push(v);
            if search_order(h, r, remaining.without(v), order)? {
                return Ok(true);
            }
            order.pop();
        }
    }
    Ok(false)
}

/// `(k - 1, k - 2, ..., 1)`, admitted by every connected graph on `k` nodes.
pub fn default_covering_sequence(k: usize) -> Result<CoveringSequence> {
    if k < 2 {
        return Err(Error::invalid(format!("default covering sequence needs k >= 2, got {k}")));
    }
    CoveringSequence::new((1..k).rev().collect())
}

/// Kruskal over edges sorted by `(weight, u, v)`; returns tree edges in the
/// order they were accepted.
pub fn minimum_spanning_tree<W>(h: &Graph, weight: W) -> Result<Vec<(usize, usize)>>
where
    W: Fn(usize, usize) -> u64,
{
    let n = h.node_count();
    let mut edges: Vec<(u64, usize, usize)> = h.edges().map(|(u, v)| (weight(u, v), u, v)).collect();
    edges.sort_unstable();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (_, u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            tree.push((u, v));
        }
    }
    if tree.len() + 1 != n.max(1) {
        return Err(Error::invalid("graph is disconnected; no spanning tree"));
    }
    Ok(tree)
}

/// Covering sequence with small `r_1` via a leaf-constrained spanning tree.
///
/// Candidates for `v_1` are tried in ascending eccentricity (ties by index).
/// Edges at the candidate weigh `1 + t`, all others `1`; the first candidate
/// that is a leaf of the resulting MST becomes `v_1` with `r_1` its graph
/// eccentricity. The remaining tree is then peeled leaf by leaf; each step
/// takes the leaf with the smallest eccentricity in the remaining tree (ties
/// by index) and records that tree eccentricity as its radius.
pub fn min_r1_covering_sequence(h: &Graph) -> Result<(CoveringSequence, VertexCoveringSequence)> {
    let n = h.node_count();
    if n < 2 {
        return Err(Error::invalid("pattern needs at least 2 nodes"));
    }
    if !h.is_connected() {
        return Err(Error::invalid("pattern must be connected"));
    }
    let tau = (n - 1) as u64;
    let dist = all_pairs_shortest_paths(h);
    let ecc: Vec<usize> = (0..n)
        .map(|v| dist.eccentricity(v).expect("connected"))
        .collect();
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by_key(|&v| (ecc[v], v));

    let (first, tree) = candidates
        .iter()
        .find_map(|&c| {
            let tree = minimum_spanning_tree(h, |u, v| 1 + tau * u64::from(u == c || v == c)).ok()?;
            let degree = tree.iter().filter(|&&(u, v)| u == c || v == c).count();
            (degree == 1).then_some((c, tree))
        })
        .expect("every connected graph has a non-cut vertex");

    let mut tree_adj = vec![Vec::new(); n];
    for (u, v) in tree {
        tree_adj[u].push(v);
        tree_adj[v].push(u);
    }
    let mut alive = vec![true; n];
    let mut radii = vec![ecc[first]];
    let mut order = vec![first];
    alive[first] = false;

    for _ in 1..n {
        let leaves = (0..n).filter(|&v| alive[v] && tree_adj[v].iter().filter(|&&u| alive[u]).count() <= 1);
        let (radius, leaf) = leaves
            .map(|v| (tree_eccentricity(&tree_adj, &alive, v), v))
            .min()
            .expect("a nonempty tree has a leaf");
        if order.len() < n - 1 {
            radii.push(radius);
        }
        order.push(leaf);
        alive[leaf] = false;
    }
    Ok((CoveringSequence(radii), VertexCoveringSequence(order)))
}

fn tree_eccentricity(tree_adj: &[Vec<usize>], alive: &[bool], src: usize) -> usize {
    let mut dist = vec![usize::MAX; tree_adj.len()];
    let mut stack = vec![src];
    dist[src] = 0;
    let mut max = 0;
    while let Some(u) = stack.pop() {
        max = max.max(dist[u]);
        for &w in &tree_adj[u] {
            if alive[w] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                stack.push(w);
            }
        }
    }
    max
}

/// Coordinate-wise maximum of every pattern's [`min_r1_covering_sequence`],
/// shorter sequences padded with trailing zeros.
pub fn family_covering_sequence(patterns: &[Graph]) -> Result<CoveringSequence> {
    if patterns.is_empty() {
        return Err(Error::invalid("pattern family is empty"));
    }
    let seqs = patterns
        .iter()
        .map(|h| min_r1_covering_sequence(h).map(|(r, _)| r))
        .collect::<Result<Vec<_>>>()?;
    let len = seqs.iter().map(CoveringSequence::len).max().unwrap_or(1);
    let mut radii = vec![0; len];
    for seq in &seqs {
        for (slot, &r) in radii.iter_mut().zip(seq.radii()) {
            *slot = (*slot).max(r);
        }
    }
    CoveringSequence::new(radii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, enumerate_connected_graphs, path, star};

    fn seq(r: &[usize]) -> CoveringSequence {
        CoveringSequence::new(r.to_vec()).unwrap()
    }

    fn order(o: &[usize]) -> VertexCoveringSequence {
        VertexCoveringSequence::new(o.to_vec()).unwrap()
    }

    #[test]
    fn covering_distance_examples() {
        let k3 = complete(3).unwrap();
        assert_eq!(covering_distance(&k3, 0, &VertexSet::all(3)).unwrap(), Some(1));
        let p3 = path(3).unwrap();
        assert_eq!(covering_distance(&p3, 0, &VertexSet::all(3)).unwrap(), Some(2));
        let ends = VertexSet::new(vec![0, 2], 3).unwrap();
        assert_eq!(covering_distance(&p3, 0, &ends).unwrap(), None);
        assert!(covering_distance(&p3, 1, &ends).is_err());
    }

    #[test]
    fn validator_examples() {
        let k3 = complete(3).unwrap();
        assert!(is_vertex_covering_sequence(&k3, &order(&[0, 1, 2]), &seq(&[1, 1])).unwrap());
        // P3 as a-b-c with center b = 1.
        let p3 = path(3).unwrap();
        assert!(!is_vertex_covering_sequence(&p3, &order(&[1, 0, 2]), &seq(&[1, 1])).unwrap());
        assert!(is_vertex_covering_sequence(&p3, &order(&[0, 1, 2]), &seq(&[2, 1])).unwrap());
        assert!(is_vertex_covering_sequence(&p3, &order(&[0, 1]), &seq(&[2, 1])).is_err());
        assert!(is_vertex_covering_sequence(&p3, &order(&[0, 1, 2]), &seq(&[2])).is_err());
    }

    #[test]
    fn admits_examples() {
        assert!(admits(&complete(3).unwrap(), &seq(&[1, 1])).unwrap().is_some());
        assert!(admits(&path(3).unwrap(), &seq(&[1, 1])).unwrap().is_none());
        let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(admits(&disconnected, &seq(&[2, 1])).is_err());
        assert!(admits(&complete(10).unwrap(), &default_covering_sequence(10).unwrap()).is_err());
    }

    #[test]
    fn default_sequences() {
        assert_eq!(default_covering_sequence(2).unwrap(), seq(&[1]));
        assert_eq!(default_covering_sequence(3).unwrap(), seq(&[2, 1]));
        assert_eq!(default_covering_sequence(4).unwrap(), seq(&[3, 2, 1]));
        assert!(default_covering_sequence(1).is_err());
        assert!(CoveringSequence::new(vec![]).is_err());
    }

    #[test]
    fn mst_examples() {
        let p4 = path(4).unwrap();
        assert_eq!(minimum_spanning_tree(&p4, |_, _| 1).unwrap(), vec![(0, 1), (1, 2), (2, 3)]);

        // C4 edges sorted: (0,1) (0,3) (1,2) (2,3); the last one closes the cycle.
        let c4 = cycle(4).unwrap();
        let mut t = minimum_spanning_tree(&c4, |_, _| 1).unwrap();
        t.sort();
        assert_eq!(t, vec![(0, 1), (0, 3), (1, 2)]);

        let t = minimum_spanning_tree(&c4, |u, v| if u == 0 || v == 0 { 5 } else { 1 }).unwrap();
        assert_eq!(t.iter().filter(|&&(u, v)| u == 0 || v == 0).count(), 1);

        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(minimum_spanning_tree(&disconnected, |_, _| 1).is_err());
    }

    #[test]
    fn min_r1_examples() {
        let (r, o) = min_r1_covering_sequence(&path(4).unwrap()).unwrap();
        assert_eq!(r.first(), 3);
        assert_eq!(r, seq(&[3, 2, 1]));
        assert!(is_vertex_covering_sequence(&path(4).unwrap(), &o, &r).unwrap());

        let (r, _) = min_r1_covering_sequence(&complete(3).unwrap()).unwrap();
        assert_eq!(r, seq(&[1, 1]));

        let c4 = cycle(4).unwrap();
        let (r, o) = min_r1_covering_sequence(&c4).unwrap();
        assert_eq!(r.first(), 2);
        assert!(is_vertex_covering_sequence(&c4, &o, &r).unwrap());

        let (r, o) = min_r1_covering_sequence(&star(3).unwrap()).unwrap();
        assert_eq!(r.first(), 2);
        assert!(is_vertex_covering_sequence(&star(3).unwrap(), &o, &r).unwrap());

        assert!(min_r1_covering_sequence(&Graph::empty(1)).is_err());
        assert!(min_r1_covering_sequence(&Graph::empty(2)).is_err());
    }

    #[test]
    fn family_examples() {
        let k3 = complete(3).unwrap();
        let p3 = path(3).unwrap();
        let k2 = complete(2).unwrap();
        assert_eq!(family_covering_sequence(std::slice::from_ref(&k3)).unwrap(), seq(&[1, 1]));

        let fam = family_covering_sequence(&[k3.clone(), p3.clone()]).unwrap();
        assert_eq!(fam, seq(&[2, 1]));
        assert!(admits(&k3, &fam).unwrap().is_some());
        assert!(admits(&p3, &fam).unwrap().is_some());

        let fam = family_covering_sequence(&[k2.clone(), k3.clone()]).unwrap();
        assert_eq!(fam, seq(&[1, 1]));
        assert_eq!(min_r1_covering_sequence(&k2).unwrap().0.padded(2), seq(&[1, 0]));
        assert!(is_vertex_covering_sequence(&k2, &order(&[0, 1]), &seq(&[1])).unwrap());

        assert!(family_covering_sequence(&[]).is_err());
    }

    #[test]
    fn exhaustive_default_and_algorithm_soundness() {
        for k in 2..=6 {
            let def = default_covering_sequence(k).unwrap();
            for h in enumerate_connected_graphs(k).unwrap() {
                assert!(admits(&h, &def).unwrap().is_some());
                let (r, o) = min_r1_covering_sequence(&h).unwrap();
                assert!(is_vertex_covering_sequence(&h, &o, &r).unwrap(), "{h:?}");
                assert!(r.first() < k);
            }
        }
    }

    #[test]
    fn edge_superset_keeps_vertex_covering_sequences() {
        // Proposition: adding edges never increases a covering distance.
        for h in enumerate_connected_graphs(5).unwrap() {
            let (r, o) = min_r1_covering_sequence(&h).unwrap();
            let missing: Vec<_> = (0..5)
                .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
                .filter(|&(u, v)| !h.has_edge(u, v))
                .collect();
            for (u, v) in missing {
                let mut g = h.clone();
                g.add_edge(u, v).unwrap();
                assert!(is_vertex_covering_sequence(&g, &o, &r).unwrap());
            }
        }
    }

    #[test]
    fn tight_covering_sequences_can_increase() {
        // Some small graph gets a covering sequence that goes up somewhere.
        let mut found = None;
        'outer: for k in 4..=6 {
            for h in enumerate_connected_graphs(k).unwrap() {
                let (r, o) = min_r1_covering_sequence(&h).unwrap();
                if r.radii().windows(2).any(|w| w[0] < w[1]) {
                    found = Some((h, r, o));
                    break 'outer;
                }
            }
        }
        let (h, r, o) = found.expect("a non-monotone covering sequence on <= 6 nodes");
        assert!(is_vertex_covering_sequence(&h, &o, &r).unwrap());
    }
}
