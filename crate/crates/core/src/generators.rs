//! Seeded graph families.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), a
//! counter-based 64-bit-seeded generator with independent streams. A graph is
//! fully determined by `(seed, stream)` and the generator parameters:
//! [`seeded_rng`] builds the generator with `ChaCha8Rng::seed_from_u64(seed)`
//! and then selects `stream`. The `rand`/`rand_chacha` versions are pinned so
//! the byte output stays fixed.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{canonical_code, Graph};

/// Largest node count accepted by [`enumerate_connected_graphs`].
pub const ENUMERATION_MAX_NODES: usize = 6;

const PAIRING_MAX_ATTEMPTS: usize = 100_000;

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// G(n, p): every pair `u < v`, visited in lexicographic order, is an edge
/// with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    erdos_renyi_with(n, p, &mut seeded_rng(seed, 0))
}

pub fn erdos_renyi_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Pairing-model `d`-regular graph (resampled until simple) with `deletions`
/// distinct uniformly chosen edges removed afterwards.
pub fn random_regular_perturbed(n: usize, d: usize, deletions: usize, seed: u64) -> Result<Graph> {
    random_regular_perturbed_with(n, d, deletions, &mut seeded_rng(seed, 0))
}

pub fn random_regular_perturbed_with<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    deletions: usize,
    rng: &mut R,
) -> Result<Graph> {
    let g = random_regular_with(n, d, rng)?;
    let edges: Vec<_> = g.edges().collect();
    if deletions > edges.len() {
        return Err(Error::invalid(format!(
            "cannot delete {deletions} edges from a graph with {}",
            edges.len()
        )));
    }
    let mut out = g;
    for i in index::sample(rng, edges.len(), deletions).into_vec() {
        let (u, v) = edges[i];
        out.remove_edge(u, v);
    }
    Ok(out)
}

pub fn random_regular_with<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    if d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "no simple {d}-regular graph on {n} nodes (need d < n and n*d even)"
        )));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_MAX_ATTEMPTS {
        points.shuffle(rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks_exact(2) {
            // Self-loop or repeated pair: reject the whole pairing.
            if g.add_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(Error::invalid(format!(
        "pairing model found no simple {d}-regular graph on {n} nodes in {PAIRING_MAX_ATTEMPTS} attempts"
    )))
}

/// Ascending primes below `x` (sieve of Eratosthenes).
pub fn primes_below(x: usize) -> Vec<usize> {
    if x < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; x];
    let mut primes = Vec::new();
    for i in 2..x {
        if !composite[i] {
            primes.push(i);
            for j in (i * i..x).step_by(i) {
                composite[j] = true;
            }
        }
    }
    primes
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Complete multipartite graph with one part per prime in `parts`, padded with
/// isolated nodes up to `n`. Its `K_k` count is the product of the parts.
///
/// Part `i` occupies a contiguous index range in the order given; filler nodes
/// come last.
pub fn prime_partite(parts: &[usize], n: usize) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::invalid("prime_partite needs at least one part"));
    }
    if let Some(&p) = parts.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("part sizes must be distinct primes"));
    }
    let total: usize = parts.iter().sum();
    if total > n {
        return Err(Error::invalid(format!("parts need {total} nodes but n = {n}")));
    }

    let mut part_of = Vec::with_capacity(total);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::empty(n);
    for u in 0..total {
        for v in u + 1..total {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::invalid(format!("cycle needs k >= 3, got {k}")));
    }
    let edges: Vec<_> = (0..k).map(|i| (i.min((i + 1) % k), i.max((i + 1) % k))).collect();
    Graph::from_edges(k, &edges)
}

pub fn complete(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("complete graph needs k >= 1"));
    }
    let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Graph::from_edges(k, &edges)
}

pub fn path(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("path needs k >= 1"));
    }
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_edges(k, &edges)
}

/// `K_{1,k}`: node 0 is the center.
pub fn star(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("star needs k >= 1 leaves"));
    }
    let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    Graph::from_edges(k + 1, &edges)
}

/// `(C6, 2*C3)`: both 2-regular on six nodes, hence 1-WL equivalent, with
/// triangle counts 0 and 2.
pub fn figure2_pair() -> (Graph, Graph) {
    let c6 = cycle(6).expect("valid size");
    let c3 = cycle(3).expect("valid size");
    (c6, c3.disjoint_union(&c3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternName {
    Cycle(usize),
    Complete(usize),
    Path(usize),
    Star(usize),
}

impl PatternName {
    pub fn build(self) -> Result<Graph> {
        match self {
            PatternName::Cycle(k) => cycle(k),
            PatternName::Complete(k) => complete(k),
            PatternName::Path(k) => path(k),
            PatternName::Star(k) => star(k),
        }
    }
}

/// One representative per isomorphism class of connected unattributed graphs
/// on exactly `k` nodes, ordered by first occurrence over adjacency masks.
pub fn enumerate_connected_graphs(k: usize) -> Result<Vec<Graph>> {
    Error::check_size("enumerated node count", k, ENUMERATION_MAX_NODES)?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(k, &edges)?;
        if g.is_connected() && seen.insert(canonical_code(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        assert_eq!(erdos_renyi(8, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(8, 1.0, 3).unwrap(), complete(8).unwrap());
        assert_eq!(erdos_renyi(10, 0.3, 7).unwrap(), erdos_renyi(10, 0.3, 7).unwrap());
        assert_ne!(erdos_renyi(10, 0.3, 7).unwrap(), erdos_renyi(10, 0.3, 8).unwrap());
        assert!(erdos_renyi(4, 1.5, 0).is_err());
    }

    #[test]
    fn regular_graphs() {
        assert_eq!(random_regular_perturbed(10, 0, 0, 1).unwrap(), Graph::empty(10));
        for seed in 0..20 {
            let g = random_regular_with(20, 3, &mut seeded_rng(seed, 0)).unwrap();
            assert!((0..20).all(|v| g.degree(v) == 3));
            let h = random_regular_perturbed(20, 3, 20, seed).unwrap();
            assert_eq!(h.edge_count(), 30 - 20);
        }
        assert!(random_regular_perturbed(5, 3, 0, 0).is_err());
        assert!(random_regular_perturbed(4, 4, 0, 0).is_err());
        assert!(random_regular_perturbed(4, 3, 7, 0).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(primes_below(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_below(3), vec![2]);
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_below(2), Vec::<usize>::new());
    }

    #[test]
    fn prime_partite_shape() {
        let g = prime_partite(&[2, 3], 6).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(5), 0);
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(are_isomorphic(&g, &k23.disjoint_union(&Graph::empty(1))));

        assert!(prime_partite(&[2, 4], 10).is_err());
        assert!(prime_partite(&[3, 3], 10).is_err());
        assert!(prime_partite(&[5, 7], 10).is_err());
        assert!(prime_partite(&[], 10).is_err());
    }

    #[test]
    fn patterns() {
        assert!(are_isomorphic(&cycle(3).unwrap(), &complete(3).unwrap()));
        let s = star(3).unwrap();
        assert_eq!((s.node_count(), s.edge_count()), (4, 3));
        let (a, b) = figure2_pair();
        for g in [&a, &b] {
            assert_eq!(g.node_count(), 6);
            assert!((0..6).all(|v| g.degree(v) == 2));
        }
        assert!(cycle(2).is_err());
        assert!(star(0).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn connected_class_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|k| enumerate_connected_graphs(k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected_graphs(7).is_err());
    }
}
