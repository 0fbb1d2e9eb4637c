//! Exact brute-force subgraph counting.
//!
//! These counts are the ground truth the encoder is checked against, so they
//! are computed by plain enumeration with only exactness-preserving pruning.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Either;

use crate::error::{Error, Result};
use crate::graph::{canonical_code, Graph};
use crate::par::Strategy;

pub const PATTERN_MAX_NODES: usize = 8;
pub const HOST_MAX_NODES: usize = 64;
pub const ALL_PATTERNS_MAX_K: usize = 5;
pub const ALL_PATTERNS_MAX_HOST: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMode {
    Induced,
    NonInduced,
}

impl CountMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMode::Induced => "induced",
            CountMode::NonInduced => "noninduced",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induced" => Ok(CountMode::Induced),
            "noninduced" => Ok(CountMode::NonInduced),
            other => Err(Error::invalid(format!("unknown count mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    pub mode: CountMode,
}

pub fn count(g: &Graph, h: &Graph, mode: CountMode) -> Result<CountResult> {
    let count = match mode {
        CountMode::Induced => count_induced(g, h)?,
        CountMode::NonInduced => count_noninduced(g, h)?,
    };
    Ok(CountResult { count, mode })
}

fn check_limits(g: &Graph, h: &Graph) -> Result<()> {
    Error::check_size("pattern node count", h.node_count(), PATTERN_MAX_NODES)?;
    Error::check_size("host node count", g.node_count(), HOST_MAX_NODES)
}

/// Number of `k`-subsets `S` of `g` with `g(S)` isomorphic to `h`, attributes
/// included.
pub fn count_induced(g: &Graph, h: &Graph) -> Result<u64> {
    count_induced_with(g, h, Strategy::default())
}

pub fn count_induced_with(g: &Graph, h: &Graph, strategy: Strategy) -> Result<u64> {
    check_limits(g, h)?;
    let (n, k) = (g.node_count(), h.node_count());
    if k > n {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    let host = g.adjacency_masks();
    let pattern = PatternData::new(h);
    // Shard by the smallest member of the subset.
    let per_first = strategy.map_range(n - k + 1, |first| {
        let mut chosen = vec![first];
        let mut total = 0;
        induced_rec(g, &host, &pattern, &mut chosen, 1u64 << first, 0, &mut total);
        total
    });
    Ok(per_first.into_iter().sum())
}

struct PatternData {
    k: usize,
    edges: usize,
    adj: Vec<u64>,
    attrs: Vec<u64>,
    signature: Vec<(u64, u32)>,
}

impl PatternData {
    fn new(h: &Graph) -> Self {
        let adj = h.adjacency_masks();
        let attrs = h.attributes().to_vec();
        let mut signature: Vec<(u64, u32)> = (0..h.node_count())
            .map(|v| (attrs[v], adj[v].count_ones()))
            .collect();
        signature.sort_unstable();
        PatternData {
            k: h.node_count(),
            edges: h.edge_count(),
            adj,
            attrs,
            signature,
        }
    }
}

fn induced_rec(
    g: &Graph,
    host: &[u64],
    pattern: &PatternData,
    chosen: &mut Vec<usize>,
    set: u64,
    edges: usize,
    total: &mut u64,
) {
    if edges > pattern.edges {
        return;
    }
    if chosen.len() == pattern.k {
        if edges == pattern.edges && subset_matches(g, host, pattern, chosen, set) {
            *total += 1;
        }
        return;
    }
    let last = *chosen.last().expect("nonempty");
    let need = pattern.k - chosen.len();
    for v in last + 1..=g.node_count() - need {
        let added = (host[v] & set).count_ones() as usize;
        chosen.push(v);
        induced_rec(g, host, pattern, chosen, set | 1 << v, edges + added, total);
        chosen.pop();
    }
}

fn subset_matches(g: &Graph, host: &[u64], pattern: &PatternData, chosen: &[usize], set: u64) -> bool {
    let mut signature: Vec<(u64, u32)> = chosen
        .iter()
        .map(|&v| (g.attribute(v), (host[v] & set).count_ones()))
        .collect();
    signature.sort_unstable();
    if signature != pattern.signature {
        return false;
    }
    let mut map = vec![usize::MAX; pattern.k];
    let mut used = 0u64;
    match_rec(g, host, pattern, chosen, set, 0, &mut map, &mut used)
}

/// Maps pattern node `i` onto a member of `chosen`, keeping adjacency to all
/// earlier pattern nodes exact (edges and non-edges).
#[allow(clippy::too_many_arguments)]
fn match_rec(
    g: &Graph,
    host: &[u64],
    pattern: &PatternData,
    chosen: &[usize],
    set: u64,
    i: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if i == pattern.k {
        return true;
    }
    let degree = pattern.adj[i].count_ones();
    for &v in chosen {
        if *used >> v & 1 == 1
            || g.attribute(v) != pattern.attrs[i]
            || (host[v] & set).count_ones() != degree
        {
            continue;
        }
        let ok = (0..i).all(|j| (pattern.adj[i] >> j & 1 == 1) == (host[v] >> map[j] & 1 == 1));
        if ok {
            map[i] = v;
            *used |= 1 << v;
            if match_rec(g, host, pattern, chosen, set, i + 1, map, used) {
                return true;
            }
            *used &= !(1 << v);
        }
    }
    false
}

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to `h`:
/// injective edge-preserving, attribute-preserving maps `h -> g` divided by
/// the automorphism count of `h`.
pub fn count_noninduced(g: &Graph, h: &Graph) -> Result<u64> {
    count_noninduced_with(g, h, Strategy::default())
}

pub fn count_noninduced_with(g: &Graph, h: &Graph, strategy: Strategy) -> Result<u64> {
    check_limits(g, h)?;
    if h.node_count() > g.node_count() {
        return Ok(0);
    }
    let homs = injective_homomorphisms(g, h, strategy);
    let auts = automorphism_count(h);
    debug_assert_eq!(homs % auts, 0);
    Ok(homs / auts)
}

/// Automorphisms of `h` (attribute-preserving), by backtracking.
pub fn automorphism_count(h: &Graph) -> u64 {
    injective_homomorphisms(h, h, Strategy::Sequential)
}

fn injective_homomorphisms(g: &Graph, h: &Graph, strategy: Strategy) -> u64 {
    let k = h.node_count();
    if k == 0 {
        return 1;
    }
    let order = connectivity_order(h);
    // For each position, the earliest-placed neighbor (anchor) if any.
    let anchors: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| order[..i].iter().position(|&u| h.has_edge(u, v)))
        .collect();
    let search = HomSearch { g, h, order: &order, anchors: &anchors };
    let first = order[0];
    let per_root = strategy.map_range(g.node_count(), |root| {
        if g.attribute(root) != h.attribute(first) || g.degree(root) < h.degree(first) {
            return 0;
        }
        let mut images = vec![root];
        let mut used = vec![false; g.node_count()];
        used[root] = true;
        search.count(&mut images, &mut used)
    });
    per_root.into_iter().sum()
}

/// BFS order over each component in turn, so most nodes have an
/// already-placed neighbor when they are mapped.
fn connectivity_order(h: &Graph) -> Vec<usize> {
    let mut seen = vec![false; h.node_count()];
    let mut order = Vec::with_capacity(h.node_count());
    let mut roots: Vec<usize> = (0..h.node_count()).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for &w in h.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

struct HomSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    anchors: &'a [Option<usize>],
}

impl HomSearch<'_> {
    fn count(&self, images: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let i = images.len();
        if i == self.order.len() {
            return 1;
        }
        let v = self.order[i];
        let candidates = match self.anchors[i] {
            Some(a) => Either::Left(self.g.neighbors(images[a]).iter().copied()),
            None => Either::Right(0..self.g.node_count()),
        };
        let mut total = 0;
        for w in candidates {
            if used[w] || self.g.attribute(w) != self.h.attribute(v) || self.g.degree(w) < self.h.degree(v) {
                continue;
            }
            let edges_ok = self.order[..i]
                .iter()
                .zip(images.iter())
                .all(|(&u, &img)| !self.h.has_edge(u, v) || self.g.has_edge(img, w));
            if !edges_ok {
                continue;
            }
            used[w] = true;
            images.push(w);
            total += self.count(images, used);
            images.pop();
            used[w] = false;
        }
        total
    }
}

/// Histogram of induced `k`-node subgraph classes, keyed by canonical code.
/// Values sum to `C(n, k)`.
pub fn count_all_patterns(g: &Graph, k: usize) -> Result<BTreeMap<Vec<u8>, u64>> {
    count_all_patterns_with(g, k, Strategy::default())
}

pub fn count_all_patterns_with(g: &Graph, k: usize, strategy: Strategy) -> Result<BTreeMap<Vec<u8>, u64>> {
    Error::check_size("pattern size k", k, ALL_PATTERNS_MAX_K)?;
    Error::check_size("host node count", g.node_count(), ALL_PATTERNS_MAX_HOST)?;
    let n = g.node_count();
    let mut out = BTreeMap::new();
    if k > n {
        return Ok(out);
    }
    if k == 0 {
        out.insert(canonical_code(&Graph::empty(0))?, 1);
        return Ok(out);
    }
    let host = g.adjacency_masks();
    let shards = strategy.map_range(n - k + 1, |first| {
        let mut shard = AllPatterns {
            g,
            host: &host,
            k,
            cache: HashMap::new(),
            counts: BTreeMap::new(),
        };
        shard.rec(&mut vec![first]);
        shard.counts
    });
    for shard in shards {
        for (code, c) in shard {
            *out.entry(code).or_insert(0) += c;
        }
    }
    Ok(out)
}

struct AllPatterns<'a> {
    g: &'a Graph,
    host: &'a [u64],
    k: usize,
    // (attributes in subset order, pair-adjacency bits) -> canonical code
    cache: HashMap<(Vec<u64>, u32), Vec<u8>>,
    counts: BTreeMap<Vec<u8>, u64>,
}

impl AllPatterns<'_> {
    fn rec(&mut self, chosen: &mut Vec<usize>) {
        if chosen.len() == self.k {
            let attrs: Vec<u64> = chosen.iter().map(|&v| self.g.attribute(v)).collect();
            let mut bits = 0u32;
            let mut pairs = Vec::new();
            let mut bit = 0;
            for i in 0..self.k {
                for j in i + 1..self.k {
                    if self.host[chosen[i]] >> chosen[j] & 1 == 1 {
                        bits |= 1 << bit;
                        pairs.push((i, j));
                    }
                    bit += 1;
                }
            }
            let code = self
                .cache
                .entry((attrs.clone(), bits))
                .or_insert_with(|| {
                    let sub = Graph::from_edges(attrs.len(), &pairs)
                        .and_then(|s| s.with_attributes(attrs))
                        .expect("well-formed subset graph");
                    canonical_code(&sub).expect("k within canonical limit")
                })
                .clone();
            *self.counts.entry(code).or_insert(0) += 1;
            return;
        }
        let last = *chosen.last().expect("nonempty");
        let need = self.k - chosen.len();
        for v in last + 1..=self.g.node_count() - need {
            chosen.push(v);
            self.rec(chosen);
            chosen.pop();
        }
    }
}
