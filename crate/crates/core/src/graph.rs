//! Attributed simple undirected graphs.
//!
//! Nodes are `0..n`; every node carries a nonnegative integer attribute
//! (default 0). Values are immutable once built and every operation here is a
//! pure function, so graphs can be shared freely across threads.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest graph accepted by [`canonical_code`].
pub const CANONICAL_CODE_MAX_NODES: usize = 8;

/// Shortest-path distance; `None` stands for INFINITY (different components).
pub type Distance = Option<usize>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    attrs: Vec<u64>,
}

impl Graph {
    /// `n` isolated nodes, all with attribute 0.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            attrs: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_attributes(mut self, attrs: Vec<u64>) -> Result<Self> {
        if attrs.len() != self.node_count() {
            return Err(Error::invalid(format!(
                "expected {} attributes, got {}",
                self.node_count(),
                attrs.len()
            )));
        }
        self.attrs = attrs;
        Ok(self)
    }

    /// Adds the undirected edge `{u, v}`. Self-loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.node_count();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("edge ({u}, {v}) out of range for {n} nodes")));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at node {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::invalid(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Removes `{u, v}` if present; returns whether it was.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.node_count() || v >= self.node_count() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn set_attribute(&mut self, v: usize, x: u64) -> Result<()> {
        match self.attrs.get_mut(v) {
            Some(slot) => {
                *slot = x;
                Ok(())
            }
            None => Err(Error::invalid(format!("node {v} out of range"))),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn attribute(&self, v: usize) -> u64 {
        self.attrs[v]
    }

    pub fn attributes(&self) -> &[u64] {
        &self.attrs
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        n == 0 || bfs_distances(self, 0).iter().all(Option::is_some)
    }

    /// Returns the graph with node `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid("relabeling is not a permutation"));
        }
        let mut out = Graph::empty(n);
        for (u, v) in self.edges() {
            out.add_edge(perm[u], perm[v])?;
        }
        for (v, &x) in self.attrs.iter().enumerate() {
            out.attrs[perm[v]] = x;
        }
        Ok(out)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.node_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|ns| ns.iter().map(|v| v + off).collect()));
        let mut attrs = self.attrs.clone();
        attrs.extend_from_slice(&other.attrs);
        Graph { adj, attrs }
    }

    /// Bit `j` of entry `i` set iff `{i, j}` is an edge. Requires `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.node_count() <= 64);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }
}

/// A set of node indices, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set valid for a graph with `node_count` nodes.
    pub fn new(mut members: Vec<usize>, node_count: usize) -> Result<Self> {
        members.sort_unstable();
        if let Some(&v) = members.iter().find(|&&v| v >= node_count) {
            return Err(Error::invalid(format!("node {v} out of range for {node_count} nodes")));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate node in vertex set"));
        }
        Ok(VertexSet(members))
    }

    pub fn all(node_count: usize) -> Self {
        VertexSet((0..node_count).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }
}

/// Maps node indices of a host graph to indices of an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    to_new: Vec<Option<usize>>,
    to_old: Vec<usize>,
}

impl IndexMap {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.to_new.get(old).copied().flatten()
    }

    pub fn old_index(&self, new: usize) -> usize {
        self.to_old[new]
    }

    /// Old indices in new-index order.
    pub fn old_indices(&self) -> &[usize] {
        &self.to_old
    }
}

/// The subgraph induced by `s`. New indices follow ascending old-index order.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, IndexMap)> {
    let n = g.node_count();
    if let Some(&v) = s.members().last() {
        if v >= n {
            return Err(Error::invalid(format!("node {v} out of range for {n} nodes")));
        }
    }
    let mut to_new = vec![None; n];
    for (i, &v) in s.members().iter().enumerate() {
        to_new[v] = Some(i);
    }
    let adj = s
        .members()
        .iter()
        .map(|&v| g.neighbors(v).iter().filter_map(|&u| to_new[u]).collect())
        .collect();
    let attrs = s.members().iter().map(|&v| g.attribute(v)).collect();
    let map = IndexMap {
        to_new,
        to_old: s.members().to_vec(),
    };
    Ok((Graph { adj, attrs }, map))
}

/// Closed ball `{u : d(v, u) <= r}`.
pub fn neighborhood(g: &Graph, v: usize, r: usize) -> Result<VertexSet> {
    if v >= g.node_count() {
        return Err(Error::invalid(format!("node {v} out of range")));
    }
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut members = vec![v];
    let mut queue = VecDeque::from([v]);
    dist[v] = 0;
    while let Some(u) = queue.pop_front() {
        if dist[u] == r {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                members.push(w);
                queue.push_back(w);
            }
        }
    }
    members.sort_unstable();
    Ok(VertexSet(members))
}

pub(crate) fn bfs_distances(g: &Graph, src: usize) -> Vec<Distance> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::from([src]);
    dist[src] = Some(0);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.entries[u * self.n + v]
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `max_u d(u, v)`; `None` if some node is unreachable from `v`.
    pub fn eccentricity(&self, v: usize) -> Distance {
        (0..self.n).try_fold(0, |acc, u| self.get(u, v).map(|d| acc.max(d)))
    }
}

/// Unweighted all-pairs shortest paths, one BFS per source.
pub fn all_pairs_shortest_paths(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let entries = (0..n).flat_map(|s| bfs_distances(g, s)).collect();
    DistanceMatrix { n, entries }
}

fn sorted_signature(g: &Graph) -> Vec<(u64, usize)> {
    let mut sig: Vec<_> = (0..g.node_count()).map(|v| (g.attribute(v), g.degree(v))).collect();
    sig.sort_unstable();
    sig
}

/// Attribute-aware isomorphism test by backtracking over node maps.
///
/// Candidates for each node are restricted to nodes of `h` with the same
/// attribute and degree. Exponential in the worst case; intended for
/// pattern-sized graphs.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    if sorted_signature(g) != sorted_signature(h) {
        return false;
    }
    // Map high-degree nodes first; they constrain the search the most.
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut map = vec![usize::MAX; g.node_count()];
    let mut used = vec![false; h.node_count()];
    extend_isomorphism(g, h, &order, 0, &mut map, &mut used)
}

fn extend_isomorphism(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.node_count() {
        if used[w] || h.attribute(w) != g.attribute(v) || h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_isomorphism(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Canonical byte code: equal for two graphs iff they are isomorphic.
///
/// Layout: node count, then each position's attribute (u64 big-endian), then
/// the upper-triangle adjacency bits in column-major order packed MSB-first.
/// Positions are filled in ascending (attribute, degree) class order and the
/// code is the lexicographic minimum over all class-respecting orderings.
pub fn canonical_code(g: &Graph) -> Result<Vec<u8>> {
    let n = g.node_count();
    Error::check_size("canonical_code node count", n, CANONICAL_CODE_MAX_NODES)?;

    let signature = sorted_signature(g);

    let mut search = CanonSearch {
        g,
        signature: &signature,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run();
    let bits = search.best.unwrap_or_default();

    let mut code = Vec::with_capacity(1 + 8 * n + bits.len().div_ceil(8));
    code.push(n as u8);
    for &(attr, _) in &signature {
        code.extend_from_slice(&attr.to_be_bytes());
    }
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |b, (i, &bit)| b | ((bit as u8) << (7 - i)));
        code.push(byte);
    }
    Ok(code)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    signature: &'a [(u64, usize)],
    placed: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let pos = self.placed.len();
        if pos == self.g.node_count() {
            // Reaching here means the prefix never exceeded the best one.
            self.best = Some(self.bits.clone());
            return;
        }
        let class = self.signature[pos];
        for v in 0..self.g.node_count() {
            if self.used[v] || (self.g.attribute(v), self.g.degree(v)) != class {
                continue;
            }
            let mark = self.bits.len();
            self.bits
                .extend(self.placed.iter().map(|&u| self.g.has_edge(u, v)));
            let keep = match &self.best {
                Some(best) => self.bits[..] <= best[..self.bits.len()],
                None => true,
            };
            if keep {
                self.used[v] = true;
                self.placed.push(v);
                self.run();
                self.placed.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// Writes the line-oriented text format: `"<n> <m>"`, one `"<u> <v>"` line per
/// edge with `u < v`, then `"attr <u> <x>"` for every nonzero attribute.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.node_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for (v, &x) in g.attributes().iter().enumerate() {
        if x != 0 {
            writeln!(out, "attr {v} {x}").unwrap();
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let parse_num = |line: usize, tok: &str| -> Result<u64> {
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(perr(line, format!("expected a nonnegative integer, got {tok:?}")));
        }
        tok.parse::<u64>()
            .map_err(|e| perr(line, format!("integer {tok:?}: {e}")))
    };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing header line \"<n> <m>\"".into()))?;
    let toks: Vec<&str> = header.split(' ').collect();
    if toks.len() != 2 {
        return Err(perr(hline, "header must be \"<n> <m>\"".into()));
    }
    let n = parse_num(hline, toks[0])? as usize;
    let m = parse_num(hline, toks[1])? as usize;

    let mut g = Graph::empty(n);
    let mut edges_read = 0;
    for (line, text) in lines {
        let toks: Vec<&str> = text.split(' ').collect();
        match toks.as_slice() {
            ["attr", u, x] => {
                let u = parse_num(line, u)? as usize;
                let x = parse_num(line, x)?;
                g.set_attribute(u, x).map_err(|e| perr(line, e.to_string()))?;
            }
            [u, v] => {
                if edges_read == m {
                    return Err(perr(line, format!("more than {m} edge lines")));
                }
                let u = parse_num(line, u)? as usize;
                let v = parse_num(line, v)? as usize;
                if u == v {
                    return Err(perr(line, format!("self-loop at node {u}")));
                }
                if u > v {
                    return Err(perr(line, format!("edge endpoints must satisfy u < v, got {u} {v}")));
                }
                g.add_edge(u, v).map_err(|e| perr(line, e.to_string()))?;
                edges_read += 1;
            }
            _ => return Err(perr(line, format!("unrecognized line {text:?}"))),
        }
    }
    if edges_read != m {
        return Err(perr(hline, format!("header declares {m} edges, found {edges_read}")));
    }
    Ok(g)
}
