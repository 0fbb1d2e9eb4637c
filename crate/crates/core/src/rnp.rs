//! Recursive neighborhood pooling with exact injective aggregation.
//!
//! For every node `v` the encoder takes the radius-`r_1` ball around `v`,
//! drops `v`, marks each remaining node with whether it was adjacent to `v`,
//! and encodes that subgraph recursively with the remaining radii. The node's
//! value is `(own feature, multiset of the sub-encodings)`; at the last level
//! the multiset holds the marked features directly. Aggregation is the
//! canonical multiset serialization of [`Encoding`], so it is injective.

use crate::covering::CoveringSequence;
use crate::encoding::{Encoding, MarkedFeature};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, neighborhood, Graph};
use crate::par::Strategy;

/// Node-update instrumentation for one encoding run.
///
/// Counters from independent runs (or workers) combine with [`merge`],
/// which is order-independent.
///
/// [`merge`]: UpdateCounter::merge
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateCounter {
    /// Node encodings computed, over all recursion contexts.
    pub invocations: u64,
    /// `updates_per_level[d]`: encodings computed at recursion depth `d`.
    pub updates_per_level: Vec<u64>,
    /// `max_context_per_level[d]`: largest graph encoded at depth `d`.
    pub max_context_per_level: Vec<usize>,
}

impl UpdateCounter {
    pub fn merge(&mut self, other: &UpdateCounter) {
        self.invocations += other.invocations;
        merge_slots(&mut self.updates_per_level, &other.updates_per_level, |a, b| a + b);
        merge_slots(&mut self.max_context_per_level, &other.max_context_per_level, usize::max);
    }

    fn record_context(&mut self, depth: usize, size: usize) {
        if self.max_context_per_level.len() <= depth {
            self.max_context_per_level.resize(depth + 1, 0);
            self.updates_per_level.resize(depth + 1, 0);
        }
        self.max_context_per_level[depth] = self.max_context_per_level[depth].max(size);
    }

    fn tick(&mut self, depth: usize) {
        self.invocations += 1;
        self.updates_per_level[depth] += 1;
    }
}

fn merge_slots<T: Copy + Default>(dst: &mut Vec<T>, src: &[T], f: impl Fn(T, T) -> T) {
    if dst.len() < src.len() {
        dst.resize(src.len(), T::default());
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f(*d, s);
    }
}

#[derive(Clone, Debug)]
pub struct NodeEncodings {
    pub encodings: Vec<Encoding>,
    pub counter: UpdateCounter,
}

/// Initial features: one attribute leaf per node.
pub fn attribute_features(g: &Graph) -> Vec<Encoding> {
    g.attributes().iter().map(|&x| Encoding::attribute(x)).collect()
}

pub fn rnp_encode_nodes(g: &Graph, features: &[Encoding], radii: &CoveringSequence) -> Result<NodeEncodings> {
    rnp_encode_nodes_with(g, features, radii, Strategy::default())
}

/// As [`rnp_encode_nodes`]; `strategy` controls the top-level per-node loop.
pub fn rnp_encode_nodes_with(
    g: &Graph,
    features: &[Encoding],
    radii: &CoveringSequence,
    strategy: Strategy,
) -> Result<NodeEncodings> {
    if radii.is_empty() {
        return Err(Error::invalid("radii must be nonempty"));
    }
    if features.len() != g.node_count() {
        return Err(Error::invalid(format!(
            "{} features for {} nodes",
            features.len(),
            g.node_count()
        )));
    }
    let per_node = strategy.map_range(g.node_count(), |v| {
        let mut counter = UpdateCounter::default();
        counter.record_context(0, g.node_count());
        let enc = encode_node(g, features, radii.radii(), v, 0, &mut counter);
        (enc, counter)
    });
    let mut counter = UpdateCounter::default();
    counter.record_context(0, g.node_count());
    let mut encodings = Vec::with_capacity(per_node.len());
    for (enc, c) in per_node {
        encodings.push(enc);
        counter.merge(&c);
    }
    Ok(NodeEncodings { encodings, counter })
}

fn encode_level(g: &Graph, features: &[Encoding], radii: &[usize], depth: usize, counter: &mut UpdateCounter) -> Vec<Encoding> {
    counter.record_context(depth, g.node_count());
    (0..g.node_count())
        .map(|v| encode_node(g, features, radii, v, depth, counter))
        .collect()
}

fn encode_node(
    g: &Graph,
    features: &[Encoding],
    radii: &[usize],
    v: usize,
    depth: usize,
    counter: &mut UpdateCounter,
) -> Encoding {
    counter.tick(depth);
    let ball = neighborhood(g, v, radii[0]).expect("v in range").without(v);
    let (sub, map) = induced_subgraph(g, &ball).expect("ball within graph");
    let marked: Vec<Encoding> = map
        .old_indices()
        .iter()
        .map(|&u| {
            MarkedFeature {
                base: features[u].clone(),
                mark: g.has_edge(u, v),
            }
            .encode()
        })
        .collect();
    let children = if radii.len() == 1 {
        marked
    } else {
        encode_level(&sub, &marked, &radii[1..], depth + 1, counter)
    };
    Encoding::node(&features[v], children)
}

#[derive(Clone, Debug)]
pub struct GraphEncoding {
    pub encoding: Encoding,
    pub counter: UpdateCounter,
}

/// Readout over all node encodings, starting from attribute leaves.
pub fn rnp_encode_graph(g: &Graph, radii: &CoveringSequence) -> Result<Encoding> {
    Ok(rnp_encode_graph_counted(g, radii, Strategy::default())?.encoding)
}

pub fn rnp_encode_graph_counted(g: &Graph, radii: &CoveringSequence, strategy: Strategy) -> Result<GraphEncoding> {
    let nodes = rnp_encode_nodes_with(g, &attribute_features(g), radii, strategy)?;
    Ok(GraphEncoding {
        encoding: Encoding::readout(nodes.encodings),
        counter: nodes.counter,
    })
}

/// Encodes a batch of graphs; output order follows input order.
pub fn rnp_encode_many(graphs: &[Graph], radii: &CoveringSequence, strategy: Strategy) -> Result<Vec<Encoding>> {
    strategy
        .map(graphs, |g| {
            rnp_encode_graph_counted(g, radii, Strategy::Sequential).map(|e| e.encoding)
        })
        .into_iter()
        .collect()
}

/// Whether the two graphs receive different encodings.
pub fn distinguish(g1: &Graph, g2: &Graph, radii: &CoveringSequence) -> Result<bool> {
    Ok(rnp_encode_graph(g1, radii)? != rnp_encode_graph(g2, radii)?)
}

/// `n * c^t` with `c` the largest closed `r_1`-ball and `t` the number of
/// radii. Saturates at `u128::MAX`.
pub fn update_bound(g: &Graph, radii: &CoveringSequence) -> u128 {
    let c = (0..g.node_count())
        .map(|v| neighborhood(g, v, radii.first()).expect("in range").len())
        .max()
        .unwrap_or(0) as u128;
    let tau = u32::try_from(radii.len()).unwrap_or(u32::MAX);
    (g.node_count() as u128).saturating_mul(c.saturating_pow(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodingView;
    use crate::generators::{complete, cycle, figure2_pair, path};

    fn radii(r: &[usize]) -> CoveringSequence {
        CoveringSequence::new(r.to_vec()).unwrap()
    }

    #[test]
    fn isolated_nodes() {
        let g = Graph::empty(5);
        let out = rnp_encode_nodes(&g, &attribute_features(&g), &radii(&[1])).unwrap();
        assert_eq!(out.counter.invocations, 5);
        for enc in &out.encodings {
            assert_eq!(
                enc.view().unwrap(),
                EncodingView::Node { own: Encoding::attribute(0), children: vec![] }
            );
        }
        assert_eq!(update_bound(&g, &radii(&[1])), 5);
    }

    #[test]
    fn symmetric_edge() {
        let g = complete(2).unwrap();
        let out = rnp_encode_nodes(&g, &attribute_features(&g), &radii(&[1])).unwrap();
        assert_eq!(out.encodings[0], out.encodings[1]);
    }

    #[test]
    fn path_center_differs_from_endpoints() {
        let g = path(3).unwrap();
        let out = rnp_encode_nodes(&g, &attribute_features(&g), &radii(&[1])).unwrap();
        assert_eq!(out.encodings[0], out.encodings[2]);
        assert_ne!(out.encodings[0], out.encodings[1]);
        let EncodingView::Node { children, .. } = out.encodings[1].view().unwrap() else {
            panic!("node expected");
        };
        assert_eq!(children.len(), 2);
    }

    #[test]
    fn marks_distinguish_ball_members() {
        // With radius 2 on P3, an endpoint sees the center (adjacent) and the
        // far endpoint (not adjacent).
        let g = path(3).unwrap();
        let out = rnp_encode_nodes(&g, &attribute_features(&g), &radii(&[2])).unwrap();
        let EncodingView::Node { children, .. } = out.encodings[0].view().unwrap() else {
            panic!("node expected");
        };
        let marks: Vec<bool> = children
            .iter()
            .map(|c| match c.view().unwrap() {
                EncodingView::Marked(m) => m.mark,
                other => panic!("{other:?}"),
            })
            .collect();
        assert_eq!(marks.iter().filter(|&&m| m).count(), 1);
        assert_eq!(marks.len(), 2);
    }

    #[test]
    fn empty_radii_rejected() {
        let g = path(3).unwrap();
        let bad = CoveringSequence::new(vec![]);
        assert!(bad.is_err());
        assert!(rnp_encode_nodes(&g, &attribute_features(&g)[..2], &radii(&[1])).is_err());
    }

    #[test]
    fn figure2_pair_separation() {
        let (c6, two_c3) = figure2_pair();
        assert!(distinguish(&c6, &two_c3, &radii(&[1, 1])).unwrap());
        let relabeled = c6.relabeled(&[3, 5, 0, 1, 4, 2]).unwrap();
        assert_eq!(
            rnp_encode_graph(&c6, &radii(&[1, 1])).unwrap(),
            rnp_encode_graph(&relabeled, &radii(&[1, 1])).unwrap()
        );
    }

    #[test]
    fn figure2_single_level_snapshot() {
        // Regression snapshot: a single level only sees the marked features of
        // ball members, not the edges among them, so both graphs give every
        // node (0, {{(0,1), (0,1)}}).
        let (c6, two_c3) = figure2_pair();
        assert!(!distinguish(&c6, &two_c3, &radii(&[1])).unwrap());
    }

    #[test]
    fn k4_vs_k4_minus_edge() {
        let k4 = complete(4).unwrap();
        let mut k4e = k4.clone();
        k4e.remove_edge(0, 1);
        assert!(distinguish(&k4, &k4e, &radii(&[1])).unwrap());
    }

    #[test]
    fn bounds() {
        assert_eq!(update_bound(&complete(4).unwrap(), &radii(&[1, 1])), 64);
        assert_eq!(update_bound(&cycle(6).unwrap(), &radii(&[2, 1])), 150);
    }

    #[test]
    fn radius_zero_levels_are_no_ops() {
        let g = cycle(5).unwrap();
        let out = rnp_encode_nodes(&g, &attribute_features(&g), &radii(&[2, 0])).unwrap();
        // Level 2 encodes each 4-node ball with radius 0: one update per node.
        assert_eq!(out.counter.updates_per_level, vec![5, 20]);
    }

    #[test]
    fn counter_merge() {
        let mut a = UpdateCounter { invocations: 3, updates_per_level: vec![1, 2], max_context_per_level: vec![5, 2] };
        let b = UpdateCounter { invocations: 4, updates_per_level: vec![1, 1, 2], max_context_per_level: vec![5, 3, 1] };
        a.merge(&b);
        assert_eq!(a.invocations, 7);
        assert_eq!(a.updates_per_level, vec![2, 3, 2]);
        assert_eq!(a.max_context_per_level, vec![5, 3, 1]);
    }

    #[test]
    fn strategies_agree() {
        let g = crate::generators::erdos_renyi(12, 0.3, 5).unwrap();
        let r = radii(&[2, 1]);
        let s = rnp_encode_graph_counted(&g, &r, Strategy::Sequential).unwrap();
        let p = rnp_encode_graph_counted(&g, &r, Strategy::Parallel).unwrap();
        assert_eq!(s.encoding, p.encoding);
        assert_eq!(s.counter, p.counter);
    }
}
