//! 1-WL color refinement.
//!
//! A color is the SHA-256 of its derivation: initial colors hash the node
//! attribute, refined colors hash the previous color followed by the sorted
//! neighbor colors. Color ids therefore depend only on how a color was
//! derived, and histograms of different graphs can be compared directly.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorId(pub [u8; 32]);

impl ColorId {
    fn initial(attr: u64) -> ColorId {
        let mut h = Sha256::new();
        h.update(b"wl:init");
        h.update(attr.to_be_bytes());
        ColorId(h.finalize().into())
    }

    fn refined(own: ColorId, neighbors: &[ColorId]) -> ColorId {
        let mut h = Sha256::new();
        h.update(b"wl:step");
        h.update(own.0);
        h.update((neighbors.len() as u64).to_be_bytes());
        for c in neighbors {
            h.update(c.0);
        }
        ColorId(h.finalize().into())
    }
}

pub type Histogram = BTreeMap<ColorId, usize>;

/// Colorings after each round; entry 0 is the initial attribute coloring and
/// the last entry is the first stable one.
pub fn wl_rounds(g: &Graph) -> Vec<Vec<ColorId>> {
    let n = g.node_count();
    let mut rounds = vec![g.attributes().iter().map(|&x| ColorId::initial(x)).collect::<Vec<_>>()];
    for _ in 0..n {
        let prev = rounds.last().expect("nonempty");
        let next: Vec<ColorId> = (0..n)
            .map(|v| {
                let mut ns: Vec<ColorId> = g.neighbors(v).iter().map(|&u| prev[u]).collect();
                ns.sort_unstable();
                ColorId::refined(prev[v], &ns)
            })
            .collect();
        if class_count(&next) == class_count(prev) {
            break;
        }
        rounds.push(next);
    }
    rounds
}

fn class_count(colors: &[ColorId]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Histogram of the stable coloring.
pub fn wl_refine(g: &Graph) -> Histogram {
    let rounds = wl_rounds(g);
    let mut hist = Histogram::new();
    for &c in rounds.last().expect("nonempty") {
        *hist.entry(c).or_insert(0) += 1;
    }
    hist
}

pub fn wl_distinguish(g1: &Graph, g2: &Graph) -> bool {
    wl_refine(g1) != wl_refine(g2)
}
