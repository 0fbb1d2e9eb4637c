//! Canonical, injectively constructed byte-tree values.
//!
//! Wire layout (all integers big-endian):
//!
//! ```text
//! Leaf     0x00  u32 len  bytes
//! Marked   0x01  mark(0|1)  u32 len  base
//! Node     0x02  u32 len  own  u32 count  (u32 len  child)*
//! Readout  0x03  u32 count  (u32 len  child)*
//! ```
//!
//! Children are sorted by their bytes, so a child list is a canonical form of
//! the multiset it holds. Because every part is length-prefixed, the bytes
//! determine the tree uniquely and two encodings are equal exactly when their
//! trees are.

use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const TAG_LEAF: u8 = 0x00;
const TAG_MARKED: u8 = 0x01;
const TAG_NODE: u8 = 0x02;
const TAG_READOUT: u8 = 0x03;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Encoding(Arc<[u8]>);

impl Encoding {
    pub fn leaf(bytes: &[u8]) -> Encoding {
        let mut out = Vec::with_capacity(5 + bytes.len());
        out.push(TAG_LEAF);
        push_framed(&mut out, bytes);
        Encoding(out.into())
    }

    /// Leaf holding a node attribute as 8 big-endian bytes.
    pub fn attribute(x: u64) -> Encoding {
        Encoding::leaf(&x.to_be_bytes())
    }

    /// `(own, {{children}})`. The order of `children` is irrelevant.
    pub fn node(own: &Encoding, children: Vec<Encoding>) -> Encoding {
        let mut out = vec![TAG_NODE];
        push_framed(&mut out, own.as_bytes());
        push_multiset(&mut out, children);
        Encoding(out.into())
    }

    /// Graph-level readout of the multiset of node encodings.
    pub fn readout(children: Vec<Encoding>) -> Encoding {
        let mut out = vec![TAG_READOUT];
        push_multiset(&mut out, children);
        Encoding(out.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lowercase hex SHA-256 of the bytes, for display only.
    pub fn digest_hex(&self) -> String {
        Sha256::digest(&self.0)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Decodes one level of structure.
    pub fn view(&self) -> Result<EncodingView> {
        let mut r = Reader { bytes: &self.0, pos: 0 };
        let view = match r.byte()? {
            TAG_LEAF => EncodingView::Leaf(r.framed()?.to_vec()),
            TAG_MARKED => {
                let mark = match r.byte()? {
                    0 => false,
                    1 => true,
                    b => return Err(malformed(format!("mark byte {b}"))),
                };
                EncodingView::Marked(MarkedFeature {
                    base: Encoding(r.framed()?.into()),
                    mark,
                })
            }
            TAG_NODE => {
                let own = Encoding(r.framed()?.into());
                EncodingView::Node {
                    own,
                    children: r.multiset()?,
                }
            }
            TAG_READOUT => EncodingView::Readout(r.multiset()?),
            t => return Err(malformed(format!("unknown tag {t}"))),
        };
        if r.pos != self.0.len() {
            return Err(malformed("trailing bytes".into()));
        }
        Ok(view)
    }
}

impl fmt::Debug for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Encoding({} bytes, {})", self.len(), &self.digest_hex()[..16])
    }
}

/// A feature paired with the "adjacent to the removed center" bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedFeature {
    pub base: Encoding,
    pub mark: bool,
}

impl MarkedFeature {
    pub fn encode(&self) -> Encoding {
        let mut out = vec![TAG_MARKED, u8::from(self.mark)];
        push_framed(&mut out, self.base.as_bytes());
        Encoding(out.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EncodingView {
    Leaf(Vec<u8>),
    Marked(MarkedFeature),
    Node { own: Encoding, children: Vec<Encoding> },
    Readout(Vec<Encoding>),
}

fn push_framed(out: &mut Vec<u8>, bytes: &[u8]) {
    let len = u32::try_from(bytes.len()).expect("encoding exceeds 4 GiB");
    out.extend_from_slice(&len.to_be_bytes());
    out.extend_from_slice(bytes);
}

fn push_multiset(out: &mut Vec<u8>, mut children: Vec<Encoding>) {
    children.sort_unstable();
    let count = u32::try_from(children.len()).expect("too many children");
    out.extend_from_slice(&count.to_be_bytes());
    for c in &children {
        push_framed(out, c.as_bytes());
    }
}

fn malformed(msg: String) -> Error {
    Error::invalid(format!("malformed encoding: {msg}"))
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| malformed("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn byte(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<usize> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]) as usize)
    }

    fn framed(&mut self) -> Result<&'a [u8]> {
        let len = self.u32()?;
        self.take(len)
    }

    fn multiset(&mut self) -> Result<Vec<Encoding>> {
        let count = self.u32()?;
        let children = (0..count)
            .map(|_| self.framed().map(|c| Encoding(c.into())))
            .collect::<Result<Vec<_>>>()?;
        if children.windows(2).any(|w| w[0] > w[1]) {
            return Err(malformed("children not sorted".into()));
        }
        Ok(children)
    }
}
