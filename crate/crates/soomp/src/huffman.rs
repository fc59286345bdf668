//! Adaptive Huffman entropy coding.
//!
//! Encoder and decoder grow the same code tree symbol by symbol, so no
//! table travels with the data. Unseen symbols are announced through an
//! escape leaf and then spelled out literally: 16 bits when the value fits
//! below `0xFFFF`, otherwise a 16-bit all-ones marker followed by the full
//! 32-bit value. After each symbol both sides run the same weight update,
//! swapping a node with the front of its equal-weight block before the
//! increment so frequent symbols drift toward short codes. Losslessness
//! rests only on the two sides running identical updates in lockstep, which
//! keeps the decoder honest even on adversarial byte streams: any
//! truncation surfaces as an error, never as a wrong-length output.
//!
//! Bits are packed most significant first; the final byte is zero-padded.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

const ESCAPE_MARKER: u32 = 0xFFFF;

struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    nbits: u8,
}

impl BitWriter {
    fn new() -> Self {
        Self { bytes: Vec::new(), acc: 0, nbits: 0 }
    }

    fn push_bit(&mut self, bit: bool) {
        self.acc = (self.acc << 1) | u8::from(bit);
        self.nbits += 1;
        if self.nbits == 8 {
            self.bytes.push(self.acc);
            self.acc = 0;
            self.nbits = 0;
        }
    }

    fn push_bits(&mut self, value: u64, count: u32) {
        for i in (0..count).rev() {
            self.push_bit((value >> i) & 1 == 1);
        }
    }

    fn finish(mut self) -> Vec<u8> {
        if self.nbits > 0 {
            self.acc <<= 8 - self.nbits;
            self.bytes.push(self.acc);
        }
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn read_bit(&mut self) -> Result<bool> {
        let byte = self.pos / 8;
        if byte >= self.bytes.len() {
            return Err(Error::MalformedStreams("entropy stream truncated"));
        }
        let bit = (self.bytes[byte] >> (7 - self.pos % 8)) & 1;
        self.pos += 1;
        Ok(bit == 1)
    }

    fn read_bits(&mut self, count: u32) -> Result<u64> {
        let mut v = 0u64;
        for _ in 0..count {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Ok(v)
    }
}

#[derive(Debug, Clone)]
struct Node {
    weight: u64,
    parent: Option<usize>,
    kids: Option<(usize, usize)>,
    symbol: Option<u32>,
}

/// The shared adaptive code tree. Node indices double as the implicit
/// ordering: weights never increase along the array, the escape leaf stays
/// last, and parents sit left of their children.
struct Tree {
    nodes: Vec<Node>,
    escape: usize,
    leaves: BTreeMap<u32, usize>,
}

impl Tree {
    fn new() -> Self {
        Self {
            nodes: alloc::vec![Node { weight: 0, parent: None, kids: None, symbol: None }],
            escape: 0,
            leaves: BTreeMap::new(),
        }
    }

    /// Path bits from the root, most significant first.
    fn path(&self, mut node: usize) -> Vec<bool> {
        let mut bits = Vec::new();
        while let Some(p) = self.nodes[node].parent {
            let (l, _) = self.nodes[p].kids.unwrap();
            bits.push(node != l);
            node = p;
        }
        bits.reverse();
        bits
    }

    /// Front of `x`'s equal-weight block: the smallest index holding the
    /// same weight. Weight monotony keeps the block contiguous.
    fn leader(&self, x: usize) -> usize {
        let w = self.nodes[x].weight;
        let mut j = x;
        while j > 0 && self.nodes[j - 1].weight == w {
            j -= 1;
        }
        j
    }

    fn is_ancestor(&self, probe: usize, mut node: usize) -> bool {
        while let Some(p) = self.nodes[node].parent {
            if p == probe {
                return true;
            }
            node = p;
        }
        false
    }

    /// Exchanges the payloads at two positions, leaving each position's
    /// place in the ordering (and its parent slot) where it was.
    fn swap(&mut self, a: usize, b: usize) {
        self.nodes.swap(a, b);
        let pa = self.nodes[a].parent;
        self.nodes[a].parent = self.nodes[b].parent;
        self.nodes[b].parent = pa;
        for pos in [a, b] {
            if let Some((l, r)) = self.nodes[pos].kids {
                self.nodes[l].parent = Some(pos);
                self.nodes[r].parent = Some(pos);
            }
            if let Some(s) = self.nodes[pos].symbol {
                self.leaves.insert(s, pos);
            }
        }
    }

    /// Adds one to every weight on the path from `start` to the root,
    /// moving each node to the front of its block first.
    fn bump(&mut self, start: usize) {
        let mut cur = Some(start);
        while let Some(mut x) = cur {
            let leader = self.leader(x);
            if leader != x
                && Some(leader) != self.nodes[x].parent
                && !self.is_ancestor(leader, x)
            {
                self.swap(leader, x);
                x = leader;
            }
            self.nodes[x].weight += 1;
            cur = self.nodes[x].parent;
        }
    }

    fn update(&mut self, symbol: u32) {
        if let Some(&leaf) = self.leaves.get(&symbol) {
            self.bump(leaf);
            return;
        }
        // The escape leaf splits: it becomes an internal node whose right
        // child carries the new symbol and whose left child is the new
        // escape leaf, keeping the escape at the very end of the ordering.
        let t = self.escape;
        let leaf = self.nodes.len();
        self.nodes.push(Node { weight: 1, parent: Some(t), kids: None, symbol: Some(symbol) });
        let escape = self.nodes.len();
        self.nodes.push(Node { weight: 0, parent: Some(t), kids: None, symbol: None });
        self.nodes[t].kids = Some((escape, leaf));
        self.nodes[t].weight = 1;
        self.leaves.insert(symbol, leaf);
        self.escape = escape;
        if let Some(p) = self.nodes[t].parent {
            self.bump(p);
        }
    }
}

pub fn entropy_encode(symbols: &[u32]) -> Vec<u8> {
    let mut tree = Tree::new();
    let mut out = BitWriter::new();
    for &sym in symbols {
        match tree.leaves.get(&sym) {
            Some(&leaf) => {
                for bit in tree.path(leaf) {
                    out.push_bit(bit);
                }
            }
            None => {
                for bit in tree.path(tree.escape) {
                    out.push_bit(bit);
                }
                if sym < ESCAPE_MARKER {
                    out.push_bits(u64::from(sym), 16);
                } else {
                    out.push_bits(u64::from(ESCAPE_MARKER), 16);
                    out.push_bits(u64::from(sym), 32);
                }
            }
        }
        tree.update(sym);
    }
    out.finish()
}

pub fn entropy_decode(bytes: &[u8], count: usize) -> Result<Vec<u32>> {
    let mut tree = Tree::new();
    let mut input = BitReader::new(bytes);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut cur = 0usize;
        while let Some((l, r)) = tree.nodes[cur].kids {
            cur = if input.read_bit()? { r } else { l };
        }
        let sym = if cur == tree.escape {
            let lit = input.read_bits(16)? as u32;
            if lit == ESCAPE_MARKER {
                input.read_bits(32)? as u32
            } else {
                lit
            }
        } else {
            match tree.nodes[cur].symbol {
                Some(s) => s,
                None => return Err(Error::MalformedStreams("entropy tree desync")),
            }
        };
        out.push(sym);
        tree.update(sym);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn round_trip(symbols: &[u32]) {
        let bytes = entropy_encode(symbols);
        let back = entropy_decode(&bytes, symbols.len()).unwrap();
        assert_eq!(back, symbols);
    }

    #[test]
    fn round_trips_edge_inputs() {
        round_trip(&[]);
        round_trip(&[0]);
        round_trip(&[0xFFFE]);
        round_trip(&[0xFFFF]);
        round_trip(&[0x10000]);
        round_trip(&[u32::MAX]);
        round_trip(&[7; 3]);
        round_trip(&[1, 2, 1, 2, 1, 2, 2, 2, 1]);
    }

    #[test]
    fn round_trips_random_streams() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..60 {
            let len = rng.gen_range(0..400);
            let spread: u32 = *[4, 64, 70000, u32::MAX].iter().nth(rng.gen_range(0..4)).unwrap();
            let symbols: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=spread)).collect();
            round_trip(&symbols);
        }
    }

    #[test]
    fn round_trips_skewed_streams() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let symbols: Vec<u32> = (0..3000)
            .map(|_| if rng.gen_bool(0.9) { 1 } else { rng.gen_range(0..50) })
            .collect();
        round_trip(&symbols);
    }

    #[test]
    fn repeated_symbols_compress_to_about_a_bit_each() {
        let symbols = alloc::vec![42u32; 1000];
        let bytes = entropy_encode(&symbols);
        assert!(bytes.len() < 150, "got {} bytes", bytes.len());
        assert_eq!(entropy_decode(&bytes, 1000).unwrap(), symbols);
    }

    #[test]
    fn all_distinct_symbols_still_round_trip() {
        let symbols: Vec<u32> = (0..500u64).map(|i| (i * 2654435761 % 1000003) as u32).collect();
        round_trip(&symbols);
    }

    #[test]
    fn encoding_is_deterministic() {
        let symbols: Vec<u32> = (0..200).map(|i| i % 17).collect();
        assert_eq!(entropy_encode(&symbols), entropy_encode(&symbols));
    }

    #[test]
    fn truncated_streams_are_rejected() {
        let symbols: Vec<u32> = (0..50).map(|i| i % 5).collect();
        let bytes = entropy_encode(&symbols);
        assert!(matches!(
            entropy_decode(&bytes[..bytes.len() / 2], symbols.len()),
            Err(Error::MalformedStreams(_))
        ));
        assert!(matches!(
            entropy_decode(&bytes, symbols.len() + 40),
            Err(Error::MalformedStreams(_))
        ));
        assert!(matches!(entropy_decode(&[], 1), Err(Error::MalformedStreams(_))));
    }
}
