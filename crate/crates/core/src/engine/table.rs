use super::context::GroupContext;
use crate::error::{Error, Result};
use crate::exact_algebra::{bytes_per_entry, decode_entries, encode_entries, ModMatrix};

const EMPTY: u64 = 0;
const MAX_LOAD_NUM: usize = 7;
const MAX_LOAD_DEN: usize = 10;

/// Deduplicating set of elements of an ambient [`GroupContext`].
///
/// Elements live in a flat arena of canonical entry encodings, in insertion
/// order. Lookup goes through an open-addressing table whose slots pack the
/// upper 32 bits of a 64-bit fingerprint with the arena index; a fingerprint
/// hit is always confirmed against the stored key.
#[derive(Clone, Debug)]
pub struct ElementTable {
    ctx: GroupContext,
    width: usize,
    key_len: usize,
    arena: Vec<u8>,
    slots: Vec<u64>,
    len: usize,
    generators: Option<Vec<ModMatrix>>,
    complete: bool,
    scratch: Vec<u8>,
}

#[inline]
fn fingerprint(key: &[u8]) -> u64 {
    let mut h: u64 = 0x243f_6a88_85a3_08d3 ^ key.len() as u64;
    let mut chunks = key.chunks_exact(8);
    for c in &mut chunks {
        let w = u64::from_le_bytes(c.try_into().unwrap());
        h = (h ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(31);
    }
    let rest = chunks.remainder();
    if !rest.is_empty() {
        let mut buf = [0u8; 8];
        buf[..rest.len()].copy_from_slice(rest);
        h = (h ^ u64::from_le_bytes(buf)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    // splitmix64 finaliser
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

impl ElementTable {
    /// Empty table (not even the identity).
    pub fn empty(ctx: &GroupContext) -> Self {
        let width = bytes_per_entry(ctx.modulus());
        let key_len = width * ctx.dim() * ctx.dim();
        ElementTable {
            ctx: ctx.clone(),
            width,
            key_len,
            arena: Vec::new(),
            slots: vec![EMPTY; 16],
            len: 0,
            generators: None,
            complete: false,
            scratch: vec![0; key_len],
        }
    }

    /// Table holding only the identity, complete, with no generators.
    pub fn trivial(ctx: &GroupContext) -> Self {
        let mut t = Self::empty(ctx);
        t.insert(&ctx.identity());
        t.generators = Some(Vec::new());
        t.complete = true;
        t
    }

    /// Table of the given elements; callers assert that they form a group.
    pub fn from_elements<'a>(ctx: &GroupContext, elems: impl IntoIterator<Item = &'a ModMatrix>) -> Self {
        let mut t = Self::empty(ctx);
        for e in elems {
            t.insert(e);
        }
        t.complete = true;
        t
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Generators, when the table was built by closure.
    pub fn generators(&self) -> Option<&[ModMatrix]> {
        self.generators.as_deref()
    }

    pub(crate) fn set_generators(&mut self, gens: Vec<ModMatrix>) {
        self.generators = Some(gens);
    }

    /// Generators if known, else every element.
    pub fn generators_or_elements(&self) -> Vec<ModMatrix> {
        match &self.generators {
            Some(g) => g.clone(),
            None => self.iter().collect(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub(crate) fn set_complete(&mut self, c: bool) {
        self.complete = c;
    }

    fn key(&self, idx: usize) -> &[u8] {
        &self.arena[idx * self.key_len..(idx + 1) * self.key_len]
    }

    /// Raw residues of element `idx`.
    pub fn entries_into(&self, idx: usize, out: &mut [u32]) {
        decode_entries(self.key(idx), self.width, out);
    }

    pub fn get(&self, idx: usize) -> ModMatrix {
        let d = self.ctx.dim();
        let mut e = vec![0; d * d];
        self.entries_into(idx, &mut e);
        ModMatrix::from_residues(d, self.ctx.modulus(), e)
    }

    pub fn iter(&self) -> impl Iterator<Item = ModMatrix> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    /// Elements sorted by canonical order (stable across generator orders).
    pub fn sorted_elements(&self) -> Vec<ModMatrix> {
        let mut v: Vec<ModMatrix> = self.iter().collect();
        v.sort();
        v
    }

    fn probe(&self, key: &[u8], fp: u64) -> (usize, Option<usize>) {
        let mask = self.slots.len() - 1;
        let tag = fp >> 32;
        let mut pos = fp as usize & mask;
        loop {
            let s = self.slots[pos];
            if s == EMPTY {
                return (pos, None);
            }
            if s >> 32 == tag {
                let idx = (s & 0xffff_ffff) as usize - 1;
                if self.key(idx) == key {
                    return (pos, Some(idx));
                }
            }
            pos = (pos + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let cap = self.slots.len() * 2;
        let mut slots = vec![EMPTY; cap];
        let mask = cap - 1;
        for idx in 0..self.len {
            let fp = fingerprint(self.key(idx));
            let mut pos = fp as usize & mask;
            while slots[pos] != EMPTY {
                pos = (pos + 1) & mask;
            }
            slots[pos] = (fp >> 32) << 32 | (idx as u64 + 1);
        }
        self.slots = slots;
    }

    /// Index of raw residues, if present.
    pub fn index_of_entries(&self, entries: &[u32]) -> Option<usize> {
        let mut small = [0u8; 64];
        let mut large = Vec::new();
        let key: &mut [u8] = if self.key_len <= small.len() {
            &mut small[..self.key_len]
        } else {
            large.resize(self.key_len, 0);
            &mut large
        };
        encode_entries(entries, self.width, key);
        self.probe(key, fingerprint(key)).1
    }

    pub fn index_of(&self, g: &ModMatrix) -> Option<usize> {
        if g.modulus() != self.ctx.modulus() || g.dim() != self.ctx.dim() {
            return None;
        }
        self.index_of_entries(g.entries())
    }

    pub fn contains(&self, g: &ModMatrix) -> bool {
        self.index_of(g).is_some()
    }

    /// Inserts raw residues; returns `(index, newly_inserted)`.
    pub fn insert_entries(&mut self, entries: &[u32]) -> (usize, bool) {
        let mut key = std::mem::take(&mut self.scratch);
        encode_entries(entries, self.width, &mut key);
        let fp = fingerprint(&key);
        let (pos, found) = self.probe(&key, fp);
        let out = match found {
            Some(idx) => (idx, false),
            None => {
                let idx = self.len;
                assert!(idx < u32::MAX as usize, "element table index overflow");
                self.arena.extend_from_slice(&key);
                self.slots[pos] = (fp >> 32) << 32 | (idx as u64 + 1);
                self.len += 1;
                if self.len * MAX_LOAD_DEN > self.slots.len() * MAX_LOAD_NUM {
                    self.grow();
                }
                (idx, true)
            }
        };
        self.scratch = key;
        out
    }

    pub fn insert(&mut self, g: &ModMatrix) -> (usize, bool) {
        debug_assert_eq!(g.modulus(), self.ctx.modulus());
        self.insert_entries(g.entries())
    }

    /// Same element set.
    pub fn same_set(&self, other: &ElementTable) -> bool {
        self.len == other.len && self.iter().all(|g| other.contains(&g))
    }

    /// Fails with `CapExceeded` once the table grows past `cap`.
    pub(crate) fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len > cap {
            Err(Error::CapExceeded {
                cap,
                partial: self.len,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u64) -> GroupContext {
        GroupContext::standard(1, n).unwrap()
    }

    #[test]
    fn insert_and_lookup() {
        let c = ctx(7);
        let mut t = ElementTable::empty(&c);
        let a = ModMatrix::from_i64(2, 7, &[1, 1, 0, 1]);
        let b = ModMatrix::from_i64(2, 7, &[1, 0, 1, 1]);
        assert_eq!(t.insert(&a), (0, true));
        assert_eq!(t.insert(&b), (1, true));
        assert_eq!(t.insert(&a), (0, false));
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(1), b);
        assert!(t.contains(&a));
        assert!(!t.contains(&c.identity()));
    }

    #[test]
    fn survives_many_resizes() {
        let c = ctx(1009);
        let mut t = ElementTable::empty(&c);
        for x in 0..5000i64 {
            t.insert(&ModMatrix::from_i64(2, 1009, &[1, x, 0, 1]));
            t.insert(&ModMatrix::from_i64(2, 1009, &[1, 0, x, 1]));
        }
        // x = 0 gives the identity twice; x and x + 1009 coincide
        assert_eq!(t.len(), 2 * 1009 - 1);
        for x in 0..1009i64 {
            assert!(t.contains(&ModMatrix::from_i64(2, 1009, &[1, 0, x, 1])));
        }
        assert!(!t.contains(&ModMatrix::from_i64(2, 1009, &[2, 0, 0, 505])));
    }

    #[test]
    fn wide_modulus_round_trip() {
        let n = (1u64 << 31) - 1;
        let c = ctx(n);
        let mut t = ElementTable::empty(&c);
        let g = ModMatrix::from_i64(2, n as u32, &[1, -1, 0, 1]);
        t.insert(&g);
        assert_eq!(t.get(0), g);
    }

    #[test]
    fn trivial_table() {
        let c = ctx(5);
        let t = ElementTable::trivial(&c);
        assert_eq!(t.len(), 1);
        assert!(t.is_complete());
        assert!(t.contains(&c.identity()));
    }
}
