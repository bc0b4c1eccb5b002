use super::{Clutter, Elem};
use crate::error::{Error, Result};

/// The clutter of minimal covers (transversals) of `c`, over the same ground.
///
/// Covers are built member by member (Berge's incremental dualization) on
/// bitmasks. The clutter with no members has `{∅}` as blocker and vice versa.
pub fn blocker(c: &Clutter, max_ground: usize) -> Result<Clutter> {
    let n = c.ground().len();
    let cap = max_ground.min(64);
    if n > cap {
        return Err(Error::size_limit("blocker ground size", n, cap));
    }
    if c.is_empty() {
        return Ok(Clutter::with_empty_member(c.ground().iter().copied()));
    }
    if c.has_empty_member() {
        return Ok(Clutter::without_members(c.ground().iter().copied()));
    }
    let mut covers: Vec<u64> = vec![0];
    for &m in &c.masks() {
        let mut next: Vec<u64> = Vec::with_capacity(covers.len() * 2);
        for &t in &covers {
            if t & m != 0 {
                next.push(t);
            } else {
                let mut bits = m;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    next.push(t | b);
                    bits ^= b;
                }
            }
        }
        covers = minimal_masks(next);
    }
    let members = covers
        .into_iter()
        .map(|t| {
            (0..n)
                .filter(|i| t >> i & 1 == 1)
                .map(|i| c.ground()[i])
                .collect::<Vec<Elem>>()
        })
        .collect();
    Clutter::new(c.ground().iter().copied(), members)
}

pub(crate) fn minimal_masks(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & s == k) {
            kept.push(s);
        }
    }
    kept
}
