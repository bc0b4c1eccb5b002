use std::collections::{BTreeMap, HashSet};

use super::{Clutter, Elem};
use crate::error::{Error, Result};

/// Element bijection `c1 -> c2` mapping members onto members, or `None`.
///
/// Backtracking over `c1`'s ground in order, trying `c2` elements in
/// increasing order, so the returned witness is the lexicographically least.
/// Candidates are pruned by element signatures and pairwise co-degrees.
pub fn is_isomorphic(c1: &Clutter, c2: &Clutter, max_ground: usize) -> Result<Option<BTreeMap<Elem, Elem>>> {
    let n = c1.ground().len();
    let cap = max_ground.min(63);
    if n.max(c2.ground().len()) > cap {
        return Err(Error::size_limit("isomorphism ground size", n.max(c2.ground().len()), cap));
    }
    if n != c2.ground().len() || c1.len() != c2.len() {
        return Ok(None);
    }
    let mut s1: Vec<usize> = c1.members().iter().map(Vec::len).collect();
    let mut s2: Vec<usize> = c2.members().iter().map(Vec::len).collect();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let a = Side::new(c1);
    let b = Side::new(c2);
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &a, &b, &mut phi, &mut used) {
        Ok(Some(
            (0..n).map(|i| (c1.ground()[i], c2.ground()[phi[i]])).collect(),
        ))
    } else {
        Ok(None)
    }
}

struct Side {
    masks: Vec<u64>,
    member_set: HashSet<u64>,
    signature: Vec<Vec<usize>>,
    codegree: Vec<Vec<usize>>,
}

impl Side {
    fn new(c: &Clutter) -> Self {
        let n = c.ground().len();
        let masks = c.masks();
        let mut signature = vec![Vec::new(); n];
        let mut codegree = vec![vec![0; n]; n];
        for &m in &masks {
            let elems: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            for &i in &elems {
                signature[i].push(elems.len());
                for &j in &elems {
                    codegree[i][j] += 1;
                }
            }
        }
        for s in &mut signature {
            s.sort_unstable();
        }
        Side {
            member_set: masks.iter().copied().collect(),
            masks,
            signature,
            codegree,
        }
    }
}

fn extend(i: usize, a: &Side, b: &Side, phi: &mut [usize], used: &mut [bool]) -> bool {
    let n = phi.len();
    if i == n {
        return a.masks.iter().all(|&m| {
            let img = (0..n).filter(|&x| m >> x & 1 == 1).fold(0u64, |acc, x| acc | 1 << phi[x]);
            b.member_set.contains(&img)
        });
    }
    for y in 0..n {
        if used[y] || a.signature[i] != b.signature[y] {
            continue;
        }
        if (0..i).any(|j| a.codegree[i][j] != b.codegree[y][phi[j]]) {
            continue;
        }
        phi[i] = y;
        used[y] = true;
        // members fully mapped now must land on members
        let mapped = (1u64 << (i + 1)) - 1;
        let ok = a.masks.iter().all(|&m| {
            if m & !mapped != 0 || m >> i & 1 == 0 {
                return true;
            }
            let img = (0..=i).filter(|&x| m >> x & 1 == 1).fold(0u64, |acc, x| acc | 1 << phi[x]);
            b.member_set.contains(&img)
        });
        if ok && extend(i + 1, a, b, phi, used) {
            return true;
        }
        used[y] = false;
    }
    phi[i] = usize::MAX;
    false
}
