use num_bigint::BigInt;
use num_integer::Integer;

use super::{Rat, RatVec};
use crate::clutter::{Clutter, Elem};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// All vertices of the covering polyhedron `{x >= 0 | A(c) x >= 1}`, exactly,
/// each once, sorted lexicographically by coordinates in ground order.
///
/// Elements that lie in no member are zero at every vertex; they are left
/// out of the computation and the dimension cap applies to the rest.
pub fn vertices(c: &Clutter, limits: &Limits) -> Result<Vec<RatVec>> {
    if c.is_empty() {
        return Err(Error::InvalidClutter("covering polyhedron of a clutter without members".into()));
    }
    if c.has_empty_member() {
        return Err(Error::InvalidClutter("covering polyhedron with an empty member".into()));
    }
    vertices_unchecked(c, limits)
}

/// As [`vertices`], but the two degenerate clutters are allowed: no members
/// gives the single vertex `0`, an empty member gives no vertices.
pub(crate) fn vertices_unchecked(c: &Clutter, limits: &Limits) -> Result<Vec<RatVec>> {
    if c.has_empty_member() {
        return Ok(Vec::new());
    }
    let support: Vec<Elem> = c
        .ground()
        .iter()
        .copied()
        .filter(|&e| c.degree(e) > 0)
        .collect();
    if support.len() > limits.max_vertex_ground {
        return Err(Error::size_limit("covering polyhedron dimension", support.len(), limits.max_vertex_ground));
    }
    if c.len() > limits.max_members {
        return Err(Error::size_limit("covering polyhedron rows", c.len(), limits.max_members));
    }
    let rows: Vec<Vec<usize>> = c
        .members()
        .iter()
        .map(|m| m.iter().map(|e| support.binary_search(e).unwrap()).collect())
        .collect();
    let rays = DoubleDescription::run(support.len(), &rows, limits)?;
    let mut out: Vec<RatVec> = rays
        .into_iter()
        .filter(|r| r[0] > 0)
        .map(|r| {
            let t = BigInt::from(r[0]);
            let mut v = RatVec::constant(c.ground(), &Rat::zero());
            for (i, &e) in support.iter().enumerate() {
                v.0.insert(e, Rat::from_bigints(BigInt::from(r[i + 1]), t.clone()));
            }
            v
        })
        .collect();
    sort_canonical(c.ground(), &mut out);
    Ok(out)
}

pub(crate) fn sort_canonical(ground: &[Elem], vs: &mut [RatVec]) {
    vs.sort_by(|a, b| {
        ground
            .iter()
            .map(|e| a.0[e].cmp(&b.0[e]))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Fixed-width bitset over constraint indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    /// `(t, x_1, ..., x_n)` as coprime nonnegative integers.
    coords: Vec<i128>,
    zeros: Bits,
}

/// Double description on the homogenized cone
/// `{(t, x) : t >= 0, x >= 0, a_i . x - t >= 0}`.
///
/// The starting cone (only the sign constraints) is the orthant with the unit
/// vectors as extreme rays; member rows are then added one at a time and
/// new rays are formed from adjacent pairs on opposite sides, adjacency
/// being decided combinatorially on zero sets.
struct DoubleDescription;

impl DoubleDescription {
    fn run(n: usize, rows: &[Vec<usize>], limits: &Limits) -> Result<Vec<Vec<i128>>> {
        let d = n + 1;
        let total = d + rows.len();
        let mut rays: Vec<Ray> = (0..d)
            .map(|j| {
                let mut coords = vec![0i128; d];
                coords[j] = 1;
                let mut zeros = Bits::new(total);
                for k in (0..d).filter(|&k| k != j) {
                    zeros.set(k);
                }
                Ray { coords, zeros }
            })
            .collect();

        for (ri, row) in rows.iter().enumerate() {
            limits.check_deadline()?;
            let cidx = d + ri;
            let value = |r: &Ray| -> i128 { row.iter().map(|&i| r.coords[i + 1]).sum::<i128>() - r.coords[0] };
            let vals: Vec<i128> = rays.iter().map(value).collect();
            let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
            for &p in &pos {
                for &q in &neg {
                    let common = rays[p].zeros.and(&rays[q].zeros);
                    if (common.count() as usize) + 2 < d {
                        continue;
                    }
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(k, r)| k == p || k == q || !common.subset_of(&r.zeros));
                    if !adjacent {
                        continue;
                    }
                    let (vp, vq) = (vals[p], -vals[q]);
                    let mut coords = Vec::with_capacity(d);
                    for (a, b) in rays[q].coords.iter().zip(&rays[p].coords) {
                        let x = vp
                            .checked_mul(*a)
                            .and_then(|x| vq.checked_mul(*b).and_then(|y| x.checked_add(y)))
                            .ok_or(Error::Overflow("vertex enumeration"))?;
                        coords.push(x);
                    }
                    normalize(&mut coords);
                    let mut zeros = common;
                    zeros.set(cidx);
                    next.push(Ray { coords, zeros });
                }
            }
            for (i, mut r) in rays.into_iter().enumerate() {
                if vals[i] >= 0 {
                    if vals[i] == 0 {
                        r.zeros.set(cidx);
                    }
                    next.push(r);
                }
            }
            rays = next;
        }
        Ok(rays.into_iter().map(|r| r.coords).collect())
    }
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}
