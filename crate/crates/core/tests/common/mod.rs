//! Random instance generators and independent oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use flowpart::cluster::WeightedInstance;
use flowpart::clutter::flow_clutter;
use flowpart::exactlp::vertices;
use flowpart::{Clutter, Elem, Limits, Rat, RatVec, Sign, SignedGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use proptest::prelude::*;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn distinct_pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// Random multigraph with vertex and edge counts drawn from the given
/// ranges, at most `max_negative` edges negative.
pub fn random_signed_graph(
    rng: &mut impl Rng,
    vertices: std::ops::RangeInclusive<usize>,
    edges: std::ops::RangeInclusive<usize>,
    max_negative: usize,
) -> SignedGraph {
    let n = rng.gen_range(vertices);
    let m = rng.gen_range(edges);
    let negatives = rng.gen_range(0..=max_negative.min(m));
    let mut signs: Vec<Sign> = (0..m).map(|i| if i < negatives { Sign::Negative } else { Sign::Positive }).collect();
    signs.shuffle(rng);
    let edges: Vec<(usize, usize, Sign)> = signs
        .into_iter()
        .map(|s| {
            let (u, v) = distinct_pair(rng, n);
            (u, v, s)
        })
        .collect();
    SignedGraph::from_edges(n, &edges).unwrap()
}

/// Two-terminal series-parallel graph grown from a single edge by random
/// series subdivisions and parallel duplications; never has a K4 minor.
pub fn random_series_parallel(rng: &mut impl Rng, max_edges: usize) -> SignedGraph {
    let target = rng.gen_range(1..=max_edges);
    let mut n = 2;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    while edges.len() < target {
        let i = rng.gen_range(0..edges.len());
        let (u, v) = edges[i];
        if rng.gen_bool(0.5) {
            edges[i] = (u, n);
            edges.insert(i + 1, (n, v));
            n += 1;
        } else {
            edges.insert(i + 1, (u, v));
        }
    }
    let signed: Vec<(usize, usize, Sign)> = edges.into_iter().map(|(u, v)| (u, v, random_sign(rng))).collect();
    SignedGraph::from_edges(n, &signed).unwrap()
}

/// Random positive spanning tree plus random negative edges, `|E| <= max_edges`.
pub fn random_positive_tree(rng: &mut impl Rng, max_edges: usize) -> SignedGraph {
    let n = rng.gen_range(3..=(max_edges / 2 + 1).max(3));
    let mut edges: Vec<(usize, usize, Sign)> = (1..n).map(|v| (rng.gen_range(0..v), v, Sign::Positive)).collect();
    let negatives = rng.gen_range(1..=max_edges - (n - 1));
    for _ in 0..negatives {
        let (u, v) = distinct_pair(rng, n);
        edges.push((u, v, Sign::Negative));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = edges.into_iter().map(|(u, v, s)| (perm[u], perm[v], s)).collect();
    SignedGraph::from_edges(n, &edges).unwrap()
}

/// Random positive circuit plus random negative chords, `|E| <= max_edges`.
/// Chords skipping one vertex are favoured so odd flow-circuits show up.
pub fn random_positive_circuit(rng: &mut impl Rng, max_edges: usize) -> SignedGraph {
    let n = rng.gen_range(3..=(max_edges / 2).max(3));
    let mut edges: Vec<(usize, usize, Sign)> = (0..n).map(|i| (i, (i + 1) % n, Sign::Positive)).collect();
    let negatives = rng.gen_range(1..=max_edges - n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.shuffle(rng);
    for i in 0..negatives {
        let (u, v) = if rng.gen_bool(0.8) {
            let s = starts[i % n];
            (s, (s + 2) % n)
        } else {
            distinct_pair(rng, n)
        };
        edges.push((u, v, Sign::Negative));
    }
    SignedGraph::from_edges(n, &edges).unwrap()
}

/// Random nonnegative rational weights with small numerators and denominators.
pub fn random_weights(rng: &mut impl Rng, g: &SignedGraph) -> WeightedInstance {
    let w = g
        .edge_ids()
        .into_iter()
        .map(|e| (e, Rat::new(rng.gen_range(0..=6), rng.gen_range(1..=4))))
        .collect();
    WeightedInstance::new(g.clone(), w).unwrap()
}

/// Random clutter on `1..=max_ground` elements, minimalized.
pub fn random_clutter(rng: &mut impl Rng, max_ground: usize, max_members: usize, max_size: usize) -> Clutter {
    let n = rng.gen_range(1..=max_ground);
    let m = rng.gen_range(1..=max_members);
    let members: Vec<Vec<Elem>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            let mut all: Vec<Elem> = (0..n as Elem).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect();
    Clutter::minimalize(0..n as Elem, members).unwrap()
}

/// Cycle-relaxation optimum as the minimum of `w·x` over the vertices of the
/// flow covering polyhedron.
pub fn lp_by_vertices(inst: &WeightedInstance, limits: &Limits) -> Rat {
    let f = flow_clutter(inst.graph(), limits.max_flows).unwrap();
    if f.is_empty() {
        return Rat::zero();
    }
    vertices(&f, limits)
        .unwrap()
        .iter()
        .map(|x| x.0.iter().map(|(e, v)| inst.weight(*e) * v).sum::<Rat>())
        .min()
        .unwrap()
}

/// Vertices of `{x >= 0 | A x >= 1}` by exhaustive basis enumeration: every
/// choice of `n` linearly independent tight rows among the member rows and
/// the unit rows, solved exactly and kept when feasible.
pub fn vertices_by_bases(c: &Clutter) -> BTreeSet<RatVec> {
    vertices_by_bases_fixing(c, None)
}

/// As [`vertices_by_bases`], for the section `x_e = 1` when `fixed = Some(e)`:
/// that equation is in every basis.
pub fn vertices_by_bases_fixing(c: &Clutter, fixed: Option<Elem>) -> BTreeSet<RatVec> {
    let ground = c.ground();
    let n = ground.len();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = c
        .members()
        .iter()
        .map(|m| {
            let a = ground
                .iter()
                .map(|e| if m.contains(e) { BigRational::one() } else { BigRational::zero() })
                .collect();
            (a, BigRational::one())
        })
        .collect();
    for i in 0..n {
        let a = (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
        rows.push((a, BigRational::zero()));
    }
    let forced = fixed.map(|e| {
        let i = ground.binary_search(&e).unwrap();
        let a: Vec<BigRational> =
            (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
        (a, BigRational::one())
    });
    let mut out = BTreeSet::new();
    let mut pick = Vec::new();
    let free = n - usize::from(forced.is_some());
    choose(&rows, free, 0, &mut pick, &mut |sel: &[usize]| {
        let mut sys: Vec<&(Vec<BigRational>, BigRational)> = sel.iter().map(|&i| &rows[i]).collect();
        sys.extend(forced.as_ref());
        if let Some(x) = solve(sys) {
            let feasible = rows.iter().all(|(a, b)| dot(a, &x) >= *b);
            if feasible {
                out.insert(RatVec(
                    ground.iter().copied().zip(x.into_iter().map(Rat)).collect::<BTreeMap<_, _>>(),
                ));
            }
        }
    });
    out
}

fn dot(a: &[BigRational], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

fn choose(
    rows: &[(Vec<BigRational>, BigRational)],
    k: usize,
    from: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in from..rows.len() {
        if rows.len() - i < k - pick.len() {
            break;
        }
        pick.push(i);
        choose(rows, k, i + 1, pick, f);
        pick.pop();
    }
}

/// Unique solution of a square system, or `None` when singular.
fn solve(sys: Vec<&(Vec<BigRational>, BigRational)>) -> Option<Vec<BigRational>> {
    let n = sys.len();
    let mut m: Vec<Vec<BigRational>> = sys
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let piv = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &piv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(prow) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

pub fn half(n: i64) -> Rat {
    Rat(BigRational::new(BigInt::from(n), BigInt::from(2)))
}

/// Edge clutter of a random simple graph on 4 to 7 vertices; odd circuits
/// make its incidence matrix unbalanced.
pub fn random_edge_clutter(rng: &mut impl Rng) -> Clutter {
    let n = rng.gen_range(4..=7);
    let m = rng.gen_range(3..=9);
    let members: Vec<Vec<Elem>> = (0..m)
        .map(|_| {
            let (u, v) = distinct_pair(rng, n);
            vec![u as Elem, v as Elem]
        })
        .collect();
    Clutter::minimalize(0..n as Elem, members).unwrap()
}

/// Signed multigraph strategy: `2..=max_vertices` vertices, `1..=max_edges`
/// edges with random endpoints and signs.
pub fn arb_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = SignedGraph> {
    (2..=max_vertices).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 1..n, any::<bool>()), 1..=max_edges).prop_map(move |raw| {
            let edges: Vec<(usize, usize, Sign)> = raw
                .into_iter()
                .map(|(u, d, p)| (u, (u + d) % n, if p { Sign::Positive } else { Sign::Negative }))
                .collect();
            SignedGraph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Minimalized clutter strategy over ground `0..n`, `1 <= n <= max_ground`,
/// with nonempty members.
pub fn arb_clutter(max_ground: usize, max_members: usize) -> impl Strategy<Value = Clutter> {
    (1..=max_ground).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n as Elem, 1..=n.min(4)), 1..=max_members)
            .prop_map(move |ms| Clutter::minimalize(0..n as Elem, ms.into_iter().map(|m| m.into_iter().collect()).collect()).unwrap())
    })
}
