use std::collections::{BTreeMap, HashMap};

use super::{EdgeId, Sign, SignedGraph};

type PairKey = (usize, usize);

fn key(u: usize, v: usize) -> PairKey {
    (u.min(v), u.max(v))
}

/// Edge ids grouped by unordered endpoint pair and sign.
fn edge_classes(g: &SignedGraph) -> HashMap<(PairKey, Sign), Vec<EdgeId>> {
    let mut classes: HashMap<(PairKey, Sign), Vec<EdgeId>> = HashMap::new();
    for e in g.edges() {
        classes.entry((key(e.u, e.v), e.sign)).or_default().push(e.id);
    }
    classes
}

fn signed_degrees(g: &SignedGraph) -> Vec<(usize, usize)> {
    let mut d = vec![(0, 0); g.vertex_count()];
    for e in g.edges() {
        for w in [e.u, e.v] {
            match e.sign {
                Sign::Positive => d[w].0 += 1,
                Sign::Negative => d[w].1 += 1,
            }
        }
    }
    d
}

/// Sign-preserving isomorphism between `g` and `h`, ignoring isolated
/// vertices. Returns the edge bijection `g edge -> h edge`.
pub fn sign_isomorphism(g: &SignedGraph, h: &SignedGraph) -> Option<BTreeMap<EdgeId, EdgeId>> {
    let gv = g.non_isolated_vertices();
    let hv = h.non_isolated_vertices();
    if gv.len() != hv.len()
        || g.positive_count() != h.positive_count()
        || g.negative_count() != h.negative_count()
    {
        return None;
    }
    let gc = edge_classes(g);
    let hc = edge_classes(h);
    let gd = signed_degrees(g);
    let hd = signed_degrees(h);
    let count = |c: &HashMap<(PairKey, Sign), Vec<EdgeId>>, a: usize, b: usize, s: Sign| {
        c.get(&(key(a, b), s)).map_or(0, Vec::len)
    };

    let mut image: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut used = vec![false; h.vertex_count()];

    fn search(
        i: usize,
        gv: &[usize],
        hv: &[usize],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, &[Option<usize>]) -> bool,
    ) -> bool {
        if i == gv.len() {
            return true;
        }
        let x = gv[i];
        for &y in hv {
            if used[y] || !ok(x, y, image) {
                continue;
            }
            image[x] = Some(y);
            used[y] = true;
            if search(i + 1, gv, hv, image, used, ok) {
                return true;
            }
            image[x] = None;
            used[y] = false;
        }
        false
    }

    let ok = |x: usize, y: usize, image: &[Option<usize>]| -> bool {
        if gd[x] != hd[y] {
            return false;
        }
        for &x2 in &gv {
            if let Some(y2) = image[x2] {
                for s in [Sign::Positive, Sign::Negative] {
                    if count(&gc, x, x2, s) != count(&hc, y, y2, s) {
                        return false;
                    }
                }
            }
        }
        true
    };

    if !search(0, &gv, &hv, &mut image, &mut used, &ok) {
        return None;
    }
    let mut map = BTreeMap::new();
    for ((pair, sign), ids) in &gc {
        let target = &hc[&(key(image[pair.0].unwrap(), image[pair.1].unwrap()), *sign)];
        let mut src = ids.clone();
        let mut dst = target.clone();
        src.sort_unstable();
        dst.sort_unstable();
        map.extend(src.into_iter().zip(dst));
    }
    Some(map)
}

pub fn is_sign_isomorphic(g: &SignedGraph, h: &SignedGraph) -> bool {
    sign_isomorphism(g, h).is_some()
}

/// Checks that `map` is a sign-preserving edge bijection `g -> h` induced by
/// an injective vertex map.
pub fn verify_edge_mapping(g: &SignedGraph, h: &SignedGraph, map: &BTreeMap<EdgeId, EdgeId>) -> bool {
    if map.len() != g.edge_count() || map.len() != h.edge_count() {
        return false;
    }
    let mut targets: Vec<EdgeId> = map.values().copied().collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != map.len() {
        return false;
    }
    for (&a, &b) in map {
        match (g.edge(a), h.edge(b)) {
            (Some(ea), Some(eb)) if ea.sign == eb.sign => {}
            _ => return false,
        }
    }
    let gv = g.non_isolated_vertices();
    let mut image: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut used = vec![false; h.vertex_count()];
    assign_vertices(0, &gv, g, h, map, &mut image, &mut used)
}

fn assign_vertices(
    i: usize,
    gv: &[usize],
    g: &SignedGraph,
    h: &SignedGraph,
    map: &BTreeMap<EdgeId, EdgeId>,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if i == gv.len() {
        return true;
    }
    let x = gv[i];
    let first = g.edges().iter().find(|e| e.u == x || e.v == x).unwrap();
    let fe = h.edge(map[&first.id]).unwrap();
    let mut cands = vec![fe.u, fe.v];
    cands.dedup();
    for y in cands {
        if used[y] {
            continue;
        }
        image[x] = Some(y);
        used[y] = true;
        let consistent = g.edges().iter().all(|e| match (image[e.u], image[e.v]) {
            (Some(a), Some(b)) => {
                let t = h.edge(map[&e.id]).unwrap();
                key(a, b) == key(t.u, t.v)
            }
            (Some(a), None) | (None, Some(a)) if e.u == x || e.v == x => {
                let t = h.edge(map[&e.id]).unwrap();
                t.u == a || t.v == a
            }
            _ => true,
        });
        if consistent && assign_vertices(i + 1, gv, g, h, map, image, used) {
            return true;
        }
        image[x] = None;
        used[y] = false;
    }
    false
}
