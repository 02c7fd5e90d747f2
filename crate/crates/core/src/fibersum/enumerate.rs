//! Connected multigraphs (loops and parallel edges allowed) up to isomorphism.
//!
//! Graphs with `e` edges are grown from those with `e − 1` by adding a loop,
//! an edge between existing vertices, or a pendant edge to a new vertex; every
//! connected graph arises this way because removing a cycle edge or a leaf
//! keeps it connected. Duplicates are removed by a canonical form that
//! minimizes the sorted edge list over relabelings preserving a vertex invariant.

use std::collections::BTreeSet;

use super::graph::FiberSumGraph;
use super::FiberError;

pub const MAX_ENUMERATION_EDGES: usize = 8;

type Edges = Vec<(usize, usize)>;

fn normalize(edges: &mut Edges) {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
}

fn relabel(edges: &[(usize, usize)], label: &[usize]) -> Edges {
    let mut out: Edges = edges.iter().map(|&(u, v)| (label[u], label[v])).collect();
    normalize(&mut out);
    out
}

fn vertex_keys(m: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize, Vec<usize>)> {
    let mut valence = vec![0; m];
    let mut loops = vec![0; m];
    for &(u, v) in edges {
        valence[u] += 1;
        valence[v] += 1;
        if u == v {
            loops[u] += 1;
        }
    }
    (0..m)
        .map(|w| {
            let mut nb: Vec<usize> = edges
                .iter()
                .filter_map(|&(u, v)| match (u == w, v == w) {
                    (true, false) => Some(valence[v]),
                    (false, true) => Some(valence[u]),
                    _ => None,
                })
                .collect();
            nb.sort_unstable();
            (valence[w], loops[w], nb)
        })
        .collect()
}

/// Calls `f` with every ordering of `items`.
fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Minimal relabeled edge list, where vertices in invariant class `i` receive
/// the labels of block `i` in any order.
fn canonical_within_classes(m: usize, edges: &[(usize, usize)], classes: &[Vec<usize>]) -> Edges {
    let mut best: Option<Edges> = None;
    let mut label = vec![0; m];
    fn rec(
        ci: usize,
        base: usize,
        classes: &[Vec<usize>],
        label: &mut Vec<usize>,
        edges: &[(usize, usize)],
        best: &mut Option<Edges>,
    ) {
        if ci == classes.len() {
            let cand = relabel(edges, label);
            if best.as_ref().is_none_or(|b| cand < *b) {
                *best = Some(cand);
            }
            return;
        }
        let mut members = classes[ci].clone();
        let size = members.len();
        for_each_permutation(&mut members, 0, &mut |perm: &[usize]| {
            for (offset, &v) in perm.iter().enumerate() {
                label[v] = base + offset;
            }
            rec(ci + 1, base + size, classes, label, edges, best);
        });
    }
    rec(0, 0, classes, &mut label, edges, &mut best);
    best.unwrap_or_default()
}

/// Isomorphism-invariant edge list.
pub fn canonical_form(g: &FiberSumGraph) -> Edges {
    canonical(g.vertex_count(), g.edges())
}

fn canonical(m: usize, edges: &[(usize, usize)]) -> Edges {
    let keys = vertex_keys(m, edges);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match classes.last_mut() {
            Some(c) if keys[c[0]] == keys[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    canonical_within_classes(m, edges, &classes)
}

/// Canonical form over all `m!` relabelings; slow, for cross-checking.
pub fn canonical_form_brute(g: &FiberSumGraph) -> Edges {
    let m = g.vertex_count();
    canonical_within_classes(m, g.edges(), &[(0..m).collect()])
}

/// All connected multigraphs with `0 ≤ e ≤ max_edges`, one per isomorphism
/// class, ordered by `(e, m, canonical edges)`.
pub fn enumerate_graphs(max_edges: usize) -> Result<Vec<FiberSumGraph>, FiberError> {
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(FiberError::EnumerationTooLarge(max_edges));
    }
    let mut layer: BTreeSet<(usize, Edges)> = BTreeSet::new();
    layer.insert((1, Vec::new()));
    let mut all: Vec<(usize, Edges)> = layer.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for (m, edges) in &layer {
            let m = *m;
            let mut grow = |m2: usize, extra: (usize, usize)| {
                let mut e2 = edges.clone();
                e2.push(extra);
                normalize(&mut e2);
                next.insert((m2, canonical(m2, &e2)));
            };
            for u in 0..m {
                for v in u..m {
                    grow(m, (u, v));
                }
                grow(m + 1, (u, m));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| (a.1.len(), a.0, &a.1).cmp(&(b.1.len(), b.0, &b.1)));
    all.into_iter().map(|(m, edges)| FiberSumGraph::new(m, edges)).collect()
}
