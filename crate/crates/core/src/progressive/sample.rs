//! Seeded random level choices and embedding jitters, for invariance checks.

use std::collections::BTreeSet;

use rand::Rng;

use super::{polarize, q, slice_with_levels, validate_progressive, NodeKind, Point, ProgressiveGraph};
use crate::field::Q;

/// A uniformly chosen rational strictly between `lo` and `hi`, on a grid of
/// 97 steps.
fn between(rng: &mut impl Rng, lo: &Q, hi: &Q) -> Q {
    let k = rng.gen_range(1..97);
    lo.clone() + (hi.clone() - lo.clone()) * q(k, 97)
}

/// A random admissible list of regular levels: up to two levels in each gap
/// between consecutive inner-node heights, retried until the bands split.
pub fn random_levels(g: &ProgressiveGraph, rng: &mut impl Rng) -> Vec<Q> {
    let mut cuts: Vec<Q> = vec![g.bottom.clone()];
    cuts.extend(g.inner_nodes().map(|v| g.nodes[v].pos.1.clone()).collect::<BTreeSet<_>>());
    cuts.push(g.top.clone());
    for attempt in 0..64 {
        let mut levels = vec![g.bottom.clone()];
        for w in cuts.windows(2) {
            // every gap gets a level after a few failed attempts
            let min = if attempt >= 8 && w[0] != g.bottom && w[1] != g.top { 1 } else { 0 };
            let n = rng.gen_range(min..=2);
            let mut picks: Vec<Q> = (0..n).map(|_| between(rng, &w[0], &w[1])).collect::<BTreeSet<_>>().into_iter().collect();
            levels.append(&mut picks);
        }
        levels.push(g.top.clone());
        levels.dedup();
        if slice_with_levels(g, &levels).is_ok() {
            return levels;
        }
    }
    panic!("no admissible levels found; the graph is not valid");
}

/// Moves every inner node and bend by at most `3/den` in each direction and
/// boundary nodes horizontally, keeping the result progressive with the same
/// polarization and boundary order at the endpoint and midway.
pub fn jitter(g: &ProgressiveGraph, rng: &mut impl Rng, den: i64) -> ProgressiveGraph {
    let pol = polarize(g);
    let order = |h: &ProgressiveGraph| (h.bottom_boundary(), h.top_boundary());
    for _ in 0..256 {
        let mut small = || q(rng.gen_range(-3..=3), den);
        let mut moved = g.clone();
        for n in &mut moved.nodes {
            let dx = small();
            let dy = if n.kind == NodeKind::Inner { small() } else { Q::integer(0) };
            n.pos = (n.pos.0.clone() + dx, n.pos.1.clone() + dy);
        }
        for e in &mut moved.edges {
            for p in &mut e.bends {
                *p = (p.0.clone() + small(), p.1.clone() + small());
            }
        }
        let midway = interpolate(g, &moved);
        let ok = |h: &ProgressiveGraph| validate_progressive(h).is_accepted() && polarize(h) == pol && order(h) == order(g);
        if ok(&moved) && ok(&midway) {
            return moved;
        }
    }
    g.clone()
}

fn interpolate(a: &ProgressiveGraph, b: &ProgressiveGraph) -> ProgressiveGraph {
    let half = q(1, 2);
    let mid = |p: &Point, r: &Point| ((p.0.clone() + r.0.clone()) * half.clone(), (p.1.clone() + r.1.clone()) * half.clone());
    let mut out = a.clone();
    for (n, m) in out.nodes.iter_mut().zip(&b.nodes) {
        n.pos = mid(&n.pos, &m.pos);
    }
    for (e, f) in out.edges.iter_mut().zip(&b.edges) {
        for (p, r) in e.bends.iter_mut().zip(&f.bends) {
            *p = mid(p, r);
        }
    }
    out
}
