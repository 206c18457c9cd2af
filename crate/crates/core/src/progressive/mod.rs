//! Progressive graphs in a strip `R x [a, b]`: validation, polarization,
//! slicing into bands and evaluation to a morphism.
//!
//! Edges are polylines with rational vertices, oriented upwards: the source
//! of an edge is its lower end. A graph is progressive when every edge is
//! strictly increasing in `y`, edges meet only at shared end nodes, and the
//! boundary nodes are exactly the nodes on the two boundary lines.

mod fixtures;
pub mod sample;
mod slice;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::category::{Morphism, ObjectWord};
use crate::error::{Error, Result};
use crate::field::{Field, Q};

pub use fixtures::{cup, figure_one, figure_one_levels, single_coupon, vertical_strand, FigureOne};
pub use slice::{evaluate, evaluate_slices, evaluate_with_levels, slice, slice_with_levels, Band, Block, SliceIR};

pub type Point = (Q, Q);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeKind {
    Inner,
    Boundary,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub pos: Point,
}

/// An edge from `source` (below) to `target` (above), with the interior
/// vertices of its polyline listed bottom to top.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub bends: Vec<Point>,
}

/// An embedded graph in the strip `R x [bottom, top]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProgressiveGraph {
    pub bottom: Q,
    pub top: Q,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

/// Colors on edges and morphisms on inner nodes. Edge colors are words, so a
/// single strand may carry a tensor product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring<F> {
    pub edges: Vec<ObjectWord>,
    pub nodes: Vec<Option<Morphism<F>>>,
}

impl<F: Field> Coloring<F> {
    pub fn new(edges: Vec<ObjectWord>, nodes: Vec<Option<Morphism<F>>>) -> Self {
        Coloring { edges, nodes }
    }
}

/// Builds the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

impl ProgressiveGraph {
    pub fn new(bottom: Q, top: Q) -> Self {
        ProgressiveGraph { bottom, top, nodes: Vec::new(), edges: Vec::new() }
    }

    pub fn add_node(&mut self, id: &str, kind: NodeKind, pos: Point) -> usize {
        self.nodes.push(Node { id: id.to_string(), kind, pos });
        self.nodes.len() - 1
    }

    pub fn add_inner(&mut self, id: &str, pos: Point) -> usize {
        self.add_node(id, NodeKind::Inner, pos)
    }

    pub fn add_boundary(&mut self, id: &str, pos: Point) -> usize {
        self.add_node(id, NodeKind::Boundary, pos)
    }

    pub fn add_edge(&mut self, id: &str, source: usize, target: usize, bends: Vec<Point>) -> usize {
        self.edges.push(Edge { id: id.to_string(), source, target, bends });
        self.edges.len() - 1
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn inner_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&v| self.nodes[v].kind == NodeKind::Inner)
    }

    /// Full vertex list of an edge, bottom to top.
    pub fn polyline(&self, e: usize) -> Vec<Point> {
        let edge = &self.edges[e];
        let mut pts = Vec::with_capacity(edge.bends.len() + 2);
        pts.push(self.nodes[edge.source].pos.clone());
        pts.extend(edge.bends.iter().cloned());
        pts.push(self.nodes[edge.target].pos.clone());
        pts
    }

    /// The `y` range covered by an edge.
    pub fn y_range(&self, e: usize) -> (Q, Q) {
        let edge = &self.edges[e];
        (self.nodes[edge.source].pos.1.clone(), self.nodes[edge.target].pos.1.clone())
    }

    /// The `x` coordinate of a monotone edge at height `t`, if `t` lies in its
    /// `y` range.
    pub fn x_at(&self, e: usize, t: &Q) -> Option<Q> {
        let pts = self.polyline(e);
        for w in pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if y0 <= t && t <= y1 {
                if y0 == y1 {
                    return Some(x0.clone());
                }
                let frac = (t.clone() - y0.clone()) * (y1.clone() - y0.clone()).inv()?;
                return Some(x0.clone() + frac * (x1.clone() - x0.clone()));
            }
        }
        None
    }

    /// Edges meeting the horizontal line at height `t`, ordered by `x`.
    /// Intended for levels that avoid inner nodes.
    pub fn strands_at(&self, t: &Q) -> Vec<usize> {
        let mut hits: Vec<(Q, usize)> = (0..self.edges.len())
            .filter_map(|e| {
                let (lo, hi) = self.y_range(e);
                (lo <= *t && *t <= hi).then(|| self.x_at(e, t).map(|x| (x, e))).flatten()
            })
            .collect();
        hits.sort();
        hits.into_iter().map(|(_, e)| e).collect()
    }

    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].target == v).collect()
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].source == v).collect()
    }

    /// Boundary nodes on the bottom line, ordered by `x`.
    pub fn bottom_boundary(&self) -> Vec<usize> {
        self.boundary_on(&self.bottom)
    }

    pub fn top_boundary(&self) -> Vec<usize> {
        self.boundary_on(&self.top)
    }

    fn boundary_on(&self, y: &Q) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].kind == NodeKind::Boundary && self.nodes[i].pos.1 == *y)
            .collect();
        v.sort_by(|&a, &b| self.nodes[a].pos.0.cmp(&self.nodes[b].pos.0));
        v
    }

    /// Applies `f` to every coordinate (nodes and bends).
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> ProgressiveGraph {
        let mut g = self.clone();
        for n in &mut g.nodes {
            n.pos = f(&n.pos);
        }
        for e in &mut g.edges {
            for p in &mut e.bends {
                *p = f(p);
            }
        }
        g
    }
}

/// One reason a graph fails to be progressive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    EmptyStrip,
    DuplicateId(String),
    DanglingEdge { edge: String },
    NodeOutsideStrip { node: String },
    BoundaryNodeOffBoundary { node: String },
    InnerNodeOnBoundary { node: String },
    BoundaryDegree { node: String, degree: usize },
    NotMonotone { edge: String, segment: usize },
    Crossing { first: String, second: String, y: Q },
    ThroughNode { edge: String, node: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyStrip => write!(f, "strip has bottom >= top"),
            Violation::DuplicateId(id) => write!(f, "duplicate id {id}"),
            Violation::DanglingEdge { edge } => write!(f, "edge {edge} references a missing node"),
            Violation::NodeOutsideStrip { node } => write!(f, "node {node} lies outside the strip"),
            Violation::BoundaryNodeOffBoundary { node } => {
                write!(f, "boundary node {node} is not on a boundary line")
            }
            Violation::InnerNodeOnBoundary { node } => write!(f, "inner node {node} lies on a boundary line"),
            Violation::BoundaryDegree { node, degree } => {
                write!(f, "boundary node {node} has {degree} adjacent edges, expected 1")
            }
            Violation::NotMonotone { edge, segment } => {
                write!(f, "edge {edge} is not strictly increasing in y on segment {segment}")
            }
            Violation::Crossing { first, second, y } => write!(f, "edges {first} and {second} meet at y = {y}"),
            Violation::ThroughNode { edge, node } => write!(f, "edge {edge} passes through node {node}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "accept");
        }
        write!(f, "reject")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks boundary placement, strict monotonicity and planarity, reporting
/// every violation.
pub fn validate_progressive(g: &ProgressiveGraph) -> ValidationReport {
    let mut out = Vec::new();
    if g.bottom >= g.top {
        out.push(Violation::EmptyStrip);
    }
    let mut seen = BTreeSet::new();
    for id in g.nodes.iter().map(|n| &n.id).chain(g.edges.iter().map(|e| &e.id)) {
        if !seen.insert(id.clone()) {
            out.push(Violation::DuplicateId(id.clone()));
        }
    }
    let dangling: Vec<bool> =
        g.edges.iter().map(|e| e.source >= g.nodes.len() || e.target >= g.nodes.len()).collect();
    for (e, &d) in g.edges.iter().zip(&dangling) {
        if d {
            out.push(Violation::DanglingEdge { edge: e.id.clone() });
        }
    }
    if dangling.iter().any(|&d| d) {
        return ValidationReport { violations: out };
    }

    for (v, n) in g.nodes.iter().enumerate() {
        let y = &n.pos.1;
        let on_boundary = *y == g.bottom || *y == g.top;
        if *y < g.bottom || *y > g.top {
            out.push(Violation::NodeOutsideStrip { node: n.id.clone() });
        }
        match n.kind {
            NodeKind::Boundary => {
                if !on_boundary {
                    out.push(Violation::BoundaryNodeOffBoundary { node: n.id.clone() });
                }
                let degree = g.edges.iter().filter(|e| e.source == v).count()
                    + g.edges.iter().filter(|e| e.target == v).count();
                if degree != 1 {
                    out.push(Violation::BoundaryDegree { node: n.id.clone(), degree });
                }
            }
            NodeKind::Inner => {
                if on_boundary {
                    out.push(Violation::InnerNodeOnBoundary { node: n.id.clone() });
                }
            }
        }
    }

    let mut monotone = vec![true; g.edges.len()];
    for (e, edge) in g.edges.iter().enumerate() {
        for (k, w) in g.polyline(e).windows(2).enumerate() {
            if w[0].1 >= w[1].1 {
                out.push(Violation::NotMonotone { edge: edge.id.clone(), segment: k });
                monotone[e] = false;
                break;
            }
        }
    }

    for e in (0..g.edges.len()).filter(|&e| monotone[e]) {
        let (lo, hi) = g.y_range(e);
        let edge = &g.edges[e];
        for (v, n) in g.nodes.iter().enumerate() {
            if v == edge.source || v == edge.target || n.pos.1 < lo || n.pos.1 > hi {
                continue;
            }
            if g.x_at(e, &n.pos.1).as_ref() == Some(&n.pos.0) {
                out.push(Violation::ThroughNode { edge: edge.id.clone(), node: n.id.clone() });
            }
        }
    }

    for e in 0..g.edges.len() {
        for f in e + 1..g.edges.len() {
            if monotone[e] && monotone[f] {
                if let Some(y) = first_contact(g, e, f) {
                    out.push(Violation::Crossing { first: g.edges[e].id.clone(), second: g.edges[f].id.clone(), y });
                }
            }
        }
    }
    ValidationReport { violations: out }
}

/// The lowest height where two monotone edges meet away from a shared end
/// node. Both edges are graphs of piecewise linear functions of `y`, so
/// sampling their difference at all vertex heights and the midpoints between
/// them detects every contact.
fn first_contact(g: &ProgressiveGraph, e: usize, f: usize) -> Option<Q> {
    let (lo_e, hi_e) = g.y_range(e);
    let (lo_f, hi_f) = g.y_range(f);
    let lo = lo_e.max(lo_f);
    let hi = hi_e.min(hi_f);
    if lo > hi {
        return None;
    }
    let (ee, ef) = (&g.edges[e], &g.edges[f]);
    let shared: BTreeSet<usize> = [ee.source, ee.target]
        .into_iter()
        .filter(|v| *v == ef.source || *v == ef.target)
        .collect();
    let allowed: BTreeSet<Q> = shared.iter().map(|&v| g.nodes[v].pos.1.clone()).collect();

    let mut ys: BTreeSet<Q> = g
        .polyline(e)
        .into_iter()
        .chain(g.polyline(f))
        .map(|p| p.1)
        .filter(|y| lo <= *y && *y <= hi)
        .collect();
    ys.insert(lo.clone());
    ys.insert(hi.clone());
    let ys: Vec<Q> = ys.into_iter().collect();
    let half = q(1, 2);
    let mut samples = Vec::with_capacity(2 * ys.len());
    for (i, y) in ys.iter().enumerate() {
        samples.push((y.clone(), true));
        if let Some(next) = ys.get(i + 1) {
            samples.push(((y.clone() + next.clone()) * half.clone(), false));
        }
    }
    let mut sign = 0i8;
    for (y, at_vertex) in samples {
        let d = g.x_at(e, &y)? - g.x_at(f, &y)?;
        if d.is_zero() {
            if !(at_vertex && allowed.contains(&y)) {
                return Some(y);
            }
            continue;
        }
        let s = if d.is_negative() { -1 } else { 1 };
        if sign != 0 && s != sign {
            return Some(y);
        }
        sign = s;
    }
    None
}

/// Linear orders on the incoming and outgoing edges of every inner node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polarization {
    /// Indexed by node; empty for boundary nodes.
    pub inputs: Vec<Vec<usize>>,
    pub outputs: Vec<Vec<usize>>,
}

/// Orders `in(v)` and `out(v)` by their crossings with horizontal probes just
/// below and above each inner node. The graph must be valid.
pub fn polarize(g: &ProgressiveGraph) -> Polarization {
    let mut inputs = vec![Vec::new(); g.nodes.len()];
    let mut outputs = vec![Vec::new(); g.nodes.len()];
    for v in g.inner_nodes() {
        let y = &g.nodes[v].pos.1;
        let (below, above) = probe_window(g, v);
        let half = q(1, 2);
        let u = (below + y.clone()) * half.clone();
        let w = (above + y.clone()) * half;
        inputs[v] = order_at(g, &g.in_edges(v), &u).expect("probe below node is admissible");
        outputs[v] = order_at(g, &g.out_edges(v), &w).expect("probe above node is admissible");
    }
    Polarization { inputs, outputs }
}

/// The open window `(below, above)` around an inner node in which every
/// adjacent edge is a single straight segment.
pub fn probe_window(g: &ProgressiveGraph, v: usize) -> (Q, Q) {
    let y = g.nodes[v].pos.1.clone();
    let mut below = g.bottom.clone();
    let mut above = g.top.clone();
    for e in g.in_edges(v) {
        let pts = g.polyline(e);
        below = below.max(pts[pts.len() - 2].1.clone());
    }
    for e in g.out_edges(v) {
        above = above.min(g.polyline(e)[1].1.clone());
    }
    debug_assert!(below < y && y < above);
    (below, above)
}

/// Orders `edges` by their `x` coordinate at height `t`; `None` if some edge
/// does not meet that height.
pub fn order_at(g: &ProgressiveGraph, edges: &[usize], t: &Q) -> Option<Vec<usize>> {
    let mut hits = Vec::with_capacity(edges.len());
    for &e in edges {
        let (lo, hi) = g.y_range(e);
        if *t < lo || *t > hi {
            return None;
        }
        hits.push((g.x_at(e, t)?, e));
    }
    hits.sort();
    Some(hits.into_iter().map(|(_, e)| e).collect())
}

/// Places `top` above `bottom`, joining the top boundary of `bottom` to the
/// bottom boundary of `top` strand by strand. Node and edge ids are prefixed
/// with `lo.` and `hi.`; fused edges keep the id of their lower part.
pub fn stack_graphs<F: Field>(
    bottom: (&ProgressiveGraph, &Coloring<F>),
    top: (&ProgressiveGraph, &Coloring<F>),
) -> Result<(ProgressiveGraph, Coloring<F>)> {
    let (gb, cb) = bottom;
    let (gt, ct) = top;
    let upper = gb.top_boundary();
    let lower = gt.bottom_boundary();
    if upper.len() != lower.len() {
        return Err(Error::BoundaryMismatch(format!(
            "{} strands leave the lower diagram, {} enter the upper one",
            upper.len(),
            lower.len()
        )));
    }
    let dy = gb.top.clone() - gt.bottom.clone() + Q::one();
    let shift = |p: &Point| (p.0.clone(), p.1.clone() + dy.clone());
    let mut g = ProgressiveGraph::new(gb.bottom.clone(), gt.top.clone() + dy.clone());
    let mut nodes: Vec<Option<Morphism<F>>> = Vec::new();
    let mut map_b = BTreeMap::new();
    let mut map_t = BTreeMap::new();
    for (v, n) in gb.nodes.iter().enumerate() {
        if !upper.contains(&v) {
            map_b.insert(v, g.add_node(&format!("lo.{}", n.id), n.kind, n.pos.clone()));
            nodes.push(cb.nodes[v].clone());
        }
    }
    for (v, n) in gt.nodes.iter().enumerate() {
        if !lower.contains(&v) {
            map_t.insert(v, g.add_node(&format!("hi.{}", n.id), n.kind, shift(&n.pos)));
            nodes.push(ct.nodes[v].clone());
        }
    }
    let mut colors = Vec::new();
    for (e, edge) in gb.edges.iter().enumerate() {
        if let Some(i) = upper.iter().position(|&u| u == edge.target) {
            let f = gt.out_edges(lower[i])[0];
            if cb.edges[e] != ct.edges[f] {
                return Err(Error::BoundaryMismatch(format!(
                    "strand {i} is colored {} below and {} above",
                    cb.edges[e], ct.edges[f]
                )));
            }
            let fe = &gt.edges[f];
            let mut bends = edge.bends.clone();
            bends.push(gb.nodes[edge.target].pos.clone());
            bends.push(shift(&gt.nodes[lower[i]].pos));
            bends.extend(fe.bends.iter().map(&shift));
            g.add_edge(&format!("lo.{}", edge.id), map_b[&edge.source], map_t[&fe.target], bends);
        } else {
            g.add_edge(&format!("lo.{}", edge.id), map_b[&edge.source], map_b[&edge.target], edge.bends.clone());
        }
        colors.push(cb.edges[e].clone());
    }
    for (f, edge) in gt.edges.iter().enumerate() {
        if lower.contains(&edge.source) {
            continue;
        }
        g.add_edge(
            &format!("hi.{}", edge.id),
            map_t[&edge.source],
            map_t[&edge.target],
            edge.bends.iter().map(&shift).collect(),
        );
        colors.push(ct.edges[f].clone());
    }
    Ok((g, Coloring::new(colors, nodes)))
}

/// Places `right` to the right of `left` in the same strip.
pub fn juxtapose<F: Field>(
    left: (&ProgressiveGraph, &Coloring<F>),
    right: (&ProgressiveGraph, &Coloring<F>),
) -> Result<(ProgressiveGraph, Coloring<F>)> {
    let (gl, cl) = left;
    let (gr, cr) = right;
    if gl.bottom != gr.bottom || gl.top != gr.top {
        return Err(Error::BoundaryMismatch("juxtaposed diagrams must share the strip".into()));
    }
    let xs = |g: &ProgressiveGraph| -> Vec<Q> {
        g.nodes.iter().map(|n| n.pos.0.clone()).chain(g.edges.iter().flat_map(|e| e.bends.iter().map(|p| p.0.clone()))).collect()
    };
    let max_l = xs(gl).into_iter().max().unwrap_or_else(Q::zero);
    let min_r = xs(gr).into_iter().min().unwrap_or_else(Q::zero);
    let dx = max_l - min_r + Q::one();
    let moved = gr.map_points(|p| (p.0.clone() + dx.clone(), p.1.clone()));
    let mut g = ProgressiveGraph::new(gl.bottom.clone(), gl.top.clone());
    for n in &gl.nodes {
        g.add_node(&format!("l.{}", n.id), n.kind, n.pos.clone());
    }
    let off = g.nodes.len();
    for n in &moved.nodes {
        g.add_node(&format!("r.{}", n.id), n.kind, n.pos.clone());
    }
    for e in &gl.edges {
        g.add_edge(&format!("l.{}", e.id), e.source, e.target, e.bends.clone());
    }
    for e in &moved.edges {
        g.add_edge(&format!("r.{}", e.id), e.source + off, e.target + off, e.bends.clone());
    }
    let colors = cl.edges.iter().chain(&cr.edges).cloned().collect();
    let nodes = cl.nodes.iter().chain(&cr.nodes).cloned().collect();
    Ok((g, Coloring::new(colors, nodes)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_at_interpolates() {
        let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
        let a = g.add_boundary("a", (q(0, 1), q(0, 1)));
        let b = g.add_boundary("b", (q(2, 1), q(1, 1)));
        g.add_edge("e", a, b, vec![(q(1, 1), q(1, 2))]);
        assert_eq!(g.x_at(0, &q(1, 4)), Some(q(1, 2)));
        assert_eq!(g.x_at(0, &q(3, 4)), Some(q(3, 2)));
        assert_eq!(g.x_at(0, &q(2, 1)), None);
    }

    #[test]
    fn crossing_of_straight_edges() {
        let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
        let a = g.add_boundary("a", (q(0, 1), q(0, 1)));
        let b = g.add_boundary("b", (q(1, 1), q(1, 1)));
        let c = g.add_boundary("c", (q(1, 1), q(0, 1)));
        let d = g.add_boundary("d", (q(0, 1), q(1, 1)));
        g.add_edge("e", a, b, vec![]);
        g.add_edge("f", c, d, vec![]);
        let r = validate_progressive(&g);
        assert_eq!(r.violations, vec![Violation::Crossing { first: "e".into(), second: "f".into(), y: q(1, 2) }]);
    }

    #[test]
    fn parallel_edges_between_same_nodes_overlap() {
        let mut g = ProgressiveGraph::new(q(0, 1), q(3, 1));
        let u = g.add_inner("u", (q(0, 1), q(1, 1)));
        let v = g.add_inner("v", (q(0, 1), q(2, 1)));
        g.add_edge("e", u, v, vec![]);
        g.add_edge("f", u, v, vec![]);
        assert!(!validate_progressive(&g).is_accepted());
        // bent apart they are fine
        g.edges[1].bends.push((q(1, 1), q(3, 2)));
        assert!(validate_progressive(&g).is_accepted());
    }
}
