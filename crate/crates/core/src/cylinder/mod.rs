//! String-nets on the framed cylinders `C_n`, in a cut chart.
//!
//! The cylinder is cut open along its distinguished radial line. The chart is
//! the square `[0, 1] x [0, 1]` with the angle horizontal and the radius
//! vertical, inner circle at the bottom. Radial lines are the vertical lines
//! of the chart, so a graph is locally progressive exactly when its chart
//! picture is progressive and its seam crossings match up.
//!
//! A strand crossing the cut ends in a wall node on one vertical side and
//! continues from the partner wall node on the other side, at the same
//! radius. The framing only shows in the seam rule: the color on the right
//! side is `D^(2-n)` of the color on the left side, `D` the left double dual.
//! For `n = 1` this is the single `D` that closing a strand `c` against its
//! left dual `vc` requires; every unit of winding removes one more.

mod rectangle;
mod reduce;

pub use rectangle::{local_evaluate, null_relation_check, EvaluationRectangle, OutsidePart};
pub use reduce::{cut_open, reduce_to_normal_form, stack, CutOpen, NormalFormNet};

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::category::{CategoryExt, ObjectWord, TensorCategory};
use crate::field::{Field, Q};
use crate::progressive::{polarize, q, validate_progressive, Coloring, NodeKind, Point, ProgressiveGraph, Violation};

/// The cylinder `C_n`: an annulus whose 2-framing winds `n` times relative to
/// the radial direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FramedCylinder {
    pub winding: i32,
}

impl FramedCylinder {
    pub fn new(winding: i32) -> Self {
        FramedCylinder { winding }
    }

    /// The marked point on the inner circle.
    pub fn inner_point() -> Point {
        (q(1, 2), q(0, 1))
    }

    /// The marked point on the outer circle.
    pub fn outer_point() -> Point {
        (q(1, 2), q(1, 1))
    }

    /// `k` with `right color = D^k(left color)` across the seam.
    pub fn seam_power(&self) -> i32 {
        2 - self.winding
    }
}

/// Which way a strand travels through the seam as the radius grows.
/// `Leftward` leaves through the left side and comes back on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeamDirection {
    Leftward,
    Rightward,
}

impl fmt::Display for SeamDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeamDirection::Leftward => "leftward",
            SeamDirection::Rightward => "rightward",
        })
    }
}

/// A pair of wall nodes, `left` at angle 0 and `right` at angle 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeamCrossing {
    pub radius: Q,
    pub direction: SeamDirection,
    pub left: usize,
    pub right: usize,
}

/// A colored graph in the cut chart together with its seam data. Wall nodes
/// are inner nodes of the chart graph without a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderStringNet<F> {
    pub cylinder: FramedCylinder,
    pub graph: ProgressiveGraph,
    pub coloring: Coloring<F>,
    pub seam: Vec<SeamCrossing>,
}

impl<F: Field> CylinderStringNet<F> {
    pub fn new(cylinder: FramedCylinder, graph: ProgressiveGraph, coloring: Coloring<F>, seam: Vec<SeamCrossing>) -> Self {
        CylinderStringNet { cylinder, graph, coloring, seam }
    }

    /// The net without strands; its boundary value is `(1, 1)`.
    pub fn empty(cylinder: FramedCylinder) -> Self {
        let graph = ProgressiveGraph::new(q(0, 1), q(1, 1));
        CylinderStringNet { cylinder, graph, coloring: Coloring::new(Vec::new(), Vec::new()), seam: Vec::new() }
    }

    /// A single radial strand from the inner to the outer marked point.
    pub fn identity(cylinder: FramedCylinder, x: &ObjectWord) -> Self {
        if x.is_unit() {
            return Self::empty(cylinder);
        }
        let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
        let a = g.add_boundary("in", FramedCylinder::inner_point());
        let b = g.add_boundary("out", FramedCylinder::outer_point());
        g.add_edge("x", a, b, Vec::new());
        CylinderStringNet { cylinder, graph: g, coloring: Coloring::new(vec![x.clone()], vec![None, None]), seam: Vec::new() }
    }

    pub fn winding(&self) -> i32 {
        self.cylinder.winding
    }

    fn boundary_color(&self, nodes: Vec<usize>) -> ObjectWord {
        nodes
            .first()
            .and_then(|&v| (0..self.graph.edges.len()).find(|&e| self.graph.edges[e].source == v || self.graph.edges[e].target == v))
            .and_then(|e| self.coloring.edges.get(e).cloned())
            .unwrap_or_else(ObjectWord::unit)
    }

    /// `(X, Y)`: the colors at the inner and outer marked points, the unit
    /// where no strand ends.
    pub fn boundary_value(&self) -> (ObjectWord, ObjectWord) {
        (self.boundary_color(self.graph.bottom_boundary()), self.boundary_color(self.graph.top_boundary()))
    }

    fn wall_nodes(&self) -> BTreeMap<usize, (usize, bool)> {
        let mut out = BTreeMap::new();
        for (k, c) in self.seam.iter().enumerate() {
            out.insert(c.left, (k, true));
            out.insert(c.right, (k, false));
        }
        out
    }

    /// The edge at a degree-one node, if there is exactly one.
    pub(crate) fn only_edge(&self, v: usize) -> Option<usize> {
        let edges: Vec<usize> = (0..self.graph.edges.len())
            .filter(|&e| self.graph.edges[e].source == v || self.graph.edges[e].target == v)
            .collect();
        (edges.len() == 1).then(|| edges[0])
    }
}

/// One reason a net is not a valid string-net on the cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CylinderViolation {
    Chart(Violation),
    ColoringLength { edges: usize, nodes: usize },
    OutsideChart { item: String },
    BoundaryOffMarkedPoint { node: String },
    Wall { node: String, reason: String },
    Crossing { index: usize, reason: String },
    SeamColor { index: usize, expected: String, found: String },
    MissingMorphism { node: String },
    ForeignColor { item: String, reason: String },
}

impl fmt::Display for CylinderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderViolation::Chart(v) => write!(f, "chart: {v}"),
            CylinderViolation::ColoringLength { edges, nodes } => {
                write!(f, "coloring has {edges} edge and {nodes} node entries, which do not match the graph")
            }
            CylinderViolation::OutsideChart { item } => write!(f, "{item} lies outside the chart"),
            CylinderViolation::BoundaryOffMarkedPoint { node } => {
                write!(f, "boundary node {node} is not at a marked point")
            }
            CylinderViolation::Wall { node, reason } => write!(f, "wall node {node}: {reason}"),
            CylinderViolation::Crossing { index, reason } => write!(f, "seam crossing {index}: {reason}"),
            CylinderViolation::SeamColor { index, expected, found } => {
                write!(f, "seam crossing {index}: right color should be {expected}, found {found}")
            }
            CylinderViolation::MissingMorphism { node } => write!(f, "coupon {node} carries no morphism"),
            CylinderViolation::ForeignColor { item, reason } => write!(f, "{item}: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CylinderReport {
    pub violations: Vec<CylinderViolation>,
}

impl CylinderReport {
    pub fn is_accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CylinderReport {
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

/// Chart progressivity, placement of boundary and wall nodes, and seam
/// consistency: matching radii, directions and the seam color rule.
pub fn validate_locally_progressive<F: Field>(net: &CylinderStringNet<F>, backend: &dyn TensorCategory<F>) -> CylinderReport {
    let mut out: Vec<CylinderViolation> =
        validate_progressive(&net.graph).violations.into_iter().map(CylinderViolation::Chart).collect();
    let g = &net.graph;
    if out.iter().any(|v| matches!(v, CylinderViolation::Chart(Violation::DanglingEdge { .. }))) {
        return CylinderReport { violations: out };
    }
    if net.coloring.edges.len() != g.edges.len() || net.coloring.nodes.len() != g.nodes.len() {
        out.push(CylinderViolation::ColoringLength { edges: net.coloring.edges.len(), nodes: net.coloring.nodes.len() });
        return CylinderReport { violations: out };
    }
    if g.bottom != q(0, 1) || g.top != q(1, 1) {
        out.push(CylinderViolation::OutsideChart { item: "the strip".into() });
    }
    let (zero, one) = (q(0, 1), q(1, 1));
    let in_chart = |p: &Point| p.0 >= zero && p.0 <= one;
    for n in &g.nodes {
        if !in_chart(&n.pos) {
            out.push(CylinderViolation::OutsideChart { item: format!("node {}", n.id) });
        }
    }
    for e in &g.edges {
        // bends on a wall would touch the seam away from a wall node
        if e.bends.iter().any(|p| p.0 <= zero || p.0 >= one) {
            out.push(CylinderViolation::OutsideChart { item: format!("a bend of edge {}", e.id) });
        }
    }
    let marked = [FramedCylinder::inner_point(), FramedCylinder::outer_point()];
    for n in g.nodes.iter().filter(|n| n.kind == NodeKind::Boundary) {
        if !marked.contains(&n.pos) {
            out.push(CylinderViolation::BoundaryOffMarkedPoint { node: n.id.clone() });
        }
    }

    let walls = net.wall_nodes();
    let mut used = BTreeMap::new();
    for (k, c) in net.seam.iter().enumerate() {
        for v in [c.left, c.right] {
            if v >= g.nodes.len() {
                out.push(CylinderViolation::Crossing { index: k, reason: format!("node index {v} does not exist") });
                return CylinderReport { violations: out };
            }
            if let Some(prev) = used.insert(v, k) {
                out.push(CylinderViolation::Crossing {
                    index: k,
                    reason: format!("node {} is already used by crossing {prev}", g.nodes[v].id),
                });
            }
        }
        let (l, r) = (&g.nodes[c.left], &g.nodes[c.right]);
        if l.pos != (zero.clone(), c.radius.clone()) || r.pos != (one.clone(), c.radius.clone()) {
            out.push(CylinderViolation::Crossing {
                index: k,
                reason: format!("wall nodes {} and {} are not at angles 0 and 1 and radius {}", l.id, r.id, c.radius),
            });
        }
        if l.kind != NodeKind::Inner || r.kind != NodeKind::Inner {
            out.push(CylinderViolation::Crossing { index: k, reason: "wall nodes must be inner nodes".into() });
        }
        // incoming side and outgoing side
        let (enter, leave) = match c.direction {
            SeamDirection::Leftward => (c.left, c.right),
            SeamDirection::Rightward => (c.right, c.left),
        };
        let degree_ok = |v: usize, incoming: bool| {
            let ins = g.in_edges(v).len();
            let outs = g.out_edges(v).len();
            if incoming {
                ins == 1 && outs == 0
            } else {
                ins == 0 && outs == 1
            }
        };
        for (v, incoming) in [(enter, true), (leave, false)] {
            if !degree_ok(v, incoming) {
                out.push(CylinderViolation::Wall {
                    node: g.nodes[v].id.clone(),
                    reason: format!(
                        "a {} crossing needs exactly one {} edge here",
                        c.direction,
                        if incoming { "incoming" } else { "outgoing" }
                    ),
                });
            }
        }
        if let (Some(el), Some(er)) = (net.only_edge(c.left), net.only_edge(c.right)) {
            let left = &net.coloring.edges[el];
            let right = &net.coloring.edges[er];
            let expected = backend.double_dual_power_object(left, net.cylinder.seam_power());
            if *right != expected {
                out.push(CylinderViolation::SeamColor {
                    index: k,
                    expected: backend.word_label(&expected),
                    found: backend.word_label(right),
                });
            }
        }
    }
    let mut radii: Vec<&Q> = net.seam.iter().map(|c| &c.radius).collect();
    radii.sort();
    if radii.windows(2).any(|w| w[0] == w[1]) {
        out.push(CylinderViolation::Crossing { index: 0, reason: "two crossings share a radius".into() });
    }
    for (v, n) in g.nodes.iter().enumerate() {
        if n.kind != NodeKind::Inner {
            continue;
        }
        let on_wall = n.pos.0 == zero || n.pos.0 == one;
        if on_wall && !walls.contains_key(&v) && net.coloring.nodes[v].is_none() {
            out.push(CylinderViolation::Wall { node: n.id.clone(), reason: "not part of any seam crossing".into() });
        }
        if walls.contains_key(&v) {
            if net.coloring.nodes[v].is_some() {
                out.push(CylinderViolation::Wall { node: n.id.clone(), reason: "wall nodes carry no morphism".into() });
            }
        } else if net.coloring.nodes[v].is_none() {
            out.push(CylinderViolation::MissingMorphism { node: n.id.clone() });
        }
    }
    for (e, w) in net.coloring.edges.iter().enumerate() {
        if let Err(err) = backend.check_word(w) {
            out.push(CylinderViolation::ForeignColor { item: format!("edge {}", g.edges[e].id), reason: err.to_string() });
        }
    }
    CylinderReport { violations: out }
}

/// Moves coupons, bends and wall-node pairs by at most `3/den` while keeping
/// the net valid with the same polarization, here and midway. Boundary nodes
/// stay at the marked points and wall nodes stay on their walls. Returns the
/// net unchanged if no admissible move is found.
pub fn jitter_net<F: Field>(
    net: &CylinderStringNet<F>,
    backend: &dyn TensorCategory<F>,
    rng: &mut impl Rng,
    den: i64,
) -> CylinderStringNet<F> {
    let pol = polarize(&net.graph);
    let walls = net.wall_nodes();
    let valid = |n: &CylinderStringNet<F>| {
        validate_locally_progressive(n, backend).is_accepted() && polarize(&n.graph) == pol
    };
    for _ in 0..256 {
        let mut small = || q(rng.gen_range(-3..=3), den);
        let mut moved = net.clone();
        let shifts: Vec<Q> = net.seam.iter().map(|_| small()).collect();
        for (v, n) in moved.graph.nodes.iter_mut().enumerate() {
            if n.kind != NodeKind::Inner {
                continue;
            }
            if let Some(&(k, _)) = walls.get(&v) {
                n.pos.1 = n.pos.1.clone() + shifts[k].clone();
            } else {
                n.pos = (n.pos.0.clone() + small(), n.pos.1.clone() + small());
            }
        }
        for (c, s) in moved.seam.iter_mut().zip(&shifts) {
            c.radius = c.radius.clone() + s.clone();
        }
        for e in &mut moved.graph.edges {
            for p in &mut e.bends {
                *p = (p.0.clone() + small(), p.1.clone() + small());
            }
        }
        let mut midway = moved.clone();
        let half = q(1, 2);
        let mid = |a: &Point, b: &Point| ((a.0.clone() + b.0.clone()) * half.clone(), (a.1.clone() + b.1.clone()) * half.clone());
        for (m, o) in midway.graph.nodes.iter_mut().zip(&net.graph.nodes) {
            m.pos = mid(&m.pos, &o.pos);
        }
        for (m, o) in midway.graph.edges.iter_mut().zip(&net.graph.edges) {
            for (p, r) in m.bends.iter_mut().zip(&o.bends) {
                *p = mid(p, r);
            }
        }
        for (m, o) in midway.seam.iter_mut().zip(&net.seam) {
            m.radius = (m.radius.clone() + o.radius.clone()) * half.clone();
        }
        if valid(&moved) && valid(&midway) {
            return moved;
        }
    }
    net.clone()
}

