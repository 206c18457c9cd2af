//! Evaluation rectangles in the cut chart, local evaluation and null graphs.

use super::{CylinderStringNet, SeamDirection};
use crate::category::{CategoryExt, Morphism, ObjectWord, TensorCategory};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::progressive::{evaluate, q, Coloring, NodeKind, Point, ProgressiveGraph};

/// The rectangle `[s1, s2] x [t1, t2]` of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationRectangle {
    pub s: (Q, Q),
    pub t: (Q, Q),
}

/// How one edge meets the horizontal band `t1 <= y <= t2`.
struct Clipped {
    /// Vertices of the part inside the band, bottom to top.
    inside: Vec<Point>,
    below: Option<Vec<Point>>,
    above: Option<Vec<Point>>,
}

impl EvaluationRectangle {
    pub fn new(s1: Q, s2: Q, t1: Q, t2: Q) -> Result<Self> {
        let (zero, one) = (q(0, 1), q(1, 1));
        if !(zero <= s1 && s1 < s2 && s2 <= one && zero <= t1 && t1 < t2 && t2 <= one) {
            return Err(Error::InvalidRectangle(format!("[{s1}, {s2}] x [{t1}, {t2}] is not a rectangle in the chart")));
        }
        Ok(EvaluationRectangle { s: (s1, s2), t: (t1, t2) })
    }

    fn strictly_inside(&self, p: &Point) -> bool {
        self.s.0 < p.0 && p.0 < self.s.1 && self.t.0 < p.1 && p.1 < self.t.1
    }

    fn clip(&self, g: &ProgressiveGraph, e: usize) -> Option<Clipped> {
        let pts = g.polyline(e);
        let (lo, hi) = g.y_range(e);
        let a = lo.clone().max(self.t.0.clone());
        let b = hi.clone().min(self.t.1.clone());
        if a >= b {
            return None;
        }
        let at = |y: &Q| (g.x_at(e, y).expect("edge covers the height"), y.clone());
        let mut inside = vec![at(&a)];
        inside.extend(pts.iter().filter(|p| a < p.1 && p.1 < b).cloned());
        inside.push(at(&b));
        let below = (lo < a).then(|| {
            let mut v: Vec<Point> = pts.iter().filter(|p| p.1 < a).cloned().collect();
            v.push(at(&a));
            v
        });
        let above = (b < hi).then(|| {
            let mut v = vec![at(&b)];
            v.extend(pts.iter().filter(|p| p.1 > b).cloned());
            v
        });
        Some(Clipped { inside, below, above })
    }

    /// Whether the part of edge `e` in the band lies inside the rectangle;
    /// an error if it touches a vertical side.
    fn edge_inside(&self, g: &ProgressiveGraph, e: usize) -> Result<Option<Clipped>> {
        let Some(c) = self.clip(g, e) else { return Ok(None) };
        for w in c.inside.windows(2) {
            let (x0, x1) = (&w[0].0, &w[1].0);
            let (lo, hi) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
            for side in [&self.s.0, &self.s.1] {
                if lo <= side && side <= hi {
                    return Err(Error::InvalidRectangle(format!("edge {} meets the vertical side x = {side}", g.edges[e].id)));
                }
            }
        }
        let x = &c.inside[0].0;
        Ok((self.s.0 < *x && *x < self.s.1).then_some(c))
    }

    /// Checks that the graph avoids the vertical sides and has no node on
    /// the boundary of the rectangle.
    pub fn check<F: Field>(&self, net: &CylinderStringNet<F>) -> Result<()> {
        let g = &net.graph;
        for n in &g.nodes {
            let p = &n.pos;
            let in_closed = self.s.0 <= p.0 && p.0 <= self.s.1 && self.t.0 <= p.1 && p.1 <= self.t.1;
            if in_closed && !self.strictly_inside(p) {
                return Err(Error::InvalidRectangle(format!("node {} lies on the boundary of the rectangle", n.id)));
            }
        }
        for e in 0..g.edges.len() {
            self.edge_inside(g, e)?;
        }
        Ok(())
    }

    /// The progressive graph `Γ ∩ R` in the strip `[t1, t2]`, with fresh
    /// boundary nodes where strands cross the horizontal sides.
    pub fn restrict<F: Field>(&self, net: &CylinderStringNet<F>) -> Result<(ProgressiveGraph, Coloring<F>)> {
        self.check(net)?;
        let g = &net.graph;
        let mut r = ProgressiveGraph::new(self.t.0.clone(), self.t.1.clone());
        let mut nodes = Vec::new();
        let mut map = vec![None; g.nodes.len()];
        for (v, n) in g.nodes.iter().enumerate() {
            if self.strictly_inside(&n.pos) {
                map[v] = Some(r.add_inner(&n.id, n.pos.clone()));
                nodes.push(net.coloring.nodes[v].clone());
            }
        }
        let mut colors = Vec::new();
        for (e, edge) in g.edges.iter().enumerate() {
            let Some(c) = self.edge_inside(g, e)? else { continue };
            let source = match map[edge.source] {
                Some(v) => v,
                None => {
                    nodes.push(None);
                    r.add_boundary(&format!("{}@bottom", edge.id), c.inside[0].clone())
                }
            };
            let target = match map[edge.target] {
                Some(v) => v,
                None => {
                    nodes.push(None);
                    r.add_boundary(&format!("{}@top", edge.id), c.inside.last().expect("two points").clone())
                }
            };
            let bends = c.inside[1..c.inside.len() - 1].to_vec();
            r.add_edge(&edge.id, source, target, bends);
            colors.push(net.coloring.edges[e].clone());
        }
        Ok((r, Coloring::new(colors, nodes)))
    }

    /// Everything outside the open rectangle: nodes, edge pieces with their
    /// colors, and the seam data.
    pub fn outside<F: Field>(&self, net: &CylinderStringNet<F>) -> Result<OutsidePart<F>> {
        self.check(net)?;
        let g = &net.graph;
        let mut nodes = Vec::new();
        for (v, n) in g.nodes.iter().enumerate() {
            if !self.strictly_inside(&n.pos) {
                nodes.push((n.pos.clone(), n.kind, net.coloring.nodes[v].clone()));
            }
        }
        let mut pieces = Vec::new();
        for e in 0..g.edges.len() {
            let color = net.coloring.edges[e].clone();
            match self.edge_inside(g, e)? {
                Some(c) => {
                    pieces.extend(c.below.into_iter().chain(c.above).map(|p| (p, color.clone())));
                }
                None => pieces.push((g.polyline(e), color)),
            }
        }
        let seam = net.seam.iter().map(|c| (c.radius.clone(), c.direction)).collect();
        Ok(OutsidePart { winding: net.winding(), nodes, pieces, seam })
    }
}

/// The complement of an evaluation rectangle, compared as a multiset.
#[derive(Clone, Debug)]
pub struct OutsidePart<F> {
    pub winding: i32,
    pub nodes: Vec<(Point, NodeKind, Option<Morphism<F>>)>,
    pub pieces: Vec<(Vec<Point>, ObjectWord)>,
    pub seam: Vec<(Q, SeamDirection)>,
}

fn same_multiset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&i| !used[i] && b[i] == *x);
        if let Some(i) = hit {
            used[i] = true;
        }
        hit.is_some()
    })
}

impl<F: Field> PartialEq for OutsidePart<F> {
    fn eq(&self, other: &Self) -> bool {
        self.winding == other.winding
            && same_multiset(&self.nodes, &other.nodes)
            && same_multiset(&self.pieces, &other.pieces)
            && same_multiset(&self.seam, &other.seam)
    }
}

/// `ν_R(Γ)`: the morphism of the part of the net inside `R`.
pub fn local_evaluate<F: Field>(
    net: &CylinderStringNet<F>,
    rect: &EvaluationRectangle,
    backend: &dyn TensorCategory<F>,
) -> Result<Morphism<F>> {
    let (g, c) = rect.restrict(net)?;
    if g.nodes.is_empty() {
        // nothing inside: the identity on the empty word
        return Ok(backend.identity(&ObjectWord::unit()));
    }
    evaluate(&g, &c, backend)
}

/// Whether `Σ λ_i Γ_i` is a null graph for the common rectangle `R`: the
/// nets agree on the boundary of `R` and outside it, and the local values
/// sum to zero.
pub fn null_relation_check<F: Field>(
    terms: &[(F, CylinderStringNet<F>)],
    rect: &EvaluationRectangle,
    backend: &dyn TensorCategory<F>,
) -> bool {
    let Some((_, first)) = terms.first() else { return true };
    let boundary = |n: &CylinderStringNet<F>| -> Option<Vec<(Point, ObjectWord)>> {
        let (g, c) = rect.restrict(n).ok()?;
        let mut out: Vec<(Point, ObjectWord)> = Vec::new();
        for (e, edge) in g.edges.iter().enumerate() {
            for v in [edge.source, edge.target] {
                if g.nodes[v].kind == NodeKind::Boundary {
                    out.push((g.nodes[v].pos.clone(), c.edges[e].clone()));
                }
            }
        }
        out.sort_by(|a, b| (&a.0 .1, &a.0 .0).cmp(&(&b.0 .1, &b.0 .0)));
        Some(out)
    };
    let (Some(b0), Ok(o0)) = (boundary(first), rect.outside(first)) else { return false };
    let mut sum: Option<Morphism<F>> = None;
    for (lambda, net) in terms {
        if net.boundary_value() != first.boundary_value() {
            return false;
        }
        match (boundary(net), rect.outside(net)) {
            (Some(b), Ok(o)) if b == b0 && o == o0 => {}
            _ => return false,
        }
        let Ok(value) = local_evaluate(net, rect, backend) else { return false };
        let scaled = value.scale(lambda);
        sum = match sum {
            None => Some(scaled),
            Some(s) => match s.add(&scaled) {
                Ok(t) => Some(t),
                Err(_) => return false,
            },
        };
    }
    sum.is_some_and(|s| s.matrix().is_zero())
}
