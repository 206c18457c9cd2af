//! Cutting a cylinder net open, reduction to the standard form
//! `ι_c ∘ h`, and stacking.
//!
//! Leftward crossings become strands to new top boundary points left of the
//! chart and from new bottom boundary points right of it; a lower crossing
//! is placed further out, so nothing crosses. A rightward crossing cannot be
//! opened that way and is first turned around with a coevaluation left of
//! the chart and an evaluation right of it, which leaves a leftward strand
//! colored by the dual. The result is a planar progressive graph evaluating
//! to `f: x ⊗ W' -> W ⊗ y`, with `W` the exits and `W' = D^(2-n)(W)` the
//! re-entries; bending `W'` up gives `h: x -> W ⊗ y ⊗ W'^`, a component of
//! the coend at `c = D^-a(W)`.

use super::{validate_locally_progressive, CylinderStringNet, FramedCylinder, SeamCrossing, SeamDirection};
use crate::category::{compose, tensor_morphisms, CategoryExt, Morphism, ObjectWord, TensorCategory};
use crate::center::CentralMonad;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::Matrix;
use crate::progressive::{evaluate, q, stack_graphs, validate_progressive, Coloring, NodeKind, ProgressiveGraph};

/// The planar graph obtained by cutting along the seam.
#[derive(Clone, Debug)]
pub struct CutOpen<F> {
    pub graph: ProgressiveGraph,
    pub coloring: Coloring<F>,
    /// `W`, the strands leaving through the left wall, lowest first.
    pub exits: ObjectWord,
    /// `W'`, the strands re-entering through the right wall, lowest first.
    pub entries: ObjectWord,
}

struct Ends {
    exit: usize,
    entry: usize,
    coev: Option<usize>,
    ev: Option<usize>,
}

pub fn cut_open<F: Field>(net: &CylinderStringNet<F>, backend: &dyn TensorCategory<F>) -> Result<CutOpen<F>> {
    let report = validate_locally_progressive(net, backend);
    if !report.is_accepted() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    let g = &net.graph;
    let walls = net.wall_nodes();
    let (zero, one) = (q(0, 1), q(1, 1));
    for (v, n) in g.nodes.iter().enumerate() {
        if n.kind == NodeKind::Inner && !walls.contains_key(&v) && (n.pos.0 == zero || n.pos.0 == one) {
            return Err(Error::ReductionNotSupported(format!("coupon {} sits on the seam", n.id)));
        }
    }

    let mut order: Vec<usize> = (0..net.seam.len()).collect();
    order.sort_by(|&a, &b| net.seam[a].radius.cmp(&net.seam[b].radius));
    let mut rank = vec![0; order.len()];
    for (i, &k) in order.iter().enumerate() {
        rank[k] = i;
    }
    let m = order.len();
    let mut heights = vec![zero.clone()];
    heights.extend(order.iter().map(|&k| net.seam[k].radius.clone()));
    heights.push(one.clone());
    let gap = heights.windows(2).map(|w| w[1].clone() - w[0].clone()).min().expect("two heights");
    let eps = gap * q(1, 4);

    let mut cut = ProgressiveGraph::new(zero.clone(), one.clone());
    let mut nodes: Vec<Option<Morphism<F>>> = Vec::new();
    let mut map = vec![usize::MAX; g.nodes.len()];
    for (v, n) in g.nodes.iter().enumerate() {
        if !walls.contains_key(&v) {
            map[v] = cut.add_node(&n.id, n.kind, n.pos.clone());
            nodes.push(net.coloring.nodes[v].clone());
        }
    }
    let mut exit_colors = Vec::with_capacity(m);
    let mut entry_colors = Vec::with_capacity(m);
    let mut ends = Vec::with_capacity(m);
    for (i, &k) in order.iter().enumerate() {
        let c = &net.seam[k];
        let exit = cut.add_boundary(&format!("~exit{i}"), (Q::integer(-((m - i) as i64)), one.clone()));
        nodes.push(None);
        let entry = cut.add_boundary(&format!("~entry{i}"), (Q::integer(2 + i as i64), zero.clone()));
        nodes.push(None);
        let left = &net.coloring.edges[net.only_edge(c.left).expect("validated wall node")];
        let right = &net.coloring.edges[net.only_edge(c.right).expect("validated wall node")];
        let (mut coev, mut ev) = (None, None);
        match c.direction {
            SeamDirection::Leftward => {
                exit_colors.push(left.clone());
                entry_colors.push(right.clone());
            }
            SeamDirection::Rightward => {
                // b leaves the left wall and b' arrives at the right wall
                coev = Some(cut.add_inner(&format!("~coev{i}"), (-eps.clone(), c.radius.clone() - eps.clone())));
                nodes.push(Some(backend.coev_left(left)));
                ev = Some(cut.add_inner(&format!("~ev{i}"), (one.clone() + eps.clone(), c.radius.clone() + eps.clone())));
                nodes.push(Some(backend.ev_left(right)));
                exit_colors.push(backend.left_dual_object(left));
                entry_colors.push(backend.left_dual_object(right));
            }
        }
        ends.push(Ends { exit, entry, coev, ev });
    }

    let mut colors = Vec::new();
    for (e, edge) in g.edges.iter().enumerate() {
        let mut bends = Vec::new();
        let source = match walls.get(&edge.source) {
            None => map[edge.source],
            Some(&(k, _)) => {
                bends.push(g.nodes[edge.source].pos.clone());
                let end = &ends[rank[k]];
                match net.seam[k].direction {
                    SeamDirection::Leftward => end.entry,
                    SeamDirection::Rightward => end.coev.expect("rightward"),
                }
            }
        };
        bends.extend(edge.bends.iter().cloned());
        let target = match walls.get(&edge.target) {
            None => map[edge.target],
            Some(&(k, _)) => {
                bends.push(g.nodes[edge.target].pos.clone());
                let end = &ends[rank[k]];
                match net.seam[k].direction {
                    SeamDirection::Leftward => end.exit,
                    SeamDirection::Rightward => end.ev.expect("rightward"),
                }
            }
        };
        cut.add_edge(&edge.id, source, target, bends);
        colors.push(net.coloring.edges[e].clone());
    }
    for (i, end) in ends.iter().enumerate() {
        if let (Some(cv), Some(ev)) = (end.coev, end.ev) {
            cut.add_edge(&format!("~out{i}"), cv, end.exit, Vec::new());
            colors.push(exit_colors[i].clone());
            cut.add_edge(&format!("~in{i}"), end.entry, ev, Vec::new());
            colors.push(entry_colors[i].clone());
        }
    }
    let report = validate_progressive(&cut);
    if !report.is_accepted() {
        return Err(Error::ReductionNotSupported(format!("the cut-open graph is not progressive: {report}")));
    }
    let concat = |ws: &[ObjectWord]| ws.iter().fold(ObjectWord::unit(), |acc, w| acc.concat(w));
    Ok(CutOpen {
        graph: cut,
        coloring: Coloring::new(colors, nodes),
        exits: concat(&exit_colors),
        entries: concat(&entry_colors),
    })
}

/// A net of the form `ι_c ∘ h`: a coupon `h: x -> F(c) ⊗ y ⊗ G(vc)` whose
/// outer output wraps once around the cylinder and is evaluated against the
/// inner one. `value` is the class of the net in `Hom(x, T_n y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormNet<F> {
    pub winding: i32,
    pub wrap: ObjectWord,
    pub target: ObjectWord,
    pub core: Morphism<F>,
    pub value: Matrix<F>,
}

impl<F: Field> NormalFormNet<F> {
    pub fn new(monad: &CentralMonad<'_, F>, wrap: ObjectWord, target: ObjectWord, core: Morphism<F>) -> Result<Self> {
        let b = monad.backend();
        let expected = monad.outer_object(&wrap).concat(&target).concat(&monad.inner_dual_object(&wrap));
        if core.codom() != &expected {
            return Err(Error::Typing(format!(
                "core has codomain {}, expected {}",
                b.word_label(core.codom()),
                b.word_label(&expected)
            )));
        }
        let value = monad.injection(&wrap, b.dim(&target))?.mul(core.matrix());
        Ok(NormalFormNet { winding: monad.winding(), wrap, target, core, value })
    }

    pub fn source(&self) -> &ObjectWord {
        self.core.dom()
    }

    /// The net drawing this normal form: `h` low in the chart, its outer
    /// output leaving through the left wall and coming back on the right
    /// into an evaluation against its inner output.
    pub fn standard_net(&self, monad: &CentralMonad<'_, F>) -> Result<CylinderStringNet<F>> {
        let b = monad.backend();
        let cyl = FramedCylinder::new(self.winding);
        let x = self.core.dom().clone();
        let fc = monad.outer_object(&self.wrap);
        let gvc = monad.inner_dual_object(&self.wrap);
        let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
        let mut nodes = Vec::new();
        let mut colors = Vec::new();
        let h = g.add_inner("h", (q(1, 2), q(1, 4)));
        nodes.push(Some(self.core.clone()));
        if !x.is_unit() {
            let p = g.add_boundary("in", FramedCylinder::inner_point());
            nodes.push(None);
            g.add_edge("x", p, h, Vec::new());
            colors.push(x);
        }
        if !self.target.is_unit() {
            let p = g.add_boundary("out", FramedCylinder::outer_point());
            nodes.push(None);
            g.add_edge("y", h, p, Vec::new());
            colors.push(self.target.clone());
        }
        let mut seam = Vec::new();
        if !fc.is_unit() {
            let back = b.double_dual_power_object(&fc, cyl.seam_power());
            let ev = b.ev_left(&gvc);
            if ev.dom() != &gvc.concat(&back) {
                return Err(Error::Typing(format!(
                    "{} does not close against {}",
                    b.word_label(&back),
                    b.word_label(&gvc)
                )));
            }
            let l = g.add_inner("wall.l", (q(0, 1), q(1, 2)));
            nodes.push(None);
            let r = g.add_inner("wall.r", (q(1, 1), q(1, 2)));
            nodes.push(None);
            let e = g.add_inner("ev", (q(3, 4), q(3, 4)));
            nodes.push(Some(ev));
            g.add_edge("c", h, l, Vec::new());
            colors.push(fc);
            g.add_edge("vc", h, e, Vec::new());
            colors.push(gvc);
            g.add_edge("c'", r, e, Vec::new());
            colors.push(back);
            seam.push(SeamCrossing { radius: q(1, 2), direction: SeamDirection::Leftward, left: l, right: r });
        }
        Ok(CylinderStringNet::new(cyl, g, Coloring::new(colors, nodes), seam))
    }
}

/// Cuts the net open and bends the re-entering strands up.
pub fn reduce_to_normal_form<F: Field>(net: &CylinderStringNet<F>, monad: &CentralMonad<'_, F>) -> Result<NormalFormNet<F>> {
    let b = monad.backend();
    if net.winding() != monad.winding() {
        return Err(Error::Typing(format!(
            "net lives on C_{} but the monad is T_{}",
            net.winding(),
            monad.winding()
        )));
    }
    let cut = cut_open(net, b)?;
    let f = if cut.graph.nodes.is_empty() { b.identity(&ObjectWord::unit()) } else { evaluate(&cut.graph, &cut.coloring, b)? };
    let (x, y) = net.boundary_value();
    let bend = tensor_morphisms(&b.identity(&x), &b.coev_right(&cut.entries));
    let wr = b.right_dual_object(&cut.entries);
    let h = compose(&tensor_morphisms(&f, &b.identity(&wr)), &bend)?;
    let (a, _) = monad.powers();
    let c = b.double_dual_power_object(&cut.exits, -a);
    NormalFormNet::new(monad, c, y, h)
}

/// `top` on top of `bottom`: the lower net is squeezed into radii
/// `[0, 1/3]`, the upper one into `[2/3, 1]`, and the strand between the
/// marked points runs straight through the middle.
pub fn stack<F: Field>(top: &CylinderStringNet<F>, bottom: &CylinderStringNet<F>) -> Result<CylinderStringNet<F>> {
    if top.cylinder != bottom.cylinder {
        return Err(Error::Typing(format!(
            "cannot stack C_{} on C_{}",
            top.winding(),
            bottom.winding()
        )));
    }
    let (g, coloring) = stack_graphs((&bottom.graph, &bottom.coloring), (&top.graph, &top.coloring))?;
    let third = q(1, 3);
    let mut g = g.map_points(|p| (p.0.clone(), p.1.clone() * third.clone()));
    g.bottom = q(0, 1);
    g.top = q(1, 1);
    let mut seam = Vec::new();
    for (net, prefix, shift) in [(bottom, "lo.", q(0, 1)), (top, "hi.", q(2, 1))] {
        for c in &net.seam {
            let find = |v: usize| {
                let id = format!("{prefix}{}", net.graph.nodes[v].id);
                g.node_index(&id).ok_or_else(|| Error::InvalidDiagram(format!("wall node {id} lost while stacking")))
            };
            seam.push(SeamCrossing {
                radius: (c.radius.clone() + shift.clone()) * third.clone(),
                direction: c.direction,
                left: find(c.left)?,
                right: find(c.right)?,
            });
        }
    }
    Ok(CylinderStringNet::new(top.cylinder, g, coloring, seam))
}
