//! Bundled diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{q, Coloring, ProgressiveGraph};
use crate::category::{Morphism, ObjectWord, TensorCategory};
use crate::field::{Field, Q};
use crate::hopfmod::HopfBackend;
use crate::linalg::Matrix;

fn pt(x: (i64, i64), y: (i64, i64)) -> (Q, Q) {
    (q(x.0, x.1), q(y.0, y.1))
}

/// The ten-edge example graph in the strip `R x [-6, 3]`: five inner nodes
/// `f1..f5`, bottom nodes `b1..b4`, top nodes `t1..t3`, edges named by their
/// colors `X1..X4`, `Z1..Z3`, `Y1..Y3`.
pub fn figure_one() -> ProgressiveGraph {
    let mut g = ProgressiveGraph::new(q(-6, 1), q(3, 1));
    let f1 = g.add_inner("f1", pt((-1, 1), (0, 1)));
    let f2 = g.add_inner("f2", pt((1, 1), (-1, 1)));
    let f3 = g.add_inner("f3", pt((14, 5), (1, 1)));
    let f4 = g.add_inner("f4", pt((7, 2), (-4, 1)));
    let f5 = g.add_inner("f5", pt((53, 10), (-19, 10)));
    let b: Vec<usize> =
        [-2, 1, 4, 7].iter().enumerate().map(|(i, &x)| g.add_boundary(&format!("b{}", i + 1), pt((x, 1), (-6, 1)))).collect();
    let t: Vec<usize> = [(-1, 2), (5, 2), (11, 2)]
        .iter()
        .enumerate()
        .map(|(i, &x)| g.add_boundary(&format!("t{}", i + 1), pt(x, (3, 1))))
        .collect();
    g.add_edge("X1", b[0], f1, vec![pt((-2, 1), (-5, 1))]);
    g.add_edge("Y1", f1, t[0], vec![pt((-4, 5), (1, 1))]);
    g.add_edge("X2", b[1], f2, vec![]);
    g.add_edge("Z1", f2, f3, vec![pt((1, 1), (0, 1))]);
    g.add_edge("Y2", f3, t[1], vec![]);
    g.add_edge("Y3", f3, t[2], vec![pt((5, 1), (2, 1))]);
    g.add_edge("X3", b[2], f4, vec![]);
    g.add_edge("Z2", f4, f3, vec![pt((33, 10), (-2, 1))]);
    g.add_edge("Z3", f4, f5, vec![]);
    g.add_edge("X4", b[3], f5, vec![pt((7, 1), (-4, 1))]);
    g
}

/// The two regular levels drawn with the example graph.
pub fn figure_one_levels() -> Vec<Q> {
    vec![q(-6, 1), q(-5, 2), q(1, 2), q(3, 1)]
}

/// The example graph with a random coloring over plain vector spaces.
pub struct FigureOne<F> {
    pub graph: ProgressiveGraph,
    pub backend: HopfBackend<F>,
    pub coloring: Coloring<F>,
}

impl<F: Field> FigureOne<F> {
    /// Edge colors are generators of dimension 1 or 2 and node colors have
    /// entries in `-3..=3`, all drawn from `seed`.
    pub fn random(seed: u64) -> Self {
        let graph = figure_one();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..graph.edges.len()).map(|_| rng.gen_range(1..=2)).collect();
        let backend = HopfBackend::vect(&dims);
        let gens = backend.generators();
        let edges: Vec<ObjectWord> = (0..graph.edges.len()).map(|e| ObjectWord::single(gens[e])).collect();
        let nodes = (0..graph.nodes.len())
            .map(|v| {
                if graph.nodes[v].kind != super::NodeKind::Inner {
                    return None;
                }
                let word = |es: Vec<usize>| es.iter().fold(ObjectWord::unit(), |acc, &e| acc.concat(&edges[e]));
                let pol = super::polarize(&graph);
                let (dom, codom) = (word(pol.inputs[v].clone()), word(pol.outputs[v].clone()));
                let dim = |w: &ObjectWord| w.gens().iter().map(|g| dims[g.base as usize]).product::<usize>();
                let m = Matrix::from_fn(dim(&codom), dim(&dom), |_, _| F::from_i64(rng.gen_range(-3..=3)));
                Some(Morphism::from_parts(dom, codom, m))
            })
            .collect();
        FigureOne { graph, backend, coloring: Coloring::new(edges, nodes) }
    }

    pub fn edge(&self, id: &str) -> usize {
        self.graph.edge_index(id).expect("edge of the example graph")
    }

    pub fn node(&self, id: &str) -> usize {
        self.graph.node_index(id).expect("node of the example graph")
    }
}

/// A single U-shaped edge between two top boundary nodes.
pub fn cup() -> ProgressiveGraph {
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let a = g.add_boundary("t1", pt((0, 1), (1, 1)));
    let b = g.add_boundary("t2", pt((2, 1), (1, 1)));
    g.add_edge("cup", a, b, vec![pt((1, 1), (1, 5))]);
    g
}

/// One vertical edge across the strip `R x [0, 1]`.
pub fn vertical_strand() -> ProgressiveGraph {
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let a = g.add_boundary("b", pt((0, 1), (0, 1)));
    let b = g.add_boundary("t", pt((0, 1), (1, 1)));
    g.add_edge("x", a, b, vec![]);
    g
}

/// One coupon `f` at `(0, 1/2)` with input `x` and output `y`.
pub fn single_coupon() -> ProgressiveGraph {
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let a = g.add_boundary("b", pt((0, 1), (0, 1)));
    let f = g.add_inner("f", pt((0, 1), (1, 2)));
    let b = g.add_boundary("t", pt((0, 1), (1, 1)));
    g.add_edge("x", a, f, vec![]);
    g.add_edge("y", f, b, vec![]);
    g
}
