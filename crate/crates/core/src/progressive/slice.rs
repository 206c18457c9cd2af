//! Regular levels, tensor decompositions and evaluation.

use std::collections::BTreeSet;

use super::{polarize, validate_progressive, Coloring, Polarization, ProgressiveGraph};
use crate::category::{compose, tensor_all, CategoryExt, Morphism, ObjectWord, TensorCategory};
use crate::error::{Error, Result};
use crate::field::{Field, Q};

/// A piece of a band: a strand passing through, or one inner node with its
/// ordered inputs and outputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Block {
    Strand { edge: usize },
    Node { node: usize, inputs: Vec<usize>, outputs: Vec<usize> },
}

/// The part of the graph between two consecutive regular levels, cut into
/// blocks ordered left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Band {
    pub bottom: Q,
    pub top: Q,
    pub blocks: Vec<Block>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SliceIR {
    pub bands: Vec<Band>,
}

impl SliceIR {
    /// `a = t_0 < t_1 < ... < t_k = b`.
    pub fn levels(&self) -> Vec<Q> {
        let mut out: Vec<Q> = self.bands.iter().map(|b| b.bottom.clone()).collect();
        if let Some(last) = self.bands.last() {
            out.push(last.top.clone());
        }
        out
    }
}

/// Slices a valid graph with as few bands as possible.
///
/// Inner nodes at equal height always share a band. Consecutive heights are
/// merged greedily as long as the merged band still splits into blocks: no
/// edge joins two of its nodes and the strand orders at its bottom and top
/// agree. Levels sit at midpoints between the remaining heights.
pub fn slice(g: &ProgressiveGraph) -> Result<SliceIR> {
    let report = validate_progressive(g);
    if !report.is_accepted() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    let pol = polarize(g);
    let heights: Vec<Q> = g.inner_nodes().map(|v| g.nodes[v].pos.1.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    if heights.is_empty() {
        let blocks = decompose(g, &pol, &g.bottom, &g.top).map_err(Error::Slicing)?;
        return Ok(SliceIR { bands: vec![Band { bottom: g.bottom.clone(), top: g.top.clone(), blocks }] });
    }
    let half = super::q(1, 2);
    let mids: Vec<Q> = heights.windows(2).map(|w| (w[0].clone() + w[1].clone()) * half.clone()).collect();
    let level_below = |i: usize| if i == 0 { g.bottom.clone() } else { mids[i - 1].clone() };
    let level_above = |j: usize| if j + 1 == heights.len() { g.top.clone() } else { mids[j].clone() };

    let mut bands = Vec::new();
    let mut i = 0;
    while i < heights.len() {
        let lo = level_below(i);
        let mut j = i;
        let mut blocks = decompose(g, &pol, &lo, &level_above(j)).map_err(Error::Slicing)?;
        while j + 1 < heights.len() {
            match decompose(g, &pol, &lo, &level_above(j + 1)) {
                Ok(b) => {
                    blocks = b;
                    j += 1;
                }
                Err(_) => break,
            }
        }
        bands.push(Band { bottom: lo, top: level_above(j), blocks });
        i = j + 1;
    }
    Ok(SliceIR { bands })
}

/// Slices at caller-chosen levels, which must start at the bottom, end at
/// the top, increase strictly, avoid inner nodes and give decomposable bands.
pub fn slice_with_levels(g: &ProgressiveGraph, levels: &[Q]) -> Result<SliceIR> {
    let report = validate_progressive(g);
    if !report.is_accepted() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    if levels.len() < 2 || levels[0] != g.bottom || levels[levels.len() - 1] != g.top {
        return Err(Error::Slicing("levels must start at the bottom and end at the top of the strip".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Slicing("levels must increase strictly".into()));
    }
    for v in g.inner_nodes() {
        if levels.contains(&g.nodes[v].pos.1) {
            return Err(Error::Slicing(format!("level {} meets inner node {}", g.nodes[v].pos.1, g.nodes[v].id)));
        }
    }
    let pol = polarize(g);
    let bands = levels
        .windows(2)
        .map(|w| {
            decompose(g, &pol, &w[0], &w[1])
                .map(|blocks| Band { bottom: w[0].clone(), top: w[1].clone(), blocks })
                .map_err(Error::Slicing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceIR { bands })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Token {
    Strand(usize),
    Node(usize),
}

/// Splits the band between two levels into blocks.
fn decompose(g: &ProgressiveGraph, pol: &Polarization, lo: &Q, hi: &Q) -> Result<Vec<Block>, String> {
    let inside: Vec<usize> = g.inner_nodes().filter(|&v| *lo < g.nodes[v].pos.1 && g.nodes[v].pos.1 < *hi).collect();
    let is_inside = |v: usize| inside.contains(&v);
    for e in &g.edges {
        if is_inside(e.source) && is_inside(e.target) {
            return Err(format!("edge {} joins two nodes of the band [{lo}, {hi}]", e.id));
        }
    }
    let tokens = |strands: Vec<usize>, end: &dyn Fn(usize) -> usize| -> Result<Vec<(Token, Vec<usize>)>, String> {
        let mut out: Vec<(Token, Vec<usize>)> = Vec::new();
        for e in strands {
            let v = end(e);
            let t = if is_inside(v) { Token::Node(v) } else { Token::Strand(e) };
            match out.last_mut() {
                Some((last, edges)) if *last == t => edges.push(e),
                _ => {
                    if matches!(t, Token::Node(_)) && out.iter().any(|(u, _)| *u == t) {
                        return Err(format!("edges of node {} are not adjacent at the band boundary", g.nodes[v].id));
                    }
                    out.push((t, vec![e]));
                }
            }
        }
        Ok(out)
    };
    let bottom = tokens(g.strands_at(lo), &|e| g.edges[e].target)?;
    let top = tokens(g.strands_at(hi), &|e| g.edges[e].source)?;
    for (t, edges) in &bottom {
        if let Token::Node(v) = t {
            if *edges != pol.inputs[*v] {
                return Err(format!("inputs of node {} are not in their polarized order", g.nodes[*v].id));
            }
        }
    }
    for (t, edges) in &top {
        if let Token::Node(v) = t {
            if *edges != pol.outputs[*v] {
                return Err(format!("outputs of node {} are not in their polarized order", g.nodes[*v].id));
            }
        }
    }

    let in_bottom: BTreeSet<Token> = bottom.iter().map(|(t, _)| *t).collect();
    let in_top: BTreeSet<Token> = top.iter().map(|(t, _)| *t).collect();
    let shared_b: Vec<Token> = bottom.iter().map(|(t, _)| *t).filter(|t| in_top.contains(t)).collect();
    let shared_t: Vec<Token> = top.iter().map(|(t, _)| *t).filter(|t| in_bottom.contains(t)).collect();
    if shared_b != shared_t {
        return Err(format!("strand orders at {lo} and {hi} disagree"));
    }

    let node_block = |v: usize| Block::Node { node: v, inputs: pol.inputs[v].clone(), outputs: pol.outputs[v].clone() };
    let by_x = |a: &usize, b: &usize| g.nodes[*a].pos.0.cmp(&g.nodes[*b].pos.0).then(a.cmp(b));
    let mut blocks = Vec::new();
    let mut scalars: Vec<usize> =
        inside.iter().copied().filter(|&v| pol.inputs[v].is_empty() && pol.outputs[v].is_empty()).collect();
    scalars.sort_by(by_x);
    blocks.extend(scalars.into_iter().map(node_block));

    // walk both sequences; unshared tokens are sinks (bottom only) or
    // sources (top only) and sit in the gap before the next shared token
    let (mut ib, mut it) = (0, 0);
    loop {
        let mut gap = Vec::new();
        while ib < bottom.len() && !in_top.contains(&bottom[ib].0) {
            if let Token::Node(v) = bottom[ib].0 {
                gap.push(v);
            }
            ib += 1;
        }
        while it < top.len() && !in_bottom.contains(&top[it].0) {
            if let Token::Node(v) = top[it].0 {
                gap.push(v);
            }
            it += 1;
        }
        gap.sort_by(by_x);
        blocks.extend(gap.into_iter().map(node_block));
        if ib == bottom.len() {
            debug_assert_eq!(it, top.len());
            break;
        }
        match bottom[ib].0 {
            Token::Strand(e) => blocks.push(Block::Strand { edge: e }),
            Token::Node(v) => blocks.push(node_block(v)),
        }
        ib += 1;
        it += 1;
    }
    Ok(blocks)
}

fn word_of<F: Field>(c: &Coloring<F>, edges: &[usize]) -> ObjectWord {
    edges.iter().fold(ObjectWord::unit(), |acc, &e| acc.concat(&c.edges[e]))
}

/// Evaluates a sliced graph: each band is the tensor product of its blocks,
/// and bands compose bottom to top.
pub fn evaluate_slices<F: Field, C: TensorCategory<F> + ?Sized>(
    g: &ProgressiveGraph,
    coloring: &Coloring<F>,
    ir: &SliceIR,
    backend: &C,
) -> Result<Morphism<F>> {
    if coloring.edges.len() != g.edges.len() || coloring.nodes.len() != g.nodes.len() {
        return Err(Error::Coloring {
            node: "<graph>".into(),
            expected: format!("{} edge and {} node colors", g.edges.len(), g.nodes.len()),
            found: format!("{} and {}", coloring.edges.len(), coloring.nodes.len()),
        });
    }
    for w in &coloring.edges {
        backend.check_word(w)?;
    }
    let mut acc: Option<Morphism<F>> = None;
    for band in &ir.bands {
        let parts = band
            .blocks
            .iter()
            .map(|b| match b {
                Block::Strand { edge } => Ok(backend.identity(&coloring.edges[*edge])),
                Block::Node { node, inputs, outputs } => {
                    let id = &g.nodes[*node].id;
                    let f = coloring.nodes[*node].as_ref().ok_or_else(|| Error::Coloring {
                        node: id.clone(),
                        expected: "a morphism".into(),
                        found: "nothing".into(),
                    })?;
                    let (dom, codom) = (word_of(coloring, inputs), word_of(coloring, outputs));
                    if f.dom() != &dom || f.codom() != &codom {
                        return Err(Error::Coloring {
                            node: id.clone(),
                            expected: format!("{} -> {}", backend.word_label(&dom), backend.word_label(&codom)),
                            found: format!("{} -> {}", backend.word_label(f.dom()), backend.word_label(f.codom())),
                        });
                    }
                    Ok(f.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let m = tensor_all(&parts);
        acc = Some(match acc {
            None => m,
            Some(prev) => compose(&m, &prev)?,
        });
    }
    acc.ok_or_else(|| Error::Slicing("no bands".into()))
}

/// Validates, slices with the default levels and evaluates.
pub fn evaluate<F: Field, C: TensorCategory<F> + ?Sized>(
    g: &ProgressiveGraph,
    coloring: &Coloring<F>,
    backend: &C,
) -> Result<Morphism<F>> {
    let ir = slice(g)?;
    evaluate_slices(g, coloring, &ir, backend)
}

pub fn evaluate_with_levels<F: Field, C: TensorCategory<F> + ?Sized>(
    g: &ProgressiveGraph,
    coloring: &Coloring<F>,
    levels: &[Q],
    backend: &C,
) -> Result<Morphism<F>> {
    let ir = slice_with_levels(g, levels)?;
    evaluate_slices(g, coloring, &ir, backend)
}
