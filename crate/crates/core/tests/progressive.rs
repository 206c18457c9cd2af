use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stringnet::category::{compose, tensor_all, tensor_morphisms, CategoryExt, Morphism, ObjectWord, TensorCategory};
use stringnet::error::Error;
use stringnet::field::{Field, Fp, Q};
use stringnet::hopfmod::HopfBackend;
use stringnet::linalg::Matrix;
use stringnet::progressive::sample::{jitter, random_levels};
use stringnet::progressive::*;

/// `f_G3 . f_G2 . f_G1` written out by hand from the picture.
fn hand_assembled<F: Field>(fig: &FigureOne<F>) -> Morphism<F> {
    let c = &fig.backend;
    let id = |e: &str| c.identity(&fig.coloring.edges[fig.edge(e)]);
    let f = |v: &str| fig.coloring.nodes[fig.node(v)].clone().unwrap();
    let g1 = tensor_all(&[id("X1"), id("X2"), f("f4"), id("X4")]);
    let g2 = tensor_all(&[f("f1"), f("f2"), id("Z2"), f("f5")]);
    let g3 = tensor_all(&[id("Y1"), f("f3")]);
    compose(&g3, &compose(&g2, &g1).unwrap()).unwrap()
}

#[test]
fn figure_one_shape() {
    let g = figure_one();
    assert!(validate_progressive(&g).is_accepted(), "{}", validate_progressive(&g));
    assert_eq!(g.edges.len(), 10);
    // five inner nodes, four on the bottom line, three on the top line
    assert_eq!(g.nodes.len(), 12);
    assert_eq!(g.inner_nodes().count(), 5);
}

#[test]
fn simple_acceptances_and_rejections() {
    assert!(validate_progressive(&vertical_strand()).is_accepted());
    assert!(validate_progressive(&single_coupon()).is_accepted());
    let r = validate_progressive(&cup());
    assert!(r.violations.iter().any(|v| matches!(v, Violation::NotMonotone { edge, .. } if edge == "cup")), "{r}");
}

#[test]
fn boundary_rules_are_reported() {
    let mut g = single_coupon();
    g.nodes[1].pos.1 = q(1, 1);
    g.nodes[0].pos.1 = q(1, 4);
    let r = validate_progressive(&g);
    assert!(r.violations.contains(&Violation::InnerNodeOnBoundary { node: "f".into() }));
    assert!(r.violations.contains(&Violation::BoundaryNodeOffBoundary { node: "b".into() }));

    let mut g = vertical_strand();
    let t = g.node_index("t").unwrap();
    let b = g.node_index("b").unwrap();
    g.add_edge("y", b, t, vec![(q(1, 1), q(1, 2))]);
    let r = validate_progressive(&g);
    assert!(r.violations.contains(&Violation::BoundaryDegree { node: "b".into(), degree: 2 }));
}

#[test]
fn closed_loop_is_rejected() {
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let v = g.add_inner("v", (q(0, 1), q(1, 2)));
    g.add_edge("loop", v, v, vec![(q(1, 1), q(3, 4)), (q(2, 1), q(1, 2)), (q(1, 1), q(1, 4))]);
    assert!(!validate_progressive(&g).is_accepted());
}

#[test]
fn edge_through_node_is_rejected() {
    let mut g = vertical_strand();
    g.add_inner("c", (q(0, 1), q(1, 2)));
    let r = validate_progressive(&g);
    assert!(r.violations.contains(&Violation::ThroughNode { edge: "x".into(), node: "c".into() }));
}

#[test]
fn polarization_of_figure_one() {
    let g = figure_one();
    let pol = polarize(&g);
    let e = |id: &str| g.edge_index(id).unwrap();
    let f3 = g.node_index("f3").unwrap();
    assert_eq!(pol.inputs[f3], vec![e("Z1"), e("Z2")]);
    assert_eq!(pol.outputs[f3], vec![e("Y2"), e("Y3")]);
    let f4 = g.node_index("f4").unwrap();
    assert_eq!(pol.outputs[f4], vec![e("Z2"), e("Z3")]);
    let f5 = g.node_index("f5").unwrap();
    assert_eq!(pol.inputs[f5], vec![e("Z3"), e("X4")]);
    assert!(pol.outputs[f5].is_empty());
    let f1 = g.node_index("f1").unwrap();
    assert_eq!((pol.inputs[f1].len(), pol.outputs[f1].len()), (1, 1));
}

#[test]
fn polarization_ignores_the_probe_choice() {
    let g = figure_one();
    let pol = polarize(&g);
    for v in g.inner_nodes() {
        let y = g.nodes[v].pos.1.clone();
        let lowest = g.in_edges(v).iter().map(|&e| g.y_range(e).0).max().unwrap_or(g.bottom.clone());
        let highest = g.out_edges(v).iter().map(|&e| g.y_range(e).1).min().unwrap_or(g.top.clone());
        for k in 1..20 {
            let u = lowest.clone() + (y.clone() - lowest.clone()) * q(k, 20);
            assert_eq!(order_at(&g, &g.in_edges(v), &u).unwrap(), pol.inputs[v]);
            let w = y.clone() + (highest.clone() - y.clone()) * q(k, 20);
            assert_eq!(order_at(&g, &g.out_edges(v), &w).unwrap(), pol.outputs[v]);
        }
    }
}

#[test]
fn figure_one_slices_into_three_bands() {
    let fig = FigureOne::<Q>::random(1);
    let ir = slice(&fig.graph).unwrap();
    assert_eq!(ir.bands.len(), 3);
    let band1 = &ir.bands[0].blocks;
    assert_eq!(
        band1,
        &vec![
            Block::Strand { edge: fig.edge("X1") },
            Block::Strand { edge: fig.edge("X2") },
            Block::Node { node: fig.node("f4"), inputs: vec![fig.edge("X3")], outputs: vec![fig.edge("Z2"), fig.edge("Z3")] },
            Block::Strand { edge: fig.edge("X4") },
        ]
    );
    let nodes_in = |b: &Band| {
        b.blocks
            .iter()
            .filter_map(|x| match x {
                Block::Node { node, .. } => Some(fig.graph.nodes[*node].id.clone()),
                _ => None,
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(nodes_in(&ir.bands[1]), vec!["f1", "f2", "f5"]);
    assert_eq!(nodes_in(&ir.bands[2]), vec!["f3"]);

    // the first band alone evaluates to id (x) id (x) f4 (x) id
    let first = SliceIR { bands: vec![ir.bands[0].clone()] };
    let c = &fig.backend;
    let id = |e: &str| c.identity(&fig.coloring.edges[fig.edge(e)]);
    let f4 = fig.coloring.nodes[fig.node("f4")].clone().unwrap();
    assert_eq!(
        evaluate_slices(&fig.graph, &fig.coloring, &first, c).unwrap(),
        tensor_all(&[id("X1"), id("X2"), f4, id("X4")])
    );
}

#[test]
fn figure_one_matches_hand_assembly() {
    for seed in 0..10 {
        let fig = FigureOne::<Q>::random(seed);
        let got = evaluate(&fig.graph, &fig.coloring, &fig.backend).unwrap();
        assert_eq!(got, hand_assembled(&fig), "seed {seed}");
        let drawn = evaluate_with_levels(&fig.graph, &fig.coloring, &figure_one_levels(), &fig.backend).unwrap();
        assert_eq!(drawn, got);
    }
    // over a prime field as well
    let fig = FigureOne::<Fp<101>>::random(3);
    assert_eq!(evaluate(&fig.graph, &fig.coloring, &fig.backend).unwrap(), hand_assembled(&fig));
}

#[test]
fn evaluation_has_boundary_types() {
    let fig = FigureOne::<Q>::random(5);
    let m = evaluate(&fig.graph, &fig.coloring, &fig.backend).unwrap();
    let word = |ids: &[&str]| ids.iter().fold(ObjectWord::unit(), |acc, e| acc.concat(&fig.coloring.edges[fig.edge(e)]));
    assert_eq!(m.dom(), &word(&["X1", "X2", "X3", "X4"]));
    assert_eq!(m.codom(), &word(&["Y1", "Y2", "Y3"]));
}

#[test]
fn bad_levels_are_refused() {
    let g = figure_one();
    // a level through f1
    assert!(slice_with_levels(&g, &[q(-6, 1), q(0, 1), q(3, 1)]).is_err());
    // one band holding f4 and f3, which are joined by Z2
    assert!(matches!(slice_with_levels(&g, &[q(-6, 1), q(3, 1)]), Err(Error::Slicing(_))));
    assert!(slice_with_levels(&g, &[q(-6, 1), q(-5, 1), q(-5, 1), q(3, 1)]).is_err());
}

#[test]
fn single_coupon_evaluates_to_its_label() {
    let c = HopfBackend::<Q>::vect(&[2, 3]);
    let (x, y) = (c.word(&["V0"]), c.word(&["V1"]));
    let f = Morphism::from_parts(x.clone(), y.clone(), Matrix::from_i64(&[&[1, 2], &[0, -1], &[4, 4]]));
    let col = Coloring::new(vec![x.clone(), y.clone()], vec![None, Some(f.clone()), None]);
    assert_eq!(evaluate(&single_coupon(), &col, &c).unwrap(), f);
    let strand = Coloring::<Q>::new(vec![x.clone()], vec![None, None]);
    assert_eq!(evaluate(&vertical_strand(), &strand, &c).unwrap(), c.identity(&x));
}

#[test]
fn coloring_mismatch_names_the_node() {
    let c = HopfBackend::<Q>::vect(&[2, 3]);
    let (x, y) = (c.word(&["V0"]), c.word(&["V1"]));
    let f = Morphism::from_parts(y.clone(), y.clone(), Matrix::identity(3));
    let col = Coloring::new(vec![x, y], vec![None, Some(f), None]);
    match evaluate(&single_coupon(), &col, &c) {
        Err(Error::Coloring { node, .. }) => assert_eq!(node, "f"),
        other => panic!("expected a coloring error, got {other:?}"),
    }
}

#[test]
fn stacking_composes_and_juxtaposing_tensors() {
    let a = FigureOne::<Q>::random(8);
    let c = &a.backend;
    // a single coupon on top of the example graph, reading Y1 Y2 Y3
    let codom = evaluate(&a.graph, &a.coloring, c).unwrap().codom().clone();
    let mut top = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let f = top.add_inner("g", (q(2, 1), q(1, 2)));
    let out = top.add_boundary("o", (q(2, 1), q(1, 1)));
    let mut colors = Vec::new();
    for (i, gen) in codom.gens().iter().enumerate() {
        let b = top.add_boundary(&format!("i{i}"), (q(i as i64 * 2, 1), q(0, 1)));
        top.add_edge(&format!("e{i}"), b, f, vec![]);
        colors.push(ObjectWord::single(*gen));
    }
    top.add_edge("out", f, out, vec![]);
    colors.push(a.coloring.edges[a.edge("X1")].clone());
    let x1 = colors.last().unwrap().clone();
    let dim = |w: &ObjectWord| c.dim(w);
    let gm = Matrix::from_fn(dim(&x1), dim(&codom), |i, j| Q::from_i64((i + 2 * j) as i64 % 5 - 2));
    let g_morph = Morphism::from_parts(codom.clone(), x1.clone(), gm);
    let mut nodes = vec![None; top.nodes.len()];
    nodes[f] = Some(g_morph.clone());
    let top_col = Coloring::new(colors, nodes);
    assert!(validate_progressive(&top).is_accepted());

    let (stacked, stacked_col) = stack_graphs((&a.graph, &a.coloring), (&top, &top_col)).unwrap();
    assert!(validate_progressive(&stacked).is_accepted(), "{}", validate_progressive(&stacked));
    let lhs = evaluate(&stacked, &stacked_col, c).unwrap();
    let rhs = compose(&g_morph, &evaluate(&a.graph, &a.coloring, c).unwrap()).unwrap();
    assert_eq!(lhs, rhs);

    let (side, side_col) = juxtapose((&a.graph, &a.coloring), (&a.graph, &a.coloring)).unwrap();
    assert!(validate_progressive(&side).is_accepted());
    let m = evaluate(&a.graph, &a.coloring, c).unwrap();
    assert_eq!(evaluate(&side, &side_col, c).unwrap(), tensor_morphisms(&m, &m));
}

#[test]
fn mismatched_stack_is_refused() {
    let a = FigureOne::<Q>::random(2);
    let col = Coloring::<Q>::new(vec![a.coloring.edges[0].clone()], vec![None, None]);
    assert!(matches!(
        stack_graphs((&a.graph, &a.coloring), (&vertical_strand(), &col)),
        Err(Error::BoundaryMismatch(_))
    ));
}

#[test]
fn equal_heights_share_a_band() {
    // two coupons side by side at the same height
    let c = HopfBackend::<Q>::vect(&[2]);
    let x = c.word(&["V0"]);
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let mut nodes = Vec::new();
    let mut mats = Vec::new();
    for (i, x0) in [0i64, 3].iter().enumerate() {
        let b = g.add_boundary(&format!("b{i}"), (q(*x0, 1), q(0, 1)));
        let v = g.add_inner(&format!("f{i}"), (q(*x0, 1), q(1, 2)));
        let t = g.add_boundary(&format!("t{i}"), (q(*x0, 1), q(1, 1)));
        g.add_edge(&format!("in{i}"), b, v, vec![]);
        g.add_edge(&format!("out{i}"), v, t, vec![]);
        nodes.push(v);
        mats.push(Morphism::from_parts(x.clone(), x.clone(), Matrix::from_i64(&[&[1, i as i64 + 1], &[0, 2]])));
    }
    let mut ncol = vec![None; g.nodes.len()];
    ncol[nodes[0]] = Some(mats[0].clone());
    ncol[nodes[1]] = Some(mats[1].clone());
    let col = Coloring::new(vec![x.clone(); 4], ncol);
    let ir = slice(&g).unwrap();
    assert_eq!(ir.bands.len(), 1);
    assert_eq!(evaluate(&g, &col, &c).unwrap(), tensor_morphisms(&mats[0], &mats[1]));
}

#[test]
fn scalars_sinks_and_sources() {
    // a source 1 -> x next to a sink x -> 1 and a floating scalar
    let c = HopfBackend::<Q>::vect(&[2]);
    let x = c.word(&["V0"]);
    let one = ObjectWord::unit();
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let b = g.add_boundary("b", (q(0, 1), q(0, 1)));
    let sink = g.add_inner("sink", (q(0, 1), q(1, 2)));
    let source = g.add_inner("source", (q(2, 1), q(1, 2)));
    let scalar = g.add_inner("scalar", (q(5, 1), q(1, 3)));
    let t = g.add_boundary("t", (q(2, 1), q(1, 1)));
    g.add_edge("a", b, sink, vec![]);
    g.add_edge("c", source, t, vec![]);
    let s = Morphism::from_parts(x.clone(), one.clone(), Matrix::from_i64(&[&[1, 3]]));
    let u = Morphism::from_parts(one.clone(), x.clone(), Matrix::from_i64(&[&[2], &[-1]]));
    let k = Morphism::from_parts(one.clone(), one.clone(), Matrix::scalar(Q::from_i64(5)));
    let mut nodes = vec![None; g.nodes.len()];
    nodes[sink] = Some(s.clone());
    nodes[source] = Some(u.clone());
    nodes[scalar] = Some(k);
    let col = Coloring::new(vec![x.clone(), x.clone()], nodes);
    let expected = compose(&u, &s).unwrap().scale(&Q::from_i64(5));
    assert_eq!(evaluate(&g, &col, &c).unwrap(), expected);
}

#[test]
fn random_levels_and_jitters_agree() {
    let fig = FigureOne::<Q>::random(21);
    let reference = evaluate(&fig.graph, &fig.coloring, &fig.backend).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..25 {
        let levels = random_levels(&fig.graph, &mut rng);
        let got = evaluate_with_levels(&fig.graph, &fig.coloring, &levels, &fig.backend).unwrap();
        assert_eq!(got, reference);
        let moved = jitter(&fig.graph, &mut rng, 20);
        assert!(validate_progressive(&moved).is_accepted());
        assert_eq!(evaluate(&moved, &fig.coloring, &fig.backend).unwrap(), reference);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isotopy_invariance(seed in 0u64..1000, jitter_seed in 0u64..1000) {
        let fig = FigureOne::<Q>::random(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(jitter_seed);
        let moved = jitter(&fig.graph, &mut rng, 10);
        prop_assert_eq!(
            evaluate(&moved, &fig.coloring, &fig.backend).unwrap(),
            evaluate(&fig.graph, &fig.coloring, &fig.backend).unwrap()
        );
    }
}

fn _assert_object_safe(_: &dyn TensorCategory<Q>) {}
