use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringnet::category::{compose, tensor_all, CategoryExt, Morphism, ObjectWord, TensorCategory};
use stringnet::center::CentralMonad;
use stringnet::cylinder::{
    jitter_net, local_evaluate, null_relation_check, reduce_to_normal_form, stack, validate_locally_progressive,
    CylinderStringNet, CylinderViolation, EvaluationRectangle, FramedCylinder, NormalFormNet, SeamCrossing, SeamDirection,
};
use stringnet::field::{Field, Q};
use stringnet::group::GroupTable;
use stringnet::hopfmod::HopfBackend;
use stringnet::linalg::Matrix;
use stringnet::progressive::{q, Coloring, ProgressiveGraph};
use stringnet::vectg::VectG;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_hom(b: &dyn TensorCategory<Q>, x: &ObjectWord, y: &ObjectWord, rng: &mut ChaCha8Rng) -> Morphism<Q> {
    let basis = b.hom_basis(x, y).unwrap();
    assert!(!basis.is_empty(), "Hom({}, {}) vanishes", b.word_label(x), b.word_label(y));
    loop {
        let mut m = Morphism::from_parts(x.clone(), y.clone(), Matrix::zeros(b.dim(y), b.dim(x)));
        for f in &basis {
            m = m.add(&f.scale(&Q::from_i64(rng.gen_range(-3..=3)))).unwrap();
        }
        if !m.matrix().is_zero() {
            return m;
        }
    }
}

/// A random normal form `(c, h: x -> F(c) y G(vc))`.
fn random_normal_form(
    t: &CentralMonad<'_, Q>,
    x: &ObjectWord,
    c: &ObjectWord,
    y: &ObjectWord,
    rng: &mut ChaCha8Rng,
) -> NormalFormNet<Q> {
    let codom = t.outer_object(c).concat(y).concat(&t.inner_dual_object(c));
    let h = random_hom(t.backend(), x, &codom, rng);
    NormalFormNet::new(t, c.clone(), y.clone(), h).unwrap()
}

struct Case {
    name: &'static str,
    backend: Box<dyn TensorCategory<Q>>,
    /// `(x, c, y, d, z)` for two composable normal forms.
    words: [ObjectWord; 5],
}

fn cases() -> Vec<Case> {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let z2_words = [z2.word(&[0]), z2.word(&[1]), z2.word(&[0]), z2.word(&[1]), z2.word(&[0])];
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    // x = c y c^-1 and y = d z d^-1, so that every hom space used is nonzero
    let s3_words = [s3.word(&[3]), s3.word(&[1]), s3.word(&[2]), s3.word(&[3]), s3.word(&[1])];
    let h4 = HopfBackend::<Q>::sweedler();
    let h4_words = [h4.word(&["R"]), h4.word(&["P+"]), h4.word(&["S-"]), h4.word(&["P-"]), h4.word(&["R"])];
    vec![
        Case { name: "vect_z2", backend: Box::new(z2), words: z2_words },
        Case { name: "vect_s3", backend: Box::new(s3), words: s3_words },
        Case { name: "h4", backend: Box::new(h4), words: h4_words },
    ]
}

/// A net whose only strand goes from `p1` across the seam at radius `1/3`
/// and back across it at `2/3`, in the given directions.
fn there_and_back(b: &dyn TensorCategory<Q>, n: i32, first: SeamDirection, middle: &ObjectWord) -> CylinderStringNet<Q> {
    let cyl = FramedCylinder::new(n);
    let k = cyl.seam_power();
    let shifted = b.double_dual_power_object(middle, k);
    let unshifted = b.double_dual_power_object(middle, -k);
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let p1 = g.add_boundary("in", FramedCylinder::inner_point());
    let p2 = g.add_boundary("out", FramedCylinder::outer_point());
    let l1 = g.add_inner("l1", (q(0, 1), q(1, 3)));
    let r1 = g.add_inner("r1", (q(1, 1), q(1, 3)));
    let l2 = g.add_inner("l2", (q(0, 1), q(2, 3)));
    let r2 = g.add_inner("r2", (q(1, 1), q(2, 3)));
    let (colors, seam) = match first {
        SeamDirection::Rightward => {
            // p1 -> r1, l1 -> l2 (back leftward), r2 -> p2
            g.add_edge("a", p1, r1, vec![]);
            g.add_edge("b", l1, l2, vec![(q(1, 4), q(1, 2))]);
            g.add_edge("c", r2, p2, vec![]);
            (
                vec![shifted.clone(), middle.clone(), shifted],
                vec![
                    SeamCrossing { radius: q(1, 3), direction: SeamDirection::Rightward, left: l1, right: r1 },
                    SeamCrossing { radius: q(2, 3), direction: SeamDirection::Leftward, left: l2, right: r2 },
                ],
            )
        }
        SeamDirection::Leftward => {
            // p1 -> l1, r1 -> r2 (back rightward), l2 -> p2
            g.add_edge("a", p1, l1, vec![]);
            g.add_edge("b", r1, r2, vec![(q(3, 4), q(1, 2))]);
            g.add_edge("c", l2, p2, vec![]);
            (
                vec![unshifted.clone(), middle.clone(), unshifted],
                vec![
                    SeamCrossing { radius: q(1, 3), direction: SeamDirection::Leftward, left: l1, right: r1 },
                    SeamCrossing { radius: q(2, 3), direction: SeamDirection::Rightward, left: l2, right: r2 },
                ],
            )
        }
    };
    let nodes = vec![None; g.nodes.len()];
    CylinderStringNet::new(cyl, g, Coloring::new(colors, nodes), seam)
}

#[test]
fn trivial_nets_validate() {
    let b = VectG::<Q>::new(GroupTable::cyclic(2));
    let cyl = FramedCylinder::new(1);
    assert!(validate_locally_progressive(&CylinderStringNet::<Q>::empty(cyl), &b).is_accepted());
    let id = CylinderStringNet::<Q>::identity(cyl, &b.word(&[1]));
    assert!(validate_locally_progressive(&id, &b).is_accepted());
    assert_eq!(id.boundary_value(), (b.word(&[1]), b.word(&[1])));
}

#[test]
fn closed_loop_is_rejected() {
    let b = VectG::<Q>::new(GroupTable::cyclic(2));
    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let o = g.add_inner("o", (q(1, 2), q(1, 3)));
    g.add_edge("loop", o, o, vec![(q(1, 4), q(1, 2)), (q(1, 2), q(2, 3)), (q(3, 4), q(1, 2))]);
    let f = b.identity(&ObjectWord::unit());
    let net = CylinderStringNet::new(FramedCylinder::new(1), g, Coloring::new(vec![b.word(&[1])], vec![Some(f)]), vec![]);
    let report = validate_locally_progressive(&net, &b);
    assert!(report.violations.iter().any(|v| matches!(v, CylinderViolation::Chart(_))), "{report}");
}

#[test]
fn seam_data_is_checked() {
    let b = HopfBackend::<Q>::sweedler();
    let x = b.word(&["P+"]);
    let good = there_and_back(&b, 1, SeamDirection::Leftward, &x);
    assert!(validate_locally_progressive(&good, &b).is_accepted(), "{}", validate_locally_progressive(&good, &b));

    let mut bad_color = good.clone();
    bad_color.coloring.edges[1] = good.coloring.edges[0].clone();
    let report = validate_locally_progressive(&bad_color, &b);
    assert!(report.violations.iter().any(|v| matches!(v, CylinderViolation::SeamColor { .. })), "{report}");

    let mut bad_direction = good.clone();
    bad_direction.seam[0].direction = SeamDirection::Rightward;
    assert!(!validate_locally_progressive(&bad_direction, &b).is_accepted());

    let mut bad_radius = good.clone();
    bad_radius.seam[1].radius = q(1, 2);
    assert!(!validate_locally_progressive(&bad_radius, &b).is_accepted());

    let mut off_marked = CylinderStringNet::<Q>::identity(FramedCylinder::new(1), &x);
    off_marked.graph.nodes[0].pos = (q(1, 4), q(0, 1));
    let report = validate_locally_progressive(&off_marked, &b);
    assert!(report.violations.iter().any(|v| matches!(v, CylinderViolation::BoundaryOffMarkedPoint { .. })));
}

/// Two parallel strands, with coupons `f` (low) and `g` (high) on the left one.
fn two_coupon_net(b: &dyn TensorCategory<Q>, f: &Morphism<Q>, g: &Morphism<Q>, w: &ObjectWord) -> CylinderStringNet<Q> {
    let mut gr = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let p1 = gr.add_boundary("in", FramedCylinder::inner_point());
    let p2 = gr.add_boundary("out", FramedCylinder::outer_point());
    let u = gr.add_inner("f", (q(1, 2), q(1, 3)));
    let v = gr.add_inner("g", (q(1, 2), q(2, 3)));
    let s = gr.add_inner("s", (q(3, 4), q(1, 10)));
    let t = gr.add_inner("t", (q(3, 4), q(9, 10)));
    gr.add_edge("x", p1, u, vec![]);
    gr.add_edge("y", u, v, vec![]);
    gr.add_edge("z", v, p2, vec![]);
    gr.add_edge("w", s, t, vec![]);
    let colors = vec![f.dom().clone(), f.codom().clone(), g.codom().clone(), w.clone()];
    // w starts and ends in coupons so that the net has one strand at each marked point
    let start = Morphism::from_parts(ObjectWord::unit(), w.clone(), Matrix::zeros(b.dim(w), 1));
    let end = Morphism::from_parts(w.clone(), ObjectWord::unit(), Matrix::zeros(1, b.dim(w)));
    let nodes = vec![None, None, Some(f.clone()), Some(g.clone()), Some(start), Some(end)];
    CylinderStringNet::new(FramedCylinder::new(1), gr, Coloring::new(colors, nodes), vec![])
}

#[test]
fn local_evaluation() {
    let mut rng = rng(7);
    let b = HopfBackend::<Q>::sweedler();
    let (x, y, z, w) = (b.word(&["R"]), b.word(&["P+"]), b.word(&["S+"]), b.word(&["S-"]));
    let f = random_hom(&b, &x, &y, &mut rng);
    let g = random_hom(&b, &y, &z, &mut rng);
    let net = two_coupon_net(&b, &f, &g, &w);
    assert!(validate_locally_progressive(&net, &b).is_accepted(), "{}", validate_locally_progressive(&net, &b));

    // two parallel strands, no nodes
    let strands = EvaluationRectangle::new(q(1, 4), q(7, 8), q(2, 5), q(3, 5)).unwrap();
    let v = local_evaluate(&net, &strands, &b).unwrap();
    assert_eq!(v, b.identity(&y.concat(&w)));

    // one coupon next to a strand
    let one = EvaluationRectangle::new(q(1, 4), q(7, 8), q(1, 5), q(1, 2)).unwrap();
    let v = local_evaluate(&net, &one, &b).unwrap();
    assert_eq!(v, tensor_all(&[f.clone(), b.identity(&w)]));

    // both coupons: their composite
    let both = EvaluationRectangle::new(q(1, 4), q(5, 8), q(1, 5), q(4, 5)).unwrap();
    let v = local_evaluate(&net, &both, &b).unwrap();
    assert_eq!(v, compose(&g, &f).unwrap());
}

#[test]
fn invalid_rectangles_are_rejected() {
    let b = HopfBackend::<Q>::sweedler();
    let x = b.word(&["R"]);
    let net = CylinderStringNet::<Q>::identity(FramedCylinder::new(1), &x);
    // the strand runs along x = 1/2
    let side = EvaluationRectangle::new(q(1, 2), q(3, 4), q(1, 4), q(3, 4)).unwrap();
    assert!(local_evaluate(&net, &side, &b).is_err());
    // the marked point sits on the bottom side
    let bottom = EvaluationRectangle::new(q(1, 4), q(3, 4), q(0, 1), q(1, 2)).unwrap();
    assert!(local_evaluate(&net, &bottom, &b).is_err());
    assert!(EvaluationRectangle::new(q(1, 2), q(1, 4), q(0, 1), q(1, 2)).is_err());
}

#[test]
fn null_relations() {
    let mut rng = rng(11);
    let b = HopfBackend::<Q>::sweedler();
    let (x, y, z, w) = (b.word(&["R"]), b.word(&["P+"]), b.word(&["S+"]), b.word(&["S-"]));
    let f1 = random_hom(&b, &x, &y, &mut rng);
    let f2 = random_hom(&b, &x, &y, &mut rng);
    let g = random_hom(&b, &y, &z, &mut rng);
    let sum = f1.add(&f2).unwrap();
    let net = |f: &Morphism<Q>| two_coupon_net(&b, f, &g, &w);
    let rect = EvaluationRectangle::new(q(1, 4), q(5, 8), q(1, 5), q(1, 2)).unwrap();
    let one = Q::one();
    assert!(null_relation_check(&[(one.clone(), net(&f1)), (-one.clone(), net(&f1))], &rect, &b));
    assert!(null_relation_check(
        &[(one.clone(), net(&sum)), (-one.clone(), net(&f1)), (-one.clone(), net(&f2))],
        &rect,
        &b
    ));
    assert!(!null_relation_check(&[(one.clone(), net(&sum)), (-one.clone(), net(&f1))], &rect, &b));
    // differing outside R: the upper coupon is outside this rectangle
    let g2 = g.scale(&Q::from_i64(2));
    let other = two_coupon_net(&b, &f1, &g2, &w);
    assert!(!null_relation_check(&[(one.clone(), net(&f1)), (-one, other)], &rect, &b));
}

#[test]
fn identity_and_single_coupon_reduce_to_the_unit() {
    let mut rng = rng(3);
    for case in cases() {
        let b = case.backend.as_ref();
        let x = &case.words[0];
        for n in [-1, 0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            let id = CylinderStringNet::identity(FramedCylinder::new(n), x);
            let nf = reduce_to_normal_form(&id, &t).unwrap();
            assert!(nf.wrap.is_unit());
            assert_eq!(nf.value, t.eta(b.dim(x)), "{} at n = {n}", case.name);

            let f = random_hom(b, x, x, &mut rng);
            let net = NormalFormNet::new(&t, ObjectWord::unit(), x.clone(), f.clone()).unwrap().standard_net(&t).unwrap();
            let nf = reduce_to_normal_form(&net, &t).unwrap();
            assert_eq!(nf.core, f);
            assert_eq!(nf.value, t.eta(b.dim(x)).mul(f.matrix()));
        }
    }
}

#[test]
fn standard_form_reduces_to_itself() {
    let mut rng = rng(5);
    for case in cases() {
        let b = case.backend.as_ref();
        let [x, c, y, ..] = &case.words;
        for n in [-1, 0, 1, 2, 3] {
            let t = CentralMonad::new(b, n).unwrap();
            let nf = random_normal_form(&t, x, c, y, &mut rng);
            let net = nf.standard_net(&t).unwrap();
            let report = validate_locally_progressive(&net, b);
            assert!(report.is_accepted(), "{} n = {n}: {report}", case.name);
            assert_eq!(reduce_to_normal_form(&net, &t).unwrap(), nf, "{} n = {n}", case.name);
        }
    }
}

#[test]
fn stacking_standard_forms_is_kleisli_composition() {
    let mut rng = rng(9);
    for case in cases() {
        let b = case.backend.as_ref();
        let [x, c, y, d, z] = &case.words;
        for n in [-1, 0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            let lower = random_normal_form(&t, x, c, y, &mut rng);
            let upper = random_normal_form(&t, y, d, z, &mut rng);
            let net = stack(&upper.standard_net(&t).unwrap(), &lower.standard_net(&t).unwrap()).unwrap();
            let nf = reduce_to_normal_form(&net, &t).unwrap();
            // (c ⊗ d, (id ⊗ g ⊗ id) ∘ h)
            assert_eq!(nf.wrap, c.concat(d));
            let fc = b.identity(&t.outer_object(c));
            let gvc = b.identity(&t.inner_dual_object(c));
            let expected = compose(&tensor_all(&[fc, upper.core.clone(), gvc]), &lower.core).unwrap();
            assert_eq!(nf.core, expected, "{} n = {n}", case.name);
            let f = t.kleisli(x.clone(), y.clone(), lower.value.clone()).unwrap();
            let g = t.kleisli(y.clone(), z.clone(), upper.value.clone()).unwrap();
            assert_eq!(nf.value, t.kleisli_compose(&g, &f).unwrap().matrix, "{} n = {n}", case.name);
        }
    }
}

#[test]
fn stacking_identity_and_associativity() {
    let mut rng = rng(13);
    let b = HopfBackend::<Q>::sweedler();
    let [x, c, y, d, z] = cases().remove(2).words;
    for n in [0, 1, 2] {
        let t = CentralMonad::new(&b, n).unwrap();
        let cyl = FramedCylinder::new(n);
        let a = random_normal_form(&t, &x, &c, &y, &mut rng).standard_net(&t).unwrap();
        let bb = random_normal_form(&t, &y, &d, &z, &mut rng).standard_net(&t).unwrap();
        let cc = random_normal_form(&t, &z, &c, &y, &mut rng).standard_net(&t).unwrap();
        let value = |net: &CylinderStringNet<Q>| reduce_to_normal_form(net, &t).unwrap().value;
        let plain = value(&a);
        assert_eq!(value(&stack(&CylinderStringNet::identity(cyl, &y), &a).unwrap()), plain);
        assert_eq!(value(&stack(&a, &CylinderStringNet::identity(cyl, &x)).unwrap()), plain);
        let left = stack(&cc, &stack(&bb, &a).unwrap()).unwrap();
        let right = stack(&stack(&cc, &bb).unwrap(), &a).unwrap();
        assert_eq!(value(&left), value(&right));
    }
}

#[test]
fn stacking_checks_boundaries_and_windings() {
    let b = HopfBackend::<Q>::sweedler();
    let (x, y) = (b.word(&["R"]), b.word(&["S+"]));
    let c1 = FramedCylinder::new(1);
    assert!(stack(&CylinderStringNet::<Q>::identity(c1, &x), &CylinderStringNet::identity(c1, &y)).is_err());
    assert!(stack(&CylinderStringNet::<Q>::identity(c1, &x), &CylinderStringNet::identity(FramedCylinder::new(2), &x)).is_err());
}

#[test]
fn a_strand_crossing_the_seam_and_back_is_the_identity() {
    for case in cases() {
        let b = case.backend.as_ref();
        for middle in [&case.words[1], &case.words[2]] {
            for n in [-1, 0, 1, 2] {
                let t = CentralMonad::new(b, n).unwrap();
                for first in [SeamDirection::Leftward, SeamDirection::Rightward] {
                    let net = there_and_back(b, n, first, middle);
                    let report = validate_locally_progressive(&net, b);
                    assert!(report.is_accepted(), "{report}");
                    let (x, y) = net.boundary_value();
                    assert_eq!(x, y);
                    let nf = reduce_to_normal_form(&net, &t).unwrap();
                    assert_eq!(nf.value, t.eta(b.dim(&x)), "{} n = {n} {first:?}", case.name);
                }
            }
        }
    }
}

#[test]
fn coupons_slide_through_the_seam() {
    // h: x -> F(c) y G(vd), then u: c -> d either before the seam (inside
    // the core) or after it, on the re-entering strand
    let mut rng = rng(17);
    let b = HopfBackend::<Q>::sweedler();
    let (x, c, d, y) = (b.word(&["R"]), b.word(&["P+"]), b.word(&["R"]), b.word(&["S-"]));
    for n in [-1, 0, 1, 2] {
        let t = CentralMonad::new(&b, n).unwrap();
        let cyl = FramedCylinder::new(n);
        let (fc, fd, gvd) = (t.outer_object(&c), t.outer_object(&d), t.inner_dual_object(&d));
        let h = random_hom(&b, &x, &fc.concat(&y).concat(&gvd), &mut rng);
        let u = random_hom(&b, &c, &d, &mut rng);
        let (a, _) = t.powers();
        let fu = b.double_dual_power_morphism(&u, a);
        let before = compose(&tensor_all(&[fu.clone(), b.identity(&y), b.identity(&gvd)]), &h).unwrap();
        let slid = NormalFormNet::new(&t, d.clone(), y.clone(), before).unwrap();

        let k = cyl.seam_power();
        let back_c = b.double_dual_power_object(&fc, k);
        let back_d = b.double_dual_power_object(&fd, k);
        let u_after = b.double_dual_power_morphism(&fu, k);
        let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
        let p1 = g.add_boundary("in", FramedCylinder::inner_point());
        let p2 = g.add_boundary("out", FramedCylinder::outer_point());
        let hn = g.add_inner("h", (q(1, 2), q(1, 4)));
        let l = g.add_inner("l", (q(0, 1), q(1, 2)));
        let r = g.add_inner("r", (q(1, 1), q(1, 2)));
        let un = g.add_inner("u", (q(7, 8), q(5, 8)));
        let ev = g.add_inner("ev", (q(3, 4), q(3, 4)));
        g.add_edge("x", p1, hn, vec![]);
        g.add_edge("c", hn, l, vec![]);
        g.add_edge("y", hn, p2, vec![]);
        g.add_edge("vd", hn, ev, vec![]);
        g.add_edge("c'", r, un, vec![]);
        g.add_edge("d'", un, ev, vec![]);
        let colors = vec![x.clone(), fc.clone(), y.clone(), gvd.clone(), back_c, back_d];
        let nodes = vec![None, None, Some(h), None, None, Some(u_after), Some(b.ev_left(&gvd))];
        let seam = vec![SeamCrossing { radius: q(1, 2), direction: SeamDirection::Leftward, left: l, right: r }];
        let net = CylinderStringNet::new(cyl, g, Coloring::new(colors, nodes), seam);
        let report = validate_locally_progressive(&net, &b);
        assert!(report.is_accepted(), "{report}");
        assert_eq!(reduce_to_normal_form(&net, &t).unwrap().value, slid.value, "n = {n}");
    }
}

#[test]
fn values_are_isotopy_invariant() {
    let mut rng = rng(23);
    for case in cases() {
        let b = case.backend.as_ref();
        let [x, c, y, d, z] = &case.words;
        for n in [0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            let lower = random_normal_form(&t, x, c, y, &mut rng).standard_net(&t).unwrap();
            let upper = random_normal_form(&t, y, d, z, &mut rng).standard_net(&t).unwrap();
            for net in [lower.clone(), stack(&upper, &lower).unwrap(), there_and_back(b, n, SeamDirection::Rightward, c)] {
                let value = reduce_to_normal_form(&net, &t).unwrap().value;
                for _ in 0..3 {
                    let moved = jitter_net(&net, b, &mut rng, 97);
                    assert_eq!(reduce_to_normal_form(&moved, &t).unwrap().value, value, "{} n = {n}", case.name);
                }
            }
        }
    }
}

#[test]
fn winding_mismatch_and_coupons_on_the_seam() {
    let b = HopfBackend::<Q>::sweedler();
    let x = b.word(&["R"]);
    let t = CentralMonad::new(&b, 1).unwrap();
    let net = CylinderStringNet::<Q>::identity(FramedCylinder::new(2), &x);
    assert!(reduce_to_normal_form(&net, &t).is_err());

    let mut g = ProgressiveGraph::new(q(0, 1), q(1, 1));
    let p1 = g.add_boundary("in", FramedCylinder::inner_point());
    let p2 = g.add_boundary("out", FramedCylinder::outer_point());
    let s = g.add_inner("s", (q(0, 1), q(1, 2)));
    g.add_edge("a", p1, s, vec![]);
    g.add_edge("b", s, p2, vec![]);
    let net = CylinderStringNet::new(
        FramedCylinder::new(1),
        g,
        Coloring::new(vec![x.clone(), x.clone()], vec![None, None, Some(b.identity(&x))]),
        vec![],
    );
    assert!(matches!(reduce_to_normal_form(&net, &t), Err(stringnet::error::Error::ReductionNotSupported(_))));
}
