use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringnet::category::{compose, CategoryExt, Morphism, ObjectWord, TensorCategory};
use stringnet::center::{compare_twists, twist_powers, CentralMonad, KleisliMorphism};
use stringnet::field::{Field, F7, Q};
use stringnet::group::GroupTable;
use stringnet::hopfmod::HopfBackend;
use stringnet::linalg::Matrix;
use stringnet::vectg::VectG;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn registered(b: &dyn TensorCategory<Q>) -> Vec<ObjectWord> {
    let mut out = vec![ObjectWord::unit()];
    out.extend(b.generators().into_iter().map(ObjectWord::single));
    out
}

fn random_hom(b: &dyn TensorCategory<Q>, x: &ObjectWord, y: &ObjectWord, rng: &mut ChaCha8Rng) -> Morphism<Q> {
    let mut m = Morphism::from_parts(x.clone(), y.clone(), Matrix::zeros(b.dim(y), b.dim(x)));
    for f in b.hom_basis(x, y).unwrap() {
        m = m.add(&f.scale(&Q::from_i64(rng.gen_range(-3..=3)))).unwrap();
    }
    m
}

fn random_kleisli(t: &CentralMonad<'_, Q>, c: &ObjectWord, d: &ObjectWord, rng: &mut ChaCha8Rng) -> KleisliMorphism<Q> {
    let basis = t.kleisli_basis(c, d);
    let coeffs: Vec<Q> = (0..basis.len()).map(|_| Q::from_i64(rng.gen_range(-3..=3))).collect();
    t.kleisli(c.clone(), d.clone(), basis.combine(&coeffs)).unwrap()
}

/// Number of conjugacy classes of the subgroup `h`, by brute force.
fn class_count(g: &GroupTable, h: &[usize]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for &a in h {
        if seen[a] {
            continue;
        }
        count += 1;
        for &c in h {
            seen[g.mul(g.mul(c, a), g.inv(c))] = true;
        }
    }
    count
}

/// Simple objects of the center of `Vect_G`: pairs (class, irrep of the
/// centralizer), counted through class numbers of centralizers.
fn center_simples_oracle(g: &GroupTable) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut total = 0;
    for a in 0..n {
        if seen[a] {
            continue;
        }
        for c in 0..n {
            seen[g.mul(g.mul(c, a), g.inv(c))] = true;
        }
        let centralizer: Vec<usize> = (0..n).filter(|&c| g.mul(c, a) == g.mul(a, c)).collect();
        total += class_count(g, &centralizer);
    }
    total
}

#[test]
fn twist_powers_cover_all_windings() {
    assert_eq!(twist_powers(1), (0, 0));
    assert_eq!(twist_powers(3), (2, 0));
    assert_eq!(twist_powers(0), (-1, 0));
    assert_eq!(twist_powers(-2), (-1, 2));
}

#[test]
fn coend_of_unit_has_the_expected_dimension() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let h4 = HopfBackend::<Q>::sweedler();
    let kz2 = HopfBackend::<Q>::group_algebra(&GroupTable::cyclic(2));
    let vect = HopfBackend::<Q>::vect(&[2, 3]);
    for (b, expected) in [
        (&z2 as &dyn TensorCategory<Q>, 2),
        (&s3, 6),
        (&h4, 4),
        (&kz2, 2),
        (&vect, 1),
    ] {
        for n in [-1, 0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            assert_eq!(t.base_dim(), expected, "{} at winding {n}", b.fingerprint());
        }
    }
}

#[test]
fn missing_regular_module_is_reported() {
    let mut b = HopfBackend::<Q>::new(stringnet::hopf::HopfAlgebra::sweedler(), false);
    b.register("S+", b.hopf().trivial_rep()).unwrap();
    assert!(CentralMonad::new(&b, 1).is_err());
}

#[test]
fn vectg_free_module_is_the_conjugation_sum() {
    // T(δ_y) = ⊕_g δ_{g y g^-1}
    let g = GroupTable::symmetric3();
    let b = VectG::<Q>::new(g.clone());
    let t = CentralMonad::new(&b, 1).unwrap();
    for y in 0..g.order() {
        let ty = t.apply(&b.graded_rep(y));
        for h in 0..g.order() {
            let expected = (0..g.order()).filter(|&c| g.conjugate(c, y) == h).count();
            assert_eq!(ty.action[h].rank(), expected, "degree {h} in T(δ_{y})");
        }
    }
}

#[test]
fn trivial_backend_monad_is_the_identity() {
    let b = HopfBackend::<Q>::vect(&[2]);
    let t = CentralMonad::new(&b, 1).unwrap();
    assert!(t.base_unit().is_identity());
    assert!(t.base_multiplication().is_identity());
    assert!(t.eta(3).is_identity());
}

#[test]
fn monad_laws_on_all_registered_objects() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let h4 = HopfBackend::<Q>::sweedler();
    let kz2 = HopfBackend::<Q>::group_algebra(&GroupTable::cyclic(2));
    for b in [&z2 as &dyn TensorCategory<Q>, &s3, &h4, &kz2] {
        let t = CentralMonad::new(b, 1).unwrap();
        for y in registered(b) {
            t.check_laws(&b.rep(&y)).unwrap_or_else(|e| panic!("{} on {}: {e}", b.fingerprint(), b.word_label(&y)));
        }
    }
}

#[test]
fn twisted_monad_laws_for_h4() {
    let h4 = HopfBackend::<Q>::sweedler();
    for n in [-2, -1, 0, 2, 3] {
        let t = CentralMonad::new(&h4, n).unwrap();
        for y in registered(&h4) {
            t.check_laws(&h4.rep(&y)).unwrap_or_else(|e| panic!("winding {n} on {}: {e}", h4.word_label(&y)));
        }
    }
}

#[test]
fn monad_laws_on_a_composite_object() {
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 2).unwrap();
    let y = h4.word(&["P+", "S-"]);
    t.check_laws(&h4.rep(&y)).unwrap();
}

#[test]
fn injections_are_dinatural_and_equivariant() {
    let mut rng = rng();
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let h4 = HopfBackend::<Q>::sweedler();
    for b in [&s3 as &dyn TensorCategory<Q>, &h4] {
        for n in [-1, 0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            let objects = registered(b);
            for c in &objects {
                for d in &objects {
                    let f = random_hom(b, c, d, &mut rng);
                    t.check_dinaturality(&f, 2).unwrap();
                }
            }
            for c in &objects {
                for y in &objects {
                    assert!(t.injection_is_equivariant(c, &b.rep(y)).unwrap(), "{} winding {n}", b.fingerprint());
                }
            }
        }
    }
}

#[test]
fn dinaturality_on_words_of_length_two() {
    let mut rng = rng();
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 0).unwrap();
    let c = h4.word(&["S-", "P+"]);
    let d = h4.word(&["P-"]);
    for (x, y) in [(&c, &d), (&d, &c)] {
        let f = random_hom(&h4, x, y, &mut rng);
        t.check_dinaturality(&f, 1).unwrap();
    }
    assert!(t.injection_is_equivariant(&c, &h4.rep(&d)).unwrap());
}

#[test]
fn kleisli_category_laws() {
    let mut rng = rng();
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let h4 = HopfBackend::<Q>::sweedler();
    for b in [&z2 as &dyn TensorCategory<Q>, &h4] {
        let t = CentralMonad::new(b, 1).unwrap();
        let objects = registered(b);
        for c in &objects {
            for d in &objects {
                let f = random_kleisli(&t, c, d, &mut rng);
                assert_eq!(t.kleisli_compose(&t.kleisli_identity(d), &f).unwrap(), f);
                assert_eq!(t.kleisli_compose(&f, &t.kleisli_identity(c)).unwrap(), f);
            }
        }
        for _ in 0..6 {
            let pick = |rng: &mut ChaCha8Rng| objects[rng.gen_range(0..objects.len())].clone();
            let (a, c, d, e) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let f = random_kleisli(&t, &a, &c, &mut rng);
            let g = random_kleisli(&t, &c, &d, &mut rng);
            let h = random_kleisli(&t, &d, &e, &mut rng);
            let left = t.kleisli_compose(&h, &t.kleisli_compose(&g, &f).unwrap()).unwrap();
            let right = t.kleisli_compose(&t.kleisli_compose(&h, &g).unwrap(), &f).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn kleisli_composition_checks_objects() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let t = CentralMonad::new(&z2, 1).unwrap();
    let (e, g) = (ObjectWord::single(z2.simple(0)), ObjectWord::single(z2.simple(1)));
    let f = t.kleisli_identity(&e);
    let h = t.kleisli_identity(&g);
    assert!(t.kleisli_compose(&h, &f).is_err());
    assert!(t.kleisli(e.clone(), g.clone(), Matrix::zeros(1, 1)).is_err());
}

#[test]
fn free_and_forgetful_functors() {
    let mut rng = rng();
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 1).unwrap();
    let objects = registered(&h4);
    for c in &objects {
        for d in &objects {
            let f = random_hom(&h4, c, d, &mut rng);
            // U(I(f)) = T(f)
            assert_eq!(t.forget(&t.induce(&f)), t.apply_map(f.matrix()));
            for e in &objects {
                let g = random_hom(&h4, d, e, &mut rng);
                let gf = compose(&g, &f).unwrap();
                assert_eq!(t.induce(&gf), t.kleisli_compose(&t.induce(&g), &t.induce(&f)).unwrap());
            }
        }
        assert_eq!(t.induce(&h4.identity(c)), t.kleisli_identity(c));
    }
}

#[test]
fn free_modules_are_modules() {
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let h4 = HopfBackend::<Q>::sweedler();
    for b in [&s3 as &dyn TensorCategory<Q>, &h4] {
        for n in [0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            for c in registered(b) {
                t.check_module(&t.free_module(&c)).unwrap();
            }
        }
    }
}

#[test]
fn non_unital_action_is_rejected() {
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 1).unwrap();
    let mut m = t.free_module(&h4.word(&["S+"]));
    m.action = m.action.scale(&Q::from_i64(2));
    assert!(t.check_module(&m).is_err());
}

#[test]
fn modules_and_halfbraidings_correspond() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let h4 = HopfBackend::<Q>::sweedler();
    for b in [&z2 as &dyn TensorCategory<Q>, &s3, &h4] {
        for n in [0, 1, 2] {
            let t = CentralMonad::new(b, n).unwrap();
            for c in registered(b) {
                let m = t.free_module(&c);
                let hb = t.module_to_halfbraiding(&m).unwrap();
                t.check_halfbraiding(&hb).unwrap_or_else(|e| panic!("{} winding {n}: {e}", b.fingerprint()));
                let back = t.halfbraiding_to_module(&hb).unwrap();
                assert_eq!(back, m, "{} winding {n} on {}", b.fingerprint(), b.word_label(&c));
            }
        }
    }
}

#[test]
fn extended_components_agree_with_the_module() {
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 2).unwrap();
    let m = t.free_module(&h4.word(&["S-"]));
    let hb = t.module_to_halfbraiding(&m).unwrap();
    for c in [h4.word(&["S+"]), h4.word(&["P-", "S-"]), ObjectWord::unit()] {
        assert_eq!(t.extend_component(&hb, &c).unwrap(), t.halfbraiding_component(&m, &c).unwrap());
    }
    t.check_hexagon(&hb, &h4.word(&["P+"]), &h4.word(&["S-", "S-"])).unwrap();
}

#[test]
fn z2_generators_carry_four_halfbraidings() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let t = CentralMonad::new(&z2, 1).unwrap();
    let mut all = Vec::new();
    for g in 0..2 {
        let (found, exhaustive) = t.halfbraidings_on(&z2.graded_rep(g), &format!("d{g}"), 729).unwrap();
        assert!(exhaustive);
        assert_eq!(found.len(), 2);
        for hb in found {
            all.push(t.halfbraiding_to_module(&hb).unwrap());
        }
    }
    for i in 0..all.len() {
        for j in 0..all.len() {
            assert_eq!(t.are_isomorphic(&all[i], &all[j]), i == j);
        }
    }
}

#[test]
fn vector_spaces_have_only_the_trivial_halfbraiding() {
    let b = HopfBackend::<Q>::vect(&[3]);
    let t = CentralMonad::new(&b, 1).unwrap();
    let space = t.solve_halfbraidings(&b.rep(&b.word(&["V0"]))).unwrap();
    assert!(space.directions.is_empty());
    assert!(space.particular.unwrap()[0].is_identity());
}

#[test]
fn center_counts_match_the_class_oracle() {
    for g in [GroupTable::cyclic(2), GroupTable::symmetric3()] {
        let expected = center_simples_oracle(&g);
        let vg = VectG::<Q>::new(g.clone());
        let t = CentralMonad::new(&vg, 1).unwrap();
        assert_eq!(t.center_algebra().unwrap().count_simples(), expected, "Vect {}", g.name());
        let kg = HopfBackend::<Q>::group_algebra(&g);
        let t = CentralMonad::new(&kg, 1).unwrap();
        assert_eq!(t.center_algebra().unwrap().count_simples(), expected, "Rep {}", g.name());
    }
    assert_eq!(center_simples_oracle(&GroupTable::cyclic(2)), 4);
    assert_eq!(center_simples_oracle(&GroupTable::symmetric3()), 8);
}

#[test]
fn center_algebra_has_sum_of_squares_dimension() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let t = CentralMonad::new(&z2, 1).unwrap();
    assert_eq!(t.center_algebra().unwrap().dim(), 4);
}

#[test]
fn simple_center_objects_over_f7() {
    let b = VectG::<F7>::new(GroupTable::symmetric3());
    let t = CentralMonad::new(&b, 1).unwrap();
    let algebra = t.center_algebra().unwrap();
    assert_eq!(algebra.dim(), 36);
    let simples = algebra.simple_modules(&t, &mut rng()).unwrap();
    let mut dims: Vec<usize> = simples.iter().map(|s| s.dim()).collect();
    dims.sort_unstable();
    // |class| · dim(irrep of the centralizer)
    assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    for (i, s) in simples.iter().enumerate() {
        t.check_module(s).unwrap();
        assert_eq!(t.module_maps(s, s).len(), 1);
        for r in &simples[i + 1..] {
            assert!(t.module_maps(s, r).is_empty());
        }
        let hb = t.module_to_halfbraiding(s).unwrap();
        t.check_halfbraiding(&hb).unwrap();
    }
}

#[test]
fn presheaves_of_modules_round_trip() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let h4 = HopfBackend::<Q>::sweedler();
    for b in [&z2 as &dyn TensorCategory<Q>, &h4] {
        let t = CentralMonad::new(b, 1).unwrap();
        for c in registered(b) {
            let m = t.free_module(&c);
            let p = t.presheaf_from_module(&m);
            t.check_presheaf(&p).unwrap();
            let back = t.module_from_presheaf(&p).unwrap();
            assert_eq!(back.object, m.object);
            assert_eq!(back.action, m.action, "{} on {}", b.fingerprint(), b.word_label(&c));
            assert!(t.representability_check(&p, &m.object, &mut rng()).is_represented());
        }
    }
}

#[test]
fn split_coequalizer_is_represented_by_the_module() {
    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 0).unwrap();
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let tz = CentralMonad::new(&z2, 1).unwrap();
    let (found, _) = tz.halfbraidings_on(&z2.graded_rep(1), "d1", 729).unwrap();
    let mut cases = vec![(&t, t.free_module(&h4.word(&["S-"])))];
    for hb in &found {
        cases.push((&tz, tz.halfbraiding_to_module(hb).unwrap()));
    }
    for (t, m) in cases {
        let p = t.split_coequalizer_presheaf(&m);
        t.check_presheaf(&p).unwrap();
        let back = t.module_from_presheaf(&p).unwrap();
        assert_eq!(back.action, m.action, "{}", m.label);
        assert!(t.representability_check(&p, &m.object, &mut rng()).is_represented());
    }
}

#[test]
fn wrong_candidate_is_not_representing() {
    let z2 = VectG::<Q>::new(GroupTable::cyclic(2));
    let t = CentralMonad::new(&z2, 1).unwrap();
    let p = t.presheaf_from_module(&t.free_module(&ObjectWord::single(z2.simple(0))));
    assert!(!t.representability_check(&p, &z2.graded_rep(1), &mut rng()).is_represented());
}

#[test]
fn karoubi_comparison() {
    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    let t = CentralMonad::new(&s3, 1).unwrap();
    let set = t.karoubi_test_set(&mut rng()).unwrap();
    let report = t.karoubi_compare(&set, &registered(&s3));
    assert!(report.all_retracts(), "{report}");

    let h4 = HopfBackend::<Q>::sweedler();
    let t = CentralMonad::new(&h4, 1).unwrap();
    let set = t.karoubi_test_set(&mut rng()).unwrap();
    let report = t.karoubi_compare(&set, &registered(&h4));
    assert!(!report.witnesses().is_empty(), "{report}");
    assert!(report.to_string().ends_with("all retracts: no"));
}

#[test]
fn twists_differ_for_h4_but_not_for_groups() {
    let h4 = HopfBackend::<Q>::sweedler();
    let c = compare_twists(&h4, 0, 1, &registered(&h4)).unwrap();
    assert!(c.differ());
    assert!(!c.strictly_equal);
    let same = compare_twists(&h4, 1, 1, &registered(&h4)).unwrap();
    assert!(!same.differ() && same.strictly_equal);

    let s3 = VectG::<Q>::new(GroupTable::symmetric3());
    for n in [-2, -1, 0, 2, 3] {
        let c = compare_twists(&s3, 1, n, &registered(&s3)).unwrap();
        assert!(c.strictly_equal && !c.differ(), "winding {n}");
    }
}
