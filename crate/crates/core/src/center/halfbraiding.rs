//! Half-braidings `γ_c: F(c) ⊗ x -> x ⊗ G(c)` and their correspondence
//! with `T`-modules.
//!
//! From a module: `γ_c = (ρ ⊗ id) ∘ (ι_c ⊗ id) ∘ (id ⊗ id ⊗ G(coev_c))`.
//! Back: `ρ ∘ ι_c = (id ⊗ G(ev_c)) ∘ (γ_c ⊗ id)`, which fixes `ρ` on the
//! generating cells of the coend.

use super::module::TModule;
use super::monad::CentralMonad;
use super::{push_equation, Term, Unknowns};
use crate::category::{CategoryExt, Morphism, ObjectWord};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Rep;
use crate::linalg::{Matrix, SparseEchelon};

/// An object with one component per probe. Components on other objects are
/// obtained by naturality through a probe cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfBraiding<F> {
    pub label: String,
    pub object: Rep<F>,
    pub components: Vec<Matrix<F>>,
}

/// Natural unital module maps `F(P) ⊗ x -> x ⊗ G(P)` on the probes: an affine
/// space (`particular + span(directions)`), before the hexagon and
/// invertibility filters.
#[derive(Clone, Debug)]
pub struct HalfBraidingSpace<F> {
    pub object: Rep<F>,
    pub particular: Option<Vec<Matrix<F>>>,
    pub directions: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> HalfBraidingSpace<F> {
    /// The point `particular + Σ c_i direction_i`.
    pub fn point(&self, coeffs: &[F]) -> Option<Vec<Matrix<F>>> {
        let mut out = self.particular.clone()?;
        for (c, dir) in coeffs.iter().zip(&self.directions) {
            for (o, d) in out.iter_mut().zip(dir) {
                *o = o.add(&d.scale(c));
            }
        }
        Some(out)
    }
}

impl<F: Field> CentralMonad<'_, F> {
    /// `γ_c` of the half-braiding of a module, for any word `c`.
    pub fn halfbraiding_component(&self, m: &TModule<F>, c: &ObjectWord) -> Result<Matrix<F>> {
        let b = self.backend();
        let (dc, dx) = (b.dim(c), m.dim());
        let coev = b.coev_left(c);
        let step1 = Matrix::identity(dc * dx).kron(coev.matrix());
        let step2 = self.injection(c, dx)?.kron(&Matrix::identity(dc));
        let step3 = m.action.kron(&Matrix::identity(dc));
        Ok(step3.mul(&step2).mul(&step1))
    }

    pub fn module_to_halfbraiding(&self, m: &TModule<F>) -> Result<HalfBraiding<F>> {
        let components =
            self.probes().iter().map(|p| self.halfbraiding_component(m, p)).collect::<Result<Vec<_>>>()?;
        Ok(HalfBraiding { label: m.label.clone(), object: m.object.clone(), components })
    }

    pub fn halfbraiding_to_module(&self, hb: &HalfBraiding<F>) -> Result<TModule<F>> {
        let b = self.backend();
        let dx = hb.object.dim();
        let n = self.base_dim();
        let partial: Vec<Matrix<F>> = self
            .probes()
            .iter()
            .zip(&hb.components)
            .map(|(p, g)| {
                let dp = b.dim(p);
                let ev = b.ev_left(p);
                Matrix::identity(dx).kron(ev.matrix()).mul(&g.kron(&Matrix::identity(dp)))
            })
            .collect();
        let mut action = Matrix::zeros(dx, n * dx);
        for (t, &(k, a, bb)) in self.cells().iter().enumerate() {
            let dp = b.dim(&self.probes()[k]);
            for w in 0..dx {
                let col = partial[k].column((a * dx + w) * dp + bb);
                for (r, v) in col.into_iter().enumerate() {
                    action.set(r, t * dx + w, v);
                }
            }
        }
        let m = TModule { label: hb.label.clone(), object: hb.object.clone(), action };
        // the cells only see generators of the coend; check the rest
        self.check_module(&m).map_err(|e| Error::Universality(format!("{} does not descend to the coend: {e}", hb.label)))?;
        Ok(m)
    }

    /// `γ_c` through a probe cover: `Σ_m (id ⊗ π_m) γ_{k_m} (σ_m ⊗ id)`.
    pub fn extend_component(&self, hb: &HalfBraiding<F>, c: &ObjectWord) -> Result<Matrix<F>> {
        if let Some(k) = self.probes().iter().position(|p| p == c) {
            return Ok(hb.components[k].clone());
        }
        let dx = hb.object.dim();
        let dc = self.backend().dim(c);
        let cover = self.cover(c)?;
        let mut out = Matrix::zeros(dx * dc, dc * dx);
        for ((k, pi), sigma) in cover.maps.iter().zip(&cover.sections) {
            let piece = Matrix::identity(dx)
                .kron(pi.matrix())
                .mul(&hb.components[*k])
                .mul(&sigma.kron(&Matrix::identity(dx)));
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// Naturality along `f: c -> d`: `γ_d ∘ (F(f) ⊗ id) = (id ⊗ G(f)) ∘ γ_c`.
    pub fn check_naturality(&self, hb: &HalfBraiding<F>, f: &Morphism<F>) -> Result<()> {
        let dx = hb.object.dim();
        let lhs = self.extend_component(hb, f.codom())?.mul(&f.matrix().kron(&Matrix::identity(dx)));
        let rhs = Matrix::identity(dx).kron(f.matrix()).mul(&self.extend_component(hb, f.dom())?);
        if lhs != rhs {
            return Err(Error::LawFailure(format!(
                "{} is not natural along {} -> {}",
                hb.label,
                self.backend().word_label(f.dom()),
                self.backend().word_label(f.codom())
            )));
        }
        Ok(())
    }

    /// `γ_{c⊗d} = (γ_c ⊗ id_{G(d)}) ∘ (id_{F(c)} ⊗ γ_d)`.
    pub fn check_hexagon(&self, hb: &HalfBraiding<F>, c: &ObjectWord, d: &ObjectWord) -> Result<()> {
        let b = self.backend();
        let (dc, dd) = (b.dim(c), b.dim(d));
        let whole = self.extend_component(hb, &c.concat(d))?;
        let split = self
            .extend_component(hb, c)?
            .kron(&Matrix::identity(dd))
            .mul(&Matrix::identity(dc).kron(&self.extend_component(hb, d)?));
        if whole != split {
            return Err(Error::LawFailure(format!(
                "hexagon fails for {} on ({}, {})",
                hb.label,
                b.word_label(c),
                b.word_label(d)
            )));
        }
        Ok(())
    }

    /// Equivariance and invertibility of the probe components, naturality on
    /// probe morphisms, `γ_1 = id`, and the hexagon on all probe pairs.
    pub fn check_halfbraiding(&self, hb: &HalfBraiding<F>) -> Result<()> {
        let b = self.backend();
        let hopf = b.hopf();
        let x = &hb.object;
        for (p, g) in self.probes().iter().zip(&hb.components) {
            let src = hopf.tensor(&b.rep(&self.outer_object(p)), x);
            let tgt = hopf.tensor(x, &b.rep(&self.inner_object(p)));
            if !hopf.is_intertwiner(&src, &tgt, g) {
                return Err(Error::LawFailure(format!("{}: component at {} is not a module map", hb.label, b.word_label(p))));
            }
            if !g.is_invertible() {
                return Err(Error::LawFailure(format!("{}: component at {} is not invertible", hb.label, b.word_label(p))));
            }
        }
        for p in self.probes() {
            for q in self.probes() {
                for f in b.hom_basis(p, q)? {
                    self.check_naturality(hb, &f)?;
                }
            }
        }
        if !self.extend_component(hb, &ObjectWord::unit())?.is_identity() {
            return Err(Error::LawFailure(format!("{}: component at the unit is not the identity", hb.label)));
        }
        for p in self.probes() {
            for q in self.probes() {
                self.check_hexagon(hb, p, q)?;
            }
        }
        Ok(())
    }

    /// Solves the linear part of the half-braiding equations on `x`:
    /// equivariance and naturality on the probes, and `γ_1 = id`.
    pub fn solve_halfbraidings(&self, x: &Rep<F>) -> Result<HalfBraidingSpace<F>> {
        let b = self.backend();
        let hopf = b.hopf();
        let dx = x.dim();
        let probes = self.probes();
        let dims: Vec<usize> = probes.iter().map(|p| b.dim(p)).collect();
        let unknowns = Unknowns::new(&dims.iter().map(|&d| (dx * d, d * dx)).collect::<Vec<_>>());
        let mut sys = SparseEchelon::new(unknowns.total() + 1);
        for (k, p) in probes.iter().enumerate() {
            let src = hopf.tensor(&b.rep(&self.outer_object(p)), x);
            let tgt = hopf.tensor(x, &b.rep(&self.inner_object(p)));
            let (is, it) = (Matrix::identity(src.dim()), Matrix::identity(tgt.dim()));
            for (a_src, a_tgt) in src.action.iter().zip(&tgt.action) {
                let terms = [
                    Term { block: k, left: &it, right: a_src, coef: F::one() },
                    Term { block: k, left: a_tgt, right: &is, coef: -F::one() },
                ];
                push_equation(&mut sys, &unknowns, &terms, None);
            }
        }
        let ix = Matrix::identity(dx);
        for (i, p) in probes.iter().enumerate() {
            for (j, q) in probes.iter().enumerate() {
                for f in b.hom_basis(p, q)? {
                    let right = f.matrix().kron(&ix);
                    let left = ix.kron(f.matrix());
                    let (il, ir) = (Matrix::identity(dx * dims[j]), Matrix::identity(dims[i] * dx));
                    let terms = [
                        Term { block: j, left: &il, right: &right, coef: F::one() },
                        Term { block: i, left: &left, right: &ir, coef: -F::one() },
                    ];
                    push_equation(&mut sys, &unknowns, &terms, None);
                }
            }
        }
        let cover = self.cover(&ObjectWord::unit())?;
        let lefts: Vec<Matrix<F>> = cover.maps.iter().map(|(_, pi)| ix.kron(pi.matrix())).collect();
        let rights: Vec<Matrix<F>> = cover.sections.iter().map(|s| s.kron(&ix)).collect();
        let terms: Vec<Term<'_, F>> = cover
            .maps
            .iter()
            .zip(lefts.iter().zip(&rights))
            .map(|((k, _), (l, r))| Term { block: *k, left: l, right: r, coef: F::one() })
            .collect();
        push_equation(&mut sys, &unknowns, &terms, Some(&ix));

        let total = unknowns.total();
        let kernel = sys.nullspace();
        let mut particular = None;
        let mut directions = Vec::new();
        for v in kernel {
            if v[total].is_zero() {
                directions.push(unknowns.unflatten(&v[..total]));
            } else {
                particular = Some(unknowns.unflatten(&v[..total]));
            }
        }
        Ok(HalfBraidingSpace { object: x.clone(), particular, directions })
    }

    /// Points of the solution space that pass the hexagon and invertibility
    /// checks, searched over coefficient vectors drawn from `values` (all of
    /// a finite field, or `-1, 0, 1` over the rationals), at most `limit`
    /// candidates. Returns the half-braidings found and whether the search
    /// was exhaustive.
    pub fn halfbraidings_on(&self, x: &Rep<F>, label: &str, limit: usize) -> Result<(Vec<HalfBraiding<F>>, bool)> {
        let space = self.solve_halfbraidings(x)?;
        if space.particular.is_none() {
            return Ok((Vec::new(), true));
        }
        let values = F::elements().unwrap_or_else(|| vec![-F::one(), F::zero(), F::one()]);
        let dims = space.directions.len();
        let count = (values.len() as f64).powi(dims as i32);
        let exhaustive = count <= limit as f64;
        let mut found = Vec::new();
        let mut digits = vec![0usize; dims];
        for _ in 0..(count.min(limit as f64) as usize) {
            let coeffs: Vec<F> = digits.iter().map(|&d| values[d].clone()).collect();
            let comps = space.point(&coeffs).expect("particular solution present");
            let hb = HalfBraiding { label: format!("{label}#{}", found.len()), object: x.clone(), components: comps };
            if self.check_halfbraiding(&hb).is_ok() {
                found.push(hb);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < values.len() {
                    break;
                }
                *d = 0;
            }
        }
        Ok((found, exhaustive))
    }
}
