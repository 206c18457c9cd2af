//! The endomorphism algebra of a progenerator of the center and the simple
//! objects it detects.
//!
//! `T(R)`, with `R` the sum of the probes, is a progenerator of the module
//! category. Its endomorphisms in the center are the module endomorphisms
//! commuting with its half-braiding. When that algebra `E` is semisimple,
//! the simple center objects correspond to the simple `E`-modules, and their
//! number over a splitting field is `dim Z(E)`.

use rand::Rng;

use super::halfbraiding::HalfBraiding;
use super::module::TModule;
use super::monad::CentralMonad;
use super::{combination_kernel, linear_combination, push_equation, MatrixBasis, Term, Unknowns};
use crate::category::CategoryExt;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Rep;
use crate::linalg::{Matrix, SparseEchelon};

#[derive(Clone, Debug)]
pub struct CenterAlgebra<F> {
    pub generator: TModule<F>,
    pub halfbraiding: HalfBraiding<F>,
    pub basis: MatrixBasis<F>,
}

/// `Hom_H(v, w)` with coordinates read off the free entries.
fn intertwiner_basis<F: Field>(v: &Rep<F>, w: &Rep<F>) -> MatrixBasis<F> {
    let shape = (w.dim(), v.dim());
    let unknowns = Unknowns::new(&[shape]);
    let mut sys = SparseEchelon::new(unknowns.total());
    let (iv, iw) = (Matrix::identity(v.dim()), Matrix::identity(w.dim()));
    for (a, b) in v.action.iter().zip(&w.action) {
        let terms = [
            Term { block: 0, left: &iw, right: a, coef: F::one() },
            Term { block: 0, left: b, right: &iv, coef: -F::one() },
        ];
        push_equation(&mut sys, &unknowns, &terms, None);
    }
    let mats = sys.nullspace().iter().map(|x| unknowns.unflatten(x).remove(0)).collect();
    MatrixBasis::from_kernel(shape, mats, sys.free_columns())
}

impl<F: Field> CentralMonad<'_, F> {
    /// The sum of the probe objects.
    pub fn probe_sum(&self) -> Rep<F> {
        let b = self.backend();
        let hopf = b.hopf();
        let mut reps = self.probes().iter().map(|p| b.rep(p));
        let first = reps.next().expect("at least one probe");
        reps.fold(first, |acc, r| hopf.direct_sum(&acc, &r))
    }

    /// `End(T R)` in the center: module endomorphisms commuting with the
    /// half-braiding of the free module on the probe sum.
    pub fn center_algebra(&self) -> Result<CenterAlgebra<F>> {
        let b = self.backend();
        let mut generator = self.free_module_on(&self.probe_sum());
        generator.label = "T(R)".into();
        let halfbraiding = self.module_to_halfbraiding(&generator)?;
        let stage1 = intertwiner_basis(&generator.object, &generator.object);
        let dx = generator.dim();
        let pairs: Vec<(Matrix<F>, usize)> = self
            .probes()
            .iter()
            .zip(&halfbraiding.components)
            .map(|(p, g)| (g.clone(), b.dim(p)))
            .collect();
        let (kernel, free2) = combination_kernel(stage1.mats(), |phi| {
            pairs
                .iter()
                .map(|(g, dp)| {
                    let ip = Matrix::identity(*dp);
                    phi.kron(&ip).mul(g).sub(&g.mul(&ip.kron(phi)))
                })
                .collect()
        });
        let mats: Vec<Matrix<F>> = kernel.iter().map(|c| linear_combination(c, stage1.mats(), (dx, dx))).collect();
        let positions = free2.iter().map(|&i| stage1.positions[i]).collect();
        let basis = MatrixBasis::from_kernel((dx, dx), mats, positions);
        Ok(CenterAlgebra { generator, halfbraiding, basis })
    }
}

impl<F: Field> CenterAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis of the center `Z(E)`.
    pub fn center_basis(&self) -> Vec<Matrix<F>> {
        let mats = self.basis.mats();
        let (kernel, _) = combination_kernel(mats, |z| {
            let row: Vec<F> = mats.iter().flat_map(|e| self.basis.coords(&z.mul(e).sub(&e.mul(z)))).collect();
            vec![Matrix::from_fn(1, row.len(), |_, j| row[j].clone())]
        });
        let shape = self.basis.shape();
        kernel.iter().map(|c| linear_combination(c, mats, shape)).collect()
    }

    /// The number of simple center objects, `dim Z(E)`. Only meaningful for
    /// a semisimple center.
    pub fn count_simples(&self) -> usize {
        self.center_basis().len()
    }

    /// Primitive central idempotents of `E`, by splitting with eigenvalues
    /// of central elements. Needs a finite field over which `Z(E)` splits.
    pub fn central_idempotents(&self) -> Result<Vec<Matrix<F>>> {
        let values = F::elements().ok_or_else(|| Error::Universality("eigenvalue splitting needs a finite field".into()))?;
        let n = self.basis.shape().0;
        let mut idems = vec![Matrix::identity(n)];
        for z in self.center_basis() {
            let mut next = Vec::new();
            for e in idems {
                let r = e.rank();
                let eigen: Vec<F> = values.iter().filter(|l| z.sub(&Matrix::identity(n).scale(l)).mul(&e).rank() < r).cloned().collect();
                if eigen.len() <= 1 {
                    next.push(e);
                    continue;
                }
                let mut sum = Matrix::zeros(n, n);
                for l in &eigen {
                    let mut p = e.clone();
                    for mu in eigen.iter().filter(|m| *m != l) {
                        let inv = (l.clone() - mu.clone()).inv().expect("distinct eigenvalues");
                        p = p.mul(&z.sub(&Matrix::identity(n).scale(mu))).scale(&inv);
                    }
                    sum = sum.add(&p);
                    next.push(p);
                }
                if sum != e {
                    return Err(Error::Universality("a central element does not split over this field".into()));
                }
            }
            idems = next;
        }
        Ok(idems)
    }

    /// One simple module per primitive central idempotent, cut down from the
    /// isotypic component by images of singular endomorphisms `φ - λ`.
    pub fn simple_modules(&self, monad: &CentralMonad<'_, F>, rng: &mut impl Rng) -> Result<Vec<TModule<F>>> {
        let values = F::elements().ok_or_else(|| Error::Universality("eigenvalue splitting needs a finite field".into()))?;
        let mut out = Vec::new();
        for (i, e) in self.central_idempotents()?.iter().enumerate() {
            let label = format!("S{i}");
            let mut basis = Matrix::from_columns(e.rows(), &e.column_space());
            let mut module = monad
                .submodule(&self.generator, &basis, &label)
                .ok_or_else(|| Error::Universality(format!("{label}: isotypic component is not a submodule")))?;
            let mut attempts = 0;
            loop {
                let ends = monad.module_maps(&module, &module);
                if ends.len() == 1 {
                    break;
                }
                attempts += 1;
                if attempts > 256 {
                    return Err(Error::Universality(format!("{label}: no splitting endomorphism found")));
                }
                let coeffs: Vec<F> = (0..ends.len()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
                let phi = ends.combine(&coeffs);
                let d = module.dim();
                let cut = values.iter().find_map(|l| {
                    let psi = phi.sub(&Matrix::identity(d).scale(l));
                    let r = psi.rank();
                    (r > 0 && r < d).then_some(psi)
                });
                let Some(psi) = cut else { continue };
                let image = Matrix::from_columns(d, &psi.column_space());
                basis = basis.mul(&image);
                module = monad
                    .submodule(&self.generator, &basis, &label)
                    .ok_or_else(|| Error::Universality(format!("{label}: image is not a submodule")))?;
            }
            out.push(module);
        }
        Ok(out)
    }
}
