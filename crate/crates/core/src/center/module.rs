//! Modules over `T` (the Eilenberg-Moore category).

use super::monad::CentralMonad;
use super::{combination_kernel, linear_combination, MatrixBasis};
use crate::category::{CategoryExt, ObjectWord};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Rep;
use crate::linalg::Matrix;

/// A `T`-module `(d, ρ: T d -> d)`. The object is any module of the
/// underlying Hopf algebra, not necessarily a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModule<F> {
    pub label: String,
    pub object: Rep<F>,
    pub action: Matrix<F>,
}

impl<F: Field> TModule<F> {
    pub fn dim(&self) -> usize {
        self.object.dim()
    }
}

impl<F: Field> CentralMonad<'_, F> {
    /// `(T c, μ_c)`.
    pub fn free_module(&self, c: &ObjectWord) -> TModule<F> {
        let mut m = self.free_module_on(&self.backend().rep(c));
        m.label = format!("T({})", self.backend().word_label(c));
        m
    }

    pub fn free_module_on(&self, c: &Rep<F>) -> TModule<F> {
        TModule { label: "T(-)".into(), object: self.apply(c), action: self.mu(c.dim()) }
    }

    /// Equivariance of `ρ`, `ρ ∘ μ_d = ρ ∘ T(ρ)` and `ρ ∘ η_d = id`.
    pub fn check_module(&self, m: &TModule<F>) -> Result<()> {
        let d = m.dim();
        let n = self.base_dim();
        if m.action.shape() != (d, n * d) {
            return Err(Error::Shape { expected: (d, n * d), got: m.action.shape() });
        }
        let rho = &m.action;
        if !self.backend().hopf().is_intertwiner(&self.apply(&m.object), &m.object, rho) {
            return Err(Error::LawFailure(format!("action of {} is not a module map", m.label)));
        }
        if rho.mul(&self.mu(d)) != rho.mul(&self.apply_map(rho)) {
            return Err(Error::LawFailure(format!("action of {} is not associative", m.label)));
        }
        if !rho.mul(&self.eta(d)).is_identity() {
            return Err(Error::LawFailure(format!("action of {} is not unital", m.label)));
        }
        Ok(())
    }

    pub fn is_module_map(&self, from: &TModule<F>, to: &TModule<F>, f: &Matrix<F>) -> bool {
        f.shape() == (to.dim(), from.dim())
            && self.backend().hopf().is_intertwiner(&from.object, &to.object, f)
            && f.mul(&from.action) == to.action.mul(&self.apply_map(f))
    }

    /// Basis of `Hom_T(from, to)`.
    pub fn module_maps(&self, from: &TModule<F>, to: &TModule<F>) -> MatrixBasis<F> {
        let shape = (to.dim(), from.dim());
        let linear = self.backend().hom_basis_reps(&from.object, &to.object);
        let (kernel, _) = combination_kernel(&linear, |f| vec![f.mul(&from.action).sub(&to.action.mul(&self.apply_map(f)))]);
        let mats = kernel.iter().map(|c| linear_combination(c, &linear, shape)).collect();
        MatrixBasis::new(shape, mats)
    }

    /// The submodule spanned by the columns of `basis`, if it is one.
    pub fn submodule(&self, m: &TModule<F>, basis: &Matrix<F>, label: &str) -> Option<TModule<F>> {
        let object = self.backend().hopf().subrep(&m.object, basis)?;
        let image = m.action.mul(&self.apply_map(basis));
        let action = basis.solve_matrix(&image)?;
        Some(TModule { label: label.to_string(), object, action })
    }

    /// Whether some module isomorphism `a -> b` exists; tried on a few
    /// deterministic combinations of a basis of module maps.
    pub fn are_isomorphic(&self, a: &TModule<F>, b: &TModule<F>) -> bool {
        if a.dim() != b.dim() {
            return false;
        }
        let maps = self.module_maps(a, b);
        let n = maps.len();
        if n == 0 {
            return a.dim() == 0;
        }
        (0..n.max(1) * 4).any(|k| {
            let coeffs: Vec<F> = (0..n).map(|i| F::from_i64(((i * 7 + k * 3 + i * k) % 11) as i64 - 5)).collect();
            maps.combine(&coeffs).is_invertible()
        }) || maps.mats().iter().any(Matrix::is_invertible)
    }
}
