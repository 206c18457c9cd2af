//! The Kleisli category of `T`: morphisms `c̄ -> d̄` are morphisms `c -> T d`.

use super::monad::CentralMonad;
use super::MatrixBasis;
use crate::category::{CategoryExt, Morphism, ObjectWord};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleisliMorphism<F> {
    pub source: ObjectWord,
    pub target: ObjectWord,
    /// `dim T(target) x dim source`.
    pub matrix: crate::linalg::Matrix<F>,
}

impl<F: Field> CentralMonad<'_, F> {
    /// Checks that the matrix is a module map `source -> T(target)`.
    pub fn kleisli(&self, source: ObjectWord, target: ObjectWord, matrix: crate::linalg::Matrix<F>) -> Result<KleisliMorphism<F>> {
        let b = self.backend();
        b.check_word(&source)?;
        b.check_word(&target)?;
        let expected = (self.base_dim() * b.dim(&target), b.dim(&source));
        if matrix.shape() != expected {
            return Err(Error::Shape { expected, got: matrix.shape() });
        }
        if !b.hopf().is_intertwiner(&b.rep(&source), &self.apply(&b.rep(&target)), &matrix) {
            return Err(Error::NotAMorphism(format!(
                "{} -> T({})",
                b.word_label(&source),
                b.word_label(&target)
            )));
        }
        Ok(KleisliMorphism { source, target, matrix })
    }

    /// `g ∘ f = μ ∘ T(g) ∘ f`.
    pub fn kleisli_compose(&self, g: &KleisliMorphism<F>, f: &KleisliMorphism<F>) -> Result<KleisliMorphism<F>> {
        if f.target != g.source {
            let b = self.backend();
            return Err(Error::Composition {
                outer_domain: b.word_label(&g.source),
                inner_codomain: b.word_label(&f.target),
            });
        }
        let dz = self.backend().dim(&g.target);
        let matrix = self.mu(dz).mul(&self.apply_map(&g.matrix)).mul(&f.matrix);
        Ok(KleisliMorphism { source: f.source.clone(), target: g.target.clone(), matrix })
    }

    /// The Kleisli identity `η_c`.
    pub fn kleisli_identity(&self, c: &ObjectWord) -> KleisliMorphism<F> {
        let d = self.backend().dim(c);
        KleisliMorphism { source: c.clone(), target: c.clone(), matrix: self.eta(d) }
    }

    /// `I(f) = η ∘ f`.
    pub fn induce(&self, f: &Morphism<F>) -> KleisliMorphism<F> {
        let d = self.backend().dim(f.codom());
        KleisliMorphism { source: f.dom().clone(), target: f.codom().clone(), matrix: self.eta(d).mul(f.matrix()) }
    }

    /// `U(h) = μ ∘ T(h): T(source) -> T(target)`.
    pub fn forget(&self, h: &KleisliMorphism<F>) -> crate::linalg::Matrix<F> {
        let d = self.backend().dim(&h.target);
        self.mu(d).mul(&self.apply_map(&h.matrix))
    }

    /// Basis of `Hom(c, T d)`.
    pub fn kleisli_basis(&self, c: &ObjectWord, d: &ObjectWord) -> MatrixBasis<F> {
        let b = self.backend();
        let td = self.apply(&b.rep(d));
        let mats = b.hom_basis_reps(&b.rep(c), &td);
        MatrixBasis::new((td.dim(), b.dim(c)), mats)
    }
}
