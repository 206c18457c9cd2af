//! `Vect_G`: finite-dimensional `G`-graded vector spaces, skeletal on the
//! simple objects `delta_g`.
//!
//! Internally a graded space is a module over the function algebra `K^G`,
//! which makes the twisted-center machinery uniform across backends. Duals
//! are strict: `v(delta_g) = delta_{g^-1} = (delta_g)^`, so the double dual is
//! the identity functor on the nose.

use crate::category::{Generator, ObjectWord, TensorCategory};
use crate::field::Field;
use crate::group::GroupTable;
use crate::hopf::{HopfAlgebra, Rep};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct VectG<F> {
    group: GroupTable,
    hopf: HopfAlgebra<F>,
}

/// Builds the backend from a verified table (see [`GroupTable::from_table`]).
pub fn load_group<F: Field>(group: GroupTable) -> VectG<F> {
    VectG::new(group)
}

impl<F: Field> VectG<F> {
    pub fn new(group: GroupTable) -> Self {
        let hopf = HopfAlgebra::function_algebra(&group);
        VectG { group, hopf }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// The generator `delta_g`.
    pub fn simple(&self, g: usize) -> Generator {
        assert!(g < self.group.order());
        Generator::new(g as u32)
    }

    pub fn word(&self, elements: &[usize]) -> ObjectWord {
        elements.iter().map(|&g| self.simple(g)).collect()
    }

    /// Degree of a word: the product of its letters.
    pub fn degree(&self, w: &ObjectWord) -> usize {
        w.gens().iter().fold(self.group.identity(), |acc, g| self.group.mul(acc, g.base as usize))
    }

    /// The one-dimensional module of degree `g`.
    pub fn graded_rep(&self, g: usize) -> Rep<F> {
        Rep::new(
            (0..self.group.order())
                .map(|h| Matrix::scalar(if h == g { F::one() } else { F::zero() }))
                .collect(),
        )
    }
}

impl<F: Field> TensorCategory<F> for VectG<F> {
    fn fingerprint(&self) -> String {
        format!("vectg:{}:order={}:{}", self.group.name(), self.group.order(), F::descriptor())
    }

    fn hopf(&self) -> &HopfAlgebra<F> {
        &self.hopf
    }

    fn generators(&self) -> Vec<Generator> {
        (0..self.group.order()).map(|g| Generator::new(g as u32)).collect()
    }

    fn contains(&self, g: Generator) -> bool {
        g.level == 0 && (g.base as usize) < self.group.order()
    }

    fn generator_rep(&self, g: Generator) -> Rep<F> {
        self.graded_rep(g.base as usize)
    }

    fn generator_label(&self, g: Generator) -> String {
        format!("d[{}]", self.group.label(g.base as usize))
    }

    fn left_dual_generator(&self, g: Generator) -> Generator {
        Generator::new(self.group.inv(g.base as usize) as u32)
    }

    fn right_dual_generator(&self, g: Generator) -> Generator {
        Generator::new(self.group.inv(g.base as usize) as u32)
    }

    fn probe_words(&self) -> Vec<ObjectWord> {
        (0..self.group.order()).map(|g| self.word(&[g])).collect()
    }

    fn is_semisimple(&self) -> bool {
        true
    }

    /// Words are one-dimensional, so the hom space is spanned by the identity
    /// scalar exactly when the degrees agree.
    fn hom_basis_words(&self, x: &ObjectWord, y: &ObjectWord) -> Option<Vec<Matrix<F>>> {
        Some(if self.degree(x) == self.degree(y) { vec![Matrix::identity(1)] } else { vec![] })
    }
}
