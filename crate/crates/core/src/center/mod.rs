//! Twisted central monads, their Kleisli and Eilenberg-Moore categories,
//! half-braidings, representable presheaves and the twisted Drinfeld center.

mod count;
mod halfbraiding;
mod karoubi;
mod kleisli;
mod module;
mod monad;
mod presheaf;

pub use count::CenterAlgebra;
pub use halfbraiding::{HalfBraiding, HalfBraidingSpace};
pub use karoubi::{compare_twists, KaroubiEntry, KaroubiReport, TwistComparison};
pub use kleisli::KleisliMorphism;
pub use module::TModule;
pub use monad::{twist_powers, CentralMonad, ProbeCover};
pub use presheaf::{Presheaf, Representability};

use std::collections::BTreeMap;

use crate::field::Field;
use crate::linalg::{Matrix, SparseEchelon};

/// A basis of a space of matrices with a cheap coordinate map: coordinates
/// are read off a fixed set of entries.
#[derive(Clone, Debug)]
pub struct MatrixBasis<F> {
    shape: (usize, usize),
    mats: Vec<Matrix<F>>,
    positions: Vec<usize>,
    solver: Matrix<F>,
}

impl<F: Field> MatrixBasis<F> {
    /// The matrices must be linearly independent.
    pub fn new(shape: (usize, usize), mats: Vec<Matrix<F>>) -> Self {
        let n = mats.len();
        let flat = Matrix::from_fn(n, shape.0 * shape.1, |i, j| mats[i].entries()[j].clone());
        let (_, positions) = flat.rref();
        assert_eq!(positions.len(), n, "basis matrices are linearly dependent");
        let square = Matrix::from_fn(n, n, |i, k| mats[k].entries()[positions[i]].clone());
        let solver = square.inverse().expect("independent at pivot entries");
        MatrixBasis { shape, mats, positions, solver }
    }

    /// For kernel bases of a [`SparseEchelon`] system over flattened
    /// matrices, whose vectors are 1 at their own free column and 0 at the
    /// others.
    fn from_kernel(shape: (usize, usize), mats: Vec<Matrix<F>>, free: Vec<usize>) -> Self {
        let n = mats.len();
        MatrixBasis { shape, mats, positions: free, solver: Matrix::identity(n) }
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn mats(&self) -> &[Matrix<F>] {
        &self.mats
    }

    /// Coordinates of a matrix assumed to lie in the span.
    pub fn coords(&self, m: &Matrix<F>) -> Vec<F> {
        let picked: Vec<F> = self.positions.iter().map(|&p| m.entries()[p].clone()).collect();
        self.solver.apply(&picked)
    }

    /// Coordinates, or `None` if `m` is not in the span.
    pub fn coords_checked(&self, m: &Matrix<F>) -> Option<Vec<F>> {
        if m.shape() != self.shape {
            return None;
        }
        let c = self.coords(m);
        (self.combine(&c) == *m).then_some(c)
    }

    pub fn combine(&self, coeffs: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.shape.0, self.shape.1);
        for (c, m) in coeffs.iter().zip(&self.mats) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

/// Block layout of several unknown matrices flattened into one vector.
#[derive(Clone, Debug)]
pub(crate) struct Unknowns {
    blocks: Vec<(usize, usize, usize)>,
    total: usize,
}

impl Unknowns {
    pub(crate) fn new(shapes: &[(usize, usize)]) -> Self {
        let mut blocks = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in shapes {
            blocks.push((total, r, c));
            total += r * c;
        }
        Unknowns { blocks, total }
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    pub(crate) fn unflatten<F: Field>(&self, v: &[F]) -> Vec<Matrix<F>> {
        self.blocks.iter().map(|&(o, r, c)| Matrix::from_fn(r, c, |i, j| v[o + i * c + j].clone())).collect()
    }
}

/// One summand `coef · L · X_block · R` of a linear matrix equation.
pub(crate) struct Term<'m, F> {
    pub block: usize,
    pub left: &'m Matrix<F>,
    pub right: &'m Matrix<F>,
    pub coef: F,
}

/// Pushes the entrywise equations of `Σ terms = C` into `sys`. The constant
/// `C` is carried by the extra column `unknowns.total()`, which must exist.
pub(crate) fn push_equation<F: Field>(
    sys: &mut SparseEchelon<F>,
    unknowns: &Unknowns,
    terms: &[Term<'_, F>],
    constant: Option<&Matrix<F>>,
) {
    let Some(first) = terms.first() else { return };
    let (rows, cols) = (first.left.rows(), first.right.cols());
    let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, F>> = BTreeMap::new();
    for t in terms {
        let (off, _, bc) = unknowns.blocks[t.block];
        assert_eq!((t.left.rows(), t.right.cols()), (rows, cols), "equation terms disagree in shape");
        let right_cols: Vec<Vec<(usize, F)>> = (0..cols)
            .map(|c| (0..t.right.rows()).filter_map(|j| nonzero(t.right.get(j, c)).map(|v| (j, v))).collect())
            .collect();
        for r in 0..rows {
            for i in 0..t.left.cols() {
                let Some(l) = nonzero(t.left.get(r, i)) else { continue };
                let l = l * t.coef.clone();
                for (c, rc) in right_cols.iter().enumerate() {
                    let row = eqs.entry((r, c)).or_default();
                    for (j, v) in rc {
                        let cur = row.remove(&(off + i * bc + j)).unwrap_or_else(F::zero) + l.clone() * v.clone();
                        if !cur.is_zero() {
                            row.insert(off + i * bc + j, cur);
                        }
                    }
                }
            }
        }
    }
    if let Some(cm) = constant {
        for r in 0..rows {
            for c in 0..cols {
                if let Some(v) = nonzero(cm.get(r, c)) {
                    eqs.entry((r, c)).or_default().insert(unknowns.total, -v);
                }
            }
        }
    }
    for (_, row) in eqs {
        if !row.is_empty() {
            sys.push(row.into_iter().collect());
        }
    }
}

fn nonzero<F: Field>(x: &F) -> Option<F> {
    (!x.is_zero()).then(|| x.clone())
}

/// Coefficient vectors `c` with `Σ_i c_i · image(basis_i) = 0`, where
/// `image` returns a list of matrices (all equations at once).
pub(crate) fn combination_kernel<F: Field>(
    basis: &[Matrix<F>],
    image: impl Fn(&Matrix<F>) -> Vec<Matrix<F>>,
) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut eqs: BTreeMap<(usize, usize), Vec<(usize, F)>> = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        for (k, m) in image(b).iter().enumerate() {
            for (pos, v) in m.entries().iter().enumerate() {
                if !v.is_zero() {
                    eqs.entry((k, pos)).or_default().push((i, v.clone()));
                }
            }
        }
    }
    let mut sys = SparseEchelon::new(basis.len());
    for (_, row) in eqs {
        sys.push(row);
    }
    let kernel = sys.nullspace();
    (kernel, sys.free_columns())
}

/// `Σ c_i m_i`.
pub(crate) fn linear_combination<F: Field>(coeffs: &[F], mats: &[Matrix<F>], shape: (usize, usize)) -> Matrix<F> {
    let mut out = Matrix::zeros(shape.0, shape.1);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}
