//! Strict rigid tensor categories with computable hom spaces.
//!
//! Objects are [`ObjectWord`]s, words in the generators of a backend; the empty
//! word is the unit and the tensor product is concatenation, so the category
//! is strict by construction. Duals of words reverse the word and dualize each
//! letter: `v(x (x) y) = vy (x) vx` on the nose.
//!
//! A [`Morphism`] is a matrix with typed domain and codomain. The structure
//! morphisms use the conventions
//!
//! * `ev_x: x (x) vx -> 1` and `coev_x: 1 -> vx (x) x`,
//! * `ev~_x: x^ (x) x -> 1` and `coev~_x: 1 -> x (x) x^`,
//!
//! where `vx` is the left and `x^` the right dual. The left dual of a morphism
//! `f: a -> b` is the composite
//! `(id (x) ev_b) . (id (x) f (x) id) . (coev_a (x) id) : vb -> va`,
//! which makes `v(-)` contravariant: `v(g . f) = vf . vg`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::{HopfAlgebra, Rep};
use crate::linalg::Matrix;

/// A generating object. `level` counts applications of the left dual
/// (negative for the right dual) to the registered object `base`; backends
/// whose double dual is trivial keep `level` at zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub base: u32,
    pub level: i32,
}

impl Generator {
    pub fn new(base: u32) -> Self {
        Generator { base, level: 0 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "g{}", self.base),
            k => write!(f, "g{}@{}", self.base, k),
        }
    }
}

/// A tensor word of generators; the empty word is the monoidal unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ObjectWord(Vec<Generator>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        ObjectWord(vec![g])
    }

    pub fn new(gens: Vec<Generator>) -> Self {
        ObjectWord(gens)
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation, without any backend check.
    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectWord(v)
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromIterator<Generator> for ObjectWord {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        ObjectWord(iter.into_iter().collect())
    }
}

/// A typed matrix `dom -> codom`, of shape `dim(codom) x dim(dom)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Morphism<F> {
    dom: ObjectWord,
    codom: ObjectWord,
    matrix: Matrix<F>,
}

impl<F: Field> Morphism<F> {
    /// Does not check that the matrix intertwines; see
    /// [`CategoryExt::morphism`] for the checked constructor.
    pub fn from_parts(dom: ObjectWord, codom: ObjectWord, matrix: Matrix<F>) -> Self {
        Morphism { dom, codom, matrix }
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.dom
    }

    pub fn codom(&self) -> &ObjectWord {
        &self.codom
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }

    pub fn scale(&self, a: &F) -> Self {
        Morphism { dom: self.dom.clone(), codom: self.codom.clone(), matrix: self.matrix.scale(a) }
    }

    /// Sum of parallel morphisms.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dom != other.dom || self.codom != other.codom {
            return Err(Error::Typing(format!(
                "cannot add {} -> {} and {} -> {}",
                self.dom, self.codom, other.dom, other.codom
            )));
        }
        Ok(Morphism { dom: self.dom.clone(), codom: self.codom.clone(), matrix: self.matrix.add(&other.matrix) })
    }

    /// Reinterprets the matrix with new (co)domain words of the same dimension.
    pub fn retype(&self, dom: ObjectWord, codom: ObjectWord) -> Self {
        Morphism { dom, codom, matrix: self.matrix.clone() }
    }
}

/// `g . f`, defined when `dom(g) = codom(f)` as words.
pub fn compose<F: Field>(g: &Morphism<F>, f: &Morphism<F>) -> Result<Morphism<F>> {
    if g.dom != f.codom {
        return Err(Error::Composition { outer_domain: g.dom.to_string(), inner_codomain: f.codom.to_string() });
    }
    Ok(Morphism { dom: f.dom.clone(), codom: g.codom.clone(), matrix: g.matrix.mul(&f.matrix) })
}

/// Composes a chain listed from the first applied to the last.
pub fn compose_chain<F: Field>(chain: &[Morphism<F>]) -> Result<Morphism<F>> {
    let mut it = chain.iter();
    let first = it.next().ok_or_else(|| Error::Typing("empty composition chain".into()))?.clone();
    it.try_fold(first, |acc, g| compose(g, &acc))
}

/// `f (x) g`; the matrix is the Kronecker product because word bases are
/// ordered lexicographically with the left factor slowest.
pub fn tensor_morphisms<F: Field>(f: &Morphism<F>, g: &Morphism<F>) -> Morphism<F> {
    Morphism { dom: f.dom.concat(&g.dom), codom: f.codom.concat(&g.codom), matrix: f.matrix.kron(&g.matrix) }
}

pub fn tensor_all<F: Field>(fs: &[Morphism<F>]) -> Morphism<F> {
    fs.iter().fold(
        Morphism { dom: ObjectWord::unit(), codom: ObjectWord::unit(), matrix: Matrix::identity(1) },
        |acc, f| tensor_morphisms(&acc, f),
    )
}

/// A backend: a strict rigid tensor category realized as modules over a
/// finite-dimensional Hopf algebra, with a chosen set of generating objects.
pub trait TensorCategory<F: Field>: Send + Sync {
    /// Identifies the backend in reports.
    fn fingerprint(&self) -> String;
    fn hopf(&self) -> &HopfAlgebra<F>;
    /// The registered generators (all at level zero).
    fn generators(&self) -> Vec<Generator>;
    fn contains(&self, g: Generator) -> bool;
    fn generator_rep(&self, g: Generator) -> Rep<F>;
    fn generator_label(&self, g: Generator) -> String;
    fn left_dual_generator(&self, g: Generator) -> Generator;
    fn right_dual_generator(&self, g: Generator) -> Generator;
    /// A dense set of probe objects for coends: all simples when semisimple,
    /// a projective generator otherwise. Empty when no registered word is a
    /// generator of the category.
    fn probe_words(&self) -> Vec<ObjectWord>;
    fn is_semisimple(&self) -> bool;

    /// Basis of the intertwiner space between two modules.
    fn hom_basis_reps(&self, x: &Rep<F>, y: &Rep<F>) -> Vec<Matrix<F>> {
        self.hopf().intertwiners(x, y)
    }

    /// Override for backends with a cheaper rule on words.
    fn hom_basis_words(&self, x: &ObjectWord, y: &ObjectWord) -> Option<Vec<Matrix<F>>> {
        let _ = (x, y);
        None
    }
}

/// Operations shared by every backend.
pub trait CategoryExt<F: Field>: TensorCategory<F> {
    fn check_word(&self, w: &ObjectWord) -> Result<()> {
        for g in w.gens() {
            if !self.contains(*g) {
                return Err(Error::ForeignGenerator { generator: g.to_string(), backend: self.fingerprint() });
            }
        }
        Ok(())
    }

    fn word_label(&self, w: &ObjectWord) -> String {
        if w.is_unit() {
            return "1".into();
        }
        w.gens().iter().map(|g| self.generator_label(*g)).collect::<Vec<_>>().join("*")
    }

    fn dim(&self, w: &ObjectWord) -> usize {
        w.gens().iter().map(|g| self.generator_rep(*g).dim()).product()
    }

    /// The module underlying a word.
    fn rep(&self, w: &ObjectWord) -> Rep<F> {
        let reps: Vec<Rep<F>> = w.gens().iter().map(|g| self.generator_rep(*g)).collect();
        self.hopf().tensor_all(reps.iter())
    }

    fn tensor_objects(&self, a: &ObjectWord, b: &ObjectWord) -> Result<ObjectWord> {
        self.check_word(a)?;
        self.check_word(b)?;
        Ok(a.concat(b))
    }

    fn identity(&self, w: &ObjectWord) -> Morphism<F> {
        Morphism { dom: w.clone(), codom: w.clone(), matrix: Matrix::identity(self.dim(w)) }
    }

    /// Checked constructor: shape and intertwining are verified.
    fn morphism(&self, dom: ObjectWord, codom: ObjectWord, matrix: Matrix<F>) -> Result<Morphism<F>> {
        self.check_word(&dom)?;
        self.check_word(&codom)?;
        let expected = (self.dim(&codom), self.dim(&dom));
        if matrix.shape() != expected {
            return Err(Error::Shape { expected, got: matrix.shape() });
        }
        if !self.hopf().is_intertwiner(&self.rep(&dom), &self.rep(&codom), &matrix) {
            return Err(Error::NotAMorphism(format!(
                "matrix does not intertwine {} -> {}",
                self.word_label(&dom),
                self.word_label(&codom)
            )));
        }
        Ok(Morphism { dom, codom, matrix })
    }

    fn is_morphism(&self, f: &Morphism<F>) -> bool {
        self.check_word(&f.dom).is_ok()
            && self.check_word(&f.codom).is_ok()
            && f.matrix.shape() == (self.dim(&f.codom), self.dim(&f.dom))
            && self.hopf().is_intertwiner(&self.rep(&f.dom), &self.rep(&f.codom), &f.matrix)
    }

    fn left_dual_object(&self, w: &ObjectWord) -> ObjectWord {
        w.gens().iter().rev().map(|g| self.left_dual_generator(*g)).collect()
    }

    fn right_dual_object(&self, w: &ObjectWord) -> ObjectWord {
        w.gens().iter().rev().map(|g| self.right_dual_generator(*g)).collect()
    }

    /// `D^k(w)` for the left double dual `D`, negative powers through the
    /// right double dual.
    fn double_dual_power_object(&self, w: &ObjectWord, k: i32) -> ObjectWord {
        let mut out = w.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 {
                self.left_dual_object(&self.left_dual_object(&out))
            } else {
                self.right_dual_object(&self.right_dual_object(&out))
            };
        }
        out
    }

    /// `ev_x: x (x) vx -> 1`.
    fn ev_left(&self, x: &ObjectWord) -> Morphism<F> {
        let (n, pairs) = self.pairing(x);
        let mut m = Matrix::zeros(1, n * n);
        for (i, j) in pairs {
            m.set(0, i * n + j, F::one());
        }
        Morphism { dom: x.concat(&self.left_dual_object(x)), codom: ObjectWord::unit(), matrix: m }
    }

    /// `coev_x: 1 -> vx (x) x`.
    fn coev_left(&self, x: &ObjectWord) -> Morphism<F> {
        let (n, pairs) = self.pairing(x);
        let mut m = Matrix::zeros(n * n, 1);
        for (i, j) in pairs {
            m.set(j * n + i, 0, F::one());
        }
        Morphism { dom: ObjectWord::unit(), codom: self.left_dual_object(x).concat(x), matrix: m }
    }

    /// `ev~_x: x^ (x) x -> 1`.
    fn ev_right(&self, x: &ObjectWord) -> Morphism<F> {
        let (n, pairs) = self.pairing(x);
        let mut m = Matrix::zeros(1, n * n);
        for (i, j) in pairs {
            m.set(0, j * n + i, F::one());
        }
        Morphism { dom: self.right_dual_object(x).concat(x), codom: ObjectWord::unit(), matrix: m }
    }

    /// `coev~_x: 1 -> x (x) x^`.
    fn coev_right(&self, x: &ObjectWord) -> Morphism<F> {
        let (n, pairs) = self.pairing(x);
        let mut m = Matrix::zeros(n * n, 1);
        for (i, j) in pairs {
            m.set(i * n + j, 0, F::one());
        }
        Morphism { dom: ObjectWord::unit(), codom: x.concat(&self.right_dual_object(x)), matrix: m }
    }

    /// Pairs `(i, j)` of a basis index of `x` and the index of its dual basis
    /// vector in the reversed dual word.
    #[doc(hidden)]
    fn pairing(&self, x: &ObjectWord) -> (usize, Vec<(usize, usize)>) {
        let dims: Vec<usize> = x.gens().iter().map(|g| self.generator_rep(*g).dim()).collect();
        let n: usize = dims.iter().product();
        let pairs = (0..n)
            .map(|i| {
                // digits of i, most significant first
                let mut digits = vec![0; dims.len()];
                let mut rest = i;
                for (k, d) in dims.iter().enumerate().rev() {
                    digits[k] = rest % d;
                    rest /= d;
                }
                let j = digits.iter().rev().zip(dims.iter().rev()).fold(0, |acc, (dig, d)| acc * d + dig);
                (i, j)
            })
            .collect();
        (n, pairs)
    }

    /// `vf: vb -> va` for `f: a -> b`, assembled from the defining composite.
    fn left_dual_morphism(&self, f: &Morphism<F>) -> Morphism<F> {
        let (a, b) = (f.dom.clone(), f.codom.clone());
        let (va, vb) = (self.left_dual_object(&a), self.left_dual_object(&b));
        let step1 = tensor_morphisms(&self.coev_left(&a), &self.identity(&vb));
        let step2 = tensor_all(&[self.identity(&va), f.clone(), self.identity(&vb)]);
        let step3 = tensor_morphisms(&self.identity(&va), &self.ev_left(&b));
        let r = compose_chain(&[step1, step2, step3]).expect("dual composite is well typed");
        r.retype(vb, va)
    }

    /// `f^: b^ -> a^` for `f: a -> b`, assembled from the defining composite.
    fn right_dual_morphism(&self, f: &Morphism<F>) -> Morphism<F> {
        let (a, b) = (f.dom.clone(), f.codom.clone());
        let (ar, br) = (self.right_dual_object(&a), self.right_dual_object(&b));
        let step1 = tensor_morphisms(&self.identity(&br), &self.coev_right(&a));
        let step2 = tensor_all(&[self.identity(&br), f.clone(), self.identity(&ar)]);
        let step3 = tensor_morphisms(&self.ev_right(&b), &self.identity(&ar));
        let r = compose_chain(&[step1, step2, step3]).expect("dual composite is well typed");
        r.retype(br, ar)
    }

    /// `D^k(f)`; the matrix is unchanged, only the (co)domains move.
    fn double_dual_power_morphism(&self, f: &Morphism<F>, k: i32) -> Morphism<F> {
        let mut out = f.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 {
                self.left_dual_morphism(&self.left_dual_morphism(&out))
            } else {
                self.right_dual_morphism(&self.right_dual_morphism(&out))
            };
        }
        out
    }

    /// Basis of `Hom(x, y)`, ordered by the reduced echelon kernel of the
    /// intertwining equations.
    fn hom_basis(&self, x: &ObjectWord, y: &ObjectWord) -> Result<Vec<Morphism<F>>> {
        self.check_word(x)?;
        self.check_word(y)?;
        let mats = match self.hom_basis_words(x, y) {
            Some(m) => m,
            None => self.hom_basis_reps(&self.rep(x), &self.rep(y)),
        };
        Ok(mats.into_iter().map(|m| Morphism { dom: x.clone(), codom: y.clone(), matrix: m }).collect())
    }
}

impl<F: Field, T: TensorCategory<F> + ?Sized> CategoryExt<F> for T {}
