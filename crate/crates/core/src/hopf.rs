//! Finite-dimensional Hopf algebras given by structure constants, and their
//! modules.
//!
//! Both backends are realized through this module: `Vect_G` is the module
//! category of the function algebra `K^G`, and `H-mod` uses the structure
//! constants supplied by the user.
//!
//! Conventions: `e_i e_j = sum_k m[i][j][k] e_k`,
//! `Delta(e_i) = sum_{j,k} c[i][j][k] e_j (x) e_k`, and the antipode matrix has
//! `S(e_j) = sum_i S[i][j] e_i`. A module stores one action matrix per basis
//! element of the algebra.

use std::fmt;

use crate::field::Field;
use crate::group::GroupTable;
use crate::linalg::{Matrix, SparseEchelon};

/// A failed structure-constant identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub identity: &'static str,
    pub indices: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at basis indices {:?}", self.identity, self.indices)
    }
}

/// Raw structure constants, before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData<F> {
    pub dim: usize,
    /// `mult[(i*d + j)*d + k]`
    pub mult: Vec<F>,
    pub unit: Vec<F>,
    /// `comult[(i*d + j)*d + k]`
    pub comult: Vec<F>,
    pub counit: Vec<F>,
    pub antipode: Matrix<F>,
}

/// A verified finite-dimensional Hopf algebra.
#[derive(Clone, Debug)]
pub struct HopfAlgebra<F> {
    name: String,
    data: HopfData<F>,
    antipode_inv: Matrix<F>,
    /// sparse `(j, k, coefficient)` lists of `Delta(e_i)`
    comult_terms: Vec<Vec<(usize, usize, F)>>,
    /// sparse `(k, coefficient)` lists of `e_i e_j`
    mult_terms: Vec<Vec<(usize, F)>>,
}

impl<F: Field> HopfAlgebra<F> {
    /// Verifies every Hopf axiom exactly and reports the first failure.
    pub fn new(name: impl Into<String>, data: HopfData<F>) -> Result<Self, AxiomViolation> {
        let d = data.dim;
        let shape_ok = data.mult.len() == d * d * d
            && data.comult.len() == d * d * d
            && data.unit.len() == d
            && data.counit.len() == d
            && data.antipode.shape() == (d, d);
        if !shape_ok || d == 0 {
            return Err(AxiomViolation { identity: "structure constant shapes", indices: vec![] });
        }
        let antipode_inv = data
            .antipode
            .inverse()
            .ok_or(AxiomViolation { identity: "antipode invertibility", indices: vec![] })?;
        let comult_terms = (0..d)
            .map(|i| {
                let mut t = Vec::new();
                for j in 0..d {
                    for k in 0..d {
                        let c = &data.comult[(i * d + j) * d + k];
                        if !c.is_zero() {
                            t.push((j, k, c.clone()));
                        }
                    }
                }
                t
            })
            .collect();
        let mult_terms = (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter_map(|k| {
                        let c = &data.mult[ij * d + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let h = HopfAlgebra { name: name.into(), data, antipode_inv, comult_terms, mult_terms };
        h.verify()?;
        Ok(h)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn data(&self) -> &HopfData<F> {
        &self.data
    }

    pub fn antipode(&self) -> &Matrix<F> {
        &self.data.antipode
    }

    pub fn antipode_inverse(&self) -> &Matrix<F> {
        &self.antipode_inv
    }

    /// `S^k` as a matrix, negative powers through `S^{-1}`.
    pub fn antipode_power(&self, k: i32) -> Matrix<F> {
        let base = if k >= 0 { &self.data.antipode } else { &self.antipode_inv };
        let mut m = Matrix::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            m = base.mul(&m);
        }
        m
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    pub fn unit(&self) -> &[F] {
        &self.data.unit
    }

    pub fn counit(&self) -> &[F] {
        &self.data.counit
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].clone() * b[j].clone();
                for (k, c) in &self.mult_terms[i * d + j] {
                    out[*k] = out[*k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    /// `Delta(a)` as a vector indexed by `j*d + k`.
    pub fn comul(&self, a: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d * d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comult_terms[i] {
                out[j * d + k] = out[j * d + k].clone() + ai.clone() * c.clone();
            }
        }
        out
    }

    pub fn comult_terms(&self, i: usize) -> &[(usize, usize, F)] {
        &self.comult_terms[i]
    }

    /// Multiplication on `H (x) H`, componentwise.
    fn mul2(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d * d];
        for i1 in 0..d {
            for j1 in 0..d {
                let x = &a[i1 * d + j1];
                if x.is_zero() {
                    continue;
                }
                for i2 in 0..d {
                    for j2 in 0..d {
                        let y = &b[i2 * d + j2];
                        if y.is_zero() {
                            continue;
                        }
                        let left = self.mul(&self.basis(i1), &self.basis(i2));
                        let right = self.mul(&self.basis(j1), &self.basis(j2));
                        for (k, l) in left.iter().enumerate() {
                            if l.is_zero() {
                                continue;
                            }
                            for (m, r) in right.iter().enumerate() {
                                if !r.is_zero() {
                                    out[k * d + m] = out[k * d + m].clone()
                                        + x.clone() * y.clone() * l.clone() * r.clone();
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn counit_of(&self, a: &[F]) -> F {
        a.iter().zip(&self.data.counit).fold(F::zero(), |acc, (x, e)| acc + x.clone() * e.clone())
    }

    fn verify(&self) -> Result<(), AxiomViolation> {
        let d = self.dim();
        let fail = |identity: &'static str, indices: Vec<usize>| Err(AxiomViolation { identity, indices });
        let e = |i| self.basis(i);
        let unit = self.data.unit.clone();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&e(i), &e(j));
                for k in 0..d {
                    if self.mul(&ij, &e(k)) != self.mul(&e(i), &self.mul(&e(j), &e(k))) {
                        return fail("associativity (e_i e_j) e_k = e_i (e_j e_k)", vec![i, j, k]);
                    }
                }
            }
            if self.mul(&unit, &e(i)) != e(i) || self.mul(&e(i), &unit) != e(i) {
                return fail("unit 1 e_i = e_i = e_i 1", vec![i]);
            }
        }
        for i in 0..d {
            let delta = self.comul(&e(i));
            // (Delta (x) id) Delta and (id (x) Delta) Delta as vectors over d^3
            let mut left = vec![F::zero(); d * d * d];
            let mut right = vec![F::zero(); d * d * d];
            for j in 0..d {
                for k in 0..d {
                    let c = &delta[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    let dj = self.comul(&e(j));
                    for (ab, v) in dj.iter().enumerate() {
                        left[ab * d + k] = left[ab * d + k].clone() + c.clone() * v.clone();
                    }
                    let dk = self.comul(&e(k));
                    for (ab, v) in dk.iter().enumerate() {
                        right[j * d * d + ab] = right[j * d * d + ab].clone() + c.clone() * v.clone();
                    }
                }
            }
            if left != right {
                return fail("coassociativity (Delta x id) Delta = (id x Delta) Delta", vec![i]);
            }
            let mut l = vec![F::zero(); d];
            let mut r = vec![F::zero(); d];
            for j in 0..d {
                for k in 0..d {
                    let c = &delta[j * d + k];
                    l[k] = l[k].clone() + self.data.counit[j].clone() * c.clone();
                    r[j] = r[j].clone() + self.data.counit[k].clone() * c.clone();
                }
            }
            if l != e(i) || r != e(i) {
                return fail("counit (eps x id) Delta = id = (id x eps) Delta", vec![i]);
            }
        }
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&e(i), &e(j));
                if self.comul(&prod) != self.mul2(&self.comul(&e(i)), &self.comul(&e(j))) {
                    return fail("bialgebra Delta(e_i e_j) = Delta(e_i) Delta(e_j)", vec![i, j]);
                }
                if self.counit_of(&prod) != self.data.counit[i].clone() * self.data.counit[j].clone() {
                    return fail("bialgebra eps(e_i e_j) = eps(e_i) eps(e_j)", vec![i, j]);
                }
            }
        }
        let mut uu = vec![F::zero(); d * d];
        for j in 0..d {
            for k in 0..d {
                uu[j * d + k] = unit[j].clone() * unit[k].clone();
            }
        }
        if self.comul(&unit) != uu || !self.counit_of(&unit).is_one() {
            return fail("bialgebra Delta(1) = 1 x 1, eps(1) = 1", vec![]);
        }
        let s = &self.data.antipode;
        for i in 0..d {
            let delta = self.comul(&e(i));
            let mut left = vec![F::zero(); d];
            let mut right = vec![F::zero(); d];
            for j in 0..d {
                for k in 0..d {
                    let c = &delta[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    let sl = self.mul(&s.column(j), &e(k));
                    let sr = self.mul(&e(j), &s.column(k));
                    for m in 0..d {
                        left[m] = left[m].clone() + c.clone() * sl[m].clone();
                        right[m] = right[m].clone() + c.clone() * sr[m].clone();
                    }
                }
            }
            let expect: Vec<F> = unit.iter().map(|u| u.clone() * self.data.counit[i].clone()).collect();
            if left != expect {
                return fail("antipode m(S x id) Delta = eta eps", vec![i]);
            }
            if right != expect {
                return fail("antipode m(id x S) Delta = eta eps", vec![i]);
            }
        }
        Ok(())
    }

    /// The one-dimensional Hopf algebra; its modules are plain vector spaces.
    pub fn trivial() -> Self {
        let one = vec![F::one()];
        let data = HopfData {
            dim: 1,
            mult: one.clone(),
            unit: one.clone(),
            comult: one.clone(),
            counit: one,
            antipode: Matrix::identity(1),
        };
        HopfAlgebra::new("K", data).expect("trivial Hopf algebra")
    }

    /// The group algebra `K[G]`.
    pub fn group_algebra(g: &GroupTable) -> Self {
        let n = g.order();
        let mut mult = vec![F::zero(); n * n * n];
        let mut comult = vec![F::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                mult[(a * n + b) * n + g.mul(a, b)] = F::one();
            }
            comult[(a * n + a) * n + a] = F::one();
        }
        let mut unit = vec![F::zero(); n];
        unit[g.identity()] = F::one();
        let antipode = Matrix::from_fn(n, n, |i, j| if i == g.inv(j) { F::one() } else { F::zero() });
        let data = HopfData { dim: n, mult, unit, comult, counit: vec![F::one(); n], antipode };
        HopfAlgebra::new(format!("K[{}]", g.name()), data).expect("group algebra axioms")
    }

    /// The function algebra `K^G`, whose modules are `G`-graded spaces.
    pub fn function_algebra(g: &GroupTable) -> Self {
        let n = g.order();
        let mut mult = vec![F::zero(); n * n * n];
        let mut comult = vec![F::zero(); n * n * n];
        for a in 0..n {
            mult[(a * n + a) * n + a] = F::one();
            for b in 0..n {
                comult[(g.mul(a, b) * n + a) * n + b] = F::one();
            }
        }
        let mut counit = vec![F::zero(); n];
        counit[g.identity()] = F::one();
        let antipode = Matrix::from_fn(n, n, |i, j| if i == g.inv(j) { F::one() } else { F::zero() });
        let data = HopfData { dim: n, mult, unit: vec![F::one(); n], comult, counit, antipode };
        HopfAlgebra::new(format!("K^{}", g.name()), data).expect("function algebra axioms")
    }

    /// Sweedler's four-dimensional algebra with basis `1, g, x, gx`:
    /// `g^2 = 1`, `x^2 = 0`, `xg = -gx`, `Delta g = g (x) g`,
    /// `Delta x = x (x) 1 + g (x) x`, `S(g) = g`, `S(x) = -gx`.
    pub fn sweedler() -> Self {
        let d = 4;
        let mut mult = vec![F::zero(); 64];
        let mut set = |i: usize, j: usize, k: usize, v: i64| mult[(i * d + j) * d + k] = F::from_i64(v);
        // 0 = 1, 1 = g, 2 = x, 3 = gx
        for b in 0..4 {
            set(0, b, b, 1);
            if b != 0 {
                set(b, 0, b, 1);
            }
        }
        set(1, 1, 0, 1);
        set(1, 2, 3, 1);
        set(1, 3, 2, 1);
        set(2, 1, 3, -1);
        set(3, 1, 2, -1);
        let mut comult = vec![F::zero(); 64];
        let mut cset = |i: usize, j: usize, k: usize, v: i64| comult[(i * d + j) * d + k] = F::from_i64(v);
        cset(0, 0, 0, 1);
        cset(1, 1, 1, 1);
        cset(2, 2, 0, 1);
        cset(2, 1, 2, 1);
        cset(3, 3, 1, 1);
        cset(3, 0, 3, 1);
        let antipode = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let data = HopfData {
            dim: 4,
            mult,
            unit: vec![F::one(), F::zero(), F::zero(), F::zero()],
            comult,
            counit: vec![F::one(), F::one(), F::zero(), F::zero()],
            antipode,
        };
        HopfAlgebra::new("H4", data).expect("Sweedler algebra axioms")
    }

    // ---- modules ----

    /// Left multiplication on `H`.
    pub fn regular(&self) -> Rep<F> {
        let d = self.dim();
        let action = (0..d)
            .map(|i| Matrix::from_fn(d, d, |k, j| self.data.mult[(i * d + j) * d + k].clone()))
            .collect();
        Rep { action }
    }

    /// The counit module.
    pub fn trivial_rep(&self) -> Rep<F> {
        Rep { action: self.data.counit.iter().map(|e| Matrix::scalar(e.clone())).collect() }
    }

    pub fn check_rep(&self, v: &Rep<F>) -> Result<(), AxiomViolation> {
        let d = self.dim();
        let n = v.dim();
        if v.action.len() != d || v.action.iter().any(|a| a.shape() != (n, n)) {
            return Err(AxiomViolation { identity: "module action shapes", indices: vec![] });
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = v.action[i].mul(&v.action[j]);
                let rhs = v.act(&self.mul(&self.basis(i), &self.basis(j)));
                if lhs != rhs {
                    return Err(AxiomViolation { identity: "module a(e_i) a(e_j) = a(e_i e_j)", indices: vec![i, j] });
                }
            }
        }
        if !v.act(&self.data.unit).is_identity() {
            return Err(AxiomViolation { identity: "module a(1) = id", indices: vec![] });
        }
        Ok(())
    }

    /// `V (x) W` with the action through the coproduct.
    pub fn tensor(&self, v: &Rep<F>, w: &Rep<F>) -> Rep<F> {
        let n = v.dim() * w.dim();
        let action = (0..self.dim())
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                for (j, k, c) in &self.comult_terms[i] {
                    m = m.add(&v.action[*j].kron(&w.action[*k]).scale(c));
                }
                m
            })
            .collect();
        Rep { action }
    }

    pub fn tensor_all<'a>(&self, reps: impl IntoIterator<Item = &'a Rep<F>>) -> Rep<F> {
        let mut it = reps.into_iter();
        match it.next() {
            None => self.trivial_rep(),
            Some(first) => it.fold(first.clone(), |acc, r| self.tensor(&acc, r)),
        }
    }

    /// Pulls the action back along a linear map `phi: H -> H`, transposing if
    /// `transpose` (needed when `phi` is an anti-automorphism).
    fn pullback(&self, v: &Rep<F>, phi: &Matrix<F>, transpose: bool) -> Rep<F> {
        let action = (0..self.dim())
            .map(|i| {
                let a = v.act(&phi.column(i));
                if transpose {
                    a.transpose()
                } else {
                    a
                }
            })
            .collect();
        Rep { action }
    }

    /// The left dual: the dual space with `h` acting as `a(S^{-1} h)^T`, so that
    /// `ev: V (x) V* -> 1` and `coev: 1 -> V* (x) V` are the canonical pairings.
    pub fn left_dual(&self, v: &Rep<F>) -> Rep<F> {
        self.pullback(v, &self.antipode_inv, true)
    }

    /// The right dual: the dual space with `h` acting as `a(S h)^T`.
    pub fn right_dual(&self, v: &Rep<F>) -> Rep<F> {
        self.pullback(v, &self.data.antipode, true)
    }

    /// Applies the left dual `k` times (the right dual for negative `k`).
    /// Level `k` acts by `a(S^{-k} h)`, transposed for odd `k`.
    pub fn dual_level(&self, v: &Rep<F>, k: i32) -> Rep<F> {
        self.pullback(v, &self.antipode_power(-k), k.rem_euclid(2) == 1)
    }

    /// The `k`-th power of the left double dual functor on objects: the action
    /// twisted by `S^{-2k}`. Intertwiners are unchanged as matrices.
    pub fn double_dual_power(&self, v: &Rep<F>, k: i32) -> Rep<F> {
        self.dual_level(v, 2 * k)
    }

    pub fn direct_sum(&self, v: &Rep<F>, w: &Rep<F>) -> Rep<F> {
        let (a, b) = (v.dim(), w.dim());
        let action = v
            .action
            .iter()
            .zip(&w.action)
            .map(|(x, y)| {
                Matrix::from_fn(a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j).clone(),
                    (false, false) => y.get(i - a, j - a).clone(),
                    _ => F::zero(),
                })
            })
            .collect();
        Rep { action }
    }

    pub fn is_intertwiner(&self, v: &Rep<F>, w: &Rep<F>, f: &Matrix<F>) -> bool {
        f.shape() == (w.dim(), v.dim())
            && v.action.iter().zip(&w.action).all(|(a, b)| f.mul(a) == b.mul(f))
    }

    /// Basis of `Hom_H(V, W)`, ordered by the reduced echelon kernel of the
    /// intertwining equations (unknowns in row-major order of the matrix).
    pub fn intertwiners(&self, v: &Rep<F>, w: &Rep<F>) -> Vec<Matrix<F>> {
        let (n, m) = (v.dim(), w.dim());
        let mut sys = SparseEchelon::new(m * n);
        for (a, b) in v.action.iter().zip(&w.action) {
            // (f a - b f)[r][c] = sum_k f[r][k] a[k][c] - sum_k b[r][k] f[k][c]
            for r in 0..m {
                for c in 0..n {
                    let mut row = Vec::new();
                    for k in 0..n {
                        let x = a.get(k, c);
                        if !x.is_zero() {
                            row.push((r * n + k, x.clone()));
                        }
                    }
                    for k in 0..m {
                        let y = b.get(r, k);
                        if !y.is_zero() {
                            row.push((k * n + c, -y.clone()));
                        }
                    }
                    if !row.is_empty() {
                        sys.push(row);
                    }
                }
            }
        }
        sys.nullspace().into_iter().map(|x| Matrix::from_fn(m, n, |i, j| x[i * n + j].clone())).collect()
    }

    /// The module induced on a subspace spanned by the given columns, which
    /// must be invariant and linearly independent. Returns `None` otherwise.
    pub fn subrep(&self, v: &Rep<F>, basis: &Matrix<F>) -> Option<Rep<F>> {
        let mut action = Vec::with_capacity(self.dim());
        for a in &v.action {
            action.push(basis.solve_matrix(&a.mul(basis))?);
        }
        (basis.rank() == basis.cols()).then_some(Rep { action })
    }
}

/// A module over a Hopf algebra: one action matrix per basis element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rep<F> {
    pub action: Vec<Matrix<F>>,
}

impl<F: Field> Rep<F> {
    pub fn new(action: Vec<Matrix<F>>) -> Self {
        Rep { action }
    }

    pub fn dim(&self) -> usize {
        self.action.first().map_or(0, Matrix::rows)
    }

    /// The action of an arbitrary algebra element.
    pub fn act(&self, h: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (c, a) in h.iter().zip(&self.action) {
            if !c.is_zero() {
                m = m.add(&a.scale(c));
            }
        }
        m
    }
}
