//! The twisted central monad `T(y) = ∫^c F(c) ⊗ y ⊗ G(vc)` on a backend.
//!
//! `F` and `G` are powers of the left double dual `D`. The coend is computed
//! as an explicit quotient of `⊕_k P_k ⊗ vP_k` over a dense family of probe
//! objects `P_k`, one relation per probe morphism `f: P_i -> P_j`:
//! `ι_j ∘ (f ⊗ id) = ι_i ∘ (id ⊗ vf)`. The object `y` sits in the middle and
//! plays no part in the relations, so `T(y) = T0 ⊗ y` as a vector space, with
//! `T0` the quotient. Since `D` acts on morphisms by the identity matrix the
//! relations do not depend on the twist; only the module structure does.

use std::collections::BTreeMap;

use crate::category::{CategoryExt, Morphism, ObjectWord, TensorCategory};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Rep;
use crate::linalg::{Matrix, Quotient};

/// Exponents `(a, b)` with `F = D^a`, `G = D^b` for the winding number `n`;
/// negative exponents are powers of the right double dual.
pub fn twist_powers(n: i32) -> (i32, i32) {
    match n {
        n if n >= 1 => (n - 1, 0),
        0 => (-1, 0),
        n => (-1, -n),
    }
}

/// A family of probe morphisms `π_m: P_{k_m} -> c` with linear sections,
/// `Σ_m π_m σ_m = id_c`. The sections need not be module maps.
#[derive(Clone, Debug)]
pub struct ProbeCover<F> {
    pub maps: Vec<(usize, Morphism<F>)>,
    pub sections: Vec<Matrix<F>>,
}

/// The monad `T_n` together with its coend data.
pub struct CentralMonad<'a, F: Field> {
    backend: &'a dyn TensorCategory<F>,
    winding: i32,
    powers: (i32, i32),
    probes: Vec<ObjectWord>,
    probe_dims: Vec<usize>,
    offsets: Vec<usize>,
    quotient: Quotient<F>,
    cells: Vec<(usize, usize, usize)>,
    action_terms: Vec<Vec<(usize, Matrix<F>)>>,
    unit: Matrix<F>,
    mult: Matrix<F>,
}

impl<'a, F: Field> CentralMonad<'a, F> {
    pub fn new(backend: &'a dyn TensorCategory<F>, winding: i32) -> Result<Self> {
        let probes = backend.probe_words();
        if probes.is_empty() {
            return Err(Error::Universality(format!(
                "backend {} has no registered probe object (register the regular module)",
                backend.fingerprint()
            )));
        }
        let powers = twist_powers(winding);
        let probe_dims: Vec<usize> = probes.iter().map(|p| backend.dim(p)).collect();
        let mut offsets = Vec::with_capacity(probes.len());
        let mut total = 0;
        for d in &probe_dims {
            offsets.push(total);
            total += d * d;
        }

        let mut relations = Vec::new();
        for (i, pi) in probes.iter().enumerate() {
            for (j, pj) in probes.iter().enumerate() {
                let (di, dj) = (probe_dims[i], probe_dims[j]);
                for f in backend.hom_basis(pi, pj)? {
                    let vf = backend.left_dual_morphism(&f);
                    let (fm, vm) = (f.matrix(), vf.matrix());
                    for a in 0..di {
                        for b in 0..dj {
                            let mut row = Vec::new();
                            for a2 in 0..dj {
                                let x = fm.get(a2, a);
                                if !x.is_zero() {
                                    row.push((offsets[j] + a2 * dj + b, x.clone()));
                                }
                            }
                            for b2 in 0..di {
                                let x = vm.get(b2, b);
                                if !x.is_zero() {
                                    row.push((offsets[i] + a * di + b2, -x.clone()));
                                }
                            }
                            relations.push(row);
                        }
                    }
                }
            }
        }
        let quotient = Quotient::from_sparse(total, relations);
        let cells = quotient
            .complement
            .iter()
            .map(|&idx| {
                let k = offsets.iter().rposition(|&o| o <= idx).expect("offset");
                let d = probe_dims[k];
                let local = idx - offsets[k];
                (k, local / d, local % d)
            })
            .collect();

        let mut m = CentralMonad {
            backend,
            winding,
            powers,
            probes,
            probe_dims,
            offsets,
            quotient,
            cells,
            action_terms: Vec::new(),
            unit: Matrix::zeros(0, 0),
            mult: Matrix::zeros(0, 0),
        };
        m.action_terms = m.build_action_terms();
        m.unit = m.kappa(&ObjectWord::unit())?;
        m.mult = m.build_mult()?;
        Ok(m)
    }

    pub fn backend(&self) -> &'a dyn TensorCategory<F> {
        self.backend
    }

    pub fn winding(&self) -> i32 {
        self.winding
    }

    /// `(a, b)` with `F = D^a`, `G = D^b`.
    pub fn powers(&self) -> (i32, i32) {
        self.powers
    }

    pub fn probes(&self) -> &[ObjectWord] {
        &self.probes
    }

    /// Dimension of `T(1)`; every `T(y)` is `T(1) ⊗ y` as a vector space.
    pub fn base_dim(&self) -> usize {
        self.quotient.dim()
    }

    /// The probe and the basis indices in `P_k ⊗ vP_k` of each basis vector of `T(1)`.
    pub fn cells(&self) -> &[(usize, usize, usize)] {
        &self.cells
    }

    /// `F(c)`.
    pub fn outer_object(&self, c: &ObjectWord) -> ObjectWord {
        self.backend.double_dual_power_object(c, self.powers.0)
    }

    /// `G(vc)`.
    pub fn inner_dual_object(&self, c: &ObjectWord) -> ObjectWord {
        self.backend.double_dual_power_object(&self.backend.left_dual_object(c), self.powers.1)
    }

    /// `G(c)`, the right-hand factor in the target of a half-braiding.
    pub fn inner_object(&self, c: &ObjectWord) -> ObjectWord {
        self.backend.double_dual_power_object(c, self.powers.1)
    }

    fn probe_kappa(&self, k: usize) -> Matrix<F> {
        let d = self.probe_dims[k];
        let cols: Vec<usize> = (self.offsets[k]..self.offsets[k] + d * d).collect();
        self.quotient.map.select_columns(&cols)
    }

    /// Probe morphisms onto `c` with a linear section.
    pub fn cover(&self, c: &ObjectWord) -> Result<ProbeCover<F>> {
        let dc = self.backend.dim(c);
        let mut maps = Vec::new();
        for (k, p) in self.probes.iter().enumerate() {
            for f in self.backend.hom_basis(p, c)? {
                maps.push((k, f));
            }
        }
        let widths: Vec<usize> = maps.iter().map(|(k, _)| self.probe_dims[*k]).collect();
        let total: usize = widths.iter().sum();
        let mut pi = Matrix::zeros(dc, total);
        let mut col = 0;
        for (_, f) in &maps {
            for j in 0..f.matrix().cols() {
                for i in 0..dc {
                    pi.set(i, col + j, f.matrix().get(i, j).clone());
                }
            }
            col += f.matrix().cols();
        }
        let (_, pivots) = pi.rref();
        if pivots.len() < dc {
            return Err(Error::Universality(format!(
                "the probes do not cover {}",
                self.backend.word_label(c)
            )));
        }
        let binv = pi.select_columns(&pivots).inverse().expect("pivot columns are independent");
        let mut section = Matrix::zeros(total, dc);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..dc {
                section.set(p, j, binv.get(r, j).clone());
            }
        }
        let mut sections = Vec::with_capacity(maps.len());
        let mut start = 0;
        for w in widths {
            sections.push(section.select_rows(&(start..start + w).collect::<Vec<_>>()));
            start += w;
        }
        Ok(ProbeCover { maps, sections })
    }

    /// `κ_c: c ⊗ vc -> T(1)`, the universal dinatural map with `y = 1`.
    pub fn kappa(&self, c: &ObjectWord) -> Result<Matrix<F>> {
        self.backend.check_word(c)?;
        if let Some(k) = self.probes.iter().position(|p| p == c) {
            return Ok(self.probe_kappa(k));
        }
        let dc = self.backend.dim(c);
        let cover = self.cover(c)?;
        let mut out = Matrix::zeros(self.base_dim(), dc * dc);
        for ((k, pi), sigma) in cover.maps.iter().zip(&cover.sections) {
            let vpi = self.backend.left_dual_morphism(pi);
            let piece = self.probe_kappa(*k).mul(&sigma.kron(vpi.matrix()));
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// `ι_c: F(c) ⊗ y ⊗ G(vc) -> T(y)` for `y` of dimension `dy`.
    pub fn injection(&self, c: &ObjectWord, dy: usize) -> Result<Matrix<F>> {
        let kappa = self.kappa(c)?;
        Ok(self.injection_from_kappa(&kappa, self.backend.dim(c), dy))
    }

    fn injection_from_kappa(&self, kappa: &Matrix<F>, dc: usize, dy: usize) -> Matrix<F> {
        let mut out = Matrix::zeros(self.base_dim() * dy, dc * dy * dc);
        for a in 0..dc {
            for b in 0..dc {
                let col = kappa.column(a * dc + b);
                for (t, v) in col.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for w in 0..dy {
                        out.set(t * dy + w, (a * dy + w) * dc + b, v.clone());
                    }
                }
            }
        }
        out
    }

    fn build_action_terms(&self) -> Vec<Vec<(usize, Matrix<F>)>> {
        let hopf = self.backend.hopf();
        let outer: Vec<Rep<F>> = self.probes.iter().map(|p| self.backend.rep(&self.outer_object(p))).collect();
        let inner: Vec<Rep<F>> = self.probes.iter().map(|p| self.backend.rep(&self.inner_dual_object(p))).collect();
        let n = self.base_dim();
        let mut cache: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
        let mut block = |p: usize, r: usize| -> Matrix<F> {
            cache
                .entry((p, r))
                .or_insert_with(|| {
                    let mut lifted = Matrix::zeros(self.quotient.ambient, n);
                    for (t, &(k, a, b)) in self.cells.iter().enumerate() {
                        let d = self.probe_dims[k];
                        let (fa, gb) = (&outer[k].action[p], &inner[k].action[r]);
                        for a2 in 0..d {
                            let x = fa.get(a2, a);
                            if x.is_zero() {
                                continue;
                            }
                            for b2 in 0..d {
                                let y = gb.get(b2, b);
                                if !y.is_zero() {
                                    lifted.set(self.offsets[k] + a2 * d + b2, t, x.clone() * y.clone());
                                }
                            }
                        }
                    }
                    self.quotient.map.mul(&lifted)
                })
                .clone()
        };
        (0..hopf.dim())
            .map(|i| {
                let mut terms: BTreeMap<usize, Matrix<F>> = BTreeMap::new();
                for (j, r, c1) in hopf.comult_terms(i) {
                    for (p, qq, c2) in hopf.comult_terms(*j) {
                        let piece = block(*p, *r).scale(&(c1.clone() * c2.clone()));
                        let entry = terms.entry(*qq).or_insert_with(|| Matrix::zeros(n, n));
                        *entry = entry.add(&piece);
                    }
                }
                terms.into_iter().filter(|(_, m)| !m.is_zero()).collect()
            })
            .collect()
    }

    fn build_mult(&self) -> Result<Matrix<F>> {
        let n = self.base_dim();
        let mut out = Matrix::zeros(n, n * n);
        let mut kappas: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
        for (t1, &(i, a, b1)) in self.cells.iter().enumerate() {
            for (t2, &(j, a2, b)) in self.cells.iter().enumerate() {
                if !kappas.contains_key(&(i, j)) {
                    let c = self.probes[i].concat(&self.probes[j]);
                    kappas.insert((i, j), self.kappa(&c)?);
                }
                let (di, dj) = (self.probe_dims[i], self.probe_dims[j]);
                let col = (a * dj + a2) * (di * dj) + b * di + b1;
                let kc = &kappas[&(i, j)];
                for t in 0..n {
                    let v = kc.get(t, col);
                    if !v.is_zero() {
                        out.set(t, t1 * n + t2, v.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `T(M)` for any module `M`.
    pub fn apply(&self, m: &Rep<F>) -> Rep<F> {
        let n = self.base_dim();
        let dm = m.dim();
        let action = self
            .action_terms
            .iter()
            .map(|terms| {
                let mut out = Matrix::zeros(n * dm, n * dm);
                for (q, op) in terms {
                    out = out.add(&op.kron(&m.action[*q]));
                }
                out
            })
            .collect();
        Rep::new(action)
    }

    /// `T(f) = id ⊗ f`.
    pub fn apply_map(&self, f: &Matrix<F>) -> Matrix<F> {
        Matrix::identity(self.base_dim()).kron(f)
    }

    /// `μ_y: T(T(y)) -> T(y)` for `y` of dimension `dy`.
    pub fn mu(&self, dy: usize) -> Matrix<F> {
        self.mult.kron(&Matrix::identity(dy))
    }

    /// `η_y: y -> T(y)`.
    pub fn eta(&self, dy: usize) -> Matrix<F> {
        self.unit.kron(&Matrix::identity(dy))
    }

    /// The algebra structure of `T(1)`: multiplication `T(1) ⊗ T(1) -> T(1)`.
    pub fn base_multiplication(&self) -> &Matrix<F> {
        &self.mult
    }

    pub fn base_unit(&self) -> &Matrix<F> {
        &self.unit
    }

    /// The rep of `F(c) ⊗ y ⊗ G(vc)`.
    pub fn summand_rep(&self, c: &ObjectWord, y: &Rep<F>) -> Rep<F> {
        let b = self.backend;
        b.hopf().tensor_all([&b.rep(&self.outer_object(c)), y, &b.rep(&self.inner_dual_object(c))])
    }

    /// Associativity, both unit laws, and equivariance of `μ` and `η`, at `y`.
    pub fn check_laws(&self, y: &Rep<F>) -> Result<()> {
        let hopf = self.backend.hopf();
        let dy = y.dim();
        let ty = self.apply(y);
        let tty = self.apply(&ty);
        let n = self.base_dim();
        let mu = self.mu(dy);
        if mu.mul(&self.apply_map(&mu)) != mu.mul(&self.mu(n * dy)) {
            return Err(Error::LawFailure("associativity μ∘Tμ = μ∘μT".into()));
        }
        let id = Matrix::identity(n * dy);
        if mu.mul(&self.eta(n * dy)) != id {
            return Err(Error::LawFailure("left unit μ∘ηT = id".into()));
        }
        if mu.mul(&self.apply_map(&self.eta(dy))) != id {
            return Err(Error::LawFailure("right unit μ∘Tη = id".into()));
        }
        if !hopf.is_intertwiner(&tty, &ty, &mu) {
            return Err(Error::LawFailure("μ is not a module map".into()));
        }
        if !hopf.is_intertwiner(y, &ty, &self.eta(dy)) {
            return Err(Error::LawFailure("η is not a module map".into()));
        }
        Ok(())
    }

    /// Dinaturality of `ι` along `f: c -> d`:
    /// `ι_d ∘ (F(f) ⊗ id ⊗ id) = ι_c ∘ (id ⊗ id ⊗ G(vf))` on `F(c) ⊗ y ⊗ G(vd)`.
    pub fn check_dinaturality(&self, f: &Morphism<F>, dy: usize) -> Result<()> {
        let (c, d) = (f.dom(), f.codom());
        let vf = self.backend.left_dual_morphism(f);
        let (dc, dd) = (self.backend.dim(c), self.backend.dim(d));
        let lhs = self.injection(d, dy)?.mul(&f.matrix().kron(&Matrix::identity(dy * dd)));
        let rhs = self.injection(c, dy)?.mul(&Matrix::identity(dc * dy).kron(vf.matrix()));
        if lhs != rhs {
            return Err(Error::LawFailure(format!(
                "ι is not dinatural along a morphism {} -> {}",
                self.backend.word_label(c),
                self.backend.word_label(d)
            )));
        }
        Ok(())
    }

    /// Whether `ι_c` is a module map into `T(y)`.
    pub fn injection_is_equivariant(&self, c: &ObjectWord, y: &Rep<F>) -> Result<bool> {
        let iota = self.injection(c, y.dim())?;
        Ok(self.backend.hopf().is_intertwiner(&self.summand_rep(c, y), &self.apply(y), &iota))
    }
}
