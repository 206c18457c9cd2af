//! Presheaves on the Kleisli category, stored by their values on the probe
//! objects and their action on a basis of Kleisli morphisms between probes.
//!
//! A module `(d, ρ)` gives the presheaf `c̄ ↦ Hom(c, d)` with `h` acting by
//! `α ↦ ρ ∘ T(α) ∘ h`; its pullback along `I` is represented by `d`. Going
//! back, `ρ ∘ ι_P` is recovered from the action of the Kleisli morphisms
//! `ι_P ∘ β`.

use rand::Rng;

use super::module::TModule;
use super::monad::CentralMonad;
use super::{push_equation, MatrixBasis, Term, Unknowns};
use crate::category::CategoryExt;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Rep;
use crate::linalg::{Matrix, Quotient, SparseEchelon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf<F> {
    pub label: String,
    /// `dim F(P̄_k)`.
    pub dims: Vec<usize>,
    /// `action[i][j][m] = F(h_m): F(P̄_j) -> F(P̄_i)` for the `m`-th basis
    /// vector `h_m` of `Hom(P_i, T P_j)`, see [`CentralMonad::kleisli_basis`].
    pub action: Vec<Vec<Vec<Matrix<F>>>>,
    /// `c_F` and `θ_k: Hom(P_k, c_F) -> F(P̄_k)`, in the basis of
    /// [`CentralMonad::probe_homs`].
    pub representing: Option<(Rep<F>, Vec<Matrix<F>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representability<F> {
    /// A natural isomorphism `θ`, one matrix per probe.
    Represented(Vec<Matrix<F>>),
    NotRepresented { probe: String, reason: String },
}

impl<F: Field> Representability<F> {
    pub fn is_represented(&self) -> bool {
        matches!(self, Representability::Represented(_))
    }
}

impl<F: Field> CentralMonad<'_, F> {
    /// Basis of `Hom(P_k, d)` for every probe.
    pub fn probe_homs(&self, d: &Rep<F>) -> Vec<MatrixBasis<F>> {
        let b = self.backend();
        self.probes()
            .iter()
            .map(|p| {
                let rp = b.rep(p);
                MatrixBasis::new((d.dim(), rp.dim()), b.hom_basis_reps(&rp, d))
            })
            .collect()
    }

    fn probe_kleisli_bases(&self) -> Vec<Vec<MatrixBasis<F>>> {
        let ps = self.probes();
        ps.iter().map(|p| ps.iter().map(|q| self.kleisli_basis(p, q)).collect()).collect()
    }

    pub fn presheaf_from_module(&self, m: &TModule<F>) -> Presheaf<F> {
        let homs = self.probe_homs(&m.object);
        let kb = self.probe_kleisli_bases();
        let np = self.probes().len();
        let mut action = vec![vec![Vec::new(); np]; np];
        for i in 0..np {
            for j in 0..np {
                for h in kb[i][j].mats() {
                    let cols: Vec<Vec<F>> = homs[j]
                        .mats()
                        .iter()
                        .map(|alpha| homs[i].coords(&m.action.mul(&self.apply_map(alpha)).mul(h)))
                        .collect();
                    action[i][j].push(Matrix::from_columns(homs[i].len(), &cols));
                }
            }
        }
        let dims: Vec<usize> = homs.iter().map(MatrixBasis::len).collect();
        let theta = dims.iter().map(|&d| Matrix::identity(d)).collect();
        Presheaf { label: format!("Hom_T(T-, {})", m.label), dims, action, representing: Some((m.object.clone(), theta)) }
    }

    /// `F(I f)` for a probe morphism `f: P_i -> P_j`.
    fn induced_action(&self, p: &Presheaf<F>, kb: &[Vec<MatrixBasis<F>>], i: usize, j: usize, f: &Matrix<F>) -> Matrix<F> {
        let dj = f.rows();
        let h = self.eta(dj).mul(f);
        let coords = kb[i][j].coords(&h);
        let mut out = Matrix::zeros(p.dims[i], p.dims[j]);
        for (c, a) in coords.iter().zip(&p.action[i][j]) {
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    /// Functoriality on probes: `F(h ∘ g) = F(g) ∘ F(h)` on basis pairs and
    /// `F(η_P) = id`.
    pub fn check_presheaf(&self, p: &Presheaf<F>) -> Result<()> {
        let kb = self.probe_kleisli_bases();
        let np = self.probes().len();
        for i in 0..np {
            let d = self.backend().dim(&self.probes()[i]);
            if !self.induced_action(p, &kb, i, i, &Matrix::identity(d)).is_identity() {
                return Err(Error::LawFailure(format!("{}: identity not preserved at probe {i}", p.label)));
            }
        }
        for i in 0..np {
            for j in 0..np {
                for (gi, g) in kb[i][j].mats().iter().enumerate() {
                    for k in 0..np {
                        for (hi, h) in kb[j][k].mats().iter().enumerate() {
                            let dk = self.backend().dim(&self.probes()[k]);
                            let comp = self.mu(dk).mul(&self.apply_map(h)).mul(g);
                            let coords = kb[i][k].coords(&comp);
                            let mut lhs = Matrix::zeros(p.dims[i], p.dims[k]);
                            for (c, a) in coords.iter().zip(&p.action[i][k]) {
                                if !c.is_zero() {
                                    lhs = lhs.add(&a.scale(c));
                                }
                            }
                            if lhs != p.action[i][j][gi].mul(&p.action[j][k][hi]) {
                                return Err(Error::LawFailure(format!("{}: composition not preserved", p.label)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Searches a natural isomorphism `Hom(-, candidate) -> F ∘ I` on the
    /// probes: solves the naturality equations, then tries seeded random
    /// points of the solution space for invertibility.
    pub fn representability_check(&self, p: &Presheaf<F>, candidate: &Rep<F>, rng: &mut impl Rng) -> Representability<F> {
        let b = self.backend();
        let homs = self.probe_homs(candidate);
        let label = |k: usize| b.word_label(&self.probes()[k]);
        for (k, h) in homs.iter().enumerate() {
            if h.len() != p.dims[k] {
                return Representability::NotRepresented {
                    probe: label(k),
                    reason: format!("dim Hom = {} but the presheaf has dimension {}", h.len(), p.dims[k]),
                };
            }
        }
        let kb = self.probe_kleisli_bases();
        let np = self.probes().len();
        let unknowns = Unknowns::new(&(0..np).map(|k| (p.dims[k], homs[k].len())).collect::<Vec<_>>());
        let mut sys = SparseEchelon::new(unknowns.total());
        for i in 0..np {
            for j in 0..np {
                let fs = match b.hom_basis(&self.probes()[i], &self.probes()[j]) {
                    Ok(fs) => fs,
                    Err(e) => return Representability::NotRepresented { probe: label(i), reason: e.to_string() },
                };
                for f in fs {
                    let fif = self.induced_action(p, &kb, i, j, f.matrix());
                    let cols: Vec<Vec<F>> = homs[j].mats().iter().map(|a| homs[i].coords(&a.mul(f.matrix()))).collect();
                    let cf = Matrix::from_columns(homs[i].len(), &cols);
                    let (ij, ii) = (Matrix::identity(homs[j].len()), Matrix::identity(p.dims[i]));
                    let terms = [
                        Term { block: j, left: &fif, right: &ij, coef: F::one() },
                        Term { block: i, left: &ii, right: &cf, coef: -F::one() },
                    ];
                    push_equation(&mut sys, &unknowns, &terms, None);
                }
            }
        }
        let kernel = sys.nullspace();
        if kernel.is_empty() {
            return Representability::NotRepresented { probe: label(0), reason: "no natural transformation".into() };
        }
        for _ in 0..32 {
            let mut v = vec![F::zero(); unknowns.total()];
            for k in &kernel {
                let c = F::from_i64(rng.gen_range(-3..=3));
                for (x, y) in v.iter_mut().zip(k) {
                    *x = x.clone() + c.clone() * y.clone();
                }
            }
            let theta = unknowns.unflatten(&v);
            if theta.iter().all(Matrix::is_invertible) {
                return Representability::Represented(theta);
            }
        }
        Representability::NotRepresented { probe: label(0), reason: "no invertible natural transformation found".into() }
    }

    /// Rebuilds `(c_F, ρ)` from a presheaf with representing data.
    pub fn module_from_presheaf(&self, p: &Presheaf<F>) -> Result<TModule<F>> {
        let b = self.backend();
        let (d, theta) = p
            .representing
            .as_ref()
            .ok_or_else(|| Error::Universality(format!("{} carries no representing object", p.label)))?;
        let theta_inv: Vec<Matrix<F>> = theta
            .iter()
            .map(|t| t.inverse().ok_or_else(|| Error::Universality(format!("{}: θ is not invertible", p.label))))
            .collect::<Result<_>>()?;
        let homs = self.probe_homs(d);
        let kb = self.probe_kleisli_bases();
        let probes = self.probes();
        let dd = d.dim();
        let mut xs = Vec::with_capacity(probes.len());
        for pw in probes {
            let dp = b.dim(pw);
            let inj: Vec<Matrix<F>> = probes.iter().map(|q| self.injection(pw, b.dim(q))).collect::<Result<_>>()?;
            let mut ks = Matrix::zeros(dp * dd * dp, 0);
            let mut rs = Matrix::zeros(dd, 0);
            for (q, qw) in probes.iter().enumerate() {
                let summand = self.summand_rep(pw, &b.rep(qw));
                for (q2, q2w) in probes.iter().enumerate() {
                    for beta in b.hom_basis_reps(&b.rep(q2w), &summand) {
                        let h = inj[q].mul(&beta);
                        let coords = kb[q2][q].coords(&h);
                        let mut fh = Matrix::zeros(p.dims[q2], p.dims[q]);
                        for (c, a) in coords.iter().zip(&p.action[q2][q]) {
                            if !c.is_zero() {
                                fh = fh.add(&a.scale(c));
                            }
                        }
                        for (s, alpha) in homs[q].mats().iter().enumerate() {
                            let value = theta_inv[q2].mul(&fh).mul(&theta[q].select_columns(&[s]));
                            let r = homs[q2].combine(&value.column(0));
                            let k = Matrix::identity(dp).kron(alpha).kron(&Matrix::identity(dp)).mul(&beta);
                            ks = ks.hstack(&k);
                            rs = rs.hstack(&r);
                        }
                    }
                }
            }
            if ks.rank() < dp * dd * dp {
                return Err(Error::Universality(format!(
                    "{}: probe data do not determine the action at {}",
                    p.label,
                    b.word_label(pw)
                )));
            }
            let xt = ks
                .transpose()
                .solve_matrix(&rs.transpose())
                .ok_or_else(|| Error::Universality(format!("{}: inconsistent action at {}", p.label, b.word_label(pw))))?;
            xs.push((xt.transpose(), dp));
        }
        let n = self.base_dim();
        let mut action = Matrix::zeros(dd, n * dd);
        for (t, &(k, a, bb)) in self.cells().iter().enumerate() {
            let (x, dp) = &xs[k];
            for w in 0..dd {
                for r in 0..dd {
                    action.set(r, t * dd + w, x.get(r, (a * dd + w) * dp + bb).clone());
                }
            }
        }
        let m = TModule { label: format!("from {}", p.label), object: d.clone(), action };
        self.check_module(&m)?;
        Ok(m)
    }

    /// The pointwise cokernel of the pair `id, η_d ∘ ρ: T d̄ ⇉ d̄` of Kleisli
    /// morphisms, i.e. `Hom(-, T d)` modulo the image of `μ_d - T(ρ)`, with
    /// its canonical identification `α ↦ [η_d ∘ α]` of `Hom(-, d)`.
    pub fn split_coequalizer_presheaf(&self, m: &TModule<F>) -> Presheaf<F> {
        let b = self.backend();
        let d = &m.object;
        let dd = d.dim();
        let td = self.apply(d);
        let ttd = self.apply(&td);
        let diff = self.mu(dd).sub(&self.apply_map(&m.action));
        let probes = self.probes();
        let mut spaces = Vec::new();
        let mut quotients = Vec::new();
        for pw in probes {
            let rp = b.rep(pw);
            let v = MatrixBasis::new((td.dim(), rp.dim()), b.hom_basis_reps(&rp, &td));
            let rels: Vec<Vec<F>> = b.hom_basis_reps(&rp, &ttd).iter().map(|g| v.coords(&diff.mul(g))).collect();
            quotients.push(Quotient::new(v.len(), &rels));
            spaces.push(v);
        }
        let kb = self.probe_kleisli_bases();
        let np = probes.len();
        let mut action = vec![vec![Vec::new(); np]; np];
        for i in 0..np {
            for j in 0..np {
                for h in kb[i][j].mats() {
                    let cols: Vec<Vec<F>> = quotients[j]
                        .complement
                        .iter()
                        .map(|&c| {
                            let alpha = &spaces[j].mats()[c];
                            let image = self.mu(dd).mul(&self.apply_map(alpha)).mul(h);
                            quotients[i].project(&spaces[i].coords(&image))
                        })
                        .collect();
                    action[i][j].push(Matrix::from_columns(quotients[i].dim(), &cols));
                }
            }
        }
        let homs = self.probe_homs(d);
        let theta = (0..np)
            .map(|k| {
                let cols: Vec<Vec<F>> =
                    homs[k].mats().iter().map(|a| quotients[k].project(&spaces[k].coords(&self.eta(dd).mul(a)))).collect();
                Matrix::from_columns(quotients[k].dim(), &cols)
            })
            .collect();
        Presheaf {
            label: format!("coker({})", m.label),
            dims: quotients.iter().map(Quotient::dim).collect(),
            action,
            representing: Some((d.clone(), theta)),
        }
    }
}
