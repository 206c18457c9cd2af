//! Retracts of free modules, and the comparison of two twists.

use std::fmt;

use rand::Rng;

use super::module::TModule;
use super::monad::CentralMonad;
use super::{push_equation, Term, Unknowns};
use crate::category::{CategoryExt, ObjectWord, TensorCategory};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Matrix, SparseEchelon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaroubiEntry {
    pub label: String,
    /// The free module exhibiting a retraction, if any.
    pub retract_of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KaroubiReport {
    pub fingerprint: String,
    pub winding: i32,
    pub free: Vec<String>,
    pub entries: Vec<KaroubiEntry>,
}

impl KaroubiReport {
    pub fn all_retracts(&self) -> bool {
        self.entries.iter().all(|e| e.retract_of.is_some())
    }

    /// Modules that are not retracts of any tested free module.
    pub fn witnesses(&self) -> Vec<&KaroubiEntry> {
        self.entries.iter().filter(|e| e.retract_of.is_none()).collect()
    }
}

impl fmt::Display for KaroubiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "backend {}", self.fingerprint)?;
        writeln!(f, "winding {}", self.winding)?;
        writeln!(f, "free modules tested: {}", self.free.join(", "))?;
        for e in &self.entries {
            match &e.retract_of {
                Some(t) => writeln!(f, "retract {} of {}", e.label, t)?,
                None => writeln!(f, "not-a-retract {}", e.label)?,
            }
        }
        write!(f, "all retracts: {}", if self.all_retracts() { "yes" } else { "no" })
    }
}

impl<F: Field> CentralMonad<'_, F> {
    /// Whether `id_M` is a sum of composites `M -> T c -> M` of module maps,
    /// i.e. `M` is a retract of a finite sum of copies of `T c`.
    pub fn is_retract(&self, m: &TModule<F>, free: &TModule<F>) -> bool {
        let to = self.module_maps(m, free);
        let back = self.module_maps(free, m);
        let d = m.dim();
        let products: Vec<Vec<F>> = back
            .mats()
            .iter()
            .flat_map(|r| to.mats().iter().map(move |s| r.mul(s).entries().to_vec()))
            .collect();
        if products.is_empty() {
            return d == 0;
        }
        let id = Matrix::<F>::identity(d);
        Matrix::from_columns(d * d, &products).solve(id.entries()).is_some()
    }

    /// The default test set: free modules on the unit and every generator,
    /// modules of the half-braidings found on those objects, and, over a
    /// finite field, one simple module per simple center object.
    pub fn karoubi_test_set(&self, rng: &mut impl Rng) -> Result<Vec<TModule<F>>> {
        let b = self.backend();
        let mut objects = vec![ObjectWord::unit()];
        objects.extend(b.generators().into_iter().map(ObjectWord::single));
        let mut out: Vec<TModule<F>> = objects.iter().map(|c| self.free_module(c)).collect();
        for c in &objects {
            let (found, _) = self.halfbraidings_on(&b.rep(c), &b.word_label(c), 729)?;
            for hb in found {
                out.push(self.halfbraiding_to_module(&hb)?);
            }
        }
        if F::elements().is_some() && b.is_semisimple() {
            let algebra = self.center_algebra()?;
            out.extend(algebra.simple_modules(self, rng)?);
        }
        Ok(out)
    }

    pub fn karoubi_compare(&self, test_set: &[TModule<F>], free_on: &[ObjectWord]) -> KaroubiReport {
        let b = self.backend();
        let free: Vec<TModule<F>> = free_on.iter().map(|c| self.free_module(c)).collect();
        let entries = test_set
            .iter()
            .map(|m| KaroubiEntry {
                label: m.label.clone(),
                retract_of: free.iter().find(|t| self.is_retract(m, t)).map(|t| t.label.clone()),
            })
            .collect();
        KaroubiReport {
            fingerprint: b.fingerprint(),
            winding: self.winding(),
            free: free.iter().map(|t| t.label.clone()).collect(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistComparison {
    pub windings: (i32, i32),
    /// Per object: whether an invertible intertwiner `T_a y -> T_b y`
    /// transports every probe injection to the other.
    pub transported: Vec<(String, bool)>,
    /// Whether both monads have identical matrices (coend data, actions,
    /// multiplication and unit) on every object.
    pub strictly_equal: bool,
}

impl TwistComparison {
    pub fn differ(&self) -> bool {
        self.transported.iter().any(|(_, t)| !t)
    }
}

/// Compares `T_a` and `T_b` on the given objects.
pub fn compare_twists<F: Field>(
    backend: &dyn TensorCategory<F>,
    a: i32,
    b: i32,
    objects: &[ObjectWord],
) -> Result<TwistComparison> {
    let ta = CentralMonad::new(backend, a)?;
    let tb = CentralMonad::new(backend, b)?;
    let mut strictly_equal = ta.base_dim() == tb.base_dim()
        && ta.base_multiplication() == tb.base_multiplication()
        && ta.base_unit() == tb.base_unit();
    let mut transported = Vec::new();
    for y in objects {
        let ry = backend.rep(y);
        let (ya, yb) = (ta.apply(&ry), tb.apply(&ry));
        strictly_equal &= ya == yb;
        let n = ya.dim();
        let unknowns = Unknowns::new(&[(n, n)]);
        let mut sys = SparseEchelon::new(unknowns.total() + 1);
        let id = Matrix::identity(n);
        for (x, z) in ya.action.iter().zip(&yb.action) {
            let terms = [
                Term { block: 0, left: &id, right: x, coef: F::one() },
                Term { block: 0, left: z, right: &id, coef: -F::one() },
            ];
            push_equation(&mut sys, &unknowns, &terms, None);
        }
        for p in ta.probes() {
            let (ia, ib) = (ta.injection(p, ry.dim())?, tb.injection(p, ry.dim())?);
            strictly_equal &= ia == ib;
            push_equation(&mut sys, &unknowns, &[Term { block: 0, left: &id, right: &ia, coef: F::one() }], Some(&ib));
        }
        let total = unknowns.total();
        let ok = sys.is_consistent_with_constant(total) && {
            let kernel = sys.nullspace();
            kernel
                .iter()
                .find(|v| !v[total].is_zero())
                .map(|v| {
                    let scale = v[total].inv().expect("nonzero");
                    let x: Vec<F> = v[..total].iter().map(|e| e.clone() * scale.clone()).collect();
                    unknowns.unflatten(&x).remove(0).is_invertible()
                })
                .unwrap_or(false)
        };
        transported.push((backend.word_label(y), ok));
    }
    Ok(TwistComparison { windings: (a, b), transported, strictly_equal })
}
