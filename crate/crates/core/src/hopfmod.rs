//! `H-mod` for a finite-dimensional Hopf algebra `H`, with user-registered
//! generating modules.
//!
//! The generator `(i, k)` is the `k`-fold left dual of the registered module
//! `i` (right dual for negative `k`), so left and right duals are inverse on
//! generators by construction. Level `k` acts through `S^{-k}`, transposed on
//! the dual space for odd `k`; in particular the left double dual twists the
//! action by `S^{-2}`.

use crate::category::{Generator, ObjectWord, TensorCategory};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::GroupTable;
use crate::hopf::{HopfAlgebra, HopfData, Rep};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct HopfBackend<F> {
    hopf: HopfAlgebra<F>,
    modules: Vec<(String, Rep<F>)>,
    semisimple: bool,
}

/// Verifies the structure constants and returns a backend with the regular
/// module registered as `R`.
pub fn load_hopf<F: Field>(name: &str, data: HopfData<F>) -> Result<HopfBackend<F>> {
    let hopf = HopfAlgebra::new(name, data).map_err(|e| Error::Axiom(e.to_string()))?;
    let mut b = HopfBackend::new(hopf, false);
    let r = b.hopf.regular();
    b.register("R", r)?;
    Ok(b)
}

impl<F: Field> HopfBackend<F> {
    /// `semisimple` only informs the choice of probes for coends; the regular
    /// module is a safe probe either way.
    pub fn new(hopf: HopfAlgebra<F>, semisimple: bool) -> Self {
        HopfBackend { hopf, modules: Vec::new(), semisimple }
    }

    pub fn register(&mut self, name: &str, rep: Rep<F>) -> Result<Generator> {
        self.hopf.check_rep(&rep).map_err(|e| Error::Axiom(format!("module {name}: {e}")))?;
        if self.modules.iter().any(|(n, _)| n == name) {
            return Err(Error::Typing(format!("module name {name} registered twice")));
        }
        self.modules.push((name.to_string(), rep));
        Ok(Generator::new(self.modules.len() as u32 - 1))
    }

    pub fn generator(&self, name: &str) -> Option<Generator> {
        self.modules.iter().position(|(n, _)| n == name).map(|i| Generator::new(i as u32))
    }

    pub fn word(&self, names: &[&str]) -> ObjectWord {
        names.iter().map(|n| self.generator(n).unwrap_or_else(|| panic!("unknown module {n}"))).collect()
    }

    pub fn modules(&self) -> &[(String, Rep<F>)] {
        &self.modules
    }

    /// Plain vector spaces: the trivial Hopf algebra with generators of the
    /// given dimensions, named `V0, V1, ...`.
    pub fn vect(dims: &[usize]) -> Self {
        let mut b = HopfBackend::new(HopfAlgebra::trivial(), true);
        for (i, &d) in dims.iter().enumerate() {
            b.register(&format!("V{i}"), Rep::new(vec![Matrix::identity(d)])).expect("vector space");
        }
        b
    }

    /// `K[G]` with the regular, trivial and every `+-1`-valued character.
    pub fn group_algebra(group: &GroupTable) -> Self {
        let hopf = HopfAlgebra::group_algebra(group);
        let semisimple = F::characteristic() == 0 || !(group.order() as u64).is_multiple_of(F::characteristic());
        let mut b = HopfBackend::new(hopf, semisimple);
        let r = b.hopf.regular();
        b.register("R", r).expect("regular");
        for (k, chi) in sign_characters(group).into_iter().enumerate() {
            let rep = Rep::new(chi.iter().map(|&s| Matrix::scalar(F::from_i64(s))).collect());
            let name = if k == 0 { "triv".to_string() } else { format!("chi{k}") };
            b.register(&name, rep).expect("character");
        }
        b
    }

    /// Sweedler's `H4` with the regular module `R`, the characters `S+` and
    /// `S-` (`g -> +-1`, `x -> 0`) and the projective covers `P+`, `P-`
    /// (the left ideals generated by `(1 +- g)/2`).
    pub fn sweedler() -> Self {
        let hopf = HopfAlgebra::sweedler();
        let mut b = HopfBackend::new(hopf, false);
        let r = b.hopf.regular();
        b.register("R", r.clone()).expect("regular");
        for (name, s) in [("S+", 1), ("S-", -1)] {
            let rep = Rep::new(vec![
                Matrix::scalar(F::one()),
                Matrix::scalar(F::from_i64(s)),
                Matrix::scalar(F::zero()),
                Matrix::scalar(F::zero()),
            ]);
            b.register(name, rep).expect("character");
        }
        let half = F::from_ratio(1, 2).expect("characteristic is not 2");
        for (name, s) in [("P+", 1), ("P-", -1)] {
            let sh = F::from_i64(s) * half.clone();
            // (1 + s g)/2 and x (1 + s g)/2 = (x - s gx)/2
            let basis = Matrix::from_columns(
                4,
                &[
                    vec![half.clone(), sh.clone(), F::zero(), F::zero()],
                    vec![F::zero(), F::zero(), half.clone(), -sh.clone()],
                ],
            );
            let rep = b.hopf.subrep(&r, &basis).expect("left ideal");
            b.register(name, rep).expect("projective cover");
        }
        b
    }
}

/// All homomorphisms `G -> {+1, -1}`, trivial first, by exhaustive search.
pub fn sign_characters(group: &GroupTable) -> Vec<Vec<i64>> {
    let n = group.order();
    assert!(n <= 20, "exhaustive character search is for small groups");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let chi: Vec<i64> = (0..n).map(|g| if mask >> g & 1 == 1 { -1 } else { 1 }).collect();
        let hom = (0..n).all(|a| (0..n).all(|b| chi[group.mul(a, b)] == chi[a] * chi[b]));
        if hom {
            out.push(chi);
        }
    }
    out
}

impl<F: Field> TensorCategory<F> for HopfBackend<F> {
    fn fingerprint(&self) -> String {
        let names: Vec<&str> = self.modules.iter().map(|(n, _)| n.as_str()).collect();
        format!("hopf:{}:dim={}:{}:[{}]", self.hopf.name(), self.hopf.dim(), F::descriptor(), names.join(","))
    }

    fn hopf(&self) -> &HopfAlgebra<F> {
        &self.hopf
    }

    fn generators(&self) -> Vec<Generator> {
        (0..self.modules.len()).map(|i| Generator::new(i as u32)).collect()
    }

    fn contains(&self, g: Generator) -> bool {
        (g.base as usize) < self.modules.len()
    }

    fn generator_rep(&self, g: Generator) -> Rep<F> {
        let base = &self.modules[g.base as usize].1;
        if g.level == 0 {
            base.clone()
        } else {
            self.hopf.dual_level(base, g.level)
        }
    }

    fn generator_label(&self, g: Generator) -> String {
        let name = &self.modules[g.base as usize].0;
        match g.level {
            0 => name.clone(),
            k if k > 0 => format!("{}{name}", "v".repeat(k as usize)),
            k => format!("{name}{}", "^".repeat(k.unsigned_abs() as usize)),
        }
    }

    fn left_dual_generator(&self, g: Generator) -> Generator {
        Generator { base: g.base, level: g.level + 1 }
    }

    fn right_dual_generator(&self, g: Generator) -> Generator {
        Generator { base: g.base, level: g.level - 1 }
    }

    /// The registered copy of the regular module; for the trivial algebra the
    /// unit object already is one.
    fn probe_words(&self) -> Vec<ObjectWord> {
        if self.hopf.dim() == 1 {
            return vec![ObjectWord::unit()];
        }
        let reg = self.hopf.regular();
        match self.modules.iter().position(|(_, r)| *r == reg) {
            Some(i) => vec![ObjectWord::single(Generator::new(i as u32))],
            None => vec![],
        }
    }

    fn is_semisimple(&self) -> bool {
        self.semisimple
    }
}
