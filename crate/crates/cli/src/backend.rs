//! Backend selection: builtin names, group tables and Hopf structure files.
//!
//! Builtins are `vect-zN`, `vect-s3` (graded vector spaces), `kzN`, `ks3`
//! (group algebra modules), `h4` (Sweedler's algebra) and `vect:d1,d2,...`
//! (plain vector spaces of the listed dimensions). A path prefixed with
//! `group:` or `kgroup:`, or ending in `.group`, loads a multiplication
//! table; `hopf:` or a `.hopf` extension loads structure constants.

use std::collections::BTreeMap;
use std::path::Path;

use stringnet::category::{Generator, ObjectWord, TensorCategory};
use stringnet::field::Field;
use stringnet::group::GroupTable;
use stringnet::hopf::{HopfData, Rep};
use stringnet::hopfmod::{load_hopf, HopfBackend};
use stringnet::linalg::Matrix;
use stringnet::vectg::VectG;

use crate::error::{CliError, Result};
use crate::text::Source;

pub type Backend<F> = Box<dyn TensorCategory<F>>;

pub fn load_backend<F: Field>(spec: &str) -> Result<Backend<F>> {
    if let Some(path) = spec.strip_prefix("group:") {
        return Ok(Box::new(VectG::<F>::new(read_group(Path::new(path))?)));
    }
    if let Some(path) = spec.strip_prefix("kgroup:") {
        return group_algebra(&read_group(Path::new(path))?);
    }
    if let Some(path) = spec.strip_prefix("hopf:") {
        return Ok(Box::new(read_hopf(Path::new(path))?));
    }
    if spec.ends_with(".group") {
        return Ok(Box::new(VectG::<F>::new(read_group(Path::new(spec))?)));
    }
    if spec.ends_with(".hopf") {
        return Ok(Box::new(read_hopf(Path::new(spec))?));
    }
    if let Some(dims) = spec.strip_prefix("vect:") {
        let dims: Vec<usize> = dims
            .split(',')
            .map(|d| d.trim().parse().map_err(|_| CliError::Input(format!("bad dimension list in backend `{spec}`"))))
            .collect::<Result<_>>()?;
        return Ok(Box::new(HopfBackend::<F>::vect(&dims)));
    }
    match spec {
        "vect-s3" => return Ok(Box::new(VectG::<F>::new(GroupTable::symmetric3()))),
        "ks3" => return group_algebra(&GroupTable::symmetric3()),
        "h4" => {
            if F::characteristic() == 2 {
                return Err(CliError::Input("h4 needs a field of characteristic other than 2".into()));
            }
            return Ok(Box::new(HopfBackend::<F>::sweedler()));
        }
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("vect-z").and_then(|n| n.parse::<usize>().ok()).filter(|&n| n > 0) {
        return Ok(Box::new(VectG::<F>::new(GroupTable::cyclic(n))));
    }
    if let Some(n) = spec.strip_prefix("kz").and_then(|n| n.parse::<usize>().ok()).filter(|&n| n > 0) {
        return group_algebra(&GroupTable::cyclic(n));
    }
    Err(CliError::Input(format!("unknown backend `{spec}`")))
}

fn group_algebra<F: Field>(g: &GroupTable) -> Result<Backend<F>> {
    if g.order() > 20 {
        return Err(CliError::Input(format!("group algebra of order {} is too large for the character search", g.order())));
    }
    Ok(Box::new(HopfBackend::<F>::group_algebra(g)))
}

/// `n`, then the `n^2` entries of the table, row `a` listing `a * b`.
pub fn read_group(path: &Path) -> Result<GroupTable> {
    let src = Source::read(path)?;
    parse_group(&src)
}

pub fn parse_group(src: &Source) -> Result<GroupTable> {
    let mut c = src.cursor();
    let n = c.usize("group order")?;
    if n == 0 {
        return Err(src.error(&src.lines[0][0], "group order must be positive"));
    }
    let mut table = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let t = c.next("table entry")?;
        let v: usize = src.number(t, "table entry")?;
        if v >= n {
            return Err(src.error(t, format!("table entry {v} is not below the order {n}")));
        }
        table.push(v);
    }
    c.finish()?;
    let name = src.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "G".into());
    GroupTable::from_table(name, n, table).map_err(|e| CliError::Input(format!("{}: {e}", src.path.display())))
}

/// `d`, then `m` (`d^3`), `Δ` (`d^3`), unit (`d`), counit (`d`) and `S`
/// (`d^2`, row-major, column `j` holding `S(e_j)`), followed by any number
/// of `module <name> <k>` blocks giving the `k x k` action matrices of
/// `e_0, ..., e_{d-1}` row-major. The regular module is registered as `R`.
pub fn read_hopf<F: Field>(path: &Path) -> Result<HopfBackend<F>> {
    let src = Source::read(path)?;
    parse_hopf(&src)
}

pub fn parse_hopf<F: Field>(src: &Source) -> Result<HopfBackend<F>> {
    let mut c = src.cursor();
    let d = c.usize("dimension")?;
    let mult = c.scalars(d * d * d, "multiplication constant")?;
    let comult = c.scalars(d * d * d, "comultiplication constant")?;
    let unit = c.scalars(d, "unit coefficient")?;
    let counit = c.scalars(d, "counit value")?;
    let s = c.scalars::<F>(d * d, "antipode entry")?;
    let antipode = Matrix::from_fn(d, d, |i, j| s[i * d + j].clone());
    let name = src.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "H".into());
    let mut backend = load_hopf(&name, HopfData { dim: d, mult, unit, comult, counit, antipode })
        .map_err(|e| CliError::Input(format!("{}: {e}", src.path.display())))?;
    while let Some(t) = c.peek() {
        if t.text != "module" {
            return Err(src.error(t, format!("expected `module`, found `{}`", t.text)));
        }
        c.next("module")?;
        let name = c.next("module name")?;
        let k = c.usize("module dimension")?;
        let mut action = Vec::with_capacity(d);
        for _ in 0..d {
            let e = c.scalars::<F>(k * k, "action entry")?;
            action.push(Matrix::from_fn(k, k, |i, j| e[i * k + j].clone()));
        }
        backend
            .register(&name.text, Rep::new(action))
            .map_err(|e| src.error(name, format!("module {}: {e}", name.text)))?;
    }
    Ok(backend)
}

pub fn render_group(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = format!("# {}\n{n}\n", g.name());
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// The inverse of [`parse_hopf`]; the regular module is left implicit.
pub fn render_hopf<F: Field>(b: &HopfBackend<F>) -> String {
    let h = b.hopf();
    let data = h.data();
    let d = data.dim;
    let line = |v: &[F]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("# {}\n{d}\n# multiplication\n", h.name());
    for chunk in data.mult.chunks(d) {
        out.push_str(&format!("{}\n", line(chunk)));
    }
    out.push_str("# comultiplication\n");
    for chunk in data.comult.chunks(d) {
        out.push_str(&format!("{}\n", line(chunk)));
    }
    out.push_str(&format!("# unit\n{}\n# counit\n{}\n# antipode\n", line(&data.unit), line(&data.counit)));
    for i in 0..d {
        out.push_str(&format!("{}\n", line(data.antipode.row(i))));
    }
    for (name, rep) in b.modules().iter().filter(|(n, _)| n != "R") {
        let k = rep.dim();
        out.push_str(&format!("module {name} {k}\n"));
        for m in &rep.action {
            out.push_str(&format!("{}\n", line(m.entries())));
        }
    }
    out
}

/// Reverse lookup of generator labels, including a few levels of duals.
pub struct Labels {
    map: BTreeMap<String, Generator>,
}

const DUAL_DEPTH: usize = 6;

impl Labels {
    pub fn new<F: Field>(b: &dyn TensorCategory<F>) -> Self {
        let mut map = BTreeMap::new();
        for g in b.generators() {
            map.entry(b.generator_label(g)).or_insert(g);
            let (mut l, mut r) = (g, g);
            for _ in 0..DUAL_DEPTH {
                l = b.left_dual_generator(l);
                r = b.right_dual_generator(r);
                map.entry(b.generator_label(l)).or_insert(l);
                map.entry(b.generator_label(r)).or_insert(r);
            }
        }
        Labels { map }
    }

    /// `1` is the unit; otherwise labels joined by `*`.
    pub fn word(&self, s: &str) -> Option<ObjectWord> {
        if s == "1" {
            return Some(ObjectWord::unit());
        }
        s.split('*').map(|l| self.map.get(l).copied()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stringnet::category::CategoryExt;
    use stringnet::field::Q;

    #[test]
    fn builtin_labels_round_trip() {
        for spec in ["vect-z2", "vect-s3", "kz2", "ks3", "h4", "vect:1,2"] {
            let b = load_backend::<Q>(spec).unwrap();
            let labels = Labels::new(b.as_ref());
            for g in b.generators() {
                let w = ObjectWord::new(vec![g, b.left_dual_generator(g), b.right_dual_generator(g)]);
                assert_eq!(labels.word(&b.word_label(&w)), Some(w), "{spec}");
            }
            assert_eq!(labels.word("1"), Some(ObjectWord::unit()));
        }
    }

    #[test]
    fn unknown_backends_are_input_errors() {
        for spec in ["vect-z0", "h5", "vect:1,x"] {
            assert_eq!(load_backend::<Q>(spec).err().unwrap().exit_code(), 2);
        }
    }

    #[test]
    fn structure_files_round_trip() {
        let dir = std::env::temp_dir().join(format!("stringnet-backend-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let h4 = HopfBackend::<Q>::sweedler();
        let path = dir.join("h4.hopf");
        std::fs::write(&path, render_hopf(&h4)).unwrap();
        let loaded = read_hopf::<Q>(&path).unwrap();
        assert_eq!(loaded.hopf().data(), h4.hopf().data());
        assert_eq!(loaded.modules(), h4.modules());
        let path = dir.join("s3.group");
        std::fs::write(&path, render_group(&GroupTable::symmetric3())).unwrap();
        assert_eq!(read_group(&path).unwrap().table(), GroupTable::symmetric3().table());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn group_table_errors_are_located() {
        let src = Source::from_text(Path::new("g.group"), "2\n0 1\n1 7\n");
        assert_eq!(parse_group(&src).unwrap_err().to_string(), "g.group:3:3: table entry 7 is not below the order 2");
        let src = Source::from_text(Path::new("g.group"), "2\n0 1\n1 1\n");
        assert!(parse_group(&src).is_err());
    }
}
