//! The subcommands, generic over the scalar field.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringnet::category::{compose, CategoryExt, Morphism, ObjectWord, TensorCategory};
use stringnet::center::{compare_twists, CentralMonad, KleisliMorphism};
use stringnet::cylinder::{
    local_evaluate, reduce_to_normal_form, stack, validate_locally_progressive, CylinderStringNet, EvaluationRectangle,
};
use stringnet::field::{Field, Q};
use stringnet::progressive::{evaluate, stack_graphs, validate_progressive, Coloring, ProgressiveGraph};

use crate::backend::{load_backend, Backend};
use crate::diagram::{DiagramFile, Shape};
use crate::error::{CliError, Result};
use crate::report::{Report, Status};
use crate::{Cli, Command};

const DEFAULT_WINDING: i32 = 1;

struct Ctx<'a> {
    cli: &'a Cli,
    report: Report,
}

impl Ctx<'_> {
    /// `--backend` wins over the file's `backend` record.
    fn backend<F: Field>(&mut self, file: Option<&DiagramFile>) -> Result<Option<Backend<F>>> {
        let spec = self.cli.global.backend.clone().or_else(|| file.and_then(|d| d.backend.clone()));
        let Some(spec) = spec else { return Ok(None) };
        let b = load_backend::<F>(&spec)?;
        self.report.field("backend", b.fingerprint());
        Ok(Some(b))
    }

    fn require_backend<F: Field>(&mut self, file: Option<&DiagramFile>) -> Result<Backend<F>> {
        self.backend(file)?.ok_or_else(|| CliError::Input("no backend: pass --backend or add a `backend` record".into()))
    }

    fn winding(&self, file: Option<&DiagramFile>) -> i32 {
        let from_file = file.and_then(|d| match d.shape {
            Shape::Cylinder(n) => Some(n),
            Shape::Strip => None,
        });
        self.cli.global.winding.or(from_file).unwrap_or(DEFAULT_WINDING)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cli.global.seed)
    }
}

pub fn dispatch<F: Field>(cli: &Cli, echo: &str) -> Result<Report> {
    let mut ctx = Ctx { cli, report: Report::new(echo) };
    ctx.report.field("field", F::descriptor());
    match &cli.command {
        Command::Validate { diagram } => validate::<F>(&mut ctx, diagram)?,
        Command::Eval { diagram, rect } => eval::<F>(&mut ctx, diagram, rect.as_deref())?,
        Command::Reduce { diagram } => reduce::<F>(&mut ctx, diagram)?,
        Command::Compose { diagrams } => compose_files::<F>(&mut ctx, diagrams)?,
        Command::MonadCheck { compare } => monad_check::<F>(&mut ctx, *compare)?,
        Command::Center { simples, homs, karoubi } => {
            let simples = *simples || !(*homs || *karoubi);
            center::<F>(&mut ctx, simples, *homs, *karoubi)?
        }
        Command::KaroubiCompare => karoubi::<F>(&mut ctx)?,
    }
    Ok(ctx.report)
}

fn shape_line(d: &DiagramFile) -> String {
    match d.shape {
        Shape::Strip => format!("strip [{}, {}]", d.graph.bottom, d.graph.top),
        Shape::Cylinder(n) => format!("cylinder, winding {n}"),
    }
}

fn word_of<F: Field>(c: &Coloring<F>, g: &ProgressiveGraph, boundary: &[usize]) -> ObjectWord {
    boundary
        .iter()
        .flat_map(|&v| g.edges.iter().position(|e| e.source == v || e.target == v))
        .fold(ObjectWord::unit(), |acc, e| acc.concat(&c.edges[e]))
}

/// Geometry and coloring checks; returns the coloring when both pass.
fn check_strip<F: Field>(
    ctx: &mut Ctx<'_>,
    d: &DiagramFile,
    b: Option<&dyn TensorCategory<F>>,
) -> Result<Option<(Coloring<F>, Morphism<F>)>> {
    let geometry = validate_progressive(&d.graph);
    ctx.report.field("geometry", &geometry);
    let Some(b) = b else {
        ctx.report.field("coloring", "skipped, no backend");
        if !geometry.is_accepted() {
            ctx.report.fail(Status::Reject);
        }
        return Ok(None);
    };
    let coloring = d.coloring(b)?;
    if !geometry.is_accepted() {
        ctx.report.fail(Status::Reject);
        return Ok(None);
    }
    let value = match evaluate(&d.graph, &coloring, b) {
        Ok(v) => v,
        Err(e) => {
            ctx.report.field("coloring", format!("reject\n  {e}"));
            ctx.report.fail(Status::Reject);
            return Ok(None);
        }
    };
    ctx.report.field("coloring", "accept");
    let found = (
        word_of(&coloring, &d.graph, &d.graph.bottom_boundary()),
        word_of(&coloring, &d.graph, &d.graph.top_boundary()),
    );
    if !check_boundary(ctx, d, b, &found)? {
        return Ok(None);
    }
    Ok(Some((coloring, value)))
}

fn check_boundary<F: Field>(
    ctx: &mut Ctx<'_>,
    d: &DiagramFile,
    b: &dyn TensorCategory<F>,
    found: &(ObjectWord, ObjectWord),
) -> Result<bool> {
    let text = format!("{} -> {}", b.word_label(&found.0), b.word_label(&found.1));
    match d.declared_boundary(b)? {
        Some(declared) if declared != *found => {
            let want = format!("{} -> {}", b.word_label(&declared.0), b.word_label(&declared.1));
            ctx.report.field("boundary", format!("reject, declared {want}, found {text}"));
            ctx.report.fail(Status::Reject);
            Ok(false)
        }
        _ => {
            ctx.report.field("boundary", text);
            Ok(true)
        }
    }
}

fn check_cylinder<F: Field>(
    ctx: &mut Ctx<'_>,
    d: &DiagramFile,
    b: &dyn TensorCategory<F>,
) -> Result<Option<CylinderStringNet<F>>> {
    let net = d.cylinder(b)?;
    let report = validate_locally_progressive(&net, b);
    ctx.report.field("net", &report);
    if !report.is_accepted() {
        ctx.report.fail(Status::Reject);
        return Ok(None);
    }
    if !check_boundary(ctx, d, b, &net.boundary_value())? {
        return Ok(None);
    }
    Ok(Some(net))
}

fn validate<F: Field>(ctx: &mut Ctx<'_>, path: &Path) -> Result<()> {
    let d = DiagramFile::read(path)?;
    ctx.report.field("diagram", shape_line(&d));
    let b = ctx.backend::<F>(Some(&d))?;
    match (d.shape, b) {
        (Shape::Strip, b) => {
            if let Some((_, v)) = check_strip(ctx, &d, b.as_deref())? {
                ctx.report.field("type", format!("{} -> {}", label(b.as_deref(), v.dom()), label(b.as_deref(), v.codom())));
            }
        }
        (Shape::Cylinder(_), Some(b)) => {
            check_cylinder(ctx, &d, b.as_ref())?;
        }
        (Shape::Cylinder(_), None) => {
            let geometry = validate_progressive(&d.graph);
            ctx.report.field("chart geometry", &geometry);
            ctx.report.field("coloring", "skipped, no backend");
            if !geometry.is_accepted() {
                ctx.report.fail(Status::Reject);
            }
        }
    }
    Ok(())
}

fn label<F: Field>(b: Option<&dyn TensorCategory<F>>, w: &ObjectWord) -> String {
    b.map(|b| b.word_label(w)).unwrap_or_else(|| w.to_string())
}

fn parse_rect(s: &str) -> Result<EvaluationRectangle> {
    let parts: Vec<Q> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| CliError::Input(format!("--rect: `{p}` is not a rational"))))
        .collect::<Result<_>>()?;
    let [s1, s2, t1, t2]: [Q; 4] =
        parts.try_into().map_err(|_| CliError::Input("--rect takes four rationals s1,s2,t1,t2".into()))?;
    Ok(EvaluationRectangle::new(s1, s2, t1, t2)?)
}

fn eval<F: Field>(ctx: &mut Ctx<'_>, path: &Path, rect: Option<&str>) -> Result<()> {
    let d = DiagramFile::read(path)?;
    ctx.report.field("diagram", shape_line(&d));
    let b = ctx.require_backend::<F>(Some(&d))?;
    let b = b.as_ref();
    match (d.shape, rect) {
        (Shape::Strip, None) => {
            if let Some((_, v)) = check_strip(ctx, &d, Some(b))? {
                ctx.report.field("type", format!("{} -> {}", b.word_label(v.dom()), b.word_label(v.codom())));
                ctx.report.matrix("value", v.matrix());
            }
        }
        (Shape::Strip, Some(_)) => return Err(CliError::Input("--rect applies to cylinder nets".into())),
        (Shape::Cylinder(_), None) => {
            return Err(CliError::Input("evaluating a cylinder net needs --rect; use `reduce` for its class".into()))
        }
        (Shape::Cylinder(_), Some(r)) => {
            let rect = parse_rect(r)?;
            if let Some(net) = check_cylinder(ctx, &d, b)? {
                ctx.report.field("rectangle", format!("[{}, {}] x [{}, {}]", rect.s.0, rect.s.1, rect.t.0, rect.t.1));
                let v = local_evaluate(&net, &rect, b)?;
                ctx.report.field("type", format!("{} -> {}", b.word_label(v.dom()), b.word_label(v.codom())));
                ctx.report.matrix("value", v.matrix());
            }
        }
    }
    Ok(())
}

fn reduce<F: Field>(ctx: &mut Ctx<'_>, path: &Path) -> Result<()> {
    let d = DiagramFile::read(path)?;
    ctx.report.field("diagram", shape_line(&d));
    let b = ctx.require_backend::<F>(Some(&d))?;
    let b = b.as_ref();
    let Some(net) = check_cylinder(ctx, &d, b)? else { return Ok(()) };
    let monad = CentralMonad::new(b, ctx.winding(Some(&d)))?;
    ctx.report.field("winding", monad.winding());
    let nf = reduce_to_normal_form(&net, &monad)?;
    ctx.report.field("wrap", b.word_label(&nf.wrap));
    ctx.report.field("type", format!("{} -> T({})", b.word_label(nf.source()), b.word_label(&nf.target)));
    ctx.report.matrix("core", nf.core.matrix());
    ctx.report.matrix("value", &nf.value);
    Ok(())
}

fn compose_files<F: Field>(ctx: &mut Ctx<'_>, paths: &[std::path::PathBuf]) -> Result<()> {
    let files = paths.iter().map(|p| DiagramFile::read(p)).collect::<Result<Vec<_>>>()?;
    let b = ctx.require_backend::<F>(Some(&files[0]))?;
    let b = b.as_ref();
    let shape = files[0].shape;
    if let Some(f) = files.iter().find(|f| f.shape != shape) {
        return Err(CliError::Input(format!("{} does not have the shape of {}", f.path().display(), files[0].path().display())));
    }
    ctx.report.field("diagram", shape_line(&files[0]));
    ctx.report.field("parts", files.len());
    match shape {
        Shape::Strip => {
            let mut parts = Vec::new();
            for f in &files {
                let graph_check = validate_progressive(&f.graph);
                let coloring = f.coloring(b)?;
                if !graph_check.is_accepted() {
                    ctx.report.field(&format!("part {}", f.path().display()), &graph_check);
                    ctx.report.fail(Status::Reject);
                    return Ok(());
                }
                let v = evaluate(&f.graph, &coloring, b)?;
                parts.push((f.graph.clone(), coloring, v));
            }
            let (mut g, mut c, _) = parts[0].clone();
            let mut expected = parts[0].2.clone();
            for (g2, c2, v) in &parts[1..] {
                (g, c) = stack_graphs((&g, &c), (g2, c2))?;
                expected = compose(v, &expected)?;
            }
            let value = evaluate(&g, &c, b)?;
            ctx.report.field("type", format!("{} -> {}", b.word_label(value.dom()), b.word_label(value.codom())));
            ctx.report.matrix("value", value.matrix());
            agreement(ctx, "composite of the parts", value.matrix() == expected.matrix());
        }
        Shape::Cylinder(n) => {
            let monad = CentralMonad::new(b, ctx.cli.global.winding.unwrap_or(n))?;
            let mut nets = Vec::new();
            for f in &files {
                nets.push(f.cylinder(b)?);
            }
            let reduce_one = |net: &CylinderStringNet<F>| -> Result<KleisliMorphism<F>> {
                let nf = reduce_to_normal_form(net, &monad)?;
                Ok(monad.kleisli(nf.source().clone(), nf.target.clone(), nf.value)?)
            };
            let mut stacked = nets[0].clone();
            let mut expected = reduce_one(&nets[0])?;
            for net in &nets[1..] {
                stacked = stack(net, &stacked)?;
                expected = monad.kleisli_compose(&reduce_one(net)?, &expected)?;
            }
            let value = reduce_one(&stacked)?;
            ctx.report.field("winding", monad.winding());
            ctx.report.field("type", format!("{} -> T({})", b.word_label(&value.source), b.word_label(&value.target)));
            ctx.report.matrix("value", &value.matrix);
            agreement(ctx, "Kleisli composite of the parts", value == expected);
        }
    }
    Ok(())
}

fn agreement(ctx: &mut Ctx<'_>, what: &str, ok: bool) {
    ctx.report.field(&format!("agrees with the {what}"), if ok { "yes" } else { "no" });
    if !ok {
        ctx.report.fail(Status::Breach);
    }
}

/// The unit and every registered generator.
fn objects<F: Field>(b: &dyn TensorCategory<F>) -> Vec<ObjectWord> {
    let mut out = vec![ObjectWord::unit()];
    out.extend(b.generators().into_iter().map(ObjectWord::single));
    out
}

fn random_combination<F: Field>(basis: &[Morphism<F>], rng: &mut impl Rng) -> Option<Morphism<F>> {
    let mut it = basis.iter();
    let first = it.next()?.scale(&F::from_i64(rng.gen_range(-3..=3)));
    Some(it.fold(first, |acc, f| acc.add(&f.scale(&F::from_i64(rng.gen_range(-3..=3)))).expect("same hom space")))
}

fn monad_check<F: Field>(ctx: &mut Ctx<'_>, compare: Option<i32>) -> Result<()> {
    let b = ctx.require_backend::<F>(None)?;
    let b = b.as_ref();
    let monad = CentralMonad::new(b, ctx.winding(None))?;
    ctx.report.field("winding", monad.winding());
    ctx.report.field("powers", format!("{:?}", monad.powers()));
    ctx.report.field("T(1) dimension", monad.base_dim());
    let objs = objects(b);
    for y in &objs {
        let result = monad.check_laws(&b.rep(y));
        law_line(ctx, &format!("laws at {}", b.word_label(y)), result);
    }
    let mut rng = ctx.rng();
    let probes = monad.probes().to_vec();
    for c in &probes {
        for d in &probes {
            let Some(f) = random_combination(&b.hom_basis(c, d)?, &mut rng) else { continue };
            for y in [ObjectWord::unit(), probes[0].clone()] {
                let result = monad.check_dinaturality(&f, b.dim(&y));
                let what = format!("dinaturality along {} -> {} at {}", b.word_label(c), b.word_label(d), b.word_label(&y));
                law_line(ctx, &what, result);
            }
        }
    }
    if let Some(k) = compare {
        let cmp = compare_twists(b, monad.winding(), k, &objs)?;
        for (y, transported) in &cmp.transported {
            let verdict = if *transported { "isomorphic on probes" } else { "no transporting isomorphism" };
            ctx.report.field(&format!("T_{} vs T_{} at {y}", cmp.windings.0, cmp.windings.1), verdict);
        }
        ctx.report.field("strictly equal", if cmp.strictly_equal { "yes" } else { "no" });
        ctx.report.field("twists differ", if cmp.differ() { "yes" } else { "no" });
    }
    Ok(())
}

fn law_line(ctx: &mut Ctx<'_>, what: &str, result: stringnet::error::Result<()>) {
    match result {
        Ok(()) => ctx.report.field(what, "ok"),
        Err(e) => {
            ctx.report.field(what, format!("FAILED: {e}"));
            ctx.report.fail(Status::Breach);
        }
    }
}

fn center<F: Field>(ctx: &mut Ctx<'_>, simples: bool, homs: bool, karoubi_flag: bool) -> Result<()> {
    let b = ctx.require_backend::<F>(None)?;
    let b = b.as_ref();
    let monad = CentralMonad::new(b, ctx.winding(None))?;
    ctx.report.field("winding", monad.winding());
    ctx.report.field("T(1) dimension", monad.base_dim());
    let mut rng = ctx.rng();
    if simples {
        let algebra = monad.center_algebra()?;
        ctx.report.field("center algebra dimension", algebra.dim());
        ctx.report.field("simple objects", algebra.count_simples());
        if F::elements().is_some() {
            let modules = algebra.simple_modules(&monad, &mut rng)?;
            let dims: Vec<String> = modules.iter().map(|m| m.dim().to_string()).collect();
            ctx.report.field("simple dimensions", dims.join(" "));
        } else {
            ctx.report.field("simple dimensions", "not split over Q, rerun with a prime field");
        }
    }
    if homs {
        let probes = monad.probes().to_vec();
        for c in &probes {
            for d in &probes {
                let n = monad.kleisli_basis(c, d).len();
                ctx.report.field(&format!("dim Hom({}, T {})", b.word_label(c), b.word_label(d)), n);
            }
        }
    }
    if karoubi_flag {
        karoubi_lines(ctx, &monad, b, &mut rng)?;
    }
    Ok(())
}

fn karoubi_lines<F: Field>(
    ctx: &mut Ctx<'_>,
    monad: &CentralMonad<'_, F>,
    b: &dyn TensorCategory<F>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let test_set = monad.karoubi_test_set(rng)?;
    let report = monad.karoubi_compare(&test_set, &objects(b));
    ctx.report.field("free modules tested", report.free.join(", "));
    for e in &report.entries {
        match &e.retract_of {
            Some(t) => ctx.report.line(format!("retract {} of {t}", e.label)),
            None => ctx.report.line(format!("not-a-retract {}", e.label)),
        }
    }
    ctx.report.field("all retracts", if report.all_retracts() { "yes" } else { "no" });
    Ok(())
}

fn karoubi<F: Field>(ctx: &mut Ctx<'_>) -> Result<()> {
    let b = ctx.require_backend::<F>(None)?;
    let b = b.as_ref();
    let monad = CentralMonad::new(b, ctx.winding(None))?;
    ctx.report.field("winding", monad.winding());
    let mut rng = ctx.rng();
    karoubi_lines(ctx, &monad, b, &mut rng)
}
