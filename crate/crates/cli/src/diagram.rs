//! The diagram file format, shared by strip diagrams and cylinder nets.
//!
//! ```text
//! strip <bottom> <top>            or   cylinder <winding>
//! backend <spec>                  optional, overridden by --backend
//! node <id> inner|boundary <x> <y>
//! edge <id> <source> <target> <color> [<x> <y>]...
//! coupon <node> <dom> -> <codom>  followed by one `row` line per output coordinate
//! row <entries>...
//! coupon <node> id|ev_left|coev_left|ev_right|coev_right <word>
//! seam <radius> leftward|rightward <left node> <right node>
//! boundary <bottom word> -> <top word>
//! ```
//!
//! Colors are generator labels joined by `*`, with `1` for the unit. Edge
//! bends are listed bottom to top. A cylinder net lives in the chart
//! `[0, 1] x [0, 1]` with the seam at `x = 0` and `x = 1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use stringnet::category::{CategoryExt, Morphism, ObjectWord, TensorCategory};
use stringnet::cylinder::{CylinderStringNet, FramedCylinder, SeamCrossing, SeamDirection};
use stringnet::field::{Field, Q};
use stringnet::linalg::Matrix;
use stringnet::progressive::{q, Coloring, NodeKind, ProgressiveGraph};

use crate::backend::Labels;
use crate::error::{CliError, Result};
use crate::text::{Source, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Strip,
    Cylinder(i32),
}

#[derive(Clone, Debug)]
enum CouponKind {
    Matrix { dom: Token, codom: Token, rows: Vec<Vec<Token>> },
    Structural { which: Token, word: Token },
}

#[derive(Clone, Debug)]
struct Coupon {
    node: usize,
    at: Token,
    kind: CouponKind,
}

/// A parsed file whose colors are still labels; [`DiagramFile::coloring`]
/// resolves them once a backend is known.
#[derive(Clone, Debug)]
pub struct DiagramFile {
    source: Source,
    pub shape: Shape,
    pub backend: Option<String>,
    pub graph: ProgressiveGraph,
    colors: Vec<Token>,
    coupons: Vec<Coupon>,
    pub seam: Vec<SeamCrossing>,
    boundary: Option<(Token, Token)>,
}

const STRUCTURAL: [&str; 5] = ["id", "ev_left", "coev_left", "ev_right", "coev_right"];

impl DiagramFile {
    pub fn read(path: &Path) -> Result<Self> {
        DiagramFile::parse(Source::read(path)?)
    }

    pub fn parse(source: Source) -> Result<Self> {
        let src = &source;
        let mut lines = src.lines.iter();
        let head = lines.next().ok_or_else(|| src.error_at_end("empty diagram file"))?;
        let arity = |line: &[Token], n: usize, usage: &str| -> Result<()> {
            if line.len() == n {
                return Ok(());
            }
            let at = line.get(n).unwrap_or(&line[0]);
            Err(src.error(at, format!("expected `{usage}`")))
        };
        let (shape, graph) = match head[0].text.as_str() {
            "strip" => {
                arity(head, 3, "strip <bottom> <top>")?;
                let (a, b): (Q, Q) = (src.number(&head[1], "a rational")?, src.number(&head[2], "a rational")?);
                (Shape::Strip, ProgressiveGraph::new(a, b))
            }
            "cylinder" => {
                arity(head, 2, "cylinder <winding>")?;
                let n: i32 = src.number(&head[1], "an integer winding")?;
                (Shape::Cylinder(n), ProgressiveGraph::new(q(0, 1), q(1, 1)))
            }
            other => return Err(src.error(&head[0], format!("expected `strip` or `cylinder`, found `{other}`"))),
        };
        let mut d = DiagramFile {
            source: source.clone(),
            shape,
            backend: None,
            graph,
            colors: Vec::new(),
            coupons: Vec::new(),
            seam: Vec::new(),
            boundary: None,
        };
        let mut nodes: BTreeMap<String, usize> = BTreeMap::new();
        let mut edges: BTreeMap<String, usize> = BTreeMap::new();
        let node_ref = |nodes: &BTreeMap<String, usize>, t: &Token| {
            nodes.get(&t.text).copied().ok_or_else(|| src.error(t, format!("unknown node `{}`", t.text)))
        };
        let point = |x: &Token, y: &Token| -> Result<(Q, Q)> {
            Ok((src.number(x, "a rational")?, src.number(y, "a rational")?))
        };
        for line in lines {
            let key = &line[0];
            match key.text.as_str() {
                "backend" => {
                    arity(line, 2, "backend <spec>")?;
                    if d.backend.is_some() {
                        return Err(src.error(key, "backend given twice"));
                    }
                    d.backend = Some(line[1].text.clone());
                }
                "node" => {
                    arity(line, 5, "node <id> inner|boundary <x> <y>")?;
                    let kind = match line[2].text.as_str() {
                        "inner" => NodeKind::Inner,
                        "boundary" => NodeKind::Boundary,
                        other => return Err(src.error(&line[2], format!("node kind must be inner or boundary, not `{other}`"))),
                    };
                    if nodes.contains_key(&line[1].text) {
                        return Err(src.error(&line[1], format!("duplicate node id `{}`", line[1].text)));
                    }
                    let v = d.graph.add_node(&line[1].text, kind, point(&line[3], &line[4])?);
                    nodes.insert(line[1].text.clone(), v);
                }
                "edge" => {
                    if line.len() < 5 || line.len() % 2 == 0 {
                        return Err(src.error(line.last().unwrap_or(key), "expected `edge <id> <source> <target> <color> [<x> <y>]...`"));
                    }
                    if edges.contains_key(&line[1].text) {
                        return Err(src.error(&line[1], format!("duplicate edge id `{}`", line[1].text)));
                    }
                    let (s, t) = (node_ref(&nodes, &line[2])?, node_ref(&nodes, &line[3])?);
                    let bends = line[5..].chunks(2).map(|p| point(&p[0], &p[1])).collect::<Result<_>>()?;
                    let e = d.graph.add_edge(&line[1].text, s, t, bends);
                    edges.insert(line[1].text.clone(), e);
                    d.colors.push(line[4].clone());
                }
                "coupon" => {
                    let node = node_ref(&nodes, line.get(1).unwrap_or(key))?;
                    if d.graph.nodes[node].kind != NodeKind::Inner {
                        return Err(src.error(&line[1], "coupons sit on inner nodes"));
                    }
                    if d.coupons.iter().any(|c| c.node == node) {
                        return Err(src.error(&line[1], format!("node `{}` already has a coupon", line[1].text)));
                    }
                    let kind = if line.len() == 5 && line[3].text == "->" {
                        CouponKind::Matrix { dom: line[2].clone(), codom: line[4].clone(), rows: Vec::new() }
                    } else if line.len() == 4 && STRUCTURAL.contains(&line[2].text.as_str()) {
                        CouponKind::Structural { which: line[2].clone(), word: line[3].clone() }
                    } else {
                        return Err(src.error(key, "expected `coupon <node> <dom> -> <codom>` or `coupon <node> <structural map> <word>`"));
                    };
                    d.coupons.push(Coupon { node, at: line[1].clone(), kind });
                }
                "row" => match d.coupons.last_mut() {
                    Some(Coupon { kind: CouponKind::Matrix { rows, .. }, .. }) => rows.push(line[1..].to_vec()),
                    _ => return Err(src.error(key, "`row` must follow a matrix coupon")),
                },
                "seam" => {
                    if d.shape == Shape::Strip {
                        return Err(src.error(key, "seam records belong to cylinder nets"));
                    }
                    arity(line, 5, "seam <radius> leftward|rightward <left node> <right node>")?;
                    let direction = match line[2].text.as_str() {
                        "leftward" => SeamDirection::Leftward,
                        "rightward" => SeamDirection::Rightward,
                        other => return Err(src.error(&line[2], format!("direction must be leftward or rightward, not `{other}`"))),
                    };
                    d.seam.push(SeamCrossing {
                        radius: src.number(&line[1], "a rational")?,
                        direction,
                        left: node_ref(&nodes, &line[3])?,
                        right: node_ref(&nodes, &line[4])?,
                    });
                }
                "boundary" => {
                    arity(line, 4, "boundary <bottom word> -> <top word>")?;
                    if line[2].text != "->" {
                        return Err(src.error(&line[2], "expected `->`"));
                    }
                    d.boundary = Some((line[1].clone(), line[3].clone()));
                }
                other => return Err(src.error(key, format!("unknown record `{other}`"))),
            }
        }
        Ok(d)
    }

    pub fn path(&self) -> &Path {
        &self.source.path
    }

    fn word<F: Field>(&self, labels: &Labels, b: &dyn TensorCategory<F>, t: &Token) -> Result<ObjectWord> {
        labels
            .word(&t.text)
            .ok_or_else(|| self.source.error(t, format!("`{}` is not an object of {}", t.text, b.fingerprint())))
    }

    pub fn coloring<F: Field>(&self, b: &dyn TensorCategory<F>) -> Result<Coloring<F>> {
        let src = &self.source;
        let labels = Labels::new(b);
        let edges = self.colors.iter().map(|t| self.word(&labels, b, t)).collect::<Result<Vec<_>>>()?;
        let mut nodes = vec![None; self.graph.nodes.len()];
        for c in &self.coupons {
            let f = match &c.kind {
                CouponKind::Matrix { dom, codom, rows } => {
                    let (x, y) = (self.word(&labels, b, dom)?, self.word(&labels, b, codom)?);
                    let (r, k) = (b.dim(&y), b.dim(&x));
                    if rows.len() != r {
                        return Err(src.error(&c.at, format!("coupon needs {r} rows, found {}", rows.len())));
                    }
                    let mut m = Matrix::zeros(r, k);
                    for (i, row) in rows.iter().enumerate() {
                        if row.len() != k {
                            let at = row.first().unwrap_or(&c.at);
                            return Err(src.error(at, format!("row needs {k} entries, found {}", row.len())));
                        }
                        for (j, t) in row.iter().enumerate() {
                            m.set(i, j, src.scalar(t)?);
                        }
                    }
                    b.morphism(x, y, m).map_err(|e| src.error(&c.at, e.to_string()))?
                }
                CouponKind::Structural { which, word } => {
                    let w = self.word(&labels, b, word)?;
                    match which.text.as_str() {
                        "id" => b.identity(&w),
                        "ev_left" => b.ev_left(&w),
                        "coev_left" => b.coev_left(&w),
                        "ev_right" => b.ev_right(&w),
                        _ => b.coev_right(&w),
                    }
                }
            };
            nodes[c.node] = Some(f);
        }
        Ok(Coloring::new(edges, nodes))
    }

    /// The declared boundary value, if the file has one.
    pub fn declared_boundary<F: Field>(&self, b: &dyn TensorCategory<F>) -> Result<Option<(ObjectWord, ObjectWord)>> {
        let labels = Labels::new(b);
        self.boundary
            .as_ref()
            .map(|(x, y)| Ok((self.word(&labels, b, x)?, self.word(&labels, b, y)?)))
            .transpose()
    }

    pub fn cylinder<F: Field>(&self, b: &dyn TensorCategory<F>) -> Result<CylinderStringNet<F>> {
        let Shape::Cylinder(n) = self.shape else {
            return Err(CliError::Input(format!("{} is a strip diagram, not a cylinder net", self.path().display())));
        };
        let coloring = self.coloring(b)?;
        Ok(CylinderStringNet::new(FramedCylinder::new(n), self.graph.clone(), coloring, self.seam.clone()))
    }
}

fn render_body<F: Field>(out: &mut String, g: &ProgressiveGraph, c: &Coloring<F>, b: &dyn TensorCategory<F>) {
    for n in &g.nodes {
        let kind = match n.kind {
            NodeKind::Inner => "inner",
            NodeKind::Boundary => "boundary",
        };
        writeln!(out, "node {} {kind} {} {}", n.id, n.pos.0, n.pos.1).unwrap();
    }
    for (e, edge) in g.edges.iter().enumerate() {
        write!(out, "edge {} {} {} {}", edge.id, g.nodes[edge.source].id, g.nodes[edge.target].id, b.word_label(&c.edges[e]))
            .unwrap();
        for p in &edge.bends {
            write!(out, " {} {}", p.0, p.1).unwrap();
        }
        out.push('\n');
    }
    for (v, f) in c.nodes.iter().enumerate() {
        if let Some(f) = f {
            render_coupon(out, &g.nodes[v].id, f, b);
        }
    }
}

fn render_coupon<F: Field>(out: &mut String, id: &str, f: &Morphism<F>, b: &dyn TensorCategory<F>) {
    writeln!(out, "coupon {id} {} -> {}", b.word_label(f.dom()), b.word_label(f.codom())).unwrap();
    let m = f.matrix();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        writeln!(out, "row {}", row.join(" ")).unwrap();
    }
}

pub fn render_strip<F: Field>(g: &ProgressiveGraph, c: &Coloring<F>, b: &dyn TensorCategory<F>, spec: Option<&str>) -> String {
    let mut out = format!("strip {} {}\n", g.bottom, g.top);
    if let Some(s) = spec {
        writeln!(out, "backend {s}").unwrap();
    }
    render_body(&mut out, g, c, b);
    out
}

pub fn render_cylinder<F: Field>(net: &CylinderStringNet<F>, b: &dyn TensorCategory<F>, spec: Option<&str>) -> String {
    let mut out = format!("cylinder {}\n", net.winding());
    if let Some(s) = spec {
        writeln!(out, "backend {s}").unwrap();
    }
    render_body(&mut out, &net.graph, &net.coloring, b);
    for s in &net.seam {
        let dir = match s.direction {
            SeamDirection::Leftward => "leftward",
            SeamDirection::Rightward => "rightward",
        };
        writeln!(out, "seam {} {dir} {} {}", s.radius, net.graph.nodes[s.left].id, net.graph.nodes[s.right].id).unwrap();
    }
    let (x, y) = net.boundary_value();
    writeln!(out, "boundary {} -> {}", b.word_label(&x), b.word_label(&y)).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::load_backend;
    use stringnet::progressive::single_coupon;

    fn parse(text: &str) -> Result<DiagramFile> {
        DiagramFile::parse(Source::from_text(Path::new("d.sn"), text))
    }

    #[test]
    fn render_then_parse_is_the_identity() {
        let b = load_backend::<Q>("h4").unwrap();
        let labels = Labels::new(b.as_ref());
        let (x, y) = (labels.word("R").unwrap(), labels.word("S+").unwrap());
        let f = b.hom_basis(&x, &y).unwrap().remove(0);
        let g = single_coupon();
        let c = Coloring::new(vec![x, y], vec![None, Some(f), None]);
        let text = render_strip(&g, &c, b.as_ref(), Some("h4"));
        let d = parse(&text).unwrap();
        assert_eq!(d.graph, g);
        assert_eq!(d.coloring(b.as_ref()).unwrap(), c);
        assert_eq!(d.backend.as_deref(), Some("h4"));
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("", "d.sn:1:1: empty diagram file"),
            ("strip 0 1\nnode a inner 0 x\n", "d.sn:2:16: expected a rational, found `x`"),
            ("strip 0 1\nnode a inner 0 1/2\nedge e a b R\n", "d.sn:3:10: unknown node `b`"),
            ("strip 0 1\nnode a inner 0 1/2\nnode a inner 1 1/2\n", "d.sn:3:6: duplicate node id `a`"),
            ("cylinder x\n", "d.sn:1:10: expected an integer winding, found `x`"),
            ("strip 0 1\nrow 1 2\n", "d.sn:2:1: `row` must follow a matrix coupon"),
            ("strip 0 1\nseam 1/2 leftward a b\n", "d.sn:2:1: seam records belong to cylinder nets"),
            ("strip 0 1\nwhatever\n", "d.sn:2:1: unknown record `whatever`"),
        ];
        for (text, expected) in cases {
            assert_eq!(parse(text).unwrap_err().to_string(), expected);
        }
    }

    #[test]
    fn coupons_are_typed_against_the_backend() {
        let b = load_backend::<Q>("h4").unwrap();
        let text = "strip 0 1\nnode f inner 0 1/2\ncoupon f S+ -> S-\nrow 1\n";
        let e = parse(text).unwrap().coloring(b.as_ref()).unwrap_err().to_string();
        assert!(e.starts_with("d.sn:3:8: "), "{e}");
        let text = "strip 0 1\nnode f inner 0 1/2\ncoupon f S+ -> S+\nrow 1 2\n";
        assert_eq!(parse(text).unwrap().coloring(b.as_ref()).unwrap_err().to_string(), "d.sn:4:5: row needs 1 entries, found 2");
        let text = "strip 0 1\nnode f inner 0 1/2\ncoupon f Q7 -> S+\n";
        let e = parse(text).unwrap().coloring(b.as_ref()).unwrap_err().to_string();
        assert!(e.starts_with("d.sn:3:10: `Q7` is not an object"), "{e}");
    }
}
