use std::fmt::Write;
use std::sync::Arc;

use quivkit::extension::{extension_verify, one_arrow_extension, ExtensionReport, ExtensionRequest};
use quivkit::homology::{global_dimension, ideal_module, ideal_square_zero, Side};
use quivkit::qv::{parse_element, parse_spec};
use quivkit::removal::{
    arrow_irredundant_version, arrow_reduced_version, gorenstein_exclusion, irreducibility_report, loop_exclusions,
    redundant_arrows, removable_classify, GorensteinWitness, IrreducibilityReport, PdSummary, Reduction,
    ReductionTrace, RemovabilityReport,
};
use quivkit::resolution::minimal_resolution;
use quivkit::{Algebra, AlgebraSpec, ArrowSet, Caps, Error, PdVerdict};
use serde::Serialize;
use serde_json::Value;

use crate::{Cli, Command, SideArg};

pub enum Failure {
    /// Unreadable or malformed input: exit code 2.
    Input(String),
    /// A computed result failed its own consistency check: exit code 1.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub struct Outcome {
    pub payload: Value,
    pub text: String,
    pub certified: bool,
    pub violation: Option<String>,
}

impl Outcome {
    fn new(payload: impl Serialize, text: String, certified: bool) -> Self {
        Outcome {
            payload: serde_json::to_value(payload).expect("serializable payload"),
            text,
            certified,
            violation: None,
        }
    }
}

fn load(text: &str, caps: &Caps) -> Result<Arc<Algebra>, Failure> {
    let spec = parse_spec(text)?;
    Ok(Arc::new(Algebra::build(spec, caps.degree)?))
}

fn arrow_list(algebra: &Algebra, list: &str) -> Result<ArrowSet, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(Failure::Input("empty arrow list".into()));
    }
    Ok(algebra.quiver().arrow_set(&names)?)
}

pub fn dispatch(cli: &Cli, text: &str, caps: &Caps) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { .. } => check(text, caps),
        Command::Gb { .. } => gb(&*load(text, caps)?),
        Command::Info { .. } => {
            let a = load(text, caps)?;
            let info = Info::of(&a);
            let t = info.text();
            Ok(Outcome::new(info, t, true))
        }
        Command::Removable { arrows, .. } => {
            let a = load(text, caps)?;
            let set = arrow_list(&a, arrows)?;
            removable(&a, &set, caps)
        }
        Command::Redundant { .. } => redundant(&*load(text, caps)?),
        Command::Arv { .. } => arv(&load(text, caps)?, cli.subset_cap, caps),
        Command::Aiv { .. } => aiv(&load(text, caps)?, caps),
        Command::Extend {
            from, to, gens, arrow, ..
        } => extend(&load(text, caps)?, from, to, gens, arrow, cli, caps),
        Command::Irreducible { .. } => {
            let a = load(text, caps)?;
            let r = irreducibility_report(&a, caps);
            let t = irreducibility_text(&r);
            let certified = !r.any_undecided();
            Ok(Outcome::new(r, t, certified))
        }
        Command::Pd { ideal, side, .. } => {
            let a = load(text, caps)?;
            let set = arrow_list(&a, ideal)?;
            pd(&a, &set, *side, caps)
        }
        Command::Report { .. } => report(&load(text, caps)?, cli.subset_cap, caps),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckPayload {
    valid: bool,
    vertices: usize,
    arrows: usize,
    dimension: usize,
    groebner_basis_size: usize,
}

fn check(text: &str, caps: &Caps) -> Result<Outcome, Failure> {
    let spec = parse_spec(text)?;
    spec.validate()?;
    let a = Algebra::build(spec, caps.degree)?;
    let p = CheckPayload {
        valid: true,
        vertices: a.num_vertices(),
        arrows: a.num_arrows(),
        dimension: a.dim(),
        groebner_basis_size: a.gb.elements.len(),
    };
    let t = format!(
        "ok: {} vertices, {} arrows, dimension {}\n",
        p.vertices, p.arrows, p.dimension
    );
    Ok(Outcome::new(p, t, true))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GbPayload {
    relations: Vec<String>,
    certified_degree: usize,
    dimension: usize,
}

fn gb(a: &Algebra) -> Result<Outcome, Failure> {
    let spec = AlgebraSpec {
        field: a.field(),
        quiver: a.quiver().clone(),
        relations: a.gb.elements.clone(),
    };
    let p = GbPayload {
        relations: a.gb.element_strings(),
        certified_degree: a.gb.certified_degree,
        dimension: a.dim(),
    };
    Ok(Outcome::new(p, spec.to_qv(), true))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ArrowInfo {
    name: String,
    source: String,
    target: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Info {
    field: String,
    vertices: Vec<String>,
    arrows: Vec<ArrowInfo>,
    dimension: usize,
    loewy_length: usize,
    /// `corner[i][j] = dim e_i Λ e_j`.
    corner_dimensions: Vec<Vec<usize>>,
    monomial: bool,
    strongly_connected: bool,
    groebner_basis_size: usize,
    digest: String,
}

impl Info {
    fn of(a: &Algebra) -> Self {
        let q = a.quiver();
        let nv = a.num_vertices();
        Info {
            field: a.field().to_string(),
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|x| ArrowInfo {
                    name: x.name.clone(),
                    source: q.vertices[x.source].clone(),
                    target: q.vertices[x.target].clone(),
                })
                .collect(),
            dimension: a.dim(),
            loewy_length: a.loewy_length(),
            corner_dimensions: (0..nv)
                .map(|i| (0..nv).map(|j| a.corner_dimension(i, j)).collect())
                .collect(),
            monomial: a.is_monomial(),
            strongly_connected: a.strongly_connected(),
            groebner_basis_size: a.gb.elements.len(),
            digest: a.digest(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "field: {}", self.field).unwrap();
        writeln!(s, "vertices: {}", self.vertices.join(" ")).unwrap();
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, a.source, a.target))
            .collect();
        writeln!(s, "arrows: {}", arrows.join(", ")).unwrap();
        writeln!(s, "dimension: {}", self.dimension).unwrap();
        writeln!(s, "Loewy length: {}", self.loewy_length).unwrap();
        writeln!(s, "monomial: {}", yes_no(self.monomial)).unwrap();
        writeln!(s, "strongly connected: {}", yes_no(self.strongly_connected)).unwrap();
        writeln!(s, "Gröbner basis size: {}", self.groebner_basis_size).unwrap();
        writeln!(s, "corner dimensions (row i, column j: dim e_i A e_j):").unwrap();
        let w = self.vertices.iter().map(String::len).max().unwrap_or(1).max(3);
        write!(s, "  {:w$}", "").unwrap();
        for v in &self.vertices {
            write!(s, " {v:>w$}").unwrap();
        }
        s.push('\n');
        for (v, row) in self.vertices.iter().zip(&self.corner_dimensions) {
            write!(s, "  {v:>w$}").unwrap();
            for d in row {
                write!(s, " {d:>w$}").unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "digest: {}", self.digest).unwrap();
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn betti_string(a: &Algebra, betti: &[Vec<usize>]) -> String {
    let terms: Vec<String> = betti
        .iter()
        .map(|row| {
            let parts: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(v, &m)| format!("{m}·e{}", a.quiver().vertices[v]))
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        })
        .collect();
    format!("({})", terms.join("; "))
}

fn pd_line(a: &Algebra, s: &Option<PdSummary>) -> String {
    match s {
        Some(s) => format!("{} {}", s.verdict.describe(), betti_string(a, &s.betti)),
        None => "not computed".into(),
    }
}

fn removability_text(a: &Algebra, r: &RemovabilityReport) -> String {
    let mut s = String::new();
    writeln!(s, "arrows: {}", r.arrows.join(", ")).unwrap();
    writeln!(s, "pre-removable: {}", yes_no(r.pre_removable)).unwrap();
    if let Some(w) = &r.witness {
        writeln!(s, "witness: {w}").unwrap();
    }
    writeln!(s, "ideal dimension: {}", r.dimension).unwrap();
    if let Some(z) = r.square_zero {
        writeln!(s, "square zero: {}", yes_no(z)).unwrap();
    }
    if r.pre_removable {
        writeln!(s, "pd right: {}", pd_line(a, &r.pd_right)).unwrap();
        writeln!(s, "pd left: {}", pd_line(a, &r.pd_left)).unwrap();
    }
    writeln!(s, "verdict: {:?}", r.verdict).unwrap();
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RemovablePayload {
    vertices: Vec<String>,
    #[serde(flatten)]
    report: RemovabilityReport,
}

fn removable(a: &Arc<Algebra>, set: &ArrowSet, caps: &Caps) -> Result<Outcome, Failure> {
    let r = removable_classify(a, set, caps);
    let t = removability_text(a, &r);
    let certified = !matches!(
        r.verdict,
        quivkit::removal::Verdict::Undecided | quivkit::removal::Verdict::RemovableLeftUndecided
    );
    let p = RemovablePayload {
        vertices: a.quiver().vertices.clone(),
        report: r,
    };
    Ok(Outcome::new(p, t, certified))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RedundantPayload {
    redundant: Vec<String>,
}

fn redundant(a: &Algebra) -> Result<Outcome, Failure> {
    let names = a.quiver().arrow_names(&redundant_arrows(a));
    let t = if names.is_empty() {
        "no redundant arrows\n".to_string()
    } else {
        format!("redundant: {}\n", names.join(", "))
    };
    Ok(Outcome::new(RedundantPayload { redundant: names }, t, true))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Component {
    vertices: Vec<String>,
    arrows: Vec<String>,
    dimension: usize,
    loops: Vec<String>,
    square_zero_loops: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AlgebraSummary {
    vertices: Vec<String>,
    arrows: Vec<String>,
    relations: Vec<String>,
    dimension: usize,
    components: Vec<Component>,
    digest: String,
}

impl AlgebraSummary {
    fn of(a: &Algebra) -> Self {
        let q = a.quiver();
        let components = q
            .components()
            .into_iter()
            .map(|vs| {
                let arrows: Vec<usize> = (0..q.num_arrows())
                    .filter(|&x| vs.contains(&q.arrows[x].source))
                    .collect();
                let loops: Vec<usize> = arrows.iter().copied().filter(|&x| q.is_loop(x)).collect();
                let square_zero_loops = loops
                    .iter()
                    .copied()
                    .filter(|&x| {
                        q.path(&[x, x])
                            .map(|p| a.gb.normal_form_path(&p).is_zero())
                            .unwrap_or(false)
                    })
                    .map(|x| q.arrows[x].name.clone())
                    .collect();
                Component {
                    dimension: vs.iter().map(|&v| a.dim_right_projective(v)).sum(),
                    vertices: vs.iter().map(|&v| q.vertices[v].clone()).collect(),
                    arrows: arrows.iter().map(|&x| q.arrows[x].name.clone()).collect(),
                    loops: loops.iter().map(|&x| q.arrows[x].name.clone()).collect(),
                    square_zero_loops,
                }
            })
            .collect();
        AlgebraSummary {
            vertices: q.vertices.clone(),
            arrows: q.arrows.iter().map(|x| x.name.clone()).collect(),
            relations: a.gb.element_strings(),
            dimension: a.dim(),
            components,
            digest: a.digest(),
        }
    }

    fn text(&self, label: &str) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{label}: dimension {}, {} component(s)",
            self.dimension,
            self.components.len()
        )
        .unwrap();
        for c in &self.components {
            write!(s, "  vertices {{{}}} dimension {}", c.vertices.join(", "), c.dimension).unwrap();
            if !c.arrows.is_empty() {
                write!(s, ", arrows {{{}}}", c.arrows.join(", ")).unwrap();
            }
            if !c.square_zero_loops.is_empty() {
                write!(s, ", square-zero loops {{{}}}", c.square_zero_loops.join(", ")).unwrap();
            }
            s.push('\n');
        }
        if !self.relations.is_empty() {
            writeln!(s, "  relations: {}", self.relations.join("; ")).unwrap();
        }
        s
    }
}

fn trace_text(t: &ReductionTrace) -> String {
    let mut s = String::new();
    for (i, step) in t.steps.iter().enumerate() {
        writeln!(
            s,
            "step {}: remove {{{}}} ({:?})",
            i + 1,
            step.removed.join(", "),
            step.verdict
        )
        .unwrap();
    }
    for u in &t.undecided {
        writeln!(s, "undecided: {{{}}}", u.join(", ")).unwrap();
    }
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ArvPayload {
    eventually_removable: Vec<String>,
    trace: ReductionTrace,
    arv: AlgebraSummary,
}

fn arv_payload(a: &Arc<Algebra>, subset_cap: Option<usize>, caps: &Caps) -> ArvPayload {
    let Reduction {
        algebra,
        removed,
        trace,
    } = arrow_reduced_version(a, subset_cap, caps);
    ArvPayload {
        eventually_removable: removed,
        trace,
        arv: AlgebraSummary::of(&algebra),
    }
}

fn arv_text(p: &ArvPayload) -> String {
    let mut s = format!("eventually removable: {{{}}}\n", p.eventually_removable.join(", "));
    s.push_str(&trace_text(&p.trace));
    s.push_str(&p.arv.text("arrow reduced version"));
    s
}

fn arv(a: &Arc<Algebra>, subset_cap: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    let p = arv_payload(a, subset_cap, caps);
    let t = arv_text(&p);
    let certified = p.trace.certified;
    Ok(Outcome::new(p, t, certified))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GlobalDimensions {
    original: PdVerdict,
    reduced: PdVerdict,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AivPayload {
    redundant_removed: Vec<String>,
    trace: ReductionTrace,
    aiv: AlgebraSummary,
    global_dimension: GlobalDimensions,
}

fn aiv_payload(a: &Arc<Algebra>, caps: &Caps) -> AivPayload {
    let Reduction {
        algebra,
        removed,
        trace,
    } = arrow_irredundant_version(a);
    let (original, reduced) = rayon::join(|| global_dimension(a, caps), || global_dimension(&algebra, caps));
    AivPayload {
        redundant_removed: removed,
        trace,
        aiv: AlgebraSummary::of(&algebra),
        global_dimension: GlobalDimensions { original, reduced },
    }
}

fn aiv_text(p: &AivPayload) -> String {
    let mut s = format!("redundant arrows removed: {{{}}}\n", p.redundant_removed.join(", "));
    s.push_str(&p.aiv.text("arrow irredundant version"));
    writeln!(
        s,
        "global dimension: {} (original), {} (irredundant version)",
        p.global_dimension.original.describe(),
        p.global_dimension.reduced.describe()
    )
    .unwrap();
    s
}

/// Global dimension is invariant under removing redundant arrows.
fn aiv_violation(p: &AivPayload) -> Option<String> {
    let (o, r) = (&p.global_dimension.original, &p.global_dimension.reduced);
    let clash = (o.is_finite() && r.is_infinite())
        || (o.is_infinite() && r.is_finite())
        || matches!((o.finite_value(), r.finite_value()), (Some(x), Some(y)) if x != y);
    clash.then(|| format!("global dimension changed: {} vs {}", o.describe(), r.describe()))
}

fn aiv(a: &Arc<Algebra>, caps: &Caps) -> Result<Outcome, Failure> {
    let p = aiv_payload(a, caps);
    let t = aiv_text(&p);
    let violation = aiv_violation(&p);
    let certified = !p.global_dimension.original.is_unknown() && !p.global_dimension.reduced.is_unknown();
    let mut out = Outcome::new(p, t, certified);
    out.violation = violation;
    Ok(out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ExtendPayload {
    arrow: String,
    from: String,
    to: String,
    generators: Vec<String>,
    relations: Vec<String>,
    qv: String,
    verification: ExtensionReport,
}

fn extend(
    a: &Arc<Algebra>,
    from: &str,
    to: &str,
    gens: &str,
    arrow: &str,
    cli: &Cli,
    caps: &Caps,
) -> Result<Outcome, Failure> {
    let q = a.quiver();
    let generators = gens
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|g| parse_element(a.field(), q, g, 1, 1))
        .collect::<Result<Vec<_>, _>>()?;
    let req = ExtensionRequest {
        from: q.vertex(from)?,
        to: q.vertex(to)?,
        arrow_name: arrow.to_string(),
        generators,
    };
    let spec = one_arrow_extension(a, &req)?;
    let qv = spec.to_qv();
    let lambda = Arc::new(Algebra::build(spec.clone(), caps.degree)?);
    let verification = extension_verify(a, &req, &lambda, caps)?;
    if let Some(path) = &cli.output {
        std::fs::write(path, &qv).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut s = String::new();
    if cli.output.is_none() {
        s.push_str(&qv);
        s.push('\n');
    }
    for c in &verification.checks {
        write!(
            s,
            "({}) {}: {}",
            c.id,
            c.description,
            if c.passed { "pass" } else { "FAIL" }
        )
        .unwrap();
        if !c.detail.is_empty() {
            write!(s, " [{}]", c.detail).unwrap();
        }
        s.push('\n');
    }
    let certified = verification.strongly_finite_over_base.is_some();
    let violation = (!verification.all_passed()).then(|| "extension failed verification".to_string());
    let p = ExtendPayload {
        arrow: arrow.to_string(),
        from: from.to_string(),
        to: to.to_string(),
        generators: req.generators.iter().map(|g| q.element_string(g)).collect(),
        relations: spec.relations.iter().map(|r| spec.quiver.element_string(r)).collect(),
        qv,
        verification,
    };
    let mut out = Outcome::new(p, s, certified);
    out.violation = violation;
    Ok(out)
}

fn irreducibility_text(r: &IrreducibilityReport) -> String {
    use quivkit::removal::Condition;
    let mut s = String::new();
    for c in &r.conditions {
        let status = match &c.condition {
            Condition::Holds => "holds".to_string(),
            Condition::Fails { witness } => format!("fails ({witness})"),
            Condition::Undecided { reason } => format!("undecided ({reason})"),
        };
        writeln!(s, "({}) {}: {status}", c.id, c.description).unwrap();
    }
    writeln!(s, "irreducible: {}", yes_no(r.all_hold())).unwrap();
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PdPayload {
    side: Side,
    arrows: Vec<String>,
    vertices: Vec<String>,
    square_zero: bool,
    #[serde(flatten)]
    verdict: PdVerdict,
    /// Number of certified syzygy steps.
    steps: usize,
    betti: Vec<Vec<usize>>,
    syzygy_dims: Vec<Vec<usize>>,
}

fn pd(a: &Arc<Algebra>, set: &ArrowSet, side: SideArg, caps: &Caps) -> Result<Outcome, Failure> {
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let m = ideal_module(a, set, side);
    let res = minimal_resolution(&m, caps);
    let violation = if !res.boundaries_compose_to_zero() {
        Some("resolution is not a complex".to_string())
    } else if !res.is_minimal() {
        Some("resolution is not minimal".to_string())
    } else {
        None
    };
    let summary = PdSummary::of(&res);
    let text = format!(
        "{} pd of the ideal of {{{}}}: {}\nbetti: {}\n",
        match side {
            Side::Left => "left",
            Side::Right => "right",
        },
        a.quiver().arrow_names(set).join(", "),
        summary.verdict.describe(),
        betti_string(a, &summary.betti)
    );
    let certified = !summary.verdict.is_unknown();
    let p = PdPayload {
        side,
        arrows: a.quiver().arrow_names(set),
        vertices: a.quiver().vertices.clone(),
        square_zero: ideal_square_zero(a, set),
        steps: res.certified_steps(),
        verdict: summary.verdict,
        betti: summary.betti,
        syzygy_dims: summary.syzygy_dims,
    };
    let mut out = Outcome::new(p, text, certified);
    out.violation = violation;
    Ok(out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportPayload {
    info: Info,
    groebner_basis: Vec<String>,
    loop_exclusions: Vec<String>,
    gorenstein_witnesses: Vec<GorensteinWitness>,
    redundant: Vec<String>,
    single_arrows: Vec<RemovabilityReport>,
    arrow_reduced: ArvPayload,
    arrow_irredundant: AivPayload,
    irreducibility: IrreducibilityReport,
}

fn report(a: &Arc<Algebra>, subset_cap: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    use rayon::prelude::*;
    let q = a.quiver();
    let single_arrows: Vec<RemovabilityReport> = (0..a.num_arrows())
        .into_par_iter()
        .map(|x| removable_classify(a, &[x].into(), caps))
        .collect();
    let p = ReportPayload {
        info: Info::of(a),
        groebner_basis: a.gb.element_strings(),
        loop_exclusions: q.arrow_names(&loop_exclusions(a)),
        gorenstein_witnesses: gorenstein_exclusion(a),
        redundant: q.arrow_names(&redundant_arrows(a)),
        single_arrows,
        arrow_reduced: arv_payload(a, subset_cap, caps),
        arrow_irredundant: aiv_payload(a, caps),
        irreducibility: irreducibility_report(a, caps),
    };
    let mut s = p.info.text();
    writeln!(s, "loop exclusions: {{{}}}", p.loop_exclusions.join(", ")).unwrap();
    for w in &p.gorenstein_witnesses {
        writeln!(s, "Gorenstein witness: loop {} with arrow {}", w.loop_arrow, w.arrow).unwrap();
    }
    writeln!(s, "redundant: {{{}}}", p.redundant.join(", ")).unwrap();
    for r in &p.single_arrows {
        let mut line = format!("{}: {:?}", r.arrows.join(", "), r.verdict);
        if let (Some(x), Some(y)) = (&r.pd_right, &r.pd_left) {
            write!(line, " (right {}, left {})", x.verdict.describe(), y.verdict.describe()).unwrap();
        }
        writeln!(s, "{line}").unwrap();
    }
    s.push_str(&arv_text(&p.arrow_reduced));
    s.push_str(&aiv_text(&p.arrow_irredundant));
    s.push_str(&irreducibility_text(&p.irreducibility));
    let singles_decided = p.single_arrows.iter().all(|r| {
        !matches!(
            r.verdict,
            quivkit::removal::Verdict::Undecided | quivkit::removal::Verdict::RemovableLeftUndecided
        )
    });
    let gd = &p.arrow_irredundant.global_dimension;
    let certified = singles_decided
        && p.arrow_reduced.trace.certified
        && !p.irreducibility.any_undecided()
        && !gd.original.is_unknown()
        && !gd.reduced.is_unknown();
    let violation = aiv_violation(&p.arrow_irredundant);
    let mut out = Outcome::new(p, s, certified);
    out.violation = violation;
    Ok(out)
}
