use anyhow::{bail, Result};
use nalgebra::{DMatrix, DVector};
use nuradius_core::fixtures;
use nuradius_core::io::{OperatorFile, SpaceFile};
use nuradius_core::lp::pairing_value;
use nuradius_core::{
    classify, is_operator_orthogonal, is_w_orthogonal, lambda_profile_min,
    lp_numerical_radius_estimate, lp_support_functional, nu_smooth_by_definition, recover_entries,
    AttainmentReport, Error, LpSpace, NormKind, Operator, OrthogonalityCertificate, PairWitness,
    PolyhedralSpace, ProfileMin, SmoothnessReport, ValidationReport, VertexWitness,
};
use serde::Serialize;

use crate::args::{Cli, Command, Kind, LpMode, OperatorArgs};
use crate::load;
use crate::table::{num, pairs, Table};

pub struct Outcome {
    pub code: u8,
    pub json: String,
    pub text: String,
}

fn outcome<T: Serialize>(report: &T, text: String) -> Outcome {
    let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
    json.push('\n');
    Outcome { code: 0, json, text }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let tolerance = load::tolerance(cli.tolerance)?;
    match cli.command {
        Command::Validate(arg) => validate(&load::space(&arg.space, tolerance)?),
        Command::Norm(args) => with_operators(&args, tolerance, 1, "norm", |ops| {
            let r = ops[0].operator_norm();
            let text = vertex_report_text(&r);
            Ok(outcome(&r, text))
        }),
        Command::Wnorm(args) => with_operators(&args, tolerance, 1, "wnorm", |ops| {
            let r = ops[0].numerical_radius();
            let text = pair_report_text(&r);
            Ok(outcome(&r, text))
        }),
        Command::Attain(args) => with_operators(&args, tolerance, 1, "attain", |ops| attain(&ops[0])),
        Command::Ortho { operators, kind } => {
            with_operators(&operators, tolerance, 2, "ortho", |ops| ortho(&ops[0], &ops[1], kind))
        }
        Command::Smooth { operators, samples, seed } => {
            with_operators(&operators, tolerance, 1, "smooth", |ops| smooth(&ops[0], samples, seed))
        }
        Command::Lp { p, dim, mode, matrix, vector, samples, seed } => {
            let space = LpSpace::new(dim, p)?;
            let matrix = matrix.map(|path| load::matrix_file(&path, dim)).transpose()?;
            lp(&space, mode, matrix, vector, samples, seed)
        }
        Command::Fixtures => fixtures_listing(),
    }
}

fn with_operators<F>(args: &OperatorArgs, tolerance: Option<f64>, arity: usize, name: &str, f: F) -> Result<Outcome>
where
    F: FnOnce(&[Operator<'_>]) -> Result<Outcome>,
{
    if args.ops.len() != arity {
        bail!("{name} takes exactly {arity} --op, got {}", args.ops.len());
    }
    let space = load::space(&args.space.space, tolerance)?;
    let matrices = args
        .ops
        .iter()
        .map(|src| load::operator(src, space.dim()))
        .collect::<Result<Vec<_>>>()?;
    let ops = matrices
        .into_iter()
        .map(|m| Operator::new(&space, m))
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    f(&ops)
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    #[serde(flatten)]
    report: &'a ValidationReport,
    summary: String,
}

fn validate(space: &PolyhedralSpace) -> Result<Outcome> {
    let report = space.validate();
    let summary = report.to_string();
    let mut text = format!("{}\n{summary}\n", if report.valid { "valid" } else { "invalid" });
    if !report.violations.is_empty() {
        let mut t = Table::new(&["kind", "vertex", "facet", "detail"]);
        for v in &report.violations {
            let idx = |i: Option<usize>| i.map_or("-".to_string(), |i| i.to_string());
            t.row(&[format!("{:?}", v.kind), idx(v.vertex), idx(v.facet), v.detail.clone()]);
        }
        text.push_str(&t.render());
    }
    let mut out = outcome(&ValidateOutput { report: &report, summary }, text);
    if !report.valid {
        out.code = 2;
    }
    Ok(out)
}

fn runner_up(r: Option<f64>) -> String {
    r.map_or("-".into(), num)
}

fn vertex_report_text(r: &AttainmentReport<VertexWitness>) -> String {
    let mut text = pairs(&[
        ("value", num(r.value)),
        ("classes", r.class_count().to_string()),
        ("runner_up", runner_up(r.runner_up)),
    ]);
    let mut t = Table::new(&["vertex", "value"]);
    for w in &r.witnesses {
        t.row(&[w.vertex.to_string(), num(w.value)]);
    }
    text.push('\n');
    text.push_str(&t.render());
    text
}

fn pair_report_text(r: &AttainmentReport<PairWitness>) -> String {
    let mut text = pairs(&[
        ("value", num(r.value)),
        ("classes", r.class_count().to_string()),
        ("runner_up", runner_up(r.runner_up)),
    ]);
    let mut t = Table::new(&["vertex", "facet", "signed_value"]);
    for w in &r.witnesses {
        t.row(&[w.vertex.to_string(), w.facet.to_string(), num(w.signed_value)]);
    }
    text.push('\n');
    text.push_str(&t.render());
    text
}

#[derive(Serialize)]
struct AttainOutput {
    operator_norm: AttainmentReport<VertexWitness>,
    numerical_radius: AttainmentReport<PairWitness>,
}

fn attain(t: &Operator<'_>) -> Result<Outcome> {
    let report = AttainOutput {
        operator_norm: t.operator_norm(),
        numerical_radius: t.numerical_radius(),
    };
    let text = format!(
        "operator norm\n{}\nnumerical radius\n{}",
        vertex_report_text(&report.operator_norm),
        pair_report_text(&report.numerical_radius)
    );
    Ok(outcome(&report, text))
}

#[derive(Serialize)]
struct OrthoOutput {
    orthogonal: bool,
    norm_kind: NormKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<OrthogonalityCertificate>,
    min_profile: Option<ProfileMin>,
}

fn ortho(t: &Operator<'_>, a: &Operator<'_>, kind: Kind) -> Result<Outcome> {
    let norm_kind = match kind {
        Kind::W => NormKind::W,
        Kind::Operator => NormKind::Operator,
    };
    let (orthogonal, certificate) = match kind {
        Kind::W => {
            let r = is_w_orthogonal(t, a)?;
            (r.orthogonal, r.certificate)
        }
        Kind::Operator => (is_operator_orthogonal(t, a)?, None),
    };
    let min_profile = match lambda_profile_min(t, a, norm_kind) {
        Ok(m) => Some(m),
        Err(Error::ZeroDirection) => None,
        Err(e) => return Err(e.into()),
    };
    let mut items = vec![
        ("orthogonal", orthogonal.to_string()),
        ("norm_kind", norm_kind.to_string()),
    ];
    if let Some(m) = &min_profile {
        items.push(("min_lambda", num(m.lambda)));
        items.push(("min_value", num(m.value)));
    }
    let mut text = pairs(&items);
    if let Some(c) = &certificate {
        let mut table = Table::new(&["vertex", "facet", "weight", "d"]);
        for k in 0..c.pairs.len() {
            table.row(&[
                c.pairs[k].vertex.to_string(),
                c.pairs[k].facet.to_string(),
                num(c.weights[k]),
                num(c.d_values[k]),
            ]);
        }
        text.push_str("\ncertificate\n");
        text.push_str(&table.render());
    }
    let report = OrthoOutput {
        orthogonal,
        norm_kind,
        certificate,
        min_profile,
    };
    Ok(outcome(&report, text))
}

#[derive(Serialize)]
struct SmoothOutput {
    #[serde(flatten)]
    report: SmoothnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    definition_probe: Option<bool>,
}

fn smooth(t: &Operator<'_>, samples: Option<usize>, seed: u64) -> Result<Outcome> {
    let report = classify(t)?;
    let definition_probe = samples.map(|n| nu_smooth_by_definition(t, n, seed)).transpose()?;
    let mut table = Table::new(&["notion", "smooth", "value", "classes", "runner_up"]);
    table.row(&[
        "operator".to_string(),
        report.operator_smooth.to_string(),
        num(report.op_value),
        report.operator_evidence.attaining_classes.len().to_string(),
        runner_up(report.operator_evidence.runner_up),
    ]);
    table.row(&[
        "numerical radius".to_string(),
        report.nu_smooth.to_string(),
        num(report.w_value),
        report.nu_evidence.witness_classes.len().to_string(),
        runner_up(report.nu_evidence.runner_up),
    ]);
    let mut text = table.render();
    if let Some(p) = definition_probe {
        text.push_str(&format!("\nright-additivity probe: {}\n", if p { "no violation" } else { "violated" }));
    }
    Ok(outcome(&SmoothOutput { report, definition_probe }, text))
}

#[derive(Serialize)]
#[serde(untagged)]
enum LpOutput {
    Support {
        p: f64,
        x: Vec<f64>,
        functional: Vec<f64>,
    },
    Recover {
        p: f64,
        matrix: Vec<Vec<f64>>,
        max_error: f64,
    },
    Estimate {
        p: f64,
        value: f64,
        samples: usize,
        seed: u64,
    },
}

fn lp(
    space: &LpSpace,
    mode: LpMode,
    matrix: Option<DMatrix<f64>>,
    vector: Option<Vec<f64>>,
    samples: usize,
    seed: u64,
) -> Result<Outcome> {
    let p = space.p();
    let need_matrix = || matrix.clone().ok_or_else(|| anyhow::anyhow!("--mode {mode:?} needs --matrix").context("lp"));
    match mode {
        LpMode::Support => {
            let Some(v) = vector else { bail!("--mode support needs --vector") };
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: v.len(),
                }
                .into());
            }
            let x = space.normalize(&DVector::from_vec(v))?;
            let f = lp_support_functional(space, &x)?;
            let mut t = Table::new(&["k", "x", "functional"]);
            for k in 0..x.len() {
                t.row(&[k.to_string(), num(x[k]), num(f[k])]);
            }
            let report = LpOutput::Support {
                p,
                x: x.iter().copied().collect(),
                functional: f.iter().copied().collect(),
            };
            Ok(outcome(&report, t.render()))
        }
        LpMode::Recover => {
            let hidden = need_matrix()?;
            let recovered = recover_entries(space, |x: &DVector<f64>| pairing_value(space, &hidden, x))?;
            let max_error = (&recovered - &hidden).amax();
            let rows = OperatorFile::from_matrix(&recovered).matrix;
            let mut t = Table::new(&(0..space.dim()).map(|c| format!("col {c}")).collect::<Vec<_>>());
            for r in &rows {
                t.row(&r.iter().map(|x| num(*x)).collect::<Vec<_>>());
            }
            let text = format!("{}\nmax_error  {}\n", t.render(), num(max_error));
            Ok(outcome(&LpOutput::Recover { p, matrix: rows, max_error }, text))
        }
        LpMode::Estimate => {
            let m = need_matrix()?;
            let value = lp_numerical_radius_estimate(space, &m, samples, seed)?;
            let text = pairs(&[
                ("value", num(value)),
                ("samples", samples.to_string()),
                ("seed", seed.to_string()),
            ]);
            Ok(outcome(&LpOutput::Estimate { p, value, samples, seed }, text))
        }
    }
}

#[derive(Serialize)]
struct FixtureEntry {
    name: &'static str,
    space: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    operator: Option<Vec<Vec<f64>>>,
    space_data: SpaceFile,
}

fn fixtures_listing() -> Result<Outcome> {
    let entries: Vec<FixtureEntry> = fixtures::fixtures()
        .into_iter()
        .map(|f| FixtureEntry {
            name: f.name,
            space: f.space_name,
            operator: f.operator.as_ref().map(|m| OperatorFile::from_matrix(m).matrix),
            space_data: SpaceFile::from_space(&f.space),
        })
        .collect();
    let mut t = Table::new(&["name", "space", "dim", "vertices", "facets", "operator"]);
    for e in &entries {
        let op = e.operator.as_ref().map_or("-".to_string(), |rows| {
            rows.iter()
                .map(|r| r.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("; ")
        });
        t.row(&[
            e.name.to_string(),
            e.space.to_string(),
            e.space_data.dim.to_string(),
            e.space_data.vertices.len().to_string(),
            e.space_data.facets.as_ref().map_or(0, Vec::len).to_string(),
            op,
        ]);
    }
    Ok(outcome(&entries, t.render()))
}
