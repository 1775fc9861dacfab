//! Command-line front end: JSON in, JSON (or text, or SVG) out.
//!
//! Exit status is 0 on success, 2 for bad input or a failed precondition
//! (with a machine-readable error object on stderr) and 1 when an internal
//! consistency check trips.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Result, SprError};
use crate::families::{
    require_robustly_stable, segment_stable, IntervalQuartic, Segment, VERTEX_NAMES,
};
use crate::json::{
    interval_from_value, polynomial_from_value, polynomial_to_value, rational_to_value,
    segment_from_value,
};
use crate::plot::RegionFigure;
use crate::poly::{hurwitz_stable, routh_first_column, Polynomial};
use crate::rational::{self, Rational};
use crate::regions::RegionBundle;
use crate::sprcheck::{lp_probe, vertex_certificate, ProbeOutcome};
use crate::synth::{
    construction_segments, feasible_point_interval, feasible_point_segment, synthesize_interval,
    synthesize_segment, SynthesisOptions, SynthesisResult,
};

#[derive(Debug, Parser)]
#[command(
    name = "sprsynth",
    version,
    about = "Robust SPR synthesis for fourth-order interval families and segments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub options: CliOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Synthesize a numerator for an interval family {"degree":4,"lower":[..],"upper":[..]}
    SynthInterval,
    /// Synthesize a numerator for a segment {"endA":[..],"endB":[..]}
    SynthSegment,
    /// SPR verdicts for {"numerator": p, "denominators": [q, ..]}
    Verify,
    /// Robust stability of an interval family, a segment or {"polynomial": p}
    Stability,
    /// SVG of the feasibility regions of an interval family or segment
    PlotRegions,
    /// Sampled LP search for {"vertices": [..], "numerator_degree": n}
    Probe,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct CliOptions {
    /// Input file, inline JSON, or `-` for stdin (the default)
    #[arg(short, long, global = true)]
    pub input: Option<String>,
    /// Output file; stdout when absent
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value = "0.5")]
    pub epsilon_fraction: String,
    #[arg(long, global = true, default_value = "0.5")]
    pub r_fraction: String,
    #[arg(long, global = true, default_value_t = 512)]
    pub freq_samples: usize,
    /// Boundary samples per ellipse in plots
    #[arg(long, global = true, default_value_t = 256)]
    pub plot_resolution: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    Stdin,
    Inline(String),
    Path(PathBuf),
}

impl InputSource {
    /// `-` or nothing reads stdin; text starting with `{` or `[` is JSON.
    pub fn from_arg(arg: Option<&str>) -> Self {
        match arg.map(str::trim) {
            None | Some("-") => InputSource::Stdin,
            Some(s) if s.starts_with('{') || s.starts_with('[') => {
                InputSource::Inline(s.to_string())
            }
            Some(s) => InputSource::Path(PathBuf::from(s)),
        }
    }

    fn read(&self) -> Result<String> {
        match self {
            InputSource::Stdin => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| SprError::InvalidInput(format!("cannot read stdin: {e}")))?;
                Ok(buf)
            }
            InputSource::Inline(s) => Ok(s.clone()),
            InputSource::Path(p) => std::fs::read_to_string(p)
                .map_err(|e| SprError::InvalidInput(format!("cannot read {}: {e}", p.display()))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    pub synthesis: SynthesisOptions,
    pub freq_samples: usize,
    pub plot_resolution: usize,
    pub format: Format,
}

/// One invocation: what to do, where to read and where to write.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: CommandKind,
    pub input: InputSource,
    pub output: Option<PathBuf>,
    pub options: JobOptions,
}

impl JobSpec {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let o = &cli.options;
        let synthesis = SynthesisOptions {
            epsilon_fraction: rational::parse_rational(&o.epsilon_fraction)?,
            r_fraction: rational::parse_rational(&o.r_fraction)?,
        };
        synthesis.validate()?;
        if o.freq_samples == 0 {
            return Err(SprError::InvalidInput(
                "--freq-samples must be positive".into(),
            ));
        }
        if o.plot_resolution < 4 {
            return Err(SprError::InvalidInput(
                "--plot-resolution must be at least 4".into(),
            ));
        }
        Ok(JobSpec {
            command: cli.command,
            input: InputSource::from_arg(o.input.as_deref()),
            output: o.output.clone(),
            options: JobOptions {
                synthesis,
                freq_samples: o.freq_samples,
                plot_resolution: o.plot_resolution,
                format: o.format,
            },
        })
    }
}

/// Parsed, validated job input.
#[derive(Clone, Debug)]
enum Job {
    SynthInterval(IntervalQuartic),
    SynthSegment(Segment),
    Verify {
        numerator: Polynomial,
        denominators: Vec<Polynomial>,
    },
    StabilityInterval(IntervalQuartic),
    StabilitySegment(Segment),
    StabilityPolynomial(Polynomial),
    PlotInterval(IntervalQuartic),
    PlotSegment(Segment),
    Probe {
        vertices: Vec<Polynomial>,
        numerator_degree: usize,
    },
}

fn poly_list(v: &Value, key: &str) -> Result<Vec<Polynomial>> {
    let items = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| SprError::Parse(format!("missing array '{key}'")))?;
    if items.is_empty() {
        return Err(SprError::InvalidInput(format!("'{key}' is empty")));
    }
    items.iter().map(polynomial_from_value).collect()
}

/// Accepts the family itself or an object wrapping it under `family`.
fn unwrap_family(v: &Value) -> &Value {
    v.get("family").unwrap_or(v)
}

fn parse_job(command: CommandKind, text: &str) -> Result<Job> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| SprError::Parse(format!("malformed JSON: {e}")))?;
    let body = unwrap_family(&v);
    let is_interval = body.get("lower").is_some() || body.get("upper").is_some();
    let is_segment = body.get("endA").is_some() || body.get("endB").is_some();
    Ok(match command {
        CommandKind::SynthInterval => Job::SynthInterval(interval_from_value(body)?),
        CommandKind::SynthSegment => Job::SynthSegment(segment_from_value(body)?),
        CommandKind::Verify => {
            let numerator = v
                .get("numerator")
                .ok_or_else(|| SprError::Parse("missing 'numerator'".into()))
                .and_then(polynomial_from_value)?;
            let denominators = if let Some(d) = v.get("denominator") {
                vec![polynomial_from_value(d)?]
            } else if v.get("denominators").is_some() {
                poly_list(&v, "denominators")?
            } else {
                poly_list(&v, "vertices")?
            };
            Job::Verify {
                numerator,
                denominators,
            }
        }
        CommandKind::Stability if is_interval => Job::StabilityInterval(interval_from_value(body)?),
        CommandKind::Stability if is_segment => Job::StabilitySegment(segment_from_value(body)?),
        CommandKind::Stability => Job::StabilityPolynomial(
            v.get("polynomial")
                .ok_or_else(|| {
                    SprError::Parse("expected an interval family, a segment or 'polynomial'".into())
                })
                .and_then(polynomial_from_value)?,
        ),
        CommandKind::PlotRegions if is_interval => Job::PlotInterval(interval_from_value(body)?),
        CommandKind::PlotRegions if is_segment => Job::PlotSegment(segment_from_value(body)?),
        CommandKind::PlotRegions => {
            return Err(SprError::Parse(
                "plot-regions expects an interval family or a segment".into(),
            ))
        }
        CommandKind::Probe => {
            let vertices = poly_list(&v, "vertices")?;
            let degree = vertices[0].degree().unwrap_or(0);
            let numerator_degree = match v.get("numerator_degree") {
                Some(n) => n.as_u64().ok_or_else(|| {
                    SprError::Parse("'numerator_degree' must be a non-negative integer".into())
                })? as usize,
                None => degree.saturating_sub(1),
            };
            Job::Probe {
                vertices,
                numerator_degree,
            }
        }
    })
}

/// What a run produced, before it is written anywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &SprError) -> i32 {
    match err {
        SprError::InternalContradiction(_) => 1,
        _ => 2,
    }
}

pub fn error_value(err: &SprError) -> Value {
    let mut body = json!({
        "kind": err.kind(),
        "message": err.to_string(),
    });
    match err {
        SprError::NotRobustlyStable { vertex, polynomial } => {
            body["vertex"] = json!(vertex);
            body["polynomial"] = json!(polynomial);
        }
        SprError::NonPositiveBound { index, value } => {
            body["coefficient"] = json!(format!("a{index}"));
            body["value"] = json!(value);
        }
        _ => {}
    }
    json!({ "error": body })
}

enum Artifact {
    Json(Value, String),
    Svg(String),
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn result_text(res: &SynthesisResult) -> String {
    let mut lines = vec![
        format!("numerator: {}", res.numerator),
        format!(
            "point: ({}, {})",
            rational::fraction_string(&res.point.x),
            rational::fraction_string(&res.point.y)
        ),
        format!("construction: {:?}", res.construction),
        format!(
            "epsilon: {} (max {})",
            rational::fraction_string(&res.epsilon),
            rational::fraction_string(&res.epsilon_max)
        ),
        format!(
            "r: {} (max {})",
            rational::fraction_string(&res.r),
            rational::fraction_string(&res.r_max)
        ),
    ];
    for (v, verdict) in res.vertices.iter().zip(&res.verdicts) {
        lines.push(format!("  {v}: {}", verdict.reason));
    }
    lines.join("\n") + "\n"
}

fn synthesis_artifact(res: SynthesisResult) -> Result<Artifact> {
    let value = serde_json::to_value(&res)
        .map_err(|e| SprError::InternalContradiction(format!("serialization failed: {e}")))?;
    Ok(Artifact::Json(value, result_text(&res)))
}

fn execute(job: Job, options: &JobOptions) -> Result<Artifact> {
    match job {
        Job::SynthInterval(k) => synthesis_artifact(synthesize_interval(&k, &options.synthesis)?),
        Job::SynthSegment(seg) => synthesis_artifact(synthesize_segment(&seg, &options.synthesis)?),
        Job::Verify {
            numerator,
            denominators,
        } => {
            let cert = vertex_certificate(&numerator, &denominators)?;
            let mut text = format!("family_spr: {}\n", cert.family_spr);
            for (q, v) in denominators.iter().zip(&cert.verdicts) {
                text.push_str(&format!("  {numerator} / {q}: {}\n", v.reason));
            }
            let value = json!({
                "numerator": polynomial_to_value(&numerator),
                "family_spr": cert.family_spr,
                "verdicts": cert.verdicts,
            });
            Ok(Artifact::Json(value, text))
        }
        Job::StabilityInterval(k) => {
            let vertices = require_robustly_stable(&k)?;
            let listed: Vec<Value> = vertices
                .iter()
                .zip(VERTEX_NAMES)
                .map(|(p, name)| json!({"name": name, "polynomial": polynomial_to_value(p), "hurwitz": true}))
                .collect();
            let text = std::iter::once("robustly stable: true".to_string())
                .chain(
                    vertices
                        .iter()
                        .zip(VERTEX_NAMES)
                        .map(|(p, n)| format!("  {n}: {p}")),
                )
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            Ok(Artifact::Json(
                json!({"kind": "interval", "robustly_stable": true, "vertices": listed}),
                text,
            ))
        }
        Job::StabilitySegment(seg) => {
            for (name, end) in [("endA", seg.end_a()), ("endB", seg.end_b())] {
                if !hurwitz_stable(end)? {
                    return Err(SprError::Precondition(format!(
                        "segment endpoint {name} = {end} is not Hurwitz"
                    )));
                }
            }
            if !segment_stable(&seg)? {
                return Err(SprError::Precondition(format!(
                    "segment from {} to {} loses stability in its interior",
                    seg.end_a(),
                    seg.end_b()
                )));
            }
            Ok(Artifact::Json(
                json!({"kind": "segment", "stable": true}),
                "segment stable: true\n".into(),
            ))
        }
        Job::StabilityPolynomial(p) => {
            let column = routh_first_column(&p)?;
            let Some(column) =
                column.filter(|c| c.iter().all(|x| x > &Rational::from_integer(0.into())))
            else {
                return Err(SprError::Precondition(format!("{p} is not Hurwitz")));
            };
            Ok(Artifact::Json(
                json!({
                    "kind": "polynomial",
                    "hurwitz": true,
                    "routh_first_column": column.iter().map(rational_to_value).collect::<Vec<_>>(),
                }),
                format!("{p} hurwitz: true\n"),
            ))
        }
        Job::PlotInterval(k) => {
            let vertices = require_robustly_stable(&k)?;
            let (point, _) = feasible_point_interval(&vertices)?;
            let [(a13, b3), (a24, b2)] = construction_segments(&vertices)?;
            let figure = RegionFigure {
                regions: vertices
                    .iter()
                    .map(RegionBundle::new)
                    .collect::<Result<_>>()?,
                guides: vec![("A13-B3".into(), a13, b3), ("A24-B2".into(), a24, b2)],
                chosen: Some(point),
                resolution: options.plot_resolution,
            };
            Ok(Artifact::Svg(figure.to_svg()))
        }
        Job::PlotSegment(seg) => {
            let (point, _) = feasible_point_segment(seg.end_a(), seg.end_b())?;
            let figure = RegionFigure {
                regions: vec![
                    RegionBundle::new(seg.end_a())?,
                    RegionBundle::new(seg.end_b())?,
                ],
                guides: vec![],
                chosen: Some(point),
                resolution: options.plot_resolution,
            };
            Ok(Artifact::Svg(figure.to_svg()))
        }
        Job::Probe {
            vertices,
            numerator_degree,
        } => {
            let outcome = lp_probe(&vertices, numerator_degree, options.freq_samples)?;
            let value = match &outcome {
                ProbeOutcome::Feasible { candidate, margin } => json!({
                    "outcome": "feasible", "candidate": polynomial_to_value(candidate), "margin": margin,
                }),
                ProbeOutcome::InconclusiveFeasible { candidate, margin } => json!({
                    "outcome": "inconclusive-feasible", "candidate": polynomial_to_value(candidate), "margin": margin,
                }),
                ProbeOutcome::Infeasible { margin, samples } => json!({
                    "outcome": "infeasible", "margin": margin, "samples": samples,
                }),
            };
            let text = match &outcome {
                ProbeOutcome::Feasible { candidate, .. } => format!("feasible: {candidate}\n"),
                ProbeOutcome::InconclusiveFeasible { candidate, .. } => {
                    format!("inconclusive: LP candidate {candidate} failed exact verification\n")
                }
                ProbeOutcome::Infeasible { samples, .. } => {
                    format!("infeasible at degree {numerator_degree} over {samples} frequencies\n")
                }
            };
            Ok(Artifact::Json(value, text))
        }
    }
}

/// Runs a job. The rendered result is written to `spec.output` when given,
/// otherwise returned as `stdout`.
pub fn run(spec: &JobSpec) -> RunOutcome {
    let produced = spec
        .input
        .read()
        .and_then(|text| parse_job(spec.command, &text))
        .and_then(|job| execute(job, &spec.options));
    let rendered = produced.map(|artifact| match artifact {
        Artifact::Svg(svg) => svg,
        Artifact::Json(v, text) => match spec.options.format {
            Format::Json => pretty(&v),
            Format::Text => text,
        },
    });
    let written = rendered.and_then(|body| match &spec.output {
        Some(path) => std::fs::write(path, &body)
            .map(|_| String::new())
            .map_err(|e| SprError::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => Ok(body),
    });
    match written {
        Ok(stdout) => RunOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(err) => RunOutcome {
            exit_code: exit_code(&err),
            stdout: String::new(),
            stderr: match spec.options.format {
                Format::Json => pretty(&error_value(&err)),
                Format::Text => format!("error: {err}\n"),
            },
        },
    }
}
