//! The `catfuse` command line. [`run`] does everything except touching the
//! process, so tests can drive it in-process.

pub mod formats;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::asc::Simplex;
use crate::error::{Error, Result};
use crate::hierarchy::{verify_functor_laws, FunctorId, HierarchyFunctor, LawReport};
use crate::pipeline::{build_l_example, l_example_readings, run_pipeline, PipelineOutcome};
use crate::scalar::{parse_rational, Rational};
use crate::sheaf::{validate_sheaf, Sheaf};
use crate::typesys::{elements, Element, MorphismData, TypedObject, Window};
use crate::vectorize::{krel_to_fvect, semiring_to_fvect, vectorize_object, verify_vectorization_laws, RelationVectors};

use formats::{file_kind, read_json, ComplexFile, ObjectFile, SamplesFile, ScenarioFile, SheafFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "catfuse", version, about = "Typed data, vectorization and sheaf consistency for sensor integration")]
pub struct Cli {
    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a complex (closure), sheaf (functoriality) or scenario file.
    Validate { path: PathBuf },
    /// List the elements of an object with their witnesses.
    Elements {
        path: PathBuf,
        #[command(flatten)]
        finite: FiniteArgs,
    },
    /// Print the vector space an object maps to.
    Vectorize {
        path: PathBuf,
        #[command(flatten)]
        finite: FiniteArgs,
    },
    /// Check the functor laws of a hierarchy functor (or FVECT) on samples.
    FunctorCheck {
        /// A functor name such as `F_SO` or `BOOL->SET`, or `FVECT`.
        functor: String,
        samples: PathBuf,
        #[command(flatten)]
        finite: FiniteArgs,
        /// Largest product space F_SP may build.
        #[arg(long)]
        bound: Option<u128>,
    },
    /// Run the integration pipeline of a scenario and check the section.
    Integrate {
        scenario: PathBuf,
        /// Overrides the scenario's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run the camera-and-newspaper example end to end.
    Demo {
        /// Classifier score of the camera image, in [0, 1].
        #[arg(long, default_value_t = 0.9)]
        score: f64,
        /// Violent words in the article.
        #[arg(long, default_value_t = 3)]
        violent: usize,
        /// Calm words in the article.
        #[arg(long, default_value_t = 0)]
        calm: usize,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
    },
    /// Print the catalog of constructs as Markdown.
    Catalog,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FiniteArgs {
    /// Window `lo,hi[,denominator]` for semiring objects without one.
    #[arg(long)]
    pub window: Option<String>,
    /// Comma-separated weights allowed for measure elements, e.g. `0,1/2,1`.
    #[arg(long)]
    pub grid: Option<String>,
}

impl FiniteArgs {
    fn window(&self) -> Result<Option<Window>> {
        let Some(text) = &self.window else {
            return Ok(None);
        };
        let parts = text
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Config(format!("bad window {text:?}")))?;
        match parts[..] {
            [lo, hi] if lo <= hi => Ok(Some(Window::new(lo, hi))),
            [lo, hi, d] if lo <= hi && d > 0 => Ok(Some(Window::new(lo, hi).with_denominator(d as u32))),
            _ => Err(Error::Config(format!("bad window {text:?}; expected lo,hi[,denominator]"))),
        }
    }

    fn grid(&self) -> Result<Option<Vec<Rational>>> {
        self.grid
            .as_deref()
            .map(|text| text.split(',').map(parse_rational).collect())
            .transpose()
    }

    fn apply_window(&self, object: TypedObject) -> Result<TypedObject> {
        let Some(w) = self.window()? else {
            return Ok(object);
        };
        Ok(match object {
            TypedObject::Interval(s) if s.window().is_none() => TypedObject::Interval(s.with_window(w)),
            TypedObject::Scalar(s) if s.window().is_none() => TypedObject::Scalar(s.with_window(w)),
            other => other,
        })
    }
}

/// Outcome of a command: a report and whether it found an inconsistency.
struct Outcome {
    report: Report,
    consistent: bool,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Report {
    Validation(ValidationReport),
    Elements(ElementsReport),
    Vectorization(VectorizationReport),
    FunctorCheck(FunctorReport),
    Integration(IntegrationReport),
    Catalog { markdown: String },
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Validation(r) => r.fmt(f),
            Report::Elements(r) => r.fmt(f),
            Report::Vectorization(r) => r.fmt(f),
            Report::FunctorCheck(r) => r.fmt(f),
            Report::Integration(r) => r.fmt(f),
            Report::Catalog { markdown } => f.write_str(markdown.trim_end()),
        }
    }
}

#[derive(Debug, Serialize)]
struct ValidationReport {
    file: String,
    faces: usize,
    missing_subfaces: Vec<String>,
    chains_checked: usize,
    violations: Vec<String>,
    valid: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.missing_subfaces.is_empty() {
            return write!(f, "{}: not closed; missing subface {}", self.file, self.missing_subfaces.join(", "));
        }
        write!(f, "{}: complex closed with {} faces", self.file, self.faces)?;
        if self.file != "complex" {
            write!(f, "\n{} chains checked", self.chains_checked)?;
        }
        for v in &self.violations {
            write!(f, "\nviolation at chain {v}")?;
        }
        write!(f, "\n{}", if self.valid { "valid" } else { "invalid" })
    }
}

#[derive(Debug, Serialize)]
struct ElementLine {
    label: String,
    witness: String,
}

#[derive(Debug, Serialize)]
struct ElementsReport {
    category: String,
    elements: Vec<ElementLine>,
    count: usize,
}

impl fmt::Display for ElementsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{}\t{}", e.label, e.witness)?;
        }
        write!(f, "{} elements in {}", self.count, self.category)
    }
}

#[derive(Debug, Serialize)]
struct RelationMatrix {
    /// Row labels: the extended relation `R̂`.
    rows: Vec<String>,
    /// Column labels: base elements.
    columns: Vec<String>,
    matrix: Vec<Vec<String>>,
    rank: usize,
}

#[derive(Debug, Serialize)]
struct VectorizationReport {
    category: String,
    dim: usize,
    basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relation: Option<RelationMatrix>,
}

impl fmt::Display for VectorizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} object, dimension {}", self.category, self.dim)?;
        match &self.relation {
            None => write!(f, "\nbasis: {}", self.basis.join(" ")),
            Some(r) => {
                write!(f, ", |R̂| = {}, rank {}", r.rows.len(), r.rank)?;
                let width = r.rows.iter().map(|l| l.chars().count()).max().unwrap_or(0);
                write!(f, "\n{:width$} {}", "", r.columns.join(" "))?;
                for (label, row) in r.rows.iter().zip(&r.matrix) {
                    let pad = width - label.chars().count();
                    write!(f, "\n{label}{:pad$} {}", "", row.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

fn relation_matrix(v: &RelationVectors) -> RelationMatrix {
    RelationMatrix {
        rows: v.rhat.labels(),
        columns: v.rhat.relation().base().elements().to_vec(),
        matrix: (0..v.rhat.len())
            .map(|r| v.vectors.iter().map(|c| c.coords()[r].to_string()).collect())
            .collect(),
        rank: v.subspace.rank(),
    }
}

#[derive(Debug, Serialize)]
struct FailureLine {
    law: String,
    witness: String,
}

#[derive(Debug, Serialize)]
struct FunctorReport {
    functor: String,
    identities_checked: usize,
    compositions_checked: usize,
    failures: Vec<FailureLine>,
    passed: bool,
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} identities, {} compositions checked",
            self.functor, self.identities_checked, self.compositions_checked
        )?;
        for failure in &self.failures {
            write!(f, "\n{} law failed: {}", failure.law, failure.witness)?;
        }
        write!(f, "\n{}", if self.passed { "laws hold" } else { "laws fail" })
    }
}

impl FunctorReport {
    fn new(functor: String, report: LawReport) -> Self {
        FunctorReport {
            functor,
            identities_checked: report.identities_checked,
            compositions_checked: report.compositions_checked,
            passed: report.passed(),
            failures: report
                .failures
                .into_iter()
                .map(|l| FailureLine {
                    law: l.law.into(),
                    witness: l.witness,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct FaceValue {
    face: String,
    vector: Vec<String>,
}

#[derive(Debug, Serialize)]
struct ViolationLine {
    attachment: String,
    distance: f64,
}

#[derive(Debug, Serialize)]
struct IntegrationReport {
    cooked: BTreeMap<String, String>,
    assignment: Vec<FaceValue>,
    tolerance: f64,
    violations: Vec<ViolationLine>,
    max_violation: f64,
    is_section: bool,
}

impl IntegrationReport {
    fn new(outcome: &PipelineOutcome, tolerance: f64) -> Self {
        IntegrationReport {
            cooked: outcome
                .cooked
                .iter()
                .map(|(face, label)| (face.to_string(), label.clone()))
                .collect(),
            assignment: outcome
                .assignment
                .values()
                .iter()
                .map(|(face, v)| FaceValue {
                    face: face.to_string(),
                    vector: v.coords().iter().map(ToString::to_string).collect(),
                })
                .collect(),
            tolerance,
            violations: outcome
                .report
                .violations
                .iter()
                .map(|v| ViolationLine {
                    attachment: v.attachment.to_string(),
                    distance: v.distance,
                })
                .collect(),
            max_violation: outcome.report.max_violation,
            is_section: outcome.report.is_section,
        }
    }
}

impl fmt::Display for IntegrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (face, label) in &self.cooked {
            writeln!(f, "cooked {face} = {label}")?;
        }
        for v in &self.assignment {
            writeln!(f, "a{} = ({})", v.face, v.vector.join(", "))?;
        }
        for v in &self.violations {
            writeln!(f, "violation on {}: distance {}", v.attachment, v.distance)?;
        }
        if self.is_section {
            write!(f, "global section at tolerance {}", self.tolerance)
        } else {
            write!(f, "not a global section (max violation {})", self.max_violation)
        }
    }
}

fn witness(element: &Element) -> String {
    let Some(m) = &element.from_terminal else {
        return format!("1 ↦ {}", element.label);
    };
    let from = m
        .source()
        .base_set()
        .and_then(|s| s.elements().first().cloned())
        .unwrap_or_else(|| "⋆".into());
    match m.data() {
        MorphismData::Function(_) => format!("{from} ↦ {}", element.label),
        MorphismData::Kernel(k) => format!(
            "⋆ ↦ ({})",
            k.entries().row(0).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
        MorphismData::Rv(r) => format!("φ₁(⋆) = {}, φ₂(⋆) = {}", r.omega_map[0], r.state_map[0]),
        MorphismData::Sto(s) => format!(
            "φ₁ = {:?}, φ₂ = {:?}",
            s.omega_maps.iter().map(|m| m[0]).collect::<Vec<_>>(),
            s.state_maps.iter().map(|m| m[0]).collect::<Vec<_>>()
        ),
        MorphismData::Semiring(_) => format!("1 ↦ {}", element.label),
    }
}

fn load_object(path: &Path, finite: &FiniteArgs) -> Result<TypedObject> {
    let file: ObjectFile = read_json(path)?;
    finite.apply_window(file.to_object()?)
}

fn dir_of(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn sheaf_validation(sheaf: &Sheaf, file: &str) -> Result<Outcome> {
    let report = validate_sheaf(sheaf)?;
    let valid = report.is_valid();
    Ok(Outcome {
        report: Report::Validation(ValidationReport {
            file: file.into(),
            faces: sheaf.complex().len(),
            missing_subfaces: Vec::new(),
            chains_checked: report.chains_checked,
            violations: report.violations.iter().map(|v| v.chain.to_string()).collect(),
            valid,
        }),
        consistent: valid,
    })
}

fn cmd_validate(path: &Path) -> Result<Outcome> {
    let kind = file_kind(path)?;
    let loaded = match kind.as_str() {
        "complex" => read_json::<ComplexFile>(path)?.to_complex().map(|c| {
            Outcome {
                report: Report::Validation(ValidationReport {
                    file: kind.clone(),
                    faces: c.len(),
                    missing_subfaces: Vec::new(),
                    chains_checked: 0,
                    violations: Vec::new(),
                    valid: true,
                }),
                consistent: true,
            }
        }),
        "sheaf" => read_json::<SheafFile>(path)?
            .to_sheaf(dir_of(path))
            .and_then(|s| sheaf_validation(&s, "sheaf")),
        "scenario" => read_json::<ScenarioFile>(path)?
            .load(dir_of(path))
            .and_then(|s| sheaf_validation(&s.scenario.sheaf, "scenario")),
        other => return Err(Error::Config(format!("cannot validate a {other:?} file"))),
    };
    match loaded {
        Err(e) => match e.root() {
            Error::Closure { missing } => Ok(Outcome {
                report: Report::Validation(ValidationReport {
                    file: kind,
                    faces: 0,
                    missing_subfaces: missing.iter().map(Simplex::to_string).collect(),
                    chains_checked: 0,
                    violations: Vec::new(),
                    valid: false,
                }),
                consistent: false,
            }),
            _ => Err(e),
        },
        ok => ok,
    }
}

fn cmd_elements(path: &Path, finite: &FiniteArgs) -> Result<Outcome> {
    let object = load_object(path, finite)?;
    let grid = finite.grid()?;
    let listed = elements(&object, grid.as_deref()).map_err(|e| match e {
        Error::WindowRequired(what) => Error::WindowRequired(format!(
            "{what}; use --window lo,hi for semirings or --grid w1,w2,... for measures"
        )),
        other => other,
    })?;
    let lines: Vec<ElementLine> = listed
        .iter()
        .map(|e| ElementLine {
            label: e.label.clone(),
            witness: witness(e),
        })
        .collect();
    Ok(Outcome {
        report: Report::Elements(ElementsReport {
            category: object.category().to_string(),
            count: lines.len(),
            elements: lines,
        }),
        consistent: true,
    })
}

fn cmd_vectorize(path: &Path, finite: &FiniteArgs) -> Result<Outcome> {
    let object = load_object(path, finite)?;
    let space = vectorize_object(&object)?;
    let relation = match &object {
        TypedObject::Rel(r) | TypedObject::NRel(r) => Some(relation_matrix(&krel_to_fvect(r))),
        TypedObject::Poset(p) => Some(relation_matrix(&krel_to_fvect(p.relation()))),
        TypedObject::TotalOrder(o) => Some(relation_matrix(&krel_to_fvect(o.relation()))),
        TypedObject::Interval(s) | TypedObject::Scalar(s) => Some(relation_matrix(&semiring_to_fvect(s)?)),
        _ => None,
    };
    Ok(Outcome {
        report: Report::Vectorization(VectorizationReport {
            category: object.category().to_string(),
            dim: space.dim(),
            basis: space.labels().to_vec(),
            relation,
        }),
        consistent: true,
    })
}

fn cmd_functor_check(functor: &str, samples: &Path, finite: &FiniteArgs, bound: Option<u128>) -> Result<Outcome> {
    let (objects, morphisms) = read_json::<SamplesFile>(samples)?.load()?;
    let objects = objects
        .into_iter()
        .map(|o| finite.apply_window(o))
        .collect::<Result<Vec<_>>>()?;
    let report = if functor.eq_ignore_ascii_case("FVECT") {
        FunctorReport::new("FVECT".into(), verify_vectorization_laws(&objects, &morphisms))
    } else {
        let id: FunctorId = functor.parse()?;
        let mut f = HierarchyFunctor::new(id);
        if let Some(grid) = finite.grid()? {
            f = f.with_grid(grid);
        }
        if let Some(bound) = bound {
            f = f.with_bound(bound);
        }
        FunctorReport::new(id.name().into(), verify_functor_laws(&f, &objects, &morphisms))
    };
    let consistent = report.passed;
    Ok(Outcome {
        report: Report::FunctorCheck(report),
        consistent,
    })
}

fn cmd_integrate(path: &Path, tolerance: Option<f64>) -> Result<Outcome> {
    let loaded = read_json::<ScenarioFile>(path)?.load(dir_of(path))?;
    let tolerance = tolerance.unwrap_or(loaded.tolerance);
    if !(tolerance >= 0.0) {
        return Err(Error::Config(format!("tolerance {tolerance} is negative")));
    }
    let outcome = run_pipeline(&loaded.scenario, &loaded.readings, tolerance)?;
    Ok(Outcome {
        consistent: outcome.report.is_section,
        report: Report::Integration(IntegrationReport::new(&outcome, tolerance)),
    })
}

fn cmd_demo(score: f64, violent: usize, calm: usize, tolerance: f64) -> Result<Outcome> {
    let outcome = run_pipeline(&build_l_example(), &l_example_readings(score, violent, calm), tolerance)?;
    Ok(Outcome {
        consistent: outcome.report.is_section,
        report: Report::Integration(IntegrationReport::new(&outcome, tolerance)),
    })
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Validate { path } => cmd_validate(path),
        Command::Elements { path, finite } => cmd_elements(path, finite),
        Command::Vectorize { path, finite } => cmd_vectorize(path, finite),
        Command::FunctorCheck {
            functor,
            samples,
            finite,
            bound,
        } => cmd_functor_check(functor, samples, finite, *bound),
        Command::Integrate { scenario, tolerance } => cmd_integrate(scenario, *tolerance),
        Command::Demo {
            score,
            violent,
            calm,
            tolerance,
        } => cmd_demo(*score, *violent, *calm, *tolerance),
        Command::Catalog => Ok(Outcome {
            report: Report::Catalog {
                markdown: crate::catalog::render_markdown(),
            },
            consistent: true,
        }),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code: 0 ok, 1 inconsistent, 2 invalid input.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let written = if cli.json {
                serde_json::to_string_pretty(&outcome.report)
                    .map_err(std::io::Error::other)
                    .and_then(|text| writeln!(out, "{text}"))
            } else {
                writeln!(out, "{}", outcome.report)
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_INVALID;
            }
            if outcome.consistent {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
