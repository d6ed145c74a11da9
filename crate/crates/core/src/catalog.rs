//! A catalog of every construct the library implements (categories,
//! hierarchy functors, vectorizations, element constructions), each tied to
//! an executable fixture. [`check_catalog`] runs them all.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::cli::formats::{file_kind, read_json, ComplexFile, ObjectFile, ReadingsFile, SamplesFile, ScenarioFile, SheafFile};
use crate::enumerate::{hom_set, sample_morphisms, sample_objects, space};
use crate::error::{Error, Result};
use crate::hierarchy::{verify_functor_laws, Functor, FunctorId, HierarchyFunctor};
use crate::measure::{
    element_kernel, meas_elements, measure_of_element, prob_elements, rv_elements, sto_elements, RandomVariable,
    StochasticProcess,
};
use crate::pipeline::run_pipeline;
use crate::scalar::{int, ratio, Rational};
use crate::sheaf::{bundle_terminality_check, validate_sheaf, Bundle};
use crate::typesys::{elements, Category, MorphismData, TypedMorphism, TypedObject};
use crate::vectorize::{vectorize_object, verify_vectorization_laws};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntryKind {
    Category,
    Inclusion,
    Functor,
    Vectorization,
    Element,
    Structure,
}

impl EntryKind {
    pub fn name(self) -> &'static str {
        match self {
            EntryKind::Category => "category",
            EntryKind::Inclusion => "inclusion functor",
            EntryKind::Functor => "functor",
            EntryKind::Vectorization => "vectorization",
            EntryKind::Element => "element construction",
            EntryKind::Structure => "structure",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Fixture {
    /// A JSON file under the fixtures directory, loaded and exercised
    /// according to its `kind`.
    File(&'static str),
    Check(fn() -> Result<()>),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub construct: &'static str,
    pub kind: EntryKind,
    pub module: &'static str,
    pub operation: &'static str,
    pub fixture: Fixture,
}

/// Every category the hierarchy names. k-REL and N-REL share an entry.
pub const CATEGORIES: [&str; 12] = [
    "SET", "BOOL", "BI-REL", "N-REL", "PORDINAL", "ORDINAL", "INTERVAL", "SCALAR", "PROB", "MEAS", "RV", "STO",
];

/// Every object mapping into FVECT.
pub const VECTORIZATIONS: [&str; 9] = [
    "SET → FVECT",
    "BOOL → FVECT",
    "k-REL → FVECT",
    "PORDINAL → FVECT",
    "ORDINAL → FVECT",
    "PROB, MEAS → FVECT",
    "INTERVAL → FVECT",
    "SCALAR → FVECT",
    "RV, STO → FVECT",
];

/// Categories whose elements need a construction beyond picking a point.
pub const MEASURE_FAMILIES: [&str; 4] = ["MEAS", "PROB", "RV", "STO"];

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn expect(condition: bool, what: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::violation("fixture", what()))
    }
}

fn small_grid() -> Vec<Rational> {
    vec![int(0), int(1)]
}

/// The functor is defined on MEAS kernels that keep the `{0,1}` family
/// of measures inside itself, i.e. whose columns sum to at most 1.
fn preserves_unit_family(m: &TypedMorphism) -> bool {
    match m.data() {
        MorphismData::Kernel(k) => (0..k.target().len()).all(|y| {
            (0..k.source().len())
                .map(|x| k.entry(x, y).clone())
                .sum::<Rational>()
                <= int(1)
        }),
        _ => true,
    }
}

fn functor_fixture(id: FunctorId) -> Result<()> {
    let functor = HierarchyFunctor::new(id);
    let objects = sample_objects(id.source(), 2);
    let grid = if id.source() == Category::Prob { vec![int(0), ratio(1, 2), int(1)] } else { small_grid() };
    let mut morphisms = sample_morphisms(id.source(), &objects, &grid)?;
    if id == FunctorId::MeasToSet {
        morphisms.retain(preserves_unit_family);
    }
    for a in &objects {
        let image = functor.apply_object(a)?;
        expect(image.category() == id.target(), || {
            format!("{id} sent a {} object to {}", a.category(), image.category())
        })?;
    }
    let report = verify_functor_laws(&functor, &objects, &morphisms);
    expect(report.passed() && report.compositions_checked > 0, || report.to_string())
}

fn vectorization_fixture(categories: &[Category]) -> Result<()> {
    for &category in categories {
        let objects = sample_objects(category, 2);
        let morphisms = sample_morphisms(category, &objects, &small_grid())?;
        let report = verify_vectorization_laws(&objects, &morphisms);
        expect(report.passed(), || format!("{category}: {report}"))?;
        for a in &objects {
            vectorize_object(a)?;
        }
    }
    Ok(())
}

fn measure_kernel_elements() -> Result<()> {
    for m in meas_elements(&space(2), &small_grid()) {
        expect(measure_of_element(&element_kernel(&m))? == m, || format!("{m} does not round-trip"))?;
    }
    Ok(())
}

fn measure_grid_elements() -> Result<()> {
    let grid = [int(0), ratio(1, 2), int(1)];
    let found = elements(&TypedObject::Meas(space(2)), Some(&grid))?.len();
    expect(found == 9, || format!("{found} measures with 3 weights on 2 points"))
}

fn probability_kernel_elements() -> Result<()> {
    for p in prob_elements(&space(3), &[int(0), ratio(1, 2), int(1)]) {
        let m = p.into_measure();
        let k = element_kernel(&m);
        expect(k.is_stochastic() && measure_of_element(&k)? == m, || format!("{m} is not a stochastic element"))?;
    }
    Ok(())
}

fn probability_grid_elements() -> Result<()> {
    let found = elements(&TypedObject::Prob(space(3)), Some(&[int(0), ratio(1, 2), int(1)]))?.len();
    // (1,0,0)×3 and (1/2,1/2,0)×3
    expect(found == 6, || format!("{found} probability measures"))
}

fn rv_graph_elements() -> Result<()> {
    for rv in crate::enumerate::all_random_variables(2) {
        expect(rv_elements(&rv).len() == rv.omega().len(), || format!("{rv:?}"))?;
    }
    Ok(())
}

fn rv_terminal_elements() -> Result<()> {
    let terminal = TypedObject::Rv(RandomVariable::terminal());
    for rv in crate::enumerate::all_random_variables(2) {
        let n = rv.omega().len();
        let homs = hom_set(Category::Rv, &terminal, &TypedObject::Rv(rv), &[])?.len();
        expect(homs == n, || format!("{homs} maps from the terminal RV, expected {n}"))?;
    }
    Ok(())
}

fn sto_family_elements() -> Result<()> {
    let index = vec!["t0".to_string(), "t1".to_string()];
    for p in crate::enumerate::all_processes(2, &index) {
        let expected = p.omega().len().pow(index.len() as u32);
        expect(sto_elements(&p).len() == expected, || format!("{p:?}"))?;
    }
    Ok(())
}

fn sto_terminal_elements() -> Result<()> {
    let index = vec!["t0".to_string(), "t1".to_string()];
    let terminal = TypedObject::Sto(StochasticProcess::terminal(index.clone()));
    for p in crate::enumerate::all_processes(2, &index) {
        let expected = p.omega().len().pow(index.len() as u32);
        let homs = hom_set(Category::Sto, &terminal, &TypedObject::Sto(p), &[])?.len();
        expect(homs == expected, || format!("{homs} maps from the terminal process"))?;
    }
    Ok(())
}

fn bundle_fixture() -> Result<()> {
    let bundle = Bundle::new(
        vec!["x".into(), "y".into()],
        vec!["p".into(), "q".into(), "r".into()],
        vec![0, 0, 1],
    )?;
    expect(bundle_terminality_check(&bundle), || "projection is not the unique map".into())
}

fn face_category_fixture() -> Result<()> {
    let complex = read_json::<ComplexFile>(&fixtures_dir().join("l_example/complex.json"))?.to_complex()?;
    let category = crate::asc::face_category(&complex);
    expect(category.attachments().len() == 2 && category.objects().len() == 3, || {
        "the edge complex has 3 faces and 2 attachments".into()
    })
}

macro_rules! entry {
    ($construct:expr, $kind:ident, $module:expr, $op:expr, $fixture:expr) => {
        CatalogEntry {
            construct: $construct,
            kind: EntryKind::$kind,
            module: $module,
            operation: $op,
            fixture: $fixture,
        }
    };
}

pub fn catalog() -> Vec<CatalogEntry> {
    use Fixture::{Check, File};
    vec![
        entry!("SET", Category, "typesys", "SetObject", File("objects/set.json")),
        entry!("BOOL", Category, "typesys", "BoolObject", File("objects/bool.json")),
        entry!("BI-REL", Category, "typesys", "RelObject (arity 2)", File("objects/birel.json")),
        entry!("N-REL", Category, "typesys", "RelObject (k-REL and N-REL)", File("objects/worked_relation.json")),
        entry!("PORDINAL", Category, "typesys", "PosetObject", File("objects/poset.json")),
        entry!("ORDINAL", Category, "typesys", "TotalOrderObject", File("objects/chain.json")),
        entry!("INTERVAL", Category, "typesys", "SemiringObject (intervals)", File("objects/interval.json")),
        entry!("SCALAR", Category, "typesys", "SemiringObject (naturals)", File("objects/scalar.json")),
        entry!("PROB", Category, "measure", "FiniteMeasurableSpace, Kernel", File("objects/prob.json")),
        entry!("MEAS", Category, "measure", "FiniteMeasurableSpace, Kernel", File("objects/meas.json")),
        entry!("RV", Category, "measure", "RandomVariable, RvMorphism", File("objects/rv.json")),
        entry!("STO", Category, "measure", "StochasticProcess, StoMorphism", File("objects/sto.json")),
        entry!("BOOL->SET", Inclusion, "hierarchy", "FunctorId::BoolToSet", File("samples/bool_to_set.json")),
        entry!("PORDINAL->BI-REL", Inclusion, "hierarchy", "FunctorId::PordinalToBiRel", Check(|| functor_fixture(FunctorId::PordinalToBiRel))),
        entry!("ORDINAL->PORDINAL", Inclusion, "hierarchy", "FunctorId::OrdinalToPordinal", Check(|| functor_fixture(FunctorId::OrdinalToPordinal))),
        entry!("k-REL->N-REL", Inclusion, "hierarchy", "FunctorId::KRelToNRel", Check(|| functor_fixture(FunctorId::KRelToNRel))),
        entry!("SCALAR->INTERVAL", Inclusion, "hierarchy", "FunctorId::ScalarToInterval", Check(|| functor_fixture(FunctorId::ScalarToInterval))),
        entry!("F_SO", Functor, "hierarchy", "FunctorId::ScalarToOrdinal", Check(|| functor_fixture(FunctorId::ScalarToOrdinal))),
        entry!("F_IP", Functor, "hierarchy", "FunctorId::IntervalToPordinal", Check(|| functor_fixture(FunctorId::IntervalToPordinal))),
        entry!("F_NS", Functor, "hierarchy", "FunctorId::NRelToSet", Check(|| functor_fixture(FunctorId::NRelToSet))),
        entry!("F_PM", Functor, "hierarchy", "FunctorId::ProbToMeas", Check(|| functor_fixture(FunctorId::ProbToMeas))),
        entry!("F_MS", Functor, "hierarchy", "FunctorId::MeasToSet", Check(|| functor_fixture(FunctorId::MeasToSet))),
        entry!("F_RP", Functor, "hierarchy", "FunctorId::RvToProb", File("samples/rv_to_prob.json")),
        entry!("F_SP", Functor, "hierarchy", "FunctorId::StoToProb", Check(|| functor_fixture(FunctorId::StoToProb))),
        entry!("SET → FVECT", Vectorization, "vectorize", "set_to_fvect, set_map_to_linear", Check(|| vectorization_fixture(&[Category::Set]))),
        entry!("BOOL → FVECT", Vectorization, "vectorize", "set_to_fvect", Check(|| vectorization_fixture(&[Category::Bool]))),
        entry!("k-REL → FVECT", Vectorization, "vectorize", "krel_to_fvect, krel_map_to_linear", File("objects/worked_relation.json")),
        entry!("PORDINAL → FVECT", Vectorization, "vectorize", "pordinal_to_fvect", Check(|| vectorization_fixture(&[Category::Pordinal]))),
        entry!("ORDINAL → FVECT", Vectorization, "vectorize", "pordinal_to_fvect", Check(|| vectorization_fixture(&[Category::Ordinal]))),
        entry!("PROB, MEAS → FVECT", Vectorization, "vectorize", "prob_to_fvect, meas_to_fvect, kernel_to_linear", Check(|| vectorization_fixture(&[Category::Prob, Category::Meas]))),
        entry!("INTERVAL → FVECT", Vectorization, "vectorize", "semiring_to_fvect", Check(|| vectorization_fixture(&[Category::Interval]))),
        entry!("SCALAR → FVECT", Vectorization, "vectorize", "semiring_to_fvect", Check(|| vectorization_fixture(&[Category::Scalar]))),
        entry!("RV, STO → FVECT", Vectorization, "vectorize", "rv_to_fvect, sto_to_fvect", Check(|| vectorization_fixture(&[Category::Rv, Category::Sto]))),
        entry!("MEAS: measure as a kernel from the point", Element, "measure", "element_kernel, measure_of_element", Check(measure_kernel_elements)),
        entry!("MEAS: measures with weights on a grid", Element, "typesys", "elements", Check(measure_grid_elements)),
        entry!("PROB: distribution as a stochastic kernel from the point", Element, "measure", "element_kernel", Check(probability_kernel_elements)),
        entry!("PROB: distributions with weights on a grid", Element, "measure", "prob_elements", Check(probability_grid_elements)),
        entry!("RV: points (ω, X(ω)) of the graph", Element, "measure", "rv_elements", Check(rv_graph_elements)),
        entry!("RV: morphisms from the terminal variable", Element, "typesys", "elements", Check(rv_terminal_elements)),
        entry!("STO: index-wise graph points", Element, "measure", "sto_elements", Check(sto_family_elements)),
        entry!("STO: morphisms from the terminal process", Element, "typesys", "elements", Check(sto_terminal_elements)),
        entry!("face category", Structure, "asc", "face_category", Check(face_category_fixture)),
        entry!("bundle sections", Structure, "sheaf", "bundle_terminality_check", Check(bundle_fixture)),
        entry!("sheaf on a complex", Structure, "sheaf", "Sheaf, validate_sheaf", File("l_example/sheaf.json")),
        entry!("global section", Structure, "sheaf, pipeline", "is_global_section, run_pipeline", File("l_example/scenario.json")),
    ]
}

/// Runs a file fixture according to its `kind`.
fn run_file_fixture(path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    match file_kind(path)?.as_str() {
        "samples" => {
            let (objects, morphisms) = read_json::<SamplesFile>(path)?.load()?;
            expect(!objects.is_empty(), || "no sample objects".into())?;
            let report = verify_vectorization_laws(&objects, &morphisms);
            expect(report.passed(), || report.to_string())?;
            for id in FunctorId::ALL {
                if objects.iter().all(|o| o.category() == id.source()) {
                    let report = verify_functor_laws(&HierarchyFunctor::new(id), &objects, &morphisms);
                    expect(report.passed(), || format!("{id}: {report}"))?;
                }
            }
            Ok(())
        }
        "complex" => read_json::<ComplexFile>(path)?.to_complex().map(drop),
        "sheaf" => {
            let sheaf = read_json::<SheafFile>(path)?.to_sheaf(dir)?;
            let report = validate_sheaf(&sheaf)?;
            expect(report.is_valid(), || format!("{} chain violations", report.violations.len()))
        }
        "scenario" => {
            let loaded = read_json::<ScenarioFile>(path)?.load(dir)?;
            let outcome = run_pipeline(&loaded.scenario, &loaded.readings, loaded.tolerance)?;
            expect(outcome.report.is_section, || outcome.report.to_string())
        }
        "readings" => read_json::<ReadingsFile>(path).map(drop),
        _ => {
            let object = read_json::<ObjectFile>(path)?.to_object()?;
            let listed = elements(&object, Some(&small_grid()))?;
            expect(!listed.is_empty(), || "object has no elements".into())?;
            vectorize_object(&object).map(drop)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogFailure {
    pub construct: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CatalogReport {
    pub entries_checked: usize,
    pub failures: Vec<CatalogFailure>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} catalog entries checked", self.entries_checked)?;
        for failure in &self.failures {
            write!(f, "\n{}: {}", failure.construct, failure.reason)?;
        }
        Ok(())
    }
}

/// Checks coverage (every category, functor, vectorization and element
/// construction has an entry) and runs every fixture.
pub fn check_catalog(entries: &[CatalogEntry], fixtures: &Path) -> CatalogReport {
    let mut report = CatalogReport::default();
    let mut missing = |construct: String, kind: EntryKind| {
        if !entries.iter().any(|e| e.construct == construct && e.kind == kind) {
            report.failures.push(CatalogFailure {
                construct,
                reason: format!("no {} entry", kind.name()),
            });
        }
    };
    for c in CATEGORIES {
        missing(c.to_string(), EntryKind::Category);
    }
    for id in FunctorId::ALL {
        let kind = if id.is_inclusion() { EntryKind::Inclusion } else { EntryKind::Functor };
        missing(id.name().to_string(), kind);
    }
    for v in VECTORIZATIONS {
        missing(v.to_string(), EntryKind::Vectorization);
    }
    for family in MEASURE_FAMILIES {
        let count = entries
            .iter()
            .filter(|e| e.kind == EntryKind::Element && e.construct.starts_with(&format!("{family}:")))
            .count();
        if count < 2 {
            report.failures.push(CatalogFailure {
                construct: family.to_string(),
                reason: format!("{count} element constructions, expected 2"),
            });
        }
    }
    for entry in entries {
        report.entries_checked += 1;
        let outcome = match entry.fixture {
            Fixture::File(rel) => {
                let path = fixtures.join(rel);
                if path.is_file() {
                    run_file_fixture(&path)
                } else {
                    Err(Error::Config(format!("missing fixture {}", path.display())))
                }
            }
            Fixture::Check(check) => check(),
        };
        if let Err(e) = outcome {
            report.failures.push(CatalogFailure {
                construct: entry.construct.to_string(),
                reason: e.to_string(),
            });
        }
    }
    report
}

/// The catalog as a Markdown document.
pub fn render_markdown() -> String {
    let mut out = String::from(
        "# Catalog\n\nGenerated from `catfuse::catalog::catalog()`; `cargo test` fails if this file is stale \
         or any fixture fails. Regenerate with `catfuse catalog > docs/catalog.md`.\n",
    );
    let entries = catalog();
    let mut kinds: Vec<EntryKind> = entries.iter().map(|e| e.kind).collect();
    kinds.dedup();
    for kind in kinds {
        let title = match kind {
            EntryKind::Category => "Categories",
            EntryKind::Inclusion => "Inclusion functors",
            EntryKind::Functor => "Other hierarchy functors",
            EntryKind::Vectorization => "Vectorizations",
            EntryKind::Element => "Element constructions",
            EntryKind::Structure => "Structures",
        };
        out.push_str(&format!("\n## {title}\n\n| Construct | Module | Operation | Fixture |\n|---|---|---|---|\n"));
        for e in entries.iter().filter(|e| e.kind == kind) {
            let construct = match kind {
                EntryKind::Inclusion | EntryKind::Functor => {
                    let id: FunctorId = e.construct.parse().expect("catalog names parse");
                    format!("{} ({} → {})", e.construct, id.source(), id.target())
                }
                _ => e.construct.to_string(),
            };
            let fixture = match e.fixture {
                Fixture::File(rel) => format!("`fixtures/{rel}`"),
                Fixture::Check(_) => "inline check".to_string(),
            };
            out.push_str(&format!("| {construct} | `{}` | `{}` | {fixture} |\n", e.module, e.operation));
        }
    }
    out
}
