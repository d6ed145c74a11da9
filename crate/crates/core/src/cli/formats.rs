//! JSON file formats. Every top-level file carries a `kind` tag; field order
//! in the structs below is the canonical order used when writing.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::asc::{face_category, validate_complex, Attachment, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fvect::{Matrix, VectorSpace};
use crate::measure::{
    check_rv_morphism, check_sto_morphism, FiniteMeasurableSpace, Kernel, ProbabilityMeasure,
    RandomVariable, StochasticProcess,
};
use crate::pipeline::{Binding, CookingMap, Reading, Scenario, SensorSpec, VariableSpec};
use crate::scalar::{parse_rational, rational_from_f64, Rational};
use crate::sheaf::Sheaf;
use crate::typesys::{
    check_morphism, BoolObject, Category, HomRule, PosetObject, RelObject, SemiringElement,
    SemiringKind, SemiringObject, SetObject, TotalOrderObject, TypedMorphism, TypedObject, Window,
};

/// An exact rational written as a string (`"1/3"`, `"0.25"`) or a JSON
/// number. Always written back as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let value = serde_json::Value::deserialize(d)?;
        let parsed = match &value {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).or_else(|_| {
                n.as_f64()
                    .ok_or_else(|| Error::Invalid(format!("not a number: {n}")))
                    .and_then(rational_from_f64)
            }),
            other => Err(Error::Invalid(format!("expected a number, got {other}"))),
        };
        parsed.map(Num).map_err(D::Error::custom)
    }
}

fn nums(values: &[Rational]) -> Vec<Num> {
    values.iter().cloned().map(Num).collect()
}

fn rationals(values: &[Num]) -> Vec<Rational> {
    values.iter().map(|n| n.0.clone()).collect()
}

fn matrix_rows(m: &Matrix<Rational>) -> Vec<Vec<Num>> {
    m.to_rows().iter().map(|r| nums(r)).collect()
}

fn matrix_from_rows(rows: &[Vec<Num>], cols: usize) -> Result<Matrix<Rational>> {
    Matrix::from_rows_with_cols(rows.iter().map(|r| rationals(r)).collect(), cols)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowFile {
    pub lo: i64,
    pub hi: i64,
    #[serde(default = "one_u32")]
    pub denominator: u32,
}

fn one_u32() -> u32 {
    1
}

impl From<Window> for WindowFile {
    fn from(w: Window) -> Self {
        WindowFile {
            lo: w.lo,
            hi: w.hi,
            denominator: w.denominator,
        }
    }
}

impl From<WindowFile> for Window {
    fn from(w: WindowFile) -> Self {
        Window::new(w.lo, w.hi).with_denominator(w.denominator)
    }
}

pub fn parse_semiring_kind(name: &str) -> Result<SemiringKind> {
    [
        SemiringKind::Naturals,
        SemiringKind::IntegerIntervals,
        SemiringKind::RationalIntervals,
    ]
    .into_iter()
    .find(|k| k.name() == name)
    .ok_or_else(|| Error::Invalid(format!("unknown semiring {name:?}")))
}

macro_rules! file_tag {
    ($name:ident, $tag:literal) => {
        #[doc = concat!("The `\"kind\": \"", $tag, "\"` tag.")]
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
        pub enum $name {
            #[default]
            #[serde(rename = $tag)]
            Tag,
        }
    };
}

file_tag!(SamplesTag, "samples");
file_tag!(ComplexTag, "complex");
file_tag!(SheafTag, "sheaf");
file_tag!(ReadingsTag, "readings");
file_tag!(ScenarioTag, "scenario");

/// A typed object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectFile {
    Set {
        elements: Vec<String>,
    },
    Bool {
        elements: Vec<String>,
    },
    /// A `k`-ary relation (BI-REL when `arity` is 2).
    Rel {
        base: Vec<String>,
        arity: usize,
        tuples: Vec<Vec<String>>,
    },
    NRel {
        base: Vec<String>,
        arity: usize,
        tuples: Vec<Vec<String>>,
    },
    /// `leq` lists every pair `a ≤ b`, including `a ≤ a`.
    Poset {
        base: Vec<String>,
        leq: Vec<[String; 2]>,
    },
    /// Without `leq`, the base is a chain in the listed order.
    TotalOrder {
        base: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        leq: Option<Vec<[String; 2]>>,
    },
    Interval {
        semiring: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<WindowFile>,
    },
    Scalar {
        semiring: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<WindowFile>,
    },
    Meas {
        points: Vec<String>,
    },
    Prob {
        points: Vec<String>,
    },
    /// `x[i]` is the state of outcome `omega[i]`.
    Rv {
        omega: Vec<String>,
        probabilities: Vec<Num>,
        state: Vec<String>,
        x: Vec<String>,
    },
    /// `x[t][i]` is the state of outcome `omega[i]` at `index[t]`.
    Sto {
        omega: Vec<String>,
        probabilities: Vec<Num>,
        state: Vec<String>,
        index: Vec<String>,
        x: Vec<Vec<String>>,
    },
}

fn position(labels: &[String], label: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Invalid(format!("{label:?} is not in {what}")))
}

fn positions(labels: &[String], values: &[String], what: &str) -> Result<Vec<usize>> {
    values.iter().map(|v| position(labels, v, what)).collect()
}

fn pairs_relation(base: &[String], leq: &[[String; 2]]) -> Result<RelObject> {
    let tuples: Vec<Vec<String>> = leq.iter().map(|p| p.to_vec()).collect();
    RelObject::new(SetObject::new(base.iter().cloned())?, 2, &tuples)
}

fn relation_pairs(rel: &RelObject) -> Vec<[String; 2]> {
    let labels = rel.base().elements();
    rel.tuples()
        .iter()
        .map(|t| [labels[t[0]].clone(), labels[t[1]].clone()])
        .collect()
}

fn relation_tuples(rel: &RelObject) -> Vec<Vec<String>> {
    let labels = rel.base().elements();
    rel.tuples()
        .iter()
        .map(|t| t.iter().map(|&i| labels[i].clone()).collect())
        .collect()
}

fn semiring(name: &str, window: Option<WindowFile>) -> Result<SemiringObject> {
    let kind = parse_semiring_kind(name)?;
    Ok(match window {
        Some(w) => SemiringObject::windowed(kind, w.into()),
        None => SemiringObject::new(kind),
    })
}

impl ObjectFile {
    pub fn to_object(&self) -> Result<TypedObject> {
        Ok(match self {
            ObjectFile::Set { elements } => TypedObject::Set(SetObject::new(elements.iter().cloned())?),
            ObjectFile::Bool { elements } => TypedObject::Bool(BoolObject::from_labels(elements)?),
            ObjectFile::Rel { base, arity, tuples } => {
                TypedObject::Rel(RelObject::new(SetObject::new(base.iter().cloned())?, *arity, tuples)?)
            }
            ObjectFile::NRel { base, arity, tuples } => {
                TypedObject::NRel(RelObject::new(SetObject::new(base.iter().cloned())?, *arity, tuples)?)
            }
            ObjectFile::Poset { base, leq } => TypedObject::Poset(PosetObject::new(pairs_relation(base, leq)?)?),
            ObjectFile::TotalOrder { base, leq: None } => {
                TypedObject::TotalOrder(TotalOrderObject::chain(SetObject::new(base.iter().cloned())?))
            }
            ObjectFile::TotalOrder { base, leq: Some(leq) } => {
                TypedObject::TotalOrder(TotalOrderObject::new(pairs_relation(base, leq)?)?)
            }
            ObjectFile::Interval { semiring: name, window } => TypedObject::Interval(semiring(name, *window)?),
            ObjectFile::Scalar { semiring: name, window } => TypedObject::scalar(semiring(name, *window)?)?,
            ObjectFile::Meas { points } => TypedObject::Meas(FiniteMeasurableSpace::new(points.iter().cloned())?),
            ObjectFile::Prob { points } => TypedObject::Prob(FiniteMeasurableSpace::new(points.iter().cloned())?),
            ObjectFile::Rv {
                omega,
                probabilities,
                state,
                x,
            } => {
                let prob = ProbabilityMeasure::new(
                    FiniteMeasurableSpace::new(omega.iter().cloned())?,
                    rationals(probabilities),
                )?;
                let x_map = positions(state, x, "the state space")?;
                TypedObject::Rv(RandomVariable::new(
                    prob,
                    FiniteMeasurableSpace::new(state.iter().cloned())?,
                    x_map,
                )?)
            }
            ObjectFile::Sto {
                omega,
                probabilities,
                state,
                index,
                x,
            } => {
                let prob = ProbabilityMeasure::new(
                    FiniteMeasurableSpace::new(omega.iter().cloned())?,
                    rationals(probabilities),
                )?;
                let x_maps = x
                    .iter()
                    .map(|row| positions(state, row, "the state space"))
                    .collect::<Result<_>>()?;
                TypedObject::Sto(StochasticProcess::new(
                    prob,
                    FiniteMeasurableSpace::new(state.iter().cloned())?,
                    index.clone(),
                    x_maps,
                )?)
            }
        })
    }

    pub fn from_object(object: &TypedObject) -> Self {
        let labels = |points: &[String], map: &[usize]| map.iter().map(|&i| points[i].clone()).collect();
        match object {
            TypedObject::Set(s) => ObjectFile::Set {
                elements: s.elements().to_vec(),
            },
            TypedObject::Bool(b) => ObjectFile::Bool {
                elements: b.as_set().elements().to_vec(),
            },
            TypedObject::Rel(r) => ObjectFile::Rel {
                base: r.base().elements().to_vec(),
                arity: r.arity(),
                tuples: relation_tuples(r),
            },
            TypedObject::NRel(r) => ObjectFile::NRel {
                base: r.base().elements().to_vec(),
                arity: r.arity(),
                tuples: relation_tuples(r),
            },
            TypedObject::Poset(p) => ObjectFile::Poset {
                base: p.base().elements().to_vec(),
                leq: relation_pairs(p.relation()),
            },
            TypedObject::TotalOrder(o) => ObjectFile::TotalOrder {
                base: o.base().elements().to_vec(),
                leq: Some(relation_pairs(o.relation())),
            },
            TypedObject::Interval(s) => ObjectFile::Interval {
                semiring: s.kind().name().into(),
                window: s.window().map(Into::into),
            },
            TypedObject::Scalar(s) => ObjectFile::Scalar {
                semiring: s.kind().name().into(),
                window: s.window().map(Into::into),
            },
            TypedObject::Meas(x) => ObjectFile::Meas {
                points: x.points().to_vec(),
            },
            TypedObject::Prob(x) => ObjectFile::Prob {
                points: x.points().to_vec(),
            },
            TypedObject::Rv(r) => ObjectFile::Rv {
                omega: r.omega().points().to_vec(),
                probabilities: nums(r.prob().weights()),
                state: r.state().points().to_vec(),
                x: labels(r.state().points(), r.x_map()),
            },
            TypedObject::Sto(p) => ObjectFile::Sto {
                omega: p.omega().points().to_vec(),
                probabilities: nums(p.prob().weights()),
                state: p.state().points().to_vec(),
                index: p.index().to_vec(),
                x: p.x_maps().iter().map(|m| labels(p.state().points(), m)).collect(),
            },
        }
    }
}

/// How an ordered semiring homomorphism acts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleFile {
    Identity,
    PointEmbedding,
    Inclusion,
    /// Pairs of element texts such as `"[0,1]"` or `"3"`.
    Table(Vec<[String; 2]>),
}

impl RuleFile {
    fn to_rule(&self) -> Result<HomRule> {
        Ok(match self {
            RuleFile::Identity => HomRule::Identity,
            RuleFile::PointEmbedding => HomRule::PointEmbedding,
            RuleFile::Inclusion => HomRule::Inclusion,
            RuleFile::Table(rows) => HomRule::Table(
                rows.iter()
                    .map(|[a, b]| Ok((SemiringElement::parse(a)?, SemiringElement::parse(b)?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

/// Morphism data. Maps list target labels in source order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MorphismDataFile {
    Function { map: Vec<String> },
    Semiring { rule: RuleFile },
    /// Rows are source points, columns target points.
    Kernel { rows: Vec<Vec<Num>> },
    Rv { omega_map: Vec<String>, state_map: Vec<String> },
    Sto { omega_maps: Vec<Vec<String>>, state_maps: Vec<Vec<String>> },
}

/// A morphism between two objects of the enclosing samples file, referred
/// to by position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub category: String,
    pub source: usize,
    pub target: usize,
    pub data: MorphismDataFile,
}

fn base_labels(object: &TypedObject) -> Result<Vec<String>> {
    object
        .base_set()
        .map(|s| s.elements().to_vec())
        .ok_or_else(|| Error::Invalid("function data needs set-like objects".into()))
}

impl MorphismFile {
    pub fn to_morphism(&self, objects: &[TypedObject]) -> Result<TypedMorphism> {
        let get = |i: usize| {
            objects
                .get(i)
                .ok_or_else(|| Error::Invalid(format!("no object at position {i}")))
        };
        let (source, target) = (get(self.source)?, get(self.target)?);
        let category: Category = self.category.parse()?;
        let data = match &self.data {
            MorphismDataFile::Function { map } => {
                let to = base_labels(target)?;
                crate::typesys::MorphismData::Function(positions(&to, map, "the target")?)
            }
            MorphismDataFile::Semiring { rule } => crate::typesys::MorphismData::Semiring(rule.to_rule()?),
            MorphismDataFile::Kernel { rows } => {
                let (TypedObject::Meas(x) | TypedObject::Prob(x), TypedObject::Meas(y) | TypedObject::Prob(y)) =
                    (source, target)
                else {
                    return Err(Error::Invalid("kernels connect measure families".into()));
                };
                crate::typesys::MorphismData::Kernel(Kernel::new(
                    x.clone(),
                    y.clone(),
                    matrix_from_rows(rows, y.len())?,
                )?)
            }
            MorphismDataFile::Rv { omega_map, state_map } => {
                let (TypedObject::Rv(a), TypedObject::Rv(b)) = (source, target) else {
                    return Err(Error::Invalid("RV maps connect random variables".into()));
                };
                crate::typesys::MorphismData::Rv(check_rv_morphism(
                    positions(b.omega().points(), omega_map, "the target outcomes")?,
                    positions(b.state().points(), state_map, "the target states")?,
                    a,
                    b,
                )?)
            }
            MorphismDataFile::Sto { omega_maps, state_maps } => {
                let (TypedObject::Sto(a), TypedObject::Sto(b)) = (source, target) else {
                    return Err(Error::Invalid("STO maps connect processes".into()));
                };
                let om = omega_maps
                    .iter()
                    .map(|m| positions(b.omega().points(), m, "the target outcomes"))
                    .collect::<Result<_>>()?;
                let sm = state_maps
                    .iter()
                    .map(|m| positions(b.state().points(), m, "the target states"))
                    .collect::<Result<_>>()?;
                crate::typesys::MorphismData::Sto(check_sto_morphism(om, sm, a, b)?)
            }
        };
        check_morphism(category, data, source, target)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesFile {
    pub kind: SamplesTag,
    pub objects: Vec<ObjectFile>,
    #[serde(default)]
    pub morphisms: Vec<MorphismFile>,
}

impl SamplesFile {
    pub fn load(&self) -> Result<(Vec<TypedObject>, Vec<TypedMorphism>)> {
        let objects = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| o.to_object().map_err(|e| e.context(format!("object {i}"))))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| m.to_morphism(&objects).map_err(|e| e.context(format!("morphism {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((objects, morphisms))
    }
}

/// A complex given either by every face (checked for closure) or by its
/// maximal faces (closed automatically).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub kind: ComplexTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal_faces: Option<Vec<Vec<String>>>,
}

fn simplices(faces: &[Vec<String>]) -> Result<Vec<Simplex>> {
    faces.iter().map(|f| Simplex::new(f.iter().cloned())).collect()
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        match (&self.faces, &self.maximal_faces) {
            (Some(faces), None) => validate_complex(simplices(faces)?),
            (None, Some(maximal)) => Ok(SimplicialComplex::from_maximal(simplices(maximal)?)),
            _ => Err(Error::Invalid("give exactly one of faces and maximal_faces".into())),
        }
    }

    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            kind: ComplexTag::Tag,
            faces: Some(complex.faces().map(|f| f.vertices().to_vec()).collect()),
            maximal_faces: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StalkFile {
    pub face: Vec<String>,
    /// Basis labels of the stalk.
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionFile {
    pub from: Vec<String>,
    pub to: Vec<String>,
    /// Rows index the `to` stalk, columns the `from` stalk.
    pub matrix: Vec<Vec<Num>>,
}

/// Either a path to a complex file (relative to the referring file) or an
/// inline complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Path(PathBuf),
    Inline(ComplexFile),
}

impl ComplexRef {
    fn resolve(&self, dir: &Path) -> Result<SimplicialComplex> {
        match self {
            ComplexRef::Path(p) => read_json::<ComplexFile>(&dir.join(p))?.to_complex(),
            ComplexRef::Inline(c) => c.to_complex(),
        }
    }
}

/// A sheaf on a complex. Restrictions are listed for every attachment
/// between distinct faces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafFile {
    pub kind: SheafTag,
    pub complex: ComplexRef,
    pub stalks: Vec<StalkFile>,
    pub restrictions: Vec<RestrictionFile>,
}

impl SheafFile {
    pub fn to_sheaf(&self, dir: &Path) -> Result<Sheaf> {
        let complex = self.complex.resolve(dir)?;
        let mut stalks = BTreeMap::new();
        for s in &self.stalks {
            let face = Simplex::new(s.face.iter().cloned())?;
            if stalks.insert(face.clone(), VectorSpace::new(s.basis.iter().cloned())?).is_some() {
                return Err(Error::Invalid(format!("two stalks on {face}")));
            }
        }
        let mut matrices = BTreeMap::new();
        for r in &self.restrictions {
            let attachment = Attachment {
                from: Simplex::new(r.from.iter().cloned())?,
                to: Simplex::new(r.to.iter().cloned())?,
            };
            let cols = stalks.get(&attachment.from).map_or(0, VectorSpace::dim);
            let m = matrix_from_rows(&r.matrix, cols).map_err(|e| e.context(format!("restriction {attachment}")))?;
            if matrices.insert(attachment.clone(), m).is_some() {
                return Err(Error::Invalid(format!("two restrictions on {attachment}")));
            }
        }
        Sheaf::from_matrices(complex, stalks, matrices)
    }

    pub fn from_sheaf(sheaf: &Sheaf) -> Self {
        SheafFile {
            kind: SheafTag::Tag,
            complex: ComplexRef::Inline(ComplexFile::from_complex(sheaf.complex())),
            stalks: sheaf
                .stalks()
                .iter()
                .map(|(f, s)| StalkFile {
                    face: f.vertices().to_vec(),
                    basis: s.labels().to_vec(),
                })
                .collect(),
            restrictions: face_category(sheaf.complex())
                .attachments()
                .into_iter()
                .filter_map(|a| {
                    sheaf.restriction(&a).map(|m| RestrictionFile {
                        from: a.from.vertices().to_vec(),
                        to: a.to.vertices().to_vec(),
                        matrix: matrix_rows(m.matrix()),
                    })
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableFile {
    pub id: String,
    pub object: ObjectFile,
    pub cooking: BTreeMap<String, CookingMap>,
}

/// A binding with its face. Kept separate from [`Binding`] because a
/// flattened enum would lose unknown-field checking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BindingFile {
    Sensor { face: Vec<String>, sensor: String, variable: String },
    Variable { face: Vec<String>, variable: String },
}

impl BindingFile {
    fn split(&self) -> (&[String], Binding) {
        match self {
            BindingFile::Sensor { face, sensor, variable } => {
                (face, Binding::Sensor { sensor: sensor.clone(), variable: variable.clone() })
            }
            BindingFile::Variable { face, variable } => (face, Binding::Variable { variable: variable.clone() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadingsFile {
    pub kind: ReadingsTag,
    pub readings: Vec<Reading>,
}

/// Everything needed for an integration run. Paths are relative to the
/// scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: ScenarioTag,
    pub complex: PathBuf,
    pub sheaf: PathBuf,
    pub sensors: Vec<SensorSpec>,
    pub variables: Vec<VariableFile>,
    pub bindings: Vec<BindingFile>,
    pub readings: PathBuf,
    #[serde(default)]
    pub tolerance: f64,
}

/// A loaded scenario with its readings.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub readings: Vec<Reading>,
    pub tolerance: f64,
}

impl ScenarioFile {
    pub fn load(&self, dir: &Path) -> Result<LoadedScenario> {
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config(format!("tolerance {} is negative", self.tolerance)));
        }
        let complex = read_json::<ComplexFile>(&dir.join(&self.complex))?.to_complex()?;
        let sheaf = read_json::<SheafFile>(&dir.join(&self.sheaf))?
            .to_sheaf(dir)
            .map_err(|e| e.context(self.sheaf.display().to_string()))?;
        if sheaf.complex() != &complex {
            return Err(Error::Config("the sheaf lives on a different complex".into()));
        }
        let variables = self
            .variables
            .iter()
            .map(|v| {
                Ok(VariableSpec {
                    id: v.id.clone(),
                    cooked_object: v.object.to_object()?,
                    cooking: v.cooking.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut bindings = BTreeMap::new();
        for b in &self.bindings {
            let (face, binding) = b.split();
            let face = Simplex::new(face.iter().cloned())?;
            if !complex.contains(&face) {
                return Err(Error::Config(format!("binding for {face}, which is not a face")));
            }
            bindings.insert(face, binding);
        }
        let readings = read_json::<ReadingsFile>(&dir.join(&self.readings))?.readings;
        Ok(LoadedScenario {
            scenario: Scenario {
                sensors: self.sensors.clone(),
                variables,
                sheaf,
                bindings,
            },
            readings,
            tolerance: self.tolerance,
        })
    }
}

/// A file that failed to parse, with its location.
#[derive(Debug)]
pub struct ParseError {
    pub path: PathBuf,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.path.display(), self.line, self.column, self.message)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Config(
            ParseError {
                path: path.to_path_buf(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
            .to_string(),
        )
    })
}

/// The top-level `kind` of a JSON file, used to dispatch `validate`.
pub fn file_kind(path: &Path) -> Result<String> {
    #[derive(Deserialize)]
    struct Tagged {
        kind: String,
    }
    Ok(read_json::<Tagged>(path)?.kind)
}
