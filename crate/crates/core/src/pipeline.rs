//! Turning raw sensor readings into a sheaf assignment: mathematize each
//! reading with a sensor analytic, cook the result into an element of the
//! variable's native object, and vectorize that element into the stalk.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::asc::{face_category, Attachment, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fvect::{apply, Matrix, Vector, VectorSpace};
use crate::scalar::Rational;
use crate::sheaf::{is_global_section, Assignment, SectionReport, Sheaf};
use crate::typesys::{elements, BoolObject, TypedObject};
use crate::vectorize::set_to_fvect;

/// What a sensor emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RawFormat {
    /// An image, represented by the classifier's score for it.
    ImageScore,
    /// A list of word tokens.
    Article,
    Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    ImageScore {
        #[serde(default = "default_image")]
        image: String,
        score: f64,
    },
    Article { tokens: Vec<String> },
    Number { value: f64 },
}

fn default_image() -> String {
    "image".into()
}

impl Payload {
    pub fn format(&self) -> RawFormat {
        match self {
            Payload::ImageScore { .. } => RawFormat::ImageScore,
            Payload::Article { .. } => RawFormat::Article,
            Payload::Number { .. } => RawFormat::Number,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reading {
    pub sensor: String,
    pub payload: Payload,
    #[serde(default)]
    pub timestamp: u64,
}

/// A sensor-and-variable specific analytic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Analytic {
    /// The random-variable outcome `(ω, X(ω))` of an image classifier.
    ClassifierScore,
    /// Counts of violent and calm words.
    BagOfWords {
        violent: BTreeSet<String>,
        calm: BTreeSet<String>,
    },
    /// Passes a number through.
    Value,
}

/// Mathematized data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Datum {
    /// An element `(ω, s)` of the graph of a random variable.
    Outcome { omega: String, score: f64 },
    Counts { first: u64, second: u64 },
    Number { value: f64 },
}

/// Maps mathematized data to an element label of the cooked object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CookingMap {
    /// `0` below the threshold, `1` at or above it; scores must lie in [0,1].
    Threshold { at: f64 },
    /// `0` if `first < second`, else `1`.
    Majority,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorSpec {
    pub id: String,
    pub raw_format: RawFormat,
    /// Variable id → analytic.
    pub analytics: BTreeMap<String, Analytic>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableSpec {
    pub id: String,
    pub cooked_object: TypedObject,
    /// Sensor id → cooking map.
    pub cooking: BTreeMap<String, CookingMap>,
}

/// How a face gets its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Binding {
    /// A vertex fed by a sensor's readings for a variable.
    Sensor { sensor: String, variable: String },
    /// A higher face carrying a variable; its value is pushed from the first
    /// vertex through the restriction map.
    Variable { variable: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub sensors: Vec<SensorSpec>,
    pub variables: Vec<VariableSpec>,
    pub sheaf: Sheaf,
    pub bindings: BTreeMap<Simplex, Binding>,
}

impl Scenario {
    pub fn complex(&self) -> &SimplicialComplex {
        self.sheaf.complex()
    }

    fn sensor(&self, id: &str) -> Result<&SensorSpec> {
        self.sensors
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::Config(format!("unknown sensor {id:?}")))
    }

    fn variable(&self, id: &str) -> Result<&VariableSpec> {
        self.variables
            .iter()
            .find(|v| v.id == id)
            .ok_or_else(|| Error::Config(format!("unknown variable {id:?}")))
    }
}

pub fn bag_of_words(
    article: &[String],
    violent: &BTreeSet<String>,
    calm: &BTreeSet<String>,
) -> Result<(u64, u64)> {
    if let Some(word) = violent.intersection(calm).next() {
        return Err(Error::Config(format!("{word:?} is both violent and calm")));
    }
    let count = |words: &BTreeSet<String>| article.iter().filter(|w| words.contains(*w)).count() as u64;
    Ok((count(violent), count(calm)))
}

/// `0` if `s < 0.5`, otherwise `1`.
pub fn cook_f1(s: f64) -> Result<u8> {
    threshold(s, 0.5)
}

/// `0` if `i < j`, otherwise `1`.
pub fn cook_f2(i: u64, j: u64) -> u8 {
    u8::from(i >= j)
}

fn threshold(s: f64, at: f64) -> Result<u8> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("score {s} is outside [0, 1]")));
    }
    Ok(u8::from(s >= at))
}

/// Step one: apply the sensor's analytic for `variable`.
pub fn mathematize(reading: &Reading, sensor: &SensorSpec, variable: &str) -> Result<Datum> {
    let analytic = sensor
        .analytics
        .get(variable)
        .ok_or_else(|| Error::AnalyticMissing {
            sensor: sensor.id.clone(),
            variable: variable.into(),
        })?;
    let mismatch = |reason: String| Error::Payload {
        sensor: sensor.id.clone(),
        reason,
    };
    if reading.payload.format() != sensor.raw_format {
        return Err(mismatch(format!(
            "expected {:?}, got {:?}",
            sensor.raw_format,
            reading.payload.format()
        )));
    }
    match (analytic, &reading.payload) {
        (Analytic::ClassifierScore, Payload::ImageScore { image, score }) => Ok(Datum::Outcome {
            omega: image.clone(),
            score: *score,
        }),
        (Analytic::BagOfWords { violent, calm }, Payload::Article { tokens }) => {
            let (first, second) = bag_of_words(tokens, violent, calm)?;
            Ok(Datum::Counts { first, second })
        }
        (Analytic::Value, Payload::Number { value }) => Ok(Datum::Number { value: *value }),
        (analytic, payload) => Err(mismatch(format!(
            "analytic {analytic:?} cannot read a {:?} payload",
            payload.format()
        ))),
    }
}

/// Step two: map the datum to an element of the variable's object, returned
/// as the element's label.
pub fn cook(datum: &Datum, map: &CookingMap, object: &TypedObject) -> Result<String> {
    let bit = match (map, datum) {
        (CookingMap::Threshold { at }, Datum::Outcome { score, .. }) => threshold(*score, *at)?,
        (CookingMap::Threshold { at }, Datum::Number { value }) => threshold(*value, *at)?,
        (CookingMap::Majority, Datum::Counts { first, second }) => cook_f2(*first, *second),
        (map, datum) => {
            return Err(Error::Config(format!("cooking map {map:?} does not accept {datum:?}")))
        }
    };
    let label = bit.to_string();
    let members = elements(object, None)?;
    if !members.iter().any(|e| e.label == label) {
        return Err(Error::Domain(format!("{label} is not an element of the cooked object")));
    }
    Ok(label)
}

/// Step three: the basis vector of the element in `ℝ[elements]`.
pub fn vectorize_element(label: &str, object: &TypedObject) -> Result<Vector> {
    let base = object
        .base_set()
        .ok_or_else(|| Error::Config("cooked objects must have an underlying set".into()))?;
    set_to_fvect(&base).basis_vector_for(label)
}

/// The result of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutcome {
    /// Sensor id → cooked element label, for vertices fed by sensors.
    pub cooked: BTreeMap<Simplex, String>,
    pub assignment: Assignment,
    pub report: SectionReport,
}

fn latest<'a>(readings: &'a [Reading], sensor: &str) -> Option<&'a Reading> {
    readings
        .iter()
        .filter(|r| r.sensor == sensor)
        .fold(None, |best: Option<&Reading>, r| match best {
            Some(b) if b.timestamp > r.timestamp => Some(b),
            _ => Some(r),
        })
}

fn relabel(v: Vector, space: &VectorSpace) -> Result<Vector> {
    if v.space().dim() != space.dim() {
        return Err(Error::Space(format!(
            "cooked vector has dimension {}, stalk has {}",
            v.space().dim(),
            space.dim()
        )));
    }
    Vector::new(space.clone(), v.into_coords())
}

/// Runs all three steps for every sensor vertex (latest reading wins), fills
/// higher faces from their first vertex, and checks the section condition.
pub fn run_pipeline(scenario: &Scenario, readings: &[Reading], tolerance: f64) -> Result<PipelineOutcome> {
    let mut assignment = Assignment::new();
    let mut cooked = BTreeMap::new();
    for face in scenario.complex().faces().filter(|f| f.dimension() == 0) {
        let Some(Binding::Sensor { sensor, variable }) = scenario.bindings.get(face) else {
            return Err(Error::Config(format!("vertex {face} is not bound to a sensor")));
        };
        let stage = || -> Result<(String, Vector)> {
            let spec = scenario.sensor(sensor)?;
            let var = scenario.variable(variable)?;
            let reading = latest(readings, sensor)
                .ok_or_else(|| Error::IncompleteAssignment(format!("no reading from sensor {sensor}")))?;
            let datum = mathematize(reading, spec, variable)?;
            let map = var.cooking.get(sensor).ok_or_else(|| {
                Error::Config(format!("variable {variable} has no cooking map for sensor {sensor}"))
            })?;
            let label = cook(&datum, map, &var.cooked_object)?;
            let vector = vectorize_element(&label, &var.cooked_object)?;
            Ok((label, vector))
        };
        let (label, vector) = stage().map_err(|e| e.context(format!("sensor {sensor}, variable {variable}")))?;
        let stalk = scenario
            .sheaf
            .stalk(face)
            .ok_or_else(|| Error::IncompleteSheaf(format!("no stalk on {face}")))?;
        assignment.insert(face.clone(), relabel(vector, stalk)?);
        cooked.insert(face.clone(), label);
    }
    for face in scenario.complex().faces().filter(|f| f.dimension() > 0) {
        let first = Simplex::vertex(face.vertices()[0].clone());
        let attachment = Attachment {
            from: first.clone(),
            to: face.clone(),
        };
        let map = scenario
            .sheaf
            .restriction(&attachment)
            .ok_or_else(|| Error::IncompleteSheaf(format!("no restriction on {attachment}")))?;
        let value = assignment
            .get(&first)
            .cloned()
            .ok_or_else(|| Error::IncompleteAssignment(format!("no value on {first}")))?;
        let pushed = apply(map, &relabel(value, map.domain())?)?;
        assignment.insert(face.clone(), pushed);
    }
    let report = is_global_section(&scenario.sheaf, &assignment, tolerance)?;
    Ok(PipelineOutcome {
        cooked,
        assignment,
        report,
    })
}

pub const VIOLENT_WORDS: [&str; 4] = ["riot", "attack", "fight", "violence"];
pub const CALM_WORDS: [&str; 4] = ["calm", "peaceful", "quiet", "orderly"];

/// The two-sensor, one-variable example: cameras `C` and newspaper `E`
/// both inform the boolean violence variable `L` on the edge `[C,E]`.
pub fn build_l_example() -> Scenario {
    let c = Simplex::vertex("C");
    let e = Simplex::vertex("E");
    let edge = Simplex::new(["C", "E"]).expect("two distinct vertices");
    let complex = SimplicialComplex::from_maximal([edge.clone()]);
    let bool_object = TypedObject::Bool(BoolObject::FULL);
    let stalk = set_to_fvect(&bool_object.base_set().expect("boolean set"));
    let stalks = complex.faces().map(|f| (f.clone(), stalk.clone())).collect();
    let restrictions: BTreeMap<Attachment, Matrix<Rational>> = face_category(&complex)
        .attachments()
        .into_iter()
        .map(|a| (a, Matrix::identity(2)))
        .collect();
    let sheaf = Sheaf::from_matrices(complex, stalks, restrictions).expect("identity restrictions");

    let words = |ws: &[&str]| ws.iter().map(|w| w.to_string()).collect::<BTreeSet<_>>();
    let sensors = vec![
        SensorSpec {
            id: "C".into(),
            raw_format: RawFormat::ImageScore,
            analytics: [("L".to_string(), Analytic::ClassifierScore)].into_iter().collect(),
        },
        SensorSpec {
            id: "E".into(),
            raw_format: RawFormat::Article,
            analytics: [(
                "L".to_string(),
                Analytic::BagOfWords {
                    violent: words(&VIOLENT_WORDS),
                    calm: words(&CALM_WORDS),
                },
            )]
            .into_iter()
            .collect(),
        },
    ];
    let variables = vec![VariableSpec {
        id: "L".into(),
        cooked_object: bool_object,
        cooking: [
            ("C".to_string(), CookingMap::Threshold { at: 0.5 }),
            ("E".to_string(), CookingMap::Majority),
        ]
        .into_iter()
        .collect(),
    }];
    let bindings = [
        (c, Binding::Sensor { sensor: "C".into(), variable: "L".into() }),
        (e, Binding::Sensor { sensor: "E".into(), variable: "L".into() }),
        (edge, Binding::Variable { variable: "L".into() }),
    ]
    .into_iter()
    .collect();
    Scenario {
        sensors,
        variables,
        sheaf,
        bindings,
    }
}

/// Readings for the example: a camera score and an article with the given
/// numbers of violent and calm words.
pub fn l_example_readings(score: f64, violent: usize, calm: usize) -> Vec<Reading> {
    let mut tokens = vec!["the".to_string(); 2];
    tokens.extend(std::iter::repeat_n(VIOLENT_WORDS[0].to_string(), violent));
    tokens.extend(std::iter::repeat_n(CALM_WORDS[0].to_string(), calm));
    vec![
        Reading {
            sensor: "C".into(),
            payload: Payload::ImageScore {
                image: default_image(),
                score,
            },
            timestamp: 0,
        },
        Reading {
            sensor: "E".into(),
            payload: Payload::Article { tokens },
            timestamp: 0,
        },
    ]
}
