//! Functors between the data-type categories and a checker for the functor
//! laws.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measure::{meas_elements, push_measure, FiniteMeasurableSpace, Kernel, Measure};
use crate::scalar::{int, Rational};
use crate::typesys::{
    check_morphism, compose_morphism, identity_morphism, same_morphism, Category, MorphismData,
    PosetObject, RelObject, SemiringObject, SetObject, TotalOrderObject, TypedMorphism,
    TypedObject,
};

/// Default cap on `|S|^|T|` for the product state space of a process.
pub const DEFAULT_PRODUCT_BOUND: u128 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctorId {
    BoolToSet,
    PordinalToBiRel,
    OrdinalToPordinal,
    KRelToNRel,
    ScalarToInterval,
    /// SCALAR → ORDINAL: keep the order, forget the operations.
    ScalarToOrdinal,
    /// INTERVAL → PORDINAL: keep the partial order, forget the operations.
    IntervalToPordinal,
    /// N-REL → SET: forget the relation.
    NRelToSet,
    /// PROB → MEAS.
    ProbToMeas,
    /// MEAS → SET: a family of measures viewed as a set.
    MeasToSet,
    /// RV → PROB: the state space, with state maps as Dirac kernels.
    RvToProb,
    /// STO → PROB: the product state space `Sᵀ`.
    StoToProb,
}

impl FunctorId {
    pub const ALL: [FunctorId; 12] = [
        FunctorId::BoolToSet,
        FunctorId::PordinalToBiRel,
        FunctorId::OrdinalToPordinal,
        FunctorId::KRelToNRel,
        FunctorId::ScalarToInterval,
        FunctorId::ScalarToOrdinal,
        FunctorId::IntervalToPordinal,
        FunctorId::NRelToSet,
        FunctorId::ProbToMeas,
        FunctorId::MeasToSet,
        FunctorId::RvToProb,
        FunctorId::StoToProb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctorId::BoolToSet => "BOOL->SET",
            FunctorId::PordinalToBiRel => "PORDINAL->BI-REL",
            FunctorId::OrdinalToPordinal => "ORDINAL->PORDINAL",
            FunctorId::KRelToNRel => "k-REL->N-REL",
            FunctorId::ScalarToInterval => "SCALAR->INTERVAL",
            FunctorId::ScalarToOrdinal => "F_SO",
            FunctorId::IntervalToPordinal => "F_IP",
            FunctorId::NRelToSet => "F_NS",
            FunctorId::ProbToMeas => "F_PM",
            FunctorId::MeasToSet => "F_MS",
            FunctorId::RvToProb => "F_RP",
            FunctorId::StoToProb => "F_SP",
        }
    }

    pub fn source(self) -> Category {
        match self {
            FunctorId::BoolToSet => Category::Bool,
            FunctorId::PordinalToBiRel => Category::Pordinal,
            FunctorId::OrdinalToPordinal => Category::Ordinal,
            FunctorId::KRelToNRel => Category::KRel,
            FunctorId::ScalarToInterval | FunctorId::ScalarToOrdinal => Category::Scalar,
            FunctorId::IntervalToPordinal => Category::Interval,
            FunctorId::NRelToSet => Category::NRel,
            FunctorId::ProbToMeas => Category::Prob,
            FunctorId::MeasToSet => Category::Meas,
            FunctorId::RvToProb => Category::Rv,
            FunctorId::StoToProb => Category::Sto,
        }
    }

    pub fn target(self) -> Category {
        match self {
            FunctorId::BoolToSet | FunctorId::NRelToSet | FunctorId::MeasToSet => Category::Set,
            FunctorId::PordinalToBiRel => Category::BiRel,
            FunctorId::OrdinalToPordinal | FunctorId::IntervalToPordinal => Category::Pordinal,
            FunctorId::KRelToNRel => Category::NRel,
            FunctorId::ScalarToInterval => Category::Interval,
            FunctorId::ScalarToOrdinal => Category::Ordinal,
            FunctorId::ProbToMeas => Category::Meas,
            FunctorId::RvToProb | FunctorId::StoToProb => Category::Prob,
        }
    }

    pub fn is_inclusion(self) -> bool {
        matches!(
            self,
            FunctorId::BoolToSet
                | FunctorId::PordinalToBiRel
                | FunctorId::OrdinalToPordinal
                | FunctorId::KRelToNRel
                | FunctorId::ScalarToInterval
        )
    }
}

impl fmt::Display for FunctorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = |x: &str| x.replace('→', "->").replace('̄', "").to_ascii_uppercase();
        let wanted = norm(s);
        FunctorId::ALL
            .into_iter()
            .find(|f| norm(f.name()) == wanted)
            .ok_or_else(|| Error::Invalid(format!("unknown functor {s:?}")))
    }
}

/// Anything that maps objects and morphisms between typed categories.
pub trait Functor {
    fn name(&self) -> String;
    fn apply_object(&self, object: &TypedObject) -> Result<TypedObject>;
    fn apply_morphism(&self, morphism: &TypedMorphism) -> Result<TypedMorphism>;
}

/// One of the hierarchy functors, with the parameters the measure-family
/// ones need.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchyFunctor {
    id: FunctorId,
    /// Weight values for the finite family of measures used by F_MS.
    grid: Vec<Rational>,
    /// Largest product state space F_SP will build.
    bound: u128,
}

impl HierarchyFunctor {
    pub fn new(id: FunctorId) -> Self {
        HierarchyFunctor {
            id,
            grid: vec![int(0), int(1)],
            bound: DEFAULT_PRODUCT_BOUND,
        }
    }

    pub fn with_grid(mut self, grid: Vec<Rational>) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_bound(mut self, bound: u128) -> Self {
        self.bound = bound;
        self
    }

    pub fn id(&self) -> FunctorId {
        self.id
    }

    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Functor {
            functor: self.id.name().into(),
            reason: reason.into(),
        }
    }

    fn wrong_source(&self, what: Category) -> Error {
        self.fail(format!("expects a {} input, got {what}", self.id.source()))
    }

    fn measure_family(&self, space: &FiniteMeasurableSpace) -> Vec<Measure> {
        meas_elements(space, &self.grid)
    }

    fn product_space(&self, state: &FiniteMeasurableSpace, steps: usize) -> Result<FiniteMeasurableSpace> {
        let needed = (state.len() as u128)
            .checked_pow(steps as u32)
            .unwrap_or(u128::MAX);
        if needed > self.bound {
            return Err(Error::Bound {
                what: format!("product state space |S|^|T| = {}^{}", state.len(), steps),
                needed,
                limit: self.bound,
            });
        }
        Ok(state.power(steps))
    }
}

/// The window of a semiring as a set, with the order restricted to it.
pub(crate) fn window_order(s: &SemiringObject) -> Result<RelObject> {
    let elements = s.window_elements()?;
    let base = SetObject::new(elements.iter().map(ToString::to_string))?;
    let mut tuples = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if s.leq(a, b) {
                tuples.push(vec![i, j]);
            }
        }
    }
    RelObject::from_indices(base, 2, tuples)
}

fn semiring_of(object: &TypedObject) -> Option<&SemiringObject> {
    match object {
        TypedObject::Interval(s) | TypedObject::Scalar(s) => Some(s),
        _ => None,
    }
}

/// Digits of `index` in base `radix`, most significant first.
fn digits(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

fn undigits(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

impl Functor for HierarchyFunctor {
    fn name(&self) -> String {
        self.id.name().to_string()
    }

    fn apply_object(&self, object: &TypedObject) -> Result<TypedObject> {
        let category = object.category();
        let accepted = match self.id {
            FunctorId::KRelToNRel => matches!(object, TypedObject::Rel(_)),
            id => category == id.source(),
        };
        if !accepted {
            return Err(self.wrong_source(category));
        }
        Ok(match (self.id, object) {
            (FunctorId::BoolToSet, TypedObject::Bool(b)) => TypedObject::Set(b.as_set()),
            (FunctorId::PordinalToBiRel, TypedObject::Poset(p)) => {
                TypedObject::Rel(p.relation().clone())
            }
            (FunctorId::OrdinalToPordinal, TypedObject::TotalOrder(o)) => {
                TypedObject::Poset(o.as_poset())
            }
            (FunctorId::KRelToNRel, TypedObject::Rel(r)) => TypedObject::NRel(r.clone()),
            (FunctorId::ScalarToInterval, TypedObject::Scalar(s)) => TypedObject::Interval(s.clone()),
            (FunctorId::ScalarToOrdinal, TypedObject::Scalar(s)) => {
                TypedObject::TotalOrder(TotalOrderObject::new(window_order(s)?)?)
            }
            (FunctorId::IntervalToPordinal, TypedObject::Interval(s)) => {
                TypedObject::Poset(PosetObject::new(window_order(s)?)?)
            }
            (FunctorId::NRelToSet, TypedObject::NRel(r)) => TypedObject::Set(r.base().clone()),
            (FunctorId::ProbToMeas, TypedObject::Prob(x)) => TypedObject::Meas(x.clone()),
            (FunctorId::MeasToSet, TypedObject::Meas(x)) => TypedObject::Set(SetObject::new(
                self.measure_family(x).iter().map(ToString::to_string),
            )?),
            (FunctorId::RvToProb, TypedObject::Rv(r)) => TypedObject::Prob(r.state().clone()),
            (FunctorId::StoToProb, TypedObject::Sto(p)) => {
                TypedObject::Prob(self.product_space(p.state(), p.index().len())?)
            }
            _ => return Err(self.wrong_source(category)),
        })
    }

    fn apply_morphism(&self, f: &TypedMorphism) -> Result<TypedMorphism> {
        let source = self.apply_object(f.source())?;
        let target = self.apply_object(f.target())?;
        let data = match (self.id, f.data()) {
            (_, MorphismData::Function(map)) if self.id.is_inclusion() || self.id == FunctorId::NRelToSet => {
                MorphismData::Function(map.clone())
            }
            (FunctorId::ScalarToInterval, data @ MorphismData::Semiring(_)) => data.clone(),
            (FunctorId::ScalarToOrdinal | FunctorId::IntervalToPordinal, MorphismData::Semiring(rule)) => {
                let from = semiring_of(f.source()).expect("semiring source").window_elements()?;
                let to = semiring_of(f.target()).expect("semiring target").window_elements()?;
                let map = from
                    .iter()
                    .map(|e| {
                        let image = rule.apply(e)?;
                        to.iter().position(|t| *t == image).ok_or_else(|| {
                            self.fail(format!("f({e}) = {image} lies outside the target window"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                MorphismData::Function(map)
            }
            (FunctorId::ProbToMeas, data @ MorphismData::Kernel(_)) => data.clone(),
            (FunctorId::MeasToSet, MorphismData::Kernel(k)) => {
                let from = self.measure_family(k.source());
                let to = self.measure_family(k.target());
                let map = from
                    .iter()
                    .map(|m| {
                        let image = push_measure(k, m)?;
                        to.iter().position(|t| *t == image).ok_or_else(|| {
                            self.fail(format!("the image of {m} is {image}, which is off the grid"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                MorphismData::Function(map)
            }
            (FunctorId::RvToProb, MorphismData::Rv(m)) => {
                let (TypedObject::Rv(y), TypedObject::Rv(z)) = (f.source(), f.target()) else {
                    return Err(self.wrong_source(f.category()));
                };
                MorphismData::Kernel(Kernel::deterministic(y.state(), z.state(), &m.state_map)?)
            }
            (FunctorId::StoToProb, MorphismData::Sto(m)) => {
                let (TypedObject::Sto(y), TypedObject::Sto(z)) = (f.source(), f.target()) else {
                    return Err(self.wrong_source(f.category()));
                };
                let (TypedObject::Prob(from), TypedObject::Prob(to)) = (&source, &target) else {
                    unreachable!("F_SP lands in PROB");
                };
                let steps = y.index().len();
                let (ry, rz) = (y.state().len(), z.state().len());
                let map: Vec<usize> = (0..from.len())
                    .map(|i| {
                        let image: Vec<usize> = digits(i, ry, steps)
                            .iter()
                            .zip(&m.state_maps)
                            .map(|(&s, phi)| phi[s])
                            .collect();
                        undigits(&image, rz)
                    })
                    .collect();
                MorphismData::Kernel(Kernel::deterministic(from, to, &map)?)
            }
            _ => return Err(self.wrong_source(f.category())),
        };
        check_morphism(self.id.target(), data, &source, &target)
            .map_err(|e| self.fail(format!("image is not a valid morphism: {e}")))
    }
}

/// A functor law that failed, with the offending object or morphism pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LawFailure {
    pub law: &'static str,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LawReport {
    pub identities_checked: usize,
    pub compositions_checked: usize,
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: LawReport) {
        self.identities_checked += other.identities_checked;
        self.compositions_checked += other.compositions_checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} identities, {} compositions checked",
            self.identities_checked, self.compositions_checked
        )?;
        for failure in &self.failures {
            write!(f, "\n  {} failed: {}", failure.law, failure.witness)?;
        }
        Ok(())
    }
}

fn describe(m: &TypedMorphism) -> String {
    match m.data() {
        MorphismData::Function(map) => format!("{} map {map:?}", m.category()),
        MorphismData::Semiring(rule) => format!("{} hom {rule:?}", m.category()),
        MorphismData::Kernel(k) => format!("kernel {}", k.entries()),
        MorphismData::Rv(r) => format!("RV map {:?}/{:?}", r.omega_map, r.state_map),
        MorphismData::Sto(s) => format!("STO map {:?}/{:?}", s.omega_maps, s.state_maps),
    }
}

/// Index pairs `(f, g)` with `g.source() == f.target()`, in the order of
/// `f` then `g`.
pub(crate) fn composable_pairs(morphisms: &[TypedMorphism]) -> Vec<(usize, usize)> {
    let mut distinct: Vec<&TypedObject> = Vec::new();
    let mut ends: Vec<(usize, usize)> = Vec::with_capacity(morphisms.len());
    for m in morphisms {
        let mut ids = [0; 2];
        for (slot, o) in ids.iter_mut().zip([m.source(), m.target()]) {
            *slot = match distinct.iter().position(|d| *d == o) {
                Some(i) => i,
                None => {
                    distinct.push(o);
                    distinct.len() - 1
                }
            };
        }
        ends.push((ids[0], ids[1]));
    }
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); distinct.len()];
    for (i, &(s, _)) in ends.iter().enumerate() {
        by_source[s].push(i);
    }
    ends.iter()
        .enumerate()
        .flat_map(|(f, &(_, t))| by_source[t].iter().map(move |&g| (f, g)))
        .collect()
}

/// Checks `F(id_A) = id_F(A)` for every sample object and
/// `F(g∘f) = F(g)∘F(f)` for every composable pair of sample morphisms.
pub fn verify_functor_laws<F: Functor + ?Sized>(
    functor: &F,
    objects: &[TypedObject],
    morphisms: &[TypedMorphism],
) -> LawReport {
    let mut report = LawReport::default();
    for a in objects {
        report.identities_checked += 1;
        let id = identity_morphism(a);
        let outcome = functor.apply_object(a).and_then(|fa| {
            functor
                .apply_morphism(&id)
                .map(|fid| same_morphism(&fid, &identity_morphism(&fa)))
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => report.failures.push(LawFailure {
                law: "identity",
                witness: format!("F(id) ≠ id on {a:?}"),
            }),
            Err(e) => report.failures.push(LawFailure {
                law: "identity",
                witness: format!("F(id) undefined on {a:?}: {e}"),
            }),
        }
    }
    let images: Vec<Result<TypedMorphism>> = morphisms.iter().map(|m| functor.apply_morphism(m)).collect();
    for (fi, gi) in composable_pairs(morphisms) {
        let (f, g) = (&morphisms[fi], &morphisms[gi]);
        report.compositions_checked += 1;
        let outcome = (|| -> Result<bool> {
            let gf = compose_morphism(g, f)?;
            let lhs = functor.apply_morphism(&gf)?;
            let (fg, ff) = (images[gi].as_ref().map_err(Clone::clone)?, images[fi].as_ref().map_err(Clone::clone)?);
            let rhs = compose_morphism(fg, ff)?;
            Ok(same_morphism(&lhs, &rhs))
        })();
        let witness = || format!("f = {}, g = {}", describe(f), describe(g));
        match outcome {
            Ok(true) => {}
            Ok(false) => report.failures.push(LawFailure {
                law: "composition",
                witness: witness(),
            }),
            Err(e) => report.failures.push(LawFailure {
                law: "composition",
                witness: format!("{}: {e}", witness()),
            }),
        }
    }
    report
}
