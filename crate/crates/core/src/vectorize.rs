//! Functors from the data-type categories into finite-dimensional vector
//! spaces.
//!
//! Sets go to free vector spaces. Relations go through the reflexive
//! extension `R̂`: each base element becomes the indicator vector of the
//! extended tuples it occurs in. Measure families become signed-measure
//! spaces `ℝ^X`, and random variables and processes are vectorized through
//! their graphs.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fvect::{compose, span, LinearMap, Matrix, Subspace, Vector, VectorSpace};
use crate::hierarchy::{composable_pairs, window_order, LawFailure, LawReport};
use crate::measure::{FiniteMeasurableSpace, Kernel, Measure, RandomVariable, StochasticProcess};
use crate::scalar::Rational;
use crate::typesys::{
    compose_morphism, identity_morphism, MorphismData, RelObject, SemiringObject, SetObject,
    TypedMorphism, TypedObject,
};

/// `ℝ[S]`, one basis vector per element.
pub fn set_to_fvect(set: &SetObject) -> VectorSpace {
    VectorSpace::new(set.elements().iter().cloned()).expect("set elements are distinct")
}

/// The linear extension of a set map: column `s` is the basis vector of
/// `f(s)`, so applying it sums coefficients over preimages.
pub fn set_map_to_linear(from: &SetObject, to: &SetObject, map: &[usize]) -> Result<LinearMap> {
    if map.len() != from.len() || map.iter().any(|&t| t >= to.len()) {
        return Err(Error::Invalid(format!("map {map:?} is not a function {from} → {to}")));
    }
    let matrix = Matrix::from_fn(to.len(), from.len(), |t, s| {
        if map[s] == t {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    LinearMap::new(set_to_fvect(from), set_to_fvect(to), matrix)
}

/// A relation extended by every diagonal tuple `⟨s,…,s⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct RHat {
    relation: RelObject,
    extended: Vec<Vec<usize>>,
}

impl RHat {
    /// Original tuples in input order, then the missing diagonal tuples in
    /// base-set order.
    pub fn new(relation: &RelObject) -> Self {
        let mut extended: Vec<Vec<usize>> = relation.tuples().to_vec();
        let present: HashSet<Vec<usize>> = extended.iter().cloned().collect();
        for i in 0..relation.base().len() {
            let diagonal = vec![i; relation.arity()];
            if !present.contains(&diagonal) {
                extended.push(diagonal);
            }
        }
        RHat {
            relation: relation.clone(),
            extended,
        }
    }

    pub fn relation(&self) -> &RelObject {
        &self.relation
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.extended
    }

    pub fn len(&self) -> usize {
        self.extended.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extended.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.extended
            .iter()
            .map(|t| self.relation.tuple_label(t))
            .collect()
    }
}

/// The image of a relation object: `ℝ[R̂]` with one indicator vector per
/// base element (in base-set order) and their span.
#[derive(Debug, Clone)]
pub struct RelationVectors {
    pub rhat: RHat,
    pub ambient: VectorSpace,
    pub vectors: Vec<Vector>,
    pub subspace: Subspace,
}

impl RelationVectors {
    /// The span with the base elements as its basis, which is where the
    /// images of relation morphisms act.
    pub fn coordinate_space(&self) -> VectorSpace {
        set_to_fvect(self.rhat.relation.base())
    }
}

pub fn krel_to_fvect(rel: &RelObject) -> RelationVectors {
    let rhat = RHat::new(rel);
    let ambient = VectorSpace::new(rhat.labels()).expect("extended tuples are distinct");
    let vectors: Vec<Vector> = (0..rel.base().len())
        .map(|i| {
            let coords = rhat
                .tuples()
                .iter()
                .map(|t| {
                    if t.contains(&i) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            ambient.vector(coords).expect("one coordinate per tuple")
        })
        .collect();
    let subspace = span(&ambient, vectors.clone()).expect("vectors live in the ambient space");
    RelationVectors {
        rhat,
        ambient,
        vectors,
        subspace,
    }
}

/// The image of a relation-preserving map, in the base-element bases of the
/// two spans: the vector for `sᵢ` goes to the vector for `f(sᵢ)`.
pub fn krel_map_to_linear(f: &TypedMorphism) -> Result<LinearMap> {
    match (f.source().base_set(), f.target().base_set(), f.function()) {
        (Some(from), Some(to), Some(map)) => set_map_to_linear(&from, &to, map),
        _ => Err(Error::Invalid("not a relation morphism".into())),
    }
}

/// Partial and total orders use the binary-relation construction on their
/// order pairs.
pub fn pordinal_to_fvect(order: &RelObject) -> RelationVectors {
    krel_to_fvect(order)
}

/// A windowed semiring through its order relation.
pub fn semiring_to_fvect(semiring: &SemiringObject) -> Result<RelationVectors> {
    Ok(krel_to_fvect(&window_order(semiring)?))
}

/// `ℝ^X`: signed measures on a finite space, with the points as basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMeasureSpace {
    space: FiniteMeasurableSpace,
    vector_space: VectorSpace,
}

impl SignedMeasureSpace {
    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.space
    }

    pub fn vector_space(&self) -> &VectorSpace {
        &self.vector_space
    }

    pub fn dim(&self) -> usize {
        self.vector_space.dim()
    }

    pub fn vector(&self, m: &Measure) -> Result<Vector> {
        if m.space() != &self.space {
            return Err(Error::Space(format!("measure on {} used in ℝ^{}", m.space(), self.space)));
        }
        self.vector_space.vector(m.weights().to_vec())
    }
}

pub fn meas_to_fvect(space: &FiniteMeasurableSpace) -> SignedMeasureSpace {
    SignedMeasureSpace {
        space: space.clone(),
        vector_space: VectorSpace::new(space.points().iter().cloned())
            .expect("points are distinct"),
    }
}

/// Probability families sit inside the same signed-measure space.
pub fn prob_to_fvect(space: &FiniteMeasurableSpace) -> SignedMeasureSpace {
    meas_to_fvect(space)
}

/// Entry `(y, x)` is `μ(x, y)`, so applying the matrix pushes a measure
/// forward.
pub fn kernel_to_linear(k: &Kernel) -> LinearMap {
    LinearMap::new(
        meas_to_fvect(k.source()).vector_space,
        meas_to_fvect(k.target()).vector_space,
        k.entries().transpose(),
    )
    .expect("kernel shape matches its spaces")
}

fn graph_labels(omega: &FiniteMeasurableSpace, state: &FiniteMeasurableSpace, x: &[usize]) -> Vec<String> {
    x.iter()
        .enumerate()
        .map(|(w, &s)| format!("({},{})", omega.points()[w], state.points()[s]))
        .collect()
}

/// `ℝ[{(ω, X(ω))}]`, one basis vector per outcome.
pub fn rv_to_fvect(rv: &RandomVariable) -> VectorSpace {
    VectorSpace::new(graph_labels(rv.omega(), rv.state(), rv.x_map())).expect("one point per outcome")
}

/// `ℝ[{(t, ω, X_t(ω))}]`, ordered by index value then outcome.
pub fn sto_to_fvect(process: &StochasticProcess) -> VectorSpace {
    let labels = process.index().iter().zip(process.x_maps()).flat_map(|(t, x)| {
        x.iter().enumerate().map(move |(w, &s)| {
            format!(
                "({t},{},{})",
                process.omega().points()[w],
                process.state().points()[s]
            )
        })
    });
    VectorSpace::new(labels.collect::<Vec<_>>()).expect("one point per index and outcome")
}

fn graph_map(from: VectorSpace, to: VectorSpace, map: &[usize]) -> Result<LinearMap> {
    let matrix = Matrix::from_fn(to.dim(), from.dim(), |t, s| {
        if map[s] == t {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    LinearMap::new(from, to, matrix)
}

/// The vector space of any supported object.
pub fn vectorize_object(object: &TypedObject) -> Result<VectorSpace> {
    Ok(match object {
        TypedObject::Set(_) | TypedObject::Bool(_) => set_to_fvect(&object.base_set().expect("set")),
        // The coordinate space of the span is the base set's free space, so
        // the span itself is not built here.
        TypedObject::Rel(r) | TypedObject::NRel(r) => set_to_fvect(r.base()),
        TypedObject::Poset(p) => set_to_fvect(p.base()),
        TypedObject::TotalOrder(o) => set_to_fvect(o.base()),
        TypedObject::Interval(s) | TypedObject::Scalar(s) => set_to_fvect(window_order(s)?.base()),
        TypedObject::Meas(x) | TypedObject::Prob(x) => meas_to_fvect(x).vector_space,
        TypedObject::Rv(r) => rv_to_fvect(r),
        TypedObject::Sto(p) => sto_to_fvect(p),
    })
}

/// The linear map of any supported morphism.
pub fn vectorize_morphism(f: &TypedMorphism) -> Result<LinearMap> {
    let from = vectorize_object(f.source())?;
    let to = vectorize_object(f.target())?;
    match (f.data(), f.source(), f.target()) {
        (MorphismData::Function(map), _, _) => graph_map(from, to, map),
        (
            MorphismData::Semiring(rule),
            TypedObject::Interval(a) | TypedObject::Scalar(a),
            TypedObject::Interval(b) | TypedObject::Scalar(b),
        ) => {
            let source = a.window_elements()?;
            let target = b.window_elements()?;
            let map = source
                .iter()
                .map(|e| {
                    let image = rule.apply(e)?;
                    target.iter().position(|t| *t == image).ok_or_else(|| {
                        Error::Domain(format!("f({e}) = {image} lies outside the target window"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            graph_map(from, to, &map)
        }
        (MorphismData::Kernel(k), _, _) => Ok(kernel_to_linear(k)),
        (MorphismData::Rv(m), _, _) => graph_map(from, to, &m.omega_map),
        (MorphismData::Sto(m), TypedObject::Sto(y), TypedObject::Sto(z)) => {
            let (ny, nz) = (y.omega().len(), z.omega().len());
            let map: Vec<usize> = m
                .omega_maps
                .iter()
                .enumerate()
                .flat_map(|(t, phi)| phi.iter().map(move |&w| t * nz + w))
                .collect();
            debug_assert_eq!(map.len(), y.index().len() * ny);
            graph_map(from, to, &map)
        }
        _ => Err(Error::Invalid("morphism data does not match its objects".into())),
    }
}

/// Checks `V(id) = id` and `V(g∘f) = V(g)·V(f)` exactly over the samples.
pub fn verify_vectorization_laws(objects: &[TypedObject], morphisms: &[TypedMorphism]) -> LawReport {
    let mut report = LawReport::default();
    for a in objects {
        report.identities_checked += 1;
        let outcome = vectorize_morphism(&identity_morphism(a))
            .and_then(|m| Ok(m == LinearMap::identity(&vectorize_object(a)?)));
        if !matches!(outcome, Ok(true)) {
            report.failures.push(LawFailure {
                law: "identity",
                witness: format!("{a:?}: {outcome:?}"),
            });
        }
    }
    let images: Vec<Result<LinearMap>> = morphisms.iter().map(vectorize_morphism).collect();
    for (fi, gi) in composable_pairs(morphisms) {
        let (f, g) = (&morphisms[fi], &morphisms[gi]);
        report.compositions_checked += 1;
        let outcome = (|| -> Result<bool> {
            let lhs = vectorize_morphism(&compose_morphism(g, f)?)?;
            let (vg, vf) = (images[gi].as_ref().map_err(Clone::clone)?, images[fi].as_ref().map_err(Clone::clone)?);
            Ok(lhs == compose(vg, vf)?)
        })();
        if !matches!(outcome, Ok(true)) {
            report.failures.push(LawFailure {
                law: "composition",
                witness: format!("{:?} then {:?}: {outcome:?}", f.data(), g.data()),
            });
        }
    }
    report
}
