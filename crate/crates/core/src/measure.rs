//! Measures, kernels, random variables and stochastic processes on finite
//! point sets.
//!
//! Every measurable space here is a finite set with its power-set σ-algebra,
//! so integrals are finite sums and every map is measurable. A measure is a
//! weight per point; a morphism between measure families is a kernel
//! `μ(x, y)` indexed by (source point, target point) acting by
//! `n(y) = Σ_x μ(x, y)·m(x)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fvect::Matrix;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMeasurableSpace {
    points: Vec<String>,
}

impl FiniteMeasurableSpace {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(Error::Invalid(format!("duplicate point {dup:?}")));
        }
        Ok(FiniteMeasurableSpace { points })
    }

    /// The one-point space `{0}`.
    pub fn singleton() -> Self {
        FiniteMeasurableSpace {
            points: vec!["0".into()],
        }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &str) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// `Sᵀ` with points `(s_t1,…,s_tn)`, in lexicographic index order.
    pub fn power(&self, exponent: usize) -> Self {
        let mut points = vec![Vec::<usize>::new()];
        for _ in 0..exponent {
            points = points
                .into_iter()
                .flat_map(|prefix| {
                    (0..self.len()).map(move |i| {
                        let mut p = prefix.clone();
                        p.push(i);
                        p
                    })
                })
                .collect();
        }
        FiniteMeasurableSpace {
            points: points
                .into_iter()
                .map(|p| {
                    let names: Vec<&str> = p.iter().map(|&i| self.points[i].as_str()).collect();
                    format!("({})", names.join(","))
                })
                .collect(),
        }
    }
}

impl fmt::Display for FiniteMeasurableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.points.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measure<T: Scalar = Rational> {
    space: FiniteMeasurableSpace,
    weights: Vec<T>,
}

impl<T: Scalar> Measure<T> {
    pub fn new(space: FiniteMeasurableSpace, weights: Vec<T>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::Space(format!(
                "{} weights for {} points",
                weights.len(),
                space.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::Domain(format!(
                "negative weight {} at point {}",
                weights[i], space.points[i]
            )));
        }
        Ok(Measure { space, weights })
    }

    pub fn zero(space: FiniteMeasurableSpace) -> Self {
        let weights = vec![T::zero(); space.len()];
        Measure { space, weights }
    }

    /// Unit mass at one point.
    pub fn dirac(space: FiniteMeasurableSpace, point: usize) -> Self {
        let mut m = Self::zero(space);
        m.weights[point] = T::one();
        m
    }

    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.space
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn total(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, w| acc + w.clone())
    }

    /// Measure of a set of points.
    pub fn of(&self, points: &[usize]) -> T {
        points
            .iter()
            .fold(T::zero(), |acc, &i| acc + self.weights[i].clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::Space(format!("{} vs {}", self.space, other.space)));
        }
        Ok(Measure {
            space: self.space.clone(),
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, factor: &T) -> Result<Self> {
        Measure::new(
            self.space.clone(),
            self.weights.iter().map(|w| w.clone() * factor.clone()).collect(),
        )
    }

    pub fn is_probability(&self) -> bool {
        self.total().near(&T::one())
    }
}

impl<T: Scalar> fmt::Display for Measure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, w)) in self.space.points.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {w}")?;
        }
        f.write_str("}")
    }
}

/// A measure of total mass one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMeasure<T: Scalar = Rational>(Measure<T>);

impl<T: Scalar> ProbabilityMeasure<T> {
    pub fn new(space: FiniteMeasurableSpace, weights: Vec<T>) -> Result<Self> {
        Self::try_from_measure(Measure::new(space, weights)?)
    }

    pub fn try_from_measure(measure: Measure<T>) -> Result<Self> {
        if !measure.is_probability() {
            return Err(Error::Domain(format!(
                "total mass {} is not 1",
                measure.total()
            )));
        }
        Ok(ProbabilityMeasure(measure))
    }

    pub fn uniform(space: FiniteMeasurableSpace) -> Result<Self> {
        if space.is_empty() {
            return Err(Error::Domain("no probability measure on the empty set".into()));
        }
        let n = T::from_i64(space.len() as i64);
        let weights = vec![T::one() / n; space.len()];
        Ok(ProbabilityMeasure(Measure { space, weights }))
    }

    pub fn dirac(space: FiniteMeasurableSpace, point: usize) -> Self {
        ProbabilityMeasure(Measure::dirac(space, point))
    }

    pub fn measure(&self) -> &Measure<T> {
        &self.0
    }

    pub fn into_measure(self) -> Measure<T> {
        self.0
    }

    pub fn space(&self) -> &FiniteMeasurableSpace {
        &self.0.space
    }

    pub fn weights(&self) -> &[T] {
        &self.0.weights
    }
}

/// A nonnegative matrix `μ(x, y)` from `source` points (rows) to `target`
/// points (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel<T: Scalar = Rational> {
    source: FiniteMeasurableSpace,
    target: FiniteMeasurableSpace,
    entries: Matrix<T>,
}

impl<T: Scalar> Kernel<T> {
    pub fn new(
        source: FiniteMeasurableSpace,
        target: FiniteMeasurableSpace,
        entries: Matrix<T>,
    ) -> Result<Self> {
        if entries.shape() != (source.len(), target.len()) {
            return Err(Error::Space(format!(
                "kernel matrix is {}x{}, spaces have {} and {} points",
                entries.rows(),
                entries.cols(),
                source.len(),
                target.len()
            )));
        }
        for x in 0..entries.rows() {
            for y in 0..entries.cols() {
                if entries.get(x, y).is_negative() {
                    return Err(Error::Domain(format!(
                        "negative kernel entry μ({}, {})",
                        source.points[x], target.points[y]
                    )));
                }
            }
        }
        Ok(Kernel {
            source,
            target,
            entries,
        })
    }

    /// Like [`Kernel::new`] but also requires unit row sums.
    pub fn stochastic(
        source: FiniteMeasurableSpace,
        target: FiniteMeasurableSpace,
        entries: Matrix<T>,
    ) -> Result<Self> {
        let k = Self::new(source, target, entries)?;
        if let Some(x) = k.first_non_stochastic_row() {
            return Err(Error::violation(
                "row-stochastic",
                format!("row {} sums to {}", k.source.points[x], k.row_sum(x)),
            ));
        }
        Ok(k)
    }

    /// The diagonal 0/1 kernel.
    pub fn identity(space: &FiniteMeasurableSpace) -> Self {
        Kernel {
            source: space.clone(),
            target: space.clone(),
            entries: Matrix::identity(space.len()),
        }
    }

    /// The 0/1 kernel of a function between point sets (one 1 per row).
    pub fn deterministic(
        source: &FiniteMeasurableSpace,
        target: &FiniteMeasurableSpace,
        map: &[usize],
    ) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::Space(format!(
                "map of length {} is not a function {} → {}",
                map.len(),
                source,
                target
            )));
        }
        Ok(Kernel {
            source: source.clone(),
            target: target.clone(),
            entries: Matrix::from_fn(source.len(), target.len(), |x, y| {
                if map[x] == y {
                    T::one()
                } else {
                    T::zero()
                }
            }),
        })
    }

    pub fn source(&self) -> &FiniteMeasurableSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteMeasurableSpace {
        &self.target
    }

    pub fn entries(&self) -> &Matrix<T> {
        &self.entries
    }

    pub fn entry(&self, x: usize, y: usize) -> &T {
        self.entries.get(x, y)
    }

    fn row_sum(&self, x: usize) -> T {
        self.entries
            .row(x)
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone())
    }

    fn first_non_stochastic_row(&self) -> Option<usize> {
        (0..self.source.len()).find(|&x| !self.row_sum(x).near(&T::one()))
    }

    pub fn is_stochastic(&self) -> bool {
        self.first_non_stochastic_row().is_none()
    }

    /// Whether every row holds a single 1 and zeros elsewhere.
    pub fn is_deterministic(&self) -> bool {
        (0..self.source.len()).all(|x| {
            let row = self.entries.row(x);
            row.iter().filter(|v| v.is_one()).count() == 1
                && row.iter().all(|v| v.is_one() || v.is_zero())
        })
    }
}

/// `n(y) = Σ_x μ(x, y)·m(x)`.
pub fn push_measure<T: Scalar>(kernel: &Kernel<T>, m: &Measure<T>) -> Result<Measure<T>> {
    if m.space != kernel.source {
        return Err(Error::Space(format!(
            "measure on {} pushed through a kernel from {}",
            m.space, kernel.source
        )));
    }
    let weights = (0..kernel.target.len())
        .map(|y| {
            (0..kernel.source.len()).fold(T::zero(), |acc, x| {
                acc + kernel.entry(x, y).clone() * m.weights[x].clone()
            })
        })
        .collect();
    Ok(Measure {
        space: kernel.target.clone(),
        weights,
    })
}

pub fn push_probability<T: Scalar>(
    kernel: &Kernel<T>,
    p: &ProbabilityMeasure<T>,
) -> Result<ProbabilityMeasure<T>> {
    if !kernel.is_stochastic() {
        return Err(Error::violation(
            "row-stochastic",
            "probability pushed through a non-stochastic kernel",
        ));
    }
    ProbabilityMeasure::try_from_measure(push_measure(kernel, p.measure())?)
}

/// `ν ∘ μ`, i.e. `ρ(x, z) = Σ_y μ(x, y)·ν(y, z)`.
pub fn compose_kernels<T: Scalar>(nu: &Kernel<T>, mu: &Kernel<T>) -> Result<Kernel<T>> {
    if mu.target != nu.source {
        return Err(Error::Composition(format!(
            "kernel into {} followed by kernel from {}",
            mu.target, nu.source
        )));
    }
    Ok(Kernel {
        source: mu.source.clone(),
        target: nu.target.clone(),
        entries: mu.entries.mul(&nu.entries)?,
    })
}

fn grid_product<T: Scalar>(len: usize, grid: &[T]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                grid.iter().map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Elements of a measure family picked out by the one-point family: one
/// measure per choice of weights, restricted to `grid` values.
pub fn meas_elements<T: Scalar>(space: &FiniteMeasurableSpace, grid: &[T]) -> Vec<Measure<T>> {
    grid_product(space.len(), grid)
        .into_iter()
        .filter_map(|w| Measure::new(space.clone(), w).ok())
        .collect()
}

/// The probability-measure variant of [`meas_elements`]: grid weight vectors
/// with total mass one.
pub fn prob_elements<T: Scalar>(
    space: &FiniteMeasurableSpace,
    grid: &[T],
) -> Vec<ProbabilityMeasure<T>> {
    meas_elements(space, grid)
        .into_iter()
        .filter_map(|m| ProbabilityMeasure::try_from_measure(m).ok())
        .collect()
}

/// The kernel from the one-point space whose single row is `m`; the element
/// of the family that `m` corresponds to.
pub fn element_kernel<T: Scalar>(m: &Measure<T>) -> Kernel<T> {
    Kernel {
        source: FiniteMeasurableSpace::singleton(),
        target: m.space.clone(),
        entries: Matrix::from_fn(1, m.space.len(), |_, y| m.weights[y].clone()),
    }
}

/// Reads back the measure `μ(0, ·)` named by a kernel out of the one-point
/// space.
pub fn measure_of_element<T: Scalar>(kernel: &Kernel<T>) -> Result<Measure<T>> {
    if kernel.source.len() != 1 {
        return Err(Error::Space("element kernels start at a one-point space".into()));
    }
    Measure::new(kernel.target.clone(), kernel.entries.row(0).to_vec())
}

fn check_function(map: &[usize], from: usize, to: usize, what: &str) -> Result<()> {
    if map.len() != from {
        return Err(Error::Invalid(format!(
            "{what} has {} images for {from} points",
            map.len()
        )));
    }
    if let Some(i) = map.iter().position(|&j| j >= to) {
        return Err(Error::Invalid(format!(
            "{what} sends point {i} outside its codomain"
        )));
    }
    Ok(())
}

/// `X : Ω → S` together with a probability on `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    omega: FiniteMeasurableSpace,
    prob: ProbabilityMeasure,
    state: FiniteMeasurableSpace,
    x_map: Vec<usize>,
}

impl RandomVariable {
    pub fn new(
        prob: ProbabilityMeasure,
        state: FiniteMeasurableSpace,
        x_map: Vec<usize>,
    ) -> Result<Self> {
        let omega = prob.space().clone();
        check_function(&x_map, omega.len(), state.len(), "random variable")?;
        Ok(RandomVariable {
            omega,
            prob,
            state,
            x_map,
        })
    }

    /// Both spaces are a single point.
    pub fn terminal() -> Self {
        let point = FiniteMeasurableSpace::singleton();
        RandomVariable {
            omega: point.clone(),
            prob: ProbabilityMeasure::dirac(point.clone(), 0),
            state: point,
            x_map: vec![0],
        }
    }

    pub fn omega(&self) -> &FiniteMeasurableSpace {
        &self.omega
    }

    pub fn prob(&self) -> &ProbabilityMeasure {
        &self.prob
    }

    pub fn state(&self) -> &FiniteMeasurableSpace {
        &self.state
    }

    pub fn x_map(&self) -> &[usize] {
        &self.x_map
    }

    /// Distribution of `X` on the state space.
    pub fn law(&self) -> ProbabilityMeasure {
        let k = Kernel::deterministic(&self.omega, &self.state, &self.x_map)
            .expect("x_map validated on construction");
        push_probability(&k, &self.prob).expect("deterministic kernels are stochastic")
    }
}

/// A family `{X_t}` of random variables on a shared `Ω`, indexed by a finite
/// totally ordered set (given in order).
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticProcess {
    omega: FiniteMeasurableSpace,
    prob: ProbabilityMeasure,
    state: FiniteMeasurableSpace,
    index: Vec<String>,
    x_maps: Vec<Vec<usize>>,
}

impl StochasticProcess {
    pub fn new(
        prob: ProbabilityMeasure,
        state: FiniteMeasurableSpace,
        index: Vec<String>,
        x_maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let omega = prob.space().clone();
        if index.len() != x_maps.len() {
            return Err(Error::Invalid(format!(
                "{} index values but {} maps",
                index.len(),
                x_maps.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = index.iter().find(|t| !seen.insert(t.as_str())) {
            return Err(Error::Invalid(format!("duplicate index value {dup:?}")));
        }
        for (t, map) in index.iter().zip(&x_maps) {
            check_function(map, omega.len(), state.len(), &format!("X_{t}"))?;
        }
        Ok(StochasticProcess {
            omega,
            prob,
            state,
            index,
            x_maps,
        })
    }

    pub fn terminal(index: Vec<String>) -> Self {
        let point = FiniteMeasurableSpace::singleton();
        let x_maps = vec![vec![0]; index.len()];
        StochasticProcess {
            omega: point.clone(),
            prob: ProbabilityMeasure::dirac(point.clone(), 0),
            state: point,
            index,
            x_maps,
        }
    }

    pub fn omega(&self) -> &FiniteMeasurableSpace {
        &self.omega
    }

    pub fn prob(&self) -> &ProbabilityMeasure {
        &self.prob
    }

    pub fn state(&self) -> &FiniteMeasurableSpace {
        &self.state
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    pub fn x_maps(&self) -> &[Vec<usize>] {
        &self.x_maps
    }

    /// The random variable at one index position.
    pub fn at(&self, t: usize) -> RandomVariable {
        RandomVariable {
            omega: self.omega.clone(),
            prob: self.prob.clone(),
            state: self.state.clone(),
            x_map: self.x_maps[t].clone(),
        }
    }
}

/// A point `(ω, X(ω))` of the graph of a random variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RvElement {
    pub omega_point: usize,
    pub state_point: usize,
}

pub fn rv_elements(rv: &RandomVariable) -> Vec<RvElement> {
    rv.x_map
        .iter()
        .enumerate()
        .map(|(omega_point, &state_point)| RvElement {
            omega_point,
            state_point,
        })
        .collect()
}

/// All index-wise choices `{(x_t, X_t(x_t))}`; there are `|Ω|^|T|` of them,
/// listed with the first index varying slowest.
pub fn sto_elements(process: &StochasticProcess) -> Vec<Vec<RvElement>> {
    let mut families = vec![Vec::with_capacity(process.index.len())];
    for map in &process.x_maps {
        families = families
            .into_iter()
            .flat_map(|prefix| {
                map.iter().enumerate().map(move |(omega_point, &state_point)| {
                    let mut f = prefix.clone();
                    f.push(RvElement {
                        omega_point,
                        state_point,
                    });
                    f
                })
            })
            .collect();
    }
    families
}

/// A morphism of random variables: maps on outcomes and states making the
/// square `φ₂ ∘ X_Y = X_Z ∘ φ₁` commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RvMorphism {
    pub omega_map: Vec<usize>,
    pub state_map: Vec<usize>,
}

fn check_square(
    omega_map: &[usize],
    state_map: &[usize],
    x_source: &[usize],
    x_target: &[usize],
    source_omega: &FiniteMeasurableSpace,
    label: &str,
) -> Result<()> {
    for (w, &x) in x_source.iter().enumerate() {
        let via_state = state_map[x];
        let via_omega = x_target[omega_map[w]];
        if via_state != via_omega {
            return Err(Error::Commutation {
                witness: format!("{label}ω = {}", source_omega.points()[w]),
            });
        }
    }
    Ok(())
}

pub fn check_rv_morphism(
    omega_map: Vec<usize>,
    state_map: Vec<usize>,
    source: &RandomVariable,
    target: &RandomVariable,
) -> Result<RvMorphism> {
    check_function(&omega_map, source.omega.len(), target.omega.len(), "φ₁")?;
    check_function(&state_map, source.state.len(), target.state.len(), "φ₂")?;
    check_square(
        &omega_map,
        &state_map,
        &source.x_map,
        &target.x_map,
        &source.omega,
        "",
    )?;
    Ok(RvMorphism {
        omega_map,
        state_map,
    })
}

/// Index-wise families of outcome and state maps, one square per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoMorphism {
    pub omega_maps: Vec<Vec<usize>>,
    pub state_maps: Vec<Vec<usize>>,
}

pub fn check_sto_morphism(
    omega_maps: Vec<Vec<usize>>,
    state_maps: Vec<Vec<usize>>,
    source: &StochasticProcess,
    target: &StochasticProcess,
) -> Result<StoMorphism> {
    if source.index != target.index {
        return Err(Error::Invalid(
            "processes are indexed by different sets".into(),
        ));
    }
    let n = source.index.len();
    if omega_maps.len() != n || state_maps.len() != n {
        return Err(Error::Invalid(format!(
            "expected {n} maps per family, got {} and {}",
            omega_maps.len(),
            state_maps.len()
        )));
    }
    for t in 0..n {
        let name = &source.index[t];
        check_function(
            &omega_maps[t],
            source.omega.len(),
            target.omega.len(),
            &format!("φ₁,{name}"),
        )?;
        check_function(
            &state_maps[t],
            source.state.len(),
            target.state.len(),
            &format!("φ₂,{name}"),
        )?;
        check_square(
            &omega_maps[t],
            &state_maps[t],
            &source.x_maps[t],
            &target.x_maps[t],
            &source.omega,
            &format!("t = {name}, "),
        )?;
    }
    Ok(StoMorphism {
        omega_maps,
        state_maps,
    })
}

pub(crate) fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

impl RvMorphism {
    pub fn identity(rv: &RandomVariable) -> Self {
        RvMorphism {
            omega_map: (0..rv.omega.len()).collect(),
            state_map: (0..rv.state.len()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RvMorphism) -> RvMorphism {
        RvMorphism {
            omega_map: compose_maps(&self.omega_map, &first.omega_map),
            state_map: compose_maps(&self.state_map, &first.state_map),
        }
    }
}

impl StoMorphism {
    pub fn identity(process: &StochasticProcess) -> Self {
        let n = process.index.len();
        StoMorphism {
            omega_maps: vec![(0..process.omega.len()).collect(); n],
            state_maps: vec![(0..process.state.len()).collect(); n],
        }
    }

    /// `self ∘ first`, index by index (outcome maps with outcome maps, state
    /// maps with state maps).
    pub fn after(&self, first: &StoMorphism) -> StoMorphism {
        StoMorphism {
            omega_maps: self
                .omega_maps
                .iter()
                .zip(&first.omega_maps)
                .map(|(g, f)| compose_maps(g, f))
                .collect(),
            state_maps: self
                .state_maps
                .iter()
                .zip(&first.state_maps)
                .map(|(g, f)| compose_maps(g, f))
                .collect(),
        }
    }
}
