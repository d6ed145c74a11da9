//! Bundles, sheaves of vector spaces over face categories, and global
//! sections.

use std::collections::BTreeMap;
use std::fmt;

use crate::asc::{attachment_chains, face_category, Attachment, Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fvect::{apply, compose, pseudo_distance, LinearMap, Matrix, Vector, VectorSpace};
use crate::scalar::{Rational, Scalar};

/// Default cap on the number of grid assignments enumerated.
pub const DEFAULT_GRID_LIMIT: u128 = 1 << 20;

/// A projection `p : 𝒜 → X` from a stalk space onto a base set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    base: Vec<String>,
    stalk_space: Vec<String>,
    projection: Vec<usize>,
}

impl Bundle {
    pub fn new(base: Vec<String>, stalk_space: Vec<String>, projection: Vec<usize>) -> Result<Self> {
        if projection.len() != stalk_space.len() {
            return Err(Error::Invalid(format!(
                "projection has {} images for {} stalk points",
                projection.len(),
                stalk_space.len()
            )));
        }
        if let Some(i) = projection.iter().position(|&x| x >= base.len()) {
            return Err(Error::Invalid(format!(
                "{} projects outside the base",
                stalk_space[i]
            )));
        }
        Ok(Bundle {
            base,
            stalk_space,
            projection,
        })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn stalk_space(&self) -> &[String] {
        &self.stalk_space
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `p⁻¹(x)`, as stalk-space indices.
    pub fn stalk(&self, x: usize) -> Vec<usize> {
        (0..self.stalk_space.len())
            .filter(|&a| self.projection[a] == x)
            .collect()
    }
}

/// Every `e : X → 𝒜` with `p ∘ e = id`, one stalk point per base point. The
/// first base point varies slowest.
pub fn bundle_sections(bundle: &Bundle) -> Vec<Vec<usize>> {
    let mut sections = vec![Vec::with_capacity(bundle.base.len())];
    for x in 0..bundle.base.len() {
        let stalk = bundle.stalk(x);
        sections = sections
            .into_iter()
            .flat_map(|prefix| {
                stalk.iter().map(move |&a| {
                    let mut e = prefix.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    sections
}

/// All bundle morphisms into `(X, id, X)`, found by trying every map
/// `𝒜 → X`.
pub fn bundle_morphisms_to_identity(bundle: &Bundle) -> Vec<Vec<usize>> {
    let (n, k) = (bundle.stalk_space.len(), bundle.base.len());
    let mut found = Vec::new();
    if k == 0 {
        if n == 0 {
            found.push(Vec::new());
        }
        return found;
    }
    let mut f = vec![0usize; n];
    loop {
        // id ∘ f = p
        if f == bundle.projection {
            found.push(f.clone());
        }
        let mut i = 0;
        while i < n && f[i] + 1 == k {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        f[i] += 1;
    }
    found
}

/// Whether `(X, id, X)` receives exactly one morphism from the bundle,
/// namely `p`.
pub fn bundle_terminality_check(bundle: &Bundle) -> bool {
    let morphisms = bundle_morphisms_to_identity(bundle);
    morphisms.len() == 1 && morphisms[0] == bundle.projection
}

/// A functor from the face category of a complex to vector spaces. Only
/// non-identity attachments carry a stored restriction map; identities are
/// implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Sheaf<T: Scalar = Rational> {
    complex: SimplicialComplex,
    stalks: BTreeMap<Simplex, VectorSpace>,
    restrictions: BTreeMap<Attachment, LinearMap<T>>,
}

impl<T: Scalar> Sheaf<T> {
    /// Requires a stalk on every face and a restriction on every
    /// non-identity attachment, with matching shapes. Restrictions given on
    /// identity attachments must be identities.
    pub fn new(
        complex: SimplicialComplex,
        stalks: BTreeMap<Simplex, VectorSpace>,
        restrictions: BTreeMap<Attachment, LinearMap<T>>,
    ) -> Result<Self> {
        for face in complex.faces() {
            if !stalks.contains_key(face) {
                return Err(Error::IncompleteSheaf(format!("no stalk on {face}")));
            }
        }
        if let Some(face) = stalks.keys().find(|f| !complex.contains(f)) {
            return Err(Error::IncompleteSheaf(format!("stalk on {face}, which is not a face")));
        }
        let category = face_category(&complex);
        for a in category.attachments() {
            if !restrictions.contains_key(&a) {
                return Err(Error::IncompleteSheaf(format!("no restriction on {a}")));
            }
        }
        let mut kept = BTreeMap::new();
        for (a, map) in restrictions {
            if category.hom(&a.from, &a.to).is_none() {
                return Err(Error::IncompleteSheaf(format!("{a} is not an attachment")));
            }
            if map.domain().dim() != stalks[&a.from].dim() || map.codomain().dim() != stalks[&a.to].dim() {
                return Err(Error::Space(format!(
                    "restriction on {a} is {}x{}, stalks have dimensions {} and {}",
                    map.matrix().rows(),
                    map.matrix().cols(),
                    stalks[&a.from].dim(),
                    stalks[&a.to].dim()
                )));
            }
            let map = LinearMap::new(stalks[&a.from].clone(), stalks[&a.to].clone(), map.matrix().clone())?;
            if a.is_identity() {
                if !map.matrix().near(&Matrix::identity(map.domain().dim())) {
                    return Err(Error::violation("identity", format!("restriction on {a} is not the identity")));
                }
                continue;
            }
            kept.insert(a, map);
        }
        Ok(Sheaf {
            complex,
            stalks,
            restrictions: kept,
        })
    }

    /// Like [`Sheaf::new`] but takes bare matrices, labelling them with the
    /// stalks they connect.
    pub fn from_matrices(
        complex: SimplicialComplex,
        stalks: BTreeMap<Simplex, VectorSpace>,
        matrices: BTreeMap<Attachment, Matrix<T>>,
    ) -> Result<Self> {
        let mut restrictions = BTreeMap::new();
        for (a, m) in matrices {
            let (from, to) = match (stalks.get(&a.from), stalks.get(&a.to)) {
                (Some(from), Some(to)) => (from.clone(), to.clone()),
                _ => return Err(Error::IncompleteSheaf(format!("no stalk at an end of {a}"))),
            };
            restrictions.insert(a, LinearMap::new(from, to, m)?);
        }
        Self::new(complex, stalks, restrictions)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn stalk(&self, face: &Simplex) -> Option<&VectorSpace> {
        self.stalks.get(face)
    }

    pub fn stalks(&self) -> &BTreeMap<Simplex, VectorSpace> {
        &self.stalks
    }

    /// The stored restriction for a non-identity attachment.
    pub fn restriction(&self, attachment: &Attachment) -> Option<&LinearMap<T>> {
        self.restrictions.get(attachment)
    }

    pub fn restrictions(&self) -> &BTreeMap<Attachment, LinearMap<T>> {
        &self.restrictions
    }

    /// Replaces one stored restriction matrix without any consistency check,
    /// which is what mutation tests need.
    pub fn with_matrix(&self, attachment: &Attachment, matrix: Matrix<T>) -> Result<Self> {
        let old = self
            .restrictions
            .get(attachment)
            .ok_or_else(|| Error::IncompleteSheaf(format!("no restriction on {attachment}")))?;
        let mut out = self.clone();
        out.restrictions.insert(
            attachment.clone(),
            LinearMap::new(old.domain().clone(), old.codomain().clone(), matrix)?,
        );
        Ok(out)
    }
}

/// A chain whose two-step restriction disagrees with the direct one.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainViolation {
    pub chain: Chain,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F({}) ≠ F({}) ∘ F({})",
            self.chain.composite(),
            self.chain.second,
            self.chain.first
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SheafReport {
    pub chains_checked: usize,
    pub violations: Vec<ChainViolation>,
}

impl SheafReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `F(x→z) = F(y→z) ∘ F(x→y)` on every chain of two attachments,
/// exactly for rationals and at the float tolerance otherwise. Identities
/// were checked on construction.
pub fn validate_sheaf<T: Scalar>(sheaf: &Sheaf<T>) -> Result<SheafReport> {
    let category = face_category(&sheaf.complex);
    let mut report = SheafReport::default();
    for chain in attachment_chains(&category) {
        report.chains_checked += 1;
        let get = |a: &Attachment| {
            sheaf
                .restrictions
                .get(a)
                .ok_or_else(|| Error::IncompleteSheaf(format!("no restriction on {a}")))
        };
        let direct = get(&chain.composite())?;
        let two_step = compose(get(&chain.second)?, get(&chain.first)?)?;
        if !direct.matrix().near(two_step.matrix()) {
            report.violations.push(ChainViolation { chain });
        }
    }
    Ok(report)
}

/// One vector per face.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T: Scalar = Rational> {
    values: BTreeMap<Simplex, Vector<T>>,
}

impl<T: Scalar> Default for Assignment<T> {
    fn default() -> Self {
        Assignment {
            values: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> Assignment<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, face: Simplex, value: Vector<T>) -> Option<Vector<T>> {
        self.values.insert(face, value)
    }

    pub fn with(mut self, face: Simplex, value: Vector<T>) -> Self {
        self.values.insert(face, value);
        self
    }

    pub fn get(&self, face: &Simplex) -> Option<&Vector<T>> {
        self.values.get(face)
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Vector<T>> {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionViolation {
    pub attachment: Attachment,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionReport {
    pub is_section: bool,
    /// In face order of the attachments.
    pub violations: Vec<SectionViolation>,
    pub max_violation: f64,
}

impl fmt::Display for SectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_section {
            write!(f, "global section (max violation {})", self.max_violation)?;
        } else {
            write!(f, "not a global section (max violation {})", self.max_violation)?;
        }
        for v in &self.violations {
            write!(f, "\n  {}: distance {}", v.attachment, v.distance)?;
        }
        Ok(())
    }
}

fn check_assignment<T: Scalar>(sheaf: &Sheaf<T>, assignment: &Assignment<T>) -> Result<()> {
    for (face, space) in &sheaf.stalks {
        match assignment.values.get(face) {
            None => return Err(Error::IncompleteAssignment(format!("no value on {face}"))),
            Some(v) if v.space().dim() != space.dim() => {
                return Err(Error::Space(format!(
                    "value on {face} has dimension {}, stalk has {}",
                    v.space().dim(),
                    space.dim()
                )))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Compares `F(x→y)(a_x)` with `a_y` on every attachment. A mismatch counts
/// when its distance exceeds `tolerance`; at tolerance zero exact fields
/// compare coordinates directly.
pub fn is_global_section<T: Scalar>(
    sheaf: &Sheaf<T>,
    assignment: &Assignment<T>,
    tolerance: f64,
) -> Result<SectionReport> {
    check_assignment(sheaf, assignment)?;
    let mut violations = Vec::new();
    let mut max_violation = 0.0f64;
    for (a, map) in &sheaf.restrictions {
        let pushed = apply(map, &relabel(&assignment.values[&a.from], map.domain())?)?;
        let target = relabel(&assignment.values[&a.to], map.codomain())?;
        let distance = pseudo_distance(&pushed, &target)?;
        max_violation = max_violation.max(distance);
        let violated = if T::is_exact() && tolerance == 0.0 {
            pushed.coords() != target.coords()
        } else {
            !(distance <= tolerance)
        };
        if violated {
            violations.push(SectionViolation {
                attachment: a.clone(),
                distance,
            });
        }
    }
    Ok(SectionReport {
        is_section: violations.is_empty(),
        violations,
        max_violation,
    })
}

fn relabel<T: Scalar>(v: &Vector<T>, space: &VectorSpace) -> Result<Vector<T>> {
    if v.space() == space {
        Ok(v.clone())
    } else {
        Vector::new(space.clone(), v.coords().to_vec())
    }
}

/// All assignments with every coordinate drawn from `grid` that pass
/// [`is_global_section`] at tolerance zero. Brute force; refuses to run
/// past `limit` candidates.
pub fn enumerate_sections_over_grid<T: Scalar>(
    sheaf: &Sheaf<T>,
    grid: &[T],
    limit: u128,
) -> Result<Vec<Assignment<T>>> {
    let faces: Vec<(&Simplex, &VectorSpace)> = sheaf.stalks.iter().collect();
    let slots: usize = faces.iter().map(|(_, s)| s.dim()).sum();
    let needed = (grid.len() as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::Bound {
            what: format!("grid assignments ({}^{slots})", grid.len()),
            needed,
            limit,
        });
    }
    let mut out = Vec::new();
    if grid.is_empty() && slots > 0 {
        return Ok(out);
    }
    let mut digits = vec![0usize; slots];
    loop {
        let mut assignment = Assignment::new();
        let mut offset = 0;
        for (face, space) in &faces {
            let coords = digits[offset..offset + space.dim()]
                .iter()
                .map(|&d| grid[d].clone())
                .collect();
            offset += space.dim();
            assignment.insert((*face).clone(), Vector::new((*space).clone(), coords)?);
        }
        if is_global_section(sheaf, &assignment, 0.0)?.is_section {
            out.push(assignment);
        }
        let mut i = slots;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < grid.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}
