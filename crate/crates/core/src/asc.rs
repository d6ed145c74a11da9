//! Abstract simplicial complexes and their face categories.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A nonempty set of vertices, stored sorted.
///
/// Simplices order first by dimension and then lexicographically, so
/// vertices come before edges and so on. This is the "face order" used for
/// every deterministic listing in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<String>);

impl Simplex {
    pub fn new<I, S>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        let before = vertices.len();
        vertices.dedup();
        if vertices.len() != before {
            return Err(Error::Simplex("repeated vertex".into()));
        }
        if vertices.is_empty() {
            return Err(Error::Simplex("the empty simplex is not a face".into()));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: impl Into<String>) -> Self {
        Simplex(vec![v.into()])
    }

    pub fn vertices(&self) -> &[String] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_subface_of(&self, other: &Simplex) -> bool {
        // Both sorted: merge walk.
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// All nonempty subsets of the vertex set, including the simplex itself.
    pub fn subfaces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i].clone())
                        .collect(),
                )
            })
            .collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    faces: BTreeSet<Simplex>,
}

/// Checks downward closure and returns the complex, or every missing
/// subface.
pub fn validate_complex(faces: impl IntoIterator<Item = Simplex>) -> Result<SimplicialComplex> {
    let faces: BTreeSet<Simplex> = faces.into_iter().collect();
    let missing: BTreeSet<Simplex> = faces
        .iter()
        .flat_map(Simplex::subfaces)
        .filter(|s| !faces.contains(s))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Closure {
            missing: missing.into_iter().collect(),
        });
    }
    Ok(SimplicialComplex { faces })
}

impl SimplicialComplex {
    /// The downward closure of a list of (maximal) faces.
    pub fn from_maximal(faces: impl IntoIterator<Item = Simplex>) -> Self {
        let faces = faces.into_iter().flat_map(|s| s.subfaces()).collect();
        SimplicialComplex { faces }
    }

    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: &Simplex) -> bool {
        self.faces.contains(face)
    }

    pub fn maximal_faces(&self) -> Vec<Simplex> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g != *f && f.is_subface_of(g)))
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> Vec<&Simplex> {
        self.faces.iter().filter(|f| f.dimension() == 0).collect()
    }
}

/// An attachment `from → to` between faces, `from ⊆ to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attachment {
    pub from: Simplex,
    pub to: Simplex,
}

impl Attachment {
    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.from, self.to)
    }
}

/// Composable pair `first = x→y`, `second = y→z` with composite `x→z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub first: Attachment,
    pub second: Attachment,
}

impl Chain {
    pub fn composite(&self) -> Attachment {
        Attachment {
            from: self.first.from.clone(),
            to: self.second.to.clone(),
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}→{}", self.first.from, self.first.to, self.second.to)
    }
}

/// FACE(X): faces as objects, one morphism per subface pair.
#[derive(Debug, Clone)]
pub struct FaceCategory {
    objects: Vec<Simplex>,
    // object index → indices of faces containing it (including itself)
    up: BTreeMap<usize, Vec<usize>>,
}

pub fn face_category(complex: &SimplicialComplex) -> FaceCategory {
    let objects: Vec<Simplex> = complex.faces().cloned().collect();
    let up = (0..objects.len())
        .map(|i| {
            let above = (0..objects.len())
                .filter(|&j| objects[i].is_subface_of(&objects[j]))
                .collect();
            (i, above)
        })
        .collect();
    FaceCategory { objects, up }
}

impl FaceCategory {
    pub fn objects(&self) -> &[Simplex] {
        &self.objects
    }

    /// The unique morphism `x → y`, if `x` is a subface of `y`.
    pub fn hom(&self, x: &Simplex, y: &Simplex) -> Option<Attachment> {
        (self.objects.contains(x) && self.objects.contains(y) && x.is_subface_of(y)).then(|| {
            Attachment {
                from: x.clone(),
                to: y.clone(),
            }
        })
    }

    /// All morphisms, identities included, in face order of (from, to).
    pub fn morphisms(&self) -> Vec<Attachment> {
        self.up
            .iter()
            .flat_map(|(&i, above)| {
                above.iter().map(move |&j| Attachment {
                    from: self.objects[i].clone(),
                    to: self.objects[j].clone(),
                })
            })
            .collect()
    }

    /// Non-identity morphisms.
    pub fn attachments(&self) -> Vec<Attachment> {
        self.morphisms()
            .into_iter()
            .filter(|a| !a.is_identity())
            .collect()
    }

    /// Composite of `g ∘ f`, which always exists in a face category.
    pub fn compose(&self, g: &Attachment, f: &Attachment) -> Result<Attachment> {
        if f.to != g.from {
            return Err(Error::Composition(format!("{f} then {g}")));
        }
        self.hom(&f.from, &g.to)
            .ok_or_else(|| Error::Composition(format!("{f} then {g} has no composite")))
    }
}

/// Every chain `x→y→z` of two non-identity attachments.
pub fn attachment_chains(category: &FaceCategory) -> Vec<Chain> {
    let attachments = category.attachments();
    let mut chains = Vec::new();
    for first in &attachments {
        for second in attachments.iter().filter(|s| s.from == first.to) {
            chains.push(Chain {
                first: first.clone(),
                second: second.clone(),
            });
        }
    }
    chains
}
