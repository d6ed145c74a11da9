//! Finite models of the data-type categories.
//!
//! Objects are finite carriers (sets, relations, orders) or windowed
//! semirings, plus the measure-theoretic objects from [`crate::measure`].
//! Morphisms are validated against their category's preservation law; an
//! invalid candidate is rejected with one concrete witness.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::measure::{
    check_rv_morphism, check_sto_morphism, compose_kernels, compose_maps, element_kernel,
    meas_elements, prob_elements, rv_elements, sto_elements, FiniteMeasurableSpace, Kernel,
    RandomVariable, RvMorphism, StoMorphism, StochasticProcess,
};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Set,
    Bool,
    BiRel,
    KRel,
    NRel,
    Pordinal,
    Ordinal,
    Interval,
    Scalar,
    Meas,
    Prob,
    Rv,
    Sto,
}

impl Category {
    pub const ALL: [Category; 13] = [
        Category::Set,
        Category::Bool,
        Category::BiRel,
        Category::KRel,
        Category::NRel,
        Category::Pordinal,
        Category::Ordinal,
        Category::Interval,
        Category::Scalar,
        Category::Meas,
        Category::Prob,
        Category::Rv,
        Category::Sto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Set => "SET",
            Category::Bool => "BOOL",
            Category::BiRel => "BI-REL",
            Category::KRel => "k-REL",
            Category::NRel => "N-REL",
            Category::Pordinal => "PORDINAL",
            Category::Ordinal => "ORDINAL",
            Category::Interval => "INTERVAL",
            Category::Scalar => "SCALAR",
            Category::Meas => "MEAS",
            Category::Prob => "PROB",
            Category::Rv => "RV",
            Category::Sto => "STO",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown category {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetObject {
    elements: Vec<String>,
}

impl SetObject {
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::Invalid(format!("duplicate element {dup:?}")));
        }
        Ok(SetObject { elements })
    }

    /// `{0}`.
    pub fn terminal() -> Self {
        SetObject {
            elements: vec!["0".into()],
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::Invalid(format!("{label:?} is not an element of {self}")))
    }
}

impl fmt::Display for SetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(","))
    }
}

/// One of `∅`, `{0}`, `{1}`, `{0,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolObject {
    pub has_false: bool,
    pub has_true: bool,
}

impl BoolObject {
    pub const FULL: BoolObject = BoolObject {
        has_false: true,
        has_true: true,
    };

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut b = BoolObject {
            has_false: false,
            has_true: false,
        };
        for label in labels {
            match label.as_ref() {
                "0" if !b.has_false => b.has_false = true,
                "1" if !b.has_true => b.has_true = true,
                other => {
                    return Err(Error::Invalid(format!(
                        "{other:?} is not a (new) boolean element"
                    )))
                }
            }
        }
        Ok(b)
    }

    pub fn as_set(&self) -> SetObject {
        let mut elements = Vec::new();
        if self.has_false {
            elements.push("0".to_string());
        }
        if self.has_true {
            elements.push("1".to_string());
        }
        SetObject { elements }
    }
}

/// A base set with a `k`-ary relation; tuples are stored as element indices
/// in input order without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelObject {
    base: SetObject,
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

impl RelObject {
    pub fn new<S: AsRef<str>>(base: SetObject, arity: usize, tuples: &[Vec<S>]) -> Result<Self> {
        let indexed = tuples
            .iter()
            .map(|t| t.iter().map(|s| base.require(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(base, arity, indexed)
    }

    pub fn from_indices(base: SetObject, arity: usize, tuples: Vec<Vec<usize>>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Invalid(format!("relation arity {arity} is below 2")));
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for t in tuples {
            if t.len() != arity {
                return Err(Error::Invalid(format!(
                    "tuple of length {} in a {arity}-ary relation",
                    t.len()
                )));
            }
            if let Some(&bad) = t.iter().find(|&&i| i >= base.len()) {
                return Err(Error::Invalid(format!("tuple entry {bad} outside the base set")));
            }
            if seen.insert(t.clone()) {
                kept.push(t);
            }
        }
        Ok(RelObject {
            base,
            arity,
            tuples: kept,
        })
    }

    /// `({0}, ∅)` in the given arity.
    pub fn terminal(arity: usize) -> Self {
        RelObject {
            base: SetObject::terminal(),
            arity,
            tuples: Vec::new(),
        }
    }

    pub fn base(&self) -> &SetObject {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.tuples.iter().any(|t| t == tuple)
    }

    pub fn tuple_label(&self, tuple: &[usize]) -> String {
        let names: Vec<&str> = tuple.iter().map(|&i| self.base.elements[i].as_str()).collect();
        format!("⟨{}⟩", names.join(","))
    }

    fn tuple_set(&self) -> HashSet<&[usize]> {
        self.tuples.iter().map(Vec::as_slice).collect()
    }
}

fn binary_pairs(rel: &RelObject) -> HashSet<(usize, usize)> {
    rel.tuples.iter().map(|t| (t[0], t[1])).collect()
}

fn check_reflexive(rel: &RelObject, pairs: &HashSet<(usize, usize)>) -> Result<()> {
    match (0..rel.base.len()).find(|&i| !pairs.contains(&(i, i))) {
        Some(i) => Err(Error::violation(
            "reflexivity",
            format!("({0},{0}) missing", rel.base.elements[i]),
        )),
        None => Ok(()),
    }
}

fn check_antisymmetric(rel: &RelObject, pairs: &HashSet<(usize, usize)>) -> Result<()> {
    for &(a, b) in pairs {
        if a != b && pairs.contains(&(b, a)) {
            let (a, b) = (a.min(b), a.max(b));
            return Err(Error::violation(
                "antisymmetry",
                format!(
                    "({0},{1}) and ({1},{0})",
                    rel.base.elements[a], rel.base.elements[b]
                ),
            ));
        }
    }
    Ok(())
}

fn check_transitive(rel: &RelObject, pairs: &HashSet<(usize, usize)>) -> Result<()> {
    for t1 in &rel.tuples {
        for t2 in rel.tuples.iter().filter(|t2| t2[0] == t1[1]) {
            if !pairs.contains(&(t1[0], t2[1])) {
                let name = |i: usize| rel.base.elements[i].as_str();
                return Err(Error::violation(
                    "transitivity",
                    format!(
                        "({},{}) and ({},{}) but not ({},{})",
                        name(t1[0]),
                        name(t1[1]),
                        name(t2[0]),
                        name(t2[1]),
                        name(t1[0]),
                        name(t2[1])
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn check_total(rel: &RelObject, pairs: &HashSet<(usize, usize)>) -> Result<()> {
    let n = rel.base.len();
    for a in 0..n {
        for b in a + 1..n {
            if !pairs.contains(&(a, b)) && !pairs.contains(&(b, a)) {
                return Err(Error::violation(
                    "totality",
                    format!(
                        "{} and {} are incomparable",
                        rel.base.elements[a], rel.base.elements[b]
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// A reflexive, transitive, antisymmetric binary relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PosetObject {
    relation: RelObject,
}

impl PosetObject {
    pub fn new(relation: RelObject) -> Result<Self> {
        if relation.arity != 2 {
            return Err(Error::Invalid("a partial order is a binary relation".into()));
        }
        let pairs = binary_pairs(&relation);
        check_reflexive(&relation, &pairs)?;
        check_antisymmetric(&relation, &pairs)?;
        check_transitive(&relation, &pairs)?;
        Ok(PosetObject { relation })
    }

    /// `({0}, {(0,0)})`.
    pub fn terminal() -> Self {
        PosetObject {
            relation: RelObject {
                base: SetObject::terminal(),
                arity: 2,
                tuples: vec![vec![0, 0]],
            },
        }
    }

    /// The discrete order (only the diagonal).
    pub fn antichain(base: SetObject) -> Self {
        let tuples = (0..base.len()).map(|i| vec![i, i]).collect();
        PosetObject {
            relation: RelObject {
                base,
                arity: 2,
                tuples,
            },
        }
    }

    pub fn relation(&self) -> &RelObject {
        &self.relation
    }

    pub fn base(&self) -> &SetObject {
        &self.relation.base
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation.contains(&[a, b])
    }
}

/// A total order. Reflexivity is required along with transitivity,
/// antisymmetry and totality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalOrderObject {
    relation: RelObject,
}

impl TotalOrderObject {
    pub fn new(relation: RelObject) -> Result<Self> {
        if relation.arity != 2 {
            return Err(Error::Invalid("a total order is a binary relation".into()));
        }
        let pairs = binary_pairs(&relation);
        check_reflexive(&relation, &pairs)?;
        check_antisymmetric(&relation, &pairs)?;
        check_transitive(&relation, &pairs)?;
        check_total(&relation, &pairs)?;
        Ok(TotalOrderObject { relation })
    }

    /// The chain `e₀ ≤ e₁ ≤ …` in the order the base set lists its elements.
    pub fn chain(base: SetObject) -> Self {
        let n = base.len();
        let tuples = (0..n)
            .flat_map(|a| (a..n).map(move |b| vec![a, b]))
            .collect();
        TotalOrderObject {
            relation: RelObject {
                base,
                arity: 2,
                tuples,
            },
        }
    }

    pub fn terminal() -> Self {
        TotalOrderObject {
            relation: PosetObject::terminal().relation,
        }
    }

    pub fn relation(&self) -> &RelObject {
        &self.relation
    }

    pub fn base(&self) -> &SetObject {
        &self.relation.base
    }

    pub fn as_poset(&self) -> PosetObject {
        PosetObject {
            relation: self.relation.clone(),
        }
    }
}

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Interval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(int(lo), int(hi))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_integral(&self) -> bool {
        self.lo.is_integer() && self.hi.is_integer()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Endpoint sums.
pub fn interval_add(a: &Interval, b: &Interval) -> Interval {
    Interval {
        lo: a.lo.clone() + b.lo.clone(),
        hi: a.hi.clone() + b.hi.clone(),
    }
}

/// Smallest interval containing every product of endpoints.
pub fn interval_mul(a: &Interval, b: &Interval) -> Interval {
    let products = [
        a.lo.clone() * b.lo.clone(),
        a.lo.clone() * b.hi.clone(),
        a.hi.clone() * b.lo.clone(),
        a.hi.clone() * b.hi.clone(),
    ];
    let lo = products.iter().min().expect("four products").clone();
    let hi = products.iter().max().expect("four products").clone();
    Interval { lo, hi }
}

/// Containment: `a ≤ b` iff `a ⊆ b`.
pub fn interval_leq(a: &Interval, b: &Interval) -> bool {
    b.lo <= a.lo && a.hi <= b.hi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    /// `ℕ` with the usual total order.
    Naturals,
    /// Intervals with integer endpoints, ordered by containment.
    IntegerIntervals,
    /// Intervals with rational endpoints, ordered by containment.
    RationalIntervals,
}

impl SemiringKind {
    pub fn is_totally_ordered(self) -> bool {
        matches!(self, SemiringKind::Naturals)
    }

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Naturals => "naturals",
            SemiringKind::IntegerIntervals => "integer-intervals",
            SemiringKind::RationalIntervals => "rational-intervals",
        }
    }
}

/// A finite slice of a semiring carrier: naturals in `[lo, hi]`, or
/// intervals whose endpoints lie on the grid `lo, lo + 1/d, …, hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub denominator: u32,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            denominator: 1,
        }
    }

    pub fn with_denominator(mut self, denominator: u32) -> Self {
        self.denominator = denominator.max(1);
        self
    }

    fn grid(&self) -> Vec<Rational> {
        let d = self.denominator.max(1) as i64;
        (self.lo * d..=self.hi * d)
            .map(|n| Rational::new(n.into(), d.into()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringElement {
    Nat(u64),
    Interval(Interval),
}

impl fmt::Display for SemiringElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringElement::Nat(n) => write!(f, "{n}"),
            SemiringElement::Interval(i) => write!(f, "{i}"),
        }
    }
}

impl SemiringElement {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let (lo, hi) = inner
                .split_once(',')
                .ok_or_else(|| Error::Invalid(format!("not an interval: {text:?}")))?;
            return Ok(SemiringElement::Interval(Interval::new(
                crate::scalar::parse_rational(lo)?,
                crate::scalar::parse_rational(hi)?,
            )?));
        }
        text.parse::<u64>()
            .map(SemiringElement::Nat)
            .map_err(|_| Error::Invalid(format!("not a semiring element: {text:?}")))
    }
}

/// A partially (or totally) ordered semiring, optionally restricted to a
/// finite window for enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemiringObject {
    kind: SemiringKind,
    window: Option<Window>,
}

impl SemiringObject {
    pub fn new(kind: SemiringKind) -> Self {
        SemiringObject { kind, window: None }
    }

    pub fn windowed(kind: SemiringKind, window: Window) -> Self {
        SemiringObject {
            kind,
            window: Some(window),
        }
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn window(&self) -> Option<Window> {
        self.window
    }

    pub fn with_window(&self, window: Window) -> Self {
        Self::windowed(self.kind, window)
    }

    pub fn zero(&self) -> SemiringElement {
        match self.kind {
            SemiringKind::Naturals => SemiringElement::Nat(0),
            _ => SemiringElement::Interval(Interval::point(Rational::zero())),
        }
    }

    pub fn one(&self) -> SemiringElement {
        match self.kind {
            SemiringKind::Naturals => SemiringElement::Nat(1),
            _ => SemiringElement::Interval(Interval::point(Rational::one())),
        }
    }

    pub fn contains(&self, e: &SemiringElement) -> bool {
        match (self.kind, e) {
            (SemiringKind::Naturals, SemiringElement::Nat(_)) => true,
            (SemiringKind::IntegerIntervals, SemiringElement::Interval(i)) => i.is_integral(),
            (SemiringKind::RationalIntervals, SemiringElement::Interval(_)) => true,
            _ => false,
        }
    }

    fn require(&self, e: &SemiringElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{e} is not in the {} semiring", self.kind.name())))
        }
    }

    pub fn add(&self, a: &SemiringElement, b: &SemiringElement) -> Result<SemiringElement> {
        self.require(a)?;
        self.require(b)?;
        Ok(match (a, b) {
            (SemiringElement::Nat(x), SemiringElement::Nat(y)) => SemiringElement::Nat(
                x.checked_add(*y)
                    .ok_or_else(|| Error::Domain(format!("{x} + {y} overflows")))?,
            ),
            (SemiringElement::Interval(x), SemiringElement::Interval(y)) => {
                SemiringElement::Interval(interval_add(x, y))
            }
            _ => unreachable!("membership checked"),
        })
    }

    pub fn mul(&self, a: &SemiringElement, b: &SemiringElement) -> Result<SemiringElement> {
        self.require(a)?;
        self.require(b)?;
        Ok(match (a, b) {
            (SemiringElement::Nat(x), SemiringElement::Nat(y)) => SemiringElement::Nat(
                x.checked_mul(*y)
                    .ok_or_else(|| Error::Domain(format!("{x} · {y} overflows")))?,
            ),
            (SemiringElement::Interval(x), SemiringElement::Interval(y)) => {
                SemiringElement::Interval(interval_mul(x, y))
            }
            _ => unreachable!("membership checked"),
        })
    }

    pub fn leq(&self, a: &SemiringElement, b: &SemiringElement) -> bool {
        match (a, b) {
            (SemiringElement::Nat(x), SemiringElement::Nat(y)) => x <= y,
            (SemiringElement::Interval(x), SemiringElement::Interval(y)) => interval_leq(x, y),
            _ => false,
        }
    }

    /// The carrier members inside the window.
    pub fn window_elements(&self) -> Result<Vec<SemiringElement>> {
        let w = self.window.ok_or_else(|| {
            Error::WindowRequired(format!("the {} semiring", self.kind.name()))
        })?;
        Ok(match self.kind {
            SemiringKind::Naturals => (w.lo.max(0)..=w.hi)
                .map(|n| SemiringElement::Nat(n as u64))
                .collect(),
            SemiringKind::IntegerIntervals | SemiringKind::RationalIntervals => {
                let grid = if self.kind == SemiringKind::IntegerIntervals {
                    Window::new(w.lo, w.hi).grid()
                } else {
                    w.grid()
                };
                let mut out = Vec::new();
                for (i, lo) in grid.iter().enumerate() {
                    for hi in &grid[i..] {
                        out.push(SemiringElement::Interval(Interval {
                            lo: lo.clone(),
                            hi: hi.clone(),
                        }));
                    }
                }
                out
            }
        })
    }
}

/// Outcome of one semiring or order axiom over a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every semiring and order-compatibility axiom over all pairs and
/// triples drawn from `sample`, exactly.
pub fn semiring_axioms(
    semiring: &SemiringObject,
    sample: &[SemiringElement],
) -> Result<Vec<AxiomCheck>> {
    let s = semiring;
    let zero = s.zero();
    let one = s.one();
    let add = |a: &SemiringElement, b: &SemiringElement| s.add(a, b);
    let mul = |a: &SemiringElement, b: &SemiringElement| s.mul(a, b);
    let leq = |a: &SemiringElement, b: &SemiringElement| s.leq(a, b);

    type Unary<'a> = Box<dyn Fn(&SemiringElement) -> Result<Option<String>> + 'a>;
    type Binary<'a> = Box<dyn Fn(&SemiringElement, &SemiringElement) -> Result<Option<String>> + 'a>;
    type Ternary<'a> = Box<
        dyn Fn(&SemiringElement, &SemiringElement, &SemiringElement) -> Result<Option<String>> + 'a,
    >;

    let fail = |cond: bool, msg: String| if cond { None } else { Some(msg) };

    let unary: Vec<(&'static str, Unary)> = vec![
        (
            "additive identity",
            Box::new(|a| Ok(fail(add(a, &zero)? == *a && add(&zero, a)? == *a, format!("a = {a}")))),
        ),
        (
            "multiplicative identity",
            Box::new(|a| Ok(fail(mul(a, &one)? == *a && mul(&one, a)? == *a, format!("a = {a}")))),
        ),
        (
            "zero annihilates",
            Box::new(|a| {
                Ok(fail(
                    mul(a, &zero)? == zero && mul(&zero, a)? == zero,
                    format!("a = {a}"),
                ))
            }),
        ),
        ("order reflexive", Box::new(|a| Ok(fail(leq(a, a), format!("a = {a}"))))),
    ];
    let binary: Vec<(&'static str, Binary)> = vec![
        (
            "addition commutative",
            Box::new(|a, b| Ok(fail(add(a, b)? == add(b, a)?, format!("a = {a}, b = {b}")))),
        ),
        (
            "order antisymmetric",
            Box::new(|a, b| {
                Ok(fail(
                    !(leq(a, b) && leq(b, a)) || a == b,
                    format!("a = {a}, b = {b}"),
                ))
            }),
        ),
    ];
    let mut ternary: Vec<(&'static str, Ternary)> = vec![
        (
            "addition associative",
            Box::new(|a, b, c| {
                Ok(fail(
                    add(&add(a, b)?, c)? == add(a, &add(b, c)?)?,
                    format!("a = {a}, b = {b}, c = {c}"),
                ))
            }),
        ),
        (
            "multiplication associative",
            Box::new(|a, b, c| {
                Ok(fail(
                    mul(&mul(a, b)?, c)? == mul(a, &mul(b, c)?)?,
                    format!("a = {a}, b = {b}, c = {c}"),
                ))
            }),
        ),
        (
            "left distributivity",
            Box::new(|a, b, c| {
                let lhs = mul(a, &add(b, c)?)?;
                let rhs = add(&mul(a, b)?, &mul(a, c)?)?;
                Ok(fail(
                    lhs == rhs,
                    format!("a = {a}, b = {b}, c = {c}: a(b+c) = {lhs} but ab+ac = {rhs}"),
                ))
            }),
        ),
        (
            "right distributivity",
            Box::new(|a, b, c| {
                let lhs = mul(&add(a, b)?, c)?;
                let rhs = add(&mul(a, c)?, &mul(b, c)?)?;
                Ok(fail(
                    lhs == rhs,
                    format!("a = {a}, b = {b}, c = {c}: (a+b)c = {lhs} but ac+bc = {rhs}"),
                ))
            }),
        ),
        (
            "order transitive",
            Box::new(|a, b, c| {
                Ok(fail(
                    !(leq(a, b) && leq(b, c)) || leq(a, c),
                    format!("a = {a}, b = {b}, c = {c}"),
                ))
            }),
        ),
        (
            "order compatible with addition",
            Box::new(|a, b, c| {
                Ok(fail(
                    !leq(a, b) || leq(&add(a, c)?, &add(b, c)?),
                    format!("a = {a} ≤ b = {b}, c = {c}"),
                ))
            }),
        ),
        (
            "order compatible with multiplication",
            Box::new(|a, b, c| {
                let ok = !(leq(a, b) && leq(&zero, c))
                    || (leq(&mul(a, c)?, &mul(b, c)?) && leq(&mul(c, a)?, &mul(c, b)?));
                Ok(fail(ok, format!("a = {a} ≤ b = {b}, 0 ≤ c = {c}")))
            }),
        ),
    ];
    if s.kind.is_totally_ordered() {
        ternary.push((
            "order total",
            Box::new(|a, b, _| Ok(fail(leq(a, b) || leq(b, a), format!("a = {a}, b = {b}")))),
        ));
    }

    let mut report = Vec::new();
    for (axiom, check) in &unary {
        let mut counterexample = None;
        for a in sample {
            if let Some(w) = check(a)? {
                counterexample = Some(w);
                break;
            }
        }
        report.push(AxiomCheck { axiom, counterexample });
    }
    for (axiom, check) in &binary {
        let mut counterexample = None;
        'outer: for a in sample {
            for b in sample {
                if let Some(w) = check(a, b)? {
                    counterexample = Some(w);
                    break 'outer;
                }
            }
        }
        report.push(AxiomCheck { axiom, counterexample });
    }
    for (axiom, check) in &ternary {
        let mut counterexample = None;
        'outer3: for a in sample {
            for b in sample {
                for c in sample {
                    if let Some(w) = check(a, b, c)? {
                        counterexample = Some(w);
                        break 'outer3;
                    }
                }
            }
        }
        report.push(AxiomCheck { axiom, counterexample });
    }
    Ok(report)
}

/// How an ordered semiring homomorphism acts on elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HomRule {
    Identity,
    /// `n ↦ [n, n]` from the naturals into an interval semiring.
    PointEmbedding,
    /// Integer intervals viewed as rational intervals.
    Inclusion,
    /// An explicit finite table; undefined outside its entries.
    Table(Vec<(SemiringElement, SemiringElement)>),
    /// Apply the rules left to right.
    Composite(Vec<HomRule>),
}

impl HomRule {
    pub fn apply(&self, e: &SemiringElement) -> Result<SemiringElement> {
        match self {
            HomRule::Identity | HomRule::Inclusion => Ok(e.clone()),
            HomRule::PointEmbedding => match e {
                SemiringElement::Nat(n) => Ok(SemiringElement::Interval(Interval::point(int(
                    i64::try_from(*n).map_err(|_| Error::Domain(format!("{n} too large")))?,
                )))),
                other => Err(Error::Domain(format!("{other} is not a natural number"))),
            },
            HomRule::Table(entries) => entries
                .iter()
                .find(|(k, _)| k == e)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Domain(format!("table has no entry for {e}"))),
            HomRule::Composite(rules) => rules.iter().try_fold(e.clone(), |acc, r| r.apply(&acc)),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HomRule) -> HomRule {
        let mut steps = match first {
            HomRule::Composite(rules) => rules.clone(),
            other => vec![other.clone()],
        };
        match self {
            HomRule::Composite(rules) => steps.extend(rules.iter().cloned()),
            other => steps.push(other.clone()),
        }
        HomRule::Composite(steps)
    }
}

fn check_semiring_hom(
    rule: &HomRule,
    source: &SemiringObject,
    target: &SemiringObject,
    totally_ordered: bool,
) -> Result<()> {
    if totally_ordered && !(source.kind.is_totally_ordered() && target.kind.is_totally_ordered()) {
        return Err(Error::violation(
            "total order",
            "SCALAR objects must be totally ordered semirings",
        ));
    }
    let sample = source.window_elements()?;
    let f = |e: &SemiringElement| rule.apply(e);
    let one_image = f(&source.one())?;
    if one_image != target.one() {
        return Err(Error::violation("unit preservation", format!("f(1) = {one_image}")));
    }
    for a in &sample {
        let fa = f(a)?;
        if !target.contains(&fa) {
            return Err(Error::violation(
                "codomain",
                format!("f({a}) = {fa} is not in the target semiring"),
            ));
        }
        if let Some(w) = target.window {
            let target_window = SemiringObject::windowed(target.kind, w).window_elements()?;
            if !target_window.contains(&fa) {
                return Err(Error::violation(
                    "window",
                    format!("f({a}) = {fa} falls outside the target window"),
                ));
            }
        }
        for b in &sample {
            let fb = f(b)?;
            // sums and products may leave a tabulated domain; skip those
            if let Ok(f_sum) = f(&source.add(a, b)?) {
                if f_sum != target.add(&fa, &fb)? {
                    return Err(Error::violation(
                        "additivity",
                        format!("f({a} + {b}) = {f_sum} ≠ f({a}) + f({b})"),
                    ));
                }
            }
            if let Ok(f_prod) = f(&source.mul(a, b)?) {
                if f_prod != target.mul(&fa, &fb)? {
                    return Err(Error::violation(
                        "multiplicativity",
                        format!("f({a} · {b}) = {f_prod} ≠ f({a}) · f({b})"),
                    ));
                }
            }
            if source.leq(a, b) && !target.leq(&fa, &fb) {
                return Err(Error::violation(
                    "monotonicity",
                    format!("{a} ≤ {b} but f({a}) = {fa} ≰ f({b}) = {fb}"),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypedObject {
    Set(SetObject),
    Bool(BoolObject),
    /// `k`-ary relation; a binary one is a BI-REL object.
    Rel(RelObject),
    /// A relation viewed in the category of all arities.
    NRel(RelObject),
    Poset(PosetObject),
    TotalOrder(TotalOrderObject),
    Interval(SemiringObject),
    /// Must be a totally ordered semiring.
    Scalar(SemiringObject),
    Meas(FiniteMeasurableSpace),
    Prob(FiniteMeasurableSpace),
    Rv(RandomVariable),
    Sto(StochasticProcess),
}

impl TypedObject {
    pub fn scalar(semiring: SemiringObject) -> Result<Self> {
        if !semiring.kind.is_totally_ordered() {
            return Err(Error::Invalid(format!(
                "the {} semiring is not totally ordered",
                semiring.kind.name()
            )));
        }
        Ok(TypedObject::Scalar(semiring))
    }

    pub fn category(&self) -> Category {
        match self {
            TypedObject::Set(_) => Category::Set,
            TypedObject::Bool(_) => Category::Bool,
            TypedObject::Rel(r) if r.arity == 2 => Category::BiRel,
            TypedObject::Rel(_) => Category::KRel,
            TypedObject::NRel(_) => Category::NRel,
            TypedObject::Poset(_) => Category::Pordinal,
            TypedObject::TotalOrder(_) => Category::Ordinal,
            TypedObject::Interval(_) => Category::Interval,
            TypedObject::Scalar(_) => Category::Scalar,
            TypedObject::Meas(_) => Category::Meas,
            TypedObject::Prob(_) => Category::Prob,
            TypedObject::Rv(_) => Category::Rv,
            TypedObject::Sto(_) => Category::Sto,
        }
    }

    /// The underlying finite set for the set-like categories.
    pub fn base_set(&self) -> Option<SetObject> {
        match self {
            TypedObject::Set(s) => Some(s.clone()),
            TypedObject::Bool(b) => Some(b.as_set()),
            TypedObject::Rel(r) | TypedObject::NRel(r) => Some(r.base.clone()),
            TypedObject::Poset(p) => Some(p.base().clone()),
            TypedObject::TotalOrder(o) => Some(o.base().clone()),
            _ => None,
        }
    }

    /// The relation a function has to preserve, if any.
    fn relation(&self) -> Option<&RelObject> {
        match self {
            TypedObject::Rel(r) | TypedObject::NRel(r) => Some(r),
            TypedObject::Poset(p) => Some(&p.relation),
            TypedObject::TotalOrder(o) => Some(&o.relation),
            _ => None,
        }
    }
}

/// The chosen terminal (or terminal-like) object used to define elements.
/// `None` for the semiring categories, whose elements come from a free
/// semiring on one generator instead.
pub fn terminal_object(category: Category) -> Option<TypedObject> {
    Some(match category {
        Category::Set => TypedObject::Set(SetObject::terminal()),
        Category::Bool => TypedObject::Bool(BoolObject {
            has_false: true,
            has_true: false,
        }),
        Category::BiRel => TypedObject::Rel(RelObject::terminal(2)),
        Category::KRel => TypedObject::Rel(RelObject::terminal(3)),
        Category::NRel => TypedObject::NRel(RelObject::terminal(2)),
        Category::Pordinal => TypedObject::Poset(PosetObject::terminal()),
        Category::Ordinal => TypedObject::TotalOrder(TotalOrderObject::terminal()),
        Category::Meas => TypedObject::Meas(FiniteMeasurableSpace::singleton()),
        Category::Prob => TypedObject::Prob(FiniteMeasurableSpace::singleton()),
        Category::Rv => TypedObject::Rv(RandomVariable::terminal()),
        Category::Sto => TypedObject::Sto(StochasticProcess::terminal(vec!["t".into()])),
        Category::Interval | Category::Scalar => return None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum MorphismData {
    /// A function on base sets, as target indices.
    Function(Vec<usize>),
    Semiring(HomRule),
    Kernel(Kernel),
    Rv(RvMorphism),
    Sto(StoMorphism),
}

/// A morphism that has passed its category's validation.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedMorphism {
    category: Category,
    source: TypedObject,
    target: TypedObject,
    data: MorphismData,
}

impl TypedMorphism {
    pub fn category(&self) -> Category {
        self.category
    }

    pub fn source(&self) -> &TypedObject {
        &self.source
    }

    pub fn target(&self) -> &TypedObject {
        &self.target
    }

    pub fn data(&self) -> &MorphismData {
        &self.data
    }

    pub fn function(&self) -> Option<&[usize]> {
        match &self.data {
            MorphismData::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn kernel(&self) -> Option<&Kernel> {
        match &self.data {
            MorphismData::Kernel(k) => Some(k),
            _ => None,
        }
    }

    /// Builds a morphism without validation. Only for code that has just
    /// proved the data valid (or tests that want an invalid one).
    pub fn unchecked(
        category: Category,
        source: TypedObject,
        target: TypedObject,
        data: MorphismData,
    ) -> Self {
        TypedMorphism {
            category,
            source,
            target,
            data,
        }
    }
}

fn category_accepts(category: Category, object: &TypedObject) -> bool {
    let own = object.category();
    match category {
        Category::KRel => matches!(object, TypedObject::Rel(_)),
        Category::NRel => matches!(object, TypedObject::NRel(_)),
        _ => own == category,
    }
}

/// Validates `data` as a morphism `source → target` in `category`.
pub fn check_morphism(
    category: Category,
    data: MorphismData,
    source: &TypedObject,
    target: &TypedObject,
) -> Result<TypedMorphism> {
    for (end, obj) in [("source", source), ("target", target)] {
        if !category_accepts(category, obj) {
            return Err(Error::Invalid(format!(
                "{end} is a {} object, not a {category} object",
                obj.category()
            )));
        }
    }
    match (&data, source, target) {
        (MorphismData::Function(map), _, _) if source.base_set().is_some() => {
            let from = source.base_set().expect("checked");
            let to = target
                .base_set()
                .ok_or_else(|| Error::Invalid("target has no base set".into()))?;
            if map.len() != from.len() {
                return Err(Error::Invalid(format!(
                    "function has {} images for {} elements",
                    map.len(),
                    from.len()
                )));
            }
            if let Some(i) = map.iter().position(|&j| j >= to.len()) {
                return Err(Error::violation(
                    "totality",
                    format!("{} has no image in {to}", from.elements[i]),
                ));
            }
            if let (Some(r1), Some(r2)) = (source.relation(), target.relation()) {
                if r1.arity != r2.arity {
                    return Err(Error::violation(
                        "equal arity",
                        format!(
                            "hom-set is empty: dim {} ≠ dim {}",
                            r1.arity, r2.arity
                        ),
                    ));
                }
                let target_tuples = r2.tuple_set();
                for t in &r1.tuples {
                    let image: Vec<usize> = t.iter().map(|&i| map[i]).collect();
                    if !target_tuples.contains(image.as_slice()) {
                        return Err(Error::violation(
                            "relation preservation",
                            format!(
                                "{} ∈ R₁ but its image {} ∉ R₂",
                                r1.tuple_label(t),
                                r2.tuple_label(&image)
                            ),
                        ));
                    }
                }
            }
        }
        (
            MorphismData::Semiring(rule),
            TypedObject::Interval(a) | TypedObject::Scalar(a),
            TypedObject::Interval(b) | TypedObject::Scalar(b),
        ) => check_semiring_hom(rule, a, b, category == Category::Scalar)?,
        (MorphismData::Kernel(k), TypedObject::Meas(x), TypedObject::Meas(y))
        | (MorphismData::Kernel(k), TypedObject::Prob(x), TypedObject::Prob(y)) => {
            if k.source() != x || k.target() != y {
                return Err(Error::Space(format!(
                    "kernel {} → {} used between {x} and {y}",
                    k.source(),
                    k.target()
                )));
            }
            if category == Category::Prob && !k.is_stochastic() {
                return Err(Error::violation(
                    "conditional distribution",
                    "kernel rows must sum to 1",
                ));
            }
        }
        (MorphismData::Rv(m), TypedObject::Rv(y), TypedObject::Rv(z)) => {
            check_rv_morphism(m.omega_map.clone(), m.state_map.clone(), y, z)?;
        }
        (MorphismData::Sto(m), TypedObject::Sto(y), TypedObject::Sto(z)) => {
            check_sto_morphism(m.omega_maps.clone(), m.state_maps.clone(), y, z)?;
        }
        _ => {
            return Err(Error::Invalid(format!(
                "morphism data does not fit a {category} morphism"
            )))
        }
    }
    Ok(TypedMorphism {
        category,
        source: source.clone(),
        target: target.clone(),
        data,
    })
}

pub fn identity_morphism(object: &TypedObject) -> TypedMorphism {
    let data = match object {
        TypedObject::Interval(_) | TypedObject::Scalar(_) => MorphismData::Semiring(HomRule::Identity),
        TypedObject::Meas(x) | TypedObject::Prob(x) => MorphismData::Kernel(Kernel::identity(x)),
        TypedObject::Rv(r) => MorphismData::Rv(RvMorphism::identity(r)),
        TypedObject::Sto(p) => MorphismData::Sto(StoMorphism::identity(p)),
        other => MorphismData::Function(
            (0..other.base_set().expect("set-like object").len()).collect(),
        ),
    };
    TypedMorphism {
        category: object.category(),
        source: object.clone(),
        target: object.clone(),
        data,
    }
}

/// `g ∘ f`. The result is built directly from the factors; that it passes
/// [`check_morphism`] again is a property of each category, tested
/// separately.
pub fn compose_morphism(g: &TypedMorphism, f: &TypedMorphism) -> Result<TypedMorphism> {
    if f.category != g.category {
        return Err(Error::Composition(format!(
            "{} morphism followed by {} morphism",
            f.category, g.category
        )));
    }
    if f.target != g.source {
        return Err(Error::Composition("target of f is not the source of g".into()));
    }
    let data = match (&g.data, &f.data) {
        (MorphismData::Function(gm), MorphismData::Function(fm)) => {
            MorphismData::Function(compose_maps(gm, fm))
        }
        (MorphismData::Semiring(gr), MorphismData::Semiring(fr)) => {
            MorphismData::Semiring(gr.after(fr))
        }
        (MorphismData::Kernel(nu), MorphismData::Kernel(mu)) => {
            MorphismData::Kernel(compose_kernels(nu, mu)?)
        }
        (MorphismData::Rv(gm), MorphismData::Rv(fm)) => MorphismData::Rv(gm.after(fm)),
        (MorphismData::Sto(gm), MorphismData::Sto(fm)) => MorphismData::Sto(gm.after(fm)),
        _ => return Err(Error::Composition("mismatched morphism kinds".into())),
    };
    Ok(TypedMorphism {
        category: g.category,
        source: f.source.clone(),
        target: g.target.clone(),
        data,
    })
}

/// An element of an object: a morphism out of the category's terminal(-like)
/// object, with a readable label.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub label: String,
    /// `None` for semirings, where the element is the image of the single
    /// generator of a free semiring.
    pub from_terminal: Option<TypedMorphism>,
}

/// Lists the elements of an object. Semiring objects use their window;
/// measure families need `grid`, the allowed weight values.
pub fn elements(object: &TypedObject, grid: Option<&[Rational]>) -> Result<Vec<Element>> {
    let category = object.category();
    match object {
        TypedObject::Interval(s) | TypedObject::Scalar(s) => Ok(s
            .window_elements()?
            .into_iter()
            .map(|e| Element {
                label: e.to_string(),
                from_terminal: None,
            })
            .collect()),
        TypedObject::Meas(x) | TypedObject::Prob(x) => {
            let grid = grid.ok_or_else(|| {
                Error::WindowRequired(format!("the measure family on {x} (pass a weight grid)"))
            })?;
            let measures = if category == Category::Prob {
                prob_elements(x, grid)
                    .into_iter()
                    .map(|p| p.into_measure())
                    .collect()
            } else {
                meas_elements(x, grid)
            };
            let terminal = terminal_object(category).expect("measure terminal");
            Ok(measures
                .into_iter()
                .map(|m| Element {
                    label: m.to_string(),
                    from_terminal: Some(TypedMorphism {
                        category,
                        source: terminal.clone(),
                        target: object.clone(),
                        data: MorphismData::Kernel(element_kernel(&m)),
                    }),
                })
                .collect())
        }
        TypedObject::Rv(r) => {
            let terminal = TypedObject::Rv(RandomVariable::terminal());
            Ok(rv_elements(r)
                .into_iter()
                .map(|e| Element {
                    label: format!(
                        "({}, {})",
                        r.omega().points()[e.omega_point],
                        r.state().points()[e.state_point]
                    ),
                    from_terminal: Some(TypedMorphism {
                        category,
                        source: terminal.clone(),
                        target: object.clone(),
                        data: MorphismData::Rv(RvMorphism {
                            omega_map: vec![e.omega_point],
                            state_map: vec![e.state_point],
                        }),
                    }),
                })
                .collect())
        }
        TypedObject::Sto(p) => {
            let terminal = TypedObject::Sto(StochasticProcess::terminal(p.index().to_vec()));
            Ok(sto_elements(p)
                .into_iter()
                .map(|family| {
                    let parts: Vec<String> = family
                        .iter()
                        .zip(p.index())
                        .map(|(e, t)| {
                            format!(
                                "{t}: ({}, {})",
                                p.omega().points()[e.omega_point],
                                p.state().points()[e.state_point]
                            )
                        })
                        .collect();
                    Element {
                        label: format!("{{{}}}", parts.join(", ")),
                        from_terminal: Some(TypedMorphism {
                            category,
                            source: terminal.clone(),
                            target: object.clone(),
                            data: MorphismData::Sto(StoMorphism {
                                omega_maps: family.iter().map(|e| vec![e.omega_point]).collect(),
                                state_maps: family.iter().map(|e| vec![e.state_point]).collect(),
                            }),
                        }),
                    }
                })
                .collect())
        }
        _ => {
            let base = object.base_set().expect("set-like object");
            // The terminal object must share the relation's arity; its
            // relation is empty (or the diagonal on {0}) so every point works.
            let terminal = match object {
                TypedObject::Rel(r) => TypedObject::Rel(RelObject::terminal(r.arity)),
                TypedObject::NRel(r) => TypedObject::NRel(RelObject::terminal(r.arity)),
                TypedObject::Bool(_) => TypedObject::Set(SetObject::terminal()),
                _ => terminal_object(category).expect("set-like terminal"),
            };
            Ok(base
                .elements()
                .iter()
                .enumerate()
                .map(|(i, label)| Element {
                    label: label.clone(),
                    from_terminal: Some(TypedMorphism {
                        category,
                        source: terminal.clone(),
                        target: object.clone(),
                        data: MorphismData::Function(vec![i]),
                    }),
                })
                .collect())
        }
    }
}

/// Enumerates every function `{0} → base` and keeps those that
/// [`check_morphism`] accepts. Independent of [`elements`]; used as its
/// brute-force check.
pub fn elements_by_search(object: &TypedObject) -> Result<usize> {
    let base = object
        .base_set()
        .ok_or_else(|| Error::Invalid("not a set-like object".into()))?;
    let (category, terminal) = match object {
        TypedObject::Bool(_) => (Category::Set, TypedObject::Set(SetObject::terminal())),
        TypedObject::Rel(r) => (object.category(), TypedObject::Rel(RelObject::terminal(r.arity))),
        TypedObject::NRel(r) => (Category::NRel, TypedObject::NRel(RelObject::terminal(r.arity))),
        _ => (
            object.category(),
            terminal_object(object.category()).expect("terminal"),
        ),
    };
    let target = match object {
        TypedObject::Bool(b) => TypedObject::Set(b.as_set()),
        other => other.clone(),
    };
    Ok((0..base.len())
        .filter(|&i| check_morphism(category, MorphismData::Function(vec![i]), &terminal, &target).is_ok())
        .count())
}

/// Equality of morphisms as maps. Semiring homomorphisms are compared on
/// the source window, since differently built rules can agree there.
pub fn same_morphism(f: &TypedMorphism, g: &TypedMorphism) -> bool {
    if f.category != g.category || f.source != g.source || f.target != g.target {
        return false;
    }
    match (&f.data, &g.data, &f.source) {
        (
            MorphismData::Semiring(a),
            MorphismData::Semiring(b),
            TypedObject::Interval(s) | TypedObject::Scalar(s),
        ) => match s.window_elements() {
            Ok(sample) => sample.iter().all(|e| match (a.apply(e), b.apply(e)) {
                (Ok(x), Ok(y)) => x == y,
                (Err(_), Err(_)) => true,
                _ => false,
            }),
            Err(_) => a == b,
        },
        (a, b, _) => a == b,
    }
}

/// Distinct points of a relation mentioned in any tuple.
pub fn support(rel: &RelObject) -> BTreeSet<usize> {
    rel.tuples.iter().flatten().copied().collect()
}
