//! Random generators shared by the integration tests. Every generator
//! builds a composable pair `f: A → B`, `g: B → C` that is valid by
//! construction; `check_morphism` is still run on each morphism.
#![allow(dead_code)]

use catfuse::enumerate::{set, space};
use catfuse::fvect::Matrix;
use catfuse::hierarchy::FunctorId;
use catfuse::measure::{Kernel, ProbabilityMeasure, RandomVariable, RvMorphism, StochasticProcess, StoMorphism};
use catfuse::scalar::{int, Rational};
use catfuse::typesys::{
    check_morphism, BoolObject, Category, HomRule, MorphismData, PosetObject, RelObject, SemiringKind,
    SemiringObject, TotalOrderObject, TypedMorphism, TypedObject, Window,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three objects and two composable morphisms.
#[derive(Debug, Clone)]
pub struct Chain {
    pub objects: Vec<TypedObject>,
    pub morphisms: Vec<TypedMorphism>,
}

fn sizes(rng: &mut impl Rng, max: usize) -> [usize; 3] {
    [rng.random_range(1..=max), rng.random_range(1..=max), rng.random_range(1..=max)]
}

fn random_map(rng: &mut impl Rng, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..m)).collect()
}

/// A nondecreasing map `{0..n} → {0..m}`.
fn monotone_map(rng: &mut impl Rng, n: usize, m: usize) -> Vec<usize> {
    let mut map = random_map(rng, n, m);
    map.sort_unstable();
    map
}

fn morphism(category: Category, data: MorphismData, a: &TypedObject, b: &TypedObject) -> TypedMorphism {
    check_morphism(category, data, a, b).expect("generated morphism is valid")
}

fn chain(category: Category, objects: [TypedObject; 3], f: MorphismData, g: MorphismData) -> Chain {
    let f = morphism(category, f, &objects[0], &objects[1]);
    let g = morphism(category, g, &objects[1], &objects[2]);
    Chain {
        objects: objects.to_vec(),
        morphisms: vec![f, g],
    }
}

/// Random tuples on `n` points plus the images of `forced`.
fn relation(rng: &mut impl Rng, n: usize, arity: usize, forced: Vec<Vec<usize>>) -> RelObject {
    let mut tuples = forced;
    let extra = rng.random_range(0..=n + 1);
    for _ in 0..extra {
        tuples.push(random_map(rng, arity, n));
    }
    tuples.sort();
    tuples.dedup();
    RelObject::from_indices(set(n), arity, tuples).expect("tuples in range")
}

fn image(tuples: &[Vec<usize>], map: &[usize]) -> Vec<Vec<usize>> {
    tuples.iter().map(|t| t.iter().map(|&i| map[i]).collect()).collect()
}

fn relation_chain(rng: &mut impl Rng, max: usize, category: Category) -> Chain {
    let arity = if category == Category::BiRel { 2 } else { rng.random_range(2..=3) };
    let [a, b, c] = sizes(rng, max);
    let (f, g) = (random_map(rng, a, b), random_map(rng, b, c));
    let ra = relation(rng, a, arity, Vec::new());
    let rb = relation(rng, b, arity, image(ra.tuples(), &f));
    let rc = relation(rng, c, arity, image(rb.tuples(), &g));
    let wrap = if category == Category::NRel { TypedObject::NRel } else { TypedObject::Rel };
    chain(
        category,
        [wrap(ra), wrap(rb), wrap(rc)],
        MorphismData::Function(f),
        MorphismData::Function(g),
    )
}

/// Reflexive-transitive closure of `pairs`; every pair must satisfy `i ≤ j`
/// numerically so the result is antisymmetric.
fn poset(n: usize, pairs: Vec<Vec<usize>>) -> PosetObject {
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for p in pairs {
        leq[p[0]][p[1]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let tuples = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| leq[i][j])
        .map(|(i, j)| vec![i, j])
        .collect();
    PosetObject::new(RelObject::from_indices(set(n), 2, tuples).expect("in range")).expect("a partial order")
}

fn random_increasing_pairs(rng: &mut impl Rng, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.3) {
                out.push(vec![i, j]);
            }
        }
    }
    out
}

fn poset_chain(rng: &mut impl Rng, max: usize) -> Chain {
    let [a, b, c] = sizes(rng, max);
    let (f, g) = (monotone_map(rng, a, b), monotone_map(rng, b, c));
    let pa = poset(a, random_increasing_pairs(rng, a));
    let mut pairs_b = image(pa.relation().tuples(), &f);
    pairs_b.extend(random_increasing_pairs(rng, b));
    let pb = poset(b, pairs_b);
    let mut pairs_c = image(pb.relation().tuples(), &g);
    pairs_c.extend(random_increasing_pairs(rng, c));
    let pc = poset(c, pairs_c);
    chain(
        Category::Pordinal,
        [TypedObject::Poset(pa), TypedObject::Poset(pb), TypedObject::Poset(pc)],
        MorphismData::Function(f),
        MorphismData::Function(g),
    )
}

fn total_order_chain(rng: &mut impl Rng, max: usize) -> Chain {
    let [a, b, c] = sizes(rng, max);
    let chain_on = |n| TypedObject::TotalOrder(TotalOrderObject::chain(set(n)));
    let (f, g) = (monotone_map(rng, a, b), monotone_map(rng, b, c));
    chain(
        Category::Ordinal,
        [chain_on(a), chain_on(b), chain_on(c)],
        MorphismData::Function(f),
        MorphismData::Function(g),
    )
}

fn set_chain(rng: &mut impl Rng, max: usize) -> Chain {
    let [a, b, c] = sizes(rng, max);
    chain(
        Category::Set,
        [TypedObject::Set(set(a)), TypedObject::Set(set(b)), TypedObject::Set(set(c))],
        MorphismData::Function(random_map(rng, a, b)),
        MorphismData::Function(random_map(rng, b, c)),
    )
}

fn bool_chain(rng: &mut impl Rng) -> Chain {
    let all = [(true, false), (false, true), (true, true)];
    let mut pick = || {
        let (has_false, has_true) = all[rng.random_range(0..all.len())];
        BoolObject { has_false, has_true }
    };
    let objects = [pick(), pick(), pick()];
    let len = |b: &BoolObject| b.as_set().len();
    let f = random_map(rng, len(&objects[0]), len(&objects[1]));
    let g = random_map(rng, len(&objects[1]), len(&objects[2]));
    chain(
        Category::Bool,
        objects.map(TypedObject::Bool),
        MorphismData::Function(f),
        MorphismData::Function(g),
    )
}

/// Nested windows `[lo₀, hi₀] ⊆ [lo₁, hi₁] ⊆ [lo₂, hi₂]` with at most `max`
/// elements each, and the inclusion tables between them.
fn semiring_chain(rng: &mut impl Rng, max: usize, category: Category) -> Chain {
    let kind = if category == Category::Scalar { SemiringKind::Naturals } else { SemiringKind::IntegerIntervals };
    // Carrier size is the number of window elements: `w + 1` naturals, or
    // `(w + 1)(w + 2) / 2` intervals. Windows must contain 0 and 1.
    let elements = |w: i64| if kind == SemiringKind::Naturals { w + 1 } else { (w + 1) * (w + 2) / 2 };
    let widest = (1..).take_while(|&w| elements(w) <= max as i64).last().unwrap_or(1);
    let w0 = rng.random_range(1..=widest);
    let w1 = rng.random_range(w0..=widest);
    let w2 = rng.random_range(w1..=widest);
    let shift = if kind == SemiringKind::Naturals || w0 < 2 { 0 } else { rng.random_range(0..=1) };
    let window = |w: i64| SemiringObject::windowed(kind, Window::new(-shift, w - shift));
    let windows = [window(w0), window(w1), window(w2)];
    let wrap = |s: SemiringObject| {
        if category == Category::Scalar {
            TypedObject::Scalar(s)
        } else {
            TypedObject::Interval(s)
        }
    };
    let table = |s: &SemiringObject| {
        let elems = s.window_elements().expect("windowed");
        MorphismData::Semiring(HomRule::Table(elems.iter().cloned().zip(elems.iter().cloned()).collect()))
    };
    let (f, g) = (table(&windows[0]), table(&windows[1]));
    chain(category, windows.map(wrap), f, g)
}

const WEIGHTS: [(i64, i64); 5] = [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)];

fn weight(rng: &mut impl Rng) -> Rational {
    let (n, d) = WEIGHTS[rng.random_range(0..WEIGHTS.len())];
    Rational::new(n.into(), d.into())
}

fn measure_kernel(rng: &mut impl Rng, n: usize, m: usize) -> Kernel {
    let rows = (0..n).map(|_| (0..m).map(|_| weight(rng)).collect()).collect();
    Kernel::new(space(n), space(m), Matrix::from_rows_with_cols(rows, m).expect("shape")).expect("nonnegative")
}

/// 0/1 kernels with every column sum at most one.
fn unit_family_kernel(rng: &mut impl Rng, n: usize, m: usize) -> Kernel {
    let mut entries = Matrix::zeros(n, m);
    for y in 0..m {
        let x = rng.random_range(0..=n);
        if x < n {
            entries.set(x, y, int(1));
        }
    }
    Kernel::new(space(n), space(m), entries).expect("nonnegative")
}

pub fn stochastic_rows(rng: &mut impl Rng, n: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|_| {
            let mut raw: Vec<i64> = (0..m).map(|_| rng.random_range(0..4)).collect();
            if raw.iter().all(|&w| w == 0) {
                raw[rng.random_range(0..m)] = 1;
            }
            let total: i64 = raw.iter().sum();
            raw.into_iter().map(|w| Rational::new(w.into(), total.into())).collect()
        })
        .collect()
}

fn stochastic_kernel(rng: &mut impl Rng, n: usize, m: usize) -> Kernel {
    let rows = stochastic_rows(rng, n, m);
    Kernel::stochastic(space(n), space(m), Matrix::from_rows_with_cols(rows, m).expect("shape")).expect("stochastic")
}

fn kernel_chain(rng: &mut impl Rng, max: usize, category: Category, unit_family: bool) -> Chain {
    let [a, b, c] = sizes(rng, max);
    let (f, g) = match (category, unit_family) {
        (Category::Prob, _) => (stochastic_kernel(rng, a, b), stochastic_kernel(rng, b, c)),
        (_, true) => (unit_family_kernel(rng, a, b), unit_family_kernel(rng, b, c)),
        _ => (measure_kernel(rng, a, b), measure_kernel(rng, b, c)),
    };
    let wrap = if category == Category::Prob { TypedObject::Prob } else { TypedObject::Meas };
    chain(
        category,
        [wrap(space(a)), wrap(space(b)), wrap(space(c))],
        MorphismData::Kernel(f),
        MorphismData::Kernel(g),
    )
}

fn probability(rng: &mut impl Rng, n: usize) -> ProbabilityMeasure {
    let weights = stochastic_rows(rng, 1, n).remove(0);
    ProbabilityMeasure::new(space(n), weights).expect("sums to one")
}

/// Maps `(φ₁, φ₂)` into `target` and a source random variable making the
/// square commute: `X_source(ω)` is drawn from `φ₂⁻¹(X_target(φ₁(ω)))`.
/// `None` when some preimage is empty.
fn pull_back(
    rng: &mut impl Rng,
    omega: usize,
    states: usize,
    target_omega: usize,
    target_states: usize,
    target_x: &[usize],
) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let phi1 = random_map(rng, omega, target_omega);
    let phi2 = random_map(rng, states, target_states);
    let mut x = Vec::with_capacity(omega);
    for &w in &phi1 {
        let wanted = target_x[w];
        let choices: Vec<usize> = (0..states).filter(|&s| phi2[s] == wanted).collect();
        if choices.is_empty() {
            return None;
        }
        x.push(choices[rng.random_range(0..choices.len())]);
    }
    Some((phi1, phi2, x))
}

fn rv_chain(rng: &mut impl Rng, max: usize) -> Chain {
    loop {
        let [wa, wb, wc] = sizes(rng, max);
        let [sa, sb, sc] = sizes(rng, max);
        let xc = random_map(rng, wc, sc);
        let Some((g1, g2, xb)) = pull_back(rng, wb, sb, wc, sc, &xc) else { continue };
        let Some((f1, f2, xa)) = pull_back(rng, wa, sa, wb, sb, &xb) else { continue };
        let rv = |rng: &mut ChaCha8Rng, w, s, x| RandomVariable::new(probability(rng, w), space(s), x).expect("valid");
        let mut local = ChaCha8Rng::seed_from_u64(rng.next_u64());
        let objects = [
            TypedObject::Rv(rv(&mut local, wa, sa, xa)),
            TypedObject::Rv(rv(&mut local, wb, sb, xb)),
            TypedObject::Rv(rv(&mut local, wc, sc, xc)),
        ];
        return chain(
            Category::Rv,
            objects,
            MorphismData::Rv(RvMorphism { omega_map: f1, state_map: f2 }),
            MorphismData::Rv(RvMorphism { omega_map: g1, state_map: g2 }),
        );
    }
}

pub const INDEX: [&str; 2] = ["t0", "t1"];

fn sto_chain(rng: &mut impl Rng, max: usize) -> Chain {
    let steps = INDEX.len();
    'retry: loop {
        let [wa, wb, wc] = sizes(rng, max);
        let [sa, sb, sc] = sizes(rng, max);
        let xc: Vec<Vec<usize>> = (0..steps).map(|_| random_map(rng, wc, sc)).collect();
        let (mut g1, mut g2, mut xb) = (Vec::new(), Vec::new(), Vec::new());
        let (mut f1, mut f2, mut xa) = (Vec::new(), Vec::new(), Vec::new());
        for t in 0..steps {
            let Some((o, s, x)) = pull_back(rng, wb, sb, wc, sc, &xc[t]) else { continue 'retry };
            g1.push(o);
            g2.push(s);
            xb.push(x);
        }
        for t in 0..steps {
            let Some((o, s, x)) = pull_back(rng, wa, sa, wb, sb, &xb[t]) else { continue 'retry };
            f1.push(o);
            f2.push(s);
            xa.push(x);
        }
        let index: Vec<String> = INDEX.iter().map(|t| t.to_string()).collect();
        let mut process = |w, s, x| {
            TypedObject::Sto(StochasticProcess::new(probability(rng, w), space(s), index.clone(), x).expect("valid"))
        };
        let objects = [process(wa, sa, xa), process(wb, sb, xb), process(wc, sc, xc)];
        return chain(
            Category::Sto,
            objects,
            MorphismData::Sto(StoMorphism { omega_maps: f1, state_maps: f2 }),
            MorphismData::Sto(StoMorphism { omega_maps: g1, state_maps: g2 }),
        );
    }
}

/// A random composable pair in `category` on carriers of at most `max`
/// points.
pub fn random_chain(rng: &mut ChaCha8Rng, category: Category, max: usize) -> Chain {
    match category {
        Category::Set => set_chain(rng, max),
        Category::Bool => bool_chain(rng),
        Category::BiRel | Category::KRel | Category::NRel => relation_chain(rng, max, category),
        Category::Pordinal => poset_chain(rng, max),
        Category::Ordinal => total_order_chain(rng, max),
        Category::Interval | Category::Scalar => semiring_chain(rng, max, category),
        Category::Meas | Category::Prob => kernel_chain(rng, max, category, false),
        Category::Rv => rv_chain(rng, max),
        Category::Sto => sto_chain(rng, max),
    }
}

/// Like [`random_chain`] but restricted to the subcategory the functor is
/// defined on.
pub fn random_chain_for(rng: &mut ChaCha8Rng, functor: FunctorId, max: usize) -> Chain {
    match functor {
        FunctorId::MeasToSet => kernel_chain(rng, max, Category::Meas, true),
        FunctorId::PordinalToBiRel => poset_chain(rng, max),
        other => random_chain(rng, other.source(), max),
    }
}
