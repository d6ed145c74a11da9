//! Exhaustive enumeration of small objects and hom-sets, for checking laws
//! by brute force.

use crate::error::Result;
use crate::fvect::Matrix;
use crate::measure::{FiniteMeasurableSpace, Kernel, ProbabilityMeasure, RandomVariable, StochasticProcess};
use crate::measure::{check_rv_morphism, check_sto_morphism};
use crate::scalar::Rational;
use crate::typesys::{
    check_morphism, BoolObject, Category, HomRule, MorphismData, PosetObject, RelObject, SemiringKind,
    SemiringObject, SetObject, TotalOrderObject, TypedMorphism, TypedObject, Window,
};

/// `a, b, …, z, p26, p27, …`
pub fn labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match u8::try_from(i) {
            Ok(c) if c < 26 => char::from(b'a' + c).to_string(),
            _ => format!("p{i}"),
        })
        .collect()
}

pub fn set(n: usize) -> SetObject {
    SetObject::new(labels(n)).expect("distinct labels")
}

pub fn space(n: usize) -> FiniteMeasurableSpace {
    FiniteMeasurableSpace::new(labels(n)).expect("distinct labels")
}

/// All `m^n` functions `{0..n} → {0..m}`, first argument varying slowest.
pub fn functions(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = if n == 0 { 1 } else { m.checked_pow(n as u32).unwrap_or(0) };
    (0..count).map(move |mut index| {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = index % m;
            index /= m;
        }
        out
    })
}

/// All `k`-tuples over `{0..n}` in lexicographic order.
fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    functions(arity, n).collect()
}

/// All `2^(n^k)` relations of the given arity on an `n`-element set.
pub fn all_relations(n: usize, arity: usize) -> Vec<RelObject> {
    let all = tuples(n, arity);
    let count = 1usize << all.len();
    (0..count)
        .map(|mask| {
            let chosen = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect();
            RelObject::from_indices(set(n), arity, chosen).expect("tuples in range")
        })
        .collect()
}

/// Empty, diagonal, full and successor relations on `n` points.
pub fn representative_relations(n: usize, arity: usize) -> Vec<RelObject> {
    let rel = |ts: Vec<Vec<usize>>| RelObject::from_indices(set(n), arity, ts).expect("tuples in range");
    let mut out = vec![
        rel(Vec::new()),
        rel((0..n).map(|i| vec![i; arity]).collect()),
        rel(tuples(n, arity)),
    ];
    if n > 1 {
        out.push(rel((0..n - 1).map(|i| (0..arity).map(|k| (i + k).min(n - 1)).collect()).collect()));
    }
    out.dedup();
    out
}

/// Every partial order on `n` labelled points.
pub fn all_posets(n: usize) -> Vec<PosetObject> {
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0..1usize << off_diagonal.len())
        .filter_map(|mask| {
            let mut pairs: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i]).collect();
            pairs.extend(
                off_diagonal
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &(i, j))| vec![i, j]),
            );
            PosetObject::new(RelObject::from_indices(set(n), 2, pairs).ok()?).ok()
        })
        .collect()
}

/// One partial order on `n` points from each isomorphism class (1, 2, 5
/// for n = 1, 2, 3).
pub fn posets_up_to_isomorphism(n: usize) -> Vec<PosetObject> {
    let perms: Vec<Vec<usize>> = functions(n, n)
        .filter(|p| (0..n).all(|i| p.contains(&i)))
        .collect();
    let canonical = |p: &PosetObject| -> Vec<Vec<usize>> {
        perms
            .iter()
            .map(|perm| {
                let mut pairs: Vec<Vec<usize>> =
                    p.relation().tuples().iter().map(|t| t.iter().map(|&i| perm[i]).collect()).collect();
                pairs.sort();
                pairs
            })
            .min()
            .unwrap_or_default()
    };
    let mut seen = std::collections::HashSet::new();
    all_posets(n).into_iter().filter(|p| seen.insert(canonical(p))).collect()
}

/// Every total order on `n` labelled points.
pub fn all_total_orders(n: usize) -> Vec<TotalOrderObject> {
    all_posets(n)
        .into_iter()
        .filter_map(|p| TotalOrderObject::new(p.relation().clone()).ok())
        .collect()
}

/// Every nonnegative kernel `x → y` with entries from `grid` (row-stochastic
/// ones only when `stochastic`).
pub fn kernels(x: &FiniteMeasurableSpace, y: &FiniteMeasurableSpace, grid: &[Rational], stochastic: bool) -> Vec<Kernel> {
    let rows: Vec<Vec<Rational>> = functions(y.len(), grid.len())
        .map(|f| f.into_iter().map(|i| grid[i].clone()).collect::<Vec<_>>())
        .filter(|row: &Vec<Rational>| !row.iter().any(|w| w < &Rational::from_integer(0.into())))
        .filter(|row| !stochastic || row.iter().sum::<Rational>() == Rational::from_integer(1.into()))
        .collect();
    functions(x.len(), rows.len())
        .filter_map(|choice| {
            let m = Matrix::from_rows_with_cols(choice.iter().map(|&r| rows[r].clone()).collect(), y.len()).ok()?;
            Kernel::new(x.clone(), y.clone(), m).ok()
        })
        .collect()
}

fn semiring(kind: SemiringKind, lo: i64, hi: i64) -> SemiringObject {
    SemiringObject::windowed(kind, Window::new(lo, hi))
}

fn uniform(n: usize) -> ProbabilityMeasure {
    ProbabilityMeasure::uniform(space(n)).expect("nonempty space")
}

fn states(n: usize) -> FiniteMeasurableSpace {
    FiniteMeasurableSpace::new((0..n).map(|i| format!("s{i}"))).expect("distinct labels")
}

/// Every random variable with `|Ω|, |S| ≤ max` and uniform probability.
pub fn all_random_variables(max: usize) -> Vec<RandomVariable> {
    let mut out = Vec::new();
    for w in 1..=max {
        for s in 1..=max {
            for x in functions(w, s) {
                out.push(RandomVariable::new(uniform(w), states(s), x).expect("valid map"));
            }
        }
    }
    out
}

/// Processes over `index` with `|Ω|, |S| ≤ max`, uniform probability and
/// every family of maps.
pub fn all_processes(max: usize, index: &[String]) -> Vec<StochasticProcess> {
    let mut out = Vec::new();
    for w in 1..=max {
        for s in 1..=max {
            let maps: Vec<Vec<usize>> = functions(w, s).collect();
            for family in functions(index.len(), maps.len()) {
                let x_maps = family.iter().map(|&i| maps[i].clone()).collect();
                out.push(StochasticProcess::new(uniform(w), states(s), index.to_vec(), x_maps).expect("valid maps"));
            }
        }
    }
    out
}

// Processes indexed by {t0, t1} whose two maps agree, plus one mixed family
// per pair of spaces. The full family grows as maps^|T| and makes the
// composition checks quadratic in a few thousand morphisms.
fn sample_processes(max: usize) -> Vec<StochasticProcess> {
    let index = vec!["t0".to_string(), "t1".to_string()];
    let mut out = Vec::new();
    for w in 1..=max {
        for s in 1..=max {
            let maps: Vec<Vec<usize>> = functions(w, s).collect();
            let mut families: Vec<Vec<Vec<usize>>> = maps.iter().map(|m| vec![m.clone(), m.clone()]).collect();
            if maps.len() > 1 {
                families.push(vec![maps[0].clone(), maps[maps.len() - 1].clone()]);
            }
            for x_maps in families {
                out.push(StochasticProcess::new(uniform(w), states(s), index.clone(), x_maps).expect("valid maps"));
            }
        }
    }
    out
}

/// A deterministic family of objects of `category` on carriers of size at
/// most `max` (random variables and processes use at most two points per
/// space). Small relation categories are listed completely, partial orders
/// up to isomorphism.
pub fn sample_objects(category: Category, max: usize) -> Vec<TypedObject> {
    let small = max.min(2);
    let relations = |arity: usize| -> Vec<RelObject> {
        let mut out: Vec<RelObject> = (1..=small).flat_map(|n| all_relations(n, arity)).collect();
        out.extend((small + 1..=max).flat_map(|n| representative_relations(n, arity)));
        out
    };
    match category {
        Category::Set => (0..=max).map(|n| TypedObject::Set(set(n))).collect(),
        Category::Bool => [(false, false), (true, false), (false, true), (true, true)]
            .into_iter()
            .map(|(has_false, has_true)| TypedObject::Bool(BoolObject { has_false, has_true }))
            .collect(),
        Category::BiRel => relations(2).into_iter().map(TypedObject::Rel).collect(),
        Category::KRel | Category::NRel => {
            let mut rels = relations(2);
            rels.extend((1..=max).flat_map(|n| representative_relations(n, 3)));
            let wrap = if category == Category::KRel { TypedObject::Rel } else { TypedObject::NRel };
            rels.into_iter().map(wrap).collect()
        }
        Category::Pordinal => (1..=max).flat_map(posets_up_to_isomorphism).map(TypedObject::Poset).collect(),
        Category::Ordinal => (1..=max).flat_map(all_total_orders).map(TypedObject::TotalOrder).collect(),
        Category::Scalar => (2..=max)
            .map(|n| TypedObject::Scalar(semiring(SemiringKind::Naturals, 0, n as i64 - 1)))
            .collect(),
        Category::Interval => {
            let mut out: Vec<TypedObject> = (2..=max)
                .map(|n| TypedObject::Interval(semiring(SemiringKind::Naturals, 0, n as i64 - 1)))
                .collect();
            if max >= 3 {
                out.push(TypedObject::Interval(semiring(SemiringKind::IntegerIntervals, 0, 1)));
                out.push(TypedObject::Interval(semiring(SemiringKind::RationalIntervals, 0, 1)));
            }
            out
        }
        Category::Meas => (1..=max).map(|n| TypedObject::Meas(space(n))).collect(),
        Category::Prob => (1..=max).map(|n| TypedObject::Prob(space(n))).collect(),
        Category::Rv => all_random_variables(small).into_iter().map(TypedObject::Rv).collect(),
        Category::Sto => sample_processes(small).into_iter().map(TypedObject::Sto).collect(),
    }
}

fn window(object: &TypedObject) -> Option<&SemiringObject> {
    match object {
        TypedObject::Interval(s) | TypedObject::Scalar(s) => Some(s),
        _ => None,
    }
}

/// Every morphism `a → b` in `category`. Kernels take their entries from
/// `grid`; semiring homomorphisms are all tables on the windows.
pub fn hom_set(category: Category, a: &TypedObject, b: &TypedObject, grid: &[Rational]) -> Result<Vec<TypedMorphism>> {
    let keep = |data: MorphismData| check_morphism(category, data, a, b).ok();
    Ok(match (a, b) {
        (TypedObject::Meas(x) | TypedObject::Prob(x), TypedObject::Meas(y) | TypedObject::Prob(y)) => {
            kernels(x, y, grid, category == Category::Prob)
                .into_iter()
                .filter_map(|k| keep(MorphismData::Kernel(k)))
                .collect()
        }
        (TypedObject::Rv(y), TypedObject::Rv(z)) => {
            let mut out = Vec::new();
            for om in functions(y.omega().len(), z.omega().len()) {
                for sm in functions(y.state().len(), z.state().len()) {
                    if let Ok(m) = check_rv_morphism(om.clone(), sm, y, z) {
                        out.extend(keep(MorphismData::Rv(m)));
                    }
                }
            }
            out
        }
        (TypedObject::Sto(y), TypedObject::Sto(z)) => {
            let steps = y.index().len();
            let oms: Vec<Vec<usize>> = functions(y.omega().len(), z.omega().len()).collect();
            let sms: Vec<Vec<usize>> = functions(y.state().len(), z.state().len()).collect();
            let mut out = Vec::new();
            for pick_o in functions(steps, oms.len()) {
                for pick_s in functions(steps, sms.len()) {
                    let om = pick_o.iter().map(|&i| oms[i].clone()).collect();
                    let sm = pick_s.iter().map(|&i| sms[i].clone()).collect();
                    if let Ok(m) = check_sto_morphism(om, sm, y, z) {
                        out.extend(keep(MorphismData::Sto(m)));
                    }
                }
            }
            out
        }
        _ => match (window(a), window(b)) {
            (Some(s), Some(t)) => {
                let (from, to) = (s.window_elements()?, t.window_elements()?);
                functions(from.len(), to.len())
                    .filter_map(|f| {
                        let table = from.iter().cloned().zip(f.iter().map(|&j| to[j].clone())).collect();
                        keep(MorphismData::Semiring(HomRule::Table(table)))
                    })
                    .collect()
            }
            _ => match (a.base_set(), b.base_set()) {
                (Some(x), Some(y)) => functions(x.len(), y.len())
                    .filter_map(|f| keep(MorphismData::Function(f)))
                    .collect(),
                _ => Vec::new(),
            },
        },
    })
}

/// All morphisms among `objects`, hom-set by hom-set.
pub fn sample_morphisms(category: Category, objects: &[TypedObject], grid: &[Rational]) -> Result<Vec<TypedMorphism>> {
    let mut out = Vec::new();
    for a in objects {
        for b in objects {
            out.extend(hom_set(category, a, b, grid)?);
        }
    }
    Ok(out)
}
