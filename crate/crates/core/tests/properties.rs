mod common;

use std::collections::BTreeMap;

use catfuse::asc::{attachment_chains, face_category, Simplex, SimplicialComplex};
use catfuse::cli::formats::ObjectFile;
use catfuse::enumerate::{all_relations, sample_morphisms, sample_objects, set, space};
use catfuse::fvect::{compose, pseudo_distance, span, LinearMap, Matrix, Vector, VectorSpace};
use catfuse::hierarchy::{Functor, FunctorId, HierarchyFunctor};
use catfuse::measure::{
    compose_kernels, push_measure, push_probability, rv_elements, sto_elements, Kernel, Measure, ProbabilityMeasure,
};
use catfuse::pipeline::{build_l_example, cook_f1, cook_f2, l_example_readings, run_pipeline};
use catfuse::scalar::{int, ratio, Rational};
use catfuse::sheaf::{is_global_section, validate_sheaf, Assignment, Sheaf};
use catfuse::typesys::{check_morphism, compose_morphism, Category, PosetObject, RelObject, TypedObject};
use catfuse::vectorize::{kernel_to_linear, krel_to_fvect, meas_to_fvect};
use common::{random_chain, rng};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(rational(), rows * cols).prop_map(move |entries| {
        Matrix::from_fn(rows, cols, |r, c| entries[r * cols + c].clone())
    })
}

fn linear(from: usize, to: usize) -> impl Strategy<Value = LinearMap> {
    matrix(to, from).prop_map(move |m| {
        LinearMap::new(VectorSpace::standard(from), VectorSpace::standard(to), m).expect("shape matches")
    })
}

fn composable_triple() -> impl Strategy<Value = (LinearMap, LinearMap, LinearMap)> {
    (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(a, b, c, d)| (linear(a, b), linear(b, c), linear(c, d)))
}

fn nonnegative_kernel(n: usize, m: usize) -> impl Strategy<Value = Kernel> {
    prop::collection::vec((0i64..=3, 1i64..=2), n * m).prop_map(move |w| {
        let entries = Matrix::from_fn(n, m, |x, y| ratio(w[x * m + y].0, w[x * m + y].1));
        Kernel::new(space(n), space(m), entries).expect("nonnegative")
    })
}

fn stochastic_kernel(n: usize, m: usize) -> impl Strategy<Value = Kernel> {
    prop::collection::vec(prop::collection::vec(0i64..=3, m), n).prop_map(move |rows| {
        let entries = Matrix::from_rows_with_cols(
            rows.into_iter()
                .map(|mut row| {
                    if row.iter().all(|&w| w == 0) {
                        row[0] = 1;
                    }
                    let total: i64 = row.iter().sum();
                    row.into_iter().map(|w| ratio(w, total)).collect()
                })
                .collect(),
            m,
        )
        .expect("shape");
        Kernel::stochastic(space(n), space(m), entries).expect("stochastic")
    })
}

fn measure(n: usize) -> impl Strategy<Value = Measure> {
    prop::collection::vec((0i64..=4, 1i64..=3).prop_map(|(a, b)| ratio(a, b)), n).prop_map(move |w| Measure::new(space(n), w).expect("weights per point"))
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    let vertices = ["a", "b", "c", "d", "e"];
    prop::collection::vec(prop::collection::btree_set(0usize..5, 1..=3), 1..=4).prop_map(move |faces| {
        SimplicialComplex::from_maximal(
            faces.into_iter().map(|f| Simplex::new(f.into_iter().map(|i| vertices[i])).expect("nonempty")),
        )
    })
}

// fvect

proptest! {
    #[test]
    fn linear_composition_is_associative((f, g, h) in composable_triple()) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn span_rank_is_bounded(dim in 1usize..=5, count in 0usize..=6, seed in any::<u64>()) {
        let ambient = VectorSpace::standard(dim);
        let mut rng = rng(seed);
        let generators = (0..count)
            .map(|_| {
                let coords = (0..dim).map(|_| int(rand::Rng::random_range(&mut rng, -2..=2))).collect();
                ambient.vector(coords).unwrap()
            })
            .collect();
        let s = span(&ambient, generators).unwrap();
        prop_assert!(s.rank() <= count.min(dim));
    }

    #[test]
    fn pseudo_distance_axioms(
        a in prop::collection::vec(rational(), 3),
        b in prop::collection::vec(rational(), 3),
        c in prop::collection::vec(rational(), 3),
    ) {
        let space = VectorSpace::standard(3);
        let (u, v, w) = (space.vector(a).unwrap(), space.vector(b).unwrap(), space.vector(c).unwrap());
        let d = |x, y| pseudo_distance(x, y).unwrap();
        prop_assert_eq!(d(&u, &u), 0.0);
        prop_assert!(d(&u, &v) >= 0.0);
        prop_assert!((d(&u, &v) - d(&v, &u)).abs() <= 1e-12);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-12);
    }

    #[test]
    fn float_pseudo_distance_axioms(
        a in prop::collection::vec(-10.0f64..10.0, 4),
        b in prop::collection::vec(-10.0f64..10.0, 4),
        c in prop::collection::vec(-10.0f64..10.0, 4),
    ) {
        let space = VectorSpace::standard(4);
        let (u, v, w) = (space.vector(a).unwrap(), space.vector(b).unwrap(), space.vector(c).unwrap());
        let d = |x, y| pseudo_distance::<f64>(x, y).unwrap();
        prop_assert!(d(&u, &u).abs() <= 1e-12);
        prop_assert!((d(&u, &v) - d(&v, &u)).abs() <= 1e-12);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-12);
    }
}

// asc

proptest! {
    #[test]
    fn face_category_is_a_partial_order(complex in complex()) {
        let category = face_category(&complex);
        let faces = category.objects().to_vec();
        for x in &faces {
            prop_assert!(category.hom(x, x).is_some());
            for y in &faces {
                if x != y {
                    prop_assert!(!(category.hom(x, y).is_some() && category.hom(y, x).is_some()));
                }
            }
        }
        for chain in attachment_chains(&category) {
            let composite = category.compose(&chain.second, &chain.first).unwrap();
            prop_assert_eq!(Some(composite.clone()), category.hom(&composite.from, &composite.to));
        }
    }
}

// typesys

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composites_pass_validation(seed in any::<u64>(), which in 0usize..Category::ALL.len()) {
        let category = Category::ALL[which];
        let chain = random_chain(&mut rng(seed), category, 4);
        let (f, g) = (&chain.morphisms[0], &chain.morphisms[1]);
        let gf = compose_morphism(g, f).unwrap();
        prop_assert!(check_morphism(category, gf.data().clone(), gf.source(), gf.target()).is_ok());
    }

    #[test]
    fn missing_transitive_pair_is_witnessed(n in 3usize..=5) {
        // a chain 0 ≤ 1 ≤ … with the pair (0, 2) dropped
        let tuples = (0..n)
            .flat_map(|i| (i..n).map(move |j| vec![i, j]))
            .filter(|t| t != &vec![0, 2])
            .collect();
        let rel = RelObject::from_indices(set(n), 2, tuples).unwrap();
        let err = PosetObject::new(rel).unwrap_err().to_string();
        prop_assert!(err.contains("transitivity"), "{}", err);
        prop_assert!(err.contains("but not (a,c)"), "{}", err);
    }
}

#[test]
fn small_composites_pass_validation_exhaustively() {
    for category in Category::ALL {
        let objects = sample_objects(category, 2);
        let morphisms = sample_morphisms(category, &objects, &[int(0), int(1)]).unwrap();
        for f in &morphisms {
            for g in morphisms.iter().filter(|g| g.source() == f.target()) {
                let gf = compose_morphism(g, f).unwrap();
                assert!(
                    check_morphism(category, gf.data().clone(), gf.source(), gf.target()).is_ok(),
                    "{category}: composite of {:?} and {:?} fails",
                    f.data(),
                    g.data()
                );
            }
        }
    }
}

// measure

proptest! {
    #[test]
    fn push_is_linear(
        (k, m1, m2) in (1usize..=4, 1usize..=4).prop_flat_map(|(n, m)| (nonnegative_kernel(n, m), measure(n), measure(n))),
        c in (0i64..=4, 1i64..=3).prop_map(|(a, b)| ratio(a, b)),
    ) {
        let sum = push_measure(&k, &m1.add(&m2).unwrap()).unwrap();
        prop_assert_eq!(sum, push_measure(&k, &m1).unwrap().add(&push_measure(&k, &m2).unwrap()).unwrap());
        let scaled = push_measure(&k, &m1.scale(&c).unwrap()).unwrap();
        prop_assert_eq!(scaled, push_measure(&k, &m1).unwrap().scale(&c).unwrap());
    }

    #[test]
    fn stochasticity_is_preserved(
        (a, b, p) in (1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(n, m, l)| (stochastic_kernel(n, m), stochastic_kernel(m, l), stochastic_kernel(1, n))),
    ) {
        prop_assert!(compose_kernels(&b, &a).unwrap().is_stochastic());
        let weights = p.entries().row(0).to_vec();
        let prob = ProbabilityMeasure::new(a.source().clone(), weights).unwrap();
        let pushed = push_probability(&a, &prob).unwrap();
        prop_assert_eq!(pushed.measure().total(), int(1));
    }

    #[test]
    fn kernel_matrices_push_measures((k, m) in (1usize..=4, 1usize..=4).prop_flat_map(|(n, l)| (nonnegative_kernel(n, l), measure(n)))) {
        let target = meas_to_fvect(k.target());
        let source = meas_to_fvect(k.source());
        let image = catfuse::fvect::apply(&kernel_to_linear(&k), &source.vector(&m).unwrap()).unwrap();
        prop_assert_eq!(image, target.vector(&push_measure(&k, &m).unwrap()).unwrap());
    }

    #[test]
    fn element_counts_follow_outcomes(seed in any::<u64>()) {
        let chain = random_chain(&mut rng(seed), Category::Sto, 4);
        for object in &chain.objects {
            if let TypedObject::Sto(p) = object {
                prop_assert_eq!(sto_elements(p).len(), p.omega().len().pow(p.index().len() as u32));
                for t in 0..p.index().len() {
                    let rv = p.at(t);
                    prop_assert_eq!(rv_elements(&rv).len(), rv.omega().len());
                }
            }
        }
    }
}

fn signed(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), n)
        .prop_map(move |w| meas_to_fvect(&space(n)).vector_space().vector(w).unwrap())
}

// the eight vector-space axioms on signed measures
proptest! {
    #[test]
    fn signed_measures_form_a_vector_space(
        (u, v, w) in (1usize..=4).prop_flat_map(|n| (signed(n), signed(n), signed(n))),
        a in rational(),
        b in rational(),
    ) {
        let zero = u.space().zero();
        let add = |x: &Vector, y: &Vector| x.add(y).unwrap();
        prop_assert_eq!(add(&add(&u, &v), &w), add(&u, &add(&v, &w)));
        prop_assert_eq!(add(&u, &v), add(&v, &u));
        prop_assert_eq!(add(&u, &zero), u.clone());
        prop_assert_eq!(add(&u, &u.neg()), zero);
        prop_assert_eq!(u.scale(&b).scale(&a), u.scale(&(a.clone() * b.clone())));
        prop_assert_eq!(u.scale(&int(1)), u.clone());
        prop_assert_eq!(add(&u, &v).scale(&a), add(&u.scale(&a), &v.scale(&a)));
        prop_assert_eq!(u.scale(&(a.clone() + b.clone())), add(&u.scale(&a), &u.scale(&b)));
    }
}

// hierarchy

#[test]
fn probability_families_embed_in_measure_families() {
    let functor = HierarchyFunctor::new(FunctorId::ProbToMeas);
    let objects = sample_objects(Category::Prob, 4);
    let images: Vec<TypedObject> = objects.iter().map(|o| functor.apply_object(o).unwrap()).collect();
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            assert_eq!(i == j, a == b, "{:?} and {:?}", objects[i], objects[j]);
        }
    }
}

// vectorize

#[test]
fn binary_relations_vectorize_independently() {
    for n in 1..=3 {
        for rel in all_relations(n, 2) {
            assert_eq!(krel_to_fvect(&rel).subspace.rank(), n, "{rel:?}");
        }
    }
}

proptest! {
    #[test]
    fn relations_vectorize_independently(n in 1usize..=6, arity in 2usize..=4, tuples in prop::collection::vec(prop::collection::vec(0usize..6, 4), 0..10)) {
        let tuples: Vec<Vec<usize>> = tuples.into_iter().map(|t| t.into_iter().take(arity).map(|i| i % n).collect()).collect();
        let mut tuples = tuples;
        tuples.sort();
        tuples.dedup();
        let rel = RelObject::from_indices(set(n), arity, tuples).unwrap();
        prop_assert_eq!(krel_to_fvect(&rel).subspace.rank(), n);
    }
}

// sheaf

fn consistent_sheaf(seed: u64) -> Sheaf {
    let mut rng = rng(seed);
    let complex = SimplicialComplex::from_maximal([Simplex::new(["a", "b", "c"]).unwrap()]);
    let d = rand::Rng::random_range(&mut rng, 1..=2);
    let faces: Vec<Simplex> = complex.faces().cloned().collect();
    let basis: BTreeMap<Simplex, Matrix> = faces
        .iter()
        .map(|f| {
            let m = loop {
                let m = Matrix::from_fn(d, d, |_, _| int(rand::Rng::random_range(&mut rng, -2..=2)));
                if m.inverse().is_some() {
                    break m;
                }
            };
            (f.clone(), m)
        })
        .collect();
    let stalks = faces.iter().map(|f| (f.clone(), VectorSpace::standard(d))).collect();
    let matrices = face_category(&complex)
        .attachments()
        .into_iter()
        .map(|a| {
            let m = basis[&a.to].mul(&basis[&a.from].inverse().unwrap()).unwrap();
            (a, m)
        })
        .collect();
    Sheaf::from_matrices(complex, stalks, matrices).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_condition_composes(seed in any::<u64>(), values in prop::collection::vec(-1i64..=1, 14)) {
        let sheaf = consistent_sheaf(seed);
        prop_assert!(validate_sheaf(&sheaf).unwrap().is_valid());
        // a vertex value pushed forward, then random values on some faces
        let mut assignment = Assignment::new();
        let faces: Vec<Simplex> = sheaf.complex().faces().cloned().collect();
        for (i, face) in faces.iter().enumerate() {
            let space = sheaf.stalk(face).unwrap();
            let coords = (0..space.dim()).map(|k| int(values[(2 * i + k) % values.len()])).collect();
            assignment.insert(face.clone(), space.vector(coords).unwrap());
        }
        let report = is_global_section(&sheaf, &assignment, 0.0).unwrap();
        let violated: Vec<_> = report.violations.iter().map(|v| v.attachment.clone()).collect();
        for chain in attachment_chains(&face_category(sheaf.complex())) {
            if !violated.contains(&chain.first) && !violated.contains(&chain.second) {
                prop_assert!(!violated.contains(&chain.composite()), "{}", chain);
            }
        }
    }
}

// pipeline

proptest! {
    #[test]
    fn pipeline_is_deterministic(tenths in 0u32..=10, violent in 0usize..=4, calm in 0usize..=4) {
        let scenario = build_l_example();
        let readings = l_example_readings(f64::from(tenths) / 10.0, violent, calm);
        let first = run_pipeline(&scenario, &readings, 0.0).unwrap();
        let second = run_pipeline(&scenario, &readings, 0.0).unwrap();
        prop_assert_eq!(first, second);
    }
}

#[test]
fn agreement_decides_the_section() {
    let scenario = build_l_example();
    for tenths in 0..=10u32 {
        let score = f64::from(tenths) / 10.0;
        for i in 0..=3u64 {
            for j in 0..=3u64 {
                let outcome = run_pipeline(&scenario, &l_example_readings(score, i as usize, j as usize), 0.0).unwrap();
                let agree = cook_f1(score).unwrap() == cook_f2(i, j);
                assert_eq!(outcome.report.is_section, agree, "score {score}, counts ({i},{j})");
            }
        }
    }
}

// cli

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn objects_round_trip_through_json(seed in any::<u64>(), which in 0usize..Category::ALL.len()) {
        let chain = random_chain(&mut rng(seed), Category::ALL[which], 5);
        for object in &chain.objects {
            let text = serde_json::to_string(&ObjectFile::from_object(object)).unwrap();
            let back: ObjectFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back.to_object().unwrap(), object);
        }
    }
}
