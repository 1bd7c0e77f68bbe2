mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use common::brute_force_morphisms;
use suralg::hierarchy::{sa_stage, st_stage};
use suralg::sigma::{
    check_axioms, check_morphism, classify_embedding, compose, enumerate_cuts, find_isomorphism,
    identity, initial_psur, minimal_partial, order_properties, product, search_morphisms,
    substructure, CutKind, EmbeddingKind, SearchLimits, SigmaError, StructureBuilder, Witness,
};
use suralg::surreal::no_stage;
use suralg::universal::{canonical_into, pushout_plus};
use suralg::{Cut, Elem, Morphism, MorphismKind, Structure};

const ZERO: &str = "<|>";
const ONE: &str = "<<|>|>";
const MINUS_ONE: &str = "<|<|>>";
const MIDDLE: &str = "<<|<|>>|<<|>|>>";

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn count(s: &Arc<Structure>, t: &Arc<Structure>, kind: MorphismKind) -> usize {
    search_morphisms(s, t, kind, &[], limits()).unwrap().morphisms.len()
}

fn tables(ms: &[Morphism]) -> BTreeSet<Vec<Elem>> {
    ms.iter().map(|m| m.table().to_vec()).collect()
}

fn pair_witness(w: &Option<Witness>) -> BTreeSet<String> {
    match w {
        Some(Witness::Pair(a, b)) => [a.clone(), b.clone()].into(),
        other => panic!("expected a pair witness, got {other:?}"),
    }
}

#[test]
fn cut_enumeration_examples() {
    let mut b = StructureBuilder::default();
    let x = b.element("x");
    b.star(x).neg_pair(x, x);
    let one = b.build().unwrap();
    let cuts = enumerate_cuts(&one, CutKind::Conway).unwrap();
    let want = [Cut::new([], []), Cut::new([], [x]), Cut::new([x], [])];
    assert_eq!(cuts.iter().cloned().collect::<BTreeSet<_>>(), want.into_iter().collect());
    assert_eq!(enumerate_cuts(sa_stage(1).unwrap().structure(), CutKind::Conway).unwrap().len(), 17);
    assert_eq!(enumerate_cuts(&initial_psur(), CutKind::Conway).unwrap().len(), 3);
}

#[test]
fn axiom_examples() {
    let mut b = StructureBuilder::default();
    let a = b.element("a");
    let c = b.element("b");
    b.star(a).neg_pair(a, a).neg_pair(c, c).lt(a, c).lt(c, a);
    let cyclic = b.build().unwrap();
    let report = check_axioms(&cyclic);
    let ps1 = report.get("pS1").unwrap();
    assert!(!ps1.passed);
    match ps1.witness.as_ref().unwrap() {
        Witness::Cycle(c) => assert_eq!(c.len(), 3, "{c:?}"),
        other => panic!("{other:?}"),
    }
    let no3 = check_axioms(&no_stage(3).unwrap());
    assert!(no3.is_psur() && !no3.is_sur());
    assert!(check_axioms(&initial_psur()).is_psur());
}

#[test]
fn order_property_examples() {
    let p = order_properties(&no_stage(3).unwrap());
    assert!(p.linear.passed && p.transitive.passed && p.acyclic.passed && p.well_founded.passed);

    let sa1 = sa_stage(1).unwrap();
    let p = order_properties(sa1.structure());
    assert!(p.acyclic.passed && !p.linear.passed);
    assert_eq!(pair_witness(&p.linear.witness), [MINUS_ONE.to_string(), ONE.to_string()].into());

    let st2 = st_stage(2).unwrap();
    let p = order_properties(st2.structure());
    assert!(p.transitive.passed && !p.linear.passed);
    let w: Vec<Elem> = pair_witness(&p.linear.witness).iter().map(|l| st2.find(l).unwrap()).collect();
    let s = st2.structure();
    assert!(!s.lt(w[0], w[1]) && !s.lt(w[1], w[0]));
    let (z, m) = (st2.find(ZERO).unwrap(), st2.find(MIDDLE).unwrap());
    assert!(!s.lt(z, m) && !s.lt(m, z));
}

#[test]
fn morphism_examples() {
    let no2 = no_stage(2).unwrap();
    let no3 = no_stage(3).unwrap();
    assert!(check_morphism(&identity(no2.clone(), MorphismKind::Psur)).passed());
    let full = check_morphism(&identity(no2.clone(), MorphismKind::Fpsur));
    assert!(!full.get("fpSm4").unwrap().passed);
    let table: Vec<Elem> = no2.elements().map(|x| no3.find(&no2.label(x)).unwrap()).collect();
    let inclusion = Morphism::new(no2, no3, table, MorphismKind::Psur).unwrap();
    assert!(check_morphism(&inclusion).passed());
}

#[test]
fn products() {
    let no2 = no_stage(2).unwrap();
    let p = product(&[no2.clone(), no2.clone()]).unwrap();
    let s = &p.structure;
    assert_eq!(s.len(), 9);
    let (f, g) = (&p.projections[0], &p.projections[1]);
    for a in s.elements() {
        for b in s.elements() {
            let strict = no2.lt(f.apply(a), f.apply(b)) && no2.lt(g.apply(a), g.apply(b));
            assert_eq!(s.lt(a, b), strict);
        }
    }

    let single = product(std::slice::from_ref(&no2)).unwrap();
    assert!(find_isomorphism(&single.structure, &no2, limits()).unwrap().is_some());

    let st2 = st_stage(2).unwrap().structure().clone();
    let mixed = product(&[no2.clone(), st2]).unwrap();
    assert!(check_axioms(&mixed.structure).is_psur());
    for proj in &mixed.projections {
        assert!(check_morphism(&proj.with_kind(MorphismKind::Psur)).passed());
    }

    let cone = [identity(no2.clone(), MorphismKind::Psur), identity(no2.clone(), MorphismKind::Psur)];
    let diagonal = p.mediate(&cone).unwrap();
    assert!(check_morphism(&diagonal).passed());
    for (proj, leg) in p.projections.iter().zip(&cone) {
        assert_eq!(compose(proj, &diagonal).unwrap().table(), leg.table());
    }
}

#[test]
fn substructures() {
    let sa2 = sa_stage(2).unwrap();
    let s = sa2.structure();
    let all: Vec<Elem> = s.elements().collect();
    let (same, _) = substructure(s, &all).unwrap();
    assert!(find_isomorphism(&same, s, limits()).unwrap().is_some());

    let day1: Vec<Elem> = [ZERO, ONE, MINUS_ONE].iter().map(|t| sa2.find(t).unwrap()).collect();
    let (sub, inclusion) = substructure(s, &day1).unwrap();
    assert!(find_isomorphism(&sub, sa_stage(1).unwrap().structure(), limits()).unwrap().is_some());
    assert_eq!(classify_embedding(&inclusion).kind, EmbeddingKind::Embedding);

    let lopsided = [sa2.find(ZERO).unwrap(), sa2.find(ONE).unwrap()];
    assert!(matches!(substructure(s, &lopsided), Err(SigmaError::Invalid(_))));
}

#[test]
fn embeddings() {
    let sa1 = sa_stage(1).unwrap();
    let id = identity(sa1.structure().clone(), MorphismKind::Psur);
    assert_eq!(classify_embedding(&id).kind, EmbeddingKind::Embedding);
    let inc = sa1.inclusion_into(&sa_stage(2).unwrap()).unwrap();
    assert_eq!(classify_embedding(&inc).kind, EmbeddingKind::Embedding);
    assert!(check_morphism(&inc.with_kind(MorphismKind::Fpsur)).passed());

    assert!(!order_properties(sa1.structure()).transitive.passed);
    let p = pushout_plus(sa1.structure(), true).unwrap();
    let class = classify_embedding(&p.i0);
    assert_eq!(class.kind, EmbeddingKind::Quasi);
    assert!(class.injective && class.cut_reflecting && !class.order_reflecting);
}

#[test]
fn initial_object_has_one_morphism_out() {
    let i = Arc::new(initial_psur());
    for target in [no_stage(2).unwrap(), st_stage(2).unwrap().structure().clone()] {
        let found = search_morphisms(&i, &target, MorphismKind::Psur, &[], limits()).unwrap();
        assert_eq!(found.morphisms.len(), 1);
        let brute = brute_force_morphisms(&i, &target, MorphismKind::Psur);
        assert_eq!(tables(&found.morphisms), brute.into_iter().collect());
    }
}

#[test]
fn search_agrees_with_brute_force() {
    let no2 = no_stage(2).unwrap();
    let no3 = no_stage(3).unwrap();
    let found = search_morphisms(&no2, &no2, MorphismKind::Psur, &[], limits()).unwrap();
    assert_eq!(found.morphisms.len(), 1);
    assert_eq!(found.morphisms[0].table(), identity(no2.clone(), MorphismKind::Psur).table());

    let partial = Arc::new(minimal_partial(sa_stage(1).unwrap().structure()));
    let found = search_morphisms(&partial, &no3, MorphismKind::Psur, &[], limits()).unwrap();
    let brute = brute_force_morphisms(&partial, &no3, MorphismKind::Psur);
    assert_eq!(found.morphisms.len(), 3);
    assert_eq!(tables(&found.morphisms), brute.into_iter().collect());
    let one = partial.find(ONE).unwrap();
    let images: BTreeSet<String> = found.morphisms.iter().map(|m| no3.label(m.apply(one))).collect();
    assert_eq!(images, ["+", "+-", "++"].map(String::from).into());

    let mut b = StructureBuilder::default();
    let p = b.element("p");
    let q = b.element("q");
    b.star(p).neg_pair(p, q);
    let skewed = Arc::new(b.build().unwrap());
    assert_eq!(count(&Arc::new(initial_psur()), &skewed, MorphismKind::Psur), 0);
}

#[test]
fn search_respects_fixed_pairs_and_budget() {
    let partial = Arc::new(minimal_partial(sa_stage(1).unwrap().structure()));
    let no3 = no_stage(3).unwrap();
    let one = partial.find(ONE).unwrap();
    let two = no3.find("++").unwrap();
    let found = search_morphisms(&partial, &no3, MorphismKind::Psur, &[(one, two)], limits()).unwrap();
    assert_eq!(found.morphisms.len(), 1);
    assert_eq!(found.morphisms[0].apply(one), two);
    let tight = SearchLimits { max_results: None, node_budget: 1 };
    assert!(matches!(
        search_morphisms(&partial, &no3, MorphismKind::Psur, &[], tight),
        Err(SigmaError::SearchBudgetExceeded(_))
    ));
}

/// Every map in a few small hom-sets, with its verdict at each kind.
fn small_maps() -> Vec<Morphism> {
    let sa1 = sa_stage(1).unwrap().structure().clone();
    let no2 = no_stage(2).unwrap();
    let pairs = [
        (Arc::new(minimal_partial(&sa1)), no_stage(3).unwrap()),
        (sa1.clone(), no2.clone()),
        (no2, sa1.clone()),
        (Arc::new(initial_psur()), sa1),
    ];
    let mut out = Vec::new();
    for (s, t) in pairs {
        let (n, m) = (s.len(), t.len());
        for code in 0..(m as u64).pow(n as u32) {
            let mut c = code;
            let table = (0..n)
                .map(|_| {
                    let e = Elem::new((c % m as u64) as usize);
                    c /= m as u64;
                    e
                })
                .collect();
            out.push(Morphism::new(s.clone(), t.clone(), table, MorphismKind::Psur).unwrap());
        }
    }
    out
}

#[test]
fn kinds_form_a_hierarchy() {
    let passes = |h: &Morphism, k| check_morphism(&h.with_kind(k)).passed();
    for h in small_maps() {
        let (sur, full, partial) = (
            passes(&h, MorphismKind::Sur),
            passes(&h, MorphismKind::Fpsur),
            passes(&h, MorphismKind::Psur),
        );
        assert!(!sur || full, "{:?}", h.label_pairs());
        assert!(!full || partial, "{:?}", h.label_pairs());
        if check_axioms(h.source()).is_sur() && check_axioms(h.target()).is_sur() {
            assert_eq!(sur, partial);
        }
    }
}

#[test]
fn composites_keep_their_kind() {
    let sa0 = sa_stage(0).unwrap();
    let sa1 = sa_stage(1).unwrap();
    let sa2 = sa_stage(2).unwrap();
    let f = sa0.inclusion_into(&sa1).unwrap().with_kind(MorphismKind::Fpsur);
    let g = sa1.inclusion_into(&sa2).unwrap().with_kind(MorphismKind::Fpsur);
    assert!(check_morphism(&f).passed() && check_morphism(&g).passed());
    assert!(check_morphism(&compose(&g, &f).unwrap()).passed());

    let no3 = no_stage(3).unwrap();
    let h = canonical_into(&sa1, &no3).unwrap().with_kind(MorphismKind::Psur);
    assert!(check_morphism(&h).passed());
    let hf = compose(&h, &f.with_kind(MorphismKind::Psur)).unwrap();
    assert!(check_morphism(&hf).passed());

    let maps: Vec<Morphism> = small_maps()
        .into_iter()
        .filter(|h| check_morphism(h).passed())
        .collect();
    for a in &maps {
        for b in &maps {
            if Arc::ptr_eq(a.target(), b.source()) {
                assert!(check_morphism(&compose(b, a).unwrap()).passed());
            }
        }
    }
}

#[test]
fn morphisms_out_of_linear_structures_are_injective_and_reflect_order() {
    let sources = [no_stage(2).unwrap(), no_stage(3).unwrap()];
    let targets = [
        no_stage(3).unwrap(),
        no_stage(4).unwrap(),
        st_stage(2).unwrap().structure().clone(),
        sa_stage(2).unwrap().structure().clone(),
    ];
    let mut seen = 0;
    for s in &sources {
        assert!(order_properties(s).linear.passed);
        for t in &targets {
            for h in search_morphisms(s, t, MorphismKind::Psur, &[], limits()).unwrap().morphisms {
                let class = classify_embedding(&h);
                assert!(class.injective && class.order_reflecting);
                seen += 1;
            }
        }
    }
    assert!(seen >= 4);
}

#[test]
fn stage_cut_values_lie_inside_their_cuts() {
    let mut structures: Vec<Arc<Structure>> = (0..=2)
        .flat_map(|a| [sa_stage(a).unwrap().structure().clone(), st_stage(a).unwrap().structure().clone()])
        .collect();
    structures.extend((1..=5).map(|a| no_stage(a).unwrap()));
    for s in structures {
        assert!(check_axioms(&s).is_psur());
        for (cut, v) in s.t().entries() {
            assert!(cut.left.iter().all(|&a| s.lt(a, v)));
            assert!(cut.right.iter().all(|&b| s.lt(v, b)));
        }
    }
}

/// A line can map onto one side of an incomparable pair, so a PSUR map
/// `no_stage(2) → st_stage(2)` exists.
#[test]
fn a_line_maps_into_the_transitive_stage() {
    let no2 = no_stage(2).unwrap();
    let st2 = st_stage(2).unwrap();
    let found = search_morphisms(&no2, st2.structure(), MorphismKind::Psur, &[], limits()).unwrap();
    assert_eq!(found.morphisms.len(), 1);
    let mut pairs = found.morphisms[0].label_pairs();
    pairs.sort();
    let want = [("", ZERO), ("+", ONE), ("-", MINUS_ONE)].map(|(a, b)| (a.to_string(), b.to_string()));
    assert_eq!(pairs, want);
    let class = classify_embedding(&found.morphisms[0]);
    assert!(class.injective && class.order_reflecting);
}

#[test]
fn no_retraction_from_the_line_onto_the_transitive_stage() {
    let st2 = st_stage(2).unwrap();
    let no3 = no_stage(3).unwrap();
    let u = canonical_into(&st2, &no3).unwrap();
    assert!(check_morphism(&u).passed());
    assert!(!u.is_injective());
    let all = search_morphisms(&no3, st2.structure(), MorphismKind::Psur, &[], limits()).unwrap();
    assert!(all.morphisms.is_empty());
    assert_eq!(count(&no3, st_stage(1).unwrap().structure(), MorphismKind::Psur), 0);
}

#[test]
fn no_map_from_the_transitive_stage_into_membership_stages() {
    let st1 = st_stage(1).unwrap().structure().clone();
    for k in 0..=2 {
        assert_eq!(count(&st1, sa_stage(k).unwrap().structure(), MorphismKind::Psur), 0, "k = {k}");
    }
    let sa2 = sa_stage(2).unwrap().structure().clone();
    assert_eq!(count(&sa2, st_stage(2).unwrap().structure(), MorphismKind::Psur), 1);
}

fn relation(n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=n).prop_flat_map(|k| (Just(k), prop::collection::vec((0..k, 0..k), 0..k * k)))
}

proptest! {
    #[test]
    fn first_axiom_is_acyclicity((k, pairs) in relation(5)) {
        let mut b = StructureBuilder::default();
        let xs: Vec<Elem> = (0..k).map(|i| b.element(format!("x{i}"))).collect();
        b.star(xs[0]);
        for &x in &xs {
            b.neg_pair(x, x);
        }
        for &(i, j) in &pairs {
            b.lt(xs[i], xs[j]);
        }
        let s = b.build().unwrap();
        let report = check_axioms(&s);
        let props = order_properties(&s);
        prop_assert_eq!(report.passed("pS1"), props.acyclic.passed);
        prop_assert_eq!(props.acyclic.passed, props.well_founded.passed);
        if report.passed("pS1") {
            prop_assert!(props.acyclic.passed);
        }
    }
}
