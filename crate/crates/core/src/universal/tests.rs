use std::sync::Arc;

use super::*;
use crate::hierarchy::{sa_stage, st_stage, Stage};
use crate::sigma::{
    check_axioms, check_morphism, classify_embedding, compose, find_isomorphism, identity,
    initial_psur, order_properties, search_morphisms, Cut, Elem, EmbeddingKind, Morphism,
    MorphismKind, SearchLimits, Structure,
};
use crate::surreal::no_stage;

fn initial() -> Arc<Structure> {
    Arc::new(initial_psur())
}

fn no(alpha: usize) -> Arc<Structure> {
    no_stage(alpha).unwrap()
}

fn fixed_by(f: &Morphism) -> Vec<(Elem, Elem)> {
    f.source().elements().map(|x| (x, f.apply(x))).collect()
}

fn star_map(s: &Arc<Structure>, target: &Arc<Structure>, image: Elem) -> Morphism {
    Morphism::new(s.clone(), target.clone(), vec![image; s.len()], MorphismKind::Fpsur).unwrap()
}

/// Every new element of the pushout corresponds to the stage term of its cut.
fn matches_next_stage(p: &PushoutResult, next: &Stage) {
    let iso = find_isomorphism(&p.structure, next.structure(), SearchLimits::default())
        .unwrap()
        .expect("isomorphic");
    for (cut, e) in &p.i1 {
        assert_eq!(Some(iso.apply(*e)), next.element(cut));
    }
}

#[test]
fn cut_algebra_of_initial_has_one_element() {
    let c = cut_algebra(&initial()).unwrap();
    assert_eq!(c.structure.len(), 1);
    assert_eq!(c.cut(Elem(0)), &Cut::empty());
}

#[test]
fn cut_algebra_of_stages_is_a_copy_of_the_domain() {
    for (stage, size) in [(sa_stage(1).unwrap(), 3), (sa_stage(2).unwrap(), 17)] {
        let c = cut_algebra(stage.structure()).unwrap();
        assert_eq!(c.structure.len(), size);
        assert!(check_axioms(&c.structure).is_psur());
        assert!(check_morphism(&c.t_map).passed());
        assert!(find_isomorphism(&c.structure, stage.structure(), SearchLimits::default())
            .unwrap()
            .is_some());
    }
}

#[test]
fn cut_algebra_transfers_transitivity_and_prelinearity() {
    let st = st_stage(2).unwrap();
    let c = cut_algebra(st.structure()).unwrap();
    assert!(order_properties(st.structure()).transitive.passed);
    assert!(order_properties(&c.structure).transitive.passed);

    let c = cut_algebra(&no(3)).unwrap();
    assert_eq!(c.structure.len(), 20);
    assert_eq!(c.prelinear(), Ok(()));
    assert!(check_axioms(&c.structure).is_psur());
    assert!(check_morphism(&c.t_map).passed());
}

#[test]
fn cut_map_is_functorial_and_natural() {
    let (n2, n3) = (no(2), no(3));
    let incl = {
        let table = n2
            .elements()
            .map(|x| n3.find(&n2.label(x)).unwrap())
            .collect();
        Morphism::new(n2.clone(), n3.clone(), table, MorphismKind::Psur).unwrap()
    };
    let (c2, c3) = (cut_algebra(&n2).unwrap(), cut_algebra(&n3).unwrap());
    let id = cut_map(&identity(n2.clone(), MorphismKind::Psur), &c2, &c2).unwrap();
    assert_eq!(id.table(), identity(c2.structure.clone(), MorphismKind::Psur).table());

    let m = cut_map(&incl, &c2, &c3).unwrap();
    assert!(check_morphism(&m).passed());
    for x in c2.structure.elements() {
        assert_eq!(c3.t_map.apply(m.apply(x)), incl.apply(c2.t_map.apply(x)));
    }
    let via = compose(&cut_map(&identity(n3.clone(), MorphismKind::Psur), &c3, &c3).unwrap(), &m)
        .unwrap();
    assert_eq!(via.table(), m.table());
}

#[test]
fn pushout_of_initial_is_the_first_stage() {
    let p = pushout_plus(&initial(), false).unwrap();
    assert_eq!(p.structure.len(), 3);
    assert_eq!(p.glue, vec![(Elem(0), Cut::empty())]);
    matches_next_stage(&p, &sa_stage(1).unwrap());
    assert!(check_axioms(&p.structure).is_psur());
    assert!(check_morphism(&p.i0).passed());
    assert_eq!(classify_embedding(&p.i0).kind, EmbeddingKind::Embedding);
}

#[test]
fn pushouts_rebuild_the_next_stages() {
    for alpha in 0..2 {
        let sa = sa_stage(alpha).unwrap();
        let p = pushout_plus(sa.structure(), false).unwrap();
        let cuts = p.i1.len();
        assert_eq!(p.structure.len(), sa.len() + cuts - sa.len());
        matches_next_stage(&p, &sa_stage(alpha + 1).unwrap());

        let st = st_stage(alpha).unwrap();
        let p = pushout_plus(st.structure(), true).unwrap();
        matches_next_stage(&p, &st_stage(alpha + 1).unwrap());
        assert_eq!(classify_embedding(&p.i0).kind, EmbeddingKind::Embedding);
    }
}

#[test]
fn transitive_pushout_of_an_intransitive_base_is_only_quasi() {
    let sa = sa_stage(2).unwrap();
    let p = pushout_plus(sa.structure(), true).unwrap();
    assert!(check_axioms(&p.structure).is_psur());
    assert!(check_morphism(&p.i0).passed());
    assert_eq!(classify_embedding(&p.i0).kind, EmbeddingKind::Quasi);
}

#[test]
fn universal_extension_into_no() {
    let i = initial();
    let p = pushout_plus(&i, false).unwrap();
    let n3 = no(3);
    let f = star_map(&i, &n3, n3.star());
    let ext = extend_universal(&f, &p).unwrap();
    assert!(check_morphism(&ext).passed());
    let lower = p.i1[&Cut::new([], [Elem(0)])];
    let upper = p.i1[&Cut::new([Elem(0)], [])];
    assert_eq!(n3.label(ext.apply(lower)), "-");
    assert_eq!(n3.label(ext.apply(upper)), "+");

    let all = search_morphisms(&p.structure, &n3, MorphismKind::Psur, &fixed_by(&f), SearchLimits::default())
        .unwrap();
    assert_eq!(all.morphisms.len(), 1);
    assert_eq!(all.morphisms[0].table(), ext.table());
}

#[test]
fn universal_extension_reports_missing_cuts() {
    let i = initial();
    let n1 = no(1);
    let f = star_map(&i, &n1, n1.star());
    let p = pushout_plus(&i, false).unwrap();
    assert!(matches!(extend_universal(&f, &p), Err(UniversalError::NotFull(_))));
}

#[test]
fn chain_colimit_of_sa_stages() {
    let stages: Vec<Stage> = (0..3).map(|a| sa_stage(a).unwrap()).collect();
    let connectors = stages
        .windows(2)
        .map(|w| w[0].inclusion_into(&w[1]).unwrap())
        .collect();
    let d = ChainDiagram::new(stages.iter().map(|s| s.structure().clone()).collect(), connectors)
        .unwrap();
    let colim = chain_colimit(&d).unwrap();
    assert_eq!(colim.structure.len(), 17);
    assert!(find_isomorphism(&colim.structure, stages[2].structure(), SearchLimits::default())
        .unwrap()
        .is_some());
    for h in &colim.cocone[..2] {
        assert_eq!(h.kind(), MorphismKind::Fpsur);
        assert!(check_morphism(h).passed());
    }
    let top = &colim.cocone[2];
    assert!(check_morphism(top).passed());
    assert!(!check_morphism(&top.with_kind(MorphismKind::Fpsur)).passed());

    let single = chain_colimit(&ChainDiagram::single(stages[1].structure().clone())).unwrap();
    assert!(find_isomorphism(&single.structure, stages[1].structure(), SearchLimits::default())
        .unwrap()
        .is_some());
}

#[test]
fn chains_must_be_injective() {
    let (s1, n2) = (sa_stage(1).unwrap(), no(2));
    let collapse = Morphism::new(
        s1.structure().clone(),
        n2.clone(),
        vec![n2.star(); 3],
        MorphismKind::Psur,
    )
    .unwrap();
    assert!(matches!(
        ChainDiagram::new(vec![s1.structure().clone(), n2], vec![collapse]),
        Err(UniversalError::IncompatibleChain(_))
    ));
}

#[test]
fn free_stages_over_the_initial_algebra() {
    let free = free_over(&initial(), 2, false).unwrap();
    assert_eq!(free.top().len(), 17);
    let sa2 = sa_stage(2).unwrap();
    assert!(find_isomorphism(free.top(), sa2.structure(), SearchLimits::default())
        .unwrap()
        .is_some());
    for h in free.diagram.connectors() {
        assert!(check_morphism(h).passed());
        assert_eq!(classify_embedding(h).kind, EmbeddingKind::Embedding);
    }

    let free = free_over(&initial(), 2, true).unwrap();
    assert_eq!(free.top().len(), 20);
    let st2 = st_stage(2).unwrap();
    assert!(find_isomorphism(free.top(), st2.structure(), SearchLimits::default())
        .unwrap()
        .is_some());

    let n2 = no(2);
    let free = free_over(&n2, 1, false).unwrap();
    let p = &free.pushouts[0];
    assert_eq!(free.top().len(), 3 + p.i1.len() - 3);
    assert_eq!(free.top().len(), 20);
    assert!(matches!(
        free_over(&initial(), 4, false),
        Err(UniversalError::StageTooLarge { .. })
    ));
}

#[test]
fn canonical_morphisms_into_no() {
    let n3 = no(3);
    let s1 = sa_stage(1).unwrap();
    let h = canonical_into(&s1, &n3).unwrap();
    assert!(check_morphism(&h).passed());
    assert_eq!(n3.label(h.apply(s1.zero())), "");
    assert_eq!(n3.label(h.apply(s1.minus_one().unwrap())), "-");
    assert_eq!(n3.label(h.apply(s1.one().unwrap())), "+");

    let s2 = sa_stage(2).unwrap();
    let h = canonical_into_with(&s2, &n3, no_evaluator(&n3)).unwrap();
    assert!(check_morphism(&h).passed());
    let at = |term: &str| n3.label(h.apply(s2.find(term).unwrap()));
    assert_eq!(at("<<|<|>>|<|>>"), "-+");
    assert_eq!(at("<|<|<|>>>"), "--");
    assert_eq!(at("<|<|<|>>,<|>>"), "--");
}

#[test]
fn canonical_morphisms_need_target_cuts() {
    let n1 = no(1);
    let s1 = sa_stage(1).unwrap();
    assert!(matches!(
        canonical_into(&s1, &n1),
        Err(UniversalError::TargetCutUndefined(_))
    ));
}
