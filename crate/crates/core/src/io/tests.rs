use proptest::prelude::*;

use super::*;
use crate::hierarchy::{sa_stage, st_stage};
use crate::sigma::{find_isomorphism, initial_psur, SearchLimits};
use crate::surreal::no_stage;
use crate::universal::{pushout_plus, ChainDiagram};
use crate::{BigDyadic, SignExpansion};

fn round_trip(doc: &StructureDocument) -> Loaded {
    let text = render_document(doc);
    let back = parse_document(&text).unwrap();
    assert_eq!(&back, doc);
    let loaded = from_document(&back).unwrap();
    let again = match &loaded.stage {
        Some(stage) => stage_document(stage),
        None => to_document(&loaded.structure),
    };
    assert_eq!(render_document(&again), text);
    loaded
}

#[test]
fn no_stage_round_trips() {
    let s = no_stage(2).unwrap();
    let doc = to_document(&s);
    assert!(doc.t_extremal.is_some());
    let loaded = round_trip(&doc);
    assert!(loaded.stage.is_none());
    assert!(find_isomorphism(&s, &loaded.structure, SearchLimits::default()).unwrap().is_some());
}

#[test]
fn sa_stage_round_trips_with_ranks() {
    let stage = sa_stage(2).unwrap();
    let loaded = round_trip(&stage_document(&stage));
    let back = loaded.stage.expect("ranked documents load as stages");
    assert_eq!(back.len(), 17);
    for x in stage.structure().elements() {
        let label = stage.label(x);
        let y = back.structure().find(&label).unwrap();
        assert_eq!(back.rank(y), stage.rank(x));
    }
}

#[test]
fn st_stage_round_trips() {
    round_trip(&stage_document(&st_stage(2).unwrap()));
}

#[test]
fn broken_negation_is_an_invariant_violation() {
    let stage = sa_stage(1).unwrap();
    let mut doc = to_document(stage.structure());
    let zero = stage.label(stage.zero());
    let key = doc.neg.keys().find(|k| **k != zero).unwrap().clone();
    doc.neg.insert(key, zero);
    let err = from_document(&doc).unwrap_err();
    assert!(matches!(err, IoError::InvariantViolation { .. }), "{err}");
}

#[test]
fn schema_errors_carry_pointers() {
    let doc = to_document(sa_stage(1).unwrap().structure());
    let mut value = serde_json::to_value(&doc).unwrap();
    value["lt"][0][1] = serde_json::json!(7);
    let err = parse_document(&value.to_string()).unwrap_err();
    match err {
        IoError::Schema { pointer, .. } => assert_eq!(pointer, "/lt/0/1"),
        other => panic!("{other}"),
    }

    let mut doc = doc;
    doc.lt[0].1 = "nowhere".into();
    match from_document(&doc).unwrap_err() {
        IoError::Schema { pointer, .. } => assert_eq!(pointer, "/lt/0/1"),
        other => panic!("{other}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_document("{\n  \"format\": ,\n}").unwrap_err() {
        IoError::Syntax { line, .. } => assert_eq!(line, 2),
        other => panic!("{other}"),
    }
}

#[test]
fn cut_outside_the_order_is_rejected() {
    let mut doc = to_document(sa_stage(2).unwrap().structure());
    doc.lt.clear();
    let err = from_document(&doc).unwrap_err();
    assert!(matches!(err, IoError::InvariantViolation { .. }), "{err}");
}

#[test]
fn dot_has_one_edge_per_pair() {
    let edges = |s: &crate::Structure| to_dot(s).matches(" -> ").count();
    assert_eq!(edges(&initial_psur()), 0);
    assert_eq!(edges(sa_stage(1).unwrap().structure()), 2);
    assert_eq!(edges(st_stage(1).unwrap().structure()), 3);
    let dot = to_dot(sa_stage(1).unwrap().structure());
    assert!(dot.starts_with("digraph S {\n") && dot.ends_with("}\n"));
    assert!(dot.contains("[label=\"<|>\"]"));
    assert!(to_dot(&no_stage(1).unwrap()).contains("[label=\"0\"]"));
}

#[test]
fn atomic_write_replaces_contents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let doc = to_document(sa_stage(1).unwrap().structure());
    save_document(&path, &doc).unwrap();
    write_atomic(&path, &render_document(&doc)).unwrap();
    assert_eq!(load_document(&path).unwrap(), doc);
    assert!(matches!(
        load_document(&dir.path().join("missing.json")),
        Err(IoError::File { .. })
    ));
}

#[test]
fn pushout_bundle_references_members_by_digest() {
    let stage = sa_stage(1).unwrap();
    let p = pushout_plus(stage.structure(), false).unwrap();
    let bundle = pushout_bundle(&p);
    assert_eq!(bundle.objects.len(), 2);
    assert_eq!(bundle.glue.len(), p.glue.len());
    let text = bundle.render();
    let back = Bundle::parse(&text).unwrap();
    assert_eq!(back, bundle);
    let top = back.member(&back.objects[1]).unwrap();
    assert_eq!(top.carrier.len(), 17);

    let mut tampered = bundle.clone();
    tampered.members[0].document.star = "x".into();
    assert!(matches!(
        Bundle::parse(&tampered.render()),
        Err(IoError::InvariantViolation { .. })
    ));
}

#[test]
fn chain_bundle_shares_repeated_objects() {
    let s = sa_stage(1).unwrap().structure().clone();
    let id = crate::sigma::identity(s.clone(), crate::MorphismKind::Psur);
    let mut d = ChainDiagram::single(s);
    d.push(id).unwrap();
    let bundle = chain_bundle(&d);
    assert_eq!(bundle.objects.len(), 2);
    assert_eq!(bundle.members.len(), 1);
    assert_eq!(bundle.maps.len(), 1);
    Bundle::parse(&bundle.render()).unwrap();
}

fn eval(text: &str) -> Value {
    eval_expr(&parse_expr(text).unwrap()).unwrap()
}

fn num(text: &str) -> Value {
    Value::Number(text.parse().unwrap())
}

#[test]
fn expressions_evaluate() {
    assert_eq!(eval("{|}"), num(""));
    assert_eq!(eval("1/2 + 1/2 = 1"), Value::Truth(true));
    assert_eq!(eval("{0|1} * 2"), num("+"));
    assert_eq!(eval("{0|1}"), num("+-"));
    assert_eq!(eval("-3/4"), num("-+-"));
    assert_eq!(eval("1/2^3 < 1/4"), Value::Truth(true));
    assert_eq!(eval("{1|} - 2 > 0"), Value::Truth(false));
}

#[test]
fn expression_errors() {
    let err = parse_expr("1 +\n  * 2").unwrap_err();
    assert_eq!((err.line, err.column), (2, 3));
    let err = parse_expr("1/3").unwrap_err();
    assert_eq!((err.line, err.column), (1, 3));
    assert!(matches!(
        eval_expr(&parse_expr("{1|0}").unwrap()),
        Err(EvalError::NotACut { .. })
    ));
    assert!(matches!(
        eval_expr(&parse_expr("5000").unwrap()),
        Err(EvalError::TooLarge { .. })
    ));
}

fn literal() -> impl Strategy<Value = Expr> {
    (0i64..64, 0u32..5).prop_map(|(n, k)| Expr::Num(BigDyadic::new(n.into(), k)))
}

fn expr() -> impl Strategy<Value = Expr> {
    literal().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (prop::collection::vec(inner.clone(), 0..3), prop::collection::vec(inner.clone(), 0..3))
                .prop_map(|(l, r)| Expr::Cut(l, r)),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (
                prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul)],
                inner.clone(),
                inner
            )
                .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn render_then_parse_is_identity(e in expr()) {
        prop_assert_eq!(parse_expr(&render_expr(&e)).unwrap(), e);
    }

    #[test]
    fn literals_evaluate_to_their_dyadic(n in -200i64..200, k in 0u32..6) {
        let d = BigDyadic::new(n.into(), k);
        let v = eval_expr(&Expr::Num(d.clone())).unwrap();
        prop_assert_eq!(v, Value::Number(SignExpansion::from_dyadic(&d)));
    }
}
