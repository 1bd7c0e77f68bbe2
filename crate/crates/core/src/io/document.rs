use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hierarchy::{Algebra, Stage};
use crate::sigma::{
    Cut, Elem, ExtremalT, Labels, Order, OrderForm, SigmaError, Structure, TMap,
};

use super::IoError;

pub const FORMAT: &str = "suralg/structure/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TEntry {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundEntry {
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub value: String,
}

/// A cut map read off extremes over an increasing chain `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalDocument {
    pub base: Vec<String>,
    pub bounds: Vec<BoundEntry>,
}

/// Canonical JSON form of a finite Σ-structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub carrier: Vec<String>,
    pub star: String,
    pub neg: BTreeMap<String, String>,
    pub lt: Vec<(String, String)>,
    #[serde(default)]
    pub t: Vec<TEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_extremal: Option<ExtremalDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<BTreeMap<String, String>>,
}

/// A decoded document: the structure, and the stage when rank annotations say so.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub structure: Arc<Structure>,
    pub stage: Option<Stage>,
    pub algebra: Option<String>,
}

fn sorted_labels(s: &Structure, xs: &[Elem]) -> Vec<String> {
    let mut v = s.labels_of(xs);
    v.sort();
    v
}

pub fn to_document(s: &Structure) -> StructureDocument {
    let mut carrier: Vec<String> = s.elements().map(|x| s.label(x)).collect();
    carrier.sort();
    let neg = s.elements().map(|x| (s.label(x), s.label(s.neg(x)))).collect();
    let mut lt: Vec<(String, String)> = s
        .order()
        .pairs()
        .into_iter()
        .map(|(a, b)| (s.label(a), s.label(b)))
        .collect();
    lt.sort();
    let (t, t_extremal) = match s.t() {
        TMap::Extremal(ext) => {
            let mut bounds: Vec<BoundEntry> = ext
                .bound_entries()
                .into_iter()
                .map(|(lo, hi, v)| BoundEntry {
                    lo: lo.map(|x| s.label(x)),
                    hi: hi.map(|x| s.label(x)),
                    value: s.label(v),
                })
                .collect();
            bounds.sort_by(|a, b| (&a.lo, &a.hi).cmp(&(&b.lo, &b.hi)));
            let base = ext.base().iter().map(|&x| s.label(x)).collect();
            (Vec::new(), Some(ExtremalDocument { base, bounds }))
        }
        t => {
            let mut entries: Vec<TEntry> = t
                .entries()
                .map(|(cut, v)| TEntry {
                    left: sorted_labels(s, &cut.left),
                    right: sorted_labels(s, &cut.right),
                    value: s.label(v),
                })
                .collect();
            entries.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
            (entries, None)
        }
    };
    StructureDocument {
        format: FORMAT.to_string(),
        algebra: None,
        carrier,
        star: s.label(s.star()),
        neg,
        lt,
        t,
        t_extremal,
        rank: None,
        term: None,
    }
}

/// The document of a hierarchy stage, with `algebra`, `rank` and `term` annotations.
pub fn stage_document(stage: &Stage) -> StructureDocument {
    let s = stage.structure();
    let mut doc = to_document(s);
    doc.algebra = Some(stage.algebra().to_string());
    doc.rank = Some(s.elements().map(|x| (s.label(x), stage.rank(x))).collect());
    doc.term = Some(
        s.elements()
            .map(|x| (s.label(x), stage.terms().render(x)))
            .collect(),
    );
    doc
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn invariant(invariant: &str, witness: impl Into<String>) -> IoError {
    IoError::InvariantViolation {
        invariant: invariant.to_string(),
        witness: witness.into(),
    }
}

/// JSON pointer escaping of one reference token.
fn token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

/// Decodes and re-validates a document. With rank annotations, elements are numbered
/// by label length, then carrier position.
pub fn from_document(doc: &StructureDocument) -> Result<Loaded, IoError> {
    if doc.format != FORMAT {
        return Err(schema("/format", format!("expected {FORMAT:?}")));
    }
    if let Some(i) = (1..doc.carrier.len()).find(|&i| doc.carrier[i - 1] >= doc.carrier[i]) {
        return Err(schema(format!("/carrier/{i}"), "carrier must be sorted and duplicate-free"));
    }
    if let Some(rank) = &doc.rank {
        if let Some(l) = doc.carrier.iter().find(|l| !rank.contains_key(*l)) {
            return Err(schema(format!("/rank/{}", token(l)), "missing rank"));
        }
    }
    let mut order_of: Vec<usize> = (0..doc.carrier.len()).collect();
    if doc.rank.is_some() {
        order_of.sort_by_key(|&i| (doc.carrier[i].len(), i));
    }
    let labels: Vec<String> = order_of.iter().map(|&i| doc.carrier[i].clone()).collect();
    let mut index: HashMap<&str, Elem> = HashMap::with_capacity(labels.len());
    for (k, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), Elem::new(k)).is_some() {
            return Err(schema(format!("/carrier/{}", order_of[k]), format!("duplicate label {l:?}")));
        }
    }
    let at = |label: &str, pointer: String| -> Result<Elem, IoError> {
        index
            .get(label)
            .copied()
            .ok_or_else(|| schema(pointer, format!("unknown label {label:?}")))
    };

    let star = at(&doc.star, "/star".into())?;
    let mut neg = Vec::with_capacity(labels.len());
    for l in &labels {
        let v = doc
            .neg
            .get(l)
            .ok_or_else(|| schema(format!("/neg/{}", token(l)), "negation missing"))?;
        neg.push(at(v, format!("/neg/{}", token(l)))?);
    }
    if let Some(k) = doc.neg.keys().find(|k| !index.contains_key(k.as_str())) {
        return Err(schema(format!("/neg/{}", token(k)), "unknown label"));
    }
    for (k, &y) in neg.iter().enumerate() {
        if neg[y.index()] != Elem::new(k) {
            return Err(invariant(
                "negation is an involution",
                format!("-(-{}) = {}", labels[k], labels[neg[y.index()].index()]),
            ));
        }
    }

    let pairs = doc
        .lt
        .iter()
        .enumerate()
        .map(|(i, (a, b))| Ok((at(a, format!("/lt/{i}/0"))?, at(b, format!("/lt/{i}/1"))?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    let order = Order::from_pairs(labels.len(), pairs, OrderForm::Explicit);

    let side = |xs: &[String], pointer: String| -> Result<Vec<Elem>, IoError> {
        xs.iter()
            .enumerate()
            .map(|(j, x)| at(x, format!("{pointer}/{j}")))
            .collect()
    };
    let t = match &doc.t_extremal {
        Some(ext) => {
            if !doc.t.is_empty() {
                return Err(schema("/t", "t and t_extremal are exclusive"));
            }
            let base = side(&ext.base, "/t_extremal/base".into())?;
            for w in base.windows(2) {
                if !order.lt(w[0], w[1]) {
                    return Err(invariant(
                        "extremal base is increasing",
                        format!("{} is not below {}", labels[w[0].index()], labels[w[1].index()]),
                    ));
                }
            }
            let bound = |b: &Option<String>, p: String| b.as_deref().map(|l| at(l, p)).transpose();
            let entries = ext
                .bounds
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let p = format!("/t_extremal/bounds/{i}");
                    Ok((
                        bound(&e.lo, format!("{p}/lo"))?,
                        bound(&e.hi, format!("{p}/hi"))?,
                        at(&e.value, format!("{p}/value"))?,
                    ))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            TMap::Extremal(
                ExtremalT::from_bounds(base, &entries)
                    .ok_or_else(|| schema("/t_extremal/bounds", "bounds do not cover the base"))?,
            )
        }
        None => {
            let mut table = indexmap::IndexMap::with_capacity(doc.t.len());
            for (i, e) in doc.t.iter().enumerate() {
                let cut = Cut::new(
                    side(&e.left, format!("/t/{i}/left"))?,
                    side(&e.right, format!("/t/{i}/right"))?,
                );
                let v = at(&e.value, format!("/t/{i}/value"))?;
                if table.insert(cut, v).is_some() {
                    return Err(schema(format!("/t/{i}"), "duplicate cut"));
                }
            }
            TMap::Table(table)
        }
    };

    let structure = Structure::from_parts(Labels::Explicit(labels.clone()), star, neg, order, t)
        .map_err(|e| match e {
            SigmaError::NotACut { left, right } => invariant(
                "every cut in the domain of t lies inside lt",
                format!("({}, {})", left.join(","), right.join(",")),
            ),
            other => IoError::Sigma(other),
        })?;
    let structure = Arc::new(structure);

    if let Some(term) = &doc.term {
        for l in &labels {
            match term.get(l) {
                Some(t) if t == l => {}
                Some(t) => {
                    return Err(invariant("term labels", format!("{l:?} has term {t:?}")));
                }
                None => return Err(schema(format!("/term/{}", token(l)), "missing term")),
            }
        }
    }
    let stage = match (&doc.algebra, &doc.rank) {
        (Some(a), Some(rank)) if a != "no" => {
            let algebra: Algebra = a
                .parse()
                .map_err(|_| schema("/algebra", format!("unknown algebra {a:?}")))?;
            let ranks = labels.iter().map(|l| rank[l]).collect();
            Some(Stage::from_labeled(algebra, structure.clone(), ranks)?)
        }
        _ => None,
    };
    Ok(Loaded {
        structure,
        stage,
        algebra: doc.algebra.clone(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn render_document(doc: &StructureDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn parse_document(text: &str) -> Result<StructureDocument, IoError> {
    super::parse_json(text)
}
