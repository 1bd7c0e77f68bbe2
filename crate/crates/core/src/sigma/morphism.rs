use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::axioms::{Verdict, Witness};
use super::{enumerate_cuts, Cut, CutKind, Elem, OrderForm, SigmaError, Structure};

/// Which cut-map condition a morphism is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    /// Images of domain cuts lie in the target domain and `t` commutes there.
    Sigma,
    /// The same condition, read on pSUR-algebras.
    Psur,
    /// Every Conway cut of the source maps into the target domain; `t` commutes on the
    /// source domain.
    Fpsur,
    /// The source is total and `t` commutes on every Conway cut.
    Sur,
}

impl MorphismKind {
    fn t_condition(self) -> &'static str {
        match self {
            MorphismKind::Sigma => "Σm4",
            MorphismKind::Psur => "pSm4",
            MorphismKind::Fpsur => "fpSm4",
            MorphismKind::Sur => "Sm4",
        }
    }
}

/// A total map between the carriers of two structures.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<Structure>,
    target: Arc<Structure>,
    table: Vec<Elem>,
    kind: MorphismKind,
}

impl Morphism {
    pub fn new(
        source: Arc<Structure>,
        target: Arc<Structure>,
        table: Vec<Elem>,
        kind: MorphismKind,
    ) -> Result<Self, SigmaError> {
        if table.len() != source.len() {
            return Err(SigmaError::PartialTable {
                expected: source.len(),
                got: table.len(),
            });
        }
        if let Some(x) = table.iter().find(|x| x.index() >= target.len()) {
            return Err(SigmaError::UnknownElement(x.index()));
        }
        Ok(Morphism {
            source,
            target,
            table,
            kind,
        })
    }

    pub fn source(&self) -> &Arc<Structure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Structure> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn with_kind(&self, kind: MorphismKind) -> Morphism {
        Morphism {
            kind,
            ..self.clone()
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn image(&self, cut: &Cut) -> Cut {
        cut.map(|x| self.apply(x))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table
            .iter()
            .all(|y| !std::mem::replace(&mut seen[y.index()], true))
    }

    /// Pairs of labels `(x, h(x))`.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.source
            .elements()
            .map(|x| (self.source.label(x), self.target.label(self.apply(x))))
            .collect()
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source)
            && Arc::ptr_eq(&self.target, &other.target)
            && self.table == other.table
    }
}

pub fn identity(s: Arc<Structure>, kind: MorphismKind) -> Morphism {
    let table = s.elements().collect();
    Morphism {
        source: s.clone(),
        target: s,
        table,
        kind,
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism, SigmaError> {
    if !Arc::ptr_eq(f.target(), g.source()) {
        return Err(SigmaError::Invalid("composed morphisms do not meet".into()));
    }
    Morphism::new(
        f.source.clone(),
        g.target.clone(),
        f.table.iter().map(|&x| g.apply(x)).collect(),
        f.kind,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub kind: MorphismKind,
    pub verdicts: Vec<Verdict>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn commutes(h: &Morphism, cut: &Cut, value: Elem) -> Result<(), Witness> {
    let s = h.source();
    match h.target().t().get_cut(&h.image(cut)) {
        None => Err(Witness::cut(s, cut)),
        Some(v) if v != h.apply(value) => Err(Witness::cut(s, cut)),
        Some(_) => Ok(()),
    }
}

fn t_condition(h: &Morphism) -> Result<(), Witness> {
    let s = h.source();
    let t2 = h.target().t();
    match h.kind {
        MorphismKind::Sigma | MorphismKind::Psur => {
            for (cut, v) in s.t().entries() {
                commutes(h, &cut, v)?;
            }
        }
        MorphismKind::Fpsur | MorphismKind::Sur => {
            let cuts = enumerate_cuts(s, CutKind::Conway)
                .map_err(|e| Witness::Note(format!("undecided: {e}")))?;
            for cut in &cuts {
                match s.t().get_cut(cut) {
                    Some(v) => commutes(h, cut, v)?,
                    None if h.kind == MorphismKind::Sur => return Err(Witness::cut(s, cut)),
                    None => {
                        if t2.get_cut(&h.image(cut)).is_none() {
                            return Err(Witness::cut(s, cut));
                        }
                    }
                }
            }
            for (cut, v) in s.t().entries() {
                commutes(h, &cut, v)?;
            }
        }
    }
    Ok(())
}

/// Sm1–Sm3 and the cut-map condition selected by the morphism's kind.
pub fn check_morphism(h: &Morphism) -> MorphismReport {
    let (s, t) = (h.source(), h.target());
    let sm1 = if h.apply(s.star()) == t.star() {
        Ok(())
    } else {
        Err(Witness::Element(s.label(s.star())))
    };
    let sm2 = match s.elements().find(|&x| h.apply(s.neg(x)) != t.neg(h.apply(x))) {
        Some(x) => Err(Witness::Element(s.label(x))),
        None => Ok(()),
    };
    let generators_suffice =
        s.order().form() == OrderForm::Generated && t.order().form() == OrderForm::Generated;
    let pairs: Box<dyn Iterator<Item = (Elem, Elem)>> = if generators_suffice {
        Box::new(s.order().stored_pairs())
    } else {
        Box::new(s.order().pairs().into_iter())
    };
    let mut sm3 = Ok(());
    for (a, b) in pairs {
        if !t.lt(h.apply(a), h.apply(b)) {
            sm3 = Err(Witness::Pair(s.label(a), s.label(b)));
            break;
        }
    }
    MorphismReport {
        kind: h.kind,
        verdicts: vec![
            Verdict::from_result("Sm1", sm1),
            Verdict::from_result("Sm2", sm2),
            Verdict::from_result("Sm3", sm3),
            Verdict::from_result(h.kind.t_condition(), t_condition(h)),
        ],
    }
}
