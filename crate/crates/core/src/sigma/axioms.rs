//! The pSUR axioms and order diagnostics, each verdict carrying a re-checkable witness.

use std::fmt;

use serde::Serialize;

use super::{enumerate_cuts, Cut, CutKind, Elem, OrderForm, Structure, TMap};

/// A counterexample, by element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Cycle(Vec<String>),
    Element(String),
    Pair(String, String),
    Triple(String, String, String),
    Elements(Vec<String>),
    Cut {
        left: Vec<String>,
        right: Vec<String>,
    },
    Note(String),
}

impl Witness {
    pub(crate) fn cut(s: &Structure, cut: &Cut) -> Witness {
        Witness::Cut {
            left: s.labels_of(&cut.left),
            right: s.labels_of(&cut.right),
        }
    }

    fn resolve(s: &Structure, labels: &[String]) -> Option<Vec<Elem>> {
        labels.iter().map(|l| s.find(l)).collect()
    }

    /// Re-evaluates the witness against `s`: true when it still violates `axiom`.
    pub fn recheck(&self, axiom: &str, s: &Structure) -> bool {
        match (axiom, self) {
            ("pS1" | "well_founded" | "acyclic", Witness::Cycle(labels)) => {
                Self::resolve(s, labels).is_some_and(|c| {
                    c.len() >= 2 && c.first() == c.last() && c.windows(2).all(|w| s.lt(w[0], w[1]))
                })
            }
            ("pS2", Witness::Element(l)) => s.find(l).is_some_and(|x| s.neg(s.neg(x)) != x),
            ("pS3", Witness::Element(l)) => {
                s.find(l).is_some_and(|x| x == s.star() && s.neg(x) != x)
            }
            ("pS4", Witness::Pair(a, b)) => match (s.find(a), s.find(b)) {
                (Some(a), Some(b)) => s.lt(a, b) != s.lt(s.neg(b), s.neg(a)),
                _ => false,
            },
            ("pS5" | "pS6" | "pS7" | "sur_complete", Witness::Cut { left, right }) => {
                let (Some(l), Some(r)) = (Self::resolve(s, left), Self::resolve(s, right)) else {
                    return false;
                };
                let cut = Cut::new(l, r);
                let value = s.t().get_cut(&cut);
                match axiom {
                    "pS5" => value.is_some_and(|v| {
                        !(cut.left.iter().all(|&a| s.lt(a, v))
                            && cut.right.iter().all(|&b| s.lt(v, b)))
                    }),
                    "pS6" => value.is_some_and(|v| {
                        s.t().get_cut(&s.negate_cut(&cut)) != Some(s.neg(v))
                    }),
                    "pS7" => cut == Cut::empty() && value != Some(s.star()),
                    _ => s.is_cut(&cut.left, &cut.right) && value.is_none(),
                }
            }
            ("transitive", Witness::Triple(a, b, c)) => {
                match (s.find(a), s.find(b), s.find(c)) {
                    (Some(a), Some(b), Some(c)) => s.lt(a, b) && s.lt(b, c) && !s.lt(a, c),
                    _ => false,
                }
            }
            ("linear", Witness::Pair(a, b)) => match (s.find(a), s.find(b)) {
                (Some(a), Some(b)) => a != b && !s.lt(a, b) && !s.lt(b, a),
                _ => false,
            },
            _ => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &Vec<String>| format!("{{{}}}", v.join(", "));
        match self {
            Witness::Cycle(v) => write!(f, "cycle {}", v.join(" < ")),
            Witness::Element(x) => write!(f, "element {x}"),
            Witness::Pair(a, b) => write!(f, "pair ({a}, {b})"),
            Witness::Triple(a, b, c) => write!(f, "triple ({a}, {b}, {c})"),
            Witness::Elements(v) => write!(f, "elements {}", set(v)),
            Witness::Cut { left, right } => write!(f, "cut ({}, {})", set(left), set(right)),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub(crate) fn pass(name: &str) -> Verdict {
        Verdict {
            name: name.to_string(),
            passed: true,
            witness: None,
        }
    }

    pub(crate) fn fail(name: &str, witness: Witness) -> Verdict {
        Verdict {
            name: name.to_string(),
            passed: false,
            witness: Some(witness),
        }
    }

    pub(crate) fn from_result(name: &str, r: Result<(), Witness>) -> Verdict {
        match r {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: {}", self.name, if self.passed { "ok" } else { "FAILED" }),
            Some(w) => write!(f, "{}: {} ({w})", self.name, if self.passed { "ok" } else { "FAILED" }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub verdicts: Vec<Verdict>,
}

impl AxiomReport {
    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|v| v.passed)
    }

    /// pS1 through pS7 all hold.
    pub fn is_psur(&self) -> bool {
        (1..=7).all(|i| self.passed(&format!("pS{i}")))
    }

    /// A pSUR-algebra whose cut map is defined on every cut.
    pub fn is_sur(&self) -> bool {
        self.is_psur() && self.passed("sur_complete")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn ps1(s: &Structure) -> Result<(), Witness> {
    match s.order().find_cycle() {
        Some(c) => Err(Witness::Cycle(s.labels_of(&c))),
        None => Ok(()),
    }
}

fn ps2(s: &Structure) -> Result<(), Witness> {
    match s.elements().find(|&x| s.neg(s.neg(x)) != x) {
        Some(x) => Err(Witness::Element(s.label(x))),
        None => Ok(()),
    }
}

fn ps3(s: &Structure) -> Result<(), Witness> {
    if s.neg(s.star()) == s.star() {
        Ok(())
    } else {
        Err(Witness::Element(s.label(s.star())))
    }
}

fn ps4(s: &Structure) -> Result<(), Witness> {
    let order = s.order();
    for (a, b) in order.stored_pairs() {
        if !s.lt(s.neg(b), s.neg(a)) {
            return Err(Witness::Pair(s.label(a), s.label(b)));
        }
    }
    let mut preimage: Vec<Vec<Elem>> = vec![Vec::new(); s.len()];
    for x in s.elements() {
        preimage[s.neg(x).index()].push(x);
    }
    for (c, d) in order.stored_pairs() {
        for &a in &preimage[d.index()] {
            for &b in &preimage[c.index()] {
                if !s.lt(a, b) {
                    return Err(Witness::Pair(s.label(a), s.label(b)));
                }
            }
        }
    }
    if order.form() == OrderForm::Generated {
        ps2(s).map_err(|_| Witness::Note("negation is not an involution".into()))?;
    }
    Ok(())
}

fn ps5(s: &Structure) -> Result<(), Witness> {
    if let TMap::Extremal(ext) = s.t() {
        let base = ext.base();
        for (lo, hi, v) in ext.bound_entries() {
            let below = lo.map_or(0, |l| base.iter().position(|&x| x == l).expect("base") + 1);
            let above = hi.map_or(base.len(), |h| base.iter().position(|&x| x == h).expect("base"));
            if let Some(&a) = base[..below].iter().find(|&&a| !s.lt(a, v)) {
                return Err(Witness::cut(s, &Cut::new([a].into_iter().chain(lo), hi)));
            }
            if let Some(&b) = base[above..].iter().find(|&&b| !s.lt(v, b)) {
                return Err(Witness::cut(s, &Cut::new(lo, [b].into_iter().chain(hi))));
            }
        }
        return Ok(());
    }
    for (cut, v) in s.t().entries() {
        let ok = cut.left.iter().all(|&a| s.lt(a, v)) && cut.right.iter().all(|&b| s.lt(v, b));
        if !ok {
            return Err(Witness::cut(s, &cut));
        }
    }
    Ok(())
}

fn ps6(s: &Structure) -> Result<(), Witness> {
    if let TMap::Extremal(ext) = s.t() {
        let base = ext.base();
        let pos = |x: Elem| base.iter().position(|&y| y == x);
        for &x in base {
            if pos(s.neg(x)).is_none() {
                return Err(Witness::cut(s, &Cut::new([x], [])));
            }
        }
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                if pos(s.neg(base[j])) >= pos(s.neg(base[i])) {
                    return Err(Witness::cut(s, &Cut::new([base[i]], [base[j]])));
                }
            }
        }
        for (lo, hi, v) in ext.bound_entries() {
            let cut = Cut::new(lo, hi);
            if s.t().get_cut(&s.negate_cut(&cut)) != Some(s.neg(v)) {
                return Err(Witness::cut(s, &cut));
            }
        }
        return Ok(());
    }
    for (cut, v) in s.t().entries() {
        if s.t().get_cut(&s.negate_cut(&cut)) != Some(s.neg(v)) {
            return Err(Witness::cut(s, &cut));
        }
    }
    Ok(())
}

fn ps7(s: &Structure) -> Result<(), Witness> {
    if s.t().get(&[], &[]) == Some(s.star()) {
        Ok(())
    } else {
        Err(Witness::cut(s, &Cut::empty()))
    }
}

/// A cut outside the domain, if one exists.
fn sur_complete(s: &Structure) -> Result<(), Witness> {
    let t = s.t();
    if !t.contains(&[], &[]) {
        return Err(Witness::cut(s, &Cut::empty()));
    }
    for x in s.elements() {
        for cut in [Cut::new([x], []), Cut::new([], [x])] {
            if !t.contains(&cut.left, &cut.right) {
                return Err(Witness::cut(s, &cut));
            }
        }
    }
    let everything = Cut::new(s.elements(), []);
    if !t.contains(&everything.left, &everything.right) {
        return Err(Witness::cut(s, &everything));
    }
    match enumerate_cuts(s, CutKind::Conway) {
        Ok(cuts) => match cuts.iter().find(|c| !t.contains(&c.left, &c.right)) {
            Some(c) => Err(Witness::cut(s, c)),
            None => Ok(()),
        },
        Err(e) => Err(Witness::Note(format!("undecided: {e}"))),
    }
}

/// Verdicts for pS1–pS7 and for the cut map being defined on every Conway cut.
pub fn check_axioms(s: &Structure) -> AxiomReport {
    AxiomReport {
        verdicts: vec![
            Verdict::from_result("pS1", ps1(s)),
            Verdict::from_result("pS2", ps2(s)),
            Verdict::from_result("pS3", ps3(s)),
            Verdict::from_result("pS4", ps4(s)),
            Verdict::from_result("pS5", ps5(s)),
            Verdict::from_result("pS6", ps6(s)),
            Verdict::from_result("pS7", ps7(s)),
            Verdict::from_result("sur_complete", sur_complete(s)),
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderProperties {
    pub acyclic: Verdict,
    pub transitive: Verdict,
    pub linear: Verdict,
    pub well_founded: Verdict,
    pub extensional: Verdict,
    pub rooted: Verdict,
}

/// Acyclicity, transitivity, linearity, well-foundedness, extensionality and rootedness
/// of the order of `s`. Well-foundedness coincides with acyclicity on a finite carrier.
pub fn order_properties(s: &Structure) -> OrderProperties {
    let order = s.order();
    let cycle = ps1(s);
    let transitive = if order.form() == OrderForm::Generated {
        Ok(())
    } else {
        (|| {
            for (a, b) in order.stored_pairs() {
                for &c in order.succ(b) {
                    if !order.is_stored(a, c) {
                        return Err(Witness::Triple(s.label(a), s.label(b), s.label(c)));
                    }
                }
            }
            Ok(())
        })()
    };
    let connex = (|| {
        for a in s.elements() {
            for b in s.elements().skip(a.index() + 1) {
                if !s.lt(a, b) && !s.lt(b, a) {
                    return Err(Witness::Pair(s.label(a), s.label(b)));
                }
            }
        }
        Ok(())
    })();
    let linear = cycle.clone().and(connex).and(transitive.clone());
    let extensional = (|| {
        let mut seen = std::collections::HashMap::new();
        for x in s.elements() {
            let mut below: Vec<Elem> = s.elements().filter(|&z| s.lt(z, x)).collect();
            below.sort_unstable();
            if let Some(&y) = seen.get(&below) {
                return Err(Witness::Pair(s.label(y), s.label(x)));
            }
            seen.insert(below, x);
        }
        Ok(())
    })();
    let roots: Vec<Elem> = s
        .elements()
        .filter(|&x| order.pred(x).is_empty())
        .collect();
    let rooted = if roots.len() == 1 {
        Ok(())
    } else {
        Err(Witness::Elements(s.labels_of(&roots)))
    };
    OrderProperties {
        acyclic: Verdict::from_result("acyclic", cycle.clone()),
        transitive: Verdict::from_result("transitive", transitive),
        linear: Verdict::from_result("linear", linear),
        well_founded: Verdict::from_result("well_founded", cycle),
        extensional: Verdict::from_result("extensional", extensional),
        rooted: Verdict::from_result("rooted", rooted),
    }
}

/// Whether every Conway cut has an element strictly between its sides. Finite
/// structures never have this; the verdict is informational.
pub fn eta_density_diagnostic(s: &Structure) -> Verdict {
    let r = match enumerate_cuts(s, CutKind::Conway) {
        Ok(cuts) => cuts
            .iter()
            .find(|c| {
                !s.elements().any(|z| {
                    c.left.iter().all(|&a| s.lt(a, z)) && c.right.iter().all(|&b| s.lt(z, b))
                })
            })
            .map_or(Ok(()), |c| Err(Witness::cut(s, c))),
        Err(e) => Err(Witness::Note(format!("undecided: {e}"))),
    };
    Verdict::from_result("eta_density", r)
}
