use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use indexmap::IndexMap;

use super::{Cut, Elem, Order, OrderForm, SigmaError, TMap, TermArena};

/// Element labels: explicit strings, or term notation rendered on demand.
#[derive(Debug, Clone)]
pub enum Labels {
    Explicit(Vec<String>),
    Terms(Arc<TermArena>),
}

/// A finite Σ-structure `(S, <, *, −, t)`.
#[derive(Debug, Clone)]
pub struct Structure {
    labels: Labels,
    star: Elem,
    neg: Vec<Elem>,
    order: Order,
    t: TMap,
    label_index: OnceLock<HashMap<String, Elem>>,
}

impl Structure {
    /// Assembles a structure, checking that every table is in range, negation is total,
    /// and every cut in the domain has each left member below each right member.
    pub fn from_parts(
        labels: Labels,
        star: Elem,
        neg: Vec<Elem>,
        order: Order,
        t: TMap,
    ) -> Result<Self, SigmaError> {
        let s = Self::from_parts_unchecked(labels, star, neg, order, t);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(
        labels: Labels,
        star: Elem,
        neg: Vec<Elem>,
        order: Order,
        t: TMap,
    ) -> Self {
        Structure {
            labels,
            star,
            neg,
            order,
            t,
            label_index: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<(), SigmaError> {
        let n = self.len();
        let check = |e: Elem| {
            if e.index() < n {
                Ok(())
            } else {
                Err(SigmaError::UnknownElement(e.index()))
            }
        };
        if let Labels::Explicit(v) = &self.labels {
            if v.len() != n {
                return Err(SigmaError::Invalid(format!(
                    "{} labels for {n} elements",
                    v.len()
                )));
            }
            let mut seen = BTreeSet::new();
            for l in v {
                if !seen.insert(l) {
                    return Err(SigmaError::DuplicateLabel(l.clone()));
                }
            }
        }
        if n == 0 {
            return Err(SigmaError::MissingStar);
        }
        check(self.star)?;
        if self.neg.len() != n {
            return Err(SigmaError::NegationNotTotal(format!(
                "{} entries for {n} elements",
                self.neg.len()
            )));
        }
        for &x in &self.neg {
            check(x)?;
        }
        if self.order.len() != n {
            return Err(SigmaError::Invalid("order size differs from carrier".into()));
        }
        for (cut, v) in self.t.entries() {
            check(v)?;
            for x in cut.members() {
                check(x)?;
            }
            for &a in cut.left.iter() {
                for &b in cut.right.iter() {
                    if !self.lt(a, b) {
                        return Err(SigmaError::NotACut {
                            left: self.labels_of(&cut.left),
                            right: self.labels_of(&cut.right),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn builder() -> StructureBuilder {
        StructureBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neg.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem::new)
    }

    pub fn star(&self) -> Elem {
        self.star
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x.index()]
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        self.order.lt(a, b)
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn t(&self) -> &TMap {
        &self.t
    }

    pub fn t_of(&self, left: &[Elem], right: &[Elem]) -> Option<Elem> {
        self.t.get(left, right)
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> String {
        match &self.labels {
            Labels::Explicit(v) => v[e.index()].clone(),
            Labels::Terms(arena) => arena.render(e),
        }
    }

    pub fn labels_of(&self, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x)).collect()
    }

    /// The element carrying `label`.
    pub fn find(&self, label: &str) -> Option<Elem> {
        self.label_index
            .get_or_init(|| self.elements().map(|e| (self.label(e), e)).collect())
            .get(label)
            .copied()
    }

    /// Every left member below every right member.
    pub fn is_cut(&self, left: &[Elem], right: &[Elem]) -> bool {
        left.iter()
            .all(|&a| right.iter().all(|&b| self.order.lt(a, b)))
    }

    /// `(−B, −A)`.
    pub fn negate_cut(&self, cut: &Cut) -> Cut {
        cut.negate(|x| self.neg(x))
    }

    pub fn with_t(&self, t: TMap) -> Structure {
        Structure {
            t,
            label_index: OnceLock::new(),
            ..self.clone()
        }
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Structure {
        Structure {
            labels: Labels::Explicit(labels),
            label_index: OnceLock::new(),
            ..self.clone()
        }
    }

    /// An editable copy with explicit labels, order pairs and cut table.
    pub fn to_builder(&self) -> StructureBuilder {
        StructureBuilder {
            labels: self.elements().map(|e| self.label(e)).collect(),
            star: Some(self.star),
            neg: self.neg.iter().map(|&x| Some(x)).collect(),
            lt: self.order.pairs().into_iter().collect(),
            t: self.t.to_table(),
        }
    }
}

/// Incremental construction of a [`Structure`] with explicit tables.
#[derive(Debug, Clone, Default)]
pub struct StructureBuilder {
    labels: Vec<String>,
    star: Option<Elem>,
    neg: Vec<Option<Elem>>,
    lt: BTreeSet<(Elem, Elem)>,
    t: IndexMap<Cut, Elem>,
}

impl StructureBuilder {
    pub fn element(&mut self, label: impl Into<String>) -> Elem {
        self.labels.push(label.into());
        self.neg.push(None);
        Elem::new(self.labels.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem::new)
    }

    pub fn star(&mut self, e: Elem) -> &mut Self {
        self.star = Some(e);
        self
    }

    /// Sets `−a = b` and `−b = a`.
    pub fn neg_pair(&mut self, a: Elem, b: Elem) -> &mut Self {
        self.neg[a.index()] = Some(b);
        self.neg[b.index()] = Some(a);
        self
    }

    /// Sets `−a = b` only.
    pub fn neg_one_way(&mut self, a: Elem, b: Elem) -> &mut Self {
        self.neg[a.index()] = Some(b);
        self
    }

    pub fn lt(&mut self, a: Elem, b: Elem) -> &mut Self {
        self.lt.insert((a, b));
        self
    }

    pub fn remove_lt(&mut self, a: Elem, b: Elem) -> bool {
        self.lt.remove(&(a, b))
    }

    pub fn has_lt(&self, a: Elem, b: Elem) -> bool {
        self.lt.contains(&(a, b))
    }

    pub fn t(&mut self, cut: Cut, value: Elem) -> &mut Self {
        self.t.insert(cut, value);
        self
    }

    pub fn remove_t(&mut self, cut: &Cut) -> Option<Elem> {
        self.t.shift_remove(cut)
    }

    pub fn t_table(&self) -> &IndexMap<Cut, Elem> {
        &self.t
    }

    pub fn build(&self) -> Result<Structure, SigmaError> {
        let n = self.labels.len();
        let star = self.star.ok_or(SigmaError::MissingStar)?;
        let neg = self
            .neg
            .iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| SigmaError::NegationNotTotal(self.labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        for &(a, b) in &self.lt {
            for x in [a, b] {
                if x.index() >= n {
                    return Err(SigmaError::UnknownElement(x.index()));
                }
            }
        }
        let order = Order::from_pairs(n, self.lt.iter().copied().collect(), OrderForm::Explicit);
        Structure::from_parts(
            Labels::Explicit(self.labels.clone()),
            star,
            neg,
            order,
            TMap::Table(self.t.clone()),
        )
    }
}
