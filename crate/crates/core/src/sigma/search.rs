//! Backtracking search for morphisms, with forced propagation through `*`, `−` and `t`.

use std::sync::Arc;

use super::{check_morphism, Cut, Elem, Morphism, MorphismKind, SigmaError, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop after this many morphisms.
    pub max_results: Option<usize>,
    /// Give up with [`SigmaError::SearchBudgetExceeded`] after this many candidate
    /// assignments.
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_results: None,
            node_budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub morphisms: Vec<Morphism>,
    /// Candidate assignments tried, forced ones included.
    pub nodes: u64,
}

struct Search<'a> {
    s: &'a Structure,
    t: &'a Structure,
    injective: bool,
    entries: Vec<(Cut, Elem)>,
    occurrences: Vec<Vec<usize>>,
    remaining: Vec<usize>,
    above: Vec<Vec<Elem>>,
    below: Vec<Vec<Elem>>,
    assigned: Vec<Option<Elem>>,
    used: Vec<u32>,
    trail: Vec<Elem>,
    nodes: u64,
    limits: SearchLimits,
    accept: &'a dyn Fn(&[Elem]) -> bool,
    found: Vec<Vec<Elem>>,
}

impl<'a> Search<'a> {
    fn new(
        s: &'a Structure,
        t: &'a Structure,
        injective: bool,
        limits: SearchLimits,
        accept: &'a dyn Fn(&[Elem]) -> bool,
    ) -> Self {
        let entries: Vec<(Cut, Elem)> =
            s.t().entries().map(|(c, v)| (c.into_owned(), v)).collect();
        let mut occurrences = vec![Vec::new(); s.len()];
        let mut remaining = Vec::with_capacity(entries.len());
        for (i, (cut, _)) in entries.iter().enumerate() {
            let mut count = 0;
            for x in cut.members() {
                occurrences[x.index()].push(i);
                count += 1;
            }
            remaining.push(count);
        }
        let mut above = vec![Vec::new(); s.len()];
        let mut below = vec![Vec::new(); s.len()];
        for (a, b) in s.order().pairs() {
            above[a.index()].push(b);
            below[b.index()].push(a);
        }
        Search {
            s,
            t,
            injective,
            entries,
            occurrences,
            remaining,
            above,
            below,
            assigned: vec![None; s.len()],
            used: vec![0; t.len()],
            trail: Vec::new(),
            nodes: 0,
            limits,
            accept,
            found: Vec::new(),
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            let y = self.assigned[x.index()].take().expect("assigned");
            self.used[y.index()] -= 1;
            for &i in &self.occurrences[x.index()] {
                self.remaining[i] += 1;
            }
        }
    }

    /// Assigns `x ↦ y` and everything it forces; false on contradiction.
    fn assign(&mut self, x: Elem, y: Elem) -> Result<bool, SigmaError> {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.assigned[x.index()] {
                Some(z) if z == y => continue,
                Some(_) => return Ok(false),
                None => {}
            }
            self.nodes += 1;
            if self.nodes > self.limits.node_budget {
                return Err(SigmaError::SearchBudgetExceeded(self.limits.node_budget));
            }
            if self.injective && self.used[y.index()] > 0 {
                return Ok(false);
            }
            for &b in &self.above[x.index()] {
                if let Some(hb) = self.assigned[b.index()] {
                    if !self.t.lt(y, hb) {
                        return Ok(false);
                    }
                }
            }
            for &a in &self.below[x.index()] {
                if let Some(ha) = self.assigned[a.index()] {
                    if !self.t.lt(ha, y) {
                        return Ok(false);
                    }
                }
            }
            if self.above[x.index()].contains(&x) && !self.t.lt(y, y) {
                return Ok(false);
            }
            self.assigned[x.index()] = Some(y);
            self.used[y.index()] += 1;
            self.trail.push(x);
            queue.push((self.s.neg(x), self.t.neg(y)));
            for k in 0..self.occurrences[x.index()].len() {
                let i = self.occurrences[x.index()][k];
                self.remaining[i] -= 1;
                if self.remaining[i] == 0 {
                    match self.fire(i) {
                        Some(pair) => queue.push(pair),
                        None => return Ok(false),
                    }
                }
            }
        }
        Ok(true)
    }

    /// The assignment forced by a domain entry whose members are all assigned.
    fn fire(&self, i: usize) -> Option<(Elem, Elem)> {
        let (cut, v) = &self.entries[i];
        let image = cut.map(|m| self.assigned[m.index()].expect("members assigned"));
        self.t.t().get_cut(&image).map(|w| (*v, w))
    }

    fn run(&mut self, fixed: &[(Elem, Elem)]) -> Result<(), SigmaError> {
        let mut ok = self.assign(self.s.star(), self.t.star())?;
        for i in 0..self.entries.len() {
            if ok && self.remaining[i] == 0 {
                ok = match self.fire(i) {
                    Some((x, y)) => self.assign(x, y)?,
                    None => false,
                };
            }
        }
        for &(x, y) in fixed {
            ok = ok && self.assign(x, y)?;
        }
        if ok {
            self.descend(0)?;
        }
        Ok(())
    }

    fn done(&self) -> bool {
        self.limits
            .max_results
            .is_some_and(|m| self.found.len() >= m)
    }

    fn descend(&mut self, from: usize) -> Result<(), SigmaError> {
        if self.done() {
            return Ok(());
        }
        let Some(x) = (from..self.s.len()).find(|&i| self.assigned[i].is_none()) else {
            let table: Vec<Elem> = self.assigned.iter().map(|y| y.expect("total")).collect();
            if (self.accept)(&table) {
                self.found.push(table);
            }
            return Ok(());
        };
        let x = Elem::new(x);
        for y in self.t.elements() {
            let mark = self.trail.len();
            if self.assign(x, y)? {
                self.descend(x.index() + 1)?;
            }
            self.undo_to(mark);
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

fn search(
    s: &Arc<Structure>,
    t: &Arc<Structure>,
    kind: MorphismKind,
    injective: bool,
    fixed: &[(Elem, Elem)],
    limits: SearchLimits,
    check: bool,
) -> Result<SearchOutcome, SigmaError> {
    let accept = |table: &[Elem]| {
        !check
            || Morphism::new(s.clone(), t.clone(), table.to_vec(), kind)
                .is_ok_and(|h| check_morphism(&h).passed())
    };
    let mut run = Search::new(s, t, injective, limits, &accept);
    run.run(fixed)?;
    let nodes = run.nodes;
    let morphisms = run
        .found
        .into_iter()
        .map(|table| Morphism::new(s.clone(), t.clone(), table, kind))
        .collect::<Result<_, _>>()?;
    Ok(SearchOutcome { morphisms, nodes })
}

/// Every morphism of the given kind from `s` to `t` that extends `fixed`, in the
/// lexicographic order of their tables.
pub fn search_morphisms(
    s: &Arc<Structure>,
    t: &Arc<Structure>,
    kind: MorphismKind,
    fixed: &[(Elem, Elem)],
    limits: SearchLimits,
) -> Result<SearchOutcome, SigmaError> {
    let need_check = matches!(kind, MorphismKind::Fpsur | MorphismKind::Sur);
    search(s, t, kind, false, fixed, limits, need_check)
}

/// An isomorphism `s → t`: bijective, order-reflecting, and carrying the cut-map
/// domain of `s` onto that of `t`.
pub fn find_isomorphism(
    s: &Arc<Structure>,
    t: &Arc<Structure>,
    limits: SearchLimits,
) -> Result<Option<Morphism>, SigmaError> {
    if s.len() != t.len() || s.t().domain_size() != t.t().domain_size() {
        return Ok(None);
    }
    let pairs_s = s.order().pairs().len();
    let pairs_t = t.order().pairs().len();
    if pairs_s != pairs_t {
        return Ok(None);
    }
    let limits = SearchLimits {
        max_results: Some(1),
        ..limits
    };
    let outcome = search(s, t, MorphismKind::Sigma, true, &[], limits, true)?;
    Ok(outcome.morphisms.into_iter().next())
}
