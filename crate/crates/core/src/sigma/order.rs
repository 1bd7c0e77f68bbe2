//! Strict relations stored as sorted adjacency lists.

use std::collections::VecDeque;

use super::Elem;

/// How the stored pairs relate to the relation they describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderForm {
    /// The stored pairs are the relation.
    Explicit,
    /// The relation is the transitive closure of the stored pairs.
    Generated,
}

/// A binary relation on `0..n` in compressed sparse row form, indexed both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    n: usize,
    form: OrderForm,
    succ_off: Vec<usize>,
    succ: Vec<Elem>,
    pred_off: Vec<usize>,
    pred: Vec<Elem>,
}

fn csr(n: usize, pairs: &mut [(Elem, Elem)]) -> (Vec<usize>, Vec<Elem>) {
    pairs.sort_unstable();
    let mut off = vec![0usize; n + 1];
    for &(a, _) in pairs.iter() {
        off[a.index() + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    (off, pairs.iter().map(|&(_, b)| b).collect())
}

impl Order {
    pub fn from_pairs(n: usize, mut pairs: Vec<(Elem, Elem)>, form: OrderForm) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let mut rev: Vec<(Elem, Elem)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let (succ_off, succ) = csr(n, &mut pairs);
        let (pred_off, pred) = csr(n, &mut rev);
        Order {
            n,
            form,
            succ_off,
            succ,
            pred_off,
            pred,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_pairs(n, Vec::new(), OrderForm::Explicit)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn form(&self) -> OrderForm {
        self.form
    }

    /// Stored successors of `a` (all successors when the form is explicit).
    pub fn succ(&self, a: Elem) -> &[Elem] {
        &self.succ[self.succ_off[a.index()]..self.succ_off[a.index() + 1]]
    }

    /// Stored predecessors of `b`.
    pub fn pred(&self, b: Elem) -> &[Elem] {
        &self.pred[self.pred_off[b.index()]..self.pred_off[b.index() + 1]]
    }

    pub fn stored_len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_stored(&self, a: Elem, b: Elem) -> bool {
        self.succ(a).binary_search(&b).is_ok()
    }

    /// `a < b` in the described relation.
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        if self.is_stored(a, b) {
            return true;
        }
        match self.form {
            OrderForm::Explicit => false,
            OrderForm::Generated => self.reaches(a, b),
        }
    }

    fn reaches(&self, a: Elem, b: Elem) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in self.succ(x) {
                if y == b {
                    return true;
                }
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Everything reachable from `a` in one or more stored steps.
    pub fn reachable_from(&self, a: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([a]);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &y in self.succ(x) {
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Successors in the described relation.
    pub fn successors(&self, a: Elem) -> Vec<Elem> {
        match self.form {
            OrderForm::Explicit => self.succ(a).to_vec(),
            OrderForm::Generated => self.reachable_from(a),
        }
    }

    pub fn stored_pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.n).flat_map(move |a| {
            let a = Elem::new(a);
            self.succ(a).iter().map(move |&b| (a, b))
        })
    }

    /// All pairs of the described relation, sorted.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        match self.form {
            OrderForm::Explicit => self.stored_pairs().collect(),
            OrderForm::Generated => (0..self.n)
                .flat_map(|a| {
                    let a = Elem::new(a);
                    self.reachable_from(a).into_iter().map(move |b| (a, b))
                })
                .collect(),
        }
    }

    /// The same relation with every pair stored.
    pub fn materialize(&self) -> Order {
        match self.form {
            OrderForm::Explicit => self.clone(),
            OrderForm::Generated => Order::from_pairs(self.n, self.pairs(), OrderForm::Explicit),
        }
    }

    /// The transitive closure, stored explicitly.
    pub fn transitive_closure(&self) -> Order {
        let gen = Order {
            form: OrderForm::Generated,
            ..self.clone()
        };
        gen.materialize()
    }

    /// A cycle `a0 < a1 < … < a0` among the stored pairs, if any.
    pub fn find_cycle(&self) -> Option<Vec<Elem>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.n];
        for root in 0..self.n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack: Vec<(Elem, usize)> = vec![(Elem::new(root), 0)];
            mark[root] = Mark::Open;
            while let Some(top) = stack.last_mut() {
                let (x, i) = *top;
                let succ = self.succ(x);
                if i < succ.len() {
                    let y = succ[i];
                    top.1 += 1;
                    match mark[y.index()] {
                        Mark::New => {
                            mark[y.index()] = Mark::Open;
                            stack.push((y, 0));
                        }
                        Mark::Open => {
                            let start = stack.iter().position(|&(z, _)| z == y).expect("open");
                            let mut cycle: Vec<Elem> = stack[start..].iter().map(|&(z, _)| z).collect();
                            cycle.push(y);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[x.index()] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Longest-chain depth of every element, or `None` when there is a cycle.
    pub fn layering(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|b| self.pred(Elem::new(b)).len()).collect();
        let mut depth = vec![0usize; self.n];
        let mut queue: VecDeque<Elem> = (0..self.n)
            .filter(|&b| indeg[b] == 0)
            .map(Elem::new)
            .collect();
        let mut done = 0;
        while let Some(x) = queue.pop_front() {
            done += 1;
            for &y in self.succ(x) {
                depth[y.index()] = depth[y.index()].max(depth[x.index()] + 1);
                indeg[y.index()] -= 1;
                if indeg[y.index()] == 0 {
                    queue.push_back(y);
                }
            }
        }
        (done == self.n).then_some(depth)
    }

    /// Restriction of the described relation to `keep`, renumbered in the order given.
    pub fn restrict(&self, keep: &[Elem]) -> Order {
        let mut index = vec![None; self.n];
        for (i, &e) in keep.iter().enumerate() {
            index[e.index()] = Some(Elem::new(i));
        }
        let mut pairs = Vec::new();
        for &a in keep {
            for b in self.successors(a) {
                if let Some(j) = index[b.index()] {
                    pairs.push((index[a.index()].expect("kept"), j));
                }
            }
        }
        Order::from_pairs(keep.len(), pairs, OrderForm::Explicit)
    }
}
