use std::sync::Arc;

use indexmap::IndexMap;

use super::{
    Cut, Elem, Labels, Morphism, MorphismKind, Order, OrderForm, SigmaError, Structure, TMap,
};

/// A finite product with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub structure: Arc<Structure>,
    pub factors: Vec<Arc<Structure>>,
    pub projections: Vec<Morphism>,
}

const COVER_LIMIT: usize = 20;

struct Radix(Vec<usize>);

impl Radix {
    fn encode(&self, digits: &[Elem]) -> Elem {
        Elem::new(
            digits
                .iter()
                .zip(&self.0)
                .fold(0, |acc, (d, &n)| acc * n + d.index()),
        )
    }

    fn decode(&self, mut i: usize) -> Vec<Elem> {
        let mut out = vec![Elem(0); self.0.len()];
        for (k, &n) in self.0.iter().enumerate().rev() {
            out[k] = Elem::new(i % n);
            i /= n;
        }
        out
    }

    fn size(&self) -> usize {
        self.0.iter().product()
    }
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// Subsets of `∏ sides[i]` whose i-th projection is exactly `sides[i]`.
fn covering_subsets(radix: &Radix, sides: &[&[Elem]]) -> Result<Vec<Vec<Elem>>, SigmaError> {
    if sides.iter().all(|s| s.is_empty()) {
        return Ok(vec![Vec::new()]);
    }
    if sides.iter().any(|s| s.is_empty()) {
        return Ok(Vec::new());
    }
    let tuples = cartesian(&sides.iter().map(|s| s.to_vec()).collect::<Vec<_>>());
    if tuples.len() > COVER_LIMIT {
        return Err(SigmaError::TooLarge {
            what: "product cut side",
            size: tuples.len() as u128,
            limit: COVER_LIMIT as u128,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << tuples.len() {
        let chosen: Vec<&Vec<Elem>> = (0..tuples.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &tuples[i])
            .collect();
        let covers = sides.iter().enumerate().all(|(k, side)| {
            side.iter().all(|x| chosen.iter().any(|t| t[k] == *x))
        });
        if covers {
            out.push(chosen.iter().map(|t| radix.encode(t)).collect());
        }
    }
    Ok(out)
}

/// The product: componentwise carrier, `*` and `−`; `a < b` iff every component is
/// strictly below; `(A, B)` is in the domain iff every projected cut is.
pub fn product(factors: &[Arc<Structure>]) -> Result<Product, SigmaError> {
    if factors.is_empty() {
        return Err(SigmaError::Invalid("a product needs at least one factor".into()));
    }
    let radix = Radix(factors.iter().map(|f| f.len()).collect());
    let n = radix.size();
    let tuples: Vec<Vec<Elem>> = (0..n).map(|i| radix.decode(i)).collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let star = radix.encode(&factors.iter().map(|f| f.star()).collect::<Vec<_>>());
    let neg = tuples
        .iter()
        .map(|t| radix.encode(&t.iter().zip(factors).map(|(&x, f)| f.neg(x)).collect::<Vec<_>>()))
        .collect();
    let factor_pairs: Vec<Vec<(Elem, Elem)>> = factors.iter().map(|f| f.order().pairs()).collect();
    let pairs = cartesian(&factor_pairs)
        .into_iter()
        .map(|combo| {
            let a: Vec<Elem> = combo.iter().map(|p| p.0).collect();
            let b: Vec<Elem> = combo.iter().map(|p| p.1).collect();
            (radix.encode(&a), radix.encode(&b))
        })
        .collect();
    let order = Order::from_pairs(n, pairs, OrderForm::Explicit);
    let factor_entries: Vec<Vec<(Cut, Elem)>> = factors
        .iter()
        .map(|f| f.t().entries().map(|(c, v)| (c.into_owned(), v)).collect())
        .collect();
    let mut table = IndexMap::new();
    for combo in cartesian(&factor_entries) {
        let lefts: Vec<&[Elem]> = combo.iter().map(|(c, _)| &*c.left).collect();
        let rights: Vec<&[Elem]> = combo.iter().map(|(c, _)| &*c.right).collect();
        let value = radix.encode(&combo.iter().map(|(_, v)| *v).collect::<Vec<_>>());
        let ls = covering_subsets(&radix, &lefts)?;
        let rs = covering_subsets(&radix, &rights)?;
        for l in &ls {
            for r in &rs {
                table.insert(Cut::new(l.iter().copied(), r.iter().copied()), value);
            }
        }
    }
    let structure = Arc::new(Structure::from_parts(
        Labels::Explicit(labels),
        star,
        neg,
        order,
        TMap::Table(table),
    )?);
    let projections = factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            Morphism::new(
                structure.clone(),
                f.clone(),
                tuples.iter().map(|t| t[k]).collect(),
                MorphismKind::Psur,
            )
        })
        .collect::<Result<_, _>>()?;
    Ok(Product {
        structure,
        factors: factors.to_vec(),
        projections,
    })
}

impl Product {
    /// The unique map `⟨f_1, …, f_n⟩` into the product.
    pub fn mediate(&self, cone: &[Morphism]) -> Result<Morphism, SigmaError> {
        if cone.len() != self.factors.len() {
            return Err(SigmaError::Invalid("cone and product differ in arity".into()));
        }
        let source = cone[0].source().clone();
        let radix = Radix(self.factors.iter().map(|f| f.len()).collect());
        let table = source
            .elements()
            .map(|x| radix.encode(&cone.iter().map(|f| f.apply(x)).collect::<Vec<_>>()))
            .collect();
        Morphism::new(source, self.structure.clone(), table, cone[0].kind())
    }
}
