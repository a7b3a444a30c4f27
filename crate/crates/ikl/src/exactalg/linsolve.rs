//! Exact linear algebra over `Q(q)`.

use std::collections::BTreeMap;

use super::{Coeff, Laurent, RatFunc};

pub type RatVec<C> = BTreeMap<usize, RatFunc<C>>;

pub fn to_rat<C: Coeff>(v: &BTreeMap<usize, Laurent<C>>) -> RatVec<C> {
    v.iter().map(|(i, x)| (*i, RatFunc::from_laurent(x.clone()))).collect()
}

fn axpy<C: Coeff>(acc: &mut RatVec<C>, a: &RatFunc<C>, x: &RatVec<C>) {
    for (i, v) in x {
        let t = a * v;
        let slot = acc.entry(*i).or_insert_with(RatFunc::zero);
        *slot = &*slot + &t;
        if slot.is_zero() {
            acc.remove(i);
        }
    }
}

/// Incremental row echelon form over `Q(q)`.
///
/// Each stored row has a pivot (its smallest index) normalized to 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon<C: Coeff> {
    rows: BTreeMap<usize, RatVec<C>>,
}

impl<C: Coeff> Echelon<C> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &RatVec<C>) -> RatVec<C> {
        let mut v = v.clone();
        loop {
            let hit = v.keys().find(|k| self.rows.contains_key(k)).copied();
            match hit {
                None => return v,
                Some(p) => {
                    let c = -&v[&p];
                    axpy(&mut v, &c, &self.rows[&p]);
                }
            }
        }
    }

    /// Inserts `v` if it is independent; returns whether the rank grew.
    pub fn insert(&mut self, v: &RatVec<C>) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().unwrap();
        let r: RatVec<C> = r.iter().map(|(i, x)| (*i, x * &inv)).collect();
        // keep earlier rows reduced at the new pivot so `reduce` terminates quickly
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-&c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }
}

/// Solves `A x = b` for `x` in `Q(q)^n`, where `A` is given by sparse rows.
///
/// Returns `None` if inconsistent. Free variables are set to zero; the second
/// component reports whether the solution is unique.
pub fn solve<C: Coeff>(rows: &[(RatVec<C>, RatFunc<C>)], n: usize) -> Option<(Vec<RatFunc<C>>, bool)> {
    // augmented column index n carries the right-hand side
    let mut ech = Echelon::new();
    for (a, b) in rows {
        let mut v = a.clone();
        if !b.is_zero() {
            v.insert(n, b.clone());
        }
        ech.insert(&v);
        if ech.rows.contains_key(&n) {
            return None;
        }
    }
    let mut x = vec![RatFunc::zero(); n];
    // rows are fully reduced and free variables are zero
    for (p, row) in &ech.rows {
        x[*p] = row.get(&n).cloned().unwrap_or_else(RatFunc::zero);
    }
    let unique = ech.rank() == n;
    Some((x, unique))
}
