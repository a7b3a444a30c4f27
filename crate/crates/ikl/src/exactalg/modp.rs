//! Specialization `q -> q0` into `Z/p` and ranks there.
//!
//! Ranks over `Z/p` never exceed ranks over `Q(q)`, which is what the
//! dimension certificates in `qsp` rely on.

use super::{Coeff, Laurent};

pub const PRIME: u64 = 2_147_483_647;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn coeff_mod<C: Coeff>(c: &C, p: u64) -> u64 {
    let pi = C::from_u64(p).unwrap();
    let r = num_integer::Integer::mod_floor(c, &pi);
    r.to_u64().unwrap()
}

/// Value of a Laurent polynomial at `q = q0` modulo `p`; `q0` must be a unit.
pub fn eval_mod<C: Coeff>(x: &Laurent<C>, q0: u64, p: u64) -> u64 {
    let qi = inv_mod(q0, p);
    let mut acc = 0u64;
    for (e, c) in x.terms() {
        let base = if *e >= 0 {
            pow_mod(q0, *e as u64, p)
        } else {
            pow_mod(qi, (-*e) as u64, p)
        };
        acc = (acc + coeff_mod(c, p) * base) % p;
    }
    acc
}

/// Incremental rank over `Z/p` for sparse vectors given as (index, value).
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    rows: std::collections::BTreeMap<usize, Vec<(usize, u64)>>,
}

impl ModEchelon {
    pub fn new(p: u64) -> Self {
        ModEchelon {
            p,
            rows: Default::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut dense: std::collections::BTreeMap<usize, u64> =
            v.iter().filter(|x| x.1 % p != 0).map(|&(i, x)| (i, x % p)).collect();
        loop {
            let hit = dense.keys().find(|k| self.rows.contains_key(k)).copied();
            let Some(k) = hit else { break };
            let c = dense[&k];
            for &(i, x) in &self.rows[&k] {
                let slot = dense.entry(i).or_insert(0);
                *slot = (*slot + p - c * x % p) % p;
                if *slot == 0 {
                    dense.remove(&i);
                }
            }
        }
        let Some((&piv, &lead)) = dense.iter().next() else {
            return false;
        };
        let inv = inv_mod(lead, p);
        let row: Vec<(usize, u64)> = dense.iter().map(|(&i, &x)| (i, x * inv % p)).collect();
        for r in self.rows.values_mut() {
            if let Some(pos) = r.iter().position(|t| t.0 == piv) {
                let c = r[pos].1;
                let mut m: std::collections::BTreeMap<usize, u64> = r.iter().copied().collect();
                for &(i, x) in &row {
                    let slot = m.entry(i).or_insert(0);
                    *slot = (*slot + p - c * x % p) % p;
                }
                *r = m.into_iter().filter(|t| t.1 != 0).collect();
            }
        }
        self.rows.insert(piv, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_negative_powers() {
        let x = Laurent::<i64>::from_terms([(-1, 2), (1, 3)]);
        // 2/5 + 15 mod 7 = 2*3 + 1 = 7 = 0
        assert_eq!(eval_mod(&x, 5, 7), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut e = ModEchelon::new(PRIME);
        assert!(e.insert(&[(0, 1), (1, 2)]));
        assert!(!e.insert(&[(0, 3), (1, 6)]));
        assert!(e.insert(&[(1, 1)]));
        assert_eq!(e.rank(), 2);
    }
}
