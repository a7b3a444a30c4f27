// Dense polynomial helpers over Z, coefficients in ascending degree.

use super::Coeff;

fn trim<C: Coeff>(mut v: Vec<C>) -> Vec<C> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Division where every leading-coefficient step must be exact.
/// Returns `None` as soon as a step is not divisible over Z.
pub(crate) fn divrem_exact<C: Coeff>(a: &[C], b: &[C]) -> Option<(Vec<C>, Vec<C>)> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lb = b.last()?.clone();
    if r.len() < b.len() {
        return Some((Vec::new(), r));
    }
    let mut q = vec![C::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let (t, rem) = lr.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - t.clone() * c.clone();
        }
        q[shift] = t;
        r = trim(r);
    }
    Some((q, r))
}

fn content<C: Coeff>(a: &[C]) -> C {
    a.iter().fold(C::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive<C: Coeff>(a: &[C]) -> Vec<C> {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let mut c = content(&a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.into_iter().map(|x| x / c.clone()).collect()
}

fn pseudo_rem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let lb = b.last().unwrap().clone();
    let mut r = trim(a.to_vec());
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        let mut next: Vec<C> = r.iter().map(|x| x.clone() * lb.clone()).collect();
        for (i, c) in b.iter().enumerate() {
            next[shift + i] = next[shift + i].clone() - lr.clone() * c.clone();
        }
        r = trim(next);
    }
    r
}

/// Primitive gcd of two polynomials over Z, positive leading coefficient.
/// Integer content is not included.
pub(crate) fn gcd_primitive<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.len() == 1 {
        vec![C::one()]
    } else {
        x
    }
}
