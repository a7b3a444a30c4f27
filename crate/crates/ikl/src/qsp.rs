//! The coideal subalgebra and its embedding into `U_q(sl_{k+1})`.
//!
//! Generators are `e_i, f_i, k_i^{±1}` for positive indices `i`, plus `t` in
//! the odd family. Matrices are obtained by pushing through the embedding.

use std::collections::BTreeMap;

use crate::exactalg::modp::{eval_mod, ModEchelon};
use crate::exactalg::{commutator, q_minus_qinv, qfactorial, qint};
use crate::qgroup::{kron, FockSpace, RelationReport, UAction};
use crate::weights::{format_letter, Family, Weight};
use crate::{LaurentPoly, Operator};

/// Generators of the coideal subalgebra; indices doubled and positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IGen {
    E(i32),
    F(i32),
    K(i32),
    Kinv(i32),
    T,
}

/// The E-part and F-part of the image of `e_i`, `f_i` or `t`.
///
/// `iota(g) = E_j + n` and the bar of the image is `E_j + nbar`, where `n`
/// lowers weights by `alpha_{jp}`.
#[derive(Clone, Debug)]
pub struct Parts {
    pub gen: IGen,
    pub j: i32,
    pub jp: i32,
    pub n: Operator,
    pub nbar: Operator,
}

/// Matrices of the coideal generators on one Fock space.
#[derive(Clone, Debug)]
pub struct IAction {
    pub u: UAction,
    pub family: Family,
    pub e: BTreeMap<i32, Operator>,
    pub f: BTreeMap<i32, Operator>,
    pub k: BTreeMap<i32, Operator>,
    pub kinv: BTreeMap<i32, Operator>,
    pub t: Option<Operator>,
}

impl IAction {
    pub fn new(space: FockSpace) -> Self {
        Self::from_u(UAction::new(space))
    }

    pub fn from_u(u: UAction) -> Self {
        let family = u.space.profile().family();
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        let mut k = BTreeMap::new();
        let mut kinv = BTreeMap::new();
        for p in iota_parts(&u) {
            let m = &u.e[&p.j] + &p.n;
            match p.gen {
                IGen::E(i) => {
                    e.insert(i, m);
                }
                IGen::F(i) => {
                    f.insert(i, m);
                }
                _ => {}
            }
        }
        for i in u.space.profile().iota_index_set() {
            k.insert(i, &u.k[&i] * &u.kinv[&-i]);
            kinv.insert(i, &u.kinv[&i] * &u.k[&-i]);
        }
        let t = match family {
            Family::Odd => Some(&u.e[&0] + &(&u.f[&0] * &u.kinv[&0]).scale(&LaurentPoly::q_pow(1))),
            Family::Even => None,
        };
        IAction {
            u,
            family,
            e,
            f,
            k,
            kinv,
            t,
        }
    }

    pub fn space(&self) -> &FockSpace {
        &self.u.space
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    pub fn gen(&self, g: IGen) -> &Operator {
        match g {
            IGen::E(i) => &self.e[&i],
            IGen::F(i) => &self.f[&i],
            IGen::K(i) => &self.k[&i],
            IGen::Kinv(i) => &self.kinv[&i],
            IGen::T => self.t.as_ref().expect("t exists only in the odd family"),
        }
    }

    /// All generator matrices, in a fixed order.
    pub fn generators(&self) -> Vec<(IGen, &Operator)> {
        let mut out = Vec::new();
        for i in self.u.space.profile().iota_index_set() {
            out.push((IGen::E(i), &self.e[&i]));
            out.push((IGen::F(i), &self.f[&i]));
            out.push((IGen::K(i), &self.k[&i]));
            out.push((IGen::Kinv(i), &self.kinv[&i]));
        }
        if let Some(t) = &self.t {
            out.push((IGen::T, t));
        }
        out
    }

    /// Divided power `e_i^(a)` or `f_i^(a)` through its closed form.
    pub fn divided(&self, g: IGen, a: u32) -> Operator {
        idivided(&self.u, self.family, g, a)
    }
}

/// E/F decomposition of each generator image.
pub fn iota_parts(u: &UAction) -> Vec<Parts> {
    let profile = u.space.profile();
    let fam = profile.family();
    let q = LaurentPoly::q_pow(1);
    let qi = LaurentPoly::q_pow(-1);
    let mut out = Vec::new();
    for i in profile.iota_index_set() {
        let (n_e, nb_e, n_f, nb_f) = match fam {
            Family::Even => (
                &u.f[&-i] * &u.kinv[&i],
                &u.f[&-i] * &u.k[&i],
                &u.kinv[&-i] * &u.f[&i],
                &u.k[&-i] * &u.f[&i],
            ),
            Family::Odd => (
                &u.kinv[&i] * &u.f[&-i],
                &u.k[&i] * &u.f[&-i],
                &u.f[&i] * &u.kinv[&-i],
                &u.f[&i] * &u.k[&-i],
            ),
        };
        out.push(Parts {
            gen: IGen::E(i),
            j: i,
            jp: -i,
            n: n_e,
            nbar: nb_e,
        });
        out.push(Parts {
            gen: IGen::F(i),
            j: -i,
            jp: i,
            n: n_f,
            nbar: nb_f,
        });
    }
    if fam == Family::Odd {
        out.push(Parts {
            gen: IGen::T,
            j: 0,
            jp: 0,
            n: (&u.f[&0] * &u.kinv[&0]).scale(&q),
            nbar: (&u.f[&0] * &u.k[&0]).scale(&qi),
        });
    }
    out
}

fn div_entries(x: &Operator, d: &LaurentPoly) -> Operator {
    let cols = x
        .cols()
        .iter()
        .map(|c| {
            c.iter()
                .map(|(i, v)| (*i, v.div_exact(d).expect("integral divided power")))
                .collect()
        })
        .collect();
    Operator::from_cols(x.nrows(), cols)
}

/// Closed-form divided powers of `e_i` and `f_i`.
pub fn idivided(u: &UAction, fam: Family, g: IGen, a: u32) -> Operator {
    let (i, is_e) = match g {
        IGen::E(i) => (i, true),
        IGen::F(i) => (i, false),
        _ => panic!("divided powers are defined for e_i and f_i only"),
    };
    let mut acc = Operator::zero(u.dim(), u.dim());
    for j in 0..=a {
        let c = LaurentPoly::q_pow((j * (a - j)) as i32);
        let term = match (fam, is_e) {
            (Family::Even, true) => {
                let n = div_entries(&(&u.f[&-i] * &u.kinv[&i]).pow(j), &qfactorial(j));
                &n * &u.e_div(i, a - j)
            }
            (Family::Even, false) => {
                let n = div_entries(&(&u.kinv[&-i] * &u.f[&i]).pow(j), &qfactorial(j));
                &n * &u.e_div(-i, a - j)
            }
            (Family::Odd, true) => &(&u.f_div(-i, j) * &u.kinv[&i].pow(j)) * &u.e_div(i, a - j),
            (Family::Odd, false) => &(&u.f_div(i, j) * &u.kinv[&-i].pow(j)) * &u.e_div(-i, a - j),
        };
        acc = &acc + &term.scale(&c);
    }
    acc
}

fn label(s: &str, i: i32, j: i32) -> String {
    format!("{}[{},{}]", s, format_letter(i), format_letter(j))
}

/// Defining relations of the coideal subalgebra as matrix identities.
pub fn check_irelations(ia: &IAction) -> Vec<RelationReport> {
    let shape = ia.space().shape_label();
    let fam = ia.family.to_string();
    let idx = ia.space().profile().iota_index_set();
    let n = ia.dim();
    let id = Operator::identity(n);
    let zero = Operator::zero(n, n);
    let qq = q_minus_qinv();
    let two = qint(2);
    let mut out = Vec::new();
    let mut push = |name: String, d: Operator| out.push(RelationReport::from_difference(name, &fam, &shape, &d));
    let kappa = |i: i32, j: i32| (&Weight::alpha(i) - &Weight::alpha(-i)).pairing(&Weight::alpha(j)) as i32;
    for &i in &idx {
        push(label("kkinv", i, i), &(&ia.k[&i] * &ia.kinv[&i]) - &id);
        for &j in &idx {
            push(label("kk", i, j), commutator(&ia.k[&i], &ia.k[&j]));
            let c = LaurentPoly::q_pow(kappa(i, j));
            push(
                label("kek", i, j),
                &(&(&ia.k[&i] * &ia.e[&j]) * &ia.kinv[&i]) - &ia.e[&j].scale(&c),
            );
            let c = LaurentPoly::q_pow(-kappa(i, j));
            push(
                label("kfk", i, j),
                &(&(&ia.k[&i] * &ia.f[&j]) * &ia.kinv[&i]) - &ia.f[&j].scale(&c),
            );
            // the (1/2, 1/2) case is replaced by the two special relations below
            if !(ia.family == Family::Even && i == 1 && j == 1) {
                let lhs = (&(&ia.e[&i] * &ia.f[&j]) - &(&ia.f[&j] * &ia.e[&i])).scale(&qq);
                let rhs = if i == j { &ia.k[&i] - &ia.kinv[&i] } else { zero.clone() };
                push(label("ef", i, j), &lhs - &rhs);
            }
            if (i - j).abs() == 2 {
                for (lab, x) in [("serre_e", &ia.e), ("serre_f", &ia.f)] {
                    let (a, b) = (&x[&i], &x[&j]);
                    push(
                        label(lab, i, j),
                        &(&(&(a * a) * b) - &(&(a * b) * a).scale(&two)) + &(&(b * a) * a),
                    );
                }
            } else if (i - j).abs() > 2 {
                push(label("comm_e", i, j), commutator(&ia.e[&i], &ia.e[&j]));
                push(label("comm_f", i, j), commutator(&ia.f[&i], &ia.f[&j]));
            }
        }
    }
    match ia.family {
        Family::Even if idx.contains(&1) => {
            let (e, f) = (&ia.e[&1], &ia.f[&1]);
            let (k, ki) = (&ia.k[&1], &ia.kinv[&1]);
            let q2 = LaurentPoly::q_pow(2);
            let qm2 = LaurentPoly::q_pow(-2);
            // f^2 e + e f^2 = [2](f e f - q^2 f k^-1 - q^-2 f k)
            let lhs = &(&(f * f) * e) + &(&(e * f) * f);
            let inner = &(&(&(f * e) * f) - &(f * ki).scale(&q2)) - &(f * k).scale(&qm2);
            push("serre1[1/2]".to_string(), &lhs - &inner.scale(&two));
            // e^2 f + f e^2 = [2](e f e - q^-2 k e - q^2 k^-1 e)
            let lhs = &(&(e * e) * f) + &(&(f * e) * e);
            let inner = &(&(&(e * f) * e) - &(k * e).scale(&qm2)) - &(ki * e).scale(&q2);
            push("serre2[1/2]".to_string(), &lhs - &inner.scale(&two));
        }
        Family::Odd => {
            let t = ia.t.as_ref().unwrap();
            for &i in &idx {
                push(label("ktk", i, i), &(&(&ia.k[&i] * t) * &ia.kinv[&i]) - t);
                for (lab, x) in [("e", &ia.e), ("f", &ia.f)] {
                    let a = &x[&i];
                    if i > 2 {
                        push(label(&format!("{}t_comm", lab), i, 0), commutator(a, t));
                    } else {
                        // a^2 t + t a^2 = [2] a t a
                        let d = &(&(&(a * a) * t) + &(&(t * a) * a)) - &(&(a * t) * a).scale(&two);
                        push(label(&format!("{}2t", lab), i, 0), d);
                        // t^2 a + a t^2 = [2] t a t + a
                        let d = &(&(&(&(t * t) * a) + &(&(a * t) * t)) - &(&(t * a) * t).scale(&two)) - a;
                        push(label(&format!("t2{}", lab), i, 0), d);
                    }
                }
            }
            if idx.is_empty() {
                out.push(RelationReport::skipped(
                    "t-relations".to_string(),
                    &fam,
                    &shape,
                    "no e_i, f_i generators at this rank",
                ));
            }
        }
        _ => {}
    }
    out
}

/// Left tensor factor of a coproduct term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Left {
    One,
    G(IGen),
}

/// Coproduct `Delta(g) = sum left (x) right`, `right` given on the space of `uy`.
pub fn coideal_coproduct(g: IGen, uy: &UAction) -> Vec<(Left, Operator)> {
    let fam = uy.space.profile().family();
    let id = uy.identity();
    let q = LaurentPoly::q_pow(1);
    match (fam, g) {
        (_, IGen::K(i)) => vec![(Left::G(IGen::K(i)), &uy.k[&i] * &uy.kinv[&-i])],
        (_, IGen::Kinv(i)) => vec![(Left::G(IGen::Kinv(i)), &uy.kinv[&i] * &uy.k[&-i])],
        (Family::Even, IGen::E(i)) => vec![
            (Left::One, uy.e[&i].clone()),
            (Left::G(IGen::E(i)), uy.kinv[&i].clone()),
            (Left::G(IGen::Kinv(i)), &uy.f[&-i] * &uy.kinv[&i]),
        ],
        (Family::Even, IGen::F(i)) => vec![
            (Left::G(IGen::K(i)), &uy.kinv[&-i] * &uy.f[&i]),
            (Left::G(IGen::F(i)), uy.kinv[&-i].clone()),
            (Left::One, uy.e[&-i].clone()),
        ],
        (Family::Odd, IGen::E(i)) => vec![
            (Left::One, uy.e[&i].clone()),
            (Left::G(IGen::E(i)), uy.kinv[&i].clone()),
            (Left::G(IGen::Kinv(i)), &uy.kinv[&i] * &uy.f[&-i]),
        ],
        (Family::Odd, IGen::F(i)) => vec![
            (Left::G(IGen::K(i)), &uy.f[&i] * &uy.kinv[&-i]),
            (Left::G(IGen::F(i)), uy.kinv[&-i].clone()),
            (Left::One, uy.e[&-i].clone()),
        ],
        (Family::Odd, IGen::T) => vec![
            (Left::G(IGen::T), uy.kinv[&0].clone()),
            (Left::One, (&uy.f[&0] * &uy.kinv[&0]).scale(&q)),
            (Left::One, uy.e[&0].clone()),
        ],
        (Family::Even, IGen::T) => {
            let _ = id;
            panic!("t exists only in the odd family")
        }
    }
}

/// Checks `iota(g)` on `X (x) Y` against the coproduct formula, and the
/// counit identity on `Y`. Returns failing generator names.
pub fn check_coideal(x: &FockSpace, y: &FockSpace) -> Vec<String> {
    let ix = IAction::new(x.clone());
    let uy = UAction::new(y.clone());
    let iy = IAction::from_u(uy.clone());
    let t = FockSpace::new(*x.profile(), x.b().concat(y.b()));
    let it = IAction::new(t);
    let idx = Operator::identity(ix.dim());
    let mut bad = Vec::new();
    for (g, mat) in it.generators() {
        let terms = coideal_coproduct(g, &uy);
        let mut sum = Operator::zero(it.dim(), it.dim());
        let mut counit = Operator::zero(iy.dim(), iy.dim());
        for (left, right) in &terms {
            let lm = match left {
                Left::One => &idx,
                Left::G(h) => ix.gen(*h),
            };
            sum = &sum + &kron(lm, right);
            if matches!(left, Left::One | Left::G(IGen::K(_)) | Left::G(IGen::Kinv(_))) {
                counit = &counit + right;
            }
        }
        if &sum != mat {
            bad.push(format!("{:?} coproduct", g));
        }
        if &counit != iy.gen(g) {
            bad.push(format!("{:?} counit", g));
        }
    }
    bad
}

/// Basis indices split into classes that every operator in `ops` preserves.
pub fn invariant_blocks(n: usize, ops: &[&Operator]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for op in ops {
        for (i, j, _) in op.entries() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Dimension of `{X : X h = h X for all h}` after `q -> q0` mod `p`.
/// Never smaller than the dimension over `Q(q)`.
pub fn commutant_dim_modp(n: usize, ops: &[&Operator], q0: u64, p: u64) -> usize {
    let blocks = invariant_blocks(n, ops);
    let mats: Vec<BTreeMap<(usize, usize), u64>> = ops
        .iter()
        .map(|o| {
            o.entries()
                .map(|(i, j, v)| ((i, j), eval_mod(v, q0, p)))
                .filter(|x| x.1 != 0)
                .collect()
        })
        .collect();
    let mut total = 0;
    for a in &blocks {
        for b in &blocks {
            // unknown X: block a -> block b, entries x[(r in b, c in a)]
            let var: BTreeMap<(usize, usize), usize> = b
                .iter()
                .flat_map(|r| a.iter().map(move |c| (*r, *c)))
                .enumerate()
                .map(|(k, rc)| (rc, k))
                .collect();
            let mut ech = ModEchelon::new(p);
            for m in &mats {
                // (X h - h X)[r, c] for r in b, c in a
                for &r in b.iter() {
                    for &c in a.iter() {
                        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
                        for &s in a.iter() {
                            if let Some(h) = m.get(&(s, c)) {
                                let v = var[&(r, s)];
                                *row.entry(v).or_insert(0) += h;
                            }
                        }
                        for &s in b.iter() {
                            if let Some(h) = m.get(&(r, s)) {
                                let v = var[&(s, c)];
                                let slot = row.entry(v).or_insert(0);
                                *slot = (*slot + p - h % p) % p;
                            }
                        }
                        let row: Vec<(usize, u64)> =
                            row.into_iter().map(|(k, x)| (k, x % p)).filter(|x| x.1 != 0).collect();
                        if !row.is_empty() {
                            ech.insert(&row);
                        }
                    }
                }
            }
            total += var.len() - ech.rank();
        }
    }
    total
}

/// Dimension of the unital algebra generated by `gens` after `q -> q0` mod
/// `p`. Never larger than the dimension over `Q(q)`.
pub fn algebra_dim_modp(n: usize, gens: &[&Operator], q0: u64, p: u64) -> usize {
    let gm: Vec<Vec<Vec<(usize, u64)>>> = gens
        .iter()
        .map(|g| {
            g.cols()
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(i, v)| (*i, eval_mod(v, q0, p)))
                        .filter(|x| x.1 != 0)
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut ech = DenseEchelon::new(n * n, p);
    let mut id = vec![0u64; n * n];
    for j in 0..n {
        id[j * n + j] = 1;
    }
    ech.insert(id.clone());
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in &gm {
            // g * m, column-major
            let mut out = vec![0u64; n * n];
            for c in 0..n {
                for r in 0..n {
                    let x = m[c * n + r];
                    if x == 0 {
                        continue;
                    }
                    for &(i, v) in &g[r] {
                        let slot = &mut out[c * n + i];
                        *slot = (*slot + x * v) % p;
                    }
                }
            }
            if ech.insert(out.clone()) {
                queue.push(out);
            }
        }
    }
    ech.rank()
}

struct DenseEchelon {
    p: u64,
    pivots: Vec<(usize, Vec<u64>)>,
}

impl DenseEchelon {
    fn new(_len: usize, p: u64) -> Self {
        DenseEchelon { p, pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, row) in &self.pivots {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    if *y != 0 {
                        *x = (*x + p - c * y % p) % p;
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = crate::exactalg::modp::inv_mod(v[piv], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        self.pivots.push((piv, v));
        true
    }
}
