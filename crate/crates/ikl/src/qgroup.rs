//! `U_q(sl_{k+1})` acting on tensor products of the natural module `V` and
//! its dual `W`: generator matrices, relations, braid operators, the bar
//! involution and the quasi-R-matrix.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::exactalg::{add_entry, q_minus_qinv, qfactorial, qint, vec_axpy};
use crate::weights::{self, theta_wt, wt, BSeq, LetterWord, RankProfile, ThetaWeight, Weight};
use crate::{LaurentPoly, Operator, SparseVector};

/// Basis `M_f` of `V^{b_1} (x) ... (x) V^{b_L}`, words in lexicographic order.
#[derive(Clone, Debug)]
pub struct FockSpace {
    profile: RankProfile,
    b: BSeq,
    words: Vec<LetterWord>,
    index: HashMap<LetterWord, usize>,
}

impl FockSpace {
    pub fn new(profile: RankProfile, b: BSeq) -> Self {
        let words = weights::all_words(&profile, b.len());
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        FockSpace {
            profile,
            b,
            words,
            index,
        }
    }

    pub fn profile(&self) -> &RankProfile {
        &self.profile
    }

    pub fn b(&self) -> &BSeq {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn word(&self, i: usize) -> &LetterWord {
        &self.words[i]
    }

    pub fn words(&self) -> &[LetterWord] {
        &self.words
    }

    pub fn index_of(&self, f: &[i32]) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn weight(&self, i: usize) -> Weight {
        wt(&self.words[i], &self.b)
    }

    pub fn theta_weight(&self, i: usize) -> ThetaWeight {
        theta_wt(&self.words[i], &self.b)
    }

    /// Basis indices grouped by coideal weight.
    pub fn theta_blocks(&self) -> BTreeMap<ThetaWeight, Vec<usize>> {
        let mut out: BTreeMap<ThetaWeight, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            out.entry(self.theta_weight(i)).or_default().push(i);
        }
        out
    }

    /// Tensor factor label like `VVW`.
    pub fn shape_label(&self) -> String {
        self.b.bits().iter().map(|x| if *x == 0 { 'V' } else { 'W' }).collect()
    }

    pub fn basis_vector(&self, i: usize) -> SparseVector {
        BTreeMap::from([(i, LaurentPoly::one())])
    }
}

/// Generators of `U_q(sl_{k+1})`, indices doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(i32),
    F(i32),
    K(i32),
    Kinv(i32),
}

/// Exponent of `K_i` on a single slot holding letter `a`.
pub fn k_exponent(i: i32, a: i32, dual: bool) -> i32 {
    let x = (a == i - 1) as i32 - (a == i + 1) as i32;
    if dual {
        -x
    } else {
        x
    }
}

/// `E_i` on a single slot: the new letter, if any.
pub fn e_on_letter(i: i32, a: i32, dual: bool) -> Option<i32> {
    match dual {
        false if a == i + 1 => Some(a - 2),
        true if a == i - 1 => Some(a + 2),
        _ => None,
    }
}

/// `F_i` on a single slot: the new letter, if any.
pub fn f_on_letter(i: i32, a: i32, dual: bool) -> Option<i32> {
    match dual {
        false if a == i - 1 => Some(a + 2),
        true if a == i + 1 => Some(a - 2),
        _ => None,
    }
}

/// Action of one generator on `M_f`, through the coproduct
/// `E -> 1 (x) E + E (x) K^-1`, `F -> F (x) 1 + K (x) F`.
pub fn act_gen(gen: Gen, f: &[i32], b: &BSeq) -> Vec<(LetterWord, LaurentPoly)> {
    let dual = |p: usize| b.bits()[p] == 1;
    match gen {
        Gen::K(i) | Gen::Kinv(i) => {
            let e: i32 = f.iter().enumerate().map(|(p, a)| k_exponent(i, *a, dual(p))).sum();
            let e = if matches!(gen, Gen::K(_)) { e } else { -e };
            vec![(f.to_vec(), LaurentPoly::q_pow(e))]
        }
        Gen::E(i) => {
            let mut out = Vec::new();
            for p in 0..f.len() {
                if let Some(a) = e_on_letter(i, f[p], dual(p)) {
                    let tail: i32 = (p + 1..f.len()).map(|s| k_exponent(i, f[s], dual(s))).sum();
                    let mut g = f.to_vec();
                    g[p] = a;
                    out.push((g, LaurentPoly::q_pow(-tail)));
                }
            }
            out
        }
        Gen::F(i) => {
            let mut out = Vec::new();
            for p in 0..f.len() {
                if let Some(a) = f_on_letter(i, f[p], dual(p)) {
                    let head: i32 = (0..p).map(|s| k_exponent(i, f[s], dual(s))).sum();
                    let mut g = f.to_vec();
                    g[p] = a;
                    out.push((g, LaurentPoly::q_pow(head)));
                }
            }
            out
        }
    }
}

pub fn gen_matrix(space: &FockSpace, gen: Gen) -> Operator {
    let cols = (0..space.dim())
        .map(|j| {
            let mut c = BTreeMap::new();
            for (g, v) in act_gen(gen, space.word(j), space.b()) {
                add_entry(&mut c, space.index_of(&g).unwrap(), &v);
            }
            c
        })
        .collect();
    Operator::from_cols(space.dim(), cols)
}

/// Generator matrices of `U_q(sl_{k+1})` on one Fock space.
#[derive(Clone, Debug)]
pub struct UAction {
    pub space: FockSpace,
    pub e: BTreeMap<i32, Operator>,
    pub f: BTreeMap<i32, Operator>,
    pub k: BTreeMap<i32, Operator>,
    pub kinv: BTreeMap<i32, Operator>,
}

impl UAction {
    pub fn new(space: FockSpace) -> Self {
        let idx = space.profile().index_set();
        let mk = |g: fn(i32) -> Gen| -> BTreeMap<i32, Operator> {
            idx.iter().map(|i| (*i, gen_matrix(&space, g(*i)))).collect()
        };
        let e = mk(Gen::E);
        let f = mk(Gen::F);
        let k = mk(Gen::K);
        let kinv = mk(Gen::Kinv);
        UAction { space, e, f, k, kinv }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn identity(&self) -> Operator {
        Operator::identity(self.dim())
    }

    pub fn gen(&self, g: Gen) -> &Operator {
        match g {
            Gen::E(i) => &self.e[&i],
            Gen::F(i) => &self.f[&i],
            Gen::K(i) => &self.k[&i],
            Gen::Kinv(i) => &self.kinv[&i],
        }
    }

    /// `E_i^{(a)}`.
    pub fn e_div(&self, i: i32, a: u32) -> Operator {
        divided(&self.e[&i], a)
    }

    /// `F_i^{(a)}`.
    pub fn f_div(&self, i: i32, a: u32) -> Operator {
        divided(&self.f[&i], a)
    }

    /// Braid operator `T_i` on the whole space, weight vector by weight vector:
    /// `T_i m = sum_{-a+b-c = (lambda, alpha_i)} (-1)^b q^{b-ac} E^(a) F^(b) E^(c) m`.
    pub fn braid(&self, i: i32) -> Operator {
        self.braid_impl(i, false)
    }

    /// Inverse braid operator
    /// `m -> sum_{a-b+c = (lambda, alpha_i)} (-1)^b q^{ac-b} F^(a) E^(b) F^(c) m`.
    pub fn braid_inverse(&self, i: i32) -> Operator {
        self.braid_impl(i, true)
    }

    fn braid_impl(&self, i: i32, inverse: bool) -> Operator {
        let l = self.space.len() as u32;
        let ed: Vec<Operator> = (0..=l).map(|a| self.e_div(i, a)).collect();
        let fd: Vec<Operator> = (0..=l).map(|a| self.f_div(i, a)).collect();
        let (outer, mid) = if inverse { (&fd, &ed) } else { (&ed, &fd) };
        let mut cols = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let n: i32 = act_gen(Gen::K(i), self.space.word(j), self.space.b())[0]
                .1
                .max_exp()
                .unwrap();
            let x = self.space.basis_vector(j);
            let mut col = BTreeMap::new();
            for c in 0..=l as i32 {
                let v1 = outer[c as usize].apply(&x);
                if v1.is_empty() {
                    continue;
                }
                for a in 0..=l as i32 {
                    // inverse: a - b + c = n; forward: -a + b - c = n
                    let b = if inverse { a + c - n } else { n + a + c };
                    if b < 0 || b > l as i32 {
                        continue;
                    }
                    let v2 = mid[b as usize].apply(&v1);
                    let v3 = outer[a as usize].apply(&v2);
                    let e = if inverse { a * c - b } else { b - a * c };
                    let coef = LaurentPoly::signed_q_pow(b % 2 == 1, e);
                    vec_axpy(&mut col, &coef, &v3);
                }
            }
            cols.push(col);
        }
        Operator::from_cols(self.dim(), cols)
    }

    /// `T_{i_1} ... T_{i_N}` for a word of doubled indices.
    pub fn braid_word(&self, word: &[i32]) -> Operator {
        word.iter().fold(self.identity(), |acc, i| &acc * &self.braid(*i))
    }

    pub fn braid_word_inverse(&self, word: &[i32]) -> Operator {
        word.iter()
            .rev()
            .fold(self.identity(), |acc, i| &acc * &self.braid_inverse(*i))
    }

    /// Matrix of the bar involution `psi`.
    pub fn psi(&self) -> Operator {
        psi_matrix(&self.space)
    }
}

fn divided(x: &Operator, a: u32) -> Operator {
    let p = x.pow(a);
    let d = qfactorial(a);
    let cols = p
        .cols()
        .iter()
        .map(|c| {
            c.iter()
                .map(|(i, v)| (*i, v.div_exact(&d).expect("divided power is integral")))
                .collect()
        })
        .collect();
    Operator::from_cols(x.nrows(), cols)
}

/// A reduced word of the longest element, as doubled indices:
/// `s_1 (s_2 s_1) (s_3 s_2 s_1) ...` in the ascending labelling of the index set.
pub fn w0_word(profile: &RankProfile) -> Vec<i32> {
    let idx = profile.index_set();
    let mut w = Vec::new();
    for j in 0..idx.len() {
        for t in (0..=j).rev() {
            w.push(idx[t]);
        }
    }
    w
}

/// Bar involution on a Fock space.
///
/// Built slot by slot. If `y` is the lowest vector of the last slot then
/// `psi(x (x) y) = psi(x) (x) y`, and the other letters of the slot are reached
/// through `psi(x (x) E_i y) = E_i psi(x (x) y) - q^-1 psi(E_i x (x) y)`.
pub fn psi_matrix(space: &FockSpace) -> Operator {
    let profile = *space.profile();
    let len = space.len();
    if len == 0 {
        return Operator::identity(1);
    }
    let letters = profile.letters();
    let nl = letters.len();
    let pos = |a: i32| letters.iter().position(|x| *x == a).unwrap();
    // one slot: psi fixes the basis
    let mut psi: Vec<SparseVector> = (0..nl).map(|j| BTreeMap::from([(j, LaurentPoly::one())])).collect();
    for j in 1..len {
        let bx = space.b().prefix(j);
        let bt = space.b().prefix(j + 1);
        let sx = FockSpace::new(profile, bx);
        let st = FockSpace::new(profile, bt.clone());
        let dual = bt.bits()[j] == 1;
        let dx = sx.dim();
        let mut out: Vec<SparseVector> = vec![BTreeMap::new(); st.dim()];
        let at = |x: usize, y: i32| x * nl + pos(y);
        // lowest vector of the new slot and the chain of E_i moves upward
        let chain: Vec<i32> = if dual {
            letters.clone()
        } else {
            letters.iter().rev().copied().collect()
        };
        let y0 = chain[0];
        for x in 0..dx {
            let mut v = BTreeMap::new();
            for (xi, c) in &psi[x] {
                v.insert(at(*xi, y0), c.clone());
            }
            out[at(x, y0)] = v;
        }
        for w in chain.windows(2) {
            let (y, ynext) = (w[0], w[1]);
            let i = if dual { y + 1 } else { y - 1 };
            let ex = gen_matrix(&sx, Gen::E(i));
            let et = gen_matrix(&st, Gen::E(i));
            let qinv = LaurentPoly::q_pow(-1);
            for x in 0..dx {
                let mut v = et.apply(&out[at(x, y)]);
                for (xp, c) in ex.col(x) {
                    let coef = -(&qinv * &c.bar());
                    vec_axpy(&mut v, &coef, &out[at(*xp, y)]);
                }
                out[at(x, ynext)] = v;
            }
        }
        psi = out;
    }
    Operator::from_cols(space.dim(), psi)
}

/// `A (x) B` on the concatenated space.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let db = b.ncols();
    let dim = a.ncols() * db;
    a.kron_with(b, dim, |i, j| i * db + j)
}

/// Quasi-R-matrix `Theta = psi_{X (x) Y} o (psi_X (x) psi_Y)` on the split of
/// `space` after slot `j`, returned as a linear operator.
pub fn theta_matrix(space: &FockSpace, j: usize) -> Operator {
    let profile = *space.profile();
    let px = psi_matrix(&FockSpace::new(profile, space.b().prefix(j)));
    let py = psi_matrix(&FockSpace::new(profile, space.b().suffix(j)));
    let pt = psi_matrix(space);
    &pt * &kron(&px, &py).bar()
}

/// Operator split by weight shift: `pieces[mu]` maps weight `lambda` to
/// `lambda + mu` (for the first tensor factor, in the quasi-R case).
#[derive(Clone, Debug, Default)]
pub struct GradedOperator {
    pub pieces: BTreeMap<Weight, Operator>,
}

impl GradedOperator {
    /// Splits `op` by the weight change `wt(row) - wt(col)` computed by `wfn`.
    pub fn split<F: Fn(usize) -> Weight>(op: &Operator, wfn: F) -> Self {
        let mut pieces: BTreeMap<Weight, Operator> = BTreeMap::new();
        let n = op.ncols();
        for (i, j, v) in op.entries() {
            let mu = &wfn(i) - &wfn(j);
            pieces
                .entry(mu)
                .or_insert_with(|| Operator::zero(op.nrows(), n))
                .set(i, j, v.clone());
        }
        GradedOperator { pieces }
    }

    pub fn total(&self, dim: usize) -> Operator {
        self.pieces.values().fold(Operator::zero(dim, dim), |acc, p| &acc + p)
    }
}

/// `Theta` graded by the weight change in the first `j` slots.
pub fn quasi_r_theta(space: &FockSpace, j: usize) -> GradedOperator {
    let th = theta_matrix(space, j);
    let bx = space.b().prefix(j);
    GradedOperator::split(&th, |i| wt(&space.word(i)[..j], &bx))
}

/// One row of a relation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub family: String,
    pub shape: String,
    pub status: String,
    pub witness: Option<String>,
}

impl RelationReport {
    pub fn from_difference(relation: String, family: &str, shape: &str, diff: &Operator) -> Self {
        let witness = diff
            .max_degree_entry()
            .map(|(i, j, v)| format!("entry ({}, {}) = {}", i, j, v));
        RelationReport {
            relation,
            family: family.to_string(),
            shape: shape.to_string(),
            status: if diff.is_zero() { "pass" } else { "fail" }.to_string(),
            witness,
        }
    }

    pub fn skipped(relation: String, family: &str, shape: &str, why: &str) -> Self {
        RelationReport {
            relation,
            family: family.to_string(),
            shape: shape.to_string(),
            status: "skipped".to_string(),
            witness: Some(why.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != "fail"
    }
}

fn dyn_pair(i: i32, j: i32) -> i64 {
    Weight::alpha(i).pairing(&Weight::alpha(j))
}

/// All defining relations of `U_q(sl_{k+1})` as matrix identities.
pub fn check_relations(u: &UAction) -> Vec<RelationReport> {
    let shape = u.space.shape_label();
    let fam = "sl";
    let idx = u.space.profile().index_set();
    let id = u.identity();
    let mut out = Vec::new();
    let qq = q_minus_qinv();
    let two = qint(2);
    let name = |s: &str, i: i32, j: i32| format!("{}[{},{}]", s, weights::format_letter(i), weights::format_letter(j));
    for &i in &idx {
        let d = &(&u.k[&i] * &u.kinv[&i]) - &id;
        out.push(RelationReport::from_difference(name("KKinv", i, i), fam, &shape, &d));
        for &j in &idx {
            let d = &(&u.k[&i] * &u.k[&j]) - &(&u.k[&j] * &u.k[&i]);
            out.push(RelationReport::from_difference(name("KK", i, j), fam, &shape, &d));
            let a = dyn_pair(i, j) as i32;
            let d = &(&(&u.k[&i] * &u.e[&j]) * &u.kinv[&i]) - &u.e[&j].scale(&LaurentPoly::q_pow(a));
            out.push(RelationReport::from_difference(name("KEK", i, j), fam, &shape, &d));
            let d = &(&(&u.k[&i] * &u.f[&j]) * &u.kinv[&i]) - &u.f[&j].scale(&LaurentPoly::q_pow(-a));
            out.push(RelationReport::from_difference(name("KFK", i, j), fam, &shape, &d));
            let lhs = (&(&u.e[&i] * &u.f[&j]) - &(&u.f[&j] * &u.e[&i])).scale(&qq);
            let rhs = if i == j {
                &u.k[&i] - &u.kinv[&i]
            } else {
                Operator::zero(u.dim(), u.dim())
            };
            out.push(RelationReport::from_difference(
                name("EF", i, j),
                fam,
                &shape,
                &(&lhs - &rhs),
            ));
            if (i - j).abs() == 2 {
                for (lab, x) in [("SerreE", &u.e), ("SerreF", &u.f)] {
                    let (a, b) = (&x[&i], &x[&j]);
                    let d = &(&(&(a * a) * b) - &(&(a * b) * a).scale(&two)) + &(&(b * a) * a);
                    out.push(RelationReport::from_difference(name(lab, i, j), fam, &shape, &d));
                }
            } else if (i - j).abs() > 2 {
                for (lab, x) in [("CommE", &u.e), ("CommF", &u.f)] {
                    let d = crate::exactalg::commutator(&x[&i], &x[&j]);
                    out.push(RelationReport::from_difference(name(lab, i, j), fam, &shape, &d));
                }
            }
        }
    }
    out
}

/// `Delta(u) Theta = Theta bar-Delta(u)` for every generator, on the split
/// after slot `j`. Returns the generators that fail.
pub fn check_theta_intertwines(space: &FockSpace, j: usize) -> Vec<String> {
    let profile = *space.profile();
    let ux = UAction::new(FockSpace::new(profile, space.b().prefix(j)));
    let uy = UAction::new(FockSpace::new(profile, space.b().suffix(j)));
    let ut = UAction::new(space.clone());
    let th = theta_matrix(space, j);
    let (ix, iy) = (ux.identity(), uy.identity());
    let mut bad = Vec::new();
    for i in profile.index_set() {
        // bar-Delta: E -> 1 (x) E + E (x) K, F -> F (x) 1 + K^-1 (x) F
        let be = &kron(&ix, &uy.e[&i]) + &kron(&ux.e[&i], &uy.k[&i]);
        let bf = &kron(&ux.f[&i], &iy) + &kron(&ux.kinv[&i], &uy.f[&i]);
        if &ut.e[&i] * &th != &th * &be {
            bad.push(format!("E{}", i));
        }
        if &ut.f[&i] * &th != &th * &bf {
            bad.push(format!("F{}", i));
        }
        if &ut.k[&i] * &th != &th * &ut.k[&i] {
            bad.push(format!("K{}", i));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(k: u32, b: &str) -> FockSpace {
        FockSpace::new(RankProfile::new(k).unwrap(), BSeq::parse(b).unwrap())
    }

    #[test]
    fn natural_module_actions() {
        // k = 1: letters -1/2, 1/2; v_{-1/2} is highest
        let s = space(1, "0");
        let u = UAction::new(s.clone());
        let e = &u.e[&0];
        assert_eq!(
            e.get(s.index_of(&[-1]).unwrap(), s.index_of(&[1]).unwrap()),
            LaurentPoly::one()
        );
        let k = &u.k[&0];
        assert_eq!(k.get(0, 0), LaurentPoly::q_pow(1));
        assert_eq!(k.get(1, 1), LaurentPoly::q_pow(-1));
    }

    #[test]
    fn braid_on_sl2_natural() {
        let s = space(1, "0");
        let u = UAction::new(s.clone());
        let t = u.braid(0);
        let top = s.index_of(&[-1]).unwrap();
        let bot = s.index_of(&[1]).unwrap();
        assert_eq!(t.get(bot, top), LaurentPoly::from_terms([(1, (-1).into())]));
        assert_eq!(t.get(top, bot), LaurentPoly::one());
    }

    #[test]
    fn theta_rank_one() {
        // Theta = 1 + (q - q^-1) E (x) F on V (x) V
        let s = space(1, "00");
        let th = theta_matrix(&s, 1);
        let u = UAction::new(space(1, "0"));
        let expect = &Operator::identity(4) + &kron(&u.e[&0], &u.f[&0]).scale(&q_minus_qinv());
        assert_eq!(th, expect);
    }
}
