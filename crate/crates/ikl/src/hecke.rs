//! Hecke algebras of types B (two parameters) and D, their actions on pure
//! tensor spaces, and the Hecke-side bar involution on those spaces.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactalg::q_minus_qinv;
use crate::qgroup::FockSpace;
use crate::weights::{
    act_s0, act_s0d, act_sj, is_c_antidominant, is_d_antidominant, is_w_antidominant, Family, LetterWord,
};
use crate::{Int, LaurentPoly, Operator};

#[derive(Debug, thiserror::Error)]
pub enum HeckeError {
    #[error("flavor {0:?} does not act on shape {1}")]
    Domain(Flavor, String),
    #[error("orbit of {0} has more than one anti-dominant word")]
    Orbit(String),
}

/// Laurent polynomials in `q` and `p`, keyed by `(exp_q, exp_p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), Int>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, eq: i32, ep: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((eq, ep), Int::from(c));
        }
        Laurent2 { terms }
    }

    pub fn q(e: i32) -> Self {
        Self::monomial(1, e, 0)
    }

    pub fn p(e: i32) -> Self {
        Self::monomial(1, 0, e)
    }

    pub fn from_q(x: &LaurentPoly) -> Self {
        Laurent2 {
            terms: x.terms().iter().map(|(e, c)| ((*e, 0), c.clone())).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32), Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (i32, i32), c: &Int) {
        let slot = self.terms.entry(k).or_insert_with(Int::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn bar(&self) -> Self {
        Laurent2 {
            terms: self.terms.iter().map(|((a, b), c)| ((-a, -b), c.clone())).collect(),
        }
    }

    /// Inverse of `+-q^a p^b`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        if c.is_one() || (-c).is_one() {
            Some(Laurent2 {
                terms: BTreeMap::from([((-a, -b), c.clone())]),
            })
        } else {
            None
        }
    }

    /// Substitutes `p = q^s`.
    pub fn specialize(&self, s: i32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((a, b), c) in &self.terms {
            out = &out + &LaurentPoly::monomial(c.clone(), a + s * b);
        }
        out
    }
}

impl<'a> Add<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn add(self, o: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        Laurent2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn sub(self, o: &Laurent2) -> Laurent2 {
        self + &-o
    }
}

impl<'a> Mul<&'a Laurent2> for &'a Laurent2 {
    type Output = Laurent2;
    fn mul(self, o: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &o.terms {
                out.add_term((a + x, b + y), &(c * d));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxType {
    B,
    D,
}

/// Signed permutations in window notation, with Coxeter generators acting on
/// the right. Generator 0 is `s_0` (type B) or `s_0 s_1 s_0` (type D);
/// generator `i >= 1` swaps positions `i` and `i+1`. Type D with `m = 1` is
/// the trivial group.
#[derive(Clone, Debug)]
pub struct SignedPermGroup {
    pub ty: CoxType,
    pub m: usize,
    pub elems: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    pub length: Vec<usize>,
    /// Lexicographically least reduced word of each element.
    pub word: Vec<Vec<usize>>,
}

fn act_window(ty: CoxType, w: &[i32], s: usize) -> Vec<i32> {
    match (s, ty) {
        (0, CoxType::B) => act_s0(w),
        (0, CoxType::D) => act_s0d(w),
        (j, _) => act_sj(w, j),
    }
}

impl SignedPermGroup {
    pub fn new(ty: CoxType, m: usize) -> Self {
        let id: Vec<i32> = (1..=m as i32).collect();
        let mut g = SignedPermGroup {
            ty,
            m,
            elems: vec![id.clone()],
            index: HashMap::from([(id, 0)]),
            length: vec![0],
            word: vec![vec![]],
        };
        let gens = g.generators();
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
            for &v in &frontier {
                for &s in &gens {
                    let w = act_window(ty, &g.elems[v], s);
                    if g.index.contains_key(&w) {
                        continue;
                    }
                    let mut cand = g.word[v].clone();
                    cand.push(s);
                    let slot = next.entry(w).or_insert_with(|| cand.clone());
                    if cand < *slot {
                        *slot = cand;
                    }
                }
            }
            frontier.clear();
            for (w, word) in next {
                let i = g.elems.len();
                g.index.insert(w.clone(), i);
                g.elems.push(w);
                g.length.push(word.len());
                g.word.push(word);
                frontier.push(i);
            }
        }
        g
    }

    pub fn generators(&self) -> Vec<usize> {
        match self.ty {
            CoxType::B => (0..self.m).collect(),
            CoxType::D if self.m >= 2 => (0..self.m).collect(),
            CoxType::D => vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn mul_gen(&self, w: usize, s: usize) -> usize {
        self.index[&act_window(self.ty, &self.elems[w], s)]
    }

    /// Order of `s t`.
    pub fn coxeter_m(&self, s: usize, t: usize) -> usize {
        if s == t {
            return 1;
        }
        let (a, b) = (s.min(t), s.max(t));
        match (self.ty, a, b) {
            (CoxType::B, 0, 1) => 4,
            (CoxType::D, 0, 2) => 3,
            (CoxType::D, 0, _) => 2,
            (_, a, b) if b == a + 1 => 3,
            _ => 2,
        }
    }
}

/// Element `sum c_w H_w` of a Hecke algebra, keyed by group element index.
pub type HeckeElement = BTreeMap<usize, Laurent2>;

/// Iwahori-Hecke algebra with `(H_s - par_s^-1)(H_s + par_s) = 0`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    pub group: SignedPermGroup,
    pub params: Vec<Laurent2>,
}

fn add_into(x: &mut HeckeElement, w: usize, c: &Laurent2) {
    let slot = x.entry(w).or_insert_with(Laurent2::zero);
    *slot = &*slot + c;
    if slot.is_zero() {
        x.remove(&w);
    }
}

impl HeckeAlgebra {
    /// Type `B_m`; `p` is the parameter of `H_0` (`Laurent2::p(1)` generic,
    /// `Laurent2::one()` for `s_0`, `Laurent2::q(1)` for type C).
    pub fn type_b(m: usize, p: Laurent2) -> Self {
        let group = SignedPermGroup::new(CoxType::B, m);
        let mut params = vec![p];
        params.extend((1..m).map(|_| Laurent2::q(1)));
        HeckeAlgebra { group, params }
    }

    pub fn type_d(m: usize) -> Self {
        let group = SignedPermGroup::new(CoxType::D, m);
        let params = (0..m).map(|_| Laurent2::q(1)).collect();
        HeckeAlgebra { group, params }
    }

    pub fn one(&self) -> HeckeElement {
        BTreeMap::from([(0, Laurent2::one())])
    }

    pub fn gen(&self, s: usize) -> HeckeElement {
        BTreeMap::from([(self.group.mul_gen(0, s), Laurent2::one())])
    }

    /// `H_s^-1 = H_s + (par - par^-1)`.
    pub fn gen_inv(&self, s: usize) -> HeckeElement {
        let par = &self.params[s];
        let mut x = self.gen(s);
        add_into(&mut x, 0, &(par - &par.unit_inverse().unwrap()));
        x
    }

    pub fn mul_gen(&self, x: &HeckeElement, s: usize) -> HeckeElement {
        let par = &self.params[s];
        let shift = &par.unit_inverse().unwrap() - par;
        let mut out = HeckeElement::new();
        for (w, c) in x {
            let ws = self.group.mul_gen(*w, s);
            add_into(&mut out, ws, c);
            if self.group.length[ws] < self.group.length[*w] {
                add_into(&mut out, *w, &(c * &shift));
            }
        }
        out
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::new();
        for (w, c) in y {
            let mut t = x.clone();
            for s in &self.group.word[*w] {
                t = self.mul_gen(&t, *s);
            }
            for (v, d) in t {
                add_into(&mut out, v, &(&d * c));
            }
        }
        out
    }

    pub fn add(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = x.clone();
        for (w, c) in y {
            add_into(&mut out, *w, c);
        }
        out
    }

    pub fn scale(&self, x: &HeckeElement, c: &Laurent2) -> HeckeElement {
        x.iter()
            .map(|(w, d)| (*w, d * c))
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }

    /// Bar involution: coefficients barred, `H_w -> H_{s_1}^-1 ... H_{s_r}^-1`.
    pub fn bar(&self, x: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::new();
        for (w, c) in x {
            let mut t = self.one();
            for s in &self.group.word[*w] {
                t = self.mul(&t, &self.gen_inv(*s));
            }
            for (v, d) in t {
                add_into(&mut out, v, &(&d * &c.bar()));
            }
        }
        out
    }

    /// Coefficients specialized by `p = q^s`, acting through generator
    /// matrices. Right action: `mat(x y) = mat(y) mat(x)`.
    pub fn matrix(&self, x: &HeckeElement, gens: &[Operator], s: i32) -> Operator {
        let n = gens.first().map(|g| g.ncols()).unwrap_or(1);
        let mut out = Operator::zero(n, n);
        for (w, c) in x {
            let mut m = Operator::identity(n);
            for g in &self.group.word[*w] {
                m = &gens[*g] * &m;
            }
            out = &out + &m.scale(&c.specialize(s));
        }
        out
    }

    pub fn format(&self, x: &HeckeElement) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = x
            .iter()
            .map(|(w, c)| {
                let coeff: Vec<String> = c
                    .terms()
                    .iter()
                    .map(|((a, b), k)| format!("{}q^{}p^{}", k, a, b))
                    .collect();
                let word: Vec<String> = self.group.word[*w].iter().map(|s| format!("H{}", s)).collect();
                format!("({})[{}]", coeff.join("+"), word.join(""))
            })
            .collect();
        parts.join(" + ")
    }

    /// Quadratic and braid relations as identities in the algebra; returns the
    /// failing ones.
    pub fn check_relations(&self) -> Vec<String> {
        let gens = self.group.generators();
        let mut bad = Vec::new();
        for &s in &gens {
            let par = &self.params[s];
            let h = self.gen(s);
            let a = self.add(&h, &self.scale(&self.one(), &-&par.unit_inverse().unwrap()));
            let b = self.add(&h, &self.scale(&self.one(), par));
            if !self.mul(&a, &b).is_empty() {
                bad.push(format!("quadratic H{}", s));
            }
            for &t in &gens {
                if t <= s {
                    continue;
                }
                let mm = self.group.coxeter_m(s, t);
                let mut x = self.one();
                let mut y = self.one();
                for r in 0..mm {
                    x = self.mul_gen(&x, if r % 2 == 0 { s } else { t });
                    y = self.mul_gen(&y, if r % 2 == 0 { t } else { s });
                }
                if x != y {
                    bad.push(format!("braid H{} H{}", s, t));
                }
            }
        }
        bad
    }
}

/// `rho: H_D -> H^1_B`, `H_0 -> s_0 H_1 s_0`.
pub fn rho_embed(d: &HeckeAlgebra, b1: &HeckeAlgebra, x: &HeckeElement) -> HeckeElement {
    assert_eq!(d.group.ty, CoxType::D);
    let image = |s: usize| -> HeckeElement {
        if s == 0 {
            b1.mul(&b1.mul(&b1.gen(0), &b1.gen(1)), &b1.gen(0))
        } else {
            b1.gen(s)
        }
    };
    let mut out = HeckeElement::new();
    for (w, c) in x {
        let mut t = b1.one();
        for s in &d.group.word[*w] {
            t = b1.mul(&t, &image(*s));
        }
        out = b1.add(&out, &b1.scale(&t, c));
    }
    out
}

/// How a Hecke algebra acts on a pure tensor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `H^1_B` on `V^m`, generator 0 is `s_0`.
    B1,
    /// `H_C = H^q_B` on `W^n`, generator 0 is `H_0^q`.
    C,
    /// `H_D` on `V^m` through `rho`, generator 0 is `H_0`.
    D,
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "b1" => Ok(Flavor::B1),
            "c" => Ok(Flavor::C),
            "d" => Ok(Flavor::D),
            _ => Err(format!("unknown flavor {}", s)),
        }
    }
}

impl Flavor {
    pub fn algebra(self, m: usize) -> HeckeAlgebra {
        match self {
            Flavor::B1 => HeckeAlgebra::type_b(m, Laurent2::one()),
            Flavor::C => HeckeAlgebra::type_b(m, Laurent2::q(1)),
            Flavor::D => HeckeAlgebra::type_d(m),
        }
    }

    pub fn act(self, f: &[i32], s: usize) -> LetterWord {
        match (self, s) {
            (Flavor::D, 0) => act_s0d(f),
            (_, 0) => act_s0(f),
            (_, j) => act_sj(f, j),
        }
    }

    pub fn is_antidominant(self, f: &[i32]) -> bool {
        match self {
            Flavor::D => is_d_antidominant(f),
            Flavor::B1 => is_c_antidominant(f),
            Flavor::C => is_w_antidominant(f),
        }
    }
}

fn from_columns(space: &FockSpace, col: impl Fn(&[i32]) -> Vec<(LetterWord, LaurentPoly)>) -> Operator {
    let cols = space
        .words()
        .iter()
        .map(|f| {
            col(f)
                .into_iter()
                .map(|(g, c)| (space.index_of(&g).unwrap(), c))
                .collect()
        })
        .collect();
    Operator::from_cols(space.dim(), cols)
}

/// `H_a` (a >= 1) on `V^m` (`dual = false`) or `W^n` (`dual = true`).
pub fn h_matrix(space: &FockSpace, a: usize, dual: bool) -> Operator {
    let qi = LaurentPoly::q_pow(-1);
    let d = -q_minus_qinv();
    from_columns(space, |f| {
        let (x, y) = (f[a - 1], f[a]);
        let fs = act_sj(f, a);
        let plain = if dual { x > y } else { x < y };
        if x == y {
            vec![(f.to_vec(), qi.clone())]
        } else if plain {
            vec![(fs, LaurentPoly::one())]
        } else {
            vec![(fs, LaurentPoly::one()), (f.to_vec(), d.clone())]
        }
    })
}

pub fn s0_matrix(space: &FockSpace) -> Operator {
    from_columns(space, |f| vec![(act_s0(f), LaurentPoly::one())])
}

pub fn h0d_matrix(space: &FockSpace) -> Operator {
    let qi = LaurentPoly::q_pow(-1);
    let d = -q_minus_qinv();
    from_columns(space, |f| {
        let (x, y) = (-f[0], f[1]);
        let g = act_s0d(f);
        match x.cmp(&y) {
            std::cmp::Ordering::Less => vec![(g, LaurentPoly::one())],
            std::cmp::Ordering::Greater => vec![(g, LaurentPoly::one()), (f.to_vec(), d.clone())],
            std::cmp::Ordering::Equal => vec![(f.to_vec(), qi.clone())],
        }
    })
}

pub fn h0q_matrix(space: &FockSpace) -> Operator {
    let qi = LaurentPoly::q_pow(-1);
    let d = -q_minus_qinv();
    from_columns(space, |f| {
        let g = act_s0(f);
        match f[0].cmp(&0) {
            std::cmp::Ordering::Less => vec![(g, LaurentPoly::one())],
            std::cmp::Ordering::Greater => vec![(g, LaurentPoly::one()), (f.to_vec(), d.clone())],
            std::cmp::Ordering::Equal => vec![(f.to_vec(), qi.clone())],
        }
    })
}

/// Generator matrices, index 0 first, for a flavor on a pure space.
pub fn gen_matrices(space: &FockSpace, flavor: Flavor) -> Result<Vec<Operator>, HeckeError> {
    let bits = space.b().bits();
    let ok = match flavor {
        Flavor::B1 | Flavor::D => bits.iter().all(|x| *x == 0),
        Flavor::C => bits.iter().all(|x| *x == 1) && space.profile().family() == Family::Even,
    };
    if !ok {
        return Err(HeckeError::Domain(flavor, space.shape_label()));
    }
    Ok(gen_matrices_unchecked(space, flavor))
}

/// As `gen_matrices`, without the family check (used for negative controls).
pub fn gen_matrices_unchecked(space: &FockSpace, flavor: Flavor) -> Vec<Operator> {
    let m = space.len();
    let dual = flavor == Flavor::C;
    let mut out = Vec::new();
    match flavor {
        Flavor::B1 => out.push(s0_matrix(space)),
        Flavor::C => out.push(h0q_matrix(space)),
        Flavor::D if m >= 2 => out.push(h0d_matrix(space)),
        // W_{D_1} is trivial: no generators at all
        Flavor::D => return out,
    }
    for a in 1..m {
        out.push(h_matrix(space, a, dual));
    }
    out
}

/// Inverse of a generator matrix from its quadratic relation.
pub fn gen_inverse(h: &Operator, flavor: Flavor, s: usize) -> Operator {
    if flavor == Flavor::B1 && s == 0 {
        return h.clone();
    }
    h + &Operator::identity(h.ncols()).scale(&q_minus_qinv())
}

/// Hecke-side bar involution on a pure space: the anti-linear map fixing
/// every anti-dominant `M_f` with `bar(x H) = bar(x) bar(H)`. Column `f`
/// holds `bar(M_f)`. Also returns each word's distance from its orbit's
/// anti-dominant word.
pub fn perm_bar(space: &FockSpace, flavor: Flavor) -> Result<(Operator, Vec<usize>), HeckeError> {
    let gens = gen_matrices(space, flavor)?;
    perm_bar_with(space, flavor, &gens)
}

fn perm_bar_with(space: &FockSpace, flavor: Flavor, gens: &[Operator]) -> Result<(Operator, Vec<usize>), HeckeError> {
    let n = space.dim();
    let inv: Vec<Operator> = gens
        .iter()
        .enumerate()
        .map(|(s, h)| gen_inverse(h, flavor, s))
        .collect();
    let mut cols: Vec<Option<BTreeMap<usize, LaurentPoly>>> = vec![None; n];
    let mut dist = vec![usize::MAX; n];
    for start in 0..n {
        if !flavor.is_antidominant(space.word(start)) {
            continue;
        }
        if cols[start].is_some() {
            return Err(HeckeError::Orbit(crate::weights::format_word(space.word(start))));
        }
        cols[start] = Some(space.basis_vector(start));
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for s in 0..gens.len() {
                let h = space.index_of(&flavor.act(space.word(g), s)).unwrap();
                if h == g {
                    continue;
                }
                if dist[h] != usize::MAX {
                    continue;
                }
                let eg = space.basis_vector(g);
                let eh = space.basis_vector(h);
                let bg = cols[g].clone().unwrap();
                let bh = if gens[s].apply(&eg) == eh {
                    inv[s].apply(&bg)
                } else if inv[s].apply(&eg) == eh {
                    gens[s].apply(&bg)
                } else {
                    unreachable!("generator moves a monomial to a monomial up to a correction")
                };
                cols[h] = Some(bh);
                dist[h] = dist[g] + 1;
                queue.push_back(h);
            }
        }
    }
    let cols = cols
        .into_iter()
        .map(|c| c.expect("every word lies in an orbit with an anti-dominant word"))
        .collect();
    Ok((Operator::from_cols(n, cols), dist))
}

/// Failures of the defining relations for the generator matrices.
pub fn check_matrix_relations(space: &FockSpace, flavor: Flavor) -> Result<Vec<String>, HeckeError> {
    let gens = gen_matrices(space, flavor)?;
    let alg = flavor.algebra(space.len());
    let n = space.dim();
    let id = Operator::identity(n);
    let mut bad = Vec::new();
    for (s, h) in gens.iter().enumerate() {
        let par = alg.params[s].specialize(1);
        let pinv = par.unit_inverse().unwrap();
        if &(h - &id.scale(&pinv)) * &(h + &id.scale(&par)) != Operator::zero(n, n) {
            bad.push(format!("quadratic H{}", s));
        }
        for t in s + 1..gens.len() {
            let mm = alg.group.coxeter_m(s, t);
            let mut x = id.clone();
            let mut y = id.clone();
            for r in 0..mm {
                x = if r % 2 == 0 { &gens[s] * &x } else { &gens[t] * &x };
                y = if r % 2 == 0 { &gens[t] * &y } else { &gens[s] * &y };
            }
            if x != y {
                bad.push(format!("braid H{} H{}", s, t));
            }
        }
    }
    Ok(bad)
}
