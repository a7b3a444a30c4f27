//! The intertwiner `Upsilon`, the coideal bar involution `psi_i = Upsilon psi`,
//! the weight function `zeta` and the module isomorphism
//! `T = Upsilon zeta~ T_{w0}`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::exactalg::linsolve::{solve, Echelon, RatVec};
use crate::exactalg::RatFunc;
use crate::qgroup::{kron, psi_matrix, theta_matrix, w0_word, FockSpace, UAction};
use crate::qsp::{iota_parts, IAction};
use crate::weights::{format_word, parse_word, BSeq, RankProfile, ThetaWeight, Weight};
use crate::{LaurentPoly, Operator, RationalFunction};

#[derive(Debug, thiserror::Error)]
pub enum IntertwinerError {
    #[error("no solution for the intertwiner piece at weight {0}")]
    Inconsistent(String),
    #[error("intertwiner piece at weight {0} has non-polynomial entries")]
    NotIntegral(String),
    #[error("zeta has no anchor for weights of total {0}")]
    NoAnchor(i64),
    #[error("cache: {0}")]
    Cache(String),
}

/// `sum_a c_a * (-a)`; every simple root raises it by 2.
pub fn weight_potential(w: &Weight) -> i64 {
    w.coords().iter().map(|(a, c)| -(*a as i64) * c).sum()
}

/// Basis indices ordered so that `Upsilon`, and every operator built from
/// `U^-` pieces, is upper unitriangular.
pub fn potential_order(space: &FockSpace) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..space.dim()).collect();
    idx.sort_by_key(|i| (weight_potential(&space.weight(*i)), *i));
    idx
}

/// `Upsilon` on a whole Fock space, graded by `mu` in the positive root cone.
#[derive(Clone, Debug)]
pub struct Upsilon {
    pub space: FockSpace,
    pub pieces: BTreeMap<Weight, Operator>,
}

impl Upsilon {
    pub fn total(&self) -> Operator {
        let n = self.space.dim();
        self.pieces.values().fold(Operator::zero(n, n), |acc, p| &acc + p)
    }

    /// Pieces whose weight is not `theta`-fixed.
    pub fn unfixed_support(&self) -> Vec<Weight> {
        self.pieces.keys().filter(|m| m.theta() != **m).cloned().collect()
    }

    pub fn inverse(&self) -> Operator {
        self.total()
            .unitriangular_inverse(&potential_order(&self.space))
            .expect("Upsilon is unitriangular")
    }

    /// Restriction to one coideal-weight block.
    pub fn block(&self, tw: &ThetaWeight) -> UpsilonBlock {
        let idx: Vec<usize> = (0..self.space.dim())
            .filter(|i| &self.space.theta_weight(*i) == tw)
            .collect();
        let pieces = self
            .pieces
            .iter()
            .map(|(mu, x)| (mu.clone(), x.restrict(&idx, &idx)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        UpsilonBlock {
            k: self.space.profile().k(),
            b: self.space.b().clone(),
            block: tw.clone(),
            words: idx.iter().map(|i| self.space.word(*i).clone()).collect(),
            pieces,
        }
    }

    /// Height bound `max ht(lambda - lambda')` over weights of the space.
    pub fn height_bound(space: &FockSpace) -> i64 {
        height_bound(space)
    }
}

/// `Upsilon` restricted to one block, indexed by the block's words.
#[derive(Clone, Debug, PartialEq)]
pub struct UpsilonBlock {
    pub k: u32,
    pub b: BSeq,
    pub block: ThetaWeight,
    pub words: Vec<Vec<i32>>,
    pub pieces: BTreeMap<Weight, Operator>,
}

pub fn height_bound(space: &FockSpace) -> i64 {
    let p = space.profile();
    let ws: BTreeSet<Weight> = (0..space.dim()).map(|i| space.weight(i)).collect();
    let mut best = 0;
    for a in &ws {
        for b in &ws {
            if let Some(h) = (a - b).height(p) {
                if (a - b).in_positive_cone(p) {
                    best = best.max(h);
                }
            }
        }
    }
    best
}

fn flatten(x: &Operator) -> RatVec<crate::Int> {
    let n = x.nrows();
    x.entries()
        .map(|(i, j, v)| (j * n + i, RatFunc::from_laurent(v.clone())))
        .collect()
}

/// Images of `U^-_{-mu}` on the space: a basis of the span of `F`-monomials
/// of weight `-mu`, for every `mu` that is a weight difference.
fn f_spans(u: &UAction, mus: &[Weight]) -> BTreeMap<Weight, Vec<Operator>> {
    let profile = *u.space.profile();
    let mut spans: BTreeMap<Weight, Vec<Operator>> = BTreeMap::new();
    spans.insert(Weight::zero(), vec![u.identity()]);
    for mu in mus {
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        for j in profile.index_set() {
            let nu = mu - &Weight::alpha(j);
            let Some(prev) = spans.get(&nu) else { continue };
            for b in prev.clone() {
                let c = &u.f[&j] * &b;
                if !c.is_zero() && ech.insert(&flatten(&c)) {
                    basis.push(c);
                }
            }
        }
        spans.insert(mu.clone(), basis);
    }
    spans
}

/// Solves for `Upsilon` height by height from the intertwining property
/// `iota(g) Upsilon = Upsilon psi(iota(g))` for `g = e_i, f_i, t`.
///
/// Weights `mu` range over all positive-cone weight differences, so the
/// vanishing of pieces off `theta`-fixed weights is an outcome, not an input.
pub fn solve_upsilon(u: &UAction) -> Result<Upsilon, IntertwinerError> {
    let space = &u.space;
    let profile = *space.profile();
    let n = space.dim();
    let ws: BTreeSet<Weight> = (0..n).map(|i| space.weight(i)).collect();
    let mut mus: Vec<Weight> = Vec::new();
    for a in &ws {
        for b in &ws {
            let d = a - b;
            if !d.is_zero() && d.in_positive_cone(&profile) && !mus.contains(&d) {
                mus.push(d);
            }
        }
    }
    mus.sort_by_key(|m| (m.height(&profile).unwrap(), m.clone()));
    let spans = f_spans(u, &mus);
    let parts = iota_parts(u);
    let mut solved: BTreeMap<Weight, Operator> = BTreeMap::new();
    solved.insert(Weight::zero(), u.identity());
    for mu in &mus {
        let basis = &spans[mu];
        let mut rhs_all = Vec::new();
        for p in &parts {
            let nu = &(mu - &Weight::alpha(p.j)) - &Weight::alpha(p.jp);
            let rhs = match solved.get(&nu) {
                Some(x) => &(x * &p.nbar) - &(&p.n * x),
                None => Operator::zero(n, n),
            };
            rhs_all.push((p.j, rhs));
        }
        if basis.is_empty() {
            if rhs_all.iter().any(|(_, r)| !r.is_zero()) {
                return Err(IntertwinerError::Inconsistent(mu.to_pretty()));
            }
            continue;
        }
        let d = basis.len();
        let mut rows: BTreeMap<(i32, usize, usize), (RatVec<crate::Int>, RationalFunction)> = BTreeMap::new();
        for (j, rhs) in &rhs_all {
            for (l, b) in basis.iter().enumerate() {
                let c = &(&u.e[j] * b) - &(b * &u.e[j]);
                for (r, s, v) in c.entries() {
                    rows.entry((*j, r, s))
                        .or_insert_with(|| (RatVec::new(), RatFunc::zero()))
                        .0
                        .insert(l, RatFunc::from_laurent(v.clone()));
                }
            }
            for (r, s, v) in rhs.entries() {
                rows.entry((*j, r, s))
                    .or_insert_with(|| (RatVec::new(), RatFunc::zero()))
                    .1 = RatFunc::from_laurent(v.clone());
            }
        }
        let rows: Vec<_> = rows.into_values().collect();
        let (coef, _) = solve(&rows, d).ok_or_else(|| IntertwinerError::Inconsistent(mu.to_pretty()))?;
        let mut acc: BTreeMap<(usize, usize), RationalFunction> = BTreeMap::new();
        for (c, b) in coef.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (r, s, v) in b.entries() {
                let slot = acc.entry((r, s)).or_insert_with(RatFunc::zero);
                *slot = &*slot + &(c * &RatFunc::from_laurent(v.clone()));
            }
        }
        let mut x = Operator::zero(n, n);
        for ((r, s), v) in acc {
            let l = v
                .to_laurent()
                .ok_or_else(|| IntertwinerError::NotIntegral(mu.to_pretty()))?;
            if !l.is_zero() {
                x.set(r, s, l);
            }
        }
        // all solutions act alike; confirm this one by substitution
        for (j, rhs) in &rhs_all {
            if &(&(&u.e[j] * &x) - &(&x * &u.e[j])) != rhs {
                return Err(IntertwinerError::Inconsistent(mu.to_pretty()));
            }
        }
        if !x.is_zero() {
            solved.insert(mu.clone(), x);
        }
    }
    Ok(Upsilon {
        space: space.clone(),
        pieces: solved,
    })
}

/// Failures of `iota(psi_i g) Upsilon = Upsilon psi(iota g)` for all coideal
/// generators, including `k_i`.
pub fn check_star(ia: &IAction, ups: &Operator) -> Vec<String> {
    let u = &ia.u;
    let mut bad = Vec::new();
    for p in iota_parts(u) {
        let lhs = ia.gen(p.gen) * ups;
        let rhs = ups * &(&u.e[&p.j] + &p.nbar);
        if lhs != rhs {
            bad.push(format!("{:?}", p.gen));
        }
    }
    for i in u.space.profile().iota_index_set() {
        // psi_i(k_i) = k_i^-1 and psi(iota(k_i)) = K_i^-1 K_{-i}
        if &ia.kinv[&i] * ups != ups * &(&u.kinv[&i] * &u.k[&-i]) {
            bad.push(format!("K({})", i));
        }
    }
    bad
}

/// Matrix of `psi_i = Upsilon psi`; apply anti-linearly (bar the
/// coefficients first).
pub fn psi_i_matrix(ups: &Upsilon) -> Operator {
    &ups.total() * &psi_matrix(&ups.space)
}

/// `Upsilon` for a space, through the disk cache when one is given.
pub fn upsilon_cached(u: &UAction, cache: Option<&Path>) -> Result<Upsilon, IntertwinerError> {
    if let Some(dir) = cache {
        if let Some(x) = load_upsilon(&u.space, dir)? {
            return Ok(x);
        }
        let x = solve_upsilon(u)?;
        store_upsilon(&x, dir)?;
        return Ok(x);
    }
    solve_upsilon(u)
}

const CACHE_VERSION: u32 = 1;

/// On-disk and printed form of one block of `Upsilon`; entries index `words`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockFile {
    pub version: u32,
    pub k: u32,
    pub b: BSeq,
    pub block: ThetaWeight,
    pub words: Vec<String>,
    pub pieces: Vec<PieceFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceFile {
    pub mu: Weight,
    pub entries: Vec<(usize, usize, LaurentPoly)>,
}

impl UpsilonBlock {
    pub fn record(&self) -> BlockFile {
        BlockFile {
            version: CACHE_VERSION,
            k: self.k,
            b: self.b.clone(),
            block: self.block.clone(),
            words: self.words.iter().map(|w| format_word(w)).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|(mu, x)| PieceFile {
                    mu: mu.clone(),
                    entries: x.entries().map(|(i, j, v)| (i, j, v.clone())).collect(),
                })
                .collect(),
        }
    }
}

fn block_dir(space: &FockSpace, dir: &Path) -> PathBuf {
    dir.join("upsilon")
        .join(format!("k{}_b{}", space.profile().k(), space.b()))
}

fn cache_err<E: std::fmt::Display>(e: E) -> IntertwinerError {
    IntertwinerError::Cache(e.to_string())
}

pub fn store_upsilon(ups: &Upsilon, dir: &Path) -> Result<(), IntertwinerError> {
    let d = block_dir(&ups.space, dir);
    std::fs::create_dir_all(&d).map_err(cache_err)?;
    for tw in ups.space.theta_blocks().keys() {
        let file = ups.block(tw).record();
        let text = serde_json::to_string(&file).map_err(cache_err)?;
        let path = d.join(format!("{}.json", tw.key()));
        let tmp = d.join(format!("{}.json.tmp", tw.key()));
        std::fs::write(&tmp, text).map_err(cache_err)?;
        std::fs::rename(&tmp, &path).map_err(cache_err)?;
    }
    Ok(())
}

/// Loads every block of `space`; `None` if any block is missing or stale.
pub fn load_upsilon(space: &FockSpace, dir: &Path) -> Result<Option<Upsilon>, IntertwinerError> {
    let d = block_dir(space, dir);
    let n = space.dim();
    let mut pieces: BTreeMap<Weight, Operator> = BTreeMap::new();
    for tw in space.theta_blocks().keys() {
        let path = d.join(format!("{}.json", tw.key()));
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Ok(None);
        };
        let Ok(file) = serde_json::from_str::<BlockFile>(&text) else {
            return Ok(None);
        };
        if file.version != CACHE_VERSION || &file.block != tw || &file.b != space.b() {
            return Ok(None);
        }
        let mut idx = Vec::new();
        for w in &file.words {
            let f = parse_word(w).map_err(cache_err)?;
            idx.push(space.index_of(&f).ok_or_else(|| cache_err("word outside space"))?);
        }
        for p in file.pieces {
            let x = pieces.entry(p.mu).or_insert_with(|| Operator::zero(n, n));
            for (i, j, v) in p.entries {
                x.set(idx[i], idx[j], v);
            }
        }
    }
    Ok(Some(Upsilon {
        space: space.clone(),
        pieces,
    }))
}

/// A function on weights satisfying the `zeta` recurrences, fixed by one
/// anchor value per class of weights modulo the root lattice.
#[derive(Clone, Debug)]
pub struct Zeta {
    profile: RankProfile,
    anchors: BTreeMap<i64, (Weight, LaurentPoly)>,
}

impl Zeta {
    pub fn new(profile: RankProfile) -> Self {
        Zeta {
            profile,
            anchors: BTreeMap::new(),
        }
    }

    pub fn with_anchor(mut self, at: Weight, value: LaurentPoly) -> Self {
        self.anchors.insert(at.total(), (at, value));
        self
    }

    /// Normalized so that `zeta~ T_{w0}` swaps `v_a` and `v_{-a}`, and
    /// `T^-1` sends `w_{-s}` to `w_s` for the top letter `s`.
    pub fn natural(profile: RankProfile) -> Result<Self, IntertwinerError> {
        let s = profile.max_letter();
        let kk = profile.k() as i32;
        let z = Zeta::new(profile)
            .with_anchor(Weight::eps(s), LaurentPoly::signed_q_pow(kk % 2 == 1, -kk))
            .with_anchor(Weight::eps(s).scale(-1), LaurentPoly::one());
        let w = FockSpace::new(profile, BSeq::all_w(1));
        let ti = mc_t_inverse(&UAction::new(w.clone()), &solve_upsilon(&UAction::new(w.clone()))?, &z)?;
        let c = ti.get(w.index_of(&[s]).unwrap(), w.index_of(&[-s]).unwrap());
        Ok(z.with_anchor(Weight::eps(s).scale(-1), c))
    }

    /// `zeta(mu + alpha_j) / zeta(mu)`.
    pub fn step(&self, mu: &Weight, j: i32) -> LaurentPoly {
        let a = Weight::alpha(j);
        let abar = Weight::alpha(-j);
        let e = match j.cmp(&0) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => a.pairing(&(mu + &a)) - abar.pairing(mu),
            // the exponent that makes T commute with the coideal generators
            std::cmp::Ordering::Less => (&a - &abar).pairing(&(mu + &a)),
        };
        LaurentPoly::signed_q_pow(true, e as i32)
    }

    /// Walks from the anchor along simple roots in the given index order.
    pub fn value_along(&self, mu: &Weight, order: &[i32]) -> Result<LaurentPoly, IntertwinerError> {
        // classes without an explicit anchor are pinned to 1 at `t eps_s`
        let fallback = (
            Weight::eps(self.profile.max_letter()).scale(mu.total()),
            LaurentPoly::one(),
        );
        let (at, v0) = self.anchors.get(&mu.total()).unwrap_or(&fallback);
        let coords = (mu - at)
            .root_coords(&self.profile)
            .ok_or(IntertwinerError::NoAnchor(mu.total()))?;
        let mut cur = at.clone();
        let mut val = v0.clone();
        for j in order {
            let c = coords.get(j).copied().unwrap_or(0);
            for _ in 0..c.max(0) {
                val = &val * &self.step(&cur, *j);
                cur = &cur + &Weight::alpha(*j);
            }
            for _ in 0..(-c).max(0) {
                cur = &cur - &Weight::alpha(*j);
                val = &val * &self.step(&cur, *j).unit_inverse().unwrap();
            }
        }
        Ok(val)
    }

    pub fn value(&self, mu: &Weight) -> Result<LaurentPoly, IntertwinerError> {
        self.value_along(mu, &self.profile.index_set())
    }

    /// The diagonal operator `zeta~`.
    pub fn tilde(&self, space: &FockSpace) -> Result<Operator, IntertwinerError> {
        let d = (0..space.dim())
            .map(|i| self.value(&space.weight(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Operator::diag(d))
    }
}

/// Diagonal `z` with `Upsilon z T_{w0}` commuting with every coideal
/// generator, normalized by `z[0] = 1`. Independent of the recurrences; `None`
/// if no such diagonal exists or it is not unique.
pub fn solve_zeta_diagonal(u: &UAction, ups: &Upsilon) -> Option<Vec<LaurentPoly>> {
    let ia = IAction::from_u(u.clone());
    let w = w0_word(u.space.profile());
    let t = u.braid_word(&w);
    let ti = u.braid_word_inverse(&w);
    let (y, yi) = (ups.total(), ups.inverse());
    let n = u.dim();
    let mut rows = vec![(RatVec::from([(0, RatFunc::one())]), RatFunc::one())];
    for (_, g) in ia.generators() {
        // z (T g T^-1) = (Upsilon^-1 g Upsilon) z
        let a = &(&t * g) * &ti;
        let b = &(&yi * g) * &y;
        for r in 0..n {
            for c in 0..n {
                let (ar, br) = (a.get(r, c), b.get(r, c));
                let mut v = RatVec::new();
                if r == c {
                    let d = &ar - &br;
                    if !d.is_zero() {
                        v.insert(r, RatFunc::from_laurent(d));
                    }
                } else {
                    if !ar.is_zero() {
                        v.insert(r, RatFunc::from_laurent(ar));
                    }
                    if !br.is_zero() {
                        v.insert(c, RatFunc::from_laurent(-br));
                    }
                }
                if !v.is_empty() {
                    rows.push((v, RatFunc::zero()));
                }
            }
        }
    }
    let (x, unique) = solve(&rows, n)?;
    if !unique {
        return None;
    }
    x.iter().map(|v| v.to_laurent()).collect()
}

/// `T = Upsilon zeta~ T_{w0}`.
pub fn mc_t(u: &UAction, ups: &Upsilon, zeta: &Zeta) -> Result<Operator, IntertwinerError> {
    let t = u.braid_word(&w0_word(u.space.profile()));
    Ok(&(&ups.total() * &zeta.tilde(&u.space)?) * &t)
}

pub fn mc_t_inverse(u: &UAction, ups: &Upsilon, zeta: &Zeta) -> Result<Operator, IntertwinerError> {
    let ti = u.braid_word_inverse(&w0_word(u.space.profile()));
    let zi: Vec<LaurentPoly> = (0..u.dim())
        .map(|i| zeta.value(&u.space.weight(i)).map(|v| v.unit_inverse().unwrap()))
        .collect::<Result<_, _>>()?;
    Ok(&(&ti * &Operator::diag(zi)) * &ups.inverse())
}

/// `Theta q^{(wt, wt)} P` on a two-slot space; `P` swaps the slots. On
/// `V (x) V` it agrees with the inverse of the Hecke generator `H_1`.
pub fn r_matrix_candidate(space: &FockSpace) -> Operator {
    assert_eq!(space.len(), 2);
    let profile = *space.profile();
    let swapped = FockSpace::new(profile, space.b().suffix(1).concat(&space.b().prefix(1)));
    let th = theta_matrix(space, 1);
    let mut dp = Operator::zero(space.dim(), swapped.dim());
    for j in 0..swapped.dim() {
        let g = swapped.word(j);
        let f = vec![g[1], g[0]];
        let wa = crate::weights::wt(&[g[0]], &swapped.b().prefix(1));
        let wb = crate::weights::wt(&[g[1]], &swapped.b().suffix(1));
        let e = wa.pairing(&wb) as i32;
        dp.set(space.index_of(&f).unwrap(), j, LaurentPoly::q_pow(e));
    }
    &th * &dp
}

/// `A (x) id` on a space whose first slot carries `a`.
pub fn on_first_slot(a: &Operator, space: &FockSpace) -> Operator {
    let rest = space.dim() / a.ncols();
    kron(a, &Operator::identity(rest))
}
