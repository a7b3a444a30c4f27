//! The osp(2m|2n) side: fundamental systems attached to b-sequences, Weyl
//! vectors, the bijection between letter words and weights, decoding of
//! tables at q = 1, and translation matrices at q = 1.
//!
//! Weights are stored doubled on the basis `eps_1..eps_m, epsbar_1..epsbar_n`
//! with `(eps_i|eps_i) = 1` and `(epsbar_j|epsbar_j) = -1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::KLTable;
use crate::qgroup::FockSpace;
use crate::qsp::{IAction, IGen};
use crate::weights::{format_letter, parse_word, theta_wt, wt, BSeq, Family, LetterWord, ThetaWeight, Weight};
use num_traits::ToPrimitive;

use crate::Int;

#[derive(Debug, thiserror::Error)]
pub enum OspError {
    #[error("weight has {0} coordinates but the b-sequence needs {1}")]
    Shape(usize, usize),
    #[error("coordinates mix integers and half-integers")]
    MixedParity,
    #[error("cannot parse word {0:?} in table")]
    BadWord(String),
    #[error("image of {0} leaves the predicted block")]
    BlockShift(String),
    #[error("coefficient {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("{0} is not defined in the {1} family")]
    Generator(String, Family),
}

/// A weight on `eps_1..eps_m, epsbar_1..epsbar_n`, doubled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OspWeight {
    pub m: usize,
    pub n: usize,
    pub coords2: Vec<i64>,
}

impl OspWeight {
    pub fn zero(m: usize, n: usize) -> Self {
        OspWeight {
            m,
            n,
            coords2: vec![0; m + n],
        }
    }

    /// `eps_i`, 1-based.
    pub fn eps(m: usize, n: usize, i: usize) -> Self {
        let mut w = Self::zero(m, n);
        w.coords2[i - 1] = 2;
        w
    }

    /// `epsbar_j`, 1-based.
    pub fn epsbar(m: usize, n: usize, j: usize) -> Self {
        let mut w = Self::zero(m, n);
        w.coords2[m + j - 1] = 2;
        w
    }

    pub fn from_halves(m: usize, n: usize, coords2: Vec<i64>) -> Result<Self, OspError> {
        if coords2.len() != m + n {
            return Err(OspError::Shape(coords2.len(), m + n));
        }
        let w = OspWeight { m, n, coords2 };
        w.family()?;
        Ok(w)
    }

    /// Even family for integral coordinates, odd for half-integral ones.
    pub fn family(&self) -> Result<Family, OspError> {
        let odd = self.coords2.iter().filter(|x| *x % 2 != 0).count();
        match odd {
            0 => Ok(Family::Even),
            x if x == self.coords2.len() => Ok(Family::Odd),
            _ => Err(OspError::MixedParity),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords2 = self.coords2.iter().zip(&o.coords2).map(|(a, b)| a + b).collect();
        OspWeight {
            m: self.m,
            n: self.n,
            coords2,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coords2 = self.coords2.iter().zip(&o.coords2).map(|(a, b)| a - b).collect();
        OspWeight {
            m: self.m,
            n: self.n,
            coords2,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        OspWeight {
            m: self.m,
            n: self.n,
            coords2: self.coords2.iter().map(|a| a * c).collect(),
        }
    }

    /// Four times the bilinear form.
    pub fn form4(&self, o: &Self) -> i64 {
        self.coords2
            .iter()
            .zip(&o.coords2)
            .enumerate()
            .map(|(p, (a, b))| if p < self.m { a * b } else { -a * b })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|x| *x == 0)
    }
}

impl fmt::Display for OspWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |xs: &[i64]| {
            xs.iter()
                .map(|x| format_letter(*x as i32))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "({}|{})",
            part(&self.coords2[..self.m]),
            part(&self.coords2[self.m..])
        )
    }
}

/// Coordinate slot of `delta_i = eps^{b_i}_i` (0-based `i`).
pub fn delta_slot(b: &BSeq, i: usize) -> usize {
    let bits = b.bits();
    let zeros = bits[..=i].iter().filter(|x| **x == 0).count();
    let ones = i + 1 - zeros;
    if bits[i] == 0 {
        zeros - 1
    } else {
        b.m() + ones - 1
    }
}

/// `delta_i` as a weight.
pub fn delta(b: &BSeq, i: usize) -> OspWeight {
    let mut w = OspWeight::zero(b.m(), b.n());
    w.coords2[delta_slot(b, i)] = 2;
    w
}

/// Coordinates on `delta_1..delta_N`, doubled.
pub fn delta_coords(b: &BSeq, w: &OspWeight) -> Vec<i64> {
    (0..b.len()).map(|i| w.coords2[delta_slot(b, i)]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `b_1 = 0`: first simple root `-delta_1 - delta_2`.
    D,
    /// `b_1 = 1`: first simple root `-2 delta_1`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalSystem {
    pub branch: Branch,
    pub roots: Vec<OspWeight>,
}

pub fn fundamental_system(b: &BSeq) -> FundamentalSystem {
    let big_n = b.len();
    let mut roots = Vec::new();
    let branch = if b.bits().first() == Some(&1) {
        Branch::C
    } else {
        Branch::D
    };
    match branch {
        Branch::C => roots.push(delta(b, 0).scale(-2)),
        Branch::D if big_n >= 2 => roots.push(delta(b, 0).add(&delta(b, 1)).scale(-1)),
        Branch::D => {}
    }
    for i in 0..big_n.saturating_sub(1) {
        roots.push(delta(b, i).sub(&delta(b, i + 1)));
    }
    FundamentalSystem { branch, roots }
}

/// Coefficients of `v` on the fundamental system, if integral. `v` must be
/// a root-lattice element.
pub fn simple_coeffs(b: &BSeq, v: &OspWeight) -> Option<Vec<i64>> {
    let c = delta_coords(b, v);
    let big_n = c.len();
    if big_n == 0 {
        return Some(vec![]);
    }
    // a[i] is the coefficient of delta_i - delta_{i+1} (1-based i), a[0] of the first root
    let mut a = vec![0i64; big_n + 1];
    for i in (2..=big_n).rev() {
        a[i - 1] = a[i] - c[i - 1];
    }
    let fs = fundamental_system(b);
    let half = |x: i64| if x % 2 == 0 { Some(x / 2) } else { None };
    let out: Vec<i64> = match fs.branch {
        Branch::C => {
            // c1 = -2 a0 + a1
            let a0 = half(a[1] - c[0])?;
            std::iter::once(a0).chain(a[1..big_n].iter().copied()).collect()
        }
        Branch::D if big_n == 1 => {
            return if c[0] == 0 { Some(vec![]) } else { None };
        }
        Branch::D => {
            // c1 = -a0 + a1 and c2 = -a0 - a1 + a2
            let a0 = half(a[2] - c[0] - c[1])?;
            let a1 = c[0] + a0;
            let mut v = vec![a0, a1];
            v.extend_from_slice(&a[2..big_n]);
            v
        }
    };
    // everything was doubled
    out.into_iter().map(half).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub weight: OspWeight,
    pub odd: bool,
}

/// All roots of `osp(2m|2n)`.
pub fn roots(m: usize, n: usize) -> Vec<Root> {
    let e = |i| OspWeight::eps(m, n, i);
    let eb = |j| OspWeight::epsbar(m, n, j);
    let mut out = Vec::new();
    let mut push = |w: OspWeight, odd: bool| {
        out.push(Root { weight: w.clone(), odd });
        out.push(Root {
            weight: w.scale(-1),
            odd,
        });
    };
    for i in 1..=m {
        for j in i + 1..=m {
            push(e(i).add(&e(j)), false);
            push(e(i).sub(&e(j)), false);
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            push(eb(k).add(&eb(l)), false);
            push(eb(k).sub(&eb(l)), false);
        }
        push(eb(k).scale(2), false);
    }
    for i in 1..=m {
        for k in 1..=n {
            push(e(i).add(&eb(k)), true);
            push(e(i).sub(&eb(k)), true);
        }
    }
    out
}

pub fn positive_roots(b: &BSeq) -> Vec<Root> {
    roots(b.m(), b.n())
        .into_iter()
        .filter(|r| {
            simple_coeffs(b, &r.weight)
                .expect("roots are integral")
                .iter()
                .all(|x| *x >= 0)
        })
        .collect()
}

/// `rho_b`: half the even positive roots minus half the odd ones.
pub fn rho_b(b: &BSeq) -> OspWeight {
    let mut two_rho = OspWeight::zero(b.m(), b.n());
    for r in positive_roots(b) {
        two_rho = if r.odd {
            two_rho.sub(&r.weight)
        } else {
            two_rho.add(&r.weight)
        };
    }
    // coords2 of rho is the plain sum
    OspWeight {
        m: b.m(),
        n: b.n(),
        coords2: two_rho.coords2.iter().map(|x| x / 2).collect(),
    }
}

/// `lambda^b_f = sum (-1)^{b_i} f(i) delta_i - rho_b`.
pub fn lambda_of(f: &[i32], b: &BSeq) -> OspWeight {
    let mut w = OspWeight::zero(b.m(), b.n());
    for (i, a) in f.iter().enumerate() {
        w.coords2[delta_slot(b, i)] += b.sign(i) * *a as i64;
    }
    w.sub(&rho_b(b))
}

/// `f(i) = (lambda + rho_b | delta_i)`.
pub fn word_of(lambda: &OspWeight, b: &BSeq) -> Result<LetterWord, OspError> {
    if lambda.coords2.len() != b.len() {
        return Err(OspError::Shape(lambda.coords2.len(), b.len()));
    }
    let shifted = lambda.add(&rho_b(b));
    Ok((0..b.len())
        .map(|i| (shifted.coords2[delta_slot(b, i)] * b.sign(i)) as i32)
        .collect())
}

fn small(x: Int) -> Result<i64, OspError> {
    x.to_i64().ok_or_else(|| OspError::Overflow(x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VermaCoeff {
    pub lambda: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub lambda: String,
    pub verma_coeffs: Vec<VermaCoeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub b: BSeq,
    pub k: u32,
    pub lambda_top: String,
    pub simples: Vec<CharacterEntry>,
    pub tiltings: Vec<CharacterEntry>,
}

/// Verma multiplicities of the simple and tilting objects labelled by the
/// table's top word, read off at `q = 1`.
pub fn grothendieck_decode(table: &KLTable) -> Result<CharacterReport, OspError> {
    let b = &table.b;
    let lam = |w: &str| -> Result<String, OspError> {
        let f = parse_word(w).map_err(|_| OspError::BadWord(w.to_string()))?;
        Ok(lambda_of(&f, b).to_string())
    };
    let mut simple = Vec::new();
    let mut tilting = Vec::new();
    for e in &table.entries {
        let l = small(e.l_gf.eval_one())?;
        let t = small(e.t_gf.eval_one())?;
        if l != 0 {
            simple.push(VermaCoeff {
                lambda: lam(&e.g)?,
                coeff: l,
            });
        }
        if t != 0 {
            tilting.push(VermaCoeff {
                lambda: lam(&e.g)?,
                coeff: t,
            });
        }
    }
    let top = lam(&table.top)?;
    Ok(CharacterReport {
        b: b.clone(),
        k: table.k,
        lambda_top: top.clone(),
        simples: vec![CharacterEntry {
            lambda: top.clone(),
            verma_coeffs: simple,
        }],
        tiltings: vec![CharacterEntry {
            lambda: top,
            verma_coeffs: tilting,
        }],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransGen {
    /// `e_i^(r)`
    E(i32, u32),
    /// `f_i^(r)`
    F(i32, u32),
    T,
}

impl TransGen {
    /// Block shift in the ambient weight lattice.
    pub fn shift(self) -> Weight {
        match self {
            TransGen::E(i, r) => Weight::alpha(i).scale(r as i64),
            TransGen::F(i, r) => Weight::alpha(i).scale(-(r as i64)),
            TransGen::T => Weight::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationMatrix {
    pub source_block: ThetaWeight,
    pub target_block: ThetaWeight,
    pub source: Vec<LetterWord>,
    pub target: Vec<LetterWord>,
    /// `entries[row][col]`, rows indexed by `target`.
    pub entries: Vec<Vec<i64>>,
}

/// The operator of `gen` at `q = 1` from one block to the block it must land
/// in. Fails if any image leaves that block.
pub fn translation_matrix_q1(ia: &IAction, gen: TransGen, block: &ThetaWeight) -> Result<TranslationMatrix, OspError> {
    let space: &FockSpace = ia.space();
    let fam = ia.family;
    let op = match gen {
        TransGen::E(i, r) => ia.divided(IGen::E(i), r),
        TransGen::F(i, r) => ia.divided(IGen::F(i), r),
        TransGen::T => match &ia.t {
            Some(t) => t.clone(),
            None => return Err(OspError::Generator("t".into(), fam)),
        },
    };
    let b = space.b();
    let src: Vec<usize> = (0..space.dim()).filter(|i| &space.theta_weight(*i) == block).collect();
    let target_block = match src.first() {
        Some(i) => ThetaWeight::of(&(&wt(space.word(*i), b) + &gen.shift())),
        None => block.clone(),
    };
    let tgt: Vec<usize> = (0..space.dim())
        .filter(|i| space.theta_weight(*i) == target_block)
        .collect();
    let mut entries = vec![vec![0i64; src.len()]; tgt.len()];
    for (c, j) in src.iter().enumerate() {
        for (i, v) in op.col(*j) {
            if theta_wt(space.word(*i), b) != target_block {
                return Err(OspError::BlockShift(crate::weights::format_word(space.word(*j))));
            }
            let r = tgt.binary_search(i).expect("target rows are sorted");
            entries[r][c] = small(v.eval_one())?;
        }
    }
    Ok(TranslationMatrix {
        source_block: block.clone(),
        target_block,
        source: src.iter().map(|i| space.word(*i).clone()).collect(),
        target: tgt.iter().map(|i| space.word(*i).clone()).collect(),
        entries,
    })
}
