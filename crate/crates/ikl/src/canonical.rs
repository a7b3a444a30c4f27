//! Bar matrices on blocks, the Lusztig-lemma solver, ı-canonical and dual
//! ı-canonical bases, and comparison with the Hecke-side bases.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hecke::{perm_bar, Flavor, HeckeError};
use crate::intertwiner::{psi_i_matrix, upsilon_cached, IntertwinerError};
use crate::qgroup::{FockSpace, UAction};
use crate::weights::{format_word, leq_b, BSeq, LetterWord, RankProfile, ThetaWeight};
use crate::{LaurentPoly, Operator};

#[derive(Debug, thiserror::Error)]
pub enum CanonicalError {
    #[error("bar matrix is not unitriangular for the given order at ({0}, {1})")]
    NotTriangular(usize, usize),
    #[error("bar matrix inconsistent: defect {0} at ({1}, {2}) is not anti-invariant")]
    BarMatrixInconsistent(String, usize, usize),
    #[error("bar matrix entry ({0}, {1}) is nonzero but the words are not comparable")]
    OrderViolation(String, String),
    #[error("word {0} is not in the space")]
    UnknownWord(String),
    #[error(transparent)]
    Intertwiner(#[from] IntertwinerError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Which cone off-diagonal entries are taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cone {
    /// `q Z[q]`: the canonical basis `T`.
    Pos,
    /// `q^-1 Z[q^-1]`: the dual canonical basis `L`.
    Neg,
}

/// Unique `T = I + (strictly triangular, entries in the cone)` with
/// `T = R bar(T)`. `order` lists indices from lower to higher; `R` must be
/// unitriangular along it and satisfy `R bar(R) = I`.
pub fn lusztig_solve(r: &Operator, order: &[usize], cone: Cone) -> Result<Operator, CanonicalError> {
    let n = r.ncols();
    let mut pos = vec![0usize; n];
    for (a, i) in order.iter().enumerate() {
        pos[*i] = a;
    }
    for (g, h, v) in r.entries() {
        if pos[g] > pos[h] || (g == h && !v.is_one()) {
            return Err(CanonicalError::NotTriangular(g, h));
        }
    }
    for h in 0..n {
        if r.get(h, h).is_zero() {
            return Err(CanonicalError::NotTriangular(h, h));
        }
    }
    let mut t = Operator::zero(n, n);
    // rows of R as lists, for the defect sums
    let mut rows: Vec<Vec<(usize, LaurentPoly)>> = vec![Vec::new(); n];
    for (g, h, v) in r.entries() {
        if g != h {
            rows[g].push((h, v.clone()));
        }
    }
    for (pf, &f) in order.iter().enumerate() {
        let mut col: std::collections::BTreeMap<usize, LaurentPoly> = Default::default();
        col.insert(f, LaurentPoly::one());
        for &g in order[..pf].iter().rev() {
            let mut delta = LaurentPoly::zero();
            for (h, v) in &rows[g] {
                if pos[*h] <= pf {
                    if let Some(x) = col.get(h) {
                        delta = &delta + &(v * &x.bar());
                    }
                }
            }
            if delta.is_zero() {
                continue;
            }
            if delta.bar() != -delta.clone() {
                return Err(CanonicalError::BarMatrixInconsistent(delta.to_pretty(), g, f));
            }
            let x = match cone {
                Cone::Pos => delta.positive_part(),
                Cone::Neg => delta.negative_part(),
            };
            if !x.is_zero() {
                col.insert(g, x);
            }
        }
        for (g, x) in col {
            t.set(g, f, x);
        }
    }
    Ok(t)
}

/// Anti-linear application `x -> R bar(x)` column by column.
pub fn bar_apply(r: &Operator, x: &Operator) -> Operator {
    r * &x.bar()
}

/// `sum_j S_j(f)` with `S_j` the signed suffix sums; strictly increasing
/// along `<=_b` within a block.
pub fn bruhat_key(f: &[i32], b: &BSeq) -> i64 {
    let mut acc = 0i64;
    let mut total = 0i64;
    for i in (0..f.len()).rev() {
        acc += b.sign(i) * f[i] as i64;
        total += acc;
    }
    -total
}

/// Canonical and dual canonical bases of one block.
#[derive(Clone, Debug)]
pub struct BlockBasis {
    pub k: u32,
    pub b: BSeq,
    pub block: ThetaWeight,
    /// Words of the block in the fixed linearization (lower first).
    pub words: Vec<LetterWord>,
    pub r: Operator,
    pub t: Operator,
    pub l: Operator,
    pub provenance: String,
}

impl BlockBasis {
    pub fn position(&self, f: &[i32]) -> Option<usize> {
        self.words.iter().position(|w| w == f)
    }

    pub fn table(&self, f: &[i32]) -> Option<KLTable> {
        let j = self.position(f)?;
        let entries = (0..self.words.len())
            .filter(|&i| {
                leq_b(&self.words[i], f, &self.b) || !self.t.get(i, j).is_zero() || !self.l.get(i, j).is_zero()
            })
            .map(|i| KLEntry {
                g: format_word(&self.words[i]),
                t_gf: self.t.get(i, j),
                l_gf: self.l.get(i, j),
            })
            .collect();
        Some(KLTable {
            provenance: self.provenance.clone(),
            k: self.k,
            b: self.b.clone(),
            block: self.block.key(),
            top: format_word(f),
            entries,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLEntry {
    pub g: String,
    pub t_gf: LaurentPoly,
    pub l_gf: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KLTable {
    pub provenance: String,
    pub k: u32,
    pub b: BSeq,
    pub block: String,
    pub top: String,
    pub entries: Vec<KLEntry>,
}

impl KLTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["g", "t_gf", "l_gf"]).unwrap();
        for e in &self.entries {
            w.write_record([e.g.as_str(), &e.t_gf.to_pretty(), &e.l_gf.to_pretty()])
                .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

fn linearize(words: &[LetterWord], b: &BSeq) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..words.len()).collect();
    idx.sort_by(|x, y| (bruhat_key(&words[*x], b), &words[*x]).cmp(&(bruhat_key(&words[*y], b), &words[*y])));
    idx
}

fn sub_matrix(m: &Operator, idx: &[usize]) -> Operator {
    m.restrict(idx, idx)
}

/// ı-canonical bases on every block of `T^b`.
pub fn ikl_blocks(profile: RankProfile, b: &BSeq, cache: Option<&Path>) -> Result<Vec<BlockBasis>, CanonicalError> {
    let space = FockSpace::new(profile, b.clone());
    let u = UAction::new(space.clone());
    let ups = upsilon_cached(&u, cache)?;
    let p = psi_i_matrix(&ups);
    let blocks: Vec<(ThetaWeight, Vec<usize>)> = space.theta_blocks().into_iter().collect();
    blocks
        .par_iter()
        .map(|(tw, members)| {
            // psi_i must not leave the block
            for &j in members {
                for i in p.col(j).keys() {
                    if &space.theta_weight(*i) != tw {
                        return Err(CanonicalError::OrderViolation(
                            format_word(space.word(*i)),
                            format_word(space.word(j)),
                        ));
                    }
                }
            }
            let words: Vec<LetterWord> = members.iter().map(|i| space.word(*i).clone()).collect();
            let ord = linearize(&words, b);
            let idx: Vec<usize> = ord.iter().map(|a| members[*a]).collect();
            let words: Vec<LetterWord> = idx.iter().map(|i| space.word(*i).clone()).collect();
            let r = sub_matrix(&p, &idx);
            for (g, h, _) in r.entries() {
                if g != h && !leq_b(&words[g], &words[h], b) {
                    return Err(CanonicalError::OrderViolation(
                        format_word(&words[g]),
                        format_word(&words[h]),
                    ));
                }
            }
            let order: Vec<usize> = (0..words.len()).collect();
            let t = lusztig_solve(&r, &order, Cone::Pos)?;
            let l = lusztig_solve(&r, &order, Cone::Neg)?;
            Ok(BlockBasis {
                k: profile.k(),
                b: b.clone(),
                block: tw.clone(),
                words,
                r,
                t,
                l,
                provenance: "qsp-pipeline".to_string(),
            })
        })
        .collect()
}

/// Block of `f` and its table.
pub fn ikl_table(f: &[i32], b: &BSeq, profile: RankProfile, cache: Option<&Path>) -> Result<KLTable, CanonicalError> {
    let blocks = ikl_blocks(profile, b, cache)?;
    blocks
        .iter()
        .find_map(|blk| blk.table(f))
        .ok_or_else(|| CanonicalError::UnknownWord(format_word(f)))
}

/// Hecke-side canonical bases on a pure space, grouped by the same blocks
/// and linearization as `ikl_blocks` so that matrices compare entrywise.
pub fn hecke_blocks(profile: RankProfile, b: &BSeq, flavor: Flavor) -> Result<Vec<BlockBasis>, CanonicalError> {
    let space = FockSpace::new(profile, b.clone());
    let (bar, dist) = perm_bar(&space, flavor)?;
    let blocks: Vec<(ThetaWeight, Vec<usize>)> = space.theta_blocks().into_iter().collect();
    blocks
        .par_iter()
        .map(|(tw, members)| {
            let words: Vec<LetterWord> = members.iter().map(|i| space.word(*i).clone()).collect();
            let ord = linearize(&words, b);
            let idx: Vec<usize> = ord.iter().map(|a| members[*a]).collect();
            let words: Vec<LetterWord> = idx.iter().map(|i| space.word(*i).clone()).collect();
            let r = sub_matrix(&bar, &idx);
            // the Hecke bar matrix is triangular for the distance from the
            // anti-dominant word
            let mut order: Vec<usize> = (0..words.len()).collect();
            order.sort_by_key(|a| (dist[idx[*a]], *a));
            let t = lusztig_solve(&r, &order, Cone::Pos)?;
            let l = lusztig_solve(&r, &order, Cone::Neg)?;
            Ok(BlockBasis {
                k: profile.k(),
                b: b.clone(),
                block: tw.clone(),
                words,
                r,
                t,
                l,
                provenance: "hecke-oracle".to_string(),
            })
        })
        .collect()
}

/// Table of `f` from the Hecke side.
pub fn kl_basis_hecke(f: &[i32], b: &BSeq, profile: RankProfile, flavor: Flavor) -> Result<KLTable, CanonicalError> {
    hecke_blocks(profile, b, flavor)?
        .iter()
        .find_map(|blk| blk.table(f))
        .ok_or_else(|| CanonicalError::UnknownWord(format_word(f)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub k: u32,
    pub b: BSeq,
    pub flavor: Flavor,
    pub blocks: usize,
    pub equal: bool,
    pub mismatches: Vec<String>,
}

/// Entrywise comparison of both pipelines on every block of a pure space.
pub fn compare_with_oracle(
    profile: RankProfile,
    b: &BSeq,
    flavor: Flavor,
    cache: Option<&Path>,
) -> Result<ComparisonReport, CanonicalError> {
    let mine = ikl_blocks(profile, b, cache)?;
    let theirs = hecke_blocks(profile, b, flavor)?;
    let mut mismatches = Vec::new();
    for (x, y) in mine.iter().zip(&theirs) {
        assert_eq!(x.words, y.words);
        for (name, a, c) in [("R", &x.r, &y.r), ("T", &x.t, &y.t), ("L", &x.l, &y.l)] {
            if a != c {
                mismatches.push(format!("{} differs on block {}", name, x.block.key()));
            }
        }
    }
    Ok(ComparisonReport {
        k: profile.k(),
        b: b.clone(),
        flavor,
        blocks: mine.len(),
        equal: mismatches.is_empty(),
        mismatches,
    })
}

/// Entries of `T` outside `N[q]` or of `L` outside `q^-1 Z[q^-1]`.
pub fn positivity_violations(blk: &BlockBasis) -> Vec<String> {
    let mut bad = Vec::new();
    for (g, f, v) in blk.t.entries() {
        if g != f && !(v.in_q_zq() && v.has_nonneg_coeffs()) {
            bad.push(format!(
                "t[{}, {}] = {}",
                format_word(&blk.words[g]),
                format_word(&blk.words[f]),
                v.to_pretty()
            ));
        }
    }
    for (g, f, v) in blk.l.entries() {
        if g != f && !v.in_qinv_zqinv() {
            bad.push(format!(
                "l[{}, {}] = {}",
                format_word(&blk.words[g]),
                format_word(&blk.words[f]),
                v.to_pretty()
            ));
        }
    }
    bad
}
