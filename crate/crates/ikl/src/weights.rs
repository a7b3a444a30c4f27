//! Index sets, letters, weights and the partial orders on letter words.
//!
//! Letters and Dynkin indices are stored doubled so that half-integers are
//! plain `i32`s: the letter `3/2` is `3`, the letter `-1` is `-2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("rank parameter k must be at least 1, got {0}")]
    BadRank(u32),
    #[error("letter {0} is not in the index range for k = {1}")]
    LetterOutOfRange(String, u32),
    #[error("cannot parse letter {0:?}")]
    BadLetter(String),
    #[error("cannot parse b-sequence {0:?}; expected a string of 0 and 1")]
    BadBSeq(String),
    #[error("word length {0} does not match b-sequence length {1}")]
    LengthMismatch(usize, usize),
}

/// Which coideal subalgebra the rank parameter selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `k = 2r`: integer letters including 0, no extra generator.
    Even,
    /// `k = 2r + 1`: half-integer letters, extra generator `t`.
    Odd,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Even => "even",
            Family::Odd => "odd",
        })
    }
}

/// The rank parameter `k`: the quantum group is `U_q(sl_{k+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RankProfile {
    k: u32,
}

impl RankProfile {
    pub fn new(k: u32) -> Result<Self, WeightError> {
        if k == 0 {
            return Err(WeightError::BadRank(k));
        }
        Ok(RankProfile { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn family(&self) -> Family {
        if self.k.is_multiple_of(2) {
            Family::Even
        } else {
            Family::Odd
        }
    }

    /// `r` with `k = 2r` or `k = 2r + 1`.
    pub fn r(&self) -> u32 {
        self.k / 2
    }

    /// Doubled letters, ascending: `-k, -k+2, ..., k`.
    pub fn letters(&self) -> Vec<i32> {
        let k = self.k as i32;
        (0..=k).map(|j| -k + 2 * j).collect()
    }

    /// Doubled Dynkin indices, ascending: `-(k-1), ..., k-1`.
    pub fn index_set(&self) -> Vec<i32> {
        let k = self.k as i32;
        (0..k).map(|j| -(k - 1) + 2 * j).collect()
    }

    /// Doubled indices of the coideal generators `e_i, f_i` (all positive).
    pub fn iota_index_set(&self) -> Vec<i32> {
        self.index_set().into_iter().filter(|i| *i > 0).collect()
    }

    pub fn max_letter(&self) -> i32 {
        self.k as i32
    }

    pub fn has_letter(&self, a: i32) -> bool {
        a.abs() <= self.k as i32 && (a - self.k as i32) % 2 == 0
    }

    pub fn check_word(&self, f: &[i32]) -> Result<(), WeightError> {
        for &a in f {
            if !self.has_letter(a) {
                return Err(WeightError::LetterOutOfRange(format_letter(a), self.k));
            }
        }
        Ok(())
    }
}

/// Parses `"3/2"`, `"-1/2"`, `"2"` into a doubled letter.
pub fn parse_letter(s: &str) -> Result<i32, WeightError> {
    let t = s.trim();
    let bad = || WeightError::BadLetter(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: i32 = n.trim().parse().map_err(|_| bad())?;
        let d: i32 = d.trim().parse().map_err(|_| bad())?;
        match d {
            2 if n % 2 != 0 => Ok(n),
            1 => Ok(2 * n),
            _ => Err(bad()),
        }
    } else {
        t.parse::<i32>().map(|n| 2 * n).map_err(|_| bad())
    }
}

pub fn format_letter(a: i32) -> String {
    if a % 2 == 0 {
        (a / 2).to_string()
    } else {
        format!("{}/2", a)
    }
}

/// Comma separated letters, e.g. `"3/2,-1/2"`.
pub fn parse_word(s: &str) -> Result<LetterWord, WeightError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_letter).collect()
}

pub fn format_word(f: &[i32]) -> String {
    f.iter().map(|a| format_letter(*a)).collect::<Vec<_>>().join(",")
}

/// A word of doubled letters; entry `i` is the letter in tensor slot `i`.
pub type LetterWord = Vec<i32>;

/// Slot types: `0` for the natural module, `1` for its dual.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BSeq(Vec<u8>);

impl BSeq {
    pub fn parse(s: &str) -> Result<Self, WeightError> {
        let mut v = Vec::with_capacity(s.len());
        for ch in s.trim().chars() {
            match ch {
                '0' => v.push(0),
                '1' => v.push(1),
                _ => return Err(WeightError::BadBSeq(s.to_string())),
            }
        }
        Ok(BSeq(v))
    }

    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|b| *b <= 1));
        BSeq(bits)
    }

    pub fn all_v(m: usize) -> Self {
        BSeq(vec![0; m])
    }

    pub fn all_w(n: usize) -> Self {
        BSeq(vec![1; n])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn m(&self) -> usize {
        self.0.iter().filter(|b| **b == 0).count()
    }

    pub fn n(&self) -> usize {
        self.0.iter().filter(|b| **b == 1).count()
    }

    pub fn prefix(&self, j: usize) -> BSeq {
        BSeq(self.0[..j].to_vec())
    }

    pub fn suffix(&self, j: usize) -> BSeq {
        BSeq(self.0[j..].to_vec())
    }

    pub fn concat(&self, other: &BSeq) -> BSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BSeq(v)
    }

    /// `(-1)^{b_i}`.
    pub fn sign(&self, i: usize) -> i64 {
        if self.0[i] == 0 {
            1
        } else {
            -1
        }
    }

    /// Every sequence of length `len`, in lexicographic order.
    pub fn all_of_len(len: usize) -> Vec<BSeq> {
        (0..1usize << len)
            .map(|x| BSeq((0..len).map(|i| ((x >> (len - 1 - i)) & 1) as u8).collect()))
            .collect()
    }
}

impl fmt::Display for BSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl Serialize for BSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BSeq::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Integral weight `sum c_a eps_a`, keyed by doubled letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BTreeMap<i32, i64>);

impl Weight {
    pub fn zero() -> Self {
        Weight(BTreeMap::new())
    }

    pub fn eps(a: i32) -> Self {
        Weight(BTreeMap::from([(a, 1)]))
    }

    /// Simple root `alpha_i = eps_{i-1/2} - eps_{i+1/2}` (doubled index).
    pub fn alpha(i: i32) -> Self {
        Weight(BTreeMap::from([(i - 1, 1), (i + 1, -1)]))
    }

    pub fn coords(&self) -> &BTreeMap<i32, i64> {
        &self.0
    }

    pub fn coeff(&self, a: i32) -> i64 {
        self.0.get(&a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_coeff(&mut self, a: i32, c: i64) {
        let slot = self.0.entry(a).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.0.remove(&a);
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Weight::zero();
        }
        Weight(self.0.iter().map(|(a, x)| (*a, x * c)).collect())
    }

    /// `(eps_a, eps_b) = delta_ab`.
    pub fn pairing(&self, other: &Weight) -> i64 {
        self.0.iter().map(|(a, x)| x * other.coeff(*a)).sum()
    }

    /// The involution `eps_a -> -eps_{-a}`.
    pub fn theta(&self) -> Self {
        Weight(self.0.iter().map(|(a, x)| (-a, -x)).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    /// Coordinates in simple roots, keyed by doubled index, when `self` lies
    /// in the root lattice of `profile`.
    pub fn root_coords(&self, profile: &RankProfile) -> Option<BTreeMap<i32, i64>> {
        if self.total() != 0 || self.0.keys().any(|a| !profile.has_letter(*a)) {
            return None;
        }
        let mut out = BTreeMap::new();
        let mut partial = 0;
        for i in profile.index_set() {
            partial += self.coeff(i - 1);
            if partial != 0 {
                out.insert(i, partial);
            }
        }
        Some(out)
    }

    /// Membership in the cone spanned by simple roots.
    pub fn in_positive_cone(&self, profile: &RankProfile) -> bool {
        self.root_coords(profile).is_some_and(|c| c.values().all(|x| *x >= 0))
    }

    /// Height `sum c_i` for weights in the root lattice.
    pub fn height(&self, profile: &RankProfile) -> Option<i64> {
        self.root_coords(profile).map(|c| c.values().sum())
    }

    pub fn to_pretty(&self) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (a, x)) in self.0.iter().enumerate() {
            if idx > 0 {
                s.push_str(if *x < 0 { " - " } else { " + " });
            } else if *x < 0 {
                s.push('-');
            }
            if x.abs() != 1 {
                s.push_str(&x.abs().to_string());
            }
            s.push_str(&format!("e({})", format_letter(*a)));
        }
        s
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        let mut w = self.clone();
        for (a, x) in &o.0 {
            w.add_coeff(*a, *x);
        }
        w
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &(-o)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (a, x) in &self.0 {
            m.serialize_entry(&format_letter(*a), x)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, i64>::deserialize(d)?;
        let mut w = Weight::zero();
        for (k, x) in m {
            let a = parse_letter(&k).map_err(serde::de::Error::custom)?;
            w.add_coeff(a, x);
        }
        Ok(w)
    }
}

/// Weight of the coideal subalgebra: a weight modulo `theta`-fixed
/// directions, stored through the representative `mu - theta(mu)`.
///
/// Two weights have the same `ThetaWeight` exactly when they differ by a
/// `theta`-fixed weight, i.e. when every `k_i` acts on them by the same
/// scalar.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThetaWeight(Weight);

impl ThetaWeight {
    pub fn of(mu: &Weight) -> Self {
        ThetaWeight(mu - &mu.theta())
    }

    pub fn rep(&self) -> &Weight {
        &self.0
    }

    /// Short stable label usable in file names.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.0.coords().iter().map(|(a, x)| format!("{}:{}", a, x)).collect();
        if parts.is_empty() {
            "zero".to_string()
        } else {
            parts.join("_")
        }
    }
}

/// `sum (-1)^{b_i} eps_{f(i)}`.
pub fn wt(f: &[i32], b: &BSeq) -> Weight {
    let mut w = Weight::zero();
    for (i, a) in f.iter().enumerate() {
        w.add_coeff(*a, b.sign(i));
    }
    w
}

pub fn theta_wt(f: &[i32], b: &BSeq) -> ThetaWeight {
    ThetaWeight::of(&wt(f, b))
}

/// `g <=_b f`: equal coideal weights and `lambda_f - lambda_g` in the cone
/// spanned by `-delta_1` and `delta_i - delta_{i+1}`.
pub fn leq_b(g: &[i32], f: &[i32], b: &BSeq) -> bool {
    assert_eq!(g.len(), f.len());
    if theta_wt(g, b) != theta_wt(f, b) {
        return false;
    }
    suffix_condition(g, f, b)
}

/// Cone condition alone: every suffix sum of `(-1)^{b_i}(f_i - g_i)` is <= 0.
pub fn suffix_condition(g: &[i32], f: &[i32], b: &BSeq) -> bool {
    let mut acc = 0i64;
    for i in (0..f.len()).rev() {
        acc += b.sign(i) * (f[i] - g[i]) as i64;
        if acc > 0 {
            return false;
        }
    }
    true
}

pub fn leq_b_all_v(g: &[i32], f: &[i32]) -> bool {
    leq_b(g, f, &BSeq::all_v(f.len()))
}

/// Type-D order: `g <= f` and `g s0 <= f s0` in the type-B order.
pub fn leq_d(g: &[i32], f: &[i32]) -> bool {
    leq_b_all_v(g, f) && leq_b_all_v(&act_s0(g), &act_s0(f))
}

/// Coefficients `a_0, .., a_{m-1}` with
/// `lambda_f - lambda_g = a_0 (-eps_1 - eps_2) + sum a_i (eps_i - eps_{i+1})`
/// on a pure `V` space (`m >= 2`), or `None` if they are not integers.
pub fn d_cone_coeffs(g: &[i32], f: &[i32]) -> Option<Vec<i64>> {
    let m = f.len();
    assert!(m >= 2 && g.len() == m);
    let c: Vec<i64> = f.iter().zip(g).map(|(x, y)| (x - y) as i64).collect();
    // doubled throughout; a[i] for 1 <= i < m, a[m] = 0
    let mut a = vec![0i64; m + 1];
    for i in (3..=m).rev() {
        a[i - 1] = a[i] - c[i - 1];
    }
    let twice_a0 = a[2] - c[0] - c[1];
    if twice_a0 % 2 != 0 {
        return None;
    }
    a[0] = twice_a0 / 2;
    a[1] = c[0] + a[0];
    a.truncate(m);
    a.into_iter()
        .map(|x| if x % 2 == 0 { Some(x / 2) } else { None })
        .collect()
}

/// `f . s_0`: negate the first letter.
pub fn act_s0(f: &[i32]) -> LetterWord {
    let mut g = f.to_vec();
    if let Some(x) = g.first_mut() {
        *x = -*x;
    }
    g
}

/// `f . s_j` for `j >= 1`: swap slots `j` and `j+1` (1-based).
pub fn act_sj(f: &[i32], j: usize) -> LetterWord {
    let mut g = f.to_vec();
    g.swap(j - 1, j);
    g
}

/// `f . s_0^d = (-f_2, -f_1, f_3, ...)`.
pub fn act_s0d(f: &[i32]) -> LetterWord {
    let mut g = f.to_vec();
    let (a, b) = (g[0], g[1]);
    g[0] = -b;
    g[1] = -a;
    g
}

/// `|f_1| <= f_2 <= ... <= f_m`.
pub fn is_d_antidominant(f: &[i32]) -> bool {
    match f.len() {
        0 => true,
        1 => true,
        _ => f[0].abs() <= f[1] && f[1..].windows(2).all(|w| w[0] <= w[1]),
    }
}

/// `0 <= f_1 <= ... <= f_n`.
pub fn is_c_antidominant(f: &[i32]) -> bool {
    f.first().is_none_or(|x| *x >= 0) && f.windows(2).all(|w| w[0] <= w[1])
}

/// `0 >= f_1 >= ... >= f_n`: the orbit base for the Hecke action on `W`
/// slots, where every generator moves it without a correction term.
pub fn is_w_antidominant(f: &[i32]) -> bool {
    f.first().is_none_or(|x| *x <= 0) && f.windows(2).all(|w| w[0] >= w[1])
}

/// All words of length `len` over the letters of `profile`, lexicographic.
pub fn all_words(profile: &RankProfile, len: usize) -> Vec<LetterWord> {
    let letters = profile.letters();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for a in &letters {
                let mut v = w.clone();
                v.push(*a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `{g : g <=_b f}` in lexicographic order.
pub fn enumerate_block(f: &[i32], b: &BSeq, profile: &RankProfile) -> Vec<LetterWord> {
    all_words(profile, f.len())
        .into_iter()
        .filter(|g| leq_b(g, f, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_by_family() {
        let p = RankProfile::new(2).unwrap();
        assert_eq!(p.letters(), vec![-2, 0, 2]);
        assert_eq!(p.index_set(), vec![-1, 1]);
        assert_eq!(p.iota_index_set(), vec![1]);
        assert_eq!(p.family(), Family::Even);
        let p = RankProfile::new(3).unwrap();
        assert_eq!(p.letters(), vec![-3, -1, 1, 3]);
        assert_eq!(p.index_set(), vec![-2, 0, 2]);
        assert_eq!(p.iota_index_set(), vec![2]);
        assert_eq!(p.family(), Family::Odd);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_word("3/2,-1/2,1").unwrap(), vec![3, -1, 2]);
        assert_eq!(format_word(&[3, -1, 2]), "3/2,-1/2,1");
        assert!(parse_letter("2/4").is_err());
        assert!(parse_letter("x").is_err());
    }

    #[test]
    fn root_coords_of_alpha() {
        let p = RankProfile::new(3).unwrap();
        let mu = &Weight::alpha(0) + &Weight::alpha(2);
        let c = mu.root_coords(&p).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(mu.height(&p), Some(2));
    }

    #[test]
    fn theta_weight_examples() {
        let b = BSeq::parse("00").unwrap();
        let tw = theta_wt(&[1, 1], &b);
        assert_eq!(tw.rep().coords(), &BTreeMap::from([(-1, 2), (1, 2)]));
        // a word and its s0-image share a coideal weight
        assert_eq!(theta_wt(&[-2, 4], &b), theta_wt(&[2, 4], &b));
    }
}
