//! Exact sparse Fock-space arithmetic for the N(N−1) bosonic modes of
//! SU(N) Schwinger construction.
//!
//! A mode is a pair (plet, color): plet i ∈ 1..N−1 selects one of the N−1
//! independent oscillator N-plets, color α ∈ 1..N the component within the
//! plet. Amplitudes are exact complex rationals in the monomial convention
//!
//! ```text
//!   a†|n⟩ = |n+1⟩,   a|n⟩ = n|n−1⟩,   ⟨n|n'⟩ = δ_{nn'} Π_m n_m!
//! ```
//!
//! so every ladder-operator sequence stays inside ℚ(i) and annihilation and
//! rank checks can be asserted with zero tolerance. The √-normalized matrix
//! elements are recovered through the weighted inner product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported group rank; mode indices are byte-sized and the
/// combinatorics are desk-scale well below this.
pub const MAX_RANK: u32 = 64;

/// Errors from Fock-space operations.
#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("group rank must be at least 2, got {0}")]
    InvalidRank(u32),
    #[error("mode (plet {plet}, color {color}) out of range for SU({n})")]
    InvalidMode { plet: u8, color: u8, n: u32 },
    #[error("operands belong to different groups: SU({0}) vs SU({1})")]
    RankMismatch(u32, u32),
    #[error("state is not an eigenstate of the plet-{0} number operator")]
    MixedSector(u8),
    #[error("operation requires a nonzero state")]
    ZeroState,
    #[error("malformed state encoding: {0}")]
    Parse(String),
}

/// Index of a single bosonic mode: which N-plet, which SU(N) color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex {
    /// Plet index i, 1-based, valid range 1..=N−1.
    pub plet: u8,
    /// Color index α, 1-based, valid range 1..=N.
    pub color: u8,
}

impl ModeIndex {
    pub fn new(plet: u8, color: u8) -> Self {
        Self { plet, color }
    }

    pub fn valid_for(&self, n: u32) -> bool {
        self.plet >= 1 && u32::from(self.plet) < n && self.color >= 1 && u32::from(self.color) <= n
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plet, self.color)
    }
}

/// Occupation-number configuration, stored sparsely.
///
/// The encoding is canonical: entries sorted by (plet, color), zero
/// occupations absent. Equality, ordering and hashing therefore agree with
/// equality of the underlying occupation function.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    occ: Vec<(u8, u8, u32)>,
}

impl FockState {
    /// The all-zero configuration.
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn occupation(&self, m: ModeIndex) -> u32 {
        match self.occ.binary_search_by(|&(p, c, _)| (p, c).cmp(&(m.plet, m.color))) {
            Ok(idx) => self.occ[idx].2,
            Err(_) => 0,
        }
    }

    /// Copy with the occupation of `m` set to `k` (entry removed when k = 0).
    pub fn with_occupation(&self, m: ModeIndex, k: u32) -> Self {
        let mut occ = self.occ.clone();
        match occ.binary_search_by(|&(p, c, _)| (p, c).cmp(&(m.plet, m.color))) {
            Ok(idx) => {
                if k == 0 {
                    occ.remove(idx);
                } else {
                    occ[idx].2 = k;
                }
            }
            Err(idx) => {
                if k > 0 {
                    occ.insert(idx, (m.plet, m.color, k));
                }
            }
        }
        Self { occ }
    }

    /// Iterator over occupied modes and their counts.
    pub fn modes(&self) -> impl Iterator<Item = (ModeIndex, u32)> + '_ {
        self.occ.iter().map(|&(p, c, k)| (ModeIndex::new(p, c), k))
    }

    /// Total quanta in plet i: n_i = Σ_α n(i,α).
    pub fn plet_total(&self, plet: u8) -> u64 {
        self.occ
            .iter()
            .filter(|&&(p, _, _)| p == plet)
            .map(|&(_, _, k)| u64::from(k))
            .sum()
    }

    /// Total quanta over all modes.
    pub fn total_quanta(&self) -> u64 {
        self.occ.iter().map(|&(_, _, k)| u64::from(k)).sum()
    }

    /// Π_m n_m!, the squared norm of the monomial basis ket.
    pub fn factorial_product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &(_, _, k) in &self.occ {
            acc *= factorial(u64::from(k));
        }
        acc
    }

    fn raw(&self) -> &[(u8, u8, u32)] {
        &self.occ
    }

    fn from_raw(mut occ: Vec<(u8, u8, u32)>) -> Result<Self, FockError> {
        occ.retain(|&(_, _, k)| k > 0);
        occ.sort_unstable_by_key(|e| (e.0, e.1));
        for w in occ.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(FockError::Parse(format!(
                    "duplicate mode ({},{}) in occupation list",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(Self { occ })
    }
}

/// n! as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// n! in double precision (exact up to n = 20, then rounded).
pub fn factorial_f64(n: u64) -> f64 {
    let mut acc = 1.0;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Exact complex-rational amplitude.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    re: BigRational,
    im: BigRational,
}

impl Amplitude {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(k: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(k)),
            im: BigRational::zero(),
        }
    }

    /// num/den as a real amplitude. Panics if den = 0.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let denom = &self.re * &self.re + &self.im * &self.im;
        assert!(!denom.is_zero(), "inverse of zero amplitude");
        Self {
            re: &self.re / &denom,
            im: -(&self.im / &denom),
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+i({})", rational_to_string(&self.re), rational_to_string(&self.im))
    }
}

/// Canonical decimal-free encoding "p/q" of a reduced rational.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse "p/q" (or bare "p") into a rational.
pub fn rational_from_string(s: &str) -> Result<BigRational, FockError> {
    let bad = |_| FockError::Parse(format!("bad rational: {s}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let num = BigInt::from_str(p.trim()).map_err(bad)?;
            let den = BigInt::from_str(q.trim()).map_err(bad)?;
            if den.is_zero() {
                return Err(FockError::Parse(format!("zero denominator: {s}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s.trim()).map_err(bad)?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Common interface of exact and floating amplitudes, so that ladder and
/// dressed-boson operators can be written once for both arithmetics.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Embed a non-negative integer (occupation eigenvalue).
    fn from_count(k: u64) -> Self;
    /// Embed an arbitrary-precision integer (factorial weights).
    fn from_bigint(b: &BigInt) -> Self;
    /// Embed an exact rational coefficient.
    fn from_rational(r: &BigRational) -> Self;
    /// |·| as a double, for norms and reports.
    fn modulus(&self) -> f64;
}

impl Scalar for Amplitude {
    fn zero() -> Self {
        Amplitude::from_int(0)
    }
    fn one() -> Self {
        Amplitude::from_int(1)
    }
    fn add(&self, rhs: &Self) -> Self {
        Amplitude::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Amplitude::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Amplitude::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg(&self) -> Self {
        Amplitude::new(-self.re.clone(), -self.im.clone())
    }
    fn conj(&self) -> Self {
        Amplitude::new(self.re.clone(), -self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_count(k: u64) -> Self {
        Amplitude::from_real(BigRational::from_integer(BigInt::from(k)))
    }
    fn from_bigint(b: &BigInt) -> Self {
        Amplitude::from_real(BigRational::from_integer(b.clone()))
    }
    fn from_rational(r: &BigRational) -> Self {
        Amplitude::from_real(r.clone())
    }
    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_count(k: u64) -> Self {
        Complex64::new(k as f64, 0.0)
    }
    fn from_bigint(b: &BigInt) -> Self {
        Complex64::new(b.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

/// Sparse linear combination of Fock states with amplitudes in `S`.
///
/// Immutable value semantics: every operation returns a new vector. Zero
/// amplitudes are purged eagerly so the empty map is the canonical zero
/// vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<S: Scalar> {
    n: u32,
    terms: BTreeMap<FockState, S>,
}

/// Exact state: amplitudes in ℚ(i).
pub type State = StateVector<Amplitude>;
/// Floating state: amplitudes in ℂ as double precision.
pub type StateF = StateVector<Complex64>;

impl<S: Scalar> StateVector<S> {
    /// The zero vector of the SU(`n`) mode space. Rank is not re-validated
    /// here; use [`StateVector::vacuum`] at trust boundaries.
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// |0⟩ with unit amplitude.
    pub fn vacuum(n: u32) -> Result<Self, FockError> {
        if !(2..=MAX_RANK).contains(&n) {
            return Err(FockError::InvalidRank(n));
        }
        let mut terms = BTreeMap::new();
        terms.insert(FockState::vacuum(), S::one());
        Ok(Self { n, terms })
    }

    pub fn group_n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &S)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, f: &FockState) -> Option<&S> {
        self.terms.get(f)
    }

    /// Accumulate `amp` onto the coefficient of `f`, purging exact zeros.
    pub fn accumulate(&mut self, f: FockState, amp: S) {
        if amp.is_zero() {
            return;
        }
        match self.terms.entry(f) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(amp);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&amp);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_mode(&self, m: ModeIndex) -> Result<(), FockError> {
        if m.valid_for(self.n) {
            Ok(())
        } else {
            Err(FockError::InvalidMode {
                plet: m.plet,
                color: m.color,
                n: self.n,
            })
        }
    }

    /// a†_m in the monomial convention: |…, n_m, …⟩ ↦ |…, n_m+1, …⟩.
    pub fn create(&self, m: ModeIndex) -> Result<Self, FockError> {
        self.check_mode(m)?;
        let mut out = Self::zero(self.n);
        for (f, amp) in &self.terms {
            let k = f.occupation(m);
            out.accumulate(f.with_occupation(m, k + 1), amp.clone());
        }
        Ok(out)
    }

    /// a_m in the monomial convention: |…, n_m, …⟩ ↦ n_m |…, n_m−1, …⟩.
    pub fn annihilate(&self, m: ModeIndex) -> Result<Self, FockError> {
        self.check_mode(m)?;
        let mut out = Self::zero(self.n);
        for (f, amp) in &self.terms {
            let k = f.occupation(m);
            if k == 0 {
                continue;
            }
            out.accumulate(
                f.with_occupation(m, k - 1),
                amp.mul(&S::from_count(u64::from(k))),
            );
        }
        Ok(out)
    }

    /// ⟨self|other⟩, antilinear in `self`, with ⟨n|n'⟩ = δ_{nn'} Π_m n_m!.
    pub fn inner(&self, other: &Self) -> Result<S, FockError> {
        if self.n != other.n {
            return Err(FockError::RankMismatch(self.n, other.n));
        }
        let mut acc = S::zero();
        // Iterate over the smaller support.
        let (small, large, small_is_self) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms, true)
        } else {
            (&other.terms, &self.terms, false)
        };
        for (f, amp) in small {
            if let Some(oamp) = large.get(f) {
                let weight = S::from_bigint(&f.factorial_product());
                let (bra, ket) = if small_is_self { (amp, oamp) } else { (oamp, amp) };
                acc = acc.add(&bra.conj().mul(ket).mul(&weight));
            }
        }
        Ok(acc)
    }

    /// ⟨v|v⟩ as a real double (exact path converts at the end).
    pub fn norm_sq_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(f, a)| {
                let w = f.factorial_product().to_f64().unwrap_or(f64::NAN);
                let m = a.modulus();
                m * m * w
            })
            .sum()
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm_sq_f64().sqrt()
    }

    /// Eigenvalue of the plet-i total number operator 𝒩_i, if sharp.
    pub fn plet_number(&self, plet: u8) -> Result<u64, FockError> {
        if self.terms.is_empty() {
            return Err(FockError::ZeroState);
        }
        let mut val: Option<u64> = None;
        for f in self.terms.keys() {
            let t = f.plet_total(plet);
            match val {
                None => val = Some(t),
                Some(v) if v != t => return Err(FockError::MixedSector(plet)),
                _ => {}
            }
        }
        Ok(val.unwrap())
    }

    /// All plet numbers (n_1, …, n_{N−1}), each required to be sharp.
    pub fn plet_profile(&self) -> Result<Vec<u64>, FockError> {
        (1..self.n as u8)
            .map(|i| self.plet_number(i))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        if self.n != other.n {
            return Err(FockError::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (f, amp) in &other.terms {
            out.accumulate(f.clone(), amp.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FockError> {
        self.add(&other.scaled(&S::one().neg()))
    }

    pub fn scaled(&self, s: &S) -> Self {
        let mut out = Self::zero(self.n);
        if s.is_zero() {
            return out;
        }
        for (f, amp) in &self.terms {
            out.accumulate(f.clone(), amp.mul(s));
        }
        out
    }
}

impl State {
    /// Convert exact amplitudes to double precision once, at the boundary
    /// between the exact constructions and the floating-point checks.
    pub fn to_float(&self) -> StateF {
        let mut out = StateF::zero(self.n);
        for (f, amp) in &self.terms {
            out.accumulate(f.clone(), amp.to_complex64());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Serialization: {"N": n, "terms": [{"occ": [[plet,color,count],…],
// "re": "p/q", "im": "p/q"}]} with canonical ordering for byte-stable files.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    occ: Vec<[u32; 3]>,
    re: String,
    im: String,
}

/// JSON document form of an exact [`State`].
#[derive(Serialize, Deserialize)]
pub struct StateJson {
    #[serde(rename = "N")]
    n: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJsonF {
    occ: Vec<[u32; 3]>,
    re: f64,
    im: f64,
}

/// JSON document form of a floating [`StateF`].
#[derive(Serialize, Deserialize)]
pub struct StateJsonF {
    #[serde(rename = "N")]
    n: u32,
    terms: Vec<TermJsonF>,
}

fn occ_to_json(f: &FockState) -> Vec<[u32; 3]> {
    f.raw()
        .iter()
        .map(|&(p, c, k)| [u32::from(p), u32::from(c), k])
        .collect()
}

fn occ_from_json(occ: &[[u32; 3]], n: u32) -> Result<FockState, FockError> {
    let mut raw = Vec::with_capacity(occ.len());
    for &[p, c, k] in occ {
        let (plet, color) = (
            u8::try_from(p).map_err(|_| FockError::Parse(format!("plet {p} out of range")))?,
            u8::try_from(c).map_err(|_| FockError::Parse(format!("color {c} out of range")))?,
        );
        if !ModeIndex::new(plet, color).valid_for(n) {
            return Err(FockError::InvalidMode { plet, color, n });
        }
        raw.push((plet, color, k));
    }
    FockState::from_raw(raw)
}

impl State {
    pub fn to_json(&self) -> StateJson {
        StateJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(f, a)| TermJson {
                    occ: occ_to_json(f),
                    re: rational_to_string(a.re()),
                    im: rational_to_string(a.im()),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &StateJson) -> Result<Self, FockError> {
        if doc.n < 2 {
            return Err(FockError::InvalidRank(doc.n));
        }
        let mut out = Self::zero(doc.n);
        for t in &doc.terms {
            let f = occ_from_json(&t.occ, doc.n)?;
            let amp = Amplitude::new(rational_from_string(&t.re)?, rational_from_string(&t.im)?);
            out.accumulate(f, amp);
        }
        Ok(out)
    }
}

impl StateF {
    pub fn to_json(&self) -> StateJsonF {
        StateJsonF {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(f, a)| TermJsonF {
                    occ: occ_to_json(f),
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &StateJsonF) -> Result<Self, FockError> {
        if doc.n < 2 {
            return Err(FockError::InvalidRank(doc.n));
        }
        let mut out = Self::zero(doc.n);
        for t in &doc.terms {
            let f = occ_from_json(&t.occ, doc.n)?;
            out.accumulate(f, Complex64::new(t.re, t.im));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(plet: u8, color: u8) -> ModeIndex {
        ModeIndex::new(plet, color)
    }

    #[test]
    fn vacuum_is_single_unit_term() {
        let v = State::vacuum(2).unwrap();
        assert_eq!(v.num_terms(), 1);
        assert_eq!(v.amplitude(&FockState::vacuum()), Some(&Amplitude::from_int(1)));
    }

    #[test]
    fn vacuum_has_zero_plet_totals() {
        let v = State::vacuum(3).unwrap();
        assert_eq!(v.plet_number(1).unwrap(), 0);
        assert_eq!(v.plet_number(2).unwrap(), 0);
    }

    #[test]
    fn vacuum_norm_is_one() {
        let v = State::vacuum(4).unwrap();
        assert_eq!(v.inner(&v).unwrap(), Amplitude::from_int(1));
    }

    #[test]
    fn invalid_rank_rejected() {
        assert_eq!(State::vacuum(1).unwrap_err(), FockError::InvalidRank(1));
        assert_eq!(State::vacuum(0).unwrap_err(), FockError::InvalidRank(0));
    }

    #[test]
    fn single_creation_norm() {
        let v = State::vacuum(2).unwrap().create(m(1, 1)).unwrap();
        assert_eq!(v.num_terms(), 1);
        assert_eq!(v.inner(&v).unwrap(), Amplitude::from_int(1));
    }

    #[test]
    fn double_creation_bosonic_norm() {
        let v = State::vacuum(2)
            .unwrap()
            .create(m(1, 1))
            .unwrap()
            .create(m(1, 1))
            .unwrap();
        // amplitude stays 1, norm² = 2! = 2
        assert_eq!(v.inner(&v).unwrap(), Amplitude::from_int(2));
    }

    #[test]
    fn creations_commute_bit_exactly() {
        let v = State::vacuum(3).unwrap();
        let ab = v.create(m(1, 1)).unwrap().create(m(1, 2)).unwrap();
        let ba = v.create(m(1, 2)).unwrap().create(m(1, 1)).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn annihilate_vacuum_is_zero() {
        let v = State::vacuum(2).unwrap().annihilate(m(1, 1)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn ccr_on_vacuum() {
        // a a†|0⟩ − a† a|0⟩ = |0⟩ for every mode
        for plet in 1..2u8 {
            for color in 1..=2u8 {
                let v = State::vacuum(2).unwrap();
                let lhs = v
                    .create(m(plet, color))
                    .unwrap()
                    .annihilate(m(plet, color))
                    .unwrap()
                    .sub(&v.annihilate(m(plet, color)).unwrap().create(m(plet, color)).unwrap())
                    .unwrap();
                assert_eq!(lhs, v);
            }
        }
    }

    #[test]
    fn monomial_annihilation_and_sqrt3_matrix_element() {
        // a|3⟩ = 3|2⟩ in the monomial convention.
        let mut v = State::vacuum(2).unwrap();
        for _ in 0..3 {
            v = v.create(m(1, 1)).unwrap();
        }
        let av = v.annihilate(m(1, 1)).unwrap();
        let mut two = State::vacuum(2).unwrap();
        for _ in 0..2 {
            two = two.create(m(1, 1)).unwrap();
        }
        assert_eq!(av, two.scaled(&Amplitude::from_int(3)));
        // √-normalized matrix element ⟨2|a|3⟩ / (‖2‖·‖3‖) = 6/√12 = √3.
        let me = two.inner(&av).unwrap().to_complex64().re;
        let norm = two.norm_f64() * v.norm_f64();
        assert!((me / norm - 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inner_orthogonality_and_mismatch() {
        let a = State::vacuum(2).unwrap().create(m(1, 1)).unwrap();
        let b = State::vacuum(2).unwrap().create(m(1, 2)).unwrap();
        assert!(a.inner(&b).unwrap().is_zero());
        let c = State::vacuum(3).unwrap();
        assert_eq!(a.inner(&c).unwrap_err(), FockError::RankMismatch(2, 3));
    }

    #[test]
    fn plet_number_examples() {
        let v = State::vacuum(3)
            .unwrap()
            .create(m(1, 1))
            .unwrap()
            .create(m(2, 2))
            .unwrap();
        assert_eq!(v.plet_number(1).unwrap(), 1);
        assert_eq!(v.plet_number(2).unwrap(), 1);

        let w = State::vacuum(2).unwrap().create(m(1, 1)).unwrap();
        let w2 = w.create(m(1, 1)).unwrap();
        let mixed = w.add(&w2).unwrap();
        assert_eq!(mixed.plet_number(1).unwrap_err(), FockError::MixedSector(1));
        assert_eq!(
            State::zero(2).plet_number(1).unwrap_err(),
            FockError::ZeroState
        );
    }

    #[test]
    fn invalid_mode_rejected() {
        let v = State::vacuum(2).unwrap();
        assert!(v.create(m(2, 1)).is_err()); // plet 2 needs N ≥ 3
        assert!(v.create(m(1, 3)).is_err()); // color 3 needs N ≥ 3
        assert!(v.create(m(0, 1)).is_err());
    }

    #[test]
    fn json_round_trip_exact() {
        let v = State::vacuum(3)
            .unwrap()
            .create(m(1, 1))
            .unwrap()
            .create(m(2, 3))
            .unwrap()
            .scaled(&Amplitude::new(
                BigRational::new(BigInt::from(-7), BigInt::from(3)),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
            ));
        let doc = serde_json::to_string(&v.to_json()).unwrap();
        let back = State::from_json(&serde_json::from_str(&doc).unwrap()).unwrap();
        assert_eq!(v, back);
        // byte-identical re-serialization
        assert_eq!(doc, serde_json::to_string(&back.to_json()).unwrap());
    }

    #[test]
    fn rational_string_forms() {
        assert_eq!(rational_to_string(&BigRational::new(BigInt::from(-3), BigInt::from(6))), "-1/2");
        assert_eq!(
            rational_from_string("-1/2").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(rational_from_string("4").unwrap(), BigRational::from_integer(BigInt::from(4)));
        assert!(rational_from_string("1/0").is_err());
        assert!(rational_from_string("x").is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn mode_strategy(n: u32) -> impl Strategy<Value = ModeIndex> {
        (1..=(n - 1) as u8, 1..=n as u8).prop_map(|(p, c)| ModeIndex::new(p, c))
    }

    fn amplitude_strategy() -> impl Strategy<Value = Amplitude> {
        ((-6i64..=6), (1i64..=4), (-6i64..=6), (1i64..=4)).prop_map(|(pn, pd, qn, qd)| {
            Amplitude::new(
                BigRational::new(BigInt::from(pn), BigInt::from(pd)),
                BigRational::new(BigInt::from(qn), BigInt::from(qd)),
            )
        })
    }

    /// Random exact state with at most 6 quanta spread over SU(3) modes.
    fn state_strategy() -> impl Strategy<Value = State> {
        let term = (proptest::collection::vec(mode_strategy(3), 0..=6), amplitude_strategy());
        proptest::collection::vec(term, 1..=4).prop_map(|terms| {
            let mut v = State::zero(3);
            for (modes, amp) in terms {
                let mut f = FockState::vacuum();
                for m in modes {
                    let k = f.occupation(m);
                    f = f.with_occupation(m, k + 1);
                }
                v.accumulate(f, amp);
            }
            v
        })
    }

    proptest! {
        #[test]
        fn canonical_commutation_exact(v in state_strategy(), a in mode_strategy(3), b in mode_strategy(3)) {
            let lhs = v.create(b).unwrap().annihilate(a).unwrap();
            let rhs = v.annihilate(a).unwrap().create(b).unwrap();
            let comm = lhs.sub(&rhs).unwrap();
            let expected = if a == b { v.clone() } else { State::zero(3) };
            prop_assert_eq!(comm, expected);
        }

        #[test]
        fn annihilators_commute(v in state_strategy(), a in mode_strategy(3), b in mode_strategy(3)) {
            let ab = v.annihilate(a).unwrap().annihilate(b).unwrap();
            let ba = v.annihilate(b).unwrap().annihilate(a).unwrap();
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn inner_positive_definite(v in state_strategy()) {
            let n2 = v.inner(&v).unwrap();
            prop_assert!(n2.im().is_zero());
            if v.is_zero() {
                prop_assert!(n2.re().is_zero());
            } else {
                prop_assert!(n2.re() > &BigRational::zero());
            }
        }

        #[test]
        fn adjoint_pairing_bit_exact(v in state_strategy(), w in state_strategy(), seq in proptest::collection::vec((mode_strategy(3), proptest::bool::ANY), 0..4)) {
            // ⟨w|O v⟩ = conj(⟨O† w|v⟩)… with O a word in ladder operators and
            // O† the reversed word with a ↔ a†.
            let mut ov = v.clone();
            for &(m, create) in &seq {
                ov = if create { ov.create(m).unwrap() } else { ov.annihilate(m).unwrap() };
            }
            let mut odw = w.clone();
            for &(m, create) in seq.iter().rev() {
                odw = if create { odw.annihilate(m).unwrap() } else { odw.create(m).unwrap() };
            }
            let lhs = w.inner(&ov).unwrap();
            let rhs = odw.inner(&v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trip(v in state_strategy()) {
            let doc = serde_json::to_string(&v.to_json()).unwrap();
            let back = State::from_json(&serde_json::from_str(&doc).unwrap()).unwrap();
            prop_assert_eq!(v, back);
        }
    }
}
