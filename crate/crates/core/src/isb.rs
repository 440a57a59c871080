//! Irreducible Schwinger bosons: dressed creation operators A†_α\[k\] whose
//! monomials on the vacuum directly carry the full Young-tableau symmetry of
//! an SU(N) irreducible representation, i.e. are annihilated by every
//! constraint L̂_ij = a†\[i\]·a\[j\] with i < j.
//!
//! The dressed operator is
//!
//! ```text
//!   A†_α[k] = a†_α[k] + Σ_{r≥1} Σ_{k>i_1>…>i_r}
//!             F^k_{i_1}…F^k_{i_r} · L̂_{k i_1} L̂_{i_1 i_2} … L̂_{i_{r−1} i_r} a†_α[i_r]
//! ```
//!
//! applied right to left; the number-operator-valued coefficients
//! F^k_i = −1/(𝒩_i − 𝒩_k + 1 + k − i) are evaluated on the intermediate
//! state produced by the whole ladder chain to their right (all of them see
//! the same state, since the scalars commute past each other). Everything
//! here is exact rational arithmetic, so constraint annihilation and rank
//! statements carry zero tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{FockError, FockState, ModeIndex, Scalar, State, StateJson, StateVector};
use crate::liealg::{apply_transfer, LieError};

#[derive(Debug, Error)]
pub enum IsbError {
    #[error("invalid irrep label: {0}")]
    InvalidLabel(String),
    #[error("coefficient F^{k}_{i} is singular at the supplied occupations")]
    SingularCoefficient { k: u8, i: u8 },
    #[error("plet index {0} out of range 1..={1}")]
    PletOutOfRange(u8, u32),
    #[error("color index {0} out of range 1..={1}")]
    ColorOutOfRange(u8, u32),
    #[error("colors must be {expected} rows matching the irrep rows, got {got}")]
    ShapeMismatch { expected: String, got: String },
    #[error("irrep basis construction failed: got {got} independent states, Weyl dimension is {expected}")]
    ConstructionFailure { expected: u64, got: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Ordered tuple \[n_1, …, n_{N−1}\] of Casimir eigenvalues labeling an SU(N)
/// irrep; rows must be non-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepLabel {
    n: u32,
    rows: Vec<u32>,
}

impl IrrepLabel {
    /// Build a label for SU(`n`); trailing zero rows may be omitted.
    pub fn new(n: u32, rows: &[u32]) -> Result<Self, IsbError> {
        if n < 2 {
            return Err(IsbError::InvalidLabel(format!("rank {n} below 2")));
        }
        if n > crate::fock::MAX_RANK {
            return Err(IsbError::InvalidLabel(format!(
                "rank {n} above the supported maximum {}",
                crate::fock::MAX_RANK
            )));
        }
        if rows.len() > (n - 1) as usize {
            return Err(IsbError::InvalidLabel(format!(
                "{} rows given, SU({n}) admits at most {}",
                rows.len(),
                n - 1
            )));
        }
        let mut full = rows.to_vec();
        full.resize((n - 1) as usize, 0);
        if full.windows(2).any(|w| w[0] < w[1]) {
            return Err(IsbError::InvalidLabel(format!(
                "row lengths {full:?} must be non-increasing"
            )));
        }
        Ok(Self { n, rows: full })
    }

    pub fn group_n(&self) -> u32 {
        self.n
    }

    /// Full row tuple (n_1, …, n_{N−1}) including trailing zeros.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Σ n_i, the total quanta of every state in the irrep.
    pub fn total_quanta(&self) -> u64 {
        self.rows.iter().map(|&r| u64::from(r)).sum()
    }
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "[{}]", body.join(","))
    }
}

/// Weyl dimension of the irrep: Π_{1≤r<s≤N} (λ_r − λ_s + s − r)/(s − r)
/// with λ = (n_1, …, n_{N−1}, 0). Exact integer arithmetic.
pub fn weyl_dimension(label: &IrrepLabel) -> u64 {
    let n = label.n as usize;
    let mut lambda: Vec<i64> = label.rows.iter().map(|&x| i64::from(x)).collect();
    lambda.push(0);
    let mut acc = BigRational::one();
    for r in 0..n {
        for s in (r + 1)..n {
            let num = lambda[r] - lambda[s] + (s as i64 - r as i64);
            let den = s as i64 - r as i64;
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
    debug_assert!(acc.is_integer(), "Weyl product must be an integer");
    acc.to_integer().to_u64().expect("dimension fits in u64")
}

/// F^k_i = −1/(n_i − n_k + 1 + k − i), exact.
pub fn f_coefficient(k: u8, i: u8, occupations: &[u64]) -> Result<BigRational, IsbError> {
    assert!(
        i >= 1 && i < k && (k as usize) <= occupations.len(),
        "need 1 ≤ i < k ≤ number of plets"
    );
    let ni = occupations[(i - 1) as usize] as i64;
    let nk = occupations[(k - 1) as usize] as i64;
    let den = ni - nk + 1 + i64::from(k) - i64::from(i);
    if den == 0 {
        return Err(IsbError::SingularCoefficient { k, i });
    }
    Ok(BigRational::new(BigInt::from(-1), BigInt::from(den)))
}

/// A†_α\[k\] applied to a simultaneous 𝒩-eigenstate.
///
/// Each term applies right to left: the bare creation first, then the
/// descending transfer chain, then the product of F factors evaluated on the
/// resulting occupations.
pub fn isb_create<S: Scalar>(
    k: u8,
    alpha: u8,
    v: &StateVector<S>,
) -> Result<StateVector<S>, IsbError> {
    let n = v.group_n();
    if k == 0 || u32::from(k) >= n {
        return Err(IsbError::PletOutOfRange(k, n - 1));
    }
    if alpha == 0 || u32::from(alpha) > n {
        return Err(IsbError::ColorOutOfRange(alpha, n));
    }
    if v.is_zero() {
        return Ok(StateVector::zero(n));
    }
    v.plet_profile()?; // reject mixed-sector input

    let mut out = v.create(ModeIndex::new(k, alpha))?;
    for chain in descending_chains(k) {
        // chain = (i_1 > i_2 > … > i_r); innermost creation at i_r.
        let last = *chain.last().expect("chains are nonempty");
        let mut w = v.create(ModeIndex::new(last, alpha))?;
        for pair in chain.windows(2).rev() {
            // L̂_{i_{j} i_{j+1}} moving one quantum i_{j+1} → i_j
            w = apply_transfer(pair[0], pair[1], &w)?;
        }
        w = apply_transfer(k, chain[0], &w)?;
        if w.is_zero() {
            continue;
        }
        let profile = w.plet_profile()?;
        let mut factor = BigRational::one();
        for &i in &chain {
            factor *= f_coefficient(k, i, &profile)?;
        }
        out = out.add(&w.scaled(&S::from_rational(&factor)))?;
    }
    Ok(out)
}

/// All strictly descending nonempty sequences drawn from {1, …, k−1}.
fn descending_chains(k: u8) -> Vec<Vec<u8>> {
    let pool: Vec<u8> = (1..k).rev().collect();
    let mut out = Vec::new();
    let count = 1usize << pool.len();
    for mask in 1..count {
        let chain: Vec<u8> = pool
            .iter()
            .enumerate()
            .filter(|&(idx, _)| mask & (1 << idx) != 0)
            .map(|(_, &i)| i)
            .collect();
        out.push(chain);
    }
    // Deterministic order: shorter chains first, then lexicographic.
    out.sort();
    out.sort_by_key(Vec::len);
    out
}

/// The irrep monomial: rows applied bottom-up, all A†\[1\] factors on the
/// vacuum first, then all A†\[2\], …, finishing with A†\[N−1\].
///
/// `colors` holds one sublist per row; row i must list n_i colors. The result
/// may be the zero vector for over-antisymmetrized color choices.
pub fn monomial_state(label: &IrrepLabel, colors: &[Vec<u8>]) -> Result<State, IsbError> {
    let n = label.n;
    let expected: Vec<usize> = label.rows.iter().map(|&r| r as usize).collect();
    let got: Vec<usize> = colors.iter().map(Vec::len).collect();
    if got != expected {
        return Err(IsbError::ShapeMismatch {
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        });
    }
    let mut v = State::vacuum(n)?;
    for (row, row_colors) in colors.iter().enumerate() {
        let k = row as u8 + 1;
        for &alpha in row_colors {
            v = isb_create(k, alpha, &v)?;
            if v.is_zero() {
                return Ok(v);
            }
        }
    }
    Ok(v)
}

/// Incremental exact Gaussian elimination over ℚ(i), used for rank
/// extraction and exact span-membership tests.
///
/// Invariant: every stored row has zero coefficient at the pivots of all
/// earlier rows, so a single reduction sweep in insertion order is complete.
pub struct ExactEchelon {
    n: u32,
    rows: Vec<(FockState, State)>,
}

impl ExactEchelon {
    pub fn new(n: u32) -> Self {
        Self { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &State) -> State {
        let mut w = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = w.amplitude(pivot).cloned() {
                w = w.sub(&row.scaled(&c)).expect("same rank");
            }
        }
        w
    }

    /// Insert `v` if independent of the current span; returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: &State) -> bool {
        debug_assert_eq!(v.group_n(), self.n);
        let w = self.reduce(v);
        if w.is_zero() {
            return false;
        }
        let (pivot, amp) = {
            let (f, a) = w.terms().next().expect("nonzero state has a term");
            (f.clone(), a.clone())
        };
        let normalized = w.scaled(&amp.inv());
        self.rows.push((pivot, normalized));
        true
    }

    /// Exact membership of `v` in the span of the inserted states.
    pub fn contains(&self, v: &State) -> bool {
        self.reduce(v).is_zero()
    }
}

/// All independent irrep monomials, in deterministic enumeration order.
///
/// Colors in each row run over non-decreasing tuples (the rows are
/// symmetric), rows combine lexicographically left to right, zero monomials
/// are dropped, and a maximal independent subset is extracted by exact
/// elimination keeping earlier states. The resulting count must equal the
/// Weyl dimension.
pub fn irrep_basis(label: &IrrepLabel) -> Result<Vec<State>, IsbError> {
    let n = label.n;
    let expected = weyl_dimension(label);
    let mut echelon = ExactEchelon::new(n);
    let mut basis = Vec::new();
    for colors in color_assignments(label) {
        let state = monomial_state(label, &colors)?;
        if state.is_zero() {
            continue;
        }
        if echelon.insert(&state) {
            basis.push(state);
        }
    }
    if basis.len() as u64 != expected {
        return Err(IsbError::ConstructionFailure {
            expected,
            got: basis.len(),
        });
    }
    Ok(basis)
}

/// All valid irrep labels of SU(`n`) with Σ n_i ≤ `max_quanta`, in
/// deterministic order (total quanta, then lexicographic rows).
pub fn irrep_sweep(n: u32, max_quanta: u64) -> Vec<IrrepLabel> {
    fn extend(n: u32, budget: u64, cap: u32, rows: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rows.len() == (n - 1) as usize {
            out.push(rows.clone());
            return;
        }
        let limit = cap.min(u32::try_from(budget).unwrap_or(u32::MAX));
        for next in 0..=limit {
            rows.push(next);
            extend(n, budget - u64::from(next), next, rows, out);
            rows.pop();
        }
    }
    let mut rows_list = Vec::new();
    extend(n, max_quanta, u32::MAX, &mut Vec::new(), &mut rows_list);
    rows_list.sort_by_key(|rows| (rows.iter().map(|&r| u64::from(r)).sum::<u64>(), rows.clone()));
    rows_list
        .into_iter()
        .map(|rows| IrrepLabel::new(n, &rows).expect("sweep labels are valid"))
        .collect()
}

/// Cartesian product over rows of the non-decreasing color tuples.
fn color_assignments(label: &IrrepLabel) -> Vec<Vec<Vec<u8>>> {
    let n = label.n as u8;
    let per_row: Vec<Vec<Vec<u8>>> = label
        .rows
        .iter()
        .map(|&len| nondecreasing_tuples(n, len as usize))
        .collect();
    let mut out: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    for row_options in per_row {
        let mut next = Vec::with_capacity(out.len() * row_options.len());
        for prefix in &out {
            for option in &row_options {
                let mut assignment = prefix.clone();
                assignment.push(option.clone());
                next.push(assignment);
            }
        }
        out = next;
    }
    out
}

/// Non-decreasing tuples of `len` colors from 1..=n, lexicographic.
fn nondecreasing_tuples(n: u8, len: usize) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current = vec![1u8; len];
    loop {
        out.push(current.clone());
        // advance to the next non-decreasing tuple
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            if current[pos] < n {
                let v = current[pos] + 1;
                for slot in current.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

/// On-disk form of an irrep basis.
#[derive(Serialize, Deserialize)]
pub struct BasisJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub irrep: Vec<u32>,
    pub dim: usize,
    pub states: Vec<StateJson>,
}

pub fn basis_to_json(label: &IrrepLabel, states: &[State]) -> BasisJson {
    BasisJson {
        n: label.group_n(),
        irrep: label.rows().to_vec(),
        dim: states.len(),
        states: states.iter().map(State::to_json).collect(),
    }
}

pub fn basis_from_json(doc: &BasisJson) -> Result<(IrrepLabel, Vec<State>), IsbError> {
    let label = IrrepLabel::new(doc.n, &doc.irrep)?;
    let states = doc
        .states
        .iter()
        .map(State::from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((label, states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Amplitude;
    use crate::liealg::apply_constraint;

    fn m(plet: u8, color: u8) -> ModeIndex {
        ModeIndex::new(plet, color)
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn label_validation() {
        assert!(IrrepLabel::new(3, &[1, 2]).is_err());
        assert!(IrrepLabel::new(3, &[1, 1, 1]).is_err());
        assert!(IrrepLabel::new(1, &[1]).is_err());
        let l = IrrepLabel::new(4, &[2, 1]).unwrap();
        assert_eq!(l.rows(), &[2, 1, 0]);
        assert_eq!(l.to_string(), "[2,1,0]");
    }

    #[test]
    fn weyl_dimension_frozen_values() {
        for n in 0..=5u32 {
            assert_eq!(weyl_dimension(&IrrepLabel::new(2, &[n]).unwrap()), u64::from(n) + 1);
        }
        assert_eq!(weyl_dimension(&IrrepLabel::new(3, &[1, 1]).unwrap()), 3);
        assert_eq!(weyl_dimension(&IrrepLabel::new(3, &[2, 1]).unwrap()), 8);
        assert_eq!(weyl_dimension(&IrrepLabel::new(3, &[2, 2]).unwrap()), 6);
        assert_eq!(weyl_dimension(&IrrepLabel::new(4, &[1, 1, 1]).unwrap()), 4);
        assert_eq!(weyl_dimension(&IrrepLabel::new(5, &[1]).unwrap()), 5);
        assert_eq!(weyl_dimension(&IrrepLabel::new(3, &[]).unwrap()), 1);
    }

    #[test]
    fn f_coefficient_frozen_values() {
        assert_eq!(f_coefficient(2, 1, &[1, 1]).unwrap(), rat(-1, 2));
        assert_eq!(f_coefficient(3, 1, &[2, 1, 0]).unwrap(), rat(-1, 5));
        assert_eq!(f_coefficient(2, 1, &[0, 0]).unwrap(), rat(-1, 2));
        // n_2 = n_1 + 2 makes the k=2, i=1 denominator vanish.
        assert!(matches!(
            f_coefficient(2, 1, &[0, 2]),
            Err(IsbError::SingularCoefficient { k: 2, i: 1 })
        ));
    }

    #[test]
    fn descending_chains_for_small_k() {
        assert!(descending_chains(1).is_empty());
        assert_eq!(descending_chains(2), vec![vec![1]]);
        assert_eq!(
            descending_chains(3),
            vec![vec![1], vec![2], vec![2, 1]]
        );
        assert_eq!(descending_chains(4).len(), 7);
    }

    #[test]
    fn plet_one_isb_is_bare_creation() {
        let v = State::vacuum(3)
            .unwrap()
            .create(m(1, 2))
            .unwrap()
            .create(m(2, 3))
            .unwrap();
        for alpha in 1..=3u8 {
            assert_eq!(
                isb_create(1, alpha, &v).unwrap(),
                v.create(m(1, alpha)).unwrap()
            );
        }
    }

    /// Independent single-constraint oracle specialised to SU(3), k = 2:
    /// A†_α\[2\] = a†_α\[2\] − 1/(𝒩₁−𝒩₂+2) (a†\[2\]·a\[1\]) a†_α\[1\], with the
    /// number operators read on the state produced by the chain.
    fn su3_isb2_oracle(alpha: u8, v: &State) -> State {
        let direct = v.create(m(2, alpha)).unwrap();
        let raised = v.create(m(1, alpha)).unwrap();
        let mut chained = State::zero(3);
        for beta in 1..=3u8 {
            let step = raised
                .annihilate(m(1, beta))
                .unwrap()
                .create(m(2, beta))
                .unwrap();
            chained = chained.add(&step).unwrap();
        }
        if chained.is_zero() {
            return direct;
        }
        let n1 = chained.plet_number(1).unwrap() as i64;
        let n2 = chained.plet_number(2).unwrap() as i64;
        let factor = Amplitude::from_real(rat(-1, n1 - n2 + 2));
        direct.add(&chained.scaled(&factor)).unwrap()
    }

    #[test]
    fn isb2_matches_su3_oracle() {
        let vac = State::vacuum(3).unwrap();
        let mut probes = vec![vac.clone()];
        for alpha in 1..=3u8 {
            probes.push(vac.create(m(1, alpha)).unwrap());
        }
        probes.push(vac.create(m(1, 1)).unwrap().create(m(1, 2)).unwrap());
        probes.push(vac.create(m(1, 3)).unwrap().create(m(1, 3)).unwrap());
        for v in &probes {
            for alpha in 1..=3u8 {
                assert_eq!(
                    isb_create(2, alpha, v).unwrap(),
                    su3_isb2_oracle(alpha, v),
                    "alpha {alpha}"
                );
            }
        }
    }

    #[test]
    fn antisymmetric_pair_with_half_prefactor() {
        // A†_β[2] a†_α[1] |0⟩ = ½ (a†_β[2] a†_α[1] − a†_α[2] a†_β[1]) |0⟩
        let vac = State::vacuum(3).unwrap();
        let half = Amplitude::from_ratio(1, 2);
        for alpha in 1..=3u8 {
            for beta in 1..=3u8 {
                let got = isb_create(2, beta, &vac.create(m(1, alpha)).unwrap()).unwrap();
                let want = vac
                    .create(m(1, alpha))
                    .unwrap()
                    .create(m(2, beta))
                    .unwrap()
                    .sub(&vac.create(m(1, beta)).unwrap().create(m(2, alpha)).unwrap())
                    .unwrap()
                    .scaled(&half);
                assert_eq!(got, want, "α={alpha} β={beta}");
                if alpha == beta {
                    assert!(got.is_zero());
                }
            }
        }
        // antisymmetry under α ↔ β, exactly
        let ab = isb_create(2, 2, &vac.create(m(1, 1)).unwrap()).unwrap();
        let ba = isb_create(2, 1, &vac.create(m(1, 2)).unwrap()).unwrap();
        assert_eq!(ab, ba.scaled(&Amplitude::from_int(-1)));
    }

    #[test]
    fn isb_states_satisfy_constraint() {
        let vac = State::vacuum(3).unwrap();
        for alpha in 1..=3u8 {
            for beta in 1..=3u8 {
                let v = isb_create(2, beta, &isb_create(1, alpha, &vac).unwrap()).unwrap();
                assert!(apply_constraint(1, 2, &v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn mixed_sector_and_range_errors() {
        let vac = State::vacuum(3).unwrap();
        let mixed = vac
            .add(&vac.create(m(1, 1)).unwrap())
            .unwrap();
        assert!(matches!(
            isb_create(2, 1, &mixed),
            Err(IsbError::Fock(FockError::MixedSector(_)))
        ));
        assert!(matches!(isb_create(3, 1, &vac), Err(IsbError::PletOutOfRange(3, 2))));
        assert!(matches!(isb_create(1, 4, &vac), Err(IsbError::ColorOutOfRange(4, 3))));
        assert!(isb_create(2, 1, &State::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn monomial_state_examples() {
        // SU(2), irrep [2], colors [[1,1]] → (a†_1)²|0⟩
        let l2 = IrrepLabel::new(2, &[2]).unwrap();
        let got = monomial_state(&l2, &[vec![1, 1]]).unwrap();
        let want = State::vacuum(2)
            .unwrap()
            .create(m(1, 1))
            .unwrap()
            .create(m(1, 1))
            .unwrap();
        assert_eq!(got, want);

        // SU(3), irrep [1,1], repeated color → zero vector
        let l11 = IrrepLabel::new(3, &[1, 1]).unwrap();
        for alpha in 1..=3u8 {
            assert!(monomial_state(&l11, &[vec![alpha], vec![alpha]]).unwrap().is_zero());
        }

        // SU(3), irrep [2,1], colors [[1,2],[3]] → nonzero, 𝒩 = (2,1), L₁₂-annihilated
        let l21 = IrrepLabel::new(3, &[2, 1]).unwrap();
        let v = monomial_state(&l21, &[vec![1, 2], vec![3]]).unwrap();
        assert!(!v.is_zero());
        assert_eq!(v.plet_profile().unwrap(), vec![2, 1]);
        assert!(apply_constraint(1, 2, &v).unwrap().is_zero());

        // wrong shape
        assert!(matches!(
            monomial_state(&l21, &[vec![1], vec![3]]),
            Err(IsbError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn irrep_basis_dimensions() {
        let cases = [
            (2, vec![3u32], 4usize),
            (3, vec![1, 1], 3),
            (3, vec![2, 1], 8),
            (4, vec![1, 1, 1], 4),
        ];
        for (n, rows, dim) in cases {
            let label = IrrepLabel::new(n, &rows).unwrap();
            let basis = irrep_basis(&label).unwrap();
            assert_eq!(basis.len(), dim, "SU({n}) {label}");
            assert_eq!(basis.len() as u64, weyl_dimension(&label));
        }
    }

    #[test]
    fn trivial_irrep_is_vacuum() {
        let label = IrrepLabel::new(4, &[]).unwrap();
        let basis = irrep_basis(&label).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], State::vacuum(4).unwrap());
    }

    #[test]
    fn row_exchange_weakly_commutes() {
        // [A†_α[2], A†_β[2]] v = 0 on constrained v.
        let label = IrrepLabel::new(3, &[1, 0]).unwrap();
        for v in irrep_basis(&label).unwrap() {
            for alpha in 1..=3u8 {
                for beta in 1..=3u8 {
                    let ab = isb_create(2, alpha, &isb_create(2, beta, &v).unwrap()).unwrap();
                    let ba = isb_create(2, beta, &isb_create(2, alpha, &v).unwrap()).unwrap();
                    assert_eq!(ab, ba);
                }
            }
        }
    }

    #[test]
    fn weak_commutator_with_constraint() {
        // [L̂₁₂, A†_α[k]] v = 0 whenever L̂₁₂ v = 0.
        let label = IrrepLabel::new(3, &[1, 1]).unwrap();
        for v in irrep_basis(&label).unwrap() {
            assert!(apply_constraint(1, 2, &v).unwrap().is_zero());
            for k in 1..=2u8 {
                for alpha in 1..=3u8 {
                    let av = isb_create(k, alpha, &v).unwrap();
                    let commutator = apply_constraint(1, 2, &av).unwrap();
                    assert!(commutator.is_zero(), "k={k} α={alpha}");
                }
            }
        }
    }

    #[test]
    fn echelon_rank_and_membership() {
        let vac = State::vacuum(2).unwrap();
        let a = vac.create(m(1, 1)).unwrap();
        let b = vac.create(m(1, 2)).unwrap();
        let mut ech = ExactEchelon::new(2);
        assert!(ech.insert(&a));
        assert!(!ech.insert(&a.scaled(&Amplitude::from_ratio(3, 7))));
        assert!(ech.insert(&b));
        assert_eq!(ech.rank(), 2);
        let combo = a
            .scaled(&Amplitude::from_ratio(2, 3))
            .add(&b.scaled(&Amplitude::from_int(-5)))
            .unwrap();
        assert!(ech.contains(&combo));
        assert!(!ech.contains(&vac));
    }

    #[test]
    fn basis_json_round_trip_and_determinism() {
        let label = IrrepLabel::new(3, &[1, 1]).unwrap();
        let basis = irrep_basis(&label).unwrap();
        let doc1 = serde_json::to_string(&basis_to_json(&label, &basis)).unwrap();
        let basis2 = irrep_basis(&label).unwrap();
        let doc2 = serde_json::to_string(&basis_to_json(&label, &basis2)).unwrap();
        assert_eq!(doc1, doc2);
        let (label_back, states_back) = basis_from_json(&serde_json::from_str(&doc1).unwrap()).unwrap();
        assert_eq!(label_back, label);
        assert_eq!(states_back, basis);
    }
}
