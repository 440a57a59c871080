//! SU(N) group-manifold coordinates: N−1 orthonormal complex N-vectors,
//! completion to a special unitary by the wedge complement, Haar sampling,
//! and the group action on coordinates.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::liealg::GeneratorBasis;
use crate::linalg::{vdot, vnorm, vscale, vsub, CMat, C64, I};

#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("group rank must be at least 2, got {0}")]
    InvalidRank(u32),
    #[error("expected {expected} vectors of length {len}, got {got}")]
    BadShape { expected: usize, len: usize, got: String },
    #[error("input vectors are not orthonormal (residual {0:.3e})")]
    NotOrthonormal(f64),
    #[error("CSV frame encoding is malformed: {0}")]
    Parse(String),
}

/// Point on the SU(N) coset: N−1 orthonormal complex N-vectors z\[1..N−1\].
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldPoint {
    n: u32,
    z: Vec<Vec<C64>>,
}

/// A full special unitary assembled from a manifold point.
#[derive(Clone, Debug)]
pub struct UnitaryFrame {
    pub u: CMat,
}

impl ManifoldPoint {
    /// Validate shape and orthonormality (residual ≤ 1e-10) and wrap.
    pub fn new(n: u32, z: Vec<Vec<C64>>) -> Result<Self, ManifoldError> {
        if n < 2 {
            return Err(ManifoldError::InvalidRank(n));
        }
        let want = (n - 1) as usize;
        if z.len() != want || z.iter().any(|v| v.len() != n as usize) {
            return Err(ManifoldError::BadShape {
                expected: want,
                len: n as usize,
                got: format!("{} vectors of lengths {:?}", z.len(), z.iter().map(Vec::len).collect::<Vec<_>>()),
            });
        }
        let p = Self { n, z };
        let res = p.orthonormality_residual();
        if res > 1e-10 {
            return Err(ManifoldError::NotOrthonormal(res));
        }
        Ok(p)
    }

    pub fn group_n(&self) -> u32 {
        self.n
    }

    /// z\[i\] for 1-based plet index i.
    pub fn vector(&self, i: u8) -> &[C64] {
        &self.z[(i - 1) as usize]
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.z
    }

    /// max |z̄\[a\]·z\[b\] − δ_ab|.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (a, za) in self.z.iter().enumerate() {
            for (b, zb) in self.z.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((vdot(za, zb) - want).norm());
            }
        }
        worst
    }

    /// CSV rows (i, α, re, im), one line per component.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,alpha,re,im\n");
        for (i, zi) in self.z.iter().enumerate() {
            for (alpha, c) in zi.iter().enumerate() {
                out.push_str(&format!("{},{},{:e},{:e}\n", i + 1, alpha + 1, c.re, c.im));
            }
        }
        out
    }

    pub fn from_csv(n: u32, text: &str) -> Result<Self, ManifoldError> {
        if n < 2 {
            return Err(ManifoldError::InvalidRank(n));
        }
        let mut z = vec![vec![C64::new(0.0, 0.0); n as usize]; (n - 1) as usize];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with("i,") {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(ManifoldError::Parse(format!("line {}: expected 4 fields", lineno + 1)));
            }
            let bad = |what: &str| ManifoldError::Parse(format!("line {}: bad {what}", lineno + 1));
            let i: usize = fields[0].parse().map_err(|_| bad("plet index"))?;
            let alpha: usize = fields[1].parse().map_err(|_| bad("color index"))?;
            let re: f64 = fields[2].parse().map_err(|_| bad("re"))?;
            let im: f64 = fields[3].parse().map_err(|_| bad("im"))?;
            if i == 0 || i >= n as usize || alpha == 0 || alpha > n as usize {
                return Err(bad("index range"));
            }
            z[i - 1][alpha - 1] = C64::new(re, im);
        }
        Self::new(n, z)
    }
}

/// The wedge complement of N−1 orthonormal vectors: component j is the
/// cofactor conj((−1)^{j+N} det M_ĵ) where M has the inputs as columns and
/// M_ĵ drops row j. For orthonormal inputs the result is the unique unit
/// vector completing them to a special unitary (det = +1); it equals the
/// generalized cross product of the conjugated inputs up to that sign
/// convention.
pub fn wedge_complement(z: &[Vec<C64>]) -> Result<Vec<C64>, ManifoldError> {
    let cols = z.len();
    let n = cols + 1;
    if z.iter().any(|v| v.len() != n) {
        return Err(ManifoldError::BadShape {
            expected: cols,
            len: n,
            got: format!("lengths {:?}", z.iter().map(Vec::len).collect::<Vec<_>>()),
        });
    }
    let mut worst = 0.0_f64;
    for (a, za) in z.iter().enumerate() {
        for (b, zb) in z.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((vdot(za, zb) - want).norm());
        }
    }
    if worst > 1e-10 {
        return Err(ManifoldError::NotOrthonormal(worst));
    }

    let mut w = vec![C64::new(0.0, 0.0); n];
    for (j, slot) in w.iter_mut().enumerate() {
        let mut minor = CMat::zeros(n - 1, cols);
        let mut row = 0;
        for r in 0..n {
            if r == j {
                continue;
            }
            for (c, zc) in z.iter().enumerate() {
                minor[(row, c)] = zc[r];
            }
            row += 1;
        }
        let sign = if (j + 1 + n).is_multiple_of(2) { 1.0 } else { -1.0 };
        *slot = (minor.det() * sign).conj();
    }
    Ok(w)
}

/// Columns z\[1\], …, z\[N−1\], wedge complement; det = +1 by construction.
pub fn assemble_unitary(p: &ManifoldPoint) -> Result<UnitaryFrame, ManifoldError> {
    let w = wedge_complement(p.vectors())?;
    let mut cols: Vec<Vec<C64>> = p.vectors().to_vec();
    cols.push(w);
    Ok(UnitaryFrame {
        u: CMat::from_columns(&cols),
    })
}

impl UnitaryFrame {
    /// max(‖U†U − I‖_max, |det U − 1|).
    pub fn special_unitarity_residual(&self) -> f64 {
        let n = self.u.nrows();
        let gram = self.u.adjoint().mul(&self.u).sub(&CMat::identity(n)).max_abs();
        let det = (self.u.det() - C64::new(1.0, 0.0)).norm();
        gram.max(det)
    }
}

/// Mix a base seed with a sample index into a fresh generator seed
/// (splitmix64 finalizer, same on every platform).
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut x = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // Box-Muller; u1 bounded away from 0 so the log stays finite.
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let phi = 2.0 * std::f64::consts::PI * u2;
    (r * phi.cos(), r * phi.sin())
}

/// Haar-distributed frame: the first N−1 columns of a Haar-random special
/// unitary. A complex Ginibre matrix is orthonormalized column by column
/// with positive-real normalization (the unique positive-diagonal QR, which
/// makes the distribution exactly Haar on U(N)); the leftover overall phase
/// is pushed into the last column, which the frame never exposes.
/// Deterministic in (N, seed).
pub fn haar_sample(n: u32, seed: u64) -> ManifoldPoint {
    assert!(n >= 2, "group rank must be at least 2");
    let dim = n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let col: Vec<C64> = (0..dim)
            .map(|_| {
                let (re, im) = gaussian_pair(&mut rng);
                C64::new(re, im)
            })
            .collect();
        cols.push(col);
    }
    // Gram-Schmidt with one reorthogonalization pass.
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let c = vdot(&cols[i], &cols[j]);
                let proj = vscale(&cols[i], c);
                cols[j] = vsub(&cols[j], &proj);
            }
        }
        let norm = vnorm(&cols[j]);
        cols[j] = vscale(&cols[j], C64::new(1.0 / norm, 0.0));
    }
    // det lands on the last column: the first N−1 stay Haar-correct.
    let det = CMat::from_columns(&cols).det();
    let fix = det.conj() / det.norm();
    let last = cols.len() - 1;
    cols[last] = vscale(&cols[last], fix);
    ManifoldPoint {
        n,
        z: cols[..dim - 1].to_vec(),
    }
}

/// Apply exp(i Σ_a θ^a Λ^a/2) to every frame vector.
pub fn rotate_point(
    p: &ManifoldPoint,
    theta: &[f64],
    gens: &GeneratorBasis,
) -> ManifoldPoint {
    let u = group_matrix(theta, gens);
    let z = p.vectors().iter().map(|zi| u.mul_vec(zi)).collect();
    ManifoldPoint { n: p.n, z }
}

/// exp(i Σ_a θ^a Λ^a/2) as an N×N matrix.
pub fn group_matrix(theta: &[f64], gens: &GeneratorBasis) -> CMat {
    let n = gens.group_n() as usize;
    assert_eq!(theta.len(), gens.count(), "theta length must be N²−1");
    let mut h = CMat::zeros(n, n);
    for (a, t) in theta.iter().enumerate() {
        if *t != 0.0 {
            h = h.add(&gens.lambda(a + 1).expect("index in range").mat.scale(C64::new(t * 0.5, 0.0)));
        }
    }
    h.scale(I).exp()
}
