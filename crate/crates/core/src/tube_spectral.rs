//! Closed forms for the pointed tube.
//!
//! The tube Laplacian splits into one symmetric block on `(x, levels, y)`
//! and two identical antisymmetric `k x k` blocks. Both blocks are
//! tridiagonal, so their (pseudo)inverses have entrywise closed forms in
//! `s_j = sinh(j φ)` with `φ = arccosh(5/2)`. Everything below is evaluated
//! through `ln s_j`, which keeps large `k` from overflowing.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{tube_skeleton, tube_vertex};
use crate::resistance::{all_pairs_resistance, laplacian_matrix, profile_with, LaplacianSystem};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TubeError {
    #[error("tube parameter must be at least 1, got {0}")]
    KTooSmall(usize),
    #[error("index ({i}, {j}) out of range 1..={max}")]
    IndexOutOfRange { i: usize, j: usize, max: usize },
    #[error("level {level} out of range for {kind:?} on a tube with k = {k}")]
    LevelOutOfRange { kind: EdgeKind, level: usize, k: usize },
    #[error("tridiagonal spec is malformed: {0}")]
    BadSpec(String),
    #[error("weight vector missing")]
    MissingWeights,
    #[error("weight relation fails at row {row} by {residual:e}")]
    WeightRelation { row: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, TubeError>;

/// `arccosh(5/2)`.
pub fn phi() -> f64 {
    2.5f64.acosh()
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Sinh table and evaluators for one tube parameter.
#[derive(Debug, Clone)]
pub struct TubeClosedForm {
    k: usize,
    phi: f64,
    /// `ln s_a` for `a = 0..=k+2`; entry 0 is `-inf`.
    ln_s: Vec<f64>,
}

/// Which edge class a closed-form resistance refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    /// Within a level triangle.
    Cycle,
    /// Between level `j` and level `j + 1`.
    Path,
    /// From a cap to its end level.
    Cap,
}

/// A tube vertex by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TubeRole {
    Cap,
    Level(usize),
}

impl TubeClosedForm {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(TubeError::KTooSmall(k));
        }
        let phi = phi();
        let ln_s = (0..=k + 2)
            .map(|a| {
                if a == 0 {
                    f64::NEG_INFINITY
                } else {
                    let x = a as f64 * phi;
                    x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
                }
            })
            .collect();
        Ok(TubeClosedForm { k, phi, ln_s })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn ln_sinh(&self, a: usize) -> f64 {
        self.ln_s[a]
    }

    /// `s_a`; overflows to infinity past `a φ ≈ 710`.
    pub fn sinh(&self, a: usize) -> f64 {
        self.ln_s[a].exp()
    }

    /// `s_a s_b / (s_1 s_{k+1})` without forming either product.
    fn pair_ratio(&self, a: usize, b: usize) -> f64 {
        (self.ln_s[a] + self.ln_s[b] - self.ln_s[1] - self.ln_s[self.k + 1]).exp()
    }

    pub fn resistance(&self, kind: EdgeKind, level: usize) -> Result<f64> {
        let k = self.k;
        let bad = || TubeError::LevelOutOfRange { kind, level, k };
        match kind {
            EdgeKind::Cycle => {
                if level >= k {
                    return Err(bad());
                }
                Ok(2.0 * self.pair_ratio(level + 1, k - level))
            }
            EdgeKind::Path => {
                if k < 2 || level > k - 2 {
                    return Err(bad());
                }
                let j = level;
                let mix = self.pair_ratio(j + 1, k - j) + self.pair_ratio(j + 2, k - j - 1)
                    - 2.0 * self.pair_ratio(j + 1, k - j - 1);
                Ok(1.0 / 3.0 + 2.0 / 3.0 * mix)
            }
            EdgeKind::Cap => Ok(1.0 / 3.0 + 2.0 / 3.0 * self.cap_ratio()),
        }
    }

    /// `s_k / s_{k+1}`.
    fn cap_ratio(&self) -> f64 {
        (self.ln_s[self.k] - self.ln_s[self.k + 1]).exp()
    }

    /// The interior-level expression `7 cosh((2j+1-k)φ) / (2 s_1 s_{k+1})`,
    /// evaluable at any level including the two end levels.
    pub fn interior_formula(&self, level: usize) -> f64 {
        self.ln_interior_formula(level).exp()
    }

    pub fn ln_interior_formula(&self, level: usize) -> f64 {
        let x = (2.0 * level as f64 + 1.0 - self.k as f64) * self.phi;
        7f64.ln() + ln_cosh(x) - std::f64::consts::LN_2 - self.ln_s[1] - self.ln_s[self.k + 1]
    }

    /// End-level curvature assembled from the closed-form resistances.
    fn assembled_end_curvature(&self, level: usize) -> f64 {
        let cycle = self.resistance(EdgeKind::Cycle, level).unwrap_or(f64::NAN);
        let cap = self.resistance(EdgeKind::Cap, 0).unwrap_or(f64::NAN);
        if self.k == 1 {
            return 1.0 - 0.5 * (2.0 * cycle + 2.0 * cap);
        }
        let path_level = if level == 0 { 0 } else { self.k - 2 };
        let path = self.resistance(EdgeKind::Path, path_level).unwrap_or(f64::NAN);
        1.0 - 0.5 * (2.0 * cycle + path + cap)
    }

    pub fn curvature(&self, role: TubeRole) -> Result<f64> {
        let k = self.k;
        match role {
            TubeRole::Cap => Ok(0.5 - self.cap_ratio()),
            TubeRole::Level(j) if j >= k => Err(TubeError::LevelOutOfRange { kind: EdgeKind::Cycle, level: j, k }),
            TubeRole::Level(j) if j == 0 || j == k - 1 => Ok(self.assembled_end_curvature(j)),
            TubeRole::Level(j) => Ok(self.interior_formula(j)),
        }
    }

    /// Smallest curvature over all roles, as a natural log. Interior levels
    /// use the log form directly, so this stays finite for huge `k`.
    pub fn ln_min_curvature(&self) -> f64 {
        let mut best = (0.5 - self.cap_ratio()).ln();
        for j in 0..self.k {
            let ln = if j == 0 || j == self.k - 1 {
                self.assembled_end_curvature(j).ln()
            } else {
                self.ln_interior_formula(j)
            };
            best = best.min(ln);
        }
        best
    }

    /// Curvature of every tube vertex in `tube_skeleton` order.
    pub fn curvature_vector(&self) -> Vec<f64> {
        let mut out = vec![0.0; 3 * self.k + 2];
        let cap = self.curvature(TubeRole::Cap).unwrap_or(f64::NAN);
        out[0] = cap;
        out[1] = cap;
        for j in 0..self.k {
            let value = self.curvature(TubeRole::Level(j)).unwrap_or(f64::NAN);
            for i in 0..3 {
                out[tube_vertex(i, j)] = value;
            }
        }
        out
    }
}

pub fn closed_form_resistance(k: usize, kind: EdgeKind, level: usize) -> Result<f64> {
    TubeClosedForm::new(k)?.resistance(kind, level)
}

pub fn closed_form_curvature(k: usize, role: TubeRole) -> Result<f64> {
    TubeClosedForm::new(k)?.curvature(role)
}

/// `(Δ³)^{-1}_{ij}`, 1-indexed.
pub fn delta3_inverse_entry(i: usize, j: usize, k: usize) -> Result<f64> {
    if i < 1 || j < 1 || i > k || j > k {
        return Err(TubeError::IndexOutOfRange { i, j, max: k });
    }
    let t = TubeClosedForm::new(k)?;
    Ok(t.pair_ratio(i.min(j), k - i.max(j) + 1))
}

/// Weight vector spanning the kernel of the symmetric block.
pub fn delta0_weights(k: usize) -> Vec<f64> {
    let scale = 1.0 / ((3 * k + 2) as f64).sqrt();
    (0..k + 2).map(|i| if i == 0 || i == k + 1 { scale } else { 3f64.sqrt() * scale }).collect()
}

/// Which algebraic form of the symmetric-block pseudoinverse entry to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Delta0Form {
    /// Summed from the triple-sum formula: `h(i-1) + h(k+2-i) - (3k+2) c(i,j)`.
    Summed,
    /// `h(i-1) + h(k+2-j) - c(i,j)`; agrees with the summed form only on the
    /// diagonal.
    Printed,
}

/// `(Δ̃⁰)^†_{ij}`, 1-indexed over `1..=k+2`.
pub fn delta0_pinv_entry(i: usize, j: usize, k: usize) -> Result<f64> {
    delta0_pinv_entry_with(i, j, k, Delta0Form::Summed)
}

pub fn delta0_pinv_entry_with(i: usize, j: usize, k: usize, form: Delta0Form) -> Result<f64> {
    if k < 1 {
        return Err(TubeError::KTooSmall(k));
    }
    if i < 1 || j < 1 || i > k + 2 || j > k + 2 {
        return Err(TubeError::IndexOutOfRange { i, j, max: k + 2 });
    }
    let (i, j) = (i.min(j), i.max(j));
    let w = delta0_weights(k);
    let size = (3 * k + 2) as f64;
    let h = |x: f64| x * (6.0 * x * x - 3.0 * x - 1.0) / (2.0 * size);
    let (fi, fj, fk) = (i as f64, j as f64, k as f64);
    let c = (fj - fi) * (2.0 * (3.0 * fk + 4.0) - 3.0 * (fi + fj - 1.0)) / (2.0 * size);
    let bracket = match form {
        Delta0Form::Summed => h(fi - 1.0) + h(fk + 2.0 - fi) - size * c,
        Delta0Form::Printed => h(fi - 1.0) + h(fk + 2.0 - fj) - c,
    };
    Ok(w[i - 1] * w[j - 1] / 3.0 * bracket)
}

/// A symmetric tridiagonal matrix with diagonal `diag` and off-diagonal
/// entries `-off[i]`, plus an optional positive kernel weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalSpec {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weights: Option<Vec<f64>>,
}

impl TridiagonalSpec {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::from_diagonal(&DVector::from_column_slice(&self.diag));
        for (i, &c) in self.off.iter().enumerate() {
            m[(i, i + 1)] = -c;
            m[(i + 1, i)] = -c;
        }
        debug_assert_eq!(m.nrows(), n);
        m
    }

    /// Checks shape, positivity, normalization and the weight relation.
    pub fn validate(&self) -> Result<&[f64]> {
        let n = self.size();
        if n == 0 || self.off.len() + 1 != n {
            return Err(TubeError::BadSpec(format!("{} diagonal and {} off-diagonal entries", n, self.off.len())));
        }
        let w = self.weights.as_deref().ok_or(TubeError::MissingWeights)?;
        if w.len() != n || w.iter().any(|&x| x <= 0.0) {
            return Err(TubeError::BadSpec("weights must be positive, one per row".into()));
        }
        let norm: f64 = w.iter().map(|x| x * x).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(TubeError::BadSpec(format!("weights have squared norm {norm}")));
        }
        for row in 0..n {
            let right = if row + 1 < n { self.off[row] * w[row + 1] } else { 0.0 };
            let left = if row > 0 { self.off[row - 1] * w[row - 1] } else { 0.0 };
            let residual = (self.diag[row] * w[row] - right - left).abs();
            if residual > 1e-10 {
                return Err(TubeError::WeightRelation { row, residual });
            }
        }
        Ok(w)
    }
}

/// Pseudoinverse of a tridiagonal matrix with known kernel weights, by the
/// triple-sum entry formula.
pub fn tridiagonal_pinv(spec: &TridiagonalSpec) -> Result<DMatrix<f64>> {
    let w = spec.validate()?;
    let n = spec.size();
    // head[k] = Σ_{l<=k} w_l², tail[k] = Σ_{l>k} w_l² (0-indexed k).
    let mut head = vec![0.0; n];
    let mut acc = 0.0;
    for (k, &x) in w.iter().enumerate() {
        acc += x * x;
        head[k] = acc;
    }
    let tail: Vec<f64> = head.iter().map(|h| 1.0 - h).collect();
    let link: Vec<f64> = (0..n.saturating_sub(1)).map(|k| spec.off[k] * w[k] * w[k + 1]).collect();

    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        let base: f64 = (0..i).map(|k| head[k] * head[k] / link[k]).sum::<f64>()
            + (i..n - 1).map(|k| tail[k] * tail[k] / link[k]).sum::<f64>();
        let mut cross = 0.0;
        for j in i..n {
            if j > i {
                cross += tail[j - 1] / link[j - 1];
            }
            let value = w[i] * w[j] * (base - cross);
            out[(i, j)] = value;
            out[(j, i)] = value;
        }
    }
    Ok(out)
}

pub fn delta0_spec(k: usize) -> TridiagonalSpec {
    let n = k + 2;
    let mut diag = vec![2.0; n];
    diag[0] = 3.0;
    diag[n - 1] = 3.0;
    let mut off = vec![1.0; n - 1];
    off[0] = 3f64.sqrt();
    off[n - 2] = 3f64.sqrt();
    TridiagonalSpec { diag, off, weights: Some(delta0_weights(k)) }
}

/// The tube Laplacian's blocks and the orthogonal change of basis.
#[derive(Debug, Clone)]
pub struct TubeBlocks {
    pub delta0: DMatrix<f64>,
    pub delta3: DMatrix<f64>,
    pub basis: DMatrix<f64>,
}

impl TubeBlocks {
    /// `basis · diag(Δ̃⁰, Δ³, Δ³) · basisᵀ`, in tube vertex order.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let k = self.delta3.nrows();
        let n = 3 * k + 2;
        // Column coordinates: x -> 0, y -> 1, (level j, component s) -> 2 + 3j + s.
        let sym = |a: usize| match a {
            0 => 0,
            a if a == k + 1 => 1,
            a => 2 + 3 * (a - 1),
        };
        let mut block = DMatrix::zeros(n, n);
        for a in 0..k + 2 {
            for b in 0..k + 2 {
                block[(sym(a), sym(b))] = self.delta0[(a, b)];
            }
        }
        for s in 1..3 {
            for a in 0..k {
                for b in 0..k {
                    block[(2 + 3 * a + s, 2 + 3 * b + s)] = self.delta3[(a, b)];
                }
            }
        }
        &self.basis * block * self.basis.transpose()
    }
}

pub fn tube_blocks(k: usize) -> Result<TubeBlocks> {
    if k < 1 {
        return Err(TubeError::KTooSmall(k));
    }
    let delta0 = delta0_spec(k).matrix();
    let delta3 = TridiagonalSpec { diag: vec![5.0; k], off: vec![1.0; k - 1], weights: None }.matrix();
    let (r3, r2, r6) = (3f64.sqrt().recip(), 2f64.sqrt().recip(), 6f64.sqrt().recip());
    let u = [[r3, r2, r6], [r3, -r2, r6], [r3, 0.0, -2.0 * r6]];
    let n = 3 * k + 2;
    let mut basis = DMatrix::zeros(n, n);
    basis[(0, 0)] = 1.0;
    basis[(1, 1)] = 1.0;
    for j in 0..k {
        for (i, row) in u.iter().enumerate() {
            for (s, &value) in row.iter().enumerate() {
                basis[(tube_vertex(i, j), 2 + 3 * j + s)] = value;
            }
        }
    }
    Ok(TubeBlocks { delta0, delta3, basis })
}

/// Closed forms against the numeric solver for one `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeCheck {
    pub k: usize,
    pub resistance_error: f64,
    pub curvature_error: f64,
    pub reconstruction_error: f64,
    pub min_curvature: f64,
    pub cap_curvature: f64,
    /// Largest gap between the interior formula and the assembled value at
    /// the two end levels.
    pub end_level_gap: f64,
}

impl TubeCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.resistance_error <= tol
            && self.curvature_error <= tol
            && self.reconstruction_error < 1e-10
            && self.min_curvature > 0.0
            && (0.25..0.5).contains(&self.cap_curvature)
    }
}

pub fn verify_tube(k: usize) -> Result<TubeCheck> {
    let closed = TubeClosedForm::new(k)?;
    let sk = tube_skeleton(k).map_err(|_| TubeError::KTooSmall(k))?;
    let g = sk.graph();
    let sys = LaplacianSystem::new(g).expect("tubes are connected");
    let r = all_pairs_resistance(&sys);
    let profile = profile_with(&sys, g);

    let mut resistance_error: f64 = 0.0;
    let mut check = |value: f64, u: usize, v: usize| {
        resistance_error = resistance_error.max((value - r[(u, v)]).abs());
    };
    for j in 0..k {
        let cyc = closed.resistance(EdgeKind::Cycle, j)?;
        for i in 0..3 {
            check(cyc, tube_vertex(i, j), tube_vertex(i + 1, j));
            if j + 1 < k {
                check(closed.resistance(EdgeKind::Path, j)?, tube_vertex(i, j), tube_vertex(i, j + 1));
            }
        }
    }
    let cap = closed.resistance(EdgeKind::Cap, 0)?;
    for i in 0..3 {
        check(cap, 0, tube_vertex(i, 0));
        check(cap, 1, tube_vertex(i, k - 1));
    }

    let closed_kappa = closed.curvature_vector();
    let curvature_error = closed_kappa.iter().zip(&profile.per_vertex).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let min_curvature = closed_kappa.iter().copied().fold(f64::INFINITY, f64::min);
    let reconstruction_error = (tube_blocks(k)?.reconstruct() - laplacian_matrix(g)).amax();
    let end_level_gap = [0, k - 1]
        .iter()
        .map(|&j| (closed.interior_formula(j) - closed.assembled_end_curvature(j)).abs())
        .fold(0.0, f64::max);

    Ok(TubeCheck {
        k,
        resistance_error,
        curvature_error,
        reconstruction_error,
        min_curvature,
        cap_curvature: closed.curvature(TubeRole::Cap)?,
        end_level_gap,
    })
}
