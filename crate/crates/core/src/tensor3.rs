//! Dense tensor algebra fixed to dimension 3.
//!
//! Index conventions used throughout the crate:
//!
//! * [`Mat3`] stores a (1,1) tensor `M_i^j` as `m[i][j]` (lower index selects
//!   the row). The action on a vector is `(Mx)^k = M_j^k x^j`.
//! * [`Rank3`] stores `T^s_{ik}` as `t[s][i][k]`.
//! * [`Rank4`] stores `R^h_{ijk}` (mixed) or `R_{hijk}` (lower) as
//!   `r[h][i][j][k]`.

use std::ops::{Add, Mul, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("singular matrix (det = {det:e})")]
    Singular { det: f64 },
    #[error("expected a {expected:?} rank-4 tensor, got {found:?}")]
    Variance { expected: Variance, found: Variance },
}

/// Position of `(i, j)` inside the packed upper triangle.
#[inline]
pub fn sym_index(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        (2, 2) => 5,
        _ => panic!("index out of range for dimension 3: ({i}, {j})"),
    }
}

/// Symmetric 3×3 matrix stored as its six independent entries.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SymMat3 {
    entries: [f64; 6],
}

impl SymMat3 {
    pub const fn zero() -> Self {
        Self { entries: [0.0; 6] }
    }

    pub const fn identity() -> Self {
        Self {
            entries: [1.0, 0.0, 0.0, 1.0, 0.0, 1.0],
        }
    }

    /// Packed entries in the order (11, 12, 13, 22, 23, 33).
    pub const fn from_packed(entries: [f64; 6]) -> Self {
        Self { entries }
    }

    /// Builds from a closure evaluated on the upper triangle only.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in i..3 {
                m.entries[sym_index(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Circulant matrix with `diag` on the diagonal and `off` everywhere else.
    pub fn circulant(diag: f64, off: f64) -> Self {
        Self {
            entries: [diag, off, off, diag, off, diag],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[sym_index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[sym_index(i, j)] = value;
    }

    pub fn packed(&self) -> &[f64; 6] {
        &self.entries
    }

    pub fn to_mat3(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.get(i, j))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            entries: self.entries.map(|e| e * s),
        }
    }

    pub fn det(&self) -> f64 {
        let [a, b, c, d, e, f] = self.entries;
        a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)
    }

    pub fn trace(&self) -> f64 {
        self.entries[0] + self.entries[3] + self.entries[5]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Inverse via the adjugate. Fails when `|det| <= 1e-12 * max|entry|^3`.
    pub fn invert(&self) -> Result<Self, TensorError> {
        let det = self.det();
        let scale = self.max_abs();
        if !(det.abs() > 1e-12 * scale * scale * scale) || !det.is_finite() {
            return Err(TensorError::Singular { det });
        }
        let [a, b, c, d, e, f] = self.entries;
        let inv_det = 1.0 / det;
        Ok(Self {
            entries: [
                (d * f - e * e) * inv_det,
                (c * e - b * f) * inv_det,
                (b * e - c * d) * inv_det,
                (a * f - c * c) * inv_det,
                (b * c - a * e) * inv_det,
                (a * d - b * b) * inv_det,
            ],
        })
    }

    /// Bilinear form `x^i m_ij y^j`.
    pub fn form(&self, x: &[f64; 3], y: &[f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += x[i] * self.get(i, j) * y[j];
            }
        }
        s
    }

    /// Full contraction `m_ij n^ij`.
    pub fn contract(&self, other: &SymMat3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.get(i, j) * other.get(i, j);
            }
        }
        s
    }
}

impl Add for SymMat3 {
    type Output = SymMat3;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.entries.iter_mut().zip(rhs.entries) {
            *o += r;
        }
        out
    }
}

impl Sub for SymMat3 {
    type Output = SymMat3;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.entries.iter_mut().zip(rhs.entries) {
            *o -= r;
        }
        out
    }
}

/// General 3×3 matrix; holds (1,1) tensors and products of symmetric ones.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const fn zero() -> Self {
        Mat3([[0.0; 3]; 3])
    }

    pub const fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = f(i, j);
            }
        }
        Mat3(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Symmetric part, packed.
    pub fn sym_part(&self) -> SymMat3 {
        SymMat3::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]))
    }

    /// Image of a contravariant vector: `(Mx)^k = M_j^k x^j`.
    pub fn act(&self, x: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| self.0[j][k] * x[j]).sum();
        }
        out
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl From<SymMat3> for Mat3 {
    fn from(m: SymMat3) -> Mat3 {
        m.to_mat3()
    }
}

/// Rank-3 tensor with one upper and two lower indices, `t[s][i][k] = T^s_{ik}`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Rank3(pub [[[f64; 3]; 3]; 3]);

impl Rank3 {
    pub const fn zero() -> Self {
        Rank3([[[0.0; 3]; 3]; 3])
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zero();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    t.0[a][b][c] = f(a, b, c);
                }
            }
        }
        t
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.0[a][b][c]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().flatten().flatten().copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest violation of symmetry in the two lower indices.
    pub fn lower_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for s in 0..3 {
            for i in 0..3 {
                for k in 0..3 {
                    m = m.max((self.0[s][i][k] - self.0[s][k][i]).abs());
                }
            }
        }
        m
    }
}

impl Sub for Rank3 {
    type Output = Rank3;
    fn sub(self, rhs: Rank3) -> Rank3 {
        Rank3::from_fn(|a, b, c| self.0[a][b][c] - rhs.0[a][b][c])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `R^h_{ijk}`
    Mixed,
    /// `R_{hijk}`
    Lower,
}

/// Rank-4 tensor carrying its variance at run time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rank4 {
    pub data: [[[[f64; 3]; 3]; 3]; 3],
    pub variance: Variance,
}

impl Rank4 {
    pub const fn zero(variance: Variance) -> Self {
        Self {
            data: [[[[0.0; 3]; 3]; 3]; 3],
            variance,
        }
    }

    pub fn from_fn(variance: Variance, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut r = Self::zero(variance);
        for h in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        r.data[h][i][j][k] = f(h, i, j, k);
                    }
                }
            }
        }
        r
    }

    #[inline]
    pub fn get(&self, h: usize, i: usize, j: usize, k: usize) -> f64 {
        self.data[h][i][j][k]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().flatten().flatten().flatten().copied()
    }

    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Entrywise max difference; variances are not compared.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn expect(&self, expected: Variance) -> Result<(), TensorError> {
        if self.variance == expected {
            Ok(())
        } else {
            Err(TensorError::Variance {
                expected,
                found: self.variance,
            })
        }
    }

    /// Evaluates `R(x, y, z, u) = R_{hijk} x^h y^i z^j u^k` on a lower tensor.
    pub fn eval(&self, x: &[f64; 3], y: &[f64; 3], z: &[f64; 3], u: &[f64; 3]) -> Result<f64, TensorError> {
        self.expect(Variance::Lower)?;
        let mut s = 0.0;
        for h in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        s += self.data[h][i][j][k] * x[h] * y[i] * z[j] * u[k];
                    }
                }
            }
        }
        Ok(s)
    }
}

/// `R_{hijk} = g_{ha} R^a_{ijk}`.
pub fn lower_riemann(r: &Rank4, g: &SymMat3) -> Result<Rank4, TensorError> {
    r.expect(Variance::Mixed)?;
    Ok(Rank4::from_fn(Variance::Lower, |h, i, j, k| {
        (0..3).map(|a| g.get(h, a) * r.data[a][i][j][k]).sum()
    }))
}

/// `R^h_{ijk} = g^{ha} R_{aijk}`.
pub fn raise_riemann(r: &Rank4, g_inv: &SymMat3) -> Result<Rank4, TensorError> {
    r.expect(Variance::Lower)?;
    Ok(Rank4::from_fn(Variance::Mixed, |h, i, j, k| {
        (0..3).map(|a| g_inv.get(h, a) * r.data[a][i][j][k]).sum()
    }))
}

/// Scale-free violations of the algebraic curvature symmetries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryDefects {
    /// max |½(R_hijk + R_hikj)|
    pub antisym_last_pair: f64,
    /// max |½(R_hijk + R_ihjk)|
    pub antisym_first_pair: f64,
    /// max |½(R_hijk − R_jkhi)|
    pub pair_sym: f64,
}

impl SymmetryDefects {
    pub fn max(&self) -> f64 {
        self.antisym_last_pair
            .max(self.antisym_first_pair)
            .max(self.pair_sym)
    }
}

pub fn symmetry_defects(r: &Rank4) -> Result<SymmetryDefects, TensorError> {
    r.expect(Variance::Lower)?;
    let norm = r.max_abs() + 1e-30;
    let (mut last, mut first, mut pair) = (0.0f64, 0.0f64, 0.0f64);
    let d = &r.data;
    for h in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    last = last.max((0.5 * (d[h][i][j][k] + d[h][i][k][j])).abs());
                    first = first.max((0.5 * (d[h][i][j][k] + d[i][h][j][k])).abs());
                    pair = pair.max((0.5 * (d[h][i][j][k] - d[j][k][h][i])).abs());
                }
            }
        }
    }
    Ok(SymmetryDefects {
        antisym_last_pair: last / norm,
        antisym_first_pair: first / norm,
        pair_sym: pair / norm,
    })
}

/// Largest cyclic sum `R^h_{ijk} + R^h_{jki} + R^h_{kij}` (any variance).
pub fn first_bianchi_residual(r: &Rank4) -> f64 {
    let d = &r.data;
    let mut m: f64 = 0.0;
    for h in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m = m.max((d[h][i][j][k] + d[h][j][k][i] + d[h][k][i][j]).abs());
                }
            }
        }
    }
    m
}

/// Normalized mismatch `max|a − b| / (1 + max(|a|, |b|))`.
pub fn rel_defect(diff: f64, scale_a: f64, scale_b: f64) -> f64 {
    diff / (1.0 + scale_a.max(scale_b))
}
