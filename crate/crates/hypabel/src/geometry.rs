//! Ambient vectors, the indefinite Hermitian form, and nilpotent orbits.
//!
//! Coordinates: an F-vector in `F^{p+q+2}` is stored as `d * (p+q+2)` reals.
//! F-coordinate `j` (0-based) occupies the block `[j*d, (j+1)*d)`, imaginary
//! parts first, real part in the last slot of the block. The form is
//! `[x, y] = sum_{j <= p} x_j conj(y_j) - sum_{j > p} x_j conj(y_j)`.
//!
//! The point `a_s exp(N(free, tail, w)) x0` of the horocycle orbit has the
//! closed form implemented in [`orbit_point`]; [`matrix_oracle`] recomputes
//! it the slow way (matrix exponential truncated at the nilpotency order,
//! then matrix products over F) and exists to cross-check the closed form
//! and the field arithmetic.

use crate::params::SpaceParams;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("vector is not timelike: [x, x] = {0} >= 0")]
    NonTimelike(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// One field element, real part in slot `d - 1`, unused slots zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FValue {
    pub c: [f64; 4],
}

impl FValue {
    pub fn zero() -> FValue {
        FValue { c: [0.0; 4] }
    }

    pub fn real(x: f64, d: usize) -> FValue {
        let mut c = [0.0; 4];
        c[d - 1] = x;
        FValue { c }
    }

    /// Build from a coordinate block (imaginary parts, then real part).
    pub fn from_block(block: &[f64]) -> FValue {
        let mut c = [0.0; 4];
        c[..block.len()].copy_from_slice(block);
        FValue { c }
    }

    pub fn re(&self, d: usize) -> f64 {
        self.c[d - 1]
    }

    pub fn conj(&self, d: usize) -> FValue {
        let mut c = self.c;
        for item in c.iter_mut().take(d - 1) {
            *item = -*item;
        }
        FValue { c }
    }

    pub fn neg(&self) -> FValue {
        FValue {
            c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]],
        }
    }

    pub fn add(&self, rhs: &FValue) -> FValue {
        let mut c = [0.0; 4];
        for k in 0..4 {
            c[k] = self.c[k] + rhs.c[k];
        }
        FValue { c }
    }

    pub fn scale(&self, a: f64) -> FValue {
        FValue {
            c: [a * self.c[0], a * self.c[1], a * self.c[2], a * self.c[3]],
        }
    }

    pub fn norm2(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum()
    }

    /// Field product. Real and complex cases are the leading minors of the
    /// quaternion table with slots (i, j, k, re) truncated to d.
    pub fn mul(&self, rhs: &FValue, d: usize) -> FValue {
        match d {
            1 => FValue {
                c: [self.c[0] * rhs.c[0], 0.0, 0.0, 0.0],
            },
            2 => {
                let (ai, ar) = (self.c[0], self.c[1]);
                let (bi, br) = (rhs.c[0], rhs.c[1]);
                FValue {
                    c: [ar * bi + ai * br, ar * br - ai * bi, 0.0, 0.0],
                }
            }
            4 => {
                let (x1, y1, z1, w1) = (self.c[0], self.c[1], self.c[2], self.c[3]);
                let (x2, y2, z2, w2) = (rhs.c[0], rhs.c[1], rhs.c[2], rhs.c[3]);
                FValue {
                    c: [
                        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
                        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                    ],
                }
            }
            _ => unreachable!("d is 1, 2 or 4"),
        }
    }
}

/// A vector in the ambient real coordinates of a fixed space.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientVector {
    coords: Vec<f64>,
    pos_dim: usize,
    d: usize,
}

impl AmbientVector {
    pub fn zero(sp: &SpaceParams) -> AmbientVector {
        AmbientVector {
            coords: vec![0.0; sp.ambient_real_dim()],
            pos_dim: sp.pos_real_dim(),
            d: sp.d(),
        }
    }

    pub fn from_coords(sp: &SpaceParams, coords: Vec<f64>) -> Result<AmbientVector, GeometryError> {
        if coords.len() != sp.ambient_real_dim() {
            return Err(GeometryError::DimensionMismatch(format!(
                "expected {} coords, got {}",
                sp.ambient_real_dim(),
                coords.len()
            )));
        }
        Ok(AmbientVector {
            coords,
            pos_dim: sp.pos_real_dim(),
            d: sp.d(),
        })
    }

    /// The base point x0 = (0, ..., 0, 1).
    pub fn base_point(sp: &SpaceParams) -> AmbientVector {
        let mut x = AmbientVector::zero(sp);
        let n = x.coords.len();
        x.coords[n - 1] = 1.0;
        x
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Real coordinates of F-coordinate `j` (0-based).
    pub fn block(&self, j: usize) -> &[f64] {
        &self.coords[j * self.d..(j + 1) * self.d]
    }

    pub fn f_coord(&self, j: usize) -> FValue {
        FValue::from_block(self.block(j))
    }

    pub fn set_f_coord(&mut self, j: usize, v: &FValue) {
        self.coords[j * self.d..(j + 1) * self.d].copy_from_slice(&v.c[..self.d]);
    }

    /// Squared norm of the positive block.
    pub fn pos_norm2(&self) -> f64 {
        self.coords[..self.pos_dim].iter().map(|x| x * x).sum()
    }

    /// Squared norm of the negative block.
    pub fn neg_norm2(&self) -> f64 {
        self.coords[self.pos_dim..].iter().map(|x| x * x).sum()
    }

    /// The form paired with itself; real by symmetry.
    pub fn hermitian_self(&self) -> f64 {
        self.pos_norm2() - self.neg_norm2()
    }

    /// Full F-valued pairing `[x, y] = sum +- conj(x_j) y_j`, conjugate-linear
    /// in `self`. With matrices acting on the left and field scalars on the
    /// right, this is the pairing the isometry group preserves (for the
    /// quaternions the two conjugation placements genuinely differ; self-
    /// pairings and real parts agree either way).
    pub fn hermitian_pair(&self, y: &AmbientVector) -> FValue {
        let d = self.d;
        let n = self.coords.len() / d;
        let mut acc = FValue::zero();
        for j in 0..n {
            let term = self.f_coord(j).conj(d).mul(&y.f_coord(j), d);
            let sign = if j * d < self.pos_dim { 1.0 } else { -1.0 };
            acc = acc.add(&term.scale(sign));
        }
        acc
    }

    /// `sinh^2` of the radial coordinate: `|x+|^2 / (-[x, x])`.
    pub fn sigma(&self) -> Result<f64, GeometryError> {
        let h = self.hermitian_self();
        if h >= 0.0 {
            return Err(GeometryError::NonTimelike(h));
        }
        Ok(self.pos_norm2() / -h)
    }

    /// Distance to the base orbit: `s >= 0` with `sinh^2 s = sigma`.
    pub fn radial_coordinate(&self) -> Result<f64, GeometryError> {
        Ok(self.sigma()?.sqrt().asinh())
    }

    /// Rescale onto the quadric `[x, x] = -1`.
    pub fn normalize(&self) -> Result<AmbientVector, GeometryError> {
        let h = self.hermitian_self();
        if h >= 0.0 {
            return Err(GeometryError::NonTimelike(h));
        }
        let mut out = self.clone();
        let inv = 1.0 / (-h).sqrt();
        for c in out.coords.iter_mut() {
            *c *= inv;
        }
        Ok(out)
    }

    /// Right multiplication of every F-coordinate by a fixed field element
    /// (used to probe invariance under the projective identification).
    pub fn scale_by_field(&self, u: &FValue) -> AmbientVector {
        let d = self.d;
        let n = self.coords.len() / d;
        let mut out = self.clone();
        for j in 0..n {
            let prod = self.f_coord(j).mul(u, d);
            out.set_f_coord(j, &prod);
        }
        out
    }
}

/// Coordinates of a nilpotent orbit element: a free block of dimension
/// `d * min(p, q)`, a tail of dimension `d * |p - q|`, and the imaginary
/// part `w` of dimension `d - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentParam {
    pub free: Vec<f64>,
    pub tail: Vec<f64>,
    pub w: Vec<f64>,
}

impl NilpotentParam {
    pub fn zero(sp: &SpaceParams) -> NilpotentParam {
        NilpotentParam {
            free: vec![0.0; sp.free_dim()],
            tail: vec![0.0; sp.tail_dim()],
            w: vec![0.0; sp.w_dim()],
        }
    }

    pub fn validate(&self, sp: &SpaceParams) -> Result<(), GeometryError> {
        if self.free.len() != sp.free_dim()
            || self.tail.len() != sp.tail_dim()
            || self.w.len() != sp.w_dim()
        {
            return Err(GeometryError::DimensionMismatch(format!(
                "nilpotent parameter dims ({}, {}, {}) do not match space dims ({}, {}, {})",
                self.free.len(),
                self.tail.len(),
                self.w.len(),
                sp.free_dim(),
                sp.tail_dim(),
                sp.w_dim()
            )));
        }
        Ok(())
    }

    /// From a flat slice ordered (free, tail, w).
    pub fn from_flat(sp: &SpaceParams, flat: &[f64]) -> NilpotentParam {
        let (f, rest) = flat.split_at(sp.free_dim());
        let (t, w) = rest.split_at(sp.tail_dim());
        NilpotentParam {
            free: f.to_vec(),
            tail: t.to_vec(),
            w: w.to_vec(),
        }
    }
}

fn chunk_f(values: &[f64], d: usize) -> Vec<FValue> {
    values.chunks(d).map(FValue::from_block).collect()
}

/// Resolve the constrained pair (u, v) from the free coordinates. For
/// p >= q the free block is v and `u = (-conj(reverse(v)), tail)`; for
/// p < q the free block is u and `v = (-conj(reverse(u)), tail)`.
pub fn materialize_uv(sp: &SpaceParams, n: &NilpotentParam) -> (Vec<FValue>, Vec<FValue>) {
    let d = sp.d();
    let tail = chunk_f(&n.tail, d);
    if sp.p >= sp.q {
        let v = chunk_f(&n.free, d);
        let mut u: Vec<FValue> = v.iter().rev().map(|x| x.conj(d).neg()).collect();
        u.extend(tail);
        (u, v)
    } else {
        let u = chunk_f(&n.free, d);
        let mut v: Vec<FValue> = u.iter().rev().map(|x| x.conj(d).neg()).collect();
        v.extend(tail);
        (u, v)
    }
}

/// Sum of `|u_i|^2 - |v_j|^2`; by the constraint this equals `+|tail|^2`
/// for p >= q and `-|tail|^2` for p < q.
pub fn orbit_q(sp: &SpaceParams, n: &NilpotentParam) -> f64 {
    let sign = if sp.p >= sp.q { 1.0 } else { -1.0 };
    sign * n.tail.iter().map(|x| x * x).sum::<f64>()
}

/// Closed form of the orbit point `a_s exp(N(n)) x0`.
pub fn orbit_point(sp: &SpaceParams, s: f64, n: &NilpotentParam) -> Result<AmbientVector, GeometryError> {
    n.validate(sp)?;
    let d = sp.d();
    let (u, v) = materialize_uv(sp, n);
    let q_half = 0.5 * orbit_q(sp, n);
    let es = s.exp();
    let mut w = FValue::zero();
    w.c[..d - 1].copy_from_slice(&n.w);
    let mut x = AmbientVector::zero(sp);
    let mut first = w.scale(es);
    first.c[d - 1] = s.sinh() + es * q_half;
    x.set_f_coord(0, &first);
    for (i, ui) in u.iter().enumerate() {
        x.set_f_coord(1 + i, &ui.conj(d));
    }
    for (j, vj) in v.iter().enumerate() {
        x.set_f_coord(1 + sp.p + j, &vj.conj(d).neg());
    }
    let mut last = w.scale(es);
    last.c[d - 1] = s.cosh() + es * q_half;
    x.set_f_coord(sp.p + sp.q + 1, &last);
    Ok(x)
}

/// F-matrix as rows of FValues.
type FMatrix = Vec<Vec<FValue>>;

fn f_identity(n: usize, d: usize) -> FMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { FValue::real(1.0, d) } else { FValue::zero() })
                .collect()
        })
        .collect()
}

fn f_mat_mul(a: &FMatrix, b: &FMatrix, d: usize) -> FMatrix {
    let n = a.len();
    let mut out = vec![vec![FValue::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm2() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(&aik.mul(&b[k][j], d));
            }
        }
    }
    out
}

fn f_mat_add(a: &FMatrix, b: &FMatrix, scale: f64) -> FMatrix {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb.iter())
                .map(|(x, y)| x.add(&y.scale(scale)))
                .collect()
        })
        .collect()
}

/// The nilpotent generator as an F-matrix in ambient F-coordinates.
pub fn nilpotent_matrix(sp: &SpaceParams, n: &NilpotentParam) -> FMatrix {
    let d = sp.d();
    let nf = sp.f_coords();
    let (u, v) = materialize_uv(sp, n);
    let mut w = FValue::zero();
    w.c[..d - 1].copy_from_slice(&n.w);
    let mut m = vec![vec![FValue::zero(); nf]; nf];
    let last = nf - 1;
    m[0][0] = w.neg();
    m[0][last] = w;
    m[last][0] = w.neg();
    m[last][last] = w;
    for (i, ui) in u.iter().enumerate() {
        m[0][1 + i] = *ui;
        m[last][1 + i] = *ui;
        m[1 + i][0] = ui.conj(d).neg();
        m[1 + i][last] = ui.conj(d);
    }
    for (j, vj) in v.iter().enumerate() {
        m[0][1 + sp.p + j] = *vj;
        m[last][1 + sp.p + j] = *vj;
        m[1 + sp.p + j][0] = vj.conj(d);
        m[1 + sp.p + j][last] = vj.conj(d).neg();
    }
    m
}

/// Orbit point recomputed through matrix products: a truncated exponential
/// `I + N + N^2/2` followed by the boost `a_s`, applied to the base point.
/// Slow and allocation-heavy on purpose; this is the independent oracle for
/// [`orbit_point`].
pub fn matrix_oracle(sp: &SpaceParams, s: f64, n: &NilpotentParam) -> Result<AmbientVector, GeometryError> {
    n.validate(sp)?;
    let nf = sp.f_coords();
    let m = orbit_matrix(sp, s, n);
    // Applying to x0 picks the last column.
    let mut x = AmbientVector::zero(sp);
    for j in 0..nf {
        x.set_f_coord(j, &m[j][nf - 1]);
    }
    Ok(x)
}

/// Apply an F-matrix to an ambient vector (for form-preservation tests).
pub fn apply_f_matrix(sp: &SpaceParams, m: &FMatrix, x: &AmbientVector) -> AmbientVector {
    let d = sp.d();
    let nf = sp.f_coords();
    let mut out = AmbientVector::zero(sp);
    for i in 0..nf {
        let mut acc = FValue::zero();
        for j in 0..nf {
            acc = acc.add(&m[i][j].mul(&x.f_coord(j), d));
        }
        out.set_f_coord(i, &acc);
    }
    out
}

/// Truncated exponential of the nilpotent generator composed with the boost,
/// as one F-matrix (exposed for the oracle tests).
pub fn orbit_matrix(sp: &SpaceParams, s: f64, n: &NilpotentParam) -> FMatrix {
    let d = sp.d();
    let nf = sp.f_coords();
    let nm = nilpotent_matrix(sp, n);
    let n2 = f_mat_mul(&nm, &nm, d);
    let expn = f_mat_add(&f_mat_add(&f_identity(nf, d), &nm, 1.0), &n2, 0.5);
    let mut boost = f_identity(nf, d);
    boost[0][0] = FValue::real(s.cosh(), d);
    boost[0][nf - 1] = FValue::real(s.sinh(), d);
    boost[nf - 1][0] = FValue::real(s.sinh(), d);
    boost[nf - 1][nf - 1] = FValue::real(s.cosh(), d);
    f_mat_mul(&boost, &expn, d)
}
