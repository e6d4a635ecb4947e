//! Radon and Abel transforms along the boost ray, and the auxiliary
//! integrals driving the asymptotic analysis.
//!
//! Two independent representations of the Radon transform are implemented.
//! The *direct* form integrates the probe over the orbit parametrization at
//! every point of the nilpotent group. The *reduced* form (p < q only)
//! integrates over a half-line, a sphere and two boxes after the change of
//! variables that exposes the weight `W = 1 + 2zv - z^2`, `z = e^{-s}`:
//!
//! ```text
//! Rf(s) = e^{-ds} int_{-sinh s}^inf int f[(wbar - v, u; -u, -sqrt(W) vbar,
//!          z - v + wbar)] W^{(dq-dp)/2 - 1} dv dvbar du dwbar.
//! ```
//!
//! Their agreement is a two-sided oracle: the implementations share no code
//! beyond the probe and the quadrature driver.
//!
//! On top of the reduced form sit `g_function` (the partial integral leaving
//! a three-variable profile), `f_of_z` (`F(z) = e^{ds} Rf(s)` as a nested
//! integral over the half-line of G-values), the boundary Taylor
//! coefficients `c_j` of F at z = 0 by audited central differences, and the
//! constant-coefficient operator `L(d^2/ds^2)` applied to Abel-transform
//! grids with an explicit noise-floor model.

use rayon::prelude::*;
use serde::Serialize;

use crate::fd::{central_second_derivative, fd_weights};
use crate::geometry::{orbit_point, AmbientVector, GeometryError, NilpotentParam};
use crate::params::{k0_eps, OperatorD, ParamsError, SpaceParams};
use crate::probes::{Decay, TestFunction};
use crate::quadrature::{converge, sphere_volume, Axis, QuadratureError, QuadratureSpec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("point ({t1}, {t2}, {t3}) violates t1^2 - t2^2 - t3^2 < 0")]
    OutsideDomain { t1: f64, t2: f64, t3: f64 },
    #[error("the reduced representation requires p < q, got p = {p}, q = {q}")]
    ReducedNeedsSmallP { p: usize, q: usize },
    #[error("transform failed at s = {s}: {source}")]
    AtPoint {
        s: f64,
        #[source]
        source: Box<TransformError>,
    },
    #[error(
        "step h = {h} cannot certify tolerance {requested:e}: noise floor {floor:e}"
    )]
    GridTooCoarse { h: f64, floor: f64, requested: f64 },
    #[error("{0}")]
    BadArgument(String),
}

// ---------------------------------------------------------------------------
// Radon transform, direct orbit form
// ---------------------------------------------------------------------------

/// Radon transform by integration over the full orbit parametrization,
/// Lebesgue measure with constant 1 on the (free, tail, w) coordinates.
/// Valid for every signature; the only form available when p >= q.
///
/// When the probe is invariant under rotations of the tail block, the tail
/// integral collapses to a polar radius against the sphere volume.
pub fn radon_direct(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    if f.tail_isotropic() && sp.tail_dim() >= 2 {
        radon_direct_collapsed(f, sp, s, spec)
    } else {
        radon_direct_reference(f, sp, s, spec)
    }
}

/// The direct form without the isotropy collapse: a plain box integral over
/// all nilpotent coordinates. Reference path for consistency tests.
pub fn radon_direct_reference(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    let dims = sp.nilpotent_dim();
    let t = spec.truncation_radius;
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let axes = vec![Axis::line(-t, t, n); dims];
        crate::quadrature::integrate_axes(&axes, |c| {
            let param = NilpotentParam::from_flat(sp, c);
            let x = orbit_point(sp, s, &param).expect("orbit points are well-formed");
            f.eval(&x)
        })
    })?;
    Ok(res)
}

fn radon_direct_collapsed(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    let free = sp.free_dim();
    let wd = sp.w_dim();
    let k = sp.tail_dim();
    let vol = sphere_volume(k - 1);
    let t = spec.truncation_radius;
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let mut axes = vec![Axis::line(-t, t, n); free + wd];
        axes.push(Axis::line(0.0, t, n));
        crate::quadrature::integrate_axes(&axes, |c| {
            let r = c[free + wd];
            let mut flat = vec![0.0; sp.nilpotent_dim()];
            flat[..free].copy_from_slice(&c[..free]);
            flat[free] = r;
            flat[free + k..].copy_from_slice(&c[free..free + wd]);
            let param = NilpotentParam::from_flat(sp, &flat);
            let x = orbit_point(sp, s, &param).expect("orbit points are well-formed");
            f.eval(&x) * vol * r.powi(k as i32 - 1)
        })
    })?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Radon transform, reduced form (p < q)
// ---------------------------------------------------------------------------

fn require_expansion_regime(sp: &SpaceParams) -> Result<(), TransformError> {
    if sp.p >= sp.q {
        Err(TransformError::ReducedNeedsSmallP { p: sp.p, q: sp.q })
    } else {
        Ok(())
    }
}

/// Assemble the argument vector of the reduced integrand: first F-coordinate
/// `t1 + wbar`, the free block `u` mirrored with a sign, the sphere block
/// `t2 * omega`, last F-coordinate `t3 + wbar`. On the reduced locus the
/// self-pairing of this vector is exactly -1 for every (z, v).
fn assemble_point(
    sp: &SpaceParams,
    t1: f64,
    t2: f64,
    t3: f64,
    omega: &[f64],
    u: &[f64],
    wbar: &[f64],
) -> AmbientVector {
    let d = sp.d();
    let p = sp.p;
    let mut coords = vec![0.0; sp.ambient_real_dim()];
    coords[..d - 1].copy_from_slice(wbar);
    coords[d - 1] = t1;
    let dp = d * p;
    coords[d..d + dp].copy_from_slice(u);
    for (k, val) in u.iter().enumerate() {
        coords[d + dp + k] = -val;
    }
    let sphere = sp.sphere_block_range();
    for (k, w) in omega.iter().enumerate() {
        coords[sphere.start + k] = t2 * w;
    }
    let last = d * (sp.f_coords() - 1);
    coords[last..last + d - 1].copy_from_slice(wbar);
    coords[last + d - 1] = t3;
    AmbientVector::from_coords(sp, coords).expect("assembled point has ambient dimension")
}

/// Radon transform in the reduced coordinates. Requires p < q.
pub fn radon_reduced(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    require_expansion_regime(sp)?;
    let z = (-s).exp();
    let a = -s.sinh();
    let alpha = sp.dqp() as f64 / 2.0 - 1.0;
    let prefactor = (-(sp.d() as f64) * s).exp();
    let res = reduced_locus_integral(f, sp, spec, a, alpha, |v| {
        let w = (1.0 + 2.0 * z * v - z * z).max(0.0);
        (-v, -w.sqrt(), z - v, w)
    })?;
    Ok((res.0 * prefactor, res.1 * prefactor))
}

/// Shared driver: integrate `f[point(t(v))] * W(v)^alpha` over the
/// half-line against the sphere and box factors. `locus` maps the half-line
/// coordinate to (t1, t2, t3, W).
fn reduced_locus_integral(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    spec: &QuadratureSpec,
    a: f64,
    alpha: f64,
    locus: impl Fn(f64) -> (f64, f64, f64, f64) + Sync,
) -> Result<(f64, f64), TransformError> {
    let dp = sp.dp() as usize;
    let wd = sp.w_dim();
    let sph = sp.tail_dim();
    let collapse = f.tail_isotropic();
    let t = spec.truncation_radius;
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let mut axes = vec![Axis::halfline(a, alpha, t, n)];
        axes.push(if collapse {
            Axis::sphere_collapsed(sph - 1)
        } else {
            Axis::sphere(sph - 1, n)
        });
        axes.extend(std::iter::repeat(Axis::line(-t, t, n)).take(dp + wd));
        crate::quadrature::integrate_axes(&axes, |c| {
            let v = c[0];
            let omega = &c[1..1 + sph];
            let u = &c[1 + sph..1 + sph + dp];
            let wbar = &c[1 + sph + dp..];
            let (t1, t2, t3, w) = locus(v);
            let x = assemble_point(sp, t1, t2, t3, omega, u, wbar);
            f.eval(&x) * w.powf(alpha)
        })
    })?;
    Ok(res)
}

/// Radon transform through the representation appropriate for the
/// signature: reduced when p < q, direct otherwise.
pub fn radon(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    if sp.p < sp.q {
        radon_reduced(f, sp, s, spec)
    } else {
        radon_direct(f, sp, s, spec)
    }
}

/// Quadrature settings adjusted to what the probe's smoothness supports.
///
/// A compactly supported probe is flat to all orders where its support ends,
/// so the orbit integrand is smooth but not analytic there and spectral rules
/// converge only root-exponentially; worse, orbits that barely clip the
/// support produce integrals that are tiny on their own scale, so a relative
/// audit can never certify them. Granting an absolute error floor keeps such
/// runs from failing spuriously. Points whose orbits miss the support
/// entirely still come out exactly zero, so support verdicts are unaffected,
/// and the per-point error estimates remain honest.
pub fn effective_spec(f: &dyn TestFunction, spec: &QuadratureSpec) -> QuadratureSpec {
    match f.decay() {
        Decay::Compact(_) => QuadratureSpec {
            absolute_floor: spec.absolute_floor.max(1e-5),
            doubling_rounds: spec.doubling_rounds.max(5),
            ..spec.clone()
        },
        Decay::SuperSchwartz => spec.clone(),
    }
}

/// Abel transform `e^{rho_1 s} Rf(s)`.
pub fn abel(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    let (rf, err) = radon(f, sp, s, spec)?;
    let scale = (sp.rho_1().value() * s).exp();
    Ok((rf * scale, err * scale))
}

// ---------------------------------------------------------------------------
// The auxiliary function G and the F(z) representation
// ---------------------------------------------------------------------------

/// Argument of the partial integral G.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GPoint {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl GPoint {
    pub fn new(t1: f64, t2: f64, t3: f64) -> GPoint {
        GPoint { t1, t2, t3 }
    }

    /// The quadratic form t1^2 - t2^2 - t3^2; the transform domain is where
    /// it is negative.
    pub fn quad(&self) -> f64 {
        self.t1 * self.t1 - self.t2 * self.t2 - self.t3 * self.t3
    }

    /// The curve t(z, v) the reduced transform integrates over; lands on
    /// the level set quad = -1 for every z and v.
    pub fn on_locus(z: f64, v: f64) -> GPoint {
        let w = (1.0 + 2.0 * z * v - z * z).max(0.0);
        GPoint::new(-v, -w.sqrt(), z - v)
    }
}

/// The partial integral
/// `G_f(t) = int f[(wbar + t1, u; -u, t2 vbar, t3 + wbar)] dvbar du dwbar`
/// over the sphere and the two box factors. Defined for t1^2-t2^2-t3^2 < 0,
/// homogeneous of degree dp + d - 1 and even in t2.
pub fn g_function(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    t: &GPoint,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    require_expansion_regime(sp)?;
    if t.quad() >= 0.0 {
        return Err(TransformError::OutsideDomain {
            t1: t.t1,
            t2: t.t2,
            t3: t.t3,
        });
    }
    let dp = sp.dp() as usize;
    let wd = sp.w_dim();
    let sph = sp.tail_dim();
    let collapse = f.tail_isotropic();
    let tr = spec.truncation_radius;
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let mut axes = vec![if collapse {
            Axis::sphere_collapsed(sph - 1)
        } else {
            Axis::sphere(sph - 1, n)
        }];
        axes.extend(std::iter::repeat(Axis::line(-tr, tr, n)).take(dp + wd));
        crate::quadrature::integrate_axes(&axes, |c| {
            let omega = &c[..sph];
            let u = &c[sph..sph + dp];
            let wbar = &c[sph + dp..];
            let x = assemble_point(sp, t.t1, t.t2, t.t3, omega, u, wbar);
            f.eval(&x)
        })
    })?;
    Ok(res)
}

/// `F(z) = int_{(z - 1/z)/2}^inf G_f(t(z, v)) W^alpha dv` for z in (0, 1);
/// equals `e^{ds} Rf(s)` at `s = -log z`. Computed as a nested integral so
/// that its agreement with `radon_reduced` genuinely cross-checks the
/// G-machinery. A failed inner integral surfaces as a non-finite outer
/// integrand.
pub fn f_of_z(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    require_expansion_regime(sp)?;
    if !(z > 0.0 && z < 1.0) {
        return Err(TransformError::BadArgument(format!(
            "f_of_z needs z in (0, 1), got {z}"
        )));
    }
    let a = 0.5 * (z - 1.0 / z);
    let alpha = sp.dqp() as f64 / 2.0 - 1.0;
    let inner = QuadratureSpec {
        target_rel_tol: spec.target_rel_tol * 0.1,
        ..spec.clone()
    };
    let t = spec.truncation_radius;
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let axis = Axis::halfline(a, alpha, t, n);
        crate::quadrature::integrate_axes(&[axis], |c| {
            let v = c[0];
            let w = (1.0 + 2.0 * z * v - z * z).max(0.0);
            let point = GPoint::on_locus(z, v);
            match g_function(f, sp, &point, &inner) {
                Ok((g, _)) => g * w.powf(alpha),
                Err(_) => f64::NAN,
            }
        })
    })?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// Boundary Taylor coefficients
// ---------------------------------------------------------------------------

/// Default step for the z-differentiation; shrunk automatically so the
/// weight stays positive over the sampled box.
pub const DEFAULT_Z_STEP: f64 = 0.005;

#[derive(Clone, Debug, Serialize)]
pub struct TaylorCoeffs {
    /// c_j = F^{(j)}(0) / j!.
    pub values: Vec<f64>,
    /// Step-audit error estimates: change under halving the z-step plus the
    /// propagated quadrature errors.
    pub errors: Vec<f64>,
    /// The (finer) step the returned values were computed with.
    pub step: f64,
}

/// The first k0 boundary Taylor coefficients of F at z = 0, the number the
/// expansion regime supports.
pub fn taylor_coeffs(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    spec: &QuadratureSpec,
) -> Result<TaylorCoeffs, TransformError> {
    let (k0, _) = k0_eps(sp)?;
    if k0 == 0 {
        return Err(TransformError::BadArgument(
            "no boundary Taylor terms in this regime (k0 = 0)".into(),
        ));
    }
    taylor_coeffs_n(f, sp, k0, spec)
}

/// The first `count` Taylor coefficients of F at z = 0. F is smooth in z
/// near 0, so coefficients beyond k0 are well-defined; only the first k0
/// enter the expansion of the Abel transform.
pub fn taylor_coeffs_n(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    count: usize,
    spec: &QuadratureSpec,
) -> Result<TaylorCoeffs, TransformError> {
    require_expansion_regime(sp)?;
    if count == 0 {
        return Err(TransformError::BadArgument(
            "at least one Taylor coefficient must be requested".into(),
        ));
    }
    let t = spec.truncation_radius;
    // Keep W = 1 + 2zv - z^2 bounded away from zero over |v| <= T for the
    // widest node 4*delta.
    let delta = DEFAULT_Z_STEP.min(0.1 / t);
    let coarse = stencil_coeffs(f, sp, count, delta, spec)?;
    let fine = stencil_coeffs(f, sp, count, 0.5 * delta, spec)?;
    let values: Vec<f64> = fine.0.clone();
    let errors: Vec<f64> = fine
        .0
        .iter()
        .zip(&coarse.0)
        .zip(&fine.1)
        .map(|((a, b), q)| (a - b).abs() + q)
        .collect();
    Ok(TaylorCoeffs {
        values,
        errors,
        step: 0.5 * delta,
    })
}

/// c_j at one step: 9-node central differences in z of the v-integral of
/// G W^alpha. Returns (values, propagated quadrature errors).
fn stencil_coeffs(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    count: usize,
    delta: f64,
    spec: &QuadratureSpec,
) -> Result<(Vec<f64>, Vec<f64>), TransformError> {
    let nodes: Vec<f64> = (-4..=4).map(|k| k as f64 * delta).collect();
    let weights = fd_weights(0.0, &nodes, count - 1);
    let mut h_val = Vec::with_capacity(nodes.len());
    let mut h_err = Vec::with_capacity(nodes.len());
    for &z in &nodes {
        let (v, e) = boundary_slice_integral(f, sp, z, spec)?;
        h_val.push(v);
        h_err.push(e);
    }
    let mut values = Vec::with_capacity(count);
    let mut errors = Vec::with_capacity(count);
    let mut fact = 1.0;
    for (j, row) in weights.iter().enumerate().take(count) {
        if j > 0 {
            fact *= j as f64;
        }
        let v: f64 = row.iter().zip(&h_val).map(|(w, h)| w * h).sum();
        let e: f64 = row.iter().zip(&h_err).map(|(w, h)| w.abs() * h).sum();
        values.push(v / fact);
        errors.push(e / fact);
    }
    Ok((values, errors))
}

/// `int_{-T}^{T} G_f(t(z, v)) W^alpha dv` for a fixed (small) z: the
/// half-line lower limit recedes to -infinity as z -> 0, and the probe's
/// decay truncates the integral at T.
fn boundary_slice_integral(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    z: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    let alpha = sp.dqp() as f64 / 2.0 - 1.0;
    let inner = QuadratureSpec {
        target_rel_tol: spec.target_rel_tol * 0.1,
        ..spec.clone()
    };
    let t = spec.truncation_radius;
    debug_assert!(1.0 - 2.0 * z.abs() * t - z * z > 0.0, "z-step too wide");
    let res = converge(spec, |level| {
        let n = spec.nodes_per_dim << level;
        let axis = Axis::line(-t, t, n);
        crate::quadrature::integrate_axes(&[axis], |c| {
            let v = c[0];
            let w = 1.0 + 2.0 * z * v - z * z;
            let point = GPoint::on_locus(z, v);
            match g_function(f, sp, &point, &inner) {
                Ok((g, _)) => g * w.powf(alpha),
                Err(_) => f64::NAN,
            }
        })
    })?;
    Ok(res)
}

// ---------------------------------------------------------------------------
// The rotational operator X on G
// ---------------------------------------------------------------------------

/// `X^k G_f(t)` where `X = t3 d/dt2 - t2 d/dt3`, by k-fold finite
/// differences along the rotational flow (which preserves the domain
/// exactly). Numerical depth limit k <= 3. Returns (value, step-audit
/// error).
pub fn x_operator_g(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    t: &GPoint,
    k: usize,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), TransformError> {
    if k > 3 {
        return Err(TransformError::BadArgument(format!(
            "x_operator_g supports k <= 3, got {k}"
        )));
    }
    if k == 0 {
        return g_function(f, sp, t, spec);
    }
    let eval_step = |h: f64| -> Result<(f64, f64), TransformError> {
        let thetas: Vec<f64> = (-4..=4).map(|j| j as f64 * h).collect();
        let weights = &fd_weights(0.0, &thetas, k)[k];
        let mut value = 0.0;
        let mut err = 0.0;
        for (w, theta) in weights.iter().zip(&thetas) {
            let (sin, cos) = theta.sin_cos();
            let rotated = GPoint::new(
                t.t1,
                t.t2 * cos + t.t3 * sin,
                t.t3 * cos - t.t2 * sin,
            );
            let (g, e) = g_function(f, sp, &rotated, spec)?;
            value += w * g;
            err += w.abs() * e;
        }
        Ok((value, err))
    };
    let (coarse, _) = eval_step(0.02)?;
    let (fine, qerr) = eval_step(0.01)?;
    Ok((fine, (fine - coarse).abs() + qerr))
}

// ---------------------------------------------------------------------------
// Transform grids and the Abel-side operator
// ---------------------------------------------------------------------------

/// A uniform evaluation grid in the boost coordinate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub h: f64,
}

impl GridSpec {
    pub fn new(s_min: f64, s_max: f64, h: f64) -> Result<GridSpec, TransformError> {
        if !(h > 0.0) || !(s_max > s_min) {
            return Err(TransformError::BadArgument(format!(
                "invalid grid [{s_min}, {s_max}] step {h}"
            )));
        }
        Ok(GridSpec { s_min, s_max, h })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.s_max - self.s_min) / self.h).round() as usize;
        (0..=n).map(|i| self.s_min + i as f64 * self.h).collect()
    }
}

/// Result of applying `L(d^2/ds^2)` to an Abel grid.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorApplication {
    /// Polynomial form of the operator, for reports.
    pub operator: String,
    /// One entry per grid point; `None` in the boundary margins where the
    /// iterated stencil has no full neighborhood.
    pub values: Vec<Option<f64>>,
    /// Per-point noise floor: the worst quadrature error in the dependency
    /// window, amplified by (sum |stencil|) + |shift| per factor.
    pub noise_floor: Vec<Option<f64>>,
    /// Half-open index range of valid entries.
    pub valid_start: usize,
    pub valid_end: usize,
}

/// Radon and Abel transforms tabulated on a uniform grid.
#[derive(Clone, Debug, Serialize)]
pub struct TransformGrid {
    pub space: SpaceParams,
    pub probe: String,
    pub h: f64,
    pub s: Vec<f64>,
    pub rf: Vec<f64>,
    pub af: Vec<f64>,
    /// Per-point quadrature error estimate, on the Abel scale.
    pub point_err: Vec<f64>,
    pub adf: Option<OperatorApplication>,
}

/// Evaluate the transforms over a grid. Points are independent work items;
/// the parallel map keeps a deterministic order. The first failing point
/// aborts the grid and is reported with its location.
pub fn compute_grid(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    grid: &GridSpec,
    spec: &QuadratureSpec,
) -> Result<TransformGrid, TransformError> {
    let s_points = grid.points();
    let rho1 = sp.rho_1().value();
    let rows: Vec<Result<(f64, f64), TransformError>> = s_points
        .par_iter()
        .map(|&s| radon(f, sp, s, spec))
        .collect();
    let mut rf = Vec::with_capacity(rows.len());
    let mut af = Vec::with_capacity(rows.len());
    let mut point_err = Vec::with_capacity(rows.len());
    for (s, row) in s_points.iter().zip(rows) {
        match row {
            Ok((value, err)) => {
                let boost = (rho1 * s).exp();
                rf.push(value);
                af.push(value * boost);
                point_err.push(err * boost);
            }
            Err(e) => {
                return Err(TransformError::AtPoint {
                    s: *s,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(TransformGrid {
        space: *sp,
        probe: f.describe(),
        h: grid.h,
        s: s_points,
        rf,
        af,
        point_err,
        adf: None,
    })
}

/// Apply `L(d^2/ds^2)` to the Abel column by iterating an order-8 centered
/// second-derivative stencil, one factor `d^2/ds^2 - shift` at a time. The
/// valid interior shrinks by four points per factor per side; boundary
/// points are flagged invalid rather than extrapolated.
///
/// When `decay_tol` is given, the call fails with `GridTooCoarse` if even
/// the smallest noise floor exceeds it — the grid cannot certify decay at
/// that tolerance.
pub fn apply_l(
    grid: &TransformGrid,
    op: &OperatorD,
    decay_tol: Option<f64>,
) -> Result<OperatorApplication, TransformError> {
    let n = grid.s.len();
    let h = grid.h;
    let shifts = op.shifts();
    let margin = 4 * shifts.len();
    if n < 2 * margin + 1 {
        return Err(TransformError::BadArgument(format!(
            "grid of {n} points cannot host {} stencil factors",
            shifts.len()
        )));
    }
    let stencil = central_second_derivative(4, h);
    let mut cur = grid.af.clone();
    let mut lo = 0usize;
    let mut hi = n;
    for shift in &shifts {
        let mut next = vec![0.0; n];
        for i in lo + 4..hi - 4 {
            let mut acc = 0.0;
            for (j, c) in stencil.iter().enumerate() {
                acc += c * cur[i + j - 4];
            }
            next[i] = acc - shift * cur[i];
        }
        lo += 4;
        hi -= 4;
        cur = next;
    }
    let gain: f64 = stencil.iter().map(|c| c.abs()).sum();
    let amp: f64 = shifts.iter().map(|c| gain + c.abs()).product();
    let mut values = vec![None; n];
    let mut floors = vec![None; n];
    let mut min_floor = f64::INFINITY;
    for i in lo..hi {
        let window = &grid.point_err[i - margin..=i + margin];
        let worst = window.iter().cloned().fold(0.0, f64::max);
        let floor = amp * worst;
        min_floor = min_floor.min(floor);
        values[i] = Some(cur[i]);
        floors[i] = Some(floor);
    }
    if let Some(tol) = decay_tol {
        if min_floor > tol {
            return Err(TransformError::GridTooCoarse {
                h,
                floor: min_floor,
                requested: tol,
            });
        }
    }
    Ok(OperatorApplication {
        operator: op.display_poly(),
        values,
        noise_floor: floors,
        valid_start: lo,
        valid_end: hi,
    })
}
