//! Deterministic Gauss quadrature on boxes, halflines and spheres.
//!
//! Integrals are assembled from one-dimensional Gauss-Legendre rules,
//! Gauss-Jacobi rules for algebraic endpoint weights, midpoint rules on the
//! circle, and an exact two-point rule on S^0. Multi-dimensional domains
//! are tensor products of [`Axis`] values evaluated in one flat pass with
//! compensated (Neumaier) summation in fixed chunks, so results are
//! bit-identical across runs and thread counts.
//!
//! Error control: every engine evaluates at the requested resolution and at
//! doubled resolution (all axes at once) and repeats up to
//! `doubling_rounds` times; the reported error is the difference of the
//! last two levels plus a rounding floor proportional to the accumulated
//! absolute mass. Integrands are expected to decay at Gaussian-or-faster
//! rate beyond `truncation_radius` (the probes in this crate do).

use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadratureError {
    #[error("no convergence: err {err:.3e} vs target {target:.3e} (value {value:.6e})")]
    NoConvergence { value: f64, err: f64, target: f64 },
    #[error("integrand produced a non-finite value")]
    NonFinite,
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
}

/// Resolution and tolerance knobs shared by all engines.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadratureSpec {
    /// Base nodes per one-dimensional axis (doubled by the audit loop).
    pub nodes_per_dim: usize,
    /// Half-width of box axes; halfline axes extend to at least twice this.
    pub truncation_radius: f64,
    /// Relative tolerance the doubling audit must reach.
    pub target_rel_tol: f64,
    /// Absolute error at which the audit accepts regardless of the relative
    /// test. Zero (the default) disables it. Useful when an integrand is
    /// smooth but not analytic, so spectral convergence stalls on values
    /// that are tiny compared to the quantity actually being certified.
    pub absolute_floor: f64,
    /// Power of (v - a) carried by the integrand near a halfline endpoint.
    pub endpoint_power: f64,
    /// Maximum number of resolution doublings before giving up.
    pub doubling_rounds: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_dim: 48,
            truncation_radius: 10.0,
            target_rel_tol: 1e-10,
            absolute_floor: 0.0,
            endpoint_power: 0.0,
            doubling_rounds: 3,
        }
    }
}

impl QuadratureSpec {
    pub fn with_endpoint_power(mut self, p: f64) -> Self {
        self.endpoint_power = p;
        self
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if self.nodes_per_dim < 2 {
            return Err(QuadratureError::InvalidSpec("nodes_per_dim < 2".into()));
        }
        if self.doubling_rounds < 1 {
            return Err(QuadratureError::InvalidSpec("doubling_rounds < 1".into()));
        }
        if !(self.truncation_radius > 0.0) || !(self.target_rel_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec(
                "truncation_radius and target_rel_tol must be positive".into(),
            ));
        }
        if !(self.absolute_floor >= 0.0) || !self.absolute_floor.is_finite() {
            return Err(QuadratureError::InvalidSpec(
                "absolute_floor must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Node construction
// ---------------------------------------------------------------------------

/// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-13 for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Surface measure of the unit sphere S^r in R^{r+1}.
pub fn sphere_volume(r: usize) -> f64 {
    let rp1 = (r + 1) as f64;
    2.0 * std::f64::consts::PI.powf(rp1 / 2.0) / (ln_gamma(rp1 / 2.0)).exp()
}

fn newton_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn newton_jacobi(n: usize, alf: f64, bet: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let alfbet = alf + bet;
    for i in 0..n {
        let nf = n as f64;
        let mut z = match i {
            0 => {
                let an = alf / nf;
                let bn = bet / nf;
                let r1 = (1.0 + alf) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
                let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
                1.0 - r1 / r2
            }
            1 => {
                let r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
                let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * alf) / nf;
                let r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * alf.abs()) / nf;
                x[0] - (1.0 - x[0]) * r1 * r2 * r3
            }
            2 => {
                let r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
                let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
                let r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * nf * nf);
                x[1] - (x[0] - x[1]) * r1 * r2 * r3
            }
            _ if i == n - 2 => {
                let r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
                let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
                let r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * nf * nf));
                x[i - 1] + (x[i - 1] - x[i - 2]) * r1 * r2 * r3
            }
            _ if i == n - 1 => {
                let r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
                let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
                let r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * nf * nf));
                x[i - 1] + (x[i - 1] - x[i - 2]) * r1 * r2 * r3
            }
            _ => 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3],
        };
        let mut p2 = 0.0;
        let mut pp = 0.0;
        let mut temp = 0.0;
        for _ in 0..100 {
            temp = 2.0 + alfbet;
            let mut p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for j in 2..=n {
                let p3 = p2;
                p2 = p1;
                temp = 2.0 * j as f64 + alfbet;
                let a = 2.0 * j as f64 * (j as f64 + alfbet) * (temp - 2.0);
                let b = (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                let c = 2.0 * (j as f64 - 1.0 + alf) * (j as f64 - 1.0 + bet) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (n as f64 * (alf - bet - temp * z) * p1
                + 2.0 * (n as f64 + alf) * (n as f64 + bet) * p2)
                / (temp * (1.0 - z * z));
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-14 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        w[i] = (ln_gamma(alf + n as f64) + ln_gamma(bet + n as f64)
            - ln_gamma(n as f64 + 1.0)
            - ln_gamma(n as f64 + alfbet + 1.0))
            .exp()
            * temp
            * 2f64.powf(alfbet)
            / (pp * p2);
    }
    (x, w)
}

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

fn rule_cache() -> &'static Mutex<HashMap<(u8, usize, u64, u64), Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, usize, u64, u64), Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> Rule {
    let key = (0u8, n, 0, 0);
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(newton_legendre(n));
    rule_cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// Gauss-Jacobi nodes and weights for weight (1-x)^alpha (1+x)^beta on [-1, 1].
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    if alpha == 0.0 && beta == 0.0 {
        return gauss_legendre(n);
    }
    let key = (1u8, n, alpha.to_bits(), beta.to_bits());
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(newton_jacobi(n, alpha, beta));
    rule_cache().lock().unwrap().insert(key, rule.clone());
    rule
}

// ---------------------------------------------------------------------------
// Axes and product evaluation
// ---------------------------------------------------------------------------

/// One factor of a product rule: `count` nodes, each yielding
/// `coords_per_node` coordinates and one weight.
#[derive(Clone, Debug)]
pub struct Axis {
    pub coords_per_node: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Axis {
    pub fn count(&self) -> usize {
        self.weights.len()
    }

    /// Gauss-Legendre on [a, b].
    pub fn line(a: f64, b: f64, n: usize) -> Axis {
        let rule = gauss_legendre(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Axis {
            coords_per_node: 1,
            nodes: rule.0.iter().map(|x| mid + half * x).collect(),
            weights: rule.1.iter().map(|w| half * w).collect(),
        }
    }

    /// Halfline [a, infinity), truncated where probe-class integrands are
    /// negligible. The integrand is expected to carry the factor
    /// `(v - a)^power` itself; the substitution `v = a + tau^2` is applied
    /// whenever `power` is not an integer so the product of integrand and
    /// Jacobian is smooth in tau.
    pub fn halfline(a: f64, power: f64, truncation: f64, n: usize) -> Axis {
        let t = truncation;
        if a < -t {
            return Axis::line(-t, t, n);
        }
        let upper = t.max(a + 2.0 * t);
        if (power - power.round()).abs() < 1e-9 {
            Axis::line(a, upper, n)
        } else {
            let tau_max = (upper - a).sqrt();
            let rule = gauss_legendre(n);
            let half = 0.5 * tau_max;
            let mut nodes = Vec::with_capacity(n);
            let mut weights = Vec::with_capacity(n);
            for (x, w) in rule.0.iter().zip(rule.1.iter()) {
                let tau = half + half * x;
                nodes.push(a + tau * tau);
                weights.push(w * half * 2.0 * tau);
            }
            Axis {
                coords_per_node: 1,
                nodes,
                weights,
            }
        }
    }

    /// Full rule on the unit sphere S^r in R^{r+1}. Recursive: Gauss-Jacobi
    /// in the polar cosine against the weight (1-t^2)^{(r-2)/2}, a midpoint
    /// rule on the circle, the exact two-point rule on S^0.
    pub fn sphere(r: usize, n: usize) -> Axis {
        match r {
            0 => Axis {
                coords_per_node: 1,
                nodes: vec![1.0, -1.0],
                weights: vec![1.0, 1.0],
            },
            1 => {
                let count = n.max(4);
                let mut nodes = Vec::with_capacity(2 * count);
                let mut weights = Vec::with_capacity(count);
                let w = 2.0 * std::f64::consts::PI / count as f64;
                for j in 0..count {
                    let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / count as f64;
                    nodes.push(theta.cos());
                    nodes.push(theta.sin());
                    weights.push(w);
                }
                Axis {
                    coords_per_node: 2,
                    nodes,
                    weights,
                }
            }
            _ => {
                let sub = Axis::sphere(r - 1, n);
                let alpha = (r as f64 - 2.0) / 2.0;
                let polar = gauss_jacobi(n, alpha, alpha);
                let mut nodes = Vec::new();
                let mut weights = Vec::new();
                for (t, wt) in polar.0.iter().zip(polar.1.iter()) {
                    let sin = (1.0 - t * t).max(0.0).sqrt();
                    for j in 0..sub.count() {
                        nodes.push(*t);
                        for k in 0..sub.coords_per_node {
                            nodes.push(sin * sub.nodes[j * sub.coords_per_node + k]);
                        }
                        weights.push(wt * sub.weights[j]);
                    }
                }
                Axis {
                    coords_per_node: r + 1,
                    nodes,
                    weights,
                }
            }
        }
    }

    /// One representative point with the full sphere measure, valid for
    /// integrands invariant under rotations of the sphere coordinates.
    pub fn sphere_collapsed(r: usize) -> Axis {
        let mut nodes = vec![0.0; r + 1];
        nodes[0] = 1.0;
        Axis {
            coords_per_node: r + 1,
            nodes,
            weights: vec![sphere_volume(r)],
        }
    }
}

struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    fn new() -> Self {
        Neumaier { s: 0.0, c: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }

    fn total(&self) -> f64 {
        self.s + self.c
    }
}

const PAR_THRESHOLD: usize = 1 << 14;
const CHUNK: usize = 4096;

/// Evaluate the product rule: returns (integral, accumulated |w f|).
/// Deterministic: fixed chunk boundaries, in-order combination.
pub fn integrate_axes<F>(axes: &[Axis], f: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let counts: Vec<usize> = axes.iter().map(Axis::count).collect();
    let total: usize = counts.iter().product();
    let coords_len: usize = axes.iter().map(|a| a.coords_per_node).sum();
    let eval_range = |start: usize, end: usize| -> (f64, f64) {
        let mut buf = vec![0.0; coords_len];
        let mut acc = Neumaier::new();
        let mut abs = 0.0;
        for flat in start..end {
            let mut idx = flat;
            let mut off = 0;
            let mut w = 1.0;
            for (axis, count) in axes.iter().zip(&counts) {
                let i = idx % count;
                idx /= count;
                w *= axis.weights[i];
                let cpn = axis.coords_per_node;
                buf[off..off + cpn].copy_from_slice(&axis.nodes[i * cpn..(i + 1) * cpn]);
                off += cpn;
            }
            let term = w * f(&buf);
            acc.add(term);
            abs += term.abs();
        }
        (acc.total(), abs)
    };
    if total >= PAR_THRESHOLD {
        let nchunks = total.div_ceil(CHUNK);
        let parts: Vec<(f64, f64)> = (0..nchunks)
            .into_par_iter()
            .map(|c| eval_range(c * CHUNK, ((c + 1) * CHUNK).min(total)))
            .collect();
        let mut acc = Neumaier::new();
        let mut abs = 0.0;
        for (v, a) in parts {
            acc.add(v);
            abs += a;
        }
        (acc.total(), abs)
    } else {
        eval_range(0, total)
    }
}

/// Doubling audit driver. `eval(level)` integrates with all axis node
/// counts scaled by `2^level` and returns (value, absolute mass). Converges
/// when successive levels agree to the target relative tolerance, measured
/// against max(|value|, mass/100).
pub fn converge<F>(spec: &QuadratureSpec, eval: F) -> Result<(f64, f64), QuadratureError>
where
    F: Fn(u32) -> (f64, f64),
{
    spec.validate()?;
    let mut prev = eval(0);
    if !prev.0.is_finite() {
        return Err(QuadratureError::NonFinite);
    }
    let mut last_err = f64::INFINITY;
    for level in 1..=spec.doubling_rounds {
        let cur = eval(level);
        if !cur.0.is_finite() {
            return Err(QuadratureError::NonFinite);
        }
        let err = (cur.0 - prev.0).abs() + f64::EPSILON * cur.1;
        let scale = cur.0.abs().max(0.01 * cur.1).max(f64::MIN_POSITIVE);
        if err <= spec.target_rel_tol * scale || err <= spec.absolute_floor {
            return Ok((cur.0, err));
        }
        prev = cur;
        last_err = err;
    }
    Err(QuadratureError::NoConvergence {
        value: prev.0,
        err: last_err,
        target: spec.target_rel_tol,
    })
}

fn scaled(n: usize, level: u32) -> usize {
    n << level
}

/// Integral over the box [-T, T]^dims (T = truncation radius).
pub fn integrate_box<F>(g: F, dims: usize, spec: &QuadratureSpec) -> Result<(f64, f64), QuadratureError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if dims == 0 {
        let v = g(&[]);
        if !v.is_finite() {
            return Err(QuadratureError::NonFinite);
        }
        return Ok((v, 0.0));
    }
    let t = spec.truncation_radius;
    converge(spec, |level| {
        let axis = Axis::line(-t, t, scaled(spec.nodes_per_dim, level));
        let axes = vec![axis; dims];
        integrate_axes(&axes, |x| g(x))
    })
}

/// Integral over [a, infinity) of an integrand carrying the endpoint factor
/// `(v - a)^{spec.endpoint_power}`.
pub fn integrate_halfline<F>(g: F, a: f64, spec: &QuadratureSpec) -> Result<(f64, f64), QuadratureError>
where
    F: Fn(f64) -> f64 + Sync,
{
    converge(spec, |level| {
        let axis = Axis::halfline(
            a,
            spec.endpoint_power,
            spec.truncation_radius,
            scaled(spec.nodes_per_dim, level),
        );
        integrate_axes(&[axis], |x| g(x[0]))
    })
}

/// Integral over the unit sphere S^r against the surface measure.
pub fn integrate_sphere<F>(g: F, r: usize, spec: &QuadratureSpec) -> Result<(f64, f64), QuadratureError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    converge(spec, |level| {
        let axis = Axis::sphere(r, scaled(spec.nodes_per_dim, level));
        integrate_axes(&[axis], |x| g(x))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn ln_gamma_known_values() {
        assert_relative_eq!(ln_gamma(0.5), PI.sqrt().ln(), max_relative = 1e-13);
        assert_relative_eq!(ln_gamma(1.0), 0.0, epsilon = 1e-13);
        assert_relative_eq!(ln_gamma(5.0), 24f64.ln(), max_relative = 1e-13);
        // Gamma(7/2) = 15 sqrt(pi) / 8.
        assert_relative_eq!(
            ln_gamma(3.5),
            (15.0 * PI.sqrt() / 8.0).ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn sphere_volumes() {
        assert_relative_eq!(sphere_volume(0), 2.0, max_relative = 1e-12);
        assert_relative_eq!(sphere_volume(1), 2.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(sphere_volume(2), 4.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(sphere_volume(3), 2.0 * PI * PI, max_relative = 1e-12);
    }

    #[test]
    fn legendre_exact_on_polynomials() {
        let rule = gauss_legendre(5);
        // Exact through degree 9: integral of x^8 over [-1,1] is 2/9.
        let val: f64 = rule.0.iter().zip(rule.1.iter()).map(|(x, w)| w * x.powi(8)).sum();
        assert_relative_eq!(val, 2.0 / 9.0, max_relative = 1e-13);
        let weight_sum: f64 = rule.1.iter().sum();
        assert_relative_eq!(weight_sum, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_matches_beta_function() {
        // integral (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1).
        for (a, b) in [(0.5, 0.5), (1.5, 0.0), (2.5, 1.5), (0.5, 2.0)] {
            let rule = gauss_jacobi(12, a, b);
            let total: f64 = rule.1.iter().sum();
            let expect = 2f64.powf(a + b + 1.0)
                * (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
            assert_relative_eq!(total, expect, max_relative = 1e-12);
        }
        // Moment check: integral sqrt(1-x^2) x^2 dx = pi/8.
        let rule = gauss_jacobi(8, 0.5, 0.5);
        let m2: f64 = rule.0.iter().zip(rule.1.iter()).map(|(x, w)| w * x * x).sum();
        assert_relative_eq!(m2, PI / 8.0, max_relative = 1e-12);
    }

    #[test]
    fn box_gaussian_2d() {
        let spec = QuadratureSpec::default();
        let (v, e) = integrate_box(|x| (-x[0] * x[0] - x[1] * x[1]).exp(), 2, &spec).unwrap();
        assert!((v - PI).abs() <= 3.0 * e.max(1e-13), "v = {v}, err = {e}");
        assert_relative_eq!(v, PI, max_relative = 1e-12);
    }

    #[test]
    fn box_zero_dims_is_point_evaluation() {
        let spec = QuadratureSpec::default();
        let (v, e) = integrate_box(|_| 42.0, 0, &spec).unwrap();
        assert_eq!((v, e), (42.0, 0.0));
    }

    #[test]
    fn halfline_exponential() {
        let spec = QuadratureSpec {
            truncation_radius: 40.0,
            nodes_per_dim: 64,
            ..Default::default()
        };
        let (v, e) = integrate_halfline(|x| (-x).exp(), 0.0, &spec).unwrap();
        assert!((v - 1.0).abs() <= 3.0 * e.max(1e-13));
        assert_relative_eq!(v, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn halfline_inverse_sqrt_endpoint() {
        // integral_0^inf v^{-1/2} e^{-v} dv = sqrt(pi).
        let spec = QuadratureSpec {
            truncation_radius: 40.0,
            ..Default::default()
        }
        .with_endpoint_power(-0.5);
        let (v, e) = integrate_halfline(|x| x.powf(-0.5) * (-x).exp(), 0.0, &spec).unwrap();
        assert!((v - PI.sqrt()).abs() <= 3.0 * e.max(1e-13));
        assert_relative_eq!(v, PI.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn halfline_three_halves_endpoint_vs_simpson() {
        // integral_{-2}^inf (v+2)^{3/2} e^{-v^2} dv, oracle by Simpson on a
        // fine grid (the endpoint is C^1 so Simpson still converges there).
        let spec = QuadratureSpec::default().with_endpoint_power(1.5);
        let g = |v: f64| (v + 2.0).powf(1.5) * (-v * v).exp();
        let (v, _) = integrate_halfline(g, -2.0, &spec).unwrap();
        let n = 2_000_000;
        let (a, b) = (-2.0, 12.0);
        let h = (b - a) / n as f64;
        let mut oracle = 0.0;
        for i in 0..=n {
            let x = a + i as f64 * h;
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            oracle += c * g(x);
        }
        oracle *= h / 3.0;
        assert_relative_eq!(v, oracle, max_relative = 1e-8);
    }

    #[test]
    fn halfline_endpoint_below_truncation() {
        // a far below -T: reduces to a plain box in one variable.
        let spec = QuadratureSpec::default().with_endpoint_power(-0.5);
        let a = -1000.0;
        // Weight (v - a)^{-1/2} is smooth on [-10, 10]; compare against a
        // direct box integral of the same integrand.
        let g = |v: f64| (v - a).powf(-0.5) * (-v * v).exp();
        let (v, _) = integrate_halfline(g, a, &spec).unwrap();
        let (bx, _) = integrate_box(|x| g(x[0]), 1, &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(v, bx, max_relative = 1e-12);
    }

    #[test]
    fn sphere_monomials() {
        let spec = QuadratureSpec {
            nodes_per_dim: 12,
            ..Default::default()
        };
        // S^2: volume and even moments.
        let (v, _) = integrate_sphere(|_| 1.0, 2, &spec).unwrap();
        assert_relative_eq!(v, 4.0 * PI, max_relative = 1e-12);
        let (v, _) = integrate_sphere(|x| x[0] * x[0], 2, &spec).unwrap();
        assert_relative_eq!(v, 4.0 * PI / 3.0, max_relative = 1e-12);
        let (v, _) = integrate_sphere(|x| x[2] * x[2], 2, &spec).unwrap();
        assert_relative_eq!(v, 4.0 * PI / 3.0, max_relative = 1e-12);
        // S^3: volume 2 pi^2, second moment per coordinate 2 pi^2 / 4.
        let (v, _) = integrate_sphere(|_| 1.0, 3, &spec).unwrap();
        assert_relative_eq!(v, 2.0 * PI * PI, max_relative = 1e-12);
        let (v, _) = integrate_sphere(|x| x[1] * x[1], 3, &spec).unwrap();
        assert_relative_eq!(v, PI * PI / 2.0, max_relative = 1e-12);
        let (v, _) = integrate_sphere(|x| x[0] * x[0] * x[1] * x[1], 3, &spec).unwrap();
        assert_relative_eq!(v, PI * PI / 12.0, max_relative = 1e-12);
        // Odd moments vanish.
        let (v, _) = integrate_sphere(|x| x[0] * x[1] * x[2], 3, &spec).unwrap();
        assert!(v.abs() < 1e-14);
        // S^0 is the two-point set.
        let (v, _) = integrate_sphere(|x| x[0] * x[0] + 1.0, 0, &spec).unwrap();
        assert_relative_eq!(v, 4.0, max_relative = 1e-14);
        // S^1 second moment is pi.
        let (v, _) = integrate_sphere(|x| x[0] * x[0], 1, &spec).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-12);
    }

    #[test]
    fn collapsed_sphere_matches_full_rule_on_invariant_integrand() {
        let spec = QuadratureSpec {
            nodes_per_dim: 10,
            ..Default::default()
        };
        for r in [0usize, 1, 3, 4] {
            let g = |x: &[f64]| {
                let n2: f64 = x.iter().map(|t| t * t).sum();
                (1.0 + 0.5 * n2).ln() + 2.0
            };
            let (full, _) = integrate_sphere(g, r, &spec).unwrap();
            let axis = Axis::sphere_collapsed(r);
            let (collapsed, _) = integrate_axes(&[axis], g);
            assert_relative_eq!(full, collapsed, max_relative = 1e-11);
        }
    }

    #[test]
    fn determinism_bitwise() {
        let spec = QuadratureSpec {
            nodes_per_dim: 32,
            ..Default::default()
        };
        let g = |x: &[f64]| (-x.iter().map(|t| t * t).sum::<f64>()).exp() * (1.0 + x[0]).cos();
        let (a1, e1) = integrate_box(g, 3, &spec).unwrap();
        let (a2, e2) = integrate_box(g, 3, &spec).unwrap();
        assert_eq!(a1.to_bits(), a2.to_bits());
        assert_eq!(e1.to_bits(), e2.to_bits());
    }

    #[test]
    fn no_convergence_reported() {
        // A kink at an irrational point defeats spectral convergence.
        let spec = QuadratureSpec {
            nodes_per_dim: 8,
            doubling_rounds: 2,
            target_rel_tol: 1e-14,
            ..Default::default()
        };
        let res = integrate_box(|x| (x[0] - 0.123456).abs().sqrt(), 1, &spec);
        assert!(matches!(res, Err(QuadratureError::NoConvergence { .. })));
    }

    #[test]
    fn spec_validation() {
        let bad = QuadratureSpec {
            nodes_per_dim: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureSpec {
            doubling_rounds: 0,
            ..Default::default()
        };
        assert!(matches!(
            integrate_box(|_| 1.0, 1, &bad),
            Err(QuadratureError::InvalidSpec(_))
        ));
    }
}
