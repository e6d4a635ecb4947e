//! Post-processing of transform grids: exponential-sum fits, certified
//! polynomial-weighted decay against a declared noise floor, support radii
//! for compactly supported inputs, and limits at infinity.
//!
//! Every check here is honest about the floor below which the numerics say
//! nothing: a sequence that never rises above its floor is reported as a
//! failure, not a vacuous success.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("{0}")]
    BadInput(String),
    #[error("normal equations numerically singular (pivot {pivot:e})")]
    IllConditioned { pivot: f64 },
}

fn check_same_len(a: usize, b: usize, what: &str) -> Result<(), AnalysisError> {
    if a != b || a == 0 {
        return Err(AnalysisError::BadInput(format!(
            "{what}: lengths {a} and {b} must match and be nonzero"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exponential-sum least squares
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ExponentFit {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// Root-mean-square misfit over the window.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve a dense system by Gaussian elimination with partial pivoting.
/// `m` is k rows of k+1 entries (augmented). The caller normalizes the
/// matrix so that a pivot below ~1e-12 genuinely means rank deficiency.
fn solve_augmented(mut m: Vec<Vec<f64>>) -> Result<Vec<f64>, AnalysisError> {
    let k = m.len();
    for col in 0..k {
        let (pivot_row, pivot) = (col..k)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty range");
        if pivot < 1e-12 {
            return Err(AnalysisError::IllConditioned { pivot });
        }
        m.swap(col, pivot_row);
        for r in col + 1..k {
            let factor = m[r][col] / m[col][col];
            for c in col..=k {
                m[r][c] -= factor * m[col][c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let mut acc = m[row][k];
        for c in row + 1..k {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// Least-squares fit of `values ~ sum_j a_j exp(mu_j s)` for prescribed
/// exponents. Columns are norm-scaled before forming the normal equations,
/// so the singularity threshold is scale-free. An empty exponent list is
/// allowed and reports the RMS of the data as the residual.
pub fn fit_exponents(
    s: &[f64],
    values: &[f64],
    exponents: &[f64],
) -> Result<ExponentFit, AnalysisError> {
    check_same_len(s.len(), values.len(), "fit_exponents")?;
    let n = s.len();
    let k = exponents.len();
    if k == 0 {
        let rms = (values.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
        return Ok(ExponentFit {
            exponents: Vec::new(),
            coefficients: Vec::new(),
            residual: rms,
        });
    }
    if k > n {
        return Err(AnalysisError::BadInput(format!(
            "fit_exponents: {k} exponents but only {n} samples"
        )));
    }
    let mut cols: Vec<Vec<f64>> = exponents
        .iter()
        .map(|&mu| s.iter().map(|&si| (mu * si).exp()).collect())
        .collect();
    let mut norms = Vec::with_capacity(k);
    for col in cols.iter_mut() {
        let nm = dot(col, col).sqrt();
        if !(nm > 0.0) || !nm.is_finite() {
            return Err(AnalysisError::IllConditioned { pivot: 0.0 });
        }
        for x in col.iter_mut() {
            *x /= nm;
        }
        norms.push(nm);
    }
    let mut m = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = dot(&cols[i], &cols[j]);
        }
        m[i][k] = dot(&cols[i], values);
    }
    let scaled = solve_augmented(m)?;
    let coefficients: Vec<f64> = scaled.iter().zip(&norms).map(|(x, nm)| x / nm).collect();
    let mut ss = 0.0;
    for i in 0..n {
        let model: f64 = coefficients
            .iter()
            .zip(exponents)
            .map(|(a, &mu)| a * (mu * s[i]).exp())
            .sum();
        let r = values[i] - model;
        ss += r * r;
    }
    Ok(ExponentFit {
        exponents: exponents.to_vec(),
        coefficients,
        residual: (ss / n as f64).sqrt(),
    })
}

/// Slope and intercept of the least-squares line through (x, y).
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64), AnalysisError> {
    check_same_len(x.len(), y.len(), "linear_fit")?;
    if x.len() < 2 {
        return Err(AnalysisError::BadInput(
            "linear_fit needs at least two samples".into(),
        ));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    if sxx <= 0.0 {
        return Err(AnalysisError::IllConditioned { pivot: sxx });
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Slope of `ln |values|` against `s`: the apparent exponential growth rate
/// over the window. All samples must be nonzero.
pub fn log_slope(s: &[f64], values: &[f64]) -> Result<f64, AnalysisError> {
    check_same_len(s.len(), values.len(), "log_slope")?;
    let mut logs = Vec::with_capacity(values.len());
    for v in values {
        if *v == 0.0 || !v.is_finite() {
            return Err(AnalysisError::BadInput(
                "log_slope needs finite nonzero samples".into(),
            ));
        }
        logs.push(v.abs().ln());
    }
    linear_fit(s, &logs).map(|(slope, _)| slope)
}

// ---------------------------------------------------------------------------
// Certified rapid decay
// ---------------------------------------------------------------------------

/// The weighted maximum may exceed the first point by at most this factor.
pub const PEAK_SLACK: f64 = 1.05;
/// Consecutive weighted values may rise by at most this factor.
pub const MONOTONE_SLACK: f64 = 1.05;
/// The run must shrink to this fraction of its start (or sink into the
/// noise floor) to count as material decrease.
pub const MATERIAL_DROP: f64 = 0.5;

/// Verdict on `(1 + |s|)^order * |value|` decreasing over a window.
#[derive(Clone, Debug, Serialize)]
pub struct DecayVerdict {
    pub order: usize,
    pub pass: bool,
    /// Leading run of points whose weighted value clears the weighted floor;
    /// the verdict is judged on this run only. Zero means the data never
    /// rises above its own noise, which is a failure, not a pass.
    pub prefix_len: usize,
    /// True when the run ended by sinking below the floor before the window
    /// ran out; decaying to the floor counts as material decrease.
    pub hit_floor: bool,
    /// Largest weighted value along the run relative to the first.
    pub peak_ratio: f64,
    /// Last weighted value along the run relative to the first.
    pub drop_ratio: f64,
}

/// For each order `N = 0..=n_max`, test whether `(1 + |s|)^N |v|` decreases
/// along the window wherever it exceeds the per-point noise floor scaled by
/// the same weight: no initial clearance fails, the maximum must sit at the
/// start (5% slack), each step may rise at most 5%, and the run must either
/// halve overall or end by hitting the floor.
pub fn rapid_decay_check(
    s: &[f64],
    values: &[f64],
    floor: &[f64],
    n_max: usize,
) -> Result<Vec<DecayVerdict>, AnalysisError> {
    check_same_len(s.len(), values.len(), "rapid_decay_check")?;
    check_same_len(s.len(), floor.len(), "rapid_decay_check floor")?;
    let mut out = Vec::with_capacity(n_max + 1);
    for order in 0..=n_max {
        let weight = |i: usize| (1.0 + s[i].abs()).powi(order as i32);
        let w: Vec<f64> = values
            .iter()
            .enumerate()
            .map(|(i, v)| weight(i) * v.abs())
            .collect();
        let fl: Vec<f64> = floor.iter().enumerate().map(|(i, f)| weight(i) * f).collect();
        let mut prefix = 0;
        while prefix < w.len() && w[prefix] > fl[prefix] {
            prefix += 1;
        }
        let hit_floor = prefix < w.len();
        if prefix == 0 {
            out.push(DecayVerdict {
                order,
                pass: false,
                prefix_len: 0,
                hit_floor,
                peak_ratio: 0.0,
                drop_ratio: 0.0,
            });
            continue;
        }
        let w0 = w[0];
        let peak = w[..prefix].iter().cloned().fold(0.0, f64::max);
        let peak_ratio = peak / w0;
        let mut monotone = true;
        for i in 1..prefix {
            if w[i] > MONOTONE_SLACK * w[i - 1] {
                monotone = false;
                break;
            }
        }
        let drop_ratio = w[prefix - 1] / w0;
        let material = hit_floor || drop_ratio <= MATERIAL_DROP;
        out.push(DecayVerdict {
            order,
            pass: peak_ratio <= PEAK_SLACK && monotone && material,
            prefix_len: prefix,
            hit_floor,
            peak_ratio,
            drop_ratio,
        });
    }
    Ok(out)
}

/// The consecutive run of passing orders starting at 0.
pub fn certified_orders(verdicts: &[DecayVerdict]) -> Vec<usize> {
    verdicts
        .iter()
        .take_while(|v| v.pass)
        .map(|v| v.order)
        .collect()
}

// ---------------------------------------------------------------------------
// Support radius
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SupportCheck {
    pub pass: bool,
    pub declared_radius: f64,
    /// Largest |s| at which the data exceeds the relative threshold.
    pub observed_radius: f64,
    /// Absolute threshold actually used: rel_tol * max |value|.
    pub threshold: f64,
}

/// Check that the data vanishes (relative to its own maximum) outside the
/// declared radius, with 5% geometric slack. An identically zero grid
/// passes with observed radius 0.
pub fn support_check(
    s: &[f64],
    values: &[f64],
    radius: f64,
    rel_tol: f64,
) -> Result<SupportCheck, AnalysisError> {
    check_same_len(s.len(), values.len(), "support_check")?;
    if !(radius >= 0.0) || !(rel_tol > 0.0) {
        return Err(AnalysisError::BadInput(format!(
            "support_check: radius {radius} and rel_tol {rel_tol} must be positive"
        )));
    }
    let max_abs = values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if max_abs == 0.0 {
        return Ok(SupportCheck {
            pass: true,
            declared_radius: radius,
            observed_radius: 0.0,
            threshold: 0.0,
        });
    }
    let threshold = rel_tol * max_abs;
    let mut observed = 0.0_f64;
    let mut pass = true;
    for (si, vi) in s.iter().zip(values) {
        if vi.abs() > threshold {
            observed = observed.max(si.abs());
            if si.abs() > 1.05 * radius {
                pass = false;
            }
        }
    }
    Ok(SupportCheck {
        pass,
        declared_radius: radius,
        observed_radius: observed,
        threshold,
    })
}

// ---------------------------------------------------------------------------
// Limit at infinity
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConstantTerm {
    pub value: f64,
    /// Spread between extrapolations at two strides plus the internal
    /// correction size: an internal-consistency scale, not a bound.
    pub uncertainty: f64,
    /// Whether successive differences were shrinking at both strides.
    pub converged: bool,
}

fn aitken_tail(values: &[f64], stride: usize, scale: f64) -> (f64, f64, bool) {
    let n = values.len();
    let v0 = values[n - 1 - 2 * stride];
    let v1 = values[n - 1 - stride];
    let v2 = values[n - 1];
    let d1 = v1 - v0;
    let d2 = v2 - v1;
    if d2.abs() <= 1e-13 * scale {
        return (v2, d2.abs().max(1e-16 * scale), true);
    }
    if d2.abs() >= d1.abs() {
        return (v2, d1.abs() + d2.abs(), false);
    }
    let correction = d2 * d2 / (d1 - d2);
    let r = (d2 / d1).abs();
    (v2 + correction, correction.abs() * r, true)
}

/// Estimate `lim value(s)` as `s -> infinity` from the tail of a grid by
/// Aitken extrapolation at two strides. `converged` is false when the
/// successive differences are not shrinking, in which case the raw last
/// value is returned with a conservative uncertainty.
pub fn constant_term(s: &[f64], values: &[f64]) -> Result<ConstantTerm, AnalysisError> {
    check_same_len(s.len(), values.len(), "constant_term")?;
    let n = values.len();
    if n < 5 {
        return Err(AnalysisError::BadInput(
            "constant_term needs at least five samples".into(),
        ));
    }
    let scale = values
        .iter()
        .fold(0.0_f64, |a, v| a.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let big = (n - 1) / 2;
    let small = (big / 2).max(1);
    let (vb, ub, cb) = aitken_tail(values, big, scale);
    let (vs, us, cs) = aitken_tail(values, small, scale);
    Ok(ConstantTerm {
        value: vb,
        uncertainty: (vb - vs).abs() + ub.max(us),
        converged: cb && cs,
    })
}

// ---------------------------------------------------------------------------
// Aggregate report
// ---------------------------------------------------------------------------

/// Everything the decay pipeline can say about one Abel-transform grid.
#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub fit: Option<ExponentFit>,
    pub noise_floor: f64,
    pub verdicts: Vec<DecayVerdict>,
    pub certified_orders: Vec<usize>,
    pub support: Option<SupportCheck>,
    pub constant: Option<ConstantTerm>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, h: f64) -> Vec<f64> {
        let n = ((b - a) / h).round() as usize;
        (0..=n).map(|i| a + i as f64 * h).collect()
    }

    #[test]
    fn fit_recovers_exponential_sum() {
        let s = grid(0.0, 3.0, 0.1);
        let v: Vec<f64> = s.iter().map(|&x| 2.0 * x.exp() + (-x).exp()).collect();
        let fit = fit_exponents(&s, &v, &[1.0, -1.0]).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-10);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-10);
        assert!(fit.residual < 1e-10);
    }

    #[test]
    fn fit_reports_misfit() {
        let s = grid(0.0, 3.0, 0.1);
        let v: Vec<f64> = s.iter().map(|&x| x.exp() + 0.3 * (2.0 * x).sin()).collect();
        let fit = fit_exponents(&s, &v, &[1.0]).unwrap();
        assert!(fit.residual > 0.05, "residual {} too small", fit.residual);
    }

    #[test]
    fn fit_empty_exponent_list_gives_rms() {
        let s = vec![0.0, 1.0, 2.0];
        let v = vec![3.0, 0.0, 0.0];
        let fit = fit_exponents(&s, &v, &[]).unwrap();
        assert!((fit.residual - (3.0_f64.powi(2) / 3.0).sqrt()).abs() < 1e-14);
        assert!(fit.coefficients.is_empty());
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        let s = grid(0.0, 1.0, 0.1);
        let v = vec![1.0; s.len()];
        assert!(matches!(
            fit_exponents(&s, &v, &[1.0, 1.0]),
            Err(AnalysisError::IllConditioned { .. })
        ));
        assert!(fit_exponents(&s[..3], &v, &[1.0]).is_err());
        assert!(fit_exponents(&s[..2], &v[..2], &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn log_slope_recovers_rate() {
        let s = grid(1.0, 4.0, 0.25);
        let v: Vec<f64> = s.iter().map(|&x| 5.0 * (2.0 * x).exp()).collect();
        assert!((log_slope(&s, &v).unwrap() - 2.0).abs() < 1e-12);
        let w: Vec<f64> = s.iter().map(|&x| -3.0 * (-x).exp()).collect();
        assert!((log_slope(&s, &w).unwrap() + 1.0).abs() < 1e-12);
        assert!(log_slope(&s, &vec![0.0; s.len()]).is_err());
    }

    #[test]
    fn decay_certifies_exponential() {
        let s = grid(4.0, 12.0, 0.1);
        let v: Vec<f64> = s.iter().map(|&x| (-x).exp()).collect();
        let fl = vec![1e-18; s.len()];
        let verdicts = rapid_decay_check(&s, &v, &fl, 4).unwrap();
        for verdict in &verdicts {
            assert!(verdict.pass, "order {} failed", verdict.order);
            assert!(!verdict.hit_floor);
        }
        assert_eq!(certified_orders(&verdicts), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn decay_rejects_growth_and_grades_polynomials() {
        let s = grid(4.0, 12.0, 0.1);
        let up: Vec<f64> = s.iter().map(|&x| (0.5 * x).exp()).collect();
        let fl = vec![1e-18; s.len()];
        let verdicts = rapid_decay_check(&s, &up, &fl, 1).unwrap();
        assert!(!verdicts[0].pass);
        // 1/(1+s^2) has weighted decay orders 0 and 1 only.
        let poly: Vec<f64> = s.iter().map(|&x| 1.0 / (1.0 + x * x)).collect();
        let verdicts = rapid_decay_check(&s, &poly, &fl, 3).unwrap();
        assert_eq!(certified_orders(&verdicts), vec![0, 1]);
        assert!(!verdicts[2].pass && !verdicts[3].pass);
    }

    #[test]
    fn decay_never_passes_vacuously() {
        let s = grid(0.0, 4.0, 0.5);
        let v = vec![1e-12; s.len()];
        let fl = vec![1e-6; s.len()];
        let verdicts = rapid_decay_check(&s, &v, &fl, 2).unwrap();
        for verdict in verdicts {
            assert!(!verdict.pass);
            assert_eq!(verdict.prefix_len, 0);
        }
    }

    #[test]
    fn decay_to_floor_counts_as_material() {
        let s = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let v = vec![1.0, 0.97, 0.94, 1e-12, 1e-12];
        let fl = vec![1e-6; 5];
        let verdicts = rapid_decay_check(&s, &v, &fl, 0).unwrap();
        assert!(verdicts[0].pass);
        assert!(verdicts[0].hit_floor);
        assert_eq!(verdicts[0].prefix_len, 3);
        // Same shape, but the signal stays above the floor to the end: the
        // 6% total drop is not material.
        let v2 = vec![1.0, 0.97, 0.94, 0.93, 0.92];
        let verdicts = rapid_decay_check(&s, &v2, &fl, 0).unwrap();
        assert!(!verdicts[0].pass);
        assert!(!verdicts[0].hit_floor);
    }

    #[test]
    fn support_radius_detection() {
        let s = grid(-4.0, 4.0, 0.05);
        let bump = |x: f64| {
            if x.abs() < 2.0 {
                (1.0 - 1.0 / (1.0 - (x / 2.0) * (x / 2.0))).exp()
            } else {
                0.0
            }
        };
        let v: Vec<f64> = s.iter().map(|&x| bump(x)).collect();
        let check = support_check(&s, &v, 2.0, 1e-8).unwrap();
        assert!(check.pass);
        assert!(check.observed_radius <= 2.0 + 1e-12);
        let tight = support_check(&s, &v, 1.0, 1e-8).unwrap();
        assert!(!tight.pass);
        assert!(tight.observed_radius > 1.5);
        let zeros = support_check(&s, &vec![0.0; s.len()], 1.0, 1e-8).unwrap();
        assert!(zeros.pass);
        assert_eq!(zeros.observed_radius, 0.0);
    }

    #[test]
    fn constant_term_geometric_tail_is_tight() {
        let s = grid(0.0, 4.0, 0.25);
        let v: Vec<f64> = s.iter().map(|&x| 1.0 + (-x).exp()).collect();
        let ct = constant_term(&s, &v).unwrap();
        assert!(ct.converged);
        assert!((ct.value - 1.0).abs() < 1e-10, "value {}", ct.value);
        // The uncertainty is deliberately conservative (size of the first
        // neglected correction), far larger than the actual error here.
        assert!(ct.uncertainty < 1e-2);
        assert!((ct.value - 1.0).abs() < ct.uncertainty.max(1e-12));
    }

    #[test]
    fn constant_term_polynomial_tail_is_loose_but_sane() {
        let s = grid(2.0, 12.0, 0.25);
        let v: Vec<f64> = s.iter().map(|&x| 1.0 + 1.0 / x).collect();
        let ct = constant_term(&s, &v).unwrap();
        assert!((ct.value - 1.0).abs() < 0.1, "value {}", ct.value);
    }

    #[test]
    fn constant_term_flags_divergence() {
        let s = grid(0.0, 10.0, 0.5);
        let v: Vec<f64> = s.iter().map(|&x| x).collect();
        let ct = constant_term(&s, &v).unwrap();
        assert!(!ct.converged);
        assert!(constant_term(&s[..3], &v[..3]).is_err());
    }

    #[test]
    fn reports_serialize() {
        let report = DecayReport {
            fit: Some(ExponentFit {
                exponents: vec![1.0],
                coefficients: vec![2.0],
                residual: 1e-9,
            }),
            noise_floor: 1e-8,
            verdicts: vec![],
            certified_orders: vec![0, 1],
            support: None,
            constant: Some(ConstantTerm {
                value: 1.0,
                uncertainty: 1e-10,
                converged: true,
            }),
        };
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("certified_orders"));
    }
}
