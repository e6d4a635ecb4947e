//! Finite-difference weights on arbitrary nodes (Fornberg's recurrence).
//!
//! Used for the high-order second-derivative stencils applied to Abel grids
//! and for the central z-stencils behind the boundary Taylor coefficients.

/// Weights `w[m][j]` such that `f^(m)(x0) ~= sum_j w[m][j] f(xs[j])`,
/// for every derivative order `m <= max_order`, exact on polynomials of
/// degree `xs.len() - 1`.
pub fn fd_weights(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    assert!(n > max_order, "need more nodes than the derivative order");
    let mut w = vec![vec![vec![0.0; n]; max_order + 1]; n];
    w[0][0][0] = 1.0;
    let mut c1 = 1.0;
    for i in 1..n {
        let c2: f64 = (0..i).map(|j| xs[i] - xs[j]).product();
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            for m in 0..=max_order.min(i) {
                let prev = if m > 0 { w[i - 1][m - 1][j] } else { 0.0 };
                let val = ((xs[i] - x0) * w[i - 1][m][j] - m as f64 * prev) / c3;
                w[i][m][j] = val;
            }
        }
        for m in 0..=max_order.min(i) {
            let prev = if m > 0 { w[i - 1][m - 1][i - 1] } else { 0.0 };
            w[i][m][i] =
                c1 / c2 * (m as f64 * prev - (xs[i - 1] - x0) * w[i - 1][m][i - 1]);
        }
        c1 = c2;
    }
    w.pop().unwrap()
}

/// Centered second-derivative stencil on `2*half + 1` uniformly spaced
/// nodes with spacing `h`; accuracy order `2*half`.
pub fn central_second_derivative(half: usize, h: f64) -> Vec<f64> {
    let xs: Vec<f64> = (-(half as i64)..=half as i64).map(|k| k as f64 * h).collect();
    fd_weights(0.0, &xs, 2).pop().unwrap()
}

/// Sum of absolute stencil coefficients times h^2; the dimensionless gain
/// that multiplies pointwise noise when the stencil is applied.
pub fn stencil_gain(stencil: &[f64], h: f64) -> f64 {
    stencil.iter().map(|c| c.abs()).sum::<f64>() * h * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn order8_second_derivative_table() {
        // Classical 9-point coefficients: [-1/560, 8/315, -1/5, 8/5, -205/72, ...].
        let h = 0.5;
        let w = central_second_derivative(4, h);
        let expect = [
            -1.0 / 560.0,
            8.0 / 315.0,
            -1.0 / 5.0,
            8.0 / 5.0,
            -205.0 / 72.0,
            8.0 / 5.0,
            -1.0 / 5.0,
            8.0 / 315.0,
            -1.0 / 560.0,
        ];
        for (wi, ei) in w.iter().zip(expect.iter()) {
            assert_relative_eq!(*wi, ei / (h * h), max_relative = 1e-12);
        }
    }

    #[test]
    fn first_derivative_order4() {
        let h = 0.1;
        let xs: Vec<f64> = (-2..=2).map(|k| k as f64 * h).collect();
        let w = &fd_weights(0.0, &xs, 1)[1];
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (wi, ei) in w.iter().zip(expect.iter()) {
            assert_relative_eq!(*wi, ei / h, epsilon = 1e-12);
        }
    }

    #[test]
    fn exact_on_polynomials() {
        // Degree-6 polynomial, third derivative at an off-center point.
        let xs: Vec<f64> = (0..7).map(|k| 0.3 * k as f64 - 0.9).collect();
        let x0 = 0.17;
        let w = fd_weights(x0, &xs, 3);
        let p = |x: f64| 1.0 - x + 2.0 * x.powi(3) + 0.5 * x.powi(6);
        let d3 = |x: f64| 12.0 + 60.0 * x.powi(3);
        let approx_d3: f64 = xs.iter().zip(&w[3]).map(|(x, c)| c * p(*x)).sum();
        assert_relative_eq!(approx_d3, d3(x0), max_relative = 1e-9);
    }

    #[test]
    fn stencil_applied_to_smooth_function() {
        let h = 0.05;
        let w = central_second_derivative(4, h);
        let f = |x: f64| (1.5 * x).sin();
        let x0 = 0.7;
        let val: f64 = w
            .iter()
            .enumerate()
            .map(|(j, c)| c * f(x0 + (j as f64 - 4.0) * h))
            .sum();
        let exact = -2.25 * (1.5 * x0).sin();
        assert_relative_eq!(val, exact, max_relative = 1e-11);
    }
}
