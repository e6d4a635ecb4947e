//! Truncated Taylor series ("jets") in one variable.
//!
//! A [`Jet`] stores Taylor coefficients `c[k] = f^(k)(x0) / k!` of a smooth
//! function around a base point. Arithmetic truncates at the stored order.
//! The radial Laplacian uses jets in the variable `sigma = sinh^2 s`, where
//! its coefficients are polynomials, so iterated applications reduce to the
//! exact recurrences below with no finite differencing.

/// Taylor coefficients `c[k] = f^(k)/k!` around a fixed base point.
/// All binary operations require equal lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    c: Vec<f64>,
}

impl Jet {
    /// Jet of the constant function `value` truncated at `order`.
    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = value;
        Jet { c }
    }

    /// Jet of the identity `x` expanded around `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = x0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    /// Jet of a polynomial with ascending coefficients `poly`, expanded
    /// around `x0` by Horner evaluation in jet arithmetic.
    pub fn polynomial(poly: &[f64], x0: f64, order: usize) -> Self {
        let x = Jet::variable(x0, order);
        let mut acc = Jet::constant(0.0, order);
        for &a in poly.iter().rev() {
            acc = acc.mul(&x);
            acc.c[0] += a;
        }
        acc
    }

    /// Build directly from Taylor coefficients `c[k] = f^(k)(x0)/k!`.
    pub fn from_coeffs(c: Vec<f64>) -> Self {
        assert!(!c.is_empty(), "a jet has at least its value");
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    /// Function value at the base point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the base point (`c[k] * k!`).
    pub fn derivative_value(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    /// Jet of `f'`, one order shorter.
    pub fn differentiate(&self) -> Jet {
        let n = self.c.len();
        assert!(n >= 2, "cannot differentiate an order-0 jet");
        let mut c = Vec::with_capacity(n - 1);
        for k in 1..n {
            c.push(self.c[k] * k as f64);
        }
        Jet { c }
    }

    /// Copy truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order < self.c.len());
        Jet {
            c: self.c[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, a: f64) -> Jet {
        Jet {
            c: self.c.iter().map(|x| a * x).collect(),
        }
    }

    pub fn add_scalar(&self, a: f64) -> Jet {
        let mut out = self.clone();
        out.c[0] += a;
        out
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        let n = self.c.len();
        assert_eq!(n, rhs.c.len(), "jet order mismatch");
        let mut c = vec![0.0; n];
        for i in 0..n {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }

    /// Series reciprocal; requires a nonzero constant term.
    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        assert!(self.c[0] != 0.0, "reciprocal of a jet with zero value");
        let mut c = vec![0.0; n];
        c[0] = 1.0 / self.c[0];
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * c[k - j];
            }
            c[k] = -acc / self.c[0];
        }
        Jet { c }
    }

    pub fn div(&self, rhs: &Jet) -> Jet {
        self.mul(&rhs.recip())
    }

    /// exp of the jet, via the recurrence `k e_k = sum_j j u_j e_{k-j}`.
    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * c[k - j];
            }
            c[k] = acc / k as f64;
        }
        Jet { c }
    }

    /// Real power `u^alpha`; requires a positive constant term.
    pub fn powf(&self, alpha: f64) -> Jet {
        let n = self.c.len();
        assert!(self.c[0] > 0.0, "powf of a jet with non-positive value");
        let mut c = vec![0.0; n];
        c[0] = self.c[0].powf(alpha);
        // From u p' = alpha u' p:
        // k u_0 p_k = sum_{j=1..k} (alpha j - (k - j)) u_j p_{k-j}.
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (alpha * j as f64 - (k - j) as f64) * self.c[j] * c[k - j];
            }
            c[k] = acc / (k as f64 * self.c[0]);
        }
        Jet { c }
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn sinh(&self) -> Jet {
        let e = self.exp();
        let em = self.scale(-1.0).exp();
        e.sub(&em).scale(0.5)
    }

    pub fn cosh(&self) -> Jet {
        let e = self.exp();
        let em = self.scale(-1.0).exp();
        e.add(&em).scale(0.5)
    }

    fn zip(&self, rhs: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        assert_eq!(self.c.len(), rhs.c.len(), "jet order mismatch");
        Jet {
            c: self
                .c
                .iter()
                .zip(rhs.c.iter())
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

/// Jet of `sinh^2 s` in the variable `s` around `s0`.
pub fn sinh_squared_jet(s0: f64, order: usize) -> Jet {
    let s = Jet::variable(s0, order);
    let sh = s.sinh();
    sh.mul(&sh)
}

/// Composition `g(f(x))` where `g_of` maps a sigma-jet builder: given the
/// inner jet `f` (constant term `f0`), evaluates the outer series around
/// `f0` and recomposes. The outer series is supplied as coefficients around
/// `f.value()`.
pub fn compose(outer: &Jet, inner: &Jet) -> Jet {
    let order = inner.order();
    assert_eq!(outer.order(), order, "jet order mismatch");
    // Horner in (inner - inner.value()).
    let mut shifted = inner.clone();
    shifted.c[0] = 0.0;
    let mut acc = Jet::constant(0.0, order);
    for k in (0..=order).rev() {
        acc = acc.mul(&shifted);
        acc.c[0] += outer.c[k];
    }
    acc
}
