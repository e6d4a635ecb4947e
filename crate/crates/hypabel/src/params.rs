//! Space parameters and exact structural arithmetic.
//!
//! A space is `X(p+1, q+1)` over `F` in `{R, C, H}` with `d = dim_R F`:
//! the quadric `[z, z] = -1` in `F^{p+q+2}`, optionally passed to the
//! projective quotient (identifying `z` with `z u` for unit `u`). All
//! structural quantities (`rho` factors, expansion exponents, discrete
//! series parameters) are half-integers and are kept exact as [`Half`]
//! values; floats appear only at the evaluation boundary.

use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

/// Base field of the ambient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension d of the field.
    pub fn dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParamsError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "real" => Ok(Field::Real),
            "c" | "complex" => Ok(Field::Complex),
            "h" | "quaternion" | "quaternionic" => Ok(Field::Quaternion),
            other => Err(ParamsError::InvalidSpace(format!(
                "unknown field {other:?} (expected R, C or H)"
            ))),
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }
}

/// Whether functions live on the quadric itself or on its projective
/// quotient. The quotient forces evenness constraints (only for `R` does
/// the distinction change anything observable here, hence the name).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Projective,
    RealNonProjective,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self, ParamsError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "projective" | "proj" => Ok(Variant::Projective),
            "real-nonprojective" | "nonprojective" | "nonproj" => Ok(Variant::RealNonProjective),
            other => Err(ParamsError::InvalidSpace(format!(
                "unknown variant {other:?} (expected projective or real-nonprojective)"
            ))),
        }
    }
}

/// Exact half-integer: the stored value is `numerator / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(n: i64) -> Half {
        Half(2 * n)
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Exact square as f64 (numerator^2 / 4 is exact in binary).
    pub fn squared(self) -> f64 {
        let n = self.0 as f64;
        n * n / 4.0
    }

    pub fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }

    pub fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_f64(self.value())
    }
}

/// Parameters of the space `X(p+1, q+1)` over `field`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceParams {
    pub field: Field,
    pub p: usize,
    pub q: usize,
    pub variant: Variant,
}

impl SpaceParams {
    pub fn new(field: Field, p: usize, q: usize, variant: Variant) -> Result<Self, ParamsError> {
        if q < 1 {
            return Err(ParamsError::InvalidSpace("q must be >= 1".into()));
        }
        if variant == Variant::RealNonProjective && field != Field::Real {
            return Err(ParamsError::InvalidSpace(
                "the non-projective variant only differs over R".into(),
            ));
        }
        Ok(SpaceParams { field, p, q, variant })
    }

    pub fn d(&self) -> usize {
        self.field.dim()
    }

    pub fn dp(&self) -> i64 {
        (self.d() * self.p) as i64
    }

    pub fn dq(&self) -> i64 {
        (self.d() * self.q) as i64
    }

    /// d(q - p), the quantity controlling the boundary expansion.
    pub fn dqp(&self) -> i64 {
        self.dq() - self.dp()
    }

    /// Number of F-coordinates of the ambient module.
    pub fn f_coords(&self) -> usize {
        self.p + self.q + 2
    }

    /// Real dimension of the ambient module.
    pub fn ambient_real_dim(&self) -> usize {
        self.d() * self.f_coords()
    }

    /// Real coordinates carrying a positive sign in the Hermitian form.
    pub fn pos_real_dim(&self) -> usize {
        self.d() * (self.p + 1)
    }

    /// Real dimension of the free block of a nilpotent orbit parameter.
    pub fn free_dim(&self) -> usize {
        self.d() * self.p.min(self.q)
    }

    /// Real dimension of the constrained tail block.
    pub fn tail_dim(&self) -> usize {
        self.d() * self.p.abs_diff(self.q)
    }

    /// Real dimension of the imaginary part of the field.
    pub fn w_dim(&self) -> usize {
        self.d() - 1
    }

    /// Total real dimension of the orbit parameter space.
    pub fn nilpotent_dim(&self) -> usize {
        self.free_dim() + self.tail_dim() + self.w_dim()
    }

    /// Real-coordinate range (0-based, half-open) that receives the sphere
    /// factor of the reduced integral when p < q: the negative-block
    /// F-coordinates strictly between the reflected block and the last one.
    pub fn sphere_block_range(&self) -> std::ops::Range<usize> {
        let d = self.d();
        d * (2 * self.p + 1)..d * (self.p + self.q + 1)
    }

    /// Real-coordinate range occupied by the unconstrained tail of the orbit
    /// parametrization: the last |p - q| F-coordinates of the longer block.
    /// For p < q this coincides with `sphere_block_range`; for p >= q it sits
    /// inside the positive block. Integrands invariant under rotations of
    /// this range admit a polar collapse of the tail integral.
    pub fn tail_block_range(&self) -> std::ops::Range<usize> {
        let d = self.d();
        if self.p >= self.q {
            d * (self.q + 1)..d * (self.p + 1)
        } else {
            self.sphere_block_range()
        }
    }

    /// Normalization exponent of the Radon transform over the full orbit.
    pub fn rho_q(&self) -> Half {
        Half(self.dp() + self.dq() + 2 * (self.d() as i64 - 1))
    }

    /// Normalization exponent of the Abel transform.
    pub fn rho_1(&self) -> Half {
        Half((self.dp() - self.dq()).abs() + 2 * (self.d() as i64 - 1))
    }

    pub fn label(&self) -> String {
        let var = match self.variant {
            Variant::Projective => "",
            Variant::RealNonProjective => ",nonproj",
        };
        format!("({},{},{}{})", self.field.short(), self.p, self.q, var)
    }
}

/// Number of boundary Taylor terms `k0` and the remainder exponent
/// `eps = d(q-p)/2 - k0` (either 1 or 1/2). Requires p < q.
pub fn k0_eps(sp: &SpaceParams) -> Result<(usize, Half), ParamsError> {
    let dqp = sp.dqp();
    if dqp < 1 {
        return Err(ParamsError::UnsupportedRegime(format!(
            "boundary expansion needs d(q-p) >= 1, got {dqp}"
        )));
    }
    // Largest integer strictly below dqp/2.
    let k0 = if dqp % 2 == 0 { dqp / 2 - 1 } else { (dqp - 1) / 2 };
    let eps = Half(dqp - 2 * k0);
    Ok((k0 as usize, eps))
}

/// One discrete series representation, parametrized by its spectral value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesParam {
    /// Positive spectral parameter, `lambda = d(q-p)/2 - 1 + mu`.
    pub lambda: Half,
    /// Integer offset; even except for the extra non-projective members.
    pub mu: i64,
    /// Carries a spherical (base-point fixed) vector.
    pub spherical: bool,
    /// Whether the transform of every smooth compactly supported matrix
    /// coefficient vanishes at infinity faster than any exponential.
    pub cuspidal: bool,
}

/// Enumerate discrete series parameters with `0 < lambda <= lambda_max`,
/// ascending in lambda.
///
/// One formula covers every regime: `lambda = d(q-p)/2 - 1 + mu` with
/// `mu` even. (For q = d = 1 the usual description is the parity condition
/// `|lambda| + rho_q in 2Z` over both signs of lambda; for lambda > 0 that
/// is the same set, and no member is spherical.) The non-projective variant
/// adds members with odd negative `mu`.
pub fn discrete_series(sp: &SpaceParams, lambda_max: f64) -> Vec<SeriesParam> {
    let base = sp.dqp() - 2; // numerator of 2 * (d(q-p)/2 - 1)
    let all_cuspidal = sp.dqp() <= 2;
    let mut out = Vec::new();
    let mut push = |mu: i64| {
        let lambda = Half(base + 2 * mu);
        if lambda.0 > 0 && lambda.value() <= lambda_max {
            out.push(SeriesParam {
                lambda,
                mu,
                spherical: mu <= 0 && mu % 2 == 0,
                cuspidal: all_cuspidal || mu > 0,
            });
        }
    };
    // Even offsets: mu from the smallest value with lambda > 0 upward.
    let mut mu = -(base / 2);
    mu -= mu.rem_euclid(2); // round down to even
    while Half(base + 2 * mu).0 <= 0 {
        mu += 2;
    }
    while Half(base + 2 * mu).value() <= lambda_max {
        push(mu);
        mu += 2;
    }
    if sp.variant == Variant::RealNonProjective {
        let mut mu = -1;
        while Half(base + 2 * mu).0 > 0 {
            push(mu);
            mu -= 2;
        }
    }
    out.sort_by_key(|s| s.lambda);
    out
}

/// Spectral parameters of the non-cuspidal discrete series: the exponents
/// `d(q-p)/2 - 1 - j > 0` for `0 <= j <= k0 - 1`, with `j` restricted to
/// even values in the projective variant. Empty whenever `d(q-p) <= 2`.
/// Returned descending.
pub fn noncuspidal(sp: &SpaceParams) -> Vec<Half> {
    if sp.dqp() <= 2 {
        return Vec::new();
    }
    let (k0, _) = k0_eps(sp).expect("d(q-p) > 2 implies p < q");
    let base = sp.dqp() - 2;
    let mut out = Vec::new();
    for j in 0..k0 as i64 {
        if sp.variant == Variant::Projective && j % 2 != 0 {
            continue;
        }
        let lambda = Half(base - 2 * j);
        if lambda.0 > 0 {
            out.push(lambda);
        }
    }
    out
}

/// The constant-coefficient image polynomial `L` of the invariant operator
/// `D = Delta_rho * prod_j (Delta_rho - lambda_j^2)` over the non-cuspidal
/// spectral values: `L(xi) = xi * prod_j (xi - lambda_j^2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorD {
    /// Spectral values whose exponential modes `D` annihilates, descending.
    pub lambdas: Vec<Half>,
    /// Ascending coefficients of `L`; the constant coefficient is 0.
    pub coeffs: Vec<f64>,
}

impl OperatorD {
    /// Build from an explicit list of spectral values.
    pub fn with_lambdas(lambdas: Vec<Half>) -> OperatorD {
        // L = xi * prod (xi - lambda^2), expanded by repeated convolution.
        let mut coeffs = vec![0.0, 1.0];
        for l in &lambdas {
            let l2 = l.squared();
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= l2 * c;
            }
            coeffs = next;
        }
        OperatorD { lambdas, coeffs }
    }

    /// Number of second-order factors (degree of `L`).
    pub fn factors(&self) -> usize {
        self.lambdas.len() + 1
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * xi + c;
        }
        acc
    }

    /// Shifts applied factor-wise: `D = prod (Delta_rho - shift)` with one
    /// zero shift first.
    pub fn shifts(&self) -> Vec<f64> {
        let mut s = vec![0.0];
        s.extend(self.lambdas.iter().map(|l| l.squared()));
        s
    }

    /// Human-readable polynomial, e.g. `xi^3 - 10 xi^2 + 9 xi`.
    pub fn display_poly(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            let coef = if (mag - 1.0).abs() < 1e-12 && k > 0 {
                String::new()
            } else if (mag.round() - mag).abs() < 1e-9 {
                format!("{} ", mag as i64)
            } else {
                format!("{mag} ")
            };
            let var = match k {
                0 => String::new(),
                1 => "xi".into(),
                _ => format!("xi^{k}"),
            };
            let sign = if parts.is_empty() {
                if c < 0.0 { "-".to_string() } else { String::new() }
            } else if c < 0.0 {
                " - ".into()
            } else {
                " + ".into()
            };
            parts.push(format!("{sign}{coef}{var}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.concat()
        }
    }
}

/// Build `D` from the non-cuspidal spectral values of the space.
/// Requires `d(q-p) > 1` (so that the expansion regime is non-trivial).
pub fn build_d(sp: &SpaceParams) -> Result<OperatorD, ParamsError> {
    if sp.dqp() <= 1 {
        return Err(ParamsError::UnsupportedRegime(format!(
            "operator D needs d(q-p) > 1, got {}",
            sp.dqp()
        )));
    }
    Ok(OperatorD::with_lambdas(noncuspidal(sp)))
}
