//! Radial part of the Laplace-Beltrami operator and its iterates.
//!
//! On K-invariant functions the operator reduces to the one-dimensional
//! expression `phi'' + A(s) phi'` with
//!
//! ```text
//! A(s) = dp coth s + dq tanh s + 2(d-1) coth 2s
//!      = (dp+d-1) coth s + (dq+d-1) tanh s,
//! ```
//!
//! forced in the real case by the induced metric on the quadric (volume
//! density `sinh^p t cosh^q t`) and extended to d > 1 by the multiplicity
//! count matching `2 rho_q` and `dim G/H`. The conjecture is not trusted
//! blindly: the exchange identity `A(Delta f) = (d^2/ds^2 - rho_q^2) A f`
//! is an acceptance gate of the verification suite.
//!
//! Internally everything is computed in the variable `sigma = sinh^2 s`,
//! where the operator has polynomial coefficients
//!
//! ```text
//! Delta Phi = 4 sigma (1+sigma) Phi''
//!           + [2(1+2 sigma) + 2(dp+d-1)(1+sigma) + 2(dq+d-1) sigma] Phi',
//! ```
//!
//! so there is no coordinate singularity at the base point: the s = 0 limit
//! `Delta phi(0) = (dp+d) phi''(0)` emerges from the same formula. Iterated
//! operators fold Taylor jets, two orders per factor, with no finite
//! differencing on the manifold side.

use std::sync::Arc;

use crate::geometry::AmbientVector;
use crate::jet::Jet;
use crate::params::{OperatorD, SpaceParams};
use crate::probes::{Decay, Invariance, RadialProfile, TestFunction};
use thiserror::Error;

/// Largest number of second-order factors a composite operator may carry.
pub const MAX_FACTORS: usize = 16;

#[derive(Debug, Error)]
pub enum LaplacianError {
    #[error("probe has no radial profile; the radial operator needs one")]
    MissingProfile,
    /// Retained for API completeness: sigma-backed profiles always satisfy
    /// phi'(0) = 0, so the limit at the base point exists structurally.
    #[error("radial derivative does not vanish at the base point")]
    PoleAtZero,
    #[error("composite operator with {requested} factors exceeds the depth limit {limit}")]
    DepthExceeded { requested: usize, limit: usize },
}

/// First-derivative coefficient `A(s)` of the radial operator. Diverges at
/// s = 0 like (dp+d-1)/s; the sigma-form entry points below do not use it
/// there.
pub fn a_coefficient(sp: &SpaceParams, s: f64) -> f64 {
    let (dp, dq, d) = (sp.dp() as f64, sp.dq() as f64, sp.d() as f64);
    dp / s.tanh() + dq * s.tanh() + 2.0 * (d - 1.0) / (2.0 * s).tanh()
}

/// Apply the radial operator to a jet of the profile in sigma. The output
/// order drops by two.
pub fn delta_sigma_jet(sp: &SpaceParams, phi: &Jet, sigma: f64) -> Jet {
    assert!(phi.order() >= 2, "radial operator needs a jet of order >= 2");
    let out = phi.order() - 2;
    let (dp, dq, d) = (sp.dp() as f64, sp.dq() as f64, sp.d() as f64);
    let d1 = phi.differentiate();
    let d2 = d1.differentiate();
    let c2 = Jet::polynomial(&[0.0, 4.0, 4.0], sigma, out);
    let a0 = 2.0 + 2.0 * (dp + d - 1.0);
    let a1 = 4.0 + 2.0 * (dp + d - 1.0) + 2.0 * (dq + d - 1.0);
    let c1 = Jet::polynomial(&[a0, a1], sigma, out);
    c2.mul(&d2).add(&c1.mul(&d1.truncate(out)))
}

/// The shifted operator `Delta_rho = Delta + rho_q^2` on a sigma-jet.
pub fn delta_rho_sigma_jet(sp: &SpaceParams, phi: &Jet, sigma: f64) -> Jet {
    let out = phi.order() - 2;
    delta_sigma_jet(sp, phi, sigma).add(&phi.truncate(out).scale(sp.rho_q().squared()))
}

fn profile_of<'f>(f: &'f dyn TestFunction) -> Result<&'f dyn RadialProfile, LaplacianError> {
    f.radial_profile().ok_or(LaplacianError::MissingProfile)
}

/// `Delta f` at radial coordinate s, for a probe with a radial profile.
pub fn delta_radial(f: &dyn TestFunction, sp: &SpaceParams, s: f64) -> Result<f64, LaplacianError> {
    let profile = profile_of(f)?;
    let sigma = s.sinh() * s.sinh();
    Ok(delta_sigma_jet(sp, &profile.sigma_jet(sigma, 2), sigma).value())
}

/// `Delta_rho f = (Delta + rho_q^2) f` at radial coordinate s.
pub fn delta_rho_radial(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    s: f64,
) -> Result<f64, LaplacianError> {
    Ok(delta_radial(f, sp, s)? + sp.rho_q().squared() * eval_profile(f, s)?)
}

fn eval_profile(f: &dyn TestFunction, s: f64) -> Result<f64, LaplacianError> {
    let profile = profile_of(f)?;
    let sigma = s.sinh() * s.sinh();
    Ok(profile.sigma_jet(sigma, 0).value())
}

/// Apply the composite operator `D = Delta_rho (Delta_rho - lambda_1^2) ...`
/// at radial coordinate s by folding jets, two orders per factor.
pub fn apply_d_radial(
    f: &dyn TestFunction,
    sp: &SpaceParams,
    op: &OperatorD,
    s: f64,
) -> Result<f64, LaplacianError> {
    let profile = profile_of(f)?;
    let shifts = op.shifts();
    if shifts.len() > MAX_FACTORS {
        return Err(LaplacianError::DepthExceeded {
            requested: shifts.len(),
            limit: MAX_FACTORS,
        });
    }
    let sigma = s.sinh() * s.sinh();
    let mut jet = profile.sigma_jet(sigma, 2 * shifts.len());
    for shift in shifts {
        jet = fold_factor(sp, &jet, sigma, shift);
    }
    Ok(jet.value())
}

/// One factor `Delta_rho - shift` on a sigma-jet.
fn fold_factor(sp: &SpaceParams, jet: &Jet, sigma: f64, shift: f64) -> Jet {
    let out = jet.order() - 2;
    delta_sigma_jet(sp, jet, sigma).add(&jet.truncate(out).scale(sp.rho_q().squared() - shift))
}

// ---------------------------------------------------------------------------
// Derived probes
// ---------------------------------------------------------------------------

/// A probe obtained by applying a product of shifted radial operators
/// `prod_k (Delta_rho - c_k)` to a K-invariant base probe. The result is
/// again K-invariant with the same decay class, so it feeds straight back
/// into the transform pipeline; this is what makes the two-route exchange
/// cross-checks possible.
pub struct OperatorApplied {
    base: Arc<dyn TestFunction>,
    sp: SpaceParams,
    shifts: Vec<f64>,
}

impl OperatorApplied {
    /// The plain Laplacian `Delta = Delta_rho - rho_q^2`.
    pub fn delta(base: Arc<dyn TestFunction>, sp: &SpaceParams) -> Result<Self, LaplacianError> {
        Self::with_shifts(base, sp, vec![sp.rho_q().squared()])
    }

    /// The composite operator from the discrete-series enumeration.
    pub fn with_operator(
        base: Arc<dyn TestFunction>,
        sp: &SpaceParams,
        op: &OperatorD,
    ) -> Result<Self, LaplacianError> {
        Self::with_shifts(base, sp, op.shifts())
    }

    /// `prod_k (Delta_rho - shifts[k])` applied to `base`.
    pub fn with_shifts(
        base: Arc<dyn TestFunction>,
        sp: &SpaceParams,
        shifts: Vec<f64>,
    ) -> Result<Self, LaplacianError> {
        if base.radial_profile().is_none() {
            return Err(LaplacianError::MissingProfile);
        }
        if shifts.len() > MAX_FACTORS {
            return Err(LaplacianError::DepthExceeded {
                requested: shifts.len(),
                limit: MAX_FACTORS,
            });
        }
        Ok(OperatorApplied {
            base,
            sp: sp.clone(),
            shifts,
        })
    }
}

impl RadialProfile for OperatorApplied {
    fn sigma_jet(&self, sigma: f64, order: usize) -> Jet {
        let inner = self
            .base
            .radial_profile()
            .expect("validated at construction")
            .sigma_jet(sigma, order + 2 * self.shifts.len());
        let mut jet = inner;
        for &shift in &self.shifts {
            jet = fold_factor(&self.sp, &jet, sigma, shift);
        }
        jet
    }
}

impl TestFunction for OperatorApplied {
    fn eval(&self, x: &AmbientVector) -> f64 {
        let sigma = x.sigma().expect("probe evaluated off the timelike cone");
        self.sigma_jet(sigma, 0).value()
    }

    fn invariance(&self) -> Invariance {
        Invariance::KInvariant
    }

    fn decay(&self) -> Decay {
        self.base.decay()
    }

    fn projective_ok(&self) -> bool {
        self.base.projective_ok()
    }

    fn tail_isotropic(&self) -> bool {
        true
    }

    fn radial_profile(&self) -> Option<&dyn RadialProfile> {
        Some(self)
    }

    fn describe(&self) -> String {
        let factors: Vec<String> = self
            .shifts
            .iter()
            .map(|c| {
                if *c == 0.0 {
                    "(Dr)".to_string()
                } else {
                    format!("(Dr-{})", c)
                }
            })
            .collect();
        format!("{} {}", factors.join(""), self.base.describe())
    }
}
