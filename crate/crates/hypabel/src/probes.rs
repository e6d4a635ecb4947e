//! Test functions on the hyperbolic quadric.
//!
//! Every probe is homogeneous of degree zero (it only sees the ray through a
//! timelike vector), so it is well defined on the space itself and on the
//! rescaled points produced by the partial integrals of the transform
//! pipeline. Probes carry metadata that the integrators use to pick sound
//! fast paths:
//!
//! * [`Invariance`] — whether the probe depends only on the radial
//!   coordinate, is genuinely odd, or neither;
//! * [`Decay`] — super-exponential decay or compact support (radius in the
//!   radial coordinate);
//! * `projective_ok` — whether the probe descends to the projective space
//!   (is invariant under scaling by field units);
//! * `tail_isotropic` — whether the probe is invariant under rotations of
//!   the tail coordinate block, which collapses one sphere factor of the
//!   orbit integrals to a single representative point.
//!
//! Radial probes additionally expose their profile as a function of
//! `sigma = sinh^2(radial)`, as a Taylor jet of any order. Working in the
//! sigma variable keeps the radial Laplacian polynomial-coefficient and
//! avoids the coordinate singularity at the base point.

use crate::geometry::AmbientVector;
use crate::jet::{compose, sinh_squared_jet, Jet};
use crate::params::{SpaceParams, Variant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("coordinate index {index} outside 1..={limit}")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("odd probes require the real non-projective variant")]
    RequiresRealNonProjective,
    #[error("probe parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
}

/// Symmetry class of a probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariance {
    /// Depends only on the radial coordinate.
    KInvariant,
    /// Changes sign under the antipodal map.
    Odd,
    /// No symmetry the pipeline exploits.
    Generic,
}

/// Decay class of a probe along the radial coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// Decays faster than any exponential; all orbit integrals truncate.
    SuperSchwartz,
    /// Identically zero beyond the given radial coordinate.
    Compact(f64),
}

/// Radial profile in the variable `sigma = sinh^2(radial)`.
pub trait RadialProfile: Send + Sync {
    /// Taylor jet of the profile at `sigma`, to the requested order.
    fn sigma_jet(&self, sigma: f64, order: usize) -> Jet;
}

/// A scalar function on the timelike cone, homogeneous of degree zero.
pub trait TestFunction: Send + Sync {
    /// Evaluate at a timelike vector. Panics off the cone: integration
    /// always supplies orbit or reduced-locus points, which satisfy it.
    fn eval(&self, x: &AmbientVector) -> f64;

    fn invariance(&self) -> Invariance;

    fn decay(&self) -> Decay;

    /// Invariant under scaling by field units (descends to the projective
    /// space).
    fn projective_ok(&self) -> bool;

    /// Invariant under rotations of the tail coordinate block.
    fn tail_isotropic(&self) -> bool;

    /// The sigma-profile, when the probe is K-invariant.
    fn radial_profile(&self) -> Option<&dyn RadialProfile> {
        None
    }

    /// Short human-readable description for reports.
    fn describe(&self) -> String;
}

/// Profile value at a given sigma.
pub fn profile_value(profile: &dyn RadialProfile, sigma: f64) -> f64 {
    profile.sigma_jet(sigma, 0).value()
}

/// Taylor jet in the radial coordinate `s` at `s0`, obtained by composing
/// the sigma-jet with the jet of `sinh^2 s`.
pub fn profile_s_jet(profile: &dyn RadialProfile, s0: f64, order: usize) -> Jet {
    let inner = sinh_squared_jet(s0, order);
    let outer = profile.sigma_jet(inner.value(), order);
    compose(&outer, &inner)
}

fn sigma_of(x: &AmbientVector) -> f64 {
    x.sigma().expect("probe evaluated off the timelike cone")
}

// ---------------------------------------------------------------------------
// Gaussian radial probe
// ---------------------------------------------------------------------------

/// `exp(-beta * sinh^2(radial))`: K-invariant, super-exponentially decaying,
/// equal to 1 at the base point.
#[derive(Clone, Debug)]
pub struct GaussianRadial {
    beta: f64,
}

impl GaussianRadial {
    pub fn new(beta: f64) -> GaussianRadial {
        assert!(beta > 0.0, "gaussian width must be positive");
        GaussianRadial { beta }
    }
}

impl RadialProfile for GaussianRadial {
    fn sigma_jet(&self, sigma: f64, order: usize) -> Jet {
        Jet::variable(sigma, order).scale(-self.beta).exp()
    }
}

impl TestFunction for GaussianRadial {
    fn eval(&self, x: &AmbientVector) -> f64 {
        (-self.beta * sigma_of(x)).exp()
    }

    fn invariance(&self) -> Invariance {
        Invariance::KInvariant
    }

    fn decay(&self) -> Decay {
        Decay::SuperSchwartz
    }

    fn projective_ok(&self) -> bool {
        true
    }

    fn tail_isotropic(&self) -> bool {
        true
    }

    fn radial_profile(&self) -> Option<&dyn RadialProfile> {
        Some(self)
    }

    fn describe(&self) -> String {
        format!("gaussian_radial(beta={})", self.beta)
    }
}

// ---------------------------------------------------------------------------
// Compactly supported radial bump
// ---------------------------------------------------------------------------

/// Smooth bump `chi(sinh^2(radial) / sinh^2 R)` with
/// `chi(y) = exp(1 - 1/(1-y))` on [0, 1), zero beyond: K-invariant,
/// compactly supported in radial coordinate `R`, equal to 1 at the base
/// point.
#[derive(Clone, Debug)]
pub struct BumpRadial {
    radius: f64,
    sinh2_r: f64,
}

impl BumpRadial {
    pub fn new(radius: f64) -> BumpRadial {
        assert!(radius > 0.0, "bump radius must be positive");
        BumpRadial {
            radius,
            sinh2_r: radius.sinh() * radius.sinh(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl RadialProfile for BumpRadial {
    fn sigma_jet(&self, sigma: f64, order: usize) -> Jet {
        let y0 = sigma / self.sinh2_r;
        // Close enough to the boundary that 1/(1-y) overflows the jet
        // coefficients; the value there underflows to zero anyway.
        if y0 >= 1.0 - 1e-12 {
            return Jet::constant(0.0, order);
        }
        let y = Jet::variable(sigma, order).scale(1.0 / self.sinh2_r);
        let one_minus = y.scale(-1.0).add_scalar(1.0);
        one_minus.recip().scale(-1.0).add_scalar(1.0).exp()
    }
}

impl TestFunction for BumpRadial {
    fn eval(&self, x: &AmbientVector) -> f64 {
        let y = sigma_of(x) / self.sinh2_r;
        if y >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - y)).exp()
        }
    }

    fn invariance(&self) -> Invariance {
        Invariance::KInvariant
    }

    fn decay(&self) -> Decay {
        Decay::Compact(self.radius)
    }

    fn projective_ok(&self) -> bool {
        true
    }

    fn tail_isotropic(&self) -> bool {
        true
    }

    fn radial_profile(&self) -> Option<&dyn RadialProfile> {
        Some(self)
    }

    fn describe(&self) -> String {
        format!("bump_radial(R={})", self.radius)
    }
}

// ---------------------------------------------------------------------------
// Angular modulation
// ---------------------------------------------------------------------------

/// `Re(z_i conj(z_j)) / (-[x,x]) * exp(-beta * sigma)`: breaks K-invariance
/// while staying projective. `i`, `j` are 1-based F-coordinate indices.
#[derive(Clone, Debug)]
pub struct AngularModulated {
    beta: f64,
    i0: usize,
    j0: usize,
    isotropic: bool,
}

impl AngularModulated {
    pub fn new(
        sp: &SpaceParams,
        beta: f64,
        i: usize,
        j: usize,
    ) -> Result<AngularModulated, ProbeError> {
        if beta <= 0.0 {
            return Err(ProbeError::NonPositiveParameter {
                name: "beta",
                value: beta,
            });
        }
        let limit = sp.f_coords();
        for index in [i, j] {
            if index < 1 || index > limit {
                return Err(ProbeError::IndexOutOfRange { index, limit });
            }
        }
        let d = sp.d();
        let tail = sp.tail_block_range();
        let touches_tail = |b: usize| d * b < tail.end && tail.start < d * b + d;
        Ok(AngularModulated {
            beta,
            i0: i - 1,
            j0: j - 1,
            isotropic: !touches_tail(i - 1) && !touches_tail(j - 1),
        })
    }
}

impl TestFunction for AngularModulated {
    fn eval(&self, x: &AmbientVector) -> f64 {
        let h = x.hermitian_self();
        assert!(h < 0.0, "probe evaluated off the timelike cone");
        let dot: f64 = x
            .block(self.i0)
            .iter()
            .zip(x.block(self.j0))
            .map(|(a, b)| a * b)
            .sum();
        let sigma = x.pos_norm2() / -h;
        dot / -h * (-self.beta * sigma).exp()
    }

    fn invariance(&self) -> Invariance {
        Invariance::Generic
    }

    fn decay(&self) -> Decay {
        Decay::SuperSchwartz
    }

    fn projective_ok(&self) -> bool {
        true
    }

    fn tail_isotropic(&self) -> bool {
        self.isotropic
    }

    fn describe(&self) -> String {
        format!(
            "angular_modulated(beta={}, i={}, j={})",
            self.beta,
            self.i0 + 1,
            self.j0 + 1
        )
    }
}

// ---------------------------------------------------------------------------
// Odd modulation (real non-projective variant only)
// ---------------------------------------------------------------------------

/// `x_i / sqrt(-[x,x]) * exp(-beta * sigma)`: genuinely odd under the
/// antipodal map, hence meaningful only on the real non-projective variant.
/// `i` is a 1-based coordinate index.
#[derive(Clone, Debug)]
pub struct OddModulated {
    beta: f64,
    coord: usize,
    isotropic: bool,
}

impl OddModulated {
    pub fn new(sp: &SpaceParams, beta: f64, i: usize) -> Result<OddModulated, ProbeError> {
        if sp.variant != Variant::RealNonProjective {
            return Err(ProbeError::RequiresRealNonProjective);
        }
        if beta <= 0.0 {
            return Err(ProbeError::NonPositiveParameter {
                name: "beta",
                value: beta,
            });
        }
        let limit = sp.f_coords();
        if i < 1 || i > limit {
            return Err(ProbeError::IndexOutOfRange { index: i, limit });
        }
        let tail = sp.tail_block_range();
        Ok(OddModulated {
            beta,
            coord: i - 1,
            isotropic: !tail.contains(&(i - 1)),
        })
    }
}

impl TestFunction for OddModulated {
    fn eval(&self, x: &AmbientVector) -> f64 {
        let h = x.hermitian_self();
        assert!(h < 0.0, "probe evaluated off the timelike cone");
        let sigma = x.pos_norm2() / -h;
        x.coords()[self.coord] / (-h).sqrt() * (-self.beta * sigma).exp()
    }

    fn invariance(&self) -> Invariance {
        Invariance::Odd
    }

    fn decay(&self) -> Decay {
        Decay::SuperSchwartz
    }

    fn projective_ok(&self) -> bool {
        false
    }

    fn tail_isotropic(&self) -> bool {
        self.isotropic
    }

    fn describe(&self) -> String {
        format!("odd_modulated(beta={}, i={})", self.beta, self.coord + 1)
    }
}

// ---------------------------------------------------------------------------
// Zero probe
// ---------------------------------------------------------------------------

/// The identically-zero function. Useful as a pipeline smoke input: every
/// transform of it must come out exactly zero, with zero error estimate.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroProbe;

impl RadialProfile for ZeroProbe {
    fn sigma_jet(&self, _sigma: f64, order: usize) -> Jet {
        Jet::constant(0.0, order)
    }
}

impl TestFunction for ZeroProbe {
    fn eval(&self, _x: &AmbientVector) -> f64 {
        0.0
    }

    fn invariance(&self) -> Invariance {
        Invariance::KInvariant
    }

    fn decay(&self) -> Decay {
        Decay::Compact(0.0)
    }

    fn projective_ok(&self) -> bool {
        true
    }

    fn tail_isotropic(&self) -> bool {
        true
    }

    fn radial_profile(&self) -> Option<&dyn RadialProfile> {
        Some(self)
    }

    fn describe(&self) -> String {
        "zero".to_string()
    }
}
