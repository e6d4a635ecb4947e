//! The exchange identity: transforming the Laplacian of a probe gives the
//! same grid as applying d^2/ds^2 - rho_q^2 to the transformed probe. The
//! residual is bounded by stencil truncation plus amplified quadrature
//! noise, both of which the pipeline reports.

use std::sync::Arc;

use hypabel::laplacian::OperatorApplied;
use hypabel::params::{Field, OperatorD, SpaceParams, Variant};
use hypabel::probes::{GaussianRadial, TestFunction};
use hypabel::quadrature::QuadratureSpec;
use hypabel::transforms::{apply_l, compute_grid, GridSpec};

fn main() {
    let spec = QuadratureSpec::default();
    let xi = OperatorD::with_lambdas(vec![]);
    let grid = GridSpec::new(-2.0, 6.0, 0.05).unwrap();

    for sp in [
        SpaceParams::new(Field::Real, 0, 3, Variant::Projective).unwrap(),
        SpaceParams::new(Field::Complex, 0, 2, Variant::Projective).unwrap(),
    ] {
        let f: Arc<dyn TestFunction> = Arc::new(GaussianRadial::new(1.0));
        let base = compute_grid(f.as_ref(), &sp, &grid, &spec).unwrap();

        // Route one: differentiate upstream, then transform.
        let delta_f = OperatorApplied::delta(f.clone(), &sp).unwrap();
        let lhs = compute_grid(&delta_f, &sp, &grid, &spec).unwrap();

        // Route two: transform, then apply the shifted second derivative.
        let second = apply_l(&base, &xi, None).unwrap();
        let rho2 = sp.rho_q().squared();

        let scale = base.af.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let mut worst = 0.0_f64;
        let mut worst_s = f64::NAN;
        for i in second.valid_start..second.valid_end {
            let rhs = second.values[i].unwrap() - rho2 * base.af[i];
            let r = (lhs.af[i] - rhs).abs();
            if r > worst {
                worst = r;
                worst_s = base.s[i];
            }
        }
        println!(
            "space {}  rho_q^2 = {}  max |A(Delta f) - (A f)'' + rho_q^2 A f| = {worst:.3e} \
             at s = {worst_s}  ({:.1e} of the Abel scale {scale:.3e})",
            sp.label(),
            rho2,
            worst / scale
        );

        for &s in &[0.0, 1.0, 2.5] {
            let i = base.s.iter().position(|&x| (x - s).abs() < 1e-9).unwrap();
            let rhs = second.values[i].unwrap() - rho2 * base.af[i];
            println!(
                "  s = {s:<4} upstream route {:>14.6e}  stencil route {:>14.6e}",
                lhs.af[i], rhs
            );
        }
    }
}
