//! The quadrature stack on known integrals: a Gauss-Legendre box, a
//! weighted halfline with a fractional endpoint power, and a sphere factor,
//! each against its closed form, followed by the doubling audit at work on
//! an analytic integrand versus one that is smooth but not analytic.

use std::f64::consts::PI;

use hypabel::quadrature::{
    integrate_axes, integrate_halfline, sphere_volume, Axis, QuadratureSpec,
};

fn main() {
    let spec = QuadratureSpec::default();

    // Full-line gaussian through a truncated box axis.
    let axis = Axis::line(-spec.truncation_radius, spec.truncation_radius, 64);
    let (got, _) = integrate_axes(&[axis], |c| (-c[0] * c[0]).exp());
    println!("box      int exp(-x^2) dx      = {got:.15}   exact {:.15}", PI.sqrt());

    // Halfline whose integrand carries a fractional endpoint power. Declaring
    // the power makes the rule substitute v = tau^2 so the product of
    // integrand and Jacobian is smooth in tau. The default truncation suits
    // gaussian decay; e^-v needs a wider window.
    let spec_h = QuadratureSpec {
        endpoint_power: 0.5,
        truncation_radius: 20.0,
        ..spec.clone()
    };
    let (got, err) = integrate_halfline(|v| v.sqrt() * (-v).exp(), 0.0, &spec_h).unwrap();
    // int_0^inf sqrt(v) exp(-v) dv = Gamma(3/2) = sqrt(pi)/2.
    println!(
        "halfline int sqrt(v) e^-v dv   = {got:.15}   exact {:.15}   (est err {err:.1e})",
        0.5 * PI.sqrt()
    );

    // Unit-sphere surface measures in several dimensions.
    for r in 1..=4 {
        let axis = Axis::sphere(r, 32);
        let (got, _) = integrate_axes(&[axis], |_| 1.0);
        println!(
            "sphere   S^{r} measure          = {got:.15}   exact {:.15}",
            sphere_volume(r)
        );
    }

    // The doubling audit: each round doubles the nodes and reports the
    // change as its error estimate. The analytic integrand converges
    // spectrally; the C^2 one only polynomially, so it exhausts its rounds.
    println!("\ndoubling audit (target {:.0e}):", spec.target_rel_tol);
    fn smooth(x: f64) -> f64 {
        (-x * x).exp()
    }
    fn kinked(x: f64) -> f64 {
        (1.0 - x.abs()).max(0.0).powi(3)
    }
    for (name, f) in [
        ("exp(-x^2)", smooth as fn(f64) -> f64),
        ("(1-|x|)+^3", kinked),
    ] {
        for rounds in 1..=3 {
            let s = QuadratureSpec {
                doubling_rounds: rounds,
                target_rel_tol: 1e-14,
                ..spec.clone()
            };
            let out = hypabel::quadrature::converge(&s, |level| {
                let n = s.nodes_per_dim << level;
                integrate_axes(&[Axis::line(-2.0, 2.0, n)], |c| f(c[0]))
            });
            match out {
                Ok((v, e)) => println!("  {name:<11} rounds {rounds}: {v:.15} (est err {e:.1e})"),
                Err(e) => println!("  {name:<11} rounds {rounds}: {e}"),
            }
        }
    }
}
