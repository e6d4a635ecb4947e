//! The full asymptotic pipeline on two spaces with different remainder
//! structure: growth exponent of the renormalized transform, boundary
//! Taylor coefficients, and certified rapid decay after the enumerated
//! operator. On (R,0,4) the remainder steps in whole powers of e^{-s} and
//! the window certifies weight orders up to 3; on (R,0,5) the half-integer
//! case leaves an e^{-s/2} tail, which caps what the same window can
//! honestly certify.

use hypabel::analysis::{certified_orders, log_slope, rapid_decay_check};
use hypabel::params::{build_d, k0_eps, Field, SpaceParams, Variant};
use hypabel::probes::GaussianRadial;
use hypabel::quadrature::QuadratureSpec;
use hypabel::transforms::{apply_l, compute_grid, taylor_coeffs_n, GridSpec};

fn main() {
    let spec = QuadratureSpec::default();
    let f = GaussianRadial::new(1.0);
    let grid = GridSpec::new(0.1, 8.0, 0.05).unwrap();

    for (field, p, q) in [(Field::Real, 0, 4), (Field::Real, 0, 5)] {
        let sp = SpaceParams::new(field, p, q, Variant::Projective).unwrap();
        let (k0, eps) = k0_eps(&sp).unwrap();
        let op = build_d(&sp).unwrap();
        println!(
            "space {}  k0 = {k0}  eps = {}  L(xi) = {}",
            sp.label(),
            eps.value(),
            op.display_poly()
        );

        let tg = compute_grid(&f, &sp, &grid, &spec).unwrap();

        // Growth exponent of Af over the far window.
        let idx: Vec<usize> = tg
            .s
            .iter()
            .enumerate()
            .filter(|(_, &s)| s >= 5.0)
            .map(|(i, _)| i)
            .collect();
        let sw: Vec<f64> = idx.iter().map(|&i| tg.s[i]).collect();
        let aw: Vec<f64> = idx.iter().map(|&i| tg.af[i]).collect();
        let slope = log_slope(&sw, &aw).unwrap();
        println!(
            "  growth exponent over [5, 8]: {slope:.6}  (expected rho_1 - d = {})",
            sp.rho_1().value() - sp.d() as f64
        );

        // Boundary Taylor coefficients.
        let tc = taylor_coeffs_n(&f, &sp, k0.max(2), &spec).unwrap();
        for (j, (c, e)) in tc.values.iter().zip(&tc.errors).enumerate() {
            println!("  c{j} = {c:>14.6e}  (est err {e:.1e})");
        }

        // Rapid decay after the operator, with the eps-aware order cap.
        let mu = if eps.value() < 1.0 { 1.0 - eps.value() } else { 1.0 };
        let n_max = ((mu * 3.0).floor() as usize).min(3);
        let adf = apply_l(&tg, &op, None).unwrap();
        let win: Vec<usize> = tg
            .s
            .iter()
            .enumerate()
            .filter(|(i, &s)| {
                (2.0..=5.5).contains(&s) && *i >= adf.valid_start && *i < adf.valid_end
            })
            .map(|(i, _)| i)
            .collect();
        let sd: Vec<f64> = win.iter().map(|&i| tg.s[i]).collect();
        let vd: Vec<f64> = win.iter().map(|&i| adf.values[i].unwrap()).collect();
        let fd: Vec<f64> = win.iter().map(|&i| adf.noise_floor[i].unwrap()).collect();
        let verdicts = rapid_decay_check(&sd, &vd, &fd, n_max).unwrap();
        println!(
            "  slowest surviving rate e^(-{mu} s): window [2, 5.5] certifies N <= {n_max}"
        );
        for v in &verdicts {
            println!(
                "    N = {}: {}  (peak {:.3}, drop {:.2e}{})",
                v.order,
                if v.pass { "decays" } else { "fails" },
                v.peak_ratio,
                v.drop_ratio,
                if v.hit_floor { ", reached noise floor" } else { "" }
            );
        }
        println!("  certified orders: {:?}\n", certified_orders(&verdicts));
    }
}
