//! Parity of the boundary coefficients and why the variant matters. On the
//! projective space odd coefficients vanish for every admissible probe, so
//! the enumeration skips odd terms; a probe that is odd in one ambient
//! coordinate only lives on the non-projective variant, carries a pure odd
//! coefficient, and needs the enlarged enumeration before the operator can
//! flatten its transform.

use hypabel::analysis::{certified_orders, rapid_decay_check};
use hypabel::params::{build_d, Field, SpaceParams, Variant};
use hypabel::probes::OddModulated;
use hypabel::quadrature::QuadratureSpec;
use hypabel::transforms::{apply_l, compute_grid, taylor_coeffs_n, GridSpec};

fn main() {
    let spec = QuadratureSpec::default();
    let sp = SpaceParams::new(Field::Real, 0, 6, Variant::RealNonProjective).unwrap();
    let f = OddModulated::new(&sp, 1.0, 1).unwrap();
    println!("space {} (non-projective)  probe odd(beta=1, i=1)\n", sp.label());

    let tc = taylor_coeffs_n(&f, &sp, 2, &spec).unwrap();
    println!("boundary coefficients:");
    for (j, (c, e)) in tc.values.iter().zip(&tc.errors).enumerate() {
        println!("  c{j} = {c:>16.9e}  (est err {e:.1e})");
    }
    let oracle = -2.0 * std::f64::consts::PI.powf(3.5);
    println!(
        "  closed form for c1: -2 pi^(7/2) = {oracle:.9e}  (rel dev {:.1e})\n",
        (tc.values[1] - oracle).abs() / oracle.abs()
    );

    let tg = compute_grid(&f, &sp, &GridSpec::new(0.8, 6.7, 0.1).unwrap(), &spec).unwrap();
    let enlarged = build_d(&sp).unwrap();
    let projective = build_d(
        &SpaceParams::new(Field::Real, 0, 6, Variant::Projective).unwrap(),
    )
    .unwrap();

    for (tag, op) in [("enlarged", &enlarged), ("projective", &projective)] {
        let adf = apply_l(&tg, op, None).unwrap();
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
        let verdicts = rapid_decay_check(&sd, &vd, &fd, 2).unwrap();
        println!(
            "{tag:<11} L(xi) = {:<24} certified orders {:?}",
            op.display_poly(),
            certified_orders(&verdicts)
        );
        for v in &verdicts {
            println!(
                "  N = {}: {}  (peak {:.3}, drop {:.3e})",
                v.order,
                if v.pass { "decays" } else { "fails" },
                v.peak_ratio,
                v.drop_ratio
            );
        }
    }
    println!(
        "\nthe projective operator misses the odd spectral value, so the pure\n\
         odd mode e^s survives and the weighted tail grows instead of decaying"
    );
}
