//! The support theorem regime: on a space with p >= q the transform of a
//! compactly supported probe is itself compactly supported, with the same
//! radius. The quadrature budget is adapted for compact probes (their flat
//! support edge defeats a purely relative convergence audit).

use hypabel::analysis::support_check;
use hypabel::params::{Field, SpaceParams, Variant};
use hypabel::probes::BumpRadial;
use hypabel::quadrature::QuadratureSpec;
use hypabel::transforms::{compute_grid, effective_spec, GridSpec};

fn main() {
    let sp = SpaceParams::new(Field::Real, 1, 1, Variant::Projective).unwrap();
    println!("space {}  (p >= q: support theorem applies)\n", sp.label());

    for radius in [1.0, 2.0] {
        let f = BumpRadial::new(radius);
        let spec = effective_spec(&f, &QuadratureSpec::default());
        let grid = GridSpec::new(-(radius + 2.0), radius + 2.0, 0.05).unwrap();
        let tg = compute_grid(&f, &sp, &grid, &spec).unwrap();

        let check = support_check(&tg.s, &tg.af, radius, 1e-8).unwrap();
        println!(
            "bump radius {radius}: observed support radius {:.3} (declared {radius}, \
             threshold {:.1e})  ->  {}",
            check.observed_radius,
            check.threshold,
            if check.pass { "contained" } else { "LEAKS" }
        );

        println!("  {:>6}  {:>14}", "s", "Af");
        for (s, af) in tg.s.iter().zip(&tg.af) {
            if (s * 4.0).round() == s * 4.0 {
                println!("  {s:>6}  {af:>14.6e}");
            }
        }
        println!();
    }
}
