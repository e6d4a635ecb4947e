//! Structure of the partial integral G: homogeneity of degree dp + d - 1
//! along rays, evenness in the middle slot, and invariance under flipping
//! the sign of both endpoint slots — on a real and a complex space.

use hypabel::analysis::log_slope;
use hypabel::params::{Field, SpaceParams, Variant};
use hypabel::probes::GaussianRadial;
use hypabel::quadrature::QuadratureSpec;
use hypabel::transforms::{g_function, GPoint};

fn main() {
    let spec = QuadratureSpec::default();
    let f = GaussianRadial::new(1.0);

    for sp in [
        SpaceParams::new(Field::Real, 1, 3, Variant::Projective).unwrap(),
        SpaceParams::new(Field::Complex, 0, 2, Variant::Projective).unwrap(),
    ] {
        let degree = (sp.dp() + sp.d() as i64 - 1) as f64;
        println!("space {}  expected degree {degree}", sp.label());

        let base = GPoint::new(-0.3, -1.1, 0.4);
        let mut log_a = Vec::new();
        let mut vals = Vec::new();
        println!("  {:>5}  {:>22}", "a", "G(a t)");
        for &a in &[0.5, 0.7, 1.0, 1.4, 2.0] {
            let pt = GPoint::new(a * base.t1, a * base.t2, a * base.t3);
            let (g, _) = g_function(&f, &sp, &pt, &spec).unwrap();
            println!("  {a:>5}  {g:>22.15e}");
            log_a.push(a.ln());
            vals.push(g);
        }
        let slope = log_slope(&log_a, &vals).unwrap();
        println!("  fitted degree {slope:.12}   deviation {:.2e}", (slope - degree).abs());

        for (t1, t2, t3) in [(-0.3, -1.1, 0.4), (0.25, 1.3, -0.5)] {
            let (g, _) = g_function(&f, &sp, &GPoint::new(t1, t2, t3), &spec).unwrap();
            let (ev, _) = g_function(&f, &sp, &GPoint::new(t1, -t2, t3), &spec).unwrap();
            let (fl, _) = g_function(&f, &sp, &GPoint::new(-t1, t2, -t3), &spec).unwrap();
            println!(
                "  t = ({t1}, {t2}, {t3}): t2-flip rel {:.2e}, endpoint-flip rel {:.2e}",
                (ev - g).abs() / g.abs(),
                (fl - g).abs() / g.abs()
            );
        }
        println!();
    }
}
