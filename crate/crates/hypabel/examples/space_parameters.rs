//! Derived invariants for a tour of spaces: half-sums, signature gap,
//! expansion depth, the enumerated spectral values, and the operator
//! polynomial they generate. The last two rows show how the projective and
//! non-projective variants of the same signature differ.

use hypabel::params::{build_d, k0_eps, noncuspidal, Field, SpaceParams, Variant};

fn main() {
    let spaces = [
        (Field::Real, 0, 2, Variant::Projective),
        (Field::Real, 0, 4, Variant::Projective),
        (Field::Real, 1, 3, Variant::Projective),
        (Field::Real, 1, 1, Variant::Projective),
        (Field::Complex, 0, 2, Variant::Projective),
        (Field::Complex, 0, 4, Variant::Projective),
        (Field::Quaternion, 0, 2, Variant::Projective),
        (Field::Real, 0, 6, Variant::Projective),
        (Field::Real, 0, 6, Variant::RealNonProjective),
    ];
    println!(
        "{:<16} {:>5} {:>6} {:>6} {:>4} {:>4}  {:<12} {}",
        "space", "rho_q", "rho_1", "d(q-p)", "k0", "eps", "lambdas", "L(xi)"
    );
    for (f, p, q, variant) in spaces {
        let sp = SpaceParams::new(f, p, q, variant).unwrap();
        let tag = sp.label();
        if sp.p >= sp.q {
            println!(
                "{tag:<16} {:>5} {:>6} {:>6}  no expansion regime (p >= q); support theorem applies",
                sp.rho_q().value(),
                sp.rho_1().value(),
                sp.dqp()
            );
            continue;
        }
        let (k0, eps) = k0_eps(&sp).unwrap();
        let lambdas: Vec<String> = noncuspidal(&sp)
            .iter()
            .map(|l| format!("{}", l.value()))
            .collect();
        let op = build_d(&sp);
        println!(
            "{tag:<16} {:>5} {:>6} {:>6} {:>4} {:>4}  {:<12} {}",
            sp.rho_q().value(),
            sp.rho_1().value(),
            sp.dqp(),
            k0,
            eps.value(),
            format!("{{{}}}", lambdas.join(", ")),
            op.map(|o| o.display_poly()).unwrap_or_else(|_| "-".into()),
        );
    }
}
