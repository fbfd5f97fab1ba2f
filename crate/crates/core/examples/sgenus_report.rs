//! Genera, epsilon characters and masses for a squarefree odd S.
//!
//! `cargo run --release --example sgenus_report -- 21`

use theta_forms::arith::divisors;
use theta_forms::genus::{build_sgenus, mass_direct, mass_formula, orthogonality_check, sgenus_mass};

fn main() {
    let s: i64 = std::env::args().nth(1).map(|a| a.parse().expect("S")).unwrap_or(15);
    let sg = build_sgenus(s).expect("squarefree odd S");
    for (i, g) in sg.tg.iter().enumerate() {
        let eps: Vec<String> = divisors(s).iter().map(|&w| format!("{:+}", sg.eps(i, w).unwrap())).collect();
        let bins: Vec<String> = sg.binary[i].iter().map(|b| b.to_string()).collect();
        println!(
            "TG{} {:<28} eps {}  mass {} = {}",
            i + 1,
            bins.join(" "),
            eps.join(" "),
            mass_direct(g).unwrap(),
            mass_formula(g, s).unwrap()
        );
    }
    for w in divisors(s).into_iter().filter(|&w| w > 1) {
        println!("orthogonal at w={w}: {}", orthogonality_check(&sg, w).unwrap());
    }
    println!("total mass {} for S={s}", sgenus_mass(&sg).unwrap());
}
