//! Valence-bound certificates for the eta-quotient identities of level 84
//! and level 360 in the built-in registry.

use theta_forms::identities::{default_registry, prove_entry, Mode};

fn main() {
    let registry = default_registry();
    for spec in registry.entries().iter().filter(|e| e.mode == Mode::EtaValence) {
        let cert = prove_entry(spec).expect("eta entry");
        println!("== {}", spec.name);
        print!("{}", cert.to_text());
    }
}
