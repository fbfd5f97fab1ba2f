//! Degree-3 modular equations, checked as rational identities in the
//! parameter p.

use theta_forms::identities::modeq::{alpha, beta, multiplier};
use theta_forms::identities::{default_registry, verify_modeq3, Mode};

fn main() {
    println!("alpha = {}", alpha());
    println!("beta  = {}", beta());
    println!("m     = {}", multiplier());
    let registry = default_registry();
    for spec in registry.entries().iter().filter(|e| e.mode == Mode::ModEq3) {
        let chk = verify_modeq3(spec).expect("modeq entry");
        println!("{:<14} {}", spec.name, if chk.holds() { "holds" } else { "FAILS" });
        if !chk.holds() {
            println!("  lhs {}\n  rhs {}", chk.lhs, chk.rhs);
        }
    }
}
