//! First coefficients of the built-in theta functions and of phi(q)^3.
//!
//! `cargo run --example expand_theta -- [terms]`

use theta_forms::theta::{general_theta, named_function, QArg, BUILTINS};

fn show(label: &str, coeffs: &[num_bigint::BigInt]) {
    let c: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    println!("{label:<12} {}", c.join(" "));
}

fn main() {
    let n: usize = std::env::args().nth(1).map(|s| s.parse().expect("terms")).unwrap_or(16);
    for (name, about) in BUILTINS.iter().filter(|(n, _)| *n != "f") {
        println!("# {about}");
        let s = named_function(name, &[QArg::Q], n).expect("unary builtin");
        show(&format!("{name}(q)"), s.coeffs());
    }
    let phi_neg = named_function("phi", &[QArg::neg_pow(1)], n).unwrap();
    show("phi(-q)", phi_neg.coeffs());
    show("f(q,q^2)", general_theta(1, 2, n).unwrap().coeffs());
    let phi = named_function("phi", &[QArg::Q], n).unwrap();
    show("phi(q)^3", phi.pow(3).coeffs());
}
