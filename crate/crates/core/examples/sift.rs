//! Sift a product by residue class, then check the registry's sift entries.

use theta_forms::identities::{default_registry, parse_series_expr, verify_series, Mode};

fn main() {
    let n = 40;
    let expr = parse_series_expr("S[3,1](phi(q)*phi(q^3))").unwrap();
    let s = expr.eval(n).unwrap();
    let c: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    println!("{expr}: {}", c.join(" "));
    let registry = default_registry();
    for spec in registry.entries().iter().filter(|e| e.mode == Mode::Sift) {
        let verdict = match verify_series(spec, 300).unwrap() {
            None => "ok".to_string(),
            Some(m) => format!("differs at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs),
        };
        println!("{:<8} {verdict}", spec.name);
    }
}
