//! Parse a small registry from text and verify it, including one wrong
//! entry to show how failures are reported.

use theta_forms::identities::{parse_registry, run_suite, VerifyConfig};

const TEXT: &str = "\
# Jacobi and Gauss
jacobi: series: phi(q)^2 = phi(q^2)^2 + 4*q*psi(q^4)^2
gauss:  series: psi(q)^2 = phi(q)*psi(q^2)
broken: series: phi(q) = phi(q^4) + 4*q*psi(q^8)
r3:     ternary: (1,1,1,0,0,0)(M) = (1,1,1,0,0,0)(M/2^2)
    where M ≡ 0 mod 4
";

fn main() {
    let registry = parse_registry(TEXT).expect("registry text");
    let cfg = VerifyConfig { terms: 200, mmax: 500, ..VerifyConfig::default() };
    let report = run_suite(&registry, &cfg);
    print!("{}", report.to_table());
    println!("{}", report.summary());
}
