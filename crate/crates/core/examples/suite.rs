//! Run every built-in identity and print the report.
//!
//! `cargo run --release --example suite -- [terms] [mmax]`

use theta_forms::identities::{default_registry, run_suite, VerifyConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let mut cfg = VerifyConfig::default();
    if let Some(n) = args.next() {
        cfg.terms = n.parse().expect("terms");
    }
    if let Some(m) = args.next() {
        cfg.mmax = m.parse().expect("mmax");
    }
    let report = run_suite(&default_registry(), &cfg);
    print!("{}", report.to_table());
    println!("{}", report.summary());
}
