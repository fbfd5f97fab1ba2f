//! Representation numbers of a ternary form, by lattice enumeration and by
//! the per-M count, side by side.
//!
//! `cargo run --example repcount -- 1,8,8,0,0,0 30`

use theta_forms::forms::TernaryForm;

fn main() {
    let mut args = std::env::args().skip(1);
    let form: TernaryForm = args.next().unwrap_or_else(|| "1,8,8,0,0,0".into()).parse().expect("form a,b,c,d,e,f");
    let mmax: usize = args.next().map(|s| s.parse().expect("mmax")).unwrap_or(30);
    println!("{form} disc {} aut {}", form.discriminant(), form.aut_count());
    let counts = form.theta_counts(mmax + 1);
    for (m, &c) in counts.iter().enumerate() {
        let direct = form.repcount(m as i64);
        assert_eq!(c, direct, "count mismatch at {m}");
        if c != 0 {
            println!("r({m}) = {c}");
        }
    }
}
