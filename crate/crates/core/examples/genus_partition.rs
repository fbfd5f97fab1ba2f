//! Split the classes of a ternary discriminant into genera.
//!
//! `cargo run --release --example genus_partition -- 784`

use theta_forms::genus::genus_partition;

fn main() {
    let disc: i64 = std::env::args().nth(1).map(|s| s.parse().expect("discriminant")).unwrap_or(144);
    let genera = genus_partition(disc);
    println!("discriminant {disc}: {} genera", genera.len());
    for (i, g) in genera.iter().enumerate() {
        let members: Vec<String> = g.classes.iter().map(|f| format!("{f}[{}]", f.aut_count())).collect();
        println!("{:>3} {}  {}", i + 1, g, members.join(" "));
    }
}
