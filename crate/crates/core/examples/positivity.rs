//! psi(q)(phi(q)^2 - phi(q^S)^2) next to the bare difference
//! phi(q)^2 - phi(q^S)^2, which can go negative.

use theta_forms::identities::{check_positivity, parse_series_expr, positivity_expr};

fn main() {
    let limit = 1000;
    for s in [3, 5, 7, 15] {
        let bare = parse_series_expr(&format!("phi(q)^2 - phi(q^{s})^2")).unwrap();
        for expr in [positivity_expr(s), bare] {
            match check_positivity(&expr, limit).unwrap().witness {
                None => println!("{expr}: nonnegative below q^{limit}"),
                Some((k, c)) => println!("{expr}: q^{k} has {c}"),
            }
        }
    }
}
