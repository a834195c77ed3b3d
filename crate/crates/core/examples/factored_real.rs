//! Exact products of rational prime powers: comparison and certified decimals.

use semistable_replay::factored_real::{parse_rational, FactoredReal};

fn main() {
    let width = parse_rational("0.000001").unwrap();
    for (expr, bound) in [
        ("5^5/4 * 6^4/5", "31.645"),
        ("5^6/5 * 6^4/5", "29.094"),
        ("3^3/2 * 10^2/3", "24.258"),
        ("3^4/3 * 10^2/3", "20.221"),
        ("3^35/24 * 10^2/3", "23.089"),
    ] {
        let x: FactoredReal = expr.parse().unwrap();
        let b: FactoredReal = bound.parse().unwrap();
        println!(
            "{expr:>18} in {}  {:?} {bound}",
            x.decimal_interval(&width),
            x.compare(&b)
        );
    }

    // Identities hold structurally, with no rounding involved.
    let lhs = FactoredReal::power_frac(5, 23, 20).mul(&FactoredReal::power_frac(5, 10, 100));
    println!(
        "5^23/20 * 5^10/100 = {lhs}, equals 5^5/4: {}",
        lhs == FactoredReal::power_frac(5, 5, 4)
    );
    let lhs = FactoredReal::power_frac(3, 7, 6).mul(&FactoredReal::power_frac(3, 1, 3));
    println!("3^7/6 * 3^1/3 = {lhs}");

    // Decimal inputs are factored exactly: 31.645 = 6329 / 200.
    let b: FactoredReal = "31.645".parse().unwrap();
    println!("31.645 = {b}");
}
