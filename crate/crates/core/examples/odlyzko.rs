//! GRH Odlyzko table lookups and degree bounds.
//!
//! Pass a CSV path to use another table: `cargo run --example odlyzko -- table.csv`.

use semistable_replay::factored_real::{ComparePolicy, FactoredReal};
use semistable_replay::odlyzko::{shipped_table, OdlyzkoTable};

fn main() {
    let table = match std::env::args().nth(1) {
        Some(path) => OdlyzkoTable::load(std::fs::File::open(path).expect("readable table"))
            .expect("valid table"),
        None => shipped_table(),
    };
    for (degree, bound) in table.rows() {
        println!("degree >= {degree:>5}: root discriminant > {}", bound);
    }
    for d in [100, 126, 500, 1000, 5000] {
        match table.min_root_disc(d) {
            Ok(b) => println!("min root disc at degree {d}: {b}"),
            Err(e) => println!("degree {d}: {e}"),
        }
    }
    for delta in [
        "5^5/4 * 6^4/5",
        "5^6/5 * 6^4/5",
        "3^3/2 * 10^2/3",
        "3^4/3 * 10^2/3",
        "40",
    ] {
        let x: FactoredReal = delta.parse().unwrap();
        println!(
            "delta < {delta}: degree {:?}",
            table.max_degree_below_with(&x, ComparePolicy::default())
        );
    }
}
