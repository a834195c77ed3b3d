//! Loading and cross-checking certified class-field data.
//!
//! `cargo run --example cft_data -- DIR` loads the four JSON files from DIR.

use semistable_replay::cft_data::{
    kronecker_weber_check, load_certified_data, residue_generation_check,
    splitting_consistency_check, DataSources,
};

fn main() {
    let sources = match std::env::args().nth(1) {
        Some(dir) => DataSources::from_dir(dir.as_ref()).expect("readable data"),
        None => DataSources::shipped(),
    };
    let data = match load_certified_data(&sources) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("rejected: {e}");
            std::process::exit(2);
        }
    };
    for r in &data.rayclass {
        println!(
            "{:<28} ray class {}  class number {:?}",
            r.field_id, r.ray_class_number, r.class_number
        );
    }
    for u in &data.unit_images {
        println!(
            "{:<28} units {:?} generate: {}",
            u.field_id,
            u.units,
            residue_generation_check(u)
        );
    }
    for p in [2, 5] {
        let ok = splitting_consistency_check(
            &data,
            "Q(zeta3,2^(1/3),5^(1/3))",
            "HCF(Q(zeta3,2^(1/3),5^(1/3)))",
            p,
            3,
        )
        .unwrap();
        println!("{p} splits into 3 primes of the Hilbert class field: {ok}");
    }
    println!(
        "Z/5 extension unramified outside {{2,3}}: {}",
        kronecker_weber_check(5, &[2, 3])
    );
    println!(
        "Z/3 extension unramified outside {{2,5}}: {}",
        kronecker_weber_check(3, &[2, 5])
    );
    println!(
        "Z/3 extension unramified outside {{7}}: {}",
        kronecker_weber_check(3, &[7])
    );
}
