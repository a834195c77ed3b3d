//! Galois-module bookkeeping on explicit witnesses: toric case, t_2 = t_5,
//! stage rule and the Weil endgame.
//!
//! `cargo run --example galois_module -- 7` uses seed 7 for random instances.

use semistable_replay::galois_module::{
    random_instance, replay_t2_equals_t5, replay_toric_case, toric_instance, two_prime_instance,
    unipotent_pair_constraint, weil_contradiction,
};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);

    let (inst, w) = toric_instance(None, 2);
    println!(
        "canonical toric witness, d = 2: {:?}",
        replay_toric_case(&inst, &w).unwrap()
    );
    let (inst, w) = toric_instance(Some(seed), 3);
    println!(
        "random toric witness, d = 3: passed {}",
        replay_toric_case(&inst, &w).unwrap().passed()
    );

    for t in 0..=2 {
        let x = two_prime_instance(Some(seed), 2, t).unwrap();
        println!(
            "t_2 = t_5 = {t}: passed {}",
            replay_t2_equals_t5(&x).unwrap().passed()
        );
    }

    let mut inst = random_instance(seed, 5, 2, &[2]);
    println!(
        "random instance at 2: t = {}, a = {}",
        inst.t(2).unwrap(),
        inst.a(2).unwrap()
    );
    let kappa = inst.at(2).unwrap().mt.clone();
    let step = inst.isogeny_step(2, &kappa).unwrap();
    println!(
        "quotient by M_t: delta ord = {}, stage bumped {}",
        step.delta_ord, step.stage_incremented
    );

    for t in 1..=2 {
        println!(
            "unipotent pair forces a = 0 for t = {t}: {}",
            unipotent_pair_constraint(t).unwrap()
        );
    }
    for (ell, q) in [(5, 7), (3, 3), (3, 7)] {
        println!(
            "Weil contradiction l = {ell}, q = {q}: {}",
            weil_contradiction(ell, 2, 1, q).unwrap()
        );
    }

    let spec = inst.to_spec();
    println!("{}", serde_json::to_string(&spec).unwrap());
}
