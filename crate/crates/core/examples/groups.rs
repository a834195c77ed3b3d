//! Small-group facts: automorphisms, Sylow subgroups, surjections, A4.

use semistable_replay::groups::library::{abelian, cyclic};
use semistable_replay::groups::{group_library, nilpotent_pair_group_order};

fn main() {
    for n in 1..10 {
        let counts: Vec<String> = group_library(n)
            .unwrap()
            .iter()
            .map(|g| format!("{}:{}", g.name(), g.automorphism_count().unwrap()))
            .collect();
        println!("order {n}: |Aut| {}", counts.join(" "));
    }

    for n in [10, 15, 20] {
        for g in group_library(n).unwrap() {
            println!(
                "{:<10} unique 5-Sylow {}  ab {:?}",
                g.name(),
                g.unique_sylow_check(5).unwrap(),
                g.abelianization()
            );
        }
    }

    let target = abelian(&[5, 5]);
    for g in group_library(125).unwrap() {
        let s = g.surjects_onto(&target);
        println!(
            "{:<14} onto Z5 x Z5: {s}  extension of Z5 by Z5 x Z5: {}",
            g.name(),
            g.is_extension_of(&target, &cyclic(5))
        );
    }

    for g in group_library(12).unwrap() {
        println!(
            "{:<10} ab {:?}  normal of order 6: {}  of order 3: {}",
            g.name(),
            g.abelianization(),
            g.has_normal_subgroup_of_order(6).unwrap(),
            g.has_normal_subgroup_of_order(3).unwrap()
        );
    }

    for k in 1..=3 {
        println!(
            "<sigma, tau> over F_3[a]/(a^{k}): order {}",
            nilpotent_pair_group_order(3, k).unwrap()
        );
    }
}
