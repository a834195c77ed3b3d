//! Fontaine bounds, different exponents, local root discriminants and
//! conductor bookkeeping.

use semistable_replay::cft_data::CertifiedData;
use semistable_replay::ramification::{
    conductor_discriminant, conductor_from_cyclic_disc, fontaine_product_bound,
    root_disc_from_local_data, wild_candidate_exponents, wild_different_valuation, FormalIdeal,
    RamificationFiltration,
};

fn main() {
    println!(
        "Fontaine, l = 5 over {{2, 3}}: {}",
        fontaine_product_bound(5, &[2, 3]).unwrap()
    );
    println!(
        "Fontaine, l = 3 over {{2, 5}}: {}",
        fontaine_product_bound(3, &[2, 5]).unwrap()
    );

    let data = CertifiedData::shipped();
    for fd in &data.fields {
        let local = root_disc_from_local_data(fd).unwrap();
        println!("{:<28} degree {:>3}  delta = {local}", fd.id, fd.degree);
    }

    println!(
        "wild exponents for l = 5, e = 5, v < 10: {:?}",
        wild_candidate_exponents(5, 5, 10)
    );
    let filt = RamificationFiltration::new(vec![5, 5]).unwrap();
    println!(
        "different from filtration {:?}: {}",
        filt.orders(),
        wild_different_valuation(&filt)
    );
    println!(
        "conductor exponent from disc 8 over 4 characters: {}",
        conductor_from_cyclic_disc(8, 4).unwrap()
    );

    let pi2 = FormalIdeal::prime_power("pi", 2);
    let disc = conductor_discriminant(&[
        FormalIdeal::unit(),
        pi2.clone(),
        pi2.clone(),
        pi2.clone(),
        pi2,
    ])
    .unwrap();
    println!("conductor-discriminant for Z/5 with conductor pi^2: {disc}");
}
