//! Recomputes the regression constant for `delta_chi` at r = 3 with twice
//! the terms the 1e-10 budget asks for.
//!
//!     cargo run --release --example freeze_regression [r]
//!
//! Needs about 3 GB of memory at r = 3.

use std::sync::Arc;
use std::time::Instant;

use rindler_pqc::metrics::holevo_with_average;
use rindler_pqc::{
    choose_cutoff, encrypt_partial, transform_dual_rail, AccelerationParam, Cutoff, LogicalQubit,
    PartialPair, RindlerEnsemble,
};

fn delta_chi(cutoff: &Cutoff) -> f64 {
    let pair = PartialPair::default();
    // the fully encrypted ensemble is a single state, so its Holevo
    // quantity is 0 and delta_chi is the partial one
    let members = vec![
        (0.5, Arc::new(transform_dual_rail(&encrypt_partial(&LogicalQubit::plus(), pair), cutoff))),
        (0.5, Arc::new(transform_dual_rail(&encrypt_partial(&LogicalQubit::minus(), pair), cutoff))),
    ];
    let avg = transform_dual_rail(&LogicalQubit::maximally_mixed(), cutoff);
    let ens = RindlerEnsemble::new(members).expect("valid ensemble");
    holevo_with_average(&ens, &avg).expect("finite entropy")
}

fn main() {
    let r: f64 = std::env::args().nth(1).map_or(3.0, |s| s.parse().expect("r"));
    let r = AccelerationParam::new(r).expect("r >= 0");
    let base = choose_cutoff(r, 1e-10).expect("feasible cutoff");
    for terms in [base.terms(), 2 * base.terms()] {
        let cutoff = Cutoff::with_terms(r, terms).expect("terms");
        let start = Instant::now();
        let value = delta_chi(&cutoff);
        println!(
            "r = {}  terms = {terms}  n_max = {}  delta_chi = {value:.16e}  ({:.1} s)",
            r.value(),
            cutoff.n_max(),
            start.elapsed().as_secs_f64()
        );
    }
}
