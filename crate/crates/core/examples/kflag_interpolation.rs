// k-flagification sits between Dowker-Rips (k = 2) and Dowker (large k).

use std::error::Error;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration, kflag_filtration};
use dowker_rips::fixtures;
use dowker_rips::persistence::compute_persistence;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = fixtures::tetrahedron_matrix().transpose();
    let eps = 0.5;
    let mut rows = vec![("dowker-rips".to_string(), dowker_rips_filtration(&r, 3, eps)?)];
    for k in 3..=4 {
        rows.push((format!("kflag k={k}"), kflag_filtration(&r, k, 3, eps)?));
    }
    rows.push(("dowker".to_string(), dowker_filtration(&r, 3, eps)?));

    println!("{:<12} {:>16} {:>10}", "complex", "cells by dim", "betti");
    for (name, f) in &rows {
        let betti = compute_persistence(f, 2)?.betti_vector(eps, 3);
        println!("{name:<12} {:>16} {:>10}", format!("{:?}", f.counts_by_dim()), format!("{betti:?}"));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
