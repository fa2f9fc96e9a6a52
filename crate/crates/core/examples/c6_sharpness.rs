// The three-point relation where Dowker-Rips fills a triangle at scale 1
// that the Dowker filtration only reaches at scale 3.

use std::error::Error;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration};
use dowker_rips::fixtures;
use dowker_rips::oracles::{minimal_interleaving_constant, verify_theorems_with, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = fixtures::c6_matrix();
    println!("relation:\n{r}");

    let d = dowker_filtration(&r, 2, f64::INFINITY)?;
    let dr = dowker_rips_filtration(&r, 2, f64::INFINITY)?;
    let triangle = [0usize, 1, 2];
    let value = |f: &dowker_rips::Filtration| f.iter().find(|s| s.vertices == triangle).map(|s| s.value);
    println!("triangle: dowker {:?}, dowker-rips {:?}", value(&d), value(&dr));
    println!("smallest working constant: {}", minimal_interleaving_constant(&d, &dr));

    for c in [3.0, 2.99] {
        let config = VerifyConfig {
            max_dim: 2,
            interleaving_constant: c,
            ..VerifyConfig::default()
        };
        let report = verify_theorems_with(&r, &config)?;
        let inclusions = report.check("inclusions").ok_or("missing check")?;
        println!("c = {c}: inclusions {} ({})", if inclusions.pass { "hold" } else { "fail" }, inclusions.detail);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
