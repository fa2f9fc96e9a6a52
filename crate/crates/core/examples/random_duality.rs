// Runs the full theorem checker over a handful of random point-cloud relations.

use std::error::Error;

use dowker_rips::oracles::{verify_theorems_with, RandomInstance, VerifyConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut failures = 0;
    for seed in 0..10 {
        let inst = RandomInstance::generate(seed, 3..=10);
        let config = VerifyConfig {
            max_dim: 3,
            instance: inst.label(),
            seed: Some(seed),
            ..VerifyConfig::default()
        };
        let report = verify_theorems_with(&inst.matrix(), &config)?;
        let passed = report.checks.iter().filter(|c| c.pass).count();
        println!("seed {seed:>2} {:<22} {passed}/{} checks", report.instance, report.checks.len());
        for c in report.failures() {
            failures += 1;
            println!("    FAIL {}: {}", c.name, c.detail);
        }
    }
    if failures > 0 {
        return Err(format!("{failures} failed checks").into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
