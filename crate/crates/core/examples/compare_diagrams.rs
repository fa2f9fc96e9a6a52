// Bottleneck distances, multiset equality and log rescaling.

use std::error::Error;

use dowker_rips::complexes::{dowker_filtration, dowker_rips_filtration};
use dowker_rips::diagrams::{bottleneck, diagrams_equal, log_rescale, DEFAULT_LOG_FLOOR};
use dowker_rips::relations::cross_distances;
use dowker_rips::Metric;
use dowker_rips::persistence::compute_persistence;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let circle = |count: usize, radius: f64, phase: f64| -> Vec<Vec<f64>> {
        (0..count)
            .map(|i| {
                let t = phase + i as f64 / count as f64 * std::f64::consts::TAU;
                vec![radius * t.cos(), radius * t.sin()]
            })
            .collect()
    };
    let r = cross_distances(&circle(12, 1.0, 0.0), &circle(5, 1.2, 0.3), Metric::Euclidean)?;
    let d = compute_persistence(&dowker_filtration(&r, 3, f64::INFINITY)?, 2)?;
    let dr = compute_persistence(&dowker_rips_filtration(&r, 3, f64::INFINITY)?, 2)?;
    let dr_t = compute_persistence(&dowker_rips_filtration(&r.transpose(), 3, f64::INFINITY)?, 2)?;

    println!("D vs DR equal: {}", diagrams_equal(&d, &dr, 1e-9).equal);
    let (ld, ldr, ldr_t) = (
        log_rescale(&d, DEFAULT_LOG_FLOOR)?,
        log_rescale(&dr, DEFAULT_LOG_FLOOR)?,
        log_rescale(&dr_t, DEFAULT_LOG_FLOOR)?,
    );
    println!("{:>4} {:>12} {:>12} {:>14}", "dim", "D vs DR", "log D vs DR", "log DR vs DRt");
    for dim in 0..=2 {
        println!(
            "{dim:>4} {:>12.6} {:>12.6} {:>14.6}",
            bottleneck(&d, &dr, dim),
            bottleneck(&ld, &ldr, dim),
            bottleneck(&ldr, &ldr_t, dim)
        );
    }
    println!("ln 3 = {:.6}", 3f64.ln());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
