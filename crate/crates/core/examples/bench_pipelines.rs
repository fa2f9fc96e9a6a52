// Times the Dowker and Dowker-Rips pipelines on one synthetic planar relation.
// Pass `n` as the first argument (default 80).

use std::error::Error;

use dowker_rips::oracles::random_planar_matrix;
use dowker_rips::pipeline::bench;

fn bench_at(n: usize) -> Result<(), Box<dyn Error>> {
    let r = random_planar_matrix(0, n, n);
    let threshold = r.quantile(0.3);
    let report = bench(&r, 2, threshold, 3)?;
    println!("n = m = {n}, threshold {threshold:.4}");
    for (name, t) in [("dowker", &report.dowker), ("dowker-rips", &report.dowker_rips)] {
        println!("{name:<12} {:>9.4} s  {:>9} simplices {:?}", t.median_seconds, t.simplex_count, t.counts_by_dim);
    }
    println!("ratio {:.2}", report.speedup);
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    bench_at(60)
}

fn main() -> Result<(), Box<dyn Error>> {
    let n = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(80);
    bench_at(n)
}
