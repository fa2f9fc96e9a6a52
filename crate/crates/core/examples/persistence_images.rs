// Two labeled clouds -> Dowker-Rips diagrams -> persistence-image vectors.

use std::error::Error;

use dowker_rips::diagrams::PersistenceImageParams;
use dowker_rips::pipeline::{compute_diagrams, persistence_image_vector, RunConfig};
use dowker_rips::relations::cross_distances;
use dowker_rips::{LabeledPointCloud, Metric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn synthetic_cloud(seed: u64) -> LabeledPointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    // class "ring" on a noisy circle, class "blob" near the center
    for i in 0..40 {
        let t = i as f64 / 40.0 * std::f64::consts::TAU;
        let r = 1.0 + rng.gen_range(-0.05..0.05);
        points.push(vec![r * t.cos(), r * t.sin()]);
        labels.push("ring".to_string());
    }
    for _ in 0..15 {
        points.push(vec![rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)]);
        labels.push("blob".to_string());
    }
    LabeledPointCloud::new(points, labels).expect("consistent cloud")
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cloud = synthetic_cloud(11);
    let (ring, blob) = cloud.split("ring", "blob")?;
    let r = cross_distances(&ring, &blob, Metric::Euclidean)?;

    let output = compute_diagrams(&r, &RunConfig::default())?;
    println!(
        "{} on {}x{}: {} simplices, swapped: {}",
        output.metadata.kind, output.metadata.n, output.metadata.m, output.metadata.simplex_count, output.metadata.swap_applied
    );
    for note in &output.metadata.notes {
        println!("note: {note}");
    }
    for dim in 0..=1 {
        let params = PersistenceImageParams::fit(&output.diagram, dim);
        let vector = persistence_image_vector(&output, dim, &params)?;
        let mass: f64 = vector.iter().sum();
        println!("H{dim}: {} bars, image vector of length {}, mass {mass:.4}", output.diagram.pairs(dim).len(), vector.len());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
