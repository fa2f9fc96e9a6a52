// Duality for Dowker-Rips holds in dimensions 0 and 1 but not 2: the
// vertices of a tetrahedron against its edge midpoints.

use std::error::Error;

use dowker_rips::complexes::dowker_rips_filtration;
use dowker_rips::diagrams::dimension_equal;
use dowker_rips::fixtures;
use dowker_rips::persistence::compute_persistence;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let r = fixtures::tetrahedron_matrix();
    let xy = compute_persistence(&dowker_rips_filtration(&r, 3, f64::INFINITY)?, 2)?;
    let yx = compute_persistence(&dowker_rips_filtration(&r.transpose(), 3, f64::INFINITY)?, 2)?;

    println!("betti at 0.5: XY {:?}, YX {:?}", xy.betti_vector(0.5, 3), yx.betti_vector(0.5, 3));
    for dim in 0..=2 {
        let verdict = dimension_equal(&xy, &yx, dim, 1e-9);
        match verdict.witness {
            None => println!("dim {dim}: equal"),
            Some(w) => println!(
                "dim {dim}: differ, ({}, {}) only on the {:?} side",
                w.point.birth, w.point.death, w.side
            ),
        }
    }
    print!("DR(Y, X) diagram:\n{}", yx.to_csv());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
