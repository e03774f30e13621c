//! Maximizing drawings: simulated annealing over color swaps, Lloyd
//! refinement, and the weighted-Voronoi audit.
//!
//! ```bash
//! cargo run --release --example max_drawings
//! ```

use gridlam::graphs::PartitionSpec;
use gridlam::grid::GridSpec;
use gridlam::lambda::{lambda_raw, lambda_string};
use gridlam::maximize::{
    anneal, exact_max_search, lloyd_refine, voronoi_check, AnnealConfig, Direction,
};

fn main() {
    // Small enough to brute-force: the annealer must land on the exact
    // optimum.
    let spec = PartitionSpec::new(vec![1, 2, 2]).unwrap();
    let grid = GridSpec::new(1, 2).unwrap();
    let cfg = AnnealConfig::calibrated(grid.point_count(), 42);
    let outcome = anneal(&spec, &grid, &cfg, Direction::Maximize).unwrap();
    let (_, exact) = exact_max_search(&spec, &grid, 1 << 20).unwrap();
    println!(
        "{spec} on {{-2..2}}: annealed {} vs exact {}",
        lambda_string(&outcome.lambda),
        lambda_string(&exact),
    );

    // A 9x9 grid, quarter/three-quarter split: anneal, then polish with
    // size-constrained Lloyd rounds, then audit the Voronoi structure.
    let grid = GridSpec::new(2, 4).unwrap();
    let spec = PartitionSpec::new(vec![20, 61]).unwrap();
    let mut cfg = AnnealConfig::calibrated(grid.point_count(), 7);
    cfg.steps_per_temperature = 20 * grid.point_count();
    let outcome = anneal(&spec, &grid, &cfg, Direction::Maximize).unwrap();
    let refined = lloyd_refine(&outcome.coloring, 100).unwrap();
    let report = voronoi_check(&refined).unwrap();
    println!(
        "{spec} on 9x9: annealed {} -> refined {}",
        lambda_string(&outcome.lambda),
        lambda_string(&lambda_raw(&refined).unwrap()),
    );
    println!(
        "  centroids {:?}, weights {:?}",
        report
            .centroids
            .iter()
            .map(|c| c.iter().map(|x| format!("{x}")).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        report.weights,
    );
    println!(
        "  Voronoi violations: {} of {} points; decomposition identity holds: {}",
        report.violations.len(),
        grid.point_count(),
        report.decomposition_holds,
    );

    // The decomposition identity behind the Voronoi characterization:
    // lambda * S = (total pairwise energy) - (weighted scatter), exactly.
    println!(
        "  energy {} = total pairwise {} - scatter {}",
        report.energy, report.total_pairwise, report.scatter,
    );

    // ASCII view of the refined drawing: class 0 is '#', class 1 is '.'
    let m = grid.half_width as i64;
    let assignment = refined.assignment();
    let points = grid.enumerate_points();
    for y in (-m..=m).rev() {
        let mut row = String::new();
        for x in -m..=m {
            let idx = points
                .iter()
                .position(|p| p.coords == vec![x, y])
                .unwrap();
            row.push(if assignment[idx] == 0 { '#' } else { '.' });
        }
        println!("  {row}");
    }
}
