//! Minimizing drawings: the concentric-ring construction, the zero-sum
//! construction for equal class sizes, and exhaustive search as the referee.
//!
//! ```bash
//! cargo run --release --example min_drawings
//! ```

use gridlam::graphs::PartitionSpec;
use gridlam::grid::GridSpec;
use gridlam::lambda::lambda_string;
use gridlam::minimize::{exact_min_search, ring_construction, zero_sum_construction};

fn main() {
    // The ring construction puts smaller classes closer to the origin.
    // On K_{1,4} over {-2..2} the singleton sits at 0 and lambda hits the
    // spectral lower bound N - n_r = 1.
    let spec = PartitionSpec::new(vec![1, 4]).unwrap();
    let grid = GridSpec::new(1, 2).unwrap();
    let ring = ring_construction(&spec, &grid).unwrap();
    println!(
        "{spec} on {{-2..2}}: ring lambda = {}  (certificate: {})",
        lambda_string(&ring.lambda),
        ring.certificate.as_deref().unwrap_or("none"),
    );

    // The discrete ring tie-break is not always optimal: on K_{2,3} it packs
    // A1 = {-1, 0} and pays 23/10, while the true optimum splits A1 = {-1, 1}
    // for 11/5 = 22/10.
    let spec = PartitionSpec::new(vec![2, 3]).unwrap();
    let ring = ring_construction(&spec, &grid).unwrap();
    let exact = exact_min_search(&spec, &grid, 1 << 20).unwrap();
    println!(
        "{spec} on {{-2..2}}: ring lambda = {}, exact minimum = {}",
        lambda_string(&ring.lambda),
        lambda_string(&exact.lambda),
    );
    for (i, class) in exact.coloring.classes().iter().enumerate() {
        let pts: Vec<i64> = class.iter().map(|p| p.coords[0]).collect();
        println!("  optimal class {}: {:?}", i + 1, pts);
    }

    // With equal class sizes a drawing whose classes all sum to zero is
    // provably optimal: lambda = N - n exactly.
    let spec = PartitionSpec::new(vec![3, 3, 3]).unwrap();
    let grid = GridSpec::new(1, 4).unwrap();
    let zs = zero_sum_construction(&spec, &grid).unwrap();
    println!(
        "{spec} on {{-4..4}}: zero-sum lambda = {} ({})",
        lambda_string(&zs.lambda),
        zs.certificate.as_deref().unwrap_or("no certificate"),
    );
    for (i, class) in zs.coloring.classes().iter().enumerate() {
        let pts: Vec<i64> = class.iter().map(|p| p.coords[0]).collect();
        let sum: i64 = pts.iter().sum();
        println!("  class {}: {:?} (sum {})", i + 1, pts, sum);
    }

    // A 2-D instance: K_{1,8} on the 3x3 grid, singleton at the center.
    let spec = PartitionSpec::new(vec![1, 8]).unwrap();
    let grid = GridSpec::new(2, 1).unwrap();
    let exact = exact_min_search(&spec, &grid, 1 << 20).unwrap();
    println!(
        "{spec} on 3x3: exact minimum = {} with A1 = {:?}",
        lambda_string(&exact.lambda),
        exact.coloring.classes()[0][0].coords,
    );
}
