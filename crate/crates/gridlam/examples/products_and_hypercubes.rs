//! Cartesian products: the block drawing and its bound, the square identity,
//! hypercubes at exactly 2, and the product that drops below its factor.
//!
//! ```bash
//! cargo run --release --example products_and_hypercubes
//! ```

use gridlam::graphs::{cartesian_product, cycle, path, prop9_graph};
use gridlam::int_connectivity::{
    cartesian_drawing, hypercube_drawing, lambda2_int, prop7_bound, prop9_product_drawing,
    DEFAULT_BIJECTION_LIMIT,
};
use gridlam::lambda::lambda_string;

fn main() {
    // Block drawing of C_3 x P_3: |H| consecutive copies of G, each ordered
    // optimally; meets the product bound with equality.
    let c3 = cycle(3).unwrap();
    let p3 = path(3).unwrap();
    let (lc3, c3_opt) = lambda2_int(&c3, DEFAULT_BIJECTION_LIMIT).unwrap();
    let (lp3, p3_opt) = lambda2_int(&p3, DEFAULT_BIJECTION_LIMIT).unwrap();
    let bound = prop7_bound(lc3, lp3, 3, 3);
    let block = cartesian_drawing(&c3_opt, &p3_opt).unwrap();
    println!(
        "C_3 x P_3: factors {} and {}, bound {}, block drawing {}",
        lambda_string(&lc3),
        lambda_string(&lp3),
        lambda_string(&bound),
        lambda_string(&block.lambda()),
    );
    println!("  block positions: {:?}", block.positions());

    // Exhaustive confirmation that the product of a graph with itself cannot
    // improve when lambda_2^I already equals lambda_2: C_3 x C_3 stays at 3.
    let square = cartesian_product(&c3, &c3);
    let (lsq, _) = lambda2_int(&square, DEFAULT_BIJECTION_LIMIT).unwrap();
    println!(
        "C_3 x C_3: exhaustive lambda_2^I = {} (factor: {})",
        lambda_string(&lsq),
        lambda_string(&lc3),
    );

    // The product can also exceed both factors: C_3 x P_2 beats
    // min(3, 2) = 2.
    let p2 = path(2).unwrap();
    let prism = cartesian_product(&c3, &p2);
    let (lprism, _) = lambda2_int(&prism, DEFAULT_BIJECTION_LIMIT).unwrap();
    println!("C_3 x P_2 (prism): lambda_2^I = {}", lambda_string(&lprism));

    // Hypercubes: the recursive two-shifted-copies drawing stays at exactly 2.
    for k in 1..=4u32 {
        let d = hypercube_drawing(k).unwrap();
        println!(
            "Q_{}: construction lambda = {}, positions {:?}",
            1 << k,
            lambda_string(&d.lambda()),
            d.positions(),
        );
    }

    // And the counterexample: a 5-vertex graph whose square admits a drawing
    // strictly below the factor's own optimum.
    let g = prop9_graph();
    let (lg, _) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
    let product = prop9_product_drawing();
    println!(
        "triangle+tail: lambda_2^I = {}, explicit product drawing = {} ({} < {})",
        lambda_string(&lg),
        lambda_string(&product.lambda()),
        lambda_string(&product.lambda()),
        lambda_string(&lg),
    );
}
