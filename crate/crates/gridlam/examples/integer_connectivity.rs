//! The integer algebraic connectivity: exact values for small graphs, the
//! superadditivity and edge-addition inequalities, and the even-order graph
//! whose optimal drawing differs from its minimum-2-sum ordering.
//!
//! ```bash
//! cargo run --release --example integer_connectivity
//! ```

use gridlam::graphs::{cycle, hypercube, path, prop10_candidate_graph, prop9_graph, Graph};
use gridlam::int_connectivity::{
    edge_addition_bounds_check, edge_disjoint_superadditivity_check, lambda2_int, min_p_sum,
    PNorm, DEFAULT_BIJECTION_LIMIT,
};
use gridlam::lambda::lambda_string;
use gridlam::spectral::laplacian_spectrum;

fn main() {
    // lambda_2(G) <= lambda_2^I(G): the integer restriction can only raise
    // the optimum.
    println!("graph          lambda_2        lambda_2^I   witness positions");
    for g in [
        path(5).unwrap(),
        cycle(5).unwrap(),
        cycle(6).unwrap(),
        prop9_graph(),
        hypercube(8).unwrap(),
    ] {
        let (li, witness) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
        let l2 = laplacian_spectrum(&g).unwrap().lambda2();
        println!(
            "{:<14} {:<15.6} {:<12} {:?}",
            g.label().unwrap_or("graph"),
            l2,
            lambda_string(&li),
            witness.positions(),
        );
    }

    // For odd N the problem coincides with the minimum-2-sum.
    let g = prop9_graph();
    let sigma = min_p_sum(&g, PNorm::Finite(2.0), DEFAULT_BIJECTION_LIMIT).unwrap();
    println!(
        "\ntriangle+tail: sigma_2^2 = {}, bandwidth = {}",
        sigma.sigma2_squared.unwrap(),
        min_p_sum(&g, PNorm::Infinity, DEFAULT_BIJECTION_LIMIT)
            .unwrap()
            .value,
    );

    // Superadditivity over edge-disjoint unions.
    let m1 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
    let m2 = Graph::new(4, &[(1, 2), (3, 0)]).unwrap();
    println!(
        "C_4 split into matchings: lambda_2^I(G) + lambda_2^I(H) <= lambda_2^I(G u H): {}",
        edge_disjoint_superadditivity_check(&m1, &m2, DEFAULT_BIJECTION_LIMIT).unwrap(),
    );

    // Adding an edge moves the optimum by at least 1/D and at most N^2/D.
    let p4 = path(4).unwrap();
    println!(
        "P_4 plus chord 1-3 stays inside the edge-addition sandwich: {}",
        edge_addition_bounds_check(&p4, 0, 2, DEFAULT_BIJECTION_LIMIT).unwrap(),
    );

    // For even N the gapped grid {-N/2..N/2} \ {0} and the ordering grid
    // {1..N} disagree: on this 8-vertex candidate the minimum-2-sum
    // orderings are not optimal drawings.
    let g = prop10_candidate_graph();
    let (li, witness) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
    let sigma = min_p_sum(&g, PNorm::Finite(2.0), DEFAULT_BIJECTION_LIMIT).unwrap();
    println!(
        "\n8-vertex candidate ({}):",
        g.label().unwrap_or("candidate"),
    );
    println!(
        "  lambda_2^I = {} at positions {:?}",
        lambda_string(&li),
        witness.positions(),
    );
    println!(
        "  sigma_2^2 = {} at ordering {:?}",
        sigma.sigma2_squared.unwrap(),
        sigma.mapping,
    );
}
