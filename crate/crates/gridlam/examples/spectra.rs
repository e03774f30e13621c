//! Laplacian spectra: the multipartite closed form against the Jacobi
//! eigensolver, and the variational sandwich for drawings.
//!
//! ```bash
//! cargo run --release --example spectra
//! ```

use gridlam::graphs::{complete_multipartite, cycle, path, PartitionSpec};
use gridlam::spectral::{
    embedding_bounds_check, laplacian_spectrum, multipartite_eigenvalues_exact, rayleigh_energy,
};

fn main() {
    // Closed form: 0, then N - n_i with multiplicity n_i - 1, then N with
    // multiplicity r - 1.
    for sizes in [vec![1, 2], vec![2, 2], vec![1, 2, 2], vec![3, 3, 3]] {
        let spec = PartitionSpec::new(sizes).unwrap();
        let exact = multipartite_eigenvalues_exact(&spec);
        let g = complete_multipartite(&spec);
        let jacobi = laplacian_spectrum(&g).unwrap();
        let max_err = exact
            .iter()
            .zip(&jacobi.eigenvalues)
            .map(|(&a, b)| (a as f64 - b).abs())
            .fold(0.0f64, f64::max);
        println!("{spec}: spectrum {exact:?}, Jacobi max deviation {max_err:.2e}");
    }

    // General graphs go through the eigensolver.
    for g in [path(5).unwrap(), cycle(6).unwrap()] {
        let s = laplacian_spectrum(&g).unwrap();
        println!(
            "{}: lambda_2 = {:.6}, lambda_max = {:.6}",
            g.label().unwrap_or("graph"),
            s.lambda2(),
            s.lambda_max(),
        );
    }

    // Any zero-mean drawing has energy between lambda_2 and lambda_N; an
    // eigenvector attains the bottom exactly.
    let g = path(3).unwrap();
    let fiedler = vec![vec![-1.0], vec![0.0], vec![1.0]];
    let lam = rayleigh_energy(&g, &fiedler).unwrap();
    println!(
        "P_3 drawn along its Fiedler vector: lambda(v) = {lam} (algebraic connectivity {:.6}); \
         sandwich holds: {}",
        laplacian_spectrum(&g).unwrap().lambda2(),
        embedding_bounds_check(&g, &fiedler).unwrap(),
    );

    let skewed = vec![vec![3.0], vec![-1.0], vec![-2.0]];
    let lam = rayleigh_energy(&g, &skewed).unwrap();
    println!(
        "P_3 drawn at (3, -1, -2): lambda(v) = {lam:.6}; sandwich holds: {}",
        embedding_bounds_check(&g, &skewed).unwrap(),
    );
}
