//! The verification suite behind `gridlam verify-paper` and the acceptance
//! integration tests: every analytic claim the crate implements, checked
//! end-to-end against oracles at pinned tolerances.

use std::time::Instant;

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::{self, Graph, PartitionSpec};
use crate::grid::{GridPoint, GridSpec};
use crate::int_connectivity::{
    cartesian_drawing, edge_addition_bounds_check, edge_disjoint_superadditivity_check,
    hypercube_drawing, lambda2_int, prop7_bound, prop9_product_drawing,
};
use crate::lambda::{lambda_closed_form, lambda_raw, Coloring, SwapEvaluator};
use crate::maximize::{anneal_max, exact_max_search, voronoi_check, AnnealConfig};
use crate::minimize::{
    count_optimal_drawings, exact_min_search, ring_construction, zero_sum_construction,
};
use crate::oracle;
use crate::spectral::{laplacian_spectrum, multipartite_eigenvalues_exact, multipartite_spectrum};

/// Result of one verification check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({} ms) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.millis,
            self.detail
        )
    }
}

fn outcome(name: &'static str, start: Instant, result: Result<String, String>) -> CheckOutcome {
    let millis = start.elapsed().as_millis();
    match result {
        Ok(detail) => CheckOutcome {
            name,
            passed: true,
            detail,
            millis,
        },
        Err(detail) => CheckOutcome {
            name,
            passed: false,
            detail,
            millis,
        },
    }
}

macro_rules! fail {
    ($($arg:tt)*) => { return Err(format!($($arg)*)) };
}

fn random_sorted_sizes(rng: &mut ChaCha8Rng, total: usize, max_classes: usize) -> Vec<usize> {
    loop {
        let r = rng.gen_range(2..=max_classes.min(total));
        let mut cuts: Vec<usize> = (1..total).collect();
        for i in (1..cuts.len()).rev() {
            let j = rng.gen_range(0..=i);
            cuts.swap(i, j);
        }
        let mut cuts: Vec<usize> = cuts.into_iter().take(r - 1).collect();
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(total);
        let mut sizes: Vec<usize> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
        sizes.sort_unstable();
        if sizes.iter().all(|&s| s > 0) && sizes.len() >= 2 {
            return sizes;
        }
    }
}

fn random_coloring(rng: &mut ChaCha8Rng, grid: GridSpec, sizes: &[usize]) -> Coloring {
    let mut assignment: Vec<u16> = Vec::new();
    for (c, &n) in sizes.iter().enumerate() {
        assignment.extend(std::iter::repeat_n(c as u16, n));
    }
    for i in (1..assignment.len()).rev() {
        let j = rng.gen_range(0..=i);
        assignment.swap(i, j);
    }
    Coloring::from_assignment(grid, PartitionSpec::new(sizes.to_vec()).unwrap(), assignment)
        .unwrap()
}

/// All integer partitions of `n` into at least two parts, parts
/// non-decreasing.
fn partitions_into_classes(n: usize) -> Vec<Vec<usize>> {
    fn rec(
        remaining: usize,
        min_part: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if current.len() >= 2 {
                out.push(current.clone());
            }
            return;
        }
        for part in min_part..=remaining {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The small-instance family used by several criteria: every partition of the
/// grids d=1, M in 1..=4 and d=2, M=1 with multinomial below the cap.
fn instance_family(multinomial_cap: u128) -> Vec<(GridSpec, PartitionSpec)> {
    let mut grids = Vec::new();
    for m in 1..=4 {
        grids.push(GridSpec::new(1, m).unwrap());
    }
    grids.push(GridSpec::new(2, 1).unwrap());
    let mut out = Vec::new();
    for grid in grids {
        for sizes in partitions_into_classes(grid.point_count()) {
            let spec = PartitionSpec::new(sizes).unwrap();
            if spec.multinomial() <= multinomial_cap {
                out.push((grid, spec));
            }
        }
    }
    out
}

/// Criterion 1: lambda_raw equals lambda_closed_form exactly on 500 random
/// colorings with d <= 2, M <= 3.
pub fn check_closed_form_consistency() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for trial in 0..500 {
            let d = rng.gen_range(1..=2u32);
            let m = rng.gen_range(1..=3u32);
            let grid = GridSpec::new(d, m).unwrap();
            let sizes = random_sorted_sizes(&mut rng, grid.point_count(), 5);
            let c = random_coloring(&mut rng, grid, &sizes);
            let raw = lambda_raw(&c).unwrap();
            let closed = lambda_closed_form(&c).unwrap();
            if raw != closed {
                fail!("trial {trial}: raw {raw} != closed form {closed}");
            }
        }
        Ok("500 random colorings, exact agreement".to_string())
    })();
    outcome("1 closed-form consistency", start, result)
}

/// Criterion 2: the grid second-moment formula matches direct summation for
/// all d <= 3, M <= 6.
pub fn check_second_moment_formula() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        for d in 1..=3 {
            for m in 0..=6 {
                let grid = GridSpec::new(d, m).unwrap();
                let direct: i64 = grid.enumerate_points().iter().map(GridPoint::norm2).sum();
                if grid.second_moment() != direct {
                    fail!(
                        "d={d} M={m}: formula {} != sum {direct}",
                        grid.second_moment()
                    );
                }
            }
        }
        Ok("all (d <= 3, M <= 6) grids, exact".to_string())
    })();
    outcome("2 second-moment formula", start, result)
}

/// Criterion 3: multipartite closed-form spectrum vs Jacobi within 1e-8 on
/// 200 random specs with N <= 12, and K_{1,2,2} exactly {0,3,3,5,5}.
pub fn check_spectrum() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let exact = multipartite_eigenvalues_exact(&PartitionSpec::new(vec![1, 2, 2]).unwrap());
        if exact != vec![0, 3, 3, 5, 5] {
            fail!("K_{{1,2,2}} spectrum {exact:?} != [0,3,3,5,5]");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for trial in 0..200 {
            let total = rng.gen_range(3..=12usize);
            let sizes = random_sorted_sizes(&mut rng, total, 4);
            let spec = PartitionSpec::new(sizes).unwrap();
            let g = graphs::complete_multipartite(&spec);
            let jac = laplacian_spectrum(&g)
                .map_err(|e| format!("trial {trial}: eigensolver failed: {e}"))?;
            let closed = multipartite_spectrum(&spec);
            for (a, b) in jac.eigenvalues.iter().zip(&closed.eigenvalues) {
                if (a - b).abs() > 1e-8 {
                    fail!("trial {trial} ({spec}): |{a} - {b}| > 1e-8");
                }
            }
        }
        Ok("200 random specs within 1e-8; K_{1,2,2} exact".to_string())
    })();
    outcome("3 multipartite spectrum vs Jacobi", start, result)
}

/// Criterion 4: the zero-sum construction certifies K_{3,3,3} at lambda = 6,
/// and K_{n,n} reaches lambda = n for every n <= 8.
pub fn check_zero_sum_constructions() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let spec = PartitionSpec::new(vec![3, 3, 3]).unwrap();
        let grid = GridSpec::new(1, 4).unwrap();
        let res = zero_sum_construction(&spec, &grid).map_err(|e| format!("K_{{3,3,3}}: {e}"))?;
        if res.lambda != Ratio::from_integer(6) || res.certificate.is_none() {
            fail!(
                "K_{{3,3,3}}: lambda {} certificate {:?}",
                res.lambda,
                res.certificate
            );
        }
        for n in 2..=8usize {
            let spec = PartitionSpec::new(vec![n, n]).unwrap();
            let grid = GridSpec::without_origin(1, n as u32).unwrap();
            let res =
                zero_sum_construction(&spec, &grid).map_err(|e| format!("K_{{{n},{n}}}: {e}"))?;
            if res.lambda != Ratio::from_integer(n as i64) || res.certificate.is_none() {
                fail!("K_{{{n},{n}}}: lambda {} without certificate", res.lambda);
            }
            if n % 2 == 0 {
                // explicit negation-closed classes: A1 = +-{1..n/2}
                let half = (n / 2) as i64;
                let a1: Vec<GridPoint> = (-half..=half)
                    .filter(|&x| x != 0)
                    .map(|x| GridPoint::new(vec![x]))
                    .collect();
                let a2: Vec<GridPoint> = (-(n as i64)..=n as i64)
                    .filter(|&x| x != 0 && x.abs() > half)
                    .map(|x| GridPoint::new(vec![x]))
                    .collect();
                let c = Coloring::from_classes(grid, &[a1, a2]).unwrap();
                let lam = lambda_raw(&c).unwrap();
                if lam != Ratio::from_integer(n as i64) {
                    fail!("negation-closed K_{{{n},{n}}}: lambda {lam}");
                }
            }
        }
        Ok("K_{3,3,3} certified at 6; K_{n,n} at n for n <= 8".to_string())
    })();
    outcome("4 zero-sum constructions", start, result)
}

/// Criterion 5: on every small instance the exact minimum sits between the
/// spectral lower bound and the ring construction; K_{2,3} yields 11/5.
pub fn check_min_oracle_agreement() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let family = instance_family(100_000);
        let mut checked = 0;
        for (grid, spec) in &family {
            let exact =
                exact_min_search(spec, grid, 100_000).map_err(|e| format!("{spec}: {e}"))?;
            let ring = ring_construction(spec, grid).unwrap();
            let lower = Ratio::from_integer((spec.total() - spec.largest()) as i64);
            if exact.lambda < lower {
                fail!(
                    "{spec} d={} M={}: minimum {} beats the spectral bound {lower}",
                    grid.dim,
                    grid.half_width,
                    exact.lambda
                );
            }
            if exact.lambda > ring.lambda {
                fail!("{spec}: exact {} above ring {}", exact.lambda, ring.lambda);
            }
            checked += 1;
        }
        let k23 = exact_min_search(
            &PartitionSpec::new(vec![2, 3]).unwrap(),
            &GridSpec::new(1, 2).unwrap(),
            100_000,
        )
        .unwrap();
        if k23.lambda != Ratio::new(11, 5) {
            fail!("K_{{2,3}} minimum {} != 11/5", k23.lambda);
        }
        Ok(format!("{checked} instances; K_{{2,3}} = 11/5"))
    })();
    outcome("5 minimum oracle agreement", start, result)
}

/// Criterion 6: optimal-drawing counts for K_{1,2m,2m}.
pub fn check_drawing_counts() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let one = count_optimal_drawings(1, 10_000_000).map_err(|e| e.to_string())?;
        if one.zero_sum_colorings != 2 || one.minimizer_count != Some(2) {
            fail!("m=1: {:?}", one);
        }
        let mut counts = vec![one.zero_sum_colorings];
        for m in 2..=3 {
            let report = count_optimal_drawings(m, 10_000_000).map_err(|e| e.to_string())?;
            if report.zero_sum_colorings as u128 >= report.upper_bound {
                fail!("m={m}: count {} >= 16^{m}", report.zero_sum_colorings);
            }
            if let Some(mins) = report.minimizer_count {
                if mins != report.zero_sum_colorings {
                    fail!(
                        "m={m}: minimizers {mins} != zero-sum colorings {}",
                        report.zero_sum_colorings
                    );
                }
            }
            counts.push(report.zero_sum_colorings);
        }
        Ok(format!("counts {counts:?} for m = 1..3, all below 16^m"))
    })();
    outcome("6 optimal-drawing counts", start, result)
}

/// Criterion 7: exact maximizers have zero weighted-Voronoi violations, and
/// the decomposition identity holds for every coloring enumerated.
pub fn check_max_voronoi_structure() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let family = instance_family(10_000);
        let mut instances = 0;
        let mut colorings = 0u64;
        for (grid, spec) in &family {
            let points = grid.enumerate_points();
            let mut total_pairwise = 0i64;
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    total_pairwise += points[i].dist2(&points[j]);
                }
            }
            let s = grid.second_moment();
            let mut identity_failures = 0u64;
            oracle::enumerate_colorings(spec, grid, 10_000, |assignment, lambda| {
                let c =
                    Coloring::from_assignment(*grid, spec.clone(), assignment.to_vec()).unwrap();
                let eval = SwapEvaluator::new(&c);
                if eval.energy() != total_pairwise - eval.scatter()
                    || Ratio::new(eval.energy(), s) != lambda
                {
                    identity_failures += 1;
                }
                colorings += 1;
            })
            .map_err(|e| format!("{spec}: {e}"))?;
            if identity_failures > 0 {
                fail!("{spec}: decomposition identity failed {identity_failures} times");
            }
            let (max_coloring, _) = exact_max_search(spec, grid, 10_000).unwrap();
            let report = voronoi_check(&max_coloring).unwrap();
            if !report.violations.is_empty() {
                fail!(
                    "{spec} d={} M={}: maximizer has {} Voronoi violations",
                    grid.dim,
                    grid.half_width,
                    report.violations.len()
                );
            }
            if !report.decomposition_holds {
                fail!("{spec}: decomposition fails on the maximizer");
            }
            instances += 1;
        }
        Ok(format!(
            "{instances} instances, {colorings} colorings: identity exact, maximizers violation-free"
        ))
    })();
    outcome("7 weighted-Voronoi maximizers", start, result)
}

/// Criterion 8: the calibrated annealer recovers the exact maximum on the 20
/// largest oracle-checkable instances.
pub fn check_annealer_calibration() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let mut family = instance_family(10_000);
        family.sort_by_key(|(_, spec)| std::cmp::Reverse(spec.multinomial()));
        family.truncate(20);
        let mut hits = 0;
        for (i, (grid, spec)) in family.iter().enumerate() {
            let cfg = AnnealConfig::calibrated(grid.point_count(), 9000 + i as u64);
            let (_, annealed) = anneal_max(spec, grid, &cfg).unwrap();
            let (_, exact) = exact_max_search(spec, grid, 10_000).unwrap();
            if annealed != exact {
                fail!(
                    "{spec} d={} M={}: annealer {} vs exact {} ({hits}/20 before failure)",
                    grid.dim,
                    grid.half_width,
                    annealed,
                    exact
                );
            }
            hits += 1;
        }
        Ok(format!("{hits}/20 instances matched the exact optimum"))
    })();
    outcome("8 annealer calibration", start, result)
}

/// Criterion 9: the explicit product drawing evaluates to 775/1300 and the
/// factor's integer connectivity is 8/10.
pub fn check_prop9_values() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let drawing = prop9_product_drawing();
        if drawing.lambda() != Ratio::new(775, 1300) {
            fail!("product drawing lambda {} != 775/1300", drawing.lambda());
        }
        let (factor, _) = lambda2_int(&graphs::prop9_graph(), 1 << 30).unwrap();
        if factor != Ratio::new(8, 10) {
            fail!("factor lambda_2^I {factor} != 8/10");
        }
        if drawing.lambda() >= factor {
            fail!(
                "product bound {} does not improve on factor {factor}",
                drawing.lambda()
            );
        }
        Ok("drawing = 775/1300 < factor 8/10, exact".to_string())
    })();
    outcome("9 product counterexample values", start, result)
}

/// Criterion 10: hypercube drawings hit lambda = 2 for k in 1..=3 and the
/// exhaustive search confirms lambda_2^I(Q_8) = 2.
pub fn check_hypercube() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        for k in 1..=3u32 {
            let d = hypercube_drawing(k).unwrap();
            if d.lambda() != Ratio::from_integer(2) {
                fail!("k={k}: construction lambda {}", d.lambda());
            }
        }
        let (q8, _) = lambda2_int(&graphs::hypercube(8).unwrap(), 1 << 30).unwrap();
        if q8 != Ratio::from_integer(2) {
            fail!("exhaustive lambda_2^I(Q_8) = {q8} != 2");
        }
        Ok("construction lambda = 2 for k <= 3; exhaustive Q_8 = 2".to_string())
    })();
    outcome("10 hypercube drawings", start, result)
}

/// Criterion 11: the C3 x P3 block drawing meets the 6/5 bound and
/// lambda_2^I(C3 x C3) = lambda_2^I(C3) = 3.
pub fn check_product_bound_and_square() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let c3 = graphs::cycle(3).unwrap();
        let p3 = graphs::path(3).unwrap();
        let (lc3, c3_opt) = lambda2_int(&c3, 1 << 30).unwrap();
        let (lp3, p3_opt) = lambda2_int(&p3, 1 << 30).unwrap();
        let bound = prop7_bound(lc3, lp3, 3, 3);
        if bound != Ratio::new(6, 5) {
            fail!("bound {bound} != 6/5");
        }
        let block = cartesian_drawing(&c3_opt, &p3_opt).unwrap();
        if block.lambda() > bound {
            fail!("block drawing {} exceeds bound {bound}", block.lambda());
        }
        let square = graphs::cartesian_product(&c3, &c3);
        let (lsq, _) = lambda2_int(&square, 1 << 30).unwrap();
        if lsq != Ratio::from_integer(3) || lc3 != Ratio::from_integer(3) {
            fail!("lambda_2^I(C3 x C3) = {lsq}, lambda_2^I(C3) = {lc3}, expected both 3");
        }
        Ok(format!("block drawing {} <= 6/5; square at 3", block.lambda()))
    })();
    outcome("11 product bound and square identity", start, result)
}

/// Criterion 12: superadditivity and edge-addition sandwich hold on 50 random
/// instances each (N <= 8).
pub fn check_superadditivity_and_edge_addition() -> CheckOutcome {
    let start = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(112);
        for trial in 0..50 {
            let n = rng.gen_range(3..=8usize);
            let mut g_edges = Vec::new();
            let mut h_edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    match rng.gen_range(0..3) {
                        0 => g_edges.push((u, v)),
                        1 => h_edges.push((u, v)),
                        _ => {}
                    }
                }
            }
            let g = Graph::new(n, &g_edges).unwrap();
            let h = Graph::new(n, &h_edges).unwrap();
            if !edge_disjoint_superadditivity_check(&g, &h, 1 << 30).unwrap() {
                fail!("superadditivity failed on trial {trial} (N = {n})");
            }
        }
        for trial in 0..50 {
            let n = rng.gen_range(3..=8usize);
            let mut edges = Vec::new();
            let mut non_edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    } else {
                        non_edges.push((u, v));
                    }
                }
            }
            if non_edges.is_empty() {
                continue;
            }
            let g = Graph::new(n, &edges).unwrap();
            let (u, v) = non_edges[rng.gen_range(0..non_edges.len())];
            if !edge_addition_bounds_check(&g, u, v, 1 << 30).unwrap() {
                fail!("edge-addition bounds failed on trial {trial} (N = {n}, edge {u}-{v})");
            }
        }
        Ok("50 edge-disjoint pairs and 50 edge additions".to_string())
    })();
    outcome("12 superadditivity and edge addition", start, result)
}

/// Runs criteria 1 through 12 (the large figure reproductions live in
/// [`crate::figures`]).
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_closed_form_consistency(),
        check_second_moment_formula(),
        check_spectrum(),
        check_zero_sum_constructions(),
        check_min_oracle_agreement(),
        check_drawing_counts(),
        check_max_voronoi_structure(),
        check_annealer_calibration(),
        check_prop9_values(),
        check_hypercube(),
        check_product_bound_and_square(),
        check_superadditivity_and_edge_addition(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration_is_complete() {
        let parts = partitions_into_classes(5);
        // partitions of 5 with >= 2 parts: 6 of the 7 total
        assert_eq!(parts.len(), 6);
        assert!(parts.contains(&vec![1, 4]));
        assert!(parts.contains(&vec![1, 1, 1, 1, 1]));
        assert!(!parts.contains(&vec![5]));
        for p in &parts {
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(p.iter().sum::<usize>(), 5);
        }
    }

    #[test]
    fn instance_family_respects_cap() {
        for (_, spec) in instance_family(1000) {
            assert!(spec.multinomial() <= 1000);
        }
        assert!(!instance_family(100_000).is_empty());
    }
}
