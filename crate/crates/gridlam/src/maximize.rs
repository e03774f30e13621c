//! Drawings maximizing the normalized energy.
//!
//! Maximizing lambda is the same as minimizing the weighted scatter
//! `sum_i n_i sum_{v in A_i} ||v - c_i||^2` around the class centroids, so
//! maximizers look like multiplicatively weighted centroidal Voronoi
//! tessellations. The solver is simulated annealing over two-point color
//! swaps (delta evaluated incrementally in O(d)); [`lloyd_refine`] pushes any
//! coloring toward the Voronoi fixed point, and [`voronoi_check`] audits a
//! coloring against the weighted predicate and the exact decomposition
//! identity `lambda * S = total pairwise energy - scatter`.

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::PartitionSpec;
use crate::grid::{GridPoint, GridSpec};
use crate::lambda::{lambda_raw, Coloring, Lambda, SwapEvaluator};
use crate::oracle::{self, OracleError};

#[derive(Debug, Error, PartialEq)]
pub enum MaxError {
    #[error("class sizes {0:?} do not cover {1} grid points")]
    SizeMismatch(Vec<usize>, usize),
    #[error("invalid annealing config: {0}")]
    BadConfig(String),
    #[error("coloring has an empty class")]
    EmptyClass,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Coloring(#[from] crate::lambda::ColoringError),
}

/// Simulated-annealing schedule: geometric cooling from
/// `initial_temperature` by `cooling_factor` until `minimum_temperature`,
/// with `steps_per_temperature` swap proposals per level, over `chains`
/// independent restarts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub initial_temperature: f64,
    pub cooling_factor: f64,
    pub steps_per_temperature: usize,
    pub minimum_temperature: f64,
    pub chains: usize,
    pub seed: u64,
}

impl AnnealConfig {
    /// The calibrated default: `T0 = 1`, cooling `0.995`, `200 * |P|` steps
    /// per level, `T_min = 1e-4`, 4 chains. These settings recover the exact
    /// optimum on every oracle-checkable instance in the test suite.
    pub fn calibrated(n_points: usize, seed: u64) -> Self {
        AnnealConfig {
            initial_temperature: 1.0,
            cooling_factor: 0.995,
            steps_per_temperature: 200 * n_points,
            minimum_temperature: 1e-4,
            chains: 4,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), MaxError> {
        // NaN fails all of these comparisons and is rejected too
        if self.initial_temperature.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(MaxError::BadConfig("initial_temperature must be > 0".into()));
        }
        let cooling_in_unit = self.cooling_factor > 0.0 && self.cooling_factor < 1.0;
        if !cooling_in_unit {
            return Err(MaxError::BadConfig("cooling_factor must be in (0,1)".into()));
        }
        if self.minimum_temperature.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(MaxError::BadConfig("minimum_temperature must be > 0".into()));
        }
        if self.chains == 0 {
            return Err(MaxError::BadConfig("chains must be >= 1".into()));
        }
        if self.steps_per_temperature == 0 {
            return Err(MaxError::BadConfig("steps_per_temperature must be >= 1".into()));
        }
        Ok(())
    }
}

/// Objective direction for the annealer. The public maximization entry point
/// is [`anneal_max`]; minimization is used for figure reproduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Outcome of an annealing run: best coloring over all chains plus, per
/// chain, the best-so-far lambda trace (strictly improving by construction).
#[derive(Debug, Clone)]
pub struct AnnealOutcome {
    pub coloring: Coloring,
    pub lambda: Lambda,
    pub chain_traces: Vec<Vec<Lambda>>,
    pub proposals: u64,
}

fn chain_rng(seed: u64, chain: usize) -> ChaCha8Rng {
    // distinct, reproducible stream per chain
    ChaCha8Rng::seed_from_u64(seed ^ (chain as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_assignment(spec: &PartitionSpec, rng: &mut ChaCha8Rng) -> Vec<u16> {
    let mut assignment = Vec::with_capacity(spec.total());
    for (c, &n) in spec.class_sizes().iter().enumerate() {
        assignment.extend(std::iter::repeat_n(c as u16, n));
    }
    // Fisher-Yates
    for i in (1..assignment.len()).rev() {
        let j = rng.gen_range(0..=i);
        assignment.swap(i, j);
    }
    assignment
}

struct ChainResult {
    energy: i64,
    assignment: Vec<u16>,
    trace: Vec<Lambda>,
    proposals: u64,
}

fn run_chain(
    spec: &PartitionSpec,
    grid: &GridSpec,
    cfg: &AnnealConfig,
    direction: Direction,
    chain: usize,
) -> ChainResult {
    let mut rng = chain_rng(cfg.seed, chain);
    let assignment = random_assignment(spec, &mut rng);
    let start = Coloring::from_assignment(*grid, spec.clone(), assignment)
        .expect("random assignment has correct counts");
    let mut eval = SwapEvaluator::new(&start);
    let n = eval.point_count();
    let s = eval.second_moment() as f64;
    let sign = match direction {
        Direction::Maximize => 1.0,
        Direction::Minimize => -1.0,
    };

    let mut best_energy = eval.energy();
    let mut best_assignment = eval.assignment().to_vec();
    let mut trace = vec![Ratio::new(best_energy, eval.second_moment())];
    let mut proposals = 0u64;

    let mut temperature = cfg.initial_temperature;
    while temperature >= cfg.minimum_temperature {
        for _ in 0..cfg.steps_per_temperature {
            proposals += 1;
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b || eval.class_of(a) == eval.class_of(b) {
                continue;
            }
            let delta = eval.swap_energy_delta(a, b);
            let gain = sign * delta as f64 / s;
            let accept = gain >= 0.0 || rng.gen::<f64>() < (gain / temperature).exp();
            if accept {
                eval.apply_swap(a, b);
                let improved = match direction {
                    Direction::Maximize => eval.energy() > best_energy,
                    Direction::Minimize => eval.energy() < best_energy,
                };
                if improved {
                    best_energy = eval.energy();
                    best_assignment.clear();
                    best_assignment.extend_from_slice(eval.assignment());
                    trace.push(Ratio::new(best_energy, eval.second_moment()));
                }
            }
        }
        temperature *= cfg.cooling_factor;
    }
    ChainResult {
        energy: best_energy,
        assignment: best_assignment,
        trace,
        proposals,
    }
}

/// Runs independent annealing chains and returns the best coloring found.
///
/// Chains run in parallel with private RNG streams derived from
/// `(seed, chain)`; the final reduction scans chains in index order and
/// replaces only on strict improvement, so the outcome is deterministic for a
/// given config.
pub fn anneal(
    spec: &PartitionSpec,
    grid: &GridSpec,
    cfg: &AnnealConfig,
    direction: Direction,
) -> Result<AnnealOutcome, MaxError> {
    if spec.total() != grid.point_count() {
        return Err(MaxError::SizeMismatch(
            spec.class_sizes().to_vec(),
            grid.point_count(),
        ));
    }
    cfg.validate()?;
    let results: Vec<ChainResult> = (0..cfg.chains)
        .into_par_iter()
        .map(|chain| run_chain(spec, grid, cfg, direction, chain))
        .collect();
    let mut best: Option<&ChainResult> = None;
    for r in &results {
        let better = match (best, direction) {
            (None, _) => true,
            (Some(b), Direction::Maximize) => r.energy > b.energy,
            (Some(b), Direction::Minimize) => r.energy < b.energy,
        };
        if better {
            best = Some(r);
        }
    }
    let best = best.expect("at least one chain");
    let coloring = Coloring::from_assignment(*grid, spec.clone(), best.assignment.clone())?;
    let lambda = lambda_raw(&coloring)?;
    Ok(AnnealOutcome {
        coloring,
        lambda,
        chain_traces: results.iter().map(|r| r.trace.clone()).collect(),
        proposals: results.iter().map(|r| r.proposals).sum(),
    })
}

/// Annealing toward maximum lambda (the headline solver).
pub fn anneal_max(
    spec: &PartitionSpec,
    grid: &GridSpec,
    cfg: &AnnealConfig,
) -> Result<(Coloring, Lambda), MaxError> {
    let outcome = anneal(spec, grid, cfg, Direction::Maximize)?;
    Ok((outcome.coloring, outcome.lambda))
}

/// Exhaustive maximization over all labeled colorings; ties broken by the
/// lexicographically first assignment vector.
pub fn exact_max_search(
    spec: &PartitionSpec,
    grid: &GridSpec,
    limit: u128,
) -> Result<(Coloring, Lambda), MaxError> {
    if spec.total() != grid.point_count() {
        return Err(MaxError::SizeMismatch(
            spec.class_sizes().to_vec(),
            grid.point_count(),
        ));
    }
    let stats = oracle::enumerate_colorings(spec, grid, limit, |_, _| {})?;
    let lambda = stats.max.expect("at least one coloring");
    let coloring =
        Coloring::from_assignment(*grid, spec.clone(), stats.max_witnesses[0].clone())?;
    Ok((coloring, lambda))
}

/// Audit of a coloring against the weighted centroidal-Voronoi structure.
#[derive(Debug, Clone)]
pub struct VoronoiReport {
    /// Exact class centroids (one rational coordinate vector per class).
    pub centroids: Vec<Vec<Ratio<i64>>>,
    /// Nominal multiplicative weights `w_i = sqrt(n_i)` (larger classes own
    /// larger regions), reported for rendering and large-grid intuition.
    pub weights: Vec<f64>,
    /// Points breaking the weighted-Voronoi separation. Classes i and j must
    /// be separated by a level set of
    /// `g_ij(z) = n_i ||z - c_i||^2 - n_j ||z - c_j||^2` (an Apollonius
    /// boundary): any `x` in class i with `g_ij(x)` strictly above some
    /// `g_ij(y)`, `y` in class j, would trade places profitably at fixed
    /// centroids, so both ends of such a pair are violations. Exact
    /// maximizers never have any: a swap from an optimum changes scatter by
    /// `-delta(energy) + 2 ||y - x||^2 > 0`. Boundary ties are not
    /// violations.
    pub violations: Vec<GridPoint>,
    /// Weighted scatter `sum_i n_i sum_{v in A_i} ||v - c_i||^2` (an exact
    /// integer).
    pub scatter: i64,
    /// Sum of squared distances over all unordered point pairs of the grid,
    /// computed by direct double loop.
    pub total_pairwise: i64,
    /// Integer edge energy `lambda * S` of the coloring.
    pub energy: i64,
    /// Whether `energy = total_pairwise - scatter` holds exactly.
    pub decomposition_holds: bool,
}

/// Weighted squared distance `n_cls * ||x - c_cls||^2` as an exact fraction
/// `(num, den = n_cls)` with `num = sum_t (n_cls x_t - s_t)^2 / n_cls` kept
/// unreduced for cross-multiplied comparisons.
fn weighted_dist2_num(x: &[i64], class_sum: &[i64], n_cls: i64) -> i128 {
    let mut num: i128 = 0;
    for (t, &xt) in x.iter().enumerate() {
        let v = (n_cls * xt - class_sum[t]) as i128;
        num += v * v;
    }
    num
}

/// Evaluates the weighted-Voronoi predicate and the decomposition identity
/// for an arbitrary coloring. Heuristic colorings simply report violations;
/// only exact maximizers are expected to have none.
pub fn voronoi_check(c: &Coloring) -> Result<VoronoiReport, MaxError> {
    let spec = c.partition();
    let grid = c.grid();
    let dim = grid.dim as usize;
    let r = spec.num_classes();
    let points = grid.enumerate_points();
    let sizes: Vec<i64> = spec.class_sizes().iter().map(|&n| n as i64).collect();
    if sizes.contains(&0) {
        return Err(MaxError::EmptyClass);
    }

    let mut class_sum = vec![vec![0i64; dim]; r];
    for (p, &cls) in points.iter().zip(c.assignment()) {
        for (s, &x) in class_sum[cls as usize].iter_mut().zip(&p.coords) {
            *s += x;
        }
    }
    let centroids: Vec<Vec<Ratio<i64>>> = class_sum
        .iter()
        .zip(&sizes)
        .map(|(s, &n)| s.iter().map(|&x| Ratio::new(x, n)).collect())
        .collect();
    let weights: Vec<f64> = sizes.iter().map(|&n| (n as f64).sqrt()).collect();

    // separation audit: for every class pair (i, j), the scaled margin
    // G(z) = n_j * num_i(z) - n_i * num_j(z)  (= n_i n_j g_ij(z), exact)
    // must satisfy max over A_i <= min over A_j; points beyond the other
    // side's extreme would swap profitably at fixed centroids
    let per_class_num: Vec<Vec<i128>> = (0..r)
        .map(|i| {
            points
                .iter()
                .map(|p| weighted_dist2_num(&p.coords, &class_sum[i], sizes[i]))
                .collect()
        })
        .collect();
    let mut violating = vec![false; points.len()];
    for i in 0..r {
        for j in i + 1..r {
            let margin = |v: usize| {
                sizes[j] as i128 * per_class_num[i][v] - sizes[i] as i128 * per_class_num[j][v]
            };
            let mut max_i: Option<i128> = None;
            let mut min_j: Option<i128> = None;
            for (v, &cls) in c.assignment().iter().enumerate() {
                if cls as usize == i {
                    max_i = Some(max_i.map_or(margin(v), |m: i128| m.max(margin(v))));
                } else if cls as usize == j {
                    min_j = Some(min_j.map_or(margin(v), |m: i128| m.min(margin(v))));
                }
            }
            if let (Some(max_i), Some(min_j)) = (max_i, min_j) {
                if max_i > min_j {
                    for (v, &cls) in c.assignment().iter().enumerate() {
                        if (cls as usize == i && margin(v) > min_j)
                            || (cls as usize == j && margin(v) < max_i)
                        {
                            violating[v] = true;
                        }
                    }
                }
            }
        }
    }
    let violations: Vec<GridPoint> = points
        .iter()
        .zip(&violating)
        .filter(|(_, &bad)| bad)
        .map(|(p, _)| p.clone())
        .collect();

    // scatter via the exact rational definition, folded to the known-integer
    // value, cross-checked against the accumulator identity
    let mut scatter_num: i128 = 0; // common denominator: product handled per class
    let mut scatter_int: i64 = 0;
    for i in 0..r {
        let mut class_num: i128 = 0;
        for (p, &cls) in points.iter().zip(c.assignment()) {
            if cls as usize == i {
                class_num += weighted_dist2_num(&p.coords, &class_sum[i], sizes[i]);
            }
        }
        // class contribution n_i * sum ||v - c_i||^2 = class_num / n_i
        debug_assert_eq!(class_num % sizes[i] as i128, 0);
        scatter_num += class_num / sizes[i] as i128;
    }
    scatter_int += scatter_num as i64;

    let eval = SwapEvaluator::new(c);
    debug_assert_eq!(eval.scatter(), scatter_int);

    let mut total_pairwise = 0i64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            total_pairwise += points[i].dist2(&points[j]);
        }
    }
    let energy = eval.energy();
    Ok(VoronoiReport {
        centroids,
        weights,
        violations,
        scatter: scatter_int,
        total_pairwise,
        energy,
        decomposition_holds: energy == total_pairwise - scatter_int,
    })
}

/// One round of size-constrained Lloyd refinement: freeze the class
/// centroids, run transposition descent (apply pair swaps that strictly
/// decrease the frozen-centroid scatter until none exists), then recompute
/// centroids. Both steps are non-increasing in the true scatter, so lambda is
/// non-decreasing round over round. Stops early at a fixed point.
pub fn lloyd_refine(c: &Coloring, rounds: usize) -> Result<Coloring, MaxError> {
    let grid = *c.grid();
    let spec = c.partition().clone();
    let dim = grid.dim as usize;
    let r = spec.num_classes();
    let sizes: Vec<i64> = spec.class_sizes().iter().map(|&n| n as i64).collect();
    let points = grid.enumerate_points();
    let n = points.len();
    let mut assignment: Vec<u16> = c.assignment().to_vec();

    let mut start_scatter = SwapEvaluator::new(c).scatter();
    for _ in 0..rounds {
        // frozen centroids, represented by (class_sum, size)
        let mut class_sum = vec![vec![0i64; dim]; r];
        for (p, &cls) in points.iter().zip(&assignment) {
            for (s, &x) in class_sum[cls as usize].iter_mut().zip(&p.coords) {
                *s += x;
            }
        }
        // cost[v][j] as exact fraction num/n_j; store numerators
        let cost = |v: usize, j: usize| weighted_dist2_num(&points[v].coords, &class_sum[j], sizes[j]);

        let mut changed = false;
        loop {
            let mut any_swap = false;
            for i in 0..r {
                for j in i + 1..r {
                    // moving gain of x from i to j, scaled by n_i * n_j:
                    // d(x) = cost(x,i) * n_j - cost(x,j) * n_i
                    let mut from_i: Vec<(i128, usize)> = Vec::new();
                    let mut from_j: Vec<(i128, usize)> = Vec::new();
                    for v in 0..n {
                        if assignment[v] as usize == i {
                            from_i.push((cost(v, i) * sizes[j] as i128 - cost(v, j) * sizes[i] as i128, v));
                        } else if assignment[v] as usize == j {
                            from_j.push((cost(v, j) * sizes[i] as i128 - cost(v, i) * sizes[j] as i128, v));
                        }
                    }
                    // pair the most-eager movers; stable order by point index
                    from_i.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                    from_j.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                    for ((di, x), (dj, y)) in from_i.iter().zip(from_j.iter()) {
                        if di + dj > 0 {
                            assignment[*x] = j as u16;
                            assignment[*y] = i as u16;
                            any_swap = true;
                            changed = true;
                        } else {
                            break;
                        }
                    }
                }
            }
            if !any_swap {
                break;
            }
        }
        if !changed {
            break;
        }
        let now = Coloring::from_assignment(grid, spec.clone(), assignment.clone())?;
        let scatter = SwapEvaluator::new(&now).scatter();
        debug_assert!(scatter <= start_scatter, "scatter must not increase");
        if scatter == start_scatter {
            break;
        }
        start_scatter = scatter;
    }
    Ok(Coloring::from_assignment(grid, spec, assignment)?)
}
