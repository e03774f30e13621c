//! Exhaustive enumerators used as ground truth by the constructions, the
//! annealer, and the integer-connectivity search.
//!
//! Both enumerators follow a visitor pattern: states are fed to a callback
//! one at a time and never materialized, so multi-million-state sweeps run in
//! constant memory. Min/max statistics count every optimum; witnesses are
//! stored only up to a cap.

use thiserror::Error;

use crate::graphs::PartitionSpec;
use crate::grid::GridSpec;
use crate::lambda::Lambda;
use num_rational::Ratio;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("state space too large: {0} states exceeds limit {1}")]
    TooLarge(u128, u128),
    #[error("class sizes {0:?} do not cover {1} grid points")]
    SizeMismatch(Vec<usize>, usize),
    #[error("need {0} positions for {1} vertices")]
    PointCountMismatch(usize, usize),
}

/// Default cap on witnesses retained in [`EnumerationStats`].
pub const WITNESS_CAP: usize = 1000;

/// Running min/max statistics over an enumeration.
///
/// `min_count`/`max_count` count every optimum seen; the witness lists are
/// truncated at [`WITNESS_CAP`] but always contain the first-found optimum at
/// index 0 (the canonical tie-break: enumeration order).
#[derive(Debug, Clone)]
pub struct EnumerationStats<T, W> {
    pub visited: u64,
    pub min: Option<T>,
    pub max: Option<T>,
    pub min_count: u64,
    pub max_count: u64,
    pub min_witnesses: Vec<W>,
    pub max_witnesses: Vec<W>,
}

impl<T: PartialOrd + Clone, W: Clone> EnumerationStats<T, W> {
    fn new() -> Self {
        EnumerationStats {
            visited: 0,
            min: None,
            max: None,
            min_count: 0,
            max_count: 0,
            min_witnesses: Vec::new(),
            max_witnesses: Vec::new(),
        }
    }

    fn record(&mut self, value: T, witness: impl Fn() -> W) {
        self.visited += 1;
        match &self.min {
            Some(m) if value > *m => {}
            Some(m) if value == *m => {
                self.min_count += 1;
                if self.min_witnesses.len() < WITNESS_CAP {
                    self.min_witnesses.push(witness());
                }
            }
            _ => {
                self.min = Some(value.clone());
                self.min_count = 1;
                self.min_witnesses.clear();
                self.min_witnesses.push(witness());
            }
        }
        match &self.max {
            Some(m) if value < *m => {}
            Some(m) if value == *m => {
                self.max_count += 1;
                if self.max_witnesses.len() < WITNESS_CAP {
                    self.max_witnesses.push(witness());
                }
            }
            _ => {
                self.max = Some(value);
                self.max_count = 1;
                self.max_witnesses.clear();
                self.max_witnesses.push(witness());
            }
        }
    }
}

/// Statistics of a coloring sweep: the metric is the exact lambda value and
/// witnesses are assignment vectors (class index per grid point).
pub type ColoringStats = EnumerationStats<Lambda, Vec<u16>>;

/// Visits every labeled coloring of the grid with the given class sizes
/// exactly once, in lexicographic order of the assignment vector.
///
/// Classes of equal size are still distinct labels, so `K_{1,1,1}` on three
/// points yields 3! = 6 colorings. The visitor receives the assignment and
/// its exact lambda.
pub fn enumerate_colorings<F>(
    spec: &PartitionSpec,
    grid: &GridSpec,
    limit: u128,
    mut visitor: F,
) -> Result<ColoringStats, OracleError>
where
    F: FnMut(&[u16], Lambda),
{
    let n_points = grid.point_count();
    if spec.total() != n_points {
        return Err(OracleError::SizeMismatch(
            spec.class_sizes().to_vec(),
            n_points,
        ));
    }
    let states = spec.multinomial();
    if states > limit {
        return Err(OracleError::TooLarge(states, limit));
    }
    let points = grid.enumerate_points();
    let dim = grid.dim as usize;
    let r = spec.num_classes();
    let sizes: Vec<i64> = spec.class_sizes().iter().map(|&n| n as i64).collect();
    let s = grid.second_moment();
    let n_total: i64 = sizes.iter().sum();

    let mut coords = Vec::with_capacity(n_points * dim);
    let mut norms = Vec::with_capacity(n_points);
    for p in &points {
        coords.extend_from_slice(&p.coords);
        norms.push(p.norm2());
    }

    let mut sweep = ColoringSweep {
        n_points,
        r,
        dim,
        coords,
        norms,
        sizes: sizes.clone(),
        n_total,
        s,
        assignment: vec![0u16; n_points],
        remaining: sizes,
        class_sum: vec![0i64; r * dim],
        weighted_q: 0,
        stats: ColoringStats::new(),
    };
    sweep.descend(0, &mut visitor);
    Ok(sweep.stats)
}

/// Depth-first assignment state; class 0 is tried first at every point, so
/// assignments are visited in lexicographic order.
struct ColoringSweep {
    n_points: usize,
    r: usize,
    dim: usize,
    coords: Vec<i64>,
    norms: Vec<i64>,
    sizes: Vec<i64>,
    n_total: i64,
    s: i64,
    assignment: Vec<u16>,
    remaining: Vec<i64>,
    class_sum: Vec<i64>,
    /// running sum of n_i * ||v||^2 over assigned points
    weighted_q: i64,
    stats: ColoringStats,
}

impl ColoringSweep {
    fn descend<F: FnMut(&[u16], Lambda)>(&mut self, point: usize, visitor: &mut F) {
        if point == self.n_points {
            let penalty: i64 = self.class_sum.iter().map(|&v| v * v).sum();
            let energy = self.n_total * self.s - self.weighted_q + penalty;
            let lambda = Ratio::new(energy, self.s);
            visitor(&self.assignment, lambda);
            let assignment = &self.assignment;
            self.stats.record(lambda, || assignment.clone());
            return;
        }
        for c in 0..self.r {
            if self.remaining[c] == 0 {
                continue;
            }
            self.remaining[c] -= 1;
            self.assignment[point] = c as u16;
            self.weighted_q += self.sizes[c] * self.norms[point];
            for t in 0..self.dim {
                self.class_sum[c * self.dim + t] += self.coords[point * self.dim + t];
            }
            self.descend(point + 1, visitor);
            for t in 0..self.dim {
                self.class_sum[c * self.dim + t] -= self.coords[point * self.dim + t];
            }
            self.weighted_q -= self.sizes[c] * self.norms[point];
            self.remaining[c] += 1;
        }
    }
}

/// Statistics of a bijection sweep: witnesses are position vectors indexed by
/// vertex.
pub type BijectionStats<T> = EnumerationStats<T, Vec<i64>>;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Visits bijections from `0..n_vertices` onto `points`, feeding each to the
/// metric closure and aggregating min/max.
///
/// With `symmetry_pruning` the sweep covers each drawing once modulo global
/// negation (`pos -> -pos`): vertex 0 is forced to a non-negative position,
/// and when it sits at 0, vertex 1 is forced positive. That visits exactly
/// `n!/2` bijections. Without pruning all `n!` are visited; min/max values
/// are identical whenever the metric is negation-invariant.
pub fn enumerate_bijections<T, F>(
    n_vertices: usize,
    points: &[i64],
    symmetry_pruning: bool,
    limit: u128,
    mut metric: F,
) -> Result<BijectionStats<T>, OracleError>
where
    T: PartialOrd + Clone,
    F: FnMut(&[i64]) -> T,
{
    if points.len() != n_vertices {
        return Err(OracleError::PointCountMismatch(points.len(), n_vertices));
    }
    let states = if symmetry_pruning && n_vertices >= 2 {
        factorial(n_vertices) / 2
    } else {
        factorial(n_vertices)
    };
    if states > limit {
        return Err(OracleError::TooLarge(states, limit));
    }
    let mut sweep = BijectionSweep {
        n: n_vertices,
        points: points.to_vec(),
        pruning: symmetry_pruning,
        positions: vec![0i64; n_vertices],
        used: vec![false; n_vertices],
        stats: BijectionStats::new(),
    };
    sweep.descend(0, &mut metric);
    Ok(sweep.stats)
}

struct BijectionSweep<T> {
    n: usize,
    points: Vec<i64>,
    pruning: bool,
    positions: Vec<i64>,
    used: Vec<bool>,
    stats: BijectionStats<T>,
}

impl<T: PartialOrd + Clone> BijectionSweep<T> {
    fn descend<F: FnMut(&[i64]) -> T>(&mut self, vertex: usize, metric: &mut F) {
        if vertex == self.n {
            let value = metric(&self.positions);
            let positions = &self.positions;
            self.stats.record(value, || positions.clone());
            return;
        }
        for i in 0..self.points.len() {
            if self.used[i] {
                continue;
            }
            let p = self.points[i];
            if self.pruning {
                // canonical representative modulo global negation
                if vertex == 0 && p < 0 {
                    continue;
                }
                if vertex == 1 && self.positions[0] == 0 && p < 0 {
                    continue;
                }
            }
            self.used[i] = true;
            self.positions[vertex] = p;
            self.descend(vertex + 1, metric);
            self.used[i] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, prop9_graph, Graph};
    use crate::int_connectivity::line_grid_points;

    fn line_energy(g: &Graph, positions: &[i64]) -> i64 {
        g.edges()
            .iter()
            .map(|&(u, v)| {
                let d = positions[u] - positions[v];
                d * d
            })
            .sum()
    }

    #[test]
    fn coloring_counts_and_extremes() {
        let spec = PartitionSpec::new(vec![1, 2]).unwrap();
        let grid = GridSpec::new(1, 1).unwrap();
        let stats = enumerate_colorings(&spec, &grid, 1 << 20, |_, _| {}).unwrap();
        assert_eq!(stats.visited, 3);
        assert_eq!(stats.min, Some(Ratio::from_integer(1)));
        assert_eq!(stats.max, Some(Ratio::new(5, 2)));
    }

    #[test]
    fn coloring_count_k23() {
        let spec = PartitionSpec::new(vec![2, 3]).unwrap();
        let grid = GridSpec::new(1, 2).unwrap();
        let stats = enumerate_colorings(&spec, &grid, 1 << 20, |_, _| {}).unwrap();
        assert_eq!(stats.visited, 10);
        assert_eq!(stats.min, Some(Ratio::new(11, 5)));
    }

    #[test]
    fn coloring_equal_classes_all_tie() {
        let spec = PartitionSpec::new(vec![1, 1, 1]).unwrap();
        let grid = GridSpec::new(1, 1).unwrap();
        let stats = enumerate_colorings(&spec, &grid, 1 << 20, |_, _| {}).unwrap();
        assert_eq!(stats.visited, 6);
        assert_eq!(stats.min, Some(Ratio::from_integer(3)));
        assert_eq!(stats.max, Some(Ratio::from_integer(3)));
        assert_eq!(stats.min_count, 6);
    }

    #[test]
    fn coloring_visit_count_matches_multinomial() {
        for sizes in [vec![2, 3], vec![1, 2, 2], vec![3, 3, 3]] {
            let spec = PartitionSpec::new(sizes).unwrap();
            let m = (spec.total() as u32 - 1) / 2;
            let grid = GridSpec::new(1, m).unwrap();
            let stats = enumerate_colorings(&spec, &grid, 1 << 30, |_, _| {}).unwrap();
            assert_eq!(stats.visited as u128, spec.multinomial());
        }
    }

    #[test]
    fn coloring_respects_limit() {
        let spec = PartitionSpec::new(vec![4, 5]).unwrap();
        let grid = GridSpec::new(1, 4).unwrap();
        assert!(matches!(
            enumerate_colorings(&spec, &grid, 10, |_, _| {}),
            Err(OracleError::TooLarge(126, 10))
        ));
    }

    #[test]
    fn bijection_counts() {
        let c3 = cycle(3).unwrap();
        let pts = line_grid_points(3);
        let stats =
            enumerate_bijections(3, &pts, true, 1 << 20, |pos| line_energy(&c3, pos)).unwrap();
        assert_eq!(stats.visited, 3);
        assert_eq!(stats.min, Some(6));
        assert_eq!(stats.max, Some(6));
        let stats =
            enumerate_bijections(3, &pts, false, 1 << 20, |pos| line_energy(&c3, pos)).unwrap();
        assert_eq!(stats.visited, 6);
        assert_eq!(stats.min, Some(6));
    }

    #[test]
    fn bijection_pruning_preserves_extremes() {
        let g = prop9_graph();
        let pts = line_grid_points(5);
        let with: BijectionStats<i64> =
            enumerate_bijections(5, &pts, true, 1 << 20, |pos| line_energy(&g, pos)).unwrap();
        let without: BijectionStats<i64> =
            enumerate_bijections(5, &pts, false, 1 << 20, |pos| line_energy(&g, pos)).unwrap();
        assert_eq!(with.visited, 60);
        assert_eq!(without.visited, 120);
        assert_eq!(with.min, without.min);
        assert_eq!(with.max, without.max);
        // paper value: minimum edge energy 8 over S = 10
        assert_eq!(with.min, Some(8));
    }

    #[test]
    fn bijection_even_grid_counts() {
        let c4 = cycle(4).unwrap();
        let pts = line_grid_points(4);
        assert_eq!(pts, vec![-2, -1, 1, 2]);
        let stats =
            enumerate_bijections(4, &pts, true, 1 << 20, |pos| line_energy(&c4, pos)).unwrap();
        assert_eq!(stats.visited, 12);
        // min lambda = 2 means min energy = 2 * S = 20
        assert_eq!(stats.min, Some(20));
    }

    #[test]
    fn bijection_respects_limit() {
        let pts = line_grid_points(9);
        assert!(enumerate_bijections(9, &pts, true, 100, |_| 0i64).is_err());
    }
}
