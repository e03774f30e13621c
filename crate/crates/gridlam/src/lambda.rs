//! The normalized drawing energy `lambda(v)` for multipartite colorings.
//!
//! Two permanently cross-tested routes compute it: [`lambda_raw`] sums squared
//! distances over all inter-class point pairs (the oracle, O(N^2)), and
//! [`lambda_closed_form`] evaluates
//!
//! ```text
//! lambda(v) = N - (1/S) sum_i n_i Q_i + (1/S) sum_i ||s_i||^2
//! ```
//!
//! from per-class accumulators `Q_i = sum of squared norms` and
//! `s_i = coordinate sum` (the fast path, O(N)). The same accumulators make a
//! two-point color swap an O(d) update, which the annealer relies on.
//!
//! Everything here is exact: energies are integers, lambda values are
//! `Ratio<i64>`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::PartitionSpec;
use crate::grid::{GridPoint, GridSpec};

/// Exact rational drawing energy.
pub type Lambda = Ratio<i64>;

/// Formats a lambda value as `p/q` (always with an explicit denominator).
pub fn lambda_string(l: &Lambda) -> String {
    format!("{}/{}", l.numer(), l.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn lambda_from_string(s: &str) -> Option<Lambda> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Ratio::new(p, q))
        }
        None => {
            let p: i64 = s.trim().parse().ok()?;
            Some(Ratio::from_integer(p))
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ColoringError {
    #[error("class sizes {0:?} do not cover the grid ({1} points)")]
    SizeMismatch(Vec<usize>, usize),
    #[error("class sizes must be non-decreasing, got {0:?}")]
    ClassOrder(Vec<usize>),
    #[error("point {0:?} appears in more than one class or not on the grid")]
    BadPoint(Vec<i64>),
    #[error("classes do not cover every grid point")]
    Incomplete,
    #[error("degenerate grid: sum of squared norms is zero")]
    DegenerateGrid,
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
    #[error(transparent)]
    Graph(#[from] crate::graphs::GraphError),
}

/// An assignment of every grid point to one of `r` labeled classes with
/// prescribed sizes — equivalently, a straight-line drawing of
/// `K_{n_1,...,n_r}` on the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    grid: GridSpec,
    spec: PartitionSpec,
    /// Class index of each point, aligned with `grid.enumerate_points()`.
    class_of: Vec<u16>,
}

impl Coloring {
    /// Builds a coloring from an assignment vector aligned with the grid's
    /// enumeration order.
    pub fn from_assignment(
        grid: GridSpec,
        spec: PartitionSpec,
        class_of: Vec<u16>,
    ) -> Result<Self, ColoringError> {
        if class_of.len() != grid.point_count() || spec.total() != grid.point_count() {
            return Err(ColoringError::SizeMismatch(
                spec.class_sizes().to_vec(),
                grid.point_count(),
            ));
        }
        let mut counts = vec![0usize; spec.num_classes()];
        for &c in &class_of {
            let c = c as usize;
            if c >= counts.len() {
                return Err(ColoringError::Incomplete);
            }
            counts[c] += 1;
        }
        if counts != spec.class_sizes() {
            return Err(ColoringError::SizeMismatch(counts, grid.point_count()));
        }
        Ok(Coloring {
            grid,
            spec,
            class_of,
        })
    }

    /// Builds a coloring from explicit per-class point lists. Class sizes
    /// must be non-decreasing and the classes must partition the grid.
    pub fn from_classes(
        grid: GridSpec,
        classes: &[Vec<GridPoint>],
    ) -> Result<Self, ColoringError> {
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(ColoringError::ClassOrder(sizes));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(ColoringError::EmptyClass(i));
        }
        let spec =
            PartitionSpec::new(sizes).map_err(|_| ColoringError::ClassOrder(Vec::new()))?;
        let mut class_of = vec![u16::MAX; grid.point_count()];
        for (c, pts) in classes.iter().enumerate() {
            for p in pts {
                let idx = grid
                    .point_index(p)
                    .map_err(|_| ColoringError::BadPoint(p.coords.clone()))?;
                if class_of[idx] != u16::MAX {
                    return Err(ColoringError::BadPoint(p.coords.clone()));
                }
                class_of[idx] = c as u16;
            }
        }
        if class_of.contains(&u16::MAX) {
            return Err(ColoringError::Incomplete);
        }
        Coloring::from_assignment(grid, spec, class_of)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn partition(&self) -> &PartitionSpec {
        &self.spec
    }

    pub fn assignment(&self) -> &[u16] {
        &self.class_of
    }

    /// Per-class point lists, classes in size order, points in grid order.
    pub fn classes(&self) -> Vec<Vec<GridPoint>> {
        let mut classes = vec![Vec::new(); self.spec.num_classes()];
        for (p, &c) in self.grid.enumerate_points().iter().zip(&self.class_of) {
            classes[c as usize].push(p.clone());
        }
        classes
    }
}

/// JSON schema mirror: `{ "dim": d, "half_width": M, "classes": [...] }` with
/// classes as point lists in size order.
#[derive(Serialize, Deserialize)]
struct ColoringJson {
    dim: u32,
    half_width: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    exclude_origin: bool,
    classes: Vec<Vec<Vec<i64>>>,
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let classes = self
            .classes()
            .into_iter()
            .map(|pts| pts.into_iter().map(|p| p.coords).collect())
            .collect();
        ColoringJson {
            dim: self.grid.dim,
            half_width: self.grid.half_width,
            exclude_origin: self.grid.exclude_origin,
            classes,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = ColoringJson::deserialize(deserializer)?;
        let grid = GridSpec {
            dim: json.dim,
            half_width: json.half_width,
            exclude_origin: json.exclude_origin,
        };
        let classes: Vec<Vec<GridPoint>> = json
            .classes
            .into_iter()
            .map(|pts| pts.into_iter().map(GridPoint::new).collect())
            .collect();
        Coloring::from_classes(grid, &classes).map_err(serde::de::Error::custom)
    }
}

/// Ground-truth lambda: sum of squared distances over all pairs of points in
/// distinct classes, divided by the grid's second moment. O(N^2).
pub fn lambda_raw(c: &Coloring) -> Result<Lambda, ColoringError> {
    let s = c.grid.second_moment();
    if s == 0 {
        return Err(ColoringError::DegenerateGrid);
    }
    Ok(Ratio::new(raw_edge_energy(c), s))
}

/// Integer numerator of `lambda_raw`: the total squared edge length.
pub fn raw_edge_energy(c: &Coloring) -> i64 {
    let points = c.grid.enumerate_points();
    let mut energy = 0i64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if c.class_of[i] != c.class_of[j] {
                energy += points[i].dist2(&points[j]);
            }
        }
    }
    energy
}

/// Closed-form lambda from per-class accumulators. Exactly equals
/// [`lambda_raw`] on every coloring; O(N).
pub fn lambda_closed_form(c: &Coloring) -> Result<Lambda, ColoringError> {
    let s = c.grid.second_moment();
    if s == 0 {
        return Err(ColoringError::DegenerateGrid);
    }
    Ok(Ratio::new(SwapEvaluator::new(c).energy(), s))
}

/// The class-sum penalty `sum_i ||s_i||^2` together with the independently
/// computed cross term `-2 sum_{i<j} A_i . A_j` (a double loop over point
/// pairs). The two are equal whenever the points sum to zero overall.
pub fn class_sum_penalty(classes: &[Vec<GridPoint>]) -> Result<(i64, i64), ColoringError> {
    let dim = classes
        .iter()
        .flat_map(|c| c.first())
        .map(|p| p.coords.len())
        .next()
        .unwrap_or(0);
    let mut total = vec![0i64; dim];
    for class in classes {
        for p in class {
            for (t, c) in total.iter_mut().zip(&p.coords) {
                *t += c;
            }
        }
    }
    if total.iter().any(|&t| t != 0) {
        return Err(ColoringError::BadPoint(total));
    }
    let mut penalty = 0i64;
    for class in classes {
        let mut s = vec![0i64; dim];
        for p in class {
            for (t, c) in s.iter_mut().zip(&p.coords) {
                *t += c;
            }
        }
        penalty += s.iter().map(|&t| t * t).sum::<i64>();
    }
    let mut cross = 0i64;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for v in &classes[i] {
                for w in &classes[j] {
                    cross += v
                        .coords
                        .iter()
                        .zip(&w.coords)
                        .map(|(a, b)| a * b)
                        .sum::<i64>();
                }
            }
        }
    }
    Ok((penalty, -2 * cross))
}

/// Both sides of the pairwise-to-centroid identity
/// `sum_{i<j} ||p_i - p_j||^2 = n sum_i ||p_i - c||^2` as exact rationals.
pub fn pairwise_to_centroid_identity(points: &[GridPoint]) -> (Lambda, Lambda) {
    let n = points.len() as i64;
    let mut pairwise = 0i64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairwise += points[i].dist2(&points[j]);
        }
    }
    let dim = points.first().map_or(0, |p| p.coords.len());
    let mut sum = vec![0i64; dim];
    for p in points {
        for (s, c) in sum.iter_mut().zip(&p.coords) {
            *s += c;
        }
    }
    // n * ||p - s/n||^2 summed = sum_i sum_t (n p_it - s_t)^2 / n
    let mut scaled = 0i64;
    for p in points {
        for (t, &s) in sum.iter().enumerate() {
            let v = n * p.coords[t] - s;
            scaled += v * v;
        }
    }
    (Ratio::from_integer(pairwise), Ratio::new(scaled, n))
}

/// Incremental lambda evaluator over two-point color swaps.
///
/// Keeps per-class accumulators (point count, sum of squared norms,
/// coordinate sum) plus the current integer edge energy, making a swap an
/// O(d) update. One evaluator per search thread; not shared.
#[derive(Debug, Clone)]
pub struct SwapEvaluator {
    dim: usize,
    second_moment: i64,
    sizes: Vec<i64>,
    coords: Vec<i64>,
    norms: Vec<i64>,
    class_of: Vec<u16>,
    class_q: Vec<i64>,
    class_sum: Vec<i64>,
    energy: i64,
}

impl SwapEvaluator {
    pub fn new(c: &Coloring) -> Self {
        let dim = c.grid.dim as usize;
        let points = c.grid.enumerate_points();
        let n_points = points.len();
        let r = c.spec.num_classes();
        let mut coords = Vec::with_capacity(n_points * dim);
        let mut norms = Vec::with_capacity(n_points);
        for p in &points {
            coords.extend_from_slice(&p.coords);
            norms.push(p.norm2());
        }
        let mut class_q = vec![0i64; r];
        let mut class_sum = vec![0i64; r * dim];
        for (i, &cls) in c.class_of.iter().enumerate() {
            let cls = cls as usize;
            class_q[cls] += norms[i];
            for t in 0..dim {
                class_sum[cls * dim + t] += coords[i * dim + t];
            }
        }
        let sizes: Vec<i64> = c.spec.class_sizes().iter().map(|&n| n as i64).collect();
        let n_total: i64 = sizes.iter().sum();
        let s = c.grid.second_moment();
        let mut energy = n_total * s;
        for (i, &q) in class_q.iter().enumerate() {
            energy -= sizes[i] * q;
        }
        for i in 0..r {
            for t in 0..dim {
                let v = class_sum[i * dim + t];
                energy += v * v;
            }
        }
        SwapEvaluator {
            dim,
            second_moment: s,
            sizes,
            coords,
            norms,
            class_of: c.class_of.clone(),
            class_q,
            class_sum,
            energy,
        }
    }

    pub fn point_count(&self) -> usize {
        self.norms.len()
    }

    pub fn class_of(&self, point: usize) -> u16 {
        self.class_of[point]
    }

    /// Current integer edge energy (`lambda * S`).
    pub fn energy(&self) -> i64 {
        self.energy
    }

    pub fn second_moment(&self) -> i64 {
        self.second_moment
    }

    pub fn lambda(&self) -> Lambda {
        Ratio::new(self.energy, self.second_moment)
    }

    /// Class-sum penalty `sum_i ||s_i||^2`.
    pub fn penalty(&self) -> i64 {
        self.class_sum.iter().map(|&v| v * v).sum()
    }

    /// Weighted scatter `sum_i n_i Q_i - sum_i ||s_i||^2`
    /// (`= sum_i n_i sum_{v in A_i} ||v - c_i||^2`, an integer).
    pub fn scatter(&self) -> i64 {
        let q: i64 = self
            .class_q
            .iter()
            .zip(&self.sizes)
            .map(|(&q, &n)| n * q)
            .sum();
        q - self.penalty()
    }

    /// Energy change if points `a` and `b` exchanged colors. Zero when they
    /// share a class.
    pub fn swap_energy_delta(&self, a: usize, b: usize) -> i64 {
        let ca = self.class_of[a] as usize;
        let cb = self.class_of[b] as usize;
        if ca == cb {
            return 0;
        }
        let dn = self.sizes[cb] - self.sizes[ca];
        let mut delta = dn * (self.norms[b] - self.norms[a]);
        let mut cross = 0i64;
        let mut diff_norm = 0i64;
        for t in 0..self.dim {
            let d = self.coords[b * self.dim + t] - self.coords[a * self.dim + t];
            let s = self.class_sum[ca * self.dim + t] - self.class_sum[cb * self.dim + t];
            cross += s * d;
            diff_norm += d * d;
        }
        delta += 2 * cross + 2 * diff_norm;
        delta
    }

    /// Applies the swap and returns the energy delta.
    pub fn apply_swap(&mut self, a: usize, b: usize) -> i64 {
        let delta = self.swap_energy_delta(a, b);
        let ca = self.class_of[a] as usize;
        let cb = self.class_of[b] as usize;
        if ca == cb {
            return 0;
        }
        self.class_q[ca] += self.norms[b] - self.norms[a];
        self.class_q[cb] += self.norms[a] - self.norms[b];
        for t in 0..self.dim {
            let d = self.coords[b * self.dim + t] - self.coords[a * self.dim + t];
            self.class_sum[ca * self.dim + t] += d;
            self.class_sum[cb * self.dim + t] -= d;
        }
        self.class_of.swap(a, b);
        self.energy += delta;
        delta
    }

    /// Extracts the current assignment as a coloring.
    pub fn to_coloring(&self, grid: GridSpec, spec: PartitionSpec) -> Coloring {
        Coloring::from_assignment(grid, spec, self.class_of.clone())
            .expect("evaluator state is a valid coloring")
    }

    pub fn assignment(&self) -> &[u16] {
        &self.class_of
    }
}
