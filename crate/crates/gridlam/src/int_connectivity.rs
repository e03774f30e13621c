//! The integer variant of the algebraic connectivity.
//!
//! A graph on `N` vertices is drawn bijectively onto the symmetric 1-D grid
//! `P = {-floor(N/2),...,floor(N/2)}`, with the origin excluded when `N` is
//! even so drawings stay zero-mean. `lambda_2^I(G)` is the minimum normalized
//! energy over all such drawings; for odd `N` it equals the squared
//! minimum-2-sum divided by the (constant) second moment, but for even `N`
//! the two problems live on different point sets and can have different
//! optimal orderings.
//!
//! Exact search is branch-and-bound over vertex-to-position assignments:
//! vertices in descending-degree order, partial edge energy as the bound,
//! global negation pruned by forcing the first vertex to a non-negative
//! position.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{cartesian_product, hypercube, prop9_graph, Graph, GraphError};
use crate::grid::symmetric_line_second_moment;
use crate::lambda::Lambda;

#[derive(Debug, Error, PartialEq)]
pub enum IntError {
    #[error("search space of {0} states exceeds limit {1}")]
    TooLarge(u128, u128),
    #[error("positions {0:?} are not a bijection onto the grid for N = {1}")]
    BadDrawing(Vec<i64>, usize),
    #[error("graphs must share a vertex set: {0} vs {1} vertices")]
    VertexSetMismatch(usize, usize),
    #[error("graphs must be edge-disjoint, both contain {0}-{1}")]
    EdgesOverlap(usize, usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("block drawing requires odd orders, got {0} and {1}")]
    NotOdd(usize, usize),
    #[error("hypercube recursion supports 2 <= 2^k <= 16, got k = {0}")]
    BadHypercubeOrder(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The 1-D point set for drawings of an `n`-vertex graph:
/// `{-floor(n/2),...,floor(n/2)}`, origin removed when `n` is even.
pub fn line_grid_points(n: usize) -> Vec<i64> {
    let k = (n / 2) as i64;
    (-k..=k)
        .filter(|&x| !(n.is_multiple_of(2) && x == 0))
        .collect()
}

/// A bijective drawing of a graph onto the symmetric 1-D grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDrawing {
    graph: Graph,
    positions: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct LineDrawingJson {
    graph: Graph,
    positions: Vec<i64>,
}

impl Serialize for LineDrawing {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LineDrawingJson {
            graph: self.graph.clone(),
            positions: self.positions.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LineDrawing {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = LineDrawingJson::deserialize(deserializer)?;
        LineDrawing::new(json.graph, json.positions).map_err(serde::de::Error::custom)
    }
}

impl LineDrawing {
    pub fn new(graph: Graph, positions: Vec<i64>) -> Result<Self, IntError> {
        let n = graph.vertex_count();
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        if sorted != line_grid_points(n) {
            return Err(IntError::BadDrawing(positions, n));
        }
        Ok(LineDrawing { graph, positions })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Position of each vertex, indexed by vertex id.
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    /// Total squared edge length.
    pub fn energy(&self) -> i64 {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                let d = self.positions[u] - self.positions[v];
                d * d
            })
            .sum()
    }

    /// Sum of squared positions (constant over all drawings of the graph).
    pub fn second_moment(&self) -> i64 {
        symmetric_line_second_moment((self.graph.vertex_count() / 2) as i64)
    }

    pub fn lambda(&self) -> Lambda {
        Ratio::new(self.energy(), self.second_moment())
    }

    /// Canonical form modulo global negation: the first vertex with a nonzero
    /// position sits on the positive side.
    pub fn canonicalize(&mut self) {
        if let Some(&p) = self.positions.iter().find(|&&p| p != 0) {
            if p < 0 {
                for q in &mut self.positions {
                    *q = -*q;
                }
            }
        }
    }
}

/// Normalized energy of a line drawing (1-D specialization of the general
/// drawing energy).
pub fn lambda_of_line_drawing(d: &LineDrawing) -> Lambda {
    d.lambda()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

struct MinEnergySearch<'a> {
    adjacency: &'a [Vec<usize>],
    order: Vec<usize>,
    points: Vec<i64>,
    positions: Vec<i64>,
    assigned: Vec<bool>,
    used: Vec<bool>,
    best_energy: i64,
    best_positions: Vec<i64>,
}

impl MinEnergySearch<'_> {
    fn descend(&mut self, depth: usize, energy: i64) {
        if energy >= self.best_energy {
            return;
        }
        if depth == self.order.len() {
            self.best_energy = energy;
            self.best_positions.copy_from_slice(&self.positions);
            return;
        }
        let v = self.order[depth];
        for i in 0..self.points.len() {
            if self.used[i] {
                continue;
            }
            let p = self.points[i];
            // negation symmetry: first vertex non-negative; second vertex
            // positive whenever the first sat at the origin
            if depth == 0 && p < 0 {
                continue;
            }
            if depth == 1 && self.positions[self.order[0]] == 0 && p < 0 {
                continue;
            }
            let mut added = 0i64;
            for &u in &self.adjacency[v] {
                if self.assigned[u] {
                    let d = p - self.positions[u];
                    added += d * d;
                }
            }
            if energy + added >= self.best_energy {
                continue;
            }
            self.used[i] = true;
            self.assigned[v] = true;
            self.positions[v] = p;
            self.descend(depth + 1, energy + added);
            self.assigned[v] = false;
            self.used[i] = false;
        }
    }
}

/// Exact `lambda_2^I(G)` with one optimal witness, by branch-and-bound over
/// all bijections modulo global negation.
pub fn lambda2_int(g: &Graph, limit: u128) -> Result<(Lambda, LineDrawing), IntError> {
    let n = g.vertex_count();
    let states = if n >= 2 { factorial(n) / 2 } else { 1 };
    if states > limit {
        return Err(IntError::TooLarge(states, limit));
    }
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let adjacency = g.adjacency();
    let points = line_grid_points(n);
    let mut search = MinEnergySearch {
        adjacency: &adjacency,
        order,
        positions: vec![0; n],
        assigned: vec![false; n],
        used: vec![false; points.len()],
        best_energy: i64::MAX,
        best_positions: vec![0; n],
        points,
    };
    search.descend(0, 0);
    let mut drawing = LineDrawing::new(g.clone(), search.best_positions)?;
    drawing.canonicalize();
    Ok((drawing.lambda(), drawing))
}

/// Exponent for the minimum-p-sum; `Infinity` is the bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

/// Result of an exact minimum-p-sum search over orderings `V -> {1,...,N}`.
#[derive(Debug, Clone)]
pub struct MinPSum {
    /// `sigma_p(G)`: the p-norm of the edge-length vector at the optimum.
    pub value: f64,
    /// For `p = 2`: the exact integer `sigma_2^2(G)`.
    pub sigma2_squared: Option<i64>,
    /// Optimal position of each vertex, 1-based, indexed by vertex id.
    pub mapping: Vec<usize>,
}

/// Exact minimum-p-sum by branch-and-bound over orderings, with the
/// reversal symmetry `psi -> N+1-psi` pruned.
pub fn min_p_sum(g: &Graph, p: PNorm, limit: u128) -> Result<MinPSum, IntError> {
    let n = g.vertex_count();
    let states = if n >= 2 { factorial(n) / 2 } else { 1 };
    if states > limit {
        return Err(IntError::TooLarge(states, limit));
    }
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let adjacency = g.adjacency();

    // edge cost by absolute length, precomputed for finite p
    let cost: Vec<f64> = (0..=n as i64)
        .map(|d| match p {
            PNorm::Finite(e) => (d as f64).powf(e),
            PNorm::Infinity => d as f64,
        })
        .collect();

    struct S<'a> {
        adjacency: &'a [Vec<usize>],
        order: &'a [usize],
        cost: &'a [f64],
        infinity: bool,
        n: usize,
        mapping: Vec<usize>,
        assigned: Vec<bool>,
        used: Vec<bool>,
        best: f64,
        best_mapping: Vec<usize>,
    }
    impl S<'_> {
        fn descend(&mut self, depth: usize, acc: f64) {
            if acc >= self.best {
                return;
            }
            if depth == self.order.len() {
                self.best = acc;
                self.best_mapping.copy_from_slice(&self.mapping);
                return;
            }
            let v = self.order[depth];
            let half = self.n.div_ceil(2);
            for pos in 1..=self.n {
                if self.used[pos] {
                    continue;
                }
                // reversal symmetry: first vertex in the lower half; if it
                // sits exactly in the middle (odd N), the second vertex too
                if depth == 0 && pos > half {
                    continue;
                }
                if depth == 1
                    && self.n % 2 == 1
                    && self.mapping[self.order[0]] == half
                    && pos > half
                {
                    continue;
                }
                let mut local: f64 = 0.0;
                let mut feasible = true;
                for &u in &self.adjacency[v] {
                    if self.assigned[u] {
                        let d = (pos as i64 - self.mapping[u] as i64).unsigned_abs() as usize;
                        if self.infinity {
                            local = local.max(self.cost[d]);
                        } else {
                            local += self.cost[d];
                        }
                        let total = if self.infinity { acc.max(local) } else { acc + local };
                        if total >= self.best {
                            feasible = false;
                            break;
                        }
                    }
                }
                if !feasible {
                    continue;
                }
                let next = if self.infinity { acc.max(local) } else { acc + local };
                self.used[pos] = true;
                self.assigned[v] = true;
                self.mapping[v] = pos;
                self.descend(depth + 1, next);
                self.assigned[v] = false;
                self.used[pos] = false;
            }
        }
    }
    let mut search = S {
        adjacency: &adjacency,
        order: &order,
        cost: &cost,
        infinity: matches!(p, PNorm::Infinity),
        n,
        mapping: vec![0; n],
        assigned: vec![false; n],
        used: vec![false; n + 1],
        best: f64::INFINITY,
        best_mapping: vec![0; n],
    };
    search.descend(0, 0.0);

    let mapping = search.best_mapping;
    let sigma2_squared = match p {
        PNorm::Finite(2.0) => Some(
            g.edges()
                .iter()
                .map(|&(u, v)| {
                    let d = mapping[u] as i64 - mapping[v] as i64;
                    d * d
                })
                .sum(),
        ),
        _ => None,
    };
    let value = match p {
        PNorm::Finite(e) => search.best.powf(1.0 / e),
        PNorm::Infinity => search.best,
    };
    Ok(MinPSum {
        value,
        sigma2_squared,
        mapping,
    })
}

/// Superadditivity over edge-disjoint unions:
/// `lambda_2^I(G) + lambda_2^I(H) <= lambda_2^I(G u H)`. A `false` return is
/// a counterexample (none exists).
pub fn edge_disjoint_superadditivity_check(
    g: &Graph,
    h: &Graph,
    limit: u128,
) -> Result<bool, IntError> {
    if g.vertex_count() != h.vertex_count() {
        return Err(IntError::VertexSetMismatch(
            g.vertex_count(),
            h.vertex_count(),
        ));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| h.has_edge(u, v)) {
        return Err(IntError::EdgesOverlap(u, v));
    }
    let union = g.union(h)?;
    let (lg, _) = lambda2_int(g, limit)?;
    let (lh, _) = lambda2_int(h, limit)?;
    let (lu, _) = lambda2_int(&union, limit)?;
    Ok(lg + lh <= lu)
}

/// Edge-addition sandwich: with `D = 2 * sum_{i<=floor(N/2)} i^2`,
/// `lambda_2^I(G) + 1/D <= lambda_2^I(G+e) <= lambda_2^I(G) + N^2/D`,
/// compared exactly.
pub fn edge_addition_bounds_check(
    g: &Graph,
    u: usize,
    v: usize,
    limit: u128,
) -> Result<bool, IntError> {
    if g.has_edge(u, v) {
        return Err(IntError::EdgeExists(u, v));
    }
    let n = g.vertex_count() as i64;
    let extended = g.plus_edge(u, v)?;
    let (before, _) = lambda2_int(g, limit)?;
    let (after, _) = lambda2_int(&extended, limit)?;
    let d = symmetric_line_second_moment(n / 2);
    let lower = before + Ratio::new(1, d);
    let upper = before + Ratio::new(n * n, d);
    Ok(lower <= after && after <= upper)
}

/// The right-hand side of the odd-order product bound:
/// `lambda_2^I(G) (|G|^2-1)/(|G|^2|H|^2-1) + lambda_2^I(H) |G|^2(|H|^2-1)/(|G|^2|H|^2-1)`.
pub fn prop7_bound(lambda_g: Lambda, lambda_h: Lambda, ng: usize, nh: usize) -> Lambda {
    let g2 = (ng * ng) as i64;
    let h2 = (nh * nh) as i64;
    let denom = g2 * h2 - 1;
    lambda_g * Ratio::new(g2 - 1, denom) + lambda_h * Ratio::new(g2 * (h2 - 1), denom)
}

/// The block drawing of `G x H` from optimal drawings of the factors: `|H|`
/// consecutive copies of `G`, copies placed by the drawing of `H`, vertices
/// inside each copy placed by the drawing of `G`. Requires odd orders.
///
/// Its energy is `|H| E_G + |G|^3 E_H`, which meets the product bound with
/// equality when both input drawings are optimal.
pub fn cartesian_drawing(
    g_opt: &LineDrawing,
    h_opt: &LineDrawing,
) -> Result<LineDrawing, IntError> {
    let ng = g_opt.graph().vertex_count();
    let nh = h_opt.graph().vertex_count();
    if ng.is_multiple_of(2) || nh.is_multiple_of(2) {
        return Err(IntError::NotOdd(ng, nh));
    }
    let product = cartesian_product(g_opt.graph(), h_opt.graph());
    let mut positions = vec![0i64; ng * nh];
    for u in 0..ng {
        for w in 0..nh {
            positions[u * nh + w] = h_opt.positions()[w] * ng as i64 + g_opt.positions()[u];
        }
    }
    LineDrawing::new(product, positions)
}

/// Recursive optimal drawing of the hypercube `Q_{2^k}`: the drawing of
/// `Q_{2^(k-1)}` shifted into `{1,...,N/2}` for vertices with leading bit 0,
/// the same shifted copy translated into `{-N/2,...,-1}` for leading bit 1,
/// matching edges all of length `N/2 + 1`. Its lambda is exactly 2 for every
/// k here.
pub fn hypercube_drawing(k: u32) -> Result<LineDrawing, IntError> {
    if k == 0 || k > 4 {
        return Err(IntError::BadHypercubeOrder(k));
    }
    fn positions(k: u32) -> Vec<i64> {
        if k == 1 {
            return vec![1, -1];
        }
        let n = 1i64 << k;
        let sub = positions(k - 1);
        let shift = |p: i64| if p > 0 { p + n / 4 } else { p + n / 4 + 1 };
        let mut pos = vec![0i64; n as usize];
        let half = (n / 2) as usize;
        for (rest, &p) in sub.iter().enumerate() {
            pos[rest] = shift(p);
            pos[half + rest] = shift(p) - (n / 2 + 1);
        }
        pos
    }
    let graph = hypercube(1usize << k)?;
    LineDrawing::new(graph, positions(k))
}

/// The explicit 25-vertex drawing of the product of [`prop9_graph`] with
/// itself, assembled from three affine position blocks. Its lambda is
/// 775/1300, strictly below the factor's own integer connectivity 8/10.
pub fn prop9_product_drawing() -> LineDrawing {
    let g = prop9_graph();
    let product = cartesian_product(&g, &g);
    let mut positions = vec![0i64; 25];
    for i in 1..=5i64 {
        for j in 1..=5i64 {
            let pos = if i <= 3 && j <= 3 {
                -12 + 3 * (i - 1) + (j - 1)
            } else if i <= 3 {
                -3 + 2 * (i - 1) + (j - 4)
            } else {
                3 + 5 * (i - 4) + (j - 1)
            };
            positions[((i - 1) * 5 + (j - 1)) as usize] = pos;
        }
    }
    LineDrawing::new(product, positions).expect("static drawing is a bijection")
}

pub const DEFAULT_BIJECTION_LIMIT: u128 = 100_000_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, path, prop10_candidate_graph};
    use crate::oracle::enumerate_bijections;
    use crate::spectral::laplacian_spectrum;

    #[test]
    fn line_grid_point_sets() {
        assert_eq!(line_grid_points(3), vec![-1, 0, 1]);
        assert_eq!(line_grid_points(5), vec![-2, -1, 0, 1, 2]);
        assert_eq!(line_grid_points(4), vec![-2, -1, 1, 2]);
        assert_eq!(line_grid_points(8), vec![-4, -3, -2, -1, 1, 2, 3, 4]);
    }

    #[test]
    fn line_drawing_lambda_hand_cases() {
        let c3 = cycle(3).unwrap();
        let d = LineDrawing::new(c3, vec![-1, 0, 1]).unwrap();
        assert_eq!(d.lambda(), Ratio::from_integer(3));

        let p3 = path(3).unwrap();
        let d = LineDrawing::new(p3, vec![-1, 0, 1]).unwrap();
        assert_eq!(d.lambda(), Ratio::from_integer(1));

        let p2 = path(2).unwrap();
        let d = LineDrawing::new(p2, vec![-1, 1]).unwrap();
        assert_eq!(d.lambda(), Ratio::from_integer(2));
    }

    #[test]
    fn line_drawing_validates() {
        let p3 = path(3).unwrap();
        assert!(LineDrawing::new(p3.clone(), vec![-1, 1, 1]).is_err());
        assert!(LineDrawing::new(p3.clone(), vec![-1, 0, 2]).is_err());
        let p4 = path(4).unwrap();
        // origin is excluded for even N
        assert!(LineDrawing::new(p4, vec![-2, -1, 0, 1]).is_err());
    }

    #[test]
    fn lambda2_int_prop9_value() {
        let g = prop9_graph();
        let (lambda, witness) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
        assert_eq!(lambda, Ratio::new(8, 10));
        assert_eq!(witness.lambda(), lambda);
        // the identity drawing f(i) = i - 3 attains it
        let identity = LineDrawing::new(g, vec![-2, -1, 0, 1, 2]).unwrap();
        assert_eq!(identity.lambda(), Ratio::new(8, 10));
    }

    #[test]
    fn lambda2_int_hypercube_q8() {
        let g = hypercube(8).unwrap();
        let (lambda, _) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
        assert_eq!(lambda, Ratio::from_integer(2));
    }

    #[test]
    fn lambda2_int_matches_plain_enumeration() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..30 {
            let n = rng.gen_range(2..=7usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let (bb, _) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
            let points = line_grid_points(n);
            let plain = enumerate_bijections(n, &points, false, 1 << 30, |pos| {
                g.edges()
                    .iter()
                    .map(|&(u, v)| {
                        let d = pos[u] - pos[v];
                        d * d
                    })
                    .sum::<i64>()
            })
            .unwrap();
            let s = symmetric_line_second_moment((n / 2) as i64);
            assert_eq!(bb, Ratio::new(plain.min.unwrap(), s), "trial {trial}");
        }
    }

    #[test]
    fn lambda2_int_dominates_algebraic_connectivity() {
        for g in [
            path(5).unwrap(),
            cycle(6).unwrap(),
            prop9_graph(),
            hypercube(8).unwrap(),
        ] {
            let (li, _) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
            let l2 = laplacian_spectrum(&g).unwrap().lambda2();
            let li_f = *li.numer() as f64 / *li.denom() as f64;
            assert!(l2 <= li_f + 1e-8, "{:?}", g.label());
        }
    }

    #[test]
    fn lambda2_int_respects_limit() {
        let g = path(9).unwrap();
        assert!(matches!(
            lambda2_int(&g, 100),
            Err(IntError::TooLarge(_, 100))
        ));
    }

    #[test]
    fn min_p_sum_path_identity_order() {
        for n in 2..=7 {
            let g = path(n).unwrap();
            let res = min_p_sum(&g, PNorm::Finite(2.0), 1 << 30).unwrap();
            assert_eq!(res.sigma2_squared, Some(n as i64 - 1));
        }
    }

    #[test]
    fn min_p_sum_prop9() {
        let g = prop9_graph();
        let res = min_p_sum(&g, PNorm::Finite(2.0), 1 << 30).unwrap();
        assert_eq!(res.sigma2_squared, Some(8));
    }

    #[test]
    fn min_p_sum_cycle_bandwidth() {
        for n in 4..=9 {
            let g = cycle(n).unwrap();
            let res = min_p_sum(&g, PNorm::Infinity, 1 << 30).unwrap();
            assert_eq!(res.value, 2.0, "bandwidth of C_{n}");
        }
    }

    #[test]
    fn odd_n_sigma2_equals_lambda_energy() {
        for g in [path(5).unwrap(), cycle(5).unwrap(), prop9_graph(), cycle(7).unwrap()] {
            let n = g.vertex_count();
            assert!(n % 2 == 1);
            let (lambda, _) = lambda2_int(&g, DEFAULT_BIJECTION_LIMIT).unwrap();
            let sigma = min_p_sum(&g, PNorm::Finite(2.0), 1 << 30).unwrap();
            let s = symmetric_line_second_moment((n / 2) as i64);
            assert_eq!(lambda, Ratio::new(sigma.sigma2_squared.unwrap(), s));
        }
    }

    #[test]
    fn superadditivity_hand_cases() {
        // C4 split into two perfect matchings
        let m1 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let m2 = Graph::new(4, &[(1, 2), (3, 0)]).unwrap();
        assert!(edge_disjoint_superadditivity_check(&m1, &m2, 1 << 30).unwrap());
        // P5 split into odd/even edges
        let odd = Graph::new(5, &[(0, 1), (2, 3)]).unwrap();
        let even = Graph::new(5, &[(1, 2), (3, 4)]).unwrap();
        assert!(edge_disjoint_superadditivity_check(&odd, &even, 1 << 30).unwrap());
        // empty H: trivially true
        let empty = Graph::new(4, &[]).unwrap();
        assert!(edge_disjoint_superadditivity_check(&m1, &empty, 1 << 30).unwrap());
    }

    #[test]
    fn superadditivity_rejects_overlap() {
        let a = Graph::new(3, &[(0, 1)]).unwrap();
        let b = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            edge_disjoint_superadditivity_check(&a, &b, 1 << 30),
            Err(IntError::EdgesOverlap(0, 1))
        ));
    }

    #[test]
    fn edge_addition_hand_cases() {
        let p4 = path(4).unwrap();
        assert!(edge_addition_bounds_check(&p4, 0, 2, 1 << 30).unwrap());
        let c5 = cycle(5).unwrap();
        assert!(edge_addition_bounds_check(&c5, 0, 2, 1 << 30).unwrap());
        // empty graph on 3 vertices + one edge: 0 -> 1/2, D = 4
        let empty = Graph::new(3, &[]).unwrap();
        let (zero, _) = lambda2_int(&empty, 1 << 30).unwrap();
        assert_eq!(zero, Ratio::from_integer(0));
        let one_edge = empty.plus_edge(0, 1).unwrap();
        let (l, _) = lambda2_int(&one_edge, 1 << 30).unwrap();
        assert_eq!(l, Ratio::new(1, 2));
        assert!(edge_addition_bounds_check(&empty, 0, 1, 1 << 30).unwrap());
    }

    #[test]
    fn cartesian_drawing_c3_p3() {
        let c3 = cycle(3).unwrap();
        let p3 = path(3).unwrap();
        let (lg, g_opt) = lambda2_int(&c3, 1 << 30).unwrap();
        let (lh, h_opt) = lambda2_int(&p3, 1 << 30).unwrap();
        assert_eq!(lg, Ratio::from_integer(3));
        assert_eq!(lh, Ratio::from_integer(1));
        let bound = prop7_bound(lg, lh, 3, 3);
        assert_eq!(bound, Ratio::new(6, 5));
        let drawing = cartesian_drawing(&g_opt, &h_opt).unwrap();
        assert!(drawing.lambda() <= bound);
        // equality by construction from optimal factors
        assert_eq!(drawing.lambda(), bound);
    }

    #[test]
    fn cartesian_drawing_requires_odd() {
        let c3 = cycle(3).unwrap();
        let p2 = path(2).unwrap();
        let (_, a) = lambda2_int(&c3, 1 << 30).unwrap();
        let (_, b) = lambda2_int(&p2, 1 << 30).unwrap();
        assert!(matches!(
            cartesian_drawing(&a, &b),
            Err(IntError::NotOdd(3, 2))
        ));
    }

    #[test]
    fn product_can_beat_factor_minimum() {
        // lambda_2^I(C3 x P2) > min(lambda_2^I(C3), lambda_2^I(P2)) = 2
        let c3 = cycle(3).unwrap();
        let p2 = path(2).unwrap();
        let (lc3, _) = lambda2_int(&c3, 1 << 30).unwrap();
        let (lp2, _) = lambda2_int(&p2, 1 << 30).unwrap();
        let prism = cartesian_product(&c3, &p2);
        let (lp, _) = lambda2_int(&prism, 1 << 30).unwrap();
        assert!(lp > lc3.min(lp2));
    }

    #[test]
    fn hypercube_drawing_lambda_two() {
        for k in 1..=4 {
            let d = hypercube_drawing(k).unwrap();
            assert_eq!(d.lambda(), Ratio::from_integer(2), "k = {k}");
        }
        assert!(hypercube_drawing(0).is_err());
        assert!(hypercube_drawing(5).is_err());
    }

    #[test]
    fn hypercube_q4_drawing_optimal() {
        let d = hypercube_drawing(2).unwrap();
        let (opt, _) = lambda2_int(d.graph(), 1 << 30).unwrap();
        assert_eq!(opt, d.lambda());
    }

    #[test]
    fn prop9_product_drawing_value() {
        let d = prop9_product_drawing();
        assert_eq!(d.second_moment(), 1300);
        assert_eq!(d.lambda(), Ratio::new(775, 1300));
        // divergence from the factor
        let g = prop9_graph();
        let (lg, _) = lambda2_int(&g, 1 << 30).unwrap();
        assert!(d.lambda() < lg);
        assert_eq!(lg, Ratio::new(8, 10));
    }

    #[test]
    fn prop10_divergence_property() {
        // on the candidate reconstruction, no minimum-2-sum ordering is
        // optimal for the gapped integer drawing
        let g = prop10_candidate_graph();
        let n = g.vertex_count();
        assert_eq!(n % 2, 0);

        // all sigma_2^2-optimal orderings over {1..N}
        let order_points: Vec<i64> = (1..=n as i64).collect();
        let sigma_stats = enumerate_bijections(n, &order_points, false, 1 << 30, |pos| {
            g.edges()
                .iter()
                .map(|&(u, v)| {
                    let d = pos[u] - pos[v];
                    d * d
                })
                .sum::<i64>()
        })
        .unwrap();
        let sigma_min = sigma_stats.min.unwrap();
        // the two orderings named for this graph attain the optimum:
        // 1 2 3 4 5 6 7 8 and 1 2 3 5 4 6 7 8 (positions per vertex)
        let identity: Vec<i64> = (1..=8).collect();
        let swapped: Vec<i64> = vec![1, 2, 3, 5, 4, 6, 7, 8];
        let energy = |pos: &[i64]| -> i64 {
            g.edges()
                .iter()
                .map(|&(u, v)| {
                    let d = pos[u] - pos[v];
                    d * d
                })
                .sum()
        };
        assert_eq!(energy(&identity), sigma_min);
        assert_eq!(energy(&swapped), sigma_min);

        // exact integer-grid optimum
        let (best, _) = lambda2_int(&g, 1 << 30).unwrap();
        let s = symmetric_line_second_moment((n / 2) as i64);

        // map each sigma-optimal ordering onto the gapped grid by rank
        let gapped = line_grid_points(n);
        let mut all_worse = true;
        for witness in &sigma_stats.min_witnesses {
            let pos: Vec<i64> = witness.iter().map(|&p| gapped[(p - 1) as usize]).collect();
            let lam = Ratio::new(energy(&pos), s);
            if lam == best {
                all_worse = false;
            }
        }
        assert!(
            all_worse,
            "candidate graph must separate the two optimal orderings"
        );
        assert_eq!(sigma_stats.min_count as usize, sigma_stats.min_witnesses.len());
    }

    #[test]
    fn canonicalize_prefers_positive_lead() {
        let p3 = path(3).unwrap();
        let mut d = LineDrawing::new(p3, vec![-1, 0, 1]).unwrap();
        d.canonicalize();
        assert_eq!(d.positions(), &[1, 0, -1]);
    }

    #[test]
    fn odd_n_argmin_sets_coincide() {
        use std::collections::BTreeSet;
        // for odd N the centered grid is a translate of {1..N}, so the
        // lambda-optimal drawings and the sigma_2-optimal orderings must be
        // the same bijections up to negation/reversal
        let corpus: Vec<Graph> = vec![
            path(3).unwrap(),
            cycle(3).unwrap(),
            path(5).unwrap(),
            cycle(5).unwrap(),
            prop9_graph(),
            path(7).unwrap(),
            cycle(7).unwrap(),
            Graph::new(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)])
                .unwrap()
                .with_label("K_{1,6}"),
        ];
        for g in corpus {
            let n = g.vertex_count();
            assert_eq!(n % 2, 1);
            let energy = |pos: &[i64]| -> i64 {
                g.edges()
                    .iter()
                    .map(|&(u, v)| {
                        let d = pos[u] - pos[v];
                        d * d
                    })
                    .sum()
            };
            let canonical = |pos: &[i64]| -> Vec<i64> {
                match pos.iter().find(|&&p| p != 0) {
                    Some(&p) if p < 0 => pos.iter().map(|&q| -q).collect(),
                    _ => pos.to_vec(),
                }
            };
            let centered = line_grid_points(n);
            let lam = enumerate_bijections(n, &centered, true, 1 << 30, energy).unwrap();
            assert_eq!(lam.min_count as usize, lam.min_witnesses.len());
            let lam_set: BTreeSet<Vec<i64>> = lam
                .min_witnesses
                .iter()
                .map(|w| canonical(w))
                .collect();

            let order_points: Vec<i64> = (1..=n as i64).collect();
            let shift = (n as i64 + 1) / 2;
            let sigma = enumerate_bijections(n, &order_points, false, 1 << 30, energy).unwrap();
            assert_eq!(sigma.min_count as usize, sigma.min_witnesses.len());
            let sigma_set: BTreeSet<Vec<i64>> = sigma
                .min_witnesses
                .iter()
                .map(|w| {
                    let translated: Vec<i64> = w.iter().map(|&p| p - shift).collect();
                    canonical(&translated)
                })
                .collect();
            assert_eq!(lam_set, sigma_set, "{:?}", g.label());
        }
    }

    #[test]
    fn even_n_corpus_scan_reports_divergence() {
        use std::collections::BTreeSet;
        // report (without asserting) which even-order graphs separate the
        // lambda optimum from the minimum-2-sum orderings; the candidate
        // reconstruction must be among them
        let corpus: Vec<Graph> = vec![
            path(4).unwrap(),
            cycle(4).unwrap(),
            path(6).unwrap(),
            cycle(6).unwrap(),
            hypercube(8).unwrap(),
            prop10_candidate_graph(),
        ];
        let mut diverging: BTreeSet<String> = BTreeSet::new();
        for g in corpus {
            let n = g.vertex_count();
            let energy = |pos: &[i64]| -> i64 {
                g.edges()
                    .iter()
                    .map(|&(u, v)| {
                        let d = pos[u] - pos[v];
                        d * d
                    })
                    .sum()
            };
            let order_points: Vec<i64> = (1..=n as i64).collect();
            let sigma = enumerate_bijections(n, &order_points, false, 1 << 30, energy).unwrap();
            let gapped = line_grid_points(n);
            let (best, _) = lambda2_int(&g, 1 << 30).unwrap();
            let s = symmetric_line_second_moment((n / 2) as i64);
            let some_sigma_argmin_is_optimal = sigma.min_witnesses.iter().any(|w| {
                let pos: Vec<i64> = w.iter().map(|&p| gapped[(p - 1) as usize]).collect();
                Ratio::new(energy(&pos), s) == best
            });
            let label = g.label().unwrap_or("graph").to_string();
            if !some_sigma_argmin_is_optimal {
                println!("{label}: sigma_2 orderings are NOT lambda_2^I optimal");
                diverging.insert(label);
            } else {
                println!("{label}: orderings coincide");
            }
        }
        assert!(diverging.contains("two-sum-divergence candidate (reconstruction, unverified)"));
    }

    #[test]
    fn line_drawing_json_roundtrip() {
        let d = prop9_product_drawing();
        let json = serde_json::to_string(&d).unwrap();
        let back: LineDrawing = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.lambda(), Ratio::new(775, 1300));
        // corrupted positions are rejected on deserialize
        let bad = json.replace("-12", "-13");
        assert!(serde_json::from_str::<LineDrawing>(&bad).is_err());
    }
}
