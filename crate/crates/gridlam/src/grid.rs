//! Geometry of the bounded integer grid `P = {-M,...,M}^d`.
//!
//! Points are enumerated in lexicographic order, which is the canonical order
//! for tie-breaking everywhere else in the crate. All arithmetic is exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimension must be at least 1")]
    ZeroDimension,
    #[error("point {0:?} does not lie on the grid")]
    PointOffGrid(Vec<i64>),
}

/// A bounded d-dimensional integer grid with half-width `M`.
///
/// `exclude_origin` removes the single point `0` from enumeration; it is used
/// only for 1-D drawings of graphs with an even number of vertices, where no
/// vertex may sit at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: u32,
    pub half_width: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub exclude_origin: bool,
}

fn is_false(b: &bool) -> bool {
    !b
}

/// A point of the grid. Coordinates are plain integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub coords: Vec<i64>,
}

impl GridPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        GridPoint { coords }
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> i64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn negated(&self) -> GridPoint {
        GridPoint::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Squared Euclidean distance to another point of the same dimension.
    pub fn dist2(&self, other: &GridPoint) -> i64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

impl GridSpec {
    pub fn new(dim: u32, half_width: u32) -> Result<Self, GridError> {
        if dim == 0 {
            return Err(GridError::ZeroDimension);
        }
        Ok(GridSpec {
            dim,
            half_width,
            exclude_origin: false,
        })
    }

    pub fn without_origin(dim: u32, half_width: u32) -> Result<Self, GridError> {
        let mut spec = Self::new(dim, half_width)?;
        spec.exclude_origin = true;
        Ok(spec)
    }

    /// Number of grid points: `(2M+1)^d`, minus one if the origin is excluded.
    pub fn point_count(&self) -> usize {
        let side = (2 * self.half_width + 1) as usize;
        let full = side.pow(self.dim);
        if self.exclude_origin {
            full - 1
        } else {
            full
        }
    }

    /// All grid points in lexicographic order of their coordinate vectors.
    pub fn enumerate_points(&self) -> Vec<GridPoint> {
        let m = self.half_width as i64;
        let d = self.dim as usize;
        let mut points = Vec::with_capacity(self.point_count());
        let mut current = vec![-m; d];
        loop {
            let p = GridPoint::new(current.clone());
            if !(self.exclude_origin && p.is_origin()) {
                points.push(p);
            }
            // lexicographic increment, last coordinate fastest
            let mut k = d;
            loop {
                if k == 0 {
                    return points;
                }
                k -= 1;
                if current[k] < m {
                    current[k] += 1;
                    for c in current.iter_mut().skip(k + 1) {
                        *c = -m;
                    }
                    break;
                }
            }
        }
    }

    /// Index of `p` in the enumeration order, if it lies on the grid.
    pub fn point_index(&self, p: &GridPoint) -> Result<usize, GridError> {
        let m = self.half_width as i64;
        if p.coords.len() != self.dim as usize
            || p.coords.iter().any(|&c| c < -m || c > m)
            || (self.exclude_origin && p.is_origin())
        {
            return Err(GridError::PointOffGrid(p.coords.clone()));
        }
        let side = 2 * m + 1;
        let mut idx: usize = 0;
        for &c in &p.coords {
            idx = idx * side as usize + (c + m) as usize;
        }
        if self.exclude_origin {
            // the origin occupies the middle slot of the full enumeration
            let origin_idx = (side.pow(self.dim) as usize - 1) / 2;
            if idx > origin_idx {
                idx -= 1;
            }
        }
        Ok(idx)
    }

    /// Sum of squared norms over all grid points,
    /// `S = 2d (2M+1)^(d-1) M(M+1)(2M+1)/6`, evaluated in exact integers.
    ///
    /// Removing the origin does not change the value, so the closed form is
    /// used regardless of `exclude_origin`.
    pub fn second_moment(&self) -> i64 {
        let d = self.dim as i64;
        let m = self.half_width as i64;
        let side = 2 * m + 1;
        // M(M+1)(2M+1) is divisible by 6 for every M
        2 * d * side.pow(self.dim - 1) * (m * (m + 1) * side / 6)
    }
}

/// Sum of squared norms of an arbitrary symmetric 1-D point set
/// `{-k,...,k}` or `{-k,...,k} \ {0}`: `2 * sum_{i=1}^{k} i^2`.
pub fn symmetric_line_second_moment(k: i64) -> i64 {
    k * (k + 1) * (2 * k + 1) / 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_1d() {
        let g = GridSpec::new(1, 1).unwrap();
        let pts: Vec<Vec<i64>> = g.enumerate_points().into_iter().map(|p| p.coords).collect();
        assert_eq!(pts, vec![vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn enumerate_1d_without_origin() {
        let g = GridSpec::without_origin(1, 1).unwrap();
        let pts: Vec<Vec<i64>> = g.enumerate_points().into_iter().map(|p| p.coords).collect();
        assert_eq!(pts, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn enumerate_2d_corners_first() {
        let g = GridSpec::new(2, 1).unwrap();
        let pts = g.enumerate_points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0].coords, vec![-1, -1]);
        assert_eq!(pts[8].coords, vec![1, 1]);
    }

    #[test]
    fn rejects_dimension_zero() {
        assert_eq!(GridSpec::new(0, 3), Err(GridError::ZeroDimension));
    }

    #[test]
    fn second_moment_examples() {
        assert_eq!(GridSpec::new(1, 2).unwrap().second_moment(), 10);
        assert_eq!(GridSpec::new(2, 1).unwrap().second_moment(), 12);
        assert_eq!(GridSpec::new(1, 0).unwrap().second_moment(), 0);
    }

    #[test]
    fn second_moment_matches_brute_force() {
        for d in 1..=3 {
            for m in 0..=6 {
                let g = GridSpec::new(d, m).unwrap();
                let direct: i64 = g.enumerate_points().iter().map(|p| p.norm2()).sum();
                assert_eq!(g.second_moment(), direct, "d={d} m={m}");
                let g = GridSpec {
                    exclude_origin: true,
                    ..g
                };
                let direct: i64 = g.enumerate_points().iter().map(|p| p.norm2()).sum();
                assert_eq!(g.second_moment(), direct, "d={d} m={m} no origin");
            }
        }
    }

    #[test]
    fn points_sum_to_zero() {
        for d in 1..=3 {
            for m in 0..=4 {
                for excl in [false, true] {
                    let g = GridSpec {
                        dim: d,
                        half_width: m,
                        exclude_origin: excl,
                    };
                    let mut sum = vec![0i64; d as usize];
                    for p in g.enumerate_points() {
                        for (s, c) in sum.iter_mut().zip(&p.coords) {
                            *s += c;
                        }
                    }
                    assert!(sum.iter().all(|&s| s == 0), "d={d} m={m} excl={excl}");
                }
            }
        }
    }

    #[test]
    fn point_count_invariant() {
        for d in 1..=3 {
            for m in 0..=4 {
                let g = GridSpec::new(d, m).unwrap();
                assert_eq!(g.enumerate_points().len(), g.point_count());
                let g = GridSpec {
                    exclude_origin: true,
                    ..g
                };
                assert_eq!(g.enumerate_points().len(), g.point_count());
            }
        }
    }

    #[test]
    fn point_index_roundtrip() {
        for excl in [false, true] {
            let g = GridSpec {
                dim: 2,
                half_width: 2,
                exclude_origin: excl,
            };
            for (i, p) in g.enumerate_points().iter().enumerate() {
                assert_eq!(g.point_index(p).unwrap(), i);
            }
        }
        let g = GridSpec::without_origin(1, 1).unwrap();
        assert!(g.point_index(&GridPoint::new(vec![0])).is_err());
        assert!(g.point_index(&GridPoint::new(vec![2])).is_err());
    }

    #[test]
    fn negation_stays_on_grid() {
        let g = GridSpec::new(2, 2).unwrap();
        for p in g.enumerate_points() {
            assert!(g.point_index(&p.negated()).is_ok());
            assert_eq!(p.negated().norm2(), p.norm2());
        }
    }
}
