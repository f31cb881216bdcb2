//! Integer grid geometry: points, rectilinear distance, Hanan grid.

use thiserror::Error;

/// A point on the integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Rectilinear (L1) distance.
    pub fn l1(&self, other: &Point) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    /// L1 norm, i.e. distance to the origin.
    pub fn norm(&self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    /// True if `self` is weakly below-left of `other` in both coordinates.
    pub fn dominates_below(&self, other: &Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn in_first_quadrant(&self) -> bool {
        self.x >= 0 && self.y >= 0
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
}

/// Vertices of the Hanan grid on `points`: the Cartesian product of all
/// distinct x-coordinates with all distinct y-coordinates, sorted
/// lexicographically.
pub fn hanan_grid(points: &[Point]) -> Result<Vec<Point>, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    let mut xs: Vec<i64> = points.iter().map(|p| p.x).collect();
    let mut ys: Vec<i64> = points.iter().map(|p| p.y).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let mut grid = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            grid.push(Point::new(x, y));
        }
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hanan_of_two_points_is_2x2() {
        let g = hanan_grid(&[Point::new(1, 3), Point::new(4, 1)]).unwrap();
        assert_eq!(
            g,
            vec![
                Point::new(1, 1),
                Point::new(1, 3),
                Point::new(4, 1),
                Point::new(4, 3)
            ]
        );
    }

    #[test]
    fn hanan_singleton() {
        let g = hanan_grid(&[Point::new(2, 2)]).unwrap();
        assert_eq!(g, vec![Point::new(2, 2)]);
    }

    #[test]
    fn hanan_three_points_product() {
        // 3 distinct x values, 2 distinct y values.
        let g = hanan_grid(&[Point::ORIGIN, Point::new(1, 2), Point::new(3, 2)]).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.contains(&Point::new(1, 0)));
        assert!(g.contains(&Point::new(3, 0)));
    }

    #[test]
    fn hanan_empty_errors() {
        assert_eq!(hanan_grid(&[]), Err(GeomError::EmptyPointSet));
    }

    #[test]
    fn hanan_size_is_product_of_distinct_coords() {
        let pts = vec![
            Point::new(0, 0),
            Point::new(2, 5),
            Point::new(2, 1),
            Point::new(7, 5),
        ];
        let g = hanan_grid(&pts).unwrap();
        assert_eq!(g.len(), 3 * 3);
    }
}
