//! Triangle `ABC`, a line `g` through `C` with direction `d`, and a point
//! `M = C + s·d` on `g` other than `C`.

use super::point::{collinear, triangle_area};
use super::{GeometryError, Point, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupIConfig {
    a: Point,
    b: Point,
    c: Point,
    d: Point,
    s: Rat,
}

impl GroupIConfig {
    pub fn new(a: Point, b: Point, c: Point, d: Point, s: Rat) -> Result<Self, GeometryError> {
        if collinear(&a, &b, &c) {
            return Err(GeometryError::DegenerateTriangle);
        }
        if d.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        if s.is_zero() {
            return Err(GeometryError::PointAtVertex);
        }
        Ok(GroupIConfig { a, b, c, d, s })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn c(&self) -> &Point {
        &self.c
    }

    /// Direction of the line `g`.
    pub fn d(&self) -> &Point {
        &self.d
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn m(&self) -> Point {
        &self.c + &self.d.scale(&self.s)
    }

    pub fn area_amc(&self) -> Rat {
        triangle_area(&self.a, &self.m(), &self.c)
    }

    pub fn area_bmc(&self) -> Rat {
        triangle_area(&self.b, &self.m(), &self.c)
    }

    /// `g` passes through the midpoint of `AB`.
    pub fn is_median(&self) -> bool {
        self.d.cross(&(&self.a.midpoint(&self.b) - &self.c)).is_zero()
    }

    /// `g ∥ AB`.
    pub fn is_parallel(&self) -> bool {
        self.d.cross(&(&self.b - &self.a)).is_zero()
    }

    /// `AMC` and `BMC` are proper triangles of equal area.
    pub fn has_equal_areas(&self) -> bool {
        let (amc, bmc) = (self.area_amc(), self.area_bmc());
        !amc.is_zero() && amc == bmc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: (i64, i64), s: Rat) -> GroupIConfig {
        GroupIConfig::new(Point::int(0, 0), Point::int(2, 0), Point::int(0, 2), Point::int(d.0, d.1), s)
            .unwrap()
    }

    #[test]
    fn median_examples() {
        assert!(cfg((1, -2), Rat::one()).is_median());
        assert!(!cfg((1, 0), Rat::one()).is_median());
        assert_eq!(
            GroupIConfig::new(Point::int(0, 0), Point::int(2, 0), Point::int(0, 2), Point::int(0, 0), Rat::one()),
            Err(GeometryError::ZeroDirection)
        );
    }

    #[test]
    fn parallel_examples() {
        assert!(cfg((1, 0), Rat::one()).is_parallel());
        assert!(!cfg((1, -2), Rat::one()).is_parallel());
        assert!(cfg((3, 0), Rat::one()).is_parallel());
    }

    #[test]
    fn equal_area_examples() {
        let median = cfg((1, -2), Rat::new(1, 2));
        assert_eq!(median.m(), Point::new(Rat::new(1, 2), Rat::one()));
        assert_eq!(median.area_amc(), Rat::new(1, 2));
        assert_eq!(median.area_bmc(), Rat::new(1, 2));
        assert!(median.has_equal_areas());

        let parallel = cfg((1, 0), Rat::int(3));
        assert_eq!(parallel.m(), Point::int(3, 2));
        assert_eq!(parallel.area_amc(), Rat::int(3));
        assert_eq!(parallel.area_bmc(), Rat::int(3));
        assert!(parallel.has_equal_areas());

        let neither = cfg((2, -1), Rat::one());
        assert_eq!(neither.m(), Point::int(2, 1));
        assert_eq!(neither.area_amc(), Rat::int(2));
        assert_eq!(neither.area_bmc(), Rat::int(1));
        assert!(!neither.has_equal_areas());
    }

    #[test]
    fn degenerate_inputs() {
        let collinear = GroupIConfig::new(
            Point::int(0, 0),
            Point::int(1, 1),
            Point::int(2, 2),
            Point::int(1, 0),
            Rat::one(),
        );
        assert_eq!(collinear, Err(GeometryError::DegenerateTriangle));
        let at_c = GroupIConfig::new(
            Point::int(0, 0),
            Point::int(2, 0),
            Point::int(0, 2),
            Point::int(1, 0),
            Rat::zero(),
        );
        assert_eq!(at_c, Err(GeometryError::PointAtVertex));
    }

    #[test]
    fn line_through_a_degenerates_amc() {
        let c = cfg((0, -1), Rat::one());
        assert_eq!(c.area_amc(), Rat::zero());
        assert!(!c.has_equal_areas());
    }
}
