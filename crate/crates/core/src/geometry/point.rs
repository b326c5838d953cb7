use core::fmt;
use core::ops::{Add, Sub};

use super::Rat;

/// Point or vector in the rational plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: Rat::int(x), y: Rat::int(y) }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Rat) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    pub fn cross(&self, other: &Point) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_squared(&self) -> Rat {
        self.dot(self)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Rat::new(1, 2);
        Point { x: (&self.x + &other.x) * &half, y: (&self.y + &other.y) * &half }
    }
}

/// Twice the signed area of `pqr`; positive for counter-clockwise order.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Rat {
    (q - p).cross(&(r - p))
}

pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    orient(p, q, r).is_zero()
}

/// Unsigned area of triangle `pqr` by the shoelace formula.
pub fn triangle_area(p: &Point, q: &Point, r: &Point) -> Rat {
    let twice = &p.x * (&q.y - &r.y) + &q.x * (&r.y - &p.y) + &r.x * (&p.y - &q.y);
    twice.abs() * Rat::new(1, 2)
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        &self + &rhs
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        &self - &rhs
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
