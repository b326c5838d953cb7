//! Convex quadrilateral `ABCD` whose diagonals `AC` and `BD` cross at an
//! interior point `O`.

use super::point::collinear;
use super::{GeometryError, Point, Rat};

/// Position of `O` along both diagonals: `O = A + alpha·(C − A)` and
/// `O = B + beta·(D − B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatioReport {
    pub alpha: Rat,
    pub beta: Rat,
    /// `AO/OC`, present when it equals `BO/OD`.
    pub lambda: Option<Rat>,
}

impl RatioReport {
    fn new(alpha: Rat, beta: Rat) -> Self {
        let lambda = (alpha == beta).then(|| segment_ratio(&alpha));
        RatioReport { alpha, beta, lambda }
    }

    /// `AO/OC`.
    pub fn ao_oc(&self) -> Rat {
        segment_ratio(&self.alpha)
    }

    /// `BO/OD`.
    pub fn bo_od(&self) -> Rat {
        segment_ratio(&self.beta)
    }
}

// t/(1 − t), for 0 < t < 1
fn segment_ratio(t: &Rat) -> Rat {
    t / (Rat::one() - t)
}

/// Parameters `(alpha, beta)` where lines `AC` and `BD` meet, or `None` when
/// they are parallel.
pub fn line_parameters(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<(Rat, Rat)> {
    let ac = c - a;
    let bd = d - b;
    let ab = b - a;
    let den = ac.cross(&bd);
    if den.is_zero() {
        return None;
    }
    Some((ab.cross(&bd) / &den, ab.cross(&ac) / den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupIIConfig {
    a: Point,
    b: Point,
    c: Point,
    d: Point,
}

impl GroupIIConfig {
    pub fn new(a: Point, b: Point, c: Point, d: Point) -> Result<Self, GeometryError> {
        let three_collinear = collinear(&a, &b, &c)
            || collinear(&a, &b, &d)
            || collinear(&a, &c, &d)
            || collinear(&b, &c, &d);
        if three_collinear {
            return Err(GeometryError::ThreeCollinear);
        }
        let unit = |t: &Rat| t.is_positive() && (Rat::one() - t).is_positive();
        match line_parameters(&a, &b, &c, &d) {
            Some((alpha, beta)) if unit(&alpha) && unit(&beta) => {}
            _ => return Err(GeometryError::DiagonalsDoNotCross),
        }
        Ok(GroupIIConfig { a, b, c, d })
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

    pub fn d(&self) -> &Point {
        &self.d
    }

    pub fn vertices(&self) -> [&Point; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// The diagonal crossing `O` with its ratio report.
    pub fn diagonal_intersection(&self) -> (Point, RatioReport) {
        let (alpha, beta) = line_parameters(&self.a, &self.b, &self.c, &self.d)
            .expect("diagonals cross in a valid configuration");
        let o = &self.a + &(&self.c - &self.a).scale(&alpha);
        (o, RatioReport::new(alpha, beta))
    }

    /// `AB ∥ CD`.
    pub fn has_parallel_sides(&self) -> bool {
        (&self.b - &self.a).cross(&(&self.d - &self.c)).is_zero()
    }

    /// `|AB| = |CD|`, compared as squared lengths.
    pub fn has_equal_sides(&self) -> bool {
        self.ab_squared() == self.cd_squared()
    }

    /// Ratio report when `AO/OC = BO/OD`.
    pub fn equal_ratios(&self) -> Option<RatioReport> {
        let (_, report) = self.diagonal_intersection();
        report.lambda.is_some().then_some(report)
    }

    pub fn ab_squared(&self) -> Rat {
        (&self.b - &self.a).norm_squared()
    }

    pub fn cd_squared(&self) -> Rat {
        (&self.d - &self.c).norm_squared()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(pts: [(i64, i64); 4]) -> Result<GroupIIConfig, GeometryError> {
        let [a, b, c, d] = pts.map(|(x, y)| Point::int(x, y));
        GroupIIConfig::new(a, b, c, d)
    }

    const TRAPEZIUM: [(i64, i64); 4] = [(0, 0), (4, 0), (3, 2), (1, 2)];
    const PARALLELOGRAM: [(i64, i64); 4] = [(0, 0), (2, 0), (3, 1), (1, 1)];
    const SKEW: [(i64, i64); 4] = [(0, 0), (4, 0), (3, 2), (1, 3)];

    #[test]
    fn trapezium_intersection() {
        let q = quad(TRAPEZIUM).unwrap();
        let (o, rr) = q.diagonal_intersection();
        assert_eq!(o, Point::new(Rat::int(2), Rat::new(4, 3)));
        assert_eq!(rr.alpha, Rat::new(2, 3));
        assert_eq!(rr.beta, Rat::new(2, 3));
        assert_eq!(rr.ao_oc(), Rat::int(2));
        assert_eq!(rr.bo_od(), Rat::int(2));
        assert!(q.has_parallel_sides());
        assert!(!q.has_equal_sides());
        assert_eq!((q.ab_squared(), q.cd_squared()), (Rat::int(16), Rat::int(4)));
        let lambda = q.equal_ratios().unwrap().lambda.unwrap();
        assert_eq!(lambda, Rat::int(2));
        assert_eq!(lambda.square() * q.cd_squared(), q.ab_squared());
    }

    #[test]
    fn parallelogram_intersection() {
        let q = quad(PARALLELOGRAM).unwrap();
        let (o, rr) = q.diagonal_intersection();
        assert_eq!(o, Point::new(Rat::new(3, 2), Rat::new(1, 2)));
        assert_eq!(rr.alpha, Rat::new(1, 2));
        assert_eq!(rr.beta, Rat::new(1, 2));
        assert!(q.has_parallel_sides());
        assert!(q.has_equal_sides());
        assert_eq!(q.ab_squared(), Rat::int(4));
        assert_eq!(q.equal_ratios().unwrap().lambda, Some(Rat::one()));
    }

    #[test]
    fn skew_quadrilateral() {
        let q = quad(SKEW).unwrap();
        assert!(!q.has_parallel_sides());
        assert_eq!(q.equal_ratios(), None);
        let (_, rr) = q.diagonal_intersection();
        assert_ne!(rr.alpha, rr.beta);
        assert_eq!(rr.lambda, None);
    }

    #[test]
    fn rejected_configurations() {
        assert_eq!(quad([(0, 0), (1, 0), (2, 0), (5, 7)]), Err(GeometryError::ThreeCollinear));
        // vertices out of order: diagonals AC, BD do not cross
        assert_eq!(quad([(0, 0), (3, 2), (4, 0), (1, 2)]), Err(GeometryError::DiagonalsDoNotCross));
        // non-convex (D inside triangle ABC)
        assert_eq!(quad([(0, 0), (4, 0), (0, 4), (1, 1)]), Err(GeometryError::DiagonalsDoNotCross));
    }
}
