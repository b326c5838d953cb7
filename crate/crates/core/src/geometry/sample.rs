//! Constructive samplers. Each one builds configurations that satisfy a
//! chosen hypothesis by construction, so the matching conclusion can be
//! checked rather than assumed.

use core::fmt;

use rand::Rng;

use super::point::collinear;
use super::{Configuration, GeometryError, Group, GroupIConfig, GroupIIConfig, Point, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group1Branch {
    Median,
    Parallel,
}

/// Where `B` lies relative to line `CM`, for the inverse sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group1Side {
    Opposite,
    Same,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group2Branch {
    Trapezium,
    Parallelogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerOptions {
    /// Base-point coordinates are integers in `[-coord_range, coord_range]`.
    pub coord_range: i64,
    /// Rational parameters have numerator and denominator in `[1, param_range]`.
    pub param_range: i64,
    pub retries: u32,
}

impl Default for SamplerOptions {
    fn default() -> Self {
        SamplerOptions { coord_range: 10, param_range: 20, retries: 100 }
    }
}

/// Rational similarity `P ↦ scale·R(θ)·P + shift`, with `cos θ` and `sin θ`
/// taken from the rational parametrization of the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Similarity {
    cos: Rat,
    sin: Rat,
    scale: Rat,
    shift: Point,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity { cos: Rat::one(), sin: Rat::zero(), scale: Rat::one(), shift: Point::default() }
    }

    /// `cos θ = (1 − m²)/(1 + m²)`, `sin θ = 2m/(1 + m²)`.
    pub fn new(m: &Rat, scale: Rat, shift: Point) -> Self {
        let m2 = m.square();
        let den = Rat::one() + &m2;
        Similarity {
            cos: (Rat::one() - &m2) / &den,
            sin: (Rat::int(2) * m) / den,
            scale,
            shift,
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let x = &self.cos * &p.x - &self.sin * &p.y;
        let y = &self.sin * &p.x + &self.cos * &p.y;
        Point::new(x * &self.scale + &self.shift.x, y * &self.scale + &self.shift.y)
    }
}

/// `A = (0,0)`, `B = (b,0)`, `D`, `C = D + mu·(B − A)`: a trapezium with
/// `AB ∥ DC` and `|DC| = mu·|AB|`, a parallelogram when `mu = 1`.
pub fn canonical_trapezoid(b: &Rat, d: &Point, mu: &Rat) -> [Point; 4] {
    let a = Point::default();
    let b = Point::new(b.clone(), Rat::zero());
    let c = d + &(&b - &a).scale(mu);
    [a, b, c, d.clone()]
}

/// Vertices `A = −λ_ac·c·u`, `C = c·u`, `B = −λ_bd·t·v`, `D = t·v` around
/// `O` at the origin, so that `AO/OC = λ_ac` and `BO/OD = λ_bd`.
pub fn ratio_construction(
    u: &Point,
    v: &Point,
    c: &Rat,
    t: &Rat,
    lambda_ac: &Rat,
    lambda_bd: &Rat,
) -> [Point; 4] {
    let a = u.scale(&-(lambda_ac * c));
    let cc = u.scale(c);
    let b = v.scale(&-(lambda_bd * t));
    let d = v.scale(t);
    [a, b, cc, d]
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sampler {
    pub options: SamplerOptions,
}

impl Sampler {
    pub fn new(options: SamplerOptions) -> Self {
        Sampler { options }
    }

    fn retry<T>(
        &self,
        sampler: &'static str,
        mut draw: impl FnMut() -> Option<T>,
    ) -> Result<T, GeometryError> {
        (0..self.options.retries.max(1))
            .find_map(|_| draw())
            .ok_or(GeometryError::RetriesExhausted { sampler, retries: self.options.retries })
    }

    fn coord<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let r = self.options.coord_range;
        rng.gen_range(-r..=r)
    }

    fn point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point::int(self.coord(rng), self.coord(rng))
    }

    fn nonzero_vector<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Point> {
        let p = self.point(rng);
        (!p.is_zero()).then_some(p)
    }

    fn positive_rat<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        let r = self.options.param_range.max(1);
        Rat::new(rng.gen_range(1..=r), rng.gen_range(1..=r))
    }

    fn nonzero_rat<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        let q = self.positive_rat(rng);
        if rng.gen_bool(0.5) {
            -q
        } else {
            q
        }
    }

    /// Rational in `[-param_range, param_range]`, zero included.
    fn any_rat<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        let r = self.options.param_range.max(1);
        Rat::new(rng.gen_range(-r..=r), rng.gen_range(1..=r))
    }

    fn triangle<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(Point, Point, Point)> {
        let (a, b, c) = (self.point(rng), self.point(rng), self.point(rng));
        (!collinear(&a, &b, &c)).then_some((a, b, c))
    }

    /// Group I configuration satisfying `p1` (median) or `p2` (parallel).
    pub fn group1_forward<R: Rng + ?Sized>(
        &self,
        branch: Group1Branch,
        rng: &mut R,
    ) -> Result<GroupIConfig, GeometryError> {
        self.retry("group1.forward", || {
            let (a, b, c) = self.triangle(rng)?;
            let direction = match branch {
                Group1Branch::Median => &a.midpoint(&b) - &c,
                Group1Branch::Parallel => &b - &a,
            };
            let d = direction.scale(&self.nonzero_rat(rng));
            let s = self.nonzero_rat(rng);
            GroupIConfig::new(a, b, c, d, s).ok()
        })
    }

    /// Group I configuration with `A` and `B` equidistant from line `CM`,
    /// on opposite sides or on the same side. Neither `p1` nor `p2` is used
    /// in the construction.
    pub fn group1_inverse<R: Rng + ?Sized>(
        &self,
        side: Group1Side,
        rng: &mut R,
    ) -> Result<GroupIConfig, GeometryError> {
        self.retry("group1.inverse", || {
            let c = self.point(rng);
            let d = self.nonzero_vector(rng)?;
            let a = self.point(rng);
            let from_c = &a - &c;
            if d.cross(&from_c).is_zero() {
                return None;
            }
            let b = match side {
                Group1Side::Same => &a + &d.scale(&self.nonzero_rat(rng)),
                Group1Side::Opposite => {
                    // mirror image of A in the line C + span(d)
                    let foot = &c + &d.scale(&(from_c.dot(&d) / d.norm_squared()));
                    let mirrored = &(&foot + &foot) - &a;
                    &mirrored + &d.scale(&self.any_rat(rng))
                }
            };
            let s = self.nonzero_rat(rng);
            GroupIConfig::new(a, b, c, d, s).ok()
        })
    }

    /// Convex trapezium (`AB ∥ CD`, `|AB| ≠ |CD|`) or parallelogram, moved
    /// by a random rational similarity.
    pub fn group2_forward<R: Rng + ?Sized>(
        &self,
        branch: Group2Branch,
        rng: &mut R,
    ) -> Result<GroupIIConfig, GeometryError> {
        let r = self.options.coord_range.max(1);
        self.retry("group2.forward", || {
            let b = Rat::int(rng.gen_range(1..=r));
            let d = Point::int(self.coord(rng), rng.gen_range(1..=r));
            let mu = match branch {
                Group2Branch::Parallelogram => Rat::one(),
                Group2Branch::Trapezium => {
                    let mu = self.positive_rat(rng);
                    if mu.is_one() {
                        return None;
                    }
                    mu
                }
            };
            let sim = Similarity::new(&self.any_rat(rng), self.positive_rat(rng), self.point(rng));
            let [a, b, c, d] = canonical_trapezoid(&b, &d, &mu).map(|p| sim.apply(&p));
            GroupIIConfig::new(a, b, c, d).ok()
        })
    }

    /// Convex quadrilateral with `AO/OC = BO/OD = λ`, built around `O`
    /// without reference to the sides. Half the draws use `λ = 1`.
    pub fn group2_inverse<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GroupIIConfig, GeometryError> {
        self.retry("group2.inverse", || {
            let lambda = if rng.gen_bool(0.5) { Rat::one() } else { self.positive_rat(rng) };
            self.ratio_quadrilateral(&lambda, &lambda, rng)
        })
    }

    /// Negative control: like [`Sampler::group2_inverse`] but with
    /// `BO/OD = λ + ε`, `ε ≠ 0`.
    pub fn group2_perturbed<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GroupIIConfig, GeometryError> {
        self.retry("group2.control.perturbed", || {
            let lambda = self.positive_rat(rng);
            let perturbed = self.positive_rat(rng);
            if perturbed == lambda {
                return None;
            }
            self.ratio_quadrilateral(&lambda, &perturbed, rng)
        })
    }

    fn ratio_quadrilateral<R: Rng + ?Sized>(
        &self,
        lambda_ac: &Rat,
        lambda_bd: &Rat,
        rng: &mut R,
    ) -> Option<GroupIIConfig> {
        let u = self.nonzero_vector(rng)?;
        let v = self.nonzero_vector(rng)?;
        if u.cross(&v).is_zero() {
            return None;
        }
        let (c, t) = (self.positive_rat(rng), self.positive_rat(rng));
        let [a, b, c, d] = ratio_construction(&u, &v, &c, &t, lambda_ac, lambda_bd);
        GroupIIConfig::new(a, b, c, d).ok()
    }

    /// Group I configuration with no hypothesis imposed.
    pub fn group1_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GroupIConfig, GeometryError> {
        self.retry("group1.uniform", || {
            let (a, b, c) = self.triangle(rng)?;
            let d = self.nonzero_vector(rng)?;
            GroupIConfig::new(a, b, c, d, self.nonzero_rat(rng)).ok()
        })
    }

    /// Integer quadrilateral, kept when its diagonals cross.
    pub fn group2_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GroupIIConfig, GeometryError> {
        self.retry("group2.uniform", || {
            let [a, b, c, d] = [(); 4].map(|_| self.point(rng));
            GroupIIConfig::new(a, b, c, d).ok()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SamplerId {
    Group1ForwardMedian,
    Group1ForwardParallel,
    Group1Inverse,
    Group1Uniform,
    Group2ForwardTrapezium,
    Group2ForwardParallelogram,
    Group2Inverse,
    Group2Perturbed,
    Group2Uniform,
}

impl SamplerId {
    pub const ALL: [SamplerId; 9] = [
        SamplerId::Group1ForwardMedian,
        SamplerId::Group1ForwardParallel,
        SamplerId::Group1Inverse,
        SamplerId::Group1Uniform,
        SamplerId::Group2ForwardTrapezium,
        SamplerId::Group2ForwardParallelogram,
        SamplerId::Group2Inverse,
        SamplerId::Group2Perturbed,
        SamplerId::Group2Uniform,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SamplerId::Group1ForwardMedian => "group1.forward.median",
            SamplerId::Group1ForwardParallel => "group1.forward.parallel",
            SamplerId::Group1Inverse => "group1.inverse",
            SamplerId::Group1Uniform => "group1.uniform",
            SamplerId::Group2ForwardTrapezium => "group2.forward.trapezium",
            SamplerId::Group2ForwardParallelogram => "group2.forward.parallelogram",
            SamplerId::Group2Inverse => "group2.inverse",
            SamplerId::Group2Perturbed => "group2.control.perturbed",
            SamplerId::Group2Uniform => "group2.uniform",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.id() == id)
    }

    pub fn group(self) -> Group {
        match self {
            SamplerId::Group1ForwardMedian
            | SamplerId::Group1ForwardParallel
            | SamplerId::Group1Inverse
            | SamplerId::Group1Uniform => Group::I,
            _ => Group::II,
        }
    }

    pub fn sample<R: Rng + ?Sized>(
        self,
        sampler: &Sampler,
        rng: &mut R,
    ) -> Result<Configuration, GeometryError> {
        Ok(match self {
            SamplerId::Group1ForwardMedian => sampler.group1_forward(Group1Branch::Median, rng)?.into(),
            SamplerId::Group1ForwardParallel => {
                sampler.group1_forward(Group1Branch::Parallel, rng)?.into()
            }
            SamplerId::Group1Inverse => {
                let side = if rng.gen_bool(0.5) { Group1Side::Opposite } else { Group1Side::Same };
                sampler.group1_inverse(side, rng)?.into()
            }
            SamplerId::Group1Uniform => sampler.group1_uniform(rng)?.into(),
            SamplerId::Group2ForwardTrapezium => {
                sampler.group2_forward(Group2Branch::Trapezium, rng)?.into()
            }
            SamplerId::Group2ForwardParallelogram => {
                sampler.group2_forward(Group2Branch::Parallelogram, rng)?.into()
            }
            SamplerId::Group2Inverse => sampler.group2_inverse(rng)?.into(),
            SamplerId::Group2Perturbed => sampler.group2_perturbed(rng)?.into(),
            SamplerId::Group2Uniform => sampler.group2_uniform(rng)?.into(),
        })
    }
}

impl fmt::Display for SamplerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}
