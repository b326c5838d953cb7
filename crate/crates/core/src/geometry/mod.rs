//! Exact-rational plane geometry for the two problem groups.
//!
//! Group I: triangle `ABC`, line `g` through `C`, point `M ≠ C` on `g`.
//! Atoms: `t` (the configuration exists), `p1` (`g` is the median from `C`),
//! `p2` (`g ∥ AB`), `r` (`S(AMC) = S(BMC)`, both nonzero).
//!
//! Group II: convex quadrilateral `ABCD` with diagonals meeting at `O`.
//! Atoms: `t`, `p1` (`AB ∥ CD`), `p2` (`|AB| = |CD|`), `r` (`AO/OC = BO/OD`).
//!
//! No floating point is used anywhere below this module.

mod group1;
mod group2;
mod point;
mod rat;
pub mod sample;

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

pub use group1::GroupIConfig;
pub use group2::{line_parameters, GroupIIConfig, RatioReport};
pub use point::{collinear, orient, triangle_area, Point};
pub use rat::{ParseRatError, Rat};
pub use sample::{Sampler, SamplerId, SamplerOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("A, B, C are collinear")]
    DegenerateTriangle,
    #[error("direction of g is the zero vector")]
    ZeroDirection,
    #[error("M coincides with C")]
    PointAtVertex,
    #[error("three vertices of the quadrilateral are collinear")]
    ThreeCollinear,
    #[error("diagonals AC and BD do not cross at an interior point")]
    DiagonalsDoNotCross,
    #[error("sampler {sampler} exhausted {retries} retries on degenerate draws")]
    RetriesExhausted { sampler: &'static str, retries: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    I,
    II,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::I => "group1",
            Group::II => "group2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    GroupI(GroupIConfig),
    GroupII(GroupIIConfig),
}

impl Configuration {
    pub fn group(&self) -> Group {
        match self {
            Configuration::GroupI(_) => Group::I,
            Configuration::GroupII(_) => Group::II,
        }
    }
}

impl From<GroupIConfig> for Configuration {
    fn from(c: GroupIConfig) -> Self {
        Configuration::GroupI(c)
    }
}

impl From<GroupIIConfig> for Configuration {
    fn from(c: GroupIIConfig) -> Self {
        Configuration::GroupII(c)
    }
}

/// Built-in geometric predicates that atoms can be bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredicateId {
    TriangleLinePoint,
    Median,
    Parallel,
    EqualAreas,
    QuadrilateralDiagonals,
    ParallelSides,
    EqualSides,
    EqualRatios,
}

impl PredicateId {
    pub const ALL: [PredicateId; 8] = [
        PredicateId::TriangleLinePoint,
        PredicateId::Median,
        PredicateId::Parallel,
        PredicateId::EqualAreas,
        PredicateId::QuadrilateralDiagonals,
        PredicateId::ParallelSides,
        PredicateId::EqualSides,
        PredicateId::EqualRatios,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PredicateId::TriangleLinePoint => "group1.triangle_line_point",
            PredicateId::Median => "group1.median",
            PredicateId::Parallel => "group1.parallel",
            PredicateId::EqualAreas => "group1.equal_areas",
            PredicateId::QuadrilateralDiagonals => "group2.quadrilateral_diagonals",
            PredicateId::ParallelSides => "group2.parallel_sides",
            PredicateId::EqualSides => "group2.equal_sides",
            PredicateId::EqualRatios => "group2.equal_ratios",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.id() == id)
    }

    pub fn group(self) -> Group {
        match self {
            PredicateId::TriangleLinePoint
            | PredicateId::Median
            | PredicateId::Parallel
            | PredicateId::EqualAreas => Group::I,
            _ => Group::II,
        }
    }

    /// `None` when the configuration belongs to the other group.
    pub fn evaluate(self, config: &Configuration) -> Option<bool> {
        Some(match (self, config) {
            // configurations are validated on construction
            (PredicateId::TriangleLinePoint, Configuration::GroupI(_)) => true,
            (PredicateId::Median, Configuration::GroupI(c)) => c.is_median(),
            (PredicateId::Parallel, Configuration::GroupI(c)) => c.is_parallel(),
            (PredicateId::EqualAreas, Configuration::GroupI(c)) => c.has_equal_areas(),
            (PredicateId::QuadrilateralDiagonals, Configuration::GroupII(_)) => true,
            (PredicateId::ParallelSides, Configuration::GroupII(c)) => c.has_parallel_sides(),
            (PredicateId::EqualSides, Configuration::GroupII(c)) => c.has_equal_sides(),
            (PredicateId::EqualRatios, Configuration::GroupII(c)) => c.equal_ratios().is_some(),
            _ => return None,
        })
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Binding of atom names to built-in predicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation(BTreeMap<String, PredicateId>);

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, atom: impl Into<String>, predicate: PredicateId) -> Option<PredicateId> {
        self.0.insert(atom.into(), predicate)
    }

    pub fn get(&self, atom: &str) -> Option<PredicateId> {
        self.0.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, PredicateId)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Standard binding `t, p1, p2, r` for `group`.
    pub fn standard(group: Group) -> Self {
        let ids = match group {
            Group::I => [
                PredicateId::TriangleLinePoint,
                PredicateId::Median,
                PredicateId::Parallel,
                PredicateId::EqualAreas,
            ],
            Group::II => [
                PredicateId::QuadrilateralDiagonals,
                PredicateId::ParallelSides,
                PredicateId::EqualSides,
                PredicateId::EqualRatios,
            ],
        };
        ["t", "p1", "p2", "r"].into_iter().zip(ids).collect()
    }
}

impl<S: Into<String>> FromIterator<(S, PredicateId)> for Interpretation {
    fn from_iter<T: IntoIterator<Item = (S, PredicateId)>>(iter: T) -> Self {
        Interpretation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicate_ids_round_trip() {
        for p in PredicateId::ALL {
            assert_eq!(PredicateId::from_id(p.id()), Some(p));
        }
        assert_eq!(PredicateId::from_id("group3.foo"), None);
    }

    #[test]
    fn predicates_refuse_the_other_group() {
        let q = GroupIIConfig::new(Point::int(0, 0), Point::int(2, 0), Point::int(3, 1), Point::int(1, 1))
            .unwrap();
        let c = Configuration::from(q);
        assert_eq!(PredicateId::Median.evaluate(&c), None);
        assert_eq!(PredicateId::EqualRatios.evaluate(&c), Some(true));
    }
}
