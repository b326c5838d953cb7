//! Seeded verification campaigns: sample configurations that satisfy a
//! schema's hypothesis side and evaluate its claim exactly.
//!
//! Sample `i` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `i`, so every sample can be replayed alone and the report does not
//! depend on evaluation order.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    Configuration, GeometryError, Group, Interpretation, PredicateId, Sampler, SamplerId,
};
use crate::logic::{Formula, LogicError};
use crate::schema::{ExclusivityEvidence, ProblemSchema, SchemaKind};

pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("atom `{0}` is not bound to a predicate")]
    UnboundAtom(String),
    #[error("atom `{atom}` is bound to {predicate}, which does not apply to {group} configurations")]
    GroupMismatch { atom: String, predicate: &'static str, group: Group },
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("sample {index} (seed {seed}): {source}")]
    Sampling { seed: u64, index: u64, source: GeometryError },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Rng for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub sampler: Sampler,
    pub counterexample_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { sampler: Sampler::default(), counterexample_cap: DEFAULT_COUNTEREXAMPLE_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureKind {
    /// The sampled configuration does not satisfy the hypothesis side.
    Precondition,
    /// The hypothesis holds and the claim does not.
    Conclusion,
}

impl FailureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureKind::Precondition => "precondition",
            FailureKind::Conclusion => "conclusion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub kind: FailureKind,
    pub config: Configuration,
    /// Truth value of each disjunct, in schema order.
    pub disjuncts: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub schema: String,
    pub kind: SchemaKind,
    pub sampler: SamplerId,
    pub seed: u64,
    pub samples: u64,
    pub passes: u64,
    /// Precondition and conclusion failures together.
    pub failures: u64,
    pub precondition_failures: u64,
    /// `(label, count)` per disjunct in schema order: samples with the
    /// hypothesis satisfied on which that disjunct held.
    pub branches: Vec<(String, u64)>,
    /// Hypothesis-satisfying samples with two or more disjuncts true.
    pub multiple: u64,
    /// Hypothesis-satisfying samples with no disjunct true.
    pub none: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

/// Atoms of the formulas under test with their predicates.
struct Bound {
    atoms: Vec<(String, PredicateId)>,
}

impl Bound {
    fn new(formulas: &[&Formula], interp: &Interpretation, group: Group) -> Result<Self, CheckError> {
        let mut names: Vec<String> = formulas.iter().flat_map(|f| f.atoms()).collect();
        names.sort();
        names.dedup();
        let atoms = names
            .into_iter()
            .map(|atom| {
                let p = interp.get(&atom).ok_or_else(|| CheckError::UnboundAtom(atom.clone()))?;
                if p.group() != group {
                    return Err(CheckError::GroupMismatch { atom, predicate: p.id(), group });
                }
                Ok((atom, p))
            })
            .collect::<Result<_, _>>()?;
        Ok(Bound { atoms })
    }

    /// Evaluates every bound predicate once on `config`.
    fn valuation(&self, config: &Configuration) -> Vec<(&str, bool)> {
        self.atoms
            .iter()
            .map(|(a, p)| (a.as_str(), p.evaluate(config).expect("group checked on binding")))
            .collect()
    }
}

fn eval(f: &Formula, values: &[(&str, bool)]) -> Result<bool, LogicError> {
    f.eval_with(&mut |name| values.iter().find(|(a, _)| *a == name).map(|&(_, v)| v))
}

/// Draws `n` configurations from `sampler` and evaluates the schema's
/// hypothesis and claim on each.
///
/// A sample whose configuration misses the hypothesis counts as a
/// precondition failure, never as a pass.
pub fn check_implication(
    schema: &ProblemSchema,
    interp: &Interpretation,
    sampler: SamplerId,
    n: u64,
    seed: u64,
    options: &CheckOptions,
) -> Result<VerificationReport, CheckError> {
    if n == 0 {
        return Err(CheckError::ZeroSamples);
    }
    let hypothesis = schema.hypothesis();
    let claim = schema.claim();
    let bound = Bound::new(&[&hypothesis, &claim], interp, sampler.group())?;

    let mut report = VerificationReport {
        schema: schema.name().into(),
        kind: schema.kind(),
        sampler,
        seed,
        samples: n,
        passes: 0,
        failures: 0,
        precondition_failures: 0,
        branches: schema.labels().iter().map(|l| (l.clone(), 0)).collect(),
        multiple: 0,
        none: 0,
        counterexamples: Vec::new(),
    };

    for index in 0..n {
        let mut rng = sample_rng(seed, index);
        let config = sampler
            .sample(&options.sampler, &mut rng)
            .map_err(|source| CheckError::Sampling { seed, index, source })?;
        let values = bound.valuation(&config);
        let disjuncts = schema
            .disjuncts()
            .iter()
            .map(|d| eval(d, &values))
            .collect::<Result<Vec<_>, _>>()?;

        let failure = if !eval(&hypothesis, &values)? {
            report.precondition_failures += 1;
            Some(FailureKind::Precondition)
        } else {
            for (slot, &held) in report.branches.iter_mut().zip(&disjuncts) {
                slot.1 += u64::from(held);
            }
            match disjuncts.iter().filter(|&&d| d).count() {
                0 => report.none += 1,
                1 => {}
                _ => report.multiple += 1,
            }
            (!eval(&claim, &values)?).then_some(FailureKind::Conclusion)
        };

        match failure {
            None => report.passes += 1,
            Some(kind) => {
                report.failures += 1;
                if report.counterexamples.len() < options.counterexample_cap {
                    report.counterexamples.push(Counterexample { index, kind, config, disjuncts });
                }
            }
        }
    }
    Ok(report)
}

/// Re-evaluates a counterexample from its stored configuration. Returns
/// the failure kind it reproduces, or `None` if the sample now passes.
pub fn replay(
    schema: &ProblemSchema,
    interp: &Interpretation,
    config: &Configuration,
) -> Result<Option<FailureKind>, CheckError> {
    let hypothesis = schema.hypothesis();
    let claim = schema.claim();
    let bound = Bound::new(&[&hypothesis, &claim], interp, config.group())?;
    let values = bound.valuation(config);
    if !eval(&hypothesis, &values)? {
        return Ok(Some(FailureKind::Precondition));
    }
    Ok((!eval(&claim, &values)?).then_some(FailureKind::Conclusion))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointSearch {
    /// Configurations examined before stopping.
    pub samples: u64,
    pub witness: Option<Configuration>,
}

impl JointSearch {
    pub fn evidence(&self) -> ExclusivityEvidence {
        ExclusivityEvidence::empirical(self.samples, u64::from(self.witness.is_some()))
    }
}

fn search_samplers(group: Group) -> &'static [SamplerId] {
    match group {
        Group::I => &[
            SamplerId::Group1ForwardMedian,
            SamplerId::Group1ForwardParallel,
            SamplerId::Group1Inverse,
            SamplerId::Group1Uniform,
        ],
        Group::II => &[
            SamplerId::Group2ForwardTrapezium,
            SamplerId::Group2ForwardParallelogram,
            SamplerId::Group2Inverse,
            SamplerId::Group2Uniform,
        ],
    }
}

/// Looks for a configuration of `group` on which `p` and `q` both hold,
/// cycling through the group's branch samplers and its unconstrained
/// sampler. Stops at the first witness.
pub fn search_joint_model(
    p: &Formula,
    q: &Formula,
    interp: &Interpretation,
    group: Group,
    n: u64,
    seed: u64,
    sampler: &Sampler,
) -> Result<JointSearch, CheckError> {
    if n == 0 {
        return Err(CheckError::ZeroSamples);
    }
    let bound = Bound::new(&[p, q], interp, group)?;
    let samplers = search_samplers(group);
    for index in 0..n {
        let id = samplers[(index % samplers.len() as u64) as usize];
        let config = id
            .sample(sampler, &mut sample_rng(seed, index))
            .map_err(|source| CheckError::Sampling { seed, index, source })?;
        let values = bound.valuation(&config);
        if eval(p, &values)? && eval(q, &values)? {
            return Ok(JointSearch { samples: index + 1, witness: Some(config) });
        }
    }
    Ok(JointSearch { samples: n, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn p(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn inverse(disjuncts: &[&str]) -> ProblemSchema {
        ProblemSchema::new(
            "inv",
            p("t"),
            disjuncts.iter().map(|d| p(d)).collect(),
            p("r"),
            SchemaKind::Inverse,
        )
        .unwrap()
    }

    #[test]
    fn small_group1_inverse_run() {
        let interp = Interpretation::standard(Group::I);
        let r = check_implication(
            &inverse(&["p1", "p2"]),
            &interp,
            SamplerId::Group1Inverse,
            50,
            7,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(r.passes, 50);
        assert_eq!(r.branches.iter().map(|b| b.1).sum::<u64>(), 50);
    }

    #[test]
    fn errors() {
        let interp = Interpretation::standard(Group::I);
        let schema = inverse(&["p1", "p2"]);
        let opts = CheckOptions::default();
        assert_eq!(
            check_implication(&schema, &interp, SamplerId::Group1Inverse, 0, 0, &opts),
            Err(CheckError::ZeroSamples)
        );
        let partial: Interpretation = [("t", PredicateId::TriangleLinePoint)].into_iter().collect();
        assert_eq!(
            check_implication(&schema, &partial, SamplerId::Group1Inverse, 1, 0, &opts),
            Err(CheckError::UnboundAtom("p1".into()))
        );
        assert!(matches!(
            check_implication(&schema, &interp, SamplerId::Group2Inverse, 1, 0, &opts),
            Err(CheckError::GroupMismatch { .. })
        ));
    }

    #[test]
    fn falsified_conclusion_is_caught_and_replayable() {
        let interp = Interpretation::standard(Group::I);
        let schema = ProblemSchema::generating("neg", p("t"), p("p1"), p("!r"));
        let r = check_implication(
            &schema,
            &interp,
            SamplerId::Group1ForwardMedian,
            20,
            0,
            &CheckOptions { counterexample_cap: 3, ..CheckOptions::default() },
        )
        .unwrap();
        assert_eq!(r.failures, 20);
        assert_eq!(r.precondition_failures, 0);
        assert_eq!(r.counterexamples.len(), 3);
        for cx in &r.counterexamples {
            assert_eq!(replay(&schema, &interp, &cx.config).unwrap(), Some(FailureKind::Conclusion));
        }
    }

    #[test]
    fn per_sample_streams_are_independent_of_run_length() {
        let interp = Interpretation::standard(Group::II);
        let schema = ProblemSchema::generating("neg", p("t"), p("p1"), p("!r"));
        let opts = CheckOptions { counterexample_cap: 100, ..CheckOptions::default() };
        let short =
            check_implication(&schema, &interp, SamplerId::Group2Inverse, 5, 9, &opts).unwrap();
        let long =
            check_implication(&schema, &interp, SamplerId::Group2Inverse, 12, 9, &opts).unwrap();
        assert_eq!(short.counterexamples[..], long.counterexamples[..5]);
    }

    #[test]
    fn joint_search_group2_atoms() {
        let interp = Interpretation::standard(Group::II);
        let s = search_joint_model(&p("p1"), &p("p2"), &interp, Group::II, 1000, 0, &Sampler::default())
            .unwrap();
        let witness = s.witness.as_ref().unwrap();
        assert!(PredicateId::ParallelSides.evaluate(witness).unwrap());
        assert!(PredicateId::EqualSides.evaluate(witness).unwrap());
        assert_eq!(s.evidence().witnesses(), 1);
    }
}
