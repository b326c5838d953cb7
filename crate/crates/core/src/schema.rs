//! Problem schemas and the generating → composed → inverse pipeline.
//!
//! A schema is a context `t`, an ordered list of hypothesis disjuncts
//! `H1..Hn` and a conclusion `r`. Generating schemas (`t & Hi -> r`) that
//! share `t` and `r` compose into `t & (H1 | ... | Hn) -> r`; once the
//! disjuncts are known to be mutually exclusive under `t` the disjunction is
//! refined to "exactly one", and the inverse `t & r -> exactly-one(H)` is
//! emitted.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{Decider, Formula, LogicError, TruthTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("schema `{name}`: kind {kind} needs {expected} disjunct(s), found {found}")]
    DisjunctCount { name: String, kind: SchemaKind, expected: &'static str, found: usize },
    #[error("schema `{name}`: {found} labels for {expected} disjuncts")]
    LabelCount { name: String, expected: usize, found: usize },
    #[error("schema `{name}` is {found}, expected {expected}")]
    WrongKind { name: String, found: SchemaKind, expected: &'static str },
    #[error("generating set needs at least two schemas, found {0}")]
    TooFewSchemas(usize),
    #[error("context mismatch: `{name}` has `{found}`, expected `{expected}`")]
    ContextMismatch { name: String, expected: Formula, found: Formula },
    #[error("conclusion mismatch: `{name}` has `{found}`, expected `{expected}`")]
    ConclusionMismatch { name: String, expected: Formula, found: Formula },
    #[error("duplicate disjunct `{disjunct}` in `{name}`")]
    DuplicateDisjunct { name: String, disjunct: Formula },
    #[error("composition law does not hold for `{0}`")]
    CompositionLawFailed(String),
    #[error("exclusivity contradicted: {0} joint model(s) found")]
    ExclusivityContradicted(u64),
    #[error("propositional exclusivity evidence was computed for a different schema")]
    EvidenceMismatch,
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaKind {
    Generating,
    Composed,
    ComposedXor,
    Inverse,
}

impl SchemaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemaKind::Generating => "generating",
            SchemaKind::Composed => "composed",
            SchemaKind::ComposedXor => "composed-xor",
            SchemaKind::Inverse => "inverse",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "generating" => SchemaKind::Generating,
            "composed" => SchemaKind::Composed,
            "composed-xor" => SchemaKind::ComposedXor,
            "inverse" => SchemaKind::Inverse,
            _ => return None,
        })
    }
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvidenceStatus {
    /// Every pair of disjuncts has no joint model together with the context.
    Propositional,
    /// Taken on trust from the caller.
    Asserted,
    /// Searched for joint models by sampling.
    Empirical,
}

impl EvidenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EvidenceStatus::Propositional => "propositional",
            EvidenceStatus::Asserted => "asserted",
            EvidenceStatus::Empirical => "empirical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Tier {
    Propositional { context: Formula, disjuncts: Vec<Formula> },
    Asserted,
    Empirical { samples: u64, witnesses: u64 },
}

/// Why the disjuncts of a composed schema may be treated as mutually
/// exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExclusivityEvidence(Tier);

impl ExclusivityEvidence {
    /// Checks every pair of disjuncts with [`Decider::mutually_exclusive`].
    /// Returns `None` if some pair has a joint model.
    pub fn propositional(
        decider: &Decider,
        context: &Formula,
        disjuncts: &[Formula],
    ) -> Result<Option<Self>, LogicError> {
        for (i, f) in disjuncts.iter().enumerate() {
            for g in &disjuncts[i + 1..] {
                if !decider.mutually_exclusive(context, f, g)? {
                    return Ok(None);
                }
            }
        }
        Ok(Some(ExclusivityEvidence(Tier::Propositional {
            context: context.clone(),
            disjuncts: disjuncts.to_vec(),
        })))
    }

    pub fn asserted() -> Self {
        ExclusivityEvidence(Tier::Asserted)
    }

    /// Result of a joint-model search over `samples` configurations that
    /// found `witnesses` configurations satisfying two disjuncts at once.
    pub fn empirical(samples: u64, witnesses: u64) -> Self {
        ExclusivityEvidence(Tier::Empirical { samples, witnesses })
    }

    pub fn status(&self) -> EvidenceStatus {
        match self.0 {
            Tier::Propositional { .. } => EvidenceStatus::Propositional,
            Tier::Asserted => EvidenceStatus::Asserted,
            Tier::Empirical { .. } => EvidenceStatus::Empirical,
        }
    }

    /// Sample count for empirical evidence.
    pub fn samples(&self) -> Option<u64> {
        match self.0 {
            Tier::Empirical { samples, .. } => Some(samples),
            _ => None,
        }
    }

    pub fn witnesses(&self) -> u64 {
        match self.0 {
            Tier::Empirical { witnesses, .. } => witnesses,
            _ => 0,
        }
    }
}

impl fmt::Display for ExclusivityEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Tier::Propositional { disjuncts, .. } => {
                let n = disjuncts.len();
                write!(f, "propositional ({} pair(s) without joint model)", n * (n - 1) / 2)
            }
            Tier::Asserted => f.write_str("asserted"),
            Tier::Empirical { samples, witnesses } => {
                write!(f, "empirical ({witnesses} joint model(s) in {samples} samples)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSchema {
    name: String,
    context: Formula,
    disjuncts: Vec<Formula>,
    labels: Vec<String>,
    conclusion: Formula,
    kind: SchemaKind,
    evidence: Option<ExclusivityEvidence>,
    origin: Option<Box<ProblemSchema>>,
}

impl ProblemSchema {
    /// Builds a schema, labelling each disjunct with its printed form.
    pub fn new(
        name: impl Into<String>,
        context: Formula,
        disjuncts: Vec<Formula>,
        conclusion: Formula,
        kind: SchemaKind,
    ) -> Result<Self, SchemaError> {
        let name = name.into();
        let (expected, ok) = match kind {
            SchemaKind::Generating => ("exactly 1", disjuncts.len() == 1),
            _ => ("at least 2", disjuncts.len() >= 2),
        };
        if !ok {
            return Err(SchemaError::DisjunctCount { name, kind, expected, found: disjuncts.len() });
        }
        let labels = disjuncts.iter().map(ToString::to_string).collect();
        Ok(ProblemSchema {
            name,
            context,
            disjuncts,
            labels,
            conclusion,
            kind,
            evidence: None,
            origin: None,
        })
    }

    pub fn generating(
        name: impl Into<String>,
        context: Formula,
        hypothesis: Formula,
        conclusion: Formula,
    ) -> Self {
        Self::new(name, context, alloc::vec![hypothesis], conclusion, SchemaKind::Generating)
            .expect("one disjunct")
    }

    /// Replaces the branch labels, one per disjunct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SchemaError> {
        if labels.len() != self.disjuncts.len() {
            return Err(SchemaError::LabelCount {
                name: self.name,
                expected: self.disjuncts.len(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_evidence(mut self, evidence: ExclusivityEvidence) -> Self {
        self.evidence = Some(evidence);
        self
    }

    /// Attaches the composed schema an inverse schema was derived from.
    pub fn with_origin(mut self, origin: ProblemSchema) -> Self {
        self.origin = Some(Box::new(origin));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Formula {
        &self.context
    }

    pub fn disjuncts(&self) -> &[Formula] {
        &self.disjuncts
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn kind(&self) -> SchemaKind {
        self.kind
    }

    pub fn evidence(&self) -> Option<&ExclusivityEvidence> {
        self.evidence.as_ref()
    }

    /// For inverse schemas, the composed schema they were inverted from.
    pub fn origin(&self) -> Option<&ProblemSchema> {
        self.origin.as_deref()
    }

    /// Atoms of context, disjuncts and conclusion.
    pub fn atoms(&self) -> Vec<String> {
        self.structural_formula().atoms()
    }

    pub fn structural_formula(&self) -> Formula {
        let t = self.context.clone();
        let r = self.conclusion.clone();
        match self.kind {
            SchemaKind::Generating => {
                Formula::implies(Formula::and(t, self.disjuncts[0].clone()), r)
            }
            SchemaKind::Composed => {
                let any = Formula::disjunction(self.disjuncts.iter().cloned())
                    .expect("non-empty disjuncts");
                Formula::implies(Formula::and(t, any), r)
            }
            SchemaKind::ComposedXor => {
                Formula::implies(Formula::and(t, exactly_one_formula(&self.disjuncts)), r)
            }
            SchemaKind::Inverse => {
                Formula::implies(Formula::and(t, r), exactly_one_formula(&self.disjuncts))
            }
        }
    }

    /// Hypothesis side of the structural implication.
    pub fn hypothesis(&self) -> Formula {
        match self.structural_formula() {
            Formula::Implies(h, _) => *h,
            _ => unreachable!("structural formulas are implications"),
        }
    }

    /// Conclusion side of the structural implication.
    pub fn claim(&self) -> Formula {
        match self.structural_formula() {
            Formula::Implies(_, c) => *c,
            _ => unreachable!("structural formulas are implications"),
        }
    }
}

/// "Exactly one of `items` is true".
///
/// Two items give a plain `^` node. Longer lists expand to a disjunction of
/// "this one and none of the others": nested binary `^` would mean odd parity
/// instead. Panics on an empty slice.
pub fn exactly_one_formula(items: &[Formula]) -> Formula {
    match items {
        [] => panic!("exactly-one over no formulas"),
        [only] => only.clone(),
        [a, b] => Formula::xor(a.clone(), b.clone()),
        _ => {
            let terms = items.iter().enumerate().map(|(i, h)| {
                let others = items
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| Formula::not(g.clone()));
                Formula::conjunction(core::iter::once(h.clone()).chain(others))
                    .expect("non-empty")
            });
            Formula::disjunction(terms).expect("non-empty")
        }
    }
}

pub fn exactly_one(values: &[bool]) -> bool {
    values.iter().filter(|&&v| v).count() == 1
}

/// Generating schemas that share context and conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    schemas: Vec<ProblemSchema>,
    context: Formula,
    conclusion: Formula,
}

impl GeneratingSet {
    pub fn schemas(&self) -> &[ProblemSchema] {
        &self.schemas
    }

    pub fn context(&self) -> &Formula {
        &self.context
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn disjuncts(&self) -> impl Iterator<Item = &Formula> {
        self.schemas.iter().map(|s| &s.disjuncts[0])
    }
}

pub fn validate_generating_set(schemas: Vec<ProblemSchema>) -> Result<GeneratingSet, SchemaError> {
    if let Some(s) = schemas.iter().find(|s| s.kind != SchemaKind::Generating) {
        return Err(SchemaError::WrongKind {
            name: s.name.clone(),
            found: s.kind,
            expected: "generating",
        });
    }
    if schemas.len() < 2 {
        return Err(SchemaError::TooFewSchemas(schemas.len()));
    }
    let context = schemas[0].context.clone();
    let conclusion = schemas[0].conclusion.clone();
    for (i, s) in schemas.iter().enumerate() {
        if s.context != context {
            return Err(SchemaError::ContextMismatch {
                name: s.name.clone(),
                expected: context,
                found: s.context.clone(),
            });
        }
        if s.conclusion != conclusion {
            return Err(SchemaError::ConclusionMismatch {
                name: s.name.clone(),
                expected: conclusion,
                found: s.conclusion.clone(),
            });
        }
        if schemas[..i].iter().any(|prev| prev.disjuncts[0] == s.disjuncts[0]) {
            return Err(SchemaError::DuplicateDisjunct {
                name: s.name.clone(),
                disjunct: s.disjuncts[0].clone(),
            });
        }
    }
    Ok(GeneratingSet { schemas, context, conclusion })
}

/// Truth table of `AND_i (t & Hi -> r) <-> (t & (H1 | ... | Hn) -> r)`.
pub fn check_composition_law(
    decider: &Decider,
    g: &GeneratingSet,
) -> Result<TruthTable, LogicError> {
    let separate = Formula::conjunction(g.schemas.iter().map(ProblemSchema::structural_formula))
        .expect("at least two schemas");
    let any = Formula::disjunction(g.disjuncts().cloned()).expect("at least two schemas");
    let joint = Formula::implies(Formula::and(g.context.clone(), any), g.conclusion.clone());
    decider.truth_table(&Formula::iff(separate, joint))
}

/// Builds the composed schema, in input order, after checking the
/// composition law on the set.
pub fn compose(decider: &Decider, g: &GeneratingSet) -> Result<ProblemSchema, SchemaError> {
    let name = g.schemas.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join("+");
    if !check_composition_law(decider, g)?.all_true() {
        return Err(SchemaError::CompositionLawFailed(name));
    }
    let labels = g.schemas.iter().map(|s| s.labels[0].clone()).collect();
    ProblemSchema::new(
        name,
        g.context.clone(),
        g.disjuncts().cloned().collect(),
        g.conclusion.clone(),
        SchemaKind::Composed,
    )?
    .with_labels(labels)
}

/// Marks a composed schema's disjunction as exclusive.
pub fn refine_to_xor(
    s: &ProblemSchema,
    evidence: ExclusivityEvidence,
) -> Result<ProblemSchema, SchemaError> {
    if s.kind != SchemaKind::Composed {
        return Err(SchemaError::WrongKind {
            name: s.name.clone(),
            found: s.kind,
            expected: "composed",
        });
    }
    match &evidence.0 {
        Tier::Empirical { witnesses, .. } if *witnesses > 0 => {
            return Err(SchemaError::ExclusivityContradicted(*witnesses));
        }
        Tier::Propositional { context, disjuncts }
            if *context != s.context || *disjuncts != s.disjuncts =>
        {
            return Err(SchemaError::EvidenceMismatch);
        }
        _ => {}
    }
    let mut out = s.clone();
    out.kind = SchemaKind::ComposedXor;
    out.evidence = Some(evidence);
    Ok(out)
}

/// Swaps the disjunction and the conclusion. The input is kept as the
/// inverse schema's origin.
pub fn invert(s: &ProblemSchema) -> Result<ProblemSchema, SchemaError> {
    if !matches!(s.kind, SchemaKind::Composed | SchemaKind::ComposedXor) {
        return Err(SchemaError::WrongKind {
            name: s.name.clone(),
            found: s.kind,
            expected: "composed or composed-xor",
        });
    }
    let mut out = s.clone();
    out.name = alloc::format!("{}-inverse", s.name);
    out.kind = SchemaKind::Inverse;
    out.origin = Some(Box::new(s.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{are_equivalent, parse};
    use alloc::vec;

    fn p(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn gen(name: &str, h: &str) -> ProblemSchema {
        ProblemSchema::generating(name, p("t"), p(h), p("r"))
    }

    fn group1() -> GeneratingSet {
        validate_generating_set(vec![gen("g21", "p1"), gen("g22", "p2")]).unwrap()
    }

    fn group2() -> GeneratingSet {
        validate_generating_set(vec![gen("g31", "p1 & !p2"), gen("g32", "p1 & p2")]).unwrap()
    }

    #[test]
    fn structural_formulas() {
        assert_eq!(gen("g21", "p1").structural_formula().to_string(), "t & p1 -> r");
        let d = Decider::default();
        let c1 = compose(&d, &group1()).unwrap();
        assert_eq!(c1.kind(), SchemaKind::Composed);
        assert_eq!(c1.structural_formula().to_string(), "t & (p1 | p2) -> r");
        let c2 = compose(&d, &group2()).unwrap();
        assert_eq!(c2.structural_formula().to_string(), "t & ((p1 & !p2) | (p1 & p2)) -> r");
        let ev = ExclusivityEvidence::propositional(&d, c2.context(), c2.disjuncts())
            .unwrap()
            .unwrap();
        let x2 = refine_to_xor(&c2, ev).unwrap();
        let inv = invert(&x2).unwrap();
        assert_eq!(inv.structural_formula().to_string(), "t & r -> (p1 & !p2) ^ (p1 & p2)");
    }

    #[test]
    fn generating_set_validation() {
        let g = group1();
        assert_eq!(g.context(), &p("t"));
        assert_eq!(g.conclusion(), &p("r"));
        assert_eq!(g.disjuncts().cloned().collect::<Vec<_>>(), [p("p1"), p("p2")]);
        assert_eq!(
            group2().disjuncts().cloned().collect::<Vec<_>>(),
            [p("p1 & !p2"), p("p1 & p2")]
        );

        assert_eq!(
            validate_generating_set(vec![gen("g21", "p1")]),
            Err(SchemaError::TooFewSchemas(1))
        );
        let other_r = ProblemSchema::generating("x", p("t"), p("p2"), p("!r"));
        assert!(matches!(
            validate_generating_set(vec![gen("g21", "p1"), other_r]),
            Err(SchemaError::ConclusionMismatch { .. })
        ));
        let other_t = ProblemSchema::generating("x", p("q"), p("p2"), p("r"));
        assert!(matches!(
            validate_generating_set(vec![gen("g21", "p1"), other_t]),
            Err(SchemaError::ContextMismatch { .. })
        ));
        assert!(matches!(
            validate_generating_set(vec![gen("a", "p1"), gen("b", "p1")]),
            Err(SchemaError::DuplicateDisjunct { .. })
        ));
        let composed = compose(&Decider::default(), &group1()).unwrap();
        assert!(matches!(
            validate_generating_set(vec![gen("a", "p1"), composed]),
            Err(SchemaError::WrongKind { .. })
        ));
    }

    #[test]
    fn schema_disjunct_count_invariant() {
        assert!(ProblemSchema::new("x", p("t"), vec![p("a")], p("r"), SchemaKind::Composed)
            .is_err());
        assert!(ProblemSchema::new(
            "x",
            p("t"),
            vec![p("a"), p("b")],
            p("r"),
            SchemaKind::Generating
        )
        .is_err());
    }

    #[test]
    fn composition_law_tables() {
        let d = Decider::default();
        let t1 = check_composition_law(&d, &group1()).unwrap();
        assert_eq!(t1.len(), 16);
        assert!(t1.all_true());
        let t2 = check_composition_law(&d, &group2()).unwrap();
        assert_eq!(t2.atoms(), ["p1", "p2", "r", "t"]);
        assert!(t2.all_true());
    }

    #[test]
    fn three_disjuncts() {
        let d = Decider::default();
        let g = validate_generating_set(vec![gen("a", "a"), gen("b", "b"), gen("c", "c")]).unwrap();
        let table = check_composition_law(&d, &g).unwrap();
        assert_eq!(table.len(), 32);
        assert!(table.all_true());
        let c = compose(&d, &g).unwrap();
        assert_eq!(c.structural_formula().to_string(), "t & (a | b | c) -> r");
    }

    #[test]
    fn refinement_tiers() {
        let d = Decider::default();
        let c1 = compose(&d, &group1()).unwrap();
        assert_eq!(
            ExclusivityEvidence::propositional(&d, c1.context(), c1.disjuncts()).unwrap(),
            None
        );
        let x1 = refine_to_xor(&c1, ExclusivityEvidence::empirical(10_000, 0)).unwrap();
        assert_eq!(x1.kind(), SchemaKind::ComposedXor);
        assert_eq!(x1.disjuncts(), c1.disjuncts());
        assert_eq!(x1.evidence().unwrap().status(), EvidenceStatus::Empirical);
        assert_eq!(
            refine_to_xor(&c1, ExclusivityEvidence::empirical(10, 1)),
            Err(SchemaError::ExclusivityContradicted(1))
        );
        assert!(refine_to_xor(&c1, ExclusivityEvidence::asserted()).is_ok());
        assert!(matches!(
            refine_to_xor(&x1, ExclusivityEvidence::asserted()),
            Err(SchemaError::WrongKind { .. })
        ));

        let c2 = compose(&d, &group2()).unwrap();
        let ev = ExclusivityEvidence::propositional(&d, c2.context(), c2.disjuncts())
            .unwrap()
            .unwrap();
        assert_eq!(ev.status(), EvidenceStatus::Propositional);
        assert_eq!(refine_to_xor(&c1, ev.clone()), Err(SchemaError::EvidenceMismatch));
        assert!(refine_to_xor(&c2, ev).is_ok());
    }

    #[test]
    fn inversion() {
        let d = Decider::default();
        let c1 = compose(&d, &group1()).unwrap();
        let x1 = refine_to_xor(&c1, ExclusivityEvidence::asserted()).unwrap();
        let inv = invert(&x1).unwrap();
        assert_eq!(inv.kind(), SchemaKind::Inverse);
        assert_eq!(inv.context(), x1.context());
        assert_eq!(inv.structural_formula().to_string(), "t & r -> p1 ^ p2");
        assert_eq!(inv.origin(), Some(&x1));
        assert!(invert(&inv).is_err());
        assert!(invert(&gen("g21", "p1")).is_err());
        // the inverse is not a propositional consequence of the composed schema
        assert!(!d
            .is_tautology(&Formula::implies(c1.structural_formula(), inv.structural_formula()))
            .unwrap());
    }

    #[test]
    fn exactly_one_is_not_parity() {
        let h = [p("a"), p("b"), p("c")];
        let f = exactly_one_formula(&h);
        let d = Decider::default();
        let table = d.truth_table(&f).unwrap();
        for (v, value) in table.rows() {
            let bits: Vec<bool> = v.iter().map(|(_, b)| b).collect();
            assert_eq!(value, exactly_one(&bits));
        }
        // parity reading differs at a=b=c=1
        assert!(!are_equivalent(&f, &p("a ^ b ^ c")).unwrap());
        assert_eq!(exactly_one_formula(&h[..2]), p("a ^ b"));
    }
}
