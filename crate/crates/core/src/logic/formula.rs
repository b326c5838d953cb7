use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::LogicError;

/// A propositional formula over named atoms.
///
/// Children are owned, so a formula is always a finite tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// Returns true if `name` matches `[a-z][a-z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_lowercase() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

impl Formula {
    /// Builds an atom.
    ///
    /// Panics if `name` is not a valid atom name; use [`Formula::try_atom`]
    /// for untrusted input.
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_atom_name(&name), "invalid atom name {name:?}");
        Formula::Atom(name)
    }

    pub fn try_atom(name: impl Into<String>) -> Option<Self> {
        let name = name.into();
        is_atom_name(&name).then_some(Formula::Atom(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn xor(l: Formula, r: Formula) -> Self {
        Formula::Xor(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction of a non-empty sequence, so that
    /// `[a, b, c]` prints and parses as `a & b & c`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction of a non-empty sequence.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Formula::or)
    }

    /// Sorted, duplicate-free atom names.
    pub fn atoms(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set.into_iter().map(String::from).collect()
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Xor(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluates under `v`, failing if some atom of `self` is unassigned.
    pub fn evaluate(&self, v: &Valuation) -> Result<bool, LogicError> {
        self.eval_with(&mut |name| v.get(name))
    }

    /// Evaluates with an arbitrary atom lookup.
    pub fn eval_with<F>(&self, lookup: &mut F) -> Result<bool, LogicError>
    where
        F: FnMut(&str) -> Option<bool>,
    {
        Ok(match self {
            Formula::Atom(name) => {
                lookup(name).ok_or_else(|| LogicError::MissingAtom(name.clone()))?
            }
            Formula::Not(f) => !f.eval_with(lookup)?,
            Formula::And(l, r) => l.eval_with(lookup)? & r.eval_with(lookup)?,
            Formula::Or(l, r) => l.eval_with(lookup)? | r.eval_with(lookup)?,
            Formula::Xor(l, r) => l.eval_with(lookup)? != r.eval_with(lookup)?,
            Formula::Implies(l, r) => !l.eval_with(lookup)? | r.eval_with(lookup)?,
            Formula::Iff(l, r) => l.eval_with(lookup)? == r.eval_with(lookup)?,
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Xor(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) | Formula::Xor(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Atom(_) => 6,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Formula {
    /// Prints the minimal-parentheses form, except that `|`/`^` never mix
    /// without parentheses and conjunctions under `|`/`^` are always
    /// parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op) = match self {
            Formula::Atom(name) => return f.write_str(name),
            Formula::Not(child) => {
                f.write_str("!")?;
                return child.write_child(f, child.level() < 5);
            }
            Formula::And(l, r) => (l, r, "&"),
            Formula::Or(l, r) => (l, r, "|"),
            Formula::Xor(l, r) => (l, r, "^"),
            Formula::Implies(l, r) => (l, r, "->"),
            Formula::Iff(l, r) => (l, r, "<->"),
        };
        let level = self.level();
        let (left_parens, right_parens) = match self {
            // right-associative
            Formula::Implies(..) => (l.level() <= level, r.level() < level),
            Formula::Or(..) | Formula::Xor(..) => {
                let mixed = |c: &Formula| {
                    c.level() == level && core::mem::discriminant(c) != core::mem::discriminant(self)
                };
                let conj = |c: &Formula| matches!(c, Formula::And(..));
                (
                    l.level() < level || mixed(l) || conj(l),
                    r.level() <= level || conj(r),
                )
            }
            _ => (l.level() < level, r.level() <= level),
        };
        l.write_child(f, left_parens)?;
        write!(f, " {op} ")?;
        r.write_child(f, right_parens)
    }
}

/// Assignment of truth values to atom names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Valuation(BTreeMap<String, bool>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.0.get(atom).copied()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.0.insert(atom.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (S, bool)>>(iter: T) -> Self {
        Valuation(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, value)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}={}", u8::from(value))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn a(name: &str) -> Formula {
        Formula::atom(name)
    }

    #[test]
    fn atom_names() {
        assert!(is_atom_name("p1"));
        assert!(is_atom_name("t_0"));
        assert!(!is_atom_name("1p"));
        assert!(!is_atom_name("P"));
        assert!(!is_atom_name(""));
        assert!(Formula::try_atom("Bad").is_none());
    }

    #[test]
    fn format_examples() {
        let f = Formula::and(a("t"), Formula::or(a("p1"), a("p2")));
        assert_eq!(f.to_string(), "t & (p1 | p2)");
        assert_eq!(a("r").to_string(), "r");
        let inv = Formula::implies(Formula::and(a("t"), a("r")), Formula::xor(a("p1"), a("p2")));
        assert_eq!(inv.to_string(), "t & r -> p1 ^ p2");
    }

    #[test]
    fn format_keeps_xor_and_or_apart() {
        let f = Formula::or(Formula::xor(a("a"), a("b")), a("c"));
        assert_eq!(f.to_string(), "(a ^ b) | c");
        let g = Formula::xor(a("a"), Formula::xor(a("b"), a("c")));
        assert_eq!(g.to_string(), "a ^ (b ^ c)");
        let h = Formula::implies(Formula::implies(a("a"), a("b")), a("c"));
        assert_eq!(h.to_string(), "(a -> b) -> c");
        let n = Formula::not(Formula::not(Formula::and(a("a"), a("b"))));
        assert_eq!(n.to_string(), "!!(a & b)");
    }

    #[test]
    fn atoms_sorted_and_deduplicated() {
        let f = Formula::and(a("t"), Formula::not(a("t")));
        assert_eq!(f.atoms(), ["t"]);
        let g = Formula::implies(Formula::and(a("t"), a("r")), Formula::xor(a("p2"), a("p1")));
        assert_eq!(g.atoms(), ["p1", "p2", "r", "t"]);
    }

    #[test]
    fn evaluation_basics() {
        let v: Valuation = [("p1", true), ("p2", true)].into_iter().collect();
        assert!(!Formula::xor(a("p1"), a("p2")).evaluate(&v).unwrap());
        let v: Valuation = [("t", false), ("r", false)].into_iter().collect();
        assert!(Formula::implies(a("t"), a("r")).evaluate(&v).unwrap());
        assert_eq!(
            a("q").evaluate(&v),
            Err(LogicError::MissingAtom("q".to_string()))
        );
    }

    #[test]
    fn nary_builders_nest_left() {
        let f = Formula::disjunction([a("a"), a("b"), a("c")]).unwrap();
        assert_eq!(f, Formula::or(Formula::or(a("a"), a("b")), a("c")));
        assert_eq!(f.to_string(), "a | b | c");
        assert!(Formula::conjunction(core::iter::empty()).is_none());
    }
}
