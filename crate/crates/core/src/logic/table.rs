use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Formula, LogicError, Valuation};

pub const DEFAULT_ATOM_CAP: usize = 24;

/// Truth table of a formula.
///
/// Row `i` assigns atom `k` the bit `n - 1 - k` of `i`, so rows run in
/// lexicographic order with false before true and the first atom most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    atoms: Vec<String>,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, row: usize) -> bool {
        self.values[row]
    }

    pub fn valuation(&self, row: usize) -> Valuation {
        row_valuation(&self.atoms, row)
    }

    pub fn rows(&self) -> impl Iterator<Item = (Valuation, bool)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.valuation(i), v))
    }

    pub fn true_count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    pub fn all_true(&self) -> bool {
        self.values.iter().all(|&v| v)
    }

    /// First row (in table order) whose value is false.
    pub fn first_false(&self) -> Option<Valuation> {
        self.values.iter().position(|&v| !v).map(|i| self.valuation(i))
    }
}

fn row_valuation(atoms: &[String], row: usize) -> Valuation {
    let n = atoms.len();
    atoms
        .iter()
        .enumerate()
        .map(|(k, name)| (name.clone(), (row >> (n - 1 - k)) & 1 == 1))
        .collect()
}

/// Formula with atoms replaced by bit positions of the row index.
enum Compiled {
    Bit(u32),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Xor(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(f: &Formula, atoms: &[String]) -> Self {
        let n = atoms.len() as u32;
        let pair = |l: &Formula, r: &Formula| {
            (Box::new(Compiled::new(l, atoms)), Box::new(Compiled::new(r, atoms)))
        };
        match f {
            Formula::Atom(name) => {
                // atoms come from f.atoms(), so the lookup cannot miss
                let k = atoms.binary_search(name).expect("atom list covers formula") as u32;
                Compiled::Bit(n - 1 - k)
            }
            Formula::Not(c) => Compiled::Not(Box::new(Compiled::new(c, atoms))),
            Formula::And(l, r) => {
                let (l, r) = pair(l, r);
                Compiled::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = pair(l, r);
                Compiled::Or(l, r)
            }
            Formula::Xor(l, r) => {
                let (l, r) = pair(l, r);
                Compiled::Xor(l, r)
            }
            Formula::Implies(l, r) => {
                let (l, r) = pair(l, r);
                Compiled::Implies(l, r)
            }
            Formula::Iff(l, r) => {
                let (l, r) = pair(l, r);
                Compiled::Iff(l, r)
            }
        }
    }

    fn eval(&self, row: usize) -> bool {
        match self {
            Compiled::Bit(b) => (row >> b) & 1 == 1,
            Compiled::Not(c) => !c.eval(row),
            Compiled::And(l, r) => l.eval(row) && r.eval(row),
            Compiled::Or(l, r) => l.eval(row) || r.eval(row),
            Compiled::Xor(l, r) => l.eval(row) != r.eval(row),
            Compiled::Implies(l, r) => !l.eval(row) || r.eval(row),
            Compiled::Iff(l, r) => l.eval(row) == r.eval(row),
        }
    }
}

/// Decision procedures by exhaustive valuation, bounded by an atom cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decider {
    atom_cap: usize,
}

impl Default for Decider {
    fn default() -> Self {
        Decider { atom_cap: DEFAULT_ATOM_CAP }
    }
}

impl Decider {
    pub fn with_atom_cap(atom_cap: usize) -> Self {
        Decider { atom_cap }
    }

    pub fn atom_cap(&self) -> usize {
        self.atom_cap
    }

    fn prepare(&self, f: &Formula) -> Result<(Vec<String>, Compiled), LogicError> {
        let atoms = f.atoms();
        // the row index must also fit in a usize
        let cap = self.atom_cap.min(usize::BITS as usize - 1);
        if atoms.len() > cap {
            return Err(LogicError::AtomCapExceeded { atoms: atoms.len(), cap: self.atom_cap });
        }
        let compiled = Compiled::new(f, &atoms);
        Ok((atoms, compiled))
    }

    pub fn truth_table(&self, f: &Formula) -> Result<TruthTable, LogicError> {
        let (atoms, c) = self.prepare(f)?;
        let values = (0..1usize << atoms.len()).map(|row| c.eval(row)).collect();
        Ok(TruthTable { atoms, values })
    }

    pub fn is_tautology(&self, f: &Formula) -> Result<bool, LogicError> {
        let (atoms, c) = self.prepare(f)?;
        Ok((0..1usize << atoms.len()).all(|row| c.eval(row)))
    }

    pub fn are_equivalent(&self, f: &Formula, g: &Formula) -> Result<bool, LogicError> {
        self.is_tautology(&Formula::iff(f.clone(), g.clone()))
    }

    /// First satisfying valuation in table order.
    pub fn find_model(&self, f: &Formula) -> Result<Option<Valuation>, LogicError> {
        let (atoms, c) = self.prepare(f)?;
        Ok((0..1usize << atoms.len())
            .find(|&row| c.eval(row))
            .map(|row| row_valuation(&atoms, row)))
    }

    /// True iff no valuation satisfies `context & f & g`.
    pub fn mutually_exclusive(
        &self,
        context: &Formula,
        f: &Formula,
        g: &Formula,
    ) -> Result<bool, LogicError> {
        let joint = Formula::and(Formula::and(context.clone(), f.clone()), g.clone());
        Ok(self.find_model(&joint)?.is_none())
    }
}

pub fn truth_table(f: &Formula) -> Result<TruthTable, LogicError> {
    Decider::default().truth_table(f)
}

pub fn is_tautology(f: &Formula) -> Result<bool, LogicError> {
    Decider::default().is_tautology(f)
}

pub fn are_equivalent(f: &Formula, g: &Formula) -> Result<bool, LogicError> {
    Decider::default().are_equivalent(f, g)
}

pub fn find_model(f: &Formula) -> Result<Option<Valuation>, LogicError> {
    Decider::default().find_model(f)
}

pub fn mutually_exclusive(context: &Formula, f: &Formula, g: &Formula) -> Result<bool, LogicError> {
    Decider::default().mutually_exclusive(context, f, g)
}
