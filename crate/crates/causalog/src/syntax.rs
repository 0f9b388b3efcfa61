//! Propositional syntax: atoms, literals, clauses, and (abductive) logic
//! programs.
//!
//! Atoms are interned into an [`Alphabet`] and handled as dense indices
//! everywhere else; the interning order is the canonical atom order used for
//! printing and for the canonical ordering of worlds.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::world::AtomSet;

/// Index of an atom in its [`Alphabet`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Words that the grammar reserves; they can never name an atom.
pub const RESERVED_WORDS: [&str; 2] = ["not", "abducible"];

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED_WORDS.contains(&name)
}

/// The atoms of a program, in first-occurrence order.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    /// Builds an alphabet from distinct, grammar-valid atom names.
    pub fn from_names<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::new();
        for name in names {
            let name = name.into();
            if !valid_atom_name(&name) {
                return Err(Error::contract(format!("invalid atom name `{name}`")));
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::DuplicateAtom(name));
            }
            alphabet.intern(&name);
        }
        Ok(alphabet)
    }

    /// Returns the id for `name`, interning it on first sight.
    pub(crate) fn intern(&mut self, name: &str) -> AtomId {
        if let Some(&i) = self.index.get(name) {
            return AtomId(i);
        }
        let i = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        AtomId(i)
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied().map(AtomId)
    }

    pub fn require(&self, name: &str) -> Result<AtomId, Error> {
        self.lookup(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> {
        (0..self.names.len() as u32).map(AtomId)
    }

    /// All atoms as a set.
    pub fn universe(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    pub fn contains_id(&self, atom: AtomId) -> bool {
        atom.index() < self.names.len()
    }

    pub fn literal_text(&self, literal: Literal) -> String {
        if literal.negated {
            format!("not {}", self.name(literal.atom))
        } else {
            self.name(literal.atom).to_string()
        }
    }

    /// Renders an atom set as `{a,b,c}` in atom order.
    pub fn set_text(&self, set: AtomSet) -> String {
        let names: Vec<&str> = set.iter().map(|a| self.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, set: AtomSet) -> Vec<String> {
        set.iter().map(|a| self.name(a).to_string()).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

/// An atom or its default negation.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub atom: AtomId,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: AtomId) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: AtomId) -> Self {
        Literal { atom, negated: true }
    }

    /// `p` for `not p` and vice versa.
    pub fn complement(self) -> Self {
        Literal { atom: self.atom, negated: !self.negated }
    }
}

/// A rule `head :- body`, a fact when the body is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    head: AtomId,
    body: Vec<Literal>,
}

impl Clause {
    /// Duplicate body literals are dropped (first occurrence wins). A body
    /// holding both `p` and `not p` is kept; such a rule is never applicable.
    pub fn new(head: AtomId, body: Vec<Literal>) -> Self {
        let mut seen = Vec::with_capacity(body.len());
        for l in body {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        Clause { head, body: seen }
    }

    pub fn fact(head: AtomId) -> Self {
        Clause { head, body: Vec::new() }
    }

    pub fn head(&self) -> AtomId {
        self.head
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }
}

/// A forbidden body: `:- body.` rules out every world satisfying it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegrityConstraint {
    body: Vec<Literal>,
}

impl IntegrityConstraint {
    pub fn new(body: Vec<Literal>) -> Result<Self, Error> {
        if body.is_empty() {
            return Err(Error::EmptyConstraintBody);
        }
        let mut seen = Vec::with_capacity(body.len());
        for l in body {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        Ok(IntegrityConstraint { body: seen })
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }
}

/// A finite propositional logic program over a fixed alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogicProgram {
    alphabet: Alphabet,
    clauses: Vec<Clause>,
}

impl LogicProgram {
    pub fn new(alphabet: Alphabet, clauses: Vec<Clause>) -> Result<Self, Error> {
        for c in &clauses {
            check_atom(&alphabet, c.head())?;
            for l in c.body() {
                check_atom(&alphabet, l.atom)?;
            }
        }
        Ok(LogicProgram { alphabet, clauses })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clauses_with_head(&self, atom: AtomId) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(move |c| c.head() == atom)
    }

    /// Atoms that head at least one clause.
    pub fn heads(&self) -> AtomSet {
        self.clauses.iter().map(|c| c.head()).collect()
    }
}

fn check_atom(alphabet: &Alphabet, atom: AtomId) -> Result<(), Error> {
    if alphabet.contains_id(atom) {
        Ok(())
    } else {
        Err(Error::AtomOutOfRange { index: atom.index(), len: alphabet.len() })
    }
}

/// A logic program together with its abducibles and integrity constraints.
///
/// Abducibles are the externally choosable atoms; they never head a clause.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbductiveProgram {
    program: LogicProgram,
    abducibles: Vec<AtomId>,
    abducible_set: AtomSet,
    constraints: Vec<IntegrityConstraint>,
}

impl AbductiveProgram {
    pub fn new(
        program: LogicProgram,
        abducibles: Vec<AtomId>,
        constraints: Vec<IntegrityConstraint>,
    ) -> Result<Self, Error> {
        let mut distinct = Vec::new();
        let mut abducible_set = AtomSet::empty();
        for a in abducibles {
            check_atom(program.alphabet(), a)?;
            if !abducible_set.contains(a) {
                abducible_set.insert(a);
                distinct.push(a);
            }
        }
        for c in program.clauses() {
            if abducible_set.contains(c.head()) {
                return Err(Error::AbducibleHead(
                    program.alphabet().name(c.head()).to_string(),
                ));
            }
        }
        for ic in &constraints {
            for l in ic.body() {
                check_atom(program.alphabet(), l.atom)?;
            }
        }
        Ok(AbductiveProgram { program, abducibles: distinct, abducible_set, constraints })
    }

    /// A plain program, without abducibles or constraints.
    pub fn plain(program: LogicProgram) -> Self {
        AbductiveProgram {
            program,
            abducibles: Vec::new(),
            abducible_set: AtomSet::empty(),
            constraints: Vec::new(),
        }
    }

    pub fn program(&self) -> &LogicProgram {
        &self.program
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.program.alphabet()
    }

    pub fn abducibles(&self) -> &[AtomId] {
        &self.abducibles
    }

    pub fn abducible_set(&self) -> AtomSet {
        self.abducible_set
    }

    pub fn is_abducible(&self, atom: AtomId) -> bool {
        self.abducible_set.contains(atom)
    }

    pub fn constraints(&self) -> &[IntegrityConstraint] {
        &self.constraints
    }

    /// The same program with the integrity constraints dropped.
    pub fn without_constraints(&self) -> AbductiveProgram {
        AbductiveProgram { constraints: Vec::new(), ..self.clone() }
    }

    /// The same abducibles and constraints over a different clause set.
    pub(crate) fn with_program(&self, program: LogicProgram) -> Result<Self, Error> {
        AbductiveProgram::new(program, self.abducibles.clone(), self.constraints.clone())
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
