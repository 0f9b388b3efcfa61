//! Interventions and the structural-causal-model reading of a program.
//!
//! An intervention `do(p = v)` severs an atom from its usual causes: every
//! clause with head `p` is removed, and for a true assignment the bare fact
//! `p.` takes the place of the first removed clause. Abducibles cannot be
//! intervened on; they have no defining clauses to sever, and choosing their
//! value is what explanations already do.
//!
//! [`cm_semantics`] reads a constraint-free program as a structural causal
//! model: the abducibles become external variables and every other atom gets
//! one equation, the disjunction of its clause bodies. Interventions commute
//! with this reading, replacing the target's equation by a constant.

use std::fmt::Write as _;

use crate::error::Error;
use crate::syntax::{AbductiveProgram, Alphabet, AtomId, Clause, Literal, LogicProgram};
use crate::world::{all_worlds, guard, AtomSet, World, DEFAULT_ATOM_LIMIT};

/// A choice of truth values for some atoms, each bound once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    pairs: Vec<(AtomId, bool)>,
}

impl Assignment {
    pub fn from_pairs(
        alphabet: &Alphabet,
        pairs: impl IntoIterator<Item = (AtomId, bool)>,
    ) -> Result<Self, Error> {
        let mut distinct = Vec::new();
        for (atom, value) in pairs {
            if !alphabet.contains_id(atom) {
                return Err(Error::AtomOutOfRange { index: atom.index(), len: alphabet.len() });
            }
            if distinct.iter().any(|&(a, _)| a == atom) {
                return Err(Error::ConflictingAssignment(alphabet.name(atom).to_string()));
            }
            distinct.push((atom, value));
        }
        Ok(Assignment { pairs: distinct })
    }

    pub fn from_names(alphabet: &Alphabet, pairs: &[(&str, bool)]) -> Result<Self, Error> {
        let resolved = pairs
            .iter()
            .map(|&(name, value)| Ok((alphabet.require(name)?, value)))
            .collect::<Result<Vec<_>, Error>>()?;
        Assignment::from_pairs(alphabet, resolved)
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, bool)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn atoms(&self) -> AtomSet {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    pub fn get(&self, atom: AtomId) -> Option<bool> {
        self.pairs.iter().find(|&&(a, _)| a == atom).map(|&(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The program after `do(assignment)`: clauses for assigned heads are gone,
/// true assignments become facts. Abducibles, their declarations, and all
/// other clauses are untouched.
///
/// Programs with integrity constraints are rejected: observations filter what
/// may be actual, interventions change what is caused, and applying one after
/// the other is counterfactual reasoning this function does not do.
pub fn intervene(ap: &AbductiveProgram, assignment: &Assignment) -> Result<AbductiveProgram, Error> {
    if !ap.constraints().is_empty() {
        return Err(Error::CounterfactualUnsupported);
    }
    let alphabet = ap.alphabet();
    for (atom, _) in assignment.iter() {
        if !alphabet.contains_id(atom) {
            return Err(Error::AtomOutOfRange { index: atom.index(), len: alphabet.len() });
        }
        if ap.is_abducible(atom) {
            return Err(Error::AbducibleIntervention(alphabet.name(atom).to_string()));
        }
    }
    let mut clauses = Vec::with_capacity(ap.program().clauses().len());
    let mut placed = AtomSet::empty();
    for clause in ap.program().clauses() {
        match assignment.get(clause.head()) {
            None => clauses.push(clause.clone()),
            Some(value) => {
                if !placed.contains(clause.head()) {
                    placed.insert(clause.head());
                    if value {
                        clauses.push(Clause::fact(clause.head()));
                    }
                }
            }
        }
    }
    for (atom, value) in assignment.iter() {
        if value && !placed.contains(atom) {
            clauses.push(Clause::fact(atom));
        }
    }
    ap.with_program(LogicProgram::new(alphabet.clone(), clauses)?)
}

/// One structural equation: the atom holds exactly when some conjunct of the
/// disjunctive normal form does. An empty conjunct is true, an empty
/// disjunction false.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equation {
    pub atom: AtomId,
    pub dnf: Vec<Vec<Literal>>,
}

impl Equation {
    fn holds_in(&self, w: World) -> bool {
        w.contains(self.atom) == self.dnf.iter().any(|conj| w.satisfies_all(conj))
    }
}

/// A structural causal model over propositional variables: external variables
/// take any value, every internal variable is determined by its equation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuralCausalModel {
    alphabet: Alphabet,
    external: Vec<AtomId>,
    external_set: AtomSet,
    equations: Vec<Equation>,
}

/// Reads a constraint-free program as a structural causal model. The
/// abducibles become the external variables; each internal atom's equation
/// collects its clause bodies in program order.
pub fn cm_semantics(ap: &AbductiveProgram) -> Result<StructuralCausalModel, Error> {
    if !ap.constraints().is_empty() {
        return Err(Error::CounterfactualUnsupported);
    }
    let alphabet = ap.alphabet().clone();
    let equations = alphabet
        .atoms()
        .filter(|&a| !ap.is_abducible(a))
        .map(|atom| Equation {
            atom,
            dnf: ap
                .program()
                .clauses_with_head(atom)
                .map(|c| c.body().to_vec())
                .collect(),
        })
        .collect();
    Ok(StructuralCausalModel {
        alphabet,
        external: ap.abducibles().to_vec(),
        external_set: ap.abducible_set(),
        equations,
    })
}

impl StructuralCausalModel {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn external(&self) -> &[AtomId] {
        &self.external
    }

    pub fn external_set(&self) -> AtomSet {
        self.external_set
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Worlds satisfying every equation, in canonical order.
    pub fn solutions(&self) -> Result<Vec<World>, Error> {
        self.solutions_with_limit(DEFAULT_ATOM_LIMIT)
    }

    pub fn solutions_with_limit(&self, limit: usize) -> Result<Vec<World>, Error> {
        guard(self.alphabet.len(), limit)?;
        Ok(all_worlds(self.alphabet.len())
            .filter(|&w| self.equations.iter().all(|eq| eq.holds_in(w)))
            .collect())
    }

    /// The model after `do(assignment)`: each assigned variable's equation
    /// becomes the constant true or false. External variables have no
    /// equation to replace and are rejected.
    pub fn intervene(&self, assignment: &Assignment) -> Result<Self, Error> {
        for (atom, _) in assignment.iter() {
            if !self.alphabet.contains_id(atom) {
                return Err(Error::AtomOutOfRange {
                    index: atom.index(),
                    len: self.alphabet.len(),
                });
            }
            if self.external_set.contains(atom) {
                return Err(Error::ExternalIntervention(self.alphabet.name(atom).to_string()));
            }
        }
        let equations = self
            .equations
            .iter()
            .map(|eq| match assignment.get(eq.atom) {
                None => eq.clone(),
                Some(true) => Equation { atom: eq.atom, dnf: vec![vec![]] },
                Some(false) => Equation { atom: eq.atom, dnf: vec![] },
            })
            .collect();
        Ok(StructuralCausalModel { equations, ..self.clone() })
    }

    /// Printed form: the external variables on one line, then one `:=` line
    /// per equation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.external.is_empty() {
            let names: Vec<&str> = self.external.iter().map(|&a| self.alphabet.name(a)).collect();
            writeln!(out, "external: {}", names.join(", ")).unwrap();
        }
        for eq in &self.equations {
            writeln!(out, "{} := {}", self.alphabet.name(eq.atom), self.dnf_text(&eq.dnf))
                .unwrap();
        }
        out
    }

    fn dnf_text(&self, dnf: &[Vec<Literal>]) -> String {
        if dnf.is_empty() {
            return "false".to_string();
        }
        let conj_text = |conj: &[Literal]| -> String {
            if conj.is_empty() {
                return "true".to_string();
            }
            let parts: Vec<String> =
                conj.iter().map(|&l| self.alphabet.literal_text(l)).collect();
            if conj.len() > 1 && dnf.len() > 1 {
                format!("({})", parts.join(" & "))
            } else {
                parts.join(" & ")
            }
        };
        dnf.iter().map(|c| conj_text(c)).collect::<Vec<_>>().join(" | ")
    }
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::parser::{parse, render};

    const SPRINKLER: &str = "abducible c. r :- c. s :- not c. w :- r. w :- s. d :- w.";
    const HOUSES: &str = "abducible sf1. abducible sf2. f1 :- sf1. f2 :- sf2. f2 :- f1. f1 :- f2.";

    fn program(text: &str) -> AbductiveProgram {
        parse(text).unwrap().program
    }

    fn assign(ap: &AbductiveProgram, pairs: &[(&str, bool)]) -> Assignment {
        Assignment::from_names(ap.alphabet(), pairs).unwrap()
    }

    #[test]
    fn forcing_the_sprinkler_on_replaces_its_clause_with_a_fact() {
        let ap = program(SPRINKLER);
        let after = intervene(&ap, &assign(&ap, &[("s", true)])).unwrap();
        assert_eq!(render(&after), "abducible c.\nr :- c.\ns.\nw :- r.\nw :- s.\nd :- w.\n");
    }

    #[test]
    fn forcing_an_atom_off_just_removes_its_clauses() {
        let ap = program(HOUSES);
        let after = intervene(&ap, &assign(&ap, &[("f1", false)])).unwrap();
        let heads: Vec<&str> = after
            .program()
            .clauses()
            .iter()
            .map(|c| after.alphabet().name(c.head()))
            .collect();
        assert_eq!(heads, ["f2", "f2"]);
        assert_eq!(after.abducibles(), ap.abducibles());
    }

    #[test]
    fn a_true_target_heading_no_clause_is_appended() {
        let ap = program("abducible a. p :- a, not q.");
        let after = intervene(&ap, &assign(&ap, &[("q", true)])).unwrap();
        assert_eq!(render(&after), "abducible a.\np :- a, not q.\nq.\n");
    }

    #[test]
    fn clause_counts_shift_by_the_removed_and_added_clauses() {
        let ap = program(SPRINKLER);
        for (name, value, expect) in [("w", true, 4), ("w", false, 3), ("d", true, 5)] {
            let after = intervene(&ap, &assign(&ap, &[(name, value)])).unwrap();
            assert_eq!(after.program().clauses().len(), expect, "do({name}={value})");
        }
    }

    #[test]
    fn intervention_rejects_abducibles_and_constraints() {
        let ap = program(SPRINKLER);
        assert_eq!(
            intervene(&ap, &assign(&ap, &[("c", true)])),
            Err(Error::AbducibleIntervention("c".into()))
        );
        let observed = program("abducible c. r :- c. s :- not c. :- not s.");
        assert_eq!(
            intervene(&observed, &assign(&observed, &[("s", true)])),
            Err(Error::CounterfactualUnsupported)
        );
    }

    #[test]
    fn assignments_reject_conflicting_bindings() {
        let ap = program(SPRINKLER);
        assert_eq!(
            Assignment::from_names(ap.alphabet(), &[("s", true), ("s", true)]),
            Err(Error::ConflictingAssignment("s".into()))
        );
    }

    #[test]
    fn sprinkler_equations() {
        let ap = program(SPRINKLER);
        let scm = cm_semantics(&ap).unwrap();
        let al = scm.alphabet();
        assert_eq!(al.set_names(scm.external_set()), ["c"]);
        let shapes: Vec<(&str, String)> = scm
            .equations()
            .iter()
            .map(|eq| (al.name(eq.atom), scm.dnf_text(&eq.dnf)))
            .collect();
        assert_eq!(
            shapes,
            [
                ("r", "c".to_string()),
                ("s", "not c".to_string()),
                ("w", "r | s".to_string()),
                ("d", "w".to_string()),
            ]
        );
    }

    #[test]
    fn solutions_are_the_supported_worlds() {
        let ap = program(SPRINKLER);
        let scm = cm_semantics(&ap).unwrap();
        let solutions = scm.solutions().unwrap();
        let expect: Vec<World> = [&["c", "r", "w", "d"][..], &["s", "w", "d"][..]]
            .iter()
            .map(|names| World::from_names(scm.alphabet(), names).unwrap())
            .collect();
        assert_eq!(solutions, {
            let mut e = expect;
            e.sort();
            e
        });
    }

    #[test]
    fn intervened_solutions() {
        let ap = program(SPRINKLER);
        let scm = cm_semantics(&ap).unwrap();
        let forced = scm.intervene(&assign(&ap, &[("s", true)])).unwrap();
        let solutions = forced.solutions().unwrap();
        let expect: Vec<World> = [&["s", "w", "d"][..], &["c", "r", "s", "w", "d"][..]]
            .iter()
            .map(|names| World::from_names(scm.alphabet(), names).unwrap())
            .collect();
        assert_eq!(solutions, {
            let mut e = expect;
            e.sort();
            e
        });
    }

    #[test]
    fn model_reading_commutes_with_intervention() {
        let ap = program(SPRINKLER);
        let a = assign(&ap, &[("w", false), ("d", true)]);
        let surgery_first = cm_semantics(&intervene(&ap, &a).unwrap()).unwrap();
        let model_first = cm_semantics(&ap).unwrap().intervene(&a).unwrap();
        assert_eq!(surgery_first, model_first);
    }

    #[test]
    fn external_variables_cannot_be_intervened_on() {
        let ap = program(SPRINKLER);
        let scm = cm_semantics(&ap).unwrap();
        assert_eq!(
            scm.intervene(&assign(&ap, &[("c", false)])),
            Err(Error::ExternalIntervention("c".into()))
        );
    }

    #[test]
    fn model_text() {
        let ap = program(SPRINKLER);
        let scm = cm_semantics(&ap).unwrap();
        assert_eq!(
            scm.to_text(),
            "external: c\nr := c\ns := not c\nw := r | s\nd := w\n"
        );
        let forced = scm
            .intervene(&assign(&ap, &[("s", true), ("d", false)]))
            .unwrap();
        assert_eq!(
            forced.to_text(),
            "external: c\nr := c\ns := true\nw := r | s\nd := false\n"
        );
    }

    #[test]
    fn conjunctions_parenthesize_only_among_alternatives() {
        let ap = program("abducible a. abducible b. p :- a, b. p :- not a. q :- a, b.");
        let scm = cm_semantics(&ap).unwrap();
        assert_eq!(
            scm.to_text(),
            "external: a, b\np := (a & b) | not a\nq := a & b\n"
        );
    }
}
