//! Supported and stable model semantics.
//!
//! Supported models are the models of the Clark completion: every atom is
//! true exactly when one of its clause bodies is. Stable models additionally
//! forbid unfounded sets in the sense of Sacca and Zaniolo: no set of true
//! atoms may owe its truth entirely to itself. Both are computed by exhaustive
//! world enumeration, which the atom-count guard keeps honest.
//!
//! Abductive models quantify over the abducible choices: a world is a model of
//! the abductive program when it is a model of the program extended with the
//! abducible facts it itself makes true, and it passes every integrity
//! constraint.

use std::collections::HashSet;
use std::fmt;

use crate::error::Error;
use crate::syntax::{AbductiveProgram, AtomId, Literal, LogicProgram};
use crate::world::{all_worlds, guard, AtomSet, World, DEFAULT_ATOM_LIMIT};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Semantics {
    Stable,
    Supported,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Stable => "stable",
            Semantics::Supported => "supported",
        })
    }
}

/// One atom's side of the Clark completion: the bodies of its clauses, in
/// clause order. An atom heading no clause gets no bodies and is thereby
/// defined false; a fact contributes the empty body, which is true.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomDefinition {
    pub atom: AtomId,
    pub bodies: Vec<Vec<Literal>>,
}

/// One definition per alphabet atom, in atom order.
pub fn clark_completion(p: &LogicProgram) -> Vec<AtomDefinition> {
    p.alphabet()
        .atoms()
        .map(|atom| AtomDefinition {
            atom,
            bodies: p
                .clauses_with_head(atom)
                .map(|c| c.body().to_vec())
                .collect(),
        })
        .collect()
}

/// Does the world satisfy every clause read as an implication?
pub fn is_model(p: &LogicProgram, w: World) -> bool {
    satisfies_clauses(p, w, AtomSet::empty())
}

fn satisfies_clauses(p: &LogicProgram, w: World, facts: AtomSet) -> bool {
    facts.is_subset_of(w.true_atoms())
        && p.clauses()
            .iter()
            .all(|c| !w.satisfies_all(c.body()) || w.contains(c.head()))
}

fn supported_in(p: &LogicProgram, w: World, facts: AtomSet) -> bool {
    p.alphabet().atoms().all(|atom| {
        let defined = facts.contains(atom)
            || p.clauses_with_head(atom).any(|c| w.satisfies_all(c.body()));
        w.contains(atom) == defined
    })
}

/// The body condition of unfoundedness: some body literal is false in the
/// world, or some positive body atom falls back into the candidate set.
fn body_blocks(body: &[Literal], w: World, i: AtomSet) -> bool {
    body.iter()
        .any(|&l| !w.satisfies(l) || (!l.negated && i.contains(l.atom)))
}

/// Is `i` an unfounded set with respect to `w`: does every clause whose head
/// lies in `i` have a body that is false in `w` or leans on `i` itself?
pub fn is_unfounded(i: AtomSet, w: World, p: &LogicProgram) -> Result<bool, Error> {
    if i.is_empty() {
        return Err(Error::contract("unfounded sets are non-empty by definition"));
    }
    if !i.is_subset_of(w.true_atoms()) {
        return Err(Error::contract(
            "an unfounded set must consist of atoms true in the world",
        ));
    }
    Ok(i.iter().all(|atom| {
        p.clauses_with_head(atom)
            .all(|c| body_blocks(c.body(), w, i))
    }))
}

/// The union of all unfounded sets with respect to `w`, computed by peeling:
/// starting from all true atoms, an atom leaves the candidate set once some
/// clause for it has a true body relying on no candidate. Atoms in `facts`
/// count as having a true empty-bodied clause.
fn gus(p: &LogicProgram, w: World, facts: AtomSet) -> AtomSet {
    let mut i = w.true_atoms().minus(facts);
    loop {
        let mut next = i;
        for atom in i.iter() {
            let externally_supported = p
                .clauses_with_head(atom)
                .any(|c| !body_blocks(c.body(), w, next));
            if externally_supported {
                next.remove(atom);
            }
        }
        if next == i {
            return i;
        }
        i = next;
    }
}

pub fn greatest_unfounded_set(w: World, p: &LogicProgram) -> AtomSet {
    gus(p, w, AtomSet::empty())
}

pub(crate) fn stable_in(p: &LogicProgram, w: World, facts: AtomSet) -> bool {
    satisfies_clauses(p, w, facts) && gus(p, w, facts).is_empty()
}

pub fn supported_models(p: &LogicProgram) -> Result<Vec<World>, Error> {
    supported_models_with_limit(p, DEFAULT_ATOM_LIMIT)
}

pub fn supported_models_with_limit(p: &LogicProgram, limit: usize) -> Result<Vec<World>, Error> {
    guard(p.alphabet().len(), limit)?;
    Ok(all_worlds(p.alphabet().len())
        .filter(|&w| supported_in(p, w, AtomSet::empty()))
        .collect())
}

pub fn stable_models(p: &LogicProgram) -> Result<Vec<World>, Error> {
    stable_models_with_limit(p, DEFAULT_ATOM_LIMIT)
}

pub fn stable_models_with_limit(p: &LogicProgram, limit: usize) -> Result<Vec<World>, Error> {
    guard(p.alphabet().len(), limit)?;
    Ok(all_worlds(p.alphabet().len())
        .filter(|&w| stable_in(p, w, AtomSet::empty()))
        .collect())
}

/// The abducible atoms a model makes true.
pub type Explanation = AtomSet;

/// A model of an abductive program together with the choice explaining it.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AbductiveModel {
    pub explanation: Explanation,
    pub world: World,
    pub semantics: Semantics,
}

fn passes_constraints(ap: &AbductiveProgram, w: World) -> bool {
    ap.constraints().iter().all(|ic| !w.satisfies_all(ic.body()))
}

/// All models of the abductive program under the chosen semantics, in
/// canonical world order. Each world is a model of the program plus its own
/// abducible choice, and violates no integrity constraint.
pub fn abductive_models(
    ap: &AbductiveProgram,
    semantics: Semantics,
) -> Result<Vec<AbductiveModel>, Error> {
    abductive_models_with_limit(ap, semantics, DEFAULT_ATOM_LIMIT)
}

pub fn abductive_models_with_limit(
    ap: &AbductiveProgram,
    semantics: Semantics,
    limit: usize,
) -> Result<Vec<AbductiveModel>, Error> {
    guard(ap.alphabet().len(), limit)?;
    let p = ap.program();
    let mut out = Vec::new();
    for w in all_worlds(ap.alphabet().len()) {
        if !passes_constraints(ap, w) {
            continue;
        }
        let explanation = w.reduct(ap.abducible_set());
        let is_model = match semantics {
            Semantics::Stable => stable_in(p, w, explanation),
            Semantics::Supported => supported_in(p, w, explanation),
        };
        if is_model {
            out.push(AbductiveModel { explanation, world: w, semantics });
        }
    }
    Ok(out)
}

/// The smallest abducible choice (in canonical order) under which the program
/// has no stable model, ignoring integrity constraints; `None` when every
/// choice is explained.
pub(crate) fn first_unexplained_choice(
    ap: &AbductiveProgram,
    limit: usize,
) -> Result<Option<AtomSet>, Error> {
    guard(ap.alphabet().len(), limit)?;
    let p = ap.program();
    let mut explained: HashSet<AtomSet> = HashSet::new();
    for w in all_worlds(ap.alphabet().len()) {
        let choice = w.reduct(ap.abducible_set());
        if !explained.contains(&choice) && stable_in(p, w, choice) {
            explained.insert(choice);
        }
    }
    Ok(ap
        .abducible_set()
        .subsets()
        .find(|choice| !explained.contains(choice)))
}

/// Does every abducible choice admit at least one stable model? Integrity
/// constraints play no part here.
pub fn is_consistent(ap: &AbductiveProgram) -> Result<bool, Error> {
    is_consistent_with_limit(ap, DEFAULT_ATOM_LIMIT)
}

pub fn is_consistent_with_limit(ap: &AbductiveProgram, limit: usize) -> Result<bool, Error> {
    Ok(first_unexplained_choice(ap, limit)?.is_none())
}
