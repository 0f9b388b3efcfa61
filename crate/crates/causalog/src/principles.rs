//! Checks that a program behaves causally.
//!
//! The central property is causal irrelevance: however the world outside an
//! atom set's sphere of influence is configured, the clauses downstream of
//! the set can settle into a stable model. A program that fails this lets
//! effects constrain their causes. Stratified programs always pass;
//! [`check_irrelevance`] decides the property exhaustively for the rest and
//! hands back a replayable counterexample when it fails.
//!
//! [`check_non_interference`] tests the payoff: when irrelevance holds,
//! forcing a set of atoms by intervention leaves everything outside its
//! influence exactly as it was, whether one looks at the full program, the
//! program stripped to the unaffected part, or the intervened program.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::graph::{dependence_graph, slice, SliceRegion};
use crate::intervention::{intervene, Assignment};
use crate::semantics::{
    abductive_models_with_limit, first_unexplained_choice, stable_in, Semantics,
};
use crate::syntax::AbductiveProgram;
use crate::world::{
    all_worlds, guard, AtomSet, World, DEFAULT_ATOM_LIMIT, DEFAULT_IRRELEVANCE_LIMIT,
};

/// Why a program fails causal irrelevance.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Counterexample {
    /// An abducible choice no stable model explains: the program makes some
    /// ways the world could be impossible instead of explaining them.
    UnexplainedChoice { explanation: AtomSet },
    /// A configuration of the atoms outside `s`'s influence that the clauses
    /// downstream of `s` cannot extend to a stable model.
    UnstableSlice {
        s: AtomSet,
        fixed: AtomSet,
        partial_world: AtomSet,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct IrrelevanceVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Decides causal irrelevance exhaustively.
///
/// The program must be consistent, and for every atom set `s`, every
/// configuration of the atoms that are not downstream of `s` must extend to
/// a stable model of the downstream clauses. The search tries small `s`
/// first and skips any `s` whose downstream region repeats one already
/// checked, since the check depends on `s` only through that region.
pub fn check_irrelevance(ap: &AbductiveProgram) -> Result<IrrelevanceVerdict, Error> {
    check_irrelevance_with_limit(ap, DEFAULT_IRRELEVANCE_LIMIT)
}

pub fn check_irrelevance_with_limit(
    ap: &AbductiveProgram,
    limit: usize,
) -> Result<IrrelevanceVerdict, Error> {
    guard(ap.alphabet().len(), limit)?;
    if let Some(explanation) = first_unexplained_choice(ap, limit)? {
        return Ok(IrrelevanceVerdict {
            holds: false,
            counterexample: Some(Counterexample::UnexplainedChoice { explanation }),
        });
    }
    let n = ap.alphabet().len();
    let universe = ap.alphabet().universe();
    let graph = dependence_graph(ap.program());
    let mut subsets: Vec<AtomSet> = universe.subsets().collect();
    subsets.sort_by_key(|s| (s.len(), *s));
    let mut seen_regions: HashSet<AtomSet> = HashSet::new();
    for s in subsets {
        let downstream = graph.descendants(s)?;
        if !seen_regions.insert(downstream) {
            continue;
        }
        let above = slice(ap.program(), s, SliceRegion::Above)?;
        let fixed = universe.minus(downstream);
        let mut realized: HashSet<AtomSet> = HashSet::new();
        for w in all_worlds(n) {
            let outside = w.reduct(fixed);
            if !realized.contains(&outside) && stable_in(&above, w, outside) {
                realized.insert(outside);
            }
        }
        if let Some(partial_world) = fixed.subsets().find(|o| !realized.contains(o)) {
            return Ok(IrrelevanceVerdict {
                holds: false,
                counterexample: Some(Counterexample::UnstableSlice { s, fixed, partial_world }),
            });
        }
    }
    Ok(IrrelevanceVerdict { holds: true, counterexample: None })
}

/// Reruns the model search a counterexample claims must come up empty, and
/// returns what it finds. A genuine counterexample replays to no models at
/// all; anything else means it does not belong to this program.
pub fn replay_counterexample(
    ap: &AbductiveProgram,
    counterexample: &Counterexample,
) -> Result<Vec<World>, Error> {
    let n = ap.alphabet().len();
    guard(n, DEFAULT_ATOM_LIMIT)?;
    match *counterexample {
        Counterexample::UnexplainedChoice { explanation } => {
            if !explanation.is_subset_of(ap.abducible_set()) {
                return Err(Error::contract(
                    "counterexample explanation mentions non-abducible atoms",
                ));
            }
            Ok(all_worlds(n)
                .filter(|&w| {
                    w.reduct(ap.abducible_set()) == explanation
                        && stable_in(ap.program(), w, explanation)
                })
                .collect())
        }
        Counterexample::UnstableSlice { s, fixed, partial_world } => {
            let graph = dependence_graph(ap.program());
            if fixed != ap.alphabet().universe().minus(graph.descendants(s)?) {
                return Err(Error::contract("counterexample does not fit this program"));
            }
            if !partial_world.is_subset_of(fixed) {
                return Err(Error::contract("counterexample does not fit this program"));
            }
            let above = slice(ap.program(), s, SliceRegion::Above)?;
            Ok(all_worlds(n)
                .filter(|&w| {
                    w.reduct(fixed) == partial_world && stable_in(&above, w, partial_world)
                })
                .collect())
        }
    }
}

/// The quick sufficient condition for causal irrelevance: a stratified
/// program always satisfies it.
pub fn check_stratified_irrelevance(ap: &AbductiveProgram) -> bool {
    dependence_graph(ap.program()).is_stratified()
}

/// The three ways to look at the part of the world an intervention on `s`
/// should not touch. Each set holds stable-model restrictions to the atoms
/// outside `s` and its downstream region.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonInterferenceReport {
    pub s: AtomSet,
    pub below: AtomSet,
    pub models_of_program: BTreeSet<AtomSet>,
    pub models_of_below: BTreeSet<AtomSet>,
    pub models_after_intervention: BTreeSet<AtomSet>,
    pub equivalent: bool,
}

/// Compares the untouched part of the world across the original program, the
/// program cut down to the clauses defining that part, and the program after
/// `do(assignment)`. Under causal irrelevance all three agree for every
/// intervention on non-abducible `s`.
pub fn check_non_interference(
    ap: &AbductiveProgram,
    s: AtomSet,
    assignment: &Assignment,
) -> Result<NonInterferenceReport, Error> {
    check_non_interference_with_limit(ap, s, assignment, DEFAULT_ATOM_LIMIT)
}

pub fn check_non_interference_with_limit(
    ap: &AbductiveProgram,
    s: AtomSet,
    assignment: &Assignment,
    limit: usize,
) -> Result<NonInterferenceReport, Error> {
    guard(ap.alphabet().len(), limit)?;
    if !ap.constraints().is_empty() {
        return Err(Error::CounterfactualUnsupported);
    }
    if !s.is_subset_of(ap.alphabet().universe()) {
        return Err(Error::contract("s mentions atoms outside the alphabet"));
    }
    if !s.intersect(ap.abducible_set()).is_empty() {
        return Err(Error::contract("s must not contain abducibles"));
    }
    if assignment.atoms() != s {
        return Err(Error::contract("the assignment must bind exactly the atoms of s"));
    }
    let graph = dependence_graph(ap.program());
    let below = ap.alphabet().universe().minus(s.union(graph.descendants(s)?));
    let restrict = |ap: &AbductiveProgram| -> Result<BTreeSet<AtomSet>, Error> {
        Ok(abductive_models_with_limit(ap, Semantics::Stable, limit)?
            .into_iter()
            .map(|m| m.world.reduct(below))
            .collect())
    };
    let below_program =
        ap.with_program(slice(ap.program(), s, SliceRegion::Below)?)?;
    let intervened = intervene(ap, assignment)?;
    let models_of_program = restrict(ap)?;
    let models_of_below = restrict(&below_program)?;
    let models_after_intervention = restrict(&intervened)?;
    let equivalent =
        models_of_program == models_of_below && models_of_below == models_after_intervention;
    Ok(NonInterferenceReport {
        s,
        below,
        models_of_program,
        models_of_below,
        models_after_intervention,
        equivalent,
    })
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::parser::parse;
    use crate::syntax::Alphabet;

    const SPRINKLER: &str = "abducible c. r :- c. s :- not c. w :- r. w :- s. d :- w.";
    const HOUSES: &str = "abducible sf1. abducible sf2. f1 :- sf1. f2 :- sf2. f2 :- f1. f1 :- f2.";
    const FARMER: &str = "abducible h. abducible e. t :- p, not e. p :- not t, s. s :- h.";
    const PESTLOOP: &str = "abducible e. t :- p, not e. p :- not t, s.";

    fn program(text: &str) -> AbductiveProgram {
        parse(text).unwrap().program
    }

    fn atoms(al: &Alphabet, names: &[&str]) -> AtomSet {
        names.iter().map(|n| al.require(n).unwrap()).collect()
    }

    #[test]
    fn sprinkler_and_houses_satisfy_irrelevance() {
        for text in [SPRINKLER, HOUSES, "", "p. q :- not p."] {
            let verdict = check_irrelevance(&program(text)).unwrap();
            assert!(verdict.holds, "for {text:?}");
            assert_eq!(verdict.counterexample, None);
        }
    }

    #[test]
    fn an_even_negative_loop_is_not_stratified_yet_satisfies_irrelevance() {
        let ap = program("p :- not q. q :- not p.");
        assert!(!check_stratified_irrelevance(&ap));
        assert!(check_irrelevance(&ap).unwrap().holds);
    }

    #[test]
    fn the_farmer_program_fails_by_inconsistency() {
        let ap = program(FARMER);
        let verdict = check_irrelevance(&ap).unwrap();
        let expect = Counterexample::UnexplainedChoice {
            explanation: atoms(ap.alphabet(), &["h"]),
        };
        assert!(!verdict.holds);
        assert_eq!(verdict.counterexample, Some(expect));
        assert!(replay_counterexample(&ap, &expect).unwrap().is_empty());
    }

    #[test]
    fn the_pest_loop_fails_on_a_slice() {
        let ap = program(PESTLOOP);
        let al = ap.alphabet();
        let verdict = check_irrelevance(&ap).unwrap();
        // Everything downstream of {e} is {t, p}, the same region {s}
        // influences, so the search reports the smaller starting set.
        let expect = Counterexample::UnstableSlice {
            s: atoms(al, &["e"]),
            fixed: atoms(al, &["e", "s"]),
            partial_world: atoms(al, &["s"]),
        };
        assert!(!verdict.holds);
        assert_eq!(verdict.counterexample, Some(expect));
        assert!(replay_counterexample(&ap, &expect).unwrap().is_empty());
    }

    #[test]
    fn replay_finds_models_for_a_bogus_counterexample() {
        let ap = program(SPRINKLER);
        let fake = Counterexample::UnexplainedChoice { explanation: AtomSet::empty() };
        assert!(!replay_counterexample(&ap, &fake).unwrap().is_empty());
    }

    #[test]
    fn replay_rejects_foreign_counterexamples() {
        let ap = program(SPRINKLER);
        let al = ap.alphabet();
        let foreign = Counterexample::UnstableSlice {
            s: atoms(al, &["s"]),
            fixed: atoms(al, &["s"]),
            partial_world: AtomSet::empty(),
        };
        assert!(replay_counterexample(&ap, &foreign).is_err());
    }

    #[test]
    fn sprinkler_interventions_do_not_interfere() {
        let ap = program(SPRINKLER);
        let al = ap.alphabet();
        let s = atoms(al, &["s"]);
        for value in [true, false] {
            let a = Assignment::from_names(al, &[("s", value)]).unwrap();
            let report = check_non_interference(&ap, s, &a).unwrap();
            assert!(report.equivalent, "do(s={value})");
            assert_eq!(report.below, atoms(al, &["c", "r"]));
            let expect: BTreeSet<AtomSet> =
                [AtomSet::empty(), atoms(al, &["c", "r"])].into_iter().collect();
            assert_eq!(report.models_of_program, expect);
        }
    }

    #[test]
    fn the_farmer_intervention_interferes() {
        let ap = program(FARMER);
        let al = ap.alphabet();
        let s = atoms(al, &["t"]);
        let a = Assignment::from_names(al, &[("t", false)]).unwrap();
        let report = check_non_interference(&ap, s, &a).unwrap();
        assert!(!report.equivalent);
        assert_eq!(report.below, atoms(al, &["h", "e", "s"]));
        let program_side: BTreeSet<AtomSet> =
            [AtomSet::empty(), atoms(al, &["e"]), atoms(al, &["h", "e", "s"])]
                .into_iter()
                .collect();
        let causal_side: BTreeSet<AtomSet> = [
            AtomSet::empty(),
            atoms(al, &["e"]),
            atoms(al, &["h", "s"]),
            atoms(al, &["h", "e", "s"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(report.models_of_program, program_side);
        assert_eq!(report.models_of_below, causal_side);
        assert_eq!(report.models_after_intervention, causal_side);
    }

    #[test]
    fn non_interference_rejects_bad_arguments() {
        let ap = program(SPRINKLER);
        let al = ap.alphabet();
        let s = atoms(al, &["s"]);
        let wrong = Assignment::from_names(al, &[("w", true)]).unwrap();
        assert!(check_non_interference(&ap, s, &wrong).is_err());
        let on_abducible = atoms(al, &["c"]);
        let a = Assignment::from_names(al, &[("c", true)]).unwrap();
        assert!(check_non_interference(&ap, on_abducible, &a).is_err());
        let observed = program("abducible c. s :- not c. :- not s.");
        let s2 = atoms(observed.alphabet(), &["s"]);
        let a2 = Assignment::from_names(observed.alphabet(), &[("s", true)]).unwrap();
        assert_eq!(
            check_non_interference(&observed, s2, &a2),
            Err(Error::CounterfactualUnsupported)
        );
    }
}
