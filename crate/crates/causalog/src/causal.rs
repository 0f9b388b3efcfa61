//! Causal theories and causal systems in the style of Bochman's causal
//! calculus.
//!
//! A causal rule `b1, ..., bn => l` says its cause explains the literal `l`.
//! Derivability closes a premise set under the rules, with a contradictory
//! premise or conclusion set explaining everything. A world is causal for a
//! theory when its literal completion explains exactly itself, and causally
//! founded for a system when the external part of its completion explains the
//! rest, every observation holding.
//!
//! The Bochman transformation reads an abductive logic program as such a
//! system: each clause becomes a rule, the abducibles and all negative
//! literals become external premises, and the integrity constraints become
//! observations. It is a bijection onto the atomic systems with default
//! negation, and [`inverse_bochman`] walks it backwards.

use std::fmt::Write as _;

use crate::error::Error;
use crate::syntax::{
    AbductiveProgram, Alphabet, AtomId, Clause, IntegrityConstraint, Literal, LogicProgram,
};
use crate::world::{
    all_worlds, guard, literal_completion, AtomSet, LiteralSet, World, DEFAULT_ATOM_LIMIT,
};

/// `cause => effect`: the conjunction of the cause literals explains the
/// effect literal. An empty cause always fires.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CausalRule {
    cause: Vec<Literal>,
    effect: Literal,
}

impl CausalRule {
    pub fn new(cause: Vec<Literal>, effect: Literal) -> Self {
        let mut seen = Vec::with_capacity(cause.len());
        for l in cause {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        CausalRule { cause: seen, effect }
    }

    pub fn cause(&self) -> &[Literal] {
        &self.cause
    }

    pub fn effect(&self) -> Literal {
        self.effect
    }

    /// Atomic rules conclude an atom, never a negated literal.
    pub fn is_atomic(&self) -> bool {
        !self.effect.negated
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CausalTheory {
    rules: Vec<CausalRule>,
}

impl CausalTheory {
    pub fn new(rules: Vec<CausalRule>) -> Self {
        CausalTheory { rules }
    }

    pub fn rules(&self) -> &[CausalRule] {
        &self.rules
    }

    pub fn is_atomic(&self) -> bool {
        self.rules.iter().all(|r| r.is_atomic())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    fn max_atom(&self) -> Option<AtomId> {
        self.rules
            .iter()
            .flat_map(|r| r.cause.iter().chain(std::iter::once(&r.effect)))
            .map(|l| l.atom)
            .max()
    }

    fn check_within(&self, alphabet: &Alphabet) -> Result<(), Error> {
        match self.max_atom() {
            Some(a) if !alphabet.contains_id(a) => {
                Err(Error::AtomOutOfRange { index: a.index(), len: alphabet.len() })
            }
            _ => Ok(()),
        }
    }
}

/// Everything the premises explain: the least set of literals closed under
/// the rules, where a rule fires once its whole cause is available among
/// premises or previous conclusions. The moment the available literals contain
/// a complementary pair, everything over the alphabet is explained.
///
/// Premises explain themselves only if a rule says so; the closure is not
/// reflexive.
pub fn derivable(theory: &CausalTheory, premises: LiteralSet, alphabet: &Alphabet) -> LiteralSet {
    debug_assert!(theory.check_within(alphabet).is_ok());
    let mut derived = LiteralSet::empty();
    loop {
        let available = premises.union(derived);
        if available.has_complementary_pair() {
            return LiteralSet::all(alphabet.len());
        }
        let mut changed = false;
        for rule in theory.rules() {
            if !derived.contains(rule.effect)
                && rule.cause.iter().all(|&l| available.contains(l))
            {
                derived.insert(rule.effect);
                changed = true;
            }
        }
        if !changed {
            return derived;
        }
    }
}

/// Worlds whose literal completion explains exactly itself.
pub fn causal_worlds(theory: &CausalTheory, alphabet: &Alphabet) -> Result<Vec<World>, Error> {
    causal_worlds_with_limit(theory, alphabet, DEFAULT_ATOM_LIMIT)
}

pub fn causal_worlds_with_limit(
    theory: &CausalTheory,
    alphabet: &Alphabet,
    limit: usize,
) -> Result<Vec<World>, Error> {
    guard(alphabet.len(), limit)?;
    theory.check_within(alphabet)?;
    Ok(all_worlds(alphabet.len())
        .filter(|&w| {
            let completion = literal_completion(w, alphabet).unwrap();
            derivable(theory, completion, alphabet) == completion
        })
        .collect())
}

/// Worlds satisfying the theory's completion: each literal holds exactly when
/// some rule for it has a true cause. For literal theories this coincides with
/// [`causal_worlds`]; the two are computed along different routes.
pub fn completion_models(theory: &CausalTheory, alphabet: &Alphabet) -> Result<Vec<World>, Error> {
    completion_models_with_limit(theory, alphabet, DEFAULT_ATOM_LIMIT)
}

pub fn completion_models_with_limit(
    theory: &CausalTheory,
    alphabet: &Alphabet,
    limit: usize,
) -> Result<Vec<World>, Error> {
    guard(alphabet.len(), limit)?;
    theory.check_within(alphabet)?;
    let satisfies = |w: World| {
        alphabet.atoms().all(|atom| {
            [Literal::pos(atom), Literal::neg(atom)].into_iter().all(|l| {
                let explained = theory
                    .rules()
                    .iter()
                    .any(|r| r.effect == l && w.satisfies_all(r.cause()));
                w.satisfies(l) == explained
            })
        })
    };
    Ok(all_worlds(alphabet.len()).filter(|&w| satisfies(w)).collect())
}

/// A causal theory plus the premises the world outside supplies and the
/// observations any acceptable world must satisfy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CausalSystem {
    alphabet: Alphabet,
    knowledge: CausalTheory,
    external: Vec<Literal>,
    observations: Vec<IntegrityConstraint>,
}

impl CausalSystem {
    pub fn new(
        alphabet: Alphabet,
        knowledge: CausalTheory,
        external: Vec<Literal>,
        observations: Vec<IntegrityConstraint>,
    ) -> Result<Self, Error> {
        knowledge.check_within(&alphabet)?;
        let mut distinct = Vec::with_capacity(external.len());
        for l in external {
            if !alphabet.contains_id(l.atom) {
                return Err(Error::AtomOutOfRange { index: l.atom.index(), len: alphabet.len() });
            }
            if !distinct.contains(&l) {
                distinct.push(l);
            }
        }
        for ic in &observations {
            for l in ic.body() {
                if !alphabet.contains_id(l.atom) {
                    return Err(Error::AtomOutOfRange {
                        index: l.atom.index(),
                        len: alphabet.len(),
                    });
                }
            }
        }
        Ok(CausalSystem { alphabet, knowledge, external: distinct, observations })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn knowledge(&self) -> &CausalTheory {
        &self.knowledge
    }

    pub fn external(&self) -> &[Literal] {
        &self.external
    }

    pub fn external_set(&self) -> LiteralSet {
        self.external.iter().copied().collect()
    }

    pub fn observations(&self) -> &[IntegrityConstraint] {
        &self.observations
    }

    /// Default negation: the negation of every atom is an external premise,
    /// and no external premise is the effect of a knowledge rule.
    pub fn applies_default_negation(&self) -> bool {
        self.default_negation_gap().is_none()
    }

    fn default_negation_gap(&self) -> Option<String> {
        let externals = self.external_set();
        for atom in self.alphabet.atoms() {
            if !externals.contains(Literal::neg(atom)) {
                return Some(format!(
                    "`not {}` is not an external premise",
                    self.alphabet.name(atom)
                ));
            }
        }
        for rule in self.knowledge.rules() {
            if externals.contains(rule.effect) {
                return Some(format!(
                    "external premise `{}` is the effect of a rule",
                    self.alphabet.literal_text(rule.effect)
                ));
            }
        }
        None
    }

    /// The knowledge plus one self-explaining default `l => l` per external
    /// premise.
    pub fn explanatory_closure(&self) -> CausalTheory {
        let mut rules = self.knowledge.rules.clone();
        rules.extend(self.external.iter().map(|&l| CausalRule::new(vec![l], l)));
        CausalTheory::new(rules)
    }

    fn passes_observations(&self, w: World) -> bool {
        self.observations.iter().all(|ic| !w.satisfies_all(ic.body()))
    }

    /// Printed form: knowledge rules, the external premises on one line, and
    /// the observations; the self-explaining defaults stay implicit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("rules:\n");
        for rule in self.knowledge.rules() {
            writeln!(out, "  {}", rule_text(rule, &self.alphabet)).unwrap();
        }
        let externals: Vec<String> = self
            .external
            .iter()
            .map(|&l| self.alphabet.literal_text(l))
            .collect();
        writeln!(out, "external: {}", externals.join(", ")).unwrap();
        if !self.observations.is_empty() {
            out.push_str("observations:\n");
            for ic in &self.observations {
                let body: Vec<String> = ic
                    .body()
                    .iter()
                    .map(|&l| self.alphabet.literal_text(l))
                    .collect();
                writeln!(out, "  :- {}.", body.join(", ")).unwrap();
            }
        }
        out
    }
}

pub fn rule_text(rule: &CausalRule, alphabet: &Alphabet) -> String {
    let cause = if rule.cause.is_empty() {
        "true".to_string()
    } else {
        rule.cause
            .iter()
            .map(|&l| alphabet.literal_text(l))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!("{} => {}", cause, alphabet.literal_text(rule.effect))
}

/// How a world relates to a causal system's founding condition.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum WorldFounding {
    Founded,
    /// An observation is violated.
    ObservationViolated { constraint: usize },
    /// The external premises explain a literal the world falsifies, against
    /// the principle that everything explainable holds (sufficient
    /// causation).
    DerivedButFalse { literal: Literal },
    /// The world holds a literal its external premises cannot explain,
    /// against the principle that everything holding has an explanation
    /// (sufficient reason).
    TrueButUnexplained { literal: Literal },
}

/// Checks both directions of the founding condition separately, so a failure
/// names the principle it violates.
pub fn classify_world(cs: &CausalSystem, w: World) -> Result<WorldFounding, Error> {
    w.check_within(cs.alphabet())?;
    if let Some(i) = cs
        .observations()
        .iter()
        .position(|ic| w.satisfies_all(ic.body()))
    {
        return Ok(WorldFounding::ObservationViolated { constraint: i });
    }
    let completion = literal_completion(w, cs.alphabet())?;
    let premises = completion.intersect(cs.external_set());
    let explained = derivable(&cs.explanatory_closure(), premises, cs.alphabet());
    if let Some(literal) = explained.iter().find(|l| !completion.contains(*l)) {
        return Ok(WorldFounding::DerivedButFalse { literal });
    }
    if let Some(literal) = completion.iter().find(|l| !explained.contains(*l)) {
        return Ok(WorldFounding::TrueButUnexplained { literal });
    }
    Ok(WorldFounding::Founded)
}

/// Worlds that satisfy the observations and whose external premises explain
/// exactly their literal completion.
pub fn causally_founded_worlds(cs: &CausalSystem) -> Result<Vec<World>, Error> {
    causally_founded_worlds_with_limit(cs, DEFAULT_ATOM_LIMIT)
}

pub fn causally_founded_worlds_with_limit(
    cs: &CausalSystem,
    limit: usize,
) -> Result<Vec<World>, Error> {
    guard(cs.alphabet().len(), limit)?;
    let closure = cs.explanatory_closure();
    let externals = cs.external_set();
    Ok(all_worlds(cs.alphabet().len())
        .filter(|&w| {
            if !cs.passes_observations(w) {
                return false;
            }
            let completion = literal_completion(w, cs.alphabet()).unwrap();
            let premises = completion.intersect(externals);
            derivable(&closure, premises, cs.alphabet()) == completion
        })
        .collect())
}

/// Whether an explanation reaches into a set of atoms from wholly outside it.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ExplanationClass {
    /// Concludes inside `i` from true literals none of which lie in `i`.
    External,
    Internal,
}

pub fn classify_explanation(
    cause: &[Literal],
    effect: Literal,
    w: World,
    i: AtomSet,
) -> Result<ExplanationClass, Error> {
    if !i.is_subset_of(w.true_atoms()) {
        return Err(Error::contract(
            "the distinguished set must consist of atoms true in the world",
        ));
    }
    let effect_in_i = !effect.negated && i.contains(effect.atom);
    let cause_outside = cause
        .iter()
        .all(|&l| w.satisfies(l) && (l.negated || !i.contains(l.atom)));
    if effect_in_i && cause_outside {
        Ok(ExplanationClass::External)
    } else {
        Ok(ExplanationClass::Internal)
    }
}

/// Reads an abductive logic program as a causal system: clause bodies cause
/// their heads, the abducibles and every negative literal are external, and
/// the integrity constraints become observations.
pub fn bochman_transform(ap: &AbductiveProgram) -> CausalSystem {
    let alphabet = ap.alphabet().clone();
    let rules = ap
        .program()
        .clauses()
        .iter()
        .map(|c| CausalRule::new(c.body().to_vec(), Literal::pos(c.head())))
        .collect();
    let mut external: Vec<Literal> =
        ap.abducibles().iter().map(|&a| Literal::pos(a)).collect();
    external.extend(alphabet.atoms().map(Literal::neg));
    CausalSystem {
        alphabet,
        knowledge: CausalTheory::new(rules),
        external,
        observations: ap.constraints().to_vec(),
    }
}

/// Reads an atomic causal system with default negation back as an abductive
/// logic program: rules become clauses, the positive external premises become
/// the abducibles, and observations become integrity constraints.
pub fn inverse_bochman(cs: &CausalSystem) -> Result<AbductiveProgram, Error> {
    if let Some(rule) = cs.knowledge.rules().iter().find(|r| !r.is_atomic()) {
        return Err(Error::NotAtomic(cs.alphabet.name(rule.effect.atom).to_string()));
    }
    if let Some(gap) = cs.default_negation_gap() {
        return Err(Error::NotDefaultNegation(gap));
    }
    let clauses = cs
        .knowledge
        .rules()
        .iter()
        .map(|r| Clause::new(r.effect.atom, r.cause.clone()))
        .collect();
    let abducibles = cs
        .external
        .iter()
        .filter(|l| !l.negated)
        .map(|l| l.atom)
        .collect();
    let program = LogicProgram::new(cs.alphabet.clone(), clauses)?;
    AbductiveProgram::new(program, abducibles, cs.observations.clone())
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::parser::parse;

    fn program(text: &str) -> AbductiveProgram {
        parse(text).unwrap().program
    }

    fn lit(al: &Alphabet, name: &str) -> Literal {
        Literal::pos(al.require(name).unwrap())
    }

    fn nlit(al: &Alphabet, name: &str) -> Literal {
        Literal::neg(al.require(name).unwrap())
    }

    const HOUSES: &str = "abducible sf1. abducible sf2. f1 :- sf1. f2 :- sf2. f2 :- f1. f1 :- f2.";
    const SPRINKLER: &str = "abducible c. r :- c. s :- not c. w :- r. w :- s. d :- w.";

    #[test]
    fn houses_transform_has_four_rules_and_six_premises() {
        let ap = program(HOUSES);
        let cs = bochman_transform(&ap);
        let al = cs.alphabet();
        assert_eq!(cs.knowledge().len(), 4);
        assert_eq!(
            cs.external(),
            &[
                lit(al, "sf1"),
                lit(al, "sf2"),
                nlit(al, "sf1"),
                nlit(al, "sf2"),
                nlit(al, "f1"),
                nlit(al, "f2"),
            ]
        );
        assert!(cs.observations().is_empty());
        assert!(cs.knowledge().is_atomic());
        assert!(cs.applies_default_negation());
    }

    #[test]
    fn houses_closure_has_ten_rules() {
        let ap = program(HOUSES);
        let closure = bochman_transform(&ap).explanatory_closure();
        assert_eq!(closure.len(), 10);
        // The four knowledge rules first, then one default per premise.
        let al = ap.alphabet();
        assert_eq!(closure.rules()[4], CausalRule::new(vec![lit(al, "sf1")], lit(al, "sf1")));
        assert_eq!(closure.rules()[9], CausalRule::new(vec![nlit(al, "f2")], nlit(al, "f2")));
    }

    #[test]
    fn sprinkler_closure_has_eleven_rules() {
        let ap = program(SPRINKLER);
        assert_eq!(bochman_transform(&ap).explanatory_closure().len(), 11);
    }

    #[test]
    fn derivable_chains_through_defaults() {
        let ap = program(HOUSES);
        let cs = bochman_transform(&ap);
        let al = cs.alphabet();
        let closure = cs.explanatory_closure();
        let premises: LiteralSet = [lit(al, "sf1"), nlit(al, "sf2")].into_iter().collect();
        let derived = derivable(&closure, premises, al);
        let expect: LiteralSet = [lit(al, "sf1"), nlit(al, "sf2"), lit(al, "f1"), lit(al, "f2")]
            .into_iter()
            .collect();
        assert_eq!(derived, expect);
    }

    #[test]
    fn derivable_from_nothing_is_nothing() {
        let ap = program(HOUSES);
        let cs = bochman_transform(&ap);
        let derived = derivable(&cs.explanatory_closure(), LiteralSet::empty(), cs.alphabet());
        assert!(derived.is_empty());
    }

    #[test]
    fn contradictory_premises_explain_everything() {
        let ap = program(HOUSES);
        let al = ap.alphabet();
        let theory = bochman_transform(&ap).explanatory_closure();
        let premises: LiteralSet = [lit(al, "f1"), nlit(al, "f1")].into_iter().collect();
        assert_eq!(derivable(&theory, premises, al), LiteralSet::all(al.len()));
    }

    #[test]
    fn derived_contradictions_explode_too() {
        // p => q and p => not q: the premises are fine, the conclusions clash.
        let al = Alphabet::from_names(["p", "q"]).unwrap();
        let theory = CausalTheory::new(vec![
            CausalRule::new(vec![lit(&al, "p")], lit(&al, "q")),
            CausalRule::new(vec![lit(&al, "p")], nlit(&al, "q")),
        ]);
        let premises: LiteralSet = [lit(&al, "p")].into_iter().collect();
        assert_eq!(derivable(&theory, premises, &al), LiteralSet::all(2));
    }

    #[test]
    fn the_empty_theory_has_no_causal_worlds() {
        let al = Alphabet::from_names(["p"]).unwrap();
        let theory = CausalTheory::default();
        assert!(causal_worlds(&theory, &al).unwrap().is_empty());
        assert!(completion_models(&theory, &al).unwrap().is_empty());
    }

    #[test]
    fn self_explaining_defaults_make_every_world_causal() {
        let al = Alphabet::from_names(["p"]).unwrap();
        let theory = CausalTheory::new(vec![
            CausalRule::new(vec![lit(&al, "p")], lit(&al, "p")),
            CausalRule::new(vec![nlit(&al, "p")], nlit(&al, "p")),
        ]);
        assert_eq!(causal_worlds(&theory, &al).unwrap().len(), 2);
    }

    #[test]
    fn the_fire_cycle_world_is_causal_but_not_founded() {
        let ap = program(HOUSES);
        let cs = bochman_transform(&ap);
        let closure = cs.explanatory_closure();
        let w = World::from_names(cs.alphabet(), &["f1", "f2"]).unwrap();
        let causal = causal_worlds(&closure, cs.alphabet()).unwrap();
        assert!(causal.contains(&w));
        let founded = causally_founded_worlds(&cs).unwrap();
        assert!(!founded.contains(&w));
        assert_eq!(
            classify_world(&cs, w).unwrap(),
            WorldFounding::TrueButUnexplained {
                literal: lit(cs.alphabet(), "f1")
            }
        );
    }

    #[test]
    fn houses_founded_worlds() {
        let ap = program(HOUSES);
        let cs = bochman_transform(&ap);
        let founded = causally_founded_worlds(&cs).unwrap();
        let expect: Vec<World> = [
            &[][..],
            &["sf1", "f1", "f2"][..],
            &["sf2", "f1", "f2"][..],
            &["sf1", "sf2", "f1", "f2"][..],
        ]
        .iter()
        .map(|names| World::from_names(cs.alphabet(), names).unwrap())
        .collect();
        assert_eq!(founded, expect);
    }

    #[test]
    fn observations_prune_founded_worlds() {
        let ap = program("abducible c. r :- c. s :- not c. w :- r. w :- s. d :- w. :- not s.");
        let cs = bochman_transform(&ap);
        let founded = causally_founded_worlds(&cs).unwrap();
        assert_eq!(founded.len(), 1);
        assert_eq!(founded[0], World::from_names(cs.alphabet(), &["s", "w", "d"]).unwrap());
        let rainy = World::from_names(cs.alphabet(), &["c", "r", "w", "d"]).unwrap();
        assert_eq!(
            classify_world(&cs, rainy).unwrap(),
            WorldFounding::ObservationViolated { constraint: 0 }
        );
    }

    #[test]
    fn explanation_classification() {
        let ap = program(HOUSES);
        let al = ap.alphabet();
        let w = World::from_names(al, &["sf1", "f1", "f2"]).unwrap();
        let i: AtomSet = [al.require("f1").unwrap(), al.require("f2").unwrap()]
            .into_iter()
            .collect();
        // sf1 => f1 reaches into i from outside: external.
        assert_eq!(
            classify_explanation(&[lit(al, "sf1")], lit(al, "f1"), w, i),
            Ok(ExplanationClass::External)
        );
        // f1 => f2 stays inside i: internal.
        assert_eq!(
            classify_explanation(&[lit(al, "f1")], lit(al, "f2"), w, i),
            Ok(ExplanationClass::Internal)
        );
        // sf2 => f2 has a false cause: internal.
        assert_eq!(
            classify_explanation(&[lit(al, "sf2")], lit(al, "f2"), w, i),
            Ok(ExplanationClass::Internal)
        );
        // The distinguished set must be true in the world.
        let bad: AtomSet = [al.require("sf2").unwrap()].into_iter().collect();
        assert!(classify_explanation(&[], lit(al, "f1"), w, bad).is_err());
    }

    #[test]
    fn transform_round_trips() {
        for text in [SPRINKLER, HOUSES, "", "p. q :- not p. :- q."] {
            let ap = program(text);
            let back = inverse_bochman(&bochman_transform(&ap)).unwrap();
            assert_eq!(back, ap, "for {text:?}");
        }
    }

    #[test]
    fn inverse_requires_default_negation() {
        let al = Alphabet::from_names(["p"]).unwrap();
        let cs = CausalSystem::new(
            al.clone(),
            CausalTheory::default(),
            vec![Literal::pos(al.require("p").unwrap())],
            vec![],
        )
        .unwrap();
        assert!(matches!(inverse_bochman(&cs), Err(Error::NotDefaultNegation(_))));
    }

    #[test]
    fn inverse_requires_atomic_knowledge() {
        let al = Alphabet::from_names(["p", "q"]).unwrap();
        let cs = CausalSystem::new(
            al.clone(),
            CausalTheory::new(vec![CausalRule::new(vec![lit(&al, "p")], nlit(&al, "q"))]),
            vec![nlit(&al, "p"), nlit(&al, "q")],
            vec![],
        )
        .unwrap();
        assert_eq!(inverse_bochman(&cs), Err(Error::NotAtomic("q".into())));
    }

    #[test]
    fn system_text_lists_rules_and_premises() {
        let ap = program("abducible a. p :- a, not q. :- p, q.");
        let text = bochman_transform(&ap).to_text();
        assert_eq!(
            text,
            "rules:\n  a, not q => p\nexternal: a, not a, not p, not q\nobservations:\n  :- p, q.\n"
        );
    }

    #[test]
    fn empty_cause_prints_as_true() {
        let ap = program("p.");
        let cs = bochman_transform(&ap);
        assert_eq!(rule_text(&cs.knowledge().rules()[0], cs.alphabet()), "true => p");
    }
}
