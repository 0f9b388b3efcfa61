//! The causal-calculus reading of abductive programs: the transform lands in
//! atomic systems with default negation, inverts exactly, and its causally
//! founded worlds are the stable abductive models.

use causalog::{
    abductive_models, bochman_transform, causally_founded_worlds, classify_world, inverse_bochman,
    parse, AbductiveProgram, Semantics, World, WorldFounding,
};
use causalog_testkit::corpus;
use causalog_testkit::generate::{random_program, ProgramShape};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn corpus_programs() -> Vec<(String, AbductiveProgram)> {
    corpus::ALL
        .iter()
        .map(|&(name, text)| (name.to_string(), parse(text).unwrap().program))
        .collect()
}

fn random_programs(seed: u64, count: usize, shape: &ProgramShape) -> Vec<(String, AbductiveProgram)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| (format!("seed {seed} program {i}"), random_program(&mut rng, shape)))
        .collect()
}

fn all_programs() -> Vec<(String, AbductiveProgram)> {
    let with_constraints = ProgramShape { constraints: true, ..ProgramShape::default() };
    let mut programs = corpus_programs();
    programs.extend(random_programs(31, 300, &ProgramShape::default()));
    programs.extend(random_programs(32, 300, &with_constraints));
    programs
}

#[test]
fn founded_worlds_are_exactly_the_stable_abductive_models() {
    for (name, ap) in all_programs() {
        let founded = causally_founded_worlds(&bochman_transform(&ap)).unwrap();
        let stable: Vec<_> = abductive_models(&ap, Semantics::Stable)
            .unwrap()
            .into_iter()
            .map(|m| m.world)
            .collect();
        assert_eq!(founded, stable, "{name}");
    }
}

#[test]
fn the_transform_lands_in_atomic_default_negation_systems() {
    for (name, ap) in all_programs() {
        let cs = bochman_transform(&ap);
        assert!(cs.knowledge().is_atomic(), "{name}");
        assert!(cs.applies_default_negation(), "{name}");
        assert_eq!(cs.knowledge().len(), ap.program().clauses().len(), "{name}");
        assert_eq!(cs.observations(), ap.constraints(), "{name}");
    }
}

#[test]
fn the_transform_inverts_exactly() {
    for (name, ap) in all_programs() {
        let back = inverse_bochman(&bochman_transform(&ap)).unwrap();
        assert_eq!(back, ap, "{name}");
    }
}

#[test]
fn classification_agrees_with_the_founded_enumeration() {
    for (name, ap) in all_programs() {
        let cs = bochman_transform(&ap);
        let founded = causally_founded_worlds(&cs).unwrap();
        for w in ap.alphabet().universe().subsets().map(World::new) {
            let verdict = classify_world(&cs, w).unwrap();
            assert_eq!(
                verdict == WorldFounding::Founded,
                founded.contains(&w),
                "{name}, world {}: classified {verdict:?}",
                ap.alphabet().set_text(w.true_atoms())
            );
        }
    }
}

#[test]
fn founding_failures_name_a_real_defect() {
    // Whenever classification blames a literal or an observation, the blame
    // must be checkable against the world itself.
    for (name, ap) in all_programs() {
        let cs = bochman_transform(&ap);
        for w in ap.alphabet().universe().subsets().map(World::new) {
            match classify_world(&cs, w).unwrap() {
                WorldFounding::Founded => {}
                WorldFounding::ObservationViolated { constraint } => {
                    assert!(
                        w.satisfies_all(cs.observations()[constraint].body()),
                        "{name}: observation {constraint} is not actually violated"
                    );
                }
                WorldFounding::DerivedButFalse { literal } => {
                    assert!(!w.satisfies(literal), "{name}: the blamed literal holds");
                }
                WorldFounding::TrueButUnexplained { literal } => {
                    assert!(w.satisfies(literal), "{name}: the blamed literal fails");
                }
            }
        }
    }
}
