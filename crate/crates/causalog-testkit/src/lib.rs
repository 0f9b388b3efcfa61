//! Test support for the causalog crates.
//!
//! [`generate`] builds seeded random programs and causal theories so property
//! tests can sweep input space reproducibly. [`oracle`] holds slow reference
//! implementations written straight from the definitions, kept deliberately
//! independent of the library's algorithms so the two can disagree. [`corpus`]
//! re-exports the example programs checked in under `corpus/`.

pub mod corpus {
    pub const SPRINKLER: &str = include_str!("../../../corpus/sprinkler.alp");
    pub const SPRINKLER_OBSERVED: &str = include_str!("../../../corpus/sprinkler_observed.alp");
    pub const HOUSES: &str = include_str!("../../../corpus/houses.alp");
    pub const FARMER: &str = include_str!("../../../corpus/farmer.alp");
    pub const PESTLOOP: &str = include_str!("../../../corpus/pestloop.alp");
    pub const EVENLOOP: &str = include_str!("../../../corpus/evenloop.alp");
    pub const ODDLOOP: &str = include_str!("../../../corpus/oddloop.alp");
    pub const FACTS: &str = include_str!("../../../corpus/facts.alp");
    pub const EMPTY: &str = include_str!("../../../corpus/empty.alp");

    /// Every corpus program, paired with its file stem.
    pub const ALL: [(&str, &str); 9] = [
        ("sprinkler", SPRINKLER),
        ("sprinkler_observed", SPRINKLER_OBSERVED),
        ("houses", HOUSES),
        ("farmer", FARMER),
        ("pestloop", PESTLOOP),
        ("evenloop", EVENLOOP),
        ("oddloop", ODDLOOP),
        ("facts", FACTS),
        ("empty", EMPTY),
    ];
}

pub mod generate {
    use causalog::{
        AbductiveProgram, Alphabet, CausalRule, CausalTheory, Clause, IntegrityConstraint,
        Literal, LogicProgram,
    };
    use rand::Rng;

    pub const ATOM_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

    /// What the dependence graph of a generated program is allowed to look
    /// like.
    #[derive(Copy, Clone, PartialEq, Eq, Debug)]
    pub enum Mode {
        /// Unrestricted bodies.
        General,
        /// Negative dependencies point at strictly earlier atoms, positive
        /// ones at earlier atoms or the head itself.
        Stratified,
        /// All dependencies point at strictly earlier atoms.
        Acyclic,
    }

    #[derive(Clone, Debug)]
    pub struct ProgramShape {
        pub max_atoms: usize,
        pub max_clauses: usize,
        pub max_body: usize,
        pub max_abducibles: usize,
        pub constraints: bool,
        pub mode: Mode,
    }

    impl Default for ProgramShape {
        fn default() -> Self {
            ProgramShape {
                max_atoms: 6,
                max_clauses: 8,
                max_body: 3,
                max_abducibles: 2,
                constraints: false,
                mode: Mode::General,
            }
        }
    }

    /// A random program within the shape. The first atoms become the
    /// abducibles; clause heads are drawn from the rest.
    pub fn random_program(rng: &mut impl Rng, shape: &ProgramShape) -> AbductiveProgram {
        let n = rng.gen_range(1..=shape.max_atoms.min(ATOM_NAMES.len()));
        let alphabet = Alphabet::from_names(ATOM_NAMES[..n].iter().copied()).unwrap();
        let atoms: Vec<_> = alphabet.atoms().collect();
        let k = rng.gen_range(0..=shape.max_abducibles.min(n));
        let abducibles = atoms[..k].to_vec();

        let mut clauses = Vec::new();
        if k < n {
            for _ in 0..rng.gen_range(0..=shape.max_clauses) {
                let head = atoms[rng.gen_range(k..n)];
                let h = head.index();
                let mut body = Vec::new();
                for _ in 0..rng.gen_range(0..=shape.max_body) {
                    let negated = rng.gen_bool(0.4);
                    let bound = match (shape.mode, negated) {
                        (Mode::General, _) => n,
                        (Mode::Stratified, false) => h + 1,
                        (Mode::Stratified, true) | (Mode::Acyclic, _) => h,
                    };
                    if bound == 0 {
                        continue;
                    }
                    let atom = atoms[rng.gen_range(0..bound)];
                    body.push(Literal { atom, negated });
                }
                clauses.push(Clause::new(head, body));
            }
        }

        let mut ics = Vec::new();
        if shape.constraints {
            for _ in 0..rng.gen_range(0..=2) {
                let body: Vec<Literal> = (0..rng.gen_range(1..=shape.max_body))
                    .map(|_| Literal {
                        atom: atoms[rng.gen_range(0..n)],
                        negated: rng.gen_bool(0.4),
                    })
                    .collect();
                ics.push(IntegrityConstraint::new(body).unwrap());
            }
        }

        let program = LogicProgram::new(alphabet, clauses).unwrap();
        AbductiveProgram::new(program, abducibles, ics).unwrap()
    }

    /// A random theory of literal rules over a small alphabet.
    pub fn random_theory(rng: &mut impl Rng, max_atoms: usize) -> (Alphabet, CausalTheory) {
        let n = rng.gen_range(1..=max_atoms.min(ATOM_NAMES.len()));
        let alphabet = Alphabet::from_names(ATOM_NAMES[..n].iter().copied()).unwrap();
        let atoms: Vec<_> = alphabet.atoms().collect();
        let mut rules = Vec::new();
        for _ in 0..rng.gen_range(0..=6) {
            let mut pick = Vec::new();
            for _ in 0..=rng.gen_range(0..=2) {
                pick.push(Literal {
                    atom: atoms[rng.gen_range(0..n)],
                    negated: rng.gen_bool(0.5),
                });
            }
            let effect = pick.pop().unwrap();
            rules.push(CausalRule::new(pick, effect));
        }
        (alphabet, CausalTheory::new(rules))
    }
}

pub mod oracle {
    use causalog::{
        Alphabet, AtomSet, CausalTheory, Clause, Literal, LiteralSet, LogicProgram, World,
    };

    /// The program with one fact clause appended per atom of `facts`.
    pub fn with_facts(p: &LogicProgram, facts: AtomSet) -> LogicProgram {
        let mut clauses = p.clauses().to_vec();
        clauses.extend(facts.iter().map(Clause::fact));
        LogicProgram::new(p.alphabet().clone(), clauses).unwrap()
    }

    /// Stability by the reduct definition: after dropping every clause whose
    /// negative body the world falsifies and stripping negations from the
    /// rest, the world must be exactly the least model of what remains.
    pub fn stable_by_reduct(p: &LogicProgram, w: World) -> bool {
        let mut least = AtomSet::empty();
        loop {
            let mut changed = false;
            for clause in p.clauses() {
                let kept = clause
                    .body()
                    .iter()
                    .filter(|l| l.negated)
                    .all(|&l| w.satisfies(l));
                let fires = kept
                    && clause
                        .body()
                        .iter()
                        .filter(|l| !l.negated)
                        .all(|l| least.contains(l.atom));
                if fires && !least.contains(clause.head()) {
                    least.insert(clause.head());
                    changed = true;
                }
            }
            if !changed {
                return least == w.true_atoms();
            }
        }
    }

    /// Supportedness as a fixpoint of one-step consequence: the true atoms
    /// must be exactly the heads of clauses with true bodies.
    pub fn supported_by_consequence(p: &LogicProgram, w: World) -> bool {
        let consequence: AtomSet = p
            .clauses()
            .iter()
            .filter(|c| w.satisfies_all(c.body()))
            .map(|c| c.head())
            .collect();
        consequence == w.true_atoms()
    }

    /// Unfoundedness read off the definition: every clause for a member
    /// either has a false body or leans on another member.
    pub fn unfounded_by_definition(i: AtomSet, w: World, p: &LogicProgram) -> bool {
        i.iter().all(|atom| {
            p.clauses_with_head(atom).all(|c| {
                !w.satisfies_all(c.body())
                    || c.body()
                        .iter()
                        .any(|l| !l.negated && i.contains(l.atom))
            })
        })
    }

    /// The union of every non-empty unfounded subset of the world's true
    /// atoms, found by brute force.
    pub fn union_of_unfounded_subsets(w: World, p: &LogicProgram) -> AtomSet {
        let mut union = AtomSet::empty();
        for i in w.true_atoms().subsets() {
            if !i.is_empty() && unfounded_by_definition(i, w, p) {
                union = union.union(i);
            }
        }
        union
    }

    /// The full derivability relation of a theory, saturated from its
    /// inference rules: the theory's own rules, monotonicity in the premises,
    /// cut, and explosion for premise sets holding a literal and its
    /// negation. Returns one `(premises, consequences)` pair per premise set.
    ///
    /// Exponential twice over; callers keep alphabets to four atoms or fewer.
    pub fn saturation_closure(
        theory: &CausalTheory,
        alphabet: &Alphabet,
    ) -> Vec<(LiteralSet, LiteralSet)> {
        let n = alphabet.len();
        assert!(n <= 4, "saturation oracle is for tiny alphabets");
        let bits = 2 * n;
        let sets = 1usize << bits;
        let all: u32 = (sets - 1) as u32;
        let literal = |j: usize| {
            let atom = alphabet.atoms().nth(j / 2).unwrap();
            if j % 2 == 0 {
                Literal::pos(atom)
            } else {
                Literal::neg(atom)
            }
        };
        let to_mask = |ls: &[Literal]| -> u32 {
            ls.iter()
                .map(|l| 1u32 << (2 * l.atom.index() + usize::from(l.negated)))
                .fold(0, |a, b| a | b)
        };
        let contradictory =
            |mask: u32| (0..n).any(|i| mask & (0b11 << (2 * i)) == 0b11 << (2 * i));

        let mut r = vec![0u32; sets];
        for a in 0..sets {
            if contradictory(a as u32) {
                r[a] = all;
            }
        }
        for rule in theory.rules() {
            r[to_mask(rule.cause()) as usize] |= to_mask(&[rule.effect()]);
        }
        loop {
            let before = r.clone();
            for j in 0..bits {
                for a in 0..sets {
                    if a & (1 << j) != 0 {
                        r[a] |= r[a ^ (1 << j)];
                    }
                }
            }
            for a in 0..sets {
                for j in 0..bits {
                    if r[a] & (1 << j) == 0 {
                        continue;
                    }
                    for b in 0..sets {
                        r[a | b] |= r[b | (1 << j)];
                    }
                }
            }
            if r == before {
                break;
            }
        }
        (0..sets)
            .map(|a| {
                let set = |mask: u32| -> LiteralSet {
                    (0..bits).filter(|j| mask & (1 << j) != 0).map(literal).collect()
                };
                (set(a as u32), set(r[a]))
            })
            .collect()
    }
}
