//! Worlds and literal sets as bit vectors.
//!
//! A world is a truth assignment, identified with its set of true atoms. The
//! canonical order on worlds is ascending bit-mask order, where earlier atoms
//! occupy the lower bits; it is the order every enumeration here produces.

use crate::error::Error;
use crate::syntax::{Alphabet, AtomId, Literal};

/// Largest alphabet the bit-vector representation can carry.
pub const MAX_ATOMS: usize = 63;

/// Default cap on alphabets fed to exhaustive world enumeration.
pub const DEFAULT_ATOM_LIMIT: usize = 20;

/// Default cap on alphabets fed to the doubly exponential irrelevance search.
pub const DEFAULT_IRRELEVANCE_LIMIT: usize = 12;

pub(crate) fn guard(atoms: usize, limit: usize) -> Result<(), Error> {
    let limit = limit.min(MAX_ATOMS);
    if atoms > limit {
        Err(Error::TooManyAtoms { atoms, limit })
    } else {
        Ok(())
    }
}

/// A set of atoms from one alphabet.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct AtomSet(u64);

impl AtomSet {
    pub fn empty() -> Self {
        AtomSet(0)
    }

    pub fn singleton(atom: AtomId) -> Self {
        AtomSet(1 << atom.0)
    }

    /// The first `n` atoms.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ATOMS);
        AtomSet((1u64 << n) - 1)
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        AtomSet(bits)
    }

    pub fn contains(self, atom: AtomId) -> bool {
        self.0 >> atom.0 & 1 == 1
    }

    pub fn insert(&mut self, atom: AtomId) {
        self.0 |= 1 << atom.0;
    }

    pub fn remove(&mut self, atom: AtomId) {
        self.0 &= !(1 << atom.0);
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersect(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn minus(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Atoms in ascending id order.
    pub fn iter(self) -> impl Iterator<Item = AtomId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(AtomId(i))
        })
    }

    /// All subsets, ascending by mask; `self` last.
    pub fn subsets(self) -> impl Iterator<Item = AtomSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(AtomSet(cur))
        })
    }
}

impl FromIterator<AtomId> for AtomSet {
    fn from_iter<T: IntoIterator<Item = AtomId>>(iter: T) -> Self {
        let mut s = AtomSet::empty();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

/// A truth assignment over an alphabet, as its set of true atoms.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct World {
    atoms: AtomSet,
}

impl World {
    pub fn empty() -> Self {
        World { atoms: AtomSet::empty() }
    }

    pub fn new(atoms: AtomSet) -> Self {
        World { atoms }
    }

    pub fn from_names(alphabet: &Alphabet, names: &[&str]) -> Result<Self, Error> {
        let mut atoms = AtomSet::empty();
        for n in names {
            atoms.insert(alphabet.require(n)?);
        }
        Ok(World { atoms })
    }

    pub fn true_atoms(self) -> AtomSet {
        self.atoms
    }

    pub fn contains(self, atom: AtomId) -> bool {
        self.atoms.contains(atom)
    }

    pub fn satisfies(self, literal: Literal) -> bool {
        self.atoms.contains(literal.atom) != literal.negated
    }

    pub fn satisfies_all(self, body: &[Literal]) -> bool {
        body.iter().all(|&l| self.satisfies(l))
    }

    /// The restriction of this world to a sub-alphabet.
    pub fn reduct(self, region: AtomSet) -> AtomSet {
        self.atoms.intersect(region)
    }

    pub fn check_within(self, alphabet: &Alphabet) -> Result<(), Error> {
        if self.atoms.is_subset_of(alphabet.universe()) {
            Ok(())
        } else {
            Err(Error::WorldOutsideAlphabet)
        }
    }
}

/// Every world over `n` atoms, in canonical order.
pub(crate) fn all_worlds(n: usize) -> impl Iterator<Item = World> {
    debug_assert!(n <= MAX_ATOMS);
    (0..1u64 << n).map(|bits| World::new(AtomSet::from_bits(bits)))
}

/// A set of literals, positive and negative, over one alphabet.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LiteralSet {
    bits: u128,
}

const EVEN_BITS: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;

fn literal_bit(l: Literal) -> u128 {
    1u128 << (2 * l.atom.0 + l.negated as u32)
}

impl LiteralSet {
    pub fn empty() -> Self {
        LiteralSet { bits: 0 }
    }

    /// Both literals of every atom: the explosion value of a contradiction.
    pub fn all(atoms: usize) -> Self {
        debug_assert!(atoms <= MAX_ATOMS);
        LiteralSet { bits: (1u128 << (2 * atoms)) - 1 }
    }

    pub fn insert(&mut self, l: Literal) {
        self.bits |= literal_bit(l);
    }

    pub fn contains(self, l: Literal) -> bool {
        self.bits & literal_bit(l) != 0
    }

    pub fn union(self, other: LiteralSet) -> LiteralSet {
        LiteralSet { bits: self.bits | other.bits }
    }

    pub fn intersect(self, other: LiteralSet) -> LiteralSet {
        LiteralSet { bits: self.bits & other.bits }
    }

    pub fn is_subset_of(self, other: LiteralSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// True when some atom occurs both positively and negatively.
    pub fn has_complementary_pair(self) -> bool {
        self.bits & (self.bits >> 1) & EVEN_BITS != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Literal> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Literal { atom: AtomId(i / 2), negated: i % 2 == 1 })
        })
    }

    /// Atoms occurring positively.
    pub fn positive_atoms(self) -> AtomSet {
        self.iter()
            .filter(|l| !l.negated)
            .map(|l| l.atom)
            .collect()
    }
}

impl FromIterator<Literal> for LiteralSet {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        let mut s = LiteralSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

/// The maximal literal set a world satisfies: `p` for every true atom, `not p`
/// for every false one. Its size is always the alphabet's size.
pub fn literal_completion(w: World, alphabet: &Alphabet) -> Result<LiteralSet, Error> {
    w.check_within(alphabet)?;
    let mut out = LiteralSet::empty();
    for a in alphabet.atoms() {
        out.insert(if w.contains(a) { Literal::pos(a) } else { Literal::neg(a) });
    }
    Ok(out)
}
