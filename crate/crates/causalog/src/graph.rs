//! The dependence graph of a program and the slices it induces.
//!
//! There is an edge p -> q whenever p or `not p` occurs in the body of a
//! clause with head q, signed by how p occurs. A program is stratified when no
//! strongly connected component contains a negative edge between its members,
//! and acyclic when the graph has no directed cycle at all.

use crate::error::Error;
use crate::syntax::{AtomId, LogicProgram};
use crate::world::AtomSet;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EdgeSign {
    Positive,
    Negative,
    Both,
}

/// Signed atom-to-atom dependencies, body atom to head.
#[derive(Clone, Debug)]
pub struct DependenceGraph {
    atoms: usize,
    positive_out: Vec<AtomSet>,
    negative_out: Vec<AtomSet>,
}

pub fn dependence_graph(p: &LogicProgram) -> DependenceGraph {
    let atoms = p.alphabet().len();
    let mut g = DependenceGraph {
        atoms,
        positive_out: vec![AtomSet::empty(); atoms],
        negative_out: vec![AtomSet::empty(); atoms],
    };
    for clause in p.clauses() {
        for literal in clause.body() {
            let out = if literal.negated {
                &mut g.negative_out[literal.atom.index()]
            } else {
                &mut g.positive_out[literal.atom.index()]
            };
            out.insert(clause.head());
        }
    }
    g
}

impl DependenceGraph {
    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn successors(&self, atom: AtomId) -> AtomSet {
        self.positive_out[atom.index()].union(self.negative_out[atom.index()])
    }

    pub fn negative_successors(&self, atom: AtomId) -> AtomSet {
        self.negative_out[atom.index()]
    }

    /// Edges in (from, to) order, for inspection and dot dumps.
    pub fn edges(&self) -> Vec<(AtomId, AtomId, EdgeSign)> {
        let mut out = Vec::new();
        for i in 0..self.atoms {
            let from = AtomId(i as u32);
            for to in self.successors(from).iter() {
                let pos = self.positive_out[i].contains(to);
                let neg = self.negative_out[i].contains(to);
                let sign = match (pos, neg) {
                    (true, true) => EdgeSign::Both,
                    (true, false) => EdgeSign::Positive,
                    (false, true) => EdgeSign::Negative,
                    (false, false) => unreachable!(),
                };
                out.push((from, to, sign));
            }
        }
        out
    }

    /// Tarjan's algorithm; returns the component id of each atom.
    fn components(&self) -> Vec<u32> {
        struct State<'g> {
            g: &'g DependenceGraph,
            index: Vec<Option<u32>>,
            lowlink: Vec<u32>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next_index: u32,
            component: Vec<u32>,
            next_component: u32,
        }

        fn visit(v: usize, st: &mut State) {
            st.index[v] = Some(st.next_index);
            st.lowlink[v] = st.next_index;
            st.next_index += 1;
            st.stack.push(v);
            st.on_stack[v] = true;
            for w in st.g.successors(AtomId(v as u32)).iter() {
                let w = w.index();
                if st.index[w].is_none() {
                    visit(w, st);
                    st.lowlink[v] = st.lowlink[v].min(st.lowlink[w]);
                } else if st.on_stack[w] {
                    st.lowlink[v] = st.lowlink[v].min(st.index[w].unwrap());
                }
            }
            if st.lowlink[v] == st.index[v].unwrap() {
                loop {
                    let w = st.stack.pop().unwrap();
                    st.on_stack[w] = false;
                    st.component[w] = st.next_component;
                    if w == v {
                        break;
                    }
                }
                st.next_component += 1;
            }
        }

        let mut st = State {
            g: self,
            index: vec![None; self.atoms],
            lowlink: vec![0; self.atoms],
            on_stack: vec![false; self.atoms],
            stack: Vec::new(),
            next_index: 0,
            component: vec![0; self.atoms],
            next_component: 0,
        };
        for v in 0..self.atoms {
            if st.index[v].is_none() {
                visit(v, &mut st);
            }
        }
        st.component
    }

    /// No negative edge joins two atoms of the same component.
    pub fn is_stratified(&self) -> bool {
        let component = self.components();
        (0..self.atoms).all(|i| {
            self.negative_out[i]
                .iter()
                .all(|q| component[i] != component[q.index()])
        })
    }

    /// No directed cycle: every component is a singleton without a self-edge.
    pub fn is_acyclic(&self) -> bool {
        let component = self.components();
        let mut seen = vec![false; self.atoms];
        for i in 0..self.atoms {
            if self.successors(AtomId(i as u32)).contains(AtomId(i as u32)) {
                return false;
            }
            let c = component[i] as usize;
            if seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }

    /// Atoms outside `s` reachable from a member of `s` along one or more
    /// edges.
    pub fn descendants(&self, s: AtomSet) -> Result<AtomSet, Error> {
        self.check_atoms(s)?;
        let mut reach = AtomSet::empty();
        for p in s.iter() {
            reach = reach.union(self.successors(p));
        }
        loop {
            let mut next = reach;
            for p in reach.iter() {
                next = next.union(self.successors(p));
            }
            if next == reach {
                return Ok(reach.minus(s));
            }
            reach = next;
        }
    }

    fn check_atoms(&self, s: AtomSet) -> Result<(), Error> {
        if s.is_subset_of(AtomSet::full(self.atoms)) {
            Ok(())
        } else {
            Err(Error::contract("atom set extends beyond the program alphabet"))
        }
    }
}

/// The three regions a set of atoms cuts a program into.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SliceRegion {
    /// Clauses whose head is a descendant of the set.
    Above,
    /// Clauses whose head is in the set.
    At,
    /// Clauses whose head is neither.
    Below,
}

/// The sub-program of one region, over the unchanged alphabet.
pub fn slice(p: &LogicProgram, s: AtomSet, region: SliceRegion) -> Result<LogicProgram, Error> {
    let g = dependence_graph(p);
    let above = g.descendants(s)?;
    let keep = match region {
        SliceRegion::Above => above,
        SliceRegion::At => s,
        SliceRegion::Below => p.alphabet().universe().minus(above.union(s)),
    };
    let clauses = p
        .clauses()
        .iter()
        .filter(|c| keep.contains(c.head()))
        .cloned()
        .collect();
    LogicProgram::new(p.alphabet().clone(), clauses)
}
