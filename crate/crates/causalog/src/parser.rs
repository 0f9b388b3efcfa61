//! Text form of abductive logic programs.
//!
//! ```text
//! % rain or sprinkler
//! abducible c.
//! r :- c.
//! s :- not c.
//! :- not s.
//! ```
//!
//! One statement per `.`: an `abducible` declaration, a rule `h :- body.`, a
//! fact `h.`, or an integrity constraint `:- body.`. `%` starts a comment.
//! Atoms match `[A-Za-z_][A-Za-z0-9_]*`; `not` and `abducible` are reserved.
//!
//! [`parse`] interns atoms in first-occurrence order, which fixes the canonical
//! atom order for everything downstream. [`render`] prints a program back so
//! that reparsing reproduces it, alphabet order included.

use std::collections::HashSet;
use std::fmt;

use crate::error::Error;
use crate::syntax::{
    AbductiveProgram, Alphabet, AtomId, Clause, IntegrityConstraint, Literal, LogicProgram,
};
use crate::world::{guard, AtomSet, DEFAULT_ATOM_LIMIT};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DiagnosticKind {
    Syntax,
    AbducibleHeadViolation,
    DuplicateAbducible,
    Unknown,
}

/// A positioned message about the source text. Errors abort the parse;
/// duplicate-abducible diagnostics are warnings and do not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagnostic {
    pub line: u32,
    pub column: u32,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, line: u32, column: u32, message: String) -> Self {
        Diagnostic { line, column, kind, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// A successful parse: the program plus any warnings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Parsed {
    pub program: AbductiveProgram,
    pub warnings: Vec<Diagnostic>,
}

pub fn parse(text: &str) -> Result<Parsed, Error> {
    parse_with_limit(text, DEFAULT_ATOM_LIMIT)
}

pub fn parse_with_limit(text: &str, atom_limit: usize) -> Result<Parsed, Error> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut alphabet = Alphabet::new();
    let mut abducibles: Vec<AtomId> = Vec::new();
    let mut abducible_set = AtomSet::empty();
    let mut clauses: Vec<(Clause, u32, u32)> = Vec::new();
    let mut constraints: Vec<IntegrityConstraint> = Vec::new();
    let mut warnings = Vec::new();

    loop {
        match p.peek().kind.clone() {
            TokenKind::Eof => break,
            TokenKind::Abducible => {
                p.advance();
                loop {
                    let (name, line, column) = p.expect_ident("atom name")?;
                    let atom = alphabet.intern(&name);
                    if abducible_set.contains(atom) {
                        warnings.push(Diagnostic::new(
                            DiagnosticKind::DuplicateAbducible,
                            line,
                            column,
                            format!("`{name}` is already declared abducible"),
                        ));
                    } else {
                        abducible_set.insert(atom);
                        abducibles.push(atom);
                    }
                    if p.eat(&TokenKind::Comma) {
                        continue;
                    }
                    p.expect(&TokenKind::Dot, "`.`")?;
                    break;
                }
            }
            TokenKind::Ident(_) => {
                let (name, line, column) = p.expect_ident("atom name")?;
                let head = alphabet.intern(&name);
                let body = if p.eat(&TokenKind::Arrow) {
                    let b = p.body(&mut alphabet)?;
                    p.expect(&TokenKind::Dot, "`.`")?;
                    b
                } else {
                    p.expect(&TokenKind::Dot, "`.`")?;
                    Vec::new()
                };
                clauses.push((Clause::new(head, body), line, column));
            }
            TokenKind::Arrow => {
                p.advance();
                let body = p.body(&mut alphabet)?;
                p.expect(&TokenKind::Dot, "`.`")?;
                constraints.push(IntegrityConstraint::new(body)?);
            }
            _ => {
                let t = p.peek();
                return Err(syntax_error(t, "a statement".into()));
            }
        }
    }

    guard(alphabet.len(), atom_limit)?;

    for (clause, line, column) in &clauses {
        if abducible_set.contains(clause.head()) {
            let name = alphabet.name(clause.head());
            return Err(Error::Parse(Diagnostic::new(
                DiagnosticKind::AbducibleHeadViolation,
                *line,
                *column,
                format!("abducible `{name}` heads a clause; abducibles may only occur in bodies"),
            )));
        }
    }

    let program = LogicProgram::new(alphabet, clauses.into_iter().map(|(c, _, _)| c).collect())?;
    let program = AbductiveProgram::new(program, abducibles, constraints)?;
    Ok(Parsed { program, warnings })
}

// ── Lexer ──────────────────────────────────────────────────────────────────

#[derive(Clone, PartialEq, Eq, Debug)]
enum TokenKind {
    Ident(String),
    Not,
    Abducible,
    Comma,
    Dot,
    Arrow,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Not => "`not`".into(),
            TokenKind::Abducible => "`abducible`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Arrow => "`:-`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    line: u32,
    column: u32,
}

fn lex(text: &str) -> Result<Vec<Token>, Error> {
    let mut tokens = Vec::new();
    let mut line: u32 = 1;
    let mut column: u32 = 1;
    let mut chars = text.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            bump!();
        } else if c == '%' {
            while matches!(chars.peek(), Some(&c) if c != '\n') {
                bump!();
            }
        } else if c == ',' {
            tokens.push(Token { kind: TokenKind::Comma, line, column });
            bump!();
        } else if c == '.' {
            tokens.push(Token { kind: TokenKind::Dot, line, column });
            bump!();
        } else if c == ':' {
            let (l, col) = (line, column);
            bump!();
            if chars.peek() == Some(&'-') {
                bump!();
                tokens.push(Token { kind: TokenKind::Arrow, line: l, column: col });
            } else {
                return Err(Error::Parse(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    l,
                    col,
                    "expected `:-`".into(),
                )));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let (l, col) = (line, column);
            let mut word = String::new();
            while matches!(chars.peek(), Some(&c) if c.is_ascii_alphanumeric() || c == '_') {
                word.push(bump!());
            }
            let kind = match word.as_str() {
                "not" => TokenKind::Not,
                "abducible" => TokenKind::Abducible,
                _ => TokenKind::Ident(word),
            };
            tokens.push(Token { kind, line: l, column: col });
        } else {
            return Err(Error::Parse(Diagnostic::new(
                DiagnosticKind::Syntax,
                line,
                column,
                format!("unexpected character `{c}`"),
            )));
        }
    }
    tokens.push(Token { kind: TokenKind::Eof, line, column });
    Ok(tokens)
}

// ── Parser ─────────────────────────────────────────────────────────────────

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn syntax_error(t: &Token, expected: String) -> Error {
    Error::Parse(Diagnostic::new(
        DiagnosticKind::Syntax,
        t.line,
        t.column,
        format!("expected {expected}, found {}", t.kind.describe()),
    ))
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<(), Error> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(syntax_error(self.peek(), what.into()))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, u32, u32), Error> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Ident(name) => {
                self.advance();
                Ok((name, t.line, t.column))
            }
            _ => Err(syntax_error(&t, what.into())),
        }
    }

    fn body(&mut self, alphabet: &mut Alphabet) -> Result<Vec<Literal>, Error> {
        let mut literals = Vec::new();
        loop {
            let negated = self.eat(&TokenKind::Not);
            let (name, _, _) = self.expect_ident("atom name")?;
            let atom = alphabet.intern(&name);
            literals.push(Literal { atom, negated });
            if !self.eat(&TokenKind::Comma) {
                break;
            }
        }
        Ok(literals)
    }
}

// ── Renderer ───────────────────────────────────────────────────────────────

/// Prints a program in its text form.
///
/// Statements are ordered so that atoms first occur in alphabet order; then
/// reparsing reproduces the program exactly, interning order included. Every
/// program obtained from [`parse`] admits such an ordering (its own source is
/// one). A program assembled by hand whose atom order no legal statement
/// ordering can realize falls back to declarations-clauses-constraints block
/// order, which reparses to the same program up to atom numbering.
pub fn render(ap: &AbductiveProgram) -> String {
    let order = emission_order(ap)
        .unwrap_or_else(|| block_order(ap));
    let mut out = String::new();
    for stmt in order {
        out.push_str(&statement_text(ap, stmt));
        out.push('\n');
    }
    out
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
enum Stmt {
    Decl(usize),
    Clause(usize),
    Constraint(usize),
}

fn statement_text(ap: &AbductiveProgram, stmt: Stmt) -> String {
    let alphabet = ap.alphabet();
    let body_text = |body: &[Literal]| -> String {
        body.iter()
            .map(|&l| alphabet.literal_text(l))
            .collect::<Vec<_>>()
            .join(", ")
    };
    match stmt {
        Stmt::Decl(i) => format!("abducible {}.", alphabet.name(ap.abducibles()[i])),
        Stmt::Clause(i) => {
            let c = &ap.program().clauses()[i];
            if c.is_fact() {
                format!("{}.", alphabet.name(c.head()))
            } else {
                format!("{} :- {}.", alphabet.name(c.head()), body_text(c.body()))
            }
        }
        Stmt::Constraint(i) => format!(":- {}.", body_text(ap.constraints()[i].body())),
    }
}

fn statement_atoms(ap: &AbductiveProgram, stmt: Stmt) -> Vec<AtomId> {
    match stmt {
        Stmt::Decl(i) => vec![ap.abducibles()[i]],
        Stmt::Clause(i) => {
            let c = &ap.program().clauses()[i];
            std::iter::once(c.head())
                .chain(c.body().iter().map(|l| l.atom))
                .collect()
        }
        Stmt::Constraint(i) => ap.constraints()[i].body().iter().map(|l| l.atom).collect(),
    }
}

/// Searches for an interleaving of the declaration, clause, and constraint
/// streams whose first atom occurrences walk the alphabet in order. The set of
/// seen atoms at any search state is an alphabet prefix, so its size is the
/// whole state beyond the three stream positions.
fn emission_order(ap: &AbductiveProgram) -> Option<Vec<Stmt>> {
    let decls = ap.abducibles().len();
    let clauses = ap.program().clauses().len();
    let constraints = ap.constraints().len();

    // Statements only mention atoms, so ids past the last mentioned one are
    // unreachable; a hand-built alphabet with trailing unused atoms still
    // renders via the fallback.
    fn advance_prefix(ap: &AbductiveProgram, stmt: Stmt, mut prefix: u32) -> Option<u32> {
        for atom in statement_atoms(ap, stmt) {
            if atom.0 < prefix {
                continue;
            } else if atom.0 == prefix {
                prefix += 1;
            } else {
                return None;
            }
        }
        Some(prefix)
    }

    let mut dead: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut path: Vec<Stmt> = Vec::new();

    fn search(
        ap: &AbductiveProgram,
        state: (usize, usize, usize),
        prefix: u32,
        totals: (usize, usize, usize),
        dead: &mut HashSet<(usize, usize, usize)>,
        path: &mut Vec<Stmt>,
    ) -> bool {
        let (d, c, x) = state;
        if (d, c, x) == totals {
            return prefix as usize == ap.alphabet().len();
        }
        if dead.contains(&state) {
            return false;
        }
        let mut candidates = Vec::with_capacity(3);
        if d < totals.0 {
            candidates.push((Stmt::Decl(d), (d + 1, c, x)));
        }
        if c < totals.1 {
            candidates.push((Stmt::Clause(c), (d, c + 1, x)));
        }
        if x < totals.2 {
            candidates.push((Stmt::Constraint(x), (d, c, x + 1)));
        }
        for (stmt, next) in candidates {
            if let Some(p) = advance_prefix(ap, stmt, prefix) {
                path.push(stmt);
                if search(ap, next, p, totals, dead, path) {
                    return true;
                }
                path.pop();
            }
        }
        dead.insert(state);
        false
    }

    if search(
        ap,
        (0, 0, 0),
        0,
        (decls, clauses, constraints),
        &mut dead,
        &mut path,
    ) {
        Some(path)
    } else {
        None
    }
}

fn block_order(ap: &AbductiveProgram) -> Vec<Stmt> {
    let mut out = Vec::new();
    out.extend((0..ap.abducibles().len()).map(Stmt::Decl));
    out.extend((0..ap.program().clauses().len()).map(Stmt::Clause));
    out.extend((0..ap.constraints().len()).map(Stmt::Constraint));
    out
}
