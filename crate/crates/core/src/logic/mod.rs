//! Proposition trees over outcome-event atoms, their text syntax, and the
//! classical (two-valued) semantics used after a measurement record exists.
//!
//! The surface syntax is ASCII: `~ & | ^ -> <> []` for negation, conjunction,
//! disjunction, exclusive disjunction, implication, possibility and necessity.
//! Precedence from loosest to tightest: `->`, `|`, `^`, `&`, unary. `->`
//! associates to the right, the other binary operators to the left.

mod parser;

pub use parser::parse;

use std::collections::BTreeSet;
use std::fmt;

/// A finite proposition tree.
///
/// `UndecidedAtom` is reserved for statements whose truth is not decidable by
/// any computation the crate can run (existence claims that only a dedicated
/// witness world can force). It evaluates exactly like `Atom`; keeping it a
/// separate variant lets frames declare and audit these atoms explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proposition {
    Atom(String),
    UndecidedAtom(String),
    Not(Box<Proposition>),
    And(Box<Proposition>, Box<Proposition>),
    Or(Box<Proposition>, Box<Proposition>),
    Xor(Box<Proposition>, Box<Proposition>),
    Implies(Box<Proposition>, Box<Proposition>),
    Possibly(Box<Proposition>),
    Necessarily(Box<Proposition>),
}

/// Three-valued outcome of evaluating a proposition at the root of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue3 {
    True,
    False,
    Undecided,
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue3::True => write!(f, "true"),
            TruthValue3::False => write!(f, "false"),
            TruthValue3::Undecided => write!(f, "undecided"),
        }
    }
}

pub fn atom(label: impl Into<String>) -> Proposition {
    Proposition::Atom(label.into())
}

pub fn undecided(label: impl Into<String>) -> Proposition {
    Proposition::UndecidedAtom(label.into())
}

pub fn not(p: Proposition) -> Proposition {
    Proposition::Not(Box::new(p))
}

pub fn and(p: Proposition, q: Proposition) -> Proposition {
    Proposition::And(Box::new(p), Box::new(q))
}

pub fn or(p: Proposition, q: Proposition) -> Proposition {
    Proposition::Or(Box::new(p), Box::new(q))
}

pub fn xor(p: Proposition, q: Proposition) -> Proposition {
    Proposition::Xor(Box::new(p), Box::new(q))
}

pub fn implies(p: Proposition, q: Proposition) -> Proposition {
    Proposition::Implies(Box::new(p), Box::new(q))
}

pub fn possibly(p: Proposition) -> Proposition {
    Proposition::Possibly(Box::new(p))
}

pub fn necessarily(p: Proposition) -> Proposition {
    Proposition::Necessarily(Box::new(p))
}

impl Proposition {
    /// All atom labels occurring in the tree, undecided ones included.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms(&self, set: &mut BTreeSet<String>) {
        match self {
            Proposition::Atom(l) | Proposition::UndecidedAtom(l) => {
                set.insert(l.clone());
            }
            Proposition::Not(p) | Proposition::Possibly(p) | Proposition::Necessarily(p) => {
                p.collect_atoms(set)
            }
            Proposition::And(p, q)
            | Proposition::Or(p, q)
            | Proposition::Xor(p, q)
            | Proposition::Implies(p, q) => {
                p.collect_atoms(set);
                q.collect_atoms(set);
            }
        }
    }

    /// True when forcing of this proposition is guaranteed to spread upward
    /// along the information order in every model: once a world forces it,
    /// every refinement of that world forces it too.
    ///
    /// Negation, implication and `[]` quantify over all refinements, so they
    /// persist no matter what they contain; conjunction, disjunction and
    /// exclusive disjunction preserve persistence of their parts; atoms
    /// persist by frame validity. The one non-persistent construct is `<>`:
    /// a refinement may have discarded the branch that witnessed it, so any
    /// `<>` not shielded by one of the refinement-quantifying operators
    /// forfeits the guarantee.
    pub fn is_persistent(&self) -> bool {
        match self {
            Proposition::Atom(_) | Proposition::UndecidedAtom(_) => true,
            Proposition::Not(_) | Proposition::Implies(_, _) | Proposition::Necessarily(_) => true,
            Proposition::And(p, q) | Proposition::Or(p, q) | Proposition::Xor(p, q) => {
                p.is_persistent() && q.is_persistent()
            }
            Proposition::Possibly(_) => false,
        }
    }

    /// Replace every `p ^ q` with `(p | q) & (~p | ~q)`, bottom-up.
    /// The result contains no `Xor` node and agrees with the input under
    /// classical evaluation.
    pub fn desugar_xor(&self) -> Proposition {
        match self {
            Proposition::Atom(_) | Proposition::UndecidedAtom(_) => self.clone(),
            Proposition::Not(p) => not(p.desugar_xor()),
            Proposition::Possibly(p) => possibly(p.desugar_xor()),
            Proposition::Necessarily(p) => necessarily(p.desugar_xor()),
            Proposition::And(p, q) => and(p.desugar_xor(), q.desugar_xor()),
            Proposition::Or(p, q) => or(p.desugar_xor(), q.desugar_xor()),
            Proposition::Implies(p, q) => implies(p.desugar_xor(), q.desugar_xor()),
            Proposition::Xor(p, q) => {
                let p = p.desugar_xor();
                let q = q.desugar_xor();
                and(
                    or(p.clone(), q.clone()),
                    or(not(p), not(q)),
                )
            }
        }
    }

    /// Two-valued evaluation against a total assignment. This is the
    /// post-measurement reading, where a single maximal world is left:
    /// `<>p` and `[]p` both collapse to `p`.
    pub fn eval_classical(&self, truth: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Proposition::Atom(l) | Proposition::UndecidedAtom(l) => truth(l),
            Proposition::Not(p) => !p.eval_classical(truth),
            Proposition::And(p, q) => p.eval_classical(truth) && q.eval_classical(truth),
            Proposition::Or(p, q) => p.eval_classical(truth) || q.eval_classical(truth),
            Proposition::Xor(p, q) => p.eval_classical(truth) != q.eval_classical(truth),
            Proposition::Implies(p, q) => !p.eval_classical(truth) || q.eval_classical(truth),
            Proposition::Possibly(p) | Proposition::Necessarily(p) => p.eval_classical(truth),
        }
    }
}

/// Canonical text form: binary nodes fully parenthesized, unary operators
/// prefixed. `parse` inverts this exactly (undecided atoms print as their
/// bare label and re-parse as plain atoms; frames re-bind them on use).
impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proposition::Atom(l) | Proposition::UndecidedAtom(l) => write!(f, "{l}"),
            Proposition::Not(p) => write!(f, "~{p}"),
            Proposition::Possibly(p) => write!(f, "<>{p}"),
            Proposition::Necessarily(p) => write!(f, "[]{p}"),
            Proposition::And(p, q) => write!(f, "({p} & {q})"),
            Proposition::Or(p, q) => write!(f, "({p} | {q})"),
            Proposition::Xor(p, q) => write!(f, "({p} ^ {q})"),
            Proposition::Implies(p, q) => write!(f, "({p} -> {q})"),
        }
    }
}
