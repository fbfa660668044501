//! Position-decorated labelled transition system.
//!
//! Every label records the positions, in the syntax tree, of the action
//! prefixes it consumes. Positions are sequences over `{1, 2}`: the two
//! operands of either parallel composition are `1` and `2`, the body of a
//! prefix or place-holder is `1`, and restrictions are transparent.
//!
//! [`transitions`] and [`reduct`] implement the rules literally on terms.
//! The enumeration machinery in [`crate::runs`] works on a compiled form of
//! the same rules ([`net::Net`]) and is checked against this module.

pub(crate) mod net;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{normalize, Name, Polarity, Term};

/// A path in the syntax tree, as a sequence of `1`/`2` digits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(Vec<u8>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn from_digits(d: &[u8]) -> Self {
        debug_assert!(d.iter().all(|&x| x == 1 || x == 2));
        Position(d.to_vec())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, d: u8) -> Position {
        let mut v = self.0.clone();
        v.push(d);
        Position(v)
    }

    pub fn prepend(&self, d: u8) -> Position {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(d);
        v.extend_from_slice(&self.0);
        Position(v)
    }

    /// The prefix order `≤`.
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `ι ⋈ κ`: neither is a prefix of the other.
    pub fn independent(&self, other: &Position) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("·");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Label {
    /// `u^ε(x):ι`
    Visible {
        subject: Name,
        polarity: Polarity,
        bound: Name,
        at: Position,
    },
    /// `(ι, κ)`, with `ι` in the left operand of the interacting `|`.
    Internal(Position, Position),
}

impl Label {
    pub fn positions(&self) -> Vec<&Position> {
        match self {
            Label::Visible { at, .. } => vec![at],
            Label::Internal(l, r) => vec![l, r],
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Label::Internal(..))
    }

    /// `ι.a`: prefixes every position with one digit.
    pub fn shift(&self, d: u8) -> Label {
        match self {
            Label::Visible {
                subject,
                polarity,
                bound,
                at,
            } => Label::Visible {
                subject: subject.clone(),
                polarity: *polarity,
                bound: bound.clone(),
                at: at.prepend(d),
            },
            Label::Internal(l, r) => Label::Internal(l.prepend(d), r.prepend(d)),
        }
    }

    pub fn mentions(&self, x: &Name) -> bool {
        match self {
            Label::Visible { subject, bound, .. } => subject == x || bound == x,
            Label::Internal(..) => false,
        }
    }

    /// Position-erased form, as in the standard interleaving LTS.
    pub fn erase(&self) -> String {
        match self {
            Label::Visible {
                subject,
                polarity,
                bound,
                ..
            } => format!("{subject}{polarity}({bound})"),
            Label::Internal(..) => "τ".to_string(),
        }
    }

    fn sort_key(&self) -> (Vec<&Position>, u8, Option<(&Name, Polarity, &Name)>) {
        match self {
            Label::Visible {
                subject,
                polarity,
                bound,
                at,
            } => (vec![at], 0, Some((subject, *polarity, bound))),
            Label::Internal(l, r) => (vec![l, r], 1, None),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Visible {
                subject,
                polarity,
                bound,
                at,
            } => write!(f, "{subject}{polarity}({bound}):{at}"),
            Label::Internal(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All one-step transitions of a core term.
///
/// The residue of an interaction binds a single name for both revealed
/// binders. It is named after the absolute positions of the two actions
/// (`#ι_κ`), so reducts do not depend on the order in which independent
/// steps were taken.
pub fn transitions(t: &Term) -> Result<Vec<(Label, Term)>> {
    if !t.is_core() {
        return Err(Error::contract(
            "transitions need a core term; elaborate derived forms first",
        ));
    }
    let t = normalize(t);
    let names = t.all_names();
    Ok(step(&t, &Position::root(), &names))
}

fn interaction_name(left: &Position, right: &Position, taken: &BTreeSet<Name>) -> Name {
    let mut s = format!("#{}_{}", digits(left), digits(right));
    while taken.contains(&Name::new(&s)) {
        s.push('\'');
    }
    Name::new(&s)
}

fn digits(p: &Position) -> String {
    p.digits().iter().map(|d| char::from(b'0' + d)).collect()
}

/// `at` is the absolute position of `t`; returned labels are relative to `t`.
fn step(t: &Term, at: &Position, names: &BTreeSet<Name>) -> Vec<(Label, Term)> {
    match t {
        Term::Lit(_) => Vec::new(),
        Term::Prefix(a, body) => vec![(
            Label::Visible {
                subject: a.subject.clone(),
                polarity: a.polarity,
                bound: a.bound.clone(),
                at: Position::root(),
            },
            Term::place((**body).clone()),
        )],
        Term::Place(body) => step(body, &at.child(1), names)
            .into_iter()
            .map(|(l, b)| (l.shift(1), Term::place(b)))
            .collect(),
        Term::Nu(x, body) => step(body, at, names)
            .into_iter()
            .filter(|(l, _)| !l.mentions(x))
            .map(|(l, b)| (l, Term::nu(x.clone(), b)))
            .collect(),
        Term::ParNi(l, r) => {
            let mut out: Vec<(Label, Term)> = step(l, &at.child(1), names)
                .into_iter()
                .map(|(lab, l2)| (lab.shift(1), Term::ParNi(Box::new(l2), r.clone())))
                .collect();
            out.extend(
                step(r, &at.child(2), names)
                    .into_iter()
                    .map(|(lab, r2)| (lab.shift(2), Term::ParNi(l.clone(), Box::new(r2)))),
            );
            out
        }
        Term::Par(l, r) => {
            let left = step(l, &at.child(1), names);
            let right = step(r, &at.child(2), names);
            let mut out = Vec::new();
            for (lab, l2) in &left {
                out.push((lab.shift(1), Term::Par(Box::new(l2.clone()), r.clone())));
            }
            for (lab, r2) in &right {
                out.push((lab.shift(2), Term::Par(l.clone(), Box::new(r2.clone()))));
            }
            for (la, l2) in &left {
                let Label::Visible {
                    subject: su,
                    polarity: pa,
                    bound: x,
                    at: ia,
                } = la
                else {
                    continue;
                };
                for (lb, r2) in &right {
                    let Label::Visible {
                        subject: sv,
                        polarity: pb,
                        bound: y,
                        at: ib,
                    } = lb
                    else {
                        continue;
                    };
                    if su != sv || *pa != pb.dual() {
                        continue;
                    }
                    let li = ia.prepend(1);
                    let ri = ib.prepend(2);
                    let n = interaction_name(
                        &Position(
                            at.digits().iter().chain(li.digits()).copied().collect(),
                        ),
                        &Position(
                            at.digits().iter().chain(ri.digits()).copied().collect(),
                        ),
                        names,
                    );
                    let residue = Term::nu(
                        n.clone(),
                        Term::par(l2.rename_raw(x, &n), r2.rename_raw(y, &n)),
                    );
                    out.push((Label::Internal(li, ri), residue));
                }
            }
            out
        }
        Term::Sum(..) | Term::Scalar(..) | Term::Lin(..) => {
            unreachable!("derived forms are rejected by `transitions`")
        }
    }
}

/// The unique end term `P/p` of a valid interaction.
pub fn reduct(t: &Term, interaction: &[Label]) -> Result<Term> {
    let mut cur = normalize(t);
    for (index, label) in interaction.iter().enumerate() {
        let next = transitions(&cur)?
            .into_iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| s);
        match next {
            Some(s) => cur = s,
            None => {
                return Err(Error::InvalidInteraction {
                    index,
                    label: label.to_string(),
                })
            }
        }
    }
    Ok(cur)
}

/// Whether an interaction is valid for `t`.
pub fn is_valid(t: &Term, interaction: &[Label]) -> bool {
    reduct(t, interaction).is_ok()
}

/// Position of the prefix that binds `x` in a core term.
pub fn binder_position(t: &Term, x: &Name) -> Option<Position> {
    fn go(t: &Term, at: Position, x: &Name) -> Option<Position> {
        match t {
            Term::Lit(_) => None,
            Term::Prefix(a, b) | Term::Lin(a, b) => {
                if &a.bound == x {
                    Some(at)
                } else {
                    go(b, at.child(1), x)
                }
            }
            Term::Place(b) => go(b, at.child(1), x),
            Term::Nu(_, b) | Term::Scalar(_, b) => go(b, at, x),
            Term::Par(l, r) | Term::ParNi(l, r) | Term::Sum(l, r) => {
                go(l, at.child(1), x).or_else(|| go(r, at.child(2), x))
            }
        }
    }
    go(t, Position::root(), x)
}
