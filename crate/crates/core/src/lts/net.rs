//! Compiled form of a core term for fast enumeration.
//!
//! Because labels never repeat and every prefix fires at most once, the
//! reduct along an interaction is determined by which prefixes have fired and
//! with which partner. A [`Config`] stores exactly that, one slot per prefix,
//! so homotopic interactions reach the same configuration and enumeration can
//! deduplicate with a plain hash set.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Label, Position};
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::semiring::Value;
use crate::syntax::{normalize, Name, Polarity, Term};

/// Per-prefix firing state: [`UNFIRED`], [`VISIBLE`], or `partner + 2`.
pub(crate) type Config = Vec<u16>;

pub(crate) const UNFIRED: u16 = 0;
pub(crate) const VISIBLE: u16 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Step {
    Visible(usize),
    /// Left and right prefix of an interaction across a `|`.
    Internal(usize, usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Site {
    pub position: Position,
    pub subject: usize,
    pub polarity: Polarity,
    pub bound: usize,
    pub guard: Option<usize>,
    pub inaction: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct LitSite {
    pub value: Value,
    pub guard: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Binder {
    Free,
    Nu,
    Prefix(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Net {
    pub term: Term,
    pub sites: Vec<Site>,
    pub lits: Vec<LitSite>,
    pub names: Vec<Name>,
    pub binder: Vec<Binder>,
    /// For each prefix, whether each of its strict ancestors is a `|`.
    par_above: Vec<Vec<bool>>,
    lits_under: Vec<Vec<usize>>,
    by_position: HashMap<Position, usize>,
}

/// Search options for [`Net::explore`].
pub(crate) struct Explore<'a> {
    pub visible: bool,
    /// Skip configurations with an active `0` literal.
    pub prune_zero: bool,
    pub step_ok: Option<&'a (dyn Fn(&Net, &Config, Step) -> bool + Sync)>,
    pub config_ok: Option<&'a (dyn Fn(&Net, &Config) -> bool + Sync)>,
    pub shuffle: Option<u64>,
    /// Only report configurations with no allowed step left, firing
    /// conflict-free steps without branching. `step_ok` must then only
    /// depend on the step.
    pub terminal_only: bool,
}

impl Default for Explore<'_> {
    fn default() -> Self {
        Explore {
            visible: false,
            prune_zero: false,
            step_ok: None,
            config_ok: None,
            shuffle: None,
            terminal_only: false,
        }
    }
}

/// Reachable configurations, and which of them admit no internal step.
pub(crate) struct Explored {
    pub configs: Vec<Config>,
    pub maximal: Vec<bool>,
}

impl Net {
    pub fn new(t: &Term) -> Result<Net> {
        if !t.is_core() {
            return Err(Error::contract(
                "enumeration needs a core term; elaborate derived forms first",
            ));
        }
        let term = normalize(t);
        let mut b = Builder::default();
        b.walk(&term, Position::root(), None);
        let n = b.sites.len();
        if n >= (u16::MAX - 2) as usize {
            return Err(Error::contract("term has too many prefixes"));
        }
        let par_above = b
            .sites
            .iter()
            .map(|site| {
                let d = site.position.digits();
                (0..d.len())
                    .map(|k| b.par_nodes.contains(&Position::from_digits(&d[..k])))
                    .collect()
            })
            .collect();
        let mut lits_under = vec![Vec::new(); n];
        for (k, l) in b.lits.iter().enumerate() {
            if let Some(g) = l.guard {
                lits_under[g].push(k);
            }
        }
        let by_position = b
            .sites
            .iter()
            .enumerate()
            .map(|(i, s)| (s.position.clone(), i))
            .collect();
        let binder = b
            .names
            .iter()
            .map(|x| b.binders.get(x).copied().unwrap_or(Binder::Free))
            .collect();
        Ok(Net {
            term,
            sites: b.sites,
            lits: b.lits,
            names: b.names,
            binder,
            par_above,
            lits_under,
            by_position,
        })
    }

    pub fn initial(&self) -> Config {
        vec![UNFIRED; self.sites.len()]
    }

    pub fn fired(&self, c: &Config, i: usize) -> bool {
        c[i] != UNFIRED
    }

    /// The prefix is in active position and has not fired.
    pub fn is_active(&self, c: &Config, i: usize) -> bool {
        c[i] == UNFIRED && self.sites[i].guard.is_none_or(|g| c[g] != UNFIRED)
    }

    pub fn lit_active(&self, c: &Config, k: usize) -> bool {
        self.lits[k].guard.is_none_or(|g| c[g] != UNFIRED)
    }

    pub fn active_values<'a>(&'a self, c: &'a Config) -> impl Iterator<Item = &'a Value> + 'a {
        (0..self.lits.len())
            .filter(move |&k| self.lit_active(c, k))
            .map(move |k| &self.lits[k].value)
    }

    pub fn has_active_zero(&self, c: &Config) -> bool {
        self.active_values(c).any(Value::is_zero)
    }

    /// 0 if the two prefixes cannot meet across a `|`, 1 if the first is on
    /// the left, 2 if it is on the right.
    pub fn orientation(&self, i: usize, j: usize) -> u8 {
        let (pi, pj) = (self.sites[i].position.digits(), self.sites[j].position.digits());
        let common = pi.iter().zip(pj).take_while(|(x, y)| x == y).count();
        if common == pi.len() || common == pj.len() || !self.par_above[i][common] {
            0
        } else {
            pi[common]
        }
    }

    /// The channel a prefix currently acts on: its subject, or the class of
    /// the interaction that unified the subject's binder.
    pub fn resolve(&self, c: &Config, i: usize) -> usize {
        let s = self.sites[i].subject;
        match self.binder[s] {
            Binder::Prefix(q) if c[q] >= 2 => {
                let partner = (c[q] - 2) as usize;
                self.names.len() + q.min(partner)
            }
            _ => s,
        }
    }

    /// Whether the subject of a prefix can be observed from outside.
    pub fn observable(&self, c: &Config, i: usize) -> bool {
        match self.binder[self.sites[i].subject] {
            Binder::Free => true,
            Binder::Nu => false,
            Binder::Prefix(q) => c[q] == VISIBLE,
        }
    }

    pub fn can_meet(&self, c: &Config, i: usize, j: usize) -> bool {
        self.orientation(i, j) != 0
            && self.sites[i].polarity != self.sites[j].polarity
            && self.resolve(c, i) == self.resolve(c, j)
    }

    pub fn enabled(&self, c: &Config, visible: bool) -> Vec<Step> {
        let active: Vec<usize> = (0..self.sites.len())
            .filter(|&i| self.is_active(c, i))
            .collect();
        let mut out = Vec::new();
        if visible {
            out.extend(
                active
                    .iter()
                    .filter(|&&i| self.observable(c, i))
                    .map(|&i| Step::Visible(i)),
            );
        }
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if self.can_meet(c, i, j) {
                    out.push(if self.orientation(i, j) == 1 {
                        Step::Internal(i, j)
                    } else {
                        Step::Internal(j, i)
                    });
                }
            }
        }
        out
    }

    pub fn fire(&self, c: &Config, s: Step) -> Config {
        let mut d = c.clone();
        match s {
            Step::Visible(i) => d[i] = VISIBLE,
            Step::Internal(l, r) => {
                d[l] = r as u16 + 2;
                d[r] = l as u16 + 2;
            }
        }
        d
    }

    fn newly_zero(&self, s: Step) -> bool {
        Net::step_sites(s)
            .into_iter()
            .any(|i| self.lits_under[i].iter().any(|&k| self.lits[k].value.is_zero()))
    }

    pub fn label(&self, s: Step) -> Label {
        match s {
            Step::Visible(i) => {
                let site = &self.sites[i];
                Label::Visible {
                    subject: self.names[site.subject].clone(),
                    polarity: site.polarity,
                    bound: self.names[site.bound].clone(),
                    at: site.position.clone(),
                }
            }
            Step::Internal(l, r) => {
                Label::Internal(self.sites[l].position.clone(), self.sites[r].position.clone())
            }
        }
    }

    /// The steps recorded in a configuration.
    pub fn steps(&self, c: &Config) -> Vec<Step> {
        let mut out = Vec::new();
        for (i, &v) in c.iter().enumerate() {
            match v {
                UNFIRED => {}
                VISIBLE => out.push(Step::Visible(i)),
                p => {
                    let j = (p - 2) as usize;
                    if i < j {
                        out.push(if self.orientation(i, j) == 1 {
                            Step::Internal(i, j)
                        } else {
                            Step::Internal(j, i)
                        });
                    }
                }
            }
        }
        out
    }

    /// The prefixes a step consumes.
    pub fn step_sites(s: Step) -> Vec<usize> {
        match s {
            Step::Visible(i) => vec![i],
            Step::Internal(l, r) => vec![l, r],
        }
    }

    /// Structural causal order on the steps of a configuration: a step
    /// precedes another when it consumes an ancestor of one of its prefixes.
    pub fn causal_order(&self, steps: &[Step]) -> Poset {
        let mut rel = Vec::new();
        for (a, &sa) in steps.iter().enumerate() {
            for (b, &sb) in steps.iter().enumerate() {
                if a == b {
                    continue;
                }
                let before = Net::step_sites(sa).iter().any(|&i| {
                    Net::step_sites(sb).iter().any(|&j| {
                        let (pi, pj) = (&self.sites[i].position, &self.sites[j].position);
                        pi != pj && pi.is_prefix_of(pj)
                    })
                });
                if before {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relation(steps.len(), rel).expect("prefix order is acyclic")
    }

    pub fn step_of(&self, l: &Label) -> Option<Step> {
        match l {
            Label::Visible { at, .. } => self.by_position.get(at).map(|&i| Step::Visible(i)),
            Label::Internal(a, b) => {
                let i = *self.by_position.get(a)?;
                let j = *self.by_position.get(b)?;
                Some(Step::Internal(i, j))
            }
        }
    }

    /// Replays an interaction; fails at the first label that is not enabled.
    pub fn replay(&self, labels: &[Label]) -> Result<Config> {
        let mut c = self.initial();
        for (index, l) in labels.iter().enumerate() {
            let err = || Error::InvalidInteraction {
                index,
                label: l.to_string(),
            };
            let s = self.step_of(l).ok_or_else(err)?;
            if !self.enabled(&c, !l.is_internal()).contains(&s) || &self.label(s) != l {
                return Err(err());
            }
            c = self.fire(&c, s);
        }
        Ok(c)
    }

    /// Whether some step other than `s`, now or later, could consume one of
    /// the prefixes of `s`. Names resolved at `c` keep their class, and a
    /// subject whose binder has not fired gets a class that does not exist
    /// yet, so only prefixes with a settled subject can compete.
    fn contested(&self, c: &Config, s: Step, opts: &Explore<'_>) -> bool {
        let allowed = |t: Step| {
            opts.step_ok.is_none_or(|f| f(self, c, t)) && !(opts.prune_zero && self.newly_zero(t))
        };
        let sites = Net::step_sites(s);
        let settled = |j: usize| match self.binder[self.sites[j].subject] {
            Binder::Prefix(q) => c[q] != UNFIRED,
            _ => true,
        };
        for &i in &sites {
            if opts.visible && s != Step::Visible(i) && self.observable(c, i) && allowed(Step::Visible(i)) {
                return true;
            }
            for j in 0..self.sites.len() {
                if c[j] != UNFIRED || sites.contains(&j) || !settled(j) || !self.can_meet(c, i, j) {
                    continue;
                }
                let t = if self.orientation(i, j) == 1 {
                    Step::Internal(i, j)
                } else {
                    Step::Internal(j, i)
                };
                if allowed(t) {
                    return true;
                }
            }
        }
        false
    }

    /// Depth-first search over reachable configurations.
    pub fn explore(&self, opts: &Explore<'_>) -> Explored {
        let mut rng = opts.shuffle.map(ChaCha8Rng::seed_from_u64);
        let start = self.initial();
        let mut out = Explored {
            configs: Vec::new(),
            maximal: Vec::new(),
        };
        if opts.prune_zero && self.has_active_zero(&start) {
            return out;
        }
        if opts.config_ok.is_some_and(|f| !f(self, &start)) {
            return out;
        }
        let mut seen: HashSet<Config> = HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let enabled = self.enabled(&c, opts.visible);
            let maximal = !enabled.iter().any(|s| matches!(s, Step::Internal(..)));
            let mut steps: Vec<Step> = enabled
                .into_iter()
                .filter(|&s| opts.step_ok.is_none_or(|f| f(self, &c, s)))
                .filter(|&s| !(opts.prune_zero && self.newly_zero(s)))
                .collect();
            if opts.terminal_only {
                if steps.is_empty() {
                    out.configs.push(c);
                    out.maximal.push(maximal);
                    continue;
                }
                if let Some(&s) = steps.iter().find(|&&s| !self.contested(&c, s, opts)) {
                    steps = vec![s];
                }
            }
            if let Some(r) = rng.as_mut() {
                steps.shuffle(r);
            } else {
                steps.reverse();
            }
            for s in steps {
                let d = self.fire(&c, s);
                if seen.contains(&d) {
                    continue;
                }
                if opts.config_ok.is_some_and(|f| !f(self, &d)) {
                    continue;
                }
                seen.insert(d.clone());
                stack.push(d);
            }
            if !opts.terminal_only {
                out.configs.push(c);
                out.maximal.push(maximal);
            }
        }
        out
    }

    /// Maximal internal configurations.
    pub fn runs(&self, prune_zero: bool, shuffle: Option<u64>) -> Vec<Config> {
        let e = self.explore(&Explore {
            prune_zero,
            shuffle,
            terminal_only: true,
            ..Explore::default()
        });
        e.configs
            .into_iter()
            .zip(e.maximal)
            .filter_map(|(c, m)| m.then_some(c))
            .collect()
    }

    /// Counts maximal runs by the multiset of non-unit literals left active.
    pub fn profile(&self, shuffle: Option<u64>) -> HashMap<Vec<Value>, BigUint> {
        let mut out: HashMap<Vec<Value>, BigUint> = HashMap::new();
        for c in self.runs(true, shuffle) {
            let mut key: Vec<Value> = self.active_values(&c).filter(|v| !v.is_one()).cloned().collect();
            key.sort();
            *out.entry(key).or_default() += 1u32;
        }
        out
    }
}

#[derive(Default)]
struct Builder {
    sites: Vec<Site>,
    lits: Vec<LitSite>,
    names: Vec<Name>,
    ids: HashMap<Name, usize>,
    binders: HashMap<Name, Binder>,
    par_nodes: HashSet<Position>,
}

impl Builder {
    fn id(&mut self, x: &Name) -> usize {
        if let Some(&i) = self.ids.get(x) {
            return i;
        }
        self.names.push(x.clone());
        self.ids.insert(x.clone(), self.names.len() - 1);
        self.names.len() - 1
    }

    fn walk(&mut self, t: &Term, at: Position, guard: Option<usize>) {
        match t {
            Term::Lit(v) => self.lits.push(LitSite {
                value: v.clone(),
                guard,
            }),
            Term::Prefix(a, body) => {
                let k = self.sites.len();
                let subject = self.id(&a.subject);
                let bound = self.id(&a.bound);
                self.binders.insert(a.bound.clone(), Binder::Prefix(k));
                self.sites.push(Site {
                    position: at.clone(),
                    subject,
                    polarity: a.polarity,
                    bound,
                    guard,
                    inaction: matches!(&**body, Term::Lit(v) if v.is_zero()),
                });
                self.walk(body, at.child(1), Some(k));
            }
            Term::Place(b) => self.walk(b, at.child(1), guard),
            Term::Nu(x, b) => {
                self.id(x);
                self.binders.insert(x.clone(), Binder::Nu);
                self.walk(b, at, guard);
            }
            Term::Par(l, r) | Term::ParNi(l, r) => {
                if matches!(t, Term::Par(..)) {
                    self.par_nodes.insert(at.clone());
                }
                self.walk(l, at.child(1), guard);
                self.walk(r, at.child(2), guard);
            }
            Term::Sum(..) | Term::Scalar(..) | Term::Lin(..) => {
                unreachable!("derived forms are rejected by `Net::new`")
            }
        }
    }
}
