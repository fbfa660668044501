use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Action, Name, Term};

/// Supply of `#k` names that avoid every name of a given term.
///
/// One supply belongs to one evaluation; it is deterministic, so the same
/// input always yields the same fresh names.
#[derive(Clone, Debug)]
pub struct FreshNames {
    used: HashSet<Name>,
    next: usize,
}

impl FreshNames {
    pub fn new() -> Self {
        FreshNames {
            used: HashSet::new(),
            next: 1,
        }
    }

    pub fn for_term(t: &Term) -> Self {
        let mut f = FreshNames::new();
        for n in t.all_names() {
            f.reserve(n);
        }
        f
    }

    pub fn reserve(&mut self, n: Name) {
        self.used.insert(n);
    }

    pub fn fresh(&mut self) -> Name {
        loop {
            let n = Name::new(&format!("#{}", self.next));
            self.next += 1;
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }
}

impl Default for FreshNames {
    fn default() -> Self {
        Self::new()
    }
}

/// Renames bound names so that every binder is distinct from every other
/// binder and from every free name. Hygienic terms are returned unchanged.
pub fn normalize(t: &Term) -> Term {
    let free = t.free_names();
    let mut fresh = FreshNames::for_term(t);
    let mut seen = HashSet::new();
    go(t, &HashMap::new(), &free, &mut seen, &mut fresh)
}

fn go(
    t: &Term,
    env: &HashMap<Name, Name>,
    free: &BTreeSet<Name>,
    seen: &mut HashSet<Name>,
    fresh: &mut FreshNames,
) -> Term {
    let look = |n: &Name| env.get(n).cloned().unwrap_or_else(|| n.clone());
    let mut binder = |x: &Name, seen: &mut HashSet<Name>| -> Name {
        if free.contains(x) || seen.contains(x) {
            let y = fresh.fresh();
            seen.insert(y.clone());
            y
        } else {
            seen.insert(x.clone());
            x.clone()
        }
    };
    match t {
        Term::Lit(v) => Term::Lit(v.clone()),
        Term::Prefix(a, b) | Term::Lin(a, b) => {
            let x = binder(&a.bound, seen);
            let mut inner = env.clone();
            inner.insert(a.bound.clone(), x.clone());
            let act = Action {
                subject: look(&a.subject),
                polarity: a.polarity,
                bound: x,
            };
            let body = go(b, &inner, free, seen, fresh);
            if matches!(t, Term::Lin(..)) {
                Term::lin(act, body)
            } else {
                Term::prefix(act, body)
            }
        }
        Term::Nu(x, b) => {
            let y = binder(x, seen);
            let mut inner = env.clone();
            inner.insert(x.clone(), y.clone());
            Term::nu(y, go(b, &inner, free, seen, fresh))
        }
        Term::Place(b) => Term::place(go(b, env, free, seen, fresh)),
        Term::Scalar(k, b) => Term::scalar(k.clone(), go(b, env, free, seen, fresh)),
        Term::Par(l, r) => {
            let l = go(l, env, free, seen, fresh);
            Term::par(l, go(r, env, free, seen, fresh))
        }
        Term::ParNi(l, r) => {
            let l = go(l, env, free, seen, fresh);
            Term::par_ni(l, go(r, env, free, seen, fresh))
        }
        Term::Sum(l, r) => {
            let l = go(l, env, free, seen, fresh);
            Term::sum(l, go(r, env, free, seen, fresh))
        }
    }
}

/// Checks the hygiene invariant.
#[cfg(test)]
pub(crate) fn is_hygienic(t: &Term) -> bool {
    let free = t.free_names();
    let mut seen = HashSet::new();
    let mut ok = true;
    t.visit(&mut |s| {
        let b = match s {
            Term::Prefix(a, _) | Term::Lin(a, _) => Some(&a.bound),
            Term::Nu(x, _) => Some(x),
            _ => None,
        };
        if let Some(b) = b {
            if free.contains(b) || !seen.insert(b.clone()) {
                ok = false;
            }
        }
    });
    ok
}
