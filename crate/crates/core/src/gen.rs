//! Seeded random terms, simple terms and traces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::semiring::Value;
use crate::syntax::{normalize, Action, Name, Polarity, Term};
use crate::traces::{Subject, Trace};

/// Shape of generated terms.
#[derive(Clone, Debug)]
pub struct TermConfig {
    pub names: Vec<Name>,
    pub literals: Vec<Value>,
    pub max_prefixes: usize,
    pub max_depth: usize,
    /// Allow `(+)`, `k *` and `lin`.
    pub derived: bool,
    /// Allow `||` and `@`.
    pub non_interacting: bool,
}

impl TermConfig {
    pub fn new(names: &[&str], literals: &[Value], max_prefixes: usize) -> Self {
        TermConfig {
            names: names.iter().map(|n| Name::new(n)).collect(),
            literals: literals.to_vec(),
            max_prefixes,
            max_depth: 6,
            derived: true,
            non_interacting: true,
        }
    }
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a TermConfig,
    bound: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn fresh(&mut self, stem: &str) -> Name {
        self.bound += 1;
        Name::new(&format!("{stem}{}", self.bound))
    }

    fn action(&mut self, scope: &[Name]) -> Action {
        let subject = scope.choose(self.rng).expect("nonempty scope").clone();
        let polarity = if self.rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg };
        Action {
            subject,
            polarity,
            bound: self.fresh("x"),
        }
    }

    fn literal(&mut self) -> Term {
        Term::Lit(self.cfg.literals.choose(self.rng).cloned().unwrap_or_else(Value::one))
    }

    fn term(&mut self, budget: usize, depth: usize, scope: &mut Vec<Name>) -> Term {
        if depth == 0 || (budget == 0 && self.rng.gen_bool(0.6)) {
            return self.literal();
        }
        let mut choices = vec![0u8, 2, 2, 5];
        if budget > 0 && !scope.is_empty() {
            choices.extend([1, 1, 1]);
            if self.cfg.derived {
                choices.push(7);
            }
        }
        if self.cfg.non_interacting {
            choices.extend([3, 8]);
        }
        if self.cfg.derived {
            choices.extend([4, 6]);
        }
        match *choices.choose(self.rng).unwrap() {
            0 => self.literal(),
            1 | 7 => {
                let a = self.action(scope);
                scope.push(a.bound.clone());
                let body = self.term(budget - 1, depth - 1, scope);
                scope.pop();
                if choices.contains(&7) && self.rng.gen_bool(0.3) {
                    Term::lin(a, body)
                } else {
                    Term::prefix(a, body)
                }
            }
            2 | 3 | 4 => {
                let k = self.rng.gen_range(0..=budget);
                let l = self.term(k, depth - 1, scope);
                let r = self.term(budget - k, depth - 1, scope);
                match self.rng.gen_range(0..3) {
                    0 if self.cfg.non_interacting => Term::par_ni(l, r),
                    1 if self.cfg.derived => Term::sum(l, r),
                    _ => Term::par(l, r),
                }
            }
            5 => {
                let x = self.fresh("u");
                scope.push(x.clone());
                let body = self.term(budget, depth - 1, scope);
                scope.pop();
                Term::nu(x, body)
            }
            6 => {
                let k = self.cfg.literals.choose(self.rng).cloned().unwrap_or_else(Value::one);
                Term::scalar(k, self.term(budget, depth - 1, scope))
            }
            _ => Term::place(self.term(budget, depth - 1, scope)),
        }
    }
}

/// A random term with at most `cfg.max_prefixes` action prefixes.
pub fn random_term<R: Rng>(rng: &mut R, cfg: &TermConfig) -> Term {
    let mut g = Gen { rng, cfg, bound: 0 };
    let mut scope = cfg.names.clone();
    normalize(&g.term(cfg.max_prefixes, cfg.max_depth, &mut scope))
}

/// A random simple term with at most `max_prefixes` actions.
pub fn random_simple<R: Rng>(rng: &mut R, names: &[Name], max_prefixes: usize) -> Term {
    fn go<R: Rng>(rng: &mut R, scope: &mut Vec<Name>, budget: usize, depth: usize, fresh: &mut usize) -> Term {
        let pick = if budget == 0 || depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..6) };
        let act = |rng: &mut R, scope: &[Name], fresh: &mut usize| {
            *fresh += 1;
            Action {
                subject: scope.choose(rng).unwrap().clone(),
                polarity: if rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg },
                bound: Name::new(&format!("x{fresh}")),
            }
        };
        match pick {
            0 => Term::one(),
            1 if !scope.is_empty() && budget > 0 => Term::prefix(act(rng, scope, fresh), Term::zero()),
            1 => Term::one(),
            2 => {
                let a = act(rng, scope, fresh);
                scope.push(a.bound.clone());
                let b = go(rng, scope, budget - 1, depth - 1, fresh);
                scope.pop();
                Term::lin(a, b)
            }
            3 | 4 => {
                let k = rng.gen_range(0..=budget);
                let l = go(rng, scope, k, depth - 1, fresh);
                let r = go(rng, scope, budget - k, depth - 1, fresh);
                if pick == 3 { Term::par(l, r) } else { Term::par_ni(l, r) }
            }
            _ => {
                *fresh += 1;
                let u = Name::new(&format!("u{fresh}"));
                scope.push(u.clone());
                let b = go(rng, scope, budget, depth - 1, fresh);
                scope.pop();
                Term::nu(u, b)
            }
        }
    }
    let mut scope = names.to_vec();
    let mut fresh = 0;
    normalize(&go(rng, &mut scope, max_prefixes, 5, &mut fresh))
}

/// A random trace with at most `max_events` events, including events on
/// private channels and inactions.
pub fn random_trace<R: Rng>(rng: &mut R, names: &[Name], max_events: usize) -> Trace {
    let n = rng.gen_range(0..=max_events);
    let subject = |rng: &mut R, below: usize| {
        if below > 0 && rng.gen_bool(0.35) {
            Subject::Event(rng.gen_range(0..below))
        } else {
            Subject::Name(names.choose(rng).expect("names").clone())
        }
    };
    let pol = |rng: &mut R| if rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg };
    let mut events = Vec::new();
    let mut order = Vec::new();
    for a in 0..n {
        let s = subject(rng, a);
        if let Subject::Event(b) = s {
            order.push((b, a));
        }
        for b in 0..a {
            if rng.gen_bool(0.3) {
                order.push((b, a));
            }
        }
        events.push((pol(rng), s));
    }
    let mut ready = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        ready.push((pol(rng), subject(rng, n)));
    }
    let perm = {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    Trace::from_parts(events, order, ready)
        .expect("generated traces are well formed")
        .permute(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_simple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = TermConfig::new(&["a", "b"], &[Value::zero(), Value::one(), Value::int(2)], 4);
        for _ in 0..200 {
            let t = random_term(&mut rng, &cfg);
            assert!(t.prefix_count() <= 4, "{t}");
            let s = random_simple(&mut rng, &cfg.names, 3);
            assert!(is_simple(&s), "{s}");
            assert!(s.prefix_count() <= 3);
            let tr = random_trace(&mut rng, &cfg.names, 4);
            assert!(tr.len() <= 4);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let cfg = TermConfig::new(&["a"], &[Value::one()], 3);
        let a = random_term(&mut ChaCha8Rng::seed_from_u64(1), &cfg);
        let b = random_term(&mut ChaCha8Rng::seed_from_u64(1), &cfg);
        assert_eq!(a, b);
    }
}
