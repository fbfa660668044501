use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use super::{implement_trace, trace_of_config, Trace};
use crate::algebra::{affine_expand, SimpleNet};
use crate::error::Result;
use crate::semiring::{SemiringId, Value};
use crate::syntax::Term;

/// A finite formal sum `Σ kᵢ·Tᵢ` of canonical traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCombination {
    semiring: SemiringId,
    terms: BTreeMap<Trace, Value>,
}

impl LinearCombination {
    pub fn new(semiring: SemiringId) -> Self {
        LinearCombination {
            semiring,
            terms: BTreeMap::new(),
        }
    }

    pub fn semiring(&self) -> SemiringId {
        self.semiring
    }

    /// Adds `k·t`; `t` is canonicalized.
    pub fn add(&mut self, t: &Trace, k: &Value) -> Result<()> {
        self.semiring.check(k)?;
        let key = t.canonicalize();
        let v = match self.terms.remove(&key) {
            Some(old) => self.semiring.add_unchecked(&old, k),
            None => k.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn coefficient(&self, t: &Trace) -> Value {
        self.terms
            .get(&t.canonicalize())
            .cloned()
            .unwrap_or_else(Value::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Trace, &Value)> {
        self.terms.iter()
    }

    pub fn traces(&self) -> impl Iterator<Item = &Trace> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(+)` over `k · impl(T)`; `0` when empty.
    pub fn to_term(&self) -> Term {
        self.terms
            .iter()
            .map(|(t, k)| {
                let i = implement_trace(t);
                if k.is_one() {
                    i
                } else {
                    Term::scalar(k.clone(), i)
                }
            })
            .reduce(Term::sum)
            .unwrap_or_else(Term::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "semiring": self.semiring.name(),
            "terms": self
                .terms
                .iter()
                .map(|(t, k)| json!({"coefficient": k.to_string(), "trace": t.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" (+) ")?;
            }
            write!(f, "{k} * {t}")?;
        }
        Ok(())
    }
}

/// `t ≃ Σ kᵢ·Tᵢ`: affine expansion into simple terms, then the traces of
/// their exhaustive pre-traces.
pub fn decompose(t: &Term, id: SemiringId) -> Result<LinearCombination> {
    let expansion: Vec<(Term, Value)> = affine_expand(t, id)?.into_iter().collect();
    let parts: Vec<Vec<(Trace, Value)>> = expansion
        .par_iter()
        .map(|(s, k)| -> Result<Vec<(Trace, Value)>> {
            let sn = SimpleNet::new(s)?;
            Ok(sn
                .exhaustive()
                .iter()
                .map(|c| (trace_of_config(&sn.net, c), k.clone()))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut out = LinearCombination::new(id);
    for (t, k) in parts.into_iter().flatten() {
        out.add(&t, &k)?;
    }
    Ok(out)
}

/// `T | U` as a combination of traces over the naturals, computed from the
/// implementations.
pub fn trace_par_compose(t: &Trace, u: &Trace) -> Result<LinearCombination> {
    decompose(
        &Term::par(implement_trace(t), implement_trace(u)),
        SemiringId::Nat,
    )
}
