use serde::{Deserialize, Serialize};

use super::{Subject, Trace};
use crate::error::{Error, Result};
use crate::syntax::{Name, Polarity};

/// Serialized form of a trace: events with 1-based ids, the covering pairs
/// of the order, and the inactions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub events: Vec<TraceJsonEvent>,
    #[serde(default)]
    pub order: Vec<[usize; 2]>,
    #[serde(default)]
    pub ready: Vec<TraceJsonReady>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJsonEvent {
    pub id: usize,
    pub pol: String,
    pub subj: TraceJsonSubject,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJsonReady {
    pub pol: String,
    pub subj: TraceJsonSubject,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceJsonSubject {
    Name(String),
    Event(usize),
}

fn pol_str(p: Polarity) -> String {
    p.symbol().to_string()
}

fn parse_pol(s: &str) -> Result<Polarity> {
    match s {
        "+" => Ok(Polarity::Pos),
        "-" | "−" => Ok(Polarity::Neg),
        other => Err(Error::InvalidTrace(format!("unknown polarity `{other}`"))),
    }
}

impl Trace {
    /// The canonical form, serialized.
    pub fn to_json_repr(&self) -> TraceJson {
        let t = self.canonicalize();
        let subj = |s: &Subject| match s {
            Subject::Name(x) => TraceJsonSubject::Name(x.to_string()),
            Subject::Event(e) => TraceJsonSubject::Event(e + 1),
        };
        TraceJson {
            events: (0..t.len())
                .map(|e| TraceJsonEvent {
                    id: e + 1,
                    pol: pol_str(t.polarity(e)),
                    subj: subj(t.subject(e)),
                })
                .collect(),
            order: t.order().hasse().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
            ready: t
                .ready()
                .iter()
                .map(|(p, s)| TraceJsonReady {
                    pol: pol_str(*p),
                    subj: subj(s),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("traces serialize")
    }

    /// Reads a trace; ids may be any distinct numbers and `order` any
    /// acyclic relation, of which the transitive closure is taken.
    pub fn from_json_repr(j: &TraceJson) -> Result<Trace> {
        let mut ids: Vec<usize> = j.events.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTrace("duplicate event id".into()));
        }
        let index = |id: usize| {
            ids.binary_search(&id)
                .map_err(|_| Error::InvalidTrace(format!("unknown event id {id}")))
        };
        let subj = |s: &TraceJsonSubject| -> Result<Subject> {
            Ok(match s {
                TraceJsonSubject::Name(x) => {
                    if x.is_empty() {
                        return Err(Error::InvalidTrace("empty name".into()));
                    }
                    Subject::Name(Name::new(x))
                }
                TraceJsonSubject::Event(id) => Subject::Event(index(*id)?),
            })
        };
        let mut events = vec![None; ids.len()];
        for e in &j.events {
            events[index(e.id)?] = Some((parse_pol(&e.pol)?, subj(&e.subj)?));
        }
        let order = j
            .order
            .iter()
            .map(|[a, b]| Ok((index(*a)?, index(*b)?)))
            .collect::<Result<Vec<_>>>()?;
        let ready = j
            .ready
            .iter()
            .map(|r| Ok((parse_pol(&r.pol)?, subj(&r.subj)?)))
            .collect::<Result<Vec<_>>>()?;
        Trace::from_parts(events.into_iter().map(Option::unwrap).collect(), order, ready)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Trace> {
        let j: TraceJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidTrace(e.to_string()))?;
        Trace::from_json_repr(&j)
    }

    pub fn from_json_str(s: &str) -> Result<Trace> {
        let j: TraceJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidTrace(e.to_string()))?;
        Trace::from_json_repr(&j)
    }
}
