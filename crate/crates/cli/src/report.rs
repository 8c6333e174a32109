use std::collections::BTreeMap;

use relcone_core::chain::GradedComplex;
use relcone_core::homology::{homology, homology_at, AbGroup, HomologyGroup};
use relcone_core::Error;
use serde_json::{json, Map, Value};

use crate::Outcome;

pub fn group(g: &HomologyGroup, generators: bool) -> Value {
    g.summary().to_json(generators)
}

pub fn groups<'a>(gs: impl IntoIterator<Item = (i64, &'a HomologyGroup)>, generators: bool) -> Value {
    Value::Object(gs.into_iter().map(|(n, g)| (n.to_string(), group(g, generators))).collect())
}

pub fn summaries(gs: &BTreeMap<i64, AbGroup>) -> Value {
    Value::Object(gs.iter().map(|(n, g)| (n.to_string(), g.to_json(false))).collect())
}

/// `{"n": group}` for all degrees of `c`, or only `degree` when given.
pub fn homology_of(c: &GradedComplex, degree: Option<i64>, generators: bool) -> relcone_core::Result<Value> {
    match degree {
        Some(n) => Ok(groups([(n, &homology_at(c, n)?)], generators)),
        None => Ok(groups(homology(c)?.iter().map(|(n, g)| (*n, g)), generators)),
    }
}

pub fn object(entries: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Object(entries.into_iter().collect::<Map<_, _>>())
}

/// Errors that are mathematical verdicts about well-formed input rather
/// than failures to compute.
pub fn verdict(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::NotACocycle => "not_a_cocycle",
        Error::NotClosed => "not_closed",
        Error::NotIsotropic => "not_isotropic",
        Error::NontrivialClass(_) => "nontrivial_class",
        Error::RationalObstruction => "rational_obstruction",
        Error::NotTorsion => "not_torsion",
        _ => return None,
    })
}

/// Turns verdict errors into a negative outcome and passes the rest through.
pub fn or_verdict(r: relcone_core::Result<Outcome>) -> Result<Outcome, crate::CliError> {
    match r {
        Ok(o) => Ok(o),
        Err(e) => match verdict(&e) {
            Some(tag) => Ok(Outcome::verdict(json!({"verdict": tag, "message": e.to_string()}), false)),
            None => Err(e.into()),
        },
    }
}
