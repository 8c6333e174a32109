//! The verb registry. Each verb is a trait object that knows its name, the
//! library operations it reaches and how to run an invocation.

mod algebra;
mod cech;
mod fixtures;
mod geo;
mod spaces;

use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::input::{read_document, Document};
use crate::{CliError, Invocation, Outcome};

pub use fixtures::{emit, sweep};

pub trait Verb: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Library operations this verb calls, by their library names.
    fn operations(&self) -> &'static [&'static str];
    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError>;
}

pub struct Registry {
    verbs: Vec<Box<dyn Verb>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { verbs: Vec::new() }
    }

    pub fn register(&mut self, verb: Box<dyn Verb>) {
        self.verbs.retain(|v| v.name() != verb.name());
        self.verbs.push(verb);
    }

    pub fn standard() -> &'static Registry {
        static STANDARD: OnceLock<Registry> = OnceLock::new();
        STANDARD.get_or_init(|| {
            let mut r = Registry::empty();
            r.register(Box::new(algebra::Snf));
            r.register(Box::new(algebra::Homology));
            r.register(Box::new(algebra::Cone));
            r.register(Box::new(spaces::ConeSpace));
            r.register(Box::new(spaces::CompareCones));
            r.register(Box::new(algebra::Les));
            r.register(Box::new(algebra::KerCoker));
            r.register(Box::new(cech::Cech));
            r.register(Box::new(geo::Classify));
            r.register(Box::new(geo::Trivialize));
            r.register(Box::new(geo::Integrality));
            r.register(Box::new(geo::BohrSommerfeld));
            r.register(Box::new(fixtures::Fixtures));
            r
        })
    }

    pub fn get(&self, name: &str) -> Option<&dyn Verb> {
        self.verbs.iter().find(|v| v.name() == name).map(|v| v.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.verbs.iter().map(|v| v.name()).collect()
    }

    pub fn verbs(&self) -> impl Iterator<Item = &dyn Verb> {
        self.verbs.iter().map(|v| v.as_ref())
    }

    pub fn to_json(&self) -> Value {
        let verbs: Vec<Value> = self
            .verbs()
            .map(|v| json!({"verb": v.name(), "summary": v.summary(), "operations": v.operations()}))
            .collect();
        json!({ "verbs": verbs })
    }
}

/// Exactly one input document.
fn single(inv: &Invocation) -> Result<(String, Document), CliError> {
    match inv.inputs.as_slice() {
        [path] => Ok((path.clone(), read_document(path, inv.ring()?.as_ref())?)),
        _ => Err(CliError::Usage(format!("{} takes exactly one input file, got {}", inv.verb, inv.inputs.len()))),
    }
}

/// One or two input documents.
fn one_or_two(inv: &Invocation) -> Result<Vec<(String, Document)>, CliError> {
    if !(1..=2).contains(&inv.inputs.len()) {
        return Err(CliError::Usage(format!("{} takes one or two input files, got {}", inv.verb, inv.inputs.len())));
    }
    let ring = inv.ring()?;
    inv.inputs.iter().map(|p| Ok((p.clone(), read_document(p, ring.as_ref())?))).collect()
}
