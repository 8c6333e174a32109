use relcone_core::cech::{cech_diff, relative_diff};
use relcone_core::geo::{
    bohr_sommerfeld, classify, dixmier_douady, group_op, inverse, is_equivalent, is_integral, quasi_line_bundle,
    trivialize, validate, RelCocycle,
};
use relcone_core::Error;
use serde_json::json;

use super::{one_or_two, single, Verb};
use crate::input::{wrong_kind, Document};
use crate::report::or_verdict;
use crate::{CliError, Invocation, Outcome};

fn cocycles(inv: &Invocation, docs: Vec<(String, Document)>) -> Result<Vec<RelCocycle>, CliError> {
    docs.into_iter()
        .map(|(path, doc)| match doc {
            Document::Cocycle(c) => Ok(c),
            other => Err(wrong_kind(&inv.verb, &path, &other, "a relative cocycle")),
        })
        .collect()
}

pub struct Classify;

impl Classify {
    fn one(&self, c: &RelCocycle) -> relcone_core::Result<Outcome> {
        let v = validate(c);
        if !v.valid() {
            return Ok(Outcome::verdict(json!({"valid": false, "validation": v.to_json()}), false));
        }
        let mut report = classify(c)?.to_json();
        report["valid"] = json!(true);
        Ok(Outcome::ok(report))
    }

    fn two(&self, a: &RelCocycle, b: &RelCocycle) -> relcone_core::Result<Outcome> {
        let (ka, kb) = (classify(a)?, classify(b)?);
        let sum = classify(&group_op(a, b)?)?;
        let neg = classify(&inverse(a))?;
        let homomorphism = sum.class == ka.class.add(&kb.class)? && neg.class.add(&ka.class)?.is_zero();
        Ok(Outcome::verdict(
            json!({
                "first": ka.to_json(),
                "second": kb.to_json(),
                "sum": sum.to_json(),
                "inverse_of_first": neg.to_json(),
                "homomorphism": homomorphism,
            }),
            homomorphism,
        ))
    }
}

impl Verb for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }

    fn summary(&self) -> &'static str {
        "validate and classify a relative cocycle in H^q(Φ; Z); with two inputs, check additivity"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["validate", "classify", "group_op", "inverse", "bockstein", "dixmier_douady"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let mut docs = one_or_two(inv)?;
        if let [(_, Document::Cochain(_))] = docs.as_slice() {
            let Some((path, Document::Cochain(t))) = docs.pop() else { unreachable!() };
            let k = dixmier_douady(&t).map_err(|source| CliError::Input { path, source })?;
            return Ok(Outcome::ok(k.to_json()));
        }
        let cs = cocycles(inv, docs)?;
        or_verdict(match cs.as_slice() {
            [c] => self.one(c),
            [a, b] => self.two(a, b),
            _ => unreachable!("one_or_two"),
        })
    }
}

pub struct Trivialize;

impl Verb for Trivialize {
    fn name(&self) -> &'static str {
        "trivialize"
    }

    fn summary(&self) -> &'static str {
        "find (ρ, τ) with δ(ρ, τ) = c, or report the nonzero class; with two inputs, decide equivalence"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["trivialize", "is_equivalent", "quasi_line_bundle"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let mut docs = one_or_two(inv)?;
        if let [(_, Document::Cochain(_))] = docs.as_slice() {
            let Some((_, Document::Cochain(t))) = docs.pop() else { unreachable!() };
            return or_verdict(quasi_line_bundle(&t).map(|s| {
                let verified = cech_diff(&s) == t;
                Outcome::verdict(json!({"trivial": true, "witness": s.to_json(), "verified": verified}), verified)
            }));
        }
        let cs = cocycles(inv, docs)?;
        let outcome = match cs.as_slice() {
            [c] => match trivialize(c) {
                Ok(w) => {
                    let verified = relative_diff(&w) == *c.data();
                    Ok(Outcome::verdict(json!({"trivial": true, "witness": w.to_json(), "verified": verified}), verified))
                }
                Err(Error::NontrivialClass(k)) => {
                    Ok(Outcome::verdict(json!({"trivial": false, "class": k.to_json()}), false))
                }
                Err(e) => Err(e),
            },
            [a, b] => is_equivalent(a, b).map(|w| match w {
                Some(w) => Outcome::ok(json!({"equivalent": true, "witness": w.to_json()})),
                None => Outcome::verdict(json!({"equivalent": false}), false),
            }),
            _ => unreachable!("one_or_two"),
        };
        or_verdict(outcome)
    }
}

pub struct Integrality;

impl Verb for Integrality {
    fn name(&self) -> &'static str {
        "integrality"
    }

    fn summary(&self) -> &'static str {
        "pair a relative real class (α, β) with integral generators and decide integrality"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["is_integral"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        match single(inv)? {
            (_, Document::Pair(p)) => or_verdict(is_integral(&p).map(|r| Outcome::verdict(r.to_json(), r.integral()))),
            (path, other) => Err(wrong_kind(self.name(), &path, &other, "a relative real pair")),
        }
    }
}

pub struct BohrSommerfeld;

impl Verb for BohrSommerfeld {
    fn name(&self) -> &'static str {
        "bohr-sommerfeld"
    }

    fn summary(&self) -> &'static str {
        "Bohr-Sommerfeld condition for a 2-form on the target of an isotropic map"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["bohr_sommerfeld", "is_integral"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        match single(inv)? {
            (_, Document::Omega { map, omega }) => {
                or_verdict(bohr_sommerfeld(&omega, &map).map(|r| Outcome::verdict(r.to_json(), r.integral())))
            }
            (path, other) => Err(wrong_kind(self.name(), &path, &other, "a 2-form with its map")),
        }
    }
}
