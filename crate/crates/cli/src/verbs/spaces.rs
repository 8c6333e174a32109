use std::collections::BTreeMap;

use relcone_core::homology::AbGroup;
use relcone_core::simplicial::{compare_cones, cone_operator, mapping_cone_space, mapping_cylinder, SimplicialComplex};
use serde_json::{json, Value};

use super::{single, Verb};
use crate::input::{wrong_kind, Document};
use crate::report::{homology_of, summaries};
use crate::{CliError, Invocation, Outcome};

fn reduced(k: &SimplicialComplex, inv: &Invocation) -> Result<Value, CliError> {
    let mut h: BTreeMap<i64, AbGroup> = k.reduced_homology(&inv.ring_or_int()?)?;
    if let Some(n) = inv.degree {
        h.retain(|&d, _| d == n);
    }
    Ok(summaries(&h))
}

pub struct ConeSpace;

impl Verb for ConeSpace {
    fn name(&self) -> &'static str {
        "cone-space"
    }

    fn summary(&self) -> &'static str {
        "topological mapping cone (or --cylinder) of a simplicial map; cone operator of a complex"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["mapping_cone_space", "mapping_cylinder", "cone_operator", "chain_complex"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let (path, doc) = single(inv)?;
        match doc {
            Document::Map(phi) if inv.cylinder => {
                let cyl = mapping_cylinder(&phi);
                let h = homology_of(&cyl.complex.chain_complex(&inv.ring_or_int()?), inv.degree, false)?;
                Ok(Outcome::ok(json!({
                    "complex": cyl.complex.to_json(),
                    "faithful": cyl.faithful,
                    "H": h,
                    "src_inclusion": cyl.src_inclusion.to_json()["vmap"],
                    "dst_inclusion": cyl.dst_inclusion.to_json()["vmap"],
                    "retraction": cyl.retraction.to_json()["vmap"],
                })))
            }
            Document::Map(phi) => {
                let space = mapping_cone_space(&phi);
                Ok(Outcome::ok(json!({
                    "complex": space.complex.to_json(),
                    "faithful": space.faithful,
                    "reduced": reduced(&space.complex, inv)?,
                })))
            }
            Document::Complex(k) => {
                let op = cone_operator(&k);
                let failures = op.failures();
                let h: BTreeMap<String, Value> = op.h.iter().map(|(n, m)| (n.to_string(), m.to_json())).collect();
                Ok(Outcome::verdict(
                    json!({"cone": op.cone.to_json(), "h": h, "failures": failures, "reduced": reduced(&op.cone, inv)?}),
                    failures.is_empty(),
                ))
            }
            other => Err(wrong_kind(self.name(), &path, &other, "a simplicial map or complex")),
        }
    }
}

pub struct CompareCones;

impl Verb for CompareCones {
    fn name(&self) -> &'static str {
        "compare-cones"
    }

    fn summary(&self) -> &'static str {
        "compare the algebraic cone of a simplicial map with its cone space"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["compare_cones", "chain_map", "mapping_cone_space"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        match single(inv)? {
            (_, Document::Map(phi)) => {
                let cmp = compare_cones(&phi, &inv.ring_or_int()?)?;
                Ok(Outcome::verdict(cmp.to_json(), cmp.iso()))
            }
            (path, other) => Err(wrong_kind(self.name(), &path, &other, "a simplicial map")),
        }
    }
}
