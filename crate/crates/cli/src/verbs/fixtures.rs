use std::path::Path;

use rayon::prelude::*;
use relcone_core::cech::relative_cohomology;
use relcone_core::chain::cone_of_map;
use relcone_core::fixtures::{fixture, names_list};
use relcone_core::geo::{bohr_sommerfeld, classify, is_integral, validate};
use relcone_core::simplicial::compare_cones;
use relcone_core::CoeffRing;
use serde_json::{json, Value};

use super::Verb;
use crate::input::{read_value, Document};
use crate::report::{group, homology_of, object};
use crate::{render, CliError, Invocation, Outcome};

/// The canonical text of a named fixture, as committed in the corpus.
pub fn emit(name: &str) -> relcone_core::Result<String> {
    Ok(render(&fixture(name)?))
}

/// What the sweep records for one document.
fn summarize(v: &Value) -> relcone_core::Result<Value> {
    let z = CoeffRing::Int;
    let doc = Document::from_value(v, None)?;
    let mut out = json!({"type": doc.kind()});
    match &doc {
        Document::Complex(k) => {
            out["H"] = homology_of(&k.chain_complex(&z), None, false)?;
            out["H_mod2"] = homology_of(&k.chain_complex(&CoeffRing::IntMod(2)), None, false)?;
        }
        Document::Map(phi) => {
            out["H_relative"] = homology_of(&cone_of_map(&phi.chain_map(&z)), None, false)?;
            out["cones_agree"] = json!(compare_cones(phi, &z)?.iso());
        }
        Document::CoverMap(m) => {
            let top = m.src().nerve().dim().max(m.dst().nerve().dim()) + 1;
            let h = (0..=top).map(|n| Ok((n.to_string(), group(&relative_cohomology(m, &z, n)?, false))));
            out["H_relative"] = object(h.collect::<relcone_core::Result<Vec<_>>>()?);
        }
        Document::Cocycle(c) => {
            out["valid"] = json!(validate(c).valid());
            out["classification"] = classify(c)?.to_json();
        }
        Document::Omega { map, omega } => out["integrality"] = bohr_sommerfeld(omega, map)?.to_json(),
        Document::Pair(p) => out["integrality"] = is_integral(p)?.to_json(),
        _ => {}
    }
    Ok(out)
}

/// The golden report over a set of named documents. Documents are summarized
/// in parallel; the report is keyed by name, so its order is fixed.
pub fn sweep(docs: &[(String, Value)]) -> relcone_core::Result<Value> {
    let rows: Vec<(String, Value)> =
        docs.par_iter().map(|(name, v)| Ok((name.clone(), summarize(v)?))).collect::<relcone_core::Result<_>>()?;
    Ok(json!({ "fixtures": object(rows) }))
}

fn io(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source: e }
}

pub struct Fixtures;

impl Fixtures {
    fn emit_to(&self, names: &[String], dir: &Path) -> Result<Outcome, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let mut written = Vec::new();
        for name in names {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, emit(name)?).map_err(|e| io(&path, e))?;
            written.push(path.display().to_string());
        }
        Ok(Outcome::ok(json!({ "written": written })))
    }

    /// Documents from a corpus directory, or freshly generated ones.
    fn corpus(&self, dir: Option<&str>) -> Result<Vec<(String, Value)>, CliError> {
        names_list()
            .into_iter()
            .map(|name| {
                let v = match dir {
                    Some(d) => read_value(&Path::new(d).join(format!("{name}.json")).display().to_string())?,
                    None => fixture(&name)?,
                };
                Ok((name, v))
            })
            .collect()
    }
}

impl Verb for Fixtures {
    fn name(&self) -> &'static str {
        "fixtures"
    }

    fn summary(&self) -> &'static str {
        "list | emit <name|all> [--out dir] | sweep [corpus dir] [--out file]"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["fixtures"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let args: Vec<&str> = inv.inputs.iter().map(String::as_str).collect();
        match args.as_slice() {
            ["list"] => Ok(Outcome::ok(json!({ "fixtures": names_list() }))),
            ["emit", "all"] => match &inv.out {
                Some(dir) => self.emit_to(&names_list(), dir),
                None => Err(CliError::Usage("fixtures emit all needs --out <dir>".into())),
            },
            ["emit", name] => match &inv.out {
                Some(dir) => self.emit_to(&[name.to_string()], dir),
                None => Ok(Outcome::ok(fixture(name)?)),
            },
            ["sweep", rest @ ..] if rest.len() <= 1 => {
                let report = sweep(&self.corpus(rest.first().copied())?)?;
                if let Some(path) = &inv.out {
                    std::fs::write(path, render(&report)).map_err(|e| io(path, e))?;
                }
                Ok(Outcome::ok(report))
            }
            _ => Err(CliError::Usage(format!("fixtures: expected {}", self.summary()))),
        }
    }
}
