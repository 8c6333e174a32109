use relcone_core::chain::{
    cone_of_cochain_map, cone_of_map, dual_complex, dual_map, homotopy_cone_iso, homotopy_cone_iso_inverse,
    kronecker, verify_cone_duality, ComplexMap, ConeElement, Homotopy,
};
use relcone_core::coeffs::int_to_json;
use relcone_core::homology::{connecting_hom, homology_at, induced_map, ker_coker_les, les_of_cone, quasi_iso};
use relcone_core::snf::snf;
use relcone_core::{Error, IntMatrix};
use serde_json::{json, Value};

use super::{single, Verb};
use crate::input::{parse_text, wrong_kind, Document};
use crate::report::{homology_of, object};
use crate::{CliError, Invocation, Outcome};

/// The chain map behind a map-like document.
fn as_chain_map(inv: &Invocation, path: &str, doc: Document) -> Result<ComplexMap, CliError> {
    match doc {
        Document::Map(phi) => Ok(phi.chain_map(&inv.ring_or_int()?)),
        Document::ChainMap(f) => Ok(f),
        other => Err(wrong_kind(&inv.verb, path, &other, "a simplicial or chain map")),
    }
}

pub struct Snf;

impl Verb for Snf {
    fn name(&self) -> &'static str {
        "snf"
    }

    fn summary(&self) -> &'static str {
        "Smith normal form A = U·D·V of an integer matrix (--matrix or a file)"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["snf"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let a = match (&inv.matrix, inv.inputs.as_slice()) {
            (Some(text), []) => {
                let v = parse_text("--matrix", text)?;
                IntMatrix::from_json(&v, None, None).map_err(|source| CliError::Input { path: "--matrix".into(), source })?
            }
            (None, [_]) => match single(inv)? {
                (_, Document::Matrix(a)) => a,
                (path, other) => return Err(wrong_kind(self.name(), &path, &other, "a matrix")),
            },
            _ => return Err(CliError::Usage("snf takes either --matrix or one input file".into())),
        };
        let s = snf(&a);
        Ok(Outcome::ok(json!({
            "D": s.d.to_json(),
            "U": s.u.to_json(),
            "V": s.v.to_json(),
            "rank": s.rank,
            "divisors": s.divisors().iter().map(int_to_json).collect::<Vec<_>>(),
        })))
    }
}

pub struct Homology;

impl Verb for Homology {
    fn name(&self) -> &'static str {
        "homology"
    }

    fn summary(&self) -> &'static str {
        "homology of a complex, or relative homology H_n(f) of a map"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["chain_complex", "homology_at", "chain_map", "cone_of_map"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let (path, doc) = single(inv)?;
        let c = match doc {
            Document::Complex(k) => k.chain_complex(&inv.ring_or_int()?),
            Document::Chain(c) => c,
            other => cone_of_map(&as_chain_map(inv, &path, other)?),
        };
        Ok(Outcome::ok(json!({ "H": homology_of(&c, inv.degree, inv.generators)? })))
    }
}

pub struct Cone;

impl Cone {
    /// The cochain cone of the dual map, its cohomology, the duality check
    /// and the Kronecker pairing of cohomology against homology generators.
    fn dual_report(&self, f: &ComplexMap) -> relcone_core::Result<(Value, bool)> {
        if !f.ring().supports_duals() {
            return Err(Error::UnsupportedRing(f.ring().to_string(), "dual cones"));
        }
        let chain = cone_of_map(f);
        let cochain = cone_of_cochain_map(&dual_map(f)?);
        let duality = verify_cone_duality(f)?;
        let mut cohomology = Vec::new();
        let mut pairing = Vec::new();
        for n in chain.degrees() {
            let up = homology_at(cochain.reindexed(), -n)?;
            let down = homology_at(&chain, n)?;
            let a = f.src().rank(n - 1);
            let rows = up
                .generators()
                .iter()
                .map(|x| {
                    let x = ConeElement::from_vector(n, a, x);
                    down.generators()
                        .iter()
                        .map(|y| Ok(kronecker(f, &x, &ConeElement::from_vector(n, a, y))?.to_json()))
                        .collect::<relcone_core::Result<Vec<Value>>>()
                })
                .collect::<relcone_core::Result<Vec<_>>>()?;
            cohomology.push((n.to_string(), up.summary().to_json(false)));
            pairing.push((n.to_string(), json!(rows)));
        }
        let src_cohomology = homology_of(dual_complex(f.src())?.reindexed(), None, false)?;
        let residuals = object(duality.residuals.iter().map(|(n, r)| (n.to_string(), json!(r))));
        let report = json!({
            "cohomology": object(cohomology),
            "pairing": object(pairing),
            "duality": {"ok": duality.ok(), "residuals": residuals},
            "source_cohomology_reindexed": src_cohomology,
        });
        Ok((report, duality.ok()))
    }

    fn homotopy_report(&self, h: &Homotopy) -> relcone_core::Result<Outcome> {
        let fwd = homotopy_cone_iso(h)?;
        let back = homotopy_cone_iso_inverse(h)?;
        let (cf, cg) = (cone_of_map(h.f()), cone_of_map(h.g()));
        let inverse = fwd.then(&back)? == cf.identity_map() && back.then(&fwd)? == cg.identity_map();
        let (hf, hg) = (homology_of(&cf, None, false)?, homology_of(&cg, None, false)?);
        let same = hf == hg;
        Ok(Outcome::verdict(
            json!({"iso": fwd.to_json(), "inverse": back.to_json(), "inverse_checked": inverse, "H_f": hf, "H_g": hg, "match": same}),
            inverse && same,
        ))
    }
}

impl Verb for Cone {
    fn name(&self) -> &'static str {
        "cone"
    }

    fn summary(&self) -> &'static str {
        "algebraic mapping cone of a map (--dual adds the dual cone and pairing); cone isomorphism of a homotopy"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["cone_of_map", "cone_of_cochain_map", "dual_map", "dual_complex", "kronecker", "verify_cone_duality", "homotopy_cone_iso"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let (path, doc) = single(inv)?;
        if let Document::Homotopy(h) = doc {
            return Ok(self.homotopy_report(&h)?);
        }
        let f = as_chain_map(inv, &path, doc)?;
        let cone = cone_of_map(&f);
        let mut report = json!({"cone": cone.to_json(), "H": homology_of(&cone, inv.degree, inv.generators)?});
        let mut ok = true;
        if inv.dual {
            let (dual, good) = self.dual_report(&f)?;
            report["dual"] = dual;
            ok = good;
        }
        Ok(Outcome::verdict(report, ok))
    }
}

pub struct Les;

impl Verb for Les {
    fn name(&self) -> &'static str {
        "les"
    }

    fn summary(&self) -> &'static str {
        "long exact sequence of a map with induced and connecting maps; five-lemma transfer for a square"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["les_of_cone", "induced_map", "connecting_hom", "quasi_iso", "five_lemma_transfer"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let (path, doc) = single(inv)?;
        if let Document::Square { phi, psi, f, ft } = doc {
            let t = relcone_core::homology::five_lemma_transfer(&phi, &psi, &f, &ft)?;
            return Ok(Outcome::verdict(
                json!({
                    "phi_quasi_iso": t.phi_quasi_iso,
                    "psi_quasi_iso": t.psi_quasi_iso,
                    "cone_quasi_iso": t.cone_quasi_iso,
                    "holds": t.holds(),
                    "cone_map": t.cone_map.to_json(),
                }),
                t.holds(),
            ));
        }
        let f = as_chain_map(inv, &path, doc)?;
        let les = les_of_cone(&f)?;
        let induced = f.degrees().into_iter().map(|n| Ok((n.to_string(), induced_map(&f, n)?.to_json())));
        let connecting = cone_of_map(&f).degrees().into_iter().map(|n| Ok((n.to_string(), connecting_hom(&f, n)?.to_json())));
        let report = json!({
            "les": les.to_json(),
            "exact": les.exact(),
            "induced": object(induced.collect::<relcone_core::Result<Vec<_>>>()?),
            "connecting": object(connecting.collect::<relcone_core::Result<Vec<_>>>()?),
            "quasi_iso": quasi_iso(&f)?,
        });
        Ok(Outcome::verdict(report, les.exact()))
    }
}

pub struct KerCoker;

impl Verb for KerCoker {
    fn name(&self) -> &'static str {
        "kercoker"
    }

    fn summary(&self) -> &'static str {
        "kernel/cokernel specializations of the relative homology of a map"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["ker_coker_les"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let (path, doc) = single(inv)?;
        let f = as_chain_map(inv, &path, doc)?;
        let rep = ker_coker_les(&f)?;
        Ok(Outcome::verdict(rep.to_json(), rep.ok()))
    }
}
