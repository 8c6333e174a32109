use relcone_core::cech::{
    absolute_bockstein, bockstein, cech_diff, cohomology, is_relative_cocycle, pullback, relative_cohomology,
    relative_cone_complex, relative_diff, CechCochain, Cover, CoverMap, RelCechCochain,
};
use relcone_core::coeffs::parse_rational;
use relcone_core::CoeffRing;
use serde_json::{json, Value};

use super::{one_or_two, Verb};
use crate::input::{wrong_kind, Document};
use crate::report::{group, object};
use crate::{CliError, Invocation, Outcome};

pub struct Cech;

fn degrees(inv: &Invocation, top: i64) -> Vec<i64> {
    match inv.degree {
        Some(n) => vec![n],
        None => (0..=top).collect(),
    }
}

impl Cech {
    fn cover(&self, inv: &Invocation, c: &Cover) -> Result<Value, CliError> {
        let ring = inv.ring_or_int()?;
        let h = degrees(inv, c.nerve().dim())
            .into_iter()
            .map(|p| Ok((p.to_string(), group(&cohomology(c, &ring, p)?, inv.generators))))
            .collect::<relcone_core::Result<Vec<_>>>()?;
        Ok(json!({"nerve": c.nerve().to_json(), "H": object(h)}))
    }

    fn cover_map(&self, inv: &Invocation, m: &CoverMap) -> Result<Value, CliError> {
        let ring = inv.ring_or_int()?;
        let top = m.src().nerve().dim().max(m.dst().nerve().dim()) + 1;
        let h = degrees(inv, top)
            .into_iter()
            .map(|n| Ok((n.to_string(), group(&relative_cohomology(m, &ring, n)?, inv.generators))))
            .collect::<relcone_core::Result<Vec<_>>>()?;
        let cone = relative_cone_complex(m, &ring);
        let ranks = object((0..=top).map(|n| (n.to_string(), json!(cone.rank(n)))));
        Ok(json!({"H": object(h), "cone_ranks": ranks}))
    }

    fn cochain(&self, inv: &Invocation, c: &CechCochain) -> Result<Value, CliError> {
        let c = match inv.ring()? {
            Some(r) => c.with_ring(&r)?,
            None => c.clone(),
        };
        let d = cech_diff(&c);
        let cocycle = d == CechCochain::zero(c.cover(), c.degree() + 1, c.ring());
        let mut report = json!({"cochain": c.to_json(), "d": d.to_json(), "cocycle": cocycle});
        if let Some(k) = &inv.scale {
            let k = c.ring().from_rational(&parse_rational(&json!(k))?)?;
            report["scaled"] = c.scale(&k)?.to_json();
        }
        if *c.ring() == CoeffRing::AngleQ && cocycle {
            let (z, class) = absolute_bockstein(&c)?;
            report["bockstein"] = json!({"cocycle": z.to_json(), "class": class.to_json()});
        }
        Ok(report)
    }

    fn relative(&self, u: &RelCechCochain) -> Result<Value, CliError> {
        let cocycle = is_relative_cocycle(u);
        let mut report = json!({"d": relative_diff(u).to_json(), "cocycle": cocycle});
        if *u.ring() == CoeffRing::AngleQ && cocycle {
            let b = bockstein(u)?;
            report["bockstein"] =
                json!({"cocycle": b.cocycle.to_json(), "class": b.class.to_json(), "group": b.group.to_json(false)});
        }
        Ok(report)
    }
}

impl Verb for Cech {
    fn name(&self) -> &'static str {
        "cech"
    }

    fn summary(&self) -> &'static str {
        "Čech cohomology of a cover or a cover map; differentials, sums, pullbacks and Bockstein images of cochains"
    }

    fn operations(&self) -> &'static [&'static str] {
        &["nerve", "cech_diff", "pullback", "relative_cone_complex", "bockstein", "add", "neg", "mul", "angle_lift"]
    }

    fn run(&self, inv: &Invocation) -> Result<Outcome, CliError> {
        let mut docs = one_or_two(inv)?;
        if docs.len() == 2 {
            let (pb, b) = docs.pop().expect("two documents");
            let (pa, a) = docs.pop().expect("two documents");
            return match (a, b) {
                (Document::Cochain(a), Document::Cochain(b)) => Ok(Outcome::ok(json!({
                    "sum": a.add(&b)?.to_json(),
                    "difference": a.add(&b.neg())?.to_json(),
                }))),
                (Document::Cochain(_), other) => Err(wrong_kind(self.name(), &pb, &other, "a second cochain")),
                (other, _) => Err(wrong_kind(self.name(), &pa, &other, "a cochain")),
            };
        }
        let (path, doc) = docs.pop().expect("one document");
        let report = match doc {
            Document::Cover(c) => self.cover(inv, &c)?,
            Document::CoverMap(m) => self.cover_map(inv, &m)?,
            Document::Cochain(c) => self.cochain(inv, &c)?,
            Document::Pullback { map, cochain } => {
                let p = pullback(&cochain, &map)?;
                let commutes = cech_diff(&p) == pullback(&cech_diff(&cochain), &map)?;
                json!({"pullback": p.to_json(), "commutes_with_d": commutes})
            }
            Document::RelCochain(u) => self.relative(&u)?,
            Document::Cocycle(c) => self.relative(c.data())?,
            other => return Err(wrong_kind(self.name(), &path, &other, "a cover, cover map or cochain")),
        };
        Ok(Outcome::ok(report))
    }
}
