//! Reading input documents. The shape of a document is recognized from its
//! keys, so every verb accepts files emitted by `relcone fixtures emit`.

use std::path::Path;

use num_rational::BigRational;
use relcone_core::cech::{CechCochain, Cover, CoverMap, RelCechCochain};
use relcone_core::chain::{ComplexMap, GradedComplex, Homotopy};
use relcone_core::geo::{parse_named, RelCocycle, RelRealPair};
use relcone_core::simplicial::{SimplicialComplex, SimplicialMap};
use relcone_core::{CoeffRing, Error, IntMatrix};
use serde_json::Value;

use crate::CliError;

pub enum Document {
    Matrix(IntMatrix),
    Complex(SimplicialComplex),
    Map(SimplicialMap),
    Chain(GradedComplex),
    ChainMap(ComplexMap),
    Homotopy(Homotopy),
    /// `Ψ∘f = f~∘Φ`
    Square { phi: ComplexMap, psi: ComplexMap, f: ComplexMap, ft: ComplexMap },
    Cover(Cover),
    CoverMap(CoverMap),
    Cochain(CechCochain),
    Pullback { map: CoverMap, cochain: CechCochain },
    Cocycle(RelCocycle),
    RelCochain(RelCechCochain),
    Pair(RelRealPair),
    Omega { map: SimplicialMap, omega: Vec<BigRational> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Matrix(_) => "matrix",
            Document::Complex(_) => "simplicial complex",
            Document::Map(_) => "simplicial map",
            Document::Chain(_) => "chain complex",
            Document::ChainMap(_) => "chain map",
            Document::Homotopy(_) => "homotopy",
            Document::Square { .. } => "commutative square",
            Document::Cover(_) => "cover",
            Document::CoverMap(_) => "cover map",
            Document::Cochain(_) => "Čech cochain",
            Document::Pullback { .. } => "cochain with a cover map",
            Document::Cocycle(_) => "relative cocycle",
            Document::RelCochain(_) => "relative cochain",
            Document::Pair(_) => "relative real pair",
            Document::Omega { .. } => "2-form on a map target",
        }
    }

    /// `ring` overrides the ring recorded in algebraic documents.
    pub fn from_value(v: &Value, ring: Option<&CoeffRing>) -> relcone_core::Result<Self> {
        if v.is_array() {
            return Ok(Document::Matrix(IntMatrix::from_json(v, None, None)?));
        }
        let has = |k: &str| v.get(k).is_some();
        let part = |k: &str| &v[k];
        Ok(if has("vertices") {
            Document::Complex(SimplicialComplex::from_json(v)?)
        } else if has("vmap") {
            Document::Map(SimplicialMap::from_json(v)?)
        } else if has("ranks") {
            Document::Chain(GradedComplex::from_json(v, ring)?)
        } else if has("phi") && has("psi") {
            Document::Square {
                phi: ComplexMap::from_json(part("phi"), ring)?,
                psi: ComplexMap::from_json(part("psi"), ring)?,
                f: ComplexMap::from_json(part("f"), ring)?,
                ft: ComplexMap::from_json(part("ft"), ring)?,
            }
        } else if has("h") {
            Document::Homotopy(Homotopy::from_json(v, ring)?)
        } else if has("f") {
            Document::ChainMap(ComplexMap::from_json(v, ring)?)
        } else if has("sets") {
            Document::Cover(Cover::from_json(v)?)
        } else if has("r") {
            Document::CoverMap(CoverMap::from_json(v)?)
        } else if has("kind") {
            Document::Cocycle(RelCocycle::from_json(v)?)
        } else if has("s") && has("t") {
            Document::RelCochain(RelCechCochain::from_json(v)?)
        } else if has("cover") {
            Document::Cochain(CechCochain::from_json(v)?)
        } else if has("cochain") {
            let map = CoverMap::from_json(part("map"))?;
            let cochain = CechCochain::from_json_on(map.dst(), part("cochain"))?;
            Document::Pullback { map, cochain }
        } else if has("alpha") {
            Document::Pair(RelRealPair::from_json(v)?)
        } else if has("omega") {
            let map = SimplicialMap::from_json(part("map"))?;
            let omega = parse_named(map.dst(), 2, part("omega"))?;
            Document::Omega { map, omega }
        } else {
            return Err(Error::Parse("unrecognized document: no known top-level keys".into()));
        })
    }
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_text(path: &str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_value(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io { path: path.into(), source: e })?;
    parse_text(path, &text)
}

pub fn read_document(path: &str, ring: Option<&CoeffRing>) -> Result<Document, CliError> {
    let v = read_value(path)?;
    Document::from_value(&v, ring).map_err(|source| CliError::Input { path: path.into(), source })
}

pub fn wrong_kind(verb: &str, path: &str, doc: &Document, expected: &str) -> CliError {
    CliError::Usage(format!("{verb}: {path} is a {}, expected {expected}", doc.kind()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use relcone_core::fixtures::{fixture, names_list};

    #[test]
    fn every_fixture_is_recognized() {
        for name in names_list() {
            let doc = Document::from_value(&fixture(&name).unwrap(), None).unwrap();
            let expected = match name.as_str() {
                n if n.starts_with("fix-s") && n.len() == 6 || n == "rp2" => "simplicial complex",
                n if n.starts_with("fix-") => "simplicial map",
                n if n.starts_with("cover-") => "cover map",
                n if n.starts_with("omega-") => "2-form on a map target",
                _ => "relative cocycle",
            };
            assert_eq!(doc.kind(), expected, "{name}");
        }
    }

    #[test]
    fn matrices_and_chain_complexes() {
        let v: Value = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(Document::from_value(&v, None).unwrap().kind(), "matrix");
        let v: Value = serde_json::from_str(r#"{"ranks":{"0":1,"1":1},"diff":{"1":[[2]]}}"#).unwrap();
        let Document::Chain(c) = Document::from_value(&v, Some(&CoeffRing::IntMod(2))).unwrap() else { panic!() };
        assert_eq!(*c.ring(), CoeffRing::IntMod(2));
        assert!(c.diff(1).is_zero());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_text("x.json", "{\n  \"a\": [1,\n") {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 0)),
            other => panic!("{other:?}"),
        }
        let v: Value = serde_json::from_str(r#"{"nothing": 1}"#).unwrap();
        assert!(Document::from_value(&v, None).is_err());
    }
}
