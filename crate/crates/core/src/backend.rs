//! Homology backends, one per coefficient ring, behind a registry.
//!
//! A backend turns the data `{x : A x ∈ span T} / span R` (matrices over the
//! complex's ring) into an integer-lattice presentation. Plain homology,
//! homology of a kernel complex and homology of a cokernel complex are all of
//! this shape.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::coeffs::CoeffRing;
use crate::error::{Error, Result};
use crate::homology::HomologyGroup;
use crate::lattice::{clear_denominators, preimage, saturate, Subquotient};
use crate::matrix::{IntMatrix, RatMatrix};

pub trait HomologyBackend: Send + Sync {
    fn name(&self) -> &'static str;

    fn handles(&self, ring: &CoeffRing) -> bool;

    /// Presents `{x : A x ∈ span T} / span R`. The caller guarantees
    /// `A R ⊆ span T`.
    fn present(&self, ring: &CoeffRing, a: &RatMatrix, t: &RatMatrix, r: &RatMatrix) -> Result<HomologyGroup>;
}

fn integral(m: &RatMatrix) -> Result<IntMatrix> {
    m.to_integer().ok_or_else(|| Error::Internal("non-integral matrix handed to an integral backend".into()))
}

pub struct IntegerBackend;

impl HomologyBackend for IntegerBackend {
    fn name(&self) -> &'static str {
        "integer-snf"
    }

    fn handles(&self, ring: &CoeffRing) -> bool {
        *ring == CoeffRing::Int
    }

    fn present(&self, ring: &CoeffRing, a: &RatMatrix, t: &RatMatrix, r: &RatMatrix) -> Result<HomologyGroup> {
        let lattice = preimage(&integral(a)?, &integral(t)?);
        let sq = Subquotient::new(&lattice, &integral(r)?);
        Ok(HomologyGroup::from_subquotient(ring.clone(), sq, false))
    }
}

/// Works in `Z^k` with `m·Z^k` added to both the target and the relations.
pub struct ModularBackend;

impl HomologyBackend for ModularBackend {
    fn name(&self) -> &'static str {
        "modular-snf"
    }

    fn handles(&self, ring: &CoeffRing) -> bool {
        matches!(ring, CoeffRing::IntMod(_))
    }

    fn present(&self, ring: &CoeffRing, a: &RatMatrix, t: &RatMatrix, r: &RatMatrix) -> Result<HomologyGroup> {
        let CoeffRing::IntMod(m) = ring else {
            return Err(Error::UnsupportedRing(ring.to_string(), "modular homology"));
        };
        let m = BigInt::from(*m);
        let scaled = |k: usize| IntMatrix::identity(k).scale(&m);
        let t = integral(t)?.hstack(&scaled(a.rows()))?;
        let r = integral(r)?.hstack(&scaled(a.cols()))?;
        let lattice = preimage(&integral(a)?, &t);
        let sq = Subquotient::new(&lattice, &r);
        Ok(HomologyGroup::from_subquotient(ring.clone(), sq, false))
    }
}

/// Clears denominators and keeps only the free part of the integral answer.
pub struct RationalBackend;

impl HomologyBackend for RationalBackend {
    fn name(&self) -> &'static str {
        "rational"
    }

    fn handles(&self, ring: &CoeffRing) -> bool {
        *ring == CoeffRing::Rat
    }

    fn present(&self, ring: &CoeffRing, a: &RatMatrix, t: &RatMatrix, r: &RatMatrix) -> Result<HomologyGroup> {
        let lattice = saturate(&preimage(&clear_denominators(a), &clear_denominators(t)));
        let sq = Subquotient::new(&lattice, &clear_denominators(r));
        Ok(HomologyGroup::from_subquotient(ring.clone(), sq, true))
    }
}

#[derive(Default)]
pub struct BackendRegistry {
    backends: Vec<Box<dyn HomologyBackend>>,
}

impl BackendRegistry {
    pub fn register(&mut self, backend: Box<dyn HomologyBackend>) {
        self.backends.push(backend);
    }

    /// The registry with the integer, rational and modular backends.
    pub fn standard() -> &'static BackendRegistry {
        static STANDARD: OnceLock<BackendRegistry> = OnceLock::new();
        STANDARD.get_or_init(|| {
            let mut r = BackendRegistry::default();
            r.register(Box::new(IntegerBackend));
            r.register(Box::new(RationalBackend));
            r.register(Box::new(ModularBackend));
            r
        })
    }

    pub fn for_ring(&self, ring: &CoeffRing) -> Result<&dyn HomologyBackend> {
        self.backends
            .iter()
            .find(|b| b.handles(ring))
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnsupportedRing(ring.to_string(), "homology"))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.backends.iter().map(|b| b.name()).collect()
    }
}
