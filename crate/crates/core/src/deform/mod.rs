//! Truncated formal deformations, orderwise verification, quasiclassical limits,
//! deformations generated by commuting derivations, and example generators.

mod derive;
mod examples;
mod qcl;

pub use derive::{derive_deformation, DerivationPair};
pub use examples::{
    gen_product_shift, gen_product_shift_jet, gen_truncated_poly_example, gen_zinbiel_poly_example, monomial_basis,
    truncated_polynomial_algebra, unit_algebra, Monomial, PolyExample, ZinbielExample,
};
pub use qcl::{qcl, qcl_structure};

use crate::error::{Error, Result};
use crate::kernel::{Jet, Rational, Scalar};
use crate::structures::{check_module, check_structure, AxiomReport, ModuleData, StructureKind, StructurePresentation};

/// A structure or a module, over a given scalar ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Algebraic<S> {
    Structure(StructurePresentation<S>),
    Module(ModuleData<S>),
}

impl<S: Scalar> Algebraic<S> {
    pub fn kind(&self) -> StructureKind {
        match self {
            Algebraic::Structure(p) => p.kind,
            Algebraic::Module(m) => m.base.kind,
        }
    }

    /// The structure itself, or the semidirect product of a module.
    pub fn total(&self) -> Result<StructurePresentation<S>> {
        match self {
            Algebraic::Structure(p) => Ok(p.clone()),
            Algebraic::Module(m) => m.semidirect(),
        }
    }

    pub fn check(&self) -> Result<AxiomReport> {
        match self {
            Algebraic::Structure(p) => check_structure(p),
            Algebraic::Module(m) => check_module(m),
        }
    }

    pub fn structure(&self) -> Result<&StructurePresentation<S>> {
        match self {
            Algebraic::Structure(p) => Ok(p),
            Algebraic::Module(_) => Err(Error::Invalid("expected a structure, found module data".into())),
        }
    }

    pub fn module(&self) -> Result<&ModuleData<S>> {
        match self {
            Algebraic::Module(m) => Ok(m),
            Algebraic::Structure(_) => Err(Error::Invalid("expected module data, found a structure".into())),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Algebraic<T> {
        match self {
            Algebraic::Structure(p) => Algebraic::Structure(p.map(f)),
            Algebraic::Module(m) => Algebraic::Module(m.map(f)),
        }
    }

    pub fn same_constants(&self, o: &Algebraic<S>) -> bool {
        match (self, o) {
            (Algebraic::Structure(a), Algebraic::Structure(b)) => a.same_constants(b),
            (Algebraic::Module(a), Algebraic::Module(b)) => a.same_constants(b),
            _ => false,
        }
    }
}

/// `Σ_s (layer s) h^s` truncated at `h^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationJet {
    pub order: usize,
    pub target: Algebraic<Jet>,
    /// Set when the generating series terminates before `h^(order+1)`.
    pub exact: bool,
}

impl DeformationJet {
    pub fn new(target: Algebraic<Jet>, order: usize) -> Result<Self> {
        let ok = std::cell::Cell::new(true);
        target.map(|j| {
            if j.order() != order {
                ok.set(false);
            }
            Rational::zero()
        });
        if !ok.get() {
            return Err(Error::Invalid(format!(
                "all coefficients must be jets of order {order}"
            )));
        }
        Ok(DeformationJet {
            order,
            target,
            exact: false,
        })
    }

    /// The undeformed jet: every layer above 0 vanishes.
    pub fn trivial(base: &Algebraic<Rational>, order: usize) -> Self {
        DeformationJet {
            order,
            target: base.map(|c| Jet::constant(c.clone(), order)),
            exact: true,
        }
    }

    pub fn from_structure_layers(layers: &[StructurePresentation<Rational>]) -> Result<Self> {
        let p = StructurePresentation::from_layers(layers)?;
        Ok(DeformationJet {
            order: layers.len() - 1,
            target: Algebraic::Structure(p),
            exact: false,
        })
    }

    pub fn layer(&self, s: usize) -> Algebraic<Rational> {
        self.target.map(|j| j.coeff(s).clone())
    }

    pub fn kind(&self) -> StructureKind {
        self.target.kind()
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::Invalid("cannot raise the truncation order".into()));
        }
        Ok(DeformationJet {
            order,
            target: self.target.map(|j| j.truncate(order)),
            exact: self.exact,
        })
    }
}

/// Orderwise check of every defining identity; layer 0 must be valid first.
pub fn check_deformation(j: &DeformationJet) -> Result<AxiomReport> {
    let zero = match j.layer(0).check() {
        Ok(r) => r,
        Err(Error::InvalidBase(r)) => return Err(Error::InvalidLayerZero(r)),
        Err(e) => return Err(e),
    };
    if !zero.passed() {
        return Err(Error::InvalidLayerZero(zero));
    }
    check_structure(&j.target.total()?)
}
