use std::borrow::Cow;
use std::collections::BTreeMap;

use super::{Role, StructureKind};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Rational, Scalar, Space};

/// A space with named binary operations of a given kind.
#[derive(Clone, Debug, PartialEq)]
pub struct StructurePresentation<S> {
    pub space: Space,
    pub kind: StructureKind,
    pub ops: BTreeMap<Role, BilinearOp<S>>,
}

impl<S: Scalar> StructurePresentation<S> {
    /// Validates the role set against the kind and every table against the space.
    pub fn new(space: Space, kind: StructureKind, ops: BTreeMap<Role, BilinearOp<S>>) -> Result<Self> {
        let missing: Vec<String> = kind
            .required_roles()
            .iter()
            .filter(|r| !ops.contains_key(r))
            .map(|r| r.name().to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingRoles {
                kind: kind.tag().into(),
                missing,
            });
        }
        let extra: Vec<String> = ops
            .keys()
            .filter(|r| !kind.required_roles().contains(r) && !kind.optional_roles().contains(r))
            .map(|r| r.name().to_string())
            .collect();
        if !extra.is_empty() {
            return Err(Error::UnexpectedRoles {
                kind: kind.tag().into(),
                extra,
            });
        }
        let n = space.dim();
        for (role, op) in &ops {
            if op.dims() != (n, n, n) {
                return Err(Error::Dimension(format!(
                    "role {role} has shape {:?} on a {n}-dimensional space",
                    op.dims()
                )));
            }
        }
        Ok(StructurePresentation { space, kind, ops })
    }

    pub fn single(space: Space, kind: StructureKind, role: Role, op: BilinearOp<S>) -> Result<Self> {
        StructurePresentation::new(space, kind, BTreeMap::from([(role, op)]))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn op(&self, role: Role) -> Result<&BilinearOp<S>> {
        self.ops.get(&role).ok_or_else(|| Error::MissingRoles {
            kind: self.kind.tag().into(),
            missing: vec![role.name().into()],
        })
    }

    pub fn op_or_zero(&self, role: Role) -> Cow<'_, BilinearOp<S>> {
        match self.ops.get(&role) {
            Some(op) => Cow::Borrowed(op),
            None => Cow::Owned(BilinearOp::square(self.dim())),
        }
    }

    pub fn has(&self, role: Role) -> bool {
        self.ops.contains_key(&role)
    }

    /// Re-tags the presentation, revalidating roles.
    pub fn with_kind(&self, kind: StructureKind) -> Result<Self> {
        StructurePresentation::new(self.space.clone(), kind, self.ops.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructurePresentation<T> {
        StructurePresentation {
            space: self.space.clone(),
            kind: self.kind,
            ops: self.ops.iter().map(|(r, op)| (*r, op.map(&f))).collect(),
        }
    }

    /// True when both presentations have the same kind, dimension and structure constants.
    pub fn same_constants(&self, other: &StructurePresentation<S>) -> bool {
        self.kind == other.kind && self.dim() == other.dim() && self.ops == other.ops
    }
}

impl StructurePresentation<Rational> {
    pub fn scalar_deformation(&self, order: usize) -> StructurePresentation<Jet> {
        self.map(|c| Jet::constant(c.clone(), order))
    }
}

impl StructurePresentation<Jet> {
    /// Assembles a jet presentation from its `h`-layers, all of one kind and role set.
    pub fn from_layers(layers: &[StructurePresentation<Rational>]) -> Result<Self> {
        let first = layers.first().ok_or_else(|| Error::Invalid("no layers".into()))?;
        let mut ops = BTreeMap::new();
        for role in first.ops.keys() {
            let per: Vec<BilinearOp<Rational>> = layers.iter().map(|l| l.op(*role).cloned()).collect::<Result<_>>()?;
            ops.insert(*role, BilinearOp::from_layers(&per)?);
        }
        if layers
            .iter()
            .any(|l| l.ops.len() != first.ops.len() || l.dim() != first.dim())
        {
            return Err(Error::Invalid("layers disagree on roles or dimension".into()));
        }
        StructurePresentation::new(first.space.clone(), first.kind, ops)
    }

    pub fn layer(&self, s: usize) -> StructurePresentation<Rational> {
        self.map(|j| j.coeff(s).clone())
    }

    pub fn order(&self) -> Option<usize> {
        self.ops.values().find_map(BilinearOp::jet_order)
    }
}
