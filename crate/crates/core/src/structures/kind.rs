use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Associative,
    CommutativeAssociative,
    Lie,
    Poisson,
    Zinbiel,
    Dendriform,
    Tridendriform,
    PreLie,
    PostLie,
    PrePoisson,
    PostPoisson,
}

/// Name of an operation inside a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Circ,
    Dot,
    Succ,
    Prec,
    Bracket,
    Triangle,
}

/// Which side of an action: `l(x)v` or `r(x)v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl StructureKind {
    pub const ALL: [StructureKind; 11] = [
        StructureKind::Associative,
        StructureKind::CommutativeAssociative,
        StructureKind::Lie,
        StructureKind::Poisson,
        StructureKind::Zinbiel,
        StructureKind::Dendriform,
        StructureKind::Tridendriform,
        StructureKind::PreLie,
        StructureKind::PostLie,
        StructureKind::PrePoisson,
        StructureKind::PostPoisson,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StructureKind::Associative => "associative",
            StructureKind::CommutativeAssociative => "commutative-associative",
            StructureKind::Lie => "lie",
            StructureKind::Poisson => "poisson",
            StructureKind::Zinbiel => "zinbiel",
            StructureKind::Dendriform => "dendriform",
            StructureKind::Tridendriform => "tridendriform",
            StructureKind::PreLie => "pre-lie",
            StructureKind::PostLie => "post-lie",
            StructureKind::PrePoisson => "pre-poisson",
            StructureKind::PostPoisson => "post-poisson",
        }
    }

    pub fn required_roles(self) -> &'static [Role] {
        use Role::*;
        match self {
            StructureKind::Associative | StructureKind::CommutativeAssociative => &[Circ],
            StructureKind::Lie => &[Bracket],
            StructureKind::Poisson => &[Bracket, Circ],
            StructureKind::Zinbiel => &[Succ],
            StructureKind::Dendriform => &[Succ, Prec],
            StructureKind::Tridendriform => &[Succ, Prec, Dot],
            StructureKind::PreLie => &[Triangle],
            StructureKind::PostLie => &[Bracket, Triangle],
            StructureKind::PrePoisson => &[Triangle, Succ],
            StructureKind::PostPoisson => &[Bracket, Triangle, Succ, Dot],
        }
    }

    /// Roles that may be present in a degenerate embedding; they are then checked
    /// to vanish or to equal the opposite of `succ`.
    pub fn optional_roles(self) -> &'static [Role] {
        use Role::*;
        match self {
            StructureKind::Zinbiel => &[Prec, Dot],
            StructureKind::Dendriform => &[Dot],
            StructureKind::PreLie => &[Bracket],
            StructureKind::PrePoisson => &[Prec, Bracket, Dot],
            StructureKind::PostPoisson => &[Prec],
            _ => &[],
        }
    }

    pub fn is_splitting(self) -> bool {
        matches!(
            self,
            StructureKind::Zinbiel
                | StructureKind::Dendriform
                | StructureKind::Tridendriform
                | StructureKind::PreLie
                | StructureKind::PostLie
                | StructureKind::PrePoisson
                | StructureKind::PostPoisson
        )
    }

    /// `+1` if the role is symmetric in this kind, `-1` if antisymmetric.
    pub fn role_symmetry(self, role: Role) -> Option<i8> {
        match (self, role) {
            (StructureKind::CommutativeAssociative | StructureKind::Poisson, Role::Circ) => Some(1),
            (StructureKind::PostPoisson, Role::Dot) => Some(1),
            (
                StructureKind::Lie | StructureKind::Poisson | StructureKind::PostLie | StructureKind::PostPoisson,
                Role::Bracket,
            ) => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Circ,
        Role::Dot,
        Role::Succ,
        Role::Prec,
        Role::Bracket,
        Role::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Circ => "circ",
            Role::Dot => "dot",
            Role::Succ => "succ",
            Role::Prec => "prec",
            Role::Bracket => "bracket",
            Role::Triangle => "triangle",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Role::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRole(s.to_string()))
    }
}
