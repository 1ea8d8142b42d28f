use std::collections::BTreeMap;

use super::laws::{assoc, run_laws, Eval, Law};
use super::{check_structure, AxiomReport, Role, Side, StructureKind, StructurePresentation};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Rational, Scalar, Space};

/// A carrier space acted on by a base structure, optionally with its own operations.
///
/// The action of role `∗` on side `Left` is stored as the table `(i, v) ↦ l∗(e_i) f_v`,
/// on side `Right` as `(i, u) ↦ r∗(e_i) f_u`; both are `base × carrier → carrier`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData<S> {
    pub base: StructurePresentation<S>,
    pub carrier: Space,
    pub carrier_ops: BTreeMap<Role, BilinearOp<S>>,
    pub actions: BTreeMap<(Role, Side), BilinearOp<S>>,
}

impl<S: Scalar> ModuleData<S> {
    pub fn new(
        base: StructurePresentation<S>,
        carrier: Space,
        carrier_ops: BTreeMap<Role, BilinearOp<S>>,
        actions: BTreeMap<(Role, Side), BilinearOp<S>>,
    ) -> Result<Self> {
        let (a, v) = (base.dim(), carrier.dim());
        for role in base.ops.keys() {
            for side in [Side::Left, Side::Right] {
                if !actions.contains_key(&(*role, side)) {
                    return Err(Error::MissingRoles {
                        kind: base.kind.tag().into(),
                        missing: vec![action_name(*role, side)],
                    });
                }
            }
        }
        for ((role, side), op) in &actions {
            if !base.has(*role) {
                return Err(Error::UnexpectedRoles {
                    kind: base.kind.tag().into(),
                    extra: vec![action_name(*role, *side)],
                });
            }
            if op.dims() != (a, v, v) {
                return Err(Error::Dimension(format!(
                    "action {} has shape {:?}, expected {:?}",
                    action_name(*role, *side),
                    op.dims(),
                    (a, v, v)
                )));
            }
        }
        for (role, op) in &carrier_ops {
            if !base.has(*role) {
                return Err(Error::UnexpectedRoles {
                    kind: base.kind.tag().into(),
                    extra: vec![role.name().into()],
                });
            }
            if op.dims() != (v, v, v) {
                return Err(Error::Dimension(format!(
                    "carrier role {role} has shape {:?}",
                    op.dims()
                )));
            }
        }
        Ok(ModuleData {
            base,
            carrier,
            carrier_ops,
            actions,
        })
    }

    /// Fills each right action from the left one using the symmetry of the role
    /// (`r = l` for commutative, `r = −l` for antisymmetric operations).
    pub fn from_left_actions(
        base: StructurePresentation<S>,
        carrier: Space,
        carrier_ops: BTreeMap<Role, BilinearOp<S>>,
        left: BTreeMap<Role, BilinearOp<S>>,
    ) -> Result<Self> {
        let mut actions = BTreeMap::new();
        for (role, l) in left {
            let r = match base.kind.role_symmetry(role) {
                Some(1) => l.clone(),
                Some(_) => l.negated(),
                None => {
                    return Err(Error::Invalid(format!(
                        "role {role} of {} needs an explicit right action",
                        base.kind
                    )))
                }
            };
            actions.insert((role, Side::Left), l);
            actions.insert((role, Side::Right), r);
        }
        ModuleData::new(base, carrier, carrier_ops, actions)
    }

    pub fn action(&self, role: Role, side: Side) -> Result<&BilinearOp<S>> {
        self.actions.get(&(role, side)).ok_or_else(|| Error::MissingRoles {
            kind: self.base.kind.tag().into(),
            missing: vec![action_name(role, side)],
        })
    }

    /// Carrier operation of `role`, zero when absent.
    pub fn carrier_op_or_zero(&self, role: Role) -> BilinearOp<S> {
        self.carrier_ops
            .get(&role)
            .cloned()
            .unwrap_or_else(|| BilinearOp::square(self.carrier.dim()))
    }

    pub fn has_trivial_carrier(&self) -> bool {
        self.carrier_ops.values().all(BilinearOp::is_zero)
    }

    pub fn without_carrier_ops(&self) -> Self {
        ModuleData {
            carrier_ops: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ModuleData<T> {
        ModuleData {
            base: self.base.map(&f),
            carrier: self.carrier.clone(),
            carrier_ops: self.carrier_ops.iter().map(|(r, op)| (*r, op.map(&f))).collect(),
            actions: self.actions.iter().map(|(k, op)| (*k, op.map(&f))).collect(),
        }
    }

    /// `(x,u)⊙(y,v) = (x⊙y, l(x)v + r(y)u + u⊙v)` for every role, base block first.
    pub fn semidirect(&self) -> Result<StructurePresentation<S>> {
        let (a, v) = (self.base.dim(), self.carrier.dim());
        let n = a + v;
        let mut ops = BTreeMap::new();
        for (role, base_op) in &self.base.ops {
            let mut op = BilinearOp::square(n);
            base_op.place_into(&mut op, 0, 0, 0);
            self.action(*role, Side::Left)?.place_into(&mut op, 0, a, a);
            self.action(*role, Side::Right)?.opposite().place_into(&mut op, a, 0, a);
            if let Some(c) = self.carrier_ops.get(role) {
                c.place_into(&mut op, a, a, a);
            }
            ops.insert(*role, op);
        }
        StructurePresentation::new(self.base.space.direct_sum(&self.carrier), self.base.kind, ops)
    }

    /// Inverse of [`ModuleData::semidirect`] for block-shaped operations.
    pub fn from_semidirect(total: &StructurePresentation<S>, base_space: Space, carrier: Space) -> Result<Self> {
        let (a, v) = (base_space.dim(), carrier.dim());
        if total.dim() != a + v {
            return Err(Error::Dimension("semidirect dimension mismatch".into()));
        }
        let mut base_ops = BTreeMap::new();
        let mut carrier_ops = BTreeMap::new();
        let mut actions = BTreeMap::new();
        for (role, op) in &total.ops {
            let bb = op.extract((0, a), (0, a), (0, a));
            let bc = op.extract((0, a), (a, v), (a, v));
            let cb = op.extract((a, v), (0, a), (a, v));
            let cc = op.extract((a, v), (a, v), (a, v));
            let stray = op.extract((0, a), (0, a), (a, v)).nnz()
                + op.extract((0, a), (a, v), (0, a)).nnz()
                + op.extract((a, v), (0, a), (0, a)).nnz()
                + op.extract((a, v), (a, v), (0, a)).nnz();
            if stray != 0 {
                return Err(Error::Invalid(format!("role {role} is not block-shaped")));
            }
            base_ops.insert(*role, bb);
            actions.insert((*role, Side::Left), bc);
            actions.insert((*role, Side::Right), cb.opposite());
            if !cc.is_zero() {
                carrier_ops.insert(*role, cc);
            }
        }
        let base = StructurePresentation::new(base_space, total.kind, base_ops)?;
        ModuleData::new(base, carrier, carrier_ops, actions)
    }

    /// Structure constants equal role by role (labels ignored).
    pub fn same_constants(&self, o: &ModuleData<S>) -> bool {
        let nz = |m: &BTreeMap<Role, BilinearOp<S>>| -> BTreeMap<Role, BilinearOp<S>> {
            m.iter()
                .filter(|(_, op)| !op.is_zero())
                .map(|(r, op)| (*r, op.clone()))
                .collect()
        };
        self.base.same_constants(&o.base)
            && self.carrier.dim() == o.carrier.dim()
            && nz(&self.carrier_ops) == nz(&o.carrier_ops)
            && self.actions == o.actions
    }
}

impl ModuleData<Rational> {
    pub fn scalar_deformation(&self, order: usize) -> ModuleData<Jet> {
        self.map(|c| Jet::constant(c.clone(), order))
    }
}

impl ModuleData<Jet> {
    pub fn layer(&self, s: usize) -> ModuleData<Rational> {
        self.map(|j| j.coeff(s).clone())
    }
}

pub fn action_name(role: Role, side: Side) -> String {
    match side {
        Side::Left => format!("l_{role}"),
        Side::Right => format!("r_{role}"),
    }
}

/// Valid exactly when the semidirect product satisfies the axioms of the base kind.
pub fn check_module<S: Scalar>(m: &ModuleData<S>) -> Result<AxiomReport> {
    let base = check_structure(&m.base)?;
    if !base.passed() {
        return Err(Error::InvalidBase(base));
    }
    check_structure(&m.semidirect()?)
}

/// The regular module: carrier = base, actions by left and right multiplication.
pub fn regular_module<S: Scalar>(p: &StructurePresentation<S>) -> Result<ModuleData<S>> {
    let mut actions = BTreeMap::new();
    for (role, op) in &p.ops {
        actions.insert((*role, Side::Left), op.clone());
        actions.insert((*role, Side::Right), op.opposite());
    }
    ModuleData::new(p.clone(), p.space.clone(), p.ops.clone(), actions)
}

/// Dual module on the dual carrier: `l' = rᵀ`, `r' = lᵀ` in dual bases.
///
/// For associative kinds this is `(V*, −r*, −l*)`; for a Lie bracket action it is
/// `ρ*` since `r = −l`; for a Poisson module it is `(ρ_{,}*, −ρ_∘*)`, where
/// `ρ*(x) = −ρ(x)ᵀ`.
pub fn dualize_module<S: Scalar>(m: &ModuleData<S>) -> Result<ModuleData<S>> {
    if !matches!(
        m.base.kind,
        StructureKind::Associative
            | StructureKind::CommutativeAssociative
            | StructureKind::Lie
            | StructureKind::Poisson
    ) {
        return Err(Error::Unsupported(format!("dual module over {}", m.base.kind)));
    }
    if !m.has_trivial_carrier() {
        return Err(Error::NontrivialCarrier);
    }
    let mut actions = BTreeMap::new();
    for role in m.base.ops.keys() {
        let l = m.action(*role, Side::Left)?;
        let r = m.action(*role, Side::Right)?;
        actions.insert((*role, Side::Left), r.transpose_action()?);
        actions.insert((*role, Side::Right), l.transpose_action()?);
    }
    ModuleData::new(m.base.clone(), m.carrier.dual(), BTreeMap::new(), actions)
}

/// `ρ*(x) = −ρ(x)ᵀ` applied to an action table.
pub fn star_action<S: Scalar>(action: &BilinearOp<S>) -> Result<BilinearOp<S>> {
    Ok(action.transpose_action()?.negated())
}

/// The six identities of an associative bimodule algebra `(V, ·, l, r)`.
pub fn check_bimodule_equations<S: Scalar>(m: &ModuleData<S>) -> Result<AxiomReport> {
    if !matches!(
        m.base.kind,
        StructureKind::Associative | StructureKind::CommutativeAssociative
    ) {
        return Err(Error::Unsupported(
            "bimodule identities need an associative base".into(),
        ));
    }
    let c = m.base.op(Role::Circ)?;
    let l = m.action(Role::Circ, Side::Left)?;
    let r = m.action(Role::Circ, Side::Right)?;
    let dot = m.carrier_op_or_zero(Role::Circ);
    let (a, v) = (m.base.dim(), m.carrier.dim());
    let dot = &dot;
    fn law<'a, S>(id: &'static str, dims: [usize; 3], eval: Eval<'a, S>) -> Law<'a, S> {
        Law { id, dims, eval }
    }
    let laws = vec![
        law(
            "LeftComposition",
            [a, a, v],
            Box::new(move |x, y, u| l.vb(&c.bb(x, y), u).minus(&l.bv(x, &l.bb(y, u)))),
        ),
        law(
            "LeftRightCommute",
            [a, a, v],
            Box::new(move |x, y, u| l.bv(x, &r.bb(y, u)).minus(&r.bv(y, &l.bb(x, u)))),
        ),
        law(
            "RightComposition",
            [a, a, v],
            Box::new(move |x, y, u| r.vb(&c.bb(x, y), u).minus(&r.bv(y, &r.bb(x, u)))),
        ),
        law(
            "LeftDot",
            [a, v, v],
            Box::new(move |x, u, w| l.bv(x, &dot.bb(u, w)).minus(&dot.vb(&l.bb(x, u), w))),
        ),
        law(
            "MiddleDot",
            [a, v, v],
            Box::new(move |x, u, w| dot.vb(&r.bb(x, u), w).minus(&dot.bv(u, &l.bb(x, w)))),
        ),
        law(
            "RightDot",
            [a, v, v],
            Box::new(move |x, u, w| r.bv(x, &dot.bb(u, w)).minus(&dot.bv(u, &r.bb(x, w)))),
        ),
        assoc("CarrierAssoc", dot),
    ];
    Ok(run_laws(&laws))
}

/// Total operations of a splitting structure.
pub fn assemble_total<S: Scalar>(p: &StructurePresentation<S>) -> Result<StructurePresentation<S>> {
    let get = |r: Role| p.op_or_zero(r);
    let succ_total = || -> Result<BilinearOp<S>> {
        let s = get(Role::Succ);
        s.sum(&s.opposite())?.sum(&get(Role::Dot))
    };
    let brace = || -> Result<BilinearOp<S>> { get(Role::Triangle).antisymmetrized()?.sum(&get(Role::Bracket)) };
    match p.kind {
        StructureKind::Dendriform | StructureKind::Tridendriform => {
            let circ = get(Role::Succ).sum(&get(Role::Prec))?.sum(&get(Role::Dot))?;
            StructurePresentation::single(p.space.clone(), StructureKind::Associative, Role::Circ, circ)
        }
        StructureKind::Zinbiel => StructurePresentation::single(
            p.space.clone(),
            StructureKind::CommutativeAssociative,
            Role::Circ,
            succ_total()?,
        ),
        StructureKind::PreLie | StructureKind::PostLie => {
            StructurePresentation::single(p.space.clone(), StructureKind::Lie, Role::Bracket, brace()?)
        }
        StructureKind::PrePoisson | StructureKind::PostPoisson => StructurePresentation::new(
            p.space.clone(),
            StructureKind::Poisson,
            BTreeMap::from([(Role::Bracket, brace()?), (Role::Circ, succ_total()?)]),
        ),
        k => Err(Error::Unsupported(format!("total structure of {k}"))),
    }
}

/// The module attached to a splitting structure.
///
/// Tridendriform-type: `(A, ·, L_≻, R_≺)` over `(A, ∘)`. Post-Poisson-type:
/// `(A, [,], ·, L_▷, L_≻)` over `(A, {,}, ∘)`. Pre-Lie/post-Lie: `(A, [,], L_▷)` over `(A, {,})`.
pub fn splitting_module<S: Scalar>(p: &StructurePresentation<S>) -> Result<ModuleData<S>> {
    let total = assemble_total(p)?;
    let get = |r: Role| p.op_or_zero(r).into_owned();
    let nonzero = |op: BilinearOp<S>| if op.is_zero() { None } else { Some(op) };
    match p.kind {
        StructureKind::Dendriform | StructureKind::Tridendriform | StructureKind::Zinbiel => {
            let succ = get(Role::Succ);
            let prec = if p.kind == StructureKind::Zinbiel {
                succ.opposite()
            } else {
                get(Role::Prec)
            };
            let actions = BTreeMap::from([
                ((Role::Circ, Side::Left), succ),
                ((Role::Circ, Side::Right), prec.opposite()),
            ]);
            let carrier_ops = nonzero(get(Role::Dot)).map(|d| (Role::Circ, d)).into_iter().collect();
            ModuleData::new(total, p.space.clone(), carrier_ops, actions)
        }
        StructureKind::PreLie | StructureKind::PostLie => {
            let left = BTreeMap::from([(Role::Bracket, get(Role::Triangle))]);
            let carrier_ops = nonzero(get(Role::Bracket))
                .map(|b| (Role::Bracket, b))
                .into_iter()
                .collect();
            ModuleData::from_left_actions(total, p.space.clone(), carrier_ops, left)
        }
        StructureKind::PrePoisson | StructureKind::PostPoisson => {
            let left = BTreeMap::from([(Role::Bracket, get(Role::Triangle)), (Role::Circ, get(Role::Succ))]);
            let mut carrier_ops = BTreeMap::new();
            if let Some(b) = nonzero(get(Role::Bracket)) {
                carrier_ops.insert(Role::Bracket, b);
            }
            if let Some(d) = nonzero(get(Role::Dot)) {
                carrier_ops.insert(Role::Circ, d);
            }
            ModuleData::from_left_actions(total, p.space.clone(), carrier_ops, left)
        }
        k => Err(Error::Unsupported(format!("splitting module of {k}"))),
    }
}
