//! JSON files for structures, modules, deformations, operators and tensors.
//!
//! A table is a list of `[i, j, k, "c"]`, read as: `e_i ∗ e_j` has rational coefficient `c` on `e_k`.
//! Deformation files carry an `"order"` field. Each table in them is either a plain list,
//! which is a constant series, or `{"layers": [list for h^0, list for h^1, ...]}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::deform::{Algebraic, DeformationJet, DerivationPair};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Jet, Matrix, Rational, Scalar, Space, TensorElement};
use crate::operators::OOperatorSpec;
use crate::structures::{action_name, ModuleData, Role, Side, StructureKind, StructurePresentation};

pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Table {
    Entries(Vec<Entry>),
    Layers { layers: Vec<Vec<Entry>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    pub ops: BTreeMap<String, Table>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

/// Actions are keyed `l_<role>` and `r_<role>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub base: StructureFile,
    pub carrier: SpaceFile,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub carrier_ops: BTreeMap<String, Table>,
    pub actions: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub weight: String,
    pub matrix: Vec<Vec<String>>,
    pub context: ModuleFile,
}

/// A pair of commuting derivations, as matrices acting on columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    pub d1: Vec<Vec<String>>,
    pub d2: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub matrix: Vec<Vec<String>>,
}

fn field<T>(name: impl Into<String>, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Field {
        field: name.into(),
        source: Box::new(e),
    })
}

fn read_entries(name: &str, entries: &[Entry], dims: (usize, usize, usize)) -> Result<BilinearOp<Rational>> {
    let parsed = entries
        .iter()
        .enumerate()
        .map(|(n, (i, j, k, c))| field(format!("{name}[{n}]"), c.parse()).map(|c| (*i, *j, *k, c)))
        .collect::<Result<Vec<_>>>()?;
    field(name, BilinearOp::from_entries(dims.0, dims.1, dims.2, parsed))
}

fn write_entries(op: &BilinearOp<Rational>) -> Vec<Entry> {
    op.entries()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, c.to_string()))
        .collect()
}

/// Coefficient rings with a file representation.
pub trait FileScalar: Scalar {
    const SERIES: bool;
    fn read_table(name: &str, t: &Table, dims: (usize, usize, usize), order: Option<usize>)
        -> Result<BilinearOp<Self>>;
    fn write_table(op: &BilinearOp<Self>) -> Table;
}

impl FileScalar for Rational {
    const SERIES: bool = false;
    fn read_table(name: &str, t: &Table, dims: (usize, usize, usize), _: Option<usize>) -> Result<BilinearOp<Self>> {
        match t {
            Table::Entries(e) => read_entries(name, e, dims),
            Table::Layers { .. } => Err(Error::Field {
                field: name.into(),
                source: Box::new(Error::Invalid("layered tables need an \"order\" field".into())),
            }),
        }
    }
    fn write_table(op: &BilinearOp<Self>) -> Table {
        Table::Entries(write_entries(op))
    }
}

impl FileScalar for Jet {
    const SERIES: bool = true;
    fn read_table(
        name: &str,
        t: &Table,
        dims: (usize, usize, usize),
        order: Option<usize>,
    ) -> Result<BilinearOp<Self>> {
        let n = order.ok_or_else(|| Error::Invalid("a deformation needs an \"order\" field".into()))?;
        let lists: &[Vec<Entry>] = match t {
            Table::Entries(e) => std::slice::from_ref(e),
            Table::Layers { layers } => layers,
        };
        if lists.len() > n + 1 {
            return Err(Error::Field {
                field: name.into(),
                source: Box::new(Error::Invalid(format!("{} layers exceed order {n}", lists.len()))),
            });
        }
        let mut layers = lists
            .iter()
            .enumerate()
            .map(|(s, e)| read_entries(&format!("{name}.layers[{s}]"), e, dims))
            .collect::<Result<Vec<_>>>()?;
        layers.resize(n + 1, BilinearOp::zero(dims.0, dims.1, dims.2));
        BilinearOp::from_layers(&layers)
    }
    fn write_table(op: &BilinearOp<Self>) -> Table {
        let n = op.jet_order().unwrap_or(0);
        let mut layers: Vec<Vec<Entry>> = (0..=n).map(|s| write_entries(&op.layer(s))).collect();
        while layers.len() > 1 && layers.last().is_some_and(Vec::is_empty) {
            layers.pop();
        }
        if layers.len() == 1 {
            Table::Entries(layers.pop().expect("one layer"))
        } else {
            Table::Layers { layers }
        }
    }
}

fn read_space(dim: usize, basis: &Option<Vec<String>>, prefix: &str) -> Result<Space> {
    match basis {
        None => {
            if dim == 0 {
                return Err(Error::Space("dimension must be positive".into()));
            }
            Ok(Space::indexed(prefix, dim))
        }
        Some(b) if b.len() != dim => Err(Error::Dimension(format!(
            "basis has {} labels for dimension {dim}",
            b.len()
        ))),
        Some(b) => Space::new(b.clone()),
    }
}

fn read_roles<S: FileScalar>(
    prefix: &str,
    ops: &BTreeMap<String, Table>,
    n: usize,
    order: Option<usize>,
) -> Result<BTreeMap<Role, BilinearOp<S>>> {
    ops.iter()
        .map(|(name, entries)| {
            let role: Role = field(format!("{prefix}.{name}"), name.parse())?;
            Ok((
                role,
                S::read_table(&format!("{prefix}.{name}"), entries, (n, n, n), order)?,
            ))
        })
        .collect()
}

fn check_order<S: FileScalar>(order: Option<usize>) -> Result<()> {
    match (S::SERIES, order) {
        (true, None) => Err(Error::Invalid("a deformation file needs an \"order\" field".into())),
        (false, Some(_)) => Err(Error::Invalid(
            "an \"order\" field makes this a deformation file".into(),
        )),
        _ => Ok(()),
    }
}

impl StructureFile {
    pub fn to_structure<S: FileScalar>(&self) -> Result<StructurePresentation<S>> {
        check_order::<S>(self.order)?;
        let kind: StructureKind = field("kind", self.kind.parse())?;
        let space = field("basis", read_space(self.dim, &self.basis, "e"))?;
        let ops = read_roles("ops", &self.ops, self.dim, self.order)?;
        StructurePresentation::new(space, kind, ops)
    }

    pub fn from_structure<S: FileScalar>(p: &StructurePresentation<S>, order: Option<usize>) -> Self {
        StructureFile {
            dim: p.dim(),
            basis: Some(p.space.labels().to_vec()),
            kind: p.kind.tag().to_string(),
            order,
            exact: None,
            ops: p
                .ops
                .iter()
                .map(|(r, op)| (r.name().to_string(), S::write_table(op)))
                .collect(),
        }
    }
}

impl ModuleFile {
    pub fn to_module<S: FileScalar>(&self) -> Result<ModuleData<S>> {
        check_order::<S>(self.order)?;
        if self.base.order.is_some() && self.base.order != self.order {
            return Err(Error::Invalid("base order differs from the module order".into()));
        }
        let base_file = StructureFile {
            order: self.order,
            ..self.base.clone()
        };
        let base: StructurePresentation<S> = field("base", base_file.to_structure())?;
        let carrier = field("carrier", read_space(self.carrier.dim, &self.carrier.basis, "f"))?;
        let v = carrier.dim();
        let carrier_ops = read_roles("carrier_ops", &self.carrier_ops, v, self.order)?;
        let mut actions = BTreeMap::new();
        for (name, entries) in &self.actions {
            let key = Role::ALL
                .iter()
                .flat_map(|r| [(*r, Side::Left), (*r, Side::Right)])
                .find(|(r, s)| action_name(*r, *s) == *name)
                .ok_or_else(|| Error::Field {
                    field: format!("actions.{name}"),
                    source: Box::new(Error::Invalid("action names are l_<role> or r_<role>".into())),
                })?;
            actions.insert(
                key,
                S::read_table(&format!("actions.{name}"), entries, (base.dim(), v, v), self.order)?,
            );
        }
        ModuleData::new(base, carrier, carrier_ops, actions)
    }

    pub fn from_module<S: FileScalar>(m: &ModuleData<S>, order: Option<usize>) -> Self {
        ModuleFile {
            base: StructureFile::from_structure(&m.base, None),
            carrier: SpaceFile {
                dim: m.carrier.dim(),
                basis: Some(m.carrier.labels().to_vec()),
            },
            carrier_ops: m
                .carrier_ops
                .iter()
                .map(|(r, op)| (r.name().to_string(), S::write_table(op)))
                .collect(),
            actions: m
                .actions
                .iter()
                .map(|((r, s), op)| (action_name(*r, *s), S::write_table(op)))
                .collect(),
            order,
            exact: None,
        }
    }
}

fn read_matrix(name: &str, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| field(format!("{name}[{r}][{c}]"), s.parse()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    field(name, Matrix::from_rows(parsed))
}

fn write_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(Rational::to_string).collect())
        .collect()
}

impl OperatorFile {
    pub fn to_operator(&self) -> Result<OOperatorSpec> {
        let weight = field("weight", self.weight.parse())?;
        let t = read_matrix("matrix", &self.matrix)?;
        let context = field("context", self.context.to_module())?;
        OOperatorSpec::new(t, weight, context)
    }

    pub fn from_operator(s: &OOperatorSpec) -> Self {
        OperatorFile {
            weight: s.weight.to_string(),
            matrix: write_matrix(&s.t),
            context: ModuleFile::from_module(&s.context, None),
        }
    }
}

impl TensorFile {
    pub fn to_tensor(&self) -> Result<TensorElement> {
        Ok(TensorElement::new(read_matrix("matrix", &self.matrix)?))
    }

    pub fn from_tensor(r: &TensorElement) -> Self {
        TensorFile {
            matrix: write_matrix(&r.matrix),
        }
    }
}

impl DerivationFile {
    pub fn to_pair(&self) -> Result<DerivationPair> {
        Ok(DerivationPair::new(
            read_matrix("d1", &self.d1)?,
            read_matrix("d2", &self.d2)?,
        ))
    }

    pub fn from_pair(d: &DerivationPair) -> Self {
        DerivationFile {
            d1: write_matrix(&d.d1),
            d2: write_matrix(&d.d2),
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn is_module(text: &str) -> Result<bool> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    Ok(v.get("actions").is_some())
}

pub fn parse_structure(text: &str) -> Result<StructurePresentation<Rational>> {
    parse::<StructureFile>(text)?.to_structure()
}

pub fn parse_module(text: &str) -> Result<ModuleData<Rational>> {
    parse::<ModuleFile>(text)?.to_module()
}

/// A structure or module deformation file.
pub fn parse_deformation(text: &str) -> Result<DeformationJet> {
    let (order, exact, target) = if is_module(text)? {
        let f: ModuleFile = parse(text)?;
        (f.order, f.exact, Algebraic::Module(f.to_module::<Jet>()?))
    } else {
        let f: StructureFile = parse(text)?;
        (f.order, f.exact, Algebraic::Structure(f.to_structure::<Jet>()?))
    };
    let order = order.expect("checked by the reader");
    let mut j = DeformationJet::new(target, order)?;
    j.exact = exact.unwrap_or(false);
    Ok(j)
}

/// A structure or module file over the ground field.
pub fn parse_algebraic(text: &str) -> Result<Algebraic<Rational>> {
    if is_module(text)? {
        Ok(Algebraic::Module(parse_module(text)?))
    } else {
        Ok(Algebraic::Structure(parse_structure(text)?))
    }
}

pub fn parse_operator(text: &str) -> Result<OOperatorSpec> {
    parse::<OperatorFile>(text)?.to_operator()
}

pub fn parse_tensor(text: &str) -> Result<TensorElement> {
    parse::<TensorFile>(text)?.to_tensor()
}

pub fn parse_derivations(text: &str) -> Result<DerivationPair> {
    parse::<DerivationFile>(text)?.to_pair()
}

/// Whether a structure or module file carries an `"order"` field.
pub fn is_deformation_text(text: &str) -> Result<bool> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    Ok(v.get("order").is_some())
}

pub fn read_derivations(path: &Path) -> Result<DerivationPair> {
    parse_derivations(&read_file(path)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    read_file(path)
}

pub fn read_structure(path: &Path) -> Result<StructurePresentation<Rational>> {
    parse_structure(&read_file(path)?)
}

pub fn read_module(path: &Path) -> Result<ModuleData<Rational>> {
    parse_module(&read_file(path)?)
}

pub fn read_deformation(path: &Path) -> Result<DeformationJet> {
    parse_deformation(&read_file(path)?)
}

pub fn read_algebraic(path: &Path) -> Result<Algebraic<Rational>> {
    parse_algebraic(&read_file(path)?)
}

pub fn read_operator(path: &Path) -> Result<OOperatorSpec> {
    parse_operator(&read_file(path)?)
}

pub fn read_tensor(path: &Path) -> Result<TensorElement> {
    parse_tensor(&read_file(path)?)
}

fn to_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("file types serialize");
    s.push('\n');
    s
}

pub fn structure_json(p: &StructurePresentation<Rational>) -> String {
    to_text(&StructureFile::from_structure(p, None))
}

pub fn module_json(m: &ModuleData<Rational>) -> String {
    to_text(&ModuleFile::from_module(m, None))
}

pub fn algebraic_json(a: &Algebraic<Rational>) -> String {
    match a {
        Algebraic::Structure(p) => structure_json(p),
        Algebraic::Module(m) => module_json(m),
    }
}

pub fn deformation_json(j: &DeformationJet) -> String {
    match &j.target {
        Algebraic::Structure(p) => to_text(&StructureFile {
            exact: Some(j.exact),
            ..StructureFile::from_structure(p, Some(j.order))
        }),
        Algebraic::Module(m) => to_text(&ModuleFile {
            exact: Some(j.exact),
            ..ModuleFile::from_module(m, Some(j.order))
        }),
    }
}

pub fn operator_json(s: &OOperatorSpec) -> String {
    to_text(&OperatorFile::from_operator(s))
}

pub fn tensor_json(r: &TensorElement) -> String {
    to_text(&TensorFile::from_tensor(r))
}

pub fn derivations_json(d: &DerivationPair) -> String {
    to_text(&DerivationFile::from_pair(d))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
