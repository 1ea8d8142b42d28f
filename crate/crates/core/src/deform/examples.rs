use std::collections::BTreeMap;

use super::{derive_deformation, qcl, Algebraic, DeformationJet, DerivationPair};
use crate::error::{Error, Result};
use crate::kernel::{BilinearOp, Matrix, Rational, Scalar, Space, SparseVec};
use crate::structures::{Role, StructureKind, StructurePresentation};

/// A monomial `x1^e1 ⋯ xk^ek`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn label(&self) -> String {
        let var = |i: usize| {
            if self.exps.len() == 1 {
                "t".to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { var(i) } else { format!("{}^{e}", var(i)) })
            .collect();
        parts.join("")
    }

    pub fn times(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

fn compositions(nvars: usize, total: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(nvars - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Monomials of total degree `1..=degree`, by degree and then by descending exponent of `x1`.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    (1..=degree)
        .flat_map(|d| compositions(nvars, d))
        .map(|exps| Monomial { exps })
        .collect()
}

fn monomial_space(basis: &[Monomial]) -> Space {
    Space::new(basis.iter().map(Monomial::label).collect()).expect("monomial labels are distinct")
}

/// Table `x^a * x^b = coeff(a, b) x^(a+b)`, vanishing above the degree cap.
fn monomial_op(basis: &[Monomial], coeff: impl Fn(&Monomial, &Monomial) -> Rational) -> BilinearOp<Rational> {
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    BilinearOp::from_fn(n, n, n, |i, j| {
        let (a, b) = (&basis[i], &basis[j]);
        match index.get(&a.times(b)) {
            Some(&k) => SparseVec::single(k, coeff(a, b)),
            None => SparseVec::new(),
        }
    })
}

/// The nonunital algebra of polynomials in `nvars` variables without constant term,
/// modulo monomials of degree above `degree`.
pub fn truncated_polynomial_algebra(nvars: usize, degree: u32) -> StructurePresentation<Rational> {
    let basis = monomial_basis(nvars, degree);
    let circ = monomial_op(&basis, |_, _| Rational::one());
    StructurePresentation::single(
        monomial_space(&basis),
        StructureKind::CommutativeAssociative,
        Role::Circ,
        circ,
    )
    .expect("well-formed")
}

/// The field itself: one basis vector with `e·e = e`.
pub fn unit_algebra() -> StructurePresentation<Rational> {
    let circ = BilinearOp::from_fn(1, 1, 1, |_, _| SparseVec::basis(0));
    StructurePresentation::single(
        Space::new(vec!["e".into()]).unwrap(),
        StructureKind::CommutativeAssociative,
        Role::Circ,
        circ,
    )
    .expect("well-formed")
}

/// Tridendriform structure on `A^n`: `·` coordinatewise,
/// `(a≻b)_i = Σ_{j<i} a_j b_i`, `(a≺b)_i = Σ_{j<i} a_i b_j`.
pub fn gen_product_shift<S: Scalar>(base: &StructurePresentation<S>, n: usize) -> Result<StructurePresentation<S>> {
    if n < 1 {
        return Err(Error::Invalid("the number of copies must be at least 1".into()));
    }
    if !matches!(
        base.kind,
        StructureKind::Associative | StructureKind::CommutativeAssociative
    ) {
        return Err(Error::Unsupported(format!("product shift over a {} base", base.kind)));
    }
    let c = base.op(Role::Circ)?;
    let m = base.dim();
    let total = n * m;
    let make = |keep: fn(usize, usize) -> Option<usize>| {
        BilinearOp::from_fn(total, total, total, |i, j| {
            let (ci, bi, cj, bj) = (i / m, i % m, j / m, j % m);
            match keep(ci, cj) {
                Some(target) => c.bb(bi, bj).shifted(target * m),
                None => SparseVec::new(),
            }
        })
    };
    let dot = make(|a, b| (a == b).then_some(a));
    let succ = make(|a, b| (a < b).then_some(b));
    let prec = make(|a, b| (b < a).then_some(a));
    StructurePresentation::new(
        base.space.power(n),
        StructureKind::Tridendriform,
        BTreeMap::from([(Role::Succ, succ), (Role::Prec, prec), (Role::Dot, dot)]),
    )
}

/// The product shift applied layerwise to an associative deformation.
pub fn gen_product_shift_jet(base_jet: &DeformationJet, n: usize) -> Result<DeformationJet> {
    let p = gen_product_shift(base_jet.target.structure()?, n)?;
    Ok(DeformationJet {
        order: base_jet.order,
        target: Algebraic::Structure(p),
        exact: base_jet.exact,
    })
}

/// Everything attached to the two-variable truncated polynomial example.
#[derive(Clone, Debug)]
pub struct PolyExample {
    pub q1: Rational,
    pub q2: Rational,
    pub degree: u32,
    pub basis: Vec<Monomial>,
    pub dot_algebra: StructurePresentation<Rational>,
    pub tridendriform: StructurePresentation<Rational>,
    /// Weight-1 Rota-Baxter operator `x^i ↦ τ(i) x^i`, `τ(i) = q^i/(1−q^i)`.
    pub rota_baxter: Matrix,
    pub derivations: DerivationPair,
    pub jet: DeformationJet,
    pub qcl: StructurePresentation<Rational>,
    /// Post-Poisson structure written down from the closed formulas.
    pub closed_form: StructurePresentation<Rational>,
    /// `x▷y = d1(Tx)·d2(y) − d1(y)·d2(Tx)`, `[x,y] = d1(x)·d2(y) − d1(y)·d2(x)`.
    pub derivation_form: StructurePresentation<Rational>,
}

impl PolyExample {
    pub fn index(&self, exps: [u32; 2]) -> Option<usize> {
        self.basis.iter().position(|m| m.exps == exps)
    }
}

fn euler_operator(basis: &[Monomial], var: usize) -> Matrix {
    let d: Vec<Rational> = basis.iter().map(|m| Rational::from_int(m.exps[var] as i64)).collect();
    Matrix::diagonal(&d)
}

pub fn gen_truncated_poly_example(q1: &Rational, q2: &Rational, degree: u32, order: usize) -> Result<PolyExample> {
    if degree < 1 {
        return Err(Error::Invalid("degree cap must be at least 1".into()));
    }
    for total in 1..=2 * degree {
        for i1 in (0..=total).rev() {
            let i2 = total - i1;
            if (q1.pow(i1) * q2.pow(i2)).is_one() {
                return Err(Error::Degenerate((i1, i2)));
            }
        }
    }
    let qp = |m: &Monomial| q1.pow(m.exps[0]) * q2.pow(m.exps[1]);
    let tau = |m: &Monomial| {
        let q = qp(m);
        &q / &(Rational::one() - &q)
    };
    let basis = monomial_basis(2, degree);
    let space = monomial_space(&basis);
    let dot_algebra = truncated_polynomial_algebra(2, degree);
    let dot = dot_algebra.op(Role::Circ)?.clone();
    let succ = monomial_op(&basis, |a, _| tau(a));
    let prec = monomial_op(&basis, |_, b| tau(b));
    let tridendriform = StructurePresentation::new(
        space.clone(),
        StructureKind::Tridendriform,
        BTreeMap::from([(Role::Succ, succ), (Role::Prec, prec), (Role::Dot, dot.clone())]),
    )?;
    let rota_baxter = Matrix::diagonal(&basis.iter().map(tau).collect::<Vec<_>>());
    let (d1, d2) = (euler_operator(&basis, 0), euler_operator(&basis, 1));
    let derivations = DerivationPair::new(d1.clone(), d2.clone());
    let jet = derive_deformation(&Algebraic::Structure(tridendriform.clone()), &derivations, order)?;
    let qcl = if order >= 1 {
        qcl(&jet)?.structure()?.clone()
    } else {
        tridendriform.clone()
    };

    let skew = |a: &Monomial, b: &Monomial| {
        Rational::from_int(a.exps[0] as i64 * b.exps[1] as i64 - a.exps[1] as i64 * b.exps[0] as i64)
    };
    let post = |bracket: BilinearOp<Rational>, triangle: BilinearOp<Rational>| {
        StructurePresentation::new(
            space.clone(),
            StructureKind::PostPoisson,
            BTreeMap::from([
                (Role::Bracket, bracket),
                (Role::Triangle, triangle),
                (Role::Succ, tridendriform.op(Role::Succ).unwrap().clone()),
                (Role::Dot, dot.clone()),
            ]),
        )
    };
    let closed_form = post(
        monomial_op(&basis, skew),
        monomial_op(&basis, |a, b| skew(a, b) * tau(a)),
    )?;

    let n = basis.len();
    let dt = d1.mul(&rota_baxter)?;
    let d2t = d2.mul(&rota_baxter)?;
    let derivation_form = post(
        BilinearOp::from_fn(n, n, n, |i, j| {
            dot.rr(&d1.column(i), &d2.column(j))
                .minus(&dot.rr(&d1.column(j), &d2.column(i)))
        }),
        BilinearOp::from_fn(n, n, n, |i, j| {
            dot.rr(&dt.column(i), &d2.column(j))
                .minus(&dot.rr(&d1.column(j), &d2t.column(i)))
        }),
    )?;

    Ok(PolyExample {
        q1: q1.clone(),
        q2: q2.clone(),
        degree,
        basis,
        dot_algebra,
        tridendriform,
        rota_baxter,
        derivations,
        jet,
        qcl,
        closed_form,
        derivation_form,
    })
}

/// A Zinbiel algebra on the truncated polynomial algebra from the weight-0 Rota-Baxter
/// operator `x^i ↦ x^i/(i1 + 2 i2)`, deformed by the Euler derivations.
#[derive(Clone, Debug)]
pub struct ZinbielExample {
    pub degree: u32,
    pub basis: Vec<Monomial>,
    pub dot_algebra: StructurePresentation<Rational>,
    pub operator: Matrix,
    /// `x≻y = T(x)·y`, `x≺y = x·T(y)`.
    pub dendriform: StructurePresentation<Rational>,
    pub derivations: DerivationPair,
    pub jet: DeformationJet,
    pub qcl: StructurePresentation<Rational>,
    /// `x^i ▷ x^j = (i1 j2 − i2 j1)/(i1 + 2 i2) x^(i+j)`.
    pub closed_form: StructurePresentation<Rational>,
}

pub fn gen_zinbiel_poly_example(degree: u32, order: usize) -> Result<ZinbielExample> {
    if degree < 1 {
        return Err(Error::Invalid("degree cap must be at least 1".into()));
    }
    let basis = monomial_basis(2, degree);
    let space = monomial_space(&basis);
    let weight = |m: &Monomial| Rational::new(1, (m.exps[0] + 2 * m.exps[1]) as i64);
    let dot_algebra = truncated_polynomial_algebra(2, degree);
    let operator = Matrix::diagonal(&basis.iter().map(weight).collect::<Vec<_>>());
    let succ = monomial_op(&basis, |a, _| weight(a));
    let prec = monomial_op(&basis, |_, b| weight(b));
    let dendriform = StructurePresentation::new(
        space.clone(),
        StructureKind::Dendriform,
        BTreeMap::from([(Role::Succ, succ.clone()), (Role::Prec, prec)]),
    )?;
    let derivations = DerivationPair::new(euler_operator(&basis, 0), euler_operator(&basis, 1));
    let jet = derive_deformation(&Algebraic::Structure(dendriform.clone()), &derivations, order)?;
    let qcl = if order >= 1 {
        qcl(&jet)?.structure()?.clone()
    } else {
        dendriform.clone()
    };
    let triangle = monomial_op(&basis, |a, b| {
        Rational::from_int(a.exps[0] as i64 * b.exps[1] as i64 - a.exps[1] as i64 * b.exps[0] as i64) * weight(a)
    });
    let closed_form = StructurePresentation::new(
        space,
        StructureKind::PrePoisson,
        BTreeMap::from([(Role::Triangle, triangle), (Role::Succ, succ)]),
    )?;
    Ok(ZinbielExample {
        degree,
        basis,
        dot_algebra,
        operator,
        dendriform,
        derivations,
        jet,
        qcl,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::check_deformation;
    use crate::structures::check_structure;

    #[test]
    fn monomial_order_and_labels() {
        let b = monomial_basis(2, 2);
        let labels: Vec<String> = b.iter().map(Monomial::label).collect();
        assert_eq!(labels, ["x1", "x2", "x1^2", "x1x2", "x2^2"]);
        assert_eq!(
            monomial_basis(1, 3).iter().map(Monomial::label).collect::<Vec<_>>(),
            ["t", "t^2", "t^3"]
        );
        assert_eq!(monomial_basis(2, 4).len(), 14);
    }

    #[test]
    fn truncated_polynomials_are_commutative_associative() {
        for (v, d) in [(1, 3), (1, 4), (2, 3)] {
            assert!(check_structure(&truncated_polynomial_algebra(v, d)).unwrap().passed());
        }
    }

    #[test]
    fn product_shift_first_copy_never_hit_by_succ() {
        let base = truncated_polynomial_algebra(1, 2);
        let p = gen_product_shift(&base, 3).unwrap();
        let succ = p.op(Role::Succ).unwrap();
        for (_, _, k, _) in succ.entries() {
            assert!(k >= base.dim());
        }
        assert!(check_structure(&p).unwrap().passed());
        assert!(gen_product_shift(&base, 0).is_err());
    }

    #[test]
    fn product_shift_of_euler_jet_is_a_deformation() {
        let base = truncated_polynomial_algebra(1, 2)
            .with_kind(StructureKind::Associative)
            .unwrap();
        let e = Matrix::diagonal(&[Rational::from_int(1), Rational::from_int(2)]);
        let j = derive_deformation(&Algebraic::Structure(base), &DerivationPair::new(e.clone(), e), 2).unwrap();
        let shifted = gen_product_shift_jet(&j, 2).unwrap();
        assert_eq!(shifted.kind(), StructureKind::Tridendriform);
        assert!(check_deformation(&shifted).unwrap().passed());
    }

    #[test]
    fn poly_example_values() {
        let (q1, q2) = (Rational::from_int(2), Rational::from_int(3));
        let ex = gen_truncated_poly_example(&q1, &q2, 4, 1).unwrap();
        let x1 = ex.index([1, 0]).unwrap();
        assert_eq!(ex.rota_baxter.get(x1, x1), &Rational::from_int(-2));
        let (m, sq) = (ex.index([1, 1]).unwrap(), ex.index([2, 2]).unwrap());
        let succ = ex.tridendriform.op(Role::Succ).unwrap();
        assert_eq!(succ.coefficient(m, m, sq), Some(&Rational::new(-6, 5)));

        let ex = gen_truncated_poly_example(&q1, &q2, 3, 3).unwrap();
        let (x1, x2, m) = (
            ex.index([1, 0]).unwrap(),
            ex.index([0, 1]).unwrap(),
            ex.index([1, 1]).unwrap(),
        );
        assert_eq!(
            ex.qcl.op(Role::Triangle).unwrap().coefficient(x1, x2, m),
            Some(&Rational::from_int(-2))
        );
        assert_eq!(
            ex.qcl.op(Role::Bracket).unwrap().coefficient(x1, x2, m),
            Some(&Rational::one())
        );
        assert!(ex.qcl.same_constants(&ex.closed_form));
        assert!(ex.derivation_form.same_constants(&ex.closed_form));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let r = gen_truncated_poly_example(&Rational::new(1, 2), &Rational::from_int(2), 2, 1);
        assert!(matches!(r, Err(Error::Degenerate((1, 1)))));
        let r = gen_truncated_poly_example(&Rational::one(), &Rational::from_int(3), 2, 1);
        assert!(matches!(r, Err(Error::Degenerate((1, 0)))));
    }

    #[test]
    fn zinbiel_example_is_consistent() {
        let ex = gen_zinbiel_poly_example(3, 2).unwrap();
        assert!(check_structure(&ex.dendriform).unwrap().passed());
        assert!(check_deformation(&ex.jet).unwrap().passed());
        assert!(ex.qcl.same_constants(&ex.closed_form));
        assert!(check_structure(&ex.qcl).unwrap().passed());
    }
}
