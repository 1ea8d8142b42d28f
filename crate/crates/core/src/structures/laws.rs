//! Defining identities of every structure kind, evaluated on basis tuples.
//!
//! Each identity is written as `lhs − rhs`; a tuple fails when that residual is nonzero.
//!
//! | id | identity |
//! |----|----------|
//! | `Assoc` | `(x∘y)∘z = x∘(y∘z)` |
//! | `Comm` | `x∘y = y∘x` |
//! | `Antisym` | `[x,y] = −[y,x]` |
//! | `Jacobi` | `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` |
//! | `Leibniz` | `{x, y∘z} = {x,y}∘z + y∘{x,z}` |
//! | `Tri1` | `(x≺y)≺z = x≺(y∘z)` |
//! | `Tri2` | `(x≻y)≺z = x≻(y≺z)` |
//! | `Tri3` | `(x∘y)≻z = x≻(y≻z)` |
//! | `Tri4` | `(x≻y)·z = x≻(y·z)` |
//! | `Tri5` | `(x≺y)·z = x·(y≻z)` |
//! | `Tri6` | `(x·y)≺z = x·(y≺z)` |
//! | `Tri7` | `(x·y)·z = x·(y·z)` |
//! | `PostL1` | `x▷[y,z] = [x▷y,z] + [y,x▷z]` |
//! | `PostL2` | `[x,y]▷z = x▷(y▷z) − (x▷y)▷z − y▷(x▷z) + (y▷x)▷z` |
//! | `PostP1` | `[x,y·z] = [x,y]·z + y·[x,z]` |
//! | `PostP2` | `[x,y≻z] = y≻[x,z] − z·(y▷x)` |
//! | `PostP3` | `x▷(y·z) = (x▷y)·z + y·(x▷z)` |
//! | `PostP4` | `(x∘y)▷z = x≻(y▷z) + y≻(x▷z)` |
//! | `PostP5` | `x▷(y≻z) = y≻(x▷z) + {x,y}≻z` |
//! | `DotComm` | `x·y = y·x` |
//! | `PrecOpposite` | `x≺y = y≻x` |
//! | `ZeroDot`, `ZeroBracket` | the degenerate operation vanishes |
//!
//! In the tridendriform rows `x∘y = x≺y + x≻y + x·y`. In the post-Poisson rows
//! `x≺y = y≻x`, `x∘y = x≻y + y≻x + x·y` and `{x,y} = x▷y − y▷x + [x,y]`.
//! Dendriform and Zinbiel use `Tri1`–`Tri3` with `·` absent; pre-Lie and
//! pre-Poisson are the post-Lie and post-Poisson identities with `[,]` and `·` zero.

use rayon::prelude::*;

use super::{AxiomReport, Failure, Role, StructureKind, StructurePresentation};
use crate::error::Result;
use crate::kernel::{BilinearOp, Scalar, SparseVec};

pub(crate) type Eval<'a, S> = Box<dyn Fn(usize, usize, usize) -> SparseVec<S> + Sync + 'a>;

pub(crate) struct Law<'a, S> {
    pub id: &'static str,
    /// Ranges of the basis indices; a zero entry means the slot is unused.
    pub dims: [usize; 3],
    pub eval: Eval<'a, S>,
}

impl<'a, S: Scalar> Law<'a, S> {
    pub fn ternary(id: &'static str, n: usize, f: impl Fn(usize, usize, usize) -> SparseVec<S> + Sync + 'a) -> Self {
        Law {
            id,
            dims: [n, n, n],
            eval: Box::new(f),
        }
    }

    pub fn binary(id: &'static str, n: usize, f: impl Fn(usize, usize) -> SparseVec<S> + Sync + 'a) -> Self {
        Law {
            id,
            dims: [n, n, 0],
            eval: Box::new(move |x, y, _| f(x, y)),
        }
    }
}

pub(crate) fn run_laws<S: Scalar>(laws: &[Law<'_, S>]) -> AxiomReport {
    let mut report = AxiomReport::default();
    for law in laws {
        report.checked.push(law.id.to_string());
        let [a, b, c] = law.dims;
        let failures: Vec<Failure> = (0..a)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut out = Vec::new();
                for y in 0..b {
                    if c == 0 {
                        let r = (law.eval)(x, y, 0);
                        if !r.is_zero() {
                            out.push(Failure::from_residual(law.id, vec![x, y], &r));
                        }
                    } else {
                        for z in 0..c {
                            let r = (law.eval)(x, y, z);
                            if !r.is_zero() {
                                out.push(Failure::from_residual(law.id, vec![x, y, z], &r));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        for f in failures {
            report.record(f);
        }
    }
    report
}

type Op<S> = BilinearOp<S>;

pub(crate) fn assoc<'a, S: Scalar>(id: &'static str, c: &'a Op<S>) -> Law<'a, S> {
    Law::ternary(id, c.left_dim(), move |x, y, z| {
        c.vb(&c.bb(x, y), z).minus(&c.bv(x, &c.bb(y, z)))
    })
}

pub(crate) fn comm<'a, S: Scalar>(id: &'static str, c: &'a Op<S>) -> Law<'a, S> {
    Law::binary(id, c.left_dim(), move |x, y| c.bb(x, y).minus(c.product(y, x)))
}

fn antisym<'a, S: Scalar>(b: &'a Op<S>) -> Law<'a, S> {
    Law::binary("Antisym", b.left_dim(), move |x, y| b.bb(x, y).plus(b.product(y, x)))
}

fn jacobi<'a, S: Scalar>(b: &'a Op<S>) -> Law<'a, S> {
    Law::ternary("Jacobi", b.left_dim(), move |x, y, z| {
        b.bv(x, &b.bb(y, z))
            .plus(&b.bv(y, &b.bb(z, x)))
            .plus(&b.bv(z, &b.bb(x, y)))
    })
}

fn leibniz<'a, S: Scalar>(id: &'static str, b: &'a Op<S>, c: &'a Op<S>) -> Law<'a, S> {
    Law::ternary(id, b.left_dim(), move |x, y, z| {
        b.bv(x, &c.bb(y, z))
            .minus(&c.vb(&b.bb(x, y), z))
            .minus(&c.bv(y, &b.bb(x, z)))
    })
}

fn vanishes<'a, S: Scalar>(id: &'static str, op: &'a Op<S>) -> Law<'a, S> {
    Law::binary(id, op.left_dim(), move |x, y| op.bb(x, y))
}

fn equal<'a, S: Scalar>(id: &'static str, a: &'a Op<S>, b: &'a Op<S>) -> Law<'a, S> {
    Law::binary(id, a.left_dim(), move |x, y| a.bb(x, y).minus(b.product(x, y)))
}

/// `Tri1`–`Tri3`, and `Tri4`–`Tri7` when `full`.
fn tri<'a, S: Scalar>(s: &'a Op<S>, p: &'a Op<S>, d: &'a Op<S>, t: &'a Op<S>, full: bool) -> Vec<Law<'a, S>> {
    let n = s.left_dim();
    let mut v = vec![
        Law::ternary("Tri1", n, move |x, y, z| {
            p.vb(&p.bb(x, y), z).minus(&p.bv(x, &t.bb(y, z)))
        }),
        Law::ternary("Tri2", n, move |x, y, z| {
            p.vb(&s.bb(x, y), z).minus(&s.bv(x, &p.bb(y, z)))
        }),
        Law::ternary("Tri3", n, move |x, y, z| {
            s.vb(&t.bb(x, y), z).minus(&s.bv(x, &s.bb(y, z)))
        }),
    ];
    if full {
        v.extend([
            Law::ternary("Tri4", n, move |x, y, z| {
                d.vb(&s.bb(x, y), z).minus(&s.bv(x, &d.bb(y, z)))
            }),
            Law::ternary("Tri5", n, move |x, y, z| {
                d.vb(&p.bb(x, y), z).minus(&d.bv(x, &s.bb(y, z)))
            }),
            Law::ternary("Tri6", n, move |x, y, z| {
                p.vb(&d.bb(x, y), z).minus(&d.bv(x, &p.bb(y, z)))
            }),
            assoc("Tri7", d),
        ]);
    }
    v
}

fn post_lie_1<'a, S: Scalar>(b: &'a Op<S>, tr: &'a Op<S>) -> Law<'a, S> {
    Law::ternary("PostL1", b.left_dim(), move |x, y, z| {
        tr.bv(x, &b.bb(y, z))
            .minus(&b.vb(&tr.bb(x, y), z))
            .minus(&b.bv(y, &tr.bb(x, z)))
    })
}

fn post_lie_2<'a, S: Scalar>(b: &'a Op<S>, tr: &'a Op<S>) -> Law<'a, S> {
    Law::ternary("PostL2", tr.left_dim(), move |x, y, z| {
        tr.vb(&b.bb(x, y), z)
            .minus(&tr.bv(x, &tr.bb(y, z)))
            .plus(&tr.vb(&tr.bb(x, y), z))
            .plus(&tr.bv(y, &tr.bb(x, z)))
            .minus(&tr.vb(&tr.bb(y, x), z))
    })
}

/// `PostP2`–`PostP5` (or only `PostP4`–`PostP5` when `zero_bracket_dot`).
fn post_poisson<'a, S: Scalar>(
    b: &'a Op<S>,
    tr: &'a Op<S>,
    s: &'a Op<S>,
    d: &'a Op<S>,
    total: &'a Op<S>,
    brace: &'a Op<S>,
    zero_bracket_dot: bool,
) -> Vec<Law<'a, S>> {
    let n = s.left_dim();
    let mut v = Vec::new();
    if !zero_bracket_dot {
        v.push(Law::ternary("PostP2", n, move |x, y, z| {
            b.bv(x, &s.bb(y, z))
                .minus(&s.bv(y, &b.bb(x, z)))
                .plus(&d.bv(z, &tr.bb(y, x)))
        }));
        v.push(Law::ternary("PostP3", n, move |x, y, z| {
            tr.bv(x, &d.bb(y, z))
                .minus(&d.vb(&tr.bb(x, y), z))
                .minus(&d.bv(y, &tr.bb(x, z)))
        }));
    }
    v.push(Law::ternary("PostP4", n, move |x, y, z| {
        tr.vb(&total.bb(x, y), z)
            .minus(&s.bv(x, &tr.bb(y, z)))
            .minus(&s.bv(y, &tr.bb(x, z)))
    }));
    v.push(Law::ternary("PostP5", n, move |x, y, z| {
        tr.bv(x, &s.bb(y, z))
            .minus(&s.bv(y, &tr.bb(x, z)))
            .minus(&s.vb(&brace.bb(x, y), z))
    }));
    v
}

/// Evaluates every defining identity of `p.kind` on all basis tuples.
pub fn check_structure<S: Scalar>(p: &StructurePresentation<S>) -> Result<AxiomReport> {
    // Revalidates the role set.
    StructurePresentation::new(p.space.clone(), p.kind, p.ops.clone())?;
    let zero = BilinearOp::square(p.dim());
    let get = |r: Role| p.ops.get(&r).unwrap_or(&zero);
    let report = match p.kind {
        StructureKind::Associative => run_laws(&[assoc("Assoc", get(Role::Circ))]),
        StructureKind::CommutativeAssociative => {
            let c = get(Role::Circ);
            run_laws(&[comm("Comm", c), assoc("Assoc", c)])
        }
        StructureKind::Lie => {
            let b = get(Role::Bracket);
            run_laws(&[antisym(b), jacobi(b)])
        }
        StructureKind::Poisson => {
            let (b, c) = (get(Role::Bracket), get(Role::Circ));
            run_laws(&[
                antisym(b),
                jacobi(b),
                comm("Comm", c),
                assoc("Assoc", c),
                leibniz("Leibniz", b, c),
            ])
        }
        StructureKind::Zinbiel | StructureKind::Dendriform => {
            let s = get(Role::Succ);
            let opp = s.opposite();
            let prec = if p.kind == StructureKind::Zinbiel {
                &opp
            } else {
                get(Role::Prec)
            };
            let t = s.sum(prec)?;
            let mut laws = tri(s, prec, &zero, &t, false);
            if p.kind == StructureKind::Zinbiel && p.has(Role::Prec) {
                laws.push(equal("PrecOpposite", get(Role::Prec), &opp));
            }
            if p.has(Role::Dot) {
                laws.push(vanishes("ZeroDot", get(Role::Dot)));
            }
            run_laws(&laws)
        }
        StructureKind::Tridendriform => {
            let (s, pr, d) = (get(Role::Succ), get(Role::Prec), get(Role::Dot));
            let t = s.sum(pr)?.sum(d)?;
            let laws = tri(s, pr, d, &t, true);
            run_laws(&laws)
        }
        StructureKind::PreLie => {
            let tr = get(Role::Triangle);
            let mut laws = vec![post_lie_2(&zero, tr)];
            if p.has(Role::Bracket) {
                laws.push(vanishes("ZeroBracket", get(Role::Bracket)));
            }
            run_laws(&laws)
        }
        StructureKind::PostLie => {
            let (b, tr) = (get(Role::Bracket), get(Role::Triangle));
            run_laws(&[antisym(b), jacobi(b), post_lie_1(b, tr), post_lie_2(b, tr)])
        }
        StructureKind::PrePoisson => {
            let (tr, s) = (get(Role::Triangle), get(Role::Succ));
            let opp = s.opposite();
            let t = s.sum(&opp)?;
            let brace = tr.antisymmetrized()?;
            let mut laws = tri(s, &opp, &zero, &t, false);
            laws.push(post_lie_2(&zero, tr));
            laws.extend(post_poisson(&zero, tr, s, &zero, &t, &brace, true));
            if p.has(Role::Prec) {
                laws.push(equal("PrecOpposite", get(Role::Prec), &opp));
            }
            if p.has(Role::Bracket) {
                laws.push(vanishes("ZeroBracket", get(Role::Bracket)));
            }
            if p.has(Role::Dot) {
                laws.push(vanishes("ZeroDot", get(Role::Dot)));
            }
            run_laws(&laws)
        }
        StructureKind::PostPoisson => {
            let (b, tr, s, d) = (get(Role::Bracket), get(Role::Triangle), get(Role::Succ), get(Role::Dot));
            let opp = s.opposite();
            let t = s.sum(&opp)?.sum(d)?;
            let brace = tr.antisymmetrized()?.sum(b)?;
            let mut laws = vec![
                antisym(b),
                jacobi(b),
                post_lie_1(b, tr),
                post_lie_2(b, tr),
                comm("DotComm", d),
            ];
            laws.extend(tri(s, &opp, d, &t, true));
            laws.push(leibniz("PostP1", b, d));
            laws.extend(post_poisson(b, tr, s, d, &t, &brace, false));
            if p.has(Role::Prec) {
                laws.push(equal("PrecOpposite", get(Role::Prec), &opp));
            }
            run_laws(&laws)
        }
    };
    Ok(report)
}
