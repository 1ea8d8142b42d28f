//! Dense reference evaluations used as oracles by the integration tests.
#![allow(dead_code)]

use qclab_core::kernel::{BilinearOp, Rational, TensorElement};
use qclab_core::structures::{Role, StructurePresentation};

pub type Dense = Vec<Vec<Vec<Rational>>>;

pub fn dense(op: &BilinearOp<Rational>) -> Dense {
    let (l, r, o) = op.dims();
    let mut t = vec![vec![vec![Rational::zero(); o]; r]; l];
    for (i, j, k, c) in op.entries() {
        t[i][j][k] = c;
    }
    t
}

pub fn dense_mul(t: &Dense, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let o = t[0][0].len();
    let mut out = vec![Rational::zero(); o];
    for (i, ui) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for k in 0..o {
                out[k] = out[k].clone() + ui.clone() * vj.clone() * t[i][j][k].clone();
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn sum3(a: &Dense, b: &Dense, c: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| {
            x.iter()
                .zip(y)
                .zip(z)
                .map(|((p, q), r)| {
                    p.iter()
                        .zip(q)
                        .zip(r)
                        .map(|((u, v), w)| u.clone() + v.clone() + w.clone())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `(x A y) B z − x C (y D z)` for each tridendriform identity.
pub fn tri_residual(p: &StructurePresentation<Rational>, axiom: &str, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let n = p.dim();
    let s = dense(p.op(Role::Succ).unwrap());
    let pr = dense(p.op(Role::Prec).unwrap());
    let d = dense(&p.op_or_zero(Role::Dot));
    let t = sum3(&s, &pr, &d);
    let (a, b, c, e) = match axiom {
        "Tri1" => (&pr, &pr, &pr, &t),
        "Tri2" => (&s, &pr, &s, &pr),
        "Tri3" => (&t, &s, &s, &s),
        "Tri4" => (&s, &d, &s, &d),
        "Tri5" => (&pr, &d, &d, &s),
        "Tri6" => (&d, &pr, &d, &pr),
        "Tri7" => (&d, &d, &d, &d),
        _ => unreachable!("{axiom}"),
    };
    let (ux, uy, uz) = (unit(n, x), unit(n, y), unit(n, z));
    let lhs = dense_mul(b, &dense_mul(a, &ux, &uy), &uz);
    let rhs = dense_mul(c, &ux, &dense_mul(e, &uy, &uz));
    lhs.into_iter().zip(rhs).map(|(l, r)| l - r).collect()
}

/// `(xy)z − x(yz)`.
pub fn assoc_residual(op: &BilinearOp<Rational>, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let n = op.left_dim();
    let m = dense(op);
    let (ux, uy, uz) = (unit(n, x), unit(n, y), unit(n, z));
    let lhs = dense_mul(&m, &dense_mul(&m, &ux, &uy), &uz);
    let rhs = dense_mul(&m, &ux, &dense_mul(&m, &uy, &uz));
    lhs.into_iter().zip(rhs).map(|(l, r)| l - r).collect()
}

pub fn dense_vec(n: usize, f: &[(usize, Vec<Rational>)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (k, cs) in f {
        v[*k] = cs[0].clone();
    }
    v
}

fn tensor_rows(r: &TensorElement) -> Vec<Vec<Rational>> {
    r.matrix.to_rows()
}

/// `r12∘r13 + r13∘r23 − r23∘r12` with `r = Σ R[a][b] e_a ⊗ e_b`, entry `[i][j][k]`.
pub fn dense_aybe(r: &TensorElement, circ: &BilinearOp<Rational>) -> Dense {
    let m = dense(circ);
    let rr = tensor_rows(r);
    let n = rr.len();
    let mut out = vec![vec![vec![Rational::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            if rr[a][b].is_zero() {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    let w = rr[a][b].clone() * rr[c][d].clone();
                    if w.is_zero() {
                        continue;
                    }
                    for x in 0..n {
                        out[x][b][d] = out[x][b][d].clone() + w.clone() * m[a][c][x].clone();
                        out[a][c][x] = out[a][c][x].clone() + w.clone() * m[b][d][x].clone();
                        out[c][x][b] = out[c][x][b].clone() - w.clone() * m[a][d][x].clone();
                    }
                }
            }
        }
    }
    out
}

/// `[r12,r13] + [r12,r23] + [r13,r23]`.
pub fn dense_cybe(r: &TensorElement, bracket: &BilinearOp<Rational>) -> Dense {
    let m = dense(bracket);
    let rr = tensor_rows(r);
    let n = rr.len();
    let mut out = vec![vec![vec![Rational::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            if rr[a][b].is_zero() {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    let w = rr[a][b].clone() * rr[c][d].clone();
                    if w.is_zero() {
                        continue;
                    }
                    for x in 0..n {
                        out[x][b][d] = out[x][b][d].clone() + w.clone() * m[a][c][x].clone();
                        out[a][x][d] = out[a][x][d].clone() + w.clone() * m[b][c][x].clone();
                        out[a][c][x] = out[a][c][x].clone() + w.clone() * m[b][d][x].clone();
                    }
                }
            }
        }
    }
    out
}

pub fn is_zero(t: &Dense) -> bool {
    t.iter().flatten().flatten().all(Rational::is_zero)
}
