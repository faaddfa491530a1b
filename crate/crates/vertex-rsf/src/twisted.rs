//! Twisted column operators `Gamma_0, Gamma_1, Gamma_2` for the
//! Izergin-Korepin model.
//!
//! Every operator is a sum of Kronecker products of single-site `3 x 3`
//! factors, each either diagonal or with a single off-diagonal entry. Terms
//! are scattered straight into a dense `3^N x 3^N` matrix, site 1 being the
//! least significant base-3 digit. Entry `[a][b]` has `a` the incoming
//! (left) state and `b` the outgoing (right) state, so partition functions
//! are built by row-vector propagation.

use num_traits::Zero;

use crate::error::{singular, Error, Result};
use crate::lattice::{decode, MAX_ROWS};
use crate::models::{Model, WeightTable};
use crate::scalar::{checked_div, Field};
use crate::strings::NString;

/// Single-site factors. `D*` kinds are diagonal in the local space and are
/// evaluated at an argument (a column parameter or another row's `x`);
/// `E*` kinds carry one off-diagonal entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    D,
    DCirc,
    DBull,
    DBoth,
    ECirc,
    EBull,
    EBoth,
}

/// Dot decoration used in the sums defining `Gamma_1` and `Gamma_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dot {
    Circ,
    Bull,
}

impl Dot {
    fn d(self) -> LocalKind {
        match self {
            Dot::Circ => LocalKind::DCirc,
            Dot::Bull => LocalKind::DBull,
        }
    }

    fn e(self) -> LocalKind {
        match self {
            Dot::Circ => LocalKind::ECirc,
            Dot::Bull => LocalKind::EBull,
        }
    }
}

/// A `3 x 3` local factor, `m[in][out]`.
pub type Local<T> = [[T; 3]; 3];

fn zero3<T: Field>() -> Local<T> {
    std::array::from_fn(|_| std::array::from_fn(|_| T::zero()))
}

fn diag<T: Field>(d: [T; 3]) -> Local<T> {
    let mut m = zero3();
    for (i, v) in d.into_iter().enumerate() {
        m[i][i] = v;
    }
    m
}

fn div<T: Field>(num: T, den: T, what: &str) -> Result<T> {
    checked_div(num, &den).map_err(singular(what.to_string()))
}

/// Off-diagonal scalars of the `E*` kinds divided by `z`, so that products
/// of two of them stay regular at `z = 0`.
fn e_over_z<T: Field>(kind: LocalKind, q: &T, x: &T, z: &T) -> Result<T> {
    let one = T::one();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let a = x.clone() - q2.clone() * z;
    let b = x.clone() - q3.clone() * z;
    match kind {
        LocalKind::ECirc => div(one - &q2, a, "e-circ pole"),
        LocalKind::EBull => {
            let omq = one.clone() - q;
            div(
                q.clone() * &omq * &omq * (one + q) * (x.clone() - z),
                a * b,
                "e-bullet pole",
            )
        }
        LocalKind::EBoth => div(
            (one - &q2) * (x.clone() + q2.clone() * x - q2 * z - q3 * z),
            a * b,
            "e-bullet-circ pole",
        ),
        _ => Err(Error::Precondition(format!("{kind:?} is diagonal"))),
    }
}

/// Diagonal entries of a `D*` kind at site parameter `x`, argument `a`.
fn diagonal<T: Field>(kind: LocalKind, q: &T, x: &T, a: &T) -> Result<[T; 3]> {
    let one = T::one();
    let lin = |c: &T| x.clone() - c.clone() * a;
    let (q1, q2) = (q.clone(), q.clone() * q);
    let q3 = q2.clone() * q;
    let (l0, l1, l2, l3) = (lin(&one), lin(&q1), lin(&q2), lin(&q3));
    let what = format!("{kind:?} at x={x}, argument {a}");
    Ok(match kind {
        LocalKind::D => [
            one,
            div(l0.clone(), l2.clone(), &what)?,
            div(l0 * l1, l2 * l3, &what)?,
        ],
        LocalKind::DCirc => [
            one.clone(),
            div((q.clone() * x - a) * l2, (one + q) * l0, &what)?,
            div(l3, l1, &what)?,
        ],
        LocalKind::DBull => [
            one.clone(),
            div(one + q, q.clone() * x - a, &what)?,
            div(l2, l0, &what)?,
        ],
        LocalKind::DBoth => [
            one,
            div(l2.clone(), l0.clone(), &what)?,
            div(l2 * l3, l0 * l1, &what)?,
        ],
        _ => return Err(Error::Precondition(format!("{kind:?} is not diagonal"))),
    })
}

/// The local matrix of `kind` on a site with parameter `x`, at argument `a`.
pub fn local_matrix<T: Field>(kind: LocalKind, q: &T, x: &T, a: &T) -> Result<Local<T>> {
    let at = |r: usize, c: usize, v: T| {
        let mut m = zero3();
        m[r][c] = v;
        m
    };
    Ok(match kind {
        LocalKind::ECirc => at(1, 0, e_over_z(kind, q, x, a)? * a),
        LocalKind::EBull => at(2, 1, e_over_z(kind, q, x, a)? * a),
        LocalKind::EBoth => at(2, 0, e_over_z(kind, q, x, a)? * a),
        _ => diag(diagonal(kind, q, x, a)?),
    })
}

/// `z` times the scalar prefactor of the pair matrix `e^{uv}_{ij}(z)`.
fn pair_prefactor_times_z<T: Field>(u: Dot, v: Dot, q: &T, xi: &T, xj: &T, z: &T) -> Result<T> {
    let one = T::one();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let prod = xi.clone() * xj;
    let base = prod.clone() + q2.clone() * &prod;
    let bc = |a: &T, b: &T| -> Result<T> {
        div(
            base.clone() - q2.clone() * a * z - q3.clone() * b * z,
            q.clone() * (one.clone() - q) * (a.clone() - b),
            "pair prefactor at coinciding x",
        )
    };
    match (u, v) {
        (Dot::Circ, Dot::Circ) => div(
            base.clone() - q2.clone() * xi * z - q2.clone() * xj * z,
            one - &q2,
            "pair prefactor at q^2 = 1",
        ),
        (Dot::Bull, Dot::Circ) => bc(xi, xj),
        (Dot::Circ, Dot::Bull) => bc(xj, xi),
        (Dot::Bull, Dot::Bull) => div(
            (one.clone() + q) * (base - q3.clone() * xi * z - q3 * xj * z),
            q.clone() * (one - q) * (xi.clone() - q.clone() * xj) * (xj.clone() - q.clone() * xi),
            "pair prefactor at x_i = q x_j",
        ),
    }
}

/// The sparsity pattern of `e^u` with a unit entry.
fn unit<T: Field>(u: Dot) -> Local<T> {
    let mut m = zero3();
    match u {
        Dot::Circ => m[1][0] = T::one(),
        Dot::Bull => m[2][1] = T::one(),
    }
    m
}

/// Multiplies diagonal factors entrywise.
fn diag_product<T: Field>(parts: &[[T; 3]]) -> Local<T> {
    let mut d: [T; 3] = std::array::from_fn(|_| T::one());
    for p in parts {
        for i in 0..3 {
            d[i] *= &p[i];
        }
    }
    diag(d)
}

/// Adds `coeff * (f_1 (x) ... (x) f_N)` into `matrix`.
fn scatter<T: Field>(matrix: &mut [Vec<T>], factors: &[Local<T>], coeff: &T) {
    let n = factors.len();
    'rows: for (a, row) in matrix.iter_mut().enumerate() {
        let digits = decode(a, n, 3);
        let mut b = 0;
        let mut pw = 1;
        let mut v = coeff.clone();
        for (site, f) in factors.iter().enumerate() {
            let r = digits[site];
            match (0..3).find(|&c| !f[r][c].is_zero()) {
                Some(c) => {
                    v *= &f[r][c];
                    b += c * pw;
                }
                None => continue 'rows,
            }
            pw *= 3;
        }
        row[b] += &v;
    }
}

/// A dense twisted column operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedColumn<T> {
    pub k: usize,
    pub z: T,
    pub matrix: Vec<Vec<T>>,
}

/// Builds `Gamma_k(z; x_1..x_N)`.
pub fn gamma_operator<T: Field>(k: usize, z: &T, q: &T, xs: &[T]) -> Result<TwistedColumn<T>> {
    let n = xs.len();
    if n > MAX_ROWS {
        return Err(Error::TooLarge {
            rows: n,
            limit: MAX_ROWS,
        });
    }
    if k > 2 {
        return Err(Error::StateOutOfRange { state: k, max: 2 });
    }
    let dim = 3usize.pow(n as u32);
    let mut matrix = vec![vec![T::zero(); dim]; dim];
    let dz: Vec<[T; 3]> = xs
        .iter()
        .map(|x| diagonal(LocalKind::D, q, x, z))
        .collect::<Result<_>>()?;
    let one = T::one();
    match k {
        0 => scatter(
            &mut matrix,
            &dz.iter().cloned().map(diag).collect::<Vec<_>>(),
            &one,
        ),
        1 => {
            for u in [Dot::Circ, Dot::Bull] {
                for i in 0..n {
                    let mut factors = Vec::with_capacity(n);
                    for j in 0..n {
                        factors.push(if j == i {
                            local_matrix(u.e(), q, &xs[i], z)?
                        } else {
                            diag_product(&[dz[j].clone(), diagonal(u.d(), q, &xs[j], &xs[i])?])
                        });
                    }
                    scatter(&mut matrix, &factors, &one);
                }
            }
        }
        _ => {
            for i in 0..n {
                let mut factors = Vec::with_capacity(n);
                for j in 0..n {
                    factors.push(if j == i {
                        local_matrix(LocalKind::EBoth, q, &xs[i], z)?
                    } else {
                        diag_product(&[
                            dz[j].clone(),
                            diagonal(LocalKind::DBoth, q, &xs[j], &xs[i])?,
                        ])
                    });
                }
                scatter(&mut matrix, &factors, &one);
            }
            for u in [Dot::Circ, Dot::Bull] {
                for v in [Dot::Circ, Dot::Bull] {
                    for i in 0..n {
                        for j in i + 1..n {
                            let coeff = pair_prefactor_times_z(u, v, q, &xs[i], &xs[j], z)?
                                * e_over_z(u.e(), q, &xs[i], z)?
                                * e_over_z(v.e(), q, &xs[j], z)?
                                * z;
                            let mut factors = Vec::with_capacity(n);
                            for (m, x) in xs.iter().enumerate() {
                                factors.push(if m == i {
                                    unit(u)
                                } else if m == j {
                                    unit(v)
                                } else {
                                    diag_product(&[
                                        dz[m].clone(),
                                        diagonal(u.d(), q, x, &xs[i])?,
                                        diagonal(v.d(), q, x, &xs[j])?,
                                    ])
                                });
                            }
                            scatter(&mut matrix, &factors, &coeff);
                        }
                    }
                }
            }
        }
    }
    Ok(TwistedColumn {
        k,
        z: z.clone(),
        matrix,
    })
}

/// Dense square matrix product.
pub fn mat_mul<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![T::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += &(aik.clone() * bkj);
                }
            }
        }
    }
    out
}

/// `Gamma_k(z) Gamma_l(y) - sum_{i,j} W_{z/y}(i,j;k,l) Gamma_j(y) Gamma_i(z)`,
/// which vanishes identically.
pub fn gamma_exchange_defect<T: Field>(
    k: usize,
    l: usize,
    z: &T,
    y: &T,
    table: &WeightTable<T>,
    xs: &[T],
) -> Result<Vec<Vec<T>>> {
    if table.model() != Model::IzerginKorepin {
        return Err(Error::Unsupported(
            "twisted columns exist only for the Izergin-Korepin model".into(),
        ));
    }
    let q = table.q();
    let gz: Vec<_> = (0..3)
        .map(|i| gamma_operator(i, z, q, xs))
        .collect::<Result<_>>()?;
    let gy: Vec<_> = (0..3)
        .map(|i| gamma_operator(i, y, q, xs))
        .collect::<Result<_>>()?;
    let mut out = mat_mul(&gz[k].matrix, &gy[l].matrix);
    for i in 0..3 {
        for j in 0..3 {
            if i + j != k + l {
                continue;
            }
            let w = table.weight(y, z, [i, j, k, l])?;
            if w.is_zero() {
                continue;
            }
            let prod = mat_mul(&gy[j].matrix, &gz[i].matrix);
            for (orow, prow) in out.iter_mut().zip(prod) {
                for (o, p) in orow.iter_mut().zip(prow) {
                    *o -= w.clone() * p;
                }
            }
        }
    }
    Ok(out)
}

/// Row vector times matrix.
fn vec_mat<T: Field>(v: &[T], m: &[Vec<T>]) -> Vec<T> {
    let mut out = vec![T::zero(); v.len()];
    for (a, va) in v.iter().enumerate() {
        if va.is_zero() {
            continue;
        }
        for (b, mab) in m[a].iter().enumerate() {
            if !mab.is_zero() {
                out[b] += &(va.clone() * mab);
            }
        }
    }
    out
}

/// `<<2^N| Gamma_{S_1}(z_1) Gamma_{S_2}(z_2) ... |0^N>>`, one factor per
/// column of the given width (at least the support of `S`).
pub fn twisted_partition_f_width<T: Field>(
    s: &NString,
    q: &T,
    xs: &[T],
    zs: &[T],
    width: usize,
) -> Result<T> {
    if s.n() != 2 {
        return Err(Error::Unsupported(
            "twisted columns exist only for the Izergin-Korepin model".into(),
        ));
    }
    let n = xs.len();
    if s.weight() != 2 * n {
        return Err(Error::Conservation(format!(
            "|S| = {} but 2N = {}",
            s.weight(),
            2 * n
        )));
    }
    let entries = s.padded(width)?;
    if zs.len() < width {
        return Err(Error::Precondition(format!(
            "{width} columns needed but only {} secondary parameters given",
            zs.len()
        )));
    }
    let dim = 3usize.pow(n as u32);
    let mut v = vec![T::zero(); dim];
    v[dim - 1] = T::one();
    for (k, &e) in entries.iter().enumerate() {
        v = vec_mat(&v, &gamma_operator(e, &zs[k], q, xs)?.matrix);
    }
    Ok(v[0].clone())
}

/// [`twisted_partition_f_width`] at the support width of `S`.
pub fn twisted_partition_f<T: Field>(s: &NString, q: &T, xs: &[T], zs: &[T]) -> Result<T> {
    twisted_partition_f_width(s, q, xs, zs, s.len())
}

/// Reorders tensor factors: the result has `out[a'][b'] = m[a][b]` where
/// site `t` of `a'` carries site `sigma[t]` of `a`.
pub fn permute_spaces<T: Field>(m: &[Vec<T>], sigma: &[usize]) -> Vec<Vec<T>> {
    let n = sigma.len();
    let remap = |a: usize| {
        let d = decode(a, n, 3);
        sigma.iter().rev().fold(0, |acc, &s| acc * 3 + d[s])
    };
    let dim = m.len();
    let mut out = vec![vec![T::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            out[remap(a)][remap(b)] = m[a][b].clone();
        }
    }
    out
}

/// Whether every entry of a matrix is zero.
pub fn is_zero_matrix<T: Field>(m: &[Vec<T>]) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Whether a matrix is the identity.
pub fn is_identity<T: Field>(m: &[Vec<T>]) -> bool {
    m.iter().enumerate().all(|(i, r)| {
        r.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::partition_f;
    use crate::scalar::{rat_parse, Rational};

    fn r(s: &str) -> Rational {
        rat_parse(s).unwrap()
    }

    fn ik(q: &str) -> WeightTable<Rational> {
        WeightTable::plain(Model::IzerginKorepin, r(q))
    }

    #[test]
    fn one_site_gamma_two() {
        let (q, x, z) = (r("1/2"), r("2"), r("1"));
        let g = gamma_operator(2, &z, &q, std::slice::from_ref(&x)).unwrap();
        let w = ik("1/2").weight(&x, &z, [0, 2, 2, 0]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let want = if (a, b) == (2, 0) { w.clone() } else { r("0") };
                assert_eq!(g.matrix[a][b], want);
            }
        }
        let s = NString::new(2, vec![2]).unwrap();
        assert_eq!(twisted_partition_f(&s, &q, &[x], &[z]).unwrap(), r("17/35"));
    }

    #[test]
    fn gamma_at_zero() {
        let q = r("1/3");
        let xs = [r("2"), r("5"), r("-7/2")];
        assert!(is_identity(
            &gamma_operator(0, &r("0"), &q, &xs).unwrap().matrix
        ));
        assert!(is_zero_matrix(
            &gamma_operator(2, &r("0"), &q, &xs).unwrap().matrix
        ));
    }

    #[test]
    fn d_factorization() {
        let (q, x, a) = (r("2/7"), r("3"), r("-5/4"));
        let prod = diag_product(&[
            diagonal(LocalKind::DBull, &q, &x, &a).unwrap(),
            diagonal(LocalKind::DCirc, &q, &x, &a).unwrap(),
            diagonal(LocalKind::D, &q, &x, &a).unwrap(),
        ]);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { r("1") } else { r("0") });
            }
        }
    }

    #[test]
    fn exchange_small() {
        let t = ik("1/3");
        for xs in [vec![r("2")], vec![r("2"), r("-5/3")]] {
            for k in 0..3 {
                for l in 0..3 {
                    let d = gamma_exchange_defect(k, l, &r("7"), &r("1/5"), &t, &xs).unwrap();
                    assert!(is_zero_matrix(&d), "k={k} l={l} N={}", xs.len());
                }
            }
        }
    }

    #[test]
    fn twisted_matches_lattice() {
        let t = ik("1/3");
        let xs = [r("2"), r("-5/3")];
        let zs = [r("7"), r("1/5"), r("3/4"), r("-2")];
        for text in ["2,2", "1,2,1", "1,1,1,1", "0,2,0,2", "1,2,0,1"] {
            let s = NString::parse(2, text).unwrap();
            assert_eq!(
                twisted_partition_f(&s, t.q(), &xs, &zs).unwrap(),
                partition_f(&t, &xs, &zs, &s, None).unwrap(),
                "{text}"
            );
        }
    }
}
