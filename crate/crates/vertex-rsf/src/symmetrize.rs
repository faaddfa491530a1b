//! Explicit symmetrization formulas: sums over `n`-permutation matrices of
//! products of one-row functions and pairwise scattering factors.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{singular, Error, Result};
use crate::models::Model;
use crate::scalar::{checked_div, Field};
use crate::strings::{
    classify_row_pair, enumerate_two_perm, CompositionVector, DeltaCase, DeltaPattern, NString,
};

fn div<T: Field>(num: T, den: T, what: &str) -> Result<T> {
    checked_div(num, &den).map_err(singular(what.to_string()))
}

fn z_at<T: Field>(zs: &[T], col: Option<usize>) -> Result<&T> {
    let col = col.ok_or_else(|| Error::Precondition("pattern needs a column".into()))?;
    zs.get(col - 1)
        .ok_or_else(|| Error::Precondition(format!("column {col} has no secondary parameter")))
}

/// The scattering factor of an explicit (unmirrored) pattern.
fn pattern_factor<T: Field>(case: &DeltaCase, x: &T, y: &T, zs: &[T], q: &T) -> Result<T> {
    use DeltaPattern::*;
    let one = T::one();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let lin = |a: &T, c: &T, b: &T| a.clone() - c.clone() * b;
    let xy = x.clone() * y;
    let base = xy.clone() + q2.clone() * &xy;
    // xy + q^2 xy - a y z - b x z
    let quad = |a: &T, b: &T, z: &T| base.clone() - a.clone() * y * z - b.clone() * x * z;
    let omq = one.clone() - q;
    let what = format!("{:?} at x={x}, y={y}", case.pattern);
    match case.pattern {
        OneBeforeOne => div(lin(y, q, x), y.clone() - x, &what),
        TwoBeforeTwo | TwoBeforePair | PairBeforeTwo | PairBeforePair => div(
            lin(y, &q2, x) * lin(y, &q3, x),
            (y.clone() - x) * lin(y, q, x),
            &what,
        ),
        PairAroundTwo | PairAroundPair => div(
            lin(y, &q2, x) * (q2.clone() * y - x),
            (y.clone() - x) * (y.clone() - x),
            &what,
        ),
        Interleaved => div(
            lin(y, &q2, x) * lin(y, &q2, x) * lin(x, q, y),
            (y.clone() - x) * (y.clone() - x) * lin(y, q, x),
            &what,
        ),
        SharedFirst => {
            let z = z_at(zs, case.k)?;
            div(
                (q2.clone() * x - y) * quad(&q3, &q3, z),
                q.clone() * &omq * (y.clone() - x) * lin(y, q, x) * z,
                &what,
            )
        }
        SharedMiddle => {
            let z = z_at(zs, case.k)?;
            div(
                lin(y, &q2, x) * quad(&q2, &q3, z),
                q.clone() * &omq * (y.clone() - x) * (y.clone() - x) * z,
                &what,
            )
        }
        SharedLast => {
            let z = z_at(zs, case.k)?;
            div(
                (q2.clone() * x - y) * quad(&q2, &q2, z),
                omq * (y.clone() - x) * lin(y, q, x) * z,
                &what,
            )
        }
        SharedBoth => {
            let zk = z_at(zs, case.k)?;
            let zl = z_at(zs, case.l)?;
            div(
                quad(&q3, &q3, zk) * quad(&q2, &q2, zl),
                q.clone() * &omq * &omq * lin(y, q, x) * lin(x, q, y) * zk * zl,
                &what,
            )
        }
    }
}

/// `Delta_{U,V}(x, y; z)`; mirrored pairs use `Delta_{U,V}(x,y) = Delta_{V,U}(y,x)`.
pub fn delta_factor<T: Field>(
    u: &CompositionVector,
    v: &CompositionVector,
    x: &T,
    y: &T,
    zs: &[T],
    q: &T,
) -> Result<T> {
    let case = classify_row_pair(u, v)?;
    if case.mirrored {
        pattern_factor(&case, y, x, zs, q)
    } else {
        pattern_factor(&case, x, y, zs, q)
    }
}

/// Closed form of the one-row function `F_U(x; z)` with `|U| = n`.
pub fn one_row_f_closed<T: Field>(
    model: Model,
    u: &CompositionVector,
    x: &T,
    zs: &[T],
    q: &T,
) -> Result<T> {
    let n = model.n();
    if u.n() != n || u.weight() != n {
        return Err(Error::Precondition(format!(
            "{u} is not a row of weight {n}"
        )));
    }
    let cols: Vec<usize> = u
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(c, &e)| std::iter::repeat_n(c, e))
        .collect();
    let last = *cols.last().unwrap_or(&0);
    if zs.len() <= last {
        return Err(Error::Precondition(format!(
            "{u} needs {} secondary parameters",
            last + 1
        )));
    }
    let one = T::one();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let lin = |c: &T, z: &T| x.clone() - c.clone() * z;
    let what = format!("one-row function at x={x}");
    let mut acc = one.clone();
    match model {
        Model::SixVertex => {
            let k = cols[0];
            for z in &zs[..k] {
                acc *= div(x.clone() - z, lin(q, z), &what)?;
            }
            acc *= div((one - q) * &zs[k], lin(q, &zs[k]), &what)?;
        }
        Model::IzerginKorepin => {
            let (k, l) = (cols[0], cols[1]);
            for z in &zs[..k] {
                acc *= div(lin(&one, z) * lin(q, z), lin(&q2, z) * lin(&q3, z), &what)?;
            }
            let zk = &zs[k];
            if k == l {
                acc *= div(
                    (one.clone() - &q2)
                        * (x.clone() + q2.clone() * x - q2.clone() * zk - q3.clone() * zk)
                        * zk,
                    lin(&q2, zk) * lin(&q3, zk),
                    &what,
                )?;
            } else {
                let omq = one.clone() - q;
                acc *= div(
                    q.clone() * &omq * &omq * (one.clone() + q) * lin(&one, zk) * zk,
                    lin(&q2, zk) * lin(&q3, zk),
                    &what,
                )?;
                for z in &zs[k + 1..l] {
                    acc *= div(lin(&one, z), lin(&q2, z), &what)?;
                }
                let zl = &zs[l];
                acc *= div((one - &q2) * zl, lin(&q2, zl), &what)?;
            }
        }
    }
    Ok(acc)
}

/// One summand of the symmetrization formula for the given matrix rows.
pub fn symmetrized_term<T: Field>(
    model: Model,
    rows: &[CompositionVector],
    xs: &[T],
    zs: &[T],
    q: &T,
) -> Result<T> {
    let mut acc = T::one();
    for (row, x) in rows.iter().zip(xs) {
        acc *= one_row_f_closed(model, row, x, zs, q)?;
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            acc *= delta_factor(&rows[i], &rows[j], &xs[i], &xs[j], zs, q)?;
        }
    }
    Ok(acc)
}

/// `F_S(x; z)` as the sum over `n`-permutation matrices of profile `S`,
/// with row `i` (top first) attached to `x_i`.
pub fn symmetrized_f<T: Field>(model: Model, s: &NString, q: &T, xs: &[T], zs: &[T]) -> Result<T> {
    let n = model.n();
    if s.n() != n {
        return Err(Error::Precondition(format!("{s} is not a {n}-string")));
    }
    if s.weight() != n * xs.len() {
        return Err(Error::Conservation(format!(
            "|S| = {} but n N = {}",
            s.weight(),
            n * xs.len()
        )));
    }
    let matrices = enumerate_two_perm(n, xs.len(), s, None)?;
    let terms: Vec<Result<T>> = matrices
        .par_iter()
        .map(|m| symmetrized_term(model, &m.rows, xs, zs, q))
        .collect();
    let mut acc = T::zero();
    for t in terms {
        acc += t?;
    }
    Ok(acc)
}

/// The six-vertex sum over `S_N`: every assignment of the occupied columns
/// of `S` to the rows, weighted by `prod_{i<j} (x_{s(j)} - q x_{s(i)}) / (x_{s(j)} - x_{s(i)})`.
pub fn symmetrized_f_sn<T: Field>(s: &NString, q: &T, xs: &[T], zs: &[T]) -> Result<T> {
    if s.n() != 1 {
        return Err(Error::Unsupported(
            "the permutation-group form exists only for the six-vertex model".into(),
        ));
    }
    let big_n = xs.len();
    if s.weight() != big_n {
        return Err(Error::Conservation(format!(
            "|S| = {} but N = {big_n}",
            s.weight()
        )));
    }
    let ks: Vec<usize> = (0..s.len()).filter(|&k| s.get(k) == 1).collect();
    let width = s.len();
    let mut acc = T::zero();
    for sigma in (0..big_n).permutations(big_n) {
        let mut term = T::one();
        for i in 0..big_n {
            for j in i + 1..big_n {
                let (a, b) = (&xs[sigma[i]], &xs[sigma[j]]);
                term *= div(b.clone() - q.clone() * a, b.clone() - a, "coinciding x")?;
            }
        }
        for (i, &k) in ks.iter().enumerate() {
            let mut e = vec![0; width];
            e[k] = 1;
            let row = CompositionVector::new(1, e)?;
            term *= one_row_f_closed(Model::SixVertex, &row, &xs[sigma[i]], zs, q)?;
        }
        acc += term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{izergin_determinant, partition_f};
    use crate::models::WeightTable;
    use crate::scalar::{rat_parse, Rational};

    fn r(s: &str) -> Rational {
        rat_parse(s).unwrap()
    }

    fn cv(n: usize, e: &[usize]) -> CompositionVector {
        CompositionVector::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let (q, x, y) = (r("1/3"), r("2"), r("-5/7"));
        let q2 = q.clone() * &q;
        let q3 = q2.clone() * &q;
        let want = (y.clone() - q2 * &x) * (y.clone() - q3 * &x)
            / ((y.clone() - &x) * (y.clone() - q.clone() * &x));
        assert_eq!(
            delta_factor(&cv(2, &[2, 0]), &cv(2, &[0, 2]), &x, &y, &[], &q).unwrap(),
            want
        );
        let want6 = (y.clone() - q.clone() * &x) / (y.clone() - &x);
        assert_eq!(
            delta_factor(&cv(1, &[1, 0]), &cv(1, &[0, 1]), &x, &y, &[], &q).unwrap(),
            want6
        );
        let mirror = delta_factor(&cv(1, &[0, 1]), &cv(1, &[1, 0]), &y, &x, &[], &q).unwrap();
        assert_eq!(mirror, want6);
    }

    #[test]
    fn one_row_matches_lattice() {
        let q = r("1/2");
        assert_eq!(
            one_row_f_closed(Model::IzerginKorepin, &cv(2, &[2]), &r("2"), &[r("1")], &q).unwrap(),
            r("17/35")
        );
        let zs = [r("3"), r("-1/4"), r("5/3"), r("7")];
        for model in [Model::SixVertex, Model::IzerginKorepin] {
            let t = WeightTable::plain(model, q.clone());
            let n = model.n();
            for row in CompositionVector::all_with_weight(n, 4, n) {
                let s = NString::new(n, row.entries().to_vec()).unwrap();
                let lat = partition_f(&t, &[r("2")], &zs, &s, None).unwrap();
                assert_eq!(
                    one_row_f_closed(model, &row, &r("2"), &zs, &q).unwrap(),
                    lat,
                    "{row}"
                );
            }
        }
    }

    #[test]
    fn six_vertex_forms_agree() {
        let q = r("1/3");
        let xs = [r("2"), r("-5/7"), r("4")];
        let zs = [r("3"), r("-1/4"), r("5/3"), r("7")];
        let s = NString::parse(1, "1,1,0,1").unwrap();
        let a = symmetrized_f(Model::SixVertex, &s, &q, &xs, &zs).unwrap();
        assert_eq!(a, symmetrized_f_sn(&s, &q, &xs, &zs).unwrap());
        let t = WeightTable::plain(Model::SixVertex, q.clone());
        assert_eq!(a, partition_f(&t, &xs, &zs, &s, None).unwrap());
        let dw = NString::parse(1, "1,1,1").unwrap();
        assert_eq!(
            symmetrized_f(Model::SixVertex, &dw, &q, &xs, &zs).unwrap(),
            izergin_determinant(&q, &xs, &zs).unwrap()
        );
    }

    #[test]
    fn ik_n2_matches_lattice() {
        let q = r("1/3");
        let xs = [r("2"), r("-5/7")];
        let zs = [r("3"), r("-1/4"), r("5/3"), r("7")];
        let t = WeightTable::plain(Model::IzerginKorepin, q.clone());
        for text in ["2,2", "1,2,1", "1,1,1,1", "1,2,0,1", "0,1,1,2"] {
            let s = NString::parse(2, text).unwrap();
            assert_eq!(
                symmetrized_f(Model::IzerginKorepin, &s, &q, &xs, &zs).unwrap(),
                partition_f(&t, &xs, &zs, &s, None).unwrap(),
                "{text}"
            );
        }
    }
}
