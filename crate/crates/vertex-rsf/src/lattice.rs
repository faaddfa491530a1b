//! Partition functions by exact column-to-column transfer.
//!
//! A horizontal cut through the lattice is a tuple of edge states, one per
//! row, encoded in base `n + 1` with the bottom row as the least significant
//! digit. Sweeping a column is done one vertex at a time, so the cost per
//! column is `O(rows * (n+1)^(rows+2))` rather than a dense matrix product.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{singular, Error, Result};
use crate::models::{Model, Variant, WeightTable};
use crate::scalar::{bareiss_determinant, checked_div, powi, Field};
use crate::strings::{inversion_number, CompositionVector, NString};

/// Row count beyond which the dense state space is refused (`3^8 = 6561`).
pub const MAX_ROWS: usize = 8;

/// Spectral data shared by the higher-level entry points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet<T> {
    pub q: T,
    /// Primary alphabet, bottom row first.
    pub xs: Vec<T>,
    /// Dual primary alphabet for `G`-type functions.
    #[serde(default)]
    pub ys: Vec<T>,
    /// Secondary alphabet, left column first.
    pub zs: Vec<T>,
}

/// Base-`s` index of a cut state, `digits[0]` least significant.
pub fn encode(digits: &[usize], s: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * s + d)
}

pub fn decode(mut index: usize, rows: usize, s: usize) -> Vec<usize> {
    (0..rows)
        .map(|_| {
            let d = index % s;
            index /= s;
            d
        })
        .collect()
}

/// One horizontal line: its weight table and spectral parameter.
#[derive(Debug, Clone)]
pub struct Row<'a, T> {
    pub table: &'a WeightTable<T>,
    pub x: T,
}

/// One vertical line. A column table, when present, overrides the row tables
/// for every vertex on that column.
#[derive(Debug, Clone)]
pub struct Column<'a, T> {
    pub z: T,
    pub bottom: usize,
    pub top: usize,
    pub table: Option<&'a WeightTable<T>>,
}

impl<'a, T> Column<'a, T> {
    pub fn new(z: T, bottom: usize, top: usize) -> Self {
        Column {
            z,
            bottom,
            top,
            table: None,
        }
    }
}

/// A rectangular lattice with fixed boundary states on all four sides.
#[derive(Debug, Clone)]
pub struct Lattice<'a, T> {
    pub states: usize,
    pub rows: Vec<Row<'a, T>>,
    pub columns: Vec<Column<'a, T>>,
    /// Left boundary, bottom row first.
    pub left: Vec<usize>,
    /// Right boundary, bottom row first.
    pub right: Vec<usize>,
}

/// Per-vertex weight caches, `[row][col]`, each indexed `((i*s+j)*s+k)*s+l`.
struct Caches<T> {
    s: usize,
    cols: usize,
    w: Vec<Vec<T>>,
}

impl<T> Caches<T> {
    fn at(&self, row: usize, col: usize, i: usize, j: usize, k: usize, l: usize) -> &T {
        let s = self.s;
        &self.w[row * self.cols + col][((i * s + j) * s + k) * s + l]
    }
}

impl<'a, T: Field> Lattice<'a, T> {
    fn check(&self) -> Result<()> {
        let rows = self.rows.len();
        if rows > MAX_ROWS {
            return Err(Error::TooLarge {
                rows,
                limit: MAX_ROWS,
            });
        }
        if self.left.len() != rows || self.right.len() != rows {
            return Err(Error::Precondition(format!(
                "{} rows but boundary lengths {} and {}",
                rows,
                self.left.len(),
                self.right.len()
            )));
        }
        let s = self.states;
        let edges = self
            .left
            .iter()
            .chain(&self.right)
            .chain(self.columns.iter().flat_map(|c| [&c.bottom, &c.top]));
        for &e in edges {
            if e >= s {
                return Err(Error::StateOutOfRange {
                    state: e,
                    max: s - 1,
                });
            }
        }
        Ok(())
    }

    /// Total flux in minus total flux out; zero for a lattice that can
    /// carry any configuration at all.
    pub fn imbalance(&self) -> i64 {
        let sum = |v: &mut dyn Iterator<Item = usize>| v.map(|e| e as i64).sum::<i64>();
        sum(&mut self.left.iter().copied()) + sum(&mut self.columns.iter().map(|c| c.bottom))
            - sum(&mut self.right.iter().copied())
            - sum(&mut self.columns.iter().map(|c| c.top))
    }

    fn caches(&self) -> Result<Caches<T>> {
        let s = self.states;
        let mut w = Vec::with_capacity(self.rows.len() * self.columns.len());
        for row in &self.rows {
            for col in &self.columns {
                let table = col.table.unwrap_or(row.table);
                if table.model().states() != s {
                    return Err(Error::Precondition(format!(
                        "table for model {} in a lattice with {s} states",
                        table.model()
                    )));
                }
                let mut local = Vec::with_capacity(s.pow(4));
                for c in 0..s.pow(4) {
                    let v = [c / s.pow(3), (c / s.pow(2)) % s, (c / s) % s, c % s];
                    if v[0] + v[1] == v[2] + v[3] {
                        local.push(table.weight(&row.x, &col.z, v)?);
                    } else {
                        local.push(T::zero());
                    }
                }
                w.push(local);
            }
        }
        Ok(Caches {
            s,
            cols: self.columns.len(),
            w,
        })
    }

    /// Pushes a cut vector through column `col`.
    fn sweep(&self, caches: &Caches<T>, col: usize, input: &[T]) -> Vec<T> {
        let s = self.states;
        let rows = self.rows.len();
        let dim = input.len();
        let c = &self.columns[col];
        let mut cur = vec![T::zero(); dim * s];
        for (idx, v) in input.iter().enumerate() {
            if !v.is_zero() {
                cur[idx * s + c.bottom] = v.clone();
            }
        }
        let mut pw = 1;
        for r in 0..rows {
            let mut next = vec![T::zero(); dim * s];
            for idx in 0..dim {
                let hin = (idx / pw) % s;
                for vert in 0..s {
                    let val = &cur[idx * s + vert];
                    if val.is_zero() {
                        continue;
                    }
                    let flux = hin + vert;
                    for k in flux.saturating_sub(s - 1)..s.min(flux + 1) {
                        let l = flux - k;
                        let w = caches.at(r, col, vert, hin, k, l);
                        if w.is_zero() {
                            continue;
                        }
                        let out = idx - hin * pw + l * pw;
                        next[out * s + k] += &(val.clone() * w);
                    }
                }
            }
            cur = next;
            pw *= s;
        }
        (0..dim).map(|idx| cur[idx * s + c.top].clone()).collect()
    }

    /// The state sum, by left-to-right transfer.
    pub fn evaluate(&self) -> Result<T> {
        self.check()?;
        if self.imbalance() != 0 {
            return Ok(T::zero());
        }
        let s = self.states;
        let rows = self.rows.len();
        let caches = self.caches()?;
        let mut cut = vec![T::zero(); s.pow(rows as u32)];
        cut[encode(&self.left, s)] = T::one();
        for col in 0..self.columns.len() {
            cut = self.sweep(&caches, col, &cut);
        }
        Ok(cut[encode(&self.right, s)].clone())
    }

    /// The state sum by enumerating every internal edge labelling. Exponential;
    /// kept as an independent oracle for [`Lattice::evaluate`].
    pub fn brute_force(&self) -> Result<T> {
        self.check()?;
        let s = self.states;
        let rows = self.rows.len();
        let cols = self.columns.len();
        let caches = self.caches()?;
        let h_internal = rows * cols.saturating_sub(1);
        let v_internal = rows.saturating_sub(1) * cols;
        let total = h_internal + v_internal;
        let mut acc = T::zero();
        let mut labels = vec![0usize; total];
        // horizontal edge right of vertex (r, c)
        let h = |labels: &[usize], r: usize, c: usize| -> usize {
            if c + 1 == cols {
                self.right[r]
            } else {
                labels[r * (cols - 1) + c]
            }
        };
        let h_in = |labels: &[usize], r: usize, c: usize| -> usize {
            if c == 0 {
                self.left[r]
            } else {
                h(labels, r, c - 1)
            }
        };
        // vertical edge above vertex (r, c)
        let v = |labels: &[usize], r: usize, c: usize| -> usize {
            if r + 1 == rows {
                self.columns[c].top
            } else {
                labels[h_internal + r * cols + c]
            }
        };
        let v_in = |labels: &[usize], r: usize, c: usize| -> usize {
            if r == 0 {
                self.columns[c].bottom
            } else {
                v(labels, r - 1, c)
            }
        };
        if rows == 0 || cols == 0 {
            return Ok(
                if self.imbalance() == 0
                    && (cols == 0 || self.columns.iter().all(|c| c.bottom == c.top))
                    && (rows == 0 || self.left == self.right)
                {
                    T::one()
                } else {
                    T::zero()
                },
            );
        }
        loop {
            let mut prod = T::one();
            'vertices: for r in 0..rows {
                for c in 0..cols {
                    let w = caches.at(
                        r,
                        c,
                        v_in(&labels, r, c),
                        h_in(&labels, r, c),
                        v(&labels, r, c),
                        h(&labels, r, c),
                    );
                    if w.is_zero() {
                        prod = T::zero();
                        break 'vertices;
                    }
                    prod *= w;
                }
            }
            acc += &prod;
            // odometer
            let mut pos = 0;
            loop {
                if pos == total {
                    return Ok(acc);
                }
                labels[pos] += 1;
                if labels[pos] < s {
                    break;
                }
                labels[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Dense single-column transfer matrix, `matrix[out][in]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnOperator<T> {
    pub n: usize,
    pub rows: usize,
    pub z: T,
    pub bottom: usize,
    pub top: usize,
    pub variant: Variant,
    pub matrix: Vec<Vec<T>>,
}

/// Builds one lattice column with rows `xs` (bottom first) as a dense matrix.
pub fn column_operator<T: Field>(
    table: &WeightTable<T>,
    xs: &[T],
    z: &T,
    bottom: usize,
    top: usize,
) -> Result<ColumnOperator<T>> {
    let s = table.model().states();
    let lattice = Lattice {
        states: s,
        rows: xs
            .iter()
            .map(|x| Row {
                table,
                x: x.clone(),
            })
            .collect(),
        columns: vec![Column::new(z.clone(), bottom, top)],
        left: vec![0; xs.len()],
        right: vec![0; xs.len()],
    };
    lattice.check()?;
    let caches = lattice.caches()?;
    let dim = s.pow(xs.len() as u32);
    let mut matrix = vec![vec![T::zero(); dim]; dim];
    for input in 0..dim {
        let mut basis = vec![T::zero(); dim];
        basis[input] = T::one();
        for (out, v) in lattice.sweep(&caches, 0, &basis).into_iter().enumerate() {
            matrix[out][input] = v;
        }
    }
    Ok(ColumnOperator {
        n: table.n(),
        rows: xs.len(),
        z: z.clone(),
        bottom,
        top,
        variant: table.variant(),
        matrix,
    })
}

fn need_columns<T>(zs: &[T], width: usize) -> Result<()> {
    if zs.len() < width {
        return Err(Error::Precondition(format!(
            "{width} columns needed but only {} secondary parameters given",
            zs.len()
        )));
    }
    Ok(())
}

/// The lattice of `F_S^I` on arbitrary rows: left boundary `left` (bottom
/// first), bottom 0, top `S` padded to `width` columns, right 0.
pub fn f_lattice_rows<'a, T: Field>(
    rows: Vec<Row<'a, T>>,
    zs: &[T],
    s: &NString,
    left: &[usize],
    width: usize,
) -> Result<Lattice<'a, T>> {
    let n = s.n();
    let lsum: usize = left.iter().sum();
    if lsum != s.weight() {
        return Err(Error::Conservation(format!(
            "|S| = {} but the left boundary carries {lsum}",
            s.weight()
        )));
    }
    let tops = s.padded(width)?;
    need_columns(zs, width)?;
    let nrows = rows.len();
    Ok(Lattice {
        states: n + 1,
        rows,
        columns: tops
            .iter()
            .zip(zs)
            .map(|(&t, z)| Column::new(z.clone(), 0, t))
            .collect(),
        left: left.to_vec(),
        right: vec![0; nrows],
    })
}

/// `F_S^I` on arbitrary rows, one column per entry of the support of `S`.
pub fn partition_f_rows<T: Field>(
    rows: Vec<Row<'_, T>>,
    zs: &[T],
    s: &NString,
    left: &[usize],
) -> Result<T> {
    f_lattice_rows(rows, zs, s, left, s.len())?.evaluate()
}

/// Rows sharing one table, bottom first.
pub fn rows_of<'a, T: Field>(table: &'a WeightTable<T>, xs: &[T]) -> Vec<Row<'a, T>> {
    xs.iter()
        .map(|x| Row {
            table,
            x: x.clone(),
        })
        .collect()
}

/// `F_S(x; z)`, or `F_S^I` when `left` is given.
pub fn partition_f<T: Field>(
    table: &WeightTable<T>,
    xs: &[T],
    zs: &[T],
    s: &NString,
    left: Option<&CompositionVector>,
) -> Result<T> {
    let n = table.n();
    if s.n() != n {
        return Err(Error::Precondition(format!("{s} is not a {n}-string")));
    }
    let left = match left {
        Some(l) if l.len() != xs.len() => {
            return Err(Error::Precondition(format!(
                "left boundary {l} has length {} but there are {} rows",
                l.len(),
                xs.len()
            )))
        }
        Some(l) => l.entries().to_vec(),
        None => vec![n; xs.len()],
    };
    partition_f_rows(rows_of(table, xs), zs, s, &left)
}

/// `G_S(y; z)` (plain) or `G-dot_S(y; z)` (dotted), with `big_n` the number
/// of paths entering from the bottom.
pub fn partition_g<T: Field>(
    table: &WeightTable<T>,
    ys: &[T],
    zs: &[T],
    s: &NString,
    big_n: usize,
    dotted: bool,
) -> Result<T> {
    let n = table.n();
    if s.n() != n {
        return Err(Error::Precondition(format!("{s} is not a {n}-string")));
    }
    if s.weight() != n * big_n {
        return Err(Error::Conservation(format!(
            "|S| = {} but n N = {}",
            s.weight(),
            n * big_n
        )));
    }
    let width = big_n.max(s.len());
    need_columns(zs, width)?;
    let m = ys.len();
    let packed = |k: usize| if k < big_n { n } else { 0 };
    if dotted {
        let dotted_table = table.with_variant(Variant::Dotted);
        let rows = ys
            .iter()
            .rev()
            .map(|y| Row {
                table: &dotted_table,
                x: y.clone(),
            })
            .collect();
        Lattice {
            states: n + 1,
            rows,
            columns: (0..width)
                .map(|k| Column::new(zs[k].clone(), s.get(k), packed(k)))
                .collect(),
            left: vec![n; m],
            right: vec![n; m],
        }
        .evaluate()
    } else {
        Lattice {
            states: n + 1,
            rows: rows_of(table, ys),
            columns: (0..width)
                .map(|k| Column::new(zs[k].clone(), packed(k), s.get(k)))
                .collect(),
            left: vec![0; m],
            right: vec![0; m],
        }
        .evaluate()
    }
}

/// Coefficient of `F_S^I` in `H_S`: `q^{-inv(I)}` (6V) or
/// `(-1)^{c1/2} (1 - 1/q)^{c1} q^{-inv(I)}` (IK, sign `(-1)^{floor(c1/2)}` for
/// odd `c1`).
pub fn h_coefficient<T: Field>(model: Model, q: &T, left: &CompositionVector) -> Result<T> {
    let inv = powi(q, -(inversion_number(left) as i64))?;
    Ok(match model {
        Model::SixVertex => inv,
        Model::IzerginKorepin => {
            let c1 = left.count(1);
            let sign = if (c1 / 2) % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            let base = T::one() - checked_div(T::one(), q)?;
            sign * powi(&base, c1 as i64)? * inv
        }
    })
}

/// `H_S` on arbitrary rows (all from the same model).
pub fn partition_h_rows<T: Field>(
    model: Model,
    q: &T,
    rows: &[Row<'_, T>],
    zs: &[T],
    s: &NString,
) -> Result<T> {
    let n = model.n();
    let w = s.weight();
    if w > n * rows.len() {
        return Err(Error::Precondition(format!(
            "|S| = {w} exceeds n N = {}",
            n * rows.len()
        )));
    }
    let mut acc = T::zero();
    for left in CompositionVector::all_with_weight(n, rows.len(), w) {
        let f = partition_f_rows(rows.to_vec(), zs, s, left.entries())?;
        if !f.is_zero() {
            acc += &(h_coefficient(model, q, &left)? * f);
        }
    }
    Ok(acc)
}

/// `H_S(x; z)`.
pub fn partition_h<T: Field>(table: &WeightTable<T>, xs: &[T], zs: &[T], s: &NString) -> Result<T> {
    partition_h_rows(table.model(), table.q(), &rows_of(table, xs), zs, s)
}

/// One row traversed right to left: the line enters from the right with
/// `right_state`, crosses columns `zs` (last first) and must leave on the
/// left with state `n`. At column `j` the vertex weight is
/// `W_{line/z_j}(h_in, bottoms[j]; h_out, tops[j])`.
pub fn psi_row<T: Field>(
    table: &WeightTable<T>,
    line: &T,
    zs: &[T],
    bottoms: &[usize],
    tops: &[usize],
    right_state: usize,
) -> Result<T> {
    let n = table.n();
    if bottoms.len() != zs.len() || tops.len() != zs.len() {
        return Err(Error::Precondition(
            "psi_row needs one bottom and one top state per column".into(),
        ));
    }
    let inflow = bottoms.iter().sum::<usize>() + right_state;
    let outflow = tops.iter().sum::<usize>() + n;
    if inflow != outflow {
        return Err(Error::Conservation(format!(
            "row carries {inflow} in but {outflow} out"
        )));
    }
    let mut h = right_state as i64;
    let mut acc = T::one();
    for j in (0..zs.len()).rev() {
        let out = h + bottoms[j] as i64 - tops[j] as i64;
        if !(0..=n as i64).contains(&out) {
            return Ok(T::zero());
        }
        acc *= &table.weight(
            &zs[j],
            line,
            [h as usize, bottoms[j], out as usize, tops[j]],
        )?;
        if acc.is_zero() {
            return Ok(acc);
        }
        h = out;
    }
    Ok(acc)
}

/// Closed-form references checked against lattice values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedForm {
    /// Determinant formula for the six-vertex `F_{(1^N)}`.
    IzerginDw,
    /// `prod_{i=1}^N (1 - q^{-i})`.
    ZnLimit,
    /// Fully packed `K x K` lattice with every column at infinite ratio.
    FrozenDw,
}

/// `N x N` determinant expression for the six-vertex domain-wall function.
pub fn izergin_determinant<T: Field>(q: &T, xs: &[T], zs: &[T]) -> Result<T> {
    let n = xs.len();
    need_columns(zs, n)?;
    let zs = &zs[..n];
    let mut prefactor = T::one();
    for x in xs {
        for z in zs {
            prefactor *= &(x.clone() - z);
        }
    }
    let mut denom = T::one();
    for i in 0..n {
        for j in i + 1..n {
            denom *= &((xs[i].clone() - &xs[j]) * (zs[j].clone() - &zs[i]));
        }
    }
    let mut m = Vec::with_capacity(n);
    for x in xs {
        let mut row = Vec::with_capacity(n);
        for z in zs {
            let d = (x.clone() - z) * (x.clone() - q.clone() * z);
            row.push(
                checked_div((T::one() - q) * z, &d)
                    .map_err(singular(format!("determinant entry at x={x}, z={z}")))?,
            );
        }
        m.push(row);
    }
    checked_div(prefactor * bareiss_determinant(&m), &denom).map_err(singular(
        "coinciding spectral parameters in the determinant prefactor",
    ))
}

/// `Z_N(q) = prod_{i=1}^N (1 - q^{-i})`.
pub fn zn_limit<T: Field>(q: &T, big_n: usize) -> Result<T> {
    let mut acc = T::one();
    for i in 1..=big_n {
        acc *= &(T::one() - powi(q, -(i as i64))?);
    }
    Ok(acc)
}

/// `lim F_{(n^K)}(*; u)` as all `u -> infinity`: a `K x K` lattice with the
/// limit weight table, left and top packed with `n`.
pub fn frozen_dw<T: Field>(model: Model, q: &T, k: usize) -> Result<T> {
    let table = WeightTable::new(model, Variant::RatioInfLimit, q.clone());
    let n = model.n();
    Lattice {
        states: n + 1,
        rows: rows_of(&table, &vec![T::one(); k]),
        columns: (0..k).map(|_| Column::new(T::one(), 0, n)).collect(),
        left: vec![n; k],
        right: vec![0; k],
    }
    .evaluate()
}

/// Dispatches to the closed forms: `xs, zs` feed the determinant, `k` is the
/// size for the two limit forms.
pub fn closed_form_reference<T: Field>(
    kind: ClosedForm,
    model: Model,
    q: &T,
    xs: &[T],
    zs: &[T],
    k: usize,
) -> Result<T> {
    match kind {
        ClosedForm::IzerginDw => izergin_determinant(q, xs, zs),
        ClosedForm::ZnLimit => zn_limit(q, k),
        ClosedForm::FrozenDw => frozen_dw(model, q, k),
    }
}

/// The right side of the limit construction of `H_S`: the lattice for
/// `F_{(n^{N-K}, S)}` whose first `N - K` columns carry limit weights,
/// divided by [`frozen_dw`].
pub fn h_limit_lattice<T: Field>(
    table: &WeightTable<T>,
    xs: &[T],
    zs: &[T],
    s: &NString,
) -> Result<T> {
    let model = table.model();
    let n = model.n();
    let big_n = xs.len();
    if !s.weight().is_multiple_of(n) || s.weight() / n > big_n {
        return Err(Error::Precondition(format!(
            "|S| = {} is not n K with K <= {big_n}",
            s.weight()
        )));
    }
    let frozen = big_n - s.weight() / n;
    need_columns(zs, s.len())?;
    let inf = table.with_variant(Variant::RatioInfLimit);
    let mut columns: Vec<Column<'_, T>> = (0..frozen)
        .map(|_| Column {
            z: T::one(),
            bottom: 0,
            top: n,
            table: Some(&inf),
        })
        .collect();
    columns.extend((0..s.len()).map(|k| Column::new(zs[k].clone(), 0, s.get(k))));
    let value = Lattice {
        states: n + 1,
        rows: rows_of(table, xs),
        columns,
        left: vec![n; big_n],
        right: vec![0; big_n],
    }
    .evaluate()?;
    checked_div(value, &frozen_dw(model, table.q(), frozen)?)
        .map_err(singular("frozen domain-wall normalization vanishes"))
}

/// `H_S` with the top row sent to infinity (its weights replaced by the
/// `z/x -> 0` limit).
pub fn h_top_row_at_infinity<T: Field>(
    table: &WeightTable<T>,
    xs: &[T],
    zs: &[T],
    s: &NString,
) -> Result<T> {
    let zero_limit = table.with_variant(Variant::RatioZeroLimit);
    let mut rows = rows_of(table, xs);
    if let Some(top) = rows.last_mut() {
        top.table = &zero_limit;
    }
    partition_h_rows(table.model(), table.q(), &rows, zs, s)
}

/// Whether every value in `vals` is one.
pub fn all_one<T: Field>(vals: &[T]) -> bool {
    vals.iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_parse, Rational};

    fn r(s: &str) -> Rational {
        rat_parse(s).unwrap()
    }

    #[test]
    fn encoding_roundtrip() {
        for idx in 0..81 {
            assert_eq!(encode(&decode(idx, 4, 3), 3), idx);
        }
        assert_eq!(encode(&[1, 0], 3), 1);
        assert_eq!(encode(&[0, 1], 3), 3);
    }

    #[test]
    fn single_vertex_column() {
        let t = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
        let op = column_operator(&t, &[r("2")], &r("1"), 0, 2).unwrap();
        for out in 0..3 {
            for input in 0..3 {
                let want = if (out, input) == (0, 2) {
                    r("17/35")
                } else {
                    r("0")
                };
                assert_eq!(op.matrix[out][input], want);
            }
        }
        let op = column_operator(&t, &[r("2")], &r("1"), 0, 0).unwrap();
        for e in 0..3 {
            assert_eq!(
                op.matrix[e][e],
                t.weight(&r("2"), &r("1"), [0, e, 0, e]).unwrap()
            );
        }
    }

    #[test]
    fn two_row_column_entry() {
        let t = WeightTable::plain(Model::IzerginKorepin, r("1/3"));
        let xs = [r("2"), r("5")];
        let z = r("7/2");
        let op = column_operator(&t, &xs, &z, 0, 1).unwrap();
        // in = (1, 0), out = (0, 0): bottom row x1 carries the 1 up.
        let want = t.weight(&xs[0], &z, [0, 1, 1, 0]).unwrap()
            * t.weight(&xs[1], &z, [1, 0, 1, 0]).unwrap();
        assert_eq!(op.matrix[encode(&[0, 0], 3)][encode(&[1, 0], 3)], want);
    }

    #[test]
    fn f_examples() {
        let t = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
        let s = NString::new(2, vec![2]).unwrap();
        assert_eq!(
            partition_f(&t, &[r("2")], &[r("1")], &s, None).unwrap(),
            r("17/35")
        );
        let six = WeightTable::plain(Model::SixVertex, r("1/3"));
        let (x, zs) = (r("2"), [r("5"), r("-1"), r("3/2")]);
        let q = r("1/3");
        let mut want = (r("1") - &q) * &zs[2] / (x.clone() - q.clone() * &zs[2]);
        for z in &zs[..2] {
            want *= (x.clone() - z) / (x.clone() - q.clone() * z);
        }
        let s = NString::new(1, vec![0, 0, 1]).unwrap();
        assert_eq!(partition_f(&six, &[x], &zs, &s, None).unwrap(), want);
    }

    #[test]
    fn frozen_and_limits() {
        let q = r("1/2");
        assert_eq!(zn_limit(&q, 3).unwrap(), r("-21"));
        for k in 0..=4 {
            assert_eq!(
                frozen_dw(Model::SixVertex, &q, k).unwrap(),
                zn_limit(&q, k).unwrap()
            );
        }
        assert_eq!(frozen_dw(Model::IzerginKorepin, &q, 0).unwrap(), r("1"));
    }

    #[test]
    fn izergin_small() {
        let q = r("1/3");
        let (x, z) = (r("2"), r("5"));
        let want = (r("1") - &q) * &z / (x.clone() - q.clone() * &z);
        assert_eq!(izergin_determinant(&q, &[x], &[z]).unwrap(), want);
    }

    #[test]
    fn psi_trivial_cases() {
        let t = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
        assert_eq!(psi_row(&t, &r("3"), &[], &[], &[], 2).unwrap(), r("1"));
        assert!(psi_row(&t, &r("3"), &[], &[], &[], 1).is_err());
        let one = psi_row(&t, &r("3"), &[r("5")], &[2], &[2], 2).unwrap();
        assert_eq!(one, r("1"));
    }

    #[test]
    fn g_trivial() {
        let t = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
        let g = partition_g(&t, &[r("3"), r("4")], &[], &NString::empty(2), 0, false).unwrap();
        assert_eq!(g, r("1"));
    }

    #[test]
    fn izergin_matches_lattice() {
        let q = r("1/3");
        let t = WeightTable::plain(Model::SixVertex, q.clone());
        let xs = [r("2"), r("7/3"), r("-5")];
        let zs = [r("11"), r("1/4"), r("3/7")];
        let s = NString::new(1, vec![1, 1, 1]).unwrap();
        let lat = partition_f(&t, &xs, &zs, &s, None).unwrap();
        assert_eq!(lat, izergin_determinant(&q, &xs, &zs).unwrap());
    }

    #[test]
    fn brute_force_agrees() {
        let q = r("2/5");
        let t = WeightTable::plain(Model::IzerginKorepin, q);
        let xs = [r("2"), r("7/3")];
        let zs = [r("11"), r("1/4"), r("3/7")];
        let s = NString::new(2, vec![1, 2, 1]).unwrap();
        let rows = rows_of(&t, &xs);
        let lattice = Lattice {
            states: 3,
            rows,
            columns: (0..3)
                .map(|k| Column::new(zs[k].clone(), 0, s.get(k)))
                .collect(),
            left: vec![2, 2],
            right: vec![0, 0],
        };
        let v = lattice.evaluate().unwrap();
        assert!(!num_traits::Zero::is_zero(&v));
        assert_eq!(v, lattice.brute_force().unwrap());
    }

    #[test]
    fn h_limit_matches_sum() {
        for (model, text) in [
            (Model::SixVertex, "0,1,1"),
            (Model::IzerginKorepin, "1,2,1"),
        ] {
            let t = WeightTable::plain(model, r("1/3"));
            let s = NString::parse(model.n(), text).unwrap();
            let xs = [r("2"), r("7/3"), r("-5")];
            let zs = [r("11"), r("1/4"), r("3/7")];
            let direct = partition_h(&t, &xs, &zs, &s).unwrap();
            assert_eq!(
                direct,
                h_limit_lattice(&t, &xs, &zs, &s).unwrap(),
                "{model}"
            );
        }
    }
}
