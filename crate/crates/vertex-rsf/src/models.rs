//! Vertex weights of the stochastic six-vertex model (states `{0,1}`) and the
//! Izergin–Korepin nineteen-vertex model (states `{0,1,2}`), plus exact
//! checkers for their local relations.
//!
//! A weight `W_{z/x}(i,j;k,l)` belongs to the vertex where a horizontal line
//! with parameter `x` crosses a vertical line with parameter `z`. The four
//! states are read bottom, left, top, right. Weights are homogeneous of degree
//! zero in `(x, z)`, so the two limit variants are plain weights evaluated at
//! `(x, z) = (1, 0)` and `(0, 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{singular, Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{checked_div, powi, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "6v")]
    SixVertex,
    #[serde(rename = "ik")]
    IzerginKorepin,
}

impl Model {
    /// Maximal occupation `n`.
    pub fn n(self) -> usize {
        match self {
            Model::SixVertex => 1,
            Model::IzerginKorepin => 2,
        }
    }

    /// Number of edge states, `n + 1`.
    pub fn states(self) -> usize {
        self.n() + 1
    }

    pub fn from_n(n: usize) -> Result<Model> {
        match n {
            1 => Ok(Model::SixVertex),
            2 => Ok(Model::IzerginKorepin),
            _ => Err(Error::Precondition(format!("no model with n = {n}"))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::SixVertex => "6v",
            Model::IzerginKorepin => "ik",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Plain,
    /// Plain divided by `W(0,n;0,n)`.
    Dotted,
    /// Plain times the common denominator, a polynomial in `x` and `z`.
    PolyNormalized,
    /// Limit `z/x -> 0`.
    RatioZeroLimit,
    /// Limit `z/x -> infinity`.
    RatioInfLimit,
}

/// Which denominator an entry carries. `Lin` is `x - q^2 z` (IK) or
/// `x - q z` (6V); `Quad` is `(x - q^2 z)(x - q^3 z)` (IK only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Den {
    One,
    Lin,
    Quad,
}

/// The vertex `(i, j; k, l)`: bottom, left, top, right.
pub type Vertex = [usize; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable<T> {
    model: Model,
    variant: Variant,
    q: T,
    offset: Option<(Vertex, T)>,
}

impl<T: Field> WeightTable<T> {
    pub fn new(model: Model, variant: Variant, q: T) -> Self {
        WeightTable {
            model,
            variant,
            q,
            offset: None,
        }
    }

    pub fn plain(model: Model, q: T) -> Self {
        Self::new(model, Variant::Plain, q)
    }

    /// Adds `delta` to one plain entry. Derived variants see the perturbed
    /// entry. Exists so tests can confirm the suites notice a wrong table.
    pub fn perturbed(mut self, vertex: Vertex, delta: T) -> Self {
        self.offset = Some((vertex, delta));
        self
    }

    /// Same model, `q` and perturbation, different variant.
    pub fn with_variant(&self, variant: Variant) -> Self {
        WeightTable {
            variant,
            ..self.clone()
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    /// `W_{z/x}(i,j;k,l)` for this table's variant. Limit variants ignore
    /// `x` and `z`.
    pub fn weight(&self, x: &T, z: &T, v: Vertex) -> Result<T> {
        let s = self.model.states();
        if let Some(&state) = v.iter().find(|&&e| e >= s) {
            return Err(Error::StateOutOfRange { state, max: s - 1 });
        }
        match self.variant {
            Variant::Plain => self.plain_weight(x, z, v),
            Variant::Dotted => {
                let n = self.n();
                let norm = self.plain_weight(x, z, [0, n, 0, n])?;
                checked_div(self.plain_weight(x, z, v)?, &norm)
                    .map_err(singular(format!("W(0,{n};0,{n}) = 0 at x={x}, z={z}")))
            }
            Variant::PolyNormalized => Ok(self.poly_weight(x, z, v)),
            Variant::RatioZeroLimit => self.plain_weight(&T::one(), &T::zero(), v),
            Variant::RatioInfLimit => self.plain_weight(&T::zero(), &T::one(), v),
        }
    }

    fn offset_for(&self, v: Vertex) -> Option<&T> {
        self.offset
            .as_ref()
            .and_then(|(w, d)| (*w == v).then_some(d))
    }

    fn plain_weight(&self, x: &T, z: &T, v: Vertex) -> Result<T> {
        let mut w = match entry(self.model, &self.q, x, z, v) {
            None => T::zero(),
            Some((num, den)) => {
                let d = den_value(self.model, &self.q, x, z, den);
                checked_div(num, &d).map_err(singular(format!(
                    "{} weight {:?} at q={}, x={x}, z={z}",
                    self.model, v, self.q
                )))?
            }
        };
        if let Some(d) = self.offset_for(v) {
            w += d;
        }
        Ok(w)
    }

    fn poly_weight(&self, x: &T, z: &T, v: Vertex) -> T {
        let q = &self.q;
        let full = match self.model {
            Model::SixVertex => Den::Lin,
            Model::IzerginKorepin => Den::Quad,
        };
        let mut w = match entry(self.model, q, x, z, v) {
            None => T::zero(),
            Some((num, den)) => {
                let cofactor = match (self.model, den) {
                    (_, d) if d == full => T::one(),
                    (Model::IzerginKorepin, Den::Lin) => x.clone() - q.clone() * q * q * z,
                    _ => den_value(self.model, q, x, z, full),
                };
                num * cofactor
            }
        };
        if let Some(d) = self.offset_for(v) {
            w += &(d.clone() * den_value(self.model, q, x, z, full));
        }
        w
    }
}

fn den_value<T: Field>(model: Model, q: &T, x: &T, z: &T, den: Den) -> T {
    let q2 = q.clone() * q;
    match (model, den) {
        (_, Den::One) => T::one(),
        (Model::SixVertex, Den::Lin) => x.clone() - q.clone() * z,
        (Model::SixVertex, Den::Quad) => {
            unreachable!("six-vertex weights have linear denominators")
        }
        (Model::IzerginKorepin, Den::Lin) => x.clone() - q2 * z,
        (Model::IzerginKorepin, Den::Quad) => {
            (x.clone() - q2.clone() * z) * (x.clone() - q2 * q * z)
        }
    }
}

/// Numerator and denominator kind of a plain weight, `None` for the entries
/// that vanish identically.
fn entry<T: Field>(model: Model, q: &T, x: &T, z: &T, v: Vertex) -> Option<(T, Den)> {
    let one = T::one();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let q4 = q2.clone() * &q2;
    let xz = x.clone() - z;
    match model {
        Model::SixVertex => Some(match v {
            [0, 0, 0, 0] | [1, 1, 1, 1] => (one, Den::One),
            [1, 0, 1, 0] => (q.clone() * xz, Den::Lin),
            [1, 0, 0, 1] => ((one - q) * x, Den::Lin),
            [0, 1, 1, 0] => ((one - q) * z, Den::Lin),
            [0, 1, 0, 1] => (xz, Den::Lin),
            _ => return None,
        }),
        Model::IzerginKorepin => {
            let one_q = one.clone() - q;
            let one_q2 = one.clone() - &q2;
            let one_p = one.clone() + q;
            Some(match v {
                [0, 0, 0, 0] | [2, 2, 2, 2] => (one, Den::One),
                [1, 0, 1, 0] | [2, 1, 2, 1] => (q2 * xz, Den::Lin),
                [1, 0, 0, 1] | [2, 1, 1, 2] => (one_q2 * x, Den::Lin),
                [0, 1, 1, 0] | [1, 2, 2, 1] => (one_q2 * z, Den::Lin),
                [0, 1, 0, 1] | [1, 2, 1, 2] => (xz, Den::Lin),
                [2, 0, 2, 0] => (q4 * xz * (x.clone() - q.clone() * z), Den::Quad),
                [2, 0, 1, 1] => (-(q.clone() * &one_q * &one_q * one_p * x * xz), Den::Quad),
                [2, 0, 0, 2] => (
                    one_q2 * x * (x.clone() + q.clone() * x - q.clone() * z - q3 * z),
                    Den::Quad,
                ),
                [1, 1, 2, 0] => (-(q4 * one_p * xz * z), Den::Quad),
                [1, 1, 1, 1] => {
                    let mid = one_p * (one - &q2 + &q4) * x * z;
                    (mid - q.clone() * x * x - q4 * z * z, Den::Quad)
                }
                [1, 1, 0, 2] => (one_p * x * xz, Den::Quad),
                [0, 2, 2, 0] => (
                    one_q2 * (x.clone() + q2.clone() * x - q2 * z - q3 * z) * z,
                    Den::Quad,
                ),
                [0, 2, 1, 1] => (q.clone() * &one_q * &one_q * one_p * xz * z, Den::Quad),
                [0, 2, 0, 2] => (xz * (x.clone() - q.clone() * z), Den::Quad),
                _ => return None,
            })
        }
    }
}

/// Limit weights as a function of `q` alone.
pub fn degenerate_weight<T: Field>(model: Model, limit: Variant, q: &T, v: Vertex) -> Result<T> {
    match limit {
        Variant::RatioZeroLimit | Variant::RatioInfLimit => {
            WeightTable::new(model, limit, q.clone()).weight(&T::zero(), &T::zero(), v)
        }
        other => Err(Error::Unsupported(format!(
            "{other:?} is not a limit variant"
        ))),
    }
}

/// Every `(i, j; k, l)` with entries in `0..states`.
pub fn all_vertices(states: usize) -> impl Iterator<Item = Vertex> {
    (0..states.pow(4)).map(move |c| {
        [
            c % states,
            (c / states) % states,
            (c / states.pow(2)) % states,
            c / states.pow(3),
        ]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalRelation {
    YangBaxter,
    Unitarity,
    SumToUnity,
    FlipSymmetry,
}

/// Checks one local relation over every external state assignment.
///
/// `params` holds the spectral parameters the relation needs, with `q` taken
/// from the table: `[x, y, z]` for Yang–Baxter, `[x, y]` for unitarity and
/// flip symmetry, `[x, z]` for sum-to-unity. Flip symmetry compares the
/// dotted version of `table` with its plain version.
pub fn check_local_relation<T: Field>(
    relation: LocalRelation,
    table: &WeightTable<T>,
    params: &[T],
) -> Result<VerificationReport> {
    let arity = match relation {
        LocalRelation::YangBaxter => 3,
        _ => 2,
    };
    if params.len() != arity {
        return Err(Error::Precondition(format!(
            "{relation:?} takes {arity} spectral parameters, got {}",
            params.len()
        )));
    }
    let mut report = VerificationReport::new(format!("local/{relation:?}"));
    report
        .param("model", table.model())
        .param("variant", format!("{:?}", table.variant()))
        .param("q", table.q());
    for (name, p) in ["x", "y", "z"].iter().zip(params) {
        report.param(*name, p);
    }
    match relation {
        LocalRelation::YangBaxter => check_ybe(table, params, &mut report)?,
        LocalRelation::Unitarity => check_unitarity(table, params, &mut report)?,
        LocalRelation::SumToUnity => check_sum_to_unity(table, params, &mut report)?,
        LocalRelation::FlipSymmetry => check_flip(table, params, &mut report)?,
    }
    Ok(report)
}

/// Dense `(n+1)^4` cache of one vertex's weights, indexed `[i][j][k][l]`.
struct Local<T> {
    s: usize,
    w: Vec<T>,
}

impl<T: Field> Local<T> {
    fn new(table: &WeightTable<T>, x: &T, z: &T) -> Result<Self> {
        let s = table.model().states();
        let mut w = Vec::with_capacity(s.pow(4));
        for c in 0..s.pow(4) {
            let v = [c / s.pow(3), (c / s.pow(2)) % s, (c / s) % s, c % s];
            w.push(table.weight(x, z, v)?);
        }
        Ok(Local { s, w })
    }

    fn at(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        let s = self.s;
        &self.w[((i * s + j) * s + k) * s + l]
    }
}

fn check_ybe<T: Field>(
    table: &WeightTable<T>,
    p: &[T],
    report: &mut VerificationReport,
) -> Result<()> {
    let (x, y, z) = (&p[0], &p[1], &p[2]);
    let wyx = Local::new(table, x, y)?;
    let wzx = Local::new(table, x, z)?;
    let wzy = Local::new(table, y, z)?;
    let s = wyx.s;
    for ext in 0..s.pow(6) {
        let d: Vec<usize> = (0..6).map(|t| (ext / s.pow(t)) % s).collect();
        let (i1, i2, i3, j1, j2, j3) = (d[0], d[1], d[2], d[3], d[4], d[5]);
        let mut lhs = T::zero();
        let mut rhs = T::zero();
        for k1 in 0..s {
            for k2 in 0..s {
                for k3 in 0..s {
                    lhs += &(wyx.at(i2, i1, k2, k1).clone()
                        * wzx.at(i3, k1, k3, j1)
                        * wzy.at(k3, k2, j3, j2));
                    rhs += &(wzy.at(i3, i2, k3, k2).clone()
                        * wzx.at(k3, i1, j3, k1)
                        * wyx.at(k2, k1, j2, j1));
                }
            }
        }
        report.record(
            format_args!("i=({i1},{i2},{i3}) j=({j1},{j2},{j3})"),
            &(lhs - rhs),
        );
    }
    Ok(())
}

fn check_unitarity<T: Field>(
    table: &WeightTable<T>,
    p: &[T],
    report: &mut VerificationReport,
) -> Result<()> {
    if table.variant() != Variant::Plain {
        return Err(Error::Unsupported(
            "unitarity holds only for the plain normalization".into(),
        ));
    }
    let (x, y) = (&p[0], &p[1]);
    let wyx = Local::new(table, x, y)?;
    let wxy = Local::new(table, y, x)?;
    let s = wyx.s;
    for i1 in 0..s {
        for i2 in 0..s {
            for j1 in 0..s {
                for j2 in 0..s {
                    let mut acc = T::zero();
                    for k1 in 0..s {
                        for k2 in 0..s {
                            acc += &(wyx.at(i2, i1, k2, k1).clone() * wxy.at(k1, k2, j1, j2));
                        }
                    }
                    if i1 == j1 && i2 == j2 {
                        acc -= &T::one();
                    }
                    report.record(format_args!("i=({i1},{i2}) j=({j1},{j2})"), &acc);
                }
            }
        }
    }
    Ok(())
}

fn check_sum_to_unity<T: Field>(
    table: &WeightTable<T>,
    p: &[T],
    report: &mut VerificationReport,
) -> Result<()> {
    if matches!(table.variant(), Variant::Dotted | Variant::PolyNormalized) {
        return Err(Error::Unsupported(
            "rows sum to one only for plain and limit weights".into(),
        ));
    }
    let w = Local::new(table, &p[0], &p[1])?;
    let s = w.s;
    for i in 0..s {
        for j in 0..s {
            let mut acc = -T::one();
            for k in 0..s {
                for l in 0..s {
                    acc += w.at(i, j, k, l);
                }
            }
            report.record(format_args!("(i,j)=({i},{j})"), &acc);
        }
    }
    Ok(())
}

fn check_flip<T: Field>(
    table: &WeightTable<T>,
    p: &[T],
    report: &mut VerificationReport,
) -> Result<()> {
    let (x, y) = (&p[0], &p[1]);
    let q = table.q().clone();
    let n = table.n();
    let plain = table.with_variant(Variant::Plain);
    let dotted = table.with_variant(Variant::Dotted);
    // The flipped side has spectral ratio x / (q^n' y) with n' = 1 or 3.
    let shift = match table.model() {
        Model::SixVertex => q.clone(),
        Model::IzerginKorepin => q.clone() * &q * &q,
    };
    let row = shift * y;
    for v in all_vertices(n + 1) {
        let [i, j, k, l] = v;
        let (jb, lb) = (n - j, n - l);
        let lhs = dotted.weight(x, y, v)?;
        let flipped = plain.weight(&row, x, [k, jb, i, lb])?;
        let ind = |b: bool| i64::from(b);
        let pref = match table.model() {
            Model::SixVertex => {
                let sign = if (i + k) % 2 == 1 {
                    -T::one()
                } else {
                    T::one()
                };
                sign * powi(&q, jb as i64)?
            }
            Model::IzerginKorepin => {
                powi(&q, 2 * jb as i64)?
                    * powi(&(q.clone() - T::one()), ind(k == 1) - ind(i == 1))?
                    * powi(&(-q.clone()), ind(k == 2) - ind(i == 2))?
            }
        };
        report.record(format_args!("{v:?}"), &(lhs - pref * flipped));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_parse, Rational};

    fn r(s: &str) -> Rational {
        rat_parse(s).unwrap()
    }

    #[test]
    fn spot_values() {
        let ik = WeightTable::plain(Model::IzerginKorepin, r("1/2"));
        assert_eq!(
            ik.weight(&r("2"), &r("1"), [0, 2, 0, 2]).unwrap(),
            r("16/35")
        );
        assert_eq!(
            ik.weight(&r("2"), &r("1"), [0, 2, 2, 0]).unwrap(),
            r("17/35")
        );
        let six = WeightTable::plain(Model::SixVertex, r("1/2"));
        assert_eq!(
            six.weight(&r("2"), &r("1"), [0, 1, 1, 0]).unwrap(),
            r("1/3")
        );
        assert_eq!(six.weight(&r("7"), &r("3"), [0, 0, 0, 0]).unwrap(), r("1"));
    }

    #[test]
    fn singular_and_range_errors() {
        let six = WeightTable::plain(Model::SixVertex, r("1/2"));
        assert!(matches!(
            six.weight(&r("1"), &r("2"), [0, 1, 0, 1]),
            Err(Error::Singular(_))
        ));
        assert_eq!(
            six.weight(&r("1"), &r("3"), [0, 2, 0, 2]),
            Err(Error::StateOutOfRange { state: 2, max: 1 })
        );
    }

    #[test]
    fn degenerate_examples() {
        let q = r("1/3");
        let w = |m, l, v| degenerate_weight(m, l, &q, v).unwrap();
        assert_eq!(
            w(Model::SixVertex, Variant::RatioInfLimit, [0, 1, 0, 1]),
            r("3")
        );
        assert_eq!(
            w(Model::SixVertex, Variant::RatioInfLimit, [1, 0, 0, 1]),
            r("0")
        );
        assert_eq!(
            w(Model::SixVertex, Variant::RatioInfLimit, [0, 1, 1, 0]),
            -(r("1") - &q) / &q
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioZeroLimit, [0, 1, 1, 0]),
            r("0")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioZeroLimit, [0, 2, 1, 1]),
            r("0")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioZeroLimit, [0, 2, 2, 0]),
            r("0")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [1, 1, 1, 1]),
            -r("3")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [2, 0, 1, 1]),
            r("0")
        );
        // 1[c=a] 1[d=b] q^{-a(2-b)} for a > b.
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [0, 2, 0, 2]),
            r("81")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [1, 2, 1, 2]),
            r("9")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [0, 1, 0, 1]),
            r("9")
        );
        assert_eq!(
            w(Model::IzerginKorepin, Variant::RatioInfLimit, [0, 2, 1, 1]),
            -(r("1") - &q) * (r("1") - q.clone() * &q) / (q.clone() * &q * &q * &q)
        );
    }

    #[test]
    fn six_vertex_sublattices_of_ik() {
        let q = r("2/7");
        let ik = WeightTable::plain(Model::IzerginKorepin, q.clone());
        let six = WeightTable::plain(Model::SixVertex, q.clone() * &q);
        let (x, z) = (r("3"), r("-5/4"));
        for v in all_vertices(2) {
            let low = ik.weight(&x, &z, v).unwrap();
            let high = ik.weight(&x, &z, v.map(|e| e + 1)).unwrap();
            let want = six.weight(&x, &z, v).unwrap();
            if v[0] + v[1] <= 1 {
                assert_eq!(low, want, "{v:?}");
            }
            if v[0] + v[1] >= 1 {
                assert_eq!(high, want, "{v:?}");
            }
        }
    }

    #[test]
    fn local_relations_at_a_point() {
        for model in [Model::SixVertex, Model::IzerginKorepin] {
            let t = WeightTable::plain(model, r("1/3"));
            let ybe =
                check_local_relation(LocalRelation::YangBaxter, &t, &[r("2"), r("3"), r("5")])
                    .unwrap();
            assert!(ybe.pass, "{:?}", ybe.defects);
            assert_eq!(ybe.checks, model.states().pow(6));
            for rel in [
                LocalRelation::Unitarity,
                LocalRelation::SumToUnity,
                LocalRelation::FlipSymmetry,
            ] {
                let rep = check_local_relation(rel, &t, &[r("3"), r("2")]).unwrap();
                assert!(rep.pass, "{model} {rel:?}: {:?}", rep.defects);
            }
        }
    }

    #[test]
    fn poly_normalized_is_plain_times_denominator() {
        let q = r("3/5");
        let (x, z) = (r("4"), r("-2/3"));
        let plain = WeightTable::plain(Model::IzerginKorepin, q.clone());
        let poly = plain.with_variant(Variant::PolyNormalized);
        let d = (x.clone() - q.clone() * &q * &z) * (x.clone() - q.clone() * &q * &q * &z);
        for v in all_vertices(3) {
            assert_eq!(
                poly.weight(&x, &z, v).unwrap(),
                plain.weight(&x, &z, v).unwrap() * &d
            );
        }
    }

    #[test]
    fn perturbation_breaks_sum_to_unity() {
        let t =
            WeightTable::plain(Model::IzerginKorepin, r("1/2")).perturbed([1, 1, 1, 1], r("1/97"));
        let rep = check_local_relation(LocalRelation::SumToUnity, &t, &[r("3"), r("2")]).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.defects.len(), 1);
        assert_eq!(rep.defects[0].defect, "1/97");
    }
}
