//! Verification suites. Each suite draws reproducible random points,
//! evaluates both sides of a family of identities exactly and records the
//! differences in a [`VerificationReport`].
//!
//! The building blocks (`*_defect`, `*_report`) are public so that single
//! identities can be checked at caller-chosen points.

use std::fmt::Display;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    f_lattice_rows, frozen_dw, h_limit_lattice, h_top_row_at_infinity, izergin_determinant,
    partition_f, partition_g, partition_h, psi_row, rows_of, zn_limit, Column, Lattice,
};
use crate::models::{check_local_relation, LocalRelation, Model, Variant, Vertex, WeightTable};
use crate::report::{TracePoint, VerificationReport};
use crate::scalar::{
    checked_div, lagrange_interpolate, powi, residue_at_simple_pole, Poly, Rational, ScalarError,
};
use crate::strings::{
    enumerate_nstrings, inversion_number, string_stats, CompositionVector, NString,
};
use crate::symmetrize::{symmetrized_f, symmetrized_f_sn};
use crate::twisted::{
    gamma_exchange_defect, gamma_operator, is_identity, is_zero_matrix, permute_spaces,
    twisted_partition_f, twisted_partition_f_width, LocalKind,
};

/// Names accepted by [`run_suite`], in run order.
pub const SUITES: [&str; 10] = [
    "local",
    "oracle",
    "closed-forms",
    "symmetrization",
    "twisted",
    "recursion",
    "flip",
    "exchange",
    "stability",
    "cauchy",
];

/// A single weight-table entry shifted by `delta`, for mutation testing.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub model: Model,
    pub vertex: Vertex,
    pub delta: Rational,
}

/// Settings shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every suite's default number of random points.
    pub points: Option<usize>,
    /// Widest truncation of the Cauchy series.
    pub max_width: usize,
    /// Relative gap at which a Cauchy series counts as converged.
    pub tolerance: Rational,
    pub perturbation: Option<Perturbation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            points: None,
            max_width: 25,
            tolerance: Rational::new(1.into(), 1_000_000.into()),
            perturbation: None,
        }
    }
}

impl SuiteConfig {
    /// The plain table for `model`, carrying the perturbation if it targets
    /// that model.
    pub fn table(&self, model: Model, q: &Rational) -> WeightTable<Rational> {
        let t = WeightTable::plain(model, q.clone());
        match &self.perturbation {
            Some(p) if p.model == model => t.perturbed(p.vertex, p.delta.clone()),
            _ => t,
        }
    }

    fn count(&self, default: usize) -> usize {
        self.points.unwrap_or(default)
    }
}

/// Deterministic source of small-height rationals.
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64, salt: u64, index: u64) -> Self {
        let mixed = seed
            ^ salt.wrapping_mul(0xD6E8_FEB8_6659_FD93)
            ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Sampler(ChaCha8Rng::seed_from_u64(mixed))
    }

    /// Nonzero `p/r` with `|p| <= 100`, `1 <= r <= 100`.
    pub fn rational(&mut self) -> Rational {
        let mut p: i64 = 0;
        while p == 0 {
            p = self.0.gen_range(-100..=100);
        }
        let r: i64 = self.0.gen_range(1..=100);
        Rational::new(p.into(), r.into())
    }

    /// A value of `q` away from `0` and `+-1`.
    pub fn q(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if !q.abs().is_one() {
                return q;
            }
        }
    }

    pub fn many(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.0.gen_range(0..bound)
    }
}

fn is_singular(e: &Error) -> bool {
    matches!(
        e,
        Error::Singular(_)
            | Error::Scalar(
                ScalarError::DivisionByZero
                    | ScalarError::NonSimplePole
                    | ScalarError::SampleOnPole
                    | ScalarError::DuplicateAbscissa
            )
    )
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn list<T: Display>(v: &[T]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

const ATTEMPTS: usize = 64;

/// Runs `f` at `count` independent points, each with its own sampler, and
/// merges the per-point reports in index order. Singular draws are retried.
fn run_points<F>(report: &mut VerificationReport, cfg: &SuiteConfig, salt: u64, count: usize, f: F)
where
    F: Fn(&mut Sampler, &mut VerificationReport) -> Result<()> + Sync,
{
    let results: Vec<Result<VerificationReport>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut sampler = Sampler::new(cfg.seed, salt, i as u64);
            let mut last = String::new();
            for _ in 0..ATTEMPTS {
                let mut sub = VerificationReport::new(format!("point {i}"));
                match f(&mut sampler, &mut sub) {
                    Ok(()) => return Ok(sub),
                    Err(e) if is_singular(&e) => last = e.to_string(),
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Singular(format!(
                "no regular point in {ATTEMPTS} draws; last: {last}"
            )))
        })
        .collect();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok(sub) => {
                for (k, v) in &sub.params {
                    report.params.insert(format!("point {i}.{k}"), v.clone());
                }
                report.absorb(sub);
            }
            Err(e) => report.fail(format!("point {i}"), e),
        }
    }
}

fn new_report(name: &str, cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = VerificationReport::new(name);
    rep.param("seed", cfg.seed);
    if let Some(p) = &cfg.perturbation {
        rep.param(
            "perturbation",
            format!("{} {:?} + {}", p.model, p.vertex, p.delta),
        );
    }
    rep
}

// ---------------------------------------------------------------- local

/// Yang-Baxter, unitarity, sum-to-unity and flip symmetry for both models.
pub fn suite_local(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("local", cfg);
    for (salt, model) in [(11, Model::SixVertex), (12, Model::IzerginKorepin)] {
        run_points(&mut rep, cfg, salt, cfg.count(20), |s, sub| {
            let q = s.q();
            let (x, y, z) = (s.rational(), s.rational(), s.rational());
            sub.param("model", model)
                .param("q", &q)
                .param("xyz", list(&[&x, &y, &z]));
            let table = cfg.table(model, &q);
            for (rel, params) in [
                (
                    LocalRelation::YangBaxter,
                    vec![x.clone(), y.clone(), z.clone()],
                ),
                (LocalRelation::Unitarity, vec![x.clone(), y.clone()]),
                (LocalRelation::SumToUnity, vec![x.clone(), z.clone()]),
                (LocalRelation::FlipSymmetry, vec![x.clone(), y.clone()]),
            ] {
                let got = check_local_relation(rel, &table, &params)?;
                sub.absorb(VerificationReport {
                    suite: format!("{model} {rel:?}"),
                    ..got
                });
            }
            Ok(())
        });
    }
    rep
}

// ---------------------------------------------------------------- oracle

/// Column transfer against enumeration of every internal edge labelling.
pub fn suite_oracle(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("oracle", cfg);
    for (salt, model) in [(21, Model::SixVertex), (22, Model::IzerginKorepin)] {
        let (rows, width) = (2, 3);
        let n = model.n();
        run_points(&mut rep, cfg, salt, cfg.count(5), |s, sub| {
            let q = s.q();
            let xs = s.many(rows);
            let zs = s.many(width);
            sub.param("model", model)
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zs", list(&zs));
            let table = cfg.table(model, &q);
            for st in enumerate_nstrings(n, n * rows, width)? {
                for left in CompositionVector::all_with_weight(n, rows, n * rows) {
                    let lat =
                        f_lattice_rows(rows_of(&table, &xs), &zs, &st, left.entries(), width)?;
                    let d = lat.evaluate()? - lat.brute_force()?;
                    sub.record(format!("F{st} left {left}"), &d);
                }
            }
            Ok(())
        });
    }
    rep
}

// ---------------------------------------------------------- closed forms

/// Determinant formula and the infinite-parameter product.
pub fn suite_closed_forms(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("closed-forms", cfg);
    run_points(&mut rep, cfg, 31, cfg.count(3), |s, sub| {
        let q = s.q();
        let xs = s.many(4);
        let zs = s.many(4);
        sub.param("q", &q)
            .param("xs", list(&xs))
            .param("zs", list(&zs));
        let table = cfg.table(Model::SixVertex, &q);
        for big_n in 1..=4 {
            let dw = NString::new(1, vec![1; big_n])?;
            let lat = partition_f(&table, &xs[..big_n], &zs, &dw, None)?;
            sub.record(
                format!("izergin N={big_n}"),
                &(lat - izergin_determinant(&q, &xs[..big_n], &zs)?),
            );
            let limit = infinite_dw(cfg, Model::SixVertex, &q, big_n)?;
            sub.record(format!("Z_N N={big_n}"), &(limit - zn_limit(&q, big_n)?));
        }
        Ok(())
    });
    let half = Rational::new(1.into(), 2.into());
    match zn_limit(&half, 3) {
        Ok(v) => rep.record("Z_3(1/2) = -21", &(v + r(21))),
        Err(e) => rep.fail("Z_3(1/2)", e),
    }
    match frozen_dw(Model::IzerginKorepin, &half, 0) {
        Ok(v) => rep.record("IK frozen K=0", &(v - r(1))),
        Err(e) => rep.fail("IK frozen K=0", e),
    }
    rep
}

/// `F_{(n^K)}` with every column at infinite ratio, through the suite table
/// (so a perturbation is visible here too).
fn infinite_dw(cfg: &SuiteConfig, model: Model, q: &Rational, k: usize) -> Result<Rational> {
    let inf = cfg.table(model, q).with_variant(Variant::RatioInfLimit);
    let n = model.n();
    Lattice {
        states: n + 1,
        rows: rows_of(&inf, &vec![r(1); k]),
        columns: (0..k).map(|_| Column::new(r(1), 0, n)).collect(),
        left: vec![n; k],
        right: vec![0; k],
    }
    .evaluate()
}

// ------------------------------------------------------ symmetrization

/// Strings of weight 6 used for three-row checks.
pub const IK_N3_PANEL: [&str; 11] = [
    "2,2,2",
    "1,2,2,1",
    "2,1,1,2",
    "1,1,1,1,2",
    "0,2,2,2",
    "2,0,2,0,2",
    "1,2,1,2",
    "2,2,1,1",
    "1,1,2,2",
    "1,0,1,2,2",
    "2,1,2,1",
];

fn panel(model: Model, big_n: usize) -> Result<Vec<NString>> {
    match (model, big_n) {
        (Model::IzerginKorepin, 3) => IK_N3_PANEL.iter().map(|t| NString::parse(2, t)).collect(),
        _ => enumerate_nstrings(model.n(), model.n() * big_n, 5),
    }
}

/// `F_S - symmetrized F_S` at one point.
pub fn symmetrization_defect(
    table: &WeightTable<Rational>,
    s: &NString,
    xs: &[Rational],
    zs: &[Rational],
) -> Result<Rational> {
    Ok(partition_f(table, xs, zs, s, None)? - symmetrized_f(table.model(), s, table.q(), xs, zs)?)
}

/// The three-term expansion of `F_{(2,2)}` with its scattering factors
/// written out in full.
pub fn two_two_expansion(q: &Rational, xs: &[Rational], zs: &[Rational]) -> Result<Rational> {
    let (x1, x2, z1, z2) = (&xs[0], &xs[1], &zs[0], &zs[1]);
    let q2 = q * q;
    let q3 = &q2 * q;
    let one = r(1);
    let row = |e: &[usize], x: &Rational| -> Result<Rational> {
        crate::symmetrize::one_row_f_closed(
            Model::IzerginKorepin,
            &CompositionVector::new(2, e.to_vec())?,
            x,
            zs,
            q,
        )
    };
    let d = |a: &Rational, b: &Rational| -> Result<Rational> {
        Ok(checked_div(
            (b - &q2 * a) * (b - &q3 * a),
            &((b - a) * (b - q * a)),
        )?)
    };
    let p = x1 * x2;
    let mixed = checked_div(
        (&p + &q2 * &p - &q3 * x2 * z1 - &q3 * x1 * z1)
            * (&p + &q2 * &p - &q2 * x2 * z2 - &q2 * x1 * z2),
        &(q * (&one - q) * (&one - q) * (x2 - q * x1) * (x1 - q * x2) * z1 * z2),
    )?;
    Ok(d(x1, x2)? * row(&[2, 0], x1)? * row(&[0, 2], x2)?
        + d(x2, x1)? * row(&[0, 2], x1)? * row(&[2, 0], x2)?
        + mixed * row(&[1, 1], x1)? * row(&[1, 1], x2)?)
}

pub fn suite_symmetrization(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("symmetrization", cfg);
    let cases = [
        (Model::SixVertex, 1),
        (Model::SixVertex, 2),
        (Model::SixVertex, 3),
        (Model::IzerginKorepin, 2),
        (Model::IzerginKorepin, 3),
    ];
    for (salt, (model, big_n)) in cases.into_iter().enumerate() {
        let strings = match panel(model, big_n) {
            Ok(s) => s,
            Err(e) => {
                rep.fail(format!("{model} N={big_n} panel"), e);
                continue;
            }
        };
        run_points(&mut rep, cfg, 40 + salt as u64, cfg.count(3), |s, sub| {
            let q = s.q();
            let xs = s.many(big_n);
            let zs = s.many(5);
            sub.param("model", model)
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zs", list(&zs));
            let table = cfg.table(model, &q);
            let mut swapped = xs.clone();
            swapped.swap(0, big_n - 1);
            for st in &strings {
                let sym = symmetrized_f(model, st, &q, &xs, &zs)?;
                sub.record(
                    format!("{model} N={big_n} {st}"),
                    &(partition_f(&table, &xs, &zs, st, None)? - &sym),
                );
                sub.record(
                    format!("{model} N={big_n} {st} x-swap"),
                    &(symmetrized_f(model, st, &q, &swapped, &zs)? - &sym),
                );
                if model == Model::SixVertex {
                    sub.record(
                        format!("6v N={big_n} {st} S_N form"),
                        &(symmetrized_f_sn(st, &q, &xs, &zs)? - &sym),
                    );
                }
            }
            if model == Model::IzerginKorepin && big_n == 2 {
                let st = NString::parse(2, "2,2")?;
                sub.record(
                    "three-term expansion of (2,2)",
                    &(partition_f(&table, &xs, &zs, &st, None)? - two_two_expansion(&q, &xs, &zs)?),
                );
            }
            Ok(())
        });
    }
    rep
}

// --------------------------------------------------------------- twisted

pub fn suite_twisted(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("twisted", cfg);
    for big_n in 1..=3usize {
        run_points(&mut rep, cfg, 50 + big_n as u64, cfg.count(5), |s, sub| {
            let q = s.q();
            let xs = s.many(big_n);
            let (z, y) = (s.rational(), s.rational());
            sub.param("N", big_n)
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zy", list(&[&z, &y]));
            let table = cfg.table(Model::IzerginKorepin, &q);
            let defects: Vec<Result<(usize, usize, bool)>> = (0..9)
                .into_par_iter()
                .map(|kl| {
                    let (k, l) = (kl / 3, kl % 3);
                    let d = gamma_exchange_defect(k, l, &z, &y, &table, &xs)?;
                    Ok((k, l, is_zero_matrix(&d)))
                })
                .collect();
            for d in defects {
                let (k, l, zero) = d?;
                sub.checks += 1;
                if !zero {
                    sub.fail(format!("exchange N={big_n} ({k},{l})"), "nonzero matrix");
                }
            }
            Ok(())
        });
    }
    for big_n in 1..=3usize {
        let strings = match panel(Model::IzerginKorepin, big_n) {
            Ok(s) => s,
            Err(e) => {
                rep.fail(format!("panel N={big_n}"), e);
                continue;
            }
        };
        run_points(&mut rep, cfg, 55 + big_n as u64, cfg.count(3), |s, sub| {
            let q = s.q();
            let xs = s.many(big_n);
            let zs = s.many(6);
            sub.param("N", big_n)
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zs", list(&zs));
            let table = cfg.table(Model::IzerginKorepin, &q);
            for st in &strings {
                let tw = twisted_partition_f(st, &q, &xs, &zs)?;
                sub.record(
                    format!("N={big_n} {st}"),
                    &(partition_f(&table, &xs, &zs, st, None)? - &tw),
                );
                sub.record(
                    format!("N={big_n} {st} widened"),
                    &(twisted_partition_f_width(st, &q, &xs, &zs, st.len() + 1)? - &tw),
                );
            }
            structural_checks(&q, &xs, &zs[0], sub)
        });
    }
    rep
}

/// Permutation covariance, the diagonal factorization, behaviour at `z = 0`,
/// projection on a vacant last site and the residue of `Gamma_2 |0>`.
fn structural_checks(
    q: &Rational,
    xs: &[Rational],
    z: &Rational,
    sub: &mut VerificationReport,
) -> Result<()> {
    let big_n = xs.len();
    for k in 0..3 {
        let g = gamma_operator(k, z, q, xs)?;
        for a in 0..big_n {
            for b in a + 1..big_n {
                let mut sigma: Vec<usize> = (0..big_n).collect();
                sigma.swap(a, b);
                let px: Vec<Rational> = sigma.iter().map(|&i| xs[i].clone()).collect();
                let pg = gamma_operator(k, z, q, &px)?;
                let back = permute_spaces(&pg.matrix, &sigma);
                sub.checks += 1;
                if back != g.matrix {
                    sub.fail(
                        format!("covariance k={k} swap ({a},{b})"),
                        "matrices differ",
                    );
                }
            }
        }
        if big_n > 1 {
            let small = gamma_operator(k, z, q, &xs[..big_n - 1])?;
            let low = 3usize.pow(big_n as u32 - 1);
            sub.checks += 1;
            let ok = (0..low).all(|a| {
                (0..g.matrix.len()).all(|b| {
                    if b < low {
                        g.matrix[a][b] == small.matrix[a][b]
                    } else {
                        g.matrix[a][b].is_zero()
                    }
                })
            });
            if !ok {
                sub.fail(
                    format!("projection k={k}"),
                    "vacant last site not preserved",
                );
            }
        }
    }
    let zero = r(0);
    sub.checks += 2;
    if !is_identity(&gamma_operator(0, &zero, q, xs)?.matrix) {
        sub.fail("Gamma_0(0)", "not the identity");
    }
    if !is_zero_matrix(&gamma_operator(2, &zero, q, xs)?.matrix) {
        sub.fail("Gamma_2(0)", "nonzero");
    }
    for x in xs {
        let prod = [LocalKind::DBull, LocalKind::DCirc, LocalKind::D]
            .iter()
            .map(|&kind| crate::twisted::local_matrix(kind, q, x, z))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..3 {
            let v = &prod[0][i][i] * &prod[1][i][i] * &prod[2][i][i];
            sub.record(format!("d-factorization at x={x}, entry {i}"), &(v - r(1)));
        }
    }
    gamma_two_residue(q, xs, sub)
}

fn gamma_two_residue(q: &Rational, xs: &[Rational], sub: &mut VerificationReport) -> Result<()> {
    let big_n = xs.len();
    let xn = &xs[big_n - 1];
    let q2 = q * q;
    let q3 = &q2 * q;
    let pole = checked_div(xn.clone(), &q3)?;
    let mut denom = Poly::constant(r(1));
    for x in xs {
        denom = denom
            .mul(&Poly::linear(x.clone(), -&q2))
            .mul(&Poly::linear(x.clone(), -&q3));
    }
    let dim = 3usize.pow(big_n as u32);
    let mut samples: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); dim];
    let mut t = 1i64;
    while samples[0].len() < 2 * big_n + 1 {
        let z = r(t);
        t += 1;
        if denom.eval(&z).is_zero() {
            continue;
        }
        let g = gamma_operator(2, &z, q, xs)?;
        let dz = denom.eval(&z);
        for (a, smp) in samples.iter_mut().enumerate() {
            smp.push((z.clone(), &g.matrix[a][0] * &dz));
        }
    }
    let target = 2 * 3usize.pow(big_n as u32 - 1);
    let one = r(1);
    let want = -(&one - &q2) * (&one - &q3) * xn / (&q3 * &q3 * (&one - q));
    for (a, smp) in samples.iter().enumerate() {
        let res = residue_at_simple_pole(smp, &denom, &pole, 2 * big_n)?;
        let expect = if a == target { want.clone() } else { r(0) };
        sub.record(format!("residue of Gamma_2|0> entry {a}"), &(res - expect));
    }
    Ok(())
}

// ------------------------------------------------------------- recursion

/// Strings checked by the recursion suite: `(2^{N-M}, 1^{2M})` or `(1^N)`.
pub fn ordered_string(model: Model, big_n: usize, m: usize) -> Result<NString> {
    match model {
        Model::SixVertex => NString::new(1, vec![1; big_n]),
        Model::IzerginKorepin => {
            if m >= big_n {
                return Err(Error::Precondition(format!(
                    "need N > M, got N={big_n}, M={m}"
                )));
            }
            let mut e = vec![2; big_n - m];
            e.extend(vec![1; 2 * m]);
            NString::new(2, e)
        }
    }
}

fn with_z1(zs: &[Rational], z1: &Rational) -> Vec<Rational> {
    let mut v = zs.to_vec();
    v[0] = z1.clone();
    v
}

/// Degree, vanishing, specialization, residue and row-expansion checks for
/// an ordered string `t` at one point. `zs` must cover the support of `t`.
pub fn recursion_report(
    table: &WeightTable<Rational>,
    t: &NString,
    xs: &[Rational],
    zs: &[Rational],
    extra_z1: &[Rational],
) -> Result<VerificationReport> {
    let model = table.model();
    let q = table.q();
    let big_n = xs.len();
    let n = model.n();
    let mut rep = VerificationReport::new(format!("recursion {model} {t}"));
    let f = |z1: &Rational| partition_f(table, xs, &with_z1(zs, z1), t, None);
    let xn = &xs[big_n - 1];

    // normalized function is a polynomial in z1
    let mut denom = Poly::constant(r(1));
    for x in xs {
        let powers: &[i64] = match model {
            Model::SixVertex => &[1],
            Model::IzerginKorepin => &[2, 3],
        };
        for &c in powers {
            denom = denom.mul(&Poly::linear(x.clone(), -powi(q, c)?));
        }
    }
    let degree = n * big_n;
    let mut samples = Vec::new();
    for z1 in extra_z1.iter().take(degree + 2) {
        samples.push((z1.clone(), f(z1)? * denom.eval(z1)));
    }
    if samples.len() < degree + 2 {
        return Err(Error::Precondition(format!(
            "degree check needs {} sample points",
            degree + 2
        )));
    }
    let poly = lagrange_interpolate(&samples[..=degree])?;
    let (zc, vc) = &samples[degree + 1];
    rep.record("degree", &(poly.eval(zc) - vc));

    rep.record("vanishes at z1 = 0", &f(&r(0))?);

    let reduced_t = match model {
        Model::SixVertex => NString::new(1, vec![1; big_n - 1])?,
        Model::IzerginKorepin => {
            let mut e = t.entries().to_vec();
            e.remove(0);
            NString::new(2, e)?
        }
    };
    let reduced = partition_f(table, &xs[..big_n - 1], &zs[1..], &reduced_t, None)?;
    rep.record("specialization z1 = x_N", &(f(xn)? - reduced));

    if big_n == 1 {
        let one = r(1);
        let z1 = &zs[0];
        let x1 = &xs[0];
        let explicit = match model {
            Model::SixVertex => checked_div((&one - q) * z1, &(x1 - q * z1))?,
            Model::IzerginKorepin => {
                let q2 = q * q;
                let q3 = &q2 * q;
                checked_div(
                    (&one - &q2) * (x1 + &q2 * x1 - &q2 * z1 - &q3 * z1) * z1,
                    &((x1 - &q2 * z1) * (x1 - &q3 * z1)),
                )?
            }
        };
        if t.len() == 1 {
            rep.record("single row explicit", &(f(z1)? - explicit));
        }
    }

    if model == Model::IzerginKorepin {
        residue_check(table, t, xs, zs, &denom, &samples[..=degree], &mut rep)?;
        row_expansion_check(table, t, xs, zs, &mut rep)?;
    }
    Ok(rep)
}

fn residue_check(
    table: &WeightTable<Rational>,
    t: &NString,
    xs: &[Rational],
    zs: &[Rational],
    denom: &Poly<Rational>,
    samples: &[(Rational, Rational)],
    rep: &mut VerificationReport,
) -> Result<()> {
    let q = table.q();
    let big_n = xs.len();
    let width = t.len();
    let xn = &xs[big_n - 1];
    let one = r(1);
    let q2 = q * q;
    let q3 = &q2 * q;
    let pole = checked_div(xn.clone(), &q3)?;
    let lhs = residue_at_simple_pole(samples, denom, &pole, samples.len() - 1)?;

    let mut pre = -(&one - &q2) * (&one - &q3) * xn / (&q3 * &q3 * (&one - q));
    for x in &xs[..big_n - 1] {
        pre *= checked_div((xn - &q2 * x) * (xn - &q3 * x), &((xn - x) * (xn - q * x)))?;
    }
    for z in &zs[1..width] {
        pre *= checked_div((xn - z) * (xn - q * z), &((xn - &q2 * z) * (xn - &q3 * z)))?;
    }
    let tops = &t.entries()[1..];
    let mut sum = r(0);
    for u in CompositionVector::all_with_weight(2, width - 1, 2 * big_n - 2) {
        let phi = psi_row(table, &pole, &zs[1..width], u.entries(), tops, 2)?;
        if phi.is_zero() {
            continue;
        }
        let us = NString::new(2, u.entries().to_vec())?;
        sum += phi * partition_f(table, &xs[..big_n - 1], &zs[1..], &us, None)?;
    }
    rep.record("residue at z1 = x_N / q^3", &(lhs - pre * sum));
    Ok(())
}

/// `F_T(x; z) = sum_U Psi_U(z1) F_{omega U}(x; omega z)`.
fn row_expansion_check(
    table: &WeightTable<Rational>,
    t: &NString,
    xs: &[Rational],
    zs: &[Rational],
    rep: &mut VerificationReport,
) -> Result<()> {
    let big_n = xs.len();
    let width = t.len();
    let lhs = partition_f(table, xs, zs, t, None)?;
    let mut rotated: Vec<Rational> = zs[1..width].to_vec();
    rotated.push(zs[0].clone());
    let tops = &t.entries()[1..];
    let mut sum = r(0);
    for u in CompositionVector::all_with_weight(2, width, 2 * big_n) {
        let e = u.entries();
        let psi = psi_row(table, &zs[0], &zs[1..width], &e[1..], tops, e[0])?;
        if psi.is_zero() {
            continue;
        }
        let mut w = e[1..].to_vec();
        w.push(e[0]);
        let ws = NString::new(2, w)?;
        sum += psi * partition_f(table, xs, &rotated, &ws, None)?;
    }
    rep.record("row expansion in z1", &(lhs - sum));
    Ok(())
}

pub fn suite_recursion(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("recursion", cfg);
    let mut cases: Vec<(Model, usize, usize)> = (1..=3).map(|n| (Model::SixVertex, n, 0)).collect();
    cases.extend(
        [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1)]
            .into_iter()
            .map(|(n, m)| (Model::IzerginKorepin, n, m)),
    );
    for (salt, (model, big_n, m)) in cases.into_iter().enumerate() {
        run_points(&mut rep, cfg, 60 + salt as u64, cfg.count(3), |s, sub| {
            let q = s.q();
            let xs = s.many(big_n);
            let t = ordered_string(model, big_n, m)?;
            let zs = s.many(t.len());
            let extra = s.many(2 * big_n + 2);
            sub.param("case", format!("{model} N={big_n} M={m}"))
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zs", list(&zs));
            let table = cfg.table(model, &q);
            let got = recursion_report(&table, &t, &xs, &zs, &extra)?;
            sub.absorb(got);
            Ok(())
        });
    }
    // the single-row residue at q = 1/2, x = 2
    let half = Rational::new(1.into(), 2.into());
    let table = cfg.table(Model::IzerginKorepin, &half);
    let res = (|| -> Result<Rational> {
        let t = NString::new(2, vec![2])?;
        let x = r(2);
        let mut denom = Poly::linear(x.clone(), -&half * &half);
        denom = denom.mul(&Poly::linear(x.clone(), -&half * &half * &half));
        let samples = (1..=3)
            .map(|k| {
                let z = r(k);
                Ok((
                    z.clone(),
                    partition_f(
                        &table,
                        std::slice::from_ref(&x),
                        std::slice::from_ref(&z),
                        &t,
                        None,
                    )? * denom.eval(&z),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(residue_at_simple_pole(&samples, &denom, &r(16), 2)?)
    })();
    match res {
        Ok(v) => rep.record("single-row residue = -168", &(v + r(168))),
        Err(e) => rep.fail("single-row residue", e),
    }
    rep
}

// ------------------------------------------------------------------ flip

/// `q^{-e} c_S G_S(y; q^{-k} z^{-1}) - Gdot_S(y^{-1}; z)` with
/// `(e, k) = (N(N+1)/2, 1)` for six-vertex and `(N(2N+1), 3)` for IK.
pub fn flip_defect(
    table: &WeightTable<Rational>,
    s: &NString,
    ys: &[Rational],
    zs: &[Rational],
) -> Result<Rational> {
    let model = table.model();
    let q = table.q();
    let n = model.n();
    let big_n = s.weight() / n;
    let (e, k) = match model {
        Model::SixVertex => (big_n * (big_n + 1) / 2, 1),
        Model::IzerginKorepin => (big_n * (2 * big_n + 1), 3),
    };
    let width = big_n.max(s.len());
    let qk = powi(q, k)?;
    let inv_z = zs[..width]
        .iter()
        .map(|z| Ok(checked_div(r(1), &(&qk * z))?))
        .collect::<Result<Vec<_>>>()?;
    let inv_y = ys
        .iter()
        .map(|y| Ok(checked_div(r(1), y)?))
        .collect::<Result<Vec<_>>>()?;
    let stats = string_stats(s, q)?;
    let lhs = powi(q, -(e as i64))? * stats.c_s * partition_g(table, ys, &inv_z, s, big_n, false)?;
    Ok(lhs - partition_g(table, &inv_y, zs, s, big_n, true)?)
}

pub fn suite_flip(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("flip", cfg);
    let mut salt = 70;
    for model in [Model::SixVertex, Model::IzerginKorepin] {
        for big_n in 1..=2usize {
            for m in 1..=3usize {
                salt += 1;
                let n = model.n();
                let strings = match enumerate_nstrings(n, n * big_n, 4) {
                    Ok(s) => s,
                    Err(e) => {
                        rep.fail("strings", e);
                        continue;
                    }
                };
                run_points(&mut rep, cfg, salt, cfg.count(3), |s, sub| {
                    let q = s.q();
                    let ys = s.many(m);
                    let zs = s.many(4);
                    sub.param("case", format!("{model} N={big_n} M={m}"))
                        .param("q", &q)
                        .param("ys", list(&ys))
                        .param("zs", list(&zs));
                    let table = cfg.table(model, &q);
                    for st in &strings {
                        sub.record(
                            format!("{model} N={big_n} M={m} {st}"),
                            &flip_defect(&table, st, &ys, &zs)?,
                        );
                    }
                    Ok(())
                });
            }
        }
    }
    rep
}

// -------------------------------------------------------------- exchange

fn swapped(v: &[Rational], k: usize) -> Vec<Rational> {
    let mut w = v.to_vec();
    w.swap(k, k + 1);
    w
}

/// Defect of the column exchange relation at columns `k, k+1` (1-based),
/// for `S_k < S_{k+1}`.
pub fn exchange_defect(
    table: &WeightTable<Rational>,
    s: &NString,
    k: usize,
    xs: &[Rational],
    zs: &[Rational],
) -> Result<Rational> {
    let model = table.model();
    let n = model.n();
    if k == 0 {
        return Err(Error::Precondition("columns are numbered from 1".into()));
    }
    let (i, j) = (k - 1, k);
    let width = s.len().max(k + 1);
    let e = s.padded(width)?;
    if e[i] >= e[j] {
        return Err(Error::Precondition(format!(
            "{s} is not increasing at column {k}"
        )));
    }
    let f = |entries: &[usize], z: &[Rational]| -> Result<Rational> {
        partition_f(table, xs, z, &NString::new(n, entries.to_vec())?, None)
    };
    let mut sig = e.clone();
    sig.swap(i, j);
    let (zk, zk1) = (&zs[i], &zs[j]);
    match model {
        Model::SixVertex => {
            let q = table.q();
            let d = zk - zk1;
            let a = checked_div(zk - q * zk1, &(q * &d))?;
            let b = checked_div((r(1) - q) * zk1, &(q * &d))?;
            Ok(f(&e, zs)? - a * f(&sig, &swapped(zs, i))? + b * f(&sig, zs)?)
        }
        Model::IzerginKorepin => {
            let w = |v: Vertex| table.weight(zk, zk1, v);
            let mut acc = w([e[j], e[i], e[j], e[i]])? * f(&e, zs)? - f(&sig, &swapped(zs, i))?;
            let total = e[i] + e[j];
            for a in 0..=total.min(n) {
                let b = total - a;
                if b > n || (a, b) == (e[i], e[j]) {
                    continue;
                }
                let mut t = e.clone();
                t[i] = a;
                t[j] = b;
                acc += w([b, a, e[j], e[i]])? * f(&t, zs)?;
            }
            Ok(acc)
        }
    }
}

/// Defect of the relation expressing `F_{(1^{2N})}` through strings that
/// start with a 2.
pub fn ones_relation_defect(
    table: &WeightTable<Rational>,
    xs: &[Rational],
    zs: &[Rational],
) -> Result<Rational> {
    let big_n = xs.len();
    let (z1, z2) = (&zs[0], &zs[1]);
    let w = |v: Vertex| table.weight(z1, z2, v);
    let f = |entries: Vec<usize>, z: &[Rational]| -> Result<Rational> {
        partition_f(table, xs, z, &NString::new(2, entries)?, None)
    };
    let ones = vec![1; 2 * big_n];
    let mut two_zero = vec![2, 0];
    two_zero.extend(vec![1; 2 * big_n - 2]);
    let mut two = vec![2];
    two.extend(vec![1; 2 * big_n - 2]);
    let mut frozen = r(1);
    for x in xs {
        frozen *= table.weight(x, z1, [0, 2, 0, 2])?;
    }
    Ok(
        w([1, 1, 2, 0])? * f(ones, zs)? - f(two_zero.clone(), &swapped(zs, 0))?
            + w([0, 2, 2, 0])? * f(two_zero, zs)?
            + w([2, 0, 2, 0])? * frozen * f(two, &zs[1..])?,
    )
}

/// Two rows entering with `n` on the left, bottom `s`, top `t`, right
/// boundary `(bottom, top)`, every column at infinite ratio.
pub fn infinite_two_row(
    table: &WeightTable<Rational>,
    s: &[usize],
    t: &[usize],
    right: (usize, usize),
) -> Result<Rational> {
    let n = table.n();
    let inf = table.with_variant(Variant::RatioInfLimit);
    Lattice {
        states: n + 1,
        rows: rows_of(&inf, &[r(1), r(1)]),
        columns: s
            .iter()
            .zip(t)
            .map(|(&b, &u)| Column::new(r(1), b, u))
            .collect(),
        left: vec![n, n],
        right: vec![right.0, right.1],
    }
    .evaluate()
}

/// `q^{inv(a,b)} Z(a,b) - Z(b,a)` for `a > b`.
pub fn infinite_exchange_defect(
    table: &WeightTable<Rational>,
    a: usize,
    b: usize,
    s: &[usize],
    t: &[usize],
) -> Result<Rational> {
    if a <= b {
        return Err(Error::Precondition(format!("need a > b, got ({a},{b})")));
    }
    let n = table.n();
    let inv = powi(table.q(), (a * (n - b)) as i64)?;
    Ok(inv * infinite_two_row(table, s, t, (a, b))? - infinite_two_row(table, s, t, (b, a))?)
}

/// `-q (1 - 1/q)^{-2} Z(1,1) - Z(0,2)`.
pub fn infinite_pair_defect(
    table: &WeightTable<Rational>,
    s: &[usize],
    t: &[usize],
) -> Result<Rational> {
    let q = table.q();
    let base = r(1) - checked_div(r(1), q)?;
    let c = -q * powi(&base, -2)?;
    Ok(c * infinite_two_row(table, s, t, (1, 1))? - infinite_two_row(table, s, t, (0, 2))?)
}

/// `chi(I)`: the `N x (N - K)` lattice at infinite ratio with right
/// boundary `I`, normalized by the `I`-dependent prefactor.
pub fn chi(table: &WeightTable<Rational>, right: &CompositionVector) -> Result<Rational> {
    let model = table.model();
    let n = model.n();
    let q = table.q();
    let big_n = right.len();
    let k = right.weight() / n;
    let inf = table.with_variant(Variant::RatioInfLimit);
    let z = Lattice {
        states: n + 1,
        rows: rows_of(&inf, &vec![r(1); big_n]),
        columns: (0..big_n - k).map(|_| Column::new(r(1), 0, n)).collect(),
        left: vec![n; big_n],
        right: right.entries().to_vec(),
    }
    .evaluate()?;
    let inv = powi(q, inversion_number(right) as i64)?;
    Ok(match model {
        Model::SixVertex => inv * z,
        Model::IzerginKorepin => {
            let c1 = right.count(1);
            let sign = if (c1 / 2) % 2 == 1 { r(-1) } else { r(1) };
            let base = r(1) - checked_div(r(1), q)?;
            sign * powi(&base, -(c1 as i64))? * inv * z
        }
    })
}

fn random_vector(s: &mut Sampler, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| s.index(n + 1)).collect()
}

fn random_with_weight(s: &mut Sampler, n: usize, len: usize, weight: usize) -> Option<Vec<usize>> {
    let all = CompositionVector::all_with_weight(n, len, weight);
    if all.is_empty() {
        return None;
    }
    Some(all[s.index(all.len())].entries().to_vec())
}

/// Strings with an ascent used by the exchange suite.
fn exchange_cases(n: usize, big_n: usize) -> Result<Vec<(NString, usize)>> {
    let mut out = Vec::new();
    for st in enumerate_nstrings(n, n * big_n, big_n + 1)? {
        let e = st.padded(big_n + 1)?;
        if let Some(k) = (0..e.len() - 1).find(|&i| e[i] < e[i + 1]) {
            out.push((st, k + 1));
        }
    }
    // spread the selection over the lexicographic range
    let step = (out.len() / 4).max(1);
    Ok(out.into_iter().step_by(step).take(4).collect())
}

pub fn suite_exchange(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("exchange", cfg);
    for (salt, model) in [(81, Model::SixVertex), (82, Model::IzerginKorepin)] {
        for big_n in 1..=4usize {
            let cases = match exchange_cases(model.n(), big_n) {
                Ok(c) => c,
                Err(e) => {
                    rep.fail("cases", e);
                    continue;
                }
            };
            run_points(
                &mut rep,
                cfg,
                salt * 10 + big_n as u64,
                cfg.count(3),
                |s, sub| {
                    let q = s.q();
                    let xs = s.many(big_n);
                    let zs = s.many(2 * big_n + 1);
                    sub.param("case", format!("{model} N={big_n}"))
                        .param("q", &q)
                        .param("xs", list(&xs))
                        .param("zs", list(&zs));
                    let table = cfg.table(model, &q);
                    for (st, k) in &cases {
                        sub.record(
                            format!("{model} N={big_n} {st} k={k}"),
                            &exchange_defect(&table, st, *k, &xs, &zs)?,
                        );
                    }
                    if model == Model::IzerginKorepin {
                        sub.record(
                            format!("ones relation N={big_n}"),
                            &ones_relation_defect(&table, &xs, &zs)?,
                        );
                    }
                    Ok(())
                },
            );
        }
    }
    for (salt, model) in [(91, Model::SixVertex), (92, Model::IzerginKorepin)] {
        run_points(&mut rep, cfg, salt, cfg.count(3), |s, sub| {
            let q = s.q();
            let n = model.n();
            sub.param("model", model).param("q", &q);
            let table = cfg.table(model, &q);
            let pairs: Vec<(usize, usize)> = match model {
                Model::SixVertex => vec![(1, 0)],
                Model::IzerginKorepin => vec![(1, 0), (2, 0), (2, 1)],
            };
            for cols in 1..=4usize {
                for &(a, b) in &pairs {
                    let bottom = random_vector(s, n, cols);
                    let inflow = 2 * n + bottom.iter().sum::<usize>();
                    let Some(top) = inflow
                        .checked_sub(a + b)
                        .and_then(|w| random_with_weight(s, n, cols, w))
                    else {
                        continue;
                    };
                    sub.record(
                        format!("lemma ({a},{b}) S={} T={}", list(&bottom), list(&top)),
                        &infinite_exchange_defect(&table, a, b, &bottom, &top)?,
                    );
                }
                if model == Model::IzerginKorepin {
                    let bottom = random_vector(s, n, cols);
                    let inflow = 2 * n + bottom.iter().sum::<usize>();
                    if let Some(top) = inflow
                        .checked_sub(2)
                        .and_then(|w| random_with_weight(s, n, cols, w))
                    {
                        sub.record(
                            format!("lemma (1,1) S={} T={}", list(&bottom), list(&top)),
                            &infinite_pair_defect(&table, &bottom, &top)?,
                        );
                    }
                }
            }
            for big_n in 1..=4usize {
                for k in 0..=big_n {
                    let all = CompositionVector::all_with_weight(n, big_n, n * k);
                    let reference = chi(&table, &all[0])?;
                    for v in &all[1..] {
                        sub.record(
                            format!("chi {v} vs {}", all[0]),
                            &(chi(&table, v)? - &reference),
                        );
                    }
                    sub.record(
                        format!("chi N={big_n} K={k} closed form"),
                        &(reference - frozen_dw(model, &q, big_n - k)?),
                    );
                }
            }
            Ok(())
        });
    }
    rep
}

// ------------------------------------------------------------- stability

/// Defects of the limit construction of `H_S` and of its stability when the
/// top row parameter goes to infinity.
pub fn h_defects(
    table: &WeightTable<Rational>,
    s: &NString,
    xs: &[Rational],
    zs: &[Rational],
) -> Result<[Rational; 2]> {
    let n = table.n();
    let big_n = xs.len();
    let h = partition_h(table, xs, zs, s)?;
    let limit = h_limit_lattice(table, xs, zs, s)?;
    let top = h_top_row_at_infinity(table, xs, zs, s)?;
    let reduced = if s.weight() + n <= n * big_n {
        partition_h(table, &xs[..big_n - 1], zs, s)?
    } else {
        r(0)
    };
    Ok([h - limit, top - reduced])
}

pub fn suite_stability(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("stability", cfg);
    for (salt, model) in [(101, Model::SixVertex), (102, Model::IzerginKorepin)] {
        let n = model.n();
        run_points(&mut rep, cfg, salt, cfg.count(3), |s, sub| {
            let q = s.q();
            let xs = s.many(3);
            let zs = s.many(4);
            sub.param("model", model)
                .param("q", &q)
                .param("xs", list(&xs))
                .param("zs", list(&zs));
            let table = cfg.table(model, &q);
            for big_n in 1..=3usize {
                for k in 0..=big_n {
                    for st in enumerate_nstrings(n, n * k, 3)?.into_iter().take(6) {
                        let [a, b] = h_defects(&table, &st, &xs[..big_n], &zs)?;
                        sub.record(format!("{model} N={big_n} {st} limit"), &a);
                        sub.record(format!("{model} N={big_n} {st} stability"), &b);
                    }
                }
            }
            Ok(())
        });
    }
    rep
}

// ---------------------------------------------------------------- cauchy

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CauchyKind {
    Skew,
    Stable,
}

/// Parameters of a truncated Cauchy sum. All columns share one parameter `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyConfig {
    pub model: Model,
    pub kind: CauchyKind,
    pub max_width: usize,
    pub q: Rational,
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
    pub z: Rational,
    pub epsilon: Rational,
}

/// The convergence ratios that must stay below `epsilon`, one per `(x, y)`
/// pair and ratio kind.
pub fn cauchy_ratios(
    model: Model,
    q: &Rational,
    xs: &[Rational],
    ys: &[Rational],
    z: &Rational,
) -> Result<Vec<Rational>> {
    let one = r(1);
    let q2 = q * q;
    let q3 = &q2 * q;
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            let yz = y * z;
            match model {
                Model::SixVertex => out.push(checked_div(
                    (&one - q * &yz) * (x - z),
                    &((&one - &yz) * (x - q * z)),
                )?),
                Model::IzerginKorepin => {
                    out.push(checked_div(
                        (&one - &q3 * &yz) * (x - z),
                        &((&one - q * &yz) * (x - &q2 * z)),
                    )?);
                    out.push(checked_div(
                        (&one - &q2 * &yz) * (&one - &q3 * &yz) * (x - z) * (x - q * z),
                        &((&one - &yz) * (&one - q * &yz) * (x - &q2 * z) * (x - &q3 * z)),
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// Grid scanned by [`CauchyConfig::search`].
const GRID: [(i64, i64); 12] = [
    (1, 4),
    (1, 3),
    (1, 2),
    (2, 3),
    (1, 1),
    (3, 2),
    (2, 1),
    (3, 1),
    (4, 1),
    (6, 1),
    (8, 1),
    (12, 1),
];

impl CauchyConfig {
    /// Deterministic scan for `N = M = 1` parameters at `q = 1/2`: signed
    /// grid values for `x, y` and `z` in `{1, 1/2, 2}`, keeping the point
    /// whose largest ratio is smallest among those with all ratios in
    /// `(0, 1/4]` and a regular right side.
    pub fn search(model: Model, kind: CauchyKind, max_width: usize) -> Result<Self> {
        let q = Rational::new(1.into(), 2.into());
        let quarter = Rational::new(1.into(), 4.into());
        let signed: Vec<Rational> = GRID
            .iter()
            .flat_map(|&(p, d)| {
                [
                    Rational::new(p.into(), d.into()),
                    Rational::new((-p).into(), d.into()),
                ]
            })
            .collect();
        let mut best: Option<(Rational, CauchyConfig)> = None;
        for z in [r(1), Rational::new(1.into(), 2.into()), r(2)] {
            for x in &signed {
                for y in &signed {
                    let cand = CauchyConfig {
                        model,
                        kind,
                        max_width,
                        q: q.clone(),
                        xs: vec![x.clone()],
                        ys: vec![y.clone()],
                        z: z.clone(),
                        epsilon: quarter.clone(),
                    };
                    let Ok(ratios) = cauchy_ratios(model, &q, &cand.xs, &cand.ys, &z) else {
                        continue;
                    };
                    if ratios.iter().any(|v| !v.is_positive() || *v > quarter) {
                        continue;
                    }
                    if cand.rhs().map_or(true, |v| v.is_zero()) {
                        continue;
                    }
                    let worst = ratios.into_iter().max().unwrap_or_else(|| r(0));
                    if best.as_ref().is_none_or(|(b, _)| worst < *b) {
                        best = Some((worst, cand));
                    }
                }
            }
        }
        best.map(|(_, c)| c).ok_or_else(|| {
            Error::Precondition("no grid point satisfies the convergence constraints".into())
        })
    }

    /// Fails with the offending `(i, j)` pair when a ratio is not below `epsilon`.
    pub fn check(&self) -> Result<()> {
        let ratios = cauchy_ratios(self.model, &self.q, &self.xs, &self.ys, &self.z)?;
        let per = match self.model {
            Model::SixVertex => 1,
            Model::IzerginKorepin => 2,
        };
        for (idx, v) in ratios.iter().enumerate() {
            if v.abs() >= self.epsilon || self.epsilon >= r(1) {
                let pair = idx / per;
                return Err(Error::Precondition(format!(
                    "convergence ratio {v} at (i={}, j={}) is not below epsilon {}",
                    pair / self.ys.len() + 1,
                    pair % self.ys.len() + 1,
                    self.epsilon
                )));
            }
        }
        Ok(())
    }

    fn zs(&self) -> Vec<Rational> {
        vec![self.z.clone(); self.max_width.max(self.xs.len()).max(self.ys.len())]
    }

    fn kernel(&self) -> Rational {
        let one = r(1);
        let q = &self.q;
        let mut acc = r(1);
        for x in &self.xs {
            for y in &self.ys {
                let xy = x * y;
                acc *= match self.model {
                    Model::SixVertex => (&one - q * &xy) / (&one - &xy),
                    Model::IzerginKorepin => {
                        let q2 = q * q;
                        (&one - &q2 * &xy) * (&one - &q2 * q * &xy)
                            / ((&one - &xy) * (&one - q * &xy))
                    }
                };
            }
        }
        acc
    }

    /// The closed right side.
    pub fn rhs(&self) -> Result<Rational> {
        let one = r(1);
        for x in &self.xs {
            for y in &self.ys {
                let xy = x * y;
                if (&one - &xy).is_zero() || (&one - &self.q * &xy).is_zero() {
                    return Err(Error::Singular("x y = 1 or q x y = 1".into()));
                }
            }
        }
        let kernel = self.kernel();
        match self.kind {
            CauchyKind::Stable => Ok(kernel),
            CauchyKind::Skew => {
                let n = self.model.n();
                let big_n = self.xs.len();
                let e = match self.model {
                    Model::SixVertex => big_n * (big_n + 1) / 2,
                    Model::IzerginKorepin => big_n * (2 * big_n + 1),
                };
                let table = WeightTable::plain(self.model, self.q.clone());
                let dw = NString::new(n, vec![n; big_n])?;
                Ok(powi(&self.q, e as i64)?
                    * partition_f(&table, &self.xs, &self.zs(), &dw, None)?
                    * kernel)
            }
        }
    }

    /// One summand of the series.
    pub fn term(&self, table: &WeightTable<Rational>, s: &NString) -> Result<Rational> {
        let q = &self.q;
        let n = self.model.n();
        let zs = self.zs();
        let k = match self.model {
            Model::SixVertex => 1,
            Model::IzerginKorepin => 3,
        };
        let qk = powi(q, k)?;
        let dual: Vec<Rational> = zs
            .iter()
            .map(|z| Ok(checked_div(r(1), &(&qk * z))?))
            .collect::<Result<_>>()?;
        let c_s = string_stats(s, q)?.c_s;
        match self.kind {
            CauchyKind::Skew => Ok(c_s
                * partition_f(table, &self.xs, &zs, s, None)?
                * partition_g(table, &self.ys, &dual, s, s.weight() / n, false)?),
            CauchyKind::Stable => {
                let w = s.weight() as i64;
                let mn = (self.xs.len() * self.ys.len()) as i64;
                let (sign, e) = match self.model {
                    Model::SixVertex => (w % 2 == 1, mn - w * w),
                    // (-1)^{|S|/2}, c_S and both H carry one factor i each
                    // when |S| is odd; they multiply to 1, so only the
                    // floor parts of the exponents remain
                    Model::IzerginKorepin => ((w / 2) % 2 == 1, 4 * mn - w * w),
                };
                let v = powi(q, e)?
                    * c_s
                    * partition_h(table, &self.xs, &zs, s)?
                    * partition_h(table, &self.ys, &dual, s)?;
                Ok(if sign { -v } else { v })
            }
        }
    }

    fn strings(&self) -> Result<Vec<NString>> {
        let n = self.model.n();
        let big_n = self.xs.len();
        match self.kind {
            CauchyKind::Skew => enumerate_nstrings(n, n * big_n, self.max_width),
            CauchyKind::Stable => {
                // odd weights contribute for IK as well, see `term`
                let top = n * big_n.min(self.ys.len());
                let mut out = Vec::new();
                for w in 0..=top {
                    out.extend(enumerate_nstrings(n, w, self.max_width)?);
                }
                Ok(out)
            }
        }
    }
}

/// Partial sums by truncation width. Passes when the final relative gap is
/// below `tolerance` and gaps never grow after the first three widths.
pub fn cauchy_report(
    config: &CauchyConfig,
    table: &WeightTable<Rational>,
    tolerance: &Rational,
) -> Result<VerificationReport> {
    config.check()?;
    let name = format!(
        "cauchy {} {}",
        config.model,
        match config.kind {
            CauchyKind::Skew => "skew",
            CauchyKind::Stable => "stable",
        }
    );
    let mut rep = VerificationReport::new(name);
    rep.param("q", &config.q)
        .param("xs", list(&config.xs))
        .param("ys", list(&config.ys))
        .param("z", &config.z)
        .param("epsilon", &config.epsilon)
        .param("max_width", config.max_width)
        .param("tolerance", tolerance);
    let rhs = config.rhs()?;
    if rhs.is_zero() {
        return Err(Error::Precondition("the right side vanishes".into()));
    }
    let strings = config.strings()?;
    let terms: Vec<Result<(usize, Rational)>> = strings
        .par_iter()
        .map(|s| Ok((s.len(), config.term(table, s)?)))
        .collect();
    let mut by_width = vec![r(0); config.max_width + 1];
    for t in terms {
        let (len, v) = t?;
        by_width[len] += v;
    }
    let mut partial = by_width[0].clone();
    let mut prev: Option<Rational> = None;
    for (width, slice) in by_width.iter().enumerate().skip(1) {
        partial += slice;
        let gap = (&partial - &rhs).abs() / rhs.abs();
        rep.trace.push(TracePoint {
            series: rep.suite.clone(),
            width,
            partial: partial.to_string(),
            rhs: rhs.to_string(),
            gap: gap.to_string(),
            gap_approx: gap.to_f64().unwrap_or(f64::NAN),
        });
        rep.checks += 1;
        if width > 3 {
            if let Some(p) = &prev {
                if gap > *p {
                    rep.fail(
                        format!("width {width}"),
                        format!("gap grew from {p} to {gap}"),
                    );
                }
            }
        }
        prev = Some(gap);
    }
    rep.checks += 1;
    if let Some(last) = prev {
        if last >= *tolerance {
            rep.fail(
                format!("width {}", config.max_width),
                format!("relative gap {last} not below {tolerance}"),
            );
        }
    }
    Ok(rep)
}

pub fn suite_cauchy(cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = new_report("cauchy", cfg);
    let cases = [
        (Model::SixVertex, CauchyKind::Skew),
        (Model::SixVertex, CauchyKind::Stable),
        (Model::IzerginKorepin, CauchyKind::Skew),
        (Model::IzerginKorepin, CauchyKind::Stable),
    ];
    let reports: Vec<Result<VerificationReport>> = cases
        .par_iter()
        .map(|&(model, kind)| {
            let config = CauchyConfig::search(model, kind, cfg.max_width)?;
            let table = cfg.table(model, &config.q);
            cauchy_report(&config, &table, &cfg.tolerance)
        })
        .collect();
    for (sub, (model, kind)) in reports.into_iter().zip(cases) {
        match sub {
            Ok(sub) => {
                for (k, v) in &sub.params {
                    rep.params
                        .insert(format!("{model} {kind:?}.{k}"), v.clone());
                }
                rep.absorb(sub);
            }
            Err(e) => rep.fail(format!("{model} {kind:?}"), e),
        }
    }
    rep
}

// ---------------------------------------------------------------- runner

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport> {
    Ok(match name {
        "local" => suite_local(cfg),
        "oracle" => suite_oracle(cfg),
        "closed-forms" => suite_closed_forms(cfg),
        "symmetrization" => suite_symmetrization(cfg),
        "twisted" => suite_twisted(cfg),
        "recursion" => suite_recursion(cfg),
        "flip" => suite_flip(cfg),
        "exchange" => suite_exchange(cfg),
        "stability" => suite_stability(cfg),
        "cauchy" => suite_cauchy(cfg),
        other => {
            return Err(Error::Precondition(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

/// Runs every suite concurrently; reports come back in [`SUITES`] order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    SUITES
        .par_iter()
        .map(|name| run_suite(name, cfg).expect("suite names are valid"))
        .collect()
}
