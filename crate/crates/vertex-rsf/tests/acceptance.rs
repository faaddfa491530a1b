//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use vertex_rsf::identities::{run_suite, Perturbation, SuiteConfig};
use vertex_rsf::models::all_vertices;
use vertex_rsf::{Model, Rational, VerificationReport};

struct Criterion {
    id: usize,
    title: &'static str,
    suite: &'static str,
    budget: Duration,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "local relations",
        suite: "local",
        budget: Duration::from_secs(10),
    },
    Criterion {
        id: 2,
        title: "transfer vs brute force",
        suite: "oracle",
        budget: Duration::from_secs(30),
    },
    Criterion {
        id: 3,
        title: "determinant and infinite-parameter limit",
        suite: "closed-forms",
        budget: Duration::from_secs(60),
    },
    Criterion {
        id: 4,
        title: "symmetrization",
        suite: "symmetrization",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 5,
        title: "twisted columns",
        suite: "twisted",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 6,
        title: "recursion, residue and row expansion",
        suite: "recursion",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 7,
        title: "flip symmetry of G",
        suite: "flip",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 8,
        title: "exchange relations and infinite lemmas",
        suite: "exchange",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 9,
        title: "H limit construction and stability",
        suite: "stability",
        budget: Duration::from_secs(300),
    },
    Criterion {
        id: 10,
        title: "Cauchy convergence",
        suite: "cauchy",
        budget: Duration::from_secs(120),
    },
];

fn line(ok: bool, id: usize, title: &str, elapsed: Duration, detail: &str) -> bool {
    println!(
        "{} criterion {id:>2}: {title} ({:.2}s){detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn summary(rep: &VerificationReport) -> String {
    match rep.defects.first() {
        None => format!(" [{} checks]", rep.checks),
        Some(d) => format!(
            " [{} checks, {} defects; first at {}: {}]",
            rep.checks,
            rep.defects.len(),
            d.location,
            d.defect
        ),
    }
}

/// Every IK entry shifted by 1/97 must break one of the sensitive suites.
fn mutation() -> (bool, String) {
    let delta = Rational::new(1.into(), 97.into());
    let mut survivors = Vec::new();
    for vertex in all_vertices(3) {
        let cfg = SuiteConfig {
            points: Some(1),
            perturbation: Some(Perturbation {
                model: Model::IzerginKorepin,
                vertex,
                delta: delta.clone(),
            }),
            ..SuiteConfig::default()
        };
        let caught = ["local", "symmetrization", "twisted", "recursion"]
            .iter()
            .any(|s| !run_suite(s, &cfg).map(|r| r.pass).unwrap_or(false));
        if !caught {
            survivors.push(format!("{vertex:?}"));
        }
    }
    if survivors.is_empty() {
        (true, " [81 entries, all detected]".into())
    } else {
        (false, format!(" [undetected: {}]", survivors.join(" ")))
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut all = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let rep = run_suite(c.suite, &cfg).expect("known suite");
        let elapsed = start.elapsed();
        let mut detail = summary(&rep);
        let in_time = elapsed <= c.budget;
        if !in_time {
            detail.push_str(&format!(" [over budget {:?}]", c.budget));
        }
        all &= line(rep.pass && in_time, c.id, c.title, elapsed, &detail);
    }
    let start = Instant::now();
    let (ok, detail) = mutation();
    all &= line(ok, 11, "mutation sensitivity", start.elapsed(), &detail);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
