//! The aggregated verification run behind `w22 paper-suite`.

use serde::Serialize;
use w22_core::algebra::{antisymmetry_report, jacobi_report};
use w22_core::criterion::{cross_validate, CrossValidation};
use w22_core::identities::{verify_corpus, IdentityCase};
use w22_core::realizations::semidirect_check;
use w22_core::scalar::rat;
use w22_core::{HWParams, Reducibility, Result};

use crate::emit::{strings, Report};

pub const JACOBI_WINDOW: i64 = 6;
pub const SEMIDIRECT_WINDOW: i64 = 8;
pub const CRITERION_LEVELS: usize = 4;

/// A `(c0, c1)` point probed over a grid of `(lambda, c)`.
pub struct CriterionSample {
    pub c0: i64,
    pub c1: i64,
    /// Whether the stated predicate is expected to match the determinants.
    pub stated_predicate_holds: bool,
    pub anchor: &'static str,
}

const STATED: &str = "2c_0 + (m^2-1)/12 c_1 = 0 for some nonzero integer m";

pub const CRITERION_SAMPLES: &[CriterionSample] = &[
    CriterionSample {
        c0: 0,
        c1: 5,
        stated_predicate_holds: true,
        anchor: STATED,
    },
    CriterionSample {
        c0: 1,
        c1: 1,
        stated_predicate_holds: true,
        anchor: STATED,
    },
    CriterionSample {
        c0: -1,
        c1: 0,
        stated_predicate_holds: true,
        anchor: STATED,
    },
    // the stated sign puts the m = 2 locus at c1 = -8 c0; the bracket puts it at c1 = 8 c0
    CriterionSample {
        c0: 1,
        c1: -8,
        stated_predicate_holds: false,
        anchor: STATED,
    },
    CriterionSample {
        c0: 1,
        c1: 8,
        stated_predicate_holds: false,
        anchor: STATED,
    },
];

pub const LAMBDA_GRID: [i64; 3] = [0, 2, -1];
pub const C_GRID: [i64; 2] = [0, 1];

#[derive(Debug, Serialize)]
pub struct SuiteLine {
    pub kind: &'static str,
    pub name: String,
    pub anchor: String,
    pub status: &'static str,
    pub detail: String,
}

impl SuiteLine {
    fn ok(&self) -> bool {
        matches!(self.status, "pass" | "expected-fail")
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub lines: Vec<SuiteLine>,
}

impl Report for SuiteReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![strings(["kind", "name", "anchor", "status", "detail"])];
        for l in &self.lines {
            rows.push(vec![
                l.kind.to_string(),
                l.name.clone(),
                l.anchor.clone(),
                l.status.to_string(),
                l.detail.clone(),
            ]);
        }
        rows
    }
}

fn classify(matches_record: bool, held: bool) -> &'static str {
    match (held, matches_record) {
        (true, true) => "pass",
        (false, true) => "expected-fail",
        (true, false) => "UNEXPECTED-PASS",
        (false, false) => "FAIL",
    }
}

fn criterion_line(sample: &CriterionSample, cv: &CrossValidation) -> SuiteLine {
    let stated = cv.agrees_with(&cv.predicate);
    let by_bracket = cv.agrees_with(&cv.bracket_convention);
    let witness = |r: &Reducibility| {
        r.witness
            .as_ref()
            .map_or("none".to_string(), ToString::to_string)
    };
    let detail = format!(
        "stated witness {}, bracket witness {}, degenerate levels {:?}, singular at first {}",
        witness(&cv.predicate),
        witness(&cv.bracket_convention),
        cv.degenerate_levels,
        cv.singular_vectors_at_first,
    );
    // the determinants must always follow the implemented bracket
    let status = if by_bracket {
        classify(stated == sample.stated_predicate_holds, stated)
    } else {
        "FAIL"
    };
    SuiteLine {
        kind: "criterion",
        name: format!("lambda={} c={} c0={} c1={}", cv.lambda, cv.c, cv.c0, cv.c1),
        anchor: sample.anchor.to_string(),
        status,
        detail,
    }
}

pub fn run(corpus: &[IdentityCase]) -> Result<SuiteReport> {
    let mut lines = Vec::new();
    for case in verify_corpus(corpus)? {
        let failing: Vec<String> = case
            .instances
            .iter()
            .filter(|i| !i.passed)
            .map(|i| match i.param {
                Some(p) => format!("{p}: {}", i.residual),
                None => i.residual.to_string(),
            })
            .collect();
        lines.push(SuiteLine {
            kind: "identity",
            name: case.name.clone(),
            anchor: case.anchor.clone(),
            status: case.status(),
            detail: format!(
                "{} instances; residuals: {}",
                case.instances.len(),
                if failing.is_empty() {
                    "none".to_string()
                } else {
                    failing.join("; ")
                }
            ),
        });
    }

    let jacobi = jacobi_report(JACOBI_WINDOW)?;
    lines.push(SuiteLine {
        kind: "axiom",
        name: format!("jacobi |index| <= {JACOBI_WINDOW}"),
        anchor: "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0".into(),
        status: classify(jacobi.passed(), jacobi.passed()),
        detail: format!(
            "{} triples, {} violations",
            jacobi.triples_checked,
            jacobi.violations.len()
        ),
    });
    let anti = antisymmetry_report(JACOBI_WINDOW)?;
    lines.push(SuiteLine {
        kind: "axiom",
        name: format!("antisymmetry |index| <= {JACOBI_WINDOW}"),
        anchor: "[x,y] = -[y,x]".into(),
        status: classify(anti.violations.is_empty(), anti.violations.is_empty()),
        detail: format!(
            "{} pairs, {} violations",
            anti.pairs_checked,
            anti.violations.len()
        ),
    });
    let semi = semidirect_check(SEMIDIRECT_WINDOW);
    lines.push(SuiteLine {
        kind: "realization",
        name: format!("semidirect window {SEMIDIRECT_WINDOW}"),
        anchor: "x_m.I(n) = (n-m)I(m+n)".into(),
        status: classify(semi.passed(), semi.passed()),
        detail: semi.to_string(),
    });

    for sample in CRITERION_SAMPLES {
        for lambda in LAMBDA_GRID {
            for c in C_GRID {
                let p = HWParams::new(rat(lambda), rat(c), rat(sample.c0), rat(sample.c1));
                let cv = cross_validate(&p, CRITERION_LEVELS)?;
                lines.push(criterion_line(sample, &cv));
            }
        }
    }

    Ok(SuiteReport {
        passed: lines.iter().all(SuiteLine::ok),
        lines,
    })
}
