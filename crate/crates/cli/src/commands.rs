use std::fs;

use serde::Serialize;
use w22_core::algebra::{antisymmetry_report, jacobi_report};
use w22_core::criterion::{cross_validate, is_reducible_bracket_convention, CrossValidation};
use w22_core::identities::{builtin_corpus, parse_corpus};
use w22_core::realizations::{
    intermediate_series_check, semidirect_check, table_mismatches, witt_module_check,
    IntermediateSeriesParams, WindowReport,
};
use w22_core::verma::{jordan_block_sizes, level_basis_within};
use w22_core::{
    is_reducible, Error, GramMatrix, HWParams, Matrix, Poly, Rational, Reducibility, Scalar,
    VermaModule,
};

use crate::emit::{render, strings, Report};
use crate::{suite, Cli, Command, Point};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LevelTooHigh { .. } | Error::IndexOutOfRange { .. } | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Engine(other),
        }
    }
}

type Outcome = Result<Output, Failure>;

fn emit<R: Report>(cli: &Cli, report: &R, ok: bool) -> Outcome {
    Ok(Output {
        text: render(report, cli.format),
        ok,
    })
}

fn numeric(point: &Point) -> Result<HWParams<Rational>, Failure> {
    let get = |v: &Option<Rational>, name: &str| {
        v.clone().ok_or_else(|| {
            Failure::Usage(format!("--{name} is required unless --symbolic is given"))
        })
    };
    Ok(HWParams::new(
        get(&point.lambda, "lambda")?,
        get(&point.c, "c")?,
        get(&point.c0, "c0")?,
        get(&point.c1, "c1")?,
    ))
}

fn check_level(level: usize, limit: usize) -> Result<(), Failure> {
    if level > limit {
        Err(Error::LevelTooHigh { level, limit }.into())
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct MatrixReport {
    level: usize,
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
}

impl MatrixReport {
    fn new<R: Scalar>(g: &GramMatrix<R>) -> Self {
        MatrixReport {
            level: g.level,
            basis: strings(&g.basis),
            entries: entries(&g.matrix),
        }
    }
}

fn entries<R: Scalar>(m: &Matrix<R>) -> Vec<Vec<String>> {
    m.to_rows().into_iter().map(strings).collect()
}

impl Report for MatrixReport {
    fn rows(&self) -> Vec<Vec<String>> {
        self.entries.clone()
    }
}

#[derive(Serialize)]
struct DetReport {
    det: String,
}

impl Report for DetReport {
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.det.clone()]]
    }
}

#[derive(Serialize)]
struct JacobiOut {
    triples_checked: usize,
    violations: usize,
    max_index: i64,
    antisymmetry_pairs_checked: usize,
    antisymmetry_violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violating_triples: Vec<String>,
}

impl Report for JacobiOut {
    fn rows(&self) -> Vec<Vec<String>> {
        vec![
            strings([
                "triples_checked",
                "violations",
                "max_index",
                "antisymmetry_pairs_checked",
                "antisymmetry_violations",
            ]),
            strings([
                self.triples_checked,
                self.violations,
                self.max_index as usize,
                self.antisymmetry_pairs_checked,
                self.antisymmetry_violations,
            ]),
        ]
    }
}

#[derive(Serialize)]
struct DimReport {
    dims: Vec<usize>,
}

impl Report for DimReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![strings(["level", "dim"])];
        rows.extend(self.dims.iter().enumerate().map(|(n, d)| strings([n, *d])));
        rows
    }
}

#[derive(Serialize)]
struct SingularOut {
    coords: Vec<String>,
    i0_eigenvector: bool,
    killed_by_positive_modes: bool,
}

#[derive(Serialize)]
struct SingularReport {
    level: usize,
    basis: Vec<String>,
    vectors: Vec<SingularOut>,
}

impl Report for SingularReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut header = self.basis.clone();
        header.extend(strings(["i0_eigenvector", "killed_by_positive_modes"]));
        let mut rows = vec![header];
        for v in &self.vectors {
            let mut row = v.coords.clone();
            row.extend(strings([v.i0_eigenvector, v.killed_by_positive_modes]));
            rows.push(row);
        }
        rows
    }
}

impl Report for Reducibility {
    fn rows(&self) -> Vec<Vec<String>> {
        let witness = self
            .witness
            .as_ref()
            .map_or(String::new(), ToString::to_string);
        vec![
            strings(["reducible", "witness_m"]),
            vec![self.reducible.to_string(), witness],
        ]
    }
}

impl Report for CrossValidation {
    fn rows(&self) -> Vec<Vec<String>> {
        let w = |r: &Reducibility| {
            r.witness
                .as_ref()
                .map_or(String::new(), ToString::to_string)
        };
        let levels = |v: &[usize]| strings(v).join(" ");
        vec![
            strings([
                "lambda",
                "c",
                "c0",
                "c1",
                "max_level",
                "witness_m",
                "bracket_convention_witness_m",
                "degenerate_levels",
                "singular_vectors_at_first",
                "singular_levels",
            ]),
            vec![
                self.lambda.clone(),
                self.c.clone(),
                self.c0.clone(),
                self.c1.clone(),
                self.max_level.to_string(),
                w(&self.predicate),
                w(&self.bracket_convention),
                levels(&self.degenerate_levels),
                self.singular_vectors_at_first.to_string(),
                levels(&self.singular_levels),
            ],
        ]
    }
}

#[derive(Serialize)]
struct I0Out {
    level: usize,
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
    nilpotency_index: u32,
    bound_holds: bool,
    diagonalizable: bool,
    jordan_blocks: Vec<usize>,
}

impl Report for I0Out {
    fn rows(&self) -> Vec<Vec<String>> {
        self.entries.clone()
    }
}

#[derive(Serialize)]
struct NamedWindow {
    check: String,
    #[serde(flatten)]
    report: WindowReport,
}

#[derive(Serialize)]
struct RealizationOut {
    window: i64,
    a: String,
    b: String,
    checks: Vec<NamedWindow>,
    witt_table_mismatches: usize,
}

impl Report for RealizationOut {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![strings(["check", "window", "checks", "failures"])];
        for c in &self.checks {
            rows.push(vec![
                c.check.clone(),
                c.report.window.to_string(),
                c.report.checks.to_string(),
                c.report.failures.len().to_string(),
            ]);
        }
        rows.push(vec![
            "witt_table".into(),
            self.window.to_string(),
            String::new(),
            self.witt_table_mismatches.to_string(),
        ]);
        rows
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Jacobi { max_index } => {
            let max_index = *max_index;
            if max_index < 0 {
                return Err(Failure::Usage("--max-index must be nonnegative".into()));
            }
            let jac = jacobi_report(max_index)?;
            let anti = antisymmetry_report(max_index)?;
            let out = JacobiOut {
                triples_checked: jac.triples_checked,
                violations: jac.violations.len(),
                max_index,
                antisymmetry_pairs_checked: anti.pairs_checked,
                antisymmetry_violations: anti.violations.len(),
                violating_triples: jac
                    .violations
                    .iter()
                    .map(|v| format!("{} {} {}", v.triple[0], v.triple[1], v.triple[2]))
                    .collect(),
            };
            emit(cli, &out, jac.passed() && anti.violations.is_empty())
        }
        Command::PaperSuite { corpus } => {
            let cases = match corpus {
                Some(path) => {
                    let src = fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    parse_corpus(&src).map_err(|e| Failure::Usage(e.to_string()))?
                }
                None => builtin_corpus(),
            };
            let report = suite::run(&cases)?;
            let ok = report.passed;
            emit(cli, &report, ok)
        }
        Command::VermaDim { level } => {
            check_level(*level, cli.max_level)?;
            let dims = (0..=*level)
                .map(|n| level_basis_within(n, cli.max_level).map(|b| b.len()))
                .collect::<Result<_, _>>()?;
            emit(cli, &DimReport { dims }, true)
        }
        Command::Gram {
            level,
            point,
            symbolic,
        } => {
            let report = if *symbolic {
                check_level(*level, cli.max_symbolic_level.min(cli.max_level))?;
                let m =
                    VermaModule::new(HWParams::<Poly>::symbolic()).with_max_level(cli.max_level);
                MatrixReport::new(&m.gram_matrix(*level)?)
            } else {
                let m = VermaModule::new(numeric(point)?).with_max_level(cli.max_level);
                MatrixReport::new(&m.gram_matrix(*level)?)
            };
            emit(cli, &report, true)
        }
        Command::Det {
            level,
            point,
            symbolic,
        } => {
            let det = if *symbolic {
                check_level(*level, cli.max_symbolic_level.min(cli.max_level))?;
                let m =
                    VermaModule::new(HWParams::<Poly>::symbolic()).with_max_level(cli.max_level);
                m.shapovalov_det(*level)?.to_string()
            } else {
                let m = VermaModule::new(numeric(point)?).with_max_level(cli.max_level);
                m.shapovalov_det(*level)?.to_string()
            };
            emit(cli, &DetReport { det }, true)
        }
        Command::Singular { level, point } => {
            if *level == 0 {
                return Err(Failure::Usage("--level must be at least 1".into()));
            }
            let m = VermaModule::new(numeric(point)?).with_max_level(cli.max_level);
            let basis = m.level_basis(*level)?;
            let found = m.singular_vectors(*level)?;
            let ok = found.iter().all(|s| s.killed_by_positive_modes);
            let vectors = found
                .iter()
                .map(|s| SingularOut {
                    coords: strings(s.vector.to_dense(&basis)),
                    i0_eigenvector: s.i0_eigenvector,
                    killed_by_positive_modes: s.killed_by_positive_modes,
                })
                .collect();
            let report = SingularReport {
                level: *level,
                basis: strings(&basis),
                vectors,
            };
            emit(cli, &report, ok)
        }
        Command::Criterion {
            c0,
            c1,
            bracket_convention,
            check_levels,
            lambda,
            c,
        } => match (check_levels, lambda, c) {
            (Some(levels), Some(lambda), Some(c)) => {
                check_level(*levels, cli.max_level)?;
                let p = HWParams::new(lambda.clone(), c.clone(), c0.clone(), c1.clone());
                let cv = cross_validate(&p, *levels)?;
                let ok = cv.agrees_with(if *bracket_convention {
                    &cv.bracket_convention
                } else {
                    &cv.predicate
                });
                emit(cli, &cv, ok)
            }
            _ => {
                let r = if *bracket_convention {
                    is_reducible_bracket_convention(c0, c1)
                } else {
                    is_reducible(c0, c1)
                };
                emit(cli, &r, true)
            }
        },
        Command::I0 { level, point } => {
            let m = VermaModule::new(numeric(point)?).with_max_level(cli.max_level);
            let basis = m.level_basis(*level)?;
            let r = m.i0_report(*level)?;
            let out = I0Out {
                level: *level,
                basis: strings(&basis),
                entries: entries(&r.matrix),
                nilpotency_index: r.nilpotency_index,
                bound_holds: r.bound_holds,
                diagonalizable: r.diagonalizable,
                jordan_blocks: jordan_block_sizes(&r.nilpotent_part),
            };
            emit(cli, &out, r.bound_holds)
        }
        Command::Realization { window, a, b } => {
            if *window < 1 {
                return Err(Failure::Usage("--window must be at least 1".into()));
            }
            let p = IntermediateSeriesParams::new(a.clone(), b.clone());
            let checks = vec![
                NamedWindow {
                    check: "witt_module".into(),
                    report: witt_module_check(*window),
                },
                NamedWindow {
                    check: "semidirect".into(),
                    report: semidirect_check(*window),
                },
                NamedWindow {
                    check: "intermediate_series".into(),
                    report: intermediate_series_check(&p, *window),
                },
            ];
            let mismatches = table_mismatches(&IntermediateSeriesParams::witt(), *window).len();
            let ok = mismatches == 0 && checks.iter().all(|c| c.report.passed());
            let out = RealizationOut {
                window: *window,
                a: a.to_string(),
                b: b.to_string(),
                checks,
                witt_table_mismatches: mismatches,
            };
            emit(cli, &out, ok)
        }
    }
}
