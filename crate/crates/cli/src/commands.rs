use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hilbasis::caratheodory::{
    cr_box, decompose_face_descent, decompose_lp_rounding, default_cap, density, sigma,
};
use hilbasis::exactlin::{delta_modulus, fmt_rational, join, IntMatrix};
use hilbasis::formats::{
    read_basis_elements, read_cone, read_cone_matrix, read_matrix, read_vector, write_basis,
    write_report,
};
use hilbasis::geometry::ConeH;
use hilbasis::hilbert::{hilbert_basis, pigeonhole_point, verify_hilbert_basis};
use hilbasis::instances::{random_cone_point, random_suite_matrix, seeded};
use hilbasis::Error;

use crate::config::RunConfig;
use crate::{Command, StrategyArg};

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct Failure {
    pub message: String,
    pub code: u8,
    /// Report written before the failure, e.g. a stuck descent trace.
    pub partial: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::NonPointed
            | Error::RankDeficient { .. }
            | Error::PigeonholePrecondition { .. }
            | Error::Singular
            | Error::NonSquare { .. }
            | Error::DimensionMismatch { .. }
            | Error::OutsideCone
            | Error::ZeroVector => 3,
            Error::CapExceeded { .. } | Error::GuardExceeded { .. } => 4,
            _ => 1,
        };
        Failure {
            message: e.to_string(),
            code,
            partial: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        message: format!("cannot read {}: {e}", path.display()),
        code: 2,
        partial: None,
    })
}

/// A `matrix` or `cone` file.
fn read_any_matrix(text: &str) -> Result<IntMatrix, Error> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("matrix") {
        read_matrix(text)
    } else {
        read_cone_matrix(text)
    }
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output { text, code: 0 })
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Output, Failure> {
    match cmd {
        Command::Delta { cone } => {
            let a = read_cone_matrix(&read(cone)?)?;
            ok(format!("{}\n", delta_modulus(&a)?))
        }
        Command::Hilbert { cone } => {
            let hb = hilbert_basis(&read_cone(&read(cone)?)?)?;
            ok(cfg.header() + &write_basis(&hb))
        }
        Command::Decompose {
            cone,
            point,
            strategy,
            cap,
        } => decompose(cfg, cone, point, *strategy, *cap),
        Command::Cr { cone, radius } => {
            let hb = hilbert_basis(&read_cone(&read(cone)?)?)?;
            let cr = cr_box(&hb, *radius, cfg.threads)?;
            let mut s = cfg.header();
            let _ = writeln!(s, "value {}", cr.value);
            let _ = writeln!(s, "argmax {}", join(&cr.argmax));
            let _ = writeln!(s, "points {}", cr.points);
            ok(s)
        }
        Command::Density { cone, k, radii } => {
            let hb = hilbert_basis(&read_cone(&read(cone)?)?)?;
            let rows = density(&hb, *k, radii, cfg.threads)?;
            let mut s = cfg.header();
            s.push_str("delta,hits,total,fraction\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.delta,
                    r.hits,
                    r.total,
                    fmt_rational(&r.fraction)
                );
            }
            ok(s)
        }
        Command::Verify {
            cone,
            basis,
            radius,
        } => {
            let c = read_cone(&read(cone)?)?;
            let (n, elements) = read_basis_elements(&read(basis)?)?;
            if n != c.dim() {
                return Err(Error::DimensionMismatch {
                    expected: c.dim(),
                    got: n,
                }
                .into());
            }
            let report = verify_hilbert_basis(&c, &elements, *radius);
            let mut s = cfg.header();
            let _ = writeln!(s, "points_checked {}", report.points_checked);
            for h in &report.irreducibility_failures {
                let _ = writeln!(s, "reducible {}", join(h));
            }
            for x in &report.generation_failures {
                let _ = writeln!(s, "not_generated {}", join(x));
            }
            let _ = writeln!(
                s,
                "result {}",
                if report.passed() { "pass" } else { "fail" }
            );
            Ok(Output {
                text: s,
                code: if report.passed() { 0 } else { 1 },
            })
        }
        Command::Pigeonhole { matrix } => {
            let a = read_any_matrix(&read(matrix)?)?;
            ok(format!("{}\n", join(&pigeonhole_point(&a)?)))
        }
        Command::RandomSuite {
            n,
            delta_max,
            count,
            seed,
        } => random_suite(cfg, *n, *delta_max, *count, *seed),
    }
}

fn decompose(
    cfg: &RunConfig,
    cone: &Path,
    point: &[String],
    strategy: StrategyArg,
    cap: Option<usize>,
) -> Result<Output, Failure> {
    let a = read_cone_matrix(&read(cone)?)?;
    let z = read_vector(&point.join(" "))?;
    let mut s = cfg.header();
    match strategy {
        StrategyArg::Oracle => {
            let hb = hilbert_basis(&ConeH::new(a)?)?;
            let (_, d) = sigma(&z, &hb, cap.unwrap_or_else(|| default_cap(hb.dim())))?;
            s.push_str(&write_report(&d, None));
        }
        StrategyArg::Lp => {
            let hb = hilbert_basis(&ConeH::new(a)?)?;
            let (d, rep) = decompose_lp_rounding(&z, &hb)?;
            s.push_str(&write_report(&d, None));
            let in_d = match rep.in_d {
                Some(true) => "true",
                Some(false) => "false",
                None => "unknown",
            };
            let _ = writeln!(s, "in_d {in_d}");
            let _ = writeln!(s, "vertex_multipliers_ok {}", rep.vertex_multipliers_ok);
            let _ = writeln!(s, "delta_h {}", rep.delta_h);
        }
        StrategyArg::Descent => match decompose_face_descent(&a, &z) {
            Ok((d, trace)) => s.push_str(&write_report(&d, Some(&trace))),
            Err(Error::Stuck { dim, trace }) => {
                let mut partial = s;
                let _ = writeln!(partial, "point {}", join(&z));
                partial.push_str("strategy descent\nresult stuck\n");
                let _ = writeln!(partial, "trace {}", trace.steps.len());
                for step in &trace.steps {
                    let _ = writeln!(
                        partial,
                        "step {} dim {} at {}",
                        step.action.name(),
                        step.dim_after,
                        join(&step.point)
                    );
                }
                return Err(Failure {
                    message: format!("face descent is stuck in dimension {dim}"),
                    code: 1,
                    partial: Some(partial),
                });
            }
            Err(e) => return Err(e.into()),
        },
    }
    ok(s)
}

fn random_suite(
    cfg: &RunConfig,
    n: usize,
    delta_max: u64,
    count: usize,
    seed: u64,
) -> Result<Output, Failure> {
    if n == 0 || delta_max == 0 {
        return Err(Failure {
            message: "--n and --delta-max must be positive".into(),
            code: 3,
            partial: None,
        });
    }
    let mut rng = seeded(seed);
    let mut s = cfg.header();
    let mut violations = 0;
    let mut closed = 0;
    for i in 0..count {
        let a = random_suite_matrix(&mut rng, n, delta_max);
        let z = random_cone_point(&mut rng, &a, 30);
        let delta = delta_modulus(&a)?;
        let (d, trace) = decompose_face_descent(&a, &z)?;
        let bound = d.certified_bound;
        if bound.is_some_and(|b| d.length() > b) {
            violations += 1;
        }
        closed += usize::from(trace.got_stuck());
        let rows: Vec<String> = a.row_iter().map(join).collect();
        let _ = writeln!(
            s,
            "instance {i} delta {delta} length {} bound {} oracle-closure {} point {} matrix {}",
            d.length(),
            bound.map_or("none".to_string(), |b| b.to_string()),
            if trace.got_stuck() { "yes" } else { "no" },
            join(&z),
            rows.join(" / ")
        );
    }
    let _ = writeln!(
        s,
        "summary count {count} oracle-closures {closed} bound-violations {violations}"
    );
    Ok(Output {
        text: s,
        code: if violations == 0 { 0 } else { 1 },
    })
}
