use std::fmt::Write as _;

use crate::{Cli, Command, StrategyArg};

/// Everything that determines a run's output, echoed as a `#` header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub flags: Vec<(&'static str, String)>,
    pub output: Option<String>,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let path = |p: &std::path::Path| p.display().to_string();
        let (command, inputs, flags): (&str, Vec<String>, Vec<(&str, String)>) = match &cli.command
        {
            Command::Delta { cone } => ("delta", vec![path(cone)], vec![]),
            Command::Hilbert { cone } => ("hilbert", vec![path(cone)], vec![]),
            Command::Decompose {
                cone,
                point,
                strategy,
                cap,
            } => {
                let mut flags = vec![
                    ("point", point.join(" ")),
                    (
                        "strategy",
                        match strategy {
                            StrategyArg::Oracle => "oracle",
                            StrategyArg::Lp => "lp",
                            StrategyArg::Descent => "descent",
                        }
                        .to_string(),
                    ),
                ];
                if let Some(c) = cap {
                    flags.push(("cap", c.to_string()));
                }
                ("decompose", vec![path(cone)], flags)
            }
            Command::Cr { cone, radius } => {
                ("cr", vec![path(cone)], vec![("box", radius.to_string())])
            }
            Command::Density { cone, k, radii } => {
                let list: Vec<String> = radii.iter().map(|r| r.to_string()).collect();
                (
                    "density",
                    vec![path(cone)],
                    vec![("k", k.to_string()), ("box", list.join(","))],
                )
            }
            Command::Verify {
                cone,
                basis,
                radius,
            } => (
                "verify",
                vec![path(cone), path(basis)],
                vec![("box", radius.to_string())],
            ),
            Command::Pigeonhole { matrix } => ("pigeonhole", vec![path(matrix)], vec![]),
            Command::RandomSuite {
                n,
                delta_max,
                count,
                seed,
            } => (
                "random-suite",
                vec![],
                vec![
                    ("n", n.to_string()),
                    ("delta-max", delta_max.to_string()),
                    ("count", count.to_string()),
                    ("seed", seed.to_string()),
                ],
            ),
        };
        RunConfig {
            command,
            inputs,
            flags,
            output: cli.output.as_deref().map(path),
            threads: cli.threads.max(1),
        }
    }

    pub fn header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# command: {}", self.command);
        if !self.inputs.is_empty() {
            let _ = writeln!(s, "# inputs: {}", self.inputs.join(" "));
        }
        for (k, v) in &self.flags {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "# threads: {}", self.threads);
        if let Some(o) = &self.output {
            let _ = writeln!(s, "# output: {o}");
        }
        s
    }
}
