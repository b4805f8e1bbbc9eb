//! Command line front end. Every subcommand writes a deterministic report and
//! ends with a summary block of `name: pass|fail` lines. When stdout carries
//! a document (for piping), the summary goes to stderr instead.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input error.

use std::fs;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::chains::{augment, integer_homology, nabla};
use crate::counterexample::run_counterexample;
use crate::crossed::text::{parse_complex, write_complex};
use crate::crossed::FreeCrossedComplex;
use crate::normalization::verify_normalization;
use crate::pi_functor::{fundamental_crossed_complex, pi1_presentation};
use crate::simplicial::{
    boundary_simplex, nerve_of_group, parse, serialize, standard_simplex, validate, GroupTable, SimplicialSet,
};
use crate::tensor::{cone, hal_consistency_check};

#[derive(Debug, Parser)]
#[command(name = "crossed", version, about = "Fundamental crossed complexes of simplicial sets")]
struct Cli {
    /// Truncation level: for `gen`, of the generated set; otherwise the input
    /// is truncated to this level first.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// Δ[n], default truncation n + 1
    Delta,
    /// ∂Δ[n], default truncation n + 1
    Boundary,
    /// nerve of ℤ/n, default truncation 3
    Nerve,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a simplicial set document.
    Gen {
        family: Family,
        n: usize,
        /// Truncation level (same as --trunc).
        level: Option<usize>,
    },
    /// Check the simplicial identities of a document.
    Validate { file: Option<String> },
    /// Build Π^Υ K and emit it as a crossed complex document.
    Pi { file: Option<String> },
    /// Audit δδ = 0 on a crossed complex document.
    CheckDd { file: Option<String> },
    /// Compare HAL with the boundaries of the algebraic simplices.
    HalCheck {
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
    },
    /// Emit the cone on a crossed complex document.
    Cone { file: Option<String> },
    /// Normalize Π^Υ K and emit ΠK.
    Normalize {
        file: Option<String>,
        /// Print the stage checks instead of only the ΠK document.
        #[arg(long)]
        report: bool,
    },
    /// Integer homology of the augmented chain complex.
    Homology {
        file: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Use Π^Υ K instead of ΠK.
        #[arg(long, alias = "unnormalized")]
        unnormalised: bool,
    },
    /// The non-injective inclusion example.
    Counterexample,
}

struct Failure(String);

type Outcome = Result<Summary, Failure>;

#[derive(Default)]
struct Summary {
    checks: Vec<(String, bool)>,
    /// Send the summary to stderr.
    document: bool,
}

impl Summary {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    fn render(&self) -> String {
        let mut out = String::from("== summary ==\n");
        for (name, ok) in &self.checks {
            out.push_str(&format!("{name}: {}\n", if *ok { "pass" } else { "fail" }));
        }
        out.push_str(&format!("result: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

fn fail(e: impl std::fmt::Display) -> Failure {
    Failure(e.to_string())
}

/// Run with `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut out = String::new();
    match dispatch(&cli, stdin, &mut out) {
        Ok(summary) => {
            let _ = stdout.write_all(out.as_bytes());
            let block = summary.render();
            let _ = if summary.document { stderr.write_all(block.as_bytes()) } else { stdout.write_all(block.as_bytes()) };
            i32::from(!summary.passed())
        }
        Err(Failure(msg)) => {
            let _ = stdout.write_all(out.as_bytes());
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read_input(file: &Option<String>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(fail)?;
            Ok(s)
        }
        Some(path) => fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}"))),
    }
}

fn read_set(cli: &Cli, file: &Option<String>, stdin: &mut dyn Read) -> Result<SimplicialSet, Failure> {
    let k = parse(&read_input(file, stdin)?).map_err(fail)?;
    match cli.trunc {
        Some(n) => k.truncate(n).map_err(fail),
        None => Ok(k),
    }
}

fn read_complex(cli: &Cli, file: &Option<String>, stdin: &mut dyn Read) -> Result<FreeCrossedComplex, Failure> {
    let c = parse_complex(&read_input(file, stdin)?).map_err(fail)?;
    match cli.trunc {
        Some(n) => c.truncate(n).map_err(fail),
        None => Ok(c),
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut String) -> Outcome {
    let mut s = Summary::default();
    match &cli.command {
        Command::Gen { family, n, level } => {
            let level = level.or(cli.trunc);
            let k = match family {
                Family::Delta => standard_simplex(*n, level.unwrap_or(n + 1)),
                Family::Boundary => boundary_simplex(*n, level.unwrap_or(n + 1)),
                Family::Nerve => nerve_of_group(&GroupTable::cyclic(*n).map_err(fail)?, level.unwrap_or(3)),
            }
            .map_err(fail)?;
            out.push_str(&serialize(&k));
            out.push('\n');
            s.document = true;
            s.check("generate", true);
        }
        Command::Validate { file } => {
            let k = read_set(cli, file, stdin)?;
            let report = validate(&k);
            for v in &report.violations {
                out.push_str(&format!("{v}\n"));
            }
            out.push_str(&format!("{} violations\n", report.violations.len()));
            s.check("simplicial identities", report.is_valid());
        }
        Command::Pi { file } => {
            let k = read_set(cli, file, stdin)?;
            let c = fundamental_crossed_complex(&k).map_err(fail)?;
            out.push_str(&write_complex(&c));
            s.document = true;
            s.check("normalizer", true);
            if k.trunc_level() >= 2 {
                let p = pi1_presentation(&k).map_err(fail)?;
                let groups: Vec<String> = p.groups.iter().map(ToString::to_string).collect();
                out.push_str(&format!("# pi1 per component: {}\n", groups.join(", ")));
            }
            s.check("δδ = 0", c.audit().is_empty());
        }
        Command::CheckDd { file } => {
            let c = read_complex(cli, file, stdin)?;
            let failures = c.audit();
            for f in &failures {
                out.push_str(&format!("{f:?}\n"));
            }
            out.push_str(&format!(
                "checked {} generators in dimensions ≥ 3 (normalizer {})\n",
                (3..=c.trunc_level()).map(|n| c.basis_count(n)).sum::<usize>(),
                c.normalizer().name()
            ));
            s.check("δδ = 0", failures.is_empty());
            let chains = nabla(&c);
            s.check("∂∂ = 0 in ∇C", chains.audit().is_ok() && augment(&chains).is_complex());
        }
        Command::HalCheck { max_dim } => {
            let checks = hal_consistency_check(*max_dim).map_err(fail)?;
            for c in &checks {
                out.push_str(&format!("{c}\n"));
                s.check(format!("hal n = {}", c.n), c.passed());
            }
        }
        Command::Cone { file } => {
            let c = Arc::new(read_complex(cli, file, stdin)?);
            let k = cone(&c).map_err(fail)?;
            out.push_str(&write_complex(&k.complex));
            s.document = true;
            s.check("δδ = 0 in the cone", k.complex.audit().is_empty());
        }
        Command::Normalize { file, report } => {
            let k = read_set(cli, file, stdin)?;
            let (fnz, rep) = verify_normalization(&k).map_err(fail)?;
            if *report {
                out.push_str(&rep.to_string());
                out.push_str("== ΠK ==\n");
            } else {
                s.document = true;
            }
            out.push_str(&write_complex(fnz.normalized()));
            for c in &rep.checks {
                s.check(&c.name, c.passed());
            }
        }
        Command::Homology { file, max_degree, unnormalised } => {
            let k = read_set(cli, file, stdin)?;
            if k.trunc_level() == 0 {
                return Err(Failure("homology needs truncation at least 1".into()));
            }
            let d = max_degree.unwrap_or(k.trunc_level() - 1);
            let groups = if *unnormalised {
                integer_homology(&fundamental_crossed_complex(&k).map_err(fail)?, d)
            } else {
                let (fnz, _) = verify_normalization(&k).map_err(fail)?;
                integer_homology(fnz.normalized(), d)
            }
            .map_err(fail)?;
            for (n, g) in groups.iter().enumerate() {
                out.push_str(&format!("H_{n} = {g}\n"));
            }
            s.check("homology", true);
        }
        Command::Counterexample => {
            let r = run_counterexample();
            out.push_str(&format!("{r}\n"));
            s.check("b^x = b in C(R)", r.fixed_in_large);
            s.check("b^x ≠ b in C(S)", !r.fixed_in_small);
            s.check("C(i) not injective", r.not_injective());
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["crossed"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pipeline() {
        let (code, set, err) = call(&["gen", "delta", "3", "4"], "");
        assert_eq!(code, 0, "{err}");
        let (code, complex, _) = call(&["pi"], &set);
        assert_eq!(code, 0);
        let (code, report, _) = call(&["check-dd"], &complex);
        assert_eq!(code, 0, "{report}");
        assert!(report.ends_with("result: pass\n"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["hal-check", "--bogus"], "").0, 2);
        assert_eq!(call(&["validate"], "not json").0, 2);
    }

    #[test]
    fn counterexample_passes() {
        let (code, out, _) = call(&["counterexample"], "");
        assert_eq!(code, 0);
        assert!(out.contains("C(i) not injective: pass"));
    }

    #[test]
    fn homology_of_the_sphere() {
        let (_, set, _) = call(&["gen", "boundary", "3", "4"], "");
        let (code, out, _) = call(&["homology", "--max-degree", "2"], &set);
        assert_eq!(code, 0);
        assert!(out.starts_with("H_0 = Z\nH_1 = 0\nH_2 = Z\n"), "{out}");
    }

    #[test]
    fn deterministic_reports() {
        let (_, set, _) = call(&["gen", "nerve", "2", "--trunc", "4"], "");
        let a = call(&["normalize", "--report"], &set);
        let b = call(&["normalize", "--report"], &set);
        assert_eq!(a, b);
        assert_eq!(a.0, 0, "{}", a.1);
    }
}
