//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 precondition refusal,
//! 4 internal assertion failure, 5 oracle mismatch under --assert-oracle.
//! Errors print one machine-parsable line on stderr: `error: <kind>: <msg>`.

use std::fmt::Write as _;
use std::process::ExitCode;

use twoclosure::certificate::EmptyReason;
use twoclosure::closure::{two_closure_checked, verify_two_equivalent};
use twoclosure::flags::{maximal_normal_flag, validate_flag, MAXIMALITY_CHECK_DEGREE};
use twoclosure::format::{emit_group, parse_group};
use twoclosure::orbitals::{brute_force_closure, two_orbits, ORACLE_DEGREE_LIMIT};
use twoclosure::sections::{feasibility, is_plain, plain_structure, sections_of, Feasibility};
use twoclosure::zoo::{generate_zoo, Expected, Provenance};
use twoclosure::{Error, PermGroup};

const USAGE: &str = "usage: twoclosure <command> [args]

commands:
  closure <file> [--report <path>] [--assert-oracle]
      2-closure of a supersolvable group; prints generators in group format
  oracle <file>
      brute-force 2-closure (degree <= 12); prints generators
  two-orbits <file>
      the orbital coloring, one row of color ids per line
  flag <file>
      maximal normal flag with normality/maximality verdicts
  sections <file>
      sections of the group's maximal normal flag
  certificate <file>
      per-section nonsolvability certificate summary
  zoo --max-degree <n> [--emit <name>]
      list the test zoo, or emit one entry in group format
  verify <fileA> <fileB>
      report whether the two groups have identical 2-orbits

group file format: first line `degree <n>`, then one generator per line as
n whitespace-separated 0-based images; `#` comments and blank lines ignored.";

enum CliError {
    Usage(String),
    Core(Error),
    OracleMismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(Error::Input(msg))) => {
            eprintln!("error: parse: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(Error::Precondition(msg))) => {
            eprintln!("error: precondition: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Core(Error::Internal(msg))) => {
            eprintln!("error: internal: {msg}");
            ExitCode::from(4)
        }
        Err(CliError::OracleMismatch(msg)) => {
            eprintln!("error: oracle-mismatch: {msg}");
            ExitCode::from(5)
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(verb) = args.first() else {
        return Err(CliError::Usage(USAGE.to_string()));
    };
    let output = match verb.as_str() {
        "closure" => cmd_closure(&args[1..])?,
        "oracle" => cmd_oracle(&args[1..])?,
        "two-orbits" => cmd_two_orbits(&args[1..])?,
        "flag" => cmd_flag(&args[1..])?,
        "sections" => cmd_sections(&args[1..])?,
        "certificate" => cmd_certificate(&args[1..])?,
        "zoo" => cmd_zoo(&args[1..])?,
        "verify" => cmd_verify(&args[1..])?,
        "--help" | "-h" | "help" => format!("{USAGE}\n"),
        other => return Err(CliError::Usage(format!("unknown command `{other}`"))),
    };
    emit_stdout(&output);
    Ok(())
}

/// Writes to stdout, exiting quietly if the reader closed the pipe.
fn emit_stdout(text: &str) {
    use std::io::Write;
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        std::process::exit(0);
    }
}

fn load_group(path: &str) -> Result<PermGroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Core(Error::input(format!("cannot read {path}: {e}"))))?;
    Ok(parse_group(&text)?)
}

fn reason_text(reason: Option<EmptyReason>) -> &'static str {
    reason.map_or("nonempty", |r| r.as_str())
}

fn cmd_closure(args: &[String]) -> Result<String, CliError> {
    let mut input: Option<&str> = None;
    let mut report_path: Option<&str> = None;
    let mut assert_oracle = false;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--report" => {
                report_path = Some(
                    it.next()
                        .ok_or_else(|| CliError::Usage("--report needs a path".to_string()))?,
                )
            }
            "--assert-oracle" => assert_oracle = true,
            flag if flag.starts_with("--") => {
                return Err(CliError::Usage(format!("unknown flag `{flag}`")))
            }
            path if input.is_none() => input = Some(path),
            extra => return Err(CliError::Usage(format!("unexpected argument `{extra}`"))),
        }
    }
    let input = input.ok_or_else(|| CliError::Usage("closure needs an input file".to_string()))?;
    let group = load_group(input)?;
    if assert_oracle && group.degree() > ORACLE_DEGREE_LIMIT {
        return Err(CliError::Core(Error::precondition(format!(
            "--assert-oracle requires degree <= {ORACLE_DEGREE_LIMIT}"
        ))));
    }
    let report = two_closure_checked(&group, assert_oracle)?;
    if assert_oracle && report.verification.oracle_check != Some(true) {
        return Err(CliError::OracleMismatch(format!(
            "closure order {} disagrees with the brute-force oracle",
            report.output.order()
        )));
    }
    if let Some(path) = report_path {
        let mut text = String::new();
        let _ = writeln!(text, "input.degree: {}", report.input.degree());
        let _ = writeln!(text, "input.order: {}", report.input.order());
        let _ = writeln!(
            text,
            "relative_closure.order: {}",
            report.relative_closure.order()
        );
        let _ = writeln!(text, "flag.length: {}", report.flag.length());
        let _ = writeln!(
            text,
            "extended_flag.length: {}",
            report.extended_flag.length()
        );
        let _ = writeln!(text, "sections.count: {}", report.certificates.len());
        for cert in &report.certificates {
            let _ = writeln!(
                text,
                "certificate.{}.xbar: {}",
                cert.section_index,
                cert.xbar.len()
            );
            let _ = writeln!(
                text,
                "certificate.{}.x_s: {}",
                cert.section_index,
                cert.x_s.len()
            );
            let _ = writeln!(
                text,
                "certificate.{}.reason: {}",
                cert.section_index,
                reason_text(cert.empty_reason)
            );
        }
        let _ = writeln!(text, "output.order: {}", report.output.order());
        let _ = writeln!(
            text,
            "verify.two_equivalent: {}",
            report.verification.two_equivalent
        );
        let _ = writeln!(
            text,
            "verify.contains_input: {}",
            report.verification.contains_input
        );
        let _ = writeln!(
            text,
            "verify.factor_check: {}",
            report.verification.factor_check
        );
        let oracle = match report.verification.oracle_check {
            Some(v) => v.to_string(),
            None => "skipped".to_string(),
        };
        let _ = writeln!(text, "verify.oracle: {oracle}");
        std::fs::write(path, text)
            .map_err(|e| CliError::Core(Error::input(format!("cannot write {path}: {e}"))))?;
    }
    Ok(emit_group(&report.output))
}

fn cmd_oracle(args: &[String]) -> Result<String, CliError> {
    let [path] = args else {
        return Err(CliError::Usage(
            "oracle needs exactly one input file".to_string(),
        ));
    };
    let group = load_group(path)?;
    let closure = brute_force_closure(&group)?;
    Ok(emit_group(&closure))
}

fn cmd_two_orbits(args: &[String]) -> Result<String, CliError> {
    let [path] = args else {
        return Err(CliError::Usage(
            "two-orbits needs exactly one input file".to_string(),
        ));
    };
    let group = load_group(path)?;
    Ok(two_orbits(&group).to_text())
}

fn cmd_flag(args: &[String]) -> Result<String, CliError> {
    let [path] = args else {
        return Err(CliError::Usage(
            "flag needs exactly one input file".to_string(),
        ));
    };
    let group = load_group(path)?;
    let flag = maximal_normal_flag(&group)?;
    let mut out = String::new();
    let _ = writeln!(out, "degree: {}", group.degree());
    let _ = writeln!(out, "length: {}", flag.length());
    for (i, member) in flag.members().iter().enumerate() {
        let _ = writeln!(out, "member {i}: {}", member.to_text());
    }
    let normal = validate_flag(&flag, &group, true, false)?;
    let _ = writeln!(out, "normal: {normal}");
    if group.degree() <= MAXIMALITY_CHECK_DEGREE {
        let maximal = validate_flag(&flag, &group, true, true)?;
        let _ = writeln!(out, "maximal: {maximal}");
    } else {
        let _ = writeln!(out, "maximal: trusted (degree > {MAXIMALITY_CHECK_DEGREE})");
    }
    Ok(out)
}

fn cmd_sections(args: &[String]) -> Result<String, CliError> {
    let [path] = args else {
        return Err(CliError::Usage(
            "sections needs exactly one input file".to_string(),
        ));
    };
    let group = load_group(path)?;
    let flag = maximal_normal_flag(&group)?;
    let sections = sections_of(&group, &flag)?;
    let mut out = String::new();
    let _ = writeln!(out, "sections: {}", sections.len());
    for section in &sections {
        let sizes: Vec<String> = section
            .orbit_list
            .iter()
            .map(|o| o.len().to_string())
            .collect();
        let plain = is_plain(section);
        let classes = if plain {
            let structure = plain_structure(section)?;
            let parts: Vec<String> = structure
                .orbit_classes
                .iter()
                .map(|class| {
                    let ids: Vec<String> = class.iter().map(|i| i.to_string()).collect();
                    format!("[{}]", ids.join(","))
                })
                .collect();
            parts.join(" ")
        } else {
            "-".to_string()
        };
        let _ = writeln!(
            out,
            "section {}: orbits=[{}] plain={} classes={} feasible={}",
            section.index,
            sizes.join(","),
            plain,
            classes,
            matches!(feasibility(section), Feasibility::Feasible),
        );
    }
    Ok(out)
}

fn cmd_certificate(args: &[String]) -> Result<String, CliError> {
    let [path] = args else {
        return Err(CliError::Usage(
            "certificate needs exactly one input file".to_string(),
        ));
    };
    let group = load_group(path)?;
    let report = two_closure_checked(&group, false)?;
    let mut out = String::new();
    let _ = writeln!(out, "sections: {}", report.certificates.len());
    for cert in &report.certificates {
        let _ = writeln!(
            out,
            "section {}: feasible={} xbar={} x_s={} reason={}",
            cert.section_index,
            cert.empty_reason != Some(EmptyReason::NotFeasible)
                && cert.empty_reason != Some(EmptyReason::SolvableByConstruction),
            cert.xbar.len(),
            cert.x_s.len(),
            reason_text(cert.empty_reason)
        );
    }
    Ok(out)
}

fn cmd_zoo(args: &[String]) -> Result<String, CliError> {
    let mut max_degree: Option<usize> = None;
    let mut emit: Option<&str> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--max-degree" => {
                let value = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--max-degree needs a value".to_string()))?;
                max_degree =
                    Some(value.parse().map_err(|_| {
                        CliError::Usage(format!("bad --max-degree value `{value}`"))
                    })?);
            }
            "--emit" => {
                emit = Some(
                    it.next()
                        .ok_or_else(|| CliError::Usage("--emit needs a name".to_string()))?,
                )
            }
            other => return Err(CliError::Usage(format!("unexpected argument `{other}`"))),
        }
    }
    let max_degree = max_degree.unwrap_or(10);
    let zoo = generate_zoo(max_degree)?;
    match emit {
        Some(name) => {
            let entry = zoo
                .iter()
                .find(|e| e.name == name)
                .ok_or_else(|| CliError::Core(Error::input(format!("no zoo entry `{name}`"))))?;
            Ok(emit_group(&entry.group))
        }
        None => {
            let mut out = String::new();
            for entry in &zoo {
                let expected = match &entry.expected {
                    Expected::SelfClosure => "self".to_string(),
                    Expected::Order(n) => format!("order {n}"),
                    Expected::Unknown => "oracle".to_string(),
                };
                let provenance = match entry.provenance {
                    Provenance::Literature => "literature",
                    Provenance::Derived => "derived",
                };
                let _ = writeln!(
                    out,
                    "{} degree={} order={} expected={} provenance={}",
                    entry.name,
                    entry.group.degree(),
                    entry.group.order(),
                    expected,
                    provenance
                );
            }
            Ok(out)
        }
    }
}

fn cmd_verify(args: &[String]) -> Result<String, CliError> {
    let [path_a, path_b] = args else {
        return Err(CliError::Usage(
            "verify needs exactly two input files".to_string(),
        ));
    };
    let a = load_group(path_a)?;
    let b = load_group(path_b)?;
    let verdict = verify_two_equivalent(&a, &b)?;
    Ok(format!("two_equivalent: {verdict}\n"))
}
