//! Command implementations; `main` only parses arguments and maps errors to
//! exit codes.

use crate::instance::{serialize_instance, InstanceFile, ParseError};
use crate::report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fmt;
use std::path::Path;
use torus_nielsen_core::bundle::BaseSpace;
use torus_nielsen_core::nielsen;
use torus_nielsen_core::oracle::{self, SampleOptions};
use torus_nielsen_core::orbits;
use torus_nielsen_core::Error as CoreError;

/// A command failure, tagged with the exit code it should produce.
#[derive(Debug)]
pub enum CmdError {
    Parse(String),
    Invariant(String),
    TooLarge(String),
    Mismatch(String),
    Io(String),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Parse(_) | CmdError::Io(_) => crate::exit_code::PARSE,
            CmdError::Invariant(_) => crate::exit_code::INVARIANT,
            CmdError::TooLarge(_) => crate::exit_code::TOO_LARGE,
            CmdError::Mismatch(_) => crate::exit_code::MISMATCH,
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Parse(m) => write!(f, "parse error: {m}"),
            CmdError::Invariant(m) => write!(f, "invalid instance: {m}"),
            CmdError::TooLarge(m) => write!(f, "{m}"),
            CmdError::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
            CmdError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Parse(e.to_string())
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TooLarge { .. } => CmdError::TooLarge(e.to_string()),
            other => CmdError::Invariant(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<InstanceFile, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(InstanceFile::parse(&text)?)
}

/// `nielsen <file>`: the full report for one instance.
pub fn cmd_nielsen(path: &Path, cap: u64, as_json: bool) -> Result<String, CmdError> {
    let inst = load(path)?.to_instance()?;
    let report = nielsen::report(&inst, cap)?;
    Ok(if as_json {
        report::report_json(&report).to_string()
    } else {
        report::report_text(&report)
    })
}

/// `fixed-points <file>`: fixed point report for a fiberwise selfmap.
pub fn cmd_fixed_points(path: &Path, cap: u64, as_json: bool) -> Result<String, CmdError> {
    let file = load(path)?;
    let problem = file.to_fixed_point_problem()?;
    let report = nielsen::fixed_points(&problem, cap)?;
    let verdict = nielsen::fixed_point_free(&problem, cap)?;
    Ok(if as_json {
        let mut value = report::report_json(&report);
        value["fixed_point_free"] = json!(verdict.free);
        value["reason"] = json!(verdict.reason);
        value.to_string()
    } else {
        let mut out = report::report_text(&report);
        out.push_str(&format!("fixed point free: {}\n", verdict.free));
        out.push_str(&format!("reason: {}\n", verdict.reason));
        out
    })
}

/// `orbits <file>`: raw orbit statistics of the Reidemeister action.
pub fn cmd_orbits(path: &Path, cap: u64, as_json: bool) -> Result<String, CmdError> {
    let inst = load(path)?.to_instance()?;
    let stats = match inst.base() {
        BaseSpace::Circle => orbits::circle_orbit_stats(&inst, cap)?,
        _ => nielsen::report(&inst, cap)?.stats,
    };
    Ok(if as_json {
        report::stats_json(&stats).to_string()
    } else {
        report::stats_text(&stats)
    })
}

/// `check`: compare the Smith-coordinate enumeration against the
/// parallelepiped oracle, either on one file or on seeded random instances.
/// Any disagreement prints the offending instance and exits with code 5.
pub fn cmd_check(
    path: Option<&Path>,
    random: Option<u64>,
    seed: u64,
    cap: u64,
    corrupt_oracle: bool,
) -> Result<String, CmdError> {
    let run_one = |inst: &torus_nielsen_core::bundle::ProblemInstance| -> Result<(), CmdError> {
        let mut cmp = oracle::verify_instance(inst, cap)?;
        if corrupt_oracle {
            // negative control used by the test suite
            *cmp.brute.by_size.entry(1).or_insert(0) += 1;
            cmp.matches = cmp.primary.by_size == cmp.brute.by_size;
        }
        if !cmp.matches {
            return Err(CmdError::Mismatch(format!(
                "orbit size multisets differ\nprimary: {:?}\nbrute:   {:?}\noffending instance:\n{}",
                cmp.primary.by_size,
                cmp.brute.by_size,
                serialize_instance(inst),
            )));
        }
        Ok(())
    };

    match (path, random) {
        (Some(p), None) => {
            let inst = load(p)?.to_instance()?;
            run_one(&inst)?;
            Ok("1/1 ok\n".into())
        }
        (None, Some(count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let opts = SampleOptions::default();
            let mut passed = 0u64;
            for _ in 0..count {
                let inst = oracle::random_instance(&mut rng, &opts);
                run_one(&inst)?;
                passed += 1;
            }
            Ok(format!("seed {seed}: {passed}/{count} ok\n"))
        }
        _ => Err(CmdError::Parse(
            "check needs either an instance file or --random N".into(),
        )),
    }
}

/// `gauss-table --qmax Q`: reproduce the closed-form orbit table of the
/// Gauss-integer family together with the minimum numbers.
pub fn cmd_gauss_table(q_max: u64, as_json: bool) -> Result<String, CmdError> {
    let table = oracle::gauss_table(q_max)?;
    if as_json {
        let rows: Vec<serde_json::Value> = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "k": r.k,
                    "l": r.l,
                    "parity_even": r.parity_even,
                    "nu": r.enumerated.map(|(a, b, c, d)| vec![a, b, c, d]),
                    "expected": r.expected.map(|(a, b, c, d)| vec![a, b, c, d]),
                    "MCC": r.mcc.to_string().parse::<serde_json::Value>().unwrap_or(json!(r.mcc.to_string())),
                    "ok": r.ok,
                })
            })
            .collect();
        return Ok(json!({"rows": rows, "mismatches": table.mismatches}).to_string());
    }
    let mut out = String::new();
    out.push_str("   k    l  parity  nu_1  nu_2  nu_4  total    MCC  ok\n");
    for r in &table.rows {
        let parity = if r.parity_even { "even" } else { "odd" };
        let (n1, n2, n4, total) = match r.enumerated {
            Some(t) => (
                t.0.to_string(),
                t.1.to_string(),
                t.2.to_string(),
                t.3.to_string(),
            ),
            None => ("-".into(), "-".into(), "-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{:>4} {:>4}  {:<6} {:>5} {:>5} {:>5} {:>6} {:>6}  {}\n",
            r.k,
            r.l,
            parity,
            n1,
            n2,
            n4,
            total,
            r.mcc,
            if r.ok { "yes" } else { "MISMATCH" }
        ));
    }
    out.push_str(&format!("mismatches: {}\n", table.mismatches));
    Ok(out)
}
