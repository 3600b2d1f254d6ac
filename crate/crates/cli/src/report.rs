//! Rendering of reports and orbit statistics as aligned text or JSON.
//!
//! Stable JSON keys: `case`, `N`, `MCC`, `MC`, `R`, `loose`, `nu_odd`,
//! `nu_even`, `nu_inf`, `orbit_sizes`, `witness`. Infinite values serialize
//! as the literal string `"inf"`, an unknown Reidemeister count as
//! `"undetermined"`, and an undetermined orbit count as `null`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use torus_nielsen_core::nielsen::NielsenReport;
use torus_nielsen_core::orbits::OrbitStats;
use torus_nielsen_core::ExtNat;

// Large integers that survive f64 round trips stay numbers; anything bigger
// becomes a decimal string so nothing is silently rounded.
fn big_json(x: &BigInt) -> Value {
    match x.to_i64().filter(|v| v.abs() < (1i64 << 53)) {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn extnat_json(x: &ExtNat) -> Value {
    match x {
        ExtNat::Finite(v) => big_json(v),
        ExtNat::Infinity => json!("inf"),
    }
}

fn optional_extnat_json(x: &Option<ExtNat>) -> Value {
    match x {
        Some(v) => extnat_json(v),
        None => Value::Null,
    }
}

fn orbit_sizes_json(stats: &OrbitStats) -> Value {
    Value::Array(
        stats
            .by_size
            .iter()
            .map(|(size, count)| json!([size, count]))
            .collect(),
    )
}

pub fn report_json(report: &NielsenReport) -> Value {
    json!({
        "case": report.case_label.as_str(),
        "N": big_json(&report.nielsen_number),
        "MCC": big_json(&report.mcc),
        "MC": extnat_json(&report.mc),
        "R": match &report.r_count {
            Some(r) => extnat_json(r),
            None => json!("undetermined"),
        },
        "loose": report.loose,
        "nu_odd": optional_extnat_json(&report.stats.nu_odd),
        "nu_even": optional_extnat_json(&report.stats.nu_even),
        "nu_inf": optional_extnat_json(&report.stats.nu_inf),
        "orbit_sizes": orbit_sizes_json(&report.stats),
        "witness": {
            "branch": report.witness.branch,
            "facts": report.witness.facts.iter()
                .map(|(k, v)| json!([k, v]))
                .collect::<Vec<_>>(),
        },
    })
}

fn render_optional(x: &Option<ExtNat>) -> String {
    match x {
        Some(v) => v.render(),
        None => "undetermined".into(),
    }
}

fn orbit_sizes_text(stats: &OrbitStats) -> String {
    if stats.by_size.is_empty() {
        return "(not enumerated)".into();
    }
    stats
        .by_size
        .iter()
        .map(|(size, count)| format!("{count} of size {size}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn report_text(report: &NielsenReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("case:    {}\n", report.case_label.as_str()));
    out.push_str(&format!("N:       {}\n", report.nielsen_number));
    out.push_str(&format!("MCC:     {}\n", report.mcc));
    out.push_str(&format!("MC:      {}\n", report.mc.render()));
    out.push_str(&format!("R:       {}\n", render_optional(&report.r_count)));
    out.push_str(&format!("loose:   {}\n", report.loose));
    out.push_str(&format!(
        "nu_odd:  {}\n",
        render_optional(&report.stats.nu_odd)
    ));
    out.push_str(&format!(
        "nu_even: {}\n",
        render_optional(&report.stats.nu_even)
    ));
    out.push_str(&format!(
        "nu_inf:  {}\n",
        render_optional(&report.stats.nu_inf)
    ));
    out.push_str(&format!("orbits:  {}\n", orbit_sizes_text(&report.stats)));
    out.push_str(&format!("witness: {}\n", report.witness.branch));
    for (k, v) in &report.witness.facts {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    out
}

pub fn stats_json(stats: &OrbitStats) -> Value {
    json!({
        "nu_odd": optional_extnat_json(&stats.nu_odd),
        "nu_even": optional_extnat_json(&stats.nu_even),
        "nu_inf": optional_extnat_json(&stats.nu_inf),
        "complete": stats.is_complete(),
        "orbit_sizes": orbit_sizes_json(stats),
    })
}

pub fn stats_text(stats: &OrbitStats) -> String {
    let mut out = String::new();
    out.push_str(&format!("nu_odd:   {}\n", render_optional(&stats.nu_odd)));
    out.push_str(&format!("nu_even:  {}\n", render_optional(&stats.nu_even)));
    out.push_str(&format!("nu_inf:   {}\n", render_optional(&stats.nu_inf)));
    out.push_str(&format!("complete: {}\n", stats.is_complete()));
    out.push_str(&format!("orbits:   {}\n", orbit_sizes_text(stats)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_serializes_as_inf_literal() {
        assert_eq!(extnat_json(&ExtNat::Infinity), json!("inf"));
        assert_eq!(extnat_json(&ExtNat::finite(3)), json!(3));
    }

    #[test]
    fn huge_values_become_strings() {
        let huge: BigInt = BigInt::from(1u64) << 80;
        assert_eq!(big_json(&huge), json!(huge.to_string()));
        assert_eq!(big_json(&BigInt::from(-12)), json!(-12));
    }
}
