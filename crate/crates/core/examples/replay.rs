//! Running the built-in proof scripts, editing one, and reading the report.

use semistable_replay::replay::{build_script_n10, build_script_n6, run, RunContext, Status};

fn main() {
    let ctx = RunContext::shipped();
    for script in [build_script_n6(), build_script_n10()] {
        let report = run(&script, &ctx).unwrap();
        let trusted = report
            .steps
            .iter()
            .filter(|s| s.status == Status::TrustedInput)
            .count();
        println!(
            "{}: {} steps, {trusted} on certified input, overall {:?}",
            report.case,
            report.steps.len(),
            report.overall
        );
        for f in report.failures() {
            println!("  FAIL {}: {}", f.id, f.detail);
        }
    }

    // Scripts are plain data: tighten a bound and watch the step fail.
    let mut script = build_script_n10();
    let json = serde_json::to_string(&script).unwrap();
    println!("n10 script is {} bytes of JSON", json.len());
    script.steps.retain(|s| s.id.starts_with("fontaine"));
    let mut ctx = RunContext::shipped();
    let rows: Vec<_> = ctx
        .odlyzko
        .rows()
        .iter()
        .map(|(d, b)| (*d, b * &semistable_replay::factored_real::ratio(1, 2)))
        .collect();
    ctx.odlyzko = semistable_replay::odlyzko::OdlyzkoTable::from_rows(rows).unwrap();
    print!("{}", run(&script, &ctx).unwrap().to_text());
}
