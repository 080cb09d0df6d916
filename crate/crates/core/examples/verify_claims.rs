// Runs a selection of claims concurrently and prints the JSON reports.

use strange_reps::cli;
use strange_reps::theorems::{self, ClaimReport, Selection, Selector, VerifyOptions};

pub fn run_example() -> anyhow::Result<Vec<ClaimReport>> {
    let jobs = theorems::jobs(3, Selector::Lemma24, &Selection::default());
    let mut reports = Vec::new();
    for r in theorems::run_jobs(3, &jobs, &VerifyOptions::default()) {
        reports.push(r.map_err(|(job, e)| anyhow::anyhow!("{job:?}: {e}"))?);
    }
    Ok(reports)
}

fn main() -> anyhow::Result<()> {
    let reports = run_example()?;
    print!("{}", cli::render_json(&reports)?);
    std::process::exit(cli::exit_code(&reports, false));
}
