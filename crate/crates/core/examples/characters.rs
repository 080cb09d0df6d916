// Truncated Q~ characters of phi_0 and phi_n.

use strange_reps::theorems::{self, ClaimReport, VerifyOptions};

pub fn run_example() -> anyhow::Result<ClaimReport> {
    let opts = VerifyOptions {
        trunc: 3,
        ..VerifyOptions::default()
    };
    Ok(theorems::character_compare_phi0_phin(3, &opts)?)
}

fn main() -> anyhow::Result<()> {
    let report = run_example()?;
    for c in &report.checks {
        println!("{:<6} {}\n       {}", c.status.label(), c.name, c.detail);
    }
    Ok(())
}
