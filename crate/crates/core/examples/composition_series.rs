// A composition series of A^0_3 under P(2), checked layer by layer.

use strange_reps::theorems::{self, ClaimReport, VerifyOptions};

pub fn run_example() -> anyhow::Result<ClaimReport> {
    Ok(theorems::verify_thm1(3, 0, 3, &VerifyOptions::default())?)
}

fn main() -> anyhow::Result<()> {
    let report = run_example()?;
    println!("{} {}", report.claim, report.status);
    for c in &report.checks {
        println!("  {:<6} {}", c.status.label(), c.name);
    }
    println!("dimensions: {:?}", report.dimensions);
    Ok(())
}
