// An infinite-dimensional component (0 < r < n) examined inside |alpha| <= cap.

use strange_reps::theorems::{self, ClaimReport, VerifyOptions};

pub fn run_example() -> anyhow::Result<Vec<ClaimReport>> {
    let mut out = Vec::new();
    for cap in [6, 8] {
        let opts = VerifyOptions {
            deg_cap: cap,
            ..VerifyOptions::default()
        };
        out.push(theorems::verify_thm1(3, 1, 2, &opts)?);
    }
    Ok(out)
}

fn main() -> anyhow::Result<()> {
    for report in run_example()? {
        println!(
            "{} at cap {:?}: {}  {:?}",
            report.claim, report.params.deg_cap, report.status, report.dimensions
        );
    }
    Ok(())
}
