// A^0_k splits into two irreducible Q~(n-1) summands over Q(sqrt k).

use strange_reps::theorems::{self, ClaimReport, VerifyOptions};

pub fn run_example() -> anyhow::Result<Vec<ClaimReport>> {
    let opts = VerifyOptions::default();
    (1..=3)
        .map(|k| theorems::verify_thm2(3, 0, k, &opts).map_err(Into::into))
        .collect()
}

fn main() -> anyhow::Result<()> {
    for report in run_example()? {
        println!("{} {}", report.claim, report.status);
        for (name, dim) in &report.dimensions {
            println!("  {name:<32} {dim}");
        }
    }
    Ok(())
}
