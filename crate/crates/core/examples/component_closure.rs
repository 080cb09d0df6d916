// Components A^r_k and the submodules generated inside them.

use strange_reps::liealg;
use strange_reps::modcomp::{self, ComponentBasis, OperatorSet};
use strange_reps::rep::RepParams;
use strange_reps::superpoly::parse_poly;

/// `(component dimension, closure dimension, rounds)` for each case.
pub fn run_example() -> anyhow::Result<Vec<(String, usize, usize, usize)>> {
    let n = 3;
    let mut out = Vec::new();
    for (r, k, gen) in [(0, 1, "x1"), (0, 2, "x1^2"), (0, 3, "t1*t2*t3"), (3, 0, "1")] {
        let comp = ComponentBasis::new(RepParams::new(n, r)?, k, None)?;
        let ops = OperatorSet::new(&comp, &liealg::basis_p(n)?)?;
        let (space, report) = modcomp::closure(&comp, &ops, &[parse_poly(gen, n)?])?;
        out.push((format!("<{gen}> in A^{r}_{k}"), comp.dim(), space.dim(), report.iterations));
    }
    Ok(out)
}

fn main() -> anyhow::Result<()> {
    for (name, dim, sub, rounds) in run_example()? {
        println!("{name:<22} dim A = {dim:>3}  dim closure = {sub:>3}  ({rounds} rounds)");
    }
    Ok(())
}
