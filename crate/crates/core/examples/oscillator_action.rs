// The gl(n|n) action phi_r on super polynomials, and its homomorphism check.

use strange_reps::liealg::{self, AlgebraElement};
use strange_reps::modcomp::ComponentBasis;
use strange_reps::rep::{self, RepParams};
use strange_reps::superpoly::{parse_poly, SuperPolynomial};

pub fn run_example() -> anyhow::Result<Vec<String>> {
    let mut out = Vec::new();
    for (r, a, b, f) in [(0, 1, 4, "t1"), (1, 1, 1, "x1"), (1, 2, 1, "x1*t2"), (3, 4, 1, "x1^2")] {
        let params = RepParams::new(3, r)?;
        let e = AlgebraElement::unit(3, a, b)?;
        let image = rep::apply_element(params, &e, &parse_poly(f, 3)?)?;
        out.push(format!("phi_{r}(E_{a},{b}) {f} = {image}"));
    }
    // [phi(A), phi(B)] = phi([A, B]) on every monomial of a component
    let params = RepParams::new(3, 0)?;
    let basis = liealg::basis_p(3)?;
    let comp = ComponentBasis::new(params, 2, None)?;
    let mut worst = 0;
    for a in &basis.elements {
        for b in &basis.elements {
            for m in comp.monomials() {
                let f = SuperPolynomial::monomial(m.clone());
                worst = worst.max(rep::homomorphism_defect(params, a, b, &f)?.len());
            }
        }
    }
    out.push(format!(
        "homomorphism defect over {} x {} pairs on A^0_2: {} nonzero terms",
        basis.len(),
        basis.len(),
        worst
    ));
    Ok(out)
}

fn main() -> anyhow::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
