// The strange Lie superalgebras as spanning lists inside gl(n|n).

use strange_reps::liealg::{self, superbracket, span_membership};

pub fn run_example() -> anyhow::Result<Vec<String>> {
    let n = 3;
    let mut out = Vec::new();
    for basis in [liealg::basis_gl(n), liealg::basis_p(n)?, liealg::basis_q(n)?, liealg::p_even(n)?, liealg::q_even(n)?] {
        out.push(format!(
            "{:<8} {} elements, rank {}, closed: {}",
            basis.name.to_string(),
            basis.len(),
            basis.rank(),
            basis.is_closed()?
        ));
    }
    for (form, closed) in liealg::q_form_closure(n)? {
        out.push(format!("Q~ candidate {form:?}: closed = {closed}"));
    }
    // the bracket of two odd P elements lands back in P
    let p = liealg::basis_p(n)?;
    let odd: Vec<_> = p.elements.iter().filter(|e| e.parity().is_some_and(|q| q.is_odd())).collect();
    let b = superbracket(odd[0], odd[odd.len() - 1])?;
    out.push(format!("[odd, odd] in P: {}", span_membership(&b, &p)?.is_some()));
    Ok(out)
}

fn main() -> anyhow::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
