// Super polynomials over Q(sqrt d): parsing, products, derivations.

use strange_reps::superpoly::{format_poly, parse_poly};

pub fn run_example() -> anyhow::Result<Vec<String>> {
    let n = 3;
    let f = parse_poly("x1^2*t3 - 1/2*t1*t2", n)?;
    let g = parse_poly("t1 + s2*x2", n)?;
    let fg = f.mul(&g)?;
    let gf = g.mul(&f)?;
    // theta's anticommute, so t1*t2 = -t2*t1
    let swap = parse_poly("t2*t1", n)?;
    let lines = vec![
        format!("f        = {}", format_poly(&f)),
        format!("g        = {}", format_poly(&g)),
        format!("f*g      = {}", format_poly(&fg)),
        format!("g*f      = {}", format_poly(&gf)),
        format!("t2*t1    = {}", format_poly(&swap)),
        format!("d/dx1 f  = {}", format_poly(&f.d_boson(1)?)),
        format!("d/dt1 f  = {}", format_poly(&f.d_fermion(1)?)),
    ];
    Ok(lines)
}

fn main() -> anyhow::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
