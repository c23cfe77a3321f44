//! Chromatic profile of a few patterns, then the reference table.
//!
//! ```bash
//! cargo run --example invariants_table
//! ```

use chromapack::graph::GraphExpr;
use chromapack::invariants::{bottle_from_profile, profile, threshold_from_profile};
use chromapack::table::{reference_rows, render};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for expr in ["C_5", "K_{1,1,3}", "K_{1,2}uC_6"] {
        let h = expr.parse::<GraphExpr>()?.build()?;
        let p = profile(&h)?;
        let bottle = bottle_from_profile(&p)?;
        let t = threshold_from_profile(&p, 90)?;
        println!(
            "{expr:<12} chi={} sigma={} chi_cr={} chi*={} bottle={:?} delta(90)>={}",
            p.ell, p.sigma, p.chi_cr, p.chi_star, bottle.part_sizes, t.lower
        );
    }
    println!();
    print!("{}", render(&reference_rows(None)?));
    Ok(())
}
