//! Hosts with high minimum degree and no perfect packing, each checked by
//! its arithmetic certificate and, when small, by exhaustive search.
//!
//! ```bash
//! cargo run --example extremal_certificates
//! ```

use chromapack::extremal::{build_g1, build_g2, build_komlos_bottle, certify_no_packing, check_certificate};
use chromapack::graph::GraphExpr;
use chromapack::oracle::{has_perfect_packing, Mode, SearchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("g1", "K_{1,1,3}", 2),
        ("g2", "C_6", 2),
        ("bottle", "C_5", 2),
    ];
    for (kind, expr, k) in cases {
        let h = expr.parse::<GraphExpr>()?.build()?;
        let (host, spec) = match kind {
            "g1" => build_g1(&h, k)?,
            "g2" => build_g2(&h, k)?,
            _ => build_komlos_bottle(&h, k)?,
        };
        let cert = certify_no_packing(&spec)?;
        check_certificate(&cert, &spec)?;
        let search = has_perfect_packing(&host, &h, Mode::Decide, &SearchOptions::default())?;
        println!(
            "{kind:<6} H={expr:<10} sizes={:?} delta={} certificate={} search={:?}",
            spec.sizes,
            spec.claimed_min_degree,
            serde_json::to_string(&cert)?,
            search
        );
    }
    Ok(())
}
