//! Colourings with no monochromatic interval line: exhaustive search for
//! small n, local search beyond it.

use hjlab::certificate::verify_avoider;
use hjlab::search::{count_avoiders, exhaustive_search, local_search, ExhaustiveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        let r = exhaustive_search(n, &ExhaustiveOptions::default())?;
        let s = r.stats;
        println!(
            "n={n} exhaustive: {} after {} nodes ({} line prunes, {} symmetry prunes) in {:?}",
            r.outcome.name(),
            s.nodes,
            s.line_prunes,
            s.symmetry_prunes,
            r.elapsed
        );
        if let Some(c) = r.outcome.avoider() {
            verify_avoider(c)?;
            println!("  lex-least avoider {}", c.bitstring());
        }
    }
    println!("avoiders of [3]^2: {}", count_avoiders(2, 3)?);

    for seed in 0..3 {
        let r = local_search(4, seed, 200_000)?;
        println!(
            "n=4 local seed={seed}: {} after {} flips, {} restarts",
            r.outcome.name(),
            r.stats.flips,
            r.stats.restarts
        );
        if let Some(c) = r.outcome.avoider() {
            verify_avoider(c)?;
        }
    }
    Ok(())
}
