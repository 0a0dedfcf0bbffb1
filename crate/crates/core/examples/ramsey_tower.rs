//! Upper bounds for hypergraph Ramsey numbers and the tower of n_i.

use hjlab::bounds::{ramsey_upper, tower, HjFacts, DEFAULT_CAP_DIGITS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (t, p, q) in [
        (1, 4, 4),
        (2, 4, 4),
        (2, 5, 5),
        (3, 4, 4),
        (3, 5, 4),
        (3, 5, 5),
        (4, 5, 5),
    ] {
        let v = ramsey_upper(t, p, q)?;
        println!("R^({t})({p},{q}) <= {}", v.compact());
    }
    println!("HJ(2, r) = r: HJ(2, 2) = {:?}", HjFacts.hj(2, 2));
    println!();
    print!("{}", tower(DEFAULT_CAP_DIGITS));
    Ok(())
}
