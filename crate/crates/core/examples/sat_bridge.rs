//! Encode avoider existence as CNF, solve it, and decode the model.
//!
//! Set `HJ_SOLVER` to an external solver command (for example `kissat`) to
//! use it instead of the built-in DPLL.

use std::time::{Duration, Instant};

use hjlab::cnf::{
    decode_model, encode, parse_dimacs, run_solver, solve_builtin, write_dimacs, SolveResult,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = std::env::var("HJ_SOLVER").ok();
    for n in 1..=4 {
        let inst = encode(n, 1, true)?;
        let text = write_dimacs(&inst);
        if n == 2 {
            println!("{}", text.lines().take(6).collect::<Vec<_>>().join("\n"));
        }
        let start = Instant::now();
        let result = match &solver {
            Some(cmd) => run_solver(&text, cmd, Some(Duration::from_secs(60))),
            None => solve_builtin(&parse_dimacs(&text)?),
        };
        print!(
            "n={n}: {} vars, {} clauses, {} in {:?}",
            inst.num_vars,
            inst.clauses.len(),
            result.name(),
            start.elapsed()
        );
        if let SolveResult::Sat(model) = &result {
            let c = decode_model(model, n, 1)?;
            print!(", avoider {}", c.bitstring());
        }
        println!();
    }

    // Lines with up to two active intervals make the problem harder.
    for n in 2..=3 {
        let inst = encode(n, 2, true)?;
        let result = solve_builtin(&parse_dimacs(&write_dimacs(&inst))?);
        println!("n={n}, m=2: {} lines, {}", inst.line_count(), result.name());
    }
    Ok(())
}
