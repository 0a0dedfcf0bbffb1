//! Contraction, breakpoints and reconstruction of words.

use hjlab::cube::Word;
use hjlab::pattern::{breakpoints, contract, realize, Pattern};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w: Word = "1122333111".parse()?;
    let s = contract(&w);
    let a = breakpoints(&w);
    println!("{w}: pattern {s}, breakpoints {:?}", a.points());
    assert_eq!(realize(&s, a.points(), w.len())?, w);

    // Every word of [3]^5 is recovered from its pattern and breakpoints.
    let mut by_len = [0usize; 6];
    for r in 0..243 {
        let w = Word::unrank(r, 5)?;
        let s = contract(&w);
        by_len[s.len()] += 1;
        assert_eq!(realize(&s, breakpoints(&w).points(), 5)?, w);
    }
    println!("[3]^5 by pattern length: {:?}", &by_len[1..]);

    let p: Pattern = "13232".parse()?;
    println!(
        "{p} at breakpoints 1,3,4,6 in n=8: {}",
        realize(&p, &[1, 3, 4, 6], 8)?
    );
    println!(
        "\"1223\" as a pattern: {}",
        "1223".parse::<Pattern>().unwrap_err()
    );
    Ok(())
}
