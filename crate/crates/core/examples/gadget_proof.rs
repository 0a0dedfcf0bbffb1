//! The five gadget lines for a quadruple, and the 32-case colour table.

use hjlab::gadgets::{
    case_lemma_check, gadget_words, nsets, verify_gadget_lines, Quadruple, GADGET_PATTERNS,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let patterns: Vec<String> = GADGET_PATTERNS
        .iter()
        .map(|s| s.iter().map(|l| char::from(b'0' + l)).collect())
        .collect();
    println!("patterns s1..s5: {}", patterns.join(" "));

    let q = Quadruple::new([2, 3, 5, 6], 8)?;
    let words = gadget_words(&q);
    println!("quadruple {:?} in n=8", q.a());
    for (i, w) in words.w.iter().enumerate() {
        println!("  w{} = {w}", i + 1);
    }
    for gl in verify_gadget_lines(&q)? {
        let [x, y, z] = &gl.members;
        println!(
            "  L{}: active {}..{}  {x} {y} {z}",
            gl.index,
            gl.line.lo(),
            gl.line.hi()
        );
    }

    let mut checked = 0;
    for n in 5..=9 {
        for q in Quadruple::all(n) {
            verify_gadget_lines(&q)?;
            checked += 1;
        }
    }
    println!("gadget geometry holds for all {checked} quadruples with n <= 9");

    let table = case_lemma_check()?;
    for i in 1..=5 {
        println!(
            "  {} colour vectors first hit a singleton at N{i}",
            table.count_with_index(i)
        );
    }
    for (d, _) in table.rows.iter().filter(|(_, i)| *i == 5) {
        let sets: Vec<usize> = nsets(d).iter().map(|s| s.len()).collect();
        println!("  d={d} reaches N5 (set sizes {sets:?})");
    }
    Ok(())
}
