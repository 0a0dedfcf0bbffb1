//! Words, ranks, interval lines and the 24-element symmetry group.

use hjlab::cube::{
    apply_symmetry, enumerate_interval_lines, enumerate_m_interval_lines, interval_line_count,
    Coloring, Symmetry, Word,
};
use hjlab::search::violation_count;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w: Word = "1322".parse()?;
    println!("{w} has rank {} in [3]^4", w.rank());
    println!("rank 40 in [3]^4 is {}", Word::unrank(40, 4)?);

    for n in 1..=4 {
        println!(
            "n={n}: {} interval lines, {} lines in total (4^n - 3^n = {})",
            interval_line_count(n),
            enumerate_m_interval_lines(n, n).count(),
            4usize.pow(n as u32) - 3usize.pow(n as u32)
        );
    }

    println!("interval lines of [3]^2:");
    for line in enumerate_interval_lines(2) {
        let [a, b, c] = line.points();
        println!("  active {}..{}  {a} {b} {c}", line.lo(), line.hi());
    }

    // A colouring of [3]^2 and its orbit under the symmetry group.
    let c = Coloring::from_colours(2, &[0, 0, 1, 0, 1, 0, 1, 0, 0])?;
    println!(
        "colouring {} has {} monochromatic interval lines",
        c.bitstring(),
        violation_count(&c)
    );
    let mut orbit: Vec<String> = Symmetry::all()
        .iter()
        .map(|g| apply_symmetry(&c, g).bitstring())
        .collect();
    orbit.sort();
    orbit.dedup();
    println!("orbit size {}: every image has the same count", orbit.len());
    for g in Symmetry::all() {
        assert_eq!(
            violation_count(&apply_symmetry(&c, &g)),
            violation_count(&c)
        );
    }

    print!("file format:\n{}", c.to_file_string());
    Ok(())
}
