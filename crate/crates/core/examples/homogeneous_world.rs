//! Pattern colourings, where the colour of a word depends only on its
//! contraction. Every one of them has a monochromatic gadget line.

use hjlab::certificate::Certificate;
use hjlab::gadgets::{
    extract_line, find_interval_line, pattern_coloring, pipeline_chain, ColourVector,
    HomogeneousChain, Method,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    for x in 0u8..32 {
        let d = ColourVector::from_index(x);
        let c = pattern_coloring(n, &d)?;
        let gadget = find_interval_line(&c, Method::Gadget)
            .expect("pattern colourings always have a gadget line");
        let chain = HomogeneousChain::flat((1..n).collect(), d);
        chain.verify(&c)?;
        let extracted = extract_line(&c, &chain)?;
        println!(
            "d={d}: gadget line {}..{} colour {}, extracted {}..{} colour {}",
            gadget.line.lo(),
            gadget.line.hi(),
            gadget.colour,
            extracted.line.lo(),
            extracted.line.hi(),
            extracted.colour
        );
    }

    // The pipeline builds its own chain from the colouring.
    let d: ColourVector = "01100".parse()?;
    let c = pattern_coloring(6, &d)?;
    let chain = pipeline_chain(&c).expect("homogeneous chain");
    println!(
        "pipeline chain for d={d}, n=6: T0={:?}, d={}",
        chain.sets[0], chain.d
    );
    print!("{}", Certificate::MonoLine(extract_line(&c, &chain)?));
    Ok(())
}
