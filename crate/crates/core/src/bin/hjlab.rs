use std::io::{self, Write};

use anyhow::Context;

fn main() -> anyhow::Result<()> {
    let code = {
        let mut out = io::stdout().lock();
        let mut err = io::stderr().lock();
        let code = hjlab::cli::dispatch(std::env::args_os(), &mut out, &mut err);
        out.flush().context("flushing stdout")?;
        code
    };
    std::process::exit(code)
}
