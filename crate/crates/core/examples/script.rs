//! Running the script language in-process: the same commands the
//! `conelab` binary exposes, on an inline script.

use conelab::script::{run_source, RunOptions};

const SOURCE: &str = "
# a smooth conic degenerating to a node
ring x, y, t;
param t;
poly f = x*y - t;
";

fn main() -> conelab::Result<()> {
    let opts = RunOptions {
        verify: true,
        ..Default::default()
    };
    for command in ["s0", "coalesce", "smf", "verdict"] {
        let report = run_source(command, SOURCE, &opts)?;
        print!("{}", report.render());
    }
    let json = run_source("verdict", SOURCE, &opts)?
        .without_timing()
        .to_json();
    println!("{json}");
    Ok(())
}
