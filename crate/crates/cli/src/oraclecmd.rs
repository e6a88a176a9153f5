//! The `oracle` subcommand: the quadratic reference join, printed in
//! canonical order as `<u> <v>` binary strings.

use std::io::Write;
use std::path::Path;

use anyhow::Context;

use simjoin_core::cube::brute_force_join;
use simjoin_core::point::PointSet;

pub fn execute(input: &Path, r: u32) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("cannot read {}", input.display()))?;
    let set = PointSet::parse(&text).with_context(|| format!("parsing {}", input.display()))?;
    let pairs = brute_force_join(&set, r)?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for (a, b) in pairs {
        writeln!(out, "{a} {b}")?;
    }
    out.flush()?;
    Ok(())
}
