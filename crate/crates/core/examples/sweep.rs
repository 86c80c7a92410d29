//! A verification sweep over `d`, printed as CSV.

use polydecomp::census::CensusConfig;
use polydecomp::cli::{cmd_sweep, Format, Mode, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        n: 2..=2,
        d: 2..=12,
        q: vec![2, 3],
        mode: Mode::Verify,
        format: Format::Csv,
        config: CensusConfig::default(),
        approx: true,
    };
    let code = cmd_sweep(&spec, &mut std::io::stdout().lock())?;
    std::process::exit(code);
}
