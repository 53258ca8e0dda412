//! Run the packaged verifications and print markdown reports.

use symplectic_pi1::cli::{emit_report, OutputFormat, RunConfig};
use symplectic_pi1::pipeline::{verify_thm31, verify_thm33_witness, verify_thm34, Caps, Thm31Options};

fn main() -> symplectic_pi1::Result<()> {
    let cfg = RunConfig {
        format: OutputFormat::Markdown,
        ..RunConfig::default()
    };
    let caps = Caps {
        samples: Some(2000),
        ..Caps::default()
    };
    let reports = [
        verify_thm31(4, 3, 2, cfg.seed, &caps, &Thm31Options::default())?,
        verify_thm33_witness(7)?,
        verify_thm34(&caps, None, false, cfg.seed)?,
    ];
    for r in &reports {
        print!("{}", emit_report(r, &cfg)?);
        println!();
    }
    Ok(())
}
