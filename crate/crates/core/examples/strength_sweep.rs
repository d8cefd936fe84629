//! λ sweep with the tensile strength adjusted so that every λ represents the
//! same material, on the coarse disk.
//!
//! `cargo run --release --example strength_sweep`

use std::path::PathBuf;

use nhpd::io::{adjusted_strength, load_config, sweep, sweep_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    for lambda in [2.5, 3.0, 3.5] {
        println!("lambda {lambda}: input strength {:.3} MPa", adjusted_strength(3.81, 3.0, lambda));
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let mut config = load_config(dir.join("configs/disk_sweep.toml"))?;
    config.mesh = dir.join("meshes/disk_coarse.msh");
    config.output.fields = nhpd::io::config::FieldFormat::None;
    let out = std::env::temp_dir().join("nhpd_sweep");
    let entries = sweep(&config, &out)?;
    print!("{}", sweep_csv(&config, &entries));
    Ok(())
}
