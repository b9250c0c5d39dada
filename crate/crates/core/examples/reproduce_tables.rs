//! Runs named presets through the experiment runner and writes the CSV
//! artifacts, like `sinc-kdv solve --preset ...`.
//!
//! cargo run --release --example reproduce_tables -- [presets] [out-dir]
//!
//! `presets` is a comma list or `all` (default `table1,table6`).

use sinc_kdv::runner::{self, KeyValues, RunStatus};

fn main() -> sinc_kdv::Result<()> {
    let mut args = std::env::args().skip(1);
    let presets = args.next().unwrap_or_else(|| "table1,table6".into());
    let out = args.next().unwrap_or_else(|| "out".into());

    let mut flags = KeyValues::new();
    flags.insert("preset".into(), presets);
    flags.insert("out".into(), out);
    let configs = runner::resolve_config(&flags, None)?;
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    for result in runner::run_all(&configs, jobs) {
        let art = result?;
        println!("{} -> {}", art.name, art.records_csv.display());
        for n in &art.notices {
            println!("  note: {n}");
        }
        if art.status != RunStatus::Success {
            println!("  status: {:?}", art.status);
        }
        for r in &art.records {
            println!(
                "  t = {:<8} L_inf = {:.5e}  L_2 = {:.5e}",
                r.t, r.l_inf, r.l_2
            );
        }
    }
    Ok(())
}
