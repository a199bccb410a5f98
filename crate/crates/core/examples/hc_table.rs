//! A Harish-Chandra multiplicity table on an n = r = 2 datum. Takes about a
//! minute; pass a smaller depth as the first argument to go faster.

use genwitt::config::Config;
use genwitt::hwt::{hc_table, offsets, HwtSpec, TensorTop};

fn main() -> genwitt::Result<()> {
    let depth: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let cfg = Config::from_json(include_str!("../configs/hc_rank2.json"))?;
    let split = cfg.splitting()?;
    let spec = HwtSpec::new(cfg.pairing.clone(), split.clone(), Box::new(TensorTop::new(cfg.desc()?)))?;
    println!("k\toffset\tranks\tstable");
    for cell in hc_table(&spec, depth, &offsets(&split, 2), 1, 3) {
        println!("{}\t{}\t{:?}\t{}", cell.k, cell.offset, cell.ranks, cell.stable);
    }
    Ok(())
}
