//! Both worked examples as tab-separated reports.

use genwitt::worked;

fn main() -> genwitt::Result<()> {
    for name in worked::NAMES {
        println!("# {name}");
        print!("{}", worked::run(name)?.to_tsv());
    }
    Ok(())
}
