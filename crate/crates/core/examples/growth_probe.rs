//! The pairing matrices behind the growth bound, for s = 1..5 in both branches.

use genwitt::hwt::{growth_probe, GrowthCase};

fn main() -> genwitt::Result<()> {
    for s in 1..=5 {
        for case in [GrowthCase::One, GrowthCase::Other] {
            let rep = growth_probe(s, case)?;
            println!("s={s} {case:?} c={} rank={} diagonal={} exact={}", rep.c, rep.rank, rep.expected_diagonal, rep.exact);
        }
    }
    Ok(())
}
