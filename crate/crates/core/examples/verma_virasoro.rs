//! Weight multiplicities of the simple quotient on the Virasoro-type datum
//! n = r = 1, P = (1), σ = √2, against the partition numbers.

use genwitt::hwt::{stabilized_rank, HwtSpec};
use genwitt::{GroupElem, Pairing, Scalar, Splitting};

fn main() -> genwitt::Result<()> {
    let p = Pairing::new(2, vec![vec![Scalar::from_int(1)]])?;
    let split = Splitting::new(&GroupElem(vec![1]))?;
    let spec = HwtSpec::vc(p, split, Scalar::from_int(0), vec![Scalar::sqrt_of(2)])?;
    for k in 1..=6 {
        let cell = stabilized_rank(&spec, k, &GroupElem(vec![0]), 1, 3);
        println!("k={k} rank={} ranks={:?} stable={}", cell.rank(), cell.ranks, cell.stable);
    }
    Ok(())
}
