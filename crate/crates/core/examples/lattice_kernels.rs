//! The pairing of the second worked example: rank, both kernels, and a splitting.

use genwitt::lmod::{k1_basis, k1_plus_k2_dim, k2_basis};
use genwitt::{GroupElem, Pairing, Scalar, Splitting};

fn main() -> genwitt::Result<()> {
    let s = |t: &str| Scalar::parse(t, 2);
    let p = Pairing::new(2, vec![vec![s("1")?, s("0")?], vec![s("0")?, s("1")?], vec![s("0")?, s("0+1s")?]])?;
    println!("P = {:?}", p.matrix());
    println!("rank = {}, nondegenerate = {}", p.rank(), p.is_nondegenerate());
    println!("Ker1 rank = {}", p.ker1().rank());
    println!("Ker2 = {:?}", p.ker2());
    println!("dbar columns = {:?}", p.dbar_columns());
    let (k1, k2) = (k1_basis(&p).len(), k2_basis(&p).len());
    println!("dim K1 = {k1}, dim K2 = {k2}, dim(K1+K2) = {}", k1_plus_k2_dim(&p));

    let degenerate = Pairing::from_ints(&[&[1, 2], &[2, 4], &[0, 0]]);
    println!("\ndegenerate P: rank {}, Ker1 rank {}", degenerate.rank(), degenerate.ker1().rank());

    let split = Splitting::new(&GroupElem(vec![1, 1, 0]))?;
    for a in [GroupElem(vec![2, 1, 0]), GroupElem(vec![0, 0, 5])] {
        let (g0, k) = split.decompose(&a);
        println!("{a} = {g0} + {k}·a0");
    }
    Ok(())
}
