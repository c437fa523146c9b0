// Depth-filtration spectral sequence of the total complex of a square: the
// Koszul square of `U_1` and `U_2` over a truncated ring.

use std::collections::BTreeMap;

use hfl::coeff::{spectral_sequence, SparseMatrix, TruncatedRing};
use hfl::hyperbox::{Hyperbox, Vertex};

pub fn run_example() -> hfl::Result<Vec<usize>> {
    let ring = TruncatedRing::new(2, 2)?;
    let u1 = SparseMatrix::from_triples(ring, 1, 1, vec![(0, 0, ring.var(0))]);
    let u2 = SparseMatrix::from_triples(ring, 1, 1, vec![(0, 0, ring.var(1))]);
    // points are indexed last axis fastest: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), u1.clone());
    maps.insert((1, 1), u1);
    maps.insert((0, 2), u2.clone());
    maps.insert((2, 2), u2);
    // every edge has degree zero and U_i lowers the grading by two
    let gradings = [0, 2, 2, 4];
    let vertices = (0..4).map(|k| Vertex::new(vec![format!("x{k}")], Some(vec![gradings[k]]))).collect();
    let h = Hyperbox::new(ring, vec![1, 1], vertices, maps)?;
    h.validate()?;
    h.check_degrees()?;
    let ss = spectral_sequence(&h.depth_filtered()?)?;
    let totals: Vec<usize> = ss.pages.iter().map(|p| p.total).collect();
    println!("page totals {totals:?}, E_inf {}, H {}", ss.infinity.total, ss.homology_total);
    for (&(level, grading), &r) in &ss.infinity.ranks {
        println!("  E_inf level {level} grading {grading}: {r}");
    }
    assert_eq!(ss.infinity.total, ss.homology_total);
    Ok(totals)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
