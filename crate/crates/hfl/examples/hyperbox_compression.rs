// Compressing hyperboxes: a length-three box of U maps becomes a single U^3
// edge, and an elementary enlargement does not change the compression.

use std::collections::BTreeMap;

use hfl::coeff::{SparseMatrix, TruncatedRing};
use hfl::hyperbox::{Hyperbox, Vertex};

pub fn run_example() -> hfl::Result<Hyperbox> {
    let ring = TruncatedRing::new(2, 5)?;
    let u1 = SparseMatrix::from_triples(ring, 1, 1, vec![(0, 0, ring.var(0))]);
    let u2 = SparseMatrix::from_triples(ring, 1, 1, vec![(0, 0, ring.var(1))]);
    // a 3 x 1 box: U_1 along the first axis, U_2 along the second
    let size = vec![3, 1];
    let probe = Hyperbox::new(ring, size.clone(), vec![Vertex::new(vec!["x".into()], None); 8], BTreeMap::new())?;
    let mut maps = BTreeMap::new();
    for k in 0..probe.num_points() {
        if probe.step(k, 1).is_some() {
            maps.insert((k, 1), u1.clone());
        }
        if probe.step(k, 2).is_some() {
            maps.insert((k, 2), u2.clone());
        }
    }
    let h = Hyperbox::new(ring, size, probe.vertices.clone(), maps)?;
    h.validate()?;
    let c = h.compress()?;
    c.validate()?;
    assert_eq!(c.size, vec![1, 1]);
    assert_eq!(c.map(0, 1).get(0, 0), ring.monomial_element(&[3, 0]));
    assert_eq!(h.enlarge(0, 1)?.compress()?, c);
    let total = c.total_complex()?;
    println!("compressed square: {} generators, H rank {}", total.len(), total.homology_ranks()?.total);
    Ok(c)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
