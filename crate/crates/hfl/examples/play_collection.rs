// Playing songs to a hypercubical collection and compressing it.

use hfl::coeff::{SparseMatrix, TruncatedRing};
use hfl::songs::{compressed_collection, play, relation_instances, HypercubicalCollection, Song};

/// A two-letter collection on two generators: `A_{} = 0`, `A_{1} = U_1`,
/// `A_{2} = U_2` (scalars) and `A_{12}` mixing the generators.
fn collection(register: Vec<u32>) -> hfl::Result<HypercubicalCollection> {
    let ring = TruncatedRing::new(2, 6)?;
    let scalar = |i: usize| SparseMatrix::from_triples(ring, 2, 2, (0..2).map(|g| (g, g, ring.var(i))));
    let swap = SparseMatrix::from_triples(ring, 2, 2, vec![(0, 1, ring.one()), (1, 0, ring.one())]);
    let elements = vec![SparseMatrix::zero(ring, 2, 2), scalar(0), scalar(1), swap];
    HypercubicalCollection::new(vec![1, 2], elements, register)
}

pub fn run_example() -> hfl::Result<usize> {
    let coll = collection(vec![2, 3])?;
    let middles = [Song::parse("(12)")?, Song::parse("({1,2})")?];
    let relations = relation_instances(&coll.alphabet, &middles)?;
    for (name, sum) in &relations {
        assert!(play(sum, &coll)?.is_zero(), "relation {name} plays to a nonzero matrix");
    }
    let comp = compressed_collection(&coll)?;
    comp.check_relations()?;
    // a scalar letter played d times is its d-th power
    assert_eq!(comp.element(&[1])?.get(0, 0), coll.ring().monomial_element(&[2, 0]));
    println!("{} relations play to zero; compressed A_{{1,2}}:", relations.len());
    for (r, c, e) in comp.element(&[1, 2])?.entries() {
        println!("  ({r},{c}) {e}");
    }
    Ok(relations.len())
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
