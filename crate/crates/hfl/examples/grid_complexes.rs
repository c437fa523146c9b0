// Grid complexes of a free-marked unknot and a Hopf link grid.

use hfl::grid::GridDiagram;
use hfl::half::Ext;

pub fn run_example() -> hfl::Result<Vec<usize>> {
    let unknot = GridDiagram::parse("n=3\nO: 0 1 2\nX: 1 0 -")?;
    let mut ranks = Vec::new();
    for delta in 1..=3 {
        let c = unknot.build_complex(&[Ext::PosInf], delta)?;
        c.check_d_squared()?;
        c.check_gradings(0)?;
        ranks.push(c.homology_ranks()?.total);
    }
    println!("free-marked unknot, s = +inf, delta = 1..3: ranks {ranks:?}");

    let hopf = GridDiagram::parse("n=4\nO: 0 1 2 3\nX: 2 3 0 1")?;
    println!("Hopf grid linking sums (doubled): {:?}", hopf.linking_sums());
    for s in [[Ext::PosInf, Ext::PosInf], [Ext::NegInf, Ext::NegInf], [Ext::Finite(1), Ext::Finite(-1)]] {
        let c = hopf.build_complex(&s, 2)?;
        c.check_d_squared()?;
        let h = c.homology_ranks()?;
        println!("  s = ({}, {}): rank {} by grading {:?}", s[0], s[1], h.total, h.by_grading);
    }
    println!("reduced along +1:\n{}", hopf.reduce(&[(0, true)])?);
    Ok(ranks)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
