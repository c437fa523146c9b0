// Surgery on the unknot with framing +1 and -1: one Spin^c class whose
// truncated homology is F[U]/(U^delta), generated by a staircase cycle.

use hfl::coeff::RingElement;
use hfl::surgery::{assemble, homology, towers, unknot_model, Framing, Mode, Truncation};

pub fn run_example() -> hfl::Result<Vec<usize>> {
    let model = unknot_model();
    let mut ranks = Vec::new();
    for lambda in [1, -1] {
        let framing = Framing::knot(lambda);
        let t = Truncation::defaults(Mode::KnotB, &model, &framing, Some(4), None)?;
        for delta in 1..=3 {
            let (h, _) = homology(&model, &framing, &t, delta)?;
            ranks.push(h[0].stable.total);
        }
        for (class, r, profile) in towers(&model, &framing, &t, 3)? {
            println!("lambda = {lambda}: class {} ranks {r:?} towers {profile}", class.label());
        }
    }
    // sum_s U^{|s|(|s|-1)/2} a_s is a cycle that survives in homology
    let framing = Framing::knot(1);
    let t = Truncation::defaults(Mode::KnotB, &model, &framing, Some(6), None)?;
    let sc = assemble(&model, &framing, &t, 4)?;
    let ring = sc.complex.ring;
    let terms: Vec<(usize, RingElement)> = (-6i64..=6)
        .map(|s| {
            let k = (s.abs() * (s.abs() - 1) / 2) as u32;
            (sc.index_of(0, &[2 * s], 0).expect("a_s is present"), ring.monomial_element(&[k]))
        })
        .collect();
    let (cycle, nonzero) = sc.complex.classify_element(&terms)?;
    println!("staircase element: cycle {cycle}, nonzero in homology {nonzero}");
    Ok(ranks)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
