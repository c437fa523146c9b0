// Surgery on the Hopf link with framing (p1 1; 1 p2) in folded truncation:
// p1 p2 - 1 Spin^c classes, each with homology F[U]/(U^delta).

use hfl::surgery::{assemble, homology, hopf_framing, hopf_model, Mode, Truncation};

pub fn run_example() -> hfl::Result<Vec<(usize, usize)>> {
    let model = hopf_model();
    let mut out = Vec::new();
    for (p1, p2) in [(2, 2), (2, 3)] {
        let framing = hopf_framing(p1, p2);
        let t = Truncation::defaults(Mode::Folded, &model, &framing, None, None)?;
        let sc = assemble(&model, &framing, &t, 2)?;
        sc.complex.check_d_squared()?;
        let (h, _) = homology(&model, &framing, &t, 2)?;
        println!("framing ({p1} 1; 1 {p2}), b = {}, m = {:?}, {} crossover entries", t.b, t.m, sc.crossovers);
        for c in &h {
            println!("  {}  rank {}  gradings {:?}", c.class.label(), c.stable.total, c.stable.by_grading);
        }
        out.push((h.len(), h.iter().map(|c| c.stable.total).sum()));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
