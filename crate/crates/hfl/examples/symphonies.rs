// Standard symphonies: song counts and the shape identities of every song.

use hfl::songs::symphony_n;

pub fn run_example() -> hfl::Result<Vec<usize>> {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let s = symphony_n(n);
        for song in &s.songs {
            // k items, l harmonies of sizes h_i: k = 2n + l - 1, sum h_i = n + l - 1
            let (k, h) = song.shape();
            let l = h.len();
            assert_eq!(k, 2 * n + l - 1, "length of {song}");
            assert_eq!(h.iter().sum::<usize>(), n + l - 1, "harmony sizes of {song}");
        }
        counts.push(s.len());
    }
    println!("symphony sizes for n = 1..5: {counts:?}");
    println!("alpha_2 = {}", symphony_n(2));
    Ok(counts)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    let counts = run_example()?;
    assert_eq!(&counts[2..], &[7, 97, 2051]);
    Ok(())
}
