// The command-line front end driven in-process.

use hfl::cli::run;

pub fn run_example() -> hfl::Result<Vec<String>> {
    let commands: [&[&str]; 3] = [
        &["hfl", "songs", "symphony", "--n", "4", "--count"],
        &["hfl", "surgery", "--model", "hopf", "--p1", "2", "--p2", "2", "--delta", "2", "--mode", "folded"],
        &["hfl", "surgery", "towers", "--model", "unknot", "--framing", "-1", "--delta", "3", "--b", "4"],
    ];
    let mut outputs = Vec::new();
    for args in commands {
        let out = run(args.iter().copied());
        if out.code != 0 {
            return Err(hfl::HflError::invariant(format!("{args:?} failed: {}", out.stderr)));
        }
        println!("$ {}\n{}", args.join(" "), out.stdout);
        outputs.push(out.stdout);
    }
    Ok(outputs)
}

#[allow(dead_code)]
fn main() -> hfl::Result<()> {
    run_example().map(|_| ())
}
