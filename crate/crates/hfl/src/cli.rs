//! Command-line front end. `run` parses arguments, performs the computation
//! and returns the process exit code together with stdout and stderr text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeff::{spectral_sequence, FilteredComplex, FilteredJson, HomologyRanks, Page, SparseMatrix};
use crate::error::{HflError, Result};
use crate::grid::GridDiagram;
use crate::half::Ext;
use crate::hyperbox::{Hyperbox, HyperboxJson};
use crate::songs::{compressed_collection, play, symphony_n, CollectionJson, HypercubicalCollection, Song, SongSum};
use crate::surgery::model::builtin;
use crate::surgery::{assemble, homology, hopf_framing, towers, Framing, Mode, SystemModel, Truncation};

#[derive(Debug, Parser)]
#[command(name = "hfl", version, about = "Floer homology of integral link surgeries at desk scale")]
pub struct Cli {
    /// Emit JSON instead of tab-separated text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symphonies and played songs.
    Songs(SongsArgs),
    /// Hyperboxes of chain complexes.
    Hyperbox(HyperboxArgs),
    /// Grid complexes of links.
    Grid(GridArgs),
    /// Truncated surgery complexes.
    Surgery(SurgeryArgs),
    /// Coefficient-level tools.
    Coeff(CoeffArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SongsAction {
    Symphony,
    Play,
}

#[derive(Debug, Args)]
pub struct SongsArgs {
    pub action: SongsAction,
    /// Number of letters of the symphony.
    #[arg(long)]
    pub n: Option<usize>,
    /// Print only the number of songs.
    #[arg(long)]
    pub count: bool,
    /// Collection file (JSON) to play songs to.
    #[arg(long)]
    pub file: Option<String>,
    /// Sum of songs to play, e.g. "(12) + ({1,2})"; defaults to the symphony.
    #[arg(long)]
    pub song: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HyperboxAction {
    Validate,
    Compress,
}

#[derive(Debug, Args)]
pub struct HyperboxArgs {
    pub action: HyperboxAction,
    /// Hyperbox file (JSON).
    #[arg(long)]
    pub file: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GridAction {
    Check,
    Homology,
    Reduce,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    pub action: GridAction,
    /// Grid file.
    #[arg(long)]
    pub file: String,
    /// Extended lattice point, e.g. "inf,-1/2".
    #[arg(long)]
    pub s: Option<String>,
    /// Truncation order of the coefficient ring.
    #[arg(long)]
    pub delta: Option<u32>,
    /// Oriented sublink for `reduce`, e.g. "1,-2" (1-based, sign is orientation).
    #[arg(long, allow_hyphen_values = true)]
    pub sublink: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SurgeryAction {
    Homology,
    Towers,
    Check,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    #[value(name = "knot_b")]
    KnotB,
    Combined,
    Folded,
    #[value(name = "vertical_only")]
    VerticalOnly,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::KnotB => Mode::KnotB,
            ModeArg::Combined => Mode::Combined,
            ModeArg::Folded => Mode::Folded,
            ModeArg::VerticalOnly => Mode::VerticalOnly,
        }
    }
}

#[derive(Debug, Args)]
pub struct SurgeryArgs {
    pub action: Option<SurgeryAction>,
    /// Built-in model (unknot, hopf) or a model file (JSON).
    #[arg(long)]
    pub model: String,
    /// Framing matrix, rows separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    pub framing: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p2: Option<i64>,
    /// Truncation mode (knot_b for knots, folded for links by default).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub b: Option<i64>,
    /// Diagonal enlargement, one value or one per component ("m" or "m1,m2").
    #[arg(long)]
    pub mtilde: Option<String>,
    /// Truncation order (for `towers`, the largest order probed).
    #[arg(long, default_value_t = 1)]
    pub delta: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoeffAction {
    Ss,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    pub action: CoeffAction,
    /// Filtered complex file (JSON).
    #[arg(long)]
    pub file: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("hfl: {e}\n") },
    }
}

/// Run a parsed command and return its standard output.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Songs(a) => songs(a, cli.json),
        Command::Hyperbox(a) => hyperbox(a, cli.json),
        Command::Grid(a) => grid(a, cli.json),
        Command::Surgery(a) => surgery(a, cli.json),
        Command::Coeff(a) => coeff(a, cli.json),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HflError::validation(format!("cannot read {path}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    serde_json::from_str(&read_file(path)?).map_err(|e| HflError::validation(format!("malformed JSON in {path}: {e}")))
}

fn to_json_text(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| HflError::invariant(format!("serialization failed: {e}")))
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| HflError::validation(format!("missing --{flag}")))
}

// ---- songs ----

fn parse_song_sum(text: &str, alphabet: &[u32]) -> Result<SongSum> {
    let songs: Result<Vec<Song>> = text.split('+').map(|t| Song::parse(t.trim())).collect();
    SongSum::from_songs(alphabet, songs?)
}

fn matrix_rows(m: &SparseMatrix) -> Vec<(usize, usize, String)> {
    let mut rows: Vec<(usize, usize, String)> = m.entries().map(|(r, c, e)| (r, c, e.to_string())).collect();
    rows.sort();
    rows
}

fn songs(a: &SongsArgs, as_json: bool) -> Result<String> {
    match a.action {
        SongsAction::Symphony => {
            let n = require(&a.n, "n")?;
            if n > 7 {
                return Err(HflError::validation("--n is limited to 7 letters"));
            }
            let s = symphony_n(n);
            if as_json {
                let songs: Vec<String> = s.songs.iter().map(|x| x.to_string()).collect();
                return to_json_text(&json!({ "n": n, "count": s.len(), "songs": if a.count { Value::Null } else { json!(songs) } }));
            }
            if a.count {
                return Ok(format!("{}\n", s.len()));
            }
            let mut out = String::new();
            for song in &s.songs {
                writeln!(out, "{song}").unwrap();
            }
            Ok(out)
        }
        SongsAction::Play => {
            let file = require(&a.file, "file")?;
            let coll = HypercubicalCollection::from_json(&read_json::<CollectionJson>(&file)?)?;
            match &a.song {
                Some(text) => {
                    let sum = parse_song_sum(text, &coll.alphabet)?;
                    let m = play(&sum, &coll)?;
                    let rows = matrix_rows(&m);
                    if as_json {
                        return to_json_text(&json!({ "song": sum.to_string(), "entries": m.to_entries() }));
                    }
                    let mut out = String::from("row\tcol\tentry\n");
                    for (r, c, e) in rows {
                        writeln!(out, "{r}\t{c}\t{e}").unwrap();
                    }
                    Ok(out)
                }
                None => {
                    let comp = compressed_collection(&coll)?;
                    if as_json {
                        return to_json_text(&comp.to_json());
                    }
                    let mut out = String::from("subset\trow\tcol\tentry\n");
                    for mask in 1..comp.elements.len() {
                        let letters: Vec<String> =
                            (0..comp.alphabet.len()).filter(|i| mask >> i & 1 == 1).map(|i| comp.alphabet[i].to_string()).collect();
                        for (r, c, e) in matrix_rows(&comp.elements[mask]) {
                            writeln!(out, "{{{}}}\t{r}\t{c}\t{e}", letters.join(",")).unwrap();
                        }
                    }
                    Ok(out)
                }
            }
        }
    }
}

// ---- hyperbox ----

fn hyperbox(a: &HyperboxArgs, as_json: bool) -> Result<String> {
    let h = Hyperbox::from_json(&read_json::<HyperboxJson>(&a.file)?)?;
    match a.action {
        HyperboxAction::Validate => {
            h.validate()?;
            h.check_degrees()?;
            let size: Vec<String> = h.size.iter().map(|d| d.to_string()).collect();
            if as_json {
                return to_json_text(&json!({ "valid": true, "size": h.size, "points": h.num_points() }));
            }
            Ok(format!("ok\tsize ({})\tpoints {}\n", size.join(","), h.num_points()))
        }
        HyperboxAction::Compress => to_json_text(&h.compress()?.to_json()),
    }
}

// ---- grid ----

fn grid_point(g: &GridDiagram, text: &str) -> Result<Vec<Ext>> {
    let mut s = Ext::parse_list(text)?;
    let ell = g.num_components();
    if s.len() == ell + g.num_free() && s.len() > ell {
        // coordinates of free markings carry no filtration and must be +inf
        if s[ell..].iter().any(|v| *v != Ext::PosInf) {
            return Err(HflError::validation("coordinates of free markings must be inf"));
        }
        s.truncate(ell);
    }
    Ok(s)
}

fn by_grading_text(h: &HomologyRanks) -> String {
    if h.by_grading.is_empty() {
        return "-".to_string();
    }
    h.by_grading.iter().map(|(g, r)| format!("{g}:{r}")).collect::<Vec<_>>().join(",")
}

/// Sample values per component: both infinities and every lk/2 + Z value
/// within one step of the Alexander range.
fn sample_points(g: &GridDiagram) -> Result<Vec<Vec<Ext>>> {
    let gr = g.gradings()?;
    let lk = g.linking_sums();
    let mut axes = Vec::new();
    for (c, &l) in lk.iter().enumerate() {
        let lo = gr.alexander2.iter().map(|a| a[c]).min().unwrap_or(0) - 2;
        let hi = gr.alexander2.iter().map(|a| a[c]).max().unwrap_or(0) + 2;
        let mut vals = vec![Ext::NegInf, Ext::PosInf];
        let start = lo + (l - lo).rem_euclid(2);
        vals.extend((start..=hi).step_by(2).map(Ext::Finite));
        axes.push(vals);
    }
    let mut points = vec![vec![]];
    for vals in axes {
        points = points.into_iter().flat_map(|p: Vec<Ext>| vals.iter().map(move |v| [p.clone(), vec![*v]].concat())).collect();
    }
    Ok(points)
}

fn grid(a: &GridArgs, as_json: bool) -> Result<String> {
    let g = GridDiagram::parse(&read_file(&a.file)?)?;
    match a.action {
        GridAction::Check => {
            let max_delta = a.delta.unwrap_or(2);
            let points = match &a.s {
                Some(t) => vec![grid_point(&g, t)?],
                None => sample_points(&g)?,
            };
            let mut checked = 0;
            for p in &points {
                for d in 1..=max_delta {
                    let c = g.build_complex(p, d)?;
                    c.check_d_squared()?;
                    c.check_gradings(0)?;
                    checked += 1;
                }
            }
            if as_json {
                return to_json_text(&json!({ "ok": true, "n": g.n, "components": g.num_components(),
                    "free": g.num_free(), "points": points.len(), "complexes": checked }));
            }
            Ok(format!(
                "ok\tn {}\tcomponents {}\tfree {}\tpoints {}\tcomplexes {checked}\n",
                g.n,
                g.num_components(),
                g.num_free(),
                points.len()
            ))
        }
        GridAction::Homology => {
            let s = grid_point(&g, &require(&a.s, "s")?)?;
            let delta = a.delta.unwrap_or(1);
            let h = g.build_complex(&s, delta)?.homology_ranks()?;
            if as_json {
                return to_json_text(&json!({ "s": s.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "delta": delta, "homology": h }));
            }
            let mut out = String::from("grading\trank\n");
            for (k, r) in &h.by_grading {
                writeln!(out, "{k}\t{r}").unwrap();
            }
            writeln!(out, "total\t{}", h.total).unwrap();
            Ok(out)
        }
        GridAction::Reduce => {
            let oriented = parse_sublink(&require(&a.sublink, "sublink")?)?;
            let r = g.reduce(&oriented)?;
            if as_json {
                return to_json_text(&json!({ "grid": r.to_string(), "components": r.num_components(), "free": r.num_free() }));
            }
            Ok(r.to_string())
        }
    }
}

fn parse_sublink(text: &str) -> Result<Vec<(usize, bool)>> {
    text.split(',')
        .map(|t| {
            let v: i64 = t.trim().parse().map_err(|_| HflError::validation(format!("bad sublink entry {t:?}")))?;
            if v == 0 {
                return Err(HflError::validation("sublink components are numbered from 1"));
            }
            Ok((v.unsigned_abs() as usize - 1, v > 0))
        })
        .collect()
}

// ---- surgery ----

fn load_model(name: &str) -> Result<SystemModel> {
    if name.ends_with(".json") || Path::new(name).is_file() {
        SystemModel::from_json(&read_file(name)?)
    } else {
        builtin(name)
    }
}

fn surgery_setup(a: &SurgeryArgs) -> Result<(SystemModel, Framing, Truncation)> {
    let model = load_model(&a.model)?;
    let framing = match (&a.framing, a.p1, a.p2) {
        (Some(t), None, None) => Framing::parse(t)?,
        (None, Some(p1), Some(p2)) => hopf_framing(p1, p2),
        (None, Some(p), None) if model.components == 1 => Framing::knot(p),
        (Some(_), _, _) => return Err(HflError::validation("give either --framing or --p1/--p2, not both")),
        _ => return Err(HflError::validation("missing framing: use --framing or --p1/--p2")),
    };
    let mode = a.mode.map(Mode::from).unwrap_or(if model.components == 1 { Mode::KnotB } else { Mode::Folded });
    let m = match &a.mtilde {
        Some(t) => Some(
            t.split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| HflError::validation(format!("bad --mtilde value {v:?}"))))
                .collect::<Result<Vec<i64>>>()?,
        ),
        None => None,
    };
    let t = Truncation::defaults(mode, &model, &framing, a.b, m)?;
    if a.delta == 0 {
        return Err(HflError::validation("--delta must be positive"));
    }
    Ok((model, framing, t))
}

fn surgery(a: &SurgeryArgs, as_json: bool) -> Result<String> {
    let (model, framing, t) = surgery_setup(a)?;
    match a.action.unwrap_or(SurgeryAction::Homology) {
        SurgeryAction::Homology => {
            let (hs, warnings) = homology(&model, &framing, &t, a.delta)?;
            if as_json {
                let rows: Vec<Value> = hs
                    .iter()
                    .map(|h| json!({ "spinc": h.class.label(), "d": h.class.d, "stable": h.stable, "flat": h.flat }))
                    .collect();
                return to_json_text(&json!({ "mode": t.mode.to_string(), "b": t.b, "m": t.m, "delta": a.delta,
                    "classes": rows, "warnings": warnings }));
            }
            let mut out = String::from("spinc\td\trank\tflat\tgradings\n");
            for h in &hs {
                writeln!(out, "{}\t{}\t{}\t{}\t{}", h.class.label(), h.class.d, h.stable.total, h.flat.total, by_grading_text(&h.stable))
                    .unwrap();
            }
            for w in warnings {
                writeln!(out, "# warning: {w}").unwrap();
            }
            Ok(out)
        }
        SurgeryAction::Towers => {
            let rows = towers(&model, &framing, &t, a.delta)?;
            if as_json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(c, ranks, p)| json!({ "spinc": c.label(), "ranks": ranks, "towers": p, "summary": p.to_string() }))
                    .collect();
                return to_json_text(&json!({ "mode": t.mode.to_string(), "depth": a.delta, "classes": v }));
            }
            let mut out = String::from("spinc\tranks\ttowers\n");
            for (c, ranks, p) in rows {
                let r: Vec<String> = ranks.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}\t{}\t{p}", c.label(), r.join(",")).unwrap();
            }
            Ok(out)
        }
        SurgeryAction::Check => {
            let sc = assemble(&model, &framing, &t, a.delta)?;
            sc.complex.check_d_squared()?;
            for (k, c) in sc.classes.iter().enumerate() {
                sc.class_complex(k)?.check_gradings(c.d)?;
            }
            if as_json {
                return to_json_text(&json!({ "ok": true, "generators": sc.generators.len(), "classes": sc.classes.len(),
                    "crossovers": sc.crossovers, "warnings": sc.warnings }));
            }
            Ok(format!(
                "ok\tgenerators {}\tclasses {}\tcrossovers {}\n",
                sc.generators.len(),
                sc.classes.len(),
                sc.crossovers
            ))
        }
    }
}

// ---- coeff ----

fn page_text(out: &mut String, label: &str, p: &Page) {
    for (&(level, grading), &r) in &p.ranks {
        if r > 0 {
            writeln!(out, "{label}\t{level}\t{grading}\t{r}").unwrap();
        }
    }
    writeln!(out, "{label}\ttotal\t-\t{}", p.total).unwrap();
}

fn coeff(a: &CoeffArgs, as_json: bool) -> Result<String> {
    match a.action {
        CoeffAction::Ss => {
            let f = FilteredComplex::from_json(&read_json::<FilteredJson>(&a.file)?)?;
            let ss = spectral_sequence(&f)?;
            if as_json {
                let pages: Vec<Value> = ss.pages.iter().map(page_json).collect();
                return to_json_text(&json!({ "pages": pages, "infinity": page_json(&ss.infinity), "homology": ss.homology_total }));
            }
            let mut out = String::from("page\tlevel\tgrading\trank\n");
            for p in &ss.pages {
                page_text(&mut out, &format!("E{}", p.r), p);
            }
            page_text(&mut out, "Einf", &ss.infinity);
            writeln!(out, "H\ttotal\t-\t{}", ss.homology_total).unwrap();
            Ok(out)
        }
    }
}

fn page_json(p: &Page) -> Value {
    let ranks: BTreeMap<String, usize> = p.ranks.iter().map(|(&(l, g), &r)| (format!("{l},{g}"), r)).collect();
    json!({ "r": p.r, "total": p.total, "ranks": ranks })
}
