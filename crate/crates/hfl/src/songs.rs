//! Songs over a finite alphabet, the derivation `psi_y`, standard symphonies,
//! and playing songs to hypercubical collections of matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coeff::{EntryJson, SparseMatrix, TruncatedRing};
use crate::error::{HflError, Result};

/// A letter of the alphabet.
pub type Letter = u32;

/// A note `x` or a harmony `{x, y, ..}` (sorted, possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Note(Letter),
    Harmony(Vec<Letter>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Song {
    pub items: Vec<Item>,
}

/// An F2-linear combination of songs over an ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SongSum {
    pub alphabet: Vec<Letter>,
    pub songs: BTreeSet<Song>,
}

impl Song {
    pub fn new(items: Vec<Item>) -> Self {
        Song { items }
    }

    pub fn note(x: Letter) -> Item {
        Item::Note(x)
    }

    pub fn harmony(letters: &[Letter]) -> Item {
        let mut v = letters.to_vec();
        v.sort_unstable();
        v.dedup();
        Item::Harmony(v)
    }

    pub fn concat(&self, other: &Song) -> Song {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        Song { items }
    }

    /// Number of notes and the sizes of the harmonies.
    pub fn shape(&self) -> (usize, Vec<usize>) {
        let mut notes = 0;
        let mut sizes = Vec::new();
        for it in &self.items {
            match it {
                Item::Note(_) => notes += 1,
                Item::Harmony(h) => sizes.push(h.len()),
            }
        }
        (notes, sizes)
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for it in &self.items {
            match it {
                Item::Note(x) => {
                    out.insert(*x);
                }
                Item::Harmony(h) => out.extend(h.iter().copied()),
            }
        }
        out
    }

    /// Parse the bracket notation, e.g. `(12{1,2}21)` or `(x{}y)`. Outside braces
    /// every character is one note unless the body contains spaces, in which
    /// case notes are space-separated numbers.
    pub fn parse(text: &str) -> Result<Song> {
        let t = text.trim();
        let body = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| HflError::validation(format!("song must be enclosed in parentheses: {text:?}")))?;
        let spaced = body.contains(' ');
        let mut items = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let c = rest.chars().next().unwrap();
            if c == ' ' {
                rest = &rest[1..];
            } else if c == '{' {
                let end = rest
                    .find('}')
                    .ok_or_else(|| HflError::validation(format!("unclosed harmony in {text:?}")))?;
                let inner = &rest[1..end];
                let mut letters = Vec::new();
                for tok in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    letters.push(parse_letter(tok, text)?);
                }
                let h = Song::harmony(&letters);
                if let Item::Harmony(v) = &h {
                    if v.len() != letters.len() {
                        return Err(HflError::validation(format!("repeated letter in harmony in {text:?}")));
                    }
                }
                items.push(h);
                rest = &rest[end + 1..];
            } else if spaced {
                let end = rest.find([' ', '{']).unwrap_or(rest.len());
                items.push(Item::Note(parse_letter(&rest[..end], text)?));
                rest = &rest[end..];
            } else {
                let len = c.len_utf8();
                items.push(Item::Note(parse_letter(&rest[..len], text)?));
                rest = &rest[len..];
            }
        }
        Ok(Song { items })
    }
}

fn parse_letter(tok: &str, text: &str) -> Result<Letter> {
    tok.parse::<Letter>()
        .map_err(|_| HflError::validation(format!("bad letter {tok:?} in song {text:?}")))
}

impl fmt::Display for Song {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.letters().iter().any(|&x| x >= 10);
        write!(f, "(")?;
        for (k, it) in self.items.iter().enumerate() {
            match it {
                Item::Note(x) => {
                    if wide && k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?
                }
                Item::Harmony(h) => {
                    let inner: Vec<String> = h.iter().map(|x| x.to_string()).collect();
                    write!(f, "{{{}}}", inner.join(","))?
                }
            }
        }
        write!(f, ")")
    }
}

impl SongSum {
    pub fn zero(alphabet: &[Letter]) -> Self {
        SongSum { alphabet: alphabet.to_vec(), songs: BTreeSet::new() }
    }

    /// Sum of songs; repeated songs cancel in pairs. Letters must be in the alphabet.
    pub fn from_songs(alphabet: &[Letter], songs: impl IntoIterator<Item = Song>) -> Result<Self> {
        let mut s = SongSum::zero(alphabet);
        for song in songs {
            for x in song.letters() {
                if !alphabet.contains(&x) {
                    return Err(HflError::validation(format!("letter {x} of {song} is not in the alphabet")));
                }
            }
            s.toggle(song);
        }
        Ok(s)
    }

    pub fn toggle(&mut self, song: Song) {
        if !self.songs.remove(&song) {
            self.songs.insert(song);
        }
    }

    pub fn len(&self) -> usize {
        self.songs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.songs.is_empty()
    }

    pub fn add(&self, other: &SongSum) -> SongSum {
        let mut out = self.clone();
        for s in &other.songs {
            out.toggle(s.clone());
        }
        for x in &other.alphabet {
            if !out.alphabet.contains(x) {
                out.alphabet.push(*x);
            }
        }
        out.alphabet.sort_unstable();
        out
    }

    /// Product in the free algebra (concatenation), alphabets merged.
    pub fn mul(&self, other: &SongSum) -> SongSum {
        let mut alphabet: Vec<Letter> = self.alphabet.iter().chain(&other.alphabet).copied().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut out = SongSum::zero(&alphabet);
        for a in &self.songs {
            for b in &other.songs {
                out.toggle(a.concat(b));
            }
        }
        out
    }

    /// Rename letters; `map` must be injective on the alphabet.
    pub fn relabel(&self, map: &BTreeMap<Letter, Letter>) -> SongSum {
        let f = |x: &Letter| *map.get(x).unwrap_or(x);
        let mut alphabet: Vec<Letter> = self.alphabet.iter().map(f).collect();
        alphabet.sort_unstable();
        let mut out = SongSum::zero(&alphabet);
        for s in &self.songs {
            let items = s
                .items
                .iter()
                .map(|it| match it {
                    Item::Note(x) => Item::Note(f(x)),
                    Item::Harmony(h) => Song::harmony(&h.iter().map(f).collect::<Vec<_>>()),
                })
                .collect();
            out.toggle(Song { items });
        }
        out
    }
}

impl fmt::Display for SongSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.songs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.songs.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All ordered decompositions of `set` into nonempty blocks.
fn ordered_decompositions(set: &[Letter]) -> Vec<Vec<Vec<Letter>>> {
    if set.is_empty() {
        return vec![vec![]];
    }
    let n = set.len();
    let full = (1u32 << n) - 1;
    let mut out = Vec::new();
    fn rec(set: &[Letter], remaining: u32, cur: &mut Vec<Vec<Letter>>, out: &mut Vec<Vec<Vec<Letter>>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        // nonempty submasks of `remaining`, in increasing order
        let mut subs = Vec::new();
        let mut sub = remaining;
        while sub != 0 {
            subs.push(sub);
            sub = (sub - 1) & remaining;
        }
        subs.reverse();
        for m in subs {
            let block: Vec<Letter> = (0..set.len()).filter(|&i| m >> i & 1 == 1).map(|i| set[i]).collect();
            cur.push(block);
            rec(set, remaining & !m, cur, out);
            cur.pop();
        }
    }
    rec(set, full, &mut Vec::new(), &mut out);
    out
}

/// `psi_y` of a single item, as a list of replacement item sequences.
fn psi_item(item: &Item, y: Letter) -> Vec<Vec<Item>> {
    match item {
        Item::Note(x) => vec![vec![
            Item::Note(*x),
            Item::Note(y),
            Song::harmony(&[*x, y]),
            Item::Note(y),
            Item::Note(*x),
        ]],
        Item::Harmony(a) if a.is_empty() => vec![vec![Item::Note(y)]],
        Item::Harmony(a) => ordered_decompositions(a)
            .into_iter()
            .map(|blocks| {
                let mut items = vec![Item::Note(y)];
                for b in blocks {
                    let mut h = b;
                    h.push(y);
                    items.push(Song::harmony(&h));
                    items.push(Item::Note(y));
                }
                items
            })
            .collect(),
    }
}

/// The derivation `psi_y` extending songs over `X` to songs over `X + {y}`.
pub fn psi_y(s: &SongSum, y: Letter) -> Result<SongSum> {
    if s.alphabet.contains(&y) {
        return Err(HflError::validation(format!("letter {y} is already in the alphabet")));
    }
    let mut alphabet = s.alphabet.clone();
    alphabet.push(y);
    alphabet.sort_unstable();
    let mut out = SongSum::zero(&alphabet);
    for song in &s.songs {
        for (j, item) in song.items.iter().enumerate() {
            for repl in psi_item(item, y) {
                let mut items = song.items[..j].to_vec();
                items.extend(repl);
                items.extend_from_slice(&song.items[j + 1..]);
                out.toggle(Song { items });
            }
        }
    }
    Ok(out)
}

/// Instances of the defining relations of the song algebra over `alphabet`;
/// each returned sum plays to zero on every hypercubical collection:
/// `(x{}) + ({}x)`, `(x{x}) + ({x}x)`, `(x{x}sx) + (xs{x}x) + (xs) + (sx)` for
/// each `s` in `middles`, and `sum_{B in A} (B)(A - B)` for every harmony `A`.
pub fn relation_instances(alphabet: &[Letter], middles: &[Song]) -> Result<Vec<(String, SongSum)>> {
    let mut out = Vec::new();
    let song = |items: Vec<Item>| Song { items };
    for &x in alphabet {
        let n = Item::Note(x);
        let e = Item::Harmony(vec![]);
        let h = Item::Harmony(vec![x]);
        out.push((
            format!("({x}{{}}) = ({{}}{x})"),
            SongSum::from_songs(alphabet, [song(vec![n.clone(), e.clone()]), song(vec![e, n.clone()])])?,
        ));
        out.push((
            format!("({x}{{{x}}}) = ({{{x}}}{x})"),
            SongSum::from_songs(alphabet, [song(vec![n.clone(), h.clone()]), song(vec![h.clone(), n.clone()])])?,
        ));
        for m in middles {
            let join = |parts: &[&[Item]]| song(parts.concat());
            let mi = m.items.as_slice();
            let (nn, hh) = (std::slice::from_ref(&n), std::slice::from_ref(&h));
            out.push((
                format!("({x}{{{x}}}s{x}) + ({x}s{{{x}}}{x}) = ({x}s) + (s{x}) for s = {m}"),
                SongSum::from_songs(
                    alphabet,
                    [join(&[nn, hh, mi, nn]), join(&[nn, mi, hh, nn]), join(&[nn, mi]), join(&[mi, nn])],
                )?,
            ));
        }
    }
    let k = alphabet.len();
    for mask in 0..1usize << k {
        let a: Vec<Letter> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| alphabet[i]).collect();
        let mut sum = SongSum::zero(alphabet);
        let mut sub = mask;
        loop {
            let b: Vec<Letter> = (0..k).filter(|&i| sub >> i & 1 == 1).map(|i| alphabet[i]).collect();
            let c: Vec<Letter> = a.iter().copied().filter(|x| !b.contains(x)).collect();
            sum.toggle(song(vec![Song::harmony(&b), Song::harmony(&c)]));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        let set: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        out.push((format!("sum_B (B)(A-B) = 0 for A = {{{}}}", set.join(",")), sum));
    }
    Ok(out)
}

fn symphony_cache() -> &'static Mutex<Vec<Arc<SongSum>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<SongSum>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// The standard symphony over the letters `1..=n`.
pub fn symphony_n(n: usize) -> Arc<SongSum> {
    let mut cache = symphony_cache().lock().expect("symphony cache poisoned");
    if cache.is_empty() {
        let base = SongSum::from_songs(&[], [Song::new(vec![Item::Harmony(vec![])])]).unwrap();
        cache.push(Arc::new(base));
    }
    while cache.len() <= n {
        let k = cache.len() as Letter;
        let next = psi_y(cache.last().unwrap(), k).expect("fresh letter");
        cache.push(Arc::new(next));
    }
    cache[n].clone()
}

/// The standard symphony over an ordered alphabet (letters in increasing order
/// play the roles of `1..=n`).
pub fn symphony(alphabet: &[Letter]) -> SongSum {
    let mut letters = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let base = symphony_n(letters.len());
    let map: BTreeMap<Letter, Letter> = letters.iter().enumerate().map(|(i, &x)| (i as Letter + 1, x)).collect();
    base.relabel(&map)
}

/// Elements `A_Z` of a matrix algebra, one per subset `Z` of the alphabet
/// (indexed by bitmask over alphabet positions), with a register `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercubicalCollection {
    pub alphabet: Vec<Letter>,
    pub elements: Vec<SparseMatrix>,
    pub register: Vec<u32>,
}

fn mask_letters(alphabet: &[Letter], mask: usize) -> Vec<Letter> {
    (0..alphabet.len()).filter(|&i| mask >> i & 1 == 1).map(|i| alphabet[i]).collect()
}

fn fmt_subset(letters: &[Letter]) -> String {
    let v: Vec<String> = letters.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl HypercubicalCollection {
    /// Validates shapes and the defining relation for every subset.
    pub fn new(alphabet: Vec<Letter>, elements: Vec<SparseMatrix>, register: Vec<u32>) -> Result<Self> {
        let c = Self::new_unchecked(alphabet, elements, register)?;
        c.check_relations()?;
        Ok(c)
    }

    /// Shape checks only.
    pub fn new_unchecked(alphabet: Vec<Letter>, elements: Vec<SparseMatrix>, register: Vec<u32>) -> Result<Self> {
        let n = alphabet.len();
        if n > 16 {
            return Err(HflError::validation("at most 16 letters are supported"));
        }
        let mut sorted = alphabet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != alphabet {
            return Err(HflError::validation("alphabet must be strictly increasing"));
        }
        if elements.len() != 1 << n {
            return Err(HflError::validation(format!(
                "{} algebra elements given for {} subsets",
                elements.len(),
                1 << n
            )));
        }
        if register.len() != n {
            return Err(HflError::validation("register length differs from alphabet size"));
        }
        let (ring, dim) = (elements[0].ring, elements[0].nrows);
        for e in &elements {
            if e.ring != ring || e.nrows != dim || e.ncols != dim {
                return Err(HflError::validation("collection elements must be square matrices of one size"));
            }
        }
        Ok(HypercubicalCollection { alphabet, elements, register })
    }

    pub fn ring(&self) -> TruncatedRing {
        self.elements[0].ring
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows
    }

    pub fn element(&self, letters: &[Letter]) -> Result<&SparseMatrix> {
        let mut mask = 0usize;
        for x in letters {
            let i = self
                .alphabet
                .iter()
                .position(|a| a == x)
                .ok_or_else(|| HflError::validation(format!("letter {x} is not in the alphabet")))?;
            mask |= 1 << i;
        }
        Ok(&self.elements[mask])
    }

    /// `sum_{Z' in Z} A_{Z'} A_{Z - Z'}` for the subset with the given mask.
    pub fn relation(&self, mask: usize) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::zero(self.ring(), self.dim(), self.dim());
        let mut sub = mask;
        loop {
            acc.add_assign(&self.elements[sub].mul(&self.elements[mask & !sub])?)?;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        Ok(acc)
    }

    /// Error naming the first subset whose relation fails.
    pub fn check_relations(&self) -> Result<()> {
        for mask in 0..self.elements.len() {
            if !self.relation(mask)?.is_zero() {
                return Err(HflError::validation(format!(
                    "collection relation fails for Z = {}",
                    fmt_subset(&mask_letters(&self.alphabet, mask))
                )));
            }
        }
        Ok(())
    }

    /// Sub-collection on the letters in `mask`, register restricted.
    pub fn restrict(&self, mask: usize) -> HypercubicalCollection {
        let pos: Vec<usize> = (0..self.alphabet.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let elements = (0..1usize << pos.len())
            .map(|m| {
                let full: usize = pos.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &i)| 1 << i).sum();
                self.elements[full].clone()
            })
            .collect();
        HypercubicalCollection {
            alphabet: pos.iter().map(|&i| self.alphabet[i]).collect(),
            elements,
            register: pos.iter().map(|&i| self.register[i]).collect(),
        }
    }

    /// Same elements with another register.
    pub fn with_register(&self, register: Vec<u32>) -> Result<HypercubicalCollection> {
        Self::new_unchecked(self.alphabet.clone(), self.elements.clone(), register)
    }
}

/// File format of a collection: one matrix per listed subset, absent subsets are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollectionJson {
    pub num_vars: usize,
    pub delta: u32,
    pub dim: usize,
    pub alphabet: Vec<Letter>,
    pub register: Vec<u32>,
    pub elements: Vec<ElementJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub subset: Vec<Letter>,
    pub entries: Vec<EntryJson>,
}

impl HypercubicalCollection {
    pub fn to_json(&self) -> CollectionJson {
        CollectionJson {
            num_vars: self.ring().num_vars,
            delta: self.ring().delta,
            dim: self.dim(),
            alphabet: self.alphabet.clone(),
            register: self.register.clone(),
            elements: self
                .elements
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(mask, m)| ElementJson { subset: mask_letters(&self.alphabet, mask), entries: m.to_entries() })
                .collect(),
        }
    }

    /// Parse and validate (shapes and the defining relation).
    pub fn from_json(j: &CollectionJson) -> Result<Self> {
        let ring = TruncatedRing::new(j.num_vars, j.delta)?;
        let n = j.alphabet.len();
        if n > 16 {
            return Err(HflError::validation("at most 16 letters are supported"));
        }
        let mut elements = vec![SparseMatrix::zero(ring, j.dim, j.dim); 1 << n];
        let mut seen = BTreeSet::new();
        for e in &j.elements {
            let mut mask = 0usize;
            for x in &e.subset {
                let i = j
                    .alphabet
                    .iter()
                    .position(|a| a == x)
                    .ok_or_else(|| HflError::validation(format!("letter {x} is not in the alphabet")))?;
                mask |= 1 << i;
            }
            if !seen.insert(mask) {
                return Err(HflError::validation(format!("subset {:?} given twice", e.subset)));
            }
            elements[mask] = SparseMatrix::from_entries(ring, j.dim, j.dim, &e.entries)?;
        }
        if j.register.iter().any(|&d| d == 0) {
            return Err(HflError::validation("register entries must be positive"));
        }
        HypercubicalCollection::new(j.alphabet.clone(), elements, j.register.clone())
    }
}

/// Play a sum of songs to a collection in its register: for each song, sum
/// over all exponent choices where notes contribute powers of `A_{x}` and
/// harmonies `Y` contribute `A_Y`, with each letter `x` used `d_x` times in total.
pub fn play(s: &SongSum, coll: &HypercubicalCollection) -> Result<SparseMatrix> {
    for song in &s.songs {
        for x in song.letters() {
            if !coll.alphabet.contains(&x) {
                return Err(HflError::validation(format!(
                    "song {song} uses letter {x} outside the collection alphabet"
                )));
            }
        }
    }
    let n = coll.alphabet.len();
    let ring = coll.ring();
    let dim = coll.dim();
    let reg = &coll.register;
    // mixed-radix encoding of remaining budgets
    let mut radix = vec![1usize; n + 1];
    for i in 0..n {
        radix[i + 1] = radix[i] * (reg[i] as usize + 1);
    }
    let nstates = radix[n];
    let digit = |state: usize, i: usize| (state / radix[i]) % (reg[i] as usize + 1);
    let start: usize = (0..n).map(|i| reg[i] as usize * radix[i]).sum();
    let pos_of = |x: Letter| coll.alphabet.iter().position(|&a| a == x).unwrap();
    let mut powers: Vec<Vec<SparseMatrix>> = Vec::with_capacity(n);
    for i in 0..n {
        let a = &coll.elements[1 << i];
        let mut v = vec![SparseMatrix::identity(ring, dim)];
        for j in 1..=reg[i] {
            let next = v[j as usize - 1].mul(a)?;
            v.push(next);
        }
        powers.push(v);
    }

    let mut total = SparseMatrix::zero(ring, dim, dim);
    for song in &s.songs {
        let mut acc: Vec<Option<SparseMatrix>> = vec![None; nstates];
        acc[start] = Some(SparseMatrix::identity(ring, dim));
        for item in &song.items {
            let mut next: Vec<Option<SparseMatrix>> = vec![None; nstates];
            for (state, m) in acc.iter().enumerate() {
                let Some(m) = m else { continue };
                match item {
                    Item::Note(x) => {
                        let i = pos_of(*x);
                        for j in 0..=digit(state, i) {
                            let prod = m.mul(&powers[i][j])?;
                            let t = state - j * radix[i];
                            accumulate(&mut next[t], prod)?;
                        }
                    }
                    Item::Harmony(h) => {
                        let mut mask = 0usize;
                        let mut t = state;
                        let mut ok = true;
                        for &x in h {
                            let i = pos_of(x);
                            mask |= 1 << i;
                            if digit(state, i) == 0 {
                                ok = false;
                                break;
                            }
                            t -= radix[i];
                        }
                        if ok {
                            let prod = m.mul(&coll.elements[mask])?;
                            accumulate(&mut next[t], prod)?;
                        }
                    }
                }
            }
            acc = next;
        }
        if let Some(m) = &acc[0] {
            total.add_assign(m)?;
        }
    }
    Ok(total)
}

fn accumulate(slot: &mut Option<SparseMatrix>, m: SparseMatrix) -> Result<()> {
    match slot {
        Some(x) => x.add_assign(&m)?,
        None => *slot = Some(m),
    }
    Ok(())
}

/// The compressed collection `Z -> play(alpha(Z), A|Z)` in the register of `coll`.
/// Its register is reset to all ones. Checks the input and output relations.
pub fn compressed_collection(coll: &HypercubicalCollection) -> Result<HypercubicalCollection> {
    coll.check_relations()?;
    let n = coll.alphabet.len();
    let mut elements = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        let sub = coll.restrict(mask);
        elements.push(play(&symphony(&sub.alphabet), &sub)?);
    }
    let out = HypercubicalCollection::new_unchecked(coll.alphabet.clone(), elements, vec![1; n])?;
    out.check_relations().map_err(|e| HflError::invariant(format!("compressed collection: {e}")))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(alpha: &[Letter], songs: &[&str]) -> SongSum {
        SongSum::from_songs(alpha, songs.iter().map(|s| Song::parse(s).unwrap())).unwrap()
    }

    #[test]
    fn psi_of_note_and_empty_harmony() {
        let s = sum(&[1], &["(1)"]);
        assert_eq!(psi_y(&s, 2).unwrap().to_string(), "(12{1,2}21)");
        let e = sum(&[], &["({})"]);
        assert_eq!(psi_y(&e, 7).unwrap().to_string(), "(7)");
        assert!(psi_y(&s, 1).is_err());
    }

    #[test]
    fn psi_three_of_two_harmony() {
        let s = sum(&[1, 2], &["(2{1,2})"]);
        let expected = sum(
            &[1, 2, 3],
            &["(23{2,3}32{1,2})", "(23{1,2,3}3)", "(23{1,3}3{2,3}3)", "(23{2,3}3{1,3}3)"],
        );
        assert_eq!(psi_y(&s, 3).unwrap(), expected);
    }

    #[test]
    fn symphony_counts() {
        assert_eq!(symphony_n(1).to_string(), "(1)");
        assert_eq!(symphony_n(3).len(), 7);
        assert_eq!(symphony_n(4).len(), 97);
    }

    #[test]
    fn parse_round_trip() {
        for t in ["(213{2,3}2{}12{3})", "({})", "()"] {
            assert_eq!(Song::parse(t).unwrap().to_string(), t);
        }
        assert!(Song::parse("12").is_err());
    }

    #[test]
    fn ordered_decompositions_are_fubini() {
        assert_eq!(ordered_decompositions(&[1, 2, 3]).len(), 13);
        assert_eq!(ordered_decompositions(&[1, 2, 3, 4]).len(), 75);
    }
}
