//! Infinite words, their minimal forbidden words (obstructions) and cogrowth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Word};
use crate::groebner::cumulative_counts;
use crate::suffix_automaton::SuffixAutomaton;

/// Longest prefix a source will generate while looking for stable factors.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SourceKind {
    Periodic(Word),
    /// Limit of `u0 = b`, `u1 = a`, `u_k = u_{k-1}·u_{k-2}`.
    Fibonacci,
    /// Fixed point of a morphism prolongable on `seed`; `rules[i]` is the
    /// image of letter `i`.
    Morphic {
        rules: Vec<Word>,
        seed: u8,
    },
    /// A finite prefix whose factors are trusted up to `complete_upto`.
    Explicit {
        prefix: Word,
        complete_upto: usize,
    },
}

/// A generator of factors of an infinite word.
pub struct WordSource {
    kind: SourceKind,
    alphabet: Alphabet,
    prefix_cap: usize,
    // (n, prefix) with every length-n factor occurring in prefix
    memo: RwLock<Option<(usize, Arc<Word>)>>,
}

impl Clone for WordSource {
    fn clone(&self) -> Self {
        WordSource {
            kind: self.kind.clone(),
            alphabet: self.alphabet.clone(),
            prefix_cap: self.prefix_cap,
            memo: RwLock::new(self.memo.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordSource")
            .field("kind", &self.kind)
            .field("alphabet", &self.alphabet)
            .finish()
    }
}

fn sorted_alphabet(s: impl IntoIterator<Item = char>) -> Result<Alphabet> {
    Alphabet::new(s.into_iter().collect::<BTreeSet<char>>())
}

impl WordSource {
    fn build(kind: SourceKind, alphabet: Alphabet) -> Self {
        WordSource {
            kind,
            alphabet,
            prefix_cap: DEFAULT_PREFIX_CAP,
            memo: RwLock::new(None),
        }
    }

    pub fn fibonacci() -> Self {
        Self::build(SourceKind::Fibonacci, Alphabet::from_letters("ab").unwrap())
    }

    /// `period^∞` over the letters of `period`, sorted.
    pub fn periodic(period: &str) -> Result<Self> {
        let alphabet = sorted_alphabet(period.chars())?;
        Self::periodic_over(alphabet, period)
    }

    pub fn periodic_over(alphabet: Alphabet, period: &str) -> Result<Self> {
        let w = alphabet.word(period)?;
        if w.is_empty() {
            return Err(Error::usage("period must be nonempty"));
        }
        Ok(Self::build(SourceKind::Periodic(w), alphabet))
    }

    /// Fixed point of `rules` starting from `seed`. The alphabet is the set of
    /// rule letters, sorted.
    pub fn morphic(rules: &[(char, &str)], seed: char) -> Result<Self> {
        let alphabet = sorted_alphabet(rules.iter().map(|&(c, _)| c))?;
        let mut images = vec![None; alphabet.len()];
        for &(c, img) in rules {
            let i = alphabet.index_of(c).unwrap() as usize;
            if images[i].is_some() {
                return Err(Error::usage(format!("letter {c:?} has two rules")));
            }
            images[i] = Some(alphabet.word(img).map_err(|_| {
                Error::usage(format!("image of {c:?} uses a letter without a rule"))
            })?);
        }
        let rules: Vec<Word> = images.into_iter().map(Option::unwrap).collect();
        let seed = alphabet
            .index_of(seed)
            .ok_or_else(|| Error::usage(format!("seed {seed:?} has no rule")))?;
        let img = &rules[seed as usize];
        if img.len() < 2 || img.letters()[0] != seed {
            return Err(Error::usage("morphism is not prolongable on the seed"));
        }
        Ok(Self::build(SourceKind::Morphic { rules, seed }, alphabet))
    }

    /// A finite prefix, trusted for factors up to `complete_upto`.
    pub fn explicit(prefix: &str, complete_upto: usize) -> Result<Self> {
        let alphabet = sorted_alphabet(prefix.chars())?;
        let w = alphabet.word(prefix)?;
        if complete_upto > w.len() {
            return Err(Error::usage("completeness bound exceeds the prefix length"));
        }
        Ok(Self::build(
            SourceKind::Explicit {
                prefix: w,
                complete_upto,
            },
            alphabet,
        ))
    }

    /// Parse a descriptor: `fib`, `periodic:<word>`,
    /// `morphic:<l>-><word>[,<l>-><word>]*;seed=<l>` or
    /// `prefix:<path>;complete=<n>`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let err = |col: usize, msg: &str| Error::parse(1, col, msg.to_string());
        let d = descriptor.trim();
        if d == "fib" {
            return Ok(Self::fibonacci());
        }
        let (kind, rest) = d
            .split_once(':')
            .ok_or_else(|| err(1, "expected fib, periodic:, morphic: or prefix:"))?;
        let base = kind.len() + 2;
        match kind {
            "periodic" => Self::periodic(rest).map_err(|e| err(base, &e.to_string())),
            "morphic" => {
                let (rules_src, seed_src) = rest
                    .split_once(';')
                    .ok_or_else(|| err(base, "expected ;seed=<letter>"))?;
                let seed_col = base + rules_src.len() + 1;
                let seed = seed_src
                    .strip_prefix("seed=")
                    .and_then(|s| {
                        let mut it = s.chars();
                        match (it.next(), it.next()) {
                            (Some(c), None) => Some(c),
                            _ => None,
                        }
                    })
                    .ok_or_else(|| err(seed_col, "expected seed=<letter>"))?;
                let mut rules = Vec::new();
                let mut col = base;
                for rule in rules_src.split(',') {
                    let (l, img) = rule
                        .split_once("->")
                        .ok_or_else(|| err(col, "expected <letter>-><word>"))?;
                    let mut it = l.chars();
                    let c = match (it.next(), it.next()) {
                        (Some(c), None) => c,
                        _ => return Err(err(col, "rule must start with a single letter")),
                    };
                    rules.push((c, img));
                    col += rule.len() + 1;
                }
                Self::morphic(&rules, seed).map_err(|e| err(base, &e.to_string()))
            }
            "prefix" => {
                let (path, comp) = rest
                    .split_once(';')
                    .ok_or_else(|| err(base, "expected ;complete=<n>"))?;
                let comp_col = base + path.len() + 1;
                let n: usize = comp
                    .strip_prefix("complete=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(comp_col, "expected complete=<n>"))?;
                let text = std::fs::read_to_string(path)?;
                let line = text.lines().next().unwrap_or("").trim();
                Self::explicit(line, n).map_err(|e| err(base, &e.to_string()))
            }
            _ => Err(err(1, "unknown source kind")),
        }
    }

    /// Re-express the source over a larger declared alphabet. Letters that
    /// never occur make every one-letter word over them an obstruction.
    pub fn with_alphabet(self, alphabet: Alphabet) -> Result<Self> {
        let map: Vec<u8> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| {
                alphabet.index_of(c).ok_or_else(|| {
                    Error::usage(format!(
                        "letter {c:?} is missing from the declared alphabet"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let remap = |w: &Word| Word::new(w.letters().iter().map(|&c| map[c as usize]).collect());
        let kind = match &self.kind {
            SourceKind::Periodic(u) => SourceKind::Periodic(remap(u)),
            SourceKind::Fibonacci if map == [0, 1] => SourceKind::Fibonacci,
            SourceKind::Fibonacci => SourceKind::Morphic {
                rules: {
                    let mut r: Vec<Word> = (0..alphabet.len() as u8)
                        .map(|c| Word::new(vec![c]))
                        .collect();
                    r[map[0] as usize] = Word::new(vec![map[0], map[1]]);
                    r[map[1] as usize] = Word::new(vec![map[0]]);
                    r
                },
                seed: map[0],
            },
            SourceKind::Morphic { rules, seed } => {
                // unused letters map to themselves; they are never reached from the seed
                let mut r: Vec<Word> = (0..alphabet.len() as u8)
                    .map(|c| Word::new(vec![c]))
                    .collect();
                for (i, img) in rules.iter().enumerate() {
                    r[map[i] as usize] = remap(img);
                }
                SourceKind::Morphic {
                    rules: r,
                    seed: map[*seed as usize],
                }
            }
            SourceKind::Explicit {
                prefix,
                complete_upto,
            } => SourceKind::Explicit {
                prefix: remap(prefix),
                complete_upto: *complete_upto,
            },
        };
        Ok(WordSource::build(kind, alphabet).with_prefix_cap(self.prefix_cap))
    }

    pub fn with_prefix_cap(mut self, cap: usize) -> Self {
        self.prefix_cap = cap;
        self
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Largest factor length this source can answer for.
    pub fn complete_upto(&self) -> Option<usize> {
        match &self.kind {
            SourceKind::Explicit { complete_upto, .. } => Some(*complete_upto),
            _ => None,
        }
    }

    /// First `len` letters of the word.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        match &self.kind {
            SourceKind::Periodic(u) => Ok(Word::new(
                u.letters().iter().copied().cycle().take(len).collect(),
            )),
            SourceKind::Explicit { prefix, .. } => {
                if len > prefix.len() {
                    return Err(Error::usage(
                        "requested prefix is longer than the explicit prefix",
                    ));
                }
                Ok(prefix.slice(0, len))
            }
            _ => {
                let mut it = self.iterates();
                loop {
                    let w = it.next_iterate()?;
                    if w.len() >= len {
                        return Ok(Word::new(w[..len].to_vec()));
                    }
                    if w.len() > self.prefix_cap {
                        return Err(Error::Resource("prefix cap exceeded".into()));
                    }
                }
            }
        }
    }

    fn iterates(&self) -> Iterates<'_> {
        match &self.kind {
            SourceKind::Fibonacci => Iterates::Fib {
                prev: vec![1],
                cur: vec![0],
            },
            SourceKind::Morphic { rules, seed } => Iterates::Morphic {
                rules,
                cur: vec![*seed],
                started: false,
            },
            _ => unreachable!("only generated sources iterate"),
        }
    }

    /// A prefix containing every factor of length `n` (hence every shorter one).
    pub fn complete_prefix(&self, n: usize) -> Result<Arc<Word>> {
        if let Some((m, w)) = self.memo.read().unwrap().as_ref() {
            if *m >= n {
                return Ok(Arc::clone(w));
            }
        }
        let w = Arc::new(self.compute_complete_prefix(n)?);
        let mut memo = self.memo.write().unwrap();
        if memo.as_ref().is_none_or(|(m, _)| *m < n) {
            *memo = Some((n, Arc::clone(&w)));
        }
        Ok(w)
    }

    fn compute_complete_prefix(&self, n: usize) -> Result<Word> {
        match &self.kind {
            SourceKind::Periodic(u) => {
                let reps = (n + u.len()).div_ceil(u.len());
                self.prefix(reps * u.len())
            }
            SourceKind::Explicit {
                prefix,
                complete_upto,
            } => {
                if n > *complete_upto {
                    return Err(Error::usage(format!(
                        "factors of length {n} requested but the prefix is complete only up to {complete_upto}"
                    )));
                }
                Ok(prefix.clone())
            }
            _ => {
                // Iterates are prefixes of one another, so equal factor counts
                // on two successive iterates longer than 2n mean equal sets.
                let mut sam = SuffixAutomaton::new(self.alphabet.len());
                let mut it = self.iterates();
                let mut previous: Option<usize> = None;
                loop {
                    let w = it.next_iterate()?;
                    if w.len() > self.prefix_cap {
                        return Err(Error::Resource(format!(
                            "prefix cap {} exceeded before factors of length {n} stabilized",
                            self.prefix_cap
                        )));
                    }
                    let have = sam.text().len();
                    if w.len() < have || w[..have] != *sam.text() {
                        return Err(Error::usage("iterates are not prefixes of one another"));
                    }
                    for &c in &w[have..] {
                        sam.extend(c);
                    }
                    if w.len() > 2 * n {
                        let count = sam.count_factors(n);
                        if previous == Some(count) {
                            return Ok(Word::new(w.to_vec()));
                        }
                        previous = Some(count);
                    }
                }
            }
        }
    }

    /// The factors of length exactly `n`, sorted.
    pub fn factors(&self, n: usize) -> Result<BTreeSet<Word>> {
        if n == 0 {
            return Err(Error::usage("factor length must be at least 1"));
        }
        let p = self.complete_prefix(n)?;
        Ok(p.letters()
            .windows(n)
            .map(|s| Word::new(s.to_vec()))
            .collect())
    }
}

enum Iterates<'a> {
    Fib {
        prev: Vec<u8>,
        cur: Vec<u8>,
    },
    Morphic {
        rules: &'a [Word],
        cur: Vec<u8>,
        started: bool,
    },
}

impl Iterates<'_> {
    fn next_iterate(&mut self) -> Result<&[u8]> {
        match self {
            Iterates::Fib { prev, cur } => {
                let mut next = cur.clone();
                next.extend_from_slice(prev);
                *prev = std::mem::replace(cur, next);
                Ok(cur)
            }
            Iterates::Morphic {
                rules,
                cur,
                started,
            } => {
                if !*started {
                    *started = true;
                    return Ok(cur);
                }
                let next: Vec<u8> = cur
                    .iter()
                    .flat_map(|&c| rules[c as usize].letters().iter().copied())
                    .collect();
                if next.len() <= cur.len() {
                    return Err(Error::usage("morphism iterates stopped growing"));
                }
                *cur = next;
                Ok(cur)
            }
        }
    }
}

/// Obstructions of a word up to some length, with its cogrowth.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub max_len: usize,
    /// Sorted by (length, lex).
    pub obstructions: Vec<Word>,
    /// `cogrowth[k-1] = O_W(k)`.
    pub cogrowth: Vec<usize>,
}

/// Minimal forbidden words of length at most `max_len`.
pub fn word_obstructions(source: &WordSource, max_len: usize) -> Result<ObstructionReport> {
    if max_len == 0 {
        return Err(Error::usage("max_len must be at least 1"));
    }
    let prefix = source.complete_prefix(max_len)?;
    let sam = SuffixAutomaton::from_text(source.alphabet().len(), prefix.letters());
    let mut obstructions: Vec<Word> = sam
        .minimal_forbidden(max_len)
        .into_iter()
        .map(Word::new)
        .collect();
    obstructions.sort();
    let cogrowth = cumulative_counts(obstructions.iter().map(Word::len), max_len);
    Ok(ObstructionReport {
        max_len,
        obstructions,
        cogrowth,
    })
}

/// `O_W(1..=n)`.
pub fn cogrowth_word(source: &WordSource, n: usize) -> Result<Vec<usize>> {
    Ok(word_obstructions(source, n)?.cogrowth)
}

/// Border-based minimal period: least `p` with `u` a prefix of `u[..p]^∞`.
pub fn minimal_period(u: &[u8]) -> usize {
    assert!(!u.is_empty(), "minimal period of the empty word");
    let mut fail = vec![0usize; u.len()];
    let mut k = 0;
    for i in 1..u.len() {
        while k > 0 && u[i] != u[k] {
            k = fail[k - 1];
        }
        if u[i] == u[k] {
            k += 1;
        }
        fail[i] = k;
    }
    u.len() - fail[u.len() - 1]
}

/// Length of the primitive root: least `p` dividing `|u|` with `u = u[..p]^(|u|/p)`.
/// This is the minimal period of the sequence `u^∞`.
pub fn primitive_root_len(u: &[u8]) -> usize {
    let p = minimal_period(u);
    if u.len().is_multiple_of(p) {
        p
    } else {
        u.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColengthResult {
    pub alphabet: Alphabet,
    pub period: Word,
    /// Minimal period of `period^∞`.
    pub minimal_period: usize,
    pub colength: usize,
    pub obstructions: Vec<Word>,
}

/// Number of obstructions of `period^∞`, relative to `alphabet` (default:
/// the letters of `period`).
pub fn colength(period: &str, alphabet: Option<&Alphabet>) -> Result<ColengthResult> {
    let alphabet = match alphabet {
        Some(a) => a.clone(),
        None => sorted_alphabet(period.chars())?,
    };
    let u = alphabet.word(period)?;
    if u.is_empty() {
        return Err(Error::usage("period must be nonempty"));
    }
    Ok(colength_of(&alphabet, &u))
}

fn colength_of(alphabet: &Alphabet, u: &Word) -> ColengthResult {
    let p = primitive_root_len(u.letters());
    let root = u.slice(0, p);
    let source = WordSource::build(SourceKind::Periodic(root), alphabet.clone());
    let report = word_obstructions(&source, p + 1).expect("periodic sources are always complete");
    ColengthResult {
        alphabet: alphabet.clone(),
        period: u.clone(),
        minimal_period: p,
        colength: report.obstructions.len(),
        obstructions: report.obstructions,
    }
}

/// Fibonacci numbers indexed `φ1 = 1, φ2 = 2, φ3 = 3, φ4 = 5, ...`.
pub fn fibonacci_number(c: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..c {
        let next = a.saturating_add(b);
        a = b;
        b = next;
    }
    a
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeriodBound {
    /// `φ_c >= n`.
    Lavrov,
    /// `c >= log2(n) + 1`.
    Chelnokov,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundViolation {
    pub period: String,
    pub colength: usize,
    pub bound: PeriodBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodBoundsReport {
    pub max_len: usize,
    /// Periods checked per length; index 0 is length 1.
    pub checked_per_len: Vec<usize>,
    /// Smallest colength seen per length.
    pub min_colength_per_len: Vec<usize>,
    pub violations: Vec<BoundViolation>,
}

pub const PERIOD_BOUNDS_CAP: usize = 12;

/// Check both colength bounds on every binary word `u` with `1 <= |u| <= max_len`
/// such that `u^∞` has minimal period `|u|`.
pub fn check_period_bounds(max_len: usize) -> Result<PeriodBoundsReport> {
    check_period_bounds_with_cap(max_len, PERIOD_BOUNDS_CAP)
}

pub fn check_period_bounds_with_cap(max_len: usize, cap: usize) -> Result<PeriodBoundsReport> {
    if max_len > cap {
        return Err(Error::usage(format!(
            "max_len {max_len} exceeds the exhaustive cap {cap}"
        )));
    }
    let alphabet = Alphabet::from_letters("ab").unwrap();
    let mut report = PeriodBoundsReport {
        max_len,
        checked_per_len: Vec::new(),
        min_colength_per_len: Vec::new(),
        violations: Vec::new(),
    };
    for n in 1..=max_len {
        let mut checked = 0;
        let mut min_c = usize::MAX;
        for u in alphabet.words_of_len(n) {
            if primitive_root_len(u.letters()) != n {
                continue;
            }
            checked += 1;
            let c = colength_of(&alphabet, &u).colength;
            min_c = min_c.min(c);
            let mut violate = |bound| {
                report.violations.push(BoundViolation {
                    period: alphabet.render(&u),
                    colength: c,
                    bound,
                })
            };
            if fibonacci_number(c) < n as u64 {
                violate(PeriodBound::Lavrov);
            }
            // c >= log2(n) + 1  <=>  2^(c-1) >= n
            if c == 0 || (c - 1 < 64 && (1u128 << (c - 1)) < n as u128) {
                violate(PeriodBound::Chelnokov);
            }
        }
        report.checked_per_len.push(checked);
        report.min_colength_per_len.push(min_c);
    }
    Ok(report)
}

/// Least `T <= search_limit` such that every factor of length `T` contains
/// every factor of length `t`; `None` when no such `T` exists in range.
pub fn recurrence_window(
    source: &WordSource,
    t: usize,
    search_limit: usize,
) -> Result<Option<usize>> {
    if t == 0 {
        return Err(Error::usage("t must be at least 1"));
    }
    if search_limit < t {
        return Ok(None);
    }
    let prefix = source.complete_prefix(search_limit)?;
    let text = prefix.letters();
    let len = text.len();
    let mut starts: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, f) in text.windows(t).enumerate() {
        starts.entry(f).or_default().push(i);
    }
    // a window [i, i+T) contains f iff some start s has i <= s <= i + T - t
    let mut need = t;
    for occ in starts.values() {
        need = need.max(occ[0] + t);
        for pair in occ.windows(2) {
            need = need.max(pair[1] - pair[0] + t - 1);
        }
        need = need.max(len - occ[occ.len() - 1]);
    }
    Ok((need <= search_limit).then_some(need))
}
