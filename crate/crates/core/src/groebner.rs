//! Overlaps, degree-bounded completion and obstructions of finitely presented
//! algebras, with a linear-algebra oracle for reducible words.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::Error;
use crate::freealg::{normal_form_indexed, Alphabet, LeadIndex, Poly, Word};

/// A proper overlap of two leading words: `left·middle = w1`,
/// `middle·right = w2`, with all three parts nonempty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Overlap {
    pub left: Word,
    pub middle: Word,
    pub right: Word,
}

impl Overlap {
    /// The composition word `left·middle·right`.
    pub fn word(&self) -> Word {
        self.middle
            .sandwich(self.left.letters(), self.right.letters())
    }

    pub fn first_lead(&self) -> Word {
        self.left.concat(&self.middle)
    }

    pub fn second_lead(&self) -> Word {
        self.middle.concat(&self.right)
    }
}

/// All proper overlaps of `w1` followed by `w2`, longest middle first.
pub fn overlaps(w1: &Word, w2: &Word) -> Vec<Overlap> {
    let (a, b) = (w1.letters(), w2.letters());
    let max = a.len().min(b.len()).saturating_sub(1);
    (1..=max)
        .rev()
        .filter(|&k| a[a.len() - k..] == b[..k])
        .map(|k| Overlap {
            left: Word::new(a[..a.len() - k].to_vec()),
            middle: Word::new(b[..k].to_vec()),
            right: Word::new(b[k..].to_vec()),
        })
        .collect()
}

/// `(f − w1)·right − left·(g − w2)` for monic `f`, `g` with leads `w1`, `w2`.
pub fn composition_result<C: Coefficient>(
    f: &Poly<C>,
    g: &Poly<C>,
    o: &Overlap,
) -> crate::Result<Poly<C>> {
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::usage("composition needs monic polynomials"));
    }
    if f.lead() != Some(&o.first_lead()) || g.lead() != Some(&o.second_lead()) {
        return Err(Error::usage("leading words do not match the overlap"));
    }
    // the leading words cancel: w1·right = left·w2
    Ok(f.sandwich(&[], o.right.letters())
        .sub(&g.sandwich(o.left.letters(), &[])))
}

/// Caps guarding a completion that may not terminate.
#[derive(Clone, Debug)]
pub struct CompletionLimits {
    pub max_basis: usize,
    pub max_queue: usize,
    pub max_steps: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_basis: 20_000,
            max_queue: 2_000_000,
            max_steps: 5_000_000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompletionStatus {
    /// No composition was dropped for exceeding the word bound.
    Saturated,
    Truncated,
}

impl fmt::Display for CompletionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompletionStatus::Saturated => "saturated",
            CompletionStatus::Truncated => "truncated",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionOutcome<C = crate::Rational> {
    /// Monic, inter-reduced, sorted by leading word.
    pub basis: Vec<Poly<C>>,
    /// Leading words of `basis`, same order.
    pub obstructions: Vec<Word>,
    pub processed_word_bound: usize,
    pub obstructions_exact_upto: usize,
    pub status: CompletionStatus,
}

impl<C: Coefficient> CompletionOutcome<C> {
    pub fn obstructions_up_to(&self, n: usize) -> Vec<Word> {
        self.obstructions
            .iter()
            .filter(|w| w.len() <= n)
            .cloned()
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CompletionError<C: Coefficient = crate::Rational> {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource limit exceeded: {limit}")]
    Limit {
        limit: String,
        partial: Box<CompletionOutcome<C>>,
    },
}

impl<C: Coefficient> From<CompletionError<C>> for Error {
    fn from(e: CompletionError<C>) -> Self {
        match e {
            CompletionError::Usage(m) => Error::Usage(m),
            CompletionError::Limit { limit, .. } => Error::Resource(limit),
        }
    }
}

impl<C: Coefficient> From<Error> for CompletionError<C> {
    fn from(e: Error) -> Self {
        CompletionError::Usage(e.to_string())
    }
}

/// Pending composition, ordered by (word, first lead, second lead).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    word: Word,
    first: Word,
    second: Word,
    middle_len: usize,
}

struct Completion<C: Coefficient> {
    slots: Vec<Option<Poly<C>>>,
    index: LeadIndex,
    queue: BTreeSet<Pending>,
    bound: usize,
    dropped: usize,
    limits: CompletionLimits,
}

impl<C: Coefficient> Completion<C> {
    fn get(&self, lead: &Word) -> Option<&Poly<C>> {
        self.index
            .get(lead.letters())
            .and_then(|s| self.slots[s].as_ref())
    }

    fn reduce(&self, p: &Poly<C>) -> Poly<C> {
        normal_form_indexed(p, &self.index, |s| {
            self.slots[s].as_ref().expect("indexed slot is live")
        })
    }

    fn live(&self) -> impl Iterator<Item = (usize, &Poly<C>)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|p| (i, p)))
    }

    fn outcome(&self) -> CompletionOutcome<C> {
        let mut basis: Vec<Poly<C>> = self.live().map(|(_, p)| p.clone()).collect();
        basis.sort_by(|a, b| a.lead().cmp(&b.lead()));
        CompletionOutcome {
            obstructions: basis.iter().map(|p| p.lead().unwrap().clone()).collect(),
            basis,
            processed_word_bound: self.bound,
            obstructions_exact_upto: self.bound / 2,
            status: if self.dropped == 0 {
                CompletionStatus::Saturated
            } else {
                CompletionStatus::Truncated
            },
        }
    }

    fn limit(&self, what: &str) -> CompletionError<C> {
        CompletionError::Limit {
            limit: what.to_string(),
            partial: Box::new(self.outcome()),
        }
    }

    fn enqueue(&mut self, w1: &Word, w2: &Word) -> Result<(), CompletionError<C>> {
        for o in overlaps(w1, w2) {
            let word = o.word();
            if word.len() > self.bound {
                self.dropped += 1;
                continue;
            }
            self.queue.insert(Pending {
                word,
                first: w1.clone(),
                second: w2.clone(),
                middle_len: o.middle.len(),
            });
        }
        if self.queue.len() > self.limits.max_queue {
            return Err(self.limit("composition queue size"));
        }
        Ok(())
    }

    /// Add `p` (already irreducible) and restore inter-reducedness.
    fn insert(&mut self, p: Poly<C>) -> Result<(), CompletionError<C>> {
        let mut work = vec![p];
        while let Some(p) = work.pop() {
            let p = self.reduce(&p).monic();
            let Some(lead) = p.lead().cloned() else {
                continue;
            };

            // elements whose lead contains the new lead leave the basis
            let mut displaced = Vec::new();
            for i in 0..self.slots.len() {
                let hit = matches!(&self.slots[i], Some(q) if q.lead().unwrap().contains(&lead));
                if hit {
                    let q = self.slots[i].take().unwrap();
                    self.index.remove(q.lead().unwrap());
                    displaced.push(q);
                }
            }
            let slot = self.slots.len();
            self.slots.push(Some(p));
            self.index.insert(lead.clone(), slot);

            // tail reduction of the remaining elements
            for i in 0..slot {
                let needs = matches!(&self.slots[i], Some(q) if q.terms()[1..].iter().any(|(_, w)| w.contains(&lead)));
                if needs {
                    let q = self.slots[i].as_ref().unwrap();
                    let head = Poly::term(C::one(), q.lead().unwrap().clone());
                    let tail = q.sub(&head);
                    let reduced = head.add(&self.reduce(&tail));
                    self.slots[i] = Some(reduced);
                }
            }

            if self.index.len() > self.limits.max_basis {
                return Err(self.limit("basis size"));
            }
            let leads: Vec<Word> = self
                .live()
                .map(|(_, q)| q.lead().unwrap().clone())
                .collect();
            for other in &leads {
                self.enqueue(&lead, other)?;
                if *other != lead {
                    self.enqueue(other, &lead)?;
                }
            }
            work.extend(displaced.into_iter().rev());
        }
        Ok(())
    }
}

/// Degree-bounded completion with default [`CompletionLimits`].
pub fn complete<C: Coefficient>(
    relations: &[Poly<C>],
    max_word_len: usize,
) -> Result<CompletionOutcome<C>, CompletionError<C>> {
    complete_with(relations, max_word_len, &CompletionLimits::default())
}

/// Run completion, processing compositions in increasing (length, deglex)
/// order of their words up to `max_word_len`.
///
/// Obstructions of the result are exact up to `max_word_len / 2`.
pub fn complete_with<C: Coefficient>(
    relations: &[Poly<C>],
    max_word_len: usize,
    limits: &CompletionLimits,
) -> Result<CompletionOutcome<C>, CompletionError<C>> {
    for r in relations {
        match r.degree() {
            None => return Err(CompletionError::Usage("zero relation".into())),
            Some(d) if d > max_word_len => {
                return Err(CompletionError::Usage(format!(
                    "relation of degree {d} exceeds the word bound {max_word_len}"
                )))
            }
            _ => {}
        }
    }
    let mut state = Completion {
        slots: Vec::new(),
        index: LeadIndex::new(),
        queue: BTreeSet::new(),
        bound: max_word_len,
        dropped: 0,
        limits: limits.clone(),
    };
    let mut sorted: Vec<&Poly<C>> = relations.iter().collect();
    sorted.sort_by(|a, b| a.lead().cmp(&b.lead()));
    for r in sorted {
        state.insert(r.clone())?;
    }

    let mut steps = 0usize;
    while let Some(next) = state.queue.pop_first() {
        steps += 1;
        if steps > state.limits.max_steps {
            return Err(state.limit("completion steps"));
        }
        let (Some(f), Some(g)) = (state.get(&next.first), state.get(&next.second)) else {
            continue;
        };
        let k = next.middle_len;
        let o = Overlap {
            left: next.first.slice(0, next.first.len() - k),
            middle: next.second.slice(0, k),
            right: next.second.slice(k, next.second.len()),
        };
        let r = composition_result(f, g, &o).expect("queued overlap matches live leads");
        let r = state.reduce(&r);
        if !r.is_zero() {
            state.insert(r)?;
        }
    }
    Ok(state.outcome())
}

/// Obstructions of length at most `n`, in deglex order; completes up to `2n`.
pub fn obstructions_of_algebra<C: Coefficient>(
    relations: &[Poly<C>],
    n: usize,
) -> Result<Vec<Word>, CompletionError<C>> {
    if n == 0 {
        return Err(CompletionError::Usage("n must be at least 1".into()));
    }
    Ok(complete(relations, (2 * n).max(max_degree(relations)))?.obstructions_up_to(n))
}

/// `O_A(1..=n)`: number of obstructions of length at most k.
pub fn cogrowth_algebra<C: Coefficient>(
    relations: &[Poly<C>],
    n: usize,
) -> Result<Vec<usize>, CompletionError<C>> {
    let obs = obstructions_of_algebra(relations, n)?;
    Ok(cumulative_counts(obs.iter().map(Word::len), n))
}

/// `out[k-1]` = number of lengths `<= k`, for k in 1..=n.
pub(crate) fn cumulative_counts(lengths: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut per_len = vec![0usize; n + 1];
    for l in lengths {
        if l <= n {
            per_len[l] += 1;
        }
    }
    let mut acc = per_len[0];
    (1..=n)
        .map(|k| {
            acc += per_len[k];
            acc
        })
        .collect()
}

fn max_degree<C: Coefficient>(relations: &[Poly<C>]) -> usize {
    relations.iter().filter_map(Poly::degree).max().unwrap_or(0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Certified,
    NotCertified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::NotCertified => "not_certified",
        })
    }
}

/// Outcome of the finite-basis test on the segment `[n, 2n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<C = crate::Rational> {
    pub verdict: Verdict,
    pub n: usize,
    /// Largest relation degree.
    pub max_degree: usize,
    /// On success the finite basis (leads shorter than `n`).
    pub basis: Vec<Poly<C>>,
    /// Obstruction lengths found in `[n, 2n]`, ascending with repeats.
    pub segment_lengths: Vec<usize>,
    pub status: CompletionStatus,
}

impl<C: Coefficient> Certificate<C> {
    /// Key-value document: verdict, N, m, basis polynomials, obstruction lengths.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = format!(
            "verdict={}\nN={}\nm={}\ncompletion={}\n",
            self.verdict, self.n, self.max_degree, self.status
        );
        for p in &self.basis {
            out.push_str(&format!("basis={}\n", p.display(alphabet)));
        }
        let lengths: Vec<String> = self.segment_lengths.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("obstruction_lengths={}\n", lengths.join(",")));
        out
    }
}

/// Certified iff no obstruction length lies in `[n, 2n]` after completing up to `2n`.
pub fn certify_finite_basis<C: Coefficient>(
    relations: &[Poly<C>],
    n: usize,
) -> Result<Certificate<C>, CompletionError<C>> {
    certify_finite_basis_with(relations, n, &CompletionLimits::default())
}

pub fn certify_finite_basis_with<C: Coefficient>(
    relations: &[Poly<C>],
    n: usize,
    limits: &CompletionLimits,
) -> Result<Certificate<C>, CompletionError<C>> {
    let m = max_degree(relations);
    if n < m || n == 0 {
        return Err(CompletionError::Usage(format!(
            "N = {n} must be at least the maximal relation degree {m} and positive"
        )));
    }
    let outcome = complete_with(relations, 2 * n, limits)?;
    let segment_lengths: Vec<usize> = outcome
        .obstructions
        .iter()
        .map(Word::len)
        .filter(|l| (n..=2 * n).contains(l))
        .collect();
    let verdict = if segment_lengths.is_empty() {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    };
    let basis = match verdict {
        Verdict::Certified => outcome
            .basis
            .iter()
            .filter(|p| p.degree().unwrap() < n)
            .cloned()
            .collect(),
        Verdict::NotCertified => Vec::new(),
    };
    Ok(Certificate {
        verdict,
        n,
        max_degree: m,
        basis,
        segment_lengths,
        status: outcome.status,
    })
}

/// Compositions of `basis` with word length at most `max_word_len` whose
/// result does not reduce to zero.
pub fn nonzero_composition_residues<C: Coefficient>(
    basis: &[Poly<C>],
    max_word_len: usize,
) -> Vec<(Overlap, Poly<C>)> {
    let mut index = LeadIndex::new();
    for (i, g) in basis.iter().enumerate() {
        index.insert(g.lead().unwrap().clone(), i);
    }
    let mut out = Vec::new();
    for f in basis {
        for g in basis {
            for o in overlaps(f.lead().unwrap(), g.lead().unwrap()) {
                if o.word().len() > max_word_len {
                    continue;
                }
                let r = composition_result(f, g, &o).expect("leads match");
                let r = normal_form_indexed(&r, &index, |s| &basis[s]);
                if !r.is_zero() {
                    out.push((o, r));
                }
            }
        }
    }
    out
}

/// Leading words of degree at most `n` of the span of `u·f·v` over all
/// relations `f` and words `u`, `v` with `|u·f·v| <= n + slack`.
///
/// Under-approximates the reducible words; nondecreasing in `slack`.
pub fn reducible_oracle<C: Coefficient>(
    relations: &[Poly<C>],
    alphabet: &Alphabet,
    n: usize,
    slack: usize,
    max_dimension: usize,
) -> crate::Result<BTreeSet<Word>> {
    let top = n + slack;
    let k = alphabet.len();
    let dimension: usize = (0..=top)
        .try_fold(0usize, |acc, l| {
            k.checked_pow(l as u32).and_then(|p| acc.checked_add(p))
        })
        .unwrap_or(usize::MAX);
    if dimension > max_dimension {
        return Err(Error::Resource(format!(
            "oracle dimension {dimension} exceeds cap {max_dimension}"
        )));
    }
    let mut pivots: HashMap<Word, Poly<C>> = HashMap::new();
    for f in relations {
        let Some(d) = f.degree() else { continue };
        if d > top {
            continue;
        }
        let f = f.monic();
        let contexts = alphabet.words_up_to(top - d);
        for u in &contexts {
            for v in &contexts {
                if u.len() + v.len() + d > top {
                    continue;
                }
                let mut row = f.sandwich(u.letters(), v.letters());
                while let Some(lead) = row.lead() {
                    match pivots.get(lead) {
                        Some(p) => row = row.sub(&p.scale(row.lead_coeff().unwrap())),
                        None => {
                            let lead = lead.clone();
                            pivots.insert(lead, row.monic());
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(pivots.into_keys().filter(|w| w.len() <= n).collect())
}

/// Run [`reducible_oracle`] with slack 2, 4, ... until two successive results
/// agree. Returns the stable set and the slack at which it was first seen.
pub fn stable_reducible_oracle<C: Coefficient>(
    relations: &[Poly<C>],
    alphabet: &Alphabet,
    n: usize,
    max_dimension: usize,
) -> crate::Result<(BTreeSet<Word>, usize)> {
    let mut slack = 2;
    let mut prev = reducible_oracle(relations, alphabet, n, slack, max_dimension)?;
    loop {
        let next = reducible_oracle(relations, alphabet, n, slack + 2, max_dimension)?;
        if next == prev {
            return Ok((prev, slack));
        }
        prev = next;
        slack += 2;
    }
}
