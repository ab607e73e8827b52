//! Words, the degree-lexicographic order and polynomials of the free algebra.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::coeff::{Coefficient, Rational};
use crate::error::{Error, Result};

/// An ordered set of single-character letters. The first letter is the least.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::usage("alphabet must not be empty"));
        }
        if letters.len() > u8::MAX as usize {
            return Err(Error::usage("alphabet has more than 255 letters"));
        }
        let mut seen = BTreeSet::new();
        for &c in &letters {
            if c.is_whitespace() || !seen.insert(c) {
                return Err(Error::usage(format!("invalid or repeated letter {c:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Alphabet from the letters of `s`, in the order given.
    pub fn from_letters(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: u8) -> char {
        self.letters[index as usize]
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.letters.iter().position(|&l| l == c).map(|i| i as u8)
    }

    /// Parse a word written as juxtaposed letters.
    pub fn word(&self, s: &str) -> Result<Word> {
        s.chars()
            .map(|c| {
                self.index_of(c)
                    .ok_or_else(|| Error::usage(format!("letter {c:?} is not in the alphabet")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.0.iter().all(|&i| (i as usize) < self.letters.len())
    }

    /// Letters of `w` as a string; the empty word renders as the empty string.
    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.letter(i)).collect()
    }

    /// Degree-lexicographic comparison, checking both words belong here.
    pub fn deglex_cmp(&self, u: &Word, v: &Word) -> Result<Ordering> {
        if !self.contains_word(u) || !self.contains_word(v) {
            return Err(Error::usage("word uses a letter outside the alphabet"));
        }
        Ok(u.cmp(v))
    }

    /// Every word of length exactly `n`, in increasing order.
    pub fn words_of_len(&self, n: usize) -> Vec<Word> {
        let k = self.len() as u8;
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| (0..k).map(move |c| w.appended(c)))
                .collect();
        }
        out
    }

    /// Every word of length at most `n`, in increasing order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|l| self.words_of_len(l)).collect()
    }
}

/// A monomial of the free algebra: a finite sequence of letter indices.
///
/// `Ord` is the degree-lexicographic order: shorter words are smaller and
/// words of equal length compare lexicographically by letter precedence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right`.
    pub fn sandwich(&self, left: &[u8], right: &[u8]) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn appended(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Whether `pat` occurs in `self` starting at `pos`.
    pub fn occurs_at(&self, pat: &[u8], pos: usize) -> bool {
        pos + pat.len() <= self.len() && &self.0[pos..pos + pat.len()] == pat
    }

    pub fn find(&self, pat: &[u8]) -> Option<usize> {
        (0..=self.len().checked_sub(pat.len())?).find(|&i| self.occurs_at(pat, i))
    }

    /// Whether `pat` is a (contiguous) subword of `self`.
    pub fn contains(&self, pat: &Word) -> bool {
        self.find(&pat.0).is_some()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Hash and Eq agree with the slice impls, so hash maps keyed by Word can be
// probed with subslices.
impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 26) {
            let s: String = self.0.iter().map(|&c| (b'a' + c) as char).collect();
            write!(f, "Word({s:?})")
        } else {
            write!(f, "Word({:?})", self.0)
        }
    }
}

/// A polynomial: nonzero coefficients on words, sorted strictly descending.
/// The empty term list is zero and `terms[0]` is the leading term.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C = Rational> {
    terms: Vec<(C, Word)>,
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(C::one(), w)
    }

    pub fn term(c: C, w: Word) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(c, w)],
            }
        }
    }

    /// Merge like terms, drop zeros and sort descending.
    pub fn from_terms(raw: impl IntoIterator<Item = (C, Word)>) -> Self {
        let mut acc: BTreeMap<Word, C> = BTreeMap::new();
        for (c, w) in raw {
            match acc.get_mut(&w) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(w, c);
                }
            }
        }
        Poly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (c, w))
                .collect(),
        }
    }

    fn from_sorted_unchecked(terms: Vec<(C, Word)>) -> Self {
        debug_assert!(terms.windows(2).all(|p| p[0].1 > p[1].1));
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(C, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Word> {
        self.terms.first().map(|(_, w)| w)
    }

    pub fn lead_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Length of the leading word; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.lead().map(Word::len)
    }

    /// Whether every monomial lies over `alphabet`.
    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.terms.iter().all(|(_, w)| alphabet.contains_word(w))
    }

    pub fn is_monic(&self) -> bool {
        self.lead_coeff().is_some_and(C::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(a, w)| (a.mul(c), w.clone()))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(a, w)| (a.neg(), w.clone()))
                .collect(),
        )
    }

    /// `left · self · right`. Multiplying by words preserves the order.
    pub fn sandwich(&self, left: &[u8], right: &[u8]) -> Self {
        Self::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(a, w)| (a.clone(), w.sandwich(left, right)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &C| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].1.cmp(&b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((rhs(&b[j].0), b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].0.sub(&b[j].0)
                    } else {
                        a[i].0.add(&b[j].0)
                    };
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(c, w)| (rhs(c), w.clone())));
        Self::from_sorted_unchecked(out)
    }

    /// Coefficient-wise image in another field; `None` if some coefficient
    /// has no image.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Poly<D>> {
        let raw = self
            .terms
            .iter()
            .map(|(c, w)| f(c).map(|d| (d, w.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_terms(raw))
    }

    /// Printable form in the polynomial grammar, e.g. `2/3*xxy + y - 1`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a, C> {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

pub struct PolyDisplay<'a, C> {
    poly: &'a Poly<C>,
    alphabet: &'a Alphabet,
}

impl<C: Coefficient> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word = self.alphabet.render(w);
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&word)?;
            } else {
                write!(f, "{abs}*{word}")?;
            }
        }
        Ok(())
    }
}

/// One reduction step: eliminate the monomial `p.terms()[monomial]` using the
/// occurrence of `g`'s leading word starting at `position`.
pub fn reduce_once<C: Coefficient>(
    p: &Poly<C>,
    g: &Poly<C>,
    monomial: usize,
    position: usize,
) -> Result<Poly<C>> {
    if !g.is_monic() {
        return Err(Error::usage("reducer must be monic"));
    }
    let (c, w) = p
        .terms
        .get(monomial)
        .ok_or_else(|| Error::usage(format!("no monomial at index {monomial}")))?;
    let lead = g.lead().expect("monic polynomial is nonzero");
    if !w.occurs_at(lead.letters(), position) {
        return Err(Error::usage(format!(
            "leading word does not occur at position {position}"
        )));
    }
    let left = &w.letters()[..position];
    let right = &w.letters()[position + lead.len()..];
    Ok(p.sub(&g.sandwich(left, right).scale(c)))
}

/// Index of monic polynomials by leading word, used to find reducers.
#[derive(Clone, Debug)]
pub(crate) struct LeadIndex {
    by_lead: HashMap<Word, usize>,
    // multiset of lead lengths, ascending
    lengths: BTreeMap<usize, usize>,
}

impl LeadIndex {
    pub(crate) fn new() -> Self {
        LeadIndex {
            by_lead: HashMap::new(),
            lengths: BTreeMap::new(),
        }
    }

    /// Keeps the first registration when leads repeat.
    pub(crate) fn insert(&mut self, lead: Word, slot: usize) {
        let len = lead.len();
        if let std::collections::hash_map::Entry::Vacant(e) = self.by_lead.entry(lead) {
            e.insert(slot);
            *self.lengths.entry(len).or_default() += 1;
        }
    }

    pub(crate) fn remove(&mut self, lead: &Word) -> Option<usize> {
        let slot = self.by_lead.remove(lead)?;
        let n = self.lengths.get_mut(&lead.len()).expect("length tracked");
        *n -= 1;
        if *n == 0 {
            self.lengths.remove(&lead.len());
        }
        Some(slot)
    }

    pub(crate) fn get(&self, lead: &[u8]) -> Option<usize> {
        self.by_lead.get(lead).copied()
    }

    pub(crate) fn len(&self) -> usize {
        self.by_lead.len()
    }

    /// Leftmost occurrence in `w` of an indexed lead; among leads starting
    /// there, the shortest (deglex-least). Returns `(position, lead length, slot)`.
    pub(crate) fn find_reducer(&self, w: &[u8]) -> Option<(usize, usize, usize)> {
        for pos in 0..=w.len() {
            for &len in self.lengths.keys() {
                if pos + len > w.len() {
                    break;
                }
                if let Some(&slot) = self.by_lead.get(&w[pos..pos + len]) {
                    return Some((pos, len, slot));
                }
            }
        }
        None
    }
}

/// Fully reduce `p` modulo the monic `basis`.
///
/// Strategy: take the greatest reducible monomial, its leftmost reducible
/// occurrence and, among leads matching there, the least one.
pub fn normal_form<C: Coefficient>(p: &Poly<C>, basis: &[Poly<C>]) -> Poly<C> {
    let mut index = LeadIndex::new();
    for (i, g) in basis.iter().enumerate() {
        assert!(g.is_monic(), "basis elements must be monic");
        index.insert(g.lead().unwrap().clone(), i);
    }
    normal_form_indexed(p, &index, |slot| &basis[slot])
}

pub(crate) fn normal_form_indexed<'a, C: Coefficient + 'a>(
    p: &Poly<C>,
    index: &LeadIndex,
    reducer: impl Fn(usize) -> &'a Poly<C>,
) -> Poly<C> {
    if index.len() == 0 {
        return p.clone();
    }
    let mut work: BTreeMap<Word, C> = p
        .terms
        .iter()
        .map(|(c, w)| (w.clone(), c.clone()))
        .collect();
    let mut done: Vec<(C, Word)> = Vec::new();
    // Monomials above the current one are irreducible and never touched again,
    // so popping the maximum follows the greatest-reducible-monomial rule.
    while let Some((w, c)) = work.pop_last() {
        let Some((pos, len, slot)) = index.find_reducer(w.letters()) else {
            done.push((c, w));
            continue;
        };
        let g = reducer(slot);
        let left = &w.letters()[..pos];
        let right = &w.letters()[pos + len..];
        for (gc, gw) in &g.terms[1..] {
            let m = gw.sandwich(left, right);
            let delta = c.mul(gc);
            match work.get_mut(&m) {
                Some(e) => {
                    *e = e.sub(&delta);
                    if e.is_zero() {
                        work.remove(&m);
                    }
                }
                None => {
                    work.insert(m, delta.neg());
                }
            }
        }
    }
    Poly::from_sorted_unchecked(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> Alphabet {
        Alphabet::from_letters("xy").unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(terms: &[(i64, &str)]) -> Poly {
        let a = xy();
        Poly::from_terms(terms.iter().map(|&(c, w)| (q(c), a.word(w).unwrap())))
    }

    #[test]
    fn deglex_examples() {
        let a = xy();
        let w = |s| a.word(s).unwrap();
        assert_eq!(a.deglex_cmp(&w("xx"), &w("y")).unwrap(), Ordering::Greater);
        assert_eq!(a.deglex_cmp(&w("xy"), &w("yx")).unwrap(), Ordering::Less);
        assert_eq!(a.deglex_cmp(&w(""), &w("x")).unwrap(), Ordering::Less);
        assert!(a.deglex_cmp(&Word::new(vec![5]), &w("x")).is_err());
    }

    #[test]
    fn deglex_is_total_and_length_first() {
        let words = xy().words_up_to(5);
        for u in &words {
            for v in &words {
                let o = u.cmp(v);
                assert_eq!(o, v.cmp(u).reverse());
                assert_eq!(o == Ordering::Equal, u == v);
                if u.len() != v.len() {
                    assert_eq!(o, u.len().cmp(&v.len()));
                }
            }
        }
        // words_up_to enumerates in increasing order, so sortedness checks transitivity
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(poly(&[(1, "xy"), (1, "xy")]), poly(&[(2, "xy")]));
        assert!(poly(&[(1, "xy"), (-1, "xy")]).is_zero());
        let p = poly(&[(1, "x"), (1, "yx")]);
        let a = xy();
        assert_eq!(p.terms()[0].1, a.word("yx").unwrap());
        assert_eq!(p.terms()[1].1, a.word("x").unwrap());
    }

    #[test]
    fn reduce_once_examples() {
        let g = poly(&[(1, "yx"), (-1, "xx")]);
        let p = poly(&[(1, "yyx")]);
        assert_eq!(reduce_once(&p, &g, 0, 1).unwrap(), poly(&[(1, "yxx")]));
        assert!(reduce_once(&g, &g, 0, 0).unwrap().is_zero());
        assert!(reduce_once(&poly(&[(1, "xy")]), &g, 0, 0).is_err());
        assert!(reduce_once(&p, &g, 3, 0).is_err());
    }

    #[test]
    fn reduce_once_rejects_non_monic() {
        let g = poly(&[(2, "yx"), (-1, "xx")]);
        assert!(reduce_once(&poly(&[(1, "yx")]), &g, 0, 0).is_err());
    }

    /// Every terminal polynomial reachable by any sequence of single
    /// reductions (any monomial, any occurrence, any reducer).
    fn all_rewriting_fixpoints(p: &Poly, basis: &[Poly]) -> Vec<Poly> {
        let mut seen: Vec<Poly> = Vec::new();
        let mut stack = vec![p.clone()];
        let mut terminal = Vec::new();
        while let Some(cur) = stack.pop() {
            if seen.contains(&cur) {
                continue;
            }
            seen.push(cur.clone());
            let mut moved = false;
            for (mi, (_, w)) in cur.terms().iter().enumerate() {
                for g in basis {
                    let lead = g.lead().unwrap();
                    for pos in 0..w.len() + 1 {
                        if w.occurs_at(lead.letters(), pos) {
                            moved = true;
                            stack.push(reduce_once(&cur, g, mi, pos).unwrap());
                        }
                    }
                }
            }
            if !moved && !terminal.contains(&cur) {
                terminal.push(cur);
            }
        }
        terminal
    }

    #[test]
    fn normal_form_matches_exhaustive_rewriting() {
        let basis = vec![poly(&[(1, "yx"), (-1, "xx")])];
        let p = poly(&[(1, "yyx")]);
        let fixpoints = all_rewriting_fixpoints(&p, &basis);
        assert_eq!(fixpoints, vec![poly(&[(1, "xxx")])]);
        assert_eq!(normal_form(&p, &basis), poly(&[(1, "xxx")]));
    }

    #[test]
    fn normal_form_examples() {
        let basis = vec![poly(&[(1, "yx"), (-1, "xx")])];
        assert_eq!(normal_form(&poly(&[(1, "xy")]), &basis), poly(&[(1, "xy")]));
        assert!(normal_form(&basis[0], &basis).is_zero());
    }

    #[test]
    fn normal_form_strategy_prefers_shortest_lead_at_leftmost_position() {
        // Both x and xy start at position 0 of xy; the shorter lead wins.
        let basis = vec![poly(&[(1, "xy"), (-1, "y")]), poly(&[(1, "x"), (-2, "")])];
        let nf = normal_form(&poly(&[(1, "xy")]), &basis);
        assert_eq!(nf, poly(&[(2, "y")]));
    }

    #[test]
    fn display_uses_grammar() {
        let a = xy();
        let p = Poly::from_terms(vec![
            (Rational::new(2.into(), 3.into()), a.word("xxy").unwrap()),
            (q(1), a.word("y").unwrap()),
            (q(-1), Word::empty()),
        ]);
        assert_eq!(p.display(&a).to_string(), "2/3*xxy + y - 1");
        assert_eq!(Poly::<Rational>::zero().display(&a).to_string(), "0");
        assert_eq!(poly(&[(-1, "x")]).display(&a).to_string(), "-x");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..=3, prop::collection::vec(0u8..2, 0..4)), 0..6)
            .prop_map(|raw| Poly::from_terms(raw.into_iter().map(|(c, w)| (q(c), Word::new(w)))))
    }

    fn in_ideal_span(r: &Poly, basis: &[Poly], max_len: usize) -> bool {
        // r ∈ span{u g v} for words u, v with |u g v| ≤ max_len, by echelon reduction.
        let mut pivots: HashMap<Word, Poly> = HashMap::new();
        let words = xy().words_up_to(max_len);
        for g in basis {
            for u in &words {
                for v in &words {
                    if u.len() + g.degree().unwrap() + v.len() > max_len {
                        continue;
                    }
                    let mut row = g.sandwich(u.letters(), v.letters());
                    while let Some(l) = row.lead().cloned() {
                        match pivots.get(&l) {
                            Some(pv) => row = row.sub(&pv.scale(row.lead_coeff().unwrap())),
                            None => {
                                pivots.insert(l, row.monic());
                                break;
                            }
                        }
                    }
                }
            }
        }
        let mut r = r.clone();
        while let Some(l) = r.lead().cloned() {
            match pivots.get(&l) {
                Some(pv) => r = r.sub(&pv.scale(r.lead_coeff().unwrap())),
                None => return false,
            }
        }
        true
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(p in arb_poly()) {
            let again = Poly::from_terms(p.terms().iter().cloned());
            prop_assert_eq!(again, p);
        }

        #[test]
        fn reduce_once_only_removes_the_target(p in arb_poly()) {
            let g = poly(&[(1, "yx"), (-1, "xx"), (1, "y")]);
            let lead = g.lead().unwrap().clone();
            for (mi, (_, w)) in p.terms().iter().enumerate() {
                if let Some(pos) = w.find(lead.letters()) {
                    let r = reduce_once(&p, &g, mi, pos).unwrap();
                    let above = |q: &Poly| q.terms().iter().filter(|(_, m)| m >= w).cloned().collect::<Vec<_>>();
                    let mut expected = above(&p);
                    expected.retain(|(_, m)| m != w);
                    prop_assert_eq!(above(&r), expected);
                }
            }
        }

        #[test]
        fn normal_form_is_irreducible_deterministic_and_congruent(p in arb_poly()) {
            let basis = vec![poly(&[(1, "yx"), (-1, "xx")]), poly(&[(1, "yyy"), (-1, "x")])];
            let nf = normal_form(&p, &basis);
            prop_assert_eq!(&nf, &normal_form(&p, &basis));
            for (_, w) in nf.terms() {
                for g in &basis {
                    prop_assert!(!w.contains(g.lead().unwrap()));
                }
            }
            prop_assert!(in_ideal_span(&p.sub(&nf), &basis, 4));
        }
    }
}
