//! Growth of the language of words avoiding a set of obstructions.
//!
//! `V(n)` counts the avoiding words of length at most `n`, the empty word
//! included, so `V(0) = 1` whenever the empty word is not itself forbidden.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Word};

/// Deterministic, total multi-pattern automaton. Live states are the proper
/// prefixes of obstructions; every completed obstruction leads to a single
/// absorbing dead state.
#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    alphabet_size: usize,
    // transitions[state * k + letter]; the dead state is `dead`
    transitions: Vec<usize>,
    live: usize,
    dead: usize,
}

impl AvoidanceAutomaton {
    /// Rejects sets where one obstruction is a subword of another.
    pub fn new(obstructions: &[Word], alphabet: &Alphabet) -> Result<Self> {
        let k = alphabet.len();
        for w in obstructions {
            if !alphabet.contains_word(w) {
                return Err(Error::usage(
                    "obstruction uses a letter outside the alphabet",
                ));
            }
        }
        let mut set: Vec<&Word> = obstructions.iter().collect();
        set.sort();
        set.dedup();
        for (i, a) in set.iter().enumerate() {
            for b in &set[i + 1..] {
                if b.contains(a) {
                    return Err(Error::usage(format!(
                        "obstruction set is not subword-minimal: {} is inside {}",
                        alphabet.render(a),
                        alphabet.render(b)
                    )));
                }
            }
        }

        // trie over proper prefixes; completed words go to the dead marker
        const DEAD: usize = usize::MAX;
        const UNSET: usize = usize::MAX - 1;
        let mut goto: Vec<Vec<usize>> = vec![vec![UNSET; k]];
        let mut root_dead = false;
        for w in &set {
            if w.is_empty() {
                root_dead = true;
                continue;
            }
            let mut s = 0;
            let letters = w.letters();
            for (i, &c) in letters.iter().enumerate() {
                let c = c as usize;
                if i + 1 == letters.len() {
                    goto[s][c] = DEAD;
                } else {
                    if goto[s][c] == UNSET {
                        goto.push(vec![UNSET; k]);
                        goto[s][c] = goto.len() - 1;
                    }
                    s = goto[s][c];
                }
            }
        }
        let live = if root_dead { 0 } else { goto.len() };
        let dead = live;
        let mut transitions = vec![dead; (live + 1) * k];
        if !root_dead {
            // breadth-first failure links complete the transition function
            let mut fail = vec![0usize; live];
            let mut queue = VecDeque::new();
            for c in 0..k {
                let t = goto[0][c];
                transitions[c] = match t {
                    UNSET => 0,
                    DEAD => dead,
                    t => {
                        fail[t] = 0;
                        queue.push_back(t);
                        t
                    }
                };
            }
            while let Some(s) = queue.pop_front() {
                for c in 0..k {
                    let via_fail = transitions[fail[s] * k + c];
                    transitions[s * k + c] = match goto[s][c] {
                        UNSET => via_fail,
                        DEAD => dead,
                        t => {
                            fail[t] = via_fail;
                            queue.push_back(t);
                            t
                        }
                    };
                }
            }
        }
        Ok(AvoidanceAutomaton {
            alphabet_size: k,
            transitions,
            live,
            dead,
        })
    }

    pub fn live_states(&self) -> usize {
        self.live
    }

    /// Live states plus the dead sink (absent when nothing is forbidden).
    pub fn state_count(&self) -> usize {
        if self.has_dead_state() {
            self.live + 1
        } else {
            self.live
        }
    }

    pub fn has_dead_state(&self) -> bool {
        self.live == 0 || self.transitions[..self.live * self.alphabet_size].contains(&self.dead)
    }

    pub fn step(&self, state: usize, letter: u8) -> usize {
        self.transitions[state * self.alphabet_size + letter as usize]
    }

    pub fn is_dead(&self, state: usize) -> bool {
        state == self.dead
    }

    /// Whether `w` contains no obstruction.
    pub fn accepts(&self, w: &Word) -> bool {
        if self.live == 0 {
            return false;
        }
        let mut s = 0;
        for &c in w.letters() {
            s = self.step(s, c);
            if self.is_dead(s) {
                return false;
            }
        }
        true
    }

    /// `V(0..=n)`.
    pub fn growth(&self, n: usize) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(n + 1);
        if self.live == 0 {
            out.resize(n + 1, BigUint::zero());
            return out;
        }
        let mut counts = vec![BigUint::zero(); self.live];
        counts[0] = BigUint::one();
        let mut total = BigUint::one();
        out.push(total.clone());
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); self.live];
            for (s, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for a in 0..self.alphabet_size {
                    let t = self.transitions[s * self.alphabet_size + a];
                    if t != self.dead {
                        next[t] += c;
                    }
                }
            }
            counts = next;
            for c in &counts {
                total += c;
            }
            out.push(total.clone());
        }
        out
    }

    /// Matrix of transition counts between live states, as TSV rows.
    pub fn transfer_matrix_tsv(&self) -> String {
        let mut out = String::new();
        for s in 0..self.live {
            let mut row = vec![0usize; self.live];
            for a in 0..self.alphabet_size {
                let t = self.transitions[s * self.alphabet_size + a];
                if t != self.dead {
                    row[t] += 1;
                }
            }
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(out, "{}", cells.join("\t")).unwrap();
        }
        out
    }
}

/// `V(0..=n)` for the words over `alphabet` avoiding `obstructions`.
pub fn growth_values(obstructions: &[Word], alphabet: &Alphabet, n: usize) -> Result<Vec<BigUint>> {
    Ok(AvoidanceAutomaton::new(obstructions, alphabet)?.growth(n))
}
