//! Online suffix automaton over small integer alphabets.

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct State {
    len: usize,
    link: u32,
    // end position (exclusive) of the first occurrence of the state's words
    first_end: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct SuffixAutomaton {
    k: usize,
    states: Vec<State>,
    next: Vec<u32>,
    last: u32,
    text: Vec<u8>,
}

impl SuffixAutomaton {
    pub(crate) fn new(alphabet_size: usize) -> Self {
        SuffixAutomaton {
            k: alphabet_size,
            states: vec![State {
                len: 0,
                link: NONE,
                first_end: 0,
            }],
            next: vec![NONE; alphabet_size],
            last: 0,
            text: Vec::new(),
        }
    }

    pub(crate) fn from_text(alphabet_size: usize, text: &[u8]) -> Self {
        let mut sam = Self::new(alphabet_size);
        for &c in text {
            sam.extend(c);
        }
        sam
    }

    fn go(&self, s: u32, c: u8) -> u32 {
        self.next[s as usize * self.k + c as usize]
    }

    fn set(&mut self, s: u32, c: u8, t: u32) {
        self.next[s as usize * self.k + c as usize] = t;
    }

    fn new_state(&mut self, len: usize, link: u32, first_end: usize) -> u32 {
        self.states.push(State {
            len,
            link,
            first_end,
        });
        self.next.extend(std::iter::repeat_n(NONE, self.k));
        (self.states.len() - 1) as u32
    }

    pub(crate) fn extend(&mut self, c: u8) {
        self.text.push(c);
        let end = self.text.len();
        let cur = self.new_state(self.states[self.last as usize].len + 1, NONE, end);
        let mut p = self.last;
        while p != NONE && self.go(p, c) == NONE {
            self.set(p, c, cur);
            p = self.states[p as usize].link;
        }
        if p == NONE {
            self.states[cur as usize].link = 0;
        } else {
            let q = self.go(p, c);
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let qs = self.states[q as usize].clone();
                let clone = self.new_state(self.states[p as usize].len + 1, qs.link, qs.first_end);
                for a in 0..self.k {
                    let t = self.go(q, a as u8);
                    self.set(clone, a as u8, t);
                }
                while p != NONE && self.go(p, c) == q {
                    self.set(p, c, clone);
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
    }

    pub(crate) fn text(&self) -> &[u8] {
        &self.text
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, w: &[u8]) -> bool {
        let mut s = 0u32;
        for &c in w {
            if c as usize >= self.k {
                return false;
            }
            s = self.go(s, c);
            if s == NONE {
                return false;
            }
        }
        true
    }

    /// Number of distinct factors of length exactly `n`.
    pub(crate) fn count_factors(&self, n: usize) -> usize {
        if n == 0 {
            return 1;
        }
        self.states[1..]
            .iter()
            .filter(|s| self.states[s.link as usize].len < n && n <= s.len)
            .count()
    }

    /// Minimal forbidden words of the text of length at most `max_len`.
    ///
    /// For a state `p` with suffix link `q` and a letter `a`, `short(p)·a` is
    /// minimal forbidden iff `p` has no `a`-transition and `q` has one; the
    /// root contributes the letters absent from the text.
    pub(crate) fn minimal_forbidden(&self, max_len: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        if max_len == 0 {
            return out;
        }
        for a in 0..self.k as u8 {
            if self.go(0, a) == NONE {
                out.push(vec![a]);
            }
        }
        for (i, s) in self.states.iter().enumerate().skip(1) {
            let q = s.link;
            let short_len = self.states[q as usize].len + 1;
            if short_len + 1 > max_len {
                continue;
            }
            for a in 0..self.k as u8 {
                if self.go(i as u32, a) == NONE && self.go(q, a) != NONE {
                    let mut w = self.text[s.first_end - short_len..s.first_end].to_vec();
                    w.push(a);
                    out.push(w);
                }
            }
        }
        out
    }
}
