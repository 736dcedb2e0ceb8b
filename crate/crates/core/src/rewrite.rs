//! Length-lexicographic string rewriting over generators `1..=n`.
//!
//! Every rule is length-preserving and strictly decreasing in length-lex
//! order, so any sequence of rule applications terminates.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::coxeter::{presentation, CoxeterGraph, Presentation};
use crate::error::{Error, Result};

/// A word over generators numbered from 1. Ordered length-lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l as usize > n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    /// Run-length form `[(letter, exponent), ...]`.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((x, e)) if *x == l => *e += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
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

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses space-separated 1-based indices, e.g. `"2 1 3"`.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| match t.parse::<u32>() {
                Ok(0) | Err(_) => Err(Error::WordParse(format!("bad generator {t:?}"))),
                Ok(v) => Ok(v),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `lhs -> rhs` with `|lhs| = |rhs|` and `lhs > rhs` in length-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs.len() != rhs.len() || lhs <= rhs || lhs.is_empty() {
            return Err(Error::BadRule {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        Ok(Rule { lhs, rhs })
    }

    /// Orients a relation `u = v` so the larger side is rewritten.
    pub fn oriented(u: Word, v: Word) -> Result<Self> {
        if u > v {
            Rule::new(u, v)
        } else {
            Rule::new(v, u)
        }
    }

    fn matches_at(&self, w: &[u32], pos: usize) -> bool {
        w.len() >= pos + self.lhs.len() && w[pos..pos + self.lhs.len()] == self.lhs.0[..]
    }

    fn apply_at(&self, w: &mut [u32], pos: usize) {
        w[pos..pos + self.rhs.len()].copy_from_slice(&self.rhs.0);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteSystem {
    n: usize,
    rules: Vec<Rule>,
    #[serde(skip)]
    max_lhs: usize,
}

impl RewriteSystem {
    pub fn new(n: usize, rules: Vec<Rule>) -> Result<Self> {
        for r in &rules {
            r.lhs.check_range(n)?;
            r.rhs.check_range(n)?;
        }
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        Ok(RewriteSystem { n, rules, max_lhs })
    }

    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        Self::new(p.n, p.rules.clone())
    }

    pub fn from_graph(g: &CoxeterGraph) -> Self {
        Self::from_presentation(&presentation(g)).expect("presentation rules are in range")
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.max_lhs
    }

    /// All `(position, rule index)` pairs where a rule applies.
    pub fn redexes(&self, w: &[u32]) -> Vec<(usize, usize)> {
        (0..w.len())
            .flat_map(|pos| {
                self.rules
                    .iter()
                    .enumerate()
                    .filter(move |(_, r)| r.matches_at(w, pos))
                    .map(move |(i, _)| (pos, i))
            })
            .collect()
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        (0..w.len()).all(|pos| self.rules.iter().all(|r| !r.matches_at(&w.0, pos)))
    }

    /// Leftmost-innermost reduction to an irreducible word. For a complete
    /// system this is the unique normal form.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut letters = w.0.clone();
        let mut pos = 0;
        'scan: while pos < letters.len() {
            for r in &self.rules {
                if r.matches_at(&letters, pos) {
                    r.apply_at(&mut letters, pos);
                    // a new redex can only start inside the rewritten window
                    pos = (pos + 1).saturating_sub(self.max_lhs);
                    continue 'scan;
                }
            }
            pos += 1;
        }
        Word(letters)
    }

    /// Reduction with a caller-chosen strategy: `choose` receives the current
    /// redexes and returns the index of the one to fire.
    pub fn reduce_by(&self, w: &Word, mut choose: impl FnMut(&[(usize, usize)]) -> usize) -> Word {
        let mut letters = w.0.clone();
        loop {
            let redexes = self.redexes(&letters);
            if redexes.is_empty() {
                return Word(letters);
            }
            let (pos, rule) = redexes[choose(&redexes) % redexes.len()];
            self.rules[rule].apply_at(&mut letters, pos);
        }
    }

    /// Resolves every critical pair (overlaps and inclusions of left-hand
    /// sides) whose overlap word is at most `max_overlap_len` letters.
    pub fn check_completeness(&self, max_overlap_len: usize) -> Result<CompletenessReport> {
        if self.max_lhs > 0 && max_overlap_len < 2 * self.max_lhs - 1 {
            return Err(Error::InvalidArgument(format!(
                "overlap bound {max_overlap_len} is below 2*{}-1",
                self.max_lhs
            )));
        }
        // rules indexed by first letter of their left-hand side
        let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for (i, r) in self.rules.iter().enumerate() {
            by_first[r.lhs.0[0] as usize].push(i);
        }
        let mut unresolved = BTreeSet::new();
        let mut examined = 0usize;
        let mut resolve = |word: Vec<u32>, a: (usize, usize), b: (usize, usize)| {
            examined += 1;
            let mut left = word.clone();
            self.rules[a.1].apply_at(&mut left, a.0);
            let mut right = word.clone();
            self.rules[b.1].apply_at(&mut right, b.0);
            if self.reduce(&Word(left)) != self.reduce(&Word(right)) {
                unresolved.insert(Word(word));
            }
        };
        for (i, r1) in self.rules.iter().enumerate() {
            let l1 = &r1.lhs.0;
            // proper overlaps: suffix of l1 == prefix of l2
            for start in 1..l1.len() {
                for &j in &by_first[l1[start] as usize] {
                    let l2 = &self.rules[j].lhs.0;
                    let overlap = l1.len() - start;
                    if overlap >= l2.len() || l1[start..] != l2[..overlap] {
                        continue;
                    }
                    let mut word = l1.clone();
                    word.extend_from_slice(&l2[overlap..]);
                    if word.len() <= max_overlap_len {
                        resolve(word, (0, i), (start, j));
                    }
                }
            }
            // inclusions: l2 a factor of l1
            for start in 0..l1.len() {
                for &j in &by_first[l1[start] as usize] {
                    if j != i && self.rules[j].matches_at(l1, start) && l1.len() <= max_overlap_len
                    {
                        resolve(l1.clone(), (0, i), (start, j));
                    }
                }
            }
        }
        Ok(CompletenessReport {
            complete: unresolved.is_empty(),
            unresolved: unresolved.into_iter().collect(),
            critical_pairs: examined,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    pub unresolved: Vec<Word>,
    pub critical_pairs: usize,
}

/// Normal forms of a right-angled monoid. All rules are commutations
/// `x_i x_j -> x_j x_i` (`i > j`), so a word is irreducible exactly when no
/// adjacent pair is such a descent.
#[derive(Clone, Debug)]
pub struct CanonicalForms {
    n: usize,
    // follows[a][b]: letter b may follow letter a (1-based, row 0 unused)
    follows: Vec<Vec<bool>>,
    complete: bool,
}

impl CanonicalForms {
    pub fn new(g: &CoxeterGraph) -> Result<Self> {
        if !g.is_right_angled() {
            return Err(Error::UnsupportedGraph(format!(
                "labels other than 2 and inf in {}",
                g.to_text().trim().replace('\n', "; ")
            )));
        }
        let n = g.rank();
        let rs = RewriteSystem::from_graph(g);
        let complete = rs.check_completeness(3)?.complete;
        let mut follows = vec![vec![true; n + 1]; n + 1];
        for r in rs.rules() {
            let l = r.lhs.letters();
            follows[l[0] as usize][l[1] as usize] = false;
        }
        Ok(CanonicalForms {
            n,
            follows,
            complete,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Irreducibility checked on adjacent pairs only.
    pub fn is_canonical(&self, w: &Word) -> Result<bool> {
        if !self.complete {
            return Err(Error::UnsupportedGraph(
                "commutation system is not complete in this vertex order".into(),
            ));
        }
        w.check_range(self.n)?;
        Ok(w.0
            .windows(2)
            .all(|p| self.follows[p[0] as usize][p[1] as usize]))
    }

    /// Number of irreducible words of length `k`, by dynamic programming on
    /// the last letter.
    pub fn count(&self, k: usize) -> BigUint {
        if k == 0 {
            return BigUint::from(1u32);
        }
        let mut ending: Vec<BigUint> = vec![BigUint::from(1u32); self.n + 1];
        ending[0] = BigUint::zero();
        for _ in 1..k {
            let mut next = vec![BigUint::zero(); self.n + 1];
            for (row, count) in self.follows.iter().zip(&ending).skip(1) {
                for (slot, &ok) in next.iter_mut().zip(row).skip(1) {
                    if ok {
                        *slot += count;
                    }
                }
            }
            ending = next;
        }
        ending.into_iter().sum()
    }

    /// Streams irreducible words of length `k` in length-lex order, refusing
    /// when there are more than `ceiling` of them.
    pub fn stream(&self, k: usize, ceiling: u64) -> Result<CanonicalWords<'_>> {
        let count = self.count(k);
        if count > BigUint::from(ceiling) {
            return Err(Error::CeilingExceeded {
                count: count.to_string(),
                ceiling,
            });
        }
        let first = (self.n > 0 || k == 0).then(|| vec![1u32; k]);
        Ok(CanonicalWords {
            forms: self,
            current: first,
            remaining: count.to_u64().unwrap_or(u64::MAX),
        })
    }
}

pub struct CanonicalWords<'a> {
    forms: &'a CanonicalForms,
    current: Option<Vec<u32>>,
    remaining: u64,
}

impl Iterator for CanonicalWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let out = Word(cur.clone());
        let follows = &self.forms.follows;
        let n = self.forms.n as u32;
        let mut w = cur;
        // odometer: bump the rightmost position that has a larger admissible
        // letter, then fill the tail minimally (a letter may always repeat)
        let mut i = w.len();
        while i > 0 {
            i -= 1;
            let next = (w[i] + 1..=n).find(|&v| i == 0 || follows[w[i - 1] as usize][v as usize]);
            if let Some(v) = next {
                w[i] = v;
                for t in i + 1..w.len() {
                    w[t] = (1..=n)
                        .find(|&b| follows[w[t - 1] as usize][b as usize])
                        .unwrap();
                }
                self.current = Some(w);
                break;
            }
        }
        self.remaining = self.remaining.saturating_sub(1);
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

pub fn reduce(w: &Word, rs: &RewriteSystem) -> Word {
    rs.reduce(w)
}

pub fn check_completeness(
    rs: &RewriteSystem,
    max_overlap_len: usize,
) -> Result<CompletenessReport> {
    rs.check_completeness(max_overlap_len)
}

pub fn is_canonical(w: &Word, g: &CoxeterGraph) -> Result<bool> {
    CanonicalForms::new(g)?.is_canonical(w)
}

pub fn enumerate_canonical(g: &CoxeterGraph, k: usize) -> Result<BigUint> {
    Ok(CanonicalForms::new(g)?.count(k))
}

/// The descending-run description of `K∞ₙ` normal forms: runs
/// `y_i^a y_{i-1}^b ...` stepping down by one, each new run starting above
/// the last letter of the previous one, with `y_n` additionally allowed to be
/// followed by `y_{n-2}`.
pub fn k_descending_run_pattern(w: &Word, n: usize) -> bool {
    w.runs().windows(2).all(|pair| {
        let (a, b) = (pair[0].0 as usize, pair[1].0 as usize);
        b > a || b + 1 == a || (a == n && b + 2 == n)
    })
}
