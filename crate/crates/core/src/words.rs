//! Letters, words and occurrence combinatorics over finite words.
//!
//! Letters are dense indices `0..alphabet.len()`; an [`Alphabet`] only carries
//! the display names. Every algorithm in the crate works on indices.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{invalid, Result};

/// A letter is an index into its alphabet.
pub type Letter = usize;

/// Ordered list of distinct display names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return invalid("alphabet must contain at least one letter");
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return invalid(format!("invalid letter name {s:?}"));
            }
            if !seen.insert(s.as_str()) {
                return invalid(format!("duplicate letter {s:?}"));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{1, .., size}` used for return letters.
    pub fn numbered(size: usize) -> Self {
        assert!(size >= 1, "numbered alphabet must be non-empty");
        Alphabet {
            symbols: (1..=size).map(|i| i.to_string()).collect(),
        }
    }

    /// Alphabet whose letter names are `0, 1, .., size-1`.
    pub fn digits(size: usize) -> Self {
        assert!(size >= 1, "alphabet must be non-empty");
        Alphabet {
            symbols: (0..size).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == name)
    }

    /// True when every letter name is a single character.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated names are always accepted; a
    /// string without whitespace is read character by character when the
    /// alphabet is compact.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.is_compact() {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&l| self.symbols[l].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Checks that every letter of `word` is an index of this alphabet.
    pub fn check_word(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&l| l >= self.len()) {
            Some(l) => invalid(format!("letter index {l} outside alphabet of size {}", self.len())),
            None => Ok(()),
        }
    }
}

/// A finite word, stored as letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from_slice(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    /// Letters as indices, separated by dots when any index exceeds 9.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let wide = self.0.iter().any(|&l| l > 9);
        for (i, l) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All occurrences of `pattern` in `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub pattern: Word,
    pub host: Word,
    /// Strictly increasing start indices.
    pub positions: Vec<usize>,
}

impl OccurrenceList {
    /// `L_pattern(host)`.
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

/// Every start index `i` with `host[i..i+|pattern|] == pattern`, by a direct
/// window comparison.
pub fn occurrences(pattern: &[Letter], host: &[Letter]) -> Result<OccurrenceList> {
    if pattern.is_empty() {
        return invalid("occurrence pattern must be non-empty");
    }
    Ok(OccurrenceList {
        pattern: Word::from(pattern),
        host: Word::from(host),
        positions: naive_positions(pattern, host),
    })
}

pub(crate) fn naive_positions(pattern: &[Letter], host: &[Letter]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > host.len() {
        return Vec::new();
    }
    host.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

/// Number of occurrences of `pattern` in `host` (`L_pattern(host)`); zero for an empty pattern.
pub fn count_occurrences(pattern: &[Letter], host: &[Letter]) -> usize {
    if pattern.is_empty() {
        return 0;
    }
    Matcher::new(pattern).find_all(host).len()
}

/// Linear-time scanner (Knuth–Morris–Pratt) for repeated searches of one pattern.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Vec<Letter>,
    fail: Vec<usize>,
}

impl Matcher {
    pub fn new(pattern: &[Letter]) -> Self {
        assert!(!pattern.is_empty(), "matcher pattern must be non-empty");
        let mut fail = vec![0; pattern.len()];
        let mut k = 0;
        for i in 1..pattern.len() {
            while k > 0 && pattern[i] != pattern[k] {
                k = fail[k - 1];
            }
            if pattern[i] == pattern[k] {
                k += 1;
            }
            fail[i] = k;
        }
        Matcher {
            pattern: pattern.to_vec(),
            fail,
        }
    }

    pub fn pattern(&self) -> &[Letter] {
        &self.pattern
    }

    pub fn find_all(&self, host: &[Letter]) -> Vec<usize> {
        self.find_from(host, 0, usize::MAX)
    }

    /// Occurrences starting at or after `from`, stopping after `limit` hits.
    pub fn find_from(&self, host: &[Letter], from: usize, limit: usize) -> Vec<usize> {
        let m = self.pattern.len();
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        let mut k = 0;
        for (i, &c) in host.iter().enumerate().skip(from) {
            while k > 0 && c != self.pattern[k] {
                k = self.fail[k - 1];
            }
            if c == self.pattern[k] {
                k += 1;
            }
            if k == m {
                out.push(i + 1 - m);
                if out.len() == limit {
                    break;
                }
                k = self.fail[k - 1];
            }
        }
        out
    }
}

/// The distinct factors of length `n` of `host`.
pub fn factor_set(host: &[Letter], n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 || n > host.len() {
        return invalid(format!("factor length {n} outside 1..={}", host.len()));
    }
    Ok(host.windows(n).map(Word::from).collect())
}


/// A detected eventual period of a finite word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

/// Bounded search for an eventual period.
///
/// Returns the lexicographically least `(preperiod, period)` with
/// `period <= max_period` such that `host[i] == host[i + period]` for
/// `preperiod <= i < |host| - period`. To rule out vacuous matches the
/// periodic tail must cover at least two periods and at least half of the
/// host. An absent result means "no period found within the bound", not a
/// proof of non-periodicity.
pub fn detect_period(host: &[Letter], max_period: usize) -> Option<Periodicity> {
    let n = host.len();
    let max_pre = n / 2;
    let mut best: Option<Periodicity> = None;
    for period in 1..=max_period.min(n / 2) {
        // smallest preperiod: one past the last mismatch
        let mut pre = 0;
        for i in (0..n - period).rev() {
            if host[i] != host[i + period] {
                pre = i + 1;
                break;
            }
        }
        if pre > max_pre || n - pre < 2 * period {
            continue;
        }
        let cand = Periodicity {
            preperiod: pre,
            period,
        };
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.bytes().map(|b| (b - b'a') as Letter).collect()
    }

    fn d(s: &str) -> Word {
        s.bytes().map(|b| (b - b'0') as Letter).collect()
    }

    #[test]
    fn occurrences_in_return_word_example() {
        // brute-force window scan done by hand
        let host = w("ababcababbbabab");
        let occ = occurrences(&w("abab"), &host).unwrap();
        assert_eq!(occ.positions, vec![0, 5, 11]);
        assert_eq!(occ.count(), 3);
    }

    #[test]
    fn occurrences_trivial_cases() {
        assert_eq!(occurrences(&w("a"), &w("a")).unwrap().positions, vec![0]);
        assert!(occurrences(&w("aa"), &w("abab")).unwrap().positions.is_empty());
        assert!(matches!(
            occurrences(&[], &w("ab")),
            Err(crate::Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn matcher_handles_overlaps() {
        let m = Matcher::new(&w("aa"));
        assert_eq!(m.find_all(&w("aaaa")), vec![0, 1, 2]);
        assert_eq!(m.find_from(&w("aaaa"), 1, 1), vec![1]);
    }

    #[test]
    fn factor_sets() {
        let f = factor_set(&d("0110"), 2).unwrap();
        assert_eq!(f, [d("01"), d("11"), d("10")].into_iter().collect());
        let x = d("0110");
        assert_eq!(factor_set(&x, 4).unwrap().into_iter().collect::<Vec<_>>(), vec![x.clone()]);
        assert_eq!(factor_set(&w("aaaa"), 2).unwrap().len(), 1);
        assert!(factor_set(&x, 0).is_err());
        assert!(factor_set(&x, 5).is_err());
    }

    #[test]
    fn periods() {
        assert_eq!(
            detect_period(&w("abababab"), 4),
            Some(Periodicity { preperiod: 0, period: 2 })
        );
        assert_eq!(
            detect_period(&w("cabababa"), 4),
            Some(Periodicity { preperiod: 1, period: 2 })
        );
        assert_eq!(detect_period(&w("ab"), 1), None);
    }

    #[test]
    fn thue_morse_has_no_short_period() {
        let tm: Word = (0..64usize).map(|i| i.count_ones() as usize % 2).collect();
        // exhaustive oracle over every (preperiod, period) pair with the same admissibility rule
        let n = tm.len();
        let mut oracle = None;
        'outer: for pre in 0..=n / 2 {
            for p in 1..=16 {
                if n - pre < 2 * p {
                    continue;
                }
                if (pre..n - p).all(|i| tm[i] == tm[i + p]) {
                    oracle = Some((pre, p));
                    break 'outer;
                }
            }
        }
        assert_eq!(oracle, None);
        assert_eq!(detect_period(&tm, 16), None);
    }

    #[test]
    fn alphabet_parsing() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(a.parse_word("abba").unwrap(), w("abba"));
        assert_eq!(a.parse_word("a b b").unwrap(), w("abb"));
        assert_eq!(a.render(&w("ab")), "ab");
        assert!(a.parse_word("abc").is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        let long = Alphabet::new(["x1", "x2"]).unwrap();
        assert_eq!(long.parse_word("x2 x1").unwrap(), Word::new(vec![1, 0]));
        assert_eq!(long.render(&[1, 0]), "x2 x1");
    }
}
