//! Contraction of words to patterns, breakpoint sets, and the inverse map
//! from `(pattern, breakpoints)` back to a word.
//!
//! A word is determined by its contraction (each constant run collapsed to
//! one letter) together with the positions where consecutive letters
//! differ. Breakpoints are computed as `{ i in 1..n : w_i != w_{i+1} }`.

use std::fmt;
use std::str::FromStr;

use crate::cube::Word;
use crate::error::{CubeError, Result};

/// A nonempty word with no two adjacent letters equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    letters: Vec<u8>,
}

impl Pattern {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(CubeError::InvalidPattern("pattern is empty".into()));
        }
        if let Some(&bad) = letters.iter().find(|l| !(1..=3).contains(*l)) {
            return Err(CubeError::BadLetter(bad));
        }
        if let Some(i) = letters.windows(2).position(|p| p[0] == p[1]) {
            return Err(CubeError::InvalidPattern(format!(
                "letters {} and {} are equal",
                i + 1,
                i + 2
            )));
        }
        Ok(Pattern { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }
}

impl FromStr for Pattern {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .bytes()
            .map(|b| match b {
                b'1'..=b'3' => Ok(b - b'0'),
                other => Err(CubeError::BadLetter(other.wrapping_sub(b'0'))),
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(letters)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern(\"{self}\")")
    }
}

/// A strictly increasing subset of `{1, ..., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BreakpointSet {
    n: usize,
    points: Vec<usize>,
}

impl BreakpointSet {
    pub fn new(n: usize, mut points: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(CubeError::EmptyWord);
        }
        points.sort_unstable();
        if points.windows(2).any(|p| p[0] == p[1]) {
            return Err(CubeError::InvalidBreakpoints(format!(
                "{points:?} has repeated entries"
            )));
        }
        if let Some(&bad) = points.iter().find(|&&a| a == 0 || a >= n) {
            return Err(CubeError::InvalidBreakpoints(format!(
                "breakpoint {bad} outside 1..={}",
                n - 1
            )));
        }
        Ok(BreakpointSet { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Collapses each constant run of `w` to a single letter.
pub fn contract(w: &Word) -> Pattern {
    let mut letters: Vec<u8> = w.letters().to_vec();
    letters.dedup();
    Pattern { letters }
}

/// Positions `i` with `w_i != w_{i+1}`.
pub fn breakpoints(w: &Word) -> BreakpointSet {
    let points = w
        .letters()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] != p[1])
        .map(|(i, _)| i + 1)
        .collect();
    BreakpointSet { n: w.len(), points }
}

/// The unique word of length `n` with contraction `pattern` and breakpoint
/// set `at`.
pub fn realize(pattern: &Pattern, at: &[usize], n: usize) -> Result<Word> {
    let bps = BreakpointSet::new(n, at.to_vec())?;
    if bps.len() + 1 != pattern.len() {
        return Err(CubeError::InvalidBreakpoints(format!(
            "pattern of length {} needs {} breakpoints, got {}",
            pattern.len(),
            pattern.len() - 1,
            bps.len()
        )));
    }
    Ok(realize_unchecked(pattern.letters(), bps.points(), n))
}

/// Block expansion without validation: run `j` ends at `ends[j]`, the last
/// run ends at `n`.
pub(crate) fn realize_unchecked(letters: &[u8], ends: &[usize], n: usize) -> Word {
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    for (j, &letter) in letters.iter().enumerate() {
        let end = ends.get(j).copied().unwrap_or(n);
        out.extend(std::iter::repeat_n(letter, end - start));
        start = end;
    }
    Word::from_letters_unchecked(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }
    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let word = w("1122333111");
        assert_eq!(contract(&word), p("1231"));
        assert_eq!(breakpoints(&word).points(), &[2, 4, 7]);
        assert_eq!(realize(&p("1231"), &[2, 4, 7], 10).unwrap(), word);
    }

    #[test]
    fn small_examples() {
        assert_eq!(contract(&w("111")), p("1"));
        assert_eq!(contract(&w("132")), p("132"));
        assert!(breakpoints(&w("111")).is_empty());
        assert_eq!(breakpoints(&w("12")).points(), &[1]);
        assert_eq!(realize(&p("1"), &[], 4).unwrap(), w("1111"));
        assert_eq!(realize(&p("13"), &[3], 5).unwrap(), w("11133"));
    }

    #[test]
    fn realize_errors() {
        assert!(realize(&p("13"), &[], 5).is_err());
        assert!(realize(&p("13"), &[5], 5).is_err());
        assert!(realize(&p("13"), &[0], 5).is_err());
        assert!(realize(&p("131"), &[2, 2], 5).is_err());
    }

    #[test]
    fn pattern_rejects_adjacent_repeats() {
        assert!("1223".parse::<Pattern>().is_err());
        assert!("".parse::<Pattern>().is_err());
        assert!("14".parse::<Pattern>().is_err());
        assert!("1213".parse::<Pattern>().is_ok());
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 1..=5 {
            for r in 0..3usize.pow(n as u32) {
                let word = Word::unrank(r, n).unwrap();
                let s = contract(&word);
                let t = breakpoints(&word);
                assert_eq!(s.len(), t.len() + 1);
                assert_eq!(realize(&s, t.points(), n).unwrap(), word);
            }
        }
    }

    fn pattern_and_breakpoints() -> impl Strategy<Value = (Pattern, Vec<usize>, usize)> {
        (1usize..=6).prop_flat_map(|n| {
            (
                proptest::sample::subsequence((1..n).collect::<Vec<_>>(), 0..n),
                1u8..=3,
                proptest::collection::vec(1u8..=2, n),
            )
                .prop_map(move |(bps, first, steps)| {
                    let mut letters = vec![first];
                    for s in steps.iter().take(bps.len()) {
                        let prev = *letters.last().unwrap();
                        letters.push((prev - 1 + s) % 3 + 1);
                    }
                    (Pattern::new(letters).unwrap(), bps, n)
                })
        })
    }

    proptest! {
        #[test]
        fn realize_then_contract((s, a, n) in pattern_and_breakpoints()) {
            let word = realize(&s, &a, n).unwrap();
            prop_assert_eq!(contract(&word), s);
            prop_assert_eq!(breakpoints(&word).points().to_vec(), a);
        }
    }
}
