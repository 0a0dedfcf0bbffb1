//! Words of `[3]^n`, combinatorial lines, and 2-colourings of the cube.
//!
//! Letters are the symbols `1`, `2`, `3`; coordinates are 1-based. A word is
//! ranked as a base-3 number with coordinate 1 as the most significant digit
//! and letter `l` contributing digit `l - 1`, so ranks run over `0..3^n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{CubeError, Result};

/// Largest dimension the library will allocate a colouring for.
pub const MAX_N: usize = 20;

/// `3^n`, or an error when it would exceed [`MAX_N`].
pub fn cube_size(n: usize) -> Result<usize> {
    if n > MAX_N {
        return Err(CubeError::DimensionTooLarge(n));
    }
    Ok(3usize.pow(n as u32))
}

fn pow3(k: usize) -> usize {
    3usize.pow(k as u32)
}

fn check_letter(l: u8) -> Result<u8> {
    if (1..=3).contains(&l) {
        Ok(l)
    } else {
        Err(CubeError::BadLetter(l))
    }
}

/// A point of `[3]^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(CubeError::EmptyWord);
        }
        for &l in &letters {
            check_letter(l)?;
        }
        Ok(Word { letters })
    }

    /// The word `l l ... l` of length `n`.
    pub fn constant(n: usize, letter: u8) -> Result<Self> {
        Word::new(vec![letter; n])
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(!letters.is_empty() && letters.iter().all(|l| (1..=3).contains(l)));
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Letter at 1-based coordinate `i`.
    pub fn letter(&self, i: usize) -> u8 {
        self.letters[i - 1]
    }

    pub fn rank(&self) -> usize {
        self.letters
            .iter()
            .fold(0usize, |acc, &l| acc * 3 + (l - 1) as usize)
    }

    pub fn unrank(rank: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CubeError::EmptyWord);
        }
        let size = cube_size(n)?;
        if rank >= size {
            return Err(CubeError::RankOutOfRange { rank, n });
        }
        Ok(Word::from_letters_unchecked(unrank_letters(rank, n)))
    }
}

pub(crate) fn unrank_letters(mut rank: usize, n: usize) -> Vec<u8> {
    let mut letters = vec![1u8; n];
    for slot in letters.iter_mut().rev() {
        *slot = (rank % 3) as u8 + 1;
        rank /= 3;
    }
    letters
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .bytes()
            .map(|b| match b {
                b'1'..=b'3' => Ok(b - b'0'),
                other => Err(CubeError::BadLetter(other.wrapping_sub(b'0'))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// A combinatorial line of `[3]^n`.
///
/// Stored as a template: `0` marks an active coordinate, any other entry is
/// the fixed letter at that coordinate. Lines are identified by their
/// template, never by the order of their points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    template: Vec<u8>,
}

impl Line {
    /// Builds a line from its active set and the fixed letters off it.
    pub fn new(n: usize, active: &[usize], fixed: &BTreeMap<usize, u8>) -> Result<Self> {
        if n == 0 {
            return Err(CubeError::EmptyWord);
        }
        let mut template = vec![u8::MAX; n];
        for &i in active {
            if i == 0 || i > n {
                return Err(CubeError::InvalidLine(format!(
                    "active coordinate {i} outside 1..={n}"
                )));
            }
            template[i - 1] = 0;
        }
        for (&i, &l) in fixed {
            if i == 0 || i > n {
                return Err(CubeError::InvalidLine(format!(
                    "fixed coordinate {i} outside 1..={n}"
                )));
            }
            if template[i - 1] == 0 {
                return Err(CubeError::InvalidLine(format!(
                    "coordinate {i} is both active and fixed"
                )));
            }
            template[i - 1] = check_letter(l)?;
        }
        if let Some(pos) = template.iter().position(|&x| x == u8::MAX) {
            return Err(CubeError::InvalidLine(format!(
                "coordinate {} is neither active nor fixed",
                pos + 1
            )));
        }
        Line::from_template(template)
    }

    /// Builds a line from a template (`0` = active, `1..=3` = fixed letter).
    pub fn from_template(template: Vec<u8>) -> Result<Self> {
        if template.is_empty() {
            return Err(CubeError::EmptyWord);
        }
        for &x in &template {
            if x > 3 {
                return Err(CubeError::BadLetter(x));
            }
        }
        if !template.contains(&0) {
            return Err(CubeError::InvalidLine("active set is empty".into()));
        }
        Ok(Line { template })
    }

    /// Recognises an ordered triple as a line whose active coordinates take
    /// the values 1, 2, 3 in that order.
    pub fn from_points(p1: &Word, p2: &Word, p3: &Word) -> Option<Line> {
        let n = p1.len();
        if p2.len() != n || p3.len() != n {
            return None;
        }
        let mut template = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b, c) = (p1.letters[i], p2.letters[i], p3.letters[i]);
            if a == b && b == c {
                template.push(a);
            } else if (a, b, c) == (1, 2, 3) {
                template.push(0);
            } else {
                return None;
            }
        }
        Line::from_template(template).ok()
    }

    pub fn n(&self) -> usize {
        self.template.len()
    }

    pub fn template(&self) -> &[u8] {
        &self.template
    }

    /// Active coordinates, ascending, 1-based.
    pub fn active(&self) -> Vec<usize> {
        (1..=self.n())
            .filter(|&i| self.template[i - 1] == 0)
            .collect()
    }

    /// Fixed coordinates with their letters, ascending.
    pub fn fixed(&self) -> Vec<(usize, u8)> {
        (1..=self.n())
            .filter_map(|i| match self.template[i - 1] {
                0 => None,
                l => Some((i, l)),
            })
            .collect()
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.template[i - 1] == 0
    }

    /// The member with every active coordinate set to `v`.
    pub fn word_at(&self, v: u8) -> Word {
        assert!((1..=3).contains(&v), "line value must be 1, 2 or 3");
        Word::from_letters_unchecked(
            self.template
                .iter()
                .map(|&x| if x == 0 { v } else { x })
                .collect(),
        )
    }

    pub fn points(&self) -> [Word; 3] {
        [self.word_at(1), self.word_at(2), self.word_at(3)]
    }

    /// Ranks of the three members, in active-value order.
    pub fn point_ranks(&self) -> [usize; 3] {
        let mut base = 0usize;
        let mut step = 0usize;
        for &x in &self.template {
            base *= 3;
            step *= 3;
            if x == 0 {
                step += 1;
            } else {
                base += (x - 1) as usize;
            }
        }
        [base, base + step, base + 2 * step]
    }

    /// Maximal runs of the active set as `(lo, hi)` pairs.
    pub fn active_intervals(&self) -> Vec<(usize, usize)> {
        runs(&self.active())
    }

    /// `(lo, hi)` when the active set is a single interval.
    pub fn as_interval(&self) -> Option<(usize, usize)> {
        match self.active_intervals().as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

/// Splits a sorted coordinate list into maximal runs of consecutive values.
pub(crate) fn runs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == x => *hi = x,
            _ => out.push((x, x)),
        }
    }
    out
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: String = self
            .template
            .iter()
            .map(|&x| if x == 0 { '*' } else { (b'0' + x) as char })
            .collect();
        write!(f, "Line({t})")
    }
}

/// The three members of `line`: active coordinates set to 1, 2, 3.
pub fn line_points(line: &Line) -> (Word, Word, Word) {
    let [a, b, c] = line.points();
    (a, b, c)
}

/// A combinatorial line whose active set is `{lo, ..., hi}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalLine {
    line: Line,
    lo: usize,
    hi: usize,
}

impl IntervalLine {
    pub fn new(n: usize, lo: usize, hi: usize, fixed: &BTreeMap<usize, u8>) -> Result<Self> {
        if lo == 0 || lo > hi || hi > n {
            return Err(CubeError::InvalidLine(format!(
                "interval {lo}..{hi} not inside 1..={n}"
            )));
        }
        let active: Vec<usize> = (lo..=hi).collect();
        IntervalLine::try_from(Line::new(n, &active, fixed)?)
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn into_line(self) -> Line {
        self.line
    }
}

impl TryFrom<Line> for IntervalLine {
    type Error = CubeError;

    fn try_from(line: Line) -> Result<Self> {
        match line.as_interval() {
            Some((lo, hi)) => Ok(IntervalLine { line, lo, hi }),
            None => Err(CubeError::InvalidLine(format!(
                "active set {:?} is not an interval",
                line.active()
            ))),
        }
    }
}

impl std::ops::Deref for IntervalLine {
    type Target = Line;

    fn deref(&self) -> &Line {
        &self.line
    }
}

impl fmt::Debug for IntervalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval{:?}[{}..{}]", self.line, self.lo, self.hi)
    }
}

/// Fills the non-active slots of `template` with the base-3 digits of
/// `fixed_rank`, most significant first.
fn fill_fixed(template: &mut [u8], free: &[usize], mut fixed_rank: usize) {
    for &pos in free.iter().rev() {
        template[pos] = (fixed_rank % 3) as u8 + 1;
        fixed_rank /= 3;
    }
}

fn lines_for_active_set(n: usize, active: Vec<usize>) -> impl Iterator<Item = Line> {
    let free: Vec<usize> = (0..n).filter(|&i| !active.contains(&(i + 1))).collect();
    let count = pow3(free.len());
    (0..count).map(move |f| {
        let mut template = vec![0u8; n];
        fill_fixed(&mut template, &free, f);
        Line { template }
    })
}

/// `sum_{L=1..n} (n-L+1) 3^(n-L)`, the number of interval lines of `[3]^n`.
pub fn interval_line_count(n: usize) -> usize {
    (1..=n).map(|len| (n - len + 1) * pow3(n - len)).sum()
}

/// Every interval line of `[3]^n` exactly once, ordered by `lo`, then `hi`,
/// then the rank of the fixed part.
pub fn enumerate_interval_lines(n: usize) -> impl Iterator<Item = IntervalLine> {
    (1..=n)
        .flat_map(move |lo| (lo..=n).map(move |hi| (lo, hi)))
        .flat_map(move |(lo, hi)| {
            lines_for_active_set(n, (lo..=hi).collect()).map(move |line| IntervalLine {
                line,
                lo,
                hi,
            })
        })
}

/// Every line whose active set is a union of at most `m` maximal intervals.
///
/// Active sets are visited in lexicographic order of their sorted coordinate
/// lists, so for `m = 1` the order coincides with [`enumerate_interval_lines`].
pub fn enumerate_m_interval_lines(n: usize, m: usize) -> impl Iterator<Item = Line> {
    assert!(
        n < usize::BITS as usize,
        "n too large to enumerate active sets"
    );
    let mut sets: Vec<Vec<usize>> = (1usize..(1 << n))
        .map(|mask| {
            (1..=n)
                .filter(|i| mask & (1 << (i - 1)) != 0)
                .collect::<Vec<_>>()
        })
        .filter(|s| runs(s).len() <= m)
        .collect();
    sets.sort();
    sets.into_iter()
        .flat_map(move |active| lines_for_active_set(n, active))
}

/// Member ranks of every interval line, in enumeration order.
pub fn interval_line_ranks(n: usize) -> Vec<[usize; 3]> {
    enumerate_interval_lines(n)
        .map(|l| l.point_ranks())
        .collect()
}

/// A 2-colouring of `[3]^n`, indexed by word rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    len: usize,
    bits: Vec<u64>,
}

impl Coloring {
    pub fn constant(n: usize, colour: u8) -> Result<Self> {
        if n == 0 {
            return Err(CubeError::EmptyWord);
        }
        if colour > 1 {
            return Err(CubeError::BadColour(colour));
        }
        let len = cube_size(n)?;
        let fill = if colour == 1 { u64::MAX } else { 0 };
        let mut c = Coloring {
            n,
            len,
            bits: vec![fill; len.div_ceil(64)],
        };
        c.clear_tail();
        Ok(c)
    }

    /// Colouring from a slice of per-rank colours.
    pub fn from_colours(n: usize, colours: &[u8]) -> Result<Self> {
        let mut c = Coloring::constant(n, 0)?;
        if colours.len() != c.len {
            return Err(CubeError::Format(format!(
                "expected {} colours, got {}",
                c.len,
                colours.len()
            )));
        }
        for (i, &v) in colours.iter().enumerate() {
            if v > 1 {
                return Err(CubeError::BadColour(v));
            }
            c.set(i, v);
        }
        Ok(c)
    }

    /// Colouring `w -> f(w)` over every word of `[3]^n`.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Word) -> u8) -> Result<Self> {
        let mut c = Coloring::constant(n, 0)?;
        for rank in 0..c.len {
            let w = Word::from_letters_unchecked(unrank_letters(rank, n));
            let v = f(&w);
            if v > 1 {
                return Err(CubeError::BadColour(v));
            }
            c.set(rank, v);
        }
        Ok(c)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cells, `3^n`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, rank: usize) -> u8 {
        debug_assert!(rank < self.len);
        ((self.bits[rank / 64] >> (rank % 64)) & 1) as u8
    }

    #[inline]
    pub fn set(&mut self, rank: usize, colour: u8) {
        assert!(rank < self.len, "rank {rank} out of range");
        let mask = 1u64 << (rank % 64);
        if colour & 1 == 1 {
            self.bits[rank / 64] |= mask;
        } else {
            self.bits[rank / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, rank: usize) {
        assert!(rank < self.len, "rank {rank} out of range");
        self.bits[rank / 64] ^= 1u64 << (rank % 64);
    }

    pub fn colour_of(&self, w: &Word) -> Result<u8> {
        if w.len() != self.n {
            return Err(CubeError::LengthMismatch {
                expected: self.n,
                got: w.len(),
            });
        }
        Ok(self.get(w.rank()))
    }

    /// Colours in rank order.
    pub fn colours(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// The colouring with both colours exchanged.
    pub fn swapped(&self) -> Coloring {
        let mut c = self.clone();
        for b in c.bits.iter_mut() {
            *b = !*b;
        }
        c.clear_tail();
        c
    }

    /// Serialises to the `HJC 3 <n>` text format.
    pub fn to_file_string(&self) -> String {
        let mut s = String::with_capacity(self.len + 16);
        s.push_str(&format!("HJC 3 {}\n", self.n));
        s.extend(self.colours().map(|v| if v == 1 { '1' } else { '0' }));
        s.push('\n');
        s
    }

    /// Parses the `HJC 3 <n>` text format. A single trailing newline is
    /// optional; any other stray byte is rejected.
    pub fn parse_file(text: &str) -> Result<Self> {
        let bad = |m: &str| CubeError::Format(m.to_string());
        let (header, rest) = text
            .split_once('\n')
            .ok_or_else(|| bad("missing body line"))?;
        let mut parts = header.split(' ');
        if parts.next() != Some("HJC") || parts.next() != Some("3") {
            return Err(bad("header must start with `HJC 3 `"));
        }
        let n_str = parts.next().ok_or_else(|| bad("header is missing n"))?;
        if parts.next().is_some() || n_str.is_empty() || !n_str.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad("header must be `HJC 3 <n>`"));
        }
        let n: usize = n_str.parse().map_err(|_| bad("n is not a number"))?;
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        let body = rest.strip_suffix('\n').unwrap_or(rest);
        let len = cube_size(n)?;
        if body.len() != len {
            return Err(CubeError::Format(format!(
                "expected {len} colour characters, found {}",
                body.len()
            )));
        }
        let mut c = Coloring::constant(n, 0)?;
        for (i, b) in body.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => c.set(i, 1),
                other => {
                    return Err(CubeError::Format(format!(
                        "unexpected byte 0x{other:02x} at position {i}"
                    )))
                }
            }
        }
        Ok(c)
    }

    /// The colours as a `0`/`1` string in rank order.
    pub fn bitstring(&self) -> String {
        self.colours().map(|v| (b'0' + v) as char).collect()
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 81 {
            write!(f, "Coloring(n={}, {})", self.n, self.bitstring())
        } else {
            write!(f, "Coloring(n={}, ones={})", self.n, self.count_ones())
        }
    }
}

/// The common colour of the three members of `line`, if they share one.
pub fn is_monochromatic(c: &Coloring, line: &Line) -> Result<Option<u8>> {
    if c.n() != line.n() {
        return Err(CubeError::LengthMismatch {
            expected: c.n(),
            got: line.n(),
        });
    }
    let [p, q, r] = line.point_ranks();
    let a = c.get(p);
    Ok((a == c.get(q) && a == c.get(r)).then_some(a))
}

/// An element of the 24-element group generated by global letter
/// permutations, coordinate reversal and colour swap.
///
/// Per-coordinate letter permutations are deliberately absent: they do not
/// map combinatorial lines to combinatorial lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    /// Letter `l` is sent to `letters[l - 1]`.
    pub letters: [u8; 3],
    pub reverse: bool,
    pub swap: bool,
}

const LETTER_PERMS: [[u8; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        letters: [1, 2, 3],
        reverse: false,
        swap: false,
    };

    pub fn colour_swap() -> Self {
        Symmetry {
            swap: true,
            ..Symmetry::IDENTITY
        }
    }

    pub fn reversal() -> Self {
        Symmetry {
            reverse: true,
            ..Symmetry::IDENTITY
        }
    }

    pub fn letter_perm(letters: [u8; 3]) -> Result<Self> {
        let mut sorted = letters;
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(CubeError::InvalidPattern(format!(
                "{letters:?} is not a permutation of the alphabet"
            )));
        }
        Ok(Symmetry {
            letters,
            ..Symmetry::IDENTITY
        })
    }

    /// All 24 group elements; the identity comes first.
    pub fn all() -> Vec<Symmetry> {
        let mut out = Vec::with_capacity(24);
        for swap in [false, true] {
            for reverse in [false, true] {
                for letters in LETTER_PERMS {
                    out.push(Symmetry {
                        letters,
                        reverse,
                        swap,
                    });
                }
            }
        }
        out
    }

    /// Image of a word under the cell part of the symmetry.
    pub fn apply_word(&self, w: &Word) -> Word {
        let mut letters: Vec<u8> = w
            .letters()
            .iter()
            .map(|&l| self.letters[l as usize - 1])
            .collect();
        if self.reverse {
            letters.reverse();
        }
        Word::from_letters_unchecked(letters)
    }

    /// Image of a line; active coordinates stay active.
    pub fn apply_line(&self, line: &Line) -> Line {
        let mut template: Vec<u8> = line
            .template()
            .iter()
            .map(|&x| {
                if x == 0 {
                    0
                } else {
                    self.letters[x as usize - 1]
                }
            })
            .collect();
        if self.reverse {
            template.reverse();
        }
        Line { template }
    }

    /// `map[rank]` is the rank of the image word.
    pub fn cell_map(&self, n: usize) -> Result<Vec<usize>> {
        let size = cube_size(n)?;
        Ok((0..size)
            .map(|r| {
                self.apply_word(&Word::from_letters_unchecked(unrank_letters(r, n)))
                    .rank()
            })
            .collect())
    }
}

/// The colouring `c'` with `c'(g(w)) = c(w)`, colours exchanged when `g`
/// includes the swap.
pub fn apply_symmetry(c: &Coloring, g: &Symmetry) -> Coloring {
    let map = g
        .cell_map(c.n())
        .expect("colouring dimension already validated");
    let mut out = Coloring::constant(c.n(), 0).expect("colouring dimension already validated");
    let flip = u8::from(g.swap);
    for (r, &img) in map.iter().enumerate() {
        out.set(img, c.get(r) ^ flip);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(w("111").rank(), 0);
        assert_eq!(w("333").rank(), 26);
        assert_eq!(Word::unrank(5, 2).unwrap(), w("23"));
    }

    #[test]
    fn unrank_out_of_range() {
        assert_eq!(
            Word::unrank(9, 2),
            Err(CubeError::RankOutOfRange { rank: 9, n: 2 })
        );
        assert!(Word::unrank(0, 0).is_err());
    }

    #[test]
    fn rank_round_trip_exhaustive() {
        for n in 1..=5 {
            for r in 0..pow3(n) {
                let word = Word::unrank(r, n).unwrap();
                assert_eq!(word.rank(), r);
                assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
            }
        }
    }

    #[test]
    fn bad_letters_rejected() {
        assert!("104".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert_eq!(Word::new(vec![1, 4]), Err(CubeError::BadLetter(4)));
    }

    #[test]
    fn line_points_examples() {
        let diag = Line::new(1, &[1], &BTreeMap::new()).unwrap();
        assert_eq!(line_points(&diag), (w("1"), w("2"), w("3")));

        let l = Line::new(2, &[2], &BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(line_points(&l), (w("11"), w("12"), w("13")));

        let l = Line::new(3, &[1, 3], &BTreeMap::from([(2, 2)])).unwrap();
        assert_eq!(line_points(&l), (w("121"), w("222"), w("323")));
        assert_eq!(
            l.point_ranks(),
            [w("121").rank(), w("222").rank(), w("323").rank()]
        );
    }

    #[test]
    fn line_validation() {
        assert!(Line::new(2, &[], &BTreeMap::from([(1, 1), (2, 1)])).is_err());
        assert!(Line::new(2, &[1], &BTreeMap::new()).is_err());
        assert!(Line::new(2, &[1], &BTreeMap::from([(1, 2), (2, 1)])).is_err());
        assert!(Line::new(2, &[3], &BTreeMap::from([(1, 2), (2, 1)])).is_err());
        assert!(Line::from_template(vec![1, 2]).is_err());
    }

    #[test]
    fn from_points_recognises_lines() {
        let l = Line::from_points(&w("121"), &w("222"), &w("323")).unwrap();
        assert_eq!(l.active(), vec![1, 3]);
        assert!(Line::from_points(&w("323"), &w("222"), &w("121")).is_none());
        assert!(Line::from_points(&w("11"), &w("11"), &w("11")).is_none());
    }

    #[test]
    fn interval_counts() {
        assert_eq!(enumerate_interval_lines(1).count(), 1);
        assert_eq!(enumerate_interval_lines(2).count(), 7);
        assert_eq!(enumerate_interval_lines(3).count(), 34);
        for n in 1..=4 {
            assert_eq!(enumerate_interval_lines(n).count(), interval_line_count(n));
            assert_eq!(
                enumerate_m_interval_lines(n, n).count(),
                4usize.pow(n as u32) - pow3(n)
            );
        }
        assert_eq!(enumerate_m_interval_lines(2, 2).count(), 7);
        assert_eq!(enumerate_m_interval_lines(3, 3).count(), 37);
    }

    #[test]
    fn interval_enumeration_order_and_uniqueness() {
        let lines: Vec<_> = enumerate_interval_lines(4).collect();
        let keys: Vec<_> = lines.iter().map(|l| (l.lo(), l.hi())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let set: HashSet<_> = lines.iter().map(|l| l.template().to_vec()).collect();
        assert_eq!(set.len(), lines.len());
        for l in &lines {
            let act = l.active();
            assert_eq!(act, (l.lo()..=l.hi()).collect::<Vec<_>>());
        }
        // m = 1 reproduces the interval enumerator exactly.
        let m1: Vec<Line> = enumerate_m_interval_lines(4, 1).collect();
        let iv: Vec<Line> = lines.into_iter().map(IntervalLine::into_line).collect();
        assert_eq!(m1, iv);
    }

    #[test]
    fn first_interval_line_fixed_part_ordering() {
        let lines: Vec<_> = enumerate_interval_lines(2).collect();
        assert_eq!(lines[0].points()[0], w("11"));
        assert_eq!(lines[1].points()[0], w("12"));
        assert_eq!(lines[2].points()[0], w("13"));
        assert_eq!(lines[6].active(), vec![2]);
        assert_eq!(lines[6].fixed(), vec![(1, 3)]);
    }

    #[test]
    fn monochromatic_examples() {
        let zero = Coloring::constant(2, 0).unwrap();
        for l in enumerate_interval_lines(2) {
            assert_eq!(is_monochromatic(&zero, &l).unwrap(), Some(0));
        }
        let c = Coloring::from_colours(1, &[0, 0, 1]).unwrap();
        let diag = Line::new(1, &[1], &BTreeMap::new()).unwrap();
        assert_eq!(is_monochromatic(&c, &diag).unwrap(), None);

        let parity = Coloring::from_fn(2, |w| (w.rank() % 2) as u8).unwrap();
        let l = Line::new(2, &[2], &BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(l.point_ranks(), [0, 1, 2]);
        assert_eq!(is_monochromatic(&parity, &l).unwrap(), None);

        assert!(is_monochromatic(&zero, &diag).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let c = Coloring::from_fn(2, |w| u8::from(w.rank() % 5 == 1)).unwrap();
        assert_eq!(apply_symmetry(&c, &Symmetry::IDENTITY), c);
        let sw = Symmetry::colour_swap();
        assert_eq!(apply_symmetry(&apply_symmetry(&c, &sw), &sw), c);

        let only12 = Coloring::from_fn(2, |x| u8::from(x.to_string() == "12")).unwrap();
        let rev = apply_symmetry(&only12, &Symmetry::reversal());
        let expect = Coloring::from_fn(2, |x| u8::from(x.to_string() == "21")).unwrap();
        assert_eq!(rev, expect);
    }

    #[test]
    fn symmetry_group_has_24_distinct_elements() {
        let all = Symmetry::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Symmetry::IDENTITY);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 24);
    }

    #[test]
    fn symmetries_preserve_interval_lines() {
        for n in 1..=3 {
            let lines: HashSet<Vec<usize>> = enumerate_interval_lines(n)
                .map(|l| {
                    let mut r = l.point_ranks().to_vec();
                    r.sort();
                    r
                })
                .collect();
            for g in Symmetry::all() {
                for l in enumerate_interval_lines(n) {
                    let mut img: Vec<usize> =
                        l.points().iter().map(|p| g.apply_word(p).rank()).collect();
                    img.sort();
                    assert!(lines.contains(&img), "{g:?} breaks {l:?}");
                    let line_img = g.apply_line(&l);
                    assert!(line_img.as_interval().is_some());
                    let mut r = line_img.point_ranks().to_vec();
                    r.sort();
                    assert_eq!(r, img);
                }
            }
        }
    }

    #[test]
    fn coloring_file_round_trip() {
        let c = Coloring::from_fn(2, |w| u8::from(w.letter(1) == 2)).unwrap();
        let text = c.to_file_string();
        assert_eq!(text, "HJC 3 2\n000111000\n");
        assert_eq!(Coloring::parse_file(&text).unwrap(), c);
        assert_eq!(Coloring::parse_file("HJC 3 2\n000111000").unwrap(), c);
    }

    #[test]
    fn coloring_file_rejects_junk() {
        for bad in [
            "HJC 3 2\n00011100\n",
            "HJC 3 2\n0001110000\n",
            "HJC 3 2\n000111002\n",
            "HJC 3 2\r\n000111000\n",
            "HJC 3 2\n000111000\n\n",
            "HJC 3 2\n000111000 \n",
            "HJC 2 2\n0001\n",
            "HJC 3 0\n\n",
            "HJC 3  2\n000111000\n",
            "HJC 3 2",
        ] {
            assert!(Coloring::parse_file(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn coloring_bits_beyond_one_word() {
        let mut c = Coloring::constant(5, 1).unwrap();
        assert_eq!(c.count_ones(), 243);
        c.flip(200);
        assert_eq!(c.get(200), 0);
        assert_eq!(c.swapped().count_ones(), 1);
    }
}
