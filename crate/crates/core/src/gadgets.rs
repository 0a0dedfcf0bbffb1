//! The finite combinatorics behind interval lines in 2-coloured `[3]^n`.
//!
//! Five patterns `s1..s5` are fixed. Once a colouring is known to give every
//! word with breakpoints in a set `T0` and pattern `si` the same colour `di`,
//! nine bracket words built from any `a1 < a2 < a3 < a4` in `T0` form five
//! interval lines `L1..L5` whose colour sets are `N1..N5`. Every choice of
//! `d1..d5` makes one `Ni` a singleton, hence one `Li` monochromatic.
//!
//! The Ramsey step that produces `T0` needs astronomically large `n`; here
//! it is carried out by brute force, which only succeeds at small sizes.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::LineCertificate;
use crate::cube::{enumerate_interval_lines, Coloring, IntervalLine, Line, Word};
use crate::error::CubeError;
use crate::pattern::{contract, realize_unchecked, Pattern};

/// Letters of `s1..s5`.
pub const GADGET_PATTERNS: [&[u8]; 5] = [
    &[1, 3, 2],
    &[1, 2, 3, 2],
    &[1, 3, 1, 2],
    &[1, 3, 2, 3, 2],
    &[1, 3, 1, 3, 2],
];

/// Size of the final homogeneous set `T0`.
pub const N0: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("invalid quadruple {a:?} for n={n}: need 1 <= a1 < a2 < a3 < a4 <= n-1")]
    InvalidQuadruple { a: [usize; 4], n: usize },
    #[error("gadget index {0} outside 1..=5")]
    BadIndex(usize),
    #[error("ground set has {got} elements, need at least {needed}")]
    TooSmall { needed: usize, got: usize },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("c{index} is not constant on T{prev}: {first:?} -> {first_colour}, {second:?} -> {second_colour}", prev = index - 1)]
    NotHomogeneous {
        index: usize,
        first: Vec<usize>,
        first_colour: u8,
        second: Vec<usize>,
        second_colour: u8,
    },
    #[error("c{index} is constant {found} on T{prev} but the chain records d{index}={expected}", prev = index - 1)]
    WrongColour {
        index: usize,
        expected: u8,
        found: u8,
    },
    #[error("colour vector {0} has no singleton N_i")]
    CaseLemmaFalsified(ColourVector),
    #[error("gadget line L{index}: {reason}")]
    Geometry { index: usize, reason: String },
    #[error("gadget line L{index} is not monochromatic despite a verified chain")]
    ExtractionFailed { index: usize },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// The fixed patterns `s1..s5`, their lengths, and `n0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetConstants {
    pub patterns: [Pattern; 5],
    pub lengths: [usize; 5],
    pub n0: usize,
}

impl Default for GadgetConstants {
    fn default() -> Self {
        let patterns = GADGET_PATTERNS.map(|s| Pattern::new(s.to_vec()).expect("valid pattern"));
        let lengths = GADGET_PATTERNS.map(<[u8]>::len);
        GadgetConstants {
            patterns,
            lengths,
            n0: N0,
        }
    }
}

/// Uniformity `t_i - 1` of the induced colouring `c_i`.
pub fn subset_size(index: usize) -> Result<usize, GadgetError> {
    GADGET_PATTERNS
        .get(index.wrapping_sub(1))
        .map(|s| s.len() - 1)
        .ok_or(GadgetError::BadIndex(index))
}

/// `a1 < a2 < a3 < a4` inside `1..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    a: [usize; 4],
    n: usize,
}

impl Quadruple {
    pub fn new(a: [usize; 4], n: usize) -> Result<Self, GadgetError> {
        let ok = a[0] >= 1 && a.windows(2).all(|p| p[0] < p[1]) && a[3] < n;
        if !ok {
            return Err(GadgetError::InvalidQuadruple { a, n });
        }
        Ok(Quadruple { a, n })
    }

    pub fn a(&self) -> [usize; 4] {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All quadruples for `n`, lexicographically.
    pub fn all(n: usize) -> Vec<Quadruple> {
        let mut out = Vec::new();
        if n < 5 {
            return out;
        }
        for a1 in 1..n {
            for a2 in a1 + 1..n {
                for a3 in a2 + 1..n {
                    for a4 in a3 + 1..n {
                        out.push(Quadruple {
                            a: [a1, a2, a3, a4],
                            n,
                        });
                    }
                }
            }
        }
        out
    }

    /// Block `j` (1-based) spans coordinates `a_{j-1}+1 ..= a_j` with
    /// `a_0 = 0`, `a_5 = n`.
    fn block(&self, j: usize) -> (usize, usize) {
        let lo = if j == 1 { 1 } else { self.a[j - 2] + 1 };
        let hi = if j == 5 { self.n } else { self.a[j - 1] };
        (lo, hi)
    }
}

/// The word `[b1 b2 b3 b4 b5]`: letter `bj` on block `j`. Adjacent equal
/// letters are allowed.
pub fn bracket_word(b: [u8; 5], q: &Quadruple) -> Result<Word, GadgetError> {
    if let Some(&bad) = b.iter().find(|l| !(1..=3).contains(*l)) {
        return Err(CubeError::BadLetter(bad).into());
    }
    Ok(realize_unchecked(&b, &q.a, q.n))
}

const W_BRACKETS: [[u8; 5]; 5] = [
    [1, 3, 3, 3, 2],
    [1, 2, 2, 3, 2],
    [1, 3, 1, 1, 2],
    [1, 3, 2, 3, 2],
    [1, 3, 1, 3, 2],
];
const V_BRACKETS: [[u8; 5]; 3] = [[1, 1, 1, 3, 2], [1, 1, 2, 3, 2], [1, 3, 1, 2, 2]];
const U1_BRACKET: [u8; 5] = [1, 3, 2, 2, 2];

/// `w1..w5`, `v1..v3`, `u1` for a quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetWords {
    pub w: [Word; 5],
    pub v: [Word; 3],
    pub u1: Word,
}

pub fn gadget_words(q: &Quadruple) -> GadgetWords {
    let make = |b: [u8; 5]| realize_unchecked(&b, &q.a, q.n);
    GadgetWords {
        w: W_BRACKETS.map(make),
        v: V_BRACKETS.map(make),
        u1: make(U1_BRACKET),
    }
}

/// One of the five interval lines `L1..L5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetLine {
    /// `i` in `1..=5`; the colours on `Li` are those of `Ni`.
    pub index: usize,
    pub line: IntervalLine,
    /// Members in the order listed for `Li`.
    pub members: [Word; 3],
}

/// `(members, first active block, last active block)` for `L1..L5`.
fn line_table(g: &GadgetWords) -> [([&Word; 3], usize, usize); 5] {
    let [w1, w2, w3, w4, w5] = &g.w;
    let [v1, v2, v3] = &g.v;
    let u1 = &g.u1;
    [
        ([v1, w2, w1], 2, 3),
        ([w3, u1, w1], 3, 4),
        ([v2, w2, w4], 2, 2),
        ([w3, v3, w5], 4, 4),
        ([w5, w4, w1], 3, 3),
    ]
}

/// `L1..L5` with active intervals `S1 = a1+1..a3`, `S2 = a2+1..a4`,
/// `S3 = a1+1..a2`, `S4 = a3+1..a4`, `S5 = a2+1..a3`.
///
/// The interval lines are built from the stated intervals and the fixed
/// letters of the first member; they are not derived from the triples, so
/// comparing `line.points()` with `members` is a real check.
pub fn gadget_lines(q: &Quadruple) -> [GadgetLine; 5] {
    let words = gadget_words(q);
    let table = line_table(&words);
    std::array::from_fn(|k| {
        let (members, first_block, last_block) = table[k];
        let lo = q.block(first_block).0;
        let hi = q.block(last_block).1;
        let fixed: BTreeMap<usize, u8> = (1..=q.n)
            .filter(|i| !(lo..=hi).contains(i))
            .map(|i| (i, members[0].letter(i)))
            .collect();
        GadgetLine {
            index: k + 1,
            line: IntervalLine::new(q.n, lo, hi, &fixed).expect("gadget interval inside cube"),
            members: members.map(Clone::clone),
        }
    })
}

/// Checks `L1..L5` for `q`: each listed triple is a combinatorial line,
/// equals the interval line built from `Si`, and its member patterns are
/// exactly the `sj` with `j` in `Ni`.
pub fn verify_gadget_lines(q: &Quadruple) -> Result<[GadgetLine; 5], GadgetError> {
    let patterns = GadgetConstants::default().patterns;
    let lines = gadget_lines(q);
    for gl in &lines {
        let fail = |reason: String| GadgetError::Geometry {
            index: gl.index,
            reason,
        };
        let [m1, m2, m3] = &gl.members;
        let derived = Line::from_points(m1, m2, m3)
            .ok_or_else(|| fail(format!("{m1} {m2} {m3} is not a combinatorial line")))?;
        if &derived != gl.line.line() {
            return Err(fail(format!(
                "triple has active set {:?}, expected {}..={}",
                derived.active(),
                gl.line.lo(),
                gl.line.hi()
            )));
        }
        let mut found: Vec<usize> = gl
            .members
            .iter()
            .map(|w| {
                let s = contract(w);
                patterns
                    .iter()
                    .position(|p| *p == s)
                    .map(|j| j + 1)
                    .ok_or_else(|| fail(format!("{w} has pattern {s}, not a gadget pattern")))
            })
            .collect::<Result<_, _>>()?;
        found.sort_unstable();
        found.dedup();
        if found != NSET_INDICES[gl.index - 1] {
            return Err(fail(format!(
                "member patterns s{found:?}, expected s{:?}",
                NSET_INDICES[gl.index - 1]
            )));
        }
    }
    Ok(lines)
}

/// `d1..d5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourVector(pub [u8; 5]);

impl ColourVector {
    pub fn new(d: [u8; 5]) -> Result<Self, GadgetError> {
        if let Some(&bad) = d.iter().find(|&&x| x > 1) {
            return Err(CubeError::BadColour(bad).into());
        }
        Ok(ColourVector(d))
    }

    /// The vector whose bits are `d1 d2 d3 d4 d5` read from the top of `x`.
    pub fn from_index(x: u8) -> Self {
        ColourVector(std::array::from_fn(|i| (x >> (4 - i)) & 1))
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i - 1]
    }
}

impl fmt::Display for ColourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ColourVector {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, GadgetError> {
        let digits: Vec<u8> = s
            .bytes()
            .map(|b| match b {
                b'0' | b'1' => Ok(b - b'0'),
                other => Err(GadgetError::Cube(CubeError::BadColour(
                    other.wrapping_sub(b'0'),
                ))),
            })
            .collect::<Result<_, _>>()?;
        let d: [u8; 5] = digits.try_into().map_err(|_| {
            GadgetError::Cube(CubeError::Format("need exactly five colours".into()))
        })?;
        Ok(ColourVector(d))
    }
}

/// A subset of `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColourSet(u8);

impl ColourSet {
    pub fn from_colours(colours: &[u8]) -> Self {
        ColourSet(colours.iter().fold(0, |m, &c| m | (1 << c)))
    }

    pub fn contains(&self, c: u8) -> bool {
        self.0 & (1 << c) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// The only colour, when the set is a singleton.
    pub fn single(&self) -> Option<u8> {
        match self.0 {
            0b01 => Some(0),
            0b10 => Some(1),
            _ => None,
        }
    }
}

/// Which `d` indices make up `N1..N5`.
pub const NSET_INDICES: [&[usize]; 5] = [&[1, 2], &[1, 3], &[2, 4], &[3, 5], &[1, 4, 5]];

pub fn nsets(d: &ColourVector) -> [ColourSet; 5] {
    NSET_INDICES
        .map(|ix| ColourSet::from_colours(&ix.iter().map(|&i| d.get(i)).collect::<Vec<_>>()))
}

/// Smallest `i` with `|Ni| = 1`.
pub fn smallest_singleton(d: &ColourVector) -> Option<usize> {
    nsets(d).iter().position(|s| s.len() == 1).map(|k| k + 1)
}

/// Result of checking all 32 colour vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTable {
    /// `(d, smallest singleton index)` for every `d`, in binary order.
    pub rows: Vec<(ColourVector, usize)>,
}

impl CaseTable {
    pub fn count_with_index(&self, i: usize) -> usize {
        self.rows.iter().filter(|(_, k)| *k == i).count()
    }
}

impl fmt::Display for CaseTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, i) in &self.rows {
            let sets = nsets(d);
            let colour = sets[i - 1].single().expect("singleton");
            writeln!(f, "d={d} singleton=N{i} colour={colour}")?;
        }
        Ok(())
    }
}

/// Runs the colour-case lemma over all `2^5` vectors.
pub fn case_lemma_check() -> Result<CaseTable, GadgetError> {
    let rows = (0u8..32)
        .map(|x| {
            let d = ColourVector::from_index(x);
            smallest_singleton(&d)
                .map(|i| (d, i))
                .ok_or(GadgetError::CaseLemmaFalsified(d))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CaseTable { rows })
}

/// The colouring `c(w) = d_j` when `contract(w) = s_j`, and `d1` for every
/// other pattern.
pub fn pattern_coloring(n: usize, d: &ColourVector) -> Result<Coloring, GadgetError> {
    Ok(Coloring::from_fn(n, |w| {
        let s = contract(w);
        GADGET_PATTERNS
            .iter()
            .position(|p| *p == s.letters())
            .map_or(d.get(1), |j| d.get(j + 1))
    })?)
}

/// A 2-colouring of the `t`-subsets of a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetColoring {
    pub ground: Vec<usize>,
    pub t: usize,
    pub colours: BTreeMap<Vec<usize>, u8>,
}

impl SubsetColoring {
    pub fn get(&self, subset: &[usize]) -> Option<u8> {
        self.colours.get(subset).copied()
    }

    /// The common colour when every subset has the same one.
    pub fn constant_value(&self) -> Option<u8> {
        let mut it = self.colours.values();
        let first = *it.next()?;
        it.all(|&c| c == first).then_some(first)
    }
}

/// Calls `f` on every `k`-subset of `ground` (sorted input), lexicographically.
/// Stops early when `f` returns `false`.
fn for_each_subset(ground: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(
        ground: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        for i in start..=ground.len().saturating_sub(need) {
            if ground.len() < need {
                break;
            }
            cur.push(ground[i]);
            let go = rec(ground, k, i + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k <= ground.len() {
        rec(ground, k, 0, &mut Vec::with_capacity(k), &mut f);
    }
}

fn sorted_set(t: &[usize]) -> Vec<usize> {
    let mut v = t.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Colour of the word with pattern `s_index` and breakpoints `a`.
fn gadget_colour(c: &Coloring, index: usize, a: &[usize]) -> u8 {
    let w = realize_unchecked(GADGET_PATTERNS[index - 1], a, c.n());
    c.get(w.rank())
}

/// `c_i(A) = c(realize(s_i, A, n))` on the `(t_i - 1)`-subsets of `ground`.
pub fn induced_coloring(
    c: &Coloring,
    index: usize,
    ground: &[usize],
) -> Result<SubsetColoring, GadgetError> {
    let t = subset_size(index)?;
    let ground = sorted_set(ground);
    if ground.len() < t {
        return Err(GadgetError::TooSmall {
            needed: t,
            got: ground.len(),
        });
    }
    if let Some(&bad) = ground.iter().find(|&&x| x == 0 || x >= c.n()) {
        return Err(CubeError::InvalidBreakpoints(format!(
            "breakpoint {bad} outside 1..={}",
            c.n() - 1
        ))
        .into());
    }
    let mut colours = BTreeMap::new();
    for_each_subset(&ground, t, |a| {
        colours.insert(a.to_vec(), gadget_colour(c, index, a));
        true
    });
    Ok(SubsetColoring { ground, t, colours })
}

/// Lexicographically least `target`-subset of `ground` all of whose
/// `t`-subsets share a colour under `colour`, with that colour.
///
/// Depth-first over increasing elements; a branch is abandoned as soon as a
/// newly completed `t`-subset disagrees, which is sound because homogeneity
/// is inherited by subsets.
pub fn ramsey_refine(
    ground: &[usize],
    t: usize,
    colour: &dyn Fn(&[usize]) -> u8,
    target: usize,
) -> Option<(Vec<usize>, u8)> {
    assert!(t >= 1 && target >= t, "need target >= t >= 1");
    let ground = sorted_set(ground);
    if ground.len() < target {
        return None;
    }

    struct Search<'a> {
        ground: &'a [usize],
        t: usize,
        target: usize,
        colour: &'a dyn Fn(&[usize]) -> u8,
        chosen: Vec<usize>,
        scratch: Vec<usize>,
    }

    impl Search<'_> {
        /// Whether every t-subset containing the last chosen element has
        /// colour `*fixed` (setting it on first sight).
        fn consistent(&mut self, fixed: &mut Option<u8>) -> bool {
            let k = self.chosen.len();
            if k < self.t {
                return true;
            }
            let last = self.chosen[k - 1];
            let head: Vec<usize> = self.chosen[..k - 1].to_vec();
            let mut ok = true;
            let t = self.t;
            let colour = self.colour;
            let scratch = &mut self.scratch;
            for_each_subset(&head, t - 1, |sub| {
                scratch.clear();
                scratch.extend_from_slice(sub);
                scratch.push(last);
                let c = colour(scratch);
                match fixed {
                    None => *fixed = Some(c),
                    Some(f) if *f != c => ok = false,
                    _ => {}
                }
                ok
            });
            ok
        }

        fn run(&mut self, start: usize, fixed: Option<u8>) -> Option<u8> {
            if self.chosen.len() == self.target {
                return fixed;
            }
            let need = self.target - self.chosen.len();
            for i in start..=self.ground.len() - need {
                self.chosen.push(self.ground[i]);
                let mut f = fixed;
                if self.consistent(&mut f) {
                    if let Some(c) = self.run(i + 1, f) {
                        return Some(c);
                    }
                }
                self.chosen.pop();
            }
            None
        }
    }

    let mut s = Search {
        ground: &ground,
        t,
        target,
        colour,
        chosen: Vec::with_capacity(target),
        scratch: Vec::with_capacity(t),
    };
    s.run(0, None).map(|c| (s.chosen, c))
}

/// `T0 ⊆ T1 ⊆ ... ⊆ T5` with colours `d1..d5`: `c_i` is constant `d_i` on
/// the `(t_i - 1)`-subsets of `T_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousChain {
    /// `sets[i]` is `T_i`, sorted.
    pub sets: [Vec<usize>; 6],
    pub d: ColourVector,
}

impl HomogeneousChain {
    pub fn new(sets: [Vec<usize>; 6], d: ColourVector) -> Self {
        HomogeneousChain {
            sets: sets.map(|s| sorted_set(&s)),
            d,
        }
    }

    /// The same set at every level, e.g. `T0 = ... = T5 = {1, ..., n-1}`.
    pub fn flat(set: Vec<usize>, d: ColourVector) -> Self {
        HomogeneousChain::new(std::array::from_fn(|_| set.clone()), d)
    }

    fn check_shape(&self, n: usize) -> Result<(), GadgetError> {
        if self.sets[0].len() < N0 {
            return Err(GadgetError::InvalidChain(format!(
                "|T0| = {} < {N0}",
                self.sets[0].len()
            )));
        }
        for i in 0..5 {
            if !self.sets[i]
                .iter()
                .all(|x| self.sets[i + 1].binary_search(x).is_ok())
            {
                return Err(GadgetError::InvalidChain(format!(
                    "T{i} is not inside T{}",
                    i + 1
                )));
            }
        }
        if let Some(&bad) = self.sets[5].iter().find(|&&x| x == 0 || x >= n) {
            return Err(GadgetError::InvalidChain(format!(
                "T5 contains {bad}, outside 1..={}",
                n - 1
            )));
        }
        Ok(())
    }

    /// Checks inclusions and that each `c_i` is constant `d_i` on `T_{i-1}`.
    pub fn verify(&self, c: &Coloring) -> Result<(), GadgetError> {
        self.check_shape(c.n())?;
        for index in 1..=5 {
            let t = subset_size(index)?;
            let ground = &self.sets[index - 1];
            let mut first: Option<(Vec<usize>, u8)> = None;
            let mut err = None;
            for_each_subset(ground, t, |a| {
                let col = gadget_colour(c, index, a);
                match &first {
                    None => {
                        first = Some((a.to_vec(), col));
                        true
                    }
                    Some((f, fc)) if *fc != col => {
                        err = Some(GadgetError::NotHomogeneous {
                            index,
                            first: f.clone(),
                            first_colour: *fc,
                            second: a.to_vec(),
                            second_colour: col,
                        });
                        false
                    }
                    _ => true,
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let (_, found) = first.expect("T0 has at least t elements");
            if found != self.d.get(index) {
                return Err(GadgetError::WrongColour {
                    index,
                    expected: self.d.get(index),
                    found,
                });
            }
        }
        Ok(())
    }
}

/// Turns a verified chain into a monochromatic interval line.
///
/// Uses the four smallest elements of `T0` and the smallest `i` with
/// `|Ni| = 1`; the result is re-verified against `c`.
pub fn extract_line(
    c: &Coloring,
    chain: &HomogeneousChain,
) -> Result<LineCertificate, GadgetError> {
    chain.verify(c)?;
    let t0 = &chain.sets[0];
    let q = Quadruple::new([t0[0], t0[1], t0[2], t0[3]], c.n())?;
    let index = smallest_singleton(&chain.d).ok_or(GadgetError::CaseLemmaFalsified(chain.d))?;
    let gl = gadget_lines(&q)
        .into_iter()
        .nth(index - 1)
        .expect("five lines");
    let colour = nsets(&chain.d)[index - 1].single().expect("singleton");
    let cert = LineCertificate::new(gl.line, colour);
    cert.verify(c)
        .map_err(|_| GadgetError::ExtractionFailed { index })?;
    Ok(cert)
}

/// How [`find_interval_line`] looks for a monochromatic interval line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Every interval line; finds one iff one exists.
    Direct,
    /// Only the five gadget lines of each quadruple.
    Gadget,
    /// Brute-force homogeneous chain, then [`extract_line`].
    Pipeline,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Gadget => "gadget",
            Method::Pipeline => "pipeline",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Method::Direct),
            "gadget" => Ok(Method::Gadget),
            "pipeline" => Ok(Method::Pipeline),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

fn first_direct(c: &Coloring) -> Option<LineCertificate> {
    enumerate_interval_lines(c.n()).find_map(|l| {
        let [p, q, r] = l.point_ranks();
        let col = c.get(p);
        (c.get(q) == col && c.get(r) == col).then(|| LineCertificate::new(l, col))
    })
}

fn first_gadget(c: &Coloring) -> Option<LineCertificate> {
    Quadruple::all(c.n()).par_iter().find_map_first(|q| {
        gadget_lines(q).into_iter().find_map(|gl| {
            let [p, r, s] = gl.line.point_ranks();
            let col = c.get(p);
            (c.get(r) == col && c.get(s) == col).then(|| LineCertificate::new(gl.line, col))
        })
    })
}

/// Builds a homogeneous chain from `T5 = {1, ..., n-1}` downwards. At each
/// stage the largest homogeneous subset is tried first, smaller ones on
/// backtrack, never below `N0`.
pub fn pipeline_chain(c: &Coloring) -> Option<HomogeneousChain> {
    fn stage(c: &Coloring, index: usize, sets: &mut [Vec<usize>; 6], d: &mut [u8; 5]) -> bool {
        if index == 0 {
            return true;
        }
        let t = subset_size(index).expect("index in range");
        let ground = sets[index].clone();
        let colour = |a: &[usize]| gadget_colour(c, index, a);
        for target in (N0.max(t)..=ground.len()).rev() {
            if let Some((sub, col)) = ramsey_refine(&ground, t, &colour, target) {
                sets[index - 1] = sub;
                d[index - 1] = col;
                if stage(c, index - 1, sets, d) {
                    return true;
                }
            }
        }
        false
    }
    let n = c.n();
    if n < N0 + 1 {
        return None;
    }
    let mut sets: [Vec<usize>; 6] = Default::default();
    sets[5] = (1..n).collect();
    let mut d = [0u8; 5];
    stage(c, 5, &mut sets, &mut d).then(|| HomogeneousChain::new(sets, ColourVector(d)))
}

/// Searches `c` for a monochromatic interval line. Any certificate returned
/// has been re-verified against `c`. Only the direct method's `None` proves
/// that no such line exists.
pub fn find_interval_line(c: &Coloring, method: Method) -> Option<LineCertificate> {
    let found = match method {
        Method::Direct => first_direct(c),
        Method::Gadget => first_gadget(c),
        Method::Pipeline => pipeline_chain(c).and_then(|chain| extract_line(c, &chain).ok()),
    };
    if let Some(cert) = &found {
        cert.verify(c)
            .expect("search produced a certificate that does not verify");
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{is_monochromatic, Line};
    use crate::pattern::breakpoints;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(a: [usize; 4], n: usize) -> Quadruple {
        Quadruple::new(a, n).unwrap()
    }

    #[test]
    fn constants() {
        let k = GadgetConstants::default();
        assert_eq!(k.lengths, [3, 4, 4, 5, 5]);
        assert_eq!(k.n0, 4);
        let shown: Vec<String> = k.patterns.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["132", "1232", "1312", "13232", "13132"]);
    }

    #[test]
    fn quadruple_validation() {
        assert!(Quadruple::new([1, 2, 3, 4], 5).is_ok());
        assert!(Quadruple::new([1, 2, 3, 5], 5).is_err());
        assert!(Quadruple::new([0, 2, 3, 4], 6).is_err());
        assert!(Quadruple::new([1, 3, 3, 4], 6).is_err());
        assert_eq!(Quadruple::all(5).len(), 1);
        assert_eq!(Quadruple::all(8).len(), 35);
        assert!(Quadruple::all(4).is_empty());
    }

    #[test]
    fn bracket_word_examples() {
        assert_eq!(
            bracket_word([1, 3, 3, 3, 2], &q([1, 2, 3, 4], 5)).unwrap(),
            w("13332")
        );
        assert_eq!(
            bracket_word([1, 3, 2, 3, 2], &q([2, 4, 5, 7], 9)).unwrap(),
            w("113323322")
        );
        let v1 = bracket_word([1, 1, 1, 3, 2], &q([1, 2, 3, 4], 5)).unwrap();
        assert_eq!(v1, w("11132"));
        assert_eq!(contract(&v1).to_string(), "132");
        assert!(bracket_word([1, 4, 1, 1, 1], &q([1, 2, 3, 4], 5)).is_err());
    }

    #[test]
    fn bracket_breakpoints_inside_quadruple() {
        let quad = q([2, 3, 5, 6], 8);
        for x in 0..243u32 {
            let b: [u8; 5] = std::array::from_fn(|i| (x / 3u32.pow(i as u32) % 3) as u8 + 1);
            let word = bracket_word(b, &quad).unwrap();
            assert!(breakpoints(&word)
                .points()
                .iter()
                .all(|p| quad.a().contains(p)));
        }
    }

    #[test]
    fn gadget_geometry_exhaustive_small() {
        for n in 5..=7 {
            for quad in Quadruple::all(n) {
                let lines = verify_gadget_lines(&quad).unwrap();
                let a = quad.a();
                let spans = [
                    (a[0] + 1, a[2]),
                    (a[1] + 1, a[3]),
                    (a[0] + 1, a[1]),
                    (a[2] + 1, a[3]),
                    (a[1] + 1, a[2]),
                ];
                for (gl, (lo, hi)) in lines.iter().zip(spans) {
                    assert_eq!((gl.line.lo(), gl.line.hi()), (lo, hi));
                }
            }
        }
    }

    #[test]
    fn gadget_word_examples() {
        let g = gadget_words(&q([1, 2, 3, 4], 5));
        assert_eq!(g.w[3], w("13232"));
        assert_eq!(g.v[1], w("11232"));
        assert_eq!(contract(&g.v[1]).to_string(), "1232");
        let g = gadget_words(&q([2, 4, 6, 8], 10));
        assert_eq!(contract(&g.u1).to_string(), "132");
    }

    #[test]
    fn gadget_words_have_their_patterns() {
        let k = GadgetConstants::default();
        for quad in Quadruple::all(7) {
            let g = gadget_words(&quad);
            for i in 0..5 {
                assert_eq!(contract(&g.w[i]), k.patterns[i]);
            }
            for i in 0..3 {
                assert_eq!(contract(&g.v[i]), k.patterns[i]);
            }
            assert_eq!(contract(&g.u1), k.patterns[0]);
        }
    }

    #[test]
    fn gadget_line_examples() {
        let lines = gadget_lines(&q([1, 2, 3, 4], 5));
        assert_eq!(lines[4].members, [w("13132"), w("13232"), w("13332")]);
        assert_eq!(lines[4].line.active(), vec![3]);
        assert_eq!(lines[2].line.active(), vec![2]);
        for gl in gadget_lines(&q([1, 3, 4, 6], 8)) {
            let [a, b, c] = &gl.members;
            let l = Line::from_points(a, b, c).expect("valid line");
            assert_eq!(&l, gl.line.line());
        }
    }

    #[test]
    fn nsets_examples() {
        let zero = ColourVector([0; 5]);
        assert!(nsets(&zero).iter().all(|s| s.single() == Some(0)));
        let d = ColourVector([0, 1, 1, 0, 0]);
        let s = nsets(&d);
        assert_eq!(s[4].single(), Some(0));
        assert!(s[..4].iter().all(|x| x.len() == 2));
        let d = ColourVector([0, 1, 0, 1, 0]);
        assert_eq!(nsets(&d)[1].single(), Some(0));
        assert_eq!(smallest_singleton(&d), Some(2));
    }

    #[test]
    fn case_lemma() {
        let table = case_lemma_check().unwrap();
        assert_eq!(table.rows.len(), 32);
        assert_eq!(table.rows[0], (ColourVector([0; 5]), 1));
        assert_eq!(table.count_with_index(5), 2);
        let fives: Vec<_> = table
            .rows
            .iter()
            .filter(|r| r.1 == 5)
            .map(|r| r.0)
            .collect();
        assert_eq!(
            fives,
            vec![ColourVector([0, 1, 1, 0, 0]), ColourVector([1, 0, 0, 1, 1])]
        );
    }

    #[test]
    fn colour_vector_parsing() {
        assert_eq!(
            "01100".parse::<ColourVector>().unwrap(),
            ColourVector([0, 1, 1, 0, 0])
        );
        assert!("0110".parse::<ColourVector>().is_err());
        assert!("01120".parse::<ColourVector>().is_err());
        assert_eq!(
            ColourVector::from_index(0b01100),
            ColourVector([0, 1, 1, 0, 0])
        );
    }

    #[test]
    fn induced_coloring_examples() {
        let zero = Coloring::constant(6, 0).unwrap();
        for i in 1..=5 {
            let ci = induced_coloring(&zero, i, &[1, 2, 3, 4, 5]).unwrap();
            assert_eq!(ci.constant_value(), Some(0));
        }
        let pc = pattern_coloring(6, &ColourVector([0, 1, 1, 0, 1])).unwrap();
        for i in 1..=5 {
            let ci = induced_coloring(&pc, i, &[1, 2, 3, 4, 5]).unwrap();
            assert_eq!(ci.constant_value(), Some([0, 1, 1, 0, 1][i - 1]));
        }
        // Parity of rank on the realized words 132xxx for A in {1,2,3}^(2).
        let parity = Coloring::from_fn(6, |w| (w.rank() % 2) as u8).unwrap();
        let c1 = induced_coloring(&parity, 1, &[1, 2, 3]).unwrap();
        for (a, word) in [
            (vec![1, 2], "132222"),
            (vec![1, 3], "133222"),
            (vec![2, 3], "113222"),
        ] {
            let expect = (w(word).rank() % 2) as u8;
            assert_eq!(c1.get(&a), Some(expect), "{word}");
        }
        assert_eq!(c1.colours.len(), 3);
    }

    #[test]
    fn induced_coloring_errors() {
        let zero = Coloring::constant(6, 0).unwrap();
        assert!(matches!(
            induced_coloring(&zero, 4, &[1, 2, 3]),
            Err(GadgetError::TooSmall { needed: 4, got: 3 })
        ));
        assert!(matches!(
            induced_coloring(&zero, 6, &[1, 2, 3]),
            Err(GadgetError::BadIndex(6))
        ));
        assert!(induced_coloring(&zero, 1, &[1, 2, 6]).is_err());
    }

    #[test]
    fn ramsey_refine_constant() {
        let got = ramsey_refine(&[3, 5, 8, 9, 11], 2, &|_| 1, 3).unwrap();
        assert_eq!(got, (vec![3, 5, 8], 1));
    }

    #[test]
    fn ramsey_refine_pigeonhole() {
        let ground: Vec<usize> = (1..=7).collect();
        for mask in 0u32..128 {
            let colour = move |a: &[usize]| ((mask >> (a[0] - 1)) & 1) as u8;
            let (sub, col) = ramsey_refine(&ground, 1, &colour, 4).expect("pigeonhole");
            assert_eq!(sub.len(), 4);
            assert!(sub.iter().all(|&x| colour(&[x]) == col));
        }
    }

    #[test]
    fn ramsey_refine_returns_none_when_impossible() {
        // Pentagon/pentagram colouring of K5 has no monochromatic triangle.
        let colour = |a: &[usize]| u8::from((a[1] - a[0]) % 5 == 1 || (a[1] - a[0]) % 5 == 4);
        assert_eq!(ramsey_refine(&[0, 1, 2, 3, 4], 2, &colour, 3), None);
        assert_eq!(ramsey_refine(&[1, 2], 2, &|_| 0, 3), None);
    }

    #[test]
    fn chain_verification_reports_disagreement() {
        let parity = Coloring::from_fn(6, |w| (w.rank() % 2) as u8).unwrap();
        let chain = HomogeneousChain::flat(vec![1, 2, 3, 4, 5], ColourVector([0; 5]));
        match chain.verify(&parity) {
            Err(GadgetError::NotHomogeneous {
                index,
                first,
                second,
                ..
            }) => {
                assert_eq!(index, 1);
                assert_ne!(first, second);
            }
            other => panic!("expected NotHomogeneous, got {other:?}"),
        }
        let zero = Coloring::constant(6, 0).unwrap();
        let wrong = HomogeneousChain::flat(vec![1, 2, 3, 4, 5], ColourVector([0, 0, 1, 0, 0]));
        assert_eq!(
            wrong.verify(&zero),
            Err(GadgetError::WrongColour {
                index: 3,
                expected: 1,
                found: 0
            })
        );
        let short = HomogeneousChain::flat(vec![1, 2, 3], ColourVector([0; 5]));
        assert!(matches!(
            short.verify(&zero),
            Err(GadgetError::InvalidChain(_))
        ));
        let not_nested = HomogeneousChain::new(
            [
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 5],
                vec![1, 2, 3, 4, 5],
                vec![1, 2, 3, 4, 5],
                vec![1, 2, 3, 4, 5],
                vec![1, 2, 3, 4, 5],
            ],
            ColourVector([0; 5]),
        );
        assert!(matches!(
            not_nested.verify(&zero),
            Err(GadgetError::InvalidChain(_))
        ));
    }

    #[test]
    fn extract_line_examples() {
        let zero = pattern_coloring(5, &ColourVector([0; 5])).unwrap();
        let chain = HomogeneousChain::flat(vec![1, 2, 3, 4], ColourVector([0; 5]));
        let cert = extract_line(&zero, &chain).unwrap();
        assert_eq!((cert.line.lo(), cert.line.hi()), (2, 3));
        assert_eq!(cert.colour, 0);

        let d = ColourVector([0, 1, 1, 0, 0]);
        let pc = pattern_coloring(6, &d).unwrap();
        let chain = HomogeneousChain::flat(vec![1, 2, 3, 4, 5], d);
        let cert = extract_line(&pc, &chain).unwrap();
        // L5 on a = (1,2,3,4): active block 3 = {3}.
        assert_eq!((cert.line.lo(), cert.line.hi()), (3, 3));
        assert_eq!(cert.colour, 0);
        assert_eq!(cert.witnesses, [w("131322"), w("132322"), w("133322")]);
        assert_eq!(is_monochromatic(&pc, cert.line.line()).unwrap(), Some(0));
    }

    #[test]
    fn direct_method_first_line() {
        let zero = Coloring::constant(2, 0).unwrap();
        let cert = find_interval_line(&zero, Method::Direct).unwrap();
        assert_eq!(&cert.line, &enumerate_interval_lines(2).next().unwrap());
    }

    #[test]
    fn all_methods_agree_on_pattern_colourings() {
        for x in 0u8..32 {
            let d = ColourVector::from_index(x);
            let c = pattern_coloring(5, &d).unwrap();
            for m in [Method::Direct, Method::Gadget, Method::Pipeline] {
                assert!(find_interval_line(&c, m).is_some(), "{m} failed on d={d}");
            }
        }
    }

    #[test]
    fn pipeline_chain_is_verified() {
        let c = pattern_coloring(7, &ColourVector([1, 0, 0, 1, 1])).unwrap();
        let chain = pipeline_chain(&c).unwrap();
        chain.verify(&c).unwrap();
        assert_eq!(chain.sets[5], vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(chain.d, ColourVector([1, 0, 0, 1, 1]));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Direct, Method::Gadget, Method::Pipeline] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("other".parse::<Method>().is_err());
    }
}
