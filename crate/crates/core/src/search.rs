//! Searching for avoiders: 2-colourings of `[3]^n` with no monochromatic
//! interval line.
//!
//! The exhaustive search assigns cells in rank order and backtracks as soon
//! as an interval line is completed in one colour. With symmetry reduction
//! on, a partial colouring is also abandoned once some group element is
//! known to map it to a lexicographically smaller colouring, so only
//! canonical representatives (orbit minima) survive. The first avoider found
//! is the lexicographically least one overall.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::verify_avoider;
use crate::cube::{cube_size, interval_line_ranks, Coloring, Symmetry};
use crate::error::CubeError;

/// Largest `n` the exhaustive search accepts unless told otherwise.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("n={n} exceeds the exhaustive search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// Interval lines of `[3]^n` indexed for fast incremental updates.
#[derive(Clone, Debug)]
pub struct LineIndex {
    n: usize,
    cells: usize,
    lines: Vec<[usize; 3]>,
    through: Vec<Vec<u32>>,
    closing: Vec<Vec<[u32; 2]>>,
}

impl LineIndex {
    pub fn new(n: usize) -> Result<Self, CubeError> {
        let cells = cube_size(n)?;
        let lines = interval_line_ranks(n);
        let mut through = vec![Vec::new(); cells];
        let mut closing = vec![Vec::new(); cells];
        for (k, l) in lines.iter().enumerate() {
            for &r in l {
                through[r].push(k as u32);
            }
            let mut s = *l;
            s.sort_unstable();
            closing[s[2]].push([s[0] as u32, s[1] as u32]);
        }
        Ok(LineIndex {
            n,
            cells,
            lines,
            through,
            closing,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    /// Number of interval lines through the cell with rank `r`.
    pub fn degree(&self, r: usize) -> usize {
        self.through[r].len()
    }

    pub fn violation_count(&self, c: &Coloring) -> usize {
        self.lines
            .iter()
            .filter(|[p, q, r]| {
                let a = c.get(*p);
                a == c.get(*q) && a == c.get(*r)
            })
            .count()
    }
}

/// Number of monochromatic interval lines under `c`; zero iff `c` is an
/// avoider.
pub fn violation_count(c: &Coloring) -> usize {
    LineIndex::new(c.n())
        .expect("colouring dimension already validated")
        .violation_count(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Local,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Local => "local",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    AvoiderFound(Coloring),
    /// No avoider exists; only produced by the exhaustive search.
    Refuted,
    /// Local search ran out of budget; `best_count` monochromatic lines
    /// remained in `best`.
    Inconclusive {
        best_count: usize,
        best: Coloring,
    },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::AvoiderFound(_) => "avoider-found",
            Outcome::Refuted => "refuted",
            Outcome::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn avoider(&self) -> Option<&Coloring> {
        match self {
            Outcome::AvoiderFound(c) => Some(c),
            _ => None,
        }
    }
}

/// Counters gathered during a search. For the exhaustive search `nodes`
/// counts partial colourings visited; for local search it counts
/// evaluated neighbourhoods.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub line_prunes: u64,
    pub symmetry_prunes: u64,
    pub flips: u64,
    pub restarts: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: SearchStats) {
        self.nodes += o.nodes;
        self.line_prunes += o.line_prunes;
        self.symmetry_prunes += o.symmetry_prunes;
        self.flips += o.flips;
        self.restarts += o.restarts;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub mode: Mode,
    pub outcome: Outcome,
    pub stats: SearchStats,
    /// Exhaustive: whether symmetry reduction was used. Local: always false.
    pub symmetry: bool,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    pub symmetry: bool,
    pub cap: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            symmetry: true,
            cap: DEFAULT_EXHAUSTIVE_CAP,
            jobs: None,
        }
    }
}

/// Cell permutations `inv[j] = g^{-1}(j)` and swap flags of the 23
/// non-identity group elements.
fn group_tables(n: usize) -> Vec<(Vec<usize>, u8)> {
    Symmetry::all()
        .into_iter()
        .skip(1)
        .map(|g| {
            let map = g.cell_map(n).expect("dimension validated");
            let mut inv = vec![0; map.len()];
            for (r, &img) in map.iter().enumerate() {
                inv[img] = r;
            }
            (inv, u8::from(g.swap))
        })
        .collect()
}

struct Dfs<'a> {
    index: &'a LineIndex,
    group: &'a [(Vec<usize>, u8)],
    colours: Vec<u8>,
    stats: SearchStats,
}

impl Dfs<'_> {
    /// Whether cell `k` (just assigned) completes a monochromatic line.
    fn closes_mono(&self, k: usize) -> bool {
        let v = self.colours[k];
        self.index.closing[k]
            .iter()
            .any(|&[a, b]| self.colours[a as usize] == v && self.colours[b as usize] == v)
    }

    /// Whether the assigned prefix `0..=k` already proves some image is
    /// lexicographically smaller.
    fn beaten_by_symmetry(&self, k: usize) -> bool {
        let assigned = k + 1;
        self.group.iter().any(|(inv, swap)| {
            for (j, &src) in inv.iter().enumerate().take(assigned) {
                if src >= assigned {
                    return false;
                }
                let image = self.colours[src] ^ swap;
                let own = self.colours[j];
                if image != own {
                    return image < own;
                }
            }
            false
        })
    }

    /// Assigns `k` to `v` and reports whether the branch survives.
    fn try_assign(&mut self, k: usize, v: u8) -> bool {
        self.colours[k] = v;
        self.stats.nodes += 1;
        if self.closes_mono(k) {
            self.stats.line_prunes += 1;
            return false;
        }
        if self.beaten_by_symmetry(k) {
            self.stats.symmetry_prunes += 1;
            return false;
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.index.cells {
            return true;
        }
        for v in 0..2 {
            if self.try_assign(k, v) && self.run(k + 1) {
                return true;
            }
        }
        false
    }
}

/// Decides whether an avoider exists for `[3]^n` by exhaustive search.
///
/// Returns the lexicographically least avoider (as a rank-ordered bit
/// string) or `Refuted`. The colouring space is split into contiguous blocks
/// by the colours of the first few cells; blocks are searched independently
/// and the least success wins, so the result does not depend on scheduling.
pub fn exhaustive_search(n: usize, opts: &ExhaustiveOptions) -> Result<SearchReport, SearchError> {
    if n > opts.cap {
        return Err(SearchError::CapExceeded { n, cap: opts.cap });
    }
    let start = Instant::now();
    let index = LineIndex::new(n)?;
    let group = if opts.symmetry {
        group_tables(n)
    } else {
        Vec::new()
    };
    let cells = index.cells;
    let prefix_len = cells.min(10);

    let run_block = |prefix: u32| -> (Option<Vec<u8>>, SearchStats) {
        let mut dfs = Dfs {
            index: &index,
            group: &group,
            colours: vec![0; cells],
            stats: SearchStats::default(),
        };
        for k in 0..prefix_len {
            let v = ((prefix >> (prefix_len - 1 - k)) & 1) as u8;
            if !dfs.try_assign(k, v) {
                return (None, dfs.stats);
            }
        }
        let found = dfs.run(prefix_len).then(|| dfs.colours.clone());
        (found, dfs.stats)
    };

    let blocks: Vec<u32> = (0..1u32 << prefix_len).collect();
    let search = || -> Vec<(Option<Vec<u8>>, SearchStats)> {
        blocks.par_iter().map(|&p| run_block(p)).collect()
    };
    let results = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(search),
        None => search(),
    };

    let mut stats = SearchStats::default();
    let mut winner = None;
    for (found, s) in results {
        stats += s;
        if winner.is_none() {
            winner = found;
        }
    }
    let outcome = match winner {
        Some(bits) => {
            let c = Coloring::from_colours(n, &bits)?;
            verify_avoider(&c).expect("exhaustive search returned a non-avoider");
            Outcome::AvoiderFound(c)
        }
        None => Outcome::Refuted,
    };
    Ok(SearchReport {
        n,
        mode: Mode::Exhaustive,
        outcome,
        stats,
        symmetry: opts.symmetry,
        seed: None,
        budget: None,
        elapsed: start.elapsed(),
    })
}

/// Counts every avoider of `[3]^n` (no symmetry reduction).
pub fn count_avoiders(n: usize, cap: usize) -> Result<u64, SearchError> {
    if n > cap {
        return Err(SearchError::CapExceeded { n, cap });
    }
    let index = LineIndex::new(n)?;
    let mut dfs = Dfs {
        index: &index,
        group: &[],
        colours: vec![0; index.cells],
        stats: SearchStats::default(),
    };
    fn count(dfs: &mut Dfs<'_>, k: usize) -> u64 {
        if k == dfs.index.cells {
            return 1;
        }
        (0..2)
            .map(|v| {
                if dfs.try_assign(k, v) {
                    count(dfs, k + 1)
                } else {
                    0
                }
            })
            .sum()
    }
    Ok(count(&mut dfs, 0))
}

/// Colouring plus per-line tallies of colour-1 members.
struct Tallies<'a> {
    index: &'a LineIndex,
    colouring: Coloring,
    ones: Vec<u8>,
    mono: usize,
}

impl<'a> Tallies<'a> {
    fn new(index: &'a LineIndex, colouring: Coloring) -> Self {
        let ones: Vec<u8> = index
            .lines
            .iter()
            .map(|l| l.iter().map(|&r| colouring.get(r)).sum())
            .collect();
        let mono = ones.iter().filter(|&&t| t == 0 || t == 3).count();
        Tallies {
            index,
            colouring,
            ones,
            mono,
        }
    }

    /// Change in the monochromatic line count if cell `r` were flipped.
    fn delta(&self, r: usize) -> i64 {
        let up = self.colouring.get(r) == 0;
        self.index.through[r]
            .iter()
            .map(|&k| {
                let t = self.ones[k as usize];
                let after = if up { t + 1 } else { t - 1 };
                i64::from(after == 0 || after == 3) - i64::from(t == 0 || t == 3)
            })
            .sum()
    }

    fn flip(&mut self, r: usize) {
        let up = self.colouring.get(r) == 0;
        for &k in &self.index.through[r] {
            let t = &mut self.ones[k as usize];
            let before = *t == 0 || *t == 3;
            if up {
                *t += 1;
            } else {
                *t -= 1;
            }
            let after = *t == 0 || *t == 3;
            match (before, after) {
                (true, false) => self.mono -= 1,
                (false, true) => self.mono += 1,
                _ => {}
            }
        }
        self.colouring.flip(r);
    }
}

fn random_coloring(n: usize, rng: &mut ChaCha8Rng) -> Result<Coloring, CubeError> {
    let mut c = Coloring::constant(n, 0)?;
    for r in 0..c.len() {
        if rng.gen::<bool>() {
            c.set(r, 1);
        }
    }
    Ok(c)
}

/// Uniformly random colouring, determined by `seed`.
pub fn seeded_random_coloring(n: usize, seed: u64) -> Result<Coloring, CubeError> {
    random_coloring(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Sideways moves tolerated before a restart.
const MAX_SIDEWAYS: u32 = 50;

/// Steepest-descent local search on the number of monochromatic interval
/// lines, with sideways moves and random restarts. `budget` bounds the total
/// number of flips. Fully determined by `(n, seed, budget)`.
pub fn local_search(n: usize, seed: u64, budget: u64) -> Result<SearchReport, SearchError> {
    if budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let start = Instant::now();
    let index = LineIndex::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SearchStats::default();
    let mut state = Tallies::new(&index, random_coloring(n, &mut rng)?);
    let mut best = (state.mono, state.colouring.clone());
    let mut sideways = 0u32;
    let mut ties = Vec::new();

    while state.mono > 0 && stats.flips < budget {
        stats.nodes += 1;
        let mut best_delta = i64::MAX;
        ties.clear();
        for r in 0..index.cells {
            let d = state.delta(r);
            if d < best_delta {
                best_delta = d;
                ties.clear();
            }
            if d == best_delta {
                ties.push(r);
            }
        }
        if best_delta > 0 || (best_delta == 0 && sideways >= MAX_SIDEWAYS) {
            stats.restarts += 1;
            sideways = 0;
            state = Tallies::new(&index, random_coloring(n, &mut rng)?);
            if state.mono < best.0 {
                best = (state.mono, state.colouring.clone());
            }
            continue;
        }
        sideways = if best_delta == 0 { sideways + 1 } else { 0 };
        let cell = ties[rng.gen_range(0..ties.len())];
        state.flip(cell);
        stats.flips += 1;
        if state.mono < best.0 {
            best = (state.mono, state.colouring.clone());
        }
    }

    let outcome = if best.0 == 0 {
        verify_avoider(&best.1).expect("local search returned a non-avoider");
        Outcome::AvoiderFound(best.1)
    } else {
        Outcome::Inconclusive {
            best_count: best.0,
            best: best.1,
        }
    };
    Ok(SearchReport {
        n,
        mode: Mode::Local,
        outcome,
        stats,
        symmetry: false,
        seed: Some(seed),
        budget: Some(budget),
        elapsed: start.elapsed(),
    })
}
