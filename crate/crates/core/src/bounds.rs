//! Explicit upper bounds for hypergraph Ramsey numbers `R^(t)(p, q)` and the
//! tower `n0 = 4`, `n_i = R^(t_i - 1)(n_{i-1})`, `n = n5 + 1`.
//!
//! Exact values of these Ramsey numbers are unknown, so everything here is
//! an upper bound:
//!
//! * `t = 1`: `p + q - 1` (pigeonhole, exact).
//! * `t = 2`: `C(p + q - 2, p - 1)`.
//! * `t >= 3`: `R^(t)(p, q) <= R^(t-1)(R^(t)(p-1, q), R^(t)(p, q-1)) + 1`
//!   with `R^(t)(t, q) = q` and `R^(t)(p, t) = p`.
//!
//! Values with more decimal digits than the cap stay symbolic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::gadgets::{GADGET_PATTERNS, N0};

/// Default evaluation cap, in decimal digits.
pub const DEFAULT_CAP_DIGITS: usize = 10_000;

/// Largest `p * q` for which the `t >= 3` recursion is unrolled exactly.
const RECURSION_AREA: u64 = 1 << 16;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("uniformity t must be at least 1")]
    ZeroUniformity,
    #[error("R^({t})({p}, {q}) needs p, q >= t")]
    BelowBase { t: u32, p: String, q: String },
}

/// An exact integer or a symbolic bound too large to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundExpr {
    Exact(BigUint),
    Symbolic(Arc<SymNode>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymNode {
    /// `p + q - 1`.
    Pigeonhole { p: BoundExpr, q: BoundExpr },
    /// `C(p + q - 2, p - 1)`.
    Binomial { p: BoundExpr, q: BoundExpr },
    /// `R^(t)(p, q)`, bounded by `R^(t-1)(a, b) + 1` with
    /// `(a, b) = inner` when the recursion was unrolled one level.
    ErdosRadoStep {
        t: u32,
        p: BoundExpr,
        q: BoundExpr,
        inner: Option<(BoundExpr, BoundExpr)>,
    },
    /// `x + 1`.
    Succ(BoundExpr),
}

fn decimal_digits_estimate(x: &BigUint) -> f64 {
    x.bits() as f64 * LOG10_2
}

impl BoundExpr {
    pub fn exact(v: u64) -> Self {
        BoundExpr::Exact(BigUint::from(v))
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            BoundExpr::Exact(v) => Some(v),
            BoundExpr::Symbolic(_) => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_exact().and_then(ToPrimitive::to_u64)
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, BoundExpr::Symbolic(_))
    }

    fn sym(node: SymNode) -> Self {
        BoundExpr::Symbolic(Arc::new(node))
    }

    /// Short form for use inside a larger expression: long integers are
    /// summarised by their digit count, nested Ramsey bounds by their call.
    pub fn compact(&self) -> String {
        match self {
            BoundExpr::Exact(v) => {
                let s = v.to_string();
                if s.len() <= 40 {
                    s
                } else {
                    format!("<{}-digit integer>", s.len())
                }
            }
            BoundExpr::Symbolic(node) => match node.as_ref() {
                SymNode::Pigeonhole { p, q } => format!("({} + {} - 1)", p.compact(), q.compact()),
                SymNode::Binomial { p, q } => format!(
                    "C({} + {} - 2, {} - 1)",
                    p.compact(),
                    q.compact(),
                    p.compact()
                ),
                SymNode::ErdosRadoStep { t, p, q, .. } => {
                    format!("R^({t})({}, {})", p.compact(), q.compact())
                }
                SymNode::Succ(x) => format!("{} + 1", x.compact()),
            },
        }
    }
}

impl fmt::Display for BoundExpr {
    /// Exact values print in full; symbolic ones expand their top node.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Exact(v) => write!(f, "{v}"),
            BoundExpr::Symbolic(node) => match node.as_ref() {
                SymNode::ErdosRadoStep {
                    t,
                    inner: Some((a, b)),
                    ..
                } => write!(f, "R^({})({}, {}) + 1", t - 1, a.compact(), b.compact()),
                _ => f.write_str(&self.compact()),
            },
        }
    }
}

/// Memoised bound calculator with a digit cap.
#[derive(Debug)]
pub struct RamseyCalc {
    cap_digits: usize,
    memo: HashMap<(u32, u64, u64), BoundExpr>,
}

impl Default for RamseyCalc {
    fn default() -> Self {
        RamseyCalc::new(DEFAULT_CAP_DIGITS)
    }
}

impl RamseyCalc {
    pub fn new(cap_digits: usize) -> Self {
        RamseyCalc {
            cap_digits,
            memo: HashMap::new(),
        }
    }

    pub fn cap_digits(&self) -> usize {
        self.cap_digits
    }

    fn capped(&self, v: BigUint, fallback: impl FnOnce() -> SymNode) -> BoundExpr {
        if decimal_digits_estimate(&v) > self.cap_digits as f64 {
            BoundExpr::sym(fallback())
        } else {
            BoundExpr::Exact(v)
        }
    }

    fn binomial(&self, p: &BoundExpr, q: &BoundExpr) -> BoundExpr {
        let fallback = || SymNode::Binomial {
            p: p.clone(),
            q: q.clone(),
        };
        let (Some(pv), Some(qv)) = (p.as_u64(), q.as_u64()) else {
            return BoundExpr::sym(fallback());
        };
        let top = pv + qv - 2;
        let k = (pv - 1).min(qv - 1);
        if k > 0 {
            // C(N, k) >= (N / k)^k.
            let lower = k as f64 * (top as f64 / k as f64).log10();
            if lower > self.cap_digits as f64 {
                return BoundExpr::sym(fallback());
            }
        }
        let mut acc = BigUint::one();
        for i in 1..=k {
            acc *= top - k + i;
            acc /= i;
        }
        self.capped(acc, fallback)
    }

    /// Upper bound for `R^(t)(p, q)`.
    pub fn upper(
        &mut self,
        t: u32,
        p: &BoundExpr,
        q: &BoundExpr,
    ) -> Result<BoundExpr, BoundsError> {
        if t == 0 {
            return Err(BoundsError::ZeroUniformity);
        }
        let t_big = BigUint::from(t);
        let below = |x: &BoundExpr| x.as_exact().is_some_and(|v| *v < t_big);
        if below(p) || below(q) {
            return Err(BoundsError::BelowBase {
                t,
                p: p.compact(),
                q: q.compact(),
            });
        }
        match t {
            1 => Ok(match (p.as_exact(), q.as_exact()) {
                (Some(a), Some(b)) => self.capped(a + b - 1u32, || SymNode::Pigeonhole {
                    p: p.clone(),
                    q: q.clone(),
                }),
                _ => BoundExpr::sym(SymNode::Pigeonhole {
                    p: p.clone(),
                    q: q.clone(),
                }),
            }),
            2 => Ok(self.binomial(p, q)),
            _ => {
                let unresolved = || {
                    BoundExpr::sym(SymNode::ErdosRadoStep {
                        t,
                        p: p.clone(),
                        q: q.clone(),
                        inner: None,
                    })
                };
                match (p.as_u64(), q.as_u64()) {
                    (Some(pv), Some(qv)) if pv.saturating_mul(qv) <= RECURSION_AREA => {
                        Ok(self.upper_exact_args(t, pv, qv))
                    }
                    (Some(pv), _) if pv == u64::from(t) => Ok(q.clone()),
                    (_, Some(qv)) if qv == u64::from(t) => Ok(p.clone()),
                    _ => Ok(unresolved()),
                }
            }
        }
    }

    /// The `t >= 3` recursion on small exact arguments.
    fn upper_exact_args(&mut self, t: u32, p: u64, q: u64) -> BoundExpr {
        let tt = u64::from(t);
        if p == tt {
            return BoundExpr::exact(q);
        }
        if q == tt {
            return BoundExpr::exact(p);
        }
        let key = (t, p, q);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let a = self.upper_exact_args(t, p - 1, q);
        let b = self.upper_exact_args(t, p, q - 1);
        let inner = self
            .upper(t - 1, &a, &b)
            .expect("recursive arguments are at least t - 1");
        let out = match inner {
            BoundExpr::Exact(v) => {
                let (pa, qa, aa, ba) = (
                    BoundExpr::exact(p),
                    BoundExpr::exact(q),
                    a.clone(),
                    b.clone(),
                );
                self.capped(v + 1u32, move || SymNode::ErdosRadoStep {
                    t,
                    p: pa,
                    q: qa,
                    inner: Some((aa, ba)),
                })
            }
            BoundExpr::Symbolic(_) => BoundExpr::sym(SymNode::ErdosRadoStep {
                t,
                p: BoundExpr::exact(p),
                q: BoundExpr::exact(q),
                inner: Some((a, b)),
            }),
        };
        self.memo.insert(key, out.clone());
        out
    }
}

/// Upper bound for `R^(t)(p, q)` with the default digit cap.
pub fn ramsey_upper(t: u32, p: u64, q: u64) -> Result<BoundExpr, BoundsError> {
    RamseyCalc::default().upper(t, &BoundExpr::exact(p), &BoundExpr::exact(q))
}

/// One step `n_i = R^(u)(n_{i-1})` of the tower, `u = t_i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerEntry {
    pub index: usize,
    pub pattern_len: usize,
    pub uniformity: u32,
    pub value: BoundExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub n0: u64,
    pub entries: Vec<TowerEntry>,
    /// `n5 + 1`.
    pub n: BoundExpr,
}

impl Tower {
    pub fn pattern_lengths(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.pattern_len).collect()
    }
}

/// Evaluates the tower with pattern lengths `(3, 4, 4, 5, 5)`.
pub fn tower(cap_digits: usize) -> Tower {
    let mut calc = RamseyCalc::new(cap_digits);
    let n0 = N0 as u64;
    let mut prev = BoundExpr::exact(n0);
    let mut entries = Vec::with_capacity(5);
    for (i, pattern) in GADGET_PATTERNS.iter().enumerate() {
        let uniformity = pattern.len() as u32 - 1;
        let value = calc
            .upper(uniformity, &prev, &prev)
            .expect("tower arguments exceed uniformity");
        entries.push(TowerEntry {
            index: i + 1,
            pattern_len: pattern.len(),
            uniformity,
            value: value.clone(),
        });
        prev = value;
    }
    let n = match prev {
        BoundExpr::Exact(v) => BoundExpr::Exact(v + 1u32),
        sym => BoundExpr::sym(SymNode::Succ(sym)),
    };
    Tower { n0, entries, n }
}

impl fmt::Display for Tower {
    /// One line per `n_i`; symbolic entries refer to the previous entry by
    /// name instead of repeating its expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lens: Vec<String> = self
            .pattern_lengths()
            .iter()
            .map(usize::to_string)
            .collect();
        writeln!(f, "t = ({})", lens.join(","))?;
        writeln!(f, "n0 = {}", self.n0)?;
        let mut prev_symbolic = false;
        for e in &self.entries {
            let (i, u) = (e.index, e.uniformity);
            match &e.value {
                BoundExpr::Exact(v) => writeln!(f, "n{i} = R^({u})(n{}) <= {v}", i - 1)?,
                BoundExpr::Symbolic(_) if prev_symbolic => writeln!(
                    f,
                    "n{i} = R^({u})(n{prev}) <= R^({u})(n{prev}, n{prev}) [symbolic]",
                    prev = i - 1
                )?,
                sym => writeln!(f, "n{i} = R^({u})(n{}) <= {sym} [symbolic]", i - 1)?,
            }
            prev_symbolic = e.value.is_symbolic();
        }
        match &self.n {
            BoundExpr::Exact(v) => writeln!(f, "n = n5 + 1 = {v}"),
            _ => writeln!(f, "n = n5 + 1 [symbolic]"),
        }
    }
}

/// Hales-Jewett numbers used as known facts: only `HJ(2, r) = r`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HjFacts;

impl HjFacts {
    /// `HJ(k, r)` when it is a stored fact.
    pub fn hj(&self, k: u64, r: u64) -> Option<u64> {
        (k == 2 && r >= 1).then_some(r)
    }

    /// Upper bound on the number of intervals needed for a monochromatic
    /// line in an `r`-colouring of `[3]^n`: `HJ(2, r)`.
    pub fn interval_bound_k3(&self, r: u64) -> Option<u64> {
        self.hj(2, r)
    }
}
