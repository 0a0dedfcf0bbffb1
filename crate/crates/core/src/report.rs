//! Line-oriented `key=value` reports. The first line is always
//! `report=<kind>`; rendering is deterministic (timings are left out).

use std::fmt;

use thiserror::Error;

use crate::bounds::{BoundExpr, Tower};
use crate::certificate::LineCertificate;
use crate::cnf::SolveResult;
use crate::gadgets::{CaseTable, GadgetLine, Method};
use crate::search::{Outcome, SearchReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("report is empty")]
    Empty,
    #[error("first line must be report=<kind>, got {0:?}")]
    MissingKind(String),
    #[error("unknown report type {0:?}")]
    UnknownKind(String),
    #[error("line {line}: expected key=value, got {text:?}")]
    Malformed { line: usize, text: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportKind {
    VerifyGadgets,
    FindLine,
    Search,
    Encode,
    Solve,
    Bound,
    Gen,
}

impl ReportKind {
    pub const ALL: [ReportKind; 7] = [
        ReportKind::VerifyGadgets,
        ReportKind::FindLine,
        ReportKind::Search,
        ReportKind::Encode,
        ReportKind::Solve,
        ReportKind::Bound,
        ReportKind::Gen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ReportKind::VerifyGadgets => "verify-gadgets",
            ReportKind::FindLine => "find-line",
            ReportKind::Search => "search",
            ReportKind::Encode => "encode",
            ReportKind::Solve => "solve",
            ReportKind::Bound => "bound",
            ReportKind::Gen => "gen",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct GadgetReport {
    pub n: usize,
    /// Number of quadruples whose five lines were checked.
    pub quadruples: usize,
    /// Lines of a single quadruple, listed in full.
    pub detail: Option<([usize; 4], Vec<GadgetLine>)>,
    pub cases: CaseTable,
}

#[derive(Clone, Debug)]
pub struct FindLineReport {
    pub n: usize,
    pub method: Method,
    pub certificate: Option<LineCertificate>,
}

impl FindLineReport {
    /// A found line is always definitive; absence only for the direct scan.
    pub fn definitive(&self) -> bool {
        self.certificate.is_some() || self.method == Method::Direct
    }
}

#[derive(Clone, Debug)]
pub struct EncodeReport {
    pub n: usize,
    pub m: usize,
    pub symmetry_break: bool,
    pub lines: usize,
    pub variables: usize,
    pub clauses: usize,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solver: String,
    /// `(n, m)` when the instance carried an encoding comment.
    pub encoding: Option<(usize, usize)>,
    pub result: SolveResult,
    /// Set when a model was decoded into a verified avoider.
    pub avoider: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub cap_digits: usize,
    pub tower: Tower,
}

#[derive(Clone, Debug)]
pub struct GenReport {
    pub n: usize,
    pub kind: String,
    pub params: Vec<(String, String)>,
    pub ones: usize,
    pub cells: usize,
}

#[derive(Clone, Debug)]
pub enum Report {
    VerifyGadgets(GadgetReport),
    FindLine(FindLineReport),
    Search(SearchReport),
    Encode(EncodeReport),
    Solve(SolveReport),
    Bound(BoundReport),
    Gen(GenReport),
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn cert_fields(out: &mut Vec<(String, String)>, cert: &LineCertificate) {
    let fixed: Vec<String> = cert
        .line
        .fixed()
        .iter()
        .map(|(p, l)| format!("{p}:{l}"))
        .collect();
    out.push((
        "line.active".into(),
        format!("{}..{}", cert.line.lo(), cert.line.hi()),
    ));
    out.push((
        "line.fixed".into(),
        if fixed.is_empty() {
            "-".into()
        } else {
            fixed.join(",")
        },
    ));
    out.push(("line.colour".into(), cert.colour.to_string()));
    let words: Vec<String> = cert.witnesses.iter().map(ToString::to_string).collect();
    out.push(("line.points".into(), words.join(",")));
}

fn bound_value(e: &BoundExpr) -> String {
    e.to_string()
}

impl Report {
    pub fn kind(&self) -> ReportKind {
        match self {
            Report::VerifyGadgets(_) => ReportKind::VerifyGadgets,
            Report::FindLine(_) => ReportKind::FindLine,
            Report::Search(_) => ReportKind::Search,
            Report::Encode(_) => ReportKind::Encode,
            Report::Solve(_) => ReportKind::Solve,
            Report::Bound(_) => ReportKind::Bound,
            Report::Gen(_) => ReportKind::Gen,
        }
    }

    /// The report as ordered `(key, value)` pairs, `report` first.
    pub fn fields(&self) -> Vec<(String, String)> {
        let mut f: Vec<(String, String)> = vec![("report".into(), self.kind().name().into())];
        let mut kv = |k: &str, v: String| f.push((k.to_string(), v));
        match self {
            Report::VerifyGadgets(r) => {
                kv("n", r.n.to_string());
                kv("quadruples", r.quadruples.to_string());
                kv("lines_verified", (5 * r.quadruples).to_string());
                if let Some((a, lines)) = &r.detail {
                    kv("quadruple", a.map(|x| x.to_string()).join(","));
                    for gl in lines {
                        let members: Vec<String> =
                            gl.members.iter().map(ToString::to_string).collect();
                        kv(
                            &format!("L{}", gl.index),
                            format!(
                                "active={}..{} points={}",
                                gl.line.lo(),
                                gl.line.hi(),
                                members.join(",")
                            ),
                        );
                    }
                }
                for (d, i) in &r.cases.rows {
                    kv(&format!("case.{d}"), format!("N{i}"));
                }
                for i in 1..=5 {
                    kv(
                        &format!("cases_with_N{i}"),
                        r.cases.count_with_index(i).to_string(),
                    );
                }
            }
            Report::FindLine(r) => {
                kv("n", r.n.to_string());
                kv("method", r.method.name().into());
                kv(
                    "result",
                    if r.certificate.is_some() {
                        "found"
                    } else {
                        "not-found"
                    }
                    .into(),
                );
                kv("definitive", yes_no(r.definitive()).into());
                if let Some(cert) = &r.certificate {
                    cert_fields(&mut f, cert);
                }
            }
            Report::Search(r) => {
                kv("n", r.n.to_string());
                kv("mode", r.mode.name().into());
                kv("outcome", r.outcome.name().into());
                kv("symmetry", yes_no(r.symmetry).into());
                kv("seed", opt(r.seed));
                kv("budget", opt(r.budget));
                kv("nodes", r.stats.nodes.to_string());
                kv("line_prunes", r.stats.line_prunes.to_string());
                kv("symmetry_prunes", r.stats.symmetry_prunes.to_string());
                kv("flips", r.stats.flips.to_string());
                kv("restarts", r.stats.restarts.to_string());
                match &r.outcome {
                    Outcome::AvoiderFound(c) => kv("avoider", c.bitstring()),
                    Outcome::Inconclusive { best_count, best } => {
                        kv("best_violations", best_count.to_string());
                        kv("best", best.bitstring());
                    }
                    Outcome::Refuted => {}
                }
            }
            Report::Encode(r) => {
                kv("n", r.n.to_string());
                kv("max_intervals", r.m.to_string());
                kv("sym_break", yes_no(r.symmetry_break).into());
                kv("lines", r.lines.to_string());
                kv("variables", r.variables.to_string());
                kv("clauses", r.clauses.to_string());
            }
            Report::Solve(r) => {
                kv("solver", r.solver.clone());
                if let Some((n, m)) = r.encoding {
                    kv("n", n.to_string());
                    kv("max_intervals", m.to_string());
                }
                kv("status", r.result.name().into());
                if let SolveResult::Unknown(msg) = &r.result {
                    kv("diagnostic", msg.replace('\n', " "));
                }
                if let Some(a) = &r.avoider {
                    kv("avoider", a.clone());
                    kv("verified", "yes".into());
                }
            }
            Report::Bound(r) => {
                kv("cap_digits", r.cap_digits.to_string());
                let lens: Vec<String> = r
                    .tower
                    .pattern_lengths()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                kv("t", format!("({})", lens.join(",")));
                kv("n0", r.tower.n0.to_string());
                let mut prev_symbolic = false;
                let mut symbolic = Vec::new();
                for e in &r.tower.entries {
                    let key = format!("n{}", e.index);
                    let value = if e.value.is_symbolic() && prev_symbolic {
                        format!("R^({u})(n{p}, n{p})", u = e.uniformity, p = e.index - 1)
                    } else {
                        bound_value(&e.value)
                    };
                    if e.value.is_symbolic() {
                        symbolic.push(key.clone());
                    }
                    kv(&key, value);
                    prev_symbolic = e.value.is_symbolic();
                }
                if r.tower.n.is_symbolic() {
                    symbolic.push("n".into());
                    kv("n", "n5 + 1".into());
                } else {
                    kv("n", bound_value(&r.tower.n));
                }
                kv(
                    "symbolic",
                    if symbolic.is_empty() {
                        "-".into()
                    } else {
                        symbolic.join(",")
                    },
                );
            }
            Report::Gen(r) => {
                kv("n", r.n.to_string());
                kv("kind", r.kind.clone());
                for (k, v) in &r.params {
                    kv(k, v.clone());
                }
                kv("cells", r.cells.to_string());
                kv("ones", r.ones.to_string());
            }
        }
        f
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// A report read back from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedReport {
    pub kind: ReportKind,
    pub fields: Vec<(String, String)>,
}

impl ParsedReport {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn parse_report(text: &str) -> Result<ParsedReport, ReportError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(ReportError::Empty)?;
    let kind_name = first
        .strip_prefix("report=")
        .ok_or_else(|| ReportError::MissingKind(first.to_string()))?;
    let kind = ReportKind::from_name(kind_name)
        .ok_or_else(|| ReportError::UnknownKind(kind_name.to_string()))?;
    let mut fields = vec![("report".to_string(), kind_name.to_string())];
    for (i, l) in lines {
        let (k, v) = l.split_once('=').ok_or_else(|| ReportError::Malformed {
            line: i + 1,
            text: l.to_string(),
        })?;
        fields.push((k.to_string(), v.to_string()));
    }
    Ok(ParsedReport { kind, fields })
}
