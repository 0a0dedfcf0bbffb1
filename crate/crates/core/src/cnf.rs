//! CNF encoding of "some 2-colouring of `[3]^n` avoids monochromatic
//! m-interval lines", DIMACS I/O, and solver drivers.
//!
//! Variable `rank + 1` is true when the cell with that rank has colour 1.
//! Each line contributes `(p | q | r)` and `(-p | -q | -r)`.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cube::{cube_size, enumerate_m_interval_lines, Coloring, Line};
use crate::error::CubeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("need n >= 1 and 1 <= m <= n, got n={n}, m={m}")]
    BadParameters { n: usize, m: usize },
    #[error("malformed DIMACS at line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("model assigns {assigned} of {expected} variables")]
    IncompleteModel { assigned: usize, expected: usize },
    #[error("decoded colouring has a monochromatic line {line:?}; the encoder is wrong")]
    VerificationFailed { line: Line },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// Why a clause is in the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Line(Line),
    SymmetryBreak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub n: usize,
    pub m: usize,
    pub symmetry_break: bool,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// One entry per clause.
    pub provenance: Vec<Provenance>,
}

impl CnfInstance {
    pub fn line_count(&self) -> usize {
        self.provenance
            .iter()
            .filter(|p| matches!(p, Provenance::Line(_)))
            .count()
            / 2
    }
}

/// Encodes avoidance of every line whose active set is a union of at most
/// `m` intervals. `symmetry_break` adds the unit clause fixing cell 0 to
/// colour 0, which is sound because swapping colours maps avoiders to
/// avoiders.
pub fn encode(n: usize, m: usize, symmetry_break: bool) -> Result<CnfInstance, CnfError> {
    if n == 0 || m == 0 || m > n {
        return Err(CnfError::BadParameters { n, m });
    }
    let num_vars = cube_size(n)?;
    let mut clauses = Vec::new();
    let mut provenance = Vec::new();
    for line in enumerate_m_interval_lines(n, m) {
        let [p, q, r] = line.point_ranks().map(|x| x as i32 + 1);
        clauses.push(vec![p, q, r]);
        clauses.push(vec![-p, -q, -r]);
        provenance.push(Provenance::Line(line.clone()));
        provenance.push(Provenance::Line(line));
    }
    if symmetry_break {
        clauses.push(vec![-1]);
        provenance.push(Provenance::SymmetryBreak);
    }
    Ok(CnfInstance {
        n,
        m,
        symmetry_break,
        num_vars,
        clauses,
        provenance,
    })
}

fn describe_line(line: &Line) -> String {
    let active: Vec<String> = line
        .active_intervals()
        .iter()
        .map(|(lo, hi)| format!("{lo}..{hi}"))
        .collect();
    let fixed: Vec<String> = line
        .fixed()
        .iter()
        .map(|(i, l)| format!("{i}:{l}"))
        .collect();
    let fixed = if fixed.is_empty() {
        "-".to_string()
    } else {
        fixed.join(",")
    };
    format!("{} {}", active.join(","), fixed)
}

fn push_clause(out: &mut String, clause: &[i32]) {
    for lit in clause {
        let _ = write!(out, "{lit} ");
    }
    out.push_str("0\n");
}

/// Standard DIMACS CNF. A `c line` comment precedes the two clauses of each
/// line; the first comment records the encoding parameters.
pub fn write_dimacs(inst: &CnfInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "c hjlab interval-avoider n={} m={} sym-break={}",
        inst.n,
        inst.m,
        u8::from(inst.symmetry_break)
    );
    let _ = writeln!(out, "p cnf {} {}", inst.num_vars, inst.clauses.len());
    let mut k = 0;
    while k < inst.clauses.len() {
        match &inst.provenance[k] {
            Provenance::Line(line) => {
                let _ = writeln!(out, "c line {}", describe_line(line));
                push_clause(&mut out, &inst.clauses[k]);
                push_clause(&mut out, &inst.clauses[k + 1]);
                k += 2;
            }
            Provenance::SymmetryBreak => {
                out.push_str("c symmetry-break cell 0 colour 0\n");
                push_clause(&mut out, &inst.clauses[k]);
                k += 1;
            }
        }
    }
    out
}

/// Encoding parameters recovered from the `c hjlab` comment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingInfo {
    pub n: usize,
    pub m: usize,
    pub symmetry_break: bool,
}

/// A parsed DIMACS file. Comments other than the encoding tag are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimacs {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub info: Option<EncodingInfo>,
}

fn parse_info(comment: &str) -> Option<EncodingInfo> {
    let rest = comment.strip_prefix("c hjlab interval-avoider ")?;
    let mut n = None;
    let mut m = None;
    let mut sb = None;
    for tok in rest.split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        match k {
            "n" => n = v.parse().ok(),
            "m" => m = v.parse().ok(),
            "sym-break" => sb = Some(v == "1"),
            _ => {}
        }
    }
    Some(EncodingInfo {
        n: n?,
        m: m?,
        symmetry_break: sb?,
    })
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs, CnfError> {
    let err = |line: usize, msg: &str| CnfError::Dimacs {
        line,
        msg: msg.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut info = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('c') {
            if info.is_none() {
                info = parse_info(line);
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            if header.is_some() {
                return Err(err(lineno, "duplicate header"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(lineno, "bad variable count"))?;
                    let c = c.parse().map_err(|_| err(lineno, "bad clause count"))?;
                    header = Some((v, c));
                }
                _ => return Err(err(lineno, "header must be `p cnf <vars> <clauses>`")),
            }
            continue;
        }
        let (vars, _) = header.ok_or_else(|| err(lineno, "clause before header"))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(lineno, "bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(err(lineno, "literal exceeds variable count"));
                }
                current.push(lit);
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| err(0, "missing header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(err(
            0,
            &format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    Ok(Dimacs {
        num_vars,
        clauses,
        info,
    })
}

/// A (possibly partial) assignment; index `v - 1` holds variable `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model(pub Vec<Option<bool>>);

impl Model {
    pub fn total(values: Vec<bool>) -> Self {
        Model(values.into_iter().map(Some).collect())
    }

    pub fn satisfies(&self, clauses: &[Vec<i32>]) -> bool {
        clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                self.0
                    .get(lit.unsigned_abs() as usize - 1)
                    .copied()
                    .flatten()
                    == Some(lit > 0)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Model),
    Unsat,
    /// Timeout, crash, or output that could not be parsed.
    Unknown(String),
}

impl SolveResult {
    pub fn name(&self) -> &'static str {
        match self {
            SolveResult::Sat(_) => "SAT",
            SolveResult::Unsat => "UNSAT",
            SolveResult::Unknown(_) => "UNKNOWN",
        }
    }
}

/// Reads `s ...` and `v ...` lines of a solver transcript.
pub fn parse_solver_output(stdout: &str, num_vars: usize) -> SolveResult {
    let mut status = None;
    let mut values = vec![None; num_vars];
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_string());
        } else if let Some(v) = line.strip_prefix("v ") {
            for tok in v.split_whitespace() {
                let Ok(lit) = tok.parse::<i64>() else {
                    return SolveResult::Unknown(format!("unparsable literal {tok:?}"));
                };
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var > num_vars {
                    return SolveResult::Unknown(format!(
                        "literal {lit} exceeds {num_vars} variables"
                    ));
                }
                values[var - 1] = Some(lit > 0);
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => SolveResult::Sat(Model(values)),
        Some("UNSATISFIABLE") => SolveResult::Unsat,
        Some(other) => SolveResult::Unknown(format!("solver status {other:?}")),
        None => SolveResult::Unknown("no `s` line in solver output".into()),
    }
}

fn drain<R: Read + Send + 'static>(mut r: R) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = r.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    })
}

/// Runs an external solver on `dimacs`.
///
/// `command` is split on whitespace; the path of a temporary CNF file is
/// appended as the last argument. Any failure (spawn error, timeout,
/// signal, unparsable output) becomes [`SolveResult::Unknown`].
pub fn run_solver(dimacs: &str, command: &str, timeout: Option<Duration>) -> SolveResult {
    let num_vars = match parse_dimacs(dimacs) {
        Ok(d) => d.num_vars,
        Err(e) => return SolveResult::Unknown(format!("invalid input: {e}")),
    };
    let mut parts = command.split_whitespace();
    let Some(program) = parts.next() else {
        return SolveResult::Unknown("empty solver command".into());
    };
    let mut file = match tempfile::Builder::new().suffix(".cnf").tempfile() {
        Ok(f) => f,
        Err(e) => return SolveResult::Unknown(format!("temp file: {e}")),
    };
    if let Err(e) = file.write_all(dimacs.as_bytes()).and_then(|_| file.flush()) {
        return SolveResult::Unknown(format!("writing temp file: {e}"));
    }
    let mut child = match Command::new(program)
        .args(parts)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return SolveResult::Unknown(format!("cannot start {program:?}: {e}")),
    };
    let out = drain(child.stdout.take().expect("piped stdout"));
    let err = drain(child.stderr.take().expect("piped stderr"));
    let start = Instant::now();
    let status = loop {
        match child.try_wait() {
            Ok(Some(st)) => break st,
            Ok(None) => {}
            Err(e) => return SolveResult::Unknown(format!("waiting for solver: {e}")),
        }
        if timeout.is_some_and(|t| start.elapsed() >= t) {
            let _ = child.kill();
            let _ = child.wait();
            return SolveResult::Unknown(format!(
                "timeout after {:.1}s",
                timeout.unwrap_or_default().as_secs_f64()
            ));
        }
        thread::sleep(Duration::from_millis(5));
    };
    let stdout = out.join().unwrap_or_default();
    let stderr = err.join().unwrap_or_default();
    if status.code().is_none() {
        return SolveResult::Unknown(format!(
            "solver terminated by signal ({status}); stderr: {}",
            stderr.trim()
        ));
    }
    match parse_solver_output(&stdout, num_vars) {
        SolveResult::Unknown(msg) => {
            SolveResult::Unknown(format!("{msg} (exit {status}); stderr: {}", stderr.trim()))
        }
        other => other,
    }
}

/// DPLL with unit propagation, branching on the lowest-index unassigned
/// variable (false first). Intended for the small instances of `n <= 4`.
pub fn solve_builtin(d: &Dimacs) -> SolveResult {
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); d.num_vars];
    for (k, cl) in d.clauses.iter().enumerate() {
        if cl.is_empty() {
            return SolveResult::Unsat;
        }
        for &lit in cl {
            occurs[lit.unsigned_abs() as usize - 1].push(k);
        }
    }
    let mut s = Dpll {
        clauses: &d.clauses,
        occurs,
        value: vec![None; d.num_vars],
        trail: Vec::new(),
    };
    let units: Vec<i32> = d
        .clauses
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| c[0])
        .collect();
    for u in units {
        if !s.assign_and_propagate(u) {
            return SolveResult::Unsat;
        }
    }
    // Clauses with no unassigned literal left must already be satisfied.
    if d.clauses
        .iter()
        .any(|cl| s.clause_state(cl) == ClauseState::Conflict)
    {
        return SolveResult::Unsat;
    }
    if s.search() {
        SolveResult::Sat(Model::total(
            s.value.iter().map(|v| v.unwrap_or(false)).collect(),
        ))
    } else {
        SolveResult::Unsat
    }
}

#[derive(PartialEq, Eq)]
enum ClauseState {
    Satisfied,
    Unit(i32),
    Conflict,
    Open,
}

struct Dpll<'a> {
    clauses: &'a [Vec<i32>],
    occurs: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl Dpll<'_> {
    fn lit_value(&self, lit: i32) -> Option<bool> {
        self.value[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
    }

    fn clause_state(&self, cl: &[i32]) -> ClauseState {
        let mut unassigned = None;
        let mut open = 0;
        for &lit in cl {
            match self.lit_value(lit) {
                Some(true) => return ClauseState::Satisfied,
                Some(false) => {}
                None => {
                    open += 1;
                    unassigned = Some(lit);
                }
            }
        }
        match open {
            0 => ClauseState::Conflict,
            1 => ClauseState::Unit(unassigned.expect("one open literal")),
            _ => ClauseState::Open,
        }
    }

    /// Sets `lit` true and propagates; false on conflict.
    fn assign_and_propagate(&mut self, lit: i32) -> bool {
        match self.lit_value(lit) {
            Some(true) => return true,
            Some(false) => return false,
            None => {}
        }
        let mut queue = vec![lit];
        while let Some(l) = queue.pop() {
            match self.lit_value(l) {
                Some(true) => continue,
                Some(false) => return false,
                None => {}
            }
            let var = l.unsigned_abs() as usize - 1;
            self.value[var] = Some(l > 0);
            self.trail.push(var);
            for &k in &self.occurs[var] {
                match self.clause_state(&self.clauses[k]) {
                    ClauseState::Conflict => return false,
                    ClauseState::Unit(u) => queue.push(u),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let var = self.trail.pop().expect("trail nonempty");
            self.value[var] = None;
        }
    }

    fn search(&mut self) -> bool {
        let Some(var) = self.value.iter().position(Option::is_none) else {
            return true;
        };
        let v = var as i32 + 1;
        for lit in [-v, v] {
            let mark = self.trail.len();
            if self.assign_and_propagate(lit) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Writes a solver transcript (`s` line plus `v` lines) for `result`.
pub fn format_solver_output(result: &SolveResult) -> String {
    match result {
        SolveResult::Unsat => "s UNSATISFIABLE\n".to_string(),
        SolveResult::Unknown(_) => "s UNKNOWN\n".to_string(),
        SolveResult::Sat(Model(values)) => {
            let mut out = String::from("s SATISFIABLE\n");
            let lits: Vec<String> = values
                .iter()
                .enumerate()
                .filter_map(|(i, v)| {
                    v.map(|b| {
                        if b {
                            format!("{}", i + 1)
                        } else {
                            format!("-{}", i + 1)
                        }
                    })
                })
                .collect();
            for chunk in lits.chunks(16) {
                let _ = writeln!(out, "v {} ", chunk.join(" "));
            }
            out.push_str("v 0\n");
            out
        }
    }
}

/// Colouring with `c(unrank(i)) = model[i + 1]`, checked to have no
/// monochromatic line with at most `m` active intervals.
pub fn decode_model(model: &Model, n: usize, m: usize) -> Result<Coloring, CnfError> {
    let size = cube_size(n)?;
    let assigned = model.0.iter().take(size).filter(|v| v.is_some()).count();
    if model.0.len() < size || assigned < size {
        return Err(CnfError::IncompleteModel {
            assigned,
            expected: size,
        });
    }
    let colours: Vec<u8> = model.0[..size]
        .iter()
        .map(|v| u8::from(v.expect("checked")))
        .collect();
    let c = Coloring::from_colours(n, &colours)?;
    for line in enumerate_m_interval_lines(n, m) {
        let [p, q, r] = line.point_ranks();
        if c.get(p) == c.get(q) && c.get(q) == c.get(r) {
            return Err(CnfError::VerificationFailed { line });
        }
    }
    if m == 1 {
        if let Err(crate::certificate::CertificateError::NotAnAvoider { line }) =
            crate::certificate::verify_avoider(&c)
        {
            return Err(CnfError::VerificationFailed {
                line: line.into_line(),
            });
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::enumerate_interval_lines;
    use crate::search::violation_count;

    #[test]
    fn encode_sizes() {
        let i = encode(2, 1, false).unwrap();
        assert_eq!((i.num_vars, i.clauses.len()), (9, 14));
        assert_eq!(encode(2, 1, true).unwrap().clauses.len(), 15);
        let i = encode(3, 1, false).unwrap();
        assert_eq!((i.num_vars, i.clauses.len()), (27, 68));
        let i = encode(1, 1, false).unwrap();
        assert_eq!((i.num_vars, i.clauses.len()), (3, 2));
        assert_eq!(i.clauses, vec![vec![1, 2, 3], vec![-1, -2, -3]]);
        assert!(encode(3, 4, false).is_err());
        assert!(encode(0, 1, false).is_err());
    }

    #[test]
    fn clause_count_tracks_line_count() {
        for n in 1..=4 {
            for m in 1..=n {
                let lines = enumerate_m_interval_lines(n, m).count();
                for sb in [false, true] {
                    let inst = encode(n, m, sb).unwrap();
                    assert_eq!(inst.clauses.len(), 2 * lines + usize::from(sb));
                    assert_eq!(inst.line_count(), lines);
                }
            }
        }
    }

    #[test]
    fn dimacs_header_and_determinism() {
        let text = write_dimacs(&encode(1, 1, false).unwrap());
        assert_eq!(
            text,
            "c hjlab interval-avoider n=1 m=1 sym-break=0\np cnf 3 2\nc line 1..1 -\n1 2 3 0\n-1 -2 -3 0\n"
        );
        let a = write_dimacs(&encode(2, 1, false).unwrap());
        assert!(a.lines().any(|l| l == "p cnf 9 14"));
        assert_eq!(a, write_dimacs(&encode(2, 1, false).unwrap()));
        let sb = write_dimacs(&encode(2, 2, true).unwrap());
        assert!(sb.ends_with("c symmetry-break cell 0 colour 0\n-1 0\n"));
        assert!(sb.contains("c line 1..1 2:1\n"));
    }

    #[test]
    fn dimacs_round_trip() {
        let inst = encode(3, 2, true).unwrap();
        let d = parse_dimacs(&write_dimacs(&inst)).unwrap();
        assert_eq!(d.num_vars, inst.num_vars);
        assert_eq!(d.clauses, inst.clauses);
        assert_eq!(
            d.info,
            Some(EncodingInfo {
                n: 3,
                m: 2,
                symmetry_break: true
            })
        );
    }

    #[test]
    fn dimacs_parse_errors() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
        assert!(parse_dimacs("p dnf 2 1\n1 0\n").is_err());
        assert!(parse_dimacs("").is_err());
    }

    #[test]
    fn builtin_solver_basics() {
        let unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(solve_builtin(&unsat), SolveResult::Unsat);
        let d = parse_dimacs(&write_dimacs(&encode(2, 1, false).unwrap())).unwrap();
        match solve_builtin(&d) {
            SolveResult::Sat(m) => {
                assert!(m.satisfies(&d.clauses));
                let c = decode_model(&m, 2, 1).unwrap();
                assert_eq!(violation_count(&c), 0);
            }
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn builtin_solver_matches_brute_force_on_small_formulas() {
        // Every 3-clause formula over 4 variables from a fixed pool.
        let pool: Vec<Vec<i32>> = vec![
            vec![1, 2],
            vec![-1, 3],
            vec![-2, -3],
            vec![2, 4],
            vec![-4, 1],
            vec![-1, -4],
            vec![3, -2],
            vec![-3, 4],
        ];
        for mask in 0u32..256 {
            let clauses: Vec<Vec<i32>> = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c.clone())
                .collect();
            let d = Dimacs {
                num_vars: 4,
                clauses: clauses.clone(),
                info: None,
            };
            let brute = (0u32..16).any(|a| {
                Model::total((0..4).map(|i| a & (1 << i) != 0).collect()).satisfies(&clauses)
            });
            match solve_builtin(&d) {
                SolveResult::Sat(m) => {
                    assert!(brute);
                    assert!(m.satisfies(&clauses));
                }
                SolveResult::Unsat => assert!(!brute, "mask {mask}"),
                SolveResult::Unknown(_) => unreachable!(),
            }
        }
    }

    #[test]
    fn solver_output_parsing() {
        let r = parse_solver_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3);
        assert_eq!(
            r,
            SolveResult::Sat(Model(vec![Some(true), Some(false), Some(true)]))
        );
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n", 3),
            SolveResult::Unsat
        );
        assert!(matches!(
            parse_solver_output("", 3),
            SolveResult::Unknown(_)
        ));
        assert!(matches!(
            parse_solver_output("s SATISFIABLE\nv 9 0\n", 3),
            SolveResult::Unknown(_)
        ));
        let m = SolveResult::Sat(Model::total(vec![true, false, true]));
        assert_eq!(parse_solver_output(&format_solver_output(&m), 3), m);
    }

    #[test]
    fn decode_rejects_bad_models() {
        let all_true = Model::total(vec![true; 3]);
        assert!(matches!(
            decode_model(&all_true, 1, 1),
            Err(CnfError::VerificationFailed { .. })
        ));
        let partial = Model(vec![Some(true), None, Some(false)]);
        assert_eq!(
            decode_model(&partial, 1, 1),
            Err(CnfError::IncompleteModel {
                assigned: 2,
                expected: 3
            })
        );
        let ok = Model::total(vec![false, false, true]);
        assert_eq!(decode_model(&ok, 1, 1).unwrap().bitstring(), "001");
    }

    #[test]
    fn corrupted_instance_is_caught_by_decode() {
        // Replace the first line's clauses with units forcing it to colour 0.
        let mut inst = encode(2, 1, false).unwrap();
        let first = enumerate_interval_lines(2).next().unwrap();
        let [p, q, r] = first.point_ranks().map(|x| x as i32 + 1);
        inst.clauses[0] = vec![-p];
        inst.clauses[1] = vec![-q];
        inst.clauses.push(vec![-r]);
        inst.provenance.push(Provenance::SymmetryBreak);
        let d = Dimacs {
            num_vars: 9,
            clauses: inst.clauses,
            info: None,
        };
        match solve_builtin(&d) {
            SolveResult::Sat(m) => match decode_model(&m, 2, 1) {
                Err(CnfError::VerificationFailed { line }) => assert_eq!(&line, first.line()),
                other => panic!("expected verification failure, got {other:?}"),
            },
            other => panic!("expected SAT, got {other:?}"),
        }
    }
}
