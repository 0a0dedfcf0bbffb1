//! Machine-checkable evidence: monochromatic interval lines and avoiders.
//!
//! The checks in this module deliberately avoid the line enumerators in
//! [`crate::cube`]; they rebuild every interval line from scratch by
//! substituting into words, so a bug in the enumerator cannot hide itself.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cube::{Coloring, IntervalLine, Word};
use crate::error::CubeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate is for n={cert}, colouring has n={coloring}")]
    DimensionMismatch { cert: usize, coloring: usize },
    #[error("witness {index} is {found}, but the line has {expected} there")]
    WitnessOffLine {
        index: usize,
        expected: Word,
        found: Word,
    },
    #[error("witness {index} ({word}) has colour {found}, certificate claims {claimed}")]
    WrongColour {
        index: usize,
        word: Word,
        claimed: u8,
        found: u8,
    },
    #[error("colouring is not an avoider: {line:?} is monochromatic")]
    NotAnAvoider { line: IntervalLine },
    #[error("malformed certificate: {0}")]
    Format(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// A monochromatic interval line together with its three members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCertificate {
    pub line: IntervalLine,
    pub colour: u8,
    pub witnesses: [Word; 3],
}

impl LineCertificate {
    pub fn new(line: IntervalLine, colour: u8) -> Self {
        let witnesses = line.points();
        LineCertificate {
            line,
            colour,
            witnesses,
        }
    }

    pub fn n(&self) -> usize {
        self.line.n()
    }

    /// Re-checks the certificate against `c` without trusting any stored
    /// derived data.
    pub fn verify(&self, c: &Coloring) -> Result<(), CertificateError> {
        if c.n() != self.n() {
            return Err(CertificateError::DimensionMismatch {
                cert: self.n(),
                coloring: c.n(),
            });
        }
        let (lo, hi) = (self.line.lo(), self.line.hi());
        for (idx, wit) in self.witnesses.iter().enumerate() {
            let v = idx as u8 + 1;
            let expected: Vec<u8> = (1..=self.n())
                .map(|i| {
                    if (lo..=hi).contains(&i) {
                        v
                    } else {
                        self.line.template()[i - 1]
                    }
                })
                .collect();
            if wit.letters() != expected.as_slice() {
                return Err(CertificateError::WitnessOffLine {
                    index: idx + 1,
                    expected: Word::new(expected)?,
                    found: wit.clone(),
                });
            }
            let found = c.colour_of(wit)?;
            if found != self.colour {
                return Err(CertificateError::WrongColour {
                    index: idx + 1,
                    word: wit.clone(),
                    claimed: self.colour,
                    found,
                });
            }
        }
        Ok(())
    }
}

/// Output of a line search: a certificate, or a statement that the named
/// method found nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    MonoLine(LineCertificate),
    None { method: String },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::None { method } => writeln!(f, "NONE method={method}"),
            Certificate::MonoLine(cert) => {
                let fixed: Vec<String> = cert
                    .line
                    .fixed()
                    .iter()
                    .map(|(i, l)| format!("{i}:{l}"))
                    .collect();
                writeln!(
                    f,
                    "MONO-LINE n={} color={} active={}..{} fixed={}",
                    cert.n(),
                    cert.colour,
                    cert.line.lo(),
                    cert.line.hi(),
                    fixed.join(",")
                )?;
                for (i, w) in cert.witnesses.iter().enumerate() {
                    writeln!(f, "W{} {}", i + 1, w)?;
                }
                Ok(())
            }
        }
    }
}

fn field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str, CertificateError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| CertificateError::Format(format!("expected `{key}=`")))
}

fn number(s: &str, what: &str) -> Result<usize, CertificateError> {
    s.parse()
        .map_err(|_| CertificateError::Format(format!("bad {what}: {s:?}")))
}

impl Certificate {
    /// Parses the text produced by `Display`. Structural only: call
    /// [`LineCertificate::verify`] to check it against a colouring.
    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut lines = text.lines();
        let head = lines
            .next()
            .ok_or_else(|| CertificateError::Format("empty certificate".into()))?;
        let mut tok = head.split(' ');
        match tok.next() {
            Some("NONE") => {
                let method = field(tok.next(), "method")?.to_string();
                if tok.next().is_some() || lines.next().is_some() {
                    return Err(CertificateError::Format("trailing data after NONE".into()));
                }
                Ok(Certificate::None { method })
            }
            Some("MONO-LINE") => {
                let n = number(field(tok.next(), "n")?, "n")?;
                let colour = match field(tok.next(), "color")? {
                    "0" => 0,
                    "1" => 1,
                    other => return Err(CertificateError::Format(format!("bad color {other:?}"))),
                };
                let active = field(tok.next(), "active")?;
                let (lo, hi) = active
                    .split_once("..")
                    .ok_or_else(|| CertificateError::Format(format!("bad active {active:?}")))?;
                let (lo, hi) = (number(lo, "lo")?, number(hi, "hi")?);
                let fixed_str = field(tok.next(), "fixed")?;
                if tok.next().is_some() {
                    return Err(CertificateError::Format("trailing header fields".into()));
                }
                let mut fixed = BTreeMap::new();
                if !fixed_str.is_empty() {
                    for item in fixed_str.split(',') {
                        let (pos, letter) = item.split_once(':').ok_or_else(|| {
                            CertificateError::Format(format!("bad fixed entry {item:?}"))
                        })?;
                        let letter = number(letter, "letter")?;
                        if letter > 3 {
                            return Err(CertificateError::Cube(CubeError::BadLetter(letter as u8)));
                        }
                        fixed.insert(number(pos, "position")?, letter as u8);
                    }
                }
                let line = IntervalLine::new(n, lo, hi, &fixed)?;
                let mut witnesses = Vec::with_capacity(3);
                for k in 1..=3 {
                    let row = lines
                        .next()
                        .ok_or_else(|| CertificateError::Format(format!("missing W{k}")))?;
                    let word = row.strip_prefix(&format!("W{k} ")).ok_or_else(|| {
                        CertificateError::Format(format!("expected `W{k} <word>`"))
                    })?;
                    witnesses.push(word.parse::<Word>()?);
                }
                if lines.next().is_some() {
                    return Err(CertificateError::Format("trailing lines".into()));
                }
                let witnesses: [Word; 3] = witnesses.try_into().expect("three witnesses");
                Ok(Certificate::MonoLine(LineCertificate {
                    line,
                    colour,
                    witnesses,
                }))
            }
            _ => Err(CertificateError::Format(format!("unknown header {head:?}"))),
        }
    }
}

/// Scans every interval line of `c` by direct substitution and returns the
/// first monochromatic one as `(lo, hi, member ranks)`.
///
/// Visits `lo`, `hi`, then base words in rank order; shares no code with
/// the enumerators.
pub fn naive_mono_interval_line(c: &Coloring) -> Option<(usize, usize, [usize; 3])> {
    let n = c.n();
    let place = |i: usize| 3usize.pow((n - i) as u32);
    for lo in 1..=n {
        for hi in lo..=n {
            let step: usize = (lo..=hi).map(place).sum();
            for base in 0..c.len() {
                let word = Word::unrank(base, n).expect("rank in range");
                if (lo..=hi).any(|i| word.letter(i) != 1) {
                    continue;
                }
                let ranks = [base, base + step, base + 2 * step];
                let col = c.get(ranks[0]);
                if c.get(ranks[1]) == col && c.get(ranks[2]) == col {
                    return Some((lo, hi, ranks));
                }
            }
        }
    }
    None
}

/// Number of monochromatic interval lines, counted by direct substitution.
pub fn naive_violation_count(c: &Coloring) -> usize {
    let n = c.n();
    let place = |i: usize| 3usize.pow((n - i) as u32);
    let mut count = 0;
    for lo in 1..=n {
        for hi in lo..=n {
            let step: usize = (lo..=hi).map(place).sum();
            for base in 0..c.len() {
                let word = Word::unrank(base, n).expect("rank in range");
                if (lo..=hi).all(|i| word.letter(i) == 1) {
                    let col = c.get(base);
                    if c.get(base + step) == col && c.get(base + 2 * step) == col {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Confirms that `c` has no monochromatic interval line.
pub fn verify_avoider(c: &Coloring) -> Result<(), CertificateError> {
    match naive_mono_interval_line(c) {
        None => Ok(()),
        Some((lo, hi, [base, _, _])) => {
            let word = Word::unrank(base, c.n())?;
            let fixed: BTreeMap<usize, u8> = (1..=c.n())
                .filter(|i| !(lo..=hi).contains(i))
                .map(|i| (i, word.letter(i)))
                .collect();
            Err(CertificateError::NotAnAvoider {
                line: IntervalLine::new(c.n(), lo, hi, &fixed)?,
            })
        }
    }
}
