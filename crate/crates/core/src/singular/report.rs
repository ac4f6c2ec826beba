//! Verdicts and evidence produced by the theorem checkers.

use std::fmt;

/// Outcome of a check or of one of its conditions. Ordered from best to
/// worst so that the overall verdict is the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence attached to a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An F_p-rational point, with the names of its coordinates.
    Point { prime: u64, variables: Vec<String>, coordinates: Vec<u64> },
    /// The variable certifying a term in the syntactic criterion.
    Variable { term: String, variable: String, exponent: u32 },
    /// A term for which no certifying variable exists.
    Term { term: String },
    /// A variable dividing every generator of the center.
    Divisor { variable: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub id: String,
    /// The hypothesis being tested, as a short formula.
    pub clause: String,
    pub status: Verdict,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Condition {
    pub fn new(id: impl Into<String>, clause: impl Into<String>, status: Verdict) -> Self {
        Condition { id: id.into(), clause: clause.into(), status, witness: None, note: None }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// Which checker produced the report: res, res2, A, AQ, order or verify.
    pub check: String,
    pub verdict: Verdict,
    pub characteristic: Option<u64>,
    pub conditions: Vec<Condition>,
    pub primes: Vec<u64>,
    pub points_tested: u64,
    pub notes: Vec<String>,
}

/// Note carried by every brute-force report.
pub const PROXY_NOTE: &str = "rational-point proxy: a pass means no counterexample at the F_p points tested";

impl CheckReport {
    pub(crate) fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            verdict: Verdict::Pass,
            characteristic: None,
            conditions: Vec::new(),
            primes: Vec::new(),
            points_tested: 0,
            notes: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, c: Condition) {
        debug_assert!(c.status != Verdict::Fail || c.witness.is_some(), "fail without witness: {}", c.id);
        self.conditions.push(c);
    }

    /// Set the verdict to the worst condition status.
    pub(crate) fn finish(mut self) -> Self {
        self.verdict = self.conditions.iter().map(|c| c.status).max().unwrap_or(Verdict::Pass);
        self
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// The first failing condition, if any.
    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.status == Verdict::Fail)
    }

    /// Human-readable summary, one condition per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let qualifier = if self.check_is_enumerative() && self.verdict == Verdict::Pass {
            " (at F_p points tested)"
        } else {
            ""
        };
        out.push_str(&format!("check {}: {}{qualifier}\n", self.check, self.verdict));
        for c in &self.conditions {
            out.push_str(&format!("  [{}] {}: {}", c.status, c.id, c.clause));
            if let Some(w) = &c.witness {
                out.push_str(&format!("; witness {}", render_witness(w)));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("; {n}"));
            }
            out.push('\n');
        }
        if !self.primes.is_empty() {
            let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("  primes {}, {} points tested\n", ps.join(","), self.points_tested));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }

    fn check_is_enumerative(&self) -> bool {
        !self.primes.is_empty()
    }
}

pub fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Point { prime, variables, coordinates } => {
            let parts: Vec<String> = variables.iter().zip(coordinates).map(|(v, c)| format!("{v}={c}")).collect();
            format!("({}) over F_{prime}", parts.join(", "))
        }
        Witness::Variable { term, variable, exponent } => format!("{variable}^{exponent} in {term}"),
        Witness::Term { term } => format!("term {term} has no certifying variable"),
        Witness::Divisor { variable } => format!("{variable} divides every generator"),
    }
}
