use std::fmt;

use num_integer::Integer;

use super::cardinal::Cardinal;
use super::sequence::SeqSpec;

/// Affine aleph-index tail: entry `m ≥ 1` is `ℵ_{b0 + b1·m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineTail {
    pub b0: i64,
    pub b1: i64,
}

impl AffineTail {
    pub fn new(b0: i64, b1: i64) -> Self {
        AffineTail { b0, b1 }
    }

    pub fn at(&self, m: u64) -> i64 {
        self.b0 + self.b1 * m as i64
    }

    pub fn first(&self) -> i64 {
        self.at(1)
    }

    /// Whether `ℵ_w` occurs in the tail.
    pub fn contains(&self, w: i64) -> bool {
        self.b1 >= 1 && w >= self.first() && (w - self.first()) % self.b1 == 0
    }

    /// Whether two tails share at least one (hence infinitely many) entries.
    pub fn meets(&self, other: &AffineTail) -> bool {
        let g = self.b1.gcd(&other.b1);
        g != 0 && (self.first() - other.first()) % g == 0
    }
}

/// One line of weights of a passport: strictly increasing cardinals, given
/// as an explicit prefix and an optional affine tail.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PassportLine {
    pub prefix: Vec<Cardinal>,
    pub tail: Option<AffineTail>,
}

impl PassportLine {
    pub fn finite(indices: &[u32]) -> Self {
        PassportLine {
            prefix: indices.iter().copied().map(Cardinal::aleph).collect(),
            tail: None,
        }
    }

    pub fn with_tail(indices: &[u32], b0: i64, b1: i64) -> Self {
        PassportLine {
            prefix: indices.iter().copied().map(Cardinal::aleph).collect(),
            tail: Some(AffineTail::new(b0, b1)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn len(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Aleph index of entry `i` (1-based).
    pub fn index_at(&self, i: u64) -> Option<i64> {
        if i == 0 {
            return None;
        }
        let len = self.prefix.len() as u64;
        if i <= len {
            return Some(self.prefix[(i - 1) as usize].aleph_index() as i64);
        }
        self.tail.map(|t| t.at(i - len))
    }

    pub fn contains(&self, w: i64) -> bool {
        self.prefix.iter().any(|c| c.aleph_index() as i64 == w) || self.tail.is_some_and(|t| t.contains(w))
    }

    /// The unique representation whose tail starts as early as possible.
    /// Two lines denote the same sequence iff their canonical forms are equal.
    pub fn canonical(&self) -> PassportLine {
        let mut out = self.clone();
        if let Some(t) = out.tail.as_mut() {
            while let Some(last) = out.prefix.last() {
                if last.aleph_index() as i64 != t.b0 {
                    break;
                }
                out.prefix.pop();
                t.b0 -= t.b1;
            }
        }
        out
    }

    pub fn same_sequence(&self, other: &PassportLine) -> bool {
        self.canonical() == other.canonical()
    }

    fn is_strictly_increasing(&self) -> bool {
        let prefix_ok = self.prefix.windows(2).all(|w| w[0] < w[1]);
        let join_ok = match (self.prefix.last(), self.tail) {
            (Some(last), Some(t)) => (last.aleph_index() as i64) < t.first(),
            _ => true,
        };
        prefix_ok && join_ok
    }
}

impl fmt::Display for PassportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        if let Some(t) = self.tail {
            if !self.prefix.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "ℵ_({} + {}m), m ≥ 1", t.b0, t.b1)?;
        }
        write!(f, "]")
    }
}

/// Three-line invariant of a nonatomic σ-finite measure algebra: weights of
/// the infinite-measure homogeneous components, weights of the
/// finite-measure components, and the measures of the latter.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Passport {
    pub s_line: PassportLine,
    pub u_line: PassportLine,
    pub u_measures: SeqSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// JSON-pointer style location inside a passport body.
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }

    /// Prepends `prefix` to every path.
    pub fn nest(mut self, prefix: &str) -> Self {
        for v in &mut self.violations {
            v.path = format!("{prefix}{}", v.path);
        }
        self
    }
}

impl Passport {
    pub fn new(s_line: PassportLine, u_line: PassportLine, u_measures: SeqSpec) -> Self {
        Passport {
            s_line,
            u_line,
            u_measures,
        }
    }

    /// Reports every violated invariant; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        validate_line("sLine", &self.s_line, &mut report);
        validate_line("uLine", &self.u_line, &mut report);

        for i in self.u_measures.non_positive_entries() {
            report.push(format!("/uMeasures/prefix/{i}"), "non-positive measure");
        }
        let lengths_agree = match (self.u_line.len(), self.u_measures.len()) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        };
        if !lengths_agree {
            report.push("/uMeasures", "length mismatch");
        }

        for c in &self.u_line.prefix {
            if self.s_line.contains(c.aleph_index() as i64) {
                report.push("/uLine", format!("weight {c} in both sLine and uLine"));
            }
        }
        for c in &self.s_line.prefix {
            if self
                .u_line
                .tail
                .is_some_and(|t| t.contains(c.aleph_index() as i64))
            {
                report.push("/sLine", format!("weight {c} in both sLine and uLine"));
            }
        }
        if let (Some(s), Some(u)) = (self.s_line.tail, self.u_line.tail) {
            if s.b1 >= 1 && u.b1 >= 1 && s.meets(&u) {
                report.push("/uLine/tail", "sLine and uLine tails share weights");
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

fn validate_line(name: &str, line: &PassportLine, report: &mut ValidationReport) {
    if let Some(t) = line.tail {
        if t.b1 < 1 {
            report.push(format!("/{name}/tail/b1"), "tail step b1 must be at least 1");
        }
        if t.first() < 0 {
            report.push(format!("/{name}/tail"), "tail produces a negative aleph index");
        }
        if t.b1 >= 1 && t.first() >= 0 && t.first() > u32::MAX as i64 {
            report.push(format!("/{name}/tail"), "tail aleph index out of range");
        }
    }
    if !line.is_strictly_increasing() {
        report.push(format!("/{name}"), format!("{name} not strictly increasing"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::ClosedForm;
    use crate::numeric::ratio;

    #[test]
    fn simple_passport_is_valid() {
        let p = Passport::new(
            PassportLine::finite(&[1]),
            PassportLine::finite(&[0]),
            SeqSpec::finite(vec![ratio(5, 2)]),
        );
        assert!(p.is_valid());
    }

    #[test]
    fn decreasing_u_line_is_reported() {
        let p = Passport::new(
            PassportLine::default(),
            PassportLine::finite(&[2, 1]),
            SeqSpec::finite(vec![ratio(1, 1), ratio(1, 1)]),
        );
        let report = p.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].message, "uLine not strictly increasing");
    }

    #[test]
    fn length_mismatch_is_reported() {
        let p = Passport::new(
            PassportLine::default(),
            PassportLine::finite(&[0]),
            SeqSpec::finite(vec![]),
        );
        let report = p.validate();
        assert_eq!(report.violations[0].path, "/uMeasures");
        assert_eq!(report.violations[0].message, "length mismatch");
    }

    #[test]
    fn every_violation_is_reported() {
        let p = Passport::new(
            PassportLine::with_tail(&[4], 2, 1),
            PassportLine::finite(&[3, 3]),
            SeqSpec::with_tail(
                vec![ratio(-1, 1)],
                ClosedForm::from_ratios((1, 1), (0, 1), (1, 1)).unwrap(),
            ),
        );
        let messages: Vec<_> = p.validate().violations.into_iter().map(|v| v.message).collect();
        assert!(messages.contains(&"sLine not strictly increasing".to_string()));
        assert!(messages.contains(&"uLine not strictly increasing".to_string()));
        assert!(messages.contains(&"non-positive measure".to_string()));
        assert!(messages.contains(&"length mismatch".to_string()));
        assert!(messages.iter().any(|m| m.contains("in both sLine and uLine")));
    }

    #[test]
    fn canonical_form_absorbs_prefix() {
        let a = PassportLine::with_tail(&[1, 2], 2, 1);
        let b = PassportLine::with_tail(&[], 0, 1);
        assert!(a.same_sequence(&b));
        assert_eq!(a.canonical(), b);
        let c = PassportLine::with_tail(&[0, 2], 2, 1);
        assert!(!c.same_sequence(&b));
        assert_eq!(c.canonical(), PassportLine::with_tail(&[0], 1, 1));
    }

    #[test]
    fn tails_meeting() {
        let even = AffineTail::new(0, 2);
        let odd = AffineTail::new(1, 2);
        let thirds = AffineTail::new(0, 3);
        assert!(!even.meets(&odd));
        assert!(even.meets(&thirds));
        assert!(even.contains(4) && !even.contains(0) && !even.contains(5));
    }
}
