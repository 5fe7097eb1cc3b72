use std::fmt;

use serde::{Deserialize, Serialize};

/// Why an entry could not be pinned down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "LES-indeterminate")]
    LesIndeterminate,
    #[serde(rename = "unsupported-shape")]
    UnsupportedShape,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::LesIndeterminate => "LES-indeterminate",
            Reason::UnsupportedShape => "unsupported-shape",
        })
    }
}

/// One `h^i`: either an exact count or a range `[lo, hi]` (`hi = None` means
/// unbounded) tagged with the reason it is not exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Exact(usize),
    Interval {
        lo: usize,
        hi: Option<usize>,
        reason: Reason,
    },
}

impl Entry {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            Entry::Exact(v) => Some(v),
            Entry::Interval {
                lo, hi: Some(hi), ..
            } if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn bounds(&self) -> (usize, Option<usize>) {
        match *self {
            Entry::Exact(v) => (v, Some(v)),
            Entry::Interval { lo, hi, .. } => (lo, hi),
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match *self {
            Entry::Exact(_) => None,
            Entry::Interval { reason, .. } => Some(reason),
        }
    }

    /// Builds an entry from bounds, collapsing `lo == hi` to an exact value.
    pub fn from_bounds(lo: usize, hi: Option<usize>, reason: Reason) -> Self {
        match hi {
            Some(h) if h == lo => Entry::Exact(lo),
            _ => Entry::Interval { lo, hi, reason },
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Entry::Exact(v) => write!(f, "{v}"),
            Entry::Interval {
                lo,
                hi: Some(hi),
                reason,
            } => write!(f, "[{lo},{hi}]({reason})"),
            Entry::Interval {
                lo,
                hi: None,
                reason,
            } => write!(f, "[{lo},inf)({reason})"),
        }
    }
}

/// `h^0 .. h^n` of a sheaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub values: Vec<Entry>,
}

impl CohomologyTable {
    pub fn exact(values: &[usize]) -> Self {
        Self {
            values: values.iter().map(|&v| Entry::Exact(v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, i: usize) -> Entry {
        self.values[i]
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(|e| e.exact().is_some())
    }

    pub fn exact_values(&self) -> Option<Vec<usize>> {
        self.values.iter().map(Entry::exact).collect()
    }

    /// Alternating sum, when every entry is exact.
    pub fn euler(&self) -> Option<i64> {
        let v = self.exact_values()?;
        Some(
            v.iter()
                .enumerate()
                .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
                .sum(),
        )
    }

    /// Table with the order of entries reversed, `h^i -> h^{n-i}`.
    pub fn reversed(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_and_display() {
        let t = CohomologyTable::exact(&[0, 5, 0]);
        assert_eq!(t.euler(), Some(-5));
        assert_eq!(t.to_string(), "(0, 5, 0)");
        let u = CohomologyTable {
            values: vec![
                Entry::Exact(1),
                Entry::Interval {
                    lo: 0,
                    hi: None,
                    reason: Reason::UnsupportedShape,
                },
            ],
        };
        assert_eq!(u.euler(), None);
        assert_eq!(u.to_string(), "(1, [0,inf)(unsupported-shape))");
    }

    #[test]
    fn degenerate_interval_is_exact() {
        assert_eq!(
            Entry::from_bounds(3, Some(3), Reason::LesIndeterminate),
            Entry::Exact(3)
        );
        assert_eq!(
            Entry::Interval {
                lo: 2,
                hi: Some(2),
                reason: Reason::LesIndeterminate
            }
            .exact(),
            Some(2)
        );
    }

    #[test]
    fn json_shape() {
        let e = Entry::Interval {
            lo: 0,
            hi: Some(4),
            reason: Reason::LesIndeterminate,
        };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"lo":0,"hi":4,"reason":"LES-indeterminate"}"#);
        assert_eq!(serde_json::to_string(&Entry::Exact(7)).unwrap(), "7");
    }
}
