use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// `n`, `n1:n2` (inclusive, step 1) or `n1:n2:xF` (geometric with integer factor `F`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IntRange {
    pub start: usize,
    pub end: usize,
    pub factor: Option<usize>,
}

impl IntRange {
    pub fn single(n: usize) -> Self {
        IntRange {
            start: n,
            end: n,
            factor: None,
        }
    }

    pub fn values(&self) -> Vec<usize> {
        match self.factor {
            None => (self.start..=self.end).collect(),
            Some(f) => {
                let mut out = Vec::new();
                let mut v = self.start;
                while v <= self.end {
                    out.push(v);
                    v *= f;
                }
                out
            }
        }
    }

    pub fn max(&self) -> usize {
        *self.values().last().expect("ranges are nonempty")
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let int = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let range = match parts.as_slice() {
            [n] => IntRange::single(int(n)?),
            [a, b] => IntRange {
                start: int(a)?,
                end: int(b)?,
                factor: None,
            },
            [a, b, f] => {
                let f = f
                    .strip_prefix('x')
                    .ok_or_else(|| format!("step `{f}` must be written xF"))
                    .and_then(int)?;
                if f < 2 {
                    return Err(format!("geometric factor must be at least 2, got {f}"));
                }
                IntRange {
                    start: int(a)?,
                    end: int(b)?,
                    factor: Some(f),
                }
            }
            _ => return Err(format!("`{s}` is not a range")),
        };
        if range.end < range.start {
            return Err(format!("range `{s}` is empty"));
        }
        if range.factor.is_some() && range.start == 0 {
            return Err(format!("geometric range `{s}` must start above 0"));
        }
        Ok(range)
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.start == self.end && self.factor.is_none(), self.factor) {
            (true, _) => write!(f, "{}", self.start),
            (false, None) => write!(f, "{}:{}", self.start, self.end),
            (false, Some(x)) => write!(f, "{}:{}:x{x}", self.start, self.end),
        }
    }
}

impl TryFrom<String> for IntRange {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<IntRange> for String {
    fn from(r: IntRange) -> String {
        r.to_string()
    }
}
