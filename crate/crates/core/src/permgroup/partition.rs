use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition `n_1 >= ... >= n_k > 0`; also the shape (frame) of a
/// Young diagram with `n_i` boxes in row `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::domain(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Partition {
        let cols = (0..self.parts[0]).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts: cols }
    }

    /// Single-row shape `(N)`.
    pub fn is_row(&self) -> bool {
        self.parts.len() == 1
    }

    /// Single-column shape `(1, ..., 1)`.
    pub fn is_column(&self) -> bool {
        self.parts[0] == 1
    }

    /// Hook length of box `(row, col)` (0-based).
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..].iter().filter(|&&p| p > col).count();
        arm + leg + 1
    }

    /// `N_λ = N! / Π hooks`, the number of standard tableaux of this shape.
    pub fn hook_dimension(&self) -> u64 {
        // Interleave multiplication and division to stay exact in u128.
        let mut hooks: Vec<u128> = Vec::new();
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                hooks.push(self.hook(r, c) as u128);
            }
        }
        let mut num: u128 = (1..=self.total() as u128).product();
        for h in hooks {
            num /= h;
        }
        num as u64
    }

    /// All partitions of `n` in reverse-lexicographic order, `(n)` first.
    pub fn enumerate(n: usize) -> Result<Vec<Partition>> {
        if n == 0 {
            return Err(Error::domain("partitions are enumerated for N >= 1"));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fill(n, n, &mut prefix, &mut out);
        Ok(out)
    }
}

fn fill(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        prefix.push(p);
        fill(remaining - p, p, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Accepts `2,1`, `(2,1)`, `2+1` or `2 1`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(|ch: char| ch == ',' || ch == '+' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}
