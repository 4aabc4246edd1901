use std::fmt;

use serde::Serialize;

use super::{Partition, Permutation};
use crate::error::{Error, Result};

/// Young tableau: a frame filled with `1..=N`, each exactly once.
///
/// Standardness (rows increase left to right, columns top to bottom) is a
/// property checked by [`Tableau::is_standard`], not an invariant of the type,
/// so that non-standard fillings can be represented and rejected downstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.total();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::domain(format!("tableau {rows:?} is not a filling of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Tableau { rows })
    }

    /// Like [`Tableau::new`] but additionally requires standardness.
    pub fn standard(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::new(rows)?;
        if !t.is_standard() {
            return Err(Error::domain(format!("tableau {t} is not standard")));
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("validated on construction")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.rows[0].len()).map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect()).collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }

    /// `(row, col)` of the 1-based entry `x`.
    pub fn position(&self, x: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&y| y == x) {
                return (r, c);
            }
        }
        panic!("entry {x} not in tableau");
    }

    /// Content `col - row` of the box holding `x`.
    pub fn content(&self, x: usize) -> i64 {
        let (r, c) = self.position(x);
        c as i64 - r as i64
    }

    /// Tableau with the entries `a` and `b` exchanged.
    pub fn swap_entries(&self, a: usize, b: usize) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        if x == a {
                            b
                        } else if x == b {
                            a
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        Tableau { rows }
    }

    /// Subgroup `Row(T)` of permutations preserving every row.
    pub fn row_group(&self) -> Vec<Permutation> {
        block_stabilizer(self.size(), &self.rows)
    }

    /// Subgroup `Col(T)` of permutations preserving every column.
    pub fn column_group(&self) -> Vec<Permutation> {
        block_stabilizer(self.size(), &self.columns())
    }
}

/// `(Row(T), Col(T))`.
pub fn row_col_groups(t: &Tableau) -> (Vec<Permutation>, Vec<Permutation>) {
    (t.row_group(), t.column_group())
}

/// All permutations of `1..=n` mapping each block (1-based entries) onto
/// itself: the direct product of the symmetric groups on the blocks.
fn block_stabilizer(n: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Permutation::all(block.len());
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for p in &local {
                let mut images = g.images().to_vec();
                for (k, &x) in block.iter().enumerate() {
                    images[x - 1] = block[p.apply(k)] - 1;
                }
                next.push(Permutation::from_images(images).expect("block permutation"));
            }
        }
        group = next;
    }
    group.sort();
    group
}

/// All standard tableaux of shape `shape`, in lexicographic order of their
/// rows.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let n = shape.total();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    place(1, n, shape.parts(), &mut rows, &mut out);
    out.sort();
    out
}

fn place(next: usize, n: usize, shape: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
    if next > n {
        out.push(Tableau { rows: rows.clone() });
        return;
    }
    for r in 0..shape.len() {
        let len = rows[r].len();
        let fits_row = len < shape[r];
        let supported = r == 0 || rows[r - 1].len() > len;
        if fits_row && supported {
            rows[r].push(next);
            place(next + 1, n, shape, rows, out);
            rows[r].pop();
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableaux_of_two_one() {
        let ts = standard_tableaux(&Partition::new(vec![2, 1]).unwrap());
        let rows: Vec<_> = ts.iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(rows, vec![vec![vec![1, 2], vec![3]], vec![vec![1, 3], vec![2]]]);
    }

    #[test]
    fn row_and_column_groups() {
        let t = Tableau::standard(vec![vec![1, 2], vec![3]]).unwrap();
        let (row, col) = row_col_groups(&t);
        assert_eq!(row, vec![Permutation::identity(3), Permutation::transposition(3, 1, 2)]);
        assert_eq!(col, vec![Permutation::identity(3), Permutation::transposition(3, 1, 3)]);
    }

    #[test]
    fn standardness() {
        assert!(Tableau::standard(vec![vec![2, 1], vec![3]]).is_err());
        assert!(Tableau::standard(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(Tableau::new(vec![vec![1, 1], vec![3]]).is_err());
        let t = Tableau::new(vec![vec![3, 2], vec![1]]).unwrap();
        assert!(!t.is_standard());
    }
}
