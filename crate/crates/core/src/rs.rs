//! The modified Robinson-Schensted correspondence for 321-avoiding
//! permutations.
//!
//! Classical row insertion is conjugated by the longest permutation: run the
//! usual algorithm on `w0 w w0`, then relabel every tableau entry `m` as
//! `n + 1 - m`. The resulting tableaux have rows written in decreasing
//! order, at most two of them when the input avoids the 321 pattern. The
//! inverse map is implemented directly by the removal recursion, and the
//! derived data `(wbar, J1(w), J2(w))` feeds the gadget machinery: its
//! maximal permutation recovers `w`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gadgets::GadgetContext;
use crate::multisegment::Permutation;

/// A standard Young tableau with at most two rows, each written in strictly
/// decreasing order. The rows partition `{1, ..., n}`, the first row is at
/// least as long as the second, and entries decrease down each column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoRowTableau {
    row1: Vec<usize>,
    row2: Vec<usize>,
}

impl TwoRowTableau {
    pub fn new(row1: Vec<usize>, row2: Vec<usize>) -> Result<Self> {
        let n = row1.len() + row2.len();
        if row1.len() < row2.len() {
            return Err(Error::Argument(format!(
                "first row must be at least as long as the second: {row1:?} / {row2:?}"
            )));
        }
        for row in [&row1, &row2] {
            if row.windows(2).any(|p| p[0] <= p[1]) {
                return Err(Error::Argument(format!(
                    "row {row:?} is not strictly decreasing"
                )));
            }
        }
        let mut seen = vec![false; n + 1];
        for &v in row1.iter().chain(row2.iter()) {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Argument(format!(
                    "rows {row1:?} / {row2:?} do not partition 1..={n}"
                )));
            }
            seen[v] = true;
        }
        for (a, b) in row1.iter().zip(row2.iter()) {
            if a <= b {
                return Err(Error::Argument(format!(
                    "column condition fails: {a} over {b}"
                )));
            }
        }
        Ok(TwoRowTableau { row1, row2 })
    }

    pub fn row1(&self) -> &[usize] {
        &self.row1
    }

    pub fn row2(&self) -> &[usize] {
        &self.row2
    }

    pub fn n(&self) -> usize {
        self.row1.len() + self.row2.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row1.len(), self.row2.len())
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |row: &[usize]| {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(" "))
        };
        write!(f, "{}{}", render(&self.row1), render(&self.row2))
    }
}

/// Classical Robinson-Schensted row insertion with the common conventions:
/// rows increase left to right, any number of rows. Returns the insertion
/// and recording tableaux as row lists.
pub fn classical_rs(w: &Permutation) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for step in 1..=w.n() {
        let mut value = w.apply(step);
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![value]);
                q.push(vec![step]);
                break;
            }
            match p[row].iter().position(|&e| e > value) {
                None => {
                    p[row].push(value);
                    q[row].push(step);
                    break;
                }
                Some(pos) => {
                    std::mem::swap(&mut p[row][pos], &mut value);
                    row += 1;
                }
            }
        }
    }
    (p, q)
}

fn relabel_two_rows(rows: &[Vec<usize>], n: usize) -> Result<TwoRowTableau> {
    let flip = |row: &Vec<usize>| -> Vec<usize> { row.iter().map(|&m| n + 1 - m).collect() };
    let row1 = rows.first().map(flip).unwrap_or_default();
    let row2 = rows.get(1).map(flip).unwrap_or_default();
    TwoRowTableau::new(row1, row2)
}

/// The modified correspondence: conjugate by the longest permutation, run
/// classical insertion, relabel entries by `m -> n + 1 - m`. Restricted to
/// 321-avoiding inputs, whose tableaux fit in two rows.
pub fn modified_rs(w: &Permutation) -> Result<(TwoRowTableau, TwoRowTableau)> {
    if !w.is_321_avoiding() {
        return Err(Error::Argument(format!(
            "w = {w} contains a 321 pattern; its tableaux need more than two rows"
        )));
    }
    let n = w.n();
    let (p, q) = classical_rs(&w.conjugate_by_longest());
    debug_assert!(p.len() <= 2, "avoiding permutations have two-row shape");
    Ok((relabel_two_rows(&p, n)?, relabel_two_rows(&q, n)?))
}

/// The explicit inverse of [`modified_rs`]: peel off the square holding 1 in
/// the recording tableau, read the first value of the permutation from the
/// insertion tableau, and recurse through the size reduction.
pub fn inverse_rs(p: &TwoRowTableau, q: &TwoRowTableau) -> Result<Permutation> {
    if p.shape() != q.shape() {
        return Err(Error::Argument(format!(
            "shape mismatch: {:?} vs {:?}",
            p.shape(),
            q.shape()
        )));
    }
    let n = p.n();
    if n == 0 {
        return Permutation::new(Vec::new());
    }
    let drop_one = |row: &[usize]| -> Vec<usize> {
        row.iter()
            .filter(|&&v| v != 1)
            .map(|&v| v - 1)
            .collect()
    };
    let first_row_case = q.row1().last() == Some(&1);
    let q_next = TwoRowTableau::new(drop_one(q.row1()), drop_one(q.row2()))?;
    let (k, p_next) = if first_row_case {
        let k = *p.row1().last().expect("nonempty row holds the square of 1");
        let row1: Vec<usize> = p.row1()[..p.row1().len() - 1]
            .iter()
            .map(|&v| if v > k { v - 1 } else { v })
            .collect();
        let row2: Vec<usize> = p.row2().iter().map(|&v| if v > k { v - 1 } else { v }).collect();
        (k, TwoRowTableau::new(row1, row2)?)
    } else {
        let l = *p.row2().last().expect("second row holds the square of 1");
        // smallest first-row entry above l; rows decrease, so scan from the right
        let pos = p
            .row1()
            .iter()
            .rposition(|&v| v > l)
            .expect("column condition provides an entry above l");
        let k = p.row1()[pos];
        let mut row1: Vec<usize> = p.row1().to_vec();
        row1[pos] = l;
        let row1 = row1.iter().map(|&v| if v > k { v - 1 } else { v }).collect();
        let row2 = p.row2()[..p.row2().len() - 1]
            .iter()
            .map(|&v| if v > k { v - 1 } else { v })
            .collect();
        (k, TwoRowTableau::new(row1, row2)?)
    };
    let reduced = inverse_rs(&p_next, &q_next)?;
    let mut images = Vec::with_capacity(n);
    images.push(k);
    for i in 1..n {
        let v = reduced.apply(i);
        images.push(if v < k { v } else { v + 1 });
    }
    Permutation::new(images)
}

/// The derived combinatorial data of a 321-avoiding permutation: `wbar`
/// sends each recording entry to the insertion entry in the same square,
/// and the rows of the recording tableau cut the partition `J1(w), J2(w)`.
pub fn wbar_and_rows(w: &Permutation) -> Result<(Permutation, BTreeSet<usize>, BTreeSet<usize>)> {
    let (p, q) = modified_rs(w)?;
    let mut images = vec![0usize; w.n()];
    for (qv, pv) in q.row1().iter().zip(p.row1()) {
        images[qv - 1] = *pv;
    }
    for (qv, pv) in q.row2().iter().zip(p.row2()) {
        images[qv - 1] = *pv;
    }
    let wbar = Permutation::new(images)
        .map_err(|e| Error::Internal(format!("wbar is not a permutation: {e}")))?;
    let j1: BTreeSet<usize> = q.row1().iter().copied().collect();
    let j2: BTreeSet<usize> = q.row2().iter().copied().collect();
    // the triple always forms combinatorial data; anything else is a bug
    GadgetContext::new(wbar.clone(), j1.clone())
        .map_err(|e| Error::Internal(format!("derived data of {w} is not combinatorial: {e}")))?;
    Ok((wbar, j1, j2))
}
