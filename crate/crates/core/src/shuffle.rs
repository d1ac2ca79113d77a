//! Words over the alphabet of formal letters `e_1, ..., e_r` and the two
//! interleaving products on them: the commutative shuffle with integer
//! coefficients, and the quantum shuffle over integer Laurent polynomials in
//! `q`, whose powers are governed by the Cartan bilinear form
//! `(e_i, e_j) = 2 d_{i,j} - d_{i,j+1} - d_{i,j-1}`.
//!
//! The quantum shuffle follows the recursion
//! `we * xd = (we * x)d + q^{-(|xd|,e)} (w * xd)e`, i.e. the opposite of
//! Leclerc's convention; all degree computations in the crate assume this
//! orientation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multisegment::{Multisegment, Segment};

/// A word in the letters `e_1, ..., e_r`, stored as the sequence of letter
/// indices. The empty word is the monoid identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l < 1) {
            return Err(Error::LetterOutOfRange(bad));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Letter histogram.
    pub fn degree(&self) -> DegreeVector {
        let mut counts = BTreeMap::new();
        for &l in &self.letters {
            *counts.entry(l).or_insert(0) += 1;
        }
        DegreeVector { counts }
    }

    pub(crate) fn cons(letter: i32, tail: &Word) -> Word {
        let mut letters = Vec::with_capacity(tail.letters.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&tail.letters);
        Word { letters }
    }

    pub(crate) fn push(&self, letter: i32) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Parse `"e3.e2.e1"` or bare `"3.2.1"`; the lone token `"1"` denotes
    /// the empty word (the way it is displayed).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let letters: Result<Vec<i32>> = text
            .split('.')
            .map(|tok| {
                let tok = tok.trim();
                let digits = tok.strip_prefix('e').unwrap_or(tok);
                digits
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("invalid letter \"{tok}\"")))
            })
            .collect();
        Word::new(letters?)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("e{l}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// An element of the degree monoid: a multiset of letters.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeVector {
    counts: BTreeMap<i32, i64>,
}

impl DegreeVector {
    pub fn count(&self, letter: i32) -> i64 {
        self.counts.get(&letter).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &DegreeVector) -> DegreeVector {
        let mut counts = self.counts.clone();
        for (&l, &c) in &other.counts {
            *counts.entry(l).or_insert(0) += c;
        }
        DegreeVector { counts }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.counts.iter().map(|(&l, &c)| (l, c))
    }
}

/// The form on single letters: `2 d_{i,j} - d_{i,j+1} - d_{i,j-1}`.
fn letter_form(i: i32, j: i32) -> i64 {
    match (i - j).abs() {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// The bilinear extension of the letter-level Cartan form.
pub fn bilinear_form(a: &DegreeVector, b: &DegreeVector) -> i64 {
    a.iter()
        .map(|(la, ca)| ca * (2 * b.count(la) - b.count(la + 1) - b.count(la - 1)))
        .sum()
}

/// `(degree of a word prefix, single letter)`, used by the quantum shuffle
/// recursion.
fn prefix_form(word: &[i32], letter: i32) -> i64 {
    word.iter().map(|&l| letter_form(l, letter)).sum()
}

/// An integer Laurent polynomial in `q`, stored as exponent -> coefficient
/// with no zero entries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn monomial(coeff: i64, exponent: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exponent, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The monomial `q^e`.
    pub fn q_power(exponent: i32) -> Self {
        Self::monomial(1, exponent)
    }

    pub fn coeff(&self, exponent: i32) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Evaluation at `q = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `Some(e)` when the polynomial is exactly `q^e`.
    pub fn as_unit_monomial(&self) -> Option<i32> {
        match self.coeffs.iter().next() {
            Some((&e, &1)) if self.coeffs.len() == 1 => Some(e),
            _ => None,
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_monomial(ca * cb, ea + eb);
            }
        }
        out
    }

    fn add_monomial(&mut self, coeff: i64, exponent: i32) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exponent);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_monomial(c, e);
        }
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let term = |(e, c): (i32, i64)| -> String {
            match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "q".into(),
                (1, c) => format!("{c}*q"),
                (e, 1) => format!("q^{e}"),
                (e, c) => format!("{c}*q^{e}"),
            }
        };
        let parts: Vec<String> = self.terms().map(term).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finite formal sum of words with coefficients in `C`; zero terms are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Zero + Clone + PartialEq> FormalSum<C> {
    pub fn new() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(word: Word, coeff: C) -> Self {
        let mut sum = FormalSum::new();
        sum.add_term(word, coeff);
        sum
    }

    pub fn add_term(&mut self, word: Word, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coeff);
            }
            Some(old) => {
                let next = old + coeff;
                if !next.is_zero() {
                    self.terms.insert(word, next);
                }
            }
        }
    }

    /// The stored coefficient of `word`, zero when absent.
    pub fn coeff(&self, word: &Word) -> C {
        self.terms.get(word).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Zero + Clone + PartialEq> Default for FormalSum<C> {
    fn default() -> Self {
        FormalSum::new()
    }
}

impl FormalSum<LaurentPoly> {
    /// Specialize every coefficient at `q = 1`.
    pub fn specialize_q1(&self) -> FormalSum<i64> {
        let mut out = FormalSum::new();
        for (w, p) in self.iter() {
            out.add_term(w.clone(), p.eval_at_one());
        }
        out
    }
}

impl<C: fmt::Display> fmt::Display for FormalSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{c} * {w}")?;
            first = false;
        }
        Ok(())
    }
}

/// The classical shuffle product, computed by direct enumeration of the
/// `binomial(|w1| + |w2|, |w1|)` interleavings.
pub fn shuffle(w1: &Word, w2: &Word) -> FormalSum<i64> {
    let (a, b) = (w1.letters(), w2.letters());
    let mut out = FormalSum::new();
    let mut merged = Vec::with_capacity(a.len() + b.len());
    interleave(a, b, &mut merged, &mut out);
    out
}

fn interleave(a: &[i32], b: &[i32], merged: &mut Vec<i32>, out: &mut FormalSum<i64>) {
    if a.is_empty() && b.is_empty() {
        out.add_term(
            Word {
                letters: merged.clone(),
            },
            1,
        );
        return;
    }
    if let Some((&head, rest)) = a.split_first() {
        merged.push(head);
        interleave(rest, b, merged, out);
        merged.pop();
    }
    if let Some((&head, rest)) = b.split_first() {
        merged.push(head);
        interleave(a, rest, merged, out);
        merged.pop();
    }
}

/// The quantum shuffle product, computed from the defining recursion with
/// memoization over prefix pairs. Specializing `q = 1` recovers
/// [`shuffle`] term by term.
pub fn qshuffle(w1: &Word, w2: &Word) -> FormalSum<LaurentPoly> {
    let mut memo: HashMap<(usize, usize), FormalSum<LaurentPoly>> = HashMap::new();
    qshuffle_prefixes(w1, w2, w1.len(), w2.len(), &mut memo)
}

fn qshuffle_prefixes(
    w1: &Word,
    w2: &Word,
    n1: usize,
    n2: usize,
    memo: &mut HashMap<(usize, usize), FormalSum<LaurentPoly>>,
) -> FormalSum<LaurentPoly> {
    if n1 == 0 {
        return FormalSum::single(w2.prefix(n2), LaurentPoly::one());
    }
    if n2 == 0 {
        return FormalSum::single(w1.prefix(n1), LaurentPoly::one());
    }
    if let Some(hit) = memo.get(&(n1, n2)) {
        return hit.clone();
    }
    let eps = w1.letters()[n1 - 1];
    let delta = w2.letters()[n2 - 1];
    let mut out = FormalSum::new();
    for (w, c) in qshuffle_prefixes(w1, w2, n1, n2 - 1, memo).iter() {
        out.add_term(w.push(delta), c.clone());
    }
    let weight = LaurentPoly::q_power(-prefix_form(&w2.letters()[..n2], eps) as i32);
    for (w, c) in qshuffle_prefixes(w1, w2, n1 - 1, n2, memo).iter() {
        out.add_term(w.push(eps), c.mul(&weight));
    }
    memo.insert((n1, n2), out.clone());
    out
}

/// Bilinear extension of the shuffle product to formal sums. Since the
/// character morphism is a ring homomorphism into the shuffle algebra, this
/// is how characters of products are assembled.
pub fn shuffle_sums(a: &FormalSum<i64>, b: &FormalSum<i64>) -> FormalSum<i64> {
    let mut out = FormalSum::new();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            for (w, c) in shuffle(wa, wb).iter() {
                out.add_term(w.clone(), ca * cb * c);
            }
        }
    }
    out
}

/// Coefficient of `target` in `w1 shuffle w2`, computed by dynamic
/// programming without materializing the product.
pub fn shuffle_coeff(w1: &Word, w2: &Word, target: &Word) -> i64 {
    let (a, b, x) = (w1.letters(), w2.letters(), target.letters());
    let (n1, n2) = (a.len(), b.len());
    if n1 + n2 != x.len() {
        return 0;
    }
    let mut table = vec![vec![0i64; n2 + 1]; n1 + 1];
    table[0][0] = 1;
    for i in 0..=n1 {
        for j in 0..=n2 {
            if i + j == 0 {
                continue;
            }
            let letter = x[i + j - 1];
            let mut v = 0;
            if j > 0 && b[j - 1] == letter {
                v += table[i][j - 1];
            }
            if i > 0 && a[i - 1] == letter {
                v += table[i - 1][j];
            }
            table[i][j] = v;
        }
    }
    table[n1][n2]
}

/// Coefficient of `target` in `w1 * w2` (quantum shuffle), by the same
/// dynamic program with `q`-weights on the first-word branch.
pub fn qshuffle_coeff(w1: &Word, w2: &Word, target: &Word) -> LaurentPoly {
    let (a, b, x) = (w1.letters(), w2.letters(), target.letters());
    let (n1, n2) = (a.len(), b.len());
    if n1 + n2 != x.len() {
        return LaurentPoly::zero();
    }
    let mut table = vec![vec![LaurentPoly::zero(); n2 + 1]; n1 + 1];
    table[0][0] = LaurentPoly::one();
    for i in 0..=n1 {
        for j in 0..=n2 {
            if i + j == 0 {
                continue;
            }
            let letter = x[i + j - 1];
            let mut v = LaurentPoly::zero();
            if j > 0 && b[j - 1] == letter {
                v += table[i][j - 1].clone();
            }
            if i > 0 && a[i - 1] == letter {
                let weight = LaurentPoly::q_power(-prefix_form(&b[..j], letter) as i32);
                v += table[i - 1][j].mul(&weight);
            }
            table[i][j] = v;
        }
    }
    table[n1][n2].clone()
}

/// The integer `d` with `D_x(w1 * w2) = q^{-d}`.
///
/// Defined whenever the classical coefficient `D_x(w1 shuffle w2)` equals 1,
/// in which case the quantum coefficient is automatically a single power
/// of `q`. Any other situation is a contract violation.
pub fn d_exponent(w1: &Word, w2: &Word, target: &Word) -> Result<i64> {
    let classical = shuffle_coeff(w1, w2, target);
    if classical != 1 {
        return Err(Error::Contract(format!(
            "d-exponent needs shuffle coefficient 1, but D_[{target}]({w1} sh {w2}) = {classical}"
        )));
    }
    let quantum = qshuffle_coeff(w1, w2, target);
    match quantum.as_unit_monomial() {
        Some(e) => Ok(-(e as i64)),
        None => Err(Error::Contract(format!(
            "quantum coefficient {quantum} of {target} is not a unit power of q"
        ))),
    }
}

/// The descending run `e_b.e_{b-1}...e_a` of a segment `[a,b]`; the empty
/// segment gives the empty word.
pub fn word_of_segment(seg: &Segment) -> Result<Word> {
    Word::new((seg.begin()..=seg.end()).rev().collect())
}

/// Concatenation of the segment words in canonical order (begins ascending).
pub fn word_of_multisegment(m: &Multisegment) -> Result<Word> {
    let mut letters = Vec::with_capacity(m.total_length());
    for seg in m.segments() {
        letters.extend((seg.begin()..=seg.end()).rev());
    }
    Word::new(letters)
}
