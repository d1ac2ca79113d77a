//! Word-valued characters of ladder representations.
//!
//! The character of a ladder is computed by a single-letter peeling rule:
//! with the nonempty segments sorted by end point `b_1 < ... < b_k`, the
//! letters that may start a word are the `e_{b_i}` with `i = 1` or
//! `b_i >= b_{i-1} + 2`; peeling such a letter decrements the chosen end
//! (dropping the segment once it empties) and the recursion continues on the
//! smaller ladder. The rule is the minimal Jacquet step consistent with the
//! character of a single segment being its descending run, and it is gated
//! by an equivalence test against the independent certificate solver.
//!
//! On top of the character sits the membership oracle: a candidate occurs in
//! the relevant Jacquet module of the product exactly when its indicator
//! word carries coefficient 1 in the shuffle of the two factor characters,
//! and that coefficient can never exceed 1.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::multisegment::{Multisegment, Segment};
use crate::shuffle::{word_of_multisegment, FormalSum, Word};

/// One peel step: consume the letter `b` from the ladder `state`.
///
/// Returns the smaller ladder when some admissible segment ends at `b`,
/// and `None` otherwise. Ends are pairwise distinct in a ladder, so at most
/// one segment qualifies.
pub(crate) fn peel_step(state: &Multisegment, letter: i32) -> Option<Multisegment> {
    let segs = state.segments();
    let i = segs.iter().position(|s| s.end() == letter)?;
    let admissible = i == 0 || segs[i].end() >= segs[i - 1].end() + 2;
    if !admissible {
        return None;
    }
    let mut next: Vec<Segment> = segs.to_vec();
    let peeled = Segment::new(segs[i].begin(), segs[i].end() - 1).expect("end decrement");
    if peeled.is_empty() {
        next.remove(i);
    } else {
        next[i] = peeled;
    }
    let next = Multisegment::new(next);
    debug_assert!(next.is_ladder(), "peeling preserves the ladder shape");
    Some(next)
}

/// The character of a ladder as a sum of words with positive integer
/// coefficients. Every word has total length equal to the number of support
/// points of the ladder.
pub fn ladder_character(m: &Multisegment) -> Result<FormalSum<i64>> {
    if !m.is_ladder() {
        return Err(Error::NotALadder(m.to_string()));
    }
    if let Some(seg) = m.segments().first() {
        if seg.begin() < 1 {
            return Err(Error::LetterOutOfRange(seg.begin()));
        }
    }
    let mut memo: HashMap<Multisegment, FormalSum<i64>> = HashMap::new();
    Ok(character_rec(m, &mut memo))
}

fn character_rec(
    state: &Multisegment,
    memo: &mut HashMap<Multisegment, FormalSum<i64>>,
) -> FormalSum<i64> {
    if state.is_empty() {
        return FormalSum::single(Word::empty(), 1);
    }
    if let Some(hit) = memo.get(state) {
        return hit.clone();
    }
    let mut out = FormalSum::new();
    // states are shared heavily across peel paths, hence the memo table
    for seg in state.segments() {
        let letter = seg.end();
        if let Some(next) = peel_step(state, letter) {
            let sub = character_rec(&next, memo);
            for (word, c) in sub.iter() {
                out.add_term(Word::cons(letter, word), *c);
            }
        }
    }
    memo.insert(state.clone(), out.clone());
    out
}

/// Coefficient of `target` in `ch(m1) shuffle ch(m2)`, computed by a joint
/// peel of the two ladders along the target word. Avoids materializing the
/// characters: each wave holds the reachable pairs of peel states with the
/// number of ways to reach them.
fn character_shuffle_coeff(m1: &Multisegment, m2: &Multisegment, target: &Word) -> i64 {
    if target.len() != m1.total_length() + m2.total_length() {
        return 0;
    }
    let mut wave: HashMap<(Multisegment, Multisegment), i64> = HashMap::new();
    wave.insert((m1.clone(), m2.clone()), 1);
    for &letter in target.letters() {
        let mut next: HashMap<(Multisegment, Multisegment), i64> = HashMap::new();
        for ((s1, s2), count) in &wave {
            if let Some(p1) = peel_step(s1, letter) {
                *next.entry((p1, s2.clone())).or_insert(0) += count;
            }
            if let Some(p2) = peel_step(s2, letter) {
                *next.entry((s1.clone(), p2)).or_insert(0) += count;
            }
        }
        if next.is_empty() {
            return 0;
        }
        wave = next;
    }
    wave.get(&(Multisegment::empty(), Multisegment::empty()))
        .copied()
        .unwrap_or(0)
}

/// Does the representation of `n` occur in the relevant Jacquet module of
/// the product of the two ladders?
///
/// True exactly when the indicator word of `n` carries coefficient 1 in
/// `ch(m1) shuffle ch(m2)`. The begin points of `n` must be pairwise
/// distinct, and the computed coefficient is guaranteed to lie in `{0, 1}`;
/// any excursion is reported as an internal consistency failure.
pub fn c_membership_oracle(
    m1: &Multisegment,
    m2: &Multisegment,
    n: &Multisegment,
) -> Result<bool> {
    if !m1.is_ladder() {
        return Err(Error::NotALadder(format!("first factor {m1}")));
    }
    if !m2.is_ladder() {
        return Err(Error::NotALadder(format!("second factor {m2}")));
    }
    let begins: Vec<i32> = n.segments().iter().map(|s| s.begin()).collect();
    if begins.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::OracleHypothesis(format!(
            "begin points of {n} must be pairwise distinct"
        )));
    }
    // grading: a nonzero coefficient needs equal support multisets
    let product_support = m1.sum(m2).support_multiset();
    if n.support_multiset() != product_support {
        return Ok(false);
    }
    // translate to positive coordinates; the coefficient is shift invariant
    let (_, shift) = m1.sum(m2).normalize_shift();
    let (m1, m2, n) = (m1.shifted(shift), m2.shifted(shift), n.shifted(shift));
    let target = word_of_multisegment(&n)?;
    let coefficient = character_shuffle_coeff(&m1, &m2, &target);
    if coefficient > 1 {
        return Err(Error::Internal(format!(
            "indicator coefficient of {n} in ch({m1}) sh ch({m2}) is {coefficient}, outside {{0,1}}"
        )));
    }
    Ok(coefficient == 1)
}
