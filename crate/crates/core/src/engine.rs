//! The top level decomposition API.
//!
//! A product of two ladder representations is multiplicity-free, and under
//! the regularity conditions its factors are exactly the candidates
//! `Pi(x) = L(m^x_{lambda,mu})` over 321-avoiding `x` admitting a
//! certificate matrix. The engine enumerates those factors together with
//! their degree invariants, flags the unique factor of maximal degree, and
//! cross-checks it against the gadget construction, which predicts both the
//! maximal permutation and its degree without any enumeration.

use std::collections::BTreeSet;

use crate::cmatrix::{d_otimes, solve_cmatrix, CMatrix};
use crate::error::{Error, Result};
use crate::gadgets::{f_map, x_max, GadgetContext};
use crate::multisegment::{
    enumerate_321_avoiding, make_msegment, regular_pair_data, Multisegment, Permutation,
    RegularPairData, Segment,
};

/// One irreducible factor of the product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub x: Permutation,
    pub multisegment: Multisegment,
    /// The degree invariant `d_otimes` of this factor.
    pub degree: i64,
    /// The increment statistics `(alpha_{J1}, alpha_{J2})` of the certificate.
    pub alpha: (i64, i64),
    pub certificate: CMatrix,
    pub is_max: bool,
}

/// The complete decomposition of a product of two ladders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionResult {
    pub pair: RegularPairData,
    pub m1: Multisegment,
    pub m2: Multisegment,
    /// Factors sorted by canonical multisegment order; pairwise distinct,
    /// with exactly one carrying the maximal degree.
    pub factors: Vec<Factor>,
}

impl DecompositionResult {
    pub fn max_factor(&self) -> &Factor {
        self.factors
            .iter()
            .find(|f| f.is_max)
            .expect("every decomposition flags one maximal factor")
    }
}

/// Decompose the product of two ladder multisegments.
///
/// The pair must be regular: combined begin points distinct, combined end
/// points distinct, largest begin at most the smallest end. Candidates are
/// filtered by 321-avoidance first and by the certificate solver second.
///
/// ```
/// use laddec::{decompose, Multisegment};
///
/// let m1 = Multisegment::from_pairs(&[(2, 3)]).unwrap();
/// let m2 = Multisegment::from_pairs(&[(1, 2)]).unwrap();
/// let result = decompose(&m1, &m2).unwrap();
/// assert_eq!(result.factors.len(), 2);
/// assert_eq!(
///     result.max_factor().multisegment,
///     Multisegment::from_pairs(&[(1, 3), (2, 2)]).unwrap()
/// );
/// assert_eq!(result.max_factor().degree, 1);
/// ```
pub fn decompose(m1: &Multisegment, m2: &Multisegment) -> Result<DecompositionResult> {
    let data = regular_pair_data(m1, m2).map_err(|e| match e {
        Error::NotRegularPair(msg) => Error::NotRegularPair(format!(
            "{msg}; only regular pairs decompose here, \
             individual candidates can still be tested through the membership oracle"
        )),
        other => other,
    })?;
    let n = data.n();
    let mut factors = Vec::new();
    for x in enumerate_321_avoiding(n)? {
        let certificate = match solve_cmatrix(&data, &x) {
            None => continue,
            Some(c) => c,
        };
        let (a1, a2) = certificate.alpha_stats();
        let multisegment = make_msegment(data.lambda(), data.mu(), &x)?;
        factors.push(Factor {
            x,
            multisegment,
            degree: a1 - a2,
            alpha: (a1, a2),
            certificate,
            is_max: false,
        });
    }

    // multiplicity-freeness: distinct permutations give distinct factors
    let distinct: BTreeSet<&Multisegment> = factors.iter().map(|f| &f.multisegment).collect();
    if distinct.len() != factors.len() {
        return Err(Error::Internal(format!(
            "factors of {m1} x {m2} are not pairwise distinct"
        )));
    }

    // the maximal degree is attained exactly once, by the gadget permutation
    let max_degree = factors.iter().map(|f| f.degree).max().unwrap_or(0);
    let argmax: Vec<usize> = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.degree == max_degree)
        .map(|(i, _)| i)
        .collect();
    if argmax.len() != 1 {
        return Err(Error::Internal(format!(
            "maximal degree {max_degree} attained {} times in {m1} x {m2}",
            argmax.len()
        )));
    }
    let predicted = x_max(&GadgetContext::from_pair_data(&data)?);
    if factors[argmax[0]].x != predicted {
        return Err(Error::Internal(format!(
            "argmax {} disagrees with the gadget permutation {predicted}",
            factors[argmax[0]].x
        )));
    }
    factors[argmax[0]].is_max = true;
    factors.sort_by(|a, b| a.multisegment.cmp(&b.multisegment));

    Ok(DecompositionResult {
        pair: data,
        m1: m1.clone(),
        m2: m2.clone(),
        factors,
    })
}

/// The maximal factor alone, through the gadget route: no candidate
/// enumeration, only one certificate solve for its degree. The degree must
/// match the gadget prediction `|K(J_tilde)|`.
pub fn pi_max(m1: &Multisegment, m2: &Multisegment) -> Result<(Multisegment, i64)> {
    let data = regular_pair_data(m1, m2)?;
    let ctx = GadgetContext::from_pair_data(&data)?;
    let fdata = f_map(&ctx);
    let x = x_max(&ctx);
    let degree = d_otimes(&data, &x).ok_or_else(|| {
        Error::Internal(format!("maximal candidate {x} admits no certificate"))
    })?;
    let predicted = fdata.k_of(&fdata.j_tilde.clone()).len() as i64;
    if degree != predicted {
        return Err(Error::Internal(format!(
            "maximal degree {degree} disagrees with the gadget prediction {predicted}"
        )));
    }
    Ok((make_msegment(data.lambda(), data.mu(), &x)?, degree))
}

/// The interleaved configuration whose product has Catalan-many factors:
/// begin points `1, 2, ..., n` alternate between the factors starting with
/// the first, and end points `gap + 1, ..., gap + n` alternate the same way.
///
/// Requires `m1_count - m2_count` in `{0, 1}` and a gap large enough that
/// the smallest end point is not below the largest begin point.
pub fn catalan_config(
    m1_count: usize,
    m2_count: usize,
    gap: i32,
) -> Result<(Multisegment, Multisegment)> {
    if m1_count != m2_count && m1_count != m2_count + 1 {
        return Err(Error::Argument(format!(
            "counts must satisfy m1_count - m2_count in {{0, 1}}, got {m1_count} and {m2_count}"
        )));
    }
    let n = m1_count + m2_count;
    if n > 0 && gap < n as i32 - 1 {
        return Err(Error::Argument(format!(
            "gap {gap} is too small: need at least {} so ends clear begins",
            n - 1
        )));
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    for p in 1..=n as i32 {
        let seg = Segment::new(p, gap + p)?;
        if p % 2 == 1 {
            first.push(seg);
        } else {
            second.push(seg);
        }
    }
    Ok((Multisegment::new(first), Multisegment::new(second)))
}
