//! Combinatorial gadgets attached to a 321-avoiding permutation `w` and a
//! partition `J1 u J2` of `{1, ..., n}` on which `w` restricts increasingly.
//!
//! The machinery: the traces `sigma_K` for subsets `K` of `J2`, the interval
//! order `prec`, the matching map `f : J2 -> J1 u {0}` with its intervals
//! `F/G/H`, the transposition products `w^L`, and the distinguished maximal
//! permutation `x_max = w^{J_tilde}`. These permutations index through
//! `Pi(sigma_K)` exactly the factors whose certificate has `alpha_{J2} = 0`,
//! and `x_max` indexes the unique factor of maximal degree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::multisegment::{Permutation, RegularPairData, DEFAULT_ENUM_BOUND};

/// A 321-avoiding permutation with a partition into two increasing parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetContext {
    w: Permutation,
    j1: BTreeSet<usize>,
    j2: BTreeSet<usize>,
}

impl GadgetContext {
    pub fn new(w: Permutation, j1: BTreeSet<usize>) -> Result<Self> {
        let n = w.n();
        if !w.is_321_avoiding() {
            return Err(Error::Argument(format!("w = {w} is not 321-avoiding")));
        }
        if j1.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Argument(format!("J1 = {j1:?} is not a subset of 1..={n}")));
        }
        let j2: BTreeSet<usize> = (1..=n).filter(|i| !j1.contains(i)).collect();
        for part in [&j1, &j2] {
            let members: Vec<usize> = part.iter().copied().collect();
            if members.windows(2).any(|p| w.apply(p[0]) > w.apply(p[1])) {
                return Err(Error::Argument(format!(
                    "w = {w} is not increasing on {members:?}"
                )));
            }
        }
        Ok(GadgetContext { w, j1, j2 })
    }

    /// The context carried by the data of a regular pair of ladders. The
    /// permutation of such a pair is a union of two increasing subsequences,
    /// hence automatically 321-avoiding.
    pub fn from_pair_data(data: &RegularPairData) -> Result<Self> {
        GadgetContext::new(data.w().clone(), data.j1().clone())
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn j1(&self) -> &BTreeSet<usize> {
        &self.j1
    }

    pub fn j2(&self) -> &BTreeSet<usize> {
        &self.j2
    }
}

/// The full run of the `sigma_K` algorithm: the permutations
/// `sigma^0 = w, sigma^1, ..., sigma^n = sigma_K` and the set of steps at
/// which a transposition fired.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaTrace {
    steps: Vec<Permutation>,
    moved: BTreeSet<usize>,
}

impl SigmaTrace {
    pub fn steps(&self) -> &[Permutation] {
        &self.steps
    }

    pub fn moved(&self) -> &BTreeSet<usize> {
        &self.moved
    }

    /// `e(K)`, the number of steps at which the permutation changed.
    pub fn e(&self) -> usize {
        self.moved.len()
    }

    pub fn final_perm(&self) -> &Permutation {
        self.steps.last().expect("trace holds sigma^0..sigma^n")
    }
}

/// Run the trace for `K`, a subset of `J2`: at step `j` in `K`, swap the
/// images at `j` and at the minimal `i` in `J1` with `j < i` and
/// `sigma(j) < sigma(i)`, when such an `i` exists.
pub fn sigma_k(ctx: &GadgetContext, k: &BTreeSet<usize>) -> Result<SigmaTrace> {
    if !k.is_subset(ctx.j2()) {
        return Err(Error::Argument(format!(
            "K = {k:?} is not a subset of J2 = {:?}",
            ctx.j2()
        )));
    }
    let n = ctx.n();
    let mut steps = Vec::with_capacity(n + 1);
    let mut moved = BTreeSet::new();
    steps.push(ctx.w().clone());
    for j in 1..=n {
        let prev = steps.last().expect("nonempty");
        let mut next = prev.clone();
        if k.contains(&j) {
            let partner = ctx
                .j1()
                .iter()
                .copied()
                .find(|&i| j < i && prev.apply(j) < prev.apply(i));
            if let Some(i) = partner {
                next = prev.swap_positions(i, j);
                moved.insert(j);
            }
        }
        steps.push(next);
    }
    Ok(SigmaTrace { steps, moved })
}

/// The three families attached to a context: the subsets of `J2` with
/// `e(K) = |K|`, the permutations `sigma_K`, and the 321-avoiding ones among
/// them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetSets {
    pub a_family: Vec<BTreeSet<usize>>,
    pub s_perms: BTreeSet<Permutation>,
    pub l_perms: BTreeSet<Permutation>,
}

/// Enumerate all subsets of `J2` in binary-counter order and collect the
/// three families.
pub fn enumerate_sets(ctx: &GadgetContext) -> Result<GadgetSets> {
    let j2: Vec<usize> = ctx.j2().iter().copied().collect();
    if j2.len() > DEFAULT_ENUM_BOUND {
        return Err(Error::ResourceLimit {
            n: j2.len(),
            bound: DEFAULT_ENUM_BOUND,
        });
    }
    let mut a_family = Vec::new();
    let mut s_perms = BTreeSet::new();
    let mut l_perms = BTreeSet::new();
    for mask in 0u64..(1 << j2.len()) {
        let k: BTreeSet<usize> = j2
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &j)| j)
            .collect();
        let trace = sigma_k(ctx, &k)?;
        if trace.e() == k.len() {
            a_family.push(k);
        }
        let sigma = trace.final_perm().clone();
        if sigma.is_321_avoiding() {
            l_perms.insert(sigma.clone());
        }
        s_perms.insert(sigma);
    }
    Ok(GadgetSets {
        a_family,
        s_perms,
        l_perms,
    })
}

/// The interval order: for `i` in `J1` and `j` in `J2`, `i prec j` iff
/// `i < j` or `w(i) < w(j)`; in every other configuration `i prec j` iff
/// `i < j` and `w(i) < w(j)`.
pub fn prec(ctx: &GadgetContext, i: usize, j: usize) -> Result<Ordering> {
    if i == j {
        return Err(Error::Argument("prec compares distinct indices".into()));
    }
    Ok(prec_cmp(ctx, i, j))
}

fn prec_less(ctx: &GadgetContext, i: usize, j: usize) -> bool {
    let (wi, wj) = (ctx.w().apply(i), ctx.w().apply(j));
    if ctx.j1().contains(&i) && ctx.j2().contains(&j) {
        i < j || wi < wj
    } else {
        i < j && wi < wj
    }
}

pub(crate) fn prec_cmp(ctx: &GadgetContext, i: usize, j: usize) -> Ordering {
    if i == j {
        Ordering::Equal
    } else if prec_less(ctx, i, j) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// All indices sorted by the interval order.
pub fn prec_sorted(ctx: &GadgetContext) -> Vec<usize> {
    let mut indices: Vec<usize> = (1..=ctx.n()).collect();
    indices.sort_by(|&a, &b| prec_cmp(ctx, a, b));
    indices
}

/// The map `f` with its intervals. For `j` in `J2`, `f(j)` is the first
/// element of `J1` along the order for which the closed interval
/// `[j, f(j)]` balances its `J1` and `J2` members; `f(j) = 0` when no such
/// element exists. `F/G/H` hold the interval and its two parts in order, for
/// the indices `j` with `f(j) != 0` (the set `J_tilde`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FData {
    pub f: BTreeMap<usize, usize>,
    pub j_tilde: BTreeSet<usize>,
    pub f_intervals: BTreeMap<usize, Vec<usize>>,
    pub g_intervals: BTreeMap<usize, Vec<usize>>,
    pub h_intervals: BTreeMap<usize, Vec<usize>>,
}

pub fn f_map(ctx: &GadgetContext) -> FData {
    let order = prec_sorted(ctx);
    let mut out = FData {
        f: BTreeMap::new(),
        j_tilde: BTreeSet::new(),
        f_intervals: BTreeMap::new(),
        g_intervals: BTreeMap::new(),
        h_intervals: BTreeMap::new(),
    };
    for (pos, &j) in order.iter().enumerate() {
        if !ctx.j2().contains(&j) {
            continue;
        }
        let mut ones = Vec::new();
        let mut twos = vec![j];
        let mut matched = None;
        for &e in &order[pos + 1..] {
            if ctx.j1().contains(&e) {
                ones.push(e);
                if ones.len() == twos.len() {
                    matched = Some(e);
                    break;
                }
            } else {
                twos.push(e);
            }
        }
        match matched {
            None => {
                out.f.insert(j, 0);
            }
            Some(fj) => {
                out.f.insert(j, fj);
                out.j_tilde.insert(j);
                let interval: Vec<usize> = order[pos..]
                    .iter()
                    .copied()
                    .take_while(|&e| e != fj)
                    .chain(std::iter::once(fj))
                    .collect();
                out.g_intervals.insert(j, twos);
                out.h_intervals.insert(j, ones);
                out.f_intervals.insert(j, interval);
            }
        }
    }
    out
}

impl FData {
    /// `K(L) = union of G(j) over j in L`, the set realizing `w^L` as a
    /// trace final permutation.
    pub fn k_of(&self, l: &BTreeSet<usize>) -> BTreeSet<usize> {
        l.iter()
            .flat_map(|j| self.g_intervals[j].iter().copied())
            .collect()
    }
}

/// The permutation `w^L` for `L` a subset of `J_tilde`: reduce `L` to the
/// outermost representatives of its intervals, then apply the disjoint
/// transpositions matching `G(j)` with `H(j)` in order.
pub fn w_upper_l(ctx: &GadgetContext, l: &BTreeSet<usize>) -> Result<Permutation> {
    let fdata = f_map(ctx);
    w_upper_l_with(ctx, &fdata, l)
}

/// As [`w_upper_l`] when the `f` data has already been computed.
pub fn w_upper_l_with(
    ctx: &GadgetContext,
    fdata: &FData,
    l: &BTreeSet<usize>,
) -> Result<Permutation> {
    if !l.is_subset(&fdata.j_tilde) {
        return Err(Error::Argument(format!(
            "L = {l:?} is not a subset of J_tilde = {:?}",
            fdata.j_tilde
        )));
    }
    // intervals are nested or disjoint; keep the outermost representatives
    let outermost: Vec<usize> = l
        .iter()
        .copied()
        .filter(|&j| {
            let fj: BTreeSet<usize> = fdata.f_intervals[&j].iter().copied().collect();
            !l.iter().any(|&other| {
                other != j && {
                    let fo: BTreeSet<usize> = fdata.f_intervals[&other].iter().copied().collect();
                    fj.is_subset(&fo)
                }
            })
        })
        .collect();
    let mut result = ctx.w().clone();
    for j in outermost {
        let g = &fdata.g_intervals[&j];
        let h = &fdata.h_intervals[&j];
        for (&jt, &it) in g.iter().zip(h.iter()) {
            result = result.swap_positions(it, jt);
        }
    }
    Ok(result)
}

/// The distinguished maximal permutation `w^{J_tilde}`.
pub fn x_max(ctx: &GadgetContext) -> Permutation {
    let fdata = f_map(ctx);
    w_upper_l_with(ctx, &fdata, &fdata.j_tilde.clone()).expect("J_tilde is a subset of itself")
}

/// The size reduction `S_n -> S_{n-1}`: drop the first position and close
/// the gap left by the first value.
pub fn vee(s: &Permutation) -> Result<Permutation> {
    let n = s.n();
    if n == 0 {
        return Err(Error::Argument("vee needs a permutation of size >= 1".into()));
    }
    let first = s.apply(1);
    let images = (1..n)
        .map(|i| {
            let v = s.apply(i + 1);
            if v < first {
                v
            } else {
                v - 1
            }
        })
        .collect();
    Permutation::new(images)
}

/// The matching reduction on index sets: `(K minus {1}) - 1`.
pub fn vee_set(k: &BTreeSet<usize>) -> BTreeSet<usize> {
    k.iter().filter(|&&j| j > 1).map(|&j| j - 1).collect()
}

impl fmt::Display for GadgetContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<usize>| {
            let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        };
        write!(
            f,
            "w = {}, J1 = {}, J2 = {}",
            self.w,
            list(&self.j1),
            list(&self.j2)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn ctx(w: &[usize], j1: &[usize]) -> GadgetContext {
        GadgetContext::new(perm(w), BTreeSet::from_iter(j1.iter().copied())).unwrap()
    }

    fn set(values: &[usize]) -> BTreeSet<usize> {
        BTreeSet::from_iter(values.iter().copied())
    }

    /// All contexts on 321-avoiding w in `S_n`.
    fn all_contexts(n: usize) -> Vec<GadgetContext> {
        let mut out = Vec::new();
        for w in crate::multisegment::enumerate_321_avoiding(n).unwrap() {
            for mask in 0u64..(1 << n) {
                let j1: BTreeSet<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                if let Ok(c) = GadgetContext::new(w.clone(), j1) {
                    out.push(c);
                }
            }
        }
        out
    }

    #[test]
    fn sigma_k_examples() {
        let c = ctx(&[1, 2], &[1]);
        let trace = sigma_k(&c, &set(&[2])).unwrap();
        assert_eq!(trace.final_perm(), &perm(&[1, 2]));
        assert_eq!(trace.e(), 0);

        let c = ctx(&[1, 2], &[2]);
        let trace = sigma_k(&c, &set(&[1])).unwrap();
        assert_eq!(trace.final_perm(), &perm(&[2, 1]));
        assert_eq!(trace.e(), 1);

        let trace = sigma_k(&c, &set(&[])).unwrap();
        assert_eq!(trace.final_perm(), c.w());
        assert_eq!(trace.e(), 0);

        assert!(sigma_k(&c, &set(&[2])).is_err());
    }

    #[test]
    fn enumerate_sets_examples() {
        let c = ctx(&[1, 2], &[2]);
        let sets = enumerate_sets(&c).unwrap();
        assert_eq!(
            sets.s_perms,
            BTreeSet::from([perm(&[1, 2]), perm(&[2, 1])])
        );
        assert_eq!(sets.l_perms, sets.s_perms);

        let c = ctx(&[1, 2], &[1]);
        let sets = enumerate_sets(&c).unwrap();
        assert_eq!(sets.s_perms, BTreeSet::from([perm(&[1, 2])]));

        // J2 empty: only K = {} to try, S = {w}
        let c = ctx(&[1, 2, 3], &[1, 2, 3]);
        let sets = enumerate_sets(&c).unwrap();
        assert_eq!(sets.s_perms, BTreeSet::from([perm(&[1, 2, 3])]));
        assert_eq!(sets.a_family, vec![BTreeSet::new()]);
    }

    #[test]
    fn prec_examples() {
        let c = ctx(&[1, 2], &[2]);
        assert_eq!(prec(&c, 1, 2).unwrap(), Ordering::Less);
        assert!(prec(&c, 1, 1).is_err());

        // same part: index order wins
        let c = ctx(&[1, 2, 3], &[1, 2]);
        assert_eq!(prec(&c, 1, 2).unwrap(), Ordering::Less);

        // i in J1, j in J2, i > j, w(i) < w(j): the "or" branch gives i prec j
        let c = ctx(&[3, 1, 2], &[2, 3]);
        assert!(c.j1().contains(&2) && c.j2().contains(&1));
        assert_eq!(prec(&c, 2, 1).unwrap(), Ordering::Less);
    }

    #[test]
    fn prec_is_a_strict_total_order() {
        let mut rng = StdRng::seed_from_u64(31);
        let mut contexts: Vec<GadgetContext> = Vec::new();
        for n in 0..=5 {
            contexts.extend(all_contexts(n));
        }
        // plus a random sample at n = 6, 7
        for n in [6usize, 7] {
            let avoiders = crate::multisegment::enumerate_321_avoiding(n).unwrap();
            for _ in 0..40 {
                let w = avoiders[rng.gen_range(0..avoiders.len())].clone();
                let mask = rng.gen_range(0..(1u64 << n));
                let j1: BTreeSet<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                if let Ok(c) = GadgetContext::new(w, j1) {
                    contexts.push(c);
                }
            }
        }
        for c in &contexts {
            let n = c.n();
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let forward = prec_less(c, i, j);
                    let backward = prec_less(c, j, i);
                    assert!(forward != backward, "trichotomy fails for {c}: {i}, {j}");
                    for k in 1..=n {
                        if k == i || k == j {
                            continue;
                        }
                        if prec_less(c, i, j) && prec_less(c, j, k) {
                            assert!(prec_less(c, i, k), "transitivity fails for {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_map_examples() {
        let c = ctx(&[1, 2], &[2]);
        let fd = f_map(&c);
        assert_eq!(fd.f.get(&1), Some(&2));
        assert_eq!(fd.f_intervals[&1], vec![1, 2]);
        assert_eq!(fd.g_intervals[&1], vec![1]);
        assert_eq!(fd.h_intervals[&1], vec![2]);
        assert_eq!(fd.j_tilde, set(&[1]));

        let c = ctx(&[1, 2], &[1]);
        let fd = f_map(&c);
        assert_eq!(fd.f.get(&2), Some(&0));
        assert!(fd.j_tilde.is_empty());

        let c = ctx(&[1, 2, 3], &[1, 2, 3]);
        let fd = f_map(&c);
        assert!(fd.f.is_empty());
        assert!(fd.j_tilde.is_empty());
    }

    #[test]
    fn w_upper_l_examples() {
        let c = ctx(&[1, 2], &[2]);
        assert_eq!(w_upper_l(&c, &set(&[])).unwrap(), perm(&[1, 2]));
        assert_eq!(w_upper_l(&c, &set(&[1])).unwrap(), perm(&[2, 1]));
        assert!(w_upper_l(&c, &set(&[2])).is_err());
    }

    #[test]
    fn x_max_examples() {
        assert_eq!(x_max(&ctx(&[1, 2], &[1])), perm(&[1, 2]));
        assert_eq!(x_max(&ctx(&[1, 2], &[2])), perm(&[2, 1]));
        // J2 empty: J_tilde is empty and x_max = w
        assert_eq!(x_max(&ctx(&[1, 2, 3], &[1, 2, 3])), perm(&[1, 2, 3]));
    }

    #[test]
    fn vee_examples() {
        assert_eq!(vee(&perm(&[1, 2, 3])).unwrap(), perm(&[1, 2]));
        assert_eq!(vee(&perm(&[2, 1, 3])).unwrap(), perm(&[1, 2]));
        assert!(vee(&perm(&[])).is_err());
        assert_eq!(vee_set(&set(&[1, 3, 4])), set(&[2, 3]));
    }

    #[test]
    fn sigma_depends_only_on_the_moved_set() {
        for c in all_contexts(5) {
            let j2: Vec<usize> = c.j2().iter().copied().collect();
            for mask in 0u64..(1 << j2.len()) {
                let k: BTreeSet<usize> = j2
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect();
                let trace = sigma_k(&c, &k).unwrap();
                let reduced = sigma_k(&c, trace.moved()).unwrap();
                assert_eq!(reduced.final_perm(), trace.final_perm());
                assert_eq!(reduced.e(), trace.e());
                assert_eq!(reduced.moved(), trace.moved());
            }
        }
    }

    #[test]
    fn vee_intertwines_sigma() {
        // (sigma_K)^vee = sigma_{K^vee} in the reduced context
        for c in all_contexts(5) {
            if c.n() == 0 {
                continue;
            }
            let j2: Vec<usize> = c.j2().iter().copied().collect();
            for mask in 0u64..(1 << j2.len()) {
                let k: BTreeSet<usize> = j2
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect();
                let trace = sigma_k(&c, &k).unwrap();
                let sigma1 = trace.steps()[1].clone();
                let reduced_w = vee(&sigma1).unwrap();
                let reduced_ctx = GadgetContext::new(
                    reduced_w,
                    vee_set(c.j1()),
                )
                .expect("reduced data stays a context");
                let lhs = vee(trace.final_perm()).unwrap();
                let rhs = sigma_k(&reduced_ctx, &vee_set(&k)).unwrap();
                assert_eq!(&lhs, rhs.final_perm(), "{c}, K = {k:?}");
            }
        }
    }

    #[test]
    fn l_family_matches_interval_description() {
        // the 321-avoiding trace permutations are exactly the w^L, and
        // w^L = sigma_{K(L)}
        for n in 0..=6 {
            for c in all_contexts(n) {
                let sets = enumerate_sets(&c).unwrap();
                let fd = f_map(&c);
                let tilde: Vec<usize> = fd.j_tilde.iter().copied().collect();
                let mut via_intervals = BTreeSet::new();
                for mask in 0u64..(1 << tilde.len()) {
                    let l: BTreeSet<usize> = tilde
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &j)| j)
                        .collect();
                    let wl = w_upper_l_with(&c, &fd, &l).unwrap();
                    assert!(wl.is_321_avoiding(), "{c}, L = {l:?}");
                    let k = fd.k_of(&l);
                    let via_trace = sigma_k(&c, &k).unwrap();
                    assert_eq!(via_trace.final_perm(), &wl, "{c}, L = {l:?}");
                    assert_eq!(via_trace.e(), k.len(), "K(L) lies in the A family");
                    via_intervals.insert(wl);
                }
                assert_eq!(via_intervals, sets.l_perms, "{c}");
            }
        }
    }
}
