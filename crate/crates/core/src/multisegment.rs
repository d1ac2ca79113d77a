//! Segments, multisegments, permutations and ranked tuples.
//!
//! A segment `[a,b]` stands for the integer interval `a..=b` and a
//! multisegment is a finite multiset of segments. Sums of two ladder
//! multisegments are parametrized as `m^w_{lambda,mu} = sum_i [lambda_i,
//! mu_{w(i)}]` for ranked tuples `lambda`, `mu` and a permutation `w`; the
//! [`RegularPairData`] type carries that parametrization together with the
//! partition recording which segment came from which factor.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the sizes that trigger `S_n`-scale enumerations.
/// The number of 321-avoiding permutations at the bound is Catalan(12) = 208_012.
pub const DEFAULT_ENUM_BOUND: usize = 12;

/// An integer interval `[begin, end]`.
///
/// `begin == end + 1` encodes the empty segment; a larger gap is rejected.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Segment {
    begin: i32,
    end: i32,
}

impl Segment {
    pub fn new(begin: i32, end: i32) -> Result<Self> {
        if begin > end + 1 {
            return Err(Error::InvalidSegment { begin, end });
        }
        Ok(Segment { begin, end })
    }

    pub fn begin(&self) -> i32 {
        self.begin
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    pub fn is_empty(&self) -> bool {
        self.begin == self.end + 1
    }

    /// Number of support points, `end - begin + 1`.
    pub fn len(&self) -> usize {
        (self.end - self.begin + 1) as usize
    }

    /// The support `begin..=end` (empty for the empty segment).
    pub fn support(&self) -> impl Iterator<Item = i32> {
        self.begin..=self.end
    }

    pub fn shifted(&self, s: i32) -> Segment {
        Segment {
            begin: self.begin + s,
            end: self.end + s,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.begin, self.end)
    }
}

/// A finite multiset of nonempty segments, stored sorted by
/// `(begin, end)` ascending. Empty segments are dropped on construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segments: Vec<Segment> = segments.into_iter().filter(|s| !s.is_empty()).collect();
        segments.sort();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    /// Convenience constructor from `(begin, end)` pairs.
    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self> {
        let segments: Result<Vec<Segment>> =
            pairs.iter().map(|&(a, b)| Segment::new(a, b)).collect();
        Ok(Multisegment::new(segments?))
    }

    /// Segments in canonical order.
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Multiset union with another multisegment.
    pub fn sum(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.segments.iter().chain(other.segments.iter()).copied())
    }

    /// All support points with multiplicity, sorted ascending.
    pub fn support_multiset(&self) -> Vec<i32> {
        let mut pts: Vec<i32> = self.segments.iter().flat_map(|s| s.support()).collect();
        pts.sort_unstable();
        pts
    }

    /// Total number of support points counted with multiplicity.
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.len()).sum()
    }

    pub fn shifted(&self, s: i32) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|seg| seg.shifted(s)))
    }

    /// True iff the nonempty segments can be ordered with strictly increasing
    /// begins and strictly increasing ends. In canonical order this means
    /// both coordinates are strictly increasing.
    pub fn is_ladder(&self) -> bool {
        self.segments
            .windows(2)
            .all(|p| p[0].begin() < p[1].begin() && p[0].end() < p[1].end())
    }

    /// Translate by a common shift so that all support points lie in
    /// `{1, ..., r}` with `r` minimal; returns the shift for round-tripping.
    pub fn normalize_shift(&self) -> (Multisegment, i32) {
        match self.segments.iter().map(|s| s.begin()).min() {
            None => (self.clone(), 0),
            Some(min_begin) => {
                let s = 1 - min_begin;
                (self.shifted(s), s)
            }
        }
    }

    /// Parse the text syntax `[a,b]+[c,d]+...`; `0` or an empty string
    /// denotes the empty multisegment.
    pub fn from_text(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Multisegment::empty());
        }
        let mut segments = Vec::new();
        for piece in text.split('+') {
            segments.push(parse_segment(piece)?);
        }
        Ok(Multisegment::new(segments))
    }

    /// Parse the JSON form `{"segments": [[a,b], ...]}`.
    pub fn from_json_str(json: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(json)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let arr = value
            .get("segments")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("expected an object with a \"segments\" array".into()))?;
        let mut segments = Vec::new();
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("expected a [begin,end] pair, got {item}")))?;
            let a = json_i32(&pair[0])?;
            let b = json_i32(&pair[1])?;
            segments.push(Segment::new(a, b)?);
        }
        Ok(Multisegment::new(segments))
    }

    /// Parse either the JSON form (when the string starts with `{`) or the
    /// text form.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::from_json_str(input)
        } else {
            Self::from_text(input)
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.segments
                .iter()
                .map(|s| serde_json::json!([s.begin(), s.end()]))
                .collect(),
        )
    }
}

fn json_i32(v: &serde_json::Value) -> Result<i32> {
    v.as_i64()
        .and_then(|x| i32::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("expected a small integer, got {v}")))
}

fn parse_segment(piece: &str) -> Result<Segment> {
    let piece = piece.trim();
    let inner = piece
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected \"[a,b]\", got \"{piece}\"")))?;
    let mut parts = inner.splitn(2, ',');
    let a = parse_int(parts.next().unwrap_or(""))?;
    let b = parse_int(
        parts
            .next()
            .ok_or_else(|| Error::Parse(format!("missing end point in \"{piece}\"")))?,
    )?;
    Segment::new(a, b)
}

fn parse_int(s: &str) -> Result<i32> {
    s.trim()
        .parse::<i32>()
        .map_err(|_| Error::Parse(format!("invalid integer \"{}\"", s.trim())))
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.segments.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Argument(format!(
                    "images {images:?} are not a bijection of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (pos, &v) in self.images.iter().enumerate() {
            images[v - 1] = pos + 1;
        }
        Permutation { images }
    }

    /// Right multiplication by the transposition `(i, j)`: the images at
    /// positions `i` and `j` are exchanged.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// Conjugation by the longest permutation: `i -> n + 1 - w(n + 1 - i)`.
    pub fn conjugate_by_longest(&self) -> Permutation {
        let n = self.n();
        let images = (1..=n).map(|i| n + 1 - self.apply(n + 1 - i)).collect();
        Permutation { images }
    }

    /// True iff no decreasing subsequence of length 3 exists.
    ///
    /// Greedily covers the sequence by two increasing subsequences, which is
    /// possible exactly when the longest decreasing subsequence has length at
    /// most 2. Checked against the cubic triple scan in the tests.
    pub fn is_321_avoiding(&self) -> bool {
        let (mut t1, mut t2) = (0usize, 0usize); // tails, t1 >= t2
        for &v in &self.images {
            if v > t1 {
                t1 = v;
            } else if v > t2 {
                t2 = v;
            } else {
                return false;
            }
        }
        true
    }

    /// Parse one-line notation `"2,1,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Permutation::new(Vec::new());
        }
        let images: Result<Vec<usize>> = text
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid permutation entry \"{}\"", p.trim())))
            })
            .collect();
        Permutation::new(images?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All 321-avoiding elements of `S_n`, in lexicographic order of one-line
/// notation. The count is the n-th Catalan number.
pub fn enumerate_321_avoiding(n: usize) -> Result<Vec<Permutation>> {
    enumerate_321_avoiding_bounded(n, DEFAULT_ENUM_BOUND)
}

/// As [`enumerate_321_avoiding`] with an explicit size bound.
pub fn enumerate_321_avoiding_bounded(n: usize, bound: usize) -> Result<Vec<Permutation>> {
    if n > bound {
        return Err(Error::ResourceLimit { n, bound });
    }
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut cur = Vec::with_capacity(n);
    build_avoiders(n, &mut used, &mut cur, 0, 0, &mut out);
    Ok(out)
}

fn build_avoiders(
    n: usize,
    used: &mut Vec<bool>,
    cur: &mut Vec<usize>,
    t1: usize,
    t2: usize,
    out: &mut Vec<Permutation>,
) {
    if cur.len() == n {
        out.push(Permutation { images: cur.clone() });
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        // Same greedy two-tail cover as in is_321_avoiding: prefixes that
        // need a third increasing subsequence are pruned.
        let tails = if v > t1 {
            Some((v, t2))
        } else if v > t2 {
            Some((t1, v))
        } else {
            None
        };
        if let Some((n1, n2)) = tails {
            used[v] = true;
            cur.push(v);
            build_avoiders(n, used, cur, n1, n2, out);
            cur.pop();
            used[v] = false;
        }
    }
}

/// A weakly increasing integer tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RankedTuple {
    values: Vec<i32>,
}

impl RankedTuple {
    pub fn new(values: Vec<i32>) -> Result<Self> {
        if values.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::Argument(format!(
                "tuple {values:?} is not weakly increasing"
            )));
        }
        Ok(RankedTuple { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry at a 1-based index.
    pub fn get(&self, i: usize) -> i32 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Strictly increasing.
    pub fn is_regular(&self) -> bool {
        self.values.windows(2).all(|p| p[0] < p[1])
    }

    pub fn shifted(&self, s: i32) -> RankedTuple {
        RankedTuple {
            values: self.values.iter().map(|v| v + s).collect(),
        }
    }
}

impl fmt::Display for RankedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The multisegment `m^x_{lambda,mu} = sum_i [lambda_i, mu_{x(i)}]`.
///
/// Requires `x` to lie in `Q(lambda, mu)`, i.e. `lambda_i <= mu_{x(i)} + 1`
/// for every `i`; empty segments count toward that membership but are not
/// stored.
pub fn make_msegment(
    lambda: &RankedTuple,
    mu: &RankedTuple,
    x: &Permutation,
) -> Result<Multisegment> {
    let n = lambda.len();
    if mu.len() != n || x.n() != n {
        return Err(Error::Argument(format!(
            "mismatched sizes: |lambda| = {}, |mu| = {}, |x| = {}",
            n,
            mu.len(),
            x.n()
        )));
    }
    let mut segments = Vec::with_capacity(n);
    for i in 1..=n {
        let (a, b) = (lambda.get(i), mu.get(x.apply(i)));
        if a > b + 1 {
            return Err(Error::QMembership {
                index: i,
                lambda: a,
                mu_plus_one: b + 1,
            });
        }
        segments.push(Segment { begin: a, end: b });
    }
    Ok(Multisegment::new(segments))
}

/// A regular pair of ladders in normalized form: ranked tuples
/// `lambda`, `mu` (both strictly increasing, `lambda_n <= mu_1`), the unique
/// permutation `w` with `m1 + m2 = m^w_{lambda,mu}`, and the partition
/// `J1 u J2 = {1,...,n}` recording which factor each segment belongs to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularPairData {
    lambda: RankedTuple,
    mu: RankedTuple,
    w: Permutation,
    j1: BTreeSet<usize>,
    j2: BTreeSet<usize>,
}

impl RegularPairData {
    pub fn new(
        lambda: RankedTuple,
        mu: RankedTuple,
        w: Permutation,
        j1: BTreeSet<usize>,
    ) -> Result<Self> {
        let n = lambda.len();
        if mu.len() != n || w.n() != n {
            return Err(Error::Argument(format!(
                "mismatched sizes: |lambda| = {}, |mu| = {}, |w| = {}",
                n,
                mu.len(),
                w.n()
            )));
        }
        if !lambda.is_regular() {
            return Err(Error::NotRegularPair(format!("lambda = {lambda} is not regular")));
        }
        if !mu.is_regular() {
            return Err(Error::NotRegularPair(format!("mu = {mu} is not regular")));
        }
        if n > 0 && lambda.get(n) > mu.get(1) {
            return Err(Error::NotRegularPair(format!(
                "lambda_n = {} exceeds mu_1 = {}",
                lambda.get(n),
                mu.get(1)
            )));
        }
        if j1.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Argument(format!("J1 = {j1:?} is not a subset of 1..={n}")));
        }
        let j2: BTreeSet<usize> = (1..=n).filter(|i| !j1.contains(i)).collect();
        for part in [&j1, &j2] {
            let members: Vec<usize> = part.iter().copied().collect();
            if members.windows(2).any(|p| w.apply(p[0]) > w.apply(p[1])) {
                return Err(Error::NotRegularPair(format!(
                    "w = {w} is not increasing on {members:?}"
                )));
            }
        }
        for i in 1..=n {
            if lambda.get(i) > mu.get(w.apply(i)) + 1 {
                return Err(Error::QMembership {
                    index: i,
                    lambda: lambda.get(i),
                    mu_plus_one: mu.get(w.apply(i)) + 1,
                });
            }
        }
        Ok(RegularPairData { lambda, mu, w, j1, j2 })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &RankedTuple {
        &self.lambda
    }

    pub fn mu(&self) -> &RankedTuple {
        &self.mu
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

    /// The combined multisegment `m^w_{lambda,mu}`.
    pub fn multisegment(&self) -> Multisegment {
        make_msegment(&self.lambda, &self.mu, &self.w).expect("valid by construction")
    }

    /// The factor supported on the given index set.
    pub fn part(&self, indices: &BTreeSet<usize>) -> Multisegment {
        Multisegment::new(indices.iter().map(|&i| Segment {
            begin: self.lambda.get(i),
            end: self.mu.get(self.w.apply(i)),
        }))
    }

    /// Translate both tuples by a common shift.
    pub fn shifted(&self, s: i32) -> RegularPairData {
        RegularPairData {
            lambda: self.lambda.shifted(s),
            mu: self.mu.shifted(s),
            w: self.w.clone(),
            j1: self.j1.clone(),
            j2: self.j2.clone(),
        }
    }

    /// Shift so the smallest begin point becomes 1; returns the shift applied.
    pub fn normalized(&self) -> (RegularPairData, i32) {
        if self.n() == 0 {
            return (self.clone(), 0);
        }
        let s = 1 - self.lambda.get(1);
        (self.shifted(s), s)
    }
}

/// Recover the combinatorial data of a regular pair of ladders.
///
/// Requires both inputs to be ladders whose combined begin points are
/// pairwise distinct, combined end points pairwise distinct, and whose
/// largest begin does not exceed the smallest end. `J1` collects the rows
/// whose segment belongs to `m1`.
pub fn regular_pair_data(m1: &Multisegment, m2: &Multisegment) -> Result<RegularPairData> {
    if !m1.is_ladder() {
        return Err(Error::NotALadder(format!("first factor {m1}")));
    }
    if !m2.is_ladder() {
        return Err(Error::NotALadder(format!("second factor {m2}")));
    }
    let mut tagged: Vec<(Segment, bool)> = m1
        .segments()
        .iter()
        .map(|&s| (s, true))
        .chain(m2.segments().iter().map(|&s| (s, false)))
        .collect();
    tagged.sort_by_key(|(s, _)| s.begin());
    let n = tagged.len();
    for pair in tagged.windows(2) {
        if pair[0].0.begin() == pair[1].0.begin() {
            return Err(Error::NotRegularPair(format!(
                "begin point {} repeats",
                pair[0].0.begin()
            )));
        }
    }
    let mut ends: Vec<i32> = tagged.iter().map(|(s, _)| s.end()).collect();
    ends.sort_unstable();
    for pair in ends.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::NotRegularPair(format!("end point {} repeats", pair[0])));
        }
    }
    let lambda = RankedTuple::new(tagged.iter().map(|(s, _)| s.begin()).collect())?;
    let mu = RankedTuple::new(ends.clone())?;
    let mut images = Vec::with_capacity(n);
    let mut j1 = BTreeSet::new();
    for (i, (seg, from_m1)) in tagged.iter().enumerate() {
        let pos = ends.binary_search(&seg.end()).expect("end is present") + 1;
        images.push(pos);
        if *from_m1 {
            j1.insert(i + 1);
        }
    }
    let w = Permutation::new(images)?;
    RegularPairData::new(lambda, mu, w, j1)
}
