//! Nakayama algebras over the linear quiver `1 -> 2 -> ... -> n` with a
//! single zero relation of length `k` from `i` to `j = i + k`.
//!
//! Indecomposable modules are intervals `[a, b]`. Everything here is
//! interval arithmetic: projectives, Hom dimensions, trace ideals of
//! projective sums, and the combinatorial classification of those ideals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NakayamaError {
    #[error(
        "invalid presentation (n={n}, i={i}, k={k}): need n >= 3, 2 <= k <= n-1, 1 <= i, i+k <= n"
    )]
    InvalidPresentation { n: usize, i: usize, k: usize },
    #[error("vertex {t} out of range 1..={n}")]
    VertexOutOfRange { t: usize, n: usize },
    #[error("counts need 3 <= n <= 63 and 2 <= k <= n-1, got n={n}, k={k}")]
    CountRange { n: usize, k: usize },
    #[error("cannot parse subset {0:?}")]
    BadSubset(String),
}

pub type Result<T> = std::result::Result<T, NakayamaError>;

/// Largest `n` for which subset masks and counts fit in `u64`.
pub const MAX_N: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NakayamaPresentation {
    n: usize,
    i: usize,
    k: usize,
}

impl NakayamaPresentation {
    pub fn new(n: usize, i: usize, k: usize) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) || !(2..n).contains(&k) || i < 1 || i + k > n {
            return Err(NakayamaError::InvalidPresentation { n, i, k });
        }
        Ok(NakayamaPresentation { n, i, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn j(&self) -> usize {
        self.i + self.k
    }

    /// Every valid presentation with `n` vertices, ordered by `(k, i)`.
    pub fn all_with(n: usize) -> Vec<NakayamaPresentation> {
        let mut out = Vec::new();
        if n < 3 {
            return out;
        }
        for k in 2..n {
            for i in 1..=n - k {
                out.push(NakayamaPresentation { n, i, k });
            }
        }
        out
    }

    fn check_vertex(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.n {
            Err(NakayamaError::VertexOutOfRange { t, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Interval `[a, b]` is a module iff it does not contain the relation path.
    pub fn is_module(&self, m: IntervalModule) -> bool {
        match m {
            IntervalModule::Zero => true,
            IntervalModule::Interval { a, b } => {
                1 <= a && a <= b && b <= self.n && !(a <= self.i && b >= self.j())
            }
        }
    }
}

impl fmt::Display for NakayamaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A(n={}, i={}, j={}, k={})",
            self.n,
            self.i,
            self.j(),
            self.k
        )
    }
}

/// Uniserial module supported on the vertex interval `[a, b]`, top at `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalModule {
    Zero,
    Interval { a: usize, b: usize },
}

impl IntervalModule {
    pub fn new(a: usize, b: usize) -> Self {
        IntervalModule::Interval { a, b }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, IntervalModule::Zero)
    }

    pub fn bounds(&self) -> Option<(usize, usize)> {
        match *self {
            IntervalModule::Zero => None,
            IntervalModule::Interval { a, b } => Some((a, b)),
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds().map_or(0, |(a, b)| b - a + 1)
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalModule::Zero => f.write_str("0"),
            IntervalModule::Interval { a, b } => write!(f, "[{a},{b}]"),
        }
    }
}

/// A subset of `{1, ..., n}`, stored as a bit mask (bit `t-1` for vertex `t`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSpec(u64);

impl SubsetSpec {
    pub fn empty() -> Self {
        SubsetSpec(0)
    }

    pub fn from_mask(mask: u64) -> Self {
        SubsetSpec(mask)
    }

    pub fn from_members(members: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = 0u64;
        for t in members {
            debug_assert!((1..=MAX_N).contains(&t), "subset member {t} out of range");
            mask |= 1 << (t - 1);
        }
        SubsetSpec(mask)
    }

    pub fn full(n: usize) -> Self {
        SubsetSpec(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, t: usize) -> bool {
        (1..=64).contains(&t) && self.0 >> (t - 1) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn members(&self) -> Vec<usize> {
        (1..=64).filter(|&t| self.contains(t)).collect()
    }

    pub fn with(&self, t: usize) -> Self {
        SubsetSpec(self.0 | 1 << (t - 1))
    }

    /// Smallest member in `[lo, hi]`.
    pub fn min_in(&self, lo: usize, hi: usize) -> Option<usize> {
        (lo..=hi).find(|&t| self.contains(t))
    }

    /// All `2^n` subsets of `{1..n}` in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetSpec> {
        (0..1u64 << n).map(SubsetSpec)
    }

    pub fn is_within(&self, n: usize) -> bool {
        self.0 & !SubsetSpec::full(n).0 == 0
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, t) in self.members().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

/// Parses `2,3`, `{2,3}` or the empty string.
impl FromStr for SubsetSpec {
    type Err = NakayamaError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if inner.is_empty() {
            return Ok(SubsetSpec::empty());
        }
        let mut members = Vec::new();
        for part in inner.split(',') {
            let t: usize = part
                .trim()
                .parse()
                .map_err(|_| NakayamaError::BadSubset(s.to_string()))?;
            if t == 0 || t > MAX_N {
                return Err(NakayamaError::BadSubset(s.to_string()));
            }
            members.push(t);
        }
        Ok(SubsetSpec::from_members(members))
    }
}

/// The trace ideal as a right module: component `t` is its intersection
/// with `P(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceIdeal {
    pub components: Vec<IntervalModule>,
}

impl TraceIdeal {
    pub fn component(&self, t: usize) -> IntervalModule {
        self.components[t - 1]
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(IntervalModule::dim).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Homological,
    NonHomological,
}

impl Classification {
    pub fn is_homological(self) -> bool {
        self == Classification::Homological
    }

    pub fn from_bool(homological: bool) -> Self {
        if homological {
            Classification::Homological
        } else {
            Classification::NonHomological
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Homological => "Homological",
            Classification::NonHomological => "NonHomological",
        })
    }
}

/// `P(t)`: `[t, j-1]` when `t <= i`, otherwise `[t, n]`.
pub fn projective(alg: &NakayamaPresentation, t: usize) -> Result<IntervalModule> {
    alg.check_vertex(t)?;
    let end = if t <= alg.i { alg.j() - 1 } else { alg.n };
    Ok(IntervalModule::new(t, end))
}

/// `dim Hom([a,b], [c,d])`, which is 1 iff `c <= a <= d <= b`.
pub fn hom_dim(m: IntervalModule, n: IntervalModule) -> usize {
    match (m.bounds(), n.bounds()) {
        (Some((a, b)), Some((c, d))) => usize::from(c <= a && a <= d && d <= b),
        _ => 0,
    }
}

pub fn trace_ideal(alg: &NakayamaPresentation, s: SubsetSpec) -> TraceIdeal {
    let components = (1..=alg.n)
        .map(|t| {
            let target = projective(alg, t).expect("vertex in range");
            let (_, end) = target.bounds().expect("projectives are nonzero");
            let start = (1..=alg.n)
                .filter(|&a| s.contains(a))
                .find(|&a| hom_dim(projective(alg, a).expect("vertex in range"), target) == 1);
            match start {
                Some(a) => IntervalModule::new(a, end),
                None => IntervalModule::Zero,
            }
        })
        .collect();
    TraceIdeal { components }
}

/// Components `P(t) / T_t` of `A / I_S`.
pub fn quotient(alg: &NakayamaPresentation, ideal: &TraceIdeal) -> Vec<IntervalModule> {
    (1..=alg.n)
        .map(|t| {
            let (_, end) = projective(alg, t)
                .expect("vertex in range")
                .bounds()
                .unwrap();
            match ideal.component(t).bounds() {
                None => IntervalModule::new(t, end),
                Some((m, _)) if m == t => IntervalModule::Zero,
                Some((m, _)) => IntervalModule::new(t, m - 1),
            }
        })
        .collect()
}

/// `NonHomological` iff `S` meets the open interval `(i, j)` while
/// containing neither `i` nor `j`.
pub fn classify_subset(alg: &NakayamaPresentation, s: SubsetSpec) -> Classification {
    let (i, j) = (alg.i, alg.j());
    let interior = (i + 1..j).any(|t| s.contains(t));
    Classification::from_bool(!(interior && !s.contains(i) && !s.contains(j)))
}

/// Classification of every subset of `{1..n}`, in mask order. Runs on the
/// current rayon pool.
pub fn sweep(alg: &NakayamaPresentation) -> Vec<(SubsetSpec, Classification)> {
    (0..1u64 << alg.n)
        .into_par_iter()
        .map(|m| {
            let s = SubsetSpec::from_mask(m);
            (s, classify_subset(alg, s))
        })
        .collect()
}

fn check_count_range(n: usize, k: usize) -> Result<()> {
    if !(3..=MAX_N).contains(&n) || !(2..n).contains(&k) {
        Err(NakayamaError::CountRange { n, k })
    } else {
        Ok(())
    }
}

/// `2^(n-2) - 2^(n-k-1)`.
pub fn count_non_homological(n: usize, k: usize) -> Result<u64> {
    check_count_range(n, k)?;
    Ok((1u64 << (n - 2)) - (1u64 << (n - k - 1)))
}

/// `2^n - count_non_homological(n, k) = 3 * 2^(n-2) + 2^(n-k-1)`.
pub fn count_homological(n: usize, k: usize) -> Result<u64> {
    let nh = count_non_homological(n, k)?;
    Ok((1u64 << n).wrapping_sub(nh))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Recurrence,
}

/// One row of a triangle; `values[idx]` is the entry at `k = idx + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleRow {
    pub n: usize,
    pub values: Vec<u64>,
}

impl TriangleRow {
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.values.iter().enumerate().map(|(idx, &v)| (idx + 2, v))
    }

    pub fn sum(&self) -> BigInt {
        self.values.iter().map(|&v| BigInt::from(v)).sum()
    }
}

pub fn nhit_row(n: usize, method: Method) -> Result<TriangleRow> {
    check_count_range(n, 2)?;
    let values = match method {
        Method::ClosedForm => (2..n)
            .map(|k| count_non_homological(n, k))
            .collect::<Result<Vec<_>>>()?,
        Method::Recurrence => recurrence_row(n),
    };
    Ok(TriangleRow { n, values })
}

/// `T(n,k) = T(n,k-1) + T(n-1,k-1) - T(n-1,k-2)` from `T(n,2) = 2^(n-3)`,
/// with `T(., k) = 0` for `k <= 1`.
fn recurrence_row(n: usize) -> Vec<u64> {
    // rows indexed by k, with slots for k = 0 and 1
    let mut prev: Vec<u64> = vec![0, 0, 1];
    for m in 4..=n {
        let mut row = vec![0u64; m];
        row[2] = 1 << (m - 3);
        for k in 3..m {
            row[k] = row[k - 1] + prev[k - 1] - prev[k - 2];
        }
        prev = row;
    }
    prev.split_off(2)
}

pub fn hit_row(n: usize) -> Result<TriangleRow> {
    let nh = nhit_row(n, Method::ClosedForm)?;
    Ok(TriangleRow {
        n,
        values: nh
            .values
            .iter()
            .map(|&v| (1u64 << n).wrapping_sub(v))
            .collect(),
    })
}

/// Sum of the `n`-th NHIT row.
pub fn row_sum(n: usize) -> Result<BigInt> {
    Ok(nhit_row(n, Method::ClosedForm)?.sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Entries with `n + k` constant, starting at `n + k = 5`.
    AntiDiagonal,
    /// Entries with `n - k` constant, starting at `n - k = 1`.
    Diagonal,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::AntiDiagonal => "n+k constant",
            Direction::Diagonal => "n-k constant",
        }
    }
}

/// Diagonal sums over rows `3..=max_n`. Anti-diagonals are emitted only
/// while complete within those rows. Diagonals never terminate, so each
/// sum is truncated at row `max_n`.
pub fn diagonal_sums(max_n: usize, direction: Direction) -> Result<Vec<BigInt>> {
    check_count_range(max_n, 2)?;
    let mut out = Vec::new();
    match direction {
        Direction::AntiDiagonal => {
            for s in 5..=max_n + 2 {
                let mut total = BigInt::from(0);
                for k in 2..s {
                    let n = s - k;
                    if n > k && n <= max_n {
                        total += count_non_homological(n, k)?;
                    }
                }
                out.push(total);
            }
        }
        Direction::Diagonal => {
            for d in 1..=max_n - 2 {
                let mut total = BigInt::from(0);
                for k in 2..=max_n - d {
                    total += count_non_homological(k + d, k)?;
                }
                out.push(total);
            }
        }
    }
    Ok(out)
}
