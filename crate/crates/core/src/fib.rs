//! The Ringel–Fahr array `d[i][c]`, its weights, and the even-index
//! Fibonacci identities read off its rows.
//!
//! Entries are stored by column `c`, counted from the left edge of the
//! triangle drawn with the diagonal of ones on the right: `d[i][i] = 1`,
//! and column 0 carries `1, 2, 7, 29, ...` on even rows.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::nakayama::{count_homological, MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibError {
    #[error("array has rows 0..={have}, row {need} needed")]
    InsufficientRows { need: usize, have: usize },
    #[error("column {c} out of range for row {i}")]
    ColumnOutOfRange { i: usize, c: usize },
    #[error("weight ({i},{c}) needs triangle rows beyond n = {max}", max = MAX_N)]
    WeightRange { i: usize, c: usize },
    #[error("weight ({i},{c}): piecewise value {literal} at k = {k} differs from {closed}")]
    WeightMismatch {
        i: usize,
        c: usize,
        k: usize,
        literal: BigInt,
        closed: BigInt,
    },
    #[error("k = {k} is not admissible for weight ({i},{c})")]
    KOutOfRange { i: usize, c: usize, k: usize },
    #[error("hook rule needs i >= 2, got {0}")]
    HookRange(usize),
}

pub type Result<T> = std::result::Result<T, FibError>;

/// Lower-triangular array `rows[i][c]`, `0 <= c <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibArray {
    rows: Vec<Vec<BigInt>>,
}

impl FibArray {
    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    /// `d[i][c]`, zero outside the triangle.
    pub fn get(&self, i: isize, c: isize) -> BigInt {
        if i < 0 || c < 0 || c > i || i as usize > self.max_row() {
            return BigInt::zero();
        }
        self.rows[i as usize][c as usize].clone()
    }

    pub fn at(&self, i: usize, c: usize) -> BigInt {
        self.get(i as isize, c as isize)
    }

    /// Nonzero entries of column `c`: rows `c, c + 2, c + 4, ...`.
    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (c..=self.max_row())
            .step_by(2)
            .map(|i| self.at(i, c))
            .collect()
    }

    fn require(&self, row: usize) -> Result<()> {
        if row > self.max_row() {
            Err(FibError::InsufficientRows {
                need: row,
                have: self.max_row(),
            })
        } else {
            Ok(())
        }
    }
}

/// Rows `0..=max_row`: ones on the diagonal, zeros off the parity
/// checkerboard, `d[2k][0] = 3 d[2k-1][1] - d[2k-2][0]`, and otherwise
/// `d[r][c] = 2 d[r-1][c+1] + d[r-1][c-1] - d[r-2][c]`.
pub fn d_array(max_row: usize) -> FibArray {
    let mut arr = FibArray { rows: Vec::new() };
    for r in 0..=max_row {
        let mut row = vec![BigInt::zero(); r + 1];
        row[r] = BigInt::one();
        let (prev, prev2) = (r as isize - 1, r as isize - 2);
        for (c, slot) in row.iter_mut().enumerate().take(r) {
            if (r - c) % 2 == 1 {
                continue;
            }
            let ci = c as isize;
            *slot = if c == 0 {
                BigInt::from(3) * arr.get(prev, 1) - arr.get(prev2, 0)
            } else {
                BigInt::from(2) * arr.get(prev, ci + 1) + arr.get(prev, ci - 1) - arr.get(prev2, ci)
            };
        }
        arr.rows.push(row);
    }
    arr
}

/// `sum_{k=0}^{i-2} d[i+k][i-k] + d[2i-2][0] == d[2i-1][1]`.
pub fn hook_check(arr: &FibArray, i: usize) -> Result<bool> {
    if i < 2 {
        return Err(FibError::HookRange(i));
    }
    arr.require(2 * i - 1)?;
    let mut lhs = arr.at(2 * i - 2, 0);
    for k in 0..=i - 2 {
        lhs += arr.at(i + k, i - k);
    }
    Ok(lhs == arr.at(2 * i - 1, 1))
}

/// `|T_r|`, the size of the sphere of radius `r` in the 3-regular tree.
pub fn sphere_size(r: usize) -> BigInt {
    if r == 0 {
        BigInt::one()
    } else {
        BigInt::from(3) << (r - 1)
    }
}

/// Weight of entry `(i, c)` in closed form: `|T_c|` on the parity
/// checkerboard, `0` off it.
pub fn weight_closed(i: usize, c: usize) -> BigInt {
    if c > i || (i - c) % 2 == 1 {
        BigInt::zero()
    } else {
        sphere_size(c)
    }
}

/// Which branch of the piecewise weight definition applies to `(i, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightCase {
    /// `i` odd, `i - c` even, `c >= 3`: `|HI_{2s+2}^k| - 2^(2s-k+1)`.
    OddRow { s: usize },
    /// `i` even, `i - c` even, `c >= 2`: `|HI_{2s+1}^k| - 2^(2s-k)`.
    EvenRow { s: usize },
    /// `i` odd, `c = 1`.
    Three,
    /// `i` even, `c = 0`.
    One,
    /// `i - c` odd.
    Zero,
    /// `i` odd, `c = 0`: no branch covers it; valued 0.
    Uncovered,
}

pub fn weight_case(i: usize, c: usize) -> WeightCase {
    let j = i - c;
    let s = c / 2;
    if j % 2 == 1 {
        if c == 0 {
            WeightCase::Uncovered
        } else {
            WeightCase::Zero
        }
    } else if c == 0 {
        WeightCase::One
    } else if i % 2 == 1 {
        if c == 1 {
            WeightCase::Three
        } else {
            WeightCase::OddRow { s }
        }
    } else {
        WeightCase::EvenRow { s }
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Piecewise weight evaluated at one admissible `k`, or `None` when the
/// branch does not involve `k`.
fn weight_literal_at(case: WeightCase, k: usize) -> Result<Option<BigInt>> {
    let hi = |n: usize| -> Result<BigInt> {
        count_homological(n, k)
            .map(BigInt::from)
            .map_err(|_| FibError::WeightRange { i: n, c: k })
    };
    Ok(match case {
        WeightCase::OddRow { s } => Some(hi(2 * s + 2)? - pow2(2 * s + 1 - k)),
        WeightCase::EvenRow { s } => Some(hi(2 * s + 1)? - pow2(2 * s - k)),
        _ => None,
    })
}

/// Admissible `k` for the triangle row a branch reads from.
fn k_range(case: WeightCase) -> Vec<usize> {
    match case {
        WeightCase::OddRow { s } => (2..=2 * s + 1).collect(),
        WeightCase::EvenRow { s } => (2..=2 * s).collect(),
        _ => Vec::new(),
    }
}

/// The `k` values the piecewise branch for `(i, c)` may be fed; empty when
/// the branch is a constant.
pub fn admissible_k(i: usize, c: usize) -> Vec<usize> {
    if c > i {
        return Vec::new();
    }
    k_range(weight_case(i, c))
}

/// The piecewise weight at `(i, c)` evaluated with triangle column `k`
/// (ignored by the constant branches), without any cross-check.
pub fn weight_literal(i: usize, c: usize, k: usize) -> Result<BigInt> {
    if c > i {
        return Err(FibError::ColumnOutOfRange { i, c });
    }
    let case = weight_case(i, c);
    Ok(match case {
        WeightCase::Three => BigInt::from(3),
        WeightCase::One => BigInt::one(),
        WeightCase::Zero | WeightCase::Uncovered => BigInt::zero(),
        _ => {
            if !k_range(case).contains(&k) {
                return Err(FibError::KOutOfRange { i, c, k });
            }
            weight_literal_at(case, k)?.expect("branch uses k")
        }
    })
}

/// Piecewise weight, evaluated at every admissible `k` and checked
/// against [`weight_closed`].
pub fn weight(i: usize, c: usize) -> Result<BigInt> {
    if c > i {
        return Err(FibError::ColumnOutOfRange { i, c });
    }
    let case = weight_case(i, c);
    let closed = weight_closed(i, c);
    let literal = match case {
        WeightCase::Three => BigInt::from(3),
        WeightCase::One => BigInt::one(),
        WeightCase::Zero | WeightCase::Uncovered => BigInt::zero(),
        WeightCase::OddRow { .. } | WeightCase::EvenRow { .. } => {
            let nrow = 2 * (c / 2) + if i % 2 == 1 { 2 } else { 1 };
            if nrow > MAX_N {
                return Err(FibError::WeightRange { i, c });
            }
            let mut first: Option<BigInt> = None;
            for k in k_range(case) {
                let v = weight_literal_at(case, k)?.expect("branch uses k");
                if v != closed {
                    return Err(FibError::WeightMismatch {
                        i,
                        c,
                        k,
                        literal: v,
                        closed,
                    });
                }
                first.get_or_insert(v);
            }
            first.expect("k range is nonempty")
        }
    };
    if literal != closed {
        return Err(FibError::WeightMismatch {
            i,
            c,
            k: 0,
            literal,
            closed,
        });
    }
    Ok(literal)
}

/// `f_m` with `f_0 = 0`, `f_1 = 1`.
pub fn fibonacci(m: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTerm {
    pub column: usize,
    pub weight: BigInt,
    pub entry: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibReport {
    /// `2i + 2`.
    pub index: usize,
    pub value: BigInt,
    pub reference: BigInt,
    pub terms: Vec<PartitionTerm>,
}

impl FibReport {
    pub fn matches(&self) -> bool {
        self.value == self.reference
    }

    /// `value = w*d + w*d + ...` over all columns, zeros included.
    pub fn breakdown(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*{}", t.entry, t.weight))
            .collect();
        format!("f_{} = {} = {}", self.index, self.value, parts.join(" + "))
    }
}

/// `f_{2i+2} = sum_c w(i, c) d[i][c]`.
pub fn fib_partition_with(arr: &FibArray, i: usize) -> Result<FibReport> {
    arr.require(i)?;
    let mut value = BigInt::zero();
    let mut terms = Vec::with_capacity(i + 1);
    for c in 0..=i {
        let w = weight(i, c)?;
        let d = arr.at(i, c);
        value += &w * &d;
        terms.push(PartitionTerm {
            column: c,
            weight: w,
            entry: d,
        });
    }
    Ok(FibReport {
        index: 2 * i + 2,
        value,
        reference: fibonacci(2 * i + 2),
        terms,
    })
}

pub fn fib_partition(i: usize) -> Result<FibReport> {
    fib_partition_with(&d_array(i), i)
}

/// `a_t[r]`: `d[2t-1][r]` for odd `r`, `d[2t][r]` for even `r`.
pub fn tree_value(arr: &FibArray, t: usize, r: usize) -> BigInt {
    if r % 2 == 1 {
        if t == 0 {
            BigInt::zero()
        } else {
            arr.at(2 * t - 1, r)
        }
    } else {
        arr.at(2 * t, r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingelFahr {
    pub t: usize,
    /// `sum_{r odd} |T_r| a_t[r]`; absent for `t = 0`.
    pub f_4t: Option<BigInt>,
    /// `sum_{r even} |T_r| a_t[r]`.
    pub f_4t_plus_2: BigInt,
}

pub fn fib_ringel_fahr_with(arr: &FibArray, t: usize) -> Result<RingelFahr> {
    arr.require(2 * t)?;
    let f_4t = (t >= 1).then(|| {
        (1..2 * t)
            .step_by(2)
            .map(|r| sphere_size(r) * tree_value(arr, t, r))
            .sum()
    });
    let f_4t_plus_2 = (0..=2 * t)
        .step_by(2)
        .map(|r| sphere_size(r) * tree_value(arr, t, r))
        .sum();
    Ok(RingelFahr {
        t,
        f_4t,
        f_4t_plus_2,
    })
}

pub fn fib_ringel_fahr(t: usize) -> Result<RingelFahr> {
    fib_ringel_fahr_with(&d_array(2 * t), t)
}

/// `3 sum_{m >= first_m} 2^(2m) a_t[2m+1]`.
pub fn expanded_odd_sum(arr: &FibArray, t: usize, first_m: usize) -> BigInt {
    let mut total = BigInt::zero();
    let mut m = first_m;
    while 2 * m + 1 < 2 * t {
        total += BigInt::from(3) * pow2(2 * m) * tree_value(arr, t, 2 * m + 1);
        m += 1;
    }
    total
}

/// `a_t[0] + 3 sum_{m >= 1} 2^(2m-1) a_t[2m]`.
pub fn expanded_even_sum(arr: &FibArray, t: usize) -> BigInt {
    let mut total = tree_value(arr, t, 0);
    for m in 1..=t {
        total += BigInt::from(3) * pow2(2 * m - 1) * tree_value(arr, t, 2 * m);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn array_entries() {
        let d = d_array(9);
        assert_eq!(d.column(0)[..4], ints(&[1, 2, 7, 29])[..]);
        assert_eq!(d.column(1)[..4], ints(&[1, 3, 12, 53])[..]);
        assert_eq!(d.at(4, 2), BigInt::from(4));
        assert_eq!(d.at(6, 2), BigInt::from(18));
        assert_eq!(d.at(7, 3), BigInt::from(25));
        assert_eq!(d.at(8, 0), BigInt::from(130));
        assert_eq!(d.at(9, 1), BigInt::from(247));
        assert_eq!(d.at(5, 2), BigInt::zero());
        assert_eq!(d.get(3, 4), BigInt::zero());
    }

    #[test]
    fn hooks() {
        let d = d_array(40);
        for i in 2..=20 {
            assert!(hook_check(&d, i).unwrap(), "i = {i}");
        }
        assert!(hook_check(&d, 21).is_err());
        assert!(hook_check(&d, 1).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(3, 1).unwrap(), BigInt::from(3));
        assert_eq!(weight(4, 0).unwrap(), BigInt::one());
        assert_eq!(weight(3, 3).unwrap(), BigInt::from(12));
        assert_eq!(weight(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(weight(4, 1).unwrap(), BigInt::zero());
        assert_eq!(weight_case(5, 0), WeightCase::Uncovered);
        assert_eq!(weight(5, 0).unwrap(), BigInt::zero());
        assert!(weight(2, 3).is_err());
        assert!(matches!(weight(70, 64), Err(FibError::WeightRange { .. })));
        assert_eq!(admissible_k(5, 3), vec![2, 3]);
        assert_eq!(weight_literal(5, 3, 3).unwrap(), BigInt::from(12));
        assert!(weight_literal(5, 3, 4).is_err());
    }

    #[test]
    fn partitions() {
        let r = fib_partition(3).unwrap();
        assert_eq!(r.value, BigInt::from(21));
        assert_eq!(r.breakdown(), "f_8 = 21 = 0*0 + 3*3 + 0*0 + 1*12");
        let r = fib_partition(4).unwrap();
        assert_eq!(r.value, BigInt::from(55));
        assert_eq!(fib_partition(0).unwrap().value, BigInt::one());
        for i in 0..=30 {
            assert!(fib_partition(i).unwrap().matches(), "i = {i}");
        }
    }

    #[test]
    fn ringel_fahr() {
        let rf = fib_ringel_fahr(2).unwrap();
        assert_eq!(rf.f_4t, Some(BigInt::from(21)));
        assert_eq!(rf.f_4t_plus_2, BigInt::from(55));
        let rf = fib_ringel_fahr(1).unwrap();
        assert_eq!(rf.f_4t, Some(BigInt::from(3)));
        assert_eq!(rf.f_4t_plus_2, BigInt::from(8));
        let rf = fib_ringel_fahr(0).unwrap();
        assert_eq!(rf.f_4t, None);
        assert_eq!(rf.f_4t_plus_2, BigInt::one());
    }

    #[test]
    fn expanded_forms() {
        let d = d_array(30);
        for t in 1..=15 {
            let rf = fib_ringel_fahr_with(&d, t).unwrap();
            assert_eq!(Some(expanded_odd_sum(&d, t, 0)), rf.f_4t);
            assert_eq!(expanded_even_sum(&d, t), rf.f_4t_plus_2);
            assert_ne!(Some(expanded_odd_sum(&d, t, 1)), rf.f_4t);
        }
    }

    #[test]
    fn fibonacci_reference() {
        let first: Vec<BigInt> = (0..8).map(fibonacci).collect();
        assert_eq!(first, ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
    }
}
