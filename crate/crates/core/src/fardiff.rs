//! Alpert far-difference representations: unique signed decompositions over
//! shifted Fibonacci numbers with same-sign index gaps of at least 4 and
//! opposite-sign gaps of at least 3, the interval structure given by
//! `S_n = F_n + F_{n-4} + F_{n-8} + ...`, the leading-term counting
//! identities, and the limiting gap law with golden-mean decay.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gap_census::{GapHistogram, TheoryDistribution};
use crate::real::Real;
use crate::recurrence::{kangaroo_spec, SequenceTable};

/// A signed sum of shifted Fibonacci numbers, largest index first. Signs are
/// `+1` / `-1`; the leading sign of a legal representation of a positive
/// integer is `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDecomposition {
    terms: Vec<(usize, i8)>,
}

impl SignedDecomposition {
    pub fn new(terms: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, s) in &terms {
            if i == 0 {
                return Err(Error::InvalidArgument("indices must be >= 1".into()));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {s}")));
            }
        }
        for w in terms.windows(2) {
            if w[1].0 >= w[0].0 {
                return Err(Error::InvalidArgument(
                    "indices must be strictly decreasing".into(),
                ));
            }
        }
        Ok(SignedDecomposition { terms })
    }

    /// `(index, sign)` pairs, largest index first.
    pub fn terms(&self) -> &[(usize, i8)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sign-blind gaps between consecutive indices, largest pair first.
    pub fn gaps(&self) -> Vec<usize> {
        self.terms.windows(2).map(|w| w[0].0 - w[1].0).collect()
    }
}

/// Exact shifted Fibonacci numbers `F_1..F_N` (`1, 2, 3, 5, ...`) together
/// with the interval boundaries `S_1..S_N`. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FarDiffTable {
    f: Vec<BigInt>,
    s: Vec<BigInt>,
}

/// Builds the shifted Fibonacci and `S`-value tables, truncating each
/// `S_n = F_n + F_{n-4} + ...` at index `>= 1`.
pub fn s_table(n: usize) -> Result<FarDiffTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("table length must be >= 1".into()));
    }
    let fib = SequenceTable::generate(&kangaroo_spec(1, 1)?, n.max(2))?;
    let f: Vec<BigInt> = fib.values()[..n.max(2)].to_vec();
    let mut s = Vec::with_capacity(n);
    for r in 1..=n {
        let v = if r > 4 {
            &s[r - 5] + &f[r - 1]
        } else {
            f[r - 1].clone()
        };
        s.push(v);
    }
    Ok(FarDiffTable { f: f[..n].to_vec(), s })
}

impl FarDiffTable {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `F_i` for `1 <= i <= N`.
    pub fn f(&self, i: usize) -> Result<&BigInt> {
        self.f
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::IndexOutOfRange(format!("F_{i} outside table of {}", self.f.len())))
    }

    /// `S_r` with the convention `S_0 = 0`.
    pub fn s(&self, r: usize) -> Result<BigInt> {
        if r == 0 {
            return Ok(BigInt::zero());
        }
        self.s
            .get(r - 1)
            .cloned()
            .ok_or_else(|| Error::IndexOutOfRange(format!("S_{r} outside table of {}", self.s.len())))
    }

    fn covering(&self, m: &BigInt) -> FarDiffTable {
        if self.s.last().map(|v| v >= m) == Some(true) {
            self.clone()
        } else {
            let mut n = self.s.len();
            loop {
                n *= 2;
                let t = s_table(n).expect("n >= 1");
                if t.s.last().unwrap() >= m {
                    return t;
                }
            }
        }
    }
}

/// Far-difference representation of `m >= 1` by interval greed: if
/// `m` lies in `(S_{n-1}, S_n]` the leading term is `+F_n`; the remainder
/// `m - F_n` is decomposed recursively, with all signs flipped when it is
/// negative. The table is extended internally as needed.
pub fn far_decompose(table: &FarDiffTable, m: &BigInt) -> Result<SignedDecomposition> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!("m must be >= 1, got {m}")));
    }
    let t = table.covering(m);
    let mut terms = Vec::new();
    let mut rem = m.clone();
    let mut sign: i8 = 1;
    while !rem.is_zero() {
        // smallest n with S_n >= rem
        let n = t.s.partition_point(|v| v < &rem) + 1;
        terms.push((n, sign));
        rem -= &t.f[n - 1];
        if rem.is_negative() {
            rem = -rem;
            sign = -sign;
        }
    }
    SignedDecomposition::new(terms)
}

/// Checks Alpert legality: leading sign `+`, strictly decreasing indices,
/// same-sign gaps `>= 4`, opposite-sign gaps `>= 3`. Empty is illegal
/// (represents zero, not a positive integer).
pub fn is_far_legal(sd: &SignedDecomposition) -> bool {
    let terms = sd.terms();
    match terms.first() {
        None => false,
        Some(&(_, s)) if s != 1 => false,
        _ => terms.windows(2).all(|w| {
            let gap = w[0].0 - w[1].0;
            if w[0].1 == w[1].1 {
                gap >= 4
            } else {
                gap >= 3
            }
        }),
    }
}

/// Exact value `sum sign * F_index`.
pub fn recompose_far(table: &FarDiffTable, sd: &SignedDecomposition) -> Result<BigInt> {
    let mut v = BigInt::zero();
    for &(i, s) in sd.terms() {
        let f = table.f(i)?;
        if s == 1 {
            v += f;
        } else {
            v -= f;
        }
    }
    Ok(v)
}

/// `N(+F_r) = S_r - S_{r-1}`: the number of integers whose representation
/// leads with `+F_r` (equal by symmetry to the count for `-F_r`).
pub fn count_n_plus(table: &FarDiffTable, r: usize) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    Ok(table.s(r)? - table.s(r - 1)?)
}

/// Enumerated `N(e_i F_i, e_j F_j)`: legal sign-and-index chains whose
/// smallest term is `e_i F_i` and largest is `e_j F_j`. The leading sign is
/// not constrained to `+` (the count is over representations of signed
/// integers, as in the shift identity). Exponential in `j - i`; intended for
/// small indices.
pub fn count_pair(i: usize, sign_i: i8, j: usize, sign_j: i8) -> Result<BigInt> {
    if i == 0 || j == 0 || i > j {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= j, got i = {i}, j = {j}"
        )));
    }
    for s in [sign_i, sign_j] {
        if s != 1 && s != -1 {
            return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {s}")));
        }
    }
    if i == j {
        return Ok(if sign_i == sign_j { BigInt::one() } else { BigInt::zero() });
    }
    fn chains(cur: usize, cur_sign: i8, j: usize, sign_j: i8) -> u64 {
        if cur == j {
            return (cur_sign == sign_j) as u64;
        }
        let mut total = 0u64;
        for next in cur + 3..=j {
            // same-sign steps need a gap of at least 4, opposite at least 3
            if next - cur >= 4 {
                total += chains(next, cur_sign, j, sign_j);
            }
            total += chains(next, -cur_sign, j, sign_j);
        }
        total
    }
    Ok(BigInt::from(chains(i, sign_i, j, sign_j)))
}

/// Sign-blind gap census over all `m` in `(S_{n-1}, S_n]`, by decomposing
/// each integer in the interval. The histogram's `top` is `n`.
pub fn far_census(table: &FarDiffTable, n: usize, cap: u64) -> Result<GapHistogram> {
    if n == 0 {
        return Err(Error::InvalidArgument("interval index must be >= 1".into()));
    }
    let t = if table.len() >= n { table.clone() } else { s_table(n)? };
    let width = t.s(n)? - t.s(n - 1)?;
    if width > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            cap,
            detail: format!("far-difference census interval at n = {n} has {width} integers"),
        });
    }
    // the S-values for n <= ~30 fit comfortably in machine words
    let f: Vec<u128> = t.f[..n]
        .iter()
        .map(|v| v.to_u128().ok_or_else(|| Error::InvalidArgument(format!(
            "interval index n = {n} too large for the census fast path"
        ))))
        .collect::<Result<_>>()?;
    let s: Vec<u128> = t.s[..n]
        .iter()
        .map(|v| v.to_u128().unwrap())
        .collect();
    let lo = if n == 1 { 0 } else { s[n - 2] };
    let hi = s[n - 1];
    let mut counts: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut merged = vec![0u64; n + 1];
    for m in lo + 1..=hi {
        let mut rem = m as i128;
        let mut prev: Option<usize> = None;
        while rem != 0 {
            let (mag, flip) = if rem < 0 { ((-rem) as u128, true) } else { (rem as u128, false) };
            let k = s.partition_point(|&v| v < mag) + 1;
            if let Some(p) = prev {
                merged[p - k] += 1;
            }
            prev = Some(k);
            rem = if flip {
                f[k - 1] as i128 - mag as i128
            } else {
                mag as i128 - f[k - 1] as i128
            };
        }
    }
    for (j, &c) in merged.iter().enumerate() {
        if c > 0 {
            counts.insert(j, BigInt::from(c));
        }
    }
    Ok(GapHistogram::new(n, counts))
}

/// Limiting gap law for far-difference representations:
/// `P(j) = 0` for `j <= 2`, `P(3) = 5 a1 / (phi^2 (phi^4 - 1)) = phi^{-3}`,
/// and `P(j) = 10 a1 phi / (phi^4 - 1) * phi^{-j} = 2 phi^{-j}` for `j >= 4`,
/// with `a1 = phi / sqrt(5)`.
pub fn far_theory<F: Real>(jmax: usize) -> Result<TheoryDistribution<F>> {
    if jmax < 3 {
        return Err(Error::InvalidArgument(format!("jmax must be >= 3, got {jmax}")));
    }
    let five = F::from_f64(5.0).unwrap();
    let phi = (F::one() + five.sqrt()) / F::from_f64(2.0).unwrap();
    let a1 = phi / five.sqrt();
    let phi4m1 = phi.powi(4) - F::one();
    let p3 = five * a1 / (phi * phi * phi4m1);
    let coef = F::from_f64(10.0).unwrap() * a1 * phi / phi4m1;
    Ok(TheoryDistribution::from_parts(3, p3, coef, phi, jmax, true))
}

/// Theoretical total gap count over `(S_{n-1}, S_n]`:
/// `(n/5 + (366 - 118 sqrt(5))/20) * (S_n - S_{n-1})`.
pub fn far_y_theory(table: &FarDiffTable, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("interval index must be >= 1".into()));
    }
    let t = if table.len() >= n { table.clone() } else { s_table(n)? };
    let width = (t.s(n)? - t.s(n - 1)?).to_f64().unwrap_or(f64::INFINITY);
    let c = (366.0 - 118.0 * 5f64.sqrt()) / 20.0;
    Ok((n as f64 / 5.0 + c) * width)
}
