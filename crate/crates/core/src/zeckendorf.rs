//! Legal (generalized Zeckendorf) decompositions: the greedy decomposer, the
//! recursive legality predicate, the Kangaroo fast path, exhaustive
//! enumeration, and summand-count statistics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::recurrence::{KangarooParams, RecurrenceSpec, SequenceTable};

/// Default guard on the number of candidate sets an exhaustive enumeration
/// may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// A decomposition with top index `n`: the value is `sum a_i * G_{n+1-i}`
/// with `a_1 > 0`. For Kangaroo recurrences every `a_i` is 0 or 1 and the
/// decomposition is equivalently a strictly decreasing index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    top: usize,
    coeffs: Vec<u64>,
}

impl Decomposition {
    /// Builds from the coefficient string `a_1..a_m` (`a_1` multiplies `G_top`).
    pub fn from_coeffs(top: usize, coeffs: Vec<u64>) -> Result<Self> {
        if top == 0 || coeffs.is_empty() || coeffs[0] == 0 {
            return Err(Error::InvalidArgument(
                "decomposition requires top index >= 1 and a_1 > 0".into(),
            ));
        }
        if coeffs.len() > top {
            return Err(Error::InvalidArgument(
                "coefficient string longer than the top index".into(),
            ));
        }
        Ok(Decomposition { top, coeffs })
    }

    /// Builds from a strictly decreasing index set (all coefficients 1).
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] <= w[1]) || indices.contains(&0) {
            return Err(Error::InvalidArgument(
                "index set must be non-empty, strictly decreasing and positive".into(),
            ));
        }
        let top = indices[0];
        let mut coeffs = vec![0u64; top];
        for &i in indices {
            coeffs[top - i] = 1;
        }
        // trim trailing zeros below the smallest index
        let last = indices[indices.len() - 1];
        coeffs.truncate(top - last + 1);
        Ok(Decomposition { top, coeffs })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Coefficients `a_1..a_m`; `a_i` multiplies `G_{top+1-i}`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Full-length coefficient string padded with zeros down to `G_1`.
    pub fn coeffs_full(&self) -> Vec<u64> {
        let mut c = self.coeffs.clone();
        c.resize(self.top, 0);
        c
    }

    /// Decreasing index view, available when all coefficients are 0/1.
    pub fn indices(&self) -> Option<Vec<usize>> {
        if self.coeffs.iter().any(|&a| a > 1) {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &a)| a == 1)
                .map(|(i, _)| self.top - i)
                .collect(),
        )
    }

    pub fn summand_count(&self) -> u64 {
        self.coeffs.iter().sum()
    }
}

/// Greedy decomposition of `m >= 1`. The table is extended internally when it
/// is too short to bracket `m`.
pub fn greedy_decompose(table: &SequenceTable, m: &BigInt) -> Result<Decomposition> {
    if m < &BigInt::one() {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let owned;
    let t = if table.term(table.len())? > m {
        table
    } else {
        owned = table.extended_past(m);
        &owned
    };
    // top index: largest n with G_n <= m
    let values = t.values();
    let top = match values.binary_search(m) {
        Ok(i) => i + 1,
        Err(i) => i, // i >= 1 since G_1 = 1 <= m
    };
    let mut coeffs = vec![0u64; top];
    let mut rem = m.clone();
    for n in (1..=top).rev() {
        let gn = &values[n - 1];
        while &rem >= gn {
            coeffs[top - n] += 1;
            rem -= gn;
        }
        if rem.is_zero() {
            break;
        }
    }
    debug_assert!(rem.is_zero());
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Decomposition::from_coeffs(top, coeffs)
}

/// Exact value `sum a_i * G_{top+1-i}`.
pub fn recompose(table: &SequenceTable, d: &Decomposition) -> Result<BigInt> {
    if d.top() > table.len() {
        return Err(Error::IndexOutOfRange(format!(
            "top index {} exceeds table length {}",
            d.top(),
            table.len()
        )));
    }
    let mut v = BigInt::zero();
    for (i, &a) in d.coeffs().iter().enumerate() {
        if a != 0 {
            v += BigInt::from(a) * table.term(d.top() - i)?;
        }
    }
    Ok(v)
}

/// Recursive legality predicate from the generalized Zeckendorf theorem.
///
/// A string is legal iff it is empty, or it is the truncated coefficient
/// prefix (`m < L` with `a_i = c_i` throughout), or it agrees with `c` up to
/// some position `s` where `a_s < c_s`, followed by zeros and a legal tail.
pub fn is_legal(spec: &RecurrenceSpec, coeffs: &[u64]) -> bool {
    let c = spec.coeffs();
    let mut a = coeffs;
    loop {
        if a.is_empty() {
            return true;
        }
        let window = a.len().min(c.len());
        match (0..window).find(|&t| a[t] != c[t]) {
            None => return a.len() < c.len(),
            Some(t) if a[t] > c[t] => return false,
            Some(t) => {
                let mut p = t + 1;
                while p < a.len() && a[p] == 0 {
                    p += 1;
                }
                if p == a.len() {
                    return true;
                }
                a = &a[p..];
            }
        }
    }
}

/// Kangaroo fast path on index sets: all consecutive differences are at
/// least `g` and no `l` consecutive differences are all exactly `g`.
pub fn is_legal_kangaroo(params: &KangarooParams, indices: &[usize]) -> bool {
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    if indices.iter().any(|&i| i == 0) {
        return false;
    }
    let mut run = 0usize;
    for w in indices.windows(2) {
        if w[0] <= w[1] {
            return false;
        }
        let d = w[0] - w[1];
        if d < g {
            return false;
        }
        if d == g {
            run += 1;
            if run >= l {
                return false;
            }
        } else {
            run = 0;
        }
    }
    true
}

/// All legal decompositions with top index `n`, enumerated exhaustively.
/// Their values are exactly `[G_n, G_{n+1})` with no repeats.
pub fn enumerate_legal(params: &KangarooParams, n: usize, cap: u64) -> Result<Vec<Decomposition>> {
    if n == 0 {
        return Err(Error::InvalidArgument("top index must be >= 1".into()));
    }
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    let mut out = Vec::new();
    let mut stack = vec![n];
    fn rec(
        stack: &mut Vec<usize>,
        run: usize,
        g: usize,
        l: usize,
        cap: u64,
        out: &mut Vec<Decomposition>,
    ) -> Result<()> {
        if out.len() as u64 >= cap {
            return Err(Error::CapExceeded {
                cap,
                detail: "legal-set enumeration".into(),
            });
        }
        out.push(Decomposition::from_indices(stack).expect("stack is decreasing"));
        let last = *stack.last().unwrap();
        for nxt in (1..=last.saturating_sub(g)).rev() {
            let d = last - nxt;
            let nrun = if d == g { run + 1 } else { 0 };
            if nrun >= l {
                continue;
            }
            stack.push(nxt);
            rec(stack, nrun, g, l, cap, out)?;
            stack.pop();
        }
        Ok(())
    }
    rec(&mut stack, 0, g, l, cap, &mut out)?;
    Ok(out)
}

/// Counting DP over legal index sets with top index `n`, keyed by the number
/// of summands. States track the trailing run of `g`-gaps so the no-`l`-run
/// rule is enforced without enumeration.
pub fn summand_count_distribution(params: &KangarooParams, n: usize) -> BTreeMap<u64, BigInt> {
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    // f[i][r][k]: sets within {1..i} with i chosen, trailing g-run length r,
    // k summands. cum[i][k] = sum over j <= i and all r.
    let kmax = n + 1;
    let zero_vec = || vec![BigInt::zero(); kmax + 1];
    let mut f: Vec<Vec<Vec<BigInt>>> = vec![vec![zero_vec(); l]; n + 1];
    let mut cum: Vec<Vec<BigInt>> = vec![zero_vec(); n + 1];
    for i in 1..=n {
        f[i][0][1] += 1u32;
        if i > g {
            let reach = i - g - 1;
            if reach >= 1 {
                for k in 1..kmax {
                    if !cum[reach][k].is_zero() {
                        let add = cum[reach][k].clone();
                        f[i][0][k + 1] += add;
                    }
                }
            }
        }
        if l >= 2 && i > g {
            for r in 1..l {
                for k in 1..kmax {
                    if !f[i - g][r - 1][k].is_zero() {
                        let add = f[i - g][r - 1][k].clone();
                        f[i][r][k + 1] += add;
                    }
                }
            }
        }
        let prev = cum[i - 1].clone();
        cum[i] = prev;
        for r in 0..l {
            for k in 0..=kmax {
                if !f[i][r][k].is_zero() {
                    let add = f[i][r][k].clone();
                    cum[i][k] += add;
                }
            }
        }
    }
    let mut dist = BTreeMap::new();
    for r in 0..l {
        for k in 1..=kmax {
            if !f[n][r][k].is_zero() {
                *dist.entry(k as u64).or_insert_with(BigInt::zero) += &f[n][r][k];
            }
        }
    }
    dist
}

/// Exact average number of summands over `[G_n, G_{n+1})`.
pub fn mean_summands(params: &KangarooParams, n: usize) -> BigRational {
    let dist = summand_count_distribution(params, n);
    let mut total = BigInt::zero();
    let mut weighted = BigInt::zero();
    for (k, count) in &dist {
        total += count;
        weighted += BigInt::from(*k) * count;
    }
    BigRational::new(weighted, total)
}
