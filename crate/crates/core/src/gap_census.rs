//! Exact amalgamated gap censuses over `[K_n, K_{n+1})`, the closed-form
//! counting formulas, and the limiting gap law.
//!
//! Two census paths are kept deliberately separate: an exhaustive
//! enumeration (ground truth, feasible for small `n`) and a polynomial-time
//! exact path built from the product formula for gaps longer than `g`
//! together with a run-aware count for gaps of length exactly `g`. The two
//! are cross-validated element-wise in the test suites.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::{big_ratio, Real};
use crate::recurrence::{KangarooParams, SequenceTable};
use crate::spectral::SpectralSummary;
use crate::zeckendorf::Decomposition;

/// Exact gap counts amalgamated over all decompositions in one interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapHistogram {
    top: usize,
    counts: BTreeMap<usize, BigInt>,
    total: BigInt,
}

impl GapHistogram {
    pub fn new(top: usize, counts: BTreeMap<usize, BigInt>) -> Self {
        let total = counts.values().sum();
        GapHistogram { top, counts, total }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigInt> {
        &self.counts
    }

    pub fn count(&self, j: usize) -> BigInt {
        self.counts.get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Total number of gaps `Y(n)`.
    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_zero()
    }

    /// Exact proportion `P_n(j)`; zero when the histogram is empty.
    pub fn probability(&self, j: usize) -> BigRational {
        if self.total.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(self.count(j), self.total.clone())
        }
    }
}

/// Gap lengths of one decomposition, largest summand first. The offset below
/// the smallest summand is not a gap; single summands have none.
pub fn gaps_of(d: &Decomposition) -> Vec<usize> {
    let mut gaps = Vec::new();
    let mut prev: Option<usize> = None;
    for (i, &a) in d.coeffs().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let idx = d.top() - i;
        if let Some(p) = prev {
            gaps.push(p - idx);
        }
        // a repeated summand (a >= 2) contributes zero-length internal gaps
        for _ in 1..a {
            gaps.push(0);
        }
        prev = Some(idx);
    }
    gaps
}

fn dfs_census(
    low: usize,
    run: usize,
    g: usize,
    l: usize,
    cap: u64,
    counts: &mut [u64],
    visited: &mut u64,
) -> Option<u64> {
    *visited += 1;
    if *visited > cap {
        return None;
    }
    let mut total = 1u64;
    for nxt in (1..=low.saturating_sub(g)).rev() {
        let d = low - nxt;
        let nrun = if d == g { run + 1 } else { 0 };
        if nrun >= l {
            continue;
        }
        let sub = dfs_census(nxt, nrun, g, l, cap, counts, visited)?;
        // every set in the subtree contains the gap (nxt, low)
        counts[d] += sub;
        total += sub;
    }
    Some(total)
}

/// Exhaustive census over all legal decompositions with top index `n`.
/// Ground truth for the polynomial-time path. `shards` caps the number of
/// concurrent workers; the subset space is partitioned at the first branch
/// and the per-worker histograms merged by exact addition.
pub fn census_enumerate(
    params: &KangarooParams,
    n: usize,
    cap: u64,
    shards: usize,
) -> Result<GapHistogram> {
    if n == 0 {
        return Err(Error::InvalidArgument("top index must be >= 1".into()));
    }
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    let shards = shards.max(1);

    // first-level branches: next index below n
    let branches: Vec<(usize, usize)> = (1..=n.saturating_sub(g))
        .rev()
        .filter_map(|nxt| {
            let d = n - nxt;
            let run = if d == g { 1 } else { 0 };
            (run < l).then_some((nxt, run))
        })
        .collect();

    let workers = shards.min(branches.len().max(1));
    let results: Vec<Result<(Vec<u64>, u64)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let branches = &branches;
            handles.push(scope.spawn(move || {
                let mut counts = vec![0u64; n + 1];
                let mut visited = 0u64;
                for (nxt, run) in branches.iter().skip(w).step_by(workers) {
                    let sub = dfs_census(*nxt, *run, g, l, cap, &mut counts, &mut visited)
                        .ok_or_else(|| Error::CapExceeded {
                            cap,
                            detail: format!("gap census enumeration at n = {n}"),
                        })?;
                    counts[n - nxt] += sub;
                }
                Ok((counts, visited))
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut merged = vec![0u64; n + 1];
    let mut visited = 1u64; // the root set {n}
    for r in results {
        let (counts, v) = r?;
        for (j, c) in counts.iter().enumerate() {
            merged[j] += c;
        }
        visited += v;
    }
    if visited > cap {
        return Err(Error::CapExceeded {
            cap,
            detail: format!("gap census enumeration at n = {n}"),
        });
    }
    let counts: BTreeMap<usize, BigInt> = merged
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| (j, BigInt::from(c)))
        .collect();
    Ok(GapHistogram::new(n, counts))
}

/// Product-formula count of decompositions with a gap of exactly `j > g`
/// starting at `K_i`: `(K_{i+1} - K_i) (K_{M+1} - 2 K_M + K_{M-1})` with
/// `M = n - i - j + 1` under the `K_0 = 1`, `K_{r<0} = 0` convention.
pub fn x_count_formula(table: &SequenceTable, i: usize, j: usize, n: usize) -> Result<BigInt> {
    let params = table
        .spec()
        .as_kangaroo()
        .ok_or_else(|| Error::InvalidArgument("gap count formulas require a Kangaroo spec".into()))?;
    let g = params.hop() as usize;
    if j <= g {
        return Err(Error::InvalidArgument(format!(
            "product formula requires j > g (j = {j}, g = {g})"
        )));
    }
    if i == 0 || i + j > n {
        return Err(Error::InvalidArgument(format!(
            "gap position out of range: i = {i}, j = {j}, n = {n}"
        )));
    }
    let owned;
    let t = if table.len() > n {
        table
    } else {
        owned = table.extended(n + 1);
        &owned
    };
    let m = (n - i - j + 1) as i64;
    let left = t.term_ext(i as i64 + 1) - t.term_ext(i as i64);
    let right = t.term_ext(m + 1) - 2 * t.term_ext(m) + t.term_ext(m - 1);
    Ok(left * right)
}

/// Closed-form count for exactly `b` consecutive `g`-gaps starting at `K_i`:
/// `K_{i-g} (K_{M+1} - K_M)` with `M = n - i - (b+1)g`, where a degenerate
/// upper block (`M <= 0`) counts as one choice. Asymptotically exact, but not
/// boundary-correct: cells near the interval's top deviate from enumeration
/// (see `run_count_deviations`), so the exact census path does not use it.
pub fn run_count_formula(
    table: &SequenceTable,
    params: &KangarooParams,
    i: usize,
    b: usize,
    n: usize,
) -> Result<BigInt> {
    let l = params.hops() as usize;
    if b < 1 || b >= l {
        return Err(Error::InvalidArgument(format!(
            "run length must satisfy 1 <= b <= l-1 (b = {b}, l = {l})"
        )));
    }
    let g = params.hop() as i64;
    let i = i as i64;
    let n = n as i64;
    if i < 1 || i + (b as i64) * g > n {
        return Err(Error::InvalidArgument("run position out of range".into()));
    }
    let owned;
    let t = if table.len() > n as usize {
        table
    } else {
        owned = table.extended(n as usize + 1);
        &owned
    };
    let m = n - i - (b as i64 + 1) * g;
    let right = if m <= 0 {
        BigInt::one()
    } else {
        t.term_ext(m + 1) - t.term_ext(m)
    };
    Ok(t.term_ext(i - g) * right)
}

fn ensure_len(table: &SequenceTable, len: usize) -> SequenceTable {
    if table.len() >= len {
        table.clone()
    } else {
        table.extended(len)
    }
}

/// Polynomial-time exact census, identical to `census_enumerate` element-wise.
///
/// Gaps longer than `g` come from summing the product formula over starting
/// positions. Gaps of length exactly `g` are counted run-aware: a maximal run
/// of `b` consecutive `g`-gaps contributes `b` gaps, the block below the run
/// is free after a forced skip of more than `g` (with `K_{i-g}` choices, or
/// exactly one when `i < g`), and the block above either is absent (the run
/// ends at `K_n`) or resumes after a gap of more than `g`.
pub fn census_exact(table: &SequenceTable, params: &KangarooParams, n: usize) -> Result<GapHistogram> {
    if n == 0 {
        return Err(Error::InvalidArgument("top index must be >= 1".into()));
    }
    if table.spec().as_kangaroo().as_ref() != Some(params) {
        return Err(Error::InvalidArgument(
            "table spec does not match the Kangaroo parameters".into(),
        ));
    }
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    let t = ensure_len(table, n + 1);
    let mut counts: BTreeMap<usize, BigInt> = BTreeMap::new();

    for j in g + 1..n {
        let mut tot = BigInt::zero();
        for i in 1..=n - j {
            tot += x_count_formula(&t, i, j, n)?;
        }
        if !tot.is_zero() {
            counts.insert(j, tot);
        }
    }

    if l >= 2 && n > g {
        let mut tot = BigInt::zero();
        for b in 1..l {
            for i in 1..=n {
                let top = i + b * g;
                if top > n {
                    break;
                }
                let left = if i >= g {
                    t.term_ext(i as i64 - g as i64)
                } else {
                    BigInt::one()
                };
                let right = if top == n {
                    BigInt::one()
                } else {
                    let m = n as i64 - i as i64 - (b as i64 + 1) * g as i64;
                    if m >= 1 {
                        t.term_ext(m + 1) - t.term_ext(m)
                    } else {
                        BigInt::zero()
                    }
                };
                tot += BigInt::from(b) * left * right;
            }
        }
        if !tot.is_zero() {
            counts.insert(g, tot);
        }
    }

    Ok(GapHistogram::new(n, counts))
}

/// One `(i, b)` cell of the run-count comparison: the closed-form value
/// against the enumerated number of decompositions with a maximal run of
/// exactly `b` consecutive `g`-gaps whose lowest index is `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDeviation {
    pub i: usize,
    pub b: usize,
    pub formula: BigInt,
    pub enumerated: BigInt,
}

impl RunDeviation {
    pub fn is_exact(&self) -> bool {
        self.formula == self.enumerated
    }
}

/// Quantifies, cell by cell, how far the asymptotic run-count formula is
/// from enumeration at finite `n`. The closed form ignores runs abutting the
/// interval's top index, so right-boundary cells deviate even when the
/// per-`b` totals happen to agree.
pub fn run_count_deviations(
    table: &SequenceTable,
    params: &KangarooParams,
    n: usize,
    cap: u64,
) -> Result<Vec<RunDeviation>> {
    let g = params.hop() as usize;
    let l = params.hops() as usize;
    if l < 2 {
        return Err(Error::InvalidArgument(
            "run counting requires l >= 2 (no b with 1 <= b <= l-1 otherwise)".into(),
        ));
    }
    let t = ensure_len(table, n + 1);
    let sets = crate::zeckendorf::enumerate_legal(params, n, cap)?;
    let mut enumerated: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for d in &sets {
        let idx = d.indices().expect("legal Kangaroo decompositions are 0/1");
        // indices descending; maximal runs of consecutive g-gaps
        let mut k = 0;
        while k + 1 < idx.len() {
            if idx[k] - idx[k + 1] == g {
                let start = k;
                while k + 1 < idx.len() && idx[k] - idx[k + 1] == g {
                    k += 1;
                }
                let b = k - start;
                *enumerated.entry((idx[k], b)).or_default() += 1;
            } else {
                k += 1;
            }
        }
    }
    let mut out = Vec::new();
    for b in 1..l {
        for i in 1.. {
            if i + b * g > n {
                break;
            }
            let formula = run_count_formula(&t, params, i, b, n)?;
            let enumerated = enumerated.remove(&(i, b)).unwrap_or_else(BigInt::zero);
            out.push(RunDeviation { i, b, formula, enumerated });
        }
    }
    Ok(out)
}

/// Limiting gap law evaluated on `j <= jmax`, with the geometric tail beyond
/// `jmax` closed in `total_with_tail`.
#[derive(Debug, Clone)]
pub struct TheoryDistribution<F> {
    min_gap: usize,
    p_min: F,
    coef: F,
    decay: F,
    jmax: usize,
    fardiff: bool,
}

impl<F: Real> TheoryDistribution<F> {
    pub(crate) fn from_parts(min_gap: usize, p_min: F, coef: F, decay: F, jmax: usize, fardiff: bool) -> Self {
        TheoryDistribution { min_gap, p_min, coef, decay, jmax, fardiff }
    }

    /// `P(j)`: zero below the minimum gap, a special value at it, and
    /// geometric decay `coef * decay^{-j}` beyond.
    pub fn prob(&self, j: usize) -> F {
        if j < self.min_gap {
            F::zero()
        } else if j == self.min_gap {
            self.p_min
        } else {
            self.coef * self.decay.powi(-(j as i32))
        }
    }

    pub fn min_gap(&self) -> usize {
        self.min_gap
    }

    pub fn decay(&self) -> F {
        self.decay
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn is_fardiff(&self) -> bool {
        self.fardiff
    }

    /// Mass of the closed geometric tail beyond `jmax`.
    pub fn tail_mass(&self) -> F {
        // sum_{j > jmax} coef * decay^{-j}
        self.coef * self.decay.powi(-(self.jmax as i32)) / (self.decay - F::one())
    }

    /// `sum_{j <= jmax} P(j)` plus the closed tail; one up to roundoff.
    pub fn total_with_tail(&self) -> F {
        let mut s = F::zero();
        for j in self.min_gap..=self.jmax {
            s = s + self.prob(j);
        }
        s + self.tail_mass()
    }
}

/// Evaluates the limiting law for a Kangaroo recurrence from its spectral
/// summary: `P(j) = 0` for `j < g`,
/// `P(g) = (a1/C) lambda^{-2g} (y - y^l)/(1 - y)` with `y = lambda^{-g}`, and
/// `P(j) = (lambda-1)^2 (a1/C) lambda^{-j}` for `j > g`.
pub fn theory_distribution<F: Real>(
    params: &KangarooParams,
    spectral: &SpectralSummary<F>,
    jmax: usize,
) -> Result<TheoryDistribution<F>> {
    let g = params.hop() as usize;
    if jmax < g {
        return Err(Error::InvalidArgument(format!(
            "jmax must be at least g (jmax = {jmax}, g = {g})"
        )));
    }
    if spectral.g != Some(params.hop()) || spectral.hops != Some(params.hops()) {
        return Err(Error::InvalidArgument(
            "spectral summary was computed for different (g, l)".into(),
        ));
    }
    let c_lek = spectral
        .c_lek
        .ok_or_else(|| Error::InvalidArgument("spectral summary lacks C_Lek".into()))?;
    let lam = spectral.lambda1;
    let ratio = spectral.a1 / c_lek;
    let y = lam.powi(-(g as i32));
    let p_min = if params.hops() == 1 {
        F::zero()
    } else {
        ratio * y * y * (y - y.powi(params.hops() as i32)) / (F::one() - y)
    };
    let coef = (lam - F::one()) * (lam - F::one()) * ratio;
    Ok(TheoryDistribution::from_parts(g, p_min, coef, lam, jmax, false))
}

/// The two closed-form candidates for `P(g)` when `l >= 3`, each normalized
/// consistently with its own tail (the Binet constant cancels): the
/// unweighted form sums the run blocks once per run, the weighted form
/// counts each run of `b` consecutive `g`-gaps `b` times.
#[derive(Debug, Clone, Copy)]
pub struct PgCandidates<F> {
    pub unweighted: F,
    pub weighted: F,
}

pub fn pg_candidates<F: Real>(params: &KangarooParams, lambda1: F) -> PgCandidates<F> {
    let g = params.hop() as i32;
    let l = params.hops() as usize;
    let y = lambda1.powi(-g);
    let tail = (lambda1 - F::one()) * y;
    let mut sum_plain = F::zero();
    let mut sum_weighted = F::zero();
    for b in 1..l {
        let term = y.powi(b as i32);
        sum_plain = sum_plain + term;
        sum_weighted = sum_weighted + F::from_usize(b).unwrap() * term;
    }
    let t_u = y * y * sum_plain;
    let t_w = y * y * sum_weighted;
    PgCandidates {
        unweighted: t_u / (t_u + tail),
        weighted: t_w / (t_w + tail),
    }
}

/// One row of a census-versus-theory comparison.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub j: usize,
    pub count: BigInt,
    pub p_rational: BigRational,
    pub p_empirical: f64,
    pub p_theory: f64,
    pub abs_err: f64,
}

/// The open-question experiment: both closed-form `P(g)` candidates,
/// reported alongside the census ground truth when `l >= 3`.
#[derive(Debug, Clone, Copy)]
pub struct PgExperiment {
    pub j: usize,
    pub unweighted: f64,
    pub weighted: f64,
}

/// Deterministic census-versus-theory comparison, ordered by gap length.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub g: Option<u32>,
    pub hops: Option<u32>,
    pub fardiff: bool,
    pub n: usize,
    /// Total gap count `Y(n)`.
    pub total: BigInt,
    pub rows: Vec<ReportRow>,
    pub max_abs_err: f64,
    pub empty: bool,
    pub pg: Option<PgExperiment>,
}

/// Builds the per-gap-length comparison of an exact census against the
/// limiting law. Rows cover every length with either census mass or theory
/// mass up to `jmax`, in increasing order.
pub fn compare(
    census: &GapHistogram,
    theory: &TheoryDistribution<f64>,
    g: Option<u32>,
    hops: Option<u32>,
    pg: Option<PgExperiment>,
) -> CensusReport {
    let empty = census.is_empty();
    let mut rows = Vec::new();
    let mut max_abs_err = 0.0f64;
    if !empty {
        let max_census = census.counts().keys().max().copied().unwrap_or(0);
        let hi = theory.jmax().max(max_census);
        for j in theory.min_gap()..=hi {
            let count = census.count(j);
            let p_theory = theory.prob(j);
            if count.is_zero() && p_theory == 0.0 && j > theory.jmax() {
                continue;
            }
            let p_rational = census.probability(j);
            let p_empirical: f64 = big_ratio(p_rational.numer(), p_rational.denom());
            let abs_err = (p_empirical - p_theory).abs();
            if abs_err > max_abs_err {
                max_abs_err = abs_err;
            }
            rows.push(ReportRow {
                j,
                count,
                p_rational,
                p_empirical,
                p_theory,
                abs_err,
            });
        }
    }
    CensusReport {
        g,
        hops,
        fardiff: theory.is_fardiff(),
        n: census.top(),
        total: census.total().clone(),
        rows,
        max_abs_err,
        empty,
        pg,
    }
}
