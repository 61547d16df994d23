//! Acceptance gate: one check per criterion, each printing a single
//! pass/fail line. Custom harness so the lines show up in a plain
//! `cargo test` run; the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use zeckgap::fardiff::{far_census, far_decompose, is_far_legal, recompose_far, s_table, SignedDecomposition};
use zeckgap::gap_census::{
    census_enumerate, census_exact, compare, pg_candidates, theory_distribution, x_count_formula,
    PgExperiment,
};
use zeckgap::recurrence::{kangaroo_spec, KangarooParams, SequenceTable};
use zeckgap::report::census_csv;
use zeckgap::spectral::{
    all_roots, alpha_approx, binet_a1, dominant_root, kangaroo_dominant_root,
    lekkerkerker_constant, summarize,
};
use zeckgap::zeckendorf::{
    enumerate_legal, greedy_decompose, mean_summands, recompose, summand_count_distribution,
    DEFAULT_ENUM_CAP,
};

const PHI: f64 = 1.618033988749894848;

fn verdict(id: u32, desc: &str, ok: bool) -> bool {
    println!("[{}] criterion {id}: {desc}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let criteria: [(u32, fn() -> bool); 14] = [
        (1, criterion_01_sequence_regression),
        (2, criterion_02_uniqueness_oracle),
        (3, criterion_03_binomial_identity),
        (4, criterion_04_lekkerkerker_slope),
        (5, criterion_05_census_oracle_equality),
        (6, criterion_06_fibonacci_gap_law),
        (7, criterion_07_tribonacci_gap_law),
        (8, criterion_08_skiponacci_short_gaps_vanish),
        (9, criterion_09_spectral_golden_values),
        (10, criterion_10_dominance_property),
        (11, criterion_11_asymptotic_approximations),
        (12, criterion_12_counting_formula_exactness),
        (13, criterion_13_far_difference),
        (14, criterion_14_open_question_experiment),
    ];
    let mut failures = 0;
    for (id, run) in criteria {
        let ok = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("[FAIL] criterion {id}: panicked");
            false
        });
        if !ok {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("acceptance: {failures} criterion(s) failed");
        std::process::exit(1);
    }
}

fn table(g: u32, l: u32, len: usize) -> SequenceTable {
    SequenceTable::generate(&kangaroo_spec(g, l).unwrap(), len).unwrap()
}

fn prob(h: &zeckgap::GapHistogram, j: usize) -> f64 {
    let p = h.probability(j);
    zeckgap::real::big_ratio(p.numer(), p.denom())
}

fn criterion_01_sequence_regression() -> bool {
    let cases: [(u32, u32, &[u64]); 3] = [
        (1, 1, &[1, 2, 3, 5]),
        (1, 2, &[1, 2, 4, 7, 13]),
        (2, 1, &[1, 2, 3, 4, 6, 9]),
    ];
    let ok = cases.iter().all(|&(g, l, expect)| {
        let t = table(g, l, expect.len());
        t.values()
            .iter()
            .zip(expect)
            .all(|(v, &e)| v == &BigInt::from(e))
    });
    verdict(1, "printed sequence prefixes match exactly", ok)
}

fn criterion_02_uniqueness_oracle() -> bool {
    let mut ok = true;
    for (g, l) in [(1u32, 1u32), (1, 2), (2, 1), (1, 3)] {
        let p = KangarooParams::new(g, l).unwrap();
        let t = table(g, l, 19);
        let mut seen = vec![false; t.term(18).unwrap().to_usize().unwrap() - 1];
        for n in 1..18 {
            for d in enumerate_legal(&p, n, DEFAULT_ENUM_CAP).unwrap() {
                let m = recompose(&t, &d).unwrap();
                let idx = m.to_usize().unwrap();
                // exactly one decomposition per value, and greedy finds it
                ok &= !seen[idx - 1];
                seen[idx - 1] = true;
                ok &= greedy_decompose(&t, &m).unwrap() == d;
            }
        }
        ok &= seen.iter().all(|&s| s);
    }
    verdict(2, "every m < G_18 has a unique legal decomposition equal to greedy", ok)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut v = BigInt::one();
    for i in 0..k {
        v = v * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    v
}

fn criterion_03_binomial_identity() -> bool {
    let fib = KangarooParams::new(1, 1).unwrap();
    let mut ok = true;
    for n in 1..=20i64 {
        let dist = summand_count_distribution(&fib, n as usize);
        for k in 0..=n {
            let expect = binomial(n - k - 1, k);
            let got = dist.get(&((k + 1) as u64)).cloned().unwrap_or_else(BigInt::zero);
            ok &= got == expect;
        }
    }
    verdict(3, "Fibonacci summand counts equal C(n-k-1, k) for n <= 20", ok)
}

fn criterion_04_lekkerkerker_slope() -> bool {
    let fib = KangarooParams::new(1, 1).unwrap();
    let pts: Vec<(f64, f64)> = (30..=60)
        .map(|n| {
            let m = mean_summands(&fib, n);
            (n as f64, zeckgap::real::big_ratio(m.numer(), m.denom()))
        })
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let expect = 1.0 / (PHI * PHI + 1.0);
    verdict(
        4,
        "mean-summand slope over n in [30, 60] within 2% of 1/(phi^2+1)",
        (slope - expect).abs() / expect < 0.02,
    )
}

fn criterion_05_census_oracle_equality() -> bool {
    let mut ok = true;
    for (g, l) in [(1u32, 1u32), (1, 2), (2, 1), (1, 3), (3, 2)] {
        let p = KangarooParams::new(g, l).unwrap();
        let t = table(g, l, 24);
        for n in 1..=22 {
            let e = census_enumerate(&p, n, DEFAULT_ENUM_CAP, 4).unwrap();
            let x = census_exact(&t, &p, n).unwrap();
            ok &= e == x;
        }
    }
    verdict(5, "census_exact equals census_enumerate for n <= 22 on five families", ok)
}

fn criterion_06_fibonacci_gap_law() -> bool {
    let p = KangarooParams::new(1, 1).unwrap();
    let t = table(1, 1, 210);
    let h = census_exact(&t, &p, 200).unwrap();
    let mut ok = h.count(1).is_zero();
    for j in 2..=8usize {
        ok &= (prob(&h, j) - PHI.powi(-(j as i32))).abs() <= 0.01;
        let ratio = prob(&h, j + 1) / prob(&h, j);
        ok &= (ratio - 1.0 / PHI).abs() <= 0.01;
    }
    verdict(6, "Fibonacci census at n = 200 matches phi^-j within 0.01", ok)
}

fn criterion_07_tribonacci_gap_law() -> bool {
    let p = KangarooParams::new(1, 2).unwrap();
    let t = table(1, 2, 210);
    let h = census_exact(&t, &p, 200).unwrap();
    let ok = (prob(&h, 1) - 0.2605).abs() <= 0.01 && (prob(&h, 2) - 0.3375).abs() <= 0.01;
    verdict(7, "Tribonacci census at n = 200 matches the limiting-law values within 0.01", ok)
}

fn criterion_08_skiponacci_short_gaps_vanish() -> bool {
    let p = KangarooParams::new(2, 1).unwrap();
    let t = table(2, 1, 70);
    let mut ok = true;
    for n in 1..=60 {
        let h = census_exact(&t, &p, n).unwrap();
        ok &= h.count(1).is_zero() && h.count(2).is_zero();
    }
    for n in 1..=14 {
        let h = census_enumerate(&p, n, DEFAULT_ENUM_CAP, 1).unwrap();
        ok &= h.count(1).is_zero() && h.count(2).is_zero();
    }
    verdict(8, "Skiponacci census has counts[1] = counts[2] = 0 for all tested n", ok)
}

fn criterion_09_spectral_golden_values() -> bool {
    // closed forms for the three named recurrences
    let phi_exact = (1.0 + 5f64.sqrt()) / 2.0;
    let t_p = (19.0 + 3.0 * 33f64.sqrt()).cbrt();
    let t_m = (19.0 - 3.0 * 33f64.sqrt()).cbrt();
    let trib_exact = (1.0 + t_p + t_m) / 3.0;
    let s_p = ((29.0 + 3.0 * 93f64.sqrt()) / 2.0).cbrt();
    let s_m = ((29.0 - 3.0 * 93f64.sqrt()) / 2.0).cbrt();
    let skip_exact = (1.0 + s_p + s_m) / 3.0;

    let a1_fib_exact = (5.0 + 5f64.sqrt()) / 10.0;
    let (s3, s11) = (3f64.sqrt(), 11f64.sqrt());
    let a1_trib_exact = (54.0 * s11
        + 59.0 * s3 * t_p
        + (-32.0 * s3 + 18.0 * s11) * t_p * t_p
        + t_m * t_m * (32.0 * s3 + 18.0 * s11 + 19.0 * s3 * t_p)
        - s3 * t_m * (59.0 + 19.0 * t_p * t_p))
        / (162.0 * s11);
    let s31 = 31f64.sqrt();
    let (c13, c23) = (2f64.cbrt(), 4f64.cbrt());
    let (k_p, k_m) = ((29.0 + 3.0 * 93f64.sqrt()).cbrt(), (29.0 - 3.0 * 93f64.sqrt()).cbrt());
    let a1_skip_exact = (54.0 * s31
        + 44.0 * c23 * s3 * k_p
        + c13 * (-23.0 * s3 + 9.0 * s31) * k_p * k_p
        + k_m * k_m * (c13 * (23.0 * s3 + 9.0 * s31) + 13.0 * s3 * k_p)
        - s3 * k_m * (44.0 * c23 + 13.0 * k_p * k_p))
        / (162.0 * s31);

    let mut ok = true;
    for (g, l, lam_exact, a1_exact) in [
        (1u32, 1u32, phi_exact, a1_fib_exact),
        (1, 2, trib_exact, a1_trib_exact),
        (2, 1, skip_exact, a1_skip_exact),
    ] {
        let spec = kangaroo_spec(g, l).unwrap();
        let lam: f64 = dominant_root(&spec, 1e-14).unwrap();
        ok &= (lam - lam_exact).abs() < 1e-10;
        let t = SequenceTable::generate(&spec, 400).unwrap();
        let a1 = binet_a1(&t, lam_exact).unwrap();
        ok &= a1.converged && (a1.value - a1_exact).abs() < 1e-8;
    }
    // Tribonacci C_Lek: normalization route vs the radical closed form
    let p = KangarooParams::new(1, 2).unwrap();
    let c_norm = lekkerkerker_constant(&p, trib_exact, a1_trib_exact);
    let lam = trib_exact;
    let c_closed = a1_trib_exact * (3.0 * lam * lam - 1.0) / (lam.powi(3) * (lam * lam - 1.0));
    ok &= (c_norm - c_closed).abs() < 1e-9;
    verdict(9, "dominant roots, a1 and C_Lek match the closed forms", ok)
}

fn criterion_10_dominance_property() -> bool {
    let mut ok = true;
    for g in 1u32..=23 {
        for l in 1u32..=23 {
            if l * g + 1 > 24 {
                continue;
            }
            let spec = kangaroo_spec(g, l).unwrap();
            let lam: f64 = dominant_root(&spec, 1e-13).unwrap();
            let roots = all_roots::<f64>(&spec, 64).unwrap();
            ok &= roots[1..].iter().all(|r| r.norm() < lam - 1e-6);
        }
    }
    verdict(10, "non-dominant root moduli stay below lambda1 - 1e-6 for L <= 24", ok)
}

fn criterion_11_asymptotic_approximations() -> bool {
    let mut ok = true;
    for g in [100u64, 1000, 10_000] {
        let lam: f64 = kangaroo_dominant_root(g, g, 1e-13).unwrap();
        let target = g as f64 * lam.ln();
        let alpha = alpha_approx::<f64>(g).unwrap().alpha;
        ok &= (alpha - target).abs() / target <= 0.05;
    }
    verdict(11, "alpha formula within 5% of g ln(lambda) for g in {100, 1000, 10000}", ok)
}

fn criterion_12_counting_formula_exactness() -> bool {
    let mut ok = true;
    for (g, l) in [(1u32, 1u32), (1, 2)] {
        let t = table(g, l, 24);
        for n in 2..=22usize {
            let h = census_enumerate(&KangarooParams::new(g, l).unwrap(), n, DEFAULT_ENUM_CAP, 4)
                .unwrap();
            for j in g as usize + 1..n {
                let total: BigInt = (1..=n - j)
                    .map(|i| x_count_formula(&t, i, j, n).unwrap())
                    .sum();
                ok &= total == h.count(j);
            }
        }
    }
    verdict(12, "sum of x_count_formula equals census counts for all j > g, n <= 22", ok)
}

fn enumerate_far_values(max_index: usize) -> Vec<(BigInt, SignedDecomposition)> {
    let t = s_table(max_index).unwrap();
    let mut out = Vec::new();
    fn rec(
        t: &zeckgap::fardiff::FarDiffTable,
        terms: &mut Vec<(usize, i8)>,
        out: &mut Vec<(BigInt, SignedDecomposition)>,
    ) {
        let sd = SignedDecomposition::new(terms.clone()).unwrap();
        out.push((recompose_far(t, &sd).unwrap(), sd));
        let &(last, sign) = terms.last().unwrap();
        for next in (1..last).rev() {
            for s in [1i8, -1] {
                if last - next >= if s == sign { 4 } else { 3 } {
                    terms.push((next, s));
                    rec(t, terms, out);
                    terms.pop();
                }
            }
        }
    }
    for top in 1..=max_index {
        let mut terms = vec![(top, 1i8)];
        rec(&t, &mut terms, &mut out);
    }
    out
}

fn criterion_13_far_difference() -> bool {
    let t = s_table(40).unwrap();
    let mut ok = true;

    // round trip + legality up to 1e5
    let mut m = BigInt::one();
    while m <= BigInt::from(100_000) {
        let d = far_decompose(&t, &m).unwrap();
        ok &= is_far_legal(&d) && recompose_far(&t, &d).unwrap() == m;
        m += 1;
    }

    // exhaustive uniqueness oracle for m <= 1e4 over indices <= 25
    let mut hits: BTreeMap<BigInt, u32> = BTreeMap::new();
    for (v, _) in enumerate_far_values(25) {
        *hits.entry(v).or_default() += 1;
    }
    let mut m = BigInt::one();
    while m <= BigInt::from(10_000) {
        ok &= hits.get(&m) == Some(&1);
        m += 1;
    }

    // census convergence at n = 28
    let h = far_census(&t, 28, DEFAULT_ENUM_CAP).unwrap();
    ok &= (prob(&h, 3) - PHI.powi(-3)).abs() <= 0.02;
    ok &= (prob(&h, 4) - 2.0 * PHI.powi(-4)).abs() <= 0.02;

    // shift and inclusion-exclusion identities, exact for j <= 15
    let mut n_pair: BTreeMap<(i8, usize, usize), BigInt> = BTreeMap::new();
    let s15 = t.s(15).unwrap();
    let mut m = BigInt::one();
    while m <= s15 {
        let d = far_decompose(&t, &m).unwrap();
        let (j, _) = d.terms()[0];
        let (i, si) = *d.terms().last().unwrap();
        *n_pair.entry((si, i, j)).or_default() += 1;
        m += 1;
    }
    let zero = BigInt::zero();
    let at = |si: i8, i: usize, j: usize| n_pair.get(&(si, i, j)).unwrap_or(&zero);
    for j in 1..=15usize {
        for i in 1..=j {
            for si in [1i8, -1] {
                ok &= at(si, i, j) == at(si, 1, j - i + 1); // shift identity
            }
        }
        if j >= 2 {
            let lhs = at(-1, 1, j) + at(1, 1, j);
            let rhs = (t.s(j).unwrap() - t.s(j - 1).unwrap()) - (t.s(j - 1).unwrap() - t.s(j - 2).unwrap());
            ok &= lhs == rhs; // inclusion-exclusion via N(+F_r) = S_r - S_{r-1}
        }
    }
    verdict(13, "far-difference round trip, uniqueness, census and counting identities", ok)
}

fn criterion_14_open_question_experiment() -> bool {
    let params = KangarooParams::new(1, 3).unwrap();
    let spec = kangaroo_spec(1, 3).unwrap();
    let t = table(1, 3, 210);
    let s = summarize::<f64>(&spec, 1e-12).unwrap();
    let cand = pg_candidates(&params, s.lambda1);
    let mut ok = true;
    for n in [50usize, 100, 200] {
        let h = census_exact(&t, &params, n).unwrap();
        let theory = theory_distribution(&params, &s, 30).unwrap();
        let pg = PgExperiment { j: 1, unweighted: cand.unweighted, weighted: cand.weighted };
        let report = compare(&h, &theory, Some(1), Some(3), Some(pg));
        // rows sum to probability one exactly in rational arithmetic
        let total: BigRational = report
            .rows
            .iter()
            .map(|r| r.p_rational.clone())
            .sum();
        ok &= total == BigRational::one();
        // both candidates tabulated in the serialized report
        let csv = census_csv(&report);
        ok &= csv.starts_with("j,count,p_empirical,p_theory,abs_err,p_theory_unweighted,p_theory_weighted\n");
        ok &= !report.rows.is_empty() && report.pg.is_some();
    }
    ok &= (cand.weighted - cand.unweighted).abs() > 0.01; // the candidates genuinely differ
    verdict(14, "(g=1, l=3) compare reports tabulate both P(g) candidates consistently", ok)
}
