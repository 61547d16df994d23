//! Characteristic-polynomial analysis: the dominant (Perron) root, the full
//! root set with the dominance check, the leading Binet coefficient, the
//! Lekkerkerker constant, and the large-`g` asymptotic approximations.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::{big_ratio, Real};
use crate::recurrence::{KangarooParams, RecurrenceSpec, SequenceTable};

/// Default degree cap for the full root solve.
pub const DEFAULT_MAX_DEGREE: usize = 64;

/// Two computed roots closer than this are flagged as a possible multiplicity
/// and the dominance margin is suppressed.
pub const MULTIPLICITY_GUARD: f64 = 1e-6;

/// Coefficients of the monic characteristic polynomial
/// `x^L - (c_1 x^{L-1} + ... + c_L)`, highest degree first.
pub fn char_poly(spec: &RecurrenceSpec) -> Vec<i128> {
    let mut p = Vec::with_capacity(spec.order() + 1);
    p.push(1i128);
    p.extend(spec.coeffs().iter().map(|&c| -(c as i128)));
    p
}

fn eval_poly<F: Real>(spec: &RecurrenceSpec, x: F) -> F {
    let mut v = F::one();
    for &c in spec.coeffs() {
        v = v * x - F::from_u64(c).unwrap();
    }
    v
}

fn eval_poly_deriv<F: Real>(spec: &RecurrenceSpec, x: F) -> F {
    // derivative of x^L - sum c_i x^{L-i}
    let l = spec.order();
    let mut v = F::from_usize(l).unwrap();
    for (i, &c) in spec.coeffs().iter().enumerate().take(l - 1) {
        let power = l - 1 - i; // exponent of the term c_{i+1} x^{L-1-i} after differentiation
        v = v * x - F::from_usize(power).unwrap() * F::from_u64(c).unwrap();
    }
    v
}

/// Unique positive root of the characteristic polynomial, bracketed on
/// `(1, 1 + sum c_i]` and polished with Newton steps (the root is simple and
/// `f` is increasing past it). Kangaroo specs of degree beyond the root-solve
/// cap are routed through the reduced equation so the polynomial itself is
/// never evaluated at high degree.
pub fn dominant_root<F: Real>(spec: &RecurrenceSpec, tol: F) -> Result<F> {
    if tol <= F::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if spec.order() > DEFAULT_MAX_DEGREE {
        if let Some(p) = spec.as_kangaroo() {
            return kangaroo_dominant_root(p.hop() as u64, p.hops() as u64, tol);
        }
    }
    let mut lo = F::one();
    let mut hi = F::one() + F::from_u64(spec.coeff_sum()).unwrap();
    if eval_poly(spec, lo) >= F::zero() {
        // only possible when sum c_i = 1, i.e. G_{n+1} = G_n variants
        return Ok(F::one());
    }
    for _ in 0..300 {
        let mid = (lo + hi) / F::from_u8(2).unwrap();
        if mid <= lo || mid >= hi {
            break;
        }
        if eval_poly(spec, mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = (lo + hi) / F::from_u8(2).unwrap();
    for _ in 0..8 {
        let d = eval_poly_deriv(spec, x);
        if d == F::zero() {
            break;
        }
        let step = eval_poly(spec, x) / d;
        x = x - step;
        if step.abs() <= tol * x.abs() {
            break;
        }
    }
    Ok(x)
}

/// Dominant root of a Kangaroo recurrence from the reduced fixed-point
/// equation `x = sum_{m=0..l} x^{-mg}`, usable for arbitrarily large `lg + 1`.
pub fn kangaroo_dominant_root<F: Real>(g: u64, hops: u64, tol: F) -> Result<F> {
    if g == 0 || hops == 0 {
        return Err(Error::InvalidArgument("g and l must be >= 1".into()));
    }
    if tol <= F::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let two = F::from_u8(2).unwrap();
    // h(x) = x - (1 - y^{l+1}) / (1 - y) with y = x^{-g}; h < 0 near 1+, h >= 0 at 2
    let h = |x: F| -> F {
        let y = x.powf(-F::from_u64(g).unwrap());
        let sum = if (F::one() - y).abs() < F::epsilon() {
            F::from_u64(hops + 1).unwrap()
        } else {
            (F::one() - y.powf(F::from_u64(hops + 1).unwrap())) / (F::one() - y)
        };
        x - sum
    };
    let mut lo = F::one() + F::epsilon() * two;
    let mut hi = two;
    if h(lo) >= F::zero() || h(hi) < F::zero() {
        return Err(Error::NonConvergence(
            "reduced equation bracket failed".into(),
        ));
    }
    for _ in 0..300 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi || (hi - lo) <= tol * lo {
            break;
        }
        if h(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// All roots of the characteristic polynomial (simultaneous-iteration solve),
/// verified by re-expanding the product against the integer coefficients.
pub fn all_roots<F: Real>(spec: &RecurrenceSpec, max_degree: usize) -> Result<Vec<Complex<F>>> {
    let l = spec.order();
    if l > max_degree {
        return Err(Error::InvalidArgument(format!(
            "degree {l} exceeds root-solve cap {max_degree}"
        )));
    }
    let coeffs: Vec<Complex<F>> = char_poly(spec)
        .iter()
        .map(|&c| Complex::new(F::from_i128(c).unwrap(), F::zero()))
        .collect();
    let eval = |z: Complex<F>| -> Complex<F> {
        let mut v = Complex::zero();
        for &c in &coeffs {
            v = v * z + c;
        }
        v
    };
    let seed = Complex::new(F::from_f64(0.4).unwrap(), F::from_f64(0.9).unwrap());
    let mut roots: Vec<Complex<F>> = (0..l)
        .map(|k| seed.powu(k as u32 + 1))
        .collect();
    let tiny = F::from_f64(1e-14).unwrap();
    for _ in 0..1000 {
        let mut max_step = F::zero();
        for i in 0..l {
            let mut denom = Complex::one();
            for j in 0..l {
                if i != j {
                    denom = denom * (roots[i] - roots[j]);
                }
            }
            if denom.norm() == F::zero() {
                // coincident iterates; nudge apart
                roots[i] = roots[i] + Complex::new(tiny, tiny);
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] = roots[i] - step;
            let rel = step.norm() / (F::one() + roots[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < tiny {
            break;
        }
    }
    // verify by expansion
    let mut expanded = vec![Complex::<F>::one()];
    for &r in &roots {
        let mut next = vec![Complex::<F>::zero(); expanded.len() + 1];
        for (i, &e) in expanded.iter().enumerate() {
            next[i] = next[i] + e;
            next[i + 1] = next[i + 1] - e * r;
        }
        expanded = next;
    }
    let scale = coeffs
        .iter()
        .map(|c| c.norm())
        .fold(F::one(), |a, b| a.max(b));
    let tol = F::from_f64(1e-8).unwrap() * scale;
    for (e, c) in expanded.iter().zip(coeffs.iter()) {
        if (e - c).norm() > tol {
            return Err(Error::NonConvergence(
                "root solve failed re-expansion check".into(),
            ));
        }
    }
    roots.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    Ok(roots)
}

/// Estimate of the leading Binet coefficient `a_1 = lim G_n / lambda1^n`.
#[derive(Debug, Clone, Copy)]
pub struct A1Estimate<F> {
    pub value: F,
    /// Relative change of the last update; the achieved tolerance.
    pub achieved: F,
    pub converged: bool,
}

/// Iterates `r_n = r_{n-1} * (G_n / G_{n-1}) / lambda1` over the table and
/// stops once successive estimates agree to `1e-10` relatively. Reports the
/// partial estimate with a flag if the table runs out first.
pub fn binet_a1<F: Real>(table: &SequenceTable, lambda1: F) -> Result<A1Estimate<F>> {
    if lambda1 <= F::zero() {
        return Err(Error::InvalidArgument("lambda1 must be positive".into()));
    }
    let target = F::from_f64(1e-10).unwrap();
    let mut r = F::one() / lambda1; // G_1 / lambda^1
    let mut achieved = F::infinity();
    for n in 2..=table.len() {
        let ratio: F = big_ratio(table.term(n)?, table.term(n - 1)?);
        let next = r * ratio / lambda1;
        achieved = ((next - r) / next).abs();
        r = next;
        if achieved < target {
            return Ok(A1Estimate {
                value: r,
                achieved,
                converged: true,
            });
        }
    }
    Ok(A1Estimate {
        value: r,
        achieved,
        converged: false,
    })
}

/// Lekkerkerker constant from the normalization of the limiting gap law:
/// `C = a1 * [lambda^{-2g} (y - y^l)/(1 - y) + (lambda - 1) y]` with
/// `y = lambda^{-g}` (the geometric tail over `j > g` closes to
/// `(lambda - 1) y`).
pub fn lekkerkerker_constant<F: Real>(params: &KangarooParams, lambda1: F, a1: F) -> F {
    let g = F::from_u32(params.hop()).unwrap();
    let l = F::from_u32(params.hops()).unwrap();
    let y = lambda1.powf(-g);
    let head = if params.hops() == 1 {
        F::zero()
    } else {
        y * y * (y - y.powf(l)) / (F::one() - y)
    };
    a1 * (head + (lambda1 - F::one()) * y)
}

/// Three-term approximation of `alpha(g)` solving `alpha e^alpha ~ g`.
#[derive(Debug, Clone, Copy)]
pub struct AlphaApprox<F> {
    pub alpha: F,
    /// Relative residual of the defining relation, `|alpha e^alpha - g| / g`.
    pub residual: F,
}

pub fn alpha_approx<F: Real>(g: u64) -> Result<AlphaApprox<F>> {
    if g < 3 {
        return Err(Error::InvalidArgument(
            "alpha approximation requires g >= 3".into(),
        ));
    }
    let gf = F::from_u64(g).unwrap();
    let lg = gf.ln();
    let llg = lg.ln();
    let alpha = lg - llg + llg / lg;
    let residual = ((alpha * alpha.exp() - gf) / gf).abs();
    Ok(AlphaApprox { alpha, residual })
}

/// Heuristic large-parameter approximations of the dominant root and of the
/// gap-at-`g` probability ratio.
#[derive(Debug, Clone)]
pub struct LambdaApprox<F> {
    pub lambda: F,
    /// Approximate ratio P(g) / P(> g), `log(g)/g`.
    pub gap_ratio: F,
    pub warnings: Vec<String>,
}

pub fn lambda_approx<F: Real>(g: u64, hops: u64) -> Result<LambdaApprox<F>> {
    let a = alpha_approx::<F>(g)?;
    let gf = F::from_u64(g).unwrap();
    let mut warnings = Vec::new();
    if g < 10 {
        warnings.push("asymptotic regime warning: g is small; the approximation targets large g".into());
    }
    if hops < g {
        warnings.push("asymptotic regime warning: l < g; the approximation assumes large l".into());
    }
    Ok(LambdaApprox {
        lambda: F::one() + a.alpha / gf,
        gap_ratio: gf.ln() / gf,
        warnings,
    })
}

/// Aggregated spectral data for one recurrence.
#[derive(Debug, Clone)]
pub struct SpectralSummary<F> {
    pub g: Option<u32>,
    pub hops: Option<u32>,
    pub lambda1: F,
    pub a1: F,
    pub c_lek: Option<F>,
    /// `lambda1 - max |other root|`; suppressed when a near-multiplicity is
    /// detected or the root set was not computed.
    pub dominance_margin: Option<F>,
    pub roots: Option<Vec<Complex<F>>>,
    pub alpha: Option<F>,
    pub warnings: Vec<String>,
}

/// Computes the full spectral summary for a recurrence spec.
pub fn summarize<F: Real>(spec: &RecurrenceSpec, tol: F) -> Result<SpectralSummary<F>> {
    let kang = spec.as_kangaroo();
    let lambda1 = dominant_root(spec, tol)?;
    let mut warnings = Vec::new();

    // a1 by the numeric limit, extending the table until the iteration settles
    let mut table_len = 200usize;
    let mut est;
    loop {
        let table = SequenceTable::generate(spec, table_len)?;
        est = binet_a1(&table, lambda1)?;
        if est.converged || table_len >= 3200 {
            break;
        }
        table_len *= 4;
    }
    if !est.converged {
        warnings.push(format!(
            "a1 iteration stopped at relative change {} without reaching 1e-10",
            est.achieved
        ));
    }

    let c_lek = kang.map(|p| lekkerkerker_constant(&p, lambda1, est.value));
    let alpha = match kang {
        Some(p) if p.hop() >= 3 => Some(alpha_approx::<F>(p.hop() as u64)?.alpha),
        _ => None,
    };

    let (roots, dominance_margin) = if spec.order() <= DEFAULT_MAX_DEGREE {
        match all_roots::<F>(spec, DEFAULT_MAX_DEGREE) {
            Ok(roots) => {
                let guard = F::from_f64(MULTIPLICITY_GUARD).unwrap();
                let mut near_multiple = false;
                for i in 0..roots.len() {
                    for j in i + 1..roots.len() {
                        if (roots[i] - roots[j]).norm() < guard {
                            near_multiple = true;
                        }
                    }
                }
                let margin = if near_multiple {
                    warnings.push(
                        "possible repeated root detected; dominance margin suppressed".into(),
                    );
                    None
                } else {
                    let max_other = roots
                        .iter()
                        .map(|r| r.norm())
                        .filter(|&m| (m - lambda1).abs() > guard)
                        .fold(F::zero(), |a, b| a.max(b));
                    Some(lambda1 - max_other)
                };
                (Some(roots), margin)
            }
            Err(e) => {
                warnings.push(format!("root solve skipped: {e}"));
                (None, None)
            }
        }
    } else {
        warnings.push(format!(
            "degree {} above root-solve cap {}; only the dominant root is computed",
            spec.order(),
            DEFAULT_MAX_DEGREE
        ));
        (None, None)
    };

    Ok(SpectralSummary {
        g: kang.map(|p| p.hop()),
        hops: kang.map(|p| p.hops()),
        lambda1,
        a1: est.value,
        c_lek,
        dominance_margin,
        roots,
        alpha,
        warnings,
    })
}
