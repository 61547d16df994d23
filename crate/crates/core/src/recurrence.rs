//! Positive linear recurrence specifications and exact sequence tables.
//!
//! A recurrence `G_{n+1} = c_1 G_n + ... + c_L G_{n+1-L}` with non-negative
//! integer coefficients and `c_1, c_L > 0` is seeded with `G_1 = 1` and, for
//! `1 <= n <= L-1`, `G_{n+1} = c_1 G_n + ... + c_n G_1 + 1`; the full
//! recurrence takes over at `n = L`. The Kangaroo family puts ones exactly at
//! positions `1, g+1, 2g+1, ..., lg+1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient vector `c_1..c_L` of a positive linear recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coeffs: Vec<u64>,
}

impl RecurrenceSpec {
    /// Validates and wraps a coefficient vector.
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec("coefficient list is empty".into()));
        }
        if coeffs[0] == 0 {
            return Err(Error::InvalidSpec("c1 must be positive (c1 = 0)".into()));
        }
        if *coeffs.last().unwrap() == 0 {
            return Err(Error::InvalidSpec(format!(
                "cL must be positive (c{} = 0)",
                coeffs.len()
            )));
        }
        Ok(RecurrenceSpec { coeffs })
    }

    /// Recurrence length `L`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff_sum(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Recognizes a Kangaroo coefficient pattern (ones exactly at positions
    /// `1, g+1, ..., lg+1`).
    pub fn as_kangaroo(&self) -> Option<KangarooParams> {
        let ones: Vec<usize> = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| match c {
                0 => None,
                1 => Some(i),
                _ => Some(usize::MAX),
            })
            .collect();
        if ones.contains(&usize::MAX) || ones.first() != Some(&0) {
            return None;
        }
        if ones.len() == 1 {
            return None; // single-term recurrence, not a Kangaroo
        }
        let g = ones[1] - ones[0];
        let hops = ones.len() - 1;
        if ones != (0..=hops).map(|m| m * g).collect::<Vec<_>>() {
            return None;
        }
        if *ones.last().unwrap() + 1 != self.coeffs.len() {
            return None;
        }
        KangarooParams::new(g as u32, hops as u32).ok()
    }
}

/// Kangaroo family parameters: hop length `g` and hop count `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KangarooParams {
    hop: u32,
    hops: u32,
}

impl KangarooParams {
    pub fn new(hop: u32, hops: u32) -> Result<Self> {
        if hop == 0 {
            return Err(Error::InvalidArgument("hop length g must be >= 1".into()));
        }
        if hops == 0 {
            return Err(Error::InvalidArgument("hop count l must be >= 1".into()));
        }
        Ok(KangarooParams { hop, hops })
    }

    /// Hop length `g`.
    pub fn hop(&self) -> u32 {
        self.hop
    }

    /// Number of hops `l`.
    pub fn hops(&self) -> u32 {
        self.hops
    }

    /// Recurrence length `L = lg + 1`.
    pub fn order(&self) -> usize {
        self.hops as usize * self.hop as usize + 1
    }

    /// Induced coefficient vector, ones at positions `1, g+1, ..., lg+1`.
    pub fn to_spec(&self) -> RecurrenceSpec {
        let g = self.hop as usize;
        let mut coeffs = vec![0u64; self.order()];
        for m in 0..=self.hops as usize {
            coeffs[m * g] = 1;
        }
        RecurrenceSpec { coeffs }
    }
}

/// Convenience constructor mirroring the Kangaroo definition.
pub fn kangaroo_spec(hop: u32, hops: u32) -> Result<RecurrenceSpec> {
    Ok(KangarooParams::new(hop, hops)?.to_spec())
}

/// Exact terms `G_1..G_N` of a recurrence. Immutable after generation;
/// extending produces a new table, so shared references stay valid across
/// concurrent readers.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    spec: RecurrenceSpec,
    values: Vec<BigInt>,
}

impl SequenceTable {
    /// Generates the first `len` terms.
    pub fn generate(spec: &RecurrenceSpec, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidArgument("table length must be >= 1".into()));
        }
        let mut table = SequenceTable {
            spec: spec.clone(),
            values: vec![BigInt::one()],
        };
        table.fill_to(len);
        Ok(table)
    }

    fn fill_to(&mut self, len: usize) {
        let c = self.spec.coeffs();
        let big_l = c.len();
        while self.values.len() < len {
            let n = self.values.len(); // computing G_{n+1}, already have G_1..G_n
            let mut v = BigInt::zero();
            if n < big_l {
                for i in 1..=n {
                    v += BigInt::from(c[i - 1]) * &self.values[n - i];
                }
                v += 1;
            } else {
                for i in 1..=big_l {
                    v += BigInt::from(c[i - 1]) * &self.values[n - i];
                }
            }
            self.values.push(v);
        }
    }

    /// Returns a new table covering at least `len` terms.
    pub fn extended(&self, len: usize) -> Self {
        let mut t = self.clone();
        t.fill_to(len);
        t
    }

    /// Returns a new table whose last term strictly exceeds `m`.
    pub fn extended_past(&self, m: &BigInt) -> Self {
        let mut t = self.clone();
        while t.values.last().unwrap() <= m {
            let len = t.values.len() + 1;
            t.fill_to(len);
        }
        t
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // G_1 is always present
    }

    /// Term `G_n` for `1 <= n <= N`.
    pub fn term(&self, n: usize) -> Result<&BigInt> {
        if n == 0 || n > self.values.len() {
            return Err(Error::IndexOutOfRange(format!(
                "G_{n} requested from a table of {} terms",
                self.values.len()
            )));
        }
        Ok(&self.values[n - 1])
    }

    /// Term with the boundary convention `G_0 = 1`, `G_r = 0` for `r < 0`,
    /// used by the closed-form gap counts at interval edges.
    pub fn term_ext(&self, r: i64) -> BigInt {
        if r < 0 {
            BigInt::zero()
        } else if r == 0 {
            BigInt::one()
        } else {
            self.values[(r - 1) as usize].clone()
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}
