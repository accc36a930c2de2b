//! Counting sequences whose adjacent pairs are allowed by a 0/1 transition
//! matrix, modulo `M`: a linear DP, matrix powering, and a binary
//! decomposition over power-of-two lengths.

use thiserror::Error;

use crate::field::MAX_MODULUS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("transition entry {0} is not 0 or 1")]
    NonBinary(u64),
    #[error("sequence length must be in 1..=2^63-1, got {0}")]
    BadLength(u64),
    #[error("modulus must be in 1..=2^31-1, got {0}")]
    BadModulus(u64),
}

/// Square 0/1 matrix; `allowed(i, j)` means `j` may follow `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    k: usize,
    bits: Vec<bool>,
}

impl Transition {
    pub fn new<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self, SeqError> {
        let k = rows.len();
        if k == 0 {
            return Err(SeqError::EmptyAlphabet);
        }
        let mut bits = Vec::with_capacity(k * k);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != k {
                return Err(SeqError::RaggedRow {
                    row,
                    got: r.len(),
                    expected: k,
                });
            }
            for &v in r {
                match v {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    other => return Err(SeqError::NonBinary(other)),
                }
            }
        }
        Ok(Transition { k, bits })
    }

    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self, SeqError> {
        if k == 0 {
            return Err(SeqError::EmptyAlphabet);
        }
        let bits = (0..k * k).map(|v| f(v / k, v % k)).collect();
        Ok(Transition { k, bits })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn allowed(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.k + j]
    }

    fn as_mod(&self, m: u64) -> ModMatrix {
        ModMatrix {
            k: self.k,
            data: self.bits.iter().map(|&b| b as u64 % m).collect(),
        }
    }
}

fn check(n: u64, m: u64) -> Result<(), SeqError> {
    if n == 0 || n > i64::MAX as u64 {
        return Err(SeqError::BadLength(n));
    }
    if m == 0 || m > MAX_MODULUS {
        return Err(SeqError::BadModulus(m));
    }
    Ok(())
}

/// Dense `k x k` matrix of residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    k: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(k: usize, m: u64) -> Self {
        let data = (0..k * k).map(|v| (v / k == v % k) as u64 % m).collect();
        ModMatrix { k, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.k + j]
    }

    pub fn mul(&self, other: &ModMatrix, m: u64) -> ModMatrix {
        let k = self.k;
        let mut data = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let acc: u128 = (0..k)
                    .map(|p| self.data[i * k + p] as u128 * other.data[p * k + j] as u128)
                    .sum();
                data[i * k + j] = (acc % m as u128) as u64;
            }
        }
        ModMatrix { k, data }
    }

    pub fn total(&self, m: u64) -> u64 {
        (self.data.iter().map(|&v| v as u128).sum::<u128>() % m as u128) as u64
    }
}

/// `S(l, j)`: sequences of length `l` ending in `j`, built one length at a
/// time.
pub fn count_dp(t: &Transition, n: u64, m: u64) -> Result<u64, SeqError> {
    check(n, m)?;
    let mut s = vec![1 % m; t.k];
    for _ in 1..n {
        s = dp_step(t, &s, m);
    }
    Ok(s.iter().sum::<u64>() % m)
}

fn dp_step(t: &Transition, s: &[u64], m: u64) -> Vec<u64> {
    (0..t.k)
        .map(|j| {
            let acc: u64 = (0..t.k).filter(|&i| t.allowed(i, j)).map(|i| s[i]).sum();
            acc % m
        })
        .collect()
}

/// Counts for every length `1..=n_max`; entry `l - 1` is length `l`.
pub fn count_dp_prefixes(t: &Transition, n_max: usize, m: u64) -> Result<Vec<u64>, SeqError> {
    check(n_max as u64, m)?;
    let mut s = vec![1 % m; t.k];
    let mut out = Vec::with_capacity(n_max);
    out.push(s.iter().sum::<u64>() % m);
    for _ in 1..n_max {
        s = dp_step(t, &s, m);
        out.push(s.iter().sum::<u64>() % m);
    }
    Ok(out)
}

/// Result of [`count_matpow`] with the number of `k x k` products used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatPowCount {
    pub value: u64,
    pub multiplications: u64,
}

/// Sum of all entries of `T^(n-1)` by repeated squaring.
pub fn count_matpow(t: &Transition, n: u64, m: u64) -> Result<MatPowCount, SeqError> {
    check(n, m)?;
    let mut e = n - 1;
    let mut multiplications = 0u64;
    let mut base = t.as_mod(m);
    let mut acc: Option<ModMatrix> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => {
                    multiplications += 1;
                    a.mul(&base, m)
                }
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, m);
            multiplications += 1;
        }
    }
    let power = acc.unwrap_or_else(|| ModMatrix::identity(t.k, m));
    Ok(MatPowCount {
        value: power.total(m),
        multiplications,
    })
}

/// `tables[l]` counts sequences of length `2^l` by first and last symbol:
/// `S(0) = I`, `S(l) = S(l-1) T S(l-1)`.
pub fn power_tables(t: &Transition, levels: usize, m: u64) -> Vec<ModMatrix> {
    let tm = t.as_mod(m);
    let mut tables = vec![ModMatrix::identity(t.k, m)];
    for l in 1..levels {
        let prev = &tables[l - 1];
        let next = prev.mul(&tm, m).mul(prev, m);
        tables.push(next);
    }
    tables
}

/// Splits `n` into powers of two and glues the matching length tables
/// together, one transition between consecutive pieces.
pub fn count_binary_decomp(t: &Transition, n: u64, m: u64) -> Result<u64, SeqError> {
    check(n, m)?;
    let levels = 64 - n.leading_zeros() as usize;
    let tables = power_tables(t, levels, m);
    let tm = t.as_mod(m);
    let mut u: Option<ModMatrix> = None;
    for (p, s) in tables.iter().enumerate() {
        if n >> p & 1 == 0 {
            continue;
        }
        u = Some(match u {
            None => s.clone(),
            Some(prev) => prev.mul(&tm, m).mul(s, m),
        });
    }
    Ok(u.expect("n has a set bit").total(m))
}
