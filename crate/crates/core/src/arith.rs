//! Exact integer machinery: prime factorization, coprime bipartitions of a
//! dimension, and the modular solver feeding the conjugate-overlap phases.

use thiserror::Error;

/// Largest dimension accepted anywhere in the crate.
///
/// Pairwise products of values below this cap fit in `u64`, keeping all
/// modular phase arithmetic exact.
pub const MAX_M: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("dimension must be a positive integer")]
    InvalidDimension,
    #[error("dimension {0} exceeds the supported cap of 2^31")]
    DimensionTooLarge(u64),
    #[error("factors {m_a} and {m_atilde} are not coprime (gcd = {gcd})")]
    NotCoprime { m_a: u64, m_atilde: u64, gcd: u64 },
    #[error("{part} does not split {m} into two coprime factors")]
    NotABipartition { m: u64, part: u64 },
}

/// Prime factorization of a dimension `m`, primes strictly increasing.
///
/// The number of distinct primes is the quantity that controls how many
/// conjugate basis pairs the dimension admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    m: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `(prime, multiplicity)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes (N). Zero for m = 1.
    pub fn distinct_prime_count(&self) -> usize {
        self.factors.len()
    }

    /// Number of canonical coprime bipartitions: 2^(N-1), with the
    /// convention that m = 1 admits exactly the trivial pair (1, 1).
    pub fn bipartition_count(&self) -> u64 {
        match self.distinct_prime_count() {
            0 => 1,
            n => 1 << (n - 1),
        }
    }
}

/// Factor `m` by trial division.
///
/// For m = 1 the factor list is empty.
pub fn factorize(m: u64) -> Result<Factorization, ArithError> {
    if m == 0 {
        return Err(ArithError::InvalidDimension);
    }
    if m > MAX_M {
        return Err(ArithError::DimensionTooLarge(m));
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { m, factors })
}

/// Square-free rescaling: `(radical, cofactor)` with `radical * cofactor = m`.
///
/// The radical is the product of the distinct primes of `m`, so it keeps the
/// same distinct-prime count and therefore the same family of bipartitions.
pub fn radical_rescale(f: &Factorization) -> (u64, u64) {
    let radical: u64 = f.factors.iter().map(|&(p, _)| p).product();
    (radical, f.m / radical)
}

/// An ordered coprime splitting `m = m_a * m_atilde` with `m_a <= m_atilde`.
///
/// Every distinct prime of `m` contributes its full power to exactly one
/// side; `subset_mask` records which primes (by index into the increasing
/// factor list) landed on the `m_a` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    m_a: u64,
    m_atilde: u64,
    subset_mask: u32,
}

impl Bipartition {
    /// Canonical pair containing `part` as one of its two factors.
    pub fn from_factor(f: &Factorization, part: u64) -> Result<Self, ArithError> {
        let m = f.m();
        if part == 0 || m % part != 0 {
            return Err(ArithError::NotABipartition { m, part });
        }
        let other = m / part;
        let g = gcd(part, other);
        if g != 1 {
            return Err(ArithError::NotCoprime {
                m_a: part.min(other),
                m_atilde: part.max(other),
                gcd: g,
            });
        }
        let m_a = part.min(other);
        let m_atilde = part.max(other);
        let mut subset_mask = 0u32;
        for (i, &(p, _)) in f.factors().iter().enumerate() {
            if m_a % p == 0 {
                subset_mask |= 1 << i;
            }
        }
        Ok(Bipartition {
            m_a,
            m_atilde,
            subset_mask,
        })
    }

    pub fn m(&self) -> u64 {
        self.m_a * self.m_atilde
    }

    pub fn m_a(&self) -> u64 {
        self.m_a
    }

    pub fn m_atilde(&self) -> u64 {
        self.m_atilde
    }

    pub fn subset_mask(&self) -> u32 {
        self.subset_mask
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.m_a, self.m_atilde)
    }
}

/// All canonical coprime bipartitions of `f.m()`, sorted ascending by `m_a`.
///
/// The list always starts with the Fourier pair (1, m) and has exactly
/// 2^(N-1) entries for N >= 1 distinct primes (one entry, (1, 1), for m = 1).
pub fn enumerate_bipartitions(f: &Factorization) -> Vec<Bipartition> {
    let n = f.distinct_prime_count();
    let mut out = Vec::with_capacity(1usize << n.saturating_sub(1));
    for mask in 0u32..(1u32 << n) {
        let mut m_a = 1u64;
        for (i, &(p, e)) in f.factors().iter().enumerate() {
            if mask & (1 << i) != 0 {
                m_a *= p.pow(e);
            }
        }
        let m_atilde = f.m() / m_a;
        if m_a <= m_atilde {
            out.push(Bipartition {
                m_a,
                m_atilde,
                subset_mask: mask,
            });
        }
    }
    out.sort();
    out
}

/// The unique in-range solution of `t*m_atilde - s*m_a = r (mod m)`.
///
/// `r` is stored as its canonical class representative in `0..m`; `s` and
/// `t` follow the one-based index convention, `s` in `1..=m_atilde` and `t`
/// in `1..=m_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSolution {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

/// Solve `t*m_atilde - s*m_a ≡ r (mod m)` for the unique in-range `(s, t)`.
///
/// Splits the congruence by the Chinese remainder theorem: reducing mod
/// `m_a` fixes `t`, reducing mod `m_atilde` fixes `s`, each through a
/// modular inverse from the extended gcd. No searching.
pub fn solve_st(b: &Bipartition, r: i64) -> Result<CrtSolution, ArithError> {
    let (ma, mat) = (b.m_a(), b.m_atilde());
    let g = gcd(ma, mat);
    if g != 1 {
        return Err(ArithError::NotCoprime {
            m_a: ma,
            m_atilde: mat,
            gcd: g,
        });
    }
    let m = b.m();
    let r_mod = r.rem_euclid(m as i64) as u64;

    // t ≡ r * inv(m_atilde)  (mod m_a)
    let inv_mat = mod_inverse(mat % ma, ma).expect("coprime moduli");
    let t0 = mul_mod(r_mod % ma, inv_mat, ma);
    // s ≡ -r * inv(m_a)  (mod m_atilde)
    let inv_ma = mod_inverse(ma % mat, mat).expect("coprime moduli");
    let s0 = (mat - mul_mod(r_mod % mat, inv_ma, mat)) % mat;

    Ok(CrtSolution {
        r: r_mod,
        s: one_based(s0, mat),
        t: one_based(t0, ma),
    })
}

/// Map a residue in `0..modulus` to the one-based range `1..=modulus`.
fn one_based(x: u64, modulus: u64) -> u64 {
    if x == 0 {
        modulus
    } else {
        x
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Extended euclidean algorithm: `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    (r0, x0, y0)
}

/// Inverse of `a` modulo `modulus`, when it exists.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd((a % modulus) as i64, modulus as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(modulus as i64) as u64)
}

fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}
