//! Exact 64-bit integer arithmetic: primality, factorization, gcd, and the
//! [`DegreeSet`] container that every graph builder consumes.
//!
//! Factorization runs trial division by all primes below 2^20 and hands any
//! remaining cofactor to Brent's variant of Pollard rho. The rho seeds are
//! fixed, so output is fully deterministic. Primality uses Miller-Rabin with
//! the first twelve prime bases, which is exact on the whole `u64` range.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest accepted input (2^63 - 1).
pub const MAX_VALUE: u64 = i64::MAX as u64;

const TRIAL_BOUND: usize = 1 << 20;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{0} is larger than 2^63 - 1")]
    OutOfRange(u64),
    #[error("invalid degree {entry:?}: {reason}")]
    Parse { entry: String, reason: String },
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; TRIAL_BOUND + 1];
        let mut primes = Vec::new();
        for i in 2..=TRIAL_BOUND {
            if composite[i] {
                continue;
            }
            primes.push(i as u32);
            let mut j = i * i;
            while j <= TRIAL_BOUND {
                composite[j] = true;
                j += i;
            }
        }
        primes
    })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple; `None` on overflow.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

// Brent's cycle detection with batched gcds. `n` must be an odd composite.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (0, 2, 0);
        let (mut g, mut r, mut q) = (1, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted every constant for {n}")
}

fn split_cofactor(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(n);
    split_cofactor(d, out);
    split_cofactor(n / d, out);
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factor `n` into primes. Accepts `1 <= n <= 2^63 - 1`.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    if n > MAX_VALUE {
        return Err(ArithError::OutOfRange(n));
    }
    let mut rest = n;
    let mut found = BTreeMap::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.insert(p, e);
        }
    }
    split_cofactor(rest, &mut found);
    Ok(Factorization {
        value: n,
        factors: found.into_iter().collect(),
    })
}

/// A set of character degrees.
///
/// Membership of 1 is tracked separately from the nonlinear degrees; the
/// graph builders only ever look at the members greater than 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeSet {
    contains_one: bool,
    nonlinear: BTreeMap<u64, Factorization>,
    primes: BTreeSet<u64>,
}

impl DegreeSet {
    pub fn new<I: IntoIterator<Item = u64>>(degrees: I) -> Result<Self, ArithError> {
        let mut set = DegreeSet::default();
        for d in degrees {
            set.insert(d)?;
        }
        Ok(set)
    }

    fn insert(&mut self, d: u64) -> Result<(), ArithError> {
        if d == 1 {
            self.contains_one = true;
            return Ok(());
        }
        if self.nonlinear.contains_key(&d) {
            return Ok(());
        }
        let fact = factorize(d)?;
        self.primes.extend(fact.primes());
        self.nonlinear.insert(d, fact);
        Ok(())
    }

    /// Same set with 1 recorded as a member.
    pub fn with_one(mut self) -> Self {
        self.contains_one = true;
        self
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn contains(&self, d: u64) -> bool {
        if d == 1 {
            self.contains_one
        } else {
            self.nonlinear.contains_key(&d)
        }
    }

    /// All recorded members in ascending order, 1 included when recorded.
    pub fn degrees(&self) -> Vec<u64> {
        let one = self.contains_one.then_some(1);
        one.into_iter().chain(self.nonlinear.keys().copied()).collect()
    }

    /// Members greater than 1, ascending.
    pub fn nonlinear(&self) -> impl Iterator<Item = u64> + '_ {
        self.nonlinear.keys().copied()
    }

    pub fn nonlinear_count(&self) -> usize {
        self.nonlinear.len()
    }

    /// Size of the degree set read as a full `cd(G)`, which always contains 1.
    pub fn cd_size(&self) -> usize {
        self.nonlinear.len() + 1
    }

    pub fn len(&self) -> usize {
        self.nonlinear.len() + usize::from(self.contains_one)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factorization(&self, d: u64) -> Option<&Factorization> {
        self.nonlinear.get(&d)
    }

    /// Primes dividing at least one member.
    pub fn primes(&self) -> &BTreeSet<u64> {
        &self.primes
    }
}

/// The primes dividing some member of `x`.
pub fn rho(x: &DegreeSet) -> BTreeSet<u64> {
    x.primes().clone()
}

impl FromStr for DegreeSet {
    type Err = ArithError;

    /// Parses a comma-separated list such as `"1,9,10,16"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for entry in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let value: u64 = entry.parse().map_err(|e| ArithError::Parse {
                entry: entry.to_string(),
                reason: format!("{e}"),
            })?;
            values.push(value);
        }
        DegreeSet::new(values)
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.degrees().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for DegreeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.degrees())
    }
}
