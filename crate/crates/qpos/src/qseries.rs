//! q-series primitives: Pochhammer products, Gaussian binomial
//! coefficients, the trinomial-style product coefficient, triangular
//! numbers, and the Legendre symbol mod 3.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Zero};

use crate::qpoly::Polynomial;
use crate::Error;

/// `T(j) = j(j+1)/2`, non-negative for every integer `j`.
pub fn triangular(j: i64) -> i64 {
    // one of j, j+1 is even, so the product halves exactly
    j * (j + 1) / 2
}

/// Legendre symbol mod 3: 1, -1, 0 for residues 1, 2, 0. Negative
/// arguments are reduced with the non-negative remainder.
pub fn legendre3(j: i64) -> i64 {
    match j.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Finite Pochhammer product `(q^d; q^d)_L = prod_{k=1..L} (1 - q^{dk})`.
pub fn pochhammer(l: u32, d: u32) -> Polynomial {
    assert!(d >= 1, "pochhammer base power must be positive");
    let mut acc = Polynomial::one();
    for k in 1..=l {
        let factor = &Polynomial::one() - &Polynomial::monomial(1, (d * k) as i64);
        acc = &acc * &factor;
    }
    acc
}

/// Bounded memo table with least-recently-used eviction. Access order is
/// tracked with a logical clock; eviction drops the oldest eighth.
struct LruMap<K, V> {
    map: HashMap<K, (V, u64)>,
    clock: u64,
    cap: usize,
}

impl<K: std::hash::Hash + Eq + Clone, V: Clone> LruMap<K, V> {
    fn new(cap: usize) -> Self {
        LruMap { map: HashMap::new(), clock: 0, cap: cap.max(16) }
    }

    fn get(&mut self, key: &K) -> Option<V> {
        self.clock += 1;
        let clock = self.clock;
        self.map.get_mut(key).map(|slot| {
            slot.1 = clock;
            slot.0.clone()
        })
    }

    fn insert(&mut self, key: K, value: V) {
        if self.map.len() >= self.cap && !self.map.contains_key(&key) {
            let mut stamps: Vec<u64> = self.map.values().map(|(_, t)| *t).collect();
            stamps.sort_unstable();
            let cutoff = stamps[self.cap / 8];
            self.map.retain(|_, (_, t)| *t > cutoff);
        }
        self.clock += 1;
        self.map.insert(key, (value, self.clock));
    }
}

const GAUSSIAN_CACHE_CAP: usize = 1 << 16;

type GaussianCache = Mutex<LruMap<(i64, i64), Arc<Polynomial>>>;

fn gaussian_cache() -> &'static GaussianCache {
    static CACHE: OnceLock<GaussianCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(LruMap::new(GAUSSIAN_CACHE_CAP)))
}

/// Adjust the memo-table entry cap (entries beyond it are evicted
/// least-recently-used). Results are unaffected; only memory use is.
pub fn set_gaussian_cache_cap(cap: usize) {
    let mut cache = gaussian_cache().lock().unwrap();
    cache.cap = cap.max(16);
}

/// Gaussian binomial `[m over n]` in base `q`, computed by the Pascal
/// recurrence `[m over n] = [m-1 over n-1] + q^n [m-1 over n]` with a
/// shared memo table. Returns zero unless `m >= n >= 0`.
pub fn qbinom(m: i64, n: i64) -> Arc<Polynomial> {
    static ZERO: OnceLock<Arc<Polynomial>> = OnceLock::new();
    static ONE: OnceLock<Arc<Polynomial>> = OnceLock::new();
    if n < 0 || m < n {
        return Arc::clone(ZERO.get_or_init(|| Arc::new(Polynomial::zero())));
    }
    // symmetry [m over n] = [m over m-n]: key the smaller side
    let n = n.min(m - n);
    if n == 0 {
        return Arc::clone(ONE.get_or_init(|| Arc::new(Polynomial::one())));
    }
    if let Some(hit) = gaussian_cache().lock().unwrap().get(&(m, n)) {
        return hit;
    }
    let a = qbinom(m - 1, n - 1);
    let b = qbinom(m - 1, n);
    let value = Arc::new(&*a + &b.shifted(n));
    gaussian_cache().lock().unwrap().insert((m, n), Arc::clone(&value));
    value
}

/// Gaussian binomial `[m over n]` in base `q^d`.
pub fn qbinom_base(m: i64, n: i64, d: u32) -> Polynomial {
    let base = qbinom(m, n);
    if d == 1 {
        (*base).clone()
    } else {
        base.substitute_power(d)
    }
}

/// Pochhammer-quotient route to the Gaussian binomial, used as an
/// independent cross-check of [`qbinom`].
pub fn qbinom_by_quotient(m: i64, n: i64, d: u32) -> Result<Polynomial, Error> {
    if n < 0 || m < n {
        return Ok(Polynomial::zero());
    }
    let num = pochhammer(m as u32, d);
    let den = &pochhammer(n as u32, d) * &pochhammer((m - n) as u32, d);
    num.div_exact(&den)
}

/// Trinomial-style coefficient `[L over m,k] = [L over m] [L-m over k]`.
pub fn qtrinom(l: i64, m: i64, k: i64) -> Polynomial {
    let first = qbinom(l, m);
    if first.is_zero() {
        return Polynomial::zero();
    }
    let second = qbinom(l - m, k);
    &*first * &second
}

/// Ordinary binomial coefficient as a big integer; zero outside range.
pub fn binomial_big(m: i64, n: i64) -> BigInt {
    if n < 0 || m < n {
        return BigInt::zero();
    }
    let n = n.min(m - n);
    let mut acc = BigInt::one();
    for t in 1..=n {
        acc = acc * BigInt::from(m - n + t) / BigInt::from(t);
    }
    acc
}
