//! The alternating-sum polynomial families `D_{K,i}(N,M;alpha,beta)` and
//! `G(N,M;alpha,beta,K) = D_{2K,K}(N,M;alpha,beta)`, with exact rational
//! parameters, regime validation, and the transposition symmetry check.

use num::rational::Ratio;
use num::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::qpoly::Polynomial;
use crate::qseries::qbinom;
use crate::Error;

/// Exact rational parameter; reduced form with positive denominator is
/// maintained by the underlying `Ratio`.
pub type Rational = Ratio<i64>;

/// Parse "a/b" or "a" exactly; floating-point forms are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator {num:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator {den:?}")))?;
        if d == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rational::from_integer(n))
    }
}

fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Parameter tuple `(K, i, N, M, alpha, beta)` with the integrality and
/// sign invariants needed for every exponent of the defining sum to be an
/// integer: `0 < i < K`, `N, M >= 0`, `alpha, beta >= 0`, and
/// `alpha*K, beta*K, alpha*i, beta*i` all integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DParams {
    pub k: i64,
    pub i: i64,
    pub n: i64,
    pub m: i64,
    pub alpha: Rational,
    pub beta: Rational,
}

impl DParams {
    pub fn new(
        k: i64,
        i: i64,
        n: i64,
        m: i64,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self, Error> {
        if !(0 < i && i < k) {
            return Err(Error::Range(format!("need 0 < i < K, got i={i}, K={k}")));
        }
        if n < 0 || m < 0 {
            return Err(Error::NegativeSize(format!("need N, M >= 0, got N={n}, M={m}")));
        }
        if alpha.is_negative() || beta.is_negative() {
            return Err(Error::Range(format!("need alpha, beta >= 0, got {alpha}, {beta}")));
        }
        for (label, value) in [
            ("alpha*K", alpha * Rational::from_integer(k)),
            ("beta*K", beta * Rational::from_integer(k)),
            ("alpha*i", alpha * Rational::from_integer(i)),
            ("beta*i", beta * Rational::from_integer(i)),
        ] {
            if !value.is_integer() {
                return Err(Error::Range(format!("{label} = {value} is not an integer")));
            }
        }
        Ok(DParams { k, i, n, m, alpha, beta })
    }

    /// The transposed parameter tuple `(K, K-i, M, N, beta, alpha)`.
    pub fn transposed(&self) -> DParams {
        DParams {
            k: self.k,
            i: self.k - self.i,
            n: self.m,
            m: self.n,
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn key(&self) -> String {
        format!(
            "K={} i={} N={} M={} alpha={} beta={}",
            self.k, self.i, self.n, self.m, self.alpha, self.beta
        )
    }
}

/// Raw alternating double sum over `j` with `Kj` ranging across the
/// supports of both Gaussian binomials. `n` and `m` may be any integers
/// here; out-of-range values simply kill the binomials. Fails only if a
/// rational exponent comes out non-integral.
pub(crate) fn d_sum(
    k: i64,
    i: i64,
    n: i64,
    m: i64,
    alpha: Rational,
    beta: Rational,
) -> Result<Polynomial, Error> {
    if m + n < 0 {
        return Ok(Polynomial::zero());
    }
    let kq = Rational::from_integer(k);
    let iq = Rational::from_integer(i);
    let ab = alpha + beta;
    let mut acc = Polynomial::zero();
    let j_lo = (-n - i).div_euclid(k) + i64::from((-n - i).rem_euclid(k) != 0);
    let j_hi = m.div_euclid(k);
    for j in j_lo..=j_hi {
        let jq = Rational::from_integer(j);
        // q^{j((alpha+beta)Kj + K beta - (alpha+beta)i)} [M+N over M-Kj]
        let e1 = jq * (ab * kq * jq + kq * beta - ab * iq);
        let e1 = as_integer(&e1).ok_or_else(|| {
            Error::NonIntegralExponent(format!("first exponent {e1} at j={j}"))
        })?;
        let t1 = qbinom(m + n, m - k * j);
        if !t1.is_zero() {
            acc = &acc + &t1.shifted(e1);
        }
        // q^{((alpha+beta)j + beta)(Kj + i)} [M+N over M-Kj-i]
        let e2 = (ab * jq + beta) * (kq * jq + iq);
        let e2 = as_integer(&e2).ok_or_else(|| {
            Error::NonIntegralExponent(format!("second exponent {e2} at j={j}"))
        })?;
        let t2 = qbinom(m + n, m - k * j - i);
        if !t2.is_zero() {
            acc = &acc - &t2.shifted(e2);
        }
    }
    Ok(acc)
}

/// Raw single alternating sum for the `G` specialization:
/// `sum_j (-1)^j q^{Kj((alpha+beta)j + alpha - beta)/2} [M+N over N-Kj]`.
pub(crate) fn g_sum(
    k: i64,
    n: i64,
    m: i64,
    alpha: Rational,
    beta: Rational,
) -> Result<Polynomial, Error> {
    if m + n < 0 {
        return Ok(Polynomial::zero());
    }
    let kq = Rational::from_integer(k);
    let half = Rational::new(1, 2);
    let ab = alpha + beta;
    let mut acc = Polynomial::zero();
    let j_lo = (-m).div_euclid(k) + i64::from((-m).rem_euclid(k) != 0);
    let j_hi = n.div_euclid(k);
    for j in j_lo..=j_hi {
        let jq = Rational::from_integer(j);
        let e = half * kq * jq * (ab * jq + alpha - beta);
        let e = as_integer(&e)
            .ok_or_else(|| Error::NonIntegralExponent(format!("exponent {e} at j={j}")))?;
        let term = qbinom(m + n, n - k * j);
        if term.is_zero() {
            continue;
        }
        if j.rem_euclid(2) == 0 {
            acc = &acc + &term.shifted(e);
        } else {
            acc = &acc - &term.shifted(e);
        }
    }
    Ok(acc)
}

/// Evaluate `D_{K,i}(N,M;alpha,beta)` for validated parameters.
pub fn d_poly(p: &DParams) -> Polynomial {
    // integrality of alpha*K, beta*K, alpha*i, beta*i makes every exponent
    // of the sum an integer, so this cannot fail on a validated tuple
    d_sum(p.k, p.i, p.n, p.m, p.alpha, p.beta).expect("integral exponents for valid DParams")
}

/// Evaluate `G(N,M;alpha,beta,K) = D_{2K,K}(N,M;alpha,beta)` through the
/// single alternating sum. In debug builds the result is checked against
/// the double-sum route.
pub fn g_poly(n: i64, m: i64, alpha: Rational, beta: Rational, k: i64) -> Result<Polynomial, Error> {
    if k < 1 {
        return Err(Error::Range(format!("need K >= 1, got {k}")));
    }
    if n < 0 || m < 0 {
        return Err(Error::NegativeSize(format!("need N, M >= 0, got N={n}, M={m}")));
    }
    if alpha.is_negative() || beta.is_negative() {
        return Err(Error::Range(format!("need alpha, beta >= 0, got {alpha}, {beta}")));
    }
    for (label, value) in [
        ("alpha*K", alpha * Rational::from_integer(k)),
        ("beta*K", beta * Rational::from_integer(k)),
    ] {
        if !value.is_integer() {
            return Err(Error::Range(format!("{label} = {value} is not an integer")));
        }
    }
    let g = g_sum(k, n, m, alpha, beta)?;
    debug_assert_eq!(
        g,
        d_sum(2 * k, k, n, m, alpha, beta)?,
        "single-sum and double-sum routes disagree"
    );
    Ok(g)
}

/// Named positivity regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeKind {
    /// Integer `alpha, beta >= 0`, `1 <= alpha+beta <= K-1`, and
    /// `beta-i <= N-M <= K-alpha-i`: non-negativity is a theorem.
    Corollary12,
    /// `G`-level conjecture: `alpha*K, beta*K` integers,
    /// `1 <= alpha+beta <= 2K-1` (strict when `K = 2`),
    /// `beta-K <= N-M <= K-alpha`.
    Conjecture13,
    /// `D`-level conjecture: `alpha*K, beta*K, alpha*i, beta*i` integers,
    /// `1 <= alpha+beta <= K-1` (strict when `K = 4, i = 2`),
    /// `beta-i <= N-M <= K-alpha-i`.
    Conjecture21,
}

impl RegimeKind {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "COR_1_2" | "COROLLARY_1_2" => Ok(RegimeKind::Corollary12),
            "CONJ_1_3" | "CONJECTURE_1_3" => Ok(RegimeKind::Conjecture13),
            "CONJ_2_1" | "CONJECTURE_2_1" => Ok(RegimeKind::Conjecture21),
            other => Err(Error::Parse(format!("unknown regime {other:?}"))),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            RegimeKind::Corollary12 => "COR_1_2",
            RegimeKind::Conjecture13 => "CONJ_1_3",
            RegimeKind::Conjecture21 => "CONJ_2_1",
        }
    }
}

/// Outcome of a regime check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    pub kind: RegimeKind,
    pub satisfied: bool,
    pub violated_condition: Option<String>,
}

impl Regime {
    fn ok(kind: RegimeKind) -> Self {
        Regime { kind, satisfied: true, violated_condition: None }
    }

    fn fail(kind: RegimeKind, why: String) -> Self {
        Regime { kind, satisfied: false, violated_condition: Some(why) }
    }
}

/// Evaluate the named regime's inequalities exactly for the tuple `p`.
pub fn validate(p: &DParams, kind: RegimeKind) -> Regime {
    let diff = Rational::from_integer(p.n - p.m);
    let sum = p.alpha + p.beta;
    let one = Rational::one();
    match kind {
        RegimeKind::Corollary12 => {
            if !p.alpha.is_integer() || !p.beta.is_integer() {
                return Regime::fail(kind, format!(
                    "alpha and beta must be non-negative integers, got {}, {}",
                    p.alpha, p.beta
                ));
            }
            let upper = Rational::from_integer(p.k - 1);
            if sum < one || sum > upper {
                return Regime::fail(kind, format!("need 1 <= alpha+beta <= K-1, got {sum}"));
            }
            let lo = p.beta - Rational::from_integer(p.i);
            let hi = Rational::from_integer(p.k - p.i) - p.alpha;
            if diff < lo || diff > hi {
                return Regime::fail(kind, format!(
                    "need beta-i <= N-M <= K-alpha-i, got {lo} <= {diff} <= {hi}"
                ));
            }
            Regime::ok(kind)
        }
        RegimeKind::Conjecture13 => {
            // the tuple must be the D_{2K0,K0} form of a G polynomial
            if p.k != 2 * p.i {
                return Regime::fail(kind, format!(
                    "tuple is not G-shaped (need K = 2i, got K={}, i={})",
                    p.k, p.i
                ));
            }
            let k0 = p.i;
            let upper = Rational::from_integer(2 * k0 - 1);
            let strict = k0 == 2;
            let in_window = if strict {
                sum > one && sum < upper
            } else {
                sum >= one && sum <= upper
            };
            if !in_window {
                let how = if strict { "1 < alpha+beta < 2K-1 (strict at K=2)" } else { "1 <= alpha+beta <= 2K-1" };
                return Regime::fail(kind, format!("need {how}, got {sum}"));
            }
            let lo = p.beta - Rational::from_integer(k0);
            let hi = Rational::from_integer(k0) - p.alpha;
            if diff < lo || diff > hi {
                return Regime::fail(kind, format!(
                    "need beta-K <= N-M <= K-alpha, got {lo} <= {diff} <= {hi}"
                ));
            }
            Regime::ok(kind)
        }
        RegimeKind::Conjecture21 => {
            let upper = Rational::from_integer(p.k - 1);
            let strict = p.k == 4 && p.i == 2;
            let in_window = if strict {
                sum > one && sum < upper
            } else {
                sum >= one && sum <= upper
            };
            if !in_window {
                let how = if strict {
                    "strict inequality at K=4, i=2".to_string()
                } else {
                    format!("need 1 <= alpha+beta <= K-1, got {sum}")
                };
                return Regime::fail(kind, how);
            }
            let lo = p.beta - Rational::from_integer(p.i);
            let hi = Rational::from_integer(p.k - p.i) - p.alpha;
            if diff < lo || diff > hi {
                return Regime::fail(kind, format!(
                    "need beta-i <= N-M <= K-alpha-i, got {lo} <= {diff} <= {hi}"
                ));
            }
            Regime::ok(kind)
        }
    }
}

/// True iff `D_{K,i}(N,M;alpha,beta) = D_{K,K-i}(M,N;beta,alpha)`.
pub fn check_symmetry(p: &DParams) -> bool {
    d_poly(p) == d_poly(&p.transposed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn dp(k: i64, i: i64, n: i64, m: i64, alpha: Rational, beta: Rational) -> DParams {
        DParams::new(k, i, n, m, alpha, beta).unwrap()
    }

    #[test]
    fn parse_rational_cases() {
        assert_eq!(parse_rational("4/3").unwrap(), ratio(4, 3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn dparams_validation() {
        assert!(DParams::new(3, 1, 2, 2, int(1), int(1)).is_ok());
        // alpha*K = 3/2 not integral
        assert!(matches!(
            DParams::new(3, 1, 2, 2, ratio(1, 2), int(1)),
            Err(Error::Range(_))
        ));
        assert!(matches!(DParams::new(3, 3, 1, 1, int(1), int(1)), Err(Error::Range(_))));
        assert!(matches!(DParams::new(3, 1, -1, 1, int(1), int(1)), Err(Error::NegativeSize(_))));
    }

    #[test]
    fn d_poly_fixtures() {
        // only the empty partition survives the contradictory diagonal bounds
        assert_eq!(d_poly(&dp(3, 1, 2, 2, int(1), int(1))), Polynomial::one());
        assert_eq!(d_poly(&dp(3, 1, 0, 0, int(1), int(1))), Polynomial::one());
        assert_eq!(
            d_poly(&dp(6, 2, 1, 1, int(1), ratio(1, 2))),
            Polynomial::from_i64_coeffs(0, &[1, 1])
        );
    }

    #[test]
    fn g_poly_fixtures() {
        assert_eq!(
            g_poly(1, 1, ratio(4, 3), ratio(5, 3), 3).unwrap(),
            Polynomial::from_i64_coeffs(0, &[1, 1])
        );
        assert_eq!(g_poly(0, 0, int(1), int(1), 2).unwrap(), Polynomial::one());
        assert_eq!(g_poly(2, 0, ratio(2, 3), ratio(7, 3), 3).unwrap(), Polynomial::one());
    }

    #[test]
    fn g_poly_rejects_bad_params() {
        assert!(matches!(g_poly(1, 1, ratio(1, 2), int(1), 3), Err(Error::Range(_))));
        assert!(matches!(g_poly(-1, 1, int(1), int(1), 3), Err(Error::NegativeSize(_))));
    }

    #[test]
    fn validate_fixtures() {
        let p = dp(3, 1, 2, 2, int(1), int(1));
        assert!(validate(&p, RegimeKind::Corollary12).satisfied);

        // strictness carve-out at K=4, i=2
        let p = dp(4, 2, 2, 2, ratio(1, 2), ratio(1, 2));
        let r = validate(&p, RegimeKind::Conjecture21);
        assert!(!r.satisfied);
        assert!(r.violated_condition.unwrap().contains("strict"));
        let p = dp(4, 2, 2, 2, int(1), int(1));
        assert!(validate(&p, RegimeKind::Conjecture21).satisfied);

        // same boundary sum away from K=4, i=2 is fine
        let p = dp(6, 2, 2, 2, ratio(1, 2), ratio(1, 2));
        assert!(validate(&p, RegimeKind::Conjecture21).satisfied);

        // non-G-shaped tuple cannot satisfy the G-level regime
        let p = dp(3, 1, 2, 2, int(1), int(1));
        assert!(!validate(&p, RegimeKind::Conjecture13).satisfied);
        let p = dp(6, 3, 2, 2, ratio(4, 3), ratio(5, 3));
        assert!(validate(&p, RegimeKind::Conjecture13).satisfied);
    }

    #[test]
    fn strictness_at_k2_for_bressoud_regime() {
        // K0 = 2: alpha+beta = 1 is excluded, 2 is allowed
        let p = dp(4, 2, 2, 2, ratio(1, 2), ratio(1, 2));
        assert!(!validate(&p, RegimeKind::Conjecture13).satisfied);
        let p = dp(4, 2, 2, 2, int(1), int(1));
        assert!(validate(&p, RegimeKind::Conjecture13).satisfied);
    }

    #[test]
    fn symmetry_fixtures() {
        assert!(check_symmetry(&dp(3, 1, 2, 2, int(1), int(1))));
        assert!(check_symmetry(&dp(6, 2, 2, 1, int(1), ratio(1, 2))));
        assert!(check_symmetry(&dp(6, 3, 3, 3, int(2), int(2))));
    }

    #[test]
    fn raw_sum_rejects_non_integral_exponents() {
        // beta*i = 1/3 makes the j = 0 exponent fractional
        let err = d_sum(3, 1, 2, 2, int(1), ratio(1, 3)).unwrap_err();
        assert!(matches!(err, Error::NonIntegralExponent(_)));
        // at j = 1 the exponent is 3/4 * j(j+1) = 3/2
        let err = g_sum(3, 3, 3, ratio(1, 2), int(0)).unwrap_err();
        assert!(matches!(err, Error::NonIntegralExponent(_)));
    }

    #[test]
    fn widening_the_j_range_changes_nothing() {
        for (k, i, n, m, a, b) in [
            (3, 1, 4, 3, int(1), int(1)),
            (6, 2, 5, 5, int(1), ratio(1, 2)),
            (5, 2, 6, 2, int(2), int(1)),
        ] {
            let tight = d_sum(k, i, n, m, a, b).unwrap();
            // widen by brute force: four extra j on both sides
            let kq = Rational::from_integer(k);
            let iq = Rational::from_integer(i);
            let ab = a + b;
            let mut acc = Polynomial::zero();
            for j in -((n + i) / k + 5)..=(m / k + 5) {
                let jq = Rational::from_integer(j);
                let e1 = (jq * (ab * kq * jq + kq * b - ab * iq)).to_integer();
                let e2 = ((ab * jq + b) * (kq * jq + iq)).to_integer();
                acc = &acc + &qbinom(m + n, m - k * j).shifted(e1);
                acc = &acc - &qbinom(m + n, m - k * j - i).shifted(e2);
            }
            assert_eq!(tight, acc);
        }
    }

    proptest! {
        #[test]
        fn g_matches_double_sum(k in 1i64..5, n in 0i64..9, m in 0i64..9,
                                an in 0i64..7, bn in 0i64..7) {
            let alpha = Rational::new(an, k);
            let beta = Rational::new(bn, k);
            let g = g_sum(k, n, m, alpha, beta).unwrap();
            let d = d_sum(2 * k, k, n, m, alpha, beta).unwrap();
            prop_assert_eq!(g, d);
        }

        #[test]
        fn transposition_symmetry(k in 2i64..7, i_frac in 0.0f64..1.0,
                                  n in 0i64..8, m in 0i64..8,
                                  an in 0i64..9, bn in 0i64..9) {
            let i = 1 + ((k - 2) as f64 * i_frac) as i64;
            let g = num::integer::gcd(k, i);
            let alpha = Rational::new(an, g);
            let beta = Rational::new(bn, g);
            let p = DParams::new(k, i, n, m, alpha, beta).unwrap();
            prop_assert!(check_symmetry(&p));
        }
    }
}
