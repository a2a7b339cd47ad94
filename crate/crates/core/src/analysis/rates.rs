use std::f64::consts::PI;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ratio::{big_to_f64, MemoryRatio, Rate};

/// Ali-Niesen rate `K(1 - M/N) / (1 + K*M/N)` at a corner point.
pub fn rate_an(users: usize, ratio: MemoryRatio) -> Result<Rate> {
    let t = ratio.corner(users)?;
    Ok(ratio.complement() * Ratio::from_integer(users as u64) / Ratio::from_integer(1 + t))
}

/// Uncoded rate `K(1 - M/N)`.
pub fn rate_uncoded(users: usize, ratio: MemoryRatio) -> Rate {
    ratio.complement() * Ratio::from_integer(users as u64)
}

/// `C(K, K*M/N)`, the least `F` of any array reaching gain `K*M/N + 1`.
pub fn min_f_bound(users: usize, ratio: MemoryRatio) -> Result<BigUint> {
    let t = ratio.corner(users)?;
    Ok(binomial(users as u64, t))
}

/// `K*M/N + 1`.
pub fn gain_an(users: usize, ratio: MemoryRatio) -> Result<u64> {
    Ok(ratio.corner(users)? + 1)
}

/// `q` and `m` with `K = q(m+1)`, `m >= 1`, for `M/N` in `{1/q, (q-1)/q}`.
fn new_family(users: usize, ratio: MemoryRatio) -> Result<(u64, u64, bool)> {
    let (q, small) = match (ratio.small_cache_q(), ratio.large_cache_q()) {
        (Some(q), _) => (q, true),
        (None, Some(q)) => (q, false),
        _ => return Err(Error::UnsupportedRatio(ratio.to_string())),
    };
    let k = users as u64;
    if !k.is_multiple_of(q) || k / q < 2 {
        return Err(Error::NonConformingK { k: users, q });
    }
    Ok((q, k / q - 1, small))
}

/// `K*M/N`, the gain of the q-ary constructions.
pub fn gain_new(users: usize, ratio: MemoryRatio) -> Result<u64> {
    new_family(users, ratio)?;
    ratio.corner(users)
}

/// `K(1 - M/N) / (K*M/N)`: `q - 1` or `1/(q - 1)`.
pub fn rate_new(users: usize, ratio: MemoryRatio) -> Result<Rate> {
    let g = gain_new(users, ratio)?;
    Ok(ratio.complement() * Ratio::from_integer(users as u64) / Ratio::from_integer(g))
}

/// `q^m` for `M/N = 1/q`, `(q-1)q^m` for `M/N = (q-1)/q`, with `K = q(m+1)`.
pub fn f_new(users: usize, ratio: MemoryRatio) -> Result<BigUint> {
    let (q, m, small) = new_family(users, ratio)?;
    let power = BigUint::from(q).pow(m as u32);
    Ok(if small { power } else { power * (q - 1) })
}

/// `R_AN / R_new = (K*M/N) / (K*M/N + 1)`.
pub fn lambda_ratio(users: usize, ratio: MemoryRatio) -> Result<Rate> {
    let g = gain_new(users, ratio)?;
    Ok(Ratio::new(g, g + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaRatio {
    /// `F_AN / F_new`, exact.
    pub exact: BigRational,
    /// Leading-order estimate: the Stirling estimate of `F_AN` over `F_new`.
    pub asymptotic: f64,
}

impl EtaRatio {
    pub fn exact_f64(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `F_AN / F_new`, both exactly and from the asymptotic formula.
pub fn eta_ratio(users: usize, ratio: MemoryRatio) -> Result<EtaRatio> {
    let fnew = f_new(users, ratio)?;
    let stirling = stirling_binom(users, ratio)?;
    let exact = BigRational::new(stirling.exact.into(), fnew.clone().into());
    Ok(EtaRatio {
        exact,
        asymptotic: stirling.estimate / big_to_f64(&fnew),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticEstimate {
    pub exact: BigUint,
    pub estimate: f64,
    pub relative_error: f64,
}

/// Stirling estimate of `C(K, pK)` with `p = M/N`:
/// `exp(K * (p ln(1/p) + (1-p) ln(1/(1-p)))) / sqrt(2 pi K p (1-p))`.
pub fn stirling_binom(users: usize, ratio: MemoryRatio) -> Result<AsymptoticEstimate> {
    let t = ratio.corner(users)?;
    if ratio.numer() == 0 || ratio.numer() == ratio.denom() {
        return Err(Error::UnsupportedRatio(format!(
            "{ratio} (need 0 < M/N < 1)"
        )));
    }
    let k = users as f64;
    let p = ratio.to_f64();
    let entropy = p * (1.0 / p).ln() + (1.0 - p) * (1.0 / (1.0 - p)).ln();
    let estimate = (k * entropy).exp() / (2.0 * PI * k * p * (1.0 - p)).sqrt();
    let exact = binomial(users as u64, t);
    let exact_f = big_to_f64(&exact);
    Ok(AsymptoticEstimate {
        relative_error: (estimate - exact_f).abs() / exact_f,
        exact,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> MemoryRatio {
        s.parse().unwrap()
    }

    #[test]
    fn ali_niesen_rates() {
        assert_eq!(rate_an(2, r("1/2")).unwrap(), Rate::new(1, 2));
        assert_eq!(rate_an(12, r("1/2")).unwrap(), Rate::new(6, 7));
        assert_eq!(rate_an(5, r("1/1")).unwrap(), Rate::from_integer(0));
        assert!(matches!(
            rate_an(5, r("1/2")),
            Err(Error::NonCornerPoint(_))
        ));
    }

    #[test]
    fn uncoded_rates() {
        assert_eq!(rate_uncoded(2, r("1/2")), Rate::from_integer(1));
        assert_eq!(rate_uncoded(7, r("0/1")), Rate::from_integer(7));
        assert_eq!(rate_uncoded(7, r("1/1")), Rate::from_integer(0));
    }

    #[test]
    fn min_f() {
        assert_eq!(min_f_bound(6, r("1/2")).unwrap(), BigUint::from(20u32));
        assert_eq!(min_f_bound(36, r("1/2")).unwrap().to_string(), "9075135300");
        assert_eq!(min_f_bound(24, r("1/3")).unwrap(), BigUint::from(735471u32));
        assert!(min_f_bound(5, r("1/3")).is_err());
    }

    #[test]
    fn new_subpacketization() {
        assert_eq!(f_new(12, r("1/2")).unwrap(), BigUint::from(32u32));
        assert_eq!(f_new(36, r("2/3")).unwrap(), BigUint::from(354294u32));
        assert_eq!(f_new(6, r("1/3")).unwrap(), BigUint::from(3u32));
        assert!(matches!(
            f_new(12, r("2/5")),
            Err(Error::UnsupportedRatio(_))
        ));
        assert!(matches!(
            f_new(13, r("1/2")),
            Err(Error::NonConformingK { .. })
        ));
        assert!(matches!(
            f_new(3, r("1/3")),
            Err(Error::NonConformingK { .. })
        ));
    }

    #[test]
    fn lambda_and_eta() {
        assert_eq!(lambda_ratio(6, r("1/2")).unwrap(), Rate::new(3, 4));
        let eta = eta_ratio(6, r("1/2")).unwrap();
        assert_eq!(eta.exact, BigRational::from_integer(5.into()));
        assert!((eta.asymptotic - 5.0).abs() / 5.0 < 0.1);
        let mut last = Rate::from_integer(0);
        for k in (4..=60).step_by(2) {
            let l = lambda_ratio(k, r("1/2")).unwrap();
            assert!(l > last && l < Rate::from_integer(1));
            last = l;
        }
    }

    #[test]
    fn stirling() {
        let e = stirling_binom(36, r("1/2")).unwrap();
        assert_eq!(e.exact.to_string(), "9075135300");
        assert!((e.estimate / 1e9 - 9.14).abs() < 0.01, "{}", e.estimate);
        assert!(e.relative_error < 0.01);
        let e6 = stirling_binom(6, r("1/2")).unwrap();
        assert!(e6.relative_error < 0.10);
        assert!(stirling_binom(6, r("1/1")).is_err());
        assert!(stirling_binom(7, r("1/2")).is_err());
    }
}
