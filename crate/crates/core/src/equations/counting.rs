//! Closed forms: parameter and polynomial space dimensions, the counting
//! inequality that forces a nonzero kernel, the degree and subtensor-size
//! bounds, and the size bound of the chain decomposition.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: &BigUint, k: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = std::cmp::min(k.clone(), n - k);
    let k = k.to_u64().expect("binomial lower index fits in u64");
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    c
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `S = sum_I r (n^|I| + n^(d-|I|))` over proper nonempty `I`.
pub fn parameter_count(d: u32, n: &BigUint, r: &BigUint) -> BigUint {
    let mut s = BigUint::zero();
    for k in 1..d {
        let c = binomial(&big(d as u64), &big(k as u64));
        s += c * (n.pow(k) + n.pow(d - k));
    }
    s * r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimFormulas {
    pub s: BigUint,
    pub dim_p2m: BigUint,
    pub dim_pm: BigUint,
}

/// The conventional `C(-1, 0) = 1` makes `dim_p2m = 0` when `S = 0 < 2m`.
fn binomial_from_top(top_plus_one: &BigUint, k: &BigUint) -> BigUint {
    if top_plus_one.is_zero() {
        return if k.is_zero() { BigUint::one() } else { BigUint::zero() };
    }
    binomial(&(top_plus_one - 1u32), k)
}

pub fn dim_formulas(d: u32, n: u64, r: u64, m: u64) -> DimFormulas {
    let nn = big(n);
    let s = parameter_count(d, &nn, &big(r));
    let two_m = big(2 * m);
    let dim_p2m = binomial_from_top(&(&two_m + &s), &two_m);
    let vars = nn.pow(d);
    let dim_pm = binomial_from_top(&(big(m) + &vars), &big(m));
    DimFormulas { s, dim_p2m, dim_pm }
}

/// Closed interval of reals with outward rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Interval {
    lo: f64,
    hi: f64,
}

const WIDEN: usize = 4;

fn down(mut x: f64) -> f64 {
    for _ in 0..WIDEN {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64) -> f64 {
    for _ in 0..WIDEN {
        x = x.next_up();
    }
    x
}

impl Interval {
    fn exact(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    fn of_big(n: &BigUint) -> Self {
        let x = n.to_f64().expect("finite");
        if n.bits() <= 53 {
            Interval::exact(x)
        } else {
            Interval { lo: down(x), hi: up(x) }
        }
    }

    fn add(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }

    fn sub(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }

    /// Product of intervals with nonnegative endpoints.
    fn mul_pos(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo * o.lo), hi: up(self.hi * o.hi) }
    }

    fn ln(self) -> Interval {
        Interval { lo: down(self.lo.ln()), hi: up(self.hi.ln()) }
    }

    fn recip_pos(self) -> Interval {
        Interval { lo: down(1.0 / self.hi), hi: up(1.0 / self.lo) }
    }
}

/// Bounds on `ln n!` from Robbins' form of Stirling's formula:
/// `ln n! = (n + 1/2) ln n - n + ln(2 pi)/2 + t`, `1/(12n+1) < t < 1/(12n)`.
fn ln_factorial(n: &BigUint) -> Interval {
    if n.bits() <= 5 {
        let k = n.to_u64().unwrap();
        let exact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        // summation error is far below this slack at n < 32
        return Interval { lo: exact - 1e-12, hi: exact + 1e-12 };
    }
    let x = Interval::of_big(n);
    let half = Interval::exact(0.5);
    let main = x.add(half).mul_pos(x.ln()).sub(x);
    let c = Interval::exact(2.0 * std::f64::consts::PI).ln().mul_pos(half);
    let twelve = Interval::exact(12.0);
    let t_lo = twelve.mul_pos(x).add(Interval::exact(1.0)).recip_pos().lo;
    let t_hi = twelve.mul_pos(x).recip_pos().hi;
    let base = main.add(c);
    Interval {
        lo: down(base.lo + t_lo),
        hi: up(base.hi + t_hi),
    }
}

fn ln_binomial(n: &BigUint, k: &BigUint) -> Interval {
    ln_factorial(n).sub(ln_factorial(k)).sub(ln_factorial(&(n - k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountingMethod {
    Exact,
    LogInterval,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingReport {
    pub d: u32,
    pub r: u64,
    pub n: BigUint,
    pub m: BigUint,
    pub s: BigUint,
    pub method: CountingMethod,
    /// Natural-log enclosures `[lo, hi]` of both dimensions.
    pub ln_dim_p2m: [f64; 2],
    pub ln_dim_pm: [f64; 2],
    pub holds: bool,
}

/// Bit budget below which both binomials are computed exactly.
pub const EXACT_BIT_BUDGET: u64 = 1 << 17;

fn estimated_bits(n: &BigUint, k: &BigUint) -> u64 {
    let small = std::cmp::min(k.clone(), if k <= n { n - k } else { BigUint::zero() });
    small.to_u64().unwrap_or(u64::MAX).saturating_mul(n.bits())
}

/// Compares `C(2m+S-1, 2m) < C(m+n^d-1, m)` at the given `n`, `m`.
pub fn counting_inequality_at(d: u32, r: u64, n: &BigUint, m: &BigUint) -> Result<CountingReport> {
    if d < 2 || r == 0 || m.is_zero() || n.is_zero() {
        return Err(Error::InvalidInput("need d >= 2, r >= 1, n >= 1, m >= 1".into()));
    }
    let s = parameter_count(d, n, &big(r));
    let two_m: BigUint = m * 2u32;
    let p2_top = &two_m + &s - 1u32;
    let vars = n.pow(d);
    let p_top = m + &vars - 1u32;
    let lp2 = ln_binomial(&p2_top, &two_m);
    let lp = ln_binomial(&p_top, m);
    let exact = estimated_bits(&p2_top, &two_m) <= EXACT_BIT_BUDGET
        && estimated_bits(&p_top, m) <= EXACT_BIT_BUDGET;
    let (method, holds) = if exact {
        let a = binomial(&p2_top, &two_m);
        let b = binomial(&p_top, m);
        (CountingMethod::Exact, a < b)
    } else if lp2.hi < lp.lo {
        (CountingMethod::LogInterval, true)
    } else if lp.hi <= lp2.lo {
        (CountingMethod::LogInterval, false)
    } else {
        return Err(Error::InvalidInput(
            "log enclosures overlap; raise the exact bit budget".into(),
        ));
    };
    Ok(CountingReport {
        d,
        r,
        n: n.clone(),
        m: m.clone(),
        s,
        method,
        ln_dim_p2m: [lp2.lo, lp2.hi],
        ln_dim_pm: [lp.lo, lp.hi],
        holds,
    })
}

/// The inequality at `n = 2^(d+3) r` and `m = n^(2d)`.
pub fn check_counting_inequality(d: u32, r: u64) -> Result<CountingReport> {
    let n = big(r) << (d + 3);
    let m = n.pow(2 * d);
    counting_inequality_at(d, r, &n, &m)
}

/// `F = (2^(d+3) r)^(2d)` and `G = (2^(d+3) r)^(2d^2)`.
pub fn fd_gd(d: u32, r: u64) -> (BigUint, BigUint) {
    let base = big(r) << (d + 3);
    (base.pow(2 * d), base.pow(2 * d * d))
}

/// `d q + sum_{s=1}^{floor(d/2)} C(d, s) q^(d-s)` with `q = m - k - 1`.
pub fn bound_formula(d: u32, m: u64, k: u64) -> Result<BigUint> {
    if k >= m {
        return Err(Error::InvalidInput(format!("need k < m (k={k}, m={m})")));
    }
    let q = big(m - k - 1);
    let mut total = big(d as u64) * &q;
    for s in 1..=d / 2 {
        total += binomial(&big(d as u64), &big(s as u64)) * q.pow(d - s);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(&big(11), &big(4)), big(330));
        assert_eq!(binomial(&big(5), &big(7)), big(0));
        assert_eq!(binomial(&big(0), &big(0)), big(1));
    }

    #[test]
    fn dimension_examples() {
        let f = dim_formulas(2, 2, 1, 2);
        assert_eq!((f.s, f.dim_p2m, f.dim_pm), (big(8), big(330), big(10)));
        let z = dim_formulas(2, 2, 0, 2);
        assert_eq!((z.s, z.dim_p2m), (big(0), big(0)));
    }

    #[test]
    fn log_factorial_encloses_exact_values() {
        for n in [1u64, 2, 5, 31, 32, 33, 100, 1000] {
            let exact: f64 = (1..=n).map(|i| (i as f64).ln()).sum();
            let iv = ln_factorial(&big(n));
            assert!(iv.lo <= exact + 1e-9 && exact - 1e-9 <= iv.hi, "n={n}");
            assert!(iv.hi - iv.lo < 1.0 / (100.0 * (n * n) as f64) + 1e-9);
        }
    }

    #[test]
    fn inequality_examples() {
        let r = check_counting_inequality(2, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.method, CountingMethod::Exact);
        assert_eq!(r.s, big(128));
        let r = check_counting_inequality(3, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.method, CountingMethod::LogInterval);
        let bad = counting_inequality_at(2, 1, &big(32), &big(1)).unwrap();
        assert!(!bad.holds);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fd_gd(2, 1), (big(1_048_576), big(1_099_511_627_776)));
        assert_eq!(fd_gd(3, 1).0, big(1) << 36u32);
        assert_eq!(bound_formula(2, 2, 0).unwrap(), big(4));
        assert_eq!(bound_formula(3, 2, 0).unwrap(), big(6));
        assert_eq!(bound_formula(3, 5, 4).unwrap(), big(0));
    }
}
