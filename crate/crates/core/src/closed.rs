//! Exact evaluation of the closed-form DC-component and rank distributions.
//!
//! Everything here is arbitrary-precision integer (or rational) arithmetic.
//! Divisions are only performed where the quotient is known to be exact, and
//! that is asserted.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::code::{DistTable, Source};
use crate::forms::CodeParams;

pub fn pow2(n: u64) -> BigInt {
    BigInt::one() << n as usize
}

fn ordinary_binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `4^(e * C(n, 2))`, equivalently `2^(e n (n - 1))`; shared by the alpha and
/// beta formulas.
pub fn q_sign_weight(e: u32, n: u64) -> BigInt {
    pow2(e as u64 * n * n.saturating_sub(1))
}

fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division {num} / {den}");
    q
}

/// Gaussian binomial `(n choose i)_q`, zero when `i > n`.
pub fn gauss_binom(n: u64, i: u64, q: &BigInt) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for h in 0..i {
        let num = num_traits::pow(q.clone(), (n - h) as usize) - 1;
        let den = num_traits::pow(q.clone(), (h + 1) as usize) - 1;
        // After step h the accumulator is (n choose h+1)_q, an integer.
        acc = exact_div(&(acc * num), &den);
    }
    acc
}

/// `q = 4^e`, the field size of the quadratic extension of GF(2^e).
fn q4e(e: u32) -> BigInt {
    pow2(2 * e as u64)
}

/// The shared sum `S_i = sum_{j=i}^{k-2} (-1)^(j-i) 4^(e C(j-i,2))
/// (j choose i)_{4^e} ((m-e)/2e choose j)_{4^e} (2^(m(k-1-j)) - 1)`.
///
/// `S_i` is the rank frequency `beta` at rank `(m - e)/e - 2i`.
pub fn rank_sum(params: &CodeParams, i: u32) -> BigInt {
    let q = q4e(params.e);
    let top = ((params.n() - 1) / 2) as u64;
    let (m, k) = (params.m as u64, params.k as u64);
    let i = i as u64;
    let mut sum = BigInt::zero();
    for j in i..=k - 2 {
        let mut term: BigInt = q_sign_weight(params.e, j - i)
            * gauss_binom(j, i, &q)
            * gauss_binom(top, j, &q)
            * (pow2(m * (k - 1 - j)) - 1);
        if (j - i) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    sum
}

/// Rank of `B_a` in bin `i`: `(m - e)/e - 2i`.
pub fn rank_of_bin(params: &CodeParams, i: u32) -> u32 {
    params.n() - 1 - 2 * i
}

/// `(1/2)(2^(e r) + eps 2^(e r / 2))`, shifted left by `fault_shift` on the
/// `eps` term (zero in normal use).
fn sign_split_weight(e: u32, r: u32, eps: i8, fault_shift: u32) -> BigInt {
    let er = e as u64 * r as u64;
    let hi = pow2(er);
    let lo = pow2(er / 2 + fault_shift as u64);
    let twice = if eps > 0 { hi + lo } else { hi - lo };
    exact_div(&twice, &BigInt::from(2))
}

fn to_nonneg(v: BigInt, what: &str) -> BigUint {
    assert!(v.sign() != Sign::Minus, "{what} evaluated negative: {v}");
    v.to_biguint().unwrap()
}

pub fn beta_closed(params: &CodeParams) -> DistTable {
    let mut beta = BTreeMap::new();
    for i in 0..=params.k - 2 {
        beta.insert(rank_of_bin(params, i), to_nonneg(rank_sum(params, i), "beta"));
    }
    DistTable {
        params: *params,
        alpha: BTreeMap::new(),
        beta,
        balanced: None,
        source: Source::ClosedForm,
    }
}

pub fn alpha_closed(params: &CodeParams) -> DistTable {
    alpha_closed_inner(params, 0)
}

/// Closed form with the sign-splitting constant deliberately corrupted. Only
/// meant for negative-control runs of the verifier.
#[doc(hidden)]
pub fn alpha_closed_faulty(params: &CodeParams) -> DistTable {
    alpha_closed_inner(params, 1)
}

fn alpha_closed_inner(params: &CodeParams, fault_shift: u32) -> DistTable {
    let mut alpha = BTreeMap::new();
    let mut total = BigInt::zero();
    for i in 0..=params.k - 2 {
        let r = rank_of_bin(params, i);
        let s = rank_sum(params, i);
        for eps in [-1i8, 1] {
            let v = sign_split_weight(params.e, r, eps, fault_shift) * &s;
            total += &v;
            alpha.insert((r, eps), to_nonneg(v, "alpha"));
        }
    }
    let nonzero = pow2(params.m as u64 * params.k as u64) - 1;
    DistTable {
        params: *params,
        alpha,
        beta: BTreeMap::new(),
        balanced: Some(to_nonneg(nonzero - total, "balanced")),
        source: Source::ClosedForm,
    }
}

/// Alpha, balanced (as the complement of alpha) and beta together.
pub fn closed_table(params: &CodeParams) -> DistTable {
    let mut t = alpha_closed(params);
    t.beta = beta_closed(params).beta;
    t
}

#[doc(hidden)]
pub fn closed_table_faulty(params: &CodeParams) -> DistTable {
    let mut t = alpha_closed_faulty(params);
    t.beta = beta_closed(params).beta;
    t
}

/// The balanced-codeword count from its own closed form, plus the leading
/// approximation `2^(mk) (1 - sum_u (-1)^u 2^(-e (u+1)^2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedCount {
    pub exact: BigInt,
    pub approx: BigRational,
}

impl BalancedCount {
    /// `|exact - approx| / 2^(mk)`
    pub fn relative_error(&self, params: &CodeParams) -> BigRational {
        let scale = BigRational::from_integer(pow2(params.m as u64 * params.k as u64));
        (BigRational::from_integer(self.exact.clone()) - &self.approx).abs() / scale
    }

    pub fn relative_error_f64(&self, params: &CodeParams) -> f64 {
        self.relative_error(params).to_f64().unwrap_or(f64::INFINITY)
    }
}

pub fn balanced_closed(params: &CodeParams) -> BalancedCount {
    let (m, e, k) = (params.m as u64, params.e as u64, params.k as u64);
    let mut exact = pow2(m * k) - 1;
    let mut approx_factor = BigRational::one();
    for u in 0..=k - 2 {
        let mut prod = BigInt::one();
        for j in 0..u {
            prod *= pow2(m) - pow2(e * (2 * j + 1));
        }
        let num = (pow2(m * (k - u)) - pow2(m)) * prod;
        let den = pow2(e * (u + 1) * (u + 1));
        let term = exact_div(&num, &den);
        let frac = BigRational::new(BigInt::one(), den);
        if u % 2 == 0 {
            exact -= term;
            approx_factor -= frac;
        } else {
            exact += term;
            approx_factor += frac;
        }
    }
    BalancedCount {
        exact,
        approx: approx_factor * BigRational::from_integer(pow2(m * k)),
    }
}

/// Checks `prod_{i<u} (1 + q^i t) = sum_{i<=u} q^C(i,2) (u choose i)_q t^i`.
pub fn qbinom_theorem_check(u: u64, q: &BigInt, t: &BigInt) -> bool {
    let mut lhs = BigInt::one();
    for i in 0..u {
        lhs *= BigInt::one() + num_traits::pow(q.clone(), i as usize) * t;
    }
    let mut rhs = BigInt::zero();
    for i in 0..=u {
        rhs += num_traits::pow(q.clone(), ordinary_binom2(i) as usize)
            * gauss_binom(u, i, q)
            * num_traits::pow(t.clone(), i as usize);
    }
    lhs == rhs
}

/// Checks that `[(u choose i)_q]` and `[(-1)^(i-v) q^C(i-v,2) (i choose v)_q]`
/// (indices `< n`) are mutually inverse.
pub fn moebius_check(n: u64, q: &BigInt) -> bool {
    for u in 0..n {
        for v in 0..n {
            let mut s = BigInt::zero();
            for i in v..=u {
                let mut term = num_traits::pow(q.clone(), ordinary_binom2(i - v) as usize)
                    * gauss_binom(i, v, q)
                    * gauss_binom(u, i, q);
                if (i - v) % 2 == 1 {
                    term = -term;
                }
                s += term;
            }
            let expected = if u == v { BigInt::one() } else { BigInt::zero() };
            if s != expected {
                return false;
            }
        }
    }
    true
}

/// `alpha[r, eps] = (1/2)(2^(e r) + eps 2^(e r / 2)) beta[r]` for every rank
/// bin present in `beta`. Returns the violating bins.
pub fn sign_split_violations(table: &DistTable) -> Vec<(u32, i8)> {
    let e = table.params.e;
    let mut bad = Vec::new();
    for (&r, b) in &table.beta {
        for eps in [-1i8, 1] {
            let expected = sign_split_weight(e, r, eps, 0) * BigInt::from(b.clone());
            let actual = table
                .alpha
                .get(&(r, eps))
                .map(|v| BigInt::from(v.clone()))
                .unwrap_or_default();
            if expected != actual {
                bad.push((r, eps));
            }
        }
    }
    for &(r, eps) in table.alpha.keys() {
        if !table.beta.contains_key(&r) && !table.alpha[&(r, eps)].is_zero() {
            bad.push((r, eps));
        }
    }
    bad
}
