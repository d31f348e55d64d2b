//! Arithmetic in GF(2^m) over a primitive polynomial basis.
//!
//! Elements are stored as `u32` bit vectors, bit `i` being the coefficient of
//! `x^i`. Defining polynomials use the same encoding with bit `m` set, so
//! `x^3 + x + 1` is `0b1011`.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;

/// Log/antilog tables are only built up to this degree.
pub const TABLE_DEGREE_LIMIT: u32 = 20;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({:#x})", self.0)
    }
}

impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

#[inline]
pub fn add(a: Gf, b: Gf) -> Gf {
    a + b
}

// ---------------------------------------------------------------------------
// Polynomials over GF(2) of degree < 64, used for field construction and by
// the m-sequence checker.

pub(crate) fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn poly_rem(mut a: u128, modulus: u64) -> u64 {
    let dm = poly_degree(modulus).expect("nonzero modulus");
    let modulus = modulus as u128;
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= modulus << (da - dm);
    }
    a as u64
}

fn poly_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    poly_rem(clmul(a, b), modulus)
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a as u128, b);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1u64;
    let mut base = poly_rem(base as u128, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(result, base, modulus);
        }
        base = poly_mulmod(base, base, modulus);
        exp >>= 1;
    }
    result
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over GF(2): no factor of degree <= deg/2, tested via
/// `gcd(x^(2^i) - x, f) = 1` for each such degree.
pub fn is_irreducible(poly: u64) -> bool {
    let Some(deg) = poly_degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let mut frob = 0b10u64; // x
    for _ in 0..deg / 2 {
        frob = poly_mulmod(frob, frob, poly);
        if poly_gcd(poly, frob ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// An irreducible polynomial is primitive when `x` has order `2^deg - 1`.
pub fn is_primitive(poly: u64) -> bool {
    if !is_irreducible(poly) {
        return false;
    }
    let deg = poly_degree(poly).unwrap();
    let order = (1u64 << deg) - 1;
    if order == 1 {
        return true;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| poly_powmod(0b10, order / p, poly) != 1)
}

/// Deterministic default: the primitive polynomial of degree `m` with the
/// fewest terms, smallest encoding first.
pub fn default_poly(m: u32) -> Result<u32> {
    check_degree(m)?;
    Ok(primitive_polys(m).next().expect("a primitive polynomial of every degree exists"))
}

/// Primitive polynomials of degree `m` ordered by term count, then encoding.
pub fn primitive_polys(m: u32) -> impl Iterator<Item = u32> {
    // Odd weights only.
    (3..=m + 1)
        .step_by(2)
        .flat_map(move |w| weight_candidates(m, w))
        .filter(|&p| is_primitive(p as u64))
}

/// Degree-`m` polynomials with `weight` terms and constant term 1, in
/// increasing encoding order.
fn weight_candidates(m: u32, weight: u32) -> Box<dyn Iterator<Item = u32>> {
    let inner = weight - 2;
    let top = 1u64 << m;
    if inner > m - 1 {
        return Box::new(std::iter::empty());
    }
    if inner == 0 {
        return Box::new(std::iter::once((top | 1) as u32));
    }
    // Middle terms occupy bits 1..m-1; walk subsets of size `inner` in
    // increasing numeric order (Gosper's hack).
    let limit = 1u64 << (m - 1);
    let first = (1u64 << inner) - 1;
    Box::new(
        std::iter::successors(Some(first), move |&subset| {
            let c = subset & subset.wrapping_neg();
            let r = subset + c;
            let next = (((r ^ subset) >> 2) / c) | r;
            (next < limit).then_some(next)
        })
        .map(move |subset| (top | (subset << 1) | 1) as u32),
    )
}

fn check_degree(m: u32) -> Result<()> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        return Err(Error::Param(format!(
            "field degree m = {m} outside supported range {MIN_DEGREE}..={MAX_DEGREE}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------

/// The tower GF(2) ⊂ GF(2^e) ⊂ GF(2^m) with primitive element `pi = x`.
///
/// Immutable after construction; share it freely between threads.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    poly: u32,
    order: u32,
    tables: Option<Tables>,
}

#[derive(Clone)]
struct Tables {
    /// `exp[i] = pi^i` for `0 <= i < 2 * order` (doubled to skip a reduction).
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("poly", &self.poly)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl FieldCtx {
    /// Builds GF(2^m) over `poly`, or over [`default_poly`] when `None`.
    pub fn new(m: u32, poly: Option<u32>) -> Result<Self> {
        check_degree(m)?;
        let poly = match poly {
            Some(p) => {
                if poly_degree(p as u64) != Some(m) {
                    return Err(Error::Poly(format!(
                        "polynomial {p:#b} does not have degree {m}"
                    )));
                }
                if !is_irreducible(p as u64) {
                    return Err(Error::Poly(format!("polynomial {p:#b} is not irreducible")));
                }
                if !is_primitive(p as u64) {
                    return Err(Error::Poly(format!(
                        "polynomial {p:#b} is irreducible but not primitive"
                    )));
                }
                p
            }
            None => default_poly(m)?,
        };
        let order = (1u32 << m) - 1;
        let mut ctx = FieldCtx {
            m,
            poly,
            order,
            tables: None,
        };
        if m <= TABLE_DEGREE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> Tables {
        let n = self.order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; n + 1];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(Gf(x), Gf(2)).0;
        }
        debug_assert_eq!(x, 1, "defining polynomial is not primitive");
        exp.copy_within(0..n, n);
        Tables { exp, log }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Multiplicative group order `2^m - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn size(&self) -> u32 {
        self.order + 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn pi(&self) -> Gf {
        Gf(2)
    }

    /// All field elements in integer-encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..=self.order).map(Gf)
    }

    #[inline]
    fn mul_slow(&self, a: Gf, b: Gf) -> Gf {
        Gf(poly_mulmod(a.0 as u64, b.0 as u64, self.poly as u64) as u32)
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] + t.log[b.0 as usize];
                Gf(t.exp[i as usize])
            }
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }

    /// `a^(2^t)` for any `t >= 0`; the Frobenius map has order `m`.
    pub fn frobenius(&self, a: Gf, t: u64) -> Gf {
        let t = (t % self.m as u64) as u32;
        if a.is_zero() || t == 0 {
            return a;
        }
        match &self.tables {
            Some(tb) => {
                let l = tb.log[a.0 as usize] as u64;
                let idx = (l << t) % self.order as u64;
                Gf(tb.exp[idx as usize])
            }
            None => (0..t).fold(a, |acc, _| self.square(acc)),
        }
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Gf(t.exp[((self.order - l) % self.order) as usize])
            }
            None => self.pow_nonneg(a, self.order as u64 - 1),
        })
    }

    fn pow_nonneg(&self, a: Gf, mut n: u64) -> Gf {
        let mut result = Gf::ONE;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.square(base);
            n >>= 1;
        }
        result
    }

    /// `a^n`; negative `n` is reduced modulo `2^m - 1`, so `pow(a, -1)` is the
    /// inverse.
    pub fn pow(&self, a: Gf, n: i64) -> Result<Gf> {
        if n >= 0 {
            return Ok(self.pow_nonneg(a, n as u64));
        }
        if a.is_zero() {
            return Err(Error::Domain("negative power of zero".into()));
        }
        let e = n.rem_euclid(self.order as i64) as u64;
        Ok(self.pow_nonneg(a, e))
    }

    /// `pi^i` with the exponent reduced modulo `2^m - 1`.
    pub fn pi_pow(&self, i: i64) -> Gf {
        let e = i.rem_euclid(self.order as i64) as u64;
        match &self.tables {
            Some(t) => Gf(t.exp[e as usize]),
            None => self.pow_nonneg(self.pi(), e),
        }
    }

    /// Discrete log base `pi`, for nonzero `a`.
    pub fn log(&self, a: Gf) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize]),
            None => {
                let mut x = Gf::ONE;
                for i in 0..self.order {
                    if x == a {
                        return Some(i);
                    }
                    x = self.mul(x, self.pi());
                }
                None
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Gf) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative order".into()));
        }
        let mut ord = self.order as u64;
        for p in prime_factors(ord) {
            while ord.is_multiple_of(p) && self.pow_nonneg(a, ord / p) == Gf::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    fn check_subdegree(&self, e: u32) -> Result<()> {
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(Error::Param(format!(
                "subfield degree e = {e} does not divide m = {}",
                self.m
            )));
        }
        Ok(())
    }

    /// `Tr_{GF(2^m)/GF(2^e)}(x) = sum_{i < m/e} x^(2^(e i))`.
    pub fn trace_to_subfield(&self, e: u32, x: Gf) -> Result<Gf> {
        self.check_subdegree(e)?;
        Ok(self.relative_trace(self.m, e, x))
    }

    /// Trace from GF(2^outer) down to GF(2^inner), both subfields of the
    /// context field; `x` must lie in GF(2^outer).
    pub fn relative_trace(&self, outer: u32, inner: u32, x: Gf) -> Gf {
        debug_assert!(outer.is_multiple_of(inner) && self.m.is_multiple_of(outer));
        let mut acc = Gf::ZERO;
        let mut y = x;
        for _ in 0..outer / inner {
            acc += y;
            y = self.frobenius(y, inner as u64);
        }
        acc
    }

    /// `Tr_{GF(2^e)/GF(2)}(t)` for `t` in the subfield GF(2^e), as 0 or 1.
    pub fn subfield_trace_bit(&self, e: u32, t: Gf) -> u8 {
        let v = self.relative_trace(e, 1, t);
        debug_assert!(v.0 <= 1, "argument not in GF(2^{e})");
        v.0 as u8
    }

    /// Absolute trace `Tr_{GF(2^m)/GF(2)}(x)`.
    pub fn absolute_trace_bit(&self, x: Gf) -> u8 {
        self.relative_trace(self.m, 1, x).0 as u8
    }

    /// Bit mask `w` with `Tr_{e->1}(Tr_{m->e}(y)) = parity(w & y)`.
    ///
    /// The composite is GF(2)-linear, so it is determined by its values on the
    /// polynomial basis.
    pub fn composite_trace_mask(&self, e: u32) -> Result<u32> {
        self.check_subdegree(e)?;
        let mut mask = 0u32;
        for i in 0..self.m {
            let t = self.relative_trace(self.m, e, Gf(1 << i));
            if self.subfield_trace_bit(e, t) == 1 {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    }

    pub fn in_subfield(&self, e: u32, t: Gf) -> bool {
        self.frobenius(t, e as u64) == t
    }

    /// The elements of GF(2^e) inside GF(2^m).
    pub fn subfield(&self, e: u32) -> Result<SubfieldView> {
        self.check_subdegree(e)?;
        let elements = if e == self.m {
            self.elements().collect()
        } else {
            // The multiplicative group of GF(2^e) is generated by
            // pi^((2^m - 1) / (2^e - 1)).
            let step = (self.order / ((1u32 << e) - 1)) as i64;
            let mut v = vec![Gf::ZERO];
            v.extend((0..(1i64 << e) - 1).map(|i| self.pi_pow(i * step)));
            v.sort();
            v
        };
        Ok(SubfieldView { e, elements })
    }
}

#[derive(Clone, Debug)]
pub struct SubfieldView {
    pub e: u32,
    /// Sorted by integer encoding.
    pub elements: Vec<Gf>,
}

impl SubfieldView {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: Gf) -> bool {
        self.elements.binary_search(&t).is_ok()
    }

    /// A GF(2)-basis of the subfield, picked greedily in encoding order.
    pub fn f2_basis(&self) -> Vec<Gf> {
        let mut span = XorBasis::default();
        self.elements
            .iter()
            .copied()
            .filter(|&t| span.insert(t.0))
            .collect()
    }
}

/// Incremental GF(2) row echelon form over `u32` vectors.
#[derive(Clone, Default, Debug)]
pub(crate) struct XorBasis {
    rows: Vec<u32>,
}

impl XorBasis {
    pub(crate) fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        v
    }

    /// Returns `true` when `v` was independent and got added.
    pub(crate) fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldCtx {
        FieldCtx::new(3, Some(0b1011)).unwrap()
    }

    #[test]
    fn gf8_powers_of_x() {
        // Powers of x mod x^3 + x + 1, computed by hand.
        let ctx = f8();
        let expected = [1, 2, 4, 3, 6, 7, 5];
        for (i, &v) in expected.iter().enumerate() {
            assert_eq!(ctx.pi_pow(i as i64), Gf(v));
        }
        assert_eq!(ctx.order(), 7);
        assert_eq!(ctx.pi(), Gf(2));
        assert_eq!(ctx.pow(ctx.pi(), 7).unwrap(), Gf::ONE);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(FieldCtx::new(1, None), Err(Error::Param(_))));
        assert!(matches!(FieldCtx::new(25, None), Err(Error::Param(_))));
    }

    #[test]
    fn rejects_bad_polynomials() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5.
        let err = FieldCtx::new(4, Some(0b11111)).unwrap_err();
        assert!(err.to_string().contains("not primitive"), "{err}");
        // x^4 + 1 = (x + 1)^4
        let err = FieldCtx::new(4, Some(0b10001)).unwrap_err();
        assert!(err.to_string().contains("not irreducible"), "{err}");
        let err = FieldCtx::new(4, Some(0b1011)).unwrap_err();
        assert!(err.to_string().contains("degree"), "{err}");
    }

    #[test]
    fn default_polys() {
        assert_eq!(default_poly(3).unwrap(), 0b1011);
        assert_eq!(default_poly(5).unwrap(), 0b100101);
        // No primitive trinomial of degree 8.
        assert_eq!(default_poly(8).unwrap().count_ones(), 5);
        for m in MIN_DEGREE..=MAX_DEGREE {
            let p = default_poly(m).unwrap();
            assert_eq!(poly_degree(p as u64), Some(m));
            assert!(is_primitive(p as u64));
        }
    }

    #[test]
    fn primitive_poly_listing() {
        // Degree 5: all six primitive polynomials, trinomials first.
        let all: Vec<u32> = primitive_polys(5).collect();
        assert_eq!(all, vec![0b100101, 0b101001, 0b101111, 0b110111, 0b111011, 0b111101]);
        // Degree 4 has two primitive polynomials; x^4+x^3+x^2+x+1 is excluded.
        assert_eq!(primitive_polys(4).collect::<Vec<_>>(), vec![0b10011, 0b11001]);
    }

    #[test]
    fn pi_has_full_order_by_naive_powering() {
        let ctx = FieldCtx::new(5, None).unwrap();
        let mut x = ctx.pi();
        let mut k = 1;
        while x != Gf::ONE {
            x = ctx.mul(x, ctx.pi());
            k += 1;
        }
        assert_eq!(k, 31);
        assert_eq!(ctx.element_order(ctx.pi()).unwrap(), 31);
    }

    #[test]
    fn pi_order_against_prime_divisors() {
        for m in [4, 6, 9, 12, 16, 21, 24] {
            let ctx = FieldCtx::new(m, None).unwrap();
            let n = ctx.order() as i64;
            assert_eq!(ctx.pow(ctx.pi(), n).unwrap(), Gf::ONE);
            for p in prime_factors(n as u64) {
                assert_ne!(ctx.pow(ctx.pi(), n / p as i64).unwrap(), Gf::ONE, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn repeated_squaring_matches_naive_loop() {
        for m in [5, 8, 11] {
            let ctx = FieldCtx::new(m, None).unwrap();
            let a = Gf(0b1011);
            let mut naive = Gf::ONE;
            for n in 0..300 {
                assert_eq!(ctx.pow(a, n).unwrap(), naive);
                naive = ctx.mul(naive, a);
            }
        }
    }

    #[test]
    fn inverse_and_negative_powers() {
        let ctx = FieldCtx::new(7, None).unwrap();
        assert!(matches!(ctx.inv(Gf::ZERO), Err(Error::Domain(_))));
        for a in ctx.elements().skip(1) {
            let ia = ctx.inv(a).unwrap();
            assert_eq!(ctx.mul(a, ia), Gf::ONE);
            assert_eq!(ctx.pow(a, -1).unwrap(), ia);
            assert_eq!(ctx.pow(a, -3).unwrap(), ctx.pow(ia, 3).unwrap());
        }
        assert_eq!(ctx.pi_pow(-1), ctx.inv(ctx.pi()).unwrap());
    }

    #[test]
    fn table_free_path_agrees() {
        let with = FieldCtx::new(9, None).unwrap();
        let mut without = with.clone();
        without.tables = None;
        for a in (0..512).step_by(7).map(Gf) {
            for b in (0..512).step_by(5).map(Gf) {
                assert_eq!(with.mul(a, b), without.mul(a, b));
            }
            if !a.is_zero() {
                assert_eq!(with.inv(a).unwrap(), without.inv(a).unwrap());
            }
            assert_eq!(with.frobenius(a, 4), without.frobenius(a, 4));
        }
    }

    #[test]
    fn trace_examples_gf8() {
        let ctx = f8();
        assert_eq!(ctx.trace_to_subfield(1, Gf::ZERO).unwrap(), Gf::ZERO);
        // x + x^2 + x^4 = x + x^2 + (x^2 + x) = 0
        assert_eq!(ctx.trace_to_subfield(1, Gf(2)).unwrap(), Gf::ZERO);
        let ones = ctx.elements().filter(|&x| ctx.absolute_trace_bit(x) == 1).count();
        assert_eq!(ones, 4);
        assert!(matches!(ctx.trace_to_subfield(2, Gf(1)), Err(Error::Param(_))));
    }

    #[test]
    fn trace_transitivity_and_surjectivity() {
        for (m, e) in [(6, 2), (6, 3), (9, 3), (10, 5), (8, 4)] {
            let ctx = FieldCtx::new(m, None).unwrap();
            let sub = ctx.subfield(e).unwrap();
            let mut image = std::collections::BTreeSet::new();
            for x in ctx.elements() {
                let t = ctx.trace_to_subfield(e, x).unwrap();
                assert!(ctx.in_subfield(e, t));
                image.insert(t);
                assert_eq!(ctx.absolute_trace_bit(x), ctx.subfield_trace_bit(e, t));
            }
            assert_eq!(image.len(), sub.len(), "surjective onto GF(2^{e})");
        }
    }

    #[test]
    fn composite_mask_matches_composite_trace() {
        for (m, e) in [(5, 1), (9, 3), (9, 1), (15, 5)] {
            let ctx = FieldCtx::new(m, None).unwrap();
            let mask = ctx.composite_trace_mask(e).unwrap();
            for x in ctx.elements().step_by(if m > 10 { 97 } else { 1 }) {
                let t = ctx.trace_to_subfield(e, x).unwrap();
                assert_eq!((mask & x.0).count_ones() as u8 & 1, ctx.subfield_trace_bit(e, t));
            }
        }
    }

    #[test]
    fn subfield_views() {
        let ctx = f8();
        assert_eq!(ctx.subfield(1).unwrap().elements, vec![Gf(0), Gf(1)]);
        assert_eq!(ctx.subfield(3).unwrap().len(), 8);
        assert!(ctx.subfield(2).is_err());

        let ctx = FieldCtx::new(9, None).unwrap();
        let sub = ctx.subfield(3).unwrap();
        // Oracle: fixed points of x -> x^8 by enumeration.
        let fixed: Vec<Gf> = ctx
            .elements()
            .filter(|&x| ctx.pow(x, 8).unwrap() == x)
            .collect();
        assert_eq!(sub.elements, fixed);
        assert_eq!(sub.len(), 8);
        for &a in &sub.elements {
            for &b in &sub.elements {
                assert!(sub.contains(a + b));
                assert!(sub.contains(ctx.mul(a, b)));
            }
        }
        assert_eq!(sub.f2_basis().len(), 3);
    }
}
