//! Code parameters, the quadratic systems `Q_a`, their polar bilinear forms
//! `B_a`, and ranks of `B_a` over the subfield GF(2^e).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Gf, XorBasis, MAX_DEGREE, MIN_DEGREE};

/// Which list of decimation exponents defines the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `2^(j d) + 1`
    A,
    /// `2^((2j - 1) d) + 1`
    B,
    /// `2^(((m + e) / 2e - j) d) + 1`
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Param(format!("unknown family {other:?}, expected A, B or C"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub m: u32,
    pub d: u32,
    pub e: u32,
    pub k: u32,
    pub family: Family,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} d={} e={} k={} family={}",
            self.m, self.d, self.e, self.k, self.family
        )
    }
}

impl CodeParams {
    /// Validated constructor.
    pub fn new(m: u32, d: u32, e: u32, k: u32, family: Family) -> Result<Self> {
        let p = CodeParams { m, d, e, k, family };
        p.validate()?;
        Ok(p)
    }

    /// Checks `e = gcd(m, d) = gcd(m, 2d)` and `2 <= k <= (m + e) / 2e`.
    pub fn validate(&self) -> Result<()> {
        let CodeParams { m, d, e, k, .. } = *self;
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::Param(format!(
                "m = {m} outside supported range {MIN_DEGREE}..={MAX_DEGREE}"
            )));
        }
        if d == 0 || e == 0 {
            return Err(Error::Param("d and e must be positive".into()));
        }
        let g1 = m.gcd(&d);
        if g1 != e {
            return Err(Error::Param(format!("gcd(m, d) = gcd({m}, {d}) = {g1} != e = {e}")));
        }
        let g2 = m.gcd(&(2 * d));
        if g2 != e {
            return Err(Error::Param(format!(
                "gcd(m, 2d) = gcd({m}, {}) = {g2} != e = {e} (m/e must be odd)",
                2 * d
            )));
        }
        let kmax = (m + e) / (2 * e);
        if k < 2 || k > kmax {
            return Err(Error::Param(format!(
                "k = {k} outside 2..=(m+e)/(2e) = {kmax}"
            )));
        }
        let order = (1u64 << m) - 1;
        for f in self.decimation_factors() {
            if f.gcd(&order) != 1 {
                return Err(Error::Param(format!(
                    "decimation factor {f} shares a factor with 2^m - 1 = {order}"
                )));
            }
        }
        Ok(())
    }

    /// `m / e`, the dimension of GF(2^m) over GF(2^e). Always odd.
    pub fn n(&self) -> u32 {
        self.m / self.e
    }

    /// `(m + e) / 2e`
    pub fn half(&self) -> u32 {
        (self.m + self.e) / (2 * self.e)
    }

    /// The Frobenius shifts `t_j` with exponent `E_j = 2^(t_j) + 1`,
    /// `j = 1..k-1`.
    pub fn frobenius_shifts(&self) -> Vec<u64> {
        let d = self.d as u64;
        let half = self.half() as u64;
        (1..self.k as u64)
            .map(|j| match self.family {
                Family::A => j * d,
                Family::B => (2 * j - 1) * d,
                Family::C => (half - j) * d,
            })
            .collect()
    }

    /// The exponents `E_j = 2^(t_j) + 1` as exact integers.
    pub fn exponents(&self) -> Vec<BigUint> {
        self.frobenius_shifts()
            .into_iter()
            .map(|t| (BigUint::from(1u8) << t as usize) + 1u8)
            .collect()
    }

    /// Decimation factors `2^(t_j mod m) + 1`, congruent to `E_j` modulo
    /// `2^m - 1`.
    pub fn decimation_factors(&self) -> Vec<u64> {
        let m = self.m as u64;
        self.frobenius_shifts()
            .into_iter()
            .map(|t| (1u64 << (t % m)) + 1)
            .collect()
    }

    /// Rank lower bound for nonzero tails: `(m - e)/e - 2(k - 2)`.
    pub fn rank_lower_bound(&self) -> u32 {
        (self.n() - 1) - 2 * (self.k - 2)
    }
}

/// Coefficient vector `(a_0, ..., a_{k-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVec(pub Vec<Gf>);

impl CoeffVec {
    pub fn zero(k: u32) -> Self {
        CoeffVec(vec![Gf::ZERO; k as usize])
    }

    /// Decodes `k` little-endian base-`2^m` digits of `index`.
    pub fn from_index(index: u64, m: u32, k: u32) -> Self {
        let mask = (1u64 << m) - 1;
        CoeffVec((0..k).map(|j| Gf(((index >> (j * m)) & mask) as u32)).collect())
    }

    pub fn to_index(&self, m: u32) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, a)| acc | ((a.0 as u64) << (j as u32 * m)))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn tail_is_zero(&self) -> bool {
        self.0.iter().skip(1).all(|a| a.is_zero())
    }

    pub fn add(&self, other: &CoeffVec) -> CoeffVec {
        CoeffVec(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }
}

fn check_len(params: &CodeParams, a: &CoeffVec) {
    assert_eq!(a.k(), params.k as usize, "coefficient vector length must be k");
}

/// `x^(2^t + 1)`
#[inline]
pub(crate) fn gold_power(ctx: &FieldCtx, x: Gf, t: u64) -> Gf {
    ctx.mul(ctx.frobenius(x, t), x)
}

/// `Q_a(x) = Tr_{m->e}(a_0 x) + sum_j Tr_{m->e}(a_j x^(E_j))`, a subfield
/// element.
pub fn q_eval(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec, x: Gf) -> Gf {
    check_len(params, a);
    let e = params.e;
    let mut acc = ctx.relative_trace(params.m, e, ctx.mul(a.0[0], x));
    for (aj, t) in a.0[1..].iter().zip(params.frobenius_shifts()) {
        acc += ctx.relative_trace(params.m, e, ctx.mul(*aj, gold_power(ctx, x, t)));
    }
    acc
}

/// `B_a(x, y) = Q_a(x + y) + Q_a(x) + Q_a(y)` (characteristic 2).
pub fn b_eval(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec, x: Gf, y: Gf) -> Gf {
    q_eval(params, ctx, a, x + y) + q_eval(params, ctx, a, x) + q_eval(params, ctx, a, y)
}

/// `B_a(x, y) = sum_j Tr_{m->e}(a_j (x y^(2^t_j) + x^(2^t_j) y))`.
pub fn b_eval_explicit(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec, x: Gf, y: Gf) -> Gf {
    check_len(params, a);
    b_explicit_with_shifts(ctx, params.m, params.e, &a.0[1..], &params.frobenius_shifts(), x, y)
}

fn b_explicit_with_shifts(
    ctx: &FieldCtx,
    m: u32,
    e: u32,
    tail: &[Gf],
    shifts: &[u64],
    x: Gf,
    y: Gf,
) -> Gf {
    let mut acc = Gf::ZERO;
    for (&aj, &t) in tail.iter().zip(shifts) {
        if aj.is_zero() {
            continue;
        }
        let inner = ctx.mul(x, ctx.frobenius(y, t)) + ctx.mul(ctx.frobenius(x, t), y);
        acc += ctx.relative_trace(m, e, ctx.mul(aj, inner));
    }
    acc
}

/// Greedy GF(2^e)-basis of GF(2^m): scan elements in encoding order, keep
/// each one not in the GF(2^e)-span of those already kept.
pub fn subfield_basis(ctx: &FieldCtx, e: u32) -> Result<Vec<Gf>> {
    greedy_basis(ctx, e, ctx.elements().skip(1))
}

/// Same construction over an arbitrary scan order.
pub fn greedy_basis(ctx: &FieldCtx, e: u32, scan: impl Iterator<Item = Gf>) -> Result<Vec<Gf>> {
    let lambdas = ctx.subfield(e)?.f2_basis();
    let n = (ctx.degree() / e) as usize;
    let mut span = XorBasis::default();
    let mut basis = Vec::with_capacity(n);
    for c in scan {
        if basis.len() == n {
            break;
        }
        if span.reduce(c.0) == 0 {
            continue;
        }
        for &l in &lambdas {
            span.insert(ctx.mul(l, c).0);
        }
        basis.push(c);
    }
    debug_assert_eq!(span.len(), ctx.degree() as usize);
    Ok(basis)
}

/// Coordinates of `B_a` in a GF(2^e)-basis of GF(2^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub e: u32,
    pub entries: Vec<Vec<Gf>>,
    pub basis: Vec<Gf>,
}

impl GramMatrix {
    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|i| {
            self.entries[i][i].is_zero() && (0..self.n).all(|j| self.entries[i][j] == self.entries[j][i])
        })
    }

    /// Rows of integer encodings, for debugging output.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.entries.iter().map(|r| r.iter().map(|g| g.0).collect()).collect()
    }
}

pub fn gram(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec) -> Result<GramMatrix> {
    let basis = subfield_basis(ctx, params.e)?;
    Ok(gram_in_basis(params, ctx, a, basis))
}

pub fn gram_in_basis(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec, basis: Vec<Gf>) -> GramMatrix {
    check_len(params, a);
    gram_from_tail(params, ctx, &a.0[1..], &params.frobenius_shifts(), basis)
}

pub(crate) fn gram_from_tail(
    params: &CodeParams,
    ctx: &FieldCtx,
    tail: &[Gf],
    shifts: &[u64],
    basis: Vec<Gf>,
) -> GramMatrix {
    let n = basis.len();
    let mut entries = vec![vec![Gf::ZERO; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = b_explicit_with_shifts(ctx, params.m, params.e, tail, shifts, basis[i], basis[j]);
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    GramMatrix {
        n,
        e: params.e,
        entries,
        basis,
    }
}

/// Rank over GF(2^e) by Gaussian elimination, arithmetic inside GF(2^m).
pub fn rank(ctx: &FieldCtx, gm: &GramMatrix) -> u32 {
    let mut rows = gm.entries.clone();
    let n = gm.n;
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ctx.inv(rows[r][col]).expect("pivot is nonzero");
        let pivot: Vec<Gf> = rows[r].iter().map(|&v| ctx.mul(v, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (dst, &pv) in row.iter_mut().zip(&pivot).skip(col) {
                *dst += ctx.mul(f, pv);
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r as u32
}

/// `m/e - rank`, the GF(2^e)-dimension of the radical.
pub fn radical_dim(ctx: &FieldCtx, gm: &GramMatrix) -> u32 {
    gm.n as u32 - rank(ctx, gm)
}
