//! Brute-force solution sets `V_{s,u}` of the systems
//!
//! ```text
//! sum_{i=1}^{u} (x_{2i-1} x_{2i}^(2^t_j) + x_{2i-1}^(2^t_j) x_{2i}) = 0,  j = 1..s
//! ```
//!
//! over GF(2^m), and the counting identities built on them.
//!
//! Tuples are enumerated as one `2mu`-bit counter; pair `i` occupies bits
//! `[2m i, 2m (i+1))`, low half `x_{2i-1}`, high half `x_{2i}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed::{gauss_binom, pow2, q_sign_weight};
use crate::code::{check_budget, pow2_sat, Evaluator};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Gf};
use crate::forms::{CodeParams, CoeffVec, Family};

/// Default tuple budget: `2^24`.
pub const DEFAULT_TUPLE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCount {
    pub s: u32,
    pub u: u32,
    pub family: Family,
    pub count: BigUint,
}

/// Frobenius shift of equation `j` (1-based) for the family.
fn family_shift(params: &CodeParams, j: u32) -> u64 {
    let d = params.d as u64;
    let j = j as u64;
    match params.family {
        Family::A => j * d,
        Family::B => (2 * j - 1) * d,
        Family::C => (params.half() as u64 - j) * d,
    }
}

/// Shift defining `x~ = x + x^(2^shift)` in the eliminated system.
fn tilde_shift(params: &CodeParams) -> u64 {
    let (m, d) = (params.m as u64, params.d as u64);
    match params.family {
        Family::A => d % m,
        Family::B => (2 * d) % m,
        // 2^(-d) = 2^(m - d mod m)
        Family::C => (m - d % m) % m,
    }
}

/// `x y^(2^t) + x^(2^t) y` for every pair, indexed by `x | y << m`.
fn pair_table(ctx: &FieldCtx, t: u64, tilde: Option<u64>) -> Vec<u32> {
    let size = ctx.size() as usize;
    let m = ctx.degree();
    let map = |v: Gf| match tilde {
        Some(s) => v + ctx.frobenius(v, s),
        None => v,
    };
    let mut out = vec![0u32; size * size];
    for yi in 0..size {
        let y = map(Gf(yi as u32));
        let yt = ctx.frobenius(y, t);
        for xi in 0..size {
            let x = map(Gf(xi as u32));
            let v = ctx.mul(x, yt) + ctx.mul(ctx.frobenius(x, t), y);
            out[xi | (yi << m)] = v.0;
        }
    }
    out
}

/// One system of bilinear equations, each evaluated by table lookup per pair.
struct System {
    tables: Vec<Vec<u32>>,
}

impl System {
    fn original(params: &CodeParams, ctx: &FieldCtx, s: u32) -> System {
        System {
            tables: (1..=s).map(|j| pair_table(ctx, family_shift(params, j), None)).collect(),
        }
    }

    /// First equation unchanged, remaining `s - 1` equations in `x~`.
    fn eliminated(params: &CodeParams, ctx: &FieldCtx, s: u32) -> System {
        let ts = tilde_shift(params);
        let mut tables = vec![pair_table(ctx, family_shift(params, 1), None)];
        tables.extend((1..s).map(|j| pair_table(ctx, family_shift(params, j), Some(ts))));
        System { tables }
    }

    #[inline]
    fn holds(&self, tuple: u64, u: u32, m: u32) -> bool {
        let pair_mask = (1u64 << (2 * m)) - 1;
        self.tables.iter().all(|tab| {
            let mut acc = 0u32;
            for i in 0..u {
                acc ^= tab[((tuple >> (2 * m * i)) & pair_mask) as usize];
            }
            acc == 0
        })
    }
}

fn check_su(params: &CodeParams, ctx: &FieldCtx, s: u32, u: u32, budget: u64) -> Result<()> {
    params.validate()?;
    if ctx.degree() != params.m {
        return Err(Error::Param("field degree does not match m".into()));
    }
    if u == 0 {
        return Err(Error::Param("u must be at least 1".into()));
    }
    if s == 0 || s > params.k - 1 {
        return Err(Error::Param(format!("s = {s} outside 1..=k-1 = {}", params.k - 1)));
    }
    check_budget(
        pow2_sat(2 * params.m as u64 * u as u64),
        budget.min(DEFAULT_TUPLE_BUDGET),
        "tuple space too large for brute force",
    )
}

pub fn v_count(params: &CodeParams, ctx: &FieldCtx, s: u32, u: u32, budget: u64) -> Result<VCount> {
    check_su(params, ctx, s, u, budget)?;
    let sys = System::original(params, ctx, s);
    let m = params.m;
    let count: u64 = (0..1u64 << (2 * m * u))
        .into_par_iter()
        .filter(|&t| sys.holds(t, u, m))
        .count() as u64;
    Ok(VCount {
        s,
        u,
        family: params.family,
        count: count.into(),
    })
}

/// Number of tuples on which two systems disagree, walking the shared tuple
/// stream once.
fn disagreements(a: &System, b: &System, u: u32, m: u32) -> u64 {
    (0..1u64 << (2 * m * u))
        .into_par_iter()
        .filter(|&t| a.holds(t, u, m) != b.holds(t, u, m))
        .count() as u64
}

/// Whether `V_{s,u}` and `V_{u,u}` coincide as sets.
pub fn v_set_equal(params: &CodeParams, ctx: &FieldCtx, s: u32, u: u32, budget: u64) -> Result<bool> {
    if s < u {
        return Err(Error::Param(format!("need s >= u, got s = {s}, u = {u}")));
    }
    check_su(params, ctx, s, u, budget)?;
    if s == u {
        return Ok(true);
    }
    let big = System::original(params, ctx, s);
    let small = System::original(params, ctx, u);
    Ok(disagreements(&big, &small, u, params.m) == 0)
}

/// Whether the `s`-equation system and its eliminated form have the same
/// solutions in `GF(2^m)^(2u)`.
pub fn elimination_equiv_check(
    params: &CodeParams,
    ctx: &FieldCtx,
    s: u32,
    u: u32,
    budget: u64,
) -> Result<bool> {
    check_su(params, ctx, s, u, budget)?;
    let orig = System::original(params, ctx, s);
    let elim = System::eliminated(params, ctx, s);
    Ok(disagreements(&orig, &elim, u, params.m) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentCheck {
    pub u: u32,
    /// `sum_a (2^(2m - e rank B_a))^u`
    pub lhs: BigUint,
    /// `2^(mk) |V_{u,u}|`
    pub rhs: BigUint,
    pub holds: bool,
}

/// Compares `sum_a (sum_{x,y} (-1)^Tr(B_a(x,y)))^u` with `2^(mk) |V_{u,u}|`.
pub fn moment_identity_check(
    params: &CodeParams,
    ctx: &FieldCtx,
    u: u32,
    budget: u64,
) -> Result<MomentCheck> {
    params.validate()?;
    if u > params.k - 1 {
        return Err(Error::Param(format!("u = {u} exceeds k - 1 = {}", params.k - 1)));
    }
    let (m, e, k) = (params.m as u64, params.e as u64, params.k as u64);
    check_budget(pow2_sat(m * (k - 1)), budget, "too many tails to rank")?;
    let ev = Evaluator::new(params, ctx)?;
    let tails = 1u64 << (m * (k - 1));
    let per_rank: Vec<u64> = (0..tails)
        .into_par_iter()
        .fold(
            || vec![0u64; params.n() as usize + 1],
            |mut hist, ti| {
                let tail = CoeffVec::from_index(ti, params.m, params.k - 1).0;
                hist[ev.rank(&tail) as usize] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; params.n() as usize + 1],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    let mut lhs = BigInt::zero();
    for (r, &cnt) in per_rank.iter().enumerate() {
        if cnt > 0 {
            let per_form = pow2((2 * m - e * r as u64) * u as u64);
            lhs += per_form * BigInt::from(cnt);
        }
    }
    // a_0 is free.
    lhs *= pow2(m);
    let v = if u == 0 {
        BigUint::one()
    } else {
        v_count(params, ctx, u, u, budget)?.count
    };
    let rhs = pow2(m * k) * BigInt::from(v);
    let lhs = lhs.to_biguint().unwrap();
    let rhs = rhs.to_biguint().unwrap();
    Ok(MomentCheck {
        u,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Outcome of the `|V_{i,i}|` recursion for one `u` under several readings
/// of its right-hand product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionCheck {
    pub u: u32,
    /// `sum_{i<=u} (-1)^(u-i) 4^(e C(u-i,2)) (u choose i)_{4^e} 2^(-(m+e) i) |V_{i,i}|`
    pub lhs: String,
    pub readings: Vec<RecursionReading>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReading {
    pub name: &'static str,
    pub formula: &'static str,
    pub rhs: String,
    pub holds: bool,
}

impl RecursionCheck {
    pub fn holds(&self, name: &str) -> Option<bool> {
        self.readings.iter().find(|r| r.name == name).map(|r| r.holds)
    }
}

pub const READING_AS_PRINTED: &str = "as_printed";
pub const READING_UPPER_U_MINUS_1: &str = "upper_limit_u_minus_1";
pub const READING_CONSTANT_BASE: &str = "upper_limit_u_minus_1_constant_base";

/// Evaluates the recursion exactly for `1 <= u <= (m - e)/2e`.
pub fn recursion_check(params: &CodeParams, ctx: &FieldCtx, u: u32, budget: u64) -> Result<RecursionCheck> {
    params.validate()?;
    let max_u = (params.n() - 1) / 2;
    if u == 0 || u > max_u {
        return Err(Error::Param(format!("u = {u} outside 1..={max_u}")));
    }
    // Widen k to cover u equations.
    let wide = CodeParams {
        k: params.k.max(u + 1),
        ..*params
    };
    let (m, e, k) = (params.m as u64, params.e as u64, params.k as u64);
    let q = pow2(2 * e);
    let mut lhs = BigRational::zero();
    for i in 0..=u as u64 {
        let v = if i == 0 {
            BigInt::one()
        } else {
            BigInt::from(v_count(&wide, ctx, i as u32, i as u32, budget)?.count)
        };
        let mut coeff = q_sign_weight(params.e, u as u64 - i) * gauss_binom(u as u64, i, &q) * v;
        if (u as u64 - i) % 2 == 1 {
            coeff = -coeff;
        }
        lhs += BigRational::new(coeff, pow2((m + e) * i));
    }
    let scale = BigRational::new(BigInt::one(), pow2(m * u as u64));
    let product = |upper: u64, factor: &dyn Fn(u64) -> BigInt| -> BigRational {
        let p: BigInt = (0..upper).map(factor).product();
        &scale * BigRational::from_integer(p)
    };
    let printed = product(k, &|i| pow2((m - e) * i) - pow2(2 * e * i));
    let u_minus_1 = product(u as u64, &|i| pow2((m - e) * i) - pow2(2 * e * i));
    let constant = product(u as u64, &|i| pow2(m - e) - pow2(2 * e * i));
    let reading = |name, formula, rhs: BigRational| RecursionReading {
        name,
        formula,
        holds: rhs == lhs,
        rhs: rhs.to_string(),
    };
    Ok(RecursionCheck {
        u,
        lhs: lhs.to_string(),
        readings: vec![
            reading(
                READING_AS_PRINTED,
                "2^(-mu) prod_{i=0}^{k-1} (2^((m-e)i) - 4^(ei))",
                printed,
            ),
            reading(
                READING_UPPER_U_MINUS_1,
                "2^(-mu) prod_{i=0}^{u-1} (2^((m-e)i) - 4^(ei))",
                u_minus_1,
            ),
            reading(
                READING_CONSTANT_BASE,
                "2^(-mu) prod_{i=0}^{u-1} (2^(m-e) - 4^(ei))",
                constant,
            ),
        ],
    })
}
