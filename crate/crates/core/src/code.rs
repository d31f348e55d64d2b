//! Codewords `c_a`, DC components, and exhaustive enumeration of the DC and
//! rank distributions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Gf};
use crate::forms::{self, gold_power, CodeParams, CoeffVec};
use crate::seq::BitSeq;

pub type Codeword = BitSeq;

/// Default refusal threshold for exhaustive loops.
pub const DEFAULT_BUDGET: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Enumeration,
    ClosedForm,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Enumeration => "enumeration",
            Source::ClosedForm => "closed_form",
        })
    }
}

/// Exact frequencies. `alpha` is keyed by `(r, eps)` where
/// `DC = -1 + eps 2^(m - e r / 2)`; `beta` by the rank `r` of `B_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistTable {
    pub params: CodeParams,
    pub alpha: BTreeMap<(u32, i8), BigUint>,
    pub beta: BTreeMap<u32, BigUint>,
    pub balanced: Option<BigUint>,
    pub source: Source,
}

impl DistTable {
    /// Same counts, regardless of where they came from.
    pub fn same_counts(&self, other: &DistTable) -> bool {
        self.params.m == other.params.m
            && self.params.e == other.params.e
            && self.params.k == other.params.k
            && self.alpha == other.alpha
            && self.beta == other.beta
            && self.balanced == other.balanced
    }

    pub fn nonzero_total(&self) -> BigUint {
        self.alpha.values().sum::<BigUint>() + self.balanced.clone().unwrap_or_default()
    }

    /// Counts as decimal strings; key order is fixed by `serde_json`'s sorted
    /// maps.
    pub fn counts_json(&self) -> Value {
        let alpha: Vec<Value> = self
            .alpha
            .iter()
            .map(|(&(r, eps), c)| json!({"r": r, "eps": eps, "count": c.to_string()}))
            .collect();
        let beta: Vec<Value> = self
            .beta
            .iter()
            .map(|(&r, c)| json!({"r": r, "count": c.to_string()}))
            .collect();
        let mut v = json!({
            "alpha": alpha,
            "beta": beta,
            "source": self.source.to_string(),
        });
        if let Some(b) = &self.balanced {
            v["balanced"] = Value::String(b.to_string());
        }
        v
    }

    /// One row per bin under the header `r,eps,count,source`. Beta rows leave
    /// `eps` empty; the balanced row leaves both `r` and `eps` empty.
    pub fn csv_rows(&self) -> Vec<String> {
        let mut rows = Vec::new();
        for (&(r, eps), c) in &self.alpha {
            rows.push(format!("{r},{eps},{c},{}", self.source));
        }
        for (&r, c) in &self.beta {
            rows.push(format!("{r},,{c},{}", self.source));
        }
        if let Some(b) = &self.balanced {
            rows.push(format!(",,{b},{}", self.source));
        }
        rows
    }
}

/// `c_a`, bit `i` = `Tr_{e->1}(Q_a(pi^(-i)))` computed through both trace
/// steps.
pub fn codeword(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec) -> Codeword {
    let n = ctx.order() as usize;
    BitSeq::from_fn(n, |i| {
        let x = ctx.pi_pow(-(i as i64));
        ctx.subfield_trace_bit(params.e, forms::q_eval(params, ctx, a, x)) == 1
    })
}

/// `2^m - 1 - 2 wt(c)`
pub fn dc_from_weight(c: &Codeword) -> i64 {
    c.len() as i64 - 2 * c.weight() as i64
}

/// `{-1} ∪ {-1 ± 2^((m+e)/2 + j e) : j = 0..k-2}`
pub fn dc_support(params: &CodeParams) -> BTreeSet<i64> {
    let mut s = BTreeSet::from([-1i64]);
    for j in 0..=params.k as i64 - 2 {
        let p = 1i64 << ((params.m + params.e) as i64 / 2 + j * params.e as i64);
        s.insert(-1 + p);
        s.insert(-1 - p);
    }
    s
}

/// Fast evaluation of `sum_x (-1)^{Tr_{e->1}(Q_a(x))}` for one code.
///
/// The composite trace is GF(2)-linear, so it is applied as a parity mask.
/// `x` runs over `0` and `pi^j` in log order.
pub struct Evaluator<'a> {
    params: CodeParams,
    ctx: &'a FieldCtx,
    mask: u32,
    shifts: Vec<u64>,
    /// `pi^(E_j)`
    steps: Vec<Gf>,
    basis: Vec<Gf>,
}

impl<'a> Evaluator<'a> {
    pub fn new(params: &CodeParams, ctx: &'a FieldCtx) -> Result<Self> {
        params.validate()?;
        if ctx.degree() != params.m {
            return Err(Error::Param(format!(
                "field degree {} does not match m = {}",
                ctx.degree(),
                params.m
            )));
        }
        let shifts = params.frobenius_shifts();
        let steps = shifts.iter().map(|&t| gold_power(ctx, ctx.pi(), t)).collect();
        Ok(Evaluator {
            params: *params,
            ctx,
            mask: ctx.composite_trace_mask(params.e)?,
            shifts,
            steps,
            basis: forms::subfield_basis(ctx, params.e)?,
        })
    }

    #[inline]
    fn bit(&self, y: Gf) -> u8 {
        ((self.mask & y.0).count_ones() & 1) as u8
    }

    /// `Tr(sum_{j>=1} a_j x^(E_j))` for `x = pi^i`, `i = 0..2^m - 2`.
    pub fn tail_bits(&self, tail: &[Gf]) -> Vec<u8> {
        let n = self.ctx.order() as usize;
        let mut out = vec![0u8; n];
        for (&aj, &step) in tail.iter().zip(&self.steps) {
            if aj.is_zero() {
                continue;
            }
            // a_j * pi^(i E_j), advanced one power of pi at a time.
            let mut y = aj;
            for b in out.iter_mut() {
                *b ^= self.bit(y);
                y = self.ctx.mul(y, step);
            }
        }
        out
    }

    /// `sum_x (-1)^(Tr(a_0 x) + tail(x))`, i.e. `1 + DC`.
    pub fn char_sum(&self, a0: Gf, tail_bits: &[u8]) -> i64 {
        let pi = self.ctx.pi();
        let mut z = a0;
        let mut ones = 0i64;
        for &tb in tail_bits {
            ones += (self.bit(z) ^ tb) as i64;
            z = self.ctx.mul(z, pi);
        }
        // x = 0 contributes +1.
        1 + tail_bits.len() as i64 - 2 * ones
    }

    pub fn dc(&self, a: &CoeffVec) -> i64 {
        let tail = self.tail_bits(&a.0[1..]);
        self.char_sum(a.0[0], &tail) - 1
    }

    pub fn rank(&self, tail: &[Gf]) -> u32 {
        let gm = forms::gram_from_tail(&self.params, self.ctx, tail, &self.shifts, self.basis.clone());
        forms::rank(self.ctx, &gm)
    }

    /// Bins `1 + DC` into `(r, eps)`; `None` when it is not `±2^t` with
    /// `r = 2(m - t)/e` an integer in range.
    pub fn bin(&self, char_sum: i64) -> Option<(u32, i8)> {
        if char_sum == 0 {
            return None;
        }
        let mag = char_sum.unsigned_abs();
        if !mag.is_power_of_two() {
            return None;
        }
        let t = mag.trailing_zeros();
        let (m, e) = (self.params.m, self.params.e);
        if t > m || !(2 * (m - t)).is_multiple_of(e) {
            return None;
        }
        let r = 2 * (m - t) / e;
        Some((r, if char_sum > 0 { 1 } else { -1 }))
    }
}

/// `1 + DC(c_a) = sum_x (-1)^{Tr_{e->1}(Q_a(x))}`, minus one.
pub fn dc(params: &CodeParams, ctx: &FieldCtx, a: &CoeffVec) -> Result<i64> {
    Ok(Evaluator::new(params, ctx)?.dc(a))
}

/// Result of one exhaustive pass: the table plus every property check made
/// along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    pub table: DistTable,
    /// DC values outside the predicted support, by value.
    pub dc_outside_support: BTreeMap<i64, u64>,
    /// Character sums that fit no `(r, eps)` bin.
    pub unbinned: BTreeMap<i64, u64>,
    pub rank_bound_violations: u64,
    pub odd_ranks: u64,
    /// `|1 + DC| ∉ {0, 2^(m - e rank / 2)}` for nonzero tails.
    pub magnitude_violations: u64,
    pub min_rank: Option<u32>,
    pub codewords: u64,
}

impl Survey {
    pub fn dc_support_violations(&self) -> u64 {
        self.dc_outside_support.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.dc_outside_support.is_empty()
            && self.unbinned.is_empty()
            && self.rank_bound_violations == 0
            && self.odd_ranks == 0
            && self.magnitude_violations == 0
    }
}

#[derive(Default, Clone)]
struct Partial {
    alpha: BTreeMap<(u32, i8), u64>,
    beta: BTreeMap<u32, u64>,
    balanced: u64,
    dc_outside: BTreeMap<i64, u64>,
    unbinned: BTreeMap<i64, u64>,
    rank_bound_violations: u64,
    odd_ranks: u64,
    magnitude_violations: u64,
    min_rank: Option<u32>,
    codewords: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        for (k, v) in other.alpha {
            *self.alpha.entry(k).or_default() += v;
        }
        for (k, v) in other.beta {
            *self.beta.entry(k).or_default() += v;
        }
        for (k, v) in other.dc_outside {
            *self.dc_outside.entry(k).or_default() += v;
        }
        for (k, v) in other.unbinned {
            *self.unbinned.entry(k).or_default() += v;
        }
        self.balanced += other.balanced;
        self.rank_bound_violations += other.rank_bound_violations;
        self.odd_ranks += other.odd_ranks;
        self.magnitude_violations += other.magnitude_violations;
        self.codewords += other.codewords;
        self.min_rank = match (self.min_rank, other.min_rank) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// `2^bits` saturated into `u128`.
pub(crate) fn pow2_sat(bits: u64) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

pub(crate) fn check_budget(required: u128, budget: u64, hint: &'static str) -> Result<()> {
    if required > budget as u128 {
        return Err(Error::Budget {
            required,
            budget: budget as u128,
            hint,
        });
    }
    Ok(())
}

/// Expected rank bins `(m - e)/e - 2i`, `i = 0..k-2`.
fn expected_ranks(params: &CodeParams) -> impl Iterator<Item = u32> + '_ {
    (0..=params.k - 2).map(|i| params.n() - 1 - 2 * i)
}

/// Walks every `a ∈ GF(2^m)^k` in counter order (`a_0` the lowest base-`2^m`
/// digit), split over tails `(a_1..a_{k-1})` on the current rayon pool.
pub fn survey(params: &CodeParams, ctx: &FieldCtx, budget: u64) -> Result<Survey> {
    survey_inner(params, ctx, budget, true)
}

fn survey_inner(params: &CodeParams, ctx: &FieldCtx, budget: u64, with_alpha: bool) -> Result<Survey> {
    let ev = Evaluator::new(params, ctx)?;
    let (m, k) = (params.m as u64, params.k as u64);
    if with_alpha {
        check_budget(pow2_sat(m * k), budget, "use closed-form mode for these parameters")?;
    } else {
        check_budget(pow2_sat(m * (k - 1)), budget, "use closed-form mode for these parameters")?;
    }
    let support = dc_support(params);
    let bound = params.rank_lower_bound();
    let tails = 1u64 << (m * (k - 1));
    let field_size = 1u64 << m;

    let partial = (0..tails)
        .into_par_iter()
        .fold(Partial::default, |mut acc, tail_index| {
            let tail = CoeffVec::from_index(tail_index, params.m, params.k - 1).0;
            let tail_zero = tail_index == 0;
            let rank = ev.rank(&tail);
            if !tail_zero {
                *acc.beta.entry(rank).or_default() += 1;
                if rank % 2 == 1 {
                    acc.odd_ranks += 1;
                }
                if rank < bound {
                    acc.rank_bound_violations += 1;
                }
                acc.min_rank = Some(acc.min_rank.map_or(rank, |r| r.min(rank)));
            }
            if !with_alpha {
                return acc;
            }
            let tb = ev.tail_bits(&tail);
            let magnitude = 1i64 << (params.m - params.e * rank / 2);
            for a0 in 0..field_size {
                if tail_zero && a0 == 0 {
                    continue;
                }
                acc.codewords += 1;
                let s = ev.char_sum(Gf(a0 as u32), &tb);
                let dc = s - 1;
                if !support.contains(&dc) {
                    *acc.dc_outside.entry(dc).or_default() += 1;
                }
                if !tail_zero && s != 0 && s.abs() != magnitude {
                    acc.magnitude_violations += 1;
                }
                if s == 0 {
                    acc.balanced += 1;
                } else if let Some(bin) = ev.bin(s) {
                    *acc.alpha.entry(bin).or_default() += 1;
                } else {
                    *acc.unbinned.entry(dc).or_default() += 1;
                }
            }
            acc
        })
        .reduce(Partial::default, Partial::merge);

    let mut alpha: BTreeMap<(u32, i8), BigUint> = BTreeMap::new();
    let mut beta: BTreeMap<u32, BigUint> = BTreeMap::new();
    for r in expected_ranks(params) {
        beta.insert(r, BigUint::zero());
        if with_alpha {
            alpha.insert((r, -1), BigUint::zero());
            alpha.insert((r, 1), BigUint::zero());
        }
    }
    for (key, v) in partial.alpha {
        alpha.insert(key, v.into());
    }
    for (key, v) in partial.beta {
        beta.insert(key, v.into());
    }
    Ok(Survey {
        table: DistTable {
            params: *params,
            alpha,
            beta,
            balanced: with_alpha.then(|| partial.balanced.into()),
            source: Source::Enumeration,
        },
        dc_outside_support: partial.dc_outside,
        unbinned: partial.unbinned,
        rank_bound_violations: partial.rank_bound_violations,
        odd_ranks: partial.odd_ranks,
        magnitude_violations: partial.magnitude_violations,
        min_rank: partial.min_rank,
        codewords: partial.codewords,
    })
}

/// Alpha and balanced counts over all nonzero `a`.
pub fn enumerate_alpha(params: &CodeParams, ctx: &FieldCtx, budget: u64) -> Result<DistTable> {
    let mut t = survey(params, ctx, budget)?.table;
    t.beta.clear();
    Ok(t)
}

/// Rank frequencies over nonzero tails only; `B_a` does not depend on `a_0`,
/// so skipping it realizes the `2^(-m)` normalization.
pub fn enumerate_beta(params: &CodeParams, ctx: &FieldCtx, budget: u64) -> Result<DistTable> {
    Ok(survey_inner(params, ctx, budget, false)?.table)
}
