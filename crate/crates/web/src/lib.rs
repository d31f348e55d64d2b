//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain numbers and strings and returns a JSON string, so
//! the page needs no generated TypeScript types. The `*_json` functions are
//! the native entry points used by the exports and by the tests. Passing
//! `e = 0` selects `gcd(m, d)`.

use goldcode::closed;
use goldcode::code::{self, Evaluator};
use goldcode::field::{FieldCtx, Gf};
use goldcode::forms::{self, CodeParams, CoeffVec, Family};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `m k` enumerated in the browser.
pub const MAX_ENUMERATION_BITS: u32 = 20;

fn params(m: u32, d: u32, e: u32, k: u32, family: &str) -> Result<CodeParams, String> {
    let family: Family = family.parse().map_err(|e: goldcode::Error| e.to_string())?;
    let e = if e == 0 { num_integer::gcd(m, d) } else { e };
    CodeParams::new(m, d, e, k, family).map_err(|e| e.to_string())
}

fn params_json(p: &CodeParams) -> Value {
    json!({"m": p.m, "d": p.d, "e": p.e, "k": p.k, "family": p.family.to_string()})
}

/// Validation report with derived exponents and the DC support.
pub fn describe_json(m: u32, d: u32, e: u32, k: u32, family: &str) -> Result<String, String> {
    let p = params(m, d, e, k, family)?;
    Ok(json!({
        "params": params_json(&p),
        "exponents": p.exponents().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "rank_lower_bound": p.rank_lower_bound(),
        "dc_support": code::dc_support(&p).into_iter().collect::<Vec<_>>(),
    })
    .to_string())
}

/// Closed-form table, plus the enumerated table when `enumerate` is set and
/// `m k <= MAX_ENUMERATION_BITS`.
pub fn distribution_json(m: u32, d: u32, e: u32, k: u32, family: &str, enumerate: bool) -> Result<String, String> {
    let p = params(m, d, e, k, family)?;
    let closed = closed::closed_table(&p);
    let mut out = json!({
        "params": params_json(&p),
        "closed": closed.counts_json(),
    });
    if enumerate {
        if m * k > MAX_ENUMERATION_BITS {
            return Err(format!("enumeration limited to m k <= {MAX_ENUMERATION_BITS}"));
        }
        let ctx = FieldCtx::new(m, None).map_err(|e| e.to_string())?;
        let s = code::survey(&p, &ctx, 1 << MAX_ENUMERATION_BITS).map_err(|e| e.to_string())?;
        out["enumerated"] = s.table.counts_json();
        out["match"] = json!(s.table.same_counts(&closed));
    }
    Ok(out.to_string())
}

/// One codeword for coefficients given as comma- or space-separated field
/// elements (decimal or `0x` hex), `a_0` first.
pub fn codeword_json(m: u32, d: u32, e: u32, k: u32, family: &str, coeffs: &str) -> Result<String, String> {
    let p = params(m, d, e, k, family)?;
    let mut a = Vec::new();
    for tok in coeffs.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v = match tok.strip_prefix("0x") {
            Some(h) => u32::from_str_radix(h, 16),
            None => tok.parse(),
        }
        .map_err(|_| format!("bad coefficient {tok:?}"))?;
        if v >> m != 0 {
            return Err(format!("coefficient {v} is not in GF(2^{m})"));
        }
        a.push(Gf(v));
    }
    if a.len() > k as usize {
        return Err(format!("expected at most {k} coefficients"));
    }
    a.resize(k as usize, Gf::ZERO);
    let a = CoeffVec(a);
    let ctx = FieldCtx::new(m, None).map_err(|e| e.to_string())?;
    let c = code::codeword(&p, &ctx, &a);
    let ev = Evaluator::new(&p, &ctx).map_err(|e| e.to_string())?;
    let rank = if a.tail_is_zero() {
        None
    } else {
        Some(forms::rank(&ctx, &forms::gram(&p, &ctx, &a).map_err(|e| e.to_string())?))
    };
    let bits: String = c.to_bits().iter().map(|b| char::from(b'0' + b)).collect();
    Ok(json!({
        "params": params_json(&p),
        "coeffs": a.0.iter().map(|g| g.0).collect::<Vec<_>>(),
        "bits": bits,
        "weight": c.weight(),
        "dc": code::dc_from_weight(&c),
        "dc_from_character_sum": ev.dc(&a),
        "rank": rank,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn describe(m: u32, d: u32, e: u32, k: u32, family: &str) -> Result<String, JsError> {
    describe_json(m, d, e, k, family).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distribution(m: u32, d: u32, e: u32, k: u32, family: &str, enumerate: bool) -> Result<String, JsError> {
    distribution_json(m, d, e, k, family, enumerate).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn codeword(m: u32, d: u32, e: u32, k: u32, family: &str, coeffs: &str) -> Result<String, JsError> {
    codeword_json(m, d, e, k, family, coeffs).map_err(|e| JsError::new(&e))
}
