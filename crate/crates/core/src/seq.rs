//! Binary sequences of period `2^m - 1`: m-sequences, circular decimation and
//! shifts, the Berlekamp–Massey m-sequence test, and GF(2) span dimension.

use std::fmt::Write as _;

use crate::field::{is_primitive, poly_degree, FieldCtx};

/// Bit-packed binary sequence, LSB-first within each word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSeq {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitSeq({s})")
    }
}

impl BitSeq {
    pub fn zeros(len: usize) -> Self {
        BitSeq {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = BitSeq::zeros(len);
        for i in 0..len {
            if f(i) {
                s.set(i, true);
            }
        }
        s
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        BitSeq::from_fn(bits.len(), |i| bits[i] != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor(&self, other: &BitSeq) -> BitSeq {
        assert_eq!(self.len, other.len);
        BitSeq {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
            len: self.len,
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Hex of the packed bytes, LSB-first: byte `b` holds bits `8b..8b+8`.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for b in 0..self.len.div_ceil(8) {
            let byte = (self.words[b / 8] >> ((b % 8) * 8)) as u8;
            write!(out, "{byte:02x}").unwrap();
        }
        out
    }

    pub fn from_hex(hex: &str, len: usize) -> Option<BitSeq> {
        if hex.len() != 2 * len.div_ceil(8) {
            return None;
        }
        let mut s = BitSeq::zeros(len);
        for b in 0..len.div_ceil(8) {
            let byte = u8::from_str_radix(hex.get(2 * b..2 * b + 2)?, 16).ok()?;
            for j in 0..8 {
                let i = 8 * b + j;
                if (byte >> j) & 1 == 1 {
                    if i >= len {
                        return None;
                    }
                    s.set(i, true);
                }
            }
        }
        Some(s)
    }
}

/// `s_i = Tr(pi^(-i))`, `i = 0..2^m - 2`.
pub fn mseq(ctx: &FieldCtx) -> BitSeq {
    let n = ctx.order() as usize;
    BitSeq::from_fn(n, |i| ctx.absolute_trace_bit(ctx.pi_pow(-(i as i64))) == 1)
}

/// `out_i = in_(t i mod N)`
pub fn decimate(seq: &BitSeq, t: u64) -> BitSeq {
    let n = seq.len() as u64;
    if n == 0 {
        return seq.clone();
    }
    let t = t % n;
    BitSeq::from_fn(seq.len(), |i| seq.get(((t * i as u64) % n) as usize))
}

/// Cyclic rotation: `out_i = in_(i + r mod N)`.
pub fn shift(seq: &BitSeq, r: i64) -> BitSeq {
    let n = seq.len() as i64;
    if n == 0 {
        return seq.clone();
    }
    let r = r.rem_euclid(n) as usize;
    BitSeq::from_fn(seq.len(), |i| seq.get((i + r) % n as usize))
}

/// Berlekamp–Massey over GF(2). Returns the linear complexity `L` and the
/// connection polynomial `C(x) = 1 + c_1 x + ... + c_L x^L` (bit `i` = `c_i`).
pub fn berlekamp_massey(bits: &[u8]) -> (usize, Vec<u8>) {
    let n = bits.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift_since = 1usize;
    for i in 0..n {
        let mut disc = bits[i];
        for j in 1..=l {
            disc ^= c[j] & bits[i - j];
        }
        if disc == 0 {
            shift_since += 1;
            continue;
        }
        let prev = c.clone();
        for j in 0..=n - shift_since {
            c[j + shift_since] ^= b[j];
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            shift_since = 1;
        } else {
            shift_since += 1;
        }
    }
    c.truncate(l + 1);
    (l, c)
}

pub fn linear_complexity(seq: &BitSeq) -> usize {
    let mut bits = seq.to_bits();
    bits.extend_from_within(..);
    berlekamp_massey(&bits).0
}

/// True iff the sequence has linear complexity `m` (`N = 2^m - 1`) with a
/// primitive minimal polynomial.
pub fn is_mlseq(seq: &BitSeq) -> bool {
    let n = seq.len() + 1;
    if n < 4 || !n.is_power_of_two() {
        return false;
    }
    let m = n.trailing_zeros() as usize;
    // Two periods pin down any recurrence of order <= N.
    let mut bits = seq.to_bits();
    bits.extend_from_within(..);
    let (l, conn) = berlekamp_massey(&bits);
    if l != m {
        return false;
    }
    let poly = conn
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i));
    poly_degree(poly) == Some(m as u32) && is_primitive(poly)
}

/// GF(2) row space of all cyclic shifts of a set of equal-length sequences.
#[derive(Clone, Debug, Default)]
pub struct ShiftSpan {
    /// Reduced rows paired with their pivot bit index.
    rows: Vec<(usize, Vec<u64>)>,
    len: usize,
}

impl ShiftSpan {
    pub fn new(seqs: &[BitSeq]) -> Self {
        let mut span = ShiftSpan {
            rows: Vec::new(),
            len: seqs.first().map_or(0, |s| s.len()),
        };
        for s in seqs {
            assert_eq!(s.len(), span.len, "sequences must share a length");
            for r in 0..s.len() {
                span.insert(shift(s, r as i64).words().to_vec());
                // A shift-invariant space is spanned once it reaches full rank.
                if span.rows.len() == span.len {
                    return span;
                }
            }
        }
        span
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (p, row) in &self.rows {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
        else {
            return false;
        };
        // Keep rows fully reduced against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if (row[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, s: &BitSeq) -> bool {
        s.len() == self.len && self.reduce(s.words().to_vec()).iter().all(|&w| w == 0)
    }
}

/// Dimension over GF(2) of the span of all shifts of all inputs.
pub fn span_dimension(seqs: &[BitSeq]) -> usize {
    ShiftSpan::new(seqs).dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mseq_gf8() {
        let ctx = FieldCtx::new(3, Some(0b1011)).unwrap();
        let s = mseq(&ctx);
        // Oracle: Tr(pi^-i) evaluated directly, pi^-1 = x^6 = x^2 + 1.
        let direct: Vec<u8> = (0..7)
            .map(|i| {
                let x = ctx.pow(ctx.pi(), -(i as i64)).unwrap();
                let t = x + ctx.square(x) + ctx.pow(x, 4).unwrap();
                t.0 as u8
            })
            .collect();
        assert_eq!(s.to_bits(), direct);
        assert_eq!(s.len(), 7);
        assert_eq!(s.weight(), 4);
        assert!(is_mlseq(&s));
    }

    #[test]
    fn mseq_balanced() {
        for m in 3..=10 {
            let ctx = FieldCtx::new(m, None).unwrap();
            let s = mseq(&ctx);
            assert_eq!(s.weight(), 1 << (m - 1));
            assert!(is_mlseq(&s));
            assert_eq!(span_dimension(&[s]), m as usize);
        }
    }

    #[test]
    fn zero_and_short_sequences_are_not_mlseq() {
        assert!(!is_mlseq(&BitSeq::zeros(31)));
        assert!(!is_mlseq(&BitSeq::zeros(30)));
        let ctx = FieldCtx::new(5, None).unwrap();
        // Decimation by 3 of an m-sequence of period 15 (gcd 3) is not maximal.
        let ctx4 = FieldCtx::new(4, None).unwrap();
        assert!(!is_mlseq(&decimate(&mseq(&ctx4), 3)));
        assert!(is_mlseq(&decimate(&mseq(&ctx), 3)));
    }

    #[test]
    fn decimation_and_shift_laws() {
        let ctx = FieldCtx::new(5, None).unwrap();
        let s = mseq(&ctx);
        assert_eq!(decimate(&s, 1), s);
        assert_eq!(decimate(&s, 32), s);
        assert_eq!(linear_complexity(&decimate(&s, 3)), 5);
        assert_eq!(shift(&s, 0), s);
        assert_eq!(shift(&s, 31), s);
        assert_eq!(shift(&shift(&s, 7), 11), shift(&s, 18));
        assert_eq!(shift(&s, -1), shift(&s, 30));
        // Decimation by a unit permutes positions.
        assert_eq!(decimate(&s, 9).weight(), s.weight());
    }

    #[test]
    fn berlekamp_massey_known() {
        // Fibonacci-like s_i = s_{i-1} + s_{i-3}: x^3 + x^2 + 1 connection.
        let mut bits = vec![1u8, 0, 0];
        for i in 3..20 {
            let v = bits[i - 1] ^ bits[i - 3];
            bits.push(v);
        }
        let (l, c) = berlekamp_massey(&bits);
        assert_eq!(l, 3);
        assert_eq!(c, vec![1, 1, 0, 1]);
        assert_eq!(berlekamp_massey(&[0, 0, 0, 0]).0, 0);
    }

    #[test]
    fn span_dimension_examples() {
        assert_eq!(span_dimension(&[]), 0);
        let ctx = FieldCtx::new(5, None).unwrap();
        let s = mseq(&ctx);
        let s1 = decimate(&s, 3);
        assert_eq!(span_dimension(&[s.clone(), s1.clone()]), 10);
        assert_eq!(span_dimension(&[s.clone(), s1, decimate(&s, 5)]), 15);
    }

    #[test]
    fn hex_round_trip() {
        let ctx = FieldCtx::new(5, None).unwrap();
        let s = mseq(&ctx);
        let h = s.to_hex();
        assert_eq!(h.len(), 8);
        assert_eq!(BitSeq::from_hex(&h, 31), Some(s));
        assert_eq!(BitSeq::from_bits(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).to_hex(), "0102");
        assert_eq!(BitSeq::from_hex("ff", 7), None);
    }
}
