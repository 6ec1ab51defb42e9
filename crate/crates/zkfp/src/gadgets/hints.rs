//! Out-of-circuit advice functions. Each one is paired with an in-circuit
//! predicate in the gadget that requests it; none of these outputs is
//! trusted until that predicate holds.
//!
//! All functions are garbage-tolerant: fed adversarial or dummy inputs they
//! return something well-formed instead of panicking, and the predicate
//! does the rejecting.

use crate::field::Fr;

/// Canonical limbs widened to 8 so shifted intermediates (< 2^320) fit.
fn to_wide(v: &Fr) -> [u64; 8] {
    let c = v.to_canonical();
    let mut w = [0u64; 8];
    w[..4].copy_from_slice(&c);
    w
}

fn wide_shl(mut w: [u64; 8], k: u32) -> [u64; 8] {
    let limb_shift = (k / 64) as usize;
    let bit_shift = k % 64;
    if limb_shift > 0 {
        for i in (0..8).rev() {
            w[i] = if i >= limb_shift { w[i - limb_shift] } else { 0 };
        }
    }
    if bit_shift > 0 {
        let mut carry = 0u64;
        for limb in w.iter_mut() {
            let new_carry = *limb >> (64 - bit_shift);
            *limb = (*limb << bit_shift) | carry;
            carry = new_carry;
        }
    }
    w
}

/// Bits [lo, lo+len) of a wide value as a field element; len <= 128.
fn wide_extract(w: &[u64; 8], lo: u32, len: u32) -> Fr {
    if len == 0 {
        return Fr::ZERO;
    }
    let mut out = 0u128;
    for bit in 0..len {
        let pos = (lo + bit) as usize;
        let limb = pos / 64;
        if limb < 8 && (w[limb] >> (pos % 64)) & 1 == 1 {
            out |= 1u128 << bit;
        }
    }
    Fr::from_u128(out)
}

fn bit_at(w: &[u64; 8], pos: u32) -> u64 {
    let limb = (pos / 64) as usize;
    if limb >= 8 {
        return 0;
    }
    (w[limb] >> (pos % 64)) & 1
}

fn wide_bit_len(w: &[u64; 8]) -> u32 {
    for i in (0..8).rev() {
        if w[i] != 0 {
            return 64 * i as u32 + (64 - w[i].leading_zeros());
        }
    }
    0
}

/// `[v, bits]` -> the `bits` binary digits of v, LSB first.
pub fn bits(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let v = to_wide(&args[0]);
    let n = args[1].to_u64().unwrap_or(0) as u32;
    Ok((0..n).map(|i| Fr::from_u64(bit_at(&v, i))).collect())
}

/// `[v, bits, chunk_bits]` -> ceil(bits/chunk_bits) chunks, low chunk first.
pub fn chunks(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let v = to_wide(&args[0]);
    let bits = args[1].to_u64().unwrap_or(0) as u32;
    let t = args[2].to_u64().unwrap_or(1).max(1) as u32;
    let n = bits.div_ceil(t);
    Ok((0..n)
        .map(|i| wide_extract(&v, i * t, t.min(128)))
        .collect())
}

/// `[v]` -> 1 if v is in the non-negative half of the field (0 included).
pub fn gez(args: &[Fr]) -> Result<Vec<Fr>, String> {
    Ok(vec![if args[0].is_negative() {
        Fr::ZERO
    } else {
        Fr::ONE
    }])
}

/// `[d]` -> 2^d, exponent clamped so hostile inputs stay cheap.
pub fn pow2(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let d = args[0].to_u64().unwrap_or(1 << 20).min(1 << 10);
    let mut acc = Fr::ONE;
    let two = Fr::from_u64(2);
    for _ in 0..d {
        acc *= two;
    }
    Ok(vec![acc])
}

/// `[a, b]` -> [floor(a/b), a mod b] over the integers; b = 0 gives [0, 0].
pub fn divrem(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let a = args[0].to_u128_lossy();
    let b = args[1].to_u128_lossy();
    if b == 0 {
        return Ok(vec![Fr::ZERO, Fr::ZERO]);
    }
    Ok(vec![Fr::from_u128(a / b), Fr::from_u128(a % b)])
}

/// `[x]` -> multiplicative inverse, or 0 for 0.
pub fn inv(args: &[Fr]) -> Result<Vec<Fr>, String> {
    Ok(vec![args[0].inverse()])
}

/// `[m, shift, v_bits]` -> the split of m << shift into [u', b1, b2, v']
/// where v' is the low `v_bits` bits, b2 and b1 the next two, and u' the
/// rest.
pub fn split(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let shift = args[1].to_u64().unwrap_or(0).min(256) as u32;
    let v_bits = args[2].to_u64().unwrap_or(0).min(128) as u32;
    let s = wide_shl(to_wide(&args[0]), shift);
    let v = wide_extract(&s, 0, v_bits);
    let b2 = Fr::from_u64(bit_at(&s, v_bits));
    let b1 = Fr::from_u64(bit_at(&s, v_bits + 1));
    let u = wide_extract(&s, v_bits + 2, 128.min(320 - v_bits - 2));
    Ok(vec![u, b1, b2, v])
}

/// `[m, pos]` -> the bit of m at position pos.
pub fn msb(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let pos = args[1].to_u64().unwrap_or(0).min(511) as u32;
    Ok(vec![Fr::from_u64(bit_at(&to_wide(&args[0]), pos))])
}

/// `[e]` -> parity of e under the signed interpretation.
pub fn lsb(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let parity = match args[0].to_i128() {
        Some(v) => (v.rem_euclid(2)) as u64,
        None => 0,
    };
    Ok(vec![Fr::from_u64(parity)])
}

/// `[a]` -> floor(sqrt(a)) for a < 2^128.
pub fn int_sqrt(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let a = args[0].to_u128_lossy();
    if a == 0 {
        return Ok(vec![Fr::ZERO]);
    }
    let mut x = (a as f64).sqrt() as u128 + 2;
    loop {
        let next = (x + a / x) / 2;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.checked_mul(x).map(|s| s > a).unwrap_or(true) {
        x -= 1;
    }
    Ok(vec![Fr::from_u128(x)])
}

/// `[m, target_pos]` -> left shift d that puts m's leading bit at
/// target_pos; 0 when m = 0 or m is already too wide.
pub fn norm_shift(args: &[Fr]) -> Result<Vec<Fr>, String> {
    let w = to_wide(&args[0]);
    let target = args[1].to_u64().unwrap_or(0) as u32;
    let len = wide_bit_len(&w);
    let d = if len == 0 {
        0
    } else {
        (target + 1).saturating_sub(len)
    };
    Ok(vec![Fr::from_u64(d as u64)])
}
