//! Bounded-integer gadgets over the prime field: range checks, sign and
//! absolute value, max/min, powers of two, and shifts.
//!
//! Signedness follows the usual convention: {1, ..., (p-1)/2} is positive,
//! {(p+1)/2, ..., p-1} negative, and 0 counts as non-negative.

use crate::cs::{ConstraintSystem, Lc, Mode};
use crate::field::Fr;
use crate::gadgets::{assert_bool_var, select, Bool};
use crate::lookup::TableId;
use crate::Error;

/// Lookup-table handles shared by the integer and float gadgets.
#[derive(Clone, Copy, Debug)]
pub struct Tables {
    /// Single-column table {0, ..., 2^chunk_bits - 1}.
    pub rc: TableId,
    /// Two-column table {(i, 2^i) : i in [0, pow2_max]}.
    pub pow2: TableId,
    pub chunk_bits: u32,
    pub pow2_max: u32,
}

/// Registers the range-check and power-of-two tables. Table contents for a
/// given configuration are built once and shared between systems.
pub fn install_tables(cs: &mut ConstraintSystem, chunk_bits: u32, pow2_max: u32) -> Tables {
    use crate::lookup::TableSpec;
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};

    assert!(chunk_bits >= 1 && chunk_bits <= 20, "unreasonable chunk size");
    type SpecCache = Mutex<HashMap<(u32, u32), (Arc<TableSpec>, Arc<TableSpec>)>>;
    static CACHE: OnceLock<SpecCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let (rc_spec, pow2_spec) = cache
        .lock()
        .unwrap()
        .entry((chunk_bits, pow2_max))
        .or_insert_with(|| {
            let rc_entries: Vec<Vec<Fr>> = (0u64..1 << chunk_bits)
                .map(|v| vec![Fr::from_u64(v)])
                .collect();
            let mut pow = Fr::ONE;
            let mut pow2_entries = Vec::with_capacity(pow2_max as usize + 1);
            for i in 0..=pow2_max {
                pow2_entries.push(vec![Fr::from_u64(i as u64), pow]);
                pow = pow.double();
            }
            (
                Arc::new(TableSpec::new("rc".into(), 1, rc_entries)),
                Arc::new(TableSpec::new("pow2".into(), 2, pow2_entries)),
            )
        })
        .clone();
    let rc = cs.new_shared_table(rc_spec);
    let pow2 = cs.new_shared_table(pow2_spec);
    Tables {
        rc,
        pow2,
        chunk_bits,
        pow2_max,
    }
}

/// 2^k as a field constant, from a lazily built table.
pub fn pow2_const(k: u32) -> Fr {
    use std::sync::OnceLock;
    static POWERS: OnceLock<Vec<Fr>> = OnceLock::new();
    let table = POWERS.get_or_init(|| {
        let mut v = Vec::with_capacity(256);
        let mut acc = Fr::ONE;
        for _ in 0..256 {
            v.push(acc);
            acc = acc.double();
        }
        v
    });
    table[k as usize]
}

fn check_width(bits: u32) -> Result<(), Error> {
    // keep everything well under (p-1)/2 so the signed sets stay disjoint
    if bits > 250 {
        return Err(Error::BitWidthTooLarge { bits });
    }
    Ok(())
}

/// Constrains v to [0, 2^bits) by decomposing into chunks and querying each
/// against the range table. A trailing partial chunk of `bits % chunk_bits`
/// bits is narrowed by querying it scaled up to a full chunk.
pub fn range_check(cs: &mut ConstraintSystem, t: &Tables, v: &Lc, bits: u32) -> Result<(), Error> {
    check_width(bits)?;
    if bits == 0 {
        return cs.enforce_zero(v.clone());
    }
    let tbits = t.chunk_bits;
    let n_chunks = bits.div_ceil(tbits) as usize;
    let chunk_vars = cs.add_hint(
        "chunks",
        &[
            v.clone(),
            Lc::constant(Fr::from_u64(bits as u64)),
            Lc::constant(Fr::from_u64(tbits as u64)),
        ],
        n_chunks,
    )?;
    let mut recompose = Lc::zero();
    for (i, chunk) in chunk_vars.iter().enumerate() {
        let lc = Lc::from_var(*chunk);
        let last = i == n_chunks - 1;
        let rem = bits % tbits;
        if last && rem != 0 {
            cs.lookup_query(t.rc, &[lc.scale(pow2_const(tbits - rem))])?;
        } else {
            cs.lookup_query(t.rc, &[lc])?;
        }
        recompose.add_assign_scaled(&Lc::from_var(*chunk), pow2_const(i as u32 * tbits));
    }
    cs.enforce_zero(recompose - v)
}

/// Plain bit-decomposition range check: bits + 1 constraints, no lookups.
pub fn range_check_bits(
    cs: &mut ConstraintSystem,
    v: &Lc,
    bits: u32,
) -> Result<Vec<Bool>, Error> {
    check_width(bits)?;
    let bit_vars = cs.add_hint(
        "bits",
        &[v.clone(), Lc::constant(Fr::from_u64(bits as u64))],
        bits as usize,
    )?;
    let mut out = Vec::with_capacity(bits as usize);
    let mut recompose = Lc::zero();
    for (i, bv) in bit_vars.iter().enumerate() {
        out.push(assert_bool_var(cs, *bv)?);
        recompose.add_assign_scaled(&Lc::from_var(*bv), pow2_const(i as u32));
    }
    cs.enforce_zero(recompose - v)?;
    Ok(out)
}

/// Extracts the sign and |v| of a signed value with |v| < 2^bits. The
/// advice picks the sign; a wrong pick lands |v| in the negative half and
/// the range check rejects it. sign(0) is fixed to non-negative.
pub fn abs_sign(
    cs: &mut ConstraintSystem,
    t: &Tables,
    v: &Lc,
    bits: u32,
) -> Result<(Bool, Lc), Error> {
    let gez_var = cs.add_hint("gez", std::slice::from_ref(v), 1)?[0];
    let gez = assert_bool_var(cs, gez_var)?;
    // abs = (2*gez - 1) * v
    let sign_factor = gez.lc().scale(Fr::from_u64(2)) - &Lc::one();
    let abs = cs.mul(&sign_factor, v)?;
    range_check(cs, t, &abs, bits)?;
    Ok((gez, abs))
}

/// Sign bit alone.
pub fn is_ge_zero(cs: &mut ConstraintSystem, t: &Tables, v: &Lc, bits: u32) -> Result<Bool, Error> {
    Ok(abs_sign(cs, t, v, bits)?.0)
}

/// max(x, y) where |x - y| < 2^bits.
pub fn max(cs: &mut ConstraintSystem, t: &Tables, x: &Lc, y: &Lc, bits: u32) -> Result<Lc, Error> {
    let diff = x.clone() - y;
    let (gez, _) = abs_sign(cs, t, &diff, bits)?;
    select(cs, &gez, x, y)
}

/// min(x, y) where |x - y| < 2^bits.
pub fn min(cs: &mut ConstraintSystem, t: &Tables, x: &Lc, y: &Lc, bits: u32) -> Result<Lc, Error> {
    let diff = x.clone() - y;
    let (gez, _) = abs_sign(cs, t, &diff, bits)?;
    select(cs, &gez, y, x)
}

/// 2^d for a variable exponent, via one two-column table query.
pub fn pow2(cs: &mut ConstraintSystem, t: &Tables, d: &Lc) -> Result<Lc, Error> {
    let r = cs.add_hint("pow2", std::slice::from_ref(d), 1)?[0];
    cs.lookup_query(t.pow2, &[d.clone(), Lc::from_var(r)])?;
    Ok(Lc::from_var(r))
}

/// v << d = v * 2^d. Grows the bound from `v_bits` to `v_bits + d`.
pub fn shl(cs: &mut ConstraintSystem, t: &Tables, v: &Lc, d: &Lc) -> Result<Lc, Error> {
    let p = pow2(cs, t, d)?;
    cs.mul(v, &p)
}

/// floor(v / 2^d) for v < 2^v_bits and d in [0, d_max], via the pre-shift
/// trick: v' = v << (d_max - d) is divided by the constant 2^d_max, and the
/// quotient/remainder advice is checked with two constant-width range
/// checks plus the recomposition identity.
pub fn shr(
    cs: &mut ConstraintSystem,
    t: &Tables,
    v: &Lc,
    d: &Lc,
    v_bits: u32,
    d_max: u32,
) -> Result<Lc, Error> {
    check_width(v_bits + d_max)?;
    let kd = Lc::constant(Fr::from_u64(d_max as u64)) - d;
    let shifted = shl(cs, t, v, &kd)?;
    let divisor = pow2_const(d_max);
    let qr = cs.add_hint("divrem", &[shifted.clone(), Lc::constant(divisor)], 2)?;
    let q = Lc::from_var(qr[0]);
    let r = Lc::from_var(qr[1]);
    range_check(cs, t, &q, v_bits)?;
    range_check(cs, t, &r, d_max)?;
    cs.enforce_zero(q.scale(divisor) + &r - &shifted)?;
    Ok(q)
}

/// Constrains v to equal one of 0/1 times 2^bits... helper for tests: the
/// number of rc-table queries a width-`bits` check issues.
pub fn rc_queries_for(bits: u32, chunk_bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        bits.div_ceil(chunk_bits) as usize
    }
}

/// Convenience: builds a throwaway system in the given mode with default
/// FP64-sized tables. Used heavily by tests.
pub fn test_system(mode: Mode) -> (ConstraintSystem, Tables) {
    let mut cs = ConstraintSystem::new(mode);
    let t = install_tables(&mut cs, 8, 64);
    (cs, t)
}
