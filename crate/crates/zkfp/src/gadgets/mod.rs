//! Circuit gadgets: booleans and selection, bounded-integer operations, and
//! IEEE 754 floating-point emulation.

pub mod float;
mod hints;
pub mod int;

use crate::cs::{ConstraintSystem, Lc, Variable};
use crate::field::Fr;
use crate::Error;

pub(crate) fn register_standard_hints(cs: &mut ConstraintSystem) {
    cs.register_hint("bits", None, hints::bits);
    cs.register_hint("chunks", None, hints::chunks);
    cs.register_hint("gez", Some(1), hints::gez);
    cs.register_hint("pow2", Some(1), hints::pow2);
    cs.register_hint("divrem", Some(2), hints::divrem);
    cs.register_hint("inv", Some(1), hints::inv);
    cs.register_hint("split", Some(4), hints::split);
    cs.register_hint("msb", Some(1), hints::msb);
    cs.register_hint("lsb", Some(1), hints::lsb);
    cs.register_hint("int_sqrt", Some(1), hints::int_sqrt);
    cs.register_hint("norm_shift", Some(1), hints::norm_shift);
}

/// A wire known to carry 0 or 1. Booleans are constrained once, where they
/// are created, and carried by type from then on.
#[derive(Clone, Debug)]
pub struct Bool(Lc);

impl Bool {
    pub fn constant(b: bool) -> Bool {
        Bool(if b { Lc::one() } else { Lc::zero() })
    }

    pub fn lc(&self) -> &Lc {
        &self.0
    }

    /// Wraps a wire that is already boolean-constrained elsewhere.
    pub fn from_constrained(lc: Lc) -> Bool {
        Bool(lc)
    }

    pub fn not(&self) -> Bool {
        Bool(Lc::one() - &self.0)
    }

    pub fn value(&self, cs: &ConstraintSystem) -> bool {
        !cs.eval(&self.0).is_zero()
    }
}

/// Constrains lc * (lc - 1) = 0 and returns it as a boolean.
pub fn assert_bool(cs: &mut ConstraintSystem, lc: Lc) -> Result<Bool, Error> {
    cs.enforce(lc.clone(), lc.clone() - &Lc::one(), Lc::zero())?;
    Ok(Bool(lc))
}

pub fn assert_bool_var(cs: &mut ConstraintSystem, v: Variable) -> Result<Bool, Error> {
    assert_bool(cs, Lc::from_var(v))
}

pub fn and(cs: &mut ConstraintSystem, a: &Bool, b: &Bool) -> Result<Bool, Error> {
    Ok(Bool(cs.mul(&a.0, &b.0)?))
}

pub fn or(cs: &mut ConstraintSystem, a: &Bool, b: &Bool) -> Result<Bool, Error> {
    // a + b - ab
    let ab = cs.mul(&a.0, &b.0)?;
    Ok(Bool(cs.reduce_lc(a.0.clone() + &b.0 - &ab)?))
}

pub fn xor(cs: &mut ConstraintSystem, a: &Bool, b: &Bool) -> Result<Bool, Error> {
    // a + b - 2ab
    let ab = cs.mul(&a.0, &b.0)?;
    Ok(Bool(cs.reduce_lc(
        a.0.clone() + &b.0 - &ab.scale(Fr::from_u64(2)),
    )?))
}

/// cond ? t : f, as f + cond * (t - f). Wide results are rebound so
/// selection chains stay cheap.
pub fn select(cs: &mut ConstraintSystem, cond: &Bool, t: &Lc, f: &Lc) -> Result<Lc, Error> {
    let diff = t.clone() - f;
    let picked = cs.mul(&cond.0, &diff)?;
    cs.reduce_lc(f.clone() + &picked)
}

pub fn select_bool(cs: &mut ConstraintSystem, cond: &Bool, t: &Bool, f: &Bool) -> Result<Bool, Error> {
    Ok(Bool(select(cs, cond, &t.0, &f.0)?))
}

/// Inverse-advice zero test: two constraints, sound for any advice.
pub fn is_zero(cs: &mut ConstraintSystem, x: &Lc) -> Result<Bool, Error> {
    let inv = cs.add_hint("inv", std::slice::from_ref(x), 1)?[0];
    // x * inv = 1 - b  and  x * b = 0
    let b_val = if cs.eval(x).is_zero() { Fr::ONE } else { Fr::ZERO };
    let b = cs.alloc_witness(b_val);
    cs.enforce(
        x.clone(),
        Lc::from_var(inv),
        Lc::one() - &Lc::from_var(b),
    )?;
    cs.enforce(x.clone(), Lc::from_var(b), Lc::zero())?;
    Ok(Bool(Lc::from_var(b)))
}

pub fn is_eq(cs: &mut ConstraintSystem, x: &Lc, y: &Lc) -> Result<Bool, Error> {
    let diff = x.clone() - y;
    is_zero(cs, &diff)
}
