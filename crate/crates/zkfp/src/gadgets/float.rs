//! IEEE 754 floating-point emulation over the constraint system, bit-exact
//! against hardware binary32/binary64 under round-to-nearest-even.
//!
//! In-circuit floats are kept in a circuit-efficient form (s, e, m, a):
//! the exponent is unbiased, the mantissa carries an explicit leading bit,
//! subnormals are normalized by left-shifting with an underflown exponent,
//! and a single abnormal flag marks infinities and NaN. All NaNs are
//! canonicalized to (s=0, e=2^(E-1), m=0, a=1).
//!
//! Encodings:
//!   normal / normalized subnormal:  m in [2^M, 2^(M+1)), a = 0
//!   +-0:   e = -2^(E-1)+1-M, m = 0, a = 0
//!   +-inf: e = 2^(E-1),      m = 2^M, a = 1
//!   NaN:   e = 2^(E-1),      m = 0,  a = 1, s = 0

use crate::cs::{ConstraintSystem, Lc, Variable};
use crate::field::Fr;
use crate::gadgets::int::{self, pow2_const, Tables};
use crate::gadgets::{and, assert_bool, is_eq, is_zero, or, select, select_bool, xor, Bool};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloatParams {
    pub exp_bits: u32,
    pub man_bits: u32,
}

impl FloatParams {
    pub const FP32: FloatParams = FloatParams {
        exp_bits: 8,
        man_bits: 23,
    };
    pub const FP64: FloatParams = FloatParams {
        exp_bits: 11,
        man_bits: 52,
    };

    pub fn total_bits(&self) -> u32 {
        1 + self.exp_bits + self.man_bits
    }

    /// Exponent of the abnormal encodings, 2^(E-1).
    pub fn emax(&self) -> i64 {
        1 << (self.exp_bits - 1)
    }

    /// Smallest normal exponent, -2^(E-1)+2.
    pub fn emin(&self) -> i64 {
        -(1 << (self.exp_bits - 1)) + 2
    }

    /// Exponent of the zero encoding, -2^(E-1)+1-M.
    pub fn ezero(&self) -> i64 {
        -(1 << (self.exp_bits - 1)) + 1 - self.man_bits as i64
    }

    pub fn bias(&self) -> i64 {
        (1 << (self.exp_bits - 1)) - 1
    }

    /// Splits raw IEEE bits into (sign, biased exponent, mantissa field).
    pub fn decode(&self, bits: u64) -> (u64, u64, u64) {
        let m = bits & ((1u64 << self.man_bits) - 1);
        let e = (bits >> self.man_bits) & ((1u64 << self.exp_bits) - 1);
        let s = (bits >> (self.man_bits + self.exp_bits)) & 1;
        (s, e, m)
    }

    pub fn encode(&self, s: u64, e: u64, m: u64) -> u64 {
        (s << (self.man_bits + self.exp_bits)) | (e << self.man_bits) | m
    }

    /// The canonical quiet-NaN bit pattern used when re-encoding.
    pub fn canonical_nan(&self) -> u64 {
        let e = (1u64 << self.exp_bits) - 1;
        let m = 1u64 << (self.man_bits - 1);
        self.encode(0, e, m)
    }
}

/// An in-circuit float in the (s, e, m, a) form.
#[derive(Clone, Debug)]
pub struct FloatVar {
    pub sign: Bool,
    pub exp: Lc,
    pub man: Lc,
    pub abn: Bool,
}

fn iconst(v: i64) -> Lc {
    Lc::constant(Fr::from_i64(v))
}

/// Builder handle bundling the constraint system, lookup tables and float
/// format used by every float gadget.
pub struct FloatCtx<'a> {
    pub cs: &'a mut ConstraintSystem,
    pub tables: Tables,
    pub params: FloatParams,
}

impl<'a> FloatCtx<'a> {
    pub fn new(cs: &'a mut ConstraintSystem, tables: Tables, params: FloatParams) -> Self {
        FloatCtx { cs, tables, params }
    }

    fn e_bits(&self) -> u32 {
        self.params.exp_bits
    }

    fn m_bits(&self) -> u32 {
        self.params.man_bits
    }

    /// Shape-checks raw (sign, biased exponent, mantissa) wires and converts
    /// them to the circuit-efficient form, normalizing subnormals and
    /// canonicalizing NaNs.
    pub fn new_float(&mut self, s_raw: Lc, e_raw: Lc, m_raw: Lc) -> Result<FloatVar, Error> {
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let p = self.params;
        let cs = &mut *self.cs;
        let t = self.tables;

        let s = assert_bool(cs, s_raw)?;
        int::range_check(cs, &t, &e_raw, e_bits)?;
        int::range_check(cs, &t, &m_raw, m_bits)?;

        let e_is_0 = is_zero(cs, &e_raw)?;
        let e_max_diff = e_raw.clone() - &iconst((1i64 << e_bits) - 1);
        let e_is_max = is_zero(cs, &e_max_diff)?;
        let m_is_0 = is_zero(cs, &m_raw)?;

        // normalization shift for subnormals; unconstrained (and unused)
        // on the normal path
        let d = Lc::from_var(
            cs.add_hint(
                "norm_shift",
                &[m_raw.clone(), iconst(m_bits as i64)],
                1,
            )?[0],
        );
        let shifted = int::shl(cs, &t, &m_raw, &d)?;
        // subnormal check: m = 0 or (m << d) in [2^M, 2^(M+1))
        let lead = select(cs, &m_is_0, &Lc::zero(), &iconst(1 << m_bits))?;
        let norm_val = shifted.clone() - &lead;
        let gated = cs.mul(e_is_0.lc(), &norm_val)?;
        int::range_check(cs, &t, &gated, m_bits)?;

        // mantissa
        let m_norm = m_raw.clone() + &iconst(1 << m_bits);
        let m_finite = select(cs, &e_is_0, &shifted, &m_norm)?;
        let m_abn = select(cs, &m_is_0, &iconst(1 << m_bits), &Lc::zero())?;
        let man = select(cs, &e_is_max, &m_abn, &m_finite)?;

        // exponent
        let e_norm = e_raw.clone() - &iconst(p.bias());
        let e_subn = iconst(p.emin()) - &d;
        let e_subn_or_zero = select(cs, &m_is_0, &iconst(p.ezero()), &e_subn)?;
        let e_finite = select(cs, &e_is_0, &e_subn_or_zero, &e_norm)?;
        let exp = select(cs, &e_is_max, &iconst(p.emax()), &e_finite)?;

        // canonical NaN keeps sign 0
        let is_nan = and(cs, &e_is_max, &m_is_0.not())?;
        let sign = select_bool(cs, &is_nan, &Bool::constant(false), &s)?;

        Ok(FloatVar {
            sign,
            exp,
            man,
            abn: e_is_max,
        })
    }

    /// Allocates the components of `bits` as private witnesses and runs the
    /// checked conversion.
    pub fn alloc_input(&mut self, bits: u64) -> Result<FloatVar, Error> {
        let (s, e, m) = self.params.decode(bits);
        let sv = self.cs.alloc_witness(Fr::from_u64(s));
        let ev = self.cs.alloc_witness(Fr::from_u64(e));
        let mv = self.cs.alloc_witness(Fr::from_u64(m));
        self.new_float(Lc::from_var(sv), Lc::from_var(ev), Lc::from_var(mv))
    }

    /// A compile-time float constant: no witnesses, no constraints.
    pub fn constant(&mut self, bits: u64) -> FloatVar {
        let p = self.params;
        let (s, e, m) = p.decode(bits);
        let e_field_max = (1u64 << p.exp_bits) - 1;
        let (sign, exp, man, abn) = if e == e_field_max {
            if m == 0 {
                (s == 1, p.emax(), 1i64 << p.man_bits, true)
            } else {
                (false, p.emax(), 0, true)
            }
        } else if e == 0 {
            if m == 0 {
                (s == 1, p.ezero(), 0, false)
            } else {
                let shift = p.man_bits - (63 - m.leading_zeros());
                (
                    s == 1,
                    p.emin() - shift as i64,
                    (m << shift) as i64,
                    false,
                )
            }
        } else {
            (
                s == 1,
                e as i64 - p.bias(),
                (m | (1 << p.man_bits)) as i64,
                false,
            )
        };
        FloatVar {
            sign: Bool::constant(sign),
            exp: iconst(exp),
            man: iconst(man),
            abn: Bool::constant(abn),
        }
    }

    /// Exact conversion of a small non-negative integer wire (v < 2^bits,
    /// bits <= M) into a float.
    pub fn int_to_float(&mut self, v: &Lc, bits: u32) -> Result<FloatVar, Error> {
        assert!(bits <= self.m_bits());
        let m_bits = self.m_bits();
        let ezero = self.params.ezero();
        let t = self.tables;
        let cs = &mut *self.cs;
        int::range_check(cs, &t, v, bits)?;
        let v0 = is_zero(cs, v)?;
        let d = Lc::from_var(
            cs.add_hint("norm_shift", &[v.clone(), iconst(m_bits as i64)], 1)?[0],
        );
        let shifted = int::shl(cs, &t, v, &d)?;
        let lead = cs.mul(v0.not().lc(), &iconst(1 << m_bits))?;
        int::range_check(cs, &t, &(shifted.clone() - &lead), m_bits)?;
        let exp = select(cs, &v0, &iconst(ezero), &(iconst(m_bits as i64) - &d))?;
        Ok(FloatVar {
            sign: Bool::constant(false),
            exp,
            man: shifted,
            abn: Bool::constant(false),
        })
    }

    /// Round-half-to-even of an N-bit intermediate mantissa whose leading
    /// bit (when non-zero) sits at position N-1. `delta_e` widens the
    /// dropped tail for subnormal results, bounded by `k`; `aux` is the
    /// external sticky-bit contribution (1 when unused). Returns the
    /// updated exponent and an M+1-bit mantissa.
    fn round(
        &mut self,
        e: &Lc,
        m: &Lc,
        n_bits: u32,
        k: u32,
        delta_e: Option<&Lc>,
        aux: &Bool,
    ) -> Result<(Lc, Lc), Error> {
        let m_bits = self.m_bits();
        let wv = n_bits - m_bits - 2 + k;
        let t = self.tables;
        let cs = &mut *self.cs;

        let kd = match delta_e {
            Some(de) => iconst(k as i64) - de,
            None => Lc::zero(),
        };
        let outs = cs.add_hint("split", &[m.clone(), kd, iconst(wv as i64)], 4)?;
        let u_p = Lc::from_var(outs[0]);
        let b1 = assert_bool(cs, Lc::from_var(outs[1]))?;
        let b2 = assert_bool(cs, Lc::from_var(outs[2]))?;
        let v_p = Lc::from_var(outs[3]);

        // loose bound on u' is safe: an oversized u' would make the
        // recomposition wider than m can be
        int::range_check(cs, &t, &u_p, m_bits)?;
        int::range_check(cs, &t, &v_p, wv)?;

        let mut recompose = v_p.clone();
        recompose.add_assign_scaled(b2.lc(), pow2_const(wv));
        recompose.add_assign_scaled(b1.lc(), pow2_const(wv + 1));
        recompose.add_assign_scaled(&u_p, pow2_const(wv + 2));

        let m_shl_k = m.scale(pow2_const(k));
        let pw_de = match delta_e {
            Some(de) => {
                let pw = int::pow2(cs, &t, de)?;
                cs.enforce(recompose.clone(), pw.clone(), m_shl_k)?;
                Some(pw)
            }
            None => {
                cs.enforce_zero(recompose.clone() - &m_shl_k)?;
                None
            }
        };

        // v = b2 || v'; the dropped tail is exactly half when v = 2^wv and
        // nothing else contributes stickiness
        let mut v = v_p.clone();
        v.add_assign_scaled(b2.lc(), pow2_const(wv));
        let v_half = is_eq(cs, &v, &Lc::constant(pow2_const(wv)))?;
        let half = and(cs, &v_half, aux)?;
        let inc = select(cs, &half, b1.lc(), b2.lc())?;

        // u = u' || b1
        let mut u = b1.lc().clone();
        u.add_assign_scaled(&u_p, Fr::from_u64(2));
        let m_pre = u + &inc;
        let m_shifted = match pw_de {
            Some(pw) => cs.mul(&m_pre, &pw)?,
            None => m_pre,
        };

        let overflow = is_eq(cs, &m_shifted, &Lc::constant(pow2_const(m_bits + 1)))?;
        let m_out = select(cs, &overflow, &iconst(1 << m_bits), &m_shifted)?;
        let e_out = e.clone() + overflow.lc();
        Ok((e_out, m_out))
    }

    /// Delta-e for multiplication and division rounding:
    /// max(min(emin - e, K), 0) with K = M+2.
    fn delta_e(&mut self, e: &Lc, k: u32) -> Result<Lc, Error> {
        let emin = self.params.emin();
        let bits = self.e_bits() + 2;
        let t = self.tables;
        let cs = &mut *self.cs;
        let target = iconst(emin) - e;
        let clamped = int::min(cs, &t, &target, &iconst(k as i64), bits)?;
        int::max(cs, &t, &clamped, &Lc::zero(), bits)
    }

    fn signed_mantissa(&mut self, f: &FloatVar) -> Result<Lc, Error> {
        // (1 - 2s) * m
        let factor = Lc::one() - &f.sign.lc().scale(Fr::from_u64(2));
        self.cs.mul(&factor, &f.man)
    }

    pub fn neg(&mut self, f: &FloatVar) -> Result<FloatVar, Error> {
        let cs = &mut *self.cs;
        let m0 = is_zero(cs, &f.man)?;
        let is_nan = and(cs, &f.abn, &m0)?;
        let flipped = Bool::from_constrained(Lc::one() - f.sign.lc());
        let sign = select_bool(cs, &is_nan, &Bool::constant(false), &flipped)?;
        Ok(FloatVar {
            sign,
            exp: f.exp.clone(),
            man: f.man.clone(),
            abn: f.abn.clone(),
        })
    }

    /// Magnitude: clears the sign. NaN is unaffected (its sign is already 0).
    pub fn abs(&mut self, f: &FloatVar) -> Result<FloatVar, Error> {
        Ok(FloatVar {
            sign: Bool::constant(false),
            exp: f.exp.clone(),
            man: f.man.clone(),
            abn: f.abn.clone(),
        })
    }

    pub fn select_float(
        &mut self,
        cond: &Bool,
        t: &FloatVar,
        f: &FloatVar,
    ) -> Result<FloatVar, Error> {
        let cs = &mut *self.cs;
        Ok(FloatVar {
            sign: select_bool(cs, cond, &t.sign, &f.sign)?,
            exp: select(cs, cond, &t.exp, &f.exp)?,
            man: select(cs, cond, &t.man, &f.man)?,
            abn: select_bool(cs, cond, &t.abn, &f.abn)?,
        })
    }

    pub fn add(&mut self, x: &FloatVar, y: &FloatVar) -> Result<FloatVar, Error> {
        self.cs.note_gadget("fadd");
        let p = self.params;
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let n_bits = 2 * m_bits + 5;
        let l = m_bits + 3;
        let t = self.tables;

        // align exponents: pre-shift both mantissas left by L, shift the
        // smaller one right by abs (capped at L, beyond which it cannot
        // influence the sum)
        let sm_x = self.signed_mantissa(x)?;
        let sm_y = self.signed_mantissa(y)?;
        let cs = &mut *self.cs;
        let ediff = y.exp.clone() - &x.exp;
        let (c, abs_raw) = int::abs_sign(cs, &t, &ediff, e_bits + 1)?;
        let e_hi = select(cs, &c, &y.exp, &x.exp)?;
        let abs = int::min(cs, &t, &abs_raw, &iconst(l as i64), e_bits + 1)?;
        let hi = select(cs, &c, &sm_y, &sm_x)?;
        let lo = select(cs, &c, &sm_x, &sm_y)?;
        let xx = hi.scale(pow2_const(l));
        let shift = iconst(l as i64) - &abs;
        let pw = int::pow2(cs, &t, &shift)?;
        let yy = cs.mul(&lo, &pw)?;
        let z = xx + &yy;

        // signed sum -> sign and magnitude
        let (z_gez, m_abs) = int::abs_sign(cs, &t, &z, n_bits)?;
        let s = z_gez.not();
        let e1 = e_hi + &Lc::one();

        // normalize so the leading bit sits at N-1
        let m_is_0 = is_zero(cs, &m_abs)?;
        let d = Lc::from_var(
            cs.add_hint("norm_shift", &[m_abs.clone(), iconst(n_bits as i64 - 1)], 1)?[0],
        );
        let md = int::shl(cs, &t, &m_abs, &d)?;
        let lead = cs.mul(m_is_0.not().lc(), &Lc::constant(pow2_const(n_bits - 1)))?;
        int::range_check(cs, &t, &(md.clone() - &lead), n_bits - 1)?;
        let e2 = e1 - &d;

        // round with delta_e = K = 0: a subnormal sum always carries enough
        // trailing zeros that full-width rounding is exact
        let (e_r, m_r) = self.round(&e2, &md, n_bits, 0, None, &Bool::constant(true))?;

        // edge cases
        let cs = &mut *self.cs;
        let s_eq = is_eq(cs, x.sign.lc(), y.sign.lc())?;
        let a_in = or(cs, &x.abn, &y.abn)?;
        let m_r0 = is_zero(cs, &m_r)?;
        // a fully cancelled sum parks the carry-slot exponent at 2^(E-1);
        // overflow only counts when something survived rounding
        let e_over = e_r.clone() - &iconst(p.emax());
        let over_raw = int::is_ge_zero(cs, &t, &e_over, e_bits + 1)?;
        let inf_over = and(cs, &over_raw, &m_r0.not())?;
        let a_out = or(cs, &a_in, &inf_over)?;
        let s_pre = select_bool(cs, &s_eq, &x.sign, &s)?;
        let e_zero_sel = select(cs, &m_r0, &iconst(p.ezero()), &e_r)?;
        let e_out = select(cs, &a_out, &iconst(p.emax()), &e_zero_sel)?;

        // mantissa: both abnormal -> 2^M only for same-signed infinities;
        // one abnormal -> that operand's mantissa (0 propagates NaN);
        // otherwise the rounded mantissa, or 2^M on overflow
        let both = and(cs, &x.abn, &y.abn)?;
        let prod = cs.mul(&x.man, &y.man)?;
        let scaled = prod.scale(pow2_const(m_bits).inverse());
        let m_both = cs.mul(s_eq.lc(), &scaled)?;
        let m_over = select(cs, &a_out, &iconst(1 << m_bits), &m_r)?;
        let m_y_sel = select(cs, &y.abn, &y.man, &m_over)?;
        let m_x_sel = select(cs, &x.abn, &x.man, &m_y_sel)?;
        let m_out = select(cs, &both, &m_both, &m_x_sel)?;

        let m_out0 = is_zero(cs, &m_out)?;
        let is_nan = and(cs, &a_out, &m_out0)?;
        let s_out = select_bool(cs, &is_nan, &Bool::constant(false), &s_pre)?;

        Ok(FloatVar {
            sign: s_out,
            exp: e_out,
            man: m_out,
            abn: a_out,
        })
    }

    pub fn sub(&mut self, x: &FloatVar, y: &FloatVar) -> Result<FloatVar, Error> {
        self.cs.note_gadget("fsub");
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    pub fn mul(&mut self, x: &FloatVar, y: &FloatVar) -> Result<FloatVar, Error> {
        self.cs.note_gadget("fmul");
        let p = self.params;
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let n_bits = 2 * m_bits + 2;
        let k = m_bits + 2;
        let t = self.tables;
        let cs = &mut *self.cs;

        let s = Bool::from_constrained(xor(cs, &x.sign, &y.sign)?.lc().clone());
        let e = x.exp.clone() + &y.exp;
        let m = cs.mul(&x.man, &y.man)?;
        let a = or(cs, &x.abn, &y.abn)?;

        // one-bit normalization: the product of two leading-bit mantissas
        // has its top bit at 2M or 2M+1
        let b_var = cs.add_hint("msb", &[m.clone(), iconst(2 * m_bits as i64 + 1)], 1)?[0];
        let b = assert_bool(cs, Lc::from_var(b_var))?;
        let mut stripped = m.clone();
        stripped.add_assign_scaled(b.lc(), -pow2_const(2 * m_bits + 1));
        int::range_check(cs, &t, &stripped, 2 * m_bits + 1)?;
        let doubled = m.scale(Fr::from_u64(2));
        let m2 = select(cs, &b, &m, &doubled)?;
        let e2 = e + b.lc();

        let de = self.delta_e(&e2, k)?;
        let (e_r, m_r) = self.round(&e2, &m2, n_bits, k, Some(&de), &Bool::constant(true))?;

        let cs = &mut *self.cs;
        let e_over = e_r.clone() - &iconst(p.emax());
        let inf_over = int::is_ge_zero(cs, &t, &e_over, e_bits + 1)?;
        let a_out = or(cs, &a, &inf_over)?;
        let m_r0 = is_zero(cs, &m_r)?;
        let e_zero_sel = select(cs, &m_r0, &iconst(p.ezero()), &e_r)?;
        let e_out = select(cs, &a_out, &iconst(p.emax()), &e_zero_sel)?;
        let abn_not_nan = and(cs, &a_out, &m_r0.not())?;
        let m_out = select(cs, &abn_not_nan, &iconst(1 << m_bits), &m_r)?;
        let is_nan = and(cs, &a_out, &m_r0)?;
        let s_out = select_bool(cs, &is_nan, &Bool::constant(false), &s)?;

        Ok(FloatVar {
            sign: s_out,
            exp: e_out,
            man: m_out,
            abn: a_out,
        })
    }

    pub fn div(&mut self, x: &FloatVar, y: &FloatVar) -> Result<FloatVar, Error> {
        self.cs.note_gadget("fdiv");
        let p = self.params;
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let n_bits = m_bits + 3;
        let k = m_bits + 2;
        let t = self.tables;
        let cs = &mut *self.cs;

        let s = Bool::from_constrained(xor(cs, &x.sign, &y.sign)?.lc().clone());
        let e = x.exp.clone() - &y.exp;
        let m_y0 = is_zero(cs, &y.man)?;
        let a = or(cs, &x.abn, &m_y0)?;

        // a zero divisor (+-0 or NaN) is replaced by a placeholder so the
        // division advice stays well-defined; the edge logic overrides the
        // quotient anyway
        let divisor = select(cs, &m_y0, &iconst(1 << m_bits), &y.man)?;
        let scaled_x = x.man.scale(pow2_const(m_bits + 2));
        let qr = cs.add_hint("divrem", &[scaled_x.clone(), divisor.clone()], 2)?;
        let q = Lc::from_var(qr[0]);
        let r = Lc::from_var(qr[1]);
        // r in [0, divisor) as two constant-width checks
        int::range_check(cs, &t, &r, m_bits + 1)?;
        let gap = divisor.clone() - &Lc::one() - &r;
        int::range_check(cs, &t, &gap, m_bits + 1)?;
        cs.enforce(q.clone(), divisor, scaled_x - &r)?;

        // one-bit normalization with borrow; also narrows q to M+3 bits
        let b_var = cs.add_hint("msb", &[q.clone(), iconst(m_bits as i64 + 2)], 1)?[0];
        let b = assert_bool(cs, Lc::from_var(b_var))?;
        let mut stripped = q.clone();
        stripped.add_assign_scaled(b.lc(), -pow2_const(m_bits + 2));
        int::range_check(cs, &t, &stripped, m_bits + 2)?;
        let doubled = q.scale(Fr::from_u64(2));
        let m2 = select(cs, &b, &q, &doubled)?;
        let e2 = e - &Lc::one() + b.lc();

        let aux = is_zero(cs, &r)?;
        let de = self.delta_e(&e2, k)?;
        let (e_r, m_r) = self.round(&e2, &m2, n_bits, k, Some(&de), &aux)?;

        let cs = &mut *self.cs;
        let e_over = e_r.clone() - &iconst(p.emax());
        let inf_over = int::is_ge_zero(cs, &t, &e_over, e_bits + 1)?;
        let a_out = or(cs, &a, &inf_over)?;
        let m_r0 = is_zero(cs, &m_r)?;

        // NaN quotients: NaN operands, 0/0, inf/inf
        let m_x0 = is_zero(cs, &x.man)?;
        let y_nan_or_zero = or(cs, &y.abn, &m_x0)?;
        let nan_cond = and(cs, &a, &y_nan_or_zero)?;

        // a finite (or zero) dividend over an infinity collapses to +-0;
        // the quotient mantissa from the placeholder path is meaningless
        let y_inf = and(cs, &y.abn, &m_y0.not())?;
        let zero_out = and(cs, &y_inf, &x.abn.not())?;
        let force_zero = or(cs, &m_r0, &zero_out)?;

        let e_zero_sel = select(cs, &force_zero, &iconst(p.ezero()), &e_r)?;
        let e_out = select(cs, &a_out, &iconst(p.emax()), &e_zero_sel)?;
        let m_abn = select(cs, &nan_cond, &Lc::zero(), &iconst(1 << m_bits))?;
        let m_fin = select(cs, &zero_out, &Lc::zero(), &m_r)?;
        let m_out = select(cs, &a_out, &m_abn, &m_fin)?;
        let s_out = select_bool(cs, &nan_cond, &Bool::constant(false), &s)?;

        Ok(FloatVar {
            sign: s_out,
            exp: e_out,
            man: m_out,
            abn: a_out,
        })
    }

    pub fn sqrt(&mut self, x: &FloatVar) -> Result<FloatVar, Error> {
        self.cs.note_gadget("fsqrt");
        let p = self.params;
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let n_bits = m_bits + 3;
        let t = self.tables;
        let cs = &mut *self.cs;

        // halve the exponent; the advice bit is its parity, verified by the
        // wrap-around-detecting range check on (e - b)/2
        let b_var = cs.add_hint("lsb", std::slice::from_ref(&x.exp), 1)?[0];
        let b = assert_bool(cs, Lc::from_var(b_var))?;
        let e_half = (x.exp.clone() - b.lc()).scale(Fr::from_u64(2).inverse());
        int::abs_sign(cs, &t, &e_half, e_bits - 1)?;

        // integer square root of the scaled mantissa
        let base = x.man.scale(pow2_const(m_bits + 4));
        let sq_in = cs.mul(&base, &(Lc::one() + b.lc()))?;
        let n = Lc::from_var(cs.add_hint("int_sqrt", std::slice::from_ref(&sq_in), 1)?[0]);
        let n_sq = cs.mul(&n, &n)?;
        let rem = sq_in.clone() - &n_sq;
        int::range_check(cs, &t, &rem, m_bits + 4)?;
        // (n+1)^2 - 1 - sq_in = n^2 + 2n - sq_in
        let upper = n_sq + &n.scale(Fr::from_u64(2)) - &sq_in;
        int::range_check(cs, &t, &upper, m_bits + 4)?;

        let m_x0 = is_zero(cs, &x.man)?;
        let neg_nonzero = and(cs, &x.sign, &m_x0.not())?;
        let a = or(cs, &x.abn, &neg_nonzero)?;
        let aux = is_zero(cs, &rem)?;

        // a non-zero root already has its leading bit at M+2
        let (e_r, m_r) = self.round(&e_half, &n, n_bits, 0, None, &aux)?;

        let cs = &mut *self.cs;
        let m_r0 = is_zero(cs, &m_r)?;
        let x_nan = and(cs, &x.abn, &m_x0)?;
        let nan_cond = or(cs, &x_nan, &neg_nonzero)?;

        let e_zero_sel = select(cs, &m_r0, &iconst(p.ezero()), &e_r)?;
        let e_out = select(cs, &a, &iconst(p.emax()), &e_zero_sel)?;
        let m_abn = select(cs, &nan_cond, &Lc::zero(), &iconst(1 << m_bits))?;
        let m_out = select(cs, &a, &m_abn, &m_r)?;
        let s_out = select_bool(cs, &nan_cond, &Bool::constant(false), &x.sign)?;

        Ok(FloatVar {
            sign: s_out,
            exp: e_out,
            man: m_out,
            abn: a.clone(),
        })
    }

    fn is_nan(&mut self, x: &FloatVar) -> Result<Bool, Error> {
        let cs = &mut *self.cs;
        let m0 = is_zero(cs, &x.man)?;
        and(cs, &x.abn, &m0)
    }

    fn is_numeric_zero(&mut self, x: &FloatVar) -> Result<Bool, Error> {
        let cs = &mut *self.cs;
        let m0 = is_zero(cs, &x.man)?;
        and(cs, &m0, &x.abn.not())
    }

    /// Strict less-than. NaN compares false against everything, -0 equals +0.
    pub fn less_than(&mut self, x: &FloatVar, y: &FloatVar) -> Result<Bool, Error> {
        self.cs.note_gadget("fcmp");
        let (e_bits, m_bits) = (self.e_bits(), self.m_bits());
        let t = self.tables;

        let nan_x = self.is_nan(x)?;
        let nan_y = self.is_nan(y)?;
        let zero_x = self.is_numeric_zero(x)?;
        let zero_y = self.is_numeric_zero(y)?;
        let cs = &mut *self.cs;
        let either_nan = or(cs, &nan_x, &nan_y)?;

        // opposite signs: negative < positive unless both are zeros
        let s_eq = is_eq(cs, x.sign.lc(), y.sign.lc())?;
        let both_zero = and(cs, &zero_x, &zero_y)?;
        let lt_diff = and(cs, &x.sign, &both_zero.not())?;

        // same sign: exponent then mantissa, direction flipped for negatives
        let e_eq = is_eq(cs, &x.exp, &y.exp)?;
        let e_diff = x.exp.clone() - &y.exp;
        let e_lt = int::is_ge_zero(cs, &t, &e_diff, e_bits + 1)?.not();
        let e_gt_raw = int::is_ge_zero(cs, &t, &(y.exp.clone() - &x.exp), e_bits + 1)?.not();
        let m_eq = is_eq(cs, &x.man, &y.man)?;
        let m_diff = x.man.clone() - &y.man;
        let m_lt_raw = int::is_ge_zero(cs, &t, &m_diff, m_bits + 1)?.not();
        // the sign advice is ambiguous on a zero difference; gate with the
        // sound equality bit
        let m_lt = and(cs, &m_lt_raw, &m_eq.not())?;
        let m_gt = and(cs, &m_lt_raw.not(), &m_eq.not())?;
        let mag_lt = select_bool(cs, &e_eq, &m_lt, &e_lt)?;
        let mag_gt = select_bool(cs, &e_eq, &m_gt, &e_gt_raw)?;
        let lt_same = select_bool(cs, &x.sign, &mag_gt, &mag_lt)?;

        let by_sign = select_bool(cs, &s_eq, &lt_same, &lt_diff)?;
        select_bool(cs, &either_nan, &Bool::constant(false), &by_sign)
    }

    /// Numeric equality: all components equal, or both zeros. NaN != NaN.
    pub fn numeric_eq(&mut self, x: &FloatVar, y: &FloatVar) -> Result<Bool, Error> {
        self.cs.note_gadget("fcmp");
        let nan_x = self.is_nan(x)?;
        let nan_y = self.is_nan(y)?;
        let zero_x = self.is_numeric_zero(x)?;
        let zero_y = self.is_numeric_zero(y)?;
        let cs = &mut *self.cs;
        let either_nan = or(cs, &nan_x, &nan_y)?;
        let both_zero = and(cs, &zero_x, &zero_y)?;
        let s_eq = is_eq(cs, x.sign.lc(), y.sign.lc())?;
        let e_eq = is_eq(cs, &x.exp, &y.exp)?;
        let m_eq = is_eq(cs, &x.man, &y.man)?;
        let a_eq = is_eq(cs, x.abn.lc(), y.abn.lc())?;
        let se = and(cs, &s_eq, &e_eq)?;
        let ma = and(cs, &m_eq, &a_eq)?;
        let comp = and(cs, &se, &ma)?;
        let eq = or(cs, &comp, &both_zero)?;
        and(cs, &eq, &either_nan.not())
    }

    pub fn less_eq(&mut self, x: &FloatVar, y: &FloatVar) -> Result<Bool, Error> {
        let lt = self.less_than(x, y)?;
        let eq = self.numeric_eq(x, y)?;
        or(self.cs, &lt, &eq)
    }

    pub fn greater_than(&mut self, x: &FloatVar, y: &FloatVar) -> Result<Bool, Error> {
        self.less_than(y, x)
    }

    pub fn greater_eq(&mut self, x: &FloatVar, y: &FloatVar) -> Result<Bool, Error> {
        self.less_eq(y, x)
    }

    /// Component-wise equality constraints.
    pub fn assert_eq_strict(&mut self, x: &FloatVar, y: &FloatVar) -> Result<(), Error> {
        let cs = &mut *self.cs;
        cs.enforce_zero(x.sign.lc().clone() - y.sign.lc())?;
        cs.enforce_zero(x.exp.clone() - &y.exp)?;
        cs.enforce_zero(x.man.clone() - &y.man)?;
        cs.enforce_zero(x.abn.lc().clone() - y.abn.lc())
    }

    /// |x - y| < tol, with tol a non-negative finite float.
    pub fn assert_eq_fuzzy(
        &mut self,
        x: &FloatVar,
        y: &FloatVar,
        tol: &FloatVar,
    ) -> Result<(), Error> {
        let diff = self.sub(x, y)?;
        let mag = self.abs(&diff)?;
        let lt = self.less_than(&mag, tol)?;
        self.cs.enforce_zero(lt.lc().clone() - &Lc::one())
    }

    /// Reads the witness values back into an IEEE bit pattern.
    pub fn to_bits(cs: &ConstraintSystem, params: FloatParams, f: &FloatVar) -> u64 {
        let p = params;
        let s = if cs.eval(f.sign.lc()).is_zero() { 0u64 } else { 1 };
        let abn = !cs.eval(f.abn.lc()).is_zero();
        let m = cs.eval(&f.man).to_u64().unwrap_or(0);
        let e = cs
            .eval(&f.exp)
            .to_i128()
            .map(|v| v as i64)
            .unwrap_or(i64::MIN);
        let e_field_max = (1u64 << p.exp_bits) - 1;
        if abn {
            if m == 0 {
                return p.canonical_nan();
            }
            return p.encode(s, e_field_max, 0);
        }
        if m == 0 {
            return p.encode(s, 0, 0);
        }
        if e >= p.emin() {
            p.encode(s, (e + p.bias()) as u64, m & ((1 << p.man_bits) - 1))
        } else {
            let shift = (p.emin() - e) as u32;
            p.encode(s, 0, m >> shift)
        }
    }

    /// Debug validator: checks the FloatVar encoding invariants under the
    /// current witness. Returns a description of the first violation.
    pub fn validate(cs: &ConstraintSystem, params: FloatParams, f: &FloatVar) -> Result<(), String> {
        let p = params;
        let s = cs.eval(f.sign.lc());
        let a = cs.eval(f.abn.lc());
        if !(s.is_zero() || s == Fr::ONE) {
            return Err("sign is not boolean".into());
        }
        if !(a.is_zero() || a == Fr::ONE) {
            return Err("abnormal flag is not boolean".into());
        }
        let m = cs.eval(&f.man).to_u128().ok_or("mantissa out of range")?;
        let e = cs.eval(&f.exp).to_i128().ok_or("exponent out of range")?;
        let abn = !a.is_zero();
        let neg = !s.is_zero();
        if abn {
            if e != p.emax() as i128 {
                return Err(format!("abnormal exponent {e}"));
            }
            if m == 1 << p.man_bits {
                return Ok(());
            }
            if m == 0 && !neg {
                return Ok(());
            }
            return Err(format!("abnormal mantissa {m} sign {neg}"));
        }
        if m == 0 {
            if e != p.ezero() as i128 {
                return Err(format!("zero with exponent {e}"));
            }
            return Ok(());
        }
        if !(1u128 << p.man_bits..1u128 << (p.man_bits + 1)).contains(&m) {
            return Err(format!("mantissa {m} not normalized"));
        }
        if e < (p.ezero() + 1) as i128 || e > (p.emax() - 1) as i128 {
            return Err(format!("finite exponent {e} out of range"));
        }
        if (e as i64) < p.emin() {
            let needed = (p.emin() - e as i64) as u32;
            if m.trailing_zeros() < needed {
                return Err(format!("subnormal {m} lacks {needed} trailing zeros"));
            }
        }
        Ok(())
    }

    /// Raw component variables of a fresh unconstrained float input, for
    /// callers that allocate first and bind later.
    pub fn alloc_raw(&mut self, bits: u64) -> (Variable, Variable, Variable) {
        let (s, e, m) = self.params.decode(bits);
        (
            self.cs.alloc_witness(Fr::from_u64(s)),
            self.cs.alloc_witness(Fr::from_u64(e)),
            self.cs.alloc_witness(Fr::from_u64(m)),
        )
    }
}
