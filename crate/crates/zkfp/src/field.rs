//! Arithmetic in the BN254 scalar field, used as the native field of the
//! constraint system.
//!
//! Elements are kept in Montgomery form (R = 2^256). The modulus is the
//! 254-bit prime
//! `21888242871839275222246405745257275088548364400416034343698204186575808495617`.

/// Little-endian limbs of the modulus.
const MODULUS: [u64; 4] = [
    0x43e1f593f0000001,
    0x2833e84879b97091,
    0xb85045b68181585d,
    0x30644e72e131a029,
];

/// (p - 1) / 2, little-endian. Elements above this are "negative" in the
/// signed interpretation used by the integer gadgets.
const HALF: [u64; 4] = [
    0xa1f0fac9f8000000,
    0x9419f4243cdcb848,
    0xdc2822db40c0ac2e,
    0x183227397098d014,
];

/// -p^-1 mod 2^64, computed from the modulus at compile time.
const INV: u64 = {
    let mut inv = 1u64;
    let mut i = 0;
    while i < 63 {
        inv = inv.wrapping_mul(inv).wrapping_mul(MODULUS[0]);
        i += 1;
    }
    inv.wrapping_neg()
};

const fn geq(a: &[u64; 4], b: &[u64; 4]) -> bool {
    let mut i = 3;
    loop {
        if a[i] > b[i] {
            return true;
        }
        if a[i] < b[i] {
            return false;
        }
        if i == 0 {
            return true;
        }
        i -= 1;
    }
}

const fn sub_limbs(a: &[u64; 4], b: &[u64; 4]) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut borrow = 0u64;
    let mut i = 0;
    while i < 4 {
        let (d, b1) = a[i].overflowing_sub(b[i]);
        let (d, b2) = d.overflowing_sub(borrow);
        out[i] = d;
        borrow = (b1 as u64) + (b2 as u64);
        i += 1;
    }
    out
}

/// 2^512 mod p, computed at compile time by repeated doubling.
const R2: [u64; 4] = {
    let mut x = [1u64, 0, 0, 0];
    let mut i = 0;
    while i < 512 {
        // x := 2x mod p
        let mut carry = 0u64;
        let mut doubled = [0u64; 4];
        let mut j = 0;
        while j < 4 {
            doubled[j] = (x[j] << 1) | carry;
            carry = x[j] >> 63;
            j += 1;
        }
        if carry == 1 || geq(&doubled, &MODULUS) {
            doubled = sub_limbs(&doubled, &MODULUS);
        }
        x = doubled;
        i += 1;
    }
    x
};

#[inline(always)]
fn adc(a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = (a as u128) + (b as u128) + (carry as u128);
    (t as u64, (t >> 64) as u64)
}

#[inline(always)]
fn sbb(a: u64, b: u64, borrow: u64) -> (u64, u64) {
    let t = (a as i128) - (b as i128) - (borrow as i128);
    (t as u64, (t < 0) as u64)
}

/// An element of the scalar field, in Montgomery form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fr([u64; 4]);

impl Fr {
    pub const ZERO: Fr = Fr([0, 0, 0, 0]);
    /// 1 in Montgomery form = R mod p (mont_mul of R2 by raw 1).
    pub const ONE: Fr = Fr(mont_mul(&R2, &[1, 0, 0, 0]));

    pub fn from_u64(v: u64) -> Fr {
        Fr(mont_mul_rt(&[v, 0, 0, 0], &R2))
    }

    pub fn from_u128(v: u128) -> Fr {
        Fr(mont_mul_rt(&[v as u64, (v >> 64) as u64, 0, 0], &R2))
    }

    pub fn from_i64(v: i64) -> Fr {
        if v >= 0 {
            Fr::from_u64(v as u64)
        } else {
            -Fr::from_u64(v.unsigned_abs())
        }
    }

    pub fn from_i128(v: i128) -> Fr {
        if v >= 0 {
            Fr::from_u128(v as u128)
        } else {
            -Fr::from_u128(v.unsigned_abs())
        }
    }

    /// Interprets 32 big-endian bytes as an integer and reduces it mod p.
    pub fn from_be_bytes_reduce(bytes: &[u8; 32]) -> Fr {
        let mut limbs = [0u64; 4];
        for i in 0..4 {
            let mut l = 0u64;
            for j in 0..8 {
                l = (l << 8) | bytes[(3 - i) * 8 + j] as u64;
            }
            limbs[i] = l;
        }
        Fr(mont_mul_rt(&limbs, &R2))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0, 0]
    }

    /// Canonical (non-Montgomery) little-endian limbs.
    pub fn to_canonical(&self) -> [u64; 4] {
        mont_mul_rt(&self.0, &[1, 0, 0, 0])
    }

    /// Canonical value as u64; None if it does not fit.
    pub fn to_u64(&self) -> Option<u64> {
        let c = self.to_canonical();
        if c[1] == 0 && c[2] == 0 && c[3] == 0 {
            Some(c[0])
        } else {
            None
        }
    }

    /// Canonical value as u128; None if it does not fit.
    pub fn to_u128(&self) -> Option<u128> {
        let c = self.to_canonical();
        if c[2] == 0 && c[3] == 0 {
            Some((c[0] as u128) | ((c[1] as u128) << 64))
        } else {
            None
        }
    }

    /// Low 128 bits of the canonical value. Garbage-tolerant accessor for
    /// hint functions fed adversarial values.
    pub fn to_u128_lossy(&self) -> u128 {
        let c = self.to_canonical();
        (c[0] as u128) | ((c[1] as u128) << 64)
    }

    /// Signed interpretation: elements in [1, (p-1)/2] are positive,
    /// the rest negative. 0 counts as non-negative.
    pub fn is_negative(&self) -> bool {
        let c = self.to_canonical();
        !self.is_zero() && !geq(&HALF, &c)
    }

    /// Signed canonical value; None if |v| does not fit an i128.
    pub fn to_i128(&self) -> Option<i128> {
        if self.is_negative() {
            (-*self).to_u128().and_then(|u| {
                if u <= i128::MAX as u128 {
                    Some(-(u as i128))
                } else {
                    None
                }
            })
        } else {
            self.to_u128().and_then(|u| {
                if u <= i128::MAX as u128 {
                    Some(u as i128)
                } else {
                    None
                }
            })
        }
    }

    /// Bit length of the canonical value.
    pub fn bit_len(&self) -> u32 {
        let c = self.to_canonical();
        for i in (0..4).rev() {
            if c[i] != 0 {
                return 64 * i as u32 + (64 - c[i].leading_zeros());
            }
        }
        0
    }

    pub fn square(&self) -> Fr {
        Fr(mont_mul_rt(&self.0, &self.0))
    }

    pub fn double(&self) -> Fr {
        *self + *self
    }

    pub fn pow(&self, exp: &[u64; 4]) -> Fr {
        let mut acc = Fr::ONE;
        for i in (0..4).rev() {
            for b in (0..64).rev() {
                acc = acc.square();
                if (exp[i] >> b) & 1 == 1 {
                    acc = acc * *self;
                }
            }
        }
        acc
    }

    /// Multiplicative inverse by binary extended GCD; Fr::ZERO maps to
    /// Fr::ZERO.
    pub fn inverse(&self) -> Fr {
        #[inline(always)]
        fn is_zero_l(x: &[u64; 4]) -> bool {
            x[0] | x[1] | x[2] | x[3] == 0
        }
        #[inline(always)]
        fn shr1(x: &mut [u64; 4], carry: u64) {
            x[0] = (x[0] >> 1) | (x[1] << 63);
            x[1] = (x[1] >> 1) | (x[2] << 63);
            x[2] = (x[2] >> 1) | (x[3] << 63);
            x[3] = (x[3] >> 1) | (carry << 63);
        }
        #[inline(always)]
        fn sub_assign_l(a: &mut [u64; 4], b: &[u64; 4]) {
            let mut borrow = 0u64;
            for i in 0..4 {
                let (d, b1) = a[i].overflowing_sub(b[i]);
                let (d, b2) = d.overflowing_sub(borrow);
                a[i] = d;
                borrow = (b1 as u64) + (b2 as u64);
            }
        }
        // halves a residue mod p: even values shift, odd values add p first
        #[inline(always)]
        fn half_mod(x: &mut [u64; 4]) {
            if x[0] & 1 == 0 {
                shr1(x, 0);
            } else {
                let mut carry = 0u64;
                for i in 0..4 {
                    let (s, c1) = x[i].overflowing_add(MODULUS[i]);
                    let (s, c2) = s.overflowing_add(carry);
                    x[i] = s;
                    carry = (c1 as u64) | (c2 as u64);
                }
                shr1(x, carry);
            }
        }

        if self.is_zero() {
            return Fr::ZERO;
        }
        let mut a = self.to_canonical();
        let mut b = MODULUS;
        let mut u = [1u64, 0, 0, 0];
        let mut v = [0u64; 4];
        while !is_zero_l(&a) {
            if a[0] & 1 == 0 {
                shr1(&mut a, 0);
                half_mod(&mut u);
            } else {
                if !geq(&a, &b) {
                    std::mem::swap(&mut a, &mut b);
                    std::mem::swap(&mut u, &mut v);
                }
                sub_assign_l(&mut a, &b);
                shr1(&mut a, 0);
                // u := (u - v)/2 mod p
                if !geq(&u, &v) {
                    let mut t = MODULUS;
                    sub_assign_l(&mut t, &v);
                    let mut carry = 0u64;
                    for i in 0..4 {
                        let (s, c1) = u[i].overflowing_add(t[i]);
                        let (s, c2) = s.overflowing_add(carry);
                        u[i] = s;
                        carry = (c1 as u64) | (c2 as u64);
                    }
                    debug_assert_eq!(carry, 0);
                } else {
                    sub_assign_l(&mut u, &v);
                }
                half_mod(&mut u);
            }
        }
        // b is now gcd(self, p) = 1 and v = self^-1 (canonical)
        debug_assert_eq!(b, [1, 0, 0, 0]);
        Fr(mont_mul_rt(&v, &R2))
    }

    /// Raw internal-representation bytes: a bijective, cheap encoding used
    /// for transcript hashing and table keys (not canonical big-endian).
    pub fn to_raw_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for i in 0..4 {
            out[i * 8..(i + 1) * 8].copy_from_slice(&self.0[i].to_le_bytes());
        }
        out
    }

    /// Canonical big-endian bytes, for transcripts.
    pub fn to_be_bytes(&self) -> [u8; 32] {
        let c = self.to_canonical();
        let mut out = [0u8; 32];
        for i in 0..4 {
            out[(3 - i) * 8..(4 - i) * 8].copy_from_slice(&c[i].to_be_bytes());
        }
        out
    }

    /// Decimal string of the canonical value.
    pub fn to_decimal(&self) -> String {
        let mut c = self.to_canonical();
        if c == [0, 0, 0, 0] {
            return "0".to_string();
        }
        const TEN19: u64 = 10_000_000_000_000_000_000;
        let mut chunks: Vec<u64> = Vec::new();
        while c != [0, 0, 0, 0] {
            // divide c by 10^19, collect remainder
            let mut rem = 0u128;
            for i in (0..4).rev() {
                let cur = (rem << 64) | c[i] as u128;
                c[i] = (cur / TEN19 as u128) as u64;
                rem = cur % TEN19 as u128;
            }
            chunks.push(rem as u64);
        }
        let mut s = format!("{}", chunks.pop().unwrap());
        while let Some(chunk) = chunks.pop() {
            s.push_str(&format!("{:019}", chunk));
        }
        s
    }

    /// Inverts a slice in place with Montgomery's batch trick. Zero entries
    /// stay zero.
    pub fn batch_invert(values: &mut [Fr]) {
        let mut prods = Vec::with_capacity(values.len());
        let mut acc = Fr::ONE;
        for v in values.iter() {
            prods.push(acc);
            if !v.is_zero() {
                acc = acc * *v;
            }
        }
        let mut inv = acc.inverse();
        for (v, p) in values.iter_mut().zip(prods.iter()).rev() {
            if !v.is_zero() {
                let tmp = inv * *p;
                inv = inv * *v;
                *v = tmp;
            }
        }
    }
}

const fn mont_mul(a: &[u64; 4], b: &[u64; 4]) -> [u64; 4] {
    let mut t = [0u64; 4];
    let mut t4 = 0u64;
    let mut i = 0;
    while i < 4 {
        // t += a[i] * b
        let mut carry = 0u64;
        let mut j = 0;
        while j < 4 {
            let wide = (t[j] as u128) + (a[i] as u128) * (b[j] as u128) + (carry as u128);
            t[j] = wide as u64;
            carry = (wide >> 64) as u64;
            j += 1;
        }
        let wide = (t4 as u128) + (carry as u128);
        t4 = wide as u64;
        let t5 = (wide >> 64) as u64;

        // reduce one limb
        let m = t[0].wrapping_mul(INV);
        let wide = (t[0] as u128) + (m as u128) * (MODULUS[0] as u128);
        let mut carry = (wide >> 64) as u64;
        let mut j = 1;
        while j < 4 {
            let wide = (t[j] as u128) + (m as u128) * (MODULUS[j] as u128) + (carry as u128);
            t[j - 1] = wide as u64;
            carry = (wide >> 64) as u64;
            j += 1;
        }
        let wide = (t4 as u128) + (carry as u128);
        t[3] = wide as u64;
        t4 = t5 + ((wide >> 64) as u64);
        i += 1;
    }
    if t4 != 0 || geq(&t, &MODULUS) {
        t = sub_limbs(&t, &MODULUS);
    }
    t
}

impl std::ops::Add for Fr {
    type Output = Fr;
    #[inline]
    fn add(self, rhs: Fr) -> Fr {
        let mut out = [0u64; 4];
        let mut carry = 0u64;
        for i in 0..4 {
            let (s, c) = adc(self.0[i], rhs.0[i], carry);
            out[i] = s;
            carry = c;
        }
        if carry != 0 || geq(&out, &MODULUS) {
            out = sub_limbs(&out, &MODULUS);
        }
        Fr(out)
    }
}

impl std::ops::Sub for Fr {
    type Output = Fr;
    #[inline]
    fn sub(self, rhs: Fr) -> Fr {
        let mut out = [0u64; 4];
        let mut borrow = 0u64;
        for i in 0..4 {
            let (d, b) = sbb(self.0[i], rhs.0[i], borrow);
            out[i] = d;
            borrow = b;
        }
        if borrow != 0 {
            let mut carry = 0u64;
            for i in 0..4 {
                let (s, c) = adc(out[i], MODULUS[i], carry);
                out[i] = s;
                carry = c;
            }
        }
        Fr(out)
    }
}

impl std::ops::Neg for Fr {
    type Output = Fr;
    fn neg(self) -> Fr {
        Fr::ZERO - self
    }
}

/// Runtime Montgomery multiplication, fully unrolled. The const-fn variant
/// stays for compile-time table construction.
#[inline]
fn mont_mul_rt(a: &[u64; 4], b: &[u64; 4]) -> [u64; 4] {
    #[inline(always)]
    fn mac(t: u64, x: u64, y: u64, carry: u64) -> (u64, u64) {
        let wide = (t as u128) + (x as u128) * (y as u128) + (carry as u128);
        (wide as u64, (wide >> 64) as u64)
    }

    let mut t0 = 0u64;
    let mut t1 = 0u64;
    let mut t2 = 0u64;
    let mut t3 = 0u64;
    let mut t4 = 0u64;

    macro_rules! round {
        ($ai:expr) => {{
            let ai = $ai;
            let (r0, carry) = mac(t0, ai, b[0], 0);
            let (r1, carry) = mac(t1, ai, b[1], carry);
            let (r2, carry) = mac(t2, ai, b[2], carry);
            let (r3, carry) = mac(t3, ai, b[3], carry);
            let r4 = t4 + carry;

            let m = r0.wrapping_mul(INV);
            let (_, carry) = mac(r0, m, MODULUS[0], 0);
            let (s0, carry) = mac(r1, m, MODULUS[1], carry);
            let (s1, carry) = mac(r2, m, MODULUS[2], carry);
            let (s2, carry) = mac(r3, m, MODULUS[3], carry);
            let (s3, s4) = {
                let wide = (r4 as u128) + (carry as u128);
                (wide as u64, (wide >> 64) as u64)
            };
            t0 = s0;
            t1 = s1;
            t2 = s2;
            t3 = s3;
            t4 = s4;
        }};
    }

    round!(a[0]);
    round!(a[1]);
    round!(a[2]);
    round!(a[3]);

    let mut out = [t0, t1, t2, t3];
    if t4 != 0 || geq(&out, &MODULUS) {
        out = sub_limbs(&out, &MODULUS);
    }
    out
}

impl std::ops::Mul for Fr {
    type Output = Fr;
    #[inline]
    fn mul(self, rhs: Fr) -> Fr {
        Fr(mont_mul_rt(&self.0, &rhs.0))
    }
}

impl std::ops::AddAssign for Fr {
    fn add_assign(&mut self, rhs: Fr) {
        *self = *self + rhs;
    }
}

impl std::ops::SubAssign for Fr {
    fn sub_assign(&mut self, rhs: Fr) {
        *self = *self - rhs;
    }
}

impl std::ops::MulAssign for Fr {
    fn mul_assign(&mut self, rhs: Fr) {
        *self = *self * rhs;
    }
}

impl std::fmt::Debug for Fr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fr({})", self.to_decimal())
    }
}

impl std::fmt::Display for Fr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal())
    }
}
