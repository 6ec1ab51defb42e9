//! The trig-free location-to-cell map, written once against an abstract
//! float engine and instantiated twice: over native floats (the expected
//! witness values) and over the float gadgets (the circuit). Both walks
//! perform the identical operation tree, so agreement is bit-exact by
//! construction.

use crate::faces::{face_data, is_class_iii, NUM_FACES};
use crate::ijk::CoordIjk;
use crate::native::NativeFloat;

/// Half-angle advice for one angle theta: tan, sin, cos of theta/2 and the
/// reconstructed sin(theta) = 2*sin(theta/2)*cos(theta/2).
#[derive(Clone, Copy, Debug)]
pub struct HalfAngle<V> {
    pub alpha: V,
    pub beta: V,
    pub gamma: V,
    pub delta: V,
}

#[derive(Clone, Copy, Debug)]
pub struct ZklpHints<V> {
    pub lat: HalfAngle<V>,
    pub lng: HalfAngle<V>,
}

/// Per-resolution constants folded at build time (the resolution is
/// public): the radial scale (1/c_G)*sqrt(7)^res computed by
/// square-and-multiply, and the Class III rotation (identity at even
/// resolutions so the circuit shape never changes).
#[derive(Clone, Copy, Debug)]
pub struct ResConsts {
    pub scale: f64,
    pub rot_cos: f64,
    pub rot_sin: f64,
}

impl ResConsts {
    pub fn for_precision<F: NativeFloat>(res: u8) -> ResConsts {
        let d = face_data();
        let sqrt7 = F::from_f64(d.sqrt7);
        // square-and-multiply over the public resolution bits
        let mut acc = F::one();
        for bit in (0..4).rev() {
            acc = acc.mul(acc);
            if (res >> bit) & 1 == 1 {
                acc = acc.mul(sqrt7);
            }
        }
        let inv_cg = F::one().div(F::from_f64(d.res0_u_gnomonic));
        let scale = inv_cg.mul(acc);
        let (rot_cos, rot_sin) = if is_class_iii(res) {
            (
                F::from_f64(d.ap7_rot.cos()).to_f64(),
                F::from_f64(d.ap7_rot.sin()).to_f64(),
            )
        } else {
            (1.0, 0.0)
        };
        ResConsts {
            scale: scale.to_f64(),
            rot_cos,
            rot_sin,
        }
    }
}

/// Everything the map needs from a float backend. `Val` carries one float,
/// `Cond` one boolean, `FaceSel` the resolved closest-face choice.
pub trait FloatEngine {
    type Val: Clone;
    type Cond: Clone;
    type FaceSel;

    /// Constants arrive as f64 and are rounded to the engine's precision;
    /// values that are already exact in that precision pass through
    /// unchanged.
    fn constant(&mut self, v: f64) -> Self::Val;
    fn add(&mut self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn sub(&mut self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn mul(&mut self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn div(&mut self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn sqrt(&mut self, a: &Self::Val) -> Self::Val;
    fn abs(&mut self, a: &Self::Val) -> Self::Val;
    fn lt(&mut self, a: &Self::Val, b: &Self::Val) -> Self::Cond;
    /// Numeric test against +-0.
    fn is_val_zero(&mut self, a: &Self::Val) -> Self::Cond;
    fn and(&mut self, a: &Self::Cond, b: &Self::Cond) -> Self::Cond;
    fn or(&mut self, a: &Self::Cond, b: &Self::Cond) -> Self::Cond;
    fn not(&mut self, a: &Self::Cond) -> Self::Cond;
    fn const_cond(&mut self, b: bool) -> Self::Cond;
    fn select(&mut self, c: &Self::Cond, t: &Self::Val, f: &Self::Val) -> Self::Val;
    fn select_cond(&mut self, c: &Self::Cond, t: &Self::Cond, f: &Self::Cond) -> Self::Cond;
    /// Integer part of a non-negative value bounded well inside the
    /// mantissa (the grid coordinates stay below 2^23).
    fn floor_nonneg(&mut self, a: &Self::Val) -> Self::Val;
    /// Strict-less argmin, lowest index winning ties.
    fn argmin(&mut self, vals: &[Self::Val]) -> (Self::FaceSel, Self::Val);
    /// A per-face constant under the face selection.
    fn face_const(&mut self, sel: &Self::FaceSel, table: &[f64; NUM_FACES]) -> Self::Val;
}

/// Intermediates exposed for differential testing.
pub struct MapTrace<V> {
    pub x: V,
    pub y: V,
    pub z: V,
    pub d2: V,
    pub r: V,
    pub x2d: V,
    pub y2d: V,
}

pub struct MapOutput<V, S> {
    pub face: S,
    pub i: V,
    pub j: V,
    pub k: V,
    pub trace: MapTrace<V>,
}

/// The full map: half-angle advice to normalized cell coordinates.
pub fn zklp_map<E: FloatEngine>(
    e: &mut E,
    hints: &ZklpHints<E::Val>,
    rc: &ResConsts,
) -> MapOutput<E::Val, E::FaceSel> {
    let d = face_data();
    let zero = e.constant(0.0);
    let one = e.constant(1.0);

    // Cartesian coordinates without trigonometry:
    //   z = sin(lat) = beta_lat, a = cos(lat) = sqrt(1 - z^2),
    //   cos(lng) = delta^2 - gamma^2, x = cos(lng)*a, y = sin(lng)*a
    let z = hints.lat.beta.clone();
    let z2 = e.mul(&z, &z);
    let one_minus = e.sub(&one, &z2);
    let a = e.sqrt(&one_minus);
    let d2l = e.mul(&hints.lng.delta, &hints.lng.delta);
    let g2l = e.mul(&hints.lng.gamma, &hints.lng.gamma);
    let cos_lng = e.sub(&d2l, &g2l);
    let x = e.mul(&cos_lng, &a);
    let y = e.mul(&hints.lng.beta, &a);

    // squared chord distance to all 20 face centers
    let mut dists = Vec::with_capacity(NUM_FACES);
    let mut fx_t = [0.0; NUM_FACES];
    let mut fy_t = [0.0; NUM_FACES];
    let mut fz_t = [0.0; NUM_FACES];
    for f in 0..NUM_FACES {
        fx_t[f] = d.faces[f].x;
        fy_t[f] = d.faces[f].y;
        fz_t[f] = d.faces[f].z;
    }
    for f in 0..NUM_FACES {
        let cx = e.constant(fx_t[f]);
        let cy = e.constant(fy_t[f]);
        let cz = e.constant(fz_t[f]);
        let dx = e.sub(&x, &cx);
        let dy = e.sub(&y, &cy);
        let dz = e.sub(&z, &cz);
        let dx2 = e.mul(&dx, &dx);
        let dy2 = e.mul(&dy, &dy);
        let dz2 = e.mul(&dz, &dz);
        let s = e.add(&dx2, &dy2);
        dists.push(e.add(&s, &dz2));
    }
    let (face, d2) = e.argmin(&dists);

    // radial distance via the Pythagorean identity: with cos(r) = 1 - d2/2,
    //   tan(r) = sqrt((4 - d2)*d2) / (2 - d2)
    // then scaled to grid units by (1/c_G)*sqrt(7)^res
    let four = e.constant(4.0);
    let two = e.constant(2.0);
    let t1 = e.sub(&four, &d2);
    let num = e.mul(&t1, &d2);
    let rt = e.sqrt(&num);
    let den = e.sub(&two, &d2);
    let tan_r = e.div(&rt, &den);
    let scale = e.constant(rc.scale);
    let r = e.mul(&tan_r, &scale);

    // azimuth terms from half-angle products; the face-center trig values
    // are precomputed constants
    let sin_lat1 = e.face_const(&face, &d.sin_lat);
    let cos_lat1 = e.face_const(&face, &d.cos_lat);
    let sin_lng1 = e.face_const(&face, &d.sin_lng);
    let cos_lng1 = e.face_const(&face, &d.cos_lng);
    let sin_az = e.face_const(&face, &d.sin_az);
    let cos_az = e.face_const(&face, &d.cos_az);

    let t_a = e.mul(&hints.lng.beta, &cos_lng1);
    let t_b = e.mul(&cos_lng, &sin_lng1);
    let sin_d = e.sub(&t_a, &t_b);
    let t_c = e.mul(&cos_lng, &cos_lng1);
    let t_d = e.mul(&hints.lng.beta, &sin_lng1);
    let cos_d = e.add(&t_c, &t_d);

    let term_a = e.mul(&a, &sin_d);
    let t_e = e.mul(&cos_lat1, &z);
    let t_f = e.mul(&a, &cos_d);
    let t_g = e.mul(&sin_lat1, &t_f);
    let term_b = e.sub(&t_e, &t_g);

    let a2 = e.mul(&term_a, &term_a);
    let b2 = e.mul(&term_b, &term_b);
    let h2 = e.add(&a2, &b2);
    let h = e.sqrt(&h2);
    let b_n = e.div(&term_b, &h);
    let a_n = e.div(&term_a, &h);

    let t_h = e.mul(&cos_az, &b_n);
    let t_i = e.mul(&sin_az, &a_n);
    let xt = e.add(&t_h, &t_i);
    let t_j = e.mul(&sin_az, &b_n);
    let t_k = e.mul(&cos_az, &a_n);
    let yt = e.sub(&t_j, &t_k);
    let x2d_raw = e.mul(&r, &xt);
    let y2d_raw = e.mul(&r, &yt);

    // Class III axes rotation, applied unconditionally (identity when even)
    let cw = e.constant(rc.rot_cos);
    let sw = e.constant(rc.rot_sin);
    let t_l = e.mul(&x2d_raw, &cw);
    let t_m = e.mul(&y2d_raw, &sw);
    let x2d_rot = e.add(&t_l, &t_m);
    let t_n = e.mul(&y2d_raw, &cw);
    let t_o = e.mul(&x2d_raw, &sw);
    let y2d_rot = e.sub(&t_n, &t_o);

    // exactly at a face center the azimuth terms are 0/0; short-circuit to
    // the origin cell
    let at_center = e.is_val_zero(&d2);
    let x2d = e.select(&at_center, &zero, &x2d_rot);
    let y2d = e.select(&at_center, &zero, &y2d_rot);

    let (i, j, k) = hex2d_to_ijk(e, &x2d, &y2d);

    MapOutput {
        face,
        i,
        j,
        k,
        trace: MapTrace {
            x,
            y,
            z,
            d2,
            r,
            x2d,
            y2d,
        },
    }
}

/// Planar quantizer in float operations: reverse axis decomposition,
/// region-based rounding, sign folds, then min-subtraction normalization.
/// Mirrors the reference algorithm's comparisons one for one.
pub fn hex2d_to_ijk<E: FloatEngine>(
    e: &mut E,
    x: &E::Val,
    y: &E::Val,
) -> (E::Val, E::Val, E::Val) {
    let zero = e.constant(0.0);
    let half = e.constant(0.5);
    let one = e.constant(1.0);
    let two = e.constant(2.0);
    let third = e.constant(1.0 / 3.0);
    let two_thirds = e.constant(2.0 / 3.0);
    let sin60 = e.constant(crate::faces::SIN60);

    let x_neg = e.lt(x, &zero);
    let y_neg = e.lt(y, &zero);
    let a1 = e.abs(x);
    let a2 = e.abs(y);

    let x2 = e.div(&a2, &sin60);
    let x2_half = e.mul(&x2, &half);
    let x1 = e.add(&a1, &x2_half);

    let m1 = e.floor_nonneg(&x1);
    let m2 = e.floor_nonneg(&x2);
    let r1 = e.sub(&x1, &m1);
    let r2 = e.sub(&x2, &m2);

    let c_half = e.lt(&r1, &half);
    let c_third = e.lt(&r1, &third);
    let c_two_thirds = e.lt(&r1, &two_thirds);

    let one_plus_r1 = e.add(&one, &r1);
    let t_half = e.mul(&one_plus_r1, &half);
    let t_1m = e.sub(&one, &r1);
    let t_2r = e.mul(&two, &r1);
    let t_2rm1 = e.sub(&t_2r, &one);
    let t_r1h = e.mul(&r1, &half);

    let c_a = e.lt(&r2, &t_half);
    let c_j = e.lt(&r2, &t_1m); // shared by regions B and C
    let c_2r = e.lt(&r2, &t_2r);
    let c_lo = e.lt(&t_2rm1, &r2);
    let c_d = e.lt(&r2, &t_r1h);

    // increments by fractional-part region:
    //   A (r1 < 1/3), B (1/3 <= r1 < 1/2), C (1/2 <= r1 < 2/3), D (rest)
    let incj_a = e.not(&c_a);
    let incj_bc = e.not(&c_j);
    let incj_d = e.not(&c_d);
    let incj_lo = e.select_cond(&c_third, &incj_a, &incj_bc);
    let incj_hi = e.select_cond(&c_two_thirds, &incj_bc, &incj_d);
    let inc_j = e.select_cond(&c_half, &incj_lo, &incj_hi);

    // i: never in A, always in D
    let not_cj = e.not(&c_j);
    let inci_b = e.and(&not_cj, &c_2r);
    let in_c_band = e.and(&c_lo, &c_j);
    let inci_c = e.not(&in_c_band);
    let c_false = e.const_cond(false);
    let c_true = e.const_cond(true);
    let inci_lo = e.select_cond(&c_third, &c_false, &inci_b);
    let inci_hi = e.select_cond(&c_two_thirds, &inci_c, &c_true);
    let inc_i = e.select_cond(&c_half, &inci_lo, &inci_hi);

    let m1p1 = e.add(&m1, &one);
    let m2p1 = e.add(&m2, &one);
    let i0 = e.select(&inc_i, &m1p1, &m1);
    let j0 = e.select(&inc_j, &m2p1, &m2);

    // fold across the axes: x < 0 maps i to j - i; y < 0 subtracts j from i
    // and negates j (as 0 - j, so no negative zero leaks into the outputs)
    let j_minus_i = e.sub(&j0, &i0);
    let i1 = e.select(&x_neg, &j_minus_i, &i0);
    let i_minus_j = e.sub(&i1, &j0);
    let i2 = e.select(&y_neg, &i_minus_j, &i1);
    let neg_j = e.sub(&zero, &j0);
    let j2 = e.select(&y_neg, &neg_j, &j0);

    // normalize: subtract min(i, j, 0)
    let i_lt_j = e.lt(&i2, &j2);
    let mn_ij = e.select(&i_lt_j, &i2, &j2);
    let mn_neg = e.lt(&mn_ij, &zero);
    let mn = e.select(&mn_neg, &mn_ij, &zero);
    let i_n = e.sub(&i2, &mn);
    let j_n = e.sub(&j2, &mn);
    let k_n = e.sub(&zero, &mn);
    (i_n, j_n, k_n)
}

/// Native-float engine: the expected-value mirror of the circuit.
pub struct PlainEngine<F: NativeFloat> {
    _marker: std::marker::PhantomData<F>,
}

impl<F: NativeFloat> PlainEngine<F> {
    pub fn new() -> Self {
        PlainEngine {
            _marker: std::marker::PhantomData,
        }
    }
}

impl<F: NativeFloat> Default for PlainEngine<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: NativeFloat> FloatEngine for PlainEngine<F> {
    type Val = F;
    type Cond = bool;
    type FaceSel = usize;

    fn constant(&mut self, v: f64) -> F {
        F::from_f64(v)
    }
    fn add(&mut self, a: &F, b: &F) -> F {
        a.add(*b)
    }
    fn sub(&mut self, a: &F, b: &F) -> F {
        a.sub(*b)
    }
    fn mul(&mut self, a: &F, b: &F) -> F {
        a.mul(*b)
    }
    fn div(&mut self, a: &F, b: &F) -> F {
        a.div(*b)
    }
    fn sqrt(&mut self, a: &F) -> F {
        a.sqrt()
    }
    fn abs(&mut self, a: &F) -> F {
        a.abs()
    }
    fn lt(&mut self, a: &F, b: &F) -> bool {
        *a < *b
    }
    fn is_val_zero(&mut self, a: &F) -> bool {
        *a == F::zero()
    }
    fn and(&mut self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn or(&mut self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn not(&mut self, a: &bool) -> bool {
        !*a
    }
    fn const_cond(&mut self, b: bool) -> bool {
        b
    }
    fn select(&mut self, c: &bool, t: &F, f: &F) -> F {
        if *c {
            *t
        } else {
            *f
        }
    }
    fn select_cond(&mut self, c: &bool, t: &bool, f: &bool) -> bool {
        if *c {
            *t
        } else {
            *f
        }
    }
    fn floor_nonneg(&mut self, a: &F) -> F {
        a.floor()
    }
    fn argmin(&mut self, vals: &[F]) -> (usize, F) {
        let mut best = 0usize;
        let mut best_val = vals[0];
        for (f, v) in vals.iter().enumerate().skip(1) {
            if *v < best_val {
                best = f;
                best_val = *v;
            }
        }
        (best, best_val)
    }
    fn face_const(&mut self, sel: &usize, table: &[f64; NUM_FACES]) -> F {
        F::from_f64(table[*sel])
    }
}

/// Computes the half-angle advice for one angle, sin/cos/tan evaluated in
/// doubles and rounded once to the target precision; beta is the exact
/// in-precision product 2*gamma*delta.
pub fn half_angle<F: NativeFloat>(angle_rad: f64) -> HalfAngle<F> {
    let h = angle_rad / 2.0;
    let gamma = F::from_f64(h.sin());
    let delta = F::from_f64(h.cos());
    let alpha = F::from_f64(h.tan());
    let beta = F::from_f64(2.0).mul(gamma).mul(delta);
    HalfAngle {
        alpha,
        beta,
        gamma,
        delta,
    }
}

/// Prover-side inputs: the location as floats plus all half-angle advice.
#[derive(Clone, Copy, Debug)]
pub struct ZklpWitness<F: NativeFloat> {
    pub lat: F,
    pub lng: F,
    pub hints: ZklpHints<F>,
}

/// Converts degrees to the witness, rejecting out-of-range coordinates.
pub fn prepare_witness<F: NativeFloat>(
    lat_deg: f64,
    lng_deg: f64,
) -> Result<ZklpWitness<F>, String> {
    if !(lat_deg.is_finite() && lng_deg.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    if !(-90.0..=90.0).contains(&lat_deg) {
        return Err(format!("latitude {lat_deg} out of [-90, 90]"));
    }
    if !(-180.0..=180.0).contains(&lng_deg) {
        return Err(format!("longitude {lng_deg} out of [-180, 180]"));
    }
    prepare_witness_rad(lat_deg.to_radians(), lng_deg.to_radians())
}

/// Radian-exact witness preparation (no degree conversion). A longitude of
/// exactly -pi wraps to just under +pi so the half-angle tangent stays
/// finite and single-valued.
pub fn prepare_witness_rad<F: NativeFloat>(
    lat: f64,
    lng: f64,
) -> Result<ZklpWitness<F>, String> {
    if !(lat.is_finite() && lng.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    if lat.abs() > std::f64::consts::FRAC_PI_2 {
        return Err(format!("latitude {lat} rad out of range"));
    }
    if lng.abs() > std::f64::consts::PI {
        return Err(format!("longitude {lng} rad out of range"));
    }
    let mut lng = lng;
    if lng <= -std::f64::consts::PI {
        lng = f64::from_bits(std::f64::consts::PI.to_bits() - 1);
    }
    Ok(ZklpWitness {
        lat: F::from_f64(lat),
        lng: F::from_f64(lng),
        hints: ZklpHints {
            lat: half_angle(lat),
            lng: half_angle(lng),
        },
    })
}

/// Output of the plain walk, in plain integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlainCell {
    pub face: u8,
    pub coord: CoordIjk,
}

pub struct PlainRun<F: NativeFloat> {
    pub cell: PlainCell,
    pub trace: MapTrace<F>,
}

/// Runs the map over native floats.
pub fn run_plain<F: NativeFloat>(wit: &ZklpWitness<F>, res: u8) -> PlainRun<F> {
    let mut e = PlainEngine::<F>::new();
    let rc = ResConsts::for_precision::<F>(res);
    let out = zklp_map(&mut e, &wit.hints, &rc);
    let to_i = |v: F| v.to_f64() as i64;
    PlainRun {
        cell: PlainCell {
            face: out.face as u8,
            coord: CoordIjk::new(to_i(out.i), to_i(out.j), to_i(out.k)),
        },
        trace: out.trace,
    }
}
