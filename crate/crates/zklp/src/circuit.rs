//! The location-to-cell circuit: private coordinates and half-angle advice
//! in, public (res, face, i, j, k) out, built from float gadgets only — no
//! trigonometric or polynomial-approximation gadgets anywhere.

use zkfp::cs::{ConstraintSystem, Lc, Mode};
use zkfp::gadgets::float::{FloatCtx, FloatParams, FloatVar};
use zkfp::gadgets::int::{self, Tables};
use zkfp::gadgets::{and, is_eq, or, select, select_bool, Bool};
use zkfp::{Fr, Report};

use crate::faces::NUM_FACES;
use crate::native::NativeFloat;
use crate::pipeline::{
    run_plain, zklp_map, FloatEngine, PlainCell, ResConsts, ZklpHints, ZklpWitness,
};

/// Fuzzy-equality tolerance for the half-angle predicate: ~2^8 ulps of 1.0
/// in each precision.
pub fn identity_tolerance(params: FloatParams) -> f64 {
    if params.man_bits == 23 {
        2.0f64.powi(-17)
    } else {
        2.0f64.powi(-44)
    }
}

/// Tables sized per precision: 8-bit range chunks; the power table covers
/// 32 exponents for binary32 and 64 for binary64.
pub fn install_tables_for(cs: &mut ConstraintSystem, params: FloatParams) -> Tables {
    let k_max = if params.man_bits == 23 { 32 } else { 64 };
    int::install_tables(cs, 8, k_max)
}

/// Closest-face choice as a one-hot row plus the face index wire.
pub struct FaceSel {
    pub onehot: Vec<Bool>,
    pub index: Lc,
}

/// Gadget-backed engine for the shared map.
pub struct CircuitEngine<'a, 'cs> {
    pub fx: &'a mut FloatCtx<'cs>,
}

impl CircuitEngine<'_, '_> {
    fn bits_of(&self, v: f64) -> u64 {
        if self.fx.params.man_bits == 23 {
            (v as f32).to_bits() as u64
        } else {
            v.to_bits()
        }
    }

    fn value_f64(&self, v: &FloatVar) -> f64 {
        let bits = FloatCtx::to_bits(self.fx.cs, self.fx.params, v);
        if self.fx.params.man_bits == 23 {
            f32::from_bits(bits as u32) as f64
        } else {
            f64::from_bits(bits)
        }
    }
}

impl FloatEngine for CircuitEngine<'_, '_> {
    type Val = FloatVar;
    type Cond = Bool;
    type FaceSel = FaceSel;

    fn constant(&mut self, v: f64) -> FloatVar {
        let bits = self.bits_of(v);
        self.fx.constant(bits)
    }
    fn add(&mut self, a: &FloatVar, b: &FloatVar) -> FloatVar {
        self.fx.add(a, b).expect("circuit build: add")
    }
    fn sub(&mut self, a: &FloatVar, b: &FloatVar) -> FloatVar {
        self.fx.sub(a, b).expect("circuit build: sub")
    }
    fn mul(&mut self, a: &FloatVar, b: &FloatVar) -> FloatVar {
        self.fx.mul(a, b).expect("circuit build: mul")
    }
    fn div(&mut self, a: &FloatVar, b: &FloatVar) -> FloatVar {
        self.fx.div(a, b).expect("circuit build: div")
    }
    fn sqrt(&mut self, a: &FloatVar) -> FloatVar {
        self.fx.sqrt(a).expect("circuit build: sqrt")
    }
    fn abs(&mut self, a: &FloatVar) -> FloatVar {
        self.fx.abs(a).expect("circuit build: abs")
    }
    fn lt(&mut self, a: &FloatVar, b: &FloatVar) -> Bool {
        self.fx.less_than(a, b).expect("circuit build: lt")
    }
    fn is_val_zero(&mut self, a: &FloatVar) -> Bool {
        let cs = &mut *self.fx.cs;
        let m0 = zkfp::gadgets::is_zero(cs, &a.man).expect("circuit build: is_zero");
        and(cs, &m0, &a.abn.not()).expect("circuit build: and")
    }
    fn and(&mut self, a: &Bool, b: &Bool) -> Bool {
        and(self.fx.cs, a, b).expect("circuit build: and")
    }
    fn or(&mut self, a: &Bool, b: &Bool) -> Bool {
        or(self.fx.cs, a, b).expect("circuit build: or")
    }
    fn not(&mut self, a: &Bool) -> Bool {
        a.not()
    }
    fn const_cond(&mut self, b: bool) -> Bool {
        Bool::constant(b)
    }
    fn select(&mut self, c: &Bool, t: &FloatVar, f: &FloatVar) -> FloatVar {
        self.fx.cs.note_gadget("fselect");
        self.fx.select_float(c, t, f).expect("circuit build: select")
    }
    fn select_cond(&mut self, c: &Bool, t: &Bool, f: &Bool) -> Bool {
        select_bool(self.fx.cs, c, t, f).expect("circuit build: select_cond")
    }

    /// Floor by advice: an integer witness v is bound exactly to a float
    /// via normalization, then v <= x < v+1 is enforced with float
    /// comparisons. NaN input leaves both comparisons false and the system
    /// unsatisfied.
    fn floor_nonneg(&mut self, a: &FloatVar) -> FloatVar {
        self.fx.cs.note_gadget("floor");
        let val = self.value_f64(a);
        let floored = if val.is_finite() && val >= 0.0 {
            (val.floor() as u64).min(1 << 25)
        } else {
            0
        };
        let bits = self.fx.params.man_bits.min(25);
        let v = Lc::from_var(self.fx.cs.alloc_witness(Fr::from_u64(floored)));
        let vf = self.fx.int_to_float(&v, bits).expect("circuit build: int_to_float");
        let not_below = self.fx.less_than(a, &vf).expect("circuit build: floor lower");
        self.fx
            .cs
            .enforce_zero(not_below.lc().clone())
            .expect("circuit build: floor lower bound");
        let one = self.constant(1.0);
        let vf1 = self.add(&vf, &one);
        let above = self.fx.less_than(a, &vf1).expect("circuit build: floor upper");
        self.fx
            .cs
            .enforce_zero(above.lc().clone() - &Lc::one())
            .expect("circuit build: floor upper bound");
        vf
    }

    fn argmin(&mut self, vals: &[FloatVar]) -> (FaceSel, FloatVar) {
        let mut best = vals[0].clone();
        let mut best_idx = Lc::zero();
        for (f, v) in vals.iter().enumerate().skip(1) {
            let lt = self.lt(v, &best);
            best = self.select(&lt, v, &best);
            let f_lc = Lc::constant(Fr::from_u64(f as u64));
            best_idx = select(self.fx.cs, &lt, &f_lc, &best_idx).expect("circuit build: argmin");
        }
        let mut onehot = Vec::with_capacity(vals.len());
        for f in 0..vals.len() {
            let f_lc = Lc::constant(Fr::from_u64(f as u64));
            let b = is_eq(self.fx.cs, &best_idx, &f_lc).expect("circuit build: onehot");
            onehot.push(b);
        }
        (
            FaceSel {
                onehot,
                index: best_idx,
            },
            best,
        )
    }

    /// One-hot dot product with per-face constants: pure linear
    /// combinations, no constraints.
    fn face_const(&mut self, sel: &FaceSel, table: &[f64; NUM_FACES]) -> FloatVar {
        let mut sign = Lc::zero();
        let mut exp = Lc::zero();
        let mut man = Lc::zero();
        for (f, b) in sel.onehot.iter().enumerate() {
            let c = self.fx.constant(self.bits_of(table[f]));
            let s_c = self.fx.cs.eval(c.sign.lc());
            let e_c = self.fx.cs.eval(&c.exp);
            let m_c = self.fx.cs.eval(&c.man);
            sign.add_assign_scaled(b.lc(), s_c);
            exp.add_assign_scaled(b.lc(), e_c);
            man.add_assign_scaled(b.lc(), m_c);
        }
        FloatVar {
            sign: Bool::from_constrained(sign),
            exp,
            man,
            abn: Bool::constant(false),
        }
    }
}

/// A built circuit instance: its verdict, stats, and the emitted cell.
pub struct ZklpRun {
    pub cell: PlainCell,
    pub report: Report,
    pub gadget_kinds: Vec<&'static str>,
}

/// Composes the full circuit for one witness. Public inputs are (res,
/// face, i, j, k); when `publics` is None the honest values are taken from
/// the plain mirror of the same witness.
pub fn build_circuit<F: NativeFloat>(
    mode: Mode,
    wit: &ZklpWitness<F>,
    res: u8,
    publics: Option<PlainCell>,
) -> Result<ZklpRun, String> {
    if res > 15 {
        return Err(format!("resolution {res} out of [0, 15]"));
    }
    let expected = publics.unwrap_or_else(|| run_plain(wit, res).cell);
    let c = expected.coord;
    if c.i < 0 || c.j < 0 || c.k < 0 {
        return Err("malformed expected cell".into());
    }

    let params = F::PARAMS;
    let mut cs = ConstraintSystem::new(mode);
    let tables = install_tables_for(&mut cs, params);

    // public inputs
    let res_pub = cs.alloc_public(Fr::from_u64(res as u64));
    let face_pub = cs.alloc_public(Fr::from_u64(expected.face as u64));
    let i_pub = cs.alloc_public(Fr::from_u64(c.i as u64));
    let j_pub = cs.alloc_public(Fr::from_u64(c.j as u64));
    let k_pub = cs.alloc_public(Fr::from_u64(c.k as u64));
    cs.enforce_zero(Lc::from_var(res_pub) - &Lc::constant(Fr::from_u64(res as u64)))
        .map_err(|e| e.to_string())?;

    let mut fx = FloatCtx::new(&mut cs, tables, params);

    // private inputs: the coordinates and the half-angle advice, all
    // shape-checked floats
    let lat = fx.alloc_input(wit.lat.to_bits_u64()).map_err(|e| e.to_string())?;
    let lng = fx.alloc_input(wit.lng.to_bits_u64()).map_err(|e| e.to_string())?;
    let alloc_half = |fx: &mut FloatCtx<'_>,
                      h: &crate::pipeline::HalfAngle<F>|
     -> Result<crate::pipeline::HalfAngle<FloatVar>, String> {
        Ok(crate::pipeline::HalfAngle {
            alpha: fx.alloc_input(h.alpha.to_bits_u64()).map_err(|e| e.to_string())?,
            beta: fx.alloc_input(h.beta.to_bits_u64()).map_err(|e| e.to_string())?,
            gamma: fx.alloc_input(h.gamma.to_bits_u64()).map_err(|e| e.to_string())?,
            delta: fx.alloc_input(h.delta.to_bits_u64()).map_err(|e| e.to_string())?,
        })
    };
    let hints = ZklpHints {
        lat: alloc_half(&mut fx, &wit.hints.lat)?,
        lng: alloc_half(&mut fx, &wit.hints.lng)?,
    };

    // domain constraints: finite coordinates within the geographic ranges
    let bits = |v: f64| {
        if params.man_bits == 23 {
            (v as f32).to_bits() as u64
        } else {
            v.to_bits()
        }
    };
    let assert_range = |fx: &mut FloatCtx<'_>, v: &FloatVar, lo: f64, hi: f64| -> Result<(), String> {
        fx.cs.enforce_zero(v.abn.lc().clone()).map_err(|e| e.to_string())?;
        let lo_c = fx.constant(bits(lo));
        let hi_c = fx.constant(bits(hi));
        let below = fx.less_than(v, &lo_c).map_err(|e| e.to_string())?;
        fx.cs.enforce_zero(below.lc().clone()).map_err(|e| e.to_string())?;
        let above = fx.less_than(&hi_c, v).map_err(|e| e.to_string())?;
        fx.cs.enforce_zero(above.lc().clone()).map_err(|e| e.to_string())?;
        Ok(())
    };
    assert_range(&mut fx, &lat, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)?;
    assert_range(&mut fx, &lng, -std::f64::consts::PI, std::f64::consts::PI)?;

    // the half-angle predicate, fuzzily: gamma^2 + delta^2 = 1,
    // delta*alpha = gamma, 2*gamma*delta = beta
    let tol_bits = bits(identity_tolerance(params));
    let tol = fx.constant(tol_bits);
    let one = fx.constant(bits(1.0));
    let two = fx.constant(bits(2.0));
    for h in [&hints.lat, &hints.lng] {
        let g2 = fx.mul(&h.gamma, &h.gamma).map_err(|e| e.to_string())?;
        let d2 = fx.mul(&h.delta, &h.delta).map_err(|e| e.to_string())?;
        let s = fx.add(&g2, &d2).map_err(|e| e.to_string())?;
        fx.assert_eq_fuzzy(&s, &one, &tol).map_err(|e| e.to_string())?;
        let da = fx.mul(&h.delta, &h.alpha).map_err(|e| e.to_string())?;
        fx.assert_eq_fuzzy(&da, &h.gamma, &tol).map_err(|e| e.to_string())?;
        let g2d = fx.mul(&two, &h.gamma).map_err(|e| e.to_string())?;
        let b = fx.mul(&g2d, &h.delta).map_err(|e| e.to_string())?;
        fx.assert_eq_fuzzy(&b, &h.beta, &tol).map_err(|e| e.to_string())?;
    }

    // the shared map tree over the gadget engine
    let rc = ResConsts::for_precision::<F>(res);
    let out = {
        let mut engine = CircuitEngine { fx: &mut fx };
        zklp_map(&mut engine, &hints, &rc)
    };

    // bind the public outputs: face index directly, the cell coordinates
    // through exact integer-to-float conversion
    fx.cs
        .enforce_zero(Lc::from_var(face_pub) - &out.face.index)
        .map_err(|e| e.to_string())?;
    let int_bits = params.man_bits.min(25);
    for (pub_var, val) in [(i_pub, &out.i), (j_pub, &out.j), (k_pub, &out.k)] {
        let f = fx
            .int_to_float(&Lc::from_var(pub_var), int_bits)
            .map_err(|e| e.to_string())?;
        fx.assert_eq_strict(&f, val).map_err(|e| e.to_string())?;
    }

    let report = cs.finalize();
    let mut kinds: Vec<&'static str> = cs.gadget_log().to_vec();
    kinds.sort();
    kinds.dedup();
    Ok(ZklpRun {
        cell: expected,
        report,
        gadget_kinds: kinds,
    })
}

/// Constraint counts for one resolution, built without witness values.
pub fn count_constraints<F: NativeFloat>(res: u8) -> Result<zkfp::Stats, String> {
    let wit = crate::pipeline::prepare_witness::<F>(0.0, 0.0)?;
    let run = build_circuit::<F>(Mode::CountOnly, &wit, res, None)?;
    Ok(run.report.stats)
}

/// Convenience wrapper: witness-checks one location end to end.
pub fn prove_cell<F: NativeFloat>(
    lat_deg: f64,
    lng_deg: f64,
    res: u8,
) -> Result<ZklpRun, String> {
    let wit = crate::pipeline::prepare_witness::<F>(lat_deg, lng_deg)?;
    build_circuit::<F>(Mode::WitnessGen, &wit, res, None)
}
