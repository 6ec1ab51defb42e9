//! The location circuit against its plain mirror and the reference
//! pipeline: bit-exact intermediate agreement, edge behavior, soundness
//! probes, and structural invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zkfp::cs::{ConstraintSystem, Mode};
use zkfp::gadgets::float::{FloatCtx, FloatParams};
use zklp::circuit::{build_circuit, count_constraints, install_tables_for, CircuitEngine};
use zklp::ijk::CoordIjk;
use zklp::pipeline::{
    half_angle, prepare_witness, run_plain, zklp_map, HalfAngle, PlainCell, PlainEngine,
    ResConsts, ZklpHints, ZklpWitness,
};
use zklp::reference;
use zklp::GeoPoint;

fn circuit_hints(fx: &mut FloatCtx, wit: &ZklpWitness<f64>) -> ZklpHints<zkfp::FloatVar> {
    let load = |fx: &mut FloatCtx, h: &HalfAngle<f64>| HalfAngle {
        alpha: fx.alloc_input(h.alpha.to_bits()).unwrap(),
        beta: fx.alloc_input(h.beta.to_bits()).unwrap(),
        gamma: fx.alloc_input(h.gamma.to_bits()).unwrap(),
        delta: fx.alloc_input(h.delta.to_bits()).unwrap(),
    };
    ZklpHints {
        lat: load(fx, &wit.hints.lat),
        lng: load(fx, &wit.hints.lng),
    }
}

/// Every intermediate of the circuit walk must equal the plain mirror
/// bit for bit.
#[test]
fn circuit_trace_matches_plain_mirror_bitwise() {
    let points = [
        (48.8566, 2.3522),
        (0.0, 0.0),
        (89.9, 45.0),
        (-45.5, -120.25),
        (13.37, 103.86),
    ];
    for (lat, lng) in points {
        for res in [0u8, 7, 15] {
            let wit = prepare_witness::<f64>(lat, lng).unwrap();
            let plain = run_plain(&wit, res);

            let mut cs = ConstraintSystem::new(Mode::WitnessGen);
            let tables = install_tables_for(&mut cs, FloatParams::FP64);
            let mut fx = FloatCtx::new(&mut cs, tables, FloatParams::FP64);
            let hints = circuit_hints(&mut fx, &wit);
            let rc = ResConsts::for_precision::<f64>(res);
            let out = {
                let mut eng = CircuitEngine { fx: &mut fx };
                zklp_map(&mut eng, &hints, &rc)
            };

            let bits = |v: &zkfp::FloatVar| FloatCtx::to_bits(&cs, FloatParams::FP64, v);
            assert_eq!(bits(&out.trace.x), plain.trace.x.to_bits(), "x at {lat},{lng} res {res}");
            assert_eq!(bits(&out.trace.y), plain.trace.y.to_bits(), "y");
            assert_eq!(bits(&out.trace.z), plain.trace.z.to_bits(), "z");
            assert_eq!(bits(&out.trace.d2), plain.trace.d2.to_bits(), "d2");
            assert_eq!(bits(&out.trace.r), plain.trace.r.to_bits(), "r");
            assert_eq!(bits(&out.trace.x2d), plain.trace.x2d.to_bits(), "x2d");
            assert_eq!(bits(&out.trace.y2d), plain.trace.y2d.to_bits(), "y2d");
            let iv = f64::from_bits(bits(&out.i)) as i64;
            let jv = f64::from_bits(bits(&out.j)) as i64;
            let kv = f64::from_bits(bits(&out.k)) as i64;
            assert_eq!(CoordIjk::new(iv, jv, kv), plain.cell.coord);
            let face = cs.eval(&out.face.index).to_u64().unwrap() as u8;
            assert_eq!(face, plain.cell.face);
            assert!(cs.finalize().satisfied);
        }
    }
}

#[test]
fn cartesian_conversion_examples() {
    // equator / prime meridian: (1, 0, 0)
    let wit = prepare_witness::<f64>(0.0, 0.0).unwrap();
    let out = run_plain(&wit, 0);
    assert_eq!(out.trace.x, 1.0);
    assert_eq!(out.trace.y, 0.0);
    assert_eq!(out.trace.z, 0.0);

    // near the pole: z -> 1, x,y -> 0 within rounding of the hints
    let wit = prepare_witness::<f64>(90.0, 0.0).unwrap();
    let out = run_plain(&wit, 0);
    assert!((out.trace.z - 1.0).abs() < 1e-15);
    assert!(out.trace.x.abs() < 1e-15 && out.trace.y.abs() < 1e-15);
}

#[test]
fn face_centers_select_themselves() {
    let d = zklp::faces::face_data();
    for (f, fc) in d.faces.iter().enumerate() {
        let wit = ZklpWitness::<f64> {
            lat: fc.lat,
            lng: fc.lng,
            hints: ZklpHints {
                lat: half_angle(fc.lat),
                lng: half_angle(fc.lng),
            },
        };
        let out = run_plain(&wit, 0);
        assert_eq!(out.cell.face, f as u8, "face {f}");
        // exactly at the center the short-circuit yields the origin cell
        if out.trace.d2 == 0.0 {
            assert_eq!(out.cell.coord, CoordIjk::new(0, 0, 0));
        }
        // and d2 is fuzzy-zero in every case
        assert!(out.trace.d2.abs() < 1e-28, "face {f}: d2 = {}", out.trace.d2);
    }
}

#[test]
fn radial_scale_steps_by_seven() {
    let wit = prepare_witness::<f64>(20.0, 30.0).unwrap();
    let r0 = run_plain(&wit, 0).trace.r;
    let r2 = run_plain(&wit, 2).trace.r;
    assert!((r2 / r0 - 7.0).abs() < 1e-12);
}

/// The float-domain quantizer in the shared tree must agree with the
/// integer-domain reference port on random planar points, and on the axis
/// example cells.
#[test]
fn quantizer_matches_reference_on_random_planar_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut eng = PlainEngine::<f64>::new();
    let quantize = |e: &mut PlainEngine<f64>, x: f64, y: f64| {
        let (i, j, k) = zklp::pipeline::hex2d_to_ijk(e, &x, &y);
        CoordIjk::new(i as i64, j as i64, k as i64)
    };
    assert_eq!(quantize(&mut eng, 0.0, 0.0), CoordIjk::new(0, 0, 0));
    assert_eq!(quantize(&mut eng, 1.0, 0.0), CoordIjk::new(1, 0, 0));
    for _ in 0..10_000 {
        let x: f64 = (rng.gen::<f64>() - 0.5) * 40.0;
        let y: f64 = (rng.gen::<f64>() - 0.5) * 40.0;
        let expect = zklp::ijk::hex2d_to_coord_ijk(x, y);
        assert_eq!(quantize(&mut eng, x, y), expect, "({x}, {y})");
    }
}

#[test]
fn paris_matches_reference_and_satisfies() {
    let p = GeoPoint::from_degrees(48.8566, 2.3522);
    let expected = reference::latlng_to_ijk(&p, 9);
    // frozen: this cell address is cross-checked against the independent
    // grid port by the oracle tests
    assert_eq!(expected.face, 3);
    assert_eq!(expected.coord, CoordIjk::new(8916, 0, 5963));
    let run = zklp::prove_cell::<f64>(48.8566, 2.3522, 9).unwrap();
    assert!(run.report.satisfied);
    assert_eq!(run.cell.face, expected.face);
    assert_eq!(run.cell.coord, expected.coord);
}

#[test]
fn tampered_public_output_unsatisfied() {
    let wit = prepare_witness::<f64>(48.8566, 2.3522).unwrap();
    let honest = run_plain(&wit, 9).cell;
    let tampered = PlainCell {
        face: honest.face,
        coord: CoordIjk::new(honest.coord.i + 1, honest.coord.j, honest.coord.k),
    };
    let run = build_circuit::<f64>(Mode::WitnessGen, &wit, 9, Some(tampered)).unwrap();
    assert!(!run.report.satisfied);

    let wrong_face = PlainCell {
        face: (honest.face + 1) % 20,
        coord: honest.coord,
    };
    let run = build_circuit::<f64>(Mode::WitnessGen, &wit, 9, Some(wrong_face)).unwrap();
    assert!(!run.report.satisfied);
}

#[test]
fn out_of_range_coordinates_rejected_before_building() {
    assert!(prepare_witness::<f64>(91.0, 0.0).is_err());
    assert!(prepare_witness::<f64>(0.0, 181.0).is_err());
    assert!(prepare_witness::<f64>(f64::NAN, 0.0).is_err());
    let wit = prepare_witness::<f64>(0.0, 0.0).unwrap();
    assert!(build_circuit::<f64>(Mode::WitnessGen, &wit, 16, None).is_err());
}

#[test]
fn constraint_counts_constant_across_resolutions() {
    let base = count_constraints::<f64>(0).unwrap();
    for res in 1..=15u8 {
        let s = count_constraints::<f64>(res).unwrap();
        assert_eq!(s.native_constraints, base.native_constraints, "res {res}");
        assert_eq!(s.lookup_constraints, base.lookup_constraints, "res {res}");
        assert_eq!(s.num_variables, base.num_variables, "res {res}");
    }
}

#[test]
fn emitted_gadgets_are_trig_free() {
    let run = zklp::prove_cell::<f64>(10.0, 20.0, 5).unwrap();
    let allowed = [
        "fadd", "fsub", "fmul", "fdiv", "fsqrt", "fcmp", "fselect", "floor",
    ];
    for kind in &run.gadget_kinds {
        assert!(allowed.contains(kind), "unexpected gadget kind {kind}");
    }
    assert!(run.gadget_kinds.contains(&"fsqrt"));
    assert!(run.gadget_kinds.contains(&"fcmp"));
}

/// Nudging each half-angle hint by one ulp (while the predicate still
/// holds) must not move the emitted cell.
#[test]
fn hints_perturbed_at_last_ulp_keep_the_cell() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let corpus = zklp::corpus::generate_corpus(2, 4, 4);
    for rec in corpus.records.iter().step_by(97) {
        let wit = prepare_witness::<f64>(rec.lat.to_degrees(), rec.lng.to_degrees()).unwrap();
        let base = run_plain(&wit, 4).cell;
        for _ in 0..4 {
            let mut w = wit;
            let which = rng.gen_range(0..6);
            let delta = if rng.gen_bool(0.5) { 1i64 } else { -1 };
            let bump = |v: f64| f64::from_bits((v.to_bits() as i64 + delta) as u64);
            match which {
                0 => w.hints.lat.beta = bump(w.hints.lat.beta),
                1 => w.hints.lat.gamma = bump(w.hints.lat.gamma),
                2 => w.hints.lat.delta = bump(w.hints.lat.delta),
                3 => w.hints.lng.beta = bump(w.hints.lng.beta),
                4 => w.hints.lng.gamma = bump(w.hints.lng.gamma),
                _ => w.hints.lng.delta = bump(w.hints.lng.delta),
            }
            let moved = run_plain(&w, 4).cell;
            assert_eq!(moved, base, "hint {which} delta {delta} moved the cell");
            // and the circuit still accepts the perturbed witness
            let run = build_circuit::<f64>(Mode::WitnessGen, &w, 4, None).unwrap();
            assert!(run.report.satisfied);
        }
    }
}

#[test]
fn count_only_and_witness_modes_agree_on_shape() {
    let wit = prepare_witness::<f64>(48.8566, 2.3522).unwrap();
    let a = build_circuit::<f64>(Mode::WitnessGen, &wit, 9, None).unwrap();
    let b = build_circuit::<f64>(Mode::CountOnly, &wit, 9, None).unwrap();
    assert_eq!(
        a.report.stats.native_constraints,
        b.report.stats.native_constraints
    );
    assert_eq!(
        a.report.stats.lookup_constraints,
        b.report.stats.lookup_constraints
    );
    assert!(a.report.unconstrained_hints.is_empty());
}
