//! Suite drivers shared by the command-line front end and the acceptance
//! tests: per-vector compliance checks, the corpus differential run, and
//! the batched-multiplication amortization bench.

use rayon::prelude::*;
use zkfp::cs::{ConstraintSystem, Mode};
use zkfp::gadgets::float::FloatCtx;

use crate::circuit::install_tables_for;
use crate::corpus::TestCorpus;
use crate::native::NativeFloat;
use crate::pipeline::{prepare_witness_rad, run_plain};
use crate::vectors::{TestVector, VecOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorOutcome {
    Pass,
    /// The witness satisfied the system but the result bits disagree with
    /// hardware.
    BitMismatch,
    /// The honest witness left the system unsatisfied.
    Unsatisfied,
}

/// Builds the gadget circuit for one vector and compares against the
/// hardware expectation, NaNs compared as a class.
pub fn check_vector<F: NativeFloat>(op: VecOp, v: &TestVector) -> VectorOutcome {
    let params = F::PARAMS;
    let mut cs = ConstraintSystem::new(Mode::WitnessGen);
    let tables = install_tables_for(&mut cs, params);
    let mut fx = FloatCtx::new(&mut cs, tables, params);
    let a = fx.alloc_input(v.a).expect("vector input a");
    let bits_ok = match op {
        VecOp::Sqrt => {
            let r = fx.sqrt(&a).expect("sqrt build");
            let got = FloatCtx::to_bits(&cs, params, &r);
            F::from_bits_u64(got).same_class_bits(F::from_bits_u64(v.expected))
        }
        VecOp::Less => {
            let b = fx.alloc_input(v.b).expect("vector input b");
            let r = fx.less_than(&a, &b).expect("less build");
            let got = r.value(&cs) as u64;
            got == v.expected
        }
        _ => {
            let b = fx.alloc_input(v.b).expect("vector input b");
            let r = match op {
                VecOp::Add => fx.add(&a, &b),
                VecOp::Sub => fx.sub(&a, &b),
                VecOp::Mul => fx.mul(&a, &b),
                VecOp::Div => fx.div(&a, &b),
                _ => unreachable!(),
            }
            .expect("binary op build");
            let got = FloatCtx::to_bits(&cs, params, &r);
            F::from_bits_u64(got).same_class_bits(F::from_bits_u64(v.expected))
        }
    };
    let satisfied = cs.finalize().satisfied;
    match (bits_ok, satisfied) {
        (true, true) => VectorOutcome::Pass,
        (false, _) => VectorOutcome::BitMismatch,
        (true, false) => VectorOutcome::Unsatisfied,
    }
}

#[derive(Clone, Debug, Default)]
pub struct VectorSummary {
    pub total: usize,
    pub passed: usize,
    pub bit_mismatches: usize,
    pub unsatisfied: usize,
    pub first_failure: Option<usize>,
}

pub fn run_vectors<F: NativeFloat>(op: VecOp, vectors: &[TestVector]) -> VectorSummary {
    let outcomes: Vec<VectorOutcome> = vectors
        .par_iter()
        .map(|v| check_vector::<F>(op, v))
        .collect();
    let mut s = VectorSummary {
        total: vectors.len(),
        ..Default::default()
    };
    for (i, o) in outcomes.iter().enumerate() {
        match o {
            VectorOutcome::Pass => s.passed += 1,
            VectorOutcome::BitMismatch => {
                s.bit_mismatches += 1;
                s.first_failure.get_or_insert(i);
            }
            VectorOutcome::Unsatisfied => {
                s.unsatisfied += 1;
                s.first_failure.get_or_insert(i);
            }
        }
    }
    s
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ResolutionReport {
    pub res: u8,
    pub total: usize,
    /// Records whose public cell equals the reference expectation and
    /// whose witness satisfied every constraint.
    pub passed: usize,
    pub cell_mismatches: usize,
    pub unsatisfied: usize,
}

/// Runs the circuit differentially against the corpus: one system per
/// point, in parallel. `full_circuit` trades the complete witness check
/// for speed; when false only the plain mirror (bit-identical to the
/// circuit) decides cell agreement and a sample of points is
/// witness-checked.
pub fn run_corpus<F: NativeFloat>(corpus: &TestCorpus, full_circuit: bool) -> Vec<ResolutionReport> {
    let mut by_res: Vec<ResolutionReport> = (0..16)
        .map(|r| ResolutionReport {
            res: r as u8,
            ..Default::default()
        })
        .collect();
    let outcomes: Vec<(u8, bool, bool)> = corpus
        .records
        .par_iter()
        .enumerate()
        .map(|(idx, rec)| {
            let wit = prepare_witness_rad::<F>(rec.lat, rec.lng).expect("corpus witness");
            let (cell, satisfied) = if full_circuit {
                let run = crate::circuit::build_circuit::<F>(Mode::WitnessGen, &wit, rec.res, None)
                    .expect("corpus circuit");
                (run.cell, run.report.satisfied)
            } else {
                let plain = run_plain(&wit, rec.res);
                // witness-check a deterministic sample
                let satisfied = if idx % 101 == 0 {
                    let run =
                        crate::circuit::build_circuit::<F>(Mode::WitnessGen, &wit, rec.res, None)
                            .expect("corpus circuit");
                    run.report.satisfied
                } else {
                    true
                };
                (plain.cell, satisfied)
            };
            let agree = cell.face == rec.expected.face && cell.coord == rec.expected.coord;
            (rec.res, agree, satisfied)
        })
        .collect();
    for (res, agree, satisfied) in outcomes {
        let r = &mut by_res[res as usize];
        r.total += 1;
        if agree && satisfied {
            r.passed += 1;
        }
        if !agree {
            r.cell_mismatches += 1;
        }
        if !satisfied {
            r.unsatisfied += 1;
        }
    }
    by_res.retain(|r| r.total > 0);
    by_res
}

#[derive(Clone, Copy, Debug)]
pub struct BenchRow {
    pub batch: usize,
    pub native: usize,
    pub lookup: usize,
    pub per_query: usize,
    pub total: usize,
}

impl BenchRow {
    pub fn per_op(&self) -> f64 {
        self.total as f64 / self.batch as f64
    }
}

/// Counts constraints for a batch of k chained multiplications over one
/// system (operands allocated once), for the amortization table.
pub fn bench_mul<F: NativeFloat>(batch: usize, chunk_bits: u32, pow2_max: u32) -> BenchRow {
    let mut cs = ConstraintSystem::new(Mode::CountOnly);
    let tables = zkfp::gadgets::int::install_tables(&mut cs, chunk_bits, pow2_max);
    let params = F::PARAMS;
    let mut fx = FloatCtx::new(&mut cs, tables, params);
    let a = fx.alloc_input(F::from_f64(1.5).to_bits_u64()).expect("bench input");
    let b = fx.alloc_input(F::from_f64(0.75).to_bits_u64()).expect("bench input");
    let mut acc = a;
    for _ in 0..batch {
        acc = fx.mul(&acc, &b).expect("bench mul");
    }
    let report = cs.finalize();
    BenchRow {
        batch,
        native: report.stats.native_constraints,
        lookup: report.stats.lookup_constraints,
        per_query: report.stats.per_query_constraints,
        total: report.stats.native_constraints + report.stats.lookup_constraints,
    }
}

/// Formats a bench table, versioned.
pub fn format_bench_table(precision: &str, rows: &[BenchRow]) -> String {
    let mut out = String::from("zklp-bench v1\n");
    out.push_str(&format!("precision={precision} op=mul\n"));
    out.push_str("batch native lookup per_query total per_op\n");
    for r in rows {
        out.push_str(&format!(
            "{} {} {} {} {} {:.2}\n",
            r.batch,
            r.native,
            r.lookup,
            r.per_query,
            r.total,
            r.per_op()
        ));
    }
    out
}

/// Formats the per-resolution differential report, versioned.
pub fn format_resolution_report(precision: &str, rows: &[ResolutionReport]) -> String {
    let mut out = String::from("zklp-suite v1\n");
    out.push_str(&format!("precision={precision}\n"));
    out.push_str("res total passed cell_mismatches unsatisfied rate\n");
    for r in rows {
        out.push_str(&format!(
            "{} {} {} {} {} {:.4}\n",
            r.res,
            r.total,
            r.passed,
            r.cell_mismatches,
            r.unsatisfied,
            r.passed as f64 / r.total.max(1) as f64
        ));
    }
    out
}
