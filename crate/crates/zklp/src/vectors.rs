//! Compliance test vectors for the float gadgets: structured operand pairs
//! (special-class cross products, boundary mantissas, rounding-edge
//! patterns) topped up with seeded random bit patterns, with expected
//! results taken from hardware IEEE 754 arithmetic in round-to-nearest-even.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::native::NativeFloat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VecOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Less,
}

impl VecOp {
    pub fn name(self) -> &'static str {
        match self {
            VecOp::Add => "add",
            VecOp::Sub => "sub",
            VecOp::Mul => "mul",
            VecOp::Div => "div",
            VecOp::Sqrt => "sqrt",
            VecOp::Less => "less",
        }
    }

    pub fn from_name(s: &str) -> Option<VecOp> {
        Some(match s {
            "add" => VecOp::Add,
            "sub" => VecOp::Sub,
            "mul" => VecOp::Mul,
            "div" => VecOp::Div,
            "sqrt" => VecOp::Sqrt,
            "less" => VecOp::Less,
            _ => return None,
        })
    }

    pub fn is_unary(self) -> bool {
        self == VecOp::Sqrt
    }

    pub const ALL: [VecOp; 6] = [
        VecOp::Add,
        VecOp::Sub,
        VecOp::Mul,
        VecOp::Div,
        VecOp::Sqrt,
        VecOp::Less,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestVector {
    pub a: u64,
    pub b: u64,
    pub expected: u64,
}

/// Evaluates an op on raw bits with hardware arithmetic. The `less` result
/// is encoded as 0/1.
pub fn eval_op<F: NativeFloat>(op: VecOp, a: u64, b: u64) -> u64 {
    let x = F::from_bits_u64(a);
    let y = F::from_bits_u64(b);
    match op {
        VecOp::Add => x.add(y).to_bits_u64(),
        VecOp::Sub => x.sub(y).to_bits_u64(),
        VecOp::Mul => x.mul(y).to_bits_u64(),
        VecOp::Div => x.div(y).to_bits_u64(),
        VecOp::Sqrt => x.sqrt().to_bits_u64(),
        VecOp::Less => (x < y) as u64,
    }
}

/// The special-class operand set: signed zeros, infinities, NaN, subnormal
/// and normal extremes, and a few exact small values.
pub fn special_values<F: NativeFloat>() -> Vec<u64> {
    let p = F::PARAMS;
    let e_max = (1u64 << p.exp_bits) - 1;
    let m_max = (1u64 << p.man_bits) - 1;
    let sign = 1u64 << (p.exp_bits + p.man_bits);
    let enc = |e: u64, m: u64| (e << p.man_bits) | m;
    let mut vals = vec![
        0,                        // +0
        sign,                     // -0
        enc(e_max, 0),            // +inf
        sign | enc(e_max, 0),     // -inf
        enc(e_max, 1 << (p.man_bits - 1)), // NaN
        1,                        // smallest subnormal
        sign | 1,                 //   negative
        enc(0, m_max),            // largest subnormal
        sign | enc(0, m_max),     //
        enc(1, 0),                // smallest normal
        sign | enc(1, 0),         //
        enc(e_max - 1, m_max),    // largest normal
        sign | enc(e_max - 1, m_max),
    ];
    for v in [1.0f64, -1.0, 2.0, -2.0, 0.5, -0.5, 1.5, -1.5, 3.0] {
        vals.push(F::from_f64(v).to_bits_u64());
    }
    vals
}

fn random_pattern<F: NativeFloat>(rng: &mut ChaCha8Rng) -> u64 {
    let p = F::PARAMS;
    let total = p.total_bits();
    let mask = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
    match rng.gen_range(0..3) {
        // raw bits: uniformly over every class
        0 => rng.gen::<u64>() & mask,
        // mid-range exponents so binary ops hit the rounding paths
        1 => {
            let bias = (1u64 << (p.exp_bits - 1)) - 1;
            let e = rng.gen_range(bias.saturating_sub(p.man_bits as u64 + 4)..bias + p.man_bits as u64 + 4);
            let m = rng.gen::<u64>() & ((1 << p.man_bits) - 1);
            let s = rng.gen_range(0..2u64);
            (s << (p.exp_bits + p.man_bits)) | (e << p.man_bits) | m
        }
        // boundary mantissas: all ones, single bit, and exact halves
        _ => {
            let bias = (1u64 << (p.exp_bits - 1)) - 1;
            let e = rng.gen_range(1..2 * bias);
            let m = match rng.gen_range(0..4) {
                0 => (1 << p.man_bits) - 1,
                1 => 1 << rng.gen_range(0..p.man_bits),
                2 => ((1 << p.man_bits) - 1) & !1,
                _ => 0,
            };
            let s = rng.gen_range(0..2u64);
            (s << (p.exp_bits + p.man_bits)) | (e << p.man_bits) | m
        }
    }
}

/// Generates at least `count` vectors for an op. Binary ops mix the full
/// special cross product, rounding-tie pairs, near-cancellation pairs and
/// random patterns; sqrt leans on exact squares and随 random operands.
pub fn generate_vectors<F: NativeFloat>(op: VecOp, count: usize, seed: u64) -> Vec<TestVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (op as u64).wrapping_mul(0x9e3779b97f4a7c15));
    let specials = special_values::<F>();
    let mut out = Vec::with_capacity(count);
    let p = F::PARAMS;

    if op.is_unary() {
        for &a in &specials {
            out.push(TestVector {
                a,
                b: 0,
                expected: eval_op::<F>(op, a, 0),
            });
        }
        // exact squares
        for k in 0..40u32 {
            let a = F::from_f64((k as f64) * (k as f64)).to_bits_u64();
            out.push(TestVector {
                a,
                b: 0,
                expected: eval_op::<F>(op, a, 0),
            });
        }
        while out.len() < count {
            let a = random_pattern::<F>(&mut rng);
            out.push(TestVector {
                a,
                b: 0,
                expected: eval_op::<F>(op, a, 0),
            });
        }
        return out;
    }

    // full special-class cross product
    for &a in &specials {
        for &b in &specials {
            out.push(TestVector {
                a,
                b,
                expected: eval_op::<F>(op, a, b),
            });
        }
    }

    // rounding-edge pairs: b is exactly half an ulp of a (sticky-zero ties)
    // or a's negation perturbed by an ulp (catastrophic cancellation)
    let n_structured = count / 8;
    for _ in 0..n_structured {
        let a_bits = {
            let bias = (1u64 << (p.exp_bits - 1)) - 1;
            let e = rng.gen_range(bias - 8..bias + 8);
            let m = rng.gen::<u64>() & ((1 << p.man_bits) - 1);
            (e << p.man_bits) | m
        };
        let a = F::from_bits_u64(a_bits);
        let half_ulp = {
            let next = F::from_bits_u64(a_bits + 1);
            let ulp = next.sub(a);
            ulp.div(F::from_f64(2.0))
        };
        let b = match rng.gen_range(0..3) {
            0 => half_ulp,
            1 => F::from_f64(-1.0).mul(F::from_bits_u64(a_bits + rng.gen_range(0..3))),
            _ => half_ulp.mul(F::from_f64(3.0)),
        };
        out.push(TestVector {
            a: a.to_bits_u64(),
            b: b.to_bits_u64(),
            expected: eval_op::<F>(op, a.to_bits_u64(), b.to_bits_u64()),
        });
    }

    while out.len() < count {
        let a = random_pattern::<F>(&mut rng);
        let b = random_pattern::<F>(&mut rng);
        out.push(TestVector {
            a,
            b,
            expected: eval_op::<F>(op, a, b),
        });
    }
    out
}

fn hex_width<F: NativeFloat>() -> usize {
    F::PARAMS.total_bits() as usize / 4
}

/// One vector per line: `op hexbits_a hexbits_b hexbits_expected`; unary
/// ops omit b.
pub fn serialize_vectors<F: NativeFloat>(op: VecOp, vectors: &[TestVector]) -> String {
    let w = hex_width::<F>();
    let mut out = format!("zklp-vectors v1 {} {}\n", F::NAME, op.name());
    for v in vectors {
        if op.is_unary() {
            out.push_str(&format!("{} {:0w$x} {:0w$x}\n", op.name(), v.a, v.expected));
        } else {
            out.push_str(&format!(
                "{} {:0w$x} {:0w$x} {:0w$x}\n",
                op.name(),
                v.a,
                v.b,
                v.expected
            ));
        }
    }
    out
}

#[derive(Debug)]
pub struct VectorFile {
    pub precision: String,
    pub op: VecOp,
    pub vectors: Vec<TestVector>,
}

pub fn deserialize_vectors(text: &str) -> Result<VectorFile, String> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or("empty vector file")?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "zklp-vectors" || toks[1] != "v1" {
        return Err(format!("unsupported vector file header: {header:?}"));
    }
    let precision = toks[2].to_string();
    let op = VecOp::from_name(toks[3]).ok_or_else(|| format!("unknown op {:?}", toks[3]))?;
    let mut vectors = Vec::new();
    for (n, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let want = if op.is_unary() { 3 } else { 4 };
        if toks.len() != want || toks[0] != op.name() {
            return Err(format!("line {}: malformed record", n + 1));
        }
        let parse = |s: &str, what: &str| {
            u64::from_str_radix(s, 16).map_err(|_| format!("line {}: bad {what}", n + 1))
        };
        let a = parse(toks[1], "operand a")?;
        let (b, expected) = if op.is_unary() {
            (0, parse(toks[2], "expected")?)
        } else {
            (parse(toks[2], "operand b")?, parse(toks[3], "expected")?)
        };
        vectors.push(TestVector { a, b, expected });
    }
    Ok(VectorFile {
        precision,
        op,
        vectors,
    })
}

/// Second evaluation pass: recomputes every expected value on hardware and
/// reports the index of the first mismatch.
pub fn verify_vectors<F: NativeFloat>(op: VecOp, vectors: &[TestVector]) -> Result<(), usize> {
    for (i, v) in vectors.iter().enumerate() {
        let again = eval_op::<F>(op, v.a, v.b);
        let same = if op == VecOp::Less {
            again == v.expected
        } else {
            F::from_bits_u64(again).same_class_bits(F::from_bits_u64(v.expected))
        };
        if !same {
            return Err(i);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specials_cover_the_required_classes() {
        let s = special_values::<f64>();
        assert!(s.len() >= 13);
        let floats: Vec<f64> = s.iter().map(|&b| f64::from_bits(b)).collect();
        assert!(floats.iter().any(|f| f.is_nan()));
        assert!(floats.iter().any(|f| f.is_infinite() && f.is_sign_positive()));
        assert!(floats.iter().any(|f| f.is_infinite() && f.is_sign_negative()));
        assert!(floats.iter().any(|&f| f == 0.0 && f.is_sign_negative()));
        assert!(floats.iter().any(|f| f.is_subnormal()));
    }

    #[test]
    fn generation_is_deterministic_and_verified() {
        let a = generate_vectors::<f32>(VecOp::Mul, 2000, 42);
        let b = generate_vectors::<f32>(VecOp::Mul, 2000, 42);
        assert_eq!(a, b);
        assert!(a.len() >= 2000);
        verify_vectors::<f32>(VecOp::Mul, &a).unwrap();
    }

    #[test]
    fn serialization_roundtrips() {
        let v = generate_vectors::<f64>(VecOp::Sqrt, 700, 1);
        let text = serialize_vectors::<f64>(VecOp::Sqrt, &v);
        let parsed = deserialize_vectors(&text).unwrap();
        assert_eq!(parsed.op, VecOp::Sqrt);
        assert_eq!(parsed.precision, "fp64");
        assert_eq!(parsed.vectors, v);

        let bin = generate_vectors::<f32>(VecOp::Add, 500, 2);
        let text = serialize_vectors::<f32>(VecOp::Add, &bin);
        let parsed = deserialize_vectors(&text).unwrap();
        assert_eq!(parsed.vectors, bin);
    }

    #[test]
    fn corrupted_line_is_reported_with_number() {
        let v = generate_vectors::<f32>(VecOp::Add, 300, 3);
        let mut text = serialize_vectors::<f32>(VecOp::Add, &v);
        text.push_str("add zzzz 0000 0000\n");
        let err = deserialize_vectors(&text).unwrap_err();
        assert!(err.contains("bad operand a"), "{err}");
    }
}
