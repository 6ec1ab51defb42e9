//! LogUp-style lookup tables: set inclusion of a query vector in a table is
//! enforced in-circuit through the logarithmic-derivative identity
//!
//! ```text
//!   sum_i 1/(c - f_i)  =  sum_j o_j/(c - t_j)
//! ```
//!
//! evaluated at a transcript-derived challenge `c`, with multiplicities
//! `o_j` supplied as advice. Multi-column tables are compressed to single
//! field elements with a second challenge `rho` before the identity is
//! formed.
//!
//! The challenge here is a hash over a serialization of the table and all
//! query values. That is sound for a witness checker but is NOT a
//! substitute for a real Fiat-Shamir transcript inside a proof system.

use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::sync::Arc;

use crate::cs::{ConstraintSystem, Lc, Mode};
use crate::field::Fr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableId(pub usize);

/// The immutable part of a table, shared between systems.
pub struct TableSpec {
    pub name: String,
    pub width: usize,
    entries: Vec<Vec<Fr>>,
    entry_index: HashMap<Vec<u8>, usize>,
    entry_bytes: Vec<u8>,
}

fn tuple_key(tuple: &[Fr]) -> Vec<u8> {
    let mut key = Vec::with_capacity(tuple.len() * 32);
    for v in tuple {
        key.extend_from_slice(&v.to_raw_bytes());
    }
    key
}

impl TableSpec {
    pub fn new(name: String, width: usize, entries: Vec<Vec<Fr>>) -> TableSpec {
        assert!(width >= 1, "table width must be at least 1");
        let mut entry_index = HashMap::with_capacity(entries.len());
        let mut entry_bytes = Vec::with_capacity(entries.len() * width * 32);
        for (j, e) in entries.iter().enumerate() {
            assert_eq!(e.len(), width, "entry width mismatch in table {name}");
            entry_index.insert(tuple_key(e), j);
            for v in e {
                entry_bytes.extend_from_slice(&v.to_raw_bytes());
            }
        }
        TableSpec {
            name,
            width,
            entries,
            entry_index,
            entry_bytes,
        }
    }
}

pub struct LookupTable {
    pub spec: Arc<TableSpec>,
    queries: Vec<Vec<Lc>>,
    query_values: Vec<Vec<Fr>>,
    multiplicities: Vec<u64>,
}

impl LookupTable {
    pub fn new(spec: Arc<TableSpec>) -> LookupTable {
        let n = spec.entries.len();
        LookupTable {
            spec,
            queries: Vec::new(),
            query_values: Vec::new(),
            multiplicities: vec![0; n],
        }
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn width(&self) -> usize {
        self.spec.width
    }

    pub fn num_entries(&self) -> usize {
        self.spec.entries.len()
    }

    pub fn num_queries(&self) -> usize {
        self.queries.len()
    }

    pub(crate) fn push_query(&mut self, lcs: Vec<Lc>, values: Vec<Fr>, count: bool) {
        if count {
            // queries outside the table get no multiplicity; the identity
            // then fails at finalize, which is the point
            if let Some(&j) = self.spec.entry_index.get(&tuple_key(&values)) {
                self.multiplicities[j] += 1;
            }
        }
        self.queries.push(lcs);
        self.query_values.push(values);
    }

    /// One pass over the full transcript; per-challenge derivations hash
    /// only the seed plus a domain tag.
    fn transcript_seed(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"zkfp-logup-v1");
        h.update(self.spec.name.as_bytes());
        h.update((self.spec.width as u64).to_be_bytes());
        h.update((self.spec.entries.len() as u64).to_be_bytes());
        h.update(&self.spec.entry_bytes);
        h.update((self.query_values.len() as u64).to_be_bytes());
        for q in &self.query_values {
            for v in q {
                h.update(v.to_raw_bytes());
            }
        }
        h.finalize().into()
    }

    fn derive(seed: &[u8; 32], domain: &[u8], retry: u64) -> Fr {
        let mut h = Sha256::new();
        h.update(seed);
        h.update(domain);
        h.update(retry.to_be_bytes());
        let digest: [u8; 32] = h.finalize().into();
        Fr::from_be_bytes_reduce(&digest)
    }

    fn compress(&self, tuple: &[Fr], rho: Fr) -> Fr {
        let mut acc = Fr::ZERO;
        let mut pow = Fr::ONE;
        for v in tuple {
            acc += *v * pow;
            pow *= rho;
        }
        acc
    }

    /// Emits the in-circuit identity constraints. Returns how many lookup
    /// constraints were added: one per query, one per entry, one equality.
    pub(crate) fn emit_identity(&self, cs: &mut ConstraintSystem) -> usize {
        let seed = self.transcript_seed();
        let rho = if self.spec.width > 1 {
            Self::derive(&seed, b"rho", 0)
        } else {
            Fr::ZERO
        };

        let compressed_entries: Vec<Fr> = self
            .spec
            .entries
            .iter()
            .map(|e| self.compress(e, rho))
            .collect();
        let compressed_query_values: Vec<Fr> = self
            .query_values
            .iter()
            .map(|q| self.compress(q, rho))
            .collect();
        let compressed_query_lcs: Vec<Lc> = self
            .queries
            .iter()
            .map(|tuple| {
                let mut acc = Lc::zero();
                let mut pow = Fr::ONE;
                for lc in tuple {
                    acc.add_assign_scaled(lc, pow);
                    pow *= rho;
                }
                acc
            })
            .collect();

        // the challenge must not collide with any denominator
        let mut retry = 0u64;
        let c = loop {
            let c = Self::derive(&seed, b"challenge", retry);
            let collides = compressed_entries.iter().any(|&e| e == c)
                || compressed_query_values.iter().any(|&q| q == c);
            if !collides {
                break c;
            }
            retry += 1;
        };

        let mut count = 0usize;

        // per-query terms: (c - f_i) * inv_i = 1
        let mut inv_values: Vec<Fr> = compressed_query_values.iter().map(|&f| c - f).collect();
        Fr::batch_invert(&mut inv_values);
        let mut lhs = Lc::zero();
        for (lc, inv) in compressed_query_lcs.iter().zip(inv_values) {
            let inv_var = cs.alloc_internal(inv);
            let denom = Lc::constant(c) - lc;
            cs.emit_lookup_constraint(denom, Lc::from_var(inv_var), Lc::one());
            count += 1;
            lhs = lhs + &Lc::from_var(inv_var);
        }

        // per-entry terms: (c - t_j) * term_j = o_j, with o_j advice
        let mut denoms: Vec<Fr> = compressed_entries.iter().map(|&t| c - t).collect();
        Fr::batch_invert(&mut denoms);
        let mut rhs = Lc::zero();
        for (j, dinv) in denoms.into_iter().enumerate() {
            let o = if cs.mode() == Mode::WitnessGen {
                Fr::from_u64(self.multiplicities[j])
            } else {
                Fr::ZERO
            };
            let o_var = cs.alloc_internal(o);
            let term_var = cs.alloc_internal(o * dinv);
            cs.emit_lookup_constraint(
                Lc::constant(c - compressed_entries[j]),
                Lc::from_var(term_var),
                Lc::from_var(o_var),
            );
            count += 1;
            rhs = rhs + &Lc::from_var(term_var);
        }

        // the identity itself
        cs.emit_lookup_constraint(lhs - &rhs, Lc::one(), Lc::zero());
        count + 1
    }
}
