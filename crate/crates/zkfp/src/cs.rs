//! R1CS constraint builder with eager witness generation, a hint registry
//! for nondeterministic advice, and satisfiability checking.
//!
//! The system is single-writer while building. `finalize` emits the lookup
//! identity constraints, checks every constraint under the witness and
//! freezes the system.

use smallvec::SmallVec;
use std::collections::HashMap;

use crate::field::Fr;
use crate::lookup::{LookupTable, TableId};
use crate::Error;

/// Ordinal into the witness vector. Index 0 is the constant-one wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variable(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    ConstantOne,
    Public,
    Witness,
}

pub type Terms = SmallVec<[(u32, Fr); 3]>;

/// Sum of coefficient-weighted variables. Constants ride on the one-wire.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Lc {
    pub terms: Terms,
}

impl Lc {
    pub fn zero() -> Lc {
        Lc {
            terms: SmallVec::new(),
        }
    }

    pub fn constant(v: Fr) -> Lc {
        if v.is_zero() {
            Lc::zero()
        } else {
            let mut terms = SmallVec::new();
            terms.push((0, v));
            Lc { terms }
        }
    }

    pub fn one() -> Lc {
        Lc::constant(Fr::ONE)
    }

    pub fn from_var(v: Variable) -> Lc {
        let mut terms = SmallVec::new();
        terms.push((v.0, Fr::ONE));
        Lc { terms }
    }

    /// Scales every coefficient. Zero coefficients are kept so the term
    /// structure (and with it downstream constraint shapes) never depends
    /// on constant values.
    pub fn scale(&self, k: Fr) -> Lc {
        Lc {
            terms: self.terms.iter().map(|&(i, c)| (i, c * k)).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Lc, k: Fr) {
        for &(i, c) in &other.terms {
            self.terms.push((i, c * k));
        }
    }

    /// Is this a single occurrence of the constant-one wire scaled by k?
    pub fn as_constant(&self) -> Option<Fr> {
        if self.terms.is_empty() {
            return Some(Fr::ZERO);
        }
        if self.terms.len() == 1 && self.terms[0].0 == 0 {
            return Some(self.terms[0].1);
        }
        None
    }

    fn max_var(&self) -> u32 {
        self.terms.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }
}

impl From<Variable> for Lc {
    fn from(v: Variable) -> Lc {
        Lc::from_var(v)
    }
}

impl std::ops::Add<&Lc> for Lc {
    type Output = Lc;
    fn add(mut self, rhs: &Lc) -> Lc {
        self.terms.extend_from_slice(&rhs.terms);
        self
    }
}

impl std::ops::Sub<&Lc> for Lc {
    type Output = Lc;
    fn sub(mut self, rhs: &Lc) -> Lc {
        self.add_assign_scaled(rhs, -Fr::ONE);
        self
    }
}

/// Satisfied iff eval(a) * eval(b) = eval(c).
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub a: Lc,
    pub b: Lc,
    pub c: Lc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Values are carried and the finalize pass judges satisfaction.
    WitnessGen,
    /// Structure only: hints run on zeros, constraint bodies are discarded,
    /// finalize reports counts without checking.
    CountOnly,
}

pub type HintFn = fn(&[Fr]) -> Result<Vec<Fr>, String>;

struct HintEntry {
    f: HintFn,
    /// Fixed output arity, or None when the call site decides (the count
    /// must still depend only on build-time constants, never on values).
    n_outputs: Option<usize>,
    /// Index into the invocation counters.
    id: usize,
}

/// Witness-tamper hook for soundness probes: adds `delta` to one output of
/// one hint invocation.
#[derive(Clone, Debug)]
pub struct Tamper {
    pub hint: String,
    pub invocation: usize,
    pub output: usize,
    pub delta: Fr,
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub native_constraints: usize,
    pub lookup_constraints: usize,
    pub per_query_constraints: usize,
    pub table_sizes: Vec<(String, usize)>,
    pub num_variables: usize,
}

/// Outcome of `finalize`.
#[derive(Clone, Debug)]
pub struct Report {
    /// False in count-only mode: nothing was checked.
    pub checked: bool,
    pub satisfied: bool,
    /// Index of the first failing constraint, if any.
    pub first_violation: Option<usize>,
    /// Hint outputs never referenced by a constraint or lookup query.
    pub unconstrained_hints: Vec<(String, u32)>,
    pub stats: Stats,
}

pub struct ConstraintSystem {
    mode: Mode,
    values: Vec<Fr>,
    kinds: Vec<VarKind>,
    constraints: Vec<Constraint>,
    n_native: usize,
    hints: HashMap<String, HintEntry>,
    hint_counters: Vec<usize>,
    tamper: Option<Tamper>,
    /// one flag per variable, set once it appears in any constraint or
    /// lookup query
    used: Vec<bool>,
    /// hint output variables with their hint names, for the
    /// unconstrained-advice report
    hint_vars: Vec<(u32, String)>,
    pub(crate) tables: Vec<LookupTable>,
    finalized: bool,
    gadget_log: Vec<&'static str>,
}

impl ConstraintSystem {
    pub fn new(mode: Mode) -> ConstraintSystem {
        let mut cs = ConstraintSystem {
            mode,
            values: vec![Fr::ONE],
            kinds: vec![VarKind::ConstantOne],
            constraints: Vec::new(),
            n_native: 0,
            hints: HashMap::new(),
            hint_counters: Vec::new(),
            tamper: None,
            used: vec![true],
            hint_vars: Vec::new(),
            tables: Vec::new(),
            finalized: false,
            gadget_log: Vec::new(),
        };
        crate::gadgets::register_standard_hints(&mut cs);
        cs
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_variables(&self) -> usize {
        self.values.len()
    }

    pub fn num_native_constraints(&self) -> usize {
        self.n_native
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn register_hint(&mut self, name: &str, n_outputs: Option<usize>, f: HintFn) {
        let id = self.hint_counters.len();
        self.hint_counters.push(0);
        self.hints
            .insert(name.to_string(), HintEntry { f, n_outputs, id });
    }

    pub fn set_tamper(&mut self, t: Tamper) {
        self.tamper = Some(t);
    }

    pub fn note_gadget(&mut self, kind: &'static str) {
        self.gadget_log.push(kind);
    }

    pub fn gadget_log(&self) -> &[&'static str] {
        self.gadget_log.as_slice()
    }

    pub fn alloc_public(&mut self, value: Fr) -> Variable {
        self.alloc(VarKind::Public, value)
    }

    pub fn alloc_witness(&mut self, value: Fr) -> Variable {
        self.alloc(VarKind::Witness, value)
    }

    fn alloc(&mut self, kind: VarKind, value: Fr) -> Variable {
        let idx = self.values.len() as u32;
        self.values.push(match self.mode {
            Mode::WitnessGen => value,
            Mode::CountOnly => Fr::ZERO,
        });
        self.kinds.push(kind);
        self.used.push(false);
        Variable(idx)
    }

    /// Evaluates a linear combination under the current assignment.
    pub fn eval(&self, lc: &Lc) -> Fr {
        let mut acc = Fr::ZERO;
        for &(i, c) in &lc.terms {
            if !c.is_zero() {
                acc += c * self.values[i as usize];
            }
        }
        acc
    }

    pub fn value_of(&self, v: Variable) -> Fr {
        self.values[v.0 as usize]
    }

    fn check_lc(&self, lc: &Lc) -> Result<(), Error> {
        let max = lc.max_var();
        if max as usize >= self.values.len() {
            return Err(Error::UnallocatedVariable { index: max });
        }
        Ok(())
    }

    fn mark_used(&mut self, lc: &Lc) {
        for &(i, _) in &lc.terms {
            self.used[i as usize] = true;
        }
    }

    /// Appends the constraint eval(a) * eval(b) = eval(c).
    pub fn enforce(&mut self, a: Lc, b: Lc, c: Lc) -> Result<(), Error> {
        if self.finalized {
            return Err(Error::Finalized);
        }
        self.check_lc(&a)?;
        self.check_lc(&b)?;
        self.check_lc(&c)?;
        self.mark_used(&a);
        self.mark_used(&b);
        self.mark_used(&c);
        self.n_native += 1;
        if self.mode == Mode::WitnessGen {
            self.constraints.push(Constraint { a, b, c });
        }
        Ok(())
    }

    /// Linear assertion eval(lc) = 0.
    pub fn enforce_zero(&mut self, lc: Lc) -> Result<(), Error> {
        self.enforce(lc, Lc::one(), Lc::zero())
    }

    /// Rebinds a wide linear combination to a fresh variable so term lists
    /// stay short along deep op chains. The cutoff depends only on circuit
    /// structure, never on witness values, so constraint counts stay
    /// deterministic.
    pub fn reduce_lc(&mut self, lc: Lc) -> Result<Lc, Error> {
        if lc.terms.len() <= 8 {
            return Ok(lc);
        }
        let v = self.alloc_witness(self.eval(&lc));
        self.enforce(lc, Lc::one(), Lc::from_var(v))?;
        Ok(Lc::from_var(v))
    }

    /// Allocates the product of two linear combinations as a new witness.
    pub fn mul(&mut self, a: &Lc, b: &Lc) -> Result<Lc, Error> {
        // constant folding keeps selection chains cheap
        if let Some(k) = a.as_constant() {
            return Ok(b.scale(k));
        }
        if let Some(k) = b.as_constant() {
            return Ok(a.scale(k));
        }
        let v = self.eval(a) * self.eval(b);
        let out = self.alloc_witness(v);
        self.enforce(a.clone(), b.clone(), Lc::from_var(out))?;
        Ok(Lc::from_var(out))
    }

    /// Runs a registered hint on the evaluated inputs and allocates its
    /// outputs as private witnesses. Outputs are tracked as unconstrained
    /// until referenced by at least one constraint or lookup query.
    pub fn add_hint(
        &mut self,
        name: &str,
        inputs: &[Lc],
        n_outputs: usize,
    ) -> Result<Vec<Variable>, Error> {
        if self.finalized {
            return Err(Error::Finalized);
        }
        let entry = self
            .hints
            .get(name)
            .ok_or_else(|| Error::UnknownHint(name.to_string()))?;
        if let Some(fixed) = entry.n_outputs {
            if fixed != n_outputs {
                return Err(Error::HintArity {
                    hint: name.to_string(),
                    expected: fixed,
                    got: n_outputs,
                });
            }
        }
        let f = entry.f;
        let id = entry.id;
        for lc in inputs {
            self.check_lc(lc)?;
        }
        let args: Vec<Fr> = inputs.iter().map(|lc| self.eval(lc)).collect();
        let mut outputs = f(&args).map_err(|msg| Error::HintFailed {
            hint: name.to_string(),
            msg,
        })?;
        if outputs.len() != n_outputs {
            return Err(Error::HintArity {
                hint: name.to_string(),
                expected: n_outputs,
                got: outputs.len(),
            });
        }
        let invocation = self.hint_counters[id];
        self.hint_counters[id] += 1;
        if let Some(t) = &self.tamper {
            if t.hint == name && t.invocation == invocation && t.output < outputs.len() {
                let delta = t.delta;
                outputs[t.output] += delta;
            }
        }
        let vars: Vec<Variable> = outputs
            .into_iter()
            .map(|v| self.alloc_witness(v))
            .collect();
        for v in &vars {
            self.hint_vars.push((v.0, name.to_string()));
        }
        Ok(vars)
    }

    /// Registers a read-only lookup table and returns its handle.
    pub fn new_table(&mut self, name: &str, width: usize, entries: Vec<Vec<Fr>>) -> TableId {
        let spec = std::sync::Arc::new(crate::lookup::TableSpec::new(
            name.to_string(),
            width,
            entries,
        ));
        self.new_shared_table(spec)
    }

    /// Registers a table whose immutable spec is shared across systems.
    pub fn new_shared_table(&mut self, spec: std::sync::Arc<crate::lookup::TableSpec>) -> TableId {
        let id = TableId(self.tables.len());
        self.tables.push(LookupTable::new(spec));
        id
    }

    /// Appends a query tuple to a table's query vector.
    pub fn lookup_query(&mut self, table: TableId, tuple: &[Lc]) -> Result<(), Error> {
        if self.finalized {
            return Err(Error::Finalized);
        }
        for lc in tuple {
            self.check_lc(lc)?;
            self.mark_used(lc);
        }
        let values: Vec<Fr> = tuple.iter().map(|lc| self.eval(lc)).collect();
        let t = self
            .tables
            .get_mut(table.0)
            .ok_or(Error::UnknownTable(table.0))?;
        if tuple.len() != t.width() {
            return Err(Error::WidthMismatch {
                table: t.name().to_string(),
                expected: t.width(),
                got: tuple.len(),
            });
        }
        t.push_query(tuple.to_vec(), values, self.mode == Mode::WitnessGen);
        Ok(())
    }

    /// Emits the LogUp identity constraints for every table, then checks
    /// every constraint. The system is immutable afterwards.
    pub fn finalize(&mut self) -> Report {
        let native = self.n_native;
        let mut lookup_constraints = 0usize;
        let mut per_query = 0usize;
        let mut table_sizes = Vec::new();

        let tables = std::mem::take(&mut self.tables);
        for t in &tables {
            per_query += t.num_queries();
            table_sizes.push((t.name().to_string(), t.num_entries()));
            lookup_constraints += t.emit_identity(self);
        }
        self.tables = tables;

        let (satisfied, first_violation, checked) = match self.mode {
            Mode::WitnessGen => {
                let mut first = None;
                for (i, con) in self.constraints.iter().enumerate() {
                    let a = self.eval(&con.a);
                    let b = self.eval(&con.b);
                    let c = self.eval(&con.c);
                    if a * b != c {
                        first = Some(i);
                        break;
                    }
                }
                (first.is_none(), first, true)
            }
            Mode::CountOnly => (true, None, false),
        };

        let mut unconstrained: Vec<(String, u32)> = self
            .hint_vars
            .iter()
            .filter(|(v, _)| !self.used[*v as usize])
            .map(|(v, name)| (name.clone(), *v))
            .collect();
        unconstrained.sort();

        self.finalized = true;
        Report {
            checked,
            satisfied,
            first_violation,
            unconstrained_hints: unconstrained,
            stats: Stats {
                native_constraints: native,
                lookup_constraints,
                per_query_constraints: per_query,
                table_sizes,
                num_variables: self.values.len(),
            },
        }
    }

    /// Internal: used by lookup finalize to emit identity constraints
    /// without tripping the finalized flag.
    pub(crate) fn emit_lookup_constraint(&mut self, a: Lc, b: Lc, c: Lc) {
        self.mark_used(&a);
        self.mark_used(&b);
        self.mark_used(&c);
        if self.mode == Mode::WitnessGen {
            self.constraints.push(Constraint { a, b, c });
        }
    }

    pub(crate) fn alloc_internal(&mut self, value: Fr) -> Variable {
        self.alloc(VarKind::Witness, value)
    }
}

/// Versioned structured text record of circuit stats.
pub fn export_stats(circuit_name: &str, stats: &Stats) -> String {
    let tables = stats
        .table_sizes
        .iter()
        .map(|(n, s)| format!("{n}:{s}"))
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "zkfp-stats v1\n\
         circuit_name={}\n\
         native_constraints={}\n\
         lookup_constraints={}\n\
         per_query_constraints={}\n\
         table_sizes={}\n",
        circuit_name, stats.native_constraints, stats.lookup_constraints, stats.per_query_constraints, tables
    )
}

/// Versioned witness dump: one `index value` line per variable, decimal.
pub fn dump_witness(cs: &ConstraintSystem) -> String {
    let mut out = String::from("zkfp-witness v1\n");
    for i in 0..cs.num_variables() {
        out.push_str(&format!(
            "{} {}\n",
            i,
            cs.value_of(Variable(i as u32)).to_decimal()
        ));
    }
    out
}
