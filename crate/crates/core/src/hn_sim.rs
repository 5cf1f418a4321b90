//! Sampling simulation of adaptive circuits with cube-separable CSIGNs, and a
//! dense density-matrix reference simulator.
//!
//! Every qubit starts in `(0,0,1)`. Outcome strings list the measurement
//! records in order of first appearance in the circuit, `+`/`-` per record
//! and `_` for records never written on that shot.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::error_per_gate;
use crate::error::{Error, Result};
use crate::gates::{apply_noise, csign, AdversaryMap, CliffordGate1Q, NoiseFamily, NoiseModel};
use crate::pauli::{product, Axis, BlochOp};
use crate::separability::{cube_separable, Separability, NUM_PAIRS};
use crate::state_spaces::vertex_from_index;

pub const MAX_QUBITS: usize = 8;
/// Shots per RNG stream; streams are `ChaCha8Rng` seeded once, then `set_stream(chunk)`.
pub const SHOT_CHUNK: u64 = 4096;
pub const RNG_NAME: &str = "ChaCha8";

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Prepare { q: usize, state: BlochOp },
    Clifford1 { q: usize, gate: CliffordGate1Q },
    NoisyCsign { q1: usize, q2: usize, noise: NoiseModel },
    Measure { q: usize, axis: Axis, record: usize },
    ClassicalControl { record: usize, value: i8, op: Box<Op> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub ops: Vec<Op>,
    /// Record names in first-appearance order.
    pub records: Vec<String>,
}

fn parse_noise(name: &str, param: f64) -> Option<NoiseModel> {
    if name == "error-per-gate" {
        return Some(NoiseModel::ErrorPerGate(param, AdversaryMap::ZFirst));
    }
    NoiseFamily::parse(name).map(|f| f.with(param))
}

fn noise_label(n: &NoiseModel) -> String {
    match n {
        NoiseModel::ErrorPerGate(p, _) => format!("error-per-gate {p}"),
        other => format!("{} {}", other.family().map(NoiseFamily::name).unwrap_or("?"), other.param()),
    }
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!("qubit count must be 1..={MAX_QUBITS}, got {num_qubits}")));
        }
        Ok(Self { num_qubits, ops: Vec::new(), records: Vec::new() })
    }

    /// Index of a record name, registering it on first use.
    pub fn record(&mut self, name: &str) -> usize {
        match self.records.iter().position(|r| r == name) {
            Some(i) => i,
            None => {
                self.records.push(name.to_string());
                self.records.len() - 1
            }
        }
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        self.check(&op)?;
        self.ops.push(op);
        Ok(())
    }

    fn check(&self, op: &Op) -> Result<()> {
        let q_ok = |q: usize| {
            if q < self.num_qubits {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("qubit {q} out of range")))
            }
        };
        match op {
            Op::Prepare { q, state } => {
                q_ok(*q)?;
                if state.bloch.iter().any(|b| b.abs() > 1.0 + 1e-12) {
                    return Err(Error::InvalidParameter(format!("preparation on qubit {q} is outside Cube(1)")));
                }
                Ok(())
            }
            Op::Clifford1 { q, .. } | Op::Measure { q, .. } => q_ok(*q),
            Op::NoisyCsign { q1, q2, noise } => {
                q_ok(*q1)?;
                q_ok(*q2)?;
                if q1 == q2 {
                    return Err(Error::InvalidParameter("csign needs two distinct qubits".into()));
                }
                noise.validate()
            }
            Op::ClassicalControl { value, op, .. } => {
                if value.abs() != 1 {
                    return Err(Error::InvalidParameter("ifeq value must be +1 or -1".into()));
                }
                self.check(op)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            let perr = |msg: String| Error::Parse { line, msg };
            match circuit.as_mut() {
                None => {
                    if toks.len() != 2 || toks[0] != "qubits" {
                        return Err(perr("expected `qubits N` first".into()));
                    }
                    let k = toks[1].parse().map_err(|_| perr(format!("bad qubit count `{}`", toks[1])))?;
                    circuit = Some(Circuit::new(k).map_err(|e| perr(e.to_string()))?);
                }
                Some(c) => {
                    let op = c.parse_op(&toks).map_err(perr)?;
                    c.push(op).map_err(|e| perr(e.to_string()))?;
                }
            }
        }
        circuit.ok_or(Error::Parse { line: 0, msg: "empty circuit".into() })
    }

    fn parse_op(&mut self, toks: &[&str]) -> std::result::Result<Op, String> {
        let num = |s: &str| s.parse::<f64>().map_err(|_| format!("bad number `{s}`"));
        let idx = |s: &str| s.parse::<usize>().map_err(|_| format!("bad qubit `{s}`"));
        let arity = |k: usize| {
            if toks.len() == k {
                Ok(())
            } else {
                Err(format!("`{}` takes {} arguments", toks[0], k - 1))
            }
        };
        match toks[0] {
            "prep" => {
                arity(5)?;
                let b = [num(toks[2])?, num(toks[3])?, num(toks[4])?];
                Ok(Op::Prepare { q: idx(toks[1])?, state: BlochOp::new(b) })
            }
            "clif" => {
                arity(3)?;
                let gate = CliffordGate1Q::parse(toks[2]).ok_or(format!("unknown Clifford `{}`", toks[2]))?;
                Ok(Op::Clifford1 { q: idx(toks[1])?, gate })
            }
            "csign" => {
                arity(5)?;
                let noise = parse_noise(toks[3], num(toks[4])?).ok_or(format!("unknown noise `{}`", toks[3]))?;
                Ok(Op::NoisyCsign { q1: idx(toks[1])?, q2: idx(toks[2])?, noise })
            }
            "meas" => {
                arity(4)?;
                let axis = Axis::parse(toks[2]).ok_or(format!("unknown axis `{}`", toks[2]))?;
                Ok(Op::Measure { q: idx(toks[1])?, axis, record: self.record(toks[3]) })
            }
            "ifeq" => {
                if toks.len() < 4 {
                    return Err("`ifeq` takes a record, a value and an op".into());
                }
                let value = match toks[2] {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    v => return Err(format!("bad ifeq value `{v}`")),
                };
                let record = self.record(toks[1]);
                let op = self.parse_op(&toks[3..])?;
                Ok(Op::ClassicalControl { record, value, op: Box::new(op) })
            }
            other => Err(format!("unknown op `{other}`")),
        }
    }

    pub fn to_text(&self) -> String {
        fn op_text(c: &Circuit, op: &Op) -> String {
            match op {
                Op::Prepare { q, state } => {
                    let [x, y, z] = state.bloch;
                    format!("prep {q} {x} {y} {z}")
                }
                Op::Clifford1 { q, gate } => format!("clif {q} {gate}"),
                Op::NoisyCsign { q1, q2, noise } => format!("csign {q1} {q2} {}", noise_label(noise)),
                Op::Measure { q, axis, record } => format!("meas {q} {axis} {}", c.records[*record]),
                Op::ClassicalControl { record, value, op } => {
                    format!("ifeq {} {:+} {}", c.records[*record], value, op_text(c, op))
                }
            }
        }
        let mut s = format!("qubits {}\n", self.num_qubits);
        for op in &self.ops {
            s.push_str(&op_text(self, op));
            s.push('\n');
        }
        s
    }

    fn gates(&self) -> Vec<NoiseModel> {
        fn walk(op: &Op, out: &mut Vec<NoiseModel>) {
            match op {
                Op::NoisyCsign { noise, .. } if !out.contains(noise) => out.push(*noise),
                Op::ClassicalControl { op, .. } => walk(op, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        for op in &self.ops {
            walk(op, &mut out);
        }
        out
    }

    pub fn outcome_string(&self, record: &[i8]) -> String {
        record
            .iter()
            .map(|&r| match r {
                1 => '+',
                -1 => '-',
                _ => '_',
            })
            .collect()
    }
}

/// CSIGN followed by the given noise, on the coefficient level.
pub fn noisy_csign(a: &crate::pauli::PauliCoeffs2Q, noise: &NoiseModel) -> Result<crate::pauli::PauliCoeffs2Q> {
    match noise {
        NoiseModel::ErrorPerGate(..) => error_per_gate(a, noise),
        _ => apply_noise(&csign(a), noise),
    }
}

pub type Histogram = BTreeMap<String, u64>;
pub type Distribution = BTreeMap<String, f64>;

/// Per-gate cumulative weights over the 64 output vertex pairs, one table per input pair.
struct GateTable {
    noise: NoiseModel,
    cdf: Vec<[f64; NUM_PAIRS]>,
}

fn sign_of(k: usize, bit: usize) -> i8 {
    if (k >> bit) & 1 == 1 { -1 } else { 1 }
}

fn vertex_signs(k: usize) -> [i8; 3] {
    [sign_of(k, 2), sign_of(k, 1), sign_of(k, 0)]
}

fn index_of_signs(s: [i8; 3]) -> usize {
    s.iter().fold(0, |acc, &x| 2 * acc + usize::from(x < 0))
}

/// A circuit with every CSIGN pre-decomposed over vertex pairs.
pub struct HnSimulator {
    circuit: Circuit,
    tables: Vec<GateTable>,
}

impl HnSimulator {
    /// Solves the 64 LPs per distinct gate; fails if any output is not cube-separable.
    pub fn new(circuit: &Circuit) -> Result<Self> {
        let gates = circuit.gates();
        let mut tables = Vec::with_capacity(gates.len());
        for (g, noise) in gates.iter().enumerate() {
            let rows: Result<Vec<[f64; NUM_PAIRS]>> = (0..NUM_PAIRS)
                .into_par_iter()
                .map(|k| {
                    let (u, v) = (k / 8, k % 8);
                    let out = noisy_csign(&product(&vertex_from_index(u), &vertex_from_index(v)), noise)?;
                    match cube_separable(&out, 1.0)? {
                        Separability::Feasible(cert) => {
                            let mut cdf = [0.0; NUM_PAIRS];
                            let mut acc = 0.0;
                            for (c, w) in cdf.iter_mut().zip(&cert.weights) {
                                acc += w.max(0.0);
                                *c = acc;
                            }
                            Ok(cdf)
                        }
                        Separability::Infeasible(_) => Err(Error::GateNotCubeSeparable {
                            gate: g,
                            u: vertex_signs(u),
                            v: vertex_signs(v),
                        }),
                    }
                })
                .collect();
            tables.push(GateTable { noise: *noise, cdf: rows? });
        }
        Ok(Self { circuit: circuit.clone(), tables })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    fn sample_prep(rng: &mut ChaCha8Rng, b: &[f64; 3]) -> [i8; 3] {
        b.map(|v| if rng.random::<f64>() < (1.0 + v) / 2.0 { 1 } else { -1 })
    }

    fn run_op(&self, op: &Op, qubits: &mut [[i8; 3]], record: &mut [i8], rng: &mut ChaCha8Rng) {
        match op {
            Op::Prepare { q, state } => qubits[*q] = Self::sample_prep(rng, &state.bloch),
            Op::Clifford1 { q, gate } => {
                let v = gate.act(qubits[*q].map(f64::from));
                qubits[*q] = v.map(|x| if x < 0.0 { -1 } else { 1 });
            }
            Op::NoisyCsign { q1, q2, noise } => {
                let table = self.tables.iter().find(|t| t.noise == *noise).expect("gate cached at load");
                let cdf = &table.cdf[8 * index_of_signs(qubits[*q1]) + index_of_signs(qubits[*q2])];
                let x = rng.random::<f64>() * cdf[NUM_PAIRS - 1];
                let k = cdf.partition_point(|&c| c <= x).min(NUM_PAIRS - 1);
                qubits[*q1] = vertex_signs(k / 8);
                qubits[*q2] = vertex_signs(k % 8);
            }
            Op::Measure { q, axis, record: r } => {
                let a = axis.bloch_index();
                record[*r] = qubits[*q][a];
                // collapse: the other two axes become uniformly random
                for (k, s) in qubits[*q].iter_mut().enumerate() {
                    if k != a {
                        *s = if rng.random::<bool>() { 1 } else { -1 };
                    }
                }
            }
            Op::ClassicalControl { record: r, value, op } => {
                if record[*r] == *value {
                    self.run_op(op, qubits, record, rng);
                }
            }
        }
    }

    fn run_chunk(&self, seed: u64, chunk: u64, shots: u64) -> Histogram {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let mut hist = Histogram::new();
        let n = self.circuit.num_qubits;
        for _ in 0..shots {
            let mut qubits: Vec<[i8; 3]> = (0..n).map(|_| Self::sample_prep(&mut rng, &[0.0, 0.0, 1.0])).collect();
            let mut record = vec![0i8; self.circuit.records.len()];
            for op in &self.circuit.ops {
                self.run_op(op, &mut qubits, &mut record, &mut rng);
            }
            *hist.entry(self.circuit.outcome_string(&record)).or_default() += 1;
        }
        hist
    }

    /// Histogram over outcome strings; identical for identical seeds regardless of thread count.
    pub fn run(&self, shots: u64, seed: u64) -> Histogram {
        let chunks = shots.div_ceil(SHOT_CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|c| self.run_chunk(seed, c, SHOT_CHUNK.min(shots - c * SHOT_CHUNK)))
            .reduce(Histogram::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    }
}

pub fn simulate_hn(c: &Circuit, shots: u64, seed: u64) -> Result<Histogram> {
    Ok(HnSimulator::new(c)?.run(shots, seed))
}

/// Density matrix on `n` qubits; qubit 0 is the most significant index bit.
#[derive(Debug, Clone)]
struct Dm {
    n: usize,
    rho: Vec<Complex64>,
}

type M2 = [[Complex64; 2]; 2];

fn pauli2(k: usize) -> M2 {
    let (o, z, i) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        _ => [[o, z], [z, -o]],
    }
}

impl Dm {
    fn zero_state(n: usize) -> Self {
        let d = 1 << n;
        let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
        rho[0] = Complex64::new(1.0, 0.0);
        Self { n, rho }
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.rho[i * self.dim() + i].re).sum()
    }

    /// `ρ ↦ M ρ M†` on qubit `q`.
    fn apply(&mut self, q: usize, m: &M2) {
        let (d, b) = (self.dim(), self.bit(q));
        for col in 0..d {
            for i0 in (0..d).filter(|i| i & b == 0) {
                let (x, y) = (self.rho[i0 * d + col], self.rho[(i0 | b) * d + col]);
                self.rho[i0 * d + col] = m[0][0] * x + m[0][1] * y;
                self.rho[(i0 | b) * d + col] = m[1][0] * x + m[1][1] * y;
            }
        }
        for row in 0..d {
            for j0 in (0..d).filter(|j| j & b == 0) {
                let (x, y) = (self.rho[row * d + j0], self.rho[row * d + (j0 | b)]);
                self.rho[row * d + j0] = x * m[0][0].conj() + y * m[0][1].conj();
                self.rho[row * d + (j0 | b)] = x * m[1][0].conj() + y * m[1][1].conj();
            }
        }
    }

    fn csign(&mut self, q1: usize, q2: usize) {
        let (d, mask) = (self.dim(), self.bit(q1) | self.bit(q2));
        let s = |i: usize| if i & mask == mask { -1.0 } else { 1.0 };
        for i in 0..d {
            for j in 0..d {
                self.rho[i * d + j] *= s(i) * s(j);
            }
        }
    }

    fn add_scaled(&mut self, other: &Dm, w: f64) {
        for (a, b) in self.rho.iter_mut().zip(&other.rho) {
            *a += b * w;
        }
    }

    fn scale(&mut self, w: f64) {
        self.rho.iter_mut().for_each(|a| *a *= w);
    }

    /// `(1−p)ρ + p·Σ_k w_k P_k ρ P_k` over one-qubit Paulis on `q`.
    fn pauli_mix(&mut self, q: usize, p: f64, paulis: &[(usize, f64)]) {
        let mut acc = self.clone();
        acc.scale(1.0 - p);
        for &(k, w) in paulis {
            let mut t = self.clone();
            t.apply(q, &pauli2(k));
            acc.add_scaled(&t, p * w);
        }
        *self = acc;
    }

    fn noise(&mut self, q1: usize, q2: usize, n: &NoiseModel) {
        let depol = [(0, 0.25), (1, 0.25), (2, 0.25), (3, 0.25)];
        match *n {
            NoiseModel::JointDepol(l) => {
                let mut acc = self.clone();
                acc.scale(1.0 - l);
                for k1 in 0..4 {
                    for k2 in 0..4 {
                        let mut t = self.clone();
                        t.apply(q1, &pauli2(k1));
                        t.apply(q2, &pauli2(k2));
                        acc.add_scaled(&t, l / 16.0);
                    }
                }
                *self = acc;
            }
            NoiseModel::LocalDepol(p) => {
                self.pauli_mix(q1, p, &depol);
                self.pauli_mix(q2, p, &depol);
            }
            NoiseModel::LocalDephase(p) => {
                self.pauli_mix(q1, p, &[(3, 1.0)]);
                self.pauli_mix(q2, p, &[(3, 1.0)]);
            }
            NoiseModel::ErrorPerGate(l, AdversaryMap::ZFirst) => self.pauli_mix(q1, l, &[(3, 1.0)]),
        }
    }

    /// Replaces qubit `q` by the state with Bloch vector `b`.
    fn reset(&mut self, q: usize, b: &[f64; 3]) {
        let (d, bit) = (self.dim(), self.bit(q));
        let sigma = BlochOp::new(*b).to_dense();
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let (i0, j0) = (i & !bit, j & !bit);
                let tr = self.rho[i0 * d + j0] + self.rho[(i0 | bit) * d + (j0 | bit)];
                let (bi, bj) = (usize::from(i & bit != 0), usize::from(j & bit != 0));
                out[i * d + j] = sigma[(bi, bj)] * tr;
            }
        }
        self.rho = out;
    }
}

struct Branch {
    dm: Dm,
    record: Vec<i8>,
}

fn dense_op(op: &Op, branches: Vec<Branch>) -> Vec<Branch> {
    let mut out = Vec::with_capacity(branches.len());
    for mut br in branches {
        match op {
            Op::Prepare { q, state } => {
                br.dm.reset(*q, &state.bloch);
                out.push(br);
            }
            Op::Clifford1 { q, gate } => {
                let u = gate.unitary();
                br.dm.apply(*q, &[[u[(0, 0)], u[(0, 1)]], [u[(1, 0)], u[(1, 1)]]]);
                out.push(br);
            }
            Op::NoisyCsign { q1, q2, noise } => {
                br.dm.csign(*q1, *q2);
                br.dm.noise(*q1, *q2, noise);
                out.push(br);
            }
            Op::Measure { q, axis, record } => {
                let p = pauli2(axis.index());
                for s in [1i8, -1] {
                    let half = Complex64::new(0.5, 0.0);
                    let sign = f64::from(s);
                    let proj: M2 = std::array::from_fn(|i| {
                        std::array::from_fn(|j| half * (if i == j { 1.0 } else { 0.0 } + sign * p[i][j]))
                    });
                    let mut dm = br.dm.clone();
                    dm.apply(*q, &proj);
                    if dm.trace() > 1e-15 {
                        let mut rec = br.record.clone();
                        rec[*record] = s;
                        out.push(Branch { dm, record: rec });
                    }
                }
            }
            Op::ClassicalControl { record, value, op } => {
                if br.record[*record] == *value {
                    out.extend(dense_op(op, vec![br]));
                } else {
                    out.push(br);
                }
            }
        }
    }
    out
}

/// Exact outcome-string distribution by density-matrix evolution with explicit branching.
pub fn simulate_dense(c: &Circuit) -> Result<Distribution> {
    fn preps(op: &Op, out: &mut Vec<(usize, f64)>) {
        match op {
            Op::Prepare { q, state } => out.push((*q, state.norm())),
            Op::ClassicalControl { op, .. } => preps(op, out),
            _ => {}
        }
    }
    let mut norms = Vec::new();
    c.ops.iter().for_each(|op| preps(op, &mut norms));
    if let Some(&(qubit, _)) = norms.iter().find(|(_, n)| *n > 1.0 + 1e-9) {
        return Err(Error::NonQuantumPreparation { qubit });
    }
    let mut branches = vec![Branch { dm: Dm::zero_state(c.num_qubits), record: vec![0; c.records.len()] }];
    for op in &c.ops {
        branches = dense_op(op, branches);
    }
    let mut dist = Distribution::new();
    for br in branches {
        *dist.entry(c.outcome_string(&br.record)).or_default() += br.dm.trace();
    }
    Ok(dist)
}

/// Cube-separable circuits with quantum preparations, used for cross-validation.
pub fn regression_suite() -> Vec<(&'static str, Circuit)> {
    let t = 1.0 / 3f64.sqrt();
    let p = 2.0 - 2f64.sqrt();
    let texts = [
        (
            "magic-joint-depol",
            format!("qubits 2\nprep 0 {t} {t} {t}\nprep 1 {t} {t} {t}\ncsign 0 1 joint-depol 0.7\nmeas 0 X a\nmeas 1 Y b\n"),
        ),
        (
            "bell-local-depol",
            format!("qubits 2\nprep 0 1 0 0\nprep 1 1 0 0\ncsign 0 1 local-depol {p}\nmeas 0 X a\nmeas 1 Z b\n"),
        ),
        (
            "chain-mixed-noise",
            format!(
                "qubits 3\nprep 0 1 0 0\nprep 1 {t} {t} {t}\nprep 2 0 0.6 0.8\ncsign 0 1 local-dephase 0.3\n\
                 clif 1 H\ncsign 1 2 joint-depol 0.7\nclif 2 S\nmeas 0 X a\nmeas 1 Y b\nmeas 2 X c\n"
            ),
        ),
        (
            "adaptive",
            "qubits 2\nprep 0 1 0 0\nprep 1 1 0 0\ncsign 0 1 joint-depol 0.7\nmeas 0 Y a\n\
             ifeq a +1 csign 0 1 local-depol 0.6\nifeq a -1 clif 1 H\nmeas 1 X b\nmeas 0 Z c\n"
                .to_string(),
        ),
        (
            "four-qubit-epg",
            format!(
                "qubits 4\nprep 0 1 0 0\nprep 1 0 1 0\nprep 2 {t} {t} {t}\nprep 3 0.6 0 -0.8\n\
                 csign 0 1 error-per-gate 0.5\ncsign 2 3 joint-depol 0.75\nclif 1 H\ncsign 1 2 local-depol 0.6\n\
                 meas 0 Z a\nmeas 1 X b\nmeas 2 Z c\nmeas 3 Y d\n"
            ),
        ),
    ];
    texts
        .into_iter()
        .map(|(name, text)| (name, Circuit::parse(&text).expect("suite circuit parses")))
        .collect()
}

pub fn normalize(h: &Histogram) -> Distribution {
    let total: u64 = h.values().sum();
    h.iter().map(|(k, &v)| (k.clone(), v as f64 / total.max(1) as f64)).collect()
}

/// Total variation distance over the union of outcome strings.
pub fn tvd(p: &Distribution, q: &Distribution) -> f64 {
    let keys: std::collections::BTreeSet<&String> = p.keys().chain(q.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (p.get(k).copied().unwrap_or(0.0) - q.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut s = String::from("outcome_string,count\n");
    for (k, v) in h {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}
