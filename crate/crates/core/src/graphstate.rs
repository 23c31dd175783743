//! Graph states as stabilizer tableaux, Pauli measurements on them, and a
//! dense state-vector oracle.
//!
//! A Pauli operator is stored in binary symplectic form: bit `q` of `x` and
//! `z` selects `I`, `X`, `Z` or `Y` (both bits) on qubit `q`, with a real sign.
//! With `Y` encoded this way every stored operator is Hermitian; products pick
//! up powers of `i` which are tracked mod 4 and must cancel for products of
//! commuting operators.
//!
//! The tableau holds `n` independent commuting generators and nothing else.
//! Deterministic outcomes are found by solving for the measured operator in
//! the generator span over GF(2), then replaying the product to get its sign.
//!
//! Dense states index basis vectors little-endian: qubit `q` is bit `q` of the
//! basis index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{words_for, BitIter, Gf2Matrix};
use crate::graph::Graph;

/// Largest qubit count accepted by the dense oracle.
pub const MAX_DENSE_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "X" | "x" => Ok(Basis::X),
            "Y" | "y" => Ok(Basis::Y),
            "Z" | "z" => Ok(Basis::Z),
            other => Err(Error::arg(format!(
                "unknown basis `{other}`, expected X, Y or Z"
            ))),
        }
    }
}

/// Measurement outcome, the eigenvalue `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn from_value(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            _ => Err(Error::arg(format!("outcome must be +1 or -1, got {v}"))),
        }
    }

    fn is_minus(self) -> bool {
        self == Outcome::Minus
    }
}

/// `±` a tensor product of single-qubit Paulis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    negative: bool,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            negative: false,
        }
    }

    /// `σ_basis` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, basis: Basis) -> Self {
        assert!(qubit < n, "qubit {qubit} out of range for {n} qubits");
        let mut p = Self::identity(n);
        let (w, m) = (qubit / 64, 1u64 << (qubit % 64));
        if matches!(basis, Basis::X | Basis::Y) {
            p.x[w] |= m;
        }
        if matches!(basis, Basis::Z | Basis::Y) {
            p.z[w] |= m;
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn with_sign(mut self, outcome: Outcome) -> Self {
        self.negative = outcome.is_minus();
        self
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        !self.negative && self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    fn set_x(&mut self, q: usize) {
        self.x[q / 64] |= 1 << (q % 64);
    }

    fn set_z(&mut self, q: usize) {
        self.z[q / 64] |= 1 << (q % 64);
    }

    /// The `2n` symplectic bits, x part first.
    fn symplectic_bits(&self) -> Vec<bool> {
        (0..self.n)
            .map(|q| self.x_bit(q))
            .chain((0..self.n).map(|q| self.z_bit(q)))
            .collect()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let overlap: u32 = self
            .x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((x1, z1), (x2, z2))| ((x1 & z2) ^ (z1 & x2)).count_ones())
            .sum();
        overlap.is_multiple_of(2)
    }

    /// `self · other = i^k · Q` with `Q` an unsigned Pauli; returns `(Q, k mod 4)`.
    fn mul_phase(&self, other: &Self) -> (Self, u8) {
        debug_assert_eq!(self.n, other.n);
        let mut k: i64 = 2 * (self.negative as i64) + 2 * (other.negative as i64);
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let (px, py, pz) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (qx, qy, qz) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and the reverses give -i.
            let plus = (px & qy) | (py & qz) | (pz & qx);
            let minus = (px & qz) | (py & qx) | (pz & qy);
            k += plus.count_ones() as i64 - minus.count_ones() as i64;
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let product = PauliOperator {
            n: self.n,
            x,
            z,
            negative: false,
        };
        (product, k.rem_euclid(4) as u8)
    }

    /// Product of two commuting operators.
    pub fn mul_commuting(&self, other: &Self) -> Self {
        let (mut p, k) = self.mul_phase(other);
        assert!(
            k % 2 == 0,
            "product of anticommuting Paulis is not Hermitian"
        );
        p.negative = k == 2;
        p
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n {
            let c = match (self.x_bit(q), self.z_bit(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Parses `[+|-]` followed by one of `IXYZ` per qubit, qubit 0 first.
impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let mut p = PauliOperator::identity(body.len());
        p.negative = negative;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => p.set_x(q),
                'Z' => p.set_z(q),
                'Y' => {
                    p.set_x(q);
                    p.set_z(q);
                }
                _ => return Err(Error::arg(format!("bad Pauli character `{c}` in `{s}`"))),
            }
        }
        Ok(p)
    }
}

/// Result of one tableau measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub outcome: Outcome,
    /// 1.0 for deterministic outcomes, 0.5 otherwise.
    pub probability: f64,
}

impl Measurement {
    pub fn is_deterministic(&self) -> bool {
        self.probability == 1.0
    }
}

/// `n` independent, pairwise commuting generators of a stabilizer group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerTableau {
    /// Checks commutation and independence.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let n = generators.len();
        if generators.iter().any(|g| g.n != n) {
            return Err(Error::arg("every generator must act on exactly n qubits"));
        }
        let t = StabilizerTableau { n, generators };
        t.check()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    fn symplectic_matrix(&self) -> Gf2Matrix {
        let rows: Vec<Vec<u8>> = self
            .generators
            .iter()
            .map(|g| g.symplectic_bits().into_iter().map(u8::from).collect())
            .collect();
        if rows.is_empty() {
            Gf2Matrix::zeros(0, 0)
        } else {
            Gf2Matrix::from_rows(&rows)
        }
    }

    /// Verifies pairwise commutation and GF(2) independence of the generators.
    pub fn check(&self) -> Result<()> {
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i + 1) {
                if !a.commutes_with(b) {
                    return Err(Error::Contract(format!(
                        "generators {i} and {j} anticommute"
                    )));
                }
            }
        }
        let rank = self.symplectic_matrix().rank();
        if rank != self.n {
            return Err(Error::Contract(format!(
                "generators have rank {rank}, expected {}",
                self.n
            )));
        }
        Ok(())
    }

    fn check_dims(&self, p: &PauliOperator) -> Result<()> {
        if p.n != self.n {
            return Err(Error::arg(format!(
                "operator acts on {} qubits, tableau has {}",
                p.n, self.n
            )));
        }
        Ok(())
    }

    /// Sign `s` such that `s · P` is in the group, assuming `P` commutes with
    /// every generator.
    fn group_sign(&self, p: &PauliOperator) -> Result<bool> {
        let combo = self
            .symplectic_matrix()
            .solve_left(&p.symplectic_bits())
            .ok_or_else(|| Error::Contract(format!("{p} is not in the stabilizer group span")))?;
        let product = combo
            .into_iter()
            .fold(PauliOperator::identity(self.n), |acc, i| {
                acc.mul_commuting(&self.generators[i])
            });
        debug_assert_eq!((&product.x, &product.z), (&p.x, &p.z));
        Ok(product.negative)
    }

    /// `⟨P⟩` on the stabilized state: `±1` if `±P` is in the group, 0 otherwise.
    pub fn expectation_pauli(&self, p: &PauliOperator) -> Result<i8> {
        self.check_dims(p)?;
        if self.generators.iter().any(|g| !g.commutes_with(p)) {
            return Ok(0);
        }
        let group_negative = self.group_sign(p)?;
        Ok(if group_negative == p.negative { 1 } else { -1 })
    }

    /// Measures the observable `P`, updating the tableau to the post-measurement
    /// state.
    ///
    /// A random outcome is taken from `forced` if given, otherwise drawn from
    /// `rng`. Forcing the impossible branch of a deterministic measurement is
    /// an error and leaves the tableau unchanged.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &mut self,
        p: &PauliOperator,
        forced: Option<Outcome>,
        rng: &mut R,
    ) -> Result<Measurement> {
        self.check_dims(p)?;
        let anti: Vec<usize> = (0..self.n)
            .filter(|&i| !self.generators[i].commutes_with(p))
            .collect();
        let Some((&pivot, rest)) = anti.split_first() else {
            let value = if self.group_sign(p)? == p.negative {
                Outcome::Plus
            } else {
                Outcome::Minus
            };
            if let Some(f) = forced {
                if f != value {
                    return Err(Error::Contract(format!(
                        "outcome {:+} of {p} is deterministic, cannot force {:+}",
                        value.value(),
                        f.value()
                    )));
                }
            }
            return Ok(Measurement {
                outcome: value,
                probability: 1.0,
            });
        };
        let outcome = forced.unwrap_or_else(|| {
            if rng.gen::<bool>() {
                Outcome::Minus
            } else {
                Outcome::Plus
            }
        });
        for &i in rest {
            self.generators[i] = self.generators[i].mul_commuting(&self.generators[pivot]);
        }
        let mut replacement = p.clone();
        replacement.negative = p.negative ^ outcome.is_minus();
        self.generators[pivot] = replacement;
        Ok(Measurement {
            outcome,
            probability: 0.5,
        })
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Stabilizer generators `K_a = X_a ∏_{b ∈ N(a)} Z_b` of the graph state `|G⟩`.
pub fn graph_state_tableau(g: &Graph) -> StabilizerTableau {
    let n = g.n();
    let generators = (0..n)
        .map(|a| {
            let mut k = PauliOperator::identity(n);
            k.set_x(a);
            for b in g.adjacency().row_ones(a) {
                k.set_z(b);
            }
            k
        })
        .collect();
    StabilizerTableau { n, generators }
}

/// One line of a measurement transcript.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub qubit: usize,
    pub basis: Basis,
    pub outcome: i8,
    pub probability: f64,
}

/// Parses the `qubit:basis,qubit:basis` pattern microformat.
pub fn parse_pattern(spec: &str) -> Result<Vec<(usize, Basis)>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|item| {
            let (q, b) = item
                .split_once(':')
                .ok_or_else(|| Error::arg(format!("pattern item `{item}` is not qubit:basis")))?;
            let q = q
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("bad qubit index `{}`", q.trim())))?;
            Ok((q, b.parse()?))
        })
        .collect()
}

/// Measures the graph state of `g` qubit by qubit in the given bases.
pub fn simulate_pattern(
    g: &Graph,
    pattern: &[(usize, Basis)],
    seed: u64,
) -> Result<Vec<TranscriptEntry>> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &(q, _) in pattern {
        if q >= n {
            return Err(Error::arg(format!("qubit {q} out of range for {n} qubits")));
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::arg(format!(
                "qubit {q} appears twice in the pattern"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tableau = graph_state_tableau(g);
    pattern
        .iter()
        .map(|&(qubit, basis)| {
            let m =
                tableau.measure_pauli(&PauliOperator::single(n, qubit, basis), None, &mut rng)?;
            Ok(TranscriptEntry {
                qubit,
                basis,
                outcome: m.outcome.value(),
                probability: m.probability,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Dense oracle

/// A normalised state vector on at most [`MAX_DENSE_QUBITS`] qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `P|ψ⟩` (not renormalised; Paulis are unitary).
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<DenseState> {
        if p.n != self.n {
            return Err(Error::arg(format!(
                "operator acts on {} qubits, state has {}",
                p.n, self.n
            )));
        }
        let (x, z) = (
            p.x.first().copied().unwrap_or(0),
            p.z.first().copied().unwrap_or(0),
        );
        let mut global = Complex64::i().powu((x & z).count_ones());
        if p.negative {
            global = -global;
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (s, &a) in self.amps.iter().enumerate() {
            let sign = if (z & s as u64).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[s ^ x as usize] = a * global * sign;
        }
        Ok(DenseState {
            n: self.n,
            amps: out,
        })
    }

    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨ψ|P|ψ⟩`, real for Hermitian `P`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        Ok(self.inner(&self.apply_pauli(p)?).re)
    }

    /// `‖P|ψ⟩ − |ψ⟩‖`; zero iff `P` stabilizes the state.
    pub fn stabilizer_residual(&self, p: &PauliOperator) -> Result<f64> {
        let moved = self.apply_pauli(p)?;
        Ok(moved
            .amps
            .iter()
            .zip(&self.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Rescales to unit norm and rotates the first nonzero amplitude onto the
    /// positive real axis.
    fn normalized(mut self) -> DenseState {
        let norm = self.norm();
        let phase = self
            .amps
            .iter()
            .find(|a| a.norm() > 1e-12)
            .map(|a| a.conj() / a.norm())
            .unwrap_or(Complex64::new(1.0, 0.0));
        for a in &mut self.amps {
            *a = *a * phase / norm;
        }
        self
    }

    /// Largest amplitude difference after fixing global phases.
    pub fn distance_up_to_phase(&self, other: &DenseState) -> f64 {
        let (a, b) = (self.clone().normalized(), other.clone().normalized());
        a.amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Born probabilities and post-states for the observable `P`.
    pub fn measure_observable(&self, p: &PauliOperator) -> Result<DenseMeasurement> {
        let moved = self.apply_pauli(p)?;
        let branch = |sign: f64| {
            let amps: Vec<Complex64> = self
                .amps
                .iter()
                .zip(&moved.amps)
                .map(|(a, b)| (a + b * sign) * 0.5)
                .collect();
            DenseState { n: self.n, amps }
        };
        Ok(DenseMeasurement::from_branches(branch(1.0), branch(-1.0)))
    }

    /// Measurement of `qubit` along the Bloch direction `(θ, φ)`, i.e. the
    /// observable `sinθ cosφ X + sinθ sinφ Y + cosθ Z`. Pauli bases are the
    /// special cases; other angles are outside the stabilizer formalism.
    pub fn measure_direction(
        &self,
        qubit: usize,
        theta: f64,
        phi: f64,
    ) -> Result<DenseMeasurement> {
        if qubit >= self.n {
            return Err(Error::arg(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n
            )));
        }
        let (c, s) = (theta.cos(), theta.sin());
        let off = Complex64::from_polar(s, -phi);
        let branch = |sign: f64| {
            let bit = 1usize << qubit;
            let mut amps = self.amps.clone();
            for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                amps[i] = ((1.0 + sign * c) * a0 + sign * off * a1) * 0.5;
                amps[i | bit] = (sign * off.conj() * a0 + (1.0 - sign * c) * a1) * 0.5;
            }
            DenseState { n: self.n, amps }
        };
        Ok(DenseMeasurement::from_branches(branch(1.0), branch(-1.0)))
    }
}

/// Outcome probabilities and renormalised post-states of a dense measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMeasurement {
    pub prob_plus: f64,
    pub prob_minus: f64,
    post_plus: Option<DenseState>,
    post_minus: Option<DenseState>,
}

/// Branches with less probability than this count as impossible.
const ZERO_PROBABILITY: f64 = 1e-12;

impl DenseMeasurement {
    fn from_branches(plus: DenseState, minus: DenseState) -> Self {
        let (pp, pm) = (plus.norm().powi(2), minus.norm().powi(2));
        DenseMeasurement {
            prob_plus: pp,
            prob_minus: pm,
            post_plus: (pp > ZERO_PROBABILITY).then(|| plus.normalized()),
            post_minus: (pm > ZERO_PROBABILITY).then(|| minus.normalized()),
        }
    }

    pub fn probability(&self, outcome: Outcome) -> f64 {
        match outcome {
            Outcome::Plus => self.prob_plus,
            Outcome::Minus => self.prob_minus,
        }
    }

    /// Post-measurement state; requesting a zero-probability branch is an error.
    pub fn post_state(&self, outcome: Outcome) -> Result<&DenseState> {
        let s = match outcome {
            Outcome::Plus => self.post_plus.as_ref(),
            Outcome::Minus => self.post_minus.as_ref(),
        };
        s.ok_or_else(|| {
            Error::Contract(format!(
                "outcome {:+} has probability zero",
                outcome.value()
            ))
        })
    }
}

/// `|G⟩ = 2^{-n/2} Σ_s (−1)^{|E(G[s])|} |s⟩`, where `E(G[s])` are the edges
/// with both ends in the support of `s`.
pub fn dense_state_vector(g: &Graph) -> Result<DenseState> {
    let n = g.n();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::SizeLimit {
            what: "dense state vector",
            size: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let scale = 0.5f64.powf(n as f64 / 2.0);
    let rows: Vec<u64> = (0..n).map(|a| g.row_word(a)).collect();
    let amps = (0..1u64 << n)
        .map(|s| {
            let inside: u32 = BitIter(s).map(|a| (rows[a] & s).count_ones()).sum::<u32>() / 2;
            Complex64::new(
                if inside.is_multiple_of(2) {
                    scale
                } else {
                    -scale
                },
                0.0,
            )
        })
        .collect();
    Ok(DenseState { n, amps })
}

/// Measures `qubit` of `state` in a Pauli basis.
pub fn dense_measure(state: &DenseState, qubit: usize, basis: Basis) -> Result<DenseMeasurement> {
    if qubit >= state.n {
        return Err(Error::arg(format!(
            "qubit {qubit} out of range for {} qubits",
            state.n
        )));
    }
    state.measure_observable(&PauliOperator::single(state.n, qubit, basis))
}
