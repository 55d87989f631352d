//! Dense statevector representation and the primitive linear operations the
//! algorithms are built from.
//!
//! # Conventions
//!
//! A `q`-qubit basis state is labeled by the big-endian integer of its qubit
//! values: **qubit 0 is the most significant bit** of the basis-state index.
//! For a two-register system consisting of one ancilla qubit followed by an
//! `n`-qubit data register, the basis state `|b, x>` therefore sits at index
//! `b * 2^n + x`. All operations are immutable-in, fresh-out: callers never
//! observe in-place mutation.
//!
//! # Randomness
//!
//! Every randomized operation takes an explicit 64-bit seed and uses the
//! ChaCha8 stream-cipher PRNG (`rand_chacha::ChaCha8Rng`, seeded via
//! `seed_from_u64`). Outcomes are drawn by inverse-CDF lookup over the running
//! cumulative sum of probabilities, with ties broken toward the lower index
//! (the smallest index whose cumulative probability is >= the uniform draw,
//! skipping zero-probability outcomes). Identical seeds give identical
//! results, bit for bit, regardless of thread count.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest total register size the dense representation accepts.
///
/// 2^26 amplitudes is a 1 GiB vector; anything bigger is outside the
/// desk-scale scope of this crate.
pub const MAX_QUBITS: usize = 26;

/// Norm deviation tolerated when accepting externally supplied amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Unitarity tolerance for single-qubit gate matrices.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// Index of a qubit within a register.
///
/// Index 0 addresses the **most significant** bit of the basis-state label,
/// so for the two-register layout the ancilla is `QubitIndex(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitIndex(pub usize);

/// Dense, unit-norm vector of complex amplitudes over `2^num_qubits` basis
/// states.
///
/// # Examples
///
/// ```
/// use nonbool_amp::statevec::StateVector;
///
/// let state = StateVector::new_basis_state(2, 3).unwrap();
/// assert_eq!(state.dim(), 4);
/// assert_eq!(state.probabilities()[3], 1.0);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Creates the computational basis state `|basis_index>`.
    ///
    /// # Errors
    ///
    /// Returns a domain error if `num_qubits` is 0 or exceeds [`MAX_QUBITS`],
    /// or if `basis_index >= 2^num_qubits`.
    pub fn new_basis_state(num_qubits: usize, basis_index: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if basis_index >= dim {
            return Err(Error::BasisIndexOutOfRange {
                index: basis_index,
                num_qubits,
            });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[basis_index] = Complex64::ONE;
        Ok(Self { num_qubits, amps })
    }

    /// Wraps caller-supplied amplitudes, checking length and normalization.
    ///
    /// # Errors
    ///
    /// Returns a domain error if the length is not `2^num_qubits` or the
    /// squared norm deviates from 1 by more than [`NORM_TOLERANCE`].
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let deviation = (norm_sq(&amps) - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { num_qubits, amps })
    }

    /// Uniform superposition over all `2^num_qubits` basis states.
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        check_register_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            num_qubits,
            amps: vec![amp; dim],
        })
    }

    #[inline]
    #[must_use]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of amplitudes, `2^num_qubits`.
    #[inline]
    #[must_use]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    #[must_use]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Consumes the state, returning the raw amplitude vector.
    #[must_use]
    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// Applies a 2x2 unitary `u` to qubit `q`.
    ///
    /// `u` is row-major: `u[i][j]` maps input basis value `j` to output `i`.
    ///
    /// # Errors
    ///
    /// Returns a domain error if `q` is out of range or `u` deviates from
    /// unitarity by more than [`UNITARY_TOLERANCE`].
    ///
    /// # Examples
    ///
    /// ```
    /// use nonbool_amp::statevec::{gates, QubitIndex, StateVector};
    ///
    /// let plus = StateVector::new_basis_state(1, 0)
    ///     .unwrap()
    ///     .apply_single_qubit(QubitIndex(0), &gates::H)
    ///     .unwrap();
    /// assert!((plus.probabilities()[0] - 0.5).abs() < 1e-15);
    /// ```
    pub fn apply_single_qubit(&self, q: QubitIndex, u: &[[Complex64; 2]; 2]) -> Result<Self> {
        self.check_qubit(q)?;
        check_unitary_2x2(u)?;
        let mut amps = self.amps.clone();
        kernel::single_qubit(&mut amps, self.num_qubits, q.0, u);
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Controlled phase: multiplies amplitudes with both `a` and `b` set by
    /// `e^{i angle}`. Symmetric in its two qubit arguments.
    pub fn apply_controlled_phase(&self, a: QubitIndex, b: QubitIndex, angle: f64) -> Result<Self> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(Error::Domain(
                "controlled phase requires two distinct qubits".into(),
            ));
        }
        let mut amps = self.amps.clone();
        kernel::controlled_phase(&mut amps, self.num_qubits, a.0, b.0, angle);
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Controlled NOT with control `c` and target `t`.
    pub fn apply_cnot(&self, c: QubitIndex, t: QubitIndex) -> Result<Self> {
        self.check_qubit(c)?;
        self.check_qubit(t)?;
        if c == t {
            return Err(Error::Domain("CNOT requires two distinct qubits".into()));
        }
        let mut amps = self.amps.clone();
        kernel::cnot(&mut amps, self.num_qubits, c.0, t.0);
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Reflects `state` about the ray spanned by `axis`:
    /// returns `2 <axis|state> axis - state`.
    ///
    /// `axis` must be unit-normalized; this is the rank-1 formula for the
    /// operator `2 |axis><axis| - I`, computed exactly rather than via a gate
    /// decomposition.
    ///
    /// # Errors
    ///
    /// Returns a domain error if dimensions differ.
    pub fn reflect_about(&self, axis: &StateVector) -> Result<Self> {
        if self.dim() != axis.dim() {
            return Err(Error::DimensionMismatch {
                expected: axis.dim(),
                got: self.dim(),
            });
        }
        let mut amps = self.amps.clone();
        kernel::reflect_about(&mut amps, &axis.amps);
        Ok(Self {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    ///
    /// # Errors
    ///
    /// Returns a domain error if dimensions differ.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(inner(&self.amps, &other.amps))
    }

    /// Born-rule probabilities `|amplitude|^2` per basis index.
    ///
    /// The entries sum to 1 within [`NORM_TOLERANCE`] for any state produced
    /// by this crate.
    #[must_use]
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws `shots` measurement outcomes in the computational basis.
    ///
    /// Returns one count per basis index, summing to `shots`. Sampling is
    /// deterministic in `seed` (see the module docs for the exact scheme).
    ///
    /// # Errors
    ///
    /// Returns a domain error if `shots` is 0.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Vec<u64>> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(sample_counts(&self.probabilities(), shots, seed))
    }

    /// Measures qubit `q` in the 0/1 basis.
    ///
    /// Returns the observed bit and the renormalized post-measurement state.
    /// The draw is deterministic in `seed`.
    pub fn measure_qubit(&self, q: QubitIndex, seed: u64) -> Result<(u8, StateVector)> {
        self.check_qubit(q)?;
        let mask = 1usize << (self.num_qubits - 1 - q.0);
        let prob_zero: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: f64 = rng.random();
        // Inverse-CDF over the two outcomes with ties toward bit 0; a
        // zero-probability branch is never selected.
        let bit: u8 = if prob_zero > 0.0 && prob_zero >= u { 0 } else { 1 };
        let keep = if bit == 0 { prob_zero } else { 1.0 - prob_zero };
        let scale = 1.0 / keep.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if usize::from(bit) == usize::from(i & mask != 0) {
                    a * scale
                } else {
                    Complex64::ZERO
                }
            })
            .collect();
        Ok((
            bit,
            StateVector {
                num_qubits: self.num_qubits,
                amps,
            },
        ))
    }

    /// Squared L2 norm of the amplitudes (1 up to rounding for valid states).
    #[must_use]
    pub fn norm_sqr(&self) -> f64 {
        norm_sq(&self.amps)
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    fn check_qubit(&self, q: QubitIndex) -> Result<()> {
        if q.0 >= self.num_qubits {
            Err(Error::QubitOutOfRange {
                index: q.0,
                num_qubits: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }
}

fn check_register_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(Error::Domain("register needs at least one qubit".into()));
    }
    if num_qubits > MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{num_qubits} qubits exceeds the dense-representation cap of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

fn check_unitary_2x2(u: &[[Complex64; 2]; 2]) -> Result<()> {
    // Rows of u form an orthonormal pair iff u is unitary.
    let r0 = (u[0][0].norm_sqr() + u[0][1].norm_sqr() - 1.0).abs();
    let r1 = (u[1][0].norm_sqr() + u[1][1].norm_sqr() - 1.0).abs();
    let cross = (u[0][0].conj() * u[1][0] + u[0][1].conj() * u[1][1]).norm();
    if r0 > UNITARY_TOLERANCE || r1 > UNITARY_TOLERANCE || cross > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary {
            tolerance: UNITARY_TOLERANCE,
        });
    }
    Ok(())
}

#[inline]
fn norm_sq(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

#[inline]
pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Samples `shots` outcomes from `probs` by seeded inverse-CDF lookup.
///
/// Shared by [`StateVector::sample`] and the phase-register sampling in the
/// QPE module so both use the identical, documented scheme.
pub(crate) fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Vec<u64> {
    let mut cum = Vec::with_capacity(probs.len());
    let mut acc = 0.0f64;
    for &p in probs {
        acc += p;
        cum.push(acc);
    }
    let mut counts = vec![0u64; probs.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        let u: f64 = rng.random();
        let mut idx = cum.partition_point(|&c| c < u);
        if idx >= probs.len() {
            idx = probs.len() - 1;
        }
        // Never land on a zero-probability outcome (possible only when the
        // draw hits a cumulative boundary exactly).
        while probs[idx] == 0.0 && idx + 1 < probs.len() {
            idx += 1;
        }
        counts[idx] += 1;
    }
    counts
}

/// Common 2x2 gate matrices.
pub mod gates {
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    const C1: Complex64 = Complex64::new(1.0, 0.0);
    const C0: Complex64 = Complex64::ZERO;
    const CH: Complex64 = Complex64::new(FRAC_1_SQRT_2, 0.0);

    /// Hadamard.
    pub const H: [[Complex64; 2]; 2] = [[CH, CH], [CH, Complex64::new(-FRAC_1_SQRT_2, 0.0)]];

    /// Pauli X (bit flip).
    pub const X: [[Complex64; 2]; 2] = [[C0, C1], [C1, C0]];

    /// Identity.
    pub const I: [[Complex64; 2]; 2] = [[C1, C0], [C0, C1]];

    /// Diagonal phase gate `diag(1, e^{i angle})`.
    #[must_use]
    pub fn phase(angle: f64) -> [[Complex64; 2]; 2] {
        [[C1, C0], [C0, Complex64::cis(angle)]]
    }
}

/// In-place amplitude kernels shared by the higher-level modules.
///
/// All kernels take the register size explicitly because they also run on
/// raw work buffers (the QPE module operates on a combined phase + system
/// register without wrapping every intermediate in a `StateVector`).
pub(crate) mod kernel {
    use super::threads;
    use num_complex::Complex64;

    /// Applies a 2x2 matrix to `qubit` (0 = most significant).
    pub(crate) fn single_qubit(
        amps: &mut [Complex64],
        num_qubits: usize,
        qubit: usize,
        u: &[[Complex64; 2]; 2],
    ) {
        let step = 1usize << (num_qubits - 1 - qubit);
        let (u00, u01, u10, u11) = (u[0][0], u[0][1], u[1][0], u[1][1]);
        threads::for_each_chunk(amps, 2 * step, |_, chunk| {
            let mut base = 0;
            while base < chunk.len() {
                for offset in 0..step {
                    let j = base + offset;
                    let k = j + step;
                    let a = chunk[j];
                    let b = chunk[k];
                    chunk[j] = u00 * a + u01 * b;
                    chunk[k] = u10 * a + u11 * b;
                }
                base += 2 * step;
            }
        });
    }

    /// Multiplies amplitudes with both qubits set by `e^{i angle}`.
    pub(crate) fn controlled_phase(
        amps: &mut [Complex64],
        num_qubits: usize,
        a: usize,
        b: usize,
        angle: f64,
    ) {
        let mask = (1usize << (num_qubits - 1 - a)) | (1usize << (num_qubits - 1 - b));
        let phase = Complex64::cis(angle);
        threads::for_each_chunk(amps, 1, |start, chunk| {
            for (i, amp) in chunk.iter_mut().enumerate() {
                if (start + i) & mask == mask {
                    *amp *= phase;
                }
            }
        });
    }

    /// Flips `target` where `control` is set.
    pub(crate) fn cnot(amps: &mut [Complex64], num_qubits: usize, control: usize, target: usize) {
        let cmask = 1usize << (num_qubits - 1 - control);
        let tmask = 1usize << (num_qubits - 1 - target);
        for i in 0..amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                amps.swap(i, i | tmask);
            }
        }
    }

    /// Swaps two qubits (relabels basis states).
    pub(crate) fn swap_qubits(amps: &mut [Complex64], num_qubits: usize, a: usize, b: usize) {
        let amask = 1usize << (num_qubits - 1 - a);
        let bmask = 1usize << (num_qubits - 1 - b);
        for i in 0..amps.len() {
            if i & amask != 0 && i & bmask == 0 {
                amps.swap(i, i ^ amask ^ bmask);
            }
        }
    }

    /// In-place reflection `2 <axis|v> axis - v` about a unit `axis`.
    pub(crate) fn reflect_about(v: &mut [Complex64], axis: &[Complex64]) {
        let c = 2.0 * super::inner(axis, v);
        for (vi, ai) in v.iter_mut().zip(axis) {
            *vi = c * ai - *vi;
        }
    }
}

/// Deterministic element-wise chunk parallelism.
///
/// Kernels fan out only for pure element-wise (or pair-local) updates, never
/// for reductions, so results are bitwise identical for any thread count.
/// `NONBOOL_AMP_THREADS` caps the worker count; unset, the cap is the
/// available parallelism clamped to 8.
pub(crate) mod threads {
    use num_complex::Complex64;
    use std::sync::OnceLock;

    static CAP: OnceLock<usize> = OnceLock::new();

    /// Slices shorter than this stay on the calling thread.
    const PAR_THRESHOLD: usize = 1 << 15;

    pub(crate) fn cap() -> usize {
        *CAP.get_or_init(|| match std::env::var("NONBOOL_AMP_THREADS") {
            Ok(v) => v.trim().parse::<usize>().map_or(1, |n| n.max(1)),
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get().min(8)),
        })
    }

    /// Runs `f(start_index, chunk)` over disjoint chunks of `data`. Chunk
    /// boundaries are multiples of `align`, which callers choose so no update
    /// crosses a chunk edge.
    pub(crate) fn for_each_chunk<F>(data: &mut [Complex64], align: usize, f: F)
    where
        F: Fn(usize, &mut [Complex64]) + Sync,
    {
        let len = data.len();
        let workers = cap();
        if workers <= 1 || len < PAR_THRESHOLD || align >= len {
            f(0, data);
            return;
        }
        let per = len.div_ceil(workers).next_multiple_of(align);
        std::thread::scope(|scope| {
            for (i, chunk) in data.chunks_mut(per).enumerate() {
                let f = &f;
                scope.spawn(move || f(i * per, chunk));
            }
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} != {b} within {tol:e}");
    }

    #[test]
    fn basis_state_construction() {
        let s = StateVector::new_basis_state(1, 0).unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::ONE, Complex64::ZERO]);

        let s = StateVector::new_basis_state(2, 3).unwrap();
        assert_eq!(s.amplitudes()[3], Complex64::ONE);
        assert_eq!(s.probabilities()[..3], [0.0, 0.0, 0.0]);

        let s = StateVector::new_basis_state(9, 0).unwrap();
        assert_eq!(s.dim(), 512);
        assert_eq!(s.amplitudes()[0], Complex64::ONE);

        assert!(matches!(
            StateVector::new_basis_state(2, 4),
            Err(Error::BasisIndexOutOfRange { .. })
        ));
        assert!(StateVector::new_basis_state(0, 0).is_err());
    }

    #[test]
    fn hadamard_makes_plus_state() {
        let s = StateVector::new_basis_state(1, 0)
            .unwrap()
            .apply_single_qubit(QubitIndex(0), &gates::H)
            .unwrap();
        assert_close(s.amplitudes()[0], Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert_close(s.amplitudes()[1], Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
    }

    #[test]
    fn x_on_ancilla_moves_block() {
        // Ancilla is qubit 0, the most significant bit: |0,x> -> |1,x>.
        let n = 3;
        let s = StateVector::new_basis_state(n, 2).unwrap();
        let flipped = s.apply_single_qubit(QubitIndex(0), &gates::X).unwrap();
        assert_eq!(flipped.amplitudes()[2 + 4], Complex64::ONE);
    }

    #[test]
    fn gate_on_least_significant_qubit() {
        let n = 3;
        let s = StateVector::new_basis_state(n, 0).unwrap();
        let flipped = s.apply_single_qubit(QubitIndex(2), &gates::X).unwrap();
        assert_eq!(flipped.amplitudes()[1], Complex64::ONE);
    }

    #[test]
    fn non_unitary_rejected() {
        let bad = [
            [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::ZERO, Complex64::ONE],
        ];
        let s = StateVector::new_basis_state(1, 0).unwrap();
        assert!(matches!(
            s.apply_single_qubit(QubitIndex(0), &bad),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn hadamard_involution_on_random_state() {
        let s = random_state(3, 11);
        let twice = s
            .apply_single_qubit(QubitIndex(1), &gates::H)
            .unwrap()
            .apply_single_qubit(QubitIndex(1), &gates::H)
            .unwrap();
        for (a, b) in s.amplitudes().iter().zip(twice.amplitudes()) {
            assert_close(*a, *b, 1e-12);
        }
    }

    #[test]
    fn reflection_fixed_point_and_flip() {
        let axis = random_state(2, 3);
        let reflected = axis.reflect_about(&axis).unwrap();
        for (a, b) in axis.amplitudes().iter().zip(reflected.amplitudes()) {
            assert_close(*a, *b, 1e-12);
        }

        // Build a vector orthogonal to the axis and check it flips sign.
        let probe = StateVector::new_basis_state(2, 0).unwrap();
        let overlap = axis.inner_product(&probe).unwrap();
        let mut perp: Vec<Complex64> = probe
            .amplitudes()
            .iter()
            .zip(axis.amplitudes())
            .map(|(p, a)| p - overlap * a)
            .collect();
        let norm = norm_sq(&perp).sqrt();
        for a in &mut perp {
            *a /= norm;
        }
        let perp = StateVector::from_amplitudes(2, perp).unwrap();
        let flipped = perp.reflect_about(&axis).unwrap();
        for (a, b) in perp.amplitudes().iter().zip(flipped.amplitudes()) {
            assert_close(-*a, *b, 1e-12);
        }
    }

    #[test]
    fn inner_product_basics() {
        let v = random_state(3, 7);
        assert_close(v.inner_product(&v).unwrap(), Complex64::ONE, 1e-12);

        let zero = StateVector::new_basis_state(1, 0).unwrap();
        let one = StateVector::new_basis_state(1, 1).unwrap();
        assert_eq!(zero.inner_product(&one).unwrap(), Complex64::ZERO);

        let two = StateVector::new_basis_state(2, 0).unwrap();
        assert!(matches!(
            zero.inner_product(&two),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn probabilities_uniform() {
        let s = StateVector::uniform(8).unwrap();
        for p in s.probabilities() {
            assert!((p - 1.0 / 256.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_counts_sum() {
        let s = random_state(3, 5);
        let a = s.sample(10_000, 42).unwrap();
        let b = s.sample(10_000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 10_000);
        assert!(matches!(s.sample(0, 1), Err(Error::ZeroShots)));

        let basis = StateVector::new_basis_state(2, 2).unwrap();
        let counts = basis.sample(100, 9).unwrap();
        assert_eq!(counts, vec![0, 0, 100, 0]);
    }

    #[test]
    fn sampling_never_emits_zero_probability_outcomes() {
        let probs = [0.0, 0.5, 0.0, 0.5];
        let counts = sample_counts(&probs, 50_000, 123);
        assert_eq!(counts[0], 0);
        assert_eq!(counts[2], 0);
    }

    #[test]
    fn measure_basis_qubit_is_deterministic() {
        let s = StateVector::new_basis_state(2, 1).unwrap();
        for seed in 0..4 {
            let (bit, post) = s.measure_qubit(QubitIndex(0), seed).unwrap();
            assert_eq!(bit, 0);
            assert_eq!(post.amplitudes(), s.amplitudes());
            let (bit, _) = s.measure_qubit(QubitIndex(1), seed).unwrap();
            assert_eq!(bit, 1);
        }
    }

    #[test]
    fn measure_plus_collapses_to_matching_basis_state() {
        let plus = StateVector::new_basis_state(1, 0)
            .unwrap()
            .apply_single_qubit(QubitIndex(0), &gates::H)
            .unwrap();
        let mut seen = [false; 2];
        for seed in 0..32 {
            let (bit, post) = plus.measure_qubit(QubitIndex(0), seed).unwrap();
            seen[usize::from(bit)] = true;
            let expected = StateVector::new_basis_state(1, usize::from(bit)).unwrap();
            for (a, b) in post.amplitudes().iter().zip(expected.amplitudes()) {
                assert_close(*a, *b, 1e-12);
            }
        }
        assert!(seen[0] && seen[1], "32 seeds never produced both outcomes");
    }

    #[test]
    fn controlled_phase_hits_only_the_11_block() {
        let s = StateVector::uniform(2).unwrap();
        let out = s
            .apply_controlled_phase(QubitIndex(0), QubitIndex(1), std::f64::consts::PI)
            .unwrap();
        assert_close(out.amplitudes()[3], Complex64::new(-0.5, 0.0), 1e-15);
        assert_close(out.amplitudes()[0], Complex64::new(0.5, 0.0), 1e-15);
    }

    #[test]
    fn cnot_permutes_basis() {
        let s = StateVector::new_basis_state(2, 2).unwrap(); // |10>
        let out = s.apply_cnot(QubitIndex(0), QubitIndex(1)).unwrap();
        assert_eq!(out.amplitudes()[3], Complex64::ONE); // |11>
    }

    #[test]
    fn swap_kernel_relabels_qubits() {
        let mut amps = StateVector::new_basis_state(2, 1).unwrap().into_amplitudes(); // |01>
        kernel::swap_qubits(&mut amps, 2, 0, 1);
        assert_eq!(amps[2], Complex64::ONE); // |10>
    }

    pub(crate) fn random_state(num_qubits: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << num_qubits;
        let mut amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = norm_sq(&amps).sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amplitudes(num_qubits, amps).unwrap()
    }
}
