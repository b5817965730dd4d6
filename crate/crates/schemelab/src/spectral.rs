//! Real-valued Fourier transform, periodic cross-correlation, and the
//! kernel/multiplier equivalence for circulant operators.
//!
//! Convention: unnormalized forward transform, `1/N` on the inverse.
//! A three-tap kernel `[k_m1, k_0, k_p1]` acts by cross-correlation
//! `(k * u)_i = k_m1 u_{i-1} + k_0 u_i + k_p1 u_{i+1}` with indices mod N,
//! which diagonalizes to the multiplier
//! `k_m1 e^{-i 2 pi phi} + k_0 + k_p1 e^{+i 2 pi phi}` at relative mode
//! `phi = m/N`.

use num_complex::Complex64;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};

/// Nodal values on the periodic unit interval, `x_i = i/N`.
///
/// Node N would coincide with node 0 and is not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    values: Vec<f64>,
}

impl GridState {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("grid state must not be empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(
                "grid state contains non-finite entries".into(),
            ));
        }
        Ok(Self { values })
    }

    /// All-zero state of resolution `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Node coordinates `x_i = i/N`.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n() as f64;
        (0..self.n()).map(move |i| i as f64 / n)
    }
}

/// Real-FFT image of a [`GridState`]: `N/2 + 1` complex coefficients of an
/// even-length real signal (unnormalized forward transform).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    coeffs: Vec<Complex64>,
}

impl SpectralState {
    /// Wraps raw coefficients; `coeffs.len()` must be `N/2 + 1` for some even
    /// `N >= 4`. The reality condition is checked later by [`irfft`].
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::Config(format!(
                "spectral state needs at least 3 coefficients (N >= 4), got {}",
                coeffs.len()
            )));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Config(
                "spectral state contains non-finite entries".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// The originating grid resolution `N = 2 (len - 1)`.
    pub fn n(&self) -> usize {
        2 * (self.coeffs.len() - 1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }
}

/// Three-tap cross-correlation kernel `[k_{-1}, k_0, k_{+1}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel3 {
    pub taps: [f64; 3],
}

impl Kernel3 {
    pub fn new(taps: [f64; 3]) -> Result<Self> {
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::Config("kernel taps must be finite".into()));
        }
        Ok(Self { taps })
    }
}

/// Forward real transform: `coeffs[m] = sum_i u_i exp(-i 2 pi m i / N)` for
/// `m = 0..N/2`. Requires even `N >= 4`.
pub fn rfft(state: &GridState) -> Result<SpectralState> {
    let n = state.n();
    if n < 4 || n % 2 != 0 {
        return Err(Error::Config(format!(
            "rfft requires an even grid resolution N >= 4, got N = {n}"
        )));
    }
    let mut buf: Vec<Complex<f64>> = state.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mut coeffs: Vec<Complex64> = buf[..=n / 2].to_vec();
    // DC and Nyquist coefficients of a real signal are real; strip the
    // roundoff residue so the reality condition holds exactly.
    coeffs[0].im = 0.0;
    coeffs[n / 2].im = 0.0;
    SpectralState::new(coeffs)
}

/// Inverse of [`rfft`] including the `1/N` normalization.
///
/// Fails with a validation error when the reality condition (real DC and
/// Nyquist coefficients) is violated.
pub fn irfft(spec: &SpectralState) -> Result<GridState> {
    let n = spec.n();
    let coeffs = spec.coeffs();
    let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let tol = 1e-9 * scale;
    if coeffs[0].im.abs() > tol || coeffs[n / 2].im.abs() > tol {
        return Err(Error::RealityCondition(format!(
            "DC/Nyquist coefficients must be real (imag parts {:.3e}, {:.3e})",
            coeffs[0].im,
            coeffs[n / 2].im
        )));
    }
    // Expand to the full conjugate-symmetric spectrum and run a complex
    // inverse transform.
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    for (m, c) in coeffs.iter().enumerate() {
        buf[m] = *c;
    }
    for m in 1..n / 2 {
        buf[n - m] = coeffs[m].conj();
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let values = buf.iter().map(|c| c.re / n as f64).collect();
    GridState::new(values)
}

/// Periodic cross-correlation with a three-tap kernel:
/// `out_i = k_{-1} u_{(i-1) mod N} + k_0 u_i + k_{+1} u_{(i+1) mod N}`.
pub fn circular_cross_correlate(kernel: &Kernel3, state: &GridState) -> GridState {
    let n = state.n();
    let u = state.values();
    let [km1, k0, kp1] = kernel.taps;
    let values = (0..n)
        .map(|i| {
            let left = u[(i + n - 1) % n];
            let right = u[(i + 1) % n];
            km1 * left + k0 * u[i] + kp1 * right
        })
        .collect();
    GridState { values }
}

/// Fourier multipliers of a three-tap kernel on a grid of even resolution `n`:
/// `mult[m] = k_{-1} e^{-i 2 pi phi} + k_0 + k_{+1} e^{+i 2 pi phi}` with
/// `phi = m/n`.
pub fn kernel_to_multiplier(kernel: &Kernel3, n: usize) -> Vec<Complex64> {
    assert!(
        n >= 4 && n % 2 == 0,
        "kernel_to_multiplier requires even n >= 4"
    );
    let [km1, k0, kp1] = kernel.taps;
    (0..=n / 2)
        .map(|m| {
            let phi = m as f64 / n as f64;
            let w = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phi);
            km1 * w + k0 + kp1 * w.conj()
        })
        .collect()
}

/// Element-wise product of a spectrum with a multiplier vector.
pub fn apply_multiplier(spec: &SpectralState, multiplier: &[Complex64]) -> Result<SpectralState> {
    if spec.coeffs().len() != multiplier.len() {
        return Err(Error::ShapeMismatch(format!(
            "spectrum has {} coefficients but multiplier has {}",
            spec.coeffs().len(),
            multiplier.len()
        )));
    }
    let coeffs = spec
        .coeffs()
        .iter()
        .zip(multiplier)
        .map(|(c, m)| c * m)
        .collect();
    SpectralState::new(coeffs)
}

/// `||u||_2^2` in state space.
pub fn state_energy(state: &GridState) -> f64 {
    state.values().iter().map(|v| v * v).sum()
}

/// `||u||_2^2` evaluated from the real-FFT coefficients via Parseval:
/// conjugate modes `1..N/2` count twice.
pub fn spectral_energy(spec: &SpectralState) -> f64 {
    let n = spec.n();
    let coeffs = spec.coeffs();
    let mut sum = coeffs[0].norm_sqr() + coeffs[n / 2].norm_sqr();
    for c in &coeffs[1..n / 2] {
        sum += 2.0 * c.norm_sqr();
    }
    sum / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Direct O(N^2) DFT summation, independent of the FFT path.
    fn dft_oracle(u: &[f64]) -> Vec<Complex64> {
        let n = u.len();
        (0..=n / 2)
            .map(|m| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &v) in u.iter().enumerate() {
                    let ang = -2.0 * PI * (m * i) as f64 / n as f64;
                    acc += v * Complex64::from_polar(1.0, ang);
                }
                acc
            })
            .collect()
    }

    fn random_state(n: usize, seed: u64) -> GridState {
        // small deterministic LCG; test-only
        let mut s = seed;
        let values = (0..n)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            })
            .collect();
        GridState::new(values).unwrap()
    }

    #[test]
    fn constant_vector_is_dc_only() {
        let c = 1.75;
        let state = GridState::new(vec![c; 8]).unwrap();
        let spec = rfft(&state).unwrap();
        assert!((spec.coeffs()[0].re - 8.0 * c).abs() < 1e-12);
        assert!(spec.coeffs()[0].im.abs() < 1e-12);
        for m in 1..=4 {
            assert!(spec.coeffs()[m].norm() < 1e-12, "mode {m} not zero");
        }
    }

    #[test]
    fn single_sine_matches_dft_oracle() {
        let n = 8;
        let values: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * i as f64 / n as f64).sin())
            .collect();
        let state = GridState::new(values.clone()).unwrap();
        let spec = rfft(&state).unwrap();
        // sin(2 pi x) transforms to -i N/2 at mode 1
        assert!((spec.coeffs()[1] - Complex64::new(0.0, -4.0)).norm() < 1e-12);
        let oracle = dft_oracle(&values);
        for (a, b) in spec.coeffs().iter().zip(&oracle) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn rfft_round_trip() {
        let state = random_state(100, 7);
        let back = irfft(&rfft(&state).unwrap()).unwrap();
        for (a, b) in state.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rfft_rejects_odd_or_small_n() {
        assert!(rfft(&GridState::new(vec![1.0; 7]).unwrap()).is_err());
        assert!(rfft(&GridState::new(vec![1.0; 2]).unwrap()).is_err());
    }

    #[test]
    fn irfft_trivial_spectra() {
        let zero = SpectralState::new(vec![Complex64::new(0.0, 0.0); 5]).unwrap();
        assert!(irfft(&zero).unwrap().values().iter().all(|&v| v == 0.0));

        let n = 8;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n / 2 + 1];
        coeffs[0] = Complex64::new(n as f64, 0.0);
        let ones = irfft(&SpectralState::new(coeffs).unwrap()).unwrap();
        for &v in ones.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn irfft_rejects_violated_reality_condition() {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 5];
        coeffs[0] = Complex64::new(1.0, 0.5);
        let spec = SpectralState::new(coeffs).unwrap();
        assert!(matches!(irfft(&spec), Err(Error::RealityCondition(_))));
    }

    #[test]
    fn identity_and_shift_kernels() {
        let u = GridState::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let id = circular_cross_correlate(&Kernel3::new([0.0, 1.0, 0.0]).unwrap(), &u);
        assert_eq!(id.values(), u.values());
        let shifted = circular_cross_correlate(&Kernel3::new([1.0, 0.0, 0.0]).unwrap(), &u);
        assert_eq!(shifted.values(), &[4.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn upwind_kernel_matches_spectral_path() {
        let gamma1 = -0.5;
        let kernel = Kernel3::new([-gamma1, 1.0 + gamma1, 0.0]).unwrap();
        let state = random_state(64, 3);
        let direct = circular_cross_correlate(&kernel, &state);
        let mult = kernel_to_multiplier(&kernel, 64);
        let spectral = irfft(&apply_multiplier(&rfft(&state).unwrap(), &mult).unwrap()).unwrap();
        for (a, b) in direct.values().iter().zip(spectral.values()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn upwind_multiplier_closed_form() {
        let gamma1 = -0.7;
        let kernel = Kernel3::new([-gamma1, 1.0 + gamma1, 0.0]).unwrap();
        let mult = kernel_to_multiplier(&kernel, 32);
        for (m, got) in mult.iter().enumerate() {
            let phi = m as f64 / 32.0;
            let expected = 1.0 + gamma1 - gamma1 * Complex64::from_polar(1.0, -2.0 * PI * phi);
            assert!((got - expected).norm() < 1e-14, "phi = {phi}");
        }
    }

    #[test]
    fn trivial_multipliers() {
        let id = kernel_to_multiplier(&Kernel3::new([0.0, 1.0, 0.0]).unwrap(), 16);
        assert!(id
            .iter()
            .all(|c| (c - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        // symmetric kernels give purely real multipliers
        let sym = kernel_to_multiplier(&Kernel3::new([0.3, 0.4, 0.3]).unwrap(), 16);
        assert!(sym.iter().all(|c| c.im.abs() < 1e-15));
    }

    #[test]
    fn apply_multiplier_identity_zero_and_power() {
        let state = random_state(32, 11);
        let spec = rfft(&state).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); spec.coeffs().len()];
        assert_eq!(
            apply_multiplier(&spec, &ones).unwrap().coeffs(),
            spec.coeffs()
        );
        let zeros = vec![Complex64::new(0.0, 0.0); spec.coeffs().len()];
        assert!(apply_multiplier(&spec, &zeros)
            .unwrap()
            .coeffs()
            .iter()
            .all(|c| c.norm() == 0.0));

        // t repeated applications equal one application of multiplier^t
        let kernel = Kernel3::new([0.2, 0.7, 0.1]).unwrap();
        let mult = kernel_to_multiplier(&kernel, 32);
        let t = 20;
        let mut iterated = spec.clone();
        for _ in 0..t {
            iterated = apply_multiplier(&iterated, &mult).unwrap();
        }
        let powed: Vec<Complex64> = mult.iter().map(|m| m.powi(t)).collect();
        let once = apply_multiplier(&spec, &powed).unwrap();
        for (a, b) in iterated.coeffs().iter().zip(once.coeffs()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn apply_multiplier_length_mismatch() {
        let spec = rfft(&random_state(16, 5)).unwrap();
        let short = vec![Complex64::new(1.0, 0.0); 3];
        assert!(matches!(
            apply_multiplier(&spec, &short),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn parseval_identity() {
        let state = random_state(100, 23);
        let spec = rfft(&state).unwrap();
        let lhs = state_energy(&state);
        let rhs = spectral_energy(&spec);
        assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }
}
