use num_complex::Complex64;

/// SplitMix64, the crate's one and only random generator.
///
/// Chosen because the algorithm fits in four lines and reproduces exactly
/// in any language: state advances by the 64-bit golden ratio and the
/// output is the finalizer
///
/// ```text
/// z  = state += 0x9E3779B97F4A7C15
/// z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// out = z ^ (z >> 31)
/// ```
///
/// Uniform doubles take the top 53 bits; Gaussians come from Box–Muller.
/// Identical seeds therefore yield bit-identical matrices.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal via Box–Muller.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Complex Gaussian with independent standard-normal parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.standard_normal(), self.standard_normal())
    }

    /// Split off an independent stream.
    pub fn fork(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}

/// Deterministic per-trial seed: `mix(base + (index+1)·γ)` with the same
/// finalizer as the generator. Batch runs derive every trial from
/// `(base seed, trial index)` through this function, so trials can run in
/// any order (or in parallel) and still replay exactly.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut rng = SplitMix64::new(base.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
    rng.next_u64()
}
