//! Scalar abstraction: everything numeric in this crate is generic over a
//! floating-point type implementing [`Real`] (`f32` or `f64`).

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rand_core::RngCore;
use rustfft::{Fft, FftNum, FftPlanner};

/// Floating-point scalar usable for both physical values and FFT kernels.
pub trait Real:
    FftNum + Float + FloatConst + FromPrimitive + NumAssign + Default + Sum + fmt::Display + fmt::LowerExp
{
    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;

    /// Standard normal sample driven by a raw RNG stream (Box-Muller).
    /// Kept here so the whole crate needs no distribution dependency and
    /// sampling stays bit-reproducible for a fixed stream.
    fn standard_normal<R: RngCore>(rng: &mut R) -> Self {
        let u1 = unit_open(rng);
        let u2 = unit_open(rng);
        let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        Self::of(z)
    }

    /// Cached forward/inverse FFT plans of length `n` for this scalar type.
    fn fft_plans(n: usize) -> (Arc<dyn Fft<Self>>, Arc<dyn Fft<Self>>);
}

/// Uniform in (0, 1], never 0 so `ln` is safe.
fn unit_open<R: RngCore>(rng: &mut R) -> f64 {
    let bits = rng.next_u64() >> 11;
    (bits as f64 + 1.0) / (1u64 << 53) as f64
}

type PlanPair<F> = (Arc<dyn Fft<F>>, Arc<dyn Fft<F>>);

fn plans_from<F: FftNum>(cache: &Mutex<HashMap<usize, PlanPair<F>>>, n: usize) -> PlanPair<F> {
    let mut map = cache.lock().expect("fft plan cache poisoned");
    map.entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
        })
        .clone()
}

impl Real for f64 {
    fn of(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn fft_plans(n: usize) -> PlanPair<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, PlanPair<f64>>>> = OnceLock::new();
        plans_from(CACHE.get_or_init(Default::default), n)
    }
}

impl Real for f32 {
    fn of(x: f64) -> Self {
        x as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn fft_plans(n: usize) -> PlanPair<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, PlanPair<f32>>>> = OnceLock::new();
        plans_from(CACHE.get_or_init(Default::default), n)
    }
}
