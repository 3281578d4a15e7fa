//! Kernels `F`, `K`, `S` and three computations of the cycle integral.

mod arc;
mod direct;
mod kernels;
mod quadrature;

pub use arc::{cycle_integral_k, cycle_integral_s, default_rtol, ArcIntegrator, CycleIntegral};
pub use direct::{cycle_integral_direct, MIN_HEIGHT};
pub use kernels::{f_kernel, k_kernel, s_partial, s_sum, CycleData};
pub use quadrature::QuadratureRule;
