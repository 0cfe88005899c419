//! Numerical laboratory for exponential sums and divisor statistics in
//! arithmetic progressions: hyper-Kloosterman sums and their moments against
//! tensor-multiplicity predictions, Schur-polynomial generating identities,
//! generalized Bessel/Mellin transforms with their unitarity law, the Voronoï
//! summation formula for the multiple divisor function, and the central-limit
//! behaviour of d_N modulo a prime.
//!
//! Modules:
//! - [`ffield`]: prime fields, discrete logs, additive characters
//! - [`kloosterman`]: K_r(u,p) tables (FFT), moment sums, autocorrelations
//! - [`repmult`]: exact SL_N/Sp_N trivial-representation multiplicities
//! - [`symfunc`]: Schur polynomials, P_N(x,y,T), Hecke relations, Euler factors
//! - [`divisor`]: d_N sieves, Hurwitz zeta, Stieltjes constants, β_k(p), H_N, Q
//! - [`mellin`]: windows, Mellin transforms, generalized Bessel transforms
//! - [`voronoi`]: the d_N summation formula and progression statistics
//! - [`stats`]: empirical moments, Gaussian references, KS diagnostics

pub mod divisor;
pub mod error;
pub mod ffield;
pub mod gamma;
pub mod kloosterman;
pub mod mellin;
pub mod repmult;
pub mod stats;
pub mod symfunc;
pub mod voronoi;

pub use error::{Error, Result};
pub use ffield::PrimeContext;
pub use kloosterman::{KloostermanTable, MomentSpec};
pub use mellin::{ArchParams, BesselPair, BesselTransform, ContourSpec, Window};
pub use symfunc::PolyInT;
pub use voronoi::{ProgressionStat, VoronoiReport};
