//! Uplink NOMA/OMA fairness analysis.
//!
//! * [`rate`]: channel model and the NOMA/OMA rate allocations on one subcarrier.
//! * [`fairness`]: Jain's index and the two-user fairness indicator `β(Γ)`.
//! * [`lambert`]: principal-branch Lambert W.
//! * [`region`]: two-user capacity region boundaries.
//! * [`channel`]: random cell drops, path loss, fading and user pairing.
//! * [`experiments`]: Monte Carlo sweeps and the hybrid NOMA-OMA scheme.

pub mod channel;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fairness;
pub mod lambert;
pub mod rate;
pub mod region;
pub mod stats;

pub use channel::{Fading, NetworkDrop, SimConfig};
pub use error::{Error, Result};
pub use experiments::{hybrid_select, AccessScheme, DistributionResult, SweepResult};
pub use fairness::{
    beta_exact, beta_high_snr, jains_index, noma_more_fair, FairnessDecision, FairnessThreshold,
};
pub use lambert::{lambert_w0, lambert_w0_ln};
pub use rate::{
    f_map, g_map, noma_rates, normalized_gains, oma_rates, sum_rate, FairnessContext,
    RateAllocation, Scheme, UserChannels,
};
pub use region::{RatePair, RegionBoundary};
