//! Radio resource dimensioning for an OFDM cell whose users live on roads.
//!
//! Roads are a Poisson line process, users a linear Poisson process on each
//! road (a Cox process in the plane). Each user needs a number of PRBs set by
//! its distance to the base station; the total demand is compound Poisson
//! given the roads. This crate computes its tail, the congestion probability,
//! both through a Cauchy integral of the generating function and by direct
//! simulation, and solves for the PRB budget meeting a congestion target.
//!
//! Modules, bottom-up: [`geometry`] samples roads and users, [`radio`] holds
//! the link budget, [`congestion`] the demand law and its estimators,
//! [`dimensioning`] the solver and studies.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod congestion;
pub mod dimensioning;
mod error;
pub mod geometry;
pub mod quadrature;
pub mod radio;
mod scenario;
pub mod streams;

pub use congestion::{
    alpha, brute_force_ccdf, compound_poisson_pmf, congestion_avg, congestion_conditional,
    congestion_conditional_with, congestion_mc, demand_profile_cox, demand_profile_cox_annulus,
    demand_profile_ppp, demand_profile_ppp_annulus, demand_profile_ppp_zones, pgf_eval,
    sample_gamma, CongestionEstimate, DemandProfile, DemandSamples, PrbDemand, RealizationSet,
};
pub use dimensioning::{
    dimension, dimension_on, region_study, solve_min_m, sweep_traffic, sweep_traffic_on,
    DimensioningResult, RegionTable, SweepRow, DEFAULT_M_CAP,
};
pub use error::{Error, Result};
pub use geometry::{
    chord_half_length, mean_users_in_disk, sample_plp, sample_spatial_ppp,
    sample_users_on_realization, Line, PlpRealization, UserPositions,
};
pub use quadrature::QuadratureOptions;
pub use radio::{
    interference_from_margin, prb_demand, ring_radii, sinr, terminal_n, throughput,
    InterferenceProfile, RadioConfig, RadioConfigDb, Region, RingPartition, Zone,
};
pub use scenario::{EstimatorSettings, Scenario, Traffic};
pub use streams::{SeedTag, Substreams};
