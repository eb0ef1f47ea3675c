#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bootstrap;
pub mod dataset;
pub mod error;
pub mod model;
pub mod optim;
pub mod rng;

pub use bootstrap::{
    bootstrap_quantile, draw_bootstrap_sample, sample_weights, smooth_indicator,
    smoothed_bootstrap_quantile, BootstrapSample, WeightLaw,
};
pub use dataset::{Dataset, Theta};
pub use error::{Error, Result};
pub use model::{CanonicalLink, Family, Model};
pub use optim::{
    bootstrap_lr_statistic, fit_mle, fit_weighted_mle, lr_statistic, FitResult, WeightVector,
};
