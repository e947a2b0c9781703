//! Special functions and log-domain arithmetic.

mod bessel;
mod gamma;
mod log_signed;
mod logdet;
mod normal;
mod quantile;

pub use bessel::bessel_k0;
pub use gamma::{
    digamma, log1m_exp, log_binomial, log_factorial, log_gamma, log_incomplete_gamma,
    log_superfactorial, trigamma, EULER_GAMMA,
};
pub(crate) use gamma::{digamma_unchecked, trigamma_unchecked};
pub use log_signed::{logsum, logsumexp, LogSigned, CANCELLATION_NATS};
pub use normal::{normal_cdf, normal_quantile};
pub use logdet::{logdet, logdet_f64, logdet_tracked, LogDet};
pub use quantile::{
    inv_gamma_cdf, inv_gamma_cdf_log_arg, inv_gamma_density, inv_gamma_log_quantile,
    inv_gamma_log_sf_log_arg, inv_gamma_quantile,
};
