//! Reference values evaluated with 40-digit arithmetic (mpmath) from the
//! closed forms, truncated to f64.
//!
//! Network: P1 = 5, P2 = 3, N1 = 2, N2 = 8, Nr = 2.

/// `h2(0.11)`.
pub const H2_011: f64 = 0.499_915_958_164_528;
/// `1 - h2(0.11)`: a uniform bit through a binary symmetric channel.
pub const BSC_011_MI: f64 = 0.500_084_041_835_472;

/// Two-confidential-message decode-forward `R1` at alpha = 1, beta = 0.
pub const B_DF_R1: f64 = 0.553_457_601_958_256;
/// First noise-forward `R1` bound at alpha = 1, beta = 0.
pub const B_NF_R1_FIRST: f64 = 0.903_677_461_028_802_1;
/// Second noise-forward `R1` bound (the active one) at alpha = 1, beta = 0.
pub const B_NF_R1: f64 = 0.633_393_270_347_450_7;
/// `R*max` at Q = 300.
pub const RSTAR_MAX_Q300: f64 = 0.213_077_731_881_499_4;
/// `R*max` at Q = 1e12.
pub const RSTAR_MAX_Q1E12: f64 = 0.229_715_809_313_599_2;
/// The two relay-rate terms whose minimum bounds `R*`.
pub const RELAY_RATE_TERMS: [f64; 2] = [0.229_715_809_318_648_6, 0.257_286_586_414_879_1];
/// Compress-forward `R1` at alpha = 1, beta = 0, Q = 300, R* = R*max.
pub const B_CF_R1: f64 = 0.620_159_387_621_036_7;
/// First compress-forward `R1` bound at the same point.
pub const B_CF_R1_FIRST: f64 = 0.907_081_655_739_537_4;
/// No-relay common-message baseline `R0` at alpha = 0.
pub const C_BASE_R0: f64 = 0.350_219_859_070_546_1;
/// Decode-forward common rate at alpha = 0, where `½log2((P1+P2+N2)/N2)`
/// is the smallest of the three terms.
pub const C_DF_R0: f64 = 0.5;
/// The other two decode-forward common-rate terms at alpha = 0.
pub const C_DF_R0_OTHERS: [f64; 2] = [0.903_677_461_028_802_1, 1.160_964_047_443_681];
