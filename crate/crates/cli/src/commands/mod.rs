pub mod bench;
pub mod detect;
pub mod eval;
pub mod recognize;
pub mod serve;
pub mod synth;
