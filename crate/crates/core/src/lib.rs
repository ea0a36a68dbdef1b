//! Streaming longest-path toolkit.
//!
//! The crate is organized around a single pipeline: build or generate a graph
//! ([`graph`]), turn it into an insertion-only or insertion-deletion edge
//! stream ([`stream`]), sample a bounded set of edges in one pass
//! ([`sample`]), and extract a long simple path from the sample
//! ([`path`]).  The [`instances`] module generates structured inputs with
//! planted witnesses on which the pipeline's guarantees can be checked
//! exactly, and [`experiment`] wraps everything in seeded, replayable
//! Monte-Carlo runs.
//!
//! All randomness flows from a single 64-bit master seed through the
//! derivation in [`rng`]; every run with the same configuration and seed is
//! bit-identical.

pub mod experiment;
pub mod generate;
pub mod graph;
pub mod instances;
pub mod path;
pub mod rng;
pub mod sample;
pub mod stats;
pub mod stream;

pub use experiment::{
    emit_report, emit_report_file, run_experiment, ExperimentConfig, ExperimentError,
    ExperimentReport, ReportFormat,
};
pub use generate::{gnp, planted_path, random_regular, GenError};
pub use graph::{DegreeStats, Graph, GraphError, PathViolation, PathWitness};
pub use instances::{
    decode_insdel, decode_undirected, dlp_witness_path, gen_dlp, gen_insdel_reduction, gen_slp,
    gen_undirected_reduction, longest_cycle, slp_exact_lp, verify_rs_decomposition,
    verify_trimmed_path, DlpInstance, InsDelInstance, InstanceError, Permutation, RsGraph,
    SlpInstance, UndirInstance,
};
pub use num_rational::Ratio;
pub use path::{
    exact_longest_path, extract_path_from_sample, greedy_extend, hybrid_run, peel_core,
    run_semi_streaming, run_semi_streaming_with_sampler, CoreResult, ExtractMode, PathError,
    RunMode, RunReport, SamplerChoice, SamplerKind,
};
pub use sample::EdgeSample;
pub use stream::{EventStream, OrderPolicy, StreamEvent, StreamOp};
