//! Prefix labelings, dyadic complexity, skeletons of dense pairs and the
//! embedding pipelines built on them.

mod code;
mod labelings;
mod pipeline;
mod skeleton;

pub use code::{binary_word, labeling_stats, LabelingStats, PrefixLabeling};
pub use labelings::{forest_partition, forest_prefix_labeling, graded_prefix_coloring, height_prefix_coloring, ForestPartition};
pub use pipeline::{
    coloring_bound, default_part_bound, embed_via_coloring, embed_via_two_labelings, two_labeling_gamma, PipelineReport,
};
pub use skeleton::{
    biclique_skeleton, build_skeleton, one_biclique, skeleton_bound, validate_skeleton, OneBicliqueOutcome, Skeleton,
    SkeletonOutcome, SplitRecord,
};

use thiserror::Error;

use crate::embed::EmbedError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrefixError {
    #[error("codeword {0:?} is a prefix of {1:?}")]
    NotAPrefixCode(String, String),
    #[error("codeword {0:?} labels no vertex")]
    NotSurjective(String),
    #[error("codeword {0:?} is not binary")]
    BadCodeword(String),
    #[error("edge {0}→{1} runs against the codeword order")]
    OrderViolation(usize, usize),
    #[error("labeling has {got} entries for {want} vertices")]
    WrongLength { got: usize, want: usize },
    #[error("digraph is not graded")]
    NotGraded,
    #[error("part {0} is not a forest")]
    PartNotForest(usize),
    #[error("labeling is not a prefix coloring")]
    NotAColoring,
    #[error("labeling is not a forest labeling")]
    NotAForestLabeling,
    #[error("host has {got} vertices, the bound needs {required:.4e}")]
    PreconditionTooSmall { required: f64, got: usize },
    #[error("{phase} failed: {detail}")]
    PhaseFailed { phase: String, detail: String },
    #[error("no copy of the part labeled {0:?} inside its set")]
    PartEmbeddingFailed(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}
