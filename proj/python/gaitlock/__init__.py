"""Python bindings for the gaitlock gait recognition library."""

from ._gaitlock import (
    Error,
    SvmModel,
    analyze_silhouettes,
    background,
    clean_mask,
    count_components,
    difference_mask,
    estimate_period,
    evaluate,
    feature_names,
    generate,
    haar_dwt2,
    haar_idwt2,
    kernel_eval,
    load_sequence,
    partition_cycles,
    run_ablation,
    run_pipeline,
    segment_sequence,
    train,
    width_signal,
)

__all__ = [
    "Error",
    "SvmModel",
    "analyze_silhouettes",
    "background",
    "clean_mask",
    "count_components",
    "difference_mask",
    "estimate_period",
    "evaluate",
    "feature_names",
    "generate",
    "haar_dwt2",
    "haar_idwt2",
    "kernel_eval",
    "load_sequence",
    "partition_cycles",
    "run_ablation",
    "run_pipeline",
    "segment_sequence",
    "train",
    "width_signal",
]
