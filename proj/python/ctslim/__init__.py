"""Slice-stack reduction: spatial/slice redundancy removal (SSFL++) and
kernel-density slice sampling (KDS) over CT-style image stacks."""

from ctslim._core import (
    CropRect,
    CtslimError,
    DensityEstimate,
    PhantomSpec,
    PhantomTruth,
    PipelineConfig,
    SampleSelection,
    SamplingMode,
    SliceWindow,
    __version__,
    apply_crop,
    bce_loss,
    crop_rect,
    dilate,
    estimate_density,
    f1_score,
    fill_holes,
    generate_phantom,
    lowpass_filter,
    rank_auc,
    read_image,
    resize_bilinear,
    run_pipeline,
    sample,
    sample_random,
    scotts_bandwidth,
    segment,
    select_window,
    slice_area,
    stratify,
    write_png,
)

__all__ = [
    "CropRect",
    "CtslimError",
    "DensityEstimate",
    "PhantomSpec",
    "PhantomTruth",
    "PipelineConfig",
    "SampleSelection",
    "SamplingMode",
    "SliceWindow",
    "__version__",
    "apply_crop",
    "bce_loss",
    "crop_rect",
    "dilate",
    "estimate_density",
    "f1_score",
    "fill_holes",
    "generate_phantom",
    "lowpass_filter",
    "rank_auc",
    "read_image",
    "resize_bilinear",
    "run_pipeline",
    "sample",
    "sample_random",
    "scotts_bandwidth",
    "segment",
    "select_window",
    "slice_area",
    "stratify",
    "write_png",
]
