"""Compactly supported diffeomorphisms that relocate labeled point sets into
prescribed balls, with hard-margin separability certificates.

Everything is deterministic: sampling is keyed by explicit integer seeds, and
pipelines serialize to JSON that replays bit-for-bit across processes.
"""

from ._untangle import (
    Ball,
    DiffeoPipeline,
    FlowMap,
    Hyperplane,
    LabeledClass,
    LabeledDataset,
    LiftRelocateResult,
    Network,
    PairCertificate,
    Path,
    PointCloud,
    RelocationProblem,
    RelocationResult,
    RelocationSet,
    SeparabilityCertificate,
    SwissRoll,
    TransportResult,
    assign_label_subtargets,
    ball_contains_cloud,
    balls_disjoint,
    certify_pairwise,
    dist_set_set,
    export_svg,
    gen_hopf_link,
    gen_swiss_roll,
    gen_toy_abc,
    hopf_network,
    hulls_intersect,
    layout_targets,
    lift_relocate_project,
    linking_number,
    make_compression,
    make_translation,
    make_transport,
    margin_of,
    plan_path,
    read_labeled_csv,
    relocate_disjoint,
    sample_ball_cloud,
    separate_pair,
    toy_network,
    unroll_swiss,
    write_labeled_csv,
)

__all__ = [
    "Ball",
    "DiffeoPipeline",
    "FlowMap",
    "Hyperplane",
    "LabeledClass",
    "LabeledDataset",
    "LiftRelocateResult",
    "Network",
    "PairCertificate",
    "Path",
    "PointCloud",
    "RelocationProblem",
    "RelocationResult",
    "RelocationSet",
    "SeparabilityCertificate",
    "SwissRoll",
    "TransportResult",
    "assign_label_subtargets",
    "ball_contains_cloud",
    "balls_disjoint",
    "certify_pairwise",
    "dist_set_set",
    "export_svg",
    "gen_hopf_link",
    "gen_swiss_roll",
    "gen_toy_abc",
    "hopf_network",
    "hulls_intersect",
    "layout_targets",
    "lift_relocate_project",
    "linking_number",
    "make_compression",
    "make_translation",
    "make_transport",
    "margin_of",
    "plan_path",
    "read_labeled_csv",
    "relocate_disjoint",
    "sample_ball_cloud",
    "separate_pair",
    "toy_network",
    "unroll_swiss",
    "write_labeled_csv",
]
