"""Behavior labeling, direction annotation, API statistics, control-flow
graph diffing, and session clustering over parsed snapshots."""

from .apicalls import ApiStats, api_stats
from .cfg import Cfg, CfgDelta, CfgEdge, CfgNode, cfg_diff, extract_cfg, extract_snapshot_cfgs
from .cluster import SessionCluster, cluster_sessions, levenshtein, silhouette_score
from .labels import annotate_direction, label_sequence, snapshot_distance

__all__ = [
    "ApiStats", "Cfg", "CfgDelta", "CfgEdge", "CfgNode", "SessionCluster",
    "annotate_direction", "api_stats", "cfg_diff", "cluster_sessions",
    "extract_cfg", "extract_snapshot_cfgs", "label_sequence", "levenshtein",
    "silhouette_score", "snapshot_distance",
]
