"""coreshift: socio-technical core-periphery analysis of software projects.

Clusters a code dependency matrix, ranks the clusters by core-ness,
tracks each developer's distance from the core across time windows of
the commit history, and classifies the resulting trend.
"""

from .clustering import (
    Bid,
    ClusterAssignment,
    ClusteringParams,
    ClusterModel,
    DependencyClustering,
    cluster,
    clustered_cost,
    compute_bid,
    dependency_cost,
    pair_dependency,
)
from .coreperiphery import (
    CorenessRanking,
    CpdmPoint,
    CpdmSeries,
    PeopleClusterMatrix,
    analyze_windows,
    average_cpdm,
    cluster_dependency_matrix,
    cluster_size_matrix,
    coreness_ranking,
    cpdm_series,
    developer_cpdm,
    people_cluster_matrix,
)
from .dsm import DSM, DependencyGraph, ModuleId, build_dsm, identify_vertical_buses
from .errors import (
    ConfigError,
    CoreshiftError,
    EdgeListFormatError,
    ExtractError,
    GitLogFormatError,
    HistoryError,
    TouchTsvFormatError,
)
from .extract import (
    BUILTIN_PROFILES,
    JAVA_PROFILE,
    LanguageProfile,
    ScanReport,
    load_edge_list,
    path_to_module,
    scan_imports,
    serialize_edge_list,
)
from .history import (
    CommitRecord,
    TimeWindow,
    TouchTable,
    build_touch_table,
    make_windows,
    parse_git_log,
    parse_touch_tsv,
)
from .pipeline import AnalyzeConfig, run_pipeline
from .report import HealthReport, emit_dot, emit_report_json, emit_series_csv
from .shift import ShiftReport, ShiftThresholds, classify_shift

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnalyzeConfig",
    "Bid",
    "BUILTIN_PROFILES",
    "ClusterAssignment",
    "ClusteringParams",
    "ClusterModel",
    "CommitRecord",
    "ConfigError",
    "CorenessRanking",
    "CoreshiftError",
    "CpdmPoint",
    "CpdmSeries",
    "DependencyClustering",
    "DependencyGraph",
    "DSM",
    "EdgeListFormatError",
    "ExtractError",
    "GitLogFormatError",
    "HealthReport",
    "HistoryError",
    "JAVA_PROFILE",
    "LanguageProfile",
    "ModuleId",
    "PeopleClusterMatrix",
    "ScanReport",
    "ShiftReport",
    "ShiftThresholds",
    "TimeWindow",
    "TouchTable",
    "TouchTsvFormatError",
    "analyze_windows",
    "average_cpdm",
    "build_dsm",
    "build_touch_table",
    "classify_shift",
    "cluster",
    "cluster_dependency_matrix",
    "cluster_size_matrix",
    "clustered_cost",
    "compute_bid",
    "coreness_ranking",
    "cpdm_series",
    "dependency_cost",
    "developer_cpdm",
    "emit_dot",
    "emit_report_json",
    "emit_series_csv",
    "identify_vertical_buses",
    "load_edge_list",
    "make_windows",
    "pair_dependency",
    "parse_git_log",
    "parse_touch_tsv",
    "path_to_module",
    "people_cluster_matrix",
    "run_pipeline",
    "scan_imports",
    "serialize_edge_list",
]
