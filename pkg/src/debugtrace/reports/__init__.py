"""Analyst reports: statistics tables, timelines, cluster and session
reports, parser benchmarks, and the load-test driver."""

from .clusterreport import cluster_report
from .loadtest import LoadTestResult, run_loadtest
from .sessionreport import session_report
from .stats import StatsRow, render_stats_table, scan_store_stats, stats_rows
from .timeline import render_timeline

__all__ = [
    "LoadTestResult", "StatsRow", "cluster_report", "render_stats_table",
    "render_timeline", "run_loadtest", "scan_store_stats", "session_report",
    "stats_rows",
]
