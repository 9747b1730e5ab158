"""Concurrent read-endpoint load driver.

Fires a fixed number of GET requests at the question-list endpoint from a
worker pool, then reports exact success/failure counts and latency
percentiles. Workers hold persistent http.client connections, which keeps
per-request client cost low enough to saturate a local server from one
process. Targets a read endpoint so load runs stay side-effect-free.
"""

from __future__ import annotations

import http.client
import threading
import time
import urllib.parse
from dataclasses import dataclass
from typing import Optional

PATH = "/api/v1/questions"


@dataclass(frozen=True)
class LoadTestResult:
    sent: int
    succeeded: int
    failed: int
    elapsed_seconds: float
    p50_ms: Optional[float]
    p95_ms: Optional[float]
    p99_ms: Optional[float]

    def to_dict(self) -> dict:
        return {
            "sent": self.sent,
            "succeeded": self.succeeded,
            "failed": self.failed,
            "elapsed_seconds": self.elapsed_seconds,
            "p50_ms": self.p50_ms,
            "p95_ms": self.p95_ms,
            "p99_ms": self.p99_ms,
        }


def _percentile(sorted_values: list[float], fraction: float) -> float:
    # Nearest-rank percentile.
    rank = max(1, int(round(fraction * len(sorted_values) + 0.5)))
    return sorted_values[min(rank, len(sorted_values)) - 1]


def run_loadtest(
    server_url: str, total_requests: int, duration_seconds: float, workers: int = 32
) -> LoadTestResult:
    """Send ``total_requests`` GETs to the question list as fast as the
    worker pool allows; ``duration_seconds`` is the issuing budget callers
    compare ``elapsed_seconds`` against. Total failure shows up in the
    counts (the CLI turns an all-failed run into a nonzero exit).
    """
    parsed = urllib.parse.urlparse(server_url if "//" in server_url else f"http://{server_url}")
    host = parsed.hostname or "127.0.0.1"
    port = parsed.port or (443 if parsed.scheme == "https" else 80)

    counter_lock = threading.Lock()
    issued = 0
    latencies: list[float] = []
    outcomes: list[bool] = []

    def take() -> bool:
        nonlocal issued
        with counter_lock:
            if issued >= total_requests:
                return False
            issued += 1
            return True

    def worker() -> None:
        conn: Optional[http.client.HTTPConnection] = None
        local: list[tuple[bool, float]] = []
        while take():
            start = time.perf_counter()
            ok = False
            try:
                if conn is None:
                    conn = http.client.HTTPConnection(host, port, timeout=10)
                conn.request("GET", PATH)
                response = conn.getresponse()
                response.read()
                ok = response.status == 200
            except OSError:
                if conn is not None:
                    conn.close()
                conn = None
            except http.client.HTTPException:
                if conn is not None:
                    conn.close()
                conn = None
            local.append((ok, (time.perf_counter() - start) * 1000.0))
        if conn is not None:
            conn.close()
        with counter_lock:
            for ok, ms in local:
                outcomes.append(ok)
                if ok:
                    latencies.append(ms)

    pool = [threading.Thread(target=worker, daemon=True) for _ in range(min(workers, total_requests))]
    start = time.perf_counter()
    for t in pool:
        t.start()
    for t in pool:
        t.join()
    elapsed = time.perf_counter() - start

    succeeded = sum(outcomes)
    failed = len(outcomes) - succeeded
    latencies.sort()
    return LoadTestResult(
        sent=len(outcomes),
        succeeded=succeeded,
        failed=failed,
        elapsed_seconds=elapsed,
        p50_ms=_percentile(latencies, 0.50) if latencies else None,
        p95_ms=_percentile(latencies, 0.95) if latencies else None,
        p99_ms=_percentile(latencies, 0.99) if latencies else None,
    )
