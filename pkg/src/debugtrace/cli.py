"""Analyst and operations command line.

Exit codes: 0 success, 2 usage error, 3 missing session/question/record,
4 unreadable store, 5 cluster count too large, 6 benchmark corpus error,
7 session not ended, 8 load test had no successful response, 1 anything
else.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import click

from .config import Config, load_config
from .errors import (
    BenchError, KTooLarge, NotFound, SessionNotEnded, SessionNotFound, StoreUnreadable,
)
from .jsparse import bench_all, mean_ms, render_table, rows_to_records
from .model import UserRole
from .reports import run_loadtest, scan_store_stats, session_report
from .reports.clusterreport import cluster_report, render_cluster_report
from .reports.sessionreport import render_session_report
from .reports.stats import render_stats_table
from .reports.timeline import render_timeline
from .service import Service
from .store import Store

_EXIT_CODES = [
    (SessionNotFound, 3),
    (NotFound, 3),
    (StoreUnreadable, 4),
    (KTooLarge, 5),
    (BenchError, 6),
    (SessionNotEnded, 7),
]


def _fail(exc: Exception) -> "click.exceptions.Exit":
    click.echo(f"error: {exc}", err=True)
    for etype, code in _EXIT_CODES:
        if isinstance(exc, etype):
            return click.exceptions.Exit(code)
    return click.exceptions.Exit(1)


def _write_json(path: str | None, payload) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


@click.group()
def main():
    """Debugging-process telemetry tools."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--store", "store_root", default=None, help="Store root directory.")
@click.option("--listen", "listen_addr", default=None, help="host:port to bind.")
def serve(config_path, store_root, listen_addr):
    """Run the ingestion/analysis HTTP service."""
    import threading
    import uvicorn

    from .webapp import create_app

    cfg = load_config(config_path)
    if store_root:
        cfg.store_root = store_root
    if listen_addr:
        cfg.listen_addr = listen_addr
    service = Service(Store(cfg.store_root), cfg)

    def sweeper():
        import time as _time

        while True:
            _time.sleep(60)
            service.sweep_timeouts()

    threading.Thread(target=sweeper, daemon=True).start()
    uvicorn.run(create_app(service), host=cfg.host, port=cfg.port, log_level="warning")


@main.group()
def admin():
    """Provisioning and maintenance."""


@admin.command("add-user")
@click.option("--store", "store_root", required=True)
@click.argument("user_id")
@click.argument("secret")
@click.argument("role", type=click.Choice([r.value for r in UserRole]))
def admin_add_user(store_root, user_id, secret, role):
    """Provision a user; the server reads users at boot."""
    try:
        service = Service(Store(store_root), Config(store_root=store_root))
        service.provision_user(user_id, secret, UserRole(role))
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    click.echo(f"user {user_id} ({role}) provisioned")


@admin.command("list-users")
@click.option("--store", "store_root", required=True)
def admin_list_users(store_root):
    try:
        users = Store(store_root).load_users()
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    for user in sorted(users.values(), key=lambda u: u["user_id"]):
        click.echo(f"{user['user_id']}\t{user['role']}")


@main.command()
@click.option("--store", "store_root", required=True)
@click.option("--group-by", type=click.Choice(["question", "question-kind"]), default="question")
@click.option("--json", "json_out", default=None, help="Write machine-readable copy here.")
def stats(store_root, group_by, json_out):
    """Usage statistics per question or question kind."""
    try:
        rows = scan_store_stats(Store(store_root, create=False), group_by=group_by)
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    click.echo(render_stats_table(rows), nl=False)
    _write_json(json_out, {"group_by": group_by, "rows": [r.to_dict() for r in rows]})


@main.command()
@click.option("--store", "store_root", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.argument("session_id")
def timeline(store_root, out_path, session_id):
    """Render a session's save/compile timeline as SVG."""
    try:
        store = Store(store_root, create=False)
        record = store.load_session(session_id)
        snapshots = {
            e.snapshot_id: store.get_snapshot(e.snapshot_id) for e in record.save_events()
        }
        analysis = store.load_analysis(session_id)
        svg = render_timeline(record, snapshots, analysis)
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    Path(out_path).write_text(svg, encoding="utf-8")
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--store", "store_root", required=True)
@click.option("--k", default=3, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "json_out", default=None)
def cluster(store_root, k, seed, json_out):
    """Cluster ended sessions by behavior-sequence distance."""
    try:
        report = cluster_report(Store(store_root, create=False), k, seed)
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    click.echo(render_cluster_report(report), nl=False)
    _write_json(json_out, report)


@main.command()
@click.option("--corpus", "corpus_dir", type=click.Path(exists=True), default=None,
              help="Directory of .js files; defaults to the bundled corpus.")
@click.option("--frames", default=5, show_default=True)
@click.option("--json", "json_out", default=None)
def bench(corpus_dir, frames, json_out):
    """Time the parser configurations over a corpus."""
    try:
        sources = load_corpus(corpus_dir)
        rows = bench_all(sources, frames)
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    click.echo(render_table(rows, frames), nl=False)
    _write_json(json_out, {"frames": frames, "rows": rows_to_records(rows)})


@main.command()
@click.option("--url", required=True)
@click.option("--requests", "total", default=1000, show_default=True)
@click.option("--duration", default=1.0, show_default=True, help="Issuing budget in seconds.")
@click.option("--workers", default=32, show_default=True)
@click.option("--json", "json_out", default=None)
def loadtest(url, total, duration, workers, json_out):
    """Fire GET /questions load at a running server."""
    result = run_loadtest(url, total, duration, workers=workers)
    click.echo(
        f"sent={result.sent} succeeded={result.succeeded} failed={result.failed} "
        f"elapsed={result.elapsed_seconds:.3f}s (budget {duration:.3f}s)"
    )
    if result.p50_ms is not None:
        click.echo(f"latency ms: p50={result.p50_ms:.2f} p95={result.p95_ms:.2f} p99={result.p99_ms:.2f}")
    _write_json(json_out, result.to_dict())
    if result.succeeded == 0:
        click.echo("error: server unreachable (no successful response)", err=True)
        raise click.exceptions.Exit(8)


@main.command("session-report")
@click.option("--store", "store_root", required=True)
@click.option("--api-prefixes", default="wx", show_default=True, help="Comma-separated.")
@click.option("--json", "json_out", default=None)
@click.argument("session_id")
def session_report_cmd(store_root, api_prefixes, json_out, session_id):
    """Full analysis document for one ended session."""
    try:
        report = session_report(
            Store(store_root, create=False), session_id, [p for p in api_prefixes.split(",") if p]
        )
    except Exception as exc:  # noqa: BLE001
        raise _fail(exc)
    click.echo(render_session_report(report), nl=False)
    _write_json(json_out, report)


def load_corpus(corpus_dir: str | None) -> list[str]:
    """Sources from a directory of .js files, or the bundled corpus."""
    if corpus_dir is not None:
        paths = sorted(Path(corpus_dir).glob("*.js"))
        if not paths:
            raise BenchError(f"no .js files in {corpus_dir}")
        return [p.read_text(encoding="utf-8") for p in paths]
    package_corpus = resources.files("debugtrace") / "corpus"
    sources = [
        f.read_text(encoding="utf-8") for f in sorted(package_corpus.iterdir(), key=lambda p: p.name)
        if f.name.endswith(".js")
    ]
    if not sources:
        raise BenchError("bundled corpus is missing")
    return sources


if __name__ == "__main__":
    main()
