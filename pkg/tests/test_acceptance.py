"""Acceptance suite: one test per shipping criterion.

Each test prints a PASS line on success (run with -s to stream them);
a failing assertion is the FAIL line.
"""

import base64
import json
import os
import random
import signal
import socket
import subprocess
import sys
import time
from pathlib import Path

import pytest
import requests
from click.testing import CliRunner

from debugtrace.behavior import annotate_direction, cluster_sessions, label_sequence
from debugtrace.cli import main as cli_main
from debugtrace.jsparse import bench_all, mean_ms, parse, print_tree, structurally_equal
from debugtrace.jsparse.nodes import Node
from debugtrace.model import (
    Behavior, BehaviorLabel, BehaviorSequence, DebugEvent, Direction, EventKind,
    SessionMode, SessionRecord, SessionState, Snapshot,
)
from debugtrace.reports import run_loadtest, scan_store_stats
from debugtrace.store import Store
from debugtrace.astdiff import apply_script, tree_edit_distance
from treegen import mutated_pair, random_tree, shortest_script_at_least

PKG_ROOT = Path(__file__).parent.parent
CORPUS = PKG_ROOT / "src" / "debugtrace" / "corpus"


def report(line: str) -> None:
    print(f"\nACCEPTANCE PASS: {line}")


def test_parser_roundtrip_over_corpus():
    """parse -> print -> parse is structure-preserving for 100% of corpus."""
    sources = [p.read_text(encoding="utf-8") for p in sorted(CORPUS.glob("*.js"))]
    assert len(sources) >= 50
    start = time.monotonic()
    failures = []
    for i, source in enumerate(sources):
        first = parse(source)
        again = parse(print_tree(first))
        if not structurally_equal(first, again):
            failures.append(i)
    elapsed = time.monotonic() - start
    assert failures == []
    assert elapsed < 5.0, f"roundtrip took {elapsed:.2f}s"
    report(f"parser roundtrip: {len(sources)} files, 100% stable, {elapsed:.2f}s")


def test_tree_edit_distance_oracle_and_metric_axioms():
    """500 random pairs match exhaustive search; metric axioms hold on 200 triples."""
    start = time.monotonic()
    rng = random.Random(20240811)
    for trial in range(500):
        a, b = mutated_pair(rng, 10)
        diff = tree_edit_distance(a, b)
        assert structurally_equal(apply_script(a, diff.script), b), trial
        assert diff.script.cost == diff.distance, trial
        assert shortest_script_at_least(a, b, diff.distance), (trial, diff.distance)

    violations = 0
    rng = random.Random(7)
    pool = [random_tree(rng, 10) for _ in range(24)]
    triples = 0
    while triples < 200:
        a, b, c = rng.sample(pool, 3)
        dab = tree_edit_distance(a, b).distance
        dba = tree_edit_distance(b, a).distance
        dac = tree_edit_distance(a, c).distance
        dbc = tree_edit_distance(b, c).distance
        if tree_edit_distance(a, a).distance != 0:
            violations += 1
        if dab != dba:
            violations += 1
        if dac > dab + dbc:
            violations += 1
        triples += 1
    elapsed = time.monotonic() - start
    assert violations == 0
    assert elapsed < 60.0, f"oracle run took {elapsed:.2f}s"
    report(f"tree-edit-distance: 500 pairs == exhaustive search, 200 triples clean, {elapsed:.1f}s")


def _session_of(saves: list[dict[str, bytes]]) -> tuple[SessionRecord, dict]:
    snapshots = {}
    events = []
    for i, files in enumerate(saves):
        snap = Snapshot.create(files, captured_at=1000 + i)
        snapshots[snap.snapshot_id] = snap
        events.append(DebugEvent(event_id=i + 1, kind=EventKind.SAVE, at=1000 + i, snapshot_id=snap.snapshot_id))
    record = SessionRecord(
        session_id="acc", user_id="u", question_id="q", mode=SessionMode.TRAINING,
        state=SessionState.ENDED, events=tuple(events), started_at=1000,
        last_activity_at=1000 + len(saves), ended_at=2000,
    )
    return record, snapshots


def test_behavior_labeling_examples_and_length_invariant():
    record, snaps = _session_of([{"a.js": b"var x = 1;"}, {"a.js": b"var x = 1;"}])
    assert [l.label for l in label_sequence(record, snaps.__getitem__).labels] == [Behavior.NO_CHANGE]

    record, snaps = _session_of(
        [{"a.js": b"var x = 1;"}, {"a.js": b"var x = ;"}, {"a.js": b"var x = 1;"}]
    )
    assert [l.label for l in label_sequence(record, snaps.__getitem__).labels] == [
        Behavior.SYNTAX_BREAK, Behavior.SYNTAX_FIX,
    ]

    a, b = {"a.js": b"var x = 1;"}, {"a.js": b"var x = 2;"}
    record, snaps = _session_of([a, b, a])
    assert [l.label for l in label_sequence(record, snaps.__getitem__).labels] == [
        Behavior.PARAM_TWEAK, Behavior.REVERT,
    ]

    pool = [
        {"a.js": b"var x = 1;"},
        {"a.js": b"var x = 2;"},
        {"a.js": b"var x = ;"},
        {"a.js": b"wx.go();", "b.js": b"f();"},
        {"a.js": b"if (x) { f(); }"},
        {"a.js": b"var x = 1;", "v.wxml": b"<view/>"},
    ]
    rng = random.Random(99)
    for trial in range(1000):
        count = rng.randint(1, 6)
        record, snaps = _session_of([rng.choice(pool) for _ in range(count)])
        seq = label_sequence(record, snaps.__getitem__)
        assert len(seq.labels) == count - 1, trial
    report("behavior labeling: example sequences exact, length == saves-1 over 1000 sessions")


def test_direction_annotation_convergence_and_zero_distance():
    reference = Snapshot.create({"a.js": b"var x = 1; var y = 2; var z = 3;"})
    record, snaps = _session_of(
        [
            {"a.js": b"var q = 9;"},
            {"a.js": b"var x = 1; var q = 9;"},
            {"a.js": b"var x = 1; var y = 2; var q = 9;"},
            {"a.js": b"var x = 1; var y = 2; var z = 3;"},
        ]
    )
    labels = annotate_direction(record, snaps.__getitem__, reference)
    assert [l.direction for l in labels] == [
        Direction.NEUTRAL, Direction.TOWARD, Direction.TOWARD, Direction.TOWARD,
    ]
    assert labels[-1].distance_to_reference == 0
    report("direction annotation: monotone convergence labels Neutral then all Toward; exact 0 at reference")


def _seq(session_id: str, symbols: str) -> BehaviorSequence:
    mapping = {
        "N": Behavior.NO_CHANGE, "P": Behavior.PARAM_TWEAK, "S": Behavior.STRUCT_EDIT,
        "R": Behavior.REVERT,
    }
    return BehaviorSequence(
        session_id=session_id,
        labels=tuple(
            BehaviorLabel(label=mapping[ch], from_event_id=i + 1, to_event_id=i + 2)
            for i, ch in enumerate(symbols)
        ),
    )


def test_clustering_block_recovery_ten_seeds():
    sequences = {}
    for i in range(3):
        sequences[f"a{i}"] = _seq(f"a{i}", "PPPR")
    for i in range(3):
        sequences[f"b{i}"] = _seq(f"b{i}", "SSS")
    for seed in range(10):
        clusters = cluster_sessions(sequences, 2, seed)
        groups = sorted(tuple(sorted(c.member_session_ids)) for c in clusters)
        assert groups == [("a0", "a1", "a2"), ("b0", "b1", "b2")], seed
    assert cluster_sessions(sequences, 2, 3) == cluster_sessions(sequences, 2, 3)
    report("clustering: exact block recovery for 10 seeds, deterministic under fixed seed")


# -- live-server criteria ---------------------------------------------------


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="module")
def live_server(tmp_path_factory):
    root = tmp_path_factory.mktemp("live-store")
    runner = CliRunner()
    for user, pw, role in [
        ("student1", "pw1", "Student"),
        ("teacher1", "pw-teacher", "Teacher"),
    ]:
        result = runner.invoke(cli_main, ["admin", "add-user", "--store", str(root), user, pw, role])
        assert result.exit_code == 0, result.output

    from debugtrace.config import Config
    from debugtrace.model import QuestionKind
    from debugtrace.service import Service

    service = Service(Store(root), Config(store_root=str(root)))
    service.publish_question(
        "teacher1", kind=QuestionKind.PRACTICE, title="warmup",
        initial_files={"app.js": b"var target = 10;"},
        reference_files={"app.js": b"var target = 42;"},
        error_classes=frozenset(), difficulty=1,
    )

    port = _free_port()
    env = dict(os.environ)
    env["PYTHONPATH"] = str(PKG_ROOT / "src")
    started = time.monotonic()
    proc = subprocess.Popen(
        [
            sys.executable, "-m", "debugtrace.cli", "serve",
            "--store", str(root), "--listen", f"127.0.0.1:{port}",
        ],
        env=env,
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    url = f"http://127.0.0.1:{port}"
    try:
        deadline = time.monotonic() + 20
        while True:
            try:
                if requests.get(f"{url}/api/v1/questions", timeout=1).status_code == 200:
                    break
            except requests.RequestException:
                pass
            if time.monotonic() > deadline:
                raise RuntimeError("server did not come up")
            time.sleep(0.1)
        yield url, root, time.monotonic() - started
    finally:
        proc.send_signal(signal.SIGTERM)
        try:
            proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            proc.kill()


def test_stress_1000_requests_within_one_second(live_server):
    url, _, startup = live_server
    start = time.monotonic()
    result = run_loadtest(url, total_requests=1000, duration_seconds=1.0, workers=32)
    total = time.monotonic() - start
    assert result.sent == 1000
    assert result.succeeded == 1000, f"failed={result.failed}"
    assert result.failed == 0
    assert result.sent == result.succeeded + result.failed
    assert result.elapsed_seconds <= 1.0, f"issuing took {result.elapsed_seconds:.3f}s"
    assert startup + total < 60.0
    report(
        f"stress: 1000/1000 responses in {result.elapsed_seconds:.3f}s "
        f"(p99 {result.p99_ms:.1f} ms, server start {startup:.1f}s)"
    )


def test_session_resume_fidelity_over_http(live_server):
    url, _, _ = live_server
    token = requests.post(
        f"{url}/api/v1/login", json={"user_id": "student1", "secret": "pw1"}
    ).json()["token"]
    teacher = requests.post(
        f"{url}/api/v1/login", json={"user_id": "teacher1", "secret": "pw-teacher"}
    ).json()["token"]
    headers = {"Authorization": token}

    question_id = requests.get(f"{url}/api/v1/questions").json()[0]["question_id"]
    session_id = requests.post(
        f"{url}/api/v1/sessions",
        json={"question_id": question_id, "mode": "Training"},
        headers=headers,
    ).json()["session_id"]

    payloads = []
    for i in range(3):
        files = {"app.js": f"var target = {i + 30};\n".encode(), "page.wxml": b"<view>x</view>"}
        payloads.append(files)
        encoded = {p: base64.b64encode(d).decode() for p, d in files.items()}
        r = requests.post(
            f"{url}/api/v1/sessions/{session_id}/events",
            json={"kind": "Save", "snapshot": encoded},
            headers=headers,
        )
        assert r.json()["event_id"] == i + 1

    # Force the timeout with an injected sweep clock 31 minutes ahead.
    future = int(time.time() * 1000) + 31 * 60_000
    swept = requests.post(
        f"{url}/api/v1/admin/sweep", json={"now_ms": future}, headers={"Authorization": teacher}
    ).json()["transitioned"]
    assert session_id in swept

    resumed = requests.post(
        f"{url}/api/v1/sessions/resume", json={"question_id": question_id}, headers=headers
    ).json()
    assert resumed["session_id"] == session_id
    got = {p: base64.b64decode(d) for p, d in resumed["snapshot"].items()}
    assert got == payloads[-1], "resume snapshot must be byte-identical to save #3"

    r = requests.post(
        f"{url}/api/v1/sessions/{session_id}/events", json={"kind": "Run"}, headers=headers
    )
    assert r.json()["event_id"] == 4, "event sequence continues gaplessly"
    report("resume fidelity: save #3 returned byte-identical after forced timeout; sequence gapless")


def test_stats_reproduction_of_published_totals(tmp_path):
    """473 users / 1186 sessions / 5150 debugs / 1940 completions, one group."""
    store = Store(tmp_path / "store")
    users, sessions, debugs, completions = 473, 1186, 5150, 1940
    per_session = [debugs // sessions] * sessions
    for i in range(debugs - sum(per_session)):
        per_session[i] += 1
    ok_left = completions
    for s in range(sessions):
        session_id = f"s{s:04d}"
        store.create_session(session_id, f"u{s % users}", "q-ocr", SessionMode.TRAINING, started_at=s)
        for e in range(per_session[s]):
            ok = ok_left > 0
            if ok:
                ok_left -= 1
            store.append_event(
                session_id,
                DebugEvent(event_id=e + 1, kind=EventKind.COMPILE, at=s + e + 1, compile_ok=ok),
            )
    assert ok_left == 0

    rows = scan_store_stats(store)
    row = next(r for r in rows if r.key == "q-ocr")
    assert row.total_users == users
    assert row.total_sessions == sessions
    assert row.total_debugs == debugs
    assert row.completions == completions
    assert row.avg_debugs_per_completion == debugs / completions  # ≈ 2.66

    out = tmp_path / "stats.json"
    result = CliRunner().invoke(
        cli_main, ["stats", "--store", str(store.root), "--json", str(out)]
    )
    assert result.exit_code == 0, result.output
    for value in ("473", "1186", "5150", "1940"):
        assert value in result.output
    payload = json.loads(out.read_text())
    json_row = next(r for r in payload["rows"] if r["key"] == "q-ocr")
    assert json_row["avg_debugs_per_completion"] == debugs / completions
    report(f"stats: totals 473/1186/5150/1940 reproduced; ratio {debugs / completions:.2f}")


def test_benchmark_average_arithmetic(tmp_path):
    # Averaging routine against an externally published frame row.
    assert round(mean_ms([182.1, 228.5, 221.7, 186.2, 239.8]), 2) == 211.66

    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i in range(5):
        (corpus / f"f{i}.js").write_text(f"function f{i}(x) {{ return x + {i}; }}")
    out = tmp_path / "bench.json"
    result = CliRunner().invoke(
        cli_main, ["bench", "--corpus", str(corpus), "--frames", "5", "--json", str(out)]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    for row in payload["rows"]:
        recomputed = sum(row["frame_ms"]) / len(row["frame_ms"])
        assert abs(row["average_ms"] - recomputed) < 0.1
    report("benchmark: averages match recomputation within 0.1 ms; published row mean = 211.66")


def test_crash_consistency_under_random_kills(tmp_path):
    """100 randomized mid-append kills: clean reopen, every acknowledged
    event present, nothing but at most the single in-flight append extra."""
    driver = Path(__file__).parent / "crash_driver.py"
    env = dict(os.environ)
    env["PYTHONPATH"] = str(PKG_ROOT / "src")
    rng = random.Random(1234)
    runs = 100
    for run in range(runs):
        root = tmp_path / f"run{run:03d}"
        ack_path = tmp_path / f"ack{run:03d}.txt"
        proc = subprocess.Popen(
            [sys.executable, str(driver), str(root), str(ack_path)],
            env=env, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
        )
        # Wait for the readiness marker so the kill lands amid appends.
        deadline = time.monotonic() + 10
        while not (ack_path.exists() and ack_path.stat().st_size > 0):
            if time.monotonic() > deadline:
                proc.kill()
                raise RuntimeError(f"run {run}: driver never became ready")
            time.sleep(0.002)
        time.sleep(rng.uniform(0.001, 0.08))
        proc.kill()
        proc.wait()

        lines = ack_path.read_text().split()
        acked = int(lines[-1]) if lines else 0

        reopened = Store(root)  # must open cleanly
        record = reopened.load_session("crash")
        ids = [e.event_id for e in record.events]
        assert ids == list(range(1, len(ids) + 1)), f"run {run}: gap in {ids[-5:]}"
        assert len(ids) >= acked, f"run {run}: acknowledged event lost ({len(ids)} < {acked})"
        assert len(ids) <= acked + 1, f"run {run}: more than one unacknowledged event"
    report(f"crash consistency: {runs} randomized kills, all acknowledged events intact")
