import random

import pytest

from debugtrace.errors import CorruptBlob, CorruptLog, NotFound, SequenceGap, StoreUnreadable
from debugtrace.model import (
    Behavior, BehaviorLabel, BehaviorSequence, DebugEvent, EventKind, SessionMode,
    SessionState, Snapshot, UserRole,
)
from debugtrace.store import Store, frame_line, read_frames


class TestBlobs:
    def test_put_is_idempotent(self, store, tmp_path):
        snap = Snapshot.create({"a.js": b"var x = 1;"})
        first = store.put_snapshot(snap)
        second = store.put_snapshot(snap)
        assert first == second == snap.snapshot_id
        blobs = list((store.root / "blobs").rglob("*"))
        assert sum(1 for b in blobs if b.is_file()) == 1

    def test_distinct_content_distinct_blobs(self, store):
        store.put_snapshot(Snapshot.create({"a.js": b"x"}))
        store.put_snapshot(Snapshot.create({"a.js": b"y"}))
        files = [b for b in (store.root / "blobs").rglob("*") if b.is_file()]
        assert len(files) == 2

    def test_roundtrip(self, store):
        snap = Snapshot.create({"a.js": b"var x = 1;", "v.wxml": b"<view/>", "raw.bin": b"\x00\xff"})
        sid = store.put_snapshot(snap)
        loaded = store.get_snapshot(sid)
        assert loaded == snap
        assert loaded.raw_files() == snap.raw_files()

    def test_digest_is_filename(self, store):
        import hashlib

        snap = Snapshot.create({"a.js": b"content"})
        sid = store.put_snapshot(snap)
        blob_path = store.root / "blobs" / sid[:2] / sid
        assert hashlib.sha256(blob_path.read_bytes()).hexdigest() == sid

    def test_corrupt_blob_detected(self, store):
        snap = Snapshot.create({"a.js": b"content"})
        sid = store.put_snapshot(snap)
        blob_path = store.root / "blobs" / sid[:2] / sid
        blob_path.write_bytes(blob_path.read_bytes() + b"!")
        with pytest.raises(CorruptBlob):
            store.get_snapshot(sid)
        with pytest.raises(CorruptBlob):
            store.put_snapshot(snap)

    def test_missing_snapshot(self, store):
        with pytest.raises(NotFound):
            store.get_snapshot("0" * 64)


class TestEventLog:
    def _event(self, i, kind=EventKind.RUN, **kw):
        return DebugEvent(event_id=i, kind=kind, at=1000 + i, **kw)

    def test_append_order(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        store.append_event("s1", self._event(1))
        store.append_event("s1", self._event(2))
        record = store.load_session("s1")
        assert [e.event_id for e in record.events] == [1, 2]

    def test_sequence_gap_rejected(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        store.append_event("s1", self._event(1))
        with pytest.raises(SequenceGap):
            store.append_event("s1", self._event(3))

    def test_first_event_must_be_one(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        with pytest.raises(SequenceGap):
            store.append_event("s1", self._event(2))

    def test_empty_session(self, store):
        store.create_session("s1", "u", "q", SessionMode.FREE_DEBUG, 500)
        record = store.load_session("s1")
        assert record.events == () and record.debug_count == 0
        assert record.state is SessionState.ACTIVE
        assert record.last_activity_at == 500

    def test_debug_count_counts_compiles(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        for i in range(1, 4):
            store.append_event("s1", self._event(i, EventKind.COMPILE, compile_ok=False))
        assert store.load_session("s1").debug_count == 3

    def test_torn_final_line_dropped(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        store.append_event("s1", self._event(1))
        store.append_event("s1", self._event(2))
        log = store.root / "sessions" / "s1.log"
        intact = log.read_bytes()
        for cut in range(1, 30):
            log.write_bytes(intact[:-cut])
            fresh = Store(store.root)
            record = fresh.load_session("s1")
            assert [e.event_id for e in record.events] in ([1], [1, 2])
        log.write_bytes(intact)

    def test_corrupt_interior_line_raises(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 500)
        store.append_event("s1", self._event(1))
        log = store.root / "sessions" / "s1.log"
        data = log.read_bytes()
        log.write_bytes(data[: len(data) // 2] + b"garbage!" + data[len(data) // 2 :])
        with pytest.raises(CorruptLog):
            Store(store.root).load_session("s1")

    def test_replay_matches_in_memory_oracle(self, store):
        rng = random.Random(12)
        store.create_session("s1", "u", "q", SessionMode.RANK, 100)
        shadow = []
        snap = Snapshot.create({"a.js": b"x"})
        store.put_snapshot(snap)
        for i in range(1, 60):
            kind = rng.choice([EventKind.SAVE, EventKind.COMPILE, EventKind.RUN, EventKind.RESET])
            kw = {}
            if kind is EventKind.SAVE:
                kw["snapshot_id"] = snap.snapshot_id
            if kind is EventKind.COMPILE:
                kw["compile_ok"] = rng.random() < 0.5
                if not kw["compile_ok"]:
                    kw["error_log"] = f"err {i}"
            event = DebugEvent(event_id=i, kind=kind, at=100 + i * 3, **kw)
            store.append_event("s1", event)
            shadow.append(event)
            record = Store(store.root).load_session("s1")
            assert list(record.events) == shadow
            assert record.debug_count == sum(1 for e in shadow if e.kind is EventKind.COMPILE)
            assert record.last_activity_at == shadow[-1].at

    def test_state_transitions_replay(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 100)
        store.append_state("s1", SessionState.TIMED_OUT, 200)
        store.append_state("s1", SessionState.ACTIVE, 300)
        store.append_state("s1", SessionState.ENDED, 400, completed=True)
        record = store.load_session("s1")
        assert record.state is SessionState.ENDED
        assert record.ended_at == 400 and record.completed

    def test_analysis_roundtrip(self, store):
        store.create_session("s1", "u", "q", SessionMode.TRAINING, 100)
        seq = BehaviorSequence(
            session_id="s1",
            labels=(BehaviorLabel(label=Behavior.PARAM_TWEAK, from_event_id=1, to_event_id=2),),
        )
        store.append_analysis("s1", seq)
        assert store.load_analysis("s1") == seq

    def test_missing_session(self, store):
        with pytest.raises(NotFound):
            store.load_session("nope")


class TestRecords:
    def test_last_write_wins(self, store):
        store.put_user("alice", UserRole.STUDENT, "h1")
        store.put_user("alice", UserRole.TEACHING_ASSISTANT, "h2")
        users = store.load_users()
        assert users["alice"]["role"] == "TeachingAssistant"

    def test_version_gate(self, tmp_path):
        root = tmp_path / "store"
        Store(root)
        (root / "meta" / "version").write_text("99")
        with pytest.raises(StoreUnreadable):
            Store(root)

    def test_open_without_create(self, tmp_path):
        with pytest.raises(StoreUnreadable):
            Store(tmp_path / "missing", create=False)


class TestFraming:
    def test_frame_roundtrip(self):
        payloads = [{"a": 1}, {"b": "text with spaces"}, {"n": None}]
        data = b"".join(frame_line(p) for p in payloads)
        assert read_frames(data) == payloads

    def test_newline_text_is_escaped_not_embedded(self):
        # JSON encoding escapes control characters, keeping one frame per line.
        framed = frame_line({"a": "line\nbreak"})
        assert framed.count(b"\n") == 1 and framed.endswith(b"\n")
        assert read_frames(framed) == [{"a": "line\nbreak"}]

    def test_every_truncation_point_recovers_prefix(self):
        payloads = [{"i": i, "filler": "x" * i} for i in range(5)]
        data = b"".join(frame_line(p) for p in payloads)
        boundaries = []
        pos = 0
        for p in payloads:
            pos += len(frame_line(p))
            boundaries.append(pos)
        for cut in range(len(data) + 1):
            frames = read_frames(data[:cut])
            complete = sum(1 for b in boundaries if b <= cut)
            assert frames == payloads[:complete], cut
