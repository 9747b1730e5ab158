import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))

CORPUS_DIR = Path(__file__).parent.parent / "src" / "debugtrace" / "corpus"


@pytest.fixture(scope="session")
def corpus_sources() -> list[str]:
    return [p.read_text(encoding="utf-8") for p in sorted(CORPUS_DIR.glob("*.js"))]


@pytest.fixture()
def store(tmp_path):
    from debugtrace.store import Store

    return Store(tmp_path / "store")


@pytest.fixture()
def clock():
    class Clock:
        def __init__(self):
            self.now = 1_700_000_000_000

        def __call__(self):
            return self.now

        def advance(self, ms):
            self.now += ms

    return Clock()


@pytest.fixture()
def service(store, clock):
    from debugtrace.config import Config
    from debugtrace.model import UserRole
    from debugtrace.service import Service

    svc = Service(store, Config(store_root=str(store.root)), clock=clock)
    svc.provision_user("student1", "pw1", UserRole.STUDENT)
    svc.provision_user("student2", "pw2", UserRole.STUDENT)
    svc.provision_user("ta1", "pw-ta", UserRole.TEACHING_ASSISTANT)
    svc.provision_user("teacher1", "pw-teacher", UserRole.TEACHER)
    return svc
