import pytest

from bottsamelson import quantum
from bottsamelson.rootsys import make_word


@pytest.fixture(scope="session")
def word121():
    return make_word("A2", "1,2,1")


@pytest.fixture(scope="session")
def pipeline(word121):
    return quantum.run(word121)


VERDICTS: dict[int, str] = {}


@pytest.fixture
def verdict():
    def record(number: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
        VERDICTS[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
