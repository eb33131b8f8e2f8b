import itertools

import pytest

from cyclerecon.starsub import symbol_matches


def brute_embeddings(pattern: str, text: str):
    """Every selection function of ``pattern`` in ``text`` (1-based), by exhaustion."""
    for combo in itertools.combinations(range(len(text)), len(pattern)):
        if all(symbol_matches(y, text[i]) for y, i in zip(pattern, combo)):
            yield tuple(i + 1 for i in combo)


def brute_embeds(pattern: str, text: str) -> bool:
    return next(brute_embeddings(pattern, text), None) is not None


def brute_max_power(root: str, text: str) -> int:
    R = 0
    while brute_embeds(root * (R + 1), text):
        R += 1
    return R


def naive_root(s: str) -> tuple[str, int]:
    """Smallest rotation amount in 1..m that fixes ``s``, every amount tried."""
    m = len(s)
    for i in range(1, m + 1):
        if s[i:] + s[:i] == s:
            return s[:i], m // i
    raise AssertionError


FIG1_C = "+-+-+--++--++--"
FIG1_D = "+-+-"
FIG1_MAP = (0, 1, 2, 1, 2, 3, 3, 0, 1, 1, 1, 2, 3, 3, 0)

FIG2_C = "-++--+-"
FIG2_D = "-++--"
FIG2_MAPS = {
    "phi1": (0, 1, 2, 3, 3, 4, 4),
    "phi2": (0, 1, 2, 3, 4, 4, 4),
    "phi3": (0, 1, 2, 3, 4, 0, 0),
    "phi4": (1, 1, 2, 3, 4, 0, 0),
}


@pytest.fixture
def fig1():
    return FIG1_C, FIG1_D, FIG1_MAP


@pytest.fixture
def fig2():
    return FIG2_C, FIG2_D, FIG2_MAPS


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
