import random

from hypothesis import strategies as st

from sawlab.lattice import STEPS, Walk


def grow_walk(rng: random.Random, n: int) -> Walk:
    """Random self-avoiding walk of length at most ``n`` (stops when trapped)."""
    pts = [(0, 0)]
    seen = {(0, 0)}
    for _ in range(n):
        x, y = pts[-1]
        free = [(x + dx, y + dy) for dx, dy in STEPS.values() if (x + dx, y + dy) not in seen]
        if not free:
            break
        p = rng.choice(free)
        pts.append(p)
        seen.add(p)
    return Walk(tuple(pts))


@st.composite
def walks(draw, max_len=12):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_len))
    return grow_walk(random.Random(seed), n)


_ACCEPTANCE: dict[int, str] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    _ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
