"""Exact enumeration of walks and polygons, closing statistics and growth estimates."""

from __future__ import annotations

import csv
import hashlib
import math
import os
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .errors import (
    BudgetExceeded,
    ChecksumMismatch,
    CountMismatch,
    FormatVersionMismatch,
    InsufficientData,
    InvalidParams,
    OddPolygonLength,
    ZeroCount,
)
from .exact import power_cmp, rational
from .lattice import Point, path_from_directions

CLASSES = ("walk_rooted", "walk_ne0", "polygon", "first", "first_nm")
FORMAT_VERSION = "1"

_MOVES = (("E", 1, 0), ("N", 0, 1), ("S", 0, -1), ("W", -1, 0))


def below_apex(x: int, y: int) -> bool:
    """True for points that may share a walk with a NE vertex at the origin."""
    return y < 0 or (y == 0 and x < 0)


def default_budget() -> Optional[int]:
    raw = os.environ.get("SAWLAB_BUDGET")
    return int(raw) if raw else None


@contextmanager
def node_budget(limit: Optional[int]):
    """Temporarily cap search nodes for every enumeration that does not pass its own budget."""
    old = os.environ.get("SAWLAB_BUDGET")
    if limit is not None:
        os.environ["SAWLAB_BUDGET"] = str(limit)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("SAWLAB_BUDGET", None)
        else:
            os.environ["SAWLAB_BUDGET"] = old


class _Search:
    """Depth-first search over direction strings in lexicographic order.

    kinds: ``rooted`` (all walks from the origin), ``below`` (walks whose
    other vertices lie strictly below-or-left of the origin as apex),
    ``polygon`` (NE-rooted polygon traversals) and ``closing`` (walks
    ending next to the origin).
    """

    def __init__(self, kind: str, n: int, budget: Optional[int], collect: bool):
        self.kind = kind
        self.n = n
        self.budget = budget
        self.nodes = 0
        self.count = 0
        self.members: Optional[list[str]] = [] if collect else None

    def run(self, prefix: str, stop: int) -> None:
        pts = path_from_directions((0, 0), prefix)
        self.visited = set(pts)
        self.dirs = list(prefix)
        x, y = pts[-1]
        self._rec(x, y, len(prefix), stop)

    def _rec(self, x: int, y: int, depth: int, stop: int) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")
        if depth == stop:
            if self.kind == "closing" and stop == self.n and abs(x) + abs(y) != 1:
                return
            self.count += 1
            if self.members is not None:
                self.members.append("".join(self.dirs))
            return
        kind, n, visited, dirs = self.kind, self.n, self.visited, self.dirs
        left = n - depth - 1
        for name, dx, dy in _MOVES:
            nx, ny = x + dx, y + dy
            if kind == "polygon":
                if left == 0:
                    if (nx, ny) != (0, 0):
                        continue
                    dirs.append(name)
                    self._rec(nx, ny, depth + 1, stop)
                    dirs.pop()
                    continue
                if depth == 0 and name != "W":
                    continue
                if (nx, ny) in visited or not below_apex(nx, ny):
                    continue
                if abs(nx) + abs(ny + 1) > left - 1:
                    continue
            else:
                if (nx, ny) in visited:
                    continue
                if kind == "below" and not below_apex(nx, ny):
                    continue
                if kind == "closing" and abs(nx) + abs(ny) - 1 > left:
                    continue
            visited.add((nx, ny))
            dirs.append(name)
            self._rec(nx, ny, depth + 1, stop)
            dirs.pop()
            visited.discard((nx, ny))


def _search_kind(cls: str) -> str:
    return {
        "walk_rooted": "rooted",
        "walk_ne0": "rooted",
        "polygon": "polygon",
        "first": "below",
        "first_nm": "below",
        "closing": "closing",
    }[cls]


def _run_shard(args) -> tuple[int, Optional[list[str]], int]:
    kind, n, prefixes, budget, collect = args
    s = _Search(kind, n, budget, collect)
    for p in prefixes:
        s.run(p, n)
    return s.count, s.members, s.nodes


def _prefixes(kind: str, n: int) -> list[str]:
    depth = min(3, n - 1 if kind == "polygon" else n)
    if depth <= 0:
        return [""]
    s = _Search(kind, n, None, True)
    s.run("", depth)
    return s.members


def _chunks(items: Sequence, k: int) -> list[list]:
    q, r = divmod(len(items), k)
    out, i = [], 0
    for j in range(k):
        size = q + (j < r)
        out.append(list(items[i : i + size]))
        i += size
    return out


def search_directions(
    kind: str,
    n: int,
    *,
    collect: bool = True,
    shards: int = 1,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
) -> tuple[int, Optional[list[str]], int]:
    """Run a sharded search; returns (count, direction strings, nodes).

    The search tree is partitioned by short direction prefixes which are
    dealt out to shards in lexicographic order, so concatenating the shard
    outputs reproduces the single-shard order exactly.
    """
    if shards < 1:
        raise InvalidParams("need at least one shard")
    if budget is None:
        budget = default_budget()
    if kind == "polygon" and (n < 4 or n % 2):
        return 0, ([] if collect else None), 0
    prefixes = _prefixes(kind, n)
    jobs = [(kind, n, chunk, budget, collect) for chunk in _chunks(prefixes, shards)]
    if workers and workers > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, jobs))
    else:
        parts = [_run_shard(job) for job in jobs]
    count = sum(p[0] for p in parts)
    nodes = sum(p[2] for p in parts)
    if budget is not None and nodes > budget:
        raise BudgetExceeded(f"more than {budget} search nodes")
    members = None
    if collect:
        members = [m for p in parts for m in p[1]]
    return count, members, nodes


def completions(first: Sequence[Point], length: int) -> Iterator[tuple[Point, ...]]:
    """Second parts of the given length that can follow ``first``.

    ``first`` starts at the origin with every other vertex below the apex.
    Yields vertex tuples of walks from the origin that avoid ``first``, stay
    below the apex, and leave the two-part split with ``first`` in front.
    """
    if len(first) > 1 and first[1] != (-1, 0):
        return
    blocked = set(first)
    path = [(0, 0)]

    def rec(x, y, left):
        if left == 0:
            yield tuple(path)
            return
        for _, dx, dy in _MOVES:
            nx, ny = x + dx, y + dy
            if (nx, ny) in blocked or not below_apex(nx, ny):
                continue
            if len(path) == 1 and (nx, ny) == (-1, 0):
                continue
            blocked.add((nx, ny))
            path.append((nx, ny))
            yield from rec(nx, ny, left - 1)
            path.pop()
            blocked.discard((nx, ny))

    yield from rec(0, 0, length)


def is_extendable(first: Sequence[Point], length: int) -> bool:
    return next(completions(first, length), None) is not None


@dataclass(frozen=True)
class EnumerationResult:
    cls: str
    n: int
    count: int
    members: Optional[tuple[str, ...]]
    m: Optional[int] = None

    @property
    def class_token(self) -> str:
        return f"first_nm:{self.m}" if self.cls == "first_nm" else self.cls


def _ne_shift(dirs: str) -> Point:
    pts = path_from_directions((0, 0), dirs)
    x, y = max(pts, key=lambda p: (p[1], p[0]))
    return -x, -y


def enumerate_class(
    cls: str,
    n: int,
    *,
    m: Optional[int] = None,
    mode: str = "full",
    shards: int = 1,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
) -> EnumerationResult:
    """Enumerate a class of walks or polygons of length ``n``.

    Members are serialized (``"x0,y0:DIRS"`` for walks, ``"DIRS"`` for
    polygons) and listed in lexicographic order of their direction strings.
    ``mode="count"`` skips materializing members.
    """
    if cls not in CLASSES:
        raise InvalidParams(f"unknown class {cls!r}")
    if n < 0:
        raise InvalidParams("n must be non-negative")
    if mode not in ("full", "count"):
        raise InvalidParams(f"unknown mode {mode!r}")
    if cls == "first_nm" and (m is None or m <= n):
        raise InvalidParams("first_nm needs m > n")
    if cls == "polygon" and n % 2:
        raise OddPolygonLength("polygons have even length")
    kind = _search_kind(cls)
    collect = mode == "full" or cls in ("first_nm",)
    count, dirs, _ = search_directions(
        kind, n, collect=collect, shards=shards, workers=workers, budget=budget
    )
    if cls == "first_nm":
        dirs = [d for d in dirs if is_extendable(path_from_directions((0, 0), d), m - n)]
        count = len(dirs)
    members = None
    if mode == "full":
        if cls == "polygon":
            members = tuple(dirs)
        elif cls == "walk_ne0":
            members = tuple(f"{x},{y}:{d}" for d in dirs for x, y in [_ne_shift(d)])
        else:
            members = tuple(f"0,0:{d}" for d in dirs)
    return EnumerationResult(cls, n, count, members, m if cls == "first_nm" else None)


@lru_cache(maxsize=None)
def walk_count(n: int) -> int:
    return search_directions("rooted", n, collect=False)[0]


@lru_cache(maxsize=None)
def polygon_count(n: int) -> int:
    return search_directions("polygon", n, collect=False)[0]


@lru_cache(maxsize=None)
def closing_count(n: int) -> int:
    """Number of rooted walks of length ``n`` whose endpoint neighbours the origin."""
    return search_directions("closing", n, collect=False)[0]


def closing_probability(n: int) -> Fraction:
    total = walk_count(n)
    if total == 0:
        raise ZeroCount(f"no walks of length {n}")
    return Fraction(closing_count(n), total)


@dataclass(frozen=True)
class MuBracket:
    lo: float
    hi: float
    estimate: float
    max_n: int


def estimate_mu(max_n: int, d: int = 2) -> MuBracket:
    """Bracket the connective constant from exact counts up to ``max_n``.

    The lower end uses the polygon bound ``(p_n / (d - 1)) ** (1/n)``, the
    upper end uses submultiplicativity ``c_n ** (1/n)``.
    """
    if d != 2:
        raise InvalidParams("only the square lattice is implemented")
    even = [n for n in range(4, max_n + 1, 2)]
    if max_n < 1 or not even:
        raise InsufficientData("need counts up to at least n = 4")
    lo = max((polygon_count(n) / (d - 1)) ** (1 / n) for n in even)
    hi = min(walk_count(n) ** (1 / n) for n in range(1, max_n + 1))
    return MuBracket(lo, hi, (lo + hi) / 2, max_n)


@dataclass(frozen=True)
class ExponentReport:
    n: int
    mu: float
    theta: float
    xi: float
    closing_probability: Fraction


def exponents(n: int, mu: float) -> ExponentReport:
    """theta_n and xi_n from ``p_n = n**-theta * mu**n`` and ``c_n = n**xi * mu**n``."""
    if n < 2:
        raise InvalidParams("need n >= 2")
    if mu <= 1:
        raise InvalidParams("need mu > 1")
    p = polygon_count(n)
    if p == 0:
        raise ZeroCount(f"no polygons of length {n}")
    logn = math.log(n)
    theta = (n * math.log(mu) - math.log(p)) / logn
    xi = (math.log(walk_count(n)) - n * math.log(mu)) / logn
    return ExponentReport(n, mu, theta, xi, closing_probability(n - 1))


def typicality_sets(zeta, mu, n_range) -> tuple[list[int], list[int]]:
    """Lengths with many polygons and lengths with a high closing probability.

    Returns ``(hpn, hcp)``: ``hpn`` holds even ``n`` with
    ``p_n >= n**-zeta * mu**n`` and ``hcp`` holds even ``n`` with
    ``P(walk of length n - 1 closes) >= n**-zeta``.
    """
    z, mu_q = rational(zeta), rational(mu)
    hpn, hcp = [], []
    for n in n_range:
        if n < 2:
            continue
        if n % 2 == 0:
            p = polygon_count(n)
            if p and power_cmp([(p, 1)], [(n, -z), (mu_q, n)]) >= 0:
                hpn.append(n)
            q = closing_probability(n - 1)
            if q and power_cmp([(q, 1)], [(n, -z)]) >= 0:
                hcp.append(n)
    return hpn, hcp


def _checksum(lines: Sequence[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


def save_ensemble(result: EnumerationResult, path) -> None:
    """Write an ensemble file.

    The header is ``SAWLAB 1 <class> <n> <count>``; files that list members
    append ``sha256=<hex>`` over the member lines.
    """
    header = ["SAWLAB", FORMAT_VERSION, result.class_token, str(result.n), str(result.count)]
    lines = list(result.members) if result.members is not None else []
    if result.members is not None:
        header.append(f"sha256={_checksum(lines)}")
    Path(path).write_text("\n".join([" ".join(header), *lines]) + "\n")


def load_ensemble(path) -> EnumerationResult:
    text = Path(path).read_text().splitlines()
    if not text:
        raise FormatVersionMismatch("empty file")
    tokens = text[0].split()
    if len(tokens) < 5 or tokens[0] != "SAWLAB" or tokens[1] != FORMAT_VERSION:
        raise FormatVersionMismatch(f"unsupported header {text[0]!r}")
    token, n, count = tokens[2], int(tokens[3]), int(tokens[4])
    cls, _, m = token.partition(":")
    lines = [t for t in text[1:] if t]
    digest = None
    for extra in tokens[5:]:
        if extra.startswith("sha256="):
            digest = extra.split("=", 1)[1]
    if digest is None and not lines:
        members = None
    else:
        if len(lines) != count:
            raise CountMismatch(f"header says {count}, file lists {len(lines)}")
        if digest is not None and _checksum(lines) != digest:
            raise ChecksumMismatch("member lines do not match the recorded checksum")
        members = tuple(lines)
    return EnumerationResult(cls, n, count, members, int(m) if m else None)


COUNT_COLUMNS = (
    "n",
    "c_n",
    "p_n",
    "closing_count",
    "closing_probability_num",
    "closing_probability_den",
)


def count_rows(max_n: int) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        c = walk_count(n)
        q = Fraction(closing_count(n), c)
        rows.append(
            {
                "n": n,
                "c_n": c,
                "p_n": polygon_count(n),
                "closing_count": closing_count(n),
                "closing_probability_num": q.numerator,
                "closing_probability_den": q.denominator,
            }
        )
    return rows


def export_counts_csv(max_n: int, path_or_file) -> None:
    rows = count_rows(max_n)
    if hasattr(path_or_file, "write"):
        _write_rows(rows, path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write_rows(rows, fh)


def _write_rows(rows, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=COUNT_COLUMNS)
    w.writeheader()
    w.writerows(rows)
