"""Verification suite tying every module to exact invariants."""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from collections import Counter
from typing import Callable, Iterable, Optional

from . import oracle
from .enumeration import (
    CLASSES,
    closing_count,
    enumerate_class,
    estimate_mu,
    exponents,
    node_budget,
    polygon_count,
    walk_count,
)
from .errors import BudgetExceeded, EmptyDomain, VerticalIntervalsDisjoint
from .exact import power_cmp, rational
from .lattice import Polygon
from .madras import (
    RgjParams,
    build_rgj,
    find_madras_join,
    prefix_law,
    rgj_decompositions,
    shift_set,
)
from .surgery import (
    class_members,
    global_join_plaquettes,
    is_global,
    join,
    join_plaquettes,
    polygons,
    split,
)
from .snake import (
    SnakeParams,
    charming_snake_test,
    closecard,
    conditional_closing_q,
    first_parts,
    q_by_filtering,
    x_statistic,
)


@dataclass(frozen=True)
class MvmReport:
    m: int
    big_m: int
    size_a: int
    size_b: int
    bound_ok: bool


def mvm_check(a: Iterable, b: Iterable, arrows: Iterable[tuple]) -> MvmReport:
    """Counting bound for a multi-valued map given as a set of arrows.

    With ``m`` the least number of arrows leaving an element of A and ``M``
    the most arriving at an element of B, checks ``|B| >= m |A| / M``.
    """
    a, b = set(a), set(b)
    if not a or not b:
        raise EmptyDomain("both sets must be non-empty")
    out = Counter()
    into = Counter()
    for x, y in set(arrows):
        if x not in a or y not in b:
            raise ValueError(f"arrow {x!r} -> {y!r} leaves the given sets")
        out[x] += 1
        into[y] += 1
    m = min(out[x] for x in a)
    big_m = max(into[y] for y in b)
    ok = m == 0 or len(b) * big_m >= m * len(a)
    return MvmReport(m, big_m, len(a), len(b), ok)


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 8
    rho: Fraction = Fraction(1)
    mu: Optional[float] = None
    suites: Optional[tuple[str, ...]] = None
    budget: Optional[int] = None
    shards: int = 8
    box: int = 12

    def __post_init__(self):
        object.__setattr__(self, "rho", rational(self.rho))
        if self.suites is not None:
            object.__setattr__(self, "suites", tuple(self.suites))
            if not self.suites:
                raise ValueError("suites must be non-empty")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rho"] = str(self.rho)
        d["suites"] = list(self.suites) if self.suites else None
        return d


@dataclass
class CheckResult:
    name: str
    status: str
    detail: dict
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class SuiteReport:
    config: dict
    input_hash: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timing: bool = True) -> dict:
        rows = []
        for c in self.checks:
            row = {"name": c.name, "status": c.status, "detail": c.detail}
            if timing:
                row["seconds"] = round(c.seconds, 3)
            rows.append(row)
        return {
            "config": self.config,
            "input_hash": self.input_hash,
            "passed": self.passed,
            "checks": rows,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, default=str)


# individual checks; each returns (passed, detail)


def check_counts(cfg: SuiteConfig):
    bad = []
    for n in range(1, cfg.max_n + 1):
        if walk_count(n) != oracle.walk_count(n):
            bad.append(("c", n))
    for n in range(4, cfg.max_n + 1, 2):
        if polygon_count(n) != oracle.polygon_count(n):
            bad.append(("p", n))
    return not bad, {"mismatches": bad}


def check_closing_identity(cfg: SuiteConfig):
    bad = [
        n
        for n in range(3, cfg.max_n, 2)
        if closing_count(n) != 2 * (n + 1) * polygon_count(n + 1)
    ]
    return not bad, {"checked_odd_n_up_to": cfg.max_n - 1, "failures": bad}


def check_preimages(cfg: SuiteConfig):
    bad = []
    for n in range(4, cfg.max_n + 1, 2):
        pre = oracle.polygon_preimages(n)
        if any(v != 2 * n for v in pre.values()) or len(pre) != polygon_count(n):
            bad.append(n)
    return not bad, {"failures": bad}


def closing_walks_of(poly: Polygon) -> set[tuple]:
    """The 2n rooted closing walks tracing ``poly``, one per removed edge and direction."""
    cyc = poly.traversal[:-1]
    out = set()
    for i in range(len(cyc)):
        walk = cyc[i:] + cyc[:i]
        for w in (walk, walk[::-1]):
            x0, y0 = w[0]
            out.add(tuple((x - x0, y - y0) for x, y in w))
    return out


def check_mvm_closing(cfg: SuiteConfig):
    bad = []
    for n in range(4, cfg.max_n + 1, 2):
        polys = polygons(n)
        arrows = [(p, w) for p in polys for w in closing_walks_of(p)]
        walks = {w for _, w in arrows}
        rep = mvm_check(polys, walks, arrows)
        if not rep.bound_ok or rep.m != 2 * n or rep.big_m != 1 or len(walks) != closing_count(n - 1):
            bad.append(n)
    return not bad, {"failures": bad}


def check_shards(cfg: SuiteConfig):
    bad = []
    for cls in CLASSES:
        for n in range(0, cfg.max_n + 1):
            if cls == "polygon" and n % 2:
                continue
            m = n + 2 if cls == "first_nm" else None
            ref = enumerate_class(cls, n, m=m)
            for s in range(2, cfg.shards + 1):
                if enumerate_class(cls, n, m=m, shards=s) != ref:
                    bad.append((cls, n, s))
    return not bad, {"max_shards": cfg.shards, "failures": bad}


def check_surgery(cfg: SuiteConfig):
    splits = 0
    bad = []
    for n in range(4, cfg.max_n + 1, 2):
        for poly in polygons(n):
            for p in join_plaquettes(poly):
                a, b, _ = split(poly, p)
                splits += 1
                if a.length + b.length != n or a.vertices & b.vertices:
                    bad.append((str(poly), str(p)))
                elif join(a, b, p) != poly or set(split(join(a, b, p), p)[:2]) != {a, b}:
                    bad.append((str(poly), str(p)))
    return not bad, {"splits": splits, "failures": bad}


def check_global_joins(cfg: SuiteConfig):
    bad = []
    for n in range(4, cfg.max_n + 1, 2):
        for poly in polygons(n):
            gj = global_join_plaquettes(poly)
            sizes = [split(poly, p).left_component.length for p in gj]
            if len(set(sizes)) != len(sizes):
                bad.append(str(poly))
    return not bad, {"failures": bad}


def check_class_bounds(cfg: SuiteConfig):
    rows = {}
    ok = True
    for n in range(4, cfg.max_n + 1, 2):
        p = polygon_count(n)
        sizes = {c: len(class_members(c, n)) for c in ("l", "r", "left", "right")}
        good = 4 * sizes["l"] >= p and 2 * sizes["r"] >= p and 8 * sizes["left"] >= p
        ok &= good
        rows[n] = {"p": p, **sizes}
    return ok, {"sizes": rows}


def madras_contract(max_len: int, box: int) -> dict:
    """Check the join contract for every pair in a box of offsets."""
    pool = [p for n in range(4, max_len + 1, 2) for p in polygons(n)]
    half = box // 2
    joins = global_joins = 0
    bad = []
    for left in pool:
        j_se = left.index[left.corner("SE")]
        for right in pool:
            for v in range(-half, box - half):
                try:
                    j = find_madras_join(left, right.translate((0, v)))
                except VerticalIntervalsDisjoint:
                    continue
                if j is None or not 0 <= j.shift < box:
                    continue
                joins += 1
                out = j.output
                problems = []
                if out.length != left.length + right.length + 16:
                    problems.append("length")
                a, b, _ = split(out, j.junction)
                part = a if j.junction.left in a.edges else b
                if part.length != left.length + 8:
                    problems.append("component")
                if is_global(out, j.junction):
                    global_joins += 1
                    if out.traversal[:j_se] != left.traversal[:j_se] or out.ne != left.ne:
                        problems.append("prefix")
                    if a is not part:
                        problems.append("ne-side")
                if problems:
                    bad.append((str(left), str(right), v, problems))
    return {"joins": joins, "global": global_joins, "failures": bad}


def check_madras(cfg: SuiteConfig):
    res = madras_contract(min(cfg.max_n, 8), cfg.box)
    return not res["failures"], res


def check_shift_sets(cfg: SuiteConfig):
    bad = []
    pairs = 0
    for n in range(4, cfg.max_n + 1, 2):
        for m in range(4, cfg.max_n + 1, 2):
            bound = min(math.sqrt(n) / 2, math.sqrt(m))
            for left in class_members("l", n):
                base = left.corner("ES")[1]
                for right in class_members("r", m):
                    pairs += 1
                    s = shift_set(left, right)
                    tops = {right.bounds[3] + u[1] for u in s}
                    need = [k for k in range(base, base + math.ceil(bound)) if k - base <= bound - 1]
                    if len(s) < bound or any(k not in tops for k in need):
                        bad.append((str(left), str(right)))
    return not bad, {"pairs": pairs, "failures": bad}


def _rgj_pairs(cfg: SuiteConfig):
    for k in range(4, cfg.max_n + 1, 2):
        for l in range(4, cfg.max_n + 1, 2):
            if k <= 2 * l and l <= 35 * k:
                yield RgjParams(k, l, cfg.rho)


def check_rgj(cfg: SuiteConfig):
    rows = []
    ok = True
    for params in _rgj_pairs(cfg):
        b = build_rgj(params)
        size_ok = len(b.outputs) == b.expected_size == len(b.records)
        inv_ok = all(
            rgj_decompositions(r.output, params) == [(r.left, r.right, r.shift)] for r in b.records
        )
        ok &= size_ok and inv_ok
        rows.append(
            {"k": params.k, "l": params.l, "size": len(b.outputs), "expected": b.expected_size,
             "inverse": inv_ok}
        )
    return ok, {"rho": str(cfg.rho), "pairs": rows}


def rgj_prefix_mismatches(params: RgjParams) -> list[dict]:
    b = build_rgj(params)
    outs = [r.normalized_output for r in b.records]
    if not outs:
        return []
    base = class_members("left", params.k)
    bad = []
    for j in range(params.k // 2):
        got, want = prefix_law(outs, j), prefix_law(base, j)
        if got != want:
            bad.append({"k": params.k, "l": params.l, "j": j,
                        "joined": {s: str(v) for s, v in got.items()},
                        "left": {s: str(v) for s, v in want.items()}})
    return bad


def check_rgj_prefix(cfg: SuiteConfig):
    bad = []
    for params in _rgj_pairs(cfg):
        bad.extend(rgj_prefix_mismatches(params))
    return not bad, {"rho": str(cfg.rho), "mismatches": bad}


def check_rgj_map(cfg: SuiteConfig):
    """The joining map as a multi-valued map, and preimages against global join plaquettes."""
    rows = []
    ok = True
    by_length: dict[int, Counter] = {}
    for params in _rgj_pairs(cfg):
        b = build_rgj(params)
        if not b.records:
            continue
        pairs = [(t, s) for t in class_members("left", params.k) for s in class_members("right", params.l)]
        arrows = [((r.left, r.right), r.normalized_output) for r in b.records]
        rep = mvm_check(pairs, b.outputs, arrows)
        ok &= rep.bound_ok
        rows.append({"k": params.k, "l": params.l, "m": rep.m, "M": rep.big_m, "bound_ok": rep.bound_ok})
        by_length.setdefault(params.k + params.l + 16, Counter()).update(b.outputs)
    excess = []
    for counter in by_length.values():
        for poly, pre in counter.items():
            gj = len(global_join_plaquettes(poly))
            if pre > gj:
                excess.append({"polygon": str(poly), "preimages": pre, "global_joins": gj})
    ok &= not excess
    return ok, {"rho": str(cfg.rho), "maps": rows, "preimages_exceeding_gj": excess}


def check_exponents(cfg: SuiteConfig):
    mu = cfg.mu if cfg.mu is not None else estimate_mu(cfg.max_n).estimate
    table = {}
    ok = True
    for n in range(4, cfg.max_n + 1, 2):
        rep = exponents(n, mu)
        ok &= math.isfinite(rep.theta) and math.isfinite(rep.xi)
        table[n] = {"theta": rep.theta, "xi": rep.xi}
    return ok, {"mu": mu, "table": table}


def check_q(cfg: SuiteConfig):
    bad = []
    for m in range(1, min(cfg.max_n, 9) + 1):
        for n in range(0, m):
            direct = {tuple(g.vertices): conditional_closing_q(n, m, g) for g in first_parts(n, m)}
            if direct != q_by_filtering(n, m):
                bad.append((n, m))
    return not bad, {"failures": bad}


X_GRID = [(Fraction(a), Fraction(e)) for a in ("0", "1/4", "1/2", "1") for e in ("0", "1/10", "1/2")]


def x_implication_counterexamples(max_len: int, grid=X_GRID) -> list[tuple]:
    """Polygons where the X-statistic reaches its threshold but the prefix is not a charming snake."""
    bad = []
    for size in range(4, max_len + 1, 2):
        n = size - 1
        for poly in polygons(size):
            for ell in range(0, n + 1):
                m_prime = n - ell + 1
                for alpha, eta in grid:
                    params = SnakeParams(n, ell, alpha, 1, eta)
                    x = x_statistic(poly, ell, m_prime, alpha)
                    if x == 0 or power_cmp([(4 * x, 1)], [(n, 1 - eta)]) < 0:
                        continue
                    if not charming_snake_test(poly.traversal[: ell + 1], params):
                        bad.append((str(poly), ell, str(alpha), str(eta)))
    return bad


def check_x_implication(cfg: SuiteConfig):
    bad = x_implication_counterexamples(cfg.max_n)
    return not bad, {"counterexamples": bad}


def check_closecard(cfg: SuiteConfig):
    bad = []
    tested = 0
    for n in range(3, cfg.max_n + 1, 2):
        for a in ("1/2", "1", "3/2", "2"):
            for d in ("1/4", "1/2", "3/4"):
                rep = closecard(n, a, d)
                if rep.hypothesis_met:
                    tested += 1
                    if not rep.within_bound:
                        bad.append((n, a, d))
    return not bad, {"tested": tested, "failures": bad}


CHECKS: dict[str, Callable[[SuiteConfig], tuple]] = {
    "counts_oracle": check_counts,
    "closing_identity": check_closing_identity,
    "closing_preimages": check_preimages,
    "mvm_closing_walks": check_mvm_closing,
    "shard_consistency": check_shards,
    "surgery_roundtrip": check_surgery,
    "global_join_injective": check_global_joins,
    "class_bounds": check_class_bounds,
    "madras_contract": check_madras,
    "shift_set_bound": check_shift_sets,
    "rgj_exactness": check_rgj,
    "rgj_prefix_law": check_rgj_prefix,
    "rgj_map_counts": check_rgj_map,
    "q_agreement": check_q,
    "x_implication": check_x_implication,
    "closecard_bound": check_closecard,
    "exponent_table": check_exponents,
}


def clear_caches() -> None:
    """Forget memoised enumerations so the next lookups search again."""
    from . import enumeration, snake, surgery

    for fn in (
        enumeration.walk_count,
        enumeration.polygon_count,
        enumeration.closing_count,
        surgery.polygons,
        surgery.class_members,
        snake.completion_counts,
        snake._split_table,
        snake.first_length_profile,
    ):
        fn.cache_clear()


def run_verification_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Run the selected checks in order and collect a report.

    A check that runs out of node budget is reported as skipped.  With a
    budget set, memoised counts are dropped first so the outcome does not
    depend on what the process computed earlier.
    """
    if cfg.budget is not None:
        clear_caches()
    names = list(cfg.suites) if cfg.suites else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    cfg_dict = cfg.to_dict()
    digest = hashlib.sha256(json.dumps(cfg_dict, sort_keys=True).encode()).hexdigest()
    report = SuiteReport(cfg_dict, digest)
    for name in names:
        t0 = time.perf_counter()
        try:
            with node_budget(cfg.budget):
                passed, detail = CHECKS[name](cfg)
            status = "pass" if passed else "fail"
        except BudgetExceeded as exc:
            status, detail = "skipped", {"reason": f"{type(exc).__name__}: {exc}"}
        report.checks.append(CheckResult(name, status, detail, time.perf_counter() - t0))
    return report
