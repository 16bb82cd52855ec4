"""Exact enumeration and surgery for self-avoiding walks and polygons on the square lattice."""

from .enumeration import (
    closing_count,
    closing_probability,
    enumerate_class,
    estimate_mu,
    exponents,
    load_ensemble,
    polygon_count,
    save_ensemble,
    walk_count,
)
from .errors import SawlabError
from .harness import SuiteConfig, mvm_check, run_verification_suite
from .lattice import Plaquette, Polygon, Walk, two_part_decompose
from .madras import RgjParams, build_rgj, madras_join, rgj_decompose, shift_set
from .snake import SnakeParams, TypicalityParams, conditional_closing_q
from .surgery import global_join_plaquettes, join_plaquettes, join_via_plaquette, split

__version__ = "0.1.0"

__all__ = [
    "Plaquette",
    "Polygon",
    "RgjParams",
    "SawlabError",
    "SnakeParams",
    "SuiteConfig",
    "TypicalityParams",
    "Walk",
    "build_rgj",
    "closing_count",
    "closing_probability",
    "conditional_closing_q",
    "enumerate_class",
    "estimate_mu",
    "exponents",
    "global_join_plaquettes",
    "join_plaquettes",
    "join_via_plaquette",
    "load_ensemble",
    "madras_join",
    "mvm_check",
    "polygon_count",
    "rgj_decompose",
    "run_verification_suite",
    "save_ensemble",
    "shift_set",
    "split",
    "two_part_decompose",
    "walk_count",
]
