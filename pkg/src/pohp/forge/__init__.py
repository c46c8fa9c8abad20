"""Hardness-instance generators and certified witness builders."""

from .pi import check_proper_interval_ordering, gen_pi_cycle, gen_pi_path
from .grids import (
    GridInstance,
    gen_grid5_minpath,
    gen_grid6_mincycle,
    gen_grid7_path,
    gen_grid9_cycle,
)
from .witness import build_witness

__all__ = [
    "GridInstance",
    "build_witness",
    "check_proper_interval_ordering",
    "gen_grid5_minpath",
    "gen_grid6_mincycle",
    "gen_grid7_path",
    "gen_grid9_cycle",
    "gen_pi_cycle",
    "gen_pi_path",
]
