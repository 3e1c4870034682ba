"""Executable counterexamples: fat Cantor set, Kadets map, Rolewicz map, blocks, probes."""

from .blocks import BlockReport, BlockSeq, blocks_build, blocks_verify, separation_bound
from .cantor import CantorLevels, fat_cantor, kept_length, removed_length, removed_measure_closed_form
from .kadets import (
    bump,
    discontinuity_upper_exact,
    kadets_certificate,
    kadets_f,
    kadets_function,
    kadets_gap,
    kadets_gap_closed_form,
    kadets_hints,
    kadets_local_hints,
    kadets_partitions,
    kept_interval,
    locate,
    removed_interval,
)
from .probes import geometric_battery_element, kadets_pairing_profile, strong_star_seminorm, weak_null_probe
from .rolewicz import (
    primitive_oracle,
    ramp_distance,
    rolewicz_derivative,
    rolewicz_f,
    rolewicz_function,
    rolewicz_increment,
    rolewicz_quotient,
)
from .wild import wild_derivative, wild_function, wild_gauges, wild_primitive
