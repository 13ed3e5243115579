"""Letter-to-letter sequential transducers for the maps n -> n/d or a*n + b."""

from .arith import (
    COLLATZ, FabdParams, division_sync, division_transitions, iterate, mult_add_sync, mult_sync,
    oracle_f, oracle_f_accel, orbit, prefix_accel, prefix_fabd, prefix_identity_case, suffix_fabd,
)
from .automata import Transducer, compose, enumerate_relation, inverse, mirror, power, union
from .closure import ClosureMachine
from .numerals import decode_lsd, decode_msd, encode_lsd, encode_msd
from .powers import composed_power, eta, explicit_power, explicit_power_accel, mu
from .sequential import SequentialTransducer
from .synchronized import PrefixSeq, SuffixSeq, apply_suffix

__all__ = [
    "COLLATZ", "FabdParams", "division_sync", "division_transitions", "iterate", "mult_add_sync",
    "mult_sync", "oracle_f", "oracle_f_accel", "orbit", "prefix_accel", "prefix_fabd",
    "prefix_identity_case", "suffix_fabd", "Transducer", "compose", "enumerate_relation",
    "inverse", "mirror", "power", "union", "ClosureMachine", "decode_lsd", "decode_msd",
    "encode_lsd", "encode_msd", "composed_power", "eta", "explicit_power",
    "explicit_power_accel", "mu", "SequentialTransducer", "PrefixSeq", "SuffixSeq", "apply_suffix",
]
