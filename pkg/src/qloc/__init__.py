"""Swap-test cosine fingerprint matching for RF localization, on a dense statevector simulator."""

from .encoding import AmplitudeVector, RawRssVector, prepare_state, rotation_tree_circuit, rss_to_amplitudes
from .fingerprint import FingerprintDb, Location, MatchMode, TestSample, localize, resource_cost
from .statevector import RngStream, StateVector, new_state
from .swaptest import classical_dot_oracle, estimate_similarity, exact_match_probability, exact_similarity

__version__ = "0.1.0"
