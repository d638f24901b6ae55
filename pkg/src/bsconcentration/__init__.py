"""Beam-splitter entanglement concentration for two-qubit polarization states."""
from .measures import EntanglementMetrics, concurrence, entropy_log4, eof, metrics, spin_flip
from .optimize import SweepPoint, find_concentration, optimize_eof, sweep, turning_point
from .protocol import BeamSplitterSettings, ProtocolOutcome, bs_transform, fock_oracle
from .states import DensityMatrix, StateFamilyParams, bell, mixed_family, pure_vh_hv, pure_vv_hh, werner

__version__ = "0.1.0"
