"""Turanflag SDP - Flags, pair densities, solver files, certificates and rounding"""

from .flags import (
    TypeSigma,
    Flag,
    FlagContext,
    PairDensityMatrix,
    enumerate_types_and_flags,
    pair_density_matrix,
    pair_densities,
    edge_density,
)
from .problem import FlagProblem
from .sdpa import SdpProblem, SdpSolution, emit_sdp, read_sdp, parse_solution
from .ldl import ldl_decompose, is_psd
from .certificate import (
    Certificate,
    CertificateBlock,
    CertificateCheck,
    SlackReport,
    check_certificate,
    verify_certificate,
    sharp_graphs,
    format_certificate,
    parse_certificate,
    write_certificate,
)
from .rounding import round_solution

__all__ = [
    "TypeSigma",
    "Flag",
    "FlagContext",
    "PairDensityMatrix",
    "enumerate_types_and_flags",
    "pair_density_matrix",
    "pair_densities",
    "edge_density",
    "FlagProblem",
    "SdpProblem",
    "SdpSolution",
    "emit_sdp",
    "read_sdp",
    "parse_solution",
    "ldl_decompose",
    "is_psd",
    "Certificate",
    "CertificateBlock",
    "CertificateCheck",
    "SlackReport",
    "check_certificate",
    "verify_certificate",
    "sharp_graphs",
    "format_certificate",
    "parse_certificate",
    "write_certificate",
    "round_solution",
]
