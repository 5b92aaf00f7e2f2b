"""Certified dichotomies for graphs excluding a Swiss Army graph and its complement.

Every procedure returns a certificate that :func:`verify_certificate`
re-checks from the host adjacency alone.
"""

from .certificates import Certificate, from_text, to_text, verify_certificate
from .constants import ConstantSheet, constants_sheet, desk_sheet
from .construct import swiss_army
from .errors import BoundDidNotFire, EhcertError, Inconclusive, ParseError, PreconditionError, SearchLimitExceeded
from .graph import Blockade, Graph
from .io import read_graph, write_graph
from .limits import DEFAULT, Limits
from .patterns import find_copy, ind_count
from .pipeline import eh_certify

__all__ = [
    "Blockade",
    "BoundDidNotFire",
    "Certificate",
    "ConstantSheet",
    "DEFAULT",
    "EhcertError",
    "Graph",
    "Inconclusive",
    "Limits",
    "ParseError",
    "PreconditionError",
    "SearchLimitExceeded",
    "constants_sheet",
    "desk_sheet",
    "eh_certify",
    "find_copy",
    "from_text",
    "ind_count",
    "read_graph",
    "swiss_army",
    "to_text",
    "verify_certificate",
    "write_graph",
]
