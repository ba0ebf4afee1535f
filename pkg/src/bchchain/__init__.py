"""Binary cyclic code chains grown from BCH codes, and interweave access over them."""

from .bandwidth import LinkBudget, ModulationScheme, bandwidth_extrema, bandwidth_table, required_bandwidth
from .bch import BchCode, construct_bch, encode_systematic, is_codeword
from .binpoly import BinPolynomial, frobenius_power, gcd, lcm, substitute_power
from .chain import ChainCode, NonEmbeddedSupport, chain_embed, derive_code, embed_bch, project_bch, rate_table
from .codec import (
    IncompleteTableWarning,
    UnknownSyndrome,
    build_syndrome_table,
    check_polynomial,
    decode_via_chain,
    generator_matrix,
    minimum_distance,
    parity_check_matrix,
    syndrome_decode,
)
from .gf2m import FieldTables, NotPrimitiveError, build_field, minimal_polynomial
from .interweave import SimConfig, SimMetrics, SlotEvent, opportunity_schedule, run_simulation, summarize

__version__ = "0.1.0"
