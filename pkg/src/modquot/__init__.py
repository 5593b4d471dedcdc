"""Exact divisor-class certificates for quotients of M_{g,n} by groups of marked-point permutations."""

from .catalog import (
    CatalogEntry,
    a_closed,
    b_closed,
    catalog_entry,
    slope_min,
    weierstrass_normalized,
    weierstrass_summed,
)
from .certify import CertificateInput, build_certificate, f_closed, f_general
from .classify import Verdict, classify
from .errors import (
    CriterionInapplicable,
    DomainError,
    GroupTooLarge,
    ModquotError,
    SizeCapExceeded,
    Unsupported,
)
from .groups import BlockPartition, GroupSpec, parse_group
from .interval import CoefInterval
from .picard import FullDivisorClass, SpaceId
from .profile import ProfileDivisorClass
from .pullback import ForgetfulMap, pullback_aggregate, pullback_oracle
from .tables import nmin_search, reproduce_tables

__version__ = "0.1.0"
