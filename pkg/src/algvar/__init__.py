"""Exact verification toolkit for 5-dimensional nilpotent commutative CD-algebras."""

from .algebra import AlgebraStructure, check_identity, load_algebra, multiply
from .catalog import catalog_get, catalog_list, iso_rules
from .degeneration import DegenerationCertificate, base_change, verify_certificate, verify_isomorphism

__version__ = "0.1.0"

__all__ = [
    "AlgebraStructure", "check_identity", "load_algebra", "multiply", "catalog_get",
    "catalog_list", "iso_rules", "DegenerationCertificate", "base_change",
    "verify_certificate", "verify_isomorphism", "__version__",
]
