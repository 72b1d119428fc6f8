"""Separation criteria: basis certificates, refuters, GF(2) solving, density."""

from .certificates import (
    Adjustment,
    BasisCertificate,
    ImplicationResult,
    PlinCertificate,
    cequal_certificate,
    cequal_implication_test,
    choose_theta,
    plin_certificate,
    reject_mixture,
)
from .density import density_ell, density_table, symmetric_difference_count
from .gf2 import check_solution, gf2_nullspace, gf2_rank, gf2_solve, gf2_solve_rows
from .refute import (
    RefutationReport,
    cequal_refutation_length,
    refute_cequal_complement_dup,
    refute_plin_ipstar,
)

__all__ = [
    "Adjustment", "BasisCertificate", "ImplicationResult", "PlinCertificate",
    "cequal_certificate", "cequal_implication_test", "choose_theta", "plin_certificate",
    "reject_mixture", "density_ell", "density_table", "symmetric_difference_count",
    "check_solution", "gf2_nullspace", "gf2_rank", "gf2_solve", "gf2_solve_rows",
    "RefutationReport", "cequal_refutation_length", "refute_cequal_complement_dup",
    "refute_plin_ipstar",
]
