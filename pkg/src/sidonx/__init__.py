"""Certified Sidon and B2[g] subset extraction.

Compress a set of integers into a cyclic group with a Freiman 2-morphism,
cover the group with Singer difference-set translates, keep the block that
meets the image most, pull it back and certify the result.
"""
__version__ = "0.1.0"

from .compress import CompressionResult, Theta, compress, compress_k, compress_with_theta, phi_apply, sample_theta
from .errors import CertificationFailed, SidonError
from .extract import ExtractionReport, ModulusChoice, choose_modulus, extract_b2g, extract_sidon, pigeonhole_block
from .geometry import PointSet, ReductionCertificate, extract_points, project, pullback_points, rationalize
from .gfield import CubicFieldContext, cubic_mul, cubic_pow, find_primitive, make_field
from .kernels import BACKEND
from .oracle import OracleResult, max_b2g, max_sidon
from .singer import PlanarDifferenceSet, lifted_cover, sidon_cover, singer_difference_set
from .verify import (Check, Witness, is_b2g, is_cover, is_freiman2, is_freiman_k, is_perfect_difference_set,
                     is_sidon, is_sidon_vectors)

__all__ = [
    "BACKEND", "CertificationFailed", "Check", "CompressionResult", "CubicFieldContext", "ExtractionReport",
    "ModulusChoice", "OracleResult", "PlanarDifferenceSet", "PointSet", "ReductionCertificate", "SidonError",
    "Theta", "Witness", "choose_modulus", "compress", "compress_k", "compress_with_theta", "cubic_mul",
    "cubic_pow", "extract_b2g", "extract_points", "extract_sidon", "find_primitive", "is_b2g", "is_cover",
    "is_freiman2", "is_freiman_k", "is_perfect_difference_set", "is_sidon", "is_sidon_vectors", "lifted_cover",
    "make_field", "max_b2g", "max_sidon", "phi_apply", "pigeonhole_block", "project", "pullback_points",
    "rationalize", "sample_theta", "sidon_cover", "singer_difference_set",
]
