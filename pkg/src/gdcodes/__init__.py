"""Optimal weight-three constant-composition codes and group divisible codes.

Every constructor verifies its output before returning it. The usual entry
points are :func:`gdcodes.pipeline.build_optimal` and the ``gdcodes``
command line tool.
"""
from .core import (BlockDesign, Codeword, Composition, ConstantCompositionCode, GddType,
                   GroupDivisibleCode, GroupPartition, VerificationReport)

__version__ = "0.1.0"

__all__ = ["BlockDesign", "Codeword", "Composition", "ConstantCompositionCode", "GddType",
           "GroupDivisibleCode", "GroupPartition", "VerificationReport"]
