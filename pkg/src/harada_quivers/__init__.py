"""Quivers with relations of block extensions and of their upper staircase
factor algebras (basic left Harada algebras), with an independent
block-matrix oracle for checking every symbolic claim."""
from .algebra import FDAlgebra, NotFiniteDimensionalError, build_algebra, same_ideal
from .block import BlockSpec, block_presentation, block_quiver, extend
from .harada import StaircaseSpec, harada_construction, harada_presentation, qf_check
from .matrix_model import build_block_algebra, verify_harada_conditions, verify_radical_formula
from .pipeline import PipelineConfig, verify_pipeline
from .quiver import Path, PathCombination, Presentation, Quiver
from .scalars import GF, QQ

__version__ = "0.1.0"
