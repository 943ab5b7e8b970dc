"""Exhaustive checks of the diamond theorem and its finite-geometry background."""

from .geometry import ProjLine, ProjPoint, Structure, classify, lines, points, structure_of
from .perm import GroupSet, act, as_affine, axis_perm, diamond_generators, generate_closure, orbit
from .schreier import StabilizerChain, schreier_sims
from .symmetry import SquareIsometry, apply_isometry, color_interchange, symmetry_profile, verify_theorem
from .tiles import Pattern, TileType, decode, encode, make_diamond_figure

__version__ = "0.1.0"

__all__ = [
    "GroupSet",
    "Pattern",
    "ProjLine",
    "ProjPoint",
    "SquareIsometry",
    "StabilizerChain",
    "Structure",
    "TileType",
    "act",
    "apply_isometry",
    "as_affine",
    "axis_perm",
    "classify",
    "color_interchange",
    "decode",
    "diamond_generators",
    "encode",
    "generate_closure",
    "lines",
    "make_diamond_figure",
    "orbit",
    "points",
    "schreier_sims",
    "structure_of",
    "symmetry_profile",
    "verify_theorem",
]
