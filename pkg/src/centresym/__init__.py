"""Centre symmetry sets, Wigner and secant caustics, and equidistants of planar curves."""

__version__ = "0.1.0"

from .curve import CurveSpec, CurveGeometry, TrigTerm, build_curve, find_inflexions, rotation_number  # noqa: E402
from .parallel import ParallelStructure, decompose  # noqa: E402
from .branches import (  # noqa: E402
    CausticBranch,
    GlueingScheme,
    SamplingConfig,
    assemble_all,
    assemble_branch,
    enumerate_maximal_schemes,
)
from .certificates import check_genericity, certificate_curvature_sign, certificate_parallelogram  # noqa: E402
from .pipeline import AnalysisConfig, AnalysisReport, run_analysis  # noqa: E402
from .specio import parse_curve_file, parse_curve_text, dump_spec  # noqa: E402

__all__ = [
    "CurveSpec",
    "CurveGeometry",
    "TrigTerm",
    "build_curve",
    "find_inflexions",
    "rotation_number",
    "ParallelStructure",
    "decompose",
    "CausticBranch",
    "GlueingScheme",
    "SamplingConfig",
    "assemble_all",
    "assemble_branch",
    "enumerate_maximal_schemes",
    "check_genericity",
    "certificate_curvature_sign",
    "certificate_parallelogram",
    "AnalysisConfig",
    "AnalysisReport",
    "run_analysis",
    "parse_curve_file",
    "parse_curve_text",
    "dump_spec",
]
