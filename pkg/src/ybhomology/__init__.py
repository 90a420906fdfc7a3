"""Set-theoretic Yang-Baxter homology of finite biquandles.

Layer: Package Surface
May only import from: every ybhomology module except .cli
"""

from .algebra import AxiomReport
from .algebra import FiniteYB
from .algebra import from_tables
from .algebra import invert_R
from .algebra import load_biquandle
from .algebra import make_alexander
from .algebra import make_cyclic
from .algebra import save_biquandle
from .algebra import verify_axioms
from .complex import Theory
from .complex import boundary_matrix
from .complex import chain_rank
from .complex import enumerate_basis
from .complex import face
from .complex import verify_complex
from .families import builtin_biquandles
from .families import resolve
from .knots import closed_braid
from .knots import colorings
from .knots import envgroup_abelianization
from .knots import envgroup_presentation
from .knots import homological_invariant
from .knots import load_diagram
from .runner import HomologyRunner
from .smith import AbGroup
from .smith import IntMatrix
from .smith import homology
from .smith import presentation
from .smith import snf

__version__ = "0.1.0"

__all__ = [
    "AbGroup",
    "AxiomReport",
    "FiniteYB",
    "HomologyRunner",
    "IntMatrix",
    "Theory",
    "boundary_matrix",
    "builtin_biquandles",
    "chain_rank",
    "closed_braid",
    "colorings",
    "enumerate_basis",
    "envgroup_abelianization",
    "envgroup_presentation",
    "face",
    "from_tables",
    "homological_invariant",
    "homology",
    "invert_R",
    "load_biquandle",
    "load_diagram",
    "make_alexander",
    "make_cyclic",
    "presentation",
    "resolve",
    "save_biquandle",
    "snf",
    "verify_axioms",
    "verify_complex",
]
