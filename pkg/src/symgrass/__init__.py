"""symgrass: exact computation with isotropic subspaces of alternating forms.

Submodules:
    fields        exact scalars (QQ, GF(p), GF(p^e))
    matrices      dense matrices, eliminations, characteristic polynomials
    polynomials   univariate polynomials, root splitting, binary forms
    jordan        generalized Jordan normal form for wide matrices
    forms         alternating forms, subspaces, Darboux reduction
    enumeration   subspace streams, stratified isotropic counting, fits
    tangent       form pencils, dependence certificates, smoothness tests
    residues      rational functions, residue pairings on the line
    brill_noether expected-dimension integer formulas
    campaigns     reproducible verification campaigns
    cli           command line entry point
"""

__version__ = "0.1.0"

from .fields import GF, QQ  # noqa: F401
from .matrices import Matrix  # noqa: F401
from .forms import AlternatingForm, Subspace  # noqa: F401
