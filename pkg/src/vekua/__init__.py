"""Dirichlet problems for polyanalytic, iterated Vekua, and bicomplex
equations on the unit disk and on conic boundaries.

The pieces: exact bicomplex arithmetic and the idempotent split
(bicomplex_core), exact polynomial/trig-polynomial algebra over Gaussian
rationals (exactnum, poly_algebra, fourier), the Pompeiu/Cauchy integral
operators with exact polynomial closed forms (integral_ops), solution
constructors tagged with provenance (representations), solvability tests
and solvers for the disk problems plus nonuniqueness witnesses
(disk_dirichlet), exact conic solvers with uniqueness certificates
(conic_dirichlet), independent finite-difference verification (verify),
and the file/CLI plumbing (problemfile, fileio, cli).
"""

from .bicomplex_core import (
    Bicomplex,
    J,
    bc_conj,
    bc_exp,
    bc_norm,
    bicomplexify,
    idempotent_join,
    idempotent_split,
)
from .conic_dirichlet import (
    BianalyticSolution,
    bc_solve_bianalytic_conic,
    bc_solve_vekua_bitsadze_conic,
    conic_boundary_points,
    solve_bianalytic_conic,
    solve_vekua_bitsadze_conic,
)
from .disk_dirichlet import (
    DiskProblem,
    SolvabilityReport,
    Variant,
    Verdict,
    bc_check_solvability,
    bc_poisson_solve,
    bc_solve_disk,
    bc_witness,
    check_hoiv_solvability,
    check_poly_solvability,
    hoiv_boundary_traces,
    hoiv_boundary_traces_fd,
    solve_hoiv_disk,
    solve_poly_disk,
    standard_z_samples,
    witness_family,
    witness_poly,
)
from .errors import (
    CircumferenceNotAllowedError,
    DegenerateConicError,
    DegreeCapExceededError,
    DomainEdgeError,
    EmptyLocusError,
    InvalidOrderError,
    MalformedCsvError,
    MixedProblemError,
    NotInIdealError,
    NotSolvableError,
    SchemaError,
    UnsupportedDomainError,
    VekuaError,
    ZeroDivisorError,
)
from .exactnum import GaussianRational
from .fourier import BicomplexTrigPoly, TrigPoly
from .integral_ops import (
    cauchy_boundary,
    poisson,
    t_disk,
    t_domain,
    t_poly_disk,
    t_poly_ellipse,
)
from .poly_algebra import XY, ZZBAR, BicomplexPoly, BivarPoly, Conic, ConicClass
from .problemfile import ProblemFile, load_problem, validate
from .representations import (
    Provenance,
    SolutionField,
    ZHatPoly,
    bc_hoiv_from_holo,
    bc_join_solutions,
    exp_t_factor,
    hoiv_from_holo,
    hoiv_from_vekua,
    t_bicomplex_poly,
)
from .verify import (
    ResidualReport,
    boundary_mismatch,
    clamp_grid,
    fd_dbar,
    iterated_apply,
    iterated_residual,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
