"""Sampling-based checks for approximate minima."""

from pathlib import Path

from ._core import (
    ApproxminError,
    Domain,
    EmptySetError,
    Function,
    NonConvergenceError,
    NotLipschitzError,
    ParseError,
    SamplePlan,
    VectorProblem,
    __version__,
    alpha_from_lipschitz,
    audit,
    check_bounded_below,
    check_continuity,
    check_efficient,
    check_fritz_john,
    check_lsc,
    check_notion,
    check_quasi_efficient,
    clarke_dirderiv,
    clarke_subdiff,
    composite_set_distance,
    ekeland_search,
    find_multipliers,
    local_lipschitz,
    normal_cone,
    run_corpus,
    tangent_cone,
    verify_evp_premise,
)


def corpus_dir() -> Path:
    """Directory of the fixture corpus: bundled in wheels, the source tree otherwise."""
    here = Path(__file__).resolve().parent
    bundled = here / "corpus"
    return bundled if bundled.is_dir() else here.parents[1] / "corpus"
