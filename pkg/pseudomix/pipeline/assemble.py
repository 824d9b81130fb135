import logging

from more_itertools import partition

from pseudomix.exceptions import InvalidInputError
from pseudomix.linalg import BipartiteDims, HermitianState
from pseudomix.pipeline.models import Decomposition, Pseudomixture

logger = logging.getLogger(__name__)


def assemble(d: Decomposition, weight_prune: float = 1e-12) -> Pseudomixture:
    """Collect positive and negative weights into rho = a rho(+) - b rho(-).

    Terms with |weight| < ``weight_prune`` are dropped. b is the negative
    mass and a = 1 + b, so a - b is exactly 1 whatever was pruned; when no
    negative term remains the minus part is empty and a = 1.

    Raises:
        InvalidInputError: no terms survive or the positive mass is zero.
    """
    terms = [term for term in d.terms if abs(term.weight) >= weight_prune]
    if not terms:
        raise InvalidInputError("Cannot assemble a pseudomixture from an empty term list")

    positive, negative = partition(lambda term: term.weight < 0.0, terms)
    positive, negative = list(positive), list(negative)
    s_plus = sum(term.weight for term in positive)
    s_minus = -sum(term.weight for term in negative)
    if not s_plus > 0.0:
        raise InvalidInputError("Decomposition has no positive weight")

    b = s_minus
    a = 1.0 + b
    if abs(a - s_plus) > 1e-9:
        logger.warning(f"Positive mass {s_plus!r} differs from 1 + b = {a!r}")

    plus_terms = [
        term.model_copy(update={"weight": term.weight / s_plus}) for term in positive
    ]
    minus_terms = [
        term.model_copy(update={"weight": -term.weight / s_minus}) for term in negative
    ]
    logger.info(
        f"Pseudomixture a = {a:.12g}, b = {b:.12g} "
        f"({len(plus_terms)} plus, {len(minus_terms)} minus terms)"
    )
    return Pseudomixture(
        a=a,
        b=b,
        plus_terms=plus_terms,
        minus_terms=minus_terms,
        residual_hs=d.residual_hs,
    )


def reconstruct(p: Pseudomixture, dims: BipartiteDims) -> HermitianState:
    """a rho(+) - b rho(-) as a matrix."""
    matrix = p.a * p.plus_state(dims)
    if p.minus_terms:
        matrix = matrix - p.b * p.minus_state(dims)
    return HermitianState.from_matrix(matrix, dims.d1, dims.d2)
