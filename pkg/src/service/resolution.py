"""Resolution graphs of Du Val points and the coefficient systems they carry."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from pydantic import ValidationError

from schemas.enums import DynkinKind
from schemas.rational import fractions
from schemas.resolution import CurveClass, DynkinType, IntersectionMatrix, PullbackCoefficients
from src.exceptions import InputError

logger = logging.getLogger(__name__)


def parse_dynkin(label: str) -> DynkinType:
    try:
        return DynkinType.parse(label)
    except (ValueError, ValidationError) as exc:
        raise InputError({"message": f"invalid Dynkin type {label!r}", "reason": str(exc)}) from None


def graph_edges(t: DynkinType) -> List[Tuple[int, int]]:
    """1-based edges of the dual graph."""
    m = t.rank
    if t.kind == DynkinKind.A:
        return [(i, i + 1) for i in range(1, m)]
    if t.kind == DynkinKind.D:
        return [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, m)]
    # E: arms E2-E1, E4 and E5-...-Em around the fork E3
    return [(1, 2), (2, 3), (3, 4), (3, 5)] + [(i, i + 1) for i in range(5, m)]


@lru_cache(maxsize=None)
def _matrix(kind: DynkinKind, rank: int) -> IntersectionMatrix:
    t = DynkinType(kind=kind, rank=rank)
    entries = -2 * np.eye(rank, dtype=np.int64)
    for i, j in graph_edges(t):
        entries[i - 1, j - 1] = entries[j - 1, i - 1] = 1
    return IntersectionMatrix(entries=entries.tolist())


def intersection_matrix(t: DynkinType) -> IntersectionMatrix:
    return _matrix(t.kind, t.rank)


def _to_sympy(matrix: IntersectionMatrix) -> sympy.Matrix:
    return sympy.Matrix(matrix.entries)


def leading_minors(matrix: IntersectionMatrix) -> List[Fraction]:
    full = _to_sympy(matrix)
    return [Fraction(int(full[:k, :k].det())) for k in range(1, matrix.size + 1)]


def is_negative_definite(matrix: IntersectionMatrix) -> bool:
    """Sylvester: the k-th leading minor has sign (-1)^k."""
    return all((minor < 0) if k % 2 else (minor > 0) for k, minor in enumerate(leading_minors(matrix), start=1))


def pullback_coefficients(t: DynkinType, b: Sequence[int]) -> PullbackCoefficients:
    """Exact solution n of M n = -b, i.e. (L + sum n_i E_i) . E_j = 0 for every j."""
    b = list(b)
    if len(b) != t.rank:
        raise InputError({"message": f"{t.label} needs {t.rank} incidences, got {len(b)}", "incidences": b})
    if any((not isinstance(v, int)) or isinstance(v, bool) or v < 0 for v in b):
        raise InputError({"message": "incidences are non-negative integers", "incidences": b})
    matrix = _to_sympy(intersection_matrix(t))
    solution = matrix.LUsolve(sympy.Matrix([-v for v in b]))
    coeffs = fractions(sympy.Rational(v) for v in solution)
    return PullbackCoefficients(coeffs=coeffs, dynkin=t)


def pullback_residual(t: DynkinType, b: Sequence[int], n: PullbackCoefficients) -> List[Fraction]:
    """M n + b; all zero for a correct solution."""
    matrix = intersection_matrix(t)
    return [
        sum((Fraction(matrix.entry(i, j)) * n.coeffs[j - 1] for j in range(1, t.rank + 1)), Fraction(0)) + b[i - 1]
        for i in range(1, t.rank + 1)
    ]


def anticanonical_incidence(t: DynkinType) -> List[int]:
    """C . E_i for the curve C in |-K_X| through the point."""
    b = [0] * t.rank
    if t.kind == DynkinKind.A:
        b[0] += 1
        b[-1] += 1
    elif t.kind == DynkinKind.D:
        b[t.rank - 2] = 1
    else:
        b[{6: 3, 7: 0, 8: 7}[t.rank]] = 1
    return b


def anticanonical_pullback(t: DynkinType) -> PullbackCoefficients:
    return pullback_coefficients(t, anticanonical_incidence(t))


def basis_curve(
    t: DynkinType,
    k: int,
    name: Optional[str] = None,
    degree: Fraction = Fraction(1),
    strict: Fraction = Fraction(-1),
) -> Tuple[CurveClass, PullbackCoefficients]:
    """A curve of the given degree whose strict transform meets E_k once and no other E_i."""
    if not 1 <= k <= t.rank:
        raise InputError(f"E_{k} does not exist on {t.label}")
    b = [0] * t.rank
    b[k - 1] = 1
    curve = CurveClass(
        name=name or f"L{k}",
        anticanonical_degree=degree,
        self_intersection_strict=strict,
        exc_intersections=b,
    )
    return curve, pullback_coefficients(t, b)


def intersection_number(l1: CurveClass, n1: PullbackCoefficients, l2: CurveClass, strict_product: Fraction) -> Fraction:
    """L1 . L2 on X from the strict product on the resolution and n1."""
    if not (l1.rank == l2.rank == len(n1)):
        raise InputError(
            {
                "message": "curve classes live on different resolution graphs",
                "ranks": [l1.rank, l2.rank, len(n1)],
            }
        )
    total = Fraction(strict_product)
    for n, e in zip(n1.coeffs, l2.exc_intersections):
        total += n * e
    return total


def involution_reverse(n: PullbackCoefficients) -> PullbackCoefficients:
    """Action of the covering involution on an A_m chain."""
    if n.dynkin is not None and n.dynkin.kind != DynkinKind.A:
        raise InputError(f"the involution acts by reversal on A chains only, not on {n.dynkin.label}")
    return PullbackCoefficients(coeffs=list(reversed(n.coeffs)), dynkin=n.dynkin)


def add_coefficients(terms: Sequence[Tuple[PullbackCoefficients, Fraction]]) -> List[Fraction]:
    if not terms:
        return []
    size = len(terms[0][0])
    if any(len(n) != size for n, _ in terms):
        raise InputError("coefficient vectors of different lengths")
    total = [Fraction(0)] * size
    for n, weight in terms:
        for i, c in enumerate(n.coeffs):
            total[i] += Fraction(weight) * c
    return total


def cartier_check(
    vectors: Sequence[PullbackCoefficients],
    reference: Optional[PullbackCoefficients] = None,
    multiple: int = 0,
) -> bool:
    """True when sum(vectors) - multiple * reference is integral."""
    if not vectors:
        return True
    total = add_coefficients([(n, Fraction(1)) for n in vectors])
    if reference is not None:
        if len(reference) != len(total):
            raise InputError("reference vector has a different length")
        total = [t - multiple * r for t, r in zip(total, reference.coeffs)]
    integral = all(v.denominator == 1 for v in total)
    logger.debug("cartier check residual=%s integral=%s", [str(v) for v in total], integral)
    return integral
