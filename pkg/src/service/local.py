"""The local inequality: hypothesis bullets, derived conclusions and the blow-up chain."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from schemas.enums import Lemma20Outcome
from schemas.local import (
    ChainState,
    HypothesisReport,
    Lemma20Report,
    Lemma20SuiteConfig,
    Lemma20SuiteSummary,
    TheoremIParams,
)
from schemas.rational import fractions, to_fraction
from src.exceptions import InputError, LemmaFalsified, PreconditionViolation

logger = logging.getLogger(__name__)

ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Hypotheses
# ---------------------------------------------------------------------------
def _bullet_1(p: TheoremIParams, a1: Fraction, a2: Fraction) -> bool:
    return p.alpha * a1 + p.beta * a2 <= 1


def _bullet_2(p: TheoremIParams) -> bool:
    return p.A * (p.B - 1) >= 1 >= max(p.M, p.N)


def _bullet_3(p: TheoremIParams) -> bool:
    return (
        p.alpha * (p.A + p.M - 1) >= p.A ** 2 * (p.B + p.N - 1) * p.beta
        and p.alpha * (1 - p.M) + p.A * p.beta >= p.A
    )


def _fourth_alternative(p: TheoremIParams) -> bool:
    return p.alpha * (p.B + 1 - p.M * p.B - p.N) + p.beta * (p.A + 1 - p.A * p.N - p.M) >= p.A * p.B - 1


def _bullet_4(p: TheoremIParams) -> bool:
    return 2 * p.M + p.A * p.N <= 2 or _fourth_alternative(p)


def hypothesis_report(p: TheoremIParams, a1: Optional[Fraction] = None, a2: Optional[Fraction] = None) -> HypothesisReport:
    bullet_1 = None
    if a1 is not None and a2 is not None:
        bullet_1 = _bullet_1(p, to_fraction(a1), to_fraction(a2))
    return HypothesisReport(bullet_1=bullet_1, bullet_2=_bullet_2(p), bullet_3=_bullet_3(p), bullet_4=_bullet_4(p))


def check_parameter_hypotheses(p: TheoremIParams) -> bool:
    return hypothesis_report(p).parameters_hold


def check_hypotheses(p: TheoremIParams, a1: Fraction, a2: Fraction) -> bool:
    return hypothesis_report(p, a1, a2).all_hold


def dimitra_params(m: int) -> TheoremIParams:
    if m < 3:
        raise InputError(f"the corollary parameters need m >= 3, got {m}")
    return TheoremIParams(
        A=Fraction(2),
        B=Fraction(m, m - 1),
        M=Fraction(0),
        N=Fraction(0),
        alpha=Fraction(2 * m - 2, m + 1),
        beta=Fraction(2, m + 1),
    )


def conclusion_disjunction(p: TheoremIParams, a1: Fraction, a2: Fraction, mult1: Fraction, mult2: Fraction) -> bool:
    a1, a2, mult1, mult2 = fractions([a1, a2, mult1, mult2])
    return mult1 >= p.M + p.A * a1 - a2 or mult2 >= p.N + p.B * a2 - a1


# ---------------------------------------------------------------------------
# Derived conclusions
# ---------------------------------------------------------------------------
def lemma_2_0_conclusions(p: TheoremIParams) -> Dict[str, bool]:
    A, B, M, N, alpha, beta = p.A, p.B, p.M, p.N, p.alpha, p.beta
    return {
        "A+M>=1": A + M >= 1,
        "B>1": B > 1,
        "alpha(B+1-MB-N)+beta(A+1-AN-M)>=AB-1": _fourth_alternative(p),
        "beta(1-N)+B*alpha>=B": beta * (1 - N) + B * alpha >= B,
        "alpha(2-M)/(A+1)+beta(2-N)/(B+1)>=1": alpha * (2 - M) / (A + 1) + beta * (2 - N) / (B + 1) >= 1,
        "alpha(2-M)B+beta(1-N)(A+1)>=B(A+1)": alpha * (2 - M) * B + beta * (1 - N) * (A + 1) >= B * (A + 1),
    }


def verify_lemma_2_0(p: TheoremIParams) -> Lemma20Report:
    """Evaluate every conclusion; a failure under the parameter bullets raises LemmaFalsified."""
    hypotheses = hypothesis_report(p)
    conclusions = lemma_2_0_conclusions(p)
    if not hypotheses.parameters_hold:
        return Lemma20Report(
            params=p,
            outcome=Lemma20Outcome.PRECONDITION_VIOLATION,
            hypotheses=hypotheses,
            conclusions=conclusions,
        )
    failed = sorted(name for name, holds in conclusions.items() if not holds)
    if failed:
        raise LemmaFalsified({"message": "derived inequality fails under the hypotheses", "failed": failed, "params": p.model_dump(mode="json")})
    return Lemma20Report(params=p, outcome=Lemma20Outcome.VERIFIED, hypotheses=hypotheses, conclusions=conclusions)


def _draw(rng: np.random.Generator, max_denominator: int, upper: int) -> Fraction:
    q = int(rng.integers(1, max_denominator + 1))
    return Fraction(int(rng.integers(0, upper * q + 1)), q)


def sample_lemma_2_0(config: Lemma20SuiteConfig) -> tuple[List[TheoremIParams], int]:
    """Seeded rejection sampling of parameter tuples meeting bullets 2-4; M, N are drawn from [0, 1]."""
    rng = np.random.default_rng(config.seed)
    accepted: List[TheoremIParams] = []
    attempts = 0
    while len(accepted) < config.samples:
        if attempts >= config.max_attempts:
            raise InputError(
                {"message": "sampling budget exhausted", "accepted": len(accepted), "attempts": attempts}
            )
        attempts += 1
        q = config.max_denominator
        ratio = config.max_numerator_ratio
        p = TheoremIParams(
            A=_draw(rng, q, ratio),
            B=_draw(rng, q, ratio),
            M=_draw(rng, q, 1),
            N=_draw(rng, q, 1),
            alpha=_draw(rng, q, ratio),
            beta=_draw(rng, q, ratio),
        )
        if check_parameter_hypotheses(p):
            accepted.append(p)
    logger.debug("sampled %d parameter tuples in %d attempts (seed %d)", len(accepted), attempts, config.seed)
    return accepted, attempts


def run_lemma_2_0_suite(config: Optional[Lemma20SuiteConfig] = None) -> Lemma20SuiteSummary:
    config = config or Lemma20SuiteConfig()
    samples, attempts = sample_lemma_2_0(config)
    verified = sum(1 for p in samples if verify_lemma_2_0(p).outcome == Lemma20Outcome.VERIFIED)
    logger.info("lemma suite: %d/%d samples verified", verified, len(samples))
    return Lemma20SuiteSummary(config=config, attempts=attempts, accepted=len(samples), verified=verified)


# ---------------------------------------------------------------------------
# Blow-up chain
# ---------------------------------------------------------------------------
def chain_coefficient(a1: Fraction, a2: Fraction, mults: Sequence[Fraction], i: int) -> Fraction:
    """Coefficient of F_i: a1 + i*a2 - i + sum_{j<i} m_j."""
    return a1 + i * a2 - i + sum(mults[:i], Fraction(0))


def simulate_chain(a1: Fraction, a2: Fraction, mults: Sequence[Fraction]) -> ChainState:
    a1, a2 = to_fraction(a1), to_fraction(a2)
    mults = fractions(mults)
    if not (0 <= a1 < 1 and 0 <= a2 < 1):
        raise InputError({"message": "a1 and a2 lie in [0, 1)", "a1": str(a1), "a2": str(a2)})
    if any(m < 0 for m in mults):
        raise InputError("multiplicities are non-negative")
    coeffs = [chain_coefficient(a1, a2, mults, i) for i in range(1, len(mults) + 1)]
    violations = [i for i, c in enumerate(coeffs, start=1) if not 0 <= c < 1]
    return ChainState(a1=a1, a2=a2, mults=mults, coeffs=coeffs, violations=violations)


def longest_window_prefix(state: ChainState) -> int:
    """Largest n such that 0 <= coeff_i < 1 for every i <= n."""
    first = state.first_violation
    return len(state.coeffs) if first is None else first - 1


def chain_bound(p: TheoremIParams, a2: Fraction) -> Fraction:
    """(N + B a2) / (1 - a2); only a bound while the parameter bullets hold."""
    a2 = to_fraction(a2)
    hypotheses = hypothesis_report(p)
    if not hypotheses.parameters_hold:
        raise PreconditionViolation(
            {
                "message": "the chain bound needs bullets 2-4",
                "hypotheses": hypotheses.model_dump(mode="json"),
                "params": p.model_dump(mode="json"),
            }
        )
    if a2 >= 1:
        raise InputError(f"chain bound needs a2 < 1, got {a2}")
    return (p.N + p.B * a2) / (1 - a2)
