from __future__ import annotations

from enum import Enum
from functools import lru_cache


class DynkinKind(str, Enum):
    """Kind of a Du Val point, named after its resolution graph."""
    A = "A"
    D = "D"
    E = "E"

    @classmethod
    @lru_cache(maxsize=1)
    def _descriptions(cls) -> dict[DynkinKind, str]:
        return {
            cls.A: "Cyclic quotient point; the exceptional curves form a chain E1-E2-...-Em.",
            cls.D: "Fork at E3 with leaves E1 and E2 and tail E4-...-Em.",
            cls.E: "Fork at E3 with arms E2-E1, E4 and E5-...-Em.",
        }

    @property
    def description(self) -> str:
        return self._descriptions().get(self, self.value)

    @classmethod
    @lru_cache(maxsize=1)
    def _rank_ranges(cls) -> dict[DynkinKind, tuple[int, ...]]:
        return {
            cls.A: tuple(range(1, 9)),
            cls.D: tuple(range(4, 9)),
            cls.E: (6, 7, 8),
        }

    @property
    def allowed_ranks(self) -> tuple[int, ...]:
        """Ranks that occur on a degree-1 del Pezzo surface."""
        return self._rank_ranges()[self]

    @property
    def sort_weight(self) -> int:
        return {DynkinKind.E: 0, DynkinKind.D: 1, DynkinKind.A: 2}[self]


class Relation(str, Enum):
    GE = "ge"
    EQ = "eq"


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


class ComponentKind(str, Enum):
    STRICT = "strict"
    EXCEPTIONAL = "exceptional"


class CuspStratum(str, Enum):
    """Where the cuspidal anticanonical curve sits, if there is one."""
    CUSP_AT_A2 = "a2"
    CUSP_AT_A1 = "a1"
    CUSP_AT_SMOOTH = "smooth"
    NO_CUSP = "none"

    @classmethod
    @lru_cache(maxsize=1)
    def _descriptions(cls) -> dict[CuspStratum, str]:
        return {
            cls.CUSP_AT_A2: "Some curve in |-K_X| has a cusp at a singular point of type A2.",
            cls.CUSP_AT_A1: "Some curve in |-K_X| has a cusp at a singular point of type A1, none at A2.",
            cls.CUSP_AT_SMOOTH: "Some curve in |-K_X| has a cusp, only at smooth points.",
            cls.NO_CUSP: "No curve in |-K_X| is cuspidal.",
        }

    @property
    def description(self) -> str:
        return self._descriptions().get(self, self.value)


class Subcommand(str, Enum):
    TABLE = "table"
    CERTIFY = "certify"
    LCT = "lct"
    PULLBACK = "pullback"
    POLYTOPE = "polytope"
    THEOREM_I = "theorem-i"
    GERM = "germ"


class PolytopeOperation(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"
    IMPLIED = "implied"
    ELIMINATE = "eliminate"
    VERTICES = "vertices"


class Lemma20Outcome(str, Enum):
    VERIFIED = "verified"
    PRECONDITION_VIOLATION = "precondition_violation"
