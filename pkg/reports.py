"""
Solver output shared by the pipelines in solvers.py and crossing.py.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from graph_core import Pair


class Problem(str, Enum):
    BTA = "bta"
    TAEC = "taec"
    CDS = "2cds"
    KSUB = "ksub"
    QUOTA = "quota"
    BUDGET = "budget"
    CROSSAUG = "crossaug"

    @property
    def maximizes(self) -> bool:
        return self is Problem.BUDGET


# Ratio guarantees of the full algorithms the greedy subroutines stand in for.
# Symbolic tags only; nothing asserts them.
REFERENCE_BOUNDS: dict[Problem, str] = {
    Problem.BTA: "1.91",
    Problem.TAEC: "O(ln |R|)",
    Problem.CDS: "O(sigma log^3 n)",
    Problem.KSUB: "O(sigma log k)",
    Problem.QUOTA: "O(sigma log n)",
    Problem.BUDGET: "(1+eps, Omega(eps^2 / log n))",
    Problem.CROSSAUG: "1.91",
}


@dataclass(frozen=True)
class SolutionReport:
    problem: Problem
    feasible: bool
    links: tuple[Pair, ...] = ()
    nodes: tuple[int, ...] = ()
    edges: tuple[Pair, ...] = ()
    objective: Fraction = Fraction(0)
    cost: Fraction = Fraction(0)
    lifted_cost: Fraction = Fraction(0)
    profit: Optional[Fraction] = None
    sigma_max: Optional[Fraction] = None
    exact_opt: Optional[Fraction] = None
    ratio: Optional[Fraction] = None
    seed: int = 0
    config: dict[str, Any] = field(default_factory=dict)
    per_sample: tuple[dict[str, Any], ...] = ()
    diagnostics: dict[str, Any] = field(default_factory=dict)
    wall_ms: Optional[float] = None

    @property
    def reference_bound_tag(self) -> Optional[str]:
        return REFERENCE_BOUNDS.get(self.problem)

    def with_exact(self, opt: Fraction) -> "SolutionReport":
        """
        Attach the exact optimum and the ratio (always >= 1 for a valid solution).
        A zero objective against a positive optimum has no ratio; that optimum
        is kept in diagnostics only.
        """
        opt = Fraction(opt)
        found = self.objective
        top, bottom = (opt, found) if self.problem.maximizes else (found, opt)
        if bottom == 0 and top != 0:
            return replace(self, diagnostics={**self.diagnostics, "unrated_exact_opt": opt})
        ratio = Fraction(1) if bottom == 0 else top / bottom
        return replace(self, exact_opt=opt, ratio=ratio)
