"""Incremental exact linear solving over the rationals.

Equations are fed in a fixed order and reduced against a growing
row-reduced echelon basis, so the first inconsistent equation is
well-defined and its label can be reported as a witness. Pivoting is
deterministic (first nonzero coefficient), keeping reports reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Optional, Sequence


@dataclass
class Solution:
    """Outcome of an exact linear solve.

    status is "unique", "underdetermined" or "inconsistent". For consistent
    systems `values` holds a particular solution (free variables set to 0)
    and `determined` flags the variables whose value is the same in every
    solution.
    """

    status: str
    values: dict[int, Fraction] = field(default_factory=dict)
    determined: set[int] = field(default_factory=set)
    nullspace_dim: int = 0
    witness: Optional[Hashable] = None

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"


class LinearSystem:
    """Rational linear system built one labeled equation at a time."""

    def __init__(self, num_unknowns: int):
        self.n = num_unknowns
        self.rows: list[list[Fraction]] = []  # RREF rows, length n + 1 (rhs last)
        self.pivots: list[int] = []
        self.witness: Optional[Hashable] = None

    def add_equation(self, coeffs: Sequence[Fraction], rhs, label=None) -> str:
        """Reduce one equation into the system.

        Returns "added", "redundant" or "inconsistent"; the first
        inconsistent label is kept as the witness.
        """
        if len(coeffs) != self.n:
            raise ValueError("coefficient vector has wrong length")
        row = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        for piv, existing in zip(self.pivots, self.rows):
            c = row[piv]
            if c:
                for i in range(self.n + 1):
                    row[i] -= c * existing[i]
        lead = next((i for i in range(self.n) if row[i]), None)
        if lead is None:
            if row[self.n]:
                if self.witness is None:
                    self.witness = label
                return "inconsistent"
            return "redundant"
        inv = 1 / row[lead]
        row = [c * inv for c in row]
        for existing in self.rows:
            c = existing[lead]
            if c:
                for i in range(self.n + 1):
                    existing[i] -= c * row[i]
        self.rows.append(row)
        self.pivots.append(lead)
        return "added"

    def solve(self) -> Solution:
        if self.witness is not None:
            return Solution(status="inconsistent", witness=self.witness,
                            nullspace_dim=self.n - len(self.pivots))
        rank = len(self.pivots)
        free = [i for i in range(self.n) if i not in set(self.pivots)]
        values = {i: Fraction(0) for i in free}
        determined = set()
        for piv, row in zip(self.pivots, self.rows):
            values[piv] = row[self.n]
            if all(row[f] == 0 for f in free):
                determined.add(piv)
        status = "unique" if rank == self.n else "underdetermined"
        if status == "unique":
            determined = set(range(self.n))
        return Solution(status=status, values=values, determined=determined,
                        nullspace_dim=self.n - rank)
