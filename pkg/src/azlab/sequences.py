"""Almkvist-Zudilin numbers by four independent sums, plus the auxiliary g_n.

gamma_n = sum_j (-1)^{n-j} 3^{n-3j} (3j)!/j!^3 C(n,3j) C(n+j,j)

The three alternative sums (``az_cz``, ``az_sun4``, ``az_sun5``) are
transformation formulas for the same sequence and serve as mutual checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Literal, Sequence

from .exactnum import binomial

__all__ = [
    "az_def",
    "az_cz",
    "az_sun4",
    "az_sun5",
    "g_seq",
    "FORMULAS",
    "SequenceTable",
    "gamma_table",
    "g_table",
]


def _check(n: int) -> None:
    if n < 0:
        raise ValueError(f"sequence index must be >= 0, got {n}")


def _signed_pow3(e: int, negative: bool) -> int:
    # (-3)^e as sign * 3^e
    v = 3**e
    return -v if negative and e % 2 else v


def _quartic(i: int) -> int:
    # C(2i,i)^2 C(4i,2i)
    return comb(2 * i, i) ** 2 * comb(4 * i, 2 * i)


def az_def(n: int) -> int:
    _check(n)
    total = 0
    for j in range(n // 3 + 1):
        term = 3 ** (n - 3 * j) * comb(3 * j, j) * comb(2 * j, j)
        term *= comb(n, 3 * j) * comb(n + j, j)
        total += -term if (n - j) % 2 else term
    return total


def az_cz(n: int) -> int:
    _check(n)
    total = 0
    q = 1  # C(2i,i)^2 C(4i,2i) = (4i)!/i!^4
    for i in range(n + 1):
        total += q * binomial(n + 3 * i, 4 * i) * _signed_pow3(3 * (n - i), True)
        q = q * (4 * i + 1) * (4 * i + 2) * (4 * i + 3) * (4 * i + 4) // ((i + 1) ** 4)
    return total


def az_sun4(n: int) -> int:
    _check(n)
    return sum(
        _quartic(i) * binomial(n + i, 4 * i) * _signed_pow3(n - 3 * i, True)
        for i in range(n // 3 + 1)
    )


def g_seq(n: int) -> int:
    """g_n = sum_k C(n,k)^2 C(2k,k)."""
    _check(n)
    total = 0
    c, central = 1, 1  # C(n,k), C(2k,k)
    for k in range(n + 1):
        total += c * c * central
        c = c * (n - k) // (k + 1)
        central = central * (4 * k + 2) // (k + 1)
    return total


def az_sun5(n: int, g: Sequence[int] | None = None) -> int:
    """gamma_n via (-9)^{n-i} C(2i,i) C(n+i,2i) g_i.

    ``g`` may supply precomputed g_0..g_n to avoid recomputing them.
    """
    _check(n)
    if g is None:
        g = [g_seq(i) for i in range(n + 1)]
    total = 0
    for i in range(n + 1):
        w = 9 ** (n - i) * comb(2 * i, i) * comb(n + i, 2 * i) * g[i]
        total += -w if (n - i) % 2 else w
    return total


FORMULAS: Dict[str, Callable[[int], int]] = {
    "def": az_def,
    "cz": az_cz,
    "sun4": az_sun4,
    "sun5": az_sun5,
}


@dataclass(frozen=True)
class SequenceTable:
    kind: Literal["gamma", "g"]
    max_index: int
    values: List[int]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def g_table(max_index: int) -> SequenceTable:
    return SequenceTable("g", max_index, [g_seq(n) for n in range(max_index + 1)])


def gamma_table(max_index: int, formula: str = "def") -> SequenceTable:
    if formula not in FORMULAS:
        raise ValueError(f"unknown formula {formula!r}; choose from {sorted(FORMULAS)}")
    if formula == "sun5":
        g = g_table(max_index).values
        values = [az_sun5(n, g) for n in range(max_index + 1)]
    else:
        f = FORMULAS[formula]
        values = [f(n) for n in range(max_index + 1)]
    return SequenceTable("gamma", max_index, values)
