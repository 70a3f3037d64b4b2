"""Reduction of k-body boolean polynomials to equivalent 2-body form.

Each round picks a variable pair, replaces it with a fresh ancilla variable
in every monomial that contains both members (the bare pair monomial
included), and adds the penalty

    delta * (q_i q_j - 2 q_i q_a - 2 q_j q_a + 3 q_a)

which vanishes exactly when q_a = q_i q_j and costs at least delta
otherwise.  A single global delta = 2 * abs_coeff_sum(original) is used for
all rounds, so minimising the reduced polynomial over the ancillas recovers
the original value at every assignment of the original variables.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .polynom import Domain, Monomial, MultilinearPoly


@dataclass(frozen=True)
class AncillaMap:
    """Ancilla bookkeeping for one quadratization: (ancilla, pair) per round."""

    entries: tuple[tuple[int, tuple[int, int]], ...] = ()
    delta: int = 0

    def __post_init__(self):
        seen_pairs = set()
        for a, (i, j) in self.entries:
            if i >= j:
                raise ValueError(f"pair {(i, j)} must be ordered i < j")
            if (i, j) in seen_pairs:
                raise ValueError(f"pair {(i, j)} substituted twice")
            seen_pairs.add((i, j))

    @property
    def ancillas(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.entries)

    def pair_of(self, ancilla: int) -> tuple[int, int]:
        for a, pair in self.entries:
            if a == ancilla:
                return pair
        raise KeyError(ancilla)


def compute_delta(poly: MultilinearPoly) -> int:
    """Penalty weight: twice the absolute coefficient sum of the input."""
    if poly.domain is not Domain.BOOLEAN:
        raise ValueError("compute_delta requires a boolean polynomial")
    return 2 * poly.abs_coeff_sum()


def select_pair(poly: MultilinearPoly) -> tuple[int, int]:
    """Pair occurring in the most degree->=3 monomials; lexicographic tie-break."""
    if poly.degree() < 3:
        raise ValueError("select_pair requires degree >= 3")
    counts: Counter[tuple[int, int]] = Counter()
    for m in poly.terms:
        if len(m) >= 3:
            counts.update(itertools.combinations(m, 2))
    best = max(counts.values())
    return min(pair for pair, n in counts.items() if n == best)


def substitute_pair(
    poly: MultilinearPoly, i: int, j: int, ancilla: int, delta: int
) -> MultilinearPoly:
    """Replace {i,j} by {ancilla} wherever both occur, then add the penalty."""
    if poly.domain is not Domain.BOOLEAN:
        raise ValueError("substitute_pair requires a boolean polynomial")
    if i == j:
        raise ValueError("pair members must be distinct")
    if i > j:
        i, j = j, i
    if ancilla in poly.variables() or ancilla in (i, j):
        raise ValueError(f"ancilla {ancilla} already in use")
    if delta <= 0:
        raise ValueError("delta must be positive")
    out: dict[Monomial, int] = {}
    for m, c in poly.terms.items():
        if i in m and j in m:
            m = tuple(sorted((set(m) - {i, j}) | {ancilla}))
        out[m] = out.get(m, 0) + c
    for m, c in (
        ((i, j), delta),
        (tuple(sorted((i, ancilla))), -2 * delta),
        (tuple(sorted((j, ancilla))), -2 * delta),
        ((ancilla,), 3 * delta),
    ):
        out[m] = out.get(m, 0) + c
    return MultilinearPoly(Domain.BOOLEAN, out)


def quadratize(poly: MultilinearPoly) -> tuple[MultilinearPoly, AncillaMap]:
    """Reduce to degree <= 2 by repeated pair substitution with one global delta.

    Ancilla indices are fresh: allocation starts one past the largest input
    index and follows substitution order.
    """
    if poly.domain is not Domain.BOOLEAN:
        raise ValueError("quadratize requires a boolean polynomial")
    if poly.is_zero():
        raise ValueError("cannot quadratize the zero polynomial")
    delta = compute_delta(poly)
    next_index = poly.nvars
    entries: list[tuple[int, tuple[int, int]]] = []
    current = poly
    while current.degree() > 2:
        pair = select_pair(current)
        current = substitute_pair(current, pair[0], pair[1], next_index, delta)
        entries.append((next_index, pair))
        next_index += 1
    return current, AncillaMap(entries=tuple(entries), delta=delta)
