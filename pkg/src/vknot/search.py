"""Exhaustive virtualization scans over standard torus braids.

``scan_torus_virtualizations`` replaces arbitrary crossing subsets of the
all-positive torus braid by virtual crossings and computes both index
polynomials for every subset whose closure stays a knot.  A nonzero u on
any record certifies a virtual torus knot that crossing changes alone can
never undo.  ``table_vt2`` tabulates the lower-bound half-sums for the
doubly-virtualized family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .braid import BraidWord, classical, component_count, make_vt, virtual
from .gauss import gauss_from_closure
from .invariants import IndexPolynomial, p_invariant, u_invariant

# Without an explicit limit, refuse scans beyond this many crossing positions
# (2^16 subsets enumerate in seconds; anything larger is an explicit opt-in).
DEFAULT_SCAN_BITS = 16

# Absolute-coefficient pattern highlighted in scan summaries: +-(t^2 - 2t).
REPORTED_U_PATTERN = {2: 1, 1: 2}


def torus_word(p: int, q: int) -> BraidWord:
    """(s_1 ... s_{p-1})^q on p strands, all crossings positive."""
    if p < 2 or q < 1:
        raise ValueError(f"need p >= 2 and q >= 1, got ({p},{q})")
    letters = []
    for _ in range(q):
        letters.extend(classical(index) for index in range(1, p))
    return BraidWord(p, tuple(letters))


def virtualize_subset(p: int, q: int, subset: Iterable[int]) -> BraidWord:
    """Standard torus braid with the letters at ``subset`` positions virtual.

    Positions index the (p-1)q classical letters in word order from 0.
    """
    if p < 2 or q < 2:
        raise ValueError(f"need p >= 2 and q >= 2, got ({p},{q})")
    total = (p - 1) * q
    chosen: set[int] = set()
    for position in subset:
        if not 0 <= position < total:
            raise ValueError(
                f"position {position} out of range for {total} crossings")
        chosen.add(position)
    letters = []
    position = 0
    for _ in range(q):
        for index in range(1, p):
            letters.append(virtual(index) if position in chosen
                           else classical(index))
            position += 1
    return BraidWord(p, tuple(letters))


@dataclass(frozen=True)
class ScanRecord:
    """One virtualization subset; invariants are None for link closures."""

    subset: tuple[int, ...]
    components: int
    u: IndexPolynomial | None
    P: IndexPolynomial | None

    @property
    def is_knot(self) -> bool:
        return self.components == 1

    @property
    def has_nonzero_u(self) -> bool:
        return self.u is not None and not self.u.is_zero

    def to_json_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "components": self.components,
            "u": None if self.u is None else self.u.to_json_dict(),
            "P": None if self.P is None else self.P.to_json_dict(),
        }


def scan_torus_virtualizations(p: int, q: int,
                               limit: int | None = None) -> Iterator[ScanRecord]:
    """Enumerate virtualization subsets by size, then lexicographically.

    Emits one record per subset; u and P are computed only when the closure
    is a knot.  ``limit`` truncates the enumeration after that many subsets
    and is required once (p-1)q exceeds DEFAULT_SCAN_BITS.
    """
    if p < 2 or q < 2:
        raise ValueError(f"need p >= 2 and q >= 2, got ({p},{q})")
    total = (p - 1) * q
    if limit is None and total > DEFAULT_SCAN_BITS:
        raise ValueError(
            f"{total} crossing positions means 2^{total} subsets; "
            "pass an explicit limit to opt in")
    remaining = limit if limit is not None else 1 << total
    for size in range(total + 1):
        for subset in itertools.combinations(range(total), size):
            if remaining <= 0:
                return
            remaining -= 1
            word = virtualize_subset(p, q, subset)
            components = component_count(word)
            if components == 1:
                diagram = gauss_from_closure(word)
                yield ScanRecord(subset, 1, u_invariant(diagram),
                                 p_invariant(diagram))
            else:
                yield ScanRecord(subset, components, None, None)


@dataclass(frozen=True)
class ScanSummary:
    subsets: int
    knots: int
    nonzero_u: int
    pattern_attained: bool
    first_nonzero_u: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "subsets": self.subsets,
            "knots": self.knots,
            "nonzero_u": self.nonzero_u,
            "pattern_attained": self.pattern_attained,
            "first_nonzero_u": (None if self.first_nonzero_u is None
                                else list(self.first_nonzero_u)),
        }


def summarize_scan(records: Iterable[ScanRecord]) -> ScanSummary:
    """Counts plus whether any knot's u matches REPORTED_U_PATTERN in
    absolute coefficients."""
    subsets = knots = nonzero = 0
    first: tuple[int, ...] | None = None
    attained = False
    for record in records:
        subsets += 1
        if not record.is_knot:
            continue
        knots += 1
        if record.has_nonzero_u:
            nonzero += 1
            if first is None:
                first = record.subset
            if record.u is not None and record.u.abs_coefficients() == REPORTED_U_PATTERN:
                attained = True
    return ScanSummary(subsets, knots, nonzero, attained, first)


@dataclass(frozen=True)
class TableRow:
    p: int
    q: int
    half_sum: int | float


def default_table_pairs(max_p: int) -> list[tuple[int, int]]:
    """Coprime (p, q) with 2 <= q < p <= max_p, ordered by p then q."""
    return [(p, q) for p in range(3, max_p + 1) for q in range(2, p)
            if gcd(p, q) == 1]


def table_vt2(pairs: Iterable[tuple[int, int]]) -> list[TableRow]:
    """Half the absolute coefficient sum of P for each doubly-virtualized
    torus knot."""
    rows = []
    for p, q in pairs:
        if q < 2:
            raise ValueError(f"need q >= 2, got ({p},{q})")
        common = gcd(p, q)
        if common != 1:
            raise ValueError(
                f"({p},{q}) closes to a {common}-component link, not a knot")
        total = p_invariant(gauss_from_closure(make_vt(p, q, 2)))
        s = total.abs_coefficient_sum()
        rows.append(TableRow(p, q, s // 2 if s % 2 == 0 else s / 2))
    return rows


def table_to_csv(rows: Iterable[TableRow]) -> str:
    lines = ["p,q,half_sum"]
    lines.extend(f"{row.p},{row.q},{row.half_sum}" for row in rows)
    return "\n".join(lines) + "\n"
