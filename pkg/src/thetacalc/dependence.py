"""Linear-dependence criteria on integer grids.

The Casoratian determinant, windowed rank analysis of sample matrices with
the three-case classification (single relation / several relations / interval
decomposition), and extraction of constant-coefficient relations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .errors import InsufficientWindow, PreconditionViolated


def christoffel_matrix(seqs, m: int):
    """Square sample matrix with entry (i, j) = f_j(m + i)."""
    n = len(seqs)
    return [[f(m + i) for f in seqs] for i in range(n)]


def casoratian(seqs, m: int) -> Fraction:
    """Determinant of the n x n sample matrix at base point m, exact."""
    if not seqs:
        raise ValueError("need at least one sequence")
    return linalg.det(christoffel_matrix(seqs, m))


@dataclass(frozen=True)
class DependenceReport:
    """Outcome of a windowed rank analysis.

    window is a half-open (start, stop) range of base sample points; case is
    'a' for corank 1, 'b' for corank >= 2, 'none' for full column rank.
    Relations are canonical right-nullspace vectors, first nonzero entry 1.
    """
    window: Tuple[int, int]
    rank: int
    relations: Tuple[Tuple[Fraction, ...], ...]
    case: str


def christoffel_analyze(seqs, m0: int, p: int) -> DependenceReport:
    """Rank analysis of the stacked (p+n+1) x (n+1) sample matrix.

    seqs holds n+1 sequences defined on m0 .. m0+n+p.
    """
    if p < 0:
        raise InsufficientWindow("window extension p must be >= 0")
    ncols = len(seqs)
    n = ncols - 1
    rows = [[f(m0 + i) for f in seqs] for i in range(n + p + 1)]
    return _report_from_rows(rows, (m0, m0 + n + p + 1), ncols)


def _report_from_rows(rows, window, ncols) -> DependenceReport:
    rk = linalg.rank(rows)
    corank = ncols - rk
    if corank == 0:
        case = "none"
        rels = ()
    else:
        case = "a" if corank == 1 else "b"
        rels = tuple(tuple(v) for v in linalg.nullspace(rows, ncols))
    return DependenceReport(window=tuple(window), rank=rk, relations=rels, case=case)


def windowed_scan(seqs, sample_range, window_length: int) -> List[DependenceReport]:
    """Sliding-window reports over a range of sample points.

    Each window covers window_length consecutive samples; adjacent windows
    whose relation spaces coincide exactly are merged greedily left to right
    into half-open intervals.
    """
    if window_length < len(seqs):
        raise InsufficientWindow("window must hold at least one sample per sequence")
    points = list(sample_range)
    if not points:
        return []
    reports = []
    for start in points:
        stop = start + window_length
        rows = [[f(t) for f in seqs] for t in range(start, stop)]
        reports.append(_report_from_rows(rows, (start, stop), len(seqs)))
    merged: List[DependenceReport] = []
    for rep in reports:
        if merged and merged[-1].relations == rep.relations and merged[-1].case == rep.case:
            prev = merged[-1]
            merged[-1] = DependenceReport(window=(prev.window[0], rep.window[1]),
                                          rank=prev.rank,
                                          relations=prev.relations,
                                          case=prev.case)
        else:
            merged.append(rep)
    return merged


@dataclass(frozen=True)
class RelationResult:
    """Constant-coefficient relation found on a window, if any."""
    coeffs: Optional[Tuple[Fraction, ...]]
    window_limited: bool


def casoratian_zero_implies_relation_check(seqs, window) -> Optional[RelationResult]:
    """Try to realize a vanishing Casoratian as one constant relation.

    window is a range of sample points.  The Casoratian is required to vanish
    at every base point whose n-point block fits inside the window (raising
    PreconditionViolated otherwise; vacuous for windows shorter than n, which
    are flagged window_limited).  A relation valid across the whole window is
    the nullspace of the stacked sample matrix - equivalently the intersection
    of the nullspaces of consecutive square sample matrices; when that
    intersection is trivial only pointwise (non-constant-coefficient)
    relations exist and None is returned.
    """
    points = list(window)
    if not points:
        raise InsufficientWindow("empty window")
    n = len(seqs)
    for m in points:
        if m + n - 1 <= max(points):
            if casoratian(seqs, m) != 0:
                raise PreconditionViolated(
                    "casoratian nonzero at base point %d" % m)
    rows = [[f(t) for f in seqs] for t in points]
    basis = linalg.nullspace(rows, n)
    limited = len(points) < n
    if not basis:
        return None
    return RelationResult(coeffs=tuple(basis[0]), window_limited=limited)
