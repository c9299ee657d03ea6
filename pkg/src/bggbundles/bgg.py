"""Linear complexes of twisted free sheaves attached to graded modules.

The complex has terms P_i (x) O(i) and a differential whose entries are
linear forms; slice j of the i-th differential is the action matrix of e_j.
Evaluating the slices at a point of projective space gives the fiber of the
differential, and exactness of the fiber sequences at every point below the
top degree is what makes the cokernel sheaf a vector bundle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import modp
from .emod import GradedEModule, chi
from .fields import PrimeField
from .matrix import DenseMatrix, ShapeError


class PointBudgetError(ValueError):
    """Raised when an exhaustive scan would exceed the configured budget."""


@dataclass(frozen=True)
class MatrixOfLinearForms:
    """A matrix whose entries are linear forms, stored as coefficient slices."""

    slices: tuple  # n+1 DenseMatrix slices, slice j multiplies x_j

    @property
    def nrows(self):
        return self.slices[0].nrows

    @property
    def ncols(self):
        return self.slices[0].ncols

    @property
    def nvars(self):
        return len(self.slices)

    @property
    def field(self):
        return self.slices[0].field

    def __post_init__(self):
        shapes = {s.shape for s in self.slices}
        if len(shapes) != 1:
            raise ShapeError(f"slices with mixed shapes {shapes}")
        if len({s.field for s in self.slices}) != 1:
            raise ShapeError("slices over mixed fields")


@dataclass(frozen=True)
class LinearComplex:
    """Terms (twist i, rank dim P_i) for i = 0..c and linear-form differentials."""

    n: int
    terms: tuple  # tuple of (twist, rank)
    diffs: tuple  # tuple of MatrixOfLinearForms, diffs[i] : term i -> term i+1

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def field(self):
        return self.diffs[0].field if self.diffs else None

    def validate(self):
        c = self.length
        if len(self.diffs) != c:
            raise ShapeError("one differential per consecutive term pair")
        for i, d in enumerate(self.diffs):
            if d.ncols != self.terms[i][1] or d.nrows != self.terms[i + 1][1]:
                raise ShapeError(f"differential {i} has shape ({d.nrows}, {d.ncols})")
        # Composite is zero as a matrix of quadratic forms: the symmetrized
        # slice products must vanish.
        for i in range(c - 1):
            a, b = self.diffs[i], self.diffs[i + 1]
            for j in range(a.nvars):
                for k in range(j, a.nvars):
                    comp = b.slices[j] @ a.slices[k] + b.slices[k] @ a.slices[j]
                    if not comp.is_zero():
                        raise ShapeError(
                            f"composite of differentials {i},{i + 1} is nonzero "
                            f"on x_{j} x_{k}")
        return self


@dataclass(frozen=True)
class FaithfulnessReport:
    mode: str
    field_desc: str
    points_checked: int
    failures: tuple  # (enumeration index, point tuple, degree)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def bgg_complex(P: GradedEModule) -> LinearComplex:
    """The sheafified linear complex of a graded module."""
    terms = tuple((i, d) for i, d in enumerate(P.piece_dims))
    diffs = tuple(MatrixOfLinearForms(tuple(P.actions[i][j] for j in range(P.n + 1)))
                  for i in range(P.top_degree))
    return LinearComplex(P.n, terms, diffs)


def evaluate_fiber(D: MatrixOfLinearForms, v) -> DenseMatrix:
    """The fiber matrix sum_j v_j * slice_j at a (nonzero) point."""
    f = D.field
    coords = [f(x) for x in v]
    if len(coords) != D.nvars:
        raise ShapeError(f"point has {len(coords)} coordinates, expected {D.nvars}")
    if all(f.is_zero(x) for x in coords):
        raise ValueError("the zero vector is not a projective point")
    out = DenseMatrix.zeros(f, D.nrows, D.ncols)
    for c, s in zip(coords, D.slices):
        if not f.is_zero(c):
            out = out + s.scale(c)
    return out


def exact_at_point(C: LinearComplex, v) -> bool:
    """Exactness of the fiber sequence at every degree below the top.

    Checked through rank(in) + rank(out) = dim term_i with the convention
    that the incoming map at degree 0 is zero; this simultaneously certifies
    constant corank at the top, so the cokernel is locally free at the point.
    """
    c = C.length
    prev_rank = 0
    for i in range(c):
        r = evaluate_fiber(C.diffs[i], v).rank()
        if prev_rank + r != C.terms[i][1]:
            return False
        prev_rank = r
    return True


def projective_point_count(q: int, n: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def _normalized_point_chunks(q: int, n: int, chunk: int):
    """Canonical representatives of P^n(F_q), first nonzero coordinate 1.

    Enumeration is lexicographic within each leading-position block; yielded
    as int64 arrays of shape (k, n+1).
    """
    for lead in range(n + 1):
        free = n - lead
        total = q ** free
        start = 0
        while start < total:
            cnt = min(chunk, total - start)
            idx = np.arange(start, start + cnt, dtype=np.int64)
            pts = np.zeros((cnt, n + 1), dtype=np.int64)
            pts[:, lead] = 1
            for pos in range(free):
                power = q ** (free - 1 - pos)
                pts[:, lead + 1 + pos] = (idx // power) % q
            yield pts
            start += cnt


def _scan_chunk(C: LinearComplex, slices_np, dims, pts, p, inv_table, base_index,
                failures):
    """Check exactness on a chunk of points; append failures in order."""
    c = C.length
    ranks = []
    for i in range(c):
        fib = np.tensordot(pts, slices_np[i], axes=([1], [0])) % p
        ranks.append(modp.batch_rank(fib, p, inv_table))
    k = pts.shape[0]
    ok = np.ones(k, dtype=bool)
    first_bad = np.full(k, -1, dtype=np.int64)
    prev = np.zeros(k, dtype=np.int64)
    for i in range(c):
        good = prev + ranks[i] == dims[i]
        newly_bad = ok & ~good
        first_bad[newly_bad] = i
        ok &= good
        prev = ranks[i]
    if not ok.all():
        for t in np.nonzero(~ok)[0]:
            failures.append((base_index + int(t), tuple(int(x) for x in pts[t]),
                             int(first_bad[t])))


def faithfulness_scan(C: LinearComplex, mode: str = "exhaustive", *,
                      samples: int = 10000, seed: int = 0,
                      point_budget: int = 2_000_000,
                      chunk: int = 1 << 16) -> FaithfulnessReport:
    """Scan projective points for failures of fiber exactness.

    ``exhaustive`` iterates every normalized representative of P^n(F_q) (the
    scalar domain must be a prime field whose point count fits the budget);
    ``random`` samples distinct seeded points.  The failure list is ordered
    by enumeration index regardless of chunking.
    """
    f = C.field
    n = C.n
    dims = [r for _, r in C.terms]
    if C.length == 0:
        count = (projective_point_count(f.p, n)
                 if (mode == "exhaustive" and isinstance(f, PrimeField)) else samples)
        return FaithfulnessReport(mode, repr(f), count, (), seed)
    if mode == "exhaustive":
        if not isinstance(f, PrimeField):
            raise ValueError("exhaustive scans need a prime field")
        q = f.p
        total = projective_point_count(q, n)
        if total > point_budget:
            raise PointBudgetError(f"{total} points exceed the budget {point_budget}")
        slices_np = [np.stack([s.to_numpy() for s in d.slices]) for d in C.diffs]
        inv_table = modp.inverse_table(q)
        failures = []
        base = 0
        for pts in _normalized_point_chunks(q, n, chunk):
            _scan_chunk(C, slices_np, dims, pts, q, inv_table, base, failures)
            base += pts.shape[0]
        assert base == total
        return FaithfulnessReport("exhaustive", repr(f), total, tuple(failures))
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(f, PrimeField):
        q = f.p
        rng = np.random.default_rng(seed)
        seen = set()
        slices_np = [np.stack([s.to_numpy() for s in d.slices]) for d in C.diffs]
        inv_table = modp.inverse_table(q)
        failures = []
        collected = 0
        guard = 0
        while collected < samples:
            guard += 1
            if guard > 1000:
                raise RuntimeError("random point sampling stalled")
            want = samples - collected
            raw = rng.integers(0, q, size=(want * 2, n + 1), dtype=np.int64)
            raw = raw[(raw != 0).any(axis=1)]
            # Normalize so distinctness means distinct projective points.
            lead = (raw != 0).argmax(axis=1)
            lv = raw[np.arange(raw.shape[0]), lead]
            raw = raw * inv_table[lv][:, None] % q
            batch = []
            for row in raw:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    batch.append(row)
                    if len(batch) + collected >= samples:
                        break
            if batch:
                pts = np.stack(batch)
                _scan_chunk(C, slices_np, dims, pts, q, inv_table, collected, failures)
                collected += pts.shape[0]
        return FaithfulnessReport("random", repr(f), samples, tuple(failures), seed)
    # Rational fallback: per-point exact check on random integer vectors.
    rng = random.Random(seed)
    seen = set()
    failures = []
    idx = 0
    while idx < samples:
        v = tuple(rng.randint(-9, 9) for _ in range(n + 1))
        if all(x == 0 for x in v) or v in seen:
            continue
        seen.add(v)
        if not exact_at_point(C, v):
            failures.append((idx, v, _first_failure_degree(C, v)))
        idx += 1
    return FaithfulnessReport("random", repr(f), samples, tuple(failures), seed)


def _first_failure_degree(C: LinearComplex, v) -> int:
    prev = 0
    for i in range(C.length):
        r = evaluate_fiber(C.diffs[i], v).rank()
        if prev + r != C.terms[i][1]:
            return i
        prev = r
    return -1


def bundle_rank(P: GradedEModule) -> int:
    """Rank of the cokernel bundle: the top alternating sum chi_c."""
    return chi(P)[-1]
