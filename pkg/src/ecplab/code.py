"""Linear codes over a FieldSpec and the generic operations on them.

Coordinates are 1-based wherever they cross the public surface (support
sets, error messages).  Puncturing and shortening *at* J keep the
complement of J::

    puncture(C, J) = { c restricted to the complement of J : c in C }
    shorten(C, J)  = { c restricted to the complement of J : c in C, c_J = 0 }

The zero code has minimum distance n + 1 by convention, so that
``is_mds`` is total.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable

import numpy as np

from . import linalg
from .gf import FieldSpec, field_extend

DEFAULT_BUDGET = 1 << 22


class DistanceBudgetExceeded(RuntimeError):
    pass


class LinearCode:
    """A k-dimensional subspace of F^n, stored by its RREF generator matrix."""

    def __init__(self, field: FieldSpec, rows, n: int | None = None):
        M = linalg.as_matrix(rows, n)
        if n is None:
            n = M.shape[1]
        if M.size and (M.min() < 0 or M.max() >= field.q):
            raise ValueError(f"matrix entries outside {field}")
        R, piv = linalg.rref(field, M)
        gen = R[: len(piv)].copy()
        gen.flags.writeable = False
        self.field = field
        self.n = int(n)
        self.gen = gen
        self.pivots = tuple(piv)
        self._dual = None
        self._distance = None

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "LinearCode":
        return cls(field, np.zeros((0, n), dtype=np.int64), n)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "LinearCode":
        return cls(field, np.eye(n, dtype=np.int64), n)

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def parity_check(self) -> np.ndarray:
        return dual(self).gen

    def encode(self, message) -> np.ndarray:
        message = np.asarray(message, dtype=np.int64)
        if self.k == 0:
            return np.zeros(message.shape[:-1] + (self.n,), dtype=np.int64)
        return self.field.matmul(message, self.gen)

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        H = self.parity_check
        if H.shape[0] == 0:
            return True
        return not self.field.matmul(H, v).any()

    def random_codeword(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(rng.integers(0, self.field.q, self.k))

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and np.array_equal(self.gen, other.gen))

    def __hash__(self):
        return hash((self.field, self.n, self.gen.tobytes()))

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over {self.field!r})"


def _check_compatible(A: LinearCode, B: LinearCode):
    if A.field != B.field:
        raise ValueError(f"field mismatch: {A.field!r} vs {B.field!r}")
    if A.n != B.n:
        raise ValueError(f"length mismatch: {A.n} vs {B.n}")


def _check_support(n: int, J: Iterable[int]) -> list[int]:
    J = sorted(set(int(j) for j in J))
    for j in J:
        if not 1 <= j <= n:
            raise ValueError(f"coordinate {j} out of range 1..{n}")
    return J


def weight(v) -> int:
    return int(np.count_nonzero(v))


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def dual(C: LinearCode) -> LinearCode:
    if C._dual is None:
        D = LinearCode(C.field, linalg.kernel(C.field, C.gen, ncols=C.n), C.n)
        D._dual = C
        C._dual = D
    return C._dual


def puncture(C: LinearCode, J: Iterable[int]) -> LinearCode:
    """Restrict every codeword to the complement of J (1-based)."""
    J = _check_support(C.n, J)
    keep = [i for i in range(C.n) if i + 1 not in J]
    return LinearCode(C.field, C.gen[:, keep], len(keep))


def shorten(C: LinearCode, J: Iterable[int]) -> LinearCode:
    """Codewords vanishing on J, restricted to the complement of J (1-based)."""
    J = _check_support(C.n, J)
    keep = [i for i in range(C.n) if i + 1 not in J]
    cols = [j - 1 for j in J]
    if not cols:
        return LinearCode(C.field, C.gen, C.n)
    msgs = linalg.left_kernel(C.field, C.gen[:, cols])
    if msgs.shape[0] == 0:
        return LinearCode.zero(C.field, len(keep))
    words = C.field.matmul(msgs, C.gen)
    return LinearCode(C.field, words[:, keep], len(keep))


def star(x, y, field: FieldSpec) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape[-1] != y.shape[-1]:
        raise ValueError("star product of vectors of different lengths")
    return field.mul(x, y)


def schur_product(A: LinearCode, B: LinearCode) -> LinearCode:
    """Span of all coordinatewise products a*b with a in A, b in B."""
    _check_compatible(A, B)
    if A.k == 0 or B.k == 0:
        return LinearCode.zero(A.field, A.n)
    prods = A.field.mul(A.gen[:, None, :], B.gen[None, :, :]).reshape(-1, A.n)
    return LinearCode(A.field, prods, A.n)


def scale(x, C: LinearCode) -> LinearCode:
    """The code x*C for a vector x (entries may be zero)."""
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (C.n,):
        raise ValueError("scaling vector has the wrong length")
    return LinearCode(C.field, C.field.mul(C.gen, x[None, :]), C.n)


def stabilizer(C: LinearCode) -> LinearCode:
    """St(C) = {x : x*C is contained in C}.

    x*g lies in C for a basis row g iff h.(x*g) = 0 for every parity check h,
    i.e. x is orthogonal to every h*g.
    """
    F = C.field
    H = dual(C).gen
    if H.shape[0] == 0 or C.k == 0:
        return LinearCode.full(F, C.n)
    conds = F.mul(H[:, None, :], C.gen[None, :, :]).reshape(-1, C.n)
    return LinearCode(F, linalg.kernel(F, conds, ncols=C.n), C.n)


def lift(C: LinearCode, field: FieldSpec) -> LinearCode:
    """View C over an extension field of its own (same generator matrix)."""
    if field == C.field:
        return C
    if not field.is_extension_of(C.field):
        raise ValueError(f"{field!r} does not extend {C.field!r}")
    return LinearCode(field, C.gen, C.n)


def extend_scalars(C: LinearCode, m: int) -> LinearCode:
    """C tensor GF(q^m): same generator matrix over the degree-m extension."""
    if m < 1:
        raise ValueError("extension degree must be positive")
    if m == 1:
        return C
    return lift(C, field_extend(C.field, m))


def contains(C: LinearCode, D: LinearCode) -> bool:
    """Whether D is a subcode of C."""
    _check_compatible(C, D)
    if D.k == 0:
        return True
    H = dual(C).gen
    if H.shape[0] == 0:
        return True
    return not C.field.matmul(D.gen, H.T).any()


def equals(C: LinearCode, D: LinearCode) -> bool:
    _check_compatible(C, D)
    return C == D


def is_nondegenerate(C: LinearCode) -> bool:
    """No coordinate vanishes on all of C (equivalently d(C^perp) > 1)."""
    if C.k == 0:
        return False
    return bool((C.gen != 0).any(axis=0).all())


def is_orthogonal(A: LinearCode, B: LinearCode) -> bool:
    _check_compatible(A, B)
    if A.k == 0 or B.k == 0:
        return True
    return not A.field.matmul(A.gen, B.gen.T).any()


# ---------------------------------------------------------------------------
# minimum distance
# ---------------------------------------------------------------------------

def projective_message_count(q: int, k: int) -> int:
    """Number of messages whose first nonzero symbol is 1: (q^k - 1)/(q - 1)."""
    return (q ** k - 1) // (q - 1)


def min_weight_in_range(C: LinearCode, start: int, stop: int, chunk: int = 1 << 16) -> int:
    """Minimum weight over the codewords with projective message index in
    [start, stop).  Returns n + 1 for an empty range.

    Message indices run over blocks: block i holds the messages
    (0, ..., 0, 1, m_{i+1}, ..., m_{k-1}), in base-q order of the tail.
    Splitting [0, total) into ranges and taking the minimum gives the same
    result as a single pass.
    """
    F, G, k, q = C.field, C.gen, C.k, C.field.q
    best = C.n + 1
    offset = 0
    for i in range(k):
        size = q ** (k - 1 - i)
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            tail_rows = G[i + 1:]
            for c0 in range(lo - offset, hi - offset, chunk):
                idx = np.arange(c0, min(c0 + chunk, hi - offset), dtype=np.int64)
                words = np.broadcast_to(G[i], (idx.size, C.n)).copy()
                if tail_rows.shape[0]:
                    digits = np.empty((idx.size, tail_rows.shape[0]), dtype=np.int64)
                    rem = idx.copy()
                    for j in range(tail_rows.shape[0] - 1, -1, -1):
                        rem, digits[:, j] = np.divmod(rem, q)
                    words = F.add(words, F.matmul(digits, tail_rows))
                w = int(np.count_nonzero(words, axis=1).min())
                best = min(best, w)
                if best == 1:
                    return best
        offset += size
        if offset >= stop:
            break
    return best


def _enumeration_cost(C: LinearCode) -> int:
    return projective_message_count(C.field.q, C.k)


def _column_cost(C: LinearCode) -> int:
    r = C.n - C.k
    if r == 0:
        return 1
    probes = math.ceil(math.log2(r + 1)) + 1
    return probes * max(math.comb(C.n, w) for w in range(1, r + 1))


def _distance_by_enumeration(C: LinearCode) -> int:
    return min_weight_in_range(C, 0, _enumeration_cost(C))


def _distance_by_columns(C: LinearCode) -> int:
    """d(C) = 1 + the largest w such that every w columns of a parity-check
    matrix are independent.  Independence of all w-subsets is monotone in w,
    so binary search suffices."""
    H = dual(C).gen
    r = H.shape[0]
    lo, hi = 0, r
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if linalg.all_subsets_independent(C.field, H, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo + 1


def min_distance(C: LinearCode, budget: int | None = None, method: str = "auto") -> int:
    """Exact minimum distance.

    ``method`` is ``"enumerate"`` (all projective messages), ``"columns"``
    (smallest dependent column set of a parity-check matrix) or ``"auto"``
    (the cheaper of the two).  Both are exhaustive; the chosen one must fit
    within ``budget`` or DistanceBudgetExceeded is raised.
    """
    if C.k == 0:
        return C.n + 1
    budget = DEFAULT_BUDGET if budget is None else budget
    costs = {"enumerate": _enumeration_cost(C), "columns": _column_cost(C)}
    if method == "auto":
        if C._distance is not None:
            return C._distance
        method = min(costs, key=costs.get)
    if method not in costs:
        raise ValueError(f"unknown distance method {method!r}")
    if costs[method] > budget:
        raise DistanceBudgetExceeded(
            f"{method} needs {costs[method]} evaluations for {C!r}; budget is {budget}")
    d = _distance_by_enumeration(C) if method == "enumerate" else _distance_by_columns(C)
    C._distance = d
    return d


def is_mds(C: LinearCode, budget: int | None = None, method: str = "auto") -> bool:
    """d = n - k + 1.  ``method="minors"`` checks that every k columns of the
    generator matrix are independent; ``"distance"`` computes d exactly."""
    n, k = C.n, C.k
    if k in (0, n):
        return True
    budget = DEFAULT_BUDGET if budget is None else budget
    if method == "auto":
        method = "minors" if math.comb(n, k) <= _enumeration_cost(C) else "distance"
    if method == "minors":
        if math.comb(n, k) > budget:
            raise DistanceBudgetExceeded(f"{math.comb(n, k)} minors exceed budget {budget}")
        return linalg.all_subsets_independent(C.field, C.gen, k)
    if method == "distance":
        return min_distance(C, budget) == n - k + 1
    raise ValueError(f"unknown MDS method {method!r}")


def systematic_block(C: LinearCode) -> np.ndarray | None:
    """The block P of a generator (I_k | P), or None if the first k
    coordinates are not an information set."""
    if C.pivots != tuple(range(C.k)):
        return None
    return C.gen[:, C.k:]


def all_square_minors_nonsingular(F: FieldSpec, P) -> bool:
    """Every square submatrix of P is nonsingular (exhaustive)."""
    P = linalg.as_matrix(P)
    r, c = P.shape
    for s in range(1, min(r, c) + 1):
        for rows in combinations(range(r), s):
            sub = P[list(rows)]
            if not linalg.all_subsets_independent(F, sub, s):
                return False
    return True


# ---------------------------------------------------------------------------
# random generation (seeded by the caller)
# ---------------------------------------------------------------------------

def random_code(F: FieldSpec, n: int, k: int, rng: np.random.Generator) -> LinearCode:
    while True:
        C = LinearCode(F, rng.integers(0, F.q, (k, n)), n)
        if C.k == k:
            return C


def random_mds_code(F: FieldSpec, n: int, k: int, rng: np.random.Generator,
                    tries: int = 10000) -> LinearCode:
    """Rejection sampling from random [n, k] codes until one is MDS."""
    for _ in range(tries):
        C = random_code(F, n, k, rng)
        if is_mds(C):
            return C
    raise RuntimeError(f"no [{n},{k}] MDS code found over {F!r} in {tries} tries")
