"""Generalized Reed-Solomon and generalized Cauchy codes, the projective
line with its fractional transformations, and GRS recognition.

A point of the projective line is either a field element index (int) or
the sentinel :data:`INF`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from . import linalg
from .code import LinearCode, dual, is_mds
from .gf import FieldElement, FieldSpec


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def as_point(z, F: FieldSpec):
    if z is INF or (isinstance(z, str) and z.lower() in ("inf", "∞")):
        return INF
    if isinstance(z, FieldElement):
        z = z.value
    z = int(z)
    if not 0 <= z < F.q:
        raise ValueError(f"{z} is not a point of P^1({F!r})")
    return z


def projective_points(F: FieldSpec) -> list:
    """P^1(F) in standard order: 0, 1, ..., q-1 (as indices), then inf."""
    return list(range(F.q)) + [INF]


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrsSpec:
    """GRS_k(a, b): evaluation points a on P^1, nonzero column multipliers b."""

    field: FieldSpec
    a: tuple
    b: tuple
    k: int

    def __post_init__(self):
        F = self.field
        a = tuple(as_point(z, F) for z in self.a)
        b = tuple(int(x.value if isinstance(x, FieldElement) else x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        n = len(a)
        if len(b) != n:
            raise ValueError("a and b have different lengths")
        if not 0 <= self.k <= n <= F.q + 1:
            raise ValueError(f"need 0 <= k <= n <= q+1, got k={self.k}, n={n}, q={F.q}")
        if len(set(a)) != n:
            raise ValueError("evaluation points are not distinct")
        if any(not 0 < x < F.q for x in b):
            raise ValueError("column multipliers must be nonzero field elements")

    @property
    def n(self) -> int:
        return len(self.a)

    def generator(self) -> np.ndarray:
        return grs_generator(self)

    def code(self) -> LinearCode:
        return LinearCode(self.field, grs_generator(self), self.n)


@dataclass(frozen=True)
class CauchySpec:
    """Generalized Cauchy code C_k(a, c) with generator (I_k | A(a, c))."""

    field: FieldSpec
    a: tuple
    c: tuple
    k: int

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "a", tuple(as_point(z, F) for z in self.a))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        n = len(self.a)
        if len(self.c) != n or not 0 <= self.k <= n <= F.q + 1:
            raise ValueError("invalid Cauchy parameters")
        if len(set(self.a)) != n:
            raise ValueError("evaluation points are not distinct")
        if any(not 0 < x < F.q for x in self.c):
            raise ValueError("Cauchy multipliers must be nonzero")

    @property
    def n(self) -> int:
        return len(self.a)

    def code(self) -> LinearCode:
        return LinearCode(self.field, cauchy_generator(self), self.n)


def _powers_column(F: FieldSpec, z, k: int) -> np.ndarray:
    """(1, z, ..., z^(k-1)) for finite z; (0, ..., 0, 1) at infinity."""
    col = np.zeros(k, dtype=np.int64)
    if k == 0:
        return col
    if z is INF:
        col[k - 1] = 1
        return col
    v = 1
    for i in range(k):
        col[i] = v
        v = int(F.mul(v, z))
    return col


def evaluation_matrix(F: FieldSpec, a: Sequence, k: int) -> np.ndarray:
    """k x n matrix of the monomials 1, X, ..., X^(k-1) at the points a."""
    n = len(a)
    M = np.zeros((k, n), dtype=np.int64)
    for j, z in enumerate(a):
        M[:, j] = _powers_column(F, z, k)
    return M


def grs_generator(spec: GrsSpec) -> np.ndarray:
    """Canonical generator: row i is b * a^i, i = 0..k-1."""
    F = spec.field
    V = evaluation_matrix(F, spec.a, spec.k)
    return F.mul(V, np.array(spec.b, dtype=np.int64)[None, :])


def grs_code(F: FieldSpec, a, b, k: int) -> LinearCode:
    return GrsSpec(F, tuple(a), tuple(b), k).code()


def bracket(F: FieldSpec, x, y) -> int:
    """[x, y] = x - y for finite points, [inf, y] = 1, [x, inf] = -1."""
    x, y = as_point(x, F), as_point(y, F)
    if x == y:
        raise ValueError("bracket of a point with itself")
    if x is INF:
        return 1
    if y is INF:
        return int(F.neg(1))
    return int(F.sub(x, y))


def cauchy_generator(spec: CauchySpec) -> np.ndarray:
    F, k, n = spec.field, spec.k, spec.n
    a, c = spec.a, spec.c
    G = np.zeros((k, n), dtype=np.int64)
    G[:, :k] = np.eye(k, dtype=np.int64)
    for i in range(k):
        for j in range(k, n):
            G[i, j] = F.div(c[j], F.mul(c[i], bracket(F, a[j], a[i])))
    return G


def _cauchy_products(F: FieldSpec, a, k: int) -> list[int]:
    n = len(a)
    out = []
    for i in range(n):
        prod = 1
        for t in range(k):
            if t != i:
                prod = int(F.mul(prod, bracket(F, a[i], a[t])))
        out.append(prod)
    return out


def grs_to_cauchy(spec: GrsSpec) -> CauchySpec:
    """c_i = b_i prod_{t<=k, t!=i} [a_i, a_t] (i <= k), b_i prod_{t<=k} [a_i, a_t] (i > k)."""
    F = spec.field
    prods = _cauchy_products(F, spec.a, spec.k)
    c = tuple(int(F.mul(b, p)) for b, p in zip(spec.b, prods))
    return CauchySpec(F, spec.a, c, spec.k)


def cauchy_to_grs(spec: CauchySpec) -> GrsSpec:
    F = spec.field
    prods = _cauchy_products(F, spec.a, spec.k)
    b = tuple(int(F.div(c, p)) for c, p in zip(spec.c, prods))
    return GrsSpec(F, spec.a, b, spec.k)


# ---------------------------------------------------------------------------
# fractional transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Moebius:
    """z -> (Az + B)/(Cz + D), canonicalised so the first nonzero entry is 1."""

    field: FieldSpec
    A: int
    B: int
    C: int
    D: int

    def __post_init__(self):
        F = self.field
        entries = [int(x) for x in (self.A, self.B, self.C, self.D)]
        det = F.sub(F.mul(entries[0], entries[3]), F.mul(entries[1], entries[2]))
        if det == 0:
            raise ValueError("singular transformation matrix")
        lead = next(x for x in entries if x)
        s = F.inv(lead)
        for name, x in zip("ABCD", entries):
            object.__setattr__(self, name, int(F.mul(x, s)))

    @classmethod
    def identity(cls, F: FieldSpec) -> "Moebius":
        return cls(F, 1, 0, 0, 1)

    def matrix(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.C, self.D]], dtype=np.int64)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        P = self.field.matmul(self.matrix(), other.matrix())
        return Moebius(self.field, *P.ravel())

    def inverse(self) -> "Moebius":
        F = self.field
        return Moebius(F, self.D, int(F.neg(self.B)), int(F.neg(self.C)), self.A)

    def __call__(self, z):
        return moebius_apply(self, z)


def _homogeneous(F: FieldSpec, z) -> tuple[int, int]:
    return (1, 0) if z is INF else (int(z), 1)


def _act(M: Moebius, z) -> tuple[int, int]:
    F = M.field
    u, v = _homogeneous(F, as_point(z, F))
    return (int(F.add(F.mul(M.A, u), F.mul(M.B, v))),
            int(F.add(F.mul(M.C, u), F.mul(M.D, v))))


def moebius_apply(M: Moebius, z):
    u, v = _act(M, z)
    if v == 0:
        return INF
    return int(M.field.div(u, v))


def theta(M: Moebius, z) -> int:
    """Scale factor of the action on polar coordinates: Cz + D when that is
    nonzero, else Az + B (for z = inf: C, else A)."""
    u, v = _act(M, z)
    return v if v != 0 else u


def _to_standard(F: FieldSpec, pts) -> np.ndarray:
    """Matrix N with N(inf) = p3, N(0) = p1, N(1) = p2 (columns homogeneous)."""
    u1 = np.array(_homogeneous(F, pts[0]), dtype=np.int64)
    u2 = np.array(_homogeneous(F, pts[1]), dtype=np.int64)
    u3 = np.array(_homogeneous(F, pts[2]), dtype=np.int64)
    sol = linalg.solve(F, np.stack([u3, u1], axis=1), u2)
    if sol is None:
        raise ValueError("points are not distinct")
    alpha, beta = sol
    return np.stack([F.mul(alpha, u3), F.mul(beta, u1)], axis=1)


def moebius_three_points(F: FieldSpec, src: Sequence, dst: Sequence) -> Moebius:
    """The unique transformation sending src[i] to dst[i], i = 0, 1, 2."""
    src = [as_point(z, F) for z in src]
    dst = [as_point(z, F) for z in dst]
    if len(set(src)) != 3 or len(set(dst)) != 3:
        raise ValueError("need two triples of distinct points")
    Ns = _to_standard(F, src)
    Nd = _to_standard(F, dst)
    det = F.sub(F.mul(Ns[0, 0], Ns[1, 1]), F.mul(Ns[0, 1], Ns[1, 0]))
    Ns_inv = np.array([[Ns[1, 1], F.neg(Ns[0, 1])], [F.neg(Ns[1, 0]), Ns[0, 0]]], dtype=np.int64)
    Ns_inv = F.mul(Ns_inv, F.inv(det))
    P = F.matmul(Nd, Ns_inv)
    return Moebius(F, *P.ravel())


def spec_transform(spec: GrsSpec, M: Moebius, lam=1) -> GrsSpec:
    """(phi(M, a_i), lam * theta(M, a_i)^(k-1) * b_i): generates the same code."""
    F = spec.field
    lam = int(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    c = tuple(moebius_apply(M, z) for z in spec.a)
    d = tuple(int(F.mul(lam, F.mul(F.pow(theta(M, z), spec.k - 1), b)))
              for z, b in zip(spec.a, spec.b))
    return GrsSpec(F, c, d, spec.k)


def normalize_spec(spec: GrsSpec, positions: Sequence[int] = (0, 1, 2)) -> GrsSpec:
    """Move the points at three positions (0-based) to (0, 1, inf) and scale
    b so that its entry at the first of them is 1."""
    F = spec.field
    M = moebius_three_points(F, [spec.a[i] for i in positions], [0, 1, INF])
    moved = spec_transform(spec, M, 1)
    lam = int(F.inv(moved.b[positions[0]]))
    return spec_transform(spec, M, lam)


def same_evaluation_sequence(specs: Sequence[GrsSpec], positions=(0, 1, 2)) -> bool:
    """Whether the specs share an evaluation-point sequence up to a fractional
    transformation (compared after normalising the same three positions)."""
    normalized = [normalize_spec(s, positions).a for s in specs]
    return all(a == normalized[0] for a in normalized[1:])


# ---------------------------------------------------------------------------
# duals, multipliers, recognition
# ---------------------------------------------------------------------------

def dual_spec(spec: GrsSpec) -> GrsSpec:
    """(a, b', n-k) with GRS_{n-k}(a, b') the dual of GRS_k(a, b).

    b' is found by solving the orthogonality conditions for the multiplier
    vector, then checked against every pair of basis rows.
    """
    F, n, k = spec.field, spec.n, spec.k
    if k in (0, n):
        return GrsSpec(F, spec.a, (1,) * n, n - k)
    G = grs_generator(spec)
    V = evaluation_matrix(F, spec.a, n - k)
    conds = F.mul(G[:, None, :], V[None, :, :]).reshape(-1, n)
    K = linalg.kernel(F, conds, ncols=n)
    if K.shape[0] != 1 or not K[0].all():
        raise ArithmeticError("dual multipliers are not determined; invalid GRS spec")
    out = GrsSpec(F, spec.a, tuple(K[0]), n - k)
    if F.matmul(G, grs_generator(out).T).any():
        raise ArithmeticError("computed dual multipliers fail orthogonality")
    return out


def fit_multipliers(C: LinearCode, a: Sequence, rng_seed: int = 0) -> GrsSpec | None:
    """A spec GRS_k(a, b) equal to C for the given points, or None.

    b * a^i in C for i < k is linear in b; any solution with all entries
    nonzero generates a k-dimensional subcode, hence C itself.
    """
    F, n, k = C.field, C.n, C.k
    a = tuple(as_point(z, F) for z in a)
    if len(a) != n or len(set(a)) != n or n > F.q + 1:
        raise ValueError("need n distinct points of the projective line")
    H = dual(C).gen
    V = evaluation_matrix(F, a, k)
    if H.shape[0] == 0:
        K = np.eye(n, dtype=np.int64)
    else:
        conds = F.mul(H[:, None, :], V[None, :, :]).reshape(-1, n)
        K = linalg.kernel(F, conds, ncols=n)
    if K.shape[0] == 0:
        return None
    candidates = list(K)
    if K.shape[0] > 1:
        candidates.append(F.sum(K, axis=0))
        rng = np.random.default_rng(rng_seed)
        for _ in range(64):
            candidates.append(F.matmul(rng.integers(0, F.q, K.shape[0]), K))
    for b in candidates:
        if b.all():
            spec = GrsSpec(F, a, tuple(b), k)
            if spec.code() == C:
                return spec
    return None


def recognize_grs(C: LinearCode) -> GrsSpec | None:
    """Recover (a, b) with GRS_k(a, b) = C, or None if C is not GRS.

    The result is normalised: a_1 = 0, a_2 = 1, a_{k+1} = inf and the Cauchy
    multiplier c_1 = 1.  Unknowns are solved from the systematic block
    p_ij = c_{k+j} / (c_i [a_{k+j}, a_i]) in this order: the column at
    infinity gives every c_i (i <= k+1), the ratios p_1j/p_2j give the
    remaining points a_{k+j}, and the column k+2 gives a_3..a_k.  Every entry
    of the block is then re-checked; any mismatch means C is not GRS.
    """
    F, n, k = C.field, C.n, C.k
    if not 2 <= k <= n - 2:
        raise ValueError(f"recognition needs 2 <= k <= n-2, got k={k}, n={n}")
    if not is_mds(C):
        raise ValueError("recognition is defined for MDS codes only")
    if n > F.q + 1:
        return None
    P = C.gen[:, k:]  # MDS: the RREF is systematic (I_k | P)
    a: list = [None] * n
    c = [0] * n
    a[0], a[1], a[k], c[0] = 0, 1, INF, 1
    c[k] = int(P[0, 0])
    for i in range(1, k):
        c[i] = int(F.div(c[k], P[i, 0]))
    for j in range(1, n - k):
        ratio = int(F.div(P[0, j], F.mul(P[1, j], c[1])))
        if ratio == 1:
            return None
        a[k + j] = int(F.inv(F.sub(1, ratio)))
        c[k + j] = int(F.mul(P[0, j], a[k + j]))
    for i in range(2, k):
        a[i] = int(F.sub(a[k + 1], F.div(c[k + 1], F.mul(c[i], P[i, 1]))))
    if len(set(a)) != n:
        return None
    cauchy = CauchySpec(F, tuple(a), tuple(c), k)
    if not np.array_equal(cauchy_generator(cauchy), C.gen):
        return None
    spec = cauchy_to_grs(cauchy)
    if spec.code() != C:
        raise ArithmeticError("Cauchy reconstruction disagrees with the GRS spec")
    return spec


def recognize_grs_bruteforce(C: LinearCode) -> GrsSpec | None:
    """Oracle: try every normalised point sequence (a_1, a_2, a_{k+1}) =
    (0, 1, inf) and fit multipliers by a linear solve.  Exponential; for
    tiny parameters only."""
    F, n, k = C.field, C.n, C.k
    if n > F.q + 1:
        return None
    rest = [z for z in range(2, F.q)]
    free_pos = [i for i in range(n) if i not in (0, 1, k)]
    for choice in permutations(rest, len(free_pos)):
        a = [None] * n
        a[0], a[1], a[k] = 0, 1, INF
        for i, z in zip(free_pos, choice):
            a[i] = z
        spec = fit_multipliers(C, a)
        if spec is not None:
            return spec
    return None


def trivial_grs(C: LinearCode) -> GrsSpec:
    """GRS description of an MDS code with k in {0, 1, n-1, n}."""
    F, n, k = C.field, C.n, C.k
    if k not in (0, 1, n - 1, n):
        raise ValueError(f"k={k} is not a trivial dimension for n={n}")
    if n > F.q + 1:
        raise ValueError(f"n={n} exceeds q+1={F.q + 1}; extend the field first")
    a = tuple(projective_points(F)[:n])
    if k in (0, n):
        return GrsSpec(F, a, (1,) * n, k)
    if k == 1:
        w = C.gen[0]
        if not w.all():
            raise ValueError("[n,1] code with a zero coordinate is not MDS")
        return GrsSpec(F, a, tuple(w), 1)
    w = dual(C).gen[0]
    if not w.all():
        raise ValueError("[n,n-1] code whose dual has a zero coordinate is not MDS")
    return dual_spec(GrsSpec(F, a, tuple(w), 1))


def descend_field(C: LinearCode, subfield: FieldSpec | None = None) -> GrsSpec | None:
    """For C over GF(q^m) spanned by vectors over GF(q): a GRS spec over GF(q)
    when C is GRS, else None."""
    F = C.field
    sub = F.base if subfield is None else subfield
    if sub is None or not F.is_extension_of(sub):
        raise ValueError(f"{C.field!r} has no proper subfield to descend to")
    if not F.in_subfield(C.gen, sub).all():
        raise ValueError("code has no basis over the subfield")
    spec = recognize_grs(C)
    if spec is None:
        return None
    finite = [z for z in spec.a if z is not INF]
    if not (F.in_subfield(finite, sub).all() and F.in_subfield(spec.b, sub).all()):
        raise ArithmeticError("normalised spec is not over the subfield")
    return GrsSpec(sub, spec.a, spec.b, spec.k)


def random_grs_spec(F: FieldSpec, n: int, k: int, rng: np.random.Generator,
                    allow_inf: bool = True) -> GrsSpec:
    pts = projective_points(F) if allow_inf else list(range(F.q))
    if n > len(pts):
        raise ValueError(f"n={n} exceeds the number of available points {len(pts)}")
    idx = rng.permutation(len(pts))[:n]
    a = tuple(pts[i] for i in idx)
    b = tuple(int(x) for x in rng.integers(1, F.q, n))
    return GrsSpec(F, a, b, k)


def random_moebius(F: FieldSpec, rng: np.random.Generator) -> Moebius:
    while True:
        A, B, C, D = (int(x) for x in rng.integers(0, F.q, 4))
        if F.sub(F.mul(A, D), F.mul(B, C)) != 0:
            return Moebius(F, A, B, C, D)
