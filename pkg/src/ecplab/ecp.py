"""Error-correcting pairs: verification, construction for GRS codes,
decoding, bounded search, and uniqueness up to coordinate scaling.

A t-error-correcting pair for C is a pair (A, B) of codes over an extension
of C's field with

    E.1  A*B orthogonal to C          E.4  d(A) + d(C) > n
    E.2  dim A > t                    E.5  d(A^perp) > 1
    E.3  d(B^perp) > t                E.6  d(A) + 2t > n

Either E.1-E.4 or E.1-E.3 with E.5 and E.6 guarantees that the decoder
corrects every error of weight at most t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from . import linalg
from .code import (LinearCode, dual, is_mds, lift, min_distance, scale,
                   schur_product, weight)
from .gf import FieldSpec, field_extend
from .grs import (INF, GrsSpec, dual_spec, recognize_grs, same_evaluation_sequence,
                  trivial_grs)

FAILURE_REASONS = ("kernel-empty", "erasure-ambiguous", "weight-exceeded", "not-in-code")


@dataclass(frozen=True)
class EcpPair:
    A: LinearCode
    B: LinearCode
    t: int

    def __post_init__(self):
        if self.A.n != self.B.n:
            raise ValueError(f"length mismatch: {self.A.n} vs {self.B.n}")
        if self.A.field != self.B.field:
            raise ValueError("A and B must be over the same field")
        if self.t < 0:
            raise ValueError("t must be nonnegative")

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.n


def _lift_to(C: LinearCode, F: FieldSpec) -> LinearCode:
    if C.field == F:
        return C
    if not F.is_extension_of(C.field):
        raise ValueError(f"pair field {F!r} does not extend code field {C.field!r}")
    return lift(C, F)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class EcpReport:
    t: int
    e1: bool
    e2: bool
    e3: bool
    e4: bool
    e5: bool
    e6: bool
    dim_A: int
    dim_B: int
    d_A: int
    d_C: int
    d_B_dual: int
    d_A_dual: int

    @property
    def via_e4(self) -> bool:
        return self.e1 and self.e2 and self.e3 and self.e4

    @property
    def via_e6(self) -> bool:
        return self.e1 and self.e2 and self.e3 and self.e5 and self.e6

    @property
    def is_pair(self) -> bool:
        return self.via_e4 or self.via_e6

    def items(self):
        yield "t", self.t
        for name in ("e1", "e2", "e3", "e4", "e5", "e6"):
            yield name.upper(), getattr(self, name)
        yield "via_E1-E4", self.via_e4
        yield "via_E1-E3+E5+E6", self.via_e6
        yield "dim_A", self.dim_A
        yield "dim_B", self.dim_B
        yield "d_A", self.d_A
        yield "d_C", self.d_C
        yield "d_B_dual", self.d_B_dual
        yield "d_A_dual", self.d_A_dual


def verify_ecp(A: LinearCode, B: LinearCode, C: LinearCode, t: int,
               budget: int | None = None) -> EcpReport:
    """Check E.1-E.6 with exact distances."""
    pair = EcpPair(A, B, t)
    if C.n != pair.n:
        raise ValueError(f"length mismatch: code has n={C.n}, pair has n={pair.n}")
    F = pair.field
    CL = _lift_to(C, F)
    AB = schur_product(A, B)
    e1 = AB.k == 0 or CL.k == 0 or not F.matmul(AB.gen, CL.gen.T).any()
    n = C.n
    d_A = min_distance(A, budget)
    d_C = min_distance(C, budget)
    d_Bd = min_distance(dual(B), budget)
    d_Ad = min_distance(dual(A), budget)
    return EcpReport(t=t, e1=bool(e1), e2=A.k > t, e3=d_Bd > t, e4=d_A + d_C > n,
                     e5=d_Ad > 1, e6=d_A + 2 * t > n, dim_A=A.k, dim_B=B.k,
                     d_A=d_A, d_C=d_C, d_B_dual=d_Bd, d_A_dual=d_Ad)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_ecp_for_grs(spec: GrsSpec, t: int | None = None) -> EcpPair:
    """A = GRS_{t+1}(a, b'), B = GRS_t(a, 1), where GRS_{n-k}(a, b') is the dual
    of GRS_k(a, b).  A*B = GRS_{2t}(a, b') lies in the dual since 2t <= n-k.

    When s = n-k-2t > 0 and infinity is an evaluation point, GRS codes on a
    are not nested, so b' is multiplied by h(a_j) = (a_j - beta)^s with beta
    off the finite points.  If every point of GF(q) is used, beta is taken
    in GF(q^2) and the pair is returned over that extension.
    """
    n, k = spec.n, spec.k
    t = (n - k) // 2 if t is None else t
    if t < 1:
        raise ValueError(f"need t >= 1 (n={n}, k={k})")
    if 2 * t > n - k:
        raise ValueError(f"t={t} exceeds (n-k)/2 for n={n}, k={k}")
    dspec = dual_spec(spec)
    F, bA, s = spec.field, dspec.b, n - k - 2 * t
    if s and INF in spec.a:
        finite = {z for z in spec.a if z is not INF}
        free = [z for z in range(F.q) if z not in finite]
        if free:
            beta = free[0]
        else:
            F = field_extend(F, 2)
            beta = next(z for z in range(spec.field.q, F.q))
        bA = tuple(int(F.mul(b, 1 if z is INF else F.pow(F.sub(z, beta), s)))
                   for z, b in zip(spec.a, bA))
    A = GrsSpec(F, spec.a, bA, t + 1).code()
    B = GrsSpec(F, spec.a, (1,) * n, t).code()
    return EcpPair(A, B, t)


def build_c_from_pair(A: LinearCode, B: LinearCode, t: int | None = None) -> LinearCode:
    """C = (A*B)^perp for MDS codes A = [n, t+1, n-t] and B = [n, t, n-t+1]."""
    t = B.k if t is None else t
    if A.k != t + 1 or B.k != t:
        raise ValueError(f"need dim A = t+1 and dim B = t, got {A.k}, {B.k} for t={t}")
    if not (is_mds(A) and is_mds(B)):
        raise ValueError("A and B must be MDS")
    return dual(schur_product(A, B))


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------

class Decoded(NamedTuple):
    codeword: np.ndarray
    error: np.ndarray


class DecodingFailure(Exception):
    def __init__(self, reason: str):
        if reason not in FAILURE_REASONS:
            raise ValueError(f"unknown failure reason {reason!r}")
        super().__init__(reason)
        self.reason = reason


class EcpDecoder:
    """Decoder for C with a fixed pair, precomputing everything that does not
    depend on the received word.

    For received y: (1) find the kernel of u -> ((u G_A) * y) . b_l over the
    rows b_l of B; (2) take its first basis vector in RREF order; (3) let J be
    the zero set of x = u G_A; (4) solve H_J e_J = H y for a unique e_J;
    (5) check weight and membership.
    """

    def __init__(self, C: LinearCode, pair: EcpPair):
        if C.n != pair.n:
            raise ValueError(f"length mismatch: code has n={C.n}, pair has n={pair.n}")
        F = pair.field
        self.code = C
        self.pair = pair
        self.field = F
        self.t = pair.t
        self.GA = np.ascontiguousarray(pair.A.gen)
        GB = pair.B.gen
        self.GAB = np.ascontiguousarray(F.mul(GB[:, None, :], self.GA[None, :, :]))
        self.H = np.ascontiguousarray(_lift_to(C, F).parity_check)
        self._tables = F.tables()

    def _prepare(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.int64)
        if y.shape[-1] != self.code.n:
            raise ValueError(f"received word has length {y.shape[-1]}, expected {self.code.n}")
        if y.size and (y.min() < 0 or y.max() >= self.field.q):
            raise ValueError("received word has entries outside the field")
        return y

    def decode(self, y) -> Decoded:
        """Reference decoder.  Raises DecodingFailure."""
        F = self.field
        y = self._prepare(y)
        n = y.shape[0]
        S = F.sum(F.mul(self.GAB, y[None, None, :]), axis=-1) if self.GAB.size else \
            np.zeros((self.GAB.shape[0], self.GAB.shape[1]), dtype=np.int64)
        K = linalg.kernel(F, S, ncols=self.GA.shape[0])
        if K.shape[0] == 0:
            raise DecodingFailure("kernel-empty")
        x = F.matmul(K[0], self.GA)
        J = np.flatnonzero(x == 0)
        e = np.zeros(n, dtype=np.int64)
        syn = F.matmul(self.H, y) if self.H.shape[0] else np.zeros(0, dtype=np.int64)
        if J.size:
            sol = linalg.solve(F, self.H[:, J], syn) if self.H.shape[0] else None
            if sol is None:
                raise DecodingFailure("erasure-ambiguous")
            e[J] = sol
        elif syn.any():
            raise DecodingFailure("erasure-ambiguous")
        if weight(e) > self.t:
            raise DecodingFailure("weight-exceeded")
        c = F.sub(y, e)
        if self.H.shape[0] and F.matmul(self.H, c).any():
            raise DecodingFailure("not-in-code")
        if self.code.field != F and not F.in_subfield(c, self.code.field).all():
            if F.in_subfield(y, self.code.field).all():
                raise ArithmeticError("decoded codeword left the base field")
        return Decoded(c, e)

    @property
    def compiled(self) -> bool:
        return self._tables is not None

    def _kernel_args(self):
        from . import _decode_kernel as kern
        ADD, MUL, NEG, INV = self._tables
        return kern, (self.GAB, self.GA, self.H, self.t, ADD, MUL, NEG, INV)

    def decode_many(self, Y) -> tuple[np.ndarray, np.ndarray]:
        """Decode each row of Y.  Returns (codewords, status) where status is
        0 for success or 1 + the index of the reason in FAILURE_REASONS."""
        Y = np.ascontiguousarray(self._prepare(Y).reshape(-1, self.code.n))
        if self.compiled and self.H.shape[0]:
            kern, args = self._kernel_args()
            GAB, GA, H = args[:3]
            return kern.decode_batch(Y, *args, *kern._workspace(GAB, H))
        words = np.zeros_like(Y)
        status = np.zeros(Y.shape[0], dtype=np.int64)
        for i, y in enumerate(Y):
            try:
                words[i] = self.decode(y).codeword
            except DecodingFailure as exc:
                status[i] = 1 + FAILURE_REASONS.index(exc.reason)
        return words, status

    def sweep(self, c, max_weight: int | None = None) -> tuple[int, int]:
        """Decode c + e for every e of weight <= max_weight (default t).
        Returns (patterns tried, patterns not decoded to exactly (c, e))."""
        w_max = self.t if max_weight is None else max_weight
        n, q = self.code.n, self.code.field.q  # errors live in the field of C
        c = np.ascontiguousarray(np.asarray(c, dtype=np.int64))
        supports = error_supports(n, w_max)
        if self.compiled and self.H.shape[0]:
            kern, args = self._kernel_args()
            GAB, GA, H, t, ADD, MUL, NEG, INV = args
            tried, bad = kern.sweep_errors(c, supports, t, q, GAB, GA, H, ADD, MUL, NEG, INV,
                                           *kern._workspace(GAB, H))
            return int(tried), int(bad)
        tried = bad = 0
        for e in iter_error_patterns(n, q, w_max):
            tried += 1
            try:
                got = self.decode(self.field.add(c, e))
            except DecodingFailure:
                bad += 1
                continue
            if not (np.array_equal(got.codeword, c) and np.array_equal(got.error, e)):
                bad += 1
        return tried, bad


def ecp_decode(y, C: LinearCode, pair: EcpPair) -> Decoded:
    """Decode y with the pair; raises DecodingFailure with a reason."""
    return EcpDecoder(C, pair).decode(y)


def error_supports(n: int, max_weight: int) -> np.ndarray:
    """All supports of size <= max_weight, padded with -1, in size order."""
    rows = [(-1,) * max_weight]
    for w in range(1, max_weight + 1):
        for s in itertools.combinations(range(n), w):
            rows.append(s + (-1,) * (max_weight - w))
    return np.array(rows, dtype=np.int64).reshape(len(rows), max(max_weight, 1)) \
        if max_weight else np.full((1, 1), -1, dtype=np.int64)


def iter_error_patterns(n: int, q: int, max_weight: int):
    for w in range(max_weight + 1):
        for supp in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(supp)] = vals
                yield e


def error_pattern_count(n: int, q: int, max_weight: int) -> int:
    return sum(math.comb(n, w) * (q - 1) ** w for w in range(max_weight + 1))


def nearest_codewords(C: LinearCode, y, chunk: int = 1 << 16) -> tuple[int, list[np.ndarray]]:
    """Exhaustive nearest-codeword search: (distance, all codewords at it)."""
    F = C.field
    y = np.asarray(y, dtype=np.int64)
    total = F.q ** C.k
    best, found = C.n + 1, []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        msgs = np.empty((idx.size, C.k), dtype=np.int64)
        rem = idx
        for j in range(C.k - 1, -1, -1):
            rem, msgs[:, j] = np.divmod(rem, F.q)
        words = C.encode(msgs)
        dist = np.count_nonzero(words != y[None, :], axis=1)
        m = int(dist.min())
        if m < best:
            best, found = m, []
        if m == best:
            found.extend(words[dist == m])
    return best, found


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    status: str  # "found", "found-none" or "exhausted"
    pair: EcpPair | None = None
    method: str = ""
    candidates: int = 0
    extension_degree: int = 0
    notes: list = dc_field(default_factory=list)


def _rref_subspaces(F: FieldSpec, n: int, k: int, order: np.ndarray):
    """Every k-dimensional subspace of F^n once, as its RREF generator.
    Pivot sets are visited in the given order; free entries in base-q order."""
    pivot_sets = list(itertools.combinations(range(n), k))
    for ps_index in order:
        piv = pivot_sets[ps_index]
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in piv]
        base = np.zeros((k, n), dtype=np.int64)
        for i, p in enumerate(piv):
            base[i, p] = 1
        for vals in itertools.product(range(F.q), repeat=len(free)):
            G = base.copy()
            for (i, j), v in zip(free, vals):
                G[i, j] = v
            yield G


def _pair_for_a(A: LinearCode, CL: LinearCode, t: int, d_C: int, budget) -> EcpPair | None:
    n = CL.n
    if min_distance(A, budget) + d_C <= n:
        return None
    AC = schur_product(A, CL)
    if min_distance(AC, budget) <= t:
        return None
    B = dual(AC)
    return EcpPair(A, B, t)


def search_ecp(C: LinearCode, t: int, max_ext: int = 1, budget: int = 100000,
               seed: int = 0, strategy: str = "auto", distance_budget: int | None = None
               ) -> SearchResult:
    """Look for a t-ECP of C over GF(q^m), m <= max_ext.

    ``strategy="recognition"`` (chosen by ``"auto"`` when C is MDS with
    d = 2t+1 and 2 <= k <= n-2): an ECP exists over some extension exactly
    when C is GRS, and then the GRS construction gives one over the base
    field.  ``strategy="enumerate"``: every (t+1)-dimensional A over each
    GF(q^m) is tried with the largest compatible B = (A*C)^perp; a pair
    (A', B') with dim A' > t exists iff one of these passes, since shrinking
    A to dimension t+1 and enlarging B keep E.1-E.4.  The seed permutes the
    order of pivot sets; ``budget`` caps the number of candidates A.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    n, k = C.n, C.k
    if strategy == "auto":
        strategy = "enumerate"
        if k == n - 2 * t and 2 <= k <= n - 2 and is_mds(C, distance_budget):
            strategy = "recognition"
    if strategy == "recognition":
        if not (k == n - 2 * t and is_mds(C, distance_budget)):
            raise ValueError("recognition search needs an MDS code with d = 2t+1")
        if not 2 <= k <= n - 2:
            spec = trivial_grs(C)
        else:
            spec = recognize_grs(C)
        if spec is None:
            return SearchResult("found-none", method="recognition",
                                notes=["not GRS, so no t-ECP over any extension"])
        return SearchResult("found", build_ecp_for_grs(spec, t), "recognition",
                            candidates=1, extension_degree=1)
    if strategy != "enumerate":
        raise ValueError(f"unknown strategy {strategy!r}")
    d_C = min_distance(C, distance_budget)
    rng = np.random.default_rng(seed)
    used = 0
    for m in range(1, max_ext + 1):
        F = C.field if m == 1 else field_extend(C.field, m)
        CL = _lift_to(C, F)
        order = rng.permutation(math.comb(n, t + 1))
        for G in _rref_subspaces(F, n, t + 1, order):
            if used >= budget:
                return SearchResult("exhausted", method="enumerate", candidates=used,
                                    extension_degree=m)
            used += 1
            pair = _pair_for_a(LinearCode(F, G, n), CL, t, d_C, distance_budget)
            if pair is not None:
                return SearchResult("found", pair, "enumerate", used, m)
    return SearchResult("found-none", method="enumerate", candidates=used,
                        extension_degree=max_ext,
                        notes=[f"all extensions up to degree {max_ext} enumerated"])


# ---------------------------------------------------------------------------
# uniqueness up to scaling
# ---------------------------------------------------------------------------

def ecp_uniqueness_check(pair1: EcpPair, pair2: EcpPair, C: LinearCode, t: int | None = None,
                         check: bool = True) -> np.ndarray | None:
    """A vector x with nonzero entries, x_1 = 1, such that A2 = x*A1 and
    B2 = x^{-1}*B1; None if there is none."""
    t = pair1.t if t is None else t
    if check:
        for p in (pair1, pair2):
            if not verify_ecp(p.A, p.B, C, t).is_pair:
                raise ValueError("pair does not verify against C")
    if pair1.field != pair2.field:
        raise ValueError("pairs are over different fields")
    F, n = pair1.field, pair1.n
    A1, A2 = pair1.A, pair2.A
    if A1.k != A2.k:
        return None
    H2 = dual(A2).gen
    if H2.shape[0] == 0:
        K = np.eye(n, dtype=np.int64)
    else:
        # x*g orthogonal to every h in A2^perp, for each row g of A1
        conds = F.mul(A1.gen[:, None, :], H2[None, :, :]).reshape(-1, n)
        K = linalg.kernel(F, conds, ncols=n)
    candidates = list(K)
    if K.shape[0] > 1:
        rng = np.random.default_rng(0)
        candidates += [F.matmul(rng.integers(0, F.q, K.shape[0]), K) for _ in range(64)]
    for x in candidates:
        if not x.all():
            continue
        x = F.mul(x, F.inv(x[0]))
        if scale(x, A1) == A2 and scale(F.inv(x), pair1.B) == pair2.B:
            return x
    return None


# ---------------------------------------------------------------------------
# main theorem checks on a single code
# ---------------------------------------------------------------------------

def pair_linearized_by(pair: EcpPair, spec: GrsSpec) -> bool:
    """Whether A and B are GRS codes on the evaluation sequence of ``spec``."""
    from .grs import fit_multipliers
    F = pair.field
    if F != spec.field:
        spec = GrsSpec(F, spec.a, spec.b, spec.k)
    return (fit_multipliers(pair.A, spec.a) is not None
            and fit_multipliers(pair.B, spec.a) is not None)


def shared_sequence(codes, positions=(0, 1, 2)) -> bool:
    """All codes recognised as GRS with one common evaluation sequence."""
    specs = []
    for D in codes:
        s = recognize_grs(D) if 2 <= D.k <= D.n - 2 else None
        if s is None:
            return False
        specs.append(s)
    return same_evaluation_sequence(specs, positions)
