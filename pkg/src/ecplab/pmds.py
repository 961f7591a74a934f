"""Schur-product bounds: product Singleton gap, Kneser slack, consequences
of equality (PMDS pairs), and the PMDS route to GRS-ness of codes with an
error-correcting pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .code import (LinearCode, contains, dual, is_mds, min_distance, random_code,
                   schur_product, stabilizer)
from .gf import FieldSpec
from .grs import GrsSpec, projective_points, recognize_grs, same_evaluation_sequence


def _nonzero_pair(A: LinearCode, B: LinearCode):
    if A.n != B.n or A.field != B.field:
        raise ValueError("A and B must have the same length and field")
    if A.k == 0 or B.k == 0:
        raise ValueError("A and B must be nonzero codes")


def product_singleton_bound(A: LinearCode, B: LinearCode) -> int:
    return max(1, A.n - A.k - B.k + 2)


def product_singleton_gap(A: LinearCode, B: LinearCode, budget: int | None = None) -> int:
    """max{1, n - dim A - dim B + 2} - d(A*B); zero exactly for PMDS pairs."""
    _nonzero_pair(A, B)
    return product_singleton_bound(A, B) - min_distance(schur_product(A, B), budget)


def kneser_slack(A: LinearCode, B: LinearCode) -> int:
    """dim(A*B) - dim A - dim B + dim St(A*B)."""
    _nonzero_pair(A, B)
    AB = schur_product(A, B)
    return AB.k - A.k - B.k + stabilizer(AB).k


@dataclass
class Checklist:
    """Named pass/fail checks, or the reason the hypotheses are not met."""

    title: str
    checks: list = field(default_factory=list)
    unmet: list = field(default_factory=list)

    def add(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    @property
    def applicable(self) -> bool:
        return not self.unmet

    @property
    def passed(self) -> bool:
        return self.applicable and all(ok for _, ok in self.checks)


def _specs_for(codes) -> list | None:
    specs = []
    for D in codes:
        if not 2 <= D.k <= D.n - 2:
            return None
        s = recognize_grs(D)
        if s is None:
            return None
        specs.append(s)
    return specs


def pmds_consequences(A: LinearCode, B: LinearCode, budget: int | None = None) -> Checklist:
    """For a PMDS pair with n > dim A + dim B: A, B and A*B are MDS; when also
    dim A, dim B >= 2, they are GRS on a common evaluation sequence."""
    rep = Checklist("pmds-consequences")
    _nonzero_pair(A, B)
    n = A.n
    gap = product_singleton_gap(A, B, budget)
    if gap != 0:
        rep.unmet.append(f"not a PMDS pair (gap {gap})")
    if not n > A.k + B.k:
        rep.unmet.append(f"n={n} is not larger than dim A + dim B = {A.k + B.k}")
    if rep.unmet:
        return rep
    AB = schur_product(A, B)
    rep.add("A MDS", is_mds(A, budget))
    rep.add("B MDS", is_mds(B, budget))
    rep.add("A*B MDS", is_mds(AB, budget))
    if A.k >= 2 and B.k >= 2:
        specs = _specs_for([A, B, AB])
        rep.add("A, B, A*B GRS", specs is not None)
        rep.add("common evaluation sequence",
                specs is not None and same_evaluation_sequence(specs))
    return rep


def second_proof_check(C: LinearCode, pair, budget: int | None = None) -> Checklist:
    """For an [n, n-2t, 2t+1] MDS code with a verified t-ECP and 2 < t < n/2 - 1:
    d(A*B) >= n-2t+1, (A, B) PMDS, A*B MDS of dimension 2t equal to C^perp,
    and A, B, C^perp GRS on a common sequence."""
    from .ecp import verify_ecp
    rep = Checklist("second-proof")
    n, t = C.n, pair.t
    if C.k != n - 2 * t or not is_mds(C, budget):
        rep.unmet.append(f"C is not an [n, n-2t, 2t+1] MDS code for n={n}, t={t}")
    if not (2 < t and 2 * t < n - 2):
        rep.unmet.append(f"t={t} outside 2 < t < n/2 - 1")
    if rep.unmet:
        return rep
    if not verify_ecp(pair.A, pair.B, C, t, budget).is_pair:
        rep.unmet.append("pair does not verify against C")
        return rep
    A, B = pair.A, pair.B
    if A.k > t + 1:
        rep.unmet.append("dim A exceeds t+1; restrict A first")
        return rep
    AB = schur_product(A, B)
    d_AB = min_distance(AB, budget)
    rep.add("d(A*B) >= n-2t+1", d_AB >= n - 2 * t + 1)
    rep.add("PMDS pair", product_singleton_gap(A, B, budget) == 0)
    rep.add("A*B MDS of dimension 2t", AB.k == 2 * t and is_mds(AB, budget))
    Cd = dual(C) if C.field == A.field else LinearCode(A.field, dual(C).gen, n)
    rep.add("A*B = C^perp", AB.k == Cd.k and contains(AB, Cd))
    specs = _specs_for([A, B, AB])
    rep.add("shared evaluation sequence", specs is not None and same_evaluation_sequence(specs))
    return rep


# ---------------------------------------------------------------------------
# random corpus
# ---------------------------------------------------------------------------

@dataclass
class CorpusRow:
    pair_id: int
    kind: str
    n: int
    dim_A: int
    dim_B: int
    dim_AB: int
    d_AB: int
    bound: int
    gap: int
    slack: int
    pmds: bool
    consequences: str  # "n/a", "pass" or "FAIL"


def random_pair(F: FieldSpec, n: int, rng: np.random.Generator) -> tuple[str, LinearCode, LinearCode]:
    """Half the draws are GRS pairs on a common sequence (likely PMDS), half
    are uniformly random codes."""
    kA = int(rng.integers(1, n))
    kB = int(rng.integers(1, n))
    if rng.random() < 0.5 and n <= F.q + 1:
        pts = projective_points(F)
        idx = rng.permutation(len(pts))[:n]
        a = tuple(pts[i] for i in idx)
        b1 = tuple(int(x) for x in rng.integers(1, F.q, n))
        b2 = tuple(int(x) for x in rng.integers(1, F.q, n))
        return "grs", GrsSpec(F, a, b1, kA).code(), GrsSpec(F, a, b2, kB).code()
    return "random", random_code(F, n, kA, rng), random_code(F, n, kB, rng)


def corpus(F: FieldSpec, n: int, count: int, seed: int, budget: int | None = None
           ) -> list[CorpusRow]:
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(count):
        kind, A, B = random_pair(F, n, rng)
        AB = schur_product(A, B)
        d = min_distance(AB, budget)
        bound = product_singleton_bound(A, B)
        gap = bound - d
        cons = "n/a"
        if gap == 0 and n > A.k + B.k:
            cons = "pass" if pmds_consequences(A, B, budget).passed else "FAIL"
        rows.append(CorpusRow(i, kind, n, A.k, B.k, AB.k, d, bound, gap,
                              kneser_slack(A, B), gap == 0, cons))
    return rows


CORPUS_COLUMNS = ("pair_id", "kind", "n", "dim_A", "dim_B", "dim_AB", "d_AB", "bound",
                  "gap", "slack", "pmds", "consequences")
