"""Weak positivity / weak non-negativity with certified witnesses.

Primary decisions are the bounded growth searches of :mod:`search`
(coordinates <= 6 for weak positivity, <= 13 for weak non-negativity).
Independent cross-checks scan restrictions q|J over index subsets:

* weak positivity: q|J is critical iff every proper restriction is weakly
  positive and q|J carries the Ovsienko certificate (|J| = 2 with
  q_ij <= -2, or |J| >= 3, positive semidefinite, corank one, sincere
  positive radical generator);
* weak non-negativity = copositivity of the Gram matrix.  If all proper
  principal submatrices are copositive, the matrix fails to be copositive
  iff it is invertible with an entrywise non-positive inverse
  (Cottle-Habetler-Lemke).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import exact
from .search import SearchLimitExceeded, grow
from .unitform import (IntVector, UnitForm, add, bilinear, embed, evaluate,
                       is_slender, unit_vector)

WP_BOUND = 6
WNN_BOUND = 13
SCAN_CEILING = 20
MAX_STATES = 2_000_000


class Verdict(str, enum.Enum):
    WEAKLY_POSITIVE = "WEAKLY_POSITIVE"
    WEAKLY_NONNEGATIVE_NOT_WP = "WEAKLY_NONNEGATIVE_NOT_WP"
    NOT_WEAKLY_NONNEGATIVE = "NOT_WEAKLY_NONNEGATIVE"
    # partial answer of is_weakly_positive: witness with q <= 0 found,
    # non-negativity not examined
    NOT_WEAKLY_POSITIVE = "NOT_WEAKLY_POSITIVE"
    INCONCLUSIVE = "INCONCLUSIVE"


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class CriticalWitness:
    subset: tuple[int, ...]
    critical_vector: IntVector | None  # on the restricted indexing
    radical_rank: int

    def to_json(self) -> dict:
        return {"J": list(self.subset),
                "z": None if self.critical_vector is None else list(self.critical_vector)}


@dataclass
class ClassificationReport:
    verdict: Verdict
    witness: IntVector | None = None
    witness_value: int | None = None
    critical: list[CriticalWitness] = field(default_factory=list)
    hypercritical: list[tuple[int, ...]] = field(default_factory=list)
    strategy: str = ""

    @property
    def weakly_positive(self) -> bool | None:
        if self.verdict is Verdict.INCONCLUSIVE:
            return None
        return self.verdict is Verdict.WEAKLY_POSITIVE

    @property
    def weakly_nonnegative(self) -> bool | None:
        if self.verdict in (Verdict.INCONCLUSIVE, Verdict.NOT_WEAKLY_POSITIVE):
            return None
        return self.verdict is not Verdict.NOT_WEAKLY_NONNEGATIVE

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["witness_value"] = self.witness_value
        out["critical"] = [c.to_json() for c in self.critical]
        out["hypercritical"] = [list(j) for j in self.hypercritical]
        if self.strategy:
            out["strategy"] = self.strategy
        return out


# ---------------------------------------------------------------- PSD / radical

def is_nonnegative_with_radical(q: UnitForm) -> tuple[bool, list[IntVector]]:
    """Positive semidefiniteness of the Gram matrix and a radical basis.

    The radical basis consists of primitive integer vectors and is only
    meaningful (and only returned) when the form is non-negative.
    """
    gram = q.gram()
    if not exact.is_psd(gram):
        return False, []
    return True, [tuple(v) for v in exact.nullspace(gram)]


def _sincere_sign(v: IntVector) -> IntVector | None:
    if all(x > 0 for x in v):
        return v
    if all(x < 0 for x in v):
        return tuple(-x for x in v)
    return None


def criticality_certificate(q: UnitForm) -> CriticalWitness | None:
    """Ovsienko-style certificate that q (all proper restrictions assumed
    weakly positive) is critical; ``None`` if the certificate fails."""
    n = q.n
    full = tuple(range(n))
    if n == 1:
        return None
    if n == 2:
        c = q.coeffs[0][1]
        if c <= -2:
            return CriticalWitness(full, (1, 1) if c == -2 else None, 1 if c == -2 else 0)
        return None
    psd, rad = is_nonnegative_with_radical(q)
    if not psd or len(rad) != 1:
        return None
    z = _sincere_sign(rad[0])
    if z is None:
        return None
    return CriticalWitness(full, z, 1)


# ---------------------------------------------------------------- subset scans

class SubsetScan:
    """Memoized verdicts for every restriction q|J, J encoded as a bitmask."""

    def __init__(self, q: UnitForm, ceiling: int = SCAN_CEILING):
        if q.n > ceiling:
            raise ClassificationError(
                f"subset scan ceiling exceeded: n={q.n} > {ceiling}")
        self.q = q
        self.n = q.n
        self.gram = q.gram()
        self.full = (1 << q.n) - 1
        self._wp = lru_cache(maxsize=None)(self._wp_impl)
        self._wnn = lru_cache(maxsize=None)(self._wnn_impl)
        self._cert: dict[int, CriticalWitness | None] = {}

    def indices(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if mask >> i & 1)

    def mask(self, subset) -> int:
        m = 0
        for i in subset:
            m |= 1 << i
        return m

    def _sub(self, mask: int) -> list[list[int]]:
        idx = self.indices(mask)
        return [[self.gram[i][j] for j in idx] for i in idx]

    def certificate(self, mask: int) -> CriticalWitness | None:
        if mask not in self._cert:
            idx = self.indices(mask)
            sub = UnitForm(tuple(tuple(0 if i == j else self.gram[i][j] for j in idx)
                                 for i in idx))
            cert = criticality_certificate(sub)
            if cert is not None:
                cert = CriticalWitness(idx, cert.critical_vector, cert.radical_rank)
            self._cert[mask] = cert
        return self._cert[mask]

    def proper_wp(self, mask: int) -> bool:
        return all(self._wp(mask & ~(1 << i)) for i in self.indices(mask))

    def wp(self, mask: int) -> bool:
        return self._wp(mask)

    def _wp_impl(self, mask: int) -> bool:
        if mask & (mask - 1) == 0:
            return True
        if not self.proper_wp(mask):
            return False
        return self.certificate(mask) is None

    def is_critical(self, mask: int) -> bool:
        return mask & (mask - 1) != 0 and self.proper_wp(mask) and not self._wp(mask)

    def proper_wnn(self, mask: int) -> bool:
        return all(self._wnn(mask & ~(1 << i)) for i in self.indices(mask))

    def wnn(self, mask: int) -> bool:
        return self._wnn(mask)

    def _wnn_impl(self, mask: int) -> bool:
        if mask & (mask - 1) == 0:
            return True
        if not self.proper_wnn(mask):
            return False
        inv = exact.inverse(self._sub(mask))
        return not (inv is not None and all(x <= 0 for row in inv for x in row))

    def is_hypercritical(self, mask: int) -> bool:
        return mask & (mask - 1) != 0 and self.proper_wnn(mask) and not self._wnn(mask)

    def copositivity_witness(self, mask: int) -> IntVector:
        """Integer x >= 0 supported on a hypercritical J with q(x) < 0."""
        idx = self.indices(mask)
        inv = exact.inverse(self._sub(mask))
        x = exact.primitive([-sum(row) for row in inv])
        return embed(x, idx, self.n)

    def _masks_by_size(self):
        for k in range(1, self.n + 1):
            for idx in combinations(range(self.n), k):
                yield self.mask(idx)


def critical_restrictions(q: UnitForm, ceiling: int = SCAN_CEILING) -> list[CriticalWitness]:
    scan = SubsetScan(q, ceiling)
    out = []
    for m in scan._masks_by_size():
        if scan.is_critical(m):
            out.append(scan.certificate(m) or CriticalWitness(scan.indices(m), None, 0))
    return out


def hypercritical_restrictions(q: UnitForm, ceiling: int = SCAN_CEILING) -> list[tuple[int, ...]]:
    scan = SubsetScan(q, ceiling)
    return [scan.indices(m) for m in scan._masks_by_size() if scan.is_hypercritical(m)]


def weakly_positive_oracle(q: UnitForm, ceiling: int = SCAN_CEILING) -> bool:
    """Recursive-criticality decision, independent of the growth search."""
    scan = SubsetScan(q, ceiling)
    return scan.wp(scan.full)


def weakly_nonnegative_oracle(q: UnitForm, ceiling: int = SCAN_CEILING) -> bool:
    """Exact copositivity decision, independent of the growth search."""
    scan = SubsetScan(q, ceiling)
    return scan.wnn(scan.full)


# ---------------------------------------------------------------- decisions

def is_weakly_positive(q: UnitForm, bound: int = WP_BOUND, ceiling: int = SCAN_CEILING,
                       with_restrictions: bool = False,
                       max_states: int | None = MAX_STATES) -> ClassificationReport:
    if q.n > ceiling:
        return ClassificationReport(Verdict.INCONCLUSIVE,
                                    strategy=f"root growth: n={q.n} above ceiling {ceiling}")
    try:
        res = grow(q, "roots", bound, max_states=max_states)
    except SearchLimitExceeded as exc:
        return ClassificationReport(Verdict.INCONCLUSIVE, strategy=f"root growth: {exc}")
    if res.witness is None:
        rep = ClassificationReport(Verdict.WEAKLY_POSITIVE,
                                   strategy=f"root growth, coordinates <= {bound}")
    else:
        rep = ClassificationReport(Verdict.NOT_WEAKLY_POSITIVE, res.witness,
                                   evaluate(q, res.witness),
                                   strategy=f"root growth, coordinates <= {bound}")
    if with_restrictions:
        rep.critical = critical_restrictions(q, ceiling)
    return rep


def is_weakly_nonnegative(q: UnitForm, bound: int = WNN_BOUND, wp_bound: int = WP_BOUND,
                          ceiling: int = SCAN_CEILING, with_restrictions: bool = False,
                          max_states: int | None = MAX_STATES) -> ClassificationReport:
    """Full verdict: weakly positive, weakly non-negative only, or neither.

    The bound is proved for slender forms.  A non-slender form with no
    negative vector in the box is settled by the exact copositivity scan.
    """
    if q.n > ceiling:
        return ClassificationReport(Verdict.INCONCLUSIVE,
                                    strategy=f"growth search: n={q.n} above ceiling {ceiling}")
    strategy = f"unit-step growth, coordinates <= {bound}"
    try:
        res = grow(q, "small", bound, max_states=max_states)
        negative = res.witness
    except SearchLimitExceeded as exc:
        if is_slender(q):
            return ClassificationReport(Verdict.INCONCLUSIVE, strategy=f"growth search: {exc}")
        negative = None
        res = None
        strategy = f"growth search gave up ({exc})"
    if negative is not None:
        rep = ClassificationReport(Verdict.NOT_WEAKLY_NONNEGATIVE, negative,
                                   evaluate(q, negative), strategy=strategy)
    else:
        if not is_slender(q):
            scan = SubsetScan(q, ceiling)
            strategy += "; non-slender, settled by exact copositivity scan"
            if not scan.wnn(scan.full):
                hyper = next(m for m in scan._masks_by_size() if scan.is_hypercritical(m))
                w = scan.copositivity_witness(hyper)
                return _with_lists(ClassificationReport(
                    Verdict.NOT_WEAKLY_NONNEGATIVE, w, evaluate(q, w), strategy=strategy),
                    q, ceiling, with_restrictions)
        wp = is_weakly_positive(q, wp_bound, ceiling)
        if wp.verdict is Verdict.INCONCLUSIVE:
            return ClassificationReport(Verdict.INCONCLUSIVE, strategy=wp.strategy)
        if wp.verdict is Verdict.WEAKLY_POSITIVE:
            rep = ClassificationReport(Verdict.WEAKLY_POSITIVE, strategy=strategy)
        else:
            rep = ClassificationReport(Verdict.WEAKLY_NONNEGATIVE_NOT_WP, wp.witness,
                                       wp.witness_value, strategy=strategy)
    return _with_lists(rep, q, ceiling, with_restrictions)


def _with_lists(rep, q, ceiling, with_restrictions):
    if with_restrictions:
        rep.critical = critical_restrictions(q, ceiling)
        rep.hypercritical = hypercritical_restrictions(q, ceiling)
    return rep


classify = is_weakly_nonnegative


# ---------------------------------------------------------------- hypercritical witnesses

@dataclass(frozen=True)
class HypercriticalWitnesses:
    v: IntVector
    w: IntVector
    is_qM: bool


def is_qM(q: UnitForm) -> bool:
    """q isomorphic to the form of the complete 4-vertex quiver M.  Every
    coefficient is -1, so all 24 index permutations give the same form."""
    return q.n == 4 and all(q.coeffs[i][j] == -1
                            for i in range(4) for j in range(4) if i != j)


def hypercritical_witnesses(q: UnitForm, ceiling: int = SCAN_CEILING) -> HypercriticalWitnesses:
    """Vectors v, w > 0 with q(v) = -1, q(w) = -3 (or -2, -3 for q_M).

    Runs the construction: take a critical corank-one restriction q^(i)
    with critical vector z, let m = -q(z, e_i) and use
    m = 1: 2z + e_i, 4z + e_i;  m = 2: z + e_i, 2z + e_i.
    When every critical q^(i) has m = 3 the form must be q_M.
    """
    if not is_slender(q):
        raise ClassificationError("hypercritical_witnesses needs a slender form")
    scan = SubsetScan(q, ceiling)
    if not scan.is_hypercritical(scan.full):
        raise ClassificationError("form is not hypercritical")
    if is_qM(q):
        return _checked(q, (1, 1, 1, 1), (2, 2, 1, 1), -2, True)
    n = q.n
    ms = []
    for i in range(n):
        mask = scan.full & ~(1 << i)
        if not scan.is_critical(mask):
            continue
        cert = scan.certificate(mask)
        if cert is None or cert.critical_vector is None:
            continue
        z = embed(cert.critical_vector, cert.subset, n)
        ei = unit_vector(n, i)
        m = -bilinear(q, z, ei)
        ms.append(m)
        if m == 1:
            return _checked(q, add(add(z, z), ei), add(tuple(4 * x for x in z), ei), -1, False)
        if m == 2:
            return _checked(q, add(z, ei), add(add(z, z), ei), -1, False)
        if not 1 <= m <= 3:
            raise ClassificationError(f"internal: m={m} outside 1..3")
    raise ClassificationError(
        f"internal: no critical restriction with m in (1, 2) and form is not q_M (m values {ms})")


def _checked(q, v, w, v_value, qm):
    if evaluate(q, v) != v_value or evaluate(q, w) != -3:
        raise ClassificationError("internal: witness values do not re-evaluate")
    return HypercriticalWitnesses(tuple(v), tuple(w), qm)
