"""Foelner defects, the smallest-canonical-index two-sided search, tempering.

Set-level operations are exact throughout: defects are ratios of set
cardinalities and never touch floating point.  Schedules come in four
flavors — Cayley balls, symmetric integer intervals on Z, explicit set
lists, and searched sequences — plus the tempered subsequence wrapper.

The tempering construction (pick n_1 = 1; given the union F~ of the sets
chosen so far, take the first index m > i+1 whose set F_m satisfies
|F_m △ F~^{-1} F_m| <= |F_m| / |F~|) makes the chosen indices grow roughly
like n -> 2n^2, so ball and interval schedules answer cardinality queries
through closed-form growth models instead of materialized sets; explicit
schedules scan candidates literally under a configurable horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import HorizonExceededError, SearchExhaustedError
from .groups import (
    ComputableGroup,
    FiniteGroupSet,
    HeisenbergGroup,
    ZdGroup,
    set_from_index,
)

DEFAULT_INDEX_CAP = 2**20
DEFAULT_SCAN_HORIZON = 10**6

# ---------------------------------------------------------------------------
# Exact set algebra on code sets.
# ---------------------------------------------------------------------------


def inverse_set(group, F: FiniteGroupSet) -> FiniteGroupSet:
    return FiniteGroupSet(tuple(group.inverse(g) for g in F))


def translate_set(group, g: int, F: FiniteGroupSet, side: str) -> FiniteGroupSet:
    if side == "left":
        return FiniteGroupSet(tuple(group.compose(g, f) for f in F))
    if side == "right":
        return FiniteGroupSet(tuple(group.compose(f, g) for f in F))
    raise ValueError("side must be 'left' or 'right'")


def product_set(group, A: FiniteGroupSet, B: FiniteGroupSet) -> FiniteGroupSet:
    if isinstance(group, HeisenbergGroup) and len(A) * len(B) > 50_000:
        return _heis_product(group, A, B)
    out = set()
    for a in A:
        for b in B:
            out.add(group.compose(a, b))
    return FiniteGroupSet(tuple(out))


def _heis_product(group, A, B):
    from ._kernels import heis_product_coords, zd_decode, zd_encode

    ca = zd_decode(np.array(A.codes, dtype=np.int64), 3)
    cb = zd_decode(np.array(B.codes, dtype=np.int64), 3)
    coords = heis_product_coords(ca, cb)
    return FiniteGroupSet(tuple(int(c) for c in zd_encode(coords)))


def left_defect(group, F: FiniteGroupSet, g: int) -> Fraction:
    """|F △ gF| / |F|, exact."""
    if len(F) == 0:
        raise ValueError("F must be nonempty")
    gF = translate_set(group, g, F, "left")
    return Fraction(len(F.as_set() ^ gF.as_set()), len(F))


def right_defect(group, F: FiniteGroupSet, g: int) -> Fraction:
    """|F △ Fg| / |F|, exact."""
    if len(F) == 0:
        raise ValueError("F must be nonempty")
    Fg = translate_set(group, g, F, "right")
    return Fraction(len(F.as_set() ^ Fg.as_set()), len(F))


def ow_defect(group, F: FiniteGroupSet, K: FiniteGroupSet) -> Fraction:
    """(|KFK| - |F|) / |F| for symmetric K containing the identity."""
    if len(F) == 0:
        raise ValueError("F must be nonempty")
    Kset = K.as_set()
    if group.identity not in Kset:
        raise ValueError("K must contain the identity")
    if Kset != inverse_set(group, K).as_set():
        raise ValueError("K must be symmetric")
    KFK = product_set(group, product_set(group, K, F), K)
    return Fraction(len(KFK) - len(F), len(F))


# ---------------------------------------------------------------------------
# Smallest-canonical-index two-sided Foelner search.
# ---------------------------------------------------------------------------


def k_set(group, n: int) -> FiniteGroupSet:
    """Test set for the two-sided search at quality 1/n.

    The first n non-identity codes together with their inverses and the
    identity (the identity is code 0, so this is the symmetric closure of
    the first n+1 codes).
    """
    base = group.enumerate_set(n + 1)
    return FiniteGroupSet(base.codes + inverse_set(group, base).codes)


def search_two_sided(
    group, n: int, index_cap: int = DEFAULT_INDEX_CAP
) -> FiniteGroupSet:
    """The set F with smallest canonical index such that |KFK| <= (1+1/n)|F|.

    Candidates are enumerated in canonical-index order m = 1, 2, 3, ...;
    raises SearchExhaustedError past index_cap (a desk-scale bound: the
    search always succeeds eventually in an amenable group, but possibly far
    beyond any feasible index).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    K = k_set(group, n)
    if isinstance(group, ZdGroup) and group.dimension == 1 and index_cap < 2**62:
        from ._kernels import ow_scan_z

        r = (n + 1) // 2
        m = int(ow_scan_z(n, r, index_cap))
        if m == 0:
            raise SearchExhaustedError(n, index_cap)
        return set_from_index(m)
    for m in range(1, index_cap + 1):
        F = set_from_index(m)
        KFK = product_set(group, product_set(group, K, F), K)
        if n * (len(KFK) - len(F)) <= len(F):
            return F
    raise SearchExhaustedError(n, index_cap)


# ---------------------------------------------------------------------------
# Schedules.
# ---------------------------------------------------------------------------


class FoelnerSchedule:
    """A total map n -> finite set F_n (n >= 1) with cardinality queries."""

    kind = "abstract"

    def set_at(self, n: int) -> FiniteGroupSet:
        raise NotImplementedError

    def card(self, n: int) -> int:
        return len(self.set_at(n))

    def describe(self) -> str:
        return self.kind


class BallSchedule(FoelnerSchedule):
    """F_n = B(n), the word-metric balls of the group."""

    kind = "balls"

    def __init__(self, group: ComputableGroup):
        self.group = group
        self.model = group.growth_model()

    def set_at(self, n: int) -> FiniteGroupSet:
        return self.group.ball(n)

    def card(self, n: int) -> int:
        if self.model is not None:
            return self.model.card(n)
        return len(self.group.ball(n))

    def describe(self) -> str:
        return f"balls({self.group.name})"


class IntervalSchedule(FoelnerSchedule):
    """F_n = [-r(n), r(n)] in Z for a nondecreasing radius function."""

    kind = "intervals"

    def __init__(self, radius_fn, name="intervals", group=None):
        self.group = group if group is not None else ZdGroup(1)
        if not (isinstance(self.group, ZdGroup) and self.group.dimension == 1):
            raise ValueError("interval schedules live in Z")
        self.radius_fn = radius_fn
        self.name = name

    def radius(self, n: int) -> int:
        r = self.radius_fn(n)
        if r < 0:
            raise ValueError("radius must be >= 0")
        return r

    def set_at(self, n: int) -> FiniteGroupSet:
        r = self.radius(n)
        return FiniteGroupSet(tuple(self.group.encode((v,)) for v in range(-r, r + 1)))

    def card(self, n: int) -> int:
        return 2 * self.radius(n) + 1

    def describe(self) -> str:
        return self.name


def dyadic_intervals() -> IntervalSchedule:
    """F_n = [-2^n, 2^n]."""
    return IntervalSchedule(lambda n: 2**n, name="dyadic")


class ExplicitSchedule(FoelnerSchedule):
    """Schedule backed by an explicit list or generator function of sets."""

    kind = "explicit"

    def __init__(self, sets, group: ComputableGroup, name="explicit"):
        self.group = group
        self.name = name
        self._fn = sets if callable(sets) else None
        self._sets = None if callable(sets) else list(sets)

    def set_at(self, n: int) -> FiniteGroupSet:
        if self._fn is not None:
            F = self._fn(n)
        else:
            if not 1 <= n <= len(self._sets):
                raise ValueError(f"explicit schedule has no index {n}")
            F = self._sets[n - 1]
        if len(F) == 0:
            raise ValueError("schedule sets must be nonempty")
        return F

    def describe(self) -> str:
        return self.name


class SearchedSchedule(FoelnerSchedule):
    """F_n from the smallest-canonical-index two-sided search."""

    kind = "searched"

    def __init__(self, group: ComputableGroup, index_cap: int = DEFAULT_INDEX_CAP):
        self.group = group
        self.index_cap = index_cap
        self._cache: dict[int, FiniteGroupSet] = {}

    def set_at(self, n: int) -> FiniteGroupSet:
        if n not in self._cache:
            self._cache[n] = search_two_sided(self.group, n, self.index_cap)
        return self._cache[n]

    def describe(self) -> str:
        return f"searched({self.group.name}, cap={self.index_cap})"


class TemperedSchedule(FoelnerSchedule):
    """Subsequence i -> F_{n_i} of a base schedule, with the chosen indices."""

    kind = "tempered"

    def __init__(self, base: FoelnerSchedule, indices, trace=None):
        idx = list(indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("tempered index map must be strictly increasing")
        self.base = base
        self.indices = idx
        self.trace = trace or []

    def set_at(self, i: int) -> FiniteGroupSet:
        return self.base.set_at(self.index_at(i))

    def card(self, i: int) -> int:
        return self.base.card(self.index_at(i))

    def index_at(self, i: int) -> int:
        if not 1 <= i <= len(self.indices):
            raise ValueError(f"tempered schedule has {len(self.indices)} indices")
        return self.indices[i - 1]

    def describe(self) -> str:
        return f"tempered({self.base.describe()})"


# ---------------------------------------------------------------------------
# Tempering.
# ---------------------------------------------------------------------------


@dataclass
class TemperStep:
    """One inductive step: choose n_{i+1} given the union of sets so far."""

    i: int
    n_next: int
    union_card: int  # |F~_i|
    symmdiff: int  # |F_{n_{i+1}} △ F~_i^{-1} F_{n_{i+1}}|
    set_card: int  # |F_{n_{i+1}}|

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.symmdiff, self.set_card)

    @property
    def bound(self) -> Fraction:
        return Fraction(1, self.union_card)


def temper(
    base: FoelnerSchedule, count: int, scan_horizon: int = DEFAULT_SCAN_HORIZON
) -> TemperedSchedule:
    """Tempered subsequence of `base` with `count` indices, n_1 = 1.

    The step inequality is |F_m △ F~^{-1} F_m| <= |F_m| / |F~| (the defect
    of F_m under the finite set F~^{-1}, measured relative to |F_m|); the
    resulting subsequence is 2-tempered.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if isinstance(base, BallSchedule) and base.model is not None:
        steps = _temper_ball_model(base, count)
    elif isinstance(base, IntervalSchedule):
        steps = _temper_interval(base, count)
    else:
        steps = _temper_explicit(base, count, scan_horizon)
    indices = [1] + [s.n_next for s in steps]
    return TemperedSchedule(base, indices[:count], trace=steps)


def _temper_ball_model(base: BallSchedule, count: int):
    # nested symmetric balls with B(a) B(b) = B(a+b): the union so far is
    # B(n_i) and the symmetric difference is |B(n_i + m)| - |B(m)|
    from .growth import first_hit_card_threshold

    model = base.model
    steps = []
    a = 1
    for i in range(1, count):
        K = model.card(a)
        m = first_hit_card_threshold(model, K, a, i + 2)
        steps.append(
            TemperStep(
                i=i,
                n_next=m,
                union_card=K,
                symmdiff=model.card(m + a) - model.card(m),
                set_card=model.card(m),
            )
        )
        a = m
    return steps


def _temper_interval(base: IntervalSchedule, count: int):
    # the union so far is [-r~, r~]; the symmetric difference is 2 r~ for
    # every candidate, so the condition is monotone in the radius
    steps = []
    r_union = base.radius(1)
    for i in range(1, count):
        K = 2 * r_union + 1
        lo = i + 2

        def ok(m):
            return 2 * r_union * K <= 2 * base.radius(m) + 1

        hi = lo
        while not ok(hi):
            hi = 2 * hi + 1
        m_lo, m_hi = lo, hi  # first hit in (m_lo-1, m_hi]
        while m_lo < m_hi:
            mid = (m_lo + m_hi) // 2
            if ok(mid):
                m_hi = mid
            else:
                m_lo = mid + 1
        m = m_lo
        steps.append(
            TemperStep(
                i=i,
                n_next=m,
                union_card=K,
                symmdiff=2 * r_union,
                set_card=2 * base.radius(m) + 1,
            )
        )
        r_union = max(r_union, base.radius(m))
    return steps


def _temper_explicit(base: FoelnerSchedule, count: int, scan_horizon: int):
    group = base.group
    union = set(base.set_at(1).as_set())
    steps = []
    for i in range(1, count):
        union_set = FiniteGroupSet(tuple(union))
        union_inv = inverse_set(group, union_set)
        K = len(union)
        found = None
        lo = i + 2
        for m in range(lo, lo + scan_horizon):
            F = base.set_at(m)
            prod = product_set(group, union_inv, F).as_set()
            symmdiff = len(prod ^ F.as_set())
            if symmdiff * K <= len(F):
                found = (m, symmdiff, len(F))
                break
        if found is None:
            raise HorizonExceededError(f"temper step {i + 1}", scan_horizon)
        m, symmdiff, fcard = found
        steps.append(
            TemperStep(i=i, n_next=m, union_card=K, symmdiff=symmdiff, set_card=fcard)
        )
        union |= base.set_at(m).as_set()
    return steps


# ---------------------------------------------------------------------------
# Temperedness verification.
# ---------------------------------------------------------------------------


@dataclass
class TemperednessReport:
    ok: bool
    constant: Fraction
    rows: list  # (j, |U_{i<j} F_i^{-1} F_j|, |F_j|) triples
    violation: tuple | None = None  # (j, exact ratio)


def is_tempered(s: FoelnerSchedule, upto: int, C) -> TemperednessReport:
    """Check |U_{i<j} F_i^{-1} F_j| < C |F_j| for all j <= upto, exactly."""
    C = Fraction(C)
    rows = []
    violation = None
    for j in range(2, upto + 1):
        lhs = _union_product_card(s, j)
        fj = s.card(j)
        rows.append((j, lhs, fj))
        if not lhs < C * fj and violation is None:
            violation = (j, Fraction(lhs, fj))
    return TemperednessReport(
        ok=violation is None, constant=C, rows=rows, violation=violation
    )


def _union_product_card(s: FoelnerSchedule, j: int) -> int:
    """|U_{i<j} F_i^{-1} F_j|, via closed forms for nested symmetric bases."""
    if isinstance(s, TemperedSchedule):
        base = s.base
        idx = s.indices
        if isinstance(base, BallSchedule) and base.model is not None:
            return base.model.card(idx[j - 2] + idx[j - 1])
        if isinstance(base, IntervalSchedule):
            return 2 * (base.radius(idx[j - 2]) + base.radius(idx[j - 1])) + 1
        group = base.group
    elif isinstance(s, BallSchedule) and s.model is not None:
        return s.model.card((j - 1) + j)
    elif isinstance(s, IntervalSchedule):
        return 2 * (s.radius(j - 1) + s.radius(j)) + 1
    else:
        group = s.group
    union: set = set()
    Fj = s.set_at(j)
    for i in range(1, j):
        Fi_inv = inverse_set(group, s.set_at(i))
        union |= product_set(group, Fi_inv, Fj).as_set()
    return len(union)


# ---------------------------------------------------------------------------
# Defect reports.
# ---------------------------------------------------------------------------


@dataclass
class DefectReport:
    n: int
    element: int
    left: Fraction
    right: Fraction


def verify_foelner(s: FoelnerSchedule, test_elements, upto: int) -> list[DefectReport]:
    """Exact left/right defects of F_n for each n <= upto and test element."""
    group = getattr(s, "group", None)
    if group is None:
        raise ValueError("schedule has no group for defect computation")
    out = []
    for n in range(1, upto + 1):
        F = s.set_at(n)
        for g in test_elements:
            out.append(
                DefectReport(
                    n=n,
                    element=g,
                    left=left_defect(group, F, g),
                    right=right_defect(group, F, g),
                )
            )
    return out
