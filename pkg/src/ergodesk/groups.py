"""Computable groups as coded element sets.

Every group here is a fixed bijection between ℕ and the group's elements:
integers (zigzag), integer vectors (iterated Cantor pairing of zigzags), and
the discrete Heisenberg group H3(Z) coded as its coordinate triples.  The
neutral element always has code 0.  All group operations act on codes; the
coordinate views exist for display, tests, and the fast kernels.

Two concrete families ship: ZdGroup (with a choice of two generating sets)
and HeisenbergGroup (generators x, y and inverses).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import MalformedElementError, RadiusCapExceededError

DEFAULT_NORM_RADIUS_CAP = 64


def zigzag(z: int) -> int:
    """Bijection Z -> N: 0,-1,1,-2,2,... |-> 0,1,2,3,4,..."""
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(m: int) -> int:
    return m // 2 if m % 2 == 0 else -(m + 1) // 2


def cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_unpair(m: int) -> tuple[int, int]:
    w = (isqrt(8 * m + 1) - 1) // 2
    j = m - w * (w + 1) // 2
    return w - j, j


def encode_vector(v) -> int:
    """Left-associated Cantor pairing of zigzagged coordinates."""
    code = zigzag(v[0])
    for x in v[1:]:
        code = cantor_pair(code, zigzag(x))
    return code


def decode_vector(code: int, d: int) -> tuple[int, ...]:
    parts = []
    for _ in range(d - 1):
        code, right = cantor_unpair(code)
        parts.append(unzigzag(right))
    parts.append(unzigzag(code))
    return tuple(reversed(parts))


@dataclass(frozen=True)
class FiniteGroupSet:
    """Finite set of element codes, kept sorted and duplicate-free."""

    codes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(sorted(set(self.codes))))

    @classmethod
    def from_iterable(cls, it) -> "FiniteGroupSet":
        return cls(tuple(it))

    @classmethod
    def from_index(cls, m: int) -> "FiniteGroupSet":
        """Inverse of canonical_index: bits of m are the member codes."""
        if m < 0:
            raise ValueError("canonical index must be >= 0")
        codes = []
        pos = 0
        while m:
            if m & 1:
                codes.append(pos)
            m >>= 1
            pos += 1
        return cls(tuple(codes))

    def canonical_index(self) -> int:
        m = 0
        for c in self.codes:
            m |= 1 << c
        return m

    def as_set(self) -> frozenset:
        return frozenset(self.codes)

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def __contains__(self, code):
        return code in self.as_set()


def canonical_index(F: FiniteGroupSet) -> int:
    return F.canonical_index()


def set_from_index(m: int) -> FiniteGroupSet:
    return FiniteGroupSet.from_index(m)


class ComputableGroup:
    """Group structure on ℕ via a fixed bijective element coding.

    Subclasses define the coding and the composition law; everything else
    (enumeration, word norms, Cayley balls, growth ratios) is generic.
    """

    name: str = "group"
    dimension: int = 1  # coordinate arity for decode/encode

    def __init__(self):
        self._ball_layers: list[FiniteGroupSet] = []  # layer r = sphere of radius r
        self._ball_cache: dict[int, FiniteGroupSet] = {}
        self._norm_cache: dict[int, int] = {}

    # -- coding ------------------------------------------------------------

    def check_code(self, g) -> int:
        if not isinstance(g, int) or isinstance(g, bool) or g < 0:
            raise MalformedElementError(f"{g!r} is not a valid element code")
        return g

    def decode(self, g: int):
        raise NotImplementedError

    def encode(self, coords) -> int:
        raise NotImplementedError

    # -- group law ---------------------------------------------------------

    def compose(self, g: int, h: int) -> int:
        self.check_code(g)
        self.check_code(h)
        return self.encode(self._mul(self.decode(g), self.decode(h)))

    def inverse(self, g: int) -> int:
        self.check_code(g)
        return self.encode(self._inv(self.decode(g)))

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    @property
    def identity(self) -> int:
        return 0

    @property
    def generators(self) -> tuple[int, ...]:
        raise NotImplementedError

    # -- enumeration and canonical indices ----------------------------------

    def enumerate_set(self, n: int) -> FiniteGroupSet:
        """The n elements with smallest codes (the coding is onto ℕ)."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return FiniteGroupSet(tuple(range(n)))

    # -- word metric ---------------------------------------------------------

    def word_norm(self, g: int, radius_cap: int = DEFAULT_NORM_RADIUS_CAP) -> int:
        """Length of the shortest generator word equal to g.

        Found by expanding BFS layers of the Cayley graph from the identity;
        raises RadiusCapExceededError past radius_cap so a misconfigured
        generating set cannot loop forever.
        """
        self.check_code(g)
        if g in self._norm_cache:
            return self._norm_cache[g]
        r = len(self._ball_layers) - 1
        while True:
            if g in self._norm_cache:
                return self._norm_cache[g]
            r += 1
            if r > radius_cap:
                raise RadiusCapExceededError(g, radius_cap)
            self._expand_to(r)

    def _expand_to(self, n: int):
        """Materialize all BFS layers up to radius n."""
        while len(self._ball_layers) <= n:
            r = len(self._ball_layers)
            if r == 0:
                self._ball_layers.append(FiniteGroupSet((0,)))
                self._norm_cache[0] = 0
                continue
            seen = self._norm_cache
            new = set()
            for g in self._ball_layers[r - 1]:
                for s in self.generators:
                    h = self.compose(g, s)
                    if h not in seen:
                        seen[h] = r
                        new.add(h)
            self._ball_layers.append(FiniteGroupSet(tuple(new)))

    def ball(self, n: int) -> FiniteGroupSet:
        """Cayley ball {g : word_norm(g) <= n}, BFS-built and cached."""
        if n < 0:
            raise ValueError("ball radius must be >= 0")
        if n not in self._ball_cache:
            self._expand_to(n)
            codes = []
            for layer in self._ball_layers[: n + 1]:
                codes.extend(layer.codes)
            self._ball_cache[n] = FiniteGroupSet(tuple(codes))
        return self._ball_cache[n]

    def ball_size(self, n: int) -> int:
        """|B(n)|; uses the exact growth model when one is attached."""
        model = self.growth_model()
        if model is not None:
            return model.card(n)
        return len(self.ball(n))

    def growth_model(self):
        return None

    def estimate_growth(self, N: int, d: int) -> Fraction:
        """|B(N)| / N^d as an exact rational."""
        if N < 1:
            raise ValueError("N must be >= 1")
        return Fraction(self.ball_size(N), N**d)


class ZdGroup(ComputableGroup):
    """Z^d with either the diagonal or the unit-vector generating set.

    The diagonal set (all nonzero {-1,0,1}-vectors) makes balls exactly the
    boxes [-n, n]^d, so |B(n)| = (2n+1)^d; the unit set {±e_i} gives l1
    balls instead.  Word norms have the matching closed forms (sup norm and
    l1 norm), which the BFS reproduces.
    """

    def __init__(self, d: int, generating_set: str = "diagonal"):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        if generating_set not in ("diagonal", "units"):
            raise ValueError(f"unknown generating set {generating_set!r}")
        self.dimension = d
        self.generating_set = generating_set
        self.name = f"Z^{d}" if d > 1 else "Z"
        super().__init__()

    def decode(self, g: int):
        self.check_code(g)
        return decode_vector(g, self.dimension)

    def encode(self, coords) -> int:
        if len(coords) != self.dimension:
            raise MalformedElementError(
                f"expected {self.dimension} coordinates, got {len(coords)}"
            )
        return encode_vector(coords)

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    @property
    def generators(self) -> tuple[int, ...]:
        d = self.dimension
        if self.generating_set == "units":
            gens = []
            for i in range(d):
                for sign in (1, -1):
                    v = [0] * d
                    v[i] = sign
                    gens.append(self.encode(v))
            return tuple(gens)
        gens = []
        for v in itertools.product((-1, 0, 1), repeat=d):
            if any(v):
                gens.append(self.encode(v))
        return tuple(gens)

    def word_norm(self, g: int, radius_cap: int = DEFAULT_NORM_RADIUS_CAP) -> int:
        v = self.decode(g)
        if self.generating_set == "diagonal":
            return max(abs(x) for x in v)
        return sum(abs(x) for x in v)

    def growth_model(self):
        from .growth import BoxGrowth, CrossPolytopeGrowth

        if self.generating_set == "diagonal":
            return BoxGrowth(self.dimension)
        return CrossPolytopeGrowth(self.dimension)


class HeisenbergGroup(ComputableGroup):
    """Discrete Heisenberg group H3(Z), coded as coordinate triples.

    (a, b, c) stands for the upper-triangular matrix [[1, a, c], [0, 1, b],
    [0, 0, 1]], so (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').  Generators
    are x = (1,0,0), y = (0,1,0) and their inverses; the group has polynomial
    growth of degree 4.
    """

    dimension = 3
    name = "H3"

    def decode(self, g: int):
        self.check_code(g)
        return decode_vector(g, 3)

    def encode(self, coords) -> int:
        if len(coords) != 3:
            raise MalformedElementError(f"expected 3 coordinates, got {len(coords)}")
        return encode_vector(coords)

    def _mul(self, u, v):
        a, b, c = u
        a2, b2, c2 = v
        return (a + a2, b + b2, c + c2 + a * b2)

    def _inv(self, u):
        a, b, c = u
        return (-a, -b, a * b - c)

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(
            self.encode(v)
            for v in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0))
        )

    def _expand_to(self, n: int):
        # bulk BFS in packed coordinates via the kernel, then re-encode
        if len(self._ball_layers) > n:
            return
        from ._kernels import heis_ball_table, zd_encode

        coords, sizes = heis_ball_table(n)
        codes = zd_encode(coords)
        self._ball_layers = []
        pos = 0
        for r, size in enumerate(int(s) for s in sizes):
            layer = tuple(int(c) for c in codes[pos : pos + size])
            pos += size
            for code in layer:
                self._norm_cache[code] = r
            self._ball_layers.append(FiniteGroupSet(layer))

    def ball_coords(self, n: int):
        """Ball as a raw (N, 3) coordinate array for the kernels."""
        from ._kernels import heis_ball_table

        coords, _ = heis_ball_table(n)
        return coords

    def growth_model(self):
        from .growth import HeisenbergGrowth

        return HeisenbergGrowth()


def make_group(kind: str, dimension: int = 1, generating_set: str = "diagonal"):
    """Factory used by experiment configs."""
    if kind in ("zd", "z"):
        return ZdGroup(dimension, generating_set)
    if kind in ("heisenberg", "h3"):
        return HeisenbergGroup()
    raise ValueError(f"unknown group kind {kind!r}")
