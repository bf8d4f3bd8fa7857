"""Affine weight lattices, Cartan data, and Weyl groups.

Covers six families of affine Kac-Moody types with node set {0..n}:
untwisted A, B, D and twisted A (odd and even) and D. Weights carry
coordinates in the fundamental-weight basis plus a separate delta
coordinate; Weyl group elements track both their action on weights and
their inverse's action on the simple-root basis (for Bruhat tests).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator, Mapping, Sequence

from .qring import LaurentPoly

FAMILIES = ("A1", "B1", "D1", "A2odd", "A2even", "D2")

_MIN_N = {"A1": 1, "B1": 3, "D1": 4, "A2odd": 3, "A2even": 1, "D2": 2}


@dataclass(frozen=True)
class Weight:
    """Affine weight: fundamental-weight coordinates plus a delta coordinate."""

    lambda_coords: tuple[int, ...]
    delta_coord: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lambda_coords", tuple(int(c) for c in self.lambda_coords))
        object.__setattr__(self, "delta_coord", Fraction(self.delta_coord))

    @classmethod
    def zero(cls, size: int) -> "Weight":
        return cls((0,) * size)

    def pairing(self, i: int) -> int:
        """Evaluation against the simple coroot h_i."""
        return self.lambda_coords[i]

    def classical(self) -> "Weight":
        """Image with the delta coordinate dropped."""
        return Weight(self.lambda_coords)

    def with_delta(self, delta: Fraction | int) -> "Weight":
        return Weight(self.lambda_coords, Fraction(delta))

    def __add__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        return Weight(
            tuple(a + b for a, b in zip(self.lambda_coords, other.lambda_coords, strict=True)),
            self.delta_coord + other.delta_coord,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        if not isinstance(other, Weight):
            return NotImplemented
        return Weight(
            tuple(a - b for a, b in zip(self.lambda_coords, other.lambda_coords, strict=True)),
            self.delta_coord - other.delta_coord,
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.lambda_coords), -self.delta_coord)

    def __mul__(self, scalar: int) -> "Weight":
        if not isinstance(scalar, int):
            return NotImplemented
        return Weight(tuple(scalar * a for a in self.lambda_coords), scalar * self.delta_coord)

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = [f"{c}*L{i}" for i, c in enumerate(self.lambda_coords) if c]
        if self.delta_coord:
            parts.append(f"{self.delta_coord}*d")
        return " + ".join(parts) if parts else "0"

    def to_json_obj(self) -> dict:
        return {
            "lambda": list(self.lambda_coords),
            "delta": [self.delta_coord.numerator, self.delta_coord.denominator],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Weight":
        num, den = obj["delta"]
        return cls(tuple(obj["lambda"]), Fraction(num, den))


@dataclass(frozen=True)
class CartanType:
    """Generalized Cartan matrix of affine type with marks and comarks."""

    family: str
    n: int
    matrix: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]

    @property
    def size(self) -> int:
        """Number of Dynkin nodes (n + 1)."""
        return self.n + 1

    @property
    def index_set(self) -> range:
        return range(self.size)

    @property
    def classical_index_set(self) -> range:
        return range(1, self.size)

    def fundamental_weight(self, i: int) -> Weight:
        coords = [0] * self.size
        coords[i] = 1
        return Weight(tuple(coords))

    def simple_root(self, i: int) -> Weight:
        """alpha_i = sum_j A[j][i] Lambda_j, plus delta when i = 0."""
        coords = tuple(self.matrix[j][i] for j in range(self.size))
        return Weight(coords, Fraction(1 if i == 0 else 0))

    def null_root(self) -> Weight:
        return Weight((0,) * self.size, Fraction(1))

    def rho(self) -> Weight:
        """Sum of all fundamental weights."""
        return Weight((1,) * self.size)

    def level(self, w: Weight) -> int:
        return sum(c * m for c, m in zip(self.comarks, w.lambda_coords))

    def bar_coords(self, w: Weight) -> tuple[int, ...]:
        """Coordinates at nodes 1..n only (Lambda_0 and delta forgotten)."""
        return w.lambda_coords[1:]

    def level_zero(self, upper_coords: Sequence[int]) -> Weight | None:
        """The unique level-zero weight with given coordinates at nodes 1..n.

        Returns None when no such weight exists in the integral lattice
        (possible only when the node-0 comark exceeds 1).
        """
        upper = tuple(upper_coords)
        if len(upper) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(upper)}")
        head, rem = divmod(-sum(c * m for c, m in zip(self.comarks[1:], upper)), self.comarks[0])
        if rem:
            return None
        return Weight((head,) + upper)

    def reflect(self, w: Weight, i: int) -> Weight:
        """Simple reflection r_i acting on a weight."""
        return w - w.pairing(i) * self.simple_root(i)

    def is_dominant(self, w: Weight, indices: Iterable[int] | None = None) -> bool:
        idx = self.index_set if indices is None else indices
        return all(w.pairing(i) >= 0 for i in idx)


def _build_matrix(family: str, n: int) -> list[list[int]]:
    size = n + 1
    a = [[2 if r == c else 0 for c in range(size)] for r in range(size)]

    def link(i: int, j: int, down: int = -1, up: int = -1) -> None:
        a[i][j] = down
        a[j][i] = up

    if family == "A1":
        if n == 1:
            link(0, 1, -2, -2)
        else:
            for i in range(size):
                link(i, (i + 1) % size)
    elif family == "B1":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)
    elif family == "D1":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 2):
            link(i, i + 1)
        link(n - 2, n - 1)
        link(n - 2, n)
    elif family == "A2odd":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)
    elif family == "A2even":
        if n == 1:
            link(0, 1, -1, -4)
        else:
            link(0, 1, -1, -2)
            for i in range(1, n - 1):
                link(i, i + 1)
            link(n - 1, n, -1, -2)
    elif family == "D2":
        link(0, 1, -2, -1)
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)
    else:
        raise ValueError(f"unknown family {family!r}")
    return a


def _marks_comarks(family: str, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if family == "A1":
        ones = (1,) * (n + 1)
        return ones, ones
    if family == "B1":
        return (1, 1) + (2,) * (n - 1), (1, 1) + (2,) * (n - 2) + (1,)
    if family == "D1":
        both = (1, 1) + (2,) * (n - 3) + (1, 1)
        return both, both
    if family == "A2odd":
        return (1, 1) + (2,) * (n - 2) + (1,), (1, 1) + (2,) * (n - 1)
    if family == "A2even":
        if n == 1:
            return (1, 2), (2, 1)
        return (1,) + (2,) * n, (2,) * n + (1,)
    if family == "D2":
        return (1,) * (n + 1), (1,) + (2,) * (n - 1) + (1,)
    raise ValueError(f"unknown family {family!r}")


@cache
def cartan_type(family: str, n: int) -> CartanType:
    """Cartan data for one of the six affine families at rank parameter n."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    if n < _MIN_N[family]:
        raise ValueError(f"family {family} needs n >= {_MIN_N[family]}, got {n}")
    matrix = tuple(tuple(row) for row in _build_matrix(family, n))
    marks, comarks = _marks_comarks(family, n)
    size = n + 1
    for i in range(size):
        if sum(matrix[i][j] * marks[j] for j in range(size)) != 0:
            raise AssertionError(f"marks fail kernel check for {family} n={n} at row {i}")
        if sum(comarks[j] * matrix[j][i] for j in range(size)) != 0:
            raise AssertionError(f"comarks fail kernel check for {family} n={n} at column {i}")
    return CartanType(family, n, matrix, marks, comarks)


def _identity(size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if r == c else 0 for c in range(size)) for r in range(size))


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(ra * cb for ra, cb in zip(row, col)) for col in cols) for row in a)


@cache
def _weight_reflection_matrix(ct: CartanType, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of r_i on (Lambda_0..Lambda_n, delta) coordinates."""
    size = ct.size
    m = [list(row) for row in _identity(size + 1)]
    for j in range(size):
        m[j][i] -= ct.matrix[j][i]
    if i == 0:
        m[size][0] -= 1
    return tuple(tuple(row) for row in m)


@cache
def _root_reflection_matrix(ct: CartanType, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of r_i on simple-root coordinates."""
    size = ct.size
    m = [list(row) for row in _identity(size)]
    for j in range(size):
        m[i][j] -= ct.matrix[i][j]
    return tuple(tuple(row) for row in m)


class WeylElement:
    """Weyl group element as a reduced-or-not word of simple reflections.

    The word (j_1, ..., j_m) denotes r_{j_1} o ... o r_{j_m} (rightmost
    applied first). `mat` acts on (Lambda, delta) coordinates; `inv_alpha`
    is the inverse element's matrix on simple-root coordinates.
    """

    __slots__ = ("cartan", "word", "mat", "inv_alpha")

    def __init__(
        self,
        cartan: CartanType,
        word: tuple[int, ...],
        mat: tuple[tuple[int, ...], ...],
        inv_alpha: tuple[tuple[int, ...], ...],
    ):
        self.cartan = cartan
        self.word = word
        self.mat = mat
        self.inv_alpha = inv_alpha

    @classmethod
    def identity(cls, cartan: CartanType) -> "WeylElement":
        return cls(cartan, (), _identity(cartan.size + 1), _identity(cartan.size))

    def prepend(self, i: int) -> "WeylElement":
        """Left-multiply by the simple reflection r_i."""
        return WeylElement(
            self.cartan,
            (i,) + self.word,
            _matmul(_weight_reflection_matrix(self.cartan, i), self.mat),
            _matmul(self.inv_alpha, _root_reflection_matrix(self.cartan, i)),
        )

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def det(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def apply(self, w: Weight) -> Weight:
        size = self.cartan.size
        coords = tuple(
            sum(self.mat[j][l] * w.lambda_coords[l] for l in range(size)) for j in range(size)
        )
        delta = w.delta_coord + sum(
            self.mat[size][l] * w.lambda_coords[l] for l in range(size)
        )
        return Weight(coords, delta)

    def is_ascent(self, i: int) -> bool:
        """True when left-multiplying by r_i increases Bruhat length."""
        return all(self.inv_alpha[j][i] >= 0 for j in range(self.cartan.size))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.cartan == other.cartan and self.mat == other.mat

    def __hash__(self) -> int:
        return hash((self.cartan.family, self.cartan.n, self.mat))

    def __repr__(self) -> str:
        return f"WeylElement({self.word})"


def weyl_by_length(
    ct: CartanType,
    generators: Sequence[int] | None = None,
    max_length: int | None = None,
) -> Iterator[list[WeylElement]]:
    """Yield lists of distinct Weyl elements grouped by increasing length.

    Stops when the group is exhausted or max_length is passed. With the
    classical generator subset the iteration always terminates; with all
    generators the group is infinite, so provide max_length or break.
    """
    gens = tuple(ct.index_set if generators is None else generators)
    seen = {_identity(ct.size + 1)}
    frontier = [WeylElement.identity(ct)]
    length = 0
    while frontier and (max_length is None or length <= max_length):
        yield frontier
        nxt: dict[tuple, WeylElement] = {}
        for w in frontier:
            for i in gens:
                if not w.is_ascent(i):
                    continue
                extended = w.prepend(i)
                if extended.mat not in seen and extended.mat not in nxt:
                    nxt[extended.mat] = extended
        seen.update(nxt)
        frontier = sorted(nxt.values(), key=lambda w: w.word)
        length += 1


def finite_weyl_group(ct: CartanType, generators: Sequence[int]) -> list[WeylElement]:
    """All elements generated by the given reflections (must be finite)."""
    return [w for shell in weyl_by_length(ct, generators) for w in shell]


def dominant_classical_weights(ct: CartanType, level: int) -> list[Weight]:
    """All classical dominant weights of the given level, sorted by coordinates.

    These are nonnegative combinations of fundamental weights whose comark
    pairing equals the level; the delta coordinate is zero.
    """
    results: list[Weight] = []

    def fill(idx: int, remaining: int, coords: list[int]) -> None:
        if idx == ct.size:
            if remaining == 0:
                results.append(Weight(tuple(coords)))
            return
        comark = ct.comarks[idx]
        for c in range(remaining // comark + 1):
            coords.append(c)
            fill(idx + 1, remaining - c * comark, coords)
            coords.pop()

    fill(0, level, [])
    return sorted(results, key=_weight_sort_key)


def enumerate_weyl(
    ct: CartanType,
    classical_only: bool = False,
    max_length: int | None = None,
) -> list[WeylElement]:
    """Flat list of Weyl elements, optionally restricted to the finite subgroup.

    With classical_only the node-0 reflection is dropped and the whole (finite)
    subgroup is returned unless capped; otherwise the full group is infinite
    and max_length is mandatory.
    """
    if not classical_only and max_length is None:
        raise ValueError("the full group is infinite; a max_length cap is required")
    gens = tuple(ct.classical_index_set) if classical_only else None
    out: list[WeylElement] = []
    for shell in weyl_by_length(ct, gens, max_length):
        out.extend(shell)
    return out


def _weight_sort_key(w: Weight) -> tuple:
    return (w.lambda_coords, w.delta_coord)


class FormalCharacter:
    """Finite integer combination of formal exponentials of affine weights.

    Stored as a weight -> coefficient map with no zero entries. Supports ring
    operations (the product is the convolution of exponents) and a projection
    to per-classical-weight Laurent polynomials in q = (exponential of -delta).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Weight, int] | None = None):
        data = {w: int(c) for w, c in (coeffs or {}).items() if c}
        self._coeffs = data

    @classmethod
    def zero(cls) -> "FormalCharacter":
        return cls()

    @classmethod
    def monomial(cls, w: Weight, coeff: int = 1) -> "FormalCharacter":
        return cls({w: coeff})

    @classmethod
    def from_weights(cls, weights: Iterable[Weight]) -> "FormalCharacter":
        data: dict[Weight, int] = {}
        for w in weights:
            data[w] = data.get(w, 0) + 1
        return cls(data)

    def coeff(self, w: Weight) -> int:
        return self._coeffs.get(w, 0)

    def terms(self) -> list[tuple[Weight, int]]:
        return sorted(self._coeffs.items(), key=lambda kv: _weight_sort_key(kv[0]))

    def support(self) -> list[Weight]:
        return [w for w, _ in self.terms()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def term_count(self) -> int:
        return len(self._coeffs)

    def eval_dimension(self) -> int:
        """Sum of all coefficients (the dimension when all are multiplicities)."""
        return sum(self._coeffs.values())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        data = dict(self._coeffs)
        for w, c in other._coeffs.items():
            data[w] = data.get(w, 0) + c
        return FormalCharacter(data)

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        data = dict(self._coeffs)
        for w, c in other._coeffs.items():
            data[w] = data.get(w, 0) - c
        return FormalCharacter(data)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter({w: -c for w, c in self._coeffs.items()})

    def __mul__(self, other: "FormalCharacter | int") -> "FormalCharacter":
        if isinstance(other, int):
            return FormalCharacter({w: c * other for w, c in self._coeffs.items()})
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        data: dict[Weight, int] = {}
        for w1, c1 in self._coeffs.items():
            for w2, c2 in other._coeffs.items():
                w = w1 + w2
                data[w] = data.get(w, 0) + c1 * c2
        return FormalCharacter(data)

    __rmul__ = __mul__

    def shift(self, w: Weight) -> "FormalCharacter":
        """Multiplication by a single exponential."""
        return FormalCharacter({wt + w: c for wt, c in self._coeffs.items()})

    def by_classical(self) -> dict[tuple[int, ...], LaurentPoly]:
        """Group terms by classical weight; delta exponents become q-powers.

        The convention q = (exponential of -delta) turns the coefficient of
        each classical weight into a Laurent polynomial in q.
        """
        grouped: dict[tuple[int, ...], list[tuple[Fraction, int]]] = {}
        for w, c in self._coeffs.items():
            grouped.setdefault(w.lambda_coords, []).append((-w.delta_coord, c))
        return {
            coords: LaurentPoly.from_terms(pairs) for coords, pairs in grouped.items()
        }

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for w, c in self.terms():
            prefix = "" if c == 1 else f"{c}*"
            parts.append(f"{prefix}e({w})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FormalCharacter({self._coeffs!r})"

    def to_json_obj(self) -> list[dict]:
        return [
            {"weight": w.to_json_obj(), "coeff": c}
            for w, c in self.terms()
        ]

    @classmethod
    def from_json_obj(cls, obj: list[dict]) -> "FormalCharacter":
        return cls({Weight.from_json_obj(t["weight"]): t["coeff"] for t in obj})


def demazure_op(ct: CartanType, i: int, chi: FormalCharacter) -> FormalCharacter:
    """Demazure operator D_i extended linearly over a formal character.

    On a single exponential with exponent mu, writing m for the pairing of
    mu + rho against h_i: the result is the sum of exponentials mu - t*alpha_i
    for 0 <= t < m when m > 0, zero when m = 0, and minus the sum of
    mu + t*alpha_i for 1 <= t <= -m when m < 0.
    """
    alpha = ct.simple_root(i)
    data: dict[Weight, int] = {}

    def accum(w: Weight, c: int) -> None:
        total = data.get(w, 0) + c
        if total:
            data[w] = total
        elif w in data:
            del data[w]

    for mu, c in chi.terms():
        m = mu.pairing(i) + 1
        if m > 0:
            for t in range(m):
                accum(mu - t * alpha, c)
        elif m < 0:
            for t in range(1, -m + 1):
                accum(mu + t * alpha, -c)
    return FormalCharacter(data)
