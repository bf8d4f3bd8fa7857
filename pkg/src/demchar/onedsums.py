"""One-dimensional sums over perfect crystals.

Three graded sums over fixed-head letter sequences of one crystal:

* the unrestricted sum ``g`` counts all sequences of a given total
  classical weight, graded by energy, with a q^(delta-coordinate)
  normalization so that shifting the weight by a multiple of the null
  root multiplies the value by the matching power of q;
* the restricted sum ``X`` keeps only sequences whose running weights
  admit each letter at every Dynkin node;
* the classically restricted sum ``Xbar`` does the same with the node-0
  constraint dropped.

Each comes as a brute-force enumeration and a memoized recursion, and
the restricted sums additionally as Weyl alternating sums over the
unrestricted one. Also here: the reflection identity relating the
unrestricted sum along an f-string to its reflected weights, a search
for f-string decompositions of the non-admissible set, the
Kostka-Foulkes specialization over symmetric-power crystals, the
large-window stabilization toward string and branching functions, and
the rewriting of scheduled path characters through the unrestricted sum.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .crystals import Element, PerfectCrystal, symmetric_crystal
from .demazure import DemazureSchedule
from .paths import GroundState, enumerate_paths
from .qring import ONE, ZERO, LaurentPoly
from .tensor import TensorWord
from .weights import FormalCharacter, Weight, enumerate_weyl, weyl_by_length


class WeylSumGuardError(RuntimeError):
    """Affine Weyl-sum shells failed to terminate within the length cap."""

    def __init__(self, max_length: int, bound, last_min_offset):
        super().__init__(
            f"no terminating shell up to length {max_length}: need a zero "
            f"shell whose minimal null-root offset exceeds {bound}, last "
            f"shell reached offset {last_min_offset}"
        )
        self.max_length = max_length
        self.bound = bound
        self.last_min_offset = last_min_offset


class StabilizationGuardError(RuntimeError):
    """Truncations kept changing up to the window cap."""

    def __init__(self, max_j: int, degree: int):
        super().__init__(
            f"truncation to degree {degree} not stable for two consecutive "
            f"aligned windows up to j = {max_j}"
        )
        self.max_j = max_j
        self.degree = degree


# ---------------------------------------------------------------------------
# Unrestricted sum g


_G_MEMO: dict[tuple, LaurentPoly] = {}
_G_LOCK = threading.Lock()


def _g_classical(
    crystal: PerfectCrystal, b: Element, coords: tuple[int, ...], j: int
) -> LaurentPoly:
    """Recursion on classical coordinates; null-root bookkeeping is the
    caller's job."""
    key = (crystal, b, coords, j)
    hit = _G_MEMO.get(key)
    if hit is not None:
        return hit
    if j == 0:
        val = ONE if not any(coords) else ZERO
    else:
        val = ZERO
        for bp in crystal.elements:
            wt = crystal.weight(bp).lambda_coords
            rest = tuple(c - w for c, w in zip(coords, wt))
            inner = _g_classical(crystal, bp, rest, j - 1)
            if inner:
                val = val + inner.shift(j * crystal.energy(b, bp))
    with _G_LOCK:
        _G_MEMO.setdefault(key, val)
    return val


def g_recursive(crystal: PerfectCrystal, b: Element, mu: Weight, j: int) -> LaurentPoly:
    """Unrestricted sum by memoized recursion on the head letter.

    Zero unless mu has level zero; the delta-coordinate of mu only
    scales the result by a power of q.
    """
    if j < 0:
        raise ValueError("length must be nonnegative")
    if crystal.cartan.level(mu) != 0:
        return ZERO
    val = _g_classical(crystal, b, mu.lambda_coords, j)
    return val.shift(mu.delta_coord) if val else ZERO


def g_enumerate(crystal: PerfectCrystal, b: Element, mu: Weight, j: int) -> LaurentPoly:
    """Unrestricted sum by listing every head-b sequence of tail weight mu."""
    if j < 0:
        raise ValueError("length must be nonnegative")
    if crystal.cartan.level(mu) != 0:
        return ZERO
    energies = Counter(word.energy() for word in enumerate_paths(crystal, b, mu, j))
    return LaurentPoly.from_terms(energies.items()).shift(mu.delta_coord)


def tail_weight_support(crystal: PerfectCrystal, j: int) -> frozenset[tuple[int, ...]]:
    """Classical coordinate tuples reachable as sums of j letter weights."""
    if j < 0:
        raise ValueError("length must be nonnegative")
    sums = {Weight.zero(crystal.cartan.size).lambda_coords}
    letters = [crystal.weight(b).lambda_coords for b in crystal.elements]
    for _ in range(j):
        sums = {
            tuple(c + w for c, w in zip(coords, wt))
            for coords in sums
            for wt in letters
        }
    return frozenset(sums)


def check_2m_relation(
    crystal: PerfectCrystal, b: Element, i: int, mu: Weight, j: int
) -> bool:
    """Compare the two f-string sums of the unrestricted 1dsum: weights
    shifted t steps along the root versus their reflections, each side
    twisted by q^(t*j) at the node-0 index. Exact evaluation."""
    ct = crystal.cartan
    m = crystal.phi(i, b)
    alpha = ct.simple_root(i)
    twist = j if i == 0 else 0
    lhs = ZERO
    rhs = ZERO
    cur = b
    for t in range(m + 1):
        lhs = lhs + g_recursive(crystal, cur, mu + t * alpha, j).shift(t * twist)
        reflected = ct.reflect(mu + (m - t) * alpha, i)
        rhs = rhs + g_recursive(crystal, cur, reflected, j).shift(t * twist)
        if t < m:
            cur = crystal.f(i, cur)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Restricted sums X and Xbar


def _indices(crystal: PerfectCrystal, classical: bool, indices) -> tuple[int, ...]:
    if indices is not None:
        return tuple(indices)
    ct = crystal.cartan
    return tuple(ct.classical_index_set if classical else ct.index_set)


def _canon(w: Weight, classical: bool) -> Weight:
    """Drop the coordinates the restriction ignores: always the
    delta-coordinate, plus the node-0 coordinate in the classical case."""
    if classical:
        return Weight((0,) + tuple(w.lambda_coords[1:]))
    return w.classical()


def is_admissible(
    crystal: PerfectCrystal, xi: Weight, b: Element, classical: bool = False
) -> bool:
    """Whether every raising capacity of b fits under xi at the checked nodes."""
    idx = _indices(crystal, classical, None)
    return all(crystal.epsilon(i, b) <= xi.pairing(i) for i in idx)


def _fits(crystal: PerfectCrystal, state: Weight, b: Element, idx: tuple[int, ...]) -> bool:
    return all(crystal.epsilon(i, b) <= state.pairing(i) for i in idx)


def _head_blocked(
    crystal: PerfectCrystal,
    b: Element,
    xi: Weight,
    classical: bool,
    idx: tuple[int, ...],
) -> bool:
    """The boundary letter b is inadmissible one step above xi.

    The restricted sums are zero by definition in that case (for positive
    length); equivalently, some lowering capacity of b exceeds xi."""
    head_state = _canon(_canon(xi, classical) - crystal.weight(b), classical)
    return not _fits(crystal, head_state, b, idx)


def x_enumerate(
    crystal: PerfectCrystal,
    b: Element,
    xi: Weight,
    eta: Weight,
    j: int,
    classical: bool = False,
    indices: Sequence[int] | None = None,
) -> LaurentPoly:
    """Restricted sum by listing admissible sequences from xi down to eta.

    With classical=True only the coordinates at nodes >= 1 of xi and eta
    matter. For j >= 1 the head letter b must itself be admissible one
    step above xi, else the value is zero. An explicit ``indices`` tuple
    overrides the checked node set (empty = no restriction).
    """
    if j < 0:
        raise ValueError("length must be nonnegative")
    idx = _indices(crystal, classical, indices)
    state0 = _canon(xi, classical)
    target = _canon(eta, classical)
    if j == 0:
        return ONE if state0 == target else ZERO
    if _head_blocked(crystal, b, xi, classical, idx):
        return ZERO
    energies: Counter = Counter()

    def extend(seq: list[Element], state: Weight) -> None:
        if len(seq) == j:
            if state == target:
                energies[TensorWord(crystal, (b, *seq)).energy()] += 1
            return
        for bp in crystal.elements:
            if _fits(crystal, state, bp, idx):
                seq.append(bp)
                extend(seq, _canon(state + crystal.weight(bp), classical))
                seq.pop()

    extend([], state0)
    return LaurentPoly.from_terms(energies.items())


_X_MEMO: dict[tuple, LaurentPoly] = {}
_X_LOCK = threading.Lock()


def _x_rec(
    crystal: PerfectCrystal,
    b: Element,
    state: Weight,
    target: Weight,
    j: int,
    idx: tuple[int, ...],
    classical: bool,
) -> LaurentPoly:
    key = (crystal, b, state.lambda_coords, target.lambda_coords, j, idx)
    hit = _X_MEMO.get(key)
    if hit is not None:
        return hit
    if j == 0:
        val = ONE if state == target else ZERO
    else:
        val = ZERO
        for bp in crystal.elements:
            if _fits(crystal, state, bp, idx):
                inner = _x_rec(
                    crystal,
                    bp,
                    _canon(state + crystal.weight(bp), classical),
                    target,
                    j - 1,
                    idx,
                    classical,
                )
                if inner:
                    val = val + inner.shift(j * crystal.energy(b, bp))
    with _X_LOCK:
        _X_MEMO.setdefault(key, val)
    return val


def x_recursive(
    crystal: PerfectCrystal,
    b: Element,
    xi: Weight,
    eta: Weight,
    j: int,
    classical: bool = False,
    indices: Sequence[int] | None = None,
) -> LaurentPoly:
    """Restricted sum by memoized recursion; must equal x_enumerate."""
    if j < 0:
        raise ValueError("length must be nonnegative")
    idx = _indices(crystal, classical, indices)
    state0 = _canon(xi, classical)
    target = _canon(eta, classical)
    if j >= 1 and _head_blocked(crystal, b, xi, classical, idx):
        return ZERO
    return _x_rec(crystal, b, state0, target, j, idx, classical)


def _max_abs_energy(crystal: PerfectCrystal) -> int:
    return max(
        abs(crystal.energy(x, y)) for x in crystal.elements for y in crystal.elements
    )


def _classical_rho(size: int) -> Weight:
    return Weight((0,) + (1,) * (size - 1))


def x_by_weyl_sum(
    crystal: PerfectCrystal,
    b: Element,
    xi: Weight,
    eta: Weight,
    j: int,
    classical: bool = False,
    max_weyl_length: int = 12,
) -> LaurentPoly:
    """Restricted sum as a determinant-signed superposition of
    unrestricted sums at reflected weights.

    Classical: the finite reflection group is summed in full. Affine:
    shells of increasing length accumulate until one whole shell
    contributes zero while every argument in it sits further from level
    zero, in null-root offset, than the energy grading can reach; past
    that point no shell can contribute.

    The boundary-letter zero clause is definitional, so it is applied
    before summing; the superposition itself computes the value on the
    admissible-boundary domain.
    """
    if j < 0:
        raise ValueError("length must be nonnegative")
    ct = crystal.cartan
    if j >= 1 and _head_blocked(
        crystal, b, xi, classical, _indices(crystal, classical, None)
    ):
        return ZERO
    if classical:
        rho = _classical_rho(ct.size)
        target = _canon(eta, True) + rho
        base = _canon(xi, True) + rho
        total = ZERO
        for w in enumerate_weyl(ct, classical_only=True):
            moved = _canon(w.apply(target), True) - base
            lifted = ct.level_zero(moved.lambda_coords[1:])
            if lifted is None:
                continue
            val = g_recursive(crystal, b, lifted, j)
            if val:
                total = total + (val if w.det == 1 else -val)
        return total
    rho = ct.rho()
    target = eta.classical() + rho
    base = xi.classical() + rho
    bound = j * j * _max_abs_energy(crystal)
    total = ZERO
    last_min = None
    for shell in weyl_by_length(ct, None, max_weyl_length):
        shell_total = ZERO
        min_offset = None
        for w in shell:
            arg = w.apply(target) - base
            offset = abs(arg.delta_coord)
            min_offset = offset if min_offset is None else min(min_offset, offset)
            val = g_recursive(crystal, b, arg, j)
            if val:
                shell_total = shell_total + (val if w.det == 1 else -val)
        total = total + shell_total
        last_min = min_offset
        if not shell_total and min_offset is not None and min_offset > bound:
            return total
    raise WeylSumGuardError(max_weyl_length, bound, last_min)


# ---------------------------------------------------------------------------
# Decomposition of the non-admissible set into f-strings


@dataclass(frozen=True)
class DecompositionReport:
    """Search outcome: the non-admissible letters, whether they split
    into disjoint full f-strings rooted at letters with raising capacity
    exactly one above the weight, and one witnessing choice of strings."""

    non_admissible: tuple[Element, ...]
    candidates: tuple[tuple[Element, int, tuple[Element, ...]], ...]
    found: bool
    witness: tuple[tuple[Element, int, tuple[Element, ...]], ...]


def _f_string(crystal: PerfectCrystal, b: Element, i: int) -> tuple[Element, ...]:
    out = [b]
    cur = b
    while (cur := crystal.f(i, cur)) is not None:
        out.append(cur)
    return tuple(out)


def check_disjoint_decomposition(
    crystal: PerfectCrystal, xi: Weight, classical: bool = False
) -> DecompositionReport:
    """Try to write the letters not admitted under xi as a disjoint union
    of full lowering strings, each rooted where the raising capacity
    overshoots xi by exactly one."""
    idx = _indices(crystal, classical, None)
    state = _canon(xi, classical)
    bad = tuple(
        b
        for b in sorted(crystal.elements, key=crystal.index)
        if not _fits(crystal, state, b, idx)
    )
    bad_set = set(bad)
    candidates = []
    for bp in sorted(crystal.elements, key=crystal.index):
        for i in idx:
            if crystal.epsilon(i, bp) == state.pairing(i) + 1:
                string = _f_string(crystal, bp, i)
                if set(string) <= bad_set:
                    candidates.append((bp, i, string))
    candidates = tuple(candidates)

    def solve(uncovered: frozenset, chosen: list) -> tuple | None:
        if not uncovered:
            return tuple(chosen)
        pivot = min(uncovered, key=crystal.index)
        for cand in candidates:
            members = set(cand[2])
            if pivot in members and members <= uncovered:
                chosen.append(cand)
                result = solve(uncovered - members, chosen)
                if result is not None:
                    return result
                chosen.pop()
        return None

    witness = solve(frozenset(bad), [])
    return DecompositionReport(
        non_admissible=bad,
        candidates=candidates,
        found=witness is not None,
        witness=witness if witness is not None else (),
    )


# ---------------------------------------------------------------------------
# Kostka-Foulkes specialization


def kostka(xi: Sequence[int], l: int, j: int, n: int) -> LaurentPoly:
    """Kostka-Foulkes polynomial K_{xi, (l^j)} through the classically
    restricted sum over the level-l symmetric-power crystal of rank n.

    xi is a partition of l*j with at most n+1 parts, read as the weight
    with coordinate xi_i - xi_{i+1} at node i.
    """
    parts = tuple(int(p) for p in xi)
    if any(p < 0 for p in parts) or any(
        a < c for a, c in zip(parts, parts[1:])
    ):
        raise ValueError(f"{parts} is not a partition")
    if len(parts) > n + 1:
        raise ValueError(f"partition has {len(parts)} parts, more than {n + 1}")
    if sum(parts) != l * j:
        raise ValueError(f"partition of {sum(parts)} does not fill a {l}x{j} box")
    padded = parts + (0,) * (n + 1 - len(parts))
    eta = Weight((0,) + tuple(padded[i] - padded[i + 1] for i in range(n)))
    crystal = symmetric_crystal(n, l)
    boundary = (n,) * l
    zero = Weight.zero(n + 1)
    val = x_recursive(crystal, boundary, zero, eta, j, classical=True)
    return val.shift(-l * j)


# ---------------------------------------------------------------------------
# Large-window stabilization


def stabilized_limit(
    kind: str,
    crystal: PerfectCrystal,
    lam: Weight,
    degree: int,
    *,
    mu: Weight | None = None,
    xi: Weight | None = None,
    eta: Weight | None = None,
    max_j: int = 64,
) -> LaurentPoly:
    """Stable truncation of the normalized 1dsum through the ground state
    of lam, as the window grows.

    kind="g": string function along the level-zero direction mu
    (default 0). kind="x": branching of the product with a second
    highest weight xi toward eta. kind="xbar": classical branching
    toward the barred weight eta. The window advances by the period of
    the ground-state letter cycle, starting no earlier than the
    requested degree; the result is returned once three consecutive
    aligned truncations to that degree agree.  A single agreement is
    not trusted: short windows can coincide by accident before the low
    coefficients have saturated.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    gs = GroundState(crystal, lam)
    period = gs.period()
    size = crystal.cartan.size

    def value(j: int) -> LaurentPoly:
        head = gs.bar(j + 1)
        if kind == "g":
            direction = mu if mu is not None else Weight.zero(size)
            poly = g_recursive(crystal, head, direction, j)
        elif kind == "x":
            if xi is None or eta is None:
                raise ValueError("kind 'x' needs xi and eta")
            poly = x_recursive(
                crystal, head, xi.classical() + gs.window_weight(j), eta, j
            )
        elif kind == "xbar":
            if eta is None:
                raise ValueError("kind 'xbar' needs eta")
            poly = x_recursive(
                crystal, head, gs.window_weight(j), eta, j, classical=True
            )
        else:
            raise ValueError(f"unknown kind {kind!r}")
        return poly.shift(-gs.c(j)).truncate(degree)

    j = period * -(-degree // period)
    if j + 2 * period > max_j:
        raise StabilizationGuardError(max_j, degree)
    prev = value(j)
    streak = 0
    while True:
        j += period
        if j > max_j:
            raise StabilizationGuardError(max_j, degree)
        cur = value(j)
        if cur == prev:
            streak += 1
            if streak >= 2:
                return cur
        else:
            streak = 0
        prev = cur


# ---------------------------------------------------------------------------
# Scheduled path characters through the unrestricted sum


def _accumulate(
    acc: dict[Weight, int], base: Weight, cj: int, poly: LaurentPoly
) -> None:
    for exp, coeff in poly.terms():
        weight = base.with_delta(Fraction(cj) - exp)
        value = acc.get(weight, 0) + coeff
        if value:
            acc[weight] = value
        else:
            acc.pop(weight, None)


def _character_from(acc: dict[Weight, int]) -> FormalCharacter:
    chi = FormalCharacter.zero()
    for weight in sorted(acc, key=lambda w: (w.lambda_coords, w.delta_coord)):
        chi = chi + FormalCharacter.monomial(weight, acc[weight])
    return chi


def character_via_onedsums(s: DemazureSchedule, k: int) -> FormalCharacter:
    """Character of the step-k path set, rewritten as a weight-indexed
    superposition of unrestricted sums one window shorter, with the
    leading letter summed over the current leading set."""
    if k < 0:
        raise ValueError("steps must be nonnegative")
    gs, crystal = s.ground, s.crystal
    if k == 0:
        return FormalCharacter.monomial(gs.window_weight(0))
    j, a = s.table.decompose(k)
    cj = gs.c(j)
    head = gs.bar(j + 1)
    lam_j = gs.window_weight(j)
    acc: dict[Weight, int] = {}
    support = sorted(tail_weight_support(crystal, j - 1))
    for b in sorted(s.leading_sets(j)[a], key=crystal.index):
        head_shift = j * crystal.energy(head, b)
        wtb = crystal.weight(b)
        for coords in support:
            poly = g_recursive(crystal, b, Weight(coords), j - 1)
            if not poly:
                continue
            base = lam_j + Weight(coords) + wtb
            _accumulate(acc, base, cj, poly.shift(head_shift))
    return _character_from(acc)


def character_at_full_segment(s: DemazureSchedule, j: int) -> FormalCharacter:
    """Character after j whole segments: one unrestricted sum per weight
    with the ground-state letter above the window as head."""
    if j < 0:
        raise ValueError("segments must be nonnegative")
    gs, crystal = s.ground, s.crystal
    if j == 0:
        return FormalCharacter.monomial(gs.window_weight(0))
    cj = gs.c(j)
    head = gs.bar(j + 1)
    lam_j = gs.window_weight(j)
    acc: dict[Weight, int] = {}
    for coords in sorted(tail_weight_support(crystal, j)):
        poly = g_recursive(crystal, head, Weight(coords), j)
        if not poly:
            continue
        _accumulate(acc, lam_j + Weight(coords), cj, poly)
    return _character_from(acc)
