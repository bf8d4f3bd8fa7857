"""Ground-state paths, truncated paths, and scheduled path-set growth.

A path truncated to window j is a word (p(j), ..., p(1)) stored leftmost
first, together with a virtual boundary factor on the left standing for
the highest-weight vector over the window: it contributes no raising
capacity and lowering capacity given by the window weight. Path sets for
the Demazure recursion grow by repeated lowering along a per-family
schedule of Dynkin indices, widening the window by one ground-state
letter at each segment boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator

from .crystals import Element, PerfectCrystal, perfect_crystal, verify_perfect
from .tensor import TensorWord, signature_scan
from .weights import Weight, WeylElement

Word = tuple[Element, ...]


class BoundaryLoweringError(RuntimeError):
    """Lowering tried to act on the virtual boundary of a truncated path."""


@cache
def _perfectness(crystal: PerfectCrystal):
    return verify_perfect(crystal, 1)


class GroundState:
    """Ground-state path for one level-1 dominant weight: letters b(k),
    window weights, and the energy normalization c(j)."""

    def __init__(self, crystal: PerfectCrystal, lam: Weight):
        if crystal.cartan.level(lam) != 1 or not crystal.cartan.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant of level 1")
        report = _perfectness(crystal)
        if not report.ok:
            raise ValueError(
                f"crystal fails perfectness checks: {'; '.join(report.failures)}"
            )
        self.crystal = crystal
        self.lam = lam.classical()
        self._lams = [self.lam]
        self._bars: list[Element] = []

    def _extend(self, upto: int) -> None:
        while len(self._bars) < upto:
            b = self.crystal.ground_element(self._lams[-1])
            self._bars.append(b)
            self._lams.append(self.crystal.epsilon_weight(b))

    def bar(self, k: int) -> Element:
        """Ground-state letter at position k >= 1."""
        if k < 1:
            raise ValueError("positions start at 1")
        self._extend(k)
        return self._bars[k - 1]

    def window_weight(self, j: int) -> Weight:
        """Weight of the boundary after truncation at window j >= 0."""
        if j < 0:
            raise ValueError("window must be nonnegative")
        self._extend(j)
        return self._lams[j]

    def period(self) -> int:
        return self.crystal.sigma_period(self.lam)

    @cache
    def c(self, j: int) -> int:
        """Energy of the ground-state word of length j."""
        return sum(
            k * self.crystal.energy(self.bar(k + 1), self.bar(k)) for k in range(1, j + 1)
        )

    def _units(self, j: int, word: Word, i: int) -> list[tuple[int, int]]:
        crystal = self.crystal
        units = [(0, self.window_weight(j).pairing(i))]
        units.extend((crystal.epsilon(i, b), crystal.phi(i, b)) for b in word)
        return units

    def path_f(self, j: int, word: Word, i: int) -> Word | None:
        """Lower a window-j word; None when the whole path is annihilated."""
        idx = signature_scan(self._units(j, word, i))[3]
        if idx is None:
            return None
        if idx == 0:
            raise BoundaryLoweringError(
                f"window {j} too narrow for lowering by {i} on {word}"
            )
        moved = list(word)
        moved[idx - 1] = self.crystal.f(i, moved[idx - 1])
        return tuple(moved)

    def path_e(self, j: int, word: Word, i: int) -> Word | None:
        idx = signature_scan(self._units(j, word, i))[2]
        if idx is None:
            return None
        moved = list(word)
        moved[idx - 1] = self.crystal.e(i, moved[idx - 1])
        return tuple(moved)

    def path_weight(self, j: int, word: Word) -> Weight:
        """Affine weight of a window-j path, ground-state normalized."""
        crystal = self.crystal
        total = self.window_weight(j)
        for b in word:
            total = total + crystal.weight(b)
        energy = 0
        prev = self.bar(j + 1)
        for position in range(j, 0, -1):
            cur = word[j - position]
            energy += position * crystal.energy(prev, cur)
            prev = cur
        return total.with_delta(Fraction(self.c(j) - energy))


def scheduled_nodes(family: str, n: int) -> tuple[int, ...]:
    """Dynkin nodes whose fundamental weight has a growth schedule."""
    return {
        "A1": (0,),
        "B1": (0, n),
        "D1": (0,),
        "A2odd": (0,),
        "A2even": (n,),
        "D2": (0,),
    }[family]


@dataclass(frozen=True)
class Schedule:
    """Per-segment sequence of lowering indices for one ground state.

    Two families admit a second valid index sequence (reordering a pair of
    commuting steps around the fork or the tail of the letter chain);
    variant=2 selects it where it exists.
    """

    family: str
    n: int
    lam_node: int
    d: int
    variant: int = 1

    def __post_init__(self):
        if self.variant not in (1, 2):
            raise ValueError(f"variant must be 1 or 2, got {self.variant}")
        has_second = (self.family == "B1" and self.lam_node == self.n) or (
            self.family == "D1" and self.lam_node == 0
        )
        if self.variant == 2 and not has_second:
            raise ValueError(
                f"family {self.family} at node {self.lam_node} has a single schedule"
            )

    def index(self, j: int, a: int) -> int:
        """Lowering index at step a (1-based) of segment j (1-based)."""
        if not 1 <= a <= self.d:
            raise ValueError(f"step {a} outside 1..{self.d}")
        n, fam, node = self.n, self.family, self.lam_node
        head = 0 if j % 2 == 1 else 1
        if fam == "A1":
            return (a - j) % (n + 1)
        if fam == "B1" and node == 0:
            if a == 1 or a == 2 * n - 1:
                return head
            return min(a, 2 * n - a)
        if fam == "B1":
            if self.variant == 2:
                return n + 1 - a if a <= n + 1 else a - n
            return n + 1 - a if a <= n - 1 else a - n
        if fam == "D1":
            if a == 1 or a == 2 * n - 2:
                return head
            if self.variant == 2:
                if a == n:
                    return n
            elif a == n - 1:
                return n
            return min(a, 2 * n - 1 - a)
        if fam == "A2odd":
            if a == 1 or a == 2 * n - 1:
                return head
            return min(a, 2 * n - a)
        if fam == "A2even":
            return abs(n + 1 - a)
        if fam == "D2":
            return min(a - 1, 2 * n + 1 - a)
        raise ValueError(f"no schedule for family {fam}")

    def decompose(self, k: int) -> tuple[int, int]:
        """Split a global step k >= 1 into (segment, step-in-segment)."""
        if k < 1:
            raise ValueError("global steps start at 1")
        j, a = divmod(k - 1, self.d)
        return j + 1, a + 1

    def flat_index(self, k: int) -> int:
        j, a = self.decompose(k)
        return self.index(j, a)

    def weyl_word(self, k: int) -> tuple[int, ...]:
        """Word of the Weyl element after k steps, newest reflection first."""
        return tuple(self.flat_index(m) for m in range(k, 0, -1))

    def weyl_element(self, ct, k: int) -> WeylElement:
        elem = WeylElement.identity(ct)
        for m in range(1, k + 1):
            elem = elem.prepend(self.flat_index(m))
        return elem


def schedule_for(crystal: PerfectCrystal, lam: Weight, variant: int = 1) -> Schedule:
    family, n = crystal.cartan.family, crystal.cartan.n
    for node in scheduled_nodes(family, n):
        if lam.lambda_coords == crystal.cartan.fundamental_weight(node).lambda_coords:
            d = {
                "A1": n,
                "B1": 2 * n - 1,
                "D1": 2 * n - 2,
                "A2odd": 2 * n - 1,
                "A2even": 2 * n,
                "D2": 2 * n,
            }[family]
            return Schedule(family, n, node, d, variant)
    raise ValueError(f"no schedule for weight {lam} in family {family}")


def element_closure(crystal: PerfectCrystal, elements: Iterable[Element], i: int) -> set[Element]:
    """Close a set of crystal elements under repeated lowering by i."""
    out = set(elements)
    frontier = list(out)
    while frontier:
        nxt = crystal.f(i, frontier.pop())
        if nxt is not None and nxt not in out:
            out.add(nxt)
            frontier.append(nxt)
    return out


def leading_sets(gs: GroundState, sched: Schedule, j: int) -> list[set[Element]]:
    """Growing leftmost-factor sets B_0 .. B_d within segment j."""
    sets = [{gs.bar(j)}]
    for a in range(1, sched.d + 1):
        sets.append(element_closure(gs.crystal, sets[-1], sched.index(j, a)))
    return sets


def path_closure(gs: GroundState, j: int, words: Iterable[Word], i: int) -> set[Word]:
    """Close a set of window-j words under repeated lowering by i."""
    out = set(words)
    frontier = list(out)
    while frontier:
        nxt = gs.path_f(j, frontier.pop(), i)
        if nxt is not None and nxt not in out:
            out.add(nxt)
            frontier.append(nxt)
    return out


def grow_paths(gs: GroundState, sched: Schedule) -> Iterator[tuple[int, int, set[Word]]]:
    """Yield (k, window, path set) for k = 0, 1, 2, ... along the schedule."""
    window = 0
    words: set[Word] = {()}
    yield 0, 0, set(words)
    k = 0
    while True:
        k += 1
        j, a = sched.decompose(k)
        if a == 1:
            window = j
            words = {(gs.bar(j),) + word for word in words}
        words = path_closure(gs, window, words, sched.index(j, a))
        yield k, window, set(words)


def paths_at_step(gs: GroundState, sched: Schedule, k: int) -> tuple[int, set[Word]]:
    """Window and path set after k growth steps."""
    for step, window, words in grow_paths(gs, sched):
        if step == k:
            return window, words
    raise AssertionError("unreachable")


def enumerate_paths(
    crystal: PerfectCrystal, head: Element, mu: Weight, j: int
) -> list[TensorWord]:
    """Words (head, b_j, ..., b_1) whose length-j tail carries classical
    weight mu; the head contributes energy but not weight.

    Deterministic order: tails sorted by element index, leftmost first.
    """
    if j < 0:
        raise ValueError("length must be nonnegative")
    target = mu.lambda_coords
    zero = Weight.zero(crystal.cartan.size)
    out: list[TensorWord] = []

    def extend(tail: list[Element], acc: Weight) -> None:
        if len(tail) == j:
            if acc.lambda_coords == target:
                out.append(TensorWord(crystal, (head, *tail)))
            return
        for b in crystal.elements:
            tail.append(b)
            extend(tail, acc + crystal.weight(b))
            tail.pop()

    extend([], zero)
    return out


def truncated_path_json(gs: GroundState, j: int, word: Word) -> dict:
    """JSON form of one window-j truncated path."""
    return {
        "j": j,
        "word": [str(b) for b in word],
        "weight": gs.path_weight(j, word).to_json_obj(),
    }
