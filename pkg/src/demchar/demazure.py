"""Demazure path sets grown along per-family lowering schedules.

Bundles a ground state with its index table, validates the three
structural requirements of the growth procedure (full closure per
segment, boundary capacity, ascending reflection word), constructs the
path set after k steps two independent ways (direct product shape versus
step-by-step lowering closure), and computes the Demazure character both
as a sum over paths and by iterated Demazure operators.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .crystals import Element, PerfectCrystal
from .paths import GroundState, Schedule, Word, leading_sets, paths_at_step, schedule_for
from .weights import FormalCharacter, WeylElement, demazure_op


@dataclass(frozen=True)
class AlteredTable:
    """Index table with point overrides and an optional shorter segment,
    exposing the same interface as a schedule. Exists to feed deliberately
    broken tables to the condition checks."""

    base: Schedule
    d: int
    overrides: tuple[tuple[int, int, int], ...] = ()

    def index(self, j: int, a: int) -> int:
        if not 1 <= a <= self.d:
            raise ValueError(f"step {a} outside 1..{self.d}")
        for jj, aa, ii in self.overrides:
            if (jj, aa) == (j, a):
                return ii
        return self.base.index(j, a)

    def decompose(self, k: int) -> tuple[int, int]:
        if k < 1:
            raise ValueError("global steps start at 1")
        j, a = divmod(k - 1, self.d)
        return j + 1, a + 1

    def flat_index(self, k: int) -> int:
        j, a = self.decompose(k)
        return self.index(j, a)

    def weyl_word(self, k: int) -> tuple[int, ...]:
        return tuple(self.flat_index(m) for m in range(k, 0, -1))


@dataclass(frozen=True)
class DemazureSchedule:
    """A ground state together with the index table that grows its
    Demazure path sets."""

    ground: GroundState
    table: Schedule | AlteredTable

    @property
    def crystal(self) -> PerfectCrystal:
        return self.ground.crystal

    @property
    def d(self) -> int:
        return self.table.d

    def leading_sets(self, j: int) -> list[set[Element]]:
        """Leftmost-factor sets, empty steps through the full crystal."""
        return leading_sets(self.ground, self.table, j)

    def with_index_override(self, j: int, a: int, i: int) -> "DemazureSchedule":
        """Copy whose table answers i at segment j, step a."""
        if i not in self.crystal.cartan.index_set:
            raise ValueError(f"{i} is not a Dynkin index")
        base = self.table.base if isinstance(self.table, AlteredTable) else self.table
        overrides = (
            self.table.overrides if isinstance(self.table, AlteredTable) else ()
        )
        return DemazureSchedule(
            self.ground, AlteredTable(base, self.table.d, overrides + ((j, a, i),))
        )

    def with_shortened_table(self) -> "DemazureSchedule":
        """Copy whose segments stop one lowering step early."""
        if self.table.d < 2:
            raise ValueError("table too short to shorten")
        base = self.table.base if isinstance(self.table, AlteredTable) else self.table
        overrides = (
            self.table.overrides if isinstance(self.table, AlteredTable) else ()
        )
        return DemazureSchedule(
            self.ground, AlteredTable(base, self.table.d - 1, overrides)
        )


def demazure_schedule(
    crystal: PerfectCrystal, lam, variant: int = 1
) -> DemazureSchedule:
    """Build the ground state and index table for a scheduled weight."""
    return DemazureSchedule(
        GroundState(crystal, lam), schedule_for(crystal, lam, variant)
    )


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the structural checks on a schedule. Each violation is
    one message tagged closure:, capacity:, or ascent:."""

    j_max: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> str | None:
        return self.violations[0] if self.violations else None


def check_conditions(s: DemazureSchedule, j_max: int) -> ConditionReport:
    """Verify, for every segment up to j_max: the lowering closure reaches
    the whole crystal; every boundary demand is covered by raising
    capacity; and the reflection word ascends step by step through
    j_max full segments."""
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    crystal, ground, table = s.crystal, s.ground, s.table
    full = set(crystal.elements)
    violations: list[str] = []
    for j in range(1, j_max + 1):
        sets = leading_sets(ground, table, j)
        if sets[table.d] != full:
            missing = sorted(full - sets[table.d], key=crystal.index)
            violations.append(
                f"closure: segment {j} reaches {len(sets[table.d])} of "
                f"{len(full)} elements, missing {missing}"
            )
        lam_j = ground.window_weight(j)
        for a in range(1, table.d + 1):
            i = table.index(j, a)
            demand = lam_j.pairing(i)
            for b in sorted(sets[a - 1], key=crystal.index):
                if crystal.epsilon(i, b) < demand:
                    violations.append(
                        f"capacity: segment {j} step {a} lowers along {i} "
                        f"but {b} raises only {crystal.epsilon(i, b)} < {demand}"
                    )
                    break
    elem = WeylElement.identity(crystal.cartan)
    for k in range(1, j_max * table.d + 1):
        i = table.flat_index(k)
        if not elem.is_ascent(i):
            violations.append(
                f"ascent: step {k} prepends reflection {i} without "
                f"lengthening the word"
            )
            break
        elem = elem.prepend(i)
    return ConditionReport(j_max, tuple(violations))


@dataclass(frozen=True)
class DemazureCrystal:
    """Path set after k growth steps, with its window and reflection word
    (newest reflection first)."""

    k: int
    window: int
    words: frozenset[Word]
    weyl_word: tuple[int, ...]

    @property
    def path_count(self) -> int:
        return len(self.words)


def demazure_paths(s: DemazureSchedule, k: int, method: str = "product") -> DemazureCrystal:
    """Path set after k steps.

    method="product": leading set at the current step times free letters.
    method="recursion": grow from the bare ground state by lowering
    closures, one index at a time. Both constructions agree elementwise.
    """
    if k < 0:
        raise ValueError("steps must be nonnegative")
    if method == "product":
        if k == 0:
            window, words = 0, {()}
        else:
            j, a = s.table.decompose(k)
            window = j
            leading = s.leading_sets(j)[a]
            words = {
                (b, *tail)
                for b in leading
                for tail in product(s.crystal.elements, repeat=j - 1)
            }
    elif method == "recursion":
        window, words = paths_at_step(s.ground, s.table, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return DemazureCrystal(k, window, frozenset(words), s.table.weyl_word(k))


def _word_key(crystal: PerfectCrystal, word: Word) -> tuple[int, ...]:
    return tuple(crystal.index(b) for b in word)


def character_by_paths(
    s: DemazureSchedule, k: int, threads: int = 1
) -> FormalCharacter:
    """Sum of e^{weight} over the path set after k steps, with exact
    delta-coordinates. Work splits by leading letter; partial sums merge
    in a fixed order so the result never depends on thread count."""
    pc = demazure_paths(s, k)
    ground, crystal = s.ground, s.crystal
    if k == 0:
        return FormalCharacter.monomial(ground.path_weight(0, ()))
    buckets: dict[Element, list[Word]] = {}
    for word in pc.words:
        buckets.setdefault(word[0], []).append(word)
    leads = sorted(buckets, key=crystal.index)
    for lead in leads:
        buckets[lead].sort(key=lambda w: _word_key(crystal, w))

    def partial(lead: Element) -> FormalCharacter:
        return FormalCharacter.from_weights(
            ground.path_weight(pc.window, word) for word in buckets[lead]
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(partial, leads))
    else:
        parts = [partial(lead) for lead in leads]
    total = FormalCharacter.zero()
    for part in parts:
        total = total + part
    return total


def character_by_operators(s: DemazureSchedule, k: int) -> FormalCharacter:
    """Iterated Demazure operators on e^{weight of the ground state},
    applied along the schedule's reflection word."""
    if k < 0:
        raise ValueError("steps must be nonnegative")
    chi = FormalCharacter.monomial(s.ground.window_weight(0))
    ct = s.crystal.cartan
    for m in range(1, k + 1):
        chi = demazure_op(ct, s.table.flat_index(m), chi)
    return chi


def character_json(s: DemazureSchedule, k: int, threads: int = 1) -> dict:
    """JSON view of the step-k character and its path set."""
    pc = demazure_paths(s, k)
    chi = character_by_paths(s, k, threads=threads)
    return {
        "k": k,
        "weyl_word": [int(i) for i in pc.weyl_word],
        "character": chi.to_json_obj(),
        "path_count": pc.path_count,
    }
