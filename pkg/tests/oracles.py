"""Independent small-scale oracles used by the test suite.

Everything here is implemented from first principles on purpose: tableau
enumeration, the charge statistic, and partition counting serve as
cross-checks for the library's polynomial outputs, so they must not
share any code with it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def partitions_of(total: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """All integer partitions of ``total`` with parts bounded by ``max_part``."""
    if max_part is None:
        max_part = total
    if total == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions_of(total - first, first):
            out.append((first, *rest))
    return out


@lru_cache(maxsize=None)
def partition_count(total: int) -> int:
    """Number of integer partitions of ``total`` (Euler's recurrence)."""
    if total < 0:
        return 0
    if total == 0:
        return 1
    result = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > total and g2 > total:
            break
        sign = 1 if k % 2 else -1
        if g1 <= total:
            result += sign * partition_count(total - g1)
        if g2 <= total:
            result += sign * partition_count(total - g2)
        k += 1
    return result


def colored_partition_counts(colors: int, degree: int) -> list[int]:
    """Coefficients of prod_{i>=1} (1 - q^i)^(-colors) up to ``degree``."""
    series = [0] * (degree + 1)
    series[0] = 1
    for _ in range(colors):
        for part in range(1, degree + 1):
            # multiply by 1/(1 - q^part): running prefix sums with stride
            for k in range(part, degree + 1):
                series[k] += series[k - part]
    return series


# ---------------------------------------------------------------------------
# Semistandard tableaux and the charge statistic
# ---------------------------------------------------------------------------


def semistandard_tableaux(
    shape: tuple[int, ...], content: tuple[int, ...]
) -> list[tuple[tuple[int, ...], ...]]:
    """All SSYT of the given shape and content, rows as tuples of entries.

    Entries are 1-based; ``content[i]`` is the multiplicity of ``i + 1``.
    Rows weakly increase, columns strictly increase.
    """
    if sum(shape) != sum(content):
        return []
    rows = len(shape)
    letters = len(content)

    results: list[tuple[tuple[int, ...], ...]] = []

    def fill(
        row: int,
        col: int,
        grid: list[list[int]],
        remaining: list[int],
    ) -> None:
        if row == rows:
            results.append(tuple(tuple(r) for r in grid))
            return
        if col == shape[row]:
            fill(row + 1, 0, grid, remaining)
            return
        low = 1
        if col > 0:
            low = max(low, grid[row][col - 1])
        if row > 0:
            low = max(low, grid[row - 1][col] + 1)
        for entry in range(low, letters + 1):
            if remaining[entry - 1] == 0:
                continue
            remaining[entry - 1] -= 1
            grid[row].append(entry)
            fill(row, col + 1, grid, remaining)
            grid[row].pop()
            remaining[entry - 1] += 1

    fill(0, 0, [[] for _ in range(rows)], list(content))
    return results


def reading_word(tableau: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Row reading word, bottom row first, each row left to right."""
    word: list[int] = []
    for row in reversed(tableau):
        word.extend(row)
    return tuple(word)


def charge_of_standard_word(word: tuple[int, ...]) -> int:
    """Charge of a word containing each of 1..m exactly once.

    Letter 1 carries index 0; each next letter keeps the previous index
    when it sits to the left of its predecessor and increments it when
    it sits to the right.  The charge is the sum of the indices.
    """
    index = 0
    total = 0
    position = {letter: pos for pos, letter in enumerate(word)}
    for letter in range(2, len(word) + 1):
        if position[letter] > position[letter - 1]:
            index += 1
        total += index
    return total


def charge(word: tuple[int, ...]) -> int:
    """Lascoux-Schutzenberger charge of a word with partition content.

    Repeatedly extract a standard subword by scanning right to left,
    picking for each needed letter 1, 2, 3, ... the first occurrence
    encountered, cycling around the word when the scan runs off the
    left end.  The charge is the sum of the standard charges of the
    extracted subwords.
    """
    remaining = list(word)
    total = 0
    while remaining:
        largest = max(remaining)
        picked_positions: list[int] = []
        pos = len(remaining) - 1
        for needed in range(1, largest + 1):
            steps = 0
            while steps < len(remaining):
                if remaining[pos] == needed and pos not in picked_positions:
                    picked_positions.append(pos)
                    break
                pos -= 1
                if pos < 0:
                    pos = len(remaining) - 1
                steps += 1
        subword_positions = sorted(picked_positions)
        subword = tuple(remaining[p] for p in subword_positions)
        renumbered = tuple(sorted(range(len(subword)), key=lambda t: subword[t]))
        standard = tuple(renumbered.index(t) + 1 for t in range(len(subword)))
        total += charge_of_standard_word(standard)
        for p in sorted(picked_positions, reverse=True):
            remaining.pop(p)
    return total


def kostka_foulkes_by_charge(
    shape: tuple[int, ...], content: tuple[int, ...]
) -> dict[int, int]:
    """Kostka-Foulkes coefficients {power: count} via the charge statistic."""
    counts: dict[int, int] = {}
    for tab in semistandard_tableaux(shape, content):
        c = charge(reading_word(tab))
        counts[c] = counts.get(c, 0) + 1
    return counts


def kostka_number(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Number of SSYT of the given shape and content."""
    return len(semistandard_tableaux(shape, content))
