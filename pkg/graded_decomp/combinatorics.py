# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Partitions, tableaux and residue combinatorics.

Conventions: nodes are (row, column) with rows counted from the top, both
starting at 1. The residue of a node is column - row modulo e. Permutations
are tuples in one-line notation and compose left to right, so a tableau t
equals the canonical tableau acted on by the permutation d(t) on the right.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import accumulate, zip_longest
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .errors import AlgorithmInvariantError, BoundExceeded, NotRestricted, PreconditionViolation, SizeMismatch

DEFAULT_PARTITION_BOUND = 12

ResidueSequence = Tuple[int, ...]
Permutation = Tuple[int, ...]


class Node(NamedTuple):
    row: int
    col: int
    residue: int

    @classmethod
    def at(cls, row: int, col: int, e: int) -> "Node":
        return cls(row, col, (col - row) % e)


class Dominance(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts; trailing zeros are dropped"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"Partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition parts must be weakly decreasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "3,1", "2,1^2" or "1^4"; "-" and "" give the empty partition"""
        text = text.strip().strip("()").replace(" ", "")
        if text in ("", "-", "0"):
            return cls(())
        parts: List[int] = []
        for chunk in text.split(","):
            if "^" in chunk:
                value, count = chunk.split("^", 1)
                parts.extend([int(value)] * int(count))
            else:
                parts.append(int(chunk))
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, row: int) -> int:
        """Length of a row (1-based), zero beyond the last row"""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "-"

    def __repr__(self) -> str:
        return f"Partition({str(self)})"

    def label(self) -> str:
        """Display label with exponents for repeated parts, e.g. "2,1^2" """
        if not self.parts:
            return "-"
        pieces: List[str] = []
        index = 0
        while index < len(self.parts):
            value = self.parts[index]
            run = 1
            while index + run < len(self.parts) and self.parts[index + run] == value:
                run += 1
            pieces.append(f"{value}^{run}" if run > 1 else str(value))
            index += run
        return ",".join(pieces)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p >= c) for c in range(1, self.parts[0] + 1))
        )

    def nodes(self, e: int) -> List[Node]:
        return [Node.at(r, c, e) for r, p in enumerate(self.parts, 1) for c in range(1, p + 1)]

    def addable_nodes(self, e: int) -> List[Node]:
        nodes = []
        for row in range(1, len(self.parts) + 2):
            if row == 1 or self.part(row - 1) > self.part(row):
                nodes.append(Node.at(row, self.part(row) + 1, e))
        return nodes

    def removable_nodes(self, e: int) -> List[Node]:
        return [
            Node.at(row, self.part(row), e)
            for row in range(1, len(self.parts) + 1)
            if self.part(row) > self.part(row + 1)
        ]

    def add_node(self, row: int) -> "Partition":
        parts = list(self.parts) + [0]
        parts[row - 1] += 1
        return Partition(tuple(parts))

    def remove_node(self, row: int) -> "Partition":
        parts = list(self.parts)
        parts[row - 1] -= 1
        return Partition(tuple(parts))

    def padded(self, d: int) -> Tuple[int, ...]:
        if d < len(self.parts):
            raise PreconditionViolation(f"{self} has more than {d} parts")
        return self.parts + (0,) * (d - len(self.parts))


def is_e_restricted(partition: Partition, e: int) -> bool:
    if e < 2:
        raise PreconditionViolation("e must be at least 2")
    padded = partition.parts + (0,)
    return all(a - b <= e - 1 for a, b in zip(padded, padded[1:]))


def conjugate(partition: Partition) -> Partition:
    return partition.conjugate()


def dominance_leq(a: Partition, b: Partition) -> Dominance:
    """Compare a against b in the dominance order"""
    if a.size != b.size:
        raise SizeMismatch(f"cannot compare {a} ({a.size}) with {b} ({b.size})")
    if a == b:
        return Dominance.EQUAL
    sums = list(
        zip_longest(accumulate(a.parts), accumulate(b.parts), fillvalue=a.size)
    )
    if all(x >= y for x, y in sums):
        return Dominance.GREATER
    if all(x <= y for x, y in sums):
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def dominates(a: Partition, b: Partition) -> bool:
    """a is greater than or equal to b in dominance"""
    return dominance_leq(a, b) in (Dominance.GREATER, Dominance.EQUAL)


def _check_bound(n: int, bound: Optional[int]) -> None:
    limit = DEFAULT_PARTITION_BOUND if bound is None else bound
    if n > limit:
        raise BoundExceeded("n", n, limit)


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result: List[Tuple[int, ...]] = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def partitions_of(n: int, bound: Optional[int] = None) -> List[Partition]:
    """All partitions of n, most dominant first (reverse lexicographic order)"""
    if n < 0:
        raise PreconditionViolation("n must be nonnegative")
    _check_bound(n, bound)
    return [Partition(p) for p in _partitions(n, n)]


def addable_removable(partition: Partition, i: int, e: int) -> Tuple[List[Node], List[Node]]:
    """Addable and removable nodes of residue i, top to bottom"""
    residue = i % e
    addable = [x for x in partition.addable_nodes(e) if x.residue == residue]
    removable = [x for x in partition.removable_nodes(e) if x.residue == residue]
    return addable, removable


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise ValueError(f"tableau rows do not match shape {self.shape}")
        entries = sorted(x for r in self.rows for x in r)
        if entries != list(range(1, self.shape.size + 1)):
            raise ValueError("tableau entries must be 1..n")
        for r in self.rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError(f"row {r} is not increasing")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                raise ValueError("columns are not increasing")

    @classmethod
    def canonical(cls, shape: Partition) -> "StandardTableau":
        rows = []
        start = 1
        for p in shape.parts:
            rows.append(tuple(range(start, start + p)))
            start += p
        return cls(shape, tuple(rows))

    @classmethod
    def from_reading_word(cls, shape: Partition, word: Sequence[int]) -> "StandardTableau":
        rows = []
        start = 0
        for p in shape.parts:
            rows.append(tuple(word[start : start + p]))
            start += p
        return cls(shape, tuple(rows))

    @property
    def size(self) -> int:
        return self.shape.size

    def reading_word(self) -> Tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def label(self) -> str:
        word = self.reading_word()
        if len(word) < 10:
            return "".join(str(x) for x in word)
        return "-".join(str(x) for x in word)

    def __str__(self) -> str:
        return self.label()

    def position_of(self, k: int) -> Tuple[int, int]:
        for r, row in enumerate(self.rows, 1):
            if k in row:
                return r, row.index(k) + 1
        raise ValueError(f"{k} is not an entry of {self}")

    def shape_of_first(self, k: int) -> Partition:
        return Partition(tuple(sum(1 for x in row if x <= k) for row in self.rows))

    def coset_permutation(self) -> Permutation:
        """d(t) in one-line notation: the entry of t at the node holding k in the canonical tableau"""
        return self.reading_word()


def _standard_fillings(shape: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], ...]]:
    n = sum(shape)
    if n == 0:
        return [tuple(() for _ in shape)]
    fillings = []
    for row in range(len(shape)):
        below = shape[row + 1] if row + 1 < len(shape) else 0
        if shape[row] > below:
            smaller = list(shape)
            smaller[row] -= 1
            for filling in _standard_fillings(tuple(smaller)):
                rows = list(filling)
                rows[row] = rows[row] + (n,)
                fillings.append(tuple(rows))
    return fillings


def standard_tableaux(shape: Partition, bound: Optional[int] = None) -> List[StandardTableau]:
    """All standard tableaux of a shape, ordered by reading word; the canonical one is first"""
    _check_bound(shape.size, bound)
    tableaux = [StandardTableau(shape, rows) for rows in _standard_fillings(shape.parts)]
    return sorted(tableaux, key=lambda t: t.reading_word())


def residue_sequence(t: StandardTableau, e: int) -> ResidueSequence:
    residues = []
    for k in range(1, t.size + 1):
        row, col = t.position_of(k)
        residues.append((col - row) % e)
    return tuple(residues)


def residue_label(sequence: Sequence[int]) -> str:
    if all(0 <= x < 10 for x in sequence):
        return "".join(str(x) for x in sequence)
    return ",".join(str(x) for x in sequence)


def tableau_degree(t: StandardTableau, e: int) -> int:
    """Sum over k of addable minus removable res(k)-nodes strictly below k in the shape of 1..k"""
    total = 0
    for k in range(1, t.size + 1):
        row, col = t.position_of(k)
        addable, removable = addable_removable(t.shape_of_first(k), col - row, e)
        total += sum(1 for x in addable if x.row > row)
        total -= sum(1 for x in removable if x.row > row)
    return total


def reduced_word(permutation: Sequence[int], largest: bool = False) -> Tuple[int, ...]:
    """
    Reduced word (i_1, ..., i_l) with w = s_{i_1} ... s_{i_l}, found by
    repeatedly extracting the smallest (or largest) descent.
    """
    w = list(permutation)
    word: List[int] = []
    while True:
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            return tuple(word)
        i = max(descents) if largest else min(descents)
        word.append(i + 1)
        w[i], w[i + 1] = w[i + 1], w[i]


def permutation_length(permutation: Sequence[int]) -> int:
    return sum(
        1
        for i in range(len(permutation))
        for j in range(i + 1, len(permutation))
        if permutation[i] > permutation[j]
    )


@dataclass(frozen=True)
class CosetWord:
    permutation: Permutation
    word: Tuple[int, ...]


def coset_word(t: StandardTableau, largest: bool = False) -> CosetWord:
    permutation = t.coset_permutation()
    return CosetWord(permutation, reduced_word(permutation, largest=largest))


def ladder_monomial(mu: Partition, e: int) -> List[Tuple[int, int]]:
    """
    Divided-power instructions (residue, multiplicity) building A(mu) from the
    empty partition, in application order. Node (a, b) lies on ladder
    (e - 1)(a - 1) + (b - 1); every node of a ladder has the same residue.
    """
    if not is_e_restricted(mu, e):
        raise NotRestricted(f"{mu} is not {e}-restricted")
    ladders: Dict[int, int] = {}
    for node in mu.nodes(e):
        index = (e - 1) * (node.row - 1) + (node.col - 1)
        ladders[index] = ladders.get(index, 0) + 1
    return [(index % e, ladders[index]) for index in sorted(ladders)]


def e_decompose(mu: Partition, e: int, d: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split mu = mu0 + e * mu1 with mu0 e-restricted, both of length d"""
    padded = mu.padded(d)
    restricted = [0] * d
    below = 0
    for i in range(d - 1, -1, -1):
        upper = padded[i + 1] if i + 1 < d else 0
        restricted[i] = below + (padded[i] - upper) % e
        below = restricted[i]
    multiple = []
    for a, b in zip(padded, restricted):
        if (a - b) % e:
            raise AlgorithmInvariantError(f"e-decomposition of {mu} is not integral")
        multiple.append((a - b) // e)
    if any(x < y for x, y in zip(multiple, multiple[1:])):
        raise AlgorithmInvariantError(f"e-decomposition of {mu} is not a partition")
    return tuple(restricted), tuple(multiple)


def hat_tilde(
    lam: Partition, mu: Partition, e: int, d: int
) -> Tuple[Partition, Partition, Partition]:
    """Return (mu hat, lambda tilde, mu tilde) for padding length d"""
    if e < 2 or d < max(lam.length, mu.length, 1):
        raise PreconditionViolation(f"padding d={d} is too small for {lam} and {mu}")
    restricted, multiple = e_decompose(mu, e, d)
    rho = [d - 1 - i for i in range(d)]
    hat = Partition(
        tuple(
            2 * (e - 1) * r + m0 + e * m1
            for r, m0, m1 in zip(rho, reversed(restricted), multiple)
        )
    )
    lift = (e - 1) * (d - 1)
    lam_tilde = Partition(tuple(x + lift for x in lam.padded(d)))
    mu_tilde = Partition(tuple(x + lift for x in mu.padded(d)))
    if hat.size != mu.size + d * (d - 1) * (e - 1):
        raise AlgorithmInvariantError(f"hat of {mu} has the wrong size")
    if not is_e_restricted(hat.conjugate(), e):
        raise AlgorithmInvariantError(f"conjugate of hat({mu}) is not {e}-restricted")
    return hat, lam_tilde, mu_tilde
