# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Level one deformed Fock space and canonical bases.

Vectors are finite sums of Schur symbols s_lambda with Laurent polynomial
coefficients. The quantum group acts through e_i and f_i, whose coefficients
count addable minus removable i-nodes above (for e_i) or below (for f_i) the
node that moves. The canonical basis b+_mu of an e-restricted mu is computed
by the LLT algorithm; for other mu the column is read off a restricted column
of larger rank through the hat/tilde transform and the shift of mu.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    Dominance,
    Partition,
    addable_removable,
    dominance_leq,
    hat_tilde,
    is_e_restricted,
    ladder_monomial,
    partitions_of,
)
from .errors import AlgorithmInvariantError, NonTermination, PreconditionViolation
from .exactmath import LaurentPoly, quantum_factorial, quantum_integer

MAX_LLT_STEPS = 10_000
MAX_AFFINE_STEPS = 100_000
CONVENTIONS = ("v", "v-inverse")


def _sort_key(partition: Partition) -> Tuple[int, Tuple[int, ...]]:
    return (-partition.size, tuple(-p for p in partition.parts))


class FockVector:
    """Finite formal sum of Schur symbols with Laurent polynomial coefficients"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[Partition, LaurentPoly]] = None) -> None:
        self._coeffs: Dict[Partition, LaurentPoly] = {}
        if coeffs:
            for partition, coefficient in coeffs.items():
                if not coefficient.is_zero():
                    self._coeffs[partition] = coefficient

    @classmethod
    def basis(cls, partition: Partition) -> "FockVector":
        return cls({partition: LaurentPoly.one()})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls.basis(Partition(()))

    def coefficient(self, partition: Partition) -> LaurentPoly:
        return self._coeffs.get(partition, LaurentPoly())

    def support(self) -> List[Partition]:
        """Supported partitions, most dominant first"""
        return sorted(self._coeffs, key=_sort_key)

    def items(self) -> List[Tuple[Partition, LaurentPoly]]:
        return [(p, self._coeffs[p]) for p in self.support()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        result = dict(self._coeffs)
        for partition, coefficient in other._coeffs.items():
            result[partition] = result.get(partition, LaurentPoly()) + coefficient
        return FockVector(result)

    def __neg__(self) -> "FockVector":
        return FockVector({p: -c for p, c in self._coeffs.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def scale(self, factor: LaurentPoly) -> "FockVector":
        return FockVector({p: factor * c for p, c in self._coeffs.items()})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        pieces = []
        for partition, coefficient in self.items():
            symbol = f"s_({partition})"
            if coefficient == 1:
                pieces.append(symbol)
            elif len(coefficient.terms) == 1:
                pieces.append(f"{coefficient} {symbol}")
            else:
                pieces.append(f"({coefficient}) {symbol}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FockVector({self})"


def f_apply(i: int, x: FockVector, e: int) -> FockVector:
    """f_i s_lambda = sum over addable i-nodes of v^(addable - removable i-nodes below) s_mu"""
    result: Dict[Partition, LaurentPoly] = {}
    for partition, coefficient in x.items():
        addable, removable = addable_removable(partition, i, e)
        for node in addable:
            below = sum(1 for a in addable if a.row > node.row)
            below -= sum(1 for r in removable if r.row > node.row)
            target = partition.add_node(node.row)
            term = coefficient.shift(below)
            result[target] = result.get(target, LaurentPoly()) + term
    return FockVector(result)


def e_apply(i: int, x: FockVector, e: int) -> FockVector:
    """e_i s_lambda = sum over removable i-nodes of v^-(addable - removable i-nodes above) s_mu"""
    result: Dict[Partition, LaurentPoly] = {}
    for partition, coefficient in x.items():
        addable, removable = addable_removable(partition, i, e)
        for node in removable:
            above = sum(1 for a in addable if a.row < node.row)
            above -= sum(1 for r in removable if r.row < node.row)
            target = partition.remove_node(node.row)
            term = coefficient.shift(-above)
            result[target] = result.get(target, LaurentPoly()) + term
    return FockVector(result)


def f_divided(i: int, k: int, x: FockVector, e: int) -> FockVector:
    """Divided power f_i^(k) = f_i^k / [k]!"""
    if k < 1:
        raise PreconditionViolation("divided powers need k >= 1")
    for _ in range(k):
        x = f_apply(i, x, e)
    if k == 1:
        return x
    factorial = quantum_factorial(k)
    return FockVector({p: c.divide_exact(factorial) for p, c in x.items()})


def apply_monomial(instructions: Iterable[Tuple[int, int]], e: int) -> FockVector:
    """Apply divided powers to the vacuum, first instruction first"""
    vector = FockVector.vacuum()
    for residue, multiplicity in instructions:
        vector = f_divided(residue, multiplicity, vector, e)
    return vector


def ladder_vector(mu: Partition, e: int) -> FockVector:
    """A(mu): the ladder monomial of mu applied to the vacuum"""
    vector = apply_monomial(ladder_monomial(mu, e), e)
    if vector.coefficient(mu) != 1:
        raise AlgorithmInvariantError(f"A({mu}) has leading coefficient {vector.coefficient(mu)}")
    for partition, coefficient in vector.items():
        if dominance_leq(partition, mu) not in (Dominance.GREATER, Dominance.EQUAL):
            raise AlgorithmInvariantError(f"A({mu}) is supported on {partition}")
        if not coefficient.has_nonnegative_coefficients():
            raise AlgorithmInvariantError(f"A({mu}) has coefficient {coefficient} at {partition}")
    return vector


def _bar_symmetrize_nonpositive(alpha: LaurentPoly) -> LaurentPoly:
    """Bar-invariant p with alpha - p in vZ[v]"""
    terms: Dict[int, int] = {}
    for exponent, coefficient in alpha.terms.items():
        if exponent == 0:
            terms[0] = coefficient
        elif exponent < 0:
            terms[exponent] = coefficient
            terms[-exponent] = coefficient
    return LaurentPoly(terms)


@lru_cache(maxsize=None)
def canonical_basis_vector(mu: Partition, e: int) -> FockVector:
    """b+_mu for an e-restricted partition mu"""
    vector = ladder_vector(mu, e)
    for _ in range(MAX_LLT_STEPS):
        offending = [
            nu
            for nu, alpha in vector.items()
            if nu != mu and is_e_restricted(nu, e) and not alpha.in_positive_part()
        ]
        if not offending:
            break
        # least dominant first; b+_nu only moves coefficients at partitions dominating nu,
        # and the loop repeats until no restricted coefficient is offending
        nu = offending[-1]
        correction = _bar_symmetrize_nonpositive(vector.coefficient(nu))
        vector = vector - canonical_basis_vector(nu, e).scale(correction)
    else:
        raise NonTermination(f"LLT reduction of {mu} did not terminate")

    for nu, alpha in vector.items():
        if nu == mu:
            if alpha != 1:
                raise AlgorithmInvariantError(f"b+({mu}) has diagonal {alpha}")
        elif not alpha.in_positive_part():
            raise AlgorithmInvariantError(f"b+({mu}) has coefficient {alpha} at {nu}")
    return vector


def llt_canonical(n: int, e: int, bound: Optional[int] = None) -> Dict[Partition, FockVector]:
    """Canonical basis vectors of all e-restricted partitions of n"""
    if e < 2:
        raise PreconditionViolation("e must be at least 2")
    return {
        mu: canonical_basis_vector(mu, e)
        for mu in partitions_of(n, bound)
        if is_e_restricted(mu, e)
    }


def affine_normalize(nu: Sequence[int], e: int) -> Tuple[Tuple[int, ...], int]:
    """
    Normal form of nu under the level e affine symmetric group action and the
    length of the longest element of its stabilizer.
    """
    if e < 2 or not nu:
        raise PreconditionViolation("affine normalization needs e >= 2 and d >= 1")
    work = list(nu)
    d = len(work)
    if d == 1:
        return tuple(work), 0
    for _ in range(MAX_AFFINE_STEPS):
        work.sort(reverse=True)
        if work[0] - work[-1] > e:
            work[0], work[-1] = work[-1] + e, work[0] - e
            continue
        break
    else:
        raise NonTermination(f"affine normalization of {tuple(nu)} did not terminate")

    edges = [(i, i + 1) for i in range(d - 1) if work[i] == work[i + 1]]
    if work[0] - work[-1] == e:
        edges.append((d - 1, 0))
    if len(edges) >= d:
        raise AlgorithmInvariantError(f"stabilizer of {tuple(work)} is infinite")

    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    sizes: Dict[int, int] = {}
    for x in range(d):
        root = find(x)
        sizes[root] = sizes.get(root, 0) + 1
    ell = sum(m * (m - 1) // 2 for m in sizes.values())
    return tuple(work), ell


def shift_of(mu: Partition, e: int, d: int) -> int:
    padded = mu.padded(d)
    shifted = [x + d - 1 - i for i, x in enumerate(padded)]
    _, ell = affine_normalize(shifted, e)
    return d * (d - 1) // 2 - ell


def minimal_padding(mu: Partition) -> int:
    return max(2, mu.length)


def eplus_column(
    mu: Partition,
    e: int,
    d: Optional[int] = None,
    via_hat: bool = False,
    bound: Optional[int] = None,
) -> Dict[Partition, LaurentPoly]:
    """
    Nonzero entries e+_{lambda mu}(v), lambda a partition of |mu|.

    Restricted columns come straight from b+_mu unless ``via_hat`` is set.
    Other columns use e+_{lambda mu}(v) = v^shift(mu) e+_{lambda~' mu^'}(v^-1),
    with rows of more than d parts left at zero since they cannot dominate mu.
    """
    if is_e_restricted(mu, e) and not via_hat:
        return {p: c for p, c in canonical_basis_vector(mu, e).items() if p.size == mu.size}
    pad = d if d is not None else minimal_padding(mu)
    hat, _, _ = hat_tilde(mu, mu, e, pad)
    target = canonical_basis_vector(hat.conjugate(), e)
    shift = shift_of(mu, e, pad)
    column: Dict[Partition, LaurentPoly] = {}
    for lam in partitions_of(mu.size, bound):
        if lam.length > pad:
            continue
        _, lam_tilde, _ = hat_tilde(lam, mu, e, pad)
        coefficient = target.coefficient(lam_tilde.conjugate())
        if not coefficient.is_zero():
            column[lam] = coefficient.bar().shift(shift)
    return column


def shift_consistency(mu: Partition, e: int, d: Optional[int] = None) -> LaurentPoly:
    """v^-shift(mu) e+_{mu~' mu^'}(v); equals 1 when the shift is right"""
    pad = d if d is not None else minimal_padding(mu)
    hat, _, mu_tilde = hat_tilde(mu, mu, e, pad)
    coefficient = canonical_basis_vector(hat.conjugate(), e).coefficient(mu_tilde.conjugate())
    return coefficient.shift(-shift_of(mu, e, pad))


@dataclass
class DecompositionMatrix:
    """
    Square matrix indexed by partitions of n, most dominant first.

    ``kind`` is "d" for graded decomposition numbers d_{lambda mu}(v) and
    "eplus" for canonical basis coefficients e+_{lambda mu}(v) = d_{lambda mu}(v^-1).
    ``columns`` lists the columns that were computed; the rest are unknown.
    """

    n: int
    e: int
    rows: List[Partition]
    columns: List[Partition]
    entries: Dict[Tuple[Partition, Partition], LaurentPoly] = field(default_factory=dict)
    kind: str = "d"

    def entry(self, lam: Partition, mu: Partition) -> LaurentPoly:
        return self.entries.get((lam, mu), LaurentPoly())

    def column(self, mu: Partition) -> Dict[Partition, LaurentPoly]:
        return {lam: c for (lam, m), c in self.entries.items() if m == mu}

    def bar(self) -> "DecompositionMatrix":
        return DecompositionMatrix(
            self.n,
            self.e,
            list(self.rows),
            list(self.columns),
            {k: c.bar() for k, c in self.entries.items()},
            "eplus" if self.kind == "d" else "d",
        )

    def in_convention(self, convention: str) -> "DecompositionMatrix":
        """Entries as d(v) for "v" or as d(v^-1) for "v-inverse" """
        if convention not in CONVENTIONS:
            raise PreconditionViolation(f"Unknown convention: {convention}")
        wanted = "d" if convention == "v" else "eplus"
        return self if self.kind == wanted else self.bar()

    def specialize(self) -> Dict[Tuple[Partition, Partition], int]:
        """Classical decomposition numbers (v = 1)"""
        return {k: int(c.evaluate(1)) for k, c in self.entries.items()}

    def conjugated(self) -> "DecompositionMatrix":
        """The matrix whose (lambda, mu) entry is this matrix's (lambda', mu') entry"""
        return DecompositionMatrix(
            self.n,
            self.e,
            list(self.rows),
            [m.conjugate() for m in self.columns],
            {(lam.conjugate(), mu.conjugate()): c for (lam, mu), c in self.entries.items()},
            self.kind,
        )

    def restricted_to(self, columns: Iterable[Partition]) -> "DecompositionMatrix":
        keep = set(columns)
        return DecompositionMatrix(
            self.n,
            self.e,
            list(self.rows),
            [m for m in self.columns if m in keep],
            {k: c for k, c in self.entries.items() if k[1] in keep},
            self.kind,
        )

    def diff(self, other: "DecompositionMatrix") -> List[Tuple[Partition, Partition, str, str]]:
        """Entries that differ on the columns both matrices computed"""
        other = other if other.kind == self.kind else other.bar()
        shared = [m for m in self.columns if m in set(other.columns)]
        differences = []
        for mu in shared:
            for lam in self.rows:
                a, b = self.entry(lam, mu), other.entry(lam, mu)
                if a != b:
                    differences.append((lam, mu, str(a), str(b)))
        return differences

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "e": self.e,
            "kind": self.kind,
            "rows": [str(p) for p in self.rows],
            "columns": [str(p) for p in self.columns],
            "entries": [
                {"row": str(lam), "column": str(mu), "value": self.entries[(lam, mu)].to_pairs()}
                for lam in self.rows
                for mu in self.columns
                if (lam, mu) in self.entries
            ],
        }

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "DecompositionMatrix":
        return cls(
            int(payload["n"]),
            int(payload["e"]),
            [Partition.parse(p) for p in payload["rows"]],
            [Partition.parse(p) for p in payload["columns"]],
            {
                (Partition.parse(item["row"]), Partition.parse(item["column"])): (
                    LaurentPoly.from_pairs(item["value"])
                )
                for item in payload["entries"]
            },
            str(payload.get("kind", "d")),
        )


def _check_eplus_column(mu: Partition, column: Mapping[Partition, LaurentPoly]) -> None:
    for lam, coefficient in column.items():
        if lam == mu:
            if coefficient != 1:
                raise AlgorithmInvariantError(f"e+ diagonal at {mu} is {coefficient}")
            continue
        if dominance_leq(lam, mu) != Dominance.GREATER:
            raise AlgorithmInvariantError(f"e+ column {mu} is nonzero at {lam}")
        if not coefficient.in_positive_part():
            raise AlgorithmInvariantError(f"e+ entry ({lam}, {mu}) = {coefficient} not in vZ[v]")
    if mu not in column:
        raise AlgorithmInvariantError(f"e+ column {mu} has no diagonal entry")


def eplus_matrix(
    n: int,
    e: int,
    d: Optional[int] = None,
    bound: Optional[int] = None,
    threads: int = 1,
) -> DecompositionMatrix:
    """Canonical basis coefficients e+_{lambda mu}(v) for all partitions of n"""
    if e < 2:
        raise PreconditionViolation("e must be at least 2")
    partitions = partitions_of(n, bound)

    def build(mu: Partition) -> Dict[Partition, LaurentPoly]:
        column = eplus_column(mu, e, d=d, bound=bound)
        _check_eplus_column(mu, column)
        return column

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(build, partitions))
    else:
        columns = [build(mu) for mu in partitions]

    entries = {
        (lam, mu): coefficient
        for mu, column in zip(partitions, columns)
        for lam, coefficient in column.items()
    }
    return DecompositionMatrix(n, e, list(partitions), list(partitions), entries, kind="eplus")


def graded_decomposition_matrix(
    n: int,
    e: int,
    d: Optional[int] = None,
    allow_small_e: bool = False,
    bound: Optional[int] = None,
    threads: int = 1,
) -> DecompositionMatrix:
    """d_{lambda mu}(v) = e+_{lambda mu}(v^-1)"""
    if e < 4 and not allow_small_e:
        raise PreconditionViolation(f"e = {e} needs the small-e flag; columns are only guaranteed for e >= 4")
    return eplus_matrix(n, e, d=d, bound=bound, threads=threads).bar()


def check_commutators(m_max: int, e: int) -> List[str]:
    """
    Check (e_i f_i - f_i e_i) s_lambda = [weight] s_lambda and e_i f_j = f_j e_i
    for i != j on every partition of size at most m_max. Returns failure messages.
    """
    failures: List[str] = []
    for m in range(m_max + 1):
        for lam in partitions_of(m, bound=max(m_max, m)):
            s = FockVector.basis(lam)
            for i in range(e):
                addable, removable = addable_removable(lam, i, e)
                weight = len(addable) - len(removable)
                lhs = e_apply(i, f_apply(i, s, e), e) - f_apply(i, e_apply(i, s, e), e)
                if lhs != s.scale(quantum_integer(weight)):
                    failures.append(f"[e_{i}, f_{i}] s_({lam}) = {lhs}, expected [{weight}]")
                for j in range(e):
                    if j == i:
                        continue
                    if e_apply(i, f_apply(j, s, e), e) != f_apply(j, e_apply(i, s, e), e):
                        failures.append(f"e_{i} f_{j} != f_{j} e_{i} on s_({lam})")
    return failures
