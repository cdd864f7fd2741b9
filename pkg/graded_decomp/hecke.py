# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Exact matrix models of the Hecke algebra H_n at q a primitive e-th root of unity.

Elements are combinations of the basis T_w, w in S_n, with coefficients in
Q(z). Modules are right modules: a matrix acts on row vectors from the right
and the matrix of a product ab is the product of the matrices of a and b.

Specht modules are quotients (x_lambda H_n + N) / N inside the regular
representation, where N is spanned by the Murphy basis elements of shapes
strictly dominating lambda. On top of their T_k matrices this module builds
the Jucys-Murphy elements, the residue idempotents e(i), the graded
generators t_a and sigma_k, checks the graded relations and the grading of
the basis v_t, and solves for graded decomposition numbers from characters.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    Dominance,
    Partition,
    Permutation,
    ResidueSequence,
    StandardTableau,
    coset_word,
    dominance_leq,
    is_e_restricted,
    partitions_of,
    reduced_word,
    residue_label,
    residue_sequence,
    standard_tableaux,
    tableau_degree,
)
from .errors import (
    AlgorithmInvariantError,
    BasisError,
    BoundExceeded,
    DivisionError,
    E2Unsupported,
    GradednessError,
    HomogeneityError,
    MismatchError,
    PreconditionViolation,
    RankError,
    ShapeMismatch,
    SingularError,
    SolveError,
)
from .exactmath import (
    CycloField,
    CycloMatrix,
    CycloNum,
    EchelonBasis,
    LaurentPoly,
    cyclotomic_field,
    generalized_eigenprojection,
    matrix_inverse,
    matrix_rank,
    nilpotent_inverse,
)
from .fock import DecompositionMatrix

DEFAULT_HECKE_BOUND = 6

GradedCharacter = Dict[ResidueSequence, LaurentPoly]


def _check_bound(n: int, bound: Optional[int]) -> None:
    limit = DEFAULT_HECKE_BOUND if bound is None else bound
    if n > limit:
        raise BoundExceeded("Hecke rank n", n, limit)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> Tuple[Permutation, ...]:
    return tuple(permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def permutation_index(n: int) -> Dict[Permutation, int]:
    return {w: i for i, w in enumerate(all_permutations(n))}


def swap_values(w: Permutation, k: int) -> Permutation:
    """w s_k: exchange the values k and k+1 in one-line notation"""
    return tuple(k + 1 if x == k else k if x == k + 1 else x for x in w)


def inverse_permutation(w: Permutation) -> Permutation:
    result = [0] * len(w)
    for position, value in enumerate(w, 1):
        result[value - 1] = position
    return tuple(result)


class HeckeElement:
    """Linear combination of the T_w basis"""

    __slots__ = ("n", "field", "coeffs")

    def __init__(self, n: int, field: CycloField, coeffs: Mapping[Permutation, CycloNum]) -> None:
        self.n = n
        self.field = field
        self.coeffs: Dict[Permutation, CycloNum] = {
            w: c for w, c in coeffs.items() if not c.is_zero()
        }

    @classmethod
    def basis(cls, n: int, field: CycloField, w: Sequence[int]) -> "HeckeElement":
        return cls(n, field, {tuple(w): field.one})

    @classmethod
    def identity(cls, n: int, field: CycloField) -> "HeckeElement":
        return cls.basis(n, field, tuple(range(1, n + 1)))

    @classmethod
    def generator(cls, n: int, field: CycloField, k: int) -> "HeckeElement":
        return cls.basis(n, field, swap_values(tuple(range(1, n + 1)), k))

    def coefficient(self, w: Sequence[int]) -> CycloNum:
        return self.coeffs.get(tuple(w), self.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})T{''.join(map(str, w))}" for w, c in sorted(self.coeffs.items()))
        return f"HeckeElement({terms or '0'})"

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        result = dict(self.coeffs)
        for w, c in other.coeffs.items():
            result[w] = result.get(w, self.field.zero) + c
        return HeckeElement(self.n, self.field, result)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, self.field, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, value: CycloNum) -> "HeckeElement":
        return HeckeElement(self.n, self.field, {w: value * c for w, c in self.coeffs.items()})

    def times_generator(self, k: int) -> "HeckeElement":
        """Right multiplication by T_k"""
        q = self.field.q
        q_minus_one = q - 1
        zero = self.field.zero
        result: Dict[Permutation, CycloNum] = {}
        for w, c in self.coeffs.items():
            target = swap_values(w, k)
            if w.index(k) < w.index(k + 1):
                result[target] = result.get(target, zero) + c
            else:
                result[target] = result.get(target, zero) + q * c
                result[w] = result.get(w, zero) + q_minus_one * c
        return HeckeElement(self.n, self.field, result)

    def times_word(self, word: Sequence[int]) -> "HeckeElement":
        element = self
        for k in word:
            element = element.times_generator(k)
        return element

    def times_basis(self, w: Sequence[int]) -> "HeckeElement":
        """Right multiplication by T_w"""
        return self.times_word(reduced_word(w))

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        total = HeckeElement(self.n, self.field, {})
        for w, c in other.coeffs.items():
            total = total + self.times_basis(w).scale(c)
        return total

    def star(self) -> "HeckeElement":
        """Anti-involution T_w -> T_{w^-1}"""
        return HeckeElement(
            self.n, self.field, {inverse_permutation(w): c for w, c in self.coeffs.items()}
        )

    def to_vector(self) -> List[CycloNum]:
        vector = [self.field.zero] * len(all_permutations(self.n))
        index = permutation_index(self.n)
        for w, c in self.coeffs.items():
            vector[index[w]] = c
        return vector


def t_mul(
    a: HeckeElement,
    b: HeckeElement,
    e: Optional[int] = None,
    n: Optional[int] = None,
    bound: Optional[int] = None,
) -> HeckeElement:
    """Product in H_n using T_w T_k = T_{w s_k} or q T_{w s_k} + (q-1) T_w"""
    rank = a.n if n is None else n
    _check_bound(rank, bound)
    if e is not None and a.field.e != e:
        raise PreconditionViolation(f"element lives in Q(z_{a.field.e}), not Q(z_{e})")
    return a * b


def young_subgroup(shape: Partition) -> List[Permutation]:
    """Permutations preserving each block of the canonical tableau's rows"""
    blocks = []
    start = 1
    for p in shape.parts:
        blocks.append(list(range(start, start + p)))
        start += p
    elements = []
    for images in product(*(permutations(block) for block in blocks)):
        w: List[int] = []
        for image in images:
            w.extend(image)
        elements.append(tuple(w))
    return elements


def x_element(shape: Partition, field: CycloField) -> HeckeElement:
    """x_mu = sum of T_w over the row stabilizer of the canonical tableau"""
    return HeckeElement(shape.size, field, {w: field.one for w in young_subgroup(shape)})


def murphy_m(s: StandardTableau, t: StandardTableau, e: int) -> HeckeElement:
    """m_st = T*_{d(s)} x_mu T_{d(t)}"""
    if s.shape != t.shape:
        raise ShapeMismatch(f"{s} and {t} have different shapes")
    field = cyclotomic_field(e)
    n = s.size
    left = HeckeElement.basis(n, field, inverse_permutation(s.coset_permutation()))
    return (left * x_element(s.shape, field)).times_basis(t.coset_permutation())


def psi_involution(h: HeckeElement) -> HeckeElement:
    """Algebra involution T_i -> q - 1 - T_i"""
    q_minus_one = h.field.q - 1
    total = HeckeElement(h.n, h.field, {})
    for w, c in h.coeffs.items():
        image = HeckeElement.identity(h.n, h.field)
        for k in reduced_word(w):
            image = image.scale(q_minus_one) - image.times_generator(k)
        total = total + image.scale(c)
    return total


def check_psi(n: int, e: int, samples: int = 10, seed: int = 0) -> List[str]:
    """Psi squares to the identity on every T_w and is multiplicative on random pairs"""
    field = cyclotomic_field(e)
    failures = []
    elements = all_permutations(n)
    for w in elements:
        basis = HeckeElement.basis(n, field, w)
        if psi_involution(psi_involution(basis)) != basis:
            failures.append(f"Psi(Psi(T_{''.join(map(str, w))})) != T_w")
    rng = random.Random(seed)

    def sample() -> HeckeElement:
        chosen = rng.sample(elements, min(3, len(elements)))
        return HeckeElement(n, field, {w: field(rng.randint(-2, 2)) for w in chosen})

    for _ in range(samples):
        a, b = sample(), sample()
        if psi_involution(a * b) != psi_involution(a) * psi_involution(b):
            failures.append(f"Psi is not multiplicative on {a!r}, {b!r}")
    return failures


class SubmoduleModel:
    """Subspace of H_n (as coordinate vectors on T_w) with an echelon basis"""

    def __init__(self, n: int, field: CycloField) -> None:
        self.n = n
        self.field = field
        self.basis = EchelonBasis(field, len(all_permutations(n)))
        self.labels: List[Hashable] = []

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def add(self, element: HeckeElement, label: Optional[Hashable] = None) -> bool:
        added = self.basis.insert(element.to_vector(), label)
        if added and label is not None:
            self.labels.append(label)
        return added

    def contains(self, element: HeckeElement) -> bool:
        return self.basis.contains(element.to_vector())

    def express(self, element: HeckeElement) -> Optional[Dict[Hashable, CycloNum]]:
        return self.basis.express(element.to_vector())


@dataclass
class SpechtQuotient:
    """The quotient model behind a Specht module: N plus the labeled x_lambda T_d(t)"""

    model: SubmoduleModel
    elements: List[HeckeElement]


@dataclass
class SpechtRep:
    """
    Matrix representation on a Specht module (or the regular module when
    ``shape`` is None). Lists are indexed from zero: ``T[k - 1]`` is T_k.
    """

    shape: Optional[Partition]
    e: int
    field: CycloField
    labels: List[str]
    tableaux: List[StandardTableau]
    T: List[CycloMatrix]
    residue_candidates: List[ResidueSequence]
    X: List[CycloMatrix] = field(default_factory=list)
    idempotents: Dict[ResidueSequence, CycloMatrix] = field(default_factory=dict)
    t: List[CycloMatrix] = field(default_factory=list)
    sigma: List[CycloMatrix] = field(default_factory=list)
    degrees: Optional[List[int]] = None
    blocks: Optional[List[ResidueSequence]] = None
    change_of_basis: Optional[CycloMatrix] = field(default=None, repr=False)
    quotient: Optional[SpechtQuotient] = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.T) + 1 if self.T else (self.shape.size if self.shape else 1)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    @property
    def name(self) -> str:
        shape = f"S^({self.shape})" if self.shape is not None else f"H_{self.n}"
        return f"{shape} e={self.e}"

    def identity(self) -> CycloMatrix:
        return CycloMatrix.identity(self.field, self.dim)

    def zero(self) -> CycloMatrix:
        return CycloMatrix.zeros(self.field, self.dim)

    def idempotent(self, sequence: ResidueSequence) -> CycloMatrix:
        return self.idempotents.get(tuple(sequence), self.zero())


def _residue_candidates(shapes: Sequence[Partition], e: int) -> List[ResidueSequence]:
    seen: Dict[ResidueSequence, None] = {}
    for shape in shapes:
        for t in standard_tableaux(shape):
            seen.setdefault(residue_sequence(t, e), None)
    return list(seen)


def specht_matrices(shape: Partition, e: int, bound: Optional[int] = None) -> SpechtRep:
    """T_k matrices on S^lambda in the basis x_lambda T_d(t) + N"""
    n = shape.size
    _check_bound(n, bound)
    if n == 0:
        raise PreconditionViolation("Specht modules need n >= 1")
    field = cyclotomic_field(e)
    model = SubmoduleModel(n, field)
    for mu in partitions_of(n, bound=max(n, 1)):
        if dominance_leq(mu, shape) != Dominance.GREATER:
            continue
        x_mu = x_element(mu, field)
        tableaux_mu = standard_tableaux(mu)
        for s in tableaux_mu:
            left = HeckeElement.basis(n, field, inverse_permutation(s.coset_permutation())) * x_mu
            for t in tableaux_mu:
                if not model.add(left.times_basis(t.coset_permutation())):
                    raise RankError(f"Murphy elements of shape {mu} are dependent")

    tableaux = standard_tableaux(shape)
    x_lambda = x_element(shape, field)
    elements = [x_lambda.times_basis(t.coset_permutation()) for t in tableaux]
    for index, element in enumerate(elements):
        if not model.add(element, label=index):
            raise RankError(f"Specht basis vector {tableaux[index]} of {shape} is dependent")

    matrices = []
    for k in range(1, n):
        rows = []
        for element in elements:
            coordinates = model.express(element.times_generator(k))
            if coordinates is None:
                raise RankError(f"x_lambda T_d(t) T_{k} left the cell ideal of {shape}")
            rows.append([coordinates.get(j, field.zero) for j in range(len(tableaux))])
        matrices.append(CycloMatrix(field, rows))

    return SpechtRep(
        shape=shape,
        e=e,
        field=field,
        labels=[t.label() for t in tableaux],
        tableaux=tableaux,
        T=matrices,
        residue_candidates=_residue_candidates([shape], e),
        quotient=SpechtQuotient(model, elements),
    )


def regular_representation(n: int, e: int, bound: Optional[int] = None) -> SpechtRep:
    """Right regular module of H_n in the T_w basis"""
    _check_bound(n, bound)
    field = cyclotomic_field(e)
    elements = all_permutations(n)
    matrices = []
    for k in range(1, n):
        rows = [HeckeElement.basis(n, field, w).times_generator(k).to_vector() for w in elements]
        matrices.append(CycloMatrix(field, rows))
    return SpechtRep(
        shape=None,
        e=e,
        field=field,
        labels=["".join(map(str, w)) for w in elements],
        tableaux=[],
        T=matrices,
        residue_candidates=_residue_candidates(partitions_of(n, bound=max(n, 1)), e),
    )


def jm_matrices(rep: SpechtRep) -> SpechtRep:
    """X_1 = 1 and X_{k+1} = q^-1 T_k X_k T_k"""
    q_inverse = rep.field.q.inverse()
    X = [rep.identity()]
    for k in range(1, rep.n):
        T = rep.T[k - 1]
        X.append((T * X[-1] * T).scale(q_inverse))
    for a in range(len(X)):
        if matrix_rank(X[a]) != rep.dim:
            raise AlgorithmInvariantError(f"X_{a + 1} is singular on {rep.name}")
        for b in range(a + 1, len(X)):
            if not X[a].commutes_with(X[b]):
                raise AlgorithmInvariantError(f"X_{a + 1} and X_{b + 1} do not commute on {rep.name}")
    return replace(rep, X=X)


def residue_idempotents(rep: SpechtRep) -> SpechtRep:
    """e(i) as products of generalized eigenprojections of the X_a"""
    if not rep.X:
        rep = jm_matrices(rep)
    projections: Dict[Tuple[int, int], CycloMatrix] = {}

    def projection(a: int, residue: int) -> CycloMatrix:
        key = (a, residue)
        if key not in projections:
            projections[key] = generalized_eigenprojection(rep.X[a], rep.field.q_power(residue))
        return projections[key]

    idempotents: Dict[ResidueSequence, CycloMatrix] = {}
    for sequence in rep.residue_candidates:
        matrix = rep.identity()
        for a, residue in enumerate(sequence):
            matrix = matrix * projection(a, residue)
            if matrix.is_zero():
                break
        if not matrix.is_zero():
            idempotents[sequence] = matrix

    total = rep.zero()
    for matrix in idempotents.values():
        total = total + matrix
    if total != rep.identity():
        raise AlgorithmInvariantError(f"residue idempotents do not sum to 1 on {rep.name}")
    keys = list(idempotents)
    for i in keys:
        for j in keys:
            expected = idempotents[i] if i == j else rep.zero()
            if idempotents[i] * idempotents[j] != expected:
                raise AlgorithmInvariantError(
                    f"e({residue_label(i)}) e({residue_label(j)}) is wrong on {rep.name}"
                )
    return replace(rep, idempotents=idempotents)


def _klr_t(rep: SpechtRep) -> List[CycloMatrix]:
    matrices = []
    for a in range(rep.n):
        total = rep.zero()
        for sequence, idempotent in rep.idempotents.items():
            scale = rep.field.q_power(-sequence[a])
            total = total + (rep.identity() - rep.X[a].scale(scale)) * idempotent
        matrices.append(total)
    return matrices


def _sigma_block(
    rep: SpechtRep, t: List[CycloMatrix], k: int, sequence: ResidueSequence
) -> CycloMatrix:
    """(T_k + P_k(i)) Q_k(i)^-1 on the whole module; multiplied by e(i) by the caller"""
    field = rep.field
    e = rep.e
    identity = rep.identity()
    t_k, t_next = t[k - 1], t[k]
    a, b = sequence[k - 1], sequence[k]
    q = field.q_power

    if a == b:
        correction = identity
    else:
        ratio = (identity - t_k) * nilpotent_inverse(identity - t_next)
        correction = nilpotent_inverse(identity - ratio.scale(q(a - b))).scale(1 - field.q)

    difference = (b - a) % e
    if difference == 0:
        q_matrix = identity.scale(1 - field.q) + t_next.scale(field.q) - t_k
        q_inverse = nilpotent_inverse(q_matrix)
    elif difference == e - 1:
        q_inverse = identity.scale(q(-a))
    else:
        denominator = (identity - t_k).scale(q(a)) - (identity - t_next).scale(q(b))
        numerator = (identity - t_k).scale(q(a)) - (identity - t_next).scale(q(b + 1))
        q_inverse = denominator * nilpotent_inverse(numerator)
        if difference == 1:
            q_inverse = denominator * q_inverse
    return (rep.T[k - 1] + correction) * q_inverse


def klr_generators(rep: SpechtRep) -> SpechtRep:
    """t_a and sigma_k from the residue idempotents and the Jucys-Murphy elements"""
    if rep.e < 3:
        raise E2Unsupported()
    if not rep.idempotents:
        rep = residue_idempotents(rep)
    t = _klr_t(rep)
    for a, matrix in enumerate(t):
        if not matrix.power(rep.dim).is_zero():
            raise AlgorithmInvariantError(f"t_{a + 1} is not nilpotent on {rep.name}")
    if not t[0].is_zero():
        raise AlgorithmInvariantError(f"t_1 is nonzero on {rep.name}")

    sigma = []
    for k in range(1, rep.n):
        total = rep.zero()
        for sequence, idempotent in rep.idempotents.items():
            try:
                block = _sigma_block(rep, t, k, sequence)
            except SingularError as exc:
                raise SingularError(
                    f"sigma_{k} denominator is singular on e({residue_label(sequence)}) of {rep.name}"
                ) from exc
            total = total + block * idempotent
        sigma.append(total)
    return replace(rep, t=t, sigma=sigma)


@dataclass
class Failure:
    relation: str
    module: str
    block: str = ""

    def to_json(self) -> Dict[str, str]:
        return {"relation": self.relation, "module": self.module, "block": self.block}


@dataclass
class RelationReport:
    module: str
    checked: int = 0
    failures: List[Failure] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, relation: str, block: str = "") -> None:
        self.checked += 1
        if not ok:
            self.failures.append(Failure(relation, self.module, block))


def _swap(sequence: ResidueSequence, k: int) -> ResidueSequence:
    items = list(sequence)
    items[k - 1], items[k] = items[k], items[k - 1]
    return tuple(items)


def check_klr_data(
    idempotents: Mapping[ResidueSequence, CycloMatrix],
    t: Sequence[CycloMatrix],
    sigma: Sequence[CycloMatrix],
    e: int,
    module: str,
) -> RelationReport:
    """Check every graded relation on explicit matrices of e(i), t_a and sigma_k"""
    if e < 3:
        raise E2Unsupported()
    report = RelationReport(module)
    some = next(iter(idempotents.values()))
    field = some.field
    identity = CycloMatrix.identity(field, some.rows)
    zero = CycloMatrix.zeros(field, some.rows)
    n = len(t)

    def idem(sequence: ResidueSequence) -> CycloMatrix:
        return idempotents.get(tuple(sequence), zero)

    def block_sum(predicate) -> CycloMatrix:  # type: ignore[no-untyped-def]
        total = zero
        for sequence, matrix in idempotents.items():
            if predicate(sequence):
                total = total + matrix
        return total

    total = zero
    for matrix in idempotents.values():
        total = total + matrix
    report.record(total == identity, "sum of e(i) is 1")
    for i, ei in idempotents.items():
        report.record(i[0] == 0 or ei.is_zero(), "e(i) = 0 when i_1 != 0", residue_label(i))
        for j, ej in idempotents.items():
            expected = ei if i == j else zero
            report.record(ei * ej == expected, "e(i) e(j) = delta e(i)", f"{residue_label(i)},{residue_label(j)}")

    report.record(t[0].is_zero(), "t_1 = 0")
    for a in range(n):
        for b in range(a + 1, n):
            report.record(t[a].commutes_with(t[b]), f"t_{a + 1} t_{b + 1} = t_{b + 1} t_{a + 1}")
        for i, ei in idempotents.items():
            report.record(t[a].commutes_with(ei), f"t_{a + 1} e(i) = e(i) t_{a + 1}", residue_label(i))

    for k in range(1, n):
        s = sigma[k - 1]
        for i, ei in idempotents.items():
            report.record(
                s * ei == idem(_swap(i, k)) * s, f"sigma_{k} e(i) = e(s_{k} i) sigma_{k}", residue_label(i)
            )
        for a in range(1, n + 1):
            if a not in (k, k + 1):
                report.record(s.commutes_with(t[a - 1]), f"sigma_{k} t_{a} = t_{a} sigma_{k}")
        equal = block_sum(lambda i, k=k: i[k - 1] == i[k])
        t_k, t_next = t[k - 1], t[k]
        report.record(s * t_next - t_k * s == equal, f"sigma_{k} t_{k + 1} - t_{k} sigma_{k}")
        report.record(t_next * s - s * t_k == equal, f"t_{k + 1} sigma_{k} - sigma_{k} t_{k}")
        for l in range(k + 2, n):
            report.record(s.commutes_with(sigma[l - 1]), f"sigma_{k} sigma_{l} = sigma_{l} sigma_{k}")

        square = zero
        for i, ei in idempotents.items():
            difference = (i[k - 1] - i[k]) % e
            if difference == 1:
                square = square + (t_k - t_next) * ei
            elif difference == e - 1:
                square = square + (t_next - t_k) * ei
            elif difference != 0:
                square = square + ei
        report.record(s * s == square, f"sigma_{k}^2")

        if k + 1 < n:
            s_next = sigma[k]
            up = block_sum(lambda i, k=k: i[k + 1] == i[k - 1] and (i[k] - i[k - 1]) % e == 1)
            down = block_sum(lambda i, k=k: i[k + 1] == i[k - 1] and (i[k - 1] - i[k]) % e == 1)
            report.record(
                s * s_next * s - s_next * s * s_next == up - down, f"braid sigma_{k} sigma_{k + 1}"
            )

    for a in range(1, min(e - 1, n) + 1):
        if not t[a - 1].is_zero():
            report.notes.append(f"t_{a} is nonzero although a <= e - 1")
    return report


def check_klr_relations(rep: SpechtRep) -> RelationReport:
    if rep.e < 3:
        raise E2Unsupported()
    if not rep.sigma:
        rep = klr_generators(rep)
    report = check_klr_data(rep.idempotents, rep.t, rep.sigma, rep.e, rep.name)
    for c in range(1, rep.e):
        projection = generalized_eigenprojection(rep.X[0], rep.field.q_power(c))
        report.record(projection.is_zero(), "e(i) = 0 when i_1 != 0", f"i_1={c}")
    return report


def sigma_degree(sequence: ResidueSequence, k: int, e: int) -> int:
    """Degree of sigma_k e(i)"""
    difference = (sequence[k - 1] - sequence[k]) % e
    if difference == 0:
        return -2
    if difference in (1, e - 1):
        return 1
    return 0


def homogeneity_failures(
    idempotents: Mapping[ResidueSequence, CycloMatrix],
    t: Sequence[CycloMatrix],
    sigma: Sequence[CycloMatrix],
    degrees: Sequence[int],
    e: int,
    module: str,
) -> List[Failure]:
    """Entries of homogeneous generators that break the given degrees"""
    failures: List[Failure] = []

    def scan(matrix: CycloMatrix, degree: int, name: str, block: str = "") -> None:
        for r in range(matrix.rows):
            for c in range(matrix.cols):
                if not matrix[r, c].is_zero() and degrees[c] != degrees[r] + degree:
                    failures.append(Failure(f"{name} entry ({r + 1},{c + 1})", module, block))

    for i, ei in idempotents.items():
        scan(ei, 0, "e(i)", residue_label(i))
        for k in range(1, len(sigma) + 1):
            scan(sigma[k - 1] * ei, sigma_degree(i, k, e), f"sigma_{k} e(i)", residue_label(i))
    for a, matrix in enumerate(t, 1):
        scan(matrix, 2, f"t_{a}")
    return failures


def _conjugate_by(matrix: CycloMatrix, change: CycloMatrix, inverse: CycloMatrix) -> CycloMatrix:
    return change * matrix * inverse


def verify_grading(rep: SpechtRep, largest: bool = False) -> SpechtRep:
    """
    Rewrite the module in the basis v_t = z_lambda sigma_d(t) and check the grading.

    ``largest`` builds sigma_d(t) from the largest-descent reduced word instead
    of the canonical smallest-descent word.
    """
    if rep.shape is None:
        raise PreconditionViolation("grading is defined on Specht modules only")
    if rep.graded:
        raise PreconditionViolation(f"{rep.name} is already in the graded basis")
    if not rep.sigma:
        rep = klr_generators(rep)
    field = rep.field
    rows = []
    for t in rep.tableaux:
        vector = [field.one if j == 0 else field.zero for j in range(rep.dim)]
        for k in coset_word(t, largest=largest).word:
            vector = rep.sigma[k - 1].apply_to_row(vector)
        rows.append(vector)
    change = CycloMatrix(field, rows)
    try:
        inverse = matrix_inverse(change)
    except SingularError as exc:
        raise BasisError(f"the vectors v_t of {rep.name} are dependent") from exc

    graded = replace(
        rep,
        T=[_conjugate_by(m, change, inverse) for m in rep.T],
        X=[_conjugate_by(m, change, inverse) for m in rep.X],
        idempotents={i: _conjugate_by(m, change, inverse) for i, m in rep.idempotents.items()},
        t=[_conjugate_by(m, change, inverse) for m in rep.t],
        sigma=[_conjugate_by(m, change, inverse) for m in rep.sigma],
        degrees=[tableau_degree(t, rep.e) for t in rep.tableaux],
        blocks=[residue_sequence(t, rep.e) for t in rep.tableaux],
        change_of_basis=change,
    )
    assert graded.degrees is not None and graded.blocks is not None

    for index, block in enumerate(graded.blocks):
        for sequence, matrix in graded.idempotents.items():
            expected = field.one if sequence == block else field.zero
            for c in range(graded.dim):
                value = expected if c == index else field.zero
                if matrix[index, c] != value:
                    raise HomogeneityError(
                        f"v_{graded.labels[index]} e({residue_label(sequence)}) is wrong on {rep.name}"
                    )
    failures = homogeneity_failures(
        graded.idempotents, graded.t, graded.sigma, graded.degrees, rep.e, rep.name
    )
    if failures:
        first = failures[0]
        raise HomogeneityError(f"{first.relation} on block {first.block} of {rep.name}")
    return graded


def _character_from(
    blocks: Sequence[ResidueSequence], degrees: Sequence[int], weights: Mapping[Tuple[ResidueSequence, int], int]
) -> GradedCharacter:
    character: Dict[ResidueSequence, LaurentPoly] = {}
    for (block, degree), count in weights.items():
        if count:
            character[block] = character.get(block, LaurentPoly()) + LaurentPoly.monomial(degree, count)
    return {k: v for k, v in character.items() if not v.is_zero()}


def _classes(rep: SpechtRep) -> Dict[Tuple[ResidueSequence, int], List[int]]:
    assert rep.blocks is not None and rep.degrees is not None
    classes: Dict[Tuple[ResidueSequence, int], List[int]] = {}
    for index, key in enumerate(zip(rep.blocks, rep.degrees)):
        classes.setdefault(key, []).append(index)
    return classes


def graded_character(rep: SpechtRep) -> GradedCharacter:
    """ch(i) = sum of v^deg(t) over tableaux of residue i, checked against e(i) ranks"""
    if not rep.graded:
        raise PreconditionViolation(f"{rep.name} has not been graded")
    classes = _classes(rep)
    for (block, degree), indices in classes.items():
        rank = matrix_rank(rep.idempotent(block).submatrix(indices))
        if rank != len(indices):
            raise MismatchError(
                f"e({residue_label(block)}) has rank {rank} in degree {degree} on {rep.name}, "
                f"expected {len(indices)}"
            )
    assert rep.blocks is not None and rep.degrees is not None
    return _character_from(
        rep.blocks, rep.degrees, {key: len(indices) for key, indices in classes.items()}
    )


@dataclass
class GramResult:
    gram: CycloMatrix
    radical_dimension: int
    radical_by_degree: Dict[int, int]
    simple_character: GradedCharacter


def gram_form(rep: SpechtRep) -> GramResult:
    """
    Gram matrix of the cellular form and the graded pieces of its radical.
    G_st x_lambda = m_{t^lambda s} m_{t^lambda t}^* modulo N.
    """
    if not rep.graded or rep.quotient is None or rep.change_of_basis is None:
        raise PreconditionViolation(f"{rep.name} needs the quotient model and a grading")
    field = rep.field
    model = rep.quotient.model
    elements = rep.quotient.elements
    starred = [element.star() for element in elements]
    rows = []
    for s_index, left in enumerate(elements):
        row = []
        for t_index, right in enumerate(starred):
            coordinates = model.express(left * right)
            if coordinates is None:
                raise MismatchError(f"Gram product ({s_index}, {t_index}) left the cell ideal")
            if any(label != 0 and not value.is_zero() for label, value in coordinates.items()):
                raise MismatchError(f"Gram product ({s_index}, {t_index}) is not a multiple of x_lambda")
            row.append(coordinates.get(0, field.zero))
        rows.append(row)
    gram = CycloMatrix(field, rows)

    graded_gram = rep.change_of_basis * gram
    radical_dimension = rep.dim - matrix_rank(graded_gram)
    classes = _classes(rep)
    radical_pieces = {
        key: len(indices) - matrix_rank(graded_gram.submatrix(indices))
        for key, indices in classes.items()
    }
    if sum(radical_pieces.values()) != radical_dimension:
        raise GradednessError(f"radical of {rep.name} is not a sum of homogeneous pieces")
    by_degree: Dict[int, int] = {}
    for (_, degree), count in radical_pieces.items():
        if count:
            by_degree[degree] = by_degree.get(degree, 0) + count
    assert rep.blocks is not None and rep.degrees is not None
    simple = _character_from(
        rep.blocks,
        rep.degrees,
        {key: len(indices) - radical_pieces[key] for key, indices in classes.items()},
    )
    return GramResult(gram, radical_dimension, by_degree, simple)


def simple_character(rep: SpechtRep) -> GradedCharacter:
    """Graded character of D^lambda = S^lambda / Rad S^lambda"""
    return gram_form(rep).simple_character


def is_bar_symmetric_character(character: Mapping[ResidueSequence, LaurentPoly]) -> bool:
    return all(value.is_bar_symmetric() for value in character.values())


@lru_cache(maxsize=None)
def build_graded_specht(shape: Partition, e: int, bound: Optional[int] = None) -> SpechtRep:
    """Specht module with every generator, in the graded basis"""
    rep = specht_matrices(shape, e, bound)
    rep = klr_generators(residue_idempotents(jm_matrices(rep)))
    return verify_grading(rep)


@lru_cache(maxsize=None)
def build_specht(shape: Partition, e: int, bound: Optional[int] = None) -> SpechtRep:
    """Specht module with every generator, in the Murphy basis"""
    rep = specht_matrices(shape, e, bound)
    if e < 3:
        return residue_idempotents(jm_matrices(rep))
    return klr_generators(residue_idempotents(jm_matrices(rep)))


def decomposition_from_characters(
    n: int, e: int, bound: Optional[int] = None, threads: int = 1
) -> DecompositionMatrix:
    """
    Graded decomposition numbers on e-restricted columns from characters alone:
    ch S^lambda = sum over mu of d_{lambda mu}(v^-1) ch D^mu.
    """
    if e < 3:
        raise E2Unsupported()
    _check_bound(n, bound)
    shapes = partitions_of(n, bound=max(n, 1))

    def build(shape: Partition) -> SpechtRep:
        return build_graded_specht(shape, e, bound)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reps = list(pool.map(build, shapes))
    else:
        reps = [build(shape) for shape in shapes]

    specht = {shape: graded_character(rep) for shape, rep in zip(shapes, reps)}
    restricted = [shape for shape in shapes if is_e_restricted(shape, e)]
    simples: Dict[Partition, GradedCharacter] = {}
    for shape, rep in zip(shapes, reps):
        if shape in restricted:
            character = simple_character(rep)
            if not character:
                raise AlgorithmInvariantError(f"D^({shape}) is zero although {shape} is restricted")
            if not is_bar_symmetric_character(character):
                raise MismatchError(f"graded character of D^({shape}) is not bar-symmetric")
            simples[shape] = character

    entries: Dict[Tuple[Partition, Partition], LaurentPoly] = {}
    for lam in shapes:
        residual: Dict[ResidueSequence, LaurentPoly] = dict(specht[lam])
        remaining = [mu for mu in restricted if dominance_leq(lam, mu) in (Dominance.GREATER, Dominance.EQUAL)]
        while remaining:
            choice = None
            for mu in remaining:
                for sequence in simples[mu]:
                    if all(sequence not in simples[nu] for nu in remaining if nu != mu):
                        choice = (mu, sequence)
                        break
                if choice:
                    break
            if choice is None:
                raise SolveError(f"characters of simples do not separate in row {lam}")
            mu, sequence = choice
            try:
                multiplicity = residual.get(sequence, LaurentPoly()).divide_exact(simples[mu][sequence])
            except DivisionError as exc:
                raise SolveError(f"row {lam} is not an integral combination at {mu}") from exc
            for key, value in simples[mu].items():
                updated = residual.get(key, LaurentPoly()) - multiplicity * value
                if updated.is_zero():
                    residual.pop(key, None)
                else:
                    residual[key] = updated
            if not multiplicity.is_zero():
                entries[(lam, mu)] = multiplicity.bar()
            remaining.remove(mu)
        if residual:
            raise SolveError(f"row {lam} leaves an unexplained character")
        if lam in restricted and entries.get((lam, lam)) != 1:
            raise SolveError(f"diagonal entry of {lam} is not 1")

    return DecompositionMatrix(n, e, list(shapes), list(restricted), entries, kind="d")


def permutation_module_idempotent_check(e: int) -> List[str]:
    """The actions of e(0,1) and e(0,-1) on m_(2) = T_1 + 1 and m_(1,1) = 1 in H_2"""
    if e < 3:
        raise E2Unsupported()
    rep = residue_idempotents(jm_matrices(regular_representation(2, e)))
    field = rep.field
    plus = rep.idempotent((0, 1))
    minus = rep.idempotent((0, e - 1))
    index = permutation_index(2)
    m_two = [field.zero, field.zero]
    m_two[index[(1, 2)]] = field.one
    m_two[index[(2, 1)]] = field.one
    m_one = [field.zero, field.zero]
    m_one[index[(1, 2)]] = field.one
    inverse = (field.q + 1).inverse()
    scaled = [inverse * x for x in m_two]

    failures = []
    if plus.apply_to_row(m_two) != m_two:
        failures.append("m_(2) e(0,1) != m_(2)")
    if any(not x.is_zero() for x in minus.apply_to_row(m_two)):
        failures.append("m_(2) e(0,-1) != 0")
    if plus.apply_to_row(m_one) != scaled:
        failures.append("m_(1,1) e(0,1) != (q+1)^-1 m_(2)")
    if minus.apply_to_row(m_one) != [a - b for a, b in zip(m_one, scaled)]:
        failures.append("m_(1,1) e(0,-1) != m_(1,1) - (q+1)^-1 m_(2)")
    return failures


def _sigma_word(rep: SpechtRep, word: Sequence[int]) -> CycloMatrix:
    matrix = rep.identity()
    for k in word:
        matrix = matrix * rep.sigma[k - 1]
    return matrix


def _span_rank(matrices: Sequence[CycloMatrix], field: CycloField, dim: int) -> Tuple[int, EchelonBasis]:
    basis = EchelonBasis(field, dim * dim)
    for matrix in matrices:
        basis.insert([x for row in matrix.entries for x in row])
    return basis.rank, basis


def klr_spans_image(rep: SpechtRep) -> bool:
    """The products t^a e(i) sigma_w span the image of H_n"""
    if not rep.sigma:
        rep = klr_generators(rep)
    n = rep.n
    images = []
    for w in all_permutations(n):
        matrix = rep.identity()
        for k in reduced_word(w):
            matrix = matrix * rep.T[k - 1]
        images.append(matrix)
    image_rank, image_basis = _span_rank(images, rep.field, rep.dim)

    monomials = [rep.identity()]
    for matrix in rep.t:
        powers = [rep.identity()]
        while not powers[-1].is_zero() and len(powers) <= rep.dim:
            powers.append(powers[-1] * matrix)
        monomials = [m * p for m in monomials for p in powers if not (m * p).is_zero()]
        unique: Dict[CycloMatrix, None] = {}
        for m in monomials:
            unique.setdefault(m, None)
        monomials = list(unique)

    sigmas = [_sigma_word(rep, reduced_word(w)) for w in all_permutations(n)]
    products = [
        monomial * idempotent * s
        for monomial in monomials
        for idempotent in rep.idempotents.values()
        for s in sigmas
    ]
    klr_rank, _ = _span_rank(products, rep.field, rep.dim)
    inside = all(image_basis.contains([x for row in m.entries for x in row]) for m in products)
    return inside and klr_rank == image_rank
