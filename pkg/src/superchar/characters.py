"""Numeric character machinery: tables, idempotents, supercharacters.

Irreducible characters are computed by simultaneous diagonalization of the
conjugacy-class-sum matrices acting on the class algebra (random real
combinations split the spectrum; a handful of seeds are tried before giving
up).  Values are double precision; degrees are rounded to integers under a
tight deviation guard, and orthogonality is re-verified after the fact.

The supercharacter side groups irreducibles by the eigenvalue vectors of
the superclass sums, which mirrors how a basis of orthogonal idempotents
arises inside the span of those sums.  Only the canonical supercharacters
(degree-weighted sums over each group of irreducibles) are built; arbitrary
witness characters with the same constituents are not supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import GroupAlgebraElement, multiply
from .errors import (
    DiagonalizationFailureError,
    OrderLimitExceededError,
    ParentMismatchError,
    PartCountMismatchError,
)
from .groups import FiniteGroup
from .lattice import norm_lattice
from .schur import SuperclassPartition, class_structure_tensor

TAU_NUM = 1e-8
_DEGREE_GUARD = 1e-6
_CLASS_CONSTANCY_TOL = 1e-6
_MAX_SEEDS = 8
CHARACTER_ORDER_LIMIT = 128


class ClassFunction:
    """A complex function on the group, constant on conjugacy classes."""

    def __init__(self, parent: FiniteGroup, values: Sequence[complex]) -> None:
        self.parent = parent
        vals = np.asarray(values, dtype=np.complex128).copy()
        if vals.shape != (parent.order,):
            raise ValueError("value vector length must equal the group order")
        for cls in parent.conjugacy_classes:
            idx = np.fromiter(cls, dtype=np.int64)
            spread = np.abs(vals[idx] - vals[idx[0]]).max()
            if spread > _CLASS_CONSTANCY_TOL:
                raise ValueError("values are not constant on conjugacy classes")
        vals.flags.writeable = False
        self.values = vals

    def _check_parent(self, other: "ClassFunction") -> None:
        if self.parent != other.parent:
            raise ParentMismatchError("class functions live over different groups")

    def inner(self, other: "ClassFunction") -> complex:
        """The usual hermitian inner product (1/|G|) sum a(g) conj(b(g))."""
        self._check_parent(other)
        return complex(np.vdot(other.values, self.values) / self.parent.order)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_parent(other)
        return ClassFunction(self.parent, self.values + other.values)

    def scaled(self, scalar: complex) -> "ClassFunction":
        return ClassFunction(self.parent, self.values * scalar)

    def __repr__(self) -> str:
        return f"ClassFunction(order={self.parent.order})"


def convolution(alpha: ClassFunction, beta: ClassFunction) -> ClassFunction:
    """(a * b)(g) = sum over x of a(xg) b(x^-1)."""
    alpha._check_parent(beta)
    group = alpha.parent
    left = alpha.values[group.mul]          # left[x, g] = a(xg)
    right = beta.values[group.inv]          # right[x] = b(x^-1)
    return ClassFunction(group, left.T @ right)


def pointwise(alpha: ClassFunction, beta: ClassFunction) -> ClassFunction:
    alpha._check_parent(beta)
    return ClassFunction(alpha.parent, alpha.values * beta.values)


def theta(elem: GroupAlgebraElement) -> np.ndarray:
    """Coefficient vector of a group-algebra element read as a function."""
    return np.asarray(elem.coeffs, dtype=np.complex128)


def theta_inverse(group: FiniteGroup, values: Sequence[complex]) -> GroupAlgebraElement:
    return GroupAlgebraElement(group, np.asarray(values, dtype=np.complex128))


class CharacterTable:
    """Irreducible characters as rows, canonically ordered."""

    def __init__(self, group: FiniteGroup, rows: Sequence[ClassFunction], degrees: Sequence[int]) -> None:
        self.group = group
        self.rows = tuple(rows)
        self.degrees = tuple(int(d) for d in degrees)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def trivial_index(self) -> int:
        for i, row in enumerate(self.rows):
            if np.abs(row.values - 1.0).max() < 1e-6:
                return i
        raise AssertionError("no trivial character found")

    def __repr__(self) -> str:
        return f"CharacterTable(order={self.group.order}, irreducibles={len(self.rows)})"


def character_table(group: FiniteGroup, *, tol: float = TAU_NUM) -> CharacterTable:
    """Burnside class-matrix diagonalization with seed retries.

    The class-sum structure constants give one matrix per class; a random
    real combination of them has the central characters as simultaneous
    eigenvectors once its spectrum is simple.
    """
    if group.order > CHARACTER_ORDER_LIMIT:
        raise OrderLimitExceededError(
            f"character tables support order <= {CHARACTER_ORDER_LIMIT}"
        )
    classes = group.conjugacy_classes
    m = len(classes)
    sizes = np.array([len(c) for c in classes], dtype=np.float64)
    tensor = class_structure_tensor(group).astype(np.float64)
    last_error = "no seeds tried"
    for seed in range(_MAX_SEEDS):
        rng = np.random.default_rng(seed)
        coefs = rng.standard_normal(m)
        mat = np.tensordot(coefs, tensor, axes=(0, 0))  # mat[b, c]
        vals, vecs = np.linalg.eig(mat)
        scale = max(1.0, float(np.abs(vals).max()))
        gaps = np.abs(np.subtract.outer(vals, vals))
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < 1e-6 * scale:
            last_error = f"seed {seed}: eigenvalues not separated"
            continue
        try:
            rows, degrees = _characters_from_eigenvectors(group, classes, sizes, vecs, tol)
        except ValueError as exc:
            last_error = f"seed {seed}: {exc}"
            continue
        return CharacterTable(group, rows, degrees)
    raise DiagonalizationFailureError(last_error)


def _characters_from_eigenvectors(
    group: FiniteGroup,
    classes: tuple[frozenset[int], ...],
    sizes: np.ndarray,
    vecs: np.ndarray,
    tol: float,
) -> tuple[list[ClassFunction], list[int]]:
    n = group.order
    m = len(classes)
    cls_ids = group.class_ids
    entries = []
    for k in range(m):
        v = vecs[:, k]
        if abs(v[0]) < 1e-12:
            raise ValueError("eigenvector vanishes on the identity class")
        omega = v / v[0]
        degree_sq = n / float(np.sum(np.abs(omega) ** 2 / sizes).real)
        degree = float(np.sqrt(degree_sq))
        if abs(degree - round(degree)) > _DEGREE_GUARD:
            raise ValueError(f"degree {degree} is not near an integer")
        d = int(round(degree))
        class_values = omega * d / sizes
        values = class_values[cls_ids]
        entries.append((d, values))
    entries.sort(key=lambda e: (e[0], tuple((round(z.real, 6), round(z.imag, 6)) for z in e[1])))
    rows = [ClassFunction(group, values) for _, values in entries]
    degrees = [d for d, _ in entries]
    if sum(d * d for d in degrees) != n:
        raise ValueError("degrees do not satisfy sum of squares = |G|")
    for i, row in enumerate(rows):
        for j in range(i, len(rows)):
            expected = 1.0 if i == j else 0.0
            if abs(row.inner(rows[j]) - expected) > max(tol, 1e-9):
                raise ValueError("rows are not orthonormal")
    return rows, degrees


# ---------------------------------------------------------------------------
# supercharacters


@dataclass(eq=False)
class SupercharacterData:
    """The character-side data attached to a superclass partition."""

    sct: SuperclassPartition
    table: CharacterTable
    x_partition: tuple[tuple[int, ...], ...]
    sigma: tuple[ClassFunction, ...]
    idempotents: tuple[GroupAlgebraElement, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        """sigma_X(1) for each part (sums of squared irreducible degrees)."""
        return tuple(int(round(s.values[0].real)) for s in self.sigma)


def supercharacter_partition(
    sct: SuperclassPartition,
    table: Optional[CharacterTable] = None,
    *,
    tol: float = TAU_NUM,
) -> SupercharacterData:
    """Group the irreducibles by the eigenvalue vectors of the part sums.

    Two irreducibles share a part exactly when every part sum acts on them
    by the same scalar.  The resulting part count must equal the class-side
    part count, the supercharacters must be constant on parts, and the
    idempotent of each part must read back (via coefficients) as the
    conjugate supercharacter over |G|; each failed assertion raises
    PartCountMismatchError as a tolerance signal.
    """
    if not sct.validated:
        raise ValueError("partition must be validated first")
    group = sct.parent
    if table is None:
        table = character_table(group)
    k = len(table.rows)
    part_arrays = [np.fromiter(part, dtype=np.int64) for part in sct.parts]
    thetas = np.empty((k, len(part_arrays)), dtype=np.complex128)
    for i, row in enumerate(table.rows):
        for j, arr in enumerate(part_arrays):
            thetas[i, j] = row.values[arr].sum() / table.degrees[i]
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if np.abs(thetas[i] - thetas[j]).max() < tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    x_parts = tuple(sorted((tuple(sorted(v)) for v in groups.values()), key=lambda p: p[0]))
    if len(x_parts) != sct.num_parts:
        raise PartCountMismatchError(
            f"{len(x_parts)} character parts vs {sct.num_parts} superclass parts"
        )
    sigma = []
    for x in x_parts:
        values = np.zeros(group.order, dtype=np.complex128)
        for i in x:
            values += table.degrees[i] * table.rows[i].values
        sigma.append(ClassFunction(group, values))
    for s in sigma:
        for arr in part_arrays:
            spread = np.abs(s.values[arr] - s.values[arr[0]]).max()
            if spread > tol:
                raise PartCountMismatchError("supercharacter not constant on a part")
    idempotents = tuple(
        GroupAlgebraElement(group, np.conj(s.values) / group.order) for s in sigma
    )
    # each idempotent's coefficient vector is conj(sigma)/|G|, which must be
    # sigma'/|G| for some (possibly different) part: conjugation permutes parts
    for e in idempotents:
        scaled = np.asarray(e.coeffs) * group.order
        hits = sum(
            1 for s in sigma if float(np.abs(scaled - s.values).max()) < max(tol, 1e-9)
        )
        if hits != 1:
            raise PartCountMismatchError("idempotent does not match exactly one supercharacter")
    return SupercharacterData(sct, table, x_parts, tuple(sigma), idempotents)


@dataclass(frozen=True)
class OrthogonalityReport:
    max_cross_inner: float
    max_idempotency_defect: float
    max_constancy_defect: float

    def max_defect(self) -> float:
        return max(self.max_cross_inner, self.max_idempotency_defect, self.max_constancy_defect)


def orthogonality_report(data: SupercharacterData) -> OrthogonalityReport:
    """Recompute all defects from the stored data (nothing is trusted)."""
    group = data.sct.parent
    cross = 0.0
    for i, si in enumerate(data.sigma):
        for j, sj in enumerate(data.sigma):
            if i < j:
                cross = max(cross, abs(si.inner(sj)))
    idem = 0.0
    for e in data.idempotents:
        defect = multiply(e, e) - e
        idem = max(idem, float(np.abs(np.asarray(defect.coeffs, dtype=np.complex128)).max()))
    constancy = 0.0
    for s in data.sigma:
        for part in data.sct.parts:
            arr = np.fromiter(part, dtype=np.int64)
            mean = s.values[arr].mean()
            constancy = max(constancy, float(np.abs(s.values[arr] - mean).max()))
    return OrthogonalityReport(cross, idem, constancy)


@dataclass(frozen=True)
class KernelCrosscheck:
    match: bool
    kernels: tuple[frozenset[int], ...]
    missing: tuple[frozenset[int], ...]  # supernormal but not an intersection of kernels
    extra: tuple[frozenset[int], ...]    # intersections of kernels that are not supernormal


def kernel_supernormality_crosscheck(
    data: SupercharacterData, *, tol: float = TAU_NUM
) -> KernelCrosscheck:
    """Compare intersections of supercharacter kernels with the lattice nodes.

    The kernel of a supercharacter is where it attains its degree; closures
    of pairwise intersections realize all subset intersections.
    """
    group = data.sct.parent
    kernels: set[frozenset[int]] = {frozenset(range(group.order))}
    for s in data.sigma:
        top = s.values[0]
        ker = frozenset(
            int(g) for g in range(group.order) if abs(s.values[g] - top) < max(tol, 1e-9)
        )
        kernels.add(ker)
    changed = True
    while changed:
        changed = False
        current = list(kernels)
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                inter = current[i] & current[j]
                if inter not in kernels:
                    kernels.add(inter)
                    changed = True
    nodes = set(norm_lattice(data.sct).nodes)
    missing = tuple(sorted(nodes - kernels, key=lambda s: (len(s), sorted(s))))
    extra = tuple(sorted(kernels - nodes, key=lambda s: (len(s), sorted(s))))
    return KernelCrosscheck(
        match=not missing and not extra,
        kernels=tuple(sorted(kernels, key=lambda s: (len(s), sorted(s)))),
        missing=missing,
        extra=extra,
    )
