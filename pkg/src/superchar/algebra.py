"""Exact arithmetic in the group algebra.

Elements are coefficient vectors indexed by group elements.  Integer
vectors are kept exact: the convolution product falls back to Python
integers whenever a bound on the result could overflow 64-bit arithmetic.
Complex vectors (used for character idempotents) share the same code path.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ParentMismatchError
from .groups import FiniteGroup

_INT64_SAFE = 2**62
Scalar = Union[int, float, complex]


class GroupAlgebraElement:
    """A formal sum over group elements with exact or complex coefficients."""

    def __init__(self, parent: FiniteGroup, coeffs: Union[np.ndarray, Sequence[Scalar]]) -> None:
        self.parent = parent
        arr = np.asarray(coeffs)
        if arr.shape != (parent.order,):
            raise ValueError("coefficient vector length must equal the group order")
        if arr.dtype == object or np.issubdtype(arr.dtype, np.complexfloating):
            pass
        elif np.issubdtype(arr.dtype, np.integer):
            arr = arr.astype(np.int64)
        elif np.issubdtype(arr.dtype, np.floating):
            arr = arr.astype(np.complex128)
        else:
            raise TypeError(f"unsupported coefficient dtype {arr.dtype}")
        arr = arr.copy()
        arr.flags.writeable = False
        self.coeffs = arr

    # -- constructors --

    @staticmethod
    def zero(parent: FiniteGroup) -> "GroupAlgebraElement":
        return GroupAlgebraElement(parent, np.zeros(parent.order, dtype=np.int64))

    @staticmethod
    def basis(parent: FiniteGroup, g: int) -> "GroupAlgebraElement":
        v = np.zeros(parent.order, dtype=np.int64)
        v[g] = 1
        return GroupAlgebraElement(parent, v)

    @staticmethod
    def indicator(parent: FiniteGroup, subset: Iterable[int]) -> "GroupAlgebraElement":
        """The sum of the elements of a subset (a class sum when the subset is one)."""
        v = np.zeros(parent.order, dtype=np.int64)
        for g in subset:
            v[int(g)] = 1
        return GroupAlgebraElement(parent, v)

    # -- helpers --

    def _check_parent(self, other: "GroupAlgebraElement") -> None:
        if self.parent != other.parent:
            raise ParentMismatchError("elements live over different groups")

    @property
    def is_integral(self) -> bool:
        return self.coeffs.dtype == np.int64 or self.coeffs.dtype == object

    def max_abs(self) -> float:
        if self.parent.order == 0:
            return 0
        return max(abs(c) for c in self.coeffs.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.parent == other.parent and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key in hot paths
        return hash((self.parent, self.coeffs.tobytes() if self.coeffs.dtype != object else tuple(self.coeffs.tolist())))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_parent(other)
        return GroupAlgebraElement(self.parent, self.coeffs + other.coeffs)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_parent(other)
        return GroupAlgebraElement(self.parent, self.coeffs - other.coeffs)

    def scaled(self, scalar: Scalar) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.parent, self.coeffs * scalar)

    def __repr__(self) -> str:
        support = int(np.count_nonzero(self.coeffs != 0))
        return f"GroupAlgebraElement(order={self.parent.order}, support={support})"


def multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution by the group law: the coefficient of k is sum of a_g b_h over gh = k.

    Rows of the multiplication table are permutations, so the row-by-row
    accumulation ``res[mul[g]] += a_g * b`` has no index collisions and
    stays exact.
    """
    a._check_parent(b)
    group = a.parent
    n = group.order
    exact = a.is_integral and b.is_integral
    if exact:
        bound = n * max(1, int(a.max_abs())) * max(1, int(b.max_abs()))
        if bound < _INT64_SAFE and a.coeffs.dtype == np.int64 and b.coeffs.dtype == np.int64:
            res = np.zeros(n, dtype=np.int64)
            bc = b.coeffs
            for g in np.nonzero(a.coeffs)[0]:
                res[group.mul[g]] += int(a.coeffs[g]) * bc
            return GroupAlgebraElement(group, res)
        res_list = [0] * n
        arow = a.coeffs.tolist()
        brow = b.coeffs.tolist()
        for g in range(n):
            ag = arow[g]
            if ag == 0:
                continue
            row = group.mul[g]
            for h in range(n):
                bh = brow[h]
                if bh != 0:
                    res_list[int(row[h])] += ag * bh
        return GroupAlgebraElement(group, np.array(res_list, dtype=object))
    res = np.zeros(n, dtype=np.complex128)
    bc = b.coeffs.astype(np.complex128)
    ac = a.coeffs.astype(np.complex128)
    for g in np.nonzero(ac)[0]:
        res[group.mul[g]] += ac[g] * bc
    return GroupAlgebraElement(group, res)


def hadamard(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Componentwise product of coefficient vectors."""
    a._check_parent(b)
    if a.coeffs.dtype == np.int64 and b.coeffs.dtype == np.int64:
        bound = max(1, int(a.max_abs())) * max(1, int(b.max_abs()))
        if bound >= _INT64_SAFE:
            prod = np.array(
                [x * y for x, y in zip(a.coeffs.tolist(), b.coeffs.tolist())],
                dtype=object,
            )
            return GroupAlgebraElement(a.parent, prod)
    return GroupAlgebraElement(a.parent, a.coeffs * b.coeffs)
