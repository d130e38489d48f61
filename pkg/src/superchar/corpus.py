"""Bundled small-group corpus: builders and fixture access.

One group per isomorphism class of order <= 16, plus the labeled C3 x C6
used throughout the demos, and standard named aliases (S3, D4, Q8, A4, D6,
Dic3).  Dn denotes the dihedral group of order 2n.

Fixtures are shipped as Cayley-table JSON under ``superchar/data/groups``;
``SUPERCHAR_CORPUS_DIR`` overrides that location.  Every fixture is fully
re-validated on load.
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .groups import (
    FiniteGroup,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    quotient,
    subgroup_generated,
)

DATA_DIR = Path(__file__).parent / "data"
CORPUS_ENV = "SUPERCHAR_CORPUS_DIR"


def cyclic(n: int, *, name: Optional[str] = None) -> FiniteGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return from_cayley_table(table, name=name or f"c{n}")


def dihedral(n: int, *, name: Optional[str] = None) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i and reflections s r^i."""
    if n < 3:
        raise ValueError("use cyclic/direct products for n < 3")
    size = 2 * n
    mul = np.empty((size, size), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[i, j] = (i + j) % n                    # r^i r^j
            mul[i, n + j] = n + (j - i) % n            # r^i (s r^j) = s r^(j-i)
            mul[n + i, j] = n + (i + j) % n            # (s r^i) r^j
            mul[n + i, n + j] = (j - i) % n            # (s r^i)(s r^j)
    return from_cayley_table(mul, name=name or f"d{n}")


def dicyclic(n: int, *, name: Optional[str] = None) -> FiniteGroup:
    """Dicyclic group of order 4n: a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1."""
    if n < 2:
        raise ValueError("dicyclic needs n >= 2")
    two_n = 2 * n
    size = 4 * n

    def encode(i: int, j: int) -> int:
        return i + two_n * j

    mul = np.empty((size, size), dtype=np.int64)
    for i in range(two_n):
        for j in (0, 1):
            for k in range(two_n):
                for l in (0, 1):
                    sign = -1 if j else 1
                    shift = n if (j and l) else 0
                    mul[encode(i, j), encode(k, l)] = encode(
                        (i + sign * k + shift) % two_n, (j + l) % 2
                    )
    return from_cayley_table(mul, name=name or f"dic{n}")


def _power_twist_16(twist: int, name: str) -> FiniteGroup:
    """Order-16 groups a^8 = b^2 = 1 with b a b^-1 = a^twist."""
    mul = np.empty((16, 16), dtype=np.int64)
    for i in range(8):
        for j in (0, 1):
            for k in range(8):
                for l in (0, 1):
                    t = pow(twist, j, 8)
                    mul[i + 8 * j, k + 8 * l] = (i + t * k) % 8 + 8 * ((j + l) % 2)
    return from_cayley_table(mul, name=name)


def semidihedral16(*, name: str = "sd16") -> FiniteGroup:
    return _power_twist_16(3, name)


def modular16(*, name: str = "m16") -> FiniteGroup:
    return _power_twist_16(5, name)


def c4_semi_c4(*, name: str = "c4sc4") -> FiniteGroup:
    """a^4 = b^4 = 1, b a b^-1 = a^-1."""
    mul = np.empty((16, 16), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    t = pow(3, j, 4)
                    mul[i + 4 * j, k + 4 * l] = (i + t * k) % 4 + 4 * ((j + l) % 4)
    return from_cayley_table(mul, name=name)


def c4xc2_semi_c2(*, name: str = "c4xc2sc2") -> FiniteGroup:
    """(C4 x C2) : C2 with the involution a -> ab, b -> b."""

    def encode(p: int, q: int, r: int) -> int:
        return p + 4 * q + 8 * r

    mul = np.empty((16, 16), dtype=np.int64)
    for p1 in range(4):
        for q1 in range(2):
            for r1 in range(2):
                for p2 in range(4):
                    for q2 in range(2):
                        for r2 in range(2):
                            q_shift = r1 * p2  # conjugation by c sends a^p to a^p b^p
                            mul[encode(p1, q1, r1), encode(p2, q2, r2)] = encode(
                                (p1 + p2) % 4, (q1 + q2 + q_shift) % 2, (r1 + r2) % 2
                            )
    return from_cayley_table(mul, name=name)


def pauli16(*, name: str = "pauli16") -> FiniteGroup:
    """Central product D4 . C4 (order 16), built as (D4 x C4) / <(z, c^2)>."""
    d4 = dihedral(4)
    c4 = cyclic(4)
    prod = direct_product(d4, c4, name="d4xc4")
    center_d4 = [
        g
        for g in range(1, d4.order)
        if all(int(d4.mul[g, h]) == int(d4.mul[h, g]) for h in range(d4.order))
    ]
    z = center_d4[0]
    diag = subgroup_generated(prod, [z * 4 + 2])
    assert len(diag) == 2
    q, _ = quotient(prod, diag)
    return from_cayley_table(q.mul, name=name)


def alternating4(*, name: str = "a4") -> FiniteGroup:
    return from_permutation_generators([[1, 2, 0, 3], [1, 0, 3, 2]], name=name)


def c3xc6_labeled(*, name: str = "c3xc6") -> FiniteGroup:
    """C3 x C6 with x^i y^j at index 6 i + j and algebraic labels."""

    def label(i: int, j: int) -> str:
        terms = []
        if i:
            terms.append("x" if i == 1 else f"x^{i}")
        if j:
            terms.append("y" if j == 1 else f"y^{j}")
        return "*".join(terms) if terms else "1"

    mul = np.empty((18, 18), dtype=np.int64)
    for i1 in range(3):
        for j1 in range(6):
            for i2 in range(3):
                for j2 in range(6):
                    mul[6 * i1 + j1, 6 * i2 + j2] = 6 * ((i1 + i2) % 3) + (j1 + j2) % 6
    labels = [label(i, j) for i in range(3) for j in range(6)]
    return from_cayley_table(mul, name=name, labels=labels)


def _abelian(name: str, *factors: int) -> Callable[[], FiniteGroup]:
    def build() -> FiniteGroup:
        group = cyclic(factors[0])
        for f in factors[1:]:
            group = direct_product(group, cyclic(f))
        return from_cayley_table(group.mul, name=name)

    return build


_BUILDERS: dict[str, Callable[[], FiniteGroup]] = {
    "c1": _abelian("c1", 1),
    "c2": _abelian("c2", 2),
    "c3": _abelian("c3", 3),
    "c4": _abelian("c4", 4),
    "c2xc2": _abelian("c2xc2", 2, 2),
    "c5": _abelian("c5", 5),
    "c6": _abelian("c6", 6),
    "s3": lambda: dihedral(3, name="s3"),
    "c7": _abelian("c7", 7),
    "c8": _abelian("c8", 8),
    "c4xc2": _abelian("c4xc2", 4, 2),
    "c2xc2xc2": _abelian("c2xc2xc2", 2, 2, 2),
    "d4": lambda: dihedral(4, name="d4"),
    "q8": lambda: dicyclic(2, name="q8"),
    "c9": _abelian("c9", 9),
    "c3xc3": _abelian("c3xc3", 3, 3),
    "c10": _abelian("c10", 10),
    "d5": lambda: dihedral(5, name="d5"),
    "c11": _abelian("c11", 11),
    "c12": _abelian("c12", 12),
    "c6xc2": _abelian("c6xc2", 6, 2),
    "d6": lambda: dihedral(6, name="d6"),
    "a4": alternating4,
    "dic3": lambda: dicyclic(3, name="dic3"),
    "c13": _abelian("c13", 13),
    "c14": _abelian("c14", 14),
    "d7": lambda: dihedral(7, name="d7"),
    "c15": _abelian("c15", 15),
    "c16": _abelian("c16", 16),
    "c4xc4": _abelian("c4xc4", 4, 4),
    "c8xc2": _abelian("c8xc2", 8, 2),
    "c4xc2xc2": _abelian("c4xc2xc2", 4, 2, 2),
    "c2xc2xc2xc2": _abelian("c2xc2xc2xc2", 2, 2, 2, 2),
    "d8": lambda: dihedral(8, name="d8"),
    "q16": lambda: dicyclic(4, name="q16"),
    "sd16": semidihedral16,
    "m16": modular16,
    "d4xc2": lambda: from_cayley_table(direct_product(dihedral(4), cyclic(2)).mul, name="d4xc2"),
    "q8xc2": lambda: from_cayley_table(direct_product(dicyclic(2), cyclic(2)).mul, name="q8xc2"),
    "c4sc4": c4_semi_c4,
    "c4xc2sc2": c4xc2_semi_c2,
    "pauli16": pauli16,
    "c3xc6": c3xc6_labeled,
}

CORPUS_NAMES: tuple[str, ...] = tuple(_BUILDERS)

# the count of isomorphism classes per order covered by the corpus
CLASS_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 18: 1}


@lru_cache(maxsize=None)
def build_group(name: str) -> FiniteGroup:
    """Construct a corpus group from scratch (no fixture files involved)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown corpus group {name!r}") from None
    return builder()


def corpus_dir() -> Path:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return Path(override)
    return DATA_DIR / "groups"


@lru_cache(maxsize=None)
def _load_fixture(name: str, path_str: str) -> FiniteGroup:
    from .io import read_group_file

    return read_group_file(Path(path_str))


def corpus_group(name: str) -> FiniteGroup:
    """Load one bundled group by name, validating the fixture file."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown corpus group {name!r}")
    path = corpus_dir() / f"{name}.json"
    if path.exists():
        return _load_fixture(name, str(path))
    return build_group(name)


def corpus(max_order: Optional[int] = None) -> dict[str, FiniteGroup]:
    """All bundled groups (optionally capped by order), keyed by name."""
    out = {}
    for name in CORPUS_NAMES:
        group = corpus_group(name)
        if max_order is None or group.order <= max_order:
            out[name] = group
    return out


def nine_part_partition_path() -> Path:
    return DATA_DIR / "partitions" / "c3xc6_nine_parts.json"


def write_fixture_files(target: Optional[Path] = None) -> list[Path]:
    """Regenerate all fixture JSON files from the builders."""
    from .io import write_group_file

    target = target or (DATA_DIR / "groups")
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name in CORPUS_NAMES:
        path = target / f"{name}.json"
        write_group_file(build_group(name), path)
        written.append(path)
    return written
