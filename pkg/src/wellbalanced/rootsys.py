"""Simple root systems in Bourbaki coordinates, stored with exact integers.

Every vector is a tuple of ints holding *twice* the true ambient coordinate,
so the half-integer roots of E6/E7/E8/F4 stay integral.  Inner products of
two stored vectors are therefore four times the true inner product.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, InadmissibleRank

Vector = tuple[int, ...]

SCALE = 2
FAMILIES = "ABCDEFG"


@dataclass(frozen=True, order=True)
class DynkinLabel:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, n = self.family, self.rank
        if not isinstance(n, int) or isinstance(n, bool):
            raise InadmissibleRank(f"rank must be an integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(fam)
        if not ok:
            raise InadmissibleRank(f"no simple root system {fam}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_exceptional(self) -> bool:
        return self.family in "EFG"

    @classmethod
    def parse(cls, text: str) -> "DynkinLabel":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise InadmissibleRank(f"cannot parse Dynkin label {text!r}")
        return cls(text[0], int(text[1:]))


class RootRef(NamedTuple):
    """Signed reference to a root: ``sign * positive_roots[index]``."""

    index: int
    sign: int


def scaled_inner(a: Sequence[int], b: Sequence[int]) -> int:
    """Return 4<a, b> for two stored vectors (exact)."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions {len(a)} and {len(b)} differ")
    return sum(x * y for x, y in zip(a, b))


def support(v: Sequence[int]) -> set[int]:
    """1-based indices of the nonzero coordinates of ``v``."""
    return {i + 1 for i, x in enumerate(v) if x != 0}


def e(i: int, dim: int, coeff: int = 1) -> Vector:
    """Stored form of ``coeff * e_i`` (1-based)."""
    v = [0] * dim
    v[i - 1] = SCALE * coeff
    return tuple(v)


def add(*vs: Sequence[int]) -> Vector:
    if len(vs) == 2:
        return tuple(map(operator.add, *vs))
    return tuple(sum(c) for c in zip(*vs))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(map(operator.sub, a, b))


def neg(a: Sequence[int]) -> Vector:
    return tuple(-x for x in a)


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def half_spin(signs: Iterable[int]) -> Vector:
    """Stored form of ``1/2 * sum(signs[i] e_{i+1})``; entries are +-1."""
    return tuple(int(s) for s in signs)


def true_coords(v: Sequence[int]) -> tuple:
    """Convert a stored vector back to true coordinates (ints or halves)."""
    from fractions import Fraction

    return tuple(x // SCALE if x % SCALE == 0 else Fraction(x, SCALE) for x in v)


def _pm(i: int, j: int, dim: int, si: int, sj: int) -> Vector:
    v = [0] * dim
    v[i - 1] = SCALE * si
    v[j - 1] += SCALE * sj
    return tuple(v)


def _classical_roots(family: str, n: int) -> tuple[int, list[Vector]]:
    if family == "A":
        dim = n + 1
        return dim, [_pm(i, j, dim, 1, -1) for i, j in combinations(range(1, dim + 1), 2)]
    dim = n
    roots = []
    for i, j in combinations(range(1, n + 1), 2):
        roots.append(_pm(i, j, dim, 1, -1))
        roots.append(_pm(i, j, dim, 1, 1))
    if family == "B":
        roots += [e(i, dim) for i in range(1, n + 1)]
    elif family == "C":
        roots += [e(i, dim, 2) for i in range(1, n + 1)]
    return dim, roots


def _e_roots(n: int) -> list[Vector]:
    dim = 8
    roots: list[Vector] = []
    if n == 6:
        pairs = list(combinations(range(1, 6), 2))
    elif n == 7:
        pairs = list(combinations(range(1, 7), 2))
    else:
        pairs = list(combinations(range(1, 9), 2))
    for i, j in pairs:
        roots.append(_pm(i, j, dim, -1, 1))
        roots.append(_pm(i, j, dim, 1, 1))
    if n == 7:
        roots.append(_pm(7, 8, dim, -1, 1))
    free = {6: 5, 7: 6, 8: 7}[n]
    want_parity = {6: 0, 7: 1, 8: 0}[n]
    for nu in product((0, 1), repeat=free):
        if sum(nu) % 2 != want_parity:
            continue
        signs = [(-1) ** k for k in nu]
        tail = {6: [-1, -1, 1], 7: [-1, 1], 8: [1]}[n]
        roots.append(half_spin(signs + tail))
    return roots


def _f4_roots() -> list[Vector]:
    dim = 4
    roots = [e(i, dim) for i in range(1, 5)]
    for i, j in combinations(range(1, 5), 2):
        roots.append(_pm(i, j, dim, 1, -1))
        roots.append(_pm(i, j, dim, 1, 1))
    for signs in product((1, -1), repeat=3):
        roots.append(half_spin((1,) + signs))
    return roots


def g2_simple() -> tuple[Vector, Vector]:
    """Bourbaki embedding of the G2 simple roots in R^3."""
    a1 = sub(e(1, 3), e(2, 3))
    a2 = add(e(1, 3, -2), e(2, 3), e(3, 3))
    return a1, a2


def g2_root(c1: int, c2: int) -> Vector:
    """Stored vector of ``c1*alpha_1 + c2*alpha_2`` in G2."""
    a1, a2 = g2_simple()
    return add(scale(c1, a1), scale(c2, a2))


# Positive roots of G2 in the simple-root basis, in the order printed in Table 1.
G2_COEFFS = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))


def _simple_roots(family: str, n: int, dim: int) -> list[Vector]:
    if family in "ABCD":
        chain = [_pm(i, i + 1, dim, 1, -1) for i in range(1, n)]
        if family == "A":
            last = _pm(n, n + 1, dim, 1, -1)
        elif family == "B":
            last = e(n, dim)
        elif family == "C":
            last = e(n, dim, 2)
        else:
            last = _pm(n - 1, n, dim, 1, 1)
        return chain + [last]
    if family == "E":
        a1 = half_spin([1, -1, -1, -1, -1, -1, -1, 1])
        a2 = _pm(1, 2, dim, 1, 1)
        rest = [_pm(i - 2, i - 1, dim, -1, 1) for i in range(3, n + 1)]
        return [a1, a2] + rest
    if family == "F":
        return [_pm(2, 3, dim, 1, -1), _pm(3, 4, dim, 1, -1), e(4, dim), half_spin([1, -1, -1, -1])]
    return list(g2_simple())


@dataclass(frozen=True)
class RootSystem:
    label: DynkinLabel
    ambient_dim: int
    positive_roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    membership: dict = field(repr=False, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.positive_roots)

    def __getitem__(self, i: int) -> Vector:
        return self.positive_roots[i]

    def lookup(self, v: Sequence[int]) -> RootRef | None:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"expected dimension {self.ambient_dim}, got {len(v)}")
        return self.membership.get(tuple(v))

    def is_root(self, v: Sequence[int]) -> bool:
        return self.lookup(v) is not None

    def index(self, v: Sequence[int]) -> int:
        """Index of a *positive* root; raises KeyError otherwise."""
        ref = self.lookup(v)
        if ref is None or ref.sign != 1:
            raise KeyError(f"{v} is not a positive root of {self.label}")
        return ref.index

    def to_json(self) -> dict:
        return {
            "family": self.label.family,
            "rank": self.label.rank,
            "ambient_dim": self.ambient_dim,
            "scale": SCALE,
            "positive_roots": [list(r) for r in self.positive_roots],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, doc: dict) -> "RootSystem":
        if doc.get("scale") != SCALE:
            raise ValueError(f"unsupported scale {doc.get('scale')!r}")
        rs = build_root_system(DynkinLabel(doc["family"], doc["rank"]))
        roots = tuple(tuple(r) for r in doc["positive_roots"])
        if roots != rs.positive_roots or doc["ambient_dim"] != rs.ambient_dim:
            raise ValueError(f"document does not match canonical {rs.label}")
        return rs


def build_root_system(label: DynkinLabel | str) -> RootSystem:
    if isinstance(label, str):
        label = DynkinLabel.parse(label)
    return _build(label)


@lru_cache(maxsize=None)
def _build(label: DynkinLabel) -> RootSystem:
    fam, n = label.family, label.rank
    if fam in "ABCD":
        dim, roots = _classical_roots(fam, n)
    elif fam == "E":
        dim, roots = 8, _e_roots(n)
    elif fam == "F":
        dim, roots = 4, _f4_roots()
    else:
        dim, roots = 3, [g2_root(c1, c2) for c1, c2 in G2_COEFFS]
    roots = sorted(set(roots))
    membership: dict[Vector, RootRef] = {}
    for i, r in enumerate(roots):
        membership[r] = RootRef(i, 1)
        membership[neg(r)] = RootRef(i, -1)
    if len(membership) != 2 * len(roots):
        raise AssertionError(f"{label}: R+ meets -R+")
    return RootSystem(
        label=label,
        ambient_dim=dim,
        positive_roots=tuple(roots),
        simple_roots=tuple(_simple_roots(fam, n, dim)),
        membership=membership,
    )


def expected_count(label: DynkinLabel) -> int:
    n = label.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[label.family]


def positive_sum(rs: RootSystem) -> Vector:
    """Stored form of 2*rho, the sum of all positive roots."""
    return add(*rs.positive_roots)


def is_root(rs: RootSystem, v: Sequence[int]) -> RootRef | None:
    """Signed reference to ``v`` if it is a root of ``rs``, else None."""
    return rs.lookup(v)


def format_root(v: Sequence[int]) -> str:
    """Human-readable expression such as ``e1-e3`` or ``1/2(e1-e2+...)``."""
    if all(x % 2 for x in v):
        body = "".join(("+" if x > 0 else "-") + f"e{i + 1}" for i, x in enumerate(v))
        return f"1/2({body.lstrip('+')})"
    parts = []
    for i, x in enumerate(v):
        if x == 0:
            continue
        c = x // SCALE
        coef = "" if abs(c) == 1 else str(abs(c))
        parts.append(("+" if c > 0 else "-") + f"{coef}e{i + 1}")
    return "".join(parts).lstrip("+") or "0"
