"""Balanced, strongly orthogonal and well-balanced subsets of positive roots.

Subsets are addressed by indices into ``rs.positive_roots`` (canonical order).
Signings are decided exactly by a meet-in-the-middle search; when a subset is
too large for the configured budget the solver refuses with
:class:`BudgetExceeded` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .certificates import Certificate
from .errors import AlreadyWellBalanced, BudgetExceeded, IdenticalRoots
from .lattice import half_sum_obstruction
from .rootsys import DynkinLabel, RootSystem, add, build_root_system, scale, sub


@dataclass(frozen=True)
class SubsetSelection:
    label: DynkinLabel
    indices: tuple[int, ...]

    @classmethod
    def of(cls, rs: RootSystem, indices: Iterable[int]) -> "SubsetSelection":
        idx = tuple(sorted(set(indices)))
        if idx and (idx[0] < 0 or idx[-1] >= len(rs)):
            raise IndexError(f"root index out of range for {rs.label}")
        return cls(rs.label, idx)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        return {
            "system": {"family": self.label.family, "rank": self.label.rank},
            "indices": list(self.indices),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SubsetSelection":
        sysd = doc["system"]
        rs = build_root_system(DynkinLabel(sysd["family"], sysd["rank"]))
        return cls.of(rs, doc["indices"])


@dataclass(frozen=True)
class SignedCombination:
    """A sign for each root of a subset; a witness when the signed sum vanishes."""

    label: DynkinLabel
    terms: tuple[tuple[int, int], ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    def total(self, rs: RootSystem) -> tuple[int, ...]:
        if not self.terms:
            return tuple([0] * rs.ambient_dim)
        idx, signs = zip(*self.terms)
        m = _root_matrix(rs.label)
        return tuple(int(x) for x in np.asarray(signs, dtype=np.int64) @ m[list(idx)])

    def is_witness(self, rs: RootSystem) -> bool:
        idx = self.indices
        if rs.label != self.label or len(set(idx)) != len(idx):
            return False
        if any(s not in (1, -1) or not 0 <= i < len(rs) for i, s in self.terms):
            return False
        return not any(self.total(rs))

    def negated(self) -> "SignedCombination":
        return SignedCombination(self.label, tuple((i, -s) for i, s in self.terms))

    def sign_of(self, index: int) -> int:
        return dict(self.terms)[index]

    def to_json(self) -> dict:
        return {
            "system": {"family": self.label.family, "rank": self.label.rank},
            "terms": [[i, s] for i, s in self.terms],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SignedCombination":
        sysd = doc["system"]
        return cls(DynkinLabel(sysd["family"], sysd["rank"]), tuple((int(i), int(s)) for i, s in doc["terms"]))


@dataclass(frozen=True)
class SolverBudget:
    max_subset_size: int = 36
    max_table: int = 2**20
    # seconds; enforced between solver calls by the exhaustive drivers
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.max_subset_size <= 0 or self.max_table <= 0:
            raise ValueError("budget values must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


DEFAULT_BUDGET = SolverBudget()


def _indices(subset: SubsetSelection | Iterable[int]) -> tuple[int, ...]:
    if isinstance(subset, SubsetSelection):
        return subset.indices
    return tuple(sorted(set(subset)))


# --- strong orthogonality -------------------------------------------------


def strongly_orthogonal_pair(rs: RootSystem, a: int, b: int) -> bool:
    """True iff neither ``a+b`` nor ``a-b`` is a root (indices into R+)."""
    if a == b:
        raise IdenticalRoots(f"root {a} paired with itself")
    x, y = rs.positive_roots[a], rs.positive_roots[b]
    return not rs.is_root(add(x, y)) and not rs.is_root(sub(x, y))


@lru_cache(maxsize=None)
def _root_matrix(label: DynkinLabel) -> np.ndarray:
    m = np.array(build_root_system(label).positive_roots, dtype=np.int64)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def _so_masks(label: DynkinLabel) -> tuple[int, ...]:
    rs = build_root_system(label)
    n = len(rs)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if strongly_orthogonal_pair(rs, i, j):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return tuple(masks)


def so_masks(rs: RootSystem) -> tuple[int, ...]:
    """Bitmask of strongly orthogonal partners for each positive root."""
    return _so_masks(rs.label)


def strongly_orthogonal_set(rs: RootSystem, subset: SubsetSelection | Iterable[int]) -> bool:
    idx = _indices(subset)
    for k, a in enumerate(idx):
        for b in idx[k + 1:]:
            if not strongly_orthogonal_pair(rs, a, b):
                return False
    return True


def enumerate_strongly_orthogonal(
    rs: RootSystem, min_size: int = 0, max_size: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every strongly orthogonal subset once, in lexicographic index order."""
    masks = so_masks(rs)
    n = len(rs)
    top = n if max_size is None else max_size
    if min_size > top:
        return
    cur: list[int] = []

    def rec(cand: int) -> Iterator[tuple[int, ...]]:
        if len(cur) >= min_size:
            yield tuple(cur)
        if len(cur) == top:
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            cur.append(i)
            yield from rec(cand & masks[i])
            cur.pop()

    yield from rec((1 << n) - 1)


def max_strongly_orthogonal(rs: RootSystem) -> tuple[int, tuple[int, ...]]:
    """Maximum strongly orthogonal subset by branch and bound (max clique).

    Uses a greedy-colouring bound; the returned set is the first maximum
    found in canonical order.
    """
    masks = so_masks(rs)
    n = len(rs)
    best: list[int] = []

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy colouring; returns (vertex, colour number) in colour order
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~masks[v]
                rest &= ~low
                out.append((v, colour))
        return out

    def rec(cur: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(cur) > len(best):
                best = list(cur)
            return
        order = colour_bound(cand)
        for v, c in reversed(order):
            if len(cur) + c <= len(best):
                return
            cur.append(v)
            rec(cur, cand & masks[v])
            cur.pop()
            cand &= ~(1 << v)

    rec([], (1 << n) - 1)
    return len(best), tuple(sorted(best))


# --- signings ---------------------------------------------------------------


def _half_sums(vecs: np.ndarray) -> np.ndarray:
    """All signed sums of the rows; row ``m`` of the result uses sign ``-`` on
    element ``k`` iff bit ``len-1-k`` of ``m`` is set (first element = MSB)."""
    dim = vecs.shape[1]
    out = np.zeros((1, dim), dtype=np.int64)
    for v in vecs[::-1]:
        out = np.concatenate([out + v, out - v])
    return out


def _encoder(vecs: np.ndarray):
    bound = np.abs(vecs).sum(axis=0)
    radix = 1
    mults = []
    for b in bound.tolist():
        mults.append(radix)
        radix *= 2 * b + 1
    if radix >= 2**62:
        return None
    m = np.array(mults, dtype=np.int64)
    off = bound.astype(np.int64)
    return lambda rows: (rows + off) @ m


def find_zero_signing(
    rs: RootSystem, subset: SubsetSelection | Iterable[int], budget: SolverBudget = DEFAULT_BUDGET
) -> SignedCombination | None:
    """Exact search for signs with vanishing signed sum over ``subset``.

    The first root is fixed to ``+``; the rest are split in two halves whose
    signed partial sums are matched through a lookup table.  Among all
    witnesses the lexicographically least sign vector (``+`` before ``-``, in
    canonical root order) is returned.
    """
    idx = _indices(subset)
    n = len(idx)
    if n == 0:
        return SignedCombination(rs.label, ())
    if n > budget.max_subset_size:
        raise BudgetExceeded(f"subset of {n} roots exceeds max_subset_size={budget.max_subset_size}")
    vecs = np.array([rs.positive_roots[i] for i in idx], dtype=np.int64)
    if (vecs.sum(axis=0) % 2).any():
        return None
    rest = n - 1
    na = rest // 2
    nb = rest - na
    if 2**nb > budget.max_table:
        raise BudgetExceeded(f"half table 2^{nb} exceeds max_table={budget.max_table}")
    a_vecs, b_vecs = vecs[1:1 + na], vecs[1 + na:]
    sums_a = _half_sums(a_vecs) + vecs[0]
    sums_b = _half_sums(b_vecs)
    enc = _encoder(vecs)
    if enc is None:
        hit = _match_dict(sums_a, sums_b)
    else:
        keys_b = enc(-sums_b)
        uniq, first = np.unique(keys_b, return_index=True)
        keys_a = enc(sums_a)
        found = np.nonzero(np.isin(keys_a, uniq))[0]
        hit = None
        if found.size:
            ma = int(found[0])
            mb = int(first[np.searchsorted(uniq, keys_a[ma])])
            hit = (ma, mb)
    if hit is None:
        return None
    ma, mb = hit
    signs = [1]
    signs += [-1 if (ma >> (na - 1 - k)) & 1 else 1 for k in range(na)]
    signs += [-1 if (mb >> (nb - 1 - k)) & 1 else 1 for k in range(nb)]
    combo = SignedCombination(rs.label, tuple(zip(idx, signs)))
    if not combo.is_witness(rs):
        raise AssertionError("solver produced a non-vanishing combination")
    return combo


def _match_dict(sums_a: np.ndarray, sums_b: np.ndarray) -> tuple[int, int] | None:
    table: dict[tuple, int] = {}
    for m, row in enumerate(map(tuple, (-sums_b).tolist())):
        table.setdefault(row, m)
    for m, row in enumerate(map(tuple, sums_a.tolist())):
        if row in table:
            return m, table[row]
    return None


def is_balanced(
    rs: RootSystem, subset: SubsetSelection | Iterable[int], budget: SolverBudget = DEFAULT_BUDGET
) -> bool:
    return find_zero_signing(rs, subset, budget) is not None


def complement(rs: RootSystem, subset: SubsetSelection | Iterable[int]) -> tuple[int, ...]:
    idx = set(_indices(subset))
    return tuple(i for i in range(len(rs)) if i not in idx)


def is_well_balanced(
    rs: RootSystem, subset: SubsetSelection | Iterable[int], budget: SolverBudget = DEFAULT_BUDGET
) -> bool:
    if not strongly_orthogonal_set(rs, complement(rs, subset)):
        return False
    return is_balanced(rs, subset, budget)


def lattice_membership_obstruction(
    rs: RootSystem, subset: SubsetSelection | Iterable[int]
) -> Certificate | None:
    """Certificate that ``subset`` is not balanced, when the lattice test finds one."""
    idx = _indices(subset)
    found = half_sum_obstruction([rs.positive_roots[i] for i in idx])
    if found is None:
        return None
    w, q = found
    return Certificate(
        kind="LatticeObstruction",
        label=rs.label,
        value=None,
        payload={"subset": list(idx), "test_vector": list(w), "modulus": q},
    )


# --- augmentation -------------------------------------------------------------


def augment_balanced(
    rs: RootSystem, subset: SubsetSelection | Iterable[int], signs: SignedCombination
) -> tuple[tuple[int, ...], SignedCombination]:
    """One enlargement step for a balanced but not well-balanced subset.

    Takes the first pair ``(b1, b2)`` of the complement that is not strongly
    orthogonal and the positive root ``g`` among ``b1 +- b2`` (sum preferred).
    If ``g`` is outside ``subset`` all three roots are added; otherwise ``g`` is
    traded for ``b1, b2``.
    """
    idx = _indices(subset)
    if sorted(signs.indices) != list(idx) or not signs.is_witness(rs):
        raise ValueError("signs is not a witness for subset")
    comp = complement(rs, idx)
    pair = None
    for k, a in enumerate(comp):
        for b in comp[k + 1:]:
            if not strongly_orthogonal_pair(rs, a, b):
                pair = (a, b)
                break
        if pair:
            break
    if pair is None:
        raise AlreadyWellBalanced(f"{len(idx)}-element subset of {rs.label} is already well-balanced")
    b1, b2 = pair
    x1, x2 = rs.positive_roots[b1], rs.positive_roots[b2]
    ref = rs.lookup(add(x1, x2))
    if ref is not None:
        is_sum, g = True, ref.index
    else:
        ref = rs.lookup(sub(x1, x2))
        if ref.sign < 0:
            b1, b2 = b2, b1
        is_sum, g = False, ref.index
    s = dict(signs.terms)
    if g not in s:
        s[b1] = 1
        s[b2] = 1 if is_sum else -1
        s[g] = -1
    else:
        sg = s.pop(g)
        s[b1] = sg
        s[b2] = sg if is_sum else -sg
    new_idx = tuple(sorted(s))
    combo = SignedCombination(rs.label, tuple((i, s[i]) for i in new_idx))
    if not combo.is_witness(rs):
        raise AssertionError("augmentation broke the signed sum")
    return new_idx, combo


def augment_to_well_balanced(
    rs: RootSystem, subset: SubsetSelection | Iterable[int], signs: SignedCombination
) -> tuple[tuple[int, ...], SignedCombination, int]:
    """Iterate :func:`augment_balanced`; returns the final set, witness and step count."""
    idx, combo, steps = _indices(subset), signs, 0
    while True:
        try:
            idx, combo = augment_balanced(rs, idx, combo)
        except AlreadyWellBalanced:
            return idx, combo, steps
        steps += 1


def signed_sum(rs: RootSystem, terms: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    acc = tuple([0] * rs.ambient_dim)
    for i, s in terms:
        acc = add(acc, scale(s, rs.positive_roots[i]))
    return acc


__all__ = [
    "SubsetSelection",
    "SignedCombination",
    "SolverBudget",
    "DEFAULT_BUDGET",
    "strongly_orthogonal_pair",
    "strongly_orthogonal_set",
    "enumerate_strongly_orthogonal",
    "max_strongly_orthogonal",
    "find_zero_signing",
    "is_balanced",
    "is_well_balanced",
    "augment_balanced",
    "augment_to_well_balanced",
    "lattice_membership_obstruction",
    "complement",
]
