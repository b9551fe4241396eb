"""Explicit balanced and well-balanced subsets for every simple root system.

Each construction is written as a list of ``(vector, sign)`` terms in the
ambient coordinates.  :class:`_Combo` maps each vector to its positive root,
absorbing the sign when the vector is a negative root (so ``e_i - e_j`` may be
used freely in E6/E7 where the stored root is ``-e_i + e_j``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product

from .balance import SignedCombination, complement, find_zero_signing, strongly_orthogonal_set
from .certificates import Certificate
from .errors import NotARoot
from .rootsys import (
    G2_COEFFS,
    SCALE,
    DynkinLabel,
    RootSystem,
    Vector,
    add,
    build_root_system,
    e,
    g2_root,
    half_spin,
    scale,
)


class _Combo:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.signs: dict[int, int] = {}

    def add(self, v: Vector, sign: int) -> None:
        ref = self.rs.lookup(v)
        if ref is None:
            raise NotARoot(f"{v} is not a root of {self.rs.label}")
        if ref.index in self.signs:
            raise ValueError(f"root {ref.index} used twice")
        self.signs[ref.index] = sign * ref.sign

    def extend(self, terms) -> None:
        for v, s in terms:
            self.add(v, s)

    def remove(self, v: Vector) -> int:
        ref = self.rs.lookup(v)
        return self.signs.pop(ref.index) * ref.sign

    def combination(self) -> SignedCombination:
        return SignedCombination(self.rs.label, tuple(sorted(self.signs.items())))


@dataclass(frozen=True)
class WellBalancedCertificate:
    label: DynkinLabel
    subset: tuple[int, ...]
    witness: SignedCombination
    complement: tuple[int, ...]
    complement_so: bool
    cocardinality: int

    def check(self, rs: RootSystem | None = None) -> bool:
        rs = rs or build_root_system(self.label)
        if tuple(sorted(self.witness.indices)) != self.subset:
            return False
        if not self.witness.is_witness(rs):
            return False
        if complement(rs, self.subset) != self.complement:
            return False
        if self.cocardinality != len(rs) - len(self.subset):
            return False
        return not self.complement_so or strongly_orthogonal_set(rs, self.complement)

    def as_certificate(self) -> Certificate:
        return Certificate(
            kind="Witness",
            label=self.label,
            value=self.cocardinality,
            payload={
                "terms": [list(t) for t in self.witness.terms],
                "complement": list(self.complement),
                "complement_so": self.complement_so,
            },
        )

    def to_json(self) -> dict:
        return {
            "system": {"family": self.label.family, "rank": self.label.rank},
            "subset": list(self.subset),
            "witness": self.witness.to_json(),
            "complement": list(self.complement),
            "complement_so": self.complement_so,
            "cocardinality": self.cocardinality,
        }


def certify_signing(rs: RootSystem, combo: SignedCombination, claim_so: bool) -> WellBalancedCertificate:
    subset = tuple(sorted(combo.indices))
    comp = complement(rs, subset)
    so = strongly_orthogonal_set(rs, comp)
    if claim_so and not so:
        raise AssertionError(f"{rs.label}: complement of construction is not strongly orthogonal")
    cert = WellBalancedCertificate(rs.label, subset, combo, comp, so, len(comp))
    if not cert.check(rs):
        raise AssertionError(f"{rs.label}: construction does not re-verify")
    return cert


# --- auxiliary identities ----------------------------------------------------


@dataclass(frozen=True)
class IdentitySum:
    kind: str
    parity: str
    m: int
    dim: int
    terms: tuple[tuple[Vector, int], ...]
    rhs: Vector

    def verify(self) -> bool:
        acc = tuple([0] * self.dim)
        for v, s in self.terms:
            acc = add(acc, scale(s, v))
        return acc == self.rhs


def identity_sum(kind: str, parity: str, m: int) -> IdentitySum:
    """Alternating sums of ``e_i +- e_j`` over ``i < j <= 2m`` (even) or ``2m+1`` (odd).

    ``rhs`` is the closed form: ``-sum e_i``; ``-2 sum e_{2i}``;
    ``sum (-1)^i e_i``; ``0`` for (plus, even), (plus, odd), (minus, even),
    (minus, odd) respectively.
    """
    if kind not in ("plus", "minus") or parity not in ("even", "odd"):
        raise ValueError(f"bad identity selector ({kind!r}, {parity!r})")
    if m < 1:
        raise ValueError("m must be at least 1")
    top = 2 * m if parity == "even" else 2 * m + 1
    dim = top
    sj = 1 if kind == "plus" else -1
    terms = tuple(
        (add(e(i, dim), e(j, dim, sj)), (-1) ** (i + j))
        for i in range(1, top + 1)
        for j in range(i + 1, top + 1)
    )
    zero = tuple([0] * dim)
    if kind == "plus" and parity == "even":
        rhs = add(*(e(i, dim, -1) for i in range(1, top + 1)))
    elif kind == "plus":
        rhs = add(zero, *(e(2 * i, dim, -2) for i in range(1, m + 1)))
    elif parity == "even":
        rhs = add(*(e(i, dim, (-1) ** i) for i in range(1, top + 1)))
    else:
        rhs = zero
    return IdentitySum(kind, parity, m, dim, terms, rhs)


# --- classical building blocks -------------------------------------------------
#
# These return (vector, sign) terms for an ambient dimension ``dim`` and may be
# embedded in larger systems (D5 inside E6, D_n inside C_n, ...).


def _pm(i: int, j: int, dim: int, sj: int) -> Vector:
    v = [0] * dim
    v[i - 1] = SCALE
    v[j - 1] = SCALE * sj
    return tuple(v)


def _a_terms(n: int, dim: int) -> list[tuple[Vector, int]]:
    top = n + 1
    skip = set()
    if n % 2 == 1:
        skip = {(2 * k - 1, 2 * k) for k in range(1, top // 2 + 1)}
    return [
        (_pm(i, j, dim, -1), (-1) ** (i + j))
        for i in range(1, top + 1)
        for j in range(i + 1, top + 1)
        if (i, j) not in skip
    ]


def _pairs(top: int, skip_blocks: bool):
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            if skip_blocks and i % 2 == 1 and j == i + 1:
                continue
            yield i, j


def _b_terms(n: int, dim: int) -> list[tuple[Vector, int]]:
    out = []
    if n % 2 == 0:
        m = n // 2
        out += [(_pm(i, j, dim, 1), (-1) ** (i + j)) for i, j in _pairs(2 * m, False)]
        out += [(_pm(i, j, dim, -1), (-1) ** (i + j)) for i, j in _pairs(2 * m, True)]
        out += [(e(i, dim), 1) for i in range(1, 2 * m + 1)]
    else:
        m = (n - 1) // 2
        out += [(_pm(i, j, dim, 1), (-1) ** (i + j)) for i, j in _pairs(2 * m + 1, False)]
        out += [(_pm(i, j, dim, -1), (-1) ** (i + j + 1)) for i, j in _pairs(2 * m + 1, True)]
        out += [(e(i, dim), 1) for i in range(1, 2 * m + 1)]
    return out


def _both(i: int, j: int, dim: int, s: int) -> list[tuple[Vector, int]]:
    """``s((e_i - e_j) + (e_i + e_j))``."""
    return [(_pm(i, j, dim, -1), s), (_pm(i, j, dim, 1), s)]


def _diff(i: int, j: int, dim: int, s: int) -> list[tuple[Vector, int]]:
    """``s((e_i - e_j) - (e_i + e_j))``."""
    return [(_pm(i, j, dim, -1), s), (_pm(i, j, dim, 1), -s)]


def _c_terms(n: int, dim: int) -> list[tuple[Vector, int]]:
    """Signed combination of C_n roots; omits ``2e_n`` exactly when the
    minimum cocardinality is 1."""
    out: list[tuple[Vector, int]] = []
    if n % 2 == 0:
        m = n // 2
        for i, j in _pairs(2 * m - 1, False):
            out += _both(i, j, dim, (-1) ** (i + j))
        out += [(e(i, dim, 2), (-1) ** i) for i in range(1, 2 * m)]
        for i in range(1, m + 1):
            out += _both(2 * i - 1, 2 * m, dim, 1)
        for i in range(1, m):
            out += _diff(2 * i, 2 * m, dim, (-1) ** i)
        if m % 2 == 0:
            out.append((e(2 * m, dim, 2), -1))
    else:
        m = (n - 1) // 2
        for i, j in _pairs(2 * m, False):
            out += _both(i, j, dim, (-1) ** (i + j))
        out += [(e(i, dim, 2), (-1) ** (i + 1)) for i in range(1, 2 * m + 1)]
        for i in range(1, m + 1):
            out += _both(2 * i, 2 * m + 1, dim, 1)
        for i in range(1, m + 1):
            out += _diff(2 * i - 1, 2 * m + 1, dim, (-1) ** i)
        if m % 2 == 1:
            out.append((e(2 * m + 1, dim, 2), -1))
    return out


def _d_terms(n: int, dim: int) -> list[tuple[Vector, int]]:
    """Signed combination of D_n roots: all of R+ when n = 0,1 mod 4, otherwise
    everything but ``e_{n-1} +- e_n``.  Valid for any n >= 2."""
    out: list[tuple[Vector, int]] = []
    if n % 2 == 0:
        m = n // 2
        for i, j in _pairs(2 * m - 1, False):
            out += _both(i, j, dim, (-1) ** (i + j))
        for i in range(1, m):
            out += _both(2 * i, 2 * m, dim, 1)
        for i in range(1, m + 1):
            if i == m and m % 2 == 1:
                continue
            out += _diff(2 * i - 1, 2 * m, dim, (-1) ** i)
    else:
        m = (n - 1) // 2
        for i, j in _pairs(2 * m, False):
            out += _both(i, j, dim, (-1) ** (i + j))
        for i in range(1, m + 1):
            out += _both(2 * i - 1, 2 * m + 1, dim, 1)
        for i in range(1, m + 1):
            if i == m and m % 2 == 1:
                continue
            out += _diff(2 * i, 2 * m + 1, dim, (-1) ** i)
    return out


def _d_block_terms(n: int, dim: int) -> list[tuple[Vector, int]]:
    """Signed combination of the D_n roots outside ``{e1+-e2, e3+-e4, ...}``."""
    out: list[tuple[Vector, int]] = []
    if n % 2 == 0:
        m = n // 2
        for i, j in _pairs(2 * m - 1, True):
            out += _both(i, j, dim, (-1) ** (i + j))
        for i in range(1, 2 * m - 1):
            out += [(_pm(i, 2 * m, dim, 1), (-1) ** i), (_pm(i, 2 * m, dim, -1), (-1) ** i)]
    else:
        m = (n - 1) // 2
        # the block pairs run up to 2m here (the odd coordinate is 2m+1)
        for i, j in _pairs(2 * m, True):
            out += _both(i, j, dim, (-1) ** (i + j))
        for i in range(1, 2 * m + 1):
            out += [(_pm(i, 2 * m + 1, dim, 1), (-1) ** i), (_pm(i, 2 * m + 1, dim, -1), -(-1) ** i)]
    return out


# --- exceptional building blocks ------------------------------------------------


def _paired_half_spins(prefix_free: int, tail: list[int], parity: int):
    """Half-spin roots ``1/2(sum (-1)^nu(i) e_i + tail)`` with ``sum nu = parity``,
    paired ``nu <-> 1-nu``.  Every pair sums to the same vector, so the first
    half of the pairs (ordered by the smaller pattern) get ``+`` and the rest
    ``-``."""
    pats = [nu for nu in product((0, 1), repeat=prefix_free) if sum(nu) % 2 == parity]
    reps = sorted(nu for nu in pats if nu < tuple(1 - x for x in nu))
    if len(reps) % 2:
        raise AssertionError("odd number of half-spin pairs")
    out = []
    for k, nu in enumerate(reps):
        s = 1 if k < len(reps) // 2 else -1
        for pat in (nu, tuple(1 - x for x in nu)):
            out.append((half_spin([(-1) ** x for x in pat] + tail), s))
    return out


def _e6_spin_terms() -> list:
    # alpha_{+,nu} with sum nu even and alpha_{-,nu} with sum nu odd, nu on 1..4
    plus = _paired_half_spins(4, [1, -1, -1, 1], 0)
    minus = _paired_half_spins(4, [-1, -1, -1, 1], 1)
    return plus + minus


def _e7_spin_terms() -> list:
    return _paired_half_spins(6, [-1, 1], 1)


def _e8_spin_terms() -> list:
    plus = _paired_half_spins(6, [1, 1], 0)
    minus = _paired_half_spins(6, [-1, 1], 1)
    return plus + minus


def _f4_block_terms() -> list:
    dim = 4
    out = []
    for i, j in _pairs(4, True):
        out += _both(i, j, dim, (-1) ** (i + j))
    out += [(e(i, dim), -1) for i in range(1, 5)]
    for signs in product((1, -1), repeat=3):
        minus = sum(1 for s in signs if s < 0)
        out.append((half_spin((1,) + signs), -1 if minus == 2 else 1))
    return out


def load_f4_signing() -> SignedCombination:
    """Cached full signing of R+(F4); re-verified on every load."""
    rs = build_root_system("F4")
    doc = json.loads(resources.files("wellbalanced.data").joinpath("f4_balanced.json").read_text())
    combo = SignedCombination.from_json(doc)
    if not combo.is_witness(rs) or len(combo.terms) != len(rs):
        raise ValueError("cached F4 signing failed re-verification")
    return combo


def solve_f4_signing() -> SignedCombination:
    rs = build_root_system("F4")
    combo = find_zero_signing(rs, range(len(rs)))
    if combo is None:
        raise AssertionError("R+(F4) should be balanced")
    return combo


# --- the two constructions ----------------------------------------------------


def _label(label: DynkinLabel | str) -> DynkinLabel:
    return DynkinLabel.parse(label) if isinstance(label, str) else label


def thm32_witness(label: DynkinLabel | str) -> WellBalancedCertificate:
    """Balanced subset of minimum cocardinality, with its vanishing signing."""
    label = _label(label)
    rs = build_root_system(label)
    fam, n, dim = label.family, label.rank, rs.ambient_dim
    c = _Combo(rs)
    if fam == "A":
        c.extend(_a_terms(n, dim))
    elif fam == "B":
        c.extend(_b_terms(n, dim))
    elif fam == "C":
        c.extend(_c_terms(n, dim))
    elif fam == "D":
        c.extend(_d_terms(n, dim))
    elif fam == "E" and n == 6:
        c.extend(_d_terms(5, dim))
        c.extend(_e6_spin_terms())
    elif fam == "E" and n == 7:
        c.extend(_d_terms(6, dim))
        c.extend(_e7_spin_terms())
    elif fam == "E":
        c.extend(_d_terms(8, dim))
        c.extend(_e8_spin_terms())
    elif fam == "F":
        return certify_signing(rs, load_f4_signing(), claim_so=True)
    else:
        signs = (1, 1, 1, -1, 1, -1)
        c.extend((g2_root(*k), s) for k, s in zip(G2_COEFFS, signs))
    return certify_signing(rs, c.combination(), claim_so=True)


def thm41_witness(label: DynkinLabel | str) -> WellBalancedCertificate:
    """Well-balanced subset of maximum cocardinality, with its signing."""
    label = _label(label)
    rs = build_root_system(label)
    fam, n, dim = label.family, label.rank, rs.ambient_dim
    if fam in "AB":
        return thm32_witness(label)
    c = _Combo(rs)
    if fam == "C":
        c.extend(_d_terms(n, dim))
        if n % 4 in (2, 3):
            # splice 2e_n = (e_{n-1}+e_n) - (e_{n-1}-e_n)
            c.extend([(_pm(n - 1, n, dim, 1), 1), (_pm(n - 1, n, dim, -1), -1), (e(n, dim, 2), -1)])
    elif fam == "D":
        c.extend(_d_block_terms(n, dim))
    elif fam == "E" and n == 6:
        c.extend(_d_block_terms(5, dim))
        c.extend(_e6_spin_terms())
    elif fam == "E" and n == 7:
        c.extend(_d_block_terms(6, dim))
        c.extend(_e7_spin_terms())
    elif fam == "E":
        c.extend(_d_block_terms(8, dim))
        c.extend(_e8_spin_terms())
    elif fam == "F":
        c.extend(_f4_block_terms())
    else:
        c.extend([(g2_root(1, 0), 1), (g2_root(1, 1), -1), (g2_root(3, 1), -1), (g2_root(3, 2), 1)])
    return certify_signing(rs, c.combination(), claim_so=True)


def c5_splice_witness() -> tuple[SignedCombination, tuple[int, ...]]:
    """Signing of C5 roots without ``e1 +- e5``, from the cocardinality-1 signing.

    The terms ``-(e1-e5) + (e1+e5)`` are replaced by ``+2e5``.
    """
    rs = build_root_system("C5")
    dim = rs.ambient_dim
    c = _Combo(rs)
    c.extend(_c_terms(5, dim))
    s_minus = c.remove(_pm(1, 5, dim, -1))
    s_plus = c.remove(_pm(1, 5, dim, 1))
    if (s_minus, s_plus) != (-1, 1):
        raise AssertionError("unexpected signs on e1 +- e5 in the C5 signing")
    c.add(e(5, dim, 2), 1)
    combo = c.combination()
    return combo, complement(rs, combo.indices)
