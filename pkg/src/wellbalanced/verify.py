"""Independent re-checking of certificates.

The verifier rebuilds the root system from the certificate's label and
re-derives every claim with plain integer arithmetic and the predicates of
:mod:`wellbalanced.balance`.  It never trusts the producer's bookkeeping.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .balance import (
    complement,
    enumerate_strongly_orthogonal,
    is_balanced,
    max_strongly_orthogonal,
    strongly_orthogonal_pair,
    strongly_orthogonal_set,
)
from .bounds import packing_bound, support_blocks
from .certificates import Certificate
from .lattice import check_obstruction
from .rootsys import RootSystem, build_root_system, positive_sum, scaled_inner, support


def verify(cert: Certificate, rs: RootSystem | None = None) -> Certificate:
    """Return a copy of ``cert`` with ``verified`` set."""
    rs = rs or build_root_system(cert.label)
    check = _CHECKS[cert.kind]
    try:
        ok = bool(check(cert, rs))
    except (KeyError, IndexError, TypeError, ValueError):
        ok = False
    return cert.stamped(ok)


def _odd_counts(rs: RootSystem) -> list[int]:
    counts = [0] * rs.ambient_dim
    for r in rs.positive_roots:
        for c, x in enumerate(r):
            if (x // 2) % 2 and x % 2 == 0:
                counts[c] += 1
    return counts


def _unit_coords(rs: RootSystem) -> bool:
    """Every true coordinate of every root is 0 or +-1."""
    return all(x in (0, 2, -2) for r in rs.positive_roots for x in r)


def _check_witness(cert: Certificate, rs: RootSystem) -> bool:
    p = cert.payload
    terms = [(int(i), int(s)) for i, s in p["terms"]]
    idx = [i for i, _ in terms]
    if len(set(idx)) != len(idx) or any(s not in (1, -1) for _, s in terms):
        return False
    if any(not 0 <= i < len(rs) for i in idx):
        return False
    if terms:
        rows = np.array([rs.positive_roots[i] for i in idx], dtype=np.int64)
        if (np.array([s for _, s in terms], dtype=np.int64) @ rows).any():
            return False
    comp = complement(rs, idx)
    if list(comp) != list(p["complement"]) or cert.value != len(comp):
        return False
    if p.get("complement_so") and not strongly_orthogonal_set(rs, comp):
        return False
    return True


def _check_lattice(cert: Certificate, rs: RootSystem) -> bool:
    p = cert.payload
    vecs = [rs.positive_roots[i] for i in p["subset"]]
    return check_obstruction(vecs, p["test_vector"], p["modulus"])


def _check_coordinate_parity(cert: Certificate, rs: RootSystem) -> bool:
    if rs.label.family not in "ABD" or not _unit_coords(rs):
        return False
    p = cert.payload
    counts = _odd_counts(rs)
    if counts != p["odd_counts"]:
        return False
    odd = sum(1 for k in counts if k % 2)
    width = max(len(support(r)) for r in rs.positive_roots)
    if width != p["max_odd_support"] or odd != p["odd_coordinates"]:
        return False
    return cert.value == (math.ceil(odd / width) if odd else 0)


def _pairs_and_singles(roots) -> tuple[int, int] | None:
    present = set(roots)
    pairs = singles = 0
    for r in roots:
        nz = [c for c, x in enumerate(r) if x]
        if len(nz) == 1:
            singles += 1
            continue
        if len(nz) != 2 or abs(r[nz[0]]) != abs(r[nz[1]]):
            return None
        flipped = list(r)
        flipped[nz[1]] = -flipped[nz[1]]
        if tuple(flipped) not in present:
            return None
        # e_i + e_j and e_i - e_j combine to a single +-2e_k term
        if abs(r[nz[0]]) != 2:
            return None
        pairs += 1
    return pairs // 2, singles


def _check_pair_count(cert: Certificate, rs: RootSystem) -> bool:
    fam = rs.label.family
    if fam not in "CD":
        return False
    p = cert.payload
    got = _pairs_and_singles(rs.positive_roots)
    if got is None or (got[0], got[1]) != (p["pairs"], p["long_roots"]):
        return False
    terms = got[0] + got[1]
    bound = 1 if terms % 2 else 0
    if fam == "D" and terms % 2:
        counts = _odd_counts(rs)
        if counts != p["odd_counts"]:
            return False
        every_root_odd_somewhere = all(any(x % 4 == 2 for x in r) for r in rs.positive_roots)
        if all(k % 2 == 0 for k in counts) and every_root_odd_somewhere:
            bound = 2
    return cert.value == bound


def _check_e7(cert: Certificate, rs: RootSystem) -> bool:
    if str(rs.label) != "E7":
        return False
    roots = rs.positive_roots
    n = len(roots)
    if any(scaled_inner(r, r) != 8 for r in roots):
        return False
    probe = tuple([1] * rs.ambient_dim)
    if any(abs(scaled_inner(probe, r)) not in (0, 4) for r in roots):
        return False
    rho2 = positive_sum(rs)
    if (scaled_inner(probe, rho2) // 4) % 2 != 1 or scaled_inner(probe, rho2) % 4:
        return False
    if any((scaled_inner(b, rho2) // 4) % 2 for b in roots):
        return False

    def ip(a: int, b: int) -> int:
        return scaled_inner(roots[a], roots[b]) // 4

    p = cert.payload
    step_b = {int(a): b for a, b in p["step_b"]}
    if set(step_b) != set(range(n)):
        return False
    for a, b in step_b.items():
        if b is None or ip(b, a) % 2 == 0:
            return False
    seen = set()
    for a1, a2, b in p["step_c"]:
        if b is None or (ip(b, a1) - ip(b, a2)) % 2 == 0:
            return False
        seen.add((min(a1, a2), max(a1, a2)))
    if seen != set(combinations(range(n), 2)):
        return False
    return cert.value == 3


def _check_so_bound(cert: Certificate, rs: RootSystem) -> bool:
    p = cert.payload
    att = list(p["attaining"])
    if len(att) != p["max_so"] or not strongly_orthogonal_set(rs, att):
        return False
    if p["method"] == "branch_and_bound":
        if max_strongly_orthogonal(rs)[0] != p["max_so"]:
            return False
    elif p["method"] == "support_packing":
        blocks = support_blocks(rs)
        if blocks is None or packing_bound(rs, blocks) != p["max_so"]:
            return False
    else:
        return False
    ref = p.get("refinement")
    if ref is None:
        return cert.value == p["max_so"]
    fam, n = rs.label.family, rs.label.rank
    rule = ref["rule"]
    counts = _odd_counts(rs)
    if rule == "parity_forces_empty":
        # balanced => an even number of dropped roots touch each coordinate;
        # no two roots touching one coordinate are strongly orthogonal
        if fam != "A" or not _unit_coords(rs) or any(k % 2 for k in counts):
            return False
        for c in range(rs.ambient_dim):
            touching = [i for i, r in enumerate(rs.positive_roots) if r[c]]
            if any(strongly_orthogonal_pair(rs, a, b) for a, b in combinations(touching, 2)):
                return False
        return cert.value == 0
    if rule == "parity_exact_cover":
        # an odd number (so exactly one, at most two fit) of dropped roots
        # touches each coordinate; at most one dropped root is short
        if fam != "B" or not _unit_coords(rs) or not all(k % 2 for k in counts):
            return False
        blocks = support_blocks(rs)
        if blocks is None or any(len(m) > 2 for m in blocks.values()):
            return False
        shorts = [i for i, r in enumerate(rs.positive_roots) if len(support(r)) == 1]
        if any(strongly_orthogonal_pair(rs, a, b) for a, b in combinations(shorts, 2)):
            return False
        return cert.value == (n + 1) // 2
    if rule == "rank_needs_long_roots":
        # SO sets have disjoint supports; size n forces the complement to be
        # the n long roots, leaving the e_i +- e_j roots, an odd number of pairs
        if fam != "C":
            return False
        blocks = support_blocks(rs)
        if blocks is None:
            return False
        for members in blocks.values():
            if any(strongly_orthogonal_pair(rs, a, b) for a, b in combinations(members, 2)):
                return False
        long_free = [r for r in rs.positive_roots if len(support(r)) == 2]
        got = _pairs_and_singles(long_free)
        if got is None or got[0] % 2 == 0 or got[0] != ref["long_free_pairs"]:
            return False
        return p["max_so"] == n and cert.value == n - 1
    return False


def _check_exhaustive(cert: Certificate, rs: RootSystem) -> bool:
    p = cert.payload
    tested = [(tuple(c), ref) for c, ref in p["tested"]]
    expected = [c for k in p["sizes"] for c in enumerate_strongly_orthogonal(rs, k, k)]
    if [c for c, _ in tested] != expected:
        return False
    for comp, ref in tested:
        subset = complement(rs, comp)
        if "lattice" in ref:
            w, q = ref["lattice"]
            if not check_obstruction([rs.positive_roots[i] for i in subset], w, q):
                return False
        elif "solver" in ref:
            if is_balanced(rs, subset):
                return False
        else:
            return False
    if p["quantity"] == "min_balanced_cocard":
        return sorted(p["sizes"]) == list(range(cert.value))
    if p["quantity"] == "max_wellbalanced_cocard":
        # the last size must be empty, proving nothing larger exists
        top = max(p["sizes"])
        if any(len(c) == top for c, _ in tested):
            return False
        return sorted(p["sizes"]) == list(range(cert.value + 1, top + 1))
    return False


def _check_trivial(cert: Certificate, rs: RootSystem) -> bool:
    return cert.value == 0


_CHECKS = {
    "Witness": _check_witness,
    "LatticeObstruction": _check_lattice,
    "CoordinateParity": _check_coordinate_parity,
    "PairCountParity": _check_pair_count,
    "E7PairScan": _check_e7,
    "SOSizeBound": _check_so_bound,
    "ExhaustiveSearch": _check_exhaustive,
    "TrivialBound": _check_trivial,
}
