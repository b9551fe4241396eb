"""Integer diagonalization used to certify that a set of roots cannot be balanced.

If ``sum(s_a * a) == 0`` then ``sum(a) == 2 * sum(a for s_a == -1)``, so the
plain sum of the set lies in twice the lattice spanned by the set.  When it
does not, there is an integer test vector ``w`` and modulus ``q`` with
``<w, a> = 0 (mod q)`` for every member and ``<w, sum(a)> / q`` odd; that pair
is the certificate, and checking it needs nothing but integer arithmetic.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def diagonalize(rows: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Reduce ``rows`` to diagonal form ``U @ M @ C = diag(d)``.

    Only the column transform ``C`` (a ``dim x dim`` unimodular matrix) is
    tracked.  Returns the nonzero diagonal entries and ``C``.
    """
    a = [list(r) for r in rows if any(r)]
    dim = len(rows[0]) if rows else 0
    cols = [[int(i == j) for j in range(dim)] for i in range(dim)]  # C, row-major
    diag: list[int] = []
    t = 0
    while t < dim and t < len(a):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, len(a)):
            row = a[i]
            for j in range(t, dim):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in cols:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, len(a)):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, dim):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, dim):
                x = a[t][j]
                if x:
                    q = x // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in cols:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # move the smallest remaining entry of row/column t onto the pivot
            best = (abs(p), None, None)
            for i in range(t + 1, len(a)):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, None)
            for j in range(t + 1, dim):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), None, j)
            _, bi, bj = best
            if bi is not None:
                a[t], a[bi] = a[bi], a[t]
            elif bj is not None:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
                for row in cols:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(a[t][t])
        a = a[: t + 1] + [r for r in a[t + 1:] if any(r)]
        t += 1
    return diag, cols


def half_sum_obstruction(vectors: Sequence[Sequence[int]]) -> tuple[list[int], int] | None:
    """Return ``(w, q)`` proving ``sum(vectors)`` is not in ``2 * span_Z(vectors)``.

    ``None`` means the lattice test is passed (which proves nothing).
    """
    if not vectors:
        return None
    dim = len(vectors[0])
    total = [sum(c) for c in zip(*vectors)]
    # coordinate test vectors first: w = e_c with q = gcd of the c-th entries
    for c in range(dim):
        g = 0
        for v in vectors:
            g = gcd(g, v[c])
        if g and (total[c] // g) % 2:
            w = [0] * dim
            w[c] = 1
            return w, g
    diag, cols = diagonalize(vectors)
    for t, d in enumerate(diag):
        g = sum(total[k] * cols[k][t] for k in range(dim))
        # g is a multiple of d because the total lies in the lattice
        if (g // d) % 2:
            return [cols[k][t] for k in range(dim)], abs(d)
    return None


def check_obstruction(vectors: Sequence[Sequence[int]], w: Sequence[int], q: int) -> bool:
    """Independent check of a ``(w, q)`` certificate."""
    if q <= 0:
        return False
    total = 0
    for v in vectors:
        p = sum(x * y for x, y in zip(v, w))
        if p % q:
            return False
        total += p // q
    return total % 2 == 1
