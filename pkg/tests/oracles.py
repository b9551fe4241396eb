"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

from itertools import product


def weyl_closure(simple):
    """All roots generated from the simple roots by simple reflections."""
    simple = [tuple(s) for s in simple]

    def ip(a, b):
        return sum(x * y for x, y in zip(a, b))

    def reflect(v, a):
        k = 2 * ip(v, a) // ip(a, a)
        assert 2 * ip(v, a) % ip(a, a) == 0, "not crystallographic"
        return tuple(x - k * y for x, y in zip(v, a))

    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = reflect(v, a)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def naive_signing(vectors):
    """First vanishing signing in lexicographic order (+ before -), with the
    first sign fixed to +, or None.  Plain 2^n enumeration."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return ()
    dim = len(vectors[0])
    for tail in product((1, -1), repeat=len(vectors) - 1):
        signs = (1,) + tail
        if all(sum(s * v[c] for s, v in zip(signs, vectors)) == 0 for c in range(dim)):
            return signs
    return None


def dp_balanced(vectors):
    """Reachable-sums dynamic programme over signed partial sums."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return True
    dim = len(vectors[0])
    sums = {tuple([0] * dim)}
    for v in vectors:
        sums = {tuple(a + b for a, b in zip(s, v)) for s in sums} | {
            tuple(a - b for a, b in zip(s, v)) for s in sums
        }
    return tuple([0] * dim) in sums


def so_pair(all_roots, a, b):
    """Neither a+b nor a-b is a root; ``all_roots`` includes negatives."""
    plus = tuple(x + y for x, y in zip(a, b))
    minus = tuple(x - y for x, y in zip(a, b))
    return plus not in all_roots and minus not in all_roots
