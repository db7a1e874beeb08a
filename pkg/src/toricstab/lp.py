"""Exact LP feasibility over Q: find lambda >= 0 with A lambda = b.

Phase-one simplex on a dense Fraction tableau with Bland's rule, so it always
terminates.  Problem sizes here are tiny (Picard rank x number of rays).
"""
from __future__ import annotations

from fractions import Fraction


def nonnegative_solution(columns, target):
    """Return a list of nonnegative Fractions lam with sum lam[j]*columns[j] == target,
    or None if no such combination exists.

    ``columns`` is a list of equal-length vectors; ``target`` has the same length.
    """
    m = len(target)
    n = len(columns)
    A = [[Fraction(columns[j][i]) for j in range(n)] for i in range(m)]
    b = [Fraction(x) for x in target]
    if n == 0:
        return [] if all(x == 0 for x in b) else None
    for i in range(m):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]
    # tableau columns: n originals, m artificials, then rhs
    T = [A[i] + [Fraction(int(i == r)) for r in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials -> reduced costs row
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] -= T[i][j]
    for i in range(m):
        obj[n + i] += 1
    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][width] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded direction; cannot happen for a phase-one objective bounded below by 0
            break
        r = best[1]
        piv = T[r][entering]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = obj[entering]
        obj = [x - f * y for x, y in zip(obj, T[r])]
        basis[r] = entering
    if -obj[width] != 0:
        return None
    lam = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            lam[j] = T[i][width]
    return lam
