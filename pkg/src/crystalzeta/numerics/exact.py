"""Exact Bernoulli and Euler numbers and Bernoulli polynomials.

Conventions follow the generating functions

    t / (e^t - 1)        = sum B_n t^n / n!      (so B_1 = -1/2)
    2 e^t / (e^(2t) + 1) = sum E_n t^n / n!      (so E_2 = -1)
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

_lock = threading.Lock()
_bernoulli: list[Fraction] = [Fraction(1)]
_euler: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """Return the Bernoulli number B_n as an exact fraction."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(_bernoulli):
        return _bernoulli[n]
    with _lock:
        table = _bernoulli
        for m in range(len(table), n + 1):
            if m > 1 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            # sum_{k<=m} C(m+1, k) B_k = 0
            acc = sum(comb(m + 1, k) * table[k] for k in range(m))
            table.append(-acc / (m + 1))
    return _bernoulli[n]


def euler_number(n: int) -> Fraction:
    """Return the Euler number E_n (integer valued, zero for odd n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(_euler):
        return _euler[n]
    with _lock:
        table = _euler
        for m in range(len(table), n + 1):
            if m % 2 == 1:
                table.append(Fraction(0))
                continue
            # sech(t) cosh(t) = 1 gives sum_{k even} C(m, k) E_k = 0 for m > 0
            acc = sum(comb(m, k) * table[k] for k in range(0, m, 2))
            table.append(-acc)
    return _euler[n]


def bernoulli_polynomial(n: int, x) -> Fraction:
    """Evaluate B_n(x) = sum_k C(n, k) B_k x^(n-k) exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Fraction(x)
    return sum(
        (comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def bernoulli_table(n: int) -> list[Fraction]:
    """B_0 .. B_n as a list (used by the Euler-Maclaurin tails)."""
    bernoulli_number(n)
    return list(_bernoulli[: n + 1])
