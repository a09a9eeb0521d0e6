"""Small exact-arithmetic helpers shared across the package.

Everything operates on plain Python integers; the levels involved are tiny
(at most a few thousand), so trial division is entirely adequate.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as ``{p: v_p(n)}``."""
    if n < 1:
        raise ValueError(f"cannot factor non-positive integer {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def count_divisors(n: int) -> int:
    """Number of positive divisors tau(n)."""
    return prod(e + 1 for e in factorize(n).values())


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, ascending."""
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def prod(items) -> int:
    result = 1
    for x in items:
        result *= x
    return result
