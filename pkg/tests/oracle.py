"""Independent brute-force oracles used only by the test suite.

Nothing here imports the library's trace calculus: eigenspace dimensions
are recomputed from explicit signed permutation matrices on the divisor
basis, and genera of X_0(N) are recomputed from the classical index /
elliptic-point / cusp-count formula.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

# ---------------------------------------------------------------------------
# Signed permutation matrices on the divisor lattice.
#
# The divisor basis of a block is indexed by exponent vectors (a_q) with
# 0 <= a_q <= m_q over the primes q dividing N/M.  A full-prime-part
# involution attached to a set P of primes sends a_q -> m_q - a_q for
# q in P and fixes the other coordinates.  A coordinate can only carry a
# sign where the involution fixes it: the middle exponent m_q/2 (m_q even)
# carries the form's eigenvalue eps_q, as does the global scalar action
# for p in P with m_p = 0.  Swapped pairs carry entry 1; any other choice
# of swap scalars is conjugate and has the same eigenspace dimensions.
# ---------------------------------------------------------------------------


def lattice_basis(exponents: dict[int, int]) -> list[tuple[int, ...]]:
    primes = sorted(exponents)
    ranges = [range(exponents[q] + 1) for q in primes]
    return [tuple(v) for v in product(*ranges)]


def involution_matrix(
    exponents: dict[int, int], eps: dict[int, int], element: frozenset[int]
) -> list[list[int]]:
    """Matrix of the involution for the prime set ``element`` on the
    divisor basis.  ``eps[p]`` must be present for every p in the element
    with m_p = 0 or m_p even."""
    primes = sorted(exponents)
    basis = lattice_basis(exponents)
    index = {b: i for i, b in enumerate(basis)}
    scalar = 1
    for p in element:
        if exponents.get(p, 0) == 0:
            scalar *= eps[p]
    n = len(basis)
    mat = [[0] * n for _ in range(n)]
    for b in basis:
        image = []
        sign = scalar
        for q, a in zip(primes, b):
            if q in element:
                m = exponents[q]
                image.append(m - a)
                if m - a == a:  # fixed middle coordinate carries eps_q
                    sign *= eps[q]
            else:
                image.append(a)
        mat[index[tuple(image)]][index[b]] = sign
    return mat


def _mat_add(a, b, ca=1, cb=1):
    return [
        [ca * x + cb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)
    ]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def frac_rank(mat: list[list[Fraction]]) -> int:
    """Rank by exact Gaussian elimination over Q."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def oracle_eigenspace_dim(
    exponents: dict[int, int],
    eps: dict[int, int],
    hecke_degree: int,
    generators: list[frozenset[int]],
    character: list[int],
) -> int:
    """Eigenspace dimension via the rank of the explicit character
    projector, times the Hecke degree."""
    size = 1
    for m in exponents.values():
        size *= m + 1
    proj = [[Fraction(0)] * size for _ in range(size)]
    k = len(generators)
    for r in range(k + 1):
        for subset in combinations(range(k), r):
            sign = 1
            element: frozenset[int] = frozenset()
            for i in subset:
                sign *= character[i]
                element |= generators[i]
            mat = involution_matrix(exponents, eps, element)
            proj = _mat_add(proj, mat, 1, Fraction(sign, 2**k))
    return hecke_degree * frac_rank(proj)


# ---------------------------------------------------------------------------
# Classical genus formula for X_0(N), N odd:
#   g = 1 + mu/12 - nu2/4 - nu3/3 - nuinf/2
# with mu the index of Gamma_0(N), nu2/nu3 the elliptic point counts and
# nuinf the number of cusps.
# ---------------------------------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
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


def _euler_phi(n: int) -> int:
    out = n
    for p in _factorize(n):
        out = out // p * (p - 1)
    return out


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in _factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def genus_x0_classical(n: int) -> int:
    if n % 2 == 0:
        raise ValueError("oracle implemented for odd levels only")
    fac = _factorize(n)
    mu = n
    for p in fac:
        mu = mu // p * (p + 1)
    nu2 = 1
    for p in fac:
        nu2 *= 1 + (1 if p % 4 == 1 else -1)
    nu3 = 0 if n % 9 == 0 else 1
    if n % 9 != 0:
        for p in fac:
            if p == 3:
                continue
            nu3 *= 1 + (1 if p % 3 == 1 else -1)
    nuinf = sum(_euler_phi(gcd(d, n // d)) for d in _divisors(n))
    g = Fraction(1) + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nuinf, 2)
    assert g.denominator == 1
    return int(g)
