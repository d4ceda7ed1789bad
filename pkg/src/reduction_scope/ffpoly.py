"""Univariate polynomials over a prime field F_p and their factorization.

Polynomials are coefficient lists, constant term first, with no trailing
zeros; ``[]`` is the zero polynomial. The module-level helpers work on bare
lists for speed; :class:`PolyModP` is the validated public value type.

Factorization is the usual pipeline: squarefree decomposition, distinct-degree
factorization driven by the Frobenius (Berlekamp) matrix, then Cantor-Zassenhaus
equal-degree splitting with a random stream seeded from the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ModulusError
from .primes import is_prime

MAX_MODULUS = 1 << 62


def _check_modulus(p: int) -> None:
    if not isinstance(p, int) or p >= MAX_MODULUS or not is_prime(p):
        raise ModulusError(f"modulus {p!r} is not a prime below 2^62")


@dataclass(frozen=True)
class PolyModP:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        _check_modulus(self.p)
        object.__setattr__(self, "coeffs", tuple(trim([c % self.p for c in self.coeffs])))

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], p: int) -> PolyModP:
        return cls(p, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: PolyModP) -> PolyModP:
        if self.p != other.p:
            raise DomainError("moduli differ")
        return PolyModP(self.p, tuple(mul(list(self.coeffs), list(other.coeffs), self.p)))

    def __pow__(self, e: int) -> PolyModP:
        out = PolyModP(self.p, (1,))
        for _ in range(e):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# list-level arithmetic


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a: list[int], c: int, p: int) -> list[int]:
    return trim([x * c % p for x in a])


def monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = a[:]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                r[off + j] = (r[off + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def rem(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd (``[]`` only when both inputs are zero)."""
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a: list[int], p: int) -> list[int]:
    return trim([i * a[i] % p for i in range(1, len(a))])


def mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """a*b mod f for monic f; a and b already reduced."""
    n = len(f) - 1
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # top-down reduction using x^n = -(f_0 + ... + f_{n-1} x^{n-1})
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            off = k - n
            for j in range(n):
                prod[off + j] -= c * f[j]
    return trim([c % p for c in prod[:n]])


def powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    """a^e mod f for monic f."""
    result = [1] if len(f) > 1 else []
    base = rem(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = mulmod(base, base, f, p)
    return result


def frobenius_matrix(f: list[int], p: int) -> list[list[int]]:
    """Rows x^(i*p) mod f for i < deg f; the p-power map on F_p[x]/(f) is linear in this basis."""
    n = len(f) - 1
    xp = powmod([0, 1], p, f, p)
    rows = [[1] + [0] * (n - 1)] if n else []
    cur = [1]
    for _ in range(1, n):
        cur = mulmod(cur, xp, f, p)
        rows.append(cur + [0] * (n - len(cur)))
    return rows


def apply_frobenius(h: list[int], rows: list[list[int]], p: int) -> list[int]:
    """h^p mod f, given the Frobenius matrix of f."""
    n = len(rows)
    acc = [0] * n
    for i, c in enumerate(h):
        if c:
            row = rows[i]
            for j in range(n):
                acc[j] += c * row[j]
    return trim([c % p for c in acc])


# ---------------------------------------------------------------------------
# factorization stages


def squarefree_decomposition(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Monic f -> [(g_i, i)] with f = prod g_i^i and each g_i squarefree, nonconstant."""
    out: list[tuple[list[int], int]] = []
    _sqf(f, p, 1, out)
    merged: dict[int, list[int]] = {}
    for g, m in out:
        merged[m] = mul(merged[m], g, p) if m in merged else g
    return sorted(((g, m) for m, g in merged.items()), key=lambda t: t[1])


def _sqf(f: list[int], p: int, mult: int, out: list) -> None:
    if len(f) <= 1:
        return
    df = derivative(f, p)
    if not df:
        # f is a polynomial in x^p; take the p-th root coefficientwise
        root = [f[i] for i in range(0, len(f), p)]
        _sqf(root, p, mult * p, out)
        return
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i * mult))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        _sqf(root, p, mult * p, out)


def distinct_degree_factorization(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree monic f -> [(g_d, d)], g_d the product of all degree-d irreducible factors."""
    n = len(f) - 1
    if n <= 0:
        return []
    if n == 1:
        return [(f, 1)]
    rows = frobenius_matrix(f, p)
    h = trim(rows[1][:])  # x^p mod f
    g = f
    out = []
    d = 1
    while 2 * d <= len(g) - 1:
        u = gcd(g, sub(rem(h, g, p), [0, 1], p), p)
        if len(u) > 1:
            out.append((u, d))
            g = divmod_(g, u, p)[0]
        d += 1
        h = apply_frobenius(h, rows, p)
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _split_candidate(a: list[int], d: int, g: list[int], p: int) -> list[int]:
    if p == 2:
        # absolute trace a + a^2 + ... + a^(2^(k-1)) with k = d
        t = a
        acc = a
        for _ in range(d - 1):
            t = mulmod(t, t, g, p)
            acc = add(acc, t, p)
        return acc
    e = (p**d - 1) // 2
    return sub(powmod(a, e, g, p), [1], p)


def equal_degree_factorization(g: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Split squarefree monic g whose irreducible factors all have degree d."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        u = gcd(g, _split_candidate(a, d, g, p), p)
        if 1 < len(u) < len(g):
            v = divmod_(g, u, p)[0]
            return equal_degree_factorization(u, d, p, rng) + equal_degree_factorization(v, d, p, rng)


def factor_degrees(f: list[int], p: int) -> list[int]:
    """Ascending degrees of the irreducible factors of a squarefree monic f (no splitting needed)."""
    out = []
    for g, d in distinct_degree_factorization(f, p):
        out.extend([d] * ((len(g) - 1) // d))
    return sorted(out)


# ---------------------------------------------------------------------------
# public operations


def factor_mod_p(f: PolyModP, seed: int = 0) -> list[tuple[PolyModP, int]]:
    """Complete factorization of f into monic irreducibles with multiplicities.

    The leading coefficient (a unit) is dropped. Output is sorted by
    (degree, coefficients) and does not depend on ``seed``; the seed only
    salts the random stream used for equal-degree splitting.
    """
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    if f.degree < 1:
        raise DomainError("cannot factor a constant polynomial")
    p = f.p
    g = monic(list(f.coeffs), p)
    rng = random.Random(f"{p}:{f.coeffs}:{seed}")
    found: list[tuple[tuple[int, ...], int]] = []
    for part, mult in squarefree_decomposition(g, p):
        for block, d in distinct_degree_factorization(part, p):
            for factor in equal_degree_factorization(block, d, p, rng):
                found.append((tuple(factor), mult))
    found.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return [(PolyModP(p, c), m) for c, m in found]


def is_irreducible(f: PolyModP) -> bool:
    """Rabin-style test via the distinct-degree factorization."""
    if f.is_zero() or f.degree < 1:
        raise DomainError("irreducibility needs a polynomial of degree >= 1")
    if f.degree == 1:
        return True
    p = f.p
    g = monic(list(f.coeffs), p)
    if len(gcd(g, derivative(g, p), p)) > 1:
        return False
    ddf = distinct_degree_factorization(g, p)
    return len(ddf) == 1 and ddf[0][1] == f.degree
