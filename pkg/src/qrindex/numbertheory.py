"""Modular arithmetic primitives on Python's unbounded integers.

Everything here operates on plain ``int`` values with no fixed word size,
so moduli of thousands of bits behave exactly like small ones.  All public
results are reduced, non-negative representatives; signed intermediates
stay internal to the Bezout computation.

Every function is pure and safe to call from any number of threads.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

from .errors import NotAResidueError, NotCoprimeError

# Miller-Rabin with the first 13 primes as bases is a proven deterministic
# primality test below this bound (Sorenson and Webster, 2015).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclidean algorithm on naturals.

    Returns ``(g, s, t)`` with ``g == gcd(a, b)`` and ``s*a + t*b == g``.
    The Bezout pair is the usual textbook one, e.g. ``ext_gcd(240, 46)``
    is ``(2, -9, 47)``.  Raises ValueError when both arguments are zero
    (the gcd is undefined) or when either is negative.
    """
    if a < 0 or b < 0:
        raise ValueError("ext_gcd is defined on naturals, got a negative argument")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def mod_pow(base: int, exp: int, m: int) -> int:
    """``base**exp mod m`` by square-and-multiply.

    Thin validated wrapper over the builtin three-argument ``pow``, which
    implements exactly that in O(log exp) multiplications.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if base < 0 or exp < 0:
        raise ValueError("base and exponent must be naturals")
    return pow(base, exp, m)


def mod_inverse(a: int, m: int) -> int:
    """Multiplicative inverse of ``a`` modulo ``m``, in (0, m).

    Raises NotCoprimeError (carrying the offending gcd) when no inverse
    exists.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    a %= m
    try:
        return pow(a, -1, m)
    except ValueError:
        g = math.gcd(a, m)
        raise NotCoprimeError(f"{a} has no inverse modulo {m} (gcd {g})", gcd=g) from None


def crt_combine(parts) -> int:
    """Solve a system of congruences over pairwise coprime moduli.

    ``parts`` is a non-empty sequence of ``(residue, modulus)`` pairs with
    ``0 <= residue < modulus``.  Returns the unique x in [0, prod moduli)
    congruent to every residue.  A non-coprime pair raises NotCoprimeError
    naming the offenders.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("crt_combine needs at least one congruence")
    for residue, modulus in parts:
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        if not 0 <= residue < modulus:
            raise ValueError(f"residue {residue} not reduced modulo {modulus}")
    x = 0
    combined = 1
    for residue, modulus in parts:
        if math.gcd(combined, modulus) != 1:
            pair, g = _noncoprime_pair(parts)
            raise NotCoprimeError(
                f"moduli {pair[0]} and {pair[1]} are not coprime (gcd {g})", gcd=g
            )
        x += combined * ((residue - x) * pow(combined, -1, modulus) % modulus)
        combined *= modulus
    return x


def _noncoprime_pair(parts):
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            g = math.gcd(parts[i][1], parts[j][1])
            if g != 1:
                return (parts[i][1], parts[j][1]), g
    raise AssertionError("no offending pair found")


def is_prime(n: int) -> bool:
    """Primality by Miller-Rabin.

    Deterministic (proven base set) below ~3.3e24; above that, 64 rounds
    with bases drawn from an RNG seeded by n itself, so verdicts are
    reproducible run to run.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BOUND:
        bases = _MR_DETERMINISTIC_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_MR_RANDOM_ROUNDS)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _smallest_nonresidue(p: int) -> int:
    # Quadratic residues are closed under multiplication, so the smallest
    # non-residue is prime; even candidates above 2 can never win.
    if pow(2, (p - 1) // 2, p) == p - 1:
        return 2
    b = 3
    while pow(b, (p - 1) // 2, p) != p - 1:
        b += 2
    return b


def _tonelli_shanks(a: int, p: int) -> int:
    if pow(a, (p - 1) // 2, p) != 1:
        raise NotAResidueError(f"{a} is not a quadratic residue modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    c = pow(_smallest_nonresidue(p), q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def sqrt_mod_prime(a: int, p: int) -> int:
    """Canonical square root of a unit modulo an odd prime.

    Returns the root x with ``x*x % p == a`` and ``1 <= x <= (p-1)//2``.
    Uses the ``a**((p+1)//4)`` shortcut for p = 3 mod 4 and Tonelli-Shanks
    (deterministic non-residue scan 2, 3, 5, ...) for p = 1 mod 4.

    Raises NotAResidueError for non-residues; the caller is responsible
    for p actually being an odd prime, though a composite p is caught
    whenever the final squaring check fails.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    a %= p
    if a == 0:
        raise NotAResidueError(f"0 is not a unit modulo {p}")
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        x = _tonelli_shanks(a, p)
    if x * x % p != a:
        raise NotAResidueError(f"{a} is not a quadratic residue modulo {p}")
    return min(x, p - x)


def hensel_lift_sqrt(x: int, z: int, p: int, k: int) -> int:
    """Lift a square root modulo an odd prime p to one modulo p**k.

    Given ``x*x = z (mod p)`` with z a unit, returns the unique y with
    ``y*y = z (mod p**k)`` and ``y = x (mod p)``, ``0 < y < p**k``.  One
    Newton-style correction per power step; k = 1 returns x unchanged.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    pk = p ** k
    z %= pk
    if z % p == 0:
        raise ValueError(f"z must be a unit modulo {p}")
    x %= p
    if (x * x - z) % p:
        raise ValueError(f"{x} is not a square root of {z} modulo {p}")
    y = x
    inv2x = pow(2 * x % p, -1, p)
    pj = p
    while pj < pk:
        pj_next = pj * p
        d = (z - y * y) % pj_next
        # d is divisible by pj because y*y = z (mod pj) held at the
        # previous step; the correction is unique modulo p.
        y += (d // pj) * inv2x % p * pj
        pj = pj_next
    return y


def sqrt_mod_2k(z: int, k: int) -> int:
    """Canonical square root modulo 2**k for k >= 4.

    Residues modulo 2**k (k >= 3) are exactly the classes 1 mod 8, and
    each has exactly one odd root below 2**(k-2); that root is returned.
    Starts from the root 1 modulo 8 and fixes one bit per power of two,
    then folds the four-root orbit {y, -y, y + 2**(k-1), -y + 2**(k-1)}
    into the canonical window.
    """
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    z %= 1 << k
    if z % 8 != 1:
        raise NotAResidueError(f"{z} is not a quadratic residue modulo 2**{k}")
    y = 1
    for j in range(3, k):
        if (y * y - z) % (1 << (j + 1)):
            y += 1 << (j - 1)
    n = 1 << k
    half = 1 << (k - 1)
    window = 1 << (k - 2)
    for candidate in (y, n - y, (y + half) % n, (n - y + half) % n):
        if candidate < window:
            return candidate
    raise AssertionError(f"no canonical root for {z} mod 2**{k}")
