"""Exact character sums for large cone groups by multi-modular evaluation.

A character sum over a cone group is an element of Q(zeta_L) that is fixed by
the Galois group, hence rational. For primes p = 1 (mod L) the field embeds
into F_p, so the sum can be evaluated there with vectorised int64 arithmetic
over all group elements at once. Residues from several primes are combined
by CRT and turned back into fractions by rational reconstruction; a result is
accepted only after an additional prime confirms it. Galois invariance is
checked directly by re-evaluating with conjugate roots of unity.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .cycser import TruncSeries
from .errors import NotRational, ReconstructionFailed

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_PRIME_CEILING = 2**31
MAX_PRIMES = 80


def is_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_one_mod(L, ceiling=_PRIME_CEILING):
    """Primes p = 1 (mod L) below ``ceiling``, largest first."""
    p = (ceiling - 1) // L * L + 1
    while p > 2 * L:
        if is_prime(p):
            yield p
        p -= L


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def root_of_unity(L, p):
    """A primitive L-th root of unity in F_p (requires L | p - 1)."""
    factors = _prime_factors(p - 1)
    for h in range(2, p):
        if all(pow(h, (p - 1) // f, p) != 1 for f in factors):
            return pow(h, (p - 1) // L, p)
    raise ValueError("no generator found")


def _powmod(base, exp, p):
    """Elementwise base**exp mod p for int64 arrays with p < 2^31."""
    base = np.asarray(base, dtype=np.int64) % p
    exp = np.asarray(exp, dtype=np.int64)
    result = np.ones(np.broadcast(base, exp).shape, dtype=np.int64)
    base = np.broadcast_to(base, result.shape).copy()
    exp = np.broadcast_to(exp, result.shape).copy()
    while np.any(exp):
        odd = (exp & 1).astype(bool)
        result[odd] = result[odd] * base[odd] % p
        base = base * base % p
        exp >>= 1
    return result


def _series_mul(A, B, p):
    D = A.shape[-1] - 1
    out = np.zeros_like(A)
    for r in range(D + 1):
        acc = np.zeros(A.shape[:-1], dtype=np.int64)
        for i in range(r + 1):
            acc = (acc + A[..., i] * B[..., r - i] % p) % p
        out[..., r] = acc
    return out


def coth_table(L, zeta, weight, D, p):
    """Rows a = 0..L-1: coefficients of coth(pi i a/L + weight U) mod p.

    Uses the Taylor recurrence of y' = 1 - y^2 around y_0 = coth(pi i a/L);
    row 0 (the pole) is left as zeros.
    """
    a = np.arange(L, dtype=np.int64)
    lam = _powmod(zeta, a, p)
    den = (lam - 1) % p
    safe = np.where(den == 0, 1, den)
    c = (lam + 1) % p * _powmod(safe, p - 2, p) % p
    c[0] = 0
    y = np.zeros((L, D + 1), dtype=np.int64)
    y[:, 0] = c
    for r in range(D):
        conv = np.zeros(L, dtype=np.int64)
        for i in range(r + 1):
            conv = (conv + y[:, i] * y[:, r - i] % p) % p
        rhs = (int(r == 0) - conv) % p
        y[:, r + 1] = rhs * pow(r + 1, p - 2, p) % p
    w = weight.numerator % p * pow(weight.denominator, p - 2, p) % p
    wp = np.array([pow(w, r, p) for r in range(D + 1)], dtype=np.int64)
    y = y * wp % p
    y[0, :] = 0
    return y


def element_exponents(G):
    """(order, k) array: row i holds level * gamma_j of the i-th element."""
    k = G.k
    if not G.invariants:
        return np.zeros((1, k), dtype=np.int64)
    Y = np.indices(G.invariants, dtype=np.int64).reshape(len(G.invariants), -1).T
    X = np.array(G.exponents, dtype=np.int64).reshape(len(G.invariants), k)
    return (Y @ X) % G.level


def character_sum_mod(G, weights, D, p, zeta, support="interior", exps=None):
    """Residues mod p of the character sum of G (see ``ehrhart.character_sum``)."""
    L = G.level
    if exps is None:
        exps = element_exponents(G)
    m = exps.shape[0]
    acc = np.zeros((m, D + 1), dtype=np.int64)
    acc[:, 0] = 1
    mask = np.ones(m, dtype=bool)
    for j, w in enumerate(weights):
        table = coth_table(L, zeta, Fraction(w), D, p)
        if support == "full":
            table[1:, 0] = (table[1:, 0] + 1) % p
            table[0, 0] = 1
        else:
            mask &= exps[:, j] != 0
        acc = _series_mul(acc, table[exps[:, j]], p)
    total = acc[mask].sum(axis=0) % p if mask.any() else np.zeros(D + 1, dtype=np.int64)
    return [int(x) for x in total]


def rational_reconstruct(a, M):
    """Fraction r/s with r = a s (mod M), |r|, s <= sqrt(M/2); None if none exists."""
    a %= M
    bound = math.isqrt(M // 2)
    r0, r1 = M, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(abs(s1), M) != 1:
        return None
    return Fraction(r1, s1)


def _units(L, count, rng):
    units = [a for a in range(2, L) if math.gcd(a, L) == 1]
    if len(units) <= count:
        return units
    return rng.sample(units, count)


def character_sum_modular(G, weights, D, support="interior", galois_checks=3):
    """Exact rational character sum of G as a TruncSeries of Fractions."""
    weights = [Fraction(w) for w in weights]
    if G.k == 0:
        return TruncSeries.one(D)
    if G.order == 1:
        return TruncSeries.one(D) if support == "full" else TruncSeries.zero(D)
    L = G.level
    exps = element_exponents(G)
    dens = math.prod(w.denominator for w in weights)
    rng = random.Random(L * 1000003 + G.order)
    residues, modulus, previous, confirmations = None, 1, None, 0
    used = 0
    for p in primes_one_mod(L):
        if dens % p == 0 or p <= D + 1:
            continue
        zeta = root_of_unity(L, p)
        vals = character_sum_mod(G, weights, D, p, zeta, support, exps)
        if used == 0:
            for a in _units(L, galois_checks, rng):
                conj = character_sum_mod(G, weights, D, p, pow(zeta, a, p), support, exps)
                if conj != vals:
                    raise NotRational(
                        f"NotRational: character sum changes under zeta -> zeta^{a} (level {L})"
                    )
        if residues is None:
            residues = vals
        else:
            inv = pow(modulus, -1, p)
            residues = [r + modulus * ((v - r) * inv % p) for r, v in zip(residues, vals)]
        modulus *= p
        used += 1
        current = [rational_reconstruct(r, modulus) for r in residues]
        if None not in current and current == previous:
            confirmations += 1
            if confirmations >= 2:
                return TruncSeries(current)
        else:
            confirmations = 0
        previous = current
        if used >= MAX_PRIMES:
            break
    raise ReconstructionFailed(f"rational reconstruction did not stabilise after {used} primes")
