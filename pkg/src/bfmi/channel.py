"""Exact-rational model of the memoryless binary symmetric channel.

Inputs are i.i.d. Bernoulli(1/2) vectors X of length n; the channel
flips each coordinate independently with error probability p <= 1/2,
producing Y.  For a Boolean function f, Z = f(X).  Everything here is
computed in exact rational arithmetic (:class:`fractions.Fraction`);
no floating point enters before the logarithm stage in :mod:`bfmi.mi`.

The joint probability p(x, y) depends on (x, y) only through their
Hamming distance d:  p(x, y) = (1-p)^(n-d) * p^d / 2^n.  Summing over
x at fixed y therefore telescopes through the binomial theorem, which
is the marginal identity checked by :func:`marginal_sum`.

``joint_yz`` assembles the full table p_YZ(y, z) for z in {0, 1}.  It
uses the xor-convolution structure of the channel: with
h(v) = (1-p)^(n-|v|) * p^|v| / 2^n one has p_YZ(., 1) = f * h (xor
convolution), which a Walsh-Hadamard transform evaluates with integer
arithmetic only.  The result is exact; the naive preimage sum is kept
as an independent oracle in the test suite.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .boolfn import TruthTable

Rational = Fraction | int


def as_probability(p, upper: Fraction = Fraction(1)) -> Fraction:
    """Coerce to an exact Fraction in [0, upper]."""
    q = Fraction(p)
    if not 0 <= q <= upper:
        raise ValueError(f"probability {q} outside [0, {upper}]")
    return q


def transition(x_bit: int, y_bit: int, p: Rational) -> Fraction:
    """Single-use channel factor: 1-p if the bits agree, p otherwise."""
    if x_bit not in (0, 1) or y_bit not in (0, 1):
        raise ValueError("bits must be 0 or 1")
    q = as_probability(p, Fraction(1, 2))
    return 1 - q if x_bit == y_bit else q


def joint_xy(x_index: int, y_index: int, n: int, p: Rational) -> Fraction:
    """Exact joint probability p(X = x, Y = y) for n-bit indices.

    Equals (1-p)^(n-d) * p^d / 2^n with d the Hamming distance between
    the index bit patterns.
    """
    if not (0 <= x_index < 1 << n and 0 <= y_index < 1 << n):
        raise ValueError(f"indices out of range for n={n}")
    q = Fraction(p)
    d = (x_index ^ y_index).bit_count()
    return (1 - q) ** (n - d) * q**d / Fraction(1 << n)


def marginal_sum(y_index: int, k: int, p: Rational) -> Fraction:
    """Sum of joint_xy(x, y, k, p) over all 2^k values of x, exactly.

    The contract (and the identity this library repeatedly leans on) is
    that the result equals 1/2^k for every y and p.  The sum is
    evaluated by literal enumeration: Hamming distances of all 2^k
    x-patterns from y are counted and each exact term is added with its
    observed count.  Nothing here assumes the binomial identity.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= y_index < 1 << k:
        raise ValueError(f"y_index out of range for k={k}")
    q = Fraction(p)
    xs = np.arange(1 << k, dtype=np.uint64)
    dist = np.bitwise_count(xs ^ np.uint64(y_index))
    counts = np.bincount(dist, minlength=k + 1)
    total = Fraction(0)
    for d in range(k + 1):
        if counts[d]:
            total += int(counts[d]) * ((1 - q) ** (k - d) * q**d)
    return total / Fraction(1 << k)


# ---------------------------------------------------------------------------
# Joint distribution of (Y, Z = f(X))
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JointYZ:
    """Exact table of p_YZ(y, z) for all y in {0,1}^n and z in {0,1}.

    ``rows[y] = (p0, p1)`` with p1 = p_YZ(y, 1) and p0 = p_YZ(y, 0).
    Invariants (validated on construction): every row sums to exactly
    1/2^n (the uniform Y marginal), all entries are nonnegative, and
    ``pz1`` is the exact sum of the p1 column.
    """

    n: int
    p: Fraction
    rows: tuple[tuple[Fraction, Fraction], ...]
    pz1: Fraction

    def __post_init__(self):
        size = 1 << self.n
        if len(self.rows) != size:
            raise ValueError(f"expected {size} rows, got {len(self.rows)}")
        py = Fraction(1, size)
        total1 = Fraction(0)
        for y, (p0, p1) in enumerate(self.rows):
            if p0 < 0 or p1 < 0:
                raise ValueError(f"negative probability in row {y}")
            if p0 + p1 != py:
                raise ValueError(f"row {y} does not sum to 1/2^n")
            total1 += p1
        if total1 != self.pz1:
            raise ValueError("pz1 does not match the p1 column sum")

    @classmethod
    def from_rows(cls, n: int, p: Rational, rows: Iterable[tuple[Fraction, Fraction]]) -> "JointYZ":
        rows = tuple((Fraction(a), Fraction(b)) for a, b in rows)
        pz1 = sum((r[1] for r in rows), Fraction(0))
        return cls(n, Fraction(p), rows, pz1)

    @property
    def pz0(self) -> Fraction:
        return 1 - self.pz1

    def distinct_rows(self) -> list[tuple[tuple[Fraction, Fraction], int]]:
        """Distinct (p0, p1) rows with multiplicities, descending by p1.

        For the structured subcube classes this is the compressed view
        (the distinct per-row values with their repeat counts).
        """
        counts: dict[tuple[Fraction, Fraction], int] = {}
        for row in self.rows:
            counts[row] = counts.get(row, 0) + 1
        return sorted(counts.items(), key=lambda kv: kv[0][1], reverse=True)

    def write_csv(self, path) -> None:
        """Dump as CSV rows: y_index, p0_num, p0_den, p1_num, p1_den."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["y_index", "p0_num", "p0_den", "p1_num", "p1_den"])
            for y, (p0, p1) in enumerate(self.rows):
                writer.writerow([y, p0.numerator, p0.denominator, p1.numerator, p1.denominator])


def _wht_inplace(v: list[int]) -> None:
    # unnormalized Walsh-Hadamard butterfly; applying it twice gives len(v) * identity
    length = len(v)
    h = 1
    while h < length:
        for base in range(0, length, 2 * h):
            for j in range(base, base + h):
                a = v[j]
                b = v[j + h]
                v[j] = a + b
                v[j + h] = a - b
        h *= 2


@lru_cache(maxsize=256)
def _ones_spectrum(n: int, mask: int) -> tuple[int, ...]:
    # forward transform of the indicator; reused across the whole p grid
    v = [(mask >> i) & 1 for i in range(1 << n)]
    _wht_inplace(v)
    return tuple(v)


def joint_yz(f: TruthTable, p: Rational) -> JointYZ:
    """Exact joint distribution of (Y, Z = f(X)) under error probability p.

    p_YZ(y, 1) is the sum of joint_xy(x, y) over the preimage f^{-1}(1);
    p_YZ(y, 0) = 1/2^n - p_YZ(y, 1).

    Raises
    ------
    ValueError
        If p is outside [0, 1/2].
    """
    q = as_probability(p, Fraction(1, 2))
    n = f.n
    size = f.size
    s, den = q.numerator, q.denominator
    t = den - 2 * s  # numerator of 1 - 2p over den

    # scale the transform by (1-2p)^|w|, common denominator den^n pulled out
    scale = [t**k * den ** (n - k) for k in range(n + 1)]
    spectrum = [coef * scale[w.bit_count()] for w, coef in enumerate(_ones_spectrum(n, f.mask))]
    _wht_inplace(spectrum)

    big_den = 4**n * den**n
    py_num = big_den >> n  # 1/2^n over big_den
    rows = []
    total1 = Fraction(0)
    for y in range(size):
        num = spectrum[y]
        if num < 0 or num > py_num:
            raise AssertionError("joint mass outside [0, 1/2^n]; transform bug")
        p1 = Fraction(num, big_den)
        rows.append((Fraction(py_num - num, big_den), p1))
        total1 += p1
    return JointYZ(n, q, tuple(rows), total1)


def pz1(j: JointYZ) -> Fraction:
    """Exact marginal p_Z(1); equals ones_count(f) / 2^n independent of p."""
    return j.pz1
