"""Split octonions in Zorn vector-matrix form.

A Zorn element is ``(a u; v b)`` with scalars a, b and 3-vectors u, v.
The imaginary units e1..e7 are fixed as

    e1 = p1,  e2 = p2,  e3 = e1 e2,  e4 = h,  e5 = e1 e4,  e6 = e2 e4,  e7 = e3 e4

where h = (1 0; 0 -1), p_i = (0 E_i; E_i 0) and q_i = (0 E_i; -E_i 0).
Each e_k is plus or minus one of h, p_i, q_i, so every product of two units
is plus or minus a unit (or the scalar 1), and distinct units anticommute.
All signs below are induced by ``zorn_multiply``; nothing is hand-entered.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _vadd(*vs):
    return tuple(sum(c) for c in zip(*vs))


def _vscale(s, v):
    return tuple(s * c for c in v)


@dataclass(frozen=True)
class ZornElement:
    a: object
    b: object
    u: tuple
    v: tuple

    @classmethod
    def identity(cls, one=Fraction(1)):
        z = one - one
        return cls(one, one, (z, z, z), (z, z, z))

    def __add__(self, other):
        return ZornElement(self.a + other.a, self.b + other.b, _vadd(self.u, other.u), _vadd(self.v, other.v))

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, s):
        return ZornElement(s * self.a, s * self.b, _vscale(s, self.u), _vscale(s, self.v))

    def __mul__(self, other):
        return zorn_multiply(self, other)

    def as_vector(self):
        return (self.a, self.b) + tuple(self.u) + tuple(self.v)

    def is_zero(self):
        return all(c == 0 for c in self.as_vector())


def zorn_multiply(p: ZornElement, q: ZornElement) -> ZornElement:
    """(a u; v b)(a' u'; v' b') = (aa' + u.v',  a u' + b' u - v x v';  a' v + b v' + u x u',  b b' + v.u')."""
    a = p.a * q.a + _dot(p.u, q.v)
    u = _vadd(_vscale(p.a, q.u), _vscale(q.b, p.u), _vscale(-1, _cross(p.v, q.v)))
    v = _vadd(_vscale(q.a, p.v), _vscale(p.b, q.v), _cross(p.u, q.u))
    b = p.b * q.b + _dot(p.v, q.u)
    return ZornElement(a, b, u, v)


def associator(x: ZornElement, y: ZornElement, z: ZornElement) -> ZornElement:
    return zorn_multiply(zorn_multiply(x, y), z) - zorn_multiply(x, zorn_multiply(y, z))


_ONE = Fraction(1)
_ZERO = Fraction(0)


def _vec(i, s=_ONE):
    out = [_ZERO, _ZERO, _ZERO]
    out[i] = s
    return tuple(out)


_Z3 = (_ZERO, _ZERO, _ZERO)
H = ZornElement(_ONE, -_ONE, _Z3, _Z3)
P = [ZornElement(_ZERO, _ZERO, _vec(i), _vec(i)) for i in range(3)]
Q = [ZornElement(_ZERO, _ZERO, _vec(i), _vec(i, -_ONE)) for i in range(3)]


def _hpq_coords(z: ZornElement) -> dict:
    """Coordinates on the reference basis {1, h, p_i, q_i}."""
    half = Fraction(1, 2)
    out = {"1": (z.a + z.b) * half, "h": (z.a - z.b) * half}
    for i in range(3):
        out[f"p{i + 1}"] = (z.u[i] + z.v[i]) * half
        out[f"q{i + 1}"] = (z.u[i] - z.v[i]) * half
    return out


def _build_units():
    e = [ZornElement.identity()]
    e1, e2 = P[0], P[1]
    e3 = zorn_multiply(e1, e2)
    e4 = H
    e.extend([e1, e2, e3, e4, zorn_multiply(e1, e4), zorn_multiply(e2, e4), zorn_multiply(e3, e4)])
    # each unit must be +-1 times a single reference vector
    signed = []
    for k, z in enumerate(e):
        nz = {name: c for name, c in _hpq_coords(z).items() if c != 0}
        if len(nz) != 1 or abs(next(iter(nz.values()))) != 1:
            raise AssertionError(f"unit e{k} is not a signed reference vector: {nz}")
        (name, sign), = nz.items()
        signed.append((name, sign))
    return tuple(e), tuple(signed)


UNITS, _UNIT_SIGNS = _build_units()
_NAME_TO_UNIT = {name: (k, sign) for k, (name, sign) in enumerate(_UNIT_SIGNS)}


def unit(k: int) -> ZornElement:
    """e_k for k in 0..7 (e_0 is the identity)."""
    return UNITS[k]


def decompose(z: ZornElement) -> dict:
    """Coefficients of z on e_0..e_7 (keys with zero coefficient omitted)."""
    out = {}
    for name, c in _hpq_coords(z).items():
        if c != 0:
            k, sign = _NAME_TO_UNIT[name]
            out[k] = c * sign
    return out


def from_coefficients(coeffs) -> ZornElement:
    """Inverse of ``decompose``: sum_k c_k e_k with coefficients indexed 0..7."""
    acc = ZornElement(_ZERO, _ZERO, _Z3, _Z3)
    for k, c in (coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)):
        if c != 0:
            acc = acc + UNITS[k].scaled(c)
    return acc


@lru_cache(maxsize=None)
def unit_product(i: int, j: int) -> tuple:
    """e_i e_j as ((k, c), ...) over e_0..e_7."""
    return tuple(sorted(decompose(zorn_multiply(UNITS[i], UNITS[j])).items()))


@lru_cache(maxsize=None)
def unit_commutator(i: int, j: int) -> tuple:
    """e_i e_j - e_j e_i as ((k, c), ...); for imaginary units c is in {0, +-2}."""
    z = zorn_multiply(UNITS[i], UNITS[j]) - zorn_multiply(UNITS[j], UNITS[i])
    return tuple(sorted(decompose(z).items()))


def commutator_table() -> dict:
    """{(i, j): (k, c)} for 1 <= i < j <= 7 (each commutator hits exactly one unit)."""
    table = {}
    for i in range(1, 8):
        for j in range(i + 1, 8):
            (k, c), = unit_commutator(i, j)
            table[(i, j)] = (k, int(c))
    return table


def structure_tensor() -> np.ndarray:
    """Multiplication tensor M[i, j, k] = coefficient of e_k in e_i e_j (8x8x8 floats)."""
    m = np.zeros((8, 8, 8))
    for i in range(8):
        for j in range(8):
            for k, c in unit_product(i, j):
                m[i, j, k] = float(c)
    return m
