"""Exact integer-coefficient Laurent polynomials in one variable A."""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "A", "ONE", "ZERO", "LOOP"]


class LaurentPoly:
    """Immutable Laurent polynomial with int coefficients.

    Zero coefficients are never stored; all arithmetic is exact.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = {}
        for e, v in dict(coeffs).items():
            if not isinstance(v, int):
                raise TypeError("coefficients must be ints")
            if v:
                c[int(e)] = v
        self._c = c

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            else:
                c.pop(e, None)
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                nv = c.get(e, 0) + v1 * v2
                if nv:
                    c[e] = nv
                else:
                    c.pop(e, None)
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                ((e, v),) = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({k * e: v if k % 2 else 1})
            raise ValueError("negative powers only for unit monomials")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shifted(self, exp: int) -> "LaurentPoly":
        """Multiply by A**exp."""
        return LaurentPoly({e + exp: v for e, v in self._c.items()})

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Reindex exponents by e -> e*k (i.e. evaluate at A -> A**k)."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def as_t_string(self) -> str:
        """Render with t = A**-4; quarter exponents appear as fractions."""
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, key=lambda x: -x):
            v = self._c[e]
            te_num = -e
            if te_num % 4 == 0:
                texp = str(te_num // 4)
            else:
                texp = f"{te_num}/4"
            if texp == "0":
                term = str(v)
            else:
                coeff = "" if v == 1 else ("-" if v == -1 else str(v))
                term = f"{coeff}t^{texp}" if texp != "1" else f"{coeff}t"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                parts.append(str(v))
            else:
                coeff = "" if v == 1 else ("-" if v == -1 else str(v))
                parts.append(f"{coeff}A^{e}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


A = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly({})
LOOP = LaurentPoly({2: -1, -2: -1})  # value of a closed loop, -A^2 - A^-2
