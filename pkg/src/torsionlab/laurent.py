"""Exact arithmetic for integer Laurent polynomials in several variables.

Elements of the group ring of a free abelian group of rank m are stored as
maps from exponent vectors in Z^m to nonzero integer coefficients.  All
operations are exact; floating point enters only through evaluation at
points of the unit torus.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

import sympy

__all__ = [
    "LaurentPoly",
    "LaurentMat",
    "CharacterPoint",
    "DimensionMismatchError",
    "multiply",
    "gcd",
    "divides",
    "div_exact",
    "canonical_unit_normal_form",
    "evaluate_at_character",
    "is_zero_at_character",
    "specialize_along_vector",
    "cyclic_resultant",
    "adjoint_matrix",
    "parse_poly",
    "poly_to_string",
    "cyclotomic_coeffs",
    "totient",
    "one_var_dense",
    "cyclotomic_divides_dense",
    "vanishing_orders",
    "count_torsion_zeros",
]


class DimensionMismatchError(ValueError):
    """Operands do not live over the same number of variables."""


class LaurentPoly:
    """Integer Laurent polynomial in ``num_vars`` variables.

    The zero polynomial has an empty term map; no stored coefficient is
    zero, so equality of term maps is equality of polynomials.  Instances
    are immutable by convention: no method mutates ``self``.
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars, terms=None):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise DimensionMismatchError(
                    f"exponent {exp} has length {len(exp)}, expected {num_vars}"
                )
            coeff = int(coeff)
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
                if not clean[exp]:
                    del clean[exp]
        self.num_vars = num_vars
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars):
        return cls(num_vars, {})

    @classmethod
    def constant(cls, c, num_vars):
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def one(cls, num_vars):
        return cls.constant(1, num_vars)

    @classmethod
    def var(cls, index, num_vars):
        """The generator t_{index+1} as a polynomial."""
        e = [0] * num_vars
        e[index] = 1
        return cls(num_vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponent, coeff=1, num_vars=None):
        exponent = tuple(int(e) for e in exponent)
        return cls(num_vars or len(exponent), {exponent: coeff})

    # -- basic queries ------------------------------------------------

    def items(self):
        return self._terms.items()

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == {(0,) * self.num_vars: 1}

    def is_unit(self):
        """True iff the polynomial is +-t^v."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_monomial(self):
        return len(self._terms) == 1

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), 0)

    def exponent_range(self):
        """Per-variable (min, max) exponents; None for the zero polynomial."""
        if not self._terms:
            return None
        lo = [min(e[j] for e in self._terms) for j in range(self.num_vars)]
        hi = [max(e[j] for e in self._terms) for j in range(self.num_vars)]
        return list(zip(lo, hi))

    def effective_vars(self):
        """Indices of variables that actually occur with a nonzero exponent."""
        used = set()
        for e in self._terms:
            for j, k in enumerate(e):
                if k:
                    used.add(j)
        return sorted(used)

    def coeff_one_norm(self):
        return sum(abs(c) for c in self._terms.values())

    # -- ring operations ----------------------------------------------

    def _check(self, other):
        if self.num_vars != other.num_vars:
            raise DimensionMismatchError(
                f"num_vars mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.num_vars)
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.num_vars = self.num_vars
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.num_vars = self.num_vars
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.num_vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.num_vars)
            out = LaurentPoly.__new__(LaurentPoly)
            out.num_vars = self.num_vars
            out._terms = {e: c * other for e, c in self._terms.items()}
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.num_vars = self.num_vars
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers only for unit monomials")
            e, c = next(iter(self._terms.items()))
            return LaurentPoly(self.num_vars, {tuple(n * k for k in e): c if n % 2 else 1})
        result = LaurentPoly.one(self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, exponent):
        """Multiply by the monomial t^exponent."""
        exponent = tuple(exponent)
        out = LaurentPoly.__new__(LaurentPoly)
        out.num_vars = self.num_vars
        out._terms = {
            tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms.items()
        }
        return out

    def bar(self):
        """The involution t_j -> t_j^-1 applied to every variable."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.num_vars = self.num_vars
        out._terms = {tuple(-k for k in e): c for e, c in self._terms.items()}
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.num_vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self.num_vars}, {poly_to_string(self)!r})"

    def __str__(self):
        return poly_to_string(self)


# -- text serialization ----------------------------------------------


def poly_to_string(p):
    """Render as a sum of ``c*t1^e1*...`` terms, exponents ascending."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p._terms.items()):
        factors = []
        for j, k in enumerate(e):
            if k == 0:
                continue
            name = f"t{j + 1}"
            factors.append(name if k == 1 else f"{name}^{k}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def parse_poly(text, num_vars=None):
    """Parse the ``1 - 3*t1 + t1^2`` text form.

    Variables are t1..t9; exponents may be negative (``t1^-2``).  When
    ``num_vars`` is omitted it is inferred as the largest variable index
    present (at least 1).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    terms = []  # (coeff, {var_index: exp})
    i, n = 0, len(s)
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = None
        exps = {}
        expect_factor = True
        while i < n and s[i] not in "+-":
            if s[i] == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError(f"missing '*' or sign near index {i} in {text!r}")
            if s[i].isdigit():
                j = i
                while j < n and s[j].isdigit():
                    j += 1
                if coeff is not None:
                    raise ValueError(f"two coefficients in one term in {text!r}")
                coeff = int(s[i:j])
                i = j
            elif s[i] == "t":
                if i + 1 >= n or not s[i + 1].isdigit():
                    raise ValueError(f"bad variable near index {i} in {text!r}")
                var = int(s[i + 1]) - 1
                i += 2
                exp = 1
                if i < n and s[i] == "^":
                    i += 1
                    neg = False
                    if i < n and s[i] == "-":
                        neg = True
                        i += 1
                    j = i
                    while j < n and s[j].isdigit():
                        j += 1
                    if j == i:
                        raise ValueError(f"bad exponent near index {i} in {text!r}")
                    exp = int(s[i:j])
                    if neg:
                        exp = -exp
                    i = j
                exps[var] = exps.get(var, 0) + exp
            else:
                raise ValueError(f"unexpected character {s[i]!r} in {text!r}")
            expect_factor = False
        terms.append((sign * (1 if coeff is None else coeff), exps))
    width = max([num_vars or 1] + [v + 1 for _, ex in terms for v in ex])
    if num_vars is not None and width > num_vars:
        raise ValueError(f"variable index exceeds num_vars={num_vars} in {text!r}")
    acc = {}
    for c, ex in terms:
        e = [0] * width
        for v, k in ex.items():
            e[v] = k
        e = tuple(e)
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly(width, acc)


# -- operations required by the module contract ----------------------


def multiply(p, q):
    """Ring product of two polynomials over the same variables."""
    return p * q


def canonical_unit_normal_form(p):
    """Multiply by the unique unit +-t^v so that all exponents are >= 0,
    every variable attains exponent zero, and the coefficient of the
    lexicographically least exponent is positive.  Idempotent; fixes zero.
    """
    if p.is_zero():
        return p
    mins = [min(e[j] for e in p._terms) for j in range(p.num_vars)]
    shifted = p.shift(tuple(-m for m in mins))
    least = min(shifted._terms)
    if shifted._terms[least] < 0:
        shifted = -shifted
    return shifted


def _poly_part(p):
    """Shift by a unit monomial so exponents are >= 0 in every variable."""
    mins = [min(e[j] for e in p._terms) for j in range(p.num_vars)]
    if any(mins):
        return p.shift(tuple(-m for m in mins))
    return p


_SYMPY_GENS = sympy.symbols("t1:10")


def to_sympy(p):
    """Polynomial part of ``p`` as a sympy Poly over ZZ."""
    gens = _SYMPY_GENS[: p.num_vars]
    q = _poly_part(p)
    expr = {e: c for e, c in q._terms.items()}
    return sympy.Poly.from_dict(expr or {(0,) * p.num_vars: 0}, *gens, domain=sympy.ZZ)


def from_sympy(poly, num_vars):
    terms = {tuple(int(k) for k in mono): int(c) for mono, c in poly.terms()}
    return LaurentPoly(num_vars, terms)


def gcd(p, q):
    """Greatest common divisor in the Laurent ring, in canonical unit form.

    gcd(0, q) is canonical(q); gcd(0, 0) = 0.  Integer content is part of
    the divisor: gcd(2p, 2q) = 2 gcd(p, q) up to the canonical unit.
    """
    if p.num_vars != q.num_vars:
        raise DimensionMismatchError("gcd operands must share num_vars")
    if p.is_zero():
        return canonical_unit_normal_form(q)
    if q.is_zero():
        return canonical_unit_normal_form(p)
    g = sympy.gcd(to_sympy(p), to_sympy(q))
    return canonical_unit_normal_form(from_sympy(g, p.num_vars))


def divides(d, p):
    """Exact divisibility test d | p in the Laurent ring."""
    if d.is_zero():
        return p.is_zero()
    if p.is_zero():
        return True
    q, r = sympy.div(to_sympy(p), to_sympy(d))
    del q
    return r.is_zero


def div_exact(p, d):
    """Exact quotient p / d; raises ValueError when d does not divide p.

    The quotient is normalized so that quotient * d == p exactly (the
    unit monomials stripped before division are restored).
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.num_vars)
    mins_p = [min(e[j] for e in p._terms) for j in range(p.num_vars)]
    mins_d = [min(e[j] for e in d._terms) for j in range(d.num_vars)]
    q, r = sympy.div(to_sympy(p), to_sympy(d))
    if not r.is_zero:
        raise ValueError("not an exact division")
    quot = from_sympy(sympy.Poly(q, *_SYMPY_GENS[: p.num_vars], domain=sympy.ZZ), p.num_vars)
    shift = tuple(mp - md for mp, md in zip(mins_p, mins_d))
    return quot.shift(shift)


class CharacterPoint:
    """A torsion point of the m-torus given by exact rational angles.

    The point is (exp(2 pi i a_1), ..., exp(2 pi i a_m)) with each a_j a
    rational in [0, 1) whose denominator divides ``order``, the least
    common denominator.
    """

    __slots__ = ("angles", "order")

    def __init__(self, angles):
        normd = tuple(Fraction(a) % 1 for a in angles)
        order = 1
        for a in normd:
            order = order * a.denominator // math.gcd(order, a.denominator)
        self.angles = normd
        self.order = order

    @property
    def num_vars(self):
        return len(self.angles)

    def values(self):
        """The complex coordinates of the point."""
        return tuple(cmath.exp(2j * math.pi * float(a)) for a in self.angles)

    def __eq__(self, other):
        return isinstance(other, CharacterPoint) and self.angles == other.angles

    def __hash__(self):
        return hash(self.angles)

    def __repr__(self):
        return f"CharacterPoint(({', '.join(str(a) for a in self.angles)}))"


def evaluate_at_character(p, z):
    """Floating point value of ``p`` at the torus point ``z``.

    Exact rational angle arithmetic keeps each term on the unit circle;
    real and imaginary parts are accumulated with compensated summation.
    Relative accuracy is ~2^-40 for the degree and coefficient budgets
    exercised in the test suite.
    """
    if z.num_vars != p.num_vars:
        raise DimensionMismatchError("character point has wrong number of angles")
    re, im = [], []
    for e, c in p.items():
        ang = Fraction(0)
        for k, a in zip(e, z.angles):
            ang += k * a
        ang %= 1
        w = cmath.exp(2j * math.pi * float(ang))
        re.append(c * w.real)
        im.append(c * w.imag)
    return complex(math.fsum(re), math.fsum(im))


@lru_cache(maxsize=None)
def _mobius(n):
    if n == 1:
        return 1
    mu, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            mu = -mu
        f += 1
    if m > 1:
        mu = -mu
    return mu


def _dense_mul_sparse(f, d):
    """Multiply dense coefficient list f by (X^d - 1)."""
    out = [0] * (len(f) + d)
    for i, c in enumerate(f):
        if c:
            out[i + d] += c
            out[i] -= c
    return out


def _dense_divexact(f, g):
    """Exact division of dense integer coefficient lists; g monic-led."""
    f = list(f)
    dg = len(g) - 1
    while g[dg] == 0:
        dg -= 1
    lead = g[dg]
    df = len(f) - 1
    while df >= 0 and f[df] == 0:
        df -= 1
    out = [0] * (df - dg + 1 if df >= dg else 0)
    for i in range(df - dg, -1, -1):
        c = f[i + dg]
        if c % lead:
            raise ValueError("not an exact dense division")
        q = c // lead
        out[i] = q
        if q:
            for j in range(dg + 1):
                f[i + j] -= q * g[j]
    if any(f):
        raise ValueError("not an exact dense division")
    return out


@lru_cache(maxsize=4096)
def cyclotomic_coeffs(n):
    """Dense integer coefficients of the n-th cyclotomic polynomial.

    Computed from the Moebius product over divisors of n; exact and cached.
    """
    if n == 1:
        return (-1, 1)
    num = [1]
    den = [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        if mu == 1:
            num = _dense_mul_sparse(num, d)
        elif mu == -1:
            den = _dense_mul_sparse(den, d)
    return tuple(_dense_divexact(num, den))


def is_zero_at_character(p, z):
    """Exact vanishing test of ``p`` at the torus torsion point ``z``.

    Substitutes t_j -> X^(n a_j) with n the order of the point, reduces
    modulo X^n - 1 and tests divisibility by the n-th cyclotomic
    polynomial over the integers.  No floating point is involved.
    """
    if z.num_vars != p.num_vars:
        raise DimensionMismatchError("character point has wrong number of angles")
    if p.is_zero():
        return True
    n = z.order
    shifts = [int(a * n) for a in z.angles]
    dense = [0] * n
    for e, c in p.items():
        k = 0
        for kj, sj in zip(e, shifts):
            k += kj * sj
        dense[k % n] += c
    if not any(dense):
        return True
    if n == 1:
        return False
    phi = cyclotomic_coeffs(n)
    # Remainder of dense modulo the monic cyclotomic polynomial.
    deg_phi = len(phi) - 1
    rem = list(dense)
    for i in range(n - 1, deg_phi - 1, -1):
        c = rem[i]
        if c:
            for j in range(deg_phi + 1):
                rem[i - deg_phi + j] -= c * phi[j]
    return not any(rem[:deg_phi])


def totient(d):
    """Euler's totient by trial division; d stays desk-scale here."""
    out, m, f = 1, d, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            out *= f - 1
            while m % f == 0:
                m //= f
                out *= f
        f += 1
    if m > 1:
        out *= m - 1
    return out


def one_var_dense(p):
    """Ascending coefficients of the polynomial part of a 1-variable poly."""
    if p.num_vars != 1:
        raise DimensionMismatchError("dense form needs one variable")
    if p.is_zero():
        return [0]
    exps = [e[0] for e in p._terms]
    lo, hi = min(exps), max(exps)
    dense = [0] * (hi - lo + 1)
    for e, c in p._terms.items():
        dense[e[0] - lo] = c
    return dense


def cyclotomic_divides_dense(dense, d):
    """Does the d-th cyclotomic polynomial divide the dense polynomial?"""
    phi = cyclotomic_coeffs(d)
    deg_phi = len(phi) - 1
    rem = list(dense)
    if len(rem) - 1 < deg_phi:
        return not any(rem)
    for i in range(len(rem) - 1, deg_phi - 1, -1):
        c = rem[i]
        if c:
            for j in range(deg_phi + 1):
                rem[i - deg_phi + j] -= c * phi[j]
    return not any(rem[:deg_phi])


def vanishing_orders(p, N):
    """Divisors d of N at whose primitive roots the 1-variable p vanishes.

    Only divisors with totient at most deg p can carry zeros, so large
    cyclotomics are never built.
    """
    dense = one_var_dense(p)
    deg = len(dense) - 1
    out = set()
    for d in range(1, N + 1):
        if N % d or totient(d) > deg:
            continue
        if cyclotomic_divides_dense(dense, d):
            out.add(d)
    return out


def count_torsion_zeros(p, N):
    """Number of N-th roots of unity at which the 1-variable p vanishes."""
    if p.is_zero():
        return N
    return sum(totient(d) for d in vanishing_orders(p, N))


def specialize_along_vector(p, v):
    """One-variable image under t_j -> X^(v_j); a ring homomorphism."""
    if len(v) != p.num_vars:
        raise DimensionMismatchError("direction vector has wrong length")
    terms = {}
    for e, c in p.items():
        k = sum(a * b for a, b in zip(e, v))
        s = terms.get((k,), 0) + c
        if s:
            terms[(k,)] = s
        elif (k,) in terms:
            del terms[(k,)]
    return LaurentPoly(1, terms)


def cyclic_resultant(p, N):
    """Exact resultant of the polynomial part of ``p`` with X^N - 1.

    The absolute value equals the product of |p| over all N-th roots of
    unity; the result is 0 exactly when p vanishes at one of them.
    Computed by an exact subresultant remainder sequence over Z.
    """
    if p.num_vars != 1:
        raise DimensionMismatchError("cyclic_resultant needs a one-variable polynomial")
    if p.is_zero():
        raise ValueError("cyclic_resultant of the zero polynomial")
    if N < 1:
        raise ValueError("N must be positive")
    q = _poly_part(p)
    deg = max(e[0] for e in q._terms)
    if deg == 0:
        return q._terms[(0,)] ** N
    x = _SYMPY_GENS[0]
    qq = sympy.Poly.from_dict({e: c for e, c in q._terms.items()}, x, domain=sympy.ZZ)
    f = sympy.Poly.from_dict({(N,): 1, (0,): -1}, x, domain=sympy.ZZ)
    # The remainder sequence wants the higher degree first; restore the
    # classical swap sign (-1)^(deg f * deg q) when reordering.
    if deg >= N:
        return int(qq.resultant(f))
    r = int(f.resultant(qq))
    return -r if (N * deg) % 2 else r


class LaurentMat:
    """Rectangular matrix over the Laurent ring; entries share num_vars."""

    __slots__ = ("rows", "cols", "num_vars", "entries")

    def __init__(self, entries, num_vars=None, cols=None):
        entries = [list(row) for row in entries]
        if not entries:
            raise ValueError("matrix needs at least one row")
        widths = {len(r) for r in entries}
        if len(widths) != 1:
            raise ValueError("ragged rows")
        width = widths.pop()
        if width == 0 and cols not in (None, 0):
            raise ValueError("empty rows with nonzero cols")
        if num_vars is None:
            for row in entries:
                for x in row:
                    if isinstance(x, LaurentPoly):
                        num_vars = x.num_vars
                        break
                if num_vars is not None:
                    break
            if num_vars is None:
                raise ValueError("cannot infer num_vars from an all-integer matrix")
        norm = []
        for row in entries:
            out = []
            for x in row:
                if isinstance(x, int):
                    x = LaurentPoly.constant(x, num_vars)
                elif x.num_vars != num_vars:
                    raise DimensionMismatchError("entries disagree on num_vars")
                out.append(x)
            norm.append(tuple(out))
        self.rows = len(norm)
        self.cols = width
        self.num_vars = num_vars
        self.entries = tuple(norm)

    @classmethod
    def identity(cls, n, num_vars):
        one = LaurentPoly.one(num_vars)
        zero = LaurentPoly.zero(num_vars)
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], num_vars
        )

    @classmethod
    def zeros(cls, rows, cols, num_vars):
        zero = LaurentPoly.zero(num_vars)
        return cls([[zero] * cols for _ in range(rows)], num_vars, cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, LaurentMat)
            and self.entries == other.entries
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        return f"LaurentMat({self.rows}x{self.cols}, vars={self.num_vars})"

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def transpose(self):
        if self.cols == 0:
            raise ValueError("cannot transpose a matrix with zero columns")
        return LaurentMat(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.num_vars,
        )

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentMat(
                [[x * other for x in row] for row in self.entries],
                self.num_vars,
                cols=self.cols,
            )
        if self.cols != other.rows:
            raise DimensionMismatchError("matrix product shape mismatch")
        if self.num_vars != other.num_vars:
            raise DimensionMismatchError("matrix product num_vars mismatch")
        zero = LaurentPoly.zero(self.num_vars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMat(out, self.num_vars, cols=other.cols)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("matrix sum shape mismatch")
        return LaurentMat(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            self.num_vars,
            cols=self.cols,
        )

    def __sub__(self, other):
        return self + (other * LaurentPoly.constant(-1, other.num_vars))

    def evaluate(self, z):
        """Complex matrix of entry values at the torus point z."""
        return [
            [evaluate_at_character(x, z) for x in row] for row in self.entries
        ]

    def det(self):
        """Exact determinant via Laplace expansion with subset memoization."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _det_memo(self.entries, tuple(range(self.rows)), tuple(range(self.cols)), {})


def _det_memo(entries, rows, cols, cache):
    n = len(rows)
    if n == 0:
        num_vars = entries[0][0].num_vars
        return LaurentPoly.one(num_vars)
    if n == 1:
        return entries[rows[0]][cols[0]]
    key = (rows, cols)
    got = cache.get(key)
    if got is not None:
        return got
    num_vars = entries[0][0].num_vars
    acc = LaurentPoly.zero(num_vars)
    r0 = rows[0]
    rest = rows[1:]
    for idx, c in enumerate(cols):
        a = entries[r0][c]
        if a.is_zero():
            continue
        sub = _det_memo(entries, rest, cols[:idx] + cols[idx + 1 :], cache)
        if sub.is_zero():
            continue
        term = a * sub
        acc = acc + (term if idx % 2 == 0 else -term)
    cache[key] = acc
    return acc


def adjoint_matrix(A):
    """Transpose combined with t_j -> t_j^-1 in every entry."""
    if A.cols == 0:
        raise ValueError("adjoint of a matrix with zero columns")
    return LaurentMat(
        [[A.entries[i][j].bar() for i in range(A.rows)] for j in range(A.cols)],
        A.num_vars,
    )
