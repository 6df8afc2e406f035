"""Finite fields with explicit moduli, and exact polynomial arithmetic over them.

Elements of F_{p^d} are stored as integer codes in [0, p^d): the base-p
digits of the code are the coordinates with respect to the power basis of
the generator (the residue class of x modulo the field's modulus).  Codes
0..p-1 are therefore exactly the prime subfield.  Multiplication runs
through discrete-log tables built once per field; addition is digitwise
mod p (a plain XOR when p = 2).

The default modulus for F_{p^d} is deterministic: the monic irreducible
degree-d polynomial over F_p whose non-leading coefficient vector, read as
a base-p integer (constant coefficient least significant), is smallest.
All counts produced by this package are modulus-independent; that is
tested, not assumed.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from typing import Iterator, Optional, Union

from .series import is_prime

DEFAULT_BUDGET = 1 << 26


class BudgetExceeded(Exception):
    """An enumeration would need more items than the configured budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} requires {required} items, exceeding the budget of {budget}"
            " (override with FFCOUNT_BUDGET or the budget argument)"
        )


def enumeration_budget(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("FFCOUNT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- polynomial helpers over the prime field (used only to build moduli) --


def _mod_p_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _mod_p_rem(a: list[int], b: tuple[int, ...], p: int) -> list[int]:
    # b monic
    db = len(b) - 1
    rem = list(a)
    while len(rem) - 1 >= db and rem:
        if rem[-1] == 0:
            rem.pop()
            continue
        top = rem[-1]
        shift = len(rem) - 1 - db
        for j, cb in enumerate(b):
            rem[shift + j] = (rem[shift + j] - top * cb) % p
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _is_irreducible_mod_p(f: tuple[int, ...], p: int) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            g = tuple(tail) + (1,)
            if not _mod_p_rem(list(f), g, p):
                return False
    return True


class FieldCtx:
    """The finite field F_{p^d} with an explicit modulus (absent when d = 1)."""

    __slots__ = ("p", "d", "q", "modulus", "_exp", "_log", "_pow_p")

    def __init__(self, p: int, d: int, modulus: Optional[tuple[int, ...]] = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        if d == 1:
            if modulus is not None:
                raise ValueError("prime fields carry no modulus")
        else:
            if modulus is None:
                raise ValueError("extension fields need a modulus; use field_make")
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree d")
            if not _is_irreducible_mod_p(modulus, p):
                raise ValueError("modulus is reducible")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = modulus
        self._pow_p = tuple(p**i for i in range(d))
        self._build_log_tables()

    # -- element codes ------------------------------------------------

    def digits(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // w) % p for w in self._pow_p)

    def encode(self, digits) -> int:
        p = self.p
        return sum((c % p) * w for c, w in zip(digits, self._pow_p))

    def _raw_mul(self, a: int, b: int) -> int:
        # coordinate polynomial product reduced by the modulus
        if a == 0 or b == 0:
            return 0
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.d - 1)
        p = self.p
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        if self.modulus is not None:
            prod = _mod_p_rem(prod, self.modulus, p)
        else:
            prod = prod[:1]
        return self.encode(prod + [0] * self.d)

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        gen = None
        for cand in range(1, q):
            seen = 1
            x = cand
            while x != 1:
                x = self._raw_mul(x, cand)
                seen += 1
                if seen > order:
                    break
            if seen == order:
                gen = cand
                break
        assert gen is not None
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = [0] * q
        for i, code in enumerate(exp):
            log[code] = i
        self._exp = tuple(exp)
        self._log = tuple(log)

    # -- arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % self.p
        return self.encode(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.d == 1:
            return (-a) % self.p
        return self.encode(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        order = self.q - 1
        return self._exp[(self._log[a] + self._log[b]) % order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero divisor")
        order = self.q - 1
        return self._exp[(-self._log[a]) % order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero divisor")
            return 1 if e == 0 else 0
        order = self.q - 1
        return self._exp[(self._log[a] * e) % order]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- elements -------------------------------------------------------

    def elem(self, value: Union[int, tuple, list, "FqElem"]) -> "FqElem":
        """Element from an integer (mod p) or a coordinate tuple."""
        if isinstance(value, FqElem):
            if value.ctx is not self:
                raise ValueError("field mismatch")
            return value
        if isinstance(value, (tuple, list)):
            if len(value) != self.d:
                raise ValueError(f"expected {self.d} coordinates")
            return FqElem(self, self.encode(value))
        return FqElem(self, self.from_int(value))

    def from_code(self, code: int) -> "FqElem":
        if not 0 <= code < self.q:
            raise ValueError("code out of range")
        return FqElem(self, code)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def elements(self) -> Iterator["FqElem"]:
        for code in range(self.q):
            yield FqElem(self, code)

    def nonzero_elements(self) -> Iterator["FqElem"]:
        for code in range(1, self.q):
            yield FqElem(self, code)

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.p, self.d, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.modulus is None:
            return f"F_{self.q}"
        mod = UniPoly.from_codes(FieldCtx(self.p, 1), self.modulus)
        return f"F_{self.q}<{mod}>"


@lru_cache(maxsize=None)
def _default_field(p: int, d: int) -> FieldCtx:
    if d == 1:
        return FieldCtx(p, 1)
    for val in range(p**d):
        tail = tuple((val // p**i) % p for i in range(d))
        cand = tail + (1,)
        if _is_irreducible_mod_p(cand, p):
            return FieldCtx(p, d, cand)
    raise AssertionError("no irreducible modulus found")  # cannot happen


def field_make(p: int, d: int, modulus=None) -> FieldCtx:
    """F_{p^d}; the deterministic smallest modulus unless one is supplied."""
    if modulus is None:
        return _default_field(p, d)
    return FieldCtx(p, d, tuple(modulus))


def field_from_q(q: int) -> FieldCtx:
    from .series import factor_prime_power

    p, d = factor_prime_power(q)
    return field_make(p, d)


class FqElem:
    """An element of a FieldCtx, identified by its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.digits(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def _coerce(self, other) -> Optional["FqElem"]:
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, int):
            return FqElem(self.ctx, self.ctx.from_int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.add(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.code))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.sub(self.code, other.code))

    def __rsub__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul(self.code, self.ctx.inv(other.code)))

    def __pow__(self, e: int):
        return FqElem(self.ctx, self.ctx.pow(self.code, e))

    def inv(self) -> "FqElem":
        return FqElem(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.ctx == other.ctx and self.code == other.code

    def __hash__(self):
        return hash((self.ctx, self.code))

    def __str__(self):
        if self.ctx.d == 1:
            return str(self.code)
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"FqElem({self}, q={self.ctx.q})"


# -- univariate polynomials -------------------------------------------


class UniPoly:
    """Univariate polynomial over a FieldCtx; coefficient index = exponent."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        cs = []
        for x in coeffs:
            if isinstance(x, FqElem):
                if x.ctx != ctx:
                    raise ValueError("field mismatch")
                cs.append(x.code)
            elif isinstance(x, int):
                cs.append(ctx.from_int(x))
            else:
                raise TypeError("coefficients must be FqElem or int")
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.c = tuple(cs)

    @classmethod
    def from_codes(cls, ctx: FieldCtx, codes) -> "UniPoly":
        out = cls.__new__(cls)
        cs = list(codes)
        while cs and cs[-1] == 0:
            cs.pop()
        out.ctx = ctx
        out.c = tuple(cs)
        return out

    @classmethod
    def x(cls, ctx: FieldCtx) -> "UniPoly":
        return cls.from_codes(ctx, (0, 1))

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int) -> "UniPoly":
        return cls.from_codes(ctx, (0,) * k + (1,))

    @classmethod
    def const(cls, ctx: FieldCtx, value) -> "UniPoly":
        return cls(ctx, [value])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def is_original(self) -> bool:
        return not self.c or self.c[0] == 0

    def coeff(self, k: int) -> FqElem:
        code = self.c[k] if 0 <= k < len(self.c) else 0
        return FqElem(self.ctx, code)

    def lc(self) -> FqElem:
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return FqElem(self.ctx, self.c[-1])

    def _check(self, other: "UniPoly"):
        if self.ctx != other.ctx:
            raise ValueError("field mismatch")

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.c == other.c

    def __hash__(self):
        return hash((self.ctx, self.c))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        ctx = self.ctx
        n = max(len(self.c), len(other.c))
        a, b = self.c, other.c
        return UniPoly.from_codes(
            ctx,
            (
                ctx.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                for i in range(n)
            ),
        )

    def __neg__(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly.from_codes(ctx, (ctx.neg(x) for x in self.c))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        ctx = self.ctx
        if isinstance(other, (FqElem, int)):
            s = ctx.elem(other).code
            return UniPoly.from_codes(ctx, (ctx.mul(s, x) for x in self.c))
        self._check(other)
        if not self.c or not other.c:
            return UniPoly.from_codes(ctx, ())
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, ca in enumerate(self.c):
            if ca:
                for j, cb in enumerate(other.c):
                    if cb:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(ca, cb))
        return UniPoly.from_codes(ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        ctx = self.ctx
        rem = list(self.c)
        db = other.degree
        inv_lead = ctx.inv(other.c[-1])
        quot = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            if rem[i] == 0:
                continue
            f = ctx.mul(rem[i], inv_lead)
            quot[i - db] = f
            for j, cb in enumerate(other.c):
                if cb:
                    rem[i - db + j] = ctx.sub(rem[i - db + j], ctx.mul(f, cb))
        return UniPoly.from_codes(ctx, quot), UniPoly.from_codes(ctx, rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def divides(self, other: "UniPoly") -> bool:
        return other.divmod(self)[1].is_zero()

    def gcd(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a * a.lc().inv()

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        out = []
        for k in range(1, len(self.c)):
            out.append(ctx.mul(ctx.from_int(k), self.c[k]))
        return UniPoly.from_codes(ctx, out)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        self._check(inner)
        ctx = self.ctx
        result = UniPoly.from_codes(ctx, ())
        for code in reversed(self.c):
            result = result * inner + UniPoly.from_codes(ctx, (code,))
        return result

    def eval(self, point: FqElem) -> FqElem:
        ctx = self.ctx
        acc = 0
        for code in reversed(self.c):
            acc = ctx.add(ctx.mul(acc, point.code), code)
        return FqElem(ctx, acc)

    def __call__(self, arg):
        if isinstance(arg, UniPoly):
            return self.compose(arg)
        return self.eval(self.ctx.elem(arg))

    def map_coeffs(self, fn) -> "UniPoly":
        """Apply a code->code map (e.g. Frobenius) to every coefficient."""
        return UniPoly.from_codes(self.ctx, (fn(x) for x in self.c))

    def __str__(self):
        if not self.c:
            return "0"
        ctx = self.ctx
        parts = []
        for k in range(self.degree, -1, -1):
            code = self.c[k]
            if code == 0:
                continue
            coeff = FqElem(ctx, code)
            if k == 0:
                body = str(coeff)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if code == 1 else f"{coeff}{var}"
            parts.append(body)
        return "+".join(parts)

    def __repr__(self):
        return f"UniPoly({self}, q={self.ctx.q})"


# -- multivariate polynomials ------------------------------------------


def _deglex_key(exp: tuple[int, ...]) -> tuple:
    # x1 > x2 > ... ; higher total degree wins, ties broken lexicographically
    return (sum(exp), exp)


class MvPoly:
    """Multivariate polynomial over a FieldCtx with the deg-lex term order."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: FieldCtx, nvars: int, terms=None):
        self.ctx = ctx
        self.nvars = nvars
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exp, val in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp}")
                code = ctx.elem(val).code
                if code:
                    clean[exp] = code
        self.terms = clean

    @classmethod
    def from_code_terms(cls, ctx: FieldCtx, nvars: int, terms: dict) -> "MvPoly":
        out = cls.__new__(cls)
        out.ctx = ctx
        out.nvars = nvars
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    @classmethod
    def variable(cls, ctx: FieldCtx, nvars: int, i: int) -> "MvPoly":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.from_code_terms(ctx, nvars, {exp: 1})

    @classmethod
    def const(cls, ctx: FieldCtx, nvars: int, value) -> "MvPoly":
        code = ctx.elem(value).code
        return cls.from_code_terms(ctx, nvars, {(0,) * nvars: code} if code else {})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum exponent-vector sum; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_deglex_key)

    def leading_coeff(self) -> FqElem:
        return FqElem(self.ctx, self.terms[self.leading_monomial()])

    def is_monic(self) -> bool:
        return bool(self.terms) and self.terms[self.leading_monomial()] == 1

    def is_original(self) -> bool:
        return (0,) * self.nvars not in self.terms

    def constant_coeff(self) -> FqElem:
        return FqElem(self.ctx, self.terms.get((0,) * self.nvars, 0))

    def _check(self, other: "MvPoly"):
        if self.ctx != other.ctx or self.nvars != other.nvars:
            raise ValueError("field or arity mismatch")

    def __eq__(self, other):
        if not isinstance(other, MvPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.nvars, self.key()))

    def key(self) -> tuple:
        """Canonical hashable serialization (deterministic term order)."""
        return tuple(sorted(self.terms.items()))

    def __add__(self, other: "MvPoly") -> "MvPoly":
        self._check(other)
        ctx = self.ctx
        out = dict(self.terms)
        for exp, cb in other.terms.items():
            s = ctx.add(out.get(exp, 0), cb)
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MvPoly.from_code_terms(ctx, self.nvars, out)

    def __neg__(self) -> "MvPoly":
        ctx = self.ctx
        return MvPoly.from_code_terms(ctx, self.nvars, {e: ctx.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "MvPoly") -> "MvPoly":
        return self + (-other)

    def __mul__(self, other) -> "MvPoly":
        ctx = self.ctx
        if isinstance(other, (FqElem, int)):
            s = ctx.elem(other).code
            if s == 0:
                return MvPoly.from_code_terms(ctx, self.nvars, {})
            return MvPoly.from_code_terms(
                ctx, self.nvars, {e: ctx.mul(s, c) for e, c in self.terms.items()}
            )
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        mul, add = ctx.mul, ctx.add
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = add(out.get(exp, 0), mul(ca, cb))
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return MvPoly.from_code_terms(ctx, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MvPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = MvPoly.const(self.ctx, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divides(self, other: "MvPoly") -> bool:
        """Exact multivariate division test: does self divide other?"""
        if self.is_zero():
            return other.is_zero()
        ctx = self.ctx
        lead = self.leading_monomial()
        lead_inv = ctx.inv(self.terms[lead])
        rem = dict(other.terms)
        while rem:
            rexp = max(rem, key=_deglex_key)
            diff = tuple(a - b for a, b in zip(rexp, lead))
            if any(d < 0 for d in diff):
                return False
            f = ctx.mul(rem[rexp], lead_inv)
            for exp, c in self.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, exp))
                s = ctx.sub(rem.get(tgt, 0), ctx.mul(f, c))
                if s:
                    rem[tgt] = s
                else:
                    rem.pop(tgt, None)
        return True

    def map_coeffs(self, fn) -> "MvPoly":
        return MvPoly.from_code_terms(
            self.ctx, self.nvars, {e: fn(c) for e, c in self.terms.items()}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp in sorted(self.terms, key=_deglex_key, reverse=True):
            code = self.terms[exp]
            coeff = FqElem(ctx, code)
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            if not mono:
                parts.append(str(coeff))
            elif code == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return "+".join(parts)

    def __repr__(self):
        return f"MvPoly({self}, q={self.ctx.q})"


# -- embeddings ----------------------------------------------------------


class Embedding:
    """An injective field homomorphism F_{p^d} -> F_{p^{dk}} as a code table."""

    __slots__ = ("src", "dst", "table", "_inverse")

    def __init__(self, src: FieldCtx, dst: FieldCtx, table: tuple[int, ...]):
        self.src = src
        self.dst = dst
        self.table = table
        self._inverse = {t: s for s, t in enumerate(table)}

    def __call__(self, x):
        if isinstance(x, FqElem):
            if x.ctx != self.src:
                raise ValueError("field mismatch")
            return FqElem(self.dst, self.table[x.code])
        if isinstance(x, UniPoly):
            return UniPoly.from_codes(self.dst, (self.table[c] for c in x.c))
        if isinstance(x, MvPoly):
            return MvPoly.from_code_terms(
                self.dst, x.nvars, {e: self.table[c] for e, c in x.terms.items()}
            )
        raise TypeError(f"cannot embed {type(x).__name__}")

    def in_image(self, code: int) -> bool:
        return code in self._inverse

    def pull_code(self, code: int) -> int:
        try:
            return self._inverse[code]
        except KeyError:
            raise ValueError("element not in the embedded subfield") from None

    def pullback(self, x):
        if isinstance(x, FqElem):
            return FqElem(self.src, self.pull_code(x.code))
        if isinstance(x, UniPoly):
            return UniPoly.from_codes(self.src, (self.pull_code(c) for c in x.c))
        if isinstance(x, MvPoly):
            return MvPoly.from_code_terms(
                self.src, x.nvars, {e: self.pull_code(c) for e, c in x.terms.items()}
            )
        raise TypeError(f"cannot pull back {type(x).__name__}")


@lru_cache(maxsize=None)
def field_embed(base: FieldCtx, k: int) -> tuple[FieldCtx, Embedding]:
    """F_{p^{dk}} together with the embedding sending the base generator to
    the smallest root of the base modulus found by exhaustive search."""
    if k < 1:
        raise ValueError("extension factor must be >= 1")
    if k == 1:
        return base, Embedding(base, base, tuple(range(base.q)))
    ext = field_make(base.p, base.d * k)
    if base.d == 1:
        table = tuple(range(base.p))
        return ext, Embedding(base, ext, table)
    root = None
    for cand in range(ext.q):
        acc = 0
        for c in reversed(base.modulus):
            acc = ext.add(ext.mul(acc, cand), c)
        if acc == 0:
            root = cand
            break
    assert root is not None  # the modulus always splits in the extension
    table = []
    for code in range(base.q):
        acc = 0
        for c in reversed(base.digits(code)):
            acc = ext.add(ext.mul(acc, root), c)
        table.append(acc)
    return ext, Embedding(base, ext, tuple(table))


# -- exhaustive enumeration ----------------------------------------------


def _deglex_monomials(r: int, n: int) -> list[tuple[int, ...]]:
    """All monomials in r variables of total degree <= n, deg-lex descending."""
    monos = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            monos.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    for total in range(n, -1, -1):
        rec((), total, r)
    return monos


def count_monic(q: int, r: int, n: int, original: bool = False) -> int:
    """Number of monic (optionally original) r-variate polynomials of total
    degree n over a field with q elements, by direct position counting."""
    from math import comb

    if n == 0:
        return 0 if original else 1
    below = comb(r + n, r) - 1  # monomials other than the deg-lex largest one
    top = comb(r + n - 1, r - 1)  # monomials of total degree exactly n
    total = 0
    for i in range(top):
        free = below - i  # monomials deg-lex smaller than the i-th leading choice
        total += q ** (free - (1 if original else 0))
    return total


def enumerate_monic_uni(
    ctx: FieldCtx, n: int, original: bool = False, budget: Optional[int] = None
) -> Iterator[UniPoly]:
    """All monic univariate polynomials of degree n, optionally with f(0)=0."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    b = enumeration_budget(budget)
    free = n - (1 if original and n > 0 else 0)
    required = ctx.q**free if n > 0 else 1
    if required > b:
        raise BudgetExceeded(required, b, f"enumerating monic degree-{n} polynomials")
    if n == 0:
        if not original:
            yield UniPoly.const(ctx, 1)
        return
    lows = range(1) if original else range(ctx.q)
    for low in lows:
        for mid in itertools.product(range(ctx.q), repeat=n - 1):
            yield UniPoly.from_codes(ctx, (low,) + mid + (1,))


def enumerate_monic_mv(
    ctx: FieldCtx, r: int, n: int, original: bool = False, budget: Optional[int] = None
) -> Iterator[MvPoly]:
    """All monic r-variate polynomials of total degree n (deg-lex leading
    coefficient 1), optionally with vanishing constant term."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    b = enumeration_budget(budget)
    required = count_monic(ctx.q, r, n, original)
    if required > b:
        raise BudgetExceeded(
            required, b, f"enumerating monic {r}-variate degree-{n} polynomials"
        )
    if n == 0:
        if not original:
            yield MvPoly.const(ctx, r, 1)
        return
    monos = _deglex_monomials(r, n)
    top = [m for m in monos if sum(m) == n]
    origin = (0,) * r
    for i, lead in enumerate(top):
        rest = monos[i + 1 :]
        if original:
            rest = [m for m in rest if m != origin]
        for codes in itertools.product(range(ctx.q), repeat=len(rest)):
            terms = {lead: 1}
            for exp, code in zip(rest, codes):
                if code:
                    terms[exp] = code
            yield MvPoly.from_code_terms(ctx, r, terms)
