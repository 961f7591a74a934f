"""Exact arithmetic in GF(p^m) and in towers of extensions.

Elements are stored as non-negative integers: the element with coefficient
vector ``(c0, ..., c_{m-1})`` over the base field is the integer
``c0 + c1*Q + ... + c_{m-1}*Q^(m-1)`` where ``Q`` is the order of the base.
Because the base field sits in the extension as the constant polynomials,
embedding a base element is the identity on these integers.

All vectorised operations take and return ``numpy`` int64 arrays (or
scalars).  Small fields carry full addition/multiplication tables; larger
ones use exponent/logarithm tables for products and digit-wise addition.
"""

from __future__ import annotations

import threading
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

DEFAULT_FIELD_CAP = 1 << 16
TABLE_LIMIT = 1024


class FieldCapExceeded(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m, raising ValueError when q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                break
            return p, m
    raise ValueError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# scalar polynomial arithmetic over a base field (used at construction time)
# ---------------------------------------------------------------------------

class _ScalarOps:
    """Python-int arithmetic of a field, for polynomial work outside numpy."""

    def __init__(self, field: "FieldSpec | None", p: int):
        self.field = field
        self.p = p

    def add(self, a, b):
        if self.field is None:
            return (a + b) % self.p
        return int(self.field.add(a, b))

    def sub(self, a, b):
        if self.field is None:
            return (a - b) % self.p
        return int(self.field.sub(a, b))

    def mul(self, a, b):
        if self.field is None:
            return (a * b) % self.p
        return int(self.field.mul(a, b))

    def inv(self, a):
        if self.field is None:
            return pow(a, self.p - 2, self.p)
        return int(self.field.inv(a))


def _poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_rem(f, g, ops: _ScalarOps):
    """Remainder of f modulo g (coefficient lists, low degree first)."""
    f = _poly_trim(f)
    g = _poly_trim(g)
    lead_inv = ops.inv(g[-1])
    while len(f) >= len(g):
        coef = ops.mul(f[-1], lead_inv)
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = ops.sub(f[shift + i], ops.mul(coef, gi))
        f = _poly_trim(f)
    return f


def _monic_polys(order: int, degree: int):
    """All monic polynomials of the given degree, in increasing integer order."""
    for idx in range(order ** degree):
        coeffs = []
        for _ in range(degree):
            idx, c = divmod(idx, order)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], base_order: int, ops: _ScalarOps) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(base_order, d):
            if not _poly_rem(modulus, g, ops):
                return False
    return True


# ---------------------------------------------------------------------------
# field specification
# ---------------------------------------------------------------------------

_TABLE_CACHE: dict = {}
_TABLE_LOCK = threading.Lock()
_FIELD_CACHE: dict = {}


class _Tables:
    __slots__ = ("exp", "log", "add", "mul", "neg", "inv", "digits", "primitive")


class FieldSpec:
    """GF(Q^m) as polynomials over a base field GF(Q) modulo an irreducible.

    The prime field GF(p) has ``base is None`` and modulus ``X``.  Every other
    field has a base: GF(p) for fields built directly over the prime field, or
    another extension for towers.
    """

    def __init__(self, p: int, modulus: Sequence[int], base: "FieldSpec | None" = None,
                 cap: int = DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        modulus = tuple(int(c) for c in modulus)
        if base is None and len(modulus) > 2:
            base = prime_field(p)
        if base is not None and base.p != p:
            raise ValueError("base field has a different characteristic")
        m = len(modulus) - 1
        if m < 1 or modulus[-1] != 1:
            raise ValueError(f"modulus {modulus} is not monic of positive degree")
        if base is None and modulus != (0, 1):
            raise ValueError("the prime field must use modulus X")
        base_order = p if base is None else base.q
        if any(c < 0 or c >= base_order for c in modulus):
            raise ValueError("modulus coefficient outside the base field")
        q = base_order ** m
        if q > cap:
            raise FieldCapExceeded(f"field order {q} exceeds cap {cap}")
        self.p = p
        self.m = m
        self.base = base
        self.modulus = modulus
        self.q = q
        self.base_order = base_order
        self.degree = m * (1 if base is None else base.degree)
        if base is not None:
            ops = base._ops if base.base is not None else _ScalarOps(None, p)
            if not is_irreducible(modulus, base_order, ops):
                raise ValueError(f"modulus {modulus} is reducible over {base}")
        self._ops = _ScalarOps(self if self.base is not None else None, p)
        self._t = _tables_for(self)

    # -- identity -----------------------------------------------------------
    @property
    def key(self):
        return (self.p, self.modulus, None if self.base is None else self.base.key)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.q})" if self.base is None or self.base.base is None else \
            f"GF({self.base_order}^{self.m})"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    def literal(self) -> str:
        """Textual literal ``GF(p^m; modulus=c0,...,cm)``; towers nest the base."""
        if self.base is None or self.base.base is None:
            head = f"{self.p}^{self.m}"
            coeffs = ",".join(str(c) for c in self.modulus)
        else:
            head = f"{self.base.literal()}^{self.m}"
            coeffs = ",".join(self.base.format_element(c) for c in self.modulus)
        return f"GF({head}; modulus={coeffs})"

    def format_element(self, x) -> str:
        x = int(x)
        if self.base is None:
            return f"[{x}]"
        parts = []
        for c in self.coeffs(x):
            parts.append(str(c) if self.base.base is None else self.base.format_element(c))
        return "[" + ",".join(parts) + "]"

    # -- tower relations ---------------------------------------------------
    def is_extension_of(self, other: "FieldSpec") -> bool:
        f = self
        while f is not None:
            if f == other:
                return True
            f = f.base
        return False

    def embed(self, x, sub: "FieldSpec | None" = None) -> "FieldElement":
        """Image of an element of a subfield in the tower (constant polynomial)."""
        sub = self.base if sub is None else sub
        if isinstance(x, FieldElement):
            sub = x.field
            x = x.value
        if sub is not None and not self.is_extension_of(sub):
            raise ValueError(f"{sub} is not a subfield of {self} in this tower")
        bound = self.p if sub is None else sub.q
        if not 0 <= int(x) < bound:
            raise ValueError("element outside the subfield")
        return FieldElement(self, int(x))

    def in_subfield(self, x, sub: "FieldSpec") -> np.ndarray:
        """Coefficient-degree test: entries lying in the subfield ``sub``."""
        if not self.is_extension_of(sub):
            raise ValueError(f"{sub} is not a subfield of {self} in this tower")
        return np.asarray(x) < sub.q

    # -- element constructors ---------------------------------------------
    def coeffs(self, x) -> tuple[int, ...]:
        x = int(x)
        out = []
        for _ in range(self.m):
            x, c = divmod(x, self.base_order)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        return sum(int(c) * self.base_order ** i for i, c in enumerate(coeffs))

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                return self.embed(x)
            return x
        if isinstance(x, (list, tuple)):
            return FieldElement(self, self.from_coeffs(x))
        return FieldElement(self, int(self.from_int(x)))

    def from_int(self, n):
        """Image of the integer n under Z -> GF(p) -> this field."""
        return np.asarray(n, dtype=np.int64) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    @property
    def primitive_element(self) -> int:
        return int(self._t.primitive)

    def exp(self, i):
        return self._t.exp[np.asarray(i, dtype=np.int64) % (self.q - 1)]

    def log(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("log of zero")
        return self._t.log[x]

    # -- vectorised arithmetic --------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._t.add is not None:
            return self._t.add[a, b]
        return self._digit_combine(a, b, 1)

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        if self._t.add is not None:
            return self._t.add[a, self._t.neg[b]]
        return self._digit_combine(a, b, -1)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.base is None:
            return (-a) % self.p
        return self._t.neg[a] if self._t.neg is not None else self._digit_combine(0 * a, a, -1)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.base is None:
            return (a * b) % self.p
        if self._t.mul is not None:
            return self._t.mul[a, b]
        la = self._t.log[a]
        lb = self._t.log[b]
        out = self._t.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._t.inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """Elementwise a**e by square-and-multiply (negative e inverts)."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.inv(a)
            e = -e
        result = np.ones_like(a)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def sum(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        if self.base is None:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=0) if a.shape[0] else np.zeros(a.shape[1:], np.int64)
        return reduce(self.add, a, np.zeros(a.shape[1:], np.int64))

    def dot(self, x, y):
        return self.sum(self.mul(x, y), axis=-1)

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.base is None:
            return (a @ b) % self.p
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        expand = (Ellipsis,) + (None,) * (b.ndim - 1)
        for j in range(a.shape[-1]):
            out = self.add(out, self.mul(a[..., j][expand], b[j]))
        return out

    def tables(self):
        """(add, mul, neg, inv) lookup tables, or None for fields above TABLE_LIMIT."""
        t = self._t
        if t.mul is None:
            return None
        return t.add, t.mul, t.neg, t.inv

    def _digit_combine(self, a, b, sign):
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.degree):
            da = (a // place) % self.p
            db = (b // place) % self.p
            out = out + ((da + sign * db) % self.p) * place
            place *= self.p
        return out

    # -- scalar polynomial multiplication (construction only) -------------
    def _mul_scalar_poly(self, x: int, y: int) -> int:
        ops = self.base._ops if self.base.base is not None else _ScalarOps(None, self.p)
        fx, fy = self.coeffs(x), self.coeffs(y)
        prod = [0] * (2 * self.m - 1)
        for i, a in enumerate(fx):
            if a == 0:
                continue
            for j, b in enumerate(fy):
                if b:
                    prod[i + j] = ops.add(prod[i + j], ops.mul(a, b))
        rem = _poly_rem(prod, list(self.modulus), ops)
        return self.from_coeffs(rem)


def _build_tables(F: FieldSpec) -> _Tables:
    t = _Tables()
    q, p = F.q, F.p
    t.add = t.mul = t.neg = None
    t.digits = None
    if F.base is None:
        if q == 2:
            g = 1
        else:
            g = next(c for c in range(2, q)
                     if all(pow(c, (q - 1) // r, q) != 1 for r in prime_factors(q - 1)))
        exp = np.empty(q - 1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            v = v * g % q
    else:
        def spow(x, e):
            r = 1
            while e:
                if e & 1:
                    r = F._mul_scalar_poly(r, x)
                x = F._mul_scalar_poly(x, x)
                e >>= 1
            return r

        factors = prime_factors(q - 1)
        g = next(c for c in range(2, q) if all(spow(c, (q - 1) // r) != 1 for r in factors))
        exp = np.empty(q - 1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            v = F._mul_scalar_poly(v, g)
    log = np.zeros(q, dtype=np.int64)
    log[exp] = np.arange(q - 1)
    t.exp, t.log, t.primitive = exp, log, g
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-log[1:]) % (q - 1)]
    t.inv = inv
    if q <= TABLE_LIMIT:
        elems = np.arange(q, dtype=np.int64)
        lsum = (log[:, None] + log[None, :]) % (q - 1)
        mul = exp[lsum]
        mul[0, :] = 0
        mul[:, 0] = 0
        t.mul = mul
        digits = np.array([[(x // p ** i) % p for i in range(F.degree)] for x in elems], dtype=np.int64)
        place = p ** np.arange(F.degree, dtype=np.int64)
        t.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ place
        t.neg = ((-digits) % p) @ place
        t.digits = digits
    return t


def _tables_for(F: FieldSpec) -> _Tables:
    key = F.key
    with _TABLE_LOCK:
        t = _TABLE_CACHE.get(key)
        if t is None:
            t = _build_tables(F)
            _TABLE_CACHE[key] = t
    return t


class FieldElement:
    """A single element of a FieldSpec, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element index of {field}")
        self.field = field
        self.value = int(value)

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field != self.field:
                if self.field.is_extension_of(y.field):
                    return y.value
                raise ValueError("arithmetic between elements of different fields")
            return y.value
        return int(self.field.from_int(y))

    def __add__(self, y):
        return FieldElement(self.field, int(self.field.add(self.value, self._other(y))))

    __radd__ = __add__

    def __sub__(self, y):
        return FieldElement(self.field, int(self.field.sub(self.value, self._other(y))))

    def __rsub__(self, y):
        return FieldElement(self.field, int(self.field.sub(self._other(y), self.value)))

    def __mul__(self, y):
        return FieldElement(self.field, int(self.field.mul(self.value, self._other(y))))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return self * FieldElement(self.field, self._other(y)).inverse()

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __pow__(self, e: int):
        return FieldElement(self.field, int(self.field.pow(self.value, e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.inv(self.value)))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.field == y.field and self.value == y.value
        if isinstance(y, int):
            return self.value == int(self.field.from_int(y))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __repr__(self):
        return self.field.format_element(self.value)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def prime_field(p: int) -> FieldSpec:
    key = ("prime", p)
    F = _FIELD_CACHE.get(key)
    if F is None:
        F = FieldSpec(p, (0, 1), None)
        _FIELD_CACHE[key] = F
    return F


def least_irreducible(base_order: int, m: int, ops: _ScalarOps) -> tuple[int, ...]:
    for f in _monic_polys(base_order, m):
        if is_irreducible(f, base_order, ops):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


def field_make(p: int, m: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """GF(p^m) whose modulus is the least monic irreducible of degree m.

    Polynomials are ordered by the integer ``c0 + c1*p + ... + c_{m-1}*p^(m-1)``
    of their non-leading coefficients.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("degree must be at least 1")
    if p ** m > cap:
        raise FieldCapExceeded(f"field order {p ** m} exceeds cap {cap}")
    if m == 1:
        return prime_field(p)
    key = ("make", p, m)
    F = _FIELD_CACHE.get(key)
    if F is None:
        modulus = least_irreducible(p, m, _ScalarOps(None, p))
        F = FieldSpec(p, modulus, prime_field(p), cap=cap)
        _FIELD_CACHE[key] = F
    return F


def field_from_modulus(p: int, modulus: Sequence[int], base: FieldSpec | None = None,
                       cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """Explicit-modulus constructor; coefficients are base element indices."""
    if base is None and len(modulus) == 2:
        if tuple(modulus) != (0, 1):
            raise ValueError("the prime field must use modulus X")
        return prime_field(p)
    return FieldSpec(p, modulus, base if base is not None else prime_field(p), cap=cap)


def field_extend(base: FieldSpec, m: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """GF(Q^m) as polynomials over ``base`` (least monic irreducible modulus)."""
    if m < 2:
        raise ValueError("extension degree must be at least 2")
    if base.q ** m > cap:
        raise FieldCapExceeded(f"field order {base.q ** m} exceeds cap {cap}")
    if base.base is None:
        return field_make(base.p, m, cap=cap)
    key = ("extend", base.key, m)
    F = _FIELD_CACHE.get(key)
    if F is None:
        modulus = least_irreducible(base.q, m, base._ops)
        F = FieldSpec(base.p, modulus, base, cap=cap)
        _FIELD_CACHE[key] = F
    return F


def GF(q: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """Shorthand: the field of order q with the default modulus."""
    p, m = prime_power(q)
    return field_make(p, m, cap=cap)


def as_array(values: Iterable, field: FieldSpec) -> np.ndarray:
    """Convert a sequence of ints or FieldElements to an index array."""
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if not field.is_extension_of(v.field):
                raise ValueError("element from an unrelated field")
            out.append(v.value)
        else:
            v = int(v)
            if not 0 <= v < field.q:
                raise ValueError(f"{v} is not an element of {field}")
            out.append(v)
    return np.array(out, dtype=np.int64)
