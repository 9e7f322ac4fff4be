"""Finite commutative rings with an involution, and the group of admissible pairs.

Every ring element is a plain ``int`` in ``range(ring.size)``.  The integer is the
rank of the element's structural encoding in lexicographic order:

* ``gf(q)``: base-p digits of the residue polynomial (digit ``k`` is the
  coefficient of ``g**k``), so the order is lexicographic on the coefficient
  vector read from the top degree down;
* ``zi(n)``: ``a + b*i`` is ``a*n + b``;
* ``dual(S)``, ``prodc(S, T)``, ``swap(S)``: the pair ``(x, y)`` is
  ``x*|second| + y``.

So ``0`` is always the zero element and integer order is the canonical order
every solver uses to break ties.
"""
from __future__ import annotations

import functools
import math
import os
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

DEFAULT_CARRIER_CAP = 1 << 16
_TABLE_LIMIT = 256


class RingSpecError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


def cap(default: int) -> int:
    """Enumeration cap, overridable through ``TWISTFACT_CAP``."""
    env = os.environ.get("TWISTFACT_CAP")
    return int(env) if env else default


class InvolutiveRing:
    """Base class.  Subclasses supply the structural ``_add/_mul/_neg/_theta/_inv``."""

    spec: str
    size: int
    one: int

    def __init__(self):
        self.zero = 0
        self._inv_cache: dict[int, int | None] = {}
        if self.size <= _TABLE_LIMIT:
            self._build_tables()
        self.char = self._characteristic()
        self.theta_order = 1 if all(self._theta(x) == x for x in self._sample()) else 2

    def _sample(self):
        if self.size <= 4096:
            return range(self.size)
        return range(0, self.size, max(1, self.size // 4096))

    # structural arithmetic, overridden by subclasses
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _theta(self, a):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _build_tables(self):
        n = self.size
        r = range(n)
        self._at = [[self._add(a, b) for b in r] for a in r]
        self._mt = [[self._mul(a, b) for b in r] for a in r]
        self._nt = [self._neg(a) for a in r]
        self._tt = [self._theta(a) for a in r]
        inv = [None] * n
        for a in r:
            row = self._mt[a]
            for b in r:
                if row[b] == self.one:
                    inv[a] = b
                    break
        self._it = inv
        self.add = lambda a, b: self._at[a][b]
        self.mul = lambda a, b: self._mt[a][b]
        self.neg = self._nt.__getitem__
        self.theta = self._tt.__getitem__
        self.inv_or_none = self._it.__getitem__

    def add(self, a: int, b: int) -> int:
        return self._add(a, b)

    def mul(self, a: int, b: int) -> int:
        return self._mul(a, b)

    def neg(self, a: int) -> int:
        return self._neg(a)

    def theta(self, a: int) -> int:
        return self._theta(a)

    def inv_or_none(self, a: int) -> int | None:
        try:
            return self._inv_cache[a]
        except KeyError:
            v = self._inv_cache[a] = self._inv(a)
            return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        v = self.inv_or_none(a)
        if v is None:
            raise ZeroDivisionError(f"{self.fmt(a)} is not a unit in {self.spec}")
        return v

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_unit(self, a: int) -> bool:
        return self.inv_or_none(a) is not None

    def from_int(self, k: int) -> int:
        k %= self.char
        acc = 0
        for _ in range(k):
            acc = self.add(acc, self.one)
        return acc

    def norm(self, a: int) -> int:
        return self.mul(a, self.theta(a))

    def elements(self) -> range:
        limit = cap(DEFAULT_CARRIER_CAP)
        if self.size > limit:
            raise CapExceeded(f"{self.spec} has {self.size} elements, cap is {limit}")
        return range(self.size)

    def _characteristic(self) -> int:
        acc, k = self.one, 1
        while acc != 0:
            acc = self.add(acc, self.one)
            k += 1
        return k

    # literals
    def fmt(self, a: int) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> int:
        raise NotImplementedError

    def __repr__(self):
        return f"InvolutiveRing({self.spec!r})"

    def __eq__(self, other):
        return isinstance(other, InvolutiveRing) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _matching(text, 0) == len(text) - 1:
        text = text[1:-1].strip()
    return text


def _matching(text: str, start: int) -> int:
    depth = 0
    for k in range(start, len(text)):
        if text[k] == "(":
            depth += 1
        elif text[k] == ")":
            depth -= 1
            if depth == 0:
                return k
    raise RingSpecError(f"unbalanced parentheses in {text!r}")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, last = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[last:k])
            last = k + 1
    parts.append(text[last:])
    return parts


def _signed_terms(text: str) -> list[tuple[int, str]]:
    """Split ``text`` at top-level + and - into (sign, term) pairs."""
    text = text.replace(" ", "")
    out, depth, start, sign = [], 0, 0, 1
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > 0 and text[k - 1] not in "*^":
            out.append((sign, text[start:k]))
            sign = 1 if ch == "+" else -1
            start = k + 1
        elif ch in "+-" and depth == 0 and k == 0:
            sign = 1 if ch == "+" else -1
            start = 1
    out.append((sign, text[start:]))
    return [(s, t) for s, t in out if t != ""]


def _wrap(lit: str) -> str:
    return f"({lit})" if any(c in lit for c in "+-|") else lit


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


class GF(InvolutiveRing):
    """The finite field with ``q = p**d`` elements; ``g`` is a primitive root.

    The modulus is the first monic degree-``d`` polynomial (lower coefficients
    counted as a base-p integer) whose root generates the multiplicative group.
    The involution is ``x -> x**sqrt(q)`` when q is a square, else the identity.
    """

    def __init__(self, q: int):
        p = next((d for d in range(2, q + 1) if q % d == 0), None)
        if p is None or not _is_prime(p):
            raise RingSpecError(f"gf({q}): order must be a prime power")
        d, m = 0, q
        while m % p == 0:
            m //= p
            d += 1
        if m != 1:
            raise RingSpecError(f"gf({q}): order must be a prime power")
        if q > cap(DEFAULT_CARRIER_CAP):
            raise CapExceeded(f"gf({q}) exceeds the enumeration cap")
        self.spec, self.size, self.p, self.d, self.one = f"gf({q})", q, p, d, 1
        self._exp, self._log = self._primitive_tables()
        s = math.isqrt(q)
        self._frob = s if s * s == q else 1
        super().__init__()

    def _digits(self, a):
        out = []
        for _ in range(self.d):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def _primitive_tables(self):
        p, d, q = self.p, self.d, self.size
        if d == 1:
            for g in range(1, p):
                exp, x = [], 1
                for _ in range(q - 1):
                    exp.append(x)
                    x = x * g % p
                if len(set(exp)) == q - 1:
                    break
            self.modulus = None
            log = {v: k for k, v in enumerate(exp)}
            return exp, log
        for low in range(q):
            f = self._digits(low)  # x^d = -sum f_k x^k
            exp, x = [], [1] + [0] * (d - 1)
            for _ in range(q - 1):
                exp.append(self._undigits(x))
                top = x[-1]
                x = [0] + x[:-1]
                x = [(x[k] - top * f[k]) % p for k in range(d)]
            if 0 not in exp and len(set(exp)) == q - 1:
                self.modulus = f
                return exp, {v: k for k, v in enumerate(exp)}
        raise RingSpecError(f"no primitive polynomial for gf({q})")  # pragma: no cover

    def _add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % self.p
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _neg(self, a):
        if self.p == 2:
            return a
        if self.d == 1:
            return -a % self.p
        return self._undigits([-x % self.p for x in self._digits(a)])

    def _mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def _theta(self, a):
        if a == 0:
            return 0
        return self._exp[(self._log[a] * self._frob) % (self.size - 1)]

    def _inv(self, a):
        if a == 0:
            return None
        return self._exp[-self._log[a] % (self.size - 1)]

    def fmt(self, a):
        if self.d == 1:
            return str(a)
        terms = []
        for k, c in reversed(list(enumerate(self._digits(a)))):
            if c == 0:
                continue
            mono = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text):
        text = _strip_parens(text)
        coeffs = [0] * max(self.d, 1)
        for sign, term in _signed_terms(text):
            term = _strip_parens(term)
            m = re.fullmatch(r"(?:(\d+)\*?)?(g(?:\^(\d+))?)?", term)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise RingSpecError(f"bad literal {text!r} for {self.spec}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            if k and self.d == 1:
                raise RingSpecError(f"{self.spec} has no generator g")
            # reduce g^k through the exp table
            mono = self._exp[k % (self.size - 1)] if k else 1
            for j, dj in enumerate(self._digits(mono)):
                coeffs[j] = (coeffs[j] + sign * c * dj) % self.p
        return self._undigits(coeffs) if self.d > 1 else coeffs[0] % self.p


class ZI(InvolutiveRing):
    """Gaussian integers modulo n with complex conjugation."""

    def __init__(self, n: int):
        if n < 2:
            raise RingSpecError("zi(n) needs n >= 2")
        if n * n > cap(DEFAULT_CARRIER_CAP):
            raise CapExceeded(f"zi({n}) exceeds the enumeration cap")
        self.n, self.spec, self.size, self.one = n, f"zi({n})", n * n, n
        super().__init__()

    def _add(self, a, b):
        n = self.n
        return ((a // n + b // n) % n) * n + (a + b) % n

    def _neg(self, a):
        n = self.n
        return (-(a // n) % n) * n + (-a) % n

    def _mul(self, a, b):
        n = self.n
        x, y = divmod(a, n)
        u, v = divmod(b, n)
        return ((x * u - y * v) % n) * n + (x * v + y * u) % n

    def _theta(self, a):
        n = self.n
        x, y = divmod(a, n)
        return x * n + (-y) % n

    def _inv(self, a):
        n = self.n
        x, y = divmod(a, n)
        nm = (x * x + y * y) % n
        if math.gcd(nm, n) != 1:
            return None
        k = pow(nm, -1, n)
        return (x * k % n) * n + (-y * k) % n

    def fmt(self, a):
        x, y = divmod(a, self.n)
        return f"{x}+{y}*i"

    def parse(self, text):
        text = _strip_parens(text)
        x = y = 0
        for sign, term in _signed_terms(text):
            m = re.fullmatch(r"(\d+)?\*?(i)?", _strip_parens(term))
            if not m or (m.group(1) is None and m.group(2) is None):
                raise RingSpecError(f"bad literal {text!r} for {self.spec}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2):
                y += sign * c
            else:
                x += sign * c
        return (x % self.n) * self.n + y % self.n


class _Pair(InvolutiveRing):
    """Shared plumbing for rings whose elements are pairs ``x*|right| + y``."""

    left: InvolutiveRing
    right: InvolutiveRing

    def _split(self, a):
        return divmod(a, self.right.size)

    def _join(self, x, y):
        return x * self.right.size + y

    def _setup(self, spec, left, right, one):
        size = left.size * right.size
        if size > cap(DEFAULT_CARRIER_CAP):
            raise CapExceeded(f"{spec} exceeds the enumeration cap")
        self.spec, self.left, self.right, self.size, self.one = spec, left, right, size, one
        super().__init__()


class Dual(_Pair):
    """``S[e]/(e^2)`` with the involution of S applied to both coordinates."""

    def __init__(self, base: InvolutiveRing):
        self._setup(f"dual({base.spec})", base, base, base.one * base.size)

    def _add(self, a, b):
        (x, y), (u, v) = self._split(a), self._split(b)
        S = self.left
        return self._join(S.add(x, u), S.add(y, v))

    def _neg(self, a):
        x, y = self._split(a)
        return self._join(self.left.neg(x), self.left.neg(y))

    def _mul(self, a, b):
        (x, y), (u, v) = self._split(a), self._split(b)
        S = self.left
        return self._join(S.mul(x, u), S.add(S.mul(x, v), S.mul(y, u)))

    def _theta(self, a):
        x, y = self._split(a)
        return self._join(self.left.theta(x), self.left.theta(y))

    def _inv(self, a):
        x, y = self._split(a)
        S = self.left
        xi = S.inv_or_none(x)
        if xi is None:
            return None
        return self._join(xi, S.neg(S.mul(y, S.mul(xi, xi))))

    def fmt(self, a):
        x, y = self._split(a)
        return f"{_wrap(self.left.fmt(x))}+{_wrap(self.left.fmt(y))}*e"

    def parse(self, text):
        text = _strip_parens(text)
        x = y = 0
        S = self.left
        for sign, term in _signed_terms(text):
            term = term.strip()
            if term.endswith("*e") or term == "e":
                inner = term[:-2] if term.endswith("*e") else "1"
                v = S.parse(inner)
                y = S.add(y, v if sign > 0 else S.neg(v))
            else:
                v = S.parse(term)
                x = S.add(x, v if sign > 0 else S.neg(v))
        return self._join(x, y)


class _Product(_Pair):
    def _add(self, a, b):
        (x, y), (u, v) = self._split(a), self._split(b)
        return self._join(self.left.add(x, u), self.right.add(y, v))

    def _neg(self, a):
        x, y = self._split(a)
        return self._join(self.left.neg(x), self.right.neg(y))

    def _mul(self, a, b):
        (x, y), (u, v) = self._split(a), self._split(b)
        return self._join(self.left.mul(x, u), self.right.mul(y, v))

    def _inv(self, a):
        x, y = self._split(a)
        xi, yi = self.left.inv_or_none(x), self.right.inv_or_none(y)
        if xi is None or yi is None:
            return None
        return self._join(xi, yi)

    def fmt(self, a):
        x, y = self._split(a)
        return f"({self.left.fmt(x)}|{self.right.fmt(y)})"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and _matching(text, 0) == len(text) - 1):
            raise RingSpecError(f"bad literal {text!r} for {self.spec}")
        parts = _split_top(text[1:-1], "|")
        if len(parts) != 2:
            raise RingSpecError(f"bad literal {text!r} for {self.spec}")
        return self._join(self.left.parse(parts[0]), self.right.parse(parts[1]))


class ProdC(_Product):
    """``S x T`` with the componentwise involution."""

    def __init__(self, left: InvolutiveRing, right: InvolutiveRing):
        self._setup(f"prodc({left.spec},{right.spec})", left, right,
                    left.one * right.size + right.one)

    def _theta(self, a):
        x, y = self._split(a)
        return self._join(self.left.theta(x), self.right.theta(y))


class Swap(_Product):
    """``S x S`` with the exchange involution ``(x, y) -> (y, x)``.  Experimental."""

    def __init__(self, base: InvolutiveRing):
        self._setup(f"swap({base.spec})", base, base, base.one * base.size + base.one)

    def _theta(self, a):
        x, y = self._split(a)
        return self._join(y, x)


_cache: dict[str, InvolutiveRing] = {}


def _parse_spec(text: str, strict: bool) -> InvolutiveRing:
    text = text.replace(" ", "")
    m = re.fullmatch(r"(gf|zi|dual|prodc|swap)\((.*)\)", text)
    if not m:
        raise RingSpecError(f"malformed ring spec {text!r}")
    kind, body = m.groups()
    if kind in ("gf", "zi"):
        if not body.isdigit():
            raise RingSpecError(f"malformed ring spec {text!r}")
        ring = GF(int(body)) if kind == "gf" else ZI(int(body))
    elif kind == "dual":
        ring = Dual(_parse_spec(body, strict=False))
    elif kind == "swap":
        ring = Swap(_parse_spec(body, strict=False))
    else:
        parts = _split_top(body, ",")
        if len(parts) != 2:
            raise RingSpecError(f"prodc takes two rings: {text!r}")
        ring = ProdC(_parse_spec(parts[0], strict=True), _parse_spec(parts[1], strict=True))
    if strict and ring.theta_order != 2:
        raise RingSpecError(f"{ring.spec}: the involution must have order exactly 2")
    return ring


def ring_parse(spec: str) -> InvolutiveRing:
    """Parse a ring spec such as ``gf(4)``, ``zi(5)`` or ``prodc(gf(4),gf(9))``."""
    key = spec.replace(" ", "")
    ring = _cache.get(key)
    if ring is None:
        ring = _cache[key] = _parse_spec(key, strict=True)
    return ring


class SubsetTag(str, Enum):
    FIXED = "fixed"
    SKEW = "skew"
    UNITS = "units"
    FIXED_UNITS = "fixed_units"
    SKEW_UNITS = "skew_units"


def is_member(ring: InvolutiveRing, tag: SubsetTag | str, r: int) -> bool:
    tag = SubsetTag(tag)
    if tag is SubsetTag.FIXED:
        return ring.theta(r) == r
    if tag is SubsetTag.SKEW:
        return ring.neg(ring.theta(r)) == r
    if tag is SubsetTag.UNITS:
        return ring.is_unit(r)
    if tag is SubsetTag.FIXED_UNITS:
        return ring.theta(r) == r and ring.is_unit(r)
    return ring.neg(ring.theta(r)) == r and ring.is_unit(r)


def subset_members(ring: InvolutiveRing, tag: SubsetTag | str) -> list[int]:
    return [r for r in ring.elements() if is_member(ring, tag, r)]


# --- admissible pairs -------------------------------------------------------


class APairError(ValueError):
    pass


@dataclass(frozen=True)
class APair:
    """A pair ``(t, u)`` with ``t * theta(t) == u + theta(u)``."""

    ring: InvolutiveRing
    t: int
    u: int

    @property
    def is_star(self) -> bool:
        return self.ring.is_unit(self.u)

    def __iter__(self) -> Iterator[int]:
        return iter((self.t, self.u))

    def fmt(self) -> str:
        return f"({self.ring.fmt(self.t)}, {self.ring.fmt(self.u)})"


def is_admissible(ring: InvolutiveRing, t: int, u: int) -> bool:
    return ring.norm(t) == ring.add(u, ring.theta(u))


def apair_make(ring: InvolutiveRing, t: int, u: int) -> APair:
    lhs, rhs = ring.norm(t), ring.add(u, ring.theta(u))
    if lhs != rhs:
        raise APairError(
            f"({ring.fmt(t)}, {ring.fmt(u)}) is not admissible in {ring.spec}: "
            f"t*conj(t) = {ring.fmt(lhs)} but u+conj(u) = {ring.fmt(rhs)}"
        )
    return APair(ring, t, u)


def apair_zero(ring: InvolutiveRing) -> APair:
    return APair(ring, 0, 0)


def apair_compose(p: APair, q: APair) -> APair:
    """``(t,u) + (t',u') = (t+t', u+u'+conj(t)*t')``."""
    if p.ring != q.ring:
        raise APairError(f"ring mismatch: {p.ring.spec} vs {q.ring.spec}")
    R = p.ring
    return APair(R, R.add(p.t, q.t), R.add(R.add(p.u, q.u), R.mul(R.theta(p.t), q.t)))


def apair_inverse(p: APair) -> APair:
    R = p.ring
    return APair(R, R.neg(p.t), R.theta(p.u))


def apair_scale(r: int, p: APair) -> APair:
    """The monoid action ``r . (t,u) = (r t, r conj(r) u)``."""
    R = p.ring
    return APair(R, R.mul(r, p.t), R.mul(R.norm(r), p.u))


def apair_conj(p: APair) -> APair:
    R = p.ring
    return APair(R, R.theta(p.t), R.theta(p.u))


def apair_enumerate(ring: InvolutiveRing) -> list[APair]:
    """All admissible pairs in lexicographic order of ``(t, u)``."""
    return list(_apairs(ring))


@functools.lru_cache(maxsize=64)
def _apairs(ring: InvolutiveRing) -> tuple[APair, ...]:
    elems = ring.elements()
    if ring.size ** 2 > cap(DEFAULT_CARRIER_CAP) * 64:
        raise CapExceeded(f"admissible-pair scan of {ring.spec} exceeds the cap")
    trace = {}
    for u in elems:
        trace.setdefault(ring.add(u, ring.theta(u)), []).append(u)
    out = []
    for t in elems:
        for u in trace.get(ring.norm(t), ()):
            out.append(APair(ring, t, u))
    return tuple(out)


def apair_star(ring: InvolutiveRing) -> list[APair]:
    return [p for p in apair_enumerate(ring) if p.is_star]
