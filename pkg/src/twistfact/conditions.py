"""Ring conditions: SR1, SSR1, maximal ideals, the B_k chain and C-length."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .matrices import Mat
from .rings import (
    APair,
    CapExceeded,
    InvolutiveRing,
    apair_enumerate,
    apair_make,
    cap,
)
from . import su3


class SSR1Failure(ValueError):
    pass


class HypothesisError(ValueError):
    pass


# --- SR1 ---------------------------------------------------------------------


def units(R: InvolutiveRing) -> list[int]:
    return [x for x in R.elements() if R.is_unit(x)]


def principal_ideal(R: InvolutiveRing, a: int) -> frozenset[int]:
    return frozenset(R.mul(a, x) for x in R.elements())


def sr1_solve(R: InvolutiveRing, a: int, b: int) -> int | None:
    """Smallest z with ``a + b z`` a unit, or None."""
    for z in R.elements():
        if R.is_unit(R.add(a, R.mul(b, z))):
            return z
    return None


def is_unimodular(R: InvolutiveRing, a: int, b: int) -> bool:
    bR = principal_ideal(R, b)
    return any(R.sub(R.one, R.mul(a, x)) in bR for x in R.elements())


def sr1_holds(R: InvolutiveRing, elements: list[int] | None = None) -> bool:
    """SR1 over R, or over the subring ``elements`` when given (e.g. R_theta).

    For fixed a, both unimodularity of (a, b) and solvability depend on b only
    through the ideal bS, so the scan runs over distinct principal ideals.
    """
    S = list(elements) if elements is not None else list(R.elements())
    ideals = {frozenset(R.mul(b, x) for x in S) for b in S}
    for I in ideals:
        for a in S:
            aS = {R.mul(a, x) for x in S}
            unimodular = any(R.sub(R.one, y) in I for y in aS)
            if unimodular and not any(R.is_unit(R.add(a, y)) for y in I):
                return False
    return True


# --- completable vectors and SSR1 ---------------------------------------------

POSITIONS = ("first_row", "first_col", "last_row", "last_col")


def vector_at(A: Mat, position: str) -> tuple[int, int, int]:
    if position == "first_row":
        return A.rows[0]
    if position == "first_col":
        return tuple(r[0] for r in A.rows)
    if position == "last_row":
        return A.rows[2]
    if position == "last_col":
        return tuple(r[2] for r in A.rows)
    raise ValueError(f"unknown position {position!r}")


def _pivot(R: InvolutiveRing, v, z: APair, position: str) -> int:
    a, b, c = v
    if position in ("last_row", "last_col"):
        a, c = c, a
    return R.add(R.add(a, R.mul(b, z.t)), R.mul(c, z.u))


@dataclass(frozen=True)
class SSR1Witness:
    vector: tuple[int, int, int]
    completion: Mat
    solution: APair
    unit: int
    position: str = "first_row"


def is_completable(R: InvolutiveRing, a: int, b: int, c: int) -> Mat | None:
    """An SU(3, R) matrix with first row (a, b, c), or None.

    Rows of A are the conjugated columns of ``conj(A)^t``, which is again in
    SU(3, R), so the search runs over candidate rows 2 and 3 filtered by the
    column form of the unitarity equations, smallest rows first.
    """
    n = R.size
    if n ** 3 > cap(1 << 20):
        raise CapExceeded(f"completion search over {R.spec} is too large")
    th = R.theta
    one, mone = R.one, R.neg(R.one)

    def form(x, y):  # -x3 conj(y1) + x2 conj(y2) - x1 conj(y3), on conjugated rows
        x, y = [th(e) for e in x], [th(e) for e in y]
        s = R.sub(R.mul(x[1], th(y[1])), R.mul(x[2], th(y[0])))
        return R.sub(s, R.mul(x[0], th(y[2])))

    r1 = (a, b, c)
    if form(r1, r1) != 0:
        return None
    rows = list(itertools.product(R.elements(), repeat=3))
    second = [r for r in rows if form(r, r) == one and form(r1, r) == 0]
    third = [r for r in rows if form(r, r) == 0 and form(r1, r) == mone]
    for r2 in second:
        for r3 in third:
            if form(r2, r3) != 0:
                continue
            M = Mat(R, [r1, r2, r3])
            if su3.su3_check(M):
                return M
    return None


def ssr1_solve(R: InvolutiveRing, vector, completion: Mat, position: str = "first_row") -> SSR1Witness:
    """Smallest admissible (z1, z2) making the pivot expression a unit.

    The pivot is ``a + b z1 + c z2`` for first rows and columns and
    ``c + b z1 + a z2`` for last rows and columns.
    """
    vector = tuple(vector)
    if vector_at(completion, position) != vector:
        raise ValueError("completion does not carry the vector at the stated position")
    su3.require_su3(completion)
    for z in apair_enumerate(R):
        u = _pivot(R, vector, z, position)
        if R.is_unit(u):
            return SSR1Witness(vector, completion, z, u, position)
    raise SSR1Failure(f"no admissible pair solves {[R.fmt(x) for x in vector]} over {R.spec}")


# --- maximal ideals -------------------------------------------------------------


@dataclass(frozen=True)
class MaximalIdealList:
    ideals: tuple[frozenset[int], ...]
    jacobson: frozenset[int]

    def containing(self, r: int) -> list[frozenset[int]]:
        return [m for m in self.ideals if r in m]


def jacobson_radical(R: InvolutiveRing) -> frozenset[int]:
    """``{x : 1 + x r is a unit for every r}``."""
    els = list(R.elements())
    return frozenset(x for x in els if all(R.is_unit(R.add(R.one, R.mul(x, r))) for r in els))


def primitive_idempotents(R: InvolutiveRing) -> list[int]:
    idem = [e for e in R.elements() if e and R.mul(e, e) == e]
    return [e for e in idem if not any(f != e and R.mul(f, e) == f for f in idem)]


def maximal_ideals(R: InvolutiveRing) -> MaximalIdealList:
    """A finite commutative ring is the product of the local rings ``R e_i``.

    Its maximal ideals are ``{x : x e_i is not a unit of R e_i}``, one per
    primitive idempotent; ``x e_i + (1 - e_i)`` is a unit of R exactly when
    ``x e_i`` is a unit of ``R e_i``.
    """
    out = []
    for e in primitive_idempotents(R):
        f = R.sub(R.one, e)
        out.append(frozenset(x for x in R.elements() if not R.is_unit(R.add(R.mul(x, e), f))))
    out.sort(key=sorted)
    jac = frozenset(R.elements()).intersection(*out)
    if jac != jacobson_radical(R):
        raise AssertionError(f"maximal ideals of {R.spec} do not cut out the Jacobson radical")
    return MaximalIdealList(tuple(out), jac)


def j_r_set(R: InvolutiveRing, r: int, mx: MaximalIdealList | None = None) -> frozenset[int]:
    """``(meet of ideals avoiding r) minus (union of ideals containing r)``."""
    mx = mx or maximal_ideals(R)
    inside = [m for m in mx.ideals if r in m]
    outside = [m for m in mx.ideals if r not in m]
    meet = frozenset(R.elements()).intersection(*outside)
    union = frozenset().union(*inside)
    return meet - union


def ssr1_solve_semilocal(R: InvolutiveRing, vector, completion: Mat,
                         mx: MaximalIdealList | None = None, position: str = "first_row") -> SSR1Witness:
    """Constructive SSR1 for semilocal rings with conjugation-stable maximal ideals.

    Take the smallest base pair (z1, z2) with z2 a unit and scale it by an
    element z of ``J = (meet of ideals avoiding ac) minus (union of ideals
    containing a)``.  Then b z z1 is radical and ``c z conj(z) z2`` lies in
    ``J_a``, so the pivot is a unit.
    """
    vector = tuple(vector)
    if vector_at(completion, position) != vector:
        raise ValueError("completion does not carry the vector at the stated position")
    su3.require_su3(completion)
    mx = mx or maximal_ideals(R)
    th = R.theta
    for m in mx.ideals:
        if frozenset(th(x) for x in m) != m:
            raise HypothesisError(f"{R.spec} has a maximal ideal not fixed by the involution")
    base = next((p for p in apair_enumerate(R) if p.is_star), None)
    if base is None:
        raise HypothesisError(f"{R.spec} has no admissible pair with unit second coordinate")
    a, b, c = vector
    if position in ("last_row", "last_col"):
        a, c = c, a
    ac = R.mul(a, c)
    outside = [m for m in mx.ideals if ac not in m]
    inside_a = [m for m in mx.ideals if a in m]
    J = frozenset(R.elements()).intersection(*outside) - frozenset().union(*inside_a)
    if not J:
        raise AssertionError("the J set is empty although the maximal ideals are conjugation-stable")
    z = min(J)
    sol = APair(R, R.mul(z, base.t), R.mul(R.norm(z), base.u))
    u = R.add(R.add(a, R.mul(b, sol.t)), R.mul(c, sol.u))
    if not R.is_unit(u):
        raise AssertionError(f"J-route pivot {R.fmt(u)} is not a unit")
    return SSR1Witness(vector, completion, sol, u, position)


# --- SSR1 over the whole group ----------------------------------------------------


def first_rows(R: InvolutiveRing, limit: int | None = None) -> dict[tuple, Mat]:
    """Every first row of SU(3, R), each with a matrix that has it.

    The first rows form the orbit of (1, 0, 0) under right multiplication, so a
    breadth-first search over rows (carrying the group element) suffices.
    """
    limit = limit or cap(400_000)
    gens = su3.small_generators(R)
    I = Mat(R, [[R.one, 0, 0], [0, R.one, 0], [0, 0, R.one]])
    seen = {I.rows[0]: I}
    queue = deque([I])
    while queue:
        A = queue.popleft()
        for g in gens:
            B = A @ g
            if B.rows[0] not in seen:
                if len(seen) >= limit:
                    raise CapExceeded(f"first-row orbit of {R.spec} exceeds {limit}")
                seen[B.rows[0]] = B
                queue.append(B)
    return dict(sorted(seen.items()))


def vectors_at(R: InvolutiveRing, position: str, rows: dict[tuple, Mat] | None = None) -> dict[tuple, Mat]:
    """Completable vectors at ``position`` with a witnessing SU(3, R) matrix."""
    rows = rows if rows is not None else first_rows(R)
    out = {}
    for M in rows.values():
        if position == "first_row":
            A = M
        elif position == "first_col":
            A = M.conj().transpose()
        elif position == "last_row":
            A = su3.w_conj(M)
        elif position == "last_col":
            A = su3.w_conj(M).conj().transpose()
        else:
            raise ValueError(f"unknown position {position!r}")
        out[vector_at(A, position)] = A
    return dict(sorted(out.items()))


@dataclass
class SSR1Report:
    spec: str
    holds: bool
    vectors: int
    position: str
    apair_star_empty: bool
    counterexample: tuple | None = None


def ssr1_report(R: InvolutiveRing, position: str = "first_row",
                rows: dict[tuple, Mat] | None = None) -> SSR1Report:
    vecs = vectors_at(R, position, rows)
    pairs = apair_enumerate(R)
    star_empty = not any(p.is_star for p in pairs)
    for v in vecs:
        if not any(R.is_unit(_pivot(R, v, z, position)) for z in pairs):
            return SSR1Report(R.spec, False, len(vecs), position, star_empty, v)
    return SSR1Report(R.spec, True, len(vecs), position, star_empty)


def ssr1_holds(R: InvolutiveRing, position: str = "first_row") -> bool:
    return ssr1_report(R, position).holds


# --- B_k chain and C-length ---------------------------------------------------------


def b1_set(R: InvolutiveRing) -> dict[int, APair]:
    """Units u with some (t, u) admissible, each with its smallest t."""
    out: dict[int, APair] = {}
    for p in apair_enumerate(R):
        if p.is_star and p.u not in out:
            out[p.u] = p
    return dict(sorted(out.items()))


@dataclass
class ClengthCertificate:
    spec: str
    b1: dict[int, APair]
    levels: list[set[int]]  # levels[m-1] = B_m
    parents: list[dict[int, tuple[int, int]]]  # parents[m-1][x] = (y in B_{m-1}, b in B_1)
    c_even: set[int]
    c_odd: set[int]
    units: set[int]
    k: int | None  # minimal l with B_2l = C_even; None when B_1 is empty
    decompositions: dict[int, list[int]] = field(default_factory=dict)

    @property
    def theta_complete(self) -> bool:
        return bool(self.b1) and self.c_even == self.units

    @property
    def verdict(self) -> str:
        return str(self.k) if self.theta_complete else "exhausted"

    def path(self, x: int, m: int) -> list[int]:
        out = []
        while m > 1:
            y, b = self.parents[m - 1][x]
            out.append(b)
            x, m = y, m - 1
        out.append(x)
        return out[::-1]


def b_chain(R: InvolutiveRing, max_m: int = 64) -> tuple[list[set[int]], list[dict]]:
    """B_1, B_2, ... until both the even and the odd chains are stationary."""
    b1 = list(b1_set(R))
    if not b1:
        return [], []
    levels = [set(b1)]
    parents: list[dict] = [{}]
    while len(levels) < max_m:
        prev = levels[-1]
        nxt: dict[int, tuple[int, int]] = {}
        for y in sorted(prev):
            for b in b1:
                x = R.mul(y, b)
                if x not in nxt:
                    nxt[x] = (y, b)
        levels.append(set(nxt))
        parents.append(nxt)
        m = len(levels)
        if m >= 4 and levels[m - 1] == levels[m - 3] and levels[m - 2] == levels[m - 4]:
            break
    return levels, parents


def c_length(R: InvolutiveRing, max_k: int | None = None) -> ClengthCertificate:
    levels, parents = b_chain(R, max_m=2 * (max_k or 32) + 2)
    us = set(units(R))
    b1 = b1_set(R)
    if not levels:
        return ClengthCertificate(R.spec, b1, [], [], set(), set(), us, None)
    c_even = set().union(*levels[1::2])
    c_odd = set().union(*levels[0::2])
    k = next((l for l in range(1, len(levels) // 2 + 1) if levels[2 * l - 1] == c_even), None)
    cert = ClengthCertificate(R.spec, b1, levels, parents, c_even, c_odd, us, k)
    if cert.theta_complete:
        for r in sorted(us):
            cert.decompositions[r] = _certificate_factors(R, cert, r)
    return cert


def _certificate_factors(R: InvolutiveRing, cert: ClengthCertificate, r: int) -> list[int]:
    """Exactly 2k factors from B_1 multiplying to r.

    Uses the shortest chain level m holding r that can be padded to 2k:
    with factor 1 when ``1 in B_1``, otherwise with pairs ``u0, u0^-1``.
    """
    target = 2 * cert.k
    one_in_b1 = R.one in cert.b1
    for m in range(1, target + 1):
        if r in cert.levels[m - 1] and (one_in_b1 or (target - m) % 2 == 0):
            out = cert.path(r, m)
            if one_in_b1:
                out += [R.one] * (target - m)
            else:
                u0 = min(cert.b1)
                out += [u0, R.inv(u0)] * ((target - m) // 2)
            return out
    raise AssertionError(f"{R.fmt(r)} is not in B_{target}")  # pragma: no cover


def _product(R: InvolutiveRing, xs) -> int:
    acc = R.one
    for x in xs:
        acc = R.mul(acc, x)
    return acc


def _explicit_factors(R: InvolutiveRing, r: int, mx: MaximalIdealList) -> list[APair] | None:
    """The explicit two- or four-factor splittings for fields and the semilocal cases.

    Returns None when the ring is outside those cases.
    """
    th = R.theta
    skew_units = [a for a in R.elements() if R.is_unit(a) and R.neg(th(a)) == a]
    n_max = len(mx.ideals)
    is_field = mx.ideals == (frozenset({0}),)
    swapped = n_max == 2 and frozenset(th(x) for x in mx.ideals[0]) == mx.ideals[1]
    if not skew_units or not (is_field or n_max == 1 or swapped):
        return None
    d = R.sub(r, th(r))
    if R.is_unit(d):
        return [apair_make(R, 0, d), apair_make(R, R.one, R.div(r, d))]
    a = skew_units[0]
    if is_field:
        return [apair_make(R, 0, a), apair_make(R, 0, R.div(r, a))]
    two = R.from_int(2)
    s = R.add(r, th(r))
    if not R.is_unit(two) or not R.is_unit(s):
        return None
    return [apair_make(R, 0, a), apair_make(R, 0, R.div(s, R.mul(two, a))),
            apair_make(R, R.one, R.div(r, s)), apair_make(R, two, two)]


def decompose_unit(R: InvolutiveRing, r: int, cert: ClengthCertificate | None = None,
                   method: str = "certificate") -> list[APair]:
    """Exactly 2k admissible pairs whose second coordinates multiply to r.

    ``method="certificate"`` reads the breadth-first chain of the certificate;
    ``method="explicit"`` uses the explicit field/local/two-ideal splittings when
    they apply and fits them into 2k factors, falling back to the certificate.
    """
    if not R.is_unit(r):
        raise ValueError(f"{R.fmt(r)} is not a unit")
    cert = cert or c_length(R)
    if not cert.theta_complete:
        raise HypothesisError(f"{R.spec} is not theta-complete")
    target = 2 * cert.k
    if method == "explicit":
        fac = _explicit_factors(R, r, maximal_ideals(R))
        if fac is not None and len(fac) <= target:
            pad_pair = cert.b1.get(R.one)
            if pad_pair is not None:
                return fac + [pad_pair] * (target - len(fac))
            u0 = min(cert.b1)
            extra = [cert.b1[u0], cert.b1[R.inv(u0)]] * ((target - len(fac)) // 2)
            return fac + extra
    elif method != "certificate":
        raise ValueError(f"unknown method {method!r}")
    return [cert.b1[u] for u in cert.decompositions[r]]


def witnesses_for(R: InvolutiveRing, cert: ClengthCertificate | None = None, method: str = "certificate"):
    """Callable ``r -> decompose_unit(R, r)`` with the certificate computed once."""
    cert = cert or c_length(R)
    return lambda r: decompose_unit(R, r, cert, method)
