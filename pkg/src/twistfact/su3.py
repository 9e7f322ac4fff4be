"""The group SU(3, R): generators, structural identities, Gauss and unitriangular forms."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .forms import Factor, FactoredForm, unitri_target
from .matrices import Mat, det, diagonal, hermitian_form, identity, sigma_inverse
from .rings import (
    APair,
    CapExceeded,
    InvolutiveRing,
    apair_compose,
    apair_zero,
    apair_enumerate,
    apair_inverse,
    apair_make,
    cap,
)


class NotInSU3(ValueError):
    pass


class InternalError(AssertionError):
    """An identity that must hold by construction failed: an arithmetic bug."""


# --- generators --------------------------------------------------------------


def x_plus(p: APair) -> Mat:
    R, t, u = p.ring, p.t, p.u
    return Mat(R, [[R.one, t, u], [0, R.one, R.theta(t)], [0, 0, R.one]])


def x_minus(p: APair) -> Mat:
    R, t, u = p.ring, p.t, p.u
    return Mat(R, [[R.one, 0, 0], [R.theta(t), R.one, 0], [u, t, R.one]])


def x_elem(sign: str, p: APair) -> Mat:
    return x_plus(p) if sign == "+" else x_minus(p)


def h_elem(R: InvolutiveRing, r: int) -> Mat:
    rb = R.theta(r)
    return diagonal(R, [r, R.mul(rb, R.inv(r)), R.inv(rb)])


def w_elem(R: InvolutiveRing, r: int) -> Mat:
    rb = R.theta(r)
    return Mat(R, [[0, 0, r], [0, R.neg(R.mul(R.inv(r), rb)), 0], [R.inv(rb), 0, 0]])


def _second_pair(p: APair) -> APair:
    """``(-t u^-1, conj(u)^-1)``, the middle parameter of ``w_pm``."""
    R = p.ring
    ui = R.inv(p.u)
    return APair(R, R.neg(R.mul(p.t, ui)), R.inv(R.theta(p.u)))


def _third_pair(p: APair) -> APair:
    R = p.ring
    return APair(R, R.mul(R.mul(p.t, R.inv(p.u)), R.theta(p.u)), p.u)


def w_pm(sign: str, p: APair) -> Mat:
    other = "-" if sign == "+" else "+"
    return x_elem(sign, p) @ x_elem(other, _second_pair(p)) @ x_elem(sign, _third_pair(p))


def h_pm(sign: str, p: APair, q: APair) -> Mat:
    return w_pm(sign, p) @ w_pm(sign, q)


# --- membership --------------------------------------------------------------

# (tag, (i, j)) for the six entries of A^t J conj(A) on or above the diagonal,
# with the sign normalisation that puts the right-hand sides at 0, 0, 1, -1, 0, 0.
_UA = [("U-A.1.1", 0, 0, 0), ("U-A.1.2", 0, 1, 0), ("U-A.1.3", 0, 2, 1),
       ("U-A.2.2", 1, 1, -1), ("U-A.2.3", 1, 2, 0), ("U-A.3.3", 2, 2, 0)]

# conj(a_ij) = a_pq a_rs - a_tv a_wx, all 1-based.
_UB = {
    (1, 1): ((1, 1), (2, 2), (1, 2), (2, 1)),
    (1, 2): ((1, 1), (2, 3), (1, 3), (2, 1)),
    (1, 3): ((1, 2), (2, 3), (1, 3), (2, 2)),
    (2, 1): ((1, 1), (3, 2), (1, 2), (3, 1)),
    (2, 2): ((1, 1), (3, 3), (1, 3), (3, 1)),
    (2, 3): ((1, 2), (3, 3), (1, 3), (3, 2)),
    (3, 1): ((2, 1), (3, 2), (2, 2), (3, 1)),
    (3, 2): ((2, 1), (3, 3), (2, 3), (3, 1)),
    (3, 3): ((2, 2), (3, 3), (2, 3), (3, 2)),
}


def ua_value(A: Mat, i: int, j: int) -> int:
    """``a_3i conj(a_1j) - a_2i conj(a_2j) + a_1i conj(a_3j)`` (0-based i, j)."""
    R, a, th = A.ring, A.rows, A.ring.theta
    s = R.add(R.mul(a[2][i], th(a[0][j])), R.mul(a[0][i], th(a[2][j])))
    return R.sub(s, R.mul(a[1][i], th(a[1][j])))


def ub_sides(A: Mat, i: int, j: int) -> tuple[int, int]:
    """Both sides of U-B.i.j (1-based): ``conj(a_ij)`` and its cofactor expression."""
    R = A.ring
    (p, q), (r, s), (t, v), (w, x) = _UB[(i, j)]
    e = lambda k, l: A.rows[k - 1][l - 1]
    rhs = R.sub(R.mul(e(p, q), e(r, s)), R.mul(e(t, v), e(w, x)))
    return R.theta(e(i, j)), rhs


@dataclass(frozen=True)
class Verdict:
    ok: bool
    tag: str | None = None
    lhs: str | None = None
    rhs: str | None = None

    def __bool__(self):
        return self.ok


def su3_check(A: Mat) -> Verdict:
    """Decide ``A in SU(3, R)``; on failure report the first failing equation."""
    R = A.ring
    if A.n != 3:
        return Verdict(False, "shape", str(A.n), "3")
    d = det(A)
    if d != R.one:
        return Verdict(False, "det", R.fmt(d), R.fmt(R.one))
    for tag, i, j, target in _UA:
        v = ua_value(A, i, j)
        want = R.from_int(target) if target >= 0 else R.neg(R.one)
        if v != want:
            return Verdict(False, tag, R.fmt(v), R.fmt(want))
    for (i, j) in _UB:
        lhs, rhs = ub_sides(A, i, j)
        if lhs != rhs:
            raise InternalError(f"U-A equations hold but U-B.{i}.{j} fails on {A}")
    return Verdict(True)


def require_su3(A: Mat) -> None:
    v = su3_check(A)
    if not v:
        raise NotInSU3(f"{v.tag}: {v.lhs} != {v.rhs}")


def w_conj(A: Mat) -> Mat:
    """``w(1) A w(1)``; note ``w(1)`` is an involution."""
    w = w_elem(A.ring, A.ring.one)
    return w @ A @ w


def w_conj_factor(sign: str, p: APair) -> tuple[str, APair]:
    """``w(1) x_sign(t,u) w(1) = x_other(-t, u)``."""
    R = p.ring
    return ("-" if sign == "+" else "+"), APair(R, R.neg(p.t), p.u)


def torus_conj(r: int, sign: str, p: APair) -> APair:
    """Parameter q with ``h(r) x_sign(p) h(r)^-1 = x_sign(q)``."""
    R = p.ring
    rb = R.theta(r)
    nr = R.mul(r, rb)
    if sign == "+":
        return APair(R, R.mul(R.mul(R.mul(r, r), R.inv(rb)), p.t), R.mul(nr, p.u))
    rbi = R.inv(rb)
    return APair(R, R.mul(R.mul(r, R.mul(rbi, rbi)), p.t), R.mul(R.inv(nr), p.u))


# --- relation suite ------------------------------------------------------------


@dataclass
class RelationReport:
    ring: str
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _record(self, name: str, good: bool, detail: str):
        self.checked[name] = self.checked.get(name, 0) + 1
        if not good and name not in self.failures:
            self.failures[name] = detail


def _check_relations(rep: RelationReport, R: InvolutiveRing, r: int, s: int, p: APair, q: APair):
    rb = R.theta(r)
    nr = R.mul(r, rb)
    h, w = h_elem(R, r), w_elem(R, r)
    hi, wi = sigma_inverse(h), sigma_inverse(w)
    d = f"r={R.fmt(r)} s={R.fmt(s)} p={p.fmt()}"
    rep._record("H1", h @ x_plus(p) @ hi == x_plus(torus_conj(r, "+", p)), d)
    rep._record("H2", h @ x_minus(p) @ hi == x_minus(torus_conj(r, "-", p)), d)
    rbi = R.inv(rb)
    w1 = APair(R, R.neg(R.mul(R.mul(r, R.mul(rbi, rbi)), p.t)), R.mul(R.inv(nr), p.u))
    rep._record("W1", w @ x_plus(p) @ wi == x_minus(w1), d)
    w2 = APair(R, R.neg(R.mul(R.mul(R.mul(r, r), rbi), p.t)), R.mul(nr, p.u))
    rep._record("W2", w @ x_minus(p) @ wi == x_plus(w2), d)
    rep._record("HW1", h == w @ sigma_inverse(w_elem(R, R.one)), d)
    rep._record("HW2", h @ w_elem(R, s) @ hi == w_elem(R, R.mul(nr, s)), d)
    rep._record("HW3", w @ h_elem(R, s) @ wi == h_elem(R, R.inv(R.theta(s))), d)
    if p.is_star:
        rep._record("W3", w_pm("+", p) == w_elem(R, p.u)
                    and w_pm("-", p) == w_elem(R, R.inv(R.theta(p.u))), d)
        if q.is_star:
            u1, u2 = p.u, q.u
            hp = h_elem(R, R.mul(u1, R.inv(R.theta(u2))))
            hm = h_elem(R, R.mul(R.inv(R.theta(u1)), u2))
            rep._record("H3", h_pm("+", p, q) == hp and h_pm("-", p, q) == hm,
                        f"{d} q={q.fmt()}")


def relation_suite(R: InvolutiveRing, samples: int | None = None, seed: int = 0) -> RelationReport:
    """Check the nine identities; exhaustive when ``samples`` is None."""
    rep = RelationReport(R.spec)
    units = [x for x in R.elements() if R.is_unit(x)]
    pairs = apair_enumerate(R)
    star = [p for p in pairs if p.is_star] or pairs
    if samples is None:
        for r, s, p in itertools.product(units, units, pairs):
            _check_relations(rep, R, r, s, p, star[(r + s + p.t) % len(star)])
        for p, q in itertools.product(star, star):
            _check_relations(rep, R, R.one, R.one, p, q)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            _check_relations(rep, R, rng.choice(units), rng.choice(units),
                             rng.choice(pairs), rng.choice(star))
    return rep


# --- enumeration ---------------------------------------------------------------


def generators(R: InvolutiveRing) -> list[Mat]:
    """x_pm of every admissible pair, h of every unit, and w(1)."""
    gens = [x_plus(p) for p in apair_enumerate(R)] + [x_minus(p) for p in apair_enumerate(R)]
    gens += [h_elem(R, r) for r in R.elements() if R.is_unit(r)]
    gens.append(w_elem(R, R.one))
    return gens


def closure(gens: list[Mat], limit: int) -> list[Mat]:
    """Subgroup generated by ``gens`` (finite, so monoid closure suffices)."""
    R = gens[0].ring
    start = identity(R, gens[0].n)
    seen = {start}
    queue = deque([start])
    while queue:
        A = queue.popleft()
        for g in gens:
            B = A @ g
            if B not in seen:
                if len(seen) >= limit:
                    raise CapExceeded(f"group closure exceeds {limit} elements")
                seen.add(B)
                queue.append(B)
    return sorted(seen, key=lambda M: M.rows)


def additive_generators(R: InvolutiveRing) -> list[APair]:
    """A small generating set of the group of admissible pairs."""
    pairs = apair_enumerate(R)
    gens: list[APair] = []
    span = {apair_zero(R)}
    for p in pairs:
        if p in span:
            continue
        gens.append(p)
        queue = deque(span)
        span = set(span)
        while queue:
            q = queue.popleft()
            for g in gens:
                s = apair_compose(q, g)
                if s not in span:
                    span.add(s)
                    queue.append(s)
        if len(span) == len(pairs):
            break
    return gens


def unit_generators(R: InvolutiveRing) -> list[int]:
    gens: list[int] = []
    span = {R.one}
    us = [x for x in R.elements() if R.is_unit(x)]
    for u in us:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = R.mul(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == len(us):
            break
    return gens


def small_generators(R: InvolutiveRing) -> list[Mat]:
    """x_pm on generators of the pair group, h on generators of R*, and w(1)."""
    pg = additive_generators(R)
    gens = [x_plus(p) for p in pg] + [x_minus(p) for p in pg]
    gens += [h_elem(R, u) for u in unit_generators(R)]
    gens.append(w_elem(R, R.one))
    return gens


def su3_enumerate(R: InvolutiveRing, limit: int | None = None) -> list[Mat]:
    """All of SU(3, R) in canonical (row-major) order."""
    return closure(small_generators(R), limit or cap(200_000))


def sigma_fixed_scan(R: InvolutiveRing) -> list[Mat]:
    """Every det-1 matrix with ``A^t J conj(A) = J``, found column by column.

    The diagonal Gram entries constrain each column on its own, and the
    off-diagonal ones relate pairs, so the scan never builds all of R^9.
    """
    if R.size > 9:
        raise CapExceeded(f"sigma-fixed scan of {R.spec} is too large")
    els = list(R.elements())
    J = hermitian_form(R, 3)
    cols = list(itertools.product(els, repeat=3))

    def form(c, d):
        th = R.theta
        acc = 0
        for i in range(3):
            for j in range(3):
                if J.rows[i][j]:
                    acc = R.add(acc, R.mul(c[i], R.mul(J.rows[i][j], th(d[j]))))
        return acc

    by_k = [[c for c in cols if form(c, c) == J.rows[k][k]] for k in range(3)]
    out = []
    for c0 in by_k[0]:
        for c1 in by_k[1]:
            if form(c0, c1) != J.rows[0][1]:
                continue
            for c2 in by_k[2]:
                if form(c0, c2) != J.rows[0][2] or form(c1, c2) != J.rows[1][2]:
                    continue
                M = Mat(R, zip(c0, c1, c2))
                if det(M) == R.one:
                    out.append(M)
    return sorted(out, key=lambda M: M.rows)


def product_set(R: InvolutiveRing, word: str, head: list[Mat] | None = None) -> set[Mat]:
    """The set ``head * U^{w_1} * ... * U^{w_m}`` for a sign word."""
    pairs = apair_enumerate(R)
    layer = set(head) if head else {identity(R, 3)}
    for sign in word:
        mats = [x_elem(sign, p) for p in pairs]
        layer = {A @ X for A in layer for X in mats}
    return layer


def torus(R: InvolutiveRing) -> list[Mat]:
    return [h_elem(R, r) for r in R.elements() if R.is_unit(r)]


def h_pm_closure(R: InvolutiveRing) -> list[Mat]:
    star = [p for p in apair_enumerate(R) if p.is_star]
    gens = [h_pm(s, p, q) for s in "+-" for p in star for q in star]
    return closure(gens, cap(200_000)) if gens else [identity(R, 3)]


def coverage_search(R: InvolutiveRing, word: str, group: list[Mat] | None = None) -> tuple[bool, dict]:
    """Does ``U^{w_1} ... U^{w_m}`` cover SU(3, R)?  Returns a witness per element.

    The search is a layered product with one recorded parameter list per
    reached matrix, so the witness of every element is available afterwards.
    """
    pairs = apair_enumerate(R)
    layer: dict[Mat, tuple[APair, ...]] = {identity(R, 3): ()}
    for sign in word:
        nxt: dict[Mat, tuple[APair, ...]] = {}
        for A, wit in layer.items():
            for p in pairs:
                B = A @ x_elem(sign, p)
                if B not in nxt:
                    nxt[B] = wit + (p,)
        layer = nxt
    group = group if group is not None else su3_enumerate(R)
    return all(g in layer for g in group), layer


# --- Gauss decomposition -------------------------------------------------------

Solver = Callable[[InvolutiveRing, tuple[int, int, int], Mat], "object"]


@dataclass(frozen=True)
class LDU:
    """``A = left * h(r) * right`` with left/right lists of ``(sign, APair)``."""

    r: int
    left: tuple[tuple[str, APair], ...]
    right: tuple[tuple[str, APair], ...]


def _clear_first_column(B: Mat) -> tuple[APair, int, APair]:
    """For B with ``b11`` a unit: ``B = x_-(p) h(r) x_+(q)``; returns (p, r, q)."""
    R = B.ring
    th = R.theta
    b11, b21, b31 = B[0, 0], B[1, 0], B[2, 0]
    n11 = R.inv(R.mul(b11, th(b11)))
    clear = apair_make(
        R,
        R.neg(R.div(th(b21), th(b11))),
        R.add(R.neg(R.div(b31, b11)), R.mul(R.mul(b21, th(b21)), n11)),
    )
    C = x_minus(clear) @ B
    r = C[0, 0]
    q = apair_make(R, R.div(C[0, 1], r), R.div(C[0, 2], r))
    if C != h_elem(R, r) @ x_plus(q):
        raise InternalError(f"first-column clearing left {C}")
    return apair_inverse(clear), r, q


def _solve(solver, R, vector, A, position="first_row"):
    from . import conditions

    solver = solver or conditions.ssr1_solve
    return solver(R, vector, A, position=position)


def ldu_row(A: Mat, solver=None) -> LDU:
    """Row route: ``A = x_-(a) h(r) x_+(b) x_-(c)`` from an SSR1 solution on row 1."""
    R = A.ring
    wit = _solve(solver, R, A.rows[0], A)
    z = wit.solution
    right = APair(R, R.theta(z.t), z.u)
    B = A @ x_minus(right)
    a, r, b = _clear_first_column(B)
    return LDU(r, (("-", a),), (("+", b), ("-", apair_inverse(right))))


def ldu_col(A: Mat, solver=None) -> LDU:
    """Column route: ``A = x_+(d) x_-(a) h(r) x_+(b)`` from SSR1 on column 1.

    With ``a11 + a21 z1 + a31 z2`` a unit, ``x_+(z1, z2) A`` has a unit corner.
    """
    R = A.ring
    column = tuple(r[0] for r in A.rows)
    z = _solve(solver, R, column, A, position="first_col").solution
    B = x_plus(z) @ A
    if not R.is_unit(B[0, 0]):
        raise InternalError("column pivot is not a unit")
    a, r, b = _clear_first_column(B)
    return LDU(r, (("+", apair_inverse(z)), ("-", a)), (("+", b),))


def _w_conj_ldu(L: LDU) -> LDU:
    """Turn an LDU of ``w A w`` into one of A (HW3: ``w h(s) w = h(conj(s)^-1)``)."""
    R = (L.left or L.right)[0][1].ring
    rr = R.inv(R.theta(L.r))
    return LDU(rr, tuple(w_conj_factor(*f) for f in L.left), tuple(w_conj_factor(*f) for f in L.right))


ORIENTATIONS = ("row-", "row+", "col+", "col-")


def ldu(A: Mat, orientation: str = "row-", solver=None) -> LDU:
    if orientation == "row-":
        return ldu_row(A, solver)
    if orientation == "col+":
        return ldu_col(A, solver)
    if orientation == "row+":
        return _w_conj_ldu(ldu_row(w_conj(A), solver))
    if orientation == "col-":
        return _w_conj_ldu(ldu_col(w_conj(A), solver))
    raise ValueError(f"unknown orientation {orientation!r}; expected one of {ORIENTATIONS}")


def _form(R: InvolutiveRing, factors, head_r: int | None = None) -> FactoredForm:
    head = h_elem(R, head_r) if head_r is not None else None
    return FactoredForm(R, 3, [Factor(s, x_elem(s, p), p) for s, p in factors], head, head_r)


def gauss_decompose(A: Mat, orientation: str = "row-", solver=None) -> FactoredForm:
    """``A = h(r) * x * x * x`` with signs ``-+-`` (row-/col-) or ``+-+`` (row+/col+).

    The torus sits in front; factors left of it in the LDU are moved across by
    conjugation with ``h(r)^-1``.
    """
    require_su3(A)
    L = ldu(A, orientation, solver)
    R = A.ring
    ri = R.inv(L.r)
    moved = [(s, torus_conj(ri, s, p)) for s, p in L.left]
    factors = merge_factors(moved + list(L.right))
    form = _form(R, factors, L.r)
    if form.product != A:
        raise InternalError(f"Gauss form does not reproduce {A}")
    return form


def merge_factors(factors) -> list[tuple[str, APair]]:
    """Merge neighbours of equal sign; ``x(p) x(q) = x(q + p)`` in this realization."""
    out: list[tuple[str, APair]] = []
    for s, p in factors:
        if out and out[-1][0] == s:
            out[-1] = (s, apair_compose(p, out[-1][1]))
        else:
            out.append((s, p))
    return out


def compact(factors) -> list[tuple[str, APair]]:
    """Drop identity factors and re-merge until stable."""
    cur = list(factors)
    while True:
        nxt = merge_factors([(s, p) for s, p in cur if (p.t, p.u) != (0, 0)])
        if nxt == cur:
            return cur
        cur = nxt


def compact_form(form: FactoredForm, keep_head: bool = False) -> FactoredForm:
    """Compacted factors; a trivial head ``h(1)`` is dropped unless ``keep_head``."""
    R = form.ring
    head_r = form.head_param
    if head_r is not None and head_r == R.one and not keep_head:
        head_r = None
    return _form(R, compact((f.sign, f.param) for f in form.factors), head_r)


# --- torus factorization -------------------------------------------------------


def _inverse_witness(p: APair) -> APair:
    """A pair with second coordinate ``u^-1`` from one with second coordinate u."""
    R = p.ring
    return apair_make(R, R.neg(R.mul(p.t, R.inv(R.theta(p.u)))), R.inv(p.u))


def _torus_minus_first(R: InvolutiveRing, r: int, witnesses: list[APair]) -> list[tuple[str, APair]]:
    """``h(r)`` as ``(U- U+)^(k+1)`` from 2k witnesses whose u's multiply to r."""
    m = len(witnesses)
    if m % 2 or m == 0:
        raise ValueError("need an even, positive number of unit factors")
    k = m // 2
    prod = R.one
    for p in witnesses:
        if not p.is_star:
            raise ValueError(f"witness {p.fmt()} does not have a unit second coordinate")
        prod = R.mul(prod, p.u)
    if prod != r:
        raise ValueError("decomposition does not multiply to r")
    th, inv, mul, sub = R.theta, R.inv, R.mul, R.sub
    C = h_elem(R, r)
    steps = []  # (y, x, z) per i = 1..k
    for i in range(1, k + 1):
        z = _inverse_witness(witnesses[2 * (k - i) + 1])  # z2 = r_{2(k-i)+2}^-1
        y = witnesses[2 * (k - i)]  # y2 = r_{2(k-i)+1}
        zq, yq = mul(z.t, inv(z.u)), mul(y.t, inv(y.u))
        x1 = sub(yq, zq)
        x2 = sub(sub(inv(y.u), inv(z.u)), mul(zq, sub(th(yq), th(zq))))
        x = apair_make(R, x1, x2)
        A = C @ x_plus(z)
        B = A @ x_minus(x)
        C = B @ sigma_inverse(x_plus(y))
        steps.append((y, x, z))
    # The last C has first row (1, 0, 0); by U-B.2.3, U-B.1.1 and U-B.3.3 it is
    # then lower unitriangular, i.e. x_-(c) with c read off its first column.
    if C.rows[0] != (R.one, 0, 0):
        raise InternalError(f"torus recursion ended with first row {C.rows[0]}")
    c = apair_make(R, th(C[1, 0]), C[2, 0])
    if C != x_minus(c):
        raise InternalError("final matrix of the torus recursion is not in U-")
    factors = [("-", c)]
    for y, x, z in reversed(steps):
        factors += [("+", y), ("-", apair_inverse(x)), ("+", apair_inverse(z))]
    return merge_factors(factors)


def torus_unitri(R: InvolutiveRing, r: int, witnesses: list[APair], lead: str = "-") -> FactoredForm:
    """``h(r)`` as an alternating product of ``2(k+1)`` unipotents.

    ``witnesses`` are 𝒜*-pairs whose second coordinates multiply to r (as
    returned by :func:`conditions.decompose_unit`).  ``lead`` picks the
    ``(U- U+)`` shape or its ``w(1)``-mirror ``(U+ U-)``.
    """
    if lead == "-":
        factors = _torus_minus_first(R, r, witnesses)
    else:
        # h(r) = w h(conj(r)^-1) w, and conj(r)^-1 = prod conj(r_j)^-1.
        mirrored = [_inverse_witness(APair(R, R.theta(p.t), R.theta(p.u))) for p in witnesses]
        s = R.inv(R.theta(r))
        factors = [w_conj_factor(sg, p) for sg, p in _torus_minus_first(R, s, mirrored)]
    form = _form(R, factors)
    if form.product != h_elem(R, r):
        raise InternalError(f"torus factorization of {R.fmt(r)} is wrong")
    return form


def unitri_decompose(A: Mat, witnesses_for: Callable[[int], list[APair]], lead: str = "+",
                     solver=None, trim: bool = True) -> FactoredForm:
    """Headless alternating factorization of length at most ``2k+3``.

    Keeping the torus in the middle of the LDU lets both ends of its
    ``(U- U+)^(k+1)`` expansion merge with their neighbours:
    ``x_+ x_- . [- + ... - +] . x_+`` collapses to ``(+-)^(k+1)+``, and the
    row route gives the mirror ``(-+)^(k+1)-``.
    """
    require_su3(A)
    R = A.ring
    L = ldu_col(A, solver) if lead == "+" else ldu_row(A, solver)
    mid = torus_unitri(R, L.r, witnesses_for(L.r), lead="-")
    factors = merge_factors(list(L.left) + [(f.sign, f.param) for f in mid.factors] + list(L.right))
    if trim:
        factors = compact(factors)
    form = _form(R, factors)
    if form.product != A:
        raise InternalError(f"unitriangular form does not reproduce {A}")
    return form


def unitri_length_bound(k: int) -> int:
    return len(unitri_target(k))
