"""Twisted root systems of type 2A_{n-1} (n = 3, 4, 5), class generators in SU(n, R),
Levi splitting, rank-one base factorizations and the rank reduction loop."""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import conditions, su3
from .forms import Factor, FactoredForm, shape_within, unitri_target
from .matrices import (
    Mat,
    identity,
    is_lower_unitriangular,
    is_sigma_fixed,
    is_upper_unitriangular,
    sigma_inverse,
)
from .rings import APair, InvolutiveRing, apair_enumerate, is_admissible

SUPPORTED_N = (3, 4, 5)


# --- root system -----------------------------------------------------------------

Root = tuple[int, int]  # (i, j) stands for e_i - e_j, 1-based


def rho(n: int, a: Root) -> Root:
    """Index reversal ``e_i - e_j -> e_{n+1-j} - e_{n+1-i}``."""
    i, j = a
    return (n + 1 - j, n + 1 - i)


def _hat(n: int, a: Root) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * n
    for i, j in (a, rho(n, a)):
        v[i - 1] += Fraction(1, 2)
        v[j - 1] -= Fraction(1, 2)
    return tuple(v)


def _direction(v):
    lead = next(x for x in v if x)
    return tuple(x / abs(lead) for x in v)


@dataclass(frozen=True)
class RootClass:
    name: str
    sign: int
    type_tag: str  # "A1", "A1^2" or "A2"
    roots: tuple[Root, ...]  # for A2: (alpha, alpha-bar, alpha + alpha-bar)
    coords: tuple[int, ...]
    vector: tuple[Fraction, ...]

    @property
    def simple_index(self) -> int | None:
        """k when this class is plus or minus the k-th simple class (1-based)."""
        nz = [k for k, c in enumerate(self.coords) if c]
        if len(nz) == 1 and abs(self.coords[nz[0]]) == 1:
            return nz[0] + 1
        return None


@dataclass
class RootSystem:
    n: int
    classes: list[RootClass]  # positive classes first, then negatives
    simple: list[RootClass]

    @property
    def rank(self) -> int:
        return len(self.simple)

    def __getitem__(self, name: str) -> RootClass:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(f"no class {name!r} for n={self.n}; have {[c.name for c in self.classes]}")

    def negative(self, c: RootClass) -> RootClass:
        want = tuple(-m for m in c.coords)
        return next(d for d in self.classes if d.coords == want)

    def class_of_vector(self, v) -> RootClass | None:
        for c in self.classes:
            for a in c.roots:
                if _hat(self.n, a) == tuple(v):
                    return c
        return None


def _class_name(coords: tuple[int, ...]) -> str:
    parts = []
    for k, m in enumerate(coords, start=1):
        if m:
            parts.append(f"a{k}" if m == 1 else f"{m}a{k}")
    return "+".join(parts)


def _negative_name(name: str) -> str:
    return "-" + name if "+" not in name else f"-({name})"


@functools.lru_cache(maxsize=None)
def build_root_system(n: int) -> RootSystem:
    """Classes of A_{n-1} roots under index reversal, with simple-class coordinates.

    Roots are grouped by the direction of their averaged image ``(a + rho a)/2``.
    The coordinate of a class on the k-th simple class is the total coefficient,
    in any member root, of the simple roots belonging to that simple class.
    """
    if n not in SUPPORTED_N:
        raise ValueError(f"n must be one of {SUPPORTED_N}, got {n}")
    positive = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    groups: dict[tuple, list[Root]] = {}
    for a in positive:
        groups.setdefault(_direction(_hat(n, a)), []).append(a)
    simple_roots = [(k, k + 1) for k in range(1, n)]
    simple_groups = []
    for s in simple_roots:
        g = next(tuple(sorted(v)) for v in groups.values() if s in v)
        if g not in simple_groups:
            simple_groups.append(g)

    def coords(a: Root) -> tuple[int, ...]:
        i, j = a
        members = [(k, k + 1) for k in range(i, j)]
        return tuple(sum(1 for s in members if s in g) for g in simple_groups)

    pos_classes = []
    for members in groups.values():
        members = sorted(members)
        if len(members) == 1:
            tag, roots = "A1", (members[0],)
        elif len(members) == 2:
            tag, roots = "A1^2", (members[0], rho(n, members[0]))
        else:
            fixed = next(a for a in members if rho(n, a) == a)
            alpha = min(a for a in members if a != fixed)
            tag, roots = "A2", (alpha, rho(n, alpha), fixed)
        c = coords(roots[0])
        vec = _hat(n, roots[0])
        pos_classes.append(RootClass(_class_name(c), 1, tag, roots, c, vec))
    pos_classes.sort(key=lambda c: (sum(c.coords), c.coords))
    neg_classes = [
        RootClass(_negative_name(c.name), -1, c.type_tag, tuple((j, i) for i, j in c.roots),
                  tuple(-m for m in c.coords), tuple(-x for x in c.vector))
        for c in pos_classes
    ]
    simple = [c for c in pos_classes if c.simple_index is not None]
    simple.sort(key=lambda c: c.simple_index)
    return RootSystem(n, pos_classes + neg_classes, simple)


def _hat_signed(n: int, a: Root) -> tuple[Fraction, ...]:
    i, j = a
    if i < j:
        return _hat(n, a)
    return tuple(-x for x in _hat(n, (j, i)))


def twisted_vectors(rs: RootSystem) -> dict[tuple, RootClass]:
    """Every averaged root vector (positive and negative) mapped to its class."""
    out = {}
    for c in rs.classes:
        for a in c.roots:
            out[_hat_signed(rs.n, a)] = c
    return out


# --- closed sets and Levi data -----------------------------------------------------


def s_set(rs: RootSystem, i: int) -> list[RootClass]:
    return [c for c in rs.classes if c.coords[i - 1] >= 0]


def _sums(rs: RootSystem, a: RootClass, b: RootClass):
    """Classes reached by ``[a] + [b]`` and, for 2A_{even}, by the A1^2 half-sum."""
    vecs = twisted_vectors(rs)
    s = tuple(x + y for x, y in zip(a.vector, b.vector))
    out = []
    if s in vecs:
        out.append(vecs[s])
    if rs.n % 2 == 1 and a.type_tag == b.type_tag == "A1^2":
        h = tuple(x / 2 for x in s)
        if h in vecs:
            out.append(vecs[h])
    return out


def is_closed(rs: RootSystem, S: list[RootClass]) -> bool:
    names = {c.name for c in S}
    return all(c.name in names for a in S for b in S for c in _sums(rs, a, b))


def is_ideal(rs: RootSystem, I: list[RootClass], S: list[RootClass]) -> bool:
    inames, snames = {c.name for c in I}, {c.name for c in S}
    for a in I:
        for b in S:
            for c in _sums(rs, a, b):
                if c.name in snames and c.name not in inames:
                    return False
    return True


@dataclass
class LeviSplit:
    n: int
    i: int
    phi: list[RootClass]
    sigma: list[RootClass]
    blocks: list[list[int]]  # 0-based index blocks of the Levi subgroup

    def block_of(self, k: int) -> int:
        return next(b for b, blk in enumerate(self.blocks) if k in blk)


@functools.lru_cache(maxsize=None)
def levi_split(n: int, i: int) -> LeviSplit:
    rs = build_root_system(n)
    S = s_set(rs, i)
    phi = [c for c in S if c.coords[i - 1] == 0]
    sigma = [c for c in S if c.coords[i - 1] > 0]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for c in phi:
        for a, b in c.roots:
            parent[find(a - 1)] = find(b - 1)
    blocks: dict[int, list[int]] = {}
    for k in range(n):
        blocks.setdefault(find(k), []).append(k)
    return LeviSplit(n, i, phi, sigma, sorted(blocks.values()))


def pivot_for(rs: RootSystem, cls: RootClass) -> int:
    """The end node i in {1, rank} whose Levi contains ``cls`` (i = 1 on ties)."""
    for i in (1, rs.rank):
        if cls.coords[i - 1] == 0:
            return i
    raise ValueError(f"class {cls.name} lies in neither end-node Levi subgroup")


# --- class generators ------------------------------------------------------------------

# Structure signs, solved once by :func:`solve_signs` (sigma-fixedness plus the
# group law for the class) over gf(9), where +1 and -1 differ.  Keyed by
# (n, class name); the tuple lists the coefficient of each template slot.
FROZEN_SIGNS: dict[tuple[int, str], tuple[int, ...]] = {
    (3, "a1"): (1, 1),
    (3, "-a1"): (1, 1, 1),
    (4, "a1"): (1,),
    (4, "a2"): (1,),
    (4, "a1+a2"): (-1,),
    (4, "2a1+a2"): (1,),
    (4, "-a1"): (1,),
    (4, "-a2"): (1,),
    (4, "-(a1+a2)"): (-1,),
    (4, "-(2a1+a2)"): (1,),
    (5, "a1"): (1,),
    (5, "a2"): (1, 1),
    (5, "a1+a2"): (-1, -1),
    (5, "a1+2a2"): (1,),
    (5, "-a1"): (1,),
    (5, "-a2"): (1, 1, 1),
    (5, "-(a1+a2)"): (1, -1, -1),
    (5, "-(a1+2a2)"): (1,),
}


def _template(cls: RootClass, signs, R: InvolutiveRing, param) -> dict[tuple[int, int], int]:
    """Off-diagonal entries (0-based) of the class generator."""
    sg = lambda s, x: x if s == 1 else R.neg(x)
    th = R.theta
    if cls.type_tag == "A1":
        ((i, j),) = cls.roots
        return {(i - 1, j - 1): sg(signs[0], param)}
    if cls.type_tag == "A1^2":
        (i, j), (k, l) = cls.roots
        return {(i - 1, j - 1): param, (k - 1, l - 1): sg(signs[0], th(param))}
    t, u = param
    (a, b), (c, d), (e, f) = cls.roots
    if cls.sign > 0:
        # t at alpha, conj(t) at alpha-bar, u at alpha + alpha-bar
        return {(a - 1, b - 1): t, (c - 1, d - 1): sg(signs[0], th(t)), (e - 1, f - 1): sg(signs[1], u)}
    # negatives mirror x_minus: conj(t) at -alpha, t at -alpha-bar
    return {(a - 1, b - 1): sg(signs[0], th(t)), (c - 1, d - 1): sg(signs[1], t), (e - 1, f - 1): sg(signs[2], u)}


def _n_signs(cls: RootClass) -> int:
    if cls.type_tag == "A2":
        return 2 if cls.sign > 0 else 3
    return 1


def _raw_generator(R: InvolutiveRing, n: int, cls: RootClass, signs, param) -> Mat:
    rows = [[R.one if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), v in _template(cls, signs, R, param).items():
        rows[i][j] = v
    return Mat(R, rows)


def param_domain(R: InvolutiveRing, cls: RootClass) -> list:
    if cls.type_tag == "A1":
        return [x for x in R.elements() if R.theta(x) == x]
    if cls.type_tag == "A1^2":
        return list(R.elements())
    return apair_enumerate(R)


def _law_holds(R: InvolutiveRing, n: int, cls: RootClass, signs) -> bool:
    dom = param_domain(R, cls)
    mats = {p if cls.type_tag != "A2" else (p.t, p.u): _raw_generator(R, n, cls, signs, p) for p in dom}
    for p in dom:
        if not is_sigma_fixed(mats[p if cls.type_tag != "A2" else (p.t, p.u)]):
            return False
    for p, q in itertools.product(dom, repeat=2):
        if cls.type_tag == "A2":
            # x(p) x(q) = x(q + p), the orientation of the SU(3) matrices
            s = (R.add(q.t, p.t), R.add(R.add(q.u, p.u), R.mul(R.theta(q.t), p.t)))
            lhs = mats[(p.t, p.u)] @ mats[(q.t, q.u)]
            if lhs != mats[s]:
                return False
        else:
            if mats[p] @ mats[q] != mats[R.add(p, q)]:
                return False
    return True


def solve_signs(n: int, name: str, ring_spec: str = "gf(9)") -> tuple[int, ...]:
    """First sign vector (all +1 first) making the class generator sigma-fixed and lawful."""
    from .rings import ring_parse

    R = ring_parse(ring_spec)
    cls = build_root_system(n)[name]
    for signs in itertools.product((1, -1), repeat=_n_signs(cls)):
        if _law_holds(R, n, cls, signs):
            return signs
    raise AssertionError(f"no sign choice realizes class {name} for n={n}")


def signs_for(n: int, cls: RootClass) -> tuple[int, ...]:
    key = (n, cls.name)
    if key not in FROZEN_SIGNS:
        raise KeyError(f"no frozen structure signs for {key}")
    return FROZEN_SIGNS[key]


def check_param(R: InvolutiveRing, cls: RootClass, param) -> None:
    if cls.type_tag == "A1":
        if R.theta(param) != param:
            raise ValueError(f"class {cls.name} needs a parameter fixed by the involution")
    elif cls.type_tag == "A2":
        if not isinstance(param, APair) or not is_admissible(R, param.t, param.u):
            raise ValueError(f"class {cls.name} needs an admissible pair")


def class_generator(R: InvolutiveRing, n: int, cls: RootClass | str, param) -> Mat:
    """``x_[alpha](param)`` in SU(n, R)."""
    rs = build_root_system(n)
    cls = rs[cls] if isinstance(cls, str) else cls
    check_param(R, cls, param)
    return _raw_generator(R, n, cls, signs_for(n, cls), param)


def zero_param(R: InvolutiveRing, cls: RootClass):
    return APair(R, 0, 0) if cls.type_tag == "A2" else 0


# --- words -----------------------------------------------------------------------------------


@dataclass
class GeneratorWord:
    ring: InvolutiveRing
    n: int
    letters: list[tuple[RootClass, object]] = field(default_factory=list)


def word_eval(word: GeneratorWord) -> Mat:
    M = identity(word.ring, word.n)
    for cls, p in word.letters:
        M = M @ class_generator(word.ring, word.n, cls, p)
    return M


def random_param(R: InvolutiveRing, cls: RootClass, rng: random.Random):
    dom = _domain_cached(R, cls.type_tag)
    return rng.choice(dom)


@functools.lru_cache(maxsize=64)
def _domain_cached(R: InvolutiveRing, tag: str):
    if tag == "A1":
        return tuple(x for x in R.elements() if R.theta(x) == x)
    if tag == "A1^2":
        return tuple(R.elements())
    return tuple(apair_enumerate(R))


def random_word(R: InvolutiveRing, n: int, length: int, rng: random.Random) -> GeneratorWord:
    """Letters drawn uniformly from the simple classes and their negatives."""
    rs = build_root_system(n)
    pool = rs.simple + [rs.negative(c) for c in rs.simple]
    letters = []
    for _ in range(length):
        cls = rng.choice(pool)
        letters.append((cls, random_param(R, cls, rng)))
    return GeneratorWord(R, n, letters)


# --- Levi split of unipotents ------------------------------------------------------------------


class NotUnitriangular(ValueError):
    pass


def _block_diagonal(M: Mat, split: LeviSplit) -> Mat:
    R = M.ring
    rows = [[0] * M.n for _ in range(M.n)]
    for blk in split.blocks:
        for a in blk:
            for b in blk:
                rows[a][b] = M.rows[a][b]
    return Mat(R, rows)


def levi_split_word(U: Mat, split: LeviSplit) -> tuple[Mat, Mat]:
    """``U = phi_part * sigma_part`` with phi in the Levi and sigma in the radical."""
    if not (is_upper_unitriangular(U) or is_lower_unitriangular(U)):
        raise NotUnitriangular("input is not unitriangular")
    phi = _block_diagonal(U, split)
    return phi, sigma_inverse(phi) @ U


# --- rank-one base factorizations -----------------------------------------------------------------


class BaseSolverError(ValueError):
    pass


def _sr1(R: InvolutiveRing, S, a: int, b: int) -> int:
    for z in S:
        if R.is_unit(R.add(a, R.mul(b, z))):
            return z
    raise BaseSolverError(f"SR1 fails for ({R.fmt(a)}, {R.fmt(b)}) over the parameter ring")


def sl2_unitri(R: InvolutiveRing, S, g) -> list[tuple[str, int]]:
    """``[[a,b],[c,d]] = x+(-tau) x-(m21) x+(m12) x-(-s)`` with SR1 for (c, d)."""
    (a, b), (c, d) = g
    s = _sr1(R, S, c, d)
    v = R.add(c, R.mul(d, s))
    n11 = R.add(a, R.mul(b, s))
    tau = R.div(R.sub(R.one, n11), v)
    m12 = R.add(b, R.mul(tau, d))
    return [("+", R.neg(tau)), ("-", v), ("+", m12), ("-", R.neg(s))]


def sl2_tri(R: InvolutiveRing, S, g) -> tuple[int, list[tuple[str, int]]]:
    """``[[a,b],[c,d]] = diag(lam, lam^-1) x+(p) x-(q) x+(-s)`` with SR1 for (d, c)."""
    (a, b), (c, d) = g
    s = _sr1(R, S, d, c)
    v = R.add(d, R.mul(c, s))
    n12 = R.add(R.mul(a, s), b)
    return R.inv(v), [("+", R.mul(v, n12)), ("-", R.div(c, v)), ("+", R.neg(s))]


def _levi_torus(R: InvolutiveRing, n: int, cls: RootClass, lam: int) -> Mat:
    """``h(lam) = w(lam) w(-1)`` with ``w(t) = x(t) x_-(-t^-1) x(t)``."""
    rs = build_root_system(n)
    neg = rs.negative(cls)

    def w(t):
        x = class_generator(R, n, cls, t)
        return x @ class_generator(R, n, neg, R.neg(R.inv(t))) @ x

    return w(lam) @ w(R.neg(R.one))


def _pad(factors: list[Factor], target: str, R: InvolutiveRing, n: int) -> list[Factor]:
    """Insert identity factors so the sign word becomes exactly ``target``."""
    word = "".join(f.sign for f in factors)
    if not shape_within(word, target):
        raise AssertionError(f"shape {word} does not fit {target}")
    out, k = [], 0
    for sign in target:
        if k < len(factors) and factors[k].sign == sign:
            out.append(factors[k])
            k += 1
        else:
            out.append(Factor(sign, identity(R, n), None))
    return out


def _block(M: Mat, idx) -> list[list[int]]:
    return [[M.rows[a][b] for b in idx] for a in idx]


def _embed(R: InvolutiveRing, n: int, B: Mat, idx) -> Mat:
    rows = [[R.one if i == j else 0 for j in range(n)] for i in range(n)]
    for x, a in enumerate(idx):
        for y, b in enumerate(idx):
            rows[a][b] = B.rows[x][y]
    return Mat(R, rows)


@functools.lru_cache(maxsize=32)
def certificate(R: InvolutiveRing) -> conditions.ClengthCertificate:
    return conditions.c_length(R)


def base_factor(M: Mat, cls: RootClass, mode: str, target: str) -> tuple[Mat | None, list[Factor]]:
    """Factor a Levi element of the class ``cls`` into the target sign word.

    A1 and A1^2 Levis use the SL2 block of the class's first root (SR1 over
    the fixed subring for A1, over R for A1^2); A2 Levis are SU(3) blocks and
    go through the Gauss and unitriangular constructions.
    Returns ``(head, factors)``; the head is None in unitriangular mode.
    """
    R, n = M.ring, M.n
    rs = build_root_system(n)
    if cls.sign < 0:
        cls = rs.negative(cls)
    if cls.type_tag == "A2":
        idx = sorted({k - 1 for a in cls.roots for k in a})
        B = Mat(R, _block(M, idx))
        if mode == "tri":
            form = su3.gauss_decompose(B, "col+")
            head = _embed(R, n, form.head, idx)
        else:
            cert = certificate(R)
            form = su3.unitri_decompose(B, conditions.witnesses_for(R, cert), "+", trim=False)
            head = None
        factors = [Factor(f.sign, _embed(R, n, f.mat, idx), f.param) for f in form.factors]
    else:
        (i, j) = cls.roots[0]
        g = _block(M, [i - 1, j - 1])
        S = _domain_cached(R, cls.type_tag)
        neg = rs.negative(cls)
        lift = lambda s, t: Factor(s, class_generator(R, n, cls if s == "+" else neg, t), t)
        if mode == "tri":
            lam, ops = sl2_tri(R, S, g)
            head = _levi_torus(R, n, cls, lam)
        else:
            ops = sl2_unitri(R, S, g)
            head = None
        factors = [lift(s, t) for s, t in ops]
    product = head if head is not None else identity(R, n)
    for f in factors:
        product = product @ f.mat
    if product != M:
        raise su3.InternalError(f"base factorization of the {cls.name} Levi element is wrong")
    return head, _pad(factors, target, R, n)


# --- rank reduction ----------------------------------------------------------------------------


def target_shape(n: int, mode: str, k: int = 1) -> str:
    if mode == "tri":
        return "+-+"
    if n == 4:
        return "+-+-"
    return unitri_target(k)


def _prod(mats, R, n) -> Mat:
    out = identity(R, n)
    for m in mats:
        out = out @ m
    return out


def _check(M: Mat, what: str):
    if not is_sigma_fixed(M):
        raise su3.InternalError(f"{what} is not sigma-fixed")


def trim_factors(factors: list[Factor]) -> list[Factor]:
    """Drop identity factors and multiply together neighbours of equal sign."""
    out: list[Factor] = []
    for f in factors:
        if f.mat.is_identity():
            continue
        if out and out[-1].sign == f.sign:
            merged = out[-1].mat @ f.mat
            out.pop()
            if not merged.is_identity():
                out.append(Factor(f.sign, merged, None))
        else:
            out.append(f)
    return out if len(out) == len(factors) else trim_factors(out)


def tavgen_factor(word: GeneratorWord, mode: str = "unitri", check: bool = False,
                  trim: bool = True) -> FactoredForm:
    """Factor the product of ``word`` into the target shape, one letter at a time.

    Letters are absorbed right to left.  For a letter in the Levi of end node
    i, every factor splits as (Levi part)(radical part); the radical parts are
    conjugated to the right, the letter times the Levi parts is refactored in
    the Levi, and the radical parts are conjugated back in.  In triangular
    mode the torus head is moved past the letter first.  With ``trim`` the
    padded identity factors are removed at the end, so the shape is a
    subsequence of the target.
    """
    if mode not in ("tri", "unitri"):
        raise ValueError("mode must be 'tri' or 'unitri'")
    R, n = word.ring, word.n
    rs = build_root_system(n)
    if n == 3:
        M = word_eval(word)
        if mode == "tri":
            form = su3.gauss_decompose(M, "col+")
            return su3.compact_form(form, keep_head=True) if trim else form
        cert = certificate(R)
        return su3.unitri_decompose(M, conditions.witnesses_for(R, cert), "+", trim=trim)
    k = certificate(R).k if (mode == "unitri" and n == 5) else 1
    target = target_shape(n, mode, k)
    I = identity(R, n)
    head = I if mode == "tri" else None
    factors = [Factor(s, I, None) for s in target]
    for cls, p in reversed(word.letters):
        if cls.simple_index is None:
            raise ValueError(f"letter class {cls.name} is not a simple class or its negative")
        x = class_generator(R, n, cls, p)
        if head is not None:
            x = sigma_inverse(head) @ x @ head
        split = levi_split(n, pivot_for(rs, cls))
        P, Q = zip(*(levi_split_word(f.mat, split) for f in factors))
        L = len(P)
        suffix = [I] * (L + 1)
        for j in range(L - 1, -1, -1):
            suffix[j] = P[j] @ suffix[j + 1]
        Qp = [sigma_inverse(suffix[j + 1]) @ Q[j] @ suffix[j + 1] for j in range(L)]
        levi_elem = x @ suffix[0]
        h, new_p = base_factor(levi_elem, cls, mode, target)
        new_suffix = [I] * (L + 1)
        for j in range(L - 1, -1, -1):
            new_suffix[j] = new_p[j].mat @ new_suffix[j + 1]
        new = []
        for j in range(L):
            Qpp = new_suffix[j + 1] @ Qp[j] @ sigma_inverse(new_suffix[j + 1])
            F = new_p[j].mat @ Qpp
            if check:
                for M, what in ((Qp[j], "pushed radical part"), (Qpp, "re-inserted radical part"), (F, "factor")):
                    _check(M, what)
            new.append(Factor(target[j], F, None))
        factors = new
        if h is not None:
            head = head @ h
            if check:
                _check(head, "torus head")
    if trim:
        factors = trim_factors(factors)
    return FactoredForm(R, n, factors, head, None)


def shape_ok(form: FactoredForm, n: int, mode: str, k: int = 1) -> bool:
    if form.head is not None and mode == "unitri":
        return False
    signs_ok = all(
        (is_upper_unitriangular(f.mat) if f.sign == "+" else is_lower_unitriangular(f.mat))
        for f in form.factors
    )
    return signs_ok and shape_within(form.shape, target_shape(n, mode, k))
