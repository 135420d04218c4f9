"""Symbolic algebra of pointed spaces up to homotopy.

Expressions are built from eleven constructors: Point, Sphere(d), named Atom,
Wedge, Prod, Smash, Susp, Loop, Join, HalfSmash (the right half-smash
X x Y / (* x Y)) and Cone. normalize() rewrites to a canonical form using only
homotopy-valid rules:

  - Wedge, Prod, Smash flatten and sort; Point is the unit of Wedge and Prod
    and absorbs Smash; Cone(X) and anything contracted collapses to Point.
  - Smash merges sphere factors: S^a ^ S^b = S^(a+b).
  - Susp(Sphere d) = Sphere(d+1); suspension distributes over Wedge; over a
    finite product it splits as the wedge of suspended smashes of all
    nonempty subsets of the factors.
  - Join(X, Y) = Susp(Smash(X, Y)).
  - Loop(Point) = Point and Loop distributes over Prod.
  - HalfSmash(C, B) = Wedge(C, Smash(C', Susp B)) whenever C is recognised as
    a suspension C = Susp(C'); S^1 counts, with smash factor Susp(B) alone.

Two structural certificates drive everything quantitative. A(e) =
wedge_of_spheres_min_dim(e) certifies "e is homotopy equivalent to a wedge of
spheres" and returns the least sphere dimension (inf for a contractible e);
B(e) = susp_wedge_min_dim(e) certifies the same for Susp(e). B covers loops
via the James splitting Susp(Loop(W)) = wedge of Susp(smash powers of the
desuspension of W), valid when A(W) >= 2.

Poincare series are computed exactly and structurally: a Loop factor inverts
1 - red(W)(t)/t, with the inner reduced series computed at one extra degree of
precision per nesting level, so truncated sphere enumeration never pollutes
series coefficients.

String form is an s-expression, for example (wedge (sphere 3) (loop (sphere
2))); a JSON mirror {"op": ..., "args": [...]} carries the same tree.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import CeilingExceededError, InvalidParameters, SeriesDomainError
from .series import TruncSeries, _invert, _mul

INF = math.inf


class SpaceExpr:
    """Base class; every node is a frozen dataclass below."""

    __slots__ = ()


@dataclass(frozen=True)
class Point(SpaceExpr):
    pass


@dataclass(frozen=True)
class Sphere(SpaceExpr):
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidParameters("sphere dimension must be at least 1")


@dataclass(frozen=True)
class Atom(SpaceExpr):
    """Opaque named space. Optional finite reduced homology polynomial, and
    an optional reduced polynomial for its loop space, both as sorted
    ((degree, coeff), ...) tuples with degrees >= 1."""

    name: str
    reduced: tuple[tuple[int, int], ...] | None = field(default=None)
    loop_reduced: tuple[tuple[int, int], ...] | None = field(default=None)

    def __post_init__(self) -> None:
        if not self.name or '"' in self.name:
            raise InvalidParameters("atom names must be nonempty and quote-free")
        for poly in (self.reduced, self.loop_reduced):
            if poly is None:
                continue
            if any(d < 1 for d, _ in poly) or list(poly) != sorted(poly):
                raise InvalidParameters("declared polynomials: sorted pairs with degrees >= 1")


@dataclass(frozen=True)
class Wedge(SpaceExpr):
    args: tuple[SpaceExpr, ...]


@dataclass(frozen=True)
class Prod(SpaceExpr):
    args: tuple[SpaceExpr, ...]


@dataclass(frozen=True)
class Smash(SpaceExpr):
    args: tuple[SpaceExpr, ...]


@dataclass(frozen=True)
class Susp(SpaceExpr):
    arg: SpaceExpr


@dataclass(frozen=True)
class Loop(SpaceExpr):
    arg: SpaceExpr


@dataclass(frozen=True)
class Join(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class HalfSmash(SpaceExpr):
    """Right half-smash: left x right collapsed along basepoint x right."""

    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Cone(SpaceExpr):
    arg: SpaceExpr


POINT = Point()

_TAG = {
    Point: 0,
    Sphere: 1,
    Atom: 2,
    Wedge: 3,
    Prod: 4,
    Smash: 5,
    Susp: 6,
    Loop: 7,
    Join: 8,
    HalfSmash: 9,
    Cone: 10,
}


def sort_key(e: SpaceExpr):
    t = _TAG[type(e)]
    if isinstance(e, Point):
        return (t, ())
    if isinstance(e, Sphere):
        return (t, (e.d,))
    if isinstance(e, Atom):
        return (t, (e.name, e.reduced or (), e.loop_reduced or ()))
    if isinstance(e, (Wedge, Prod, Smash)):
        return (t, tuple(sort_key(a) for a in e.args))
    if isinstance(e, (Susp, Loop, Cone)):
        return (t, (sort_key(e.arg),))
    return (t, (sort_key(e.left), sort_key(e.right)))


def atom(name: str, reduced=None, loop_reduced=None) -> Atom:
    """Atom constructor accepting {degree: coeff} mappings."""

    def conv(p):
        if p is None:
            return None
        return tuple(sorted((int(d), int(c)) for d, c in dict(p).items() if c))

    return Atom(name, conv(reduced), conv(loop_reduced))


def cp_infinity() -> Atom:
    """Infinite complex projective space: its loop space is a circle."""
    return atom("CP_infinity", loop_reduced={1: 1})


def desuspend(e: SpaceExpr) -> SpaceExpr | None:
    """Structural desuspension, or None. S^1 deliberately returns None; the
    half-smash rule special-cases it because S^0 is not in the algebra. A
    smash desuspends through any one desuspendable factor, since
    Smash(Susp(a), b) = Susp(Smash(a, b))."""
    if isinstance(e, Point):
        return e
    if isinstance(e, Sphere) and e.d >= 2:
        return Sphere(e.d - 1)
    if isinstance(e, Susp):
        return e.arg
    if isinstance(e, Wedge):
        parts = [desuspend(a) for a in e.args]
        if all(p is not None for p in parts):
            return Wedge(tuple(parts))
    if isinstance(e, Smash):
        for i, a in enumerate(e.args):
            if a == Sphere(1):
                rest = e.args[:i] + e.args[i + 1 :]
                return rest[0] if len(rest) == 1 else Smash(rest)
            down = desuspend(a)
            if down is not None and not isinstance(down, Point):
                args = list(e.args)
                args[i] = down
                return Smash(tuple(args))
    return None


def _rw(e: SpaceExpr) -> SpaceExpr:
    """One bottom-up rewrite pass."""
    if isinstance(e, (Point, Sphere, Atom)):
        return e
    if isinstance(e, (Wedge, Prod)):
        cls = type(e)
        args = []
        for a in e.args:
            a = _rw(a)
            if isinstance(a, cls):
                args.extend(a.args)
            elif not isinstance(a, Point):
                args.append(a)
        if not args:
            return POINT
        if len(args) == 1:
            return args[0]
        return cls(tuple(sorted(args, key=sort_key)))
    if isinstance(e, Smash):
        args = []
        for a in e.args:
            a = _rw(a)
            if isinstance(a, Point):
                return POINT
            if isinstance(a, Smash):
                args.extend(a.args)
            else:
                args.append(a)
        sph = sum(a.d for a in args if isinstance(a, Sphere))
        if sph:
            args = [Sphere(sph)] + [a for a in args if not isinstance(a, Sphere)]
        if not args:
            return POINT
        if len(args) == 1:
            return args[0]
        return Smash(tuple(sorted(args, key=sort_key)))
    if isinstance(e, Susp):
        a = _rw(e.arg)
        if isinstance(a, Point):
            return POINT
        if isinstance(a, Sphere):
            return Sphere(a.d + 1)
        if isinstance(a, Wedge):
            return Wedge(tuple(Susp(x) for x in a.args))
        if isinstance(a, Prod):
            parts = []
            for r in range(1, len(a.args) + 1):
                for sub in itertools.combinations(a.args, r):
                    inner = sub[0] if len(sub) == 1 else Smash(sub)
                    parts.append(Susp(inner))
            return Wedge(tuple(parts))
        return Susp(a)
    if isinstance(e, Loop):
        a = _rw(e.arg)
        if isinstance(a, Point):
            return POINT
        if isinstance(a, Prod):
            return Prod(tuple(Loop(f) for f in a.args))
        return Loop(a)
    if isinstance(e, Join):
        return Susp(Smash((_rw(e.left), _rw(e.right))))
    if isinstance(e, Cone):
        return POINT
    if isinstance(e, HalfSmash):
        a, b = _rw(e.left), _rw(e.right)
        if isinstance(a, Point):
            return POINT
        if isinstance(b, Point):
            return a
        if a == Sphere(1):
            return Wedge((a, Susp(b)))
        down = desuspend(a)
        if down is not None:
            return Wedge((a, Smash((down, Susp(b)))))
        return HalfSmash(a, b)
    raise InvalidParameters(f"unknown expression node {type(e).__name__}")


def normalize(e: SpaceExpr) -> SpaceExpr:
    """Rewrite to the canonical fixpoint. Idempotent."""
    for _ in range(200):
        nxt = _rw(e)
        if nxt == e:
            return e
        e = nxt
    raise AssertionError("normalization failed to stabilise")


def wedge_of_spheres_min_dim(e: SpaceExpr):
    """A(e): least sphere dimension when e is certified to be a wedge of
    spheres, inf when e is certified contractible, None when uncertified."""
    if isinstance(e, (Point, Cone)):
        return INF
    if isinstance(e, Sphere):
        return e.d
    if isinstance(e, Wedge):
        vals = [wedge_of_spheres_min_dim(a) for a in e.args]
        if any(v is None for v in vals):
            return None
        return min(vals, default=INF)
    if isinstance(e, Smash):
        vals = [wedge_of_spheres_min_dim(a) for a in e.args]
        if any(v is None for v in vals):
            return None
        return sum(vals)
    if isinstance(e, Susp):
        return susp_wedge_min_dim(e.arg)
    if isinstance(e, Join):
        return susp_wedge_min_dim(Smash((e.left, e.right)))
    if isinstance(e, HalfSmash):
        a = wedge_of_spheres_min_dim(e.left)
        if a is None:
            return None
        if a == INF:
            return INF
        b = susp_wedge_min_dim(e.right)
        if b is None:
            return None
        return min(a, a - 1 + b)
    return None


def susp_wedge_min_dim(e: SpaceExpr):
    """B(e) = A(Susp(e)). Covers loops by the James splitting and products by
    the suspension splitting over nonempty subsets of the factors."""
    if isinstance(e, (Point, Cone)):
        return INF
    if isinstance(e, Sphere):
        return e.d + 1
    if isinstance(e, Wedge):
        vals = [susp_wedge_min_dim(a) for a in e.args]
        if any(v is None for v in vals):
            return None
        return min(vals, default=INF)
    if isinstance(e, Prod):
        vals = [susp_wedge_min_dim(a) for a in e.args]
        if any(v is None for v in vals):
            return None
        finite = [v for v in vals if v != INF]
        return min(finite) if finite else INF
    if isinstance(e, Smash):
        vals = [susp_wedge_min_dim(a) for a in e.args]
        if any(v is None for v in vals):
            return None
        if any(v == INF for v in vals):
            return INF
        return 1 + sum(v - 1 for v in vals)
    if isinstance(e, Susp):
        v = susp_wedge_min_dim(e.arg)
        return None if v is None else (INF if v == INF else v + 1)
    if isinstance(e, Loop):
        if isinstance(e.arg, Prod):
            return susp_wedge_min_dim(Prod(tuple(Loop(f) for f in e.arg.args)))
        a = wedge_of_spheres_min_dim(e.arg)
        if a is None or a == 1:
            return None
        return a
    if isinstance(e, Join):
        v = susp_wedge_min_dim(Smash((e.left, e.right)))
        return None if v is None else (INF if v == INF else v + 1)
    if isinstance(e, HalfSmash):
        va = susp_wedge_min_dim(e.left)
        vs = susp_wedge_min_dim(Smash((e.left, e.right)))
        if va is None or vs is None:
            return None
        return min(va, vs)
    return None


def _poly_of(pairs: tuple[tuple[int, int], ...], n: int) -> list[int]:
    out = [0] * (n + 1)
    for d, c in pairs:
        if d <= n:
            out[d] += c
    return out


def _runs(args: tuple) -> list[tuple[SpaceExpr, int]]:
    """Consecutive equal arguments collapsed to (value, count) runs.

    Grouping by identity first keeps this linear with a tiny constant on the
    huge repeated-factor products that a low-dimensional loop expansion
    produces; an equality check then merges equal but distinct neighbours."""
    out: list[tuple[SpaceExpr, int]] = []
    for _, grp in itertools.groupby(args, key=id):
        block = list(grp)
        a = block[0]
        if out and out[-1][0] == a:
            out[-1] = (a, out[-1][1] + len(block))
        else:
            out.append((a, len(block)))
    return out


def _pow(base: list[int], k: int, n: int) -> list[int]:
    """base**k through degree n by binary exponentiation."""
    out = [1] + [0] * n
    b = base
    while k:
        if k & 1:
            out = _mul(out, b, n)
        k >>= 1
        if k:
            b = _mul(b, b, n)
    return out


def _red(e: SpaceExpr, n: int) -> list[int]:
    """Reduced Poincare polynomial of e through degree n, exact."""
    if isinstance(e, (Point, Cone)):
        return [0] * (n + 1)
    if isinstance(e, Sphere):
        return [0] * (n + 1) if e.d > n else [0] * e.d + [1] + [0] * (n - e.d)
    if isinstance(e, Atom):
        if e.reduced is None:
            raise SeriesDomainError(f"atom '{e.name}' has no declared homology")
        return _poly_of(e.reduced, n)
    if isinstance(e, Wedge):
        out = [0] * (n + 1)
        for a, c in _runs(e.args):
            out = [x + c * y for x, y in zip(out, _red(a, n))]
        return out
    if isinstance(e, Prod):
        out = [1] + [0] * n
        for a, c in _runs(e.args):
            r = _red(a, n)
            r[0] += 1
            out = _mul(out, r if c == 1 else _pow(r, c, n), n)
        out[0] -= 1
        return out
    if isinstance(e, Smash):
        out = None
        for a, c in _runs(e.args):
            r = _red(a, n)
            if c > 1:
                r = _pow(r, c, n)
            out = r if out is None else _mul(out, r, n)
        return out if out is not None else [0] * (n + 1)
    if isinstance(e, Susp):
        return [0] + _red(e.arg, n)[:n]
    if isinstance(e, Join):
        return [0] + _mul(_red(e.left, n), _red(e.right, n), n)[:n]
    if isinstance(e, HalfSmash):
        if wedge_of_spheres_min_dim(e.left) is None and desuspend(e.left) is None:
            raise SeriesDomainError("half-smash series needs a suspension on the left")
        ra, rb = _red(e.left, n), _red(e.right, n)
        rb[0] += 1
        return _mul(ra, rb, n)
    if isinstance(e, Loop):
        w = e.arg
        if isinstance(w, Point):
            return [0] * (n + 1)
        if isinstance(w, Prod):
            return _red(Prod(tuple(Loop(f) for f in w.args)), n)
        if isinstance(w, Atom) and w.loop_reduced is not None:
            return _poly_of(w.loop_reduced, n)
        a = wedge_of_spheres_min_dim(w)
        if a is None or a < 2:
            raise SeriesDomainError(
                "loop series requires a simply connected wedge of spheres "
                "(or a product of such loops, or an atom with declared loop homology)"
            )
        if a == INF:
            return [0] * (n + 1)
        rw = _red(w, n + 1)
        if rw[0] != 0 or rw[1] != 0:
            raise SeriesDomainError("certified loop target has unexpected low-degree homology")
        den = [1] + [-rw[k + 1] for k in range(1, n + 1)]
        full = _invert(den, n)
        full[0] -= 1
        return full
    raise SeriesDomainError(f"no series rule for {type(e).__name__}")


def poincare_series(e: SpaceExpr, n: int) -> TruncSeries:
    """Exact Poincare series of e through degree n (constant term 1).

    Works on the raw expression: every series rule in _red is defined on
    unnormalized terms, so normalize() never changes the answer (a fact the
    test suite checks rather than assumes), and skipping it keeps very large
    products cheap."""
    if n < 0:
        raise InvalidParameters("series order must be nonnegative")
    red = _red(e, n)
    if red[0] != 0:
        raise SeriesDomainError("expression has reduced homology in degree 0")
    return TruncSeries(n, tuple([1] + red[1:]))


@dataclass(frozen=True)
class SphereMultiset:
    """Multiset of sphere dimensions. Entries above max_dim are unknown when
    truncated is set, not zero; max_dim None means the multiset is exact."""

    counts: dict[int, int]
    max_dim: int | None
    truncated: bool

    def __post_init__(self) -> None:
        for d, c in self.counts.items():
            if d < 1 or c < 1:
                raise InvalidParameters("sphere multiset entries must be positive")
            if self.max_dim is not None and d > self.max_dim:
                raise InvalidParameters("sphere dimension above the declared ceiling")

    def to_json_obj(self) -> dict:
        return {
            "counts": {str(d): c for d, c in sorted(self.counts.items())},
            "max_dim": self.max_dim,
            "truncated": self.truncated,
        }


def _convolve(a: dict[int, int], b: dict[int, int], ceiling: int) -> tuple[dict[int, int], bool]:
    out: Counter = Counter()
    dropped = False
    for da, ca in a.items():
        for db, cb in b.items():
            if da + db <= ceiling:
                out[da + db] += ca * cb
            else:
                dropped = True
    return dict(out), dropped


def _james_counts(wcounts: dict[int, int], ceiling: int) -> dict[int, int]:
    """Suspended smash powers of the desuspension of a sphere wedge with
    reduced content `wcounts` (dims >= 2), collected up to the ceiling."""
    base = {d - 1: c for d, c in wcounts.items()}
    out: Counter = Counter()
    power = dict(base)
    while power:
        for d, c in power.items():
            if d + 1 <= ceiling:
                out[d + 1] += c
        power, _ = _convolve(power, base, ceiling - 1)
    return dict(out)


def _to_spheres(e: SpaceExpr, ceiling: int) -> tuple[dict[int, int], bool]:
    if isinstance(e, (Point, Cone)):
        return {}, False
    if isinstance(e, Sphere):
        return ({e.d: 1}, False) if e.d <= ceiling else ({}, True)
    if isinstance(e, Wedge):
        out: Counter = Counter()
        trunc = False
        for a in e.args:
            c, t = _to_spheres(a, ceiling)
            out.update(c)
            trunc = trunc or t
        return dict(out), trunc
    if isinstance(e, Smash):
        parts = [_to_spheres(a, ceiling) for a in e.args]
        if any(not c and not t for c, t in parts):
            return {}, False
        acc, trunc = {0: 1}, any(t for _, t in parts)
        for c, _ in parts:
            acc, dropped = _convolve(acc, c, ceiling)
            trunc = trunc or dropped
        return acc, trunc
    if isinstance(e, Join):
        return _to_spheres(Susp(Smash((e.left, e.right))), ceiling)
    if isinstance(e, HalfSmash):
        # left x| right = left or (left' ^ Susp right); at the level of
        # sphere counts a wedge of spheres is always a suspension, so the
        # desuspended dimensions are just shifted down by one.
        ca, ta = _to_spheres(e.left, ceiling)
        sb, tb = _to_spheres(Susp(e.right), ceiling)
        shifted = {d - 1: c for d, c in ca.items()}
        mixed, dropped = _convolve(shifted, sb, ceiling)
        out = Counter(ca)
        out.update(mixed)
        return dict(out), ta or tb or dropped
    if isinstance(e, Susp):
        inner = e.arg
        if isinstance(inner, Prod):
            parts = []
            for r in range(1, len(inner.args) + 1):
                for sub in itertools.combinations(inner.args, r):
                    parts.append(Susp(sub[0] if len(sub) == 1 else Smash(sub)))
            return _to_spheres(Wedge(tuple(parts)), ceiling)
        if isinstance(inner, Loop):
            wcounts, wtrunc = _to_spheres(inner.arg, ceiling)
            if wcounts and min(wcounts) < 2:
                raise CeilingExceededError("loop target is not simply connected")
            if not wcounts:
                return {}, wtrunc
            return _james_counts(wcounts, ceiling), True
        if isinstance(inner, Smash):
            movable = next(
                (i for i, a in enumerate(inner.args) if isinstance(a, (Loop, Prod))), None
            )
            if movable is not None:
                args = list(inner.args)
                args[movable] = Susp(args[movable])
                return _to_spheres(Smash(tuple(args)), ceiling)
        if isinstance(inner, HalfSmash):
            return _to_spheres(
                Wedge((Susp(inner.left), Susp(Smash((inner.left, inner.right))))), ceiling
            )
        counts, trunc = _to_spheres(inner, ceiling)
        out = {d + 1: c for d, c in counts.items() if d + 1 <= ceiling}
        trunc = trunc or any(d + 1 > ceiling for d in counts)
        return out, trunc
    raise CeilingExceededError(
        f"cannot reduce a {type(e).__name__} node to spheres below the ceiling"
    )


def sphere_multiset_of(e: SpaceExpr, max_dim: int) -> SphereMultiset:
    """Expand e into spheres up to max_dim; infinite families are truncated
    and flagged. Raises CeilingExceededError on irreducible subterms."""
    if max_dim < 1:
        raise InvalidParameters("sphere ceiling must be at least 1")
    counts, truncated = _to_spheres(normalize(e), max_dim)
    return SphereMultiset(dict(sorted(counts.items())), max_dim, truncated)


def _wedge_of_sphere_counts(counts: dict[int, int]) -> SpaceExpr:
    args = []
    for d in sorted(counts):
        args.extend([Sphere(d)] * counts[d])
    if not args:
        return POINT
    return args[0] if len(args) == 1 else Wedge(tuple(args))


def james_split(x: SpaceExpr, cutoff: int) -> SpaceExpr:
    """Expansion of Susp(Loop(Susp(x))) as a sphere wedge through dimension
    `cutoff`, for x reducible to a wedge of spheres."""
    if cutoff < 1:
        raise InvalidParameters("cutoff must be at least 1")
    xn = normalize(x)
    counts, _ = _to_spheres(xn, cutoff)
    counts = {d: c for d, c in counts.items() if d + 1 <= cutoff}
    if not counts:
        return POINT
    out: Counter = Counter()
    power = dict(counts)
    while power:
        for d, c in power.items():
            if d + 1 <= cutoff:
                out[d + 1] += c
        power, _ = _convolve(power, counts, ceiling=cutoff - 1)
    return _wedge_of_sphere_counts(dict(out))


def lyndon_words(n: int, maxlen: int) -> list[tuple[int, ...]]:
    """Lyndon words over the alphabet 1..n up to the given length, sorted by
    length then lexicographically. Their count by length is the necklace
    number M(n, k), which is what makes the Hilton-Milnor bookkeeping exact."""
    if n < 1:
        raise InvalidParameters("alphabet size must be at least 1")
    if maxlen < 1:
        return []
    words = []
    w = [1]
    while w:
        words.append(tuple(w))
        period = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - period])
        while w and w[-1] == n:
            w.pop()
        if w:
            w[-1] += 1
    return sorted(words, key=lambda t: (len(t), t))


def _mobius(n: int) -> int:
    out = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    if n > 1:
        out = -out
    return out


def _lyndon_content_count(content: tuple[int, ...]) -> int:
    """Number of Lyndon words using letter i exactly content[i-1] times.

    Witt's formula: (1/k) sum over e dividing gcd(content) of
    mobius(e) * multinomial(k/e; content/e), with k the word length."""
    k = sum(content)
    g = 0
    for m in content:
        g = math.gcd(g, m)
    total = 0
    for e in range(1, g + 1):
        if g % e:
            continue
        mu = _mobius(e)
        if mu == 0:
            continue
        term = math.factorial(k // e)
        for m in content:
            term //= math.factorial(m // e)
        total += mu * term
    return total // k


def _compositions(total: int, parts: int):
    """Weak compositions of total into parts, earlier parts largest first.

    This order makes letter-1-heavy contents come first, matching the
    lexicographic order of the smallest word with each content."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def hilton_milnor(w: SpaceExpr, cutoff: int) -> SpaceExpr:
    """Loop space of a finite wedge of suspensions as a weak product of loops
    on suspended smashes indexed by Lyndon words.

    Sphere letters weigh their dimension minus one (so a word maps to a
    sphere of dimension 1 + total weight); other suspension letters weigh 1.
    Words whose sphere dimension would exceed `cutoff` are dropped, so the
    result is series-exact through degree cutoff - 1.

    The factor for a word depends only on its letter content (smash factors
    commute), so the product is assembled content by content, with Witt's
    formula giving the number of Lyndon words per content. One expression
    object is shared across a run of equal factors, which keeps the result
    usable even when the word count runs into the millions (as it does for
    a wedge of several S^2 summands at a generous cutoff)."""
    if cutoff < 1:
        raise InvalidParameters("cutoff must be at least 1")
    wn = normalize(w)
    if isinstance(wn, Point):
        return POINT
    summands = list(wn.args) if isinstance(wn, Wedge) else [wn]
    bases = []
    for s in summands:
        if isinstance(s, Sphere) and s.d >= 2:
            bases.append(Sphere(s.d - 1))
            continue
        down = desuspend(s)
        if down is None or isinstance(down, Point):
            raise SeriesDomainError(f"wedge summand {format_sexpr(s)} is not a suspension")
        bases.append(down)
    weights = [b.d if isinstance(b, Sphere) else 1 for b in bases]
    maxlen = (cutoff - 1) // min(weights)
    factors: list[SpaceExpr] = []
    for k in range(1, maxlen + 1):
        for content in _compositions(k, len(bases)):
            if 1 + sum(m * wt for m, wt in zip(content, weights)) > cutoff:
                continue
            count = _lyndon_content_count(content)
            if count == 0:
                continue
            letters: list[SpaceExpr] = []
            for base, m in zip(bases, content):
                letters.extend([base] * m)
            inner = letters[0] if len(letters) == 1 else Smash(tuple(letters))
            factors.extend([normalize(Loop(Susp(inner)))] * count)
    if not factors:
        return POINT
    return factors[0] if len(factors) == 1 else Prod(tuple(factors))


_TOKEN = re.compile(r'\(|\)|"[^"]*"|[^\s()"]+')

_NODE_NAMES = {
    "point": Point,
    "sphere": Sphere,
    "atom": Atom,
    "wedge": Wedge,
    "prod": Prod,
    "smash": Smash,
    "susp": Susp,
    "loop": Loop,
    "join": Join,
    "halfsmash": HalfSmash,
    "cone": Cone,
}
_NAME_OF = {v: k for k, v in _NODE_NAMES.items()}


def format_sexpr(e: SpaceExpr) -> str:
    """Render the expression tree as an s-expression.

    Atoms serialize by name alone: declared homology is a computational
    annotation for the series engine, not part of the space's structure, so
    the wire formats do not carry it."""
    if isinstance(e, Point):
        return "point"
    if isinstance(e, Sphere):
        return f"(sphere {e.d})"
    if isinstance(e, Atom):
        return f'(atom "{e.name}")'
    if isinstance(e, (Wedge, Prod, Smash)):
        inner = " ".join(format_sexpr(a) for a in e.args)
        return f"({_NAME_OF[type(e)]} {inner})"
    if isinstance(e, (Susp, Loop, Cone)):
        return f"({_NAME_OF[type(e)]} {format_sexpr(e.arg)})"
    return f"({_NAME_OF[type(e)]} {format_sexpr(e.left)} {format_sexpr(e.right)})"


def parse_sexpr(text: str) -> SpaceExpr:
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise InvalidParameters("empty expression")
    pos = 0

    def parse() -> SpaceExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise InvalidParameters("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "point":
            return POINT
        if tok != "(":
            raise InvalidParameters(f"unexpected token {tok!r}")
        head = tokens[pos]
        pos += 1
        if head not in _NODE_NAMES:
            raise InvalidParameters(f"unknown constructor {head!r}")
        args = []
        while pos < len(tokens) and tokens[pos] != ")":
            tok = tokens[pos]
            if tok == "(" or tok == "point":
                args.append(parse())
            else:
                pos += 1
                if tok.startswith('"'):
                    args.append(tok[1:-1])
                else:
                    try:
                        args.append(int(tok))
                    except ValueError as exc:
                        raise InvalidParameters(f"bad literal {tok!r}") from exc
        if pos >= len(tokens):
            raise InvalidParameters("missing closing parenthesis")
        pos += 1
        return _build(head, args)

    expr = parse()
    if pos != len(tokens):
        raise InvalidParameters("trailing tokens after expression")
    return expr


def _build(head: str, args: list) -> SpaceExpr:
    cls = _NODE_NAMES[head]
    if cls is Point:
        if args:
            raise InvalidParameters("point takes no arguments")
        return POINT
    if cls is Sphere:
        if len(args) != 1 or not isinstance(args[0], int):
            raise InvalidParameters("sphere takes one integer dimension")
        return Sphere(args[0])
    if cls is Atom:
        if len(args) != 1 or not isinstance(args[0], str):
            raise InvalidParameters("atom takes one quoted name")
        return Atom(args[0])
    if not all(isinstance(a, SpaceExpr) for a in args):
        raise InvalidParameters(f"{head} takes space arguments")
    if cls in (Wedge, Prod, Smash):
        return cls(tuple(args))
    if cls in (Susp, Loop, Cone):
        if len(args) != 1:
            raise InvalidParameters(f"{head} takes exactly one argument")
        return cls(args[0])
    if len(args) != 2:
        raise InvalidParameters(f"{head} takes exactly two arguments")
    return cls(args[0], args[1])


def to_json_obj(e: SpaceExpr) -> dict:
    if isinstance(e, Point):
        return {"op": "point", "args": []}
    if isinstance(e, Sphere):
        return {"op": "sphere", "args": [e.d]}
    if isinstance(e, Atom):
        return {"op": "atom", "args": [e.name]}
    if isinstance(e, (Wedge, Prod, Smash)):
        return {"op": _NAME_OF[type(e)], "args": [to_json_obj(a) for a in e.args]}
    if isinstance(e, (Susp, Loop, Cone)):
        return {"op": _NAME_OF[type(e)], "args": [to_json_obj(e.arg)]}
    return {"op": _NAME_OF[type(e)], "args": [to_json_obj(e.left), to_json_obj(e.right)]}


def from_json_obj(obj: dict) -> SpaceExpr:
    try:
        head, args = obj["op"], obj["args"]
    except (TypeError, KeyError) as exc:
        raise InvalidParameters("expression JSON needs 'op' and 'args'") from exc
    parsed = [from_json_obj(a) if isinstance(a, dict) else a for a in args]
    if head not in _NODE_NAMES:
        raise InvalidParameters(f"unknown constructor {head!r}")
    return _build(head, parsed)
