"""Loop space decompositions of polyhedral products over graph families.

A decomposition is produced by chaining a small set of splitting steps, each
recorded in the result's provenance tuple:

  cone-fibration-splitting   Over a complex K on m vertices, the based loops
                             on the polyhedral product (X, *)^K split as
                             (prod of m copies of Loop X) x Loop of the
                             fibre polyhedral product (Cone Loop X, Loop X)^K.
  path-to-points-reduction   Over a path with l edges, that fibre product is
                             homotopy equivalent to the one over l disjoint
                             points.
  porter-fibre               Over l disjoint points the fibre of the wedge
                             into the product is Porter's wedge: for each
                             2 <= k <= l and each k-subset, k-1 copies of the
                             (k-fold smash of Loop X) suspended once.
  fold-splitting             Loops on an n-fold wedge of a space Y with a
                             fibre F for Y -> X split as Loop X x Loop of the
                             (n-1)-fold wedge of Susp F.
  polyhedral-fold-splitting  The same splitting for an iterated gluing of n
                             copies of a complex along a common subcomplex.
  endpoint-join-reduction    For a length-2 path glued at its endpoints the
                             page fibre is Loop X itself (the fibre of the
                             wedge into the join-like product).
  inclusion-fibre-halfsmash  For longer paths the page fibre is a product of
                             loops with the loops on a half-smash C x| Loop
                             of a join, C as below.
  suspension-splitting       Susp(A x B) = Susp A or Susp B or Susp(A ^ B),
                             iterated over product factors.
  james-splitting            Susp Loop Susp Y = wedge of suspended smash
                             powers of Y.
  halfsmash-splitting        C x| B = C or (C' ^ Susp B) when C = Susp C'.
  book-sphere-decomposition  Final assembly for the planar book family.

Everything below is exact: series come from the structural engine in
spacealg, sphere reports carry explicit truncation flags, and each public
function documents its validity range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complexes import GluingSpec
from .errors import CeilingExceededError, InvalidParameters, SeriesDomainError
from .series import TruncSeries
from .spacealg import (
    Atom,
    HalfSmash,
    Join,
    Loop,
    POINT,
    Prod,
    Smash,
    SpaceExpr,
    Sphere,
    SphereMultiset,
    Susp,
    Wedge,
    atom,
    normalize,
    poincare_series,
    sphere_multiset_of,
)

GENERIC_VERTEX_SPACE = atom("X")


@dataclass(frozen=True)
class DecompResult:
    """A named product decomposition with optional sphere and series reports."""

    family: str
    params: dict[str, int]
    total: SpaceExpr
    factors: tuple[tuple[str, SpaceExpr], ...]
    spheres: dict[str, SphereMultiset] | None
    series: TruncSeries | None
    provenance: tuple[str, ...]

    def to_json_obj(self) -> dict:
        from .spacealg import format_sexpr

        obj: dict = {"family": self.family}
        obj.update(self.params)
        obj["factors"] = [
            {"name": name, "term": format_sexpr(expr)} for name, expr in self.factors
        ]
        if self.spheres is None:
            obj["spheres"] = None
        else:
            obj["spheres"] = {
                key: {str(d): c for d, c in sorted(ms.counts.items())}
                for key, ms in self.spheres.items()
            }
            obj["spheres_truncated"] = {key: ms.truncated for key, ms in self.spheres.items()}
        obj["series"] = None if self.series is None else self.series.to_json_obj()
        obj["provenance"] = list(self.provenance)
        return obj


def _try_series(e: SpaceExpr, n: int) -> TruncSeries | None:
    try:
        return poincare_series(e, n)
    except SeriesDomainError:
        return None


def porter_wedge(l: int, circles: bool = True, x: Atom = GENERIC_VERTEX_SPACE) -> SpaceExpr:
    """Fibre of the inclusion of an l-fold wedge into the l-fold product.

    With circles=True each loop factor is a circle and the summands collapse
    to spheres: k-1 copies of S^(k+1) for each of the C(l, k) subsets of size
    k. Symbolically the summands stay as suspended smash powers of Loop(x).
    """
    if l < 1:
        raise InvalidParameters("need at least one wedge summand")
    parts: list[SpaceExpr] = []
    for k in range(2, l + 1):
        copies = (k - 1) * math.comb(l, k)
        if circles:
            parts.extend([Sphere(k + 1)] * copies)
        else:
            parts.extend([Susp(Smash(tuple([Loop(x)] * k)))] * copies)
    return normalize(Wedge(tuple(parts)))


def path_fibre_reduce(l: int, circles: bool = True, x: Atom = GENERIC_VERTEX_SPACE) -> SpaceExpr:
    """Fibre polyhedral product over a path with l edges, reduced to the
    disjoint-points case and expanded by Porter's wedge. l = 1 gives a point."""
    if l < 1:
        raise InvalidParameters("path length must be at least 1")
    if l == 1:
        return POINT
    return porter_wedge(l, circles=circles, x=x)


def cone_loop_split(
    m: int, x: SpaceExpr, zk: SpaceExpr, n: int = 16
) -> DecompResult:
    """Split loops on a polyhedral product over an m-vertex complex into m
    copies of Loop(x) times the loops on the given fibre product zk."""
    if m < 1:
        raise InvalidParameters("need at least one vertex")
    vertex_loops = normalize(Prod(tuple([Loop(x)] * m)))
    cone_factor = normalize(Loop(zk))
    total = normalize(Prod(tuple([Loop(x)] * m) + (Loop(zk),)))
    return DecompResult(
        family="cone-loop",
        params={"m": m, "N": n},
        total=total,
        factors=(("vertex-loops", vertex_loops), ("loop-fibre-product", cone_factor)),
        spheres=None,
        series=_try_series(total, n),
        provenance=("cone-fibration-splitting",),
    )


def fold_decompose(n_summands: int, x: SpaceExpr, fibre: SpaceExpr, n: int = 16) -> DecompResult:
    """Loops on an n-fold wedge of a space with chosen map to x and fibre."""
    if n_summands < 1:
        raise InvalidParameters("need at least one wedge summand")
    fw = normalize(Wedge(tuple([Susp(fibre)] * (n_summands - 1))))
    total = normalize(Prod((Loop(x), Loop(fw))))
    return DecompResult(
        family="fold",
        params={"n": n_summands, "N": n},
        total=total,
        factors=(("loop-base", normalize(Loop(x))), ("loop-fibre-wedge", normalize(Loop(fw)))),
        spheres=None,
        series=_try_series(total, n),
        provenance=("fold-splitting",),
    )


def poly_fold_decompose(
    spec: GluingSpec,
    x: SpaceExpr,
    fibre_g: SpaceExpr,
    base_loop: SpaceExpr | None = None,
    n: int = 16,
) -> DecompResult:
    """Loops on the polyhedral product over an iterated gluing: loops on the
    product over one copy, times loops on a (copies-1)-fold wedge of the
    suspended gluing fibre. The base factor stays opaque unless the caller
    passes its own expression for it."""
    copies = spec.copies
    fw = normalize(Wedge(tuple([Susp(fibre_g)] * (copies - 1))))
    base = base_loop if base_loop is not None else Loop(atom("base-product"))
    base = normalize(base)
    total = normalize(Prod((base, Loop(fw))))
    return DecompResult(
        family="glued",
        params={"copies": copies, "N": n},
        total=total,
        factors=(("loop-base", base), ("loop-fibre-wedge", normalize(Loop(fw)))),
        spheres=None,
        series=_try_series(total, n),
        provenance=("polyhedral-fold-splitting",),
    )


def book_C(l: int, circles: bool = True, x: Atom = GENERIC_VERTEX_SPACE) -> SpaceExpr:
    """Wedge summand C in the page fibre for spine paths of length l >= 3.

    Indexed by nonempty proper subsets I of {0..l-2} with I != {0}: each
    contributes a suspended (|I|+1)-fold smash of loops (a sphere S^(|I|+2)
    in circle mode), plus the half-smash of the length-(l-1) path fibre with
    one more loop factor. In circle mode the half-smash splits, leaving an
    explicit wedge of spheres.
    """
    if l < 3:
        raise InvalidParameters("the C summand exists for spine length at least 3")
    parts: list[SpaceExpr] = []
    for s in range(1, l):
        copies = math.comb(l - 1, s) - (1 if s == 1 else 0)
        if circles:
            parts.extend([Sphere(s + 2)] * copies)
        else:
            parts.extend([Susp(Smash(tuple([Loop(x)] * (s + 1))))] * copies)
    zk = porter_wedge(l - 1, circles=circles, x=x)
    tail = HalfSmash(zk, Sphere(1) if circles else Loop(x))
    return normalize(Wedge(tuple(parts) + (tail,)))


def endpoint_fibre(l: int, circles: bool = True, x: Atom = GENERIC_VERTEX_SPACE) -> SpaceExpr:
    """Fibre of the inclusion of one page into the polyhedral product over a
    book whose pages are paths of length l glued along both endpoints.

    l = 2 reduces to a single loop factor; for l >= 3 the fibre is a product
    of l-1 loop factors with the loops on a half-smash of book_C(l) and the
    loops on the join of two vertex loop spaces."""
    if l < 2:
        raise InvalidParameters("page paths must have length at least 2")
    if l == 2:
        return Sphere(1) if circles else normalize(Loop(x))
    cbit = book_C(l, circles=circles, x=x)
    join_loops = Loop(Sphere(3)) if circles else Loop(Join(Loop(x), Loop(x)))
    tail = Loop(HalfSmash(cbit, join_loops))
    lead: list[SpaceExpr] = [Sphere(1) if circles else Loop(x)] * (l - 1)
    return normalize(Prod(tuple(lead) + (tail,)))


def _require_visible(ms: SphereMultiset, name: str) -> None:
    if not ms.counts and ms.truncated:
        raise CeilingExceededError(
            f"sphere ceiling {ms.max_dim} hides every sphere of the {name} factor"
        )


def path_decompose(l: int, n: int = 16, max_dim: int = 16) -> DecompResult:
    """Loops on the product of infinite projective spaces over a path with l
    edges: l+1 circles times loops on an explicit sphere wedge."""
    if l < 1:
        raise InvalidParameters("path length must be at least 1")
    if max_dim < 2:
        raise InvalidParameters("sphere ceiling below 2 cannot express anything")
    zk = path_fibre_reduce(l, circles=True)
    total = normalize(Prod(tuple([Sphere(1)] * (l + 1)) + (Loop(zk),)))
    spheres = {"ZPl": sphere_multiset_of(zk, max_dim)}
    _require_visible(spheres["ZPl"], "path fibre")
    return DecompResult(
        family="P_l",
        params={"l": l, "N": n, "max_dim": max_dim},
        total=total,
        factors=(
            ("circles", normalize(Prod(tuple([Sphere(1)] * (l + 1))))),
            ("loop-path-fibre", normalize(Loop(zk))),
        ),
        spheres=spheres,
        series=poincare_series(total, n),
        provenance=("cone-fibration-splitting", "path-to-points-reduction", "porter-fibre"),
    )


def dj_book_decompose(l: int, p: int, n: int = 16, max_dim: int = 16) -> DecompResult:
    """Loops on the product of infinite projective spaces over the planar
    book with p+1 paths of length l: l+1 circles, times loops on the path
    fibre wedge, times loops on a p-fold wedge of the suspended page fibre.

    The series is exact through degree n regardless of max_dim; only the
    sphere report is truncated at max_dim.
    """
    if l < 2 or p < 2:
        raise InvalidParameters("book decomposition needs l >= 2 and p >= 2")
    if max_dim < 2:
        raise InvalidParameters("sphere ceiling below 2 cannot express anything")
    zk = path_fibre_reduce(l, circles=True)
    fibre = endpoint_fibre(l, circles=True)
    fw = normalize(Wedge(tuple([Susp(fibre)] * p)))
    circles = normalize(Prod(tuple([Sphere(1)] * (l + 1))))
    total = normalize(Prod(tuple([Sphere(1)] * (l + 1)) + (Loop(zk), Loop(fw))))
    spheres = {
        "ZPl": sphere_multiset_of(zk, max_dim),
        "fibre": sphere_multiset_of(fw, max_dim),
    }
    _require_visible(spheres["ZPl"], "path fibre")
    _require_visible(spheres["fibre"], "page fibre wedge")
    if l == 2:
        tail = ("endpoint-join-reduction",)
    else:
        tail = (
            "inclusion-fibre-halfsmash",
            "suspension-splitting",
            "james-splitting",
            "halfsmash-splitting",
        )
    return DecompResult(
        family="B(l,2l,p)",
        params={"l": l, "p": p, "N": n, "max_dim": max_dim},
        total=total,
        factors=(
            ("circles", circles),
            ("loop-path-fibre", normalize(Loop(zk))),
            ("loop-page-fibre-wedge", normalize(Loop(fw))),
        ),
        spheres=spheres,
        series=poincare_series(total, n),
        provenance=(
            "cone-fibration-splitting",
            "path-to-points-reduction",
            "porter-fibre",
            "polyhedral-fold-splitting",
        )
        + tail
        + ("book-sphere-decomposition",),
    )


def book_decompose_symbolic(n_spine: int, l: int, p: int, n: int = 16) -> DecompResult:
    """Symbolic decomposition for a general book: loops on the product over
    one cycle, times loops on a (p-1)-fold wedge of a suspended page fibre
    that stays opaque. No series or sphere report is available here."""
    if l < 3 or not 1 <= n_spine <= l - 2 or p < 2:
        raise InvalidParameters("book parameters must satisfy l >= 3, 1 <= n <= l-2, p >= 2")
    page_fibre = atom("page-fibre")
    fw = normalize(Wedge(tuple([Susp(page_fibre)] * (p - 1))))
    base = Loop(atom("cycle-product"))
    total = normalize(Prod((base, Loop(fw))))
    return DecompResult(
        family="B(n,l,p)",
        params={"n": n_spine, "l": l, "p": p, "N": n},
        total=total,
        factors=(("loop-base", base), ("loop-page-fibre-wedge", normalize(Loop(fw)))),
        spheres=None,
        series=None,
        provenance=("polyhedral-fold-splitting",),
    )
