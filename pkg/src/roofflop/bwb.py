"""Borel-Weil-Bott cohomology of irreducible homogeneous bundles.

A homogeneous space is G/P with P the parabolic generated by the Borel and
the simple roots listed in ``levi_nodes``.  An irreducible bundle is labelled
by a weight that is dominant on the Levi nodes; coordinates on the remaining
(marked) nodes are the twist.  Bott's algorithm: shift by rho, sort into the
dominant chamber; a wall means no cohomology, otherwise a single irreducible
G-representation sits in degree equal to the length of the sorting element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rootsys import (
    RootSystem,
    RootSystemError,
    dominant_conjugate,
    dual_weight,
    freudenthal_multiplicities,
    tensor_decompose,
    weyl_dim,
)


class GradedDim:
    """Graded dimensions keyed by cohomological degree.

    Carries degreewise lower/upper bounds.  ``Exact`` means the bounds agree;
    long-exact-sequence assembly with an undetermined connecting map widens
    them instead of guessing.
    """

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper=None):
        self.lower = {d: n for d, n in lower.items() if n != 0}
        self.upper = dict(self.lower) if upper is None else {d: n for d, n in upper.items() if n != 0}
        assert all(self.lower.get(d, 0) <= self.upper.get(d, 0) for d in self.lower), (
            self.lower,
            self.upper,
        )

    @classmethod
    def exact(cls, dims):
        return cls(dims)

    @classmethod
    def zero(cls):
        return cls({})

    @property
    def is_exact(self):
        return self.lower == self.upper

    @property
    def is_zero(self):
        return self.is_exact and not self.upper

    @property
    def dims(self):
        if not self.is_exact:
            raise ValueError("graded dimension is only known as an interval")
        return dict(self.upper)

    def euler(self):
        dims = self.dims
        return sum((-1) ** d * n for d, n in dims.items())

    def shifted(self, n):
        """Homological shift by [n]: degree d content moves to degree d - n."""
        return GradedDim(
            {d - n: v for d, v in self.lower.items()},
            {d - n: v for d, v in self.upper.items()},
        )

    def __add__(self, other):
        lo = dict(self.lower)
        up = dict(self.upper)
        for d, v in other.lower.items():
            lo[d] = lo.get(d, 0) + v
        for d, v in other.upper.items():
            up[d] = up.get(d, 0) + v
        return GradedDim(lo, up)

    def __eq__(self, other):
        if not isinstance(other, GradedDim):
            return NotImplemented
        return self.lower == other.lower and self.upper == other.upper

    def __hash__(self):
        return hash((tuple(sorted(self.lower.items())), tuple(sorted(self.upper.items()))))

    def __repr__(self):
        if self.is_zero:
            return "GradedDim(0)"
        if self.is_exact:
            return f"GradedDim({self.upper})"
        return f"GradedDim({self.lower}..{self.upper})"

    def pretty(self):
        if self.is_zero:
            return "0"
        if self.is_exact:
            if self.upper == {0: 1}:
                return "C[0]"
            return " + ".join(f"{n}[{d}]" for d, n in sorted(self.upper.items()))
        lo = {d: self.lower.get(d, 0) for d in sorted(set(self.lower) | set(self.upper))}
        up = {d: self.upper.get(d, 0) for d in sorted(set(self.lower) | set(self.upper))}
        return f"between {lo} and {up}"

    def to_json(self):
        out = {"exact": self.is_exact}
        if self.is_exact:
            out["dims"] = {str(d): n for d, n in sorted(self.upper.items())}
        else:
            out["lower"] = {str(d): n for d, n in sorted(self.lower.items())}
            out["upper"] = {str(d): n for d, n in sorted(self.upper.items())}
        return out


def triangle_total(sub: GradedDim, quot: GradedDim) -> GradedDim:
    """Bounds for the middle term M of a triangle  sub -> M -> quot -> sub[1].

    The only unknown is the connecting map quot^k -> sub^{k+1}; its rank at
    degree k is bounded by min(quot^k, sub^{k+1}).  When every such bound is
    zero the answer is exact.
    """
    degs = set(sub.upper) | set(quot.upper) | set(sub.lower) | set(quot.lower)
    lo, up = {}, {}
    for k in degs:
        cancel_prev = min(quot.upper.get(k - 1, 0), sub.upper.get(k, 0))
        cancel_here = min(quot.upper.get(k, 0), sub.upper.get(k + 1, 0))
        up[k] = sub.upper.get(k, 0) + quot.upper.get(k, 0)
        lo[k] = max(0, sub.lower.get(k, 0) - cancel_prev) + max(
            0, quot.lower.get(k, 0) - cancel_here
        )
    return GradedDim(lo, up)


def triangle_cone(first: GradedDim, second: GradedDim) -> GradedDim:
    """Bounds for the cone Z of a triangle  first -> second -> Z -> first[1].

    Z^k receives coker(first^k -> second^k) and ker(first^{k+1} -> second^{k+1});
    the unknown rank at degree k is bounded by min(first^k, second^k).
    """
    degs = set()
    for g in (first, second):
        degs |= set(g.upper) | set(g.lower)
    degs |= {k - 1 for k in set(first.upper) | set(first.lower)}
    lo, up = {}, {}
    for k in degs:
        r_here = min(first.upper.get(k, 0), second.upper.get(k, 0))
        r_next = min(first.upper.get(k + 1, 0), second.upper.get(k + 1, 0))
        up[k] = second.upper.get(k, 0) + first.upper.get(k + 1, 0)
        lo[k] = max(0, second.lower.get(k, 0) - r_here) + max(
            0, first.lower.get(k + 1, 0) - r_next
        )
    return GradedDim(lo, up)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousSpace:
    """G/P together with the twist conventions used by the catalog.

    ``twist_basis`` lists the weights of the ample generators, in the order
    the (a, b) twist coordinates refer to them.  ``canonical`` is computed
    from the root data (minus the sum of the nilradical roots).
    """

    name: str
    root_system: RootSystem
    levi_nodes: tuple

    def __post_init__(self):
        nodes = self.root_system.levi_nodes(self.levi_nodes)
        object.__setattr__(self, "levi_nodes", nodes)

    @property
    def dimension(self):
        rs = self.root_system
        return len(rs.positive_roots) - len(rs.levi_positive_roots(self.levi_nodes))

    @property
    def canonical(self):
        rs = self.root_system
        levi = set(rs.levi_positive_roots(self.levi_nodes))
        total = [0] * rs.rank
        for root in rs.positive_roots:
            if root in levi:
                continue
            for i, c in enumerate(root):
                total[i] -= c
        return tuple(total)

    @property
    def marked_nodes(self):
        return tuple(i for i in range(1, self.root_system.rank + 1) if i not in self.levi_nodes)

    def is_levi_dominant(self, w):
        return all(w[i - 1] >= 0 for i in self.levi_nodes)


@dataclass(frozen=True)
class IrrBundle:
    space: HomogeneousSpace
    levi_weight: tuple

    def __post_init__(self):
        if not self.space.is_levi_dominant(self.levi_weight):
            raise RootSystemError(
                f"{self.levi_weight} is not Levi-dominant on {self.space.name}"
            )

    @property
    def rank(self):
        return weyl_dim(self.space.root_system, self.levi_weight, self.space.levi_nodes)


@lru_cache(maxsize=None)
def _bott(rs, levi_nodes, weight):
    mu = tuple(a + 1 for a in weight)  # add rho = (1,...,1)
    dc = dominant_conjugate(rs, mu, None)
    if dc is None:
        return ()
    length, dom = dc
    out_weight = tuple(a - 1 for a in dom)
    return ((length, out_weight),)


def bott_cohomology(bundle: IrrBundle):
    """Cohomology of an irreducible bundle: {degree: {G-weight: multiplicity}}.

    Empty when the rho-shifted weight is singular; otherwise a single
    irreducible in a single degree.
    """
    rs = bundle.space.root_system
    res = _bott(rs, bundle.space.levi_nodes, tuple(bundle.levi_weight))
    return {deg: {w: 1} for deg, w in res}


def graded_h_irr(space: HomogeneousSpace, weight) -> GradedDim:
    """Graded dimensions of the cohomology of one irreducible bundle."""
    rs = space.root_system
    res = _bott(rs, space.levi_nodes, tuple(weight))
    dims = {}
    for deg, w in res:
        dims[deg] = dims.get(deg, 0) + weyl_dim(rs, w)
    return GradedDim.exact(dims)


def rhom_irr(a: IrrBundle, b: IrrBundle) -> GradedDim:
    """Graded Hom between two irreducible bundles on the same space.

    Decomposes a^vee (x) b into Levi irreducibles (Klimyk at the Levi level,
    central characters ride along in the ambient coordinates) and sums the
    Bott cohomology of the summands.  Always exact.
    """
    if a.space != b.space:
        raise ValueError(f"mismatched spaces {a.space.name} / {b.space.name}")
    space = a.space
    rs = space.root_system
    dual = dual_weight(rs, a.levi_weight, space.levi_nodes)
    total = GradedDim.zero()
    for summand, mult in tensor_decompose(rs, dual, b.levi_weight, space.levi_nodes).items():
        h = graded_h_irr(space, summand)
        if mult != 1:
            h = GradedDim.exact({d: mult * n for d, n in h.dims.items()})
        total = total + h
    return total


def bundle_rank(space: HomogeneousSpace, weight) -> int:
    return weyl_dim(space.root_system, weight, space.levi_nodes)


def bundle_det(space: HomogeneousSpace, weight):
    """Determinant line weight of an irreducible bundle (sum of its weights)."""
    rs = space.root_system
    total = [0] * rs.rank
    for w, m in freudenthal_multiplicities(rs, weight, space.levi_nodes).items():
        for i, c in enumerate(w):
            total[i] += m * c
    return tuple(total)
