"""Graded RHom between compound bundle expressions on catalog spaces.

Every expression is expanded into an ordered filtration whose graded pieces
are irreducible (split sums stay split), cohomology of the pieces comes from
Bott's algorithm, and the pieces are reassembled degreewise through
two-term triangles.  An undetermined connecting map widens the answer to an
interval instead of silently guessing; the proof layer rejects anything that
is not exact.

Three ambient modes:

* plain        -- Hom on the space itself.
* blowup       -- Hom between pushforwards to a blow-up with exceptional
                  divisor the space; assembled from RHom(A, B) and
                  RHom(A(1,1)[1], B), i.e. the conormal-twisted term in
                  homological degree one lower.
* hyperplane   -- Hom between restrictions to an anticanonical-type
                  hyperplane section; assembled as the cone of
                  RHom(A, B(-1,-1)) -> RHom(A, B).

On the divisor space R every leaf is computed on the host flag through the
Koszul pair F(-D) -> F with D the class of R.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bundle_expr as be
from .bwb import GradedDim, IrrBundle, graded_h_irr, triangle_cone, triangle_total
from .rootsys import tensor_decompose
from .spaces import Catalog, SpaceModel, _resolve_layers, load_standard_catalog


class SheafCalcError(ValueError):
    pass


@dataclass(frozen=True)
class SheafObject:
    space: str
    expr: object
    shift: int = 0

    @classmethod
    def parse(cls, space, text, shift=0):
        return cls(space, be.parse_bundle_expr(text), shift)

    def __str__(self):
        s = be.expr_to_str(self.expr)
        if self.shift:
            s += f"[{self.shift}]"
        return s


@dataclass(frozen=True)
class AmbientContext:
    """Plain / blow-up exceptional divisor / hyperplane section."""

    mode: str  # "plain" | "blowup" | "hyperplane"
    twist: tuple = ()  # conormal (blowup) or normal (hyperplane) class
    discrepancy: int = 0  # k with S = (x) O(kE) [dim], resp. k of the section
    ambient_dim: int = 0

    def __post_init__(self):
        if self.mode not in ("plain", "blowup", "hyperplane"):
            raise SheafCalcError(f"unknown ambient mode {self.mode!r}")

    @classmethod
    def plain(cls):
        return cls("plain")

    def key(self):
        return (self.mode, self.twist, self.discrepancy, self.ambient_dim)

    def to_json(self):
        out = {"mode": self.mode}
        if self.mode != "plain":
            out.update(
                twist=list(self.twist),
                discrepancy=self.discrepancy,
                ambient_dim=self.ambient_dim,
            )
        return out


PLAIN = AmbientContext.plain()


def _is_levi_trivial(space, w):
    return all(w[i - 1] == 0 for i in space.levi_nodes)


def _tensor_leaves(space, l1, l2):
    w1, s1, m1 = l1
    w2, s2, m2 = l2
    if _is_levi_trivial(space, w1) or _is_levi_trivial(space, w2):
        return [(tuple(a + b for a, b in zip(w1, w2)), s1 + s2, m1 * m2)]
    out = []
    for w, m in tensor_decompose(
        space.root_system, w1, w2, space.levi_nodes
    ).items():
        out.append((w, s1 + s2, m1 * m2 * m))
    return out


def _tensor_groups(space, groups_a, groups_b):
    out = []
    for ga in groups_a:
        for gb in groups_b:
            grp = []
            for la in ga:
                for lb in gb:
                    grp.extend(_tensor_leaves(space, la, lb))
            out.append(tuple(grp))
    return tuple(out)


def _twist_groups(model: SpaceModel, groups, twist):
    tw = model.line_weight(twist)
    return tuple(
        tuple((tuple(a + b for a, b in zip(w, tw)), s, m) for (w, s, m) in grp)
        for grp in groups
    )


def _leaf_h(model: SpaceModel, leaf) -> GradedDim:
    w, s, m = leaf
    space = model.eval_space
    if model.koszul_divisor is None:
        h = graded_h_irr(space, w)
    else:
        d = model.koszul_divisor
        inner = graded_h_irr(space, tuple(a - b for a, b in zip(w, d)))
        h = triangle_cone(inner, graded_h_irr(space, w))
    if m != 1:
        h = GradedDim(
            {k: m * v for k, v in h.lower.items()},
            {k: m * v for k, v in h.upper.items()},
        )
    return h.shifted(s)


def _h_of_groups(model: SpaceModel, groups) -> GradedDim:
    total = None
    for grp in groups:
        gh = GradedDim.zero()
        for leaf in grp:
            gh = gh + _leaf_h(model, leaf)
        total = gh if total is None else triangle_total(total, gh)
    return total if total is not None else GradedDim.zero()


def _fiber_degree(flat_atoms, ax, expr):
    """Fiber degree of a base pullback along one ruling, or None.

    Defined for expressions built from the ruling's flat atoms, duals,
    shifts and line twists; a direct sum must be homogeneous in degree.
    """

    def walk(e):
        if isinstance(e, be.Line):
            return e.twist[ax] if len(e.twist) > ax else None
        if isinstance(e, be.Atom):
            return 0 if e.name in flat_atoms else None
        if isinstance(e, be.Dual):
            f = walk(e.arg)
            return None if f is None else -f
        if isinstance(e, be.Twist):
            f = walk(e.arg)
            if f is None or len(e.twist) <= ax:
                return None
            return f + e.twist[ax]
        if isinstance(e, be.Shift):
            return walk(e.arg)
        if isinstance(e, be.Sum):
            vals = {walk(p) for p in e.parts}
            if len(vals) == 1 and None not in vals:
                return vals.pop()
            return None
        return None

    return walk(expr)


def _acyclic_windows(m, a_expr, b_expr):
    """Per-ruling fiber degree of a^vee (x) b where defined.

    Returns a list of (degree, axis, fiber_dim); a hit inside
    [-fiber_dim, -1] on any ruling forces vanishing.
    """
    out = []
    for flat_atoms, ax, dim in m.fibrations:
        fa = _fiber_degree(flat_atoms, ax, a_expr)
        fb = _fiber_degree(flat_atoms, ax, b_expr)
        if fa is not None and fb is not None:
            out.append((fb - fa, ax, dim))
    return out


_rhom_cache: dict = {}


def rhom(a: SheafObject, b: SheafObject, ctx: AmbientContext = PLAIN,
         catalog: Catalog | None = None) -> GradedDim:
    """Graded Hom of two objects on the same catalog space, in a context."""
    if a.space != b.space:
        raise SheafCalcError(f"mismatched spaces {a.space} / {b.space}")
    std = catalog is None
    catalog = catalog or load_standard_catalog()
    key = None
    if std:
        key = (a.space, str(a), str(b), ctx.key())
        hit = _rhom_cache.get(key)
        if hit is not None:
            return hit

    entry = catalog.space(a.space)
    atoms = be.atoms_of(a.expr) | be.atoms_of(b.expr)
    model = entry.model_for(atoms)
    if ctx.mode != "plain" and len(ctx.twist) != entry.picard_rank:
        raise SheafCalcError(f"context twist {ctx.twist} malformed for {a.space}")

    def compute(m):
        ga = _resolve_layers(m, be.normalize(be.Dual(a.expr)))
        gb = _resolve_layers(m, b.expr)
        t_groups = _tensor_groups(m.eval_space, ga, gb)
        windows = _acyclic_windows(m, a.expr, b.expr)

        def h_total(down):
            for fd, ax, dim in windows:
                total_fd = fd + (down[ax] if down else 0)
                if -dim <= total_fd <= -1:
                    # a pullback from the base twisted into the fiber-acyclic
                    # window has no cohomology at all
                    return GradedDim.zero()
            groups = t_groups if down is None else _twist_groups(m, t_groups, down)
            return _h_of_groups(m, groups)

        base = h_total(None)
        if ctx.mode == "plain":
            return base
        down = tuple(-c for c in ctx.twist)
        extra = h_total(down)
        if ctx.mode == "blowup":
            return triangle_total(base, extra.shifted(-1))
        return triangle_cone(extra, base)

    result = compute(model)
    if not result.is_exact:
        # an interval is sound but weak; another registered presentation of
        # the same space may resolve the connecting maps
        for other in entry.models.values():
            if other is model:
                continue
            if atoms and not atoms <= set(other.dictionary):
                continue
            candidate = compute(other)
            if candidate.is_exact:
                result = candidate
                break
    result = result.shifted(b.shift - a.shift)
    if key is not None:
        _rhom_cache[key] = result
    return result


def graded_cohomology(obj: SheafObject, catalog: Catalog | None = None) -> GradedDim:
    """H^* of a single object on its space (plain mode)."""
    unit = SheafObject(obj.space, be.Line((0,) * _picard(obj.space, catalog)))
    return rhom(unit, obj, PLAIN, catalog)


def _picard(space_name, catalog=None):
    catalog = catalog or load_standard_catalog()
    return catalog.space(space_name).picard_rank


def expand(obj: SheafObject, catalog: Catalog | None = None):
    """Filtration of an object into irreducible layers.

    Returns a list of (IrrBundle, homological shift, layer index); layers
    appear sub-first, and leaves within one layer form a split direct sum.
    """
    catalog = catalog or load_standard_catalog()
    entry = catalog.space(obj.space)
    model = entry.model_for(be.atoms_of(obj.expr))
    out = []
    for idx, grp in enumerate(_resolve_layers(model, obj.expr)):
        for (w, s, m) in grp:
            for _ in range(m):
                out.append((IrrBundle(model.eval_space, w), s + obj.shift, idx))
    return out


# ---------------------------------------------------------------------------
# vanishing-lemma suites


D4_BLOWUP = AmbientContext("blowup", (1, 1), 3, 10)
G2_BLOWUP = AmbientContext("blowup", (1, 1), 2, 8)
D4_HYPERPLANE = AmbientContext("hyperplane", (1, 1), 3, 8)
G2_HYPERPLANE = AmbientContext("hyperplane", (1, 1), 2, 6)


def _check_item(label, space, a_text, b_text, ctx, expected):
    a = SheafObject.parse(space, a_text)
    b = SheafObject.parse(space, b_text)
    computed = rhom(a, b, ctx)
    ok = computed.is_exact and computed == expected
    return {
        "item": label,
        "query": f"RHom({a_text}, {b_text})",
        "computed": computed.pretty(),
        "expected": expected.pretty(),
        "exact": computed.is_exact,
        "ok": ok,
    }


def _check_rewrite(label, space, mutator, target, result, rule, ctx, catalog):
    """A left-mutation identity L_mutator(target) = result through a rule.

    Verified as: RHom(mutator, target) = C[0] in the ambient context, and the
    registered sequence realises target as the extension of result by
    mutator (so the mutation collapses the sequence).
    """
    hyp = rhom(SheafObject.parse(space, mutator), SheafObject.parse(space, target), ctx)
    one = GradedDim.exact({0: 1})
    seq = catalog.sequences[rule]
    structural = _rule_matches(seq, mutator, target, result)
    ok = hyp.is_exact and hyp == one and structural
    return {
        "item": label,
        "query": f"L_{{{mutator}}} {target} = {result} via {rule}",
        "computed": hyp.pretty(),
        "expected": "C[0]",
        "exact": hyp.is_exact,
        "structural_match": structural,
        "ok": ok,
    }


def _rule_matches(seq, mutator, target, result):
    """Does ``seq``, after a twist, read 0 -> mutator -> target -> result -> 0?"""
    twist = _twist_matching(seq.middle, be.parse_bundle_expr(target))
    if twist is None:
        return False
    tw = lambda e: be.normalize(be.Twist(e, twist))
    return tw(seq.left) == be.parse_bundle_expr(mutator) and tw(seq.right) == be.parse_bundle_expr(result)


def _twist_matching(pattern, concrete, picard_rank=2):
    """Find t with pattern(t) == concrete, comparing normalised trees."""

    def strip(e):
        if isinstance(e, be.Twist):
            base, t = strip(e.arg)
            return base, tuple(a + b for a, b in zip(t, e.twist)) if t else e.twist
        if isinstance(e, be.Line):
            return be.Line((0,) * len(e.twist)), e.twist
        return e, None

    pb, pt = strip(be.normalize(pattern))
    cb, ct = strip(be.normalize(concrete))
    if pb != cb:
        return None
    if pt is None:
        pt = (0,) * (len(ct) if ct is not None else picard_rank)
    if ct is None:
        ct = (0,) * len(pt)
    if len(pt) != len(ct):
        return None
    return tuple(a - b for a, b in zip(ct, pt))


def verify_lemma_van(catalog: Catalog | None = None):
    """All six vanishing facts used on the blow-up resolution of the D4 flop."""
    catalog = catalog or load_standard_catalog()
    zero = GradedDim.zero()
    one = GradedDim.exact({0: 1})
    items = []
    for a in (1, 2, 3, 4):
        items.append(
            _check_item(f"(1) a={a}", "E_D4", f"O({a},-1)", "O(0,0)", D4_BLOWUP, zero)
        )
    items.append(_check_item("(2)", "E_D4", "O(3,-2)", "O(0,0)", D4_BLOWUP, zero))
    items.append(_check_item("(3)", "E_D4", "O(0,0)", "U+^v(-2,1)", D4_BLOWUP, zero))
    items.append(_check_item("(4)", "E_D4", "O(0,0)", "U+(-2,1)", D4_BLOWUP, zero))
    items.append(_check_item("(5)", "E_D4", "O(0,0)", "U+^v(-1,1)", D4_BLOWUP, one))
    items.append(
        _check_rewrite("(6)", "E_D4", "O(1,-1)", "U+^v", "V^v", "releuler+", D4_BLOWUP, catalog)
    )
    return {"lemma": "van", "items": items, "ok": all(i["ok"] for i in items)}


def verify_lemma_van2(catalog: Catalog | None = None):
    """The two facts used on the common resolution of the rank-3 roof flop."""
    catalog = catalog or load_standard_catalog()
    zero = GradedDim.zero()
    items = []
    for a in (1, 2, 3):
        items.append(
            _check_item(f"(1) a={a}", "R", f"O({a},-1)", "O(0,0)", G2_BLOWUP, zero)
        )
    items.append(
        _check_rewrite("(2)", "R", "O(1,-1)", "S", "EE", "seqfund1", G2_BLOWUP, catalog)
    )
    return {"lemma": "van2", "items": items, "ok": all(i["ok"] for i in items)}
