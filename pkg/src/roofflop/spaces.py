"""Catalog of the geometric contexts: spaces, bundle dictionaries, sequences.

Conventions fixed here once and for all:

* Bourbaki node numbering.  On D4 the "+" spinor variety is the one marked
  at node 4, so h+ is the fundamental weight of node 4 and h- that of node 3.
  Everything downstream is symmetric under swapping the two (triality).
* P(F) means the space of lines in F, with Serre line bundle O(1) satisfying
  p_* O(1) = F^vee.
* On a rank-2 Picard space, O(a,b) = a*first + b*second of ``twist_basis``.

The one non-homogeneous catalog space, R, is kept as a divisor inside the
isotropic flag OFl(1,3,V7) (class = the Serre class of P(S^vee) -> Q5, i.e.
O(0,1)); its cohomology is always computed through the two-term Koszul
resolution on the flag.  R carries two host presentations that differ by the
swap of its two rulings; bundles pulled back from the second quadric are
evaluated in the mirrored presentation, where their filtrations are the
benign ones.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import bundle_expr as be
from .bwb import HomogeneousSpace, bundle_det, bundle_rank
from .rootsys import build_root_system, dual_weight

Layer = tuple  # (weight, shift, mult)
LayerSpec = tuple  # tuple of groups; group = tuple of Layer


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class SpaceModel:
    """One evaluation backend for a named space.

    ``eval_space`` is the homogeneous space BWB actually runs on.  For plain
    homogeneous entries it is the space itself and ``koszul_divisor`` is
    None; for a divisor entry it is the host, and cohomology is assembled
    from the Koszul pair F(-D) -> F.

    ``fibrations`` lists projective-bundle structures on the named space as
    (flat_atoms, fiber_axis, fiber_dim): the named symbols are pullbacks
    from the base of that ruling, and a twist whose ``fiber_axis`` component
    lies in [-fiber_dim, -1] kills all cohomology of such a pullback
    outright (fiber acyclicity).
    """

    eval_space: HomogeneousSpace
    twist_weights: tuple  # weight of each twist coordinate on eval_space
    dictionary: dict
    koszul_divisor: tuple | None = None
    fibrations: tuple = ()

    def line_weight(self, twist):
        if len(twist) != len(self.twist_weights):
            raise CatalogError(
                f"twist {twist} has wrong arity for a Picard-rank-"
                f"{len(self.twist_weights)} space"
            )
        rank = self.eval_space.root_system.rank
        out = [0] * rank
        for c, w in zip(twist, self.twist_weights):
            for i in range(rank):
                out[i] += c * w[i]
        return tuple(out)


@dataclass(frozen=True)
class SpaceEntry:
    name: str
    kind: str  # "homogeneous" | "divisor"
    models: dict  # model name -> SpaceModel; "primary" always present
    host: str | None = None
    divisor_class: tuple | None = None  # twist coords on the host
    mirror_atoms: frozenset = frozenset()
    irreducibles: dict = field(default_factory=dict)  # symbol -> weight, for suites

    @property
    def primary(self):
        return self.models["primary"]

    @property
    def picard_rank(self):
        return len(self.primary.twist_weights)

    @property
    def dimension(self):
        d = self.primary.eval_space.dimension
        return d - 1 if self.kind == "divisor" else d

    @property
    def canonical_twist(self):
        """Canonical line bundle in this space's own twist coordinates."""
        model = self.primary
        if self.kind == "homogeneous":
            target = model.eval_space.canonical
        else:
            host_can = model.eval_space.canonical
            dclass = model.line_weight(self.divisor_class)
            target = tuple(a + b for a, b in zip(host_can, dclass))
        return _twist_coords(model, target, self.name)

    def model_for(self, atom_names):
        if self.mirror_atoms and (set(atom_names) & self.mirror_atoms):
            if set(atom_names) & set(self.models["primary"].dictionary) - self.mirror_atoms:
                # mixed expression: fall back to the primary presentation
                return self.models["primary"]
            return self.models["mirror"]
        return self.models["primary"]


def _twist_coords(model, weight, name):
    """Invert line_weight on the span of the twist basis."""
    basis = model.twist_weights
    rank = len(weight)
    # twist weights in the catalog are supported on distinct marked nodes
    coords = []
    residual = list(weight)
    for w in basis:
        pivot = next(i for i in range(rank) if w[i] != 0)
        c, rem = divmod(residual[pivot], w[pivot])
        if rem:
            raise CatalogError(f"{weight} is not a line twist on {name}")
        coords.append(c)
        for i in range(rank):
            residual[i] -= c * w[i]
    if any(residual):
        raise CatalogError(f"{weight} is not a line twist on {name}")
    return tuple(coords)


@dataclass(frozen=True)
class ExactSequenceRule:
    name: str
    space: str
    left: object
    middle: object
    right: object


@dataclass(frozen=True)
class FibrationEntry:
    total: str
    base: str
    fiber_dim: int
    pushforward_rules: dict  # twist on total -> expression string on base


@dataclass(frozen=True)
class RestrictionPath:
    source: str
    target: str
    symbol_map: dict
    # twist coordinates carry over index-by-index on all registered paths


@dataclass(frozen=True)
class Catalog:
    spaces: dict
    sequences: dict
    fibrations: dict
    restrictions: dict

    def space(self, name) -> SpaceEntry:
        try:
            return self.spaces[name]
        except KeyError:
            raise CatalogError(f"unknown space {name!r}") from None


# ---------------------------------------------------------------------------
# construction


def _grp(*layers):
    return tuple((tuple(w), s, m) for (w, s, m) in layers)


def _irr(w, shift=0, mult=1):
    return (_grp((w, shift, mult)),)


def _filt(*weights):
    return tuple(_grp((w, 0, 1)) for w in weights)


def _build_standard() -> Catalog:
    d4 = build_root_system("D", 4)
    b3 = build_root_system("B", 3)

    h_plus = (0, 0, 0, 1)   # omega_4
    h_minus = (0, 0, 1, 0)  # omega_3
    omega1_d4 = (1, 0, 0, 0)

    s_plus_space = HomogeneousSpace("S_plus", d4, (1, 2, 3))
    s_minus_space = HomogeneousSpace("S_minus", d4, (1, 2, 4))
    e_space = HomogeneousSpace("E_D4", d4, (1, 2))
    q6_space = HomogeneousSpace("Q6", d4, (2, 3, 4))
    flag_space = HomogeneousSpace("FlagB3", b3, (2,))
    q5_space = HomogeneousSpace("Q5", b3, (2, 3))

    # tautological sub/quotient weights
    u_plus = (0, 0, 1, -1)       # rank-4 tautological on S_plus; det = O(-2)
    u_minus = (0, 0, -1, 1)
    v_dual = omega1_d4           # rank-3 quotient V^vee on E_D4
    v_taut = (0, 1, -1, -1)
    o_pm = (0, 0, -1, 1)         # O(1,-1) on E_D4, i.e. h+ - h-
    o_mp = (0, 0, 1, -1)

    spin_plus_q6 = (0, 0, 0, 1)
    spin_minus_q6 = (0, 0, 1, 0)

    s_q5 = (0, 0, 1)             # rank-4 spinor bundle on Q5
    w_flag = (0, 1, -1)          # rank-2 middle layer of the pulled-back spinor
    w_flag_dual = dual_weight(b3, w_flag, (2,))  # (-1, 1, -1)

    spaces = {}

    spaces["S_plus"] = SpaceEntry(
        name="S_plus",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=s_plus_space,
                twist_weights=(h_plus,),
                dictionary={"U+": _irr(u_plus)},
            )
        },
        irreducibles={"U+": u_plus},
    )
    spaces["S_minus"] = SpaceEntry(
        name="S_minus",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=s_minus_space,
                twist_weights=(h_minus,),
                dictionary={"U-": _irr(u_minus)},
            )
        },
        irreducibles={"U-": u_minus},
    )
    spaces["E_D4"] = SpaceEntry(
        name="E_D4",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=e_space,
                twist_weights=(h_plus, h_minus),
                dictionary={
                    "V": _irr(v_taut),
                    # relative Euler filtrations of the pulled-back tautological
                    # bundles: sub first.
                    "U+": _filt(v_taut, o_mp),
                    "U-": _filt(v_taut, o_pm),
                },
                fibrations=(
                    (frozenset({"U+"}), 1, 3),
                    (frozenset({"U-"}), 0, 3),
                ),
            )
        },
        irreducibles={"V": v_taut, "V^v": v_dual},
    )
    spaces["Q6"] = SpaceEntry(
        name="Q6",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=q6_space,
                twist_weights=(omega1_d4,),
                dictionary={
                    "S+": _irr(spin_plus_q6),
                    "S-": _irr(spin_minus_q6),
                    "G1+": (_grp(((0, 0, 0, 0), -1, 1)), _grp((dual_weight(d4, spin_plus_q6, (2, 3, 4)), 0, 1))),
                    "G1-": (_grp(((0, 0, 0, 0), -1, 1)), _grp((dual_weight(d4, spin_minus_q6, (2, 3, 4)), 0, 1))),
                },
            )
        },
        irreducibles={"S+": spin_plus_q6, "S-": spin_minus_q6},
    )
    spaces["FlagB3"] = SpaceEntry(
        name="FlagB3",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=flag_space,
                twist_weights=((1, 0, 0), (0, 0, 1)),
                dictionary={
                    # pullback of the Q5 spinor bundle along P(S^vee) -> Q5
                    "S": _filt((1, 0, -1), w_flag, (0, 0, 1)),
                    "W": _irr(w_flag),
                },
                fibrations=((frozenset({"S"}), 1, 3),),
            )
        },
        irreducibles={"W": w_flag},
    )
    spaces["Q5"] = SpaceEntry(
        name="Q5",
        kind="homogeneous",
        models={
            "primary": SpaceModel(
                eval_space=q5_space,
                twist_weights=(((1, 0, 0)),),
                dictionary={
                    "S": _irr(s_q5),
                    # Ottaviani bundles: kernels of S^vee ->> O
                    "G": (_grp(((0, 0, 0), -1, 1)), _grp((dual_weight(b3, s_q5, (2, 3)), 0, 1))),
                    "G'": (_grp(((0, 0, 0), -1, 1)), _grp((dual_weight(b3, s_q5, (2, 3)), 0, 1))),
                },
            )
        },
        irreducibles={"S": s_q5},
    )

    # R = P(G) inside FlagB3 = P(S^vee), cut out by a section of O(0,1).
    # Primary presentation: ruling over Q5 pulled back through the host;
    # mirror presentation: the same flag with the two rulings swapped, used
    # for bundles coming from the second quadric (S', G').
    r_primary = SpaceModel(
        eval_space=flag_space,
        twist_weights=((1, 0, 0), (0, 0, 1)),
        dictionary={
            "S": _filt((1, 0, -1), w_flag, (0, 0, 1)),
            "EE": _filt(w_flag, (0, 0, 1)),
            "S'": _filt((-1, 0, 1), w_flag, (0, 0, 1)),
            "G": (
                _grp(((0, 0, 0), -1, 1)),
                _grp(((0, 0, -1), 0, 1)),
                _grp((w_flag_dual, 0, 1)),
                _grp(((-1, 0, 1), 0, 1)),
            ),
            "G'": (
                _grp(((0, 0, 0), -1, 1)),
                _grp(((0, 0, -1), 0, 1)),
                _grp((w_flag_dual, 0, 1)),
                _grp(((1, 0, -1), 0, 1)),
            ),
        },
        koszul_divisor=(0, 0, 1),
        fibrations=(
            (frozenset({"S", "G"}), 1, 2),
            (frozenset({"S'", "G'"}), 0, 2),
        ),
    )
    r_mirror = SpaceModel(
        eval_space=flag_space,
        twist_weights=((0, 0, 1), (1, 0, 0)),
        dictionary={
            "S'": _filt((1, 0, -1), w_flag, (0, 0, 1)),
            "EE": _filt(w_flag, (0, 0, 1)),
            "S": _filt((-1, 0, 1), w_flag, (0, 0, 1)),
            "G'": (
                _grp(((0, 0, 0), -1, 1)),
                _grp(((0, 0, -1), 0, 1)),
                _grp((w_flag_dual, 0, 1)),
                _grp(((-1, 0, 1), 0, 1)),
            ),
            "G": (
                _grp(((0, 0, 0), -1, 1)),
                _grp(((0, 0, -1), 0, 1)),
                _grp((w_flag_dual, 0, 1)),
                _grp(((1, 0, -1), 0, 1)),
            ),
        },
        koszul_divisor=(0, 0, 1),
        fibrations=(
            (frozenset({"S'", "G'"}), 0, 2),
            (frozenset({"S", "G"}), 1, 2),
        ),
    )
    spaces["R"] = SpaceEntry(
        name="R",
        kind="divisor",
        host="FlagB3",
        divisor_class=(0, 1),
        models={"primary": r_primary, "mirror": r_mirror},
        mirror_atoms=frozenset({"S'", "G'"}),
    )

    p = be.parse_bundle_expr
    sequences = {
        "releuler+": ExactSequenceRule(
            "releuler+", "E_D4", p("O(-1,-1)"), p("U+^v(-2,0)"), p("V^v(-2,0)")
        ),
        "releuler-": ExactSequenceRule(
            "releuler-", "E_D4", p("O(-1,-1)"), p("U-^v(0,-2)"), p("V^v(0,-2)")
        ),
        "euler_spinor": ExactSequenceRule(
            "euler_spinor",
            "S_plus",
            p("U+"),
            be.Sum(tuple(be.Line((0,)) for _ in range(8))),
            p("U+^v"),
        ),
        "ott": ExactSequenceRule("ott", "Q5", p("O(0)"), p("S"), p("G^v")),
        "ott1+": ExactSequenceRule(
            "ott1+", "Q6", p("O(0)"), p("S+"), be.Dual(be.Atom("G1+"))
        ),
        "ott1-": ExactSequenceRule(
            "ott1-", "Q6", p("O(0)"), p("S-"), be.Dual(be.Atom("G1-"))
        ),
        "seqfund1": ExactSequenceRule("seqfund1", "R", p("O(1,-1)"), p("S"), p("EE")),
        "seqfund2": ExactSequenceRule("seqfund2", "R", p("O(-1,1)"), p("S'"), p("EE")),
    }

    fibrations = {
        "p_plus": FibrationEntry("E_D4", "S_plus", 3, {(1, 1): "U+(2)"}),
        "p_minus": FibrationEntry("E_D4", "S_minus", 3, {(1, 1): "U-(2)"}),
        "p1": FibrationEntry("FlagB3", "Q5", 3, {(0, 1): "S"}),
        "p_R": FibrationEntry("R", "Q5", 2, {(0, 1): "G^v"}),
    }

    restrictions = {
        ("FlagB3", "R"): RestrictionPath("FlagB3", "R", {"S": "S", "W": "W"}),
        ("Q6", "Q5"): RestrictionPath(
            "Q6", "Q5", {"S+": "S", "S-": "S", "G1+": "G", "G1-": "G"}
        ),
    }

    return Catalog(spaces, sequences, fibrations, restrictions)


@lru_cache(maxsize=None)
def _standard() -> Catalog:
    return _build_standard()


def load_standard_catalog() -> Catalog:
    """The embedded catalog, or the one named by ROOFFLOP_CATALOG if set."""
    path = os.environ.get("ROOFFLOP_CATALOG")
    if path:
        return catalog_from_json(path)
    return _standard()


# ---------------------------------------------------------------------------
# restriction


def restrict(expr, source: str, target: str, catalog: Catalog | None = None):
    """Rewrite an expression along a registered restriction path."""
    catalog = catalog or load_standard_catalog()
    try:
        path = catalog.restrictions[(source, target)]
    except KeyError:
        raise CatalogError(f"no registered restriction {source} -> {target}") from None

    def walk(e):
        if isinstance(e, be.Line):
            return e
        if isinstance(e, be.Atom):
            try:
                return be.Atom(path.symbol_map[e.name])
            except KeyError:
                raise CatalogError(
                    f"symbol {e.name} on {source} has no restriction to {target}"
                ) from None
        if isinstance(e, be.Dual):
            return be.Dual(walk(e.arg))
        if isinstance(e, be.Twist):
            return be.Twist(walk(e.arg), e.twist)
        if isinstance(e, be.Shift):
            return be.Shift(walk(e.arg), e.n)
        if isinstance(e, be.Sum):
            return be.Sum(tuple(walk(p) for p in e.parts))
        raise TypeError(f"not a bundle expression: {e!r}")

    return be.normalize(walk(expr))


# ---------------------------------------------------------------------------
# rank/determinant bookkeeping over layer expansions


def _resolve_layers(model: SpaceModel, expr):
    """Expand an expression into layer groups of (weight, shift, mult)."""
    if isinstance(expr, be.Line):
        return (_grp((model.line_weight(expr.twist), 0, 1)),)
    if isinstance(expr, be.Atom):
        try:
            return model.dictionary[expr.name]
        except KeyError:
            raise CatalogError(
                f"symbol {expr.name} is not defined on {model.eval_space.name}"
            ) from None
    if isinstance(expr, be.Dual):
        inner = _resolve_layers(model, expr.arg)
        rs = model.eval_space.root_system
        levi = model.eval_space.levi_nodes
        return tuple(
            tuple((dual_weight(rs, w, levi), -s, m) for (w, s, m) in grp)
            for grp in reversed(inner)
        )
    if isinstance(expr, be.Twist):
        inner = _resolve_layers(model, expr.arg)
        tw = model.line_weight(expr.twist)
        return tuple(
            tuple((tuple(a + b for a, b in zip(w, tw)), s, m) for (w, s, m) in grp)
            for grp in inner
        )
    if isinstance(expr, be.Shift):
        inner = _resolve_layers(model, expr.arg)
        return tuple(
            tuple((w, s + expr.n, m) for (w, s, m) in grp) for grp in inner
        )
    if isinstance(expr, be.Sum):
        groups = []
        for p in expr.parts:
            groups.extend(_resolve_layers(model, p))
        # a direct sum of irreducibles is a single split group
        if all(len(g) == 1 for g in groups) and len({s for g in groups for (_, s, _) in g}) == 1:
            merged = tuple(l for g in groups for l in g)
            return (merged,)
        return tuple(groups)
    raise TypeError(f"not a bundle expression: {expr!r}")


def expr_rank(entry: SpaceEntry, expr, model=None) -> int:
    """Virtual rank of an expression (alternating over shifted layers)."""
    model = model or entry.model_for(be.atoms_of(expr))
    space = model.eval_space
    total = 0
    for grp in _resolve_layers(model, expr):
        for w, s, m in grp:
            total += (-1) ** (s % 2) * m * bundle_rank(space, w)
    return total


def expr_det(entry: SpaceEntry, expr, model=None):
    """Virtual determinant weight (alternating sum of layer determinants)."""
    model = model or entry.model_for(be.atoms_of(expr))
    space = model.eval_space
    rank = space.root_system.rank
    total = [0] * rank
    for grp in _resolve_layers(model, expr):
        for w, s, m in grp:
            det = bundle_det(space, w)
            sign = (-1) ** (s % 2)
            for i in range(rank):
                total[i] += sign * m * det[i]
    return tuple(total)


def check_sequence_rule(catalog: Catalog, rule: ExactSequenceRule):
    """Rank and determinant additivity for a registered exact sequence."""
    entry = catalog.space(rule.space)
    atoms = be.atoms_of(rule.left) | be.atoms_of(rule.middle) | be.atoms_of(rule.right)
    model = entry.model_for(atoms)
    r = (
        expr_rank(entry, rule.left, model),
        expr_rank(entry, rule.middle, model),
        expr_rank(entry, rule.right, model),
    )
    d = (
        expr_det(entry, rule.left, model),
        expr_det(entry, rule.middle, model),
        expr_det(entry, rule.right, model),
    )
    rank_ok = r[1] == r[0] + r[2]
    det_ok = all(m == l + rr for l, m, rr in zip(d[0], d[1], d[2]))
    return {
        "rule": rule.name,
        "ranks": r,
        "rank_ok": rank_ok,
        "det_ok": det_ok,
    }


# ---------------------------------------------------------------------------
# serialization (human-readable dump + JSON round trip for ROOFFLOP_CATALOG)


def describe(catalog: Catalog) -> str:
    lines = ["catalog of spaces", "================="]
    for name, entry in sorted(catalog.spaces.items()):
        sp = entry.primary.eval_space
        lines.append(
            f"{name}: {entry.kind}, dim {entry.dimension}, "
            f"Picard rank {entry.picard_rank}, canonical O{entry.canonical_twist}"
        )
        if entry.kind == "divisor":
            lines.append(f"    divisor of class O{entry.divisor_class} in {entry.host}")
        else:
            lines.append(
                f"    {sp.root_system.cartan_type}{sp.root_system.rank}"
                f" / P(levi nodes {list(sp.levi_nodes)})"
            )
        for sym in sorted(entry.primary.dictionary):
            lines.append(f"    {sym}: {len(entry.primary.dictionary[sym])} layer(s)")
    lines.append("")
    lines.append("registered exact sequences")
    for name, rule in sorted(catalog.sequences.items()):
        lines.append(
            f"  {name} on {rule.space}: 0 -> {be.expr_to_str(rule.left)}"
            f" -> {be.expr_to_str(rule.middle)} -> {be.expr_to_str(rule.right)} -> 0"
        )
    lines.append("")
    lines.append("registered fibrations")
    for name, fib in sorted(catalog.fibrations.items()):
        rules = ", ".join(f"O{t} => {e}" for t, e in sorted(fib.pushforward_rules.items()))
        lines.append(f"  {name}: {fib.total} -> {fib.base} (fiber dim {fib.fiber_dim}); {rules}")
    return "\n".join(lines) + "\n"


def _model_json(m: SpaceModel):
    return {
        "space": m.eval_space.name,
        "cartan": list(m.eval_space.root_system.key),
        "levi": list(m.eval_space.levi_nodes),
        "twists": [list(w) for w in m.twist_weights],
        "dictionary": {
            sym: [[[list(w), s, mult] for (w, s, mult) in grp] for grp in layers]
            for sym, layers in m.dictionary.items()
        },
        "koszul": list(m.koszul_divisor) if m.koszul_divisor else None,
        "fibrations": [[sorted(atoms), ax, dim] for atoms, ax, dim in m.fibrations],
    }


def _model_from_json(d):
    rs = build_root_system(d["cartan"][0], d["cartan"][1])
    return SpaceModel(
        eval_space=HomogeneousSpace(d["space"], rs, tuple(d["levi"])),
        twist_weights=tuple(tuple(w) for w in d["twists"]),
        dictionary={
            sym: tuple(
                tuple((tuple(w), s, mult) for (w, s, mult) in grp) for grp in layers
            )
            for sym, layers in d["dictionary"].items()
        },
        koszul_divisor=tuple(d["koszul"]) if d["koszul"] else None,
        fibrations=tuple(
            (frozenset(atoms), ax, dim) for atoms, ax, dim in d.get("fibrations", ())
        ),
    )


def catalog_to_json(catalog: Catalog) -> str:
    doc = {
        "spaces": {
            name: {
                "kind": e.kind,
                "host": e.host,
                "divisor_class": list(e.divisor_class) if e.divisor_class else None,
                "mirror_atoms": sorted(e.mirror_atoms),
                "irreducibles": {k: list(v) for k, v in e.irreducibles.items()},
                "models": {mn: _model_json(m) for mn, m in e.models.items()},
            }
            for name, e in catalog.spaces.items()
        },
        "sequences": {
            name: {
                "space": r.space,
                "left": be.expr_to_str(r.left),
                "middle": be.expr_to_str(r.middle),
                "right": be.expr_to_str(r.right),
            }
            for name, r in catalog.sequences.items()
        },
        "fibrations": {
            name: {
                "total": f.total,
                "base": f.base,
                "fiber_dim": f.fiber_dim,
                "rules": [[list(t), e] for t, e in f.pushforward_rules.items()],
            }
            for name, f in catalog.fibrations.items()
        },
        "restrictions": [
            {"source": p.source, "target": p.target, "symbols": p.symbol_map}
            for p in catalog.restrictions.values()
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def catalog_from_json(path_or_text) -> Catalog:
    if isinstance(path_or_text, str) and path_or_text.lstrip().startswith("{"):
        doc = json.loads(path_or_text)
    else:
        with open(path_or_text, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    spaces = {}
    for name, e in doc["spaces"].items():
        spaces[name] = SpaceEntry(
            name=name,
            kind=e["kind"],
            host=e["host"],
            divisor_class=tuple(e["divisor_class"]) if e["divisor_class"] else None,
            mirror_atoms=frozenset(e["mirror_atoms"]),
            irreducibles={k: tuple(v) for k, v in e["irreducibles"].items()},
            models={mn: _model_from_json(m) for mn, m in e["models"].items()},
        )
    p = be.parse_bundle_expr
    sequences = {
        name: ExactSequenceRule(name, r["space"], p(r["left"]), p(r["middle"]), p(r["right"]))
        for name, r in doc["sequences"].items()
    }
    fibrations = {
        name: FibrationEntry(
            f["total"], f["base"], f["fiber_dim"], {tuple(t): e for t, e in f["rules"]}
        )
        for name, f in doc["fibrations"].items()
    }
    restrictions = {
        (p_["source"], p_["target"]): RestrictionPath(p_["source"], p_["target"], p_["symbols"])
        for p_ in doc["restrictions"]
    }
    return Catalog(spaces, sequences, fibrations, restrictions)
