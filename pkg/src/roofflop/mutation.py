"""Semiorthogonal-decomposition model, checked mutation steps, certificates.

An SOD is an ordered tuple of blocks living on one catalog space inside an
ambient context (blow-up exceptional divisor or hyperplane section).  Blocks
are shift-closed, so only twists are tracked.  Exactly one block may be
"unknown" (an unidentified admissible subcategory); it accumulates a formal
functor trace as it is mutated through explicit neighbours.

Every conditional step carries a justification list of computed vanishing
facts.  A step is rejected, with the offending pair attached, unless every
required graded Hom is exactly zero (or exactly C[0] for the mutation
rewrites).  Scripts are replayable line-oriented text; running one produces
a deterministic JSON certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from . import bundle_expr as be
from .bwb import GradedDim
from .sheafcalc import (
    AmbientContext,
    D4_BLOWUP,
    D4_HYPERPLANE,
    G2_BLOWUP,
    G2_HYPERPLANE,
    SheafObject,
    rhom,
)
from .spaces import Catalog, load_standard_catalog


class MutationError(Exception):
    """A rejected step; carries the blocking fact when one exists."""

    def __init__(self, message, fact=None):
        super().__init__(message)
        self.fact = fact


@dataclass(frozen=True)
class Block:
    objects: tuple = ()
    unknown_label: str = ""
    pending_functors: tuple = ()
    anchor: tuple | None = None  # (kind, a, b) board cell

    @property
    def is_unknown(self):
        return bool(self.unknown_label)

    def to_json(self):
        if self.is_unknown:
            return {
                "unknown": self.unknown_label,
                "trace": [list(t) if isinstance(t, tuple) else t for t in self.pending_functors],
            }
        out = {"objects": [str(o) for o in self.objects]}
        if self.anchor:
            out["anchor"] = list(self.anchor)
        return out


@dataclass(frozen=True)
class SOD:
    space: str
    ambient: AmbientContext
    blocks: tuple

    @property
    def serre_twist(self):
        return self.ambient.discrepancy

    @property
    def ambient_dim(self):
        return self.ambient.ambient_dim

    @property
    def unknown_index(self):
        for i, b in enumerate(self.blocks):
            if b.is_unknown:
                return i
        return None

    def explicit_objects(self):
        return [o for b in self.blocks if not b.is_unknown for o in b.objects]

    def to_json(self):
        return {
            "space": self.space,
            "ambient": self.ambient.to_json(),
            "serre_twist": self.serre_twist,
            "blocks": [b.to_json() for b in self.blocks],
        }


def _fact(a, b, hom, want="0"):
    ok = hom.is_exact and (hom.is_zero if want == "0" else hom == GradedDim.exact({0: 1}))
    return {"a": str(a), "b": str(b), "hom": hom.to_json(), "required": want, "ok": ok}


def _twist_object(obj: SheafObject, twist) -> SheafObject:
    return SheafObject(obj.space, be.normalize(be.Twist(obj.expr, twist)), obj.shift)


def _twist_anchor(anchor, twist):
    if anchor is None:
        return None
    kind, a, b = anchor
    return (kind, a + twist[0], b + twist[1])


def _cell_kind(n):
    return {1: "single", 2: "double"}.get(n, "quad")


# ---------------------------------------------------------------------------
# the step vocabulary


def serre_transport(sod: SOD, side: str, count: int = 1):
    """Carry blocks across the SOD with the Serre functor; unconditional.

    ``to_front`` moves the last block to the front ``count`` times, twisting
    by O(-k,-k); ``to_back`` is the inverse.
    """
    k = sod.serre_twist
    blocks = list(sod.blocks)
    for _ in range(count):
        if side == "to_front":
            blk = blocks[-1]
            if blk.is_unknown:
                raise MutationError("cannot Serre-transport the unknown block")
            tw = (-k, -k)
            moved = Block(
                objects=tuple(_twist_object(o, tw) for o in blk.objects),
                anchor=_twist_anchor(blk.anchor, tw),
            )
            blocks = [moved] + blocks[:-1]
        elif side == "to_back":
            blk = blocks[0]
            if blk.is_unknown:
                raise MutationError("cannot Serre-transport the unknown block")
            tw = (k, k)
            moved = Block(
                objects=tuple(_twist_object(o, tw) for o in blk.objects),
                anchor=_twist_anchor(blk.anchor, tw),
            )
            blocks = blocks[1:] + [moved]
        else:
            raise MutationError(f"unknown transport side {side!r}")
    return replace(sod, blocks=tuple(blocks)), []


def exchange_blocks(sod: SOD, i: int, catalog: Catalog | None = None):
    """Swap adjacent explicit blocks i, i+1 after checking full orthogonality.

    Justification: RHom(x, y) = 0 for every x in block i, y in block i+1
    (the opposite direction already vanishes in any SOD).
    """
    blocks = sod.blocks
    if not (0 <= i < len(blocks) - 1):
        raise MutationError(f"no adjacent pair at index {i}")
    b1, b2 = blocks[i], blocks[i + 1]
    if b1.is_unknown or b2.is_unknown:
        raise MutationError("exchange_blocks needs two explicit blocks")
    facts = []
    for x in b1.objects:
        for y in b2.objects:
            f = _fact(x, y, rhom(x, y, sod.ambient, catalog))
            facts.append(f)
            if not f["ok"]:
                raise MutationError(
                    f"exchange blocked: RHom({x}, {y}) = "
                    f"{rhom(x, y, sod.ambient, catalog).pretty()}",
                    fact=f,
                )
    new = blocks[:i] + (b2, b1) + blocks[i + 2:]
    return replace(sod, blocks=new), facts


def mutate_unknown(sod: SOD, direction: str, count: int = 1):
    """Move the unknown block past ``count`` adjacent explicit blocks.

    Mutation through an admissible subcategory always exists, so there is
    nothing to check; one formal functor tag (L or R with the full ordered
    object list) is appended to the trace.
    """
    u = sod.unknown_index
    if u is None:
        raise MutationError("SOD has no unknown block")
    blocks = list(sod.blocks)
    if direction == "left":
        lo = u - count
        if lo < 0:
            raise MutationError("not enough blocks to the left")
        passed = blocks[lo:u]
        if any(b.is_unknown for b in passed):
            raise MutationError("cannot mutate through the unknown block")
        tag = ("L", tuple(str(o) for b in passed for o in b.objects))
        unk = replace(blocks[u], pending_functors=blocks[u].pending_functors + (tag,))
        blocks[lo:u + 1] = [unk] + passed
    elif direction == "right":
        hi = u + count
        if hi >= len(blocks):
            raise MutationError("not enough blocks to the right")
        passed = blocks[u + 1:hi + 1]
        if any(b.is_unknown for b in passed):
            raise MutationError("cannot mutate through the unknown block")
        tag = ("R", tuple(str(o) for b in passed for o in b.objects))
        unk = replace(blocks[u], pending_functors=blocks[u].pending_functors + (tag,))
        blocks[u:hi + 1] = passed + [unk]
    else:
        raise MutationError(f"unknown mutation direction {direction!r}")
    return replace(sod, blocks=tuple(blocks)), []


def exchange_objects(sod: SOD, block: int, i: int, catalog: Catalog | None = None):
    """Swap adjacent objects i, i+1 inside an explicit block (checked)."""
    blocks = sod.blocks
    blk = blocks[block]
    if blk.is_unknown:
        raise MutationError("cannot reorder the unknown block")
    if not (0 <= i < len(blk.objects) - 1):
        raise MutationError(f"no adjacent object pair at {i} in block {block}")
    x, y = blk.objects[i], blk.objects[i + 1]
    hom = rhom(x, y, sod.ambient, catalog)
    f = _fact(x, y, hom)
    if not f["ok"]:
        raise MutationError(
            f"object exchange blocked: RHom({x}, {y}) = {hom.pretty()}", fact=f
        )
    objs = list(blk.objects)
    objs[i], objs[i + 1] = objs[i + 1], objs[i]
    new_blk = replace(blk, objects=tuple(objs))
    return replace(sod, blocks=blocks[:block] + (new_blk,) + blocks[block + 1:]), [f]


def rewrite_by_rule(sod: SOD, block: int, i: int, rule_name: str,
                    catalog: Catalog | None = None):
    """Left-mutate object i+1 through the line bundle at i, via a registered
    exact sequence.

    With RHom(mutator, target) = C[0] the mutation collapses the sequence:
    the pair (L, T) becomes (quotient, L).  With RHom = 0 the mutation is a
    plain transposition.  Anything else (or an interval) rejects the step.
    """
    catalog = catalog or load_standard_catalog()
    try:
        rule = catalog.sequences[rule_name]
    except KeyError:
        raise MutationError(f"no registered sequence {rule_name!r}") from None
    if rule.space != sod.space:
        raise MutationError(f"rule {rule_name} lives on {rule.space}, not {sod.space}")
    blk = sod.blocks[block]
    if blk.is_unknown or not (0 <= i < len(blk.objects) - 1):
        raise MutationError(f"no object pair at {i} in block {block}")
    mut, target = blk.objects[i], blk.objects[i + 1]
    from .sheafcalc import _twist_matching  # shared matcher

    twist = _twist_matching(rule.middle, target.expr)
    if twist is None:
        raise MutationError(f"{target} does not match the middle term of {rule_name}")
    expected_mut = be.normalize(be.Twist(rule.left, twist))
    if expected_mut != mut.expr:
        raise MutationError(
            f"mutator {mut} does not match {rule_name} (expected "
            f"{be.expr_to_str(expected_mut)})"
        )
    hom = rhom(mut, target, sod.ambient, catalog)
    one = GradedDim.exact({0: 1})
    if hom.is_exact and hom == one:
        result = SheafObject(sod.space, be.normalize(be.Twist(rule.right, twist)), target.shift)
        new_pair = (result, mut)
        f = _fact(mut, target, hom, want="C[0]")
    elif hom.is_zero:
        new_pair = (target, mut)
        f = _fact(mut, target, hom)
    else:
        f = _fact(mut, target, hom, want="C[0]")
        raise MutationError(
            f"rewrite blocked: RHom({mut}, {target}) = {hom.pretty()}", fact=f
        )
    objs = blk.objects[:i] + new_pair + blk.objects[i + 2:]
    new_blk = replace(blk, objects=objs)
    return replace(sod, blocks=sod.blocks[:block] + (new_blk,) + sod.blocks[block + 1:]), [f]


def merge_blocks(sod: SOD, i: int, count: int):
    """Regroup ``count`` adjacent explicit blocks into one; unconditional."""
    blocks = sod.blocks
    if count < 2 or i < 0 or i + count > len(blocks):
        raise MutationError(f"cannot merge {count} blocks at {i}")
    merged = blocks[i:i + count]
    if any(b.is_unknown for b in merged):
        raise MutationError("cannot merge across the unknown block")
    objs = tuple(o for b in merged for o in b.objects)
    anchor_holder = max(merged, key=lambda b: len(b.objects))
    anchor = anchor_holder.anchor
    if anchor is not None:
        anchor = (_cell_kind(len(objs)), anchor[1], anchor[2])
    new_blk = Block(objects=objs, anchor=anchor)
    return replace(sod, blocks=blocks[:i] + (new_blk,) + blocks[i + count:]), []


STEP_KINDS = {
    "serre-to-front": (serre_transport, lambda args: ("to_front", int(args[0]))),
    "serre-to-back": (serre_transport, lambda args: ("to_back", int(args[0]))),
    "unknown-left": (mutate_unknown, lambda args: ("left", int(args[0]))),
    "unknown-right": (mutate_unknown, lambda args: ("right", int(args[0]))),
    "exchange": (exchange_blocks, lambda args: (int(args[0]),)),
    "exchange-objects": (exchange_objects, lambda args: (int(args[0]), int(args[1]))),
    "rewrite": (rewrite_by_rule, lambda args: (int(args[0]), int(args[1]), args[2])),
    "merge": (merge_blocks, lambda args: (int(args[0]), int(args[1]))),
}

_NEEDS_CATALOG = {"exchange", "exchange-objects", "rewrite"}


def apply_step(sod: SOD, kind: str, args, catalog: Catalog | None = None):
    """Dispatch one step; returns (new_sod, facts)."""
    try:
        fn, conv = STEP_KINDS[kind]
    except KeyError:
        raise MutationError(f"unknown step kind {kind!r}") from None
    params = conv([str(a) for a in args])
    if kind in _NEEDS_CATALOG:
        return fn(sod, *params, catalog=catalog)
    return fn(sod, *params)


def validate_sod(sod: SOD, catalog: Catalog | None = None):
    """Check semiorthogonality of every explicit pair (later, earlier).

    Returns None if consistent, else the first failing fact.
    """
    objs = []
    for b in sod.blocks:
        if b.is_unknown:
            objs.append(None)
        else:
            objs.extend(b.objects)
    flat = [o for o in objs if o is not None]
    if len(flat) > 48:
        raise MutationError("SOD too large to validate")
    for j in range(len(flat)):
        for i in range(j):
            hom = rhom(flat[j], flat[i], sod.ambient, catalog)
            if not (hom.is_exact and hom.is_zero):
                return _fact(flat[j], flat[i], hom)
    return None


def recheck_adjacent(sod: SOD, lo: int, hi: int, catalog: Catalog | None = None):
    """Re-verify RHom(later, earlier) = 0 for adjacent explicit pairs in a window."""
    bad = []
    for i in range(max(0, lo), min(len(sod.blocks) - 1, hi) + 1):
        b1, b2 = sod.blocks[i], sod.blocks[i + 1]
        if b1.is_unknown or b2.is_unknown:
            continue
        for y in b2.objects:
            for x in b1.objects:
                hom = rhom(y, x, sod.ambient, catalog)
                if not (hom.is_exact and hom.is_zero):
                    bad.append(_fact(y, x, hom))
    return bad


# ---------------------------------------------------------------------------
# presets: the starting chessboards


@dataclass(frozen=True)
class Preset:
    name: str
    space: str
    ambient: AmbientContext
    unknown_label: str
    pull_tag: str
    push_tag: str
    side: str  # "plus" | "minus"
    double_symbol: str
    layout: tuple  # tuple of (kind, a, b)


def _d4_plus_layout():
    cells = []
    for b in (0, 1, 2):
        cells += [
            ("single", b - 2, b), ("single", b - 1, b),
            ("double", b, b), ("double", b + 1, b),
            ("single", b + 2, b), ("single", b + 3, b),
        ]
    return tuple(cells)


def _d4_minus_layout():
    cells = []
    for a in (0, 1, 2):
        cells += [
            ("single", a, a - 3), ("single", a, a - 2),
            ("double", a, a - 1), ("double", a, a),
            ("single", a, a + 1), ("single", a, a + 2),
        ]
    return tuple(cells)


def _g2_y_layout():
    cells = []
    for b in (0, 1):
        cells += [
            ("single", b - 2, b), ("single", b - 1, b),
            ("double", b, b),
            ("single", b + 1, b), ("single", b + 2, b),
        ]
    return tuple(cells)


def _g2_yprime_layout():
    cells = []
    for a in (0, 1):
        cells += [
            ("single", a, a - 2), ("single", a, a - 1),
            ("double", a, a),
            ("single", a, a + 1), ("single", a, a + 2),
        ]
    return tuple(cells)


PRESETS = {
    "d4_plus": Preset("d4_plus", "E_D4", D4_BLOWUP, "D(X+)", "pi_+^*", "pi_+*",
                      "plus", "U+^v", _d4_plus_layout()),
    "d4_minus": Preset("d4_minus", "E_D4", D4_BLOWUP, "D(X-)", "pi_-^*", "pi_-*",
                       "minus", "U-^v", _d4_minus_layout()),
    "g2_y": Preset("g2_y", "R", G2_BLOWUP, "D(Y)", "pi^*", "pi_*",
                   "plus", "S", _g2_y_layout()),
    "g2_yprime": Preset("g2_yprime", "R", G2_BLOWUP, "D(Y')", "pi'^*", "pi'_*",
                        "minus", "S'", _g2_yprime_layout()),
    "k3_d4_plus": Preset("k3_d4_plus", "E_D4", D4_HYPERPLANE, "D(M+)", "tau_+^*", "tau_+*",
                         "plus", "U+^v", _d4_plus_layout()),
    "k3_d4_minus": Preset("k3_d4_minus", "E_D4", D4_HYPERPLANE, "D(M-)", "tau_-^*", "tau_-*",
                          "minus", "U-^v", _d4_minus_layout()),
    "k3_g2_n": Preset("k3_g2_n", "R", G2_HYPERPLANE, "D(N)", "tau^*", "tau_*",
                      "plus", "S", _g2_y_layout()),
    "k3_g2_nprime": Preset("k3_g2_nprime", "R", G2_HYPERPLANE, "D(N')", "tau'^*", "tau'_*",
                           "minus", "S'", _g2_yprime_layout()),
}


def preset_sod(name: str) -> SOD:
    try:
        p = PRESETS[name]
    except KeyError:
        raise MutationError(f"unknown preset {name!r}") from None
    blocks = [Block(unknown_label=p.unknown_label)]
    for kind, a, b in p.layout:
        line = SheafObject(p.space, be.Line((a, b)))
        if kind == "single":
            blocks.append(Block(objects=(line,), anchor=("single", a, b)))
        else:
            spin = SheafObject(
                p.space, be.normalize(be.Twist(be.parse_bundle_expr(p.double_symbol), (a, b)))
            )
            blocks.append(Block(objects=(line, spin), anchor=("double", a, b)))
    return SOD(space=p.space, ambient=p.ambient, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# proof scripts


@dataclass
class Script:
    name: str
    space: str
    ambient_mode: str
    preset: str
    steps: list
    compare_with: str | None = None


def parse_script(text: str, name: str) -> Script:
    space = ambient_mode = preset = None
    steps = []
    compare_with = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "space":
            space = args[0]
        elif head == "ambient":
            ambient_mode = args[0]
        elif head == "sod":
            if len(args) != 2 or args[0] != "preset":
                raise MutationError(f"{name}:{lineno}: expected 'sod preset <name>'")
            preset = args[1]
        elif head == "step":
            if not args or args[0] not in STEP_KINDS:
                raise MutationError(f"{name}:{lineno}: unknown step {args[:1]}")
            steps.append((args[0], args[1:]))
        elif head == "compare-with":
            compare_with = args[0]
        else:
            raise MutationError(f"{name}:{lineno}: unknown directive {head!r}")
    if preset is None:
        raise MutationError(f"{name}: missing 'sod preset' directive")
    p = PRESETS.get(preset)
    if p is None:
        raise MutationError(f"{name}: unknown preset {preset!r}")
    if space is not None and space != p.space:
        raise MutationError(f"{name}: space {space} does not match preset {preset}")
    if ambient_mode is not None and ambient_mode != p.ambient.mode:
        raise MutationError(f"{name}: ambient {ambient_mode} does not match preset")
    return Script(name, p.space, p.ambient.mode, preset, steps, compare_with)


@dataclass
class Certificate:
    script_name: str
    space: str
    ambient: dict
    initial_sod: dict
    steps: list
    final_sod: dict
    comparison: dict | None
    functor_trace: list | None
    verdict: str
    relative_stamp: dict | None = None

    def to_json_obj(self):
        return {
            "script_name": self.script_name,
            "space": self.space,
            "ambient": self.ambient,
            "initial_sod": self.initial_sod,
            "steps": self.steps,
            "final_sod": self.final_sod,
            "comparison": self.comparison,
            "functor_trace": self.functor_trace,
            "relative_stamp": self.relative_stamp,
            "verdict": self.verdict,
        }

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_json_obj(), indent=2, sort_keys=True) + "\n").encode()


def _execute(script: Script, catalog: Catalog | None):
    sod = preset_sod(script.preset)
    initial = sod.to_json()
    records = []
    for idx, (kind, args) in enumerate(script.steps):
        try:
            sod, facts = apply_step(sod, kind, args, catalog)
        except MutationError as err:
            raise MutationError(
                f"{script.name}: step {idx} ({kind} {' '.join(args)}) rejected: {err}",
                fact=err.fact,
            ) from None
        records.append({"index": idx, "kind": kind, "args": list(args), "facts": facts})
    return sod, initial, records


def _invert_tag(tag):
    kind, objs = tag
    return ("R" if kind == "L" else "L", objs)


def _combined_trace(plus_preset: Preset, plus_tags, minus_preset: Preset, minus_tags):
    # the equivalence reads: push forward after undoing the partner script's
    # mutations, applied to the pulled-back category mutated by this script
    trace = [plus_preset.pull_tag]
    trace += [[t[0], list(t[1])] for t in plus_tags]
    trace += [[t[0], list(t[1])] for t in (_invert_tag(t) for t in reversed(minus_tags))]
    trace.append(minus_preset.push_tag)
    return trace


def _inversions(seq_a, seq_b):
    """Pairs that occur in opposite order in two equal-multiset sequences."""
    pos_b = {x: i for i, x in enumerate(seq_b)}
    out = []
    for i in range(len(seq_a)):
        for j in range(i + 1, len(seq_a)):
            if pos_b[seq_a[i]] > pos_b[seq_a[j]]:
                out.append((seq_a[i], seq_a[j]))
    return out


def compare_sods(sod_a: SOD, sod_b: SOD, catalog: Catalog | None = None):
    """Blockwise comparison of two terminal SODs.

    Blocks must agree position by position up to permutations justified by
    two-sided orthogonality (each inverted pair must have vanishing Hom in
    both directions).  Runs of adjacent explicit blocks with equal combined
    object multisets are regrouped and compared together.
    """
    report = {"blocks": [], "verdict": "PASS"}
    if len(sod_a.blocks) != len(sod_b.blocks):
        report["verdict"] = "FAIL"
        report["reason"] = (
            f"block counts differ: {len(sod_a.blocks)} vs {len(sod_b.blocks)}"
        )
        return report

    def fail(entry, reason):
        entry["ok"] = False
        entry["reason"] = reason
        report["blocks"].append(entry)
        report["verdict"] = "FAIL"

    def justify_permutation(entry, objs_a, objs_b):
        names_a = [str(o) for o in objs_a]
        names_b = [str(o) for o in objs_b]
        by_name = {str(o): o for o in objs_a + objs_b}
        entry["justifications"] = []
        for x, y in _inversions(names_a, names_b):
            f1 = _fact(by_name[x], by_name[y], rhom(by_name[x], by_name[y], sod_a.ambient, catalog))
            f2 = _fact(by_name[y], by_name[x], rhom(by_name[y], by_name[x], sod_a.ambient, catalog))
            entry["justifications"] += [f1, f2]
            if not (f1["ok"] and f2["ok"]):
                return False
        return True

    i = 0
    n = len(sod_a.blocks)
    while i < n:
        ba, bb = sod_a.blocks[i], sod_b.blocks[i]
        if ba.is_unknown != bb.is_unknown:
            fail({"block": i}, "unknown blocks are not aligned")
            return report
        if ba.is_unknown:
            report["blocks"].append(
                {
                    "block": i,
                    "ok": True,
                    "kind": "unknown",
                    "left": ba.unknown_label,
                    "right": bb.unknown_label,
                }
            )
            i += 1
            continue
        names_a = [str(o) for o in ba.objects]
        names_b = [str(o) for o in bb.objects]
        if names_a == names_b:
            report["blocks"].append({"block": i, "ok": True, "kind": "equal"})
            i += 1
            continue
        if sorted(names_a) == sorted(names_b):
            entry = {"block": i, "kind": "permuted"}
            if justify_permutation(entry, list(ba.objects), list(bb.objects)):
                entry["ok"] = True
                report["blocks"].append(entry)
            else:
                fail(entry, "unjustified transposition")
                return report
            i += 1
            continue
        # try to regroup a short run of blocks with equal combined multiset
        found = False
        for j in range(i + 1, min(i + 4, n)):
            if any(
                blk.is_unknown for blk in sod_a.blocks[i:j + 1] + sod_b.blocks[i:j + 1]
            ):
                break
            run_a = [o for blk in sod_a.blocks[i:j + 1] for o in blk.objects]
            run_b = [o for blk in sod_b.blocks[i:j + 1] for o in blk.objects]
            if sorted(str(o) for o in run_a) == sorted(str(o) for o in run_b):
                entry = {"block": i, "kind": "regrouped", "span": j - i + 1}
                if justify_permutation(entry, run_a, run_b):
                    entry["ok"] = True
                    report["blocks"].append(entry)
                    i = j + 1
                    found = True
                else:
                    fail(entry, "unjustified transposition in regrouped run")
                    return report
                break
        if not found:
            fail({"block": i}, f"objects differ: {names_a} vs {names_b}")
            return report
    return report


def run_script(path, catalog: Catalog | None = None) -> Certificate:
    """Execute a proof script, compare with its partner, emit a certificate."""
    import os

    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = os.path.splitext(os.path.basename(str(path)))[0]
    script = parse_script(text, name)
    final, initial, records = _execute(script, catalog)

    comparison = None
    trace = None
    verdict = "PASS"
    if script.compare_with:
        other_path = os.path.join(os.path.dirname(os.path.abspath(str(path))), script.compare_with)
        with open(other_path, "r", encoding="utf-8") as fh:
            other_text = fh.read()
        other_name = os.path.splitext(os.path.basename(script.compare_with))[0]
        other = parse_script(other_text, other_name)
        if other.compare_with:
            raise MutationError(f"{other_name}: nested compare-with is not allowed")
        other_final, _, other_records = _execute(other, catalog)
        comparison = compare_sods(final, other_final, catalog)
        comparison["other_script"] = other_name
        comparison["other_steps"] = len(other_records)
        verdict = comparison["verdict"]
        plus_tags = final.blocks[final.unknown_index].pending_functors
        minus_tags = other_final.blocks[other_final.unknown_index].pending_functors
        trace = _combined_trace(
            PRESETS[script.preset], plus_tags, PRESETS[other.preset], minus_tags
        )

    return Certificate(
        script_name=name,
        space=script.space,
        ambient=preset_sod(script.preset).ambient.to_json(),
        initial_sod=initial,
        steps=records,
        final_sod=final.to_json(),
        comparison=comparison,
        functor_trace=trace,
        verdict=verdict,
    )


def relative_stamp(cert: Certificate) -> Certificate:
    """Annotate a PASS certificate with the fiberwise-validity statement.

    Every fact in the certificate is a graded Hom between objects that
    restrict to exceptional objects on each fiber of a locally trivial
    family, and vanishing was checked fiberwise; the same script therefore
    certifies the relative statement over any smooth base.  A formal stamp,
    not a new computation; certificates that did not PASS are returned
    unchanged.
    """
    if cert.verdict != "PASS":
        return cert
    fact_count = sum(len(s["facts"]) for s in cert.steps)
    stamp = {
        "statement": (
            "all checked facts are fiberwise: the script applies verbatim to the "
            "relative decomposition over any smooth base"
        ),
        "conditions": {
            "1": "each object in every checked pair is exceptional on every fiber",
            "2": "each recorded vanishing RHom holds fiber by fiber",
        },
        "fact_count": fact_count,
        "facts": "steps[*].facts",
    }
    return replace(cert, relative_stamp=stamp)
