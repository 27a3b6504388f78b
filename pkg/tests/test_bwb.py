"""Bott cohomology and graded Hom of irreducible bundles."""

import pytest

from roofflop.bwb import (
    GradedDim,
    HomogeneousSpace,
    IrrBundle,
    bott_cohomology,
    bundle_det,
    bundle_rank,
    graded_h_irr,
    rhom_irr,
    triangle_cone,
    triangle_total,
)
from roofflop.rootsys import RootSystemError, build_root_system, weyl_dim
from roofflop.spaces import load_standard_catalog


@pytest.fixture(scope="module")
def catalog():
    return load_standard_catalog()


def space(catalog, name):
    return catalog.space(name).primary.eval_space


# -- GradedDim --------------------------------------------------------------


def test_graded_dim_basics():
    g = GradedDim.exact({0: 1, 3: 2})
    assert g.is_exact and not g.is_zero
    assert g.euler() == 1 - 2
    assert g.shifted(1).dims == {-1: 1, 2: 2}
    assert (g + GradedDim.exact({0: 4})).dims == {0: 5, 3: 2}
    assert GradedDim.zero().is_zero
    assert GradedDim.exact({0: 1}).pretty() == "C[0]"


def test_triangle_total_forced():
    sub = GradedDim.exact({0: 1})
    quot = GradedDim.exact({2: 3})
    total = triangle_total(sub, quot)
    assert total.is_exact and total.dims == {0: 1, 2: 3}


def test_triangle_total_interval():
    # a connecting map quot^0 -> sub^1 may cancel
    sub = GradedDim.exact({1: 2})
    quot = GradedDim.exact({0: 3})
    total = triangle_total(sub, quot)
    assert not total.is_exact
    assert total.upper == {0: 3, 1: 2}
    assert total.lower == {0: 1}


def test_triangle_cone_forced():
    first = GradedDim.exact({2: 1})
    second = GradedDim.exact({0: 1})
    cone = triangle_cone(first, second)
    assert cone.is_exact and cone.dims == {0: 1, 1: 1}


def test_triangle_cone_cancel():
    g = GradedDim.exact({0: 1})
    cone = triangle_cone(g, g)
    assert not cone.is_exact
    assert cone.upper == {0: 1, -1: 1} and cone.lower == {}


# -- Bott's algorithm -------------------------------------------------------


def test_p1_line_bundles():
    p1 = HomogeneousSpace("P1", build_root_system("A", 1), ())
    assert p1.dimension == 1
    assert bott_cohomology(IrrBundle(p1, (-1,))) == {}  # rho-shift lands on the wall
    assert bott_cohomology(IrrBundle(p1, (0,))) == {0: {(0,): 1}}
    assert bott_cohomology(IrrBundle(p1, (-2,))) == {1: {(0,): 1}}
    assert graded_h_irr(p1, (3,)).dims == {0: 4}


def test_q6_structure_sheaf_and_canonical(catalog):
    q6 = space(catalog, "Q6")
    assert graded_h_irr(q6, (0, 0, 0, 0)).dims == {0: 1}
    # canonical bundle of the six-dimensional quadric is O(-6)
    assert catalog.space("Q6").canonical_twist == (-6,)
    assert graded_h_irr(q6, (-6, 0, 0, 0)).dims == {6: 1}


def test_levi_dominance_enforced(catalog):
    q6 = space(catalog, "Q6")
    with pytest.raises(RootSystemError):
        IrrBundle(q6, (0, -1, 0, 0))


@pytest.mark.parametrize("name", ["S_plus", "S_minus", "E_D4", "Q6", "FlagB3", "Q5"])
def test_single_degree_and_euler(catalog, name):
    entry = catalog.space(name)
    sp = entry.primary.eval_space
    rs = sp.root_system
    lines = entry.primary.twist_weights
    weights = [(0,) * rs.rank] + list(entry.irreducibles.values())
    for w in weights:
        for t in range(-8, 9):
            tw = tuple(a + t * b for a, b in zip(w, lines[0]))
            res = bott_cohomology(IrrBundle(sp, tw))
            assert len(res) <= 1
            h = graded_h_irr(sp, tw)
            if res:
                (deg, content), = res.items()
                (out_w, mult), = content.items()
                assert mult == 1
                assert h.euler() == (-1) ** deg * weyl_dim(rs, out_w)
            else:
                assert h.is_zero


def test_rhom_irr_identity(catalog):
    sp = space(catalog, "S_plus")
    o = IrrBundle(sp, (0, 0, 0, 0))
    assert rhom_irr(o, o).dims == {0: 1}


def test_rhom_irr_twist_vanishing(catalog):
    # O(1) against O on the six-quadric presented as a spinor variety
    sp = space(catalog, "S_plus")
    assert rhom_irr(IrrBundle(sp, (0, 0, 0, 1)), IrrBundle(sp, (0, 0, 0, 0))).is_zero


def test_rhom_irr_spinor_exceptional(catalog):
    # hand-run Bott on each summand of S+^v (x) S+: only the trivial
    # character survives, in degree zero
    q6 = space(catalog, "Q6")
    s = IrrBundle(q6, (0, 0, 0, 1))
    assert rhom_irr(s, s).dims == {0: 1}
    assert s.rank == 4


def test_rhom_irr_space_mismatch(catalog):
    a = IrrBundle(space(catalog, "S_plus"), (0, 0, 0, 0))
    b = IrrBundle(space(catalog, "Q6"), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        rhom_irr(a, b)


def test_serre_duality_on_catalog_spaces(catalog):
    for name in ["S_plus", "S_minus", "E_D4", "Q6", "FlagB3", "Q5"]:
        entry = catalog.space(name)
        sp = entry.primary.eval_space
        d = entry.dimension
        omega = IrrBundle(sp, sp.canonical)
        struct = IrrBundle(sp, (0,) * sp.root_system.rank)
        lines = entry.primary.twist_weights
        for w in list(entry.irreducibles.values()) + [struct.levi_weight]:
            for t in range(-6, 7):
                tw = tuple(a + t * b for a, b in zip(w, lines[0]))
                f = IrrBundle(sp, tw)
                lhs = rhom_irr(struct, f).dims
                rhs = rhom_irr(f, omega).dims
                assert {d - k: v for k, v in lhs.items()} == rhs, (name, tw)


def test_tautological_bundle_determinants(catalog):
    # det U = O(-2) on either spinor variety: the Pluecker class restricts
    # to twice the spinor class
    sp = catalog.space("S_plus")
    u = sp.irreducibles["U+"]
    det = bundle_det(sp.primary.eval_space, u)
    assert det == tuple(-2 * c for c in sp.primary.twist_weights[0])
    assert bundle_rank(sp.primary.eval_space, u) == 4
