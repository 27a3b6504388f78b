"""Exact root-system arithmetic for the simple types A, B, C, D and G2.

Weights are plain integer tuples in the fundamental-weight basis, so every
computation here is exact.  Orthogonal (epsilon) coordinates are kept
internally as ``Fraction`` vectors for inner products; spinor weights of the
B/D series are half-integral there but never in the fundamental basis.

Node numbering is Bourbaki throughout.  For D4 the spinor nodes are 3 and 4
and the vector node is 1; for B3 node 3 is the short (spinor) node.

Levi sub-systems are sorted tuples of simple-root indices (1-based).
``levi=None`` means the full system.  The representation-theoretic routines
(Weyl dimension, Freudenthal multiplicities, Klimyk tensor decomposition)
accept a Levi argument and simply carry the ambient central torus character
along, which is what parabolic geometry needs: a weight's coordinates on
nodes outside the Levi record the twist exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Weight = tuple  # integer coordinates in the fundamental-weight basis

VALID_TYPES = ("A", "B", "C", "D", "G2")


class RootSystemError(ValueError):
    pass


def _eps_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _simple_roots_eps(cartan_type, rank):
    if cartan_type == "A":
        n = rank + 1
        return [
            tuple(Fraction(1 if k == i else (-1 if k == i + 1 else 0)) for k in range(n))
            for i in range(rank)
        ]
    if cartan_type in ("B", "C", "D"):
        n = rank
        roots = [
            tuple(Fraction(1 if k == i else (-1 if k == i + 1 else 0)) for k in range(n))
            for i in range(rank - 1)
        ]
        if cartan_type == "B":
            roots.append(tuple(Fraction(1 if k == rank - 1 else 0) for k in range(n)))
        elif cartan_type == "C":
            roots.append(tuple(Fraction(2 if k == rank - 1 else 0) for k in range(n)))
        else:
            last = [Fraction(0)] * n
            last[rank - 2] = Fraction(1)
            last[rank - 1] = Fraction(1)
            roots.append(tuple(last))
        return roots
    if cartan_type == "G2":
        return [
            (Fraction(1), Fraction(-1), Fraction(0)),
            (Fraction(-2), Fraction(1), Fraction(1)),
        ]
    raise RootSystemError(f"unknown Cartan type {cartan_type!r}")


def _positive_roots_eps(cartan_type, rank):
    def e(i, n, c=1):
        return tuple(Fraction(c if k == i else 0) for k in range(n))

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(u, v):
        return tuple(a - b for a, b in zip(u, v))

    out = []
    if cartan_type == "A":
        n = rank + 1
        for i in range(n):
            for j in range(i + 1, n):
                out.append(sub(e(i, n), e(j, n)))
    elif cartan_type in ("B", "C", "D"):
        n = rank
        for i in range(n):
            for j in range(i + 1, n):
                out.append(sub(e(i, n), e(j, n)))
                out.append(add(e(i, n), e(j, n)))
        if cartan_type == "B":
            out.extend(e(i, n) for i in range(n))
        elif cartan_type == "C":
            out.extend(e(i, n, 2) for i in range(n))
    elif cartan_type == "G2":
        a1, a2 = _simple_roots_eps("G2", 2)
        combos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        for p, q in combos:
            out.append(tuple(p * x + q * y for x, y in zip(a1, a2)))
    else:
        raise RootSystemError(f"unknown Cartan type {cartan_type!r}")
    return out


def _fundamental_eps(cartan_type, rank):
    if cartan_type == "A":
        n = rank + 1
        ws = []
        for i in range(1, rank + 1):
            w = [Fraction(1) if k < i else Fraction(0) for k in range(n)]
            shift = Fraction(i, n)
            ws.append(tuple(x - shift for x in w))
        return ws
    if cartan_type == "B":
        n = rank
        ws = []
        for i in range(1, rank):
            ws.append(tuple(Fraction(1) if k < i else Fraction(0) for k in range(n)))
        ws.append(tuple(Fraction(1, 2) for _ in range(n)))
        return ws
    if cartan_type == "C":
        n = rank
        return [
            tuple(Fraction(1) if k < i else Fraction(0) for k in range(n))
            for i in range(1, rank + 1)
        ]
    if cartan_type == "D":
        n = rank
        ws = []
        for i in range(1, rank - 1):
            ws.append(tuple(Fraction(1) if k < i else Fraction(0) for k in range(n)))
        half = Fraction(1, 2)
        ws.append(tuple(half if k < rank - 1 else -half for k in range(n)))
        ws.append(tuple(half for _ in range(n)))
        return ws
    if cartan_type == "G2":
        return [
            (Fraction(0), Fraction(-1), Fraction(1)),
            (Fraction(-1), Fraction(-1), Fraction(2)),
        ]
    raise RootSystemError(f"unknown Cartan type {cartan_type!r}")


def _solve_exact(matrix, rhs):
    """Solve M x = rhs over the rationals (M square, invertible)."""
    n = len(matrix)
    aug = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class RootSystem:
    """Immutable root-system data; build through :func:`build_root_system`."""

    def __init__(self, cartan_type, rank):
        if cartan_type not in VALID_TYPES:
            raise RootSystemError(f"unknown Cartan type {cartan_type!r}")
        if cartan_type == "G2":
            if rank != 2:
                raise RootSystemError("G2 has rank 2")
        elif cartan_type == "D" and rank < 3:
            raise RootSystemError("type D needs rank >= 3")
        elif cartan_type in ("B", "C") and rank < 2:
            raise RootSystemError(f"type {cartan_type} needs rank >= 2")
        elif rank < 1:
            raise RootSystemError("rank must be positive")

        self.cartan_type = cartan_type
        self.rank = rank
        self.key = (cartan_type, rank)

        self._simple_eps = _simple_roots_eps(cartan_type, rank)
        self._pos_eps = _positive_roots_eps(cartan_type, rank)
        self._fund_eps = _fundamental_eps(cartan_type, rank)

        # cartan_matrix[i][j] = <alpha_j, alpha_i^vee>; column j holds the
        # fundamental coordinates of alpha_j.
        self.cartan_matrix = tuple(
            tuple(
                int(2 * _eps_dot(self._simple_eps[j], self._simple_eps[i])
                    / _eps_dot(self._simple_eps[i], self._simple_eps[i]))
                for j in range(rank)
            )
            for i in range(rank)
        )
        self.simple_roots = tuple(
            tuple(self.cartan_matrix[i][j] for i in range(rank)) for j in range(rank)
        )
        self.positive_roots = tuple(self._fund_coords(v) for v in self._pos_eps)
        # expansion of each positive root in the simple-root basis
        cols = [[self.cartan_matrix[i][j] for j in range(rank)] for i in range(rank)]
        self._pos_simple = tuple(
            tuple(int(x) for x in _solve_exact(cols, root)) for root in self.positive_roots
        )
        self.rho = tuple(1 for _ in range(rank))
        self._gram = tuple(
            tuple(_eps_dot(self._fund_eps[i], self._fund_eps[j]) for j in range(rank))
            for i in range(rank)
        )

    # -- coordinates ----------------------------------------------------

    def _fund_coords(self, eps_vec):
        out = []
        for a in self._simple_eps:
            c = 2 * _eps_dot(eps_vec, a) / _eps_dot(a, a)
            if c.denominator != 1:
                raise RootSystemError(f"vector {eps_vec} is not in the weight lattice")
            out.append(int(c))
        return tuple(out)

    def weight_to_epsilon(self, w):
        n = len(self._fund_eps[0])
        out = [Fraction(0)] * n
        for c, vec in zip(w, self._fund_eps):
            for k in range(n):
                out[k] += c * vec[k]
        return tuple(out)

    def epsilon_to_weight(self, eps_vec):
        return self._fund_coords(tuple(Fraction(x) for x in eps_vec))

    def inner(self, w1, w2):
        """W-invariant inner product of two weights (fundamental coords)."""
        total = Fraction(0)
        for i, a in enumerate(w1):
            if a == 0:
                continue
            for j, b in enumerate(w2):
                if b == 0:
                    continue
                total += a * b * self._gram[i][j]
        return total

    def __repr__(self):
        return f"RootSystem({self.cartan_type}{self.rank})"

    # -- Levi bookkeeping ------------------------------------------------

    def levi_nodes(self, levi):
        if levi is None:
            return tuple(range(1, self.rank + 1))
        nodes = tuple(sorted(set(levi)))
        if any(i < 1 or i > self.rank for i in nodes):
            raise RootSystemError(f"invalid Levi nodes {levi}")
        return nodes

    @lru_cache(maxsize=None)
    def _levi_pos_idx(self, nodes):
        keep = set(nodes)
        out = []
        for k, expansion in enumerate(self._pos_simple):
            support = {i + 1 for i, c in enumerate(expansion) if c != 0}
            if support <= keep:
                out.append(k)
        return tuple(out)

    def levi_positive_roots(self, levi=None):
        nodes = self.levi_nodes(levi)
        return tuple(self.positive_roots[k] for k in self._levi_pos_idx(nodes))

    @lru_cache(maxsize=None)
    def _levi_rho_eps(self, nodes):
        idx = self._levi_pos_idx(nodes)
        n = len(self._pos_eps[0])
        out = [Fraction(0)] * n
        for k in idx:
            for c in range(n):
                out[c] += self._pos_eps[k][c]
        return tuple(x / 2 for x in out)


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Construct (and memoize) the root system of the given type and rank."""
    return RootSystem(cartan_type, rank)


# ---------------------------------------------------------------------------
# Weyl-group sorting


def _to_dominant(rs, mu, nodes):
    """Greedy reflection sort into the (closed) dominant chamber of the Levi.

    Returns (number of reflections applied, sorted weight).  For regular
    weights the count equals the length of the moving Weyl element.
    """
    mu = list(mu)
    length = 0
    cols = rs.simple_roots
    moved = True
    while moved:
        moved = False
        for i in nodes:
            c = mu[i - 1]
            if c < 0:
                alpha = cols[i - 1]
                for k in range(rs.rank):
                    mu[k] -= c * alpha[k]
                length += 1
                moved = True
    return length, tuple(mu)


def dominant_conjugate(rs: RootSystem, mu, levi=None):
    """Sort ``mu`` into the dominant chamber.

    Returns ``None`` when ``mu`` lies on a wall (it pairs to zero with some
    positive root of the chosen sub-system), otherwise the pair
    ``(w_length, dominant_weight)``.
    """
    nodes = rs.levi_nodes(levi)
    length, dom = _to_dominant(rs, mu, nodes)
    if any(dom[i - 1] == 0 for i in nodes):
        return None
    return length, dom


def dual_weight(rs: RootSystem, lam, levi=None):
    """Highest weight of the dual of the irreducible with highest weight lam."""
    nodes = rs.levi_nodes(levi)
    _, dom = _to_dominant(rs, tuple(-c for c in lam), nodes)
    return dom


def _check_dominant(rs, lam, nodes, what):
    bad = [i for i in nodes if lam[i - 1] < 0]
    if bad:
        raise RootSystemError(f"{what}: weight {lam} is not dominant on nodes {bad}")


def weyl_dim(rs: RootSystem, lam, levi=None) -> int:
    """Dimension of the irreducible with highest weight ``lam`` (Weyl formula)."""
    nodes = rs.levi_nodes(levi)
    _check_dominant(rs, lam, nodes, "weyl_dim")
    return _weyl_dim_cached(rs, nodes, tuple(lam))


@lru_cache(maxsize=None)
def _weyl_dim_cached(rs, nodes, lam):
    rho_eps = rs._levi_rho_eps(nodes)
    lam_eps = rs.weight_to_epsilon(lam)
    shifted = tuple(a + b for a, b in zip(lam_eps, rho_eps))
    num = Fraction(1)
    den = Fraction(1)
    for k in rs._levi_pos_idx(nodes):
        alpha = rs._pos_eps[k]
        num *= _eps_dot(shifted, alpha)
        den *= _eps_dot(rho_eps, alpha)
    dim = num / den
    assert dim.denominator == 1 and dim > 0
    return int(dim)


def freudenthal_multiplicities(rs: RootSystem, lam, levi=None):
    """Weight multiplicities of the irreducible V_lam, by Freudenthal's recursion."""
    nodes = rs.levi_nodes(levi)
    _check_dominant(rs, lam, nodes, "freudenthal_multiplicities")
    return dict(_freudenthal_cached(rs, nodes, tuple(lam)))


@lru_cache(maxsize=None)
def _freudenthal_cached(rs, nodes, lam):
    pos_idx = rs._levi_pos_idx(nodes)
    pos_eps = [rs._pos_eps[k] for k in pos_idx]
    pos_fund = [rs.positive_roots[k] for k in pos_idx]
    rho_eps = rs._levi_rho_eps(nodes)

    eps_cache = {lam: rs.weight_to_epsilon(lam)}

    def eps(w):
        if w not in eps_cache:
            eps_cache[w] = rs.weight_to_epsilon(w)
        return eps_cache[w]

    def norm_shift(w):
        v = tuple(a + b for a, b in zip(eps(w), rho_eps))
        return _eps_dot(v, v)

    top = norm_shift(lam)
    mult = {lam: 1}
    simple_cols = [rs.simple_roots[i - 1] for i in nodes]
    frontier = [lam]
    while frontier:
        candidates = set()
        for w in frontier:
            for col in simple_cols:
                candidates.add(tuple(a - b for a, b in zip(w, col)))
        frontier = []
        for nu in sorted(candidates):
            if nu in mult:
                continue
            denom = top - norm_shift(nu)
            if denom <= 0:
                continue
            total = Fraction(0)
            for alpha_eps, alpha_fund in zip(pos_eps, pos_fund):
                k = 1
                while True:
                    above = tuple(a + k * b for a, b in zip(nu, alpha_fund))
                    m = mult.get(above)
                    if m is None:
                        break
                    shifted = tuple(a + k * b for a, b in zip(eps(nu), alpha_eps))
                    total += m * _eps_dot(shifted, alpha_eps)
                    k += 1
            value = 2 * total / denom
            assert value.denominator == 1
            if value > 0:
                mult[nu] = int(value)
                frontier.append(nu)
    return tuple(sorted(mult.items()))


def tensor_decompose(rs: RootSystem, lam, mu, levi=None):
    """Irreducible constituents of V_lam (x) V_mu, with multiplicities (Klimyk)."""
    nodes = rs.levi_nodes(levi)
    _check_dominant(rs, lam, nodes, "tensor_decompose")
    _check_dominant(rs, mu, nodes, "tensor_decompose")
    lam, mu = tuple(lam), tuple(mu)
    if weyl_dim(rs, lam, nodes) > weyl_dim(rs, mu, nodes):
        lam, mu = mu, lam
    return dict(_klimyk_cached(rs, nodes, lam, mu))


@lru_cache(maxsize=None)
def _klimyk_cached(rs, nodes, lam, mu):
    # Any vector pairing to 1 with every Levi coroot works as the rho shift;
    # the integer indicator vector keeps the arithmetic in Z.
    rho_t = tuple(1 if i in nodes else 0 for i in range(1, rs.rank + 1))
    out = {}
    for nu, m in _freudenthal_cached(rs, nodes, lam):
        x = tuple(a + b + c for a, b, c in zip(nu, mu, rho_t))
        dc = dominant_conjugate(rs, x, nodes)
        if dc is None:
            continue
        length, dom = dc
        res = tuple(a - b for a, b in zip(dom, rho_t))
        out[res] = out.get(res, 0) + (m if length % 2 == 0 else -m)
    cleaned = {w: c for w, c in out.items() if c != 0}
    assert all(c > 0 for c in cleaned.values()), "Klimyk cancellation failed"
    return tuple(sorted(cleaned.items()))
