"""Brute-force cross-checks and reproducible random instances.

Everything here works over the integer descriptor at desk scale and is
deliberately independent of the key-element formula: existence of flow-up
classes is decided by residue search (congruence merging plus backtracking
over the uncovered residues), and small splines are enumerated exhaustively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional

from .graph import LabeledGraph
from .rings import ZZ, Congruence, crt
from .splines import Spline

_PRIMES = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173,
]


def _require_integers(g: LabeledGraph) -> None:
    if g.ring.kind != "integers":
        raise ValueError("the brute-force oracle works over the integers only")


def _int_labels(g: LabeledGraph):
    m = [label.value for label in g.vertex_labels]
    edges = [(e.u, e.v, e.label.value) for e in g.edges]
    return m, edges


def _factorize(x: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def _bfs_order(g: LabeledGraph, fixed) -> List[int]:
    order: List[int] = []
    seen = set(fixed)
    frontier = sorted(fixed)
    while frontier:
        nxt = []
        for v in frontier:
            for idx in g.adjacency[v]:
                other = g.edges[idx].other(v)
                if other not in seen:
                    seen.add(other)
                    order.append(other)
                    nxt.append(other)
        frontier = nxt
    return order


def _exists_mod_prime_power(g, m, edges, fixed, order, p: int, a: int) -> bool:
    """Existence of the flow-up assignment modulo p^a, by residue search.

    All moduli are powers of p, so a vertex's merged constraint is simply
    the incident congruence with the highest exponent, checked against the
    others; the search branches over the residues that merge leaves open.
    """
    pa = p**a

    def val(x: int) -> int:
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        return e

    m_exp = [min(val(label), a) for label in m]
    e_exp = [min(val(r), a) for (_, _, r) in edges]

    for k, (u, v2, _) in enumerate(edges):
        if u in fixed and v2 in fixed:
            if (fixed[u] - fixed[v2]) % p**e_exp[k] != 0:
                return False
    for v2, value in fixed.items():
        if value % p ** m_exp[v2] != 0:
            return False
    assignment = dict(fixed)

    def place(k: int) -> bool:
        if k == len(order):
            return True
        v2 = order[k]
        best_exp = m_exp[v2]
        best_val = 0
        constraints = [(0, m_exp[v2])]
        reach = best_exp
        for idx, (ea, eb, _) in enumerate(edges):
            if ea == v2 and eb in assignment:
                constraints.append((assignment[eb], e_exp[idx]))
            elif eb == v2 and ea in assignment:
                constraints.append((assignment[ea], e_exp[idx]))
            if v2 in (ea, eb):
                reach = max(reach, e_exp[idx])
        for value, exp in constraints:
            if exp > best_exp:
                best_exp, best_val = exp, value
        for value, exp in constraints:
            if (value - best_val) % p**exp != 0:
                return False
        step = p**best_exp
        for candidate in range(best_val % step, p**reach, step):
            assignment[v2] = candidate
            if place(k + 1):
                return True
        del assignment[v2]
        return False

    return place(0)


def _flow_up_exists(g: LabeledGraph, index: int, t: int) -> bool:
    """Is there a spline with zeros below `index` and value t at it?

    The constraint system is a conjunction of congruences, so it is
    solvable over the integers exactly when it is solvable modulo every
    prime power appearing in the labels; each prime is searched
    independently, which keeps the residue domains tiny.
    """
    m, edges = _int_labels(g)
    fixed: Dict[int, int] = {s: 0 for s in range(index)}
    fixed[index] = t
    order = _bfs_order(g, fixed)
    prime_exponents: Dict[int, int] = {}
    for x in m + [r for (_, _, r) in edges]:
        for p, e in _factorize(x).items():
            prime_exponents[p] = max(prime_exponents.get(p, 0), e)
    for p, a in sorted(prime_exponents.items()):
        reduced = {v: value % p**a for v, value in fixed.items()}
        if not _exists_mod_prime_power(g, m, edges, reduced, order, p, a):
            return False
    return True


def brute_minimal_leading_entry(
    g: LabeledGraph, index: int, bound: int
) -> Optional[int]:
    """Smallest t in 1..bound admitting a flow-up class at `index`, else None.

    Any admissible t is a multiple of the vertex label and of every label on
    an edge down to the zeroed vertices (both forced by the definition, not
    by the formula under test), so those congruences are merged once and
    candidates iterate over the solution class; each candidate is then
    decided by the exhaustive per-prime residue search.
    """
    _require_integers(g)
    g.require_valid()
    forced = [Congruence(ZZ.zero, g.vertex_labels[index])]
    for e in g.edges:
        a, b = e.endpoints()
        if max(a, b) == index and min(a, b) < index:
            forced.append(Congruence(ZZ.zero, e.label))
    _, modulus = crt(forced)
    step = modulus.value
    t = step
    while t <= bound:
        if _flow_up_exists(g, index, t):
            return t
        t += step
    return None


def enumerate_small_splines(g: LabeledGraph, bound: int) -> List[Spline]:
    """All splines with every component in [-bound, bound], exhaustively.

    Backtracking over vertices in index order; candidate values per vertex
    are the multiples of its label, ascending, so the output order is
    deterministic and complete within the bound.
    """
    _require_integers(g)
    g.require_valid()
    m, edges = _int_labels(g)
    n = g.n
    out: List[Spline] = []
    values: List[int] = []

    def place(v: int) -> None:
        if v == n:
            out.append(Spline(g, [ZZ.from_int(c) for c in values]))
            return
        lo = -(bound // m[v]) * m[v]
        for candidate in range(lo, bound + 1, m[v]):
            ok = True
            for a, b, r in edges:
                if a == v and b < v and (candidate - values[b]) % r != 0:
                    ok = False
                    break
                if b == v and a < v and (candidate - values[a]) % r != 0:
                    ok = False
                    break
            if not ok:
                continue
            values.append(candidate)
            place(v + 1)
            values.pop()

    place(0)
    return out


@dataclass(frozen=True)
class InstanceSpec:
    """Deterministic recipe for a random integer instance.

    The same spec always generates the same graph.  In coprime mode all
    vertex and edge labels are distinct primes, ignoring label_bound.
    """

    seed: int
    n: int
    edge_density: float = 0.4
    label_bound: int = 50
    coprime: bool = False


def random_instance(spec: InstanceSpec) -> LabeledGraph:
    if not 1 <= spec.n:
        raise ValueError("need at least one vertex")
    rng = random.Random(spec.seed)
    n = spec.n
    pairs = []
    for v in range(1, n):
        pairs.append((rng.randrange(v), v))  # random spanning tree
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < spec.edge_density:
                pairs.append((u, v))  # duplicates make parallel edges
    count = n + len(pairs)
    if spec.coprime:
        if count > len(_PRIMES):
            raise ValueError("instance too large for the coprime prime pool")
        labels = rng.sample(_PRIMES, count)
    else:
        labels = [rng.randint(1, spec.label_bound) for _ in range(count)]
    vertex_labels = [ZZ.from_int(c) for c in labels[:n]]
    edges = [
        (u, v, ZZ.from_int(c)) for (u, v), c in zip(pairs, labels[n:])
    ]
    return LabeledGraph(ZZ, vertex_labels, edges).require_valid()
