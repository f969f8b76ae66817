"""Seeded random diagrams, knots, Kirby states and move sequences for fuzzing."""

import random
from typing import Optional

from . import kirby, linalg
from .diagram import LegendrianComponent, SurgeryDiagram, linking_matrix, make_diagram
from .invariants import KnotInComplement


def random_diagram(rng: random.Random, max_n: int = 4, bound: int = 3,
                   nondegenerate: bool = False) -> SurgeryDiagram:
    while True:
        n = rng.randint(0, max_n)
        comps = []
        for i in range(n):
            tb = rng.randint(-bound, bound)
            rot = rng.choice([r for r in range(-bound, bound + 1) if (tb - r) % 2])
            comps.append(LegendrianComponent("K%d" % (i + 1), tb, rot, rng.choice((1, -1))))
        lk = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lk[i][j] = lk[j][i] = rng.randint(-bound, bound)
        d = make_diagram(comps, lk)
        if not nondegenerate or linalg.determinant(linking_matrix(d)) != 0:
            return d


def random_knot(rng: random.Random, n: int, tb_bound: int = 5, alpha_bound: int = 3) -> KnotInComplement:
    t = rng.randint(-tb_bound, tb_bound)
    r = rng.choice([x for x in range(-tb_bound, tb_bound + 1) if (t - x) % 2])
    return KnotInComplement(t, r, tuple(rng.randint(-alpha_bound, alpha_bound) for _ in range(n)))


def random_state(rng: random.Random, max_n: int = 4, bound: int = 3) -> kirby.FramedLinkState:
    n = rng.randint(0, max_n)
    Q = [[0] * n for _ in range(n)]
    for i in range(n):
        Q[i][i] = rng.randint(-bound - 1, bound + 1)
        for j in range(i + 1, n):
            Q[i][j] = Q[j][i] = rng.randint(-bound, bound)
    spins = kirby.spin_structures_of_matrix(Q)
    unknots = [rng.random() < 0.7 for _ in range(n)]
    return kirby.FramedLinkState.from_matrix(Q, rng.choice(spins).sublink, unknots)


def legal_moves(st: kirby.FramedLinkState):
    """Names of the moves whose preconditions hold in st."""
    n = len(st)
    ops = ["blow_up", "inverse_slam_dunk"]
    if any(st.framings[k] in (1, -1) and st.unknot_flags[k] for k in range(n)):
        ops.append("blow_down")
    if n >= 2:
        ops.append("handle_slide")
    if any(st.framings[k] == 0 and st.unknot_flags[k] for k in range(n)):
        ops.append("rolfsen_twist")
    if slam_dunk_pairs(st):
        ops.append("slam_dunk")
    return ops


def slam_dunk_pairs(st: kirby.FramedLinkState):
    Q = st.matrix()
    n = len(Q)
    out = []
    for u in range(n):
        if Q[u][u] or not st.unknot_flags[u]:
            continue
        partners = [j for j in range(n) if j != u and Q[u][j]]
        if len(partners) == 1 and abs(Q[u][partners[0]]) == 1:
            out.append((partners[0], u))
    return out


def random_move(rng: random.Random, st: kirby.FramedLinkState, bound: int = 2) -> Optional[dict]:
    n = len(st)
    op = rng.choice(legal_moves(st))
    if op == "blow_up":
        return {"op": op, "eps": rng.choice((1, -1)), "w": [rng.randint(-bound, bound) for _ in range(n)]}
    if op == "blow_down":
        k = rng.choice([k for k in range(n) if st.framings[k] in (1, -1) and st.unknot_flags[k]])
        return {"op": op, "k": k}
    if op == "handle_slide":
        i, k = rng.sample(range(n), 2)
        return {"op": op, "i": i, "k": k, "sign": rng.choice((1, -1))}
    if op == "rolfsen_twist":
        k = rng.choice([k for k in range(n) if st.framings[k] == 0 and st.unknot_flags[k]])
        return {"op": op, "k": k, "n": rng.randint(-3, 3)}
    if op == "inverse_slam_dunk":
        return {"op": op, "n": rng.randint(-3, 3), "a": [rng.randint(-bound, bound) for _ in range(n)]}
    k, u = rng.choice(slam_dunk_pairs(st))
    return {"op": op, "k": k, "u": u}
