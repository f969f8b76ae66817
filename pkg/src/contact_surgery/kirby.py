"""
Kirby moves on framed linking data, carrying a characteristic sublink along.

States hold only framings, pairwise linking numbers, a declared "is an
unknot" flag per component and the sublink.  Moves that need an unknot
trust that flag.  Deleting components compacts indices in order; nothing
else is renumbered.
"""

import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .invariants import is_characteristic, spin_structures_of_matrix
from .linalg import Matrix


class KirbyError(ValueError):
    pass


class NotBlowdownable(KirbyError):
    pass


class SameComponent(KirbyError):
    pass


class NotZeroFramedUnknot(KirbyError):
    pass


class PatternMismatch(KirbyError):
    pass


class BrokenSublink(AssertionError):
    pass


@dataclass(frozen=True)
class FramedLinkState:
    framings: Tuple[int, ...]
    linking: Tuple[Tuple[int, ...], ...]
    unknot_flags: Tuple[bool, ...]
    char_sublink: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.framings)
        lk = tuple(tuple(0 if i == j else int(self.linking[i][j]) for j in range(n))
                   for i in range(n))
        object.__setattr__(self, "framings", tuple(int(p) for p in self.framings))
        object.__setattr__(self, "linking", lk)
        object.__setattr__(self, "unknot_flags", tuple(bool(u) for u in self.unknot_flags))
        object.__setattr__(self, "char_sublink", tuple(int(x) & 1 for x in self.char_sublink))
        if len(self.unknot_flags) != n or len(self.char_sublink) != n:
            raise ValueError("state fields disagree on the component count")
        if any(lk[i][j] != lk[j][i] for i in range(n) for j in range(i)):
            raise ValueError("linking must be symmetric")
        if not is_characteristic(self.matrix(), self.char_sublink):
            raise BrokenSublink("sublink %r is not characteristic" % (self.char_sublink,))

    def __len__(self):
        return len(self.framings)

    def matrix(self) -> Matrix:
        """Linking matrix with the framings on the diagonal."""
        n = len(self.framings)
        return [[self.framings[i] if i == j else self.linking[i][j] for j in range(n)]
                for i in range(n)]

    @classmethod
    def from_matrix(cls, Q, sublink, unknots=None) -> "FramedLinkState":
        n = len(Q)
        if unknots is None:
            unknots = [True] * n
        return cls(tuple(Q[i][i] for i in range(n)), Q, tuple(unknots), tuple(sublink))


def _rebuild(Q, unknots, sublink) -> FramedLinkState:
    return FramedLinkState.from_matrix(Q, sublink, unknots)


def _delete(Q, indices) -> Matrix:
    keep = [i for i in range(len(Q)) if i not in indices]
    return [[Q[i][j] for j in keep] for i in keep]


def _drop(seq, indices) -> list:
    return [x for i, x in enumerate(seq) if i not in indices]


def blow_up(st: FramedLinkState, eps: int, w: Sequence[int]) -> FramedLinkState:
    """
    Add an eps-framed unknot U with linking vector w.  The other components are
    twisted (Q -> Q + eps w w^T) and U joins the sublink iff lk(U, L_J) is even.
    """
    if eps not in (1, -1):
        raise KirbyError("blow-up sign must be +1 or -1")
    n = len(st)
    w = list(w)
    if len(w) != n:
        raise ValueError("linking vector has length %d, expected %d" % (len(w), n))
    Q = st.matrix()
    new = [[Q[i][j] + eps * w[i] * w[j] for j in range(n)] + [w[i]] for i in range(n)]
    new.append(w + [eps])
    joins = sum(w[j] for j in range(n) if st.char_sublink[j]) % 2 == 0
    return _rebuild(new, list(st.unknot_flags) + [True], list(st.char_sublink) + [int(joins)])


def blow_down(st: FramedLinkState, k: int) -> FramedLinkState:
    eps = st.framings[k]
    if eps not in (1, -1) or not st.unknot_flags[k]:
        raise NotBlowdownable("component %d is not a +-1 framed unknot" % k)
    Q = st.matrix()
    n = len(Q)
    w = [Q[i][k] for i in range(n)]
    new = [[Q[i][j] - eps * w[i] * w[j] for j in range(n)] for i in range(n)]
    return _rebuild(_delete(new, {k}), _drop(st.unknot_flags, {k}), _drop(st.char_sublink, {k}))


def handle_slide(st: FramedLinkState, i: int, k: int, sign: int) -> FramedLinkState:
    """
    Slide component i over component k (sign picks the band orientation).

    The slid component is no longer declared an unknot.  k changes its
    membership exactly when i is in the sublink.
    """
    if i == k:
        raise SameComponent("cannot slide a component over itself")
    if sign not in (1, -1):
        raise KirbyError("slide sign must be +1 or -1")
    Q = [list(row) for row in st.matrix()]
    n = len(Q)
    # congruence by E = I + sign * e_i e_k^T
    Q[i] = [a + sign * b for a, b in zip(Q[i], Q[k])]
    for row in Q:
        row[i] += sign * row[k]
    flags = list(st.unknot_flags)
    flags[i] = False
    sub = list(st.char_sublink)
    if sub[i]:
        sub[k] ^= 1
    assert len(Q) == n
    return _rebuild(Q, flags, sub)


def rolfsen_twist(st: FramedLinkState, k: int, n: int) -> FramedLinkState:
    if st.framings[k] != 0 or not st.unknot_flags[k]:
        raise NotZeroFramedUnknot("component %d is not a 0-framed unknot" % k)
    Q = st.matrix()
    size = len(Q)
    w = [Q[i][k] for i in range(size)]
    new = [[Q[i][j] + n * w[i] * w[j] if k not in (i, j) else Q[i][j]
            for j in range(size)] for i in range(size)]
    sub = list(st.char_sublink)
    s = sum(w[j] for j in range(size) if sub[j] and j != k)
    if n * (1 + s) % 2:
        sub[k] ^= 1
    return _rebuild(new, st.unknot_flags, sub)


def inverse_slam_dunk(st: FramedLinkState, n: int, a: Sequence[int]) -> FramedLinkState:
    """
    Append an n-framed knot K linking the old components by a, and a 0-framed
    meridian U of K.  K never joins the sublink; U joins iff n - lk(K, L_J) is odd.
    """
    size = len(st)
    a = list(a)
    if len(a) != size:
        raise ValueError("linking vector has length %d, expected %d" % (len(a), size))
    Q = st.matrix()
    new = [Q[i] + [a[i], 0] for i in range(size)]
    new.append(a + [n, 1])
    new.append([0] * size + [1, 0])
    lk_j = sum(a[j] for j in range(size) if st.char_sublink[j])
    u_in = (n - lk_j) % 2
    return _rebuild(new, list(st.unknot_flags) + [False, True],
                    list(st.char_sublink) + [0, u_in])


def slam_dunk(st: FramedLinkState, k: int, u: int) -> FramedLinkState:
    """Cancel K (index k) against its 0-framed meridian U (index u)."""
    Q = st.matrix()
    if k == u:
        raise PatternMismatch("k and u coincide")
    if Q[u][u] != 0 or not st.unknot_flags[u]:
        raise PatternMismatch("component %d is not a 0-framed unknot" % u)
    if abs(Q[k][u]) != 1:
        raise PatternMismatch("lk(K, U) must be +-1")
    if any(Q[u][j] for j in range(len(Q)) if j not in (k, u)):
        raise PatternMismatch("U links components other than K")
    gone = {k, u}
    return _rebuild(_delete(Q, gone), _drop(st.unknot_flags, gone), _drop(st.char_sublink, gone))


def spin_count(st: FramedLinkState) -> int:
    return len(spin_structures_of_matrix(st.matrix()))


# ---------------------------------------------------------------------------
# Move scripts

MOVES = {
    "blow_up": (blow_up, ("eps", "w")),
    "blow_down": (blow_down, ("k",)),
    "handle_slide": (handle_slide, ("i", "k", "sign")),
    "rolfsen_twist": (rolfsen_twist, ("k", "n")),
    "inverse_slam_dunk": (inverse_slam_dunk, ("n", "a")),
    "slam_dunk": (slam_dunk, ("k", "u")),
}


def apply_move(st: FramedLinkState, move: dict) -> FramedLinkState:
    """Apply one move record such as ``{"op": "handle_slide", "i": 0, "k": 1, "sign": 1}``."""
    op = move.get("op")
    if op not in MOVES:
        raise KirbyError("unknown move %r" % (op,))
    fn, params = MOVES[op]
    try:
        args = [move[p] for p in params]
    except KeyError as e:
        raise KirbyError("move %r is missing %s" % (op, e)) from None
    return fn(st, *args)


def run_script(st: FramedLinkState, moves: Sequence[dict]) -> List[FramedLinkState]:
    """All intermediate states, starting with st."""
    states = [st]
    for m in moves:
        states.append(apply_move(states[-1], m))
    return states


def load_script(path) -> list:
    with open(path, encoding="utf-8") as f:
        moves = json.load(f)
    if not isinstance(moves, list) or not all(isinstance(m, dict) for m in moves):
        raise KirbyError("a move script is a JSON array of objects")
    return moves


def default_state(Q, unknots=None) -> FramedLinkState:
    """State for Q carrying its lexicographically first characteristic sublink."""
    spins = spin_structures_of_matrix(Q)
    return FramedLinkState.from_matrix(Q, spins[0].sublink, unknots)
