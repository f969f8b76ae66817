"""
Lens spaces: tight contact structures as surgery diagrams, quadratic residue
obstructions to single surgeries, and searches for plane fields whose d3
invariants agree while their Gamma invariants differ.

L(p, q) is -p/q surgery on the unknot, normalized to 0 < q < p.  L(1, 0)
stands for the 3-sphere.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice, product
from math import gcd, isqrt
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .diagram import (H1Element, LegendrianComponent, SurgeryDiagram,
                      group_of_matrix, linking_matrix, make_diagram)
from .invariants import (KnotInComplement, SpinStructure,
                         d3_difference_integral, spin_structures_of_matrix)
from .lutz import TwistChain

PRIME_BOUND = 10 ** 6


@dataclass(frozen=True, order=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 1:
            if self.q != 0:
                raise ValueError("the 3-sphere is written L(1, 0)")
        elif not (self.p > 1 and 0 < self.q < self.p and gcd(self.p, self.q) == 1):
            raise ValueError("L(%d, %d): need 0 < q < p with gcd(p, q) = 1" % (self.p, self.q))

    def __str__(self):
        return "L(%d,%d)" % (self.p, self.q)

    @property
    def q_inverse(self) -> int:
        return pow(self.q, -1, self.p) if self.p > 1 else 0

    def same_space(self, other: "LensSpace") -> bool:
        """Orientation preserving diffeomorphism: q' = q or q' = q^-1 mod p."""
        return self.p == other.p and other.q in (self.q, self.q_inverse)


def is_prime(n: int) -> bool:
    if n > PRIME_BOUND:
        raise ValueError("primality is only checked up to %d" % PRIME_BOUND)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % k for k in range(3, isqrt(n) + 1, 2))


def neg_continued_fraction(p: int, q: int) -> List[int]:
    """Coefficients a_i >= 2 with p/q = a_1 - 1/(a_2 - 1/(... - 1/a_k))."""
    if not (0 < q < p and gcd(p, q) == 1):
        raise ValueError("need 0 < q < p coprime, got (%d, %d)" % (p, q))
    out = []
    a, b = p, q
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    value = Fraction(out[-1])
    for c in reversed(out[:-1]):
        value = c - 1 / value
    assert value == Fraction(p, q)
    return out


def chain_diagram(coeffs: Sequence[int], rots: Sequence[int],
                  signs: Optional[Sequence[int]] = None) -> SurgeryDiagram:
    """
    Linear chain of Legendrian unknots with framings -a_i and consecutive
    linking 1.  A component with sign -1 has tb = 1 - a_i, with sign +1 it
    has tb = -1 - a_i.
    """
    k = len(coeffs)
    if signs is None:
        signs = [-1] * k
    comps = [LegendrianComponent("U%d" % (i + 1), -a - s, r, s)
             for i, (a, r, s) in enumerate(zip(coeffs, rots, signs))]
    lk = [[1 if abs(i - j) == 1 else 0 for j in range(k)] for i in range(k)]
    return make_diagram(comps, lk)


def rotation_choices(a: int, sign: int = -1) -> List[int]:
    """Rotation numbers of a Legendrian unknot framed -a by a (sign)-surgery."""
    bound = a - 2 if sign == -1 else a
    return list(range(-bound, bound + 1, 2))


def tight_structures(L: LensSpace) -> List[SurgeryDiagram]:
    """Legendrian-surgery chains for every tight structure on L(p, q)."""
    if L.p == 1:
        return [make_diagram([])]
    coeffs = neg_continued_fraction(L.p, L.q)
    return [chain_diagram(coeffs, rots)
            for rots in product(*(rotation_choices(a) for a in coeffs))]


# ---------------------------------------------------------------------------
# Quadratic residues

def legendre(q: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ValueError("%d is not an odd prime" % p)
    v = pow(q % p, (p - 1) // 2, p)
    return -1 if v == p - 1 else v


@lru_cache(maxsize=4096)
def _squares(m: int) -> frozenset:
    return frozenset(x * x % m for x in range(m))


def is_square_mod(a: int, m: int) -> bool:
    """Brute force: is a congruent to some x^2 mod m?"""
    if m < 1:
        raise ValueError("modulus must be positive")
    return a % m in _squares(m)


def _pm_square(a: int, m: int) -> bool:
    return is_square_mod(a, m) or is_square_mod(-a, m)


def integral_obstruction(A: LensSpace, B: LensSpace) -> bool:
    """
    True when no single integral surgery can turn A into B: neither p'q nor
    -p'q is a square mod p, or neither pq' nor -pq' is a square mod p'.
    """
    return not (_pm_square(B.p * A.q, A.p) and _pm_square(A.p * B.q, B.p))


@dataclass(frozen=True)
class PairCheck:
    first: LensSpace
    second: LensSpace
    conditions: Tuple[bool, bool, bool, bool, bool]
    # "+-p'q square mod p" and "+-pq' square mod p'"
    not_obstructed: Tuple[bool, bool]

    @property
    def failed(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, ok in enumerate(self.conditions) if not ok)


@dataclass(frozen=True)
class PairCertificate(PairCheck):
    """Two lens spaces whose tight structures are never one contact (+-1)-surgery apart."""

    def __post_init__(self):
        if not all(self.conditions):
            raise ValueError("certificate with failing conditions %r" % (self.failed,))


@dataclass(frozen=True)
class PairFailure(PairCheck):
    @property
    def reason(self) -> str:
        return "condition " + ", ".join(str(i) for i in self.failed)


def plamenevskaya_check(A: LensSpace, B: LensSpace) -> Union[PairCertificate, PairFailure]:
    p, q, p2, q2 = A.p, A.q, B.p, B.q
    conditions = (
        gcd(p, p2) == 1,
        is_square_mod(-p * q2, p2),
        is_square_mod(-p2 * q, p),
        not is_square_mod(-1, p2),
        not is_square_mod(-1, p),
    )
    facts = (_pm_square(p2 * q, p), _pm_square(p * q2, p2))
    cls = PairCertificate if all(conditions) else PairFailure
    return cls(A, B, conditions, facts)


def search_pairs(bound: int) -> List[PairCertificate]:
    """
    Certified pairs built from primes p < p' <= bound, both 3 mod 4, with the
    smallest q, q' satisfying (q/p) = -(p'/p) and (q'/p') = -(p/p').
    """
    if bound < 3:
        raise ValueError("bound must be at least 3")
    primes = [p for p in range(3, bound + 1) if p % 4 == 3 and is_prime(p)]
    out = []
    for p, p2 in combinations(primes, 2):
        q = next(x for x in range(1, p) if legendre(x, p) == -legendre(p2, p))
        q2 = next(x for x in range(1, p2) if legendre(x, p2) == -legendre(p, p2))
        cert = plamenevskaya_check(LensSpace(p, q), LensSpace(p2, q2))
        if not isinstance(cert, PairCertificate):
            raise AssertionError("construction failed for %s, %s" % (LensSpace(p, q), LensSpace(p2, q2)))
        out.append(cert)
    out.sort(key=lambda c: (c.first.p, c.second.p, c.first.q, c.second.q))
    return out


# ---------------------------------------------------------------------------
# Equal d3, different Gamma

@dataclass(frozen=True)
class Candidate:
    """A plane field on a fixed base manifold, reached by twisting a base diagram."""
    chain: TwistChain
    label: str
    d3: Fraction
    gamma: H1Element

    @property
    def diagram(self) -> SurgeryDiagram:
        return self.chain.diagram


def _candidate(chain: TwistChain, label: str, s0: SpinStructure, group) -> Candidate:
    return Candidate(chain, label, chain.d3(), chain.gamma(s0, group))


@dataclass(frozen=True)
class CollisionWitness:
    first: Candidate
    second: Candidate
    spin: SpinStructure
    searched: int

    @property
    def d3(self) -> Fraction:
        return self.first.d3


# search limits for gamma_collision_witness
MAX_ROTATION_BASES = 4096
KNOT_TB_RANGE = (-1, -2, -3)


def _shift_up(c: Candidate, k: int, s0, group) -> Candidate:
    chain = c.chain
    if k % 2:
        chain = chain.shift((k - 1) // 2)
    elif k:
        chain = chain.shift(0).shift(k // 2 - 1)
    label = c.label + (" + d3 shift %d" % k if k else "")
    return _candidate(chain, label, s0, group)


def _collide(candidates: Iterator[Candidate], s0, group) -> Optional[Tuple[Candidate, Candidate, int]]:
    """First pair with integral d3 difference and different Gamma, lower one shifted up."""
    seen = {}
    count = 0
    for c in candidates:
        count += 1
        frac = c.d3 - (c.d3.numerator // c.d3.denominator)
        for other in seen.get(frac, ()):
            if other.gamma != c.gamma:
                lo, hi = (other, c) if other.d3 <= c.d3 else (c, other)
                lo = _shift_up(lo, int(hi.d3 - lo.d3), s0, group)
                return lo, hi, count
        seen.setdefault(frac, []).append(c)
    return None


def gamma_collision_witness(p_list: Sequence[int]) -> Optional[CollisionWitness]:
    """
    Two plane fields on the connected sum of the L(p_i, 1) with equal d3 and
    different Gamma for the same spin structure; None when H1 is 0 or Z/2.

    Grid: first every rotation vector of the Legendrian-surgery base (at most
    MAX_ROTATION_BASES of them), then single Lutz twists of the first base
    along knots with alpha = l e_j (0 < l < p_j), tb in KNOT_TB_RANGE and
    every rotation of matching parity with |rot| < |tb|.  A pair whose d3
    differ by an integer is equalized with d3 shifts.
    """
    p_list = list(p_list)
    if any(p < 2 for p in p_list):
        raise ValueError("factors must be at least 2")
    if not p_list or p_list == [2]:
        return None
    Q = [[-p_list[i] if i == j else 0 for j in range(len(p_list))] for i in range(len(p_list))]
    group = group_of_matrix(Q)
    s0 = spin_structures_of_matrix(Q)[0]
    k = len(p_list)
    lk = [[0] * k for _ in range(k)]

    def base(rots):
        comps = [LegendrianComponent("U%d" % (i + 1), 1 - p, r, -1)
                 for i, (p, r) in enumerate(zip(p_list, rots))]
        return make_diagram(comps, lk)

    def candidates():
        rot_grid = islice(product(*(rotation_choices(p) for p in p_list)), MAX_ROTATION_BASES)
        for rots in rot_grid:
            yield _candidate(TwistChain(base(rots)), "rotations %r" % (rots,), s0, group)
        ref = TwistChain(base([rotation_choices(p)[0] for p in p_list]))
        for t in KNOT_TB_RANGE:
            for r in range(t + 1, -t, 2):
                for j, p in enumerate(p_list):
                    for l in range(1, p):
                        alpha = tuple(l if i == j else 0 for i in range(k))
                        knot = KnotInComplement(t, r, alpha)
                        label = "Lutz twist along t=%d r=%d alpha=%r" % (t, r, alpha)
                        yield _candidate(ref.twist(knot), label, s0, group)

    found = _collide(candidates(), s0, group)
    if found is None:
        return None
    a, b, count = found
    assert a.d3 == b.d3 and a.gamma != b.gamma
    return CollisionWitness(a, b, s0, count)


@dataclass(frozen=True)
class ExperimentReport:
    space: LensSpace
    candidates: Tuple[Candidate, ...]
    pairs_checked: int
    counterexamples: Tuple[Tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _experiment_candidates(L: LensSpace, s0, group) -> Iterator[Candidate]:
    coeffs = neg_continued_fraction(L.p, L.q)
    for rots in product(*(rotation_choices(a) for a in coeffs)):
        yield _candidate(TwistChain(chain_diagram(coeffs, rots)), "tight %r" % (rots,), s0, group)
    for signs in product((-1, 1), repeat=len(coeffs)):
        if all(s == -1 for s in signs):
            continue
        for rots in product(*(rotation_choices(a, s) for a, s in zip(coeffs, signs))):
            d = chain_diagram(coeffs, rots, signs)
            yield _candidate(TwistChain(d), "signs %r rotations %r" % (signs, rots), s0, group)
    ref = TwistChain(chain_diagram(coeffs, [rotation_choices(a)[0] for a in coeffs]))
    k = len(coeffs)
    for depth in range(1, 12):
        t = -depth
        for r in range(t + 1, -t, 2):
            for alpha in product(range(L.p), repeat=k):
                chain = ref.twist(KnotInComplement(t, r, alpha))
                yield _candidate(chain, "Lutz t=%d r=%d alpha=%r" % (t, r, alpha), s0, group)
                yield _candidate(chain.shift(0), "Lutz t=%d r=%d alpha=%r + shift" % (t, r, alpha), s0, group)


def d3_determines_gamma_experiment(L: LensSpace, samples: int) -> ExperimentReport:
    """
    Check "d3 difference integral <=> Gamma equal" on every pair among at
    least `samples` plane fields on L (when the grid allows that many).
    """
    if L.p == 1:
        Q = []
    else:
        Q = linking_matrix(chain_diagram(neg_continued_fraction(L.p, L.q),
                                         [rotation_choices(a)[0] for a in neg_continued_fraction(L.p, L.q)]))
    group = group_of_matrix(Q)
    s0 = spin_structures_of_matrix(Q)[0]
    if L.p == 1:
        cands = (_candidate(TwistChain(make_diagram([])).shift(m), "shift %d" % m, s0, group)
                 for m in range(samples))
        cands = tuple(cands)
    else:
        cands = tuple(islice(_experiment_candidates(L, s0, group), samples))
    bad = []
    pairs = 0
    for i, j in combinations(range(len(cands)), 2):
        pairs += 1
        integral = d3_difference_integral(cands[i].d3, cands[j].d3)
        if integral != (cands[i].gamma == cands[j].gamma):
            bad.append((i, j))
    return ExperimentReport(L, cands, pairs, tuple(bad))
