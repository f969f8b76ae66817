"""
Homotopical invariants of a contact (+-1)-surgery diagram.

d3 is normalized so that the empty diagram (the standard tight 3-sphere)
has d3 = 0.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .diagram import (H1Element, H1Group, SurgeryDiagram, first_homology,
                      linking_matrix)


class D3Undefined(ArithmeticError):
    """Q b = r has no rational solution: the Euler class is not torsion."""

    def __init__(self, message="d3 undefined: Euler class non-torsion"):
        super().__init__(message)


class OddNumerator(AssertionError):
    pass


class InfiniteOrder(ArithmeticError):
    pass


class NotCharacteristic(ValueError):
    pass


@dataclass(frozen=True)
class SpinStructure:
    """A characteristic sublink, stored as a 0/1 indicator per component."""
    sublink: Tuple[int, ...]

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.sublink) if x)

    @classmethod
    def from_members(cls, n: int, members) -> "SpinStructure":
        members = set(members)
        return cls(tuple(int(i in members) for i in range(n)))


@dataclass(frozen=True)
class KnotInComplement:
    """Legendrian knot in the complement: tb and rot in S^3, linking with each surgery component."""
    t: int
    r: int
    alpha: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        if (self.t - self.r) % 2 == 0:
            raise ValueError("knot: t - r must be odd")

    @classmethod
    def from_dict(cls, doc) -> "KnotInComplement":
        return cls(int(doc["t"]), int(doc["r"]), tuple(doc.get("alpha", ())))

    def to_dict(self) -> dict:
        return {"t": self.t, "r": self.r, "alpha": list(self.alpha)}


@dataclass(frozen=True)
class RationalClassical:
    tb_q: Fraction
    rot_q: Fraction
    sl_q: Fraction
    order: int


def is_characteristic(Q: Sequence[Sequence[int]], sublink: Sequence[int]) -> bool:
    n = len(Q)
    return all((Q[i][i] - sum(Q[i][j] for j in range(n) if sublink[j])) % 2 == 0
               for i in range(n))


def spin_structures(d: SurgeryDiagram) -> List[SpinStructure]:
    """Characteristic sublinks of d in lexicographic order of their indicators."""
    return spin_structures_of_matrix(linking_matrix(d))


def spin_structures_of_matrix(Q: Sequence[Sequence[int]]) -> List[SpinStructure]:
    diag = [Q[i][i] for i in range(len(Q))]
    return [SpinStructure(x) for x in linalg.solve_affine_mod2(Q, diag)]


def gamma_vector(d: SurgeryDiagram, s: SpinStructure) -> List[int]:
    """Meridian coordinates of Gamma, i.e. (r + sum of the rows of Q in J) / 2."""
    Q = linking_matrix(d)
    if len(s.sublink) != len(Q):
        raise ValueError("spin structure has the wrong length")
    if not is_characteristic(Q, s.sublink):
        raise NotCharacteristic("sublink %r is not characteristic" % (s.members,))
    v = d.rotations
    for j in s.members:
        v = [a + b for a, b in zip(v, Q[j])]
    if any(x % 2 for x in v):
        raise OddNumerator("odd entry in %r" % (v,))
    return [x // 2 for x in v]


def gamma(d: SurgeryDiagram, s: SpinStructure, group: Optional[H1Group] = None) -> H1Element:
    if group is None:
        group = first_homology(d)
    return group.element(gamma_vector(d, s))


@dataclass(frozen=True)
class D3Report:
    value: Fraction
    # value with rank(Q) in place of the component count; differs only for degenerate Q
    rank_value: Fraction
    degenerate: bool


def d3_report(d: SurgeryDiagram) -> D3Report:
    Q = linking_matrix(d)
    r = d.rotations
    b = linalg.solve_rational(Q, r)
    if b is None:
        raise D3Undefined()
    rb = sum((x * y for x, y in zip(r, b)), Fraction(0))
    sigma = linalg.signature(Q)
    n = len(Q)
    rk = linalg.rank(Q)
    q = d.positive_count

    def formula(count):
        return (rb - 3 * sigma - 2 * count - 2) / 4 + q + Fraction(1, 2)

    return D3Report(formula(n), formula(rk), rk < n)


def d3(d: SurgeryDiagram) -> Fraction:
    """
    d3 of the plane field, normalized to 0 on the empty diagram.

    Raises D3Undefined when the Euler class is not torsion.
    """
    return d3_report(d).value


def d3_difference_integral(a: Fraction, b: Fraction) -> bool:
    return (Fraction(a) - Fraction(b)).denominator == 1


def integer_solve(Q: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
    """An integer solution of Q c = rhs (via Smith form), or None."""
    snf = linalg.smith_normal_form(Q)
    y_rhs = linalg.matvec(snf.U, list(rhs))
    y = []
    for s, v in zip(snf.diagonal, y_rhs):
        if (s == 0 and v) or (s and v % s):
            return None
        y.append(v // s if s else 0)
    return linalg.matvec(snf.V, y)


def rational_classical(d: SurgeryDiagram, k: KnotInComplement) -> RationalClassical:
    """Rational tb, rot and self-linking of a knot given in the complement of d."""
    n = len(d.components)
    if len(k.alpha) != n:
        raise ValueError("alpha has length %d, diagram has %d components" % (len(k.alpha), n))
    Q = linking_matrix(d)
    D = first_homology(d).element(k.alpha).order
    if D is None:
        raise InfiniteOrder("knot class has infinite order in H1")
    c = integer_solve(Q, [D * a for a in k.alpha])
    assert c is not None
    tb_q = k.t - Fraction(sum(ci * a for ci, a in zip(c, k.alpha)), D)
    rot_q = k.r - Fraction(sum(ci * ri for ci, ri in zip(c, d.rotations)), D)
    return RationalClassical(tb_q, rot_q, tb_q + rot_q, D)


@dataclass(frozen=True)
class Fingerprint:
    d3: Fraction
    group: H1Group
    spin: Tuple[SpinStructure, ...]
    gamma: Tuple[H1Element, ...]
    euler: H1Element
    degenerate: bool

    def gamma_of(self, s: SpinStructure) -> H1Element:
        return self.gamma[self.spin.index(s)]


def plane_field_fingerprint(d: SurgeryDiagram) -> Fingerprint:
    """d3 together with Gamma for every spin structure and the Euler class 2*Gamma."""
    rep = d3_report(d)
    group = first_homology(d)
    spins = tuple(spin_structures(d))
    gammas = tuple(gamma(d, s, group) for s in spins)
    return Fingerprint(rep.value, group, spins, gammas, gammas[0] * 2, rep.degenerate)
