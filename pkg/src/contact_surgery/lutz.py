"""
Lutz twists as a pair of contact (+1)-surgeries, and exact checks of how d3
and Gamma change under them.

A twist along the transverse push-off of a Legendrian knot L (data t, r,
alpha in the complement of a diagram) is the diagram extended by L itself
and by a twice positively stabilized push-off L2, both with coefficient +1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .diagram import (H1Element, H1Group, LegendrianComponent, SurgeryDiagram,
                      first_homology, linking_matrix, make_diagram)
from .invariants import (KnotInComplement, SpinStructure, d3, gamma,
                         gamma_vector, is_characteristic, rational_classical,
                         spin_structures)


class DegenerateBase(ArithmeticError):
    pass


@dataclass(frozen=True)
class LutzExtension:
    base: SurgeryDiagram
    knot: KnotInComplement
    extended: SurgeryDiagram

    def project_vector(self, x: Sequence[int]) -> List[int]:
        """
        Meridian vector of the extended diagram -> meridian vector of the base.

        mu_i -> mu_i, mu_{n+1} -> -[L], mu_{n+2} -> [L] with [L] = sum alpha_i mu_i.
        """
        n = len(self.base)
        if len(x) != n + 2:
            raise ValueError("expected %d coordinates" % (n + 2))
        k = x[n + 1] - x[n]
        return [x[i] + k * a for i, a in enumerate(self.knot.alpha)]

    def projection(self, element_vector: Sequence[int], group: Optional[H1Group] = None) -> H1Element:
        if group is None:
            group = first_homology(self.base)
        return group.element(self.project_vector(element_vector))

    def extended_spin(self, s: SpinStructure) -> SpinStructure:
        """The extended sublink for the same spin structure."""
        lk_j = sum(a for a, x in zip(self.knot.alpha, s.sublink) if x)
        add = (self.knot.t - lk_j) % 2 == 0
        return SpinStructure(s.sublink + ((1, 1) if add else (0, 0)))


def lutz_extend(d: SurgeryDiagram, k: KnotInComplement, labels=("L", "L2")) -> LutzExtension:
    n = len(d)
    if len(k.alpha) != n:
        raise ValueError("alpha has length %d, diagram has %d components" % (len(k.alpha), n))
    comps = list(d.components) + [
        LegendrianComponent(labels[0], k.t, k.r, 1),
        LegendrianComponent(labels[1], k.t - 2, k.r + 2, 1),
    ]
    lk = [list(row) + [a, a] for row, a in zip(d.linking, k.alpha)]
    lk.append(list(k.alpha) + [0, k.t])
    lk.append(list(k.alpha) + [k.t, 0])
    return LutzExtension(d, k, make_diagram(comps, lk))


@dataclass(frozen=True)
class SchurReport:
    det_S: Fraction
    signature_base: int
    signature_extended: int
    det_base: int
    det_extended: int

    @property
    def det_S_ok(self) -> bool:
        return self.det_S == -1

    @property
    def signature_ok(self) -> bool:
        return self.signature_base == self.signature_extended

    @property
    def det_ok(self) -> bool:
        return abs(self.det_base) == abs(self.det_extended)

    @property
    def passed(self) -> bool:
        return self.det_S_ok and self.signature_ok and self.det_ok


def schur_checks(e: LutzExtension) -> SchurReport:
    Q = linking_matrix(e.base)
    Qbar = linking_matrix(e.extended)
    det_q = linalg.determinant(Q)
    if det_q == 0:
        raise DegenerateBase("base linking matrix is singular")
    t = e.knot.t
    v = linalg.solve_rational(Q, list(e.knot.alpha))
    dd = sum(a * x for a, x in zip(e.knot.alpha, v))
    S = [[t + 1 - dd, t - dd], [t - dd, t - 1 - dd]]
    det_S = S[0][0] * S[1][1] - S[0][1] * S[1][0]
    return SchurReport(det_S, linalg.signature(Q), linalg.signature(Qbar),
                       det_q, linalg.determinant(Qbar))


@dataclass(frozen=True)
class LutzReport:
    d3_base: Fraction
    d3_extended: Fraction
    sl_q: Fraction
    order: int
    # spin structure of the base -> (projected Gamma difference, class of L)
    gamma_differences: Tuple[Tuple[SpinStructure, H1Element, H1Element], ...]
    schur: SchurReport

    @property
    def d3_residual(self) -> Fraction:
        return (self.d3_extended - self.d3_base) + self.sl_q

    @property
    def gamma_residuals(self) -> List[H1Element]:
        return [diff - cls for _, diff, cls in self.gamma_differences]

    @property
    def passed(self) -> bool:
        return (self.d3_residual == 0 and all(g.is_zero for g in self.gamma_residuals)
                and self.schur.passed)


def gamma_shifts(e: LutzExtension) -> List[Tuple[SpinStructure, H1Element, H1Element]]:
    """
    For each base spin structure: projected Gamma of the twisted structure
    minus Gamma of the base, next to the class of L.  Works for degenerate
    bases as well.
    """
    group = first_homology(e.base)
    L_class = group.element(e.knot.alpha)
    out = []
    Qbar = linking_matrix(e.extended)
    for s in spin_structures(e.base):
        s_ext = e.extended_spin(s)
        assert is_characteristic(Qbar, s_ext.sublink)
        g_ext = e.projection(gamma_vector(e.extended, s_ext), group)
        out.append((s, g_ext - gamma(e.base, s, group), L_class))
    return out


def verify_lutz_identities(d: SurgeryDiagram, k: KnotInComplement) -> LutzReport:
    """
    Compute both sides of the Lutz-twist formulas:
    d3 changes by -sl_Q(T), Gamma changes by [L] (= -[T]) for every spin structure.
    """
    e = lutz_extend(d, k)
    schur = schur_checks(e)
    rc = rational_classical(d, k)
    return LutzReport(d3(d), d3(e.extended), rc.sl_q, rc.order,
                      tuple(gamma_shifts(e)), schur)


def d3_shift(d: SurgeryDiagram, m: int) -> SurgeryDiagram:
    """
    Add a Lutz pair along a split unknot with tb = -1 - m, rot = -m.

    d3 goes up by 1 + 2m; homology and Gamma are untouched (the new
    meridians are zero in H1 and drop out under the obvious projection).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = len(d)
    used = {c.id for c in d.components}
    i = 1
    while "S%d" % i in used or "S%d'" % i in used:
        i += 1
    knot = KnotInComplement(-1 - m, -m, (0,) * n)
    return lutz_extend(d, knot, labels=("S%d" % i, "S%d'" % i)).extended


def shift_to(d: SurgeryDiagram, k: int) -> SurgeryDiagram:
    """Raise d3 by the nonnegative integer k using one or two d3 shifts."""
    if k < 0:
        raise ValueError("can only raise d3")
    if k == 0:
        return d
    if k % 2:
        return d3_shift(d, (k - 1) // 2)
    return d3_shift(d3_shift(d, 0), k // 2 - 1)


@dataclass(frozen=True)
class TwistChain:
    """A base diagram followed by successive Lutz twists (shifts included)."""
    base: SurgeryDiagram
    steps: Tuple[LutzExtension, ...] = ()

    @property
    def diagram(self) -> SurgeryDiagram:
        return self.steps[-1].extended if self.steps else self.base

    def twist(self, k: KnotInComplement) -> "TwistChain":
        """Twist along k; k.alpha refers to the current diagram."""
        d = self.diagram
        used = {c.id for c in d.components}
        i = 1
        while "T%d" % i in used or "T%d'" % i in used:
            i += 1
        e = lutz_extend(d, k, labels=("T%d" % i, "T%d'" % i))
        return TwistChain(self.base, self.steps + (e,))

    def shift(self, m: int) -> "TwistChain":
        return self.twist(KnotInComplement(-1 - m, -m, (0,) * len(self.diagram)))

    def spin(self, s: SpinStructure) -> SpinStructure:
        for e in self.steps:
            s = e.extended_spin(s)
        return s

    def gamma(self, s: SpinStructure, group: Optional[H1Group] = None) -> H1Element:
        """Gamma of the final diagram for base spin structure s, in base coordinates."""
        v = gamma_vector(self.diagram, self.spin(s))
        for e in reversed(self.steps):
            v = e.project_vector(v)
        if group is None:
            group = first_homology(self.base)
        return group.element(v)

    def d3(self) -> Fraction:
        return d3(self.diagram)
