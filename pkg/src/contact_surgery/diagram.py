"""
Contact (+-1)-surgery diagrams on Legendrian links in the standard 3-sphere.

A diagram is purely combinatorial: for each component its Thurston-Bennequin
number, rotation number and contact surgery sign, plus the pairwise linking
numbers.  Realizability of the (tb, rot) pairs is not checked beyond parity.
"""

import json
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Matrix


class DiagramError(ValueError):
    pass


class ParityViolation(DiagramError):
    def __init__(self, ident):
        super().__init__("component %r: tb - rot must be odd" % (ident,))
        self.id = ident


class AsymmetricLinking(DiagramError):
    def __init__(self, i, j):
        super().__init__("linking[%d][%d] != linking[%d][%d]" % (i, j, j, i))
        self.i, self.j = i, j


class MalformedDocument(DiagramError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class LegendrianComponent:
    id: str
    tb: int
    rot: int
    coeff: int

    @property
    def framing(self) -> int:
        """Topological surgery coefficient tb + coeff."""
        return self.tb + self.coeff


@dataclass(frozen=True)
class SurgeryDiagram:
    components: Tuple[LegendrianComponent, ...] = ()
    linking: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "linking", tuple(tuple(int(x) for x in row)
                                                  for row in self.linking))

    def __len__(self):
        return len(self.components)

    @property
    def rotations(self) -> List[int]:
        return [c.rot for c in self.components]

    @property
    def positive_count(self) -> int:
        return sum(1 for c in self.components if c.coeff == 1)

    def lk(self, i: int, j: int) -> int:
        return self.linking[i][j]


def make_diagram(components, linking=None) -> SurgeryDiagram:
    """
    Build and validate a diagram.  ``components`` holds LegendrianComponents
    or (tb, rot, coeff) triples; missing ids become ``K1, K2, ...``.
    """
    comps = []
    for k, c in enumerate(components):
        if not isinstance(c, LegendrianComponent):
            tb, rot, coeff = c
            c = LegendrianComponent("K%d" % (k + 1), tb, rot, coeff)
        comps.append(c)
    n = len(comps)
    if linking is None:
        linking = [[0] * n for _ in range(n)]
    return validate(SurgeryDiagram(tuple(comps), linking))


def validate(d: SurgeryDiagram) -> SurgeryDiagram:
    n = len(d.components)
    if len(d.linking) != n or any(len(row) != n for row in d.linking):
        raise MalformedDocument("linking matrix must be %dx%d" % (n, n))
    for c in d.components:
        if c.coeff not in (1, -1):
            raise MalformedDocument("component %r: coefficient must be +1 or -1" % (c.id,))
        if (c.tb - c.rot) % 2 == 0:
            raise ParityViolation(c.id)
    for i in range(n):
        for j in range(i + 1, n):
            if d.linking[i][j] != d.linking[j][i]:
                raise AsymmetricLinking(i, j)
    return d


def linking_matrix(d: SurgeryDiagram) -> Matrix:
    n = len(d.components)
    return [[d.components[i].framing if i == j else d.linking[i][j]
             for j in range(n)] for i in range(n)]


def disjoint_union(a: SurgeryDiagram, b: SurgeryDiagram) -> SurgeryDiagram:
    la = [list(row) for row in a.linking]
    lb = [list(row) for row in b.linking]
    return SurgeryDiagram(a.components + b.components, linalg.block_diag(la, lb))


def reverse_orientation(d: SurgeryDiagram, k: int) -> SurgeryDiagram:
    """Reverse component k: its rotation number and linking numbers change sign."""
    comps = list(d.components)
    c = comps[k]
    comps[k] = LegendrianComponent(c.id, c.tb, -c.rot, c.coeff)
    n = len(comps)
    lk = [[-d.linking[i][j] if (i == k) != (j == k) else d.linking[i][j]
           for j in range(n)] for i in range(n)]
    return SurgeryDiagram(tuple(comps), lk)


def permute(d: SurgeryDiagram, perm: Sequence[int]) -> SurgeryDiagram:
    """Reorder components: new component i is old component perm[i]."""
    comps = tuple(d.components[p] for p in perm)
    lk = [[d.linking[p][q] for q in perm] for p in perm]
    return SurgeryDiagram(comps, lk)


# ---------------------------------------------------------------------------
# First homology

@dataclass(frozen=True)
class H1Group:
    """
    Cokernel of a presentation matrix in Smith coordinates.

    A meridian vector x maps to ``U x``; coordinate i of that is kept when the
    i-th Smith entry is 0 (free) or > 1 (torsion).
    """
    invariant_factors: Tuple[int, ...]
    free_rank: int
    U: Tuple[Tuple[int, ...], ...] = field(repr=False)
    moduli: Tuple[int, ...] = field(repr=False)
    kept: Tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.kept

    def element(self, meridian_coords: Sequence[int]) -> "H1Element":
        if len(meridian_coords) != len(self.U):
            raise ValueError("expected %d meridian coordinates, got %d"
                             % (len(self.U), len(meridian_coords)))
        y = linalg.matvec(self.U, list(meridian_coords))
        coords = []
        for i, m in zip(self.kept, self.moduli):
            coords.append(y[i] % m if m else y[i])
        return H1Element(self, tuple(coords))

    def zero(self) -> "H1Element":
        return H1Element(self, (0,) * len(self.kept))

    def describe(self) -> str:
        parts = ["Z/%d" % f for f in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class H1Element:
    group: H1Group = field(repr=False, compare=False)
    coords: Tuple[int, ...]

    def __add__(self, other: "H1Element") -> "H1Element":
        return self._make([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "H1Element":
        return self._make([-a for a in self.coords])

    def __sub__(self, other: "H1Element") -> "H1Element":
        return self + (-other)

    def __mul__(self, k: int) -> "H1Element":
        return self._make([k * a for a in self.coords])

    __rmul__ = __mul__

    def _make(self, coords):
        mods = self.group.moduli
        return H1Element(self.group, tuple(c % m if m else c for c, m in zip(coords, mods)))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> Optional[int]:
        """Order of the class; None when it has infinite order."""
        out = 1
        for c, m in zip(self.coords, self.group.moduli):
            if m == 0:
                if c:
                    return None
            else:
                k = m // gcd(c, m)
                out = out * k // gcd(out, k)
        return out

    def __str__(self):
        return format_coords(self.coords)


def format_coords(coords) -> str:
    if not coords:
        return "0"
    return "(" + ", ".join(str(c) for c in coords) + ")"


def group_of_matrix(Q: Sequence[Sequence[int]]) -> H1Group:
    snf = linalg.smith_normal_form(Q)
    n = len(Q)
    diag = snf.diagonal + [0] * (n - len(snf.diagonal))
    kept = tuple(i for i, s in enumerate(diag) if s != 1)
    moduli = tuple(diag[i] for i in kept)
    return H1Group(
        invariant_factors=tuple(m for m in moduli if m),
        free_rank=sum(1 for m in moduli if m == 0),
        U=tuple(tuple(row) for row in snf.U),
        moduli=moduli,
        kept=kept,
    )


def first_homology(d: SurgeryDiagram) -> H1Group:
    return group_of_matrix(linking_matrix(d))


def homology_class(d: SurgeryDiagram, meridian_coords: Sequence[int]) -> H1Element:
    if len(meridian_coords) != len(d.components):
        raise ValueError("dimension mismatch")
    return first_homology(d).element(meridian_coords)


# ---------------------------------------------------------------------------
# JSON file format

def diagram_from_dict(doc) -> SurgeryDiagram:
    if not isinstance(doc, dict) or "components" not in doc:
        raise MalformedDocument("expected an object with a 'components' list")
    raw = doc["components"]
    if not isinstance(raw, list):
        raise MalformedDocument("'components' must be a list")
    comps = []
    for k, c in enumerate(raw):
        if not isinstance(c, dict):
            raise MalformedDocument("component %d is not an object" % k)
        try:
            tb, rot, coeff = c["tb"], c["rot"], c["coeff"]
        except KeyError as e:
            raise MalformedDocument("component %d: missing field %s" % (k, e)) from None
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (tb, rot, coeff)):
            raise MalformedDocument("component %d: tb, rot, coeff must be integers" % k)
        if coeff not in (1, -1):
            raise MalformedDocument("component %d: coefficient must be +1 or -1, got %r" % (k, coeff))
        comps.append(LegendrianComponent(str(c.get("id", "K%d" % (k + 1))), tb, rot, coeff))
    n = len(comps)
    lk = doc.get("linking", [] if n == 0 else None)
    if lk is None:
        raise MalformedDocument("missing 'linking' matrix")
    if (not isinstance(lk, list) or len(lk) != n
            or any(not isinstance(row, list) or len(row) != n for row in lk)):
        raise MalformedDocument("linking matrix must be %dx%d" % (n, n))
    if any(not isinstance(x, int) or isinstance(x, bool) for row in lk for x in row):
        raise MalformedDocument("linking entries must be integers")
    return validate(SurgeryDiagram(tuple(comps), lk))


def diagram_to_dict(d: SurgeryDiagram) -> dict:
    return {
        "components": [{"id": c.id, "tb": c.tb, "rot": c.rot, "coeff": c.coeff}
                       for c in d.components],
        "linking": [list(row) for row in d.linking],
    }


def loads(text: str) -> SurgeryDiagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(e.msg, e.lineno) from None
    return diagram_from_dict(doc)


def load(path) -> SurgeryDiagram:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())
