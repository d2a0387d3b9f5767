"""Face-pairing data of ideal triangulations and the ``idtri v1`` text format.

A slot ``(t, f)`` is face ``f`` of tetrahedron ``t`` (the face opposite
vertex ``f``).  Gluing slot ``(t, f)`` to ``(t', f')`` carries a permutation
``p`` of the vertex labels with ``p[f] = f'``; vertex ``v`` of ``t`` lands on
vertex ``p[v]`` of ``t'``.  Only one direction of each gluing is stored in
files; the inverse is synthesised on parse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

from ..errors import (
    BadPermutation,
    DuplicateGluing,
    FormatError,
    InconsistentInvolution,
    UnpairedFace,
)

Perm = tuple[int, int, int, int]
ALL_PERMS: tuple[Perm, ...] = tuple(itertools.permutations(range(4)))


def perm_sign(p) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def perm_inverse(p) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


@dataclass(frozen=True)
class Gluing:
    tet: int
    face: int
    perm: Perm


@dataclass(frozen=True)
class IdealTriangulation:
    """``g`` tetrahedra and, for each of the ``4g`` slots, where it is glued."""

    g: int
    slots: tuple[Gluing, ...]

    def partner(self, t: int, f: int) -> Gluing:
        return self.slots[4 * t + f]

    @property
    def n_tets(self) -> int:
        return self.g

    def gluing_list(self):
        """Each geometric gluing once, as ``(t, f, t', f', perm)`` from the lower slot."""
        out = []
        for s, gl in enumerate(self.slots):
            if s < 4 * gl.tet + gl.face:
                out.append((s // 4, s % 4, gl.tet, gl.face, gl.perm))
        return out

    @classmethod
    def from_gluings(cls, g: int, gluings) -> "IdealTriangulation":
        """Build and validate from one-directional gluings ``(t, f, t', f', perm)``."""
        if g < 1:
            raise FormatError("a triangulation needs at least one tetrahedron")
        slots: list = [None] * (4 * g)
        for t, f, t2, f2, perm in gluings:
            for x, name in ((t, "t"), (t2, "t'")):
                if not 0 <= x < g:
                    raise FormatError(f"tetrahedron index {name} = {x} out of range [0, {g})")
            for x in (f, f2):
                if not 0 <= x < 4:
                    raise FormatError(f"face index {x} out of range [0, 4)")
            perm = tuple(int(x) for x in perm)
            if sorted(perm) != [0, 1, 2, 3]:
                raise BadPermutation(f"{perm} is not a permutation of 0..3")
            if perm[f] != f2:
                raise BadPermutation(f"gluing ({t},{f}) -> ({t2},{f2}) needs perm[{f}] = {f2}")
            if (t, f) == (t2, f2):
                raise InconsistentInvolution(f"slot ({t},{f}) is glued to itself")
            for a, b in ((t, f), (t2, f2)):
                if slots[4 * a + b] is not None:
                    raise DuplicateGluing(f"slot ({a},{b}) is glued more than once")
            slots[4 * t + f] = Gluing(t2, f2, perm)
            slots[4 * t2 + f2] = Gluing(t, f, perm_inverse(perm))
        missing = [(s // 4, s % 4) for s, x in enumerate(slots) if x is None]
        if missing:
            raise UnpairedFace(f"unglued faces: {missing}")
        return cls(g, tuple(slots))


HEADER = "idtri v1"


def _ints(tokens, line_no):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise FormatError(f"line {line_no}: expected integers, got {' '.join(tokens)!r}") from None


def parse(text: str) -> IdealTriangulation:
    """Parse the line-oriented ``idtri v1`` format (``%`` starts a comment)."""
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("%", 1)[0].strip()
        if body:
            lines.append((no, body.split()))
    if not lines or lines[0][1] != HEADER.split():
        raise FormatError(f"first line must be {HEADER!r}")
    if len(lines) < 2 or lines[1][1][0] != "tets" or len(lines[1][1]) != 2:
        raise FormatError("second line must be 'tets <g>'")
    (g,) = _ints(lines[1][1][1:], lines[1][0])
    gluings = []
    for no, tok in lines[2:]:
        if tok[0] != "glue":
            raise FormatError(f"line {no}: unknown directive {tok[0]!r}")
        if len(tok) != 11 or tok[3] != "->" or tok[6] != "perm":
            raise FormatError(f"line {no}: expected 'glue t f -> t' f' perm p0 p1 p2 p3'")
        t, f = _ints(tok[1:3], no)
        t2, f2 = _ints(tok[4:6], no)
        perm = _ints(tok[7:11], no)
        gluings.append((t, f, t2, f2, tuple(perm)))
    return IdealTriangulation.from_gluings(g, gluings)


def serialize(T: IdealTriangulation) -> str:
    out = [HEADER, f"tets {T.g}"]
    for t, f, t2, f2, p in T.gluing_list():
        out.append(f"glue {t} {f} -> {t2} {f2} perm {p[0]} {p[1]} {p[2]} {p[3]}")
    return "\n".join(out) + "\n"


FIXTURES = ("figure8", "gieseking", "m2", "m3")


def load_fixture(name: str) -> IdealTriangulation:
    """One of the bundled triangulations: figure8, gieseking, m2, m3."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return parse(resources.files("isvol.data").joinpath(f"{name}.tri").read_text())
