"""Orbits of a real form on the flag variety, with their cross and
Cayley structure.

Elements are strong involutions (twisted involution, torus part) up to
conjugacy, generated from one fundamental-fiber orbit by simple cross
actions and by Cayley transforms through noncompact imaginary simple
roots.  Ids are assigned by (length, Cartan class, canonical key), where
length counts the Cayley transforms and complex ascents needed to reach
an element from the fundamental fiber.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .involution import InnerClass, StrongX
from .weyl import COMPLEX_DOWN, COMPLEX_UP, IMAGINARY, REAL


@dataclass(frozen=True)
class KGBElement:
    """One orbit, with its per-simple-root status and neighbours.

    The status letter for a simple root is "c" (compact imaginary), "n"
    (noncompact imaginary), "r" (real) or "C" (complex).  Cayley entries
    are present exactly at the noncompact imaginary roots.
    """

    id: int
    length: int
    cartan: int
    statuses: tuple[str, ...]
    cross: tuple[int, ...]
    cayley: tuple[int | None, ...]
    word: tuple[int, ...]
    rep: StrongX


@dataclass(frozen=True)
class KGB:
    """The orbit set of one real form, as a cross/Cayley graph."""

    form: int
    orbit: int
    elements: tuple[KGBElement, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


def seed_orbit(ic: InnerClass, form: int, orbit: int | None = None) -> int:
    """Index of the fundamental-fiber orbit the generation starts from.

    Defaults to the first orbit realizing the form; an explicit orbit
    selects one strong form among several with the same underlying weak
    form.
    """
    forms = ic._orbit_form_indices
    if orbit is None:
        return next(o for o in range(len(forms)) if forms[o] == form)
    if forms[orbit] != form:
        raise ValueError("orbit does not realize the requested real form")
    return orbit


def generate_kgb(ic: InnerClass, form: int, orbit: int | None = None) -> KGB:
    """All orbits of the real form, from one strong representative."""
    orbit = seed_orbit(ic, form, orbit)
    table = ic.table
    n = ic.rd.semisimple_rank

    reps: dict[tuple, StrongX] = {}
    inv_length = {0: 0}
    queue: deque[tuple] = deque()
    for t in ic._fundamental_orbits[orbit][1]:
        key = ic.x_key((0, t))
        if key not in reps:
            reps[key] = (0, t)
            queue.append(key)

    def record(y: StrongX, length: int) -> None:
        prev = inv_length.setdefault(y[0], length)
        assert prev == length, "inconsistent length at a twisted involution"
        key = ic.x_key(y)
        if key not in reps:
            reps[key] = y
            queue.append(key)

    while queue:
        x = reps[queue.popleft()]
        here = inv_length[x[0]]
        for j in range(n):
            kind = table.status_row(x[0])[j][0]
            if kind == COMPLEX_UP:
                record(ic.cross(j, x), here + 1)
            elif kind == COMPLEX_DOWN:
                record(ic.cross(j, x), here - 1)
            else:
                record(ic.cross(j, x), here)
                if kind == IMAGINARY and ic.grading(x, j):
                    record(ic.cayley(j, x), here + 1)

    assert min(inv_length[x[0]] for x in reps.values()) == 0

    order = sorted(
        reps,
        key=lambda key: (inv_length[key[0]], table.class_of[key[0]], key),
    )
    ids = {key: i for i, key in enumerate(order)}

    elements = []
    for i, key in enumerate(order):
        x = reps[key]
        inv = x[0]
        statuses = []
        cross = []
        cayley: list[int | None] = []
        for j in range(n):
            kind = table.status_row(inv)[j][0]
            cross.append(ids[ic.x_key(ic.cross(j, x))])
            if kind == IMAGINARY:
                if ic.grading(x, j):
                    statuses.append("n")
                    cayley.append(ids[ic.x_key(ic.cayley(j, x))])
                else:
                    statuses.append("c")
                    cayley.append(None)
            else:
                statuses.append("r" if kind == REAL else "C")
                cayley.append(None)
        elements.append(KGBElement(
            id=i,
            length=inv_length[inv],
            cartan=table.class_of[inv],
            statuses=tuple(statuses),
            cross=tuple(cross),
            cayley=tuple(cayley),
            word=table.word(inv),
            rep=x,
        ))
    return KGB(form=form, orbit=orbit, elements=tuple(elements))


def format_kgb(kgb: KGB) -> list[str]:
    """One line per element, in the fixed column layout.

    Columns: id, length, Cartan class, status letters, cross images,
    Cayley images ("*" where absent), and the reduced word of the
    twisted involution (1-based, empty for the identity).
    """
    idw = len(str(kgb.size - 1))
    fw = idw + 2
    lines = []
    for e in kgb.elements:
        row = f"{e.id:>{idw}}:{e.length:>3}{e.cartan:>3}"
        row += "  [" + ",".join(e.statuses) + "]"
        row += " " + "".join(f"{t:>{fw}}" for t in e.cross)
        row += "  " + "".join(
            f"{'*' if t is None else t:>{fw}}" for t in e.cayley
        )
        row += "  " + ",".join(str(j + 1) for j in e.word)
        lines.append(row.rstrip())
    return lines
