"""Lie types, centers, central quotients, and root data.

Coordinates: the simply connected group times its central torus has
character lattice with basis the fundamental weights of each simple
factor plus one coordinate per torus factor, interleaved in factor
order.  The cocharacter lattice carries the dual basis, so simple
coroots are standard basis vectors there.  A central quotient replaces
the character lattice by a finite-index sublattice; roots and coroots
are re-expressed accordingly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import NamedTuple

from . import lin

LETTERS = "ABCDEFGT"

RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (2, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
    "T": (1, None),
}


class InputError(ValueError):
    """Raised for malformed user input (types, kernels, inner classes)."""


@dataclass(frozen=True)
class Factor:
    letter: str
    rank: int

    def __str__(self) -> str:
        return f"{self.letter}{self.rank}"


@dataclass(frozen=True)
class LieType:
    """A product of simple factors and one-dimensional torus factors.

    factors lists internal factors: torus tokens Tk are expanded into k
    copies of T1.  tokens preserves the input grouping for display.
    """

    factors: tuple[Factor, ...]
    tokens: tuple[str, ...]

    def __str__(self) -> str:
        return ".".join(self.tokens)

    @cached_property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @cached_property
    def semisimple_rank(self) -> int:
        return sum(f.rank for f in self.factors if f.letter != "T")

    @cached_property
    def coord_offsets(self) -> tuple[int, ...]:
        out = []
        pos = 0
        for f in self.factors:
            out.append(pos)
            pos += f.rank
        return tuple(out)

    @cached_property
    def simple_positions(self) -> tuple[int, ...]:
        """Lattice coordinate of each simple root, in global numbering."""
        out = []
        for f, off in zip(self.factors, self.coord_offsets):
            if f.letter != "T":
                out.extend(range(off, off + f.rank))
        return tuple(out)

    @cached_property
    def simple_factor_index(self) -> tuple[int, ...]:
        """Internal factor index owning each simple root."""
        out = []
        for i, f in enumerate(self.factors):
            if f.letter != "T":
                out.extend([i] * f.rank)
        return tuple(out)


def parse_lie_type(text: str) -> LieType:
    """Parses a dot-separated Lie type string such as "A2.T1.D4"."""
    text = text.strip()
    if not text:
        raise InputError("empty Lie type")
    tokens = text.split(".")
    factors: list[Factor] = []
    for tok in tokens:
        m = re.fullmatch(r"([A-Za-z])(\d+)", tok.strip())
        if not m:
            raise InputError(f"malformed factor {tok!r}")
        letter = m.group(1).upper()
        rank = int(m.group(2))
        if letter not in LETTERS:
            raise InputError(f"unknown type letter {letter!r}")
        lo, hi = RANK_BOUNDS[letter]
        if rank < lo or (hi is not None and rank > hi):
            raise InputError(f"rank out of bounds for {letter}{rank}")
        if letter == "T":
            factors.extend([Factor("T", 1)] * rank)
        else:
            factors.append(Factor(letter, rank))
    return LieType(tuple(factors), tuple(t.strip() for t in tokens))


def cartan_matrix(letter: str, n: int) -> lin.Matrix:
    """Cartan matrix of a simple type, Bourbaki numbering."""
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, down: int = -1, up: int = -1) -> None:
        c[i][j] = down
        c[j][i] = up

    if letter == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)
    elif letter == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)
    elif letter == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 3, n - 2)
            bond(n - 3, n - 1)
    elif letter == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, -1, -3)
    else:
        raise ValueError(f"no Cartan matrix for type {letter}")
    return lin.freeze(c)


def weyl_type_order(letter: str, n: int) -> int:
    """Order of the Weyl group of a simple type."""
    fact = 1
    for k in range(2, n + 2):
        fact *= k
    if letter == "A":
        return fact
    fact //= n + 1
    if letter in ("B", "C"):
        return 2**n * fact
    if letter == "D":
        return 2 ** (n - 1) * fact
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(letter, n)]


class CenterComponent(NamedTuple):
    factor_index: int
    order: int  # 0 marks a divisible torus component


@dataclass(frozen=True)
class CenterStructure:
    """The finite part of the center of the simply connected group."""

    components: tuple[CenterComponent, ...]

    def __str__(self) -> str:
        return ".".join(
            "Q/Z" if c.order == 0 else f"Z/{c.order}" for c in self.components
        )


def _factor_center_orders(f: Factor) -> tuple[int, ...]:
    if f.letter == "T":
        return (0,)
    if f.letter == "A":
        return (f.rank + 1,)
    if f.letter in ("B", "C"):
        return (2,)
    if f.letter == "D":
        return (2, 2) if f.rank % 2 == 0 else (4,)
    if f.letter == "E":
        return {6: (3,), 7: (2,), 8: (1,)}[f.rank]
    return (1,)


def center_structure(lt: LieType) -> CenterStructure:
    comps = []
    for i, f in enumerate(lt.factors):
        for order in _factor_center_orders(f):
            comps.append(CenterComponent(i, order))
    return CenterStructure(tuple(comps))


@dataclass(frozen=True)
class KernelGenerator:
    """One element of the center, as a fraction per center component."""

    fractions: tuple[Fraction, ...]


def parse_kernel_generator(text: str, cs: CenterStructure) -> KernelGenerator:
    """Parses a comma-separated fraction line against a center structure."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != len(cs.components):
        raise InputError(
            f"expected {len(cs.components)} fractions, got {len(parts)}"
        )
    fracs = []
    for part, comp in zip(parts, cs.components):
        m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", part)
        if not m or (m.group(2) is not None and int(m.group(2)) == 0):
            raise InputError(f"malformed fraction {part!r}")
        f = Fraction(int(m.group(1)), int(m.group(2) or 1)) % 1
        if comp.order and comp.order % f.denominator:
            raise InputError(f"{part} is not in the center")
        fracs.append(f)
    return KernelGenerator(tuple(fracs))


def adjoint_generators(cs: CenterStructure) -> list[KernelGenerator]:
    """Generators of the full finite semisimple center (torus untouched)."""
    gens = []
    for i, comp in enumerate(cs.components):
        if comp.order > 1:
            fracs = [Fraction(0)] * len(cs.components)
            fracs[i] = Fraction(1, comp.order)
            gens.append(KernelGenerator(tuple(fracs)))
    return gens


class Root(NamedTuple):
    vec: lin.Vector  # character coordinates
    covec: lin.Vector  # cocharacter coordinates
    coeffs: lin.Vector  # coordinates in the simple-root basis


@dataclass(frozen=True, eq=False)
class RootDatum:
    """A reductive group's lattices, roots, and coroots in fixed bases.

    basis rows give the character lattice inside the weight coordinates
    of the simply connected cover; it is ignored by equality, which
    compares the root/coroot data only.
    """

    rank: int
    basis: lin.Matrix
    simple_roots: tuple[lin.Vector, ...]
    simple_coroots: tuple[lin.Vector, ...]
    cartan: lin.Matrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootDatum):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.simple_roots == other.simple_roots
            and self.simple_coroots == other.simple_coroots
            and self.cartan == other.cartan
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.simple_roots, self.simple_coroots))

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def pairing(self, vec: lin.Vector, covec: lin.Vector) -> int:
        return lin.vec_dot(vec, covec)

    @cached_property
    def reflections(self) -> tuple[lin.Matrix, ...]:
        """Simple-reflection matrices acting on character vectors."""
        out = []
        for a, av in zip(self.simple_roots, self.simple_coroots):
            out.append(lin.freeze(
                [[(1 if r == c else 0) - a[r] * av[c] for c in range(self.rank)]
                 for r in range(self.rank)]
            ))
        return tuple(out)

    @cached_property
    def coreflections(self) -> tuple[lin.Matrix, ...]:
        """Simple-reflection matrices acting on cocharacter vectors."""
        return tuple(lin.transpose(s) for s in self.reflections)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        seen: dict[lin.Vector, Root] = {}
        work = []
        n = self.semisimple_rank
        for j, (a, av) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            r = Root(a, av, tuple(1 if k == j else 0 for k in range(n)))
            seen[r.vec] = r
            work.append(r)
        while work:
            r = work.pop()
            for j in range(n):
                k = self.pairing(r.vec, self.simple_coroots[j])
                vec = lin.vec_sub(r.vec, lin.vec_scale(self.simple_roots[j], k))
                if vec in seen or lin.vec_neg(vec) in seen:
                    continue
                kc = self.pairing(self.simple_roots[j], r.covec)
                covec = lin.vec_sub(
                    r.covec, lin.vec_scale(self.simple_coroots[j], kc)
                )
                coeffs = tuple(
                    c - (k if i == j else 0) for i, c in enumerate(r.coeffs)
                )
                if all(c >= 0 for c in coeffs):
                    new = Root(vec, covec, coeffs)
                elif all(c <= 0 for c in coeffs):
                    new = Root(lin.vec_neg(vec), lin.vec_neg(covec),
                               tuple(-c for c in coeffs))
                else:
                    raise AssertionError("root with mixed-sign coordinates")
                seen[new.vec] = new
                work.append(new)
        return tuple(sorted(seen.values(),
                            key=lambda r: (sum(r.coeffs), r.coeffs)))

    @cached_property
    def root_index(self) -> dict[lin.Vector, int]:
        """Signed lookup: positive root i maps to i, its negative to ~i."""
        out: dict[lin.Vector, int] = {}
        for i, r in enumerate(self.positive_roots):
            out[r.vec] = i
            out[lin.vec_neg(r.vec)] = ~i
        return out

    @cached_property
    def two_rho(self) -> lin.Vector:
        out = lin.zero_vector(self.rank)
        for r in self.positive_roots:
            out = lin.vec_add(out, r.vec)
        return out

    @cached_property
    def two_rho_check(self) -> lin.Vector:
        out = lin.zero_vector(self.rank)
        for r in self.positive_roots:
            out = lin.vec_add(out, r.covec)
        return out

    def subsystem_type(self, roots: list[Root]) -> tuple[Factor, ...]:
        """Classifies a closed subsystem given by its positive roots."""
        vecs = {r.vec for r in roots}
        simples = [
            r for r in roots
            if not any(lin.vec_sub(r.vec, v) in vecs for v in vecs
                       if v != r.vec)
        ]
        return classify_simples(
            [(r.vec, r.covec) for r in simples], self.pairing
        )


def classify_simples(simples, pairing) -> tuple[Factor, ...]:
    """Type of a root system from a set of simple roots and coroots.

    Rank-two systems with a double bond are reported as B2.
    """
    k = len(simples)
    adj: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if pairing(simples[i][0], simples[j][1]):
                adj[i].append(j)
                adj[j].append(i)
    unseen = set(range(k))
    factors = []
    while unseen:
        start = min(unseen)
        comp = [start]
        unseen.discard(start)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in adj[i]:
                if j in unseen:
                    unseen.discard(j)
                    comp.append(j)
                    queue.append(j)
        factors.append(_classify_component(comp, simples, pairing, adj))
    return tuple(sorted(factors, key=lambda f: (-f.rank, f.letter)))


def _classify_component(comp, simples, pairing, adj) -> Factor:
    n = len(comp)
    if n == 1:
        return Factor("A", 1)
    pairs = {}
    for i in comp:
        for j in adj[i]:
            if j > i:
                pairs[(i, j)] = (
                    pairing(simples[i][0], simples[j][1]),
                    pairing(simples[j][0], simples[i][1]),
                )
    mult = {ij: a * b for ij, (a, b) in pairs.items()}
    if any(m == 3 for m in mult.values()):
        return Factor("G", 2)
    doubles = [ij for ij, m in mult.items() if m == 2]
    if doubles:
        if n == 2:
            return Factor("B", 2)
        (i, j) = doubles[0]
        a, _ = pairs[(i, j)]
        short = j if a == -2 else i
        long_ = i if short == j else j
        if len(adj[short]) > 1 and len(adj[long_]) > 1:
            return Factor("F", 4)
        return Factor("B" if len(adj[short]) == 1 else "C", n)
    branch = [i for i in comp if len(adj[i]) == 3]
    if not branch:
        return Factor("A", n)
    b = branch[0]
    arms = []
    for start in adj[b]:
        length = 1
        prev, cur = b, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return Factor("D", n)
    return Factor("E", n)


def format_system(factors: tuple[Factor, ...]) -> str:
    return ".".join(str(f) for f in factors)


def _component_functionals(lt: LieType, cs: CenterStructure) -> list[lin.Vector]:
    """Integer rows evaluating each center component on a character.

    A character lies in the annihilator of the component element p/m iff
    p * row(char) is divisible by m.
    """
    n = lt.rank
    rows: list[lin.Vector] = []
    slot = 0
    prev_factor = -1
    for comp in cs.components:
        slot = slot + 1 if comp.factor_index == prev_factor else 0
        prev_factor = comp.factor_index
        f = lt.factors[comp.factor_index]
        off = lt.coord_offsets[comp.factor_index]
        row = [0] * n
        if f.letter == "T":
            row[off] = 1
        elif comp.order > 1:
            if f.letter == "D" and f.rank % 2 == 0:
                # Two order-2 components, dual to the last two fundamental
                # coweights in that order.
                local = f.rank - 2 + slot
                inv, den = lin.mat_inverse_rational(cartan_matrix(f.letter, f.rank))
                for j in range(f.rank):
                    val = 2 * inv[j][local]
                    assert val % den == 0
                    row[off + j] = val // den
            else:
                ct = lin.transpose(cartan_matrix(f.letter, f.rank))
                sf = lin.smith_form(ct)
                idx = [i for i, d in enumerate(sf.diag) if d > 1]
                assert len(idx) == 1 and sf.diag[idx[0]] == comp.order
                for j in range(f.rank):
                    row[off + j] = sf.uinv[idx[0]][j]
        rows.append(tuple(row))
    return rows


def _weight_basis_roots(lt: LieType) -> tuple[list[lin.Vector], list[lin.Vector]]:
    n = lt.rank
    roots = []
    coroots = []
    for f, off in zip(lt.factors, lt.coord_offsets):
        if f.letter == "T":
            continue
        c = cartan_matrix(f.letter, f.rank)
        for i in range(f.rank):
            vec = [0] * n
            for j in range(f.rank):
                vec[off + j] = c[i][j]
            roots.append(tuple(vec))
            covec = [0] * n
            covec[off + i] = 1
            coroots.append(tuple(covec))
    return roots, coroots


def build_root_datum(lt: LieType, gens: list[KernelGenerator]) -> RootDatum:
    """Root datum of the quotient of the simply connected group.

    gens lists central elements to divide by; empty gives the simply
    connected group itself.
    """
    n = lt.rank
    cs = center_structure(lt)
    for g in gens:
        if len(g.fractions) != len(cs.components):
            raise InputError("kernel generator has wrong length")
        for f, comp in zip(g.fractions, cs.components):
            if comp.order and comp.order % f.denominator:
                raise InputError(f"{f} is not in the center")
    if gens:
        psi = _component_functionals(lt, cs)
        denoms = [f.denominator for g in gens for f in g.fractions]
        modulus = lcm(*denoms)
        rows = []
        for g in gens:
            row = lin.zero_vector(n)
            for f, p in zip(g.fractions, psi):
                scale = int(f * modulus)
                if scale:
                    row = lin.vec_add(row, lin.vec_scale(p, scale))
            rows.append(row)
        sf = lin.smith_form(lin.freeze(rows), ncols=n)
        cols = lin.transpose(sf.vinv)
        basis_rows = []
        for j in range(n):
            d = sf.diag[j] if j < len(sf.diag) else 0
            basis_rows.append(lin.vec_scale(cols[j], modulus // gcd(d, modulus)))
        basis = lin.row_hnf(lin.freeze(basis_rows))
        assert len(basis) == n
    else:
        basis = lin.identity(n)
    roots_w, coroots_w = _weight_basis_roots(lt)
    bt = lin.transpose(basis)
    simple_roots = []
    for a in roots_w:
        sol = lin.solve_int(bt, a)
        assert sol is not None, "root lattice escaped the character lattice"
        simple_roots.append(sol)
    simple_coroots = [lin.mat_vec(basis, av) for av in coroots_w]
    cartan = lin.freeze(
        [[lin.vec_dot(a, bv) for bv in simple_coroots] for a in simple_roots]
    )
    expected = [
        [lin.vec_dot(a, bv) for bv in coroots_w] for a in roots_w
    ]
    assert cartan == lin.freeze(expected)
    return RootDatum(
        rank=n,
        basis=basis,
        simple_roots=tuple(simple_roots),
        simple_coroots=tuple(simple_coroots),
        cartan=cartan,
    )


def dual_lie_type(lt: LieType) -> LieType:
    swap = {"B": "C", "C": "B"}
    factors = tuple(Factor(swap.get(f.letter, f.letter), f.rank)
                    for f in lt.factors)
    tokens = []
    for tok in lt.tokens:
        letter = tok[0].upper()
        tokens.append(swap.get(letter, letter) + tok[1:])
    return LieType(factors, tuple(tokens))


def dual_root_datum(rd: RootDatum) -> RootDatum:
    """Exchanges characters with cocharacters and roots with coroots."""
    return RootDatum(
        rank=rd.rank,
        basis=lin.identity(rd.rank),
        simple_roots=rd.simple_coroots,
        simple_coroots=rd.simple_roots,
        cartan=lin.transpose(rd.cartan),
    )
