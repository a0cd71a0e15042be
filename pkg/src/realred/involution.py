"""Strong real forms, square classes, gradings, and real form naming.

A strong involution is represented by a pair x = (i, t) where i indexes
a twisted involution and t is a rational cocharacter stored as an
integer vector over the context-wide denominator.  Everything here is
organised around one InnerClass object per (root datum, involution).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm

from . import lin
from .rootdata import (
    Factor,
    LieType,
    Root,
    RootDatum,
    adjoint_generators,
    build_root_datum,
    center_structure,
    parse_lie_type,
)
from .weyl import (
    COMPLEX_DOWN,
    COMPLEX_UP,
    IMAGINARY,
    REAL,
    InnerClassInvolution,
    InvolutionTable,
    inner_class_involution,
    involution_table,
    reflection_element,
)

# x = (involution id, cocharacter numerator vector)
StrongX = tuple[int, lin.Vector]


@dataclass(frozen=True)
class RankDecomposition:
    """Split, compact, and complex-pair ranks of a torus involution."""

    split: int
    compact: int
    complex_pairs: int


def rank_decomposition(theta: lin.Matrix) -> RankDecomposition:
    """Decomposes a lattice involution into its three rank invariants.

    Raises ValueError when the matrix is not an involution.
    """
    n = len(theta)
    ident = lin.identity(n)
    if lin.mat_mul(theta, theta) != ident:
        raise ValueError("matrix is not an involution")
    c = lin.f2_rank(lin.mat_add(theta, ident))
    plus = n - lin.smith_form(lin.mat_sub(theta, ident), ncols=n).rank
    minus = n - lin.smith_form(lin.mat_add(theta, ident), ncols=n).rank
    assert plus + minus + 2 * c == n + c + c
    return RankDecomposition(split=minus - c, compact=plus - c, complex_pairs=c)


def fiber_rank(theta: lin.Matrix) -> int:
    """Rank of the two-group acting simply transitively on each fiber part."""
    return rank_decomposition(theta).compact


@dataclass(frozen=True)
class SquareClass:
    """One class of central square values realized by strong involutions."""

    index: int
    key: tuple
    rep: tuple[Fraction, ...]


@dataclass(frozen=True)
class StrongInvolutionRep:
    """A strong involution: twisted involution id plus reduced cocharacter."""

    involution: int
    tnum: lin.Vector


@dataclass(frozen=True)
class FiberGroup:
    """Two-group translating the strong involutions over one involution."""

    rank: int
    generators: tuple[lin.Vector, ...]


@dataclass(frozen=True)
class RealFormLabel:
    """Menu entry for one weak real form of the inner class."""

    index: int
    name: str
    quasisplit: bool
    orbit: int
    square_class: int
    rep: StrongInvolutionRep


@dataclass(frozen=True)
class StrongOrbit:
    """Cross-action orbit on one square-class fiber."""

    square_class: int
    form: int
    members: tuple[int, ...]


_TORUS_NAMES = {"c": "u(1)", "s": "gl(1,R)", "e": "u(1)"}

# Exceptional form names in increasing noncompactness order; the key is
# (letter, rank, equal_rank).
_EXCEPTIONAL_NAMES = {
    ("G", 2, True): ("g2", "g2(R)"),
    ("F", 4, True): ("f4", "f4(so(9))", "f4(R)"),
    ("E", 6, True): ("e6", "e6(so(10).u(1))", "e6(su(6).su(2))"),
    ("E", 6, False): ("e6(f4)", "e6(R)"),
    ("E", 7, True): ("e7", "e7(e6.u(1))", "e7(so(12).su(2))", "e7(R)"),
    ("E", 8, True): ("e8", "e8(e7.su(2))", "e8(R)"),
}


def _complex_pair_name(f: Factor) -> str:
    if f.letter == "A":
        return f"sl({f.rank + 1},C)"
    if f.letter == "B":
        return f"so({2 * f.rank + 1},C)"
    if f.letter == "C":
        return f"sp({2 * f.rank},C)"
    if f.letter == "D":
        return f"so({2 * f.rank},C)"
    if f.letter == "T":
        return "gl(1,C)"
    return f"{f.letter.lower()}{f.rank}(C)"


def _split_product(total: int, s: int) -> tuple[int, int]:
    """Solves p + q = s, p * q = total with p >= q >= 0 integers."""
    disc = s * s - 4 * total
    root = int(disc**0.5)
    while root * root < disc:
        root += 1
    while root * root > disc:
        root -= 1
    assert root * root == disc, (total, s)
    p, q = (s + root) // 2, (s - root) // 2
    assert p * q == total and p + q == s
    return p, q


class InnerClass:
    """All strong real form data for one inner class of real forms."""

    def __init__(self, delta: InnerClassInvolution):
        self.delta = delta
        self.rd: RootDatum = delta.rd
        self.lt: LieType = delta.lt
        self.table: InvolutionTable = involution_table(delta)
        self._minus_smith: dict[int, lin.SmithForm] = {}
        self._plus_smith: dict[int, lin.SmithForm] = {}
        self._fibers: dict[tuple[int, tuple], tuple[lin.Vector, ...]] = {}
        self._strong_at: dict[int, tuple] = {}

    # -- central square classes ----------------------------------------

    @cached_property
    def _dstar(self) -> lin.Matrix:
        return lin.transpose(self.delta.matrix)

    @cached_property
    def _central_smith(self) -> lin.SmithForm:
        """Constraints cutting out delta-fixed central cocharacters mod Z^n."""
        n = self.rd.rank
        rows = [list(a) for a in self.rd.simple_roots]
        diff = lin.mat_sub(self._dstar, lin.identity(n))
        rows.extend(list(r) for r in diff)
        return lin.smith_form(lin.freeze(rows), ncols=n)

    def _central_reduce(self, s: tuple[Fraction, ...]) -> tuple:
        """Coordinates of a central cocharacter modulo the identity part."""
        sf = self._central_smith
        y = lin.mat_vec(sf.v, s)
        out = []
        for i in range(len(y)):
            d = sf.diag[i] if i < len(sf.diag) else 0
            if d == 0:
                out.append(Fraction(0))
            else:
                yi = y[i] % 1
                assert (yi * d).denominator == 1
                out.append(yi)
        return tuple(out)

    @cached_property
    def _center_smith(self) -> lin.SmithForm:
        """Constraints cutting out all central cocharacters mod Z^n."""
        rows = [list(a) for a in self.rd.simple_roots]
        return lin.smith_form(lin.freeze(rows), ncols=self.rd.rank)

    @cached_property
    def _central_translates(self) -> tuple[tuple, ...]:
        """Square-value shifts z.delta(z), z central, as reduced keys.

        Shifts coming from the identity component of the center reduce
        to zero, so torsion generators of the full center suffice.
        """
        sf = self._center_smith
        n = self.rd.rank
        cols = lin.transpose(sf.vinv)
        onep = lin.mat_add(self._dstar, lin.identity(n))
        gens = []
        for i in range(min(n, len(sf.diag))):
            if sf.diag[i] < 2:
                continue
            g = tuple(Fraction(x, sf.diag[i]) for x in cols[i])
            gens.append(self._central_reduce(lin.mat_vec(onep, g)))
        zero = tuple(Fraction(0) for _ in range(n))
        group = {zero}
        queue = [zero]
        while queue:
            cur = queue.pop()
            for g in gens:
                nxt = tuple((a + b) % 1 for a, b in zip(cur, g))
                if nxt not in group:
                    group.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(group))

    def central_class_key(self, s: tuple[Fraction, ...]) -> tuple:
        """Canonical key of the square class of a central cocharacter."""
        base = self._central_reduce(s)
        return min(
            tuple((a + b) % 1 for a, b in zip(base, g))
            for g in self._central_translates
        )

    @cached_property
    def _candidate_classes(self) -> tuple[tuple, ...]:
        """All square classes of delta-fixed central elements."""
        sf = self._central_smith
        n = self.rd.rank
        finite = [i for i in range(n) if i < len(sf.diag) and sf.diag[i] >= 2]
        keys = set()
        for combo in product(*(range(sf.diag[i]) for i in finite)):
            y = [Fraction(0)] * n
            for i, k in zip(finite, combo):
                y[i] = Fraction(k, sf.diag[i])
            s = lin.mat_vec(sf.vinv, tuple(y))
            keys.add(self.central_class_key(s))
        return tuple(sorted(keys))

    def _class_rep(self, key: tuple) -> tuple[Fraction, ...]:
        return lin.mat_vec(self._central_smith.vinv, key)

    @cached_property
    def _realized_keys(self) -> tuple[tuple, ...]:
        """Candidate classes realized as squares over the base involution.

        A class is realized when its representative lies in the rational
        image of 1 + theta plus the cocharacter lattice; equivalently the
        zero-divisor coordinates of uinv times the representative are
        integral.
        """
        sf = self._smith_plus(0)
        out = []
        for key in self._candidate_classes:
            c = lin.mat_vec(sf.uinv, self._class_rep(key))
            ok = all(
                c[i].denominator == 1
                for i in range(len(c))
                if i >= len(sf.diag) or sf.diag[i] == 0
            )
            if ok:
                out.append(key)
        assert out
        return tuple(out)

    @cached_property
    def denom(self) -> int:
        """Global denominator for all cocharacter numerators."""
        dens = [
            f.denominator for key in self._realized_keys
            for f in self._class_rep(key)
        ]
        return 2 * lcm(2, *dens)

    # -- per-involution linear data ------------------------------------

    def _smith_minus(self, inv: int) -> lin.SmithForm:
        out = self._minus_smith.get(inv)
        if out is None:
            n = self.rd.rank
            m = lin.mat_sub(lin.identity(n), self.table.theta_star(inv))
            out = self._minus_smith[inv] = lin.smith_form(m, ncols=n)
        return out

    def _smith_plus(self, inv: int) -> lin.SmithForm:
        out = self._plus_smith.get(inv)
        if out is None:
            n = self.rd.rank
            m = lin.mat_add(lin.identity(n), self.table.theta_star(inv))
            out = self._plus_smith[inv] = lin.smith_form(m, ncols=n)
        return out

    def x_key(self, x: StrongX) -> tuple:
        """Canonical key of x modulo torus-conjugation equivalence."""
        inv, t = x
        sf = self._smith_minus(inv)
        s = lin.mat_vec(sf.uinv, t)
        key = tuple(
            0 if (i < len(sf.diag) and sf.diag[i]) else s[i] % self.denom
            for i in range(len(s))
        )
        return (inv, key)

    def _key_frac(self, inv: int, t: tuple[Fraction, ...]) -> tuple:
        sf = self._smith_minus(inv)
        s = lin.mat_vec(sf.uinv, t)
        key = tuple(
            Fraction(0) if (i < len(sf.diag) and sf.diag[i]) else s[i] % 1
            for i in range(len(s))
        )
        return (inv, key)

    def _int_key_as_frac(self, key: tuple) -> tuple:
        inv, coords = key
        return (inv, tuple(Fraction(c, self.denom) for c in coords))

    def square_value(self, x: StrongX) -> tuple[Fraction, ...]:
        """Central cocharacter s with xi^2 = exp(2 pi i s)."""
        inv, t = x
        n = self.rd.rank
        onep = lin.mat_add(self.table.theta_star(inv), lin.identity(n))
        num = lin.vec_add(
            lin.mat_vec(onep, t),
            lin.vec_scale(self.table.cbits(inv), self.denom // 2),
        )
        return tuple(Fraction(v, self.denom) for v in num)

    def square_class_of(self, x: StrongX) -> int:
        return self._square_index[self.central_class_key(self.square_value(x))]

    def _square_key_if_valid(self, x: StrongX) -> tuple | None:
        """Square-class key of x, or None when x squares outside the center."""
        s = self.square_value(x)
        for a in self.rd.simple_roots:
            if lin.vec_dot(a, s) % 1:
                return None
        diff = lin.mat_sub(self._dstar, lin.identity(self.rd.rank))
        if any(v % 1 for v in lin.mat_vec(diff, s)):
            return None
        return self.central_class_key(s)

    # -- fibers ----------------------------------------------------------

    def fiber_group(self, inv: int) -> FiberGroup:
        """Generators of the translation two-group over one involution."""
        sf = self._smith_plus(inv)
        cols = lin.transpose(sf.vinv)
        gens = []
        for i, d in enumerate(sf.diag):
            if d >= 2:
                assert d == 2
                gens.append(lin.vec_scale(cols[i], self.denom // 2))
        theta = self.table.thetas[inv]
        return FiberGroup(rank=fiber_rank(theta), generators=tuple(gens))

    def fiber_elements(self, inv: int, key: tuple) -> tuple[lin.Vector, ...]:
        """Strong involutions over one involution with squares in one class.

        Elements are reduced numerators over denom, in closure order.
        Empty when the square class is not realized over this involution.
        """
        cached = self._fibers.get((inv, key))
        if cached is not None:
            return cached
        d = self.denom
        scaled = [f * d for f in self._class_rep(key)]
        assert all(v.denominator == 1 for v in scaled)
        target = tuple(
            int(v) - c * (d // 2)
            for v, c in zip(scaled, self.table.cbits(inv))
        )
        sf = self._smith_plus(inv)
        t0 = lin.solve_mod_presolved(sf, target, d)
        if t0 is None:
            out: tuple[lin.Vector, ...] = ()
        else:
            gens = self.fiber_group(inv).generators
            t0 = lin.vec_mod(t0, d)
            seen = {self.x_key((inv, t0)): t0}
            queue = [t0]
            while queue:
                cur = queue.pop(0)
                for g in gens:
                    nxt = lin.vec_mod(lin.vec_add(cur, g), d)
                    k = self.x_key((inv, nxt))
                    if k not in seen:
                        seen[k] = nxt
                        queue.append(nxt)
            out = tuple(seen.values())
            assert len(out) == 1 << fiber_rank(self.table.thetas[inv])
            assert all(
                self.central_class_key(self.square_value((inv, t))) == key
                for t in out
            )
        self._fibers[(inv, key)] = out
        return out

    # -- cross actions, Cayley transforms, gradings ----------------------

    def cross(self, j: int, x: StrongX) -> StrongX:
        """Cross action of the j-th simple reflection."""
        inv, t = x
        kind, nbr, a = self.table.status_row(inv)[j]
        rd = self.rd
        t2 = lin.mat_vec(rd.coreflections[j], t)
        half = self.denom // 2
        if kind in (IMAGINARY, REAL):
            return (inv, lin.vec_mod(t2, self.denom))
        if kind == COMPLEX_UP:
            sa = lin.mat_vec(rd.reflections[j], a)
            covec = rd.positive_roots[rd.root_index[sa]].covec
        else:
            covec = rd.simple_coroots[j]
        t2 = lin.vec_add(t2, lin.vec_scale(covec, half))
        return (nbr, lin.vec_mod(t2, self.denom))

    def cross_word(self, word, x: StrongX) -> StrongX:
        for j in reversed(tuple(word)):
            x = self.cross(j, x)
        return x

    def grading(self, x: StrongX, j: int) -> bool:
        """True when the imaginary simple root j is noncompact at x."""
        inv, t = x
        kbit = self.table.grading_shift(inv, j)
        d = self.denom
        num = 2 * lin.vec_dot(self.rd.simple_roots[j], t) + (kbit - 1) * d
        return num % (2 * d) == 0

    def root_grading(self, x: StrongX, root: Root) -> bool:
        """Grading of any imaginary root, by cross-action transport."""
        ht = sum(root.coeffs)
        if ht == 1:
            return self.grading(x, root.coeffs.index(1))
        rd = self.rd
        for j in range(rd.semisimple_rank):
            if root.vec != rd.simple_roots[j] and \
                    lin.vec_dot(root.vec, rd.simple_coroots[j]) > 0:
                vec = lin.mat_vec(rd.reflections[j], root.vec)
                lower = rd.positive_roots[rd.root_index[vec]]
                if sum(lower.coeffs) < ht:
                    return self.root_grading(self.cross(j, x), lower)
        raise AssertionError("no descent for imaginary root")

    def cayley(self, j: int, x: StrongX) -> StrongX:
        """Cayley transform through a noncompact imaginary simple root."""
        inv, t = x
        kind, nbr, _ = self.table.status_row(inv)[j]
        assert kind == IMAGINARY and self.grading(x, j)
        t2 = lin.mat_vec(self.rd.coreflections[j], t)
        return (nbr, lin.vec_mod(t2, self.denom))

    def inverse_cayley(self, j: int, x: StrongX) -> tuple[StrongX, ...]:
        """Valid inverse Cayley transforms through a real simple root.

        Candidates lie on the coroot line through the reflected torus part;
        the offset is pinned down to two residues by matching squares, and
        both survive or both fail the noncompactness test.
        """
        inv, t = x
        kind, nbr, _ = self.table.status_row(inv)[j]
        assert kind == REAL
        d = self.denom
        key = self.central_class_key(self.square_value(x))
        base = lin.mat_vec(self.rd.coreflections[j], t)
        av = self.rd.simple_coroots[j]
        out = []
        seen = set()
        for c in range(d):
            cand = (nbr, lin.vec_mod(lin.vec_add(base, lin.vec_scale(av, c)), d))
            if self._square_key_if_valid(cand) != key:
                continue
            k = self.x_key(cand)
            if k in seen:
                continue
            seen.add(k)
            if self.grading(cand, j):
                out.append(cand)
        return tuple(out)

    # -- weak real forms --------------------------------------------------

    @cached_property
    def _ad(self) -> InnerClass:
        """Parallel context on the adjoint group of the derived group."""
        simple = [f for f in self.lt.factors if f.letter != "T"]
        letters = "".join(
            letter for letter, idxs in self.delta.units
            if self.lt.factors[idxs[0]].letter != "T"
        )
        lt = parse_lie_type(".".join(str(f) for f in simple))
        rd = build_root_datum(lt, adjoint_generators(center_structure(lt)))
        if (
            rd == self.rd
            and lt.factors == self.lt.factors
            and letters == self.delta.letters
        ):
            return self
        return InnerClass(inner_class_involution(letters, rd, lt))

    @cached_property
    def _ad_transfer(self) -> tuple[lin.Matrix, int]:
        """Inverse of the adjoint simple-root matrix, as (numerators, den)."""
        ad = self._ad
        return lin.mat_inverse_rational(lin.freeze(list(ad.rd.simple_roots)))

    def _to_ad(self, t: lin.Vector) -> tuple[Fraction, ...]:
        """Image of a cocharacter in the adjoint cocharacter lattice."""
        pair = tuple(
            Fraction(lin.vec_dot(a, t), self.denom)
            for a in self.rd.simple_roots
        )
        mat, den = self._ad_transfer
        return tuple(Fraction(v, den) for v in lin.mat_vec(mat, pair))

    @cached_property
    def _fundamental_orbits(self) -> tuple[tuple[tuple, tuple[lin.Vector, ...]], ...]:
        """Cross-action orbits on the base fiber, as (class key, members)."""
        out = []
        for key in self._realized_keys:
            for members in self._orbit_partition(0, key):
                out.append((key, members))
        return tuple(out)

    def _orbit_partition(self, inv: int, key: tuple) -> list[tuple[lin.Vector, ...]]:
        """Orbits of the imaginary Weyl group on one fiber, in fiber order."""
        fiber = self.fiber_elements(inv, key)
        if not fiber:
            return []
        words = [
            reflection_element(self.rd, b).word
            for b in self.table.imaginary_basis(inv)
        ]
        index = {self.x_key((inv, t)): i for i, t in enumerate(fiber)}
        orbits = []
        done = set()
        for start in range(len(fiber)):
            if start in done:
                continue
            comp = [start]
            done.add(start)
            queue = [start]
            while queue:
                cur = queue.pop()
                for w in words:
                    y = self.cross_word(w, (inv, fiber[cur]))
                    assert y[0] == inv
                    tgt = index[self.x_key(y)]
                    if tgt not in done:
                        done.add(tgt)
                        comp.append(tgt)
                        queue.append(tgt)
            comp.sort()
            orbits.append(tuple(fiber[i] for i in comp))
        return orbits

    def _factor_ranges(self) -> list[range]:
        """Simple-root index range of each internal factor (root factors only)."""
        out = []
        pos = 0
        for f in self.lt.factors:
            if f.letter != "T":
                out.append(range(pos, pos + f.rank))
                pos += f.rank
        return out

    def _equal_rank_unit(self, unit) -> bool:
        letter, idxs = unit
        if letter == "C":
            return False
        ranges = dict(zip(
            [i for i, f in enumerate(self.lt.factors) if f.letter != "T"],
            self._factor_ranges(),
        ))
        return all(self.delta.perm[p] == p for p in ranges[idxs[0]])

    @cached_property
    def _ad_orbit_data(self) -> tuple[dict, ...]:
        """Per base-fiber orbit of an adjoint context: grading invariants."""
        assert self._ad is self
        ranges = self._factor_ranges()
        nfac = len(ranges)
        pos_im = self.table.imaginary_roots(0)
        basis = self.table.imaginary_basis(0)
        out = []
        for _, members in self._fundamental_orbits:
            x = (0, members[0])
            fac_nc = [0] * nfac
            for r in pos_im:
                if self.root_grading(x, r):
                    k = next(i for i, c in enumerate(r.coeffs) if c)
                    fac_nc[self.lt.simple_factor_index[k]] += 2
            quasisplit = any(
                all(self.root_grading((0, t), b) for b in basis)
                for t in members
            )
            iota = tuple(
                self._iota_tag(members[0], self.lt.factors[i], ranges[i])
                for i in range(nfac)
            )
            out.append({
                "nc": tuple(fac_nc),
                "total": sum(fac_nc),
                "iota": iota,
                "quasisplit": quasisplit,
            })
        assert sum(1 for d in out if d["quasisplit"]) == 1
        return tuple(out)

    def _iota_tag(self, t: lin.Vector, f: Factor, rng: range) -> int:
        """Distinguishes the two half-spin gradings of an equal-rank D factor.

        0: not applicable or orthogonal type; 1, 2: the two spin cosets.
        """
        if f.letter != "D":
            return 0
        if any(self.delta.perm[p] != p for p in rng):
            return 0
        pair = []
        for j in rng:
            v = 2 * lin.vec_dot(self.rd.simple_roots[j], t)
            assert v % self.denom == 0
            pair.append(v // self.denom)
        block = [
            [self.rd.cartan[j][i] for j in rng]
            for i in rng
        ]
        r = f.rank
        for tag, shifts in ((0, ()), (0, (r - 2, r - 1)), (1, (r - 2,)), (2, (r - 1,))):
            b = list(pair)
            for shift in shifts:
                b[shift] -= 1
            if lin.solve_mod(lin.freeze(block), tuple(b), 2) is not None:
                return tag
        raise AssertionError("unclassified half-spin coset")

    def _unit_names(self, orbit: int) -> tuple[str, ...]:
        """Name of each internal unit of an adjoint context at one orbit."""
        assert self._ad is self
        data = self._ad_orbit_data[orbit]
        names = []
        fac = 0
        for letter, idxs in self.delta.units:
            f = self.lt.factors[idxs[0]]
            if letter == "C":
                names.append(_complex_pair_name(f))
                fac += 2
                continue
            equal = self._equal_rank_unit((letter, idxs))
            values = sorted({d["nc"][fac] for d in self._ad_orbit_data})
            names.append(_factor_form_name(
                f, equal, data["nc"][fac], values, data["iota"][fac]
            ))
            fac += 1
        return tuple(names)

    @cached_property
    def _ad_menu(self) -> tuple[int, ...]:
        """Base-fiber orbit ids of an adjoint context, in menu order."""
        assert self._ad is self
        assert len(self._realized_keys) == 1
        data = self._ad_orbit_data

        def sort_key(o: int) -> tuple:
            d = data[o]
            return (d["total"], tuple(zip(d["nc"], d["iota"])))

        order = sorted(range(len(data)), key=sort_key)
        assert data[order[-1]]["quasisplit"]
        return tuple(order)

    @cached_property
    def _ad_orbit_lookup(self) -> dict[tuple, int]:
        """Canonical key of each base-fiber element to its orbit id."""
        assert self._ad is self
        out = {}
        for o, (_, members) in enumerate(self._fundamental_orbits):
            for t in members:
                frac = tuple(Fraction(v, self.denom) for v in t)
                out[self._key_frac(0, frac)] = o
        return out

    @cached_property
    def real_forms(self) -> tuple[RealFormLabel, ...]:
        """Weak real forms of the inner class, most compact first."""
        labels = []
        orbit_forms = self._orbit_form_indices
        for idx, (name, qs, ad_orbit) in enumerate(self._menu_core):
            first = min(
                o for o, f in enumerate(orbit_forms) if f == idx
            )
            key, members = self._fundamental_orbits[first]
            labels.append(RealFormLabel(
                index=idx,
                name=name,
                quasisplit=qs,
                orbit=ad_orbit,
                square_class=self._square_index[key],
                rep=StrongInvolutionRep(0, members[0]),
            ))
        return tuple(labels)

    @cached_property
    def _menu_core(self) -> tuple[tuple[str, bool, int], ...]:
        """(name, quasisplit, adjoint orbit) per weak form, in menu order."""
        if self.rd.semisimple_rank == 0:
            name = ".".join(
                _complex_pair_name(Factor("T", 1)) if letter == "C"
                else _TORUS_NAMES[letter]
                for letter, _ in self.delta.units
            )
            return ((name, True, 0),)
        ad = self._ad
        out = []
        for ad_orbit in ad._ad_menu:
            ad_names = iter(ad._unit_names(ad_orbit))
            names = []
            for letter, idxs in self.delta.units:
                if all(self.lt.factors[i].letter == "T" for i in idxs):
                    names.append(
                        _complex_pair_name(Factor("T", 1)) if letter == "C"
                        else _TORUS_NAMES[letter]
                    )
                else:
                    names.append(next(ad_names))
            qs = ad._ad_orbit_data[ad_orbit]["quasisplit"]
            out.append((".".join(names), qs, ad_orbit))
        return tuple(out)

    @cached_property
    def _orbit_form_indices(self) -> tuple[int, ...]:
        """Weak form (menu index) of each base-fiber orbit."""
        if self.rd.semisimple_rank == 0:
            return tuple(0 for _ in self._fundamental_orbits)
        ad = self._ad
        menu_pos = {ad_orbit: i for i, (_, _, ad_orbit) in enumerate(self._menu_core)}
        out = []
        for _, members in self._fundamental_orbits:
            key = ad._key_frac(0, self._to_ad(members[0]))
            out.append(menu_pos[ad._ad_orbit_lookup[key]])
        assert set(out) == set(range(len(self._menu_core)))
        return tuple(out)

    @cached_property
    def square_classes(self) -> tuple[SquareClass, ...]:
        """Realized square classes, numbered from the quasisplit form down."""
        order = []
        forms = self._orbit_form_indices
        for f in reversed(range(len(self._menu_core))):
            for o, (key, _) in enumerate(self._fundamental_orbits):
                if forms[o] == f and key not in order:
                    order.append(key)
        assert len(order) == len(self._realized_keys)
        return tuple(
            SquareClass(index=i, key=key, rep=self._class_rep(key))
            for i, key in enumerate(order)
        )

    @cached_property
    def _square_index(self) -> dict[tuple, int]:
        return {sq.key: sq.index for sq in self.square_classes}

    def real_form_of(self, x: StrongX) -> int:
        """Weak real form of a strong involution, by descent to the base."""
        inv, _ = x
        while self.table.lengths[inv] > 0:
            row = self.table.status_row(inv)
            nxt = None
            for j, (kind, _, _) in enumerate(row):
                if kind == COMPLEX_DOWN:
                    nxt = self.cross(j, x)
                    break
                if kind == REAL and nxt is None:
                    cands = self.inverse_cayley(j, x)
                    if cands:
                        nxt = cands[0]
            assert nxt is not None, "strong involution admits no descent"
            x = nxt
            inv = x[0]
        return self._base_form_by_key[self.x_key(x)]

    @cached_property
    def _base_form_by_key(self) -> dict[tuple, int]:
        out = {}
        for o, (_, members) in enumerate(self._fundamental_orbits):
            for t in members:
                out[self.x_key((0, t))] = self._orbit_form_indices[o]
        return out

    # -- strong real forms at a Cartan class ------------------------------

    def strong_real_forms_at(self, cartan: int) -> tuple[tuple[int, tuple[StrongOrbit, ...]], ...]:
        """Orbit partition of each realized square-class fiber at a Cartan.

        Returns (square class index, orbits) pairs in class order; member
        indices refer to positions in the class fiber listing.
        """
        cached = self._strong_at.get(cartan)
        if cached is not None:
            return cached
        inv = self.table.canonical_member(cartan)
        out = []
        for sq in self.square_classes:
            orbits = self._orbit_partition(inv, sq.key)
            if not orbits:
                continue
            forms = [self.real_form_of((inv, members[0])) for members in orbits]
            # Fiber members are numbered orbit by orbit, most split form
            # first, so member 0 always sits in the most split orbit.
            order = sorted(range(len(orbits)), key=lambda o: (-forms[o], o))
            entries = []
            start = 0
            for o in order:
                size = len(orbits[o])
                ids = tuple(range(start, start + size))
                entries.append(StrongOrbit(sq.index, forms[o], ids))
                start += size
            out.append((sq.index, tuple(entries)))
        result = tuple(out)
        self._strong_at[cartan] = result
        return result

    def form_cartans(self, form: int) -> tuple[int, ...]:
        """Cartan classes carrying strong involutions of one weak form."""
        out = []
        for c in range(len(self.table.classes)):
            for _, entries in self.strong_real_forms_at(c):
                if any(e.form == form for e in entries):
                    out.append(c)
                    break
        return tuple(out)

    def most_split_cartan(self, form: int) -> int:
        """Cartan class of maximal real rank within one weak form."""
        cartans = self.form_cartans(form)

        def real_rank(c: int) -> int:
            dec = rank_decomposition(self.table.theta_star(self.table.canonical_member(c)))
            return dec.split + dec.complex_pairs

        best = max(cartans, key=real_rank)
        assert sum(1 for c in cartans if real_rank(c) == real_rank(best)) == 1
        return best

    # -- component groups --------------------------------------------------

    def component_rank(self, form: int) -> int:
        """Rank of the component two-group of the real points."""
        inv = self.table.canonical_member(self.most_split_cartan(form))
        n = self.rd.rank
        theta = self.table.theta_star(inv)
        kernel = lin.kernel_basis(lin.mat_add(theta, lin.identity(n)), n)
        if not kernel:
            return 0
        span = lin.transpose(lin.freeze(list(kernel)))
        ksf = lin.smith_form(span)

        def in_kernel_coords(v: lin.Vector) -> lin.Vector:
            y = lin.solve_int_presolved(ksf, v)
            assert y is not None
            return y[: len(kernel)]

        minus = lin.mat_sub(lin.identity(n), theta)
        image = lin.freeze(
            [list(in_kernel_coords(c)) for c in lin.transpose(minus)]
        )
        sf = lin.smith_form(lin.transpose(image))
        assert all(d in (1, 2) for d in sf.diag)
        twos = [i for i, d in enumerate(sf.diag) if d == 2]
        if not twos:
            return 0
        bits = []
        for root in self.table.real_roots(inv):
            z = lin.mat_vec(sf.uinv, in_kernel_coords(root.covec))
            bits.append([z[i] % 2 for i in twos])
        return len(twos) - lin.f2_rank(lin.freeze(bits))

    # -- counting -----------------------------------------------------------

    def strong_count_at(self, cartan: int) -> int:
        """Number of strong involutions over one Cartan class, all squares."""
        inv = self.table.canonical_member(cartan)
        per = sum(
            len(self.fiber_elements(inv, sq.key)) for sq in self.square_classes
        )
        return per * len(self.table.classes[cartan])

    def strong_count(self) -> int:
        return sum(
            self.strong_count_at(c) for c in range(len(self.table.classes))
        )


def _factor_form_name(
    f: Factor, equal: bool, nc: int, values: list[int], iota: int
) -> str:
    """Display name of one simple factor's real form.

    values lists the factor's noncompact counts over all weak forms,
    ascending; nc and iota belong to the form being named.
    """
    letter, n = f.letter, f.rank
    if letter in "GFE":
        table = _EXCEPTIONAL_NAMES[(letter, n, equal)]
        assert len(values) == len(table)
        return table[values.index(nc)]
    if letter == "A":
        if not equal:
            if nc == values[-1]:
                return f"sl({n + 1},R)"
            return f"sl({(n + 1) // 2},H)"
        if n == 1:
            return "su(2)" if nc == 0 else "sl(2,R)"
        p, q = _split_product(nc // 2, n + 1)
        return f"su({p})" if q == 0 else f"su({p},{q})"
    if letter == "B":
        p, q = _split_product(nc, 2 * n + 1)
        return f"so({p})" if q == 0 else f"so({p},{q})"
    if letter == "C":
        if nc == n * n + n:
            return f"sp({2 * n},R)"
        p, q = _split_product(nc // 4, n)
        return f"sp({p})" if q == 0 else f"sp({p},{q})"
    assert letter == "D"
    if not equal:
        a, b = _split_product(nc // 4, n - 1)
        return f"so({2 * a + 1},{2 * b + 1})"
    if iota:
        star = f"so*({2 * n})"
        if n % 2 == 0:
            star += "[1,0]" if iota == 1 else "[0,1]"
        return star
    p, q = _split_product(nc, 2 * n)
    return f"so({p})" if q == 0 else f"so({p},{q})"


# -- report formatting -----------------------------------------------------


def format_real_form_menu(ic: InnerClass) -> list[str]:
    """Menu lines listing the weak real forms."""
    lines = ["(weak) real forms are:"]
    lines.extend(f"{f.index}: {f.name}" for f in ic.real_forms)
    return lines


def format_strong_real(
    report: tuple[tuple[int, tuple[StrongOrbit, ...]], ...]
) -> list[str]:
    """Report lines for the strong real forms at one Cartan class."""

    def orbit_lines(entries: tuple[StrongOrbit, ...]) -> list[str]:
        return [
            "real form #{}: [{}] ({})".format(
                e.form, ",".join(str(m) for m in e.members), len(e.members)
            )
            for e in entries
        ]

    if len(report) == 1:
        return orbit_lines(report[0][1])
    lines = [f"there are {len(report)} real form classes:"]
    for idx, entries in report:
        lines.append("")
        lines.append(f"class #{idx}:")
        lines.extend(orbit_lines(entries))
    return lines


# -- module-level operations -------------------------------------------------


def inner_class(letters: str, rd: RootDatum, lt: LieType) -> InnerClass:
    """Builds the full inner-class context from the letter string."""
    return InnerClass(inner_class_involution(letters, rd, lt))


def square_classes(ic: InnerClass) -> tuple[SquareClass, ...]:
    return ic.square_classes


def enumerate_real_forms(ic: InnerClass) -> tuple[RealFormLabel, ...]:
    return ic.real_forms


def strong_real_forms_at_cartan(
    ic: InnerClass, cartan: int
) -> tuple[tuple[int, tuple[StrongOrbit, ...]], ...]:
    return ic.strong_real_forms_at(cartan)


def component_group(ic: InnerClass, form: int) -> int:
    return ic.component_rank(form)
