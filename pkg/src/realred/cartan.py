"""Cartan classes of real forms and real Weyl group decompositions.

A conjugacy class of Cartan subgroups corresponds to a class of twisted
involutions; its report combines rank data of the involution, the types
of the imaginary, real, and restricted complex root subsystems, and the
partition of the corresponding fiber by weak real form.  The real Weyl
group W(K,H) is decomposed as (W_C)^tau . ((A . W_ic) x W_r).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import lin
from .involution import (
    InnerClass,
    RankDecomposition,
    StrongOrbit,
    StrongX,
    fiber_rank,
    rank_decomposition,
)
from .rootdata import Root, RootDatum
from .weyl import (
    InvolutionTable,
    reflection_element,
    reflection_matrix,
    word_from_matrix,
)


# -- root subsystem classification --------------------------------------


def _lex_positive(vec: lin.Vector) -> bool:
    for a in vec:
        if a:
            return a > 0
    return False


def _pairing(a: Root, b: Root) -> int:
    return lin.vec_dot(a.vec, b.covec)


def simple_basis(positives: list[Root]) -> list[Root]:
    """Indecomposable members of a closed set of positive roots."""
    vecs = {r.vec for r in positives}
    return [
        r for r in positives
        if not any(
            g.vec != r.vec and lin.vec_sub(r.vec, g.vec) in vecs
            for g in positives
        )
    ]


def _component_name(basis: list[Root], comp: list[int]) -> str:
    n = len(comp)
    if n == 1:
        return "A1"
    adj: dict[int, list[int]] = {i: [] for i in comp}
    bonds: dict[tuple[int, int], int] = {}
    for i in comp:
        for j in comp:
            if i < j:
                p = _pairing(basis[i], basis[j]) * _pairing(basis[j], basis[i])
                if p:
                    adj[i].append(j)
                    adj[j].append(i)
                    bonds[i, j] = p
    if any(p == 3 for p in bonds.values()):
        assert n == 2
        return "G2"
    doubles = [e for e, p in bonds.items() if p == 2]
    if doubles:
        assert len(doubles) == 1
        i, j = doubles[0]
        if _pairing(basis[i], basis[j]) != -2:
            i, j = j, i
        # now i is the long and j the short end of the double bond
        if n == 2:
            return "B2"
        if len(adj[j]) == 1:
            return f"B{n}"
        if len(adj[i]) == 1:
            return f"C{n}"
        assert n == 4
        return "F4"
    degrees = {v: len(adj[v]) for v in comp}
    forks = [v for v in comp if degrees[v] == 3]
    if not forks:
        assert all(d <= 2 for d in degrees.values())
        return f"A{n}"
    assert len(forks) == 1
    legs = []
    for start in adj[forks[0]]:
        length = 1
        prev, cur = forks[0], start
        while True:
            ahead = [v for v in adj[cur] if v != prev]
            if not ahead:
                break
            prev, cur = cur, ahead[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return f"D{n}"
    assert legs[:2] == [1, 2] and n in (6, 7, 8)
    return f"E{n}"


def system_type(positives) -> str:
    """Cartan type of a closed subsystem, "" when the set is empty.

    Components are listed in order of first appearance of their basis
    roots; rank-two systems with a double bond print as B2, and a pair
    of orthogonal A1's prints as A1.A1.
    """
    positives = list(positives)
    if not positives:
        return ""
    basis = simple_basis(positives)
    n = len(basis)
    seen = [False] * n
    names = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for u in range(n):
                if not seen[u] and _pairing(basis[v], basis[u]):
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comp.sort()
        names.append(_component_name(basis, comp))
    return ".".join(names)


_EXCEPTIONAL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600,
                       "F4": 1152, "G2": 12}


def weyl_order(type_str: str) -> int:
    """Order of the Weyl group of a Cartan type string like "A1.D4"."""
    if not type_str:
        return 1
    total = 1
    for part in type_str.split("."):
        letter, rank = part[0], int(part[1:])
        if letter == "A":
            total *= factorial(rank + 1)
        elif letter in ("B", "C"):
            total *= 2 ** rank * factorial(rank)
        elif letter == "D":
            total *= 2 ** (rank - 1) * factorial(rank)
        else:
            total *= _EXCEPTIONAL_ORDERS[part]
    return total


def _positive_of(rd, vec: lin.Vector) -> Root:
    idx = rd.root_index[vec]
    return rd.positive_roots[idx if idx >= 0 else ~idx]


def _complex_factor(
    table: InvolutionTable, inv: int
) -> tuple[list[Root], list[tuple[Root, Root]]]:
    """One side of the free complex root pairs at inv.

    The complex roots orthogonal to the half sums of imaginary and of
    real positive coroots split as a product R1 x theta(R1), with theta
    matching up the irreducible components in pairs.  Picks one
    component per pair; the fixed subgroup of W(R1 x theta(R1)) is the
    diagonal copy of W(R1).  Returns the positive roots of R1 together
    with (simple root, theta partner) pairs, whose commuting reflection
    products generate that diagonal.
    """
    rd = table.rd
    theta = table.thetas[inv]
    rho_i = lin.zero_vector(rd.rank)
    for r in table.imaginary_roots(inv):
        rho_i = lin.vec_add(rho_i, r.covec)
    rho_r = lin.zero_vector(rd.rank)
    for r in table.real_roots(inv):
        rho_r = lin.vec_add(rho_r, r.covec)
    free = []
    for r in rd.positive_roots:
        img = lin.mat_vec(theta, r.vec)
        if img == r.vec or img == lin.vec_neg(r.vec):
            continue
        if lin.vec_dot(r.vec, rho_i) or lin.vec_dot(r.vec, rho_r):
            continue
        free.append(r)
    if not free:
        return [], []
    # split into irreducible components
    index_of = {r.vec: k for k, r in enumerate(free)}
    comp = list(range(len(free)))

    def find(k: int) -> int:
        while comp[k] != k:
            comp[k] = comp[comp[k]]
            k = comp[k]
        return k

    for a in range(len(free)):
        for b in range(a + 1, len(free)):
            if lin.vec_dot(free[a].vec, free[b].covec):
                comp[find(a)] = find(b)
    members: dict[int, list[Root]] = {}
    for k, r in enumerate(free):
        members.setdefault(find(k), []).append(r)
    # theta pairs distinct components; keep the first of each pair
    partner: dict[int, int] = {}
    for rep, roots in members.items():
        img = lin.mat_vec(theta, roots[0].vec)
        other = find(index_of[_positive_of(rd, img).vec])
        assert other != rep
        partner[rep] = other
    assert all(partner[partner[rep]] == rep for rep in partner)
    side: list[Root] = []
    for rep in sorted(members, key=lambda rep: min(
            rd.root_index[r.vec] for r in members[rep])):
        if partner[rep] not in partner:
            continue
        del partner[rep]
        side.extend(members[rep])
    pairs = []
    for b in simple_basis(side):
        img = lin.mat_vec(theta, b.vec)
        other = _positive_of(rd, img)
        assert lin.vec_dot(b.vec, other.covec) == 0
        pairs.append((b, other))
    return side, pairs


# -- Cartan classes ------------------------------------------------------


@dataclass(frozen=True)
class CartanClass:
    """One conjugacy class of Cartan subgroups of the inner class."""

    index: int
    word: tuple[int, ...]
    decomposition: RankDecomposition
    orbit_size: int
    fiber_rank: int
    xr_count: int
    imaginary_type: str
    real_type: str
    complex_type: str
    partition: tuple[StrongOrbit, ...]


def cartan_class(ic: InnerClass, c: int) -> CartanClass:
    table = ic.table
    inv = table.canonical_member(c)
    theta = table.theta_star(inv)
    rank = fiber_rank(theta)
    orbit = len(table.classes[c])
    # The fiber partition has one square class exactly when the center
    # is trivial, so it is read off the adjoint inner class, whose class
    # enumeration agrees with ours.
    ad = ic._ad
    assert ad.table.word(ad.table.canonical_member(c)) == table.word(inv)
    entries = tuple(e for _, es in ad.strong_real_forms_at(c) for e in es)
    return CartanClass(
        index=c,
        word=table.word(inv),
        decomposition=rank_decomposition(theta),
        orbit_size=orbit,
        fiber_rank=rank,
        xr_count=orbit * 2 ** rank,
        imaginary_type=system_type(table.imaginary_roots(inv)),
        real_type=system_type(table.real_roots(inv)),
        complex_type=system_type(_complex_factor(table, inv)[0]),
        partition=entries,
    )


def cartan_classes(ic: InnerClass, form: int) -> tuple[CartanClass, ...]:
    """Cartan classes of one real form, under the inner-class indices."""
    return tuple(cartan_class(ic, c) for c in ic.form_cartans(form))


def _system_line(label: str, type_str: str) -> str:
    return f"{label}: {type_str}" if type_str else f"{label} is empty"


def format_cartan_block(cc: CartanClass) -> list[str]:
    word = ",".join(str(j + 1) for j in cc.word)
    dec = cc.decomposition
    lines = [
        f"Cartan #{cc.index}:",
        f"split: {dec.split}; compact: {dec.compact}; "
        f"complex: {dec.complex_pairs}",
        "canonical twisted involution:" + (f" {word}" if word else ""),
        f"twisted involution orbit size: {cc.orbit_size};  "
        f"fiber rank: {cc.fiber_rank};  #X_r: {cc.xr_count}",
        _system_line("imaginary root system", cc.imaginary_type),
        _system_line("real root system", cc.real_type),
        _system_line("complex factor", cc.complex_type),
    ]
    for e in cc.partition:
        members = ",".join(str(m) for m in e.members)
        lines.append(f"real form #{e.form}: [{members}] ({len(e.members)})")
    return lines


def format_cartan_report(ic: InnerClass, form: int) -> list[str]:
    out: list[str] = []
    for cc in cartan_classes(ic, form):
        if out:
            out.append("")
        out.extend(format_cartan_block(cc))
    return out


# -- real Weyl groups ----------------------------------------------------


@dataclass(frozen=True)
class RealWeylDecomposition:
    """Factors of W(K,H) = (W_C)^tau . ((A . W_ic) x W_r)."""

    complex_type: str
    a_rank: int
    compact_type: str
    real_type: str
    complex_generators: tuple[tuple[int, ...], ...]
    a_generators: tuple[tuple[int, ...], ...]
    compact_generators: tuple[tuple[int, ...], ...]
    real_generators: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return (
            weyl_order(self.complex_type)
            * 2 ** self.a_rank
            * weyl_order(self.compact_type)
            * weyl_order(self.real_type)
        )


def _fiber_points(ic: InnerClass, inv: int) -> list[StrongX]:
    return [
        (inv, t)
        for sq in ic.square_classes
        for t in ic.fiber_elements(inv, sq.key)
    ]


def _weyl_closure(rd: RootDatum, gens: list[lin.Matrix]) -> dict:
    """All products of the generators, mapped to their inverses."""
    ident = lin.identity(rd.rank)
    seen = {ident: ident}
    frontier = [(ident, ident)]
    while frontier:
        nxt = []
        for m, mi in frontier:
            for g in gens:
                p = lin.mat_mul(g, m)
                if p not in seen:
                    pi = lin.mat_mul(mi, g)
                    seen[p] = pi
                    nxt.append((p, pi))
        frontier = nxt
    return seen


def _a_group_data(
    ic: InnerClass, x: StrongX, im_basis: list[Root], wic_basis: list[Root]
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Rank and generator words of A = Stab_{W_i}(x) / W_ic."""
    rd = ic.rd
    wi = _weyl_closure(rd, [reflection_matrix(rd, r) for r in im_basis])
    key = ic.x_key(x)
    stab = []
    for m, mi in wi.items():
        w = word_from_matrix(rd, m, mi)
        if ic.x_key(ic.cross_word(w, x)) == key:
            stab.append((w, m))
    wic_gens = [reflection_matrix(rd, r) for r in wic_basis]
    wic = _weyl_closure(rd, wic_gens)
    assert all(m in {s for _, s in stab} for m in wic)
    count, extra = divmod(len(stab), len(wic))
    assert extra == 0 and count & (count - 1) == 0
    a_rank = count.bit_length() - 1
    out: list[tuple[int, ...]] = []
    picked: list[lin.Matrix] = []
    current = wic
    stab.sort(key=lambda t: (len(t[0]), t[0]))
    for w, m in stab:
        if len(current) == len(stab):
            break
        if m in current:
            continue
        out.append(w)
        picked.append(m)
        current = _weyl_closure(rd, wic_gens + picked)
    assert len(out) == a_rank
    return a_rank, tuple(out)


def real_weyl(ic: InnerClass, form: int, cartan: int) -> RealWeylDecomposition:
    """Decomposition of W(K,H) at one Cartan class of a real form.

    Grading-dependent factors use the first fiber point of the form at
    the canonical involution; independence of that choice is asserted.
    """
    table = ic.table
    rd = ic.rd
    inv = table.canonical_member(cartan)
    reps = [x for x in _fiber_points(ic, inv) if ic.real_form_of(x) == form]
    assert reps, "Cartan class does not meet the real form"
    x = reps[0]
    imaginary = table.imaginary_roots(inv)
    compact = [r for r in imaginary if not ic.root_grading(x, r)]
    compact_type = system_type(compact)
    for y in reps[1:]:
        other = [r for r in imaginary if not ic.root_grading(y, r)]
        assert system_type(other) == compact_type
    side, side_pairs = _complex_factor(table, inv)
    complex_gens = []
    for first, second in side_pairs:
        m = lin.mat_mul(
            reflection_matrix(rd, first), reflection_matrix(rd, second)
        )
        complex_gens.append(word_from_matrix(rd, m, m))
    complex_gens.sort(key=lambda w: (len(w), w))
    real_basis = simple_basis(table.real_roots(inv))
    im_basis = table.imaginary_basis(inv)
    wic_basis = simple_basis(compact)
    a_rank, a_gens = _a_group_data(ic, x, im_basis, wic_basis)
    for y in reps[1:]:
        other_basis = simple_basis(
            [r for r in imaginary if not ic.root_grading(y, r)]
        )
        assert _a_group_data(ic, y, im_basis, other_basis)[0] == a_rank
    return RealWeylDecomposition(
        complex_type=system_type(side),
        a_rank=a_rank,
        compact_type=compact_type,
        real_type=system_type(table.real_roots(inv)),
        complex_generators=tuple(complex_gens),
        a_generators=a_gens,
        compact_generators=tuple(
            reflection_element(rd, r).word for r in wic_basis
        ),
        real_generators=tuple(
            reflection_element(rd, r).word for r in real_basis
        ),
    )


def format_real_weyl(dec: RealWeylDecomposition) -> list[str]:
    lines = ["real weyl group is W^C.((A.W_ic) x W^R), where:"]
    lines.append(
        f"W^C is isomorphic to a Weyl group of type {dec.complex_type}"
        if dec.complex_type else "W^C is trivial"
    )
    lines.append(
        f"A is an elementary abelian 2-group of rank {dec.a_rank}"
        if dec.a_rank else "A is trivial"
    )
    lines.append(
        f"W_ic is a Weyl group of type {dec.compact_type}"
        if dec.compact_type else "W_ic is trivial"
    )
    lines.append(
        f"W^R is a Weyl group of type {dec.real_type}"
        if dec.real_type else "W^R is trivial"
    )
    sections = (
        ("W^C", dec.complex_generators),
        ("A", dec.a_generators),
        ("W_ic", dec.compact_generators),
        ("W^R", dec.real_generators),
    )
    for label, gens in sections:
        if gens:
            lines.append("")
            lines.append(f"generators for {label}:")
            lines.extend(",".join(str(j + 1) for j in w) for w in gens)
    return lines


# -- Cayley graph of Cartan classes --------------------------------------


@dataclass(frozen=True)
class CartanHasse:
    """Cayley-transform graph on the Cartan classes of one real form.

    Edges point from a class to the more split class reached by a
    Cayley transform; most_split lists the classes that are the most
    split Cartan of some real form of the inner class.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    most_split: tuple[int, ...]


def cartan_hasse(ic: InnerClass, form: int) -> CartanHasse:
    table = ic.table
    rd = ic.rd
    class_of = {
        i: ci for ci, members in enumerate(table.classes) for i in members
    }
    nodes = ic.form_cartans(form)
    edges = set()
    for c in nodes:
        inv = table.canonical_member(c)
        theta = table.thetas[inv]
        for x in _fiber_points(ic, inv):
            if ic.real_form_of(x) != form:
                continue
            for r in table.imaginary_roots(inv):
                if ic.root_grading(x, r):
                    target = table.lookup(
                        lin.mat_mul(reflection_matrix(rd, r), theta)
                    )
                    edges.add((c, class_of[target]))
    flags = {ic.most_split_cartan(f) for f in range(len(ic.real_forms))}
    return CartanHasse(
        tuple(nodes),
        tuple(sorted(edges)),
        tuple(sorted(flags & set(nodes))),
    )
