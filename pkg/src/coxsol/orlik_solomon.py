"""The Orlik-Solomon algebra of a reflection arrangement.

Hyperplanes are identified with the reflections of the group; the matroid
data (ranks, closures, circuits) is read off exact row reductions of the
corresponding root vectors.  The algebra is presented on no-broken-circuit
monomials with respect to a linear order of the hyperplanes; arbitrary
monomials are rewritten into that basis by the circuit boundary relations.
Flats decompose the algebra into components permuted the same way the group
permutes the flats themselves, which yields one character per orbit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .chars import ClassFunction
from .coxeter import CoxeterGroup, Subgroup
from .cyclo import scalar_is_zero, scalar_eq


class RankGuard(RuntimeError):
    """Arrangement rank outside the supported range."""


class StraighteningFailure(RuntimeError):
    """No rewriting step applies; the monomial order logic is broken."""


MAX_RANK = 4


class Arrangement:
    """An ordered set of reflecting hyperplanes of a Coxeter group."""

    def __init__(self, W: CoxeterGroup, reflections=None, seed_order=None):
        self.W = W
        order = sorted(W.reflections if reflections is None else reflections)
        if seed_order is not None:
            random.Random(seed_order).shuffle(order)
        self.hyperplanes = list(order)      # position -> reflection
        self.position = {t: i for i, t in enumerate(order)}
        self.n = len(order)
        self.rows = [W.roots[W.reflection_root[t]] for t in order]

    def act(self, pos: int, w: int) -> int:
        """Position of the image hyperplane under right action by w."""
        return self.position[self.W.conj(self.hyperplanes[pos], w)]


class Flat:
    __slots__ = ("id", "key", "rank", "basis", "pivots")

    def __init__(self, fid, key, rank, basis, pivots):
        self.id = fid
        self.key = key          # frozenset of hyperplane positions
        self.rank = rank
        self.basis = basis      # rref rows of the root span
        self.pivots = pivots


class IntersectionLattice:
    """All intersections of hyperplanes, organised by their root spans."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self.flats = []
        self._by_span = {}
        self.by_key = {}
        self.child = {}
        self._build()
        self.top_rank = max(f.rank for f in self.flats)

    def _add_flat(self, basis, pivots):
        spankey = tuple(linalg.vec_key(row) for row in basis)
        if spankey in self._by_span:
            return self._by_span[spankey]
        key = frozenset(
            p for p in range(self.arr.n)
            if linalg.coords_in_rowspace(basis, pivots, self.arr.rows[p])
            is not None)
        fid = len(self.flats)
        flat = Flat(fid, key, len(basis), basis, pivots)
        self.flats.append(flat)
        self._by_span[spankey] = fid
        self.by_key[key] = fid
        return fid

    def _build(self):
        queue = [self._add_flat((), [])]
        done = set()
        while queue:
            fid = queue.pop()
            if fid in done:
                continue
            done.add(fid)
            flat = self.flats[fid]
            for p in range(self.arr.n):
                if p in flat.key:
                    self.child[fid, p] = fid
                    continue
                basis, pivots = linalg.rref(list(flat.basis) + [self.arr.rows[p]])
                cid = self._add_flat(basis, pivots)
                self.child[fid, p] = cid
                if cid not in done:
                    queue.append(cid)

    def flat_of(self, positions) -> int:
        fid = 0
        for p in positions:
            fid = self.child[fid, p]
        return fid

    def rank(self, positions) -> int:
        return self.flats[self.flat_of(positions)].rank

    def independent(self, positions) -> bool:
        positions = tuple(positions)
        return self.rank(positions) == len(positions)

    def act_on_flat(self, fid: int, w: int) -> int:
        key = frozenset(self.arr.act(p, w) for p in self.flats[fid].key)
        return self.by_key[key]


class OSAlgebra:
    """Exterior-style algebra on the hyperplanes modulo circuit boundaries."""

    def __init__(self, arrangement: Arrangement):
        self.arr = arrangement
        self.lattice = IntersectionLattice(arrangement)
        if self.lattice.top_rank > MAX_RANK:
            raise RankGuard(f"rank {self.lattice.top_rank} arrangement")
        self._memo = {}
        self._nbc = None
        self._flat_monomials = None

    # -- the no-broken-circuit basis ------------------------------------------

    def _broken_circuit_witness(self, mono):
        """The least h completing a circuit of which mono holds the rest.

        Returns (h, circuit) with h the minimum of the circuit, or None; mono
        is assumed independent and sorted.
        """
        lat = self.lattice
        closure = lat.flats[lat.flat_of(mono)].key
        inside = set(mono)
        for h in sorted(closure - inside):
            if h > mono[-1]:
                break
            circuit = [h]
            for x in mono:
                if x < h:
                    # x below h must not take part in the dependency
                    if lat.independent([y for y in mono if y != x] + [h]):
                        circuit = None
                        break
                elif lat.independent([y for y in mono if y != x] + [h]):
                    circuit.append(x)
            if circuit is not None:
                return h, circuit
        return None

    def is_nbc(self, mono) -> bool:
        mono = tuple(sorted(mono))
        if not mono:
            return True
        if not self.lattice.independent(mono):
            return False
        return self._broken_circuit_witness(mono) is None

    @property
    def nbc_basis(self):
        """NBC monomials grouped by degree."""
        if self._nbc is None:
            levels = [[()]]
            while levels[-1]:
                nxt = []
                for mono in levels[-1]:
                    start = mono[-1] + 1 if mono else 0
                    for p in range(start, self.arr.n):
                        cand = mono + (p,)
                        if self.lattice.independent(cand) and \
                                self._broken_circuit_witness(cand) is None:
                            nxt.append(cand)
                levels.append(nxt)
            self._nbc = levels[:-1]
        return self._nbc

    @property
    def dimension(self) -> int:
        return sum(len(level) for level in self.nbc_basis)

    def monomials_of_flat(self, fid: int):
        if self._flat_monomials is None:
            self._flat_monomials = {}
            for level in self.nbc_basis:
                for mono in level:
                    self._flat_monomials.setdefault(
                        self.lattice.flat_of(mono), []).append(mono)
        return self._flat_monomials.get(fid, [])

    # -- straightening ---------------------------------------------------------

    def straighten(self, mono) -> dict:
        """Coordinates of a product of generators in the NBC basis."""
        mono = tuple(mono)
        if len(set(mono)) < len(mono):
            return {}
        sign, mono = _sort_sign(mono)
        out = self._straighten_sorted(mono)
        if sign == 1:
            return dict(out)
        return {m: -c for m, c in out.items()}

    def _straighten_sorted(self, mono) -> dict:
        if mono in self._memo:
            return self._memo[mono]
        if not self.lattice.independent(mono):
            out = {}
        else:
            found = self._broken_circuit_witness(mono)
            if found is None:
                out = {mono: Fraction(1)}
            else:
                h, circuit = found
                rest = tuple(x for x in mono if x not in circuit)
                s0, merged = _wedge_sign(rest, tuple(circuit[1:]))
                if merged != mono:
                    raise StraighteningFailure(str(mono))
                out = {}
                for i in range(1, len(circuit)):
                    dropped = tuple(circuit[:i] + circuit[i + 1:])
                    si, m2 = _wedge_sign(rest, dropped)
                    coeff = -s0 * si * (-1 if i % 2 else 1)
                    for m3, c3 in self._straighten_sorted(m2).items():
                        acc = out.get(m3, Fraction(0)) + coeff * c3
                        out[m3] = acc
                out = {m: c for m, c in out.items() if not scalar_is_zero(c)}
        self._memo[mono] = out
        return out

    # -- elements ----------------------------------------------------------------

    def element(self, coeffs: dict) -> "OSElement":
        acc = {}
        for mono, c in coeffs.items():
            for m2, c2 in self.straighten(mono).items():
                acc[m2] = acc.get(m2, Fraction(0)) + c * c2
        return OSElement(self, acc)

    def generator(self, pos: int) -> "OSElement":
        return self.element({(pos,): Fraction(1)})

    def one(self) -> "OSElement":
        return OSElement(self, {(): Fraction(1)})

    def act_monomial(self, mono, w: int) -> dict:
        image = tuple(self.arr.act(p, w) for p in mono)
        return self.straighten(image)

    # -- characters of flat components ---------------------------------------------

    def component_character(self, flat_ids, acting: Subgroup) -> ClassFunction:
        """Trace of the acting subgroup on the components of the given flats."""
        W = self.arr.W
        wanted = set(flat_ids)
        basis = [m for fid in sorted(wanted) for m in self.monomials_of_flat(fid)]
        traces = []
        for c in acting.classes:
            t = Fraction(0)
            for mono in basis:
                img = self.act_monomial(mono, c.rep)
                for m2 in img:
                    assert self.lattice.flat_of(m2) in wanted, \
                        "component is not invariant under the acting subgroup"
                t = t + img.get(mono, Fraction(0))
            traces.append(t)
        return ClassFunction(acting, traces)

    def whole_character(self, acting: Subgroup) -> ClassFunction:
        return self.component_character(range(len(self.lattice.flats)), acting)

    def top_flat(self) -> int:
        return self.lattice.flat_of(tuple(range(self.arr.n)))


class OSElement:
    """An element written in the NBC basis of its algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: OSAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = {m: c for m, c in coeffs.items() if not scalar_is_zero(c)}

    def coefficient(self, mono):
        return self.coeffs.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return OSElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return OSElement(self.algebra,
                         {m: c * scalar for m, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        return OSElement(self.algebra,
                         {m: scalar * c for m, c in self.coeffs.items()})

    def wedge(self, other) -> "OSElement":
        alg = self.algebra
        acc = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                if set(m1) & set(m2):
                    continue
                sign, merged = _wedge_sign(m1, m2)
                for m3, c3 in alg._straighten_sorted(merged).items():
                    acc[m3] = acc.get(m3, Fraction(0)) + sign * c1 * c2 * c3
        return OSElement(alg, acc)

    def act(self, w: int) -> "OSElement":
        alg = self.algebra
        acc = {}
        for mono, c in self.coeffs.items():
            for m2, c2 in alg.act_monomial(mono, w).items():
                acc[m2] = acc.get(m2, Fraction(0)) + c * c2
        return OSElement(alg, acc)

    def act_sum(self, galg) -> "OSElement":
        """Right action of a group algebra element, extended linearly."""
        out = OSElement(self.algebra, {})
        for w, c in galg.coeffs.items():
            out = out + c * self.act(w)
        return out

    def __eq__(self, other):
        if not isinstance(other, OSElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(scalar_eq(self.coefficient(m), other.coefficient(m))
                   for m in keys)

    def __hash__(self):
        return hash(id(self))

    def __repr__(self):
        return f"OSElement({self.coeffs!r})"


def _sort_sign(mono):
    mono = list(mono)
    sign, changed = 1, True
    while changed:
        changed = False
        for i in range(len(mono) - 1):
            if mono[i] > mono[i + 1]:
                mono[i], mono[i + 1] = mono[i + 1], mono[i]
                sign = -sign
                changed = True
    return sign, tuple(mono)


def _wedge_sign(a, b):
    """Sign and merge of the concatenation of two sorted disjoint tuples."""
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


# -- cached algebras and the standard characters --------------------------------------


def os_algebra(W: CoxeterGroup, seed_order=None) -> OSAlgebra:
    cache = getattr(W, "_os_algebras", None)
    if cache is None:
        cache = W._os_algebras = {}
    key = (None, seed_order)
    if key not in cache:
        cache[key] = OSAlgebra(Arrangement(W, seed_order=seed_order))
    return cache[key]


def sub_os_algebra(W: CoxeterGroup, L, seed_order=None) -> OSAlgebra:
    cache = getattr(W, "_os_algebras", None)
    if cache is None:
        cache = W._os_algebras = {}
    L = tuple(sorted(L))
    key = (L, seed_order)
    if key not in cache:
        refl = sorted(set(W.parabolic(L).members) & set(W.reflections))
        cache[key] = OSAlgebra(Arrangement(W, reflections=refl,
                                           seed_order=seed_order))
    return cache[key]


def flat_shape_map(W: CoxeterGroup, algebra: OSAlgebra | None = None) -> dict:
    """Assign to each flat of the full arrangement the shape of its stabilising
    parabolic; the orbits of flats match the shapes one to one."""
    alg = algebra if algebra is not None else os_algebra(W)
    lat = alg.lattice
    shapes = W.shapes()
    label = {}
    for sh in shapes:
        J = sh.canonical
        basis, pivots = linalg.rref([W.roots[W.simple_root[j]] for j in J])
        key = frozenset(
            p for p in range(alg.arr.n)
            if linalg.coords_in_rowspace(basis, pivots, alg.arr.rows[p])
            is not None)
        seed = lat.by_key[key]
        orbit, frontier = {seed}, [seed]
        while frontier:
            fid = frontier.pop()
            for g in W.generators:
                nid = lat.act_on_flat(fid, g)
                if nid not in orbit:
                    orbit.add(nid)
                    frontier.append(nid)
        for fid in orbit:
            assert fid not in label, "flat orbits must not overlap"
            label[fid] = sh.index
    assert len(label) == len(lat.flats), "every flat belongs to a shape orbit"
    return label


def shape_component_character(W: CoxeterGroup, shape) -> ClassFunction:
    """Character of W on the components of all flats of one shape."""
    alg = os_algebra(W)
    label = flat_shape_map(W, alg)
    fids = [fid for fid, idx in label.items() if idx == shape.index]
    return alg.component_character(fids, W.full())


def whole_space_character(W: CoxeterGroup) -> ClassFunction:
    return os_algebra(W).whole_character(W.full())


def top_component_character(W: CoxeterGroup, L) -> ClassFunction:
    """Character of W_L on the top component of its own arrangement."""
    alg = sub_os_algebra(W, L)
    return alg.component_character([alg.top_flat()], W.parabolic(L))


def top_component_tilde(W: CoxeterGroup, L) -> ClassFunction:
    """Character of the normalizer of W_L on the same top component."""
    alg = sub_os_algebra(W, L)
    return alg.component_character([alg.top_flat()],
                                   W.normalizer_of_parabolic(L))


def dihedral_hyperplane_angles(W: CoxeterGroup) -> dict:
    """Angle label of each reflecting hyperplane, in units of pi/m.

    The hyperplane of s gets label 0 and the hyperplane of t label m-1; the
    remaining labels follow by rotating with ts.
    """
    assert W.rank == 2
    m = W.matrix[0, 1]
    s, t = W.generators
    ts = W.mult(t, s)
    out = {}
    x = W.identity
    for p in range(m):
        out[W.conj(s, x)] = (2 * p) % m
        out[W.conj(t, x)] = (m - 1 + 2 * p) % m
        x = W.mult(x, ts)
    assert len(out) == m
    return out


def dihedral_top_model(W: CoxeterGroup) -> ClassFunction:
    """Independent model of the top component character of a dihedral group.

    Hyperplanes around a 2m-gon are labelled 0..m-1 with the hyperplane of s
    at 0 and the hyperplane of t at m-1; conjugation acts on labels and the
    top component has basis a_0 a_j, giving the trace in closed form.
    """
    m = W.matrix[0, 1]
    label_of_refl = dihedral_hyperplane_angles(W)
    refl_of_label = {j: r for r, j in label_of_refl.items()}

    def trace(w):
        pi = {j: label_of_refl[W.conj(r, w)] for j, r in refl_of_label.items()}
        fixed = sum(1 for j in range(1, m) if pi[j] == j)
        return Fraction(fixed - (1 if pi[0] != 0 else 0))

    return ClassFunction.from_function(W.full(), trace)
