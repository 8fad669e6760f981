"""Finite Coxeter groups in their reflection representation.

A group is built from a Coxeter matrix.  The bilinear form has entries
-cos(pi/m(i,j)) realised exactly in Q(zeta_n) with n = 2*lcm of the
off-diagonal orders, the root system is closed up from the simple roots,
and every element is stored as the permutation it induces on the roots.
Lengths, reduced words, conjugacy classes, coset transversals, shapes,
normalizers and fixed spaces are all derived from that data with exact
arithmetic throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclo, cos_pi_over, rational
from . import linalg


class InvalidMatrix(ValueError):
    """The given matrix is not a Coxeter matrix."""


class InfiniteOrTooLarge(RuntimeError):
    """Enumeration exceeded the configured element bound."""


DEFAULT_MAX_ELEMENTS = 10000


class CoxeterMatrix:
    """A symmetric integer matrix with 1 on the diagonal and entries >= 2 off it."""

    __slots__ = ("rank", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InvalidMatrix("matrix must be square")
        for i in range(n):
            if rows[i][i] != 1:
                raise InvalidMatrix("diagonal entries must be 1")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidMatrix("matrix must be symmetric")
                if rows[i][j] < 2:
                    raise InvalidMatrix("off-diagonal entries must be >= 2")
        self.rank = n
        self.rows = rows

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, CoxeterMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def conductor(self) -> int:
        orders = [self.rows[i][j] for i in range(self.rank)
                  for j in range(i + 1, self.rank)]
        return 2 * math.lcm(*orders) if orders else 2

    def __repr__(self):
        return f"CoxeterMatrix({list(map(list, self.rows))})"


_NAMED = {
    "A1": [[1]],
    "A2": [[1, 3], [3, 1]],
    "A3": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
    "B2": [[1, 4], [4, 1]],
    "B3": [[1, 4, 2], [4, 1, 3], [2, 3, 1]],
    "H3": [[1, 5, 2], [5, 1, 3], [2, 3, 1]],
}


def matrix_from_spec(spec: str, rank_bound: int = 4) -> CoxeterMatrix:
    """Parse a group specification like "A3", "I2(7)" or "A1xI2(5)"."""
    blocks = []
    for part in spec.split("x"):
        part = part.strip()
        if part in _NAMED:
            blocks.append(_NAMED[part])
        elif part.startswith("I2(") and part.endswith(")"):
            try:
                m = int(part[3:-1])
            except ValueError:
                raise InvalidMatrix(f"bad dihedral order in {part!r}")
            if m < 2:
                raise InvalidMatrix("I2(m) needs m >= 2")
            blocks.append([[1, m], [m, 1]])
        else:
            raise InvalidMatrix(f"unknown group factor {part!r}")
    rank = sum(len(b) for b in blocks)
    if rank > rank_bound:
        raise InvalidMatrix(f"total rank {rank} exceeds bound {rank_bound}")
    rows = [[2] * rank for _ in range(rank)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                rows[at + i][at + j] = x
        at += len(b)
    return CoxeterMatrix(rows)


class ConjugacyClass:
    __slots__ = ("rep", "members", "is_cuspidal")

    def __init__(self, rep, members, is_cuspidal=None):
        self.rep = rep
        self.members = members
        self.is_cuspidal = is_cuspidal

    @property
    def size(self):
        return len(self.members)


class CoxeterGroup:
    """A finite Coxeter group with its root system and multiplication table."""

    def __init__(self, matrix: CoxeterMatrix, max_elements: int = DEFAULT_MAX_ELEMENTS,
                 spec: str | None = None):
        self.matrix = matrix
        self.rank = matrix.rank
        self.spec = spec
        self.conductor = matrix.conductor()
        self._subgroups = {}
        self._parabolics = {}
        self._fixdim = {}
        self._build_form()
        self._build_roots(max_elements)
        self._build_elements(max_elements)

    # -- construction --------------------------------------------------------

    def _build_form(self):
        n, r = self.conductor, self.rank
        one = rational(1, n)
        form = [[one for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                if i != j:
                    form[i][j] = -cos_pi_over(self.matrix[i, j], n)
        self.form = [tuple(row) for row in form]
        self._zero = rational(0, n)
        self._one = one

    def bilinear(self, u, v) -> Cyclo:
        """The invariant bilinear form B(u, v) in simple root coordinates."""
        acc = self._zero
        for i, ui in enumerate(u):
            if ui:
                row = self.form[i]
                for j, vj in enumerate(v):
                    if vj:
                        acc = acc + ui * row[j] * vj
        return acc

    def _apply_gen(self, i: int, v):
        """Image of the vector v under the i-th simple reflection."""
        c = self._zero
        for j, vj in enumerate(v):
            if vj:
                c = c + vj * self.form[j][i]
        out = list(v)
        out[i] = out[i] - 2 * c
        return tuple(out)

    def _build_roots(self, max_elements):
        r = self.rank
        self.roots = []
        self.root_index = {}
        self.root_positive = []
        self.root_negative_of = []
        self.simple_root = []

        def add_root(vec, positive):
            key = linalg.vec_key(vec)
            idx = len(self.roots)
            self.roots.append(vec)
            self.root_index[key] = idx
            self.root_positive.append(positive)
            self.root_negative_of.append(None)
            return idx

        for i in range(r):
            vec = tuple(self._one if j == i else self._zero for j in range(r))
            self.simple_root.append(add_root(vec, True))
        for i in range(r):
            vec = tuple(-self._one if j == i else self._zero for j in range(r))
            ni = add_root(vec, False)
            self.root_negative_of[self.simple_root[i]] = ni
            self.root_negative_of[ni] = self.simple_root[i]

        frontier = list(range(len(self.roots)))
        while frontier:
            nxt = []
            for ri in frontier:
                vec = self.roots[ri]
                for i in range(r):
                    img = self._apply_gen(i, vec)
                    key = linalg.vec_key(img)
                    if key in self.root_index:
                        continue
                    # a simple reflection flips the sign only of its own root pair
                    if ri == self.simple_root[i]:
                        positive = False
                    elif self.root_negative_of[ri] == self.simple_root[i]:
                        positive = True
                    else:
                        positive = self.root_positive[ri]
                    idx = add_root(img, positive)
                    neg = tuple(-x for x in img)
                    nkey = linalg.vec_key(neg)
                    if nkey in self.root_index:
                        other = self.root_index[nkey]
                        self.root_negative_of[idx] = other
                        self.root_negative_of[other] = idx
                    nxt.append(idx)
                    if len(self.roots) > 2 * max_elements:
                        raise InfiniteOrTooLarge(
                            f"root system exceeded {2 * max_elements} roots")
            frontier = nxt
        assert all(n is not None for n in self.root_negative_of)
        self.n_roots = len(self.roots)
        self.positive_roots = [i for i in range(self.n_roots) if self.root_positive[i]]
        assert 2 * len(self.positive_roots) == self.n_roots

    def _gen_perm(self, i: int):
        perm = []
        for vec in self.roots:
            img = self._apply_gen(i, vec)
            perm.append(self.root_index[linalg.vec_key(img)])
        return tuple(perm)

    def _build_elements(self, max_elements):
        r = self.rank
        nroots = self.n_roots
        gen_perms = [self._gen_perm(i) for i in range(r)]
        ident = tuple(range(nroots))

        self.perms = [ident]
        self.words = [()]
        self.lengths = [0]
        index = {ident: 0}

        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                pw = self.perms[w]
                for s in range(r):
                    # ascent iff w(alpha_s) is positive
                    if not self.root_positive[pw[self.simple_root[s]]]:
                        continue
                    ps = gen_perms[s]
                    child = tuple(pw[ps[j]] for j in range(nroots))
                    if child in index:
                        continue
                    if len(self.perms) >= max_elements:
                        raise InfiniteOrTooLarge(
                            f"group exceeded {max_elements} elements")
                    index[child] = len(self.perms)
                    self.perms.append(child)
                    self.words.append(self.words[w] + (s,))
                    self.lengths.append(self.lengths[w] + 1)
                    nxt.append(index[child])
            frontier = nxt

        self.order = len(self.perms)
        self.elem_index = index
        self.generators = [index[g] for g in gen_perms] if r else []
        self.identity = 0

        # multiplication and inverse tables
        mult = []
        for pa in self.perms:
            row = [0] * self.order
            for b, pb in enumerate(self.perms):
                row[b] = index[tuple(pa[pb[j]] for j in range(nroots))]
            mult.append(row)
        self.mult_table = mult
        inv = [0] * self.order
        for a, pa in enumerate(self.perms):
            q = [0] * nroots
            for j in range(nroots):
                q[pa[j]] = j
            inv[a] = index[tuple(q)]
        self.inv_table = inv

        self.longest = max(range(self.order), key=lambda w: self.lengths[w])
        assert self.lengths[self.longest] == len(self.positive_roots)

        self._build_classes()
        self._build_reflections()

    def _build_classes(self):
        seen = [False] * self.order
        classes = []
        for w in range(self.order):
            if seen[w]:
                continue
            members = {self.conj(w, x) for x in range(self.order)}
            for x in members:
                seen[x] = True
            rep = min(members)
            cusp = self.fix_dim(rep) == 0 if self.rank else True
            classes.append(ConjugacyClass(rep, frozenset(members), cusp))
        classes.sort(key=lambda c: c.rep)
        self.classes = classes
        self.class_index = {}
        for k, c in enumerate(classes):
            for x in c.members:
                self.class_index[x] = k

    def _build_reflections(self):
        refl = set()
        for s in self.generators:
            for x in range(self.order):
                refl.add(self.conj(s, x))
        self.reflections = sorted(refl)
        self.reflection_root = {}
        for t in self.reflections:
            pt = self.perms[t]
            own = [i for i in self.positive_roots if pt[i] == self.root_negative_of[i]]
            assert len(own) == 1, "a reflection negates exactly one positive root"
            self.reflection_root[t] = own[0]

    # -- elementary operations -------------------------------------------------

    def mult(self, a: int, b: int) -> int:
        return self.mult_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def conj(self, x: int, w: int) -> int:
        """x conjugated by w, i.e. w^-1 x w."""
        return self.mult_table[self.mult_table[self.inv_table[w]][x]][w]

    def prod(self, elems) -> int:
        out = self.identity
        for e in elems:
            out = self.mult_table[out][e]
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv_table[x], -k)
        out = self.identity
        for _ in range(k):
            out = self.mult_table[out][x]
        return out

    def length(self, w: int) -> int:
        return self.lengths[w]

    def word(self, w: int):
        return self.words[w]

    def word_str(self, w: int) -> str:
        return "*".join(f"s{i + 1}" for i in self.words[w]) or "e"

    def element_from_word(self, word) -> int:
        return self.prod(self.generators[i] for i in word)

    def parse_word_str(self, text: str):
        """Inverse of word_str: 'e' or 's1*s2*...' back to generator indices."""
        text = text.strip()
        if text == "e":
            return ()
        out = []
        for part in text.split("*"):
            if not part.startswith("s") or not part[1:].isdigit():
                raise ValueError(f"bad word {text!r}")
            i = int(part[1:]) - 1
            if not 0 <= i < self.rank:
                raise ValueError(f"generator out of range in {text!r}")
            out.append(i)
        return tuple(out)

    # -- reflection representation ----------------------------------------------

    def matrix_of(self, w: int):
        """Rows are the images of the simple roots under w."""
        pw = self.perms[w]
        return [self.roots[pw[self.simple_root[i]]] for i in range(self.rank)]

    def fixed_space(self, w: int):
        """Canonical basis (rref rows) of the fixed space of w."""
        m = self.matrix_of(w)
        rows = []
        for j in range(self.rank):
            rows.append(tuple(m[i][j] - (self._one if i == j else self._zero)
                              for i in range(self.rank)))
        return linalg.nullspace(rows, self.rank)

    def fix_dim(self, w: int) -> int:
        if w not in self._fixdim:
            self._fixdim[w] = len(self.fixed_space(w))
        return self._fixdim[w]

    def parabolic_fixed_space(self, J):
        """Basis of the common fixed space of the standard parabolic W_J."""
        rows = []
        for s in J:
            m = self.matrix_of(self.generators[s])
            for j in range(self.rank):
                rows.append(tuple(m[i][j] - (self._one if i == j else self._zero)
                                  for i in range(self.rank)))
        return linalg.nullspace(rows, self.rank)

    def det_on_subspace(self, w: int, basis):
        """Determinant of w acting on an invariant subspace with rref basis rows."""
        if not basis:
            return Fraction(1)
        pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
        m = self.matrix_of(w)
        coords = []
        for b in basis:
            img = tuple(sum((b[i] * m[i][j] for i in range(self.rank)
                             if b[i]), self._zero) for j in range(self.rank))
            c = linalg.coords_in_rowspace(basis, pivots, img)
            if c is None:
                raise ValueError("subspace is not invariant under the element")
            coords.append(c)
        d = linalg.det(coords)
        q = d.as_rational() if isinstance(d, Cyclo) else d
        return q if q is not None else d

    # -- subsets, transversals, shapes -------------------------------------------

    def subset_key(self, J):
        return (len(J), tuple(sorted(J)))

    def all_subsets(self):
        """All subsets of the generator index set, by size then lexicographically."""
        out = [[]]
        for s in range(self.rank):
            out += [j + [s] for j in out]
        return sorted((tuple(j) for j in out), key=lambda j: (len(j), j))

    def transversal(self, J, within=None):
        """Minimal right coset transversal X_J, optionally inside a parabolic."""
        pool = within.sorted_members if within is not None else range(self.order)
        simple = [self.simple_root[s] for s in J]
        out = []
        for w in pool:
            pwi = self.perms[self.inv_table[w]]
            if all(self.root_positive[pwi[a]] for a in simple):
                out.append(w)
        return out

    def transversal_sharp(self, J, L=None, within=None):
        """Members x of X_J with J^x contained in the generator set L."""
        allowed = set(self.generators[s] for s in (range(self.rank) if L is None else L))
        out = []
        for x in self.transversal(J, within):
            if all(self.conj(self.generators[s], x) in allowed for s in J):
                out.append(x)
        return out

    def subset_conjugate(self, J, x):
        """The set K with W_J^x = W_K, when J^x consists of generators."""
        gen_pos = {g: i for i, g in enumerate(self.generators)}
        out = []
        for s in J:
            g = self.conj(self.generators[s], x)
            if g not in gen_pos:
                raise ValueError("conjugate is not a standard subset")
            out.append(gen_pos[g])
        return tuple(sorted(out))

    def complement_in_normalizer(self, J):
        """The complement N_J = {x in X_J : J^x = J} of W_J in its normalizer."""
        J = tuple(sorted(J))
        out = []
        for x in self.transversal_sharp(J):
            if self.subset_conjugate(J, x) == J:
                out.append(x)
        return out

    def complement_subgroup(self, J) -> "Subgroup":
        """N_J as a subgroup; checks that the element set really is closed."""
        elems = self.complement_in_normalizer(J)
        sub = self.subgroup(elems)
        for a in elems:
            for b in elems:
                assert self.mult_table[a][b] in sub.members
        return sub

    def is_bulky(self, J) -> bool:
        """Whether every element of N_J centralizes W_J."""
        members = self.parabolic(J).sorted_members
        for n in self.complement_in_normalizer(J):
            for u in members:
                if self.mult_table[n][u] != self.mult_table[u][n]:
                    return False
        return True

    def shapes(self, within=None):
        """Partition of the subsets (of S, or of within's generator set) by conjugacy."""
        if within is None:
            universe = self.all_subsets()
            L = tuple(range(self.rank))
            inside = None
        else:
            L = within
            universe = sorted(
                (tuple(sorted(j)) for j in _subsets(L)), key=lambda j: (len(j), j))
            inside = self.parabolic(L)
        assigned = {}
        shapes = []
        for J in universe:
            if J in assigned:
                continue
            members = set()
            for x in self.transversal_sharp(J, L=L, within=inside):
                members.add(self.subset_conjugate(J, x))
            assert J in members
            idx = len(shapes)
            shapes.append(Shape(J, frozenset(members), idx))
            for K in members:
                assert K not in assigned
                assigned[K] = idx
        return shapes

    def shape_of(self, J, within=None):
        J = tuple(sorted(J))
        for sh in self.shapes(within):
            if J in sh.members:
                return sh
        raise KeyError(J)

    # -- subgroups ---------------------------------------------------------------

    def subgroup(self, members) -> "Subgroup":
        members = frozenset(members)
        if members not in self._subgroups:
            self._subgroups[members] = Subgroup(self, members)
        return self._subgroups[members]

    def generated_subgroup(self, gens) -> "Subgroup":
        members = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mult_table[a][g]
                    if b not in members:
                        members.add(b)
                        nxt.append(b)
            frontier = nxt
        return self.subgroup(members)

    def parabolic(self, J) -> "Subgroup":
        J = tuple(sorted(J))
        if J not in self._parabolics:
            sub = self.generated_subgroup(self.generators[s] for s in J)
            sub.parabolic_subset = J
            self._parabolics[J] = sub
        return self._parabolics[J]

    def full(self) -> "Subgroup":
        return self.parabolic(range(self.rank))

    def centralizer(self, w: int, within=None) -> "Subgroup":
        pool = within.sorted_members if within is not None else range(self.order)
        mt = self.mult_table
        return self.subgroup(x for x in pool if mt[x][w] == mt[w][x])

    def normalizer_of_parabolic(self, J) -> "Subgroup":
        members = self.parabolic(J).members
        gens = [self.generators[s] for s in J]
        out = []
        for x in range(self.order):
            if all(self.conj(g, x) in members for g in gens):
                out.append(x)
        return self.subgroup(out)

    def cyclic(self, w: int) -> "Subgroup":
        members = [self.identity]
        x = w
        while x != self.identity:
            members.append(x)
            x = self.mult_table[x][w]
        return self.subgroup(members)


def _subsets(L):
    out = [[]]
    for s in L:
        out += [j + [s] for j in out]
    return [tuple(j) for j in out]


class Shape:
    """A conjugacy class of subsets of the generator set."""

    __slots__ = ("canonical", "members", "index")

    def __init__(self, canonical, members, index):
        self.canonical = canonical
        self.members = members
        self.index = index

    def __repr__(self):
        return f"Shape[{','.join('s%d' % (i + 1) for i in self.canonical) or 'empty'}]"


class Subgroup:
    """A subgroup given by an explicit member set, with its own class structure."""

    def __init__(self, parent: CoxeterGroup, members: frozenset):
        self.parent = parent
        self.members = members
        self.sorted_members = tuple(sorted(members))
        self.parabolic_subset = None
        self._classes = None
        self._class_index = None
        self._linear_chars = None

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, w: int) -> bool:
        return w in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    @property
    def classes(self):
        if self._classes is None:
            W = self.parent
            seen = set()
            classes = []
            cusp_dim = None
            if self.parabolic_subset is not None:
                cusp_dim = W.rank - len(self.parabolic_subset)
            for w in self.sorted_members:
                if w in seen:
                    continue
                members = frozenset(W.conj(w, x) for x in self.sorted_members)
                seen |= members
                rep = min(members)
                cusp = None
                if cusp_dim is not None:
                    cusp = W.fix_dim(rep) == cusp_dim
                classes.append(ConjugacyClass(rep, members, cusp))
            classes.sort(key=lambda c: c.rep)
            self._classes = classes
            self._class_index = {x: k for k, c in enumerate(classes) for x in c.members}
        return self._classes

    def class_of(self, w: int) -> int:
        self.classes
        return self._class_index[w]

    def cuspidal_classes(self):
        """Classes with no fixed points beyond the fixed space of the parabolic."""
        if self.parabolic_subset is None:
            raise ValueError("cuspidal classes need parabolic root data")
        # computed from scratch: the subgroup may predate its parabolic identity
        dim = self.parent.rank - len(self.parabolic_subset)
        return [c for c in self.classes if self.parent.fix_dim(c.rep) == dim]

    def longest_element(self) -> int:
        return max(self.sorted_members, key=lambda w: self.parent.lengths[w])

    def __repr__(self):
        return f"Subgroup(order={self.order})"


@lru_cache(maxsize=None)
def build_group(spec: str, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CoxeterGroup:
    """Build (and cache) a named group such as "B3" or "A1xI2(5)"."""
    return CoxeterGroup(matrix_from_spec(spec), max_elements, spec=spec)
