"""Class functions and characters with exact cyclotomic values.

Every character is carried by an explicit subgroup and stores one value per
conjugacy class of that subgroup.  Induction uses the averaged conjugation
formula, so it needs nothing beyond the multiplication table.  Linear
characters are kept elementwise; the full set for a subgroup is obtained by
factoring through the quotient modulo the commutator subgroup and extending
characters one cyclic step at a time.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg
from .coxeter import CoxeterGroup, Subgroup
from .cyclo import Cyclo, scalar_conj, scalar_eq, scalar_json, zeta


class NotASubgroup(ValueError):
    """Induction or restriction across groups without containment."""


class CarrierMismatch(ValueError):
    """Operation mixing class functions on different carriers."""


class NotInComplement(KeyError):
    """A linear character was evaluated outside its carrier."""


class ClassFunction:
    """A function on a subgroup that is constant on conjugacy classes."""

    __slots__ = ("carrier", "values")

    def __init__(self, carrier: Subgroup, values):
        values = tuple(values)
        if len(values) != len(carrier.classes):
            raise ValueError("one value per conjugacy class required")
        self.carrier = carrier
        self.values = values

    @classmethod
    def from_function(cls, carrier: Subgroup, fn):
        return cls(carrier, [fn(c.rep) for c in carrier.classes])

    def value(self, w: int):
        return self.values[self.carrier.class_of(w)]

    @property
    def degree(self):
        return self.value(self.carrier.parent.identity)

    def _same_carrier(self, other):
        if self.carrier is not other.carrier and \
                self.carrier.members != other.carrier.members:
            raise CarrierMismatch("class functions live on different subgroups")

    def __add__(self, other):
        self._same_carrier(other)
        return ClassFunction(self.carrier,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same_carrier(other)
        return ClassFunction(self.carrier,
                             [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, LinearCharacter):
            other = other.as_class_function()
        if isinstance(other, ClassFunction):
            self._same_carrier(other)
            return ClassFunction(self.carrier,
                                 [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.carrier, [v * other for v in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.carrier is not other.carrier and \
                self.carrier.members != other.carrier.members:
            return False
        return all(scalar_eq(a, b) for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(id(self.carrier))

    def is_zero(self) -> bool:
        return all(scalar_eq(v, 0) for v in self.values)

    def induce(self, target: Subgroup) -> "ClassFunction":
        """Induced class function, by averaging over conjugators."""
        H, G = self.carrier, target
        if H.parent is not G.parent or not H.members <= G.members:
            raise NotASubgroup("can only induce to an overgroup")
        W = G.parent
        vals = []
        for c in G.classes:
            acc = Fraction(0)
            for x in G.sorted_members:
                y = W.conj(c.rep, x)
                if y in H.members:
                    acc = self.value(y) + acc
            vals.append(acc * Fraction(1, H.order))
        return ClassFunction(G, vals)

    def restrict(self, target: Subgroup) -> "ClassFunction":
        if target.parent is not self.carrier.parent or \
                not target.members <= self.carrier.members:
            raise NotASubgroup("can only restrict to a subgroup")
        return ClassFunction(target, [self.value(c.rep) for c in target.classes])

    def inner(self, other) -> Fraction:
        """Hermitian inner product of class functions."""
        if isinstance(other, LinearCharacter):
            other = other.as_class_function()
        self._same_carrier(other)
        acc = Fraction(0)
        for c, a, b in zip(self.carrier.classes, self.values, other.values):
            acc = acc + c.size * a * scalar_conj(b)
        acc = acc * Fraction(1, self.carrier.order)
        if not isinstance(acc, Fraction):
            q = acc.as_rational()
            if q is not None:
                return q
        return acc

    def __repr__(self):
        return f"ClassFunction({list(self.values)!r})"


class LinearCharacter:
    """A degree one character stored elementwise on its carrier."""

    __slots__ = ("carrier", "values")

    def __init__(self, carrier: Subgroup, values: dict, validate: bool = True):
        self.carrier = carrier
        self.values = dict(values)
        if validate:
            W = carrier.parent
            assert set(self.values) == carrier.members
            assert scalar_eq(self.values[W.identity], 1)
            for a in carrier.sorted_members:
                for b in carrier.sorted_members:
                    got = self.values[W.mult(a, b)]
                    if not scalar_eq(got, self.values[a] * self.values[b]):
                        raise ValueError("values are not multiplicative")

    def __call__(self, w: int):
        try:
            return self.values[w]
        except KeyError:
            raise NotInComplement(f"element {w} is outside the carrier")

    def __mul__(self, other):
        if isinstance(other, LinearCharacter):
            if self.carrier.members != other.carrier.members:
                raise CarrierMismatch("linear characters on different carriers")
            return LinearCharacter(
                self.carrier,
                {w: v * other.values[w] for w, v in self.values.items()},
                validate=False)
        if isinstance(other, ClassFunction):
            return self.as_class_function() * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LinearCharacter):
            return NotImplemented
        return self.carrier.members == other.carrier.members and all(
            scalar_eq(v, other.values[w]) for w, v in self.values.items())

    def __hash__(self):
        return hash(id(self.carrier))

    def as_class_function(self) -> ClassFunction:
        return ClassFunction(self.carrier,
                             [self.values[c.rep] for c in self.carrier.classes])

    def restrict(self, target: Subgroup) -> "LinearCharacter":
        if not target.members <= self.carrier.members:
            raise NotASubgroup("can only restrict to a subgroup")
        return LinearCharacter(target,
                               {w: self.values[w] for w in target.members},
                               validate=False)

    def induce(self, target: Subgroup) -> ClassFunction:
        return self.as_class_function().induce(target)

    def __repr__(self):
        reps = {w: v for w, v in sorted(self.values.items())[:4]}
        return f"LinearCharacter({reps!r}...)"


# -- standard characters ---------------------------------------------------------


def trivial_character(carrier: Subgroup) -> LinearCharacter:
    return LinearCharacter(carrier, {w: Fraction(1) for w in carrier.members},
                           validate=False)


def sign_character(carrier: Subgroup) -> LinearCharacter:
    """Determinant on the reflection representation, (-1)^length."""
    W = carrier.parent
    return LinearCharacter(
        carrier,
        {w: Fraction(-1 if W.lengths[w] % 2 else 1) for w in carrier.members},
        validate=False)


def det_character(W: CoxeterGroup, carrier: Subgroup, basis) -> LinearCharacter:
    """Determinant on an invariant subspace with the given rref basis."""
    return LinearCharacter(
        carrier,
        {w: W.det_on_subspace(w, basis) for w in carrier.members},
        validate=False)


def alpha_parabolic(W: CoxeterGroup, J) -> LinearCharacter:
    """Determinant on the fixed space of W_J, on the normalizer of W_J."""
    return det_character(W, W.normalizer_of_parabolic(J), W.parabolic_fixed_space(J))


def alpha_element(W: CoxeterGroup, w: int) -> LinearCharacter:
    """Determinant on the fixed space of w, on the centralizer of w."""
    return det_character(W, W.centralizer(w), W.fixed_space(w))


def sigma_parabolic(W: CoxeterGroup, J) -> LinearCharacter:
    """Determinant on the span of the roots of J, on the complement N_J."""
    rows = [W.roots[W.simple_root[j]] for j in J]
    basis, _ = linalg.rref(rows)
    return det_character(W, W.complement_subgroup(J), list(basis))


def reflection_fix_character(carrier: Subgroup) -> ClassFunction:
    """Number of reflecting hyperplanes fixed under conjugation."""
    W = carrier.parent
    refl = W.reflections

    def count(w):
        return Fraction(sum(1 for t in refl if W.conj(t, w) == t))

    return ClassFunction.from_function(carrier, count)


def rotation_character(W: CoxeterGroup, L, j: int) -> LinearCharacter:
    """The character of the rotation subgroup of a dihedral parabolic sending
    the standard rotation to the j-th power of a primitive root of unity."""
    a, b = sorted(L)
    m = W.matrix[a, b]
    rot = W.mult(W.generators[a], W.generators[b])
    carrier = W.cyclic(rot)
    assert carrier.order == m
    values = {}
    x = W.identity
    for k in range(m):
        values[x] = zeta(m, j * k)
        x = W.mult(x, rot)
    return LinearCharacter(carrier, values, validate=False)


# -- all linear characters of a subgroup ------------------------------------------


def commutator_subgroup(H: Subgroup) -> Subgroup:
    W = H.parent
    comms = set()
    for a in H.sorted_members:
        ai = W.inv(a)
        for b in H.sorted_members:
            comms.add(W.prod([ai, W.inv(b), a, b]))
    return W.generated_subgroup(comms)


def linear_characters(H: Subgroup):
    """All degree one characters of H, in a deterministic order.

    Characters are computed on the quotient modulo the commutator subgroup and
    extended cyclic step by cyclic step; values are roots of unity of order
    dividing the exponent of the quotient.
    """
    W = H.parent
    D = commutator_subgroup(H)
    coset_of = {}
    for h in H.sorted_members:
        coset_of[h] = min(W.mult(d, h) for d in D.sorted_members)
    reps = sorted(set(coset_of.values()))
    qmult = {(a, b): coset_of[W.mult(a, b)] for a in reps for b in reps}
    e = coset_of[W.identity]

    def qorder(g):
        k, x = 1, g
        while x != e:
            x = qmult[x, g]
            k += 1
        return k

    M = math.lcm(*(qorder(g) for g in reps))

    chars = [{e: 0}]          # exponent of zeta_M at each covered coset
    for g in reps:
        if g in chars[0]:
            continue
        covered = list(chars[0])
        powers, x = [e], g    # powers[k] = g^k, up to the first covered power
        while x not in chars[0]:
            powers.append(x)
            x = qmult[x, g]
        d, gd = len(powers), x
        assert M % d == 0
        new_chars = []
        for chi in chars:
            a = chi[gd]
            assert a % d == 0  # the character of g^d always has a d-th root
            for t in range(d):
                ex = (a // d + t * (M // d)) % M
                ext = dict(chi)
                for k in range(1, d):
                    for h in covered:
                        ext[qmult[h, powers[k]]] = (chi[h] + k * ex) % M
                new_chars.append(ext)
        chars = new_chars
    assert len(chars) == len(reps)

    out = []
    for chi in chars:
        if M <= 2:
            values = {h: Fraction(1 if chi[coset_of[h]] == 0 else -1)
                      for h in H.sorted_members}
        else:
            values = {h: zeta(M, chi[coset_of[h]]) for h in H.sorted_members}
        key = tuple(chi[coset_of[h]] for h in H.sorted_members)
        out.append((key, LinearCharacter(H, values)))
    out.sort(key=lambda p: p[0])
    return [lc for _, lc in out]


def regular_character(carrier: Subgroup) -> ClassFunction:
    """The character of the group acting on its own group algebra."""
    vals = [Fraction(carrier.order if c.rep == carrier.parent.identity else 0)
            for c in carrier.classes]
    return ClassFunction(carrier, vals)


def class_function_json(cf: ClassFunction) -> dict:
    """Serialize with class representatives spelled as reduced words."""
    W = cf.carrier.parent
    return {"group": W.spec or f"rank{W.rank}",
            "classes": [W.word_str(c.rep) for c in cf.carrier.classes],
            "values": [scalar_json(v) for v in cf.values]}


def class_function_from_json(data: dict, carrier: Subgroup) -> ClassFunction:
    """Rebuild a class function on the given carrier from its serialized form."""
    W = carrier.parent
    vals = [None] * len(carrier.classes)
    for word, value in zip(data["classes"], data["values"]):
        w = W.element_from_word(W.parse_word_str(word))
        vals[carrier.class_of(w)] = Cyclo.from_json(value)
    if any(v is None for v in vals):
        raise ValueError("serialized classes do not cover the carrier")
    return ClassFunction(carrier, vals)


def as_linear_character(cf: ClassFunction) -> LinearCharacter:
    """Reinterpret a degree one class function as a linear character."""
    if not scalar_eq(cf.degree, 1):
        raise ValueError("not a degree one class function")
    return LinearCharacter(cf.carrier,
                           {w: cf.value(w) for w in cf.carrier.members})
