"""Equivariant endomorphisms of tensor powers, in orbit-coefficient form.

An equivariant endomorphism f is determined by its values on the weakly
increasing words u, and f(u) must be constant on the orbits of the stabilizer
of u.  We therefore store, per sorted word u, one integer coefficient per
stabilizer-orbit key (see words.stabilizer_orbit_key); f extends to every
word w = u.sigma by f(w) = f(u).sigma, independently of the chosen sigma.

The dense matrix of an element is materialized only for equivariance checks,
composition read-off, and the brute-force dimension oracle.
"""

import math
from functools import lru_cache
from itertools import permutations, product

from .errors import (DimensionMismatch, InvalidArgument, InternalInvariantError,
                     ResourceGuardExceeded)
from .freelie import LieElement, decompose, embed
from .words import (TensorElement, act, all_perms, perm_inverse,
                    perm_sorting_onto, sorted_rep, sorted_words,
                    stabilizer_orbit_key, words_of)

EQUIVARIANCE_GUARD = 8  # largest q for which Sigma_q is enumerated


def orbit_sum(u, key):
    """Sum of the stabilizer orbit of key under the stabilizer of sorted u."""
    blocks = []
    i = 0
    while i < len(u):
        j = i
        while j < len(u) and u[j] == u[i]:
            j += 1
        blocks.append(key[i:j])
        i = j
    coeffs = {}
    for pieces in product(*(set(permutations(b)) for b in blocks)):
        w = sum(pieces, ())
        coeffs[w] = 1
    return TensorElement(len(u), coeffs)


@lru_cache(maxsize=None)
def orbit_keys(n, u):
    """All stabilizer-orbit keys for the sorted word u, lexicographic."""
    return tuple(sorted({stabilizer_orbit_key(u, w) for w in words_of(n, len(u))}))


class SchurElement:
    """An equivariant endomorphism of the degree-q tensor power, rank n."""

    __slots__ = ("n", "q", "data", "_columns")

    def __init__(self, n, q, data):
        self.n = n
        self.q = q
        clean = {}
        for u, row in data.items():
            u = tuple(u)
            if len(u) != q:
                raise InvalidArgument(f"key word {u!r} has length {len(u)}, expected {q}")
            if u != sorted_rep(u):
                raise InvalidArgument(f"key word {u!r} is not weakly increasing")
            if u and not 1 <= max(u) <= n:
                raise InvalidArgument(f"letter above rank {n} in {u!r}")
            cleanrow = {}
            for key, c in row.items():
                key = tuple(key)
                if stabilizer_orbit_key(u, key) != key:
                    raise InvalidArgument(
                        f"{key!r} is not the canonical orbit key for {u!r}")
                if c:
                    cleanrow[key] = c
            if cleanrow:
                clean[u] = cleanrow
        self.data = clean
        self._columns = {}

    @classmethod
    def from_orbit_data(cls, n, q, data):
        return cls(n, q, data)

    @classmethod
    def zero(cls, n, q):
        return cls(n, q, {})

    @classmethod
    def identity(cls, n, q):
        return cls(n, q, {u: {u: 1} for u in sorted_words(n, q)})

    @classmethod
    def scalar(cls, n, value):
        """Degree-0 element: multiplication by value on the ground ring."""
        return cls(n, 0, {(): {(): value}}) if value else cls(n, 0, {})

    @property
    def scalar_value(self):
        if self.q != 0:
            raise InvalidArgument("scalar_value is defined in degree 0 only")
        return self.data.get((), {}).get((), 0)

    def is_zero(self):
        return not self.data

    def coeff(self, u, key):
        return self.data.get(tuple(u), {}).get(tuple(key), 0)

    def __eq__(self, other):
        return (isinstance(other, SchurElement) and self.n == other.n
                and self.q == other.q and self.data == other.data)

    def __hash__(self):
        return hash((self.n, self.q,
                     frozenset((u, frozenset(row.items())) for u, row in self.data.items())))

    # -- linear structure ---------------------------------------------------

    def _check_compatible(self, other):
        if self.n != other.n or self.q != other.q:
            raise DimensionMismatch(
                f"mixing ({self.n},{self.q}) with ({other.n},{other.q})")

    def __add__(self, other):
        self._check_compatible(other)
        data = {u: dict(row) for u, row in self.data.items()}
        for u, row in other.data.items():
            target = data.setdefault(u, {})
            for key, c in row.items():
                target[key] = target.get(key, 0) + c
        return SchurElement(self.n, self.q, data)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if not k:
            return SchurElement.zero(self.n, self.q)
        return SchurElement(self.n, self.q,
                            {u: {key: k * c for key, c in row.items()}
                             for u, row in self.data.items()})

    __rmul__ = scale

    # -- action on tensors ---------------------------------------------------

    def column(self, u):
        """f(u) for weakly increasing u, cached."""
        u = tuple(u)
        col = self._columns.get(u)
        if col is None:
            col = TensorElement(self.q)
            for key, c in self.data.get(u, {}).items():
                col = col + orbit_sum(u, key).scale(c)
            self._columns[u] = col
        return col

    def apply_word(self, w):
        """f on a single basis word, via f(u.sigma) = f(u).sigma."""
        w = tuple(w)
        if len(w) != self.q:
            raise DimensionMismatch(f"word of length {len(w)} under a degree-{self.q} map")
        u = sorted_rep(w)
        col = self.column(u)
        if col.is_zero():
            return col
        return col.act(perm_sorting_onto(u, w))

    def apply(self, t):
        """Linear action on a tensor of matching degree."""
        if t.degree != self.q:
            raise DimensionMismatch(
                f"degree-{t.degree} tensor under a degree-{self.q} map")
        out = TensorElement(self.q)
        for w, c in t.items():
            out = out + self.apply_word(w).scale(c)
        return out

    def column_map(self):
        """Dense column map over all basis words (word -> image tensor)."""
        out = {}
        for w in words_of(self.n, self.q):
            img = self.apply_word(w)
            if not img.is_zero():
                out[w] = img
        return out

    def compose(self, other):
        """Endomorphism composition self after other, back in orbit form."""
        self._check_compatible(other)
        data = {}
        for u in sorted_words(self.n, self.q):
            col = self.apply(other.column(u))
            row = orbit_data_of_column(u, col)
            if row:
                data[u] = row
        return SchurElement(self.n, self.q, data)

    # -- serialization --------------------------------------------------------

    def to_json_dict(self):
        entries = []
        for u in sorted(self.data):
            for key in sorted(self.data[u]):
                entries.append({"u": ".".join(map(str, u)),
                                "key": ".".join(map(str, key)),
                                "coeff": str(self.data[u][key])})
        return {"n": self.n, "q": self.q, "entries": entries}

    @classmethod
    def from_json_dict(cls, payload):
        def word_of(text):
            return tuple(int(a) for a in text.split(".")) if text else ()
        data = {}
        for entry in payload["entries"]:
            u = word_of(entry["u"])
            data.setdefault(u, {})[word_of(entry["key"])] = int(entry["coeff"])
        return cls(payload["n"], payload["q"], data)

    def __repr__(self):
        return f"SchurElement(n={self.n}, q={self.q}, entries={sum(map(len, self.data.values()))})"


def orbit_data_of_column(u, col):
    """Read orbit coefficients off a tensor that must be stabilizer-invariant."""
    row = {}
    seen = {}
    for w, c in col.items():
        key = stabilizer_orbit_key(u, w)
        if key in seen and seen[key] != c:
            raise InternalInvariantError(
                f"column at {u!r} is not constant on stabilizer orbits")
        seen[key] = c
        row[key] = c
    for key, c in row.items():
        if len(orbit_sum(u, key)) != sum(1 for w, cc in col.items()
                                         if stabilizer_orbit_key(u, w) == key):
            raise InternalInvariantError(
                f"column at {u!r} misses part of the orbit of {key!r}")
    return row


@lru_cache(maxsize=None)
def basis(n, q):
    """One element per (sorted word, orbit key): a basis of the equivariant
    endomorphisms; its size is the sum of orbit counts over sorted words."""
    out = []
    for u in sorted_words(n, q):
        for key in orbit_keys(n, u):
            out.append(SchurElement(n, q, {u: {key: 1}}))
    return tuple(out)


def basis_dimension_formula(n, q):
    """Multiset count C(n^2 + q - 1, q), cross-checked against the oracle."""
    return math.comb(n * n + q - 1, q)


def is_equivariant(colmap, n, q):
    """Whether a column map (word -> tensor, missing = zero) commutes with
    every place permutation.

    Exhaustive over the symmetric group, but only words where either side can
    be nonzero are visited: for w outside the support whose image under sigma
    is also outside, both sides vanish identically.
    """
    if q > EQUIVARIANCE_GUARD:
        raise ResourceGuardExceeded(f"equivariance check limited to degree {EQUIVARIANCE_GUARD}")
    zero = TensorElement(q)
    support = {w for w, col in colmap.items() if not col.is_zero()}
    for sigma in all_perms(q):
        for w in support:
            if colmap.get(act(w, sigma), zero) != colmap[w].act(sigma):
                return False
        inv = perm_inverse(sigma)
        for w in support:
            # M(pre) = 0 while M(sigma(pre)) = M(w) != 0 breaks commutation
            if act(w, inv) not in support:
                return False
    return True


def schur_is_equivariant(f):
    return is_equivariant(f.column_map(), f.n, f.q)


def apply_to_lie(f, a):
    """Action on a Lie element; the image is again a Lie element, and a
    failing decomposition signals a bug rather than bad input."""
    if not isinstance(a, LieElement):
        raise InvalidArgument("apply_to_lie expects a LieElement")
    if a.degree != f.q:
        raise DimensionMismatch(f"degree-{a.degree} element under a degree-{f.q} map")
    if a.n != f.n:
        raise DimensionMismatch(f"rank-{a.n} element under a rank-{f.n} map")
    return decompose(f.n, f.apply(embed(a)))


def letter_substitution(n, t, sigma_n):
    """The equivariant relabeling map sending each letter l to sigma_n(l),
    applied position by position on degree-t words."""
    if len(sigma_n) != n:
        raise InvalidArgument(f"alphabet permutation of size {len(sigma_n)} for rank {n}")
    data = {}
    for u in sorted_words(n, t):
        w = tuple(sigma_n[letter - 1] for letter in u)
        data[u] = {stabilizer_orbit_key(u, w): 1}
    return SchurElement(n, t, data)


# ---------------------------------------------------------------------------
# brute-force oracle

def equivariant_basis_bruteforce(n, q):
    """Dimension oracle: solve the commutation constraints directly.

    The conditions M(w.sigma) = M(w).sigma over all sigma say exactly that
    matrix entries agree along the diagonal permutation action on (row, col)
    pairs, a linear system whose equations each identify two coordinates.
    Its solution space is spanned by the indicator maps of the pair classes,
    found by union-find; returned as column maps, ordered by least member.
    """
    if q > EQUIVARIANCE_GUARD or n ** (2 * q) > 4_000_000:
        raise ResourceGuardExceeded(f"brute-force oracle refused for n={n}, q={q}")
    words = list(words_of(n, q))
    index = {w: i for i, w in enumerate(words)}
    N = len(words)
    parent = list(range(N * N))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for sigma in all_perms(q):
        moved = [index[act(w, sigma)] for w in words]
        for r in range(N):
            mr = moved[r] * N
            rN = r * N
            for c in range(N):
                union(rN + c, mr + moved[c])

    classes = {}
    for coord in range(N * N):
        classes.setdefault(find(coord), []).append(coord)

    maps = []
    for root in sorted(classes):
        cols = {}
        for coord in classes[root]:
            r, c = divmod(coord, N)
            cols.setdefault(words[c], {})[words[r]] = 1
        maps.append({w: TensorElement(q, col) for w, col in cols.items()})
    return maps


def decompose_in_basis(colmap, n, q):
    """Express an equivariant column map in basis(n, q) by reading the
    coefficients off the sorted columns; returns the SchurElement, or None
    when the map is not in the span (reconstruction mismatch)."""
    data = {}
    for u in sorted_words(n, q):
        col = colmap.get(u)
        if col is None or col.is_zero():
            continue
        try:
            row = orbit_data_of_column(u, col)
        except InternalInvariantError:
            return None
        data[u] = row
    candidate = SchurElement(n, q, data)
    zero = TensorElement(q)
    for w in words_of(n, q):
        if candidate.apply_word(w) != colmap.get(w, zero):
            return None
    return candidate
