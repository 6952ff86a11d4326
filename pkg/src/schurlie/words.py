"""Words, place permutations, and the symmetric-group action on tensor powers.

A basis tensor x_{i1} (x) ... (x) x_{iq} of the q-th tensor power of the free
module on x_1..x_n is stored as the tuple ``(i1, ..., iq)`` of letters
(1-based).  A permutation sigma of {1..q} is stored in one-line notation as
the tuple of images ``(sigma(1), ..., sigma(q))``.

Action convention, fixed once and used everywhere: position t of ``w . sigma``
holds letter ``sigma^{-1}(t)`` of ``w``.  Two consecutive actions compose as

    act(act(w, s), t) == act(w, perm_compose(t, s))

where ``perm_compose(t, s)`` is ordinary function composition, s applied
first.  All values here are immutable tuples or carry only private state.
"""

from itertools import permutations, product, combinations_with_replacement

from .errors import DimensionMismatch, InvalidArgument

Word = tuple
Perm = tuple


# ---------------------------------------------------------------------------
# permutations

def identity_perm(q):
    return tuple(range(1, q + 1))


def is_perm(p):
    return sorted(p) == list(range(1, len(p) + 1))


def check_perm(p):
    if not is_perm(p):
        raise InvalidArgument(f"not a permutation in one-line notation: {p!r}")
    return p


def perm_inverse(p):
    inv = [0] * len(p)
    for t, image in enumerate(p, 1):
        inv[image - 1] = t
    return tuple(inv)


def perm_compose(p, q):
    """Function composition: (p . q)(t) = p(q(t)), q applied first."""
    if len(p) != len(q):
        raise DimensionMismatch(f"cannot compose permutations of sizes {len(p)} and {len(q)}")
    return tuple(p[q[t] - 1] for t in range(len(p)))


def all_perms(q):
    """All of Sigma_q in one-line notation, lexicographic order."""
    return permutations(range(1, q + 1))


def perm_cycles(p):
    """Disjoint cycles of length >= 2, each starting at its least element."""
    seen = [False] * len(p)
    cycles = []
    for start in range(1, len(p) + 1):
        if seen[start - 1]:
            continue
        cyc = [start]
        seen[start - 1] = True
        t = p[start - 1]
        while t != start:
            cyc.append(t)
            seen[t - 1] = True
            t = p[t - 1]
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return cycles


def perm_from_cycles(cycles, q):
    images = list(range(1, q + 1))
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            raise InvalidArgument(f"repeated entry in cycle {cyc}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not 1 <= a <= q:
                raise InvalidArgument(f"cycle entry {a} outside 1..{q}")
            images[a - 1] = b
    return check_perm(tuple(images))


def format_perm(p):
    """Cycle notation, '1' for the identity: '(1 2 3)(4 5)'."""
    cycles = perm_cycles(p)
    if not cycles:
        return "1"
    return "".join("(" + " ".join(str(a) for a in cyc) + ")" for cyc in cycles)


# ---------------------------------------------------------------------------
# words and the place-permutation action

def check_word(w):
    if any((not isinstance(a, int)) or a < 1 for a in w):
        raise InvalidArgument(f"word letters must be positive integers: {w!r}")
    return tuple(w)


def act(w, sigma):
    """Place-permutation action: position sigma(t) of the result is w[t].

    >>> act((1, 2), (2, 1))
    (2, 1)
    >>> act((1, 2, 3), perm_from_cycles([(1, 2, 3)], 3))
    (3, 1, 2)
    """
    if len(w) != len(sigma):
        raise DimensionMismatch(f"word of length {len(w)} under permutation of size {len(sigma)}")
    out = [0] * len(w)
    for t, letter in enumerate(w):
        out[sigma[t] - 1] = letter
    return tuple(out)


def orbit(w):
    """The full Sigma_q-orbit of w: all rearrangements of its letters."""
    return set(permutations(w))


def sorted_rep(w):
    """The unique weakly increasing member of orbit(w)."""
    return tuple(sorted(w))


def perm_sorting_onto(u, w):
    """Some sigma with act(u, sigma) == w; u and w must share a multiset."""
    buckets = {}
    for t, letter in enumerate(u, 1):
        buckets.setdefault(letter, []).append(t)
    inv = []
    for letter in w:
        positions = buckets.get(letter)
        if not positions:
            raise InvalidArgument(f"{u!r} and {w!r} are not rearrangements of each other")
        inv.append(positions.pop(0))
    if len(inv) != len(u):
        raise InvalidArgument(f"{u!r} and {w!r} are not rearrangements of each other")
    return perm_inverse(tuple(inv))


def letter_class_key(u, w):
    """Canonical form of w under the subgroup of Sigma_q stabilizing u.

    The stabilizer permutes, for each letter value, the positions of u
    carrying that value; its orbit on w is the set of words obtained by
    rearranging the letters of w within each such position class.  Sorting
    within every class gives a canonical representative.  Works for
    arbitrary u; see stabilizer_orbit_key for the sorted-u entry point.
    """
    if len(u) != len(w):
        raise DimensionMismatch(f"words of lengths {len(u)} and {len(w)}")
    classes = {}
    for t, letter in enumerate(u):
        classes.setdefault(letter, []).append(t)
    out = [0] * len(w)
    for positions in classes.values():
        for t, letter in zip(positions, sorted(w[t] for t in positions)):
            out[t] = letter
    return tuple(out)


def stabilizer_orbit_key(u, w):
    """letter_class_key for weakly increasing u (per-block sorting).

    >>> stabilizer_orbit_key((1, 1, 2), (3, 1, 2))
    (1, 3, 2)
    """
    if tuple(sorted(u)) != tuple(u):
        raise InvalidArgument(f"stabilizer key needs a weakly increasing word, got {u!r}")
    return letter_class_key(u, w)


def young_subgroup_of(u):
    """The stabilizer of a weakly increasing word u, as one-line tuples."""
    if tuple(sorted(u)) != tuple(u):
        raise InvalidArgument(f"stabilizer enumeration needs a sorted word, got {u!r}")
    blocks = []
    i = 0
    while i < len(u):
        j = i
        while j < len(u) and u[j] == u[i]:
            j += 1
        blocks.append(range(i + 1, j + 1))
        i = j
    perms = []
    for pieces in product(*(permutations(b) for b in blocks)):
        images = [0] * len(u)
        for block, piece in zip(blocks, pieces):
            for src, dst in zip(block, piece):
                images[src - 1] = dst
        perms.append(tuple(images))
    return perms


def multidegree(w, n):
    """Occurrence counts of each letter 1..n in w."""
    counts = [0] * n
    for letter in w:
        if not 1 <= letter <= n:
            raise InvalidArgument(f"letter {letter} outside 1..{n}")
        counts[letter - 1] += 1
    return tuple(counts)


def words_of(n, q):
    """All n^q basis words of degree q, lexicographic."""
    return product(range(1, n + 1), repeat=q)


def sorted_words(n, q):
    """The weakly increasing words of degree q over 1..n."""
    return combinations_with_replacement(range(1, n + 1), q)


# ---------------------------------------------------------------------------
# sparse integer tensors

class TensorElement:
    """Sparse integer linear combination of degree-q basis words.

    Zero coefficients are never stored; instances behave as immutable values.
    """

    __slots__ = ("degree", "_coeffs")

    def __init__(self, degree, coeffs=None):
        self.degree = degree
        clean = {}
        if coeffs:
            for w, c in coeffs.items():
                if len(w) != degree:
                    raise DimensionMismatch(
                        f"word {w!r} of length {len(w)} in a degree-{degree} tensor")
                if c:
                    clean[check_word(w)] = c
        self._coeffs = clean

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls(len(w), {tuple(w): coeff})

    def coeff(self, w):
        return self._coeffs.get(tuple(w), 0)

    def items(self):
        return sorted(self._coeffs.items())

    def support(self):
        return sorted(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and self.degree == other.degree
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset(self._coeffs.items())))

    def __add__(self, other):
        if self.degree != other.degree:
            raise DimensionMismatch(f"adding tensors of degrees {self.degree} and {other.degree}")
        coeffs = dict(self._coeffs)
        for w, c in other._coeffs.items():
            coeffs[w] = coeffs.get(w, 0) + c
        return TensorElement(self.degree, coeffs)

    def __neg__(self):
        return TensorElement(self.degree, {w: -c for w, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if not k:
            return TensorElement(self.degree)
        return TensorElement(self.degree, {w: k * c for w, c in self._coeffs.items()})

    __rmul__ = scale

    def act(self, sigma):
        """The linear extension of the place-permutation action."""
        return TensorElement(self.degree, {act(w, sigma): c for w, c in self._coeffs.items()})

    def __repr__(self):
        return f"TensorElement({self.degree}, {dict(self.items())!r})"


def tensor_product(s, t):
    """Concatenation product of two sparse tensors."""
    coeffs = {}
    for w1, c1 in s._coeffs.items():
        for w2, c2 in t._coeffs.items():
            w = w1 + w2
            coeffs[w] = coeffs.get(w, 0) + c1 * c2
    return TensorElement(s.degree + t.degree, coeffs)
