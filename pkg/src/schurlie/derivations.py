"""Derivations of the free Lie algebra, their bracket, the action of
equivariant endomorphisms on them, and the span-closure rank engine.

A degree-p derivation is determined by the n-tuple of images of the
generators, each a degree-p element; the Leibniz rule extends it to all
degrees.  The bracket of derivations of degrees p and p' has degree
p + p' - 1 in this natural count (generator in, degree-p element out).

The closure engine computes, degree by degree, the integer lattice spanned by
everything reachable from a set of degree-2 generators through derivation
brackets of lower degrees and through the degree-matched action of the
equivariant-endomorphism basis, reporting rank and elementary divisors
against the expected n * (number of Lyndon words).
"""

from functools import lru_cache

from .errors import (DimensionMismatch, InvalidArgument, InternalInvariantError,
                     NoSolutionFound, ResourceGuardExceeded)
from .freelie import (LieElement, embed, generator, is_monomial, lie_bracket,
                      lyndon_bracketing, lyndon_words, monomial_degree,
                      normalize, zero_lie)
from .linalg import IntegerLattice, solve_integer
from .schur import SchurElement, apply_to_lie, basis, basis_dimension_formula, orbit_keys
from .words import multidegree, sorted_rep, words_of

CLOSURE_BASIS_GUARD = 600  # largest endomorphism basis the engine will sweep


class Derivation:
    """A homogeneous derivation, stored as its generator images."""

    __slots__ = ("n", "degree", "images")

    def __init__(self, n, degree, images):
        images = tuple(images)
        if len(images) != n:
            raise InvalidArgument(f"{len(images)} generator images for rank {n}")
        if degree < 1:
            raise InvalidArgument(f"derivation degree must be >= 1, got {degree}")
        for img in images:
            if img.n != n or img.degree != degree:
                raise DimensionMismatch(
                    f"image of rank {img.n}, degree {img.degree} in a rank-{n}, "
                    f"degree-{degree} derivation")
        self.n = n
        self.degree = degree
        self.images = images

    def image(self, i):
        return self.images[i - 1]

    def is_zero(self):
        return all(img.is_zero() for img in self.images)

    def __eq__(self, other):
        return (isinstance(other, Derivation) and self.n == other.n
                and self.degree == other.degree and self.images == other.images)

    def __hash__(self):
        return hash((self.n, self.degree, self.images))

    def _check_compatible(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"mixing ranks {self.n} and {other.n}")
        if self.degree != other.degree:
            raise DimensionMismatch(f"mixing degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        self._check_compatible(other)
        return Derivation(self.n, self.degree,
                          tuple(a + b for a, b in zip(self.images, other.images)))

    def __neg__(self):
        return Derivation(self.n, self.degree, tuple(-a for a in self.images))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Derivation(self.n, self.degree, tuple(a.scale(k) for a in self.images))

    __rmul__ = scale

    def __repr__(self):
        return ("Derivation(n=%d, degree=%d, [%s])"
                % (self.n, self.degree, ", ".join(str(a) for a in self.images)))


def zero_derivation(n, degree):
    return Derivation(n, degree, tuple(zero_lie(n, degree) for _ in range(n)))


def generator_derivation(i, w):
    """The derivation sending x_i to w and every other generator to zero."""
    n = w.n
    if not 1 <= i <= n:
        raise InvalidArgument(f"generator index {i} outside 1..{n}")
    images = [zero_lie(n, w.degree)] * n
    images[i - 1] = w
    return Derivation(n, w.degree, images)


def conjugating_derivation(n, i, j):
    """x_i maps to [x_i, x_j], all other generators to zero (degree 2)."""
    if i == j:
        raise InvalidArgument("conjugating derivation needs distinct indices")
    if not (1 <= i <= n and 1 <= j <= n):
        raise InvalidArgument(f"indices ({i},{j}) outside 1..{n}")
    return generator_derivation(i, normalize(n, (i, j)))


def commutator_derivation(n, i, s, t):
    """x_i maps to [x_s, x_t], all other generators to zero (degree 2)."""
    if i in (s, t) or not s < t:
        raise InvalidArgument(f"need i not in {{s,t}} and s < t, got ({i},{s},{t})")
    if not (1 <= i <= n and 1 <= s and t <= n):
        raise InvalidArgument(f"indices ({i},{s},{t}) outside 1..{n}")
    return generator_derivation(i, normalize(n, (s, t)))


def mtilde_generators(n):
    """All quadratic generators: every conjugating derivation, plus every
    commutator derivation (the latter exist only for rank >= 3)."""
    gens = [conjugating_derivation(n, i, j)
            for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    gens += [commutator_derivation(n, i, s, t)
             for i in range(1, n + 1)
             for s in range(1, n + 1) for t in range(s + 1, n + 1)
             if i not in (s, t)]
    return gens


def gamma_generators(n):
    """One conjugating derivation per generator index: x_i pairs with its
    cyclic successor."""
    if n < 2:
        raise InvalidArgument("need rank >= 2")
    return [conjugating_derivation(n, i, i % n + 1) for i in range(1, n + 1)]


def apply_derivation(D, a):
    """Leibniz extension of D; accepts a monomial tree or a LieElement.

    The result is homogeneous of degree deg(a) + deg(D) - 1.
    """
    if isinstance(a, LieElement):
        if a.n != D.n:
            raise DimensionMismatch(f"rank-{a.n} element under a rank-{D.n} derivation")
        out = zero_lie(D.n, a.degree + D.degree - 1)
        for w, c in a.items():
            out = out + _apply_to_monomial(D, lyndon_bracketing(w)).scale(c)
        return out
    if not is_monomial(a):
        raise InvalidArgument(f"not a Lie monomial tree: {a!r}")
    return _apply_to_monomial(D, a)


def _apply_to_monomial(D, tree):
    if isinstance(tree, int):
        return D.image(tree)
    left, right = tree
    left_el = normalize(D.n, left)
    right_el = normalize(D.n, right)
    return (lie_bracket(_apply_to_monomial(D, left), right_el)
            + lie_bracket(left_el, _apply_to_monomial(D, right)))


def der_bracket(D, E):
    """[D, E] = D E - E D, of degree deg(D) + deg(E) - 1."""
    if D.n != E.n:
        raise DimensionMismatch(f"bracket across ranks {D.n} and {E.n}")
    images = tuple(apply_derivation(D, E.images[k]) - apply_derivation(E, D.images[k])
                   for k in range(D.n))
    return Derivation(D.n, D.degree + E.degree - 1, images)


def schur_act(f, D):
    """The degree-matched module action: post-compose every generator image."""
    if f.q != D.degree:
        raise DimensionMismatch(f"degree-{f.q} endomorphism on a degree-{D.degree} derivation")
    if f.n != D.n:
        raise DimensionMismatch(f"rank-{f.n} endomorphism on a rank-{D.n} derivation")
    return Derivation(D.n, D.degree, tuple(apply_to_lie(f, img) for img in D.images))


# ---------------------------------------------------------------------------
# the annihilate-and-fix solver

def find_annihilating_schur(n, i, j, u):
    """A degree-(k+1) equivariant h, for a degree-k monomial u (k >= 2), with

        h(conjugating_derivation(n,i,j) applied to u) = 0
        h([x_i, u]) = -[x_i, u]

    so that acting by h on the bracket of the conjugating derivation with the
    u-image generator derivation isolates the [x_i, u]-image one exactly.

    The two conditions live in different multidegree blocks (they differ by
    one occurrence of x_j versus x_i), so h is taken to vanish outside the
    block of [x_i, u] and the annihilation holds for free; inside the block
    an integer linear solve over the orbit-key coefficients does the rest.
    """
    if i == j:
        raise InvalidArgument("need distinct indices")
    if not is_monomial(u):
        raise InvalidArgument(f"not a Lie monomial tree: {u!r}")
    k = monomial_degree(u)
    if k < 2:
        raise InvalidArgument(f"need a monomial of degree >= 2, got degree {k}")
    u_el = normalize(n, u)
    chi = conjugating_derivation(n, i, j)
    annihilate = embed(apply_derivation(chi, u_el))
    fix = embed(lie_bracket(generator(n, i), u_el))
    if fix.is_zero():
        raise InvalidArgument("the bracket [x_i, u] vanishes; nothing to fix")

    q = k + 1
    mdegs = {multidegree(w, n) for w, _ in fix.items()}
    if len(mdegs) != 1:
        raise InternalInvariantError("embedded bracket mixes multidegrees")
    block_u = sorted_rep(next(iter(fix.items()))[0])
    if not annihilate.is_zero():
        other = {sorted_rep(w) for w, _ in annihilate.items()}
        if block_u in other:
            raise InternalInvariantError("the two defining blocks coincide")

    keys = orbit_keys(n, block_u)
    word_list = [w for w in words_of(n, q)]
    col_vectors = []
    for key in keys:
        e = SchurElement(n, q, {block_u: {key: 1}})
        img = e.apply(fix)
        col_vectors.append([img.coeff(w) for w in word_list])
    rows = [[col_vectors[c][r] for c in range(len(keys))]
            for r in range(len(word_list))]
    rhs = [-fix.coeff(w) for w in word_list]
    solution = solve_integer(rows, rhs)
    if solution is None:
        raise NoSolutionFound(
            f"no integer equivariant map fixes the block of {block_u!r}")
    h = SchurElement(n, q, {block_u: {key: c for key, c in zip(keys, solution) if c}})
    if not h.apply(annihilate).is_zero():
        raise InternalInvariantError("annihilation condition violated")
    if h.apply(fix) != -fix:
        raise InternalInvariantError("fixing condition violated")
    return h


# ---------------------------------------------------------------------------
# the closure rank engine

def derivation_to_vector(D):
    words = lyndon_words(D.n, D.degree)
    vec = []
    for img in D.images:
        vec.extend(img.coeff(w) for w in words)
    return vec


def derivation_from_vector(n, degree, vec):
    words = lyndon_words(n, degree)
    W = len(words)
    images = []
    for block in range(n):
        coeffs = {w: vec[block * W + t] for t, w in enumerate(words)}
        images.append(LieElement(n, degree, coeffs))
    return Derivation(n, degree, images)


@lru_cache(maxsize=None)
def _action_matrices(n, p):
    """Per basis endomorphism, its matrix on Lyndon coordinates, as columns."""
    words = lyndon_words(n, p)
    mats = []
    for f in basis(n, p):
        cols = []
        for w in words:
            img = apply_to_lie(f, LieElement(n, p, {w: 1}))
            cols.append([img.coeff(v) for v in words])
        mats.append(cols)
    return tuple(mats)


def _act_on_vector(cols, n, W, vec):
    out = [0] * (n * W)
    for block in range(n):
        base = block * W
        for c in range(W):
            x = vec[base + c]
            if x:
                col = cols[c]
                for r in range(W):
                    if col[r]:
                        out[base + r] += x * col[r]
    return out


def schur_closure_rank(n, generators, max_degree):
    """Degree-by-degree reachability report for the closure of degree-2
    generators under derivation brackets and the endomorphism action.

    Returns one dict per degree 2..max_degree with the reached rank over the
    rationals, the full rank n * witt_dimension(n, p), and the elementary
    divisors of the reached integer lattice (all 1 means the reached span is
    saturated).  Raises ResourceGuardExceeded, carrying the partial report,
    when the endomorphism basis at some degree is unreasonably large.
    """
    for D in generators:
        if D.n != n:
            raise InvalidArgument(f"rank-{D.n} generator in a rank-{n} closure")
        if D.degree != 2:
            raise InvalidArgument("closure generators must have degree 2")
    report = []
    reached = {}  # degree -> list of basis Derivations
    for p in range(2, max_degree + 1):
        if basis_dimension_formula(n, p) > CLOSURE_BASIS_GUARD:
            raise ResourceGuardExceeded(
                f"endomorphism basis at degree {p} exceeds {CLOSURE_BASIS_GUARD} elements",
                partial=report)
        W = len(lyndon_words(n, p))
        dim = n * W
        lattice = IntegerLattice(dim)
        if p == 2:
            for D in generators:
                lattice.add(derivation_to_vector(D))
        for p1 in range(2, p):
            p2 = p + 1 - p1
            if p2 < p1 or p2 not in reached or p1 not in reached:
                continue
            for a_idx, a in enumerate(reached[p1]):
                bs = reached[p2]
                start = a_idx + 1 if p1 == p2 else 0
                for b in bs[start:]:
                    lattice.add(derivation_to_vector(der_bracket(a, b)))
        if lattice.rank():
            mats = _action_matrices(n, p)
            stable = False
            while not stable and not lattice.full_unimodular():
                stable = True
                snapshot = lattice.basis_rows()
                for cols in mats:
                    for vec in snapshot:
                        if lattice.add(_act_on_vector(cols, n, W, vec)):
                            stable = False
                    if lattice.full_unimodular():
                        stable = True
                        break
        divisors = lattice.elementary_divisors()
        entry = {
            "degree": p,
            "degree_doubled": 2 * p,
            "reached_rank": lattice.rank(),
            "full_rank": dim,
            "elementary_divisors": divisors,
            "saturated": lattice.rank() == dim and all(d == 1 for d in divisors),
        }
        report.append(entry)
        reached[p] = [derivation_from_vector(n, p, row) for row in lattice.basis_rows()]
    return report
