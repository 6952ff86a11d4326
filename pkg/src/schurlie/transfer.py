"""The cross-degree product on equivariant endomorphisms, and the operad
built from it.

For an ordered composition (a_1, ..., a_k) of d, the product of elements
f_i of degrees a_i is the sum, over a left transversal L of the Young
subgroup in the full symmetric group, of sigma . (f_1 x ... x f_k) . sigma^{-1}
with the f_i acting blockwise.  The result does not depend on the choice of
transversal; the canonical one here consists of the minimal-length (shuffle)
representatives, and a randomized transversal is available for
well-definedness tests.
"""

from itertools import combinations
from math import factorial, prod

from .errors import DimensionMismatch, InvalidArgument
from .schur import SchurElement, orbit_data_of_column
from .words import (TensorElement, act, perm_compose, perm_inverse,
                    sorted_words, tensor_product, young_subgroup_of)


def check_composition(parts):
    parts = tuple(parts)
    if not parts or any((not isinstance(a, int)) or a < 1 for a in parts):
        raise InvalidArgument(f"composition parts must be positive integers: {parts!r}")
    return parts


def composition_blocks(parts):
    """Consecutive position ranges (1-based, inclusive) covered by each part."""
    blocks = []
    start = 1
    for a in parts:
        blocks.append(tuple(range(start, start + a)))
        start += a
    return blocks


def multinomial(parts):
    return factorial(sum(parts)) // prod(factorial(a) for a in parts)


def young_subgroup(parts):
    """The block-preserving subgroup of Sigma_d, as one-line tuples."""
    parts = check_composition(parts)
    # reuse the stabilizer enumeration of a sorted word with these block sizes
    marker = sum(((i + 1,) * a for i, a in enumerate(parts)), ())
    return young_subgroup_of(marker)


def coset_transversal(parts):
    """Minimal-length left coset representatives of the Young subgroup.

    A left coset is determined by the tuple of image sets of the blocks; the
    shortest representative maps each block onto its image set increasingly.
    """
    parts = check_composition(parts)
    d = sum(parts)
    blocks = composition_blocks(parts)
    out = []

    def assign(remaining, part_idx, images):
        if part_idx == len(parts):
            one_line = [0] * d
            for block, image in zip(blocks, images):
                for src, dst in zip(block, image):
                    one_line[src - 1] = dst
            out.append(tuple(one_line))
            return
        for image in combinations(remaining, parts[part_idx]):
            rest = tuple(x for x in remaining if x not in image)
            assign(rest, part_idx + 1, images + [image])

    assign(tuple(range(1, d + 1)), 0, [])
    return out


def coset_id(sigma, parts):
    """The left coset of sigma: the ordered tuple of block image sets."""
    return tuple(tuple(sorted(sigma[p - 1] for p in block))
                 for block in composition_blocks(parts))


def is_left_transversal(perms, parts):
    ids = {coset_id(sigma, parts) for sigma in perms}
    return len(perms) == len(ids) == multinomial(parts)


def random_transversal(parts, rng):
    """A transversal with a random member of each coset; for invariance tests."""
    young = young_subgroup(parts)
    return [perm_compose(sigma, rng.choice(young)) for sigma in coset_transversal(parts)]


def transversal_by_product(parts):
    """Transversal built recursively through the chain of Young subgroups:
    representatives for (a_1+...+a_{k-1}, a_k) composed with representatives
    for (a_1, ..., a_{k-1}) embedded in the first block."""
    parts = check_composition(parts)
    if len(parts) == 1:
        return [tuple(range(1, parts[0] + 1))]
    d = sum(parts)
    inner = transversal_by_product(parts[:-1])
    outer = coset_transversal((d - parts[-1], parts[-1]))
    tail = tuple(range(d - parts[-1] + 1, d + 1))
    return [perm_compose(tau, sigma + tail) for tau in outer for sigma in inner]


def transfer(parts, fs, transversal=None):
    """The transversal-summed blockwise product, an element of degree sum(parts)."""
    parts = check_composition(parts)
    if len(fs) != len(parts):
        raise InvalidArgument(f"{len(fs)} factors for a {len(parts)}-part composition")
    for f, a in zip(fs, parts):
        if f.q != a:
            raise DimensionMismatch(f"degree-{f.q} factor on a part of size {a}")
    ranks = {f.n for f in fs}
    if len(ranks) != 1:
        raise DimensionMismatch(f"factors of different ranks {sorted(ranks)}")
    n = ranks.pop()
    d = sum(parts)
    if transversal is None:
        transversal = coset_transversal(parts)
    splits = []
    start = 0
    for a in parts:
        splits.append((start, start + a))
        start += a

    data = {}
    for u in sorted_words(n, d):
        total = TensorElement(d)
        for sigma in transversal:
            v = act(u, perm_inverse(sigma))
            piece = TensorElement.from_word(())
            for (lo, hi), f in zip(splits, fs):
                piece = tensor_product(piece, f.apply_word(v[lo:hi]))
            total = total + piece.act(sigma)
        row = orbit_data_of_column(u, total)
        if row:
            data[u] = row
    return SchurElement(n, d, data)


def star(f, g):
    """Binary cross-degree product; degree-0 factors act as scalars."""
    if f.n != g.n:
        raise DimensionMismatch(f"factors of ranks {f.n} and {g.n}")
    if f.q == 0:
        return g.scale(f.scalar_value)
    if g.q == 0:
        return f.scale(g.scalar_value)
    return transfer((f.q, g.q), [f, g])


class GradedSchurElement:
    """A finitely supported sum of elements across degrees, rank n."""

    __slots__ = ("n", "components")

    def __init__(self, n, components=None):
        self.n = n
        comps = {}
        for q, f in (components or {}).items():
            if f.n != n:
                raise DimensionMismatch(f"rank-{f.n} component in a rank-{n} element")
            if f.q != q:
                raise DimensionMismatch(f"degree-{f.q} component stored at degree {q}")
            if not f.is_zero():
                comps[q] = f
        self.components = comps

    @classmethod
    def of(cls, *fs):
        if not fs:
            raise InvalidArgument("need at least one component")
        out = cls(fs[0].n)
        for f in fs:
            out = out + cls(f.n, {f.q: f})
        return out

    @classmethod
    def scalar(cls, n, value):
        return cls(n, {0: SchurElement.scalar(n, value)})

    def component(self, q):
        return self.components.get(q, SchurElement.zero(self.n, q))

    def degrees(self):
        return sorted(self.components)

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (isinstance(other, GradedSchurElement)
                and self.n == other.n and self.components == other.components)

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"adding ranks {self.n} and {other.n}")
        comps = dict(self.components)
        for q, f in other.components.items():
            comps[q] = comps[q] + f if q in comps else f
        return GradedSchurElement(self.n, comps)

    def __repr__(self):
        return f"GradedSchurElement(n={self.n}, degrees={self.degrees()})"


def boxtimes(F, G):
    """Bilinear extension of star across degrees: the degree-d component of
    the product is the sum of products of components with degrees adding to d."""
    if isinstance(F, SchurElement):
        F = GradedSchurElement.of(F)
    if isinstance(G, SchurElement):
        G = GradedSchurElement.of(G)
    if F.n != G.n:
        raise DimensionMismatch(f"factors of ranks {F.n} and {G.n}")
    out = GradedSchurElement(F.n)
    for p, fp in F.components.items():
        for q, gq in G.components.items():
            out = out + GradedSchurElement(F.n, {p + q: star(fp, gq)})
    return out


def operad_compose(theta, thetas):
    """Operadic composition: theta of arity m (degree m-1) applied to the
    m-tuple of operations theta_i of arities k_i (degrees k_i - 1), realized
    as the iterated cross-degree product; the result has arity sum(k_i)."""
    m = len(thetas)
    if theta.q != m - 1:
        raise InvalidArgument(
            f"degree-{theta.q} operation has arity {theta.q + 1}, got {m} arguments")
    result = theta
    for t in thetas:
        result = star(result, t)
    return result
