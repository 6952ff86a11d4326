"""Acceptance checks, one per criterion, at their stated parameters.

Every comparison is exact (integer arithmetic throughout); each test prints
one PASS line with its elapsed time once its criterion has been verified.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import random
import time
from itertools import permutations, product

from schurlie.derivations import (apply_derivation, commutator_derivation,
                                  conjugating_derivation, der_bracket,
                                  find_annihilating_schur, gamma_generators,
                                  generator_derivation, mtilde_generators,
                                  schur_act, schur_closure_rank)
from schurlie.freegroup import (classify_pair, commutator_auto,
                                conjugating_auto, johnson_image, verify_mccool)
from schurlie.freelie import (LEAF, bracketing_function, embed, generator,
                              lie_bracket, lyndon_basis, normalize,
                              specht_wever, witt_dimension)
from schurlie.schur import (SchurElement, apply_to_lie, basis,
                            basis_dimension_formula, decompose_in_basis,
                            equivariant_basis_bruteforce, orbit_keys,
                            schur_is_equivariant)
from schurlie.suites import run_operad, run_star_laws
from schurlie.words import TensorElement, sorted_words, words_of


def _announce(number, text, started):
    print(f"PASS criterion {number}: {text} ({time.monotonic() - started:.1f}s)")


def test_criterion_01_bracketing_function_reproduction():
    started = time.monotonic()
    assert str(bracketing_function(((LEAF, LEAF), LEAF))) == "1 - (1 2) - (1 2 3) + (1 3)"
    assert str(bracketing_function((LEAF, (LEAF, LEAF)))) == "1 - (2 3) - (1 3 2) + (1 3)"
    _announce(1, "bracket-shape group-ring expansions reproduced exactly", started)


def test_criterion_02_schur_characterization():
    started = time.monotonic()
    for n in (1, 2, 3):
        for q in range(0, 5):
            b = basis(n, q)
            for f in b:
                assert schur_is_equivariant(f), (n, q)
            oracle = equivariant_basis_bruteforce(n, q)
            assert len(oracle) == len(b) == basis_dimension_formula(n, q), (n, q)
            for colmap in oracle:
                elem = decompose_in_basis(colmap, n, q)
                assert elem is not None, (n, q)
                assert elem.column_map() == colmap, (n, q)
    _announce(2, "orbit-data basis = brute-force equivariants, exhaustive", started)


def test_criterion_03_specht_wever_relation():
    started = time.monotonic()
    for n in (1, 2, 3):
        for p in range(1, 6):
            for w in words_of(n, p):
                image = specht_wever(w, n)
                assert specht_wever(embed(image), n) == image.scale(p), (n, p, w)
    _announce(3, "left-normed bracketing map is a scaled idempotent", started)


def _random_schur(n, q, rng, entries=2):
    if q == 0:
        return SchurElement.scalar(n, rng.randint(-3, 3))
    us = list(sorted_words(n, q))
    data = {}
    for _ in range(entries):
        u = rng.choice(us)
        key = rng.choice(orbit_keys(n, u))
        data.setdefault(u, {})[key] = rng.choice([-3, -2, -1, 1, 2, 3])
    return SchurElement(n, q, data)


def test_criterion_04_bracketing_commutes_and_preserves_lie():
    started = time.monotonic()
    rng = random.Random(404)
    for n in (1, 2, 3):
        for q in range(1, 5):
            words = list(words_of(n, q))
            sw_embedded = {w: embed(specht_wever(w, n)) for w in words}
            for _ in range(200):
                f = _random_schur(n, q, rng)
                cols = {w: f.apply_word(w) for w in words}
                for w in words:
                    lhs = f.apply(sw_embedded[w])
                    rhs = TensorElement(q)
                    for v, c in cols[w].items():
                        rhs = rhs + sw_embedded[v].scale(c)
                    assert lhs == rhs, (n, q, w)
                # image of a Lie element decomposes with zero remainder
                a = specht_wever(TensorElement(
                    q, {rng.choice(words): rng.randint(-3, 3) for _ in range(2)}), n)
                apply_to_lie(f, a)
    _announce(4, "random equivariants commute with bracketing, preserve Lie", started)


def test_criterion_05_star_product_laws():
    started = time.monotonic()
    for n in (2, 3):
        report = run_star_laws(n=n, max_degree=5, seed=5005, trials=100)
        assert report["ok"], [i for i in report["instances"] if not i["pass"]][:3]
    _announce(5, "transversal independence, associativity, commutativity, "
                 "distributivity of the cross-degree product", started)


def test_criterion_06_operad_axioms():
    started = time.monotonic()
    for n in (2, 3):
        report = run_operad(n=n, seed=6006, trials=20)
        identity_instances = [i for i in report["instances"]
                              if i["key"].startswith("identity")]
        coherence_instances = [i for i in report["instances"]
                               if i["key"].startswith("coherence")]
        assert identity_instances and all(i["pass"] for i in identity_instances)
        assert coherence_instances
        failed = [i for i in coherence_instances if not i["pass"]]
        assert not failed, f"coherence failures logged: {failed}"
    _announce(6, "operad unit axiom exact; coherence instances evaluated, none failed",
              started)


def test_criterion_07_commutation_identity():
    started = time.monotonic()
    n = 3
    for i in range(1, 4):
        for j in range(1, 4):
            if i == j:
                continue
            chi = conjugating_derivation(n, i, j)
            for k in range(1, 5):
                for tree in lyndon_basis(n, k):
                    u = normalize(n, tree)
                    lhs = der_bracket(chi, generator_derivation(j, u))
                    rhs = (-generator_derivation(i, lie_bracket(generator(n, i), u))
                           + generator_derivation(j, apply_derivation(chi, u)))
                    assert lhs == rhs, (i, j, tree)
    _announce(7, "bracket against a loaded generator derivation splits exactly",
              started)


def test_criterion_08_annihilating_solver():
    started = time.monotonic()
    n = 3
    for i in range(1, 4):
        for j in range(1, 4):
            if i == j:
                continue
            for k in (2, 3):
                for tree in lyndon_basis(n, k):
                    h = find_annihilating_schur(n, i, j, tree)
                    u = normalize(n, tree)
                    chi = conjugating_derivation(n, i, j)
                    xi_u = lie_bracket(generator(n, i), u)
                    assert h.apply(embed(apply_derivation(chi, u))).is_zero()
                    assert apply_to_lie(h, xi_u) == -xi_u
                    assert schur_act(h, der_bracket(chi, generator_derivation(j, u))) \
                        == generator_derivation(i, xi_u)
    _announce(8, "annihilate-and-fix solver succeeds on all small monomials",
              started)


def test_criterion_09_generation_closure():
    started = time.monotonic()
    for n, max_degree in [(2, 5), (3, 4)]:
        for gens, label in [(mtilde_generators(n), "mtilde"),
                            (gamma_generators(n), "gamma")]:
            report = schur_closure_rank(n, gens, max_degree)
            for entry in report:
                p = entry["degree"]
                expected = n * len(lyndon_basis(n, p))
                assert expected == n * witt_dimension(n, p)
                assert entry["reached_rank"] == entry["full_rank"] == expected, \
                    (n, label, entry)
                assert all(d == 1 for d in entry["elementary_divisors"]), (n, label, entry)
    _announce(9, "closure reaches full saturated rank from both generator sets",
              started)


def test_criterion_10_mccool_presentation():
    started = time.monotonic()
    for n in (3, 4):
        result = verify_mccool(n)
        assert result["all_pass"], n
    _announce(10, "all basis-conjugating relation instances hold at ranks 3 and 4",
              started)


def test_criterion_11_johnson_correspondence():
    started = time.monotonic()
    n = 3
    for i in range(1, 4):
        for j in range(1, 4):
            if i == j:
                continue
            assert johnson_image(conjugating_auto(n, i, j), 1) \
                == conjugating_derivation(n, i, j)
    for (i, s, t) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)]:
        assert johnson_image(commutator_auto(n, i, s, t), 1) \
            == commutator_derivation(n, i, s, t)
    pairs = [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
    for a in pairs:
        for b in pairs:
            if a == b:
                continue
            alpha, beta = conjugating_auto(n, *a), conjugating_auto(n, *b)
            assert johnson_image(alpha.commutator(beta), 2) \
                == der_bracket(conjugating_derivation(n, *a),
                               conjugating_derivation(n, *b)), (a, b)
    _announce(11, "depth-1 images recover the quadratic derivations; depth-2 "
                  "commutators match derivation brackets", started)


def test_criterion_12_pair_classification():
    started = time.monotonic()
    abelian_cases = [(4, (1, 2), (3, 4)), (3, (1, 3), (2, 3)), (3, (2, 1), (3, 1))]
    for n, first, second in abelian_cases:
        result = classify_pair(n, first, second, 3)
        assert result["classification"] == "free-abelian"
        assert result["commutator_trivial"], (first, second)
    for first, second in [((1, 2), (2, 1)), ((1, 2), (1, 3)), ((1, 2), (2, 3))]:
        result = classify_pair(3, first, second, 3)
        assert result["classification"] == "free (finite-depth evidence)"
        assert result["all_nonzero"], (first, second)
        assert result["all_match"], (first, second)
    _announce(12, "abelian pairs have trivial commutators; free pairs certify "
                  "to depth 3", started)


def test_criterion_13_substitution_and_evaluation_lemmas():
    started = time.monotonic()
    n = 3

    def all_trees(letters):
        if len(letters) == 1:
            yield letters[0]
            return
        for split in range(1, len(letters)):
            for lt in all_trees(letters[:split]):
                for rt in all_trees(letters[split:]):
                    yield (lt, rt)

    def eval_tree(tree, leafmap):
        if not isinstance(tree, tuple):
            return leafmap[tree]
        return der_bracket(eval_tree(tree[0], leafmap),
                           eval_tree(tree[1], leafmap))

    for (i, j, jp) in permutations(range(1, 4), 3):
        table = {"A": conjugating_derivation(n, i, j),
                 "B": conjugating_derivation(n, i, jp)}
        table_hat = {"A": table["A"],
                     "B": conjugating_derivation(n, j, jp).scale(-1)}
        for m in (2, 3, 4):
            for word in product("AB", repeat=m):
                for tree in all_trees(word):
                    assert eval_tree(tree, table) == eval_tree(tree, table_hat), \
                        (i, j, jp, tree)

    for i in range(1, 4):
        others = [j for j in range(1, 4) if j != i]
        for r in range(1, 5):
            for js in product(others, repeat=r):
                d = conjugating_derivation(n, i, js[0])
                checked = js[0]
                for jnext in js[1:]:
                    d = der_bracket(d, conjugating_derivation(n, i, jnext))
                    checked = (checked, jnext)
                if r == 1:
                    expected = normalize(n, (i, js[0]))
                else:
                    expected = lie_bracket(generator(n, i), normalize(n, checked))
                assert d.image(i) == expected, (i, js)
                for k in range(1, 4):
                    if k != i:
                        assert d.image(k).is_zero(), (i, js, k)
    _announce(13, "substitution identity and left-normed evaluation formula, "
                  "exhaustive through degree 4", started)
