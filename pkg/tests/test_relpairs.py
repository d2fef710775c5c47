import itertools
import random

import pytest

from finclone.core import (
    CapExceeded,
    Carrier,
    DomainError,
    PairFamily,
    Relation,
    RelationPair,
    all_pairs,
    enc,
)
from finclone.preserve import invp, preserves
from finclone.relpairs import (
    SuperpositionSpec,
    add_fictitious,
    diagonal,
    full_pair,
    general_superposition,
    identify,
    intersect,
    is_s_directed,
    loc_pairs,
    permute,
    project_onto,
    rpclone_generate,
    rpclone_generate_stable,
    sloc_pairs,
    union_family,
)

C2 = Carrier(2)
LEQ = Relation.from_tuples(C2, 2, [(0, 0), (0, 1), (1, 1)])
LEQ_PAIR = RelationPair.identical(LEQ)


def pair_of(k, arity, rho_tuples, rho_prime_tuples):
    c = Carrier(k)
    return RelationPair.of(
        Relation.from_tuples(c, arity, rho_tuples),
        Relation.from_tuples(c, arity, rho_prime_tuples),
    )


def tuples_of(p):
    return set(p.rho.tuples()), set(p.rho_prime.tuples())


class TestSpecValidation:
    def test_output_map_length(self):
        with pytest.raises(DomainError):
            SuperpositionSpec(2, 1, (0, 1), ())

    def test_output_map_range(self):
        with pytest.raises(DomainError):
            SuperpositionSpec(1, 1, (1,), ())

    def test_input_map_range(self):
        with pytest.raises(DomainError):
            SuperpositionSpec(1, 1, (0,), ((2,),))

    def test_input_count_mismatch(self):
        spec = SuperpositionSpec(1, 1, (0,), ((0,),))
        with pytest.raises(DomainError):
            general_superposition(spec, [], 2)

    def test_input_arity_mismatch(self):
        spec = SuperpositionSpec(2, 2, (0, 1), ((0,),))
        with pytest.raises(DomainError):
            general_superposition(spec, [LEQ_PAIR], 2)


class TestGeneralSuperposition:
    def test_identity_scheme(self):
        spec = SuperpositionSpec(2, 2, (0, 1), ((0, 1),))
        assert general_superposition(spec, [LEQ_PAIR], 2) == LEQ_PAIR

    def test_componentwise(self):
        # each component is superposed on its own
        p = pair_of(2, 2, [(0, 0), (0, 1), (1, 1)], [(0, 1)])
        spec = SuperpositionSpec(2, 2, (1, 0), ((0, 1),))
        got = general_superposition(spec, [p], 2)
        assert tuples_of(got) == ({(0, 0), (1, 0), (1, 1)}, {(1, 0)})

    def test_join_two_pairs_on_shared_variable(self):
        # composition of <= with itself over a middle variable is still <=
        spec = SuperpositionSpec(3, 2, (0, 2), ((0, 1), (1, 2)))
        got = general_superposition(spec, [LEQ_PAIR, LEQ_PAIR], 2)
        assert got == LEQ_PAIR

    def test_cap_refusal(self):
        spec = SuperpositionSpec(25, 1, (0,), ())
        with pytest.raises(CapExceeded):
            general_superposition(spec, [], 2)

    def test_matches_definition_random(self):
        # direct set-level evaluation of the defining formula
        rng = random.Random(11)
        pairs1 = list(all_pairs(C2, 1))
        pairs2 = list(all_pairs(C2, 2))
        for _ in range(40):
            p = rng.choice(pairs2)
            q = rng.choice(pairs1)
            mu = rng.randint(1, 3)
            m = rng.randint(0, 2)
            beta = tuple(rng.randrange(mu) for _ in range(m))
            a1 = tuple(rng.randrange(mu) for _ in range(2))
            a2 = (rng.randrange(mu),)
            spec = SuperpositionSpec(mu, m, beta, (a1, a2))
            got = general_superposition(spec, [p, q], 2)
            for rel_got, r1, r2 in ((got.rho, p.rho, q.rho),
                                    (got.rho_prime, p.rho_prime, q.rho_prime)):
                want = {
                    tuple(a[v] for v in beta)
                    for a in C2.tuples(mu)
                    if tuple(a[v] for v in a1) in set(r1.tuples())
                    and tuple(a[v] for v in a2) in set(r2.tuples())
                }
                assert set(rel_got.tuples()) == want


class TestElementaryOps:
    def test_permute(self):
        p = pair_of(2, 2, [(0, 1)], [(0, 1)])
        got = permute(p, (1, 0))
        assert tuples_of(got) == ({(1, 0)}, {(1, 0)})

    def test_permute_rejects_non_bijection(self):
        with pytest.raises(DomainError):
            permute(LEQ_PAIR, (0, 0))

    def test_identify(self):
        got = identify(LEQ_PAIR, (0, 0), 1)
        assert tuples_of(got) == ({(0,), (1,)}, {(0,), (1,)})

    def test_identify_strict_pair(self):
        p = pair_of(2, 2, [(0, 0), (0, 1), (1, 1)], [(0, 1)])
        got = identify(p, (0, 0), 1)
        assert tuples_of(got) == ({(0,), (1,)}, set())

    def test_add_fictitious(self):
        p = pair_of(2, 1, [(1,)], [(1,)])
        got = add_fictitious(p, [0])
        assert tuples_of(got) == ({(0, 1), (1, 1)}, {(0, 1), (1, 1)})

    def test_project_onto(self):
        got = project_onto(LEQ_PAIR, [0])
        assert tuples_of(got) == ({(0,), (1,)}, {(0,), (1,)})
        got = project_onto(LEQ_PAIR, [1, 0])
        assert tuples_of(got) == ({(0, 0), (1, 0), (1, 1)},
                                  {(0, 0), (1, 0), (1, 1)})

    def test_intersect_matches_direct_masks(self):
        rng = random.Random(4)
        pairs = list(all_pairs(C2, 2))
        for _ in range(40):
            p, q = rng.choice(pairs), rng.choice(pairs)
            got = intersect(p, q)
            assert got.rho.mask == p.rho.mask & q.rho.mask
            assert got.rho_prime.mask == p.rho_prime.mask & q.rho_prime.mask

    def test_intersect_rejects_arity_mismatch(self):
        with pytest.raises(DomainError):
            intersect(LEQ_PAIR, full_pair(1, 2))

    def test_diagonal(self):
        got = diagonal(2, 0, 1, 2)
        assert got.is_identical()
        assert set(got.rho.tuples()) == {(0, 0), (1, 1)}
        got3 = diagonal(3, 0, 2, 2)
        assert set(got3.rho.tuples()) == {t for t in C2.tuples(3) if t[0] == t[2]}

    def test_diagonal_equal_indices_is_full(self):
        assert diagonal(2, 1, 1, 2) == full_pair(2, 2)

    def test_full_pair(self):
        got = full_pair(2, 2)
        assert got.is_identical() and len(got.rho) == 4

    def test_nullary_full_pair(self):
        got = full_pair(0, 2)
        assert got.is_identical() and len(got.rho) == 1

    def test_elementary_ops_are_superpositions_of_invariants(self):
        # invariant pair families absorb every elementary operation
        fam2 = set(invp([], 2, 2))
        fam1 = set(invp([], 1, 2))
        for p in list(fam2)[:10]:
            assert permute(p, (1, 0)) in fam2
            assert identify(p, (0, 0), 1) in fam1
            assert project_onto(p, [0]) in fam1


class TestInvpClosedUnderSuperposition:
    def test_random_specs_stay_invariant(self):
        from finclone.core import Operation
        AND = Operation(2, 2, (0, 0, 0, 1))
        NOT = Operation(2, 1, (1, 0))
        rng = random.Random(23)
        for F in ([AND], [NOT], [AND, NOT]):
            inv1 = list(invp(F, 1, 2))
            inv2 = list(invp(F, 2, 2))
            members = {1: inv1, 2: inv2}
            for _ in range(30):
                mu = rng.randint(1, 3)
                m = rng.randint(1, 2)
                beta = tuple(rng.randrange(mu) for _ in range(m))
                n_inputs = rng.randint(0, 2)
                chosen, alphas = [], []
                for _ in range(n_inputs):
                    ar = rng.choice((1, 2))
                    chosen.append(rng.choice(members[ar]))
                    alphas.append(tuple(rng.randrange(mu) for _ in range(ar)))
                spec = SuperpositionSpec(mu, m, beta, tuple(alphas))
                out = general_superposition(spec, chosen, 2)
                for f in F:
                    assert preserves(f, out)


class TestRpClone:
    def test_leq_target1(self):
        res = rpclone_generate([LEQ_PAIR], 1)
        want = PairFamily([full_pair(0, 2), full_pair(1, 2)])
        assert res.pairs == want
        assert res.intermediate_cap == 3
        assert res.slice_changed_at_last_cap is False

    def test_empty_seed_needs_k(self):
        with pytest.raises(DomainError):
            rpclone_generate([], 1)
        res = rpclone_generate([], 1, k=2)
        assert res.pairs == PairFamily([full_pair(0, 2), full_pair(1, 2)])

    def test_no_empty_pairs_injected(self):
        res = rpclone_generate([LEQ_PAIR], 2)
        for p in res.pairs:
            assert len(p.rho) > 0

    def test_strict_seed_produces_strict_pairs(self):
        p = pair_of(2, 1, [(0,), (1,)], [(1,)])
        res = rpclone_generate([p], 1)
        assert p in res.pairs
        assert any(not q.is_identical() for q in res.pairs)

    def test_idempotent_on_own_output(self):
        res = rpclone_generate_stable([LEQ_PAIR], 2)
        again = rpclone_generate_stable(list(res.pairs), 2)
        assert again.pairs == res.pairs

    def test_monotone_in_intermediate_cap(self):
        seed = [LEQ_PAIR, pair_of(2, 1, [(0,), (1,)], [(0,)])]
        prev = None
        for c in range(2, 5):
            cur = rpclone_generate(seed, 2, intermediate_cap=c).pairs
            if prev is not None:
                assert prev.issubset(cur)
            prev = cur

    def test_contains_invp_seed_closure_consequences(self):
        # the closure of an invariant family stays inside that family
        from finclone.core import Operation
        AND = Operation(2, 2, (0, 0, 0, 1))
        fam = set(invp([AND], 1, 2)) | set(invp([AND], 2, 2))
        res = rpclone_generate_stable(
            [p for p in fam if len(p.rho) > 0], 2)
        for p in res.pairs:
            assert preserves(AND, p)

    def test_max_pairs_refusal(self):
        with pytest.raises(CapExceeded):
            rpclone_generate([LEQ_PAIR], 2, max_pairs=5)


class TestSlocPairs:
    def test_s0_includes_everything_when_nonempty_base(self):
        # at s = 0 the only subset is empty, so any usable witness works;
        # an empty second component is usable inside every sigma'
        got = sloc_pairs([pair_of(2, 1, [(0,)], [])], 0, 1, 2)
        assert got == PairFamily(all_pairs(C2, 1))
        # a full second component is usable only when sigma' is full
        tight = sloc_pairs([full_pair(1, 2)], 0, 1, 2)
        assert tight == PairFamily([full_pair(1, 2)])

    def test_s0_empty_family(self):
        got = sloc_pairs([], 0, 1, 2)
        assert len(got) == 0

    def test_seed_is_contained(self):
        for Q in ([LEQ_PAIR], [pair_of(2, 1, [(0,), (1,)], [(1,)])]):
            m = Q[0].arity
            for s in range(4):
                fam = sloc_pairs(Q, s, m, 2)
                for p in Q:
                    assert p in fam

    def test_relaxation_closed(self):
        Q = [pair_of(2, 1, [(0,), (1,)], [(1,)])]
        for s in range(3):
            fam = sloc_pairs(Q, s, 1, 2)
            assert enc(fam) == fam

    def test_matches_definition_m1(self):
        # definition-level: all subsets of sigma with at most s elements
        rng = random.Random(9)
        pairs1 = list(all_pairs(C2, 1))
        for _ in range(15):
            Q = rng.sample(pairs1, rng.randint(0, 4))
            qm = [(set(p.rho.tuples()), set(p.rho_prime.tuples())) for p in Q]
            for s in range(4):
                want = []
                for sigma in pairs1:
                    st, spt = set(sigma.rho.tuples()), set(sigma.rho_prime.tuples())
                    ok = True
                    for size in range(min(s, len(st)) + 1):
                        for B in itertools.combinations(sorted(st), size):
                            if not any(set(B) <= rt and rpt <= spt
                                       for rt, rpt in qm):
                                ok = False
                    if ok:
                        want.append(sigma)
                assert sloc_pairs(Q, s, 1, 2) == PairFamily(want)

    def test_finite_collapse(self):
        # at s = k^m the closure equals loc and equals enc of the family
        rng = random.Random(17)
        pairs1 = list(all_pairs(C2, 1))
        for _ in range(20):
            Q = rng.sample(pairs1, rng.randint(0, 5))
            collapsed = sloc_pairs(Q, 2, 1, 2)
            assert collapsed == loc_pairs(Q, 1, 2)
            assert collapsed == enc(Q)

    def test_nesting_in_s(self):
        Q = [LEQ_PAIR, pair_of(2, 2, [(0, 0), (1, 1)], [(0, 0)])]
        prev = None
        for s in range(0, 5):
            cur = sloc_pairs(Q, s, 2, 2)
            if prev is not None:
                assert cur.issubset(prev)
            prev = cur

    def test_cap_refusal(self):
        with pytest.raises(CapExceeded):
            sloc_pairs([], 1, 3, 2, cap=100)


class TestDirectedness:
    def test_empty_family_not_directed(self):
        assert is_s_directed([], 1) is False

    def test_singleton_always_directed(self):
        for s in range(4):
            assert is_s_directed([LEQ_PAIR], s)

    def test_chain_is_directed(self):
        chain = [
            pair_of(2, 1, [(0,)], []),
            pair_of(2, 1, [(0,), (1,)], []),
        ]
        assert is_s_directed(chain, 2)

    def test_antichain_fails_at_s2(self):
        T = [pair_of(2, 1, [(0,)], []), pair_of(2, 1, [(1,)], [])]
        assert is_s_directed(T, 1)
        assert not is_s_directed(T, 2)

    def test_mixed_arity_rejected(self):
        with pytest.raises(DomainError):
            is_s_directed([LEQ_PAIR, full_pair(1, 2)], 1)

    def test_union_family(self):
        T = [pair_of(2, 1, [(0,)], [(0,)]), pair_of(2, 1, [(1,)], [])]
        u = union_family(T)
        assert tuples_of(u) == ({(0,), (1,)}, {(0,)})

    def test_union_empty_rejected(self):
        with pytest.raises(DomainError):
            union_family([])

    def test_directed_union_stays_in_sloc_closure(self):
        # an s-directed subfamily of an s-local closure has its union inside
        rng = random.Random(31)
        base = [pair_of(2, 1, [(0,), (1,)], [(1,)]), full_pair(1, 2)]
        for s in range(1, 4):
            fam = list(sloc_pairs(base, s, 1, 2))
            for _ in range(40):
                T = rng.sample(fam, rng.randint(1, min(4, len(fam))))
                if is_s_directed(T, s):
                    assert union_family(T) in PairFamily(fam)
