"""Desk-scale machine checks of the structural laws connecting preservation,
generation, and the local closure operators.  Every check returns a Report;
failures carry a counterexample that the preservation primitives can
re-validate independently.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    Carrier,
    CapExceeded,
    OpFamily,
    Operation,
    PairFamily,
    Relation,
    RelationPair,
    all_operations,
    all_pairs,
    all_relations,
    compose,
    enc,
    identity_op,
    is_projection,
    projection,
    projections_upto,
)
from .generation import (
    clone_nary_part,
    decide_projections,
    gamma_fixpoint,
    semiclone_nary_part,
    semigroup_generate,
)
from .preserve import (
    inv,
    invp,
    invp_upto,
    loc_ops,
    op_image_mask,
    pol,
    polp,
    polp_upto,
    preserves,
    sloc_ops,
)
from .relpairs import (
    is_s_directed,
    loc_pairs,
    rpclone_generate_stable,
    sloc_pairs,
    union_family,
)


@dataclass
class Report:
    name: str
    params: dict
    verdict: str  # "pass" | "fail" | "refused"
    counterexample: dict | None = None
    runtime_ms: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "runtime_ms": self.runtime_ms,
            "details": self.details,
        }


def _run(name: str, params: dict, body: Callable[[], tuple[str, dict | None, dict]]) -> Report:
    start = time.perf_counter()
    try:
        verdict, witness, details = body()
    except CapExceeded as e:
        verdict, witness, details = "refused", None, {"what": e.what, "cost": e.cost, "cap": e.cap}
    ms = int((time.perf_counter() - start) * 1000)
    return Report(name, params, verdict, witness, ms, details)


def _op_key(f: Operation) -> str:
    return f"op/{f.arity}:" + "".join(str(v) for v in f.table)


def _pair_key(p: RelationPair) -> str:
    return f"pair/{p.arity}:rho={p.rho.mask:x},rho'={p.rho_prime.mask:x}"


def _windowed_maps(k: int, op_cap: int, pair_cap: int, cap: int):
    def invp_w(F: Iterable[Operation]) -> PairFamily:
        return invp_upto(list(F), pair_cap, k, cap)

    def polp_w(Q: Iterable[RelationPair]) -> OpFamily:
        return polp_upto(list(Q), op_cap, k, cap)

    return invp_w, polp_w


def check_galois_axioms(k: int = 2, op_arity_cap: int = 2, pair_arity_cap: int = 2,
                        cap: int = 2 ** 20) -> Report:
    """Antitonicity, extensivity and triple-composition idempotence of the
    window-restricted maps between operation sets and pair families,
    exhaustively over singletons and their two-element unions."""
    params = {"k": k, "op_arity_cap": op_arity_cap, "pair_arity_cap": pair_arity_cap}

    def body():
        carrier = Carrier(k)
        invp_w, polp_w = _windowed_maps(k, op_arity_cap, pair_arity_cap, cap)
        ops = [f for n in range(1, op_arity_cap + 1) for f in all_operations(carrier, n)]
        pair_universe_cap = min(pair_arity_cap, 1)
        pairs = [p for m in range(pair_universe_cap + 1) for p in all_pairs(carrier, m)]
        # extensivity and idempotence over singletons
        for f in ops:
            F = OpFamily([f])
            q = invp_w(F)
            back = polp_w(q)
            if f.arity <= op_arity_cap and f not in back:
                return "fail", {"law": "extensivity", "op": _op_key(f)}, {}
            if invp_w(back) != q:
                return "fail", {"law": "invp_polp_invp", "op": _op_key(f)}, {}
        for p in pairs:
            Q = PairFamily([p])
            g = polp_w(Q)
            back = invp_w(g)
            if p not in back:
                return "fail", {"law": "extensivity", "pair": _pair_key(p)}, {}
            if polp_w(back) != g:
                return "fail", {"law": "polp_invp_polp", "pair": _pair_key(p)}, {}
        # antitonicity over two-element unions
        for f, g in itertools.combinations(ops, 2):
            both = invp_w(OpFamily([f, g]))
            if not both.issubset(invp_w(OpFamily([f]))):
                return "fail", {"law": "invp_antitone", "ops": [_op_key(f), _op_key(g)]}, {}
        for p, q in itertools.combinations(pairs, 2):
            both = polp_w(PairFamily([p, q]))
            if not both.issubset(polp_w(PairFamily([p]))):
                return "fail", {"law": "polp_antitone", "pairs": [_pair_key(p), _pair_key(q)]}, {}
        return "pass", None, {"ops": len(ops), "pairs": len(pairs)}

    return _run("galois-axioms", params, body)


def check_op_side_characterisation(F: Iterable[Operation], s: int, n: int, k: int,
                                   cap: int = 2 ** 20) -> Report:
    """Polymorphisms of all invariant pairs of arity <= s equal the s-local
    closure of the generated composition-closed set, via two independent
    pipelines; also the single-arity-s variant on non-empty carriers."""
    ops = list(F)
    params = {"k": k, "s": s, "n": n, "F": [_op_key(f) for f in ops]}

    def body():
        lhs = polp(invp_upto(ops, s, k, cap), n, k, cap)
        rhs = sloc_ops(semiclone_nary_part(ops, n, k, cap), s, n, k, cap)
        if lhs != rhs:
            diff = set(lhs) ^ set(rhs)
            g = min(diff, key=Operation.sort_key)
            return "fail", {"op": _op_key(g), "in_lhs": g in lhs, "in_rhs": g in rhs}, {}
        if k > 0:
            single = polp(invp(ops, s, k, cap), n, k, cap)
            if single != rhs:
                diff = set(single) ^ set(rhs)
                g = min(diff, key=Operation.sort_key)
                return "fail", {"variant": "single-arity", "op": _op_key(g)}, {}
        return "pass", None, {"size": len(lhs)}

    return _run("op-side-characterisation", params, body)


def check_least_invariant_pair(F: Iterable[Operation], B: Iterable[tuple[int, ...]],
                               k: int, cap: int = 2 ** 20) -> Report:
    """The generation fixpoint over K = A returns the componentwise-least
    invariant pair whose first component contains the seed, compared against
    brute-force enumeration; the round count respects the chain bound."""
    ops = list(F)
    seed = sorted(tuple(t) for t in B)
    params = {"k": k, "F": [_op_key(f) for f in ops], "B": [list(t) for t in seed]}

    def body():
        result = gamma_fixpoint(ops, k, seed, k, cap)
        space = list(itertools.product(range(k), repeat=k))
        bound = k ** k
        if result.steps > bound:
            return "fail", {"reason": "round bound exceeded", "steps": result.steps}, {}

        def invariant(rho: frozenset, rho_p: frozenset) -> bool:
            for f in ops:
                for args in itertools.product(sorted(rho), repeat=f.arity):
                    img = tuple(f(tuple(a[i] for a in args)) for i in range(k))
                    if img not in rho_p:
                        return False
            return True

        best = None
        for rho_bits in range(1 << len(space)):
            rho = frozenset(space[i] for i in range(len(space)) if rho_bits >> i & 1)
            if not all(t in rho for t in seed):
                continue
            inner = sorted(rho)
            for size in range(len(inner) + 1):
                for chosen in itertools.combinations(inner, size):
                    rho_p = frozenset(chosen)
                    if invariant(rho, rho_p):
                        if best is None:
                            best = (rho, rho_p)
                        else:
                            best = (best[0] & rho, best[1] & rho_p)
        if best is None:
            return "fail", {"reason": "no invariant pair found by brute force"}, {}
        if (result.R, result.S) != best:
            return "fail", {
                "gamma": [sorted(map(list, result.R)), sorted(map(list, result.S))],
                "minimum": [sorted(map(list, best[0])), sorted(map(list, best[1]))],
            }, {}
        return "pass", None, {"steps": result.steps}

    return _run("least-invariant-pair", params, body)


def check_finite_collapse(Q: Iterable[RelationPair], m: int, k: int,
                          cap: int = 2 ** 20) -> Report:
    """On a finite carrier the relaxation closure, the local closure, and the
    s-local closure at s = k^m coincide."""
    pairs = list(Q)
    params = {"k": k, "m": m, "Q": [_pair_key(p) for p in pairs]}

    def body():
        via_enc = enc(p for p in pairs if p.arity == m)
        via_loc = loc_pairs(pairs, m, k, cap)
        via_sloc = sloc_pairs(pairs, Carrier(k).num_tuples(m), m, k, cap)
        if not (via_enc == via_loc == via_sloc):
            return "fail", {
                "enc": len(via_enc), "loc": len(via_loc), "sloc": len(via_sloc),
            }, {}
        return "pass", None, {"size": len(via_enc)}

    return _run("finite-collapse", params, body)


def check_pair_side_characterisation(Q: Iterable[RelationPair], s: int, m: int, k: int,
                                     cap: int = 2 ** 20) -> Report:
    """Invariant pairs of all polymorphisms of arity <= s equal the s-local
    closure of the generated relation pair clone.  A shortfall of the
    generated side is reported as generation incompleteness; a surplus would
    be a logic error and must never occur.  The {0,s}-arity and, when an
    empty pair is present, single-arity-s polymorphism windows are also
    compared against the brute-force side."""
    pairs = list(Q)
    params = {"k": k, "s": s, "m": m, "Q": [_pair_key(p) for p in pairs]}

    def body():
        F_all = polp_upto(pairs, s, k, cap)
        lhs = invp(F_all, m, k, cap)
        # window variants checked purely on the brute-force side
        f_0s = OpFamily(itertools.chain(polp(pairs, 0, k, cap), polp(pairs, s, k, cap)))
        if invp(f_0s, m, k, cap) != lhs:
            return "fail", {"variant": "arities {0,s}"}, {}
        if any(p.rho.mask == 0 for p in pairs):
            if invp(polp(pairs, s, k, cap), m, k, cap) != lhs:
                return "fail", {"variant": "single arity s with empty pair"}, {}
        gen = rpclone_generate_stable(pairs, m, k, cap)
        rhs = sloc_pairs(gen.pairs, s, m, k, cap)
        if rhs == lhs:
            return "pass", None, {
                "size": len(lhs),
                "intermediate_cap": gen.intermediate_cap,
            }
        extra = [p for p in rhs if p not in lhs]
        if extra:
            return "fail", {
                "kind": "logic_error",
                "pair": _pair_key(extra[0]),
            }, {"intermediate_cap": gen.intermediate_cap}
        missing = [p for p in lhs if p not in rhs]
        return "fail", {
            "kind": "generation_incomplete",
            "pair": _pair_key(missing[0]),
            "missing": len(missing),
        }, {"intermediate_cap": gen.intermediate_cap}

    return _run("pair-side-characterisation", params, body)


def check_semiclone_laws(F: Iterable[Operation], k: int, cap: int = 2 ** 20) -> Report:
    """Structural laws of generated composition-closed sets on the computed
    arity window: projections generate exactly the trivial operations, adding
    the identity adds exactly the trivial operations, the trivial part of a
    generated set is all-or-nothing, polymorphism sets are clones exactly for
    identical-pair families, and unary parts compose."""
    ops = list(F)
    params = {"k": k, "F": [_op_key(f) for f in ops]}
    window = (1, 2)

    def body():
        carrier = Carrier(k)
        triv = {n: OpFamily(projection(n, i, carrier) for i in range(n)) for n in window}
        if k > 0:
            for e in projections_upto(carrier, 2):
                for n in window:
                    if semiclone_nary_part([e], n, k, cap) != triv[n]:
                        return "fail", {"law": "projections generate trivials",
                                        "op": _op_key(e), "n": n}, {}
        ident = identity_op(carrier) if k > 0 else None
        for n in window:
            part = semiclone_nary_part(ops, n, k, cap)
            if ident is not None:
                with_id = semiclone_nary_part(ops + [ident], n, k, cap)
                if with_id != part.union(triv[n]):
                    return "fail", {"law": "adding identity adds trivials", "n": n}, {}
            overlap = OpFamily(f for f in part if f in triv[n])
            if len(overlap) not in (0, len(triv[n])):
                return "fail", {"law": "trivial part all-or-nothing", "n": n}, {}
        # unary part closed under composition
        unary = semiclone_nary_part(ops, 1, k, cap)
        for f in unary:
            for g in unary:
                if compose(f, [g]) not in unary:
                    return "fail", {"law": "unary part composes",
                                    "ops": [_op_key(f), _op_key(g)]}, {}
        # polymorphism sets are clones iff the constraining pairs are identical
        sample_qs = [
            PairFamily([p]) for p in all_pairs(carrier, 1)
        ]
        for Q in sample_qs:
            is_clone = all(
                projection(n, i, carrier) in polp(Q, n, k, cap)
                for n in window for i in range(n)
            )
            expected = all(p.is_identical() for p in Q)
            if is_clone != expected:
                return "fail", {"law": "polp clone iff identical pairs",
                                "Q": [_pair_key(p) for p in Q]}, {}
        # polymorphisms of bounded-arity pair families are s-locally fixed
        for Q in sample_qs:
            s = max(p.arity for p in Q)
            for n in window:
                pn = polp(Q, n, k, cap)
                if sloc_ops(pn, s, n, k, cap) != pn:
                    return "fail", {"law": "polp s-locally closed",
                                    "Q": [_pair_key(p) for p in Q], "n": n}, {}
        return "pass", None, {}

    return _run("semiclone-laws", params, body)


def check_projection_decidability(F: Iterable[Operation], k: int,
                                  cap: int = 2 ** 20) -> Report:
    """The fixpoint decision for whether the generated clone minus
    projections stays composition-closed, cross-validated by a direct closure
    test on the computed arity window."""
    ops = list(F)
    params = {"k": k, "F": [_op_key(f) for f in ops]}

    def body():
        carrier = Carrier(k)
        verdict = decide_projections(ops, k, cap)
        window = (1, 2)
        parts = {n: OpFamily(f for f in clone_nary_part(ops, n, k, cap)
                             if not is_projection(f))
                 for n in window}
        triv = {n: [projection(n, i, carrier) for i in range(n)] for n in window}
        closed = True
        for n in window:
            for f in parts[n]:
                for m in window:
                    inner_pool = list(parts[m]) + triv[m]
                    for gs in itertools.product(inner_pool, repeat=f.arity):
                        if f.arity == 0:
                            continue
                        h = compose(f, list(gs))
                        if is_projection(h) or h not in parts[m]:
                            closed = False
        if verdict != closed:
            return "fail", {"fixpoint": verdict, "direct_window_test": closed}, {}
        return "pass", None, {"is_semiclone_without_projections": verdict}

    return _run("projection-decidability", params, body)


def check_transformation_semigroups(k: int = 2, cap: int = 2 ** 20) -> Report:
    """Every composition-closed set of unary maps is recovered as the unary
    polymorphisms of its invariant pairs up to arity 2; proper ones (without
    the identity) exhibit a strictly relaxing invariant pair."""
    params = {"k": k}

    def body():
        carrier = Carrier(k)
        unary = list(all_operations(carrier, 1))
        ident = identity_op(carrier)
        for bits in range(1 << len(unary)):
            H = OpFamily(unary[i] for i in range(len(unary)) if bits >> i & 1)
            if semigroup_generate(H) != H:
                continue
            q = invp_upto(list(H), 2, k, cap)
            recovered = polp(q, 1, k, cap)
            if recovered != H:
                return "fail", {
                    "H": [_op_key(f) for f in H],
                    "recovered": [_op_key(f) for f in recovered],
                }, {}
            if ident not in H:
                strict = [p for p in q if not p.is_identical()]
                if not strict:
                    return "fail", {
                        "H": [_op_key(f) for f in H],
                        "reason": "proper semigroup without strict invariant pair",
                    }, {}
        return "pass", None, {}

    return _run("transformation-semigroups", params, body)


def check_directed_unions(Q: Iterable[RelationPair], s: int, m: int, k: int,
                          seed: int = 0, samples: int = 50,
                          cap: int = 2 ** 20) -> Report:
    """Unions of s-directed subfamilies of an s-local closure stay inside it."""
    pairs = list(Q)
    params = {"k": k, "s": s, "m": m, "seed": seed, "samples": samples,
              "Q": [_pair_key(p) for p in pairs]}

    def body():
        closure = sloc_pairs(pairs, s, m, k, cap)
        members = list(closure)
        if not members:
            return "pass", None, {"closure_size": 0, "checked": 0}
        rng = random.Random(seed)
        checked = 0
        for _ in range(samples):
            size = rng.randint(1, min(4, len(members)))
            T = [rng.choice(members) for _ in range(size)]
            if not is_s_directed(T, s):
                continue
            u = union_family(T)
            checked += 1
            if u not in closure:
                return "fail", {
                    "T": [_pair_key(p) for p in T],
                    "union": _pair_key(u),
                }, {}
        return "pass", None, {"closure_size": len(members), "checked": checked}

    return _run("directed-unions", params, body)


def _sloc_rels(rels: list[Relation], s: int, m: int, k: int) -> list[Relation]:
    """Classical s-local closure for plain relations: every small subset must
    be covered by a member relation lying inside the candidate."""
    carrier = Carrier(k)
    qm = [r.mask for r in rels if r.arity == m]
    out = []
    for sigma_mask in range(1 << carrier.num_tuples(m)):
        members = [i for i in range(carrier.num_tuples(m)) if sigma_mask >> i & 1]
        size = min(s, len(members))
        ok = all(
            any(B & ~rho == 0 and rho & ~sigma_mask == 0 for rho in qm)
            for combo in itertools.combinations(members, size)
            for B in [sum(1 << i for i in combo)]
        )
        if ok:
            out.append(Relation(k, m, sigma_mask))
    return sorted(out, key=Relation.sort_key)


def check_classical(F: Iterable[Operation], Q1: Iterable[Relation], s: int, k: int,
                    cap: int = 2 ** 20) -> Report:
    """The identical-pair specialisation: the s-local closure of the
    generated clone equals the polymorphisms of the classical invariants,
    projection-containing sets have only identical invariant pairs, the empty
    relation excludes exactly the nullary operations, small-arity invariants
    are redundant, and the relation-side closure equality holds with the
    generated relational clone."""
    ops = list(F)
    rels = list(Q1)
    params = {"k": k, "s": s, "F": [_op_key(f) for f in ops],
              "Q1": [f"rel/{r.arity}:{r.mask:x}" for r in rels]}

    def body():
        carrier = Carrier(k)
        for n in (1, 2):
            lhs = sloc_ops(clone_nary_part(ops, n, k, cap), s, n, k, cap)
            inv_upto = [rho for m in range(s + 1) for rho in inv(ops, m, k, cap)]
            rhs_upto = pol(inv_upto, n, k, cap)
            rhs_single = pol(inv(ops, s, k, cap), n, k, cap)
            if not (lhs == rhs_upto == rhs_single):
                return "fail", {"equality": "sloc clone vs pol inv", "n": n,
                                "sizes": [len(lhs), len(rhs_upto), len(rhs_single)]}, {}
            # invariants of arity < 1 are redundant
            inv_from_1 = [rho for m in range(1, s + 1) for rho in inv(ops, m, k, cap)]
            if pol(inv_from_1, n, k, cap) != rhs_upto:
                return "fail", {"equality": "small-arity invariants redundant", "n": n}, {}
        if k > 0:
            with_proj = ops + [identity_op(carrier)]
            for m in range(3):
                if any(not p.is_identical() for p in invp(with_proj, m, k, cap)):
                    return "fail", {"law": "projection forces identical pairs", "m": m}, {}
        empty_rel = Relation.empty(k, 1)
        for n in range(3):
            got = pol([empty_rel], n, k, cap)
            want = OpFamily() if n == 0 else OpFamily(all_operations(carrier, n))
            if got != want:
                return "fail", {"law": "empty relation excludes nullaries", "n": n}, {}
        # relation-side closure equality, via identical-pair generation
        if rels and s > 0:
            m = max(r.arity for r in rels)
            identical = [RelationPair.identical(r) for r in rels]
            gen = rpclone_generate_stable(identical, m, k, cap)
            relclone_m = [p.rho for p in gen.pairs if p.arity == m and p.is_identical()]
            rhs_rels = _sloc_rels(relclone_m, s, m, k)
            f_all = [f for n2 in range(s + 1) for f in pol(rels, n2, k, cap)]
            lhs_rels = inv(f_all, m, k, cap)
            f_0s = list(pol(rels, 0, k, cap)) + list(pol(rels, s, k, cap))
            if inv(f_0s, m, k, cap) != lhs_rels:
                return "fail", {"equality": "inv pol {0,s} window"}, {}
            # bridge between the pair-level and relation-level local closures
            pair_side = sloc_pairs(PairFamily(identical), s, m, k, cap)
            from_rels = PairFamily(
                RelationPair.identical(sig) for sig in _sloc_rels(rels, s, m, k)
            )
            if pair_side != from_rels:
                return "fail", {"equality": "pair vs relation local closure"}, {}
            if rhs_rels != lhs_rels:
                if any(r not in lhs_rels for r in rhs_rels):
                    return "fail", {"kind": "logic_error",
                                    "equality": "sLOC relclone vs inv pol"}, {}
                return "fail", {"kind": "generation_incomplete",
                                "equality": "sLOC relclone vs inv pol"}, \
                    {"intermediate_cap": gen.intermediate_cap}
        return "pass", None, {}

    return _run("classical-pol-inv", params, body)


def _default_suite(k: int = 2, seed: int = 0, cap: int = 2 ** 20) -> list[Report]:
    carrier = Carrier(k)
    and_op = Operation(2, 2, (0, 0, 0, 1))
    const0 = Operation(2, 1, (0, 0))
    leq = Relation.from_tuples(carrier, 2, [(0, 0), (0, 1), (1, 1)])
    leq_pair = RelationPair.identical(leq)
    strict01 = RelationPair.of(
        Relation.from_tuples(carrier, 1, [(0,), (1,)]),
        Relation.from_tuples(carrier, 1, [(1,)]),
    )
    reports = [
        check_galois_axioms(k, 2, 2, cap),
        check_op_side_characterisation([and_op], 2, 1, k, cap),
        check_least_invariant_pair([and_op], [(0, 1)], k, cap),
        check_finite_collapse(list(all_pairs(carrier, 1)), 1, k, cap),
        check_pair_side_characterisation([leq_pair], 1, 1, k, cap),
        check_pair_side_characterisation([strict01], 1, 1, k, cap),
        check_semiclone_laws([and_op], k, cap),
        check_projection_decidability([and_op], k, cap),
        check_projection_decidability([const0], k, cap),
        check_projection_decidability([], k, cap),
        check_transformation_semigroups(k, cap),
        check_directed_unions([leq_pair], 2, 2, k, seed, 50, cap),
        check_classical([and_op], [leq], 2, k, cap),
    ]
    return reports


CHECKS = {
    "galois": lambda k, seed, cap: [check_galois_axioms(k, 2, 2, cap)],
    "op-side": lambda k, seed, cap: [
        check_op_side_characterisation([Operation(2, 2, (0, 0, 0, 1))], 2, 1, k, cap)
    ],
    "least-pair": lambda k, seed, cap: [
        check_least_invariant_pair([Operation(2, 2, (0, 0, 0, 1))], [(0, 1)], k, cap)
    ],
    "finite-collapse": lambda k, seed, cap: [
        check_finite_collapse(list(all_pairs(Carrier(k), 1)), 1, k, cap)
    ],
    "pair-side": lambda k, seed, cap: [
        check_pair_side_characterisation(
            [RelationPair.identical(
                Relation.from_tuples(Carrier(k), 2, [(0, 0), (0, 1), (1, 1)]))],
            1, 1, k, cap)
    ],
    "semiclone-laws": lambda k, seed, cap: [
        check_semiclone_laws([Operation(2, 2, (0, 0, 0, 1))], k, cap)
    ],
    "decide-proj": lambda k, seed, cap: [
        check_projection_decidability([Operation(2, 2, (0, 0, 0, 1))], k, cap)
    ],
    "semigroups": lambda k, seed, cap: [check_transformation_semigroups(k, cap)],
    "directed-unions": lambda k, seed, cap: [
        check_directed_unions(
            [RelationPair.identical(
                Relation.from_tuples(Carrier(k), 2, [(0, 0), (0, 1), (1, 1)]))],
            2, 2, k, seed, 50, cap)
    ],
    "classical": lambda k, seed, cap: [
        check_classical([Operation(2, 2, (0, 0, 0, 1))],
                        [Relation.from_tuples(Carrier(k), 2, [(0, 0), (0, 1), (1, 1)])],
                        2, k, cap)
    ],
}


def run_checks(name: str, k: int = 2, seed: int = 0, cap: int = 2 ** 20) -> list[Report]:
    if name == "all":
        return _default_suite(k, seed, cap)
    if name not in CHECKS:
        raise KeyError(name)
    return CHECKS[name](k, seed, cap)
