"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line, printed in the
terminal summary, with its runtime against the pinned limit."""
import itertools
import time
from fractions import Fraction
from math import comb

from fusionkit import catalog
from fusionkit import perm as P
from fusionkit.burnside import (BurnsideElement, all_pairs, augmentation, balanced_product,
                                basis_element, compose, decompose, injective_homs,
                                pair_biset)
from fusionkit.cohomology import GModule, group_cohomology
from fusionkit.fusion import (enumerate_saturated_fusion_systems, fusion_abelian,
                              fusion_of_group, inner_fusion, is_saturated)
from fusionkit.groups import (Group, automorphism_group, center, direct_product, is_prime,
                              sylow)
from fusionkit.idempotent import (characteristic_idempotent, is_F_stable, is_idempotent,
                                  verify_classical_frobenius, verify_diag_commute,
                                  verify_frobenius_reciprocity)
from fusionkit.invariants import (full_bases, hilbert, invariant_dimensions, matrix_group,
                                  molien_series, theta_tilde, verify_coh_properties)
from fusionkit.linking import (linking_of_group, obstruction_vanishing, verify_axiom_A,
                               verify_axiom_B, verify_axiom_C)
from fusionkit.steenrod import Algebra
from conftest import ACCEPTANCE, sub


class Criterion:
    def __init__(self, n, title, limit):
        self.n, self.title, self.limit = n, title, limit
        self.failures = []

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        if exc_type is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if self.elapsed > self.limit:
            self.failures.append(f"runtime {self.elapsed:.2f}s over {self.limit}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.n:2d} {status}  {self.title}  [{self.elapsed:.2f}s / {self.limit}s]"
        if self.failures:
            line += "  " + "; ".join(map(str, self.failures[:4]))
        ACCEPTANCE[self.n] = line
        print(line)
        return False

    def verdict(self):
        assert not self.failures, self.failures


def primes_dividing(n):
    return [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]


def test_criterion_01_sylow_saturated():
    with Criterion(1, "Sylow fusion systems are saturated over the corpus", 60) as c:
        for G in catalog.corpus():
            assert G.order <= 100
            for p in primes_dividing(G.order):
                F = fusion_of_group(G, sylow(G, p), p)
                c.check(is_saturated(F).saturated, (G.name, p))
    c.verdict()


def test_criterion_02_non_saturation_witness():
    G = catalog.symmetric(4)
    V = sub(G, "(1 2)(3 4); (1 3)(2 4)")
    with Criterion(2, "normal V4 in Sym4 fails axiom I with 1 vs 6", 1) as c:
        F = fusion_of_group(G, V, 2)
        rep = is_saturated(F)
        c.check(not rep.saturated, "reported saturated")
        top = [why for i, why in rep.axiom_I_failures if i == F.top]
        c.check(len(top) == 1 and (top[0]["aut_S"], top[0]["aut_F"]) == (1, 6), rep.axiom_I_failures)
    c.verdict()


def test_criterion_03_abelian_classification():
    cases = [("Z/2", catalog.cyclic(2), 2, 1), ("Z/3", catalog.cyclic(3), 3, 2),
             ("Z/4", catalog.cyclic(4), 2, 2), ("(Z/2)^2", catalog.elementary_abelian(2, 2), 2, 4)]
    with Criterion(3, "abelian classification counts 1, 2, 2, 4", 300) as c:
        for name, S, p, stated in cases:
            systems = enumerate_saturated_fusion_systems(S, p)
            A = automorphism_group(S)
            expected = {fusion_abelian(W, S, p).key() for W in A.subgroups() if W.order % p}
            c.check({F.key() for F in systems} == expected, f"{name}: categories differ")
            c.check(len(systems) == stated, f"{name}: found {len(systems)}, expected {stated}")
    c.verdict()


def test_criterion_04_linking_axioms():
    s4, s3, a4 = catalog.symmetric(4), catalog.symmetric(3), catalog.alternating(4)
    cases = [(s4, sub(s4, "(1 2 3 4); (1 3)"), 2), (s3, sylow(s3, 3), 3), (a4, sylow(a4, 2), 2)]
    with Criterion(4, "linking axioms A, B, C for Sym4, Sym3, A4", 30) as c:
        for G, S, p in cases:
            L = linking_of_group(G, S, p)
            for name, r in (("A", verify_axiom_A(L)), ("B", verify_axiom_B(L)),
                            ("C", verify_axiom_C(L))):
                c.check(r.ok, (G.name, name, r.counterexample))
            for a in L.objects:
                z = center(L.F.subs[a]).order
                for b in L.objects:
                    c.check(len(L.mor(a, b)) == z * len(L.F.hom(a, b)), (G.name, a, b))
    c.verdict()


def small_abelian_p_groups():
    cyc = catalog.cyclic
    return [cyc(2), cyc(3), cyc(4), cyc(5), cyc(7), cyc(8), cyc(9),
            catalog.elementary_abelian(2, 2), catalog.elementary_abelian(2, 3),
            catalog.elementary_abelian(3, 2), direct_product(cyc(4), cyc(2))]


def coprime_subgroups(A, p, bound):
    """Subgroups of A of order <= bound prime to p; every group of order <= 6 is 2-generated."""
    cand = [x for x in A.elements if P.order(x) % p and P.order(x) <= bound]
    found = {}
    for a, b in itertools.combinations_with_replacement(cand, 2):
        try:
            W = Group(A.degree, [a, b], order_bound=bound)
            W.elements
        except ValueError:
            continue
        if W.order % p:
            found[W.elements] = W
    return list(found.values())


def test_criterion_05_obstruction_vanishing():
    with Criterion(5, "H^2(W; S) = 0 for coprime |W| <= 6, |S| <= 9, plus control", 10) as c:
        pairs = 0
        for S in small_abelian_p_groups():
            p = primes_dividing(S.order)[0]
            for W in coprime_subgroups(automorphism_group(S), p, 6):
                pairs += 1
                c.check(obstruction_vanishing(W, S, p), (S.order, W.order))
        c.check(pairs >= 20, f"only {pairs} pairs")
        Z2 = catalog.cyclic(2)
        control = GModule(Z2, [2], {g: [[1]] for g in Z2.gens})
        c.check(group_cohomology(control, 2) == [2], "control H^2(Z/2; Z/2) is not Z/2")
    c.verdict()


def test_criterion_06_burnside_oracle():
    s3 = catalog.symmetric(3)
    groups = [catalog.cyclic(2), catalog.cyclic(3), catalog.cyclic(4),
              catalog.elementary_abelian(2, 2), sylow(s3, 3)]
    with Criterion(6, "composition equals the balanced-product oracle", 120) as c:
        n = 0
        for S, T, U in itertools.product(groups, repeat=3):
            for a in all_pairs(S, T):
                Xa = pair_biset(S, T, a)
                for b in all_pairs(T, U):
                    got = compose(BurnsideElement(T, U, 2, {b: 1}, canonical=True),
                                  BurnsideElement(S, T, 2, {a: 1}, canonical=True))
                    oracle = decompose(balanced_product(pair_biset(T, U, b), Xa), 2)
                    n += 1
                    c.check(got == oracle and got.is_integral, (S.order, T.order, U.order, a, b))
        c.check(n > 1000, f"only {n} products")
    c.verdict()


def omega_cases():
    s3, a4 = catalog.symmetric(3), catalog.alternating(4)
    out = []
    for S, p in ((catalog.cyclic(2), 2), (catalog.cyclic(3), 3), (catalog.cyclic(4), 2),
                 (catalog.elementary_abelian(2, 2), 2), (catalog.dihedral(8), 2),
                 (catalog.quaternion(), 2)):
        out.append((f"inner {S.name}", inner_fusion(S, p)))
    out.append(("Sym3 at 3", fusion_of_group(s3, sylow(s3, 3), 3)))
    out.append(("A4 at 2", fusion_of_group(a4, sylow(a4, 2), 2)))
    return out


def closed_form(F):
    S = F.S
    W = F.aut(F.top)
    x = BurnsideElement(S, S, F.p, {}, canonical=True)
    for t in W:
        x = x + basis_element(S, S, F.p, S.elements, t, Fraction(1, len(W)))
    return x


def test_criterion_07_characteristic_idempotent():
    with Criterion(7, "omega idempotent, augmentation 1, F-stable, closed form", 60) as c:
        for name, F in omega_cases():
            w = characteristic_idempotent(F)
            c.check(w.is_exact, (name, "not exact"))
            c.check(all(Fraction(v).denominator % F.p for v in w.terms.values()), (name, "not local"))
            c.check(is_idempotent(w), (name, "not idempotent"))
            c.check(augmentation(w) == 1, (name, "augmentation"))
            c.check(is_F_stable(w, F, side="both").ok, (name, "not F-stable"))
            if F.S.is_abelian:
                c.check(w == closed_form(F), (name, "closed form"))
    c.verdict()


def small_p_groups():
    cyc = catalog.cyclic
    return [cyc(2), cyc(3), cyc(4), cyc(5), cyc(7), cyc(8), catalog.elementary_abelian(2, 2),
            catalog.elementary_abelian(2, 3), direct_product(cyc(4), cyc(2)),
            catalog.dihedral(8), catalog.quaternion()]


def test_criterion_08_frobenius():
    with Criterion(8, "Frobenius reciprocity: classical, diagonal, omega", 300) as c:
        groups = small_p_groups()
        for S in groups:
            p = primes_dividing(S.order)[0]
            for H in S.subgroups():
                c.check(verify_classical_frobenius(S, H, p), ("classical", S.name, H.order))
        homs = 0
        for Pg, S in itertools.product(groups, repeat=2):
            if S.order % Pg.order:
                continue
            p = primes_dividing(S.order)[0]
            for f in injective_homs(Pg, S):
                homs += 1
                c.check(verify_diag_commute(f, p), ("diagonal", Pg.name, S.name, f.table))
        for name, F in omega_cases():
            rep = verify_frobenius_reciprocity(characteristic_idempotent(F), F)
            c.check(rep.relation and rep.retractive, ("omega", name))
    c.verdict()


def test_criterion_09_cohomology_splitting():
    Ws = {"(2,2,Z/3)": matrix_group([((0, 1), (1, 1))], 2),
          "(3,1,Z/2)": matrix_group([((2,),)], 3),
          "(2,2,1)": matrix_group([], 2, 2)}
    with Criterion(9, "CohI-CohIV through degree 12 and invariant dimensions", 120) as c:
        for name, W in Ws.items():
            rep = verify_coh_properties(W, 12)
            for k in ("I", "II", "III", "IV"):
                c.check(rep.passed(k), (name, f"Coh{k}"))
        W = Ws["(2,2,Z/3)"]
        dims = invariant_dimensions(W, 6)
        c.check(dims == [1, 0, 1, 2, 1, 2, 3], dims)
        c.check(molien_series(W, 6) == dims, "Molien disagrees")
    c.verdict()


def test_criterion_10_theta_tilde():
    with Criterion(10, "theta-tilde of H*(B(Z/3)^n) is F_3[x_1..x_n], n <= 2", 30) as c:
        for n in (1, 2):
            A = Algebra(3, n)
            got = hilbert(theta_tilde(A, full_bases(A, 12)))
            # F_3[x_1..x_n] with |x| = 2: C(k + n - 1, n - 1) in degree 2k
            want = [comb(d // 2 + n - 1, n - 1) if d % 2 == 0 else 0 for d in range(13)]
            c.check(got == want, (n, got))
    c.verdict()
