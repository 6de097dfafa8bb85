"""Independent oracles for derived test values.

Everything here avoids linkgate's own arithmetic: polynomials are sympy
expressions, determinants come from sympy, subgroups are found by brute
force.  Run ``python3 tests/oracles.py`` to regenerate
``tests/fixtures/oracle_values.json``; the test-suite compares linkgate
against the frozen file.
"""

import json
import sys
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

import sympy

FIXTURE = Path(__file__).parent / "fixtures" / "oracle_values.json"

T = sympy.symbols("t1:4")


# -- Fox calculus on hand-written presentations -------------------------------


def _parse(word):
    out = []
    for tok in word.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return out


def fox(word, gen, ab):
    total = sympy.Integer(0)
    prefix = sympy.Integer(1)
    for g, e in _parse(word):
        if e == 1:
            if g == gen:
                total += prefix
            prefix *= ab[g]
        else:
            prefix /= ab[g]
            if g == gen:
                total -= prefix
    return sympy.expand(total)


def _normalize(expr, syms):
    """Primitive-positive polynomial with all exponents shifted to start at 0."""
    expr = sympy.together(sympy.expand(expr))
    num, _ = sympy.fraction(expr)
    if num == 0:
        return sympy.Integer(0)
    poly = sympy.Poly(num, *syms)
    mins = [min(m[i] for m in poly.monoms()) for i in range(len(syms))]
    shift = sympy.Mul(*[s ** k for s, k in zip(syms, mins)])
    poly = sympy.Poly(sympy.expand(num / shift), *syms)
    lead = poly.coeffs(order="grlex")[0]
    if lead < 0:
        poly = -poly
    return poly.as_expr()


def torsion_poly(relators, generators, ab, syms):
    J = sympy.Matrix([[fox(r, g, ab) for g in generators] for r in relators])
    r = J.rank(simplify=True)
    if r == 0:
        return sympy.Integer(1), len(generators) - 1
    g = sympy.Integer(0)
    for rows in combinations(range(J.rows), r):
        for cols in combinations(range(J.cols), r):
            d = sympy.together(J.extract(list(rows), list(cols)).det())
            num, den = sympy.fraction(d)
            g = sympy.gcd(g, num)
    return _normalize(g, syms), len(generators) - 1 - r


def hand_presentations():
    t, t1, t2 = T[0], T[0], T[1]
    return {
        # ⟨x, y | xyx = yxy⟩
        "trefoil": (["x y x y^-1 x^-1 y^-1"], ["x", "y"], {"x": t, "y": t}, (t,)),
        # ⟨x, y | y x y^-1 x y = x y x^-1 y x⟩ (figure-eight)
        "figure8": (["y x y^-1 x y x^-1 y^-1 x y^-1 x^-1"], ["x", "y"], {"x": t, "y": t}, (t,)),
        "hopf": (["x y x^-1 y^-1"], ["x", "y"], {"x": t1, "y": t2}, (t1, t2)),
        # T(2,4): ⟨x, y | (xy)^2 = (yx)^2⟩
        "solomon": (["x y x y x^-1 y^-1 x^-1 y^-1"], ["x", "y"], {"x": t1, "y": t2}, (t1, t2)),
        # free group on two meridians
        "unlink2": ([], ["x", "y"], {"x": t1, "y": t2}, (t1, t2)),
    }


def seifert_trefoil():
    """Alexander polynomial of the trefoil from a Seifert matrix."""
    t = T[0]
    V = sympy.Matrix([[-1, 1], [0, -1]])
    return _normalize((V - t * V.T).det(), (t,))


# -- integer matrices ------------------------------------------------------------


def invariant_factors_by_minors(A):
    """d_k = g_k / g_(k-1), g_k = gcd of k x k minors."""
    M = sympy.Matrix(A)
    out = []
    prev = 1
    for k in range(1, min(M.shape) + 1):
        g = 0
        for rows in combinations(range(M.rows), k):
            for cols in combinations(range(M.cols), k):
                g = sympy.igcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            out.extend([0] * (min(M.shape) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


# -- finite linking forms ----------------------------------------------------------


def all_subgroups(moduli):
    """Every subgroup of ⊕ Z/d_i, by closing the subgroup lattice under adding one element."""
    moduli = tuple(moduli)
    elems = list(product(*(range(d) for d in moduli)))
    zero = tuple(0 for _ in moduli)

    def extend(S, g):
        # S is a subgroup, so S + <g> is the subgroup generated by S and g
        multiples = [zero]
        x = g
        while x != zero:
            multiples.append(x)
            x = tuple((a + b) % d for a, b, d in zip(x, g, moduli))
        return frozenset(
            tuple((a + b) % d for a, b, d in zip(s, m, moduli)) for s in S for m in multiples
        )

    seen = {frozenset([zero])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            covered = set(S)
            for g in elems:
                if g in covered:
                    continue
                # one representative per coset g + S
                covered.update(tuple((a + b) % d for a, b, d in zip(g, s, moduli)) for s in S)
                T = extend(S, g)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def brute_metabolizers(moduli, gram):
    """All P with P = P^⊥, scanning every subgroup."""
    moduli = tuple(moduli)
    elems = list(product(*(range(d) for d in moduli)))

    def pair(u, v):
        s = sum(Fraction(a * b) * Fraction(gram[i][j]) for i, a in enumerate(u) for j, b in enumerate(v))
        return s - (s.numerator // s.denominator)

    found = []
    for S in all_subgroups(moduli):
        perp = frozenset(x for x in elems if all(pair(p, x) == 0 for p in S))
        if perp == S:
            found.append(sorted(S))
    return sorted(found)


# -- freezing ------------------------------------------------------------------------


def compute_all():
    values = {"torsion": {}}
    for name, (rels, gens, ab, syms) in hand_presentations().items():
        poly, rank = torsion_poly(rels, gens, ab, syms)
        values["torsion"][name] = {"poly": str(sympy.expand(poly)), "rank": rank,
                                   "nvars": len(syms)}
    values["seifert_trefoil"] = str(seifert_trefoil())
    values["fox_commutator_x"] = str(fox("x y x^-1 y^-1", "x", {"x": T[0], "y": T[1]}))
    values["snf"] = {
        "diag23": invariant_factors_by_minors([[2, 0], [0, 3]]),
        "mixed": invariant_factors_by_minors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]),
    }
    values["metabolizers"] = {
        "z9": brute_metabolizers((9,), [[Fraction(1, 9)]]),
        "hyperbolic2": brute_metabolizers((2, 2), [[0, Fraction(1, 2)], [Fraction(1, 2), 0]]),
        "z3": brute_metabolizers((3,), [[Fraction(1, 3)]]),
    }
    return values


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def load():
    return json.loads(FIXTURE.read_text())


if __name__ == "__main__":
    FIXTURE.parent.mkdir(exist_ok=True)
    FIXTURE.write_text(json.dumps(_jsonable(compute_all()), indent=2, sort_keys=True) + "\n")
    print(f"wrote {FIXTURE}", file=sys.stderr)
