"""Finite abelian covers: admissible homomorphisms and Reidemeister–Schreier.

Covers here are regular with deck group a finite abelian group ``A`` given by
moduli ``(m1, m2, ...)``; a homomorphism is a map from generator names to
tuples reduced mod those moduli.  Since ``A`` is abelian, the coset of a word
is simply its image, so the coset table never needs enumeration.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import PreconditionError
from .exact_linalg import int_matrix, smith_normal_form, unimodular_inverse
from .presentation import GroupPresentation, abelianize, free_reduce, simplify


def _reduce(v, moduli):
    return tuple(x % m for x, m in zip(v, moduli))


def _add(u, v, moduli):
    return tuple((x + y) % m for x, y, m in zip(u, v, moduli))


def _neg(u, moduli):
    return tuple((-x) % m for x, m in zip(u, moduli))


def word_image(word, hom, moduli):
    acc = (0,) * len(moduli)
    for g, e in word:
        acc = _add(acc, hom[g] if e == 1 else _neg(hom[g], moduli), moduli)
    return acc


@dataclass(frozen=True)
class CoveringData:
    """A surjection from ``base`` onto the abelian group with the given moduli."""

    base: GroupPresentation
    moduli: tuple
    hom: dict

    def __post_init__(self):
        for g in self.base.generators:
            if g not in self.hom:
                raise ValueError(f"homomorphism misses generator {g!r}")
        zero = (0,) * len(self.moduli)
        for r in self.base.relators:
            if word_image(r, self.hom, self.moduli) != zero:
                raise PreconditionError("homomorphism does not kill every relator")
        if len(_cosets(self)[0]) != self.index:
            raise PreconditionError("homomorphism is not surjective")

    @property
    def index(self):
        t = 1
        for m in self.moduli:
            t *= m
        return t


def covering(base, moduli, hom):
    moduli = tuple(int(m) for m in moduli)
    hom = {g: _reduce(v, moduli) for g, v in hom.items()}
    return CoveringData(base, moduli, hom)


def _cosets(c):
    """Breadth-first transversal: ``(order, tree)`` where ``tree`` holds Schreier tree edges."""
    zero = (0,) * len(c.moduli)
    order = [zero]
    seen = {zero}
    tree = set()
    queue = deque([zero])
    while queue:
        k = queue.popleft()
        for g in c.base.generators:
            fwd = _add(k, c.hom[g], c.moduli)
            if fwd not in seen:
                seen.add(fwd)
                order.append(fwd)
                queue.append(fwd)
                tree.add((k, g))
            back = _add(k, _neg(c.hom[g], c.moduli), c.moduli)
            if back not in seen:
                seen.add(back)
                order.append(back)
                queue.append(back)
                tree.add((back, g))
    return order, tree


def reidemeister_schreier(c, prune=False):
    """Presentation of ``ker(base -> A)``.

    Generators are the Schreier generators ``x_k`` (generator ``x`` read at
    coset number ``k``) minus the spanning-tree edges, so a free base of rank
    ``n`` gives ``t(n - 1) + 1`` generators.  Every relator is rewritten at
    every coset, giving ``t·m`` relators.  ``prune=True`` additionally runs
    Tietze elimination.
    """
    order, tree = _cosets(c)
    number = {k: i for i, k in enumerate(order)}

    def name(k, g):
        return f"{g}_{number[k]}"

    gens = [name(k, g) for k in order for g in c.base.generators if (k, g) not in tree]
    relators = []
    for k0 in order:
        for r in c.base.relators:
            k = k0
            out = []
            for g, e in r:
                if e == 1:
                    if (k, g) not in tree:
                        out.append((name(k, g), 1))
                    k = _add(k, c.hom[g], c.moduli)
                else:
                    k = _add(k, _neg(c.hom[g], c.moduli), c.moduli)
                    if (k, g) not in tree:
                        out.append((name(k, g), -1))
            relators.append(free_reduce(out))
    P = GroupPresentation(tuple(gens), tuple(relators))
    if prune:
        P = simplify(GroupPresentation(P.generators, tuple(r for r in P.relators if r)))
    return P


def cover_h1(c):
    """Invariant factors of H1 of the cover (0 marks a free summand)."""
    return abelianize(reidemeister_schreier(c, prune=True))[0]


def format_abelian(factors):
    torsion = [f"Z/{d}" for d in factors if d]
    free = sum(1 for d in factors if d == 0)
    parts = torsion + ([f"Z^{free}"] if free > 1 else ["Z"] if free == 1 else [])
    return " + ".join(parts) if parts else "0"


def _complete_basis(m1, m2):
    """Rows ``m1, m2, v3`` forming a unimodular 3x3 matrix, or ``None``."""
    M = int_matrix([m1, m2])
    D, _, V = smith_normal_form(M)
    if int(D[0, 0]) != 1 or int(D[1, 1]) != 1:
        return None
    Vinv = unimodular_inverse(V)
    return int_matrix([m1, m2, list(Vinv[2])])


def admissible_homs(P, meridians, p, i, j):
    """All φ: H1 -> Z/p^i + Z/p^j sending the two meridians to (1,0) and (0,1).

    ``P`` must abelianize to ℤ³ and the meridian images must extend to a
    basis; the third basis vector is free, so there are ``p^(i+j)`` maps.
    """
    if p < 2 or i < 0 or j < 0:
        raise PreconditionError("need a prime p >= 2 and exponents i, j >= 0")
    factors, images = abelianize(P)
    if tuple(factors) != (0, 0, 0):
        raise PreconditionError(f"abelianization is {format_abelian(factors)}, not Z^3")
    m1 = images[meridians[0]]
    m2 = images[meridians[1]]
    B = _complete_basis(m1, m2)
    if B is None:
        raise PreconditionError("meridian images do not extend to a basis of Z^3")
    Binv = unimodular_inverse(B)
    moduli = (p ** i, p ** j)
    out = []
    for w in product(range(moduli[0]), range(moduli[1])):
        vals = np.array([[1, 0], [0, 1], list(w)], dtype=object)
        hom = {}
        for g in P.generators:
            coords = np.array([images[g]], dtype=object) @ Binv
            hom[g] = _reduce(tuple(int(x) for x in (coords @ vals)[0]), moduli)
        out.append(CoveringData(P, moduli, hom))
    return out


def link_covers(D, p, i, j):
    """Admissible covers of M_L for a 2-component diagram with linking number 1."""
    from .presentation import link_ML

    Q, per = link_ML(D)
    meridians = (per.meridians[0][0][0], per.meridians[1][0][0])
    return admissible_homs(Q, meridians, p, i, j)
