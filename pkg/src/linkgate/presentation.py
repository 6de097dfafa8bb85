"""Group presentations: Wirtinger presentations, peripheral words, M_L.

Words are tuples of ``(generator, ±1)`` letters.  A presentation keeps its
generator names in order; relators are freely reduced words.

Wirtinger convention: at a crossing of sign ``e`` with over-arc ``w``,
incoming under-arc ``x`` and outgoing under-arc ``y`` the relation is
``y = w^-e x w^e``.  With that convention the longitude of a component is
the product of ``w^e`` over the crossings it passes under, in order,
corrected by the meridian to framing zero.
"""

from dataclasses import dataclass

from .errors import PreconditionError
from .exact_linalg import int_matrix, smith_normal_form
from .link_codec import linking_matrix, writhe


def free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def power(gen, k):
    return tuple((gen, 1 if k > 0 else -1) for _ in range(abs(k)))


def format_word(word):
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


def parse_word(text):
    word = []
    for tok in text.split():
        if tok == "1":
            continue
        if tok.endswith("^-1"):
            word.append((tok[:-3], -1))
        else:
            word.append((tok, 1))
    return free_reduce(word)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            for g, e in r:
                if g not in gens:
                    raise ValueError(f"relator uses undeclared generator {g!r}")
                if e not in (1, -1):
                    raise ValueError("letters must have exponent ±1")

    def __str__(self):
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"⟨{', '.join(self.generators)} | {rels}⟩"


def presentation(generators, relators):
    """Build a presentation, freely reducing relators (and dropping empty ones)."""
    rels = tuple(r for r in (free_reduce(r) for r in relators) if r)
    return GroupPresentation(tuple(generators), rels)


@dataclass(frozen=True)
class PeripheralData:
    """Per component: the meridian word and the 0-framed longitude word."""

    meridians: tuple
    longitudes: tuple


def _arcs(D):
    """Assign Wirtinger arcs to edges.

    Returns ``(arc_of_edge, arcs_per_component)``; arcs are numbered globally,
    component by component, each component starting at the arc holding its
    first (smallest) edge.
    """
    under_in = {c.a: c for c in D.crossings}
    arc_of = {}
    counts = []
    next_arc = 0
    for comp in D.components:
        # a new arc starts after each edge that ends by passing under
        starts = [k for k in range(len(comp)) if comp[k - 1] in under_in]
        if not starts:
            for e in comp:
                arc_of[e] = next_arc
            counts.append(1)
            next_arc += 1
            continue
        n = len(comp)
        first = max(s for s in starts if s <= 0) if 0 in starts else max(starts) - n
        boundaries = sorted(starts)
        # walk from the start of the arc containing comp[0]
        order = [(first + k) % n for k in range(n)]
        local = -1
        for k in order:
            if k in boundaries:
                local += 1
            arc_of[comp[k]] = next_arc + local
        counts.append(local + 1)
        next_arc += local + 1
    return arc_of, counts


def wirtinger(D):
    """Wirtinger presentation with peripheral data and the meridian map.

    Generators are ``x1, x2, ...`` (one per arc); there is one relator per
    crossing.  The meridian map sends each generator to the standard basis
    vector of its component.
    """
    arc_of, counts = _arcs(D)
    names = [f"x{k + 1}" for k in range(sum(counts))]
    comp_of_edge = D.component_of()
    mu = D.num_components
    meridian_map = {}
    for e, a in arc_of.items():
        vec = [0] * mu
        vec[comp_of_edge[e]] = 1
        meridian_map[names[a]] = tuple(vec)

    relators = []
    for c in D.crossings:
        w = names[arc_of[c.b]]
        x = names[arc_of[c.a]]
        y = names[arc_of[c.c]]
        e = c.sign
        # y^-1 w^-e x w^e
        relators.append(((y, -1), (w, -e), (x, 1), (w, e)))
    # keep deficiency-one redundancy, but drop only letters that cancel freely
    rels = tuple(free_reduce(r) for r in relators)
    P = GroupPresentation(tuple(names), rels)

    meridians = []
    longitudes = []
    for i, comp in enumerate(D.components):
        meridians.append(((names[arc_of[comp[0]]], 1),))
        longitudes.append(_longitude(D, i, arc_of, names))
    return P, PeripheralData(tuple(meridians), tuple(longitudes)), meridian_map


def _longitude(D, i, arc_of, names):
    under_in = {c.a: c for c in D.crossings}
    comp = D.components[i]
    mer = names[arc_of[comp[0]]]
    word = []
    for e in comp:
        c = under_in.get(e)
        if c is not None:
            word.append((names[arc_of[c.b]], c.sign))
    word.extend(power(mer, -writhe(D, i)))
    return free_reduce(word)


def longitude(D, i):
    """0-framed longitude word of component ``i`` in the Wirtinger generators."""
    arc_of, counts = _arcs(D)
    names = [f"x{k + 1}" for k in range(sum(counts))]
    return _longitude(D, i, arc_of, names)


def exponent_sums(word, generators):
    idx = {g: k for k, g in enumerate(generators)}
    v = [0] * len(generators)
    for g, e in word:
        v[idx[g]] += e
    return v


def abelianize_word(word, meridian_map, nvars):
    v = [0] * nvars
    for g, e in word:
        for k, x in enumerate(meridian_map[g]):
            v[k] += e * x
    return tuple(v)


def relation_matrix(P):
    return int_matrix([exponent_sums(r, P.generators) for r in P.relators], len(P.generators))


def abelianize(P):
    """First homology of a presentation.

    Returns ``(factors, images)``: ``factors`` lists the invariant factors
    (torsion orders ``> 1`` first, then ``0`` for each free summand) and
    ``images`` maps each generator to its coordinate vector in that
    decomposition.
    """
    n = len(P.generators)
    R = relation_matrix(P)
    D, _, V = smith_normal_form(R)
    diag = [int(D[i, i]) if i < min(D.shape) else 0 for i in range(n)]
    keep = [i for i in range(n) if diag[i] != 1]
    # torsion first (ascending, already divisibility-ordered), then free
    keep.sort(key=lambda i: (diag[i] == 0, i))
    factors = tuple(diag[i] for i in keep)
    images = {}
    for j, g in enumerate(P.generators):
        vec = []
        for i in keep:
            x = int(V[j, i])
            vec.append(x % diag[i] if diag[i] else x)
        images[g] = tuple(vec)
    return factors, images


def _substitute(word, gen, replacement):
    out = []
    for g, e in word:
        if g == gen:
            out.extend(replacement if e == 1 else inverse(replacement))
        else:
            out.append((g, e))
    return free_reduce(out)


def eliminate(P, gen, relator_index=None):
    """Tietze-eliminate ``gen`` using a relator in which it occurs exactly once."""
    candidates = range(len(P.relators)) if relator_index is None else [relator_index]
    for k in candidates:
        r = P.relators[k]
        hits = [pos for pos, (g, _) in enumerate(r) if g == gen]
        if len(hits) != 1:
            continue
        pos = hits[0]
        e = r[pos][1]
        # r = u g^e v = 1  =>  g^e = u^-1 v^-1  (cyclically: g = (v u)^-e)
        rest = r[pos + 1:] + r[:pos]
        replacement = inverse(rest) if e == 1 else rest
        gens = tuple(g for g in P.generators if g != gen)
        rels = [_substitute(s, gen, replacement) for j, s in enumerate(P.relators) if j != k]
        return presentation(gens, rels), replacement
    raise ValueError(f"no relator contains {gen!r} exactly once")


def simplify(P, keep=()):
    """Eliminate generators occurring once in some relator, preferring short relators."""
    changed = True
    while changed:
        changed = False
        for k in sorted(range(len(P.relators)), key=lambda k: len(P.relators[k])):
            r = P.relators[k]
            counts = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            single = [g for g in P.generators if counts.get(g) == 1 and g not in keep]
            if single:
                P, _ = eliminate(P, single[-1], k)
                changed = True
                break
    return P


def glue_ML(P, per, meridian_map=None):
    """Presentation of π1(M_L) for a 2-component link with linking number 1.

    M_L is X_L glued to the Hopf link exterior (π1 = ⟨a, b | [a, b]⟩) along
    both boundary tori, meridian to meridian and longitude to longitude.
    Gluing along the second torus adds a stable letter ``s``:
    ``mu1 = a, lam1 = b, s mu2 s^-1 = b, s lam2 s^-1 = a``.  ``a`` and ``b``
    are then eliminated.
    """
    if len(per.meridians) != 2:
        raise PreconditionError(f"M_L needs a 2-component link, got {len(per.meridians)}")
    if meridian_map is not None:
        lk = abelianize_word(per.longitudes[0], meridian_map, 2)[1]
        if lk != 1:
            raise PreconditionError(f"M_L needs linking number 1, got {lk}")
    for name in ("a", "b", "s"):
        if name in P.generators:
            raise ValueError(f"generator name {name!r} is reserved for the gluing")
    m1, m2 = per.meridians
    l1, l2 = per.longitudes
    a, b, s = ("a", 1), ("b", 1), ("s", 1)
    rels = list(P.relators)
    rels.append((a, b, ("a", -1), ("b", -1)))
    rels.append(m1 + (("a", -1),))
    rels.append(l1 + (("b", -1),))
    rels.append((s,) + m2 + (("s", -1), ("b", -1)))
    rels.append((s,) + l2 + (("s", -1), ("a", -1)))
    Q = presentation(P.generators + ("a", "b", "s"), rels)
    n = len(P.relators)
    Q, _ = eliminate(Q, "a", n + 1)
    Q, _ = eliminate(Q, "b", n + 1)
    return Q


def link_ML(D):
    """π1(M_L) straight from a diagram; checks the component count and linking number."""
    if D.num_components != 2:
        raise PreconditionError(f"M_L needs a 2-component link, got {D.num_components}")
    lk = int(linking_matrix(D)[0, 1])
    if lk != 1:
        raise PreconditionError(f"M_L needs linking number 1, got {lk}")
    P, per, mmap = wirtinger(D)
    return glue_ML(P, per, mmap), per
