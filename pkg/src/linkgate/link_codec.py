"""Link diagrams: PD codes, braid closures, linking numbers, built-in corpus.

PD convention: ``X[a,b,c,d]`` lists the four edge labels counterclockwise,
starting at the incoming under-strand, so the under-strand runs ``a -> c``.
The crossing is positive when the over-strand runs ``d -> b`` and negative
when it runs ``b -> d``.  A component that never passes under is oriented in
the direction of increasing labels from its smallest label.

``O[c]`` is a crossingless unknotted component; ``UNKNOT n`` is shorthand for
``n`` of them.  Braids are written ``BR <strands>: <±i> <±i> ...`` where
``+i`` is the positive generator on strands ``i, i+1``.
"""

import re
from dataclasses import dataclass

from .errors import ParseError
from .exact_linalg import int_matrix


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def labels(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class LinkDiagram:
    """A validated, oriented, ordered link diagram.

    ``components`` holds, for each component, its edge labels in traversal
    order starting from its smallest label.  Crossingless components appear
    as single-label components whose label is listed in ``loops``.
    """

    crossings: tuple
    loops: tuple
    components: tuple

    @property
    def num_components(self):
        return len(self.components)

    def component_of(self):
        return {e: k for k, comp in enumerate(self.components) for e in comp}

    def __str__(self):
        return print_pd(self)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"braid letter {x} invalid on {self.strands} strands")


_X_TOKEN = re.compile(r"X\[\s*([^\]]*)\]")
_O_TOKEN = re.compile(r"O\[\s*([^\]]*)\]")
_UNKNOT = re.compile(r"UNKNOT\s+(\d+)")
_SEP = re.compile(r"[\s,;]+")


def _labels(body, start, expected):
    parts = [p.strip() for p in body.split(",")] if body.strip() else []
    if len(parts) != expected:
        what = "crossing needs 4 arcs" if expected == 4 else "O[] needs 1 label"
        raise ParseError(f"{what}, got {len(parts)}", start)
    out = []
    for p in parts:
        if not p.isdigit() or int(p) < 1:
            raise ParseError(f"arc label {p!r} is not a positive integer", start)
        out.append(int(p))
    return out


def parse_pd(text):
    """Parse and validate PD text into a :class:`LinkDiagram`."""
    pos = 0
    raw_x, raw_o = [], []
    n = len(text)
    while pos < n:
        m = _SEP.match(text, pos)
        if m:
            pos = m.end()
            if pos >= n:
                break
        for pattern, sink, k in ((_X_TOKEN, raw_x, 4), (_O_TOKEN, raw_o, 1)):
            m = pattern.match(text, pos)
            if m:
                sink.append((_labels(m.group(1), pos, k), pos))
                pos = m.end()
                break
        else:
            m = _UNKNOT.match(text, pos)
            if m:
                count = int(m.group(1))
                if count < 1:
                    raise ParseError("UNKNOT needs a positive count", pos)
                raw_o.extend(([None], pos) for _ in range(count))
                pos = m.end()
                continue
            raise ParseError(f"malformed token {text[pos:pos + 12]!r}", pos)
    if not raw_x and not raw_o:
        raise ParseError("empty PD", 0)
    return _build(raw_x, raw_o)


def _build(raw_x, raw_o):
    occurrences = {}
    for ci, (labels, pos) in enumerate(raw_x):
        for slot, e in enumerate(labels):
            occurrences.setdefault(e, []).append((ci, slot, pos))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise ParseError(f"arc {e} appears {len(occ)} times, expected 2", occ[-1][2])
    used = set(occurrences)
    loops = []
    next_free = max(used, default=0) + 1
    for (label,), pos in raw_o:
        if label is None:
            while next_free in used:
                next_free += 1
            label = next_free
        if label in used:
            raise ParseError(f"O[{label}] reuses an arc label", pos)
        used.add(label)
        loops.append(label)

    xs = [labels for labels, _ in raw_x]
    positions = [pos for _, pos in raw_x]
    visited = set()
    traced = []
    for start in sorted(occurrences):
        if start in visited:
            continue
        traced.append(_trace(start, xs, occurrences, positions))
        visited.update(traced[-1][0])

    signs = [0] * len(xs)
    components = []
    for edges, entries in traced:
        # entries: (crossing, slot entered) for each edge, at its head end
        under = {slot for ci, slot in entries if slot in (0, 2)}
        if under == {0, 2}:
            ci = next(ci for ci, slot in entries if slot == 2)
            raise ParseError("inconsistent orientation along a component", positions[ci])
        if under == {2} or (not under and _prefers_reverse(edges)):
            edges, entries = _reverse(edges, entries, xs)
        for ci, slot in entries:
            if slot == 3:
                signs[ci] = 1
            elif slot == 1:
                signs[ci] = -1
        components.append(_rotate_to_min(edges))
    crossings = tuple(Crossing(*labels, sign=s) for labels, s in zip(xs, signs))
    for lab in loops:
        components.append((lab,))
    components.sort(key=min)
    return LinkDiagram(crossings, tuple(loops), tuple(components))


def _trace(start, xs, occurrences, positions):
    """Walk the strand through ``start``; returns edges and head-end entries."""
    edges, entries = [], []
    e = start
    # travel along e towards its second occurrence
    ci, slot, _ = occurrences[e][1]
    while True:
        edges.append(e)
        entries.append((ci, slot))
        out_slot = (slot + 2) % 4
        nxt = xs[ci][out_slot]
        a, b = occurrences[nxt]
        ci, slot, _ = b if (a[0], a[1]) == (ci, out_slot) else a
        e = nxt
        if e == start:
            if (ci, slot) != (occurrences[start][1][0], occurrences[start][1][1]):
                raise ParseError("strand returns to its start inconsistently", positions[ci])
            break
        if len(edges) > 2 * len(occurrences):
            raise ParseError("arc structure does not close up", positions[ci])
    return edges, entries


def _reverse(edges, entries, xs):
    # reversed traversal: edge k is now entered at the tail-end slot of edge k
    n = len(edges)
    new_edges = edges[::-1]
    new_entries = []
    for k in range(n):
        # in forward order edge j's tail is the exit slot of entry j-1
        j = n - 1 - k
        ci, slot = entries[j - 1]
        new_entries.append((ci, (slot + 2) % 4))
    return new_edges, new_entries


def _prefers_reverse(edges):
    lo = edges.index(min(edges))
    n = len(edges)
    if n < 3:
        return False
    fwd, back = edges[(lo + 1) % n], edges[(lo - 1) % n]
    if fwd == edges[lo] + 1:
        return False
    if back == edges[lo] + 1:
        return True
    return back < fwd


def _rotate_to_min(edges):
    k = edges.index(min(edges))
    return tuple(edges[k:] + edges[:k])


def print_pd(D):
    parts = [f"X[{c.a},{c.b},{c.c},{c.d}]" for c in D.crossings]
    parts += [f"O[{lab}]" for lab in D.loops]
    return " ".join(parts)


def parse_braid(text):
    m = re.fullmatch(r"\s*BR\s+(\d+)\s*:\s*([-+\d\s,]*)", text)
    if not m:
        raise ParseError("braid must look like 'BR <strands>: <±i> ...'", 0)
    strands = int(m.group(1))
    letters = []
    for tok in re.finditer(r"[-+]?\d+", m.group(2)):
        x = int(tok.group())
        if x == 0 or abs(x) >= strands:
            raise ParseError(f"braid letter {x} invalid on {strands} strands", m.start(2) + tok.start())
        letters.append(x)
    if strands < 1:
        raise ParseError("a braid needs at least one strand", 0)
    return BraidWord(strands, tuple(letters))


def from_braid(b):
    """Diagram of the closure of a braid word."""
    if isinstance(b, str):
        b = parse_braid(b)
    label = 0

    def fresh():
        nonlocal label
        label += 1
        return label

    initial = [fresh() for _ in range(b.strands)]
    current = list(initial)
    raw = []
    for x in b.letters:
        i = abs(x) - 1
        left_in, right_in = current[i], current[i + 1]
        left_out, right_out = fresh(), fresh()
        # left strand moves right; right strand moves left
        if x > 0:
            # left strand over: X[under_in, over_out, under_out, over_in]
            raw.append([right_in, left_out, right_out, left_in])
        else:
            # right strand over: X[under_in, over_in, under_out, over_out]
            raw.append([left_in, right_in, left_out, right_out])
        current[i], current[i + 1] = right_out, left_out
    # closure: final label at each position is the initial label there
    rename = {}
    loops = []
    for pos in range(b.strands):
        if current[pos] == initial[pos] and initial[pos] not in {e for r in raw for e in r}:
            loops.append(pos)
        else:
            rename[current[pos]] = initial[pos]
    # chains of renames cannot occur: each final label is produced by one crossing
    raw = [[rename.get(e, e) for e in r] for r in raw]
    used = sorted({e for r in raw for e in r})
    compact = {e: k + 1 for k, e in enumerate(used)}
    raw_x = [([compact[e] for e in r], 0) for r in raw]
    raw_o = [([len(used) + k + 1], 0) for k in range(len(loops))]
    return _build(raw_x, raw_o)


def linking_matrix(D):
    """Symmetric integer matrix of pairwise linking numbers (zero diagonal)."""
    comp = D.component_of()
    mu = D.num_components
    twice = [[0] * mu for _ in range(mu)]
    for c in D.crossings:
        i, j = comp[c.a], comp[c.b]
        if i != j:
            twice[i][j] += c.sign
            twice[j][i] += c.sign
    for i in range(mu):
        for j in range(mu):
            if twice[i][j] % 2:
                raise ValueError("odd crossing count between components")
            twice[i][j] //= 2
    return int_matrix(twice, mu)


def writhe(D, i):
    """Sum of signs of crossings with both strands on component ``i``."""
    comp = D.component_of()
    return sum(c.sign for c in D.crossings if comp[c.a] == i and comp[c.b] == i)


def mirror(D):
    """Mirror image: every crossing changes sign, orientations kept."""
    raw = []
    for c in D.crossings:
        # the old over-strand becomes the under-strand; rotate so it starts the list
        if c.sign > 0:
            raw.append([c.d, c.a, c.b, c.c])
        else:
            raw.append([c.b, c.c, c.d, c.a])
    return _build([(r, 0) for r in raw], [([lab], 0) for lab in D.loops])


BUILTINS = {
    "hopf": "X[1,3,2,4] X[3,1,4,2]",
    # Hopf link with a Reidemeister II pair inserted between its components
    "hopf_r2": "BR 2: 1 1 1 -1",
    "unlink1": "UNKNOT 1",
    "unlink2": "UNKNOT 2",
    "unlink3": "UNKNOT 3",
    "trefoil": "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
    "trefoil_braid": "BR 2: 1 1 1",
    "hopf_braid": "BR 2: 1 1",
    "negative_hopf": "BR 2: -1 -1",
    "solomon": "BR 2: 1 1 1 1",
    "figure8": "BR 3: 1 -2 1 -2",
    "whitehead": "BR 3: 1 1 -2 1 -2",
    # Hopf link with a trefoil tied into its first component
    "hopf_trefoil": "BR 3: 1 1 1 2 2",
}


def builtin(name):
    """Built-in corpus entry by name; ``unlinkN`` works for any N >= 1."""
    m = re.fullmatch(r"unlink\s*(\d+)", name)
    if m:
        return parse_pd(f"UNKNOT {int(m.group(1))}")
    if name not in BUILTINS:
        raise KeyError(f"unknown built-in link {name!r}; choose from {sorted(BUILTINS)}")
    return parse_link(BUILTINS[name])


def parse_link(text):
    """Dispatch on syntax: braid text starts with ``BR``, anything else is PD."""
    if text.lstrip().startswith("BR"):
        return from_braid(parse_braid(text))
    return parse_pd(text)
