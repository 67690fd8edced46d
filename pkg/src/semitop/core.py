"""Finite semitopologies: construction, interior/closure, regular opens,
products, subspaces, continuity and the catalog of named spaces.

A semitopology stores its points in canonical order and its opens as
bitmasks (bit i = i-th point).  The module-level functions take and return
point sets as frozensets of labels; the ``*_mask`` methods work on ints.
"""

import json

from ._backend import kernels as K

MAX_POINTS = 24


class SemitopologyError(ValueError):
    """Raised for invalid spaces and arguments (a domain error)."""


def _label(x):
    return str(x)


def _label_key(label):
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


def canonical_points(points):
    labels = [_label(p) for p in points]
    if len(set(labels)) != len(labels):
        raise SemitopologyError("duplicate point labels")
    return sorted(labels, key=_label_key)


def popcount(x):
    return K.popcount(x)


def bits(x):
    """Indices of the set bits of x, ascending."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


class Semitopology:
    """An immutable finite semitopology; build it with from_generators."""

    __slots__ = ("points", "opens", "index", "full", "_opens_set", "_cache")

    def __init__(self, points, opens):
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.full = (1 << len(self.points)) - 1
        self.opens = tuple(opens)
        self._opens_set = frozenset(self.opens)
        self._cache = {}

    # conversion between labels and masks
    @property
    def n(self):
        return len(self.points)

    def mask(self, labels):
        if isinstance(labels, int) and not isinstance(labels, bool):
            raise TypeError("use a collection of labels, not an int")
        m = 0
        for p in labels:
            p = _label(p)
            if p not in self.index:
                raise SemitopologyError(f"point {p!r} is not in the universe")
            m |= 1 << self.index[p]
        return m

    def point_bit(self, p):
        p = _label(p)
        if p not in self.index:
            raise SemitopologyError(f"point {p!r} is not in the universe")
        return self.index[p]

    def labels(self, m):
        return frozenset(self.points[i] for i in bits(m))

    def sorted_labels(self, m):
        return [self.points[i] for i in bits(m)]

    # mask-level operations
    def is_open_mask(self, m):
        return m in self._opens_set

    def is_closed_mask(self, m):
        return (self.full & ~m) in self._opens_set

    def interior_mask(self, x):
        return K.interior(self.opens, x)

    def closure_mask(self, x):
        return K.closure(self.opens, self.full, x)

    def nonempty_opens(self):
        return self.opens[1:] if self.opens and self.opens[0] == 0 else self.opens

    def opens_containing(self, i):
        b = 1 << i
        return [o for o in self.opens if o & b]

    def closed_sets(self):
        return [self.full & ~o for o in self.opens]

    def cached(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn()
        return c[key]

    def __eq__(self, other):
        return (isinstance(other, Semitopology) and self.points == other.points
                and self.opens == other.opens)

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        shown = ["{" + ",".join(self.sorted_labels(o)) + "}" for o in self.opens]
        return f"Semitopology(points={list(self.points)}, opens=[{', '.join(shown)}])"

    def open_sets(self):
        """Opens as frozensets of labels, canonical order."""
        return [self.labels(o) for o in self.opens]

    def to_json(self):
        return json.dumps({
            "points": list(self.points),
            "opens": [self.sorted_labels(o) for o in self.opens],
            "mode": "full",
        })


def from_generators(points, gens, mode="generators", max_points=None):
    """Build a semitopology on ``points``.

    generators mode: least union-closed family containing gens, the empty
    set and the universe.  full mode: gens must already be a semitopology;
    a violation is reported with a witness.
    """
    limit = MAX_POINTS if max_points is None else max_points
    pts = canonical_points(points)
    if len(pts) > limit:
        raise SemitopologyError(f"{len(pts)} points exceeds the bound {limit}")
    if mode not in ("generators", "full"):
        raise SemitopologyError(f"unknown mode {mode!r}")
    S0 = Semitopology(pts, ())
    masks = [S0.mask(g) for g in gens]
    if mode == "generators":
        return Semitopology(pts, K.union_closure(masks, S0.full))
    fam = set(masks)
    if 0 not in fam:
        raise SemitopologyError("the empty set is missing from the opens")
    if S0.full not in fam:
        raise SemitopologyError("the universe is missing from the opens")
    bad = K.union_violation(fam)
    if bad is not None:
        a, b = bad
        raise SemitopologyError(
            "not union-closed: {%s} u {%s} is not open" % (
                ",".join(S0.sorted_labels(a)), ",".join(S0.sorted_labels(b))))
    return Semitopology(pts, K.canonical(fam))


def from_masks(points, masks):
    """Build from trusted canonical points and an open family given as masks."""
    S0 = Semitopology(points, ())
    return Semitopology(points, K.union_closure(list(masks), S0.full))


def from_json(text):
    d = json.loads(text) if isinstance(text, str) else text
    if "points" not in d or "opens" not in d:
        raise SemitopologyError("semitopology JSON needs 'points' and 'opens'")
    return from_generators(d["points"], d["opens"], d.get("mode", "generators"))


def between(X, Y):
    """X and Y intersect (false if either is empty)."""
    return bool(set(X) & set(Y))


def interior(S, X):
    return S.labels(S.interior_mask(S.mask(X)))


def closure(S, X):
    return S.labels(S.closure_mask(S.mask(X)))


def boundary(S, X):
    """closure(X) minus interior(X)."""
    m = S.mask(X)
    return S.labels(S.closure_mask(m) & ~S.interior_mask(m))


def is_open(S, X):
    return S.is_open_mask(S.mask(X))


def is_closed(S, X):
    return S.is_closed_mask(S.mask(X))


def regular_open_masks(S):
    def compute():
        return [o for o in S.opens if S.interior_mask(S.closure_mask(o)) == o]
    return S.cached("regular_opens", compute)


def regular_opens(S):
    return [S.labels(o) for o in regular_open_masks(S)]


def is_topology(S):
    """Opens closed under pairwise intersection."""
    fam = S._opens_set
    ops = S.opens
    for i, a in enumerate(ops):
        for b in ops[i + 1:]:
            if a & b not in fam:
                return False
    return True


def product(S1, S2, max_points=None):
    """Product semitopology; returns (space, relabel map label -> pair)."""
    limit = MAX_POINTS if max_points is None else max_points
    if S1.n * S2.n > limit:
        raise SemitopologyError(
            f"product has {S1.n * S2.n} points, over the bound {limit}")
    pairs = [(a, b) for a in S1.points for b in S2.points]
    relabel = {f"({a},{b})": (a, b) for a, b in pairs}
    pts = canonical_points(relabel)
    idx = {lab: i for i, lab in enumerate(pts)}
    squares = []
    for o1 in S1.nonempty_opens():
        for o2 in S2.nonempty_opens():
            m = 0
            for i in bits(o1):
                for j in bits(o2):
                    m |= 1 << idx[f"({S1.points[i]},{S2.points[j]})"]
            squares.append(m)
    return from_masks(pts, squares), relabel


def subspace(S, X):
    keep = bits(S.mask(X))
    pts = [S.points[i] for i in keep]
    fam = set()
    for o in S.opens:
        m = 0
        for k, i in enumerate(keep):
            if (o >> i) & 1:
                m |= 1 << k
        fam.add(m)
    return Semitopology(pts, K.canonical(fam))


def is_continuous(S, f, at=None):
    """f maps labels to values (discrete codomain).

    With ``at``: f is constant on some open neighbourhood of that point.
    Without: every preimage of a value is open.
    """
    f = {_label(k): v for k, v in f.items()}
    missing = [p for p in S.points if p not in f]
    if missing:
        raise SemitopologyError(f"value assignment is not total: {missing[0]!r} missing")
    if at is not None:
        i = S.point_bit(at)
        v = f[S.points[i]]
        same = S.mask(p for p in S.points if f[p] == v)
        return bool((S.interior_mask(same) >> i) & 1)
    for v in set(f.values()):
        if not S.is_open_mask(S.mask(p for p in S.points if f[p] == v)):
            return False
    return True


# ---------------------------------------------------------------- catalog

def _family(points, keep):
    # size-threshold families are up-closed, hence already union-closed
    pts = canonical_points(points)
    n = len(pts)
    masks = [m for m in range(1 << n) if m == 0 or m == (1 << n) - 1 or keep(popcount(m))]
    return Semitopology(pts, K.canonical(masks))


_FIGURES = {
    "sierpinski": ([0, 1], [[1]]),
    "three": (["T", "B", "F"], [["T"], ["F"], ["T", "F"]]),
    "fig-012-tl": ([0, 1, 2], [[0], [2]]),
    "fig-012-tr": ([0, 1, 2], [[0], [0, 1], [2], [1, 2], [0, 2]]),
    "fig-012-bl": ([0, 1, 2, 3, 4], [[0, 1], [1], [3], [3, 4]]),
    "fig-012-br": ([0, 1, 2, "*"], [[0], [1], [2], [0, 1, "*"], [1, 2, "*"]]),
    "fig-nitpick": ([0, 1, 2, "*"], [[0], [1], [2], [0, 1, "*"], [1, 2, "*"]]),
    "fig-two-min": ([0, 1, 2], [[0, 1], [1, 2]]),
    "fig-triangle": ([0, 1, 2], [[0, 1], [1, 2], [0, 2]]),
    "fig-square": ([0, 1, 2, 3], [[3, 0], [0, 1], [1, 2], [2, 3]]),
    "fig-irregular-a": ([0, 1, 2, 3, 4], [[1, 2], [0, 1, 3], [0, 2, 4], [3], [4]]),
    "fig-irregular-b": ([0, 1, 2, 3, 4],
                        [[1], [2], [3], [4], [0, 1, 2, 3], [0, 1, 2, 4]]),
    "fig-hypertwined12": ([0, 1, 2, 3], [[0], [3], [0, 1, 2], [1, 2, 3]]),
    "fig-wd-not-enough": ([0, 1, 2, 3], [[0], [0, 1], [0, 1, 2], [2, 3]]),
    "fig-strong-compat": ([-2, -1, 0, 1, 2], [[-2, -1], [-1, 0], [0, 1], [1, 2]]),
    "fig-ovals-a": ([0, 1, 2], [[0, 1], [0, 2], [1, 2], [2]]),
    "fig-ovals-b": ([0, 1, 2, 3], [[0, 1], [1, 2], [2, 3]]),
}

_FAMILIES = ("discrete", "trivial", "supermajority", "all-but-one", "more-than-one")

CATALOG_NAMES = tuple(sorted(_FIGURES)) + _FAMILIES


def catalog(name, n=None):
    """Named spaces.  Parametric families take n points (default 3)."""
    if name in _FIGURES:
        pts, gens = _FIGURES[name]
        return from_generators(pts, gens)
    if name not in _FAMILIES:
        raise SemitopologyError(f"unknown catalog name {name!r}")
    n = 3 if n is None else n
    if not isinstance(n, int) or n < 1 or n > MAX_POINTS:
        raise SemitopologyError(f"n={n!r} out of range 1..{MAX_POINTS}")
    if n > 12 and name != "trivial":
        # families of k-subsets get huge; keep the exhaustive build bounded
        raise SemitopologyError(f"n={n} too large for family {name!r} (max 12)")
    pts = list(range(n))
    if name == "discrete":
        return from_generators(pts, [[p] for p in pts])
    if name == "trivial":
        return from_generators(pts, [])
    if name == "supermajority":
        return _family(pts, lambda k: 3 * k > 2 * n)
    if name == "all-but-one":
        return _family(pts, lambda k: k >= n - 1)
    return _family(pts, lambda k: k >= 2)


def parse_catalog_ref(ref):
    """'name' or 'name(n)' or 'name:n' -> (name, n), else None."""
    name, n = ref, None
    if ref.endswith(")") and "(" in ref:
        name, arg = ref[:-1].split("(", 1)
        n = arg
    elif ":" in ref:
        name, n = ref.split(":", 1)
    if name not in CATALOG_NAMES:
        return None
    if n is not None:
        try:
            n = int(n)
        except ValueError:
            raise SemitopologyError(f"bad catalog size {n!r}")
    return name, n


# ---------------------------------------------------------------- enumeration

def all_semitopologies(n, points=None):
    """Yield every semitopology on n labelled points (default 0..n-1).

    Subsets are decided in increasing numeric order; a proper subset of s is
    numerically below s, so when s is reached every pair whose union is s
    has already been decided and s is either forced in or a free choice.
    """
    pts = canonical_points(range(n) if points is None else points)
    if len(pts) != n:
        raise SemitopologyError("points must have n distinct labels")
    if n > 4:
        raise SemitopologyError("exhaustive enumeration is limited to n <= 4")
    full = (1 << n) - 1

    def rec(s, chosen):
        if s >= full:
            yield Semitopology(pts, K.canonical(chosen + [full] if n else [0]))
            return
        forced = any((a | b) == s for a in chosen for b in chosen if a < b)
        if forced:
            yield from rec(s + 1, chosen + [s])
        else:
            yield from rec(s + 1, chosen)
            yield from rec(s + 1, chosen + [s])

    yield from rec(1, [0])
