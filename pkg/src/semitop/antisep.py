"""Antiseparation and regularity: intertwined points, communities, kernels,
topens, classification flags, closed neighbourhoods, dense sets,
continuous extension, kernel limits, extremal valuations and the
intersection graph.

Valuations into THREE are dicts label -> "T" | "B" | "F".
"""

from dataclasses import asdict, dataclass, field

from .core import (SemitopologyError, bits, is_continuous, popcount,
                   regular_open_masks)

# ------------------------------------------------------------ mask helpers


def covers_mask(S, i):
    """Minimal opens containing point i."""
    def compute():
        nbhd = S.opens_containing(i)
        return [o for o in nbhd if not any(u != o and u & ~o == 0 for u in nbhd)]
    return S.cached(("covers", i), compute)


def intertwined_mask(S, i):
    """K_p: the intersection of the closures of p's minimal open nbhds."""
    def compute():
        k = S.full
        for o in covers_mask(S, i):
            k &= S.closure_mask(o)
        return k
    return S.cached(("K", i), compute)


def community_mask(S, i):
    return S.cached(("community", i), lambda: S.interior_mask(intertwined_mask(S, i)))


def atom_masks(S):
    """Minimal nonempty opens."""
    def compute():
        ne = S.nonempty_opens()
        return [o for o in ne if not any(u != o and u & ~o == 0 for u in ne)]
    return S.cached("atoms", compute)


def kernel_of_mask(S, x):
    """Union of the atoms inside x."""
    r = 0
    for a in atom_masks(S):
        if a & ~x == 0:
            r |= a
    return r


def kernel_mask(S, i):
    return S.cached(("kernel", i), lambda: kernel_of_mask(S, community_mask(S, i)))


def is_transitive_mask(S, t):
    """For all opens O, O': O meets t and O' meets t implies O meets O'."""
    meet = [o for o in S.opens if o & t]
    for a in range(len(meet)):
        for b in range(a + 1, len(meet)):
            if not meet[a] & meet[b]:
                return False
    return True


def is_topen_mask(S, t):
    return t != 0 and S.is_open_mask(t) and is_transitive_mask(S, t)


def is_hyperconnected_mask(S, x):
    """Nonempty open subsets of x pairwise intersect."""
    inside = [o for o in S.nonempty_opens() if o & ~x == 0]
    return all(a & b for k, a in enumerate(inside) for b in inside[k + 1:])


def _regular_bit(S, i):
    c = community_mask(S, i)
    return bool((c >> i) & 1) and is_transitive_mask(S, c)


def regular_mask(S):
    def compute():
        r = 0
        for i in range(S.n):
            if _regular_bit(S, i):
                r |= 1 << i
        return r
    return S.cached("regular", compute)


def intertwined_bits(S, i, j):
    return bool((intertwined_mask(S, i) >> j) & 1)


def is_hypertransitive_bit(S, i):
    b = 1 << i
    near = [o for o in S.opens if S.closure_mask(o) & b]
    return all(x & y for k, x in enumerate(near) for y in near[k:])


def is_hyperdefinite_bit(S, i):
    b = 1 << i
    for o in regular_open_masks(S):
        if not (o & b or S.interior_mask(S.full & ~o) & b):
            return False
    return True


def closed_neighbourhoods(S, i=None):
    """Closed sets with nonempty interior (containing point i in it)."""
    out = []
    for c in S.closed_sets():
        inner = S.interior_mask(c)
        if inner and (i is None or (inner >> i) & 1):
            out.append(c)
    return out


def _minimal(sets):
    return [c for c in sets if not any(d != c and d & ~c == 0 for d in sets)]


def is_mcn_bit(S, i):
    k = intertwined_mask(S, i)
    if S.interior_mask(k) == 0:
        return False
    return not any(c != k and c & ~k == 0 for c in closed_neighbourhoods(S))


# ------------------------------------------------------------ public types


@dataclass(frozen=True)
class NeighbourhoodInvariants:
    intertwined_set: frozenset
    community: frozenset
    kernel: frozenset
    covers: list
    boundary_of_K: frozenset


@dataclass(frozen=True)
class Classification:
    regular: bool
    weakly_regular: bool
    quasiregular: bool
    indirectly_regular: bool
    unconflicted: bool
    conflicted: bool
    hypertransitive: bool
    hyperdefinite: bool
    mcn: bool

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class TopenPartition:
    maximal_topens: list
    irregular_points: frozenset = field(default_factory=frozenset)


def _bit(S, p):
    return S.point_bit(p)


def neighbourhood_invariants(S, p):
    i = _bit(S, p)
    k = intertwined_mask(S, i)
    c = community_mask(S, i)
    return NeighbourhoodInvariants(
        intertwined_set=S.labels(k),
        community=S.labels(c),
        kernel=S.labels(kernel_mask(S, i)),
        covers=[S.labels(o) for o in covers_mask(S, i)],
        boundary_of_K=S.labels(k & ~c),
    )


def intertwined_set(S, p):
    return S.labels(intertwined_mask(S, _bit(S, p)))


def community(S, p):
    return S.labels(community_mask(S, _bit(S, p)))


def community_of_set(S, X):
    """Interior of the intersection of the K_p for p in X (point-set form)."""
    k = S.full
    for i in bits(S.mask(X)):
        k &= intertwined_mask(S, i)
    return S.labels(S.interior_mask(k))


def kernel(S, p):
    return S.labels(kernel_mask(S, _bit(S, p)))


def kernel_of_set(S, X):
    """Union of the kernels of the points of X."""
    r = 0
    for i in bits(S.mask(X)):
        r |= kernel_mask(S, i)
    return S.labels(r)


def covers(S, p):
    return [S.labels(o) for o in covers_mask(S, _bit(S, p))]


def atoms(S):
    return [S.labels(a) for a in atom_masks(S)]


def is_transitive(S, T):
    return is_transitive_mask(S, S.mask(T))


def is_topen(S, T):
    return is_topen_mask(S, S.mask(T))


def is_hyperconnected(S, X):
    return is_hyperconnected_mask(S, S.mask(X))


def intertwined(S, p, q):
    return intertwined_bits(S, _bit(S, p), _bit(S, q))


def maximal_topen_masks(S):
    """Distinct communities of regular points; each is the maximal topen
    around its points."""
    def compute():
        seen = []
        for i in bits(regular_mask(S)):
            c = community_mask(S, i)
            if c not in seen:
                seen.append(c)
        return sorted(seen, key=lambda m: (popcount(m), m))
    return S.cached("max_topens", compute)


def topen_partition(S):
    tops = maximal_topen_masks(S)
    covered = 0
    for t in tops:
        covered |= t
    return TopenPartition([S.labels(t) for t in tops], S.labels(S.full & ~covered))


def classify_point(S, p):
    i = _bit(S, p)
    b = 1 << i
    c = community_mask(S, i)
    k = intertwined_mask(S, i)
    weakly = bool(c & b)
    regular = weakly and is_transitive_mask(S, c)
    conflicted = False
    near = bits(k)
    for a in near:
        for d in near:
            if not intertwined_bits(S, a, d):
                conflicted = True
                break
        if conflicted:
            break
    ht = is_hypertransitive_bit(S, i)
    return Classification(
        regular=regular,
        weakly_regular=weakly,
        quasiregular=c != 0,
        indirectly_regular=bool(k & regular_mask(S)),
        unconflicted=not conflicted,
        conflicted=conflicted,
        hypertransitive=ht,
        hyperdefinite=is_hyperdefinite_bit(S, i),
        mcn=is_mcn_bit(S, i),
    )


def classify(S):
    return {p: classify_point(S, p) for p in S.points}


def min_closed_neighbourhoods(S, scope="all"):
    """Minimal closed sets with nonempty interior.

    scope="all", or a point p: minimal closed neighbourhoods of p, i.e. the
    minimal closed C with p in interior(C).
    """
    i = None if scope == "all" else _bit(S, scope)
    found = _minimal(closed_neighbourhoods(S, i))
    found.sort(key=lambda m: (popcount(m), m))
    return [S.labels(c) for c in found]


def dense_check(S, D, P):
    """Weak density: every nonempty open inside P meets D.
    Strong density: every open meeting P meets D."""
    d, pm = S.mask(D), S.mask(P)
    if d == 0:
        raise SemitopologyError("D must be nonempty")
    if d & ~pm:
        raise SemitopologyError("D must be a subset of P")
    if not S.is_open_mask(pm):
        raise SemitopologyError("P must be open")
    weakly = S.interior_mask(pm & ~d) == 0
    strongly = S.closure_mask(d) == S.closure_mask(pm)
    return {"weakly": weakly, "strongly": strongly}


def _partial_continuous_bit(S, f, dom, i):
    """Some open nbhd of i lies in dom and f is constant on it."""
    if not (dom >> i) & 1:
        return False
    v = f[S.points[i]]
    same = 0
    for j in bits(dom):
        if f[S.points[j]] == v:
            same |= 1 << j
    return bool((S.interior_mask(same) >> i) & 1)


def extend_to_regular(S, f, default=None):
    """Extend a partial assignment f (continuous on its domain) to a total
    one that is continuous at every regular point."""
    f = {str(k): v for k, v in f.items()}
    dom = S.mask(f)
    for i in bits(dom):
        if not _partial_continuous_bit(S, f, dom, i):
            raise SemitopologyError(
                f"f is not continuous at {S.points[i]!r} in its domain")
    g = {}
    reg = regular_mask(S)
    for i, p in enumerate(S.points):
        if _partial_continuous_bit(S, f, dom, i):
            g[p] = f[p]
        elif (reg >> i) & 1 and community_mask(S, i) & dom:
            d = bits(community_mask(S, i) & dom)[0]
            g[p] = f[S.points[d]]
        else:
            g[p] = default
    return g


def _continuous_on(S, f, x):
    return all(is_continuous(S, f, at=S.points[j]) for j in bits(x))


def kernel_limit(S, f, p):
    """confident: f continuous on some atom inside kernel(p), with limit
    f(atom).  unanimous: f continuous on community(p)."""
    f = {str(k): v for k, v in f.items()}
    i = _bit(S, p)
    if not (regular_mask(S) >> i) & 1:
        return {"confident": False, "unanimous": False, "limit": None}
    ker = kernel_mask(S, i)
    limit = None
    confident = False
    for a in atom_masks(S):
        if a & ~ker == 0 and _continuous_on(S, f, a):
            confident = True
            limit = f[S.points[bits(a)[0]]]
            break
    unanimous = _continuous_on(S, f, community_mask(S, i))
    return {"confident": confident, "unanimous": unanimous, "limit": limit}


# ------------------------------------------------------------ THREE valuations


def valuation_from_masks(S, t, f):
    return {p: ("T" if (t >> i) & 1 else "F" if (f >> i) & 1 else "B")
            for i, p in enumerate(S.points)}


def valuation_masks(S, v):
    t = S.mask(p for p in S.points if v[p] == "T")
    f = S.mask(p for p in S.points if v[p] == "F")
    return t, f


def is_continuous_valuation(S, v):
    """Preimages of the THREE opens {T}, {F}, {T,F} are open."""
    t, f = valuation_masks(S, v)
    return S.is_open_mask(t) and S.is_open_mask(f) and S.is_open_mask(t | f)


def continuous_valuation_masks(S):
    """Disjoint pairs of opens (T-side, F-side)."""
    def compute():
        ops = S.opens
        return [(a, b) for a in ops for b in ops if not a & b]
    return S.cached("cont_vals", compute)


def continuous_valuations(S):
    return [valuation_from_masks(S, t, f) for t, f in continuous_valuation_masks(S)]


def is_extremal(S, v):
    """Continuous, and preimages commute with closure."""
    if not is_continuous_valuation(S, v):
        return False
    t, f = valuation_masks(S, v)
    return (S.closure_mask(t) == S.full & ~f) and (S.closure_mask(f) == S.full & ~t)


def extremal_valuation_masks(S):
    def compute():
        return [(o, S.interior_mask(S.full & ~o)) for o in regular_open_masks(S)]
    return S.cached("extremal", compute)


def extremal_valuations(S):
    """One per regular open O: T on O, F on interior(complement), B elsewhere."""
    return [valuation_from_masks(S, t, f) for t, f in extremal_valuation_masks(S)]


def intertwined_classes(S):
    """Union-find over the intertwined relation; representative = least label."""
    parent = list(range(S.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(S.n):
        for j in bits(intertwined_mask(S, i)):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {p: S.points[find(i)] for i, p in enumerate(S.points)}


def point_relations(S, p, q):
    i, j = _bit(S, p), _bit(S, q)
    bi, bj = 1 << i, 1 << j
    same_opens = all(bool(o & bi) == bool(o & bj) for o in S.opens)
    ce = ht = True
    for t, f in extremal_valuation_masks(S):
        vi = "T" if t & bi else "F" if f & bi else "B"
        vj = "T" if t & bj else "F" if f & bj else "B"
        if vi != vj:
            ce = ht = False
        elif vi == "B":
            ht = False
    classes = intertwined_classes(S)
    return {
        "intertwined": intertwined_bits(S, i, j),
        "top_indistinguishable": same_opens,
        "consensus_equivalent": ce,
        "hypertwined": ht,
        "transitively_intertwined": classes[S.points[i]] == classes[S.points[j]],
    }


# ------------------------------------------------------------ intersection graph


class IntersectionGraph:
    """Nodes are the nonempty opens; edges join intersecting opens."""

    def __init__(self, S, self_loops=False):
        self.space = S
        self.nodes = list(S.nonempty_opens())
        self.self_loops = self_loops
        self.edges = [(a, b) for k, a in enumerate(self.nodes)
                      for b in self.nodes[k if self_loops else k + 1:] if a & b]
        self._nbrs = {a: frozenset(b for b in self.nodes if a & b) for a in self.nodes}

    def neighbours(self, O):
        return [self.space.labels(b) for b in self._nbrs[self.space.mask(O)]]

    def node_preorder(self, O, O2):
        """O <= O2 when every neighbour of O is a neighbour of O2."""
        a, b = self.space.mask(O), self.space.mask(O2)
        return self._nbrs[a] <= self._nbrs[b]

    def flanks(self, X, Y):
        """X meets Y and so does the complement of X."""
        x, y = self.space.mask(X), self.space.mask(Y)
        return bool(x & y) and bool(self.space.full & ~x & y)

    def _name(self, m):
        return "{" + ",".join(self.space.sorted_labels(m)) + "}"

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(self._name(a) for a in self.nodes)
        g.add_edges_from((self._name(a), self._name(b)) for a, b in self.edges)
        return g

    def to_dot(self, flanks=False):
        lines = ["graph intersection {" if not flanks else "digraph intersection {"]
        arrow = "->" if flanks else "--"
        for a in self.nodes:
            lines.append(f'  "{self._name(a)}";')
        for a, b in self.edges:
            extra = " [dir=none]" if flanks else ""
            lines.append(f'  "{self._name(a)}" {arrow} "{self._name(b)}"{extra};')
        if flanks:
            full = self.space.full
            for a in self.nodes:
                for b in self.nodes:
                    if a & b and full & ~a & b:
                        lines.append(f'  "{self._name(a)}" -> "{self._name(b)}" [style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def intersection_graph(S, self_loops=False):
    return IntersectionGraph(S, self_loops)
