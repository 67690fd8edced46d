"""Semiframes: the algebraic dual of semitopologies.

A finite semiframe is a join-semilattice with a compatibility relation.
Elements are indexed 0..m-1; subsets of the carrier are bitmasks.
"""

import json

from .core import SemitopologyError, bits, canonical_points, from_masks

MAX_ELEMENTS = 20


class Semiframe:
    """Carrier ``elements`` (labels), order ``leq`` and compatibility ``compat``
    given as collections of label pairs (reflexive/symmetric closure added).

    With validate=True the semilattice and compatibility laws are checked.
    """

    def __init__(self, elements, leq, compat, validate=True, payload=None):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise SemitopologyError("duplicate semiframe elements")
        m = len(self.elements)
        idx = {e: i for i, e in enumerate(self.elements)}
        self.index = idx
        up = [1 << i for i in range(m)]
        for a, b in leq:
            up[self._i(a)] |= 1 << self._i(b)
        # transitive closure
        changed = True
        while changed:
            changed = False
            for i in range(m):
                acc = up[i]
                for j in bits(up[i]):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        self.up = up
        self.down = [sum(1 << j for j in range(m) if (up[j] >> i) & 1) for i in range(m)]
        comp = [0] * m
        for a, b in compat:
            i, j = self._i(a), self._i(b)
            comp[i] |= 1 << j
            comp[j] |= 1 << i
        self.comp = comp
        self.payload = payload
        for i in range(m):
            for j in bits(up[i]):
                if j != i and (up[j] >> i) & 1:
                    raise SemitopologyError(
                        f"leq is not antisymmetric on {self.elements[i]!r}, {self.elements[j]!r}")
        self.bottom = self._lub(0)
        self.top = self._lub((1 << m) - 1)
        self._join = {}
        if validate:
            bad = check_semiframe(self)
            if bad:
                raise SemitopologyError(bad[0])

    def _i(self, e):
        e = str(e)
        if e not in self.index:
            raise SemitopologyError(f"unknown semiframe element {e!r}")
        return self.index[e]

    @property
    def size(self):
        return len(self.elements)

    def leq(self, i, j):
        return bool((self.up[i] >> j) & 1)

    def compatible(self, i, j):
        return bool((self.comp[i] >> j) & 1)

    def _lub(self, subset):
        """Least upper bound of a set of element indices, or None."""
        m = self.size
        cand = (1 << m) - 1
        for i in bits(subset):
            cand &= self.up[i]
        for c in bits(cand):
            if cand & ~self.up[c] == 0:
                return c
        return None

    def join(self, subset):
        """Join of a bitmask of elements."""
        if subset not in self._join:
            j = self._lub(subset)
            if j is None:
                raise SemitopologyError("join does not exist")
            self._join[subset] = j
        return self._join[subset]

    def join2(self, i, j):
        return self.join((1 << i) | (1 << j))

    def star(self, i):
        """x* = the elements compatible with x, as a mask."""
        return self.comp[i]

    def star_set(self, fl):
        """F* = intersection of x* for x in F."""
        r = (1 << self.size) - 1
        for i in bits(fl):
            r &= self.comp[i]
        return r

    def mask(self, labels):
        m = 0
        for e in labels:
            m |= 1 << self._i(e)
        return m

    def labels(self, fl):
        return frozenset(self.elements[i] for i in bits(fl))

    def to_json(self):
        m = self.size
        leq = [[self.elements[i], self.elements[j]]
               for i in range(m) for j in bits(self.up[i]) if i != j]
        comp = [[self.elements[i], self.elements[j]]
                for i in range(m) for j in bits(self.comp[i]) if i <= j]
        return json.dumps({"elements": list(self.elements), "leq": leq, "compat": comp})

    @classmethod
    def from_json(cls, text, validate=True):
        d = json.loads(text) if isinstance(text, str) else text
        for key in ("elements", "leq", "compat"):
            if key not in d:
                raise SemitopologyError(f"semiframe JSON needs {key!r}")
        return cls(d["elements"], d["leq"], d["compat"], validate=validate)


def check_semiframe(F):
    """List of law violations (empty when F is a semiframe)."""
    m = F.size
    out = []
    if F.bottom is None:
        return ["no least element"]
    for i in range(m):
        for j in range(i + 1, m):
            if F._lub((1 << i) | (1 << j)) is None:
                out.append(f"no join of {F.elements[i]!r} and {F.elements[j]!r}")
    if out:
        return out
    for i in range(m):
        for j in range(m):
            if F.compatible(i, j) != F.compatible(j, i):
                out.append("compatibility is not symmetric")
        if F.compatible(i, i) != (i != F.bottom):
            out.append(f"compatibility is not properly reflexive at {F.elements[i]!r}")
        if F.compatible(i, F.bottom):
            out.append(f"{F.elements[i]!r} is compatible with bottom")
        for j in range(m):
            for k in range(j + 1, m):
                lhs = F.compatible(i, F.join2(j, k))
                rhs = F.compatible(i, j) or F.compatible(i, k)
                if lhs != rhs:
                    out.append("compatibility does not distribute over joins: "
                               f"{F.elements[i]!r} vs {F.elements[j]!r} v {F.elements[k]!r}")
    return out


def _set_label(S, o):
    return "{" + ",".join(S.sorted_labels(o)) + "}"


def fr(S):
    """The semiframe of open sets (Opens, subset, intersects)."""
    ops = list(S.opens)
    labels = [_set_label(S, o) for o in ops]
    leq = [(labels[a], labels[b]) for a in range(len(ops)) for b in range(len(ops))
           if ops[a] & ~ops[b] == 0]
    comp = [(labels[a], labels[b]) for a in range(len(ops)) for b in range(len(ops))
            if ops[a] & ops[b]]
    return Semiframe(labels, leq, comp, validate=False, payload=ops)


def ast_no_tand(variant="meet"):
    """bot < 0,1,2,3 < top.  variant "meet": x*x' iff their meet is not bot
    (not distributive, no abstract points); "nonbot": x*x' iff both != bot."""
    els = ["bot", "0", "1", "2", "3", "top"]
    leq = [("bot", e) for e in els] + [(e, "top") for e in els]
    if variant == "meet":
        comp = [(e, e) for e in els[1:]] + [(e, "top") for e in els[1:]]
        return Semiframe(els, leq, comp, validate=False)
    if variant == "nonbot":
        comp = [(a, b) for a in els[1:] for b in els[1:]]
        return Semiframe(els, leq, comp)
    raise SemitopologyError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------- semifilters


def up_closure(F, x):
    r = 0
    for i in bits(x):
        r |= F.up[i]
    return r


def is_compatible_set(F, fl):
    return all(F.comp[i] & fl == fl for i in bits(fl))


def is_semifilter(F, fl):
    return fl != 0 and up_closure(F, fl) == fl and is_compatible_set(F, fl)


def is_completely_prime(F, fl):
    if (fl >> F.bottom) & 1:
        return False
    m = F.size
    for i in range(m):
        if (fl >> i) & 1:
            continue
        for j in range(i + 1, m):
            if not (fl >> j) & 1 and (fl >> F.join2(i, j)) & 1:
                return False
    return True


def _compatible_antichains(F):
    """Nonempty antichains of pairwise compatible non-bottom elements."""
    m = F.size
    order = [i for i in range(m) if i != F.bottom]
    out = []

    def rec(k, chosen):
        if chosen:
            out.append(chosen)
        for t in range(k, len(order)):
            i = order[t]
            if F.comp[i] & chosen != chosen or not F.compatible(i, i):
                continue
            if (F.up[i] | F.down[i]) & chosen:
                continue
            rec(t + 1, chosen | (1 << i))

    rec(0, 0)
    return out


def semifilters(F):
    """All semifilters, as masks (up-closures of compatible antichains)."""
    if F.size > MAX_ELEMENTS:
        raise SemitopologyError(f"{F.size} elements exceeds the bound {MAX_ELEMENTS}")
    found = {up_closure(F, a) for a in _compatible_antichains(F)}
    return sorted(f for f in found if is_semifilter(F, f))


def abstract_point_masks(F):
    """Completely prime semifilters."""
    return [f for f in semifilters(F) if is_completely_prime(F, f)]


def abstract_points(F):
    return [F.labels(f) for f in abstract_point_masks(F)]


def is_maximal_semifilter(F, fl, all_filters=None):
    fs = semifilters(F) if all_filters is None else all_filters
    return not any(g != fl and fl & ~g == 0 for g in fs)


def _point_label(F, fl):
    minimal = [i for i in bits(fl) if F.down[i] & fl == 1 << i]
    return "[" + "|".join(sorted((F.elements[i] for i in minimal), key=_elem_key)) + "]"


def _elem_key(label):
    return (len(label), label)


def op_mask(F, points, i):
    """Op(x): which abstract points contain element i (mask over points)."""
    r = 0
    for k, fl in enumerate(points):
        if (fl >> i) & 1:
            r |= 1 << k
    return r


def st(F):
    """The semitopology of abstract points; opens are the Op(x).

    Returns (space, map from point label to the semifilter mask)."""
    pts = abstract_point_masks(F)
    labels = [_point_label(F, fl) for fl in pts]
    order = canonical_points(labels)
    pos = {lab: k for k, lab in enumerate(order)}
    ordered = [None] * len(pts)
    for lab, fl in zip(labels, pts):
        ordered[pos[lab]] = fl
    opens = [op_mask(F, ordered, i) for i in range(F.size)]
    space = from_masks(order, opens)
    return space, dict(zip(order, ordered))


def nbhd_mask(F, S, i):
    """Neighbourhood semifilter of point i of S, over fr(S) = F."""
    r = 0
    for k, o in enumerate(F.payload):
        if (o >> i) & 1:
            r |= 1 << k
    return r


def soberify(S):
    """st(fr(S)) together with the map point -> label of nbhd(point)."""
    F = fr(S)
    T, table = st(F)
    back = {fl: lab for lab, fl in table.items()}
    nb = {p: back[nbhd_mask(F, S, i)] for i, p in enumerate(S.points)}
    return T, nb


def is_spatial(F):
    pts = abstract_point_masks(F)
    m = F.size
    ops = [op_mask(F, pts, i) for i in range(m)]
    for i in range(m):
        for j in range(m):
            if ops[i] & ~ops[j] == 0 and not F.leq(i, j):
                return False
            if F.compatible(i, j) and not ops[i] & ops[j]:
                return False
    return True


def is_t0(S):
    seen = set()
    for i in range(S.n):
        sig = tuple(bool((o >> i) & 1) for o in S.opens)
        if sig in seen:
            return False
        seen.add(sig)
    return True


def is_sober(S):
    """nbhd is a bijection from points onto abstract points of fr(S)."""
    F = fr(S)
    pts = set(abstract_point_masks(F))
    nbs = [nbhd_mask(F, S, i) for i in range(S.n)]
    return len(set(nbs)) == len(nbs) and set(nbs) == pts


def nbhd_inverse_is_iso(S):
    """nbhd^-1 maps the opens of soberify(S) bijectively onto the opens of S,
    preserving inclusion and intersection."""
    T, nb = soberify(S)
    pre = {}
    for o in T.opens:
        m = 0
        for i, p in enumerate(S.points):
            if (o >> T.index[nb[p]]) & 1:
                m |= 1 << i
        pre[o] = m
    if sorted(pre.values()) != sorted(S.opens) or len(set(pre.values())) != len(pre):
        return False
    for a in T.opens:
        for b in T.opens:
            if (a & ~b == 0) != (pre[a] & ~pre[b] == 0):
                return False
            if bool(a & b) != bool(pre[a] & pre[b]):
                return False
    return True


# ---------------------------------------------------------------- dual regularity


def is_transitive_element(F, i):
    """x != bot and x' * x * x'' implies x' * x''."""
    if i == F.bottom:
        return False
    s = F.comp[i]
    return all(F.comp[a] & s == s for a in bits(s))


def cclo(F, fl):
    """Join of the elements outside fl."""
    return F.join(((1 << F.size) - 1) & ~fl)


def cast_set(F, fl):
    return cclo(F, F.star_set(fl))


def cast_elem(F, i):
    return cclo(F, F.comp[i])


def frame_community_mask(F, fl):
    """join of {x | x* subset F*}."""
    target = F.star_set(fl)
    sel = 0
    for i in range(F.size):
        if F.comp[i] & ~target == 0:
            sel |= 1 << i
    return F.join(sel)


def frame_community_cast(F, fl):
    """The double-cast form of the abstract community."""
    return cast_elem(F, cast_set(F, fl))


def dual_regularity(F, fl, x=None):
    """Dual regularity data for a semifilter fl (a collection of labels or a
    mask).  ``x`` optionally names an element whose compatibility system
    is reported instead of fl's."""
    if not isinstance(fl, int):
        fl = F.mask(fl)
    if not is_semifilter(F, fl):
        raise SemitopologyError("not a semifilter")
    fstar = F.star_set(fl)
    system = F.comp[F._i(x)] if x is not None else fstar
    strongly = fstar != 0 and is_compatible_set(F, fstar)
    fc = frame_community_mask(F, fl)
    weakly = bool((fl >> fc) & 1)
    return {
        "transitive_elements": {F.elements[i] for i in range(F.size)
                                if is_transitive_element(F, i)},
        "compat_system": F.labels(system),
        "strongly_compatible": strongly,
        "frame_community": F.elements[fc],
        "quasiregular": fc != F.bottom,
        "weakly_regular": weakly,
        "regular": weakly and is_transitive_element(F, fc),
    }


__all__ = [
    "Semiframe", "check_semiframe", "fr", "ast_no_tand", "semifilters",
    "abstract_points", "abstract_point_masks", "st", "soberify", "is_spatial",
    "is_sober", "is_t0", "nbhd_inverse_is_iso", "dual_regularity",
    "is_transitive_element", "frame_community_mask", "frame_community_cast",
    "is_semifilter", "is_completely_prime", "is_maximal_semifilter",
]
