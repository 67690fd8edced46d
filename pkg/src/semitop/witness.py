"""Witness functions and the algorithms that make witness semitopologies
computable: enumeration of opens, open growth, lim-closure, Horn theories
and choice-closures for intertwinedness.
"""

import json
from dataclasses import dataclass
from itertools import product as cartesian

from ._backend import kernels as K
from .core import (MAX_POINTS, Semitopology, SemitopologyError, bits,
                   canonical_points, is_topology, popcount)

__all__ = [
    "WitnessFunction", "HornClause", "HornTheory", "witness_opens",
    "from_semitopology", "grow_open", "lim_closure", "horn_theory",
    "is_deterministic", "is_topology", "choice_closures", "intertwined",
]


class WitnessFunction:
    """W(p) for each point: a nonempty set of nonempty witness-sets.

    ``witness`` maps a label to an iterable of label collections.
    """

    __slots__ = ("points", "index", "wit", "_cache")

    def __init__(self, points, witness):
        pts = canonical_points(points)
        self.points = tuple(pts)
        self.index = {p: i for i, p in enumerate(pts)}
        witness = {str(k): v for k, v in witness.items()}
        extra = set(witness) - set(pts)
        if extra:
            raise SemitopologyError(f"witness given for unknown point {sorted(extra)[0]!r}")
        wit = []
        for p in pts:
            sets = witness.get(p)
            if not sets:
                raise SemitopologyError(f"point {p!r} has no witness-set")
            masks = set()
            for w in sets:
                m = self._mask(w, p)
                if m == 0:
                    raise SemitopologyError(f"point {p!r} has an empty witness-set")
                masks.add(m)
            wit.append(tuple(K.canonical(masks)))
        self.wit = tuple(wit)
        self._cache = {}

    def _mask(self, labels, owner="?"):
        m = 0
        for q in labels:
            q = str(q)
            if q not in self.index:
                raise SemitopologyError(
                    f"witness-set of {owner!r} mentions unknown point {q!r}")
            m |= 1 << self.index[q]
        return m

    @classmethod
    def from_masks(cls, points, wit):
        """Trusted constructor: points already canonical, wit[i] masks."""
        self = cls.__new__(cls)
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.wit = tuple(tuple(K.canonical(ws)) for ws in wit)
        self._cache = {}
        return self

    @property
    def n(self):
        return len(self.points)

    @property
    def full(self):
        return (1 << self.n) - 1

    def mask(self, labels):
        return self._mask(labels)

    def labels(self, m):
        return frozenset(self.points[i] for i in bits(m))

    def witness_sets(self, p):
        i = self.index[str(p)]
        return [self.labels(w) for w in self.wit[i]]

    def as_dict(self):
        return {p: [sorted(self.labels(w), key=self.index.get) for w in ws]
                for p, ws in zip(self.points, self.wit)}

    def to_json(self):
        return json.dumps({"points": list(self.points), "witness": self.as_dict()})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        if "points" not in d or "witness" not in d:
            raise SemitopologyError("witness JSON needs 'points' and 'witness'")
        return cls(d["points"], d["witness"])

    def __eq__(self, other):
        return (isinstance(other, WitnessFunction) and self.points == other.points
                and self.wit == other.wit)

    def __hash__(self):
        return hash((self.points, self.wit))

    def __repr__(self):
        return f"WitnessFunction({self.as_dict()})"


def witness_opens(W, max_points=None):
    """The witness semitopology: O open iff it enables each of its points."""
    limit = MAX_POINTS if max_points is None else max_points
    if W.n > limit:
        raise SemitopologyError(f"{W.n} points exceeds the bound {limit}")
    if "opens" not in W._cache:
        W._cache["opens"] = Semitopology(W.points, K.witness_opens(W.wit, W.n))
    return W._cache["opens"]


def from_semitopology(S):
    """W(p) = the opens containing p."""
    wit = [S.opens_containing(i) for i in range(S.n)]
    return WitnessFunction.from_masks(S.points, wit)


def _enabled(W, i, r):
    return any(w & ~r == 0 for w in W.wit[i])


def _choose_least(W, i, r):
    # the witness-set adding fewest new points; canonical order breaks ties
    return min(W.wit[i], key=lambda w: popcount(w & ~r))


def _choose_first(W, i, r):
    return W.wit[i][0]


CHOOSERS = {"least": _choose_least, "first": _choose_first}


def grow_open_mask(W, seed, chooser="least"):
    choose = CHOOSERS[chooser] if isinstance(chooser, str) else chooser
    r = seed
    while True:
        add = 0
        for i in bits(r):
            if not _enabled(W, i, r):
                add |= choose(W, i, r)
        if add & ~r == 0:
            return r
        r |= add


def grow_open(W, seed, chooser="least"):
    """Grow seed into an open set by adding a chosen witness-set for every
    member not yet enabled, until nothing changes.

    chooser: "least" (fewest new points, ties canonical), "first", or a
    callable (W, point index, current mask) -> witness mask.
    """
    return W.labels(grow_open_mask(W, W.mask(seed), chooser))


def lim_closure(W, X):
    """Fixpoint of P -> P u {p | every witness-set of p meets P}."""
    return W.labels(K.lim_closure(W.wit, W.mask(X)))


def lim_closure_mask(W, x):
    return K.lim_closure(W.wit, x)


@dataclass(frozen=True)
class HornClause:
    body: tuple      # tuple of witness-sets, each a tuple of labels
    head: str
    negative: bool = False

    def holds(self, true_set):
        lit = (lambda q: q not in true_set) if self.negative else (lambda q: q in true_set)
        if all(any(lit(q) for q in w) for w in self.body):
            return lit(self.head)
        return True

    def __str__(self):
        neg = "~" if self.negative else ""
        body = " & ".join("(" + " | ".join(neg + q for q in w) + ")" for w in self.body)
        return f"{body} -> {neg}{self.head}"


@dataclass(frozen=True)
class HornTheory:
    atoms: tuple
    clauses: tuple

    def is_model(self, true_set):
        s = {str(q) for q in true_set}
        return all(c.holds(s) for c in self.clauses)

    def strict_clauses(self):
        """Expand to clauses (negated body atoms, head) with one positive
        literal each; only for positive clauses."""
        out = []
        for c in self.clauses:
            if c.negative:
                raise SemitopologyError("strict expansion is for positive clauses")
            for pick in cartesian(*c.body):
                out.append((frozenset(pick), c.head))
        return out


def horn_theory(W, polarity="positive"):
    if polarity not in ("positive", "negative", "both"):
        raise SemitopologyError(f"unknown polarity {polarity!r}")
    clauses = []
    for i, p in enumerate(W.points):
        body = tuple(tuple(W.points[j] for j in bits(w)) for w in W.wit[i])
        if polarity in ("positive", "both"):
            clauses.append(HornClause(body, p, False))
        if polarity in ("negative", "both"):
            clauses.append(HornClause(body, p, True))
    return HornTheory(W.points, tuple(clauses))


def is_deterministic(W):
    return all(len(ws) == 1 for ws in W.wit)


def choice_closure_masks(W, i):
    """All sets reached from {p} by picking a witness-set for each member
    that is not yet enabled.  Each is open; every open nbhd of p contains one.
    """
    start = 1 << i
    seen = set()
    done = set()
    stack = [start]
    while stack:
        r = stack.pop()
        if r in seen:
            continue
        seen.add(r)
        pending = [j for j in bits(r) if not _enabled(W, j, r)]
        if not pending:
            done.add(r)
            continue
        j = pending[0]
        for w in W.wit[j]:
            stack.append(r | w)
    return K.canonical(done)


def intertwined(W, p, q, method="choice"):
    """p and q intertwined in the witness semitopology of W."""
    i, j = W.index[str(p)], W.index[str(q)]
    if method == "choice":
        bq = 1 << j
        return all(K.lim_closure(W.wit, c) & bq for c in choice_closure_masks(W, i))
    if method == "brute":
        S = witness_opens(W)
        ops_p = S.opens_containing(i)
        ops_q = S.opens_containing(j)
        return all(a & b for a in ops_p for b in ops_q)
    raise SemitopologyError(f"unknown method {method!r}")
