"""Three-valued logic over points: THREE, predicates, denotation, validity,
the witness axiom theories, the K/E modalities, the logical
characterisations of regularity, and a tag-sequent prover.
"""

import re
from dataclasses import dataclass
from enum import IntEnum
from functools import reduce
from itertools import product as cartesian

from .antisep import continuous_valuation_masks, covers_mask, extremal_valuation_masks
from .core import Semitopology, SemitopologyError, bits
from .witness import WitnessFunction, from_semitopology, witness_opens

MAX_ENUM_POINTS = 12


class Three(IntEnum):
    """F < B < T; the designated values are T and B."""
    F = 0
    B = 1
    T = 2

    def __str__(self):
        return self.name


T, B, F = Three.T, Three.B, Three.F
DESIGNATED = frozenset({T, B})


def to_three(v):
    if isinstance(v, Three):
        return v
    if isinstance(v, str) and v in ("T", "B", "F"):
        return Three[v]
    if isinstance(v, int) and 0 <= v <= 2:
        return Three(v)
    raise SemitopologyError(f"not a truth value: {v!r}")


# truth tables, row = left argument, column order T, B, F

def _table(rows):
    cols = (T, B, F)
    return {(a, b): rows[a][k] for a in rows for k, b in enumerate(cols)}


NOT = {T: F, B: B, F: T}
IMP = _table({T: (T, B, F), B: (T, B, B), F: (T, T, T)})      # material, =>
EQV = _table({T: (T, B, F), B: (B, B, B), F: (F, B, T)})      # material, <=>
TIMP = _table({T: (T, B, F), B: (T, B, F), F: (T, T, T)})     # ->
TIFF = _table({T: (T, B, F), B: (B, B, F), F: (F, F, T)})     # <->
BOXT = {T: T, B: F, F: F}
BOXTB = {T: T, B: T, F: F}
BOXB = {T: F, B: T, F: F}

UNARY = {"not": NOT, "boxT": BOXT, "boxTB": BOXTB, "boxB": BOXB}
BINARY = {
    "and": lambda a, b: min(a, b),
    "or": lambda a, b: max(a, b),
    "imp": lambda a, b: IMP[a, b],
    "eqv": lambda a, b: EQV[a, b],
    "timp": lambda a, b: TIMP[a, b],
    "tiff": lambda a, b: TIFF[a, b],
}


# ---------------------------------------------------------------- syntax


@dataclass(frozen=True)
class Const:
    value: Three


@dataclass(frozen=True)
class Atom:
    label: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Un:
    op: str
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Modal:
    """K (meet over valuations) or E (join).  With ``space`` set the
    modality is relativised to that witness function or semitopology."""
    op: str
    arg: object
    space: object = None


@dataclass(frozen=True)
class Quant:
    op: str          # "forall" | "exists"
    var: str
    body: object


def atom(p):
    return Atom(str(p))


def neg(a):
    return Un("not", a)


def box_t(a):
    return Un("boxT", a)


def box_tb(a):
    return Un("boxTB", a)


def box_b(a):
    return Un("boxB", a)


def conj(*args):
    if not args:
        return Const(T)
    return reduce(lambda a, b: Bin("and", a, b), args)


def disj(*args):
    if not args:
        return Const(F)
    return reduce(lambda a, b: Bin("or", a, b), args)


def imp(a, b):
    return Bin("imp", a, b)


def eqv(a, b):
    return Bin("eqv", a, b)


def timp(a, b):
    return Bin("timp", a, b)


def tiff(a, b):
    return Bin("tiff", a, b)


def kmod(a, space=None):
    return Modal("K", a, space)


def emod(a, space=None):
    return Modal("E", a, space)


def forall(x, body):
    return Quant("forall", x, body)


def exists(x, body):
    return Quant("exists", x, body)


def free_vars(phi):
    if isinstance(phi, Var):
        return frozenset({phi.name})
    if isinstance(phi, (Const, Atom)):
        return frozenset()
    if isinstance(phi, Un):
        return free_vars(phi.arg)
    if isinstance(phi, Bin):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Modal):
        return free_vars(phi.arg)
    if isinstance(phi, Quant):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a predicate: {phi!r}")


def subst(phi, x, term):
    """Replace free occurrences of variable x by term (an Atom)."""
    if isinstance(phi, Var):
        return term if phi.name == x else phi
    if isinstance(phi, (Const, Atom)):
        return phi
    if isinstance(phi, Un):
        return Un(phi.op, subst(phi.arg, x, term))
    if isinstance(phi, Bin):
        return Bin(phi.op, subst(phi.left, x, term), subst(phi.right, x, term))
    if isinstance(phi, Modal):
        return Modal(phi.op, subst(phi.arg, x, term), phi.space)
    if isinstance(phi, Quant):
        if phi.var == x:
            return phi
        return Quant(phi.op, phi.var, subst(phi.body, x, term))
    raise TypeError(f"not a predicate: {phi!r}")


def depth(phi):
    if isinstance(phi, (Const, Atom, Var)):
        return 0
    if isinstance(phi, Un):
        return 1 + depth(phi.arg)
    if isinstance(phi, Bin):
        return 1 + max(depth(phi.left), depth(phi.right))
    if isinstance(phi, Modal):
        return 1 + depth(phi.arg)
    return 1 + depth(phi.body)


# ---------------------------------------------------------------- text syntax

_BIN_TEXT = {"and": "&", "or": "|", "imp": "=>", "eqv": "<=>", "timp": "->", "tiff": "<->"}
_UN_TEXT = {"not": "~", "boxT": "[]T ", "boxTB": "[]TB ", "boxB": "[]B "}
_LABEL_RE = re.compile(r"-?[A-Za-z0-9_*+]+")


def _label_text(label):
    return "'" + label if _LABEL_RE.fullmatch(label) else "'\"" + label + '"'


def to_text(phi):
    """Fully parenthesised text that parse() reads back."""
    if isinstance(phi, Const):
        return phi.value.name
    if isinstance(phi, Atom):
        return _label_text(phi.label)
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Un):
        return _UN_TEXT[phi.op] + "(" + to_text(phi.arg) + ")"
    if isinstance(phi, Bin):
        return "(" + to_text(phi.left) + " " + _BIN_TEXT[phi.op] + " " + to_text(phi.right) + ")"
    if isinstance(phi, Modal):
        return phi.op + ("W" if phi.space is not None else "") + "{" + to_text(phi.arg) + "}"
    return "(" + phi.op + " " + phi.var + ". " + to_text(phi.body) + ")"


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<atomq>'"[^"]*")
  | (?P<atom>'-?[A-Za-z0-9_*+]+)
  | (?P<op><->|<=>|->|=>|\[\]TB|\[\]T|\[\]B|[~&|(){}.])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise SemitopologyError(f"cannot parse predicate at {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        val = m.group(kind)
        if kind == "atomq":
            out.append(("atom", val[2:-1]))
        elif kind == "atom":
            out.append(("atom", val[1:]))
        else:
            out.append((kind, val))
    out.append(("end", None))
    return out


class _Parser:
    IMPL = {"=>": "imp", "<=>": "eqv", "->": "timp", "<->": "tiff"}
    UNARY = {"~": "not", "[]T": "boxT", "[]TB": "boxTB", "[]B": "boxB"}

    def __init__(self, text, space):
        self.toks = _tokens(text)
        self.i = 0
        self.space = space

    def peek(self):
        return self.toks[self.i]

    def take(self, val=None):
        tok = self.toks[self.i]
        if val is not None and tok[1] != val:
            raise SemitopologyError(f"expected {val!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        e = self.impl()
        if self.peek()[0] != "end":
            raise SemitopologyError(f"unexpected {self.peek()[1]!r}")
        return e

    def impl(self):
        left = self.disj()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in self.IMPL:
            self.take()
            return Bin(self.IMPL[tok[1]], left, self.impl())
        return left

    def disj(self):
        e = self.conj()
        while self.peek() == ("op", "|"):
            self.take()
            e = Bin("or", e, self.conj())
        return e

    def conj(self):
        e = self.unary()
        while self.peek() == ("op", "&"):
            self.take()
            e = Bin("and", e, self.unary())
        return e

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in self.UNARY:
            self.take()
            return Un(self.UNARY[tok[1]], self.unary())
        if tok[0] == "word" and tok[1] in ("forall", "exists"):
            self.take()
            var = self.take()
            if var[0] != "word":
                raise SemitopologyError("quantifier needs a variable name")
            self.take(".")
            return Quant(tok[1], var[1], self.impl())
        return self.primary()

    def primary(self):
        tok = self.take()
        kind, val = tok
        if kind == "atom":
            return Atom(val)
        if kind == "op" and val == "(":
            e = self.impl()
            self.take(")")
            return e
        if kind == "word":
            if val in ("T", "B", "F"):
                return Const(Three[val])
            if val in ("K", "E", "KW", "EW"):
                self.take("{")
                e = self.impl()
                self.take("}")
                space = None
                if val.endswith("W"):
                    if self.space is None:
                        raise SemitopologyError(f"{val} needs an ambient space")
                    space = self.space
                return Modal(val[0], e, space)
            return Var(val)
        raise SemitopologyError(f"unexpected {val!r}")


def parse(text, space=None):
    """Parse the text syntax; KW{..}/EW{..} are relativised to ``space``."""
    return _Parser(text, space).parse()


# ---------------------------------------------------------------- denotation


def _space_of(space):
    if isinstance(space, WitnessFunction):
        return witness_opens(space)
    if isinstance(space, Semitopology):
        return space
    raise SemitopologyError("modality must be relativised to a witness function or space")


def _witness_of(space):
    if isinstance(space, WitnessFunction):
        return space
    return from_semitopology(space)


def all_valuations(universe):
    universe = tuple(universe)
    if len(universe) > MAX_ENUM_POINTS:
        raise SemitopologyError(
            f"{len(universe)} points exceeds the valuation bound {MAX_ENUM_POINTS}")
    for vals in cartesian((T, B, F), repeat=len(universe)):
        yield dict(zip(universe, vals))


def continuous_valuations3(S):
    out = []
    for t, f in continuous_valuation_masks(S):
        out.append({p: (T if (t >> i) & 1 else F if (f >> i) & 1 else B)
                    for i, p in enumerate(S.points)})
    return out


def extremal_valuations3(S):
    return [{p: (T if (t >> i) & 1 else F if (f >> i) & 1 else B)
             for i, p in enumerate(S.points)}
            for t, f in extremal_valuation_masks(S)]


class Evaluator:
    """Evaluates closed predicates over a fixed universe.

    Valuation-independent K/E subterms are cached per variable binding.
    literal=True evaluates K_W phi as K(Ax_W -> phi) and E_W phi as
    E(Ax_W & phi) over all valuations instead of the continuous shortcut.
    """

    def __init__(self, universe, literal=False):
        self.universe = tuple(str(p) for p in universe)
        self.literal = literal
        self._modal = {}
        self._ax = {}
        self._cont = {}

    def __call__(self, phi, f, env=None):
        f = {str(k): to_three(v) for k, v in f.items()}
        return self.ev(phi, f, env or {})

    def _point(self, phi, env):
        if isinstance(phi, Atom):
            return phi.label
        if phi.name not in env:
            raise SemitopologyError(f"free variable {phi.name!r}")
        return env[phi.name]

    def ev(self, phi, f, env):
        if isinstance(phi, Const):
            return phi.value
        if isinstance(phi, (Atom, Var)):
            p = self._point(phi, env)
            if p not in f:
                raise SemitopologyError(f"valuation has no value for {p!r}")
            return f[p]
        if isinstance(phi, Un):
            return UNARY[phi.op][self.ev(phi.arg, f, env)]
        if isinstance(phi, Bin):
            a = self.ev(phi.left, f, env)
            if phi.op == "and" and a == F:
                return F
            if phi.op == "or" and a == T:
                return T
            return BINARY[phi.op](a, self.ev(phi.right, f, env))
        if isinstance(phi, Quant):
            vals = (self.ev(phi.body, f, {**env, phi.var: p}) for p in self.universe)
            if phi.op == "forall":
                return min(vals, default=T)
            return max(vals, default=F)
        if isinstance(phi, Modal):
            fv = free_vars(phi)
            key = (id(phi), tuple(sorted((x, env[x]) for x in fv if x in env)))
            hit = self._modal.get(key)
            if hit is None:
                # the node is stored alongside so its id cannot be recycled
                hit = self._modal[key] = (phi, self._modal_value(phi, env))
            return hit[1]
        raise TypeError(f"not a predicate: {phi!r}")

    def _modal_value(self, phi, env):
        fold = min if phi.op == "K" else max
        if phi.space is None:
            vals = (self.ev(phi.arg, g, env) for g in all_valuations(self.universe))
            return fold(vals)
        if self.literal:
            ax = self.ax_formula(phi.space)
            if phi.op == "K":
                body = timp(ax, phi.arg)
            else:
                body = conj(ax, phi.arg)
            vals = (self.ev(body, g, env) for g in all_valuations(self.universe))
            return fold(vals)
        conts = self.continuous(phi.space)
        if phi.op == "K":
            # Ax is T or B on continuous valuations, and T->x = B->x = x
            return min((self.ev(phi.arg, g, env) for g in conts), default=T)
        ax = self.ax_formula(phi.space)
        return max((min(self.ev(ax, g, env), self.ev(phi.arg, g, env)) for g in conts),
                   default=F)

    def continuous(self, space):
        key = id(space)
        if key not in self._cont:
            S = _space_of(space)
            if set(S.points) != set(self.universe):
                raise SemitopologyError("relativised modality over a different universe")
            self._cont[key] = (space, continuous_valuations3(S))
        return self._cont[key][1]

    def ax_formula(self, space):
        key = id(space)
        if key not in self._ax:
            self._ax[key] = (space, theory_ax(_witness_of(space)))
        return self._ax[key][1]


def evaluate(phi, f, universe=None, literal=False):
    """Value of a closed predicate under valuation f (label -> T/B/F)."""
    universe = list(f) if universe is None else universe
    return Evaluator(universe, literal)(phi, f)


def valid(f, phi, universe=None):
    return evaluate(phi, f, universe) in DESIGNATED


def valid_continuous(S, phi):
    ev = Evaluator(S.points)
    return all(ev(phi, g) in DESIGNATED for g in continuous_valuations3(S))


def valid_extremal(S, phi):
    ev = Evaluator(S.points)
    return all(ev(phi, g) in DESIGNATED for g in extremal_valuations3(S))


# ---------------------------------------------------------------- theories


def _closed_ax(W, i, negative=False):
    lit = (lambda q: neg(atom(q))) if negative else atom
    body = conj(*[disj(*[lit(W.points[j]) for j in bits(w)]) for w in W.wit[i]])
    return timp(body, lit(W.points[i]))


def _closed_ax_ex(W, S, i, negative=False):
    lit = (lambda q: box_t(neg(atom(q)))) if negative else (lambda q: box_t(atom(q)))
    head = neg(atom(W.points[i])) if negative else atom(W.points[i])
    body = conj(*[disj(*[lit(S.points[j]) for j in bits(c)]) for c in covers_mask(S, i)])
    return timp(head, body)


def theory_ax(W, extremal=False):
    """Conjunction of closedAx(p) and its negative twin over all points;
    with extremal=True also the cover axioms of the extremal theory."""
    if isinstance(W, Semitopology):
        W = from_semitopology(W)
    parts = []
    for i in range(W.n):
        parts.append(_closed_ax(W, i))
        parts.append(_closed_ax(W, i, negative=True))
    if extremal:
        S = witness_opens(W)
        for i in range(W.n):
            parts.append(_closed_ax_ex(W, S, i))
            parts.append(_closed_ax_ex(W, S, i, negative=True))
    return conj(*parts)


def open_ax(W):
    """Cross-check axioms saying f^-1{T} and f^-1{F} are open."""
    parts = []
    for i, p in enumerate(W.points):
        for negative in (False, True):
            lit = (lambda q: box_t(neg(atom(q)))) if negative else (lambda q: box_t(atom(q)))
            body = disj(*[conj(*[lit(W.points[j]) for j in bits(w)]) for w in W.wit[i]])
            parts.append(timp(lit(p), body))
    return conj(*parts)


# ---------------------------------------------------------------- characterisations


def _term(x):
    return x if isinstance(x, (Atom, Var)) else atom(x)


def intertwined_w(W, p, q):
    """K_W(p <=> q), with <=> the material equivalence."""
    return kmod(eqv(_term(p), _term(q)), W)


def top_indis_w(W, p, q):
    return kmod(tiff(_term(p), _term(q)), W)


def quasi_regular_w(W, p):
    x = Var("x")
    return emod(conj(exists("x", box_t(x)),
                     forall("x", tiff(x, intertwined_w(W, p, x)))), W)


def weakly_regular_w(W, p):
    x = Var("x")
    return emod(conj(box_t(_term(p)), forall("x", tiff(x, intertwined_w(W, p, x)))), W)


def unconflicted_w(W, p):
    a, b = Var("x1"), Var("x2")
    return forall("x1", forall("x2", timp(
        conj(intertwined_w(W, a, p), intertwined_w(W, p, b)),
        intertwined_w(W, a, b))))


def regular_w(W, p):
    return conj(weakly_regular_w(W, p), unconflicted_w(W, p))


def regular_prime_w(W, p):
    x, y = Var("x"), Var("y")
    inner = timp(exists("x", box_t(x)),
                 timp(forall("y", timp(y, intertwined_w(W, p, y))),
                      forall("y", timp(intertwined_w(W, p, y), y))))
    return conj(weakly_regular_w(W, p), kmod(inner, W))


CHARACTERISATIONS = {
    "intertwined": intertwined_w,
    "TopIndis": top_indis_w,
    "QuasiRegular": quasi_regular_w,
    "WeaklyRegular": weakly_regular_w,
    "Unconflicted": unconflicted_w,
    "Regular": regular_w,
    "Regular'": regular_prime_w,
}


def characterise(name, W, *args):
    if name not in CHARACTERISATIONS:
        raise SemitopologyError(f"unknown characterisation {name!r}")
    return CHARACTERISATIONS[name](W, *args)


# ---------------------------------------------------------------- tag sequents

TAGS = {"TB": frozenset({T, B}), "FF": frozenset({F}),
        "FB": frozenset({F, B}), "TT": frozenset({T})}
NEG_TAG = {"TB": "FB", "FB": "TB", "FF": "TT", "TT": "FF"}
_ALL = frozenset({T, B, F})


def desugar(phi):
    """Rewrite into Const, Atom, not, and, boxT, K and forall."""
    if isinstance(phi, (Const, Atom, Var)):
        return phi
    if isinstance(phi, Un):
        a = desugar(phi.arg)
        if phi.op == "not":
            return neg(a)
        if phi.op == "boxT":
            return box_t(a)
        tb = neg(box_t(neg(a)))
        if phi.op == "boxTB":
            return tb
        return Bin("and", tb, neg(box_t(a)))
    if isinstance(phi, Bin):
        a, b = desugar(phi.left), desugar(phi.right)
        return _desugar_bin(phi.op, a, b)
    if isinstance(phi, Modal):
        body = phi.arg
        if phi.space is not None:
            ax = theory_ax(_witness_of(phi.space))
            body = timp(ax, body) if phi.op == "K" else conj(ax, body)
        body = desugar(body)
        if phi.op == "K":
            return Modal("K", body)
        return neg(Modal("K", neg(body)))
    if phi.op == "forall":
        return Quant("forall", phi.var, desugar(phi.body))
    return neg(Quant("forall", phi.var, neg(desugar(phi.body))))


def _or(a, b):
    return neg(Bin("and", neg(a), neg(b)))


def _desugar_bin(op, a, b):
    if op == "and":
        return Bin("and", a, b)
    if op == "or":
        return _or(a, b)
    if op == "imp":
        return _or(neg(a), b)
    if op == "eqv":
        return Bin("and", _or(neg(a), b), _or(neg(b), a))
    if op == "timp":
        return _or(neg(neg(box_t(neg(a)))), b)
    return Bin("and", _desugar_bin("timp", a, b), _desugar_bin("timp", b, a))


class Prover:
    """Backward proof search for tag sequents; every rule is invertible."""

    def __init__(self, universe):
        self.universe = tuple(str(p) for p in universe)
        self._memo = {}

    def derive(self, entries):
        key = frozenset(entries)
        if key not in self._memo:
            self._memo[key] = self._derive(key)
        return self._memo[key]

    def _derive(self, entries):
        for entry in entries:
            tag, phi = entry
            if isinstance(phi, Atom):
                continue
            rest = entries - {entry}
            if isinstance(phi, Const):
                # truth-constant axiom, else the entry is useless
                return phi.value in TAGS[tag] or self.derive(rest)
            if isinstance(phi, Un) and phi.op == "not":
                return self.derive(rest | {(NEG_TAG[tag], phi.arg)})
            if isinstance(phi, Un) and phi.op == "boxT":
                new = "TT" if tag in ("TB", "TT") else "FB"
                return self.derive(rest | {(new, phi.arg)})
            if isinstance(phi, Bin) and phi.op == "and":
                if tag in ("TB", "TT"):
                    return (self.derive(rest | {(tag, phi.left)})
                            and self.derive(rest | {(tag, phi.right)}))
                return self.derive(rest | {(tag, phi.left), (tag, phi.right)})
            if isinstance(phi, Modal):
                if tag in ("TB", "TT"):
                    holds = self.derive(frozenset({(tag, phi.arg)}))
                else:
                    # K a is F iff a fails TB somewhere, in {F,B} iff a fails TT
                    dual = "TB" if tag == "FF" else "TT"
                    holds = not self.derive(frozenset({(dual, phi.arg)}))
                return holds or self.derive(rest)
            if isinstance(phi, Quant):
                inst = [(tag, subst(phi.body, phi.var, Atom(p))) for p in self.universe]
                if tag in ("TB", "TT"):
                    return all(self.derive(rest | {e}) for e in inst)
                return self.derive(rest | set(inst))
            raise SemitopologyError(f"cannot derive with {phi!r}")
        # only atoms left: some atom's tags must cover THREE
        cover = {}
        for tag, phi in entries:
            cover[phi.label] = cover.get(phi.label, frozenset()) | TAGS[tag]
        return any(v == _ALL for v in cover.values())


def derive(sigma, universe):
    """Is the tag sequent derivable?  sigma: iterable of (tag, predicate)."""
    entries = set()
    for tag, phi in sigma:
        if tag not in TAGS:
            raise SemitopologyError(f"unknown tag {tag!r}")
        if free_vars(phi):
            raise SemitopologyError("sequent entries must be closed")
        entries.add((tag, desugar(phi)))
    return Prover(universe).derive(frozenset(entries))


def sequent_valid(sigma, universe):
    """Every valuation designates some entry (value in its tag)."""
    ev = Evaluator(universe)
    sigma = list(sigma)
    for g in all_valuations(universe):
        if not any(ev.ev(phi, g, {}) in TAGS[tag] for tag, phi in sigma):
            return False
    return True


def parse_sequent(text, space=None):
    """One `tag: predicate` per line; blank lines and # comments skipped."""
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise SemitopologyError(f"line {n}: expected 'tag: predicate'")
        tag, body = line.split(":", 1)
        tag = tag.strip()
        if tag not in TAGS:
            raise SemitopologyError(f"line {n}: unknown tag {tag!r}")
        out.append((tag, parse(body, space)))
    return out
