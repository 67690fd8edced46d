"""SAT and HORNSAT bridges: the CNF to witness-function reduction, a DPLL
oracle, DIMACS I/O, and Horn solvers over Bool and THREE.
"""

from dataclasses import dataclass
from itertools import product as cartesian

from .core import SemitopologyError, bits
from .logic3 import DESIGNATED, Three
from .witness import WitnessFunction, intertwined

__all__ = [
    "Cnf", "cnf_to_witness", "sat_check", "dpll", "separation_cnf", "intertwined_sat", "read_dimacs", "write_dimacs",
    "Lit3", "Horn3Theory", "hornsat2", "hornsat3", "parse_horn3",
    "horn3_holds", "horn3_oracle",
]


# ---------------------------------------------------------------- CNF


@dataclass(frozen=True)
class Cnf:
    """Variables 1..nvars; a clause is a tuple of nonzero signed ints."""
    nvars: int
    clauses: tuple

    def __post_init__(self):
        if self.nvars < 0:
            raise SemitopologyError("negative variable count")
        cl = tuple(tuple(c) for c in self.clauses)
        for c in cl:
            for lit in c:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.nvars:
                    raise SemitopologyError(f"literal {lit!r} out of range 1..{self.nvars}")
        object.__setattr__(self, "clauses", cl)

    @property
    def vars(self):
        return tuple(range(1, self.nvars + 1))

    def satisfied_by(self, assignment):
        """assignment: dict var -> bool."""
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def cnf_to_witness(psi):
    """Build the witness function of the reduction; returns (W, "left", "right").

    psi is satisfiable iff left and right are not intertwined.
    """
    wit = {}
    vs = psi.vars

    def m(lit):
        return f"q{abs(lit)}" + ("+" if lit > 0 else "-")

    for q in vs:
        wit[f"q{q}+"] = [[f"q{q}+"]]
        wit[f"q{q}-"] = [[f"q{q}-"]]
        wit[f"left_q{q}"] = [[f"q{q}+"], [f"q{q}-"]]
        wit[f"right_q{q}"] = [[f"q{q}+"], [f"q{q}-"]]
    for i, c in enumerate(psi.clauses, 1):
        # an empty clause can never be enabled by a literal; tie it to left
        wit[f"right_i{i}"] = [[m(l)] for l in c] or [["left"]]
    wit["left"] = [[f"left_q{q}" for q in vs] or ["left"]]
    right = [f"right_q{q}" for q in vs] + [f"right_i{i}" for i in range(1, len(psi.clauses) + 1)]
    wit["right"] = [right or ["right"]]
    return WitnessFunction(list(wit), wit), "left", "right"


def dpll(psi):
    """A satisfying assignment dict var -> bool, or None."""
    clauses = [frozenset(c) for c in psi.clauses]
    result = _dpll(clauses, {})
    if result is None:
        return None
    return {v: result.get(v, False) for v in psi.vars}


def _simplify(clauses, lit):
    out = []
    for c in clauses:
        if lit in c:
            continue
        out.append(c - {-lit})
    return out


def _dpll(clauses, assign):
    while True:
        if any(not c for c in clauses):
            return None
        if not clauses:
            return assign
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        (lit,) = unit
        assign = {**assign, abs(lit): lit > 0}
        clauses = _simplify(clauses, lit)
    lits = {l for c in clauses for l in c}
    pure = next((l for l in sorted(lits, key=abs) if -l not in lits), None)
    if pure is not None:
        return _dpll(_simplify(clauses, pure), {**assign, abs(pure): pure > 0})
    v = min(abs(l) for l in lits)
    for lit in (v, -v):
        r = _dpll(_simplify(clauses, lit), {**assign, v: lit > 0})
        if r is not None:
            return r
    return None


def sat_check(psi, method="reduction"):
    if method == "dpll":
        return dpll(psi) is not None
    if method == "reduction":
        W, left, right = cnf_to_witness(psi)
        return not intertwined(W, left, right, method="choice")
    raise SemitopologyError(f"unknown method {method!r}")


def separation_cnf(W, p, q):
    """CNF satisfiable iff there are disjoint witness-open sets O containing
    p and O' containing q, i.e. iff p and q are NOT intertwined.

    Variables 1..n say "in O", n+1..2n say "in O'"; one auxiliary per
    (side, point, witness-set) says that witness-set is inside the side.
    """
    n = W.n
    i, j = W.index[str(p)], W.index[str(q)]
    clauses = [(i + 1,), (n + j + 1,)]
    clauses += [(-(r + 1), -(n + r + 1)) for r in range(n)]
    nxt = 2 * n
    for side in (0, n):
        for r in range(n):
            heads = []
            for w in W.wit[r]:
                nxt += 1
                heads.append(nxt)
                clauses += [(-nxt, side + s + 1) for s in bits(w)]
            clauses.append((-(side + r + 1),) + tuple(heads))
    return Cnf(nxt, tuple(clauses))


def intertwined_sat(W, p, q):
    return dpll(separation_cnf(W, p, q)) is None


def read_dimacs(text):
    """Parse DIMACS CNF text.  Comment lines start with 'c'."""
    header = None
    lits = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise SemitopologyError(f"line {n}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise SemitopologyError(f"line {n}: malformed header {line!r}") from None
            if min(header) < 0:
                raise SemitopologyError(f"line {n}: malformed header {line!r}")
            continue
        if header is None:
            raise SemitopologyError(f"line {n}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lits.append(int(tok))
            except ValueError:
                raise SemitopologyError(f"line {n}: bad literal {tok!r}") from None
    if header is None:
        raise SemitopologyError("missing 'p cnf V C' header")
    nvars, nclauses = header
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        elif abs(lit) > nvars:
            raise SemitopologyError(f"literal {lit} exceeds declared {nvars} variables")
        else:
            cur.append(lit)
    if cur:
        raise SemitopologyError("last clause is missing its terminating 0")
    if len(clauses) != nclauses:
        raise SemitopologyError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return Cnf(nvars, tuple(clauses))


def write_dimacs(psi):
    lines = [f"p cnf {psi.nvars} {len(psi.clauses)}"]
    lines += [" ".join(str(l) for l in c + (0,)) for c in psi.clauses]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- HORNSAT over Bool


def _check_horn(clauses):
    for c in clauses:
        if sum(1 for _, negative in c if not negative) > 1:
            raise SemitopologyError(f"not a Horn clause: {sorted(c)}")


def hornsat2(clauses):
    """clauses: iterable of collections of (atom, negative) literals.

    Positive-unit propagation; returns dict atom -> bool or None.
    """
    original = [frozenset(c) for c in clauses]
    _check_horn(original)
    atoms = sorted({a for c in original for a, _ in c}, key=str)
    theory = set(original)
    used = set()
    while not any(not c for c in theory):
        units = sorted(str(a) for c in theory if len(c) == 1
                       for a, negative in c if not negative and a not in used)
        if not units:
            break
        p = next(a for c in theory for a, negative in c
                 if len(c) == 1 and not negative and str(a) == units[0])
        used.add(p)
        unit = frozenset({(p, False)})
        theory = {c if c == unit else c - {(p, True)} for c in theory
                  if c == unit or (p, False) not in c}
    if any(not c for c in theory):
        return None
    true = {a for c in theory if len(c) == 1 for a, negative in c if not negative}
    model = {a: a in true for a in atoms}
    if not all(any(model[a] != negative for a, negative in c) for c in original):
        raise RuntimeError("hornsat2 produced a non-model")
    return model


# ---------------------------------------------------------------- HORNSAT over THREE


@dataclass(frozen=True, order=True)
class Lit3:
    atom: str
    negative: bool = False
    boxed: bool = False

    def value(self, v):
        if self.negative:
            v = Three(2 - v)
        if self.boxed:
            return Three.T if v == Three.T else Three.F
        return v

    def __str__(self):
        return ("[]" if self.boxed else "") + ("~" if self.negative else "") + self.atom


@dataclass(frozen=True)
class Horn3Theory:
    clauses: tuple       # tuple of frozensets of Lit3

    def __post_init__(self):
        cl = tuple(frozenset(c) for c in self.clauses)
        for c in cl:
            if sum(1 for l in c if not l.negative) > 1:
                raise SemitopologyError(
                    "not a 3Horn clause: " + " ".join(sorted(map(str, c))))
        object.__setattr__(self, "clauses", cl)

    @property
    def atoms(self):
        return tuple(sorted({l.atom for c in self.clauses for l in c}))

    def __str__(self):
        return "\n".join(" ".join(str(l) for l in sorted(c)) or "false" for c in self.clauses)


def parse_horn3(text):
    """One clause per line, literals `p`, `~p`, `[]p`, `[]~p`.  A line
    `false` is the empty clause; blank lines and # comments are skipped."""
    clauses = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "false":
            clauses.append(frozenset())
            continue
        lits = []
        for tok in line.split():
            boxed = tok.startswith("[]")
            body = tok[2:] if boxed else tok
            negative = body.startswith("~")
            name = body[1:] if negative else body
            if not name or not all(ch.isalnum() or ch in "_'" for ch in name):
                raise SemitopologyError(f"line {n}: bad literal {tok!r}")
            lits.append(Lit3(name, negative, boxed))
        clauses.append(frozenset(lits))
    return Horn3Theory(tuple(clauses))


def horn3_holds(theory, f):
    """Every clause designated under f (atom -> Three)."""
    return all(max((l.value(f[l.atom]) for l in c), default=Three.F) in DESIGNATED
               for c in theory.clauses)


def horn3_oracle(theory):
    """Brute force over 3^n valuations; returns a model or None."""
    atoms = theory.atoms
    for vals in cartesian((Three.T, Three.B, Three.F), repeat=len(atoms)):
        f = dict(zip(atoms, vals))
        if horn3_holds(theory, f):
            return f
    return None


def _step_boxed(clauses, p):
    unit = frozenset({Lit3(p, False, True)})
    kill = {Lit3(p), Lit3(p, False, True)}
    drop = {Lit3(p, True, True), Lit3(p, True, False)}
    out = []
    for c in clauses:
        if c == unit:
            out.append(c)
        elif c & kill:
            continue
        else:
            out.append(c - drop)
    return out


def _step_unboxed(clauses, p):
    unit = frozenset({Lit3(p)})
    drop = {Lit3(p, True, True)}
    out = []
    for c in clauses:
        if c == unit:
            out.append(c)
        elif Lit3(p) in c:
            continue
        else:
            out.append(c - drop)
    return out


def _canon(clauses):
    return sorted(set(clauses), key=lambda c: sorted(c))


def hornsat3(theory):
    """Prioritised unit rules (boxed units before unboxed, lowest atom
    first in each tier); returns dict atom -> Three or None."""
    if not isinstance(theory, Horn3Theory):
        theory = Horn3Theory(tuple(theory))
    clauses = _canon(theory.clauses)
    while True:
        if any(not c for c in clauses):
            return None
        changed = False
        for boxed, step in ((True, _step_boxed), (False, _step_unboxed)):
            units = sorted(next(iter(c)).atom for c in clauses
                           if len(c) == 1 and next(iter(c)) == Lit3(next(iter(c)).atom, False, boxed))
            for p in units:
                new = _canon(step(clauses, p))
                if new != clauses:
                    clauses = new
                    changed = True
                    break
            if changed:
                break
        if not changed:
            break
    if any(not c for c in clauses):
        return None
    f = {a: Three.F for a in theory.atoms}
    for c in clauses:
        if len(c) == 1:
            (l,) = c
            if not l.negative:
                if l.boxed:
                    f[l.atom] = Three.T
                elif f[l.atom] != Three.T:
                    f[l.atom] = Three.B
    if not horn3_holds(theory, f):
        raise RuntimeError("hornsat3 produced a valuation that fails a clause")
    return f
