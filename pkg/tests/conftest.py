import functools
import random

import pytest

from semitop.core import all_semitopologies


@functools.lru_cache(maxsize=None)
def spaces_upto(nmax):
    """All semitopologies on 0..nmax points, paired with frozenset opens."""
    out = []
    for n in range(nmax + 1):
        for S in all_semitopologies(n):
            out.append((S, set(S.open_sets())))
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20240917)


def random_witness(rng, n, max_sets=3):
    """Witness dict on points 0..n-1 with random nonempty witness-sets."""
    pts = [str(i) for i in range(n)]
    W = {}
    for p in pts:
        sets = []
        for _ in range(rng.randint(1, max_sets)):
            w = [q for q in pts if rng.random() < 0.4]
            sets.append(w or [rng.choice(pts)])
        W[p] = sets
    return pts, W


UNARY_OPS = ("not", "boxT", "boxTB", "boxB")
BINARY_OPS = ("and", "or", "imp", "eqv", "timp", "tiff")


def random_pred(rng, atoms, depth, modal=True, space=None, consts=True):
    """Random closed predicate over the given atom labels."""
    from semitop import logic3 as L
    if depth == 0 or rng.random() < 0.25:
        if consts and rng.random() < 0.15:
            return L.Const(rng.choice(list(L.Three)))
        return L.Atom(rng.choice(atoms))
    r = rng.random()
    sub = lambda: random_pred(rng, atoms, depth - 1, modal, space, consts)
    if modal and r < 0.15:
        return L.Modal(rng.choice("KE"), sub(), space)
    if r < 0.25:
        x = rng.choice("xyz")
        body = sub()
        # bind x somewhere inside by swapping an atom for the variable
        return L.Quant(rng.choice(("forall", "exists")), x, _plant(rng, body, x))
    if r < 0.5:
        return L.Un(rng.choice(UNARY_OPS), sub())
    return L.Bin(rng.choice(BINARY_OPS), sub(), sub())


def _plant(rng, phi, x):
    from semitop import logic3 as L
    if isinstance(phi, L.Atom):
        return L.Var(x) if rng.random() < 0.6 else phi
    if isinstance(phi, L.Un):
        return L.Un(phi.op, _plant(rng, phi.arg, x))
    if isinstance(phi, L.Bin):
        return L.Bin(phi.op, _plant(rng, phi.left, x), _plant(rng, phi.right, x))
    if isinstance(phi, L.Modal):
        return L.Modal(phi.op, _plant(rng, phi.arg, x), phi.space)
    if isinstance(phi, L.Quant) and phi.var != x:
        return L.Quant(phi.op, phi.var, _plant(rng, phi.body, x))
    return phi


def wsets_of(space):
    """Witness sets of a witness function or semitopology, as plain sets."""
    from semitop.witness import WitnessFunction
    if isinstance(space, WitnessFunction):
        return {p: space.witness_sets(p) for p in space.points}
    opens = list(space.open_sets())
    return {p: [o for o in opens if p in o] for p in space.points}


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines, one per criterion, when that file ran."""
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
