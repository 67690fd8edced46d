"""Pure-Python versions of the bitmask kernels.

Sets of points are ints; bit i stands for the i-th point in canonical order.
The compiled module ``_kernels`` exports the same names.
"""

BACKEND = "python"


def popcount(x):
    return bin(x).count("1")


def canonical(opens):
    return sorted(set(opens), key=lambda m: (popcount(m), m))


def union_closure(gens, full):
    """Least union-closed family containing gens, 0 and full."""
    fam = {0, full}
    for g in gens:
        if g in fam:
            continue
        fam |= {o | g for o in fam}
    return canonical(fam)


def union_violation(opens):
    """Return a pair (a, b) whose union is missing, or None."""
    fam = set(opens)
    lst = sorted(fam)
    for i, a in enumerate(lst):
        for b in lst[i + 1:]:
            if a | b not in fam:
                return a, b
    return None


def interior(opens, x):
    r = 0
    for o in opens:
        if o & ~x == 0:
            r |= o
    return r


def closure(opens, full, x):
    # the complement of the closure is the union of opens missing x
    r = 0
    for o in opens:
        if o & x == 0:
            r |= o
    return full & ~r


def enables(wit, p, x):
    for w in wit[p]:
        if w & ~x == 0:
            return True
    return False


def witness_opens(wit, n):
    """All x with every member enabled by x; wit[p] is a list of masks."""
    out = []
    for x in range(1 << n):
        ok = True
        y = x
        while y:
            low = y & -y
            p = low.bit_length() - 1
            y ^= low
            found = False
            for w in wit[p]:
                if w & ~x == 0:
                    found = True
                    break
            if not found:
                ok = False
                break
        if ok:
            out.append(x)
    return canonical(out)


def lim_closure(wit, x):
    """Iterate x := x | {p | every witness-set of p meets x} to a fixpoint."""
    n = len(wit)
    while True:
        y = x
        for p in range(n):
            if (y >> p) & 1:
                continue
            blocked = True
            for w in wit[p]:
                if w & x == 0:
                    blocked = False
                    break
            if blocked:
                y |= 1 << p
        if y == x:
            return x
        x = y
