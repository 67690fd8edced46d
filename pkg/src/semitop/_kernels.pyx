# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels; same interface as _pykernels."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

BACKEND = "cython"


cdef inline int _pc(u64 x):
    return __builtin_popcountll(x)


def popcount(x):
    return _pc(<u64>x)


def canonical(opens):
    return sorted(set(opens), key=lambda m: (_pc(<u64>m), m))


def union_closure(gens, u64 full):
    cdef list fam = [0, full] if full else [0]
    cdef set seen = set(fam)
    cdef u64 g, o, u
    cdef Py_ssize_t i, m
    for gg in gens:
        g = gg
        if g in seen:
            continue
        m = len(fam)
        for i in range(m):
            u = (<u64>fam[i]) | g
            if u not in seen:
                seen.add(u)
                fam.append(u)
    return canonical(fam)


def union_violation(opens):
    cdef list lst = sorted(set(opens))
    cdef set fam = set(lst)
    cdef Py_ssize_t i, j, m = len(lst)
    for i in range(m):
        for j in range(i + 1, m):
            if ((<u64>lst[i]) | (<u64>lst[j])) not in fam:
                return lst[i], lst[j]
    return None


def interior(opens, u64 x):
    cdef u64 r = 0, o
    for oo in opens:
        o = oo
        if o & ~x == 0:
            r |= o
    return r


def closure(opens, u64 full, u64 x):
    cdef u64 r = 0, o
    for oo in opens:
        o = oo
        if o & x == 0:
            r |= o
    return full & ~r


def enables(wit, int p, u64 x):
    cdef u64 w
    for ww in wit[p]:
        w = ww
        if w & ~x == 0:
            return True
    return False


cdef struct Flat:
    int n
    int *start      # start[p] .. start[p+1] index into sets
    u64 *sets


cdef int _flatten(wit, Flat *f) except -1:
    cdef int n = len(wit), p, k = 0, total = 0
    for p in range(n):
        total += len(wit[p])
    f.n = n
    f.start = <int *>malloc((n + 1) * sizeof(int))
    f.sets = <u64 *>malloc((total + 1) * sizeof(u64))
    if f.start == NULL or f.sets == NULL:
        raise MemoryError()
    for p in range(n):
        f.start[p] = k
        for w in wit[p]:
            f.sets[k] = <u64>w
            k += 1
    f.start[n] = k
    return 0


cdef void _release(Flat *f):
    free(f.start)
    free(f.sets)


def witness_opens(wit, int n):
    cdef Flat f
    cdef u64 x, y, low, top = (<u64>1) << n
    cdef int p, k, ok, found
    cdef list out = []
    _flatten(wit, &f)
    try:
        x = 0
        while x < top:
            ok = 1
            y = x
            while y:
                low = y & (~y + 1)
                p = _pc(low - 1)
                y ^= low
                found = 0
                for k in range(f.start[p], f.start[p + 1]):
                    if f.sets[k] & ~x == 0:
                        found = 1
                        break
                if not found:
                    ok = 0
                    break
            if ok:
                out.append(x)
            x += 1
    finally:
        _release(&f)
    return canonical(out)


def lim_closure(wit, u64 x):
    cdef Flat f
    cdef u64 y
    cdef int p, k, blocked
    _flatten(wit, &f)
    try:
        while True:
            y = x
            for p in range(f.n):
                if (y >> p) & 1:
                    continue
                blocked = 1
                for k in range(f.start[p], f.start[p + 1]):
                    if f.sets[k] & x == 0:
                        blocked = 0
                        break
                if blocked:
                    y |= (<u64>1) << p
            if y == x:
                return x
            x = y
    finally:
        _release(&f)
