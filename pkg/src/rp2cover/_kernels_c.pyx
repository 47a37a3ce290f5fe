# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation kernels.

Twin of rp2cover._kernels_py with identical call signatures and semantics;
see that module for the documented contracts.  Image tuples hold 1-based
point values, composition is left-to-right.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "c"


cdef int* _alloc(Py_ssize_t n) except NULL:
    cdef int* buf = <int*> PyMem_Malloc(n * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    return buf


cdef void _load(tuple p, int* buf):
    cdef Py_ssize_t i, n = len(p)
    for i in range(n):
        buf[i] = p[i]


def identity(d):
    return tuple(range(1, d + 1))


def compose(tuple p, tuple q):
    """Apply p first, then q."""
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t i
    cdef int* a = _alloc(2 * d)
    cdef int* b = a + d
    try:
        _load(p, a)
        _load(q, b)
        return tuple([b[a[i] - 1] for i in range(d)])
    finally:
        PyMem_Free(a)


def inverse(tuple p):
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t i
    cdef int* a = _alloc(2 * d)
    cdef int* inv = a + d
    try:
        _load(p, a)
        for i in range(d):
            inv[a[i] - 1] = i + 1
        return tuple([inv[i] for i in range(d)])
    finally:
        PyMem_Free(a)


def conjugate(tuple p, tuple lam):
    """lam * p * lam^-1 under left-to-right composition."""
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t i
    cdef int* a = _alloc(3 * d)
    cdef int* l = a + d
    cdef int* linv = a + 2 * d
    try:
        _load(p, a)
        _load(lam, l)
        for i in range(d):
            linv[l[i] - 1] = i + 1
        return tuple([linv[a[l[i] - 1] - 1] for i in range(d)])
    finally:
        PyMem_Free(a)


def product_of(perms, Py_ssize_t d):
    """Left-to-right product of a sequence of image tuples."""
    cdef Py_ssize_t n = len(perms)
    cdef Py_ssize_t i, k
    cdef int* cur = _alloc(2 * d)
    cdef int* g = cur + d
    cdef tuple p
    try:
        for i in range(d):
            cur[i] = i + 1
        for k in range(n):
            p = perms[k]
            _load(p, g)
            for i in range(d):
                cur[i] = g[cur[i] - 1]
        return tuple([cur[i] for i in range(d)])
    finally:
        PyMem_Free(cur)


def cycles_of(tuple p):
    """Disjoint cycles, min point first, ordered by minimal point."""
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t s
    cdef int x
    cdef int* a = _alloc(2 * d)
    cdef int* seen = a + d
    cdef list out = []
    cdef list cyc
    try:
        _load(p, a)
        for s in range(d):
            seen[s] = 0
        for s in range(d):
            if seen[s]:
                continue
            cyc = [s + 1]
            seen[s] = 1
            x = a[s]
            while x != s + 1:
                cyc.append(x)
                seen[x - 1] = 1
                x = a[x - 1]
            out.append(tuple(cyc))
        return tuple(out)
    finally:
        PyMem_Free(a)


def cycle_lengths(tuple p):
    """Cycle lengths in non-increasing order, 1-cycles included."""
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t s
    cdef int x, n
    cdef int* a = _alloc(2 * d)
    cdef int* seen = a + d
    cdef list out = []
    try:
        _load(p, a)
        for s in range(d):
            seen[s] = 0
        for s in range(d):
            if seen[s]:
                continue
            n = 1
            seen[s] = 1
            x = a[s]
            while x != s + 1:
                n += 1
                seen[x - 1] = 1
                x = a[x - 1]
            out.append(n)
        out.sort(reverse=True)
        return tuple(out)
    finally:
        PyMem_Free(a)


def is_square_type(tuple p):
    """True iff p has an even number of cycles of every even length."""
    cdef Py_ssize_t d = len(p)
    cdef Py_ssize_t s
    cdef int x, n
    cdef int* a = _alloc(3 * d)
    cdef int* seen = a + d
    cdef int* evens = a + 2 * d  # parity of count per even length, index n/2-1
    try:
        _load(p, a)
        for s in range(d):
            seen[s] = 0
            evens[s] = 0
        for s in range(d):
            if seen[s]:
                continue
            n = 1
            seen[s] = 1
            x = a[s]
            while x != s + 1:
                n += 1
                seen[x - 1] = 1
                x = a[x - 1]
            if n % 2 == 0:
                evens[n // 2 - 1] ^= 1
        for s in range(d):
            if evens[s]:
                return False
        return True
    finally:
        PyMem_Free(a)


cdef int _find(int* parent, int x) nogil:
    cdef int root = x
    while parent[root] != root:
        root = parent[root]
    cdef int nxt
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef int* _labels_buf(gens, Py_ssize_t d) except NULL:
    """Compute orbit labels (minimal point of each orbit) into a fresh buffer.

    Entry i (0-based) holds the 1-based minimal point of the orbit of i+1.
    Caller frees.
    """
    cdef int* parent = _alloc(2 * d + 2)
    cdef int* g = parent + d + 1
    cdef Py_ssize_t i
    cdef int x, rx, ry
    cdef tuple gt
    for i in range(d + 1):
        parent[i] = <int> i
    for gt in gens:
        _load(gt, g)
        for x in range(1, <int> d + 1):
            rx = _find(parent, x)
            ry = _find(parent, g[x - 1])
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    cdef int* labels = _alloc(d)
    for i in range(d):
        labels[i] = _find(parent, <int> i + 1)
    PyMem_Free(parent)
    return labels


def component_labels(gens, d):
    """Orbit labels: entry i is the minimal point of the orbit of point i+1."""
    cdef int* labels = _labels_buf(gens, d)
    cdef Py_ssize_t i
    try:
        return tuple([labels[i] for i in range(d)])
    finally:
        PyMem_Free(labels)


def orbit_count(gens, d):
    cdef int* labels = _labels_buf(gens, d)
    cdef Py_ssize_t i
    cdef int n = 0
    try:
        for i in range(d):
            if labels[i] == i + 1:
                n += 1
        return n
    finally:
        PyMem_Free(labels)


def is_transitive(gens, d):
    return orbit_count(gens, d) == 1


def orbits(gens, d):
    labels = component_labels(gens, d)
    buckets = {}
    for x in range(1, d + 1):
        buckets.setdefault(labels[x - 1], []).append(x)
    return tuple(tuple(buckets[k]) for k in sorted(buckets))


def alpha_extension(labels, alpha, d):
    """(transitive, orientable) after adding alpha edges on top of labels.

    See the pure-Python twin for the full contract.
    """
    cdef Py_ssize_t dd = d
    cdef int* buf = _alloc(5 * dd + 2)
    cdef int* lab = buf
    cdef int* al = buf + dd
    cdef int* index = buf + 2 * dd  # label value (1-based) -> dense id, -1 unseen
    cdef int* parent = buf + 3 * dd + 1
    cdef int* par = buf + 4 * dd + 1
    cdef Py_ssize_t i
    cdef int n = 0, x, a, b, ra, rb, pa, pb, comps
    cdef bint consistent = True
    try:
        _load(tuple(labels), lab)
        _load(tuple(alpha), al)
        for i in range(dd + 1):
            index[i] = -1
        for i in range(dd):
            if index[lab[i]] < 0:
                index[lab[i]] = n
                n += 1
        for i in range(n):
            parent[i] = <int> i
            par[i] = 0
        comps = n
        for x in range(<int> dd):
            a = index[lab[x]]
            b = index[lab[al[x] - 1]]
            ra = a
            pa = 0
            while parent[ra] != ra:
                pa ^= par[ra]
                ra = parent[ra]
            rb = b
            pb = 0
            while parent[rb] != rb:
                pb ^= par[rb]
                rb = parent[rb]
            if ra == rb:
                if pa == pb:
                    consistent = False
            else:
                parent[rb] = ra
                par[rb] = pa ^ pb ^ 1
                comps -= 1
        return comps == 1, consistent
    finally:
        PyMem_Free(buf)


def orientation_consistent(alpha, gammas, d):
    """True iff sheet orientations extend consistently (orientable total space)."""
    if gammas:
        labels = component_labels(gammas, d)
    else:
        labels = tuple(range(1, d + 1))
    _, consistent = alpha_extension(labels, alpha, d)
    return consistent


def minimal_block(gens, d, x, y):
    """Minimal block containing x and y for a transitive group (sorted tuple)."""
    cdef Py_ssize_t dd = d
    cdef Py_ssize_t ng = len(gens)
    cdef int* buf = _alloc(dd + 1 + ng * dd + 2 * (dd + 1))
    cdef int* parent = buf
    cdef int* gflat = buf + dd + 1
    cdef int* stack = gflat + ng * dd  # pairs, capacity d+1 merges
    cdef Py_ssize_t i, k
    cdef int a, b, ra, rb, top, rx
    cdef tuple gt
    cdef list out = []
    try:
        for i in range(dd + 1):
            parent[i] = <int> i
        for k in range(ng):
            gt = gens[k]
            for i in range(dd):
                gflat[k * dd + i] = gt[i]
        top = 0
        ra = _find(parent, x)
        rb = _find(parent, y)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
            stack[2 * top] = ra
            stack[2 * top + 1] = rb
            top += 1
        while top > 0:
            top -= 1
            a = stack[2 * top]
            b = stack[2 * top + 1]
            for k in range(ng):
                ra = _find(parent, gflat[k * dd + a - 1])
                rb = _find(parent, gflat[k * dd + b - 1])
                if ra != rb:
                    if rb < ra:
                        ra, rb = rb, ra
                    parent[rb] = ra
                    stack[2 * top] = ra
                    stack[2 * top + 1] = rb
                    top += 1
        rx = _find(parent, x)
        for i in range(1, dd + 1):
            if _find(parent, <int> i) == rx:
                out.append(i)
        return tuple(out)
    finally:
        PyMem_Free(buf)
