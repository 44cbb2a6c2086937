# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial and support kernels; mirrors ``_kernels_py`` exactly."""

INF = float("inf")


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple x, y
    cdef long ox, vx, oy, vy
    if na == 0:
        return b
    if nb == 0:
        return a
    out = []
    while i < na and j < nb:
        x = <tuple>a[i]
        y = <tuple>b[j]
        ox = x[0]; vx = x[1]; oy = y[0]; vy = y[1]
        if ox == oy and vx == vy:
            out.append((x[0], x[1], x[2] + y[2]))
            i += 1
            j += 1
        elif ox < oy or (ox == oy and vx < vy):
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef object mono_div(tuple b, tuple a):
    """Return ``b / a`` or ``None`` when ``a`` does not divide ``b``."""
    cdef Py_ssize_t j = 0, nb = len(b), k, na = len(a)
    cdef tuple f, g
    cdef long o, v, e, ob, vb, eb
    if na == 0:
        return b
    out = []
    for k in range(na):
        f = <tuple>a[k]
        o = f[0]; v = f[1]; e = f[2]
        while j < nb:
            g = <tuple>b[j]
            ob = g[0]; vb = g[1]
            if ob < o or (ob == o and vb < v):
                out.append(g)
                j += 1
            else:
                break
        if j == nb:
            return None
        g = <tuple>b[j]
        ob = g[0]; vb = g[1]; eb = g[2]
        if ob != o or vb != v or eb < e:
            return None
        if eb > e:
            out.append((g[0], g[1], eb - e))
        j += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef bint mono_divides(tuple a, tuple b):
    return mono_div(b, a) is not None


cpdef tuple mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple x, y
    cdef long ox, vx, oy, vy
    out = []
    while i < na and j < nb:
        x = <tuple>a[i]
        y = <tuple>b[j]
        ox = x[0]; vx = x[1]; oy = y[0]; vy = y[1]
        if ox == oy and vx == vy:
            out.append(x if x[2] >= y[2] else y)
            i += 1
            j += 1
        elif ox < oy or (ox == oy and vx < vy):
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef bint mono_coprime(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple x, y
    cdef long ox, vx, oy, vy
    while i < na and j < nb:
        x = <tuple>a[i]
        y = <tuple>b[j]
        ox = x[0]; vx = x[1]; oy = y[0]; vy = y[1]
        if ox == oy and vx == vy:
            return False
        if ox < oy or (ox == oy and vx < vy):
            i += 1
        else:
            j += 1
    return True


cpdef long mono_degree(tuple a):
    cdef long d = 0
    cdef tuple f
    for f in a:
        d += <long>f[2]
    return d


cpdef tuple mono_key(tuple a):
    """Sort key of the degree-then-lex order, higher (order, var) ranked first."""
    return (mono_degree(a), a[::-1])


cpdef tuple mono_shift(tuple a, long k):
    cdef tuple f
    return tuple([(f[0] + k, f[1], f[2]) for f in a])


cpdef list mono_deriv(tuple a):
    """Product-rule expansion of delta(a) as a list of ``(int coeff, monomial)``."""
    cdef Py_ssize_t idx, n = len(a)
    cdef tuple f
    cdef long e
    out = []
    for idx in range(n):
        f = <tuple>a[idx]
        e = f[2]
        rest = list(a)
        if e == 1:
            del rest[idx]
        else:
            rest[idx] = (f[0], f[1], e - 1)
        out.append((e, mono_mul(tuple(rest), ((f[0] + 1, f[1], 1),))))
    return out


cpdef object val_support(tuple support, long j):
    """Distance from ``j`` up to the next support element, or INF."""
    cdef tuple finite = support[0]
    cdef long l = support[1], m = support[2], s, best = -1
    for x in finite:
        s = x
        if s >= j:
            best = s - j
            break
    if m:
        if j <= l:
            s = l
        else:
            s = l + ((j - l + m - 1) // m) * m
        if best < 0 or s - j < best:
            best = s - j
    if best < 0:
        return INF
    return best


cpdef object mono_val(tuple a, tuple supports):
    cdef long total = 0
    cdef tuple f
    for f in a:
        x = val_support(<tuple>supports[<long>f[1] - 1], f[0])
        if x == INF:
            return INF
        total += <long>f[2] * <long>x
    return total
