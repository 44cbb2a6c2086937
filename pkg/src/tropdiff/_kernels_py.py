"""Pure-Python monomial and support kernels.

A differential monomial is a tuple of ``(order, var, exp)`` triples sorted
ascending by ``(order, var)`` with every ``exp >= 1``; ``()`` is the monomial 1.
A support entry is ``(finite, l, m)`` where ``finite`` is a sorted tuple and
``m == 0`` means there is no progression part.

``_kernels.pyx`` mirrors this module function for function; keep them in sync.
"""

INF = float("inf")


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        kx, ky = (x[0], x[1]), (y[0], y[1])
        if kx == ky:
            out.append((x[0], x[1], x[2] + y[2]))
            i += 1
            j += 1
        elif kx < ky:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(b, a):
    """Return ``b / a`` or ``None`` when ``a`` does not divide ``b``."""
    if not a:
        return b
    out = []
    j = 0
    nb = len(b)
    for o, v, e in a:
        while j < nb and (b[j][0], b[j][1]) < (o, v):
            out.append(b[j])
            j += 1
        if j == nb or b[j][0] != o or b[j][1] != v or b[j][2] < e:
            return None
        if b[j][2] > e:
            out.append((o, v, b[j][2] - e))
        j += 1
    out.extend(b[j:])
    return tuple(out)


def mono_divides(a, b):
    return mono_div(b, a) is not None


def mono_lcm(a, b):
    ea = {(o, v): e for o, v, e in a}
    for o, v, e in b:
        if ea.get((o, v), 0) < e:
            ea[(o, v)] = e
    return tuple((o, v, e) for (o, v), e in sorted(ea.items()))


def mono_coprime(a, b):
    keys = {(o, v) for o, v, _ in a}
    return not any((o, v) in keys for o, v, _ in b)


def mono_degree(a):
    d = 0
    for _, _, e in a:
        d += e
    return d


def mono_key(a):
    """Sort key of the degree-then-lex order, higher (order, var) ranked first."""
    return (mono_degree(a), tuple(reversed(a)))


def mono_shift(a, k):
    return tuple((o + k, v, e) for o, v, e in a)


def mono_deriv(a):
    """Product-rule expansion of delta(a) as a list of ``(int coeff, monomial)``."""
    out = []
    for idx, (o, v, e) in enumerate(a):
        rest = list(a)
        if e == 1:
            del rest[idx]
        else:
            rest[idx] = (o, v, e - 1)
        out.append((e, mono_mul(tuple(rest), ((o + 1, v, 1),))))
    return out


def val_support(support, j):
    """Distance from ``j`` up to the next support element, or INF."""
    finite, l, m = support
    best = INF
    for s in finite:
        if s >= j:
            best = s - j
            break
    if m:
        if j <= l:
            s = l
        else:
            s = l + -(-(j - l) // m) * m
        if s - j < best:
            best = s - j
    return best


def mono_val(a, supports):
    total = 0
    for o, v, e in a:
        x = val_support(supports[v - 1], o)
        if x == INF:
            return INF
        total += e * x
    return total
