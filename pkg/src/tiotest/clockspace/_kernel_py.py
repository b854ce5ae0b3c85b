"""Pure-Python DBM kernels.

A DBM of dimension ``n`` (reference clock at index 0) is a flat int64
``array('q')`` of length ``n * n``; entry ``i * n + j`` bounds ``x_i - x_j``.
Bounds are encoded as ``(c << 1) | weak`` so that integer order is bound
order; ``INF`` is the saturating top element.

Every function here has a twin with the same signature in ``_kernel.pyx``.
"""

INF = 1 << 60
LE_ZERO = 1


def add(a, b):
    if a >= INF or b >= INF:
        return INF
    return a + b - ((a | b) & 1)


def close(d, n):
    """Floyd-Warshall tightening in place; return False if empty."""
    for k in range(n):
        kn = k * n
        for i in range(n):
            in_ = i * n
            dik = d[in_ + k]
            if dik >= INF:
                continue
            for j in range(n):
                dkj = d[kn + j]
                if dkj >= INF:
                    continue
                s = dik + dkj - ((dik | dkj) & 1)
                if s < d[in_ + j]:
                    d[in_ + j] = s
        if d[kn + k] < LE_ZERO:
            return False
    for i in range(n):
        if d[i * n + i] < LE_ZERO:
            return False
    return True


def tighten(d, n, i, j, raw):
    """Conjoin ``x_i - x_j <raw>`` to a canonical DBM, keeping it canonical."""
    if raw >= d[i * n + j]:
        return True
    dji = d[j * n + i]
    if dji < INF and dji + raw - ((dji | raw) & 1) < LE_ZERO:
        return False
    d[i * n + j] = raw
    for k in range(n):
        dki = d[k * n + i]
        if dki >= INF:
            continue
        ki = dki + raw - ((dki | raw) & 1)
        for l in range(n):
            djl = d[j * n + l]
            if djl >= INF:
                continue
            s = ki + djl - ((ki | djl) & 1)
            if s < d[k * n + l]:
                d[k * n + l] = s
    return True


def intersect(d, e, n):
    changed = False
    for k in range(n * n):
        if e[k] < d[k]:
            d[k] = e[k]
            changed = True
    if not changed:
        return True
    return close(d, n)


def is_subset(a, b, n):
    for k in range(n * n):
        if a[k] > b[k]:
            return False
    return True


def up(d, n):
    for i in range(1, n):
        d[i * n] = INF


def down(d, n):
    for i in range(1, n):
        d[i] = LE_ZERO
    close(d, n)


def reset(d, n, k):
    kn = k * n
    for j in range(n):
        d[kn + j] = d[j]
        d[j * n + k] = d[j * n]
    d[kn + k] = LE_ZERO


def free(d, n, k):
    kn = k * n
    for j in range(n):
        if j != k:
            d[kn + j] = INF
            d[j * n + k] = d[j * n]
    d[kn + k] = LE_ZERO


def extrapolate(d, n, m):
    hi = (m << 1) | 1
    lo = (-m) << 1
    changed = False
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = d[i * n + j]
            if v >= INF:
                continue
            if v > hi:
                d[i * n + j] = INF
                changed = True
            elif v < lo:
                d[i * n + j] = lo
                changed = True
    if changed:
        close(d, n)


def hull(d, e, n):
    for k in range(n * n):
        if e[k] > d[k]:
            d[k] = e[k]
