# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DBM kernels; same contract as ``_kernel_py``."""

cdef long long INF_ = 1LL << 60
cdef long long LEZ = 1

INF = INF_
LE_ZERO = LEZ


cdef inline long long _add(long long a, long long b) nogil:
    if a >= INF_ or b >= INF_:
        return INF_
    return a + b - ((a | b) & 1)


def add(long long a, long long b):
    return _add(a, b)


cdef bint _close(long long[::1] d, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j, k
    cdef long long dik, dkj, s
    for k in range(n):
        for i in range(n):
            dik = d[i * n + k]
            if dik >= INF_:
                continue
            for j in range(n):
                dkj = d[k * n + j]
                if dkj >= INF_:
                    continue
                s = dik + dkj - ((dik | dkj) & 1)
                if s < d[i * n + j]:
                    d[i * n + j] = s
        if d[k * n + k] < LEZ:
            return False
    for i in range(n):
        if d[i * n + i] < LEZ:
            return False
    return True


def close(long long[::1] d, Py_ssize_t n):
    return _close(d, n)


def tighten(long long[::1] d, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j, long long raw):
    cdef Py_ssize_t k, l
    cdef long long dji, dki, ki, djl, s
    if raw >= d[i * n + j]:
        return True
    dji = d[j * n + i]
    if dji < INF_ and dji + raw - ((dji | raw) & 1) < LEZ:
        return False
    d[i * n + j] = raw
    for k in range(n):
        dki = d[k * n + i]
        if dki >= INF_:
            continue
        ki = dki + raw - ((dki | raw) & 1)
        for l in range(n):
            djl = d[j * n + l]
            if djl >= INF_:
                continue
            s = ki + djl - ((ki | djl) & 1)
            if s < d[k * n + l]:
                d[k * n + l] = s
    return True


def intersect(long long[::1] d, long long[::1] e, Py_ssize_t n):
    cdef Py_ssize_t k
    cdef bint changed = False
    for k in range(n * n):
        if e[k] < d[k]:
            d[k] = e[k]
            changed = True
    if not changed:
        return True
    return _close(d, n)


def is_subset(long long[::1] a, long long[::1] b, Py_ssize_t n):
    cdef Py_ssize_t k
    for k in range(n * n):
        if a[k] > b[k]:
            return False
    return True


def up(long long[::1] d, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(1, n):
        d[i * n] = INF_


def down(long long[::1] d, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(1, n):
        d[i] = LEZ
    _close(d, n)


def reset(long long[::1] d, Py_ssize_t n, Py_ssize_t k):
    cdef Py_ssize_t j
    for j in range(n):
        d[k * n + j] = d[j]
        d[j * n + k] = d[j * n]
    d[k * n + k] = LEZ


def free(long long[::1] d, Py_ssize_t n, Py_ssize_t k):
    cdef Py_ssize_t j
    for j in range(n):
        if j != k:
            d[k * n + j] = INF_
            d[j * n + k] = d[j * n]
    d[k * n + k] = LEZ


def extrapolate(long long[::1] d, Py_ssize_t n, long long m):
    cdef long long hi = (m << 1) | 1
    cdef long long lo = (-m) * 2
    cdef bint changed = False
    cdef Py_ssize_t i, j
    cdef long long v
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = d[i * n + j]
            if v >= INF_:
                continue
            if v > hi:
                d[i * n + j] = INF_
                changed = True
            elif v < lo:
                d[i * n + j] = lo
                changed = True
    if changed:
        _close(d, n)


def hull(long long[::1] d, long long[::1] e, Py_ssize_t n):
    cdef Py_ssize_t k
    for k in range(n * n):
        if e[k] > d[k]:
            d[k] = e[k]
