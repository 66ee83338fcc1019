# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2^b) kernels; see _pykernels.py for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cnp.import_array()

ctypedef long long i64

cdef enum:
    OK = 0
    RANK_DEFICIENT = 1
    INCONSISTENT = 2
    OVER_BUDGET = 1
    SINGULAR = 2


cdef inline i64 gmul(i64 a, i64 b, const i64* ex, const i64* lg) nogil:
    if a == 0 or b == 0:
        return 0
    return ex[lg[a] + lg[b]]


cdef inline i64 ginv(i64 a, const i64* ex, const i64* lg, i64 order) nogil:
    return ex[order - lg[a]]


cdef inline void scale_row(i64* row, Py_ssize_t ncols, i64 f,
                           const i64* ex, const i64* lg) nogil:
    cdef Py_ssize_t k
    for k in range(ncols):
        if row[k]:
            row[k] = ex[lg[row[k]] + lg[f]]


cdef inline void axpy_row(i64* dst, const i64* src, Py_ssize_t ncols, i64 f,
                          const i64* ex, const i64* lg) nogil:
    # dst ^= f * src
    cdef Py_ssize_t k
    cdef i64 lf = lg[f]
    for k in range(ncols):
        if src[k]:
            dst[k] ^= ex[lf + lg[src[k]]]


cdef inline void swap_rows(i64* a, Py_ssize_t r1, Py_ssize_t r2, Py_ssize_t ncols) nogil:
    cdef Py_ssize_t k
    cdef i64 t
    if r1 == r2:
        return
    for k in range(ncols):
        t = a[r1 * ncols + k]
        a[r1 * ncols + k] = a[r2 * ncols + k]
        a[r2 * ncols + k] = t


cdef Py_ssize_t gauss_jordan(i64* a, Py_ssize_t nrows, Py_ssize_t ncols,
                             Py_ssize_t npivcols, const i64* ex, const i64* lg,
                             i64 order) nogil:
    # full reduction over the first npivcols columns; returns rank
    cdef Py_ssize_t r = 0, c, p, i
    cdef i64 f
    for c in range(npivcols):
        if r == nrows:
            break
        p = r
        while p < nrows and a[p * ncols + c] == 0:
            p += 1
        if p == nrows:
            continue
        swap_rows(a, r, p, ncols)
        f = a[r * ncols + c]
        if f != 1:
            scale_row(a + r * ncols, ncols, ginv(f, ex, lg, order), ex, lg)
        for i in range(nrows):
            if i != r:
                f = a[i * ncols + c]
                if f:
                    axpy_row(a + i * ncols, a + r * ncols, ncols, f, ex, lg)
        r += 1
    return r


def rank(a, exp, log, i64 order):
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = np.array(a, dtype=np.int64, order="C", ndmin=2)
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Py_ssize_t nrows = work.shape[0], ncols = work.shape[1]
    if nrows == 0 or ncols == 0:
        return 0
    return gauss_jordan(<i64*> work.data, nrows, ncols, ncols, &ex[0], &lg[0], order)


def solve(a, b, exp, log, i64 order):
    a = np.asarray(a, dtype=np.int64)
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1], i
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = np.empty((nrows, ncols + 1), dtype=np.int64)
    work[:, :ncols] = a
    work[:, ncols] = np.asarray(b, dtype=np.int64)
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef i64* w = <i64*> work.data
    cdef Py_ssize_t r = gauss_jordan(w, nrows, ncols + 1, ncols, &ex[0], &lg[0], order)
    if r < ncols:
        return RANK_DEFICIENT, None
    for i in range(ncols, nrows):
        if w[i * (ncols + 1) + ncols]:
            return INCONSISTENT, None
    return OK, work[:ncols, ncols].copy()


def upper_unit(a, exp, log, i64 order):
    a = np.asarray(a, dtype=np.int64)
    cdef Py_ssize_t k = a.shape[0], m = a.shape[1], i, p, q
    cdef Py_ssize_t nc = m + k
    cdef cnp.ndarray[i64, ndim=2, mode="c"] work = np.zeros((k, nc), dtype=np.int64)
    work[:, :m] = a
    for i in range(k):
        work[i, m + i] = 1
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef i64* w = <i64*> work.data
    cdef i64 f
    for i in range(k):
        p = i
        while p < k and w[p * nc + i] == 0:
            p += 1
        if p == k:
            return RANK_DEFICIENT, None, None
        swap_rows(w, i, p, nc)
        f = w[i * nc + i]
        if f != 1:
            scale_row(w + i * nc, nc, ginv(f, &ex[0], &lg[0], order), &ex[0], &lg[0])
        for q in range(i + 1, k):
            f = w[q * nc + i]
            if f:
                axpy_row(w + q * nc, w + i * nc, nc, f, &ex[0], &lg[0])
    return OK, work[:, :m].copy(), work[:, m:].copy()


def matvec(a, x, exp, log, i64 order):
    cdef const i64[:, ::1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef const i64[::1] X = np.ascontiguousarray(x, dtype=np.int64)
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Py_ssize_t nrows = A.shape[0], ncols = A.shape[1], i, c
    out = np.zeros(nrows, dtype=np.int64)
    cdef i64[::1] o = out
    cdef i64 acc
    for i in range(nrows):
        acc = 0
        for c in range(ncols):
            acc ^= gmul(A[i, c], X[c], &ex[0], &lg[0])
        o[i] = acc
    return out


cdef int dfs_dependent(const i64* cols, Py_ssize_t nrows, Py_ssize_t ncols,
                       Py_ssize_t start, Py_ssize_t depth, Py_ssize_t w,
                       i64* basis, Py_ssize_t* pivots, Py_ssize_t* chosen,
                       const i64* ex, const i64* lg, i64 order) nogil:
    # basis row d holds the reduced, normalised d-th prefix column
    cdef Py_ssize_t remaining = w - depth, c, d, r, nz, k
    cdef i64* v = basis + depth * nrows
    cdef i64 f
    for c in range(start, ncols - remaining + 1):
        memcpy(v, cols + c * nrows, nrows * sizeof(i64))
        for d in range(depth):
            f = v[pivots[d]]
            if f:
                axpy_row(v, basis + d * nrows, nrows, f, ex, lg)
        nz = -1
        for r in range(nrows):
            if v[r]:
                nz = r
                break
        if nz < 0:
            for k in range(remaining):
                chosen[depth + k] = c + k
            return 1
        if remaining == 1:
            continue
        if v[nz] != 1:
            scale_row(v, nrows, ginv(v[nz], ex, lg, order), ex, lg)
        pivots[depth] = nz
        chosen[depth] = c
        if dfs_dependent(cols, nrows, ncols, c + 1, depth + 1, w,
                         basis, pivots, chosen, ex, lg, order):
            return 1
    return 0


def first_dependent(h, Py_ssize_t w, exp, log, i64 order):
    h = np.asarray(h, dtype=np.int64)
    cdef Py_ssize_t nrows = h.shape[0], ncols = h.shape[1], k
    if w < 1 or w > ncols:
        return None
    cdef const i64[:, ::1] colmajor = np.ascontiguousarray(h.T)
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef i64* basis = <i64*> malloc(max(w * nrows, 1) * sizeof(i64))
    cdef Py_ssize_t* pivots = <Py_ssize_t*> malloc(w * sizeof(Py_ssize_t))
    cdef Py_ssize_t* chosen = <Py_ssize_t*> malloc(w * sizeof(Py_ssize_t))
    cdef int found
    if basis == NULL or pivots == NULL or chosen == NULL:
        free(basis); free(pivots); free(chosen)
        raise MemoryError()
    try:
        if nrows == 0:
            # every column is the zero vector
            return tuple(range(w))
        with nogil:
            found = dfs_dependent(&colmajor[0, 0], nrows, ncols, 0, 0, w,
                                  basis, pivots, chosen, &ex[0], &lg[0], order)
        if not found:
            return None
        return tuple(chosen[k] for k in range(w))
    finally:
        free(basis)
        free(pivots)
        free(chosen)


cdef int seq_core(i64* V, const unsigned char* mask, Py_ssize_t m, Py_ssize_t n,
                  const i64* L, Py_ssize_t umax, const i64* bud, Py_ssize_t u0,
                  const i64* U, Py_ssize_t s1, i64* P, i64* S, i64* R,
                  Py_ssize_t* cl, i64* A, Py_ssize_t* fail_row,
                  const i64* X, const i64* G, i64 order) nogil:
    cdef Py_ssize_t j, jj, p, c, k, e
    cdef i64 acc, coef
    for p in range(umax):
        for j in range(m):
            acc = 0
            for c in range(n):
                acc ^= gmul(L[p * n + c], V[j * n + c], X, G)
            P[p * m + j] = acc
    for j in range(m):
        for p in range(u0):
            S[j * umax + p] = P[p * m + j]
        for p in range(u0, bud[j]):
            acc = 0
            for jj in range(j, m):
                acc ^= gmul(U[j * m + jj], P[p * m + jj], X, G)
            S[j * umax + p] = acc

    for j in range(m - 1, -1, -1):
        e = 0
        for c in range(n):
            if mask[j * n + c]:
                cl[e] = c
                e += 1
        if e == 0:
            continue
        if e > bud[j]:
            fail_row[0] = j
            return OVER_BUDGET
        for p in range(e):
            for k in range(e):
                A[p * (e + 1) + k] = L[p * n + cl[k]]
            A[p * (e + 1) + e] = S[j * umax + p]
        if gauss_jordan(A, e, e + 1, e, X, G, order) < e:
            fail_row[0] = j
            return SINGULAR
        for k in range(e):
            V[j * n + cl[k]] = A[k * (e + 1) + e]
        if j == 0:
            break
        for p in range(u0, umax):
            acc = 0
            for k in range(e):
                acc ^= gmul(L[p * n + cl[k]], V[j * n + cl[k]], X, G)
            R[p] = acc
        for k in range(min(j, s1)):
            coef = U[k * m + j]
            if coef == 0:
                continue
            for p in range(u0, bud[k]):
                S[k * umax + p] ^= gmul(coef, R[p], X, G)
    return OK


def sequential_decode(v, erased, local, budgets, Py_ssize_t u0, upper, exp, log, i64 order):
    cdef cnp.ndarray[i64, ndim=2, mode="c"] out = np.array(v, dtype=np.int64, order="C", ndmin=2)
    cdef Py_ssize_t m = out.shape[0], n = out.shape[1]
    cdef const unsigned char[:, ::1] mask = np.ascontiguousarray(erased, dtype=np.uint8).reshape(m, n)
    local_arr = np.ascontiguousarray(local, dtype=np.int64)
    cdef Py_ssize_t umax = local_arr.shape[0]
    cdef const i64[:, ::1] L = local_arr.reshape(umax, n)
    cdef const i64[::1] bud = np.ascontiguousarray(budgets, dtype=np.int64)
    cdef const i64[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const i64[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    upper_arr = np.ascontiguousarray(upper, dtype=np.int64)
    cdef Py_ssize_t s1 = upper_arr.shape[0] if upper_arr.size else 0
    upper_arr = np.ascontiguousarray(upper_arr.reshape(s1, m)) if s1 else np.zeros((1, m), dtype=np.int64)
    cdef const i64[:, ::1] U = upper_arr
    cdef i64[:, ::1] V = out
    cdef Py_ssize_t big = max(umax, 1)
    cdef i64[:, ::1] P = np.zeros((big, m), dtype=np.int64)
    cdef i64[:, ::1] S = np.zeros((m, big), dtype=np.int64)
    cdef i64[::1] R = np.zeros(big, dtype=np.int64)
    cdef Py_ssize_t[::1] cl = np.zeros(n, dtype=np.intp)
    cdef i64[::1] A = np.zeros(big * (big + 1), dtype=np.int64)
    cdef Py_ssize_t fail_row = -1
    cdef int status
    with nogil:
        status = seq_core(&V[0, 0], &mask[0, 0], m, n, &L[0, 0], umax, &bud[0], u0,
                          &U[0, 0], s1, &P[0, 0], &S[0, 0], &R[0], &cl[0], &A[0],
                          &fail_row, &ex[0], &lg[0], order)
    if status != OK:
        return status, None, fail_row
    return OK, out, -1
