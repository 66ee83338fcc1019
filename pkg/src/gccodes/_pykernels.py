"""Pure-Python GF(2^b) kernels.

Mirror of ``_ckernels.pyx``: same functions, same arguments, same results.
Matrices arrive as 2-D int64 numpy arrays; ``exp`` has length 2*order so
``exp[log[a] + log[b]]`` needs no reduction, ``log[0]`` is unused.
Work is done on Python lists, results go back as int64 arrays.
"""

import numpy as np

OK = 0
RANK_DEFICIENT = 1
INCONSISTENT = 2
OVER_BUDGET = 1
SINGULAR = 2


def _tables(exp, log):
    return (exp.tolist() if hasattr(exp, "tolist") else list(exp),
            log.tolist() if hasattr(log, "tolist") else list(log))


def _eliminate(rows, ncols, exp, log, order, pivot_cols=None):
    """In-place Gauss-Jordan on ``rows``; returns the pivot columns found.

    With ``pivot_cols`` set, only those columns are pivoted and elimination
    stops at the first column lacking a pivot (returned list is short).
    """
    nrows = len(rows)
    pivots = []
    r = 0
    cols = range(ncols) if pivot_cols is None else pivot_cols
    for c in cols:
        if r == nrows:
            break
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            if pivot_cols is not None:
                break
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv_log = order - log[prow[c]]
        if inv_log != order:
            prow[:] = [exp[log[x] + inv_log] if x else 0 for x in prow]
        plog = [log[x] if x else -1 for x in prow]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            lf = log[f]
            for k in range(len(row)):
                lk = plog[k]
                if lk >= 0:
                    row[k] ^= exp[lf + lk]
        pivots.append(c)
        r += 1
    return pivots


def rank(a, exp, log, order):
    exp, log = _tables(exp, log)
    rows = np.asarray(a, dtype=np.int64).tolist()
    ncols = len(rows[0]) if rows else 0
    return len(_eliminate(rows, ncols, exp, log, order))


def solve(a, b, exp, log, order):
    """Unique solution of ``a x = b`` (``a`` may be tall).

    Returns ``(status, x)`` with status OK, RANK_DEFICIENT or INCONSISTENT.
    """
    exp, log = _tables(exp, log)
    a = np.asarray(a, dtype=np.int64)
    nrows, ncols = a.shape
    rows = [r + [int(v)] for r, v in zip(a.tolist(), np.asarray(b).tolist())]
    pivots = _eliminate(rows, ncols, exp, log, order)
    if len(pivots) < ncols:
        return RANK_DEFICIENT, None
    for i in range(ncols, nrows):
        if rows[i][ncols]:
            return INCONSISTENT, None
    return OK, np.array([rows[i][ncols] for i in range(ncols)], dtype=np.int64)


def upper_unit(a, exp, log, order):
    """Row-reduce a k x m matrix (k <= m) to upper triangular with unit diagonal.

    Only the leading k columns are pivoted and only rows below the pivot are
    cleared.  Returns ``(status, reduced, transform)``; transform @ a == reduced.
    """
    exp, log = _tables(exp, log)
    a = np.asarray(a, dtype=np.int64)
    k, m = a.shape
    rows = [row + [int(i == j) for j in range(k)] for i, row in enumerate(a.tolist())]
    for i in range(k):
        p = i
        while p < k and rows[p][i] == 0:
            p += 1
        if p == k:
            return RANK_DEFICIENT, None, None
        rows[i], rows[p] = rows[p], rows[i]
        prow = rows[i]
        inv_log = order - log[prow[i]]
        if inv_log != order:
            prow[:] = [exp[log[x] + inv_log] if x else 0 for x in prow]
        for q in range(i + 1, k):
            row = rows[q]
            f = row[i]
            if f == 0:
                continue
            lf = log[f]
            for c in range(len(row)):
                x = prow[c]
                if x:
                    row[c] ^= exp[lf + log[x]]
    out = np.array(rows, dtype=np.int64).reshape(k, m + k)
    return OK, out[:, :m].copy(), out[:, m:].copy()


def matvec(a, x, exp, log, order):
    exp, log = _tables(exp, log)
    xs = [log[v] if v else -1 for v in np.asarray(x).tolist()]
    out = []
    for row in np.asarray(a, dtype=np.int64).tolist():
        acc = 0
        for v, lx in zip(row, xs):
            if v and lx >= 0:
                acc ^= exp[log[v] + lx]
        out.append(acc)
    return np.array(out, dtype=np.int64)


def first_dependent(h, w, exp, log, order):
    """Lexicographically first set of ``w`` linearly dependent columns of ``h``.

    Depth-first over combinations, keeping a reduced basis of the current
    prefix so each leaf costs one reduction.  Returns a tuple or None.
    """
    exp, log = _tables(exp, log)
    h = np.asarray(h, dtype=np.int64)
    nrows, ncols = h.shape
    if w < 1 or w > ncols:
        return None
    cols = h.T.tolist()
    basis = []
    chosen = []

    def reduce(v):
        v = list(v)
        for piv, vec in basis:
            f = v[piv]
            if f:
                lf = log[f]
                for r, x in enumerate(vec):
                    if x:
                        v[r] ^= exp[lf + log[x]]
        return v

    def dfs(start, remaining):
        for c in range(start, ncols - remaining + 1):
            v = reduce(cols[c])
            nz = next((r for r, x in enumerate(v) if x), None)
            if nz is None:
                return tuple(chosen) + tuple(range(c, c + remaining))
            if remaining == 1:
                continue
            inv_log = order - log[v[nz]]
            if inv_log != order:
                v = [exp[log[x] + inv_log] if x else 0 for x in v]
            basis.append((nz, v))
            chosen.append(c)
            found = dfs(c + 1, remaining - 1)
            if found is not None:
                return found
            basis.pop()
            chosen.pop()
        return None

    return dfs(0, w)


def sequential_decode(v, erased, local, budgets, u0, upper, exp, log, order):
    """Row-by-row erasure fill of a row-sorted array.

    ``v`` (m x n) has erased cells zeroed, ``erased`` is the m x n mask,
    ``local`` = H(u_max, n; 0), ``budgets[j]`` the syndrome count of sorted
    row j, ``upper`` the reduced (s1 x m) coefficient matrix.  Returns
    ``(status, filled, row)`` where row is the failing row on error.
    """
    exp, log = _tables(exp, log)
    v = np.asarray(v, dtype=np.int64).tolist()
    mask = np.asarray(erased).tolist()
    local = np.asarray(local, dtype=np.int64).tolist()
    upper = np.asarray(upper, dtype=np.int64).tolist()
    budgets = list(budgets)
    m = len(v)
    umax = len(local)
    s1 = len(upper)
    llog = [[log[x] if x else -1 for x in row] for row in local]

    def row_dot(p, row):
        acc = 0
        for lx, x in zip(llog[p], row):
            if x:
                acc ^= exp[lx + log[x]]
        return acc

    proj = [[row_dot(p, v[j]) for j in range(m)] for p in range(umax)]
    synd = []
    for j in range(m):
        group = [proj[p][j] for p in range(u0)]
        for p in range(u0, budgets[j]):
            acc = 0
            for jj in range(j, m):
                coef = upper[j][jj]
                x = proj[p][jj]
                if coef and x:
                    acc ^= exp[log[coef] + log[x]]
            group.append(acc)
        synd.append(group)

    for j in range(m - 1, -1, -1):
        cols = [c for c, e in enumerate(mask[j]) if e]
        e = len(cols)
        if e == 0:
            continue
        if e > budgets[j]:
            return OVER_BUDGET, None, j
        a = np.array([[local[p][c] for c in cols] for p in range(e)], dtype=np.int64)
        status, x = solve(a, synd[j][:e], exp, log, order)
        if status != OK:
            return SINGULAR, None, j
        x = x.tolist()
        row = v[j]
        for c, val in zip(cols, x):
            row[c] = val
        if j == 0:
            break
        contrib = [0] * umax
        for p in range(u0, umax):
            acc = 0
            for c, val in zip(cols, x):
                lx = llog[p][c]
                if val and lx >= 0:
                    acc ^= exp[lx + log[val]]
            contrib[p] = acc
        for k in range(min(j, s1)):
            coef = upper[k][j]
            if coef == 0:
                continue
            lc = log[coef]
            group = synd[k]
            for p in range(u0, budgets[k]):
                if contrib[p]:
                    group[p] ^= exp[lc + log[contrib[p]]]
    return OK, np.array(v, dtype=np.int64), -1
