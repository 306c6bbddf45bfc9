"""Pure-Python Smith reduction kernel.

This is the reference implementation of the elimination loop. The compiled
module ``autz._snf`` runs the identical sequence of operations on int64
storage and must agree with this one entry for entry.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _find_pivot(A, t, m, n):
    best = 0
    pos = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            a = row[j]
            if a:
                if a < 0:
                    a = -a
                if pos is None or a < best:
                    best = a
                    pos = (i, j)
                    if a == 1:
                        return pos
    return pos


def _nearest_quotient(a, p):
    # quotient leaving the remainder of least absolute value, ties toward floor
    q = a // p
    r = a - q * p
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _swap_cols(M, j1, j2):
    for row in M:
        row[j1], row[j2] = row[j2], row[j1]


def snf_reduce(A, track_u=False, track_v=True):
    """Reduce ``A`` (list of row lists, modified in place) to Smith form.

    Returns ``(A, U, V)`` with ``U @ A_in @ V == A`` diagonal; ``U`` / ``V``
    are ``None`` when not tracked.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if track_u else None
    V = _identity(n) if track_v else None
    t = 0
    while t < m and t < n:
        pos = _find_pivot(A, t, m, n)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            if U is not None:
                U[t], U[pi] = U[pi], U[t]
        if pj != t:
            _swap_cols(A, t, pj)
            if V is not None:
                _swap_cols(V, t, pj)
        while True:
            done = True
            rt = A[t]
            # clear column t with row operations
            for i in range(t + 1, m):
                ri = A[i]
                a = ri[t]
                if a:
                    q = _nearest_quotient(a, rt[t])
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if U is not None:
                        ut = U[t]
                        ui = U[i]
                        for j in range(m):
                            if ut[j]:
                                ui[j] -= q * ut[j]
                    if ri[t]:
                        done = False
            # clear row t with column operations
            for j in range(t + 1, n):
                a = rt[j]
                if a:
                    q = _nearest_quotient(a, rt[t])
                    for i in range(t, m):
                        ri = A[i]
                        if ri[t]:
                            ri[j] -= q * ri[t]
                    if V is not None:
                        for vr in V:
                            if vr[t]:
                                vr[j] -= q * vr[t]
                    if rt[j]:
                        done = False
            if not done:
                # smallest leftover in column t, then row t, becomes the pivot
                best = 0
                which = None
                for i in range(t + 1, m):
                    a = abs(A[i][t])
                    if a and (which is None or a < best):
                        best, which = a, (0, i)
                for j in range(t + 1, n):
                    a = abs(rt[j])
                    if a and (which is None or a < best):
                        best, which = a, (1, j)
                kind, idx = which
                if kind == 0:
                    A[t], A[idx] = A[idx], A[t]
                    if U is not None:
                        U[t], U[idx] = U[idx], U[t]
                else:
                    _swap_cols(A, t, idx)
                    if V is not None:
                        _swap_cols(V, t, idx)
                continue
            p = rt[t]
            bad = -1
            for i in range(t + 1, m):
                ri = A[i]
                for j in range(t + 1, n):
                    if ri[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            rb = A[bad]
            for j in range(t, n):
                rt[j] += rb[j]
            if U is not None:
                ut = U[t]
                ub = U[bad]
                for j in range(m):
                    ut[j] += ub[j]
        if A[t][t] < 0:
            for i in range(t, m):
                A[i][t] = -A[i][t]
            if V is not None:
                for vr in V:
                    vr[t] = -vr[t]
        t += 1
    return A, U, V
