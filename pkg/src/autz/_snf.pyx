# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith reduction kernel on checked int64 storage.

Mirrors ``autz._snf_py.snf_reduce`` operation for operation. Any int64
overflow raises ``OverflowError``; the caller then reruns the pure-Python
kernel on arbitrary-precision integers.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    #include <limits.h>
    static inline int autz_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int autz_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int autz_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int autz_mul_ovf(long long a, long long b, long long *r) nogil
    int autz_sub_ovf(long long a, long long b, long long *r) nogil
    int autz_add_ovf(long long a, long long b, long long *r) nogil
    long long LLONG_MIN


cdef inline int _overflow() except -1:
    raise OverflowError("int64 overflow in Smith reduction")


cdef inline long long _abs(long long a) except? -1:
    if a == LLONG_MIN:
        _overflow()
    return -a if a < 0 else a


cdef inline long long _floordiv(long long a, long long p) except? -1:
    if a == LLONG_MIN or p == LLONG_MIN:
        _overflow()
    cdef long long q = a / p
    if (a % p != 0) and ((a < 0) != (p < 0)):
        q -= 1
    return q


cdef inline long long _nearest_quotient(long long a, long long p) except? -1:
    # quotient leaving the remainder of least absolute value, ties toward floor
    cdef long long q = _floordiv(a, p)
    cdef long long r = a - q * p
    cdef long long ar = r if r >= 0 else -r
    cdef long long ap = _abs(p)
    if ar > ap - ar:
        q += 1
    return q


cdef inline int _axpy(long long *dst, long long q, long long src) except -1:
    # dst -= q * src
    cdef long long prod
    if autz_mul_ovf(q, src, &prod):
        _overflow()
    if autz_sub_ovf(dst[0], prod, dst):
        _overflow()
    return 0


cdef inline int _add(long long *dst, long long src) except -1:
    if autz_add_ovf(dst[0], src, dst):
        _overflow()
    return 0


cdef long long **_alloc(Py_ssize_t rows, Py_ssize_t cols, bint ident) except NULL:
    # rows + 1 pointer slots: the last one keeps the buffer start, since row
    # swaps permute the others
    cdef Py_ssize_t size = rows * cols if rows * cols > 0 else 1
    cdef long long **R = <long long **>malloc((rows + 1) * sizeof(long long *))
    cdef long long *buf = <long long *>malloc(size * sizeof(long long))
    cdef Py_ssize_t i
    if R == NULL or buf == NULL:
        free(R)
        free(buf)
        raise MemoryError()
    memset(buf, 0, size * sizeof(long long))
    for i in range(rows):
        R[i] = buf + i * cols
        if ident:
            R[i][i] = 1
    R[rows] = buf
    return R


cdef void _release(long long **R, Py_ssize_t rows):
    if R != NULL:
        free(R[rows])
        free(R)


cdef list _tolist(long long **R, Py_ssize_t rows, Py_ssize_t cols):
    cdef Py_ssize_t i, j
    out = []
    for i in range(rows):
        out.append([R[i][j] for j in range(cols)])
    return out


cdef inline void _swap_rows(long long **R, Py_ssize_t a, Py_ssize_t b):
    cdef long long *tmp = R[a]
    R[a] = R[b]
    R[b] = tmp


cdef inline void _swap_cols(long long **R, Py_ssize_t rows, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t i
    cdef long long tmp
    for i in range(rows):
        tmp = R[i][a]
        R[i][a] = R[i][b]
        R[i][b] = tmp


cdef int _reduce(long long **A, long long **U, long long **V,
                 Py_ssize_t m, Py_ssize_t n) except -1:
    cdef Py_ssize_t t = 0, i, j, pi, pj, bad, idx
    cdef long long a, q, p, best
    cdef int kind
    cdef bint done, found
    cdef long long *rt
    cdef long long *ri
    while t < m and t < n:
        # pivot search: row-major, smallest absolute value, stop at 1
        found = False
        best = 0
        pi = pj = -1
        i = t
        while i < m:
            j = t
            while j < n:
                a = A[i][j]
                if a != 0:
                    a = _abs(a)
                    if (not found) or a < best:
                        found = True
                        best = a
                        pi = i
                        pj = j
                        if a == 1:
                            break
                j += 1
            if found and best == 1:
                break
            i += 1
        if not found:
            break
        if pi != t:
            _swap_rows(A, t, pi)
            if U != NULL:
                _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(A, m, t, pj)
            if V != NULL:
                _swap_cols(V, n, t, pj)
        while True:
            done = True
            rt = A[t]
            for i in range(t + 1, m):
                ri = A[i]
                a = ri[t]
                if a != 0:
                    q = _nearest_quotient(a, rt[t])
                    for j in range(t, n):
                        if rt[j] != 0:
                            _axpy(&ri[j], q, rt[j])
                    if U != NULL:
                        for j in range(m):
                            if U[t][j] != 0:
                                _axpy(&U[i][j], q, U[t][j])
                    if ri[t] != 0:
                        done = False
            for j in range(t + 1, n):
                a = rt[j]
                if a != 0:
                    q = _nearest_quotient(a, rt[t])
                    for i in range(t, m):
                        if A[i][t] != 0:
                            _axpy(&A[i][j], q, A[i][t])
                    if V != NULL:
                        for i in range(n):
                            if V[i][t] != 0:
                                _axpy(&V[i][j], q, V[i][t])
                    if rt[j] != 0:
                        done = False
            if not done:
                best = 0
                kind = -1
                idx = -1
                for i in range(t + 1, m):
                    a = A[i][t]
                    if a != 0:
                        a = _abs(a)
                        if kind < 0 or a < best:
                            best = a
                            kind = 0
                            idx = i
                for j in range(t + 1, n):
                    a = rt[j]
                    if a != 0:
                        a = _abs(a)
                        if kind < 0 or a < best:
                            best = a
                            kind = 1
                            idx = j
                if kind == 0:
                    _swap_rows(A, t, idx)
                    if U != NULL:
                        _swap_rows(U, t, idx)
                else:
                    _swap_cols(A, m, t, idx)
                    if V != NULL:
                        _swap_cols(V, n, t, idx)
                continue
            p = rt[t]
            bad = -1
            if p == 1 or p == -1:
                # everything is divisible; also avoids LLONG_MIN % -1
                break
            for i in range(t + 1, m):
                ri = A[i]
                for j in range(t + 1, n):
                    if ri[j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for j in range(t, n):
                _add(&rt[j], A[bad][j])
            if U != NULL:
                for j in range(m):
                    _add(&U[t][j], U[bad][j])
        if A[t][t] < 0:
            A[t][t] = _abs(A[t][t])
            if V != NULL:
                for i in range(n):
                    if V[i][t] == LLONG_MIN:
                        _overflow()
                    V[i][t] = -V[i][t]
        t += 1
    return 0


def snf_reduce(A, track_u=False, track_v=True):
    """Compiled counterpart of :func:`autz._snf_py.snf_reduce`.

    ``A`` is not modified; a fresh reduced copy is returned.
    """
    cdef Py_ssize_t m = len(A)
    cdef Py_ssize_t n = len(A[0]) if m else 0
    cdef Py_ssize_t i, j
    cdef long long **CA = _alloc(m, n, False)
    cdef long long **CU = NULL
    cdef long long **CV = NULL
    try:
        for i in range(m):
            row = A[i]
            for j in range(n):
                CA[i][j] = row[j]
        if track_u:
            CU = _alloc(m, m, True)
        if track_v:
            CV = _alloc(n, n, True)
        _reduce(CA, CU, CV, m, n)
        outA = _tolist(CA, m, n)
        outU = _tolist(CU, m, m) if track_u else None
        outV = _tolist(CV, n, n) if track_v else None
        return outA, outU, outV
    finally:
        _release(CA, m)
        _release(CU, m)
        _release(CV, n)

