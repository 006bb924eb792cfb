# cython: boundscheck=False, wraparound=False, cdivision=True
"""Exact rank of sparse integer matrices, compiled implementation.

Same elimination as cdindex._kernel_py (row <- a*row - b*pivot over the
integers, rows kept primitive by content division, pivots favouring sparse
columns and unit entries) with all hot structures in C: rows and column
membership as dynamic C arrays and the pivot queue as a C binary heap.
Values are guarded against 64-bit overflow; a matrix whose elimination
would exceed the guard raises OverflowError so the caller can redo it in
exact big-int arithmetic.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

IMPL = "compiled"

DEF BOUND = 1152921504606846976  # 2^60, guard for a*x - b*y in 64 bits


cdef struct Row:
    int* cols
    long long* vals
    int n
    bint alive


cdef struct IntVec:
    int* data
    int n
    int cap


cdef int iv_push(IntVec* v, int x) except -1:
    cdef int* grown
    if v.n == v.cap:
        v.cap = 8 if v.cap == 0 else v.cap * 2
        grown = <int*> realloc(v.data, v.cap * sizeof(int))
        if grown == NULL:
            raise MemoryError()
        v.data = grown
    v.data[v.n] = x
    v.n += 1
    return 0


cdef long long llgcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int row_find(Row* r, int col) nogil:
    cdef int lo = 0, hi = r.n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if r.cols[mid] < col:
            lo = mid + 1
        elif r.cols[mid] > col:
            hi = mid - 1
        else:
            return mid
    return -1


cdef void row_free(Row* r) nogil:
    if r.cols != NULL:
        free(r.cols)
        free(r.vals)
        r.cols = NULL
        r.vals = NULL
    r.n = 0
    r.alive = False


cdef struct Heap:
    long long* keys
    int n
    int cap


cdef int heap_push(Heap* h, long long key) except -1:
    cdef long long* grown
    cdef int i, parent
    if h.n == h.cap:
        h.cap = 64 if h.cap == 0 else h.cap * 2
        grown = <long long*> realloc(h.keys, h.cap * sizeof(long long))
        if grown == NULL:
            raise MemoryError()
        h.keys = grown
    i = h.n
    h.n += 1
    h.keys[i] = key
    while i > 0:
        parent = (i - 1) >> 1
        if h.keys[parent] <= h.keys[i]:
            break
        h.keys[parent], h.keys[i] = h.keys[i], h.keys[parent]
        i = parent
    return 0


cdef long long heap_pop(Heap* h) nogil:
    cdef long long top = h.keys[0]
    cdef int i = 0, child
    h.n -= 1
    h.keys[0] = h.keys[h.n]
    while True:
        child = 2 * i + 1
        if child >= h.n:
            break
        if child + 1 < h.n and h.keys[child + 1] < h.keys[child]:
            child += 1
        if h.keys[i] <= h.keys[child]:
            break
        h.keys[i], h.keys[child] = h.keys[child], h.keys[i]
        i = child
    return top


cdef struct Workspace:
    Row* rows
    int nrows
    int ncols
    IntVec* col_rows
    long long* col_count
    Heap heap
    IntVec live
    IntVec touched
    unsigned char* touched_flag
    int* stamp
    int gen
    int* merge_cols
    long long* merge_vals
    int merge_cap


cdef void ws_free(Workspace* ws):
    cdef int i
    if ws.rows != NULL:
        for i in range(ws.nrows):
            row_free(&ws.rows[i])
        free(ws.rows)
    if ws.col_rows != NULL:
        for i in range(ws.ncols):
            free(ws.col_rows[i].data)
        free(ws.col_rows)
    free(ws.col_count)
    free(ws.heap.keys)
    free(ws.live.data)
    free(ws.touched.data)
    free(ws.touched_flag)
    free(ws.stamp)
    free(ws.merge_cols)
    free(ws.merge_vals)


cdef int touch(Workspace* ws, int c) except -1:
    if not ws.touched_flag[c]:
        ws.touched_flag[c] = 1
        iv_push(&ws.touched, c)
    return 0


cdef int update_row(Workspace* ws, int target_id, Row* piv, int pivcol,
                    long long a, long long b) except -1:
    # target <- a*target - b*piv, dropping pivcol from the target
    cdef Row* target = &ws.rows[target_id]
    cdef int n1 = target.n, n2 = piv.n
    cdef int need = n1 + n2
    cdef int* grown_c
    cdef long long* grown_v
    if need > ws.merge_cap:
        ws.merge_cap = need * 2
        grown_c = <int*> realloc(ws.merge_cols, ws.merge_cap * sizeof(int))
        grown_v = <long long*> realloc(ws.merge_vals, ws.merge_cap * sizeof(long long))
        if grown_c == NULL or grown_v == NULL:
            free(grown_c)
            ws.merge_cols = NULL
            raise MemoryError()
        ws.merge_cols = grown_c
        ws.merge_vals = grown_v
    if not (-BOUND < a < BOUND and -BOUND < b < BOUND):
        raise OverflowError("kernel multiplier guard exceeded")
    cdef int i = 0, j = 0, out = 0
    cdef int c1, c2
    cdef long long v, tv, pv
    while i < n1 or j < n2:
        c1 = target.cols[i] if i < n1 else 2147483647
        c2 = piv.cols[j] if j < n2 else 2147483647
        if c1 == pivcol:
            i += 1
            continue
        if c2 == pivcol:
            j += 1
            continue
        if c1 < c2:
            tv = target.vals[i]
            if not -BOUND < tv < BOUND:
                raise OverflowError("kernel value guard exceeded")
            v = a * tv
            if not -BOUND < v < BOUND:
                raise OverflowError("kernel value guard exceeded")
            ws.merge_cols[out] = c1
            ws.merge_vals[out] = v
            out += 1
            i += 1
        elif c2 < c1:
            pv = piv.vals[j]
            v = -b * pv
            if not -BOUND < v < BOUND:
                raise OverflowError("kernel value guard exceeded")
            ws.merge_cols[out] = c2
            ws.merge_vals[out] = v
            out += 1
            ws.col_count[c2] += 1
            iv_push(&ws.col_rows[c2], target_id)
            touch(ws, c2)
            j += 1
        else:
            tv = target.vals[i]
            pv = piv.vals[j]
            if not (-BOUND < tv < BOUND and -BOUND < pv < BOUND):
                raise OverflowError("kernel value guard exceeded")
            v = a * tv - b * pv
            if not -BOUND < v < BOUND:
                raise OverflowError("kernel value guard exceeded")
            if v != 0:
                ws.merge_cols[out] = c1
                ws.merge_vals[out] = v
                out += 1
            else:
                ws.col_count[c1] -= 1
                touch(ws, c1)
            i += 1
            j += 1
    # content normalization keeps entries small
    cdef long long g = 0
    for i in range(out):
        g = llgcd(g, ws.merge_vals[i])
        if g == 1:
            break
    cdef int* new_cols
    cdef long long* new_vals
    free(target.cols)
    free(target.vals)
    if out == 0:
        target.cols = NULL
        target.vals = NULL
        target.n = 0
        target.alive = False
        return 0
    new_cols = <int*> malloc(out * sizeof(int))
    new_vals = <long long*> malloc(out * sizeof(long long))
    if new_cols == NULL or new_vals == NULL:
        free(new_cols)
        raise MemoryError()
    if g > 1:
        for i in range(out):
            new_cols[i] = ws.merge_cols[i]
            new_vals[i] = ws.merge_vals[i] // g
    else:
        for i in range(out):
            new_cols[i] = ws.merge_cols[i]
            new_vals[i] = ws.merge_vals[i]
    target.cols = new_cols
    target.vals = new_vals
    target.n = out
    return 0


cdef int eliminate(Workspace* ws) except -1:
    cdef int rank = 0
    cdef int c, r, k, pr, pos, idx, cc
    cdef long long key, cnt, pv, rv, g, a, b
    cdef long long best_key, cand
    cdef Row* prow
    cdef Row* rrow
    while ws.heap.n > 0:
        key = heap_pop(&ws.heap)
        c = <int> (key & 0x7fffffff)
        cnt = key >> 31
        if ws.col_count[c] <= 0:
            continue
        if cnt != ws.col_count[c]:
            heap_push(&ws.heap, (ws.col_count[c] << 31) | c)
            continue
        # compact this column's row list (drop stale and duplicate entries)
        ws.gen += 1
        ws.live.n = 0
        for idx in range(ws.col_rows[c].n):
            r = ws.col_rows[c].data[idx]
            if ws.rows[r].alive and ws.stamp[r] != ws.gen and row_find(&ws.rows[r], c) >= 0:
                ws.stamp[r] = ws.gen
                iv_push(&ws.live, r)
        if ws.live.n != ws.col_count[c]:
            raise AssertionError("column count drift")
        ws.col_rows[c].n = 0
        for idx in range(ws.live.n):
            iv_push(&ws.col_rows[c], ws.live.data[idx])
        # pivot choice: unit entry first, then fewest entries, then lowest id
        pr = -1
        best_key = 0
        for idx in range(ws.live.n):
            r = ws.live.data[idx]
            pos = row_find(&ws.rows[r], c)
            pv = ws.rows[r].vals[pos]
            cand = ((0 if (pv == 1 or pv == -1) else 1) << 62) \
                + ((<long long> ws.rows[r].n) << 31) + r
            if pr < 0 or cand < best_key:
                best_key = cand
                pr = r
        prow = &ws.rows[pr]
        pv = prow.vals[row_find(prow, c)]
        # reset the touched set
        for idx in range(ws.touched.n):
            ws.touched_flag[ws.touched.data[idx]] = 0
        ws.touched.n = 0
        for idx in range(ws.live.n):
            r = ws.live.data[idx]
            if r == pr:
                continue
            rrow = &ws.rows[r]
            rv = rrow.vals[row_find(rrow, c)]
            g = llgcd(pv, rv)
            a = pv // g
            b = rv // g
            ws.col_count[c] -= 1
            update_row(ws, r, prow, c, a, b)
        # retire the pivot row and column
        for k in range(prow.n):
            cc = prow.cols[k]
            if cc != c:
                ws.col_count[cc] -= 1
                touch(ws, cc)
        ws.col_count[c] = 0
        row_free(prow)
        rank += 1
        for idx in range(ws.touched.n):
            cc = ws.touched.data[idx]
            ws.touched_flag[cc] = 0
            if ws.col_count[cc] > 0:
                heap_push(&ws.heap, (ws.col_count[cc] << 31) | cc)
        ws.touched.n = 0
    return rank


def sparse_rank(entries):
    """Rank over the rationals of integer (row, col, val) triples."""
    acc = {}
    for r, c, v in entries:
        if v:
            key = (r, c)
            acc[key] = acc.get(key, 0) + v
    by_row = {}
    for (r, c), v in acc.items():
        if v:
            if not -BOUND < v < BOUND:
                raise OverflowError("input value exceeds kernel guard")
            by_row.setdefault(r, []).append((c, v))
    if not by_row:
        return 0

    row_keys = sorted(by_row)
    col_ids = sorted({c for items in by_row.values() for c, _ in items})
    col_of = {c: i for i, c in enumerate(col_ids)}
    cdef int nrows = len(row_keys)
    cdef int ncols = len(col_ids)
    if ncols >= 0x40000000 or nrows >= 0x40000000:
        raise OverflowError("matrix too large for the compiled kernel")

    cdef Workspace ws
    memset(&ws, 0, sizeof(Workspace))
    ws.nrows = nrows
    ws.ncols = ncols
    ws.rows = <Row*> malloc(nrows * sizeof(Row))
    ws.col_rows = <IntVec*> malloc(ncols * sizeof(IntVec))
    ws.col_count = <long long*> malloc(ncols * sizeof(long long))
    ws.touched_flag = <unsigned char*> malloc(ncols)
    ws.stamp = <int*> malloc(nrows * sizeof(int))
    if (ws.rows == NULL or ws.col_rows == NULL or ws.col_count == NULL
            or ws.touched_flag == NULL or ws.stamp == NULL):
        ws_free(&ws)
        raise MemoryError()
    memset(ws.rows, 0, nrows * sizeof(Row))
    memset(ws.col_rows, 0, ncols * sizeof(IntVec))
    memset(ws.col_count, 0, ncols * sizeof(long long))
    memset(ws.touched_flag, 0, ncols)
    memset(ws.stamp, 0, nrows * sizeof(int))

    cdef int i, k, m
    cdef Row* rp
    try:
        for i, rkey in enumerate(row_keys):
            items = sorted((col_of[c], v) for c, v in by_row[rkey])
            m = len(items)
            rp = &ws.rows[i]
            rp.cols = <int*> malloc(m * sizeof(int))
            rp.vals = <long long*> malloc(m * sizeof(long long))
            if rp.cols == NULL or rp.vals == NULL:
                raise MemoryError()
            rp.n = m
            rp.alive = True
            for k in range(m):
                rp.cols[k] = items[k][0]
                rp.vals[k] = items[k][1]
                iv_push(&ws.col_rows[items[k][0]], i)
                ws.col_count[items[k][0]] += 1
        for k in range(ncols):
            heap_push(&ws.heap, (ws.col_count[k] << 31) | k)
        return eliminate(&ws)
    finally:
        ws_free(&ws)
