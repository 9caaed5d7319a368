# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled truth-table tape: straight-line programs over 64-bit words.

Mirrors posbp.kernel.PyTape; selected automatically when built.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc

from libc.stdint cimport int64_t, uint64_t
from libc.string cimport memcpy

cdef uint64_t PAT0 = 0xAAAAAAAAAAAAAAAAULL
cdef uint64_t PAT1 = 0xCCCCCCCCCCCCCCCCULL
cdef uint64_t PAT2 = 0xF0F0F0F0F0F0F0F0ULL
cdef uint64_t PAT3 = 0xFF00FF00FF00FF00ULL
cdef uint64_t PAT4 = 0xFFFF0000FFFF0000ULL
cdef uint64_t PAT5 = 0xFFFFFFFF00000000ULL
cdef uint64_t ALL1 = 0xFFFFFFFFFFFFFFFFULL

cdef inline uint64_t word_var(int s, Py_ssize_t w) nogil:
    # mask of "variable with index-shift s is 1" within word w
    if s >= 6:
        if (w >> (s - 6)) & 1:
            return ALL1
        return 0
    if s == 0:
        return PAT0
    if s == 1:
        return PAT1
    if s == 2:
        return PAT2
    if s == 3:
        return PAT3
    if s == 4:
        return PAT4
    return PAT5


cdef class CyTape:
    cdef uint64_t *buf
    cdef Py_ssize_t nslots, cap, nwords
    cdef int nvars
    cdef uint64_t tail

    name = "cython"

    def __cinit__(self, int nvars):
        self.nvars = nvars
        cdef Py_ssize_t bits = (<Py_ssize_t>1) << nvars
        self.nwords = bits >> 6
        if self.nwords == 0:
            self.nwords = 1
        if bits >= 64:
            self.tail = ALL1
        else:
            self.tail = ((<uint64_t>1) << bits) - 1
        self.nslots = 0
        self.cap = 64
        self.buf = <uint64_t *>PyMem_Malloc(self.cap * self.nwords * sizeof(uint64_t))
        if self.buf == NULL:
            raise MemoryError()

    def __dealloc__(self):
        if self.buf != NULL:
            PyMem_Free(self.buf)

    def __len__(self):
        return self.nslots

    cdef void _grow(self, Py_ssize_t need):
        cdef Py_ssize_t cap = self.cap
        while cap < need:
            cap *= 2
        if cap != self.cap:
            self.buf = <uint64_t *>PyMem_Realloc(
                self.buf, cap * self.nwords * sizeof(uint64_t))
            if self.buf == NULL:
                raise MemoryError()
            self.cap = cap

    def run(self, ops):
        cdef Py_ssize_t m = len(ops)
        if m == 0:
            return
        cdef int64_t *co = <int64_t *>PyMem_Malloc(4 * m * sizeof(int64_t))
        if co == NULL:
            raise MemoryError()
        cdef Py_ssize_t i
        cdef object row
        try:
            for i in range(m):
                row = ops[i]
                co[4 * i + 0] = row[0]
                co[4 * i + 1] = row[1]
                co[4 * i + 2] = row[2]
                co[4 * i + 3] = row[3]
            self._grow(self.nslots + m)
            self._exec(co, m)
            self.nslots += m
        finally:
            PyMem_Free(co)

    cdef void _exec(self, int64_t *co, Py_ssize_t m) nogil:
        cdef Py_ssize_t nw = self.nwords
        cdef Py_ssize_t i, w
        cdef int op, nv = self.nvars
        cdef int64_t a, b, c
        cdef uint64_t *dst
        cdef uint64_t *pa
        cdef uint64_t *pc
        cdef uint64_t v, mv
        cdef uint64_t last = self.tail
        for i in range(m):
            op = <int>co[4 * i]
            a = co[4 * i + 1]
            b = co[4 * i + 2]
            c = co[4 * i + 3]
            dst = self.buf + (self.nslots + i) * nw
            if op == 4:  # OR
                pa = self.buf + a * nw
                pc = self.buf + b * nw
                for w in range(nw):
                    dst[w] = pa[w] | pc[w]
            elif op == 6:  # PDEC
                pa = self.buf + a * nw
                pc = self.buf + c * nw
                for w in range(nw):
                    mv = word_var(nv - 1 - <int>b, w)
                    dst[w] = pa[w] | (mv & pc[w])
            elif op == 5:  # DEC
                pa = self.buf + a * nw
                pc = self.buf + c * nw
                for w in range(nw):
                    mv = word_var(nv - 1 - <int>b, w)
                    dst[w] = (pa[w] & ~mv) | (pc[w] & mv)
            elif op == 7:  # PDECN
                pa = self.buf + a * nw
                pc = self.buf + c * nw
                for w in range(nw):
                    mv = word_var(nv - 1 - <int>b, w)
                    dst[w] = pa[w] | ((~mv) & pc[w])
            elif op == 2:  # VAR
                for w in range(nw):
                    dst[w] = word_var(nv - 1 - <int>a, w)
            elif op == 3:  # NVAR
                for w in range(nw):
                    dst[w] = ~word_var(nv - 1 - <int>a, w)
            elif op == 1:  # ONE
                for w in range(nw):
                    dst[w] = ALL1
            else:  # ZERO
                for w in range(nw):
                    dst[w] = 0
            dst[nw - 1] &= last

    def mask(self, Py_ssize_t slot):
        cdef bytes raw = PyBytes_FromStringAndSize(
            <char *>(self.buf + slot * self.nwords), self.nwords * 8)
        return int.from_bytes(raw, "little")

    cdef long long _job(self, long long *slots, Py_ssize_t na, Py_ssize_t ns) nogil:
        cdef Py_ssize_t nw = self.nwords
        cdef Py_ssize_t w, j
        cdef uint64_t bad, sor
        cdef int bit
        for w in range(nw):
            bad = self.tail if w == nw - 1 else ALL1
            for j in range(na):
                bad &= self.buf[slots[j] * nw + w]
                if bad == 0:
                    break
            if bad == 0:
                continue
            sor = 0
            for j in range(ns):
                sor |= self.buf[slots[na + j] * nw + w]
            bad &= ~sor
            if w == nw - 1:
                bad &= self.tail
            if bad != 0:
                bit = 0
                while not (bad & 1):
                    bad >>= 1
                    bit += 1
                return 64 * w + bit
        return -1

    def countermodel(self, ant, suc):
        cdef Py_ssize_t na = len(ant)
        cdef Py_ssize_t ns = len(suc)
        cdef long long *slots = <long long *>PyMem_Malloc(
            (na + ns if na + ns else 1) * sizeof(long long))
        if slots == NULL:
            raise MemoryError()
        cdef Py_ssize_t j
        cdef long long r
        try:
            for j in range(na):
                slots[j] = ant[j]
            for j in range(ns):
                slots[na + j] = suc[j]
            r = self._job(slots, na, ns)
        finally:
            PyMem_Free(slots)
        return r

    def countermodel_many(self, counts, flat):
        """(job index, assignment index) of the first falsified job, or
        (-1, -1); counts holds (n_ant, n_suc) pairs, flat the slot ids."""
        cdef Py_ssize_t njobs = len(counts) // 2
        cdef Py_ssize_t total = len(flat)
        cdef long long *cnt = <long long *>PyMem_Malloc(
            (2 * njobs if njobs else 1) * sizeof(long long))
        cdef long long *fl = <long long *>PyMem_Malloc(
            (total if total else 1) * sizeof(long long))
        if cnt == NULL or fl == NULL:
            if cnt != NULL:
                PyMem_Free(cnt)
            if fl != NULL:
                PyMem_Free(fl)
            raise MemoryError()
        cdef Py_ssize_t i, pos
        cdef long long r = -1
        try:
            if njobs == 0:
                return -1, -1
            for i in range(2 * njobs):
                cnt[i] = counts[i]
            for i in range(total):
                fl[i] = flat[i]
            pos = 0
            with nogil:
                for i in range(njobs):
                    r = self._job(fl + pos, cnt[2 * i], cnt[2 * i + 1])
                    if r >= 0:
                        break
                    pos += cnt[2 * i] + cnt[2 * i + 1]
            if r >= 0:
                return i, r
            return -1, -1
        finally:
            PyMem_Free(cnt)
            PyMem_Free(fl)
